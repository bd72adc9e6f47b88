#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "h3/abres.hpp"
#include "h3/barres.hpp"
#include "h3/catalog.hpp"
#include "h3/emhom.hpp"
#include "h3/extlab.hpp"
#include "h3/gamma.hpp"
#include "h3/hopf.hpp"
#include "h3/suite.hpp"

namespace h3::cli {

namespace {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    bool json = false;
    size_t max_order = 0; // 0: the per-command default
    double time_budget = 0;
};

size_t cap_or(const Globals& g, size_t fallback) { return g.max_order ? g.max_order : fallback; }

nlohmann::json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream os(path);
    if (!os)
        throw InputError("cannot write " + path);
    os << j.dump(2) << "\n";
}

FgAb parse_abelian(const std::string& spec)
{
    try {
        return FgAb::parse(spec);
    } catch (const std::exception& e) {
        throw InputError("cannot parse abelian group '" + spec + "': " + e.what());
    }
}

int emit(std::ostream& out, const Globals& g, Json input, const Report& r)
{
    if (g.json) {
        Json j = Json::object();
        j["input"] = std::move(input);
        j["checks"] = r.checks_json();
        j["invariants"] = r.invariants();
        out << j.dump(2) << "\n";
    } else {
        out << r.text();
    }
    return r.passed() ? ok : assertion_failure;
}

std::map<std::string, std::string> parse_images(const std::vector<std::string>& specs)
{
    std::map<std::string, std::string> out;
    for (const auto& s : specs) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
            throw InputError("image '" + s + "' is not of the form symbol=label");
        out[s.substr(0, eq)] = s.substr(eq + 1);
    }
    return out;
}

CommutatorProduct parse_commutators(const std::vector<std::string>& specs)
{
    CommutatorProduct s;
    for (const auto& c : specs) {
        auto semi = c.find(';');
        if (semi == std::string::npos)
            throw InputError("commutator '" + c + "' is not of the form a;b");
        s.push_back({FreeWord::parse(c.substr(0, semi)), FreeWord::parse(c.substr(semi + 1))});
    }
    if (s.empty())
        throw InputError("at least one --commutator is needed");
    return s;
}

Json words_json(const CommutatorProduct& s)
{
    Json w = Json::array();
    for (const auto& p : s)
        w.push_back({{"a", p.a.str()}, {"b", p.b.str()}});
    return w;
}

CentralSubgroupData central_data(const FiniteGroup& g, bool center, const std::vector<std::string>& labels)
{
    if (center == !labels.empty())
        throw InputError("give either --center or at least one --central-subgroup label");
    return center ? validate(g, g.center()) : validate(g, labels);
}

std::vector<std::string> subgroup_labels(const CentralSubgroupData& d)
{
    std::vector<std::string> out;
    for (Elt x : d.a)
        out.push_back(d.g.label(x));
    return out;
}

int verify_certificate(std::ostream& out, const Globals& g, const std::string& path)
{
    Report r = check_certificate(read_json_file(path));
    return emit(out, g, {{"certificate", std::filesystem::path(path).filename().string()}}, r);
}

template <class Clock = std::chrono::steady_clock, class F>
double seconds_of(F&& f)
{
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Json torsion_json(const std::vector<Integer>& t)
{
    Json out = Json::array();
    for (const auto& d : t)
        out.push_back(d.str());
    return out;
}

} // namespace

std::vector<std::string> builtin_group_names()
{
    std::vector<std::string> names;
    for (const auto& [name, g] : small_groups(16))
        names.push_back(name);
    names.push_back("Heis27");
    names.push_back("central_square_32");
    return names;
}

FiniteGroup builtin_group(const std::string& name)
{
    if (name == "Heis27")
        return heisenberg(3);
    if (name == "central_square_32")
        return central_square_32();
    for (auto& [n, g] : small_groups(16))
        if (n == name)
            return g;
    throw InputError("unknown group '" + name + "'");
}

FiniteGroup resolve_group(const std::string& spec)
{
    if (std::filesystem::is_regular_file(spec))
        return FiniteGroup::load(spec);
    auto names = builtin_group_names();
    if (std::find(names.begin(), names.end(), spec) != names.end())
        return builtin_group(spec);
    FgAb a;
    try {
        a = FgAb::parse(spec);
    } catch (const std::exception&) {
        throw InputError("'" + spec + "' is neither a group file, a built-in group nor an abelian group");
    }
    if (!a.is_finite())
        throw InputError("'" + spec + "' is infinite");
    return FiniteGroup::abelian(a.torsion(), a.str());
}

Json bench_snf(const FiniteGroup& g, size_t n, size_t dense_limit)
{
    SparseMat m = BarComplex(g, n).boundary_matrix(n);
    intlin::EliminationOptions serial;
    serial.threads = 1;
    serial.parallel_threshold = SIZE_MAX;
    intlin::Cokernel cs, cp, cr;
    Json t = Json::object();
    t["serial"] = seconds_of([&] { cs = intlin::cokernel(m, serial); });
    t["parallel"] = seconds_of([&] { cp = intlin::cokernel(m); });
    bool agree = cs.torsion() == cp.torsion() && cs.rank() == cp.rank();
    if (m.rows() * m.cols() <= dense_limit) {
        IntMat dense = m.to_dense();
        t["reference"] = seconds_of([&] { cr = intlin::cokernel_reference(dense); });
        agree = agree && cr.torsion() == cs.torsion() && cr.rank() == cs.rank();
    }
    return {{"kernel", "cokernel"},
            {"group", g.name()},
            {"degree", n},
            {"rows", m.rows()},
            {"cols", m.cols()},
            {"nnz", m.nnz()},
            {"rank", cs.rank()},
            {"torsion", torsion_json(cs.torsion())},
            {"agree", agree},
            {"seconds", t}};
}

Json bench_bar_boundary(const FiniteGroup& g, size_t n)
{
    BarComplex bar(g, n);
    SparseMat par, ser;
    Json t = Json::object();
    t["parallel"] = seconds_of([&] { par = bar.boundary_matrix(n); });
    t["serial"] = seconds_of([&] { ser = bar.boundary_matrix_serial(n); });
    return {{"kernel", "bar_boundary"},
            {"group", g.name()},
            {"degree", n},
            {"rows", par.rows()},
            {"cols", par.cols()},
            {"nnz", par.nnz()},
            {"agree", par == ser},
            {"seconds", t}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Globals glob;
    CLI::App app{"Exact homology computations for central extensions", "h3tool"};
    app.require_subcommand(1);
    app.add_flag("--json", glob.json, "Emit JSON instead of text");
    app.add_option("--max-order", glob.max_order, "Size cap for group, oracle and Eilenberg-MacLane computations");
    app.add_option("--time-budget", glob.time_budget, "Wall-clock budget in seconds (0: none)")
        ->envname("H3_TIME_BUDGET");

    std::function<int()> action;

    // gamma
    auto* gamma = app.add_subcommand("gamma", "Whitehead's Gamma(A) by both models with its identities");
    int cyclic = -1;
    std::string ab_spec;
    auto* cyc_opt = gamma->add_option("--cyclic", cyclic, "A = Z/N")->check(CLI::NonNegativeNumber);
    gamma->add_option("--group", ab_spec, "Abelian group such as Z/2+Z/4")->excludes(cyc_opt);
    gamma->callback([&] {
        action = [&] {
            if (cyclic < 0 && ab_spec.empty())
                throw InputError("gamma needs --cyclic or --group");
            FgAb a = cyclic >= 0 ? FgAb::cyclic(Integer(cyclic)) : parse_abelian(ab_spec);
            return emit(out, glob, {{"group", a.str()}}, gamma_report(a, cap_or(glob, 64)));
        };
    });

    // abhom
    auto* abhom = app.add_subcommand("abhom", "H_n(A) of an abelian group from the product resolution");
    size_t degree = 3;
    abhom->add_option("--group", ab_spec, "Abelian group such as Z/2+Z/4")->required();
    abhom->add_option("--degree", degree, "Top degree")->capture_default_str();
    abhom->callback([&] {
        action = [&] {
            FgAb a = parse_abelian(ab_spec);
            AbelianComplex c = AbelianComplex::of(a, degree + 1);
            Report r(a.str());
            for (size_t n = 0; n <= degree; ++n)
                r.invariants()["H_" + std::to_string(n)] = c.homology(n).group().str();
            if (degree >= 1)
                r.expect(c.homology(1).group().isomorphic(a), "H1 = A", c.homology(1).group().str());
            return emit(out, glob, {{"group", a.str()}, {"degree", degree}}, r);
        };
    });

    // grouphom
    auto* grouphom = app.add_subcommand("grouphom", "H_n(G) of a finite group from the normalized bar complex");
    std::string group_spec;
    grouphom->add_option("--group", group_spec, "Group file, built-in name or abelian group")->required();
    grouphom->add_option("--degree", degree, "Top degree")->capture_default_str();
    grouphom->callback([&] {
        action = [&] {
            FiniteGroup g = resolve_group(group_spec);
            GroupHomology h(g, {cap_or(glob, 16), degree});
            Report r(g.name());
            r.invariants()["order"] = g.order();
            for (size_t n = 0; n <= degree; ++n)
                r.invariants()["H_" + std::to_string(n)] = h.H(n).str();
            return emit(out, glob, {{"group", g.name()}, {"order", g.order()}, {"degree", degree}}, r);
        };
    });

    // tor
    auto* tor = app.add_subcommand("tor", "Tor_1(A, B) of finitely generated abelian groups");
    std::string left, right;
    tor->add_option("--left", left, "A")->required();
    tor->add_option("--right", right, "B (default: A)");
    tor->callback([&] {
        action = [&] {
            FgAb a = parse_abelian(left), b = right.empty() ? a : parse_abelian(right);
            Tor t(a, b);
            Report r("Tor(" + a.str() + ", " + b.str() + ")");
            r.invariants()["Tor_1"] = t.group().str();
            if (right.empty() || a == b)
                r.invariants()["Tor_1^Sigma2"] = involution_invariants(t.swap(), -1).sub.str();
            return emit(out, glob, {{"left", a.str()}, {"right", b.str()}}, r);
        };
    });

    // em-h4
    auto* em = app.add_subcommand("em-h4", "H_n(K(A,2)) for n <= 4 by the iterated bar construction");
    bool k3 = false;
    em->add_option("--group", ab_spec, "Finite abelian group")->required();
    em->add_flag("--k3", k3, "Also H_n(K(A,3)) for n <= 5 and H_5(K(A,3)) = A/2 (|A| <= 4)");
    em->callback([&] {
        action = [&] {
            FgAb a = parse_abelian(ab_spec);
            Report r = em_report(a, {cap_or(glob, 9)});
            if (k3) {
                if (a.order() > Integer(4))
                    throw intlin::ResourceLimitError("K(A,3) homology is limited to |A| <= 4");
                std::vector<FgAb> h = homology_k_a_3(a);
                for (size_t n = 0; n < h.size(); ++n)
                    r.invariants()["H_" + std::to_string(n) + "(K(A,3))"] = h[n].str();
                FgAb mod2 = ModTwo(a).group();
                r.expect(h.at(5).isomorphic(mod2), "H5(K(A,3)) = A/2", h.at(5).str() + " vs " + mod2.str());
            }
            return emit(out, glob, {{"group", a.str()}}, r);
        };
    });

    // ext-check
    auto* ext = app.add_subcommand("ext-check", "Checks for a central subgroup A of G inside G'");
    std::vector<std::string> central;
    bool center = false;
    ext->add_option("--group", group_spec, "Group file, built-in name or abelian group")->required();
    ext->add_option("--central-subgroup", central, "Label of an element generating A (repeatable)")
        ->allow_extra_args(false);
    ext->add_flag("--center", center, "A = Z(G)");
    ext->callback([&] {
        action = [&] {
            FiniteGroup g = resolve_group(group_spec);
            ExtensionContext cx(central_data(g, center, central), {cap_or(glob, 16), 3});
            Report r = extension_report(cx);
            if (glob.json)
                out << extension_json(cx, r).dump(2) << "\n";
            else
                out << r.text();
            return r.passed() ? ok : assertion_failure;
        };
    });

    // lambda2 and lambda3
    std::vector<std::string> images, commutators;
    std::string certificate_out, certificate_in;
    auto add_lambda_options = [&](CLI::App* sub) {
        sub->add_option("--group", group_spec, "Group file, built-in name or abelian group");
        sub->add_option("--image", images, "Generator image symbol=label (repeatable)")->allow_extra_args(false);
        sub->add_option("--commutator", commutators, "Commutator pair a;b of words (repeatable)")
            ->allow_extra_args(false);
        sub->add_option("--certificate", certificate_out, "Write the certificate JSON to this file");
        sub->add_option("--verify-certificate", certificate_in, "Re-check a certificate file")
            ->check(CLI::ExistingFile);
    };

    auto* l2 = app.add_subcommand("lambda2", "Hopf formula two-cycle of a commutator product equal to 1 in G");
    add_lambda_options(l2);
    l2->callback([&] {
        action = [&] {
            if (!certificate_in.empty())
                return verify_certificate(out, glob, certificate_in);
            if (group_spec.empty())
                throw InputError("lambda2 needs --group");
            FiniteGroup g = resolve_group(group_spec);
            CommutatorProduct s = parse_commutators(commutators);
            PresSetup setup(g, PresSetup::images_by_label(g, parse_images(images)));
            Report r(g.name());
            try {
                BarChain lam = lambda2(s, setup);
                r.pass("boundary_zero");
                r.invariants()["chain"] = to_string(lam, g);
                if (g.order() <= cap_or(glob, 16)) {
                    GroupHomology h(g, {cap_or(glob, 16), 2});
                    r.invariants()["H_2"] = h.H(2).str();
                    r.invariants()["class"] = h.class_of(2, lam).str();
                }
            } catch (const BoundaryError& e) {
                r.fail("boundary_zero", e.what());
            }
            if (!certificate_out.empty())
                write_json_file(certificate_out, lambda2_certificate(s, setup, {{cap_or(glob, 16), 3}}));
            return emit(out, glob, {{"group", g.name()}, {"words", words_json(s)}}, r);
        };
    });

    auto* l3 = app.add_subcommand("lambda3", "Three-chain of a commutator product landing in a central A");
    add_lambda_options(l3);
    l3->add_option("--central-subgroup", central, "Label of an element generating A (repeatable)")
        ->allow_extra_args(false);
    l3->add_flag("--center", center, "A = Z(G)");
    l3->callback([&] {
        action = [&] {
            if (!certificate_in.empty())
                return verify_certificate(out, glob, certificate_in);
            if (group_spec.empty())
                throw InputError("lambda3 needs --group");
            FiniteGroup g = resolve_group(group_spec);
            CentralSubgroupData data = central_data(g, center, central);
            LambdaEntry e{g.name(), {}, g, subgroup_labels(data), parse_images(images), parse_commutators(commutators)};
            ExtensionContext cx(data, {cap_or(glob, 16), 3});
            Report r = lambda_report(e, cx);
            if (!certificate_out.empty()) {
                PresSetup setup(cx.data(), PresSetup::images_by_label(g, e.images));
                write_json_file(certificate_out, lambda3_certificate(e.s, setup, cx, {{cap_or(glob, 16), 3}}));
            }
            return emit(out, glob,
                        {{"group", g.name()}, {"central_subgroup", e.central_subgroup}, {"words", words_json(e.s)}},
                        r);
        };
    });

    // verify-suite
    auto* suite = app.add_subcommand("verify-suite", "Run the whole acceptance corpus");
    std::string corpus_dir = "fixtures";
    bool stretch = false;
    suite->add_option("--corpus", corpus_dir, "Corpus directory")->capture_default_str();
    suite->add_flag("--stretch", stretch, "Include the stretch entries");
    suite->callback([&] {
        action = [&] {
            Corpus c = Corpus::load(corpus_dir);
            SuiteOptions opts;
            opts.stretch = stretch;
            if (glob.max_order)
                opts.bar.max_order = glob.max_order;
            auto sections = verify_suite(c, opts);
            if (glob.json)
                out << suite_json(sections).dump(2) << "\n";
            else
                out << suite_text(sections);
            bool all = std::all_of(sections.begin(), sections.end(), [](const SuiteSection& s) { return s.passed(); });
            return all ? ok : assertion_failure;
        };
    });

    // bench-snf
    auto* bench = app.add_subcommand("bench-snf", "Time the sparse engine (serial, OpenMP) against the dense reference");
    std::string bench_group = "D4";
    size_t bench_degree = 3;
    bench->add_option("--group", bench_group, "Group whose bar boundary is eliminated")->capture_default_str();
    bench->add_option("--degree", bench_degree, "Boundary degree")->capture_default_str();
    bench->callback([&] {
        action = [&] {
            FiniteGroup g = resolve_group(bench_group);
            Json runs = Json::array({bench_snf(g, bench_degree), bench_bar_boundary(g, bench_degree)});
            bool agree = true;
            for (const auto& r : runs)
                agree = agree && r["agree"].get<bool>();
            if (glob.json) {
                out << runs.dump(2) << "\n";
            } else {
                for (const auto& r : runs) {
                    out << r["kernel"].get<std::string>() << " " << r["rows"] << "x" << r["cols"]
                        << " nnz=" << r["nnz"] << " agree=" << (r["agree"].get<bool>() ? "yes" : "no");
                    for (const auto& [k, v] : r["seconds"].items())
                        out << " " << k << "=" << v.get<double>() << "s";
                    out << "\n";
                }
            }
            return agree ? ok : assertion_failure;
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ok : usage_error;
    }

    try {
        intlin::ResourceLimits limits = intlin::limits();
        limits.time_budget_seconds = glob.time_budget;
        intlin::ScopedLimits scoped(limits);
        return action();
    } catch (const intlin::ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return resource_limit;
    } catch (const ValidationError& e) {
        err << "invalid central subgroup: " << e.what() << "\n";
        return usage_error;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return assertion_failure;
    }
}

} // namespace h3::cli
