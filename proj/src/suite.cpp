#include "h3/suite.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "h3/abres.hpp"
#include "h3/emhom.hpp"
#include "h3/gamma.hpp"

namespace h3 {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void factor_sequences(size_t max_order, size_t product, int64_t last, IntVec& cur, std::vector<IntVec>& out)
{
    out.push_back(cur);
    for (int64_t d = std::max<int64_t>(last, 2); product * static_cast<size_t>(d) <= max_order; d += last) {
        cur.push_back(Integer(d));
        factor_sequences(max_order, product * static_cast<size_t>(d), d, cur, out);
        cur.pop_back();
    }
}

Json read_json(const fs::path& p)
{
    std::ifstream in(p);
    if (!in)
        throw std::invalid_argument("cannot read " + p.string());
    return Json::parse(in);
}

std::vector<FgAb> parse_family(const Json& j)
{
    std::vector<FgAb> out;
    for (const auto& s : j)
        out.push_back(FgAb::parse(s.get<std::string>()));
    return out;
}

template <class F>
SuiteEntry timed(std::string input, F&& f)
{
    auto t0 = std::chrono::steady_clock::now();
    SuiteEntry e{std::move(input), f(), 0};
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

SuiteSection family_section(std::string name, int criterion, const std::vector<FgAb>& family,
                            const std::function<Report(const FgAb&)>& run)
{
    SuiteSection s{std::move(name), criterion, {}};
    for (const auto& a : family)
        s.entries.push_back(timed(a.str(), [&] { return run(a); }));
    return s;
}

BarOptions options_for(const FiniteGroup& g, bool stretch, BarOptions bar)
{
    if (stretch)
        bar.max_order = std::max(bar.max_order, g.order());
    return bar;
}

std::string labels_str(const std::vector<std::string>& labels)
{
    std::string out = "{";
    for (size_t i = 0; i < labels.size(); ++i)
        out += (i ? "," : "") + labels[i];
    return out + "}";
}

std::string words_str(const CommutatorProduct& s)
{
    std::string out;
    for (const auto& p : s)
        out += "[" + p.a.str() + "," + p.b.str() + "]";
    return out;
}

// The coset of x modulo the squares of A, named by its smallest label.
std::string mod_two_label(const CentralSubgroupData& d, Elt x)
{
    std::string best;
    for (Elt a : d.a) {
        std::string l = d.g.label(d.g.mul(x, d.g.mul(a, a)));
        if (best.empty() || l < best)
            best = l;
    }
    return best;
}

} // namespace

std::vector<FgAb> finite_abelian_groups(size_t max_order)
{
    std::vector<IntVec> seqs;
    IntVec cur;
    factor_sequences(max_order, 1, 1, cur, seqs);
    std::vector<FgAb> out;
    for (auto& t : seqs)
        out.emplace_back(t);
    std::stable_sort(out.begin(), out.end(), [](const FgAb& x, const FgAb& y) {
        if (x.order() != y.order())
            return x.order() < y.order();
        return x.torsion().size() < y.torsion().size();
    });
    return out;
}

Corpus Corpus::load(const std::string& dir)
{
    fs::path root(dir);
    Json j = read_json(root / "corpus.json");
    Corpus c;
    c.gamma_family = parse_family(j.at("gamma_family"));
    c.suslin_max_order = j.at("suslin_max_order").get<size_t>();
    c.em_family = parse_family(j.at("em_family"));
    c.engine_max_order = j.at("engine_max_order").get<size_t>();

    std::map<std::string, FiniteGroup> groups;
    auto group = [&](const std::string& file) {
        auto it = groups.find(file);
        if (it == groups.end())
            it = groups.emplace(file, FiniteGroup::load((root / file).string())).first;
        return it->second;
    };
    for (const auto& e : j.at("extensions"))
        c.extensions.push_back({e.at("id"), e.at("group"), group(e.at("group")),
                                e.at("central_subgroup").get<std::vector<std::string>>(), e.value("stretch", false)});
    for (const auto& e : j.at("lambda")) {
        CommutatorProduct s;
        for (const auto& w : e.at("words"))
            s.push_back({FreeWord::parse(w.at(0)), FreeWord::parse(w.at(1))});
        c.lambda.push_back({e.at("id"), e.at("group"), group(e.at("group")),
                            e.at("central_subgroup").get<std::vector<std::string>>(),
                            e.at("images").get<std::map<std::string, std::string>>(), std::move(s)});
    }
    return c;
}

bool SuiteSection::passed() const
{
    return std::all_of(entries.begin(), entries.end(), [](const SuiteEntry& e) { return e.report.passed(); });
}

double SuiteSection::seconds() const
{
    double t = 0;
    for (const auto& e : entries)
        t += e.seconds;
    return t;
}

Report gamma_report(const FgAb& a, size_t cap)
{
    Report r(a.str());
    GammaGroup g = gamma_structural(a);
    r.invariants()["Gamma(A)"] = g.carrier().str();
    r.invariants()["ker(Psi)"] = ker_psi(g).sub.str();
    if (a.is_finite())
        r.merge(compare_gamma_models(a, cap));
    else
        r.skip("canonical forms agree", "the oracle needs a finite group");
    r.merge(verify_gamma_sequences(a));
    r.merge(verify_composites(a));
    r.merge(ker_psi_to_mod2_is_zero(a));
    r.merge(ker_psi_tor_identity(a));
    return r;
}

Report em_report(const FgAb& a, const EmOptions& opts)
{
    Report r(a.str());
    std::vector<FgAb> h = homology_k_a_2(a, opts);
    FgAb gamma = gamma_oracle(a).carrier();
    for (size_t n = 0; n < h.size(); ++n)
        r.invariants()["H_" + std::to_string(n) + "(K(A,2))"] = h[n].str();
    r.invariants()["Gamma(A)"] = gamma.str();
    r.expect(h.at(2).isomorphic(a), "H2_is_A", h.at(2).str());
    r.expect(h.at(3).is_trivial(), "H3_is_zero", h.at(3).str());
    r.expect(h.at(4).isomorphic(gamma), "H4_is_Gamma", h.at(4).str() + " vs " + gamma.str());
    return r;
}

Report lambda_report(const LambdaEntry& e, const ExtensionContext& cx)
{
    Report r(e.id);
    PresSetup setup(cx.data(), PresSetup::images_by_label(e.g, e.images));
    r.invariants()["words"] = words_str(e.s);
    try {
        BarChain lam = lambda3(e.s, setup);
        r.expect(cx.hg().is_cycle(3, lam), "lambda3_boundary_zero", to_string(lam, e.g));
    } catch (const BoundaryError& err) {
        r.fail("lambda3_boundary_zero", err.what());
        return r;
    }
    r.merge(lambda3_class_checks(e.s, setup, cx));

    PresSetup q = setup.on_quotient();
    try {
        BarChain lam2 = lambda2(e.s, q);
        r.expect(cx.hq().is_cycle(2, lam2), "lambda2_boundary_zero", to_string(lam2, q.target()));
        CommutatorProduct twice = e.s;
        twice.insert(twice.end(), e.s.begin(), e.s.end());
        Element c = cx.hq().class_of(2, lam2), cc = cx.hq().class_of(2, lambda2(twice, q));
        r.expect(cc == Integer(2) * c, "lambda2_concatenation", cc.str() + " != 2 * " + c.str());
    } catch (const BoundaryError& err) {
        r.fail("lambda2_boundary_zero", err.what());
    }

    auto roundtrip = [&](const std::string& name, const Json& cert) {
        Report back = check_certificate(nlohmann::json::parse(cert.dump()));
        std::string failed, skipped;
        for (const auto& c : back.checks()) {
            if (c.verdict == Verdict::fail)
                failed += (failed.empty() ? "" : ", ") + c.name + ": " + c.witness;
            if (c.verdict == Verdict::skipped)
                skipped += (skipped.empty() ? "" : ", ") + c.name;
        }
        r.expect(failed.empty(), name, failed, skipped.empty() ? "" : "skipped by the re-checker: " + skipped);
    };
    roundtrip("lambda3_certificate_roundtrip", lambda3_certificate(e.s, setup, cx));
    roundtrip("lambda2_certificate_roundtrip", lambda2_certificate(e.s, q));
    return r;
}

SuiteSection gamma_models_section(const Corpus& c)
{
    return family_section("gamma_models", 1, c.gamma_family, [](const FgAb& a) {
        Report r = compare_gamma_models(a);
        r.invariants()["Gamma(A)"] = gamma_oracle(a).carrier().str();
        return r;
    });
}

SuiteSection gamma_identities_section(const Corpus& c)
{
    return family_section("gamma_identities", 2, c.gamma_family, [](const FgAb& a) {
        Report r = verify_gamma_sequences(a);
        r.merge(verify_composites(a));
        return r;
    });
}

SuiteSection ker_psi_section(const Corpus& c)
{
    return family_section("ker_psi", 3, c.gamma_family, [](const FgAb& a) {
        Report r = ker_psi_to_mod2_is_zero(a);
        r.merge(ker_psi_tor_identity(a));
        return r;
    });
}

SuiteSection suslin_section(const Corpus& c)
{
    return family_section("suslin_order", 4, finite_abelian_groups(c.suslin_max_order), suslin_order_check);
}

SuiteSection em_section(const Corpus& c)
{
    return family_section("eilenberg_maclane_k_a_2", 5, c.em_family, [](const FgAb& a) { return em_report(a); });
}

SuiteSection engine_section(const Corpus& c)
{
    return family_section("engine_agreement", 6, finite_abelian_groups(c.engine_max_order), [&](const FgAb& a) {
        Report r(a.str());
        GroupHomology bar(FiniteGroup::abelian(a.torsion()), {c.engine_max_order, 3});
        AbelianComplex res = AbelianComplex::of(a, 4);
        for (size_t n = 0; n <= 3; ++n) {
            const FgAb &x = bar.H(n), &y = res.homology(n).group();
            r.invariants()["H_" + std::to_string(n)] = x.str();
            r.expect(x.isomorphic(y), "H" + std::to_string(n) + "_bar_equals_resolution",
                     "bar " + x.str() + ", resolution " + y.str());
        }
        return r;
    });
}

SuiteSection extension_section(const Corpus& c, const SuiteOptions& opts)
{
    SuiteSection s{"extension_checks", 7, {}};
    for (const auto& e : c.extensions) {
        if (e.stretch && !opts.stretch)
            continue;
        s.entries.push_back(timed(e.id, [&] {
            ExtensionContext cx(validate(e.g, e.central_subgroup), options_for(e.g, e.stretch, opts.bar));
            Report r = extension_report(cx);
            r.invariants()["central_subgroup"] = labels_str(e.central_subgroup);
            return r;
        }));
    }
    return s;
}

SuiteSection lambda_section(const Corpus& c, const SuiteOptions& opts)
{
    SuiteSection s{"hopf_certificates", 8, {}};
    std::map<std::pair<std::string, std::vector<std::string>>, std::shared_ptr<ExtensionContext>> contexts;
    // (group, A, s_g mod 2A) -> the classes of lambda modulo rho observed.
    std::map<std::vector<std::string>, std::set<std::string>> by_image;
    for (const auto& e : c.lambda) {
        auto key = std::make_pair(e.group_file, e.central_subgroup);
        auto t0 = std::chrono::steady_clock::now();
        auto& cx = contexts[key];
        if (!cx)
            cx = std::make_shared<ExtensionContext>(validate(e.g, e.central_subgroup), opts.bar);
        Report r = lambda_report(e, *cx);
        s.entries.push_back({e.id, std::move(r), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
        const Json& inv = s.entries.back().report.invariants();
        if (inv.contains("class_mod_rho")) {
            PresSetup setup(cx->data(), PresSetup::images_by_label(e.g, e.images));
            by_image[{e.g.name(), labels_str(e.central_subgroup), mod_two_label(cx->data(), evaluate(e.s, setup))}]
                .insert(inv["class_mod_rho"].get<std::string>());
        }
    }

    Report exp("class modulo rho against s_g in A/2");
    Json rows = Json::array();
    bool consistent = true;
    for (const auto& [k, classes] : by_image) {
        consistent = consistent && classes.size() == 1;
        rows.push_back({{"group", k[0]},
                        {"central_subgroup", k[1]},
                        {"s_g_mod_2", k[2]},
                        {"classes_mod_rho", std::vector<std::string>(classes.begin(), classes.end())}});
    }
    exp.invariants()["observations"] = rows;
    exp.invariants()["depends_only_on_s_g_mod_2"] = consistent;
    s.entries.push_back({"experiment: class modulo rho against s_g in A/2", exp, 0});
    return s;
}

std::vector<SuiteSection> verify_suite(const Corpus& c, const SuiteOptions& opts)
{
    return {gamma_models_section(c), gamma_identities_section(c), ker_psi_section(c), suslin_section(c),
            em_section(c),           engine_section(c),           extension_section(c, opts),
            lambda_section(c, opts)};
}

Json suite_json(const std::vector<SuiteSection>& sections)
{
    Json out = Json::object();
    Json arr = Json::array();
    bool all = true;
    for (const auto& s : sections) {
        Json entries = Json::array();
        for (const auto& e : s.entries)
            entries.push_back({{"input", e.input},
                               {"passed", e.report.passed()},
                               {"checks", e.report.checks_json()},
                               {"invariants", e.report.invariants()}});
        arr.push_back({{"name", s.name}, {"criterion", s.criterion}, {"passed", s.passed()}, {"entries", entries}});
        all = all && s.passed();
    }
    out["passed"] = all;
    out["sections"] = arr;
    return out;
}

std::string suite_text(const std::vector<SuiteSection>& sections)
{
    std::ostringstream os;
    for (const auto& s : sections) {
        size_t failed = 0;
        for (const auto& e : s.entries)
            failed += !e.report.passed();
        os << "[" << (s.passed() ? "PASS" : "FAIL") << "] " << s.criterion << " " << s.name << ": "
           << s.entries.size() - failed << "/" << s.entries.size() << " entries pass\n";
        for (const auto& e : s.entries)
            for (const auto& c : e.report.checks())
                if (c.verdict == Verdict::fail)
                    os << "    " << e.input << " " << c.name << ": " << c.witness << "\n";
    }
    return os.str();
}

} // namespace h3
