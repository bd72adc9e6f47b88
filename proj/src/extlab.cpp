#include "h3/extlab.hpp"

#include <algorithm>

namespace h3 {

namespace {

bool h1_map_is_zero(const FiniteGroup& g, const GroupHom& incl)
{
    BarOptions o;
    o.max_degree = 1;
    o.max_order = g.order();
    GroupHomology ha(incl.dom(), o), hg(g, o);
    return induced(ha, hg, incl, 1).is_zero();
}

std::string witness(const BarChain& z, const FiniteGroup& g, const Element& cls, const std::string& where)
{
    return "cycle " + to_string(z, g) + " has class " + cls.str() + " in " + where;
}

std::string labels_of(const FiniteGroup& g, const std::vector<Elt>& s)
{
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i)
        out += (i ? ", " : "") + g.label(s[i]);
    return out + "}";
}

BarChain single(Elt x) { return BarChain{{{x}, 1}}; }

// Generators of the reduced Kunneth summands of H_3(A x G) pushed into H_3(G):
// H_1(A)(x)H_2(G), H_2(A)(x)H_1(G) and Tor(H_1(A), H_1(G)).
std::vector<Element> reduced_kunneth_images(const ExtensionContext& cx)
{
    const auto& incl = cx.data().incl;
    const auto& ha = cx.ha();
    const auto& hg = cx.hg();
    std::vector<Element> out;
    for (const auto& x : ha.generators(1))
        for (const auto& y : hg.generators(2))
            out.push_back(hg.class_of(3, rho_cross(incl, x, y)));
    for (const auto& x : ha.generators(2))
        for (const auto& y : hg.generators(1))
            out.push_back(hg.class_of(3, rho_cross(incl, x, y)));
    auto xs = ha.generators(1);
    auto ys = hg.generators(1);
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = 0; j < ys.size(); ++j) {
            Integer ox = ha.H(1).gen_order(i), oy = hg.H(1).gen_order(j);
            Integer k = gcd(ox, oy);
            if (k.is_one())
                continue;
            auto big_x = ha.bounding_chain(1, ox * xs[i]);
            auto big_y = hg.bounding_chain(1, oy * ys[j]);
            if (!big_x || !big_y)
                throw std::logic_error("remark (i): torsion generator has no bounding chain");
            BarChain z = (oy / k) * rho_cross(incl, *big_x, ys[j]) + (ox / k) * rho_cross(incl, xs[i], *big_y);
            out.push_back(hg.class_of(3, z));
        }
    return out;
}

Report two_torsion(const ExtensionContext& cx, const SubgroupEmbedding& denom, const std::string& name,
                   const std::string& key)
{
    Report r;
    const auto& incl = cx.data().incl;
    auto [quo, q] = quotient(denom, "H_3(G)/" + key);
    FgAbHom f3 = compose(q, induced(cx.ha(), cx.hg(), incl, 3));
    SubgroupEmbedding img = image(f3, "image of H_3(A)");
    bool ok = true;
    auto gens = cx.ha().generators(3);
    for (size_t i = 0; i < gens.size(); ++i) {
        Element x = f3(cx.ha().H(3).gen(i));
        if (!(Integer(2) * x).is_zero()) {
            r.fail(name,
                   witness(gens[i], incl.dom(), x, "H_3(G)/" + key) + " of order " + x.order().str(),
                   "image " + img.sub.str() + " in " + quo.str());
            ok = false;
            break;
        }
    }
    if (ok)
        r.pass(name, "image " + img.sub.str() + " of H_3(A) in H_3(G)/" + key + " = " + quo.str() +
                         " is killed by 2");
    r.invariants()[key] = denom.sub.str();
    r.invariants()["H_3(G)/" + key] = quo.str();
    r.invariants()["image of H_3(A) in H_3(G)/" + key] = img.sub.str();
    return r;
}

} // namespace

CentralSubgroupData validate(const FiniteGroup& g, std::vector<Elt> a)
{
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (!g.is_subgroup(a))
        throw ValidationError(ValidationError::Kind::not_subgroup, "A is not a subgroup of G");
    if (!g.is_central(a))
        throw ValidationError(ValidationError::Kind::not_central, "A " + labels_of(g, a) + " is not central in G");
    std::vector<Elt> derived = g.derived_subgroup();
    bool inside = std::includes(derived.begin(), derived.end(), a.begin(), a.end());
    GroupHom incl = GroupHom::inclusion(g, a);
    if (inside != h1_map_is_zero(g, incl))
        throw std::logic_error("validate: containment in G' disagrees with the map H_1(A) -> H_1(G)");
    if (!inside)
        throw ValidationError(ValidationError::Kind::not_in_derived,
                              "A " + labels_of(g, a) + " is not contained in G' = " + labels_of(g, derived));
    Quotient quo = quotient(g, a);
    FiniteGroup q(quo.group.table(), quo.group.labels(), g.name().empty() ? "Q" : g.name() + "/A");
    GroupHom proj(g, q, quo.projection.values());
    return {g, a, q, proj, incl};
}

CentralSubgroupData validate(const FiniteGroup& g, const std::vector<std::string>& labels)
{
    std::vector<Elt> a{g.identity()};
    for (const auto& l : labels) {
        auto x = g.find(l);
        if (!x)
            throw ValidationError(ValidationError::Kind::not_subgroup, "unknown element label '" + l + "'");
        a.push_back(*x);
    }
    return validate(g, a);
}

ExtensionContext::ExtensionContext(CentralSubgroupData data, const BarOptions& opts) : data_(std::move(data))
{
    ha_ = std::make_shared<const GroupHomology>(data_.incl.dom(), opts);
    hg_ = std::make_shared<const GroupHomology>(data_.g, opts);
    hq_ = std::make_shared<const GroupHomology>(data_.q, opts);
    rho_ = rho_image(*hg_, data_.incl, *ha_);
}

Report low_degree_triviality(const ExtensionContext& cx)
{
    Report r;
    for (size_t n : {1, 2}) {
        const std::string name = "low_degree_triviality.H" + std::to_string(n);
        FgAbHom f = induced(cx.ha(), cx.hg(), cx.data().incl, n);
        if (cx.ha().H(n).is_trivial()) {
            r.pass(name, "vacuous: H_" + std::to_string(n) + "(A) = 0");
            continue;
        }
        auto gens = cx.ha().generators(n);
        bool ok = true;
        for (size_t i = 0; i < gens.size() && ok; ++i) {
            Element x = f(cx.ha().H(n).gen(i));
            if (!x.is_zero()) {
                r.fail(name, witness(gens[i], cx.data().incl.dom(), x, "H_" + std::to_string(n) + "(G)"));
                ok = false;
            }
        }
        if (ok)
            r.pass(name, "H_" + std::to_string(n) + "(A) = " + cx.ha().H(n).str() + " maps to zero");
    }
    return r;
}

Report wedge3_composite_trivial(const ExtensionContext& cx)
{
    Report r;
    const std::string name = "wedge3_composite_trivial";
    std::vector<Elt> gens = h1_generator_elements(cx.ha());
    if (gens.size() < 3) {
        r.pass(name, "vacuous: A needs at least 3 generators, it has " + std::to_string(gens.size()));
        return r;
    }
    const FiniteGroup& a = cx.data().incl.dom();
    auto id = [](Elt x) { return x; };
    size_t triples = 0;
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            for (size_t k = j + 1; k < gens.size(); ++k) {
                BarChain c = shuffle(shuffle(single(gens[i]), id, single(gens[j]), id, a), id, single(gens[k]), id, a);
                BarChain z = push_forward(cx.data().incl, c);
                Element x = cx.hg().class_of(3, z);
                if (!x.is_zero()) {
                    r.fail(name, witness(z, cx.data().g, x, "H_3(G)"));
                    return r;
                }
                ++triples;
            }
    r.pass(name, std::to_string(triples) + " generator triples map to zero");
    return r;
}

Report theorem_2torsion(const ExtensionContext& cx)
{
    return two_torsion(cx, cx.rho(), "theorem_2torsion", "rho_*(A(x)H_2(G))");
}

Report remark_i_check(const ExtensionContext& cx)
{
    SubgroupEmbedding d = subgroup_generated(cx.hg().H(3), reduced_kunneth_images(cx), "rho_*(reduced H_3(AxG))");
    if (!is_subgroup_of(cx.rho(), d))
        throw std::logic_error("remark (i): rho_*(A(x)H_2(G)) is not inside the larger denominator");
    return two_torsion(cx, d, "remark_i_check", "rho_*(reduced H_3(AxG))");
}

Report stammbach_inclusion(const ExtensionContext& cx)
{
    Report r;
    const std::string name = "stammbach_inclusion";
    const auto& incl = cx.data().incl;
    std::vector<Element> left;
    for (const auto& x : cx.ha().generators(2))
        for (const auto& y : cx.hg().generators(1)) {
            BarChain z = rho_cross(incl, x, y);
            Element c = cx.hg().class_of(3, z);
            left.push_back(c);
            if (!cx.rho().contains(c)) {
                r.fail(name, witness(z, cx.data().g, c, "H_3(G)") + ", outside rho_*(A(x)H_2(G))");
                return r;
            }
        }
    SubgroupEmbedding l = subgroup_generated(cx.hg().H(3), left);
    r.pass(name, "image of H_2(A)(x)H_1(G) = " + l.sub.str() + " lies in rho_*(A(x)H_2(G)) = " + cx.rho().sub.str());
    r.invariants()["image of H_2(A)(x)H_1(G)"] = l.sub.str();
    return r;
}

Report cohomology_triviality(const ExtensionContext& cx)
{
    Report r;
    const std::string name = "cohomology_triviality";
    FgAbHom i2 = induced(cx.ha(), cx.hg(), cx.data().incl, 2);
    Ext1 eg(cx.hg().H(2)), ea(cx.ha().H(2));
    FgAbHom m = ea.induced(eg, i2);
    r.invariants()["H^3(G)"] = eg.group().str();
    r.invariants()["H^3(A)"] = ea.group().str();
    for (size_t i = 0; i < eg.group().num_gens(); ++i) {
        Element x = m(eg.group().gen(i));
        if (!x.is_zero()) {
            r.fail(name, "generator " + std::to_string(i) + " of Ext(H_2(G),Z) maps to " + x.str() +
                             " in Ext(H_2(A),Z)");
            return r;
        }
    }
    r.pass(name, "H^3(G) = Ext(H_2(G),Z) = " + eg.group().str() + " -> H^3(A) = " + ea.group().str() +
                     " is zero");
    return r;
}

Report exact1_probe(const ExtensionContext& cx)
{
    Report r;
    FgAbHom pi = induced(cx.hg(), cx.hq(), cx.data().proj, 3);
    auto [quo, q] = quotient(cx.rho());
    bool rho_in_kernel = true;
    for (size_t i = 0; i < cx.rho().sub.num_gens(); ++i)
        rho_in_kernel = rho_in_kernel && pi(cx.rho().inclusion(cx.rho().sub.gen(i))).is_zero();
    auto& inv = r.invariants()["exact1_probe"];
    inv["H_3(G)/rho"] = quo.str();
    inv["H_3(Q)"] = cx.hq().H(3).str();
    inv["rho_in_kernel"] = rho_in_kernel;
    if (!rho_in_kernel)
        return r;
    std::vector<Element> images;
    for (size_t k = 0; k < quo.num_gens(); ++k)
        images.push_back(pi(*lift(q, quo.gen(k))));
    FgAbHom bar_pi = FgAbHom::from_images(quo, cx.hq().H(3), images);
    SubgroupEmbedding ker = kernel(bar_pi);
    size_t a2_rank = 0;
    for (size_t i = 0; i < cx.ha().H(1).num_gens(); ++i)
        a2_rank += (cx.ha().H(1).gen_order(i) % Integer(2)).is_zero();
    bool elementary = ker.sub.is_finite();
    for (const auto& t : ker.sub.torsion())
        elementary = elementary && t == Integer(2);
    inv["surjective"] = bar_pi.is_surjective();
    inv["kernel"] = ker.sub.str();
    inv["kernel_is_quotient_of_A_mod_2"] = elementary && ker.sub.num_gens() <= a2_rank;
    return r;
}

Report extension_report(const ExtensionContext& cx)
{
    const auto& d = cx.data();
    Report r(d.g.name().empty() ? "G" : d.g.name());
    auto& inv = r.invariants();
    for (size_t n = 1; n <= 3; ++n) {
        const std::string s = std::to_string(n);
        inv["H_" + s + "(A)"] = cx.ha().H(n).str();
        inv["H_" + s + "(G)"] = cx.hg().H(n).str();
        inv["H_" + s + "(Q)"] = cx.hq().H(n).str();
    }
    for (const Report& part : {low_degree_triviality(cx), wedge3_composite_trivial(cx), theorem_2torsion(cx),
                               remark_i_check(cx), stammbach_inclusion(cx), cohomology_triviality(cx),
                               exact1_probe(cx)})
        r.merge(part);
    return r;
}

nlohmann::ordered_json extension_json(const ExtensionContext& cx, const Report& r)
{
    const auto& d = cx.data();
    nlohmann::ordered_json input;
    input["group"] = d.g.name();
    input["order"] = d.g.order();
    std::vector<std::string> labels;
    for (Elt x : d.a)
        labels.push_back(d.g.label(x));
    input["central_subgroup"] = labels;
    input["quotient_order"] = d.q.order();
    nlohmann::ordered_json out;
    out["input"] = input;
    out["checks"] = r.checks_json();
    out["invariants"] = r.invariants();
    return out;
}

} // namespace h3
