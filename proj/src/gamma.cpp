#include "h3/gamma.hpp"

#include <sstream>

#include "h3/abres.hpp"

namespace h3 {

using intlin::SparseColumn;
using intlin::SparseMat;

namespace {

constexpr size_t enumeration_limit = 1 << 14;

void require_source(const FgAb& expected, const Element& x)
{
    const FgAb& p = x.parent();
    if (!p.isomorphic(expected) || (!p.name().empty() && !expected.name().empty() && p.name() != expected.name()))
        throw ParentMismatch("Gamma: element of " + p.str() + " is not in " + expected.str());
}

std::string describe(const Element& x) { return x.str() + " in " + x.parent().str(); }

bool small_enough(const FgAb& g) { return g.is_finite() && g.order() <= Integer(enumeration_limit); }

// Exactness of X -f-> Y -g-> Z at Y, on generators and, for small Y, element by element.
void check_exact(Report& r, const std::string& name, const FgAbHom& f, const FgAbHom& g)
{
    FgAbHom gf = compose(g, f);
    std::string witness;
    for (size_t k = 0; k < f.dom().num_gens() && witness.empty(); ++k)
        if (!gf(f.dom().gen(k)).is_zero())
            witness = "g(f(x)) != 0 for x = " + describe(f.dom().gen(k));
    auto im = image(f);
    auto ker = kernel(g);
    for (size_t k = 0; k < ker.sub.num_gens() && witness.empty(); ++k) {
        Element y = ker.inclusion(ker.sub.gen(k));
        if (!im.contains(y))
            witness = "kernel element outside the image: " + describe(y);
    }
    if (witness.empty() && small_enough(f.cod()))
        for (const auto& y : f.cod().elements())
            if (g(y).is_zero() != im.contains(y)) {
                witness = "element " + describe(y) + (im.contains(y) ? " in image but not in kernel"
                                                                     : " in kernel but not in image");
                break;
            }
    r.expect(witness.empty(), name, witness);
}

void check_surjective(Report& r, const std::string& name, const FgAbHom& f)
{
    auto im = image(f);
    std::string witness;
    for (size_t k = 0; k < f.cod().num_gens(); ++k)
        if (!im.contains(f.cod().gen(k))) {
            witness = "generator not hit: " + describe(f.cod().gen(k));
            break;
        }
    r.expect(witness.empty(), name, witness);
}

// Compares two homomorphisms with the same domain on generators and, for small domains, on all elements.
void check_equal(Report& r, const std::string& name, const FgAbHom& f, const FgAbHom& g)
{
    std::string witness;
    if (f.dom().is_finite() && f.dom().order() <= Integer(enumeration_limit)) {
        for (const auto& x : f.dom().elements())
            if (!(f(x) == g(x))) {
                witness = "x = " + describe(x) + ": " + f(x).str() + " vs " + g(x).str();
                break;
            }
    }
    else if (!(f == g))
        for (size_t k = 0; k < f.dom().num_gens(); ++k)
            if (!(f(f.dom().gen(k)) == g(f.dom().gen(k)))) {
                witness = "generator " + describe(f.dom().gen(k));
                break;
            }
    r.expect(witness.empty() && f == g, name, witness.empty() ? "matrices differ" : witness);
}

GammaGroup preferred_model(const FgAb& a)
{
    if (a.is_finite() && a.order() <= Integer(64))
        return gamma_oracle(a);
    return gamma_structural(a);
}

const char* model_name(GammaGroup::Model m) { return m == GammaGroup::Model::oracle ? "oracle" : "structural"; }

} // namespace

GammaGroup::GammaGroup(FgAb a, Model model)
    : a_(std::move(a)), model_(model), mod2_(std::make_shared<ModTwo>(a_)), tensor_(std::make_shared<Tensor>(a_, a_))
{
}

IntVec GammaGroup::symbols_of(const Element& a) const
{
    require_source(a_, a);
    const auto& c = a.coords();
    IntVec v(pres_.num_symbols());
    if (model_ == Model::oracle) {
        size_t idx = 0;
        for (size_t i = 0; i < c.size(); ++i)
            idx += static_cast<size_t>(c[i].small()) * static_cast<size_t>(strides_[i].small());
        v[idx] = 1;
        return v;
    }
    const size_t n = a_.num_gens();
    size_t pair = n;
    for (size_t i = 0; i < n; ++i) {
        v[i] = c[i] * c[i];
        for (size_t j = i + 1; j < n; ++j)
            v[pair++] = c[i] * c[j];
    }
    return v;
}

Element GammaGroup::gamma_of(const Element& a) const { return pres_.project(symbols_of(a)); }

Element GammaGroup::pairing(const Element& a, const Element& b) const
{
    return gamma_of(a + b) - gamma_of(a) - gamma_of(b);
}

void GammaGroup::finish()
{
    const size_t n = a_.num_gens();
    std::vector<IntVec> to_mod2, to_tensor;
    auto add_images = [&](const IntVec& c) {
        to_mod2.push_back(c);
        IntVec t(n * n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                t[tensor_->symbol(i, j)] = c[i] * c[j];
        to_tensor.push_back(std::move(t));
    };
    if (model_ == Model::oracle) {
        for (const auto& x : a_.elements())
            add_images(x.coords());
    }
    else {
        for (size_t i = 0; i < n; ++i) {
            IntVec e(n);
            e[i] = 1;
            add_images(e);
        }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                to_mod2.push_back(IntVec(n));
                IntVec t(n * n);
                t[tensor_->symbol(i, j)] = 1;
                t[tensor_->symbol(j, i)] = 1;
                to_tensor.push_back(std::move(t));
            }
    }
    phi_ = pres_.induced(mod2_->presentation(), to_mod2);
    psi_ = pres_.induced(tensor_->presentation(), to_tensor);

    std::vector<Element> brackets;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            brackets.push_back(pairing(a_.gen(i), a_.gen(j)));
    bracket_ = tensor_->presentation().map_to(carrier(), brackets);
}

FgAbHom GammaGroup::induced(const GammaGroup& target, const FgAbHom& f) const
{
    std::vector<Element> images;
    if (model_ == Model::oracle) {
        for (const auto& x : a_.elements())
            images.push_back(target.gamma_of(f(x)));
    }
    else {
        const size_t n = a_.num_gens();
        for (size_t i = 0; i < n; ++i)
            images.push_back(target.gamma_of(f(a_.gen(i))));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                images.push_back(target.pairing(f(a_.gen(i)), f(a_.gen(j))));
    }
    return pres_.map_to(target.carrier(), images);
}

GammaGroup gamma_oracle(const FgAb& a, size_t cap)
{
    if (!a.is_finite())
        throw std::domain_error("Gamma oracle needs a finite group, got " + a.str());
    if (a.order() > Integer(static_cast<int64_t>(cap)))
        throw intlin::ResourceLimitError("Gamma oracle: |A| = " + a.order().str() + " exceeds the cap " +
                                         std::to_string(cap));
    GammaGroup g(a, GammaGroup::Model::oracle);
    const size_t k = a.num_gens();
    const size_t n = static_cast<size_t>(a.order().small());
    std::vector<size_t> ord(k), stride(k);
    size_t s = 1;
    for (size_t i = k; i-- > 0;) {
        ord[i] = static_cast<size_t>(a.gen_order(i).small());
        stride[i] = s;
        s *= ord[i];
    }
    for (size_t i = 0; i < k; ++i)
        g.strides_.push_back(Integer(static_cast<int64_t>(stride[i])));

    auto digit = [&](size_t x, size_t i) { return x / stride[i] % ord[i]; };
    std::vector<size_t> neg(n), add(n * n);
    for (size_t x = 0; x < n; ++x) {
        size_t y = 0;
        for (size_t i = 0; i < k; ++i)
            y += (ord[i] - digit(x, i)) % ord[i] * stride[i];
        neg[x] = y;
        for (size_t z = 0; z < n; ++z) {
            size_t w = 0;
            for (size_t i = 0; i < k; ++i)
                w += (digit(x, i) + digit(z, i)) % ord[i] * stride[i];
            add[x * n + z] = w;
        }
    }

    SparseMat rel(n, 0);
    for (size_t x = 0; x < n; ++x)
        rel.append_column({{static_cast<uint32_t>(x), Integer(1)}, {static_cast<uint32_t>(neg[x]), Integer(-1)}});
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y) {
            const size_t xy = add[x * n + y];
            for (size_t z = 0; z < n; ++z) {
                auto u = [](size_t i, int v) { return intlin::SparseEntry{static_cast<uint32_t>(i), Integer(v)}; };
                rel.append_column({u(add[xy * n + z], 1), u(xy, -1), u(add[x * n + z], -1), u(add[y * n + z], -1),
                                   u(x, 1), u(y, 1), u(z, 1)});
            }
        }
    g.pres_ = present(rel, "Gamma(" + a.str() + ") oracle");
    g.finish();
    return g;
}

GammaGroup gamma_structural(const FgAb& a)
{
    GammaGroup g(a, GammaGroup::Model::structural);
    const size_t n = a.num_gens();
    const size_t symbols = n + n * (n - (n > 0 ? 1 : 0)) / 2;
    std::vector<IntVec> rels;
    for (size_t i = 0; i < n; ++i) {
        const Integer o = a.gen_order(i);
        if (o.is_zero())
            continue;
        IntVec r(symbols);
        r[i] = o % Integer(2) == Integer(0) ? Integer(2) * o : o;
        rels.push_back(std::move(r));
    }
    size_t pair = n;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j, ++pair) {
            Integer o = gcd(a.gen_order(i), a.gen_order(j));
            if (o.is_zero())
                continue;
            IntVec r(symbols);
            r[pair] = o;
            rels.push_back(std::move(r));
        }
    g.pres_ = present(symbols, rels, "Gamma(" + a.str() + ")");
    g.finish();
    return g;
}

SubgroupEmbedding ker_psi(const GammaGroup& g) { return kernel(g.psi(), "ker Psi"); }

SubgroupEmbedding ker_psi(const FgAb& a) { return ker_psi(gamma_structural(a)); }

Report verify_gamma_sequences(const FgAb& a)
{
    Report r("Gamma exact sequences for A = " + a.str());
    GammaGroup g = preferred_model(a);
    ExteriorPower w(a, 2);
    FgAbHom to_wedge = w.from_tensor(g.tensor());
    check_exact(r, "exact-Gamma1 at A(x)A", g.psi(), to_wedge);
    check_surjective(r, "exact-Gamma1 onto wedge^2 A", to_wedge);
    check_exact(r, "exact-Gamma2 at Gamma(A)", g.bracket(), g.phi());
    check_surjective(r, "Phi surjective", g.phi());
    r.invariants()["model"] = model_name(g.model());
    r.invariants()["Gamma(A)"] = g.carrier().str();
    r.invariants()["A(x)A"] = g.tensor().group().str();
    r.invariants()["wedge2(A)"] = w.group().str();
    r.invariants()["A/2"] = g.mod_two().group().str();
    return r;
}

Report verify_composites(const FgAb& a)
{
    Report r("Gamma composite identities for A = " + a.str());
    GammaGroup g = preferred_model(a);
    const Tensor& t = g.tensor();
    const size_t n = a.num_gens();

    check_equal(r, "[,] o Psi = 2", compose(g.bracket(), g.psi()), Integer(2) * FgAbHom::identity(g.carrier()));

    std::vector<IntVec> swapped(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            IntVec v(n * n);
            v[t.symbol(j, i)] = 1;
            swapped[t.symbol(i, j)] = std::move(v);
        }
    FgAbHom swap = t.presentation().induced(t.presentation(), swapped);
    check_equal(r, "Psi o [,] = 1 + swap", compose(g.psi(), g.bracket()), FgAbHom::identity(t.group()) + swap);

    std::string w_sq, w_quad;
    if (small_enough(a))
        for (const auto& x : a.elements()) {
            if (w_sq.empty() && !(g.pairing(x, x) == Integer(2) * g.gamma_of(x)))
                w_sq = "a = " + describe(x);
            if (w_quad.empty() &&
                !(g.gamma_of(-x) == g.gamma_of(x) && g.phi()(g.gamma_of(x)) == g.mod_two().reduce(x) &&
                  g.psi()(g.gamma_of(x)) == t.elem(x, x)))
                w_quad = "a = " + describe(x);
        }
    else
        for (size_t i = 0; i < n && w_sq.empty(); ++i) {
            Element x = a.gen(i);
            if (!(g.pairing(x, x) == Integer(2) * g.gamma_of(x)))
                w_sq = "a = " + describe(x);
        }
    r.expect(w_sq.empty(), "[a,a] = 2 gamma(a)", w_sq);
    r.expect(w_quad.empty(), "gamma(-a) = gamma(a), Phi gamma(a) = a mod 2, Psi gamma(a) = a(x)a", w_quad);
    r.invariants()["model"] = model_name(g.model());
    r.invariants()["Gamma(A)"] = g.carrier().str();
    return r;
}

Report ker_psi_to_mod2_is_zero(const FgAb& a)
{
    Report r("ker Psi for A = " + a.str());
    GammaGroup g = preferred_model(a);
    auto k = ker_psi(g);
    std::string two, phi;
    for (size_t i = 0; i < k.sub.num_gens(); ++i) {
        Element x = k.inclusion(k.sub.gen(i));
        if (two.empty() && !(Integer(2) * x).is_zero())
            two = "x = " + describe(x);
        if (phi.empty() && !g.phi()(x).is_zero())
            phi = "x = " + describe(x) + ", Phi(x) = " + g.phi()(x).str();
    }
    r.expect(two.empty(), "2 ker(Psi) = 0", two);
    r.expect(phi.empty(), "ker(Psi) -> A/2 is zero", phi);
    r.invariants()["ker(Psi)"] = k.sub.str();
    return r;
}

Report compare_gamma_models(const FgAb& a, size_t cap)
{
    Report r("Gamma oracle vs structural for A = " + a.str());
    GammaGroup o = gamma_oracle(a, cap);
    GammaGroup s = gamma_structural(a);
    r.invariants()["oracle"] = o.carrier().str();
    r.invariants()["structural"] = s.carrier().str();
    r.expect(o.carrier().isomorphic(s.carrier()), "canonical forms agree",
             o.carrier().str() + " vs " + s.carrier().str());
    FgAbHom iso = o.induced(s, FgAbHom::identity(a));
    r.expect(iso.is_iso(), "gamma(a) |-> gamma(a) is an isomorphism", "comparison map is not bijective");
    check_equal(r, "Phi commutes with the comparison", compose(s.phi(), iso), o.phi());
    check_equal(r, "Psi commutes with the comparison", compose(s.psi(), iso), o.psi());
    return r;
}

Report ker_psi_tor_identity(const FgAb& a)
{
    Report r("ker Psi against Tor(A,A)^Sigma2 for A = " + a.str());
    TorSummand ts = tor_summand_selfmap(a);
    // On the Kunneth summand the swap of factors acts as -sigma.
    auto inv = involution_invariants(-ts.swap, -1, "Tor(A,A)^Sigma2");
    Tor tor(a, a);
    auto inv_alg = involution_invariants(tor.swap(), -1);
    r.expect(inv.sub.isomorphic(inv_alg.sub), "Sigma2-invariants agree with the algebraic Tor",
             inv.sub.str() + " vs " + inv_alg.sub.str());

    auto im = image(ts.selfmap);
    std::vector<Element> inside;
    std::string outside;
    for (size_t k = 0; k < im.sub.num_gens(); ++k) {
        Element x = im.inclusion(im.sub.gen(k));
        auto pre = inv.preimage(x);
        if (pre)
            inside.push_back(*pre);
        else if (outside.empty())
            outside = "x = " + describe(x);
    }
    r.expect(outside.empty(), "image of (Delta mu)_* lies in Tor(A,A)^Sigma2", outside);
    auto [quot, proj] = quotient(subgroup_generated(inv.sub, inside));
    auto k = ker_psi(gamma_structural(a));
    r.expect(quot.isomorphic(k.sub), "ker(Psi) = Tor(A,A)^Sigma2 / (Delta mu)_* Tor(A,A)",
             "quotient " + quot.str() + " vs ker(Psi) " + k.sub.str());
    r.invariants()["Tor(A,A)"] = ts.tor.str();
    r.invariants()["Tor(A,A)^Sigma2"] = inv.sub.str();
    r.invariants()["(Delta mu)_* image"] = im.sub.str();
    r.invariants()["quotient"] = quot.str();
    r.invariants()["ker(Psi)"] = k.sub.str();
    return r;
}

Report suslin_order_check(const FgAb& a)
{
    Report r("Suslin order identity for A = " + a.str());
    AbelianComplex c = AbelianComplex::of(a, 4);
    const FgAb& h3 = c.homology(3).group();
    ExteriorPower w3(a, 3);
    Tor tor(a, a);
    auto inv = involution_invariants(tor.swap(), -1);
    Integer lhs = h3.order(), rhs = w3.group().order() * inv.sub.order();
    r.expect(lhs == rhs, "|H_3(A)| = |wedge^3 A| * |Tor(A,A)^Sigma2|", lhs.str() + " != " + rhs.str());
    r.invariants()["H_3(A)"] = h3.str();
    r.invariants()["wedge3(A)"] = w3.group().str();
    r.invariants()["Tor(A,A)^Sigma2"] = inv.sub.str();
    return r;
}

} // namespace h3
