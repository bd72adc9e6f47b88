#include "h3/abres.hpp"

#include <functional>

namespace h3 {

using intlin::SparseColumn;

namespace {

int64_t order_of(const IntVec& orders, size_t i) { return orders[i].small(); }

std::string factor_label(const IntVec& orders)
{
    std::string s;
    for (size_t i = 0; i < orders.size(); ++i)
        s += (i ? "," : "") + (orders[i].is_zero() ? std::string("Z") : orders[i].str());
    return "[" + s + "]";
}

IntVec concat(const IntVec& a, const IntVec& b)
{
    IntVec out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

void validate_factor_map(const AbelianComplex& src, const AbelianComplex& tgt, const IntMat& m)
{
    if (m.rows() != tgt.num_factors() || m.cols() != src.num_factors())
        throw std::invalid_argument("factor map has shape " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()));
    for (size_t i = 0; i < src.num_factors(); ++i) {
        const Integer& o = src.orders()[i];
        for (size_t j = 0; j < tgt.num_factors(); ++j) {
            if (!m(j, i).is_small())
                throw std::invalid_argument("factor map entry too large");
            const Integer& t = tgt.orders()[j];
            if (o.is_zero())
                continue;
            if (t.is_zero() ? !m(j, i).is_zero() : !divides(t, o * m(j, i)))
                throw std::invalid_argument("factor map is not well defined on factor " + std::to_string(i));
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------

AbelianComplex::AbelianComplex(IntVec orders, size_t top) : orders_(std::move(orders))
{
    for (const auto& o : orders_)
        if (o.sign() < 0 || !o.is_small())
            throw std::invalid_argument("factor order " + o.str() + " is not supported");
    const size_t k = orders_.size();
    cells_.resize(top + 1);
    Cell cur(k);
    std::function<void(size_t, size_t, size_t)> rec = [&](size_t i, size_t left, size_t n) {
        if (i == k) {
            if (left == 0)
                cells_[n].push_back(cur);
            return;
        }
        size_t cap = orders_[i].is_zero() ? std::min<size_t>(left, 1) : left;
        for (size_t d = 0; d <= cap; ++d) {
            cur[i] = static_cast<uint8_t>(d);
            rec(i + 1, left - d, n);
        }
        cur[i] = 0;
    };
    for (size_t n = 0; n <= top; ++n) {
        rec(0, n, n);
        for (size_t j = 0; j < cells_[n].size(); ++j)
            index_[cells_[n][j]] = j;
    }

    EquivariantResolution res(*this);
    std::vector<size_t> ranks(top + 1);
    std::vector<SparseMat> ds(top + 1);
    for (size_t n = 0; n <= top; ++n)
        ranks[n] = cells_[n].size();
    for (size_t n = 1; n <= top; ++n) {
        SparseMat d(ranks[n - 1], ranks[n]);
        for (size_t j = 0; j < ranks[n]; ++j) {
            EquivariantResolution::Chain x{{{std::vector<int64_t>(k), static_cast<uint32_t>(j)}, Integer(1)}};
            IntVec col = res.reduce(res.boundary(x, n), n - 1);
            SparseColumn sc;
            for (size_t i = 0; i < col.size(); ++i)
                if (!col[i].is_zero())
                    sc.push_back({static_cast<uint32_t>(i), col[i]});
            d.set_column(j, std::move(sc));
        }
        ds[n] = std::move(d);
    }
    complex_ = ChainComplex(std::move(ranks), std::move(ds));
    const std::string label = factor_label(orders_);
    for (size_t n = 0; n < top; ++n)
        homology_.push_back(std::make_shared<const Homology>(complex_, n, "H_" + std::to_string(n) + label));
}

AbelianComplex AbelianComplex::of(const FgAb& a, size_t top)
{
    IntVec orders;
    for (size_t i = 0; i < a.num_gens(); ++i)
        orders.push_back(a.gen_order(i));
    return AbelianComplex(std::move(orders), top);
}

bool AbelianComplex::is_finite() const
{
    for (const auto& o : orders_)
        if (o.is_zero())
            return false;
    return true;
}

size_t AbelianComplex::cell_index(const Cell& c) const
{
    auto it = index_.find(c);
    if (it == index_.end())
        throw std::out_of_range("cell outside the truncated complex");
    return it->second;
}

const Homology& AbelianComplex::homology(size_t n) const
{
    if (n >= homology_.size())
        throw std::out_of_range("H_" + std::to_string(n) + " needs a complex of top degree > " + std::to_string(n));
    return *homology_[n];
}

// ---------------------------------------------------------------------------

std::vector<int64_t> EquivariantResolution::normalize(std::vector<int64_t> g) const
{
    for (size_t i = 0; i < g.size(); ++i) {
        int64_t m = order_of(c_->orders(), i);
        if (m > 0)
            g[i] = ((g[i] % m) + m) % m;
    }
    return g;
}

void EquivariantResolution::add_boundary(Chain& out, const Basis& b, const Integer& c, size_t n) const
{
    const Cell& cell = c_->cells(n)[b.cell];
    bool negative = false;
    for (size_t i = 0; i < cell.size(); ++i) {
        const int d = cell[i];
        if (d == 0)
            continue;
        Cell lower = cell;
        --lower[i];
        const auto idx = static_cast<uint32_t>(c_->cell_index(lower));
        const Integer coef = negative ? -c : c;
        const int64_t m = order_of(c_->orders(), i);
        auto add = [&](int64_t shift, const Integer& v) {
            std::vector<int64_t> g = b.g;
            g[i] += shift;
            Integer& slot = out[{normalize(std::move(g)), idx}];
            slot += v;
        };
        if (m == 0 || d % 2 == 1) {
            add(1, coef);
            add(0, -coef);
        }
        else
            for (int64_t j = 0; j < m; ++j)
                add(j, coef);
        if (d % 2 == 1)
            negative = !negative;
    }
}

EquivariantResolution::Chain EquivariantResolution::boundary(const Chain& x, size_t n) const
{
    Chain out;
    if (n == 0)
        return out;
    for (const auto& [b, c] : x)
        add_boundary(out, b, c, n);
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

void EquivariantResolution::add_homotopy(Chain& out, const Basis& b, const Integer& c, size_t n) const
{
    if (n + 1 > c_->top())
        throw std::logic_error("homotopy beyond the truncation degree");
    const Cell& cell = c_->cells(n)[b.cell];
    std::vector<int64_t> g = b.g;
    for (size_t i = 0; i < cell.size(); ++i) {
        const int d = cell[i];
        const int64_t m = order_of(c_->orders(), i);
        const int64_t a = g[i];
        if (!(m == 0 && d == 1)) {
            Cell upper = cell;
            ++upper[i];
            const auto idx = static_cast<uint32_t>(c_->cell_index(upper));
            auto add = [&](int64_t exp, const Integer& v) {
                std::vector<int64_t> h = g;
                h[i] = exp;
                Integer& slot = out[{h, idx}];
                slot += v;
            };
            if (m == 0) {
                for (int64_t j = 0; j < a; ++j)
                    add(j, c);
                for (int64_t j = a; j < 0; ++j)
                    add(j, -c);
            }
            else if (d % 2 == 0) {
                for (int64_t j = 0; j < a; ++j)
                    add(j, c);
            }
            else if (a == m - 1)
                add(0, c);
        }
        if (d != 0)
            break;
        g[i] = 0;
    }
}

EquivariantResolution::Chain EquivariantResolution::homotopy(const Chain& x, size_t n) const
{
    Chain out;
    for (const auto& [b, c] : x)
        add_homotopy(out, b, c, n);
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

EquivariantResolution::Chain EquivariantResolution::translate(const Chain& x, const std::vector<int64_t>& g) const
{
    Chain out;
    for (const auto& [b, c] : x) {
        std::vector<int64_t> h = b.g;
        for (size_t i = 0; i < h.size(); ++i)
            h[i] += g[i];
        out[{normalize(std::move(h)), b.cell}] += c;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

IntVec EquivariantResolution::reduce(const Chain& x, size_t n) const
{
    IntVec v(c_->cells(n).size());
    for (const auto& [b, c] : x)
        v[b.cell] += c;
    return v;
}

// ---------------------------------------------------------------------------

namespace {

using Chain = EquivariantResolution::Chain;

class Lifter {
public:
    Lifter(const AbelianComplex& src, const AbelianComplex& tgt, const IntMat& m)
        : src_(src), tgt_(tgt), rs_(src), rt_(tgt), m_(m)
    {
    }

    std::vector<int64_t> image(const std::vector<int64_t>& g) const
    {
        std::vector<int64_t> out(tgt_.num_factors());
        for (size_t j = 0; j < out.size(); ++j)
            for (size_t i = 0; i < g.size(); ++i)
                out[j] += m_(j, i).small() * g[i];
        return rt_.normalize(std::move(out));
    }

    // phi_{n-1} applied to the boundary of the basis cell x of degree n.
    Chain lower_image(const std::vector<Chain>& prev, size_t n, size_t x) const
    {
        Chain bx = rs_.boundary({{{std::vector<int64_t>(src_.num_factors()), static_cast<uint32_t>(x)}, Integer(1)}}, n);
        Chain acc;
        for (const auto& [b, c] : bx)
            for (const auto& [tb, tc] : rt_.translate(prev[b.cell], image(b.g))) {
                Integer& slot = acc[tb];
                slot.add_mul(c, tc);
            }
        std::erase_if(acc, [](const auto& kv) { return kv.second.is_zero(); });
        return acc;
    }

    std::vector<std::vector<Chain>> lift(size_t top, LiftMethod method) const
    {
        std::vector<std::vector<Chain>> phi(top + 1);
        phi[0].push_back({{{std::vector<int64_t>(tgt_.num_factors()), 0}, Integer(1)}});
        for (size_t n = 1; n <= top; ++n) {
            if (method == LiftMethod::solve)
                prepare_solver(n);
            for (size_t x = 0; x < src_.cells(n).size(); ++x) {
                Chain y = lower_image(phi[n - 1], n, x);
                phi[n].push_back(method == LiftMethod::homotopy ? rt_.homotopy(y, n - 1) : solve(y, n));
            }
        }
        return phi;
    }

private:
    // Z-basis of the target resolution in degree n: group element index * cells + cell.
    size_t group_index(const std::vector<int64_t>& g) const
    {
        size_t idx = 0;
        for (size_t i = 0; i < g.size(); ++i)
            idx = idx * static_cast<size_t>(order_of(tgt_.orders(), i)) + static_cast<size_t>(g[i]);
        return idx;
    }

    std::vector<int64_t> group_element(size_t idx) const
    {
        std::vector<int64_t> g(tgt_.num_factors());
        for (size_t i = g.size(); i-- > 0;) {
            auto m = static_cast<size_t>(order_of(tgt_.orders(), i));
            g[i] = static_cast<int64_t>(idx % m);
            idx /= m;
        }
        return g;
    }

    void prepare_solver(size_t n) const
    {
        if (!tgt_.is_finite())
            throw std::invalid_argument("solve lift needs a finite target");
        size_t order = 1;
        for (const auto& o : tgt_.orders())
            order *= static_cast<size_t>(o.small());
        order_ = order;
        const size_t cn = tgt_.cells(n).size(), cl = tgt_.cells(n - 1).size();
        intlin::check_dimension(order * cl, order * cn, "solve lift");
        IntMat d(order * cl, order * cn);
        for (size_t gi = 0; gi < order; ++gi)
            for (size_t c = 0; c < cn; ++c) {
                Chain e{{{group_element(gi), static_cast<uint32_t>(c)}, Integer(1)}};
                for (const auto& [b, v] : rt_.boundary(e, n))
                    d(group_index(b.g) * cl + b.cell, gi * cn + c) = v;
            }
        cycles_ = intlin::kernel_basis(d);
        d_ = std::move(d);
        solved_ = 0;
    }

    Chain solve(const Chain& y, size_t n) const
    {
        const size_t cl = tgt_.cells(n - 1).size(), cn = tgt_.cells(n).size();
        IntVec b(order_ * cl);
        for (const auto& [k, v] : y)
            b[group_index(k.g) * cl + k.cell] = v;
        auto x = intlin::solve(d_, b);
        if (!x)
            throw std::logic_error("chain lift: no solution over a free resolution");
        // Any cycle may be added; cycling through them gives a lift unrelated to the homotopy one.
        if (cycles_.cols() > 0) {
            const size_t c = solved_++ % cycles_.cols();
            for (size_t i = 0; i < x->size(); ++i)
                (*x)[i] += cycles_(i, c);
        }
        Chain out;
        for (size_t i = 0; i < x->size(); ++i)
            if (!(*x)[i].is_zero())
                out[{group_element(i / cn), static_cast<uint32_t>(i % cn)}] = (*x)[i];
        return out;
    }

    const AbelianComplex& src_;
    const AbelianComplex& tgt_;
    EquivariantResolution rs_, rt_;
    const IntMat& m_;
    mutable IntMat d_, cycles_;
    mutable size_t solved_ = 0;
    mutable size_t order_ = 0;
};

} // namespace

ChainMap lift_chain_map(const AbelianComplex& src, const AbelianComplex& tgt, const IntMat& m, size_t top,
                        LiftMethod method)
{
    validate_factor_map(src, tgt, m);
    if (top > src.top() || top > tgt.top())
        throw std::invalid_argument("chain lift above the truncation degree");
    Lifter lifter(src, tgt, m);
    auto phi = lifter.lift(top, method);
    EquivariantResolution rt(tgt);
    std::vector<SparseMat> maps(top + 1);
    for (size_t n = 0; n <= top; ++n) {
        SparseMat s(tgt.cells(n).size(), src.cells(n).size());
        for (size_t x = 0; x < phi[n].size(); ++x) {
            IntVec col = rt.reduce(phi[n][x], n);
            SparseColumn sc;
            for (size_t i = 0; i < col.size(); ++i)
                if (!col[i].is_zero())
                    sc.push_back({static_cast<uint32_t>(i), col[i]});
            s.set_column(x, std::move(sc));
        }
        maps[n] = std::move(s);
    }
    return ChainMap(std::move(maps));
}

FgAbHom induced_map(const AbelianComplex& src, const AbelianComplex& tgt, const IntMat& m, size_t n,
                    LiftMethod method)
{
    ChainMap f = lift_chain_map(src, tgt, m, n, method);
    return induced_map(f, src.homology(n), tgt.homology(n));
}

FgAbHom induced_map(const FgAbHom& f, size_t n, LiftMethod method)
{
    AbelianComplex src = AbelianComplex::of(f.dom(), n + 1), tgt = AbelianComplex::of(f.cod(), n + 1);
    return induced_map(src, tgt, f.matrix(), n, method);
}

IntVec cross_chain(const AbelianComplex& a, size_t p, const IntVec& x, const AbelianComplex& b, size_t q,
                   const IntVec& y, const AbelianComplex& ab)
{
    if (ab.orders() != concat(a.orders(), b.orders()))
        throw std::invalid_argument("cross product: factor lists do not concatenate");
    IntVec z(ab.cells(p + q).size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero())
            continue;
        for (size_t j = 0; j < y.size(); ++j) {
            if (y[j].is_zero())
                continue;
            Cell c = a.cells(p)[i];
            const Cell& d = b.cells(q)[j];
            c.insert(c.end(), d.begin(), d.end());
            z[ab.cell_index(c)].add_mul(x[i], y[j]);
        }
    }
    return z;
}

namespace {

// A chain whose boundary is z (which must be a boundary).
IntVec bounding_chain(const AbelianComplex& c, size_t n, const IntVec& z)
{
    auto x = intlin::solve(c.complex().boundary(n + 1).to_dense(), z);
    if (!x)
        throw std::logic_error("expected a boundary in degree " + std::to_string(n));
    return *x;
}

IntVec scaled(const Integer& k, IntVec v)
{
    for (auto& e : v)
        e *= k;
    return v;
}

IntVec add(IntVec a, const IntVec& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

} // namespace

IntVec KunnethDecomposition::tor_cycle(const AbelianComplex& a, size_t p, const IntVec& x, const Integer& ox,
                                       const AbelianComplex& b, size_t q, const IntVec& y, const Integer& oy,
                                       const AbelianComplex& ab)
{
    IntVec bx = bounding_chain(a, p, scaled(ox, x));
    IntVec by = bounding_chain(b, q, scaled(oy, y));
    Integer k = gcd(ox, oy);
    IntVec first = scaled(oy / k, cross_chain(a, p + 1, bx, b, q, y, ab));
    Integer s = ox / k;
    if (p % 2 == 0)
        s = -s;
    return add(first, scaled(s, cross_chain(a, p, x, b, q + 1, by, ab)));
}

KunnethDecomposition kunneth_summands(const FgAb& ga, const FgAb& gb, size_t n)
{
    const size_t top = n + 1;
    KunnethDecomposition k{AbelianComplex::of(ga, top), AbelianComplex::of(gb, top), AbelianComplex(IntVec{}, 0), n, {}};
    k.ab = AbelianComplex(concat(k.a.orders(), k.b.orders()), top);
    const Homology& hn = k.ab.homology(n);
    for (size_t p = 0; p <= n; ++p) {
        const size_t q = n - p;
        const Homology& hp = k.a.homology(p);
        const Homology& hq = k.b.homology(q);
        std::vector<Element> classes;
        for (const auto& x : hp.generators())
            for (const auto& y : hq.generators())
                classes.push_back(hn.class_of(cross_chain(k.a, p, x, k.b, q, y, k.ab)));
        std::string label = "H_" + std::to_string(p) + "(A)(x)H_" + std::to_string(q) + "(B)";
        k.summands.push_back({label, subgroup_generated(hn.group(), classes, label)});
    }
    for (size_t p = 0; p + 1 <= n; ++p) {
        const size_t q = n - 1 - p;
        const Homology& hp = k.a.homology(p);
        const Homology& hq = k.b.homology(q);
        std::vector<Element> classes;
        for (size_t i = 0; i < hp.group().num_gens(); ++i)
            for (size_t j = 0; j < hq.group().num_gens(); ++j) {
                Integer oi = hp.group().gen_order(i), oj = hq.group().gen_order(j);
                if (oi.is_zero() || oj.is_zero())
                    continue;
                classes.push_back(hn.class_of(KunnethDecomposition::tor_cycle(
                    k.a, p, hp.generators()[i], oi, k.b, q, hq.generators()[j], oj, k.ab)));
            }
        std::string label = "Tor(H_" + std::to_string(p) + "(A),H_" + std::to_string(q) + "(B))";
        k.summands.push_back({label, subgroup_generated(hn.group(), classes, label)});
    }
    return k;
}

// ---------------------------------------------------------------------------

namespace {

IntMat block_matrix(size_t k, bool top_left, bool top_right, bool bottom_left, bool bottom_right)
{
    IntMat m(2 * k, 2 * k);
    for (size_t i = 0; i < k; ++i) {
        if (top_left)
            m(i, i) = 1;
        if (top_right)
            m(i, k + i) = 1;
        if (bottom_left)
            m(k + i, i) = 1;
        if (bottom_right)
            m(k + i, k + i) = 1;
    }
    return m;
}

} // namespace

Pontryagin::Pontryagin(const FgAb& a, size_t max_degree)
    : a_(AbelianComplex::of(a, max_degree + 1)),
      aa_(concat(a_.orders(), a_.orders()), max_degree + 1)
{
    const size_t k = a_.num_factors();
    IntMat mu(k, 2 * k);
    for (size_t i = 0; i < k; ++i) {
        mu(i, i) = 1;
        mu(i, k + i) = 1;
    }
    mu_ = lift_chain_map(aa_, a_, mu, max_degree);
}

Element Pontryagin::product(size_t p, const Element& x, size_t q, const Element& y) const
{
    if (p + q > mu_.top())
        throw std::out_of_range("Pontryagin product above the lifted degree");
    IntVec cx = a_.homology(p).representative(x), cy = a_.homology(q).representative(y);
    IntVec z = cross_chain(a_, p, cx, a_, q, cy, aa_);
    return a_.homology(p + q).class_of(mu_.apply(p + q, z));
}

SubgroupEmbedding Pontryagin::image(size_t p, size_t q) const
{
    const FgAb& hp = a_.homology(p).group();
    const FgAb& hq = a_.homology(q).group();
    std::vector<Element> out;
    for (size_t i = 0; i < hp.num_gens(); ++i)
        for (size_t j = 0; j < hq.num_gens(); ++j)
            out.push_back(product(p, hp.gen(i), q, hq.gen(j)));
    return subgroup_generated(a_.homology(p + q).group(), out, "mu_*(H_" + std::to_string(p) + " x H_" +
                                                                   std::to_string(q) + ")");
}

TorSummand tor_summand_selfmap(const FgAb& ga)
{
    if (!ga.is_finite())
        throw std::domain_error("Tor summand self-map needs a finite group");
    AbelianComplex a = AbelianComplex::of(ga, 4);
    AbelianComplex aa(concat(a.orders(), a.orders()), 4);
    const size_t k = a.num_factors();
    const Homology& h3 = aa.homology(3);

    std::vector<Element> cross;
    for (size_t p = 0; p <= 3; ++p)
        for (const auto& x : a.homology(p).generators())
            for (const auto& y : a.homology(3 - p).generators())
                cross.push_back(h3.class_of(cross_chain(a, p, x, a, 3 - p, y, aa)));
    auto xsub = subgroup_generated(h3.group(), cross, "cross products");
    auto [quot, q] = quotient(xsub, "H_3(AxA)/cross");

    std::vector<IntVec> rels;
    std::vector<Element> lifts;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            IntVec r(k * k);
            r[i * k + j] = gcd(a.orders()[i], a.orders()[j]);
            rels.push_back(std::move(r));
            Cell ci(k), cj(k);
            ci[i] = 1;
            cj[j] = 1;
            IntVec xi(a.cells(1).size()), xj(a.cells(1).size());
            xi[a.cell_index(ci)] = 1;
            xj[a.cell_index(cj)] = 1;
            lifts.push_back(
                h3.class_of(KunnethDecomposition::tor_cycle(a, 1, xi, a.orders()[i], a, 1, xj, a.orders()[j], aa)));
        }
    Presentation tor = present(k * k, rels, "Tor(A,A)");
    FgAbHom section = tor.map_to(h3.group(), lifts);
    FgAbHom zeta = compose(q, section);
    if (!zeta.is_iso())
        throw std::logic_error("Tor lifts do not map isomorphically onto H_3(AxA)/cross products");
    FgAbHom back = inverse(zeta);

    auto restricted = [&](const IntMat& m) {
        FgAbHom f = induced_map(aa, aa, m, 3);
        return compose(back, compose(q, compose(f, section)));
    };
    TorSummand out;
    out.tor = tor.group;
    out.selfmap = restricted(block_matrix(k, true, true, true, true));
    out.swap = restricted(block_matrix(k, false, true, true, false));
    out.h3 = h3.group();
    out.cross_quotient = quot;
    return out;
}

} // namespace h3
