#include "h3/barres.hpp"

#include <algorithm>
#include <sstream>

namespace h3 {

void add_term(BarChain& c, BarTuple t, const Integer& coeff)
{
    if (coeff.is_zero())
        return;
    auto [it, inserted] = c.try_emplace(std::move(t), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero())
            c.erase(it);
    }
}

BarChain operator+(const BarChain& a, const BarChain& b)
{
    BarChain out = a;
    for (const auto& [t, c] : b)
        add_term(out, t, c);
    return out;
}

BarChain operator*(const Integer& k, const BarChain& a)
{
    BarChain out;
    if (k.is_zero())
        return out;
    for (const auto& [t, c] : a)
        out.emplace(t, k * c);
    return out;
}

std::string to_string(const BarChain& c, const FiniteGroup& g)
{
    if (c.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, k] : c) {
        if (k.sign() < 0)
            os << (first ? "-" : " - ");
        else if (!first)
            os << " + ";
        Integer a = k.sign() < 0 ? -k : k;
        if (!a.is_one())
            os << a.str();
        os << "[";
        for (size_t i = 0; i < t.size(); ++i)
            os << (i ? "|" : "") << g.label(t[i]);
        os << "]";
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

BarComplex::BarComplex(FiniteGroup g, size_t top) : g_(std::move(g)), top_(top)
{
    digit_.assign(g_.order(), UINT32_MAX);
    for (Elt x = 0; x < g_.order(); ++x)
        if (x != g_.identity()) {
            digit_[x] = static_cast<uint32_t>(element_.size());
            element_.push_back(x);
        }
    for (size_t n = 0; n <= top_; ++n)
        intlin::check_dimension(rank(n), 1, "bar complex");
}

size_t BarComplex::rank(size_t n) const
{
    size_t r = 1;
    for (size_t i = 0; i < n; ++i)
        r *= element_.size();
    return r;
}

size_t BarComplex::index(const BarTuple& t) const
{
    size_t k = 0;
    for (Elt x : t) {
        if (x >= g_.order() || x == g_.identity())
            throw std::invalid_argument("bar tuple entry is not a non-identity element");
        k = k * element_.size() + digit_[x];
    }
    return k;
}

BarTuple BarComplex::tuple(size_t n, size_t k) const
{
    BarTuple t(n);
    for (size_t i = n; i-- > 0;) {
        t[i] = element_[k % element_.size()];
        k /= element_.size();
    }
    return t;
}

BarChain BarComplex::boundary(const BarTuple& t) const
{
    BarChain out;
    const size_t n = t.size();
    if (n <= 1)
        return out;
    add_term(out, BarTuple(t.begin() + 1, t.end()), 1);
    for (size_t i = 1; i < n; ++i) {
        Elt p = g_.mul(t[i - 1], t[i]);
        if (p == g_.identity())
            continue;
        BarTuple f;
        f.reserve(n - 1);
        f.insert(f.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i - 1));
        f.push_back(p);
        f.insert(f.end(), t.begin() + static_cast<std::ptrdiff_t>(i + 1), t.end());
        add_term(out, std::move(f), i % 2 ? -1 : 1);
    }
    add_term(out, BarTuple(t.begin(), t.end() - 1), n % 2 ? -1 : 1);
    return out;
}

BarChain BarComplex::boundary(const BarChain& x) const
{
    BarChain out;
    for (const auto& [t, c] : x)
        for (const auto& [s, k] : boundary(t))
            add_term(out, s, c * k);
    return out;
}

intlin::SparseColumn BarComplex::boundary_column(size_t n, size_t k) const
{
    intlin::SparseColumn col;
    for (const auto& [s, c] : boundary(tuple(n, k)))
        col.push_back({static_cast<uint32_t>(index(s)), c});
    return col;
}

SparseMat BarComplex::boundary_matrix(size_t n) const
{
    if (n == 0)
        return SparseMat(0, 1);
    const size_t cols = rank(n);
    SparseMat d(rank(n - 1), cols);
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(cols);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < total; ++j)
        d.set_column(static_cast<size_t>(j), boundary_column(n, static_cast<size_t>(j)));
    return d;
}

SparseMat BarComplex::boundary_matrix_serial(size_t n) const
{
    if (n == 0)
        return SparseMat(0, 1);
    const size_t m = element_.size();
    std::vector<std::tuple<size_t, size_t, Integer>> triplets;
    std::vector<uint32_t> digits(n, 0);
    for (size_t col = 0; col < rank(n); ++col) {
        if (n >= 2) {
            auto row_of = [&](size_t skip_from, size_t skip_to, std::optional<uint32_t> merged) {
                size_t r = 0;
                for (size_t i = 0; i < n; ++i) {
                    if (i >= skip_from && i <= skip_to) {
                        if (i == skip_from && merged)
                            r = r * m + *merged;
                        continue;
                    }
                    r = r * m + digits[i];
                }
                return r;
            };
            triplets.emplace_back(row_of(0, 0, std::nullopt), col, Integer(1));
            for (size_t i = 1; i < n; ++i) {
                Elt p = g_.mul(element_[digits[i - 1]], element_[digits[i]]);
                if (p != g_.identity())
                    triplets.emplace_back(row_of(i - 1, i, digit_[p]), col, Integer(i % 2 ? -1 : 1));
            }
            triplets.emplace_back(row_of(n - 1, n - 1, std::nullopt), col, Integer(n % 2 ? -1 : 1));
        }
        for (size_t i = n; i-- > 0;) {
            if (++digits[i] < m)
                break;
            digits[i] = 0;
        }
    }
    return SparseMat::from_triplets(rank(n - 1), rank(n), triplets);
}

ChainComplex BarComplex::complex() const
{
    std::vector<size_t> ranks;
    std::vector<SparseMat> ds{SparseMat()};
    for (size_t n = 0; n <= top_; ++n)
        ranks.push_back(rank(n));
    for (size_t n = 1; n <= top_; ++n)
        ds.push_back(boundary_matrix(n));
    return ChainComplex(std::move(ranks), std::move(ds));
}

IntVec BarComplex::to_vector(const BarChain& x, size_t n) const
{
    IntVec v(rank(n));
    for (const auto& [t, c] : x) {
        if (t.size() != n)
            throw std::invalid_argument("bar chain has a tuple of the wrong degree");
        v[index(t)] += c;
    }
    return v;
}

BarChain BarComplex::to_chain(const IntVec& v, size_t n) const
{
    BarChain out;
    for (size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero())
            out.emplace(tuple(n, k), v[k]);
    return out;
}

// ---------------------------------------------------------------------------

GroupHomology::GroupHomology(FiniteGroup g, const BarOptions& opts)
{
    if (g.order() > opts.max_order)
        throw intlin::ResourceLimitError("bar homology: |G| = " + std::to_string(g.order()) + " exceeds the cap " +
                                         std::to_string(opts.max_order));
    const std::string name = g.name().empty() ? "G" : g.name();
    complex_ = std::make_shared<const BarComplex>(std::move(g), opts.max_degree + 1);
    SparseMat dn = complex_->boundary_matrix(0);
    for (size_t n = 0; n <= opts.max_degree; ++n) {
        SparseMat next = complex_->boundary_matrix(n + 1);
        h_.emplace_back(std::move(dn), next, n, "H_" + std::to_string(n) + "(" + name + ")");
        dn = std::move(next);
    }
}

bool GroupHomology::is_cycle(size_t n, const BarChain& z) const
{
    return h_.at(n).is_cycle(complex_->to_vector(z, n));
}

Element GroupHomology::class_of(size_t n, const BarChain& z) const
{
    return h_.at(n).class_of(complex_->to_vector(z, n));
}

BarChain GroupHomology::representative(size_t n, const Element& x) const
{
    return complex_->to_chain(h_.at(n).representative(x), n);
}

std::vector<BarChain> GroupHomology::generators(size_t n) const
{
    std::vector<BarChain> out;
    for (const auto& v : h_.at(n).generators())
        out.push_back(complex_->to_chain(v, n));
    return out;
}

std::optional<Element> GroupHomology::membership(size_t n, const BarChain& z, const SubgroupEmbedding& s) const
{
    return s.preimage(class_of(n, z));
}

std::optional<BarChain> GroupHomology::bounding_chain(size_t n, const BarChain& z) const
{
    IntMat d = complex_->boundary_matrix(n + 1).to_dense();
    auto sol = intlin::solve(d, complex_->to_vector(z, n));
    if (!sol)
        return std::nullopt;
    return complex_->to_chain(*sol, n + 1);
}

// ---------------------------------------------------------------------------

BarChain push_forward(const GroupHom& f, const BarChain& x)
{
    BarChain out;
    const Elt e = f.cod().identity();
    for (const auto& [t, c] : x) {
        BarTuple s(t.size());
        bool degenerate = false;
        for (size_t i = 0; i < t.size() && !degenerate; ++i) {
            s[i] = f(t[i]);
            degenerate = s[i] == e;
        }
        if (!degenerate)
            add_term(out, std::move(s), c);
    }
    return out;
}

FgAbHom induced(const GroupHomology& src, const GroupHomology& tgt, const GroupHom& f, size_t n)
{
    if (!(f.dom() == src.group()) || !(f.cod() == tgt.group()))
        throw std::invalid_argument("induced: homomorphism does not match the homology groups");
    std::vector<Element> images;
    for (const auto& z : src.generators(n))
        images.push_back(tgt.class_of(n, push_forward(f, z)));
    return FgAbHom::from_images(src.H(n), tgt.H(n), images);
}

BarChain shuffle(const BarChain& x, const std::function<Elt(Elt)>& fx, const BarChain& y,
                 const std::function<Elt(Elt)>& fy, const FiniteGroup& target)
{
    BarChain out;
    if (x.empty() || y.empty())
        return out;
    const size_t p = x.begin()->first.size(), q = y.begin()->first.size();
    // positions of the x entries, enumerated as increasing p-subsets of 0..p+q-1
    std::vector<std::pair<std::vector<bool>, int>> shuffles;
    std::vector<bool> mask(p + q, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(p), true);
    std::sort(mask.begin(), mask.end());
    do {
        size_t inversions = 0, seen_y = 0;
        for (bool from_x : mask) {
            if (from_x)
                inversions += seen_y;
            else
                ++seen_y;
        }
        shuffles.emplace_back(mask, inversions % 2 ? -1 : 1);
    } while (std::next_permutation(mask.begin(), mask.end()));

    const Elt e = target.identity();
    for (const auto& [tx, cx] : x)
        for (const auto& [ty, cy] : y) {
            Integer c = cx * cy;
            for (const auto& [m, sign] : shuffles) {
                BarTuple t(p + q);
                size_t i = 0, j = 0;
                bool degenerate = false;
                for (size_t k = 0; k < p + q && !degenerate; ++k) {
                    t[k] = m[k] ? fx(tx[i++]) : fy(ty[j++]);
                    degenerate = t[k] == e;
                }
                if (!degenerate)
                    add_term(out, std::move(t), sign * c);
            }
        }
    return out;
}

BarChain cross_product(const FiniteGroup& a, const BarChain& x, const FiniteGroup& g, const BarChain& y,
                       const FiniteGroup& ag)
{
    if (ag.order() != a.order() * g.order())
        throw std::invalid_argument("cross product: target is not A x G");
    const Elt n = static_cast<Elt>(g.order());
    return shuffle(
        x, [&](Elt u) { return u * n + g.identity(); }, y, [&](Elt v) { return a.identity() * n + v; }, ag);
}

BarChain rho_cross(const GroupHom& incl, const BarChain& x, const BarChain& y)
{
    const FiniteGroup& g = incl.cod();
    return shuffle(
        x, [&](Elt u) { return incl(u); }, y, [](Elt v) { return v; }, g);
}

std::vector<Elt> h1_generator_elements(const GroupHomology& h)
{
    const FiniteGroup& g = h.group();
    std::vector<Elt> out;
    for (const auto& z : h.generators(1)) {
        Elt x = g.identity();
        for (const auto& [t, c] : z) {
            const int64_t o = static_cast<int64_t>(g.element_order(t[0]));
            int64_t k = (c % Integer(o)).to_int64();
            for (k = (k % o + o) % o; k > 0; --k)
                x = g.mul(x, t[0]);
        }
        out.push_back(x);
    }
    return out;
}

SubgroupEmbedding rho_image(const GroupHomology& g, const GroupHom& incl, const GroupHomology& a)
{
    if (!(incl.cod() == g.group()) || !(incl.dom() == a.group()))
        throw std::invalid_argument("rho_image: inclusion does not match the homology groups");
    if (!g.group().is_central(incl.values()))
        throw NotCentral("rho_image: A is not central in G");
    std::vector<Element> gens;
    for (Elt u : h1_generator_elements(a))
        for (const auto& h : g.generators(2))
            gens.push_back(g.class_of(3, rho_cross(incl, BarChain{{{u}, 1}}, h)));
    return subgroup_generated(g.H(3), gens, "rho_*(A(x)H_2(G))");
}

} // namespace h3
