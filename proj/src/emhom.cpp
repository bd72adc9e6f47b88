#include "h3/emhom.hpp"

#include <map>

#include "h3/barres.hpp"
#include "h3/group.hpp"

namespace h3 {

Dga::Dga(std::vector<size_t> ranks, std::vector<SparseMat> d, Product product)
    : ranks_(std::move(ranks)), d_(std::move(d)), product_(std::move(product))
{
    if (ranks_.empty() || ranks_[0] != 1)
        throw std::invalid_argument("dga: degree 0 must be spanned by the unit");
    if (d_.size() != ranks_.size())
        throw std::invalid_argument("dga: one differential per degree expected");
    d_[0] = SparseMat(0, 1);
    for (size_t n = 1; n < ranks_.size(); ++n)
        if (d_[n].rows() != ranks_[n - 1] || d_[n].cols() != ranks_[n])
            throw std::invalid_argument("dga: differential of degree " + std::to_string(n) + " has the wrong shape");
}

intlin::SparseColumn Dga::product(size_t p, size_t i, size_t q, size_t j) const
{
    if (p + q > top())
        throw std::out_of_range("dga: product beyond the truncation degree");
    if (p == 0)
        return {{static_cast<uint32_t>(j), Integer(1)}};
    if (q == 0)
        return {{static_cast<uint32_t>(i), Integer(1)}};
    return product_(p, i, q, j);
}

ChainComplex Dga::complex() const { return ChainComplex(ranks_, d_); }

FgAb Dga::homology(size_t n) const
{
    if (n >= top())
        throw std::out_of_range("dga: homology needs the next degree");
    return Homology(d_[n], d_[n + 1], n).group();
}

bool Dga::d_squared_zero() const { return complex().d_squared_zero(); }

namespace {

using Column = std::map<uint32_t, Integer>;

void add(Column& c, const intlin::SparseColumn& v, const Integer& k)
{
    for (const auto& e : v) {
        auto& x = c[e.row];
        x.add_mul(k, e.value);
    }
}

bool equal(const Column& a, const Column& b)
{
    auto strip = [](const Column& c) {
        Column out;
        for (const auto& [r, v] : c)
            if (!v.is_zero())
                out.emplace(r, v);
        return out;
    };
    return strip(a) == strip(b);
}

} // namespace

bool Dga::leibniz(size_t bound) const
{
    bound = std::min(bound, top());
    for (size_t p = 1; p <= bound; ++p)
        for (size_t q = 1; p + q <= bound; ++q)
            for (size_t i = 0; i < rank(p); ++i)
                for (size_t j = 0; j < rank(q); ++j) {
                    Column lhs, rhs;
                    for (const auto& e : product(p, i, q, j))
                        add(lhs, d_[p + q].column(e.row), e.value);
                    for (const auto& e : d_[p].column(i))
                        add(rhs, product(p - 1, e.row, q, j), e.value);
                    for (const auto& e : d_[q].column(j))
                        add(rhs, product(p, i, q - 1, e.row), p % 2 ? -e.value : e.value);
                    if (!equal(lhs, rhs))
                        return false;
                }
    return true;
}

bool Dga::associative(size_t bound) const
{
    bound = std::min(bound, top());
    for (size_t p = 1; p <= bound; ++p)
        for (size_t q = 1; p + q <= bound; ++q)
            for (size_t r = 1; p + q + r <= bound; ++r)
                for (size_t i = 0; i < rank(p); ++i)
                    for (size_t j = 0; j < rank(q); ++j)
                        for (size_t k = 0; k < rank(r); ++k) {
                            Column left, right;
                            for (const auto& e : product(p, i, q, j))
                                add(left, product(p + q, e.row, r, k), e.value);
                            for (const auto& e : product(q, j, r, k))
                                add(right, product(p, i, q + r, e.row), e.value);
                            if (!equal(left, right))
                                return false;
                        }
    return true;
}

bool Dga::commutative(size_t bound) const
{
    bound = std::min(bound, top());
    for (size_t p = 1; p <= bound; ++p)
        for (size_t q = 1; p + q <= bound; ++q)
            for (size_t i = 0; i < rank(p); ++i)
                for (size_t j = 0; j < rank(q); ++j) {
                    Column a, b;
                    add(a, product(p, i, q, j), 1);
                    add(b, product(q, j, p, i), (p * q) % 2 ? -1 : 1);
                    if (!equal(a, b))
                        return false;
                }
    return true;
}

// ---------------------------------------------------------------------------

Dga bar_of_group_ring(const FgAb& a, size_t top)
{
    if (!a.is_finite())
        throw std::domain_error("bar of the group ring needs a finite group");
    auto bc = std::make_shared<const BarComplex>(FiniteGroup::abelian(a.torsion()), top);
    std::vector<size_t> ranks;
    std::vector<SparseMat> ds;
    for (size_t n = 0; n <= top; ++n) {
        ranks.push_back(bc->rank(n));
        ds.push_back(bc->boundary_matrix(n));
    }
    auto product = [bc](size_t p, size_t i, size_t q, size_t j) {
        const FiniteGroup& g = bc->group();
        auto id = [](Elt x) { return x; };
        BarChain s = shuffle(BarChain{{bc->tuple(p, i), 1}}, id, BarChain{{bc->tuple(q, j), 1}}, id, g);
        intlin::SparseColumn col;
        for (const auto& [t, c] : s)
            col.push_back({static_cast<uint32_t>(bc->index(t)), c});
        return intlin::normalize_column(std::move(col));
    };
    return Dga(std::move(ranks), std::move(ds), product);
}

namespace {

struct Letter {
    uint32_t deg, idx;
    auto operator<=>(const Letter&) const = default;
};
using Word = std::vector<Letter>;

struct WordBasis {
    std::vector<std::vector<Word>> words;
    std::vector<std::map<Word, uint32_t>> index;

    uint32_t at(size_t n, const Word& w) const { return index[n].at(w); }
};

} // namespace

Dga bar_construction(const Dga& c, size_t top)
{
    if (c.top() + 1 < top)
        throw std::invalid_argument("bar construction: the algebra is truncated too low");
    auto basis = std::make_shared<WordBasis>();
    basis->words.resize(top + 1);
    basis->index.resize(top + 1);
    basis->words[0].push_back({});
    for (size_t n = 1; n <= top; ++n)
        for (uint32_t e = 1; e + 1 <= n; ++e)
            for (uint32_t i = 0; i < c.rank(e); ++i)
                for (const Word& rest : basis->words[n - e - 1]) {
                    Word w{{e, i}};
                    w.insert(w.end(), rest.begin(), rest.end());
                    basis->words[n].push_back(std::move(w));
                }
    for (size_t n = 0; n <= top; ++n) {
        intlin::check_dimension(basis->words[n].size(), 1, "bar construction");
        for (uint32_t k = 0; k < basis->words[n].size(); ++k)
            basis->index[n].emplace(basis->words[n][k], k);
    }

    std::vector<size_t> ranks;
    std::vector<SparseMat> ds;
    for (size_t n = 0; n <= top; ++n) {
        ranks.push_back(basis->words[n].size());
        if (n == 0) {
            ds.emplace_back(0, 1);
            continue;
        }
        SparseMat d(ranks[n - 1], ranks[n]);
        for (size_t k = 0; k < ranks[n]; ++k) {
            const Word& w = basis->words[n][k];
            intlin::SparseColumn col;
            size_t eps = 0;
            for (size_t i = 0; i < w.size(); ++i) {
                // internal differential of the i-th letter
                if (w[i].deg >= 2)
                    for (const auto& e : c.d(w[i].deg).column(w[i].idx)) {
                        Word v = w;
                        v[i] = {w[i].deg - 1, e.row};
                        col.push_back({basis->at(n - 1, v), (eps + 1) % 2 ? -e.value : e.value});
                    }
                // product of letters i-1 and i
                if (i > 0) {
                    const uint32_t deg = w[i - 1].deg + w[i].deg;
                    for (const auto& e : c.product(w[i - 1].deg, w[i - 1].idx, w[i].deg, w[i].idx)) {
                        Word v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i - 1));
                        v.push_back({deg, e.row});
                        v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 1), w.end());
                        col.push_back({basis->at(n - 1, v), eps % 2 ? -e.value : e.value});
                    }
                }
                eps += w[i].deg + 1;
            }
            d.set_column(k, std::move(col));
        }
        ds.push_back(std::move(d));
    }

    auto product = [basis](size_t p, size_t i, size_t q, size_t j) {
        const Word& u = basis->words[p][i];
        const Word& v = basis->words[q][j];
        const size_t k = u.size(), l = v.size();
        intlin::SparseColumn col;
        std::vector<bool> mask(k + l, false);
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
        std::sort(mask.begin(), mask.end());
        do {
            Word w;
            size_t a = 0, b = 0, sign = 0, passed = 0;
            for (bool from_u : mask) {
                if (from_u) {
                    sign += (u[a].deg + 1) * passed;
                    w.push_back(u[a++]);
                } else {
                    passed += v[b].deg + 1;
                    w.push_back(v[b++]);
                }
            }
            col.push_back({basis->at(p + q, w), Integer(sign % 2 ? -1 : 1)});
        } while (std::next_permutation(mask.begin(), mask.end()));
        return intlin::normalize_column(std::move(col));
    };
    return Dga(std::move(ranks), std::move(ds), product);
}

namespace {

void check_order(const FgAb& a, size_t cap)
{
    if (!a.is_finite())
        throw std::domain_error("K(A,n) homology needs a finite group");
    if (a.order() > Integer(static_cast<long long>(cap)))
        throw intlin::ResourceLimitError("K(A,n) homology: |A| = " + a.order().str() + " exceeds the cap " +
                                         std::to_string(cap));
}

std::vector<FgAb> homology_up_to(const Dga& b, size_t n_max, const std::string& label)
{
    std::vector<FgAb> out;
    for (size_t n = 0; n <= n_max; ++n)
        out.push_back(b.homology(n).named("H_" + std::to_string(n) + "(" + label + ")"));
    return out;
}

} // namespace

std::vector<FgAb> homology_k_a_2(const FgAb& a, const EmOptions& opts)
{
    check_order(a, opts.max_order);
    Dga b = bar_construction(bar_of_group_ring(a, 4), 5);
    return homology_up_to(b, 4, "K(A,2)");
}

FgAb h_of_k_a_2(const FgAb& a, size_t n, const EmOptions& opts)
{
    if (n > 4)
        throw std::out_of_range("K(A,2) homology is computed up to degree 4");
    return homology_k_a_2(a, opts).at(n);
}

std::vector<FgAb> homology_k_a_3(const FgAb& a)
{
    check_order(a, 4);
    Dga b2 = bar_construction(bar_of_group_ring(a, 4), 5);
    Dga b3 = bar_construction(b2, 6);
    return homology_up_to(b3, 5, "K(A,3)");
}

} // namespace h3
