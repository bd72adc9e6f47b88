#include "h3/chain.hpp"

namespace h3 {

using intlin::SparseColumn;

ChainComplex::ChainComplex(std::vector<size_t> ranks, std::vector<SparseMat> boundaries)
    : ranks_(std::move(ranks)), d_(std::move(boundaries))
{
    if (ranks_.empty())
        ranks_.push_back(0);
    d_.resize(ranks_.size());
    d_[0] = SparseMat(0, ranks_[0]);
    for (size_t n = 1; n < ranks_.size(); ++n) {
        if (d_[n].rows() == 0 && d_[n].cols() == 0)
            d_[n] = SparseMat(ranks_[n - 1], ranks_[n]);
        if (d_[n].rows() != ranks_[n - 1] || d_[n].cols() != ranks_[n])
            throw std::invalid_argument("chain complex: boundary " + std::to_string(n) + " has shape " +
                                        std::to_string(d_[n].rows()) + "x" + std::to_string(d_[n].cols()));
    }
}

SparseMat ChainComplex::boundary(size_t n) const
{
    if (n == 0)
        return SparseMat(0, rank(0));
    if (n < ranks_.size())
        return d_[n];
    return SparseMat(rank(n - 1), 0);
}

IntVec ChainComplex::d(size_t n, const IntVec& x) const
{
    if (n == 0 || n >= ranks_.size())
        return IntVec(n == 0 ? 0 : rank(n - 1));
    return d_[n].multiply(x);
}

bool ChainComplex::d_squared_zero() const
{
    for (size_t n = 2; n < ranks_.size(); ++n)
        for (size_t j = 0; j < ranks_[n]; ++j) {
            IntVec col(ranks_[n - 1]);
            for (const auto& e : d_[n].column(j))
                col[e.row] = e.value;
            for (const auto& v : d_[n - 1].multiply(col))
                if (!v.is_zero())
                    return false;
        }
    return true;
}

TensorIndex::TensorIndex(const std::vector<size_t>& ra, const std::vector<size_t>& rb, size_t top)
    : ra_(ra), rb_(rb), offsets_(top + 1)
{
    for (size_t n = 0; n <= top; ++n) {
        size_t off = 0;
        for (size_t p = 0; p <= n; ++p) {
            offsets_[n].push_back(off);
            size_t q = n - p;
            size_t a = p < ra_.size() ? ra_[p] : 0, b = q < rb_.size() ? rb_[q] : 0;
            off += a * b;
        }
        offsets_[n].push_back(off);
    }
}

size_t TensorIndex::rank(size_t n) const { return n < offsets_.size() ? offsets_[n].back() : 0; }

size_t TensorIndex::index(size_t p, size_t i, size_t q, size_t j) const
{
    size_t b = q < rb_.size() ? rb_[q] : 0;
    return offsets_[p + q][p] + i * b + j;
}

std::tuple<size_t, size_t, size_t, size_t> TensorIndex::decode(size_t n, size_t k) const
{
    const auto& off = offsets_[n];
    size_t p = static_cast<size_t>(std::upper_bound(off.begin(), off.end(), k) - off.begin()) - 1;
    size_t q = n - p;
    size_t b = rb_[q];
    size_t r = k - off[p];
    return {p, r / b, q, r % b};
}

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b, size_t top, TensorIndex* index_out)
{
    TensorIndex idx(a.ranks(), b.ranks(), top);
    std::vector<size_t> ranks(top + 1);
    for (size_t n = 0; n <= top; ++n)
        ranks[n] = idx.rank(n);
    std::vector<SparseMat> ds(top + 1);
    for (size_t n = 1; n <= top; ++n) {
        intlin::check_dimension(ranks[n - 1], ranks[n], "tensor complex");
        SparseMat d(ranks[n - 1], ranks[n]);
        for (size_t p = 0; p <= n; ++p) {
            size_t q = n - p;
            size_t na = a.rank(p), nb = b.rank(q);
            if (na == 0 || nb == 0)
                continue;
            SparseMat da = a.boundary(p), db = b.boundary(q);
            const bool odd = p % 2 == 1;
            for (size_t i = 0; i < na; ++i)
                for (size_t j = 0; j < nb; ++j) {
                    SparseColumn col;
                    if (p > 0)
                        for (const auto& e : da.column(i))
                            col.push_back({static_cast<uint32_t>(idx.index(p - 1, e.row, q, j)), e.value});
                    if (q > 0)
                        for (const auto& e : db.column(j))
                            col.push_back({static_cast<uint32_t>(idx.index(p, i, q - 1, e.row)), odd ? -e.value : e.value});
                    d.set_column(idx.index(p, i, q, j), std::move(col));
                }
        }
        ds[n] = std::move(d);
    }
    if (index_out)
        *index_out = idx;
    return ChainComplex(std::move(ranks), std::move(ds));
}

bool ChainMap::is_chain_map(const ChainComplex& src, const ChainComplex& tgt) const
{
    for (size_t n = 1; n <= top() && n <= src.top() && n <= tgt.top(); ++n)
        for (size_t j = 0; j < src.rank(n); ++j) {
            IntVec e(src.rank(n));
            e[j] = 1;
            if (tgt.d(n, apply(n, e)) != apply(n - 1, src.d(n, e)))
                return false;
        }
    return true;
}

ChainMap tensor(const ChainMap& f, const ChainMap& g, const TensorIndex& src, const TensorIndex& tgt)
{
    size_t top = std::min(src.top(), tgt.top());
    std::vector<SparseMat> maps(top + 1);
    for (size_t n = 0; n <= top; ++n) {
        SparseMat m(tgt.rank(n), src.rank(n));
        for (size_t k = 0; k < src.rank(n); ++k) {
            auto [p, i, q, j] = src.decode(n, k);
            SparseColumn col;
            if (p <= f.top() && q <= g.top())
                for (const auto& ef : f.map(p).column(i))
                    for (const auto& eg : g.map(q).column(j))
                        col.push_back({static_cast<uint32_t>(tgt.index(p, ef.row, q, eg.row)), ef.value * eg.value});
            m.set_column(k, std::move(col));
        }
        maps[n] = std::move(m);
    }
    return ChainMap(std::move(maps));
}

// ---------------------------------------------------------------------------

Homology::Homology(const ChainComplex& c, size_t n, std::string name, const intlin::EliminationOptions& opts)
    : n_(n), dn_(c.boundary(n))
{
    group_ = FgAb({}, 0, std::move(name));
    build(c.boundary(n + 1), opts);
}

Homology::Homology(SparseMat d_n, const SparseMat& d_next, size_t n, std::string name,
                   const intlin::EliminationOptions& opts)
    : n_(n), dn_(std::move(d_n))
{
    if (d_next.rows() != dn_.cols())
        throw std::invalid_argument("homology: boundary shapes do not compose");
    group_ = FgAb({}, 0, std::move(name));
    build(d_next, opts);
}

void Homology::build(const SparseMat& d_next, const intlin::EliminationOptions& opts)
{
    ck_ = intlin::cokernel(d_next, opts);
    const size_t t = ck_.torsion().size();
    const size_t f = ck_.free_rank();
    const size_t m = dn_.cols();

    std::vector<IntVec> w(f);
    IntMat dw(dn_.rows(), f);
    for (size_t k = 0; k < f; ++k) {
        w[k] = ck_.generator(t + k);
        IntVec col = dn_.multiply(w[k]);
        for (size_t i = 0; i < col.size(); ++i)
            dw(i, k) = col[i];
    }
    IntMat kb = dw.rows() == 0 ? IntMat::identity(f) : intlin::kernel_basis(dw);
    const size_t r = kb.cols();

    auto s = intlin::snf(kb);
    // kb = U^{-1} S V^{-1} with S = [I; 0], so V [I 0] U is a left inverse.
    IntMat proj(r, kb.rows());
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < kb.rows(); ++j)
            proj(i, j) = s.U(i, j);
    left_inverse_ = s.V * proj;
    for (size_t i = 0; i < r; ++i)
        if (!s.S(i, i).is_one())
            throw std::logic_error("homology: cycle lattice is not saturated");

    gens_.clear();
    for (size_t k = 0; k < t; ++k)
        gens_.push_back(ck_.generator(k));
    for (size_t k = 0; k < r; ++k) {
        IntVec z(m);
        for (size_t l = 0; l < f; ++l)
            if (!kb(l, k).is_zero())
                for (size_t i = 0; i < m; ++i)
                    if (!w[l][i].is_zero())
                        z[i].add_mul(kb(l, k), w[l][i]);
        gens_.push_back(std::move(z));
    }
    group_ = FgAb(ck_.torsion(), r, group_.name());
}

bool Homology::is_cycle(const IntVec& z) const
{
    if (z.size() != dn_.cols())
        return false;
    for (const auto& v : dn_.multiply(z))
        if (!v.is_zero())
            return false;
    return true;
}

bool Homology::is_boundary(const IntVec& z) const { return z.size() == dn_.cols() && ck_.in_image(z); }

Element Homology::class_of(const IntVec& cycle) const
{
    if (!is_cycle(cycle))
        throw NotACycle("homology: vector of length " + std::to_string(cycle.size()) + " is not a cycle in degree " +
                        std::to_string(n_));
    IntVec c = ck_.coordinates(cycle);
    const size_t t = ck_.torsion().size();
    IntVec out(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(t));
    IntVec y(c.begin() + static_cast<std::ptrdiff_t>(t), c.end());
    if (left_inverse_.rows() > 0) {
        IntVec u = left_inverse_ * y;
        out.insert(out.end(), u.begin(), u.end());
    }
    return group_.element(std::move(out));
}

IntVec Homology::representative(const Element& x) const
{
    if (!(x.parent() == group_))
        throw ParentMismatch("homology: element of " + x.parent().str() + " is not in " + group_.str());
    IntVec z(dn_.cols());
    for (size_t k = 0; k < gens_.size(); ++k)
        if (!x.coords()[k].is_zero())
            for (size_t i = 0; i < z.size(); ++i)
                if (!gens_[k][i].is_zero())
                    z[i].add_mul(x.coords()[k], gens_[k][i]);
    return z;
}

FgAbHom induced_map(const Homology& src, const Homology& tgt, const std::function<IntVec(const IntVec&)>& chain_map)
{
    std::vector<Element> images;
    for (const auto& g : src.generators())
        images.push_back(tgt.class_of(chain_map(g)));
    return FgAbHom::from_images(src.group(), tgt.group(), images);
}

FgAbHom induced_map(const ChainMap& f, const Homology& src, const Homology& tgt)
{
    size_t n = src.degree();
    return induced_map(src, tgt, [&](const IntVec& z) { return f.apply(n, z); });
}

} // namespace h3
