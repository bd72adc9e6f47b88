#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cokernel_builder.hpp"

namespace h3::intlin {

namespace {

const Integer* find_entry(const SparseColumn& col, uint32_t row)
{
    auto it = std::lower_bound(col.begin(), col.end(), row,
                               [](const SparseEntry& e, uint32_t r) { return e.row < r; });
    return it != col.end() && it->row == row ? &it->value : nullptr;
}

// dst <- alpha*dst + beta*src; rows new to dst are appended to fill.
SparseColumn combine(const SparseColumn& dst, const Integer& alpha, const SparseColumn& src, const Integer& beta,
                     std::vector<uint32_t>* fill)
{
    SparseColumn out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, k = 0;
    while (i < dst.size() || k < src.size()) {
        if (k == src.size() || (i < dst.size() && dst[i].row < src[k].row)) {
            Integer v = dst[i].value;
            if (!alpha.is_one())
                v *= alpha;
            if (!v.is_zero())
                out.push_back({dst[i].row, std::move(v)});
            ++i;
        } else if (i == dst.size() || src[k].row < dst[i].row) {
            out.push_back({src[k].row, beta * src[k].value});
            if (fill)
                fill->push_back(src[k].row);
            ++k;
        } else {
            Integer v = dst[i].value;
            if (!alpha.is_one())
                v *= alpha;
            v.add_mul(beta, src[k].value);
            if (!v.is_zero())
                out.push_back({dst[i].row, std::move(v)});
            ++i;
            ++k;
        }
    }
    return out;
}

class Eliminator {
public:
    Eliminator(const SparseMat& m, const EliminationOptions& opts)
        : opts_(opts), m_(m.rows()), n_(m.cols()), cols_(n_), alive_(n_, 1), row_state_(m_, kActive), row_cols_(m_)
    {
        for (size_t j = 0; j < n_; ++j) {
            cols_[j] = m.column(j);
            nnz_ += cols_[j].size();
            if (cols_[j].empty())
                alive_[j] = 0;
        }
        CokernelBuilder::init(result_, m_);
    }

    Cokernel run()
    {
        check_dimension(m_, n_, "cokernel");
        bool dense = false;
        for (;;) {
            unit_phase();
            if (nnz_ > opts_.fill_limit) {
                dense = true;
                break;
            }
            if (!general_pivot())
                break;
        }
        assemble(dense);
        return std::move(result_);
    }

private:
    enum : uint8_t { kActive, kUnit, kBlock };

    void rebuild_row_index()
    {
        for (auto& r : row_cols_)
            r.clear();
        for (size_t j = 0; j < n_; ++j)
            if (alive_[j])
                for (const auto& e : cols_[j])
                    row_cols_[e.row].push_back(static_cast<uint32_t>(j));
    }

    // Alive columns other than c with a nonzero entry in row r, ascending.
    std::vector<uint32_t> row_targets(uint32_t r, uint32_t c)
    {
        auto& lst = row_cols_[r];
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
        std::vector<uint32_t> out;
        std::vector<uint32_t> keep;
        for (uint32_t j : lst) {
            if (!alive_[j] || !find_entry(cols_[j], r))
                continue;
            keep.push_back(j);
            if (j != c)
                out.push_back(j);
        }
        lst = std::move(keep);
        return out;
    }

    int thread_count() const
    {
#ifdef _OPENMP
        return opts_.threads > 0 ? opts_.threads : omp_get_max_threads();
#else
        return 1;
#endif
    }

    // col_j -= q_j * col_c for every target, where each q_j = b_j / a is exact.
    void eliminate_row(uint32_t r, uint32_t c, const std::vector<uint32_t>& targets)
    {
        const Integer a = *find_entry(cols_[c], r);
        const SparseColumn& src = cols_[c];
        std::vector<SparseColumn> updated(targets.size());
        std::vector<std::vector<uint32_t>> fills(targets.size());
        const long long count = static_cast<long long>(targets.size());
        const bool par = targets.size() >= opts_.parallel_threshold;
        [[maybe_unused]] const int nt = thread_count();
#pragma omp parallel for schedule(dynamic, 8) if (par) num_threads(nt)
        for (long long t = 0; t < count; ++t) {
            uint32_t j = targets[t];
            Integer q = a.is_unit() ? *find_entry(cols_[j], r) * a : *find_entry(cols_[j], r) / a;
            updated[t] = combine(cols_[j], Integer(1), src, -q, &fills[t]);
        }
        for (size_t t = 0; t < targets.size(); ++t) {
            uint32_t j = targets[t];
            nnz_ -= cols_[j].size();
            cols_[j] = std::move(updated[t]);
            nnz_ += cols_[j].size();
            for (uint32_t i : fills[t])
                row_cols_[i].push_back(j);
            if (cols_[j].empty())
                alive_[j] = 0;
        }
    }

    void retire_column(uint32_t c)
    {
        nnz_ -= cols_[c].size();
        SparseColumn().swap(cols_[c]);
        alive_[c] = 0;
    }

    void pivot_unit(uint32_t r, uint32_t c)
    {
        const Integer a = *find_entry(cols_[c], r);
        eliminate_row(r, c, row_targets(r, c));
        AxpyOp op{r, {}};
        for (const auto& e : cols_[c])
            if (e.row != r)
                op.targets.emplace_back(e.row, e.value * a);
        if (!op.targets.empty())
            CokernelBuilder::push_op(result_, std::move(op));
        retire_column(c);
        row_state_[r] = kUnit;
        row_cols_[r].clear();
        CokernelBuilder::add_unit_row(result_, r);
    }

    void unit_phase()
    {
        for (;;) {
            rebuild_row_index();
            std::vector<uint32_t> order;
            for (size_t j = 0; j < n_; ++j)
                if (alive_[j])
                    order.push_back(static_cast<uint32_t>(j));
            std::stable_sort(order.begin(), order.end(),
                             [&](uint32_t x, uint32_t y) { return cols_[x].size() < cols_[y].size(); });
            bool progress = false;
            for (uint32_t c : order) {
                if (!alive_[c])
                    continue;
                uint32_t best = UINT32_MAX;
                size_t best_count = SIZE_MAX;
                for (const auto& e : cols_[c])
                    if (e.value.is_unit() && row_cols_[e.row].size() < best_count) {
                        best = e.row;
                        best_count = row_cols_[e.row].size();
                    }
                if (best == UINT32_MAX)
                    continue;
                check_deadline("cokernel");
                pivot_unit(best, c);
                progress = true;
                if (nnz_ > opts_.fill_limit)
                    return;
            }
            if (!progress)
                return;
        }
    }

    // Row operation on rows (r, i): (row_r, row_i) <- (x row_r + y row_i, u row_r + w row_i).
    void mix_rows(uint32_t r, uint32_t i, const Integer& x, const Integer& y, const Integer& u, const Integer& w)
    {
        std::vector<uint32_t> touched;
        for (uint32_t j : row_cols_[r])
            touched.push_back(j);
        for (uint32_t j : row_cols_[i])
            touched.push_back(j);
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (uint32_t j : touched) {
            if (!alive_[j])
                continue;
            const Integer* pr = find_entry(cols_[j], r);
            const Integer* pi = find_entry(cols_[j], i);
            if (!pr && !pi)
                continue;
            Integer er = pr ? *pr : Integer(0), ei = pi ? *pi : Integer(0);
            Integer nr = x * er, ni = u * er;
            nr.add_mul(y, ei);
            ni.add_mul(w, ei);
            SparseColumn col;
            col.reserve(cols_[j].size() + 2);
            for (const auto& e : cols_[j])
                if (e.row != r && e.row != i)
                    col.push_back(e);
            if (!nr.is_zero())
                col.push_back({r, nr});
            if (!ni.is_zero())
                col.push_back({i, ni});
            nnz_ -= cols_[j].size();
            cols_[j] = normalize_column(std::move(col));
            nnz_ += cols_[j].size();
            if (!nr.is_zero())
                row_cols_[r].push_back(j);
            if (!ni.is_zero())
                row_cols_[i].push_back(j);
            if (cols_[j].empty())
                alive_[j] = 0;
        }
        CokernelBuilder::push_op(result_, MixOp{r, i, x, y, u, w});
    }

    bool general_pivot()
    {
        uint32_t r = UINT32_MAX, c = UINT32_MAX;
        Integer best;
        for (size_t j = 0; j < n_; ++j) {
            if (!alive_[j])
                continue;
            for (const auto& e : cols_[j]) {
                Integer v = abs(e.value);
                if (r == UINT32_MAX || v < best) {
                    best = std::move(v);
                    r = e.row;
                    c = static_cast<uint32_t>(j);
                }
            }
        }
        if (r == UINT32_MAX)
            return false;
        check_deadline("cokernel");
        rebuild_row_index();

        for (;;) {
            // clear row r
            std::vector<uint32_t> targets = row_targets(r, c);
            std::vector<uint32_t> divisible;
            for (uint32_t j : targets) {
                Integer a = *find_entry(cols_[c], r);
                Integer b = *find_entry(cols_[j], r);
                if (divides(a, b)) {
                    divisible.push_back(j);
                    continue;
                }
                auto [g, x, y] = extended_gcd(a, b);
                std::vector<uint32_t> fc, fj;
                SparseColumn nc = combine(cols_[c], x, cols_[j], y, &fc);
                SparseColumn nj = combine(cols_[j], a / g, cols_[c], -(b / g), &fj);
                nnz_ -= cols_[c].size() + cols_[j].size();
                cols_[c] = std::move(nc);
                cols_[j] = std::move(nj);
                nnz_ += cols_[c].size() + cols_[j].size();
                for (uint32_t i : fc)
                    row_cols_[i].push_back(c);
                for (uint32_t i : fj)
                    row_cols_[i].push_back(j);
                if (cols_[j].empty())
                    alive_[j] = 0;
                check_coefficient(g, "cokernel");
            }
            std::vector<uint32_t> live;
            for (uint32_t j : divisible)
                if (alive_[j] && find_entry(cols_[j], r))
                    live.push_back(j);
            eliminate_row(r, c, live);

            // clear column c
            const Integer a = *find_entry(cols_[c], r);
            bool mixed = false;
            for (const auto& e : cols_[c]) {
                if (e.row == r || divides(a, e.value))
                    continue;
                uint32_t i = e.row;
                Integer v = e.value;
                auto [g, x, y] = extended_gcd(a, v);
                mix_rows(r, i, x, y, -(v / g), a / g);
                check_coefficient(g, "cokernel");
                mixed = true;
                break;
            }
            if (mixed)
                continue;
            AxpyOp op{r, {}};
            for (const auto& e : cols_[c])
                if (e.row != r)
                    op.targets.emplace_back(e.row, e.value / a);
            if (!op.targets.empty())
                CokernelBuilder::push_op(result_, std::move(op));
            block_pivots_.emplace_back(r, a);
            retire_column(c);
            row_state_[r] = kBlock;
            row_cols_[r].clear();
            return true;
        }
    }

    void assemble(bool dense)
    {
        std::vector<uint32_t> residual_cols;
        std::vector<uint8_t> in_residual(m_, 0);
        if (dense) {
            for (size_t j = 0; j < n_; ++j)
                if (alive_[j]) {
                    residual_cols.push_back(static_cast<uint32_t>(j));
                    for (const auto& e : cols_[j])
                        in_residual[e.row] = 1;
                }
        }
        std::vector<uint32_t> block_rows;
        for (const auto& [r, a] : block_pivots_)
            block_rows.push_back(r);
        for (uint32_t i = 0; i < m_; ++i)
            if (in_residual[i])
                block_rows.push_back(i);
        size_t bc = block_pivots_.size() + residual_cols.size();
        if (block_rows.size() * bc > 50'000'000)
            throw ResourceLimitError("cokernel: dense residual block " + std::to_string(block_rows.size()) + "x" +
                                     std::to_string(bc) + " too large");
        std::vector<size_t> pos(m_, SIZE_MAX);
        for (size_t t = 0; t < block_rows.size(); ++t)
            pos[block_rows[t]] = t;
        IntMat block(block_rows.size(), bc);
        for (size_t k = 0; k < block_pivots_.size(); ++k)
            block(k, k) = block_pivots_[k].second;
        for (size_t k = 0; k < residual_cols.size(); ++k)
            for (const auto& e : cols_[residual_cols[k]])
                block(pos[e.row], block_pivots_.size() + k) = e.value;
        for (uint32_t i = 0; i < m_; ++i)
            if (row_state_[i] == kActive && !in_residual[i])
                CokernelBuilder::add_free_row(result_, i);
        CokernelBuilder::set_block(result_, std::move(block_rows), block);
        CokernelBuilder::finish(result_);
    }

    EliminationOptions opts_;
    size_t m_, n_;
    std::vector<SparseColumn> cols_;
    std::vector<uint8_t> alive_;
    std::vector<uint8_t> row_state_;
    std::vector<std::vector<uint32_t>> row_cols_;
    std::vector<std::pair<uint32_t, Integer>> block_pivots_;
    size_t nnz_ = 0;
    Cokernel result_;
};

} // namespace

Cokernel cokernel(const SparseMat& m, const EliminationOptions& opts) { return Eliminator(m, opts).run(); }

size_t sparse_rank(const SparseMat& m, const EliminationOptions& opts) { return cokernel(m, opts).rank(); }

} // namespace h3::intlin
