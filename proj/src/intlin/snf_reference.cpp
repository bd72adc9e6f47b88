#include "snf_detail.hpp"

namespace h3::intlin {

namespace detail {

namespace {

class Tracker {
public:
    Tracker(const IntMat& m, bool want_uinv, bool want_v)
        : a(m), u(IntMat::identity(m.rows())), want_uinv_(want_uinv), want_v_(want_v)
    {
        if (want_uinv)
            uinv = IntMat::identity(m.rows());
        if (want_v)
            v = IntMat::identity(m.cols());
    }

    void row_swap(size_t i, size_t k)
    {
        if (i == k)
            return;
        for (size_t j = 0; j < a.cols(); ++j)
            std::swap(a(i, j), a(k, j));
        for (size_t j = 0; j < u.cols(); ++j)
            std::swap(u(i, j), u(k, j));
        if (want_uinv_)
            for (size_t r = 0; r < uinv.rows(); ++r)
                std::swap(uinv(r, i), uinv(r, k));
    }

    // row_i += q * row_k
    void row_addmul(size_t i, size_t k, const Integer& q)
    {
        if (q.is_zero())
            return;
        for (size_t j = 0; j < a.cols(); ++j)
            if (!a(k, j).is_zero())
                a(i, j).add_mul(q, a(k, j));
        for (size_t j = 0; j < u.cols(); ++j)
            if (!u(k, j).is_zero())
                u(i, j).add_mul(q, u(k, j));
        if (want_uinv_)
            for (size_t r = 0; r < uinv.rows(); ++r)
                if (!uinv(r, i).is_zero())
                    uinv(r, k).sub_mul(q, uinv(r, i));
    }

    void row_negate(size_t i)
    {
        for (size_t j = 0; j < a.cols(); ++j)
            a(i, j) = -a(i, j);
        for (size_t j = 0; j < u.cols(); ++j)
            u(i, j) = -u(i, j);
        if (want_uinv_)
            for (size_t r = 0; r < uinv.rows(); ++r)
                uinv(r, i) = -uinv(r, i);
    }

    void col_swap(size_t j, size_t l)
    {
        if (j == l)
            return;
        for (size_t i = 0; i < a.rows(); ++i)
            std::swap(a(i, j), a(i, l));
        if (want_v_)
            for (size_t i = 0; i < v.rows(); ++i)
                std::swap(v(i, j), v(i, l));
    }

    // col_j += q * col_l
    void col_addmul(size_t j, size_t l, const Integer& q)
    {
        if (q.is_zero())
            return;
        for (size_t i = 0; i < a.rows(); ++i)
            if (!a(i, l).is_zero())
                a(i, j).add_mul(q, a(i, l));
        if (want_v_)
            for (size_t i = 0; i < v.rows(); ++i)
                if (!v(i, l).is_zero())
                    v(i, j).add_mul(q, v(i, l));
    }

    IntMat a, u, uinv, v;

private:
    bool want_uinv_, want_v_;
};

} // namespace

FullSnf snf_full(const IntMat& m, bool want_uinv, bool want_v)
{
    check_dimension(m.rows(), m.cols(), "snf");
    Tracker t(m, want_uinv, want_v);
    IntMat& a = t.a;
    const size_t rows = a.rows(), cols = a.cols();
    size_t k = 0;
    for (; k < rows && k < cols; ++k) {
        check_deadline("snf");
        // smallest nonzero entry of the trailing block
        size_t pi = rows, pj = cols;
        Integer best;
        for (size_t i = k; i < rows; ++i)
            for (size_t j = k; j < cols; ++j)
                if (!a(i, j).is_zero() && (pi == rows || abs(a(i, j)) < best)) {
                    best = abs(a(i, j));
                    pi = i;
                    pj = j;
                    if (best.is_one())
                        goto found;
                }
    found:
        if (pi == rows)
            break;
        t.row_swap(k, pi);
        t.col_swap(k, pj);

        for (;;) {
            bool clean = true;
            for (size_t i = k + 1; i < rows; ++i)
                if (!a(i, k).is_zero()) {
                    t.row_addmul(i, k, -round_div(a(i, k), a(k, k)));
                    if (!a(i, k).is_zero())
                        clean = false;
                }
            for (size_t j = k + 1; j < cols; ++j)
                if (!a(k, j).is_zero()) {
                    t.col_addmul(j, k, -round_div(a(k, j), a(k, k)));
                    if (!a(k, j).is_zero())
                        clean = false;
                }
            if (!clean) {
                size_t bi = k, bj = k;
                Integer b = abs(a(k, k));
                for (size_t i = k + 1; i < rows; ++i)
                    if (!a(i, k).is_zero() && abs(a(i, k)) < b) {
                        b = abs(a(i, k));
                        bi = i;
                        bj = k;
                    }
                for (size_t j = k + 1; j < cols; ++j)
                    if (!a(k, j).is_zero() && abs(a(k, j)) < b) {
                        b = abs(a(k, j));
                        bi = k;
                        bj = j;
                    }
                t.row_swap(k, bi);
                t.col_swap(k, bj);
                continue;
            }
            bool divisible = true;
            for (size_t i = k + 1; i < rows && divisible; ++i)
                for (size_t j = k + 1; j < cols; ++j)
                    if (!a(i, j).is_zero() && !divides(a(k, k), a(i, j))) {
                        t.row_addmul(k, i, Integer(1));
                        divisible = false;
                        break;
                    }
            if (divisible)
                break;
        }
        if (a(k, k).sign() < 0)
            t.row_negate(k);
        check_coefficient(a(k, k), "snf");
    }
    FullSnf out;
    out.rank = k;
    out.S = std::move(t.a);
    out.U = std::move(t.u);
    out.Uinv = std::move(t.uinv);
    out.V = std::move(t.v);
    return out;
}

} // namespace detail

IntVec SnfDecomposition::diagonal() const
{
    IntVec d;
    for (size_t i = 0; i < S.rows() && i < S.cols(); ++i)
        d.push_back(S(i, i));
    return d;
}

SnfDecomposition snf(const IntMat& m)
{
    auto f = detail::snf_full(m, false, true);
    return {std::move(f.U), std::move(f.S), std::move(f.V), f.rank};
}

IntMat kernel_basis(const IntMat& m)
{
    auto f = detail::snf_full(m, false, true);
    std::vector<size_t> idx;
    for (size_t j = f.rank; j < m.cols(); ++j)
        idx.push_back(j);
    return f.V.select_cols(idx);
}

std::optional<IntVec> solve(const IntMat& m, const IntVec& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: right-hand side length mismatch");
    auto f = detail::snf_full(m, false, true);
    IntVec ub = f.U * b;
    IntVec y(m.cols());
    for (size_t i = 0; i < ub.size(); ++i) {
        if (i < f.rank) {
            if (!divides(f.S(i, i), ub[i]))
                return std::nullopt;
            y[i] = ub[i] / f.S(i, i);
        } else if (!ub[i].is_zero()) {
            return std::nullopt;
        }
    }
    return f.V * y;
}

} // namespace h3::intlin
