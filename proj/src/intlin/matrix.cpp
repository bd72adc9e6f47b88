#include <algorithm>
#include <atomic>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "h3/intlin.hpp"

namespace h3::intlin {

namespace {

std::mutex g_limits_mutex;
ResourceLimits g_limits;
std::atomic<int64_t> g_deadline_ns{0}; // steady-clock nanoseconds, 0 = none

int64_t now_ns()
{
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

} // namespace

void set_limits(const ResourceLimits& l)
{
    std::lock_guard lock(g_limits_mutex);
    g_limits = l;
    g_deadline_ns = l.time_budget_seconds > 0 ? now_ns() + static_cast<int64_t>(l.time_budget_seconds * 1e9) : 0;
}

ResourceLimits limits()
{
    std::lock_guard lock(g_limits_mutex);
    return g_limits;
}

void check_dimension(size_t rows, size_t cols, const char* what)
{
    size_t cap = limits().max_dimension;
    if (rows > cap || cols > cap)
        throw ResourceLimitError(std::string(what) + ": matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                                 " exceeds dimension limit " + std::to_string(cap));
}

void check_coefficient(const Integer& v, const char* what)
{
    if (v.is_small())
        return;
    size_t cap = limits().max_coefficient_bits;
    if (v.bit_length() > cap)
        throw ResourceLimitError(std::string(what) + ": coefficient of " + std::to_string(v.bit_length()) +
                                 " bits exceeds limit " + std::to_string(cap));
}

void check_deadline(const char* what)
{
    int64_t d = g_deadline_ns.load(std::memory_order_relaxed);
    if (d != 0 && now_ns() > d)
        throw ResourceLimitError(std::string(what) + ": time budget exhausted");
}

// ---------------------------------------------------------------------------

IntMat::IntMat(std::initializer_list<std::initializer_list<long long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("ragged matrix literal");
        for (long long v : r)
            data_.emplace_back(v);
    }
}

IntMat IntMat::identity(size_t n)
{
    IntMat m(n, n);
    for (size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMat IntMat::from_columns(size_t rows, const std::vector<IntVec>& columns)
{
    IntMat m(rows, columns.size());
    for (size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows)
            throw std::invalid_argument("column length mismatch");
        for (size_t i = 0; i < rows; ++i)
            m(i, j) = columns[j][i];
    }
    return m;
}

IntMat IntMat::from_rows(size_t cols, const std::vector<IntVec>& rows)
{
    IntMat m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("row length mismatch");
        for (size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

IntVec IntMat::row(size_t i) const { return IntVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

IntVec IntMat::col(size_t j) const
{
    IntVec v(rows_);
    for (size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

void IntMat::set_col(size_t j, const IntVec& v)
{
    for (size_t i = 0; i < rows_; ++i)
        (*this)(i, j) = v[i];
}

IntMat IntMat::transpose() const
{
    IntMat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMat IntMat::select_cols(const std::vector<size_t>& idx) const
{
    IntMat r(rows_, idx.size());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < idx.size(); ++k)
            r(i, k) = (*this)(i, idx[k]);
    return r;
}

bool IntMat::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v.is_zero(); });
}

IntMat operator*(const IntMat& a, const IntMat& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product dimension mismatch");
    IntMat c(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const Integer& aik = a(i, k);
            if (aik.is_zero())
                continue;
            for (size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero())
                    c(i, j).add_mul(aik, b(k, j));
        }
    return c;
}

IntVec operator*(const IntMat& a, const IntVec& x)
{
    if (a.cols_ != x.size())
        throw std::invalid_argument("matrix-vector dimension mismatch");
    IntVec y(a.rows_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k)
            if (!x[k].is_zero() && !a(i, k).is_zero())
                y[i].add_mul(a(i, k), x[k]);
    return y;
}

IntMat operator+(const IntMat& a, const IntMat& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("matrix sum dimension mismatch");
    IntMat c = a;
    for (size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] += b.data_[i];
    return c;
}

IntMat operator-(const IntMat& a, const IntMat& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("matrix difference dimension mismatch");
    IntMat c = a;
    for (size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] -= b.data_[i];
    return c;
}

std::ostream& operator<<(std::ostream& os, const IntMat& m)
{
    os << '[';
    for (size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (size_t j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m(i, j);
    }
    return os << ']';
}

IntMat hstack(const IntMat& a, const IntMat& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("hstack row mismatch");
    IntMat c(a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols(); ++j)
            c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

IntMat vstack(const IntMat& a, const IntMat& b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack column mismatch");
    IntMat c(a.rows() + b.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j)
            c(a.rows() + i, j) = b(i, j);
    return c;
}

// Fraction-free Bareiss elimination.
Integer determinant(const IntMat& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of non-square matrix");
    size_t n = m.rows();
    if (n == 0)
        return Integer(1);
    IntMat a = m;
    Integer prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            size_t p = k + 1;
            while (p < n && a(p, k).is_zero())
                ++p;
            if (p == n)
                return Integer(0);
            for (size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k);
                v.sub_mul(a(i, k), a(k, j));
                a(i, j) = v / prev;
            }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

size_t rank(const IntMat& m) { return snf(m).rank; }

// ---------------------------------------------------------------------------

SparseColumn normalize_column(SparseColumn col)
{
    std::sort(col.begin(), col.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.row < b.row; });
    SparseColumn out;
    out.reserve(col.size());
    for (auto& e : col) {
        if (!out.empty() && out.back().row == e.row)
            out.back().value += e.value;
        else
            out.push_back(std::move(e));
        if (out.back().value.is_zero())
            out.pop_back();
    }
    return out;
}

size_t SparseMat::nnz() const
{
    size_t n = 0;
    for (const auto& c : columns_)
        n += c.size();
    return n;
}

SparseMat SparseMat::from_dense(const IntMat& m)
{
    SparseMat s(m.rows(), m.cols());
    for (size_t j = 0; j < m.cols(); ++j)
        for (size_t i = 0; i < m.rows(); ++i)
            if (!m(i, j).is_zero())
                s.columns_[j].push_back({static_cast<uint32_t>(i), m(i, j)});
    return s;
}

SparseMat SparseMat::from_triplets(size_t rows, size_t cols,
                                   const std::vector<std::tuple<size_t, size_t, Integer>>& triplets)
{
    SparseMat s(rows, cols);
    for (const auto& [i, j, v] : triplets) {
        if (i >= rows || j >= cols)
            throw std::out_of_range("triplet index out of range");
        s.columns_[j].push_back({static_cast<uint32_t>(i), v});
    }
    for (auto& c : s.columns_)
        c = normalize_column(std::move(c));
    return s;
}

void SparseMat::set_column(size_t j, SparseColumn col)
{
    for (const auto& e : col)
        if (e.row >= rows_)
            throw std::out_of_range("sparse entry row out of range");
    columns_[j] = normalize_column(std::move(col));
}

void SparseMat::append_column(SparseColumn col)
{
    columns_.emplace_back();
    set_column(columns_.size() - 1, std::move(col));
}

IntMat SparseMat::to_dense() const
{
    IntMat m(rows_, columns_.size());
    for (size_t j = 0; j < columns_.size(); ++j)
        for (const auto& e : columns_[j])
            m(e.row, j) = e.value;
    return m;
}

IntVec SparseMat::multiply(const IntVec& x) const
{
    if (x.size() != columns_.size())
        throw std::invalid_argument("sparse product dimension mismatch");
    IntVec y(rows_);
    for (size_t j = 0; j < columns_.size(); ++j) {
        if (x[j].is_zero())
            continue;
        for (const auto& e : columns_[j])
            y[e.row].add_mul(e.value, x[j]);
    }
    return y;
}

SparseMat SparseMat::transpose() const
{
    SparseMat t(columns_.size(), rows_);
    for (size_t j = 0; j < columns_.size(); ++j)
        for (const auto& e : columns_[j])
            t.columns_[e.row].push_back({static_cast<uint32_t>(j), e.value});
    return t;
}

SparseMat read_coordinate(std::istream& in)
{
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos || line[pos] == '#' || line[pos] == '%')
                continue;
            return true;
        }
        return false;
    };
    if (!next_line())
        throw std::runtime_error("coordinate file: missing header");
    size_t rows = 0, cols = 0, nnz = 0;
    {
        std::istringstream hs(line);
        if (!(hs >> rows >> cols >> nnz))
            throw std::runtime_error("coordinate file: malformed header");
    }
    std::vector<std::tuple<size_t, size_t, Integer>> trip;
    trip.reserve(nnz);
    for (size_t k = 0; k < nnz; ++k) {
        if (!next_line())
            throw std::runtime_error("coordinate file: expected " + std::to_string(nnz) + " entries");
        std::istringstream ls(line);
        size_t i, j;
        std::string v;
        if (!(ls >> i >> j >> v))
            throw std::runtime_error("coordinate file: malformed entry '" + line + "'");
        trip.emplace_back(i, j, Integer::parse(v));
    }
    return SparseMat::from_triplets(rows, cols, trip);
}

void write_coordinate(std::ostream& out, const SparseMat& m)
{
    out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    for (size_t j = 0; j < m.cols(); ++j)
        for (const auto& e : m.column(j))
            out << e.row << ' ' << j << ' ' << e.value << '\n';
}

} // namespace h3::intlin
