#pragma once

#include <chrono>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "h3/integer.hpp"

namespace h3::intlin {

// ---------------------------------------------------------------------------
// Resource guard
// ---------------------------------------------------------------------------

struct ResourceLimits {
    size_t max_dimension = 4'000'000;   // rows or columns of any matrix handed to an eliminator
    size_t max_coefficient_bits = 4096; // bit length of any pivot/coefficient produced
    double time_budget_seconds = 0;     // 0 disables the deadline
};

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Process-wide limits; the deadline is measured from the last call to set_limits.
void set_limits(const ResourceLimits& limits);
ResourceLimits limits();
void check_dimension(size_t rows, size_t cols, const char* what);
void check_coefficient(const Integer& v, const char* what);
void check_deadline(const char* what);

class ScopedLimits {
public:
    explicit ScopedLimits(const ResourceLimits& l) : saved_(limits()) { set_limits(l); }
    ~ScopedLimits() { set_limits(saved_); }
    ScopedLimits(const ScopedLimits&) = delete;
    ScopedLimits& operator=(const ScopedLimits&) = delete;

private:
    ResourceLimits saved_;
};

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

class IntMat {
public:
    IntMat() = default;
    IntMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMat(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMat identity(size_t n);
    static IntMat from_columns(size_t rows, const std::vector<IntVec>& columns);
    static IntMat from_rows(size_t cols, const std::vector<IntVec>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    IntVec row(size_t i) const;
    IntVec col(size_t j) const;
    void set_col(size_t j, const IntVec& v);
    IntMat transpose() const;
    IntMat select_cols(const std::vector<size_t>& idx) const;
    bool is_zero() const;

    friend bool operator==(const IntMat& a, const IntMat& b) = default;
    friend IntMat operator*(const IntMat& a, const IntMat& b);
    friend IntVec operator*(const IntMat& a, const IntVec& x);
    friend IntMat operator+(const IntMat& a, const IntMat& b);
    friend IntMat operator-(const IntMat& a, const IntMat& b);
    friend std::ostream& operator<<(std::ostream& os, const IntMat& m);

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> data_;
};

IntMat hstack(const IntMat& a, const IntMat& b);
IntMat vstack(const IntMat& a, const IntMat& b);
Integer determinant(const IntMat& m);
size_t rank(const IntMat& m);

struct SparseEntry {
    uint32_t row;
    Integer value;
    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};
using SparseColumn = std::vector<SparseEntry>; // sorted by row, no zeros

// Column-major sparse matrix. Columns are sorted and never store explicit zeros.
class SparseMat {
public:
    SparseMat() = default;
    SparseMat(size_t rows, size_t cols) : rows_(rows), columns_(cols) {}

    static SparseMat from_dense(const IntMat& m);
    // Triplets may repeat; duplicates are summed and zeros dropped.
    static SparseMat from_triplets(size_t rows, size_t cols,
                                   const std::vector<std::tuple<size_t, size_t, Integer>>& triplets);

    size_t rows() const { return rows_; }
    size_t cols() const { return columns_.size(); }
    size_t nnz() const;
    const SparseColumn& column(size_t j) const { return columns_[j]; }
    // Sorts, merges and drops zeros.
    void set_column(size_t j, SparseColumn col);
    void append_column(SparseColumn col);
    IntMat to_dense() const;
    IntVec multiply(const IntVec& x) const;
    SparseMat transpose() const;

    friend bool operator==(const SparseMat&, const SparseMat&) = default;

private:
    size_t rows_ = 0;
    std::vector<SparseColumn> columns_;
};

SparseColumn normalize_column(SparseColumn col);

// Coordinate-list text format: "rows cols nnz" then nnz lines "i j value" (0-based).
SparseMat read_coordinate(std::istream& in);
void write_coordinate(std::ostream& out, const SparseMat& m);

// ---------------------------------------------------------------------------
// Smith normal form (dense reference implementation)
// ---------------------------------------------------------------------------

struct SnfDecomposition {
    IntMat U; // rows x rows, unimodular
    IntMat S; // rows x cols, diagonal, d1 | d2 | ..., zeros trailing
    IntMat V; // cols x cols, unimodular
    size_t rank = 0;
    IntVec diagonal() const;
};

// Serial textbook algorithm; U * M * V == S.
SnfDecomposition snf(const IntMat& m);

// Columns form a Z-basis of {x : M x = 0}.
IntMat kernel_basis(const IntMat& m);

// Some integer x with M x = b, if one exists.
std::optional<IntVec> solve(const IntMat& m, const IntVec& b);

// ---------------------------------------------------------------------------
// Cokernels Z^m / im(M) with explicit coordinates
// ---------------------------------------------------------------------------

struct AxpyOp {
    uint32_t pivot;
    std::vector<std::pair<uint32_t, Integer>> targets; // y[j] -= q * y[pivot]
};
struct MixOp {
    uint32_t r, j;
    Integer a11, a12, a21, a22; // determinant one
};
using RowOp = std::variant<AxpyOp, MixOp>;

// Records the unimodular row transform U of an elimination of M together with
// the slot structure of U*M*V. Coordinates of x in coker(M) are read off U*x.
class Cokernel {
public:
    Cokernel() = default;

    size_t ambient_dim() const { return m_; }
    size_t rank() const { return rank_; }
    const std::vector<Integer>& torsion() const { return torsion_; }
    size_t free_rank() const { return free_slots_.size(); }
    size_t num_generators() const { return torsion_.size() + free_slots_.size(); }
    // Full Smith diagonal of M: rank entries, units first.
    IntVec smith_diagonal() const;

    // Canonical coordinates of the class of x: torsion coordinates reduced
    // mod their invariant factor, then free coordinates.
    IntVec coordinates(const IntVec& x) const;
    // Coordinates of the image-saturation complement only (the free slots),
    // without reduction; used by homology for free parts.
    IntVec free_coordinates(const IntVec& x) const;
    // U^{-1} e_slot for generator index in [0, num_generators()).
    IntVec generator(size_t index) const;
    bool in_image(const IntVec& x) const;

    IntVec apply_transform(const IntVec& x) const;
    IntVec apply_inverse(const IntVec& y) const;

    size_t num_ops() const { return ops_.size(); }

private:
    friend class CokernelBuilder;
    void finalize();
    IntVec block_part(const IntVec& y) const;

    size_t m_ = 0;
    size_t rank_ = 0;
    std::vector<RowOp> ops_;
    std::vector<uint32_t> unit_rows_;
    std::vector<uint32_t> block_rows_;
    IntMat block_u_, block_uinv_;
    IntVec block_diag_;
    std::vector<uint32_t> free_rows_;

    struct Slot {
        bool in_block;
        size_t index; // block position or row
    };
    std::vector<Integer> torsion_;
    std::vector<Slot> torsion_slots_;
    std::vector<Slot> free_slots_;
};

struct EliminationOptions {
    // Total nonzero count above which the remaining block is finished densely.
    size_t fill_limit = 60'000'000;
    // Row-clear loops with at least this many target columns run in parallel.
    size_t parallel_threshold = 64;
    int threads = 0; // 0: OpenMP default
};

// Sparse elimination: unit pivots (Markowitz order) first, then gcd pivoting.
Cokernel cokernel(const SparseMat& m, const EliminationOptions& opts = {});
// Serial dense reference through snf().
Cokernel cokernel_reference(const IntMat& m);

// Dense kernel and solve routines built on snf() for small systems;
// rank via the sparse engine for large ones.
size_t sparse_rank(const SparseMat& m, const EliminationOptions& opts = {});

} // namespace h3::intlin
