#pragma once

#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "h3/fgab.hpp"
#include "h3/intlin.hpp"

namespace h3 {

using intlin::SparseMat;

// Bounded complex of free abelian groups C_0 .. C_top with d_n: C_n -> C_{n-1}.
class ChainComplex {
public:
    ChainComplex() = default;
    // boundaries[n] is d_n for n = 1..top; boundaries[0] is ignored and may be empty.
    ChainComplex(std::vector<size_t> ranks, std::vector<SparseMat> boundaries);

    size_t top() const { return ranks_.empty() ? 0 : ranks_.size() - 1; }
    size_t rank(size_t n) const { return n < ranks_.size() ? ranks_[n] : 0; }
    const std::vector<size_t>& ranks() const { return ranks_; }
    // d_n as a rank(n-1) x rank(n) matrix; zero outside 1..top.
    SparseMat boundary(size_t n) const;
    IntVec d(size_t n, const IntVec& x) const;
    bool d_squared_zero() const;

private:
    std::vector<size_t> ranks_;
    std::vector<SparseMat> d_;
};

// Basis of (A (x) B)_n ordered lexicographically by (p, i, q, j) with p + q = n,
// i a basis index of A_p and j of B_q.
class TensorIndex {
public:
    TensorIndex() = default;
    TensorIndex(const std::vector<size_t>& ra, const std::vector<size_t>& rb, size_t top);

    size_t top() const { return offsets_.size() - 1; }
    size_t rank(size_t n) const;
    size_t index(size_t p, size_t i, size_t q, size_t j) const;
    // (p, i, q, j) of a basis element of degree n.
    std::tuple<size_t, size_t, size_t, size_t> decode(size_t n, size_t k) const;

private:
    std::vector<size_t> ra_, rb_;
    std::vector<std::vector<size_t>> offsets_; // offsets_[n][p]
};

// d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy, truncated at degree top.
ChainComplex tensor(const ChainComplex& a, const ChainComplex& b, size_t top, TensorIndex* index = nullptr);

class ChainMap {
public:
    ChainMap() = default;
    explicit ChainMap(std::vector<SparseMat> maps) : maps_(std::move(maps)) {}

    size_t top() const { return maps_.empty() ? 0 : maps_.size() - 1; }
    const SparseMat& map(size_t n) const { return maps_.at(n); }
    IntVec apply(size_t n, const IntVec& x) const { return maps_.at(n).multiply(x); }
    bool is_chain_map(const ChainComplex& src, const ChainComplex& tgt) const;

private:
    std::vector<SparseMat> maps_;
};

ChainMap tensor(const ChainMap& f, const ChainMap& g, const TensorIndex& src, const TensorIndex& tgt);

class NotACycle : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// H_n(C) in canonical form with representative cycles for the canonical generators.
class Homology {
public:
    Homology() = default;
    Homology(const ChainComplex& c, size_t n, std::string name = {}, const intlin::EliminationOptions& opts = {});
    // Same, given the two boundary matrices directly (d_n and d_{n+1}).
    Homology(SparseMat d_n, const SparseMat& d_next, size_t n, std::string name = {},
             const intlin::EliminationOptions& opts = {});

    size_t degree() const { return n_; }
    size_t chain_rank() const { return dn_.cols(); }
    const FgAb& group() const { return group_; }
    const std::vector<IntVec>& generators() const { return gens_; }
    bool is_cycle(const IntVec& z) const;
    bool is_boundary(const IntVec& z) const;
    Element class_of(const IntVec& cycle) const;
    IntVec representative(const Element& x) const;

private:
    void build(const SparseMat& d_next, const intlin::EliminationOptions& opts);

    size_t n_ = 0;
    SparseMat dn_;
    intlin::Cokernel ck_;
    IntMat left_inverse_; // free coordinates of the cycle space
    FgAb group_;
    std::vector<IntVec> gens_;
};

// Map on homology induced by a chain-level map of degree n.
FgAbHom induced_map(const Homology& src, const Homology& tgt, const std::function<IntVec(const IntVec&)>& chain_map);
FgAbHom induced_map(const ChainMap& f, const Homology& src, const Homology& tgt);

} // namespace h3
