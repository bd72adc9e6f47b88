#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "h3/chain.hpp"
#include "h3/fgab.hpp"

namespace h3 {

// Connected commutative differential graded algebra over Z, free of finite rank
// in each degree 0..top, with the unit as the only basis element of degree 0.
// d_n is a rank(n-1) x rank(n) matrix; products of basis elements are available
// whenever the degrees add up to at most top.
class Dga {
public:
    using Product = std::function<intlin::SparseColumn(size_t p, size_t i, size_t q, size_t j)>;

    Dga() = default;
    Dga(std::vector<size_t> ranks, std::vector<SparseMat> d, Product product);

    size_t top() const { return ranks_.size() - 1; }
    size_t rank(size_t n) const { return n < ranks_.size() ? ranks_[n] : 0; }
    const SparseMat& d(size_t n) const { return d_.at(n); }
    intlin::SparseColumn product(size_t p, size_t i, size_t q, size_t j) const;
    ChainComplex complex() const;
    // H_n for n < top.
    FgAb homology(size_t n) const;

    bool d_squared_zero() const;
    // d(xy) = dx y + (-1)^p x dy on all basis pairs with p + q <= bound.
    bool leibniz(size_t bound) const;
    bool associative(size_t bound) const;
    bool commutative(size_t bound) const;

private:
    std::vector<size_t> ranks_;
    std::vector<SparseMat> d_;
    Product product_;
};

// Normalized bar construction of the integral group ring of a finite abelian A
// with the shuffle product, degrees 0..top. Its homology is H_*(A) = H_*(K(A,1)).
Dga bar_of_group_ring(const FgAb& a, size_t top = 5);

// Bar construction of a connected commutative DGA with the shuffle product,
// degrees 0..top. Words [c_1|...|c_k] of positive degree letters have degree
// sum(|c_i| + 1).
Dga bar_construction(const Dga& c, size_t top);

struct EmOptions {
    size_t max_order = 9;
};

// H_n(K(A,2)) for n <= 4 from the second bar construction.
FgAb h_of_k_a_2(const FgAb& a, size_t n, const EmOptions& opts = {});
// All of H_0..H_4 of K(A,2) in one pass.
std::vector<FgAb> homology_k_a_2(const FgAb& a, const EmOptions& opts = {});
// H_0..H_5 of K(A,3) from the third bar construction (|A| <= 4).
std::vector<FgAb> homology_k_a_3(const FgAb& a);

} // namespace h3
