#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "h3/chain.hpp"
#include "h3/fgab.hpp"
#include "h3/group.hpp"

namespace h3 {

// [g_1 | ... | g_n] with every g_i different from the identity.
using BarTuple = std::vector<Elt>;
// A chain of a fixed degree in the normalized bar complex; zero coefficients are never stored.
using BarChain = std::map<BarTuple, Integer>;

void add_term(BarChain& c, BarTuple t, const Integer& coeff);
BarChain operator+(const BarChain& a, const BarChain& b);
BarChain operator*(const Integer& k, const BarChain& a);
std::string to_string(const BarChain& c, const FiniteGroup& g);

// Normalized bar complex of G with trivial integer coefficients in degrees 0..top.
// Basis tuples of degree n are ordered lexicographically, the rank is (|G| - 1)^n.
class BarComplex {
public:
    BarComplex(FiniteGroup g, size_t top);

    const FiniteGroup& group() const { return g_; }
    size_t top() const { return top_; }
    size_t rank(size_t n) const;
    size_t index(const BarTuple& t) const;
    BarTuple tuple(size_t n, size_t k) const;

    // Boundary of a single tuple, identity tuples dropped.
    BarChain boundary(const BarTuple& t) const;
    BarChain boundary(const BarChain& x) const;
    intlin::SparseColumn boundary_column(size_t n, size_t k) const;
    // d_n as a rank(n-1) x rank(n) sparse matrix, columns built in parallel.
    SparseMat boundary_matrix(size_t n) const;
    // Same matrix built serially from the face formula, for testing and benchmarks.
    SparseMat boundary_matrix_serial(size_t n) const;
    ChainComplex complex() const;

    IntVec to_vector(const BarChain& x, size_t n) const;
    BarChain to_chain(const IntVec& v, size_t n) const;

private:
    FiniteGroup g_;
    size_t top_;
    std::vector<uint32_t> digit_;   // element -> digit, identity excluded
    std::vector<Elt> element_;      // digit -> element
};

struct BarOptions {
    size_t max_order = 16;
    size_t max_degree = 3;
};

// H_0 .. H_max_degree of G from the normalized bar complex, with representative
// cycles and membership solving.
class GroupHomology {
public:
    explicit GroupHomology(FiniteGroup g, const BarOptions& opts = {});

    const FiniteGroup& group() const { return complex_->group(); }
    const BarComplex& complex() const { return *complex_; }
    size_t max_degree() const { return h_.size() - 1; }
    const Homology& homology(size_t n) const { return h_.at(n); }
    const FgAb& H(size_t n) const { return h_.at(n).group(); }

    bool is_cycle(size_t n, const BarChain& z) const;
    // Throws NotACycle if z is not a cycle.
    Element class_of(size_t n, const BarChain& z) const;
    BarChain representative(size_t n, const Element& x) const;
    std::vector<BarChain> generators(size_t n) const;
    // Coordinates of the class of z in the subgroup s of H_n, if it lies there.
    std::optional<Element> membership(size_t n, const BarChain& z, const SubgroupEmbedding& s) const;
    // Some chain c with d c = z, if z is a boundary (dense solve, small degrees only).
    std::optional<BarChain> bounding_chain(size_t n, const BarChain& z) const;

private:
    std::shared_ptr<const BarComplex> complex_;
    std::vector<Homology> h_;
};

// Tuple-wise image under f, tuples acquiring an identity entry dropped.
BarChain push_forward(const GroupHom& f, const BarChain& x);
FgAbHom induced(const GroupHomology& src, const GroupHomology& tgt, const GroupHom& f, size_t n);

// Shuffle product of x (entries mapped by fx) and y (entries mapped by fy) into
// the bar complex of a group with multiplication table target; the images of
// the two slots must commute elementwise.
BarChain shuffle(const BarChain& x, const std::function<Elt(Elt)>& fx, const BarChain& y,
                 const std::function<Elt(Elt)>& fy, const FiniteGroup& target);

// Eilenberg-Zilber cross product B(A) (x) B(G) -> B(A x G) with A x G = FiniteGroup::direct_product(A, G).
BarChain cross_product(const FiniteGroup& a, const BarChain& x, const FiniteGroup& g, const BarChain& y,
                       const FiniteGroup& ag);

// rho_*(x x y) for the product map rho: A x G -> G, A a central subgroup given by
// its inclusion, computed directly in the bar complex of G.
BarChain rho_cross(const GroupHom& incl, const BarChain& x, const BarChain& y);

// Group elements realizing the canonical generators of H_1(G) = G^ab.
std::vector<Elt> h1_generator_elements(const GroupHomology& h);

class NotCentral : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Subgroup of H_3(G) generated by rho_*(a x h) over generators a of H_1(A) and h of H_2(G).
SubgroupEmbedding rho_image(const GroupHomology& g, const GroupHom& incl, const GroupHomology& a);

} // namespace h3
