#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "h3/chain.hpp"
#include "h3/fgab.hpp"

namespace h3 {

// A cell of the tensor product of the periodic resolutions of the cyclic
// factors: one degree per factor. Cells of a fixed total degree are ordered
// lexicographically.
using Cell = std::vector<uint8_t>;

// Integral chains computing H_*(A) for A = Z/o_1 + ... + Z/o_k (o_i = 0 for Z):
// the tensor product over the factors of Z <-0- Z <-o- Z <-0- ... (or the
// length one complex for Z), truncated at degree top.
class AbelianComplex {
public:
    explicit AbelianComplex(IntVec orders, size_t top = 5);
    static AbelianComplex of(const FgAb& a, size_t top = 5);

    const IntVec& orders() const { return orders_; }
    size_t num_factors() const { return orders_.size(); }
    size_t top() const { return complex_.top(); }
    bool is_finite() const;
    const ChainComplex& complex() const { return complex_; }
    const std::vector<Cell>& cells(size_t n) const { return cells_.at(n); }
    size_t cell_index(const Cell& c) const;
    // H_n for n < top.
    const Homology& homology(size_t n) const;

private:
    IntVec orders_;
    std::vector<std::vector<Cell>> cells_;
    std::map<Cell, size_t> index_;
    ChainComplex complex_;
    std::vector<std::shared_ptr<const Homology>> homology_;
};

// The same tensor product before reduction: a free Z[A]-resolution of Z. A
// basis element over Z is a group element (exponent per factor) times a cell.
class EquivariantResolution {
public:
    struct Basis {
        std::vector<int64_t> g;
        uint32_t cell;
        auto operator<=>(const Basis&) const = default;
    };
    using Chain = std::map<Basis, Integer>;

    explicit EquivariantResolution(const AbelianComplex& c) : c_(&c) {}

    const AbelianComplex& reduced() const { return *c_; }
    std::vector<int64_t> normalize(std::vector<int64_t> g) const;
    Chain boundary(const Chain& x, size_t n) const;
    // Contracting homotopy: boundary h + h boundary = 1 - augmentation.
    Chain homotopy(const Chain& x, size_t n) const;
    Chain translate(const Chain& x, const std::vector<int64_t>& g) const;
    // Image in the reduced complex (all group elements sent to 1).
    IntVec reduce(const Chain& x, size_t n) const;

private:
    void add_boundary(Chain& out, const Basis& b, const Integer& c, size_t n) const;
    void add_homotopy(Chain& out, const Basis& b, const Integer& c, size_t n) const;
    const AbelianComplex* c_;
};

enum class LiftMethod { homotopy, solve };

// Chain map between reduced complexes covering the homomorphism given by m
// (target factors x source factors), built degreewise by lifting on the free
// resolutions. The solve method needs a finite target.
ChainMap lift_chain_map(const AbelianComplex& src, const AbelianComplex& tgt, const IntMat& m, size_t top,
                        LiftMethod method = LiftMethod::homotopy);

FgAbHom induced_map(const AbelianComplex& src, const AbelianComplex& tgt, const IntMat& m, size_t n,
                    LiftMethod method = LiftMethod::homotopy);
// f_*: H_n(dom f) -> H_n(cod f) on the complexes of the canonical decompositions.
FgAbHom induced_map(const FgAbHom& f, size_t n, LiftMethod method = LiftMethod::homotopy);

// x (p-chain of a) times y (q-chain of b) in the complex of the concatenated factor list.
IntVec cross_chain(const AbelianComplex& a, size_t p, const IntVec& x, const AbelianComplex& b, size_t q,
                   const IntVec& y, const AbelianComplex& ab);

struct KunnethSummand {
    std::string label;
    SubgroupEmbedding sub;
};

struct KunnethDecomposition {
    AbelianComplex a, b, ab;
    size_t degree = 0;
    std::vector<KunnethSummand> summands;
    // Cycle in ab representing the Tor class of torsion generators x of H_p(a) and y of H_q(b).
    static IntVec tor_cycle(const AbelianComplex& a, size_t p, const IntVec& x, const Integer& ox,
                            const AbelianComplex& b, size_t q, const IntVec& y, const Integer& oy,
                            const AbelianComplex& ab);
};

// Summands H_p(A) (x) H_q(B) (p + q = n) and Tor(H_p(A), H_q(B)) (p + q = n - 1) of H_n(A + B).
KunnethDecomposition kunneth_summands(const FgAb& a, const FgAb& b, size_t n);

// Pontryagin product H_p(A) x H_q(A) -> H_{p+q}(A) via the cross product and mu: A + A -> A.
class Pontryagin {
public:
    explicit Pontryagin(const FgAb& a, size_t max_degree = 4);
    const AbelianComplex& complex() const { return a_; }
    Element product(size_t p, const Element& x, size_t q, const Element& y) const;
    SubgroupEmbedding image(size_t p, size_t q) const;

private:
    AbelianComplex a_, aa_;
    ChainMap mu_;
};

// The Tor summand of H_3(A x A) on the basis of factor pairs, with the
// self-map induced by (a, b) |-> (a + b, a + b) and the map induced by the swap
// (a, b) |-> (b, a), both read modulo the cross product summands.
struct TorSummand {
    FgAb tor;          // presented on the factor pairs (i, j)
    FgAbHom selfmap;   // (Delta mu)_*
    FgAbHom swap;      // iota_*
    FgAb h3;           // H_3(A x A)
    FgAb cross_quotient;
};

TorSummand tor_summand_selfmap(const FgAb& a);

} // namespace h3
