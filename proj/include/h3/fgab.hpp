#pragma once

#include <optional>
#include <string>
#include <vector>

#include "h3/integer.hpp"
#include "h3/intlin.hpp"

namespace h3 {

using intlin::IntMat;

// Finitely generated abelian group Z/d1 + ... + Z/dk + Z^r with d1 | d2 | ... and di >= 2.
// Canonical generators are ordered torsion first, then free. The name is part of
// the identity of the group for element arithmetic but not for isomorphism tests.
class FgAb {
public:
    FgAb() = default;
    explicit FgAb(IntVec torsion, size_t free_rank = 0, std::string name = {});

    static FgAb trivial(std::string name = {}) { return FgAb({}, 0, std::move(name)); }
    static FgAb free(size_t rank, std::string name = {}) { return FgAb({}, rank, std::move(name)); }
    // n = 0 gives Z, n = 1 the trivial group.
    static FgAb cyclic(const Integer& n, std::string name = {});
    // Direct sum of cyclic groups of the given orders (0 for Z), canonicalized.
    static FgAb from_cyclic_orders(const IntVec& orders, std::string name = {});
    // Parses "0", "Z", "Z/4", "Z/2+Z/4+Z^2", "2,4" style descriptions.
    static FgAb parse(const std::string& text);

    size_t free_rank() const { return free_rank_; }
    const IntVec& torsion() const { return torsion_; }
    size_t num_gens() const { return torsion_.size() + free_rank_; }
    // Order of generator i, 0 for free generators.
    Integer gen_order(size_t i) const { return i < torsion_.size() ? torsion_[i] : Integer(0); }
    bool is_finite() const { return free_rank_ == 0; }
    bool is_trivial() const { return num_gens() == 0; }
    Integer order() const; // throws for infinite groups
    const std::string& name() const { return name_; }
    FgAb named(std::string name) const;

    bool isomorphic(const FgAb& o) const { return free_rank_ == o.free_rank_ && torsion_ == o.torsion_; }
    friend bool operator==(const FgAb&, const FgAb&) = default;

    std::string str() const;
    // num_gens x (#torsion) matrix whose columns are d_i e_i.
    IntMat relation_matrix() const;
    IntVec reduce(IntVec coords) const;
    bool is_zero(const IntVec& coords) const;

    class Element element(IntVec coords) const;
    class Element zero() const;
    class Element gen(size_t i) const;
    std::vector<class Element> elements() const; // finite groups only

private:
    IntVec torsion_;
    size_t free_rank_ = 0;
    std::string name_;
};

std::ostream& operator<<(std::ostream& os, const FgAb& a);

class Element {
public:
    Element() = default;
    Element(FgAb parent, IntVec coords);

    const FgAb& parent() const { return parent_; }
    const IntVec& coords() const { return coords_; }
    bool is_zero() const;
    // 0 for elements of infinite order.
    Integer order() const;

    Element operator-() const;
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Integer& k, const Element& a);
    friend bool operator==(const Element& a, const Element& b);
    std::string str() const;

private:
    void require_same_parent(const Element& o) const;
    FgAb parent_;
    IntVec coords_;
};

std::ostream& operator<<(std::ostream& os, const Element& e);

class ParentMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Homomorphism between canonical groups given by the images of the canonical
// generators (columns). Well-definedness is checked on construction.
class FgAbHom {
public:
    FgAbHom() = default;
    FgAbHom(FgAb dom, FgAb cod, IntMat matrix);

    static FgAbHom identity(const FgAb& a);
    static FgAbHom zero(const FgAb& dom, const FgAb& cod);
    // Columns given as elements of cod, one per generator of dom.
    static FgAbHom from_images(const FgAb& dom, const FgAb& cod, const std::vector<Element>& images);

    const FgAb& dom() const { return dom_; }
    const FgAb& cod() const { return cod_; }
    const IntMat& matrix() const { return m_; }

    Element operator()(const Element& x) const;
    IntVec apply(const IntVec& x) const;
    bool is_zero() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_iso() const { return is_injective() && is_surjective(); }

    FgAbHom operator-() const;
    friend FgAbHom operator+(const FgAbHom& f, const FgAbHom& g);
    friend FgAbHom operator-(const FgAbHom& f, const FgAbHom& g) { return f + (-g); }
    friend FgAbHom operator*(const Integer& k, const FgAbHom& f);
    friend bool operator==(const FgAbHom&, const FgAbHom&) = default;

private:
    FgAb dom_, cod_;
    IntMat m_;
};

// g after f
FgAbHom compose(const FgAbHom& g, const FgAbHom& f);
// Inverse of an isomorphism; throws if f is not bijective.
FgAbHom inverse(const FgAbHom& f);
// Some x with f(x) = y, if y lies in the image.
std::optional<Element> lift(const FgAbHom& f, const Element& y);

// Z^n modulo the row span of the relations, with the projection from symbols
// and a section sending canonical generators to symbol combinations.
struct Presentation {
    FgAb group;
    IntMat proj;    // group.num_gens() x n
    IntMat section; // n x group.num_gens()
    size_t num_symbols() const { return proj.cols(); }
    Element project(const IntVec& symbols) const;
    Element symbol(size_t s) const;
    IntVec lift(const Element& x) const;
    // Homomorphism of presented groups given by symbol images in the target.
    FgAbHom induced(const Presentation& target, const std::vector<IntVec>& symbol_images) const;
    // Homomorphism to cod given the image of every symbol.
    FgAbHom map_to(const FgAb& cod, const std::vector<Element>& symbol_images) const;
};

Presentation present(size_t num_symbols, const std::vector<IntVec>& relations, std::string name = {});
// Relations given as the columns of a symbols x relations matrix.
Presentation present(const intlin::SparseMat& relations, std::string name = {});

// Cokernel of the relation rows of R, plus the projection from Z^{cols R}.
std::pair<FgAb, FgAbHom> from_relations(const IntMat& relations);

struct SubgroupEmbedding {
    FgAb sub;
    FgAbHom inclusion;
    IntMat generators;   // ambient coordinates of the generating set
    Presentation pres;   // sub as Z^k / relations among the generators
    const FgAb& ambient() const { return inclusion.cod(); }
    bool contains(const Element& x) const;
    // Coordinates of x in sub, if x lies in the subgroup.
    std::optional<Element> preimage(const Element& x) const;
};

SubgroupEmbedding subgroup_generated(const FgAb& ambient, const std::vector<Element>& gens, std::string name = {});
SubgroupEmbedding kernel(const FgAbHom& f, std::string name = {});
SubgroupEmbedding image(const FgAbHom& f, std::string name = {});
// Quotient ambient/sub with its projection.
std::pair<FgAb, FgAbHom> quotient(const SubgroupEmbedding& s, std::string name = {});
std::pair<FgAb, FgAbHom> cokernel(const FgAbHom& f, std::string name = {});
bool is_subgroup_of(const SubgroupEmbedding& a, const SubgroupEmbedding& b);
// Image of a subgroup under f, as a subgroup of f.cod().
SubgroupEmbedding push_forward(const FgAbHom& f, const SubgroupEmbedding& s, std::string name = {});

struct DirectSum {
    FgAb group;
    std::vector<FgAbHom> injections, projections;
};
DirectSum direct_sum(const std::vector<FgAb>& parts, std::string name = {});

// ---------------------------------------------------------------------------
// Functors. Every group below is a presentation on explicit symbols.
// ---------------------------------------------------------------------------

class Tensor {
public:
    Tensor(FgAb a, FgAb b);
    const FgAb& group() const { return pres_.group; }
    const FgAb& left() const { return a_; }
    const FgAb& right() const { return b_; }
    const Presentation& presentation() const { return pres_; }
    size_t symbol(size_t i, size_t j) const { return i * b_.num_gens() + j; }
    Element elem(const Element& x, const Element& y) const;
    // f (x) g : this -> target
    FgAbHom induced(const Tensor& target, const FgAbHom& f, const FgAbHom& g) const;

private:
    FgAb a_, b_;
    Presentation pres_;
};

class ExteriorPower {
public:
    ExteriorPower(FgAb a, int n);
    const FgAb& group() const { return pres_.group; }
    int degree() const { return n_; }
    const Presentation& presentation() const { return pres_; }
    Element wedge(const Element& x, const Element& y) const;
    Element wedge(const Element& x, const Element& y, const Element& z) const;
    FgAbHom induced(const ExteriorPower& target, const FgAbHom& f) const;
    // A (x) A -> wedge^2 A (n = 2 only)
    FgAbHom from_tensor(const Tensor& t) const;

private:
    FgAb a_;
    int n_;
    Presentation pres_;
};

class ModTwo {
public:
    explicit ModTwo(FgAb a);
    const FgAb& group() const { return pres_.group; }
    const FgAbHom& projection() const { return proj_; }
    const Presentation& presentation() const { return pres_; }
    Element reduce(const Element& x) const { return proj_(x); }
    FgAbHom induced(const ModTwo& target, const FgAbHom& f) const;

private:
    FgAb a_;
    Presentation pres_;
    FgAbHom proj_;
};

// (A (x) A) / <a(x)b + b(x)a> with the quotient map from A (x) A, the map
// delta: A/2 -> (A (x) A)_sigma, a |-> a (x) a, and the map onto wedge^2 A.
class SymQuotient {
public:
    explicit SymQuotient(FgAb a);
    const FgAb& group() const { return pres_.group; }
    const Tensor& tensor() const { return tensor_; }
    const ModTwo& mod_two() const { return mod2_; }
    const ExteriorPower& wedge() const { return wedge_; }
    const FgAbHom& quotient_map() const { return q_; }
    const FgAbHom& delta() const { return delta_; }
    const FgAbHom& to_wedge() const { return to_wedge_; }

private:
    FgAb a_;
    Tensor tensor_;
    ModTwo mod2_;
    ExteriorPower wedge_;
    Presentation pres_;
    FgAbHom q_, delta_, to_wedge_;
};

class Homology;
class ChainComplex;

// Tor_1(A, B) as H_1 of the tensor product of the two-term presentation complexes.
class Tor {
public:
    Tor(FgAb a, FgAb b);
    ~Tor();
    Tor(const Tor&);
    Tor(Tor&&) noexcept;
    const FgAb& group() const;
    const FgAb& left() const { return a_; }
    const FgAb& right() const { return b_; }
    const Homology& homology() const { return *h_; }
    const ChainComplex& complex() const;
    FgAbHom induced(const Tor& target, const FgAbHom& f, const FgAbHom& g) const;
    // The algebraic swap Tor(A, A) -> Tor(A, A), x (x) y |-> (-1)^{|x||y|} y (x) x.
    FgAbHom swap() const;

private:
    FgAb a_, b_;
    std::unique_ptr<ChainComplex> c_;
    std::unique_ptr<Homology> h_;
};

// Ext^1(A, Z) with contravariant induced maps.
class Ext1 {
public:
    explicit Ext1(FgAb a);
    const FgAb& group() const { return pres_.group; }
    // f: A -> B induces Ext(B) -> Ext(A); this is Ext(A), source is Ext(B).
    FgAbHom induced(const Ext1& source, const FgAbHom& f) const;

private:
    FgAb a_;
    Presentation pres_;
};

// {x : sign * t(x) = x}
SubgroupEmbedding involution_invariants(const FgAbHom& t, int sign, std::string name = {});

// The two-term free complex Z^t -> Z^n presenting A.
ChainComplex presentation_complex(const FgAb& a);

// f: A -> B lifted to the presentation complexes (degree 0 and degree 1 matrices).
std::pair<IntMat, IntMat> presentation_lift(const FgAbHom& f);

} // namespace h3
