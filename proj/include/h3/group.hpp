#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "h3/fgab.hpp"
#include "json.hpp"

namespace h3 {

using Elt = uint32_t;

// A finite group given by its multiplication table; table[a][b] is the index of a*b.
class FiniteGroup {
public:
    FiniteGroup() = default;
    FiniteGroup(std::vector<std::vector<Elt>> table, std::vector<std::string> labels = {}, std::string name = {});

    // {"order": n, "table": [[...]], "labels": [...]} or {"degree": d, "generators": [[[1,2,3],[4,5]], ...]}
    // with permutations in 1-based cycle notation.
    static FiniteGroup from_json(const nlohmann::json& j);
    static FiniteGroup load(const std::string& path);
    static FiniteGroup from_permutations(size_t degree, const std::vector<std::vector<std::vector<int>>>& generators,
                                         std::string name = {});
    // Z/o_1 x ... x Z/o_k with elements in mixed-radix order (last coordinate fastest).
    static FiniteGroup abelian(const IntVec& orders, std::string name = {});
    static FiniteGroup cyclic(size_t n) { return abelian({Integer(static_cast<int64_t>(n))}); }
    // Pairs (g, h) indexed g * |H| + h.
    static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

    size_t order() const { return d_ ? d_->table.size() : 0; }
    Elt mul(Elt a, Elt b) const { return d_->table[a][b]; }
    Elt identity() const { return d_->identity; }
    Elt inverse(Elt a) const { return d_->inverse[a]; }
    Elt commutator(Elt a, Elt b) const { return mul(mul(a, b), mul(inverse(a), inverse(b))); }
    const std::string& label(Elt a) const { return d_->labels[a]; }
    const std::vector<std::string>& labels() const { return d_->labels; }
    std::optional<Elt> find(const std::string& label) const;
    const std::string& name() const { return d_->name; }
    const std::vector<std::vector<Elt>>& table() const { return d_->table; }
    nlohmann::json to_json() const;
    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.d_ == b.d_ || a.table() == b.table(); }

    bool is_abelian() const;
    size_t element_order(Elt a) const;
    std::vector<Elt> center() const;
    std::vector<Elt> derived_subgroup() const;
    // Sorted subgroup generated by the given elements.
    std::vector<Elt> generate(const std::vector<Elt>& gens) const;
    bool is_subgroup(const std::vector<Elt>& s) const;
    bool is_normal(const std::vector<Elt>& s) const;
    bool is_central(const std::vector<Elt>& s) const;
    // The subgroup as a group in its own right, elements in the given order.
    FiniteGroup subgroup(const std::vector<Elt>& s) const;

private:
    struct Data {
        std::vector<std::vector<Elt>> table;
        std::vector<Elt> inverse;
        Elt identity = 0;
        std::vector<std::string> labels;
        std::string name;
    };
    std::shared_ptr<const Data> d_;
};

class GroupHom {
public:
    GroupHom() = default;
    // values[x] = f(x); the homomorphism law is checked.
    GroupHom(FiniteGroup dom, FiniteGroup cod, std::vector<Elt> values);
    static GroupHom identity(const FiniteGroup& g);
    // Inclusion of g.subgroup(s) into g.
    static GroupHom inclusion(const FiniteGroup& g, const std::vector<Elt>& s);

    const FiniteGroup& dom() const { return dom_; }
    const FiniteGroup& cod() const { return cod_; }
    Elt operator()(Elt x) const { return values_[x]; }
    const std::vector<Elt>& values() const { return values_; }
    std::vector<Elt> kernel() const;
    bool is_surjective() const;

private:
    FiniteGroup dom_, cod_;
    std::vector<Elt> values_;
};

GroupHom compose(const GroupHom& g, const GroupHom& f);

struct Quotient {
    FiniteGroup group;
    GroupHom projection;
};

// G/N for a normal subgroup N; cosets are ordered by their smallest element.
Quotient quotient(const FiniteGroup& g, const std::vector<Elt>& normal);

// Invariant factors of the abelianization G/G'.
FgAb abelian_invariants(const FiniteGroup& g);

class GroupError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace h3
