#pragma once

#include <memory>
#include <string>
#include <vector>

#include "h3/barres.hpp"
#include "h3/report.hpp"

namespace h3 {

// A central subgroup A of G contained in G', with Q = G/A.
struct CentralSubgroupData {
    FiniteGroup g;
    std::vector<Elt> a; // sorted element indices of A in G
    FiniteGroup q;
    GroupHom proj; // G -> Q
    GroupHom incl; // A -> G
};

class ValidationError : public std::invalid_argument {
public:
    enum class Kind { not_subgroup, not_central, not_in_derived };
    ValidationError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Checks that a is a central subgroup inside G', including the equivalence of
// A <= G' with the vanishing of H_1(A) -> H_1(G).
CentralSubgroupData validate(const FiniteGroup& g, std::vector<Elt> a);
CentralSubgroupData validate(const FiniteGroup& g, const std::vector<std::string>& labels);

// Bar homology of A, G and Q up to degree 3, shared by all checks.
class ExtensionContext {
public:
    explicit ExtensionContext(CentralSubgroupData data, const BarOptions& opts = {});

    const CentralSubgroupData& data() const { return data_; }
    const GroupHomology& ha() const { return *ha_; }
    const GroupHomology& hg() const { return *hg_; }
    const GroupHomology& hq() const { return *hq_; }
    // rho_*(A (x) H_2(G)) inside H_3(G).
    const SubgroupEmbedding& rho() const { return rho_; }

private:
    CentralSubgroupData data_;
    std::shared_ptr<const GroupHomology> ha_, hg_, hq_;
    SubgroupEmbedding rho_;
};

Report low_degree_triviality(const ExtensionContext& cx);
Report wedge3_composite_trivial(const ExtensionContext& cx);
Report theorem_2torsion(const ExtensionContext& cx);
Report remark_i_check(const ExtensionContext& cx);
Report stammbach_inclusion(const ExtensionContext& cx);
Report cohomology_triviality(const ExtensionContext& cx);
// Informational only: fills invariants, records no checks.
Report exact1_probe(const ExtensionContext& cx);

// Every check above plus the homology invariants.
Report extension_report(const ExtensionContext& cx);
// {input, checks, invariants}
nlohmann::ordered_json extension_json(const ExtensionContext& cx, const Report& r);

} // namespace h3
