#pragma once

#include <string>
#include <vector>

#include "h3/emhom.hpp"
#include "h3/extlab.hpp"
#include "h3/fgab.hpp"
#include "h3/hopf.hpp"
#include "h3/report.hpp"

namespace h3 {

// All finite abelian groups of order <= max_order by invariant factors, trivial group first.
std::vector<FgAb> finite_abelian_groups(size_t max_order);

struct ExtensionEntry {
    std::string id;
    std::string group_file; // relative to the corpus directory
    FiniteGroup g;
    std::vector<std::string> central_subgroup;
    bool stretch = false;
};

struct LambdaEntry {
    std::string id;
    std::string group_file;
    FiniteGroup g;
    std::vector<std::string> central_subgroup;
    std::map<std::string, std::string> images;
    CommutatorProduct s;
};

// Layout of a corpus directory:
//   corpus.json   index of families and (G, A) entries
//   groups/*.json multiplication tables referenced by the index
//   data/*.json   generated reports and certificates (not read by the suite)
struct Corpus {
    std::vector<FgAb> gamma_family;
    size_t suslin_max_order = 36;
    std::vector<FgAb> em_family;
    size_t engine_max_order = 16;
    std::vector<ExtensionEntry> extensions;
    std::vector<LambdaEntry> lambda;

    static Corpus load(const std::string& dir);
};

struct SuiteEntry {
    std::string input;
    Report report;
    double seconds = 0;
};

struct SuiteSection {
    std::string name;
    int criterion = 0;
    std::vector<SuiteEntry> entries;
    bool passed() const;
    double seconds() const;
};

struct SuiteOptions {
    bool stretch = false;
    BarOptions bar;
};

SuiteSection gamma_models_section(const Corpus& c);
SuiteSection gamma_identities_section(const Corpus& c);
SuiteSection ker_psi_section(const Corpus& c);
SuiteSection suslin_section(const Corpus& c);
SuiteSection em_section(const Corpus& c);
SuiteSection engine_section(const Corpus& c);
SuiteSection extension_section(const Corpus& c, const SuiteOptions& opts = {});
SuiteSection lambda_section(const Corpus& c, const SuiteOptions& opts = {});

std::vector<SuiteSection> verify_suite(const Corpus& c, const SuiteOptions& opts = {});

// Timings are left out so that the output is reproducible byte for byte.
nlohmann::ordered_json suite_json(const std::vector<SuiteSection>& sections);
std::string suite_text(const std::vector<SuiteSection>& sections);

// Gamma(A) by both models with every identity check on A.
Report gamma_report(const FgAb& a, size_t cap = 64);
// H_0..H_4 of K(A,2) with H_2 = A, H_3 = 0 and H_4 = Gamma(A) asserted.
Report em_report(const FgAb& a, const EmOptions& opts = {});
// lambda3 class checks, the lambda2 cycle on Q and a certificate round trip.
Report lambda_report(const LambdaEntry& e, const ExtensionContext& cx);

} // namespace h3
