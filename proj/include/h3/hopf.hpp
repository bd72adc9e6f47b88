#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "h3/barres.hpp"
#include "h3/extlab.hpp"
#include "h3/report.hpp"

namespace h3 {

struct FreeLetter {
    std::string symbol;
    int exponent = 1; // +1 or -1
    friend bool operator==(const FreeLetter&, const FreeLetter&) = default;
};

// A word in a free group; no reduction is performed.
class FreeWord {
public:
    FreeWord() = default;
    explicit FreeWord(std::vector<FreeLetter> letters);
    // Space separated letters, each "x" or "x^-1" (also "x^1"); "1" or "" is the empty word.
    static FreeWord parse(const std::string& text);

    const std::vector<FreeLetter>& letters() const { return letters_; }
    FreeWord inverse() const;
    std::string str() const;
    friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
    friend bool operator==(const FreeWord&, const FreeWord&) = default;

private:
    std::vector<FreeLetter> letters_;
};

// The word a b a^-1 b^-1.
FreeWord commutator(const FreeWord& a, const FreeWord& b);

struct CommutatorPair {
    FreeWord a, b;
};
// prod_i [a_i, b_i]; must be nonempty.
using CommutatorProduct = std::vector<CommutatorPair>;

class HopfError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Images of the free generators in a finite group, optionally linked to a
// central subgroup A of G with quotient Q.
class PresSetup {
public:
    PresSetup(FiniteGroup target, std::map<std::string, Elt> images);
    // Images in G; the images in Q are proj of these.
    PresSetup(CentralSubgroupData data, std::map<std::string, Elt> images);
    // Images given by element labels.
    static std::map<std::string, Elt> images_by_label(const FiniteGroup& g,
                                                      const std::map<std::string, std::string>& labels);

    const FiniteGroup& target() const { return target_; }
    const std::map<std::string, Elt>& images() const { return images_; }
    const std::optional<CentralSubgroupData>& link() const { return link_; }
    // The same generators mapped into Q.
    PresSetup on_quotient() const;

private:
    FiniteGroup target_;
    std::map<std::string, Elt> images_;
    std::optional<CentralSubgroupData> link_;
};

Elt evaluate(const FreeWord& w, const PresSetup& setup);
// s_g evaluated in the setup's target.
Elt evaluate(const CommutatorProduct& s, const PresSetup& setup);

// Signed bar tuples of a formula before degenerate tuples are dropped.
struct SignedTuple {
    int sign;
    BarTuple tuple;
};

// Sum over i of [s_{i-1}|a_i] + [s_{i-1}a_i|b_i] - [s_i b_i|a_i] - [s_i|b_i] in the target (usually Q).
std::vector<SignedTuple> lambda2_terms(const CommutatorProduct& s, const PresSetup& setup);
// The 12g + 1 terms of the 3-chain attached to s_g, evaluated in the target (G).
std::vector<SignedTuple> lambda3_terms(const CommutatorProduct& s, const PresSetup& setup);

// Normalized chain of the terms; tuples with an identity entry are dropped.
BarChain normalized_chain(const std::vector<SignedTuple>& terms, const FiniteGroup& g);

class BoundaryError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Requires s_g = 1 in the target; verifies that the boundary vanishes.
BarChain lambda2(const CommutatorProduct& s, const PresSetup& setup);
// Requires a linked setup with s_g in A; verifies that the boundary vanishes,
// throwing BoundaryError listing every term and the nonzero boundary otherwise.
BarChain lambda3(const CommutatorProduct& s, const PresSetup& setup);

struct HopfOptions {
    BarOptions bar;
    // Bounding chain witnesses are computed for groups up to this order.
    size_t witness_max_order = 8;
};

// pi_*[lambda] = 0 in H_3(Q) and 2 [lambda] in rho_*(A (x) H_2(G)).
Report lambda3_class_checks(const CommutatorProduct& s, const PresSetup& setup, const ExtensionContext& cx);

// {group, words, chain: [{coeff, tuple}], checks: {...}} with optional witnesses
// that let check_certificate confirm the class statements without homology bases.
nlohmann::ordered_json lambda2_certificate(const CommutatorProduct& s, const PresSetup& setup,
                                           const HopfOptions& opts = {});
nlohmann::ordered_json lambda3_certificate(const CommutatorProduct& s, const PresSetup& setup,
                                           const ExtensionContext& cx, const HopfOptions& opts = {});

// Independent re-checker working only from the certificate JSON.
Report check_certificate(const nlohmann::json& cert);

} // namespace h3
