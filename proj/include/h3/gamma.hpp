#pragma once

#include <memory>

#include "h3/fgab.hpp"
#include "h3/report.hpp"

namespace h3 {

// Whitehead's quadratic functor on a finitely generated abelian group A, as a
// presented group with the universal quadratic map gamma: A -> Gamma(A) and the
// structure maps Phi: Gamma(A) -> A/2 and Psi: Gamma(A) -> A (x) A.
class GammaGroup {
public:
    enum class Model { oracle, structural };

    const FgAb& source() const { return a_; }
    const FgAb& carrier() const { return pres_.group; }
    Model model() const { return model_; }
    const Presentation& presentation() const { return pres_; }
    const ModTwo& mod_two() const { return *mod2_; }
    const Tensor& tensor() const { return *tensor_; }

    Element gamma_of(const Element& a) const;
    // [a, b] = gamma(a + b) - gamma(a) - gamma(b)
    Element pairing(const Element& a, const Element& b) const;
    const FgAbHom& phi() const { return phi_; }
    const FgAbHom& psi() const { return psi_; }
    // The bilinear pairing as a map A (x) A -> Gamma(A).
    const FgAbHom& bracket() const { return bracket_; }
    // Gamma(f): this -> target with gamma(a) |-> gamma(f(a)).
    FgAbHom induced(const GammaGroup& target, const FgAbHom& f) const;

private:
    friend GammaGroup gamma_oracle(const FgAb& a, size_t cap);
    friend GammaGroup gamma_structural(const FgAb& a);

    GammaGroup(FgAb a, Model model);
    // Symbol combination representing gamma(a).
    IntVec symbols_of(const Element& a) const;
    void finish();

    FgAb a_;
    Model model_ = Model::structural;
    Presentation pres_;
    std::shared_ptr<const ModTwo> mod2_;
    std::shared_ptr<const Tensor> tensor_;
    IntVec strides_; // oracle: index of an element among the symbols w(a)
    FgAbHom phi_, psi_, bracket_;
};

// Presentation on the symbols w(a), a in A, with relations w(a) = w(-a) and the
// seven-term identity for every triple. Requires A finite with |A| <= cap.
GammaGroup gamma_oracle(const FgAb& a, size_t cap = 64);
// Gamma of a direct sum of cyclic groups: per-factor Gamma plus cross tensor terms.
GammaGroup gamma_structural(const FgAb& a);

SubgroupEmbedding ker_psi(const GammaGroup& g);
SubgroupEmbedding ker_psi(const FgAb& a);

// Exactness of Gamma(A) -> A (x) A -> wedge^2 A -> 0 and A (x) A -> Gamma(A) -> A/2 -> 0.
Report verify_gamma_sequences(const FgAb& a);
// [,] o Psi = 2, Psi o [,] = 1 + swap, [a, a] = 2 gamma(a).
Report verify_composites(const FgAb& a);
// 2 ker(Psi) = 0 and Phi vanishes on ker(Psi).
Report ker_psi_to_mod2_is_zero(const FgAb& a);
// Oracle and structural models agree through gamma(a) |-> gamma(a).
Report compare_gamma_models(const FgAb& a, size_t cap = 64);
// ker(Psi) against Tor(A, A)^{Sigma_2} modulo the image of (Delta mu)_*.
Report ker_psi_tor_identity(const FgAb& a);
// |H_3(A)| = |wedge^3 A| * |Tor(A, A)^{Sigma_2}|
Report suslin_order_check(const FgAb& a);

} // namespace h3
