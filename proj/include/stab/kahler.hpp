#pragma once

#include "stab/cone.hpp"
#include "stab/poly.hpp"
#include "stab/sheaf.hpp"

#include <map>
#include <vector>

namespace stab::kahler {

struct SplitResult {
    Scalar lambda; // rational, positive, != 1 whenever tau != theta
    Scalar weight_s, weight_sprime;
};

// Solve s + s' lambda = tau and s + s' lambda^2 = theta with s, s' > 0,
// lambda rational chosen by a fixed deterministic rule.
SplitResult split_pair(const Scalar& tau, const Scalar& theta);
// Same, with a caller-supplied lambda (validated).
SplitResult split_pair_with(const Scalar& tau, const Scalar& theta, const Rational& lambda);

struct OmegaDecomposition {
    std::vector<cone::DivisorClass> classes; // rational coordinates
    std::vector<Scalar> weights;             // positive
    int rank_certificate = 0;
    bool rank_maximal = false;
    // proportionality constants (both 1 outside the reduced mode)
    Scalar alpha1 = Scalar(1), alpha2 = Scalar(1);
};

// Decompose a real ample class: sum w_j L_j = omega and sum w_j L_j^2 =
// alpha1 * omega^2 exactly (alpha1 = 1 by default).  The reduced mode trades
// exact normalization of omega^2 for a smaller class count by merging
// indices whose two weights can be scaled into agreement.
OmegaDecomposition decompose_omega(const cone::IntersectionTensor& tensor,
                                   const cone::DivisorClass& omega,
                                   const std::vector<cone::DivisorClass>& candidates,
                                   bool proportional = false);

// Exact re-verification of both decomposition identities.
bool verify_decomposition(const cone::IntersectionTensor& tensor, const cone::DivisorClass& omega,
                          const OmegaDecomposition& d);

// Chern and Todd pairing data rich enough to assemble Hilbert polynomials on
// surfaces (n = 2) and threefolds (n = 3).
struct ChernTodd {
    Scalar rank = Scalar(1);
    cone::DivisorClass c1;
    std::map<std::vector<int>, Scalar> c2pair;    // c2 . (deg n-2 basis monomials)
    Scalar ch3 = Scalar(0);                       // integral of ch3 (n = 3)
    cone::DivisorClass todd1;
    std::map<std::vector<int>, Scalar> todd2pair; // todd2 . (deg n-2 basis monomials)
    Scalar todd3 = Scalar(0);                     // integral of todd3 (n = 3)
};

// P^omega(m) = integral of ch(E) e^{m omega} Todd(X), assembled exactly from
// the pairing data; degree n with leading coefficient rank * omega^n / n!.
Poly hilbert_poly_omega(const ChernTodd& ch, const cone::IntersectionTensor& tensor,
                        const cone::DivisorClass& omega);

// Sheaf surrogate whose per-bundle Hilbert data comes from the same
// Riemann-Roch assembly evaluated at rational classes.
sheaf::SheafClass sheaf_from_chern(const std::string& label, const ChernTodd& ch,
                                   const cone::IntersectionTensor& tensor,
                                   const std::vector<cone::DivisorClass>& bundles);

} // namespace stab::kahler
