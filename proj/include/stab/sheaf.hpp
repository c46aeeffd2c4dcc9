#pragma once

#include "stab/parallel.hpp"
#include "stab/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stab::sheaf {

// Chern data attached to a sheaf surrogate for intersection-theoretic
// interop: c1 coordinates in the N^1 basis, c2 paired against the degree
// (n-2) basis monomials, and (on threefolds) the integrated ch3.
struct ChernRecord {
    std::vector<Scalar> c1;
    std::map<std::vector<int>, Scalar> c2pair;
    std::optional<Scalar> ch3;
};

// Numerical surrogate for a coherent sheaf: P_E^{L_j}(m) = sum_i alpha[j][i] m^i / i!.
struct SheafClass {
    std::string label;
    int dim = 0;
    Scalar rank = Scalar(1);
    std::vector<std::vector<Scalar>> alpha; // [bundle j][coefficient i], i = 0..dim
    std::optional<ChernRecord> chern;

    size_t bundles() const { return alpha.size(); }
    void validate() const; // throws input_error on broken invariants
};

struct StabilityParameter {
    std::vector<Scalar> sigma;

    size_t size() const { return sigma.size(); }
    bool positive() const;
    bool rational() const;
    void validate() const; // entries >= 0, not all zero
};

// The user-supplied bounded family of potential destabilizers.
struct FamilySpec {
    std::vector<SheafClass> candidates;
    std::vector<std::pair<std::string, std::string>> relations; // (sub, super)
};

Poly hilbert_of_bundle(const SheafClass& e, size_t j); // P_E^{L_j}
Poly multi_hilbert(const SheafClass& e, const StabilityParameter& s);
Scalar multiplicity(const SheafClass& e, const StabilityParameter& s); // r^sigma
Poly reduced_hilbert(const SheafClass& e, const StabilityParameter& s);
Scalar mu_hat(const SheafClass& e, const StabilityParameter& s);
Scalar mu_hat_bundle(const SheafClass& e, size_t j);

// poly_compare(p_F, p_E): Less means F is stability-compatible, Equal means
// F destabilises in the semistable sense, Greater destabilises strictly.
Ordering compare_pair(const SheafClass& e, const SheafClass& f, const StabilityParameter& s);

enum class VerdictKind { Stable, StrictlySemistable, Unstable };

struct Verdict {
    VerdictKind kind = VerdictKind::Stable;
    bool vacuous = false;                // empty family
    std::vector<std::string> witnesses;  // Unstable: the first Greater; SS: all Equal
};

// Stability verdict relative to the supplied family (and only to it).
Verdict verdict(const SheafClass& e, const FamilySpec& family, const StabilityParameter& s,
                ExecMode mode = ExecMode::Serial);

enum class BoundDirection { Le, Ge };

// Index j (1-based) with sigma_j != 0 certifying mu_hat^{L_j}(E) <= mu
// (resp. >=); throws if the weighted inequality itself fails.
size_t mu_hat_component_bound(const SheafClass& e, const StabilityParameter& s, const Scalar& mu,
                              BoundDirection dir);

Scalar lps_constant(long long r, int d);
Scalar lps_bound(long long r, int d, const Scalar& mu_max, const Scalar& mu, const Scalar& c,
                 long long n);

// Section-count stability test: sum_j sigma_j h0_j / r_sub vs p_E^sigma(n).
Ordering section_stability_test(const std::vector<Scalar>& h0, const Scalar& sub_multiplicity,
                                const SheafClass& e, const StabilityParameter& s, long long n);
// Polynomial variant: sum_j sigma_j h0_j * P_E^sigma vs P_E^sigma(n) * P_sub^sigma.
Ordering section_stability_test_poly(const std::vector<Scalar>& h0, const SheafClass& esub,
                                     const SheafClass& e, const StabilityParameter& s,
                                     long long n);

} // namespace stab::sheaf
