#include "stab/sheaf.hpp"
#include "stab/error.hpp"

#include <atomic>

namespace stab::sheaf {

void SheafClass::validate() const {
    if (dim < 0) throw input_error("sheaf '" + label + "': negative dimension");
    if (alpha.empty()) throw input_error("sheaf '" + label + "': no Hilbert data");
    if (rank.sign() <= 0) throw input_error("sheaf '" + label + "': rank must be positive");
    for (const auto& row : alpha) {
        if (row.size() != static_cast<size_t>(dim) + 1)
            throw input_error("sheaf '" + label + "': alpha row length != dim+1");
        if (row.back().sign() <= 0)
            throw input_error("sheaf '" + label + "': multiplicity alpha[j][dim] must be positive");
    }
}

bool StabilityParameter::positive() const {
    for (const auto& x : sigma)
        if (x.sign() <= 0) return false;
    return !sigma.empty();
}

bool StabilityParameter::rational() const {
    for (const auto& x : sigma)
        if (!x.is_rational()) return false;
    return true;
}

void StabilityParameter::validate() const {
    if (sigma.empty()) throw input_error("stability parameter is empty");
    bool nonzero = false;
    for (const auto& x : sigma) {
        if (x.sign() < 0) throw input_error("stability parameter has a negative entry");
        nonzero = nonzero || x.sign() > 0;
    }
    if (!nonzero) throw input_error("stability parameter is identically zero");
}

namespace {
void check_lengths(const SheafClass& e, const StabilityParameter& s) {
    if (s.size() != e.bundles())
        throw input_error("sigma length " + std::to_string(s.size()) + " != j0 " +
                          std::to_string(e.bundles()));
    s.validate();
    e.validate();
}

// i! as a scalar
Scalar factorial(int i) {
    Scalar f(1);
    for (int k = 2; k <= i; ++k) f *= Scalar(k);
    return f;
}
} // namespace

Poly hilbert_of_bundle(const SheafClass& e, size_t j) {
    std::vector<Scalar> coeffs(static_cast<size_t>(e.dim) + 1, Scalar(0));
    for (int i = 0; i <= e.dim; ++i)
        coeffs[static_cast<size_t>(i)] = e.alpha[j][static_cast<size_t>(i)] / factorial(i);
    return Poly(std::move(coeffs));
}

Poly multi_hilbert(const SheafClass& e, const StabilityParameter& s) {
    check_lengths(e, s);
    Poly out;
    for (size_t j = 0; j < e.bundles(); ++j)
        out = out + hilbert_of_bundle(e, j).scaled(s.sigma[j]);
    return out;
}

Scalar multiplicity(const SheafClass& e, const StabilityParameter& s) {
    check_lengths(e, s);
    Scalar r(0);
    for (size_t j = 0; j < e.bundles(); ++j)
        r += s.sigma[j] * e.alpha[j][static_cast<size_t>(e.dim)];
    return r;
}

Poly reduced_hilbert(const SheafClass& e, const StabilityParameter& s) {
    return multi_hilbert(e, s).scaled(multiplicity(e, s).inv());
}

Scalar mu_hat(const SheafClass& e, const StabilityParameter& s) {
    if (e.dim == 0) throw input_error("mu_hat undefined in dimension 0");
    Scalar a(0);
    for (size_t j = 0; j < e.bundles(); ++j)
        a += s.sigma[j] * e.alpha[j][static_cast<size_t>(e.dim) - 1];
    return a / multiplicity(e, s);
}

Scalar mu_hat_bundle(const SheafClass& e, size_t j) {
    if (e.dim == 0) throw input_error("mu_hat undefined in dimension 0");
    return e.alpha[j][static_cast<size_t>(e.dim) - 1] / e.alpha[j][static_cast<size_t>(e.dim)];
}

Ordering compare_pair(const SheafClass& e, const SheafClass& f, const StabilityParameter& s) {
    if (e.dim != f.dim) throw input_error("compare_pair: dimension mismatch");
    if (e.bundles() != f.bundles()) throw input_error("compare_pair: j0 mismatch");
    return poly_compare(reduced_hilbert(f, s), reduced_hilbert(e, s));
}

Verdict verdict(const SheafClass& e, const FamilySpec& family, const StabilityParameter& s,
                ExecMode mode) {
    e.validate();
    if (family.candidates.empty()) return Verdict{VerdictKind::Stable, true, {}};
    for (const auto& f : family.candidates) {
        if (f.dim != e.dim) throw input_error("family candidate '" + f.label + "': dim mismatch");
        if (Scalar::cmp(f.rank, e.rank) > 0)
            throw input_error("family candidate '" + f.label + "': rank exceeds target");
        if (f.label == e.label || (f.rank == e.rank && f.alpha == e.alpha))
            throw input_error("family candidate '" + f.label +
                              "' equals the target; candidates must be proper");
    }
    const size_t n = family.candidates.size();
    std::vector<int> results(n, 0); // -1 Less, 0 Equal, 1 Greater
    for_each_index(mode, static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
        Ordering o = compare_pair(e, family.candidates[static_cast<size_t>(i)], s);
        results[static_cast<size_t>(i)] = o == Ordering::Less ? -1 : (o == Ordering::Greater ? 1 : 0);
    });
    for (size_t i = 0; i < n; ++i)
        if (results[i] > 0) return Verdict{VerdictKind::Unstable, false, {family.candidates[i].label}};
    Verdict v;
    v.kind = VerdictKind::Stable;
    for (size_t i = 0; i < n; ++i)
        if (results[i] == 0) {
            v.kind = VerdictKind::StrictlySemistable;
            v.witnesses.push_back(family.candidates[i].label);
        }
    return v;
}

size_t mu_hat_component_bound(const SheafClass& e, const StabilityParameter& s, const Scalar& mu,
                              BoundDirection dir) {
    check_lengths(e, s);
    Scalar weighted = mu_hat(e, s);
    int c = Scalar::cmp(weighted, mu);
    if (dir == BoundDirection::Le && c > 0)
        throw input_error("mu_hat_component_bound: mu_hat^sigma(E) <= mu fails");
    if (dir == BoundDirection::Ge && c < 0)
        throw input_error("mu_hat_component_bound: mu_hat^sigma(E) >= mu fails");
    for (size_t j = 0; j < e.bundles(); ++j) {
        if (s.sigma[j].is_zero()) continue;
        int cj = Scalar::cmp(mu_hat_bundle(e, j), mu);
        if (dir == BoundDirection::Le ? cj <= 0 : cj >= 0) return j + 1;
    }
    throw error("mu_hat_component_bound: no certifying index (unreachable)");
}

Scalar lps_constant(long long r, int d) {
    if (r <= 0) throw input_error("lps_constant: multiplicity must be positive");
    return Scalar(r * r) + Scalar(Rational(r + d, 2)) - Scalar(1);
}

namespace {
Scalar plus_part(const Scalar& x) { return x.sign() > 0 ? x : Scalar(0); }

Scalar pow_scalar(const Scalar& x, int e) {
    Scalar out(1);
    for (int i = 0; i < e; ++i) out *= x;
    return out;
}
} // namespace

Scalar lps_bound(long long r, int d, const Scalar& mu_max, const Scalar& mu, const Scalar& c,
                 long long n) {
    if (r <= 0) throw input_error("lps_bound: multiplicity must be positive");
    if (n <= 0) throw input_error("lps_bound: n must be positive");
    Scalar dfact = factorial(d);
    Scalar first = Scalar(r - 1) / dfact * pow_scalar(plus_part(mu_max + c + Scalar(n)), d);
    Scalar second = Scalar(1) / dfact * pow_scalar(plus_part(mu + c + Scalar(n)), d);
    return first + second;
}

Ordering section_stability_test(const std::vector<Scalar>& h0, const Scalar& sub_multiplicity,
                                const SheafClass& e, const StabilityParameter& s, long long n) {
    check_lengths(e, s);
    if (h0.size() != e.bundles()) throw input_error("section_stability_test: h0 length mismatch");
    for (const auto& h : h0)
        if (h.sign() < 0) throw input_error("section_stability_test: negative h0");
    if (sub_multiplicity.is_zero()) throw input_error("section_stability_test: zero multiplicity");
    Scalar lhs(0);
    for (size_t j = 0; j < e.bundles(); ++j) lhs += s.sigma[j] * h0[j];
    lhs = lhs / sub_multiplicity;
    Scalar rhs = reduced_hilbert(e, s).eval(Scalar(n));
    return ordering_of(Scalar::cmp(lhs, rhs));
}

Ordering section_stability_test_poly(const std::vector<Scalar>& h0, const SheafClass& esub,
                                     const SheafClass& e, const StabilityParameter& s,
                                     long long n) {
    check_lengths(e, s);
    if (h0.size() != e.bundles()) throw input_error("section_stability_test: h0 length mismatch");
    Scalar hsum(0);
    for (size_t j = 0; j < e.bundles(); ++j) hsum += s.sigma[j] * h0[j];
    Poly pe = multi_hilbert(e, s);
    Poly lhs = pe.scaled(hsum);
    Poly rhs = multi_hilbert(esub, s).scaled(pe.eval(Scalar(n)));
    return poly_compare(lhs, rhs);
}

} // namespace stab::sheaf
