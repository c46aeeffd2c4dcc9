#pragma once

#include "stab/scalar.hpp"

#include <vector>

namespace stab {

// Univariate polynomial over Scalar, canonical form: trailing zero
// coefficients trimmed, zero polynomial has an empty coefficient sequence.
// coeffs()[i] is the coefficient of m^i.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Scalar> coeffs);
    static Poly constant(Scalar c);
    static Poly monomial(Scalar c, size_t degree);

    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial reported as -1
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Scalar& leading() const;
    Scalar coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar(0); }
    long long field() const; // joined field descriptor of the coefficients

    friend Poly operator+(const Poly& p, const Poly& q);
    friend Poly operator-(const Poly& p, const Poly& q);
    Poly operator-() const;
    friend Poly operator*(const Poly& p, const Poly& q);
    Poly scaled(const Scalar& c) const;

    friend bool operator==(const Poly& p, const Poly& q) { return p.coeffs_ == q.coeffs_; }
    friend bool operator!=(const Poly& p, const Poly& q) { return !(p == q); }

    Scalar eval(const Scalar& m) const; // exact Horner evaluation

    std::string str() const; // human-readable, highest degree first

private:
    std::vector<Scalar> coeffs_;
    void trim();
};

// The eventual ordering: p <= q iff p(m) <= q(m) for all m >> 0, which is the
// lexicographic order on coefficients from the top degree down.
Ordering poly_compare(const Poly& p, const Poly& q);

// Smallest m0 >= 0 with sign(p(m)) = sign(lead(p)) for all integers m >= m0.
// Computed from the Cauchy root bound and minimized by a downward scan.
// Throws on the zero polynomial.
BigInt eventual_sign_threshold(const Poly& p);

} // namespace stab
