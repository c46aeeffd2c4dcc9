#include "stab/poly.hpp"
#include "stab/error.hpp"

namespace stab {

Poly::Poly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(Scalar c) { return Poly(std::vector<Scalar>{std::move(c)}); }

Poly Poly::monomial(Scalar c, size_t degree) {
    std::vector<Scalar> v(degree + 1, Scalar(0));
    v[degree] = std::move(c);
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const Scalar& Poly::leading() const {
    if (coeffs_.empty()) throw error("leading coefficient of zero polynomial");
    return coeffs_.back();
}

long long Poly::field() const {
    long long d = 0;
    for (const auto& c : coeffs_) d = Scalar::join_fields(d, c.quad_d());
    return d;
}

Poly operator+(const Poly& p, const Poly& q) {
    std::vector<Scalar> out(std::max(p.coeffs_.size(), q.coeffs_.size()), Scalar(0));
    for (size_t i = 0; i < out.size(); ++i) out[i] = p.coeff(i) + q.coeff(i);
    return Poly(std::move(out));
}

Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }

Poly Poly::operator-() const {
    std::vector<Scalar> out = coeffs_;
    for (auto& c : out) c = -c;
    return Poly(std::move(out));
}

Poly operator*(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return Poly();
    std::vector<Scalar> out(p.coeffs_.size() + q.coeffs_.size() - 1, Scalar(0));
    for (size_t i = 0; i < p.coeffs_.size(); ++i)
        for (size_t j = 0; j < q.coeffs_.size(); ++j)
            out[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return Poly(std::move(out));
}

Poly Poly::scaled(const Scalar& c) const {
    std::vector<Scalar> out = coeffs_;
    for (auto& x : out) x = x * c;
    return Poly(std::move(out));
}

Scalar Poly::eval(const Scalar& m) const {
    Scalar acc(0);
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * m + coeffs_[i];
    return acc;
}

std::string Poly::str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += coeffs_[i].str();
        if (i > 0) out += "*m^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

Ordering poly_compare(const Poly& p, const Poly& q) {
    Scalar::join_fields(p.field(), q.field());
    size_t top = std::max(p.coeffs().size(), q.coeffs().size());
    for (size_t i = top; i-- > 0;) {
        int c = Scalar::cmp(p.coeff(i), q.coeff(i));
        if (c != 0) return ordering_of(c);
    }
    return Ordering::Equal;
}

BigInt eventual_sign_threshold(const Poly& p) {
    if (p.is_zero()) throw input_error("eventual_sign_threshold of zero polynomial");
    if (p.degree() == 0) return BigInt(0);
    const int lead_sign = p.leading().sign();
    // Cauchy bound: all real roots lie below 1 + max_i |c_i| / |c_deg|
    Scalar maxratio(0);
    Scalar lead_abs = p.leading().abs();
    for (int i = 0; i < p.degree(); ++i) {
        Scalar r = p.coeff(static_cast<size_t>(i)).abs() / lead_abs;
        if (Scalar::cmp(r, maxratio) > 0) maxratio = r;
    }
    BigInt bound = (Scalar(1) + maxratio).ceil();
    if (bound.sign() < 0) bound = BigInt(0);
    BigInt m0 = bound;
    for (BigInt m = bound - BigInt(1); m.sign() >= 0; m = m - BigInt(1)) {
        if (p.eval(Scalar(Rational(m))).sign() == lead_sign)
            m0 = m;
        else
            break;
    }
    return m0;
}

} // namespace stab
