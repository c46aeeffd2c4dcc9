#pragma once

#include "stab/rational.hpp"

#include <string>
#include <string_view>

namespace stab {

enum class Ordering { Less, Equal, Greater };

inline Ordering ordering_of(int cmp) {
    return cmp < 0 ? Ordering::Less : (cmp > 0 ? Ordering::Greater : Ordering::Equal);
}

inline const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "Less";
        case Ordering::Greater: return "Greater";
        default: return "Equal";
    }
}

// Element of a computable ordered field: the rationals (d == 0) or the real
// quadratic extension Q(sqrt(d)) for a square-free integer d >= 2.  The field
// descriptor d travels with the value; rationals embed into every QuadExt, so
// binary operations join fields and only genuinely incompatible extensions
// (different d) raise field_mismatch.
class Scalar {
public:
    Scalar() : a_(0), b_(0), d_(0) {}
    Scalar(long long v) : a_(v), b_(0), d_(0) {}
    Scalar(Rational r) : a_(std::move(r)), b_(0), d_(0) {}
    static Scalar quad(Rational a, Rational b, long long d);

    static Scalar parse(std::string_view s);
    std::string str() const;

    // 0 when the value carries no irrational part (field may still be a QuadExt)
    long long quad_d() const { return d_; }
    bool is_rational() const { return b_.is_zero(); }
    const Rational& rat_part() const { return a_; }
    const Rational& quad_part() const { return b_; }
    // Value as a rational; throws when the irrational part is nonzero.
    const Rational& as_rational() const;

    int sign() const;
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    Scalar operator-() const;
    Scalar abs() const { return sign() < 0 ? -*this : *this; }
    Scalar inv() const;

    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    friend Scalar operator/(const Scalar& x, const Scalar& y);
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    static int cmp(const Scalar& x, const Scalar& y) { return (x - y).sign(); }
    friend bool operator==(const Scalar& x, const Scalar& y) { return (x - y).is_zero(); }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
    friend bool operator<(const Scalar& x, const Scalar& y) { return cmp(x, y) < 0; }
    friend bool operator>(const Scalar& x, const Scalar& y) { return cmp(x, y) > 0; }
    friend bool operator<=(const Scalar& x, const Scalar& y) { return cmp(x, y) <= 0; }
    friend bool operator>=(const Scalar& x, const Scalar& y) { return cmp(x, y) >= 0; }

    BigInt floor() const;
    BigInt ceil() const;

    // Common field of two descriptors; throws field_mismatch when neither
    // embeds into the other.
    static long long join_fields(long long d1, long long d2);

private:
    Rational a_, b_; // value = a + b*sqrt(d)
    long long d_;    // 0 for plain rationals

    void normalize();
};

Scalar sqrt_symbol(long long d); // the element sqrt(d) of QuadExt(d)

} // namespace stab
