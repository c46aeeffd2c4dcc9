#include "stab/scalar.hpp"
#include "stab/error.hpp"

namespace stab {

namespace {
// UTF-8 encoding of the radical sign used in the wire format "3/4+5/2√2".
const std::string kRadical = "\xe2\x88\x9a";

bool is_squarefree(long long d) {
    for (long long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}
} // namespace

Scalar Scalar::quad(Rational a, Rational b, long long d) {
    if (d < 2) throw input_error("QuadExt requires d >= 2");
    if (!is_squarefree(d)) throw input_error("QuadExt requires square-free d");
    Scalar s;
    s.a_ = std::move(a);
    s.b_ = std::move(b);
    s.d_ = d;
    s.normalize();
    return s;
}

Scalar sqrt_symbol(long long d) { return Scalar::quad(Rational(0), Rational(1), d); }

void Scalar::normalize() {
    // keep the field descriptor sticky even when the irrational part vanishes
    if (d_ == 0 && !b_.is_zero()) throw error("rational scalar with quad part");
}

const Rational& Scalar::as_rational() const {
    if (!b_.is_zero()) throw error("scalar " + str() + " is irrational");
    return a_;
}

long long Scalar::join_fields(long long d1, long long d2) {
    if (d1 == d2) return d1;
    if (d1 == 0) return d2;
    if (d2 == 0) return d1;
    throw field_mismatch("incompatible quadratic fields: sqrt(" + std::to_string(d1) +
                         ") vs sqrt(" + std::to_string(d2) + ")");
}

int Scalar::sign() const {
    if (b_.is_zero()) return a_.sign();
    if (a_.is_zero()) return b_.sign();
    int sa = a_.sign(), sb = b_.sign();
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 d exactly
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * Rational(d_);
    int c = Rational::cmp(lhs, rhs);
    if (c == 0) return 0; // cannot happen for square-free d >= 2, kept for safety
    return c > 0 ? sa : sb;
}

Scalar Scalar::operator-() const {
    Scalar out = *this;
    out.a_ = -out.a_;
    out.b_ = -out.b_;
    return out;
}

Scalar operator+(const Scalar& x, const Scalar& y) {
    Scalar out;
    out.d_ = Scalar::join_fields(x.d_, y.d_);
    out.a_ = x.a_ + y.a_;
    out.b_ = x.b_ + y.b_;
    return out;
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
    Scalar out;
    out.d_ = Scalar::join_fields(x.d_, y.d_);
    out.a_ = x.a_ * y.a_ + x.b_ * y.b_ * Rational(out.d_ == 0 ? 0 : out.d_);
    out.b_ = x.a_ * y.b_ + x.b_ * y.a_;
    return out;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw error("division by zero");
    if (b_.is_zero()) {
        Scalar out;
        out.a_ = a_.inv();
        out.d_ = d_;
        return out;
    }
    // 1/(a+b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d); the norm is nonzero for
    // square-free d.
    Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
    Scalar out;
    out.d_ = d_;
    out.a_ = a_ / norm;
    out.b_ = -b_ / norm;
    return out;
}

Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inv(); }

BigInt Scalar::floor() const {
    if (b_.is_zero()) return a_.floor();
    // bracket b*sqrt(d) by rationals using floor(sqrt(d)) <= sqrt(d) < floor+1
    BigInt s = BigInt::isqrt(BigInt(d_));
    Rational lo_r = b_.sign() > 0 ? Rational(s) : Rational(s + BigInt(1));
    Rational hi_r = b_.sign() > 0 ? Rational(s + BigInt(1)) : Rational(s);
    BigInt lo = (a_ + b_ * lo_r).floor();
    BigInt hi = (a_ + b_ * hi_r).ceil();
    // binary search the integer floor with exact comparisons
    while (lo < hi) {
        BigInt mid = (lo + hi + BigInt(1)) / BigInt(2);
        if ((*this - Scalar(Rational(mid))).sign() >= 0)
            lo = mid;
        else
            hi = mid - BigInt(1);
    }
    return lo;
}

BigInt Scalar::ceil() const { return -((-*this).floor()); }

Scalar Scalar::parse(std::string_view s) {
    if (s.empty()) throw input_error("empty scalar literal");
    size_t rad = s.find(kRadical);
    if (rad == std::string_view::npos) return Scalar(Rational::from_string(s));

    // ...[<a>][+|-]<b>√<d>  where <b> may be empty (meaning 1)
    std::string_view head = s.substr(0, rad);
    std::string_view dpart = s.substr(rad + kRadical.size());
    if (dpart.empty()) throw input_error("missing radicand in scalar: " + std::string(s));
    long long d = BigInt::from_string(dpart).to_int64();

    // split head into rational part and coefficient: scan for the last
    // top-level +/- that is not a leading sign and not inside a fraction
    size_t split = std::string_view::npos;
    for (size_t i = head.size(); i-- > 1;) {
        if (head[i] == '+' || head[i] == '-') {
            if (head[i - 1] == '/' || head[i - 1] == '+' || head[i - 1] == '-') continue;
            split = i;
            break;
        }
    }
    Rational a(0), b(1);
    if (split == std::string_view::npos) {
        if (!head.empty() && head != "+") {
            if (head == "-")
                b = Rational(-1);
            else
                b = Rational::from_string(head);
        }
    } else {
        a = Rational::from_string(head.substr(0, split));
        std::string_view bpart = head.substr(split);
        if (bpart == "+")
            b = Rational(1);
        else if (bpart == "-")
            b = Rational(-1);
        else
            b = Rational::from_string(bpart);
    }
    return Scalar::quad(a, b, d);
}

std::string Scalar::str() const {
    if (b_.is_zero()) return a_.to_string();
    std::string out;
    if (!a_.is_zero()) {
        out = a_.to_string();
        out += b_.sign() > 0 ? "+" : "-";
        out += b_.abs().to_string();
    } else {
        out = b_.to_string();
    }
    out += kRadical + std::to_string(d_);
    return out;
}

} // namespace stab
