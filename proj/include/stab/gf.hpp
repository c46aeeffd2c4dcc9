#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stab {

// Finite field F_q for a small prime power q (q <= 256), realized as
// F_p[x]/(f) with table-driven arithmetic.  Instances are interned per q, so
// element handles can compare field identity by pointer.
class GF {
public:
    static const GF& get(unsigned q); // throws input_error for bad q

    unsigned q() const { return q_; }
    unsigned p() const { return p_; }
    unsigned degree() const { return k_; }

    uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
    uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * q_ + neg_[b]]; }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
    uint8_t neg(uint8_t a) const { return neg_[a]; }
    uint8_t inv(uint8_t a) const; // throws on 0

private:
    explicit GF(unsigned q);
    unsigned q_, p_, k_;
    std::vector<uint8_t> add_, mul_, neg_, inv_;
};

// Field element handle: value index plus its field.
struct Fq {
    uint8_t v = 0;
    const GF* F = nullptr;

    bool is_zero() const { return v == 0; }
    std::string str() const { return std::to_string(static_cast<int>(v)); }

    friend bool operator==(const Fq& a, const Fq& b) { return a.v == b.v; }
    friend bool operator!=(const Fq& a, const Fq& b) { return a.v != b.v; }
    friend Fq operator+(const Fq& a, const Fq& b) { return {a.F->add(a.v, b.v), a.F}; }
    friend Fq operator-(const Fq& a, const Fq& b) { return {a.F->sub(a.v, b.v), a.F}; }
    friend Fq operator*(const Fq& a, const Fq& b) { return {a.F->mul(a.v, b.v), a.F}; }
    friend Fq operator/(const Fq& a, const Fq& b) { return {a.F->mul(a.v, b.F->inv(b.v)), a.F}; }
    Fq operator-() const { return {F->neg(v), F}; }
    Fq& operator+=(const Fq& o) { v = F->add(v, o.v); return *this; }
    Fq& operator-=(const Fq& o) { v = F->sub(v, o.v); return *this; }
    Fq& operator*=(const Fq& o) { v = F->mul(v, o.v); return *this; }
};

inline Fq zero_like(const Fq& x) { return {0, x.F}; }
inline Fq one_like(const Fq& x) { return {1, x.F}; }

} // namespace stab
