#include "stab/bigint.hpp"
#include "stab/error.hpp"

#include <algorithm>

namespace stab {

namespace {
constexpr uint64_t BASE = 1ull << 32;
}

BigInt::BigInt(long long v) {
    neg_ = v < 0;
    unsigned long long u = neg_ ? (~static_cast<unsigned long long>(v) + 1ull)
                                : static_cast<unsigned long long>(v);
    while (u) {
        mag_.push_back(static_cast<uint32_t>(u & 0xffffffffull));
        u >>= 32;
    }
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) neg_ = false;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> out(big.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < big.size(); ++i) {
        uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0u);
        out[i] = static_cast<uint32_t>(s & 0xffffffffull);
        carry = s >> 32;
    }
    out[big.size()] = static_cast<uint32_t>(carry);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (s < 0) {
            s += static_cast<int64_t>(BASE);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out[i] = static_cast<uint32_t>(s);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> out(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = static_cast<uint64_t>(a[i]) * b[j] + out[i + j] + carry;
            out[i + j] = static_cast<uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = out[k] + carry;
            out[k] = static_cast<uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// Knuth algorithm D on 32-bit limbs.
void BigInt::divmod_mag(const std::vector<uint32_t>& u_in, const std::vector<uint32_t>& v_in,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    if (v_in.empty()) throw error("division by zero");
    if (cmp_mag(u_in, v_in) < 0) {
        q.clear();
        r = u_in;
        return;
    }
    if (v_in.size() == 1) {
        uint64_t d = v_in[0];
        q.assign(u_in.size(), 0);
        uint64_t rem = 0;
        for (size_t i = u_in.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | u_in[i];
            q[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r.clear();
        if (rem) r.push_back(static_cast<uint32_t>(rem));
        return;
    }

    const size_t n = v_in.size();
    const size_t m = u_in.size() - n;

    // normalize so the top limb of v has its high bit set
    int shift = 0;
    {
        uint32_t top = v_in.back();
        while (!(top & 0x80000000u)) {
            top <<= 1;
            ++shift;
        }
    }
    auto shl = [&](const std::vector<uint32_t>& x, size_t extra) {
        std::vector<uint32_t> out(x.size() + extra, 0);
        uint32_t carry = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            out[i] = (shift ? (x[i] << shift) | carry : x[i]);
            carry = shift ? static_cast<uint32_t>(static_cast<uint64_t>(x[i]) >> (32 - shift)) : 0;
        }
        if (x.size() < out.size()) out[x.size()] = carry;
        return out;
    };
    std::vector<uint32_t> u = shl(u_in, 1);
    std::vector<uint32_t> v = shl(v_in, 0);
    if (u.size() < u_in.size() + 1) u.resize(u_in.size() + 1, 0);

    q.assign(m + 1, 0);
    const uint64_t vtop = v[n - 1];
    const uint64_t vsecond = v[n - 2];

    for (size_t j = m + 1; j-- > 0;) {
        uint64_t numer = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qhat = numer / vtop;
        uint64_t rhat = numer % vtop;
        if (qhat >= BASE) {
            qhat = BASE - 1;
            rhat = numer - qhat * vtop;
        }
        while (rhat < BASE && qhat * vsecond > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += vtop;
        }
        // multiply-subtract
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            int64_t t = static_cast<int64_t>(u[i + j]) - borrow - static_cast<int64_t>(p & 0xffffffffull);
            if (t < 0) {
                t += static_cast<int64_t>(BASE);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<uint32_t>(t);
        }
        int64_t t = static_cast<int64_t>(u[j + n]) - borrow - static_cast<int64_t>(carry);
        if (t < 0) {
            // qhat was one too large: add v back
            --qhat;
            uint64_t c2 = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
                u[i + j] = static_cast<uint32_t>(s & 0xffffffffull);
                c2 = s >> 32;
            }
            t += static_cast<int64_t>(c2);
        }
        u[j + n] = static_cast<uint32_t>(t);
        q[j] = static_cast<uint32_t>(qhat);
    }

    while (!q.empty() && q.back() == 0) q.pop_back();
    // denormalize remainder
    r.assign(u.begin(), u.begin() + n);
    if (shift) {
        uint32_t carry = 0;
        for (size_t i = r.size(); i-- > 0;) {
            uint32_t cur = r[i];
            r[i] = (cur >> shift) | carry;
            carry = static_cast<uint32_t>(static_cast<uint64_t>(cur) << (32 - shift));
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    if (!out.mag_.empty()) out.neg_ = !out.neg_;
    return out;
}

BigInt BigInt::abs() const {
    BigInt out = *this;
    out.neg_ = false;
    return out;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt out;
    if (a.neg_ == b.neg_) {
        out.mag_ = BigInt::add_mag(a.mag_, b.mag_);
        out.neg_ = a.neg_;
    } else {
        int c = BigInt::cmp_mag(a.mag_, b.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            out.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
            out.neg_ = a.neg_;
        } else {
            out.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
            out.neg_ = b.neg_;
        }
    }
    out.trim();
    return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt out;
    out.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
    out.neg_ = !out.mag_.empty() && (a.neg_ != b.neg_);
    return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    std::vector<uint32_t> qm, rm;
    divmod_mag(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    q.neg_ = !q.mag_.empty() && (a.neg_ != b.neg_);
    r.mag_ = std::move(rm);
    r.neg_ = !r.mag_.empty() && a.neg_;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

bool operator==(const BigInt& a, const BigInt& b) {
    return a.neg_ == b.neg_ && a.mag_ == b.mag_;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_ ? -1 : 1;
    int c = cmp_mag(a.mag_, b.mag_);
    return a.neg_ ? -c : c;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.neg_ = false;
    b.neg_ = false;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInt BigInt::pow(unsigned e) const {
    BigInt base = *this, out(1);
    while (e) {
        if (e & 1u) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

size_t BigInt::bit_length() const {
    if (mag_.empty()) return 0;
    uint32_t top = mag_.back();
    size_t bits = (mag_.size() - 1) * 32;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

BigInt BigInt::isqrt(const BigInt& a) {
    if (a.sign() < 0) throw error("isqrt of negative value");
    if (a.is_zero()) return BigInt();
    // Newton iteration with an over-estimate start
    BigInt x(1);
    size_t half = (a.bit_length() + 1) / 2;
    for (size_t i = 0; i < half + 1; ++i) x = x + x; // 2^(half+1) > sqrt(a)
    while (true) {
        BigInt y = (x + a / x) / BigInt(2);
        if (y >= x) break;
        x = y;
    }
    while (x * x > a) x = x - BigInt(1);
    return x;
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 2) return false;
    if (mag_.size() < 2) return true;
    uint64_t v = (static_cast<uint64_t>(mag_[1]) << 32) | mag_[0];
    return neg_ ? v <= (1ull << 63) : v < (1ull << 63);
}

long long BigInt::to_int64() const {
    if (!fits_int64()) throw input_error("BigInt out of int64 range");
    uint64_t v = 0;
    if (mag_.size() > 1) v = static_cast<uint64_t>(mag_[1]) << 32;
    if (!mag_.empty()) v |= mag_[0];
    return neg_ ? -static_cast<long long>(v) : static_cast<long long>(v);
}

BigInt BigInt::from_string(std::string_view s) {
    BigInt out;
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i >= s.size()) throw input_error("empty integer literal");
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw input_error("bad integer literal: " + std::string(s));
        out = out * BigInt(10) + BigInt(s[i] - '0');
    }
    out.neg_ = neg && !out.mag_.empty();
    return out;
}

std::string BigInt::to_string() const {
    if (mag_.empty()) return "0";
    std::vector<uint32_t> chunks; // base 10^9, little-endian
    BigInt cur = abs();
    const BigInt chunk(1000000000);
    while (!cur.is_zero()) {
        BigInt q, r;
        divmod(cur, chunk, q, r);
        chunks.push_back(r.mag_.empty() ? 0u : r.mag_[0]);
        cur = std::move(q);
    }
    std::string out = neg_ ? "-" : "";
    out += std::to_string(chunks.back());
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        out += std::string(9 - part.size(), '0') + part;
    }
    return out;
}

} // namespace stab
