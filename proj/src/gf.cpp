#include "stab/gf.hpp"
#include "stab/error.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace stab {

namespace {

using Digits = std::vector<uint8_t>; // polynomial over F_p, little-endian

Digits decode(unsigned v, unsigned p, unsigned k) {
    Digits d(k, 0);
    for (unsigned i = 0; i < k; ++i) {
        d[i] = static_cast<uint8_t>(v % p);
        v /= p;
    }
    return d;
}

unsigned encode(const Digits& d, unsigned p) {
    unsigned v = 0;
    for (size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

Digits poly_mul_mod_p(const Digits& a, const Digits& b, unsigned p) {
    Digits out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<uint8_t>((out[i + j] + a[i] * b[j]) % p);
    return out;
}

void poly_trim(Digits& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a by monic b over F_p
Digits poly_rem(Digits a, const Digits& b, unsigned p) {
    poly_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        unsigned coef = a.back(); // b monic
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            unsigned sub = (coef * b[i]) % p;
            a[shift + i] = static_cast<uint8_t>((a[shift + i] + p - sub) % p);
        }
        poly_trim(a);
    }
    return a;
}

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// monic irreducible polynomial of degree k over F_p, found by trial division
Digits find_irreducible(unsigned p, unsigned k) {
    unsigned count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (unsigned tail = 0; tail < count; ++tail) {
        Digits f = decode(tail, p, k);
        f.push_back(1); // monic of degree k
        bool irreducible = true;
        for (unsigned deg = 1; irreducible && 2 * deg <= k; ++deg) {
            unsigned dcount = 1;
            for (unsigned i = 0; i < deg; ++i) dcount *= p;
            for (unsigned dt = 0; dt < dcount; ++dt) {
                Digits g = decode(dt, p, deg);
                g.push_back(1);
                if (poly_rem(f, g, p).empty()) {
                    irreducible = false;
                    break;
                }
            }
        }
        if (irreducible) return f;
    }
    throw error("no irreducible polynomial found"); // unreachable
}

} // namespace

GF::GF(unsigned q) : q_(q) {
    unsigned p = 2;
    while (q % p != 0) ++p;
    if (!is_prime(p)) throw input_error("field order must be a prime power");
    unsigned k = 0, t = q;
    while (t > 1) {
        if (t % p != 0) throw input_error("field order must be a prime power");
        t /= p;
        ++k;
    }
    p_ = p;
    k_ = k;

    Digits f = k > 1 ? find_irreducible(p, k) : Digits{};
    add_.assign(q * q, 0);
    mul_.assign(q * q, 0);
    neg_.assign(q, 0);
    inv_.assign(q, 0);
    for (unsigned a = 0; a < q; ++a) {
        Digits da = decode(a, p, k);
        Digits dneg(k, 0);
        for (unsigned i = 0; i < k; ++i) dneg[i] = static_cast<uint8_t>((p - da[i]) % p);
        neg_[a] = static_cast<uint8_t>(encode(dneg, p));
        for (unsigned b = 0; b < q; ++b) {
            Digits db = decode(b, p, k);
            Digits sum(k, 0);
            for (unsigned i = 0; i < k; ++i) sum[i] = static_cast<uint8_t>((da[i] + db[i]) % p);
            add_[a * q + b] = static_cast<uint8_t>(encode(sum, p));
            Digits prod = poly_mul_mod_p(da, db, p);
            if (k > 1) prod = poly_rem(prod, f, p);
            prod.resize(k, 0);
            mul_[a * q + b] = static_cast<uint8_t>(encode(prod, p));
        }
    }
    for (unsigned a = 1; a < q; ++a)
        for (unsigned b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) {
                inv_[a] = static_cast<uint8_t>(b);
                break;
            }
}

uint8_t GF::inv(uint8_t a) const {
    if (a == 0) throw error("division by zero in F_" + std::to_string(q_));
    return inv_[a];
}

const GF& GF::get(unsigned q) {
    if (q < 2 || q > 256) throw input_error("field order out of supported range [2,256]");
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<GF>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(q);
    if (it == registry.end()) it = registry.emplace(q, std::unique_ptr<GF>(new GF(q))).first;
    return *it->second;
}

} // namespace stab
