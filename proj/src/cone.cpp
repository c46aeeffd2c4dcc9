#include "stab/cone.hpp"
#include "stab/error.hpp"

#include <algorithm>

namespace stab::cone {

void IntersectionTensor::validate() const {
    if (n < 2) throw input_error("tensor: ambient dimension must be >= 2");
    if (rho < 1) throw input_error("tensor: Picard rank must be >= 1");
    for (const auto& [idx, val] : entries) {
        if (idx.size() != static_cast<size_t>(n)) throw input_error("tensor: index size != n");
        if (!std::is_sorted(idx.begin(), idx.end())) throw input_error("tensor: index not sorted");
        for (int i : idx)
            if (i < 0 || i >= rho) throw input_error("tensor: index out of range");
        (void)val;
    }
}

Scalar IntersectionTensor::entry(std::vector<int> idx) const {
    std::sort(idx.begin(), idx.end());
    auto it = entries.find(idx);
    return it == entries.end() ? Scalar(0) : it->second;
}

Scalar eval(const IntersectionTensor& t, const std::vector<DivisorClass>& classes) {
    if (classes.size() != static_cast<size_t>(t.n)) throw input_error("eval: arity != n");
    for (const auto& c : classes)
        if (c.coords.size() != static_cast<size_t>(t.rho)) throw input_error("eval: class rank mismatch");
    Scalar out(0);
    std::vector<int> tuple(static_cast<size_t>(t.n), 0);
    while (true) {
        Scalar prod(1);
        for (size_t p = 0; p < tuple.size(); ++p)
            prod *= classes[p].coords[static_cast<size_t>(tuple[p])];
        if (!prod.is_zero()) out += prod * t.entry(tuple);
        size_t pos = 0;
        while (pos < tuple.size() && ++tuple[pos] == t.rho) {
            tuple[pos] = 0;
            ++pos;
        }
        if (pos == tuple.size()) break;
    }
    return out;
}

Scalar pair_deg2(const std::map<std::vector<int>, Scalar>& table, const IntersectionTensor& t,
                 const DivisorClass& d) {
    const size_t deg = static_cast<size_t>(t.n) - 2;
    if (deg == 0) {
        auto it = table.find({});
        return it == table.end() ? Scalar(0) : it->second;
    }
    Scalar out(0);
    std::vector<int> tuple(deg, 0);
    while (true) {
        Scalar prod(1);
        for (size_t p = 0; p < deg; ++p) prod *= d.coords[static_cast<size_t>(tuple[p])];
        if (!prod.is_zero()) {
            std::vector<int> key = tuple;
            std::sort(key.begin(), key.end());
            auto it = table.find(key);
            if (it != table.end()) out += prod * it->second;
        }
        size_t pos = 0;
        while (pos < deg && ++tuple[pos] == t.rho) {
            tuple[pos] = 0;
            ++pos;
        }
        if (pos == deg) break;
    }
    return out;
}

Scalar curve_pair(const CurveClass& gamma, const DivisorClass& d) {
    if (gamma.pair.size() != d.coords.size()) throw input_error("curve pairing rank mismatch");
    Scalar out(0);
    for (size_t i = 0; i < d.coords.size(); ++i) out += gamma.pair[i] * d.coords[i];
    return out;
}

Mat<Scalar> q_form_matrix(const IntersectionTensor& t, const DivisorClass& l) {
    t.validate();
    Mat<Scalar> a(static_cast<size_t>(t.rho), static_cast<size_t>(t.rho), Scalar(0));
    std::vector<DivisorClass> args(static_cast<size_t>(t.n), l);
    for (int i = 0; i < t.rho; ++i)
        for (int j = i; j < t.rho; ++j) {
            DivisorClass ei, ej;
            ei.coords.assign(static_cast<size_t>(t.rho), Scalar(0));
            ej.coords.assign(static_cast<size_t>(t.rho), Scalar(0));
            ei.coords[static_cast<size_t>(i)] = Scalar(1);
            ej.coords[static_cast<size_t>(j)] = Scalar(1);
            args[0] = ei;
            args[1] = ej;
            Scalar v = eval(t, args);
            a.at(static_cast<size_t>(i), static_cast<size_t>(j)) = v;
            a.at(static_cast<size_t>(j), static_cast<size_t>(i)) = v;
        }
    return a;
}

SignatureResult signature(const Mat<Scalar>& sym) {
    if (sym.rows() != sym.cols()) throw input_error("signature: matrix not square");
    Mat<Scalar> m = sym;
    std::vector<bool> done(m.rows(), false);
    SignatureResult out;
    size_t remaining = m.rows();
    while (remaining > 0) {
        // prefer a nonzero diagonal pivot
        size_t piv = m.rows();
        for (size_t i = 0; i < m.rows(); ++i)
            if (!done[i] && !m.at(i, i).is_zero()) {
                piv = i;
                break;
            }
        if (piv == m.rows()) {
            // all live diagonal entries vanish; look for an off-diagonal pair
            size_t a = m.rows(), b = m.rows();
            for (size_t i = 0; i < m.rows() && a == m.rows(); ++i) {
                if (done[i]) continue;
                for (size_t j = i + 1; j < m.rows(); ++j) {
                    if (done[j]) continue;
                    if (!m.at(i, j).is_zero()) {
                        a = i;
                        b = j;
                        break;
                    }
                }
            }
            if (a == m.rows()) {
                out.zero += static_cast<int>(remaining);
                return out;
            }
            // row/column addition makes the (a,a) entry 2*m[a][b] != 0
            for (size_t c = 0; c < m.cols(); ++c) m.at(a, c) += m.at(b, c);
            for (size_t r = 0; r < m.rows(); ++r) m.at(r, a) += m.at(r, b);
            piv = a;
        }
        Scalar d = m.at(piv, piv);
        if (d.sign() > 0)
            ++out.pos;
        else
            ++out.neg;
        done[piv] = true;
        --remaining;
        for (size_t r = 0; r < m.rows(); ++r) {
            if (done[r] || m.at(r, piv).is_zero()) continue;
            Scalar f = m.at(r, piv) / d;
            for (size_t c = 0; c < m.cols(); ++c) m.at(r, c) -= f * m.at(piv, c);
        }
        for (size_t c = 0; c < m.cols(); ++c) {
            if (done[c] || m.at(piv, c).is_zero()) continue;
            Scalar f = m.at(piv, c) / d;
            for (size_t r = 0; r < m.rows(); ++r) m.at(r, c) -= f * m.at(r, piv);
        }
    }
    return out;
}

bool kplus_contains(const IntersectionTensor& t, const DivisorClass& l, const DivisorClass& beta) {
    std::vector<DivisorClass> args(static_cast<size_t>(t.n), l);
    args[0] = beta;
    args[1] = beta;
    if (eval(t, args).sign() <= 0) return false;
    args[1] = l;
    return eval(t, args).sign() > 0;
}

DivisorClass lefschetz_solve(const IntersectionTensor& t, const DivisorClass& l,
                             const CurveClass& gamma) {
    if (gamma.pair.size() != static_cast<size_t>(t.rho))
        throw input_error("lefschetz_solve: curve class rank mismatch");
    Mat<Scalar> a = q_form_matrix(t, l);
    auto x = a.solve(gamma.pair);
    if (!x || a.rank() != static_cast<size_t>(t.rho))
        throw infeasible_error("q-form matrix singular: Hodge failure for this (tensor, L)");
    return DivisorClass{*x};
}

std::optional<DivisorClass> cplus_witness(const IntersectionTensor& t, const CurveClass& gamma,
                                          const DivisorClass& l) {
    DivisorClass beta = lefschetz_solve(t, l, gamma);
    if (kplus_contains(t, l, beta)) return beta;
    return std::nullopt;
}

namespace {
Scalar c1sq_pair(const ChernData& f, const IntersectionTensor& t, const DivisorClass& l) {
    std::vector<DivisorClass> args(static_cast<size_t>(t.n), l);
    args[0] = f.c1;
    args[1] = f.c1;
    return eval(t, args);
}
} // namespace

Scalar discriminant_pair(const ChernData& f, const IntersectionTensor& t, const DivisorClass& l) {
    if (f.rank.sign() <= 0) throw input_error("discriminant: rank must be positive");
    Scalar c2l = pair_deg2(f.c2pair, t, l);
    Scalar c1sq = c1sq_pair(f, t, l);
    Scalar r = f.rank;
    return (c2l - (r - Scalar(1)) / (Scalar(2) * r) * c1sq) / r;
}

DivisorClass xi(const ChernData& gprime, const ChernData& g) {
    if (gprime.rank.sign() <= 0 || g.rank.sign() <= 0)
        throw input_error("xi: ranks must be positive");
    DivisorClass out;
    out.coords.resize(g.c1.coords.size(), Scalar(0));
    for (size_t i = 0; i < out.coords.size(); ++i)
        out.coords[i] = gprime.c1.coords[i] / gprime.rank - g.c1.coords[i] / g.rank;
    return out;
}

bool bogomolov_unstable(const ChernData& f, const IntersectionTensor& t, const DivisorClass& l,
                        const Scalar& beta_const) {
    if (beta_const.sign() < 0) throw input_error("bogomolov: beta constant must be >= 0");
    Scalar r = f.rank;
    Scalar lhs = discriminant_pair(f, t, l) + r * r * (r - Scalar(1)) * (r - Scalar(1)) * beta_const;
    return lhs.sign() < 0;
}

IdentityReport extension_discriminant_identity(const ChernData& a, const ChernData& b,
                                               const IntersectionTensor& t, const DivisorClass& l) {
    if (a.rank.sign() <= 0 || b.rank.sign() <= 0)
        throw input_error("extension identity: ranks must be positive");
    Scalar p = a.rank, q = b.rank, r = p + q;
    // c(E) = c(A) c(B): c1 additive, c2(E) = c2(A) + c2(B) + c1(A) c1(B)
    std::vector<DivisorClass> args(static_cast<size_t>(t.n), l);
    args[0] = a.c1;
    args[1] = b.c1;
    Scalar cross = eval(t, args);
    Scalar c2e = pair_deg2(a.c2pair, t, l) + pair_deg2(b.c2pair, t, l) + cross;
    Scalar c1sq_a = c1sq_pair(a, t, l);
    Scalar c1sq_b = c1sq_pair(b, t, l);
    Scalar c1sq_e = c1sq_a + Scalar(2) * cross + c1sq_b;
    auto delta_std = [](const Scalar& rank, const Scalar& c2, const Scalar& c1sq) {
        return Scalar(2) * rank * c2 - (rank - Scalar(1)) * c1sq;
    };
    Scalar lhs = delta_std(r, c2e, c1sq_e) / r -
                 delta_std(p, pair_deg2(a.c2pair, t, l), c1sq_a) / p -
                 delta_std(q, pair_deg2(b.c2pair, t, l), c1sq_b) / q;
    // rhs = -(pq/r) xi^2 L^(n-2)
    DivisorClass x = xi(a, b);
    args[0] = x;
    args[1] = x;
    Scalar rhs = Scalar(0) - p * q / r * eval(t, args);
    return IdentityReport{lhs, rhs, lhs == rhs};
}

bool crossterm_nondegenerate(const CurveClass& g0, const CurveClass& ginf, const DivisorClass& l1,
                             const DivisorClass& l2) {
    Scalar det = curve_pair(ginf, l1) * curve_pair(g0, l2) -
                 curve_pair(ginf, l2) * curve_pair(g0, l1);
    return !det.is_zero();
}

PathResult cplus_path_certificate(const IntersectionTensor& t, const CurveClass& g0,
                                  const CurveClass& ginf, const DivisorClass& l1,
                                  const DivisorClass& l2, int t_samples, int s_resolution,
                                  ExecMode mode) {
    t.validate();
    if (t_samples < 2) throw input_error("path certificate: need at least 2 samples");
    if (!cplus_witness(t, g0, l2))
        throw input_error("path certificate: gamma_0 not certified in L2^(n-2) K+_{L2}");
    if (!cplus_witness(t, ginf, l1))
        throw input_error("path certificate: gamma_inf not certified in L1^(n-2) K+_{L1}");

    PathResult out;
    out.certificates.resize(static_cast<size_t>(t_samples));
    for_each_index(mode, t_samples, [&](std::ptrdiff_t k) {
        Rational u(k, t_samples - 1);
        CurveClass gu;
        gu.pair.resize(g0.pair.size());
        for (size_t i = 0; i < g0.pair.size(); ++i)
            gu.pair[i] = (Scalar(1) - Scalar(u)) * g0.pair[i] + Scalar(u) * ginf.pair[i];
        PathCertificate cert;
        cert.u = u;
        // dyadic refinement over s in [0,1], coarse levels first
        for (int level = 0; level <= s_resolution && !cert.ok; ++level) {
            long long den = 1ll << level;
            for (long long num = 0; num <= den && !cert.ok; ++num) {
                if (level > 0 && num % 2 == 0) continue; // already tested at a coarser level
                Rational s(num, den);
                DivisorClass ls;
                ls.coords.resize(l1.coords.size());
                for (size_t i = 0; i < l1.coords.size(); ++i)
                    ls.coords[i] = (Scalar(1) - Scalar(s)) * l2.coords[i] + Scalar(s) * l1.coords[i];
                std::optional<DivisorClass> beta;
                try {
                    beta = cplus_witness(t, gu, ls);
                } catch (const infeasible_error&) {
                    continue; // singular q-form along the segment; keep searching
                }
                if (beta) {
                    cert.ok = true;
                    cert.s = s;
                    cert.beta = *beta;
                }
            }
        }
        out.certificates[static_cast<size_t>(k)] = std::move(cert);
    });
    out.all_ok = true;
    for (const auto& c : out.certificates) out.all_ok = out.all_ok && c.ok;
    return out;
}

namespace {

IntersectionTensor make_tensor(int n, int rho,
                               std::vector<std::pair<std::vector<int>, long long>> data) {
    IntersectionTensor t;
    t.n = n;
    t.rho = rho;
    for (auto& [idx, val] : data) t.entries[idx] = Scalar(val);
    return t;
}

DivisorClass dc(std::vector<long long> v) {
    DivisorClass d;
    for (long long x : v) d.coords.push_back(Scalar(x));
    return d;
}

std::vector<BundledTensor> build_bundled() {
    std::vector<BundledTensor> out;
    out.push_back({"P2", make_tensor(2, 1, {{{0, 0}, 1}}),
                   {dc({1}), dc({2}), dc({3}), dc({4}), dc({5})}});
    out.push_back({"P1xP1", make_tensor(2, 2, {{{0, 1}, 1}}),
                   {dc({1, 1}), dc({1, 2}), dc({2, 1}), dc({1, 3}), dc({3, 2})}});
    // Bl1P2 in the (H, E) basis: H^2 = 1, HE = 0, E^2 = -1; ample aH - bE needs a > b > 0
    out.push_back({"Bl1P2", make_tensor(2, 2, {{{0, 0}, 1}, {{1, 1}, -1}}),
                   {dc({2, -1}), dc({3, -1}), dc({3, -2}), dc({4, -3}), dc({5, -2})}});
    out.push_back({"P3", make_tensor(3, 1, {{{0, 0, 0}, 1}}),
                   {dc({1}), dc({2}), dc({3}), dc({4}), dc({5})}});
    out.push_back({"P1xP1xP1", make_tensor(3, 3, {{{0, 1, 2}, 1}}),
                   {dc({1, 1, 1}), dc({1, 2, 1}), dc({2, 1, 1}), dc({1, 1, 3}), dc({2, 3, 1})}});
    // P1 x P2: D1 = point pullback, D2 = hyperplane pullback; D1 D2^2 = 1, D2^3 = 0
    out.push_back({"P1xP2", make_tensor(3, 2, {{{0, 1, 1}, 1}}),
                   {dc({1, 1}), dc({1, 2}), dc({2, 1}), dc({3, 1}), dc({1, 3})}});
    return out;
}

} // namespace

const std::vector<BundledTensor>& bundled_tensors() {
    static const std::vector<BundledTensor> tensors = build_bundled();
    return tensors;
}

const BundledTensor& bundled_tensor(const std::string& name) {
    for (const auto& t : bundled_tensors())
        if (t.name == name) return t;
    throw input_error("unknown bundled tensor: " + name);
}

} // namespace stab::cone
