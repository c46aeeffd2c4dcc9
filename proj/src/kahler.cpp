#include "stab/kahler.hpp"
#include "stab/error.hpp"
#include "stab/linfeas.hpp"
#include "stab/matrix.hpp"

#include <functional>

namespace stab::kahler {

namespace {
void check_positive(const Scalar& x, const char* name) {
    if (x.sign() <= 0) throw input_error(std::string("split_pair: ") + name + " must be positive");
}

SplitResult solve_split(const Scalar& tau, const Scalar& theta, const Rational& lambda) {
    Scalar lam{lambda};
    SplitResult out;
    out.lambda = lam;
    if (lambda == Rational(1)) {
        out.weight_s = tau / Scalar(2);
        out.weight_sprime = tau / Scalar(2);
        return out;
    }
    out.weight_sprime = (theta - tau) / (lam * lam - lam);
    out.weight_s = (tau * lam - theta) / (lam - Scalar(1));
    return out;
}
} // namespace

SplitResult split_pair(const Scalar& tau, const Scalar& theta) {
    check_positive(tau, "tau");
    check_positive(theta, "theta");
    int c = Scalar::cmp(tau, theta);
    if (c == 0) return solve_split(tau, theta, Rational(1));
    Rational lambda;
    if (c < 0) {
        // theta > tau: smallest integer beyond theta/tau, at least 2
        BigInt f = (theta / tau).floor() + BigInt(1);
        if (f < BigInt(2)) f = BigInt(2);
        lambda = Rational(f);
    } else {
        // theta < tau: half of theta/tau as the dyadic-style short fraction 1/k
        BigInt k = (Scalar(2) * tau / theta).ceil();
        lambda = Rational(BigInt(1), k);
    }
    return solve_split(tau, theta, lambda);
}

SplitResult split_pair_with(const Scalar& tau, const Scalar& theta, const Rational& lambda) {
    check_positive(tau, "tau");
    check_positive(theta, "theta");
    if (lambda.sign() <= 0) throw input_error("split_pair: lambda must be positive");
    if (tau != theta && lambda == Rational(1))
        throw infeasible_error("split_pair: lambda = 1 cannot reach tau != theta");
    if (tau == theta && lambda != Rational(1))
        throw infeasible_error("split_pair: tau = theta forces lambda = 1");
    SplitResult out = solve_split(tau, theta, lambda);
    if (out.weight_s.sign() <= 0 || out.weight_sprime.sign() <= 0)
        throw infeasible_error("split_pair: supplied lambda gives nonpositive weights");
    return out;
}

namespace {

// degree-(n-2) basis monomials as sorted index multisets
std::vector<std::vector<int>> monomials_deg(int rho, int deg) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == deg) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < rho; ++i) {
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// pairing vector of D^2 against the deg-(n-2) monomials
std::vector<Scalar> square_pairings(const cone::IntersectionTensor& t, const cone::DivisorClass& d,
                                    const std::vector<std::vector<int>>& monos) {
    std::vector<Scalar> out;
    for (const auto& mono : monos) {
        std::vector<cone::DivisorClass> args;
        args.push_back(d);
        args.push_back(d);
        for (int i : mono) {
            cone::DivisorClass e;
            e.coords.assign(static_cast<size_t>(t.rho), Scalar(0));
            e.coords[static_cast<size_t>(i)] = Scalar(1);
            args.push_back(e);
        }
        out.push_back(eval(t, args));
    }
    return out;
}

// solution with select indices forced to zero; prefers full support on the
// active indices (strict positivity), falling back to the weak cone
std::optional<std::vector<Scalar>> cone_solution(const std::vector<std::vector<Scalar>>& lhs_rows,
                                                 const std::vector<Scalar>& rhs, size_t nvars,
                                                 const std::vector<bool>& active) {
    for (bool strict : {true, false}) {
        std::vector<LinCon> cons;
        for (size_t r = 0; r < lhs_rows.size(); ++r) cons.push_back(lin_eq(lhs_rows[r], rhs[r]));
        for (size_t j = 0; j < nvars; ++j) {
            std::vector<Scalar> c(nvars, Scalar(0));
            c[j] = Scalar(1);
            if (!active[j])
                cons.push_back(lin_eq(std::move(c), Scalar(0)));
            else
                cons.push_back(strict ? lin_gt(std::move(c), Scalar(0))
                                      : lin_ge(std::move(c), Scalar(0)));
        }
        auto s = linear_feasible_point(cons, nvars);
        if (s) return s;
    }
    return std::nullopt;
}

// kernel directions of the equation rows (columns indexed by candidates)
Mat<Scalar> system_kernel(const std::vector<std::vector<Scalar>>& lhs_rows, size_t nvars) {
    Mat<Scalar> m(lhs_rows.size(), nvars, Scalar(0));
    for (size_t r = 0; r < lhs_rows.size(); ++r)
        for (size_t c = 0; c < nvars; ++c) m.at(r, c) = lhs_rows[r][c];
    return m.kernel();
}

} // namespace

OmegaDecomposition decompose_omega(const cone::IntersectionTensor& tensor,
                                   const cone::DivisorClass& omega,
                                   const std::vector<cone::DivisorClass>& candidates,
                                   bool proportional) {
    tensor.validate();
    if (tensor.n != 2 && tensor.n != 3)
        throw input_error("decompose_omega supports surfaces and threefolds");
    const size_t rho = static_cast<size_t>(tensor.rho);
    if (omega.coords.size() != rho) throw input_error("decompose_omega: omega rank mismatch");
    const size_t k = candidates.size();
    if (k < rho + 1)
        throw infeasible_error("decompose_omega: need at least rho+1 candidates");
    for (const auto& c : candidates) {
        if (c.coords.size() != rho) throw input_error("decompose_omega: candidate rank mismatch");
        for (const auto& x : c.coords)
            if (!x.is_rational()) throw input_error("decompose_omega: candidates must be rational");
    }
    {
        Mat<Scalar> span(k, rho, Scalar(0));
        for (size_t j = 0; j < k; ++j)
            for (size_t b = 0; b < rho; ++b) span.at(j, b) = candidates[j].coords[b];
        if (span.rank() < rho)
            throw infeasible_error("decompose_omega: candidates do not span N^1 (all proportional?)");
    }

    // trivial case: omega is rational and literally one of the candidates
    bool omega_rational = true;
    for (const auto& x : omega.coords) omega_rational = omega_rational && x.is_rational();
    if (omega_rational)
        for (const auto& c : candidates)
            if (c.coords == omega.coords) {
                OmegaDecomposition d;
                d.classes = {c};
                d.weights = {Scalar(1)};
                d.rank_certificate = 1;
                d.rank_maximal = false;
                return d;
            }

    // stage 1 system: omega as a combination of the candidates
    std::vector<std::vector<Scalar>> rows1(rho, std::vector<Scalar>(k, Scalar(0)));
    for (size_t b = 0; b < rho; ++b)
        for (size_t j = 0; j < k; ++j) rows1[b][j] = candidates[j].coords[b];

    // stage 2 system: omega^2 among the candidate squares, paired against
    // every degree-(n-2) basis monomial
    std::vector<std::vector<int>> monos = monomials_deg(tensor.rho, tensor.n - 2);
    std::vector<Scalar> omega_sq = square_pairings(tensor, omega, monos);
    std::vector<std::vector<Scalar>> rows2(monos.size(), std::vector<Scalar>(k, Scalar(0)));
    for (size_t j = 0; j < k; ++j) {
        std::vector<Scalar> sq = square_pairings(tensor, candidates[j], monos);
        for (size_t b = 0; b < monos.size(); ++b) rows2[b][j] = sq[b];
    }

    // solve both cones over a common support: weights must be positive on the
    // same index set, since each index later contributes to both identities
    std::vector<bool> active(k, true);
    std::optional<std::vector<Scalar>> tau, theta;
    while (true) {
        tau = cone_solution(rows1, omega.coords, k, active);
        if (!tau)
            throw infeasible_error(
                "decompose_omega: omega is not in the cone of the candidates; supply more");
        theta = cone_solution(rows2, omega_sq, k, active);
        if (!theta)
            throw infeasible_error(
                "decompose_omega: omega^2 is not in the cone of the candidate squares; supply more");
        bool agree = true;
        std::vector<bool> next(k, false);
        for (size_t j = 0; j < k; ++j) {
            bool st = (*tau)[j].sign() > 0, sh = (*theta)[j].sign() > 0;
            agree = agree && st == sh;
            next[j] = st && sh;
        }
        if (agree) break;
        bool any = false;
        for (size_t j = 0; j < k; ++j) any = any || next[j];
        if (!any)
            throw infeasible_error(
                "decompose_omega: no common candidate support for omega and omega^2");
        active = std::move(next);
    }

    OmegaDecomposition out;

    if (proportional) {
        // scale the theta side so the first supported index merges; records alpha1
        size_t lead = 0;
        while (lead < k && (*tau)[lead].is_zero()) ++lead;
        Scalar c = (*tau)[lead] / (*theta)[lead];
        for (auto& x : *theta) x = x * c;
        out.alpha1 = c;
    } else {
        // deterministic separation: move one solution inside its kernel with a
        // halving offset until tau_j != theta_j, never breaking positivity or
        // a separation already achieved elsewhere
        Mat<Scalar> ker2 = system_kernel(rows2, k);
        Mat<Scalar> ker1 = system_kernel(rows1, k);
        for (size_t j = 0; j < k; ++j) {
            if ((*tau)[j].is_zero()) continue; // outside the support
            if ((*tau)[j] != (*theta)[j]) continue;
            bool fixed = false;
            for (int which = 0; which < 2 && !fixed; ++which) {
                Mat<Scalar>& ker = which == 0 ? ker2 : ker1;
                std::vector<Scalar>& vec = which == 0 ? *theta : *tau;
                const std::vector<Scalar>& other = which == 0 ? *tau : *theta;
                for (size_t t = 0; t < ker.rows() && !fixed; ++t) {
                    if (ker.at(t, j).is_zero()) continue;
                    bool in_support = true;
                    for (size_t u = 0; u < k && in_support; ++u)
                        if ((*tau)[u].is_zero()) in_support = ker.at(t, u).is_zero();
                    if (!in_support) continue; // direction would leave the common support
                    Scalar eps(Rational(1, 2));
                    for (int halvings = 0; halvings < 60 && !fixed; ++halvings) {
                        bool ok = true;
                        for (size_t u = 0; u < k && ok; ++u) {
                            if ((*tau)[u].is_zero()) continue;
                            Scalar moved = vec[u] + eps * ker.at(t, u);
                            if (moved.sign() <= 0) ok = false;
                            // do not collapse a separation that already holds
                            if (ok && u != j && vec[u] != other[u]) ok = moved != other[u];
                        }
                        if (ok) {
                            for (size_t u = 0; u < k; ++u) vec[u] += eps * ker.at(t, u);
                            fixed = true; // index j separates since ker(t,j) != 0
                        }
                        eps = eps / Scalar(2);
                    }
                }
            }
            // with no usable kernel direction the index stays merged (lambda = 1)
        }
    }

    for (size_t j = 0; j < k; ++j) {
        const Scalar& tj = (*tau)[j];
        const Scalar& hj = (*theta)[j];
        if (tj.is_zero()) continue; // outside the common support
        if (tj == hj) {
            out.classes.push_back(candidates[j]);
            out.weights.push_back(tj);
            continue;
        }
        SplitResult sp = split_pair(tj, hj);
        out.classes.push_back(candidates[j]);
        out.weights.push_back(sp.weight_s);
        cone::DivisorClass scaled;
        scaled.coords.reserve(rho);
        for (const auto& x : candidates[j].coords) scaled.coords.push_back(x * sp.lambda);
        out.classes.push_back(std::move(scaled));
        out.weights.push_back(sp.weight_sprime);
    }

    // openness certificate: rank of w -> (sum w L, sum w L^2)
    size_t nfun = monos.size();
    Mat<Scalar> cert(rho + nfun, out.classes.size(), Scalar(0));
    for (size_t j = 0; j < out.classes.size(); ++j) {
        for (size_t b = 0; b < rho; ++b) cert.at(b, j) = out.classes[j].coords[b];
        std::vector<Scalar> sq = square_pairings(tensor, out.classes[j], monos);
        for (size_t b = 0; b < nfun; ++b) cert.at(rho + b, j) = sq[b];
    }
    out.rank_certificate = static_cast<int>(cert.rank());
    size_t target = rho + (tensor.n == 2 ? 1 : rho);
    out.rank_maximal = out.rank_certificate == static_cast<int>(target);
    return out;
}

bool verify_decomposition(const cone::IntersectionTensor& tensor, const cone::DivisorClass& omega,
                          const OmegaDecomposition& d) {
    if (d.classes.size() != d.weights.size()) return false;
    const size_t rho = static_cast<size_t>(tensor.rho);
    for (const auto& w : d.weights)
        if (w.sign() <= 0) return false;
    for (size_t b = 0; b < rho; ++b) {
        Scalar sum(0);
        for (size_t j = 0; j < d.classes.size(); ++j) sum += d.weights[j] * d.classes[j].coords[b];
        if (sum != d.alpha2 * omega.coords[b]) return false;
    }
    std::vector<std::vector<int>> monos = monomials_deg(tensor.rho, tensor.n - 2);
    std::vector<Scalar> target = square_pairings(tensor, omega, monos);
    for (size_t b = 0; b < monos.size(); ++b) {
        Scalar sum(0);
        for (size_t j = 0; j < d.classes.size(); ++j) {
            std::vector<Scalar> sq = square_pairings(tensor, d.classes[j], monos);
            sum += d.weights[j] * sq[b];
        }
        if (sum != d.alpha1 * target[b]) return false;
    }
    return true;
}

namespace {
Scalar pair_table(const std::map<std::vector<int>, Scalar>& table,
                  const cone::IntersectionTensor& t, const cone::DivisorClass& d) {
    return cone::pair_deg2(table, t, d);
}
} // namespace

Poly hilbert_poly_omega(const ChernTodd& ch, const cone::IntersectionTensor& tensor,
                        const cone::DivisorClass& omega) {
    tensor.validate();
    if (ch.rank.sign() <= 0) throw input_error("hilbert_poly_omega: rank must be positive");
    if (omega.coords.size() != static_cast<size_t>(tensor.rho))
        throw input_error("hilbert_poly_omega: omega rank mismatch");
    const int n = tensor.n;
    if (n != 2 && n != 3)
        throw input_error("hilbert_poly_omega: pairing data supports n = 2 and n = 3 only");
    auto ev = [&](std::vector<cone::DivisorClass> args) { return eval(tensor, std::move(args)); };
    std::vector<Scalar> alpha(static_cast<size_t>(n) + 1, Scalar(0));
    if (n == 2) {
        alpha[2] = ch.rank * ev({omega, omega});
        alpha[1] = ev({ch.c1, omega}) + ch.rank * ev({ch.todd1, omega});
        Scalar ch2 = (ev({ch.c1, ch.c1}) - Scalar(2) * pair_table(ch.c2pair, tensor, omega)) / Scalar(2);
        alpha[0] = ch2 + ev({ch.c1, ch.todd1}) + ch.rank * pair_table(ch.todd2pair, tensor, omega);
    } else {
        alpha[3] = ch.rank * ev({omega, omega, omega});
        alpha[2] = ev({ch.c1, omega, omega}) + ch.rank * ev({ch.todd1, omega, omega});
        auto lin = [&](const std::map<std::vector<int>, Scalar>& table,
                       const cone::DivisorClass& d) {
            Scalar out(0);
            for (size_t i = 0; i < d.coords.size(); ++i) {
                auto it = table.find({static_cast<int>(i)});
                if (it != table.end()) out += d.coords[i] * it->second;
            }
            return out;
        };
        Scalar ch2_omega = (ev({ch.c1, ch.c1, omega}) - Scalar(2) * lin(ch.c2pair, omega)) / Scalar(2);
        alpha[1] = ch2_omega + ev({ch.c1, ch.todd1, omega}) + ch.rank * lin(ch.todd2pair, omega);
        Scalar ch2_todd1 =
            (ev({ch.c1, ch.c1, ch.todd1}) - Scalar(2) * lin(ch.c2pair, ch.todd1)) / Scalar(2);
        alpha[0] = ch.ch3 + ch2_todd1 + lin(ch.todd2pair, ch.c1) + ch.rank * ch.todd3;
    }
    // P(m) = sum alpha_i m^i / i!
    std::vector<Scalar> coeffs(alpha.size(), Scalar(0));
    Scalar fact(1);
    for (size_t i = 0; i < alpha.size(); ++i) {
        if (i > 1) fact *= Scalar(static_cast<long long>(i));
        coeffs[i] = alpha[i] / fact;
    }
    return Poly(std::move(coeffs));
}

sheaf::SheafClass sheaf_from_chern(const std::string& label, const ChernTodd& ch,
                                   const cone::IntersectionTensor& tensor,
                                   const std::vector<cone::DivisorClass>& bundles) {
    sheaf::SheafClass out;
    out.label = label;
    out.dim = tensor.n;
    out.rank = ch.rank;
    for (const auto& l : bundles) {
        Poly p = hilbert_poly_omega(ch, tensor, l);
        std::vector<Scalar> row(static_cast<size_t>(tensor.n) + 1, Scalar(0));
        Scalar fact(1);
        for (size_t i = 0; i <= static_cast<size_t>(tensor.n); ++i) {
            if (i > 1) fact *= Scalar(static_cast<long long>(i));
            row[i] = p.coeff(i) * fact;
        }
        out.alpha.push_back(std::move(row));
    }
    sheaf::ChernRecord rec;
    rec.c1 = ch.c1.coords;
    rec.c2pair = ch.c2pair;
    rec.ch3 = ch.ch3;
    out.chern = rec;
    return out;
}

} // namespace stab::kahler
