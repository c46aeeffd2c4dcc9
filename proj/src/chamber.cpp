#include "stab/chamber.hpp"
#include "stab/error.hpp"
#include "stab/linfeas.hpp"
#include "stab/matrix.hpp"

#include <algorithm>
#include <set>

namespace stab::chamber {

std::string Wall::key() const {
    std::string k;
    for (const auto& x : normal) k += x.to_string() + ",";
    return k;
}

Scalar Wall::form_at(const std::vector<Scalar>& sigma) const {
    if (sigma.size() != normal.size()) throw input_error("wall arity mismatch");
    Scalar v(0);
    for (size_t j = 0; j < normal.size(); ++j) v += Scalar(Rational(normal[j])) * sigma[j];
    return v;
}

std::vector<BigInt> canonical_normal(const std::vector<Scalar>& form) {
    BigInt lcm(1);
    for (const auto& x : form) {
        const Rational& r = x.as_rational();
        BigInt d = r.den();
        lcm = lcm / BigInt::gcd(lcm, d) * d;
    }
    std::vector<BigInt> ints;
    ints.reserve(form.size());
    BigInt g(0);
    for (const auto& x : form) {
        const Rational& r = x.as_rational();
        BigInt v = r.num() * (lcm / r.den());
        g = BigInt::gcd(g, v);
        ints.push_back(std::move(v));
    }
    if (g.is_zero()) return {}; // zero form
    int lead = 0;
    for (auto& v : ints) {
        v = v / g;
        if (lead == 0) lead = v.sign();
    }
    if (lead < 0)
        for (auto& v : ints) v = -v;
    return ints;
}

namespace {

// A wall is discarded when its zero locus misses the region entirely.
bool empty_in_region(const std::vector<BigInt>& normal, Region region) {
    bool has_pos = false, has_neg = false, has_zero = false;
    for (const auto& v : normal) {
        if (v.sign() > 0) has_pos = true;
        if (v.sign() < 0) has_neg = true;
        if (v.sign() == 0) has_zero = true;
    }
    if (region == Region::PositiveOrthant) return !(has_pos && has_neg);
    return !(has_zero || (has_pos && has_neg));
}

std::vector<LinCon> region_constraints(size_t j0, Region region) {
    std::vector<LinCon> cons;
    for (size_t j = 0; j < j0; ++j) {
        std::vector<Scalar> c(j0, Scalar(0));
        c[j] = Scalar(1);
        cons.push_back(region == Region::PositiveOrthant ? lin_gt(std::move(c), Scalar(0))
                                                         : lin_ge(std::move(c), Scalar(0)));
    }
    cons.push_back(lin_eq(std::vector<Scalar>(j0, Scalar(1)), Scalar(1))); // simplex
    return cons;
}

LinCon wall_constraint(const Wall& w, char sign) {
    std::vector<Scalar> c;
    c.reserve(w.normal.size());
    for (const auto& v : w.normal) c.push_back(Scalar(Rational(v)));
    if (sign == '0') return lin_eq(std::move(c), Scalar(0));
    if (sign == '-')
        for (auto& x : c) x = -x;
    return lin_gt(std::move(c), Scalar(0));
}

std::optional<std::vector<Scalar>> signs_feasible_point(const std::string& signs,
                                                        const std::vector<Wall>& walls, size_t j0,
                                                        Region region,
                                                        const std::vector<LinCon>& extra = {}) {
    std::vector<LinCon> cons = region_constraints(j0, region);
    for (size_t k = 0; k < signs.size(); ++k) cons.push_back(wall_constraint(walls[k], signs[k]));
    for (const auto& c : extra) cons.push_back(c);
    return linear_feasible_point(cons, j0);
}

} // namespace

std::vector<Wall> compute_walls(const sheaf::SheafClass& e, const sheaf::FamilySpec& family,
                                Region region) {
    e.validate();
    if (e.dim == 0) throw input_error("compute_walls: dimension 0 carries no walls");
    std::vector<Wall> out;
    std::set<std::string> seen;
    for (const auto& f : family.candidates) {
        if (f.dim != e.dim || f.bundles() != e.bundles())
            throw input_error("compute_walls: family candidate '" + f.label + "' shape mismatch");
        // every coefficient below the top degree can decide the comparison,
        // so walls run over i = 0..d-1 (the top coefficient gives the zero form)
        for (int i = 0; i <= e.dim - 1; ++i) {
            std::vector<Scalar> form;
            form.reserve(e.bundles());
            for (size_t j = 0; j < e.bundles(); ++j)
                form.push_back(f.alpha[j][static_cast<size_t>(i)] / f.rank -
                               e.alpha[j][static_cast<size_t>(i)] / e.rank);
            std::vector<BigInt> normal = canonical_normal(form);
            if (normal.empty()) continue;               // all of Sigma
            if (empty_in_region(normal, region)) continue; // empty
            Wall w{std::move(normal), i, f.label, e.label};
            if (seen.insert(w.key()).second) out.push_back(std::move(w));
        }
    }
    std::sort(out.begin(), out.end(), [](const Wall& a, const Wall& b) { return a.key() < b.key(); });
    return out;
}

std::string locate(const sheaf::StabilityParameter& sigma, const std::vector<Wall>& walls) {
    sigma.validate();
    std::string out;
    out.reserve(walls.size());
    for (const auto& w : walls) {
        int s = w.form_at(sigma.sigma).sign();
        out += s < 0 ? '-' : (s > 0 ? '+' : '0');
    }
    return out;
}

namespace {
char sign_char(const Scalar& v) {
    int s = v.sign();
    return s < 0 ? '-' : (s > 0 ? '+' : '0');
}
} // namespace

std::vector<Chamber> enumerate_chambers(const std::vector<Wall>& walls, size_t j0, Region region,
                                        ExecMode mode) {
    // Incremental sign-vector construction.  Exact Fourier-Motzkin is the
    // certificate, but most extensions are witnessed for free: either by the
    // parent cell's own sample point or by one of a pool of random interior
    // probe points with precomputed sign vectors.  Only thin (on-wall) cells
    // and genuinely empty sign vectors ever reach the solver.
    struct Live {
        std::string signs;
        std::vector<Scalar> pt;
    };
    Rng pool_rng(0x9121);
    std::vector<std::pair<std::string, std::vector<Scalar>>> pool;
    {
        const size_t pool_size = walls.empty() ? 0 : 512;
        for (size_t t = 0; t < pool_size; ++t) {
            std::vector<Scalar> p(j0, Scalar(0));
            Scalar total(0);
            for (auto& x : p) {
                x = Scalar(Rational(pool_rng.range(1, 997)));
                total += x;
            }
            for (auto& x : p) x = x / total;
            std::string signs;
            signs.reserve(walls.size());
            for (const auto& w : walls) signs += sign_char(w.form_at(p));
            pool.emplace_back(std::move(signs), std::move(p));
        }
    }

    std::vector<Live> live;
    {
        auto base = signs_feasible_point("", walls, j0, region);
        live.push_back(Live{"", *base}); // region + simplex is always feasible
    }
    const char signs_order[3] = {'-', '0', '+'};
    for (size_t k = 0; k < walls.size(); ++k) {
        struct Cand {
            std::string signs;
            std::vector<Scalar> pt;
            bool witnessed = false;
        };
        std::vector<Cand> candidates;
        candidates.reserve(live.size() * 3);
        for (const auto& cell : live) {
            char own = sign_char(walls[k].form_at(cell.pt));
            for (char s : signs_order) {
                Cand c;
                c.signs = cell.signs + s;
                if (s == own) {
                    c.pt = cell.pt;
                    c.witnessed = true;
                } else {
                    for (const auto& [psigns, ppt] : pool) {
                        if (psigns.compare(0, k + 1, c.signs) == 0) {
                            c.pt = ppt;
                            c.witnessed = true;
                            break;
                        }
                    }
                }
                candidates.push_back(std::move(c));
            }
        }
        std::vector<char> ok(candidates.size(), 0);
        for_each_index(mode, static_cast<std::ptrdiff_t>(candidates.size()), [&](std::ptrdiff_t i) {
            Cand& cand = candidates[static_cast<size_t>(i)];
            if (cand.witnessed) {
                ok[static_cast<size_t>(i)] = 1;
                return;
            }
            auto pt = signs_feasible_point(cand.signs, walls, j0, region);
            if (pt) {
                cand.pt = *pt;
                ok[static_cast<size_t>(i)] = 1;
            }
        });
        std::vector<Live> next;
        for (size_t i = 0; i < candidates.size(); ++i)
            if (ok[i]) next.push_back(Live{std::move(candidates[i].signs), std::move(candidates[i].pt)});
        live = std::move(next);
    }
    std::vector<Chamber> out;
    out.reserve(live.size());
    for (auto& cell : live) {
        Chamber c;
        c.full_dim = cell.signs.find('0') == std::string::npos;
        c.signs = std::move(cell.signs);
        c.sample = std::move(cell.pt);
        out.push_back(std::move(c));
    }
    return out;
}

sheaf::StabilityParameter rational_representative(const std::string& signs,
                                                  const std::vector<Wall>& walls, size_t j0,
                                                  Region region) {
    if (signs.size() != walls.size()) throw input_error("sign vector length != wall count");
    auto pt = signs_feasible_point(signs, walls, j0, region);
    if (!pt) throw infeasible_error("sign vector " + signs + " is not realized");
    for (const auto& x : *pt)
        if (!x.is_rational()) throw error("feasibility solve over Q returned irrational point");
    return sheaf::StabilityParameter{*pt};
}

std::vector<std::vector<Scalar>> sample_points(const std::string& signs,
                                               const std::vector<Wall>& walls, size_t j0,
                                               Region region, size_t count, Rng& rng) {
    if (signs.size() != walls.size()) throw input_error("sign vector length != wall count");
    auto base = signs_feasible_point(signs, walls, j0, region);
    if (!base) throw infeasible_error("sign vector " + signs + " is not realized");
    std::vector<std::vector<Scalar>> out;
    out.push_back(*base);

    // directions preserving the simplex sum and every zero-sign wall exactly
    Mat<Scalar> eqs(1 + std::count(signs.begin(), signs.end(), '0'), j0, Scalar(0));
    for (size_t j = 0; j < j0; ++j) eqs.at(0, j) = Scalar(1);
    size_t r = 1;
    for (size_t k = 0; k < signs.size(); ++k) {
        if (signs[k] != '0') continue;
        for (size_t j = 0; j < j0; ++j) eqs.at(r, j) = Scalar(Rational(walls[k].normal[j]));
        ++r;
    }
    Mat<Scalar> dirs = eqs.kernel();
    if (dirs.rows() == 0) return out; // the chamber is a single point

    std::set<std::string> seen;
    auto point_key = [&](const std::vector<Scalar>& p) {
        std::string k;
        for (const auto& x : p) k += x.str() + ";";
        return k;
    };
    seen.insert(point_key(*base));
    size_t guard = 0;
    while (out.size() < count && guard++ < count * 100) {
        std::vector<Scalar> dir(j0, Scalar(0));
        for (size_t t = 0; t < dirs.rows(); ++t) {
            Scalar c(Rational(rng.range(-9, 9), rng.range(1, 4)));
            for (size_t j = 0; j < j0; ++j) dir[j] += c * dirs.at(t, j);
        }
        std::vector<Scalar> probe(j0);
        bool found = false;
        Scalar step(Rational(1, 3));
        for (int halvings = 0; halvings < 40 && !found; ++halvings) {
            for (size_t j = 0; j < j0; ++j) probe[j] = (*base)[j] + step * dir[j];
            bool in_region = true;
            for (const auto& x : probe) {
                int s = x.sign();
                if (s < 0 || (region == Region::PositiveOrthant && s == 0)) in_region = false;
            }
            if (in_region) {
                sheaf::StabilityParameter sp{probe};
                found = locate(sp, walls) == signs;
            }
            step = step / Scalar(2);
        }
        if (found && seen.insert(point_key(probe)).second) out.push_back(probe);
    }
    return out;
}

} // namespace stab::chamber
