#include "stab/linfeas.hpp"
#include "stab/error.hpp"

#include <algorithm>
#include <set>

namespace stab {

namespace {

// internal normal form: coef . x + cst  REL  0
struct Row {
    std::vector<Scalar> coef;
    Scalar cst;
    Rel rel;
};

struct EqSub { // x_v = cst + lin . x
    size_t v;
    std::vector<Scalar> lin;
    Scalar cst;
};

struct FmRecord { // for back-substitution of an eliminated variable
    size_t v;
    std::vector<Row> lowers, uppers; // rows with coef[v] > 0 resp. < 0
};

void scale_row(Row& r) {
    for (const Scalar& c : r.coef) {
        if (!c.is_zero()) {
            Scalar a = c.abs();
            for (auto& x : r.coef) x = x / a;
            r.cst = r.cst / a;
            return;
        }
    }
}

std::string row_key(const Row& r) {
    std::string k = r.rel == Rel::Eq ? "e" : (r.rel == Rel::Ge ? "g" : "s");
    for (const auto& c : r.coef) k += "|" + c.str();
    k += "#" + r.cst.str();
    return k;
}

// value of the bound expression (-rest - cst)/coef[v] at a partial assignment
Scalar bound_value(const Row& r, size_t v, const std::vector<Scalar>& x) {
    Scalar rest = r.cst;
    for (size_t u = 0; u < r.coef.size(); ++u)
        if (u != v && !r.coef[u].is_zero()) rest += r.coef[u] * x[u];
    return (Scalar(0) - rest) / r.coef[v];
}

} // namespace

std::optional<std::vector<Scalar>> linear_feasible_point(const std::vector<LinCon>& cons,
                                                         size_t nvars) {
    std::vector<Row> rows;
    rows.reserve(cons.size());
    for (const auto& c : cons) {
        if (c.coef.size() != nvars) throw input_error("constraint arity mismatch");
        rows.push_back(Row{c.coef, Scalar(0) - c.rhs, c.rel});
    }

    std::vector<EqSub> eqsubs;
    std::vector<FmRecord> fmrecs;
    std::vector<bool> eliminated(nvars, false);

    // 1. eliminate equalities by substitution
    while (true) {
        size_t eq_idx = rows.size();
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].rel != Rel::Eq) continue;
            bool allzero = true;
            for (const auto& c : rows[i].coef) allzero = allzero && c.is_zero();
            if (allzero) {
                if (!rows[i].cst.is_zero()) return std::nullopt;
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
                eq_idx = rows.size();
                i = static_cast<size_t>(-1);
                continue;
            }
            eq_idx = i;
            break;
        }
        if (eq_idx == rows.size()) break;

        Row eq = rows[eq_idx];
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(eq_idx));
        size_t v = 0;
        while (eq.coef[v].is_zero()) ++v;
        EqSub sub;
        sub.v = v;
        sub.lin.assign(nvars, Scalar(0));
        Scalar cv = eq.coef[v];
        for (size_t u = 0; u < nvars; ++u)
            if (u != v) sub.lin[u] = (Scalar(0) - eq.coef[u]) / cv;
        sub.cst = (Scalar(0) - eq.cst) / cv;
        for (auto& r : rows) {
            if (r.coef[v].is_zero()) continue;
            Scalar f = r.coef[v];
            for (size_t u = 0; u < nvars; ++u)
                if (u != v) r.coef[u] += f * sub.lin[u];
            r.cst += f * sub.cst;
            r.coef[v] = Scalar(0);
        }
        eliminated[v] = true;
        eqsubs.push_back(std::move(sub));
    }

    // 2. Fourier-Motzkin elimination of the remaining variables
    while (true) {
        // choose the live variable minimizing the combination count
        size_t best = nvars;
        size_t best_cost = static_cast<size_t>(-1);
        for (size_t v = 0; v < nvars; ++v) {
            if (eliminated[v]) continue;
            size_t lo = 0, hi = 0;
            bool appears = false;
            for (const auto& r : rows)
                if (!r.coef[v].is_zero()) {
                    appears = true;
                    (r.coef[v].sign() > 0 ? lo : hi)++;
                }
            if (!appears) continue;
            size_t cost = lo * hi;
            if (cost < best_cost) {
                best_cost = cost;
                best = v;
            }
        }
        if (best == nvars) break; // no live variable appears in any row
        size_t v = best;

        FmRecord rec;
        rec.v = v;
        std::vector<Row> rest;
        for (auto& r : rows) {
            if (r.coef[v].is_zero())
                rest.push_back(std::move(r));
            else if (r.coef[v].sign() > 0)
                rec.lowers.push_back(std::move(r));
            else
                rec.uppers.push_back(std::move(r));
        }
        std::set<std::string> seen;
        for (auto& r : rest) {
            scale_row(r);
            seen.insert(row_key(r));
        }
        for (const auto& lo : rec.lowers)
            for (const auto& up : rec.uppers) {
                // lo: a x_v + P >= 0 (a>0)  =>  x_v >= -P/a
                // up: b x_v + Q >= 0 (b<0)  =>  x_v <= -Q/b
                // combined: (-Q/b) - (-P/a) REL 0, scaled by a*(-b) > 0
                Row comb;
                comb.coef.assign(nvars, Scalar(0));
                Scalar a = lo.coef[v];
                Scalar nb = Scalar(0) - up.coef[v];
                for (size_t u = 0; u < nvars; ++u)
                    if (u != v) comb.coef[u] = a * up.coef[u] + nb * lo.coef[u];
                comb.cst = a * up.cst + nb * lo.cst;
                comb.rel = (lo.rel == Rel::Gt || up.rel == Rel::Gt) ? Rel::Gt : Rel::Ge;
                bool allzero = true;
                for (const auto& c : comb.coef) allzero = allzero && c.is_zero();
                if (allzero) {
                    int s = comb.cst.sign();
                    if (s < 0 || (s == 0 && comb.rel == Rel::Gt)) return std::nullopt;
                    continue;
                }
                scale_row(comb);
                if (seen.insert(row_key(comb)).second) rest.push_back(std::move(comb));
            }
        rows = std::move(rest);
        eliminated[v] = true;
        fmrecs.push_back(std::move(rec));
    }

    // remaining rows involve no live variables: constants over unused vars
    for (const auto& r : rows) {
        bool allzero = true;
        for (const auto& c : r.coef) allzero = allzero && c.is_zero();
        if (!allzero) continue; // involves a variable never constrained elsewhere: satisfiable
        int s = r.cst.sign();
        if (s < 0 || (s == 0 && r.rel == Rel::Gt)) return std::nullopt;
    }

    // 3. back-substitution, FM variables in reverse elimination order
    std::vector<Scalar> x(nvars, Scalar(0));
    for (size_t k = fmrecs.size(); k-- > 0;) {
        const FmRecord& rec = fmrecs[k];
        bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
        Scalar lo(0), hi(0);
        for (const auto& r : rec.lowers) {
            Scalar b = bound_value(r, rec.v, x);
            bool strict = r.rel == Rel::Gt;
            if (!has_lo) {
                lo = b;
                lo_strict = strict;
                has_lo = true;
            } else if (b > lo) {
                lo = b;
                lo_strict = strict;
            } else if (b == lo && strict) {
                lo_strict = true;
            }
        }
        for (const auto& r : rec.uppers) {
            Scalar b = bound_value(r, rec.v, x);
            bool strict = r.rel == Rel::Gt;
            if (!has_hi) {
                hi = b;
                hi_strict = strict;
                has_hi = true;
            } else if (b < hi) {
                hi = b;
                hi_strict = strict;
            } else if (b == hi && strict) {
                hi_strict = true;
            }
        }
        Scalar val(0);
        if (has_lo && has_hi) {
            if (lo == hi)
                val = lo; // both weak, otherwise elimination had failed
            else
                val = (lo + hi) / Scalar(2);
        } else if (has_lo) {
            val = lo_strict ? lo + Scalar(1) : lo;
        } else if (has_hi) {
            val = hi_strict ? hi - Scalar(1) : hi;
        }
        x[rec.v] = val;
    }
    for (size_t k = eqsubs.size(); k-- > 0;) {
        const EqSub& s = eqsubs[k];
        Scalar val = s.cst;
        for (size_t u = 0; u < nvars; ++u)
            if (!s.lin[u].is_zero()) val += s.lin[u] * x[u];
        x[s.v] = val;
    }
    return x;
}

} // namespace stab
