#pragma once

#include "stab/scalar.hpp"

#include <optional>
#include <vector>

namespace stab {

// Linear constraint  coef . x  REL  rhs  over an exact ordered field.
enum class Rel { Eq, Ge, Gt };

struct LinCon {
    std::vector<Scalar> coef;
    Scalar rhs;
    Rel rel;
};

inline LinCon lin_eq(std::vector<Scalar> c, Scalar r) { return {std::move(c), std::move(r), Rel::Eq}; }
inline LinCon lin_ge(std::vector<Scalar> c, Scalar r) { return {std::move(c), std::move(r), Rel::Ge}; }
inline LinCon lin_gt(std::vector<Scalar> c, Scalar r) { return {std::move(c), std::move(r), Rel::Gt}; }

// Exact Fourier-Motzkin feasibility with strict/weak tracking.  Returns an
// interior sample point when the system is feasible (strict constraints are
// satisfied with margin by construction).  Intended for desk-scale systems
// (a handful of variables); elimination is exact, no floating point.
std::optional<std::vector<Scalar>> linear_feasible_point(const std::vector<LinCon>& cons,
                                                         size_t nvars);

} // namespace stab
