#pragma once

#include "stab/bigint.hpp"
#include "stab/parallel.hpp"
#include "stab/rng.hpp"
#include "stab/sheaf.hpp"

#include <string>
#include <vector>

namespace stab::chamber {

// Rational linear wall in sigma-space, canonical form: coprime integer
// entries with the first nonzero entry positive.
struct Wall {
    std::vector<BigInt> normal;
    int coeff_index = 0; // i in 0..d-1
    std::string f_label, e_label;

    std::string key() const;
    Scalar form_at(const std::vector<Scalar>& sigma) const;
};

// Which part of sigma-space the chamber structure lives in.
enum class Region { FullOrthant, PositiveOrthant };

// Canonicalize a rational normal vector; returns empty when the form is zero.
std::vector<BigInt> canonical_normal(const std::vector<Scalar>& form);

// Walls W_{i,F} for all i in 1..d-1 and all F in the family, deduplicated,
// with the zero and region-empty forms discarded.
std::vector<Wall> compute_walls(const sheaf::SheafClass& e, const sheaf::FamilySpec& family,
                                Region region = Region::FullOrthant);

// Exact sign of every wall form at sigma, as a string over {'-','0','+'}.
std::string locate(const sheaf::StabilityParameter& sigma, const std::vector<Wall>& walls);

struct Chamber {
    std::string signs;          // one of -,0,+ per wall, fixed wall order
    std::vector<Scalar> sample; // interior rational point on the simplex
    bool full_dim = false;
};

// All realized sign vectors over the region intersected with the simplex
// sum(sigma) = 1, each with an exact feasibility certificate and a rational
// interior sample.
std::vector<Chamber> enumerate_chambers(const std::vector<Wall>& walls, size_t j0, Region region,
                                        ExecMode mode = ExecMode::Parallel);

// Rational point on the simplex realizing the requested sign vector; throws
// infeasible_error when none exists.
sheaf::StabilityParameter rational_representative(const std::string& signs,
                                                  const std::vector<Wall>& walls, size_t j0,
                                                  Region region);

// Deterministic batch of distinct points realizing the sign vector (used by
// the invariance tests); all returned points re-locate to `signs`.
std::vector<std::vector<Scalar>> sample_points(const std::string& signs,
                                               const std::vector<Wall>& walls, size_t j0,
                                               Region region, size_t count, Rng& rng);

} // namespace stab::chamber
