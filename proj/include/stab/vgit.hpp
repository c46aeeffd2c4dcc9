#pragma once

#include "stab/chamber.hpp"
#include "stab/quiver.hpp"

#include <string>
#include <vector>

namespace stab::vgit {

// Path through positive sigma-space, sampled on an even grid.
struct ScanPath {
    sheaf::StabilityParameter start, end;
    int steps = 16; // grid points are u = k/steps, k = 0..steps
};

struct ScanEvent {
    Rational u_start, u_end;
    std::vector<std::string> semistable; // sample labels, in input order
    bool recheck_ok = true;              // re-verified on 3 interior points
};

struct Flip {
    Rational u_minus, u_zero, u_plus;
    std::vector<Scalar> sigma_minus, sigma_zero, sigma_plus;
    std::vector<std::string> gained, lost;
    bool inclusion_holds = false; // ss(u-) and ss(u+) both inside ss(u0); reported, not asserted
};

struct ScanTrace {
    std::vector<Rational> grid;
    std::vector<std::vector<std::string>> semistable_at; // per grid point
    std::vector<ScanEvent> events;
    std::vector<Flip> flips;
    bool definitive = true; // false when any verdict came from a bounded search
};

// Trace the semistable subset of the samples along the segment, refining
// change points by bisection to 2^-20 of the parameter interval.
ScanTrace sigma_scan(const std::vector<quiver::AnyRep>& samples, const ScanPath& path,
                     const quiver::Strategy& strategy, ExecMode mode = ExecMode::Parallel);

// Grid variant on the 2-simplex of a three-weight sigma-space: evaluates the
// semistable subset on the interior lattice (a+b+c = resolution, all >= 1)
// and groups the cells by subset.
struct GridCell {
    std::vector<Scalar> sigma;
    std::vector<std::string> semistable;
};

struct GridTrace {
    std::vector<GridCell> cells;
    std::vector<std::vector<std::string>> distinct_subsets;
    bool definitive = true;
};

GridTrace sigma_scan_grid(const std::vector<quiver::AnyRep>& samples, int resolution,
                          const quiver::Strategy& strategy, ExecMode mode = ExecMode::Parallel);

// Character exponents of chi_theta along the path, with the pairing audit.
std::vector<std::vector<Scalar>> character_path(const ScanPath& path, const quiver::DimVector& d);

// Rational linear theta-walls for declared candidate subdimension vectors.
// Requires the V-side and W-side dimension profiles to be proportional
// (otherwise the theta locus is quadratic in sigma, not a wall).
std::vector<chamber::Wall> candidate_walls(const quiver::DimVector& d,
                                           const std::vector<quiver::DimVector>& cand_subdims);

} // namespace stab::vgit
