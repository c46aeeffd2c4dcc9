#include "stab/vgit.hpp"
#include "stab/error.hpp"

#include <algorithm>
#include <set>

namespace stab::vgit {

namespace {

sheaf::StabilityParameter sigma_at(const ScanPath& path, const Rational& u) {
    sheaf::StabilityParameter s;
    Scalar su{u};
    for (size_t j = 0; j < path.start.sigma.size(); ++j)
        s.sigma.push_back((Scalar(1) - su) * path.start.sigma[j] + su * path.end.sigma[j]);
    return s;
}

struct SubsetEval {
    std::vector<std::string> labels;
    bool definitive = true;
};

SubsetEval semistable_subset(const std::vector<quiver::AnyRep>& samples,
                             const sheaf::StabilityParameter& sigma,
                             const quiver::Strategy& strategy) {
    SubsetEval out;
    for (const auto& sample : samples) {
        bool semistable = false, exhaustive = false;
        if (std::holds_alternative<quiver::Rep<Fq>>(sample.rep)) {
            auto r = quiver::semistability_check(std::get<quiver::Rep<Fq>>(sample.rep), sigma,
                                                 strategy);
            semistable = r.kind != quiver::CheckKind::Unstable;
            exhaustive = r.exhaustive;
        } else {
            if (!std::holds_alternative<quiver::SeededSearch>(strategy))
                throw input_error("sigma_scan: exact-field samples need the seeded strategy");
            auto r = quiver::semistability_check(std::get<quiver::Rep<Scalar>>(sample.rep), sigma,
                                                 std::get<quiver::SeededSearch>(strategy));
            semistable = r.kind != quiver::CheckKind::Unstable;
            exhaustive = false;
        }
        if (semistable) out.labels.push_back(sample.label);
        out.definitive = out.definitive && exhaustive;
    }
    return out;
}

} // namespace

ScanTrace sigma_scan(const std::vector<quiver::AnyRep>& samples, const ScanPath& path,
                     const quiver::Strategy& strategy, ExecMode mode) {
    if (samples.empty()) throw input_error("sigma_scan: no samples");
    path.start.validate();
    path.end.validate();
    if (path.start.sigma.size() != path.end.sigma.size())
        throw input_error("sigma_scan: endpoint dimension mismatch");
    if (!path.start.positive() || !path.end.positive())
        throw input_error("sigma_scan: path must stay strictly positive");
    const quiver::DimVector dims = samples[0].dims();
    for (const auto& s : samples) {
        if (s.dims() != dims || s.j0() != samples[0].j0())
            throw input_error("sigma_scan: samples must share quiver and dimension vector");
        if (s.rep.index() != samples[0].rep.index())
            throw input_error("sigma_scan: samples must share the base field");
    }
    if (static_cast<size_t>(samples[0].j0()) != path.start.sigma.size())
        throw input_error("sigma_scan: sigma length != j0");

    ScanTrace trace;
    const int steps = std::max(path.steps, 0);
    for (int k = 0; k <= steps; ++k)
        trace.grid.push_back(steps == 0 ? Rational(0) : Rational(k, steps));

    trace.semistable_at.resize(trace.grid.size());
    std::vector<char> definitive(trace.grid.size(), 1);
    for_each_index(mode, static_cast<std::ptrdiff_t>(trace.grid.size()), [&](std::ptrdiff_t k) {
        SubsetEval ev = semistable_subset(samples, sigma_at(path, trace.grid[static_cast<size_t>(k)]),
                                          strategy);
        trace.semistable_at[static_cast<size_t>(k)] = std::move(ev.labels);
        definitive[static_cast<size_t>(k)] = ev.definitive ? 1 : 0;
    });
    for (char d : definitive) trace.definitive = trace.definitive && d;

    // events: maximal grid runs of a constant subset, re-checked inside
    size_t run_start = 0;
    for (size_t k = 1; k <= trace.grid.size(); ++k) {
        if (k < trace.grid.size() && trace.semistable_at[k] == trace.semistable_at[run_start])
            continue;
        ScanEvent ev;
        ev.u_start = trace.grid[run_start];
        ev.u_end = trace.grid[k - 1];
        ev.semistable = trace.semistable_at[run_start];
        if (ev.u_start != ev.u_end) {
            for (long long num : {1, 2, 3}) {
                Rational probe =
                    ev.u_start + (ev.u_end - ev.u_start) * Rational(num, 4);
                SubsetEval pe = semistable_subset(samples, sigma_at(path, probe), strategy);
                ev.recheck_ok = ev.recheck_ok && pe.labels == ev.semistable;
            }
        }
        trace.events.push_back(std::move(ev));
        run_start = k;
    }

    // flips: bisect each adjacent change to 2^-20 of the parameter interval
    const Rational resolution(1, 1048576);
    for (size_t k = 0; k + 1 < trace.grid.size(); ++k) {
        if (trace.semistable_at[k] == trace.semistable_at[k + 1]) continue;
        Rational lo = trace.grid[k], hi = trace.grid[k + 1];
        std::vector<std::string> slo = trace.semistable_at[k];
        std::vector<std::string> shi = trace.semistable_at[k + 1];
        while (hi - lo > resolution) {
            Rational mid = (lo + hi) / Rational(2);
            SubsetEval me = semistable_subset(samples, sigma_at(path, mid), strategy);
            if (me.labels == slo)
                lo = mid;
            else {
                hi = mid;
                shi = me.labels;
            }
        }
        Flip flip;
        flip.u_minus = lo;
        flip.u_plus = hi;
        // the wall point carries the largest semistable set in the GIT
        // picture; pick the bracket point maximizing it (midpoint on ties)
        {
            Rational mid = (lo + hi) / Rational(2);
            SubsetEval at_lo = semistable_subset(samples, sigma_at(path, lo), strategy);
            SubsetEval at_mid = semistable_subset(samples, sigma_at(path, mid), strategy);
            SubsetEval at_hi = semistable_subset(samples, sigma_at(path, hi), strategy);
            flip.u_zero = mid;
            size_t best = at_mid.labels.size();
            if (at_lo.labels.size() > best) {
                best = at_lo.labels.size();
                flip.u_zero = lo;
            }
            if (at_hi.labels.size() > best) flip.u_zero = hi;
        }
        flip.sigma_minus = sigma_at(path, lo).sigma;
        flip.sigma_zero = sigma_at(path, flip.u_zero).sigma;
        flip.sigma_plus = sigma_at(path, hi).sigma;
        std::set<std::string> before(slo.begin(), slo.end()), after(shi.begin(), shi.end());
        for (const auto& l : after)
            if (!before.count(l)) flip.gained.push_back(l);
        for (const auto& l : before)
            if (!after.count(l)) flip.lost.push_back(l);
        SubsetEval mid = semistable_subset(samples, sigma_at(path, flip.u_zero), strategy);
        std::set<std::string> at_mid(mid.labels.begin(), mid.labels.end());
        flip.inclusion_holds = true;
        for (const auto& l : before)
            if (!at_mid.count(l)) flip.inclusion_holds = false;
        for (const auto& l : after)
            if (!at_mid.count(l)) flip.inclusion_holds = false;
        trace.flips.push_back(std::move(flip));
    }
    return trace;
}

GridTrace sigma_scan_grid(const std::vector<quiver::AnyRep>& samples, int resolution,
                          const quiver::Strategy& strategy, ExecMode mode) {
    if (samples.empty()) throw input_error("sigma_scan_grid: no samples");
    if (samples[0].j0() != 3)
        throw input_error("sigma_scan_grid: the 2-simplex grid needs j0 = 3");
    if (resolution < 3) throw input_error("sigma_scan_grid: resolution must be >= 3");
    const quiver::DimVector dims = samples[0].dims();
    for (const auto& s : samples)
        if (s.dims() != dims || s.rep.index() != samples[0].rep.index())
            throw input_error("sigma_scan_grid: samples must share quiver, dims and field");
    GridTrace out;
    for (long long a = 1; a + 2 <= resolution; ++a)
        for (long long b = 1; a + b + 1 <= resolution; ++b) {
            GridCell cell;
            cell.sigma = {Scalar(Rational(a, resolution)), Scalar(Rational(b, resolution)),
                          Scalar(Rational(resolution - a - b, resolution))};
            out.cells.push_back(std::move(cell));
        }
    std::vector<char> definitive(out.cells.size(), 1);
    for_each_index(mode, static_cast<std::ptrdiff_t>(out.cells.size()), [&](std::ptrdiff_t i) {
        sheaf::StabilityParameter sp{out.cells[static_cast<size_t>(i)].sigma};
        SubsetEval ev = semistable_subset(samples, sp, strategy);
        out.cells[static_cast<size_t>(i)].semistable = std::move(ev.labels);
        definitive[static_cast<size_t>(i)] = ev.definitive ? 1 : 0;
    });
    for (char d : definitive) out.definitive = out.definitive && d;
    for (const auto& cell : out.cells) {
        bool seen = false;
        for (const auto& s : out.distinct_subsets) seen = seen || s == cell.semistable;
        if (!seen) out.distinct_subsets.push_back(cell.semistable);
    }
    return out;
}

std::vector<std::vector<Scalar>> character_path(const ScanPath& path, const quiver::DimVector& d) {
    std::vector<std::vector<Scalar>> out;
    const int steps = std::max(path.steps, 0);
    for (int k = 0; k <= steps; ++k) {
        Rational u = steps == 0 ? Rational(0) : Rational(k, steps);
        sheaf::StabilityParameter s = sigma_at(path, u);
        std::vector<Scalar> chi = quiver::character_of(s, d);
        // audit: the exponents pair to zero against the dimension vector
        Scalar pair(0);
        for (size_t t = 0; t < chi.size(); ++t) pair += chi[t] * Scalar(d[t]);
        if (!pair.is_zero()) throw error("character_path: pairing audit failed");
        out.push_back(std::move(chi));
    }
    return out;
}

std::vector<chamber::Wall> candidate_walls(const quiver::DimVector& d,
                                           const std::vector<quiver::DimVector>& cand_subdims) {
    const size_t j0 = d.size() / 2;
    // the theta form for subdims (v, w) is
    //   (sum sigma v)(sum sigma_i d_i2) - (sum sigma w)(sum sigma_i d_i1),
    // which is linear in sigma exactly when (d_i1) and (d_i2) are proportional
    long long p = quiver::vdim(d, 0), q = quiver::wdim(d, 0);
    for (size_t i = 0; i < j0; ++i)
        if (static_cast<long long>(quiver::vdim(d, static_cast<int>(i))) * q !=
            static_cast<long long>(quiver::wdim(d, static_cast<int>(i))) * p)
            throw input_error(
                "candidate_walls: V/W dimension profiles not proportional; theta locus is quadratic");
    std::vector<chamber::Wall> out;
    std::set<std::string> seen;
    for (size_t t = 0; t < cand_subdims.size(); ++t) {
        const auto& sub = cand_subdims[t];
        if (sub.size() != d.size()) throw input_error("candidate_walls: subdim length mismatch");
        std::vector<Scalar> form(j0, Scalar(0));
        for (size_t j = 0; j < j0; ++j)
            form[j] = Scalar(q) * Scalar(quiver::vdim(sub, static_cast<int>(j))) -
                      Scalar(p) * Scalar(quiver::wdim(sub, static_cast<int>(j)));
        std::vector<BigInt> normal = chamber::canonical_normal(form);
        if (normal.empty()) continue;
        chamber::Wall w{std::move(normal), 1, "subdim" + std::to_string(t), "module"};
        if (seen.insert(w.key()).second) out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end(),
              [](const chamber::Wall& a, const chamber::Wall& b) { return a.key() < b.key(); });
    return out;
}

} // namespace stab::vgit
