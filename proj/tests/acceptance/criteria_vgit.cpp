#include "acceptance.hpp"

#include "stab/vgit.hpp"

using namespace stab;
using namespace stab::quiver;
using namespace stab::vgit;

namespace {

AnyRep cross_sample(const GF& F, uint8_t a11, uint8_t a12, uint8_t a21, uint8_t a22,
                    const std::string& label) {
    Rep<Fq> rep;
    rep.spec = QuiverSpec{2, {{1, 1}, {1, 1}}};
    rep.dims = {1, 1, 1, 1};
    rep.ex = Fq{0, &F};
    auto mat = [&](uint8_t v) {
        Mat<Fq> m(1, 1, rep.ex);
        m.at(0, 0) = Fq{v, &F};
        return m;
    };
    rep.maps = {{{mat(a11)}, {mat(a12)}}, {{mat(a21)}, {mat(a22)}}};
    return AnyRep{label, rep};
}

// root of the wall form along the path, if it crosses
std::optional<Rational> wall_root(const chamber::Wall& w, const ScanPath& path) {
    Scalar at0 = w.form_at(path.start.sigma);
    Scalar at1 = w.form_at(path.end.sigma);
    Scalar den = at0 - at1;
    if (den.is_zero()) return std::nullopt;
    Scalar u = at0 / den;
    if (!u.is_rational()) return std::nullopt;
    Rational r = u.as_rational();
    if (r < Rational(0) || r > Rational(1)) return std::nullopt;
    return r;
}

} // namespace

// Criterion 12: the Kronecker-family scenario scans to piecewise-constant
// events whose boundaries sit within 2^-20 of the declared-candidate walls,
// stably under grid refinement.
CriterionResult criterion_vgit_scan() {
    const GF& F = GF::get(2);
    std::vector<AnyRep> samples = {cross_sample(F, 0, 1, 1, 0, "A"),
                                   cross_sample(F, 1, 1, 1, 1, "B"),
                                   cross_sample(F, 1, 0, 0, 1, "C")};
    ScanPath path{sheaf::StabilityParameter{{Scalar(1), Scalar(3)}},
                  sheaf::StabilityParameter{{Scalar(3), Scalar(1)}}, 8};
    ScanTrace trace = sigma_scan(samples, path, ExhaustiveFiniteField{});
    if (!trace.definitive) return {false, "verdicts not exhaustive"};
    for (const auto& ev : trace.events)
        if (!ev.recheck_ok) return {false, "event subset not constant on interior points"};
    if (trace.flips.empty()) return {false, "expected wall crossings on the scenario"};

    // declared candidate submodule dimension vectors of the swap sample
    std::vector<DimVector> subdims = {{1, 0, 0, 1}, {0, 1, 1, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}};
    auto walls = candidate_walls(samples[0].dims(), subdims);
    if (walls.empty()) return {false, "no candidate walls"};
    const Rational res(1, 1048576);
    for (const auto& flip : trace.flips) {
        bool matched = false;
        for (const auto& w : walls) {
            auto root = wall_root(w, path);
            if (!root) continue;
            if (*root >= flip.u_minus - res && *root <= flip.u_plus + res) matched = true;
        }
        if (!matched)
            return {false, "flip at [" + flip.u_minus.to_string() + ", " +
                               flip.u_plus.to_string() + "] matches no candidate wall"};
    }

    // refinement stability: doubling the grid reproduces the flip brackets
    ScanPath fine = path;
    fine.steps = 16;
    ScanTrace trace2 = sigma_scan(samples, fine, ExhaustiveFiniteField{});
    if (trace.flips.size() != trace2.flips.size())
        return {false, "flip count changed under refinement"};
    for (size_t t = 0; t < trace.flips.size(); ++t) {
        Rational gap = trace.flips[t].u_zero - trace2.flips[t].u_zero;
        if (gap < Rational(0)) gap = -gap;
        if (gap > res) return {false, "flip location moved under refinement"};
    }
    for (size_t k = 0; k < trace.grid.size(); ++k)
        if (trace.semistable_at[k] != trace2.semistable_at[2 * k])
            return {false, "grid subsets changed under refinement"};
    return {true, std::to_string(trace.flips.size()) + " flips, all within 2^-20 of declared "
                                                        "walls, stable under refinement"};
}
