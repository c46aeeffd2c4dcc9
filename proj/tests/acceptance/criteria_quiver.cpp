#include "acceptance.hpp"

#include "../quiver_oracle.hpp"

using namespace stab;
using namespace stab::quiver;

namespace {

sheaf::StabilityParameter random_sigma(Rng& rng, size_t j0, bool force_positive) {
    sheaf::StabilityParameter s;
    bool nonzero = false;
    for (size_t j = 0; j < j0; ++j) {
        long long v = force_positive ? rng.range(1, 4) : rng.range(0, 4);
        nonzero = nonzero || v > 0;
        s.sigma.push_back(Scalar(v));
    }
    if (!nonzero) s.sigma[0] = Scalar(1);
    return s;
}

bool theta_formable(const sheaf::StabilityParameter& s, const DimVector& d) {
    Scalar a(0), b(0);
    for (size_t j = 0; j < s.size(); ++j) {
        a += s.sigma[j] * Scalar(vdim(d, static_cast<int>(j)));
        b += s.sigma[j] * Scalar(wdim(d, static_cast<int>(j)));
    }
    return !a.is_zero() && !b.is_zero();
}

struct LemmaChecks {
    bool ok = true;
    std::string why;
};

// full-lattice checks of the theta/mu equivalence, the generated-type slope
// reduction, and the sufficiency of tight submodules, on one (rep, sigma)
LemmaChecks check_lemmas(const Rep<Fq>& rep, const sheaf::StabilityParameter& sigma) {
    LemmaChecks out;
    std::vector<Scalar> theta = theta_vector(sigma, rep.dims);
    SlopeValue mu_full = slope_mu(sigma, rep.dims);
    auto subs = oracle::all_submodules(rep);

    bool semistable_all = true;
    for (const auto& s : subs) {
        DimVector d = s.dims();
        if (d == rep.dims) continue;
        Scalar th = theta_of(d, theta);
        if (th.sign() > 0) semistable_all = false;
        // Lemma: sign(theta) = sign(mu(M') - mu(M)) whenever sum sigma w' > 0
        Scalar wsum(0);
        for (size_t j = 0; j < sigma.size(); ++j)
            wsum += sigma.sigma[j] * Scalar(wdim(d, static_cast<int>(j)));
        if (wsum.sign() > 0) {
            SlopeValue mu = slope_mu(sigma, d);
            int lhs = th.sign();
            int rhs = SlopeValue::cmp(mu, mu_full);
            if (lhs != rhs) {
                out.ok = false;
                out.why = "theta/mu sign equivalence failed";
                return out;
            }
        }
    }

    if (generated_type(rep)) {
        // every non-degenerate submodule carries positive sigma-mass on W
        bool slope_ss = true;
        for (const auto& s : subs) {
            DimVector d = s.dims();
            if (is_degenerate(d, sigma)) continue;
            Scalar wsum(0);
            for (size_t j = 0; j < sigma.size(); ++j)
                wsum += sigma.sigma[j] * Scalar(wdim(d, static_cast<int>(j)));
            if (wsum.sign() <= 0) {
                out.ok = false;
                out.why = "non-degenerate submodule with zero W-mass in a generated-type module";
                return out;
            }
            if (d == rep.dims) continue;
            if (SlopeValue::cmp(slope_mu(sigma, d), mu_full) > 0) slope_ss = false;
        }
        if (semistable_all != slope_ss) {
            out.ok = false;
            out.why = "slope reduction disagrees with the theta verdict";
            return out;
        }
        // sufficiency of tight submodules: the verdict over tight closures of
        // V-seeds equals the verdict over the full lattice
        bool semistable_tight = true;
        uint64_t total = count_vtuples(rep);
        for (uint64_t idx = 0; idx < total; ++idx) {
            Submodule<Fq> closure = tight_closure(rep, decode_vtuple(rep, idx));
            DimVector d = closure.dims();
            if (d == rep.dims) continue;
            if (theta_of(d, theta).sign() > 0) semistable_tight = false;
        }
        if (semistable_all != semistable_tight) {
            out.ok = false;
            out.why = "tight-closure verdict disagrees with the full-lattice verdict";
            return out;
        }
    }
    return out;
}

} // namespace

// Criterion 3: over F2 and F3, dims <= 2 per vertex, j0 <= 2, h <= 2:
// 500 random representations plus every map tuple in the all-ones case.
CriterionResult criterion_king_equivalence() {
    Rng rng(0xacc03);
    int checked = 0;

    // exhaustive maps for the (1,1),(1,1) dimension case, h = [[1,1],[1,1]]
    for (unsigned q : {2u, 3u}) {
        const GF& F = GF::get(q);
        QuiverSpec spec{2, {{1, 1}, {1, 1}}};
        DimVector dims = {1, 1, 1, 1};
        unsigned total = q * q * q * q;
        for (unsigned mask = 0; mask < total; ++mask) {
            Rep<Fq> rep;
            rep.spec = spec;
            rep.dims = dims;
            rep.ex = Fq{0, &F};
            rep.maps.assign(2, std::vector<std::vector<Mat<Fq>>>(2));
            unsigned m = mask;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    Mat<Fq> mat(1, 1, rep.ex);
                    mat.at(0, 0) = Fq{static_cast<uint8_t>(m % q), &F};
                    m /= q;
                    rep.maps[static_cast<size_t>(i)][static_cast<size_t>(j)].push_back(mat);
                }
            sheaf::StabilityParameter sigma = random_sigma(rng, 2, false);
            if (!theta_formable(sigma, dims)) sigma = random_sigma(rng, 2, true);
            LemmaChecks c = check_lemmas(rep, sigma);
            if (!c.ok) return {false, c.why + " (exhaustive maps, q=" + std::to_string(q) + ")"};
            ++checked;
        }
    }

    // 500 random representations across allowed shapes
    for (int it = 0; it < 500; ++it) {
        const GF& F = GF::get(rng.flip() ? 2 : 3);
        int j0 = 1 + static_cast<int>(rng.below(2));
        QuiverSpec spec;
        spec.j0 = j0;
        spec.h.assign(static_cast<size_t>(j0), std::vector<int>(static_cast<size_t>(j0), 0));
        bool any = false;
        for (int i = 0; i < j0; ++i)
            for (int j = 0; j < j0; ++j) {
                int h = static_cast<int>(rng.below(3)); // h <= 2
                spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)] = h;
                any = any || h > 0;
            }
        if (!any) spec.h[0][0] = 1;
        DimVector dims;
        for (int i = 0; i < j0; ++i) {
            dims.push_back(static_cast<int>(1 + rng.below(2))); // dims <= 2
            dims.push_back(static_cast<int>(1 + rng.below(2)));
        }
        Rep<Fq> rep = oracle::random_rep(F, spec, dims, rng);
        sheaf::StabilityParameter sigma = random_sigma(rng, static_cast<size_t>(j0), false);
        if (!theta_formable(sigma, dims)) sigma = random_sigma(rng, static_cast<size_t>(j0), true);
        LemmaChecks c = check_lemmas(rep, sigma);
        if (!c.ok) return {false, c.why + " (random rep " + std::to_string(it) + ")"};
        ++checked;
    }
    return {true, std::to_string(checked) + " representations, all three lemma reductions exact"};
}

// Criterion 4: 1000 random instances of the tight-closure contract.
CriterionResult criterion_tight_closure() {
    Rng rng(0xacc04);
    for (int it = 0; it < 1000; ++it) {
        const GF& F = GF::get(rng.flip() ? 2 : 3);
        int j0 = 1 + static_cast<int>(rng.below(2));
        QuiverSpec spec;
        spec.j0 = j0;
        spec.h.assign(static_cast<size_t>(j0), std::vector<int>(static_cast<size_t>(j0), 1));
        DimVector dims;
        for (int i = 0; i < j0; ++i) {
            dims.push_back(static_cast<int>(1 + rng.below(2)));
            dims.push_back(static_cast<int>(1 + rng.below(2)));
        }
        Rep<Fq> rep = oracle::random_rep(F, spec, dims, rng);
        sheaf::StabilityParameter sigma = random_sigma(rng, static_cast<size_t>(j0), true);

        // random seeds
        std::vector<Mat<Fq>> seeds;
        for (int i = 0; i < j0; ++i) {
            SubspaceEnum e(F, static_cast<size_t>(rep.vdim(i)));
            seeds.push_back(e.decode(rng.below(e.total())));
        }
        Submodule<Fq> closure = tight_closure(rep, seeds);
        // seed containment and the closure invariant
        for (int i = 0; i < j0; ++i)
            if (!span_contains(closure.V[static_cast<size_t>(i)], seeds[static_cast<size_t>(i)]))
                return {false, "seed not contained in its closure"};
        if (!closure_holds(rep, closure)) return {false, "closure invariant failed"};
        // idempotence
        Submodule<Fq> again = tight_closure(rep, closure.V);
        if (!(again.V == closure.V && again.W == closure.W))
            return {false, "tight closure not idempotent"};
        // slope monotonicity under subordination: the seed-submodule
        // (span(seeds), Wmin) is subordinate to its tight closure
        Submodule<Fq> seeded;
        seeded.V = seeds;
        seeded.W = min_wparts(rep, seeds);
        auto mu_lo = try_slope(sigma, seeded.dims());
        auto mu_hi = try_slope(sigma, closure.dims());
        if (mu_lo && mu_hi && SlopeValue::cmp(*mu_lo, *mu_hi) > 0)
            return {false, "slope decreased under subordination"};
    }
    return {true, "1000 instances: idempotent, extensive, closed, slope-monotone"};
}

// Criterion 5: exhaustive small F2 instances; slopes strictly decreasing,
// factors semistable, greedy order-independence.
CriterionResult criterion_hn_filtration() {
    const GF& F = GF::get(2);
    struct Shape {
        QuiverSpec spec;
        DimVector dims;
    };
    std::vector<Shape> shapes = {
        {QuiverSpec{1, {{1}}}, {2, 1}}, {QuiverSpec{1, {{1}}}, {1, 2}},
        {QuiverSpec{1, {{1}}}, {2, 2}}, {QuiverSpec{1, {{2}}}, {1, 1}},
        {QuiverSpec{2, {{1, 1}, {1, 1}}}, {1, 1, 1, 1}},
    };
    std::vector<sheaf::StabilityParameter> sigmas1 = {sheaf::StabilityParameter{{Scalar(1)}}};
    std::vector<sheaf::StabilityParameter> sigmas2 = {
        sheaf::StabilityParameter{{Scalar(1), Scalar(1)}},
        sheaf::StabilityParameter{{Scalar(2), Scalar(1)}}};
    int count = 0;
    for (const auto& shape : shapes) {
        // enumerate every representation of the shape over F2
        size_t entries = 0;
        for (int i = 0; i < shape.spec.j0; ++i)
            for (int j = 0; j < shape.spec.j0; ++j)
                entries += static_cast<size_t>(shape.spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)]) *
                           static_cast<size_t>(quiver::wdim(shape.dims, j)) *
                           static_cast<size_t>(quiver::vdim(shape.dims, i));
        for (uint64_t mask = 0; mask < (1ull << entries); ++mask) {
            Rep<Fq> rep;
            rep.spec = shape.spec;
            rep.dims = shape.dims;
            rep.ex = Fq{0, &F};
            rep.maps.assign(static_cast<size_t>(shape.spec.j0),
                            std::vector<std::vector<Mat<Fq>>>(static_cast<size_t>(shape.spec.j0)));
            uint64_t m = mask;
            for (int i = 0; i < shape.spec.j0; ++i)
                for (int j = 0; j < shape.spec.j0; ++j)
                    for (int k = 0; k < shape.spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)];
                         ++k) {
                        Mat<Fq> mat(static_cast<size_t>(quiver::wdim(shape.dims, j)),
                                    static_cast<size_t>(quiver::vdim(shape.dims, i)), rep.ex);
                        for (size_t r = 0; r < mat.rows(); ++r)
                            for (size_t c = 0; c < mat.cols(); ++c) {
                                mat.at(r, c) = Fq{static_cast<uint8_t>(m & 1), &F};
                                m >>= 1;
                            }
                        rep.maps[static_cast<size_t>(i)][static_cast<size_t>(j)].push_back(
                            std::move(mat));
                    }
            const auto& sigmas = shape.spec.j0 == 1 ? sigmas1 : sigmas2;
            for (const auto& sigma : sigmas) {
                HnResult<Fq> lo = hn_filtration(rep, sigma, 1000000, true);
                HnResult<Fq> hi = hn_filtration(rep, sigma, 1000000, false);
                if (lo.steps.empty() || lo.steps.back().dims() != rep.dims)
                    return {false, "filtration does not reach the module"};
                for (size_t t = 0; t + 1 < lo.slopes.size(); ++t)
                    if (SlopeValue::cmp(lo.slopes[t], lo.slopes[t + 1]) <= 0)
                        return {false, "factor slopes not strictly decreasing"};
                for (const auto& f : lo.factors)
                    if (!slope_semistable(f, sigma)) return {false, "HN factor not semistable"};
                if (lo.steps.size() != hi.steps.size())
                    return {false, "greedy order changed the filtration length"};
                for (size_t t = 0; t < lo.steps.size(); ++t)
                    if (lo.steps[t].dims() != hi.steps[t].dims())
                        return {false, "greedy order changed the dimension-vector sequence"};
                ++count;
            }
        }
    }
    return {true, std::to_string(count) + " exhaustive (rep, sigma) pairs over F2"};
}
