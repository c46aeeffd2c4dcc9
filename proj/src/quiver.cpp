#include "stab/quiver.hpp"
#include "stab/error.hpp"

#include <algorithm>
#include <atomic>

namespace stab::quiver {

void QuiverSpec::validate() const {
    if (j0 < 1) throw input_error("quiver: j0 must be positive");
    if (h.size() != static_cast<size_t>(j0)) throw input_error("quiver: h must be j0 x j0");
    bool any = false;
    for (const auto& row : h) {
        if (row.size() != static_cast<size_t>(j0)) throw input_error("quiver: h must be j0 x j0");
        for (int x : row) {
            if (x < 0) throw input_error("quiver: negative arrow multiplicity");
            any = any || x > 0;
        }
    }
    if (!any) throw input_error("quiver: at least one arrow required");
}

std::vector<Scalar> theta_vector(const sheaf::StabilityParameter& sigma, const DimVector& d) {
    sigma.validate();
    if (d.size() != 2 * sigma.size()) throw input_error("theta_vector: dims length != 2*j0");
    Scalar den1(0), den2(0);
    for (size_t j = 0; j < sigma.size(); ++j) {
        den1 += sigma.sigma[j] * Scalar(vdim(d, static_cast<int>(j)));
        den2 += sigma.sigma[j] * Scalar(wdim(d, static_cast<int>(j)));
    }
    if (den1.is_zero() || den2.is_zero())
        throw input_error("theta_vector: zero denominator (dimension vector invariant fails)");
    std::vector<Scalar> out(d.size(), Scalar(0));
    for (size_t j = 0; j < sigma.size(); ++j) {
        out[2 * j] = sigma.sigma[j] / den1;
        out[2 * j + 1] = (Scalar(0) - sigma.sigma[j]) / den2;
    }
    return out;
}

Scalar theta_of(const DimVector& subdims, const std::vector<Scalar>& theta) {
    if (subdims.size() != theta.size()) throw input_error("theta_of: length mismatch");
    Scalar out(0);
    for (size_t t = 0; t < theta.size(); ++t) out += theta[t] * Scalar(subdims[t]);
    return out;
}

int SlopeValue::cmp(const SlopeValue& a, const SlopeValue& b) {
    if (a.kind == Infinite && b.kind == Infinite) return 0;
    if (a.kind == Infinite) return 1;
    if (b.kind == Infinite) return -1;
    return Scalar::cmp(a.value, b.value);
}

std::string SlopeValue::str() const { return kind == Infinite ? "inf" : value.str(); }

std::optional<SlopeValue> try_slope(const sheaf::StabilityParameter& sigma,
                                    const DimVector& subdims) {
    if (subdims.size() != 2 * sigma.size()) throw input_error("slope: dims length != 2*j0");
    Scalar num(0), den(0);
    for (size_t j = 0; j < sigma.size(); ++j) {
        num += sigma.sigma[j] * Scalar(vdim(subdims, static_cast<int>(j)));
        den += sigma.sigma[j] * Scalar(wdim(subdims, static_cast<int>(j)));
    }
    if (den.is_zero()) {
        if (num.is_zero()) return std::nullopt;
        return SlopeValue::inf();
    }
    return SlopeValue::finite(num / den);
}

SlopeValue slope_mu(const sheaf::StabilityParameter& sigma, const DimVector& subdims) {
    auto s = try_slope(sigma, subdims);
    if (!s) throw input_error("slope undefined: both weighted sums vanish");
    return *s;
}

bool is_degenerate(const DimVector& subdims, const sheaf::StabilityParameter& sigma) {
    if (subdims.size() != 2 * sigma.size()) throw input_error("is_degenerate: length mismatch");
    for (size_t j = 0; j < sigma.size(); ++j) {
        if (vdim(subdims, static_cast<int>(j)) != 0) return false;
        if (!sigma.sigma[j].is_zero() && wdim(subdims, static_cast<int>(j)) != 0) return false;
    }
    return true;
}

std::vector<Scalar> character_of(const sheaf::StabilityParameter& sigma, const DimVector& d) {
    std::vector<Scalar> theta = theta_vector(sigma, d);
    for (auto& x : theta) x = -x;
    return theta;
}

DimVector expected_dimvec(const sheaf::SheafClass& e, long long n, long long m) {
    if (m <= n) throw input_error("expected_dimvec: m must exceed n");
    e.validate();
    DimVector out;
    for (size_t j = 0; j < e.bundles(); ++j) {
        for (long long point : {n, m}) {
            Scalar v = sheaf::hilbert_of_bundle(e, j).eval(Scalar(point));
            if (v.sign() <= 0)
                throw input_error("expected_dimvec: nonpositive entry (n, m too small)");
            if (!v.is_rational() || !v.as_rational().is_integer())
                throw input_error("expected_dimvec: non-integral Hilbert value");
            out.push_back(static_cast<int>(v.as_rational().num().to_int64()));
        }
    }
    return out;
}

// ---- subspace enumeration ----

SubspaceEnum::SubspaceEnum(const GF& field, size_t n) : F(&field), n_(n) {
    total_ = 0;
    for (size_t k = 0; k <= n; ++k) {
        std::vector<size_t> idx(k);
        for (size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            uint64_t freebies = 0;
            std::vector<bool> is_pivot(n, false);
            for (size_t p : idx) is_pivot[p] = true;
            for (size_t r = 0; r < k; ++r)
                for (size_t c = idx[r] + 1; c < n; ++c)
                    if (!is_pivot[c]) ++freebies;
            uint64_t count = 1;
            for (uint64_t f = 0; f < freebies; ++f) count *= F->q();
            blocks_.push_back(Block{idx, count, total_});
            total_ += count;
            if (k == 0) break;
            size_t i = k;
            bool advanced = false;
            while (i-- > 0) {
                if (idx[i] + (k - i) < n) {
                    ++idx[i];
                    for (size_t t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
}

Mat<Fq> SubspaceEnum::decode(uint64_t index) const {
    if (index >= total_) throw input_error("subspace index out of range");
    size_t b = 0;
    while (b + 1 < blocks_.size() && blocks_[b + 1].cum <= index) ++b;
    const Block& blk = blocks_[b];
    uint64_t local = index - blk.cum;
    const size_t k = blk.pivots.size();
    Fq ex{0, F};
    Mat<Fq> out(k, n_, ex);
    std::vector<bool> is_pivot(n_, false);
    for (size_t p : blk.pivots) is_pivot[p] = true;
    for (size_t r = 0; r < k; ++r) out.at(r, blk.pivots[r]) = Fq{1, F};
    for (size_t r = 0; r < k; ++r)
        for (size_t c = blk.pivots[r] + 1; c < n_; ++c) {
            if (is_pivot[c]) continue;
            out.at(r, c) = Fq{static_cast<uint8_t>(local % F->q()), F};
            local /= F->q();
        }
    return out;
}

// ---- V-tuple scan ----

namespace {

struct TupleSpace {
    std::vector<SubspaceEnum> per_vertex;
    uint64_t total = 1;
    bool overflow = false;

    explicit TupleSpace(const Rep<Fq>& rep) {
        const GF& F = *rep.ex.F;
        for (int i = 0; i < rep.spec.j0; ++i) {
            per_vertex.emplace_back(F, static_cast<size_t>(rep.vdim(i)));
            uint64_t t = per_vertex.back().total();
            if (total > (1ull << 62) / (t ? t : 1)) overflow = true;
            total *= t;
        }
    }

    std::vector<Mat<Fq>> decode(uint64_t idx) const {
        std::vector<Mat<Fq>> out;
        for (const auto& e : per_vertex) {
            out.push_back(e.decode(idx % e.total()));
            idx /= e.total();
        }
        return out;
    }
};

} // namespace

uint64_t count_vtuples(const Rep<Fq>& rep) {
    TupleSpace ts(rep);
    return ts.overflow ? ~0ull : ts.total;
}

std::vector<Mat<Fq>> decode_vtuple(const Rep<Fq>& rep, uint64_t index) {
    return TupleSpace(rep).decode(index);
}

VScanResult scan_vtuples(const Rep<Fq>& rep, const std::vector<Scalar>& theta, uint64_t cap,
                         ExecMode mode) {
    rep.validate();
    TupleSpace ts(rep);
    if (ts.overflow || ts.total > cap)
        throw cap_exceeded("exhaustive scan needs " +
                           (ts.overflow ? std::string("2^62+") : std::to_string(ts.total)) +
                           " tuples, cap is " + std::to_string(cap));
    VScanResult out;
    out.total = ts.total;
    std::atomic<uint64_t> first_pos{~0ull};
    std::mutex zeros_mu;
    std::vector<uint64_t> zeros;

    for_each_index(mode, static_cast<std::ptrdiff_t>(ts.total), [&](std::ptrdiff_t signed_idx) {
        uint64_t idx = static_cast<uint64_t>(signed_idx);
        std::vector<Mat<Fq>> vparts = ts.decode(idx);
        std::vector<Mat<Fq>> wparts = min_wparts(rep, vparts);
        Scalar th(0);
        bool proper = false, nonzero = false;
        for (int j = 0; j < rep.spec.j0; ++j) {
            int dv = static_cast<int>(vparts[static_cast<size_t>(j)].rows());
            int dw = static_cast<int>(wparts[static_cast<size_t>(j)].rows());
            th += theta[2 * static_cast<size_t>(j)] * Scalar(dv) +
                  theta[2 * static_cast<size_t>(j) + 1] * Scalar(dw);
            proper = proper || dv < rep.vdim(j) || dw < rep.wdim(j);
            nonzero = nonzero || dv > 0 || dw > 0;
        }
        if (!proper) return;
        int s = th.sign();
        if (s > 0) {
            uint64_t cur = first_pos.load();
            while (idx < cur && !first_pos.compare_exchange_weak(cur, idx)) {
            }
        } else if (s == 0 && nonzero) {
            std::lock_guard<std::mutex> lock(zeros_mu);
            zeros.push_back(idx);
        }
    });

    if (first_pos.load() != ~0ull) {
        out.found_positive = true;
        out.first_positive = first_pos.load();
    }
    std::sort(zeros.begin(), zeros.end());
    out.zero_indices = std::move(zeros);
    return out;
}

// ---- semistability verdicts ----

namespace {

template <class K, class RandomElem>
CheckResult<K> seeded_check_impl(const Rep<K>& rep, const sheaf::StabilityParameter& sigma,
                                 const SeededSearch& ss, const RandomElem& random_elem) {
    rep.validate();
    std::vector<Scalar> theta = theta_vector(sigma, rep.dims);

    // deterministic candidate seed subspaces per vertex
    std::vector<std::vector<Mat<K>>> cands(static_cast<size_t>(rep.spec.j0));
    for (int i = 0; i < rep.spec.j0; ++i) {
        size_t nv = static_cast<size_t>(rep.vdim(i));
        auto& list = cands[static_cast<size_t>(i)];
        list.push_back(zero_space(nv, rep.ex));
        list.push_back(full_space(nv, rep.ex));
        for (size_t t = 0; t < nv; ++t) {
            Mat<K> e(1, nv, rep.ex);
            e.at(0, t) = one_like(rep.ex);
            list.push_back(row_span(e));
        }
        std::vector<Mat<K>> kernels;
        for (int j = 0; j < rep.spec.j0; ++j)
            for (int k = 0; k < rep.spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)]; ++k)
                kernels.push_back(row_span(rep.map(i, j, k).kernel()));
        for (size_t a = 0; a < kernels.size(); ++a) {
            list.push_back(kernels[a]);
            for (size_t b = a + 1; b < kernels.size(); ++b)
                list.push_back(span_intersect(kernels[a], kernels[b]));
        }
        if (!kernels.empty()) {
            Mat<K> joint = kernels[0];
            for (size_t a = 1; a < kernels.size(); ++a) joint = span_intersect(joint, kernels[a]);
            list.push_back(joint);
        }
    }

    CheckResult<K> out;
    out.kind = CheckKind::NoDestabilizerFound;
    auto probe = [&](const std::vector<Mat<K>>& seeds) -> bool {
        ++out.trials;
        Submodule<K> closure = tight_closure(rep, seeds);
        DimVector d = closure.dims();
        bool proper = false, nonzero = false;
        for (size_t t = 0; t < d.size(); ++t) {
            proper = proper || d[t] < rep.dims[t];
            nonzero = nonzero || d[t] > 0;
        }
        if (!proper || !nonzero) return false;
        if (theta_of(d, theta).sign() > 0) {
            out.kind = CheckKind::Unstable;
            out.witness = std::move(closure);
            return true;
        }
        return false;
    };

    uint64_t prod = 1;
    bool small = true;
    for (const auto& list : cands) {
        if (prod > 4096 / list.size()) {
            small = false;
            break;
        }
        prod *= list.size();
    }
    if (small) {
        std::vector<size_t> pick(cands.size(), 0);
        while (true) {
            std::vector<Mat<K>> seeds;
            for (size_t i = 0; i < cands.size(); ++i) seeds.push_back(cands[i][pick[i]]);
            if (probe(seeds)) return out;
            size_t pos = 0;
            while (pos < pick.size() && ++pick[pos] == cands[pos].size()) {
                pick[pos] = 0;
                ++pos;
            }
            if (pos == pick.size()) break;
        }
    } else {
        size_t longest = 0;
        for (const auto& list : cands) longest = std::max(longest, list.size());
        for (size_t t = 0; t < longest; ++t) {
            std::vector<Mat<K>> seeds;
            for (const auto& list : cands) seeds.push_back(list[t % list.size()]);
            if (probe(seeds)) return out;
        }
    }

    for (int t = 0; t < ss.trials; ++t) {
        Rng rng = Rng(ss.seed).fork(static_cast<uint64_t>(t));
        std::vector<Mat<K>> seeds;
        for (int i = 0; i < rep.spec.j0; ++i) {
            size_t nv = static_cast<size_t>(rep.vdim(i));
            size_t rows = nv ? rng.below(nv + 1) : 0;
            Mat<K> m(rows, nv, rep.ex);
            for (size_t r = 0; r < rows; ++r)
                for (size_t c = 0; c < nv; ++c) m.at(r, c) = random_elem(rng);
            seeds.push_back(row_span(m));
        }
        if (probe(seeds)) return out;
    }
    return out;
}

CheckResult<Fq> seeded_check_fq(const Rep<Fq>& rep, const sheaf::StabilityParameter& sigma,
                                const SeededSearch& ss) {
    const GF* F = rep.ex.F;
    return seeded_check_impl<Fq>(rep, sigma, ss, [F](Rng& rng) {
        return Fq{static_cast<uint8_t>(rng.below(F->q())), F};
    });
}

} // namespace

CheckResult<Fq> semistability_check(const Rep<Fq>& rep, const sheaf::StabilityParameter& sigma,
                                    const Strategy& strategy) {
    if (std::holds_alternative<SeededSearch>(strategy))
        return seeded_check_fq(rep, sigma, std::get<SeededSearch>(strategy));
    const auto& ex = std::get<ExhaustiveFiniteField>(strategy);
    std::vector<Scalar> theta = theta_vector(sigma, rep.dims);
    VScanResult scan = scan_vtuples(rep, theta, ex.cap, ex.mode);
    CheckResult<Fq> out;
    out.exhaustive = true;
    out.trials = scan.total;
    if (scan.found_positive) {
        out.kind = CheckKind::Unstable;
        Submodule<Fq> w;
        w.V = decode_vtuple(rep, scan.first_positive);
        w.W = min_wparts(rep, w.V);
        out.witness = std::move(w);
        return out;
    }
    for (uint64_t idx : scan.zero_indices) {
        Submodule<Fq> w;
        w.V = decode_vtuple(rep, idx);
        w.W = min_wparts(rep, w.V);
        out.destabilizers.push_back(std::move(w));
    }
    // nonzero degenerate submodules: theta = 0 witnesses living at sigma = 0 spots
    bool has_degenerate = false;
    Submodule<Fq> degen = zero_submodule(rep);
    for (size_t j = 0; j < sigma.size(); ++j)
        if (sigma.sigma[j].is_zero() && rep.wdim(static_cast<int>(j)) > 0) {
            has_degenerate = true;
            degen.W[j] = full_space(static_cast<size_t>(rep.wdim(static_cast<int>(j))), rep.ex);
        }
    if (has_degenerate) out.destabilizers.push_back(std::move(degen));
    out.kind = out.destabilizers.empty() ? CheckKind::Stable : CheckKind::Semistable;
    return out;
}

CheckResult<Scalar> semistability_check(const Rep<Scalar>& rep,
                                        const sheaf::StabilityParameter& sigma,
                                        const SeededSearch& ss) {
    return seeded_check_impl<Scalar>(rep, sigma, ss, [](Rng& rng) {
        return Scalar(Rational(rng.range(-3, 3)));
    });
}

bool slope_semistable(const Rep<Fq>& rep, const sheaf::StabilityParameter& sigma, uint64_t cap) {
    rep.validate();
    sigma.validate();
    auto mu_full = try_slope(sigma, rep.dims);
    if (!mu_full) return true; // sigma-invisible module: vacuously semistable
    TupleSpace ts(rep);
    if (ts.overflow || ts.total > cap)
        throw cap_exceeded("slope scan exceeds cap " + std::to_string(cap));
    for (uint64_t idx = 0; idx < ts.total; ++idx) {
        std::vector<Mat<Fq>> vparts = ts.decode(idx);
        std::vector<Mat<Fq>> wparts = min_wparts(rep, vparts);
        DimVector d;
        bool proper = false, nonzero = false;
        for (size_t i = 0; i < vparts.size(); ++i) {
            d.push_back(static_cast<int>(vparts[i].rows()));
            d.push_back(static_cast<int>(wparts[i].rows()));
        }
        for (size_t t = 0; t < d.size(); ++t) {
            proper = proper || d[t] < rep.dims[t];
            nonzero = nonzero || d[t] > 0;
        }
        if (!proper || !nonzero) continue;
        auto mu = try_slope(sigma, d);
        if (mu && SlopeValue::cmp(*mu, *mu_full) > 0) return false;
    }
    return true;
}

// ---- filtrations over F_q ----

namespace {

struct Candidate {
    uint64_t index = 0;
    DimVector dims;
    std::vector<Mat<Fq>> vparts, wparts;
};

// submodules N with V(N) containing vprev and W(N) = Wmin(V(N)) + W(prev)
std::vector<Candidate> chain_candidates(const Rep<Fq>& rep, const Submodule<Fq>& prev,
                                        uint64_t cap) {
    TupleSpace ts(rep);
    if (ts.overflow || ts.total > cap)
        throw cap_exceeded("filtration enumeration exceeds cap " + std::to_string(cap));
    std::vector<Candidate> out;
    for (uint64_t idx = 0; idx < ts.total; ++idx) {
        std::vector<Mat<Fq>> vparts = ts.decode(idx);
        bool contains = true;
        for (size_t i = 0; i < vparts.size() && contains; ++i)
            contains = span_contains(vparts[i], prev.V[i]);
        if (!contains) continue;
        std::vector<Mat<Fq>> wparts = min_wparts(rep, vparts);
        for (size_t j = 0; j < wparts.size(); ++j) wparts[j] = span_sum(wparts[j], prev.W[j]);
        Candidate c;
        c.index = idx;
        c.vparts = std::move(vparts);
        c.wparts = std::move(wparts);
        for (size_t i = 0; i < c.vparts.size(); ++i) {
            c.dims.push_back(static_cast<int>(c.vparts[i].rows()));
            c.dims.push_back(static_cast<int>(c.wparts[i].rows()));
        }
        out.push_back(std::move(c));
    }
    return out;
}

DimVector dim_diff(const DimVector& a, const DimVector& b) {
    DimVector out(a.size());
    for (size_t t = 0; t < a.size(); ++t) out[t] = a[t] - b[t];
    return out;
}

int total_dim(const DimVector& d) {
    int s = 0;
    for (int x : d) s += x;
    return s;
}

} // namespace

HnResult<Fq> hn_filtration(const Rep<Fq>& rep, const sheaf::StabilityParameter& sigma,
                           uint64_t cap, bool greedy_from_top) {
    rep.validate();
    sigma.validate();
    if (sigma.size() != static_cast<size_t>(rep.spec.j0))
        throw input_error("hn_filtration: sigma length != j0");
    HnResult<Fq> out;
    Submodule<Fq> prev = zero_submodule(rep);
    const DimVector full = rep.dims;
    while (prev.dims() != full) {
        std::vector<Candidate> cands = chain_candidates(rep, prev, cap);
        bool found = false;
        SlopeValue best_slope;
        int best_total = -1;
        const Candidate* best = nullptr;
        for (const auto& c : cands) {
            if (c.dims == prev.dims()) continue;
            DimVector fd = dim_diff(c.dims, prev.dims());
            auto mu = try_slope(sigma, fd);
            if (!mu) continue; // sigma-invisible extension
            int td = total_dim(fd);
            bool better = false;
            if (!found)
                better = true;
            else {
                int cs = SlopeValue::cmp(*mu, best_slope);
                if (cs > 0)
                    better = true;
                else if (cs == 0 && td > best_total)
                    better = true;
                else if (cs == 0 && td == best_total && best != nullptr)
                    better = greedy_from_top ? (c.index < best->index) : (c.index > best->index);
            }
            if (better) {
                found = true;
                best_slope = *mu;
                best_total = td;
                best = &c;
            }
        }
        if (!found) {
            // the remaining extension is sigma-invisible; absorb it as the last step
            Submodule<Fq> step = full_submodule(rep);
            out.factors.push_back(factor_rep(rep, prev, step));
            out.steps.push_back(step);
            out.slopes.push_back(SlopeValue::finite(Scalar(0)));
            break;
        }
        Submodule<Fq> step;
        step.V = best->vparts;
        step.W = best->wparts;
        out.factors.push_back(factor_rep(rep, prev, step));
        out.slopes.push_back(best_slope);
        out.steps.push_back(std::move(step));
        prev = out.steps.back();
    }
    return out;
}

JhResult<Fq> jh_filtration(const Rep<Fq>& rep, const sheaf::StabilityParameter& sigma,
                           uint64_t cap) {
    rep.validate();
    sigma.validate();
    if (!sigma.positive())
        throw input_error("jh_filtration requires a positive stability parameter");
    CheckResult<Fq> check = semistability_check(rep, sigma, ExhaustiveFiniteField{cap});
    if (check.kind == CheckKind::Unstable)
        throw input_error("jh_filtration: representation is not semistable");
    const std::vector<Scalar> theta = theta_vector(sigma, rep.dims);
    JhResult<Fq> out;
    Submodule<Fq> prev = zero_submodule(rep);
    const DimVector full = rep.dims;
    while (prev.dims() != full) {
        std::vector<Candidate> cands = chain_candidates(rep, prev, cap);
        const Candidate* best = nullptr;
        for (const auto& c : cands) {
            if (c.dims == prev.dims()) continue;
            if (theta_of(c.dims, theta).sign() != 0) continue;
            if (best == nullptr || total_dim(c.dims) < total_dim(best->dims) ||
                (total_dim(c.dims) == total_dim(best->dims) && c.index < best->index))
                best = &c;
        }
        if (best == nullptr) throw error("jh_filtration: no theta-zero step (unreachable)");
        Submodule<Fq> step;
        step.V = best->vparts;
        step.W = best->wparts;
        out.factors.push_back(factor_rep(rep, prev, step));
        out.steps.push_back(std::move(step));
        prev = out.steps.back();
    }
    return out;
}

// ---- isomorphism and S-equivalence ----

namespace {

template <class K>
struct IntertwinerSystem {
    std::vector<size_t> goff, hoff;
    size_t unknowns = 0;
    Mat<K> system;

    IntertwinerSystem(const Rep<K>& a, const Rep<K>& b) : system(0, 0, a.ex) {
        const int j0 = a.spec.j0;
        for (int i = 0; i < j0; ++i) {
            goff.push_back(unknowns);
            unknowns += static_cast<size_t>(a.vdim(i)) * static_cast<size_t>(a.vdim(i));
        }
        for (int j = 0; j < j0; ++j) {
            hoff.push_back(unknowns);
            unknowns += static_cast<size_t>(a.wdim(j)) * static_cast<size_t>(a.wdim(j));
        }
        size_t rows = 0;
        for (int i = 0; i < j0; ++i)
            for (int j = 0; j < j0; ++j)
                rows += static_cast<size_t>(a.spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)]) *
                        static_cast<size_t>(a.wdim(j)) * static_cast<size_t>(a.vdim(i));
        system = Mat<K>(rows, unknowns, a.ex);
        size_t row = 0;
        for (int i = 0; i < j0; ++i)
            for (int j = 0; j < j0; ++j)
                for (int k = 0; k < a.spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)]; ++k) {
                    const Mat<K>& pa = a.map(i, j, k);
                    const Mat<K>& pb = b.map(i, j, k);
                    const size_t wd = static_cast<size_t>(a.wdim(j));
                    const size_t vd = static_cast<size_t>(a.vdim(i));
                    // equation (r,c): sum_s h_j[r,s] pa[s,c] - sum_s pb[r,s] g_i[s,c] = 0
                    for (size_t r = 0; r < wd; ++r)
                        for (size_t c = 0; c < vd; ++c) {
                            for (size_t s = 0; s < wd; ++s)
                                system.at(row, hoff[static_cast<size_t>(j)] + r * wd + s) += pa.at(s, c);
                            for (size_t s = 0; s < vd; ++s)
                                system.at(row, goff[static_cast<size_t>(i)] + s * vd + c) -= pb.at(r, s);
                            ++row;
                        }
                }
    }

    bool blocks_invertible(const Rep<K>& a, const std::vector<K>& x) const {
        for (int i = 0; i < a.spec.j0; ++i) {
            size_t d = static_cast<size_t>(a.vdim(i));
            Mat<K> g(d, d, a.ex);
            for (size_t r = 0; r < d; ++r)
                for (size_t c = 0; c < d; ++c) g.at(r, c) = x[goff[static_cast<size_t>(i)] + r * d + c];
            if (g.rank() != d) return false;
        }
        for (int j = 0; j < a.spec.j0; ++j) {
            size_t d = static_cast<size_t>(a.wdim(j));
            Mat<K> h(d, d, a.ex);
            for (size_t r = 0; r < d; ++r)
                for (size_t c = 0; c < d; ++c) h.at(r, c) = x[hoff[static_cast<size_t>(j)] + r * d + c];
            if (h.rank() != d) return false;
        }
        return true;
    }
};

} // namespace

IsoResult is_isomorphic(const Rep<Fq>& a, const Rep<Fq>& b, uint64_t seed) {
    if (a.spec.j0 != b.spec.j0 || a.spec.h != b.spec.h || a.dims != b.dims) return {false, true};
    IntertwinerSystem<Fq> sys(a, b);
    Mat<Fq> ker = sys.system.kernel();
    const size_t s = ker.rows();
    if (s == 0) return {false, true};
    const GF& F = *a.ex.F;
    uint64_t combos = 1;
    bool small = true;
    for (size_t t = 0; t < s; ++t) {
        if (combos > 65536 / F.q()) {
            small = false;
            break;
        }
        combos *= F.q();
    }
    if (small) {
        for (uint64_t mask = 1; mask < combos; ++mask) {
            std::vector<Fq> x(sys.unknowns, Fq{0, &F});
            uint64_t m = mask;
            for (size_t t = 0; t < s; ++t) {
                Fq c{static_cast<uint8_t>(m % F.q()), &F};
                m /= F.q();
                if (c.is_zero()) continue;
                for (size_t u = 0; u < sys.unknowns; ++u) x[u] += c * ker.at(t, u);
            }
            if (sys.blocks_invertible(a, x)) return {true, true};
        }
        return {false, true};
    }
    Rng rng(seed ^ 0x15015015ull);
    for (int t = 0; t < 256; ++t) {
        std::vector<Fq> x(sys.unknowns, Fq{0, &F});
        for (size_t u = 0; u < s; ++u) {
            Fq c{static_cast<uint8_t>(rng.below(F.q())), &F};
            if (c.is_zero()) continue;
            for (size_t w = 0; w < sys.unknowns; ++w) x[w] += c * ker.at(u, w);
        }
        if (sys.blocks_invertible(a, x)) return {true, true};
    }
    return {false, false};
}

IsoResult is_isomorphic(const Rep<Scalar>& a, const Rep<Scalar>& b, uint64_t seed) {
    if (a.spec.j0 != b.spec.j0 || a.spec.h != b.spec.h || a.dims != b.dims) return {false, true};
    IntertwinerSystem<Scalar> sys(a, b);
    Mat<Scalar> ker = sys.system.kernel();
    if (ker.rows() == 0) return {false, true};
    Rng rng(seed ^ 0x35c414aull);
    for (int t = 0; t < 32; ++t) {
        std::vector<Scalar> x(sys.unknowns, Scalar(0));
        for (size_t u = 0; u < ker.rows(); ++u) {
            Scalar c(Rational(t == 0 ? 1 : rng.range(-4, 4)));
            if (c.is_zero()) continue;
            for (size_t w = 0; w < sys.unknowns; ++w) x[w] += c * ker.at(u, w);
        }
        if (sys.blocks_invertible(a, x)) return {true, true};
    }
    return {false, false}; // bounded random search only
}

SEquivResult s_equivalent(const Rep<Fq>& a, const Rep<Fq>& b,
                          const sheaf::StabilityParameter& sigma, uint64_t cap) {
    if (a.spec.j0 != b.spec.j0 || a.spec.h != b.spec.h) return {false, true};
    if (a.dims != b.dims) return {false, true};
    JhResult<Fq> ja = jh_filtration(a, sigma, cap);
    JhResult<Fq> jb = jh_filtration(b, sigma, cap);
    if (ja.factors.size() != jb.factors.size()) return {false, true};
    std::vector<bool> used(jb.factors.size(), false);
    bool certain = true;
    for (const auto& fa : ja.factors) {
        bool matched = false;
        for (size_t t = 0; t < jb.factors.size() && !matched; ++t) {
            if (used[t]) continue;
            IsoResult iso = is_isomorphic(fa, jb.factors[t]);
            certain = certain && iso.certain;
            if (iso.isomorphic) {
                used[t] = true;
                matched = true;
            }
        }
        if (!matched) return {false, certain};
    }
    return {true, certain};
}

DimVector AnyRep::dims() const {
    return std::visit([](const auto& r) { return r.dims; }, rep);
}

int AnyRep::j0() const {
    return std::visit([](const auto& r) { return r.spec.j0; }, rep);
}

} // namespace stab::quiver
