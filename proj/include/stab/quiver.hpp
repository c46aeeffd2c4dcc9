#pragma once

#include "stab/gf.hpp"
#include "stab/matrix.hpp"
#include "stab/parallel.hpp"
#include "stab/rng.hpp"
#include "stab/sheaf.hpp"

#include <cstdint>
#include <mutex>
#include <optional>
#include <variant>

namespace stab::quiver {

// The bipartite labelled quiver: vertices v_1..v_j0, w_1..w_j0, and h[i][j]
// arrows from v_i to w_j (the dimension of the label space H_ij).
struct QuiverSpec {
    int j0 = 0;
    std::vector<std::vector<int>> h;
    void validate() const;
};

// Dimension vector (d_11, d_12, ..., d_{j0 1}, d_{j0 2}).
using DimVector = std::vector<int>;

inline int vdim(const DimVector& d, int i) { return d[2 * static_cast<size_t>(i)]; }
inline int wdim(const DimVector& d, int j) { return d[2 * static_cast<size_t>(j) + 1]; }

// A point of Rep(Q, d): maps[i][j][k] is the matrix of the action of the
// k-th basis element of H_ij, shape wdim(j) x vdim(i).
template <class K>
struct Rep {
    QuiverSpec spec;
    DimVector dims;
    std::vector<std::vector<std::vector<Mat<K>>>> maps;
    K ex{};

    int vdim(int i) const { return quiver::vdim(dims, i); }
    int wdim(int j) const { return quiver::wdim(dims, j); }
    const Mat<K>& map(int i, int j, int k) const {
        return maps[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)];
    }
    void validate() const;
};

// Submodule witness: per-vertex row bases in canonical RREF.
template <class K>
struct Submodule {
    std::vector<Mat<K>> V, W;

    DimVector dims() const {
        DimVector d;
        for (size_t i = 0; i < V.size(); ++i) {
            d.push_back(static_cast<int>(V[i].rows()));
            d.push_back(static_cast<int>(W[i].rows()));
        }
        return d;
    }
    bool is_zero() const {
        for (const auto& m : V)
            if (m.rows()) return false;
        for (const auto& m : W)
            if (m.rows()) return false;
        return true;
    }
    friend bool operator==(const Submodule& a, const Submodule& b) {
        return a.V == b.V && a.W == b.W;
    }
};

// ---- theta, slope, character (field-independent) ----

// theta_sigma for a module of dimension vector d; throws on zero denominators.
std::vector<Scalar> theta_vector(const sheaf::StabilityParameter& sigma, const DimVector& d);

Scalar theta_of(const DimVector& subdims, const std::vector<Scalar>& theta);

struct SlopeValue {
    enum Kind { Finite, Infinite } kind = Finite;
    Scalar value; // meaningful when Finite

    static SlopeValue inf() { return SlopeValue{Infinite, Scalar(0)}; }
    static SlopeValue finite(Scalar v) { return SlopeValue{Finite, std::move(v)}; }
    static int cmp(const SlopeValue& a, const SlopeValue& b);
    std::string str() const;
};

// slope mu = sum sigma_j dim V_j / sum sigma_j dim W_j in [0, infinity];
// throws when both sums vanish.
SlopeValue slope_mu(const sheaf::StabilityParameter& sigma, const DimVector& subdims);
std::optional<SlopeValue> try_slope(const sheaf::StabilityParameter& sigma, const DimVector& subdims);

// Degenerate: V' = 0 everywhere and W'_i = 0 wherever sigma_i != 0.
bool is_degenerate(const DimVector& subdims, const sheaf::StabilityParameter& sigma);

// Exponent vector of the linearizing character chi_theta: the negated theta.
std::vector<Scalar> character_of(const sheaf::StabilityParameter& sigma, const DimVector& d);

// d = (P_1(n), P_1(m), ..., P_{j0}(n), P_{j0}(m)); requires m > n and positive entries.
DimVector expected_dimvec(const sheaf::SheafClass& e, long long n, long long m);

// ---- submodule machinery (templated over the field) ----

template <class K>
Submodule<K> zero_submodule(const Rep<K>& rep) {
    Submodule<K> s;
    for (int i = 0; i < rep.spec.j0; ++i) {
        s.V.push_back(zero_space(static_cast<size_t>(rep.vdim(i)), rep.ex));
        s.W.push_back(zero_space(static_cast<size_t>(rep.wdim(i)), rep.ex));
    }
    return s;
}

template <class K>
Submodule<K> full_submodule(const Rep<K>& rep) {
    Submodule<K> s;
    for (int i = 0; i < rep.spec.j0; ++i) {
        s.V.push_back(full_space(static_cast<size_t>(rep.vdim(i)), rep.ex));
        s.W.push_back(full_space(static_cast<size_t>(rep.wdim(i)), rep.ex));
    }
    return s;
}

// Minimal admissible W-parts over given V-parts: W_j = sum_l phi_lj(V_l (x) H_lj).
template <class K>
std::vector<Mat<K>> min_wparts(const Rep<K>& rep, const std::vector<Mat<K>>& vparts) {
    std::vector<Mat<K>> w;
    for (int j = 0; j < rep.spec.j0; ++j) {
        Mat<K> acc = zero_space(static_cast<size_t>(rep.wdim(j)), rep.ex);
        for (int l = 0; l < rep.spec.j0; ++l)
            for (int k = 0; k < rep.spec.h[static_cast<size_t>(l)][static_cast<size_t>(j)]; ++k)
                acc = span_sum(acc, image_of(rep.map(l, j, k), vparts[static_cast<size_t>(l)]));
        w.push_back(std::move(acc));
    }
    return w;
}

// Tight closure of per-vertex seed subspaces (constructive recipe:
// W' = sum phi(seed (x) H), then V' = the full preimage of W').
template <class K>
Submodule<K> tight_closure(const Rep<K>& rep, const std::vector<Mat<K>>& vseeds) {
    rep.validate();
    if (vseeds.size() != static_cast<size_t>(rep.spec.j0))
        throw input_error("tight_closure: seed count != j0");
    for (int i = 0; i < rep.spec.j0; ++i)
        if (vseeds[static_cast<size_t>(i)].cols() != static_cast<size_t>(rep.vdim(i)))
            throw input_error("tight_closure: seed shape mismatch");
    Submodule<K> out;
    out.W = min_wparts(rep, vseeds);
    for (int jv = 0; jv < rep.spec.j0; ++jv) {
        Mat<K> v = full_space(static_cast<size_t>(rep.vdim(jv)), rep.ex);
        for (int k = 0; k < rep.spec.j0; ++k)
            for (int m = 0; m < rep.spec.h[static_cast<size_t>(jv)][static_cast<size_t>(k)]; ++m)
                v = span_intersect(v, preimage_of(rep.map(jv, k, m), out.W[static_cast<size_t>(k)]));
        out.V.push_back(std::move(v));
    }
    return out;
}

// The submodule closure condition: phi(V'_i) inside W'_j for all arrows.
template <class K>
bool closure_holds(const Rep<K>& rep, const Submodule<K>& s) {
    for (int i = 0; i < rep.spec.j0; ++i)
        for (int j = 0; j < rep.spec.j0; ++j)
            for (int k = 0; k < rep.spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)]; ++k)
                if (!span_contains(s.W[static_cast<size_t>(j)],
                                   image_of(rep.map(i, j, k), s.V[static_cast<size_t>(i)])))
                    return false;
    return true;
}

// Generated type: for every source vertex with V_i != 0 and every target
// vertex j, the arrows into j are jointly injective on V_i.  This is the
// module-side shadow of global generation of the label spaces: a section
// killed by every multiplication into one target must vanish.
template <class K>
bool generated_type(const Rep<K>& rep) {
    for (int i = 0; i < rep.spec.j0; ++i) {
        if (rep.vdim(i) == 0) continue;
        for (int j = 0; j < rep.spec.j0; ++j) {
            if (rep.spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0) return false;
            Mat<K> joint = full_space(static_cast<size_t>(rep.vdim(i)), rep.ex);
            for (int k = 0; k < rep.spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)]; ++k)
                joint = span_intersect(joint, rep.map(i, j, k).kernel());
            if (joint.rows() != 0) return false;
        }
    }
    return true;
}

// ---- canonical subspace enumeration over F_q ----

// Subspaces of F_q^n in a fixed canonical order: dimension ascending, pivot
// columns lexicographic, free entries counted base q.  Index 0 is the zero
// space, the last index is the full space.
class SubspaceEnum {
public:
    SubspaceEnum(const GF& field, size_t n);
    uint64_t total() const { return total_; }
    Mat<Fq> decode(uint64_t index) const;

private:
    const GF* F;
    size_t n_;
    uint64_t total_;
    struct Block {
        std::vector<size_t> pivots;
        uint64_t count;
        uint64_t cum;
    };
    std::vector<Block> blocks_;
};

// ---- the exhaustive V-tuple scan (OpenMP kernel + serial reference) ----

struct VScanResult {
    uint64_t total = 0;                  // tuples scanned
    bool found_positive = false;
    uint64_t first_positive = 0;         // canonical index of the first theta > 0
    std::vector<uint64_t> zero_indices;  // proper nonzero tuples with theta == 0
};

// Scans every tuple of V-subspaces, pairing each with its minimal admissible
// W-parts; theta over that pair dominates theta over every submodule sharing
// the V-parts, so the scan is a complete semistability certificate.
VScanResult scan_vtuples(const Rep<Fq>& rep, const std::vector<Scalar>& theta, uint64_t cap,
                         ExecMode mode);

// Decode tuple index back into V-parts (same canonical order as the scan).
std::vector<Mat<Fq>> decode_vtuple(const Rep<Fq>& rep, uint64_t index);
uint64_t count_vtuples(const Rep<Fq>& rep); // saturating

// ---- semistability verdicts ----

enum class CheckKind { Stable, Semistable, Unstable, NoDestabilizerFound };

struct ExhaustiveFiniteField {
    uint64_t cap = 1000000;
    ExecMode mode = ExecMode::Parallel;
};
struct SeededSearch {
    uint64_t seed = 0;
    int trials = 200;
};
using Strategy = std::variant<ExhaustiveFiniteField, SeededSearch>;

template <class K>
struct CheckResult {
    CheckKind kind = CheckKind::Stable;
    std::optional<Submodule<K>> witness;    // Unstable
    std::vector<Submodule<K>> destabilizers; // Semistable: theta = 0 witnesses
    uint64_t trials = 0;
    bool exhaustive = false;
};

CheckResult<Fq> semistability_check(const Rep<Fq>& rep, const sheaf::StabilityParameter& sigma,
                                    const Strategy& strategy);
CheckResult<Scalar> semistability_check(const Rep<Scalar>& rep,
                                        const sheaf::StabilityParameter& sigma,
                                        const SeededSearch& strategy);

// Slope-form semistability: no proper nonzero submodule with defined slope
// exceeds the module's slope.  Meaningful even when theta cannot be formed
// (one side of the dimension vector carries no sigma-mass).
bool slope_semistable(const Rep<Fq>& rep, const sheaf::StabilityParameter& sigma,
                      uint64_t cap = 1000000);

// ---- filtrations ----

template <class K>
struct HnResult {
    std::vector<Submodule<K>> steps;   // strictly increasing, last is the full module
    std::vector<SlopeValue> slopes;    // factor slopes, strictly decreasing
    std::vector<Rep<K>> factors;
    bool exhaustive = true;
};

HnResult<Fq> hn_filtration(const Rep<Fq>& rep, const sheaf::StabilityParameter& sigma,
                           uint64_t cap = 1000000, bool greedy_from_top = true);

template <class K>
struct JhResult {
    std::vector<Submodule<K>> steps;
    std::vector<Rep<K>> factors; // stable graded pieces
};

JhResult<Fq> jh_filtration(const Rep<Fq>& rep, const sheaf::StabilityParameter& sigma,
                           uint64_t cap = 1000000);

struct IsoResult {
    bool isomorphic = false;
    bool certain = true; // false when decided by bounded random search only
};

IsoResult is_isomorphic(const Rep<Fq>& a, const Rep<Fq>& b, uint64_t seed = 0);
IsoResult is_isomorphic(const Rep<Scalar>& a, const Rep<Scalar>& b, uint64_t seed = 0);

struct SEquivResult {
    bool equivalent = false;
    bool certain = true;
};

SEquivResult s_equivalent(const Rep<Fq>& a, const Rep<Fq>& b,
                          const sheaf::StabilityParameter& sigma, uint64_t cap = 1000000);

// ---- sub/quotient representations ----

template <class K>
Rep<K> sub_rep(const Rep<K>& rep, const Submodule<K>& s);

template <class K>
struct QuotientData {
    Rep<K> rep;
    std::vector<Mat<K>> projV, projW; // ambient -> quotient coordinate maps
};

template <class K>
QuotientData<K> quotient_rep(const Rep<K>& rep, const Submodule<K>& s);

// Factor N_out / N_in of nested submodules, as a standalone representation.
template <class K>
Rep<K> factor_rep(const Rep<K>& rep, const Submodule<K>& inner, const Submodule<K>& outer);

// ---- runtime wrapper for scenario-driven use ----

struct AnyRep {
    std::string label;
    std::variant<Rep<Fq>, Rep<Scalar>> rep;

    DimVector dims() const;
    int j0() const;
};

// ---- template implementations ----

template <class K>
void Rep<K>::validate() const {
    spec.validate();
    if (dims.size() != 2 * static_cast<size_t>(spec.j0))
        throw input_error("representation: dimension vector length != 2*j0");
    for (int x : dims)
        if (x < 0) throw input_error("representation: negative dimension");
    if (maps.size() != static_cast<size_t>(spec.j0))
        throw input_error("representation: map table shape mismatch");
    for (int i = 0; i < spec.j0; ++i) {
        if (maps[static_cast<size_t>(i)].size() != static_cast<size_t>(spec.j0))
            throw input_error("representation: map table shape mismatch");
        for (int j = 0; j < spec.j0; ++j) {
            const auto& arrows = maps[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (arrows.size() != static_cast<size_t>(spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)]))
                throw input_error("representation: arrow count != h[i][j]");
            for (const auto& m : arrows)
                if (m.rows() != static_cast<size_t>(wdim(j)) || m.cols() != static_cast<size_t>(vdim(i)))
                    throw input_error("representation: map shape mismatch");
        }
    }
}

template <class K>
Rep<K> sub_rep(const Rep<K>& rep, const Submodule<K>& s) {
    Rep<K> out;
    out.spec = rep.spec;
    out.ex = rep.ex;
    out.dims = s.dims();
    out.maps.assign(static_cast<size_t>(rep.spec.j0),
                    std::vector<std::vector<Mat<K>>>(static_cast<size_t>(rep.spec.j0)));
    for (int i = 0; i < rep.spec.j0; ++i)
        for (int j = 0; j < rep.spec.j0; ++j)
            for (int k = 0; k < rep.spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)]; ++k) {
                const Mat<K>& vb = s.V[static_cast<size_t>(i)];
                const Mat<K>& wb = s.W[static_cast<size_t>(j)];
                Mat<K> psi(wb.rows(), vb.rows(), rep.ex);
                for (size_t c = 0; c < vb.rows(); ++c) {
                    std::vector<K> img = rep.map(i, j, k).apply(vb.row(c));
                    std::vector<K> coords = coords_in_basis(wb, img);
                    for (size_t r = 0; r < wb.rows(); ++r) psi.at(r, c) = coords[r];
                }
                out.maps[static_cast<size_t>(i)][static_cast<size_t>(j)].push_back(std::move(psi));
            }
    return out;
}

namespace detail {
// Coordinates not used as pivots by an RREF row basis; they index a basis of
// the quotient space.
template <class K>
std::vector<size_t> complement_coords(const Mat<K>& basis, size_t n) {
    std::vector<bool> is_pivot(n, false);
    for (size_t i = 0; i < basis.rows(); ++i) {
        size_t p = 0;
        while (p < n && basis.at(i, p).is_zero()) ++p;
        if (p < n) is_pivot[p] = true;
    }
    std::vector<size_t> comp;
    for (size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) comp.push_back(c);
    return comp;
}

// Projection onto the complement coordinates (kills the row space of basis).
template <class K>
Mat<K> complement_projection(const Mat<K>& basis, const std::vector<size_t>& comp, size_t n,
                             const K& ex) {
    std::vector<size_t> pivots;
    for (size_t i = 0; i < basis.rows(); ++i) {
        size_t p = 0;
        while (p < n && basis.at(i, p).is_zero()) ++p;
        pivots.push_back(p);
    }
    Mat<K> proj(comp.size(), n, ex);
    for (size_t r = 0; r < comp.size(); ++r) proj.at(r, comp[r]) = one_like(ex);
    for (size_t t = 0; t < pivots.size(); ++t)
        for (size_t r = 0; r < comp.size(); ++r)
            proj.at(r, pivots[t]) = zero_like(ex) - basis.at(t, comp[r]);
    return proj;
}

template <class K>
Mat<K> coordinate_lift(const std::vector<size_t>& comp, size_t n, const K& ex) {
    Mat<K> lift(n, comp.size(), ex);
    for (size_t r = 0; r < comp.size(); ++r) lift.at(comp[r], r) = one_like(ex);
    return lift;
}
} // namespace detail

template <class K>
QuotientData<K> quotient_rep(const Rep<K>& rep, const Submodule<K>& s) {
    QuotientData<K> out;
    out.rep.spec = rep.spec;
    out.rep.ex = rep.ex;
    std::vector<Mat<K>> liftV;
    for (int i = 0; i < rep.spec.j0; ++i) {
        size_t nv = static_cast<size_t>(rep.vdim(i));
        size_t nw = static_cast<size_t>(rep.wdim(i));
        std::vector<size_t> cv = detail::complement_coords(s.V[static_cast<size_t>(i)], nv);
        std::vector<size_t> cw = detail::complement_coords(s.W[static_cast<size_t>(i)], nw);
        Mat<K> pv = detail::complement_projection(s.V[static_cast<size_t>(i)], cv, nv, rep.ex);
        Mat<K> pw = detail::complement_projection(s.W[static_cast<size_t>(i)], cw, nw, rep.ex);
        out.rep.dims.push_back(static_cast<int>(pv.rows()));
        out.rep.dims.push_back(static_cast<int>(pw.rows()));
        liftV.push_back(detail::coordinate_lift<K>(cv, nv, rep.ex));
        out.projV.push_back(std::move(pv));
        out.projW.push_back(std::move(pw));
    }
    out.rep.maps.assign(static_cast<size_t>(rep.spec.j0),
                        std::vector<std::vector<Mat<K>>>(static_cast<size_t>(rep.spec.j0)));
    for (int i = 0; i < rep.spec.j0; ++i)
        for (int j = 0; j < rep.spec.j0; ++j)
            for (int k = 0; k < rep.spec.h[static_cast<size_t>(i)][static_cast<size_t>(j)]; ++k)
                out.rep.maps[static_cast<size_t>(i)][static_cast<size_t>(j)].push_back(
                    out.projW[static_cast<size_t>(j)] * rep.map(i, j, k) *
                    liftV[static_cast<size_t>(i)]);
    return out;
}

template <class K>
Rep<K> factor_rep(const Rep<K>& rep, const Submodule<K>& inner, const Submodule<K>& outer) {
    Rep<K> restricted = sub_rep(rep, outer);
    // express the inner bases in the outer coordinates
    Submodule<K> inner_coords;
    for (size_t i = 0; i < outer.V.size(); ++i) {
        Mat<K> vi(inner.V[i].rows(), outer.V[i].rows(), rep.ex);
        for (size_t r = 0; r < inner.V[i].rows(); ++r)
            vi.set_row(r, coords_in_basis(outer.V[i], inner.V[i].row(r)));
        Mat<K> wi(inner.W[i].rows(), outer.W[i].rows(), rep.ex);
        for (size_t r = 0; r < inner.W[i].rows(); ++r)
            wi.set_row(r, coords_in_basis(outer.W[i], inner.W[i].row(r)));
        inner_coords.V.push_back(row_span(vi));
        inner_coords.W.push_back(row_span(wi));
    }
    return quotient_rep(restricted, inner_coords).rep;
}

} // namespace stab::quiver
