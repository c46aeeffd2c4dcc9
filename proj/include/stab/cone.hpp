#pragma once

#include "stab/matrix.hpp"
#include "stab/parallel.hpp"
#include "stab/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stab::cone {

// Symmetric degree-n multilinear form on a rank-rho lattice.  Entries are
// keyed by sorted 0-based index multisets; missing multisets read as zero.
struct IntersectionTensor {
    int n = 2;
    int rho = 1;
    std::map<std::vector<int>, Scalar> entries;

    void validate() const;
    Scalar entry(std::vector<int> idx) const;
};

struct DivisorClass {
    std::vector<Scalar> coords;
};

// Curve class stored as its pairing values against the basis divisors.
struct CurveClass {
    std::vector<Scalar> pair;
};

// Chern data of a sheaf surrogate: rank, c1 in the N^1 basis, and c2 paired
// against the degree (n-2) basis monomials.
struct ChernData {
    Scalar rank = Scalar(1);
    DivisorClass c1;
    std::map<std::vector<int>, Scalar> c2pair;
};

// Full multilinear evaluation; classes.size() must equal n.
Scalar eval(const IntersectionTensor& t, const std::vector<DivisorClass>& classes);

// Pair a degree-(n-2) functional table against D^(n-2).
Scalar pair_deg2(const std::map<std::vector<int>, Scalar>& table, const IntersectionTensor& t,
                 const DivisorClass& d);

// gamma . D for a curve class
Scalar curve_pair(const CurveClass& gamma, const DivisorClass& d);

// A_{ab} = e_a e_b L^{n-2}
Mat<Scalar> q_form_matrix(const IntersectionTensor& t, const DivisorClass& l);

struct SignatureResult {
    int pos = 0, neg = 0, zero = 0;
};

// Exact signature of a symmetric matrix by fraction-free symmetric reduction.
SignatureResult signature(const Mat<Scalar>& sym);

// beta^2 L^(n-2) > 0 and beta L^(n-1) > 0
bool kplus_contains(const IntersectionTensor& t, const DivisorClass& l, const DivisorClass& beta);

// unique beta with L^(n-2) . beta = gamma; throws infeasible_error when the
// q-form matrix is singular (a Hodge failure for this (tensor, L))
DivisorClass lefschetz_solve(const IntersectionTensor& t, const DivisorClass& l,
                             const CurveClass& gamma);

std::optional<DivisorClass> cplus_witness(const IntersectionTensor& t, const CurveClass& gamma,
                                          const DivisorClass& l);

// Delta(F) . L^(n-2) with the leading 1/rank normalization
Scalar discriminant_pair(const ChernData& f, const IntersectionTensor& t, const DivisorClass& l);

DivisorClass xi(const ChernData& gprime, const ChernData& g);

// Delta(F) L^(n-2) + r^2 (r-1)^2 beta < 0  (beta defaults to 0 in char 0)
bool bogomolov_unstable(const ChernData& f, const IntersectionTensor& t, const DivisorClass& l,
                        const Scalar& beta_const = Scalar(0));

struct IdentityReport {
    Scalar lhs, rhs;
    bool equal = false;
};

// Extension identity in the Delta_std = 2r c2 - (r-1) c1^2 normalization:
//   Delta_std(E)/r - Delta_std(A)/p - Delta_std(B)/q = -(pq/r) xi_{A,B}^2,
// all paired with L^(n-2), where c(E) = c(A) c(B).  Self-checking.
IdentityReport extension_discriminant_identity(const ChernData& a, const ChernData& b,
                                               const IntersectionTensor& t, const DivisorClass& l);

// (gamma_inf L1)(gamma_0 L2) - (gamma_inf L2)(gamma_0 L1) != 0
bool crossterm_nondegenerate(const CurveClass& g0, const CurveClass& ginf, const DivisorClass& l1,
                             const DivisorClass& l2);

struct PathCertificate {
    Rational u;              // projective parameter of gamma_u = (1-u) g0 + u ginf
    bool ok = false;
    Rational s;              // L(s) = (1-s) L2 + s L1, meaningful when ok
    DivisorClass beta;       // the K+ witness, meaningful when ok
};

struct PathResult {
    std::vector<PathCertificate> certificates;
    bool all_ok = false;
};

// Per-t certificates that gamma_t stays inside C+(X), searched over rational
// s by dyadic grid refinement up to 2^-s_resolution.
PathResult cplus_path_certificate(const IntersectionTensor& t, const CurveClass& g0,
                                  const CurveClass& ginf, const DivisorClass& l1,
                                  const DivisorClass& l2, int t_samples, int s_resolution,
                                  ExecMode mode = ExecMode::Parallel);

// Example library with declared sample ample classes.
struct BundledTensor {
    std::string name;
    IntersectionTensor tensor;
    std::vector<DivisorClass> amples;
};

const std::vector<BundledTensor>& bundled_tensors();
const BundledTensor& bundled_tensor(const std::string& name);

} // namespace stab::cone
