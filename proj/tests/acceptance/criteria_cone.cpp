#include "acceptance.hpp"

#include "stab/cone.hpp"
#include "stab/rng.hpp"

using namespace stab;
using namespace stab::cone;

namespace {

DivisorClass random_ample_combo(Rng& rng, const BundledTensor& bt) {
    DivisorClass out;
    out.coords.assign(static_cast<size_t>(bt.tensor.rho), Scalar(0));
    for (const auto& a : bt.amples) {
        long long w = rng.range(0, 3);
        for (size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += Scalar(w) * a.coords[i];
    }
    // ensure a strictly ample class by adding one generator
    const auto& base = bt.amples[rng.below(bt.amples.size())];
    for (size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += base.coords[i];
    return out;
}

CurveClass push(const IntersectionTensor& t, const DivisorClass& beta, const DivisorClass& l) {
    CurveClass out;
    std::vector<DivisorClass> args(static_cast<size_t>(t.n), l);
    for (int i = 0; i < t.rho; ++i) {
        DivisorClass ei;
        ei.coords.assign(static_cast<size_t>(t.rho), Scalar(0));
        ei.coords[static_cast<size_t>(i)] = Scalar(1);
        args[0] = ei;
        args[1] = beta;
        out.pair.push_back(eval(t, args));
    }
    return out;
}

} // namespace

// Criterion 6: all bundled tensors, 5 declared ample classes each, exact
// signature (1, rho - 1, 0).
CriterionResult criterion_hodge_signature() {
    int checked = 0;
    for (const auto& bt : bundled_tensors()) {
        if (bt.amples.size() < 5) return {false, bt.name + ": fewer than 5 sample amples"};
        for (const auto& l : bt.amples) {
            SignatureResult sig = signature(q_form_matrix(bt.tensor, l));
            if (!(sig.pos == 1 && sig.neg == bt.tensor.rho - 1 && sig.zero == 0))
                return {false, bt.name + ": signature (" + std::to_string(sig.pos) + "," +
                                   std::to_string(sig.neg) + "," + std::to_string(sig.zero) + ")"};
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " (tensor, ample) pairs, signature (1, rho-1, 0)"};
}

// Criterion 7: 10^4 random Chern-data pairs satisfy the extension identity
// in the Delta_std normalization, on surfaces and threefolds.
CriterionResult criterion_extension_identity() {
    Rng rng(0xacc07);
    const char* names[] = {"P2", "P1xP1", "Bl1P2", "P3", "P1xP1xP1", "P1xP2"};
    for (int it = 0; it < 10000; ++it) {
        const BundledTensor& bt = bundled_tensor(names[rng.below(6)]);
        auto random_chern = [&]() {
            ChernData f;
            f.rank = Scalar(rng.range(1, 5));
            f.c1.coords.assign(static_cast<size_t>(bt.tensor.rho), Scalar(0));
            for (auto& x : f.c1.coords) x = Scalar(Rational(rng.range(-6, 6), rng.range(1, 2)));
            if (bt.tensor.n == 2) {
                f.c2pair[{}] = Scalar(Rational(rng.range(-9, 9), rng.range(1, 2)));
            } else {
                for (int b = 0; b < bt.tensor.rho; ++b)
                    f.c2pair[{b}] = Scalar(Rational(rng.range(-9, 9), rng.range(1, 2)));
            }
            return f;
        };
        ChernData a = random_chern(), b = random_chern();
        const DivisorClass& l = bt.amples[rng.below(bt.amples.size())];
        IdentityReport rep = extension_discriminant_identity(a, b, bt.tensor, l);
        if (!rep.equal)
            return {false, std::string("identity failed on ") + bt.name + " at iteration " +
                               std::to_string(it)};
    }
    return {true, "10000 random Chern pairs, identity exact in the Delta_std normalization"};
}

// Criterion 10: 50 random path instances on the n = 3 tensors, 101-point
// projective t-grid, certificate at every t.  Target < 120 s.
CriterionResult criterion_cplus_paths() {
    Rng rng(0xacc10);
    const char* names[] = {"P3", "P1xP2", "P1xP1xP1"};
    for (int it = 0; it < 50; ++it) {
        const BundledTensor& bt = bundled_tensor(names[rng.below(3)]);
        DivisorClass l1 = random_ample_combo(rng, bt);
        DivisorClass l2 = random_ample_combo(rng, bt);
        DivisorClass b1 = random_ample_combo(rng, bt);
        DivisorClass b2 = random_ample_combo(rng, bt);
        CurveClass ginf = push(bt.tensor, b1, l1);
        CurveClass g0 = push(bt.tensor, b2, l2);
        PathResult res = cplus_path_certificate(bt.tensor, g0, ginf, l1, l2, 101, 12);
        if (!res.all_ok) {
            for (const auto& c : res.certificates)
                if (!c.ok)
                    return {false, std::string("no certificate on ") + bt.name + " at u = " +
                                       c.u.to_string() + " (instance " + std::to_string(it) + ")"};
        }
    }
    return {true, "50 instances x 101 grid points, certificates everywhere"};
}
