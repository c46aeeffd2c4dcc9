#include "acceptance.hpp"

#include "stab/kahler.hpp"
#include "stab/rng.hpp"

using namespace stab;
using namespace stab::kahler;
using cone::DivisorClass;
using cone::bundled_tensor;

namespace {

DivisorClass dc(std::vector<long long> v) {
    DivisorClass d;
    for (long long x : v) d.coords.push_back(Scalar(x));
    return d;
}

// Chern/Todd data of a random surrogate on the named bundled variety, with
// the variety's actual Todd data (shared by every surrogate on it)
ChernTodd random_surrogate(Rng& rng, const std::string& name) {
    ChernTodd ch;
    if (name == "P1xP1") {
        ch.rank = Scalar(rng.range(1, 4));
        ch.c1 = dc({rng.range(-4, 4), rng.range(-4, 4)});
        ch.c2pair[{}] = Scalar(Rational(rng.range(-9, 9), rng.range(1, 2)));
        ch.todd1 = dc({1, 1});        // -K/2
        ch.todd2pair[{}] = Scalar(1); // chi(O)
    } else {
        ch.rank = Scalar(rng.range(1, 4));
        ch.c1 = dc({rng.range(-4, 4), rng.range(-4, 4), rng.range(-4, 4)});
        for (int b = 0; b < 3; ++b)
            ch.c2pair[{b}] = Scalar(Rational(rng.range(-9, 9), rng.range(1, 2)));
        ch.ch3 = Scalar(Rational(rng.range(-9, 9), rng.range(1, 6)));
        ch.todd1 = dc({1, 1, 1});
        for (int b = 0; b < 3; ++b) ch.todd2pair[{b}] = Scalar(1);
        ch.todd3 = Scalar(1);
    }
    return ch;
}

} // namespace

// Criterion 8: 10^4 random (tau, theta) over Q and QuadExt(2): both
// identities exact, weights positive, lambda != 1 whenever tau != theta.
CriterionResult criterion_split_pair() {
    Rng rng(0xacc08);
    for (int it = 0; it < 10000; ++it) {
        Scalar tau, theta;
        if (rng.flip()) {
            tau = Scalar(Rational(rng.range(1, 60), rng.range(1, 12)));
            theta = Scalar(Rational(rng.range(1, 60), rng.range(1, 12)));
        } else {
            tau = Scalar::quad(Rational(rng.range(1, 30), rng.range(1, 6)),
                               Rational(rng.range(0, 9), rng.range(1, 4)), 2);
            theta = Scalar::quad(Rational(rng.range(1, 30), rng.range(1, 6)),
                                 Rational(rng.range(0, 9), rng.range(1, 4)), 2);
        }
        if (rng.below(20) == 0) theta = tau; // exercise the symmetric branch
        SplitResult s = split_pair(tau, theta);
        if (s.weight_s.sign() <= 0 || s.weight_sprime.sign() <= 0)
            return {false, "nonpositive weight at iteration " + std::to_string(it)};
        if (s.weight_s + s.weight_sprime * s.lambda != tau)
            return {false, "first identity failed at iteration " + std::to_string(it)};
        if (s.weight_s + s.weight_sprime * s.lambda * s.lambda != theta)
            return {false, "second identity failed at iteration " + std::to_string(it)};
        if (tau != theta && s.lambda == Scalar(1))
            return {false, "lambda = 1 despite tau != theta"};
        if (!s.lambda.is_rational() || s.lambda.sign() <= 0)
            return {false, "lambda not a positive rational"};
    }
    return {true, "10000 random pairs over Q and QuadExt(2), identities exact"};
}

// Criterion 9: QuadExt(2) omega instances on P1xP1 and P1xP1xP1: identities
// exact, rank certificate maximal, and the omega-polynomial stability order
// transfers to the mixed-weight order from the decomposition, 100 random
// surrogate pairs per instance.
CriterionResult criterion_decompose_transfer() {
    Rng rng(0xacc09);
    struct InstanceSpec {
        std::string tensor;
        DivisorClass omega;
        std::vector<DivisorClass> candidates;
    };
    Scalar r2 = sqrt_symbol(2);
    std::vector<InstanceSpec> instances;
    std::vector<DivisorClass> surf = {dc({1, 1}), dc({1, 2}), dc({2, 1}), dc({1, 3}), dc({3, 1})};
    instances.push_back({"P1xP1", DivisorClass{{Scalar(1), r2}}, surf});
    instances.push_back({"P1xP1", DivisorClass{{Scalar(2) + r2, Scalar(2)}}, surf});
    instances.push_back({"P1xP1", DivisorClass{{Scalar(3), Scalar(1) + r2}}, surf});
    std::vector<DivisorClass> three = {dc({1, 1, 1}), dc({2, 1, 1}), dc({1, 2, 1}), dc({1, 1, 2}),
                                       dc({3, 1, 1}), dc({1, 3, 1}), dc({1, 1, 3}), dc({2, 2, 1})};
    instances.push_back({"P1xP1xP1", DivisorClass{{Scalar(4) + r2, Scalar(4), Scalar(4)}}, three});
    instances.push_back(
        {"P1xP1xP1", DivisorClass{{Scalar(5), Scalar(4) + r2, Scalar(5)}}, three});
    instances.push_back(
        {"P1xP1xP1", DivisorClass{{Scalar(6) + r2, Scalar(5) + r2, Scalar(6)}}, three});

    for (size_t inst = 0; inst < instances.size(); ++inst) {
        const auto& spec = instances[inst];
        const auto& bt = bundled_tensor(spec.tensor);
        OmegaDecomposition d = decompose_omega(bt.tensor, spec.omega, spec.candidates);
        if (!verify_decomposition(bt.tensor, spec.omega, d))
            return {false, "identities failed on instance " + std::to_string(inst)};
        if (!d.rank_maximal)
            return {false, "rank certificate not maximal on instance " + std::to_string(inst)};

        // stability-order transfer
        sheaf::StabilityParameter sigma{d.weights};
        for (int pair = 0; pair < 100; ++pair) {
            ChernTodd che = random_surrogate(rng, spec.tensor);
            ChernTodd chf = random_surrogate(rng, spec.tensor);
            Poly pe = hilbert_poly_omega(che, bt.tensor, spec.omega);
            Poly pf = hilbert_poly_omega(chf, bt.tensor, spec.omega);
            // reduced omega-polynomials: divide by the positive multiplicities
            Scalar re = pe.leading(), rf = pf.leading();
            if (re.sign() <= 0 || rf.sign() <= 0)
                return {false, "nonpositive omega multiplicity"};
            Ordering omega_order = poly_compare(pf.scaled(rf.inv()), pe.scaled(re.inv()));
            sheaf::SheafClass es = sheaf_from_chern("E", che, bt.tensor, d.classes);
            sheaf::SheafClass fs = sheaf_from_chern("F", chf, bt.tensor, d.classes);
            Ordering multi_order = sheaf::compare_pair(es, fs, sigma);
            if (omega_order != multi_order)
                return {false, "verdict transfer failed on instance " + std::to_string(inst) +
                                   ", pair " + std::to_string(pair)};
        }
    }
    return {true, std::to_string(instances.size()) +
                      " QuadExt(2) instances, identities exact, rank maximal, 100 verdict "
                      "transfers each"};
}
