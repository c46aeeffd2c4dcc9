#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stab/error.hpp"
#include "stab/kahler.hpp"
#include "stab/rng.hpp"

using namespace stab;
using namespace stab::kahler;
using stab::cone::DivisorClass;
using stab::cone::bundled_tensor;

namespace {
DivisorClass dc(std::vector<long long> v) {
    DivisorClass d;
    for (long long x : v) d.coords.push_back(Scalar(x));
    return d;
}
bool split_identities(const Scalar& tau, const Scalar& theta, const SplitResult& s) {
    return s.weight_s + s.weight_sprime * s.lambda == tau &&
           s.weight_s + s.weight_sprime * s.lambda * s.lambda == theta &&
           s.weight_s.sign() > 0 && s.weight_sprime.sign() > 0 && s.lambda.sign() > 0;
}
} // namespace

TEST_CASE("split_pair spec cases") {
    // tau = theta = 1: symmetric split
    SplitResult s0 = split_pair(Scalar(1), Scalar(1));
    CHECK(s0.lambda.as_rational() == Rational(1));
    CHECK(s0.weight_s.as_rational() == Rational(1, 2));
    CHECK(s0.weight_sprime.as_rational() == Rational(1, 2));
    CHECK(split_identities(Scalar(1), Scalar(1), s0));

    // tau=1, theta=2 with lambda=4: the worked 2x2 system
    SplitResult s1 = split_pair_with(Scalar(1), Scalar(2), Rational(4));
    CHECK(s1.weight_s.as_rational() == Rational(2, 3));
    CHECK(s1.weight_sprime.as_rational() == Rational(1, 12));
    CHECK(split_identities(Scalar(1), Scalar(2), s1));
    // the deterministic rule picks the smallest admissible integer
    SplitResult s1r = split_pair(Scalar(1), Scalar(2));
    CHECK(s1r.lambda.as_rational() == Rational(3));
    CHECK(split_identities(Scalar(1), Scalar(2), s1r));

    // tau=2, theta=1: lambda = 1/4
    SplitResult s2 = split_pair(Scalar(2), Scalar(1));
    CHECK(s2.lambda.as_rational() == Rational(1, 4));
    CHECK(s2.weight_s.as_rational() == Rational(2, 3));
    CHECK(s2.weight_sprime.as_rational() == Rational(16, 3));
    CHECK(split_identities(Scalar(2), Scalar(1), s2));

    CHECK_THROWS_AS(split_pair(Scalar(0), Scalar(1)), input_error);
    CHECK_THROWS_AS(split_pair_with(Scalar(1), Scalar(2), Rational(1)), infeasible_error);
}

TEST_CASE("split_pair identities on random rational and quadratic inputs") {
    Rng rng(0x59111);
    for (int it = 0; it < 3000; ++it) {
        Scalar tau(Rational(rng.range(1, 40), rng.range(1, 12)));
        Scalar theta(Rational(rng.range(1, 40), rng.range(1, 12)));
        SplitResult s = split_pair(tau, theta);
        CHECK(split_identities(tau, theta, s));
        if (tau != theta) CHECK(s.lambda != Scalar(1));
        CHECK(s.lambda.is_rational());
        // quadratic-field inputs
        Scalar tq = tau + Scalar::quad(Rational(0), Rational(rng.range(0, 3)), 2);
        Scalar hq = theta + Scalar::quad(Rational(0), Rational(rng.range(0, 3)), 2);
        SplitResult sq = split_pair(tq, hq);
        CHECK(split_identities(tq, hq, sq));
        if (tq != hq) CHECK(sq.lambda != Scalar(1));
    }
}

TEST_CASE("decompose_omega on P1xP1 with an irrational class") {
    const auto& bt = bundled_tensor("P1xP1");
    DivisorClass omega;
    omega.coords = {Scalar(1), sqrt_symbol(2)};
    std::vector<DivisorClass> cands = {dc({1, 1}), dc({1, 2}), dc({2, 1}), dc({1, 3})};
    OmegaDecomposition d = decompose_omega(bt.tensor, omega, cands);
    CHECK(verify_decomposition(bt.tensor, omega, d));
    for (const auto& w : d.weights) CHECK(w.sign() > 0);
    for (const auto& c : d.classes)
        for (const auto& x : c.coords) CHECK(x.is_rational());
    CHECK(d.rank_maximal); // rho + 1 = 3 on a surface

    // trivial case: omega equals a candidate
    OmegaDecomposition t = decompose_omega(bt.tensor, dc({1, 2}), cands);
    CHECK(t.classes.size() == 1);
    CHECK(t.weights[0] == Scalar(1));
    CHECK(verify_decomposition(bt.tensor, dc({1, 2}), t));

    // all-proportional candidates: rank-deficient error
    std::vector<DivisorClass> prop = {dc({1, 1}), dc({2, 2}), dc({3, 3})};
    CHECK_THROWS_AS(decompose_omega(bt.tensor, omega, prop), infeasible_error);
}

TEST_CASE("decompose_omega on the threefold P1xP1xP1") {
    const auto& bt = bundled_tensor("P1xP1xP1");
    std::vector<DivisorClass> cands = {dc({1, 1, 1}), dc({2, 1, 1}), dc({1, 2, 1}),
                                       dc({1, 1, 2}), dc({3, 1, 1}), dc({1, 3, 1}),
                                       dc({1, 1, 3}), dc({2, 2, 1})};
    DivisorClass omega;
    omega.coords = {Scalar(4) + sqrt_symbol(2), Scalar(4), Scalar(4)};
    OmegaDecomposition d = decompose_omega(bt.tensor, omega, cands);
    CHECK(verify_decomposition(bt.tensor, omega, d));
    CHECK(d.rank_certificate == 6); // rho + dim N_1 = 3 + 3
    CHECK(d.rank_maximal);

    // proportional mode merges at least one index and re-verifies with alpha1
    OmegaDecomposition p = decompose_omega(bt.tensor, omega, cands, true);
    CHECK(verify_decomposition(bt.tensor, omega, p));
    CHECK(p.classes.size() < d.classes.size());

    // a boundary omega pins the support: identities still verify exactly,
    // the openness certificate degrades and is reported as such
    DivisorClass edge;
    edge.coords = {Scalar(1), Scalar(1) + sqrt_symbol(2), Scalar(2)};
    std::vector<DivisorClass> cands2 = {dc({1, 1, 1}), dc({1, 2, 1}), dc({2, 1, 1}),
                                        dc({1, 1, 2}), dc({1, 2, 2}), dc({2, 2, 1}),
                                        dc({1, 3, 2}), dc({3, 1, 2})};
    OmegaDecomposition b = decompose_omega(bt.tensor, edge, cands2);
    CHECK(verify_decomposition(bt.tensor, edge, b));
    CHECK_FALSE(b.rank_maximal);
}

TEST_CASE("hilbert_poly_omega spec cases") {
    // structure sheaf of P2 at omega = H: (m+1)(m+2)/2
    const auto& p2 = bundled_tensor("P2");
    ChernTodd ox;
    ox.rank = Scalar(1);
    ox.c1 = dc({0});
    ox.todd1 = DivisorClass{{Scalar(Rational(3, 2))}};
    ox.todd2pair[{}] = Scalar(1); // chi(O_P2) = 1
    Poly p = hilbert_poly_omega(ox, p2.tensor, dc({1}));
    CHECK(p.coeff(2).as_rational() == Rational(1, 2));
    CHECK(p.coeff(1).as_rational() == Rational(3, 2));
    CHECK(p.coeff(0).as_rational() == Rational(1));
    // chi(O(m)) at m = 1..4: 3, 6, 10, 15
    CHECK(p.eval(Scalar(1)).as_rational() == Rational(3));
    CHECK(p.eval(Scalar(4)).as_rational() == Rational(15));

    // scaling the rank scales the rank-proportional terms
    ChernTodd two = ox;
    two.rank = Scalar(2);
    Poly p2x = hilbert_poly_omega(two, p2.tensor, dc({1}));
    CHECK(p2x.coeff(2) == p.coeff(2) * Scalar(2));

    // omega scaled by t: P^{t omega}(m) = P^omega(t m)
    Rng rng(0x0123);
    const auto& p111 = bundled_tensor("P1xP1xP1");
    for (int it = 0; it < 50; ++it) {
        ChernTodd ch;
        ch.rank = Scalar(rng.range(1, 3));
        ch.c1 = dc({rng.range(-3, 3), rng.range(-3, 3), rng.range(-3, 3)});
        ch.c2pair[{0}] = Scalar(rng.range(-4, 4));
        ch.c2pair[{1}] = Scalar(rng.range(-4, 4));
        ch.c2pair[{2}] = Scalar(rng.range(-4, 4));
        ch.ch3 = Scalar(rng.range(-4, 4));
        ch.todd1 = dc({1, 1, 1});
        ch.todd2pair[{0}] = Scalar(rng.range(0, 3));
        ch.todd2pair[{1}] = Scalar(rng.range(0, 3));
        ch.todd2pair[{2}] = Scalar(rng.range(0, 3));
        ch.todd3 = Scalar(1);
        DivisorClass omega = dc({1, 2, 1});
        Scalar t(Rational(rng.range(1, 5), rng.range(1, 3)));
        DivisorClass tomega;
        for (const auto& x : omega.coords) tomega.coords.push_back(x * t);
        Poly base = hilbert_poly_omega(ch, p111.tensor, omega);
        Poly scaled = hilbert_poly_omega(ch, p111.tensor, tomega);
        for (int m = 0; m < 4; ++m)
            CHECK(scaled.eval(Scalar(m)) == base.eval(t * Scalar(m)));
    }
}

TEST_CASE("sheaf_from_chern matches direct omega-polynomials at rational classes") {
    const auto& p111 = bundled_tensor("P1xP1xP1");
    ChernTodd ch;
    ch.rank = Scalar(2);
    ch.c1 = dc({1, 0, 1});
    ch.c2pair[{0}] = Scalar(1);
    ch.c2pair[{1}] = Scalar(-1);
    ch.c2pair[{2}] = Scalar(2);
    ch.ch3 = Scalar(1);
    ch.todd1 = dc({1, 1, 1});
    ch.todd2pair[{0}] = Scalar(1);
    ch.todd2pair[{1}] = Scalar(1);
    ch.todd2pair[{2}] = Scalar(1);
    ch.todd3 = Scalar(1);
    std::vector<DivisorClass> ls = {dc({1, 1, 1}), dc({1, 2, 1})};
    sheaf::SheafClass e = sheaf_from_chern("E", ch, p111.tensor, ls);
    e.validate();
    for (size_t j = 0; j < 2; ++j) {
        Poly direct = hilbert_poly_omega(ch, p111.tensor, ls[j]);
        CHECK(sheaf::hilbert_of_bundle(e, j) == direct);
    }
}

TEST_CASE("slope stability with respect to the mixed curve class implies no Unstable verdict") {
    // With full Chern data both sides are computable from the same input:
    // gamma = sum sigma_j L_j^(d-1), slope mu_gamma(F) = c1(F).gamma / rank,
    // and the multi-Hilbert verdict from the assembled alpha matrices.
    Rng rng(0x51093);
    const auto& bt = bundled_tensor("P1xP1xP1");
    std::vector<DivisorClass> ls = {dc({1, 1, 1}), dc({1, 2, 1}), dc({2, 1, 1})};
    int slope_stable_seen = 0;
    for (int it = 0; it < 400; ++it) {
        auto random_ch = [&]() {
            ChernTodd ch;
            ch.rank = Scalar(rng.range(1, 4));
            ch.c1 = dc({rng.range(-4, 4), rng.range(-4, 4), rng.range(-4, 4)});
            for (int b = 0; b < 3; ++b) ch.c2pair[{b}] = Scalar(rng.range(-6, 6));
            ch.ch3 = Scalar(Rational(rng.range(-6, 6), rng.range(1, 3)));
            ch.todd1 = dc({1, 1, 1});
            for (int b = 0; b < 3; ++b) ch.todd2pair[{b}] = Scalar(1);
            ch.todd3 = Scalar(1);
            return ch;
        };
        ChernTodd che = random_ch();
        sheaf::StabilityParameter sigma;
        for (int j = 0; j < 3; ++j) sigma.sigma.push_back(Scalar(rng.range(1, 4)));
        // gamma . D = sum_j sigma_j L_j^2 . D
        auto gamma_pair = [&](const DivisorClass& d) {
            Scalar out(0);
            for (size_t j = 0; j < ls.size(); ++j)
                out += sigma.sigma[j] * eval(bt.tensor, {ls[j], ls[j], d});
            return out;
        };
        auto slope = [&](const ChernTodd& ch) { return gamma_pair(ch.c1) / ch.rank; };
        sheaf::SheafClass es = sheaf_from_chern("E", che, bt.tensor, ls);
        sheaf::FamilySpec fam;
        std::vector<ChernTodd> cands;
        bool slope_stable = true;
        for (int c = 0; c < 3; ++c) {
            ChernTodd chf = random_ch();
            if (Scalar::cmp(chf.rank, che.rank) > 0) chf.rank = che.rank;
            cands.push_back(chf);
            sheaf::SheafClass fs = sheaf_from_chern("F" + std::to_string(c), chf, bt.tensor, ls);
            if (fs.rank == es.rank && fs.alpha == es.alpha) {
                slope_stable = false; // degenerate duplicate; skip instance
                break;
            }
            fam.candidates.push_back(fs);
            if (Scalar::cmp(slope(chf), slope(che)) >= 0) slope_stable = false;
        }
        if (!slope_stable) continue;
        ++slope_stable_seen;
        sheaf::Verdict v = sheaf::verdict(es, fam, sigma);
        CHECK(v.kind != sheaf::VerdictKind::Unstable);
    }
    CHECK(slope_stable_seen > 30);
}
