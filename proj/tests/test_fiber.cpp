// Fiber-ring tests: construction invariants, canonical-ideal constructions
// with their validation battery, negative controls, and the classifier on
// frozen example pairs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "semifiber/fiber.hpp"

using namespace semifiber;
using F = RationalField;

namespace {
NumericalSemigroup sg(std::initializer_list<int> g) {
    return NumericalSemigroup::from_generators(g);
}
}  // namespace

TEST_CASE("build_fiber invariants") {
    auto Fib = build_fiber<F>(sg({2, 3}), sg({2, 3}));
    CHECK(Fib.v == 4);
    CHECK(Fib.e == 4);
    CHECK(Fib.r == 3);
    CHECK(window_ops::length_quotient(Fib.B, Fib.A) == 1);
    CHECK(Fib.A.contains(Fib.win().unit()));

    auto Fib2 = build_fiber<F>(sg({2, 3}), sg({3, 4, 5}));
    CHECK(Fib2.v == 5);
    CHECK(Fib2.e == 5);

    // degenerate pair: Gorenstein but not a DVR
    auto FibN = build_fiber<F>(sg({1}), sg({1}));
    CHECK(FibN.v == 2);
    CHECK(FibN.e == 2);
    CHECK(FibN.r == 1);

    // one regular branch: type is r(S) + 1 (socle picks up one extra
    // generator from the regular branch; hand-checkable for (N, <2,3>))
    CHECK(build_fiber<F>(sg({1}), sg({2, 3})).r == 2);
    CHECK(build_fiber<F>(sg({1}), sg({3, 4, 5})).r == 3);
}

TEST_CASE("direct construction, both branches singular") {
    auto Fib = build_fiber<F>(sg({3, 4, 5}), sg({3, 4, 5}));
    auto can = canonical_for(Fib, 21);
    CHECK(can.provenance == Provenance::direct_construction);
    CHECK(can.normalized);
    CHECK(can.validation.all_ok());
    // r(A) = r(R) + r(S) + 1 and mu(X) = r(A)
    CHECK(Fib.r == 5);
    CHECK(window_ops::minimal_generators(can.X, Fib.J).size() == 5);
    // l(X/A) = l(K/R) + l(L/S) + 2 = 1 + 1 + 2
    CHECK(window_ops::length_quotient(can.X, Fib.A) == 4);
    // X:J = (K:m) x (L:n)
    auto socle = window_ops::mod_colon(can.X, Fib.J, Fib.J);
    auto Km = relideal::colon(Fib.K_left, relideal::maximal_ideal(Fib.H1));
    auto Ln = relideal::colon(Fib.L_right, relideal::maximal_ideal(Fib.H2));
    CHECK(socle == window_ops::decoupled_module(Fib.win(), Km, Ln));
    // normalized: A <= X <= Abar
    CHECK(can.X.contains_module(Fib.A));
    CHECK(Fib.Abar.contains_module(can.X));
}

TEST_CASE("canonical colengths on a mixed pair") {
    auto Fib = build_fiber<F>(sg({2, 3}), sg({3, 4, 5}));
    auto can = canonical_for(Fib, 2);
    CHECK(can.validation.all_ok());
    // l(X/A) = 0 + 1 + 2 = 3
    CHECK(window_ops::length_quotient(can.X, Fib.A) == 3);
    CHECK(Fib.r == 4);  // 1 + 2 + 1
}

TEST_CASE("dvr construction, one regular branch") {
    auto Fib = build_fiber<F>(sg({1}), sg({3, 4, 5}));
    auto can = canonical_for(Fib, 31);
    CHECK(can.provenance == Provenance::dvr_construction);
    CHECK(can.normalized);
    CHECK(can.validation.all_ok());
    REQUIRE(can.z.has_value());
    // (L:n) \ L = {2} for L = K(<3,4,5>) = {0,1} u {z>=3}
    CHECK(*can.z == 2);
    CHECK(can.rho.has_value());
    CHECK(can.xi2.has_value());
    CHECK(can.q.has_value());
    CHECK(can.X.contains_module(Fib.A));
    CHECK(Fib.Abar.contains_module(can.X));
    CHECK(window_ops::minimal_generators(can.X, Fib.J).size() ==
          static_cast<size_t>(Fib.r));
    // same thing with the branches swapped
    auto FibSw = build_fiber<F>(sg({3, 4, 5}), sg({1}));
    auto canSw = canonical_for(FibSw, 31);
    CHECK(canSw.provenance == Provenance::dvr_construction);
    CHECK(canSw.validation.all_ok());
    CHECK(*canSw.z == 2);
}

TEST_CASE("negative controls must fail the battery") {
    auto Fib = build_fiber<F>(sg({2, 3}), sg({2, 3}));
    // X = A fails the socle-length check whenever r(A) > 1
    CHECK_FALSE(validate_canonical(Fib, Fib.A, 1).all_ok());
    // X = B fails X:X = A
    CHECK_FALSE(validate_canonical(Fib, Fib.B, 1).all_ok());
    // X = Abar fails X:X = A
    CHECK_FALSE(validate_canonical(Fib, Fib.Abar, 1).all_ok());
    // wrong dvr-style candidate: A + (m x L) without the shift
    auto FibD = build_fiber<F>(sg({1}), sg({3, 4, 5}));
    auto bad = window_ops::mod_sum(
        FibD.A, window_ops::decoupled_module(FibD.win(),
                                             relideal::maximal_ideal(FibD.H1),
                                             FibD.L_right));
    CHECK_FALSE(validate_canonical(FibD, bad, 1).all_ok());
    // the produced X passes at least 16 reflexivity probes
    auto can = canonical_for(Fib, 1);
    int probes = 0;
    for (const auto& item : can.validation.items)
        if (item.ok && item.id.rfind("reflexive_", 0) == 0) ++probes;
    CHECK(probes >= 16);
}

TEST_CASE("classifier on frozen pairs") {
    // (<2,3>,<2,3>) is almost Gorenstein, not Gorenstein, r = 3
    {
        auto Fib = build_fiber<F>(sg({2, 3}), sg({2, 3}));
        auto can = canonical_for(Fib, 44);
        auto cls = classify_fiber(Fib, can, 44);
        CHECK(cls.r == 3);
        CHECK(cls.direct.almost_gorenstein);
        CHECK(!cls.direct.gorenstein);
        CHECK(cls.agree);
    }
    // both 2-AG inputs are not enough: one 2-AG and one AG gives 2-AG
    {
        auto Fib = build_fiber<F>(sg({3, 4, 5}), sg({3, 7, 8}));
        auto can = canonical_for(Fib, 7);
        auto cls = classify_fiber(Fib, can, 7);
        CHECK(cls.direct.two_almost_gorenstein);
        CHECK(cls.len_A_mod_c == 2);
        CHECK(!cls.direct.almost_gorenstein);
        CHECK(cls.agree);
    }
    // nearly Gorenstein without almost Gorenstein
    {
        auto Fib = build_fiber<F>(sg({4, 5, 11}), sg({4, 5, 11}));
        auto can = canonical_for(Fib, 7);
        auto cls = classify_fiber(Fib, can, 7);
        CHECK(cls.direct.nearly_gorenstein);
        CHECK(!cls.direct.almost_gorenstein);
        CHECK(cls.agree);
    }
    // neither AG nor NG
    {
        auto Fib = build_fiber<F>(sg({3, 7, 8}), sg({3, 7, 8}));
        auto can = canonical_for(Fib, 7);
        auto cls = classify_fiber(Fib, can, 7);
        CHECK(!cls.direct.almost_gorenstein);
        CHECK(!cls.direct.nearly_gorenstein);
        CHECK(cls.direct.two_almost_gorenstein == cls.predicted.two_almost_gorenstein);
        CHECK(cls.agree);
    }
    // regular branch: AG transfers from S
    {
        auto Fib = build_fiber<F>(sg({1}), sg({3, 4, 5}));
        auto can = canonical_for(Fib, 7);
        auto cls = classify_fiber(Fib, can, 7);
        CHECK(cls.direct.almost_gorenstein);
        CHECK(cls.direct.generalized_gorenstein);
        CHECK(cls.agree);
    }
    // regular branch, S not AG
    {
        auto Fib = build_fiber<F>(sg({1}), sg({3, 7, 8}));
        auto can = canonical_for(Fib, 7);
        auto cls = classify_fiber(Fib, can, 7);
        CHECK(!cls.direct.almost_gorenstein);
        CHECK(cls.direct.two_almost_gorenstein);
        CHECK(cls.agree);
    }
    // (N, N): Gorenstein, not a DVR
    {
        auto Fib = build_fiber<F>(sg({1}), sg({1}));
        auto can = canonical_for(Fib, 7);
        auto cls = classify_fiber(Fib, can, 7);
        CHECK(cls.direct.gorenstein);
        CHECK(cls.direct.almost_gorenstein);
        CHECK(!cls.direct.is_dvr);
        CHECK(cls.agree);
    }
}

TEST_CASE("diagonal pairs: AG of R x_k R equals AG of R") {
    for (auto gens : {std::initializer_list<int>{2, 3}, {3, 4, 5}, {3, 7, 8},
                      {4, 5, 11}, {2, 5}}) {
        auto H = sg(gens);
        auto Fib = build_fiber<F>(H, H);
        auto can = canonical_for(Fib, 19);
        auto cls = classify_fiber(Fib, can, 19);
        bool branch_ag = classify_ring(H).flags.almost_gorenstein;
        INFO("H = <", H.to_string(), ">");
        CHECK(cls.direct.almost_gorenstein == branch_ag);
        CHECK(cls.direct.generalized_gorenstein == branch_ag);
        CHECK(cls.agree);
    }
}

TEST_CASE("prime field run matches rationals on a sample pair") {
    PrimeField::set_modulus(2147483647ull);
    auto Fq = build_fiber<PrimeField>(sg({3, 4, 5}), sg({3, 7, 8}));
    auto canq = canonical_for(Fq, 99);
    auto clsq = classify_fiber(Fq, canq, 99);
    auto Fr = build_fiber<F>(sg({3, 4, 5}), sg({3, 7, 8}));
    auto canr = canonical_for(Fr, 99);
    auto clsr = classify_fiber(Fr, canr, 99);
    CHECK(clsq.direct == clsr.direct);
    CHECK(clsq.len_A_mod_c == clsr.len_A_mod_c);
    CHECK(clsq.len_X_mod_A == clsr.len_X_mod_A);
    CHECK(clsq.agree);
    CHECK(clsr.agree);
}
