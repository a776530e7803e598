#include <doctest.h>

#include "oracles.hpp"
#include "supverma/superspace.hpp"

using namespace supverma;

TEST_CASE("koszul sign table and multiplicativity") {
    CHECK(koszul_sign(Parity::even, Parity::odd, 3) == 1);
    CHECK(koszul_sign(Parity::odd, Parity::even, 3) == 1);
    CHECK(koszul_sign(Parity::odd, Parity::odd, 3) == 2);
    CHECK(koszul_sign(Parity::even, Parity::even, 5) == 1);
    for (Parity a : {Parity::even, Parity::odd})
        for (Parity b : {Parity::even, Parity::odd})
            for (Parity c : {Parity::even, Parity::odd}) {
                CHECK(koszul_sign(a, b, 5) == koszul_sign(b, a, 5));
                CHECK(fp_mul(koszul_sign(a, b, 5), koszul_sign(a, c, 5), 5) == koszul_sign(a, b + c, 5));
            }
}

static GradedSpace two_even_one_odd(uint32_t p) {
    return GradedSpace({{"a", {Parity::even, 0}}, {"b", {Parity::even, 0}}, {"c", {Parity::odd, 0}}}, p);
}

TEST_CASE("supertrace of identity and zero") {
    GradedSpace s = two_even_one_odd(5);
    SuperMap id{s, s, FpMatrix::identity(3, 5), Parity::even, 0};
    CHECK(supertrace(id).value == 1);  // 2 - 1
    SuperMap zero{s, s, FpMatrix(3, 3, 5), Parity::even, 0};
    CHECK(supertrace(zero).value == 0);
}

TEST_CASE("supertrace of ad x^(1)D1 on the negative part of W(1,1,(1))") {
    WittAlgebra w = test::small_witt();
    // locate x^(1)*D1 and take the supertrace of its ad action on L^-
    size_t h = w.dim();
    for (size_t i = 0; i < w.dim(); ++i)
        if (w.name(i) == "x^(1)*D1") h = i;
    REQUIRE(h < w.dim());
    std::vector<BasisLabel> labels;
    for (int i = 0; i < w.neg_dim(); ++i) labels.push_back({w.name(i), {w.parity(i), -1}});
    GradedSpace lneg(labels, 3);
    FpMatrix ad(2, 2, 3);
    for (int i = 0; i < w.neg_dim(); ++i)
        for (const auto& [t, c] : w.bracket(h, i))
            if (w.is_negative(t)) ad.set(t, i, c);
    CHECK(supertrace(SuperMap{lneg, lneg, ad, Parity::even, 0}).value == 2);  // -1 mod 3
}

TEST_CASE("supertrace vanishes on supercommutators") {
    GradedSpace s({{"a", {Parity::even, 0}},
                   {"b", {Parity::even, 0}},
                   {"c", {Parity::odd, 0}},
                   {"d", {Parity::odd, 0}}},
                  7);
    SplitMix64 rng(99);
    for (int t = 0; t < 40; ++t) {
        Parity q = (t % 2) ? Parity::odd : Parity::even;
        FpMatrix a = test::random_parity_matrix(s, q, rng);
        FpMatrix b = test::random_parity_matrix(s, q, rng);
        uint32_t ks = koszul_sign(q, q, 7);
        FpMatrix comm = a * b - (b * a).scaled(ks);
        CHECK(supertrace(SuperMap{s, s, comm, Parity::even, 0}).value == 0);
    }
}

TEST_CASE("homogeneity check catches stray entries") {
    GradedSpace s = two_even_one_odd(3);
    FpMatrix m(3, 3, 3);
    m.set(0, 1, 2);  // even -> even, fine for an even degree-0 map
    SuperMap good{s, s, m, Parity::even, 0};
    CHECK(check_homogeneous(good).empty());
    m.set(2, 1, 1);  // even source hitting an odd target
    SuperMap bad{s, s, m, Parity::even, 0};
    CHECK_FALSE(check_homogeneous(bad).empty());
}

TEST_CASE("dual action: nilpotency preserved and double dual is the parity conjugate") {
    // a gl(1|1)-style odd generator on a (1|1)-space
    GradedSpace s({{"v0", {Parity::even, 0}}, {"v1", {Parity::odd, 0}}}, 3);
    FpMatrix e12(2, 2, 3);
    e12.set(0, 1, 1);  // odd map: v1 -> v0
    FpMatrix d1 = dual_action_matrix(e12, Parity::odd, s);
    CHECK(d1.at(1, 0) == 2);  // -(−1)^{1*0} * 1
    CHECK((d1 * d1).is_zero());  // nilpotency preserved

    FpMatrix dd = dual_action_matrix(d1, Parity::odd, s);
    // the double dual of an odd action is its negative; conjugating by
    // the canonical parity involution recovers the original exactly
    CHECK(dd == e12.scaled(2));
    FpMatrix s2 = natural_double_dual_matrix(s);
    CHECK(s2 * dd * s2 == e12);

    // even actions come back identically
    FpMatrix h(2, 2, 3);
    h.set(0, 0, 1);
    h.set(1, 1, 2);
    CHECK(dual_action_matrix(dual_action_matrix(h, Parity::even, s), Parity::even, s) == h);
}
