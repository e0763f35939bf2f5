#include <weylcycles/cones.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace weylcycles;

namespace {

RationalCone orthant(int dim) {
    std::vector<std::vector<Int>> gens;
    for (int i = 0; i < dim; ++i) {
        std::vector<Int> e(dim, 0);
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    return make_cone(dim, std::move(gens));
}

std::vector<Int> vec(std::initializer_list<long> v) { return std::vector<Int>(v.begin(), v.end()); }

}  // namespace

TEST_CASE("make_cone normalizes") {
    RationalCone C = make_cone(3, {vec({2, 4, 6}), vec({1, 2, 3}), vec({0, 0, 0}), vec({3, 0, 0})});
    REQUIRE(C.generators.size() == 2);
    CHECK(C.generators[0] == vec({1, 0, 0}));
    CHECK(C.generators[1] == vec({1, 2, 3}));
}

TEST_CASE("dual of the first orthant is itself") {
    RationalCone C = orthant(3);
    RationalCone D = dual_cone(C);
    CHECK(cone_equal(C, D));
}

TEST_CASE("dual of a planar cone") {
    RationalCone C = make_cone(2, {vec({1, 0}), vec({1, 1})});
    RationalCone D = dual_cone(C);
    RationalCone expected = make_cone(2, {vec({0, 1}), vec({1, -1})});
    CHECK(cone_equal(D, expected));
}

TEST_CASE("biduality") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int dim : {2, 3, 4, 5}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::vector<Int>> gens;
            for (int g = 0; g < dim + 3; ++g) {
                std::vector<Int> v(dim);
                for (auto& x : v) x = coeff(rng);
                gens.push_back(std::move(v));
            }
            RationalCone C = make_cone(dim, std::move(gens));
            CHECK(cone_equal(C, dual_cone(dual_cone(C))));
        }
    }
}

TEST_CASE("dual with lineality") {
    // half-plane: dual collapses to a single ray
    RationalCone C = make_cone(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1})});
    RationalCone D = dual_cone(C);
    CHECK(cone_equal(D, make_cone(2, {vec({0, 1})})));

    // dual of the empty cone is the full space
    RationalCone full = dual_cone(make_cone(2, {}));
    CHECK(cone_contains(full, vec({3, -7})));
    CHECK(cone_contains(full, vec({-3, 7})));
}

TEST_CASE("membership, equality, extremality") {
    RationalCone C = orthant(3);
    CHECK(cone_contains(C, vec({1, 2, 3})));
    CHECK_FALSE(cone_contains(C, vec({1, -1, 0})));
    CHECK_FALSE(is_extremal(C, vec({1, 1, 0})));
    CHECK(is_extremal(C, vec({0, 1, 0})));
    CHECK(is_extremal(C, vec({0, 0, 7})));

    RationalCone shuffled = make_cone(3, {vec({0, 0, 1}), vec({0, 1, 0}), vec({1, 0, 0}),
                                          vec({1, 1, 1})});
    CHECK(cone_equal(C, shuffled));
    CHECK_FALSE(cone_equal(C, make_cone(3, {vec({1, 0, 0}), vec({0, 1, 0})})));
}

TEST_CASE("dual cone inequality: every dual generator pairs >= 0 with the cone") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<Int>> gens;
        for (int g = 0; g < 7; ++g) {
            std::vector<Int> v(4);
            for (auto& x : v) x = coeff(rng);
            gens.push_back(std::move(v));
        }
        RationalCone C = make_cone(4, std::move(gens));
        RationalCone D = dual_cone(C);
        for (const auto& y : D.generators)
            for (const auto& g : C.generators) CHECK(dot(y, g) >= 0);
    }
}

TEST_CASE("ck_generators orbit counts follow the s-dependent table") {
    // s = n+3: three orbits for k >= 2, two for k = 1, two for k = 0
    for (int n : {3, 4}) {
        Space sp(n, n + 3);
        CHECK(ck_generators(sp, 0).orbits.size() == 2);
        CHECK(ck_generators(sp, 1).orbits.size() == 2);
        for (int k = 2; k <= n - 1; ++k) CHECK(ck_generators(sp, k).orbits.size() == 3);
    }
    // s = n+1: 2n+2 orbits for k = 1, plus C(n+1, n-k+1) for k >= 2
    for (int n : {3, 4}) {
        Space sp(n, n + 1);
        CHECK(ck_generators(sp, 1).orbits.size() == static_cast<std::size_t>(2 * n + 2));
        for (int k = 2; k <= n - 1; ++k) {
            std::size_t expected =
                static_cast<std::size_t>(2 * n + 2 + to_long(binomial(n + 1, n - k + 1)));
            CHECK(ck_generators(sp, k).orbits.size() == expected);
        }
    }
    // s = n+2: 2 orbits for k = 1, plus C(n+2, n-k+1) for k >= 2
    for (int n : {3, 4}) {
        Space sp(n, n + 2);
        CHECK(ck_generators(sp, 1).orbits.size() == 2);
        for (int k = 2; k <= n - 1; ++k) {
            std::size_t expected =
                static_cast<std::size_t>(2 + to_long(binomial(n + 2, n - k + 1)));
            CHECK(ck_generators(sp, k).orbits.size() == expected);
        }
    }
}

TEST_CASE("ck_generators rejects bad input") {
    CHECK_THROWS_AS(ck_generators(Space(3, 6), 3), std::invalid_argument);
    CHECK_THROWS_AS(ck_generators(Space(3, 8), 1), std::invalid_argument);  // non-MDS, no bound
    CHECK_FALSE(ck_generators(Space(3, 8), 1, Int(20)).complete);
}

TEST_CASE("dk cones recognize distinguished classes") {
    Space x36(3, 6);
    RationalCone nef = dk_inequality_cone(x36, 2);
    CHECK(cone_contains(nef, divisor_vector(hyperplane_class(x36))));
    CHECK_FALSE(cone_contains(nef, divisor_vector(exceptional_divisor(x36, 1))));

    RationalCone eff = dk_inequality_cone(x36, 0);
    CHECK(cone_contains(eff, divisor_vector(exceptional_divisor(x36, 1))));
    DivisorClass minusH = Int(-1) * hyperplane_class(x36);
    CHECK_FALSE(cone_contains(eff, divisor_vector(minusH)));

    Space x47(4, 7);
    RationalCone mov = dk_inequality_cone(x47, 1);
    CHECK(cone_contains(mov, divisor_vector(anticanonical_divisor(x47))));
    CHECK(cone_contains(mov, divisor_vector(hyperplane_class(x47))));
    CHECK_FALSE(cone_contains(mov, divisor_vector(exceptional_divisor(x47, 3))));
}

TEST_CASE("strong duality on X^3_6") {
    for (int k : {0, 1, 2}) {
        DualityReport rep = verify_strong_duality(Space(3, 6), k);
        INFO("k = " << k);
        for (const auto& m : rep.mismatches) INFO(m);
        CHECK(rep.equal);
    }
}

TEST_CASE("strong duality on the del Pezzo surface X^2_6") {
    // dual of the cone on the 27 (-1)-classes = cone on the orbits of h, h-e_i
    DualityReport rep = verify_strong_duality(Space(2, 6), 0);
    CHECK(rep.equal);
    RationalCone d0 = dk_inequality_cone(Space(2, 6), 0);
    CHECK(d0.generators.size() == 27);
}

TEST_CASE("cone filtration C_{n-1} contains ... contains C_0") {
    Space sp(3, 6);
    RationalCone prev = ck_generators(sp, 0).cone;
    for (int k = 1; k <= 2; ++k) {
        RationalCone cur = ck_generators(sp, k).cone;
        RationalCone dual_cur = dual_cone(cur);
        for (const auto& g : prev.generators) CHECK(cone_contains(cur, g, &dual_cur));
        prev = cur;
    }
}

TEST_CASE("moving curves pair nonnegatively with Weyl divisors") {
    for (Space sp : {Space(3, 6), Space(4, 7)}) {
        OrbitCatalog weyl = effective_orbit(exceptional_divisor(sp, 1));
        ConeGeneratorReport c0 = ck_generators(sp, 0);
        for (const auto& g : c0.cone.generators) {
            CurveClass c = curve_from_vector(sp, g);
            for (const auto& e : weyl.elements)
                CHECK(intersect(DivisorClass(sp, e.degree, e.coeffs), c) >= 0);
        }
    }
}

TEST_CASE("C_0 generators are extremal on X^3_6 and X^3_7") {
    for (Space sp : {Space(3, 6), Space(3, 7)}) {
        ConeGeneratorReport rep = ck_generators(sp, 0, std::nullopt, true);
        REQUIRE(rep.extremal.size() == rep.cone.generators.size());
        for (bool f : rep.extremal) CHECK(f);
    }
}
