#include <weylcycles/lattice.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace weylcycles;

namespace {

DivisorClass random_divisor(Space sp, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::vector<Int> m(sp.s);
    for (auto& x : m) x = coeff(rng);
    return DivisorClass(sp, coeff(rng), std::move(m));
}

CurveClass random_curve(Space sp, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::vector<Int> mu(sp.s);
    for (auto& x : mu) x = coeff(rng);
    return CurveClass(sp, coeff(rng), std::move(mu));
}

}  // namespace

TEST_CASE("space validation") {
    CHECK_THROWS_AS(Space(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(Space(2, -1), std::invalid_argument);
    CHECK(Space(2, 0).s == 0);
    CHECK_FALSE(Space(3, 3).has_weyl_action());
    CHECK(Space(3, 4).has_weyl_action());
}

TEST_CASE("intersection pairing") {
    Space sp(4, 5);
    CHECK(intersect(hyperplane_class(sp), exceptional_line(sp, 2)) == 0);
    DivisorClass D = parse_divisor(sp, "2;1,1,0,0,0");
    CurveClass c = parse_curve(sp, "1;1,1,0,0,0");
    CHECK(intersect(D, c) == 0);

    Space x48(4, 8);
    CHECK(intersect(anticanonical_divisor(x48), anticanonical_curve(x48)) == 1);
}

TEST_CASE("intersect rejects mismatched spaces") {
    CHECK_THROWS_AS(intersect(hyperplane_class(Space(3, 4)), line_class(Space(3, 5))),
                    std::invalid_argument);
    CHECK_THROWS_AS(dm_pairing(hyperplane_class(Space(3, 4)), hyperplane_class(Space(4, 4))),
                    std::invalid_argument);
}

TEST_CASE("Dolgachev-Mukai pairing") {
    Space sp(3, 7);
    for (int i = 1; i <= 7; ++i)
        CHECK(dm_pairing(exceptional_divisor(sp, i), exceptional_divisor(sp, i)) == -1);
    CHECK(dm_pairing(exceptional_divisor(sp, 1), exceptional_divisor(sp, 2)) == 0);
    CHECK(dm_pairing(anticanonical_divisor(sp), anticanonical_divisor(sp)) == 4);

    Space x59(5, 9);
    CHECK(dm_pairing(anticanonical_divisor(x59), anticanonical_divisor(x59)) == 0);
}

TEST_CASE("bilinearity of the pairings") {
    std::mt19937_64 rng(20240811);
    Space sp(3, 6);
    std::uniform_int_distribution<int> scalar(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        DivisorClass D1 = random_divisor(sp, rng), D2 = random_divisor(sp, rng);
        CurveClass c = random_curve(sp, rng);
        Int a = scalar(rng), b = scalar(rng);
        DivisorClass lin = a * D1 + b * D2;
        CHECK(intersect(lin, c) == a * intersect(D1, c) + b * intersect(D2, c));
        CHECK(dm_pairing(lin, D2) == a * dm_pairing(D1, D2) + b * dm_pairing(D2, D2));
    }
}

TEST_CASE("anticanonical classes") {
    Space x29(2, 9);
    CHECK(anticanonical_divisor(x29) == parse_divisor(x29, "3;1,1,1,1,1,1,1,1,1"));
    CHECK(anticanonical_curve(x29) == parse_curve(x29, "3;1,1,1,1,1,1,1,1,1"));

    Space x59(5, 9);
    CHECK(anticanonical_divisor(x59) == parse_divisor(x59, "6;4,4,4,4,4,4,4,4,4"));

    Space x38(3, 8);
    CHECK(anticanonical_curve(x38) == parse_curve(x38, "4;1,1,1,1,1,1,1,1"));
}

TEST_CASE("-K . F closed form") {
    for (int n = 2; n <= 7; ++n)
        for (int s = 0; s <= n + 6; ++s) {
            Space sp(n, s);
            Int expected = Int(n + 1) * (n + 1) - Int(s) * (n - 1);
            CHECK(intersect(anticanonical_divisor(sp), anticanonical_curve(sp)) == expected);
        }
}

TEST_CASE("Mori dream classification") {
    CHECK(is_mori_dream(Space(4, 8)).is_mds);
    CHECK_FALSE(is_mori_dream(Space(3, 8)).is_mds);
    CHECK(is_mori_dream(Space(6, 9)).is_mds);  // s = n+3
    CHECK_FALSE(is_mori_dream(Space(5, 9)).is_mds);
    CHECK(is_mori_dream(Space(2, 8)).is_mds);
    CHECK_FALSE(is_mori_dream(Space(2, 9)).is_mds);
}

TEST_CASE("list and pairing criteria agree on the sweep") {
    for (int n = 2; n <= 12; ++n)
        for (int s = n + 1; s <= n + 8; ++s) CHECK_NOTHROW(is_mori_dream(Space(n, s)));
}

TEST_CASE("anticanonical curve decomposition") {
    Space x38(3, 8);
    auto dec = f_decomposition(x38);
    REQUIRE(dec.has_value());
    CHECK(dec->size() == 4);
    CurveClass sum(x38, 0, std::vector<Int>(8, 0));
    for (const auto& line : *dec) {
        CHECK(line.delta == 1);
        sum = sum + line;
    }
    CHECK(sum == anticanonical_curve(x38));

    Space x29(2, 9);
    auto dec29 = f_decomposition(x29);
    REQUIRE(dec29.has_value());
    REQUIRE(dec29->size() == 1);
    CHECK((*dec29)[0] == anticanonical_curve(x29));

    CHECK_FALSE(f_decomposition(Space(4, 9)).has_value());
}

TEST_CASE("f_decomposition sums to F whenever available") {
    for (int n = 2; n <= 6; ++n) {
        Space sp(n, 2 * n + 2);
        auto dec = f_decomposition(sp);
        REQUIRE(dec.has_value());
        CurveClass sum(sp, 0, std::vector<Int>(sp.s, 0));
        for (const auto& c : *dec) sum = sum + c;
        CHECK(sum == anticanonical_curve(sp));
    }
}

TEST_CASE("textual class notation round trip") {
    Space sp(4, 5);
    DivisorClass D = parse_divisor(sp, "6;5,5,4,4,4");
    CHECK(format_divisor(D) == "6;5,5,4,4,4");
    CHECK(D.d == 6);

    CurveClass c = parse_curve(sp, "0;-1,0,0,0,0");
    CHECK(c == exceptional_line(sp, 1));
    CHECK(format_curve(c) == "0;-1,0,0,0,0");

    CHECK(parse_divisor(sp, " 2; 1, 1, 0, 0, 0 ") == parse_divisor(sp, "2;1,1,0,0,0"));
    CHECK_THROWS_AS(parse_divisor(sp, "2;1,1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_divisor(sp, "2,1,1,0,0,0"), std::invalid_argument);
}
