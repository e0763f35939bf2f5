#include <weylcycles/weyl.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace weylcycles;

namespace {

Move random_gamma(Space sp, std::mt19937_64& rng) {
    std::vector<int> all(sp.s);
    for (int i = 0; i < sp.s; ++i) all[i] = i + 1;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(sp.n + 1);
    std::sort(all.begin(), all.end());
    return all;
}

/// Brute-force enumeration of classes with <D,D> = -1 and <D,-K> = 1 on X^2_s:
/// the (-1)-classes of the del Pezzo surface. Independent of the orbit code.
std::set<std::vector<Int>> del_pezzo_minus_one_classes(Space sp, int d_max) {
    std::set<std::vector<Int>> found;
    DivisorClass mk = anticanonical_divisor(sp);
    std::vector<Int> m(sp.s);
    auto rec = [&](auto&& self, int pos, int d) -> void {
        if (pos == sp.s) {
            DivisorClass D(sp, d, m);
            if (dm_pairing(D, D) == -1 && dm_pairing(D, mk) == 1) {
                std::vector<Int> v{D.d};
                v.insert(v.end(), D.m.begin(), D.m.end());
                found.insert(std::move(v));
            }
            return;
        }
        for (int mi = -1; mi <= d; ++mi) {
            m[pos] = mi;
            self(self, pos + 1, d);
        }
    };
    for (int d = 0; d <= d_max; ++d) rec(rec, 0, d);
    return found;
}

}  // namespace

TEST_CASE("Cremona on divisors: worked example on X^4_5") {
    Space sp(4, 5);
    DivisorClass D = parse_divisor(sp, "2;1,1,0,0,0");
    Move gamma = cremona_index_set(sp, {1, 2, 3, 4, 5});
    auto [image, b] = cremona_divisor(D, gamma);
    CHECK(b == -4);
    CHECK(image == parse_divisor(sp, "6;5,5,4,4,4"));
    CHECK(cremona_divisor(image, gamma).first == D);  // involution
}

TEST_CASE("-K is fixed by every move") {
    for (int n : {2, 3, 4, 5}) {
        Space sp(n, n + 3);
        DivisorClass mk = anticanonical_divisor(sp);
        detail::for_each_subset(sp.s, sp.n + 1, [&](const std::vector<int>& g) {
            auto [img, b] = cremona_divisor(mk, g);
            CHECK(b == 0);
            CHECK(img == mk);
        });
    }
}

TEST_CASE("Cremona on curves: paper instances") {
    Space sp(4, 6);
    CurveClass c = parse_curve(sp, "1;1,1,0,0,0,0");  // line through p1, p2
    Move gamma = cremona_index_set(sp, {1, 2, 3, 4, 5});
    auto [img, a] = cremona_curve(c, gamma);
    CHECK(a == 1);
    CHECK(img == parse_curve(sp, "-2;0,0,-1,-1,-1,0"));  // -(n-2)h + e_3 + e_4 + e_5
    CHECK(cremona_curve(img, gamma).first == c);

    CurveClass F = anticanonical_curve(sp);
    auto [imgF, aF] = cremona_curve(F, gamma);
    CHECK(aF == 0);
    CHECK(imgF == F);

    // e_i with i in Gamma goes to (n-1)h - sum_{j in Gamma minus i} e_j
    CurveClass e1 = exceptional_line(sp, 1);
    CHECK(cremona_curve(e1, gamma).first == parse_curve(sp, "3;0,1,1,1,1,0"));
}

TEST_CASE("intersection numbers preserved along random words") {
    std::mt19937_64 rng(7);
    Space sp(3, 7);
    std::uniform_int_distribution<int> coeff(-6, 6);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Int> m(sp.s), mu(sp.s);
        for (auto& x : m) x = coeff(rng);
        for (auto& x : mu) x = coeff(rng);
        DivisorClass D(sp, coeff(rng), m);
        CurveClass c(sp, coeff(rng), mu);
        WeylWord w;
        for (int k = 0; k < 10; ++k) w.moves.push_back(random_gamma(sp, rng));
        CHECK(pairing_preserved_check(D, c, w));
        DivisorClass D2(sp, coeff(rng), m);
        CHECK(pairing_preserved_check(D, D2, w));
        CHECK(pairing_preserved_check(D, c, WeylWord{}));
    }
}

TEST_CASE("cremona_reduce") {
    Space sp(4, 5);
    auto res = cremona_reduce(parse_divisor(sp, "6;5,5,4,4,4"), 10);
    CHECK(res.reduced);
    CHECK(res.steps == 1);
    CHECK(res.divisor == parse_divisor(sp, "2;1,1,0,0,0"));

    Space x59(5, 9);
    auto fixed = cremona_reduce(parse_divisor(x59, "3;2,2,2,2,2,2,2,2,2"), 10);
    CHECK(fixed.reduced);
    CHECK(fixed.steps == 0);

    auto nef = cremona_reduce(hyperplane_class(Space(3, 5)), 10);
    CHECK(nef.reduced);
    CHECK(nef.steps == 0);

    // reduced output always has all b_Gamma <= 0
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> coeff(0, 8);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Int> m(7);
        for (auto& x : m) x = coeff(rng);
        auto r = cremona_reduce(DivisorClass(Space(3, 7), coeff(rng), m), 400);
        if (!r.reduced) continue;
        detail::for_each_subset(7, 4, [&](const std::vector<int>& g) {
            CHECK(b_gamma(r.divisor, g) <= 0);
        });
    }
}

TEST_CASE("effectivity filter") {
    Space sp(4, 6);
    CHECK(curve_effectivity_filter(parse_curve(sp, "-2;0,0,-1,-1,-1,0")) ==
          Effectivity::non_effective);
    CHECK(curve_effectivity_filter(exceptional_line(sp, 3)) == Effectivity::effective_candidate);
    CHECK(curve_effectivity_filter(CurveClass(sp, 0, std::vector<Int>(6, 0))) ==
          Effectivity::non_effective);
    // degree 0 with a positive mu entry is not a combination of the e_i
    CHECK(curve_effectivity_filter(parse_curve(sp, "0;1,-1,0,0,0,0")) ==
          Effectivity::non_effective);
    CHECK(curve_effectivity_filter(parse_curve(sp, "0;-2,-1,0,0,0,0")) ==
          Effectivity::effective_candidate);
}

TEST_CASE("effective orbit of E_1 on X^2_4 matches the (-1)-class oracle") {
    Space sp(2, 4);
    OrbitCatalog cat = effective_orbit(exceptional_divisor(sp, 1));
    CHECK(cat.complete);
    CHECK(cat.size() == 10);

    auto expected = del_pezzo_minus_one_classes(sp, 6);
    REQUIRE(expected.size() == 10);
    for (const auto& e : cat.elements) {
        std::vector<Int> v{e.degree};
        v.insert(v.end(), e.coeffs.begin(), e.coeffs.end());
        CHECK(expected.count(v) == 1);
    }
}

TEST_CASE("effective orbit of a plane curve class on X^4_7") {
    Space sp(4, 7);
    CurveClass seed = parse_curve(sp, "2;1,1,1,0,0,0,0");
    OrbitCatalog cat = effective_orbit(seed);
    CHECK(cat.complete);
    CHECK(cat.size() == 42);  // 35 classes c_{J,0} with |J| = 3, plus 7 classes c_{j,1}
    std::size_t deg2 = 0, deg5 = 0;
    for (const auto& e : cat.elements) {
        if (e.degree == 2) ++deg2;
        if (e.degree == 5) ++deg5;
    }
    CHECK(deg2 == 35);
    CHECK(deg5 == 7);  // c_{j,1} has degree |J| + (n+1)t - 1 = 5
}

TEST_CASE("orbit witnesses replay to their elements through effective classes") {
    Space sp(4, 7);
    OrbitCatalog cat = effective_orbit(parse_curve(sp, "2;1,1,1,0,0,0,0"));
    CurveClass seed(sp, cat.seed_degree, cat.seed_coeffs);
    for (std::size_t i = 0; i < cat.size(); ++i) {
        WeylWord w = cat.witness(i);
        CurveClass cur = seed;
        for (const Move& mv : w.moves) {
            cur = apply_move(cur, mv);
            CHECK(curve_effectivity_filter(cur) == Effectivity::effective_candidate);
        }
        CHECK(cur == cat.curve_at(i));
    }
}

TEST_CASE("complete orbits are move-closed") {
    Space sp(3, 6);
    OrbitCatalog cat = effective_orbit(exceptional_line(sp, 1));
    REQUIRE(cat.complete);
    for (const auto& e : cat.elements) {
        CurveClass c(sp, e.degree, e.coeffs);
        detail::for_each_subset(sp.s, sp.n + 1, [&](const std::vector<int>& g) {
            CurveClass img = cremona_curve(c, g).first;
            bool in_catalog = cat.find(img.delta, img.mu).has_value();
            bool filtered = curve_effectivity_filter(img) != Effectivity::effective_candidate;
            CHECK((in_catalog || filtered));
        });
        detail::for_each_subset(sp.s, 2, [&](const std::vector<int>& g) {
            CurveClass img = apply_move(c, g);
            CHECK(cat.find(img.delta, img.mu).has_value());
        });
    }
}

TEST_CASE("non-MDS orbits demand a bound and keep growing") {
    Space sp(5, 9);
    CurveClass seed = parse_curve(sp, "2;0,0,0,0,0,0,1,1,1");
    CHECK_THROWS_AS(effective_orbit(seed), std::invalid_argument);

    OrbitCatalog small = effective_orbit(seed, Int(30));
    CHECK_FALSE(small.complete);
    OrbitCatalog larger = effective_orbit(seed, Int(60));
    CHECK_FALSE(larger.complete);
    CHECK(larger.size() > small.size());
}

TEST_CASE("degree bound below the seed is rejected") {
    Space sp(3, 8);
    CHECK_THROWS_AS(effective_orbit(parse_curve(sp, "2;0,0,0,0,0,1,1,1"), Int(1)),
                    std::invalid_argument);
}

TEST_CASE("recursion certificate cases") {
    Space x38(3, 8);
    auto cert = recursion_certificate(parse_curve(x38, "2;0,0,0,0,0,1,1,1"));
    CHECK(cert.available);
    CHECK(cert.satisfies);
    CHECK(cert.case_tag == "s=n+5 equality");

    Space x49(4, 9);
    auto fail = recursion_certificate(parse_curve(x49, "2;0,0,0,0,0,0,1,1,1"));
    CHECK(fail.available);
    CHECK_FALSE(fail.satisfies);

    auto deg8 = recursion_certificate(parse_curve(x49, "8;0,1,1,1,2,2,2,2,2"));
    CHECK(deg8.available);
    CHECK(deg8.satisfies);

    CHECK_FALSE(recursion_certificate(parse_curve(Space(3, 6), "1;1,1,0,0,0,0")).available);
}

TEST_CASE("witness move grows degrees for twenty steps") {
    auto run = certify_infinite(parse_curve(Space(3, 8), "2;0,0,0,0,0,1,1,1"), 20);
    CHECK(run.ok);
    REQUIRE(run.degrees.size() == 21);
    for (std::size_t i = 1; i < run.degrees.size(); ++i) CHECK(run.degrees[i] > run.degrees[i - 1]);
}
