#include "dyndeg/cycle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace dyndeg;

static SpacePtr P1 = Space::projective(1);
static SpacePtr P2 = Space::projective(2);
static SpacePtr P3 = Space::projective(3);
static SpacePtr P1xP1 = Space::product({P1, P1});
static SpacePtr P2xP1 = Space::product({P2, P1});

TEST_CASE("basis enumeration on products") {
    CHECK(P2->rank(0) == 1);
    CHECK(P2->rank(1) == 1);
    CHECK(P1xP1->rank(1) == 2);
    CHECK(P1xP1->rank(2) == 1);
    CHECK(P2xP1->rank(1) == 2);
    CHECK(P2xP1->rank(2) == 2);  // h1^2, h1h2
    CHECK(P2xP1->rank(3) == 1);  // h1^2 h2
    CHECK(P2xP1->dim() == 3);
    CHECK(Space::point()->rank(0) == 1);
}

TEST_CASE("intersection product on P2") {
    auto h = basis_class(P2, 1, 0);
    auto h2 = intersect(h, h);
    CHECK(h2.p == 2);
    CHECK(h2.coeffs[0] == 1);
    CHECK(degree(h2) == 1);
    CHECK_THROWS_AS(intersect(h2, h), codim_error);
}

TEST_CASE("relations on P1xP1") {
    auto h1 = basis_class(P1xP1, 1, 0);
    auto h2 = basis_class(P1xP1, 1, 1);
    CHECK(intersect(h1, h1).is_zero());
    auto omega = polarization(P1xP1);
    auto sq = intersect(omega, omega);
    CHECK(degree(sq) == 2);  // (h1+h2)^2 = 2 h1h2
}

TEST_CASE("degree on P2xP1") {
    auto omega = polarization(P2xP1);
    auto cube = intersect(intersect(omega, omega), omega);
    CHECK(degree(cube) == 3);  // multinomial coefficient of h1^2 h2
}

TEST_CASE("omega powers") {
    auto w2 = omega_power(P3, 2);
    CHECK(w2.coeffs == std::vector<Rat>{Rat(1)});
    auto w = omega_power(P1xP1, 2);
    CHECK(w.coeffs == std::vector<Rat>{Rat(2)});
    auto v = omega_power(P2xP1, 1);
    CHECK(v.coeffs == std::vector<Rat>{Rat(1), Rat(1)});
    CHECK(omega_power(P2xP1, 0).coeffs == std::vector<Rat>{Rat(1)});
    CHECK_THROWS_AS(omega_power(P2, 5), codim_error);
}

TEST_CASE("norm_l1 examples") {
    CHECK(norm_l1(polarization(P2)) == 1);
    CycleClass v(P1xP1, 1);
    v.coeffs = {Rat(3), Rat(-2)};
    CHECK(norm_l1(v) == 5);
    CycleClass z(P1xP1, 1);
    CHECK(norm_l1(z) == 0);
}

TEST_CASE("norm_l1 is a norm on random classes") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int t = 0; t < 100; ++t) {
        SpacePtr s = (t % 3 == 0) ? P2xP1 : (t % 3 == 1) ? P1xP1 : P3;
        int p = static_cast<int>(rng() % (s->dim() + 1));
        CycleClass a(s, p), b(s, p);
        for (auto& c : a.coeffs) c = coef(rng);
        for (auto& c : b.coeffs) c = coef(rng);
        CycleClass sum = a;
        sum += b;
        CHECK(norm_l1(sum) <= norm_l1(a) + norm_l1(b));
        CHECK(norm_l1(a.scaled(Rat(-3))) == 3 * norm_l1(a));
        if (norm_l1(a) == 0) CHECK(a.is_zero());
    }
}

TEST_CASE("pairing non-degeneracy on the catalog") {
    for (const auto& s : {P1, P2, P3, P1xP1, P2xP1}) {
        for (int p = 0; p <= s->dim(); ++p) {
            Mat m = pairing_matrix(s, p);
            REQUIRE(m.rows() == m.cols());
            CHECK(determinant(m) != 0);
        }
    }
}

TEST_CASE("effectivity closure") {
    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        SpacePtr s = (t % 2) ? P2xP1 : P1xP1;
        int maxp = s->dim();
        int p = static_cast<int>(rng() % maxp);
        int q = static_cast<int>(rng() % (maxp - p + 1));
        CycleClass a(s, p), b(s, q);
        for (auto& c : a.coeffs) c = static_cast<int>(rng() % 5);
        for (auto& c : b.coeffs) c = static_cast<int>(rng() % 5);
        CHECK(intersect(a, b).is_effective());
    }
}

TEST_CASE("declared ring validation") {
    // A clone of the P2 ring, declared by table.
    auto data = std::make_shared<DeclaredSpaceData>();
    data->name = "declP2";
    data->dim = 2;
    data->basis_labels = {{"1"}, {"H"}, {"H^2"}};
    data->products[{0, 0, 0, 0}] = {Rat(1)};
    data->products[{0, 0, 1, 0}] = {Rat(1)};
    data->products[{0, 0, 2, 0}] = {Rat(1)};
    data->products[{1, 0, 1, 0}] = {Rat(1)};
    data->top_degrees = {Rat(1)};
    data->polarization = {Rat(1)};
    auto s = Space::declared(data);
    validate_declared_space(s);
    auto h = basis_class(s, 1, 0);
    CHECK(degree(intersect(h, h)) == 1);
    CHECK(norm_l1(h) == 1);

    // Degenerate pairing must be rejected.
    auto bad = std::make_shared<DeclaredSpaceData>(*data);
    bad->products[{1, 0, 1, 0}] = {Rat(0)};
    CHECK_THROWS_AS(validate_declared_space(Space::declared(bad)), declared_error);
}
