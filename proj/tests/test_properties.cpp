// Randomized property suites over the catalog: submultiplicativity, pairing
// duality, reverse duality, power compatibility, iteration strategy agreement
// and base degrees of projection semi-conjugacies. Every assertion is exact.

#include "dyndeg/relative.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace dyndeg;

static SpacePtr P1 = Space::projective(1);
static SpacePtr P2 = Space::projective(2);
static SpacePtr P3 = Space::projective(3);

namespace {

SpacePtr random_proj(std::mt19937& rng) {
    switch (rng() % 3) {
        case 0: return P1;
        case 1: return P2;
        default: return P3;
    }
}

// Random sum of atoms sharing one primitive base, so that every pairwise
// composition is defined. dir < 0: reverse powers only; dir > 0: powers only;
// dir == 0: both directions may appear.
Correspondence random_single_base(std::mt19937& rng, const SpacePtr& s, const Int& base,
                                  int dir) {
    Correspondence f(s);
    unsigned terms = 1 + rng() % 3;
    for (unsigned t = 0; t < terms; ++t) {
        Int coeff = 1 + static_cast<int>(rng() % 3);
        switch (rng() % 4) {
            case 0: {
                Atom a = dir < 0 ? Atom::revpower(s, ipow(base, 1 + rng() % 2))
                                 : Atom::power(s, ipow(base, 1 + rng() % 2));
                f += Correspondence(a, coeff);
                break;
            }
            case 1: {
                Atom a = dir > 0 ? Atom::power(s, ipow(base, 1 + rng() % 2))
                                 : Atom::revpower(s, ipow(base, 1 + rng() % 2));
                f += Correspondence(a, coeff);
                break;
            }
            case 2: f += Correspondence(Atom::diagonal(s), coeff); break;
            default:
                f += Correspondence(Atom::autsum(s, 1 + static_cast<int>(rng() % 4)),
                                    coeff);
        }
    }
    return f;
}

}  // namespace

TEST_CASE("degree sequences are submultiplicative") {
    std::mt19937 rng(101);
    for (int t = 0; t < 100; ++t) {
        SpacePtr s = random_proj(rng);
        Correspondence f = random_single_base(rng, s, 2 + static_cast<int>(rng() % 2), 0);
        int p = static_cast<int>(rng() % static_cast<unsigned>(s->dim() + 1));
        CHECK(check_submultiplicative(f, p, 6));
    }
}

TEST_CASE("pullback and pushforward pairings agree") {
    std::mt19937 rng(102);
    auto P2xP1 = Space::product({P2, P1});
    auto P1xP1 = Space::product({P1, P1});
    for (int t = 0; t < 100; ++t) {
        SpacePtr s = (t % 2) ? P2xP1 : P1xP1;
        SpacePtr lf = (t % 2) ? P2 : P1;
        Int dl = 2 + static_cast<int>(rng() % 3);
        Int dr = 2 + static_cast<int>(rng() % 3);
        Atom left = (rng() % 2) ? Atom::power(lf, dl) : Atom::revpower(lf, dl);
        Atom right = (rng() % 2) ? Atom::power(P1, dr) : Atom::revpower(P1, dr);
        auto [c, a] = Atom::product(left, right);
        Correspondence f(a, c * (1 + static_cast<int>(rng() % 3)));
        if (rng() % 2) f += Correspondence(Atom::diagonal(s), 1 + rng() % 3);
        for (int p = 0; p <= s->dim(); ++p) CHECK(dual_degree_check(f, p));
    }
}

TEST_CASE("reversal swaps the degree profile") {
    std::mt19937 rng(103);
    for (int t = 0; t < 100; ++t) {
        SpacePtr s = random_proj(rng);
        int dir = (t % 2) ? 1 : -1;  // pure direction keeps every lambda exact
        Correspondence f = random_single_base(rng, s, 2 + static_cast<int>(rng() % 2), dir);
        Correspondence r = f.reversed();
        int k = s->dim();
        for (int p = 0; p <= k; ++p) {
            auto a = dyn_degree(r, p, 6);
            auto b = dyn_degree(f, k - p, 6);
            REQUIRE(a.exact);
            REQUIRE(b.exact);
            CHECK(*a.exact == *b.exact);
        }
    }
}

TEST_CASE("degrees of iterates are powers of degrees") {
    std::mt19937 rng(104);
    for (int t = 0; t < 100; ++t) {
        SpacePtr s = random_proj(rng);
        int dir = (t % 2) ? 1 : -1;
        Correspondence f = random_single_base(rng, s, 2, dir);
        unsigned m = 2 + rng() % 2;  // m in {2, 3}
        Correspondence fm = iterate(f, m);
        int p = static_cast<int>(rng() % static_cast<unsigned>(s->dim() + 1));
        auto a = dyn_degree(fm, p, 6);
        auto b = dyn_degree(f, p, 6);
        REQUIRE(a.exact);
        REQUIRE(b.exact);
        CHECK(*a.exact == b.exact->pow(m));
    }
}

TEST_CASE("word expansion agrees with the multinomial strategy") {
    std::mt19937 rng(105);
    for (int t = 0; t < 100; ++t) {
        SpacePtr s = (t % 2) ? P2 : P1;
        Correspondence f(s);
        unsigned terms = 1 + rng() % 3;
        for (unsigned i = 0; i < terms; ++i) {
            switch (rng() % 3) {
                case 0:
                    f += Correspondence(Atom::power(s, ipow(2, 1 + rng() % 2)),
                                        1 + rng() % 2);
                    break;
                case 1: f += Correspondence(Atom::diagonal(s), 1 + rng() % 2); break;
                default:
                    f += Correspondence(Atom::autsum(s, 1 + static_cast<int>(rng() % 3)),
                                        1 + rng() % 2);
            }
        }
        REQUIRE(f.commuting_family());
        unsigned n = 2 + rng() % 5;  // n in [2, 6]
        auto a = iterate(f, n, 0, Correspondence::IterateStrategy::Stepwise);
        auto b = iterate(f, n, 0, Correspondence::IterateStrategy::Multinomial);
        CHECK(a == b);
    }
}

TEST_CASE("the base degree of a projection equals the top degree") {
    std::mt19937 rng(106);
    for (int t = 0; t < 100; ++t) {
        std::size_t nfac = 2 + rng() % 2;
        std::vector<SpacePtr> fac;
        std::vector<Atom> leaves;
        for (std::size_t i = 0; i < nfac; ++i) {
            SpacePtr s = (rng() % 2) ? P1 : P2;
            fac.push_back(s);
            leaves.push_back(rng() % 2
                                 ? Atom::power(s, 2 + static_cast<int>(rng() % 3))
                                 : Atom::revpower(s, 2 + static_cast<int>(rng() % 3)));
        }
        SpacePtr x = Space::product(fac);
        Correspondence f(Atom::from_parts(x, leaves), 1 + rng() % 2);
        if (rng() % 2) f += Correspondence(Atom::diagonal(x), 1 + rng() % 2);
        std::size_t lo = rng() % nfac;
        std::size_t hi = lo + rng() % (nfac - lo);
        auto sc = make_projection_semiconj(f, lo, hi);
        REQUIRE(sc.verified);
        auto rel = rel_dyn_degree(sc, 0, 6);
        auto abs = dyn_degree(f, 0, 6);
        REQUIRE(rel.exact);
        REQUIRE(abs.exact);
        CHECK(*rel.exact == *abs.exact);
    }
}
