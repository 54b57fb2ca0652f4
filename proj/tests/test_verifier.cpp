#include "dyndeg/verifier.hpp"

#include "dyndeg/reducible.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace dyndeg;

static SpacePtr P1 = Space::projective(1);
static SpacePtr P2 = Space::projective(2);
static SpacePtr P3 = Space::projective(3);
static SpacePtr P1xP1 = Space::product({P1, P1});

namespace {

Correspondence prod_corr(const Atom& l, const Atom& r) {
    auto [c, a] = Atom::product(l, r);
    return Correspondence(a, c);
}

// A birational pair b, b^{-1} on P3 with deg_1 = deg_2 = 3 and exact
// cancellation b o b^{-1} = b^{-1} o b = identity.
std::pair<Atom, Atom> cubic_pair() {
    auto fwd = std::make_shared<DeclaredAtomData>();
    fwd->name = "cr3";
    fwd->space = P3;
    Mat m0(1, 1), m1(1, 1), m2(1, 1), m3(1, 1);
    m0(0, 0) = 1;
    m1(0, 0) = 3;
    m2(0, 0) = 3;
    m3(0, 0) = 1;
    fwd->matrices = {m0, m1, m2, m3};
    auto bwd = std::make_shared<DeclaredAtomData>(*fwd);
    bwd->name = "cr3inv";
    fwd->reverse = bwd;
    bwd->reverse = fwd;
    fwd->table[{"cr3", "cr3inv"}] = {Int(1), ""};
    bwd->table[{"cr3inv", "cr3"}] = {Int(1), ""};
    return {Atom::declared(fwd), Atom::declared(bwd)};
}

Mat mat1(const Rat& v) {
    Mat m(1, 1);
    m(0, 0) = v;
    return m;
}

const CheckRow& row_at(const CheckReport& rep, int p) {
    for (const auto& r : rep.rows)
        if (r.p == p) return r;
    FAIL("no row for p=" << p);
    return rep.rows.front();
}

bool has_note(const CheckReport& rep, const std::string& needle) {
    for (const auto& n : rep.notes)
        if (n.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("log-concavity of a power map holds") {
    Correspondence f(Atom::power(P3, 2));
    auto rep = check_log_concavity(f);
    CHECK(rep.verdict == Verdict::Holds);
    REQUIRE(rep.rows.size() == 2);
    CHECK(row_at(rep, 1).lhs == "4");
    CHECK(row_at(rep, 1).rhs == "4");
    CHECK(has_note(rep, "irreducible"));
}

TEST_CASE("log-concavity fails for the power-plus-diagonal surface map") {
    Correspondence f(Atom::power(P2, 2));
    f += Correspondence(Atom::diagonal(P2));
    auto rep = check_log_concavity(f);
    CHECK(rep.verdict == Verdict::Fails);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].lhs == "9");
    CHECK(rep.rows[0].rhs == "10");
    CHECK_FALSE(rep.rows[0].ok);
    CHECK(has_note(rep, "reducible iterates"));
}

TEST_CASE("log-concavity of the diagonal holds trivially") {
    Correspondence f(Atom::diagonal(P2));
    auto rep = check_log_concavity(f);
    CHECK(rep.verdict == Verdict::Holds);
    CHECK(rep.rows[0].lhs == "1");
}

TEST_CASE("product formula on P2xP1") {
    Correspondence f = prod_corr(Atom::power(P2, 2), Atom::power(P1, 3));
    auto sc = make_projection_semiconj(f, 1, 1);
    auto rep = check_product_formula(sc);
    CHECK(rep.verdict == Verdict::Holds);
    REQUIRE(rep.rows.size() == 4);
    CHECK(row_at(rep, 0).lhs == "1");
    CHECK(row_at(rep, 1).lhs == "3");
    CHECK(row_at(rep, 2).lhs == "6");
    CHECK(row_at(rep, 3).lhs == "12");
    for (const auto& r : rep.rows) CHECK(r.lhs == r.rhs);
}

TEST_CASE("product formula over the point base is the definition") {
    Correspondence f = prod_corr(Atom::power(P2, 2), Atom::power(P1, 3));
    auto sc = make_projection_semiconj(f, 0, 0, /*keep_none=*/true);
    auto rep = check_product_formula(sc);
    CHECK(rep.verdict == Verdict::Holds);
}

TEST_CASE("product formula on P1xP1 coordinate powers") {
    for (auto [d, e] : {std::pair<int, int>{2, 3}, {5, 2}}) {
        Correspondence f = prod_corr(Atom::power(P1, d), Atom::power(P1, e));
        auto sc = make_projection_semiconj(f, 1, 1);
        auto rep = check_product_formula(sc);
        CHECK(rep.verdict == Verdict::Holds);
        CHECK(row_at(rep, 1).lhs == std::to_string(std::max(d, e)));
    }
}

TEST_CASE("product formula is gated on a rational-map-like base") {
    Correspondence f = prod_corr(Atom::revpower(P1, 2), Atom::revpower(P1, 3));
    auto sc = make_projection_semiconj(f, 1, 1);
    auto rep = check_product_formula(sc);
    CHECK(rep.verdict == Verdict::Inconclusive);
    CHECK(rep.reason.find("lambda_0(g)") != std::string::npos);
}

TEST_CASE("weak product formula is sharp for reverse coordinate powers") {
    for (auto [d, e] : {std::pair<int, int>{2, 3}, {3, 2}}) {
        Correspondence f = prod_corr(Atom::revpower(P1, d), Atom::revpower(P1, e));
        auto sc = make_projection_semiconj(f, 1, 1);
        CHECK(sc.multiplier == d);
        auto rep = check_weak_product(sc);
        CHECK(rep.verdict == Verdict::Holds);
        REQUIRE(rep.minimal_c);
        CHECK(rep.minimal_c->rational() == e);  // = lambda_0(g)
        CHECK(has_note(rep, "sharpness"));
    }
}

TEST_CASE("weak product formula reduces to the product formula for maps") {
    Correspondence f = prod_corr(Atom::power(P2, 2), Atom::power(P1, 3));
    auto sc = make_projection_semiconj(f, 1, 1);
    auto rep = check_weak_product(sc);
    CHECK(rep.verdict == Verdict::Holds);
    REQUIRE(rep.minimal_c);
    CHECK(rep.minimal_c->rational() == 1);
}

TEST_CASE("weak product formula fails on the disjoint-union degree data") {
    // Components: f1 = rev(pow(2)) on P3 over g1 = rev(pow(2)) on P2, and
    // f2 = autsum(5) over g2 = autsum(5). Degrees come from the graphs.
    ComponentGraph fg({P3, P3});
    fg.add_edge(0, 0, Atom::revpower(P3, 2));
    fg.add_edge(1, 1, Atom::autsum(P3, 5));
    ComponentGraph gg({P2, P2});
    gg.add_edge(0, 0, Atom::revpower(P2, 2));
    gg.add_edge(1, 1, Atom::autsum(P2, 5));

    std::vector<ExactValue> lf, lg;
    for (int p = 0; p <= 1; ++p) {
        auto rf = graph_dyn_degree(fg, p, 8);
        auto rg = graph_dyn_degree(gg, p, 8);
        REQUIRE(rf.exact);
        REQUIRE(rg.exact);
        lf.push_back(*rf.exact);
        lg.push_back(*rg.exact);
    }
    CHECK(lf[0].rational() == 8);
    CHECK(lf[1].rational() == 5);
    CHECK(lg[0].rational() == 5);
    CHECK(lg[1].rational() == 5);
    // lambda_0(f|pi) = lambda_0(f); the fiber degree is dominated by the
    // second component's automorphism weight.
    std::vector<ExactValue> lrel = {lf[0], ExactValue(Rat(5))};

    auto rep = check_weak_product_data(lf, lg, lrel, "disjoint union, d1=2, d2=5");
    rep.expected_failure = true;
    CHECK(rep.verdict == Verdict::Fails);
    CHECK(row_at(rep, 1).lhs == "25");
    CHECK(row_at(rep, 1).rhs == "40");
    CHECK_FALSE(row_at(rep, 1).ok);
    auto lines = report_lines(rep);
    bool expected = false;
    for (const auto& l : lines)
        if (l.find("fails, expected") != std::string::npos) expected = true;
    CHECK(expected);
}

TEST_CASE("triangle inequality with the diagonal is an equality") {
    for (Atom a : {Atom::power(P2, 2), Atom::power(P2, 3), Atom::revpower(P2, 2)}) {
        Correspondence f(a);
        Correspondence d(Atom::diagonal(P2));
        auto rep = check_triangle(f, d);
        REQUIRE(rep.verdict == Verdict::Holds);
        auto lam = exact_lambda_vector(f);
        REQUIRE(lam);
        for (int p = 0; p <= 2; ++p) {
            CHECK(row_at(rep, p).lhs ==
                  rat_str((*lam)[static_cast<std::size_t>(p)].rational() + 1));
            CHECK(row_at(rep, p).lhs == row_at(rep, p).rhs);
        }
        CHECK(has_note(rep, "equality"));
    }
}

TEST_CASE("triangle inequality is strict for the birational pair") {
    auto [b, binv] = cubic_pair();
    auto rep = check_triangle(Correspondence(b), Correspondence(binv));
    CHECK(rep.verdict == Verdict::Holds);
    CHECK(row_at(rep, 1).lhs == "10/3");
    CHECK(row_at(rep, 1).rhs == "6");
    CHECK(has_note(rep, "p=1: strict"));
    CHECK(row_at(rep, 0).lhs == "2");  // equality at the ends
}

TEST_CASE("triangle inequality with equal summands is an equality") {
    Correspondence f(Atom::power(P2, 2));
    auto rep = check_triangle(f, f);
    CHECK(rep.verdict == Verdict::Holds);
    for (int p = 0; p <= 2; ++p) CHECK(row_at(rep, p).lhs == row_at(rep, p).rhs);
}

TEST_CASE("triangle inequality requires a commutation certificate") {
    Correspondence f(Atom::power(P2, 2));
    Correspondence g(Atom::revpower(P2, 3));
    auto rep = check_triangle(f, g);
    CHECK(rep.verdict == Verdict::Inconclusive);
    CHECK(rep.reason.find("commutation") != std::string::npos);
}

TEST_CASE("monotonicity on identical semi-conjugacies is equality") {
    Correspondence f = prod_corr(Atom::power(P2, 2), Atom::power(P1, 3));
    auto sc = make_projection_semiconj(f, 1, 1);
    auto rep = check_monotonicity(sc, sc);
    CHECK(rep.verdict == Verdict::Holds);
    for (const auto& r : rep.rows) CHECK(r.lhs == r.rhs);
}

TEST_CASE("monotonicity on declared degree data") {
    std::vector<ExactValue> hi = {ExactValue(Rat(8)), ExactValue(Rat(4))};
    std::vector<ExactValue> lo = {ExactValue(Rat(4)), ExactValue(Rat(2))};
    CHECK(check_monotonicity_data(hi, lo).verdict == Verdict::Holds);
    CHECK(check_monotonicity_data(lo, hi).verdict == Verdict::Fails);
}

TEST_CASE("reverse power maps are weakly primitive") {
    Correspondence f(Atom::revpower(P2, 2));
    auto rep = check_primitivity(f);
    CHECK(rep.verdict == Verdict::Holds);
    CHECK(rep.rows[0].lhs == "4");
    CHECK(rep.rows[0].rhs == "2");
    CHECK(has_note(rep, "weakly primitive"));
}

TEST_CASE("the primitivity criterion is silent for maps") {
    Correspondence f(Atom::power(P2, 2));
    auto rep = check_primitivity(f);
    CHECK(has_note(rep, "criterion silent"));

    Correspondence g(Atom::power(P2, 2));
    g += Correspondence(Atom::diagonal(P2), 2);
    auto rep2 = check_primitivity(g);
    CHECK(rep2.rows[0].lhs == "3");  // 1 + a
    CHECK(rep2.rows[0].rhs == "4");  // d + a
    CHECK(has_note(rep2, "criterion silent"));
}

TEST_CASE("obstruction certificate on the surface example") {
    Correspondence f(Atom::power(P2, 2));
    f += Correspondence(Atom::diagonal(P2));
    auto rep = check_obstruction_examples(f);
    CHECK(rep.verdict == Verdict::Fails);
    CHECK(rep.rows[0].lhs == "9");
    CHECK(rep.rows[0].rhs == "10");
    CHECK(has_note(rep, "obstruction certificate"));
}

TEST_CASE("obstruction certificate on the threefold example") {
    Correspondence f(Atom::power(P3, 2));
    f += Correspondence(Atom::diagonal(P3));
    auto lam = exact_lambda_vector(f);
    REQUIRE(lam);
    std::vector<Rat> expected = {2, 3, 5, 9};
    for (std::size_t p = 0; p < 4; ++p) CHECK((*lam)[p].rational() == expected[p]);
    auto rep = check_obstruction_examples(f);
    CHECK(rep.verdict == Verdict::Fails);
    CHECK(rep.rows[0].lhs == "18");
    CHECK(rep.rows[0].rhs == "15");
    CHECK(has_note(rep, "obstruction certificate"));
}

TEST_CASE("power maps give no obstruction certificate") {
    Correspondence f(Atom::power(P3, 3));
    auto rep = check_obstruction_examples(f);
    CHECK(rep.verdict == Verdict::Holds);
    CHECK(has_note(rep, "no certificate"));
}

TEST_CASE("spectral simplicity for the coordinate power classes") {
    Mat m1(2, 2);
    m1(0, 0) = 2;
    m1(1, 1) = 3;
    auto rep = check_simplicity(m1, mat1(6));
    CHECK(rep.verdict == Verdict::Holds);
    CHECK(row_at(rep, 0).lhs == "rho(M1)^2 = 9");
    CHECK(row_at(rep, 0).rhs == "rho(M2) = 6");
    CHECK(row_at(rep, 2).lhs == "|2|^2 = 4");  // second eigenvalue, 4 <= 6
    CHECK(has_note(rep, "simple"));
}

TEST_CASE("spectral simplicity boundary case is skipped") {
    auto rep = check_simplicity(mat1(2), mat1(4));
    CHECK(rep.verdict == Verdict::Holds);
    CHECK(has_note(rep, "boundary case"));
}

TEST_CASE("spectral simplicity fails on a repeated leading eigenvalue") {
    Mat m1(2, 2);
    m1(0, 0) = 2;
    m1(0, 1) = 1;
    m1(1, 1) = 2;
    auto rep = check_simplicity(m1, mat1(3));
    CHECK(rep.verdict == Verdict::Fails);
    CHECK(has_note(rep, "multiplicity 2"));
}

TEST_CASE("spectral simplicity fails when the square bound is violated") {
    auto rep = check_simplicity(mat1(2), mat1(5));
    CHECK(rep.verdict == Verdict::Fails);
}

TEST_CASE("spectral simplicity needs nonnegative matrices") {
    Mat m1(1, 1);
    m1(0, 0) = -2;
    auto rep = check_simplicity(m1, mat1(1));
    CHECK(rep.verdict == Verdict::Inconclusive);
}

TEST_CASE("report rendering is deterministic") {
    Correspondence f(Atom::power(P2, 2));
    f += Correspondence(Atom::diagonal(P2));
    auto a = report_lines(check_log_concavity(f));
    auto b = report_lines(check_log_concavity(f));
    CHECK(a == b);
    REQUIRE(!a.empty());
    CHECK(a[0] == "check: log-concavity");
    bool verdict_line = false;
    for (const auto& l : a)
        if (l == "verdict: fails") verdict_line = true;
    CHECK(verdict_line);
}
