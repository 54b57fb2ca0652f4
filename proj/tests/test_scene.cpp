#include "dyndeg/scene.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

using namespace dyndeg;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    auto dir = std::filesystem::temp_directory_path() / "dyndeg_scene_test";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream out(path);
    out << content;
    return dir.string();
}

const char* kPairJson = R"({
  "type": "atom", "space": "P3", "primary": "b",
  "atoms": [
    {"name": "b",    "matrices": [[[1]], [[3]], [[3]], [[1]]], "reverse": "binv"},
    {"name": "binv", "matrices": [[[1]], [[3]], [[3]], [[1]]], "reverse": "b"}
  ],
  "table": [
    {"left": "b",    "right": "binv", "coeff": 1, "result": ""},
    {"left": "binv", "right": "b",    "coeff": 1, "result": ""}
  ]
})";

// A declared ring isomorphic to the P1 ring: classes 1 and pt.
const char* kLineJson = R"({
  "type": "space", "name": "L", "dim": 1,
  "basis_labels": [["1"], ["pt"]],
  "products": [
    {"p": 0, "i": 0, "q": 0, "j": 0, "coeffs": [1]},
    {"p": 0, "i": 0, "q": 1, "j": 0, "coeffs": [1]}
  ],
  "top_degrees": [1],
  "polarization": [1]
})";

}  // namespace

TEST_CASE("correspondence expressions parse to normal forms") {
    Scene s = parse_scene(
        "space P2 = proj 2\n"
        "corr F = power(P2,2) + 1*diag(P2)\n"
        "corr G = 2*power(P2,2) + power(P2,2)\n"
        "corr H = rev(power(P2,2))\n");
    auto P2 = s.spaces.at("P2");
    Correspondence f(Atom::power(P2, 2));
    f += Correspondence(Atom::diagonal(P2));
    CHECK(s.corrs.at("F") == f);
    CHECK(s.corrs.at("G") == Correspondence(Atom::power(P2, 2), 3));
    CHECK(s.corrs.at("H") == Correspondence(Atom::revpower(P2, 2)));
}

TEST_CASE("product spaces and product correspondences") {
    Scene s = parse_scene(
        "space P2 = proj 2\n"
        "space P1 = proj 1\n"
        "space X = prod(P2,P1)\n"
        "corr F = prod(power(P2,2), power(P1,3)) + 2*diag(X)\n");
    CHECK(s.spaces.at("X")->key() == "P[2,1]");
    CHECK(s.corrs.at("F").term_count() == 2);
    // (1 + 2) times deg(omega^3) = 3 on P2 x P1
    CHECK(s.corrs.at("F").deg_p(0) == 9);
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_scene("space P2 = proj 2\ncorr F = power(Q,2)\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("col") != std::string::npos);
        CHECK(msg.find("unknown space 'Q'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_scene("space X = proj 2 junk\n"), parse_error);
    CHECK_THROWS_AS(parse_scene("space X = proj 2\nspace X = proj 1\n"), parse_error);
    CHECK_THROWS_AS(parse_scene("bogus line\n"), parse_error);
}

TEST_CASE("characteristic must be zero or prime") {
    CHECK(parse_scene("set char 0\n").characteristic == 0);
    CHECK(parse_scene("set char 7\n").characteristic == 7);
    CHECK_THROWS_AS(parse_scene("set char 4\n"), parse_error);
}

TEST_CASE("characteristic gates compositions at run time") {
    Scene s = parse_scene(
        "set char 2\n"
        "space P2 = proj 2\n"
        "corr F = power(P2,2) + rev(power(P2,2))\n"
        "cmd degrees F\n");
    auto res = run_scene(s);
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("error:") != std::string::npos);
}

TEST_CASE("semi-conjugacy declarations") {
    Scene s = parse_scene(
        "space P2 = proj 2\n"
        "space P1 = proj 1\n"
        "space X = prod(P2,P1)\n"
        "corr F = prod(power(P2,2), power(P1,3))\n"
        "semiconj S = proj(X -> factor 2..2) of F\n"
        "cmd relative S\n"
        "cmd verify product_formula S p=0..3\n");
    const auto& sc = s.semiconjs.at("S");
    CHECK(sc.base->key() == "P[1]");
    CHECK(sc.multiplier == 1);
    auto res = run_scene(s);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("verdict: holds") != std::string::npos);
    CHECK(res.output.find("lambda = 2") != std::string::npos);  // relative p=1
}

TEST_CASE("graphs parse and expose irrational growth") {
    Scene s = parse_scene(
        "space A = proj 1\n"
        "space B = proj 1\n"
        "graph G = components(A,B); edge 1->2 power 2; edge 2->1 power 3\n"
        "cmd degrees G p=1..1\n");
    CHECK(s.graphs.at("G").edges().size() == 2);
    auto res = run_scene(s);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("6^{1/2}") != std::string::npos);
}

TEST_CASE("pretty printed scenes reparse to equal scenes") {
    std::string text =
        "set   char 0\n"
        "space P2 =   proj 2\n"
        "# a comment\n"
        "corr F = power(P2,2) +   diag(P2)\n"
        "cmd degrees F\n";
    Scene a = parse_scene(text);
    Scene b = parse_scene(pretty_print(a));
    CHECK(a == b);
    CHECK(pretty_print(a) == pretty_print(b));
}

TEST_CASE("the surface example scene fails log-concavity with exit 2") {
    Scene s = parse_scene(
        "space P2 = proj 2\n"
        "corr F = power(P2,2) + diag(P2)\n"
        "cmd degrees F\n"
        "cmd verify log_concavity F expect=fail\n");
    auto res = run_scene(s);
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("9 >= 10  [violated]") != std::string::npos);
    CHECK(res.output.find("verdict: fails, expected") != std::string::npos);
    // degree rows carry the exact sequences
    CHECK(res.output.find("lambda = 5") != std::string::npos);

    auto res2 = run_scene(s);
    CHECK(res.output == res2.output);  // byte-identical
}

TEST_CASE("unexpected check failures exit 1") {
    Scene s = parse_scene(
        "space P2 = proj 2\n"
        "corr F = power(P2,2) + diag(P2)\n"
        "cmd verify log_concavity F\n");
    CHECK(run_scene(s).exit_code == 1);
}

TEST_CASE("csv and records formats are structured and deterministic") {
    Scene s = parse_scene(
        "space P2 = proj 2\n"
        "corr F = power(P2,2) + diag(P2)\n"
        "cmd degrees F\n"
        "cmd verify log_concavity F expect=fail\n");
    RunOptions csv;
    csv.format = "csv";
    auto a = run_scene(s, csv);
    CHECK(a.output.find("degree,F,1,3,") != std::string::npos);
    CHECK(a.output.find("verdict,log-concavity,fails,,1") != std::string::npos);
    CHECK(a.output == run_scene(s, csv).output);

    RunOptions rec;
    rec.format = "records";
    auto b = run_scene(s, rec);
    CHECK(b.output.find("type=degree;name=F;p=2;lambda=5;") != std::string::npos);
    CHECK(b.output.find("type=check_row;p=1;lhs=9;relation=>=;rhs=10;ok=0") !=
          std::string::npos);
    CHECK(b.output == run_scene(s, rec).output);
}

TEST_CASE("approx flag appends decimal values") {
    Scene s = parse_scene(
        "space A = proj 1\n"
        "space B = proj 1\n"
        "graph G = components(A,B); edge 1->2 power 2; edge 2->1 power 3\n"
        "cmd degrees G p=1..1\n");
    RunOptions opt;
    opt.approx = true;
    auto res = run_scene(s, opt);
    CHECK(res.output.find("~ 2.449489") != std::string::npos);
}

TEST_CASE("declared atom files drive the strict triangle inequality") {
    std::string dir = write_temp("pair.json", kPairJson);
    Scene s = parse_scene(
        "space P3 = proj 3\n"
        "corr B = declared(pair.json)\n"
        "corr Binv = declared(pair.json, binv)\n"
        "cmd verify triangle B Binv p=1..1\n",
        dir);
    auto res = run_scene(s);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("10/3 <= 6  [ok]") != std::string::npos);
    CHECK(res.output.find("p=1: strict") != std::string::npos);
}

TEST_CASE("declared space files load and validate") {
    std::string dir = write_temp("line.json", kLineJson);
    Scene s = parse_scene(
        "space L = declared line.json\n"
        "corr D = diag(L)\n"
        "cmd degrees D\n",
        dir);
    CHECK(s.spaces.at("L")->dim() == 1);
    auto res = run_scene(s);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("lambda = 1") != std::string::npos);
}

TEST_CASE("scenario battery runs deterministically with expected exits") {
    std::map<std::string, int> expected = {
        {"example3", 2},      {"example4", 2},       {"remark1pt5", 2},
        {"remark1pt6", 2},    {"remark1pt7", 0},     {"thm65-reverse", 0},
        {"product-p2xp1", 0}, {"weak-sharpness", 0}};
    for (const auto& name : scenario_names()) {
        auto a = run_scenario(name);
        auto b = run_scenario(name);
        INFO(name);
        CHECK(a.exit_code == expected.at(name));
        CHECK(a.output == b.output);
        CHECK_FALSE(a.output.empty());
    }
}

TEST_CASE("scenario outputs quote the established numbers") {
    auto e3 = run_scenario("example3");
    CHECK(e3.output.find("log-concavity: FAILS (9 < 10)") != std::string::npos);
    CHECK(e3.output.find("lambda = 5") != std::string::npos);

    auto r6 = run_scenario("remark1pt6");
    CHECK(r6.output.find("weak product formula: FAILS (25 < 40), expected") !=
          std::string::npos);

    auto ws = run_scenario("weak-sharpness");
    CHECK(ws.output.find("minimal c = 3 = lambda_0(g)") != std::string::npos);
    CHECK(ws.output.find("minimal c = 2 = lambda_0(g)") != std::string::npos);

    auto e4 = run_scenario("example4");
    CHECK(e4.output.find("18") != std::string::npos);
    CHECK(e4.output.find("15") != std::string::npos);

    auto t65 = run_scenario("thm65-reverse");
    CHECK(t65.output.find("weakly primitive") != std::string::npos);
    CHECK(t65.output.find("criterion silent") != std::string::npos);
}

TEST_CASE("scenario command embeds in scenes") {
    Scene s = parse_scene("cmd scenario product-p2xp1\n");
    auto res = run_scene(s);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("== scenario product-p2xp1 ==") != std::string::npos);
    CHECK(res.output.find("verdict: holds") != std::string::npos);
}

TEST_CASE("unknown scenario names error out") {
    auto res = run_scenario("nope");
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("unknown scenario") != std::string::npos);
}
