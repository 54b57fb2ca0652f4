#pragma once
// Executable checks for the structural inequalities satisfied by dynamical
// degrees: log-concavity, product formulas, triangle inequality, monotonicity,
// primitivity criteria and spectral simplicity. Every check reports the exact
// quantities on both sides and never concludes from estimates.

#include "dyndeg/relative.hpp"

#include <map>
#include <optional>

namespace dyndeg {

enum class Verdict { Holds, Fails, Inconclusive };

inline std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        default: return "inconclusive";
    }
}

struct CheckRow {
    int p = 0;                // codimension (or row index for matrix checks)
    std::string lhs, rhs;     // exact quantities, printed
    std::string relation;     // the relation that was tested, e.g. ">="
    bool ok = false;
};

struct CheckReport {
    std::string name;
    std::string inputs;
    std::vector<CheckRow> rows;
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;                  // set when inconclusive
    std::vector<std::string> notes;
    std::optional<ExactValue> minimal_c; // weak product formula only
    bool expected_failure = false;

    void add_row(int p, std::string l, std::string r, const std::string& rel, bool ok) {
        rows.push_back({p, std::move(l), std::move(r), rel, ok});
    }
    bool all_rows_ok() const {
        for (const auto& r : rows)
            if (!r.ok) return false;
        return true;
    }
};

// Deterministic plain-text rendering shared by the command line front end.
inline std::vector<std::string> report_lines(const CheckReport& rep) {
    std::vector<std::string> out;
    out.push_back("check: " + rep.name);
    if (!rep.inputs.empty()) out.push_back("inputs: " + rep.inputs);
    for (const auto& r : rep.rows) {
        std::ostringstream os;
        os << "  p=" << r.p << ": " << r.lhs << " " << r.relation << " " << r.rhs
           << (r.ok ? "  [ok]" : "  [violated]");
        out.push_back(os.str());
    }
    std::string v = "verdict: " + verdict_str(rep.verdict);
    if (rep.verdict == Verdict::Inconclusive && !rep.reason.empty())
        v += " (" + rep.reason + ")";
    if (rep.verdict == Verdict::Fails && rep.expected_failure) v += ", expected";
    out.push_back(v);
    for (const auto& n : rep.notes) out.push_back("note: " + n);
    return out;
}

// All dynamical degrees of f, exactly, or nothing when any fails to certify.
inline std::optional<std::vector<ExactValue>> exact_lambda_vector(
    const Correspondence& f, unsigned n_max = 12, const Int& characteristic = 0) {
    std::vector<ExactValue> out;
    for (int p = 0; p <= f.space()->dim(); ++p) {
        auto rep = dyn_degree(f, p, n_max, characteristic);
        if (!rep.exact) return std::nullopt;
        out.push_back(*rep.exact);
    }
    return out;
}

inline std::optional<std::vector<ExactValue>> exact_relative_lambda_vector(
    const SemiConjugacy& sc, unsigned n_max = 12, const Int& characteristic = 0) {
    std::vector<ExactValue> out;
    int fiber = sc.total->dim() - sc.base->dim();
    for (int p = 0; p <= fiber; ++p) {
        auto rep = rel_dyn_degree(sc, p, n_max, characteristic);
        if (!rep.exact) return std::nullopt;
        out.push_back(*rep.exact);
    }
    return out;
}

// Syntactic irreducibility evidence: an iterate counts as irreducible when its
// normal form is a single term (one atom, coefficient possibly > 1).
inline bool single_term_iterates(const Correspondence& f, unsigned n_max = 3,
                                 const Int& characteristic = 0) {
    Correspondence acc = f;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (acc.term_count() != 1) return false;
        if (n < n_max) acc = compose(acc, f, characteristic);
    }
    return true;
}

// lambda_p^2 >= lambda_{p-1} lambda_{p+1} for 1 <= p <= k-1.
inline CheckReport check_log_concavity(const Correspondence& f, unsigned n_max = 10,
                                       const Int& characteristic = 0) {
    CheckReport rep;
    rep.name = "log-concavity";
    rep.inputs = f.str() + " on " + f.space()->key();
    auto lam = exact_lambda_vector(f, n_max, characteristic);
    if (!lam) {
        rep.reason = "dynamical degrees not certified exactly";
        return rep;
    }
    int k = f.space()->dim();
    for (int p = 1; p <= k - 1; ++p) {
        auto sq = (*lam)[static_cast<std::size_t>(p)].pow(2);
        auto pr = (*lam)[static_cast<std::size_t>(p - 1)] *
                  (*lam)[static_cast<std::size_t>(p + 1)];
        rep.add_row(p, sq.str(), pr.str(), ">=", sq.compare(pr) >= 0);
    }
    rep.verdict = rep.all_rows_ok() ? Verdict::Holds : Verdict::Fails;
    rep.notes.push_back(single_term_iterates(f, 3, characteristic)
                            ? "iterates irreducible (single-term normal forms, n <= 3)"
                            : "reducible iterates");
    return rep;
}

namespace detail {

// max over the valid split range of lambda_j(g) lambda_{p-j}(f|pi).
inline std::optional<ExactValue> split_maximum(const std::vector<ExactValue>& lg,
                                               const std::vector<ExactValue>& lrel,
                                               int p) {
    int l = static_cast<int>(lg.size()) - 1;
    int fiber = static_cast<int>(lrel.size()) - 1;
    std::optional<ExactValue> best;
    for (int j = std::max(0, p - fiber); j <= std::min(l, p); ++j) {
        auto v = lg[static_cast<std::size_t>(j)] * lrel[static_cast<std::size_t>(p - j)];
        if (!best || best->compare(v) < 0) best = v;
    }
    return best;
}

}  // namespace detail

// lambda_p(f) = max_j lambda_j(g) lambda_{p-j}(f|pi), valid when g is a
// multiple of a rational-map-like correspondence (lambda_0(g) = 1 after
// content extraction).
inline CheckReport check_product_formula(const SemiConjugacy& sc, unsigned n_max = 12,
                                         const Int& characteristic = 0) {
    CheckReport rep;
    rep.name = "product formula";
    rep.inputs = sc.f.str() + " over " + sc.base->key() +
                 ", multiplier " + sc.multiplier.str();
    if (!sc.verified) {
        rep.reason = "semi-conjugacy not verified";
        return rep;
    }
    auto lf = exact_lambda_vector(sc.f, n_max, characteristic);
    auto lg = exact_lambda_vector(sc.g, n_max, characteristic);
    auto lrel = exact_relative_lambda_vector(sc, n_max, characteristic);
    if (!lf || !lg || !lrel) {
        rep.reason = "dynamical degrees not certified exactly";
        return rep;
    }
    if ((*lg)[0].compare(Rat(1)) != 0) {
        rep.reason = "base map is not a multiple of a rational-map-like "
                     "correspondence (lambda_0(g) != 1)";
        return rep;
    }
    int k = sc.total->dim();
    for (int p = 0; p <= k; ++p) {
        auto rhs = detail::split_maximum(*lg, *lrel, p);
        auto lhs = (*lf)[static_cast<std::size_t>(p)];
        rep.add_row(p, lhs.str(), rhs->str(), "=", lhs.compare(*rhs) == 0);
    }
    rep.verdict = rep.all_rows_ok() ? Verdict::Holds : Verdict::Fails;
    rep.notes.push_back("left side from total-degree expansion, right side from "
                        "base and relative degrees");
    return rep;
}

namespace detail {

inline void weak_product_rows(CheckReport& rep, const std::vector<ExactValue>& lf,
                              const std::vector<ExactValue>& lg,
                              const std::vector<ExactValue>& lrel) {
    std::optional<ExactValue> c;
    for (int p = 0; p < static_cast<int>(lf.size()); ++p) {
        auto rhs = split_maximum(lg, lrel, p);
        if (!rhs) continue;
        auto lhs = lg[0] * lf[static_cast<std::size_t>(p)];
        rep.add_row(p, lhs.str(), rhs->str(), ">=", lhs.compare(*rhs) >= 0);
        auto cp = *rhs / lf[static_cast<std::size_t>(p)];
        if (!c || c->compare(cp) < 0) c = cp;
    }
    rep.minimal_c = c;
    rep.verdict = rep.all_rows_ok() ? Verdict::Holds : Verdict::Fails;
    if (c) {
        rep.notes.push_back("minimal feasible c = " + c->str());
        int cmp = c->compare(lg[0]);
        if (cmp == 0)
            rep.notes.push_back("sharpness: c = lambda_0(g) = " + lg[0].str());
        else if (cmp > 0)
            rep.notes.push_back("c exceeds lambda_0(g) = " + lg[0].str());
    }
}

}  // namespace detail

// lambda_0(g) lambda_p(f) >= max_j lambda_j(g) lambda_{p-j}(f|pi), plus the
// minimal c with c lambda_p(f) >= max_j ... for all p (always >= lambda_0(g)).
inline CheckReport check_weak_product(const SemiConjugacy& sc, unsigned n_max = 12,
                                      const Int& characteristic = 0) {
    CheckReport rep;
    rep.name = "weak product formula";
    rep.inputs = sc.f.str() + " over " + sc.base->key() +
                 ", multiplier " + sc.multiplier.str();
    if (!sc.verified) {
        rep.reason = "semi-conjugacy not verified";
        return rep;
    }
    if (!single_term_iterates(sc.g, 3, characteristic)) {
        rep.reason = "no irreducibility evidence for iterates of the base map";
        return rep;
    }
    auto lf = exact_lambda_vector(sc.f, n_max, characteristic);
    auto lg = exact_lambda_vector(sc.g, n_max, characteristic);
    auto lrel = exact_relative_lambda_vector(sc, n_max, characteristic);
    if (!lf || !lg || !lrel) {
        rep.reason = "dynamical degrees not certified exactly";
        return rep;
    }
    rep.notes.push_back("iterates of the base map irreducible "
                        "(single-term normal forms, n <= 3)");
    detail::weak_product_rows(rep, *lf, *lg, *lrel);
    return rep;
}

// Same inequality on declared degree data (used for reducible scenarios where
// the degrees come from component graphs rather than a single correspondence).
inline CheckReport check_weak_product_data(const std::vector<ExactValue>& lf,
                                           const std::vector<ExactValue>& lg,
                                           const std::vector<ExactValue>& lrel,
                                           const std::string& inputs = "") {
    CheckReport rep;
    rep.name = "weak product formula";
    rep.inputs = inputs;
    if (lf.empty() || lg.empty() || lrel.empty()) {
        rep.reason = "missing degree data";
        return rep;
    }
    detail::weak_product_rows(rep, lf, lg, lrel);
    return rep;
}

// lambda_p(f1 + f2) <= lambda_p(f1) + lambda_p(f2) for commuting summands.
inline CheckReport check_triangle(const Correspondence& f1, const Correspondence& f2,
                                  unsigned n_max = 12, const Int& characteristic = 0) {
    CheckReport rep;
    rep.name = "triangle inequality";
    rep.inputs = "(" + f1.str() + ") + (" + f2.str() + ")";
    if (!same_space(f1.space(), f2.space())) {
        rep.reason = "summands live on different spaces";
        return rep;
    }
    for (const auto& [a, ca] : f1.terms())
        for (const auto& [b, cb] : f2.terms())
            if (!atoms_commute(a, b)) {
                rep.reason = "no commutation certificate for the summands";
                return rep;
            }
    Correspondence sum = f1;
    sum += f2;
    auto ls = exact_lambda_vector(sum, n_max, characteristic);
    auto l1 = exact_lambda_vector(f1, n_max, characteristic);
    auto l2 = exact_lambda_vector(f2, n_max, characteristic);
    if (!ls || !l1 || !l2) {
        rep.reason = "dynamical degrees not certified exactly";
        return rep;
    }
    int k = f1.space()->dim();
    for (int p = 0; p <= k; ++p) {
        auto i = static_cast<std::size_t>(p);
        if (!(*l1)[i].is_rational() || !(*l2)[i].is_rational()) {
            rep.reason = "sum of irrational degrees is not representable exactly";
            rep.rows.clear();
            return rep;
        }
        ExactValue rhs((*l1)[i].rational() + (*l2)[i].rational());
        int cmp = (*ls)[i].compare(rhs);
        rep.add_row(p, (*ls)[i].str(), rhs.str(), "<=", cmp <= 0);
        rep.notes.push_back("p=" + std::to_string(p) +
                            (cmp == 0 ? ": equality" : cmp < 0 ? ": strict" : ": violated"));
    }
    rep.verdict = rep.all_rows_ok() ? Verdict::Holds : Verdict::Fails;
    return rep;
}

// lambda_p(f1|pi1) >= lambda_p(f2|pi2) per p, on exact data.
inline CheckReport check_monotonicity_data(const std::vector<ExactValue>& l1,
                                           const std::vector<ExactValue>& l2,
                                           const std::string& inputs = "") {
    CheckReport rep;
    rep.name = "monotonicity";
    rep.inputs = inputs;
    std::size_t m = std::min(l1.size(), l2.size());
    if (m == 0) {
        rep.reason = "missing degree data";
        return rep;
    }
    for (std::size_t p = 0; p < m; ++p)
        rep.add_row(static_cast<int>(p), l1[p].str(), l2[p].str(), ">=",
                     l1[p].compare(l2[p]) >= 0);
    rep.verdict = rep.all_rows_ok() ? Verdict::Holds : Verdict::Fails;
    return rep;
}

inline CheckReport check_monotonicity(const SemiConjugacy& sc1, const SemiConjugacy& sc2,
                                      unsigned n_max = 12, const Int& characteristic = 0) {
    auto l1 = exact_relative_lambda_vector(sc1, n_max, characteristic);
    auto l2 = exact_relative_lambda_vector(sc2, n_max, characteristic);
    std::string inputs = sc1.f.str() + " vs " + sc2.f.str();
    if (!l1 || !l2) {
        CheckReport rep;
        rep.name = "monotonicity";
        rep.inputs = inputs;
        rep.reason = "relative dynamical degrees not certified exactly";
        return rep;
    }
    return check_monotonicity_data(*l1, *l2, inputs);
}

// lambda_0 > lambda_1 certifies weak primitivity: no semi-conjugacy onto a
// lower-dimensional base with multiple-of-rational-map dynamics.
inline CheckReport check_primitivity(const Correspondence& f, unsigned n_max = 12,
                                     const Int& characteristic = 0) {
    CheckReport rep;
    rep.name = "weak primitivity";
    rep.inputs = f.str() + " on " + f.space()->key();
    if (f.space()->dim() < 1) {
        rep.reason = "needs a positive-dimensional space";
        return rep;
    }
    auto r0 = dyn_degree(f, 0, n_max, characteristic);
    auto r1 = dyn_degree(f, 1, n_max, characteristic);
    if (!r0.exact || !r1.exact) {
        rep.reason = "dynamical degrees not certified exactly";
        return rep;
    }
    bool flag = r0.exact->compare(*r1.exact) > 0;
    rep.add_row(0, r0.exact->str(), r1.exact->str(), ">", flag);
    rep.verdict = Verdict::Holds;
    rep.notes.push_back(flag ? "weakly primitive (lambda_0 > lambda_1)"
                             : "criterion silent (lambda_0 <= lambda_1)");
    return rep;
}

// Surface case (three degrees): lambda_1^2 >= lambda_0 lambda_2; a violation
// is an obstruction to semi-conjugating onto a curve. Threefold case (four
// degrees): lambda_0 lambda_3 <= lambda_1 lambda_2, same reading.
inline CheckReport check_obstruction_examples(const std::vector<ExactValue>& lam,
                                              const std::string& inputs = "") {
    CheckReport rep;
    rep.name = "primitivity obstruction";
    rep.inputs = inputs;
    if (lam.size() == 3) {
        auto lhs = lam[1].pow(2);
        auto rhs = lam[0] * lam[2];
        bool ok = lhs.compare(rhs) >= 0;
        rep.add_row(1, lhs.str(), rhs.str(), ">=", ok);
        rep.verdict = ok ? Verdict::Holds : Verdict::Fails;
        rep.notes.push_back(ok ? "log-concave at p = 1; no certificate"
                               : "obstruction certificate: no semi-conjugacy onto a "
                                 "curve with multiple-of-rational-map dynamics");
    } else if (lam.size() == 4) {
        auto lhs = lam[0] * lam[3];
        auto rhs = lam[1] * lam[2];
        bool ok = lhs.compare(rhs) <= 0;
        rep.add_row(0, lhs.str(), rhs.str(), "<=", ok);
        rep.verdict = ok ? Verdict::Holds : Verdict::Fails;
        rep.notes.push_back(ok ? "no certificate"
                               : "obstruction certificate: lambda_0 lambda_3 exceeds "
                                 "lambda_1 lambda_2");
    } else {
        rep.reason = "dimension pattern not supported (need 3 or 4 degrees)";
    }
    return rep;
}

inline CheckReport check_obstruction_examples(const Correspondence& f,
                                              unsigned n_max = 12,
                                              const Int& characteristic = 0) {
    auto lam = exact_lambda_vector(f, n_max, characteristic);
    std::string inputs = f.str() + " on " + f.space()->key();
    if (!lam) {
        CheckReport rep;
        rep.name = "primitivity obstruction";
        rep.inputs = inputs;
        rep.reason = "dynamical degrees not certified exactly";
        return rep;
    }
    return check_obstruction_examples(*lam, inputs);
}

namespace detail {

// Multiplicity of the rational value r as a root of p.
inline unsigned root_multiplicity(Poly p, const Rat& r) {
    unsigned m = 0;
    while (poly_deg(p) >= 1 && poly_eval(p, r) == 0) {
        p = poly_divmod(p, Poly{-r, Rat(1)}).first;
        ++m;
    }
    return m;
}

}  // namespace detail

// rho(M1)^2 >= rho(M2); when strict, rho(M1) must be a simple eigenvalue and
// every other eigenvalue must have modulus <= sqrt(rho(M2)). Exact arithmetic
// throughout: characteristic polynomials, rational root extraction, and
// radical classification of the residual factors.
inline CheckReport check_simplicity(const Mat& m1, const Mat& m2) {
    CheckReport rep;
    rep.name = "spectral simplicity";
    rep.inputs = "M1 " + std::to_string(m1.rows()) + "x" + std::to_string(m1.cols()) +
                 ", M2 " + std::to_string(m2.rows()) + "x" + std::to_string(m2.cols());
    if (!m1.nonnegative() || !m2.nonnegative()) {
        rep.reason = "matrices must be nonnegative (effective-cone preservation)";
        return rep;
    }
    Poly chi1 = charpoly(m1);
    Poly chi2 = charpoly(m2);
    auto r1 = max_root_modulus(chi1);
    auto r2 = max_root_modulus(chi2);
    if (!r1 || !r2) {
        rep.reason = "spectral radius not exactly classifiable";
        return rep;
    }
    auto r1sq = r1->pow(2);
    int cmp = r1sq.compare(*r2);
    rep.add_row(0, "rho(M1)^2 = " + r1sq.str(), "rho(M2) = " + r2->str(), ">=",
                 cmp >= 0);
    if (cmp < 0) {
        rep.verdict = Verdict::Fails;
        return rep;
    }
    if (cmp == 0) {
        rep.verdict = Verdict::Holds;
        rep.notes.push_back("boundary case rho(M1)^2 = rho(M2): simplicity check "
                            "skipped (hypothesis needs strict inequality)");
        return rep;
    }
    if (!r1->is_rational()) {
        rep.reason = "irrational leading eigenvalue: simplicity analysis limited "
                     "to rational spectral radii";
        return rep;
    }
    Rat rho = r1->rational();
    unsigned mult = detail::root_multiplicity(chi1, rho);
    rep.add_row(1, "multiplicity of rho(M1)", "1", "=", mult == 1);
    if (mult != 1) {
        rep.verdict = Verdict::Fails;
        rep.notes.push_back("leading eigenvalue has multiplicity " +
                            std::to_string(mult) +
                            "; the simplicity hypothesis fails");
        return rep;
    }
    // Remaining spectrum: every other eigenvalue modulus squared vs rho(M2).
    Poly q = chi1;
    bool dominant_removed = false;
    std::vector<Rat> others;
    for (const Rat& r : extract_rational_roots(q)) {
        if (!dominant_removed && r == rho) {
            dominant_removed = true;
            continue;
        }
        others.push_back(r);
    }
    int row = 2;
    for (const Rat& r : others) {
        if (r == 0) {
            rep.add_row(row++, "|0|^2 = 0", r2->str(), "<=", true);
            continue;
        }
        ExactValue msq(r * r);
        rep.add_row(row++, "|" + rat_str(r) + "|^2 = " + msq.str(), r2->str(), "<=",
                     msq.compare(*r2) <= 0);
    }
    q = poly_trim(q);
    if (poly_deg(q) >= 1) {
        auto vq = max_root_modulus(q);
        if (!vq) {
            rep.reason = "residual spectrum not exactly classifiable";
            return rep;
        }
        auto msq = vq->pow(2);
        rep.add_row(row++, "residual modulus^2 = " + msq.str(), r2->str(), "<=",
                     msq.compare(*r2) <= 0);
    }
    rep.verdict = rep.all_rows_ok() ? Verdict::Holds : Verdict::Fails;
    if (rep.verdict == Verdict::Holds)
        rep.notes.push_back("leading eigenvalue simple; all other moduli within "
                            "sqrt(rho(M2))");
    return rep;
}

}  // namespace dyndeg
