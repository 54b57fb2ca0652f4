#pragma once
// Semi-conjugacies through coordinate projections of product spaces, relative
// degree sequences deg_p(f^n|pi), and relative dynamical degrees.

#include "dyndeg/degree_engine.hpp"

#include <numeric>

namespace dyndeg {

struct SemiConjugacy {
    SpacePtr total;            // X = product of projective factors
    SpacePtr base;             // Y = factors [lo, hi] of X (point when empty)
    std::size_t lo = 0, hi = 0;  // kept factor range, inclusive; empty iff hi < lo
    Correspondence f;          // upstairs
    Correspondence g;          // induced downstairs
    Int multiplier = 1;        // a in  pi o f = a (g o pi)
    bool verified = false;

    explicit SemiConjugacy(Correspondence upstairs)
        : total(upstairs.space()), base(total), f(std::move(upstairs)), g(total) {}

    bool keeps_factors() const { return hi >= lo; }
};

// Class pullback along the projection: embeds a Y-monomial into the kept
// factor positions of X.
inline CycleClass pi_pullback(const SemiConjugacy& sc, const CycleClass& beta) {
    if (!same_space(beta.space, sc.base))
        throw space_mismatch("pi_pullback: class not on the base");
    CycleClass out(sc.total, beta.p);
    if (beta.p == 0) {
        out.coeffs[0] = beta.coeffs[0];
        return out;
    }
    auto yb = sc.base->basis(beta.p);
    std::size_t nfac = sc.total->factors().size();
    for (std::size_t i = 0; i < yb.size(); ++i) {
        if (beta.coeffs[i] == 0) continue;
        std::vector<int> exps(nfac, 0);
        for (std::size_t t = 0; t < yb[i].size(); ++t) exps[sc.lo + t] = yb[i][t];
        out.coeffs[static_cast<std::size_t>(sc.total->basis_index(beta.p, exps))] +=
            beta.coeffs[i];
    }
    return out;
}

namespace detail {

// Splits an atom on the product X into (sheet count of dropped factors,
// induced atom on Y). Throws when the atom cannot be projected.
inline std::pair<Int, Atom> project_atom(const Atom& a, const SpacePtr& y,
                                         std::size_t lo, std::size_t hi) {
    using K = Atom::Kind;
    bool keeps = hi >= lo;
    switch (a.kind()) {
        case K::Diagonal: return {1, Atom::diagonal(y)};
        case K::AutSum:
            if (keeps) return {1, Atom::autsum(y, a.param())};
            return {a.param(), Atom::diagonal(y)};
        case K::Declared:
            throw not_semi_conjugate("projection: declared atom '" + a.str() +
                                     "' does not split along factors");
        default: break;
    }
    std::vector<Atom> leaves;
    if (a.kind() == K::Product) {
        leaves = a.parts();
    } else {
        leaves = {a};  // single-factor space
    }
    Int sheets = 1;
    std::vector<Atom> kept;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (keeps && i >= lo && i <= hi) {
            kept.push_back(leaves[i]);
        } else {
            Rat m0 = leaves[i].scalar_action(0);
            if (denominator(m0) != 1)
                throw not_semi_conjugate("projection: non-integer fiber multiplicity");
            sheets *= numerator(m0);
        }
    }
    return {sheets, Atom::from_parts(y, std::move(kept))};
}

}  // namespace detail

// Exact verification of  (f^n)^*(pi^* beta) = a^n pi^*((g^n)^* beta)  on every
// basis class of the base, for n up to n_max.
inline bool verify_semiconjugacy(const SemiConjugacy& sc, unsigned n_max = 1,
                                 const Int& characteristic = 0) {
    Correspondence fn = sc.f;
    Correspondence gn = sc.g;
    Int an = sc.multiplier;
    for (unsigned n = 1; n <= n_max; ++n) {
        for (int l = 0; l <= sc.base->dim(); ++l)
            for (int i = 0; i < sc.base->rank(l); ++i) {
                auto beta = basis_class(sc.base, l, i);
                auto lhs = fn.pullback(pi_pullback(sc, beta));
                auto rhs = pi_pullback(sc, gn.pullback(beta)).scaled(Rat(an));
                if (!(lhs == rhs)) return false;
            }
        if (n < n_max) {
            fn = compose(fn, sc.f, characteristic);
            gn = compose(gn, sc.g, characteristic);
            an *= sc.multiplier;
        }
    }
    return true;
}

// Projection of X onto the contiguous factor range [lo, hi] (0-based). An
// empty range (hi < lo as size_t wrap is not allowed; pass keep_none) gives
// the map to the point.
inline SemiConjugacy make_projection_semiconj(const Correspondence& f, std::size_t lo,
                                              std::size_t hi, bool keep_none = false) {
    const auto& x = f.space();
    if (!x->is_catalog_product())
        throw not_semi_conjugate("projection: total space must be a catalog product");
    const auto& fac = x->factors();
    SemiConjugacy sc(f);
    if (keep_none) {
        sc.base = Space::point();
        sc.lo = 1;
        sc.hi = 0;
    } else {
        if (lo > hi || hi >= fac.size())
            throw not_semi_conjugate("projection: factor range out of bounds");
        std::vector<SpacePtr> kept;
        for (std::size_t i = lo; i <= hi; ++i) kept.push_back(Space::projective(fac[i]));
        sc.base = Space::product(kept);
        sc.lo = lo;
        sc.hi = hi;
    }

    Correspondence raw(sc.base);
    for (const auto& [a, c] : f.terms()) {
        auto [sheets, ga] = detail::project_atom(a, sc.base, sc.lo, sc.hi);
        raw.add_term(ga, c * sheets);
    }
    if (raw.empty()) throw not_semi_conjugate("projection: empty induced correspondence");
    Int content = 0;
    for (const auto& [a, c] : raw.terms()) content = boost::multiprecision::gcd(content, c);
    sc.multiplier = content;
    sc.g = Correspondence(sc.base);
    for (const auto& [a, c] : raw.terms()) sc.g.add_term(a, c / content);
    sc.verified = verify_semiconjugacy(sc, 1);
    if (!sc.verified)
        throw not_semi_conjugate("projection: synthesized map fails the exact identity");
    return sc;
}

inline std::vector<Rat> relative_degree_sequence(const SemiConjugacy& sc, int p,
                                                 unsigned n_max,
                                                 const Int& characteristic = 0) {
    int k = sc.total->dim();
    int l = sc.base->dim();
    if (p < 0 || p > k - l)
        throw codim_error("relative_degree_sequence: p outside [0, dim X - dim Y]");
    auto fiber = pi_pullback(sc, omega_power(sc.base, l));
    auto rest = omega_power(sc.total, k - l - p);
    auto weight = intersect(fiber, rest);
    std::vector<Rat> out;
    Correspondence acc = sc.f;
    for (unsigned n = 1; n <= n_max; ++n) {
        out.push_back(degree(intersect(acc.pullback(omega_power(sc.total, p)), weight)));
        if (n < n_max) acc = compose(acc, sc.f, characteristic);
    }
    return out;
}

inline DegreeReport rel_dyn_degree(const SemiConjugacy& sc, int p, unsigned n_max = 12,
                                   const Int& characteristic = 0) {
    if (sc.base->kind() == Space::Kind::Point)
        return dyn_degree(sc.f, p, n_max, characteristic);
    int k = sc.total->dim();
    int l = sc.base->dim();
    DegreeReport rep;
    rep.p = p;
    rep.sequence = relative_degree_sequence(sc, p, n_max, characteristic);
    for (unsigned n = 1; n <= n_max; ++n) {
        auto [lo_r, hi_r] = rat_nth_root_bounds(rep.sequence[n - 1], n);
        rep.roots.push_back(decimal_str(lo_r));
        if (n == n_max) rep.fekete_upper = hi_r;
    }
    sc.f.stability_assertions(rep.stability);

    if (sc.f.matrix_sound()) {
        Mat a = sc.f.pullback_matrix(p);
        auto fiber = pi_pullback(sc, omega_power(sc.base, l));
        auto rest = omega_power(sc.total, k - l - p);
        auto weight = intersect(fiber, rest);
        std::vector<Rat> lvec(static_cast<std::size_t>(sc.total->rank(p)));
        for (int i = 0; i < sc.total->rank(p); ++i)
            lvec[static_cast<std::size_t>(i)] =
                degree(intersect(basis_class(sc.total, p, i), weight));
        std::vector<Rat> w = omega_power(sc.total, p).coeffs;
        std::vector<Rat> s;
        unsigned need = 2 * static_cast<unsigned>(a.rows()) + 4;
        for (unsigned n = 0; n < need; ++n) {
            Rat t = 0;
            for (std::size_t i = 0; i < lvec.size(); ++i) t += lvec[i] * w[i];
            s.push_back(t);
            w = a.apply(w);
        }
        bool all_zero = true;
        for (const auto& t : s)
            if (t != 0) all_zero = false;
        if (!all_zero) {
            Poly chi = berlekamp_massey(s);
            if (recurrence_holds(chi, s)) {
                if (auto ev = max_root_modulus(chi)) {
                    rep.exact = ev;
                    rep.bounds = ev->enclosure();
                    rep.method = "relative matrix recurrence";
                    return rep;
                }
            }
        }
    }
    rep.bounds = std::make_pair(Rat(1), rep.fekete_upper);
    rep.method = "relative fekete upper bound";
    return rep;
}

}  // namespace dyndeg
