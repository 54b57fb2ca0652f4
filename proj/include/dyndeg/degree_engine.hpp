#pragma once
// Degree sequences and dynamical degrees. Exact values are produced only when
// a certified recognizer applies:
//   * closed form for single-base power/reverse families on one projective
//     factor,
//   * closed form for declared mutually inverse pairs with rank-1 action,
//   * minimal linear recurrence of the matrix-power degree sequence when all
//     atoms act in a single direction per factor (then deg_p(f^n) is a linear
//     functional of M_p(f)^n and the recurrence is rigorous).
// Otherwise the report carries certified rational bounds.

#include "dyndeg/correspondence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dyndeg {

struct DegreeReport {
    int p = 0;
    std::vector<Rat> sequence;        // deg_p(f^n), n = 1..N
    std::vector<std::string> roots;   // deg_p(f^n)^{1/n}, 6 decimal places
    std::optional<ExactValue> exact;  // lambda_p when certified
    std::optional<std::pair<Rat, Rat>> bounds;  // certified enclosure
    Rat fekete_upper = 0;             // deg_p(f^N)^{1/N} upper bound (C = 1)
    int c_used = 1;                   // submultiplicativity constant in force
    std::vector<std::string> stability;
    std::string method;
};

inline std::string decimal_str(const Rat& q, unsigned digits = 6) {
    Int scaled = scaled_floor(q, digits);
    Int ten = ipow(10, digits);
    Int whole = scaled / ten;
    Int frac = scaled % ten + ten;
    return whole.str() + "." + frac.str().substr(1);
}

// Rational enclosure of q^{1/n} for q > 0.
inline std::pair<Rat, Rat> rat_nth_root_bounds(const Rat& q, unsigned n,
                                               unsigned digits = 6) {
    Int num = numerator(q), den = denominator(q);
    Rat lo = nth_root_lower(num, n, digits) / nth_root_upper(den, n, digits);
    Rat hi = nth_root_upper(num, n, digits) / nth_root_lower(den, n, digits);
    return {lo, hi};
}

inline std::vector<Rat> degree_sequence(const Correspondence& f, int p, unsigned n_max,
                                        const Int& characteristic = 0) {
    std::vector<Rat> out;
    Correspondence acc = f;
    for (unsigned n = 1; n <= n_max; ++n) {
        out.push_back(acc.deg_p(p));
        if (n < n_max) acc = compose(acc, f, characteristic);
    }
    return out;
}

namespace detail {

// Degree functional of the matrix-power model: deg_p(f^n) = l^T M_p(f)^n v
// with v the coefficient vector of omega^p and l_i = deg(b_i . omega^{k-p}).
inline void degree_functional(const SpacePtr& s, int p, std::vector<Rat>& l,
                              std::vector<Rat>& v) {
    int k = s->dim();
    v = omega_power(s, p).coeffs;
    auto rest = omega_power(s, k - p);
    l.resize(s->rank(p));
    for (int i = 0; i < s->rank(p); ++i)
        l[static_cast<std::size_t>(i)] =
            degree(intersect(basis_class(s, p, i), rest));
}

// Closed form for families of power maps, reverse power maps, diagonals and
// automorphism sums over one common primitive base on a single projective
// factor: the degree sequence is exactly geometric.
inline std::optional<ExactValue> single_base_closed_form(const Correspondence& f, int p) {
    using K = Atom::Kind;
    if (f.space()->kind() != Space::Kind::Projective) return std::nullopt;
    Int base = 0;
    for (const auto& [a, c] : f.terms()) {
        if (a.kind() == K::Diagonal || a.kind() == K::AutSum) continue;
        if (a.kind() != K::Power && a.kind() != K::RevPower) return std::nullopt;
        auto b = primitive_base(a.param());
        if (base == 0) base = b.base;
        if (b.base != base) return std::nullopt;
    }
    return ExactValue(f.deg_p(p));
}

// Closed form for alpha*b + beta*b^{-1} + gamma*(diag or autsum) with b a
// declared mutually inverse pair acting by rank-1 matrices. Words reduce to
// powers of b or b^{-1}, and the growth rate is the larger of the two
// one-sided geometric rates.
inline std::optional<ExactValue> inverse_pair_closed_form(const Correspondence& f, int p) {
    using K = Atom::Kind;
    std::shared_ptr<const DeclaredAtomData> fwd, bwd;
    Rat alpha = 0, beta = 0, gamma = 0;
    for (const auto& [a, c] : f.terms()) {
        if (a.kind() == K::Diagonal) {
            gamma += Rat(c);
        } else if (a.kind() == K::AutSum) {
            gamma += Rat(c * a.param());
        } else if (a.kind() == K::Declared && a.exponent() == 1) {
            if (!a.decl()->reverse) return std::nullopt;
            if (!fwd) {
                fwd = a.decl();
                bwd = fwd->reverse;
                alpha += Rat(c);
            } else if (a.decl() == fwd) {
                alpha += Rat(c);
            } else if (a.decl() == bwd) {
                beta += Rat(c);
            } else {
                return std::nullopt;
            }
        } else {
            return std::nullopt;
        }
    }
    if (!fwd) return std::nullopt;
    auto it = fwd->table.find({fwd->name, bwd->name});
    if (it == fwd->table.end() || it->second != std::make_pair(Int(1), std::string()))
        return std::nullopt;
    if (fwd->space->rank(p) != 1) return std::nullopt;
    Rat lam = fwd->matrices[static_cast<std::size_t>(p)](0, 0);
    Rat lam2 = bwd->matrices[static_cast<std::size_t>(p)](0, 0);
    if (lam < 1 || lam2 < 1) return std::nullopt;
    Rat one_sided_fwd = gamma + alpha * lam + beta / lam;
    Rat one_sided_bwd = gamma + beta * lam2 + alpha / lam2;
    return ExactValue(std::max(one_sided_fwd, one_sided_bwd));
}

}  // namespace detail

inline DegreeReport dyn_degree(const Correspondence& f, int p, unsigned n_max = 12,
                               const Int& characteristic = 0) {
    if (f.empty()) throw error("dyn_degree: empty correspondence");
    if (p < 0 || p > f.space()->dim()) throw codim_error("dyn_degree: p out of range");
    DegreeReport rep;
    rep.p = p;
    rep.sequence = degree_sequence(f, p, n_max, characteristic);
    for (unsigned n = 1; n <= n_max; ++n) {
        auto [lo, hi] = rat_nth_root_bounds(rep.sequence[n - 1], n);
        rep.roots.push_back(decimal_str(lo));
        if (n == n_max) rep.fekete_upper = hi;
    }
    f.stability_assertions(rep.stability);

    if (auto ev = detail::single_base_closed_form(f, p)) {
        bool geometric = true;  // certify: the sequence must be exactly geometric
        for (unsigned n = 1; n <= n_max; ++n)
            if (rep.sequence[n - 1] != rpow(ev->rational(), n)) geometric = false;
        if (geometric) {
            rep.exact = ev;
            rep.bounds = ev->enclosure();
            rep.method = "single-base closed form";
            return rep;
        }
    }
    if (auto ev = detail::inverse_pair_closed_form(f, p)) {
        rep.exact = ev;
        rep.bounds = ev->enclosure();
        rep.method = "inverse-pair closed form";
        return rep;
    }
    if (f.matrix_sound()) {
        Mat a = f.pullback_matrix(p);
        std::vector<Rat> l, v;
        detail::degree_functional(f.space(), p, l, v);
        std::vector<Rat> s;
        std::vector<Rat> w = v;
        unsigned need = 2 * static_cast<unsigned>(a.rows()) + 4;
        for (unsigned n = 0; n < need; ++n) {
            Rat t = 0;
            for (std::size_t i = 0; i < l.size(); ++i) t += l[i] * w[i];
            s.push_back(t);
            w = a.apply(w);
        }
        Poly chi = berlekamp_massey(s);
        if (recurrence_holds(chi, s)) {
            if (auto ev = max_root_modulus(chi)) {
                rep.exact = ev;
                rep.bounds = ev->enclosure();
                rep.method = "matrix recurrence";
                return rep;
            }
        }
        if (a.nonnegative()) {
            rep.bounds = spectral_radius_bounds(a);
            rep.method = "matrix power bounds";
            return rep;
        }
    }
    rep.bounds = std::make_pair(Rat(1), rep.fekete_upper);
    rep.method = "fekete upper bound";
    return rep;
}

// Alternative route through the growth of the L1 surrogate norm of the
// iterated pullback. Agrees with dyn_degree whenever both certify.
inline DegreeReport dyn_degree_via_norm(const Correspondence& f, int p,
                                        unsigned n_max = 12,
                                        const Int& characteristic = 0) {
    DegreeReport rep;
    rep.p = p;
    Correspondence acc = f;
    for (unsigned n = 1; n <= n_max; ++n) {
        Rat t = norm_l1(acc.pullback(omega_power(f.space(), p)));
        rep.sequence.push_back(t);
        auto [lo, hi] = rat_nth_root_bounds(t, n);
        rep.roots.push_back(decimal_str(lo));
        if (n == n_max) rep.fekete_upper = hi;
        if (n < n_max) acc = compose(acc, f, characteristic);
    }
    if (f.matrix_sound()) {
        Mat a = f.pullback_matrix(p);
        if (a.rows() <= 8) {
            if (auto ev = max_root_modulus(charpoly(a))) {
                rep.exact = ev;
                rep.bounds = ev->enclosure();
                rep.method = "norm growth, spectral radius";
                return rep;
            }
        }
        if (a.nonnegative()) {
            rep.bounds = spectral_radius_bounds(a);
            rep.method = "norm growth, radius bounds";
            return rep;
        }
    }
    rep.bounds = std::make_pair(Rat(1), rep.fekete_upper);
    rep.method = "norm growth, fekete upper bound";
    return rep;
}

// Runtime guard for the C = 1 submultiplicativity constant on the catalog.
inline bool check_submultiplicative(const Correspondence& f, int p, unsigned n_max = 8,
                                    const Int& characteristic = 0) {
    auto s = degree_sequence(f, p, n_max, characteristic);
    for (unsigned m = 1; m < n_max; ++m)
        for (unsigned n = 1; m + n <= n_max; ++n)
            if (s[m + n - 1] > s[m - 1] * s[n - 1]) return false;
    return true;
}

// deg(f^*(omega^p) . omega^{k-p}) must equal deg(omega^p . f_*(omega^{k-p})).
inline bool dual_degree_check(const Correspondence& f, int p) {
    const auto& s = f.space();
    int k = s->dim();
    std::vector<Rat> l, v;
    detail::degree_functional(s, p, l, v);
    Rat via_pull = f.deg_p(p);
    auto pushed = f.pushforward_matrix(p).apply(omega_power(s, k - p).coeffs);
    CycleClass img(s, k - p);
    img.coeffs = pushed;
    Rat via_push = degree(intersect(omega_power(s, p), img));
    return via_pull == via_push;
}

}  // namespace dyndeg
