#pragma once
// Exact univariate polynomial arithmetic over the rationals: Sturm chains,
// rational root extraction, dominant root-modulus classification, and
// minimal linear recurrences (Berlekamp-Massey).

#include "dyndeg/numeric.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace dyndeg {

// Coefficients low degree -> high degree; normalized (no trailing zeros).
using Poly = std::vector<Rat>;

inline Poly poly_trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}
inline int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Rat poly_eval(const Poly& p, const Rat& x) {
    Rat r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

inline Poly poly_derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
    return poly_trim(d);
}

inline Poly poly_scale(const Poly& p, const Rat& c) {
    Poly r = p;
    for (auto& x : r) x *= c;
    return poly_trim(r);
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return poly_trim(r);
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return poly_trim(r);
}

// Returns {quotient, remainder}.
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
    if (b.empty()) throw error("poly_divmod: division by zero");
    Poly q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, Rat(0));
    while (poly_deg(a) >= poly_deg(b)) {
        std::size_t shift = a.size() - b.size();
        Rat c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a = poly_trim(a);
        if (a.empty()) break;
    }
    return {poly_trim(q), a};
}

inline Poly poly_monic(Poly p) {
    if (p.empty()) return p;
    Rat lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline Poly poly_gcd(Poly a, Poly b) {
    a = poly_trim(a);
    b = poly_trim(b);
    while (!b.empty()) {
        auto [q, r] = poly_divmod(a, b);
        a = b;
        b = r;
    }
    return a.empty() ? a : poly_monic(a);
}

inline int sgn(const Rat& x) { return x < 0 ? -1 : x > 0 ? 1 : 0; }

inline std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    Poly a = poly_trim(p);
    if (a.empty()) return chain;
    chain.push_back(a);
    Poly b = poly_derivative(a);
    while (!b.empty()) {
        chain.push_back(b);
        Poly r = poly_divmod(a, b).second;
        a = b;
        b = poly_scale(r, Rat(-1));
    }
    return chain;
}

inline int sturm_variations_at(const std::vector<Poly>& chain, const Rat& x) {
    int v = 0, prev = 0;
    for (const auto& q : chain) {
        int s = sgn(poly_eval(q, x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
    }
    return v;
}

// Number of distinct real roots in (a, b].
inline int sturm_count(const Poly& p, const Rat& a, const Rat& b) {
    auto chain = sturm_chain(p);
    if (chain.empty()) return 0;
    return sturm_variations_at(chain, a) - sturm_variations_at(chain, b);
}

// Cauchy bound: all complex roots have modulus < bound.
inline Rat root_bound(const Poly& p) {
    if (poly_deg(p) < 1) return 1;
    Rat m = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, rabs(p[i] / p.back()));
    return m + 1;
}

// All rational roots with multiplicity, each deflated out of p (p modified).
inline std::vector<Rat> extract_rational_roots(Poly& p) {
    std::vector<Rat> roots;
    Poly q = poly_trim(p);
    auto divisors = [](Int n) {
        n = iabs(n);
        std::vector<Int> ds;
        for (Int d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                ds.push_back(d);
                if (d * d != n) ds.push_back(n / d);
            }
        }
        return ds;
    };
    bool found = true;
    while (found && poly_deg(q) >= 1) {
        found = false;
        if (q.front() == 0) {
            roots.push_back(0);
            q.erase(q.begin());
            found = true;
            continue;
        }
        Int den = 1;
        for (const auto& c : q)
            den = den / boost::multiprecision::gcd(den, denominator(c)) * denominator(c);
        std::vector<Int> iq;
        for (const auto& c : q) iq.push_back(numerator(c) * (den / denominator(c)));
        for (const Int& pn : divisors(iq.front())) {
            for (const Int& qd : divisors(iq.back())) {
                for (int s : {1, -1}) {
                    Rat cand = Rat(pn * s, qd);
                    if (poly_eval(q, cand) == 0) {
                        roots.push_back(cand);
                        q = poly_divmod(q, Poly{-cand, Rat(1)}).first;
                        found = true;
                        goto next_round;
                    }
                }
            }
        }
    next_round:;
    }
    p = q;
    return roots;
}

// Maximal modulus over all complex roots of p, when exactly classifiable.
// Handles: rational roots; pure binomial remainders c_m x^m + c_0; quadratic
// remainders with negative discriminant (conjugate pair, modulus sqrt(c0/c2)).
inline std::optional<ExactValue> max_root_modulus(const Poly& poly) {
    Poly p = poly_trim(poly);
    if (poly_deg(p) < 1) return std::nullopt;
    std::optional<ExactValue> best;
    auto consider = [&](const ExactValue& v) {
        if (!best || best->compare(v) < 0) best = v;
    };
    Poly q = p;
    for (const Rat& r : extract_rational_roots(q)) {
        if (r != 0) consider(ExactValue(rabs(r)));
    }
    q = poly_trim(q);
    int d = poly_deg(q);
    if (d >= 1) {
        bool binomial_form = q.front() != 0;
        for (int i = 1; i < d && binomial_form; ++i)
            if (q[i] != 0) binomial_form = false;
        if (binomial_form) {
            consider(ExactValue::root(rabs(q.front() / q.back()), static_cast<unsigned>(d)));
        } else if (d == 2) {
            Rat disc = q[1] * q[1] - 4 * q[2] * q[0];
            if (disc < 0) {
                consider(ExactValue::root(q[0] / q[2], 2));
            } else {
                return std::nullopt;  // real irrational pair, not representable
            }
        } else {
            return std::nullopt;
        }
    }
    if (!best) return std::nullopt;  // only root was 0
    return best;
}

// Minimal linear recurrence c_0..c_{L-1} with
// s[n] = c_0 s[n-1] + ... + c_{L-1} s[n-L] for all represented n.
// Returns the characteristic polynomial x^L - c_0 x^{L-1} - ... - c_{L-1}.
inline Poly berlekamp_massey(const std::vector<Rat>& s) {
    std::vector<Rat> C{Rat(1)}, B{Rat(1)};
    int L = 0, m = 1;
    Rat b = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        Rat d = s[n];
        for (int i = 1; i <= L; ++i) d += C[i] * s[n - i];
        if (d == 0) {
            ++m;
        } else if (2 * L <= static_cast<int>(n)) {
            std::vector<Rat> T = C;
            Rat coef = d / b;
            if (C.size() < B.size() + m) C.resize(B.size() + m, Rat(0));
            for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
            L = static_cast<int>(n) + 1 - L;
            B = T;
            b = d;
            m = 1;
        } else {
            Rat coef = d / b;
            if (C.size() < B.size() + m) C.resize(B.size() + m, Rat(0));
            for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
            ++m;
        }
    }
    // C(x) = 1 + c_1 x + ... ; characteristic poly is x^L * C(1/x).
    Poly chi(L + 1, Rat(0));
    for (int i = 0; i <= L; ++i)
        chi[L - i] = (i < static_cast<int>(C.size())) ? C[i] : Rat(0);
    return poly_trim(chi);
}

// Checks that chi (characteristic polynomial of a recurrence) annihilates s.
inline bool recurrence_holds(const Poly& chi, const std::vector<Rat>& s) {
    int L = poly_deg(chi);
    if (L < 0) return false;
    for (std::size_t n = L; n < s.size(); ++n) {
        Rat acc = 0;
        for (int i = 0; i <= L; ++i) acc += chi[i] * s[n - L + i];
        if (acc != 0) return false;
    }
    return true;
}

}  // namespace dyndeg
