#pragma once
// Exact integer/rational arithmetic helpers and the exact-value type used for
// growth rates (rational multiples of m-th roots of rationals).

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyndeg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    explicit error(const std::string& m) : std::runtime_error(m) {}
};
struct space_mismatch : error { using error::error; };
struct codim_error : error { using error::error; };
struct undeclared_composition : error { using error::error; };
struct term_blowup : error { using error::error; };
struct commutation_error : error { using error::error; };
struct stability_error : error { using error::error; };
struct not_semi_conjugate : error { using error::error; };
struct declared_error : error { using error::error; };
struct parse_error : error { using error::error; };

inline Int ipow(const Int& b, std::uint64_t e) {
    Int r = 1, x = b;
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

inline Rat rpow(const Rat& b, std::int64_t e) {
    if (e >= 0) {
        Rat r = 1, x = b;
        std::uint64_t k = static_cast<std::uint64_t>(e);
        while (k) {
            if (k & 1) r *= x;
            x *= x;
            k >>= 1;
        }
        return r;
    }
    if (b == 0) throw error("rpow: zero to negative power");
    return 1 / rpow(b, -e);
}

inline Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }
inline Rat rabs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// Largest r with r^n <= x (x >= 0).
inline Int nth_root_floor(const Int& x, unsigned n) {
    if (x < 0) throw error("nth_root_floor: negative");
    if (n == 0) throw error("nth_root_floor: zero index");
    if (x <= 1 || n == 1) return x;
    Int lo = 0, hi = 1;
    while (ipow(hi, n) <= x) hi <<= 1;
    while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (ipow(mid, n) <= x) lo = mid;
        else hi = mid;
    }
    return lo;
}

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline Int multinomial(const std::vector<unsigned>& parts) {
    unsigned n = 0;
    Int r = 1;
    for (unsigned c : parts) {
        for (unsigned i = 1; i <= c; ++i) {
            ++n;
            r *= n;
            r /= i;
        }
    }
    return r;
}

// Smallest base b >= 2 with x = b^e (x >= 2). Falls back to (x, 1) when x has a
// prime factor beyond the trial-division bound.
struct BasePower {
    Int base;
    unsigned exp;
};

inline BasePower primitive_base(const Int& x) {
    if (x < 2) throw error("primitive_base: needs x >= 2");
    Int n = x;
    std::vector<std::pair<Int, unsigned>> fac;
    for (Int p = 2; p * p <= n && p <= 1000000; p == 2 ? p = 3 : p += 2) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            fac.push_back({p, e});
        }
    }
    if (n > 1) {
        if (n > 1000000000000LL && !fac.empty()) return {x, 1};
        fac.push_back({n, 1});
    }
    unsigned g = 0;
    for (auto& [p, e] : fac) g = g == 0 ? e : std::gcd(g, e);
    Int base = 1;
    for (auto& [p, e] : fac) base *= ipow(p, e / g);
    return {base, g};
}

inline std::string rat_str(const Rat& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

// Floor of q * 10^digits as an Int (q >= 0).
inline Int scaled_floor(const Rat& q, unsigned digits) {
    Int num = numerator(q) * ipow(10, digits);
    return num / denominator(q);
}

// Rational lower/upper approximations of x^(1/n) for integer x >= 0,
// to `digits` decimal places. upper - lower <= 10^-digits and the true root
// lies in [lower, upper].
inline Rat nth_root_lower(const Int& x, unsigned n, unsigned digits = 6) {
    Int scaled = x * ipow(10, static_cast<std::uint64_t>(digits) * n);
    return Rat(nth_root_floor(scaled, n), ipow(10, digits));
}
inline Rat nth_root_upper(const Int& x, unsigned n, unsigned digits = 6) {
    Int scaled = x * ipow(10, static_cast<std::uint64_t>(digits) * n);
    Int r = nth_root_floor(scaled, n);
    if (ipow(r, n) == scaled) return Rat(r, ipow(10, digits));
    return Rat(r + 1, ipow(10, digits));
}

// Positive exact value q * r^(1/m) with q, r positive rationals, m >= 1.
// Normalized so that m = 1 whenever r is an exact m-th power.
class ExactValue {
  public:
    ExactValue() : q_(1), r_(1), m_(1) {}
    explicit ExactValue(const Rat& q) : q_(q), r_(1), m_(1) {
        if (q <= 0) throw error("ExactValue: must be positive");
    }
    static ExactValue root(const Rat& r, unsigned m, const Rat& scale = 1) {
        if (r <= 0 || scale <= 0) throw error("ExactValue: must be positive");
        ExactValue v;
        v.q_ = scale;
        v.r_ = r;
        v.m_ = m;
        v.normalize();
        return v;
    }

    bool is_rational() const { return m_ == 1; }
    Rat rational() const {
        if (m_ != 1) throw error("ExactValue: irrational");
        return q_;
    }
    const Rat& scale() const { return q_; }
    const Rat& radicand() const { return r_; }
    unsigned root_index() const { return m_; }

    ExactValue operator*(const ExactValue& o) const {
        unsigned L = std::lcm(m_, o.m_);
        ExactValue v;
        v.q_ = q_ * o.q_;
        v.r_ = rpow(r_, L / m_) * rpow(o.r_, L / o.m_);
        v.m_ = L;
        v.normalize();
        return v;
    }
    ExactValue inverse() const {
        ExactValue v;
        v.q_ = 1 / q_;
        v.r_ = 1 / r_;
        v.m_ = m_;
        v.normalize();
        return v;
    }
    ExactValue operator/(const ExactValue& o) const { return *this * o.inverse(); }
    ExactValue pow(unsigned e) const {
        ExactValue v;
        v.q_ = rpow(q_, e);
        v.r_ = rpow(r_, e);
        v.m_ = m_;
        v.normalize();
        return v;
    }

    // Exact comparison by raising both sides to lcm of root indices.
    int compare(const ExactValue& o) const {
        unsigned L = std::lcm(m_, o.m_);
        Rat a = rpow(q_, L) * rpow(r_, L / m_);
        Rat b = rpow(o.q_, L) * rpow(o.r_, L / o.m_);
        return a < b ? -1 : a > b ? 1 : 0;
    }
    bool operator==(const ExactValue& o) const { return compare(o) == 0; }
    bool operator<(const ExactValue& o) const { return compare(o) < 0; }
    bool operator<=(const ExactValue& o) const { return compare(o) <= 0; }

    int compare(const Rat& x) const { return compare(ExactValue(x)); }

    std::string str() const {
        if (m_ == 1) return rat_str(q_);
        std::ostringstream os;
        if (q_ != 1) os << rat_str(q_) << "*";
        os << rat_str(r_) << "^{1/" << m_ << "}";
        return os.str();
    }

    // Rational enclosure [lo, hi] of the value with hi - lo small.
    std::pair<Rat, Rat> enclosure(unsigned digits = 9) const {
        if (m_ == 1) return {q_, q_};
        Int num = numerator(r_), den = denominator(r_);
        // r^(1/m) in [lo, hi] via integer root of num*10^(d*m)/den.
        Int scalednum = num * ipow(10, static_cast<std::uint64_t>(digits) * m_);
        Int lo = nth_root_floor(scalednum / den, m_);
        Rat lov = Rat(lo, ipow(10, digits));
        Rat hiv = Rat(lo + 2, ipow(10, digits));
        return {q_ * lov, q_ * hiv};
    }
    double approx() const {
        auto [lo, hi] = enclosure();
        return static_cast<double>(lo + (hi - lo) / 2);
    }

  private:
    void normalize() {
        if (m_ == 1) return;
        if (r_ == 1) { m_ = 1; return; }
        // Reduce index: if r is a d-th power for d | m, fold it.
        for (unsigned d = m_; d >= 2; --d) {
            if (m_ % d != 0) continue;
            Int rn = nth_root_floor(numerator(r_), d);
            Int rd = nth_root_floor(denominator(r_), d);
            if (ipow(rn, d) == numerator(r_) && ipow(rd, d) == denominator(r_)) {
                r_ = Rat(rn, rd);
                m_ /= d;
                if (m_ == 1) { q_ *= r_; r_ = 1; return; }
                normalize();
                return;
            }
        }
    }

    Rat q_, r_;
    unsigned m_;
};

inline ExactValue ev_max(const ExactValue& a, const ExactValue& b) {
    return a.compare(b) >= 0 ? a : b;
}

}  // namespace dyndeg
