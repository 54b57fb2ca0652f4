#pragma once
// Cycle classes in the monomial basis of N^p(X): intersection product, degree
// functional, polarization powers, the L1 surrogate norm, and degree pairings.

#include "dyndeg/space.hpp"

#include <vector>

namespace dyndeg {

struct CycleClass {
    SpacePtr space;
    int p = 0;
    std::vector<Rat> coeffs;

    CycleClass() = default;
    CycleClass(SpacePtr s, int codim)
        : space(std::move(s)), p(codim), coeffs(space->rank(codim), Rat(0)) {
        if (codim < 0 || codim > space->dim())
            throw codim_error("CycleClass: codimension out of range");
    }

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (c != 0) return false;
        return true;
    }
    bool is_effective() const {
        for (const auto& c : coeffs)
            if (c < 0) return false;
        return true;
    }
    CycleClass& operator+=(const CycleClass& o) {
        if (!same_space(space, o.space) || p != o.p)
            throw space_mismatch("CycleClass: sum shape mismatch");
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
        return *this;
    }
    CycleClass scaled(const Rat& s) const {
        CycleClass r = *this;
        for (auto& c : r.coeffs) c *= s;
        return r;
    }
    bool operator==(const CycleClass& o) const {
        return same_space(space, o.space) && p == o.p && coeffs == o.coeffs;
    }
};

inline CycleClass basis_class(const SpacePtr& s, int p, int i) {
    CycleClass c(s, p);
    c.coeffs[i] = 1;
    return c;
}

namespace detail {

// Product of two basis monomials, as a coefficient vector in N^{p+q}.
inline std::vector<Rat> basis_product(const SpacePtr& s, int p, int i, int q, int j) {
    int pq = p + q;
    std::vector<Rat> out(s->rank(pq), Rat(0));
    if (s->kind() == Space::Kind::Declared) {
        const auto& tab = s->decl()->products;
        auto it = tab.find({p, i, q, j});
        if (it == tab.end()) it = tab.find({q, j, p, i});
        if (it == tab.end()) throw declared_error("declared ring: missing product entry");
        return it->second;
    }
    if (s->kind() == Space::Kind::Point) {
        out[0] = 1;
        return out;
    }
    auto a = s->basis(p)[i];
    auto b = s->basis(q)[j];
    const auto& caps = s->factors();
    for (std::size_t f = 0; f < a.size(); ++f) {
        a[f] += b[f];
        if (a[f] > caps[f]) return out;  // relation h_f^{k_f+1} = 0
    }
    out[s->basis_index(pq, a)] = 1;
    return out;
}

}  // namespace detail

inline CycleClass intersect(const CycleClass& a, const CycleClass& b) {
    if (!same_space(a.space, b.space)) throw space_mismatch("intersect: different spaces");
    if (a.p + b.p > a.space->dim())
        throw codim_error("intersect: codimension overflow");
    CycleClass out(a.space, a.p + b.p);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j] == 0) continue;
            auto prod = detail::basis_product(a.space, a.p, static_cast<int>(i), b.p,
                                              static_cast<int>(j));
            Rat c = a.coeffs[i] * b.coeffs[j];
            for (std::size_t t = 0; t < prod.size(); ++t) out.coeffs[t] += c * prod[t];
        }
    }
    return out;
}

inline Rat degree(const CycleClass& a) {
    if (a.p != a.space->dim()) throw codim_error("degree: class is not top-codimension");
    if (a.space->kind() == Space::Kind::Declared) {
        Rat d = 0;
        const auto& top = a.space->decl()->top_degrees;
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) d += a.coeffs[i] * top[i];
        return d;
    }
    return a.coeffs[0];  // unique top monomial h_1^{k_1}...h_r^{k_r}, degree 1
}

inline CycleClass polarization(const SpacePtr& s) {
    if (s->kind() == Space::Kind::Point)
        throw codim_error("polarization: the point has no codimension-1 classes");
    CycleClass c(s, 1);
    if (s->kind() == Space::Kind::Declared) {
        c.coeffs = s->decl()->polarization;
        return c;
    }
    for (auto& x : c.coeffs) x = 1;  // Segre class h_1 + ... + h_r
    return c;
}

inline CycleClass omega_power(const SpacePtr& s, int p) {
    if (p < 0 || p > s->dim()) throw codim_error("omega_power: codimension out of range");
    CycleClass acc(s, 0);
    acc.coeffs[0] = 1;
    for (int i = 0; i < p; ++i) acc = intersect(acc, polarization(s));
    return acc;
}

inline Rat norm_l1(const CycleClass& v) {
    int k = v.space->dim();
    CycleClass omega_rest = omega_power(v.space, k - v.p);
    Rat total = 0;
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
        if (v.coeffs[i] == 0) continue;
        Rat d = degree(intersect(basis_class(v.space, v.p, static_cast<int>(i)), omega_rest));
        total += rabs(v.coeffs[i]) * d;
    }
    return total;
}

// Degree pairing matrix D[i][j] = degree(b_i^{(p)} . b_j^{(k-p)}).
inline Mat pairing_matrix(const SpacePtr& s, int p) {
    int k = s->dim();
    int rp = s->rank(p), rq = s->rank(k - p);
    Mat d(rp, rq);
    for (int i = 0; i < rp; ++i)
        for (int j = 0; j < rq; ++j)
            d(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                degree(intersect(basis_class(s, p, i), basis_class(s, k - p, j)));
    return d;
}

// Validation for declared rings: symmetric table, non-degenerate pairing.
inline void validate_declared_space(const SpacePtr& s) {
    if (s->kind() != Space::Kind::Declared) return;
    const auto& d = *s->decl();
    if (static_cast<int>(d.basis_labels.size()) != d.dim + 1)
        throw declared_error("declared ring: basis labels must cover codim 0..dim");
    for (int p = 0; p + p <= d.dim; ++p)
        for (int q = p; p + q <= d.dim; ++q)
            for (int i = 0; i < s->rank(p); ++i)
                for (int j = 0; j < s->rank(q); ++j) {
                    auto ab = detail::basis_product(s, p, i, q, j);
                    auto ba = detail::basis_product(s, q, j, p, i);
                    if (ab != ba)
                        throw declared_error("declared ring: product table not symmetric");
                }
    for (int p = 0; p <= d.dim; ++p) {
        Mat m = pairing_matrix(s, p);
        if (m.rows() != m.cols() || determinant(m) == 0)
            throw declared_error("declared ring: degenerate degree pairing at codim " +
                                 std::to_string(p));
    }
}

}  // namespace dyndeg
