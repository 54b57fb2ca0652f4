#pragma once
// Small dense exact matrices over the rationals: products, characteristic
// polynomials (Faddeev-LeVerrier), linear solves, and certified
// Collatz-Wielandt spectral-radius bounds for nonnegative matrices.

#include "dyndeg/poly.hpp"

#include <vector>

namespace dyndeg {

class Mat {
  public:
    Mat() : r_(0), c_(0) {}
    Mat(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, Rat(0)) {}
    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw error("Mat: dimension mismatch in product");
        Mat m(r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const Rat& x = (*this)(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
            }
        return m;
    }
    Mat operator+(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw error("Mat: dimension mismatch in sum");
        Mat m = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
        return m;
    }
    Mat scaled(const Rat& s) const {
        Mat m = *this;
        for (auto& x : m.a_) x *= s;
        return m;
    }
    Mat transpose() const {
        Mat m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        if (v.size() != c_) throw error("Mat: dimension mismatch in apply");
        std::vector<Rat> w(r_, Rat(0));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if ((*this)(i, j) != 0) w[i] += (*this)(i, j) * v[j];
        return w;
    }
    Rat trace() const {
        Rat t = 0;
        for (std::size_t i = 0; i < r_ && i < c_; ++i) t += (*this)(i, i);
        return t;
    }
    bool nonnegative() const {
        for (const auto& x : a_)
            if (x < 0) return false;
        return true;
    }

  private:
    std::size_t r_, c_;
    std::vector<Rat> a_;
};

// Characteristic polynomial det(xI - A), monic, via Faddeev-LeVerrier.
inline Poly charpoly(const Mat& a) {
    if (a.rows() != a.cols()) throw error("charpoly: square matrix required");
    std::size_t n = a.rows();
    Poly chi(n + 1, Rat(0));
    chi[n] = 1;
    Mat m = Mat::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        Rat c = -m.trace() / Rat(static_cast<long>(k));
        chi[n - k] = c;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c;
    }
    return chi;
}

// Solves A x = b exactly (A square nonsingular).
inline std::vector<Rat> solve(Mat a, std::vector<Rat> b) {
    std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw error("solve: shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) throw error("solve: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            std::swap(b[piv], b[col]);
        }
        Rat d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) a(col, j) /= d;
        b[col] /= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rat f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(col, j);
            b[i] -= f * b[col];
        }
    }
    return b;
}

inline Rat determinant(Mat a) {
    std::size_t n = a.rows();
    if (a.cols() != n) throw error("determinant: square matrix required");
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col) == 0) continue;
            Rat f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

// Certified rational enclosure of the spectral radius of a nonnegative matrix,
// via Collatz-Wielandt on A + I (keeps the test vector strictly positive).
inline std::pair<Rat, Rat> spectral_radius_bounds(const Mat& a, unsigned iters = 40) {
    if (!a.nonnegative()) throw error("spectral_radius_bounds: nonnegative required");
    std::size_t n = a.rows();
    std::vector<Rat> v(n, Rat(1));
    Rat lo = 0, hi = 0;
    for (unsigned t = 0; t < iters; ++t) {
        std::vector<Rat> w = a.apply(v);
        for (std::size_t i = 0; i < n; ++i) w[i] += v[i];  // (A + I) v
        Rat mn, mx;
        bool first = true;
        for (std::size_t i = 0; i < n; ++i) {
            Rat ratio = w[i] / v[i];
            if (first) { mn = mx = ratio; first = false; }
            else { mn = std::min(mn, ratio); mx = std::max(mx, ratio); }
        }
        lo = mn - 1;
        hi = mx - 1;
        if (lo == hi) break;
        // Renormalize so entries stay modest.
        Rat top = 0;
        for (const auto& x : w) top = std::max(top, x);
        for (auto& x : w) x /= top;
        v = w;
    }
    if (lo < 0) lo = 0;
    return {lo, hi};
}

}  // namespace dyndeg
