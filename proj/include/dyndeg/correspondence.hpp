#pragma once
// Formal correspondences: nonnegative integer combinations of atoms on a fixed
// space, with bilinear composition through the rewrite calculus and iteration
// either by stepwise folding or by a certified multinomial expansion.

#include "dyndeg/rewrite.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dyndeg {

inline constexpr std::size_t kTermCap = 1000000;

// Strict commutation certificate: only pairs whose compositions are equal as
// rewritten atoms (with equal coefficients) in both orders. Power against
// reverse power is excluded even when both orders rewrite, because the two
// normal forms differ.
inline bool atoms_commute(const Atom& a, const Atom& b) {
    using K = Atom::Kind;
    if (a == b) return true;
    if (a.kind() == K::Diagonal || b.kind() == K::Diagonal) return true;
    if (a.kind() == K::AutSum || b.kind() == K::AutSum) return true;
    if (a.kind() == K::Power && b.kind() == K::Power) return true;
    if (a.kind() == K::RevPower && b.kind() == K::RevPower) return true;
    if (a.kind() == K::Declared && b.kind() == K::Declared) {
        if (a.decl() == b.decl()) return true;
        if (a.decl()->reverse == b.decl()) return true;
    }
    if (a.kind() == K::Product && b.kind() == K::Product) {
        for (std::size_t i = 0; i < a.parts().size(); ++i)
            if (!atoms_commute(a.parts()[i], b.parts()[i])) return false;
        return true;
    }
    return false;
}

class Correspondence {
  public:
    enum class IterateStrategy { Auto, Stepwise, Multinomial };

    explicit Correspondence(SpacePtr s) : space_(std::move(s)) {}
    Correspondence(const Atom& a, const Int& coeff = 1) : space_(a.space()) {
        add_term(a, coeff);
    }

    const SpacePtr& space() const { return space_; }
    const std::map<Atom, Int, AtomLess>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    void add_term(const Atom& a, const Int& coeff) {
        if (coeff < 0) throw error("correspondence: negative coefficient");
        if (coeff == 0) return;
        if (!same_space(a.space(), space_))
            throw space_mismatch("correspondence: atom on a different space");
        auto it = terms_.find(a);
        if (it == terms_.end()) {
            if (terms_.size() >= kTermCap) throw term_blowup("correspondence: term cap hit");
            terms_.emplace(a, coeff);
        } else {
            it->second += coeff;
        }
    }

    Correspondence& operator+=(const Correspondence& o) {
        if (!same_space(space_, o.space_))
            throw space_mismatch("correspondence: sum on different spaces");
        for (const auto& [a, c] : o.terms_) add_term(a, c);
        return *this;
    }
    Correspondence scaled(const Int& s) const {
        Correspondence r(space_);
        for (const auto& [a, c] : terms_) r.add_term(a, c * s);
        return r;
    }

    Correspondence reversed() const {
        Correspondence r(space_);
        for (const auto& [a, c] : terms_) r.add_term(a.reversed(), c);
        return r;
    }

    // --- numerical action ---------------------------------------------------

    CycleClass pullback(const CycleClass& alpha) const {
        CycleClass out(space_, alpha.p);
        for (const auto& [a, c] : terms_) out += a.pullback(alpha).scaled(Rat(c));
        return out;
    }

    Mat pullback_matrix(int p) const {
        int r = space_->rank(p);
        Mat m(r, r);
        for (const auto& [a, c] : terms_) m = m + a.pullback_matrix(p).scaled(Rat(c));
        return m;
    }

    // Pushforward on N^{k-p}, adjoint to pullback under the degree pairing.
    Mat pushforward_matrix(int p) const {
        Mat d = pairing_matrix(space_, p);
        Mat rhs = pullback_matrix(p).transpose() * d;
        Mat out(d.cols(), rhs.cols());
        for (std::size_t j = 0; j < rhs.cols(); ++j) {
            std::vector<Rat> col(rhs.rows());
            for (std::size_t i = 0; i < rhs.rows(); ++i) col[i] = rhs(i, j);
            auto x = solve(d, col);
            for (std::size_t i = 0; i < x.size(); ++i) out(i, j) = x[i];
        }
        return out;
    }

    Rat deg_p(int p) const {
        Rat total = 0;
        for (const auto& [a, c] : terms_) total += Rat(c) * a.deg_p(p);
        return total;
    }

    // True when matrix powers of the pullback matrices compute iterate degrees
    // exactly: all atoms must act in a single direction per factor position.
    bool matrix_sound() const {
        std::vector<std::string> seen;
        bool first = true;
        for (const auto& [a, c] : terms_) {
            std::vector<std::string> tok;
            a.direction_tokens(tok);
            if (first) {
                seen = tok;
                first = false;
                continue;
            }
            if (tok.size() != seen.size()) return false;
            for (std::size_t i = 0; i < tok.size(); ++i) {
                if (tok[i] == "0") continue;
                if (seen[i] == "0") {
                    seen[i] = tok[i];
                } else if (seen[i] != tok[i]) {
                    return false;
                }
            }
        }
        return true;
    }

    bool commuting_family() const {
        for (auto i = terms_.begin(); i != terms_.end(); ++i)
            for (auto j = std::next(i); j != terms_.end(); ++j)
                if (!atoms_commute(i->first, j->first)) return false;
        return true;
    }

    void stability_assertions(std::vector<std::string>& out) const {
        for (const auto& [a, c] : terms_) a.stability_assertions(out);
    }

    bool operator==(const Correspondence& o) const {
        if (!same_space(space_, o.space_) || terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [a, c] : terms_) {
            if (!(a == it->first) || c != it->second) return false;
            ++it;
        }
        return true;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [a, c] : terms_) {
            if (!s.empty()) s += " + ";
            if (c != 1) s += c.str() + "*";
            s += a.str();
        }
        return s;
    }

  private:
    SpacePtr space_;
    std::map<Atom, Int, AtomLess> terms_;
};

inline Correspondence compose(const Correspondence& f, const Correspondence& g,
                              const Int& characteristic = 0) {
    if (!same_space(f.space(), g.space()))
        throw space_mismatch("compose: correspondences on different spaces");
    Correspondence out(f.space());
    for (const auto& [a1, c1] : f.terms())
        for (const auto& [a2, c2] : g.terms()) {
            auto [c, r] = compose_atoms(a1, a2, characteristic);
            out.add_term(r, c1 * c2 * c);
        }
    return out;
}

namespace detail {

inline void multinomial_iterate(const Correspondence& f, unsigned n, const Int& ch,
                                Correspondence& out) {
    std::vector<Atom> atoms;
    std::vector<Int> coeffs;
    for (const auto& [a, c] : f.terms()) {
        atoms.push_back(a);
        coeffs.push_back(c);
    }
    std::vector<unsigned> exps(atoms.size(), 0);
    // enumerate exponent vectors summing to n
    auto emit = [&]() {
        Int coeff = multinomial(exps);
        bool have = false;
        Int scalar = 1;
        Atom acc = Atom::diagonal(f.space());
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (exps[i] == 0) continue;
            coeff *= ipow(coeffs[i], exps[i]);
            for (unsigned t = 0; t < exps[i]; ++t) {
                if (!have) {
                    acc = atoms[i];
                    have = true;
                } else {
                    auto [c, r] = compose_atoms(acc, atoms[i], ch);
                    scalar *= c;
                    acc = r;
                }
            }
        }
        out.add_term(acc, coeff * scalar);
    };
    auto rec = [&](auto&& self, std::size_t idx, unsigned rem) -> void {
        if (idx + 1 == exps.size()) {
            exps[idx] = rem;
            emit();
            exps[idx] = 0;
            return;
        }
        for (unsigned e = 0; e <= rem; ++e) {
            exps[idx] = e;
            self(self, idx + 1, rem - e);
        }
        exps[idx] = 0;
    };
    rec(rec, 0, n);
}

}  // namespace detail

inline Correspondence iterate(
    const Correspondence& f, unsigned n, const Int& characteristic = 0,
    Correspondence::IterateStrategy strategy = Correspondence::IterateStrategy::Auto) {
    using S = Correspondence::IterateStrategy;
    if (f.empty()) throw error("iterate: empty correspondence");
    if (n == 0) return Correspondence(Atom::diagonal(f.space()));
    if (n == 1) return f;
    bool use_multinomial = strategy == S::Multinomial ||
                           (strategy == S::Auto && f.commuting_family());
    if (strategy == S::Multinomial && !f.commuting_family())
        throw commutation_error("iterate: no commutation certificate for this family");
    if (use_multinomial) {
        Correspondence out(f.space());
        detail::multinomial_iterate(f, n, characteristic, out);
        return out;
    }
    Correspondence acc = f;
    for (unsigned i = 1; i < n; ++i) acc = compose(acc, f, characteristic);
    return acc;
}

}  // namespace dyndeg
