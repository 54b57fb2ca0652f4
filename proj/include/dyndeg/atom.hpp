#pragma once
// Irreducible correspondence generators: power maps, reverse power maps, the
// diagonal, sums of linear automorphisms, products, and declared-stable atoms
// with user-supplied pullback matrices.

#include "dyndeg/cycle.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace dyndeg {

struct DeclaredAtomData {
    std::string name;
    SpacePtr space;
    std::vector<Mat> matrices;  // pullback matrix per codimension 0..dim
    std::shared_ptr<const DeclaredAtomData> reverse;  // may be null
    // (left name, right name) -> (coefficient, result name; "" means Diagonal)
    std::map<std::pair<std::string, std::string>, std::pair<Int, std::string>> table;
    std::shared_ptr<std::map<std::string, std::shared_ptr<const DeclaredAtomData>>> family;
};

class Atom;
using AtomPtr = std::shared_ptr<const Atom>;

class Atom {
  public:
    enum class Kind { Power, RevPower, Diagonal, AutSum, Product, Declared };

    static Atom power(const SpacePtr& s, const Int& d) {
        require_single_factor(s, "power");
        if (d < 1) throw error("power: degree must be >= 1");
        if (d == 1) return diagonal(s);
        Atom a;
        a.kind_ = Kind::Power;
        a.space_ = s;
        a.d_ = d;
        return a;
    }
    static Atom revpower(const SpacePtr& s, const Int& d) {
        require_single_factor(s, "revpower");
        if (d < 1) throw error("revpower: degree must be >= 1");
        if (d == 1) return diagonal(s);
        Atom a;
        a.kind_ = Kind::RevPower;
        a.space_ = s;
        a.d_ = d;
        return a;
    }
    static Atom diagonal(const SpacePtr& s) {
        Atom a;
        a.kind_ = Kind::Diagonal;
        a.space_ = s;
        return a;
    }
    static Atom autsum(const SpacePtr& s, const Int& c) {
        if (c < 1) throw error("autsum: count must be >= 1");
        if (c == 1) return diagonal(s);
        Atom a;
        a.kind_ = Kind::AutSum;
        a.space_ = s;
        a.d_ = c;
        return a;
    }
    static Atom declared(std::shared_ptr<const DeclaredAtomData> data, std::uint64_t exp = 1) {
        if (!data) throw error("declared: null data");
        if (exp == 0) return diagonal(data->space);
        Atom a;
        a.kind_ = Kind::Declared;
        a.space_ = data->space;
        a.decl_ = std::move(data);
        a.exp_ = exp;
        return a;
    }

    // Product of two atoms living on catalog spaces; flattened to one leaf per
    // projective factor. AutSum leaves are converted to scalar * Diagonal (the
    // degree-equivalence the rule table allows), so the returned coefficient
    // may exceed 1. All-diagonal products collapse to the diagonal.
    static std::pair<Int, Atom> product(const Atom& l, const Atom& r) {
        std::vector<Atom> parts;
        Int coeff = 1;
        flatten_into(l, parts, coeff);
        flatten_into(r, parts, coeff);
        SpacePtr s = Space::product({l.space_, r.space_});
        return {coeff, from_parts(s, std::move(parts))};
    }

    Kind kind() const { return kind_; }
    const SpacePtr& space() const { return space_; }
    const Int& param() const { return d_; }
    std::uint64_t exponent() const { return exp_; }
    const std::shared_ptr<const DeclaredAtomData>& decl() const { return decl_; }
    const std::vector<Atom>& parts() const { return parts_; }

    int dim() const { return space_->dim(); }

    // --- numerical action -------------------------------------------------

    // Scalar pullback action on the rank-1 group N^q of a single-factor space.
    Rat scalar_action(int q) const {
        int k = dim();
        switch (kind_) {
            case Kind::Power: return Rat(ipow(d_, q));
            case Kind::RevPower: return Rat(ipow(d_, k - q));
            case Kind::Diagonal: return 1;
            case Kind::AutSum: return Rat(d_);
            case Kind::Declared: {
                if (space_->rank(q) != 1)
                    throw error("scalar_action: group is not rank 1");
                Rat base = decl_->matrices[q](0, 0);
                return rpow(base, static_cast<std::int64_t>(exp_));
            }
            default: throw error("scalar_action: not a single-factor atom");
        }
    }

    CycleClass pullback(const CycleClass& alpha) const {
        if (!same_space(alpha.space, space_))
            throw space_mismatch("pullback: class on a different space");
        int p = alpha.p;
        switch (kind_) {
            case Kind::Diagonal: return alpha;
            case Kind::AutSum: return alpha.scaled(Rat(d_));
            case Kind::Power:
            case Kind::RevPower: return alpha.scaled(scalar_action(p));
            case Kind::Declared: {
                CycleClass out = alpha;
                out.space = space_;
                for (std::uint64_t i = 0; i < exp_; ++i)
                    out.coeffs = decl_->matrices[p].apply(out.coeffs);
                return out;
            }
            case Kind::Product: {
                CycleClass out(space_, p);
                auto b = space_->basis(p);
                for (std::size_t i = 0; i < b.size(); ++i) {
                    if (alpha.coeffs[i] == 0) continue;
                    Rat s = 1;
                    for (std::size_t f = 0; f < parts_.size(); ++f)
                        s *= parts_[f].scalar_action(b[i][f]);
                    out.coeffs[i] = alpha.coeffs[i] * s;
                }
                return out;
            }
        }
        throw error("pullback: unreachable");
    }

    Mat pullback_matrix(int p) const {
        if (p < 0 || p > dim()) throw codim_error("pullback_matrix: p out of range");
        int r = space_->rank(p);
        Mat m(r, r);
        for (int j = 0; j < r; ++j) {
            auto col = pullback(basis_class(space_, p, j));
            for (int i = 0; i < r; ++i)
                m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = col.coeffs[i];
        }
        return m;
    }

    // Number of image points counted with multiplicity (the M_0 scalar).
    Int sheet_count() const {
        Rat s;
        if (kind_ == Kind::Product) {
            s = 1;
            for (const auto& part : parts_) s *= part.scalar_action(0);
        } else if (kind_ == Kind::Declared) {
            s = rpow(decl_->matrices[0](0, 0), static_cast<std::int64_t>(exp_));
        } else {
            s = scalar_action(0);
        }
        if (denominator(s) != 1) throw error("sheet_count: not an integer");
        return numerator(s);
    }

    Rat deg_p(int p) const {
        int k = dim();
        auto pulled = pullback(omega_power(space_, p));
        return degree(intersect(pulled, omega_power(space_, k - p)));
    }

    Atom reversed() const {
        switch (kind_) {
            case Kind::Power: return revpower(space_, d_);
            case Kind::RevPower: return power(space_, d_);
            case Kind::Diagonal: return *this;
            case Kind::AutSum: return *this;
            case Kind::Declared:
                if (!decl_->reverse)
                    throw error("reverse: declared atom '" + decl_->name +
                                "' has no reverse partner");
                return declared(decl_->reverse, exp_);
            case Kind::Product: {
                Atom a;
                a.kind_ = Kind::Product;
                a.space_ = space_;
                for (const auto& part : parts_) a.parts_.push_back(part.reversed());
                return a.renormalized();
            }
        }
        throw error("reverse: unreachable");
    }

    // --- identity, ordering, display ---------------------------------------

    int cmp(const Atom& o) const {
        if (kind_ != o.kind_) return kind_ < o.kind_ ? -1 : 1;
        if (space_->key() != o.space_->key()) return space_->key() < o.space_->key() ? -1 : 1;
        switch (kind_) {
            case Kind::Diagonal: return 0;
            case Kind::Power:
            case Kind::RevPower:
            case Kind::AutSum: return d_ < o.d_ ? -1 : d_ > o.d_ ? 1 : 0;
            case Kind::Declared: {
                if (decl_->name != o.decl_->name)
                    return decl_->name < o.decl_->name ? -1 : 1;
                return exp_ < o.exp_ ? -1 : exp_ > o.exp_ ? 1 : 0;
            }
            case Kind::Product: {
                for (std::size_t i = 0; i < parts_.size(); ++i) {
                    int c = parts_[i].cmp(o.parts_[i]);
                    if (c != 0) return c;
                }
                return 0;
            }
        }
        return 0;
    }
    bool operator==(const Atom& o) const { return cmp(o) == 0; }

    std::string str() const {
        switch (kind_) {
            case Kind::Power: return "pow(" + d_.str() + ")";
            case Kind::RevPower: return "rev(pow(" + d_.str() + "))";
            case Kind::Diagonal: return "diag";
            case Kind::AutSum: return "autsum(" + d_.str() + ")";
            case Kind::Declared:
                return exp_ == 1 ? decl_->name
                                 : decl_->name + "^" + std::to_string(exp_);
            case Kind::Product: {
                std::string s;
                for (const auto& part : parts_) s += (s.empty() ? "" : " x ") + part.str();
                return "(" + s + ")";
            }
        }
        return "?";
    }

    // Per-factor-position direction token; compositions among atoms whose
    // tokens agree position-wise (or are neutral "0") are matrix-sound for
    // arbitrary words, making matrix-power degree extraction exact.
    void direction_tokens(std::vector<std::string>& out) const {
        switch (kind_) {
            case Kind::Power: out.push_back("+"); return;
            case Kind::RevPower: out.push_back("-"); return;
            case Kind::Diagonal:
            case Kind::AutSum:
                for (std::size_t i = 0; i < position_count(); ++i) out.push_back("0");
                return;
            case Kind::Declared: out.push_back("D:" + decl_->name); return;
            case Kind::Product:
                for (const auto& part : parts_) part.direction_tokens(out);
                return;
        }
    }
    std::size_t position_count() const {
        if (space_->kind() == Space::Kind::Declared) return 1;
        return std::max<std::size_t>(space_->factors().size(), 1);
    }

    void stability_assertions(std::vector<std::string>& out) const {
        if (kind_ == Kind::Declared)
            out.push_back("1-stability assumed for declared atom '" + decl_->name + "'");
        if (kind_ == Kind::Product)
            for (const auto& part : parts_) part.stability_assertions(out);
    }

    static Atom from_parts(SpacePtr s, std::vector<Atom> parts) {
        bool all_diag = true;
        for (const auto& part : parts)
            if (part.kind_ != Kind::Diagonal) all_diag = false;
        if (all_diag) return diagonal(s);
        if (parts.size() == 1) return parts[0];
        Atom a;
        a.kind_ = Kind::Product;
        a.space_ = std::move(s);
        a.parts_ = std::move(parts);
        return a;
    }

  private:
    static void require_single_factor(const SpacePtr& s, const char* who) {
        if (s->kind() != Space::Kind::Projective)
            throw error(std::string(who) + ": needs a single projective factor");
    }

    static void flatten_into(const Atom& a, std::vector<Atom>& parts, Int& coeff) {
        switch (a.kind_) {
            case Kind::Product:
                for (const auto& part : a.parts_) flatten_into(part, parts, coeff);
                return;
            case Kind::AutSum:
                coeff *= a.d_;
                [[fallthrough]];
            case Kind::Diagonal: {
                if (a.space_->kind() == Space::Kind::Declared) {
                    parts.push_back(diagonal(a.space_));
                    return;
                }
                for (int k : a.space_->factors())
                    parts.push_back(diagonal(Space::projective(k)));
                if (a.space_->factors().empty())
                    throw error("product: point factors are not supported");
                return;
            }
            default:
                parts.push_back(a);
                return;
        }
    }

    Atom renormalized() const {
        if (kind_ != Kind::Product) return *this;
        return from_parts(space_, parts_);
    }

    Kind kind_ = Kind::Diagonal;
    SpacePtr space_;
    Int d_ = 0;
    std::vector<Atom> parts_;
    std::shared_ptr<const DeclaredAtomData> decl_;
    std::uint64_t exp_ = 1;
};

struct AtomLess {
    bool operator()(const Atom& a, const Atom& b) const { return a.cmp(b) < 0; }
};

}  // namespace dyndeg
