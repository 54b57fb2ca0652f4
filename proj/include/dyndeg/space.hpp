#pragma once
// Catalog of ambient spaces with explicitly known numerical cycle groups:
// projective spaces, their products, the point, and user-declared rings.

#include "dyndeg/matrix.hpp"
#include "dyndeg/numeric.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace dyndeg {

// User-declared ring: basis labels per codimension, product table, degrees of
// the top-codimension basis classes, and a codimension-1 polarization.
struct DeclaredSpaceData {
    std::string name;
    int dim = 0;
    std::vector<std::vector<std::string>> basis_labels;  // indexed by codim
    // products[{p, i, q, j}] = coefficients in the N^{p+q} basis
    std::map<std::tuple<int, int, int, int>, std::vector<Rat>> products;
    std::vector<Rat> top_degrees;       // degree of each top-codim basis class
    std::vector<Rat> polarization;      // coefficients in the codim-1 basis
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

class Space {
  public:
    enum class Kind { Projective, Product, Point, Declared };

    static SpacePtr projective(int k, std::string name = "") {
        if (k < 0) throw error("projective: negative dimension");
        Space s;
        s.kind_ = k == 0 ? Kind::Point : Kind::Projective;
        if (k > 0) s.factors_ = {k};
        s.name_ = name.empty() ? (k == 0 ? "pt" : "P" + std::to_string(k)) : name;
        return std::make_shared<Space>(std::move(s));
    }
    static SpacePtr point(std::string name = "pt") {
        Space s;
        s.kind_ = Kind::Point;
        s.name_ = std::move(name);
        return std::make_shared<Space>(std::move(s));
    }
    static SpacePtr product(const std::vector<SpacePtr>& parts, std::string name = "") {
        Space s;
        s.kind_ = Kind::Product;
        std::string autoname;
        for (const auto& part : parts) {
            if (!part->is_catalog_product())
                throw error("product: factors must be projective spaces or products thereof");
            for (int k : part->factors_) s.factors_.push_back(k);
            autoname += (autoname.empty() ? "" : "x") + part->name_;
        }
        if (s.factors_.empty()) s.kind_ = Kind::Point;
        if (s.factors_.size() == 1) s.kind_ = Kind::Projective;
        s.name_ = name.empty() ? autoname : name;
        return std::make_shared<Space>(std::move(s));
    }
    static SpacePtr declared(std::shared_ptr<const DeclaredSpaceData> data) {
        Space s;
        s.kind_ = Kind::Declared;
        s.decl_ = std::move(data);
        s.name_ = s.decl_->name;
        return std::make_shared<Space>(std::move(s));
    }

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::vector<int>& factors() const { return factors_; }
    const std::shared_ptr<const DeclaredSpaceData>& decl() const { return decl_; }
    bool is_catalog_product() const {
        return kind_ == Kind::Projective || kind_ == Kind::Product || kind_ == Kind::Point;
    }

    int dim() const {
        if (kind_ == Kind::Declared) return decl_->dim;
        int d = 0;
        for (int k : factors_) d += k;
        return d;
    }

    // Monomial basis of N^p: exponent vectors a with sum p, 0 <= a_i <= k_i,
    // in lexicographic order. Declared spaces use opaque indices.
    std::vector<std::vector<int>> basis(int p) const {
        if (p < 0 || p > dim()) throw codim_error("basis: codimension out of range");
        if (kind_ == Kind::Declared)
            throw error("basis: declared spaces have label-indexed bases");
        std::vector<std::vector<int>> out;
        std::vector<int> cur(factors_.size(), 0);
        enumerate(0, p, cur, out);
        return out;
    }

    int rank(int p) const {
        if (p < 0 || p > dim()) throw codim_error("rank: codimension out of range");
        if (kind_ == Kind::Declared) return static_cast<int>(decl_->basis_labels[p].size());
        if (kind_ == Kind::Point) return 1;
        return static_cast<int>(basis(p).size());
    }

    int basis_index(int p, const std::vector<int>& exps) const {
        auto b = basis(p);
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i] == exps) return static_cast<int>(i);
        throw error("basis_index: exponent vector not in basis");
    }

    std::string basis_label(int p, int i) const {
        if (kind_ == Kind::Declared) return decl_->basis_labels[p][i];
        if (kind_ == Kind::Point) return "1";
        auto exps = basis(p)[i];
        std::string s;
        for (std::size_t f = 0; f < exps.size(); ++f) {
            if (exps[f] == 0) continue;
            if (!s.empty()) s += "*";
            s += factors_.size() == 1 ? "h" : "h" + std::to_string(f + 1);
            if (exps[f] > 1) s += "^" + std::to_string(exps[f]);
        }
        return s.empty() ? "1" : s;
    }

    std::string key() const {
        if (kind_ == Kind::Declared) return "D[" + decl_->name + "]";
        if (kind_ == Kind::Point) return "pt";
        std::string s = "P[";
        for (std::size_t i = 0; i < factors_.size(); ++i)
            s += (i ? "," : "") + std::to_string(factors_[i]);
        return s + "]";
    }

    // Structural equality (declared spaces compare by table identity).
    bool equals(const Space& o) const {
        if (kind_ == Kind::Declared || o.kind_ == Kind::Declared)
            return decl_ == o.decl_;
        return factors_ == o.factors_;
    }

  private:
    void enumerate(std::size_t idx, int rem, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) const {
        if (idx == factors_.size()) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        for (int a = 0; a <= std::min(rem, factors_[idx]); ++a) {
            cur[idx] = a;
            enumerate(idx + 1, rem - a, cur, out);
        }
        cur[idx] = 0;
    }

    Kind kind_ = Kind::Point;
    std::vector<int> factors_;
    std::shared_ptr<const DeclaredSpaceData> decl_;
    std::string name_;
};

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
    return a == b || a->equals(*b);
}

}  // namespace dyndeg
