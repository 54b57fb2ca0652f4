#pragma once
// Correspondences over reducible varieties: weighted atom edges on a graph of
// equal-dimensional components. Iteration composes all composable paths;
// nothing else is composed.

#include "dyndeg/degree_engine.hpp"

#include <string>
#include <vector>

namespace dyndeg {

struct GraphEdge {
    std::size_t src = 0, dst = 0;
    Atom atom;
    Int coeff = 1;
    std::string label;
};

struct PathTerm {
    std::size_t src = 0, dst = 0;
    Atom atom;
    Int coeff = 1;
    std::vector<std::string> labels;  // edge labels in traversal order
};

class ComponentGraph {
  public:
    explicit ComponentGraph(std::vector<SpacePtr> comps) : comps_(std::move(comps)) {
        if (comps_.empty()) throw error("component graph: no components");
        for (const auto& c : comps_)
            if (c->dim() != comps_[0]->dim())
                throw error("component graph: components must have equal dimension");
    }

    const std::vector<SpacePtr>& components() const { return comps_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }

    void add_edge(std::size_t src, std::size_t dst, const Atom& a, const Int& coeff = 1,
                  std::string label = "") {
        if (src >= comps_.size() || dst >= comps_.size())
            throw error("component graph: edge endpoint out of range");
        if (coeff < 1) throw error("component graph: edge coefficient must be >= 1");
        if (!same_space(a.space(), comps_[src]))
            throw space_mismatch("component graph: edge atom on the wrong space");
        if (!same_space(comps_[src], comps_[dst]))
            throw space_mismatch(
                "component graph: cross edges need structurally equal components");
        // merge with an existing parallel edge carrying the same atom
        for (auto& e : edges_)
            if (e.src == src && e.dst == dst && e.atom == a) {
                e.coeff += coeff;
                return;
            }
        edges_.push_back({src, dst, a, coeff, std::move(label)});
    }

    // Every component must be the source of an edge and the target of an edge.
    void check_dominance() const {
        std::vector<bool> out(comps_.size(), false), in(comps_.size(), false);
        for (const auto& e : edges_) {
            out[e.src] = true;
            in[e.dst] = true;
        }
        for (std::size_t i = 0; i < comps_.size(); ++i)
            if (!out[i] || !in[i])
                throw error("component graph: component " + std::to_string(i + 1) +
                            " breaks dominance");
    }

    bool disjoint() const {
        for (const auto& e : edges_)
            if (e.src != e.dst) return false;
        return true;
    }

    Correspondence component_correspondence(std::size_t i) const {
        Correspondence f(comps_[i]);
        for (const auto& e : edges_)
            if (e.src == i && e.dst == i) f.add_term(e.atom, e.coeff);
        return f;
    }

  private:
    std::vector<SpacePtr> comps_;
    std::vector<GraphEdge> edges_;
};

// All composable length-n paths, un-merged, with their label trails. A path
// e_1, ..., e_n (e_1 first) composes to the atom e_n o ... o e_1.
inline std::vector<PathTerm> expand_paths(const ComponentGraph& cg, unsigned n,
                                          const Int& characteristic = 0) {
    if (n == 0) throw error("expand_paths: n must be >= 1");
    std::vector<PathTerm> cur;
    for (const auto& e : cg.edges()) cur.push_back({e.src, e.dst, e.atom, e.coeff, {e.label}});
    for (unsigned step = 1; step < n; ++step) {
        std::vector<PathTerm> next;
        for (const auto& pt : cur)
            for (const auto& e : cg.edges()) {
                if (e.src != pt.dst) continue;
                std::pair<Int, Atom> r;
                try {
                    r = compose_atoms(e.atom, pt.atom, characteristic);
                } catch (const undeclared_composition& ex) {
                    std::string trail;
                    for (const auto& l : pt.labels) trail += l + " ";
                    throw undeclared_composition(std::string(ex.what()) + " [path: " +
                                                 trail + e.label + "]");
                }
                PathTerm q{pt.src, e.dst, r.second, pt.coeff * e.coeff * r.first, pt.labels};
                q.labels.push_back(e.label);
                next.push_back(std::move(q));
                if (next.size() > kTermCap) throw term_blowup("expand_paths: term cap hit");
            }
        cur = std::move(next);
    }
    return cur;
}

inline ComponentGraph iterate_graph(const ComponentGraph& cg, unsigned n,
                                    const Int& characteristic = 0) {
    ComponentGraph out(cg.components());
    for (const auto& pt : expand_paths(cg, n, characteristic))
        out.add_edge(pt.src, pt.dst, pt.atom, pt.coeff);
    return out;
}

// One more application of f to an already merged iterate (f acts second).
inline ComponentGraph compose_graphs(const ComponentGraph& f, const ComponentGraph& acc,
                                     const Int& characteristic = 0) {
    ComponentGraph out(f.components());
    for (const auto& pe : acc.edges())
        for (const auto& e : f.edges()) {
            if (e.src != pe.dst) continue;
            auto [c, r] = compose_atoms(e.atom, pe.atom, characteristic);
            out.add_edge(pe.src, e.dst, r, pe.coeff * e.coeff * c);
        }
    return out;
}

// Conservation check: the number of length-n composable paths must equal the
// total of the n-th power of the edge-count adjacency matrix.
inline bool path_count_conserved(const ComponentGraph& cg, unsigned n,
                                 const Int& characteristic = 0) {
    std::size_t m = cg.components().size();
    Mat a(m, m);
    for (const auto& e : cg.edges()) a(e.src, e.dst) += 1;
    Mat an = a;
    for (unsigned i = 1; i < n; ++i) an = an * a;
    Rat total = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) total += an(i, j);
    return total == Rat(static_cast<long>(expand_paths(cg, n, characteristic).size()));
}

inline Rat graph_deg_p(const ComponentGraph& cg, int p) {
    Rat total = 0;
    for (const auto& e : cg.edges()) total += Rat(e.coeff) * e.atom.deg_p(p);
    return total;
}

namespace detail {

inline bool edges_matrix_sound(const ComponentGraph& cg) {
    std::vector<std::string> seen;
    bool first = true;
    for (const auto& e : cg.edges()) {
        std::vector<std::string> tok;
        e.atom.direction_tokens(tok);
        if (first) {
            seen = tok;
            first = false;
            continue;
        }
        if (tok.size() != seen.size()) return false;
        for (std::size_t i = 0; i < tok.size(); ++i) {
            if (tok[i] == "0") continue;
            if (seen[i] == "0")
                seen[i] = tok[i];
            else if (seen[i] != tok[i])
                return false;
        }
    }
    return true;
}

}  // namespace detail

inline DegreeReport graph_dyn_degree(const ComponentGraph& cg, int p, unsigned n_max = 12,
                                     const Int& characteristic = 0) {
    cg.check_dominance();
    DegreeReport rep;
    rep.p = p;
    {
        ComponentGraph acc = cg;
        for (unsigned n = 1; n <= n_max; ++n) {
            rep.sequence.push_back(graph_deg_p(acc, p));
            auto [lo, hi] = rat_nth_root_bounds(rep.sequence.back(), n);
            rep.roots.push_back(decimal_str(lo));
            if (n == n_max) rep.fekete_upper = hi;
            if (n < n_max) acc = compose_graphs(cg, acc, characteristic);
        }
    }
    for (const auto& e : cg.edges()) e.atom.stability_assertions(rep.stability);

    if (cg.disjoint()) {
        std::optional<ExactValue> best;
        Rat lo = 0, hi = 0;
        bool all_exact = true;
        for (std::size_t i = 0; i < cg.components().size(); ++i) {
            auto sub = dyn_degree(cg.component_correspondence(i), p, n_max, characteristic);
            if (sub.exact) {
                best = best ? ev_max(*best, *sub.exact) : *sub.exact;
            } else {
                all_exact = false;
            }
            if (sub.bounds) {
                lo = std::max(lo, sub.bounds->first);
                hi = std::max(hi, sub.bounds->second);
            }
        }
        if (all_exact && best) {
            rep.exact = best;
            rep.bounds = best->enclosure();
            rep.method = "disjoint component maximum";
            return rep;
        }
        rep.bounds = std::make_pair(lo, hi);
        rep.method = "disjoint component bounds";
        return rep;
    }

    if (detail::edges_matrix_sound(cg)) {
        // Block matrix over the direct sum of the N^p of the components:
        // block (i, j) collects coeff * M_p(atom) for edges i -> j, so matrix
        // powers enumerate composable paths in traversal order.
        std::size_t m = cg.components().size();
        int r = cg.components()[0]->rank(p);
        Mat big(m * r, m * r);
        for (const auto& e : cg.edges()) {
            Mat blk = e.atom.pullback_matrix(p).scaled(Rat(e.coeff));
            for (int x = 0; x < r; ++x)
                for (int y = 0; y < r; ++y)
                    big(e.src * r + static_cast<std::size_t>(x),
                        e.dst * r + static_cast<std::size_t>(y)) +=
                        blk(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
        }
        std::vector<Rat> lvec(m * r), v(m * r);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Rat> li, vi;
            detail::degree_functional(cg.components()[i], p, li, vi);
            for (int x = 0; x < r; ++x) {
                lvec[i * r + static_cast<std::size_t>(x)] = li[static_cast<std::size_t>(x)];
                v[i * r + static_cast<std::size_t>(x)] = vi[static_cast<std::size_t>(x)];
            }
        }
        std::vector<Rat> s;
        std::vector<Rat> w = lvec;
        unsigned need = 2 * static_cast<unsigned>(m) * static_cast<unsigned>(r) + 4;
        for (unsigned n = 0; n < need; ++n) {
            Rat t = 0;
            for (std::size_t i = 0; i < w.size(); ++i) t += w[i] * v[i];
            s.push_back(t);
            w = big.transpose().apply(w);
        }
        Poly chi = berlekamp_massey(s);
        if (recurrence_holds(chi, s)) {
            if (auto ev = max_root_modulus(chi)) {
                rep.exact = ev;
                rep.bounds = ev->enclosure();
                rep.method = "block matrix recurrence";
                return rep;
            }
        }
        if (big.nonnegative()) {
            rep.bounds = spectral_radius_bounds(big);
            rep.method = "block matrix bounds";
            return rep;
        }
    }
    rep.bounds = std::make_pair(Rat(1), rep.fekete_upper);
    rep.method = "graph fekete upper bound";
    return rep;
}

// Candidate common semi-conjugacy with a fixed (non-compounding) multiplier:
// every component projects identically onto Y and the claim pi o F^n equals
// a * (g^n o pi) is tested term-by-term for each source component.
struct NaiveSemiReport {
    bool holds = true;
    unsigned first_failure = 0;  // 0 when no failure
    std::vector<std::string> lines;
};

inline NaiveSemiReport check_no_naive_semiconjugacy(const ComponentGraph& cg,
                                                    const Correspondence& g, const Int& a,
                                                    unsigned n_max,
                                                    const Int& characteristic = 0) {
    NaiveSemiReport rep;
    for (const auto& c : cg.components())
        if (!same_space(c, g.space()))
            throw space_mismatch("naive semiconjugacy: components must match the base");
    Correspondence gn = g;
    for (unsigned n = 1; n <= n_max; ++n) {
        ComponentGraph fn = n == 1 ? cg : iterate_graph(cg, n, characteristic);
        Correspondence rhs = gn.scaled(a);
        bool ok = true;
        for (std::size_t i = 0; i < cg.components().size(); ++i) {
            Correspondence lhs(cg.components()[i]);
            for (const auto& e : fn.edges())
                if (e.src == i) lhs.add_term(e.atom, e.coeff);
            if (!(lhs == rhs)) {
                ok = false;
                rep.lines.push_back("n=" + std::to_string(n) + " component " +
                                    std::to_string(i + 1) + ": pi o F^n = " + lhs.str() +
                                    " but a*g^n = " + rhs.str());
            }
        }
        if (!ok && rep.holds) {
            rep.holds = false;
            rep.first_failure = n;
        }
        if (ok)
            rep.lines.push_back("n=" + std::to_string(n) + ": identity holds with a = " +
                                a.str());
        if (n < n_max) gn = compose(gn, g, characteristic);
    }
    return rep;
}

}  // namespace dyndeg
