#pragma once
// Closed composition calculus on atoms: a1 o a2 (a2 acts first) rewrites to a
// scalar multiple of a single atom whenever a rule applies, and refuses with
// undeclared_composition otherwise. Pullback is contravariant, so soundness of
// a rule (c, r) means c * M_p(r) == M_p(a2) * M_p(a1) for every p.

#include "dyndeg/atom.hpp"

namespace dyndeg {

using ScaledAtom = std::pair<Int, Atom>;

namespace detail {

// Power/reverse mixtures rewrite only over a common primitive base, and only
// when the base degree is invertible in the ground field: the rules trade a
// power map against its reverse through fiber counts, which collapse in
// characteristic p | d.
inline void check_characteristic(const Int& base, const Int& characteristic) {
    if (characteristic != 0 && base % characteristic == 0)
        throw undeclared_composition(
            "composition of power and reverse power with base divisible by the "
            "characteristic has no declared rewrite");
}

// pow(d^a) o rev(d^b) on P^k.
inline ScaledAtom pow_after_rev(const SpacePtr& s, const Int& base, unsigned a, unsigned b,
                                const Int& characteristic) {
    check_characteristic(base, characteristic);
    int k = s->dim();
    if (a >= b)
        return {ipow(base, static_cast<std::uint64_t>(k) * b),
                Atom::power(s, ipow(base, a - b))};
    return {ipow(base, static_cast<std::uint64_t>(k) * a),
            Atom::revpower(s, ipow(base, b - a))};
}

// rev(d^b) o pow(d^a) on P^k.
inline ScaledAtom rev_after_pow(const SpacePtr& s, const Int& base, unsigned b, unsigned a,
                                const Int& characteristic) {
    check_characteristic(base, characteristic);
    int k = s->dim();
    if (a == b)
        return {1, Atom::autsum(s, ipow(base, static_cast<std::uint64_t>(k) * a))};
    if (a > b)
        return {ipow(base, static_cast<std::uint64_t>(k) * b),
                Atom::power(s, ipow(base, a - b))};
    return {ipow(base, static_cast<std::uint64_t>(k) * a),
            Atom::revpower(s, ipow(base, b - a))};
}

inline ScaledAtom compose_declared(const Atom& a1, const Atom& a2) {
    const auto& d1 = a1.decl();
    const auto& d2 = a2.decl();
    if (d1 == d2) {
        return {1, Atom::declared(d1, a1.exponent() + a2.exponent())};
    }
    auto key = std::make_pair(d1->name, d2->name);
    const std::pair<Int, std::string>* rule = nullptr;
    if (auto it = d1->table.find(key); it != d1->table.end()) rule = &it->second;
    else if (auto jt = d2->table.find(key); jt != d2->table.end()) rule = &jt->second;
    if (!rule)
        throw undeclared_composition("no declared rewrite for '" + d1->name + "' o '" +
                                     d2->name + "'");
    const Int& c = rule->first;
    const std::string& result = rule->second;
    if (result.empty()) {
        // Mutually inverse pair: powers cancel one-for-one, each cancellation
        // contributing the declared coefficient.
        std::uint64_t m = std::min(a1.exponent(), a2.exponent());
        Int coeff = ipow(c, m);
        if (a1.exponent() == a2.exponent()) return {coeff, Atom::diagonal(a1.space())};
        if (a1.exponent() > a2.exponent())
            return {coeff, Atom::declared(d1, a1.exponent() - m)};
        return {coeff, Atom::declared(d2, a2.exponent() - m)};
    }
    if (a1.exponent() != 1 || a2.exponent() != 1)
        throw undeclared_composition("declared rewrite for '" + d1->name + "' o '" +
                                     d2->name + "' only covers single factors");
    auto fam = d1->family ? d1->family : d2->family;
    if (!fam || !fam->count(result))
        throw declared_error("declared rewrite names unknown atom '" + result + "'");
    return {c, Atom::declared(fam->at(result))};
}

}  // namespace detail

inline ScaledAtom compose_atoms(const Atom& a1, const Atom& a2,
                                const Int& characteristic = 0) {
    using K = Atom::Kind;
    if (!same_space(a1.space(), a2.space()))
        throw space_mismatch("compose: atoms on different spaces");

    if (a1.kind() == K::Diagonal) return {1, a2};
    if (a2.kind() == K::Diagonal) return {1, a1};
    if (a1.kind() == K::AutSum && a2.kind() == K::AutSum)
        return {1, Atom::autsum(a1.space(), a1.param() * a2.param())};
    if (a1.kind() == K::AutSum) return {a1.param(), a2};
    if (a2.kind() == K::AutSum) return {a2.param(), a1};

    if (a1.kind() == K::Power && a2.kind() == K::Power)
        return {1, Atom::power(a1.space(), a1.param() * a2.param())};
    if (a1.kind() == K::RevPower && a2.kind() == K::RevPower)
        return {1, Atom::revpower(a1.space(), a1.param() * a2.param())};

    if ((a1.kind() == K::Power && a2.kind() == K::RevPower) ||
        (a1.kind() == K::RevPower && a2.kind() == K::Power)) {
        auto b1 = primitive_base(a1.param());
        auto b2 = primitive_base(a2.param());
        if (b1.base != b2.base)
            throw undeclared_composition(
                "power/reverse composition with multiplicatively independent degrees " +
                a1.param().str() + " and " + a2.param().str() + " has no rewrite");
        if (a1.kind() == K::Power)
            return detail::pow_after_rev(a1.space(), b1.base, b1.exp, b2.exp, characteristic);
        return detail::rev_after_pow(a1.space(), b1.base, b1.exp, b2.exp, characteristic);
    }

    if (a1.kind() == K::Product && a2.kind() == K::Product) {
        Int coeff = 1;
        std::vector<Atom> parts;
        const auto& p1 = a1.parts();
        const auto& p2 = a2.parts();
        if (p1.size() != p2.size())
            throw space_mismatch("compose: product atoms with different factor counts");
        for (std::size_t i = 0; i < p1.size(); ++i) {
            auto [c, r] = compose_atoms(p1[i], p2[i], characteristic);
            coeff *= c;
            parts.push_back(std::move(r));
        }
        return {coeff, Atom::from_parts(a1.space(), std::move(parts))};
    }

    if (a1.kind() == K::Declared && a2.kind() == K::Declared)
        return detail::compose_declared(a1, a2);

    throw undeclared_composition("no rewrite for " + a1.str() + " o " + a2.str());
}

// Soundness check used by the tests: every rule must reproduce the composed
// pullback matrices exactly (pullback is contravariant).
inline bool compose_sound(const Atom& a1, const Atom& a2, const Int& characteristic = 0) {
    auto [c, r] = compose_atoms(a1, a2, characteristic);
    for (int p = 0; p <= a1.dim(); ++p) {
        Mat lhs = a2.pullback_matrix(p) * a1.pullback_matrix(p);
        Mat rhs = r.pullback_matrix(p).scaled(Rat(c));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace dyndeg
