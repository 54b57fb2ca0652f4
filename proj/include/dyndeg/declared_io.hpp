#pragma once
// JSON loaders for declared intersection rings and declared atom families.
//
// Space file:
//   { "type": "space", "name": "Q", "dim": 2,
//     "basis_labels": [["1"], ["a","b"], ["pt"]],
//     "products": [{"p":1,"i":0,"q":1,"j":1,"coeffs":[1]}, ...],
//     "top_degrees": [1], "polarization": [1, 1] }
//
// Atom file:
//   { "type": "atom", "space": "<space name>", "primary": "b",
//     "atoms": [{"name":"b","matrices":[[[1]],[[3]],[[3]],[[1]]],
//                "reverse":"binv"}, ...],
//     "table": [{"left":"b","right":"binv","coeff":1,"result":""}] }
//
// Rationals may be written as integers or "a/b" strings.

#include "dyndeg/atom.hpp"
#include "dyndeg/cycle.hpp"

#include <json.hpp>

#include <fstream>

namespace dyndeg {

namespace detail {

inline Rat json_rat(const nlohmann::json& v) {
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    }
    throw parse_error("expected an integer or an \"a/b\" string");
}

inline std::vector<Rat> json_rat_vector(const nlohmann::json& v) {
    if (!v.is_array()) throw parse_error("expected an array of rationals");
    std::vector<Rat> out;
    for (const auto& e : v) out.push_back(json_rat(e));
    return out;
}

inline Mat json_mat(const nlohmann::json& v) {
    if (!v.is_array() || v.empty()) throw parse_error("expected a matrix");
    std::size_t rows = v.size(), cols = v[0].size();
    Mat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!v[r].is_array() || v[r].size() != cols)
            throw parse_error("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = json_rat(v[r][c]);
    }
    return m;
}

}  // namespace detail

inline SpacePtr load_declared_space(const nlohmann::json& j) {
    auto data = std::make_shared<DeclaredSpaceData>();
    data->name = j.at("name").get<std::string>();
    data->dim = j.at("dim").get<int>();
    for (const auto& row : j.at("basis_labels")) {
        std::vector<std::string> labels;
        for (const auto& l : row) labels.push_back(l.get<std::string>());
        data->basis_labels.push_back(std::move(labels));
    }
    if (j.contains("products"))
        for (const auto& e : j.at("products"))
            data->products[{e.at("p").get<int>(), e.at("i").get<int>(),
                            e.at("q").get<int>(), e.at("j").get<int>()}] =
                detail::json_rat_vector(e.at("coeffs"));
    data->top_degrees = detail::json_rat_vector(j.at("top_degrees"));
    data->polarization = detail::json_rat_vector(j.at("polarization"));
    auto s = Space::declared(data);
    validate_declared_space(s);
    return s;
}

struct DeclaredAtomFile {
    std::string space_name;  // scene space the family lives on
    std::shared_ptr<const DeclaredAtomData> primary;
};

// Loads a declared atom family onto the given space. The caller resolves the
// file's "space" field to a SpacePtr first (peek_atom_space below).
inline DeclaredAtomFile load_declared_atoms(const nlohmann::json& j,
                                            const SpacePtr& space) {
    DeclaredAtomFile out;
    out.space_name = j.at("space").get<std::string>();
    int dim = space->dim();

    std::map<std::string, std::shared_ptr<DeclaredAtomData>> built;
    auto family = std::make_shared<
        std::map<std::string, std::shared_ptr<const DeclaredAtomData>>>();
    for (const auto& e : j.at("atoms")) {
        auto d = std::make_shared<DeclaredAtomData>();
        d->name = e.at("name").get<std::string>();
        d->space = space;
        const auto& mats = e.at("matrices");
        if (static_cast<int>(mats.size()) != dim + 1)
            throw parse_error("atom '" + d->name + "': need one matrix per codim 0.." +
                              std::to_string(dim));
        for (int p = 0; p <= dim; ++p) {
            Mat m = detail::json_mat(mats[static_cast<std::size_t>(p)]);
            auto rank = static_cast<std::size_t>(space->rank(p));
            if (m.rows() != rank || m.cols() != rank)
                throw parse_error("atom '" + d->name + "': matrix at codim " +
                                  std::to_string(p) + " must be " +
                                  std::to_string(rank) + "x" + std::to_string(rank));
            d->matrices.push_back(std::move(m));
        }
        if (built.count(d->name)) throw parse_error("duplicate atom '" + d->name + "'");
        built[d->name] = d;
    }

    std::map<std::pair<std::string, std::string>, std::pair<Int, std::string>> table;
    if (j.contains("table"))
        for (const auto& e : j.at("table")) {
            std::string result = e.at("result").get<std::string>();
            if (!result.empty() && !built.count(result))
                throw parse_error("table result '" + result + "' is not declared");
            Rat coeff = detail::json_rat(e.at("coeff"));
            if (denominator(coeff) != 1)
                throw parse_error("table coefficient must be an integer");
            table[{e.at("left").get<std::string>(),
                   e.at("right").get<std::string>()}] = {numerator(coeff), result};
        }

    for (const auto& e : j.at("atoms")) {
        auto d = built.at(e.at("name").get<std::string>());
        if (e.contains("reverse")) {
            std::string rname = e.at("reverse").get<std::string>();
            if (!built.count(rname))
                throw parse_error("reverse '" + rname + "' is not declared");
            d->reverse = built.at(rname);
        }
        d->table = table;
        d->family = family;
    }
    for (const auto& [name, d] : built) (*family)[name] = d;

    std::string primary = j.at("primary").get<std::string>();
    if (!built.count(primary))
        throw parse_error("primary atom '" + primary + "' is not declared");
    out.primary = built.at(primary);
    return out;
}

inline std::string peek_atom_space(const nlohmann::json& j) {
    return j.at("space").get<std::string>();
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    return j;
}

}  // namespace dyndeg
