#pragma once
// Scene files: a line-oriented declaration language for spaces,
// correspondences, semi-conjugacies and component graphs, plus commands that
// run the degree engine and the verifier. Also hosts the built-in named
// scenarios used by the command line front end.

#include "dyndeg/declared_io.hpp"
#include "dyndeg/reducible.hpp"
#include "dyndeg/verifier.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <sstream>

namespace dyndeg {

struct SceneCommand {
    std::string verb;
    std::vector<std::string> args;
    int line = 0;
};

struct Scene {
    Int characteristic = 0;
    std::vector<std::string> decl_lines;  // normalized source, in order
    std::map<std::string, SpacePtr> spaces;
    std::map<std::string, Correspondence> corrs;
    std::map<std::string, SemiConjugacy> semiconjs;
    std::map<std::string, ComponentGraph> graphs;
    std::vector<SceneCommand> commands;
    std::string base_dir;

    // Structural equality: the normalized source determines everything else.
    bool operator==(const Scene& o) const {
        return decl_lines == o.decl_lines && characteristic == o.characteristic;
    }
};

inline std::string pretty_print(const Scene& s) {
    std::ostringstream os;
    for (const auto& l : s.decl_lines) os << l << "\n";
    return os.str();
}

namespace detail {

// Cursor over one scene line with column tracking for error messages.
class LineCursor {
  public:
    LineCursor(std::string text, int line) : text_(std::move(text)), line_(line) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error("line " + std::to_string(line_) + ", col " +
                          std::to_string(pos_ + 1) + ": " + msg);
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool accept_word(const std::string& w) {
        skip_ws();
        if (text_.compare(pos_, w.size(), w) != 0) return false;
        std::size_t end = pos_ + w.size();
        if (end < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
            return false;
        pos_ = end;
        return true;
    }
    void expect_word(const std::string& w) {
        if (!accept_word(w)) fail("expected '" + w + "'");
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) fail("expected a name");
        return text_.substr(start, pos_ - start);
    }
    Int integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start) fail("expected an integer");
        return Int(text_.substr(start, pos_ - start));
    }
    bool peek_integer() {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }
    // A file path: quoted, or a bare token up to whitespace / ')' / ','.
    std::string path_token() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '"') {
            std::size_t end = text_.find('"', pos_ + 1);
            if (end == std::string::npos) fail("unterminated string");
            std::string out = text_.substr(pos_ + 1, end - pos_ - 1);
            pos_ = end + 1;
            return out;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != ')' && text_[pos_] != ',')
            ++pos_;
        if (pos_ == start) fail("expected a file path");
        return text_.substr(start, pos_ - start);
    }
    std::string rest() {
        skip_ws();
        return text_.substr(pos_);
    }

  private:
    std::string text_;
    std::size_t pos_ = 0;
    int line_;
};

inline std::string normalize_line(const std::string& raw) {
    std::string out;
    bool in_ws = true;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!in_ws) out.push_back(' ');
            in_ws = true;
        } else {
            out.push_back(c);
            in_ws = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

// Bilinear product of two correspondences on catalog factors.
inline Correspondence corr_product(const Correspondence& l, const Correspondence& r) {
    std::optional<Correspondence> out;
    for (const auto& [al, cl] : l.terms())
        for (const auto& [ar, cr] : r.terms()) {
            auto [c, a] = Atom::product(al, ar);
            Correspondence t(a, c * cl * cr);
            if (!out)
                out = t;
            else
                *out += t;
        }
    if (!out) throw parse_error("prod: empty factor");
    return *out;
}

class SceneParser {
  public:
    SceneParser(Scene& scene) : scene_(scene) {}

    void parse_line(const std::string& raw, int lineno) {
        std::string text = raw.substr(0, raw.find('#'));
        std::string norm = normalize_line(text);
        if (norm.empty()) return;
        LineCursor c(text, lineno);
        std::string head = c.ident();
        if (head == "set")
            parse_set(c);
        else if (head == "space")
            parse_space(c);
        else if (head == "corr")
            parse_corr(c);
        else if (head == "semiconj")
            parse_semiconj(c);
        else if (head == "graph")
            parse_graph(c);
        else if (head == "cmd")
            parse_cmd(c, lineno);
        else
            c.fail("unknown declaration '" + head + "'");
        if (!c.done()) c.fail("trailing input");
        scene_.decl_lines.push_back(norm);
    }

  private:
    SpacePtr space_of(LineCursor& c, const std::string& name) {
        auto it = scene_.spaces.find(name);
        if (it == scene_.spaces.end()) c.fail("unknown space '" + name + "'");
        return it->second;
    }
    std::string resolve_path(const std::string& p) const {
        if (scene_.base_dir.empty() || p.front() == '/') return p;
        return scene_.base_dir + "/" + p;
    }

    void parse_set(LineCursor& c) {
        c.expect_word("char");
        Int ch = c.integer();
        if (ch != 0 && !boost::multiprecision::miller_rabin_test(ch, 25))
            c.fail("characteristic must be 0 or prime");
        scene_.characteristic = ch;
    }

    void parse_space(LineCursor& c) {
        std::string name = c.ident();
        if (scene_.spaces.count(name)) c.fail("space '" + name + "' already declared");
        c.expect('=');
        SpacePtr s;
        if (c.accept_word("proj")) {
            s = Space::projective(static_cast<int>(c.integer()));
        } else if (c.accept_word("prod")) {
            c.expect('(');
            std::vector<SpacePtr> fac;
            do {
                fac.push_back(space_of(c, c.ident()));
            } while (c.accept(','));
            c.expect(')');
            s = Space::product(fac);
        } else if (c.accept_word("point")) {
            s = Space::point();
        } else if (c.accept_word("declared")) {
            s = load_declared_space(load_json_file(resolve_path(c.path_token())));
        } else {
            c.fail("expected proj, prod, point or declared");
        }
        scene_.spaces.emplace(name, std::move(s));
    }

    Correspondence parse_expr(LineCursor& c) {
        Correspondence acc = parse_term(c);
        while (c.accept('+')) acc += parse_term(c);
        return acc;
    }
    Correspondence parse_term(LineCursor& c) {
        if (c.peek_integer()) {
            Int coeff = c.integer();
            c.expect('*');
            return parse_primary(c).scaled(coeff);
        }
        return parse_primary(c);
    }
    Correspondence parse_primary(LineCursor& c) {
        std::string head = c.ident();
        c.expect('(');
        std::optional<Correspondence> out;
        if (head == "power" || head == "revpower") {
            SpacePtr s = space_of(c, c.ident());
            c.expect(',');
            Int d = c.integer();
            out = Correspondence(head == "power" ? Atom::power(s, d)
                                                 : Atom::revpower(s, d));
        } else if (head == "diag") {
            out = Correspondence(Atom::diagonal(space_of(c, c.ident())));
        } else if (head == "autsum") {
            SpacePtr s = space_of(c, c.ident());
            c.expect(',');
            out = Correspondence(Atom::autsum(s, c.integer()));
        } else if (head == "prod") {
            Correspondence l = parse_expr(c);
            c.expect(',');
            Correspondence r = parse_expr(c);
            out = corr_product(l, r);
        } else if (head == "rev") {
            out = parse_expr(c).reversed();
        } else if (head == "declared") {
            // One family instance per file, so atoms from repeated references
            // share reverse partners and rewrite tables.
            std::string path = resolve_path(c.path_token());
            auto cached = atom_cache_.find(path);
            if (cached == atom_cache_.end()) {
                auto j = load_json_file(path);
                cached = atom_cache_
                             .emplace(path, load_declared_atoms(
                                                j, space_of(c, peek_atom_space(j))))
                             .first;
            }
            const auto& file = cached->second;
            auto member = file.primary;
            if (c.accept(',')) {
                std::string mname = c.ident();
                auto it = member->family->find(mname);
                if (it == member->family->end())
                    c.fail("no declared atom named '" + mname + "' in the family");
                member = it->second;
            }
            out = Correspondence(Atom::declared(member));
        } else {
            c.fail("unknown expression head '" + head + "'");
        }
        c.expect(')');
        return *out;
    }

    void parse_corr(LineCursor& c) {
        std::string name = c.ident();
        if (scene_.corrs.count(name)) c.fail("corr '" + name + "' already declared");
        c.expect('=');
        scene_.corrs.emplace(name, parse_expr(c));
    }

    void parse_semiconj(LineCursor& c) {
        std::string name = c.ident();
        if (scene_.semiconjs.count(name))
            c.fail("semiconj '" + name + "' already declared");
        c.expect('=');
        c.expect_word("proj");
        c.expect('(');
        SpacePtr total = space_of(c, c.ident());
        c.expect('-');
        c.expect('>');
        c.expect_word("factor");
        Int lo = c.integer();  // 1-based, inclusive
        c.expect('.');
        c.expect('.');
        Int hi = c.integer();
        c.expect(')');
        c.expect_word("of");
        std::string fname = c.ident();
        auto it = scene_.corrs.find(fname);
        if (it == scene_.corrs.end()) c.fail("unknown corr '" + fname + "'");
        if (!same_space(it->second.space(), total))
            c.fail("corr '" + fname + "' does not live on the projected space");
        if (lo < 1 || hi < lo) c.fail("factor range must be 1-based and nonempty");
        auto sc = make_projection_semiconj(it->second,
                                           static_cast<std::size_t>(lo - 1),
                                           static_cast<std::size_t>(hi - 1));
        scene_.semiconjs.emplace(name, std::move(sc));
    }

    void parse_graph(LineCursor& c) {
        std::string name = c.ident();
        if (scene_.graphs.count(name)) c.fail("graph '" + name + "' already declared");
        c.expect('=');
        c.expect_word("components");
        c.expect('(');
        std::vector<SpacePtr> comps;
        do {
            comps.push_back(space_of(c, c.ident()));
        } while (c.accept(','));
        c.expect(')');
        ComponentGraph cg(comps);
        while (c.accept(';')) {
            c.expect_word("edge");
            Int src = c.integer();  // 1-based
            c.expect('-');
            c.expect('>');
            Int dst = c.integer();
            if (src < 1 || dst < 1 || src > Int(comps.size()) || dst > Int(comps.size()))
                c.fail("edge endpoint out of range");
            auto si = static_cast<std::size_t>(src - 1);
            auto di = static_cast<std::size_t>(dst - 1);
            SpacePtr es = comps[si];
            Atom a = Atom::diagonal(es);
            std::string kind = c.ident();
            if (kind == "power")
                a = Atom::power(es, c.integer());
            else if (kind == "revpower")
                a = Atom::revpower(es, c.integer());
            else if (kind == "autsum")
                a = Atom::autsum(es, c.integer());
            else if (kind != "diag")
                c.fail("unknown edge atom '" + kind + "'");
            Int coeff = 1;
            std::string label;
            while (true) {
                if (c.accept_word("coeff"))
                    coeff = c.integer();
                else if (c.accept_word("label"))
                    label = c.ident();
                else
                    break;
            }
            cg.add_edge(si, di, a, coeff, label);
        }
        scene_.graphs.emplace(name, std::move(cg));
    }

    void parse_cmd(LineCursor& c, int lineno) {
        SceneCommand cmd;
        cmd.verb = c.ident();
        cmd.line = lineno;
        while (!c.done()) cmd.args.push_back(c.path_token());
        scene_.commands.push_back(std::move(cmd));
    }

    Scene& scene_;
    std::map<std::string, DeclaredAtomFile> atom_cache_;
};

}  // namespace detail

inline Scene parse_scene(const std::string& text, const std::string& base_dir = "") {
    Scene scene;
    scene.base_dir = base_dir;
    detail::SceneParser parser(scene);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) parser.parse_line(line, ++lineno);
    return scene;
}

// ---------------------------------------------------------------------------
// Execution.

struct RunOptions {
    std::string format = "table";  // table | csv | records
    bool approx = false;
    unsigned max_terms = 12;
};

struct RunResult {
    int exit_code = 0;
    std::string output;
};

namespace detail {

class Emitter {
  public:
    Emitter(const RunOptions& opt) : opt_(opt) {}

    const RunOptions& options() const { return opt_; }

    // One logical record; `table_line` is its human rendering.
    void record(const std::string& type,
                const std::vector<std::pair<std::string, std::string>>& fields,
                const std::string& table_line) {
        if (opt_.format == "table") {
            out_ << table_line << "\n";
        } else if (opt_.format == "csv") {
            out_ << type;
            for (const auto& [k, v] : fields) out_ << "," << csv_escape(v);
            out_ << "\n";
        } else {
            out_ << "type=" << type;
            for (const auto& [k, v] : fields) out_ << ";" << k << "=" << v;
            out_ << "\n";
        }
    }
    void blank() {
        if (opt_.format == "table") out_ << "\n";
    }
    std::string str() const { return out_.str(); }

  private:
    static std::string csv_escape(const std::string& v) {
        if (v.find(',') == std::string::npos && v.find('"') == std::string::npos)
            return v;
        std::string out = "\"";
        for (char ch : v) {
            if (ch == '"') out += "\"\"";
            else out.push_back(ch);
        }
        return out + "\"";
    }

    const RunOptions& opt_;
    std::ostringstream out_;
};

inline std::string seq_str(const std::vector<Rat>& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += rat_str(s[i]);
    }
    return out;
}

inline std::string lambda_str(const DegreeReport& rep) {
    if (rep.exact) return rep.exact->str();
    if (rep.bounds)
        return "[" + rat_str(rep.bounds->first) + "," + rat_str(rep.bounds->second) + "]";
    return "?";
}

inline std::string lambda_approx(const DegreeReport& rep) {
    if (rep.exact) return decimal_str(rep.exact->enclosure().first);
    if (rep.bounds) return decimal_str(rep.bounds->first);
    return "?";
}

inline void emit_header(Emitter& em, const std::string& what, const std::string& name) {
    em.record("header", {{"cmd", what}, {"name", name}}, "== " + what + " " + name + " ==");
}

inline void emit_degree_report(Emitter& em, const std::string& name,
                               const DegreeReport& rep) {
    std::string lam = lambda_str(rep);
    std::vector<std::pair<std::string, std::string>> fields = {
        {"name", name},
        {"p", std::to_string(rep.p)},
        {"lambda", lam},
        {"method", rep.method},
        {"sequence", seq_str(rep.sequence)}};
    std::string line = "  p=" + std::to_string(rep.p) + ": lambda = " + lam;
    if (em.options().approx) {
        std::string a = lambda_approx(rep);
        fields.push_back({"approx", a});
        line += " ~ " + a;
    }
    line += "; seq = " + seq_str(rep.sequence) + "; method = " + rep.method;
    em.record("degree", fields, line);
}

// Optional p=a..b filter from a command argument list.
inline std::optional<std::pair<int, int>> parse_p_range(
    const std::vector<std::string>& args) {
    for (const auto& a : args)
        if (a.rfind("p=", 0) == 0) {
            auto dots = a.find("..");
            if (dots == std::string::npos)
                return std::make_pair(std::stoi(a.substr(2)), std::stoi(a.substr(2)));
            return std::make_pair(std::stoi(a.substr(2, dots - 2)),
                                  std::stoi(a.substr(dots + 2)));
        }
    return std::nullopt;
}

struct RunFlags {
    bool unexpected_fail = false;
    bool expected_fail = false;

    void absorb(const CheckReport& rep) {
        if (rep.verdict == Verdict::Fails) {
            if (rep.expected_failure)
                expected_fail = true;
            else
                unexpected_fail = true;
        }
    }
    int exit_code(bool errored) const {
        if (errored || unexpected_fail) return 1;
        if (expected_fail) return 2;
        return 0;
    }
};

inline void emit_check(Emitter& em, const CheckReport& rep, RunFlags& flags) {
    flags.absorb(rep);
    if (em.options().format == "table") {
        for (const auto& l : report_lines(rep)) em.record("", {}, l);
        return;
    }
    em.record("check", {{"name", rep.name}, {"inputs", rep.inputs}}, "");
    for (const auto& r : rep.rows)
        em.record("check_row",
                  {{"p", std::to_string(r.p)},
                   {"lhs", r.lhs},
                   {"relation", r.relation},
                   {"rhs", r.rhs},
                   {"ok", r.ok ? "1" : "0"}},
                  "");
    em.record("verdict",
              {{"check", rep.name},
               {"verdict", verdict_str(rep.verdict)},
               {"reason", rep.reason},
               {"expected", rep.expected_failure ? "1" : "0"}},
              "");
    for (const auto& n : rep.notes) em.record("note", {{"text", n}}, "");
}

inline void emit_summary(Emitter& em, const std::string& text) {
    em.record("summary", {{"text", text}}, text);
}

inline void filter_rows(CheckReport& rep, const std::vector<std::string>& args) {
    auto range = parse_p_range(args);
    if (!range) return;
    std::vector<CheckRow> keep;
    for (auto& r : rep.rows)
        if (r.p >= range->first && r.p <= range->second) keep.push_back(r);
    rep.rows = std::move(keep);
}

// The declared birational pair used by the triangle scenarios: degree-3
// forward and backward maps on P3 with exact mutual cancellation.
inline std::pair<Atom, Atom> builtin_birational_pair() {
    auto p3 = Space::projective(3);
    auto fwd = std::make_shared<DeclaredAtomData>();
    fwd->name = "b";
    fwd->space = p3;
    for (const Rat& v : {Rat(1), Rat(3), Rat(3), Rat(1)}) {
        Mat m(1, 1);
        m(0, 0) = v;
        fwd->matrices.push_back(m);
    }
    auto bwd = std::make_shared<DeclaredAtomData>(*fwd);
    bwd->name = "binv";
    fwd->reverse = bwd;
    bwd->reverse = fwd;
    fwd->table[{"b", "binv"}] = {Int(1), ""};
    bwd->table[{"binv", "b"}] = {Int(1), ""};
    return {Atom::declared(fwd), Atom::declared(bwd)};
}

}  // namespace detail

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "example3",    "example4",      "remark1pt5",     "remark1pt6",
        "remark1pt7",  "thm65-reverse", "product-p2xp1",  "weak-sharpness"};
    return names;
}

namespace detail {

inline void scenario_degrees(Emitter& em, const Correspondence& f, int pmax,
                             unsigned n_max) {
    for (int p = 0; p <= pmax; ++p)
        emit_degree_report(em, "F", dyn_degree(f, p, n_max));
}

inline void run_scenario_into(const std::string& name, Emitter& em, RunFlags& flags,
                              unsigned n_max) {
    auto P1 = Space::projective(1);
    auto P2 = Space::projective(2);
    auto P3 = Space::projective(3);
    emit_header(em, "scenario", name);

    if (name == "example3") {
        Correspondence f(Atom::power(P2, 2));
        f += Correspondence(Atom::diagonal(P2));
        scenario_degrees(em, f, 2, n_max);
        auto rep = check_log_concavity(f, n_max);
        rep.expected_failure = true;
        emit_check(em, rep, flags);
        for (const auto& r : rep.rows)
            if (!r.ok)
                emit_summary(em, "log-concavity: FAILS (" + r.lhs + " < " + r.rhs + ")");
    } else if (name == "example4") {
        Correspondence f(Atom::power(P3, 2));
        f += Correspondence(Atom::diagonal(P3));
        scenario_degrees(em, f, 3, n_max);
        auto rep = check_obstruction_examples(f, n_max);
        rep.expected_failure = true;
        emit_check(em, rep, flags);
        for (const auto& r : rep.rows)
            if (!r.ok)
                emit_summary(em, "obstruction: lambda_0*lambda_3 = " + r.lhs + " > " +
                                     r.rhs + " = lambda_1*lambda_2");
    } else if (name == "remark1pt5") {
        Correspondence f(Atom::power(P3, 2));
        f += Correspondence(Atom::diagonal(P3), 2);
        scenario_degrees(em, f, 3, n_max);
        auto rep = check_log_concavity(f, n_max);
        rep.expected_failure = true;
        emit_check(em, rep, flags);
        for (const auto& r : rep.rows)
            if (!r.ok) {
                emit_summary(em, "log-concavity: FAILS (" + r.lhs + " < " + r.rhs + ")");
                break;
            }
    } else if (name == "remark1pt6") {
        ComponentGraph fg({P3, P3});
        fg.add_edge(0, 0, Atom::revpower(P3, 2));
        fg.add_edge(1, 1, Atom::autsum(P3, 5));
        ComponentGraph gg({P2, P2});
        gg.add_edge(0, 0, Atom::revpower(P2, 2));
        gg.add_edge(1, 1, Atom::autsum(P2, 5));
        std::vector<ExactValue> lf, lg;
        for (int p = 0; p <= 1; ++p) {
            auto rf = graph_dyn_degree(fg, p, n_max);
            auto rg = graph_dyn_degree(gg, p, n_max);
            emit_degree_report(em, "F", rf);
            emit_degree_report(em, "G", rg);
            lf.push_back(*rf.exact);
            lg.push_back(*rg.exact);
        }
        std::vector<ExactValue> lrel = {lf[0], ExactValue(Rat(5))};
        auto rep = check_weak_product_data(lf, lg, lrel,
                                           "disjoint union, d1=2, d2=5");
        rep.expected_failure = true;
        emit_check(em, rep, flags);
        for (const auto& r : rep.rows)
            if (!r.ok)
                emit_summary(em, "weak product formula: FAILS (" + r.lhs + " < " +
                                     r.rhs + "), expected");
    } else if (name == "remark1pt7") {
        Correspondence f(Atom::power(P2, 2));
        Correspondence d(Atom::diagonal(P2));
        emit_check(em, check_triangle(f, d, n_max), flags);
        auto [b, binv] = builtin_birational_pair();
        emit_check(em, check_triangle(Correspondence(b), Correspondence(binv), n_max),
                   flags);
        emit_summary(em, "triangle inequality: equality for F + diag, strict for the "
                         "birational pair");
    } else if (name == "thm65-reverse") {
        emit_check(em, check_primitivity(Correspondence(Atom::revpower(P2, 2)), n_max),
                   flags);
        emit_check(em, check_primitivity(Correspondence(Atom::power(P2, 2)), n_max),
                   flags);
    } else if (name == "product-p2xp1") {
        auto [c, a] = Atom::product(Atom::power(P2, 2), Atom::power(P1, 3));
        Correspondence f(a, c);
        scenario_degrees(em, f, 3, n_max);
        auto sc = make_projection_semiconj(f, 1, 1);
        for (int p = 0; p <= sc.total->dim() - sc.base->dim(); ++p)
            emit_degree_report(em, "F|pi", rel_dyn_degree(sc, p, n_max));
        emit_check(em, check_product_formula(sc, n_max), flags);
    } else if (name == "weak-sharpness") {
        for (auto [d, e] : {std::pair<int, int>{2, 3}, {3, 2}}) {
            auto [c, a] = Atom::product(Atom::revpower(P1, d), Atom::revpower(P1, e));
            Correspondence f(a, c);
            auto sc = make_projection_semiconj(f, 1, 1);
            auto rep = check_weak_product(sc, n_max);
            emit_check(em, rep, flags);
            if (rep.minimal_c)
                emit_summary(em, "d=" + std::to_string(d) + ", e=" + std::to_string(e) +
                                     ": minimal c = " + rep.minimal_c->str() +
                                     " = lambda_0(g)");
        }
    } else {
        throw error("unknown scenario '" + name + "'");
    }
    em.blank();
}

inline void run_command(const Scene& scene, const SceneCommand& cmd, Emitter& em,
                        RunFlags& flags, const RunOptions& opt) {
    const Int& ch = scene.characteristic;
    auto corr_arg = [&](std::size_t i) -> const Correspondence& {
        if (i >= cmd.args.size()) throw error("missing correspondence argument");
        auto it = scene.corrs.find(cmd.args[i]);
        if (it == scene.corrs.end()) throw error("unknown corr '" + cmd.args[i] + "'");
        return it->second;
    };
    auto sc_arg = [&](std::size_t i) -> const SemiConjugacy& {
        if (i >= cmd.args.size()) throw error("missing semiconj argument");
        auto it = scene.semiconjs.find(cmd.args[i]);
        if (it == scene.semiconjs.end())
            throw error("unknown semiconj '" + cmd.args[i] + "'");
        return it->second;
    };

    if (cmd.verb == "degrees") {
        if (cmd.args.empty()) throw error("degrees: missing argument");
        const std::string& name = cmd.args[0];
        emit_header(em, "degrees", name);
        auto range = parse_p_range(cmd.args);
        if (auto git = scene.graphs.find(name); git != scene.graphs.end()) {
            int k = git->second.components()[0]->dim();
            int lo = range ? range->first : 0, hi = range ? range->second : k;
            for (int p = lo; p <= hi; ++p)
                emit_degree_report(em, name, graph_dyn_degree(git->second, p,
                                                              opt.max_terms, ch));
        } else {
            const Correspondence& f = corr_arg(0);
            int k = f.space()->dim();
            int lo = range ? range->first : 0, hi = range ? range->second : k;
            for (int p = lo; p <= hi; ++p)
                emit_degree_report(em, name, dyn_degree(f, p, opt.max_terms, ch));
        }
        em.blank();
    } else if (cmd.verb == "sequence") {
        const Correspondence& f = corr_arg(0);
        if (cmd.args.size() < 2) throw error("sequence: missing codimension");
        int p = std::stoi(cmd.args[1]);
        emit_header(em, "sequence", cmd.args[0]);
        auto s = degree_sequence(f, p, opt.max_terms, ch);
        em.record("sequence",
                  {{"name", cmd.args[0]},
                   {"p", std::to_string(p)},
                   {"sequence", seq_str(s)}},
                  "  p=" + std::to_string(p) + ": " + seq_str(s));
        em.blank();
    } else if (cmd.verb == "relative") {
        const SemiConjugacy& sc = sc_arg(0);
        emit_header(em, "relative", cmd.args[0]);
        auto range = parse_p_range(cmd.args);
        int fiber = sc.total->dim() - sc.base->dim();
        int lo = range ? range->first : 0, hi = range ? range->second : fiber;
        for (int p = lo; p <= hi; ++p)
            emit_degree_report(em, cmd.args[0], rel_dyn_degree(sc, p, opt.max_terms, ch));
        em.blank();
    } else if (cmd.verb == "verify") {
        if (cmd.args.empty()) throw error("verify: missing check name");
        const std::string& check = cmd.args[0];
        emit_header(em, "verify", check);
        CheckReport rep;
        if (check == "log_concavity")
            rep = check_log_concavity(corr_arg(1), opt.max_terms, ch);
        else if (check == "product_formula")
            rep = check_product_formula(sc_arg(1), opt.max_terms, ch);
        else if (check == "weak_product")
            rep = check_weak_product(sc_arg(1), opt.max_terms, ch);
        else if (check == "triangle")
            rep = check_triangle(corr_arg(1), corr_arg(2), opt.max_terms, ch);
        else if (check == "monotonicity")
            rep = check_monotonicity(sc_arg(1), sc_arg(2), opt.max_terms, ch);
        else if (check == "primitivity")
            rep = check_primitivity(corr_arg(1), opt.max_terms, ch);
        else if (check == "obstruction")
            rep = check_obstruction_examples(corr_arg(1), opt.max_terms, ch);
        else if (check == "simplicity") {
            if (cmd.args.size() < 4) throw error("simplicity: need <corr> <p1> <p2>");
            const Correspondence& f = corr_arg(1);
            rep = check_simplicity(f.pullback_matrix(std::stoi(cmd.args[2])),
                                   f.pullback_matrix(std::stoi(cmd.args[3])));
        } else {
            throw error("unknown check '" + check + "'");
        }
        for (const auto& a : cmd.args)
            if (a == "expect=fail") rep.expected_failure = true;
        filter_rows(rep, cmd.args);
        emit_check(em, rep, flags);
        em.blank();
    } else if (cmd.verb == "scenario") {
        if (cmd.args.empty()) throw error("scenario: missing name");
        run_scenario_into(cmd.args[0], em, flags, opt.max_terms);
    } else {
        throw error("unknown command '" + cmd.verb + "'");
    }
}

}  // namespace detail

inline RunResult run_scene(const Scene& scene, const RunOptions& opt = {}) {
    detail::Emitter em(opt);
    detail::RunFlags flags;
    bool errored = false;
    for (const auto& cmd : scene.commands) {
        try {
            detail::run_command(scene, cmd, em, flags, opt);
        } catch (const error& e) {
            em.record("error",
                      {{"command", cmd.verb},
                       {"line", std::to_string(cmd.line)},
                       {"message", e.what()}},
                      "error: " + std::string(e.what()) + " (command '" + cmd.verb +
                          "' at line " + std::to_string(cmd.line) + ")");
            errored = true;
            break;
        }
    }
    return {flags.exit_code(errored), em.str()};
}

inline RunResult run_scenario(const std::string& name, const RunOptions& opt = {}) {
    detail::Emitter em(opt);
    detail::RunFlags flags;
    bool errored = false;
    try {
        detail::run_scenario_into(name, em, flags, opt.max_terms);
    } catch (const error& e) {
        em.record("error", {{"message", e.what()}}, "error: " + std::string(e.what()));
        errored = true;
    }
    return {flags.exit_code(errored), em.str()};
}

}  // namespace dyndeg
