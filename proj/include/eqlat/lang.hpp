#ifndef eqlat_lang_hpp
#define eqlat_lang_hpp

// Text formats: `.lang` files declare named relations (builtins, formulas,
// or orbit literals) and named operations (builtins or decision lists);
// `.csp` files declare constraint instances over a language file.
//
//   # relations
//   rel neq   = builtin neq
//   rel R2    = builtin Runder(2)
//   rel link  = formula x1 != x2 | x2 = x3
//   rel tri   = orbits [1,1,1] [1,2,3]
//   # operations
//   op f3     = builtin f3
//   op pick   = rules arity 2
//     in(0), any -> const(0)
//     any, notin(1) -> fresh(0; 0)
//     any, any -> fresh(1; 0,1)
//   end
//
//   instance over sample.lang {
//     vars x, y, z;
//     R2(x, y, x, z);
//     neq(x, y);
//   }

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "csp.hpp"
#include "formula.hpp"
#include "patops.hpp"
#include "pp.hpp"

namespace eqlat {

struct LanguageFile {
    RelationEnv relations;
    std::map<std::string, PatternOperation> operations;
    std::vector<std::string> relation_order;
    std::vector<std::string> operation_order;
};

struct InstanceFile {
    std::string language_path; // as written after `over`
    CspInstance instance;
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::string strip_comment(const std::string& line) {
    std::size_t h = line.find('#');
    return strip(h == std::string::npos ? line : line.substr(0, h));
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(strip(cur));
            cur.clear();
        } else
            cur += c;
    }
    out.push_back(strip(cur));
    return out;
}

inline std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    for (const auto& tok : split(s, ',')) {
        if (tok.empty()) throw parse_error(std::string(what) + ": empty entry", 0);
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw parse_error(std::string(what) + ": bad integer " + tok, 0);
        out.push_back(v);
    }
    return out;
}

// "name" or "name(p)" or "name(p,q)"
inline std::tuple<std::string, int, int> parse_builtin_spec(const std::string& s) {
    std::size_t open = s.find('(');
    if (open == std::string::npos) return {strip(s), 0, 0};
    if (s.back() != ')') throw parse_error("builtin: expected ')': " + s, 0);
    std::vector<int> ps = parse_int_list(s.substr(open + 1, s.size() - open - 2), "builtin");
    if (ps.size() > 2) throw parse_error("builtin: too many parameters: " + s, 0);
    return {strip(s.substr(0, open)), ps.empty() ? 0 : ps[0], ps.size() > 1 ? ps[1] : 0};
}

// "[1,1,2]" with 1-based block ids -> restricted-growth partition
inline Partition parse_orbit_literal(const std::string& s) {
    std::string t = strip(s);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw parse_error("orbit literal must be bracketed: " + s, 0);
    std::vector<int> ids = parse_int_list(t.substr(1, t.size() - 2), "orbit literal");
    Partition p;
    for (int v : ids) {
        if (v < 1) throw parse_error("orbit literal: block ids are 1-based: " + s, 0);
        p.push_back(v - 1);
    }
    if (!is_restricted_growth(p))
        throw parse_error("orbit literal not in canonical (restricted-growth) form: " + s, 0);
    return p;
}

// "any" | "in(1,2)" | "notin(1,2)"
inline ArgPattern parse_arg_pattern(const std::string& s) {
    std::string t = strip(s);
    if (t == "any") return ArgPattern::any();
    auto grab = [&](const std::string& head) -> std::vector<int> {
        std::string inner = t.substr(head.size());
        if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')')
            throw parse_error("argument pattern: expected (...): " + s, 0);
        return parse_int_list(inner.substr(1, inner.size() - 2), "argument pattern");
    };
    if (t.rfind("notin", 0) == 0) return ArgPattern::not_in(grab("notin"));
    if (t.rfind("in", 0) == 0) return ArgPattern::in(grab("in"));
    throw parse_error("unknown argument pattern: " + s, 0);
}

// "const(5)" | "fresh(0; 0,1)"
inline OutputSpec parse_output_spec(const std::string& s) {
    std::string t = strip(s);
    if (t.rfind("const", 0) == 0) {
        std::string inner = t.substr(5);
        if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')')
            throw parse_error("const output: expected (value): " + s, 0);
        std::vector<int> v = parse_int_list(inner.substr(1, inner.size() - 2), "const output");
        if (v.size() != 1) throw parse_error("const output takes one value: " + s, 0);
        return OutputSpec::constant(v[0]);
    }
    if (t.rfind("fresh", 0) == 0) {
        std::string inner = t.substr(5);
        if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')')
            throw parse_error("fresh output: expected (stream; keys): " + s, 0);
        auto parts = split(inner.substr(1, inner.size() - 2), ';');
        if (parts.size() != 2)
            throw parse_error("fresh output: expected (stream; key positions): " + s, 0);
        std::vector<int> stream = parse_int_list(parts[0], "fresh stream");
        if (stream.size() != 1) throw parse_error("fresh output takes one stream id: " + s, 0);
        return OutputSpec::fresh(stream[0], parse_int_list(parts[1], "fresh key"));
    }
    throw parse_error("unknown output spec: " + s, 0);
}

inline Rule parse_rule_line(const std::string& line, int arity) {
    std::size_t arrow = line.find("->");
    if (arrow == std::string::npos) throw parse_error("rule: expected '->': " + line, 0);
    // split argument patterns on commas at parenthesis depth zero
    std::string lhs = line.substr(0, arrow);
    std::vector<std::string> pats;
    std::string cur;
    int depth = 0;
    for (char c : lhs) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            pats.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    pats.push_back(cur);
    if (static_cast<int>(pats.size()) != arity)
        throw parse_error("rule: expected " + std::to_string(arity) + " argument patterns: " + line,
                          0);
    Rule r;
    for (const auto& p : pats) r.patterns.push_back(parse_arg_pattern(p));
    r.output = parse_output_spec(line.substr(arrow + 2));
    return r;
}

} // namespace detail

inline LanguageFile parse_language(const std::string& text, int cap = kDefaultPartitionCap) {
    LanguageFile out;
    std::istringstream in(text);
    std::string raw;
    auto unique = [&](const std::string& name) {
        if (out.relations.count(name) || out.operations.count(name))
            throw parse_error("duplicate name: " + name, 0);
    };
    while (std::getline(in, raw)) {
        std::string line = detail::strip_comment(raw);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw, name, eq, kind;
        ls >> kw >> name;
        if (kw != "rel" && kw != "op") throw parse_error("expected 'rel' or 'op': " + line, 0);
        unique(name);
        ls >> eq;
        int decl_arity = -1;
        if (eq != "=") throw parse_error("expected '=': " + line, 0);
        ls >> kind;
        std::string rest;
        std::getline(ls, rest);
        rest = detail::strip(rest);
        if (kw == "rel") {
            OrbitRelation rel;
            if (kind == "builtin") {
                auto [bname, p1, p2] = detail::parse_builtin_spec(rest);
                (void)p2;
                rel = builtin_relation(bname, p1, cap);
            } else if (kind == "formula") {
                EqFormula f = parse_formula(rest);
                rel = formula_to_relation(f, static_cast<int>(f.variables.size()), cap);
            } else if (kind == "orbits") {
                std::set<Partition> orbits;
                std::string tok;
                std::istringstream rs(rest);
                while (rs >> tok) orbits.insert(detail::parse_orbit_literal(tok));
                if (orbits.empty()) throw parse_error("orbits: empty list: " + line, 0);
                int arity = static_cast<int>(orbits.begin()->size());
                rel = OrbitRelation(arity, std::move(orbits));
            } else {
                throw parse_error("unknown relation kind: " + kind, 0);
            }
            out.relations.emplace(name, std::move(rel));
            out.relation_order.push_back(name);
        } else {
            if (kind == "builtin") {
                auto [bname, p1, p2] = detail::parse_builtin_spec(rest);
                out.operations.emplace(name, builtin_operation(bname, p1, p2));
            } else if (kind == "rules") {
                std::istringstream rs(rest);
                std::string akw;
                rs >> akw >> decl_arity;
                if (akw != "arity" || decl_arity < 1)
                    throw parse_error("rules: expected 'arity K': " + line, 0);
                std::vector<Rule> rules;
                while (std::getline(in, raw)) {
                    std::string rl = detail::strip_comment(raw);
                    if (rl.empty()) continue;
                    if (rl == "end") break;
                    rules.push_back(detail::parse_rule_line(rl, decl_arity));
                }
                out.operations.emplace(name, build_operation(decl_arity, std::move(rules), name));
            } else {
                throw parse_error("unknown operation kind: " + kind, 0);
            }
            out.operation_order.push_back(name);
        }
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline LanguageFile load_language(const std::string& path, int cap = kDefaultPartitionCap) {
    return parse_language(read_file(path), cap);
}

// instance over <path> { vars a, b, c; R(a, b); ... }
inline InstanceFile parse_instance(const std::string& text) {
    // strip comments, keep structure
    std::string clean;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) clean += detail::strip_comment(raw) + "\n";

    std::istringstream ts(clean);
    std::string kw, over, path;
    ts >> kw >> over >> path;
    if (kw != "instance" || over != "over")
        throw parse_error("expected 'instance over <language file> { ... }'", 0);
    InstanceFile out;
    out.language_path = path;
    std::string body;
    std::getline(ts, body, '\0');
    std::size_t open = body.find('{'), close = body.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw parse_error("instance: expected braced body", 0);
    for (std::string stmt : detail::split(body.substr(open + 1, close - open - 1), ';')) {
        for (char& c : stmt)
            if (c == '\n' || c == '\t') c = ' ';
        stmt = detail::strip(stmt);
        if (stmt.empty()) continue;
        if (stmt.rfind("vars", 0) == 0) {
            for (const auto& v : detail::split(stmt.substr(4), ',')) {
                if (v.empty()) throw parse_error("instance: empty variable name", 0);
                out.instance.variables.push_back(v);
            }
            continue;
        }
        std::size_t p1 = stmt.find('('), p2 = stmt.rfind(')');
        if (p1 == std::string::npos || p2 == std::string::npos || p2 < p1)
            throw parse_error("instance: expected R(args): " + stmt, 0);
        CspConstraint c;
        c.relation = detail::strip(stmt.substr(0, p1));
        for (const auto& a : detail::split(stmt.substr(p1 + 1, p2 - p1 - 1), ','))
            c.args.push_back(a);
        out.instance.constraints.push_back(std::move(c));
    }
    return out;
}

inline InstanceFile load_instance(const std::string& path) {
    return parse_instance(read_file(path));
}

} // namespace eqlat

#endif
