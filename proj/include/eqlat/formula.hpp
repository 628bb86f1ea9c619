#ifndef eqlat_formula_hpp
#define eqlat_formula_hpp

// Quantifier-free equality logic: parsing, CNF conversion, semantic
// equivalence by partition enumeration (sound and complete for this
// fragment), reduction to a minimal definition, syntactic classification
// (Horn / negative / connected variants), extended Horn form and expansion.

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "core.hpp"

namespace eqlat {

// ---------------------------------------------------------------------------
// AST

enum class NodeKind { True, False, Eq, Not, And, Or, Implies };

struct FNode;
using FNodePtr = std::shared_ptr<const FNode>;

struct FNode {
    NodeKind kind;
    int a = -1, b = -1;             // Eq operands (variable indices)
    std::vector<FNodePtr> children; // Not: 1; Implies: 2; And/Or: >= 1
};

inline FNodePtr f_true() { return std::make_shared<FNode>(FNode{NodeKind::True, -1, -1, {}}); }
inline FNodePtr f_false() { return std::make_shared<FNode>(FNode{NodeKind::False, -1, -1, {}}); }
inline FNodePtr f_eq(int a, int b) { return std::make_shared<FNode>(FNode{NodeKind::Eq, a, b, {}}); }
inline FNodePtr f_not(FNodePtr x) { return std::make_shared<FNode>(FNode{NodeKind::Not, -1, -1, {std::move(x)}}); }
inline FNodePtr f_and(std::vector<FNodePtr> xs) { return std::make_shared<FNode>(FNode{NodeKind::And, -1, -1, std::move(xs)}); }
inline FNodePtr f_or(std::vector<FNodePtr> xs) { return std::make_shared<FNode>(FNode{NodeKind::Or, -1, -1, std::move(xs)}); }
inline FNodePtr f_implies(FNodePtr p, FNodePtr q) { return std::make_shared<FNode>(FNode{NodeKind::Implies, -1, -1, {std::move(p), std::move(q)}}); }

struct EqFormula {
    std::vector<std::string> variables;
    FNodePtr body;
};

inline bool eval_node(const FNode& n, const Partition& assign) {
    switch (n.kind) {
        case NodeKind::True: return true;
        case NodeKind::False: return false;
        case NodeKind::Eq: return assign[static_cast<std::size_t>(n.a)] == assign[static_cast<std::size_t>(n.b)];
        case NodeKind::Not: return !eval_node(*n.children[0], assign);
        case NodeKind::And:
            for (const auto& c : n.children)
                if (!eval_node(*c, assign)) return false;
            return true;
        case NodeKind::Or:
            for (const auto& c : n.children)
                if (eval_node(*c, assign)) return true;
            return false;
        case NodeKind::Implies:
            return !eval_node(*n.children[0], assign) || eval_node(*n.children[1], assign);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Parser.  Grammar (ASCII):
//   formula  := implies
//   implies  := or ('->' implies)?
//   or       := and ('|' and)*
//   and      := unary ('&' unary)*
//   unary    := '!' unary | '(' formula ')' | atom
//   atom     := 'true' | 'false' | ident ('=' | '!=') ident
// Optional declaration header: "vars a,b,x1..x4" (ranges expand on a trailing
// decimal index).  Without a header, variables are in first-occurrence order.

struct parse_error : std::invalid_argument {
    std::size_t offset;
    parse_error(const std::string& msg, std::size_t off)
        : std::invalid_argument(msg + " at offset " + std::to_string(off)), offset(off) {}
};

namespace detail {

struct FormulaParser {
    const std::string& text;
    std::size_t pos = 0;
    std::vector<std::string> vars;
    bool declared = false;

    explicit FormulaParser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool lit(const char* s) {
        skip_ws();
        std::size_t n = std::string(s).size();
        if (text.compare(pos, n, s) == 0) {
            pos += n;
            return true;
        }
        return false;
    }
    bool peek_char(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) throw parse_error("expected identifier", pos);
        return text.substr(start, pos - start);
    }
    static bool is_keyword(const std::string& s) {
        return s == "true" || s == "false" || s == "vars" || s == "exists";
    }
    int var_index(const std::string& name, std::size_t at) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return static_cast<int>(i);
        if (declared) throw parse_error("undeclared variable '" + name + "'", at);
        vars.push_back(name);
        return static_cast<int>(vars.size()) - 1;
    }

    // "vars x1..x6" / "vars a,b,c" header
    void maybe_header() {
        std::size_t save = pos;
        skip_ws();
        if (!lit("vars") ||
            (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))) {
            pos = save;
            return;
        }
        declared = true;
        do {
            std::string first = ident();
            if (lit("..")) {
                std::string last = ident();
                auto split = [&](const std::string& s) -> std::pair<std::string, long> {
                    std::size_t i = s.size();
                    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
                    if (i == s.size()) throw parse_error("range endpoint lacks an index", pos);
                    return {s.substr(0, i), std::stol(s.substr(i))};
                };
                auto [stem1, lo] = split(first);
                auto [stem2, hi] = split(last);
                if (stem1 != stem2 || hi < lo) throw parse_error("bad variable range", pos);
                for (long k = lo; k <= hi; ++k) vars.push_back(stem1 + std::to_string(k));
            } else {
                vars.push_back(first);
            }
        } while (lit(","));
        lit(";"); // optional separator after the header
    }

    FNodePtr parse_implies() {
        FNodePtr left = parse_or();
        if (lit("->")) return f_implies(std::move(left), parse_implies());
        return left;
    }
    FNodePtr parse_or() {
        std::vector<FNodePtr> xs{parse_and()};
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '|') {
                ++pos;
                xs.push_back(parse_and());
            } else
                break;
        }
        return xs.size() == 1 ? xs[0] : f_or(std::move(xs));
    }
    FNodePtr parse_and() {
        std::vector<FNodePtr> xs{parse_unary()};
        while (lit("&")) xs.push_back(parse_unary());
        return xs.size() == 1 ? xs[0] : f_and(std::move(xs));
    }
    FNodePtr parse_unary() {
        skip_ws();
        if (pos < text.size() && text[pos] == '!' &&
            (pos + 1 >= text.size() || text[pos + 1] != '=')) {
            ++pos;
            return f_not(parse_unary());
        }
        if (lit("(")) {
            FNodePtr inner = parse_implies();
            if (!lit(")")) throw parse_error("expected ')'", pos);
            return inner;
        }
        return parse_atom();
    }
    FNodePtr parse_atom() {
        skip_ws();
        std::size_t at = pos;
        std::string name = ident();
        if (name == "true") return f_true();
        if (name == "false") return f_false();
        if (is_keyword(name)) throw parse_error("unexpected keyword '" + name + "'", at);
        int a = var_index(name, at);
        skip_ws();
        bool neg;
        if (lit("!=")) {
            neg = true;
        } else if (lit("=")) {
            neg = false;
        } else {
            throw parse_error("expected '=' or '!='", pos);
        }
        skip_ws();
        std::size_t at2 = pos;
        std::string name2 = ident();
        if (is_keyword(name2)) throw parse_error("unexpected keyword '" + name2 + "'", at2);
        int b = var_index(name2, at2);
        FNodePtr atom = f_eq(a, b);
        return neg ? f_not(std::move(atom)) : std::move(atom);
    }
};

} // namespace detail

inline EqFormula parse_formula(const std::string& text) {
    detail::FormulaParser p(text);
    p.maybe_header();
    FNodePtr body = p.parse_implies();
    p.skip_ws();
    if (p.pos != text.size()) throw parse_error("trailing input", p.pos);
    return EqFormula{std::move(p.vars), std::move(body)};
}

// ---------------------------------------------------------------------------
// CNF

// Atom Eq(a,b) normalized to a <= b; FalseAtom encoded as a = b = -1.
// Field order makes complementary literals sort adjacently.
struct Literal {
    int a = -1, b = -1;
    bool positive = true;

    bool is_false_atom() const { return a < 0; }
    auto operator<=>(const Literal&) const = default;
};

inline Literal make_eq_literal(bool positive, int a, int b) {
    if (a > b) std::swap(a, b);
    return Literal{a, b, positive};
}
inline Literal false_literal() { return Literal{-1, -1, true}; }

using Clause = std::vector<Literal>;

struct CnfFormula {
    std::vector<std::string> variables;
    std::vector<Clause> clauses; // conjunction of disjunctions; no clause empty
};

inline bool eval_literal(const Literal& l, const Partition& assign) {
    bool atom = l.is_false_atom()
                    ? false
                    : assign[static_cast<std::size_t>(l.a)] == assign[static_cast<std::size_t>(l.b)];
    return l.positive ? atom : !atom;
}

inline bool eval_clause(const Clause& c, const Partition& assign) {
    for (const auto& l : c)
        if (eval_literal(l, assign)) return true;
    return false;
}

inline bool eval_cnf(const CnfFormula& f, const Partition& assign) {
    for (const auto& c : f.clauses)
        if (!eval_clause(c, assign)) return false;
    return true;
}

namespace detail {

// Normalize a clause: drop literals that are constant-false, detect
// tautologies.  Returns nullopt when the clause is a tautology.
inline std::optional<Clause> normalize_clause(Clause c) {
    Clause out;
    for (const auto& l : c) {
        if (l.is_false_atom()) {
            if (!l.positive) return std::nullopt; // !false is true
            continue;                             // positive false contributes nothing
        }
        if (l.a == l.b) {
            if (l.positive) return std::nullopt; // x=x is true
            continue;                            // x!=x contributes nothing
        }
        out.push_back(l);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].a == out[i + 1].a && out[i].b == out[i + 1].b &&
            out[i].positive != out[i + 1].positive)
            return std::nullopt; // complementary pair
    if (out.empty()) out.push_back(false_literal());
    return out;
}

// Negation normal form over {True, False, Eq, Not-of-Eq, And, Or}.
inline FNodePtr to_nnf(const FNode& n, bool negate) {
    switch (n.kind) {
        case NodeKind::True: return negate ? f_false() : f_true();
        case NodeKind::False: return negate ? f_true() : f_false();
        case NodeKind::Eq: {
            FNodePtr atom = f_eq(n.a, n.b);
            return negate ? f_not(std::move(atom)) : std::move(atom);
        }
        case NodeKind::Not: return to_nnf(*n.children[0], !negate);
        case NodeKind::And:
        case NodeKind::Or: {
            std::vector<FNodePtr> xs;
            xs.reserve(n.children.size());
            for (const auto& c : n.children) xs.push_back(to_nnf(*c, negate));
            bool is_and = (n.kind == NodeKind::And) != negate;
            return is_and ? f_and(std::move(xs)) : f_or(std::move(xs));
        }
        case NodeKind::Implies: {
            std::vector<FNodePtr> xs{to_nnf(*n.children[0], !negate), to_nnf(*n.children[1], negate)};
            return negate ? f_and(std::move(xs)) : f_or(std::move(xs));
        }
    }
    return f_false();
}

// NNF -> list of clauses by distribution (formulas in this artifact are small).
inline std::vector<Clause> nnf_to_clauses(const FNode& n) {
    switch (n.kind) {
        case NodeKind::True: return {};
        case NodeKind::False: return {{false_literal()}};
        case NodeKind::Eq: return {{make_eq_literal(true, n.a, n.b)}};
        case NodeKind::Not: {
            const FNode& c = *n.children[0];
            return {{make_eq_literal(false, c.a, c.b)}};
        }
        case NodeKind::And: {
            std::vector<Clause> out;
            for (const auto& c : n.children) {
                auto cs = nnf_to_clauses(*c);
                out.insert(out.end(), cs.begin(), cs.end());
            }
            return out;
        }
        case NodeKind::Or: {
            std::vector<Clause> acc{{}};
            for (const auto& c : n.children) {
                auto cs = nnf_to_clauses(*c);
                if (cs.empty()) return {}; // disjunct is a tautology
                std::vector<Clause> next;
                next.reserve(acc.size() * cs.size());
                for (const auto& left : acc)
                    for (const auto& right : cs) {
                        Clause merged = left;
                        merged.insert(merged.end(), right.begin(), right.end());
                        next.push_back(std::move(merged));
                    }
                acc = std::move(next);
            }
            return acc;
        }
        case NodeKind::Implies: break; // removed by NNF
    }
    throw std::logic_error("nnf_to_clauses: unexpected node");
}

} // namespace detail

inline CnfFormula to_cnf(const EqFormula& f) {
    FNodePtr nnf = detail::to_nnf(*f.body, false);
    CnfFormula out;
    out.variables = f.variables;
    for (auto& c : detail::nnf_to_clauses(*nnf)) {
        auto norm = detail::normalize_clause(std::move(c));
        if (norm) out.clauses.push_back(std::move(*norm));
    }
    std::sort(out.clauses.begin(), out.clauses.end());
    out.clauses.erase(std::unique(out.clauses.begin(), out.clauses.end()), out.clauses.end());
    return out;
}

// ---------------------------------------------------------------------------
// Relations <-> formulas

inline std::vector<std::string> default_variables(int arity) {
    std::vector<std::string> vars;
    for (int i = 1; i <= arity; ++i) vars.push_back("x" + std::to_string(i));
    return vars;
}

template <typename F>
OrbitRelation formula_to_relation(const F& f, int arity, int cap = kDefaultPartitionCap) {
    if (static_cast<int>(f.variables.size()) != arity)
        throw std::invalid_argument("formula_to_relation: variable count != arity");
    std::set<Partition> orbits;
    for (auto& p : enumerate_partitions(arity, cap)) {
        bool ok;
        if constexpr (std::is_same_v<F, CnfFormula>)
            ok = eval_cnf(f, p);
        else
            ok = eval_node(*f.body, p);
        if (ok) orbits.insert(std::move(p));
    }
    return OrbitRelation(arity, std::move(orbits));
}

// DNF over orbit descriptions: one disjunct per orbit, conjoining the full
// equality/inequality profile of the pattern.
inline EqFormula relation_to_formula(const OrbitRelation& rel) {
    EqFormula out;
    out.variables = default_variables(rel.arity);
    std::vector<FNodePtr> disjuncts;
    for (const auto& p : rel.orbits) {
        std::vector<FNodePtr> conj;
        for (int i = 0; i < rel.arity; ++i)
            for (int j = i + 1; j < rel.arity; ++j) {
                FNodePtr atom = f_eq(i, j);
                conj.push_back(p[static_cast<std::size_t>(i)] == p[static_cast<std::size_t>(j)]
                                   ? std::move(atom)
                                   : f_not(std::move(atom)));
            }
        if (conj.empty()) conj.push_back(f_true()); // arity 1
        disjuncts.push_back(f_and(std::move(conj)));
    }
    out.body = disjuncts.empty() ? f_false() : f_or(std::move(disjuncts));
    return out;
}

// CNF definition of a relation, built directly (one clause excluding each
// non-member pattern) — avoids the exponential DNF->CNF distribution.
inline CnfFormula relation_to_cnf(const OrbitRelation& rel, int cap = kDefaultPartitionCap) {
    CnfFormula out;
    out.variables = default_variables(rel.arity);
    for (const auto& p : enumerate_partitions(rel.arity, cap)) {
        if (rel.orbits.count(p)) continue;
        Clause c;
        for (int i = 0; i < rel.arity; ++i)
            for (int j = i + 1; j < rel.arity; ++j) {
                bool eq = p[static_cast<std::size_t>(i)] == p[static_cast<std::size_t>(j)];
                // a tuple of pattern p falsifies every literal; any other
                // pattern differs on some pair and satisfies the clause
                c.push_back(make_eq_literal(!eq, i, j));
            }
        auto norm = detail::normalize_clause(std::move(c));
        if (norm) out.clauses.push_back(std::move(*norm));
    }
    std::sort(out.clauses.begin(), out.clauses.end());
    return out;
}

// ---------------------------------------------------------------------------
// Equivalence and reduction

inline bool equivalent(const CnfFormula& f, const CnfFormula& g, int cap = kDefaultPartitionCap) {
    if (f.variables.size() != g.variables.size())
        throw std::invalid_argument("equivalent: variable sets differ");
    int k = static_cast<int>(f.variables.size());
    for (const auto& p : enumerate_partitions(k, cap))
        if (eval_cnf(f, p) != eval_cnf(g, p)) return false;
    return true;
}

// Def 22: a definition none of whose single literal/clause deletions is
// equivalent.  Deterministic order: clause deletions first (in order), then
// literal deletions (clauses in order, literals left to right), to fixpoint.
inline CnfFormula reduce(const CnfFormula& f, int cap = kDefaultPartitionCap) {
    int k = static_cast<int>(f.variables.size());
    auto partitions = enumerate_partitions(k, cap);
    auto equiv = [&](const CnfFormula& g) {
        for (const auto& p : partitions)
            if (eval_cnf(f, p) != eval_cnf(g, p)) return false;
        return true;
    };
    CnfFormula cur = f;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < cur.clauses.size();) {
            CnfFormula cand = cur;
            cand.clauses.erase(cand.clauses.begin() + static_cast<std::ptrdiff_t>(i));
            if (equiv(cand)) {
                cur = std::move(cand);
                changed = true;
            } else {
                ++i;
            }
        }
        for (std::size_t i = 0; i < cur.clauses.size(); ++i) {
            if (cur.clauses[i].size() <= 1) continue; // never empty a clause
            for (std::size_t j = 0; j < cur.clauses[i].size();) {
                CnfFormula cand = cur;
                cand.clauses[i].erase(cand.clauses[i].begin() + static_cast<std::ptrdiff_t>(j));
                if (equiv(cand)) {
                    cur = std::move(cand);
                    changed = true;
                } else {
                    ++j;
                }
            }
        }
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Classification

struct FormulaClassFlags {
    bool horn = false;
    bool negative = false;
    bool connected_horn = false;
};

namespace detail {

// Connected components of the graph whose vertices are the variables
// occurring in the given atoms and whose edges join the two sides of each
// atom.  Returns 0 for an empty vertex set.
inline int component_count(const std::vector<std::pair<int, int>>& edges) {
    std::map<int, int> parent;
    auto find = [&](auto&& self, int x) -> int {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        if (it->second == x) return x;
        return it->second = self(self, it->second);
    };
    for (auto [a, b] : edges) {
        int ra = find(find, a), rb = find(find, b);
        if (ra != rb) parent[ra] = rb;
    }
    std::set<int> roots;
    for (auto& [v, _] : parent) roots.insert(find(find, v));
    return static_cast<int>(roots.size());
}

inline int positive_eq_count(const Clause& c) {
    int n = 0;
    for (const auto& l : c)
        if (l.positive && !l.is_false_atom()) ++n;
    return n;
}

} // namespace detail

inline FormulaClassFlags classify_formula(const CnfFormula& f) {
    FormulaClassFlags flags;
    flags.horn = true;
    flags.negative = true;
    flags.connected_horn = true;
    for (const auto& c : f.clauses) {
        int pos = detail::positive_eq_count(c);
        if (pos > 1) flags.horn = false;
        // negative: a single positive literal, or no positive literal at all
        if (pos == 1 && c.size() > 1) flags.negative = false;
        if (pos > 1) flags.negative = false;
        // graph of the clause: vertices = its variables, edges per atom
        std::vector<std::pair<int, int>> edges;
        for (const auto& l : c)
            if (!l.is_false_atom()) edges.emplace_back(l.a, l.b);
        int comps = detail::component_count(edges);
        if (pos >= 1 ? comps > 1 : comps > 2) flags.connected_horn = false;
    }
    flags.connected_horn = flags.connected_horn && flags.horn;
    return flags;
}

// ---------------------------------------------------------------------------
// Extended Horn

struct EqAtom {
    int a = -1, b = -1; // FalseAtom encoded as a = b = -1
    bool is_false_atom() const { return a < 0; }
    auto operator<=>(const EqAtom&) const = default;
};
inline EqAtom make_atom(int a, int b) {
    if (a > b) std::swap(a, b);
    return EqAtom{a, b};
}
inline EqAtom false_atom() { return EqAtom{-1, -1}; }

// Conjunction of (u1=v1 & ... & ul=vl) -> (s1=t1 & ... & sk=tk) with l,k >= 1;
// the conclusion may be the single atom "false".
struct ExtendedHornConjunct {
    std::vector<EqAtom> premise;
    std::vector<EqAtom> conclusion;
    auto operator<=>(const ExtendedHornConjunct&) const = default;
};

struct ExtendedHornFormula {
    std::vector<std::string> variables;
    std::vector<ExtendedHornConjunct> conjuncts;
};

inline bool eval_extended_horn(const ExtendedHornFormula& f, const Partition& assign) {
    auto holds = [&](const EqAtom& a) {
        if (a.is_false_atom()) return false;
        return assign[static_cast<std::size_t>(a.a)] == assign[static_cast<std::size_t>(a.b)];
    };
    for (const auto& c : f.conjuncts) {
        bool premise_holds = true;
        for (const auto& a : c.premise) premise_holds = premise_holds && holds(a);
        if (!premise_holds) continue;
        bool conclusion_holds = true;
        for (const auto& a : c.conclusion) conclusion_holds = conclusion_holds && holds(a);
        if (!conclusion_holds) return false;
    }
    return true;
}

// Horn CNF -> extended Horn form.  A unit positive clause x=y becomes
// (x=x) -> (x=y) to satisfy the l >= 1 shape; an all-negative clause gets
// conclusion "false".
inline ExtendedHornFormula to_extended_horn(const CnfFormula& f) {
    ExtendedHornFormula out;
    out.variables = f.variables;
    for (const auto& c : f.clauses) {
        ExtendedHornConjunct conj;
        for (const auto& l : c) {
            if (l.is_false_atom()) continue;
            if (l.positive)
                conj.conclusion.push_back(make_atom(l.a, l.b));
            else
                conj.premise.push_back(make_atom(l.a, l.b));
        }
        if (conj.conclusion.size() > 1)
            throw std::invalid_argument("to_extended_horn: input is not Horn");
        if (conj.conclusion.empty()) conj.conclusion.push_back(false_atom());
        if (conj.premise.empty()) {
            int v = conj.conclusion[0].is_false_atom() ? 0 : conj.conclusion[0].a;
            conj.premise.push_back(EqAtom{v, v});
        }
        out.conjuncts.push_back(std::move(conj));
    }
    return out;
}

struct ExtendedHornFlags {
    bool extended_horn = true; // by construction of the type
    bool connected_extended_horn = false;
};

namespace detail {

// A conjunct must be connected whenever its conclusion contains an equality
// atom and no "false".
inline bool conjunct_needs_connectivity(const ExtendedHornConjunct& c) {
    bool has_eq = false, has_false = false;
    for (const auto& a : c.conclusion) (a.is_false_atom() ? has_false : has_eq) = true;
    return has_eq && !has_false;
}

inline bool conjunct_connected(const ExtendedHornConjunct& c) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& a : c.premise)
        if (!a.is_false_atom()) edges.emplace_back(a.a, a.b);
    for (const auto& a : c.conclusion)
        if (!a.is_false_atom()) edges.emplace_back(a.a, a.b);
    return component_count(edges) <= 1;
}

inline int premise_component_count(const ExtendedHornConjunct& c) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& a : c.premise)
        if (!a.is_false_atom()) edges.emplace_back(a.a, a.b);
    return component_count(edges);
}

} // namespace detail

inline ExtendedHornFlags classify_extended_horn(const ExtendedHornFormula& f) {
    ExtendedHornFlags flags;
    flags.connected_extended_horn = true;
    for (const auto& c : f.conjuncts)
        if (detail::conjunct_needs_connectivity(c) && !detail::conjunct_connected(c))
            flags.connected_extended_horn = false;
    return flags;
}

// ---------------------------------------------------------------------------
// Expansion (Def "expanded Horn").
//
// Step 1 adds, for every partition rho of the variable set that forces
// additional equalities (or a contradiction) under f, the clause
// (atoms of rho) -> (implied atoms | false).  This is a canonical finite
// closure equivalent to "all implied connected extended Horn clauses": any
// such clause's premise determines a variable partition, and the added
// clause for that partition subsumes it.
// Step 2 strengthens disconnected conjuncts by the definition's three moves
// (add x=y to the premise; add x=y to the conclusion; replace the conclusion
// by false) whenever the result stays equivalent; deterministic order,
// iterated to fixpoint.

inline ExtendedHornFormula expand_horn(const ExtendedHornFormula& f, int cap = kDefaultPartitionCap) {
    int k = static_cast<int>(f.variables.size());
    auto partitions = enumerate_partitions(k, cap);
    std::vector<Partition> models;
    for (const auto& p : partitions)
        if (eval_extended_horn(f, p)) models.push_back(p);
    auto equiv_to_f = [&](const ExtendedHornFormula& g) {
        for (const auto& p : partitions)
            if (eval_extended_horn(g, p) != (std::find(models.begin(), models.end(), p) != models.end()))
                return false;
        return true;
    };

    ExtendedHornFormula out = f;
    std::set<ExtendedHornConjunct> have(out.conjuncts.begin(), out.conjuncts.end());

    auto refines = [&](const Partition& rho, const Partition& pi) {
        // every rho-equality also holds in pi
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (rho[static_cast<std::size_t>(i)] == rho[static_cast<std::size_t>(j)] &&
                    pi[static_cast<std::size_t>(i)] != pi[static_cast<std::size_t>(j)])
                    return false;
        return true;
    };

    for (const auto& rho : partitions) {
        std::vector<EqAtom> premise;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (rho[static_cast<std::size_t>(i)] == rho[static_cast<std::size_t>(j)])
                    premise.push_back(make_atom(i, j));
        bool any_model = false;
        std::vector<EqAtom> implied;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                if (rho[static_cast<std::size_t>(i)] == rho[static_cast<std::size_t>(j)]) continue;
                bool always_equal = true;
                bool saw_model = false;
                for (const auto& pi : models) {
                    if (!refines(rho, pi)) continue;
                    saw_model = true;
                    if (pi[static_cast<std::size_t>(i)] != pi[static_cast<std::size_t>(j)]) {
                        always_equal = false;
                        break;
                    }
                }
                any_model = any_model || saw_model;
                if (saw_model && always_equal) implied.push_back(make_atom(i, j));
            }
        if (!any_model) {
            // re-check emptiness when no pair witnessed a model (e.g. k small)
            for (const auto& pi : models)
                if (refines(rho, pi)) {
                    any_model = true;
                    break;
                }
        }
        ExtendedHornConjunct conj;
        if (!any_model) {
            conj.conclusion.push_back(false_atom());
        } else if (!implied.empty()) {
            conj.conclusion = implied;
        } else {
            continue;
        }
        conj.premise = premise.empty() ? std::vector<EqAtom>{EqAtom{0, 0}} : premise;
        if (detail::conjunct_needs_connectivity(conj) && !detail::conjunct_connected(conj))
            continue; // only connected extended Horn clauses are added
        if (have.insert(conj).second) out.conjuncts.push_back(std::move(conj));
    }

    // Step 2: strengthen disconnected conjuncts.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& conj : out.conjuncts) {
            if (!detail::conjunct_needs_connectivity(conj) || detail::conjunct_connected(conj))
                continue;
            bool fixed = false;
            for (int pass = 0; pass < 2 && !fixed; ++pass) {
                for (int i = 0; i < k && !fixed; ++i)
                    for (int j = i + 1; j < k && !fixed; ++j) {
                        ExtendedHornConjunct cand = conj;
                        auto& side = pass == 0 ? cand.premise : cand.conclusion;
                        EqAtom atom = make_atom(i, j);
                        if (std::find(side.begin(), side.end(), atom) != side.end()) continue;
                        side.push_back(atom);
                        ExtendedHornFormula trial = out;
                        trial.conjuncts[static_cast<std::size_t>(&conj - out.conjuncts.data())] = cand;
                        if (equiv_to_f(trial)) {
                            conj = cand;
                            fixed = true;
                            changed = true;
                        }
                    }
            }
            if (!fixed) {
                ExtendedHornConjunct cand = conj;
                cand.conclusion = {false_atom()};
                ExtendedHornFormula trial = out;
                trial.conjuncts[static_cast<std::size_t>(&conj - out.conjuncts.data())] = cand;
                if (equiv_to_f(trial)) {
                    conj = cand;
                    changed = true;
                }
            }
        }
    }
    std::sort(out.conjuncts.begin(), out.conjuncts.end());
    out.conjuncts.erase(std::unique(out.conjuncts.begin(), out.conjuncts.end()), out.conjuncts.end());
    return out;
}

// ---------------------------------------------------------------------------
// Printing (for reports and diagnostics)

inline std::string literal_to_string(const Literal& l, const std::vector<std::string>& vars) {
    if (l.is_false_atom()) return l.positive ? "false" : "true";
    return vars[static_cast<std::size_t>(l.a)] + (l.positive ? "=" : "!=") +
           vars[static_cast<std::size_t>(l.b)];
}

inline std::string cnf_to_string(const CnfFormula& f) {
    if (f.clauses.empty()) return "true";
    std::string s;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        if (i) s += " & ";
        const auto& c = f.clauses[i];
        if (c.size() > 1) s += "(";
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (j) s += " | ";
            s += literal_to_string(c[j], f.variables);
        }
        if (c.size() > 1) s += ")";
    }
    return s;
}

inline std::string extended_horn_to_string(const ExtendedHornFormula& f) {
    auto atom = [&](const EqAtom& a) {
        if (a.is_false_atom()) return std::string("false");
        return f.variables[static_cast<std::size_t>(a.a)] + "=" +
               f.variables[static_cast<std::size_t>(a.b)];
    };
    if (f.conjuncts.empty()) return "true";
    std::string s;
    for (std::size_t i = 0; i < f.conjuncts.size(); ++i) {
        if (i) s += " & ";
        const auto& c = f.conjuncts[i];
        s += "(";
        for (std::size_t j = 0; j < c.premise.size(); ++j) {
            if (j) s += " & ";
            s += atom(c.premise[j]);
        }
        s += " -> ";
        for (std::size_t j = 0; j < c.conclusion.size(); ++j) {
            if (j) s += " | ";
            s += atom(c.conclusion[j]);
        }
        s += ")";
    }
    return s;
}

} // namespace eqlat

#endif
