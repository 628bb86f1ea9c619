#ifndef eqlat_classify_hpp
#define eqlat_classify_hpp

// Locate a finite language of orbit relations in the lattice of local clones
// containing all permutations: unary monoid, monoidal-interval case, the
// H/B/S/R landmark flags with operational and syntactic double-checks, the
// f_k chain profile, and the CSP complexity verdict.

#include "formula.hpp"
#include "preserve.hpp"
#include "unilattice.hpp"

namespace eqlat {

using Language = std::vector<OrbitRelation>;

struct Evidence {
    std::string claim;
    std::string witness;
};

enum class IntervalKind { II, Thm8, Singleton };

struct IIFlags {
    bool above_H = false; // binary injections (Horn clone)
    bool above_B = false; // 1-bar operations
    bool inside_S = false; // contained in the odd clone: f_3 preserves, richard does not
    bool above_R = false; // richard (negative clone)
    std::optional<int> rchain_level; // filled on request via rchain_profile
};

struct ClonePosition {
    MonoidDescriptor monoid;
    IntervalKind kind = IntervalKind::II;
    IIFlags flags;      // II case
    int thm8_k = 0;     // Thm8/Singleton; -1 = unbounded (full unary monoid)
    int thm8_level = 0; // 1 = essentially unary, 2 = Q, n >= 3 = K_n
    std::vector<Evidence> evidence;
};

namespace detail {

// The canonical reduced CNF definition of rel.
inline CnfFormula reduced_definition(const OrbitRelation& rel, int cap) {
    return reduce(relation_to_cnf(rel, cap), cap);
}

struct SyntacticCertificates {
    bool horn = false;     // every reduced definition is Horn
    bool negative = false; // every reduced definition is negative
    bool bar = false;      // Horn and the expanded Horn formula is connected extended Horn
    bool odd = false;      // additionally every premise graph has <= 2 components
};

inline SyntacticCertificates syntactic_certificates(const OrbitRelation& rel, int cap) {
    SyntacticCertificates cert;
    CnfFormula red = reduced_definition(rel, cap);
    FormulaClassFlags flags = classify_formula(red);
    cert.horn = flags.horn;
    cert.negative = flags.negative;
    if (!flags.horn) return cert;
    ExtendedHornFormula expanded = expand_horn(to_extended_horn(red), cap);
    cert.bar = classify_extended_horn(expanded).connected_extended_horn;
    if (!cert.bar) return cert;
    cert.odd = true;
    for (const auto& c : expanded.conjuncts)
        if (premise_component_count(c) > 2) cert.odd = false;
    return cert;
}

inline bool op_preserves_all(const PatternOperation& op, const Language& gamma,
                             std::uint64_t budget) {
    for (const auto& rel : gamma)
        if (!preserves_exact(op, rel, budget).preserves) return false;
    return true;
}

} // namespace detail

struct CspVerdict {
    bool polynomial = false;
    std::string reason; // "constant" or "binary_injection" when polynomial
};

inline CspVerdict csp_verdict(const Language& gamma, int cap = kDefaultPartitionCap,
                              std::uint64_t budget = kDefaultPreserveBudget) {
    if (gamma.empty()) throw std::invalid_argument("csp_verdict: empty language");
    (void)cap;
    if (detail::op_preserves_all(op_generic_injection(2), gamma, budget))
        return {true, "binary_injection"};
    bool constants = true;
    for (const auto& rel : gamma)
        if (!rel.orbits.count(Partition(static_cast<std::size_t>(rel.arity), 0))) constants = false;
    if (constants) return {true, "constant"};
    return {false, ""};
}

struct RChainEntry {
    int k = 0;
    bool preserves = false;
    bool exact = true; // false: sampled verdict only (a warning, not a proof)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// For k = 3..max_k: does f_k preserve every relation of gamma?  Exact for
// k <= exact_max (the search is feasible there); sampled beyond.
inline std::vector<RChainEntry> rchain_profile(const Language& gamma, int max_k,
                                               int exact_max = 4,
                                               std::uint64_t samples = 20'000,
                                               std::uint64_t seed = 1,
                                               std::uint64_t budget = kDefaultPreserveBudget) {
    if (max_k < 3) throw std::invalid_argument("rchain_profile: max_k must be >= 3");
    std::vector<RChainEntry> out;
    for (int k = 3; k <= max_k; ++k) {
        RChainEntry e;
        e.k = k;
        PatternOperation fk = op_fk(k);
        if (k <= exact_max) {
            e.preserves = detail::op_preserves_all(fk, gamma, budget);
        } else {
            e.exact = false;
            e.samples = samples;
            e.seed = seed;
            e.preserves = true;
            for (const auto& rel : gamma) {
                auto v = preserves_sampled(fk, rel, samples, seed);
                if (v.counterexample_found) {
                    e.preserves = false;
                    break;
                }
            }
        }
        out.push_back(e);
    }
    return out;
}

inline ClonePosition classify_language(const Language& gamma, int cap = kDefaultPartitionCap,
                                       std::uint64_t budget = kDefaultPreserveBudget) {
    if (gamma.empty()) throw std::invalid_argument("classify_language: empty language");
    ClonePosition pos;
    pos.monoid = MonoidDescriptor::Top();
    int max_arity = 1;
    for (const auto& rel : gamma) {
        pos.monoid = monoid_meet(pos.monoid, monoid_of_relation(rel));
        max_arity = std::max(max_arity, rel.arity);
    }

    if (pos.monoid.is_I() || pos.monoid.is_Iplus()) {
        pos.kind = IntervalKind::II;
        // operational flags: one canonical witness per landmark clone
        bool op_H = detail::op_preserves_all(op_generic_injection(2), gamma, budget);
        bool op_B = detail::op_preserves_all(op_bar(1), gamma, budget);
        bool op_S = detail::op_preserves_all(op_fk(3), gamma, budget);
        bool op_R = detail::op_preserves_all(op_richard(), gamma, budget);
        // syntactic double-check, per relation
        bool syn_H = true, syn_B = true, syn_S = true, syn_R = true;
        for (const auto& rel : gamma) {
            auto cert = detail::syntactic_certificates(rel, cap);
            syn_H = syn_H && cert.horn;
            syn_B = syn_B && cert.bar;
            syn_S = syn_S && cert.odd;
            syn_R = syn_R && cert.negative;
        }
        auto check = [&](bool op_flag, bool syn_flag, const char* what) {
            if (op_flag != syn_flag)
                throw std::logic_error(std::string("classify_language: operational and syntactic "
                                                   "verdicts disagree for ") +
                                       what + " (operational=" + (op_flag ? "true" : "false") +
                                       ", syntactic=" + (syn_flag ? "true" : "false") + ")");
        };
        check(op_H, syn_H, "the Horn clone (binary injection vs reduced-Horn)");
        check(op_B, syn_B, "the bar clone (bar(1) vs connected extended Horn expansion)");
        check(op_S, syn_S, "the odd clone (f_3 vs connected-Horn certificate)");
        // negativity corresponds to preservation by richard together with
        // the binary injections
        check(op_R && op_H, syn_R, "the negative clone (richard+injection vs reduced-negative)");
        // f_3 preservation witnesses containment of the odd clone; the clone
        // is *inside* the odd clone exactly when it additionally excludes
        // richard (the interval splits into the two sides of the antichain).
        bool inside_S = op_S && !op_R;
        pos.flags = IIFlags{op_H, op_B, inside_S, op_R, std::nullopt};
        if (pos.flags.above_B && !pos.flags.above_H)
            throw std::logic_error("classify_language: above_B without above_H");
        pos.evidence.push_back({"above_H", "binary injection"});
        pos.evidence.push_back({"above_B", "bar(1)"});
        pos.evidence.push_back({"inside_S", op_S ? (op_R ? "f_3 preserves but so does richard"
                                                         : "f_3 preserves, richard violates")
                                                 : "f_3 violates"});
        pos.evidence.push_back({"above_R", "richard"});
        return pos;
    }

    // Monoid strictly above I⁺: it has a non-constant non-injective member.
    // k = max k with all unary operations of range <= k present, i.e. with
    // the all-omega length-k tuple below some generator.
    int k;
    if (pos.monoid.top) {
        k = -1; // unbounded: the full unary monoid (chain of order type omega+1)
    } else {
        k = 0;
        while (monoid_member(KernelTuple(static_cast<std::size_t>(k + 1), kOmega), pos.monoid))
            ++k;
    }
    pos.thm8_k = k;
    if (k == 1) {
        pos.kind = IntervalKind::Singleton;
        pos.thm8_level = 1;
        pos.evidence.push_back({"interval is a singleton", "k = 1"});
        return pos;
    }
    pos.kind = IntervalKind::Thm8;
    bool q_ok = detail::op_preserves_all(op_quasilinear_xor({0}, 0, 1), gamma, budget);
    int r_max = k == -1 ? max_arity + 1 : k;
    std::vector<bool> ess_ok;
    for (int r = 2; r <= r_max; ++r)
        ess_ok.push_back(detail::op_preserves_all(op_essential_finite(r), gamma, budget));
    // chain consistency: K_{r+1} contains K_r and Q
    for (std::size_t i = 1; i < ess_ok.size(); ++i)
        if (ess_ok[i] && !ess_ok[i - 1])
            throw std::logic_error("classify_language: essential-range chain not monotone");
    if (!ess_ok.empty() && ess_ok[0] && !q_ok)
        throw std::logic_error("classify_language: K_3 level without quasilinear level");
    int level = 1;
    if (q_ok) level = 2;
    for (std::size_t i = 0; i < ess_ok.size(); ++i)
        if (ess_ok[i]) level = static_cast<int>(i) + 3; // essential_finite(r): level K_{r+1}
    pos.thm8_level = level;
    pos.evidence.push_back({"quasilinear level", q_ok ? "quasilinear_xor preserves"
                                                      : "quasilinear_xor violates"});
    for (std::size_t i = 0; i < ess_ok.size(); ++i)
        pos.evidence.push_back({"K_" + std::to_string(i + 3) + " level",
                                std::string("essential_finite(") + std::to_string(i + 2) +
                                    (ess_ok[i] ? ") preserves" : ") violates")});
    return pos;
}

inline std::string interval_case_to_string(const ClonePosition& pos) {
    switch (pos.kind) {
        case IntervalKind::II: return "II";
        case IntervalKind::Singleton: return "Singleton";
        case IntervalKind::Thm8: {
            std::string lvl = pos.thm8_level == 1   ? "unary"
                              : pos.thm8_level == 2 ? "Q"
                                                    : "K_" + std::to_string(pos.thm8_level);
            return "Thm8(k=" + (pos.thm8_k == -1 ? std::string("unbounded")
                                                 : std::to_string(pos.thm8_k)) +
                   ", level=" + lvl + ")";
        }
    }
    return "";
}

} // namespace eqlat

#endif
