#ifndef eqlat_unilattice_hpp
#define eqlat_unilattice_hpp

// The unary world: kernel tuples of finite-range unary operations (class
// sizes, sorted nondecreasing, trailing omega), the generation order on them,
// finite antichains as monoid descriptors, lattice operations, and the unary
// polymorphism monoid of an orbit relation.

#include <limits>
#include <map>
#include <optional>

#include "core.hpp"
#include "patops.hpp"

namespace eqlat {

inline constexpr int kOmega = std::numeric_limits<int>::max();

// Nondecreasing sequence over {1,2,...} ∪ {omega}.  Full kernel tuples end
// in omega (a finite-range operation has an infinite kernel class); capped
// profiles additionally restrict finite entries to < the relation arity.
using KernelTuple = std::vector<int>;

inline bool is_kernel_tuple(const KernelTuple& t, bool full = true) {
    if (t.empty()) return false;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 1) return false;
        if (i && t[i] < t[i - 1]) return false;
    }
    return !full || t.back() == kOmega;
}

inline KernelTuple make_kernel_tuple(std::vector<int> sizes, bool full = true) {
    std::sort(sizes.begin(), sizes.end());
    if (!is_kernel_tuple(sizes, full))
        throw std::invalid_argument(full ? "make_kernel_tuple: need class sizes >= 1 with at "
                                           "least one infinite class"
                                         : "make_kernel_tuple: need class sizes >= 1");
    return sizes;
}

namespace detail {

// omega-arithmetic helpers
inline int omega_add(int a, int b) {
    if (a == kOmega || b == kOmega) return kOmega;
    if (a > std::numeric_limits<int>::max() - b) return kOmega; // saturate
    return a + b;
}

inline bool omega_leq(int a, int s) { return a == kOmega ? s == kOmega : (s == kOmega || a <= s); }

} // namespace detail

// The generating order: a ⊑ b iff len(a) <= len(b) and the positions of b
// can be partitioned into len(a) groups A_1..A_k with a_i <= sum(b over A_i).
// Backtracking assigns the largest a_i first; surplus positions of b are
// absorbed into any group (sums only grow), so groups are built greedily as
// disjoint subsets and leftovers are ignored.
inline bool seq_leq(const KernelTuple& a, const KernelTuple& b) {
    if (!is_kernel_tuple(a, false) || !is_kernel_tuple(b, false))
        throw std::invalid_argument("seq_leq: not nondecreasing positive sequences");
    std::size_t k = a.size(), n = b.size();
    if (k > n) return false;
    // a is nondecreasing; process from the back (largest first)
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, int ai) -> bool {
        if (ai < 0) return true;
        int need = a[static_cast<std::size_t>(ai)];
        // choose a subset of unused b positions with sum >= need; to bound
        // branching, greedily extend from the largest unused positions with
        // backtracking over which ones participate
        auto pick = [&](auto&& pickself, int from, int sum, int taken) -> bool {
            if (detail::omega_leq(need, sum) && taken > 0)
                return self(self, ai - 1);
            for (int j = from; j >= 0; --j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                used[static_cast<std::size_t>(j)] = true;
                if (pickself(pickself, j - 1, detail::omega_add(sum, b[static_cast<std::size_t>(j)]),
                             taken + 1))
                    return true;
                used[static_cast<std::size_t>(j)] = false;
            }
            return false;
        };
        return pick(pick, static_cast<int>(n) - 1, 0, 0);
    };
    // each group needs at least one position; k <= n guarantees feasibility
    return rec(rec, static_cast<int>(k) - 1);
}

// Keep only the ⊑-maximal tuples (the downward closure is unchanged).
inline std::vector<KernelTuple> antichain_reduce(std::vector<KernelTuple> tuples) {
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    std::vector<KernelTuple> out;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < tuples.size() && !dominated; ++j)
            if (i != j && seq_leq(tuples[i], tuples[j]) && !(seq_leq(tuples[j], tuples[i]) && i < j))
                dominated = true;
        if (!dominated) out.push_back(tuples[i]);
    }
    return out;
}

// A monoid containing all permutations (in fact all injections), described
// by the finite ⊑-antichain of kernel tuples of its maximal finite-range
// members.  I = injections only (empty antichain); I⁺ adds the constants
// ({(omega)}); the full unary clone is a flag (it is not finitely generated
// over the injections).
struct MonoidDescriptor {
    bool top = false;
    std::vector<KernelTuple> antichain; // reduced, sorted

    static MonoidDescriptor I() { return {}; }
    static MonoidDescriptor Iplus() { return {false, {KernelTuple{kOmega}}}; }
    static MonoidDescriptor Top() { return {true, {}}; }
    static MonoidDescriptor from_tuples(std::vector<KernelTuple> ts) {
        for (const auto& t : ts)
            if (!is_kernel_tuple(t))
                throw std::invalid_argument("MonoidDescriptor: not a full kernel tuple");
        return {false, antichain_reduce(std::move(ts))};
    }

    bool is_I() const { return !top && antichain.empty(); }
    bool is_Iplus() const { return !top && antichain == std::vector<KernelTuple>{{kOmega}}; }
    bool operator==(const MonoidDescriptor&) const = default;
};

inline bool monoid_member(const KernelTuple& kappa, const MonoidDescriptor& m) {
    if (!is_kernel_tuple(kappa))
        throw std::invalid_argument("monoid_member: not a full kernel tuple");
    if (m.top) return true;
    for (const auto& g : m.antichain)
        if (seq_leq(kappa, g)) return true;
    return false;
}

inline MonoidDescriptor monoid_join(const MonoidDescriptor& a, const MonoidDescriptor& b) {
    if (a.top || b.top) return MonoidDescriptor::Top();
    std::vector<KernelTuple> all = a.antichain;
    all.insert(all.end(), b.antichain.begin(), b.antichain.end());
    return {false, antichain_reduce(std::move(all))};
}

inline bool monoid_leq(const MonoidDescriptor& a, const MonoidDescriptor& b) {
    if (b.top) return true;
    if (a.top) return false;
    return std::all_of(a.antichain.begin(), a.antichain.end(),
                       [&](const KernelTuple& g) { return monoid_member(g, b); });
}

// Meet = intersection of the two downward closures, given by its maximal
// elements.  Candidate tuples end in omega, have length at most the shorter
// side's longest generator, and draw entries from the subset sums of the
// generators' finite entries plus omega: if κ ⊑ g then each κ_i is dominated
// by a sum of g-entries, and a maximal such κ can take exactly those sums.
inline MonoidDescriptor monoid_meet(const MonoidDescriptor& a, const MonoidDescriptor& b,
                                    std::uint64_t budget = 10'000'000) {
    if (a.top) return b;
    if (b.top) return a;
    if (a.antichain.empty() || b.antichain.empty()) return MonoidDescriptor::I();
    std::size_t max_len = 0;
    for (const auto& g : a.antichain) max_len = std::max(max_len, g.size());
    std::size_t bl = 0;
    for (const auto& g : b.antichain) bl = std::max(bl, g.size());
    max_len = std::min(max_len, bl);
    // entry candidates: subset sums of finite entries across all generators
    std::set<int> sums{kOmega};
    auto add_sums = [&](const std::vector<KernelTuple>& gens) {
        for (const auto& g : gens) {
            std::set<int> acc{0};
            for (int e : g)
                if (e != kOmega) {
                    std::set<int> next = acc;
                    for (int s : acc) next.insert(detail::omega_add(s, e));
                    acc = std::move(next);
                }
            for (int s : acc)
                if (s > 0) sums.insert(s);
        }
    };
    add_sums(a.antichain);
    add_sums(b.antichain);
    std::vector<int> entries(sums.begin(), sums.end());
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < max_len; ++i) {
        space *= entries.size() + 1;
        if (space > budget) throw resource_error("monoid_meet: candidate space exceeds budget");
    }
    std::vector<KernelTuple> below;
    KernelTuple cur;
    auto in_both = [&](const KernelTuple& t) {
        return monoid_member(t, a) && monoid_member(t, b);
    };
    auto rec = [&](auto&& self, std::size_t min_idx) -> void {
        if (!cur.empty() && cur.back() == kOmega && in_both(cur)) below.push_back(cur);
        if (cur.size() == max_len) return;
        for (std::size_t i = min_idx; i < entries.size(); ++i) {
            cur.push_back(entries[i]);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return {false, antichain_reduce(std::move(below))};
}

// Cap a kernel tuple (or any class-size profile) at relation arity k: keep
// the k largest entries; entries >= k become omega (at most k blocks can
// ever land in one class, so sizes >= k are indistinguishable from omega).
inline KernelTuple cap_profile(const KernelTuple& kappa, int k) {
    if (k < 1) throw std::invalid_argument("cap_profile: arity must be positive");
    if (!is_kernel_tuple(kappa, false))
        throw std::invalid_argument("cap_profile: not a kernel tuple");
    KernelTuple out;
    std::size_t start = kappa.size() > static_cast<std::size_t>(k)
                            ? kappa.size() - static_cast<std::size_t>(k)
                            : 0;
    for (std::size_t i = start; i < kappa.size(); ++i)
        out.push_back(kappa[i] >= k ? kOmega : kappa[i]);
    return out;
}

inline bool is_capped_profile(const KernelTuple& kappa, int k) {
    if (!is_kernel_tuple(kappa, false)) return false;
    if (kappa.size() > static_cast<std::size_t>(k)) return false;
    for (int e : kappa)
        if (e != kOmega && e >= k) return false;
    return true;
}

// A unary operation with capped profile κ preserves rel iff for every orbit
// p and every map m from p's blocks into κ's classes with fibers of size at
// most the class size, the coarsened pattern (blocks merged iff mapped to
// the same class) is again in rel.
inline bool unary_preserves(const KernelTuple& kappa, const OrbitRelation& rel,
                            std::uint64_t budget = 100'000'000) {
    if (!is_capped_profile(kappa, rel.arity))
        throw std::invalid_argument("unary_preserves: profile not capped at the relation arity");
    int nclasses = static_cast<int>(kappa.size());
    for (const auto& p : rel.orbits) {
        int blocks = block_count(p);
        std::uint64_t maps = 1;
        for (int i = 0; i < blocks; ++i) {
            maps *= static_cast<std::uint64_t>(nclasses);
            if (maps > budget) throw resource_error("unary_preserves: map space exceeds budget");
        }
        std::vector<int> assign(static_cast<std::size_t>(blocks));
        std::vector<int> load(static_cast<std::size_t>(nclasses), 0);
        bool ok = true;
        auto rec = [&](auto&& self, int blk) -> void {
            if (!ok) return;
            if (blk == blocks) {
                std::vector<int> merged(p.size());
                for (std::size_t i = 0; i < p.size(); ++i)
                    merged[i] = assign[static_cast<std::size_t>(p[i])];
                if (!rel.orbits.count(pattern_of(merged))) ok = false;
                return;
            }
            for (int c = 0; c < nclasses && ok; ++c) {
                if (kappa[static_cast<std::size_t>(c)] != kOmega &&
                    load[static_cast<std::size_t>(c)] >= kappa[static_cast<std::size_t>(c)])
                    continue;
                ++load[static_cast<std::size_t>(c)];
                assign[static_cast<std::size_t>(blk)] = c;
                self(self, blk + 1);
                --load[static_cast<std::size_t>(c)];
            }
        };
        rec(rec, 0);
        if (!ok) return false;
    }
    return true;
}

namespace detail {

// All capped profiles at arity k ending in omega (every finite-range unary
// operation has one), nondecreasing over {1..k-1, omega}, length 1..k.
inline std::vector<KernelTuple> enumerate_capped_profiles(int k) {
    std::vector<KernelTuple> out;
    KernelTuple cur;
    auto rec = [&](auto&& self, int min_entry) -> void {
        if (!cur.empty() && cur.back() == kOmega) out.push_back(cur);
        if (cur.size() == static_cast<std::size_t>(k)) return;
        for (int e = min_entry; e < k; ++e) {
            cur.push_back(e);
            self(self, e);
            cur.pop_back();
        }
        cur.push_back(kOmega);
        self(self, kOmega);
        cur.pop_back();
    };
    rec(rec, 1);
    return out;
}

} // namespace detail

// The unary polymorphism monoid of rel: TOP when the all-omega profile of
// length rel.arity preserves (preservation is ⊑-antitone, so then every
// unary operation preserves); otherwise the antichain of ⊑-maximal capped
// preserving profiles, read directly as full kernel tuples.
inline MonoidDescriptor monoid_of_relation(const OrbitRelation& rel) {
    int k = rel.arity;
    KernelTuple all_omega(static_cast<std::size_t>(k), kOmega);
    if (unary_preserves(all_omega, rel)) return MonoidDescriptor::Top();
    std::vector<KernelTuple> preserving;
    for (const auto& prof : detail::enumerate_capped_profiles(k))
        if (unary_preserves(prof, rel)) preserving.push_back(prof);
    return {false, antichain_reduce(std::move(preserving))};
}

// ---------------------------------------------------------------------------
// Tuple literal syntax: "(1,2,w)" with w = omega.

inline std::string kernel_tuple_to_string(const KernelTuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += t[i] == kOmega ? std::string("w") : std::to_string(t[i]);
    }
    return s + ")";
}

inline KernelTuple parse_kernel_tuple(const std::string& text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&]() -> KernelTuple {
        throw std::invalid_argument("parse_kernel_tuple: expected \"(e1,...,ek)\" with entries in "
                                    "{1,2,...} or w, got '" + text + "'");
    };
    skip_ws();
    if (pos >= text.size() || text[pos] != '(') return fail();
    ++pos;
    KernelTuple out;
    while (true) {
        skip_ws();
        if (pos < text.size() && (text[pos] == 'w' || text[pos] == 'W')) {
            out.push_back(kOmega);
            ++pos;
        } else {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) return fail();
            long v = std::stol(text.substr(start, pos - start));
            if (v < 1 || v >= kOmega) return fail();
            out.push_back(static_cast<int>(v));
        }
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    if (pos >= text.size() || text[pos] != ')') return fail();
    ++pos;
    skip_ws();
    if (pos != text.size()) return fail();
    if (!is_kernel_tuple(out, false))
        throw std::invalid_argument("parse_kernel_tuple: entries must be nondecreasing");
    return out;
}

// Bridge to the pattern-operation representation of a capped profile
// (op_unary_from_kernel encodes omega with its own sentinel).
inline PatternOperation kernel_profile_operation(const KernelTuple& kappa, int cap) {
    std::vector<int> profile;
    for (int e : kappa) profile.push_back(e == kOmega ? kOmegaEntry : e);
    return op_unary_from_kernel(profile, cap);
}

} // namespace eqlat

#endif
