#ifndef eqlat_core_hpp
#define eqlat_core_hpp

// Equality patterns (orbits of tuples under all permutations of an infinite
// base set) in restricted-growth form, and relations given as finite sets of
// such patterns.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqlat {

inline constexpr int kDefaultPartitionCap = 10;
inline constexpr const char* kLibraryVersion = "1.0.0";

// Thrown when an operation would exceed a configured cap or search budget.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A partition of positions {0..arity-1} in restricted-growth form:
// labels[0] == 0 and labels[i] <= 1 + max(labels[0..i-1]).
// Two positions are equal under the pattern iff they carry the same label.
using Partition = std::vector<int>;

inline bool is_restricted_growth(const Partition& p) {
    if (p.empty() || p[0] != 0) return false;
    int mx = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (p[i] < 0 || p[i] > mx + 1) return false;
        mx = std::max(mx, p[i]);
    }
    return true;
}

inline int block_count(const Partition& p) {
    int mx = -1;
    for (int v : p) mx = std::max(mx, v);
    return mx + 1;
}

// Canonical orbit name of a tuple: positions share a label iff entries equal.
template <typename T>
Partition pattern_of(const std::vector<T>& tuple) {
    if (tuple.empty()) throw std::invalid_argument("pattern_of: empty tuple");
    Partition labels(tuple.size());
    std::vector<T> seen;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        auto it = std::find(seen.begin(), seen.end(), tuple[i]);
        if (it == seen.end()) {
            labels[i] = static_cast<int>(seen.size());
            seen.push_back(tuple[i]);
        } else {
            labels[i] = static_cast<int>(it - seen.begin());
        }
    }
    return labels;
}

// All restricted-growth sequences of length k, lexicographic; Bell(k) many.
inline std::vector<Partition> enumerate_partitions(int k, int cap = kDefaultPartitionCap) {
    if (k < 1) throw std::invalid_argument("enumerate_partitions: k must be positive");
    if (k > cap)
        throw resource_error("enumerate_partitions: arity " + std::to_string(k) +
                             " exceeds partition cap " + std::to_string(cap));
    std::vector<Partition> out;
    Partition cur(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int i, int mx) -> void {
        if (i == k) {
            out.push_back(cur);
            return;
        }
        for (int b = 0; b <= mx + 1; ++b) {
            cur[static_cast<std::size_t>(i)] = b;
            self(self, i + 1, std::max(mx, b));
        }
    };
    cur[0] = 0;
    rec(rec, 1, 0);
    return out;
}

// A permutation-invariant relation over (N, =): a finite set of same-arity orbits.
struct OrbitRelation {
    int arity = 0;
    std::set<Partition> orbits;

    OrbitRelation() = default;
    OrbitRelation(int a, std::set<Partition> o) : arity(a), orbits(std::move(o)) {
        for (const auto& p : orbits) {
            if (static_cast<int>(p.size()) != arity)
                throw std::invalid_argument("OrbitRelation: orbit arity mismatch");
            if (!is_restricted_growth(p))
                throw std::invalid_argument("OrbitRelation: orbit not in restricted-growth form");
        }
    }

    bool operator==(const OrbitRelation& o) const = default;
};

template <typename T>
bool contains(const OrbitRelation& rel, const std::vector<T>& tuple) {
    if (static_cast<int>(tuple.size()) != rel.arity)
        throw std::invalid_argument("contains: tuple length != relation arity");
    return rel.orbits.count(pattern_of(tuple)) != 0;
}

inline bool contains_pattern(const OrbitRelation& rel, const Partition& p) {
    if (static_cast<int>(p.size()) != rel.arity)
        throw std::invalid_argument("contains_pattern: arity mismatch");
    return rel.orbits.count(p) != 0;
}

namespace detail {

// Predicate-defined relation: keep the patterns satisfying pred.
template <typename Pred>
OrbitRelation relation_from_predicate(int arity, Pred pred, int cap) {
    std::set<Partition> orbits;
    for (auto& p : enumerate_partitions(arity, cap))
        if (pred(p)) orbits.insert(std::move(p));
    return OrbitRelation(arity, std::move(orbits));
}

} // namespace detail

// Builtin relations, by the defining formulas:
//   neq       x1 != x2
//   I         a=b -> c=d                       (arity 4)
//   N         a=b != c=d  or all four distinct (arity 4)
//   odd3      a=b=c or |{a,b,c}| = 3
//   R(n)      OR_i x_i != y_i                  (arity 2n, coords x1,y1,..,xn,yn)
//   Runder(n) R(n) or all equal
//   Rneq(n)   R(n) and x_i,y_i cross-distinct for i != j
inline OrbitRelation builtin_relation(const std::string& name, int n = 0,
                                      int cap = kDefaultPartitionCap) {
    auto need_n = [&](const char* what) {
        if (n < 2) throw std::invalid_argument(std::string(what) + ": requires n >= 2");
        if (2 * n > cap)
            throw resource_error(std::string(what) + ": arity " + std::to_string(2 * n) +
                                 " exceeds partition cap " + std::to_string(cap));
    };
    auto rn_holds = [](const Partition& p) {
        for (std::size_t i = 0; i + 1 < p.size(); i += 2)
            if (p[i] != p[i + 1]) return true;
        return false;
    };
    if (name == "neq") {
        return OrbitRelation(2, {Partition{0, 1}});
    }
    if (name == "I") {
        return detail::relation_from_predicate(
            4, [](const Partition& p) { return p[0] != p[1] || p[2] == p[3]; }, cap);
    }
    if (name == "N") {
        return detail::relation_from_predicate(
            4,
            [](const Partition& p) {
                bool four_distinct = block_count(p) == 4;
                bool ab_cd = p[0] == p[1] && p[2] == p[3] && p[0] != p[2];
                return four_distinct || ab_cd;
            },
            cap);
    }
    if (name == "odd3") {
        return OrbitRelation(3, {Partition{0, 0, 0}, Partition{0, 1, 2}});
    }
    if (name == "R") {
        need_n("R(n)");
        return detail::relation_from_predicate(2 * n, rn_holds, cap);
    }
    if (name == "Runder") {
        need_n("Runder(n)");
        return detail::relation_from_predicate(
            2 * n, [&](const Partition& p) { return rn_holds(p) || block_count(p) == 1; }, cap);
    }
    if (name == "Rneq") {
        need_n("Rneq(n)");
        return detail::relation_from_predicate(
            2 * n,
            [&](const Partition& p) {
                if (!rn_holds(p)) return false;
                // all cross pairs distinct: only x_i = y_i equalities allowed
                for (std::size_t i = 0; i < p.size(); ++i)
                    for (std::size_t j = i + 1; j < p.size(); ++j) {
                        if (j == i + 1 && i % 2 == 0) continue; // the pair (x_i, y_i)
                        if (p[i] == p[j]) return false;
                    }
                return true;
            },
            cap);
    }
    throw std::invalid_argument("builtin_relation: unknown name '" + name + "'");
}

// Render a partition with 1-based block ids, e.g. [1,1,2].
inline std::string partition_to_string(const Partition& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i] + 1);
    }
    return s + "]";
}

} // namespace eqlat

#endif
