#pragma once

#include <utility>
#include <vector>

#include "kloops/table.hpp"

namespace kloops {

// Finite symmetric structure: s(x, y) reads "x reflected through y" (row x,
// column y), so the symmetry of center y is s_y(x) = s(x, y). Validated
// axioms: s(x,x) = x, s(s(x,y),y) = x, s(s(x,z),s(y,z)) = s(s(x,y),z), and a
// unique midpoint m(x,y) with s(x, m(x,y)) = y.
class SymetronStructure {
public:
    friend SymetronStructure make_symetron(const CayleyTable& t);

    int order() const { return table_.order(); }
    const CayleyTable& table() const { return table_; }

    int s(int x, int y) const { return table_.at(x, y); }
    int m(int x, int y) const { return midpoint_.at(x, y); }
    const CayleyTable& midpoint_table() const { return midpoint_; }

    // s_y applied pointwise to a subset.
    SubsetMask reflect(const SubsetMask& set, int y) const {
        SubsetMask out(order());
        for (int x : set.members()) out.insert(s(x, y));
        return out;
    }

    bool operator==(const SymetronStructure& other) const { return table_ == other.table_; }

private:
    SymetronStructure() : table_(1, {0}), midpoint_(1, {0}) {}

    CayleyTable table_;
    CayleyTable midpoint_;
};

inline SymetronStructure make_symetron(const CayleyTable& t) {
    int n = t.order();
    for (int x = 0; x < n; ++x)
        if (t.at(x, x) != x)
            fail(ErrorKind::NotSymetron, "s(x,x) != x at x=" + std::to_string(x));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (t.at(t.at(x, y), y) != x)
                fail(ErrorKind::NotSymetron, "s(s(x,y),y) != x at x=" + std::to_string(x) +
                                                 ", y=" + std::to_string(y));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (t.at(t.at(x, z), t.at(y, z)) != t.at(t.at(x, y), z))
                    fail(ErrorKind::NotSymetron,
                         "distributivity fails at x=" + std::to_string(x) + ", y=" +
                             std::to_string(y) + ", z=" + std::to_string(z));

    // Unique midpoint: for each x the map z -> s(x, z) must be a bijection.
    std::vector<int> mid(static_cast<size_t>(n) * n, -1);
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
            int y = t.at(x, z);
            int& slot = mid[static_cast<size_t>(x) * n + y];
            if (slot >= 0)
                fail(ErrorKind::NoUniqueMidpoint, "two midpoints between " + std::to_string(x) +
                                                      " and " + std::to_string(y));
            slot = z;
        }

    SymetronStructure S;
    S.table_ = t;
    S.midpoint_ = CayleyTable(n, std::move(mid));
    return S;
}

inline bool is_midpoint_closed(const SymetronStructure& S, const SubsetMask& Y) {
    auto members = Y.members();
    for (int x : members)
        for (int y : members)
            if (!Y.contains(S.m(x, y))) return false;
    return true;
}

inline bool is_convex(const SymetronStructure& S, const SubsetMask& Y) {
    auto members = Y.members();
    for (int x : members)
        for (int y : members)
            if (!Y.contains(S.s(x, y))) return false;
    return true;
}

// Points x with s_x(Y) = Z.
inline SubsetMask sym_between(const SymetronStructure& S, const SubsetMask& Y,
                              const SubsetMask& Z) {
    SubsetMask out(S.order());
    for (int x = 0; x < S.order(); ++x)
        if (S.reflect(Y, x) == Z) out.insert(x);
    return out;
}

// Points whose symmetry fixes Y setwise. For nonempty Y the result is convex
// and x -> s_x(y0) embeds it into Y; both facts hold in every finite
// symetron and are verified here.
inline SubsetMask symmetrizer(const SymetronStructure& S, const SubsetMask& Y) {
    SubsetMask out = sym_between(S, Y, Y);
    if (!Y.empty()) {
        if (!is_convex(S, out))
            fail(ErrorKind::Precondition, "symmetrizer failed to be convex");
        int y0 = Y.first_member();
        SubsetMask image(S.order());
        for (int x : out.members()) {
            int v = S.s(y0, x);
            if (!Y.contains(v) || image.contains(v))
                fail(ErrorKind::Precondition, "symmetrizer does not embed into the set");
            image.insert(v);
        }
    }
    return out;
}

struct ConvexClosureResult {
    SubsetMask closure;
    int steps = 0;  // saturation rounds that added a point
};

// Least convex superset, by alternating saturation under symmetries and
// midpoints of current members.
inline ConvexClosureResult convex_closure(const SymetronStructure& S, const SubsetMask& Y) {
    SubsetMask current = Y;
    int steps = 0;
    while (true) {
        SubsetMask next = current;
        auto members = current.members();
        for (int x : members)
            for (int y : members) {
                next.insert(S.s(x, y));
                next.insert(S.m(x, y));
            }
        if (next == current) break;
        current = next;
        ++steps;
    }
    return {current, steps};
}

namespace detail {

inline std::vector<SubsetMask> enumerate_closed_sets_sym(const SymetronStructure& S, size_t cap) {
    int n = S.order();
    std::vector<SubsetMask> out;
    SubsetMask current = convex_closure(S, SubsetMask(n)).closure;
    out.push_back(current);
    while (true) {
        if (out.size() > cap)
            fail(ErrorKind::CapExceeded, "convex sets exceed cap " + std::to_string(cap));
        bool advanced = false;
        for (int i = n - 1; i >= 0; --i) {
            if (current.contains(i)) continue;
            SubsetMask seed(n);
            for (int j = 0; j < i; ++j)
                if (current.contains(j)) seed.insert(j);
            seed.insert(i);
            SubsetMask candidate = convex_closure(S, seed).closure;
            bool valid = true;
            for (int j = 0; j < i && valid; ++j)
                if (candidate.contains(j) && !current.contains(j)) valid = false;
            if (valid) {
                current = candidate;
                out.push_back(current);
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

}  // namespace detail

// All convex subsets, in lectic order of the convex-closure operator. Each
// returned set is re-verified against the triple equivalence convex <=>
// midpoint-closed <=> (empty or equal to its own symmetrizer).
inline std::vector<SubsetMask> enumerate_convex(const SymetronStructure& S,
                                                size_t cap = 1000000) {
    std::vector<SubsetMask> out = detail::enumerate_closed_sets_sym(S, cap);
    for (const SubsetMask& Y : out) {
        bool convex = is_convex(S, Y);
        bool mid = is_midpoint_closed(S, Y);
        bool own_sym = Y.empty() || symmetrizer(S, Y) == Y;
        if (!convex || !mid || !own_sym)
            fail(ErrorKind::Precondition, "enumerated set breaks the convexity equivalence");
    }
    return out;
}

// s_u(s_v(X)) pointwise: x -> s(x, v) then -> s(., u).
inline SubsetMask translate(const SymetronStructure& S, const SubsetMask& X, int u, int v) {
    return S.reflect(S.reflect(X, v), u);
}

// Greedy cover of the carrier by translates of a nonempty X: repeatedly picks
// the (u, v) pair adding the most uncovered points, ties broken by
// lexicographically least (u, v).
inline std::vector<std::pair<int, int>> cover_by_translates(const SymetronStructure& S,
                                                            const SubsetMask& X,
                                                            size_t cap = 1000000) {
    if (X.empty()) fail(ErrorKind::Precondition, "cover needs a nonempty set");
    int n = S.order();
    std::vector<std::pair<int, int>> chosen;
    SubsetMask covered(n);
    while (covered.count() < n) {
        if (chosen.size() >= cap)
            fail(ErrorKind::CapExceeded, "translate cover exceeds cap " + std::to_string(cap));
        int best_gain = 0;
        std::pair<int, int> best{-1, -1};
        SubsetMask best_translate(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                SubsetMask t = translate(S, X, u, v);
                int gain = 0;
                for (int x : t.members())
                    if (!covered.contains(x)) ++gain;
                if (gain > best_gain) {
                    best_gain = gain;
                    best = {u, v};
                    best_translate = t;
                }
            }
        if (best_gain == 0)
            fail(ErrorKind::Precondition, "translates stopped covering new points");
        chosen.push_back(best);
        covered = covered.union_with(best_translate);
    }
    return chosen;
}

// Decides whether a family of pairwise-disjoint convex sets covering A with A
// inside none of them exists, directly from the definition. Exponential in
// the number of convex sets; meant for small carriers.
inline bool indecomposable_by_definition(const SymetronStructure& S, const SubsetMask& A,
                                         size_t cap = 1000000) {
    if (A.count() <= 1) {
        // Any covering family must contain a member through A's single point;
        // that member contains A.
        return true;
    }
    std::vector<SubsetMask> candidates;
    for (const SubsetMask& X : enumerate_convex(S, cap)) {
        if (X.intersects(A) && !A.is_subset_of(X)) candidates.push_back(X);
    }
    // DFS for a pairwise-disjoint cover of A.
    std::vector<SubsetMask> chosen;
    auto search = [&](auto&& self, const SubsetMask& covered) -> bool {
        int a = -1;
        for (int x : A.members())
            if (!covered.contains(x)) {
                a = x;
                break;
            }
        if (a < 0) return true;  // A covered: decomposition found
        for (const SubsetMask& X : candidates) {
            if (!X.contains(a)) continue;
            bool disjoint = true;
            for (const SubsetMask& Y : chosen)
                if (X.intersects(Y)) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            chosen.push_back(X);
            if (self(self, covered.union_with(X))) return true;
            chosen.pop_back();
        }
        return false;
    };
    return !search(search, SubsetMask(S.order()));
}

// In a finite symetron all singletons are convex, so a set with two or more
// points decomposes into its singletons: indecomposable <=> |A| <= 1. On
// carriers of order <= 7 the closed form is cross-validated against the
// definitional search.
inline bool is_indecomposable(const SymetronStructure& S, const SubsetMask& A) {
    bool closed_form = A.count() <= 1;
    if (S.order() <= 7 && indecomposable_by_definition(S, A) != closed_form)
        fail(ErrorKind::Precondition, "indecomposability closed form disagrees with definition");
    return closed_form;
}

// Singleton partition for |A| >= 2, the trivial partition otherwise.
inline std::vector<SubsetMask> decompose_indecomposable(const SymetronStructure& S,
                                                        const SubsetMask& A) {
    std::vector<SubsetMask> parts;
    if (A.empty()) return parts;
    if (is_indecomposable(S, A)) {
        parts.push_back(A);
        return parts;
    }
    for (int x : A.members()) parts.push_back(SubsetMask::singleton(S.order(), x));
    return parts;
}

struct EllipticResult {
    SubsetMask closure;
    int steps = 0;
    bool complete = true;  // false when the step budget ran out
};

// Closure of the union of parts sharing a common point, tracking how many
// symmetry/midpoint saturation rounds were needed.
inline EllipticResult elliptic_generate(const SymetronStructure& S,
                                        const std::vector<SubsetMask>& parts, int max_steps) {
    SubsetMask common = SubsetMask::full(S.order());
    SubsetMask all(S.order());
    for (const SubsetMask& part : parts) {
        common = common.intersect_with(part);
        all = all.union_with(part);
    }
    if (!parts.empty() && common.empty())
        fail(ErrorKind::Precondition, "parts share no common point");

    SubsetMask current = all;
    int steps = 0;
    while (true) {
        SubsetMask next = current;
        auto members = current.members();
        for (int x : members)
            for (int y : members) {
                next.insert(S.s(x, y));
                next.insert(S.m(x, y));
            }
        if (next == current) return {current, steps, true};
        if (steps >= max_steps) return {current, steps, false};
        current = next;
        ++steps;
    }
}

}  // namespace kloops
