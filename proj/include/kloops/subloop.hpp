#pragma once

#include <map>
#include <optional>
#include <vector>

#include "kloops/loop.hpp"
#include "kloops/translations.hpp"

namespace kloops {

inline SubsetMask add_elem_set(const LoopStructure& L, int a, const SubsetMask& C) {
    SubsetMask out(L.order());
    for (int c : C.members()) out.insert(L.add(a, c));
    return out;
}

inline SubsetMask add_set_elem(const LoopStructure& L, const SubsetMask& C, int a) {
    SubsetMask out(L.order());
    for (int c : C.members()) out.insert(L.add(c, a));
    return out;
}

inline SubsetMask add_set_set(const LoopStructure& L, const SubsetMask& A, const SubsetMask& B) {
    SubsetMask out(L.order());
    for (int a : A.members())
        for (int b : B.members()) out.insert(L.add(a, b));
    return out;
}

// Least superset of seed containing 0 and closed under addition and
// inversion. In a Bol loop this is exactly the generated subloop.
inline SubsetMask subloop_closure(const LoopStructure& L, const SubsetMask& seed) {
    if (!L.is_bol()) fail(ErrorKind::Precondition, "subloop closure needs a Bol loop");
    SubsetMask closed(L.order());
    closed.insert(0);
    closed = closed.union_with(seed);
    bool changed = true;
    while (changed) {
        changed = false;
        auto members = closed.members();
        for (int a : members) {
            int inv = L.neg(a);
            if (!closed.contains(inv)) {
                closed.insert(inv);
                changed = true;
            }
            for (int b : members) {
                int sum = L.add(a, b);
                if (!closed.contains(sum)) {
                    closed.insert(sum);
                    changed = true;
                }
            }
        }
    }
    return closed;
}

// 0 in C, and C stable under addition and inversion.
inline bool is_subloop(const LoopStructure& L, const SubsetMask& C) {
    if (!L.is_bol()) fail(ErrorKind::Precondition, "subloop test needs a Bol loop");
    if (!C.contains(0)) return false;
    auto members = C.members();
    for (int a : members) {
        if (!C.contains(L.neg(a))) return false;
        for (int b : members)
            if (!C.contains(L.add(a, b))) return false;
    }
    return true;
}

// Normality via the inner-mapping generators: C is setwise fixed by every
// generator. Generators suffice: a bijection of a finite set stabilizing C
// setwise has its inverse stabilize C too, so the whole generated group does.
inline bool is_normal(const LoopStructure& L, const SubsetMask& C) {
    if (!is_subloop(L, C)) fail(ErrorKind::NotSubloop, "normality test needs a subloop");
    for (const Permutation& p : inner_generators(L)) {
        for (int c : C.members())
            if (!C.contains(p(c))) return false;
    }
    return true;
}

// Normality via the three coset equations:
// b+C = C+b, (a+b)+C = a+(b+C), C+(a+b) = (C+a)+b.
inline bool is_normal_by_cosets(const LoopStructure& L, const SubsetMask& C) {
    if (!is_subloop(L, C)) fail(ErrorKind::NotSubloop, "normality test needs a subloop");
    int n = L.order();
    for (int b = 0; b < n; ++b)
        if (!(add_elem_set(L, b, C) == add_set_elem(L, C, b))) return false;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ab = L.add(a, b);
            if (!(add_elem_set(L, ab, C) == add_elem_set(L, a, add_elem_set(L, b, C))))
                return false;
            if (!(add_set_elem(L, C, ab) == add_set_elem(L, add_set_elem(L, C, a), b)))
                return false;
        }
    return true;
}

struct QuotientResult {
    std::vector<SubsetMask> blocks;  // cosets x + C, ordered by least member
    CayleyTable table;               // loop operation on block indices
    std::vector<int> projection;     // element -> block index
    LoopStructure loop;              // validated loop on the blocks
};

// Quotient by a normal subloop: cosets x+C with block(x) (+) block(y) =
// block(x+y). Well-definedness is validated exhaustively instead of trusting
// the normality theorem; a violation reports NotNormal.
inline QuotientResult quotient(const LoopStructure& L, const SubsetMask& C) {
    if (!is_normal(L, C)) fail(ErrorKind::NotNormal, "quotient needs a normal subloop");
    int n = L.order();

    std::vector<SubsetMask> cosets(n, SubsetMask(0));
    for (int x = 0; x < n; ++x) cosets[x] = add_elem_set(L, x, C);

    // Cosets must partition the carrier.
    std::vector<int> projection(n, -1);
    std::vector<SubsetMask> blocks;
    for (int x = 0; x < n; ++x) {
        if (projection[x] >= 0) continue;
        const SubsetMask& block = cosets[x];
        if (!block.contains(x)) fail(ErrorKind::NotNormal, "coset misses its representative");
        int id = static_cast<int>(blocks.size());
        for (int y : block.members()) {
            if (projection[y] >= 0 || !(cosets[y] == block))
                fail(ErrorKind::NotNormal, "cosets do not partition the carrier");
            projection[y] = id;
        }
        blocks.push_back(block);
    }

    // Block operation must be independent of representatives.
    int k = static_cast<int>(blocks.size());
    std::vector<int> cells(static_cast<size_t>(k) * k, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int& cell = cells[static_cast<size_t>(projection[x]) * k + projection[y]];
            int value = projection[L.add(x, y)];
            if (cell < 0)
                cell = value;
            else if (cell != value)
                fail(ErrorKind::NotNormal, "block operation is not well defined");
        }

    CayleyTable table(k, std::move(cells));
    LoopStructure loop = make_loop(table);
    return QuotientResult{std::move(blocks), std::move(table), std::move(projection),
                          std::move(loop)};
}

// Element map between two loops; validity means map(x+y) = map(x)+map(y)
// (which forces map(0) = 0 by cancellation).
struct LoopMorphism {
    const LoopStructure* source = nullptr;
    const LoopStructure* target = nullptr;
    std::vector<int> map;
};

inline bool check_homomorphism(const LoopMorphism& m) {
    int n = m.source->order();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (m.map[m.source->add(x, y)] != m.target->add(m.map[x], m.map[y])) return false;
    return true;
}

inline SubsetMask kernel(const LoopMorphism& m) {
    SubsetMask out(m.source->order());
    for (int x = 0; x < m.source->order(); ++x)
        if (m.map[x] == 0) out.insert(x);
    return out;
}

// First isomorphism in lexicographic extension order, or nullopt.
inline std::optional<std::vector<int>> find_isomorphism(const LoopStructure& L1,
                                                        const LoopStructure& L2) {
    if (L1.order() != L2.order()) return std::nullopt;
    std::optional<std::vector<int>> found;
    detail::MorphismSearch search(L1.table(), L2.table());
    search.run([&](const std::vector<int>& map) {
        found = map;
        return false;
    });
    return found;
}

// Elements whose precessions with x and -x are both trivial.
inline SubsetMask centralizer(const LoopStructure& L, int x) {
    if (!L.is_kloop()) fail(ErrorKind::Precondition, "centralizer needs a K-loop");
    int n = L.order();
    int nx = L.neg(x);
    SubsetMask out(n);
    for (int b = 0; b < n; ++b)
        if (precession(L, x, b).is_identity() && precession(L, nx, b).is_identity())
            out.insert(b);
    return out;
}

// Members of the centralizer whose precession with every other member is
// trivial.
inline SubsetMask center_of_centralizer(const LoopStructure& L, int x) {
    SubsetMask cent = centralizer(L, x);
    SubsetMask out(L.order());
    auto members = cent.members();
    for (int b : members) {
        bool central = true;
        for (int b2 : members)
            if (!precession(L, b, b2).is_identity()) {
                central = false;
                break;
            }
        if (central) out.insert(b);
    }
    return out;
}

// Every inner-mapping generator (hence every inner mapping) is a loop
// automorphism.
inline bool is_automorphic(const LoopStructure& L) {
    int n = L.order();
    for (const Permutation& p : inner_generators(L)) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (p(L.add(x, y)) != L.add(p(x), p(y))) return false;
    }
    return true;
}

namespace detail {

// Ganter-style next-closure enumeration of the closed sets of an arbitrary
// closure operator on subsets of [0, n), in lectic order.
inline std::vector<SubsetMask> enumerate_closed_sets(int n, auto&& close, size_t cap,
                                                     const char* what) {
    std::vector<SubsetMask> out;
    SubsetMask current = close(SubsetMask(n));
    out.push_back(current);
    while (true) {
        if (out.size() > cap)
            fail(ErrorKind::CapExceeded, std::string(what) + " exceed cap " + std::to_string(cap));
        bool advanced = false;
        for (int i = n - 1; i >= 0; --i) {
            if (current.contains(i)) continue;
            SubsetMask seed(n);
            for (int j = 0; j < i; ++j)
                if (current.contains(j)) seed.insert(j);
            seed.insert(i);
            SubsetMask candidate = close(seed);
            // Lectic validity: nothing new below i.
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

// Complete subloop lattice via closed-set enumeration of subloop_closure.
inline std::vector<SubsetMask> enumerate_subloops(const LoopStructure& L,
                                                  size_t cap = kDefaultGroupCap) {
    return detail::enumerate_closed_sets(
        L.order(), [&](const SubsetMask& s) { return subloop_closure(L, s); }, cap, "subloops");
}

// The sub-table induced on a subloop, with its members re-indexed 0..k-1 in
// ascending carrier order (0 stays 0). Returns the loop and the member list.
struct InducedSubloop {
    LoopStructure loop;
    std::vector<int> carrier;  // sub-index -> ambient element
};

inline InducedSubloop induced_subloop(const LoopStructure& L, const SubsetMask& C) {
    if (!is_subloop(L, C)) fail(ErrorKind::NotSubloop, "induced table needs a subloop");
    std::vector<int> carrier = C.members();
    int k = static_cast<int>(carrier.size());
    std::vector<int> position(L.order(), -1);
    for (int i = 0; i < k; ++i) position[carrier[i]] = i;
    std::vector<int> cells(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            cells[static_cast<size_t>(i) * k + j] = position[L.add(carrier[i], carrier[j])];
    return {make_loop(CayleyTable(k, std::move(cells))), std::move(carrier)};
}

}  // namespace kloops
