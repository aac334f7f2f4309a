#pragma once

#include <vector>

#include "kloops/loop.hpp"
#include "kloops/permutation.hpp"

namespace kloops {

// Left translation x -> a + x; a bijection by the Latin property.
inline Permutation left_translation(const LoopStructure& L, int a) {
    std::vector<int> image(L.order());
    for (int x = 0; x < L.order(); ++x) image[x] = L.add(a, x);
    return Permutation(std::move(image));
}

// Right translation x -> x + a.
inline Permutation right_translation(const LoopStructure& L, int a) {
    std::vector<int> image(L.order());
    for (int x = 0; x < L.order(); ++x) image[x] = L.add(x, a);
    return Permutation(std::move(image));
}

// Precession map: the permutation d with a + (b + c) = (a + b) + d(c) for all
// c, i.e. the composite inverse-left-translation of a+b after left
// translations by a then b. Fixes 0.
inline Permutation precession(const LoopStructure& L, int a, int b) {
    int ab = L.add(a, b);
    std::vector<int> image(L.order());
    for (int c = 0; c < L.order(); ++c) image[c] = L.left_div(ab, L.add(a, L.add(b, c)));
    Permutation d(std::move(image));
    if (d(0) != 0) fail(ErrorKind::Precondition, "precession does not fix 0");
    return d;
}

// Group generated by the left translations.
inline GeneratedGroup mlt_left(const LoopStructure& L, size_t cap = kDefaultGroupCap) {
    std::vector<Permutation> gens;
    gens.reserve(L.order());
    for (int a = 0; a < L.order(); ++a) gens.push_back(left_translation(L, a));
    return closure(gens, cap);
}

// Full multiplication group: left and right translations together.
inline GeneratedGroup mlt(const LoopStructure& L, size_t cap = kDefaultGroupCap) {
    std::vector<Permutation> gens;
    gens.reserve(2 * L.order());
    for (int a = 0; a < L.order(); ++a) gens.push_back(left_translation(L, a));
    for (int a = 0; a < L.order(); ++a) gens.push_back(right_translation(L, a));
    return closure(gens, cap);
}

// Group generated by all precession maps.
inline GeneratedGroup precession_group(const LoopStructure& L, size_t cap = kDefaultGroupCap) {
    std::vector<Permutation> gens;
    gens.reserve(static_cast<size_t>(L.order()) * L.order());
    for (int a = 0; a < L.order(); ++a)
        for (int b = 0; b < L.order(); ++b) gens.push_back(precession(L, a, b));
    return closure(gens, cap);
}

// The inner-mapping generator family r_{a,b} = r_a r_b r_{a+b}^{-1},
// g_{a,b} = g_a g_b g_{b+a}^{-1}, c_a = r_a g_a^{-1}, in that order, a-major.
// The formulas are in right-action order (leftmost factor applied first);
// that is the reading under which every generator fixes 0.
inline std::vector<Permutation> inner_generators(const LoopStructure& L) {
    int n = L.order();
    std::vector<Permutation> lefts, rights;
    for (int a = 0; a < n; ++a) {
        lefts.push_back(left_translation(L, a));
        rights.push_back(right_translation(L, a));
    }
    std::vector<Permutation> gens;
    gens.reserve(2 * static_cast<size_t>(n) * n + n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            gens.push_back(rights[L.add(a, b)].inverse() * rights[b] * rights[a]);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            gens.push_back(lefts[L.add(b, a)].inverse() * lefts[b] * lefts[a]);
    for (int a = 0; a < n; ++a) gens.push_back(lefts[a].inverse() * rights[a]);
    for (const Permutation& p : gens)
        if (p(0) != 0) fail(ErrorKind::Precondition, "inner generator does not fix 0");
    return gens;
}

inline GeneratedGroup inner_group(const LoopStructure& L, size_t cap = kDefaultGroupCap) {
    return closure(inner_generators(L), cap);
}

// Verifies that the inner-mapping group equals the stabilizer of 0 inside the
// full multiplication group, element by element.
inline bool stabilizer_check(const LoopStructure& L, size_t cap = kDefaultGroupCap) {
    GeneratedGroup m = mlt(L, cap);
    if (!m.complete)
        fail(ErrorKind::CapExceeded, "multiplication group exceeds cap " + std::to_string(cap));
    GeneratedGroup inner = inner_group(L, cap);
    if (!inner.complete)
        fail(ErrorKind::CapExceeded, "inner group exceeds cap " + std::to_string(cap));

    std::unordered_set<Permutation, PermutationHash> inner_set(inner.elements.begin(),
                                                               inner.elements.end());
    size_t stabilizer_size = 0;
    for (const Permutation& p : m.elements) {
        if (p(0) != 0) continue;
        ++stabilizer_size;
        if (!inner_set.contains(p)) return false;
    }
    return stabilizer_size == inner_set.size();
}

// True when every nontrivial element of the precession group fixes only 0.
inline bool is_fixed_point_free(const LoopStructure& L, size_t cap = kDefaultGroupCap) {
    GeneratedGroup d = precession_group(L, cap);
    if (!d.complete)
        fail(ErrorKind::CapExceeded, "precession group exceeds cap " + std::to_string(cap));
    for (const Permutation& p : d.elements) {
        if (p.is_identity()) continue;
        for (int x = 1; x < L.order(); ++x)
            if (p(x) == x) return false;
    }
    return true;
}

// In a fixed-point-free K-loop the precession of (a, b) only depends on the
// pair (a+b, b+a); verified by exhaustive quadruple scan.
inline bool precession_determinacy_check(const LoopStructure& L, size_t cap = kDefaultGroupCap) {
    if (!is_fixed_point_free(L, cap))
        fail(ErrorKind::Precondition, "determinacy check needs a fixed-point-free loop");
    int n = L.order();
    // Bucket by (a+b, b+a) and compare each precession to the bucket's first.
    std::vector<Permutation> representative(static_cast<size_t>(n) * n);
    std::vector<bool> seen(static_cast<size_t>(n) * n, false);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            size_t key = static_cast<size_t>(L.add(a, b)) * n + L.add(b, a);
            Permutation d = precession(L, a, b);
            if (!seen[key]) {
                seen[key] = true;
                representative[key] = d;
            } else if (!(representative[key] == d)) {
                return false;
            }
        }
    return true;
}

}  // namespace kloops
