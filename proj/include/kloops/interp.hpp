#pragma once

#include <vector>

#include "kloops/loop.hpp"
#include "kloops/subloop.hpp"
#include "kloops/symetron.hpp"

namespace kloops {

// Raw reflection table s(x, y) = y + (-x + y) of a loop with two-sided
// inverses; no symetron validation happens here.
inline CayleyTable symetron_table_of_kloop(const LoopStructure& L) {
    return CayleyTable::from_function(
        L.order(), [&](int x, int y) { return L.add(y, L.add(L.neg(x), y)); });
}

// A uniquely 2-divisible K-loop is a symetron under s(x,y) = y + (-x + y).
inline SymetronStructure kloop_to_symetron(const LoopStructure& L) {
    if (!L.is_kloop() || !L.is_uniquely_2_divisible())
        fail(ErrorKind::Precondition, "conversion needs a uniquely 2-divisible K-loop");
    return make_symetron(symetron_table_of_kloop(L));
}

// Raw loop table x (+a) y = s(s(y, a), m(x, a)) on the original labels, with
// neutral element a.
inline CayleyTable based_loop_table(const SymetronStructure& S, int a) {
    return CayleyTable::from_function(
        S.order(), [&](int x, int y) { return S.s(S.s(y, a), S.m(x, a)); });
}

struct BasedLoop {
    LoopStructure loop;           // validated, neutral canonicalized to index 0
    std::vector<int> relabeling;  // original label -> canonical index
    CayleyTable raw;              // original labels, neutral element = basepoint
};

// Loop structure induced on the symetron at a basepoint. The result is a
// uniquely 2-divisible K-loop; the original labeling is kept in `raw` and the
// canonical relabeling (basepoint -> 0) is recorded.
inline BasedLoop symetron_to_kloop(const SymetronStructure& S, int a) {
    if (a < 0 || a >= S.order()) fail(ErrorKind::Precondition, "basepoint out of range");
    CayleyTable raw = based_loop_table(S, a);
    auto canonical = canonicalize_with_map(raw);
    LoopStructure loop = make_loop(canonical.table);
    if (!loop.is_kloop() || !loop.is_uniquely_2_divisible())
        fail(ErrorKind::Precondition, "based loop is not a uniquely 2-divisible K-loop");
    return {std::move(loop), std::move(canonical.relabeling), std::move(raw)};
}

// Midpoint of a and b computed inside the loop:
// z = s(half(s(b, half(a))), half(a)) with s(x,y) = y + (-x + y).
inline int kloop_midpoint(const LoopStructure& L, int a, int b) {
    if (!L.is_kloop() || !L.is_uniquely_2_divisible())
        fail(ErrorKind::Precondition, "loop midpoint needs a uniquely 2-divisible K-loop");
    auto s = [&](int x, int y) { return L.add(y, L.add(L.neg(x), y)); };
    int ha = L.half(a);
    return s(L.half(s(b, ha)), ha);
}

// s_u is a loop isomorphism from the loop based at a to the loop based at
// s(a, u); verified exhaustively.
inline bool check_su_isomorphism(const SymetronStructure& S, int a, int u) {
    CayleyTable at_a = based_loop_table(S, a);
    CayleyTable at_b = based_loop_table(S, S.s(a, u));
    for (int x = 0; x < S.order(); ++x)
        for (int y = 0; y < S.order(); ++y)
            if (S.s(at_a.at(x, y), u) != at_b.at(S.s(x, u), S.s(y, u))) return false;
    return true;
}

// x -> m(x, a) is a symetron isomorphism from the symetron re-derived from
// the loop based at a back to the original one; verified exhaustively.
inline bool check_midpoint_isomorphism(const SymetronStructure& S, int a) {
    CayleyTable at_a = based_loop_table(S, a);
    int n = S.order();
    // Negation in the based loop: the inverse of x with respect to neutral a.
    std::vector<int> neg(n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (at_a.at(x, y) == a) {
                neg[x] = y;
                break;
            }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            // Derived reflection on the original labels: y (+a) (-x (+a) y).
            int derived = at_a.at(y, at_a.at(neg[x], y));
            if (S.m(derived, a) != S.s(S.m(x, a), S.m(y, a))) return false;
        }
    return true;
}

struct RoundtripResult {
    bool equal = false;       // table-for-table equality with the original
    bool isomorphic = false;  // an isomorphism witness exists
};

// Loop -> symetron -> loop at basepoint 0, compared with the original.
inline RoundtripResult roundtrip_check(const LoopStructure& L) {
    SymetronStructure S = kloop_to_symetron(L);
    BasedLoop back = symetron_to_kloop(S, 0);
    RoundtripResult result;
    result.equal = back.raw == L.table();
    result.isomorphic = find_isomorphism(L, back.loop).has_value();
    return result;
}

}  // namespace kloops
