#pragma once

#include <array>
#include <optional>
#include <vector>

#include "kloops/permutation.hpp"
#include "kloops/table.hpp"

namespace kloops {

// Validated loop on 0..n-1 with identity canonicalized to 0. All axiom flags
// are computed once, exhaustively, at construction.
class LoopStructure {
public:
    friend LoopStructure make_loop(const CayleyTable& t);

    int order() const { return table_.order(); }
    const CayleyTable& table() const { return table_; }

    int add(int x, int y) const { return table_.at(x, y); }

    // Unique solutions of x + a = b and a + y = b.
    int left_div(int a, int b) const { return left_div_[static_cast<size_t>(a) * order() + b]; }
    int right_div(int b, int a) const { return right_div_[static_cast<size_t>(a) * order() + b]; }

    int left_inverse(int a) const { return left_inverse_[a]; }
    int right_inverse(int a) const { return right_inverse_[a]; }

    bool has_two_sided_inverses() const { return two_sided_inverses_; }

    // The two-sided inverse -a; guaranteed to exist when the loop is Bol.
    int neg(int a) const {
        if (!two_sided_inverses_)
            fail(ErrorKind::Precondition, "left and right inverses differ, -a is ambiguous");
        return left_inverse_[a];
    }

    bool is_bol() const { return is_bol_; }
    bool is_aip() const { return is_aip_; }
    bool is_kloop() const { return is_bol_ && is_aip_; }
    bool is_uniquely_2_divisible() const { return is_u2d_; }
    bool is_associative() const { return is_associative_; }

    // A triple violating associativity, if one exists.
    std::optional<std::array<int, 3>> nonassociative_witness() const {
        return nonassoc_witness_;
    }

    // The unique y with y + y = x.
    int half(int x) const {
        if (!is_u2d_) fail(ErrorKind::NotTwoDivisible, "doubling is not a bijection");
        return half_[x];
    }

    bool operator==(const LoopStructure& other) const { return table_ == other.table_; }

private:
    LoopStructure() = default;

    CayleyTable table_;
    std::vector<int> left_div_;   // left_div[a*n+b]  = the y with a + y = b
    std::vector<int> right_div_;  // right_div[a*n+b] = the x with x + a = b
    std::vector<int> left_inverse_, right_inverse_;
    std::vector<int> half_;
    bool two_sided_inverses_ = false;
    bool is_bol_ = false, is_aip_ = false, is_u2d_ = false, is_associative_ = false;
    std::optional<std::array<int, 3>> nonassoc_witness_;
};

// Validates the Latin property and identity, canonicalizes the identity to
// index 0, precomputes division/inverse tables and all axiom flags.
inline LoopStructure make_loop(const CayleyTable& input) {
    int n = input.order();
    // Latin check before identity search so a malformed square is reported as such.
    for (int x = 0; x < n; ++x) {
        std::vector<bool> row_seen(n, false), col_seen(n, false);
        for (int y = 0; y < n; ++y) {
            if (row_seen[input.at(x, y)])
                fail(ErrorKind::NotLatin, "row " + std::to_string(x) + " repeats entry " +
                                              std::to_string(input.at(x, y)));
            if (col_seen[input.at(y, x)])
                fail(ErrorKind::NotLatin, "column " + std::to_string(x) + " repeats entry " +
                                              std::to_string(input.at(y, x)));
            row_seen[input.at(x, y)] = true;
            col_seen[input.at(y, x)] = true;
        }
    }

    LoopStructure L;
    L.table_ = canonicalize(input);
    const CayleyTable& t = L.table_;

    L.left_div_.assign(static_cast<size_t>(n) * n, -1);
    L.right_div_.assign(static_cast<size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
        for (int y = 0; y < n; ++y) {
            L.left_div_[static_cast<size_t>(a) * n + t.at(a, y)] = y;
            L.right_div_[static_cast<size_t>(a) * n + t.at(y, a)] = y;
        }

    L.left_inverse_.resize(n);
    L.right_inverse_.resize(n);
    for (int a = 0; a < n; ++a) {
        L.left_inverse_[a] = L.right_div_[static_cast<size_t>(a) * n + 0];
        L.right_inverse_[a] = L.left_div_[static_cast<size_t>(a) * n + 0];
    }
    L.two_sided_inverses_ = L.left_inverse_ == L.right_inverse_;

    L.is_bol_ = true;
    L.is_associative_ = true;
    for (int a = 0; a < n && (L.is_bol_ || L.is_associative_); ++a)
        for (int b = 0; b < n && (L.is_bol_ || L.is_associative_); ++b) {
            int ab = t.at(a, b);
            int aba = t.at(a, t.at(b, a));
            for (int c = 0; c < n; ++c) {
                if (t.at(a, t.at(b, t.at(a, c))) != t.at(aba, c)) {
                    L.is_bol_ = false;
                    if (!L.is_associative_) break;
                }
                if (t.at(ab, c) != t.at(a, t.at(b, c))) {
                    L.is_associative_ = false;
                    if (!L.nonassoc_witness_) L.nonassoc_witness_ = {{a, b, c}};
                    if (!L.is_bol_) break;
                }
            }
        }
    // AIP uses the two-sided inverse; one-sided inverses mean not-AIP, not an error.
    L.is_aip_ = L.two_sided_inverses_;
    if (L.is_aip_) {
        for (int a = 0; a < n && L.is_aip_; ++a)
            for (int b = 0; b < n; ++b)
                if (L.left_inverse_[t.at(a, b)] !=
                    t.at(L.left_inverse_[a], L.left_inverse_[b])) {
                    L.is_aip_ = false;
                    break;
                }
    }

    std::vector<int> half(n, -1);
    L.is_u2d_ = true;
    for (int x = 0; x < n; ++x) {
        int d = t.at(x, x);
        if (half[d] >= 0) {
            L.is_u2d_ = false;
            break;
        }
        half[d] = x;
    }
    if (L.is_u2d_) L.half_ = std::move(half);
    return L;
}

inline bool is_bol(const LoopStructure& L) { return L.is_bol(); }
inline bool is_aip(const LoopStructure& L) { return L.is_aip(); }
inline bool is_kloop(const LoopStructure& L) { return L.is_kloop(); }
inline bool is_uniquely_2_divisible(const LoopStructure& L) {
    return L.is_uniquely_2_divisible();
}
inline int half(const LoopStructure& L, int x) { return L.half(x); }

// a * n by iterated addition, left accumulation a + (a + ...). For Bol loops
// both accumulation orders agree; otherwise a disagreement for the requested
// (a, n) raises PowerAmbiguous.
inline int power(const LoopStructure& L, int a, long long n) {
    int base = a;
    if (n < 0) {
        if (L.left_inverse(a) != L.right_inverse(a))
            fail(ErrorKind::PowerAmbiguous,
                 "negative power of a=" + std::to_string(a) + " without a unique inverse");
        base = L.left_inverse(a);
        n = -n;
    }
    int left_acc = 0, right_acc = 0;
    for (long long k = 0; k < n; ++k) {
        left_acc = L.add(base, left_acc);
        right_acc = L.add(right_acc, base);
    }
    if (left_acc != right_acc) {
        if (L.is_bol())
            fail(ErrorKind::Precondition, "Bol loop with divergent power accumulations");
        fail(ErrorKind::PowerAmbiguous, "left and right accumulations of a*" + std::to_string(n) +
                                            " disagree for a=" + std::to_string(a));
    }
    return left_acc;
}

// Least k > 0 with a*k = 0. Requires Bol so powers are well defined.
inline int element_order(const LoopStructure& L, int a) {
    if (!L.is_bol()) fail(ErrorKind::Precondition, "element order needs a Bol loop");
    int p = a, k = 1;
    while (p != 0) {
        p = L.add(a, p);
        ++k;
        if (k > L.order())
            fail(ErrorKind::Precondition, "power orbit did not return to 0");
    }
    return k;
}

inline bool is_uniquely_2_divisible_table(const CayleyTable& t) {
    std::vector<bool> hit(t.order(), false);
    for (int x = 0; x < t.order(); ++x) {
        if (hit[t.at(x, x)]) return false;
        hit[t.at(x, x)] = true;
    }
    return true;
}

namespace detail {

// Backtracking search for table isomorphisms src -> dst with f(0) = 0.
// Branches on the smallest unmapped source element with candidate targets in
// ascending order, then propagates f(x+y) = f(x)+f(y) to closure; the first
// witness found is deterministic under this order. Pruning: left/right
// translation cycle types must match.
class MorphismSearch {
public:
    MorphismSearch(const CayleyTable& src, const CayleyTable& dst) : src_(src), dst_(dst) {
        n_ = src.order();
        src_print_ = fingerprints(src);
        dst_print_ = fingerprints(dst);
    }

    // Calls sink(map) for every isomorphism; sink returns false to stop early.
    void run(auto&& sink) {
        if (dst_.order() != n_) return;
        std::vector<int> map(n_, -1), used(n_, 0);
        map[0] = 0;
        used[0] = 1;
        extend(map, used, sink);
    }

private:
    using Fingerprint = std::pair<std::vector<int>, std::vector<int>>;

    std::vector<Fingerprint> fingerprints(const CayleyTable& t) {
        std::vector<Fingerprint> out(t.order());
        for (int a = 0; a < t.order(); ++a) {
            std::vector<int> left(t.order()), right(t.order());
            for (int x = 0; x < t.order(); ++x) {
                left[x] = t.at(a, x);
                right[x] = t.at(x, a);
            }
            out[a] = {Permutation(left).cycle_type(), Permutation(right).cycle_type()};
        }
        return out;
    }

    // Forces consequences of the current partial map; returns false on clash.
    // `trail` records assignments made here so the caller can undo them.
    bool propagate(std::vector<int>& map, std::vector<int>& used, std::vector<int>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int x = 0; x < n_; ++x) {
                if (map[x] < 0) continue;
                for (int y = 0; y < n_; ++y) {
                    if (map[y] < 0) continue;
                    int s = src_.at(x, y);
                    int image = dst_.at(map[x], map[y]);
                    if (map[s] < 0) {
                        if (used[image] || src_print_[s] != dst_print_[image]) return false;
                        map[s] = image;
                        used[image] = 1;
                        trail.push_back(s);
                        changed = true;
                    } else if (map[s] != image) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    bool extend(std::vector<int>& map, std::vector<int>& used, auto&& sink) {
        int next = -1;
        for (int x = 0; x < n_; ++x)
            if (map[x] < 0) {
                next = x;
                break;
            }
        if (next < 0) {
            std::vector<int> witness = map;
            return sink(witness);
        }
        for (int target = 0; target < n_; ++target) {
            if (used[target] || src_print_[next] != dst_print_[target]) continue;
            std::vector<int> trail;
            map[next] = target;
            used[target] = 1;
            trail.push_back(next);
            bool keep_going = true;
            if (propagate(map, used, trail)) keep_going = extend(map, used, sink);
            for (int x : trail) {
                used[map[x]] = 0;
                map[x] = -1;
            }
            if (!keep_going) return false;
        }
        return true;
    }

    const CayleyTable& src_;
    const CayleyTable& dst_;
    int n_;
    std::vector<Fingerprint> src_print_, dst_print_;
};

}  // namespace detail

// All bijections f with f(x+y) = f(x)+f(y), via backtracking with
// partial-image propagation. Throws CapExceeded past `cap` automorphisms.
inline std::vector<Permutation> automorphisms(const LoopStructure& L, size_t cap) {
    std::vector<Permutation> out;
    detail::MorphismSearch search(L.table(), L.table());
    bool capped = false;
    search.run([&](const std::vector<int>& map) {
        if (out.size() >= cap) {
            capped = true;
            return false;
        }
        out.emplace_back(map);
        return true;
    });
    if (capped)
        fail(ErrorKind::CapExceeded, "more than " + std::to_string(cap) + " automorphisms");
    return out;
}

// Every involutive automorphism whose only fixed point is 0 must be negation.
// Vacuously true when no such automorphism exists.
inline bool check_involutive_fpf_is_neg(const LoopStructure& L, size_t cap = kDefaultGroupCap) {
    if (!L.is_kloop() || !L.is_uniquely_2_divisible())
        fail(ErrorKind::Precondition, "check needs a uniquely 2-divisible K-loop");
    for (const Permutation& f : automorphisms(L, cap)) {
        bool involutive = true, fpf = true;
        for (int x = 0; x < L.order() && involutive; ++x) involutive = f(f(x)) == x;
        for (int x = 1; x < L.order() && fpf; ++x) fpf = f(x) != x;
        if (!involutive || !fpf || f.is_identity()) continue;
        for (int x = 0; x < L.order(); ++x)
            if (f(x) != L.neg(x)) return false;
    }
    return true;
}

}  // namespace kloops
