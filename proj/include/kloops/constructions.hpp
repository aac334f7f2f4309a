#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "kloops/loop.hpp"
#include "kloops/table.hpp"

namespace kloops {

// Associative Cayley table with two-sided identity and inverses, validated
// exhaustively at construction.
struct GroupTable {
    CayleyTable table;
    int identity = 0;
    std::vector<int> inverse;

    int order() const { return table.order(); }
    int mul(int x, int y) const { return table.at(x, y); }
};

inline GroupTable make_group(const CayleyTable& t) {
    int n = t.order();
    int e = find_identity(t);
    if (e < 0) fail(ErrorKind::NotGroup, "no two-sided identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (t.at(t.at(a, b), c) != t.at(a, t.at(b, c)))
                    fail(ErrorKind::NotGroup, "associativity fails at (" + std::to_string(a) +
                                                  "," + std::to_string(b) + "," +
                                                  std::to_string(c) + ")");
    std::vector<int> inverse(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (t.at(a, b) == e && t.at(b, a) == e) {
                inverse[a] = b;
                break;
            }
        if (inverse[a] < 0)
            fail(ErrorKind::NotGroup, "element " + std::to_string(a) + " has no inverse");
    }
    return {t, e, std::move(inverse)};
}

// Z/n addition; odd order keeps doubling bijective.
inline LoopStructure cyclic_kloop(int n) {
    if (n < 1 || n % 2 == 0) fail(ErrorKind::EvenOrder, "order must be odd and positive");
    return make_loop(CayleyTable::from_function(n, [&](int x, int y) { return (x + y) % n; }));
}

namespace detail {

// Inverse of the squaring map, or empty if squaring is not a bijection.
inline std::vector<int> square_root_table(const GroupTable& G) {
    std::vector<int> root(G.order(), -1);
    for (int x = 0; x < G.order(); ++x) {
        int sq = G.mul(x, x);
        if (root[sq] >= 0) return {};
        root[sq] = x;
    }
    return root;
}

}  // namespace detail

// The half-sandwich loop x + y = sqrt(x) * y * sqrt(x) of a group with
// bijective squaring. Always a uniquely 2-divisible K-loop.
inline LoopStructure kloop_from_group(const GroupTable& G) {
    std::vector<int> root = detail::square_root_table(G);
    if (root.empty())
        fail(ErrorKind::NotTwoDivisibleGroup, "squaring is not a bijection on the group");
    LoopStructure L = make_loop(CayleyTable::from_function(
        G.order(), [&](int x, int y) { return G.mul(G.mul(root[x], y), root[x]); }));
    if (!L.is_kloop() || !L.is_uniquely_2_divisible())
        fail(ErrorKind::Precondition, "half-sandwich loop failed validation");
    return L;
}

struct TwistedSubloop {
    LoopStructure loop;
    std::vector<int> carrier;  // loop index -> group element index
};

// K-loop on X = { alpha(g) * g^-1 } for an involutive automorphism alpha,
// using the half-sandwich operation with square roots taken inside X.
// Closure of the operation on X and bijectivity of squaring on X are runtime
// checks, not assumptions.
inline TwistedSubloop kloop_from_involution(const GroupTable& G, const std::vector<int>& alpha) {
    int n = G.order();
    if (static_cast<int>(alpha.size()) != n)
        fail(ErrorKind::NotAutomorphism, "map size does not match group order");
    std::vector<bool> hit(n, false);
    for (int v : alpha) {
        if (v < 0 || v >= n || hit[v]) fail(ErrorKind::NotAutomorphism, "map is not a bijection");
        hit[v] = true;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (alpha[G.mul(x, y)] != G.mul(alpha[x], alpha[y]))
                fail(ErrorKind::NotAutomorphism, "map does not preserve the product");
    for (int x = 0; x < n; ++x)
        if (alpha[alpha[x]] != x) fail(ErrorKind::NotInvolutive, "map composed with itself is not the identity");

    std::vector<bool> in_set(n, false);
    for (int g = 0; g < n; ++g) in_set[G.mul(alpha[g], G.inverse[g])] = true;
    std::vector<int> members;
    for (int x = 0; x < n; ++x)
        if (in_set[x]) members.push_back(x);

    int k = static_cast<int>(members.size());
    std::vector<int> position(n, -1);
    for (int i = 0; i < k; ++i) position[members[i]] = i;

    std::vector<int> root_in_set(k, -1);  // sub-index of sqrt within X
    {
        std::vector<int> root_of(k, -1);
        for (int i = 0; i < k; ++i) {
            int sq = G.mul(members[i], members[i]);
            if (position[sq] < 0)
                fail(ErrorKind::NotTwoDivisibleSet, "squaring leaves the twisted set");
            if (root_of[position[sq]] >= 0)
                fail(ErrorKind::NotTwoDivisibleSet, "squaring is not injective on the twisted set");
            root_of[position[sq]] = i;
        }
        root_in_set = std::move(root_of);
    }

    std::vector<int> cells(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
        int r = members[root_in_set[i]];
        for (int j = 0; j < k; ++j) {
            int value = G.mul(G.mul(r, members[j]), r);
            if (position[value] < 0)
                fail(ErrorKind::NotClosed, "half-sandwich leaves the twisted set");
            cells[static_cast<size_t>(i) * k + j] = position[value];
        }
    }

    auto canonical = canonicalize_with_map(CayleyTable(k, std::move(cells)));
    LoopStructure L = make_loop(canonical.table);
    if (!L.is_kloop() || !L.is_uniquely_2_divisible())
        fail(ErrorKind::Precondition, "twisted-set loop failed validation");
    std::vector<int> carrier(k);
    for (int i = 0; i < k; ++i) carrier[canonical.relabeling[i]] = members[i];
    return {std::move(L), std::move(carrier)};
}

// Order-27 group of triples (a, b, c) over Z3 with
// (a,b,c) * (a',b',c') = (a+a', b+b', c+c'+a*b'); element index = 9a+3b+c.
// Nonabelian, exponent 3.
inline GroupTable heisenberg27() {
    auto mul = [](int x, int y) {
        int a1 = x / 9, b1 = (x / 3) % 3, c1 = x % 3;
        int a2 = y / 9, b2 = (y / 3) % 3, c2 = y % 3;
        return 9 * ((a1 + a2) % 3) + 3 * ((b1 + b2) % 3) + (c1 + c2 + a1 * b2) % 3;
    };
    return make_group(CayleyTable::from_function(27, mul));
}

// Componentwise operation on pairs, row-major pair encoding
// (x1, x2) -> x1 * order(L2) + x2.
inline LoopStructure direct_product(const LoopStructure& L1, const LoopStructure& L2) {
    int n1 = L1.order(), n2 = L2.order();
    return make_loop(CayleyTable::from_function(n1 * n2, [&](int x, int y) {
        return L1.add(x / n2, y / n2) * n2 + L2.add(x % n2, y % n2);
    }));
}

namespace detail {

// Backtracking enumerator for loop tables (identity fixed at 0) satisfying
// the Bol identity a+(b+(a+c)) = (a+(b+a))+c and the automorphic inverse
// property. Cells are branched in row-major order; after each assignment the
// Bol chains are driven to a fixpoint, forcing entries whose value is pinned
// by one fully evaluated side.
class KloopEnumerator {
public:
    explicit KloopEnumerator(int n) : n_(n), cells_(n * n, -1) {
        row_pos_.assign(n, std::vector<int>(n, -1));
        col_pos_.assign(n, std::vector<int>(n, -1));
        for (int i = 0; i < n; ++i) {
            set_cell(0, i, i);
            if (i) set_cell(i, 0, i);
        }
        trail_.clear();  // the identity row/column is permanent
    }

    void run(auto&& sink) {
        sink_ = sink;
        search(n_ + 1);
    }

private:
    int at(int r, int c) const { return cells_[r * n_ + c]; }

    void set_cell(int r, int c, int v) {
        cells_[r * n_ + c] = v;
        row_pos_[r][v] = c;
        col_pos_[c][v] = r;
        trail_.push_back(r * n_ + c);
    }

    // False on Latin conflict or contradiction with an existing entry.
    bool assign(int r, int c, int v) {
        int cur = at(r, c);
        if (cur >= 0) return cur == v;
        if (row_pos_[r][v] >= 0 || col_pos_[c][v] >= 0) return false;
        set_cell(r, c, v);
        return true;
    }

    void undo_to(size_t mark) {
        while (trail_.size() > mark) {
            int idx = trail_.back();
            trail_.pop_back();
            int r = idx / n_, c = idx % n_, v = cells_[idx];
            cells_[idx] = -1;
            row_pos_[r][v] = -1;
            col_pos_[c][v] = -1;
        }
    }

    // Left inverse of a (x with x+a=0) if placed, else -1.
    int left_inv(int a) const { return col_pos_[a][0]; }
    int right_inv(int a) const { return row_pos_[a][0]; }

    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            size_t before = trail_.size();
            // b = 0 contributes the left-alternative law a+(a+c) = (a+a)+c;
            // a = 0 and c = 0 are vacuous.
            for (int a = 1; a < n_; ++a)
                for (int b = 0; b < n_; ++b)
                    for (int c = 1; c < n_; ++c) {
                        int t1 = at(a, c);
                        int u1 = at(b, a);
                        if (t1 < 0 && u1 < 0) continue;
                        int t2 = t1 < 0 ? -1 : at(b, t1);
                        int t3 = t2 < 0 ? -1 : at(a, t2);
                        int u2 = u1 < 0 ? -1 : at(a, u1);
                        int u3 = u2 < 0 ? -1 : at(u2, c);
                        if (t3 >= 0 && u3 >= 0) {
                            if (t3 != u3) return false;
                        } else if (t3 >= 0) {
                            if (u2 >= 0) {
                                if (!assign(u2, c, t3)) return false;
                            } else if (u1 >= 0 && col_pos_[c][t3] >= 0) {
                                if (!assign(a, u1, col_pos_[c][t3])) return false;
                            }
                        } else if (u3 >= 0) {
                            if (t2 >= 0) {
                                if (!assign(a, t2, u3)) return false;
                            } else if (t1 >= 0 && row_pos_[a][u3] >= 0) {
                                if (!assign(b, t1, row_pos_[a][u3])) return false;
                            }
                        }
                    }
            // Bol forces two-sided inverses; AIP forces -(a+b) = -a + -b.
            for (int a = 1; a < n_; ++a) {
                int li = left_inv(a), ri = right_inv(a);
                if (li >= 0 && ri >= 0 && li != ri) return false;
                if (li >= 0 && ri < 0 && !assign(a, li, 0)) return false;
                if (ri >= 0 && li < 0 && !assign(ri, a, 0)) return false;
            }
            for (int a = 1; a < n_; ++a) {
                int ia = left_inv(a);
                if (ia < 0) continue;
                for (int b = 1; b < n_; ++b) {
                    int ib = left_inv(b);
                    if (ib < 0) continue;
                    int ab = at(a, b);
                    if (ab < 0) continue;
                    int iab = left_inv(ab);
                    int rhs = at(ia, ib);
                    if (iab >= 0 && !assign(ia, ib, iab)) return false;
                    if (rhs >= 0 && (!assign(rhs, ab, 0) || !assign(ab, rhs, 0))) return false;
                }
            }
            changed = trail_.size() > before;
        }
        return true;
    }

    void search(int from) {
        int cell = -1;
        for (int idx = from; idx < n_ * n_; ++idx)
            if (cells_[idx] < 0) {
                cell = idx;
                break;
            }
        if (cell < 0) {
            if (final_check()) sink_(cells_);
            return;
        }
        int r = cell / n_, c = cell % n_;
        for (int v = 0; v < n_; ++v) {
            if (row_pos_[r][v] >= 0 || col_pos_[c][v] >= 0) continue;
            size_t mark = trail_.size();
            set_cell(r, c, v);
            if (propagate()) search(cell + 1);
            undo_to(mark);
        }
    }

    // Full Bol + AIP verification of a completed table.
    bool final_check() const {
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                int aba = at(a, at(b, a));
                for (int c = 0; c < n_; ++c)
                    if (at(a, at(b, at(a, c))) != at(aba, c)) return false;
            }
        for (int a = 0; a < n_; ++a)
            if (left_inv(a) != right_inv(a)) return false;
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                if (left_inv(at(a, b)) != at(left_inv(a), left_inv(b))) return false;
        return true;
    }

    int n_;
    std::vector<int> cells_;
    std::vector<std::vector<int>> row_pos_, col_pos_;
    std::vector<int> trail_;
    std::function<void(const std::vector<int>&)> sink_;
};

// Lexicographically least relabeling of a loop table over all permutations
// fixing 0, compared row-major.
inline std::vector<int> canonical_form(int n, const std::vector<int>& cells) {
    std::vector<int> perm(n), inv(n), best = cells, scratch(cells.size());
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin() + 1, perm.end())) {
        for (int i = 0; i < n; ++i) inv[perm[i]] = i;
        bool better = false, worse = false;
        // Row 0 and column 0 are the identity row/column for every
        // relabeling, so comparison starts at cell (1, 1).
        for (int i = 1; i < n && !worse; ++i)
            for (int j = 1; j < n; ++j) {
                int idx = i * n + j;
                int val = perm[cells[inv[i] * n + inv[j]]];
                if (!better) {
                    if (val > best[idx]) {
                        worse = true;
                        break;
                    }
                    if (val < best[idx]) better = true;
                }
                scratch[idx] = val;
            }
        if (better && !worse) {
            best = scratch;
            for (int i = 0; i < n; ++i) {
                best[i] = i;
                best[i * static_cast<size_t>(n)] = i;
            }
        }
    }
    return best;
}

}  // namespace detail

// All Bol + AIP loops of order n, one canonical representative per
// isomorphism class (lexicographically least table over relabelings fixing
// the identity), sorted. Row-by-row backtracking with Bol/AIP propagation.
inline std::vector<CayleyTable> enumerate_kloops(int n, size_t cap = 1000000,
                                                 int max_order = 8) {
    if (n < 1 || n > max_order)
        fail(ErrorKind::OrderTooLarge,
             "enumeration handles orders 1.." + std::to_string(max_order));
    std::set<std::vector<int>> canon;
    detail::KloopEnumerator enumerator(n);
    enumerator.run([&](const std::vector<int>& cells) {
        canon.insert(detail::canonical_form(n, cells));
        if (canon.size() > cap)
            fail(ErrorKind::CapExceeded,
                 "more than " + std::to_string(cap) + " isomorphism classes");
    });
    std::vector<CayleyTable> out;
    out.reserve(canon.size());
    for (const auto& cells : canon) out.emplace_back(n, cells);
    return out;
}

}  // namespace kloops
