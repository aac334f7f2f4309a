#pragma once

#include <string>
#include <vector>

#include "kloops/loop.hpp"
#include "kloops/translations.hpp"

namespace kloops {

// One verified equation: pass flag plus the first counterexample tuple when
// it fails. The witness layout is documented per check below.
struct IdentityItem {
    std::string name;
    bool pass = true;
    std::vector<long long> witness;
};

struct IdentityReport {
    std::vector<IdentityItem> items;

    bool all_pass() const {
        for (const auto& item : items)
            if (!item.pass) return false;
        return true;
    }
};

namespace detail {

// Powers a*k for k in [-window, window], left accumulation, index shifted by
// +window. Negative powers use the two-sided inverse.
inline std::vector<std::vector<int>> power_window(const LoopStructure& L, int window) {
    int n = L.order();
    std::vector<std::vector<int>> pw(n, std::vector<int>(2 * window + 1));
    for (int a = 0; a < n; ++a) {
        pw[a][window] = 0;
        int neg = L.left_inverse(a);
        int acc = 0, nacc = 0;
        for (int k = 1; k <= window; ++k) {
            acc = L.add(a, acc);
            nacc = L.add(neg, nacc);
            pw[a][window + k] = acc;
            pw[a][window - k] = nacc;
        }
    }
    return pw;
}

inline std::vector<Permutation> all_precessions(const LoopStructure& L) {
    int n = L.order();
    std::vector<Permutation> d;
    d.reserve(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) d.push_back(precession(L, a, b));
    return d;
}

}  // namespace detail

// a+b = d_{a,b}(b+a). Witness: (a, b).
inline IdentityItem check_precession_commutation(const LoopStructure& L) {
    IdentityItem item{"precession_commutation"};
    for (int a = 0; a < L.order(); ++a)
        for (int b = 0; b < L.order(); ++b)
            if (precession(L, a, b)(L.add(b, a)) != L.add(a, b))
                return {item.name, false, {a, b}};
    return item;
}

// a*n + (a*m + x) = a*(n+m) + x for |n|,|m| <= 2*order. Witness: (a, n, m, x).
inline IdentityItem check_power_translation_shift(const LoopStructure& L) {
    IdentityItem item{"power_translation_shift"};
    int n_ord = L.order();
    int w = 2 * n_ord;
    auto pw = detail::power_window(L, 2 * w);  // n+m reaches 4*order
    // Many (n, m) windows collapse onto the same value triple; check each once.
    std::vector<bool> checked(static_cast<size_t>(n_ord) * n_ord * n_ord, false);
    for (int a = 0; a < n_ord; ++a)
        for (int i = -w; i <= w; ++i)
            for (int j = -w; j <= w; ++j) {
                int ai = pw[a][2 * w + i], aj = pw[a][2 * w + j];
                int aij = pw[a][2 * w + i + j];
                size_t key = (static_cast<size_t>(ai) * n_ord + aj) * n_ord + aij;
                if (checked[key]) continue;
                checked[key] = true;
                for (int x = 0; x < n_ord; ++x)
                    if (L.add(ai, L.add(aj, x)) != L.add(aij, x))
                        return {item.name, false, {a, i, j, x}};
            }
    return item;
}

// d_{a*n, a*m} = Id for all integer n, m in the window. Witness: (a, n, m).
inline IdentityItem check_power_precession_identity(const LoopStructure& L) {
    IdentityItem item{"power_precession_identity"};
    int n_ord = L.order();
    int w = 2 * n_ord;
    auto pw = detail::power_window(L, w);
    std::vector<bool> checked(static_cast<size_t>(n_ord) * n_ord, false);
    for (int a = 0; a < n_ord; ++a)
        for (int i = -w; i <= w; ++i)
            for (int j = -w; j <= w; ++j) {
                int u = pw[a][w + i], v = pw[a][w + j];
                size_t key = static_cast<size_t>(u) * n_ord + v;
                if (checked[key]) continue;
                checked[key] = true;
                if (!precession(L, u, v).is_identity()) return {item.name, false, {a, i, j}};
            }
    return item;
}

// The diagonal special case d_{a*m, a*m} = Id. Witness: (a, m).
inline IdentityItem check_power_precession_identity_diagonal(const LoopStructure& L) {
    IdentityItem item{"power_precession_identity_diagonal"};
    int w = 2 * L.order();
    auto pw = detail::power_window(L, w);
    for (int a = 0; a < L.order(); ++a)
        for (int m = -w; m <= w; ++m) {
            int u = pw[a][w + m];
            if (!precession(L, u, u).is_identity()) return {item.name, false, {a, m}};
        }
    return item;
}

// d_{a,b}^{-1} = d_{b,a}. Witness: (a, b).
inline IdentityItem check_precession_inverse_pair(const LoopStructure& L) {
    IdentityItem item{"precession_inverse_pair"};
    int n = L.order();
    auto d = detail::all_precessions(L);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Permutation& dab = d[static_cast<size_t>(a) * n + b];
            const Permutation& dba = d[static_cast<size_t>(b) * n + a];
            for (int c = 0; c < n; ++c)
                if (dab(dba(c)) != c) return {item.name, false, {a, b}};
        }
    return item;
}

// d_{a,b} = d_{-b, b+a}. Witness: (a, b).
inline IdentityItem check_precession_negated_reindex(const LoopStructure& L) {
    IdentityItem item{"precession_negated_reindex"};
    int n = L.order();
    auto d = detail::all_precessions(L);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int nb = L.left_inverse(b);
            if (!(d[static_cast<size_t>(a) * n + b] ==
                  d[static_cast<size_t>(nb) * n + L.add(b, a)]))
                return {item.name, false, {a, b}};
        }
    return item;
}

// d_{a, b+a} = d_{a,b}. Witness: (a, b).
inline IdentityItem check_precession_right_absorb(const LoopStructure& L) {
    IdentityItem item{"precession_right_absorb"};
    int n = L.order();
    auto d = detail::all_precessions(L);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!(d[static_cast<size_t>(a) * n + L.add(b, a)] ==
                  d[static_cast<size_t>(a) * n + b]))
                return {item.name, false, {a, b}};
    return item;
}

// Every precession is a loop automorphism. Witness: (a, b, x, y).
inline IdentityItem check_precession_automorphism(const LoopStructure& L) {
    IdentityItem item{"precession_automorphism"};
    int n = L.order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Permutation d = precession(L, a, b);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (d(L.add(x, y)) != L.add(d(x), d(y)))
                        return {item.name, false, {a, b, x, y}};
        }
    return item;
}

// (a+b)*2 = a + (b*2 + a). Witness: (a, b).
inline IdentityItem check_sum_doubling(const LoopStructure& L) {
    IdentityItem item{"sum_doubling"};
    for (int a = 0; a < L.order(); ++a)
        for (int b = 0; b < L.order(); ++b) {
            int ab = L.add(a, b);
            if (L.add(ab, ab) != L.add(a, L.add(L.add(b, b), a)))
                return {item.name, false, {a, b}};
        }
    return item;
}

// Doubling is injective iff there is no a != 0 with a + a = 0.
// Witness: the element breaking the equivalence.
inline IdentityItem check_doubling_injectivity_criterion(const LoopStructure& L) {
    IdentityItem item{"doubling_injectivity_criterion"};
    bool injective = is_uniquely_2_divisible_table(L.table());
    int order2 = -1;
    for (int a = 1; a < L.order(); ++a)
        if (L.add(a, a) == 0) {
            order2 = a;
            break;
        }
    if (injective == (order2 < 0)) return item;
    return {item.name, false, {order2 >= 0 ? order2 : 0}};
}

// Runs the whole identity suite on a K-loop. The diagonal power-precession
// entry is the special case kept alongside the two-index form.
inline IdentityReport check_kloop_identities(const LoopStructure& L) {
    if (!L.is_kloop()) fail(ErrorKind::Precondition, "identity suite needs a K-loop");
    IdentityReport report;
    report.items.push_back(check_precession_commutation(L));
    report.items.push_back(check_power_translation_shift(L));
    report.items.push_back(check_power_precession_identity(L));
    report.items.push_back(check_power_precession_identity_diagonal(L));
    report.items.push_back(check_precession_inverse_pair(L));
    report.items.push_back(check_precession_negated_reindex(L));
    report.items.push_back(check_precession_right_absorb(L));
    report.items.push_back(check_precession_automorphism(L));
    report.items.push_back(check_sum_doubling(L));
    report.items.push_back(check_doubling_injectivity_criterion(L));
    return report;
}

}  // namespace kloops
