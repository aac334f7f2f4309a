#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "kloops/errors.hpp"

namespace kloops {

// Bijection of [0, n). Composition convention: (p * q)(x) = p(q(x)).
class Permutation {
public:
    Permutation() = default;

    static Permutation identity(int n) {
        std::vector<int> image(n);
        std::iota(image.begin(), image.end(), 0);
        return Permutation(std::move(image));
    }

    explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
        std::vector<bool> seen(image_.size(), false);
        for (int v : image_) {
            if (v < 0 || v >= static_cast<int>(image_.size()) || seen[v])
                fail(ErrorKind::Precondition, "image sequence is not a bijection");
            seen[v] = true;
        }
    }

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int x) const { return image_[x]; }
    const std::vector<int>& image() const { return image_; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (image_[i] != i) return false;
        return true;
    }

    Permutation operator*(const Permutation& q) const {
        std::vector<int> image(image_.size());
        for (size_t i = 0; i < image_.size(); ++i) image[i] = image_[q.image_[i]];
        Permutation r;
        r.image_ = std::move(image);  // composition of bijections, skip revalidation
        return r;
    }

    Permutation inverse() const {
        std::vector<int> image(image_.size());
        for (size_t i = 0; i < image_.size(); ++i) image[image_[i]] = static_cast<int>(i);
        Permutation r;
        r.image_ = std::move(image);
        return r;
    }

    // Sorted cycle lengths; an isomorphism invariant used for search pruning.
    std::vector<int> cycle_type() const {
        std::vector<int> lengths;
        std::vector<bool> seen(image_.size(), false);
        for (int i = 0; i < size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = image_[j]) {
                seen[j] = true;
                ++len;
            }
            lengths.push_back(len);
        }
        std::sort(lengths.begin(), lengths.end());
        return lengths;
    }

    bool operator==(const Permutation& other) const = default;
    // Lexicographic by image; pins all enumeration orders.
    bool operator<(const Permutation& other) const { return image_ < other.image_; }

private:
    std::vector<int> image_;
};

struct PermutationHash {
    size_t operator()(const Permutation& p) const {
        size_t h = 1469598103934665603ull;
        for (int v : p.image()) {
            h ^= static_cast<size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Generator-closed set of permutations with a size cap. `elements` is in
// deterministic discovery order: identity, the generators in index order,
// then breadth-first products current * generator.
struct GeneratedGroup {
    std::vector<Permutation> generators;
    std::vector<Permutation> elements;
    bool complete = false;
    size_t cap = 0;

    size_t size() const { return elements.size(); }

    bool contains(const Permutation& p) const {
        for (const auto& q : elements)
            if (q == p) return true;
        return false;
    }
};

inline constexpr size_t kDefaultGroupCap = 1000000;

// Breadth-first closure under right multiplication by the generators. In a
// finite setting this also closes under inversion. On hitting the cap the
// partial set is returned with complete=false; nothing is thrown here.
inline GeneratedGroup closure(const std::vector<Permutation>& generators,
                              size_t cap = kDefaultGroupCap) {
    GeneratedGroup g;
    g.generators = generators;
    g.cap = cap;
    if (generators.empty()) fail(ErrorKind::Precondition, "closure needs at least one generator");
    int n = generators[0].size();
    for (const auto& p : generators)
        if (p.size() != n) fail(ErrorKind::Precondition, "generators act on different carriers");

    std::unordered_set<Permutation, PermutationHash> seen;
    std::deque<size_t> frontier;
    auto push = [&](const Permutation& p) {
        if (seen.contains(p)) return true;
        if (g.elements.size() >= cap) return false;  // a genuinely new element would not fit
        seen.insert(p);
        g.elements.push_back(p);
        frontier.push_back(g.elements.size() - 1);
        return true;
    };

    if (!push(Permutation::identity(n))) return g;
    for (const auto& p : generators)
        if (!push(p)) return g;

    while (!frontier.empty()) {
        size_t idx = frontier.front();
        frontier.pop_front();
        for (const auto& gen : generators) {
            Permutation product = g.elements[idx] * gen;
            if (!push(product)) return g;
        }
    }
    g.complete = true;
    return g;
}

}  // namespace kloops
