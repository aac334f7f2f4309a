#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <istream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "kloops/errors.hpp"

namespace kloops {

// Raw n-by-n operation table over elements 0..n-1, before any axiom checking.
// Convention: row = left operand, so entry(x, y) = x op y. Fixed for file
// interchange; every module reads tables this way.
class CayleyTable {
public:
    CayleyTable() : order_(1), cells_(1, 0) {}

    CayleyTable(int order, std::vector<int> cells) : order_(order), cells_(std::move(cells)) {
        if (order_ < 1) fail(ErrorKind::MalformedInput, "order must be >= 1");
        if (cells_.size() != static_cast<size_t>(order_) * order_)
            fail(ErrorKind::MalformedInput, "cell count does not match order");
        for (int v : cells_)
            if (v < 0 || v >= order_) fail(ErrorKind::MalformedInput, "entry out of range");
    }

    static CayleyTable from_function(int order, auto&& op) {
        std::vector<int> cells(static_cast<size_t>(order) * order);
        for (int x = 0; x < order; ++x)
            for (int y = 0; y < order; ++y) cells[static_cast<size_t>(x) * order + y] = op(x, y);
        return CayleyTable(order, std::move(cells));
    }

    int order() const { return order_; }
    int at(int x, int y) const { return cells_[static_cast<size_t>(x) * order_ + y]; }
    const std::vector<int>& cells() const { return cells_; }

    bool operator==(const CayleyTable& other) const = default;

private:
    int order_;
    std::vector<int> cells_;
};

// Subset of the carrier, the unit of subloop/convexity/normality reasoning.
// Stored as packed bits; elements are 0-based indices below order().
class SubsetMask {
public:
    SubsetMask() : order_(0) {}

    explicit SubsetMask(int order) : order_(order), words_((order + 63) / 64, 0) {}

    SubsetMask(int order, std::initializer_list<int> members) : SubsetMask(order) {
        for (int m : members) insert(m);
    }

    static SubsetMask full(int order) {
        SubsetMask s(order);
        for (int i = 0; i < order; ++i) s.insert(i);
        return s;
    }

    static SubsetMask singleton(int order, int member) {
        SubsetMask s(order);
        s.insert(member);
        return s;
    }

    int order() const { return order_; }

    bool contains(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void insert(int i) { words_[i >> 6] |= uint64_t(1) << (i & 63); }
    void erase(int i) { words_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    bool empty() const {
        for (uint64_t w : words_) if (w) return false;
        return true;
    }

    bool is_subset_of(const SubsetMask& other) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    bool intersects(const SubsetMask& other) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    SubsetMask union_with(const SubsetMask& other) const {
        SubsetMask r(order_);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | other.words_[i];
        return r;
    }

    SubsetMask intersect_with(const SubsetMask& other) const {
        SubsetMask r(order_);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & other.words_[i];
        return r;
    }

    // Ascending member list.
    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(count());
        for (int i = 0; i < order_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    int first_member() const {
        for (int i = 0; i < order_; ++i)
            if (contains(i)) return i;
        return -1;
    }

    bool operator==(const SubsetMask& other) const = default;

    bool operator<(const SubsetMask& other) const {
        return members() < other.members();
    }

private:
    int order_;
    std::vector<uint64_t> words_;
};

// CLI subset literal: comma-separated indices, e.g. "0,5,10". Empty string is
// the empty subset.
inline SubsetMask parse_subset(const std::string& text, int order) {
    SubsetMask mask(order);
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string token = text.substr(pos, comma - pos);
        int value = 0;
        auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || p != token.data() + token.size())
            fail(ErrorKind::MalformedInput, "bad subset index '" + token + "'");
        if (value < 0 || value >= order)
            fail(ErrorKind::MalformedInput, "subset index " + token + " out of range [0," +
                                                std::to_string(order) + ")");
        mask.insert(value);
        pos = comma + 1;
    }
    return mask;
}

inline std::string format_subset(const SubsetMask& mask) {
    std::string out;
    for (int m : mask.members()) {
        if (!out.empty()) out += ',';
        out += std::to_string(m);
    }
    return out;
}

namespace detail {

struct Token {
    std::string text;
    int line;
};

// Tokenizes the table format: '#' starts a comment running to end of line,
// tokens are separated by arbitrary whitespace.
inline std::vector<Token> tokenize_table_text(std::istream& in) {
    std::vector<Token> tokens;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) tokens.push_back({line.substr(start, i - start), line_no});
        }
    }
    return tokens;
}

inline int parse_int_token(const Token& token) {
    int value = 0;
    auto [p, ec] = std::from_chars(token.text.data(), token.text.data() + token.text.size(), value);
    if (ec != std::errc() || p != token.text.data() + token.text.size())
        fail(ErrorKind::MalformedInput,
             "non-numeric token '" + token.text + "' at line " + std::to_string(token.line));
    return value;
}

}  // namespace detail

// Reads a table: first non-comment token is the order n, then n*n entries.
// No axiom checking happens here.
inline CayleyTable parse_table(std::istream& in) {
    auto tokens = detail::tokenize_table_text(in);
    if (tokens.empty()) fail(ErrorKind::MalformedInput, "empty input, expected table order");
    int n = detail::parse_int_token(tokens[0]);
    if (n < 1)
        fail(ErrorKind::MalformedInput,
             "order must be >= 1 at line " + std::to_string(tokens[0].line));
    size_t expected = 1 + static_cast<size_t>(n) * n;
    if (tokens.size() < expected)
        fail(ErrorKind::MalformedInput,
             "expected " + std::to_string(expected - 1) + " entries, got " +
                 std::to_string(tokens.size() - 1) + " (input ends at line " +
                 std::to_string(tokens.back().line) + ")");
    if (tokens.size() > expected)
        fail(ErrorKind::MalformedInput,
             "unexpected extra token '" + tokens[expected].text + "' at line " +
                 std::to_string(tokens[expected].line));
    std::vector<int> cells(static_cast<size_t>(n) * n);
    for (size_t i = 1; i < expected; ++i) {
        int v = detail::parse_int_token(tokens[i]);
        if (v < 0 || v >= n)
            fail(ErrorKind::MalformedInput, "entry " + tokens[i].text + " out of range [0," +
                                                std::to_string(n) + ") at line " +
                                                std::to_string(tokens[i].line));
        cells[i - 1] = v;
    }
    return CayleyTable(n, std::move(cells));
}

inline CayleyTable parse_table(const std::string& text) {
    std::istringstream in(text);
    return parse_table(in);
}

// Inverse of parse_table: order line, then one row per line, single spaces,
// no comments, no trailing newline.
inline std::string serialize_table(const CayleyTable& t) {
    std::string out = std::to_string(t.order());
    for (int x = 0; x < t.order(); ++x) {
        out += '\n';
        for (int y = 0; y < t.order(); ++y) {
            if (y) out += ' ';
            out += std::to_string(t.at(x, y));
        }
    }
    return out;
}

// Applies a relabeling permutation: new[p(x)][p(y)] = p(old[x][y]).
inline CayleyTable relabel_table(const CayleyTable& t, const std::vector<int>& p) {
    int n = t.order();
    std::vector<int> cells(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            cells[static_cast<size_t>(p[x]) * n + p[y]] = p[t.at(x, y)];
    return CayleyTable(n, std::move(cells));
}

// Index of the two-sided identity, or -1 if none exists.
inline int find_identity(const CayleyTable& t) {
    int n = t.order();
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = t.at(e, a) == a && t.at(a, e) == a;
        if (ok) return e;
    }
    return -1;
}

struct CanonicalizeResult {
    CayleyTable table;
    std::vector<int> relabeling;  // old index -> new index
};

// Relabels so the two-sided identity sits at index 0; the relabeling is the
// transposition swapping 0 with the old identity.
inline CanonicalizeResult canonicalize_with_map(const CayleyTable& t) {
    int e = find_identity(t);
    if (e < 0) fail(ErrorKind::NoIdentity, "table has no two-sided identity");
    std::vector<int> p(t.order());
    std::iota(p.begin(), p.end(), 0);
    std::swap(p[0], p[e]);
    return {relabel_table(t, p), std::move(p)};
}

inline CayleyTable canonicalize(const CayleyTable& t) { return canonicalize_with_map(t).table; }

}  // namespace kloops
