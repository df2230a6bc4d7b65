#pragma once

// Integer-partition arithmetic: parts, conjugates, cells, arms/legs/hooks,
// alpha-contents, corners, reverse-lexicographic enumeration, and the
// character-ratio statistic S(lambda, alpha).

#include "jackstein/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jackstein::partitions {

// 1-based box coordinates: row increases downward, col rightward.
struct Cell {
    unsigned row = 0;
    unsigned col = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

class Partition {
public:
    Partition() = default;  // the empty partition of 0

    explicit Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
        unsigned prev = ~0u;
        for (unsigned p : parts_) {
            if (p == 0 || p > prev)
                throw std::invalid_argument("parts must be positive and weakly decreasing");
            prev = p;
        }
    }

    const std::vector<unsigned>& parts() const { return parts_; }
    std::size_t num_parts() const { return parts_.size(); }

    unsigned n() const {
        unsigned total = 0;
        for (unsigned p : parts_) total += p;
        return total;
    }

    // Row length, 1-based; 0 for rows past the diagram.
    unsigned row_len(unsigned row) const {
        return (row >= 1 && row <= parts_.size()) ? parts_[row - 1] : 0;
    }

    // Column length (conjugate part), 1-based; 0 past the diagram.
    unsigned col_len(unsigned col) const {
        if (col == 0) return 0;
        unsigned count = 0;
        for (unsigned p : parts_) {
            if (p >= col) ++count;
            else break;  // parts are weakly decreasing
        }
        return count;
    }

    bool contains(Cell s) const { return s.row >= 1 && s.col >= 1 && s.col <= row_len(s.row); }

    Partition conjugate() const {
        std::vector<unsigned> t;
        if (!parts_.empty()) {
            t.resize(parts_[0]);
            for (unsigned c = 1; c <= parts_[0]; ++c) t[c - 1] = col_len(c);
        }
        return Partition(std::move(t));
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    // Ordering on part vectors; enumeration emits descending (reverse-lex) order.
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        return std::lexicographical_compare_three_way(
            a.parts_.begin(), a.parts_.end(), b.parts_.begin(), b.parts_.end());
    }

    // Text form "[3,2,1]"; the empty partition is "[]".
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + "]";
    }

    static Partition parse(std::string_view text) {
        auto bad = [&] {
            throw std::invalid_argument("not a partition: '" + std::string(text) + "'");
        };
        if (text.size() < 2 || text.front() != '[' || text.back() != ']') bad();
        std::string_view body = text.substr(1, text.size() - 2);
        std::vector<unsigned> parts;
        while (!body.empty()) {
            std::size_t comma = body.find(',');
            std::string_view tok = body.substr(0, comma);
            if (tok.empty()) bad();
            unsigned long v = 0;
            for (char ch : tok) {
                if (ch < '0' || ch > '9') bad();
                v = v * 10 + static_cast<unsigned long>(ch - '0');
                if (v > 1'000'000'000ul) bad();
            }
            if (v == 0) bad();
            parts.push_back(static_cast<unsigned>(v));
            if (comma == std::string_view::npos) {
                body = {};
            } else {
                body = body.substr(comma + 1);
                if (body.empty()) bad();  // trailing comma
            }
        }
        return Partition(std::move(parts));  // validates monotonicity
    }

private:
    std::vector<unsigned> parts_;
};

struct HookData {
    unsigned arm = 0;   // boxes strictly right of s in its row
    unsigned leg = 0;   // boxes strictly below s in its column
    unsigned hook = 0;  // arm + leg + 1
};

inline HookData hook_data(const Partition& lambda, Cell s) {
    if (!lambda.contains(s)) throw std::domain_error("cell outside diagram");
    HookData h;
    h.arm = lambda.row_len(s.row) - s.col;
    h.leg = lambda.col_len(s.col) - s.row;
    h.hook = h.arm + h.leg + 1;
    return h;
}

// Number of standard tableaux: n! / prod of hooklengths.
inline BigInt dimension(const Partition& lambda) {
    BigInt hooks = 1;
    const auto& parts = lambda.parts();
    // Precompute column lengths once; hook = (row_len - c) + (col_len - r) + 1.
    std::vector<unsigned> col;
    if (!parts.empty()) {
        col.resize(parts[0] + 1);
        for (unsigned c = 1; c <= parts[0]; ++c) col[c] = lambda.col_len(c);
    }
    for (unsigned r = 1; r <= parts.size(); ++r)
        for (unsigned c = 1; c <= parts[r - 1]; ++c)
            hooks *= (parts[r - 1] - c) + (col[c] - r) + 1;
    BigInt dim = factorial(lambda.n());
    // Hook products always divide n! exactly.
    return dim / hooks;
}

// alpha-content of a box: alpha*(col-1) - (row-1).
inline Rational alpha_content(Cell s, const Rational& alpha) {
    if (alpha <= 0) throw std::domain_error("alpha must be positive");
    return alpha * (s.col - 1) - Rational(s.row - 1);
}

struct Corners {
    std::vector<Cell> addable;    // sorted by row; includes the new-row cell
    std::vector<Cell> removable;  // sorted by row; always |addable| - 1 entries
};

inline Corners corners(const Partition& lambda) {
    Corners out;
    const auto& parts = lambda.parts();
    for (unsigned r = 1; r <= parts.size(); ++r) {
        const unsigned len = parts[r - 1];
        if (r == 1 || parts[r - 2] > len) out.addable.push_back({r, len + 1});
        if (r == parts.size() || parts[r] < len) out.removable.push_back({r, len});
    }
    out.addable.push_back({static_cast<unsigned>(parts.size()) + 1, 1});
    return out;
}

inline Partition add_cell(const Partition& nu, Cell s) {
    auto parts = nu.parts();
    if (s.row == parts.size() + 1) {
        if (s.col != 1) throw std::domain_error("cell is not an addable corner");
        parts.push_back(1);
    } else {
        if (s.row < 1 || s.row > parts.size() || parts[s.row - 1] + 1 != s.col)
            throw std::domain_error("cell is not an addable corner");
        parts[s.row - 1] += 1;
    }
    return Partition(std::move(parts));  // validates
}

// S(lambda, alpha) = sum_i [ alpha*C(lambda_i, 2) - C(lambda'_i, 2) ].
// Equals the sum of alpha-contents over all boxes.
inline Rational char_statistic(const Partition& lambda, const Rational& alpha) {
    if (alpha <= 0) throw std::domain_error("alpha must be positive");
    BigInt rows = 0, cols = 0;
    for (unsigned p : lambda.parts()) rows += choose2(BigInt(p));
    const Partition conj = lambda.conjugate();  // keep alive across the loop
    for (unsigned p : conj.parts()) cols += choose2(BigInt(p));
    return alpha * Rational(rows) - Rational(cols);
}

// Enumeration cap; JACKSTEIN_MAX_N overrides the default of 40.
inline unsigned enumeration_limit() {
    if (const char* env = std::getenv("JACKSTEIN_MAX_N")) {
        const long v = std::atol(env);
        if (v >= 0 && v <= 200) return static_cast<unsigned>(v);
    }
    return 40u;
}

// All partitions of n in reverse-lexicographic order: (n), (n-1,1), ..., (1^n).
inline std::vector<Partition> enumerate_partitions(unsigned n, unsigned limit) {
    if (n > limit)
        throw std::length_error("partition enumeration limit " + std::to_string(limit) +
                                " exceeded (n=" + std::to_string(n) +
                                "); set JACKSTEIN_MAX_N to raise it");
    std::vector<Partition> out;
    std::vector<unsigned> stack;
    // Depth-first with the largest feasible part first yields descending lex order.
    auto rec = [&](auto&& self, unsigned remaining, unsigned max_part) -> void {
        if (remaining == 0) {
            out.emplace_back(Partition(stack));
            return;
        }
        for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
            stack.push_back(p);
            self(self, remaining - p, p);
            stack.pop_back();
        }
    };
    rec(rec, n, n == 0 ? 1 : n);
    return out;
}

inline std::vector<Partition> enumerate_partitions(unsigned n) {
    return enumerate_partitions(n, enumeration_limit());
}

}  // namespace jackstein::partitions
