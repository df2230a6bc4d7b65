#pragma once

// The Jack_alpha measure on partitions of n: exact probabilities via the two
// hook-type products, full distributions, the normalized statistic
// W = S(lambda, alpha)/sqrt(alpha*C(n,2)), and row-tail quantities.

#include "jackstein/partition.hpp"
#include "jackstein/rational.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace jackstein::jack_measure {

using partitions::Cell;
using partitions::Partition;

struct HookProducts {
    Rational c_low;   // prod over boxes of (alpha*arm + leg + 1)
    Rational c_high;  // prod over boxes of (alpha*arm + leg + alpha)
};

inline HookProducts hook_products(const Partition& lambda, const Rational& alpha) {
    if (alpha <= 0) throw std::domain_error("alpha must be positive");
    HookProducts out{1, 1};
    const auto& parts = lambda.parts();
    std::vector<unsigned> col;
    if (!parts.empty()) {
        col.resize(parts[0] + 1);
        for (unsigned c = 1; c <= parts[0]; ++c) col[c] = lambda.col_len(c);
    }
    for (unsigned r = 1; r <= parts.size(); ++r) {
        for (unsigned c = 1; c <= parts[r - 1]; ++c) {
            const unsigned arm = parts[r - 1] - c;
            const unsigned leg = col[c] - r;
            const Rational base = alpha * arm + leg;
            out.c_low *= base + 1;
            out.c_high *= base + alpha;
        }
    }
    return out;
}

// P_alpha(lambda) = alpha^n * n! / (c_low * c_high).
inline Rational jack_probability(const Partition& lambda, const Rational& alpha) {
    const HookProducts hp = hook_products(lambda, alpha);
    const unsigned n = lambda.n();
    return rational_pow(alpha, n) * Rational(factorial(n)) / (hp.c_low * hp.c_high);
}

struct PartitionLaw {
    unsigned n = 0;
    Rational alpha = 1;
    std::vector<std::pair<Partition, Rational>> entries;  // enumeration order
};

inline PartitionLaw jack_distribution(unsigned n, const Rational& alpha) {
    PartitionLaw law;
    law.n = n;
    law.alpha = alpha;
    for (auto& lambda : partitions::enumerate_partitions(n))
        law.entries.emplace_back(std::move(lambda), Rational());
    for (auto& [lambda, prob] : law.entries) prob = jack_probability(lambda, alpha);
    return law;
}

// Normalizer sqrt(alpha * C(n,2)) of the statistic W; 0 when n < 2.
inline double w_normalizer(unsigned n, const Rational& alpha) {
    return std::sqrt(to_double(alpha) * (static_cast<double>(n) * (n - 1.0) / 2.0));
}

// W value of a single partition (float; exact work should use char_statistic).
inline double w_value(const Partition& lambda, const Rational& alpha) {
    const unsigned n = lambda.n();
    if (n < 2) return 0.0;  // guard: normalizer vanishes at n=1
    return to_double(partitions::char_statistic(lambda, alpha)) / w_normalizer(n, alpha);
}

struct RowTail {
    Rational exact;          // P_alpha(lambda_1 = l), by summation over the law
    double bound_factorial;  // (n/alpha)^l * alpha*l / (l!)^2
    double bound_stirling;   // alpha/(2*pi) * (n*e^2/(alpha*l^2))^l
};

inline RowTail row_tail(const PartitionLaw& law, unsigned l) {
    const unsigned n = law.n;
    if (l < 1 || l > n) throw std::domain_error("row length l out of range");
    RowTail out;
    out.exact = 0;
    for (const auto& [lambda, prob] : law.entries)
        if (lambda.parts().front() == l) out.exact += prob;
    const double a = to_double(law.alpha);
    // Log-space evaluation: these envelopes overflow doubles quickly.
    const double log_factorial_form = l * std::log(n / a) + std::log(a) +
                                      std::log(static_cast<double>(l)) -
                                      2 * std::lgamma(l + 1.0);
    out.bound_factorial = std::exp(log_factorial_form);
    const double log_stirling_form = std::log(a / (2 * 3.14159265358979323846)) +
                                     l * (std::log(static_cast<double>(n)) + 2 - std::log(a) -
                                          2 * std::log(static_cast<double>(l)));
    out.bound_stirling = std::exp(log_stirling_form);
    return out;
}

}  // namespace jackstein::jack_measure
