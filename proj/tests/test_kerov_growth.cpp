// Growth process: the exact transition kernel (coherence with the measure is
// the release gate), the increment law and its closed-form moments, and the
// float corner sampler whose rows must reproduce the exact kernel.

#include <catch2/catch_amalgamated.hpp>

#include "jackstein/jack_measure.hpp"
#include "jackstein/kerov_growth.hpp"
#include "jackstein/rng.hpp"

#include <cmath>
#include <map>
#include <vector>

using namespace jackstein;
using partitions::Partition;

namespace {

const std::vector<Rational> kAlphaGrid{1, 2, Rational(1, 2), Rational(5, 3)};

// Oracle: for shapes with a unique predecessor, coherence forces the kernel
// value to a ratio of measure weights.  The single row [m] grows only from
// [m-1], so p([m-1] -> [m]) = P_m([m]) / P_{m-1}([m-1]); same for the column.
Rational forced_kernel_oracle(unsigned m, const Rational& a, bool column) {
    auto shape = [&](unsigned size) {
        return column ? Partition(std::vector<unsigned>(size, 1)) : Partition({size});
    };
    return jack_measure::jack_probability(shape(m), a) /
           jack_measure::jack_probability(shape(m - 1), a);
}

Rational kernel_prob_to(const Partition& nu, const Partition& lambda, const Rational& a) {
    for (const auto& t : kerov_growth::step_kernel(nu, a).targets)
        if (t.result == lambda) return t.prob;
    return Rational(0);
}

}  // namespace

TEST_CASE("kernel rows are probability vectors over the addable corners", "[kerov_growth]") {
    for (const Rational& a : kAlphaGrid) {
        for (unsigned n = 0; n <= 9; ++n) {
            for (const auto& nu : partitions::enumerate_partitions(n)) {
                const auto row = kerov_growth::step_kernel(nu, a);
                const auto cs = partitions::corners(nu);
                REQUIRE(row.targets.size() == cs.addable.size());
                Rational total = 0;
                for (std::size_t i = 0; i < row.targets.size(); ++i) {
                    REQUIRE(row.targets[i].cell == cs.addable[i]);
                    REQUIRE(row.targets[i].prob > 0);
                    REQUIRE(row.targets[i].result ==
                            partitions::add_cell(nu, row.targets[i].cell));
                    total += row.targets[i].prob;
                }
                REQUIRE(total == 1);
            }
        }
    }
}

TEST_CASE("kernel matches the coherence-forced value on single rows/columns",
          "[kerov_growth]") {
    for (const Rational& a : kAlphaGrid) {
        for (unsigned m = 2; m <= 8; ++m) {
            REQUIRE(kernel_prob_to(Partition({m - 1}), Partition({m}), a) ==
                    forced_kernel_oracle(m, a, false));
            REQUIRE(kernel_prob_to(Partition(std::vector<unsigned>(m - 1, 1)),
                                   Partition(std::vector<unsigned>(m, 1)), a) ==
                    forced_kernel_oracle(m, a, true));
        }
        // First step from the empty diagram is deterministic.
        const auto first = kerov_growth::step_kernel(Partition(std::vector<unsigned>{}), a);
        REQUIRE(first.targets.size() == 1);
        REQUIRE(first.targets[0].prob == 1);
        // Second step: P([2]) = 1/(a+1), P([1,1]) = a/(a+1).
        REQUIRE(kernel_prob_to(Partition({1}), Partition({2}), a) == 1 / (a + 1));
        REQUIRE(kernel_prob_to(Partition({1}), Partition({1, 1}), a) == a / (a + 1));
    }
}

TEST_CASE("kernel is coherent with the measure (release gate)", "[kerov_growth]") {
    for (const Rational& a : kAlphaGrid) {
        for (unsigned n = 1; n <= 9; ++n) {
            std::map<Partition, Rational> pushed;
            for (const auto& [nu, p] : jack_measure::jack_distribution(n - 1, a).entries)
                for (const auto& t : kerov_growth::step_kernel(nu, a).targets)
                    pushed[t.result] += p * t.prob;
            for (const auto& [lambda, p] : jack_measure::jack_distribution(n, a).entries)
                REQUIRE(pushed.at(lambda) == p);
        }
    }
}

TEST_CASE("increment law: closed-form moments on the content scale", "[kerov_growth]") {
    for (const Rational& a : kAlphaGrid) {
        for (unsigned n = 2; n <= 10; ++n) {
            const auto law = kerov_growth::eta_law(n, a);
            Rational mass = 0;
            for (const auto& [c, m] : law.atoms) mass += m;
            REQUIRE(mass == 1);

            // Oracle closed forms, stated on the normalized scale eta =
            // content/sqrt(v) with v = a*C(n,2): E eta = 0, E eta^2 = 2/n, and
            // E eta^4 = (2/n^2)((4n-6)/(n-1) + 2(a-1)^2/(a(n-1))).  Multiplying
            // by powers of v turns each into an exact rational identity.
            const Rational v = a * Rational(choose2(BigInt(n)));
            REQUIRE(kerov_growth::eta_content_moment(law, 1) == 0);
            REQUIRE(kerov_growth::eta_content_moment(law, 2) == Rational(2, n) * v);
            const Rational f4 = Rational(2) / (Rational(n) * n) *
                                (Rational(4 * n - 6, n - 1) +
                                 2 * (a - 1) * (a - 1) / (a * Rational(n - 1)));
            REQUIRE(kerov_growth::eta_content_moment(law, 4) == f4 * v * v);

            for (const auto& r : kerov_growth::growth_moment_report(n, a))
                REQUIRE(r.verdict == Verdict::pass);
        }
    }
}

TEST_CASE("increment law anchors at n=4, alpha=1", "[kerov_growth]") {
    const auto law = kerov_growth::eta_law(4, Rational(1));
    const Rational v = Rational(choose2(BigInt(4)));  // v = 6
    const Rational e2 = kerov_growth::eta_content_moment(law, 2) / (v);
    const Rational e4 = kerov_growth::eta_content_moment(law, 4) / (v * v);
    REQUIRE(e2 == Rational(1, 2));           // 2/n
    REQUIRE(e4 == Rational(5, 12));
    REQUIRE(e4 / (3 * e2) == Rational(5, 18));  // second moment of the size-bias square
    REQUIRE_THROWS_AS(kerov_growth::eta_law(1, Rational(1)), std::domain_error);
}

TEST_CASE("float sampler rows reproduce the exact kernel on every shape",
          "[kerov_growth]") {
    for (const double ad : {1.0, 2.0, 0.5, 5.0 / 3.0}) {
        const Rational a(ad);  // dyadicly exact for 1, 2, 0.5; nearest double else
        kerov_growth::GrowthSampler sampler(ad);
        for (unsigned n = 0; n <= 8; ++n) {
            for (const auto& nu : partitions::enumerate_partitions(n)) {
                sampler.seed_from(nu);
                REQUIRE(sampler.current() == nu);
                const auto weights = sampler.step_weights();
                const auto row = kerov_growth::step_kernel(nu, a);
                REQUIRE(weights.size() == row.targets.size());
                for (std::size_t i = 0; i < weights.size(); ++i) {
                    REQUIRE(weights[i].first == row.targets[i].cell);
                    REQUIRE(weights[i].second ==
                            Catch::Approx(to_double(row.targets[i].prob)).margin(1e-12));
                }
            }
        }
    }
}

TEST_CASE("incremental weight updates track the from-scratch computation",
          "[kerov_growth]") {
    // Walk one long path; after every step the incrementally maintained
    // weights must match a fresh recomputation on the same shape.
    const double alpha = 1.7;
    kerov_growth::GrowthSampler incremental(alpha);
    kerov_growth::GrowthSampler scratch(alpha);
    rng::Xoshiro256pp rng;
    rng.reseed(42, 0);
    for (unsigned step = 0; step < 500; ++step) {
        incremental.step(rng);
        if (step % 25 != 24) continue;
        scratch.seed_from(incremental.current());
        const auto got = incremental.step_weights();
        const auto want = scratch.step_weights();
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            REQUIRE(got[i].first == want[i].first);
            REQUIRE(got[i].second == Catch::Approx(want[i].second).margin(1e-9));
        }
        REQUIRE(std::abs(incremental.weight_sum() - 1.0) <= 1e-9);
    }
    // The defensive rebuild should stay rare on a healthy path.
    REQUIRE(incremental.rebuild_count() <= 3);
}

TEST_CASE("sampled paths telescope to the exact statistic", "[kerov_growth]") {
    const double alpha = 5.0 / 3.0;
    rng::Xoshiro256pp rng;
    for (unsigned trial = 0; trial < 20; ++trial) {
        rng.reseed(7, trial);
        const auto ps = kerov_growth::sample_path(40, alpha, rng);
        REQUIRE(ps.final.n() == 40);
        REQUIRE(ps.contents.size() == 40);
        double total = 0;
        for (double c : ps.contents) total += c;
        const double exact =
            to_double(partitions::char_statistic(ps.final, Rational(alpha)));
        REQUIRE(total == Catch::Approx(exact).margin(1e-8));
        REQUIRE(ps.w_value ==
                Catch::Approx(total / kerov_growth::w_normalizer_f(40, alpha)).margin(1e-12));
    }
}

TEST_CASE("path sampling is reproducible per (seed, stream)", "[kerov_growth]") {
    kerov_growth::GrowthSampler s1(2.0), s2(2.0);
    rng::Xoshiro256pp r1, r2;
    std::vector<double> a, b;
    for (unsigned i = 0; i < 50; ++i) {
        r1.reseed(123, i);
        a.push_back(kerov_growth::sample_w(30, 2.0, r1, s1));
    }
    for (unsigned i = 0; i < 50; ++i) {
        r2.reseed(123, i);
        b.push_back(kerov_growth::sample_w(30, 2.0, r2, s2));
    }
    REQUIRE(a == b);
    rng::Xoshiro256pp r3;
    r3.reseed(124, 0);
    kerov_growth::GrowthSampler s3(2.0);
    REQUIRE(kerov_growth::sample_w(30, 2.0, r3, s3) != a[0]);
}
