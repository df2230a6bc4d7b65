#pragma once

// Deterministic, parallel Monte Carlo harness.  Two invariants drive the
// design:
//   * sample i always draws from the dedicated RNG stream (seed, i), and
//   * reductions are grouped by fixed-size chunks combined in chunk order,
// so a report is bit-identical for a given config no matter how many worker
// threads execute it.

#include "jackstein/kerov_growth.hpp"
#include "jackstein/report.hpp"
#include "jackstein/rng.hpp"
#include "jackstein/stein_bounds.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace jackstein::mc_engine {

struct McConfig {
    unsigned n = 3;                 // partition size of each growth path
    double alpha = 1.0;             // deformation parameter (float mode)
    std::uint64_t num_samples = 0;  // >= 1000 in production runs
    std::uint64_t seed = 0;
    unsigned workers = 1;
    double delta = 1e-3;           // DKW confidence parameter
    double bin_width = 1e-3;       // histogram mode (engaged above the buffer cap)
    double histogram_span = 40.0;  // histogram covers [-span, span]
    std::uint64_t buffer_cap = 0;  // 0 = default cap; tests lower it to force histogram mode
};

struct SampleMoments {
    double mean = 0.0;
    double var = 0.0;
    double fourth = 0.0;
};

struct McReport {
    KSResult ks;
    SampleMoments moments;
    std::uint64_t num_samples = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    double delta = 0.0;
    double seconds = 0.0;
    double samples_per_sec = 0.0;
    std::vector<BoundReport> bounds;
};

namespace detail {

inline constexpr std::uint64_t kChunk = 4096;           // reduction granularity
inline constexpr std::uint64_t kBufferCap = 100'000'000;  // doubles held at once

struct ChunkSums {
    long double s1 = 0.0L, s2 = 0.0L, s4 = 0.0L;
};

// Runs draw(stream, i) for i in [0, num_samples) across `workers` threads in
// fixed chunks; sink(i, value) must be safe for concurrent disjoint i.
template <class Draw, class Sink>
std::vector<ChunkSums> run_chunks(const McConfig& cfg, Draw&& draw, Sink&& sink) {
    const std::uint64_t chunks = (cfg.num_samples + kChunk - 1) / kChunk;
    std::vector<ChunkSums> sums(chunks);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        rng::Xoshiro256pp stream;
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            const std::uint64_t lo = c * kChunk;
            const std::uint64_t hi = std::min(lo + kChunk, cfg.num_samples);
            ChunkSums& cs = sums[c];
            for (std::uint64_t i = lo; i < hi; ++i) {
                stream.reseed(cfg.seed, i);
                const double v = draw(stream);
                sink(i, v);
                const long double vl = v;
                cs.s1 += vl;
                cs.s2 += vl * vl;
                cs.s4 += vl * vl * vl * vl;
            }
        }
    };
    const unsigned workers = std::max(1u, cfg.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return sums;
}

inline SampleMoments reduce_moments(const std::vector<ChunkSums>& sums, std::uint64_t n) {
    long double s1 = 0.0L, s2 = 0.0L, s4 = 0.0L;
    for (const auto& cs : sums) {  // fixed chunk order: worker-count independent
        s1 += cs.s1;
        s2 += cs.s2;
        s4 += cs.s4;
    }
    const long double inv = 1.0L / static_cast<long double>(n);
    SampleMoments m;
    m.mean = static_cast<double>(s1 * inv);
    m.var = static_cast<double>(s2 * inv) - m.mean * m.mean;
    m.fourth = static_cast<double>(s4 * inv);
    return m;
}

}  // namespace detail

// draw: (rng::Xoshiro256pp&) -> double, invoked once per sample on its own
// stream.  Buffered mode sorts the pooled values for the exact empirical
// Kolmogorov distance; above the buffer cap a fixed-grid histogram is used
// and the grid coarseness is charged to dkw_margin (bin mass plus normal
// mass per bin, evaluated at the realized worst bin).
template <class Draw>
McReport run_mc(const McConfig& cfg, Draw&& draw) {
    if (cfg.num_samples == 0) throw std::domain_error("sample count must be positive");
    if (!(cfg.delta > 0) || !(cfg.delta < 1)) throw std::domain_error("delta must be in (0,1)");
    McReport rep;
    rep.num_samples = cfg.num_samples;
    rep.seed = cfg.seed;
    rep.workers = std::max(1u, cfg.workers);
    rep.delta = cfg.delta;
    const auto start = std::chrono::steady_clock::now();

    const std::uint64_t cap = cfg.buffer_cap ? cfg.buffer_cap : detail::kBufferCap;
    if (cfg.num_samples <= cap) {
        std::vector<double> values(cfg.num_samples);
        const auto sums = detail::run_chunks(cfg, draw, [&](std::uint64_t i, double v) {
            values[i] = v;
        });
        rep.moments = detail::reduce_moments(sums, cfg.num_samples);
        std::sort(values.begin(), values.end());
        rep.ks = stein_bounds::ks_empirical_sorted(values, cfg.delta);
    } else {
        if (!(cfg.bin_width > 0)) throw std::domain_error("histogram mode needs bin_width > 0");
        const double span = cfg.histogram_span;
        const std::size_t nbins = static_cast<std::size_t>(std::ceil(2.0 * span / cfg.bin_width));
        std::vector<std::atomic<std::uint64_t>> bins(nbins + 2);  // underflow/overflow at ends
        const auto sums = detail::run_chunks(cfg, draw, [&](std::uint64_t, double v) {
            std::size_t k;
            if (v < -span)
                k = 0;
            else if (v >= span)
                k = nbins + 1;
            else
                k = 1 + static_cast<std::size_t>((v + span) / cfg.bin_width);
            bins[std::min(k, nbins + 1)].fetch_add(1, std::memory_order_relaxed);
        });
        rep.moments = detail::reduce_moments(sums, cfg.num_samples);
        rep.ks.method = KSMethod::empirical;
        const double inv_n = 1.0 / static_cast<double>(cfg.num_samples);
        std::uint64_t cum = bins[0].load();
        double worst_bin_error = std::max(static_cast<double>(cum) * inv_n,
                                          stein_bounds::normal_cdf(-span));
        for (std::size_t k = 1; k <= nbins; ++k) {
            const std::uint64_t c = bins[k].load();
            const double lo = -span + static_cast<double>(k - 1) * cfg.bin_width;
            const double hi = lo + cfg.bin_width;
            cum += c;
            const double d = std::abs(static_cast<double>(cum) * inv_n -
                                      stein_bounds::normal_cdf(hi));
            if (d > rep.ks.distance) {
                rep.ks.distance = d;
                rep.ks.witness_x = hi;
            }
            worst_bin_error =
                std::max(worst_bin_error, static_cast<double>(c) * inv_n +
                                              stein_bounds::normal_cdf(hi) -
                                              stein_bounds::normal_cdf(lo));
        }
        rep.ks.dkw_margin =
            std::sqrt(std::log(2.0 / cfg.delta) * 0.5 * inv_n) + worst_bin_error;
    }

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.samples_per_sec =
        rep.seconds > 0 ? static_cast<double>(cfg.num_samples) / rep.seconds : 0.0;
    return rep;
}

// Monte Carlo law of the normalized statistic under the growth sampler, with
// verdicts: the empirical distance minus its confidence margin must stay
// under the uniform bound, and mean/variance must sit within five standard
// errors of (0, 1).
inline McReport run_mc_growth(const McConfig& cfg) {
    if (cfg.n < 3) throw std::domain_error("statistic requires n >= 3");
    if (cfg.num_samples < 1000) throw std::domain_error("production runs need >= 1000 samples");
    struct PerThread {
        double alpha;
        kerov_growth::GrowthSampler sampler;
        explicit PerThread(double a) : alpha(a), sampler(a) {}
    };
    thread_local std::unique_ptr<PerThread> tls;
    McReport rep = run_mc(cfg, [&](rng::Xoshiro256pp& r) {
        if (!tls || tls->alpha != cfg.alpha) tls = std::make_unique<PerThread>(cfg.alpha);
        return kerov_growth::sample_w(cfg.n, cfg.alpha, r, tls->sampler);
    });
    const std::map<std::string, std::string> ctx{
        {"n", std::to_string(cfg.n)},
        {"alpha", std::to_string(cfg.alpha)},
        {"num_samples", std::to_string(cfg.num_samples)},
        {"seed", std::to_string(cfg.seed)}};
    rep.bounds.push_back(BoundReport::asserted(
        "uniform-ks-statistical", rep.ks.distance - rep.ks.dkw_margin,
        stein_bounds::uniform_bound_rhs(cfg.n, cfg.alpha), ctx));
    const double inv_n = 1.0 / static_cast<double>(cfg.num_samples);
    const double mean_se = std::sqrt(std::max(rep.moments.var, 0.0) * inv_n);
    rep.bounds.push_back(BoundReport::asserted("mean-consistent", std::abs(rep.moments.mean),
                                               5.0 * mean_se, ctx));
    const double var_se =
        std::sqrt(std::max(rep.moments.fourth - rep.moments.var * rep.moments.var, 0.0) * inv_n);
    rep.bounds.push_back(BoundReport::asserted("var-consistent", std::abs(rep.moments.var - 1.0),
                                               5.0 * var_se, ctx));
    return rep;
}

}  // namespace jackstein::mc_engine
