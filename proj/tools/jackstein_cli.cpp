// Command-line entry point: enumeration, exact measures, path sampling,
// Monte Carlo KS runs, zero-bias checks, bound reports, verification suites,
// and append-only run manifests.
//
// Exit codes: 0 = success / all assertions passed; 1 = at least one
// verification failure (per-check JSON detail on stdout); 2 = usage or
// parameter error.

#include "jackstein/io.hpp"
#include "jackstein/jack_measure.hpp"
#include "jackstein/kerov_growth.hpp"
#include "jackstein/mc_engine.hpp"
#include "jackstein/partition.hpp"
#include "jackstein/rational.hpp"
#include "jackstein/report.hpp"
#include "jackstein/rng.hpp"
#include "jackstein/stein_bounds.hpp"
#include "jackstein/zero_bias.hpp"

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using jackstein::BoundReport;
using jackstein::Rational;
using jackstein::Verdict;
using nlohmann::json;
namespace jk = jackstein;

// "p/q" (exact) or a decimal literal (float mode; converted exactly).
Rational parse_scalar(const std::string& text) {
    if (text.find('/') != std::string::npos) return jk::parse_rational(text);
    try {
        return jk::parse_rational(text);  // plain integer
    } catch (const std::invalid_argument&) {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw;
        return Rational(v);
    }
}

std::vector<Rational> parse_scalar_list(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_scalar(item));
    }
    if (out.empty()) throw std::invalid_argument("empty scalar list");
    return out;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot open output file: " + out_path);
        os << j.dump(2) << '\n';
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot open output file: " + out_path);
        os << text;
    }
}

bool any_failure(const std::vector<BoundReport>& rs) {
    return std::any_of(rs.begin(), rs.end(),
                       [](const BoundReport& r) { return r.verdict == Verdict::fail; });
}

// ---------------------------------------------------------------------------
// Verification suites (exact, small n)
// ---------------------------------------------------------------------------

void exact_check(std::vector<BoundReport>& out, const char* name, const Rational& got,
                 const Rational& expected, std::map<std::string, std::string> ctx) {
    BoundReport r;
    r.name = name;
    r.lhs = jk::to_double(got);
    r.rhs = jk::to_double(expected);
    r.verdict = (got == expected) ? Verdict::pass : Verdict::fail;
    r.context = std::move(ctx);
    out.push_back(std::move(r));
}

// Closed form for the probability of the staircase shape (3,2,1):
// 720 a^3 / ((3a+2)(2a+3)(a+2)^2 (2a+1)^2).
Rational staircase_probability(const Rational& a) {
    return Rational(720) * jk::rational_pow(a, 3) /
           ((3 * a + 2) * (2 * a + 3) * (a + 2) * (a + 2) * (2 * a + 1) * (2 * a + 1));
}

std::vector<BoundReport> suite_measure(unsigned n_max, const std::vector<Rational>& alphas) {
    std::vector<BoundReport> out;
    for (const Rational& a : alphas) {
        for (unsigned n = 0; n <= n_max; ++n) {
            const auto law = jk::jack_measure::jack_distribution(n, a);
            Rational total = 0;
            for (const auto& [lambda, p] : law.entries) {
                if (p <= 0) {
                    exact_check(out, "measure-positive", p, Rational(1),
                                {{"n", std::to_string(n)},
                                 {"alpha", jk::format_rational(a)},
                                 {"partition", lambda.to_string()}});
                }
                total += p;
            }
            exact_check(out, "measure-normalization", total, Rational(1),
                        {{"n", std::to_string(n)}, {"alpha", jk::format_rational(a)}});
        }
        if (n_max >= 6) {
            const jk::partitions::Partition staircase({3, 2, 1});
            exact_check(out, "measure-staircase-closed-form",
                        jk::jack_measure::jack_probability(staircase, a),
                        staircase_probability(a), {{"alpha", jk::format_rational(a)}});
        }
        // Duality: P_a(lambda) = P_{1/a}(lambda^t), and the statistic flips sign
        // with a 1/a rescaling: S(lambda^t, 1/a) = -S(lambda, a)/a.
        const unsigned n_dual = std::min(n_max, 8u);
        const Rational inv = 1 / a;
        for (const auto& [lambda, p] : jk::jack_measure::jack_distribution(n_dual, a).entries) {
            const auto lt = lambda.conjugate();
            exact_check(out, "measure-duality-prob", p,
                        jk::jack_measure::jack_probability(lt, inv),
                        {{"n", std::to_string(n_dual)},
                         {"alpha", jk::format_rational(a)},
                         {"partition", lambda.to_string()}});
            exact_check(out, "measure-duality-statistic",
                        jk::partitions::char_statistic(lt, inv),
                        -jk::partitions::char_statistic(lambda, a) / a,
                        {{"n", std::to_string(n_dual)},
                         {"alpha", jk::format_rational(a)},
                         {"partition", lambda.to_string()}});
        }
    }
    return out;
}

std::vector<BoundReport> suite_growth(unsigned n_max, const std::vector<Rational>& alphas) {
    std::vector<BoundReport> out;
    for (const Rational& a : alphas) {
        // Row sums: each kernel row is a probability vector.
        for (unsigned n = 0; n + 1 <= n_max; ++n) {
            Rational worst_gap = 0;
            for (const auto& [nu, p] : jk::jack_measure::jack_distribution(n, a).entries) {
                Rational row = 0;
                for (const auto& t : jk::kerov_growth::step_kernel(nu, a).targets) row += t.prob;
                if (jk::rational_abs_pow(row - 1, 1) > worst_gap)
                    worst_gap = jk::rational_abs_pow(row - 1, 1);
            }
            exact_check(out, "growth-row-sums", worst_gap, Rational(0),
                        {{"n", std::to_string(n)}, {"alpha", jk::format_rational(a)}});
        }
        // Coherence: pushing the size-(n-1) law through the kernel reproduces
        // the size-n law.  This is the release gate for the growth process.
        for (unsigned n = 1; n <= n_max; ++n) {
            std::map<jk::partitions::Partition, Rational> pushed;
            for (const auto& [nu, p] : jk::jack_measure::jack_distribution(n - 1, a).entries)
                for (const auto& t : jk::kerov_growth::step_kernel(nu, a).targets)
                    pushed[t.result] += p * t.prob;
            Rational worst = 0;
            for (const auto& [lambda, p] : jk::jack_measure::jack_distribution(n, a).entries) {
                const Rational gap = jk::rational_abs_pow(pushed[lambda] - p, 1);
                if (gap > worst) worst = gap;
            }
            exact_check(out, "growth-coherence", worst, Rational(0),
                        {{"n", std::to_string(n)}, {"alpha", jk::format_rational(a)}});
        }
        // Exact increment moments.
        for (unsigned n = 2; n <= n_max; ++n) {
            auto reports = jk::kerov_growth::growth_moment_report(n, a);
            out.insert(out.end(), reports.begin(), reports.end());
        }
    }
    return out;
}

std::vector<BoundReport> suite_zerobias(unsigned n_max, const std::vector<Rational>& alphas) {
    std::vector<BoundReport> out;
    auto run = [&out](const jk::zero_bias::AtomicLaw& law, const std::string& label) {
        auto rs = jk::zero_bias::zb_identity_report(law, 7, label);
        out.insert(out.end(), rs.begin(), rs.end());
    };
    run(jk::zero_bias::rademacher(), "rademacher");
    run(jk::zero_bias::centered_bernoulli(Rational(1, 4)), "bernoulli(1/4)");
    for (const Rational& a : alphas)
        for (unsigned n = 2; n <= std::min(n_max, 10u); ++n)
            run(jk::zero_bias::from_eta_law(jk::kerov_growth::eta_law(n, a)),
                "eta(" + std::to_string(n) + "," + jk::format_rational(a) + ")");
    return out;
}

std::vector<BoundReport> suite_ks(unsigned n_max, const std::vector<Rational>& alphas) {
    std::vector<BoundReport> out;
    for (const Rational& a : alphas) {
        for (unsigned n = 3; n <= n_max; ++n) {
            const auto s_law = jk::stein_bounds::char_statistic_law(n, a);
            const auto atoms =
                jk::stein_bounds::scaled_atoms(s_law, jk::jack_measure::w_normalizer(n, a));
            const auto ks = jk::stein_bounds::ks_exact_discrete(atoms);
            auto reports = jk::stein_bounds::uniform_bound_reports(n, jk::to_double(a),
                                                                   &ks.distance);
            out.insert(out.end(), reports.begin(), reports.end());
        }
    }
    return out;
}

std::vector<BoundReport> suite_tails(unsigned n_max, const std::vector<Rational>& alphas,
                                     const std::vector<double>& qs) {
    std::vector<BoundReport> out;
    for (const Rational& a : alphas) {
        for (unsigned n = 1; n <= n_max; ++n) {
            auto rs = jk::stein_bounds::row_tail_report(n, a);
            out.insert(out.end(), rs.begin(), rs.end());
        }
        if (a >= 1)
            for (unsigned n = 4; n <= n_max; ++n)
                for (double q : qs) {
                    auto rs = jk::stein_bounds::light_tail_report(n, a, q);
                    out.insert(out.end(), rs.begin(), rs.end());
                }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

struct ManifestSink {
    std::string path = "runs/manifest.jsonl";
    void write(const std::string& subcommand, const std::map<std::string, std::string>& params,
               const std::vector<std::string>& paths, bool ok) const {
        jk::io::append_manifest(path, subcommand, params, paths, ok ? "pass" : "fail");
    }
};

int cmd_enumerate(unsigned n, const std::string& format, const std::string& out_path) {
    const auto parts = jk::partitions::enumerate_partitions(n);
    if (format == "json") {
        json names = json::array();
        for (const auto& p : parts) names.push_back(p.to_string());
        emit(json{{"n", n}, {"count", parts.size()}, {"partitions", names}}, out_path);
    } else {
        std::string text;
        for (const auto& p : parts) text += p.to_string() + "\n";
        emit_text(text, out_path);
    }
    return 0;
}

int cmd_measure(unsigned n, const Rational& alpha, const std::string& format,
                const std::string& out_path) {
    const auto law = jk::jack_measure::jack_distribution(n, alpha);
    if (format == "csv") {
        std::ostringstream os;
        jk::io::write_measure_csv(os, law);
        emit_text(os.str(), out_path);
    } else {
        emit(jk::io::to_json(law), out_path);
    }
    return 0;
}

int cmd_sample(unsigned n, double alpha, std::uint64_t num, std::uint64_t seed,
               const std::string& format, double bin_width, const std::string& out_path) {
    if (format == "csv") {
        std::string text = "w_value\n";
        jk::kerov_growth::GrowthSampler sampler(alpha);
        jk::rng::Xoshiro256pp stream;
        for (std::uint64_t i = 0; i < num; ++i) {
            stream.reseed(seed, i);
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g\n",
                          jk::kerov_growth::sample_w(n, alpha, stream, sampler));
            text += buf;
        }
        emit_text(text, out_path);
        return 0;
    }
    // Aggregated JSON summary: moments plus a fixed-grid histogram.
    jk::kerov_growth::GrowthSampler sampler(alpha);
    jk::rng::Xoshiro256pp stream;
    long double s1 = 0, s2 = 0, s4 = 0;
    std::map<long long, std::uint64_t> hist;  // key = floor(w / bin_width)
    for (std::uint64_t i = 0; i < num; ++i) {
        stream.reseed(seed, i);
        const double w = jk::kerov_growth::sample_w(n, alpha, stream, sampler);
        const long double wl = w;
        s1 += wl;
        s2 += wl * wl;
        s4 += wl * wl * wl * wl;
        hist[static_cast<long long>(std::floor(w / bin_width))]++;
    }
    const long double inv = 1.0L / static_cast<long double>(num);
    json bins = json::array();
    for (const auto& [k, c] : hist)
        bins.push_back({{"lo", static_cast<double>(k) * bin_width},
                        {"hi", static_cast<double>(k + 1) * bin_width},
                        {"count", c}});
    emit(json{{"config",
               {{"n", n}, {"alpha", alpha}, {"num_samples", num}, {"seed", seed},
                {"bin_width", bin_width}}},
              {"moments",
               {{"mean", static_cast<double>(s1 * inv)},
                {"second", static_cast<double>(s2 * inv)},
                {"fourth", static_cast<double>(s4 * inv)}}},
              {"histogram", bins}},
         out_path);
    return 0;
}

int cmd_mcks(const jk::mc_engine::McConfig& cfg, const std::string& out_path) {
    const auto rep = jk::mc_engine::run_mc_growth(cfg);
    emit(jk::io::to_json(rep, cfg), out_path);
    std::cerr << "[mcks] " << rep.samples_per_sec << " samples/sec over " << rep.seconds
              << " s\n";
    return any_failure(rep.bounds) ? 1 : 0;
}

jk::zero_bias::AtomicLaw load_law(const std::string& law_text) {
    if (law_text == "rademacher") return jk::zero_bias::rademacher();
    if (law_text.rfind("bernoulli:", 0) == 0)
        return jk::zero_bias::centered_bernoulli(parse_scalar(law_text.substr(10)));
    if (law_text.rfind("eta:", 0) == 0) {
        const auto rest = law_text.substr(4);
        const auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("use eta:<n>:<alpha>");
        const unsigned n = static_cast<unsigned>(std::stoul(rest.substr(0, colon)));
        return jk::zero_bias::from_eta_law(
            jk::kerov_growth::eta_law(n, parse_scalar(rest.substr(colon + 1))));
    }
    json j;
    if (law_text == "-") {
        std::cin >> j;
    } else {
        std::ifstream in(law_text);
        if (!in) throw std::invalid_argument("law argument is neither a builtin nor a readable file: " +
                                             law_text);
        in >> j;
    }
    return jk::io::atomic_law_from_json(j);
}

int cmd_zerobias(const std::string& law_arg, const std::string& check, double p_real,
                 unsigned p_int, unsigned m, unsigned k_max, const std::string& out_path) {
    if (check == "kappa") {
        auto reports = jk::zero_bias::kappa_lemma_check(p_real);
        const auto kc = jk::zero_bias::kappa_constant(p_real);
        reports.push_back(BoundReport::informational("kappa-value", kc.p, kc.value,
                                                     {{"scale", "linear"}}));
        emit(jk::io::to_json(reports), out_path);
        return any_failure(reports) ? 1 : 0;
    }
    const auto law = load_law(law_arg);
    if (check == "identity") {
        const auto reports = jk::zero_bias::zb_identity_report(law, k_max, law_arg);
        emit(jk::io::to_json(reports), out_path);
        return any_failure(reports) ? 1 : 0;
    }
    if (check == "rosenthal") {
        const auto laws = jk::zero_bias::iid_laws(law, m);
        const std::vector<BoundReport> reports{
            jk::zero_bias::rosenthal_coupling_check(laws, p_int, law_arg),
            jk::zero_bias::rosenthal_norm_check(laws, p_int, law_arg)};
        emit(jk::io::to_json(reports), out_path);
        return any_failure(reports) ? 1 : 0;
    }
    // No check requested: emit the transformed law itself.
    emit(jk::io::to_json(jk::zero_bias::zero_bias_transform(law)), out_path);
    return 0;
}

int cmd_bounds(unsigned n, const Rational& alpha, bool exact, const std::vector<double>& qs,
               const std::vector<unsigned>& ps, const std::string& format,
               const std::string& out_path, const ManifestSink& manifest) {
    std::vector<BoundReport> reports;
    const double a = jk::to_double(alpha);
    std::optional<double> exact_distance;
    if (exact) {
        const auto s_law = jk::stein_bounds::char_statistic_law(n, alpha);
        exact_distance = jk::stein_bounds::ks_exact_discrete(
                             jk::stein_bounds::scaled_atoms(
                                 s_law, jk::jack_measure::w_normalizer(n, alpha)))
                             .distance;
    }
    auto uni = jk::stein_bounds::uniform_bound_reports(
        n, a, exact_distance ? &*exact_distance : nullptr);
    reports.insert(reports.end(), uni.begin(), uni.end());
    for (double q : qs) {
        auto rs = jk::stein_bounds::light_tail_report(n, alpha, q);
        reports.insert(reports.end(), rs.begin(), rs.end());
    }
    const double nd = static_cast<double>(n);
    for (unsigned p : ps) {
        if (a >= nd * nd)
            reports.push_back(jk::stein_bounds::moment_profile_large_alpha(n, alpha, p));
        else
            reports.push_back(jk::stein_bounds::nonuniform_profile_report(n, alpha, p));
    }
    if (format == "csv") {
        std::ostringstream os;
        jk::io::write_bounds_csv(os, reports);
        emit_text(os.str(), out_path);
    } else {
        emit(jk::io::to_json(reports), out_path);
    }
    const bool ok = !any_failure(reports);
    manifest.write("bounds",
                   {{"n", std::to_string(n)},
                    {"alpha", jk::format_rational(alpha)},
                    {"exact", exact ? "true" : "false"}},
                   out_path.empty() ? std::vector<std::string>{}
                                    : std::vector<std::string>{out_path},
                   ok);
    return ok ? 0 : 1;
}

int cmd_ks(unsigned n, const Rational& alpha, const std::string& target,
           const std::string& out_path) {
    const auto s_law = jk::stein_bounds::char_statistic_law(n, alpha);
    const double scale = jk::jack_measure::w_normalizer(n, alpha);
    jk::KSResult ks;
    if (target == "w-star") {
        const auto zb = jk::zero_bias::zero_bias_transform(s_law);
        std::vector<double> knots, density;
        for (const auto& x : zb.knots) knots.push_back(jk::to_double(x) / scale);
        // Scaling a density by 1/scale in x multiplies levels by scale.
        for (const auto& d : zb.density) density.push_back(jk::to_double(d) * scale);
        ks = jk::stein_bounds::ks_exact_piecewise(knots, density);
    } else {
        ks = jk::stein_bounds::ks_exact_discrete(jk::stein_bounds::scaled_atoms(s_law, scale));
    }
    emit(jk::io::to_json(ks), out_path);
    return 0;
}

int cmd_verify(const std::string& suite, unsigned n_max, const std::vector<Rational>& alphas,
               const std::vector<double>& qs, bool json_out, const std::string& out_path,
               const ManifestSink& manifest) {
    std::vector<BoundReport> reports;
    auto add = [&reports](std::vector<BoundReport> rs) {
        reports.insert(reports.end(), std::make_move_iterator(rs.begin()),
                       std::make_move_iterator(rs.end()));
    };
    const bool all = suite == "all";
    if (all || suite == "measure") add(suite_measure(n_max, alphas));
    if (all || suite == "growth") add(suite_growth(n_max, alphas));
    if (all || suite == "zerobias") add(suite_zerobias(n_max, alphas));
    if (all || suite == "ks") add(suite_ks(n_max, alphas));
    if (all || suite == "tails") add(suite_tails(n_max, alphas, qs));
    if (reports.empty()) throw std::invalid_argument("unknown suite: " + suite);

    std::size_t failures = 0;
    for (const auto& r : reports)
        if (r.verdict == Verdict::fail) ++failures;
    if (json_out || failures > 0) {
        // Full detail (or failing subset) as JSON.
        std::vector<BoundReport> shown;
        for (const auto& r : reports)
            if (json_out || r.verdict == Verdict::fail) shown.push_back(r);
        emit(json{{"suite", suite},
                  {"checks", reports.size()},
                  {"failures", failures},
                  {"detail", jk::io::to_json(shown)}},
             out_path);
    } else {
        emit_text("verify: " + std::to_string(reports.size()) + " checks, all passed\n",
                  out_path);
    }
    manifest.write("verify",
                   {{"suite", suite},
                    {"n_max", std::to_string(n_max)},
                    {"checks", std::to_string(reports.size())},
                    {"failures", std::to_string(failures)}},
                   out_path.empty() ? std::vector<std::string>{}
                                    : std::vector<std::string>{out_path},
                   failures == 0);
    return failures == 0 ? 0 : 1;
}

int cmd_report(const std::string& manifest_path, const std::string& out_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::invalid_argument("manifest not found: " + manifest_path);
    std::map<std::string, std::map<std::string, unsigned>> counts;
    json last;
    std::string line;
    unsigned total = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        last = json::parse(line);
        counts[last.at("subcommand").get<std::string>()]
              [last.at("verdict").get<std::string>()]++;
        ++total;
    }
    json summary = json::object();
    for (const auto& [cmd, by_verdict] : counts) summary[cmd] = by_verdict;
    emit(json{{"manifest", manifest_path},
              {"runs", total},
              {"by_subcommand", summary},
              {"last", last}},
         out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and statistical analysis of a deformed measure on integer partitions"};
    app.require_subcommand(1);

    std::string alpha_text = "1", format = "json", out_path, law_arg = "rademacher";
    std::string target = "w", suite = "all", check, alpha_grid = "1,2,1/2,5/3";
    std::string manifest_path = "runs/manifest.jsonl";
    unsigned n = 6, n_max = 8, m = 1, p_int = 4, k_max = 7;
    double p_real = 10.0, bin_width = 0.05, delta = 1e-3;
    std::uint64_t num = 1000, seed = 0;  // all randomized commands default to seed 0
    unsigned workers = 1;
    bool exact = false, json_out = false;
    std::vector<double> qs;
    std::vector<unsigned> ps;

    auto* c_enum = app.add_subcommand("enumerate", "List the partitions of n");
    c_enum->add_option("--n", n, "Partition size")->required();
    c_enum->add_option("--format", format, "json|plain");
    c_enum->add_option("--out", out_path, "Output file (default stdout)");

    auto* c_measure = app.add_subcommand("measure", "Exact measure on partitions of n");
    c_measure->add_option("--n", n, "Partition size")->required();
    c_measure->add_option("--alpha", alpha_text, "Deformation parameter (p/q or decimal)");
    c_measure->add_option("--format", format, "json|csv");
    c_measure->add_option("--out", out_path, "Output file (default stdout)");

    auto* c_sample = app.add_subcommand("sample", "Sample growth paths; CSV dump or summary");
    c_sample->add_option("--n", n, "Partition size")->required();
    c_sample->add_option("--alpha", alpha_text, "Deformation parameter");
    c_sample->add_option("--num", num, "Number of samples");
    c_sample->add_option("--seed", seed, "RNG seed (default 0)");
    c_sample->add_option("--format", format, "csv|json");
    c_sample->add_option("--bin-width", bin_width, "Histogram bin width (json format)");
    c_sample->add_option("--out", out_path, "Output file (default stdout)");

    auto* c_mcks = app.add_subcommand("mcks", "Monte Carlo Kolmogorov-distance run");
    c_mcks->add_option("--n", n, "Partition size")->required();
    c_mcks->add_option("--alpha", alpha_text, "Deformation parameter");
    c_mcks->add_option("--num", num, "Number of samples");
    c_mcks->add_option("--seed", seed, "RNG seed (default 0)");
    c_mcks->add_option("--workers", workers, "Worker threads");
    c_mcks->add_option("--delta", delta, "DKW confidence parameter");
    c_mcks->add_option("--out", out_path, "Output file (default stdout)");

    auto* c_zb = app.add_subcommand("zerobias", "Zero-bias transform and its checks");
    c_zb->add_option("--law", law_arg,
                     "JSON file / '-' / rademacher | bernoulli:<q> | eta:<n>:<alpha>");
    c_zb->add_option("--check", check, "identity|rosenthal|kappa (default: emit the transform)");
    c_zb->add_option("--p", p_real, "Moment order (kappa check; real > 8)");
    c_zb->add_option("--p-int", p_int, "Moment order (rosenthal check; integer >= 2)");
    c_zb->add_option("--m", m, "Number of iid summands (rosenthal check)");
    c_zb->add_option("--k", k_max, "Highest identity order (identity check)");
    c_zb->add_option("--out", out_path, "Output file (default stdout)");

    auto* c_bounds = app.add_subcommand("bounds", "Bound reports for given n, alpha");
    c_bounds->add_option("--n", n, "Partition size")->required();
    c_bounds->add_option("--alpha", alpha_text, "Deformation parameter");
    c_bounds->add_flag("--exact", exact, "Compute the exact distance as lhs (enumerates)");
    c_bounds->add_option("--q", qs, "Light-tail parameters (repeatable; needs alpha >= 1)");
    c_bounds->add_option("--p", ps, "Nonuniform profile orders (repeatable)");
    c_bounds->add_option("--format", format, "json|csv");
    c_bounds->add_option("--out", out_path, "Output file (default stdout)");
    c_bounds->add_option("--manifest", manifest_path, "Manifest path (JSONL, append-only)");

    auto* c_ks = app.add_subcommand("ks", "Exact distance to the normal law");
    c_ks->add_option("--n", n, "Partition size")->required();
    c_ks->add_option("--alpha", alpha_text, "Deformation parameter");
    c_ks->add_option("--target", target, "w (atomic) | w-star (transformed, piecewise)");
    c_ks->add_option("--out", out_path, "Output file (default stdout)");

    auto* c_verify = app.add_subcommand("verify", "Exact invariant suites");
    c_verify->add_option("--suite", suite, "measure|growth|zerobias|ks|tails|all");
    c_verify->add_option("--n-max", n_max, "Largest partition size to verify");
    c_verify->add_option("--alpha-grid", alpha_grid, "Comma-separated alphas (p/q or decimal)");
    c_verify->add_option("--q", qs, "Light-tail parameters (default 2,4)");
    c_verify->add_flag("--json", json_out, "Emit full per-check JSON detail");
    c_verify->add_option("--out", out_path, "Output file (default stdout)");
    c_verify->add_option("--manifest", manifest_path, "Manifest path (JSONL, append-only)");

    auto* c_report = app.add_subcommand("report", "Summarize the run manifest");
    c_report->add_option("--manifest", manifest_path, "Manifest path");
    c_report->add_option("--out", out_path, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version -> 0, any parse problem -> 2
    }

    try {
        if (c_enum->parsed()) return cmd_enumerate(n, format, out_path);
        if (c_measure->parsed())
            return cmd_measure(n, parse_scalar(alpha_text), format, out_path);
        if (c_sample->parsed())
            return cmd_sample(n, jk::to_double(parse_scalar(alpha_text)), num, seed, format,
                              bin_width, out_path);
        if (c_mcks->parsed()) {
            jk::mc_engine::McConfig cfg;
            cfg.n = n;
            cfg.alpha = jk::to_double(parse_scalar(alpha_text));
            cfg.num_samples = num;
            cfg.seed = seed;
            cfg.workers = workers;
            cfg.delta = delta;
            return cmd_mcks(cfg, out_path);
        }
        if (c_zb->parsed())
            return cmd_zerobias(law_arg, check, p_real, p_int, m, k_max, out_path);
        if (c_bounds->parsed())
            return cmd_bounds(n, parse_scalar(alpha_text), exact, qs, ps, format, out_path,
                              ManifestSink{manifest_path});
        if (c_ks->parsed()) return cmd_ks(n, parse_scalar(alpha_text), target, out_path);
        if (c_verify->parsed()) {
            if (qs.empty()) qs = {2.0, 4.0};
            return cmd_verify(suite, n_max, parse_scalar_list(alpha_grid), qs, json_out,
                              out_path, ManifestSink{manifest_path});
        }
        if (c_report->parsed()) return cmd_report(manifest_path, out_path);
        return 2;
    } catch (const jk::verification_error& e) {
        std::cout << json{{"error", "verification"}, {"message", e.what()}}.dump(2) << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
