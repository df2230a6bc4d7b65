#pragma once

// JSON / CSV serialization for the public data types plus the append-only run
// manifest.  Schemas:
//   PartitionLaw  {n, alpha, entries: [{partition, prob: "p/q", w}]}
//   BoundReport   {name, lhs, rhs, verdict, context}
//   KSResult      {distance, witness_x, method, dkw_margin?}
//   McReport      {ks, moments, config, ...}
//   manifest line {subcommand, params, version, timestamp, paths, verdict}

#include "jackstein/jack_measure.hpp"
#include "jackstein/mc_engine.hpp"
#include "jackstein/rational.hpp"
#include "jackstein/report.hpp"
#include "jackstein/zero_bias.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace jackstein::io {

using nlohmann::json;

inline json to_json(const jack_measure::PartitionLaw& law) {
    json entries = json::array();
    for (const auto& [lambda, prob] : law.entries)
        entries.push_back({{"partition", lambda.to_string()},
                           {"prob", format_rational(prob)},
                           {"w", jack_measure::w_value(lambda, law.alpha)}});
    return json{{"n", law.n}, {"alpha", format_rational(law.alpha)}, {"entries", entries}};
}

inline jack_measure::PartitionLaw partition_law_from_json(const json& j) {
    jack_measure::PartitionLaw law;
    law.n = j.at("n").get<unsigned>();
    law.alpha = parse_rational(j.at("alpha").get<std::string>());
    for (const auto& e : j.at("entries"))
        law.entries.emplace_back(partitions::Partition::parse(e.at("partition").get<std::string>()),
                                 parse_rational(e.at("prob").get<std::string>()));
    return law;
}

inline void write_measure_csv(std::ostream& os, const jack_measure::PartitionLaw& law) {
    os << "partition,prob_num,prob_den,prob_float,w_value\n";
    for (const auto& [lambda, prob] : law.entries)
        os << '"' << lambda.to_string() << "\"," << numerator(prob) << ',' << denominator(prob)
           << ',' << to_double(prob) << ',' << jack_measure::w_value(lambda, law.alpha) << '\n';
}

inline json to_json(const BoundReport& r) {
    return json{{"name", r.name},
                {"lhs", r.lhs},
                {"rhs", r.rhs},
                {"verdict", verdict_name(r.verdict)},
                {"context", r.context}};
}

inline json to_json(const std::vector<BoundReport>& rs) {
    json arr = json::array();
    for (const auto& r : rs) arr.push_back(to_json(r));
    return arr;
}

inline std::string csv_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void write_bounds_csv(std::ostream& os, const std::vector<BoundReport>& rs) {
    os << "name,lhs,rhs,verdict,context\n";
    for (const auto& r : rs) {
        std::string ctx;
        for (const auto& [k, v] : r.context) {
            if (!ctx.empty()) ctx += ';';
            ctx += k + "=" + v;
        }
        os << r.name << ',' << r.lhs << ',' << r.rhs << ',' << verdict_name(r.verdict) << ','
           << csv_escape(ctx) << '\n';
    }
}

inline json to_json(const KSResult& ks) {
    json j{{"distance", ks.distance},
           {"witness_x", ks.witness_x},
           {"method", ks_method_name(ks.method)}};
    if (ks.method == KSMethod::empirical) j["dkw_margin"] = ks.dkw_margin;
    return j;
}

inline json to_json(const mc_engine::McReport& rep, const mc_engine::McConfig& cfg) {
    return json{{"ks", to_json(rep.ks)},
                {"moments",
                 {{"mean", rep.moments.mean},
                  {"var", rep.moments.var},
                  {"fourth", rep.moments.fourth}}},
                {"config",
                 {{"n", cfg.n},
                  {"alpha", cfg.alpha},
                  {"num_samples", cfg.num_samples},
                  {"seed", cfg.seed},
                  {"workers", cfg.workers},
                  {"delta", cfg.delta}}},
                {"seconds", rep.seconds},
                {"samples_per_sec", rep.samples_per_sec},
                {"bounds", to_json(rep.bounds)}};
}

inline json to_json(const zero_bias::ZeroBiasedLaw& zb) {
    json knots = json::array(), dens = json::array();
    for (const auto& x : zb.knots) knots.push_back(format_rational(x));
    for (const auto& d : zb.density) dens.push_back(format_rational(d));
    return json{{"breakpoints", knots},
                {"density_levels", dens},
                {"sigma2", format_rational(zb.sigma2)}};
}

// Accepts {atoms: [...], masses: [...]} with entries either "p/q" strings
// (exact mode) or JSON numbers (float mode; values within 1e-12 are merged).
inline zero_bias::AtomicLaw atomic_law_from_json(const json& j) {
    const auto& atoms = j.at("atoms");
    const auto& masses = j.at("masses");
    if (atoms.size() != masses.size() || atoms.empty())
        throw std::invalid_argument("atoms and masses must be nonempty and match in length");
    auto scalar = [](const json& v) -> Rational {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        return Rational(v.get<double>());
    };
    std::vector<std::pair<Rational, Rational>> raw;
    bool float_mode = false;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].is_number() || masses[i].is_number()) float_mode = true;
        raw.emplace_back(scalar(atoms[i]), scalar(masses[i]));
    }
    if (float_mode) {
        std::sort(raw.begin(), raw.end());
        std::vector<std::pair<Rational, Rational>> merged;
        for (auto& [v, m] : raw) {
            if (!merged.empty() && to_double(v - merged.back().first) < 1e-12)
                merged.back().second += m;
            else
                merged.emplace_back(v, m);
        }
        // Absorb float rounding in the total mass before the exactness check.
        Rational total = 0;
        for (auto& [v, m] : merged) total += m;
        if (total != 1 && std::abs(to_double(total) - 1.0) <= 1e-12)
            for (auto& [v, m] : merged) m /= total;
        raw = std::move(merged);
    }
    return zero_bias::make_atomic(std::move(raw));
}

// Appends exactly one manifest line; creates the parent directory if needed.
inline void append_manifest(const std::filesystem::path& path, const std::string& subcommand,
                            const std::map<std::string, std::string>& params,
                            const std::vector<std::string>& paths, const std::string& verdict) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    const json line{{"subcommand", subcommand}, {"params", params},
                    {"version", JACKSTEIN_VERSION}, {"timestamp", stamp},
                    {"paths", paths},             {"verdict", verdict}};
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open manifest file: " + path.string());
    out << line.dump() << '\n';
}

}  // namespace jackstein::io
