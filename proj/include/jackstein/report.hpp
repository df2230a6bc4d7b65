#pragma once

// Uniform result records shared by every bound evaluator: a measured quantity
// paired with its bound and a pass/fail/report-only verdict, plus the
// Kolmogorov-distance result type.

#include "jackstein/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace jackstein {

enum class Verdict { pass, fail, report_only };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "report-only";
    }
}

struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    Verdict verdict = Verdict::report_only;
    std::map<std::string, std::string> context;  // n, alpha, p, x, q, eps, delta, ...

    // verdict=pass iff lhs <= rhs + tolerance (tolerance in the bound's favor).
    static BoundReport asserted(std::string name, double lhs, double rhs,
                                std::map<std::string, std::string> context = {},
                                double tolerance = 1e-10) {
        BoundReport r;
        r.name = std::move(name);
        r.lhs = lhs;
        r.rhs = rhs;
        r.verdict = (lhs <= rhs + tolerance) ? Verdict::pass : Verdict::fail;
        r.context = std::move(context);
        return r;
    }

    static BoundReport informational(std::string name, double lhs, double rhs,
                                     std::map<std::string, std::string> context = {}) {
        BoundReport r;
        r.name = std::move(name);
        r.lhs = lhs;
        r.rhs = rhs;
        r.verdict = Verdict::report_only;
        r.context = std::move(context);
        return r;
    }
};

// Throws verification_error listing every failed report; report-only entries
// never fail a run.
inline void require_all_pass(const std::vector<BoundReport>& reports) {
    std::string failures;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::fail) {
            failures += "  " + r.name + ": lhs=" + std::to_string(r.lhs) +
                        " > rhs=" + std::to_string(r.rhs) + "\n";
        }
    }
    if (!failures.empty()) throw verification_error("bound verification failed:\n" + failures);
}

enum class KSMethod { exact_discrete, exact_piecewise, empirical };

inline const char* ks_method_name(KSMethod m) {
    switch (m) {
        case KSMethod::exact_discrete: return "exact-discrete";
        case KSMethod::exact_piecewise: return "exact-piecewise";
        default: return "empirical";
    }
}

struct KSResult {
    double distance = 0.0;
    double witness_x = 0.0;   // location of the supremum
    KSMethod method = KSMethod::exact_discrete;
    double dkw_margin = 0.0;  // meaningful only for the empirical method
};

}  // namespace jackstein
