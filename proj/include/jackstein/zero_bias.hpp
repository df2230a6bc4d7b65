#pragma once

// Zero-bias transform of mean-zero finite discrete laws, exact in rational
// arithmetic: the transformed law has the piecewise-constant density
//   f*(x) = E[X 1(X > x)] / sigma^2  on [x_k, x_{k+1}),
// so its moments and coupling moments are closed-form rationals.  On top of
// the transform sit the Rosenthal-type moment inequalities and the kappa_p
// constant with its two growth lemmas.

#include "jackstein/kerov_growth.hpp"
#include "jackstein/rational.hpp"
#include "jackstein/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jackstein::zero_bias {

// ---------------------------------------------------------------------------
// Exact discrete laws
// ---------------------------------------------------------------------------

struct AtomicLaw {
    // (value, mass) with strictly increasing values, positive masses, total 1.
    std::vector<std::pair<Rational, Rational>> atoms;
};

inline AtomicLaw make_atomic(std::vector<std::pair<Rational, Rational>> raw) {
    std::map<Rational, Rational> acc;
    for (auto& [v, m] : raw) acc[v] += m;
    AtomicLaw law;
    Rational total = 0;
    for (auto& [v, m] : acc) {
        if (m < 0) throw std::domain_error("atom masses must be nonnegative");
        if (m == 0) continue;
        law.atoms.emplace_back(v, m);
        total += m;
    }
    if (total != 1) throw std::domain_error("atom masses must sum to 1");
    if (law.atoms.empty()) throw std::domain_error("law must have at least one atom");
    return law;
}

inline AtomicLaw rademacher() { return make_atomic({{-1, Rational(1, 2)}, {1, Rational(1, 2)}}); }

// B - q with B ~ Bernoulli(q): the canonical asymmetric two-point law.
inline AtomicLaw centered_bernoulli(const Rational& q) {
    if (q <= 0 || q >= 1) throw std::domain_error("Bernoulli parameter must be in (0,1)");
    return make_atomic({{-q, 1 - q}, {1 - q, q}});
}

inline AtomicLaw from_eta_law(const kerov_growth::EtaLaw& law) {
    AtomicLaw out;
    out.atoms = law.atoms;
    return out;
}

inline Rational moment(const AtomicLaw& law, unsigned k) {
    Rational m = 0;
    for (const auto& [v, mass] : law.atoms) m += mass * rational_pow(v, k);
    return m;
}

inline Rational abs_moment(const AtomicLaw& law, unsigned k) {
    Rational m = 0;
    for (const auto& [v, mass] : law.atoms) m += mass * rational_abs_pow(v, k);
    return m;
}

inline Rational variance(const AtomicLaw& law) {
    const Rational mu = moment(law, 1);
    return moment(law, 2) - mu * mu;
}

inline AtomicLaw scale_law(const AtomicLaw& law, const Rational& c) {
    if (c == 0) throw std::domain_error("scale factor must be nonzero");
    AtomicLaw out;
    out.atoms.reserve(law.atoms.size());
    for (const auto& [v, m] : law.atoms) out.atoms.emplace_back(c * v, m);
    if (c < 0) std::reverse(out.atoms.begin(), out.atoms.end());
    return out;
}

inline AtomicLaw convolve(const AtomicLaw& a, const AtomicLaw& b) {
    std::map<Rational, Rational> acc;
    for (const auto& [va, ma] : a.atoms)
        for (const auto& [vb, mb] : b.atoms) acc[va + vb] += ma * mb;
    AtomicLaw out;
    out.atoms.assign(acc.begin(), acc.end());
    return out;
}

inline AtomicLaw iid_sum(const AtomicLaw& law, unsigned m) {
    if (m == 0) throw std::domain_error("need at least one summand");
    AtomicLaw out = law;
    for (unsigned i = 1; i < m; ++i) out = convolve(out, law);
    return out;
}

// ---------------------------------------------------------------------------
// The transform
// ---------------------------------------------------------------------------

struct ZeroBiasedLaw {
    std::vector<Rational> knots;    // x_1 < ... < x_m (atom positions of the base law)
    std::vector<Rational> density;  // density on [knots[k], knots[k+1]); size = knots-1
    Rational sigma2 = 0;            // variance of the base law
};

inline ZeroBiasedLaw zero_bias_transform(const AtomicLaw& law) {
    if (law.atoms.size() < 2)
        throw std::domain_error("zero-bias transform requires a nondegenerate law");
    if (moment(law, 1) != 0) throw std::domain_error("zero-bias transform requires mean zero");
    ZeroBiasedLaw zb;
    zb.sigma2 = variance(law);
    const std::size_t m = law.atoms.size();
    zb.knots.reserve(m);
    for (const auto& [v, mass] : law.atoms) zb.knots.push_back(v);
    zb.density.resize(m - 1);
    Rational suffix = 0;  // E[X 1(X > x)] for x in the current interval
    for (std::size_t k = m - 1; k-- > 0;) {
        suffix += law.atoms[k + 1].first * law.atoms[k + 1].second;
        zb.density[k] = suffix / zb.sigma2;
        if (zb.density[k] < 0) throw verification_error("zero-bias density went negative");
    }
    Rational total = 0;
    for (std::size_t k = 0; k + 1 < m; ++k)
        total += zb.density[k] * (zb.knots[k + 1] - zb.knots[k]);
    if (total != 1) throw verification_error("zero-bias density does not integrate to 1");
    return zb;
}

// E[(X*)^q], exact.
inline Rational zb_moment(const ZeroBiasedLaw& zb, unsigned q) {
    if (q > 16) throw std::domain_error("moment order above guard (16)");
    Rational m = 0;
    for (std::size_t k = 0; k + 1 < zb.knots.size(); ++k)
        m += zb.density[k] *
             (rational_pow(zb.knots[k + 1], q + 1) - rational_pow(zb.knots[k], q + 1)) /
             Rational(q + 1);
    return m;
}

// Signed antiderivative of |t|^q: S(u) = sign(u) |u|^{q+1} / (q+1).
inline Rational abs_power_antiderivative(const Rational& u, unsigned q) {
    Rational s = rational_abs_pow(u, q + 1) / Rational(q + 1);
    return u < 0 ? -s : s;
}

// E|X*|^q, exact.
inline Rational zb_abs_moment(const ZeroBiasedLaw& zb, unsigned q) {
    if (q > 16) throw std::domain_error("moment order above guard (16)");
    Rational m = 0;
    for (std::size_t k = 0; k + 1 < zb.knots.size(); ++k)
        m += zb.density[k] * (abs_power_antiderivative(zb.knots[k + 1], q) -
                              abs_power_antiderivative(zb.knots[k], q));
    return m;
}

// E|X* - X|^q for X ~ law and X* ~ zb drawn independently, exact.
inline Rational coupling_abs_moment(const AtomicLaw& law, const ZeroBiasedLaw& zb, unsigned q) {
    if (q > 16) throw std::domain_error("moment order above guard (16)");
    Rational m = 0;
    for (const auto& [a, mass] : law.atoms) {
        Rational inner = 0;
        for (std::size_t k = 0; k + 1 < zb.knots.size(); ++k)
            inner += zb.density[k] * (abs_power_antiderivative(zb.knots[k + 1] - a, q) -
                                      abs_power_antiderivative(zb.knots[k] - a, q));
        m += mass * inner;
    }
    return m;
}

// Checks E[X^{k+1}] = sigma^2 * k * E[(X*)^{k-1}] for k = 1..k_max; verdicts
// are exact rational equalities.
inline std::vector<BoundReport> zb_identity_report(const AtomicLaw& law, unsigned k_max,
                                                   const std::string& label) {
    const ZeroBiasedLaw zb = zero_bias_transform(law);
    std::vector<BoundReport> out;
    for (unsigned k = 1; k <= k_max; ++k) {
        const Rational lhs = moment(law, k + 1);
        const Rational rhs = zb.sigma2 * Rational(k) * zb_moment(zb, k - 1);
        BoundReport r;
        r.name = "zero-bias-moment-identity";
        r.lhs = to_double(lhs);
        r.rhs = to_double(rhs);
        r.verdict = (lhs == rhs) ? Verdict::pass : Verdict::fail;
        r.context = {{"k", std::to_string(k)}, {"law", label}};
        out.push_back(std::move(r));
    }
    return out;
}

// Double-precision view for sampling and CDF evaluation.
struct ZbSampler {
    std::vector<double> knots;
    std::vector<double> density;
    std::vector<double> cum;  // cum[k] = mass of (-inf, knots[k]]

    double cdf(double x) const {
        if (x <= knots.front()) return 0.0;
        if (x >= knots.back()) return 1.0;
        const auto it = std::upper_bound(knots.begin(), knots.end(), x);
        const std::size_t k = static_cast<std::size_t>(it - knots.begin()) - 1;
        return cum[k] + density[k] * (x - knots[k]);
    }

    template <class RNG>
    double sample(RNG& rng) const {
        const double u = rng.next_double();
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        std::size_t k = static_cast<std::size_t>(it - cum.begin());
        if (k == 0) k = 1;
        if (k >= cum.size()) k = cum.size() - 1;
        const std::size_t seg = k - 1;
        if (density[seg] <= 0.0) return knots[seg];
        return knots[seg] + (u - cum[seg]) / density[seg];
    }
};

inline ZbSampler make_sampler(const ZeroBiasedLaw& zb) {
    ZbSampler s;
    s.knots.reserve(zb.knots.size());
    for (const auto& x : zb.knots) s.knots.push_back(to_double(x));
    s.density.reserve(zb.density.size());
    for (const auto& d : zb.density) s.density.push_back(to_double(d));
    s.cum.resize(s.knots.size());
    Rational acc = 0;
    s.cum[0] = 0.0;
    for (std::size_t k = 0; k + 1 < zb.knots.size(); ++k) {
        acc += zb.density[k] * (zb.knots[k + 1] - zb.knots[k]);
        s.cum[k + 1] = to_double(acc);
    }
    s.cum.back() = 1.0;
    return s;
}

// ---------------------------------------------------------------------------
// Sums of independent laws and the random-index coupling
// ---------------------------------------------------------------------------

inline constexpr std::size_t kConvolutionAtomGuard = 1'000'000;

// Exact law of X_1 + ... + X_m with a combinatorial-blowup guard.
inline AtomicLaw sum_law(const std::vector<AtomicLaw>& laws) {
    if (laws.empty()) throw std::domain_error("need at least one summand");
    AtomicLaw out = laws.front();
    for (std::size_t i = 1; i < laws.size(); ++i) {
        if (out.atoms.size() * laws[i].atoms.size() > kConvolutionAtomGuard)
            throw std::length_error("exact convolution exceeds the 1e6 atom-combination guard");
        out = convolve(out, laws[i]);
    }
    return out;
}

// Coupled draw (W, W*, T) for W = sum X_i:  W* = W - X_I + X_I^* with
// P(I = i) = sigma_i^2 / sigma^2 and X_I^* zero-biased, drawn independently.
class SumCoupling {
public:
    struct Draw {
        double w = 0.0;
        double w_star = 0.0;
        double t = 0.0;  // w_star - w
    };

    explicit SumCoupling(const std::vector<AtomicLaw>& laws) {
        if (laws.empty()) throw std::domain_error("need at least one summand");
        Rational sigma2_total = 0;
        for (const auto& law : laws) {
            if (moment(law, 1) != 0) throw std::domain_error("summands must have mean zero");
            const Rational v = variance(law);
            if (v <= 0) throw std::domain_error("summands must have positive variance");
            sigma2_total += v;
            components_.push_back(Component{law_cdf(law), make_sampler(zero_bias_transform(law)),
                                            0.0});
            components_.back().index_mass = to_double(v);
        }
        double acc = 0.0;
        for (auto& comp : components_) {
            acc += comp.index_mass / to_double(sigma2_total);
            comp.index_cum = acc;
        }
        components_.back().index_cum = 1.0;
    }

    template <class RNG>
    Draw draw(RNG& rng) const {
        Draw d;
        std::vector<double> xs(components_.size());
        for (std::size_t i = 0; i < components_.size(); ++i) {
            xs[i] = sample_atomic(components_[i].atoms, rng);
            d.w += xs[i];
        }
        const double u = rng.next_double();
        std::size_t pick = components_.size() - 1;
        for (std::size_t i = 0; i < components_.size(); ++i)
            if (u < components_[i].index_cum) {
                pick = i;
                break;
            }
        const double x_star = components_[pick].star.sample(rng);
        d.w_star = d.w - xs[pick] + x_star;
        d.t = d.w_star - d.w;
        return d;
    }

private:
    struct AtomCdf {
        std::vector<double> values;
        std::vector<double> cum;
    };

    struct Component {
        AtomCdf atoms;
        ZbSampler star;
        double index_mass = 0.0;
        double index_cum = 0.0;
    };

    static AtomCdf law_cdf(const AtomicLaw& law) {
        AtomCdf c;
        Rational acc = 0;
        for (const auto& [v, m] : law.atoms) {
            acc += m;
            c.values.push_back(to_double(v));
            c.cum.push_back(to_double(acc));
        }
        c.cum.back() = 1.0;
        return c;
    }

    template <class RNG>
    static double sample_atomic(const AtomCdf& c, RNG& rng) {
        const double u = rng.next_double();
        const auto it = std::upper_bound(c.cum.begin(), c.cum.end(), u);
        const std::size_t k = std::min<std::size_t>(
            static_cast<std::size_t>(it - c.cum.begin()), c.values.size() - 1);
        return c.values[k];
    }

    std::vector<Component> components_;
};

// ---------------------------------------------------------------------------
// Rosenthal-type inequalities and the kappa_p constant
// ---------------------------------------------------------------------------

struct KappaConstant {
    double p = 0.0;
    double value = 0.0;
};

inline double kappa_log(double p) {
    return 3.0 * std::log(std::log(8.0)) - std::log(196.0) +
           p * (std::log(7.0 * p) - std::log(4.0 * std::log(p)));
}

inline double kappa(double p) { return std::exp(kappa_log(p)); }

inline KappaConstant kappa_constant(double p) {
    if (!(p >= 2)) throw std::domain_error("kappa requires p >= 2");
    return KappaConstant{p, kappa(p)};
}

// E|W|^p <= kappa_p (sigma^p + sigma^2 E|T|^{p-2}) for W = sum X_i mean zero,
// with the random-index coupling E|T|^{p-2} = sum_i (s_i^2/s^2) E|X_i^*-X_i|^{p-2}.
// Both sides' ingredients are exact rationals before the double comparison.
inline BoundReport rosenthal_coupling_check(const std::vector<AtomicLaw>& laws, unsigned p,
                                            const std::string& label) {
    if (p < 2) throw std::domain_error("moment order must be at least 2");
    const Rational lhs = abs_moment(sum_law(laws), p);
    Rational sigma2 = 0;
    for (const auto& law : laws) {
        if (moment(law, 1) != 0) throw std::domain_error("summands must have mean zero");
        sigma2 += variance(law);
    }
    Rational t_mom = 0;
    for (const auto& law : laws)
        t_mom += variance(law) / sigma2 *
                 coupling_abs_moment(law, zero_bias_transform(law), p - 2);
    const double sigma = std::sqrt(to_double(sigma2));
    const double rhs =
        kappa(static_cast<double>(p)) *
        (std::pow(sigma, static_cast<double>(p)) + to_double(sigma2) * to_double(t_mom));
    return BoundReport::asserted(
        "rosenthal-coupling", to_double(lhs), rhs,
        {{"laws", label}, {"m", std::to_string(laws.size())}, {"p", std::to_string(p)}});
}

// ||W||_p <= (3.5 p / log p) max{ ||W||_2, (sum_i E|X_i|^p)^{1/p} }.
inline BoundReport rosenthal_norm_check(const std::vector<AtomicLaw>& laws, unsigned p,
                                        const std::string& label) {
    if (p < 2) throw std::domain_error("moment order must be at least 2");
    const double pd = static_cast<double>(p);
    const double lhs = std::pow(to_double(abs_moment(sum_law(laws), p)), 1.0 / pd);
    Rational sigma2 = 0, p_mass = 0;
    for (const auto& law : laws) {
        if (moment(law, 1) != 0) throw std::domain_error("summands must have mean zero");
        sigma2 += variance(law);
        p_mass += abs_moment(law, p);
    }
    const double rhs = 3.5 * pd / std::log(pd) *
                       std::max(std::sqrt(to_double(sigma2)), std::pow(to_double(p_mass), 1.0 / pd));
    return BoundReport::asserted(
        "rosenthal-norm", lhs, rhs,
        {{"laws", label}, {"m", std::to_string(laws.size())}, {"p", std::to_string(p)}});
}

inline std::vector<AtomicLaw> iid_laws(const AtomicLaw& law, unsigned m) {
    return std::vector<AtomicLaw>(m, law);
}

// kappa_p / kappa_{p-2} >= 8 ((p-1)/log(p-1))^2 for p > 8, checked in log
// space (kappa_400 overflows doubles by hundreds of orders of magnitude).
inline BoundReport kappa_ratio_check(double p) {
    if (!(p > 8)) throw std::domain_error("ratio bound requires p > 8");
    const double lhs = std::log(8.0) + 2.0 * (std::log(p - 1) - std::log(std::log(p - 1)));
    const double rhs = kappa_log(p) - kappa_log(p - 2);
    BoundReport r = BoundReport::asserted("kappa-ratio-growth", lhs, rhs, {{"scale", "log"}});
    r.context["p"] = std::to_string(p);
    return r;
}

// 2(p-1)/(1-theta)^{p-3} <= kappa_p with
// theta = (log^2(p-1) / (4(p-1)))^{1/(p-3)}, for p > 8; log space again.
inline BoundReport kappa_theta_check(double p) {
    if (!(p > 8)) throw std::domain_error("theta bound requires p > 8");
    const double log_theta =
        (2.0 * std::log(std::log(p - 1)) - std::log(4.0) - std::log(p - 1)) / (p - 3.0);
    const double theta = std::exp(log_theta);
    const double lhs = std::log(2.0 * (p - 1)) - (p - 3.0) * std::log1p(-theta);
    const double rhs = kappa_log(p);
    BoundReport r = BoundReport::asserted("kappa-theta-bound", lhs, rhs, {{"scale", "log"}});
    r.context["p"] = std::to_string(p);
    r.context["theta"] = std::to_string(theta);
    return r;
}

// Both growth inequalities of the kappa constant at one p.
inline std::vector<BoundReport> kappa_lemma_check(double p) {
    return {kappa_ratio_check(p), kappa_theta_check(p)};
}

}  // namespace jackstein::zero_bias
