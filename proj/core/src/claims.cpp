#include "fockledger/claims.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "fockledger/genfun.hpp"
#include "fockledger/operators.hpp"
#include "fockledger/serialize.hpp"
#include "fockledger/statistics.hpp"

namespace fockledger::claims {

std::uint64_t Rng::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

std::size_t Rng::index(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(next() % (hi - lo + 1));
}

std::vector<FamilySpec> draw_specs(Rng& rng, std::size_t per_family) {
    std::vector<FamilySpec> out;
    out.reserve(13 * per_family);
    const double e_minus_1 = std::exp(1.0) - 1.0;
    for (std::size_t i = 0; i < per_family; ++i) {
        out.emplace_back(Fock{rng.index(1, 30)});

        const std::size_t m = rng.index(0, 5);
        out.emplace_back(TwoFock{m + 1 + rng.index(0, 59), m, rng.uniform(0.05, 0.95)});

        out.emplace_back(Coherent{rng.uniform(0.1, 4.0)});
        out.emplace_back(CoherentVacuum{rng.uniform(0.2, 3.5), rng.uniform(0.02, 1.0)});
        out.emplace_back(NegativeBinomial{rng.uniform(0.05, 0.85), rng.uniform(0.2, 5.0)});
        out.emplace_back(Binomial{rng.uniform(0.05, 0.95), rng.index(1, 40)});
        out.emplace_back(OddCoherent{rng.uniform(0.15, 3.0)});
        out.emplace_back(SqueezedVacuum{rng.uniform(0.1, 5.0)});
        out.emplace_back(SimonLog{rng.uniform(0.05, 0.79)});
        out.emplace_back(PhaseCoherent{rng.uniform(0.05, 0.9)});

        if (rng.uniform(0.0, 1.0) < 0.5) {
            out.emplace_back(GammaFamily{rng.uniform(0.1, 5.0), rng.uniform(1.0, 6.0)});
        } else {
            const double g = rng.uniform(0.2, 0.95);
            out.emplace_back(GammaFamily{rng.uniform(0.05, 0.95) * gamma_nbar_bound(g), g});
        }

        const double q = rng.uniform(0.05, 8.0);
        out.emplace_back(LogQ{rng.uniform(0.05, 0.95) * log_q_nbar_bound(q), q});

        out.emplace_back(Log0{rng.uniform(0.05, e_minus_1 - 0.02)});
    }
    return out;
}

namespace {

struct Outcome {
    std::vector<double> measured;
    std::vector<double> expected;
    std::string detail;
};

struct ClaimDef {
    std::string id;
    int criterion;
    std::string anchor;
    double tolerance;
    std::function<Outcome(const Context&, Rng&)> run;
};

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Tracks the single worst |measured - expected| pair seen, with a note on
// where it happened.
struct Worst {
    double dev = 0.0;
    std::string note;
    void update(double measured, double expected, const std::string& where) {
        const double d = std::abs(measured - expected);
        if (!(d <= dev)) { // catches NaN too
            dev = std::isnan(d) ? std::numeric_limits<double>::quiet_NaN() : d;
            note = where;
        }
    }
};

Outcome worst_outcome(const Worst& w) {
    return {{w.dev}, {0.0}, w.note.empty() ? "" : "worst at " + w.note};
}

double mean_of(const FockState& s) {
    double nbar = 0.0;
    for (std::size_t n = 1; n < s.amplitudes().size(); ++n) {
        nbar += static_cast<double>(n) * std::norm(s.amplitudes()[n]);
    }
    return nbar;
}

// --- criterion 1 -----------------------------------------------------------

Outcome run_photon_excess(const Context& ctx, Rng& rng) {
    Worst w;
    for (const FamilySpec& spec : draw_specs(rng, 100)) {
        const FockState psi = build(spec, ctx.policy());
        const StatsReport s = stats(psi);
        const double n_minus = stats(subtracted(psi)).mean;
        w.update(n_minus - s.mean, *s.mandel_q, format_spec(spec));
    }
    return worst_outcome(w);
}

// --- criterion 2 -----------------------------------------------------------

Outcome run_added_mean(const Context& ctx, Rng& rng) {
    Worst w;
    for (const FamilySpec& spec : draw_specs(rng, 100)) {
        const FockState psi = build(spec, ctx.policy());
        const StatsReport s = stats(psi);
        const double n_plus = stats(added(psi)).mean;
        w.update(n_plus, s.mean + 1.0 + s.variance / (1.0 + s.mean), format_spec(spec));
    }
    return worst_outcome(w);
}

Outcome run_added_floor(const Context& ctx, Rng& rng) {
    double violations = 0.0;
    std::string detail;
    for (const FamilySpec& spec : draw_specs(rng, 100)) {
        const FockState psi = build(spec, ctx.policy());
        const double gain = stats(added(psi)).mean - stats(psi).mean;
        const bool is_fock = std::holds_alternative<Fock>(spec);
        bool bad = gain < 1.0 - 1e-10;
        if (is_fock) {
            bad = bad || std::abs(gain - 1.0) > 1e-10;
        } else {
            // every non-Fock draw has variance well above rounding level,
            // so the gain must sit strictly above 1
            bad = bad || gain - 1.0 <= 1e-10;
        }
        if (bad) {
            violations += 1.0;
            if (detail.empty()) detail = format_spec(spec) + " gain=" + std::to_string(gain);
        }
    }
    return {{violations}, {0.0}, detail};
}

// --- criterion 3 -----------------------------------------------------------

Outcome run_hyper_equivalence(const Context& ctx, Rng& rng) {
    double violations = 0.0;
    std::string detail;
    for (const FamilySpec& spec : draw_specs(rng, 100)) {
        const FockState psi = build(spec, ctx.policy());
        const HyperCheck h = check_hyper(distribution_of(psi));
        if (std::abs(h.q - h.threshold) < 1e-9) continue;      // classification boundary
        if (std::abs(h.n_minus - h.n_plus) < 1e-9) continue;   // same boundary, other route
        if (h.is_hyper != (h.n_minus > h.n_plus)) {
            violations += 1.0;
            if (detail.empty()) detail = format_spec(spec);
        }
    }
    return {{violations}, {0.0}, detail};
}

Outcome run_squeezed_boundary(const Context& ctx, Rng&) {
    Worst w;
    for (double nbar : {0.5, 1.3811, 5.0}) {
        const StatsReport s = stats(build(SqueezedVacuum{nbar}, ctx.policy()));
        w.update(*s.mandel_q, 1.0 + 2.0 * s.mean, "nbar=" + std::to_string(nbar));
    }
    return worst_outcome(w);
}

// --- criterion 4 -----------------------------------------------------------

Outcome run_cohvac_means(const Context& ctx, Rng&) {
    const FockState psi = build(CoherentVacuum{3.0, 0.1}, ctx.policy());
    const double nbar = stats(psi).mean;
    const double n_minus = stats(subtracted(psi)).mean;
    const double n_plus = stats(added(psi)).mean;
    return {{nbar, n_minus, n_plus}, {0.9, 9.0, 11.8 / 1.9}, ""};
}

Outcome run_cohvac_fidelity(const Context& ctx, Rng&) {
    const FockState sub = subtracted(build(CoherentVacuum{3.0, 0.1}, ctx.policy()));
    const double f = fidelity(sub, build(Coherent{3.0}, ctx.policy()));
    return {{f}, {1.0}, ""};
}

Outcome run_cohvac_regime(const Context& ctx, Rng&) {
    const FockState psi = build(CoherentVacuum{3.0, 0.1}, ctx.policy());
    const double nbar = stats(psi).mean;
    const double n_minus = stats(subtracted(psi)).mean;
    const double n_plus = stats(added(psi)).mean;
    const double crit = 3.0 * 0.1 + 1.0 / 9.0;
    double violations = 0.0;
    if (!(nbar < 1.0)) violations += 1.0;
    if (!(1.0 < n_plus)) violations += 1.0;
    if (!(n_plus < n_minus)) violations += 1.0;
    if (!(crit < 1.0)) violations += 1.0;
    std::ostringstream os;
    os << "nbar=" << nbar << " N+=" << n_plus << " N-=" << n_minus
       << " 3*eta+alpha^-2=" << crit;
    return {{violations}, {0.0}, os.str()};
}

// --- criterion 5 -----------------------------------------------------------

Outcome run_negbin_iterated(const Context& ctx, Rng&) {
    const FockState psi = build(NegativeBinomial{0.5, 2.0}, ctx.policy());
    const auto steps = iterate(psi, Annihilate{}, 5);
    Outcome o;
    for (std::size_t k = 0; k < steps.size(); ++k) {
        o.measured.push_back(steps[k].stats.mean);
        o.expected.push_back(2.0 + static_cast<double>(k + 1)); // nbar + k*q, q = 1
    }
    return o;
}

Outcome run_negbin_q_invariant(const Context& ctx, Rng&) {
    const FockState psi = build(NegativeBinomial{0.5, 2.0}, ctx.policy());
    Worst w;
    const auto steps = iterate(psi, Annihilate{}, 5);
    for (std::size_t k = 0; k < steps.size(); ++k) {
        w.update(*steps[k].stats.mandel_q, 1.0, "step " + std::to_string(k + 1));
    }
    return worst_outcome(w);
}

Outcome run_negbin_hyper_regime(const Context& ctx, Rng&) {
    const double xi = 0.8, mu = 0.25;
    double violations = 0.0;
    if (!(mu < 0.5 && 0.5 < xi * (1.0 - mu))) violations += 1.0;
    const FockState psi = build(NegativeBinomial{xi, mu}, ctx.policy());
    const double n_minus = stats(subtracted(psi)).mean;
    const double n_plus = stats(added(psi)).mean;
    if (!(n_minus > n_plus)) violations += 1.0;
    return {{violations},
            {0.0},
            "N-=" + std::to_string(n_minus) + " N+=" + std::to_string(n_plus)};
}

// --- criterion 6 -----------------------------------------------------------

Outcome run_gamma_ratio(const Context& ctx, Rng&) {
    Worst w;
    for (double g : {1.0, 2.0, 5.0}) {
        for (double nbar : {0.5, 1.0, 5.0}) {
            const PhotonDistribution d = gamma_family(nbar, g, ctx.policy());
            const StatsReport s = stats(d);
            const double ratio = *predictions(d).n_minus / s.mean;
            w.update(ratio, g, "gamma=" + std::to_string(g) + " nbar=" + std::to_string(nbar));
        }
    }
    return worst_outcome(w);
}

Outcome run_gamma_boundary(const Context& ctx, Rng&) {
    Worst w;
    for (double g : {0.3, 0.5, 0.8}) {
        const double nbar = gamma_nbar_bound(g);
        const PhotonDistribution d = gamma_family(nbar, g, ctx.policy());
        w.update(d.p(0), 0.0, "gamma=" + std::to_string(g));
    }
    return worst_outcome(w);
}

Outcome run_gamma_poisson(const Context& ctx, Rng&) {
    Worst w;
    for (double nbar : {0.5, 2.0}) {
        const PhotonDistribution d = gamma_family(nbar, 1.0, ctx.policy());
        for (std::size_t n = 0; n < d.probs().size(); ++n) {
            const double fn = static_cast<double>(n);
            const double poisson =
                std::exp(-nbar + fn * std::log(nbar) - std::lgamma(fn + 1.0));
            w.update(d.p(n), poisson, "nbar=" + std::to_string(nbar) + " n=" + std::to_string(n));
        }
    }
    return worst_outcome(w);
}

// --- criterion 7 -----------------------------------------------------------

Outcome check_cosh_negative_at(const Context& ctx, double nbar, double gamma,
                               std::size_t expected_index) {
    const auto res = cosh_family(nbar, gamma, ctx.policy());
    if (const auto* neg = std::get_if<NegativityReport>(&res)) {
        return {{static_cast<double>(neg->index)},
                {static_cast<double>(expected_index)},
                "value=" + std::to_string(neg->value)};
    }
    return {{-1.0}, {static_cast<double>(expected_index)}, "no negativity detected"};
}

Outcome run_cosh_gamma1_clean(const Context& ctx, Rng&) {
    double violations = 0.0;
    std::string detail;
    for (double nbar : {1.0, 10.0}) {
        const auto res = cosh_family(nbar, 1.0, ctx.policy());
        if (!std::holds_alternative<PhotonDistribution>(res)) {
            violations += 1.0;
            detail = "negativity at nbar=" + std::to_string(nbar);
        }
    }
    return {{violations}, {0.0}, detail};
}

// --- criterion 8 -----------------------------------------------------------

std::vector<std::pair<double, double>> logq_params(Rng& rng) {
    std::vector<std::pair<double, double>> ps = {
        {1.0, 0.5}, {1.0, 2.0}, {1.0, 50.0}, {0.5, 1.0}, {3.0, 5.0}};
    for (int i = 0; i < 10; ++i) {
        const double q = rng.uniform(0.05, 8.0);
        ps.emplace_back(rng.uniform(0.05, 0.95) * log_q_nbar_bound(q), q);
    }
    return ps;
}

Outcome run_logq_roundtrip(const Context& ctx, Rng& rng) {
    Worst w;
    for (const auto& [nbar, q] : logq_params(rng)) {
        const StatsReport s = stats(log_q_family(nbar, q, ctx.policy()));
        const std::string at = "nbar=" + std::to_string(nbar) + " q=" + std::to_string(q);
        w.update(s.mean, nbar, at);
        w.update(*s.mandel_q, q, at);
    }
    return worst_outcome(w);
}

Outcome run_logq_subtracted(const Context& ctx, Rng& rng) {
    Worst w;
    for (const auto& [nbar, q] : logq_params(rng)) {
        const FockState psi = state_from_distribution(log_q_family(nbar, q, ctx.policy()));
        const StatsReport s = stats(subtracted(psi));
        const std::string at = "nbar=" + std::to_string(nbar) + " q=" + std::to_string(q);
        w.update(s.mean, nbar + q, at);
        w.update(*s.mandel_q, nbar, at);
    }
    return worst_outcome(w);
}

Outcome run_logq_bound(const Context& ctx, Rng&) {
    double violations = 0.0;
    std::string detail;
    for (double q : {0.5, 2.0}) {
        const double bound = log_q_nbar_bound(q);
        try {
            log_q_family(bound * 1.001, q, ctx.policy());
            violations += 1.0;
            detail = "no rejection above the bound at q=" + std::to_string(q);
        } catch (const InvalidParams&) {
        }
        try {
            log_q_family(bound * 0.999, q, ctx.policy());
        } catch (const std::exception& e) {
            violations += 1.0;
            detail = "rejected inside the bound at q=" + std::to_string(q) + ": " + e.what();
        }
    }
    return {{violations}, {0.0}, detail};
}

Outcome run_logq_q0_limit(const Context& ctx, Rng&) {
    Worst w;
    for (double nbar : {0.5, 1.0, 1.5}) {
        const PhotonDistribution d = log_q_family(nbar, 1e-6, ctx.policy());
        const double x = nbar / (1.0 + nbar);
        for (std::size_t n = 0; n < d.probs().size(); ++n) {
            const double ref = n == 0 ? 1.0 - std::log1p(nbar)
                                      : std::pow(x, static_cast<double>(n)) / static_cast<double>(n);
            w.update(d.p(n), ref, "nbar=" + std::to_string(nbar) + " n=" + std::to_string(n));
        }
    }
    return worst_outcome(w);
}

// --- criterion 9 -----------------------------------------------------------

const double kEm1 = std::exp(1.0) - 1.0;

Outcome run_log0_mandel_zero(const Context& ctx, Rng&) {
    Worst w;
    for (double nbar : {0.1, 0.5, 1.0, 1.7, kEm1}) {
        const StatsReport s = stats(log0_family(nbar, ctx.policy()));
        w.update(*s.mandel_q, 0.0, "nbar=" + std::to_string(nbar));
    }
    return worst_outcome(w);
}

Outcome run_log0_factorial_moments(const Context& ctx, Rng&) {
    Worst w;
    for (double nbar : {0.1, 0.5, 1.0, 1.7, kEm1}) {
        const StatsReport s = stats(log0_family(nbar, ctx.policy()));
        double fact = 1.0, power = nbar;
        for (std::size_t r = 1; r <= 4; ++r) {
            w.update(s.factorial_moments[r - 1], fact * power,
                     "nbar=" + std::to_string(nbar) + " r=" + std::to_string(r));
            fact *= static_cast<double>(r);
            power *= nbar;
        }
    }
    return worst_outcome(w);
}

Outcome run_log0_domain(const Context& ctx, Rng&) {
    double violations = 0.0;
    std::string detail;
    try {
        log0_family(kEm1 + 0.01, ctx.policy());
        violations += 1.0;
        detail = "no rejection above e-1";
    } catch (const InvalidParams&) {
    }
    try {
        log0_family(kEm1, ctx.policy());
    } catch (const std::exception& e) {
        violations += 1.0;
        detail = std::string("rejected nbar = e-1: ") + e.what();
    }
    return {{violations}, {0.0}, detail};
}

Outcome run_balazs_limit(const Context&, Rng&) {
    Worst w;
    for (double nbar : {0.5, 1.0, 1.7}) {
        double fact = 1.0, power = nbar;
        for (std::size_t r = 1; r <= 4; ++r) {
            w.update(balazs_moments(nbar, 1e-10, r), fact * power,
                     "nbar=" + std::to_string(nbar) + " r=" + std::to_string(r));
            fact *= static_cast<double>(r);
            power *= nbar;
        }
    }
    return worst_outcome(w);
}

// --- criterion 10 ----------------------------------------------------------

Outcome run_eplus_mean(const Context& ctx, Rng& rng) {
    Worst w;
    for (const FamilySpec& spec : draw_specs(rng, 100)) {
        const FockState psi = build(spec, ctx.policy());
        w.update(stats(exp_phase(psi, PhaseDirection::up)).mean, stats(psi).mean + 1.0,
                 format_spec(spec));
    }
    return worst_outcome(w);
}

Outcome run_eminus_mean(const Context& ctx, Rng& rng) {
    Worst w;
    for (const FamilySpec& spec : draw_specs(rng, 100)) {
        const FockState psi = build(spec, ctx.policy());
        const StatsReport s = stats(psi);
        const double p0 = std::norm(psi.amp(0));
        if (p0 > 1.0 - 1e-6) continue;
        w.update(stats(exp_phase(psi, PhaseDirection::down)).mean, s.mean / (1.0 - p0) - 1.0,
                 format_spec(spec));
    }
    return worst_outcome(w);
}

Outcome run_phase_eigenstate(const Context& ctx, Rng&) {
    // The identity is measured-vs-measured on the truncated vector, so the
    // truncation itself must sit well below the 1e-10 assertion.
    CutoffPolicy policy = ctx.policy();
    policy.tail_tol = std::min(policy.tail_tol, 1e-14);
    Worst w;
    for (double z : {0.1, 0.6, 0.9}) {
        const FockState psi = build(PhaseCoherent{z}, policy);
        w.update(stats(exp_phase(psi, PhaseDirection::down)).mean, stats(psi).mean,
                 "z=" + std::to_string(z));
    }
    return worst_outcome(w);
}

Outcome run_coherent_small_nbar(const Context& ctx, Rng&) {
    const FockState psi = build(Coherent{0.1}, ctx.policy());
    const double nbar = stats(psi).mean;
    const double ratio = stats(exp_phase(psi, PhaseDirection::down)).mean / nbar;
    return {{ratio}, {0.5}, "nbar=" + std::to_string(nbar)};
}

Outcome run_qtilde_positive(const Context& ctx, Rng&) {
    const double nbar = 10.0, g = 2.0;
    const PhotonDistribution d = gamma_family(nbar, g, ctx.policy());
    const PredictionReport pr = predictions(d);
    const double p0 = d.p(0);
    const double closed = stats(d).mean - (stats(d).mean + 1.0) * (-std::expm1(-g * nbar)) / g;
    double violations = 0.0;
    if (std::abs((1.0 - p0) * *pr.q_tilde - closed) > 1e-9) violations += 1.0;
    if (!(*pr.q_tilde > 0.0)) violations += 1.0;
    return {{violations}, {0.0}, "qtilde=" + std::to_string(*pr.q_tilde)};
}

Outcome run_tilde_order(const Context& ctx, Rng&) {
    double violations = 0.0;
    std::string detail;
    for (double g : {1.5, 2.0, 4.0}) {
        for (double nbar : {5.0, 10.0, 20.0}) {
            const PhotonDistribution d = gamma_family(nbar, g, ctx.policy());
            const double p0 = d.p(0);
            const double mean = stats(d).mean;
            if (!(mean > 2.0 * (1.0 - p0) / p0)) continue; // hypothesis not met
            const FockState psi = state_from_distribution(d);
            const double ntm = stats(exp_phase(psi, PhaseDirection::down)).mean;
            const double ntp = stats(exp_phase(psi, PhaseDirection::up)).mean;
            if (!(ntm > ntp)) {
                violations += 1.0;
                if (detail.empty()) {
                    detail = "gamma=" + std::to_string(g) + " nbar=" + std::to_string(nbar);
                }
            }
        }
    }
    return {{violations}, {0.0}, detail};
}

// --- criterion 11 ----------------------------------------------------------

Outcome run_twofock_grid(const Context&, Rng&) {
    double violations = 0.0;
    std::string detail;
    for (std::size_t m = 0; m <= 5; ++m) {
        for (std::size_t n = m + 1; n <= 100; ++n) {
            for (int ri = 1; ri <= 9; ++ri) {
                const double r = 0.1 * ri;
                const TwoFockAnalysis a = two_fock_analysis(n, m, r);
                // direct route: two-point distribution, brute-force moments
                std::vector<double> probs(n + 1, 0.0);
                probs[n] = r;
                probs[m] += 1.0 - r;
                const PhotonDistribution d(std::move(probs));
                const StatsReport s = stats(d);
                const double diff = *predictions(d).n_minus - s.mean;
                if (std::abs(diff) < 1e-9) continue; // boundary: no sign to compare
                if (a.condition_holds != (diff > 0.0)) {
                    violations += 1.0;
                    if (detail.empty()) {
                        detail = "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                                 " r=" + std::to_string(r);
                    }
                }
            }
        }
    }
    return {{violations}, {0.0}, detail};
}

Outcome run_twofock_qlimit(const Context& ctx, Rng&) {
    CutoffPolicy policy = ctx.policy();
    policy.max_cutoff = std::max<std::size_t>(policy.max_cutoff, 2000);
    const FockState psi = build(TwoFock{2000, 1, 0.5}, policy);
    const double q_minus = *stats(subtracted(psi)).mandel_q;
    const double limit = two_fock_analysis(2000, 1, 0.5).q_minus_limit;
    return {{q_minus}, {limit}, ""};
}

Outcome run_twofock_weighted(const Context& ctx, Rng&) {
    const std::size_t n = 10;
    const FockState psi = build(TwoFock{n, 0, 0.35}, ctx.policy());
    const FockState target = build(Fock{n - 1}, ctx.policy());
    using W = std::function<Amplitude(std::size_t)>;
    const W fs[3] = {
        [](std::size_t) -> Amplitude { return 1.0; },
        [](std::size_t k) -> Amplitude { return 1.0 / std::sqrt(static_cast<double>(k) + 1.0); },
        [](std::size_t k) -> Amplitude {
            return Amplitude{0.3, 0.7} * (static_cast<double>(k) + 1.0);
        },
    };
    Outcome o;
    for (const auto& f : fs) {
        o.measured.push_back(fidelity(weighted_annihilate(psi, f), target));
        o.expected.push_back(1.0);
    }
    return o;
}

// --- criterion 12 ----------------------------------------------------------

Outcome run_transform_wiring(const Context& ctx, Rng& rng, TransformKind kind) {
    Worst w;
    for (const FamilySpec& spec : draw_specs(rng, 10)) {
        const FockState psi = build(spec, ctx.policy());
        const PhotonDistribution d = distribution_of(psi);
        const double nbar = stats(d).mean;
        const GenFun g(d);
        const GenFun t = transform(g, kind, nbar, d.p(0));

        FockState op_image = psi;
        switch (kind) {
            case TransformKind::minus: op_image = subtracted(psi); break;
            case TransformKind::plus: op_image = added(psi); break;
            case TransformKind::tilde_minus:
                op_image = exp_phase(psi, PhaseDirection::down);
                break;
            case TransformKind::tilde_plus:
                op_image = exp_phase(psi, PhaseDirection::up);
                break;
        }
        const PhotonDistribution viaop = distribution_of(op_image);
        const std::size_t top = std::max(t.cutoff(), viaop.cutoff());
        for (std::size_t i = 0; i <= top; ++i) {
            w.update(t.coeff(i), viaop.p(i), format_spec(spec) + " n=" + std::to_string(i));
        }
    }
    return worst_outcome(w);
}

// --- registry ---------------------------------------------------------------

const std::vector<ClaimDef>& registry() {
    static const std::vector<ClaimDef> defs = [] {
        std::vector<ClaimDef> v;
        auto add = [&](std::string id, int crit, std::string anchor, double tol,
                       std::function<Outcome(const Context&, Rng&)> fn) {
            v.push_back({std::move(id), crit, std::move(anchor), tol, std::move(fn)});
        };

        add("eq7.photon_excess", 1, "N- - nbar = q for every state", 1e-9, run_photon_excess);

        add("eq10.added_mean", 2, "N+ = nbar + 1 + var/(1+nbar)", 1e-9, run_added_mean);
        add("eq10.added_floor", 2, "N+ - nbar >= 1, equality exactly on Fock states", 0.0,
            run_added_floor);

        add("eq11.hyper_equivalence", 3, "N- > N+ iff q > 1 + 2 nbar", 0.0,
            run_hyper_equivalence);
        add("eq11.squeezed_boundary", 3, "squeezed vacuum: q = 1 + 2 nbar", 1e-8,
            run_squeezed_boundary);

        add("eq13.cohvac_means", 4, "cohvac(3,0.1): nbar 0.9, N- 9, N+ 11.8/1.9", 1e-6,
            run_cohvac_means);
        add("eq13.cohvac_fidelity", 4, "a strips the vacuum component, leaving |alpha>", 1e-10,
            run_cohvac_fidelity);
        add("eq13.cohvac_regime", 4, "nbar << 1 < N+ << N- with 3 eta + alpha^-2 < 1", 0.0,
            run_cohvac_regime);

        add("eq18.negbin_iterated", 5, "each subtraction adds q to the mean", 1e-8,
            run_negbin_iterated);
        add("eq18.negbin_q_invariant", 5, "subtraction leaves q unchanged", 1e-8,
            run_negbin_q_invariant);
        add("eq18.negbin_hyper_regime", 5, "mu < 1/2 < xi(1-mu) puts N- above N+", 0.0,
            run_negbin_hyper_regime);

        add("eq20.gamma_ratio", 6, "gamma family: N-/nbar = gamma", 1e-8, run_gamma_ratio);
        add("eq20.gamma_boundary", 6, "gamma < 1 existence boundary has p_0 = 0", 1e-10,
            run_gamma_boundary);
        add("eq20.gamma_poisson", 6, "gamma = 1 is exactly Poisson", 1e-14, run_gamma_poisson);

        add("coshfam.negativity_p1", 7, "a = nbar sqrt(gamma) >> 1, gamma > 1: p_1 < 0", 0.0,
            [](const Context& ctx, Rng&) { return check_cosh_negative_at(ctx, 10.0, 4.0, 1); });
        add("coshfam.negativity_p0", 7, "a = nbar sqrt(gamma) >> 1, gamma < 1: p_0 < 0", 0.0,
            [](const Context& ctx, Rng&) {
                return check_cosh_negative_at(ctx, 100.0, 0.25, 0);
            });
        add("coshfam.gamma1_clean", 7, "gamma = 1 collapses to Poisson, no negativity", 0.0,
            run_cosh_gamma1_clean);

        add("eq25.logq_roundtrip", 8, "log-q family reproduces (nbar, q)", 1e-8,
            run_logq_roundtrip);
        add("eq25.logq_subtracted", 8, "subtracted log-q state: mean nbar+q, Mandel q- = nbar",
            1e-7, run_logq_subtracted);
        add("eq27.logq_bound", 8, "nbar <= q(e-1)/(1-e^-q) enforced", 0.0, run_logq_bound);
        add("eq25.logq_q0_limit", 8, "q -> 0: p_0 = 1 - ln(1+nbar), p_n = x^n/n", 1e-4,
            run_logq_q0_limit);

        add("eq31.log0_mandel_zero", 9, "log0 family has q = 0", 1e-9, run_log0_mandel_zero);
        add("eq32.log0_factorial_moments", 9, "n^(r) = (r-1)! nbar^r", 1e-8,
            run_log0_factorial_moments);
        add("eq30.log0_domain", 9, "nbar <= e-1 enforced", 0.0, run_log0_domain);
        add("eq33.balazs_limit", 9, "A -> 0 moment series gives (r-1)! nbar^r", 1e-6,
            run_balazs_limit);

        add("eq42.eplus_mean", 10, "E+ adds exactly one quantum to any state", 1e-10,
            run_eplus_mean);
        add("eq42.eminus_mean", 10, "E-: Ntilde- = nbar/(1-p_0) - 1", 1e-9, run_eminus_mean);
        add("eq42.phase_eigenstate", 10, "phase-coherent states: Ntilde- = nbar", 1e-10,
            run_phase_eigenstate);
        add("eq42.coherent_small_nbar", 10, "coherent, nbar << 1: Ntilde-/nbar = 1/2", 0.005,
            run_coherent_small_nbar);
        add("eq43.qtilde_positive", 10,
            "(1-p0) qtilde = nbar - (nbar+1)(1-e^{-gamma nbar})/gamma > 0", 0.0,
            run_qtilde_positive);
        add("eq43.tilde_order", 10, "nbar > 2(1-p0)/p0 implies Ntilde- > Ntilde+", 0.0,
            run_tilde_order);

        add("eq8.twofock_grid", 11, "r(1-r)(n-m)^2 > r(n-m)+m iff N- > nbar", 0.0,
            run_twofock_grid);
        add("eq8.twofock_qlimit", 11, "q- tends to (1-r)m/r - 1 for large n", 0.05,
            run_twofock_qlimit);
        add("eq8.twofock_fn_annihilate", 11, "f(n)a sends sqrt(r)|n>+sqrt(1-r)|0> to |n-1>",
            1e-12, run_twofock_weighted);

        add("eq17.transform_minus", 12, "G- = G'/nbar matches the operator route", 1e-10,
            [](const Context& ctx, Rng& rng) {
                return run_transform_wiring(ctx, rng, TransformKind::minus);
            });
        add("eq17.transform_plus", 12, "G+ = z(zG)'/(1+nbar) matches the operator route", 1e-10,
            [](const Context& ctx, Rng& rng) {
                return run_transform_wiring(ctx, rng, TransformKind::plus);
            });
        add("eq41.transform_tilde_minus", 12,
            "Gt- = (G - G(0))/(z(1-p0)) matches the operator route", 1e-10,
            [](const Context& ctx, Rng& rng) {
                return run_transform_wiring(ctx, rng, TransformKind::tilde_minus);
            });
        add("eq41.transform_tilde_plus", 12, "Gt+ = zG matches the operator route", 1e-10,
            [](const Context& ctx, Rng& rng) {
                return run_transform_wiring(ctx, rng, TransformKind::tilde_plus);
            });

        std::sort(v.begin(), v.end(),
                  [](const ClaimDef& a, const ClaimDef& b) { return a.id < b.id; });
        return v;
    }();
    return defs;
}

bool elementwise_pass(const std::vector<double>& measured, const std::vector<double>& expected,
                      double tol) {
    if (measured.size() != expected.size() || measured.empty()) return false;
    for (std::size_t i = 0; i < measured.size(); ++i) {
        const double d = std::abs(measured[i] - expected[i]);
        if (!(d <= tol)) return false;
    }
    return true;
}

} // namespace

std::vector<std::string> claim_ids() {
    std::vector<std::string> ids;
    for (const auto& def : registry()) ids.push_back(def.id);
    return ids;
}

std::vector<ClaimResult> run_claims(const Context& ctx, std::string_view filter) {
    std::vector<ClaimResult> results;
    for (const auto& def : registry()) {
        if (!filter.empty() && def.id.rfind(filter, 0) != 0) continue;
        ClaimResult r;
        r.claim_id = def.id;
        r.paper_anchor = def.anchor;
        r.criterion = def.criterion;
        r.tolerance = def.tolerance;
        Rng rng(ctx.seed ^ fnv1a(def.id));
        const auto t0 = std::chrono::steady_clock::now();
        try {
            Outcome o = def.run(ctx, rng);
            r.measured = std::move(o.measured);
            r.expected = std::move(o.expected);
            r.detail = std::move(o.detail);
            r.passed = elementwise_pass(r.measured, r.expected, r.tolerance);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        results.push_back(std::move(r));
    }
    return results;
}

std::string report_json(const std::vector<ClaimResult>& results, const Context& ctx,
                        std::string_view filter) {
    nlohmann::json j;
    j["seed"] = ctx.seed;
    j["tail_tol"] = ctx.tail_tol;
    j["max_cutoff"] = ctx.max_cutoff;
    j["filter"] = std::string(filter);
    j["total"] = results.size();
    std::size_t passed = 0;
    nlohmann::json failed = nlohmann::json::array();
    nlohmann::json claims = nlohmann::json::array();
    for (const auto& r : results) {
        if (r.passed) {
            ++passed;
        } else {
            failed.push_back(r.claim_id);
        }
        nlohmann::json c;
        c["claim_id"] = r.claim_id;
        c["paper_anchor"] = r.paper_anchor;
        c["criterion"] = r.criterion;
        c["measured"] = r.measured;
        c["expected"] = r.expected;
        c["tolerance"] = r.tolerance;
        c["passed"] = r.passed;
        c["runtime_ms"] = r.runtime_ms;
        c["detail"] = r.detail;
        claims.push_back(std::move(c));
    }
    j["passed"] = passed;
    j["failed_ids"] = std::move(failed);
    j["claims"] = std::move(claims);
    return j.dump(2) + "\n";
}

namespace {

std::string join_values(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ';';
        os << v[i];
    }
    return os.str();
}

} // namespace

std::string report_csv(const std::vector<ClaimResult>& results) {
    std::string out = "claim_id,criterion,passed,tolerance,measured,expected,runtime_ms\n";
    for (const auto& r : results) {
        std::ostringstream os;
        os.precision(17);
        os << r.claim_id << ',' << r.criterion << ',' << (r.passed ? "true" : "false") << ','
           << r.tolerance << ',' << join_values(r.measured) << ',' << join_values(r.expected)
           << ',' << r.runtime_ms << '\n';
        out += os.str();
    }
    return out;
}

std::string report_markdown(const std::vector<ClaimResult>& results) {
    std::string out = "| claim | criterion | status | tolerance | worst/values |\n"
                      "|---|---|---|---|---|\n";
    for (const auto& r : results) {
        std::ostringstream os;
        os.precision(12);
        os << "| `" << r.claim_id << "` | " << r.criterion << " | "
           << (r.passed ? "pass" : "**FAIL**") << " | " << r.tolerance << " | "
           << join_values(r.measured) << " |\n";
        out += os.str();
    }
    return out;
}

} // namespace fockledger::claims
