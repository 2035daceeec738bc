#include "fockledger/statistics.hpp"

#include <cmath>

namespace fockledger {

std::string_view to_string(StatClass k) {
    switch (k) {
        case StatClass::Unclassified: return "Unclassified";
        case StatClass::SubPoissonian: return "SubPoissonian";
        case StatClass::Poissonian: return "Poissonian";
        case StatClass::SuperPoissonian: return "SuperPoissonian";
        case StatClass::SuperChaotic: return "SuperChaotic";
        case StatClass::HyperPoissonian: return "HyperPoissonian";
    }
    return "Unclassified";
}

namespace {

std::array<double, 4> factorial_moments_of(std::span<const double> p) {
    std::array<double, 4> fm{};
    for (std::size_t n = 1; n < p.size(); ++n) {
        const double x = static_cast<double>(n);
        double w = x;
        fm[0] += w * p[n];
        w *= x - 1.0;
        fm[1] += w * p[n];
        w *= x - 2.0;
        fm[2] += w * p[n];
        w *= x - 3.0;
        fm[3] += w * p[n];
    }
    return fm;
}

} // namespace

StatsReport stats(const PhotonDistribution& dist) {
    StatsReport r;
    r.factorial_moments = factorial_moments_of(dist.probs());
    r.mean = r.factorial_moments[0];
    r.variance = r.factorial_moments[1] + r.mean - r.mean * r.mean;
    if (r.mean > eps_zero) {
        const double q = r.variance / r.mean - 1.0;
        r.mandel_q = q;
        r.g2 = 1.0 + q / r.mean;
        if (q > 1.0 + 2.0 * r.mean) {
            r.klass = StatClass::HyperPoissonian;
        } else if (q > r.mean) {
            r.klass = StatClass::SuperChaotic;
        } else if (q > eps_q) {
            r.klass = StatClass::SuperPoissonian;
        } else if (q >= -eps_q) {
            r.klass = StatClass::Poissonian;
        } else {
            r.klass = StatClass::SubPoissonian;
        }
    }
    return r;
}

StatsReport stats(const FockState& state) { return stats(distribution_of(state)); }

PredictionReport predictions(const PhotonDistribution& dist) {
    const StatsReport s = stats(dist);
    PredictionReport r;
    const double nbar = s.mean;
    const double n2 = s.factorial_moments[1];
    const double n3 = s.factorial_moments[2];
    r.n_plus = nbar + 1.0 + s.variance / (1.0 + nbar);
    r.n_tilde_plus = nbar + 1.0;
    if (nbar > eps_zero) {
        r.n_minus = n2 / nbar;
        if (n2 > eps_zero) {
            r.q_minus = (nbar * n3 - n2 * n2) / (nbar * n2);
        }
    }
    const double p0 = dist.p(0);
    if (1.0 - p0 > 1e-14) {
        r.n_tilde_minus = nbar / (1.0 - p0) - 1.0;
        r.q_tilde = *r.n_tilde_minus - nbar;
    }
    return r;
}

HyperCheck check_hyper(const PhotonDistribution& dist) {
    const StatsReport s = stats(dist);
    if (!(s.mean > eps_zero)) {
        throw InvalidDistribution("check_hyper needs a state with nonzero mean");
    }
    HyperCheck h;
    h.q = *s.mandel_q;
    h.threshold = 1.0 + 2.0 * s.mean;
    h.is_hyper = h.q > h.threshold;
    h.n_minus = s.factorial_moments[1] / s.mean;
    double raw2 = 0.0; // sum (n+1)^2 p_n, the unnormalized mean after adding
    for (std::size_t n = 0; n < dist.probs().size(); ++n) {
        const double x = static_cast<double>(n) + 1.0;
        raw2 += x * x * dist.probs()[n];
    }
    h.n_plus = raw2 / (1.0 + s.mean);
    return h;
}

TwoFockAnalysis two_fock_analysis(std::size_t n, std::size_t m, double r) {
    if (!(n > m) || !(r > 0.0) || !(r < 1.0)) {
        throw InvalidParams("two-Fock superposition needs n > m >= 0 and 0 < r < 1");
    }
    const double fn = static_cast<double>(n);
    const double fm = static_cast<double>(m);
    TwoFockAnalysis a;
    a.mean = r * fn + (1.0 - r) * fm;
    const double n2f = r * fn * (fn - 1.0) + (1.0 - r) * fm * (fm - 1.0);
    a.n_minus = n2f / a.mean;
    a.q = a.n_minus - a.mean;
    a.condition_holds = r * (1.0 - r) * (fn - fm) * (fn - fm) > r * (fn - fm) + fm;
    a.q_minus_limit = (1.0 - r) / r * fm - 1.0;
    return a;
}

} // namespace fockledger
