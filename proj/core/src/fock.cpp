#include "fockledger/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fockledger {

FockState::FockState(std::vector<Amplitude> amplitudes, double tail_tol)
    : amps_(std::move(amplitudes)), tail_tol_(tail_tol) {
    if (amps_.empty()) {
        throw InvalidParams("FockState needs at least the vacuum amplitude");
    }
    if (!(tail_tol_ >= 0.0)) {
        throw InvalidParams("tail_tol must be nonnegative");
    }
}

double FockState::norm_sq() const {
    double s = 0.0;
    for (const auto& c : amps_) s += std::norm(c);
    return s;
}

double FockState::max_prob() const {
    double m = 0.0;
    for (const auto& c : amps_) m = std::max(m, std::norm(c));
    return m;
}

PhotonDistribution::PhotonDistribution(std::vector<double> probs, double tail_tol)
    : probs_(std::move(probs)), tail_tol_(tail_tol) {
    if (probs_.empty()) {
        throw InvalidParams("PhotonDistribution needs at least p_0");
    }
    for (std::size_t n = 0; n < probs_.size(); ++n) {
        double& p = probs_[n];
        if (p < 0.0) {
            if (p < -eps_neg) {
                throw InvalidDistribution("p_" + std::to_string(n) + " = " + std::to_string(p) +
                                          " is negative beyond the rounding clamp");
            }
            p = 0.0;
        }
    }
    const double s = sum();
    if (s < 1.0 - tail_tol_ - eps_norm || s > 1.0 + eps_norm) {
        throw InvalidDistribution("probabilities sum to " + std::to_string(s) +
                                  ", outside [1 - tail_tol, 1 + eps_norm]");
    }
}

double PhotonDistribution::sum() const {
    return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

FockState normalize(const FockState& state) {
    double max_mod = 0.0;
    for (const auto& c : state.amplitudes()) max_mod = std::max(max_mod, std::abs(c));
    if (max_mod <= eps_zero) {
        throw ZeroState("cannot normalize: all amplitudes vanish");
    }
    const double inv = 1.0 / std::sqrt(state.norm_sq());
    std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
    for (auto& c : out) c *= inv;
    return FockState(std::move(out), state.tail_tol());
}

Amplitude inner_product(const FockState& a, const FockState& b) {
    const std::size_t n = std::min(a.amplitudes().size(), b.amplitudes().size());
    Amplitude acc{};
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    }
    return acc;
}

double fidelity(const FockState& a, const FockState& b) {
    return std::norm(inner_product(a, b));
}

PhotonDistribution distribution_of(const FockState& state) {
    std::vector<double> probs;
    probs.reserve(state.amplitudes().size());
    for (const auto& c : state.amplitudes()) probs.push_back(std::norm(c));
    return PhotonDistribution(std::move(probs), state.tail_tol());
}

FockState state_from_distribution(const PhotonDistribution& dist, std::span<const double> phases) {
    std::vector<Amplitude> amps;
    amps.reserve(dist.probs().size());
    for (std::size_t n = 0; n < dist.probs().size(); ++n) {
        const double mod = std::sqrt(dist.probs()[n]);
        if (n < phases.size()) {
            amps.emplace_back(std::polar(mod, phases[n]));
        } else {
            amps.emplace_back(mod, 0.0);
        }
    }
    return FockState(std::move(amps), dist.tail_tol());
}

namespace {

// Largest index that must be kept so the dropped trailing weight stays
// below tol. Returns 0 when everything above the vacuum may go.
template <class Weight>
std::size_t trim_point(const std::vector<Weight>& w, double tol, double (*mass)(const Weight&)) {
    double dropped = 0.0;
    std::size_t keep = w.size();
    while (keep > 1) {
        dropped += mass(w[keep - 1]);
        if (dropped > tol) break;
        --keep;
    }
    return keep - 1;
}

double amp_mass(const Amplitude& c) { return std::norm(c); }
double prob_mass(const double& p) { return p; }

} // namespace

FockState ensure_cutoff(const FockState& state, const CutoffPolicy& policy) {
    std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
    const std::size_t keep = trim_point(amps, policy.tail_tol, amp_mass);
    if (keep > policy.max_cutoff) {
        throw CutoffOverflow("state needs cutoff " + std::to_string(keep) +
                             " > max_cutoff " + std::to_string(policy.max_cutoff) +
                             " to keep the tail below tail_tol");
    }
    amps.resize(keep + 1);
    return FockState(std::move(amps), policy.tail_tol);
}

PhotonDistribution ensure_cutoff(const PhotonDistribution& dist, const CutoffPolicy& policy) {
    std::vector<double> probs(dist.probs().begin(), dist.probs().end());
    const std::size_t keep = trim_point(probs, policy.tail_tol, prob_mass);
    if (keep > policy.max_cutoff) {
        throw CutoffOverflow("distribution needs cutoff " + std::to_string(keep) +
                             " > max_cutoff " + std::to_string(policy.max_cutoff) +
                             " to keep the tail below tail_tol");
    }
    probs.resize(keep + 1);
    return PhotonDistribution(std::move(probs), policy.tail_tol);
}

} // namespace fockledger
