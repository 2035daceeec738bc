#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fockledger/cutoff.hpp"
#include "fockledger/errors.hpp"

namespace fockledger {

using Amplitude = std::complex<double>;

/// Pure state on a truncated number basis: amplitudes c_0..c_cutoff plus the
/// probability mass the truncation is allowed to drop. Immutable after
/// construction; every operation on it is a pure function.
class FockState {
public:
    explicit FockState(std::vector<Amplitude> amplitudes, double tail_tol = default_tail_tol);

    std::size_t cutoff() const { return amps_.size() - 1; }
    double tail_tol() const { return tail_tol_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }

    /// c_n, zero beyond the cutoff.
    Amplitude amp(std::size_t n) const { return n < amps_.size() ? amps_[n] : Amplitude{}; }

    /// Sum of |c_n|^2.
    double norm_sq() const;

    /// |c_n|^2 of the largest amplitude.
    double max_prob() const;

private:
    std::vector<Amplitude> amps_;
    double tail_tol_;
};

/// Photon-number probabilities p_0..p_cutoff. Construction clamps rounding
/// negativity in (-eps_neg, 0) to zero and rejects anything worse, and
/// requires the total mass to sit in [1 - tail_tol, 1 + eps_norm].
class PhotonDistribution {
public:
    explicit PhotonDistribution(std::vector<double> probs, double tail_tol = default_tail_tol);

    std::size_t cutoff() const { return probs_.size() - 1; }
    double tail_tol() const { return tail_tol_; }
    std::span<const double> probs() const { return probs_; }

    /// p_n, zero beyond the cutoff.
    double p(std::size_t n) const { return n < probs_.size() ? probs_[n] : 0.0; }

    double sum() const;

private:
    std::vector<double> probs_;
    double tail_tol_;
};

/// Rescales to unit norm, keeping phases. Throws ZeroState when every
/// amplitude is below eps_zero in modulus (e.g. the image of a|0>).
FockState normalize(const FockState& state);

/// <a|b> with implicit zero padding to the larger cutoff.
Amplitude inner_product(const FockState& a, const FockState& b);

/// |<a|b>|^2.
double fidelity(const FockState& a, const FockState& b);

/// p_n = |c_n|^2. Expects a normalized state.
PhotonDistribution distribution_of(const FockState& state);

/// c_n = exp(i*phase_n) * sqrt(p_n); missing phases default to zero.
FockState state_from_distribution(const PhotonDistribution& dist,
                                  std::span<const double> phases = {});

/// Revalidates a materialized value against a policy: trailing entries whose
/// combined mass stays below tail_tol are trimmed, and a cutoff above
/// policy.max_cutoff that cannot be trimmed raises CutoffOverflow.
FockState ensure_cutoff(const FockState& state, const CutoffPolicy& policy);
PhotonDistribution ensure_cutoff(const PhotonDistribution& dist, const CutoffPolicy& policy);

} // namespace fockledger
