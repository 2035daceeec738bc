#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "fockledger/fock.hpp"

namespace fockledger {

/// Photon-counting classification, strongest applicable tier.
enum class StatClass {
    Unclassified,   // vacuum: q is 0/0
    SubPoissonian,  // q < 0
    Poissonian,     // |q| <= eps_q
    SuperPoissonian,// q > 0
    SuperChaotic,   // q > nbar  (g2 above the thermal value 2)
    HyperPoissonian // q > 1 + 2*nbar (subtraction beats addition)
};

std::string_view to_string(StatClass k);

struct StatsReport {
    double mean = 0.0;
    double variance = 0.0;
    std::array<double, 4> factorial_moments{}; // n^(1)..n^(4), direct sums
    std::optional<double> mandel_q;            // variance/mean - 1; empty on vacuum
    std::optional<double> g2;                  // 1 + q/mean; empty on vacuum
    StatClass klass = StatClass::Unclassified;
};

/// Closed-form predictions for the states reachable from this distribution
/// by one operator application, next to nothing measured yet. Singular
/// branches (vacuum, p_0 = 1) stay empty.
struct PredictionReport {
    std::optional<double> n_minus;        // n^(2)/nbar
    double n_plus = 0.0;                  // nbar + 1 + var/(1+nbar)
    std::optional<double> q_minus;        // (nbar*n3 - n2^2)/(nbar*n2)
    std::optional<double> n_tilde_minus;  // nbar/(1-p0) - 1
    double n_tilde_plus = 0.0;            // nbar + 1
    std::optional<double> q_tilde;        // n_tilde_minus - nbar
};

StatsReport stats(const PhotonDistribution& dist);
StatsReport stats(const FockState& state);

PredictionReport predictions(const PhotonDistribution& dist);

/// The "subtraction adds more quanta than addition" test, with everything
/// needed to audit it: both sides of q > 1 + 2*nbar and both mean photon
/// numbers computed by direct sums.
struct HyperCheck {
    bool is_hyper = false; // q > 1 + 2*nbar
    double q = 0.0;
    double threshold = 0.0; // 1 + 2*nbar
    double n_minus = 0.0;
    double n_plus = 0.0;
};

HyperCheck check_hyper(const PhotonDistribution& dist);

/// Closed forms for the superposition sqrt(r)|n> + sqrt(1-r)|m>.
struct TwoFockAnalysis {
    double mean = 0.0;
    double n_minus = 0.0;
    double q = 0.0;
    bool condition_holds = false; // r(1-r)(n-m)^2 > r(n-m) + m, i.e. N- > mean
    double q_minus_limit = 0.0;   // (1-r)/r * m - 1, the n -> infinity limit
};

TwoFockAnalysis two_fock_analysis(std::size_t n, std::size_t m, double r);

} // namespace fockledger
