#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fockledger/errors.hpp"

namespace fockledger {

// Shared numerical tolerances.
inline constexpr double eps_norm = 1e-12;  // admitted normalization slack
inline constexpr double eps_neg = 1e-12;   // negativity clamp for rounding noise
inline constexpr double eps_zero = 1e-300; // "this value is exactly zero" threshold
inline constexpr double eps_q = 1e-9;      // Poissonian classification band

inline constexpr double default_tail_tol = 1e-12;
inline constexpr std::size_t default_max_cutoff = 4096;

/// Truncation policy: how much probability mass may sit above the cutoff,
/// and how far adaptive growth may push the cutoff before giving up.
struct CutoffPolicy {
    double tail_tol = default_tail_tol;
    std::size_t max_cutoff = default_max_cutoff;
};

/// Accumulates nonnegative weights term(k) into a dense vector at index
/// n = offset + stride*k, extending the support until the tail is negligible.
///
/// The stop rule bounds the *fourth-moment-weighted* tail, not just its mass:
/// once the running ratio rho = term(k)/term(k-1) has dropped below 1, the
/// remaining sum of (n + stride*j)^4 * term(k) * rho^j is bounded by
/// 24 * term(k) * n^4 * rho/(1-rho)^5, and growth stops when that bound
/// (with a 4x safety margin for ratios still creeping upward) falls below
/// tail_tol. Moments up to n^(4) computed from the result then carry at most
/// ~tail_tol of truncation error, which the mass-only rule cannot guarantee
/// for slowly decaying tails.
///
/// Throws CutoffOverflow if max_cutoff is reached first.
template <class TermFn>
std::vector<double> accumulate_terms(TermFn&& term, std::size_t offset, std::size_t stride,
                                     const CutoffPolicy& policy) {
    std::vector<double> out;
    double sum = 0.0;
    double prev = -1.0;
    for (std::size_t k = 0;; ++k) {
        const std::size_t n = offset + stride * k;
        if (n > policy.max_cutoff) {
            throw CutoffOverflow("cutoff " + std::to_string(policy.max_cutoff) +
                                 " reached with tail mass still above tail_tol=" +
                                 std::to_string(policy.tail_tol));
        }
        const double t = term(k);
        out.resize(n + 1, 0.0);
        out[n] = t;
        sum += t;

        if (k >= 4 && prev > 0.0 && t >= 0.0) {
            const double rho = t / prev;
            if (t == 0.0) {
                // Underflowed tail; the previous-term bound already cleared.
                return out;
            }
            if (rho < 0.999) {
                const double nn = static_cast<double>(std::max(n, stride + offset + 1));
                const double one_minus = 1.0 - rho;
                const double bound = 96.0 * t * nn * nn * nn * nn * rho /
                                     (one_minus * one_minus * one_minus * one_minus * one_minus);
                if (bound < policy.tail_tol * std::max(sum, 0.5)) {
                    return out;
                }
            }
        }
        prev = t;
    }
}

} // namespace fockledger
