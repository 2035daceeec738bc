#pragma once

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include "fockledger/fock.hpp"
#include "fockledger/statistics.hpp"

namespace fockledger {

struct Annihilate {};
struct Create {};
struct ExpPhaseDown {};
struct ExpPhaseUp {};

/// f(n) a: annihilation with an arbitrary weight on the quantum number.
/// The weight must be finite on the state's support.
struct WeightedAnnihilate {
    std::function<Amplitude(std::size_t)> weight;
};

using OperatorKind = std::variant<Annihilate, Create, ExpPhaseDown, ExpPhaseUp, WeightedAnnihilate>;

enum class PhaseDirection { down, up };

/// Result of one operator application. The state comes back normalized;
/// prenorm_sq is the squared norm the raw image had before renormalization.
/// Those norms are exactly the denominators of the defining formulas
/// (nbar for a, 1+nbar for a^dag, 1-p_0 for E-, 1 for E+), which makes them
/// directly testable values.
struct OpApplication {
    FockState state;
    double prenorm_sq;
};

OpApplication apply_operator(const FockState& state, const OperatorKind& op);

/// Normalized a|psi>: c'_n = c_{n+1} sqrt(n+1) / sqrt(nbar). Cutoff drops
/// by one. Throws ZeroState on (numerical) vacuum.
FockState subtracted(const FockState& state);

/// Normalized a^dag|psi>: c'_{n+1} = c_n sqrt(n+1) / sqrt(1+nbar). Cutoff
/// grows by one.
FockState added(const FockState& state);

/// E-|psi> / E+|psi>: shift the quantum number by -/+1 without amplitude
/// weighting. Down renormalizes by sqrt(1-p_0) and rejects states whose
/// vacuum probability is within 1e-14 of 1 rather than amplify noise.
FockState exp_phase(const FockState& state, PhaseDirection dir);

/// Normalized f(n) a |psi>. Throws ZeroState when f kills the whole support.
FockState weighted_annihilate(const FockState& state,
                              const std::function<Amplitude(std::size_t)>& weight);

struct IterationStep {
    FockState state;
    StatsReport stats;
};

/// Applies op k times, reporting each intermediate normalized state with
/// its statistics. Errors from the underlying operator propagate.
std::vector<IterationStep> iterate(const FockState& state, const OperatorKind& op, std::size_t k);

} // namespace fockledger
