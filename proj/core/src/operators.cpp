#include "fockledger/operators.hpp"

#include <cmath>
#include <utility>

namespace fockledger {

namespace {

double mean_of(const FockState& s) {
    double nbar = 0.0;
    for (std::size_t n = 1; n < s.amplitudes().size(); ++n) {
        nbar += static_cast<double>(n) * std::norm(s.amplitudes()[n]);
    }
    return nbar;
}

OpApplication do_subtract(const FockState& s) {
    const double nbar = mean_of(s);
    if (!(nbar > eps_zero)) {
        throw ZeroState("a|0> vanishes: cannot subtract a photon from the vacuum");
    }
    const double inv = 1.0 / std::sqrt(nbar);
    std::vector<Amplitude> out(std::max<std::size_t>(s.cutoff(), 1), Amplitude{});
    for (std::size_t n = 0; n + 1 < s.amplitudes().size(); ++n) {
        out[n] = s.amplitudes()[n + 1] * std::sqrt(static_cast<double>(n) + 1.0) * inv;
    }
    return {FockState(std::move(out), s.tail_tol()), nbar};
}

OpApplication do_add(const FockState& s) {
    const double nbar = mean_of(s);
    const double inv = 1.0 / std::sqrt(1.0 + nbar);
    std::vector<Amplitude> out(s.amplitudes().size() + 1, Amplitude{});
    for (std::size_t n = 0; n < s.amplitudes().size(); ++n) {
        out[n + 1] = s.amplitudes()[n] * std::sqrt(static_cast<double>(n) + 1.0) * inv;
    }
    return {FockState(std::move(out), s.tail_tol()), 1.0 + nbar};
}

OpApplication do_phase_down(const FockState& s) {
    const double p0 = std::norm(s.amplitudes()[0]);
    const double rest = 1.0 - p0;
    if (rest < 1e-14) {
        throw ZeroState("E- annihilates the vacuum component and nothing else is left");
    }
    const double inv = 1.0 / std::sqrt(rest);
    std::vector<Amplitude> out(std::max<std::size_t>(s.cutoff(), 1), Amplitude{});
    for (std::size_t n = 0; n + 1 < s.amplitudes().size(); ++n) {
        out[n] = s.amplitudes()[n + 1] * inv;
    }
    return {FockState(std::move(out), s.tail_tol()), rest};
}

OpApplication do_phase_up(const FockState& s) {
    std::vector<Amplitude> out(s.amplitudes().size() + 1, Amplitude{});
    for (std::size_t n = 0; n < s.amplitudes().size(); ++n) {
        out[n + 1] = s.amplitudes()[n];
    }
    return {FockState(std::move(out), s.tail_tol()), 1.0};
}

OpApplication do_weighted(const FockState& s, const std::function<Amplitude(std::size_t)>& f) {
    std::vector<Amplitude> out(std::max<std::size_t>(s.cutoff(), 1), Amplitude{});
    double prenorm = 0.0;
    for (std::size_t n = 0; n + 1 < s.amplitudes().size(); ++n) {
        const Amplitude v =
            f(n) * s.amplitudes()[n + 1] * std::sqrt(static_cast<double>(n) + 1.0);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InvalidParams("weight function is not finite on the state's support");
        }
        out[n] = v;
        prenorm += std::norm(v);
    }
    if (!(prenorm > eps_zero)) {
        throw ZeroState("f(n) a |psi> vanished: weight annihilates the whole support");
    }
    const double inv = 1.0 / std::sqrt(prenorm);
    for (auto& c : out) c *= inv;
    return {FockState(std::move(out), s.tail_tol()), prenorm};
}

} // namespace

OpApplication apply_operator(const FockState& state, const OperatorKind& op) {
    return std::visit(
        [&](const auto& kind) -> OpApplication {
            using T = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<T, Annihilate>) {
                return do_subtract(state);
            } else if constexpr (std::is_same_v<T, Create>) {
                return do_add(state);
            } else if constexpr (std::is_same_v<T, ExpPhaseDown>) {
                return do_phase_down(state);
            } else if constexpr (std::is_same_v<T, ExpPhaseUp>) {
                return do_phase_up(state);
            } else {
                return do_weighted(state, kind.weight);
            }
        },
        op);
}

FockState subtracted(const FockState& state) { return do_subtract(state).state; }

FockState added(const FockState& state) { return do_add(state).state; }

FockState exp_phase(const FockState& state, PhaseDirection dir) {
    return dir == PhaseDirection::down ? do_phase_down(state).state : do_phase_up(state).state;
}

FockState weighted_annihilate(const FockState& state,
                              const std::function<Amplitude(std::size_t)>& weight) {
    return do_weighted(state, weight).state;
}

std::vector<IterationStep> iterate(const FockState& state, const OperatorKind& op, std::size_t k) {
    if (k < 1) {
        throw InvalidParams("iterate needs k >= 1");
    }
    std::vector<IterationStep> steps;
    steps.reserve(k);
    FockState cur = state;
    for (std::size_t i = 0; i < k; ++i) {
        cur = apply_operator(cur, op).state;
        StatsReport rep = stats(cur);
        steps.push_back({cur, rep});
    }
    return steps;
}

} // namespace fockledger
