#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "fockledger/fock.hpp"

namespace fockledger {

// Every family takes real nonnegative parameters; overall phases carry no
// statistics, so amplitudes are built real.

struct Fock {
    std::size_t n;
};

/// sqrt(r)|n> + sqrt(1-r)|m>, n > m >= 0, 0 < r < 1.
struct TwoFock {
    std::size_t n;
    std::size_t m;
    double r;
};

struct Coherent {
    double alpha;
};

/// sqrt(eta)|alpha> + xi|0>, parameterized by (alpha, eta); xi is solved from
/// the normalization constraint eta + xi^2 + 2 sqrt(eta) e^{-alpha^2/2} xi = 1,
/// taking the real root of minimal magnitude.
struct CoherentVacuum {
    double alpha;
    double eta;
};

/// p_n = (1-xi)^mu Gamma(mu+n)/(Gamma(mu) n!) xi^n; mu > 0, 0 <= xi < 1.
struct NegativeBinomial {
    double xi;
    double mu;
};

struct Binomial {
    double p;
    std::size_t trials; // M
};

/// Normalized |alpha> - |-alpha>: support on odd n only.
struct OddCoherent {
    double alpha;
};

/// Parameterized by the target mean rather than the squeeze parameter
/// (s = asinh(sqrt(nbar))); support on even n only.
struct SqueezedVacuum {
    double nbar;
};

/// c|0> + sum_{n>=1} z^n/sqrt(n) |n> with c^2 = 1 + ln(1-z^2), which forces
/// z^2 <= 1 - 1/e.
struct SimonLog {
    double z;
};

/// sqrt(1-z^2) sum z^n |n>, the E- eigenstate; 0 <= z < 1.
struct PhaseCoherent {
    double z;
};

/// Delegates to genfun's gamma_family.
struct GammaFamily {
    double nbar;
    double gamma;
};

/// Delegates to genfun's log_q_family.
struct LogQ {
    double nbar;
    double q;
};

/// Delegates to genfun's log0_family.
struct Log0 {
    double nbar;
};

using FamilySpec = std::variant<Fock, TwoFock, Coherent, CoherentVacuum, NegativeBinomial,
                                Binomial, OddCoherent, SqueezedVacuum, SimonLog, PhaseCoherent,
                                GammaFamily, LogQ, Log0>;

/// Normalized state for the spec, truncated per policy.
FockState build(const FamilySpec& spec, const CutoffPolicy& policy = {});

/// Canonical text form, e.g. "negbin:xi=0.5,mu=2" or "twofock:n=10,m=0,r=0.5".
std::string format_spec(const FamilySpec& spec);
FamilySpec parse_spec(const std::string& text);

/// Short family tag ("fock", "negbin", ...).
std::string family_name(const FamilySpec& spec);

/// Closed-form expectations where the source material states them; empty
/// fields mean "no closed form given". Throws UnsupportedSpec for families
/// with no closed forms at all.
struct PaperRelations {
    std::optional<double> mean;
    std::optional<double> mandel_q;
    std::optional<double> n_minus;
    std::optional<double> n_plus;
};

PaperRelations paper_relations(const FamilySpec& spec);

/// Fidelity check: subtracting the vacuum+coherent superposition lands on
/// the bare coherent state |alpha>, independent of eta.
bool subtracted_is_coherent_check(double alpha, double eta, const CutoffPolicy& policy = {});

/// Fidelity check: one subtraction turns the logarithmic state into the
/// phase-coherent state with the same z.
bool simonlog_subtract_is_phase_coherent(double z, const CutoffPolicy& policy = {});

} // namespace fockledger
