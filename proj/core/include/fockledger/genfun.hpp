#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "fockledger/fock.hpp"

namespace fockledger {

/// Truncated power series G(z) = sum c_n z^n whose coefficients are photon
/// probabilities when the object is a valid generating function: G(1) must
/// land in [1 - tail_tol, 1 + eps_norm]. Negative coefficients are allowed
/// so that candidate generating functions which FAIL the probability
/// interpretation stay representable; first_negative() flags them.
class GenFun {
public:
    explicit GenFun(std::vector<double> coeffs, double tail_tol = default_tail_tol);
    explicit GenFun(const PhotonDistribution& dist);

    std::size_t cutoff() const { return coeffs_.size() - 1; }
    double tail_tol() const { return tail_tol_; }
    std::span<const double> coeffs() const { return coeffs_; }
    double coeff(std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : 0.0; }

    /// Horner evaluation of the truncated series.
    double eval(double z) const;
    std::complex<double> eval(std::complex<double> z) const;

    /// Index of the first coefficient below -eps, if any.
    std::optional<std::size_t> first_negative(double eps = eps_neg) const;

    /// Reinterprets the coefficients as probabilities; throws
    /// InvalidDistribution when a coefficient is genuinely negative.
    PhotonDistribution to_distribution() const;

private:
    std::vector<double> coeffs_;
    double tail_tol_;
};

/// The four coefficient-level transforms matching one operator application:
///   minus:       c'_n = (n+1) c_{n+1} / nbar            (a)
///   plus:        c'_{n+1} = (n+1) c_n / (1+nbar)        (a^dag)
///   tilde_minus: c'_n = c_{n+1} / (1-p0)                (E-)
///   tilde_plus:  c'_{n+1} = c_n                         (E+)
enum class TransformKind { minus, plus, tilde_minus, tilde_plus };

GenFun transform(const GenFun& g, TransformKind kind, double nbar, double p0);

/// Same, with nbar and p0 derived from the coefficients.
GenFun transform(const GenFun& g, TransformKind kind);

/// Distribution with prescribed mean nbar and mean multiplication factor
/// gamma = N_minus/nbar:
///   p_0 = 1 - 1/gamma + exp(-gamma*nbar)/gamma,
///   p_n = exp(-gamma*nbar) (gamma*nbar)^n / (gamma n!).
/// Exists for every nbar when gamma >= 1; for gamma < 1 only while
/// gamma*nbar <= |ln(1-gamma)| (otherwise p_0 goes negative -> InvalidParams).
PhotonDistribution gamma_family(double nbar, double gamma, const CutoffPolicy& policy = {});

/// Where a candidate generating function first stops being a probability.
struct NegativityReport {
    std::size_t index;
    double value;
};

/// Candidate family cosh[a(z-1)] + gamma^{-1/2} sinh[a(z-1)], a = nbar*sqrt(gamma):
///   p_n = [(1+gamma^{-1/2}) e^{-a} a^n + (1-gamma^{-1/2}) e^{a} (-a)^n] / (2 n!).
/// Returns the distribution when every coefficient is admissible, otherwise
/// the first offending index and value. Negativity is an expected outcome
/// here, not a failure.
std::variant<PhotonDistribution, NegativityReport> cosh_family(double nbar, double gamma,
                                                               const CutoffPolicy& policy = {});

/// Distribution with prescribed mean nbar and Mandel parameter q > 0, from
/// G(z) = 1 - ln[1 + (nbar/q)(1 - e^{q(z-1)})]. Requires
/// nbar <= q(e-1)/(1-e^{-q}), else the vacuum probability is negative.
PhotonDistribution log_q_family(double nbar, double q, const CutoffPolicy& policy = {});

/// The q -> 0 member: G(z) = 1 - ln[1 - nbar(z-1)],
///   p_0 = 1 - ln(1+nbar),  p_n = (1/n) (nbar/(1+nbar))^n,
/// with factorial moments (r-1)! nbar^r. Requires 0 < nbar <= e-1.
PhotonDistribution log0_family(double nbar, const CutoffPolicy& policy = {});

/// Largest admissible nbar for log_q_family at this q.
double log_q_nbar_bound(double q);

/// Largest admissible nbar for gamma_family at gamma < 1 (infinity for
/// gamma >= 1).
double gamma_nbar_bound(double gamma);

/// r-th factorial moment extracted from the alternating factorial-moment
/// series Q1(x) = (A-1)^{-1} ln[(1-A) nbar x + 1] + 1, whose x^r coefficient
/// is (-1)^r n^(r) / r!. At A = 0 this reproduces (r-1)! nbar^r.
double balazs_moments(double nbar, double A, std::size_t r);

} // namespace fockledger
