#include "fockledger/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fockledger {

GenFun::GenFun(std::vector<double> coeffs, double tail_tol)
    : coeffs_(std::move(coeffs)), tail_tol_(tail_tol) {
    if (coeffs_.empty()) {
        throw InvalidParams("GenFun needs at least the constant coefficient");
    }
    const double at_one = std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0);
    if (at_one < 1.0 - tail_tol_ - eps_norm || at_one > 1.0 + eps_norm) {
        throw InvalidDistribution("G(1) = " + std::to_string(at_one) +
                                  " violates the normalization window");
    }
}

GenFun::GenFun(const PhotonDistribution& dist)
    : coeffs_(dist.probs().begin(), dist.probs().end()), tail_tol_(dist.tail_tol()) {}

double GenFun::eval(double z) const {
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
}

std::complex<double> GenFun::eval(std::complex<double> z) const {
    std::complex<double> acc{};
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
}

std::optional<std::size_t> GenFun::first_negative(double eps) const {
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        if (coeffs_[n] < -eps) return n;
    }
    return std::nullopt;
}

PhotonDistribution GenFun::to_distribution() const {
    return PhotonDistribution(coeffs_, tail_tol_);
}

GenFun transform(const GenFun& g, TransformKind kind, double nbar, double p0) {
    const auto c = g.coeffs();
    switch (kind) {
        case TransformKind::minus: {
            if (!(nbar > eps_zero)) {
                throw ZeroState("minus transform is singular at nbar = 0");
            }
            std::vector<double> out(std::max<std::size_t>(c.size() - 1, 1), 0.0);
            for (std::size_t n = 0; n + 1 < c.size(); ++n) {
                out[n] = (static_cast<double>(n) + 1.0) * c[n + 1] / nbar;
            }
            return GenFun(std::move(out), g.tail_tol());
        }
        case TransformKind::plus: {
            std::vector<double> out(c.size() + 1, 0.0);
            for (std::size_t n = 0; n < c.size(); ++n) {
                out[n + 1] = (static_cast<double>(n) + 1.0) * c[n] / (1.0 + nbar);
            }
            return GenFun(std::move(out), g.tail_tol());
        }
        case TransformKind::tilde_minus: {
            if (1.0 - p0 < 1e-14) {
                throw ZeroState("tilde-minus transform is singular at p_0 = 1");
            }
            std::vector<double> out(std::max<std::size_t>(c.size() - 1, 1), 0.0);
            for (std::size_t n = 0; n + 1 < c.size(); ++n) {
                out[n] = c[n + 1] / (1.0 - p0);
            }
            return GenFun(std::move(out), g.tail_tol());
        }
        case TransformKind::tilde_plus: {
            std::vector<double> out(c.size() + 1, 0.0);
            for (std::size_t n = 0; n < c.size(); ++n) out[n + 1] = c[n];
            return GenFun(std::move(out), g.tail_tol());
        }
    }
    throw InvalidParams("unknown transform kind");
}

GenFun transform(const GenFun& g, TransformKind kind) {
    double nbar = 0.0;
    for (std::size_t n = 1; n < g.coeffs().size(); ++n) {
        nbar += static_cast<double>(n) * g.coeffs()[n];
    }
    return transform(g, kind, nbar, g.coeff(0));
}

double log_q_nbar_bound(double q) {
    if (!(q > 0.0)) throw InvalidParams("the bound needs q > 0");
    return q * (std::exp(1.0) - 1.0) / (-std::expm1(-q));
}

double gamma_nbar_bound(double gamma) {
    if (!(gamma > 0.0)) throw InvalidParams("the bound needs gamma > 0");
    if (gamma >= 1.0) return std::numeric_limits<double>::infinity();
    return std::abs(std::log1p(-gamma)) / gamma;
}

PhotonDistribution gamma_family(double nbar, double gamma, const CutoffPolicy& policy) {
    if (!(nbar > 0.0) || !(gamma > 0.0)) {
        throw InvalidParams("gamma family needs nbar > 0 and gamma > 0");
    }
    const double lambda = gamma * nbar;
    const double p0 = 1.0 - 1.0 / gamma + std::exp(-lambda) / gamma;
    if (p0 < -eps_neg) {
        throw InvalidParams("gamma family exists for gamma < 1 only while gamma*nbar <= "
                            "|ln(1-gamma)|; got gamma*nbar = " +
                            std::to_string(lambda) + " > " + std::to_string(gamma_nbar_bound(gamma) * gamma));
    }
    const double llam = std::log(lambda);
    const double mass_above_vacuum = (-std::expm1(-lambda)) / gamma;
    std::vector<double> probs{std::max(p0, 0.0)};
    double acc = 0.0;
    double prev = -1.0;
    for (std::size_t n = 1;; ++n) {
        if (n > policy.max_cutoff) {
            throw CutoffOverflow("gamma family at gamma*nbar = " + std::to_string(lambda) +
                                 " needs a cutoff beyond " + std::to_string(policy.max_cutoff) +
                                 " for tail_tol = " + std::to_string(policy.tail_tol));
        }
        const double fn = static_cast<double>(n);
        const double t = std::exp(-lambda + fn * llam - std::lgamma(fn + 1.0)) / gamma;
        probs.push_back(t);
        acc += t;
        // For huge gamma*nbar every reachable term underflows while the
        // (analytically known) residual may still fit inside tail_tol.
        if (t == 0.0 && mass_above_vacuum - acc < policy.tail_tol) break;
        if (n >= 4 && prev > 0.0 && t > 0.0) {
            const double rho = t / prev;
            if (rho < 0.999) {
                const double om = 1.0 - rho;
                const double bound =
                    96.0 * t * fn * fn * fn * fn * rho / (om * om * om * om * om);
                if (bound < policy.tail_tol && mass_above_vacuum - acc < policy.tail_tol) break;
            }
        }
        prev = t;
    }
    return PhotonDistribution(std::move(probs), policy.tail_tol);
}

namespace {

// Signed log-space sum s1*e^{t1} + s2*e^{t2}; keeps the sign exact even when
// the magnitudes overflow a double.
double signed_exp_sum(double t1, double s1, double t2, double s2) {
    if (s2 == 0.0) return s1 * std::exp(t1);
    if (t1 >= t2) {
        return s1 * std::exp(t1) * (1.0 + (s2 / s1) * std::exp(t2 - t1));
    }
    return s2 * std::exp(t2) * (1.0 + (s1 / s2) * std::exp(t1 - t2));
}

} // namespace

std::variant<PhotonDistribution, NegativityReport> cosh_family(double nbar, double gamma,
                                                               const CutoffPolicy& policy) {
    if (!(nbar > 0.0) || !(gamma > 0.0)) {
        throw InvalidParams("cosh family needs nbar > 0 and gamma > 0");
    }
    const double a = nbar * std::sqrt(gamma);
    const double s = 1.0 / std::sqrt(gamma);
    const double la = std::log(a);
    const double w_minus = (1.0 + s) / 2.0; // weight of e^{-a} e^{az}
    const double w_plus = (1.0 - s) / 2.0;  // weight of e^{+a} e^{-az}; zero at gamma = 1

    auto coeff = [&](std::size_t n) {
        const double fn = static_cast<double>(n);
        const double base = fn * la - std::lgamma(fn + 1.0);
        const double sign2 = (n % 2 == 0) ? 1.0 : -1.0;
        return signed_exp_sum(-a + base, w_minus, a + base, w_plus * sign2);
    };

    std::vector<double> probs;
    double sum = 0.0;
    double peak = 0.0;
    for (std::size_t n = 0;; ++n) {
        if (n > policy.max_cutoff) {
            throw CutoffOverflow("cosh family support exceeded max_cutoff");
        }
        const double p = coeff(n);
        if (p < -eps_neg) {
            return NegativityReport{n, p};
        }
        probs.push_back(std::max(p, 0.0));
        sum += probs.back();
        peak = std::max(peak, std::abs(p));
        // Positive cases have a tiny support (the admissible window forces
        // a < ~0.55); stop once the residual cannot matter.
        if (n >= 8 && static_cast<double>(n) > 4.0 * (a + 1.0) &&
            std::abs(p) < policy.tail_tol * 1e-3 * std::max(peak, 1.0) &&
            sum > 1.0 - policy.tail_tol) {
            break;
        }
    }
    return PhotonDistribution(std::move(probs), policy.tail_tol);
}

namespace {

// Coefficients of G = 1 - ln A with A(z) = a0 - sum_{j>=1} abar_j z^j,
// abar_j = nbar e^{-q} q^{j-1}/j! > 0. The recurrence
//   p_n = [n abar_n + sum_{k=1}^{n-1} k p_k abar_{n-k}] / (n a0)
// has only nonnegative summands, so it is free of cancellation.
std::vector<double> log_q_coeffs(double nbar, double q, double p0, std::size_t count) {
    const double a0 = 1.0 + nbar * (-std::expm1(-q)) / q;
    const double lq = std::log(q);
    std::vector<double> abar(count + 1, 0.0);
    for (std::size_t j = 1; j <= count; ++j) {
        const double fj = static_cast<double>(j);
        abar[j] = nbar * std::exp(-q + (fj - 1.0) * lq - std::lgamma(fj + 1.0));
    }
    std::vector<double> p(count + 1, 0.0);
    p[0] = p0;
    for (std::size_t n = 1; n <= count; ++n) {
        double acc = static_cast<double>(n) * abar[n];
        for (std::size_t k = 1; k < n; ++k) {
            acc += static_cast<double>(k) * p[k] * abar[n - k];
        }
        p[n] = acc / (static_cast<double>(n) * a0);
    }
    return p;
}

// Fourth-moment-weighted convergence check on a computed coefficient block.
bool tail_converged(const std::vector<double>& p, double tail_tol) {
    double sum = 0.0;
    for (double x : p) sum += x;
    if (sum < 1.0 - tail_tol) return false;
    std::size_t last = p.size() - 1;
    while (last > 0 && p[last] == 0.0) --last;
    if (last + 2 < p.size()) return true; // underflowed past the final bump
    if (last < 2 || p[last - 1] <= 0.0) return false;
    const double rho = p[last] / p[last - 1];
    if (rho >= 0.999) return false;
    const double nn = static_cast<double>(last);
    const double om = 1.0 - rho;
    const double bound = 96.0 * p[last] * nn * nn * nn * nn * rho / (om * om * om * om * om);
    return bound < tail_tol;
}

} // namespace

PhotonDistribution log_q_family(double nbar, double q, const CutoffPolicy& policy) {
    if (!(nbar > 0.0) || !(q > 0.0)) {
        throw InvalidParams("log-q family needs nbar > 0 and q > 0");
    }
    const double denom = q + nbar * (-std::expm1(-q));
    const double p0 = 1.0 + std::log(q) - std::log(denom);
    if (p0 < -eps_neg) {
        throw InvalidParams("log-q family needs nbar <= q(e-1)/(1-exp(-q)) = " +
                            std::to_string(log_q_nbar_bound(q)) + " so that p_0 stays "
                            "nonnegative; got nbar = " + std::to_string(nbar));
    }
    // The distribution piles Poisson-like bumps at n ~ kq with geometrically
    // shrinking weights, so start past the first bump and double until the
    // weighted tail clears.
    std::size_t count = std::max<std::size_t>(32, static_cast<std::size_t>(4.0 * (q + nbar)));
    for (;;) {
        count = std::min(count, policy.max_cutoff);
        std::vector<double> p = log_q_coeffs(nbar, q, std::max(p0, 0.0), count);
        if (tail_converged(p, policy.tail_tol)) {
            double sum = 0.0;
            for (double x : p) sum += x;
            if (sum > 1.0) {
                const double inv = 1.0 / sum;
                for (double& x : p) x *= inv;
            }
            return PhotonDistribution(std::move(p), policy.tail_tol);
        }
        if (count == policy.max_cutoff) {
            throw CutoffOverflow("log-q family did not converge below cutoff " +
                                 std::to_string(policy.max_cutoff));
        }
        count *= 2;
    }
}

PhotonDistribution log0_family(double nbar, const CutoffPolicy& policy) {
    if (!(nbar > 0.0)) {
        throw InvalidParams("log0 family needs nbar > 0");
    }
    const double p0 = 1.0 - std::log1p(nbar);
    if (p0 < -eps_neg) {
        throw InvalidParams("log0 family needs nbar <= e-1 (~1.7182818) so that p_0 stays "
                            "nonnegative; got nbar = " + std::to_string(nbar));
    }
    const double x = nbar / (1.0 + nbar);
    const double lx = std::log(x);
    auto term = [&](std::size_t k) {
        const double n = static_cast<double>(k) + 1.0;
        return std::exp(n * lx) / n;
    };
    std::vector<double> probs = accumulate_terms(term, 1, 1, policy);
    probs[0] = std::max(p0, 0.0);
    return PhotonDistribution(std::move(probs), policy.tail_tol);
}

double balazs_moments(double nbar, double A, std::size_t r) {
    if (!(A >= 0.0) || r < 1 || !(nbar >= 0.0)) {
        throw InvalidParams("balazs_moments needs A >= 0, nbar >= 0 and r >= 1");
    }
    if (A == 1.0) {
        return r == 1 ? nbar : 0.0;
    }
    // x^r coefficient of (A-1)^{-1} ln[(1-A) nbar x + 1]:
    //   c_r = (A-1)^{-1} (-1)^{r+1} ((1-A) nbar)^r / r,
    // and the series packs the moments as c_r = (-1)^r n^(r)/r!.
    const double u = (1.0 - A) * nbar;
    double c_r = std::pow(u, static_cast<double>(r)) / (static_cast<double>(r) * (A - 1.0));
    if (r % 2 == 0) c_r = -c_r;
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    return sign * c_r * std::tgamma(static_cast<double>(r) + 1.0);
}

} // namespace fockledger
