#include "fockledger/families.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "fockledger/genfun.hpp"
#include "fockledger/operators.hpp"

namespace fockledger {

namespace {

std::vector<double> sqrt_all(std::vector<double> probs) {
    for (double& p : probs) p = std::sqrt(std::max(p, 0.0));
    return probs;
}

FockState state_from_real_probs(std::vector<double> probs, double tail_tol) {
    std::vector<double> amps = sqrt_all(std::move(probs));
    std::vector<Amplitude> out;
    out.reserve(amps.size());
    for (double a : amps) out.emplace_back(a, 0.0);
    return FockState(std::move(out), tail_tol);
}

FockState build_fock(const Fock& f, const CutoffPolicy& policy) {
    if (f.n > policy.max_cutoff) {
        throw InvalidParams("Fock index exceeds max_cutoff");
    }
    std::vector<Amplitude> amps(f.n + 1, Amplitude{});
    amps[f.n] = 1.0;
    return FockState(std::move(amps), policy.tail_tol);
}

FockState build_two_fock(const TwoFock& f, const CutoffPolicy& policy) {
    if (!(f.n > f.m) || !(f.r > 0.0) || !(f.r < 1.0)) {
        throw InvalidParams("two-Fock superposition needs n > m >= 0 and 0 < r < 1");
    }
    if (f.n > policy.max_cutoff) {
        throw InvalidParams("Fock index exceeds max_cutoff");
    }
    std::vector<Amplitude> amps(f.n + 1, Amplitude{});
    amps[f.n] = std::sqrt(f.r);
    amps[f.m] = std::sqrt(1.0 - f.r);
    return FockState(std::move(amps), policy.tail_tol);
}

FockState build_coherent(const Coherent& f, const CutoffPolicy& policy) {
    if (!(f.alpha >= 0.0)) {
        throw InvalidParams("coherent state needs alpha >= 0");
    }
    if (f.alpha == 0.0) {
        return FockState({Amplitude{1.0, 0.0}}, policy.tail_tol);
    }
    const double a2 = f.alpha * f.alpha;
    const double la = std::log(f.alpha);
    auto term = [&](std::size_t k) {
        const double n = static_cast<double>(k);
        return std::exp(-a2 + 2.0 * n * la - std::lgamma(n + 1.0));
    };
    return state_from_real_probs(accumulate_terms(term, 0, 1, policy), policy.tail_tol);
}

FockState build_coherent_vacuum(const CoherentVacuum& f, const CutoffPolicy& policy) {
    if (!(f.alpha > 0.0) || !(f.eta > 0.0)) {
        throw InvalidParams("coherent+vacuum superposition needs alpha > 0 and eta > 0");
    }
    const double a2 = f.alpha * f.alpha;
    const double p0 = 1.0 - f.eta * (-std::expm1(-a2));
    // p0 is exactly the discriminant of the quadratic for xi; the chosen
    // root xi = -b + sqrt(p0) makes c_0 = sqrt(p0) directly.
    if (p0 < -eps_neg) {
        throw NoRealRoot("the normalization constraint has no real xi for alpha = " +
                         std::to_string(f.alpha) + ", eta = " + std::to_string(f.eta));
    }
    const double la = std::log(f.alpha);
    auto term = [&](std::size_t k) {
        const double n = static_cast<double>(k) + 1.0;
        return f.eta * std::exp(-a2 + 2.0 * n * la - std::lgamma(n + 1.0));
    };
    std::vector<double> probs = accumulate_terms(term, 1, 1, policy);
    probs[0] = std::max(p0, 0.0);
    return state_from_real_probs(std::move(probs), policy.tail_tol);
}

FockState build_negative_binomial(const NegativeBinomial& f, const CutoffPolicy& policy) {
    if (!(f.xi >= 0.0) || !(f.xi < 1.0) || !(f.mu > 0.0)) {
        throw InvalidParams("negative binomial state needs 0 <= xi < 1 and mu > 0");
    }
    if (f.xi == 0.0) {
        return FockState({Amplitude{1.0, 0.0}}, policy.tail_tol);
    }
    const double lxi = std::log(f.xi);
    const double base = f.mu * std::log1p(-f.xi) - std::lgamma(f.mu);
    auto term = [&](std::size_t k) {
        const double n = static_cast<double>(k);
        return std::exp(base + std::lgamma(f.mu + n) - std::lgamma(n + 1.0) + n * lxi);
    };
    return state_from_real_probs(accumulate_terms(term, 0, 1, policy), policy.tail_tol);
}

FockState build_binomial(const Binomial& f, const CutoffPolicy& policy) {
    if (!(f.p > 0.0) || !(f.p < 1.0) || f.trials < 1) {
        throw InvalidParams("binomial state needs 0 < p < 1 and M >= 1");
    }
    if (f.trials > policy.max_cutoff) {
        throw InvalidParams("binomial M exceeds max_cutoff");
    }
    const double M = static_cast<double>(f.trials);
    const double lp = std::log(f.p);
    const double lq = std::log1p(-f.p);
    std::vector<double> probs(f.trials + 1, 0.0);
    for (std::size_t n = 0; n <= f.trials; ++n) {
        const double fn = static_cast<double>(n);
        probs[n] = std::exp(std::lgamma(M + 1.0) - std::lgamma(fn + 1.0) -
                            std::lgamma(M - fn + 1.0) + fn * lp + (M - fn) * lq);
    }
    return state_from_real_probs(std::move(probs), policy.tail_tol);
}

FockState build_odd_coherent(const OddCoherent& f, const CutoffPolicy& policy) {
    if (!(f.alpha > 0.0)) {
        throw InvalidParams("odd coherent state needs alpha > 0");
    }
    const double a2 = f.alpha * f.alpha;
    const double la2 = std::log(a2);
    // ln sinh(a2) without overflow: a2 + ln((1 - e^{-2 a2})/2).
    const double lsinh = a2 + std::log(-std::expm1(-2.0 * a2) / 2.0);
    auto term = [&](std::size_t k) {
        const double n = 2.0 * static_cast<double>(k) + 1.0;
        return std::exp(n * la2 - std::lgamma(n + 1.0) - lsinh);
    };
    return state_from_real_probs(accumulate_terms(term, 1, 2, policy), policy.tail_tol);
}

FockState build_squeezed_vacuum(const SqueezedVacuum& f, const CutoffPolicy& policy) {
    if (!(f.nbar > 0.0)) {
        throw InvalidParams("squeezed vacuum needs target nbar > 0");
    }
    // tanh^2(s) = nbar/(1+nbar), cosh(s) = sqrt(1+nbar) for s = asinh(sqrt(nbar)).
    const double lt2 = std::log(f.nbar / (1.0 + f.nbar));
    const double lcosh = 0.5 * std::log1p(f.nbar);
    auto term = [&](std::size_t k) {
        const double m = static_cast<double>(k);
        return std::exp(std::lgamma(2.0 * m + 1.0) - 2.0 * std::lgamma(m + 1.0) +
                        m * (lt2 - std::log(4.0)) - lcosh);
    };
    return state_from_real_probs(accumulate_terms(term, 0, 2, policy), policy.tail_tol);
}

FockState build_simon_log(const SimonLog& f, const CutoffPolicy& policy) {
    if (!(f.z >= 0.0) || !(f.z < 1.0)) {
        throw InvalidParams("logarithmic state needs 0 <= z < 1");
    }
    const double z2 = f.z * f.z;
    const double c0sq = 1.0 + std::log1p(-z2);
    if (c0sq < -eps_neg) {
        throw InvalidParams("logarithmic state exists only for z <= sqrt(1-1/e) ~ 0.79506 "
                            "(the vacuum weight 1 + ln(1-z^2) went negative)");
    }
    if (f.z == 0.0) {
        return FockState({Amplitude{1.0, 0.0}}, policy.tail_tol);
    }
    const double lz2 = std::log(z2);
    auto term = [&](std::size_t k) {
        const double n = static_cast<double>(k) + 1.0;
        return std::exp(n * lz2) / n;
    };
    std::vector<double> probs = accumulate_terms(term, 1, 1, policy);
    probs[0] = std::max(c0sq, 0.0);
    return state_from_real_probs(std::move(probs), policy.tail_tol);
}

FockState build_phase_coherent(const PhaseCoherent& f, const CutoffPolicy& policy) {
    if (!(f.z >= 0.0) || !(f.z < 1.0)) {
        throw InvalidParams("phase-coherent state needs 0 <= z < 1");
    }
    if (f.z == 0.0) {
        return FockState({Amplitude{1.0, 0.0}}, policy.tail_tol);
    }
    const double z2 = f.z * f.z;
    const double lz2 = std::log(z2);
    auto term = [&](std::size_t k) {
        return (1.0 - z2) * std::exp(static_cast<double>(k) * lz2);
    };
    return state_from_real_probs(accumulate_terms(term, 0, 1, policy), policy.tail_tol);
}

} // namespace

FockState build(const FamilySpec& spec, const CutoffPolicy& policy) {
    return std::visit(
        [&](const auto& f) -> FockState {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Fock>) {
                return build_fock(f, policy);
            } else if constexpr (std::is_same_v<T, TwoFock>) {
                return build_two_fock(f, policy);
            } else if constexpr (std::is_same_v<T, Coherent>) {
                return build_coherent(f, policy);
            } else if constexpr (std::is_same_v<T, CoherentVacuum>) {
                return build_coherent_vacuum(f, policy);
            } else if constexpr (std::is_same_v<T, NegativeBinomial>) {
                return build_negative_binomial(f, policy);
            } else if constexpr (std::is_same_v<T, Binomial>) {
                return build_binomial(f, policy);
            } else if constexpr (std::is_same_v<T, OddCoherent>) {
                return build_odd_coherent(f, policy);
            } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
                return build_squeezed_vacuum(f, policy);
            } else if constexpr (std::is_same_v<T, SimonLog>) {
                return build_simon_log(f, policy);
            } else if constexpr (std::is_same_v<T, PhaseCoherent>) {
                return build_phase_coherent(f, policy);
            } else if constexpr (std::is_same_v<T, GammaFamily>) {
                return state_from_distribution(gamma_family(f.nbar, f.gamma, policy));
            } else if constexpr (std::is_same_v<T, LogQ>) {
                return state_from_distribution(log_q_family(f.nbar, f.q, policy));
            } else {
                return state_from_distribution(log0_family(f.nbar, policy));
            }
        },
        spec);
}

std::string family_name(const FamilySpec& spec) {
    return std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Fock>) return "fock";
            else if constexpr (std::is_same_v<T, TwoFock>) return "twofock";
            else if constexpr (std::is_same_v<T, Coherent>) return "coherent";
            else if constexpr (std::is_same_v<T, CoherentVacuum>) return "cohvac";
            else if constexpr (std::is_same_v<T, NegativeBinomial>) return "negbin";
            else if constexpr (std::is_same_v<T, Binomial>) return "binomial";
            else if constexpr (std::is_same_v<T, OddCoherent>) return "oddcoh";
            else if constexpr (std::is_same_v<T, SqueezedVacuum>) return "sqvac";
            else if constexpr (std::is_same_v<T, SimonLog>) return "simonlog";
            else if constexpr (std::is_same_v<T, PhaseCoherent>) return "phase";
            else if constexpr (std::is_same_v<T, GammaFamily>) return "gamma";
            else if constexpr (std::is_same_v<T, LogQ>) return "logq";
            else return "log0";
        },
        spec);
}

namespace {

std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

std::string format_spec(const FamilySpec& spec) {
    return std::visit(
        [&](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Fock>) {
                return "fock:n=" + std::to_string(f.n);
            } else if constexpr (std::is_same_v<T, TwoFock>) {
                return "twofock:n=" + std::to_string(f.n) + ",m=" + std::to_string(f.m) +
                       ",r=" + fmt_num(f.r);
            } else if constexpr (std::is_same_v<T, Coherent>) {
                return "coherent:alpha=" + fmt_num(f.alpha);
            } else if constexpr (std::is_same_v<T, CoherentVacuum>) {
                return "cohvac:alpha=" + fmt_num(f.alpha) + ",eta=" + fmt_num(f.eta);
            } else if constexpr (std::is_same_v<T, NegativeBinomial>) {
                return "negbin:xi=" + fmt_num(f.xi) + ",mu=" + fmt_num(f.mu);
            } else if constexpr (std::is_same_v<T, Binomial>) {
                return "binomial:p=" + fmt_num(f.p) + ",M=" + std::to_string(f.trials);
            } else if constexpr (std::is_same_v<T, OddCoherent>) {
                return "oddcoh:alpha=" + fmt_num(f.alpha);
            } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
                return "sqvac:nbar=" + fmt_num(f.nbar);
            } else if constexpr (std::is_same_v<T, SimonLog>) {
                return "simonlog:z=" + fmt_num(f.z);
            } else if constexpr (std::is_same_v<T, PhaseCoherent>) {
                return "phase:z=" + fmt_num(f.z);
            } else if constexpr (std::is_same_v<T, GammaFamily>) {
                return "gamma:nbar=" + fmt_num(f.nbar) + ",gamma=" + fmt_num(f.gamma);
            } else if constexpr (std::is_same_v<T, LogQ>) {
                return "logq:nbar=" + fmt_num(f.nbar) + ",q=" + fmt_num(f.q);
            } else {
                return "log0:nbar=" + fmt_num(f.nbar);
            }
        },
        spec);
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& body) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InvalidParams("malformed family parameter '" + item + "' (expected key=value)");
        }
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

double need_num(const std::map<std::string, std::string>& kv, const std::string& key,
                const std::string& family) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        throw InvalidParams("family '" + family + "' needs parameter '" + key + "'");
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw InvalidParams("parameter '" + key + "=" + it->second + "' is not a number");
    }
}

std::size_t need_index(const std::map<std::string, std::string>& kv, const std::string& key,
                       const std::string& family) {
    const double v = need_num(kv, key, family);
    if (v < 0.0 || v != std::floor(v)) {
        throw InvalidParams("parameter '" + key + "' must be a nonnegative integer");
    }
    return static_cast<std::size_t>(v);
}

} // namespace

FamilySpec parse_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const auto kv = parse_kv(colon == std::string::npos ? "" : text.substr(colon + 1));

    if (name == "fock") return Fock{need_index(kv, "n", name)};
    if (name == "twofock") {
        return TwoFock{need_index(kv, "n", name), need_index(kv, "m", name),
                       need_num(kv, "r", name)};
    }
    if (name == "coherent") return Coherent{need_num(kv, "alpha", name)};
    if (name == "cohvac") {
        return CoherentVacuum{need_num(kv, "alpha", name), need_num(kv, "eta", name)};
    }
    if (name == "negbin") return NegativeBinomial{need_num(kv, "xi", name), need_num(kv, "mu", name)};
    if (name == "binomial") return Binomial{need_num(kv, "p", name), need_index(kv, "M", name)};
    if (name == "oddcoh") return OddCoherent{need_num(kv, "alpha", name)};
    if (name == "sqvac") return SqueezedVacuum{need_num(kv, "nbar", name)};
    if (name == "simonlog") return SimonLog{need_num(kv, "z", name)};
    if (name == "phase") return PhaseCoherent{need_num(kv, "z", name)};
    if (name == "gamma") return GammaFamily{need_num(kv, "nbar", name), need_num(kv, "gamma", name)};
    if (name == "logq") return LogQ{need_num(kv, "nbar", name), need_num(kv, "q", name)};
    if (name == "log0") return Log0{need_num(kv, "nbar", name)};
    throw InvalidParams("unknown family '" + name + "'");
}

PaperRelations paper_relations(const FamilySpec& spec) {
    return std::visit(
        [](const auto& f) -> PaperRelations {
            using T = std::decay_t<decltype(f)>;
            PaperRelations r;
            if constexpr (std::is_same_v<T, TwoFock>) {
                const auto a = two_fock_analysis(f.n, f.m, f.r);
                r.mean = a.mean;
                r.n_minus = a.n_minus;
                r.mandel_q = a.q;
            } else if constexpr (std::is_same_v<T, CoherentVacuum>) {
                const double a2 = f.alpha * f.alpha;
                r.mean = f.eta * a2;
                r.n_minus = a2;
                r.n_plus = (f.eta * a2 * a2 + 3.0 * f.eta * a2 + 1.0) / (1.0 + f.eta * a2);
            } else if constexpr (std::is_same_v<T, NegativeBinomial>) {
                const double q = f.xi / (1.0 - f.xi);
                r.mandel_q = q;
                r.mean = f.mu * q;
                r.n_minus = *r.mean + q;
                r.n_plus = *r.mean + 1.0 + q +
                           f.xi * (f.mu - 1.0) / (1.0 + f.xi * (f.mu - 1.0));
            } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
                r.mean = f.nbar;
                r.mandel_q = 1.0 + 2.0 * f.nbar;
                r.n_minus = f.nbar + *r.mandel_q;
            } else if constexpr (std::is_same_v<T, SimonLog>) {
                const double z2 = f.z * f.z;
                r.mean = z2 / (1.0 - z2);
            } else if constexpr (std::is_same_v<T, PhaseCoherent>) {
                const double z2 = f.z * f.z;
                r.mean = z2 / (1.0 - z2);
                r.mandel_q = r.mean; // geometric distribution: q = nbar
            } else {
                throw UnsupportedSpec("no closed forms recorded for this family");
            }
            return r;
        },
        spec);
}

bool subtracted_is_coherent_check(double alpha, double eta, const CutoffPolicy& policy) {
    const FockState psi = build(CoherentVacuum{alpha, eta}, policy);
    const FockState sub = subtracted(psi);
    const FockState target = build(Coherent{alpha}, policy);
    return fidelity(sub, target) > 1.0 - 1e-10;
}

bool simonlog_subtract_is_phase_coherent(double z, const CutoffPolicy& policy) {
    if (!(z > 0.0)) {
        throw InvalidParams("the subtraction identity needs 0 < z");
    }
    const FockState psi = build(SimonLog{z}, policy);
    const FockState sub = subtracted(psi);
    const FockState target = build(PhaseCoherent{z}, policy);
    return fidelity(sub, target) > 1.0 - 1e-10;
}

} // namespace fockledger
