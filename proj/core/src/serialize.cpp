#include "fockledger/serialize.hpp"

#include <cstdio>

#include "json.hpp"

namespace fockledger {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json opt_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

} // namespace

std::string to_csv(const PhotonDistribution& dist) {
    std::string out = "n,p_n\n";
    for (std::size_t n = 0; n < dist.probs().size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += g17(dist.probs()[n]);
        out += '\n';
    }
    return out;
}

std::string to_csv(const GenFun& g) {
    std::string out = "n,p_n\n";
    for (std::size_t n = 0; n < g.coeffs().size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += g17(g.coeffs()[n]);
        out += '\n';
    }
    return out;
}

std::string to_csv(const FockState& state) {
    std::string out = "n,re_c,im_c\n";
    for (std::size_t n = 0; n < state.amplitudes().size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += g17(state.amplitudes()[n].real());
        out += ',';
        out += g17(state.amplitudes()[n].imag());
        out += '\n';
    }
    return out;
}

std::string to_json(const StatsReport& r) {
    nlohmann::json j;
    j["mean"] = r.mean;
    j["variance"] = r.variance;
    j["factorial_moments"] = r.factorial_moments;
    j["mandel_q"] = opt_json(r.mandel_q);
    j["g2"] = opt_json(r.g2);
    j["klass"] = std::string(to_string(r.klass));
    return j.dump();
}

std::string to_json(const PredictionReport& r) {
    nlohmann::json j;
    j["n_minus"] = opt_json(r.n_minus);
    j["n_plus"] = r.n_plus;
    j["q_minus"] = opt_json(r.q_minus);
    j["n_tilde_minus"] = opt_json(r.n_tilde_minus);
    j["n_tilde_plus"] = r.n_tilde_plus;
    j["q_tilde"] = opt_json(r.q_tilde);
    return j.dump();
}

} // namespace fockledger
