// fockledger: build photon-number states, apply ladder / exponential phase
// operators, and run the numerical verification suite.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fockledger/claims.hpp"
#include "fockledger/families.hpp"
#include "fockledger/genfun.hpp"
#include "fockledger/operators.hpp"
#include "fockledger/serialize.hpp"
#include "fockledger/statistics.hpp"

namespace {

constexpr int kExitFailedClaims = 1;
constexpr int kExitInvalidParams = 2;
constexpr int kExitZeroState = 3;

std::size_t max_cutoff_from_env() {
    if (const char* env = std::getenv("FOCKLEDGER_MAX_CUTOFF")) {
        try {
            const long long v = std::stoll(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring unparseable FOCKLEDGER_MAX_CUTOFF='" << env << "'\n";
    }
    return fockledger::default_max_cutoff;
}

void write_output(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << content;
}

int cmd_state(const std::string& spec_text, const std::string& out_path, bool amplitudes,
              double tail_tol) {
    const fockledger::CutoffPolicy policy{tail_tol, max_cutoff_from_env()};
    const auto spec = fockledger::parse_spec(spec_text);
    const fockledger::FockState psi = fockledger::build(spec, policy);
    if (!out_path.empty()) {
        write_output(out_path, amplitudes ? fockledger::to_csv(psi)
                                          : fockledger::to_csv(fockledger::distribution_of(psi)));
    }
    std::cout << fockledger::to_json(fockledger::stats(psi)) << "\n";
    return 0;
}

fockledger::OperatorKind op_from_name(const std::string& name) {
    if (name == "sub") return fockledger::Annihilate{};
    if (name == "add") return fockledger::Create{};
    if (name == "eminus") return fockledger::ExpPhaseDown{};
    if (name == "eplus") return fockledger::ExpPhaseUp{};
    throw fockledger::InvalidParams("unknown operator '" + name +
                                    "' (expected sub, add, eminus or eplus)");
}

int cmd_apply(const std::string& spec_text, const std::string& ops_text,
              const std::string& out_path, double tail_tol) {
    const fockledger::CutoffPolicy policy{tail_tol, max_cutoff_from_env()};
    const auto spec = fockledger::parse_spec(spec_text);
    fockledger::FockState psi = fockledger::build(spec, policy);

    std::vector<std::string> names;
    std::stringstream ss(ops_text);
    std::string item;
    while (std::getline(ss, item, ',')) names.push_back(item);
    if (names.empty()) {
        throw fockledger::InvalidParams("empty operator chain");
    }

    std::string out = "[";
    for (std::size_t i = 0; i < names.size(); ++i) {
        try {
            psi = fockledger::apply_operator(psi, op_from_name(names[i])).state;
        } catch (const fockledger::ZeroState& e) {
            std::cerr << "error: step " << (i + 1) << " (" << names[i]
                      << ") produced the zero vector: " << e.what() << "\n";
            return kExitZeroState;
        }
        if (i) out += ",";
        out += fockledger::to_json(fockledger::stats(psi));
    }
    out += "]\n";
    if (!out_path.empty()) write_output(out_path, out);
    std::cout << out;
    return 0;
}

int cmd_verify(const std::string& filter, std::uint64_t seed, const std::string& format,
               double tail_tol, const std::string& out_path) {
    fockledger::claims::Context ctx;
    ctx.seed = seed;
    ctx.tail_tol = tail_tol;
    ctx.max_cutoff = max_cutoff_from_env();

    const auto results = fockledger::claims::run_claims(ctx, filter);
    if (results.empty()) {
        std::cerr << "error: no claim matches filter '" << filter << "'\n";
        return kExitInvalidParams;
    }

    std::string report;
    if (format == "json") {
        report = fockledger::claims::report_json(results, ctx, filter);
    } else if (format == "csv") {
        report = fockledger::claims::report_csv(results);
    } else if (format == "md") {
        report = fockledger::claims::report_markdown(results);
    } else {
        throw fockledger::InvalidParams("unknown format '" + format + "'");
    }
    if (!out_path.empty()) {
        write_output(out_path, report);
    } else {
        std::cout << report;
    }

    std::vector<std::string> failed;
    for (const auto& r : results) {
        if (!r.passed) failed.push_back(r.claim_id);
    }
    if (!failed.empty()) {
        std::cerr << "failed claims:";
        for (const auto& id : failed) std::cerr << " " << id;
        std::cerr << "\n";
        return kExitFailedClaims;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truncated Fock-space numerics and verification ledger"};
    app.require_subcommand(1);

    std::string spec_text, ops_text, out_path;
    bool amplitudes = false;
    double tail_tol = fockledger::default_tail_tol;

    auto* state = app.add_subcommand("state", "Build a state and report its statistics");
    state->add_option("spec", spec_text, "family spec, e.g. negbin:xi=0.5,mu=2")->required();
    state->add_option("--out", out_path, "write the distribution CSV here");
    state->add_flag("--amplitudes", amplitudes, "dump amplitudes (n,re_c,im_c) instead");
    state->add_option("--tail-tol", tail_tol, "admitted truncation mass");

    auto* apply = app.add_subcommand("apply", "Apply an operator chain, reporting each step");
    apply->add_option("spec", spec_text, "family spec")->required();
    apply->add_option("ops", ops_text, "comma list of sub,add,eminus,eplus")->required();
    apply->add_option("--out", out_path, "write the per-step stats JSON here");
    apply->add_option("--tail-tol", tail_tol, "admitted truncation mass");

    std::string filter, format = "json";
    std::uint64_t seed = 12345;
    auto* verify = app.add_subcommand("verify", "Run the claim suite");
    verify->add_option("--filter", filter, "only claims whose id starts with this prefix");
    verify->add_option("--seed", seed, "seed for randomized draws");
    verify->add_option("--format", format, "json|csv|md")
        ->check(CLI::IsMember({"json", "csv", "md"}));
    verify->add_option("--tail-tol", tail_tol, "admitted truncation mass");
    verify->add_option("--out", out_path, "write the report here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (state->parsed()) return cmd_state(spec_text, out_path, amplitudes, tail_tol);
        if (apply->parsed()) return cmd_apply(spec_text, ops_text, out_path, tail_tol);
        return cmd_verify(filter, seed, format, tail_tol, out_path);
    } catch (const fockledger::InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParams;
    } catch (const fockledger::NoRealRoot& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParams;
    } catch (const fockledger::ZeroState& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitZeroState;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
