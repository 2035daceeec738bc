#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fockledger/cutoff.hpp"
#include "fockledger/families.hpp"

namespace fockledger::claims {

/// Everything a claim may depend on. Randomized claims derive their stream
/// from (seed, claim id), so a filtered run reproduces the same draws.
struct Context {
    std::uint64_t seed = 12345;
    double tail_tol = default_tail_tol;
    std::size_t max_cutoff = default_max_cutoff;

    CutoffPolicy policy() const { return {tail_tol, max_cutoff}; }
};

struct ClaimResult {
    std::string claim_id;
    std::string paper_anchor;
    int criterion = 0;
    std::vector<double> measured;
    std::vector<double> expected;
    double tolerance = 0.0;
    bool passed = false; // |measured - expected| <= tolerance elementwise
    std::int64_t runtime_ms = 0;
    std::string detail;
};

/// Deterministic splitmix64 stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform(double lo, double hi);
    std::size_t index(std::size_t lo, std::size_t hi); // inclusive bounds

private:
    std::uint64_t state_;
};

/// One randomized parameter set per family kind, inside each family's
/// admissible (and numerically tame) domain.
std::vector<FamilySpec> draw_specs(Rng& rng, std::size_t per_family);

/// Ids of all registered claims, sorted.
std::vector<std::string> claim_ids();

/// Runs every claim whose id starts with `filter` (all when empty),
/// returning results sorted by claim id. A claim that throws becomes a
/// failed result carrying the exception text.
std::vector<ClaimResult> run_claims(const Context& ctx, std::string_view filter = {});

std::string report_json(const std::vector<ClaimResult>& results, const Context& ctx,
                        std::string_view filter = {});
std::string report_csv(const std::vector<ClaimResult>& results);
std::string report_markdown(const std::vector<ClaimResult>& results);

} // namespace fockledger::claims
