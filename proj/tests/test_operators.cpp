#include "doctest.h"

#include <cmath>

#include "fockledger/claims.hpp"
#include "fockledger/families.hpp"
#include "fockledger/operators.hpp"

#include "oracles.hpp"

using namespace fockledger;

TEST_CASE("a lowers Fock states") {
    const FockState out = subtracted(build(Fock{4}));
    CHECK(out.cutoff() == 3);
    CHECK(std::norm(out.amp(3)) == doctest::Approx(1.0));
}

TEST_CASE("a on the vacuum is not a state") {
    CHECK_THROWS_AS(subtracted(build(Fock{0})), ZeroState);
}

TEST_CASE("coherent states are eigenstates of a") {
    const FockState psi = build(Coherent{2.0});
    const FockState sub = subtracted(psi);
    CHECK(fidelity(sub, psi) > 1.0 - 1e-10);
    CHECK(stats(sub).mean == doctest::Approx(stats(psi).mean).epsilon(1e-10));
}

TEST_CASE("subtracting the vacuum+coherent superposition leaves |alpha>") {
    const FockState psi = build(CoherentVacuum{3.0, 0.1});
    CHECK(stats(psi).mean == doctest::Approx(0.9).epsilon(1e-10));
    const FockState sub = subtracted(psi);
    CHECK(stats(sub).mean == doctest::Approx(9.0).epsilon(1e-9));
    CHECK(fidelity(sub, build(Coherent{3.0})) > 1.0 - 1e-10);
}

TEST_CASE("a^dag raises Fock states") {
    const FockState out = added(build(Fock{2}));
    CHECK(out.cutoff() == 3);
    CHECK(std::norm(out.amp(3)) == doctest::Approx(1.0));
}

TEST_CASE("adding to the vacuum gives |1> with one quantum") {
    const FockState out = added(build(Fock{0}));
    CHECK(std::norm(out.amp(1)) == doctest::Approx(1.0));
    CHECK(stats(out).mean == doctest::Approx(1.0));
}

TEST_CASE("photon-added coherent state, alpha = 2: mean 5.8") {
    // Poisson variance = mean: 4 + 1 + 4/5
    const FockState out = added(build(Coherent{2.0}));
    CHECK(stats(out).mean == doctest::Approx(5.8).epsilon(1e-10));
}

TEST_CASE("E+ raises any Fock state and adds exactly one quantum") {
    const FockState out = exp_phase(build(Fock{5}), PhaseDirection::up);
    CHECK(std::norm(out.amp(6)) == doctest::Approx(1.0));
    const FockState psi = build(NegativeBinomial{0.5, 0.7});
    CHECK(stats(exp_phase(psi, PhaseDirection::up)).mean ==
          doctest::Approx(stats(psi).mean + 1.0).epsilon(1e-12));
}

TEST_CASE("phase-coherent states are E- eigenstates") {
    const FockState psi = build(PhaseCoherent{0.6});
    CHECK(stats(psi).mean == doctest::Approx(0.5625).epsilon(1e-12));
    const FockState out = exp_phase(psi, PhaseDirection::down);
    CHECK(fidelity(out, psi) > 1.0 - 1e-10);
    CHECK(stats(out).mean == doctest::Approx(0.5625).epsilon(1e-10));
}

TEST_CASE("E- on a weak coherent state halves the mean") {
    const FockState psi = build(Coherent{0.1});
    const double nbar = stats(psi).mean;
    const double ratio = stats(exp_phase(psi, PhaseDirection::down)).mean / nbar;
    CHECK(std::abs(ratio - 0.5) < 0.01);
}

TEST_CASE("E- rejects the vacuum and near-vacuum noise") {
    CHECK_THROWS_AS(exp_phase(build(Fock{0}), PhaseDirection::down), ZeroState);
    const FockState near_vac({std::sqrt(1.0 - 5e-15), std::sqrt(5e-15)});
    CHECK_THROWS_AS(exp_phase(near_vac, PhaseDirection::down), ZeroState);
}

TEST_CASE("weighted annihilation with unit weight is exactly subtraction") {
    const FockState psi = build(NegativeBinomial{0.5, 2.0});
    const FockState a = subtracted(psi);
    const FockState b = weighted_annihilate(psi, [](std::size_t) { return Amplitude{1.0}; });
    REQUIRE(a.cutoff() == b.cutoff());
    for (std::size_t n = 0; n <= a.cutoff(); ++n) {
        CHECK(std::abs(a.amp(n) - b.amp(n)) < 1e-15);
    }
}

TEST_CASE("weighted annihilation with 1/sqrt(n+1) is exactly E-") {
    const FockState psi = build(SimonLog{0.4});
    const FockState a = exp_phase(psi, PhaseDirection::down);
    const FockState b = weighted_annihilate(psi, [](std::size_t n) {
        return Amplitude{1.0 / std::sqrt(static_cast<double>(n) + 1.0)};
    });
    REQUIRE(a.cutoff() == b.cutoff());
    for (std::size_t n = 0; n <= a.cutoff(); ++n) {
        CHECK(std::abs(a.amp(n) - b.amp(n)) < 1e-15);
    }
}

TEST_CASE("any f(n)a collapses the two-Fock state with m = 0") {
    const FockState psi = build(TwoFock{6, 0, 0.4});
    const FockState target = build(Fock{5});
    const FockState out = weighted_annihilate(
        psi, [](std::size_t n) { return Amplitude{std::cos(static_cast<double>(n)), 0.4}; });
    CHECK(fidelity(out, target) > 1.0 - 1e-12);
}

TEST_CASE("weighted annihilation can vanish") {
    const FockState psi = build(Fock{3});
    CHECK_THROWS_AS(weighted_annihilate(psi, [](std::size_t n) {
                        return Amplitude{n == 2 ? 0.0 : 1.0};
                    }),
                    ZeroState);
}

TEST_CASE("iterated subtraction of the negative binomial state") {
    const FockState psi = build(NegativeBinomial{0.5, 2.0});
    const auto steps = iterate(psi, Annihilate{}, 3);
    REQUIRE(steps.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(steps[k].stats.mean ==
              doctest::Approx(3.0 + static_cast<double>(k)).epsilon(1e-9));
        CHECK(*steps[k].stats.mandel_q == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("iterating a down |5> ends at the vacuum, then fails") {
    const FockState psi = build(Fock{5});
    const auto steps = iterate(psi, Annihilate{}, 5);
    CHECK(std::norm(steps.back().state.amp(0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(iterate(psi, Annihilate{}, 6), ZeroState);
}

TEST_CASE("iterating E+ up from the vacuum counts 1, 2, 3") {
    const auto steps = iterate(build(Fock{0}), ExpPhaseUp{}, 3);
    REQUIRE(steps.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(steps[k].stats.mean == doctest::Approx(static_cast<double>(k) + 1.0));
    }
    CHECK(std::norm(steps.back().state.amp(3)) == doctest::Approx(1.0));
}

TEST_CASE("iterate validates k") {
    CHECK_THROWS_AS(iterate(build(Fock{1}), Annihilate{}, 0), InvalidParams);
}

TEST_CASE("pre-normalization norms are the defining denominators") {
    const FockState psi = build(NegativeBinomial{0.4, 2.0});
    const double nbar = stats(psi).mean;
    const double p0 = std::norm(psi.amp(0));
    CHECK(apply_operator(psi, Annihilate{}).prenorm_sq == doctest::Approx(nbar).epsilon(1e-12));
    CHECK(apply_operator(psi, Create{}).prenorm_sq ==
          doctest::Approx(1.0 + nbar).epsilon(1e-12));
    CHECK(apply_operator(psi, ExpPhaseDown{}).prenorm_sq ==
          doctest::Approx(1.0 - p0).epsilon(1e-12));
    CHECK(apply_operator(psi, ExpPhaseUp{}).prenorm_sq == 1.0);
}

TEST_CASE("E- E+ is the identity; E+ E- removes the vacuum component") {
    claims::Rng rng(424242);
    for (const FamilySpec& spec : claims::draw_specs(rng, 3)) {
        const FockState psi = build(spec);
        const FockState up_down = exp_phase(exp_phase(psi, PhaseDirection::up),
                                            PhaseDirection::down);
        for (std::size_t n = 0; n <= psi.cutoff(); ++n) {
            CHECK(std::abs(up_down.amp(n) - psi.amp(n)) < 1e-12);
        }

        const double p0 = std::norm(psi.amp(0));
        if (p0 > 1.0 - 1e-6) continue;
        const FockState down_up = exp_phase(exp_phase(psi, PhaseDirection::down),
                                            PhaseDirection::up);
        const double scale = 1.0 / std::sqrt(1.0 - p0);
        CHECK(std::norm(down_up.amp(0)) == 0.0);
        for (std::size_t n = 1; n <= psi.cutoff(); ++n) {
            CHECK(std::abs(down_up.amp(n) - psi.amp(n) * scale) < 1e-12);
        }
    }
}

TEST_CASE("mean shifts under each operator match their closed forms") {
    claims::Rng rng(77);
    for (const FamilySpec& spec : claims::draw_specs(rng, 5)) {
        const FockState psi = build(spec);
        const StatsReport s = stats(psi);
        CHECK(std::abs(stats(subtracted(psi)).mean - s.mean - *s.mandel_q) < 1e-10);
        CHECK(std::abs(stats(added(psi)).mean -
                       (s.mean + 1.0 + s.variance / (1.0 + s.mean))) < 1e-10);
        CHECK(std::abs(stats(exp_phase(psi, PhaseDirection::up)).mean - (s.mean + 1.0)) <
              1e-12);
        const double p0 = std::norm(psi.amp(0));
        if (p0 < 1.0 - 1e-6) {
            CHECK(std::abs(stats(exp_phase(psi, PhaseDirection::down)).mean -
                           (s.mean / (1.0 - p0) - 1.0)) < 1e-10);
        }
    }
}
