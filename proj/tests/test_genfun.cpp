#include "doctest.h"

#include <cmath>

#include "fockledger/claims.hpp"
#include "fockledger/families.hpp"
#include "fockledger/genfun.hpp"
#include "fockledger/operators.hpp"
#include "fockledger/statistics.hpp"

#include "oracles.hpp"

using namespace fockledger;

TEST_CASE("a valid generating function evaluates to 1 at z = 1") {
    const GenFun g(distribution_of(build(NegativeBinomial{0.5, 2.0})));
    CHECK(g.eval(1.0) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("Poisson generating function at z = 0 is p_0") {
    const GenFun g(gamma_family(2.0, 1.0));
    CHECK(g.eval(0.0) == doctest::Approx(0.13533528323661270).epsilon(1e-12));
}

TEST_CASE("negative binomial generating function has its closed form") {
    const GenFun g(distribution_of(build(NegativeBinomial{0.5, 2.0})));
    // ((1-xi)/(1-z xi))^mu at z = 0.5 -> (0.5/0.75)^2 = 4/9
    CHECK(g.eval(0.5) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    const std::complex<double> zc{0.3, 0.2};
    const std::complex<double> closed = std::pow((1.0 - 0.5) / (1.0 - zc * 0.5), 2.0);
    CHECK(std::abs(g.eval(zc) - closed) < 1e-12);
}

TEST_CASE("minus transform maps negbin(xi, mu) onto negbin(xi, mu+1)") {
    const GenFun g(distribution_of(build(NegativeBinomial{0.5, 2.0})));
    const GenFun t = transform(g, TransformKind::minus);
    for (std::size_t n = 0; n + 1 < t.coeffs().size(); ++n) {
        CHECK(t.coeff(n) == doctest::Approx(oracles::negbin_pmf(0.5, 3.0, n)).epsilon(1e-11));
    }
}

TEST_CASE("plus transform shifts a Fock generating function up") {
    std::vector<double> zn(6, 0.0);
    zn[5] = 1.0;
    const GenFun g(std::move(zn));
    const GenFun t = transform(g, TransformKind::plus);
    CHECK(t.coeff(6) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t n = 0; n < 6; ++n) CHECK(t.coeff(n) == 0.0);
}

TEST_CASE("tilde transforms preserve normalization") {
    const GenFun g(distribution_of(build(SimonLog{0.5})));
    CHECK(transform(g, TransformKind::tilde_plus).eval(1.0) ==
          doctest::Approx(1.0).epsilon(1e-11));
    CHECK(transform(g, TransformKind::tilde_minus).eval(1.0) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("transforms reject their singular branches") {
    const GenFun vac(std::vector<double>{1.0});
    CHECK_THROWS_AS(transform(vac, TransformKind::minus), ZeroState);
    CHECK_THROWS_AS(transform(vac, TransformKind::tilde_minus), ZeroState);
}

TEST_CASE("transform wiring equals the operator route for all four kinds") {
    claims::Rng rng(2024);
    for (const FamilySpec& spec : claims::draw_specs(rng, 2)) {
        const FockState psi = build(spec);
        const PhotonDistribution d = distribution_of(psi);
        const GenFun g(d);
        const struct {
            TransformKind kind;
            FockState image;
        } routes[] = {
            {TransformKind::minus, subtracted(psi)},
            {TransformKind::plus, added(psi)},
            {TransformKind::tilde_minus, exp_phase(psi, PhaseDirection::down)},
            {TransformKind::tilde_plus, exp_phase(psi, PhaseDirection::up)},
        };
        for (const auto& r : routes) {
            const GenFun t = transform(g, r.kind, stats(d).mean, d.p(0));
            const PhotonDistribution via_op = distribution_of(r.image);
            const std::size_t top = std::max(t.cutoff(), via_op.cutoff());
            for (std::size_t n = 0; n <= top; ++n) {
                CHECK(std::abs(t.coeff(n) - via_op.p(n)) < 1e-10);
            }
        }
    }
}

TEST_CASE("factorial moments from coefficients match the stats module") {
    const PhotonDistribution d = log0_family(1.2);
    const GenFun g(d);
    const StatsReport s = stats(d);
    for (std::size_t r = 1; r <= 4; ++r) {
        double acc = 0.0;
        for (std::size_t n = 0; n < g.coeffs().size(); ++n) {
            double w = 1.0;
            for (std::size_t j = 0; j < r; ++j) w *= static_cast<double>(n) - static_cast<double>(j);
            acc += w * g.coeff(n);
        }
        CHECK(acc == doctest::Approx(s.factorial_moments[r - 1]).epsilon(1e-12));
    }
}

TEST_CASE("gamma = 1 reproduces the Poisson distribution exactly") {
    const PhotonDistribution d = gamma_family(2.0, 1.0);
    for (std::size_t n = 0; n < d.probs().size(); ++n) {
        CHECK(std::abs(d.p(n) - oracles::poisson_pmf(2.0, n)) < 1e-15);
    }
}

TEST_CASE("gamma family closed-form coefficients and measured ratio") {
    const PhotonDistribution d = gamma_family(1.0, 2.0);
    CHECK(d.p(0) == doctest::Approx(0.56766764161830635).epsilon(1e-13));
    for (std::size_t n : {1u, 2u, 5u}) {
        CHECK(d.p(n) == doctest::Approx(oracles::poisson_pmf(2.0, n) / 2.0).epsilon(1e-12));
    }
    const StatsReport s = stats(d);
    CHECK(s.mean == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(*predictions(d).n_minus / s.mean == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("gamma family domain and boundary") {
    // gamma < 1 exists only up to gamma*nbar = |ln(1-gamma)|
    const double g = 0.5;
    const double nbar_max = gamma_nbar_bound(g);
    CHECK_THROWS_AS(gamma_family(nbar_max * 1.01, g), InvalidParams);
    const PhotonDistribution d = gamma_family(nbar_max, g);
    CHECK(std::abs(d.p(0)) < 1e-12);
    CHECK_THROWS_AS(gamma_family(0.0, 2.0), InvalidParams);
    CHECK_THROWS_AS(gamma_family(1.0, 0.0), InvalidParams);
}

TEST_CASE("gamma -> infinity drains everything into the vacuum") {
    // the residual 1/gamma of mass lives near n = gamma*nbar, far beyond any
    // reachable cutoff; a tolerance above it admits the truncation
    const PhotonDistribution d = gamma_family(1.0, 1e6, CutoffPolicy{1e-5, 4096});
    CHECK(d.p(0) > 1.0 - 1e-5);
    // at default tail_tol the same request must refuse rather than truncate
    CHECK_THROWS_AS(gamma_family(1.0, 1e6, CutoffPolicy{1e-12, 4096}), CutoffOverflow);
}

TEST_CASE("cosh family collapses to Poisson at gamma = 1") {
    const auto res = cosh_family(1.0, 1.0);
    REQUIRE(std::holds_alternative<PhotonDistribution>(res));
    const auto& d = std::get<PhotonDistribution>(res);
    for (std::size_t n = 0; n < d.probs().size(); ++n) {
        CHECK(std::abs(d.p(n) - oracles::poisson_pmf(1.0, n)) < 1e-15);
    }
}

TEST_CASE("cosh family flags p_1 < 0 in the large-a, gamma > 1 regime") {
    const auto res = cosh_family(10.0, 4.0);
    REQUIRE(std::holds_alternative<NegativityReport>(res));
    const auto& neg = std::get<NegativityReport>(res);
    CHECK(neg.index == 1);
    CHECK(neg.value < 0.0);
}

TEST_CASE("cosh family flags p_0 < 0 in the large-a, gamma < 1 regime") {
    const auto res = cosh_family(100.0, 0.25);
    REQUIRE(std::holds_alternative<NegativityReport>(res));
    CHECK(std::get<NegativityReport>(res).index == 0);
}

TEST_CASE("a small-a cosh member is a genuine distribution with ratio gamma") {
    const auto res = cosh_family(0.1, 4.0); // a = 0.2, inside the positive window
    REQUIRE(std::holds_alternative<PhotonDistribution>(res));
    const auto& d = std::get<PhotonDistribution>(res);
    const StatsReport s = stats(d);
    CHECK(s.mean == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(*predictions(d).n_minus / s.mean == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("log-q coefficients match the direct k-sum oracle") {
    const PhotonDistribution d = log_q_family(1.0, 0.5);
    CHECK(d.p(0) == doctest::Approx(0.41949607858339931).epsilon(1e-13));
    CHECK(d.p(1) == doctest::Approx(0.33942443929724267).epsilon(1e-13));
    CHECK(d.p(2) == doctest::Approx(0.14246058482043445).epsilon(1e-13));
    for (std::size_t n = 0; n <= 12; ++n) {
        CHECK(std::abs(d.p(n) - oracles::logq_pmf_ksum(1.0, 0.5, n)) < 1e-13);
    }
}

TEST_CASE("log-q family reproduces its parameters and subtraction behaviour") {
    const PhotonDistribution d = log_q_family(1.0, 0.5);
    const StatsReport s = stats(d);
    CHECK(s.mean == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(*s.mandel_q == doctest::Approx(0.5).epsilon(1e-9));
    const StatsReport sub = stats(subtracted(state_from_distribution(d)));
    CHECK(sub.mean == doctest::Approx(1.5).epsilon(1e-8));
    CHECK(*sub.mandel_q == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("log-q at large q approaches the vacuum-dominated form") {
    const PhotonDistribution d = log_q_family(1.0, 50.0);
    CHECK(std::abs(d.p(0) - 0.98) < 1e-3);
    // p_n ~ (nbar/q) q^n e^{-q}/n! around the bump
    for (std::size_t n : {45u, 50u, 55u}) {
        const double approx = oracles::poisson_pmf(50.0, n) / 50.0;
        CHECK(d.p(n) == doctest::Approx(approx).epsilon(0.05));
    }
    const StatsReport s = stats(d);
    CHECK(s.mean == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(*s.mandel_q == doctest::Approx(50.0).epsilon(1e-8));
}

TEST_CASE("log-q domain bound") {
    const double bound = log_q_nbar_bound(0.5);
    CHECK_THROWS_AS(log_q_family(bound * 1.001, 0.5), InvalidParams);
    CHECK_NOTHROW(log_q_family(bound * 0.999, 0.5));
    CHECK_THROWS_AS(log_q_family(1.0, 0.0), InvalidParams);
}

TEST_CASE("log-q tends to the log0 family as q -> 0") {
    const PhotonDistribution d = log_q_family(1.0, 1e-6);
    const PhotonDistribution ref = log0_family(1.0);
    const std::size_t top = std::min(d.cutoff(), ref.cutoff());
    for (std::size_t n = 0; n <= top; ++n) {
        CHECK(std::abs(d.p(n) - ref.p(n)) < 1e-4);
    }
}

TEST_CASE("log0 family: boundary, frozen values, moments, q = 0") {
    const double em1 = std::exp(1.0) - 1.0;
    CHECK(log0_family(em1).p(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(log0_family(em1 + 0.01), InvalidParams);

    const PhotonDistribution d = log0_family(1.0);
    CHECK(d.p(0) == doctest::Approx(0.30685281944005469).epsilon(1e-13));
    CHECK(d.p(1) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(d.p(2) == doctest::Approx(0.125).epsilon(1e-13));

    const StatsReport s = stats(d);
    CHECK(std::abs(*s.mandel_q) < 1e-9);
    double fact = 1.0, power = 1.0;
    for (std::size_t r = 1; r <= 4; ++r) {
        power *= 1.0;
        CHECK(s.factorial_moments[r - 1] == doctest::Approx(fact * power).epsilon(1e-8));
        fact *= static_cast<double>(r);
    }
}

TEST_CASE("balazs moments: exact relation, limits, and domain") {
    // A -> 0 limit reproduces (r-1)! nbar^r
    CHECK(balazs_moments(1.0, 1e-8, 3) == doctest::Approx(2.0).epsilon(1e-6));
    // first moment is nbar for every A
    for (double A : {0.0, 0.3, 0.9}) {
        CHECK(balazs_moments(1.5, A, 1) == doctest::Approx(1.5).epsilon(1e-14));
    }
    // n^(2) = nbar^2 (1-A)
    CHECK(balazs_moments(1.0, 0.5, 2) == doctest::Approx(0.5).epsilon(1e-14));
    // A = 1 collapses every higher moment
    CHECK(balazs_moments(2.0, 1.0, 1) == doctest::Approx(2.0));
    CHECK(balazs_moments(2.0, 1.0, 2) == 0.0);
    CHECK_THROWS_AS(balazs_moments(1.0, -0.1, 2), InvalidParams);
    CHECK_THROWS_AS(balazs_moments(1.0, 0.1, 0), InvalidParams);
}

TEST_CASE("candidate generating functions can be flagged without failing") {
    // a mixture with one rounding-level dip must clamp cleanly
    const GenFun ok(std::vector<double>{0.5, -1e-13, 0.5});
    CHECK(!ok.first_negative().has_value());
    CHECK_NOTHROW(ok.to_distribution());
    // a genuinely negative coefficient set stays representable but flagged
    const GenFun bad(std::vector<double>{1.3, -0.6, 0.3});
    REQUIRE(bad.first_negative().has_value());
    CHECK(*bad.first_negative() == 1);
    CHECK_THROWS_AS(bad.to_distribution(), InvalidDistribution);
}

TEST_CASE("genfun coefficients equal the closed-form probabilities per family") {
    const PhotonDistribution logq = log_q_family(0.8, 1.5);
    for (std::size_t n = 0; n <= 10; ++n) {
        CHECK(std::abs(logq.p(n) - oracles::logq_pmf_ksum(0.8, 1.5, n)) < 1e-12);
    }
    const PhotonDistribution l0 = log0_family(0.9);
    const double x = 0.9 / 1.9;
    for (std::size_t n = 1; n <= 10; ++n) {
        CHECK(std::abs(l0.p(n) -
                       std::pow(x, static_cast<double>(n)) / static_cast<double>(n)) < 1e-12);
    }
}
