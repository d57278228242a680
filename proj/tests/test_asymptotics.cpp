#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qwalk/asymptotics.hpp"
#include "qwalk/experiments.hpp"

namespace qwalk {
namespace {

constexpr double kTight = 1e-12;
const double kEdge = 1.0 / std::sqrt(2.0);

std::pair<CoinState, CoinState> chi() { return hadamard_eigenbasis(); }

TEST(CoinBias, KnownStates) {
    EXPECT_NEAR(coin_bias(coin_left()), 1.0, kTight);
    EXPECT_NEAR(coin_bias(coin_right()), -1.0, kTight);
    EXPECT_NEAR(coin_bias(coin_symmetric()), 0.0, kTight);
    EXPECT_NEAR(coin_bias(chi().first), std::sqrt(2.0), kTight);
    EXPECT_NEAR(coin_bias(chi().second), -std::sqrt(2.0), kTight);
}

TEST(HalfLineLimit, KnownStates) {
    EXPECT_NEAR(asymptotic_half_line(coin_left()).minus, 0.75, kTight);
    EXPECT_NEAR(asymptotic_half_line(coin_symmetric()).minus, 0.5, kTight);
    const HalfLineSplit c = asymptotic_half_line(chi().first);
    EXPECT_NEAR(c.minus, (2.0 + std::sqrt(2.0)) / 4.0, kTight);
    EXPECT_NEAR(c.minus, 0.85355, 1e-5);
    EXPECT_NEAR(c.minus + c.plus, 1.0, kTight);
}

TEST(KonnoDensity, ValueAtOriginAndOutsideSupport) {
    std::mt19937_64 rng{1};
    for (int i = 0; i < 10; ++i) {
        const CoinState s = random_coin_state(rng);
        EXPECT_NEAR(konno_density(0.0, s), 1.0 / std::numbers::pi, kTight);
        EXPECT_EQ(konno_density(0.75, s), 0.0);
        EXPECT_EQ(konno_density(-1.0, s), 0.0);
    }
}

TEST(KonnoDensity, MirrorsUnderBiasFlip) {
    const auto [p, m] = chi();
    for (double x : {-0.7, -0.3, 0.0, 0.2, 0.65}) EXPECT_NEAR(konno_density(x, p), konno_density(-x, m), kTight);
    for (double x : {-0.5, 0.1, 0.4}) EXPECT_NEAR(konno_density(x, coin_symmetric()), konno_density(-x, coin_symmetric()), kTight);
}

TEST(KonnoDensity, MassAndHalfLineByOracle) {
    std::mt19937_64 rng{2};
    std::vector<CoinState> states = {coin_left(), coin_right(), coin_symmetric(), chi().first};
    for (int i = 0; i < 6; ++i) states.push_back(random_coin_state(rng));
    for (const auto& s : states) {
        auto f = [&](double x) { return konno_density(x, s); };
        EXPECT_NEAR(oracle::integrate_on_support(f, -kEdge, kEdge), 1.0, 1e-8);
        EXPECT_NEAR(oracle::integrate_on_support(f, -kEdge, 0.0), asymptotic_half_line(s).minus, 1e-8);
    }
}

TEST(KonnoDensity, QuadratureCdfAgreesWithOracle) {
    const CoinState s = coin_left();
    auto f = [&](double x) { return konno_density(x, s); };
    for (double x : {-0.6, -0.2, 0.0, 0.3, 0.7}) {
        EXPECT_NEAR(konno_cdf_by_quadrature(x, s), oracle::integrate_on_support(f, -kEdge, x), 1e-8);
    }
    EXPECT_NEAR(konno_cdf_by_quadrature(5.0, s), 1.0, 1e-8);
    EXPECT_NEAR(konno_cdf_by_quadrature(-5.0, s), 0.0, 1e-12);
}

TEST(KonnoDensity, CdfMatchesHighPrecisionValues) {
    // 30-digit reference quadrature of the |L> density.
    const std::array<std::pair<double, double>, 4> ref{{{-0.6, 0.384973271918691764586},
                                                        {-0.2, 0.677932000632305207235},
                                                        {0.3, 0.836065591944709884671},
                                                        {0.7, 0.981265073980922405874}}};
    for (const auto& [x, f] : ref) EXPECT_NEAR(konno_cdf_by_quadrature(x, coin_left()), f, 1e-12) << x;
}

TEST(SeparableLimit, KnownStates) {
    const auto [p, m] = chi();
    EXPECT_NEAR(ps_separable(coin_left(), coin_right()), 3.0 / 8.0, kTight);
    EXPECT_NEAR(ps_separable(coin_left(), coin_left()), 5.0 / 8.0, kTight);
    EXPECT_NEAR(ps_separable(coin_symmetric(), coin_symmetric()), 0.5, kTight);
    EXPECT_NEAR(ps_separable(p, p), 0.75, kTight);
    EXPECT_NEAR(ps_separable(p, m), 0.25, kTight);
}

TEST(SeparableLimit, AgreesWithGeneralFormAndStandardBasis) {
    std::mt19937_64 rng{3};
    for (int i = 0; i < 200; ++i) {
        const CoinState a = random_coin_state(rng);
        const CoinState b = random_coin_state(rng);
        EXPECT_NEAR(ps_separable(a, b), ps_entangled(tensor(a, b)), kTight);
        EXPECT_NEAR(ps_separable(a, b), ps_separable_standard(a, b), kTight);
    }
}

TEST(EntangledLimit, BellStates) {
    EXPECT_NEAR(ps_entangled(bell_state(BellKind::psi_plus)), 0.5, kTight);
    EXPECT_NEAR(ps_entangled(bell_state(BellKind::psi_minus)), 0.25, kTight);
    EXPECT_NEAR(ps_entangled(bell_state(BellKind::phi_plus)), 0.75, kTight);
    EXPECT_NEAR(ps_entangled(bell_state(BellKind::phi_minus)), 0.5, kTight);
}

TEST(EntangledLimit, BoundedOnRandomStates) {
    std::mt19937_64 rng{4};
    for (int i = 0; i < 1000; ++i) {
        const double v = ps_entangled(random_two_coin_state(rng));
        EXPECT_GE(v, 0.25);
        EXPECT_LE(v, 0.75);
    }
}

TEST(Coefficients, ProductStatesFactorize) {
    std::mt19937_64 rng{5};
    for (int i = 0; i < 50; ++i) {
        const CoinState a = random_coin_state(rng);
        const CoinState b = random_coin_state(rng);
        const AsymptoticCoefficients c = density_coefficients(tensor(a, b));
        EXPECT_NEAR(c.c12, c.c1 * c.c2, 1e-12);
        for (double x1 : {-0.5, 0.1, 0.6})
            for (double x2 : {-0.3, 0.0, 0.45})
                EXPECT_NEAR(joint_density(x1, x2, c), konno_density(x1, a) * konno_density(x2, b), 1e-12);
    }
}

TEST(Coefficients, BellStates) {
    const AsymptoticCoefficients psim = density_coefficients(bell_state(BellKind::psi_minus));
    EXPECT_NEAR(psim.c1, 0.0, kTight);
    EXPECT_NEAR(psim.c2, 0.0, kTight);
    EXPECT_NEAR(psim.c12, -2.0, kTight);
    const AsymptoticCoefficients phip = density_coefficients(bell_state(BellKind::phi_plus));
    EXPECT_NEAR(phip.c12, 2.0, kTight);
}

TEST(JointDensity, OriginAndSupport) {
    std::mt19937_64 rng{6};
    for (int i = 0; i < 10; ++i) {
        const auto c = density_coefficients(random_two_coin_state(rng));
        EXPECT_NEAR(joint_density(0.0, 0.0, c), 1.0 / (std::numbers::pi * std::numbers::pi), kTight);
        EXPECT_EQ(joint_density(0.8, 0.0, c), 0.0);
        EXPECT_EQ(joint_density(0.0, -0.71, c), 0.0);
    }
}

TEST(JointDensity, NonNegativeOnGrid) {
    std::mt19937_64 rng{7};
    for (int i = 0; i < 50; ++i) {
        const auto c = density_coefficients(random_two_coin_state(rng));
        for (int a = -20; a <= 20; ++a)
            for (int b = -20; b <= 20; ++b) EXPECT_GE(joint_density(a * kEdge / 21.0, b * kEdge / 21.0, c), 0.0);
    }
}

TEST(JointDensity, QuadrantMassesMatchClosedForm) {
    std::mt19937_64 rng{8};
    for (int i = 0; i < 8; ++i) {
        const TwoCoinState s = random_two_coin_state(rng);
        const auto c = density_coefficients(s);
        auto f = [&](double x1, double x2) { return joint_density(x1, x2, c); };
        const double same = oracle::integrate_on_support_2d(f, -kEdge, 0.0, -kEdge, 0.0) +
                            oracle::integrate_on_support_2d(f, 0.0, kEdge, 0.0, kEdge);
        EXPECT_NEAR(same, ps_entangled(s), 1e-6);
        EXPECT_NEAR(oracle::integrate_on_support_2d(f, -kEdge, kEdge, -kEdge, kEdge), 1.0, 1e-6);
    }
}

TEST(JointDensity, QuadratureCdfAgreesWithOracle) {
    const auto c = density_coefficients(bell_state(BellKind::phi_minus));
    auto f = [&](double x1, double x2) { return joint_density(x1, x2, c); };
    for (auto [x1, x2] : {std::pair{0.0, 0.0}, {-0.3, 0.4}, {0.5, -0.1}}) {
        EXPECT_NEAR(cdf_by_quadrature(x1, x2, c), oracle::integrate_on_support_2d(f, -kEdge, x1, -kEdge, x2), 1e-6);
    }
    EXPECT_NEAR(cdf_by_quadrature(1.0, 1.0, c), 1.0, 1e-6);
    EXPECT_NEAR(cdf_by_quadrature(-1.0, 0.3, c), 0.0, 1e-12);
}

TEST(PlaneEigensystem, ResidualsOnGrid) {
    const double pi = std::numbers::pi;
    for (int a = 0; a < 32; ++a) {
        for (int b = 0; b < 32; ++b) {
            const double k1 = -pi + 2.0 * pi * a / 32.0;
            const double k2 = -pi + 2.0 * pi * b / 32.0;
            const Eigen::Matrix4cd u = plane_propagator(k1, k2);
            for (const auto& e : plane_eigensystem(k1, k2)) {
                EXPECT_LT((u * e.vector - e.eigenvalue * e.vector).norm(), 1e-10);
                EXPECT_NEAR(e.vector.norm(), 1.0, 1e-12);
                EXPECT_NEAR(std::abs(e.eigenvalue), 1.0, 1e-12);
            }
        }
    }
}

TEST(PlaneEigensystem, OrderAndBandStructure) {
    const double k1 = 0.7;
    const double k2 = -1.9;
    const auto es = plane_eigensystem(k1, k2);
    const std::array<std::pair<int, int>, 4> order{{{1, 1}, {1, 2}, {2, 1}, {2, 2}}};
    for (std::size_t n = 0; n < 4; ++n) {
        EXPECT_EQ(es[n].i, order[n].first);
        EXPECT_EQ(es[n].j, order[n].second);
    }
    const Eigen::Vector2cd v = band_eigenvector(1, k1);
    const Complex lambda = (single_propagator(k1) * v)(0) / v(0);
    EXPECT_NEAR(std::arg(lambda), phase_omega1(k1), 1e-12);
    EXPECT_THROW(band_eigenvector(3, k1), std::invalid_argument);
}

TEST(Convergence, SimulatedTailMatchesClosedForm) {
    std::mt19937_64 rng{9};
    std::vector<TwoCoinState> states = {bell_state(BellKind::psi_minus), tensor(coin_left(), coin_right())};
    for (int i = 0; i < 3; ++i) states.push_back(random_two_coin_state(rng));
    for (const auto& s : states) {
        const auto series = ps_timeseries(s, 500);
        EXPECT_NEAR(tail_average(series, TailWindow{400, 500, true}), ps_entangled(s), 0.01);
    }
}

}  // namespace
}  // namespace qwalk
