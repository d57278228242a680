#include "qwalk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qwalk {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

constexpr double kBiasImagTolerance = 1e-12;
constexpr double kCdfTolerance1d = 1e-8;
constexpr double kCdfTolerance2d = 1e-6;
constexpr unsigned kMaxQuadratureDepth = 15;

// q = sin(u)/sqrt 2 maps u in [-pi/2, pi/2] onto the support. Then
// dq / ((1 - q^2) sqrt(1 - 2 q^2)) = sqrt 2 du / (1 + cos^2 u), which is smooth.
double substituted_weight(double u) {
    const double c = std::cos(u);
    return sqrt2 / (1.0 + c * c);
}

double scaled_to_angle(double x) {
    const double edge = 1.0 / sqrt2;
    return std::asin(std::clamp(x, -edge, edge) * sqrt2);
}

template <class F>
double integrate(F&& f, double a, double b, double abs_tol, const char* what) {
    if (b <= a) return 0.0;
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, kMaxQuadratureDepth, 1e-12, &error);
    if (!(error <= abs_tol)) {
        throw QuadratureError(std::string(what) + ": quadrature did not converge, error estimate " +
                                  std::to_string(error),
                              error);
    }
    return value;
}

// Denominator shared by both densities, (1 - x^2) sqrt(1 - 2 x^2).
double singular_factor(double x) { return (1.0 - x * x) * std::sqrt(1.0 - 2.0 * x * x); }

bool inside_support(double x) { return std::abs(x) < 1.0 / sqrt2; }

}  // namespace

double scaled_support_edge() { return 1.0 / sqrt2; }

double coin_bias(const CoinState& coin) {
    const Complex bias = (coin.a + coin.b) * std::conj(coin.a) + (coin.a - coin.b) * std::conj(coin.b);
    if (std::abs(bias.imag()) > kBiasImagTolerance) {
        throw std::domain_error("coin bias has an imaginary part; is the coin state normalized?");
    }
    return bias.real();
}

double konno_density(double x_tilde, const CoinState& coin) {
    require_normalized(coin);
    if (!inside_support(x_tilde)) return 0.0;
    return (1.0 - x_tilde * coin_bias(coin)) / (pi * singular_factor(x_tilde));
}

HalfLineSplit asymptotic_half_line(const CoinState& coin) {
    require_normalized(coin);
    const double b = coin_bias(coin);
    return {(2.0 + b) / 4.0, (2.0 - b) / 4.0};
}

double ps_separable_standard(const CoinState& first, const CoinState& second) {
    require_normalized(first);
    require_normalized(second);
    return (4.0 + coin_bias(first) * coin_bias(second)) / 8.0;
}

double ps_separable(const CoinState& first, const CoinState& second) {
    require_normalized(first);
    require_normalized(second);
    const double s1 = 2.0 * std::norm(to_hadamard_coords(first).plus) - 1.0;
    const double s2 = 2.0 * std::norm(to_hadamard_coords(second).plus) - 1.0;
    const double ps = (2.0 + s1 * s2) / 4.0;
    if (std::abs(ps - ps_separable_standard(first, second)) > 1e-12) {
        throw std::logic_error("ps_separable: Hadamard-basis and standard-basis forms disagree");
    }
    return ps;
}

double ps_entangled(const TwoCoinState& state) {
    require_normalized(state);
    const HadamardCoords2 h = to_hadamard_coords2(state);
    return (1.0 + 2.0 * (std::norm(h.pp) + std::norm(h.mm))) / 4.0;
}

AsymptoticCoefficients density_coefficients(const TwoCoinState& state) {
    require_normalized(state);
    const HadamardCoords2 h = to_hadamard_coords2(state);
    const double pp = std::norm(h.pp);
    const double pm = std::norm(h.pm);
    const double mp = std::norm(h.mp);
    const double mm = std::norm(h.mm);
    return {sqrt2 * (pp + pm - mp - mm), sqrt2 * (pp + mp - pm - mm), 2.0 * (pp + mm - pm - mp)};
}

double joint_density(double x1, double x2, const AsymptoticCoefficients& k) {
    if (!inside_support(x1) || !inside_support(x2)) return 0.0;
    const double bracket = 1.0 - k.c1 * x1 - k.c2 * x2 + k.c12 * x1 * x2;
    return bracket / (pi * pi * singular_factor(x1) * singular_factor(x2));
}

Eigen::Matrix2cd single_propagator(double k) {
    const Complex phase = std::polar(1.0, k);
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 0) = phase;
    d(1, 1) = std::conj(phase);
    return d * hadamard_coin().matrix();
}

Eigen::Matrix4cd plane_propagator(double k1, double k2) {
    const Eigen::Matrix2cd a = single_propagator(k1);
    const Eigen::Matrix2cd b = single_propagator(k2);
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s) out(2 * i + j, 2 * r + s) = a(i, r) * b(j, s);
    return out;
}

double phase_omega1(double k) { return std::asin(std::sin(k) / sqrt2); }

Eigen::Vector2cd band_eigenvector(int band, double k) {
    const double c = std::cos(k);
    const double root = std::sqrt(1.0 + c * c);
    const Complex eik = std::polar(1.0, k);
    const double w1 = phase_omega1(k);
    Eigen::Vector2cd v;
    if (band == 1) {
        v << eik, sqrt2 * std::polar(1.0, w1) - eik;
        return v / std::sqrt(2.0 * (1.0 + c * c - c * root));
    }
    if (band == 2) {
        v << -eik, sqrt2 * std::polar(1.0, -w1) + eik;
        return v / std::sqrt(2.0 * (1.0 + c * c + c * root));
    }
    throw std::invalid_argument("band must be 1 or 2");
}

std::array<PlaneEigenpair, 4> plane_eigensystem(double k1, double k2) {
    const double w1[2] = {phase_omega1(k1), pi - phase_omega1(k1)};
    const double w2[2] = {phase_omega1(k2), pi - phase_omega1(k2)};
    std::array<PlaneEigenpair, 4> out;
    for (int i = 1; i <= 2; ++i) {
        const Eigen::Vector2cd a = band_eigenvector(i, k1);
        for (int j = 1; j <= 2; ++j) {
            const Eigen::Vector2cd b = band_eigenvector(j, k2);
            PlaneEigenpair& e = out[static_cast<std::size_t>(2 * (i - 1) + (j - 1))];
            e.i = i;
            e.j = j;
            e.eigenvalue = std::polar(1.0, w1[i - 1] + w2[j - 1]);
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s) e.vector(2 * r + s) = a(r) * b(s);
        }
    }
    return out;
}

double konno_cdf_by_quadrature(double x, const CoinState& coin) {
    require_normalized(coin);
    const double bias = coin_bias(coin);
    auto f = [bias](double u) { return substituted_weight(u) * (1.0 - bias * std::sin(u) / sqrt2); };
    return integrate(f, -pi / 2.0, scaled_to_angle(x), kCdfTolerance1d, "konno_cdf_by_quadrature") / pi;
}

double cdf_by_quadrature(double x1, double x2, const AsymptoticCoefficients& k) {
    const double upper1 = scaled_to_angle(x1);
    const double upper2 = scaled_to_angle(x2);
    auto inner = [&](double u1) {
        const double q1 = std::sin(u1) / sqrt2;
        auto g = [&](double u2) {
            const double q2 = std::sin(u2) / sqrt2;
            return substituted_weight(u2) * (1.0 - k.c1 * q1 - k.c2 * q2 + k.c12 * q1 * q2);
        };
        return substituted_weight(u1) * integrate(g, -pi / 2.0, upper2, kCdfTolerance2d, "cdf_by_quadrature");
    };
    return integrate(inner, -pi / 2.0, upper1, kCdfTolerance2d, "cdf_by_quadrature") / (pi * pi);
}

}  // namespace qwalk
