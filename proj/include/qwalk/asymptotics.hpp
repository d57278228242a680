// asymptotics.hpp
// Closed-form long-time limits of the Hadamard walk with one and two
// particles, and the weak-limit density of the two-particle walk.
//
// Densities are expressed in the scaled position x~ = x / t, so each one
// integrates to 1 over its support |x~| < 1/sqrt(2). Everything here assumes
// the Hadamard coin.

#pragma once

#include <array>
#include <stdexcept>
#include <utility>

#include <Eigen/Core>

#include "qwalk/coin.hpp"
#include "qwalk/pair_walk.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// Edge of the scaled support, 1/sqrt(2).
double scaled_support_edge();

/// Coefficients of the bilinear bracket 1 - c1 x1 - c2 x2 + c12 x1 x2 in the
/// two-particle density.
struct AsymptoticCoefficients {
    double c1 = 0.0;
    double c2 = 0.0;
    double c12 = 0.0;
};

/// (a+b) conj(a) + (a-b) conj(b), the left/right bias of a coin state. Real
/// for normalized states; throws std::domain_error if the imaginary part
/// exceeds 1e-12.
double coin_bias(const CoinState& coin);

/// Scaled single-particle density; 0 outside the support.
double konno_density(double x_tilde, const CoinState& coin);

/// Limits of (P-, P+): ((2 + B)/4, (2 - B)/4) with B = coin_bias.
HalfLineSplit asymptotic_half_line(const CoinState& coin);

/// Limit of P_s for a product coin state, evaluated in the Hadamard basis
/// and cross-checked against the standard-basis form.
double ps_separable(const CoinState& first, const CoinState& second);
/// Standard-basis form (4 + B1 B2) / 8.
double ps_separable_standard(const CoinState& first, const CoinState& second);

/// Limit of P_s for any two-coin state: (1 + 2(|h++|^2 + |h--|^2)) / 4.
double ps_entangled(const TwoCoinState& state);

AsymptoticCoefficients density_coefficients(const TwoCoinState& state);

/// Scaled two-particle density; 0 unless both |x~i| < 1/sqrt(2).
double joint_density(double x1, double x2, const AsymptoticCoefficients& coeffs);

/// Fourier-space single-particle propagator diag(e^{ik}, e^{-ik}) C_H.
Eigen::Matrix2cd single_propagator(double k);
/// Tensor product of two single propagators.
Eigen::Matrix4cd plane_propagator(double k1, double k2);

/// omega_1(k) = arcsin(sin k / sqrt 2), principal branch.
double phase_omega1(double k);

struct PlaneEigenpair {
    int i = 1;  // band of particle 1 (1 or 2)
    int j = 1;  // band of particle 2
    Complex eigenvalue;
    Eigen::Vector4cd vector;
};

/// The four eigenpairs of plane_propagator(k1, k2), ordered (11, 12, 21, 22).
std::array<PlaneEigenpair, 4> plane_eigensystem(double k1, double k2);

/// Eigenvector of single_propagator(k) for band 1 or 2, unit norm.
Eigen::Vector2cd band_eigenvector(int band, double k);

/// Thrown when adaptive quadrature misses its tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double error_estimate)
        : std::runtime_error(what), error_estimate_(error_estimate) {}
    double error_estimate() const { return error_estimate_; }

private:
    double error_estimate_;
};

/// F(x1, x2), the mass of the two-particle density below (x1, x2), by nested
/// adaptive Gauss-Kronrod quadrature in the variable q = sin(u)/sqrt 2,
/// which removes the endpoint singularity. Arguments are clamped to the
/// support. Absolute tolerance 1e-8 per dimension.
double cdf_by_quadrature(double x1, double x2, const AsymptoticCoefficients& coeffs);

/// Mass of the single-particle density on [-1/sqrt 2, x], same scheme.
double konno_cdf_by_quadrature(double x, const CoinState& coin);

}  // namespace qwalk
