// coin.hpp
// Coin-space states and operators for the walk on the line.
//
// Basis order is (|L>, |R>) everywhere. |L> moves the walker to m - 1 and
// |R> to m + 1 during the shift stage.

#pragma once

#include <complex>
#include <utility>

#include <Eigen/Core>

namespace qwalk {

using Complex = std::complex<double>;

/// Tolerance used for normalization and unitarity checks of exact inputs.
inline constexpr double kNormTolerance = 1e-12;

/// a|L> + b|R>.
struct CoinState {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};

    double norm_squared() const { return std::norm(a) + std::norm(b); }
    bool is_normalized(double tol = kNormTolerance) const;
};

/// Throws std::invalid_argument if the state is not normalized within `tol`.
void require_normalized(const CoinState& state, double tol = kNormTolerance);

CoinState coin_left();
CoinState coin_right();
/// (|L> + i|R>)/sqrt(2); its walk has a mirror-symmetric distribution.
CoinState coin_symmetric();

/// A 2x2 unitary acting on the coin space.
class CoinOperator {
public:
    /// Throws std::invalid_argument unless `m` is unitary within `tol`.
    explicit CoinOperator(const Eigen::Matrix2cd& m, double tol = kNormTolerance);

    const Eigen::Matrix2cd& matrix() const { return m_; }
    CoinState apply(const CoinState& s) const;

    /// True when this is the Hadamard coin. The closed-form asymptotics
    /// only hold for this coin.
    bool is_hadamard(double tol = kNormTolerance) const;

private:
    Eigen::Matrix2cd m_;
};

/// (1/sqrt 2) [[1, 1], [1, -1]].
CoinOperator hadamard_coin();

/// Eigenvectors |chi+>, |chi-> of the Hadamard coin (eigenvalues +1, -1).
/// A walk started in |chi+> is maximally biased to the left.
std::pair<CoinState, CoinState> hadamard_eigenbasis();

/// Coordinates of a coin state in the Hadamard eigenbasis.
struct HadamardCoords {
    Complex plus;
    Complex minus;
};

HadamardCoords to_hadamard_coords(const CoinState& state);
CoinState from_hadamard_coords(const HadamardCoords& h);

}  // namespace qwalk
