#include "qwalk/coin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

// cos and sin of the rotation taking (|L>, |R>) to (|chi+>, |chi->).
const double kChiCos = std::sqrt(2.0 + std::sqrt(2.0)) / 2.0;
const double kChiSin = std::sqrt(2.0 - std::sqrt(2.0)) / 2.0;

}  // namespace

bool CoinState::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

void require_normalized(const CoinState& state, double tol) {
    if (!state.is_normalized(tol)) {
        throw std::invalid_argument("coin state is not normalized: |a|^2+|b|^2 = " +
                                    std::to_string(state.norm_squared()));
    }
}

CoinState coin_left() { return {Complex{1.0, 0.0}, Complex{0.0, 0.0}}; }
CoinState coin_right() { return {Complex{0.0, 0.0}, Complex{1.0, 0.0}}; }

CoinState coin_symmetric() {
    const double r = 1.0 / std::sqrt(2.0);
    return {Complex{r, 0.0}, Complex{0.0, r}};
}

CoinOperator::CoinOperator(const Eigen::Matrix2cd& m, double tol) : m_(m) {
    const Eigen::Matrix2cd defect = m_.adjoint() * m_ - Eigen::Matrix2cd::Identity();
    if (defect.cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument("coin operator is not unitary");
    }
}

CoinState CoinOperator::apply(const CoinState& s) const {
    return {m_(0, 0) * s.a + m_(0, 1) * s.b, m_(1, 0) * s.a + m_(1, 1) * s.b};
}

bool CoinOperator::is_hadamard(double tol) const {
    return (m_ - hadamard_coin().matrix()).cwiseAbs().maxCoeff() <= tol;
}

CoinOperator hadamard_coin() {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd h;
    h << r, r, r, -r;
    return CoinOperator{h};
}

std::pair<CoinState, CoinState> hadamard_eigenbasis() {
    return {CoinState{kChiCos, kChiSin}, CoinState{kChiSin, -kChiCos}};
}

HadamardCoords to_hadamard_coords(const CoinState& s) {
    // The eigenvectors are real, so <chi|psi> needs no conjugation.
    return {kChiCos * s.a + kChiSin * s.b, kChiSin * s.a - kChiCos * s.b};
}

CoinState from_hadamard_coords(const HadamardCoords& h) {
    return {kChiCos * h.plus + kChiSin * h.minus, kChiSin * h.plus - kChiCos * h.minus};
}

}  // namespace qwalk
