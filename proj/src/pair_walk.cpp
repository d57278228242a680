#include "qwalk/pair_walk.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Imaginary parts above this mean the real-amplitude shortcut is invalid.
constexpr double kRealTolerance = 1e-12;

std::size_t cell(int m, int n, int t) {
    const auto w = static_cast<std::size_t>(2 * t + 1);
    return static_cast<std::size_t>(m + t) * w + static_cast<std::size_t>(n + t);
}

// Amplitude psi_k^(i)(m) with i the initial coin and k the current coin.
struct Amps {
    const BasisWalks& w;
    Complex operator()(int initial, int current, int m) const {
        const WalkState& s = initial == 0 ? w.from_left : w.from_right;
        return current == 0 ? s.left(m) : s.right(m);
    }
};

// Indistinguishable pair in |1_(0,L) 1_(0,R)>; sign +1 for bosons, -1 for fermions.
JointDistribution exchange_distribution(const BasisWalks& walks, double sign) {
    const int t = walks.steps();
    const Amps psi{walks};
    JointDistribution d;
    d.steps = t;
    d.mode = PairSymmetry::ordered_pairs;
    d.p.assign(static_cast<std::size_t>(d.width()) * d.width(), 0.0);

    for (int m = -t; m <= t; ++m) {
        for (int n = -t; n < m; ++n) {
            double acc = 0.0;
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    acc += std::norm(psi(0, i, m) * psi(1, j, n) + sign * psi(1, i, m) * psi(0, j, n));
                }
            }
            d.p[cell(m, n, t)] = acc;
        }
        // Double occupancy of site m, counted once.
        const Complex ll = psi(0, 0, m) * psi(1, 0, m);
        const Complex rr = psi(0, 1, m) * psi(1, 1, m);
        const Complex mixed = psi(0, 0, m) * psi(1, 1, m) + sign * psi(0, 1, m) * psi(1, 0, m);
        double diag = std::norm(mixed);
        if (sign > 0) diag += 2.0 * std::norm(ll) + 2.0 * std::norm(rr);
        d.p[cell(m, m, t)] = diag;
    }
    return d;
}

}  // namespace

double TwoCoinState::norm_squared() const {
    double acc = 0.0;
    for (const auto& x : c) acc += std::norm(x);
    return acc;
}

bool TwoCoinState::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

void require_normalized(const TwoCoinState& state, double tol) {
    if (!state.is_normalized(tol)) {
        throw std::invalid_argument("two-coin state is not normalized: sum |c|^2 = " +
                                    std::to_string(state.norm_squared()));
    }
}

TwoCoinState tensor(const CoinState& first, const CoinState& second) {
    return {{first.a * second.a, first.a * second.b, first.b * second.a, first.b * second.b}};
}

TwoCoinState bell_state(BellKind kind) {
    const Complex r{kInvSqrt2, 0.0};
    switch (kind) {
        case BellKind::psi_plus: return {{0.0, r, r, 0.0}};
        case BellKind::psi_minus: return {{0.0, r, -r, 0.0}};
        case BellKind::phi_plus: return {{r, 0.0, 0.0, r}};
        case BellKind::phi_minus: return {{r, 0.0, 0.0, -r}};
    }
    throw std::invalid_argument("unknown Bell state kind");
}

TwoCoinState bell_state(std::string_view name) {
    if (name == "psi+") return bell_state(BellKind::psi_plus);
    if (name == "psi-") return bell_state(BellKind::psi_minus);
    if (name == "phi+") return bell_state(BellKind::phi_plus);
    if (name == "phi-") return bell_state(BellKind::phi_minus);
    throw std::invalid_argument("unknown Bell state '" + std::string(name) + "'");
}

HadamardCoords2 to_hadamard_coords2(const TwoCoinState& s) {
    // Apply the single-particle change of basis to each tensor factor.
    const auto first_l = to_hadamard_coords({s[LL], s[RL]});  // particle 2 in L
    const auto first_r = to_hadamard_coords({s[LR], s[RR]});  // particle 2 in R
    const auto plus = to_hadamard_coords({first_l.plus, first_r.plus});
    const auto minus = to_hadamard_coords({first_l.minus, first_r.minus});
    return {plus.plus, plus.minus, minus.plus, minus.minus};
}

TwoCoinState from_hadamard_coords2(const HadamardCoords2& h) {
    const CoinState plus = from_hadamard_coords({h.pp, h.pm});    // particle 1 in chi+
    const CoinState minus = from_hadamard_coords({h.mp, h.mm});   // particle 1 in chi-
    const CoinState second_l = from_hadamard_coords({plus.a, minus.a});
    const CoinState second_r = from_hadamard_coords({plus.b, minus.b});
    return {{second_l.a, second_r.a, second_l.b, second_r.b}};
}

double JointDistribution::at(int m, int n) const {
    if (m < -steps || m > steps || n < -steps || n > steps) return 0.0;
    return p[cell(m, n, steps)];
}

double JointDistribution::total() const {
    return std::accumulate(p.begin(), p.end(), 0.0);
}

ProbabilityDistribution JointDistribution::marginal_first() const {
    ProbabilityDistribution d;
    d.steps = steps;
    d.p.assign(static_cast<std::size_t>(width()), 0.0);
    for (int m = -steps; m <= steps; ++m) {
        double acc = 0.0;
        for (int n = -steps; n <= steps; ++n) acc += at(m, n);
        d.p[static_cast<std::size_t>(m + steps)] = acc;
    }
    return d;
}

BasisWalks BasisWalks::at_origin() {
    return {WalkState::at_origin(coin_left()), WalkState::at_origin(coin_right())};
}

BasisWalks BasisWalks::advanced(const CoinOperator& coin) const {
    return {step(from_left, coin), step(from_right, coin)};
}

BasisWalks basis_walks(int t, const CoinOperator& coin) {
    return {evolve(coin_left(), t, coin), evolve(coin_right(), t, coin)};
}

JointDistribution joint_distribution_distinguishable(const TwoCoinState& state, const BasisWalks& walks) {
    require_normalized(state);
    const int t = walks.steps();
    const Amps psi{walks};
    JointDistribution d;
    d.steps = t;
    d.mode = PairSymmetry::distinguishable;
    d.p.assign(static_cast<std::size_t>(d.width()) * d.width(), 0.0);

    // Second-particle amplitudes psi_l^(j)(n), hoisted out of the m loop.
    std::vector<std::array<Complex, 4>> second(static_cast<std::size_t>(d.width()));
    for (int n = -t; n <= t; ++n) {
        auto& s = second[static_cast<std::size_t>(n + t)];
        s = {psi(0, 0, n), psi(0, 1, n), psi(1, 0, n), psi(1, 1, n)};  // (j, l)
    }

    for (int m = -t; m <= t; ++m) {
        // u[k][j] = sum_i c_ij psi_k^(i)(m)
        Complex u[2][2];
        for (int k = 0; k < 2; ++k) {
            for (int j = 0; j < 2; ++j) {
                u[k][j] = state[j] * psi(0, k, m) + state[2 + j] * psi(1, k, m);
            }
        }
        if (u[0][0] == 0.0 && u[0][1] == 0.0 && u[1][0] == 0.0 && u[1][1] == 0.0) continue;
        for (int n = -t; n <= t; ++n) {
            const auto& s = second[static_cast<std::size_t>(n + t)];
            double acc = 0.0;
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    acc += std::norm(u[k][0] * s[static_cast<std::size_t>(l)] +
                                     u[k][1] * s[static_cast<std::size_t>(2 + l)]);
                }
            }
            d.p[cell(m, n, t)] = acc;
        }
    }
    return d;
}

JointDistribution joint_distribution_distinguishable(const TwoCoinState& state, int t,
                                                     const CoinOperator& coin) {
    if (t < 0) throw std::invalid_argument("joint distribution: negative step count");
    return joint_distribution_distinguishable(state, basis_walks(t, coin));
}

std::vector<double> overlap_profile(const BasisWalks& walks) {
    const int t = walks.steps();
    std::vector<double> phi(static_cast<std::size_t>(2 * t + 1));
    for (int m = -t; m <= t; ++m) {
        const Complex amps[4] = {walks.from_left.left(m), walks.from_right.left(m),
                                 walks.from_left.right(m), walks.from_right.right(m)};
        for (const auto& a : amps) {
            if (std::abs(a.imag()) > kRealTolerance) {
                throw std::domain_error("overlap profile requires real walk amplitudes");
            }
        }
        phi[static_cast<std::size_t>(m + t)] = amps[0].real() * amps[1].real() + amps[2].real() * amps[3].real();
    }
    return phi;
}

double interference_term(const BasisWalks& walks) {
    const int t = walks.steps();
    const auto phi = overlap_profile(walks);
    double minus = 0.0;
    double plus = 0.0;
    for (int m = -t; m <= t; ++m) {
        (m <= 0 ? minus : plus) += phi[static_cast<std::size_t>(m + t)];
    }
    return minus * minus + plus * plus;
}

double interference_term(int t, const CoinOperator& coin) {
    if (t < 0) throw std::invalid_argument("interference term: negative step count");
    return interference_term(basis_walks(t, coin));
}

double p_same_side(const JointDistribution& dist) {
    const int t = dist.steps;
    const bool ordered = dist.mode == PairSymmetry::ordered_pairs;
    double acc = 0.0;
    for (int m = -t; m <= t; ++m) {
        for (int n = -t; n <= t; ++n) {
            if (ordered && m < n) continue;
            if ((m <= 0) == (n <= 0)) acc += dist.at(m, n);
        }
    }
    return acc;
}

JointDistribution boson_joint_distribution(const BasisWalks& walks) {
    return exchange_distribution(walks, +1.0);
}

JointDistribution boson_joint_distribution(int t) {
    if (t < 0) throw std::invalid_argument("boson distribution: negative step count");
    return boson_joint_distribution(basis_walks(t, hadamard_coin()));
}

JointDistribution fermion_joint_distribution(const BasisWalks& walks) {
    return exchange_distribution(walks, -1.0);
}

JointDistribution fermion_joint_distribution(int t) {
    if (t < 0) throw std::invalid_argument("fermion distribution: negative step count");
    return fermion_joint_distribution(basis_walks(t, hadamard_coin()));
}

PsTimeSeries ps_timeseries(const PairSource& source, int t_max) {
    if (t_max < 0) throw std::invalid_argument("ps_timeseries: negative t_max");
    if (const auto* s = std::get_if<TwoCoinState>(&source)) require_normalized(*s);

    const CoinOperator coin = hadamard_coin();
    PsTimeSeries out;
    out.reserve(static_cast<std::size_t>(t_max) + 1);
    BasisWalks walks = BasisWalks::at_origin();
    for (int t = 0; t <= t_max; ++t) {
        if (t > 0) walks = walks.advanced(coin);
        const JointDistribution d = std::visit(
            [&](const auto& src) -> JointDistribution {
                using T = std::decay_t<decltype(src)>;
                if constexpr (std::is_same_v<T, TwoCoinState>) {
                    return joint_distribution_distinguishable(src, walks);
                } else {
                    return src == Species::boson ? boson_joint_distribution(walks)
                                                 : fermion_joint_distribution(walks);
                }
            },
            source);
        out.push_back({t, p_same_side(d)});
    }
    return out;
}

}  // namespace qwalk
