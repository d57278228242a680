#include "qwalk/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace qwalk {

namespace {

constexpr double kFigureTolerance = 0.01;

// Fig. 6 style gate for the interacting walk: tail must reach 0.78 and beat
// the non-interacting maximum 3/4.
constexpr double kDeltaGate = 0.78;
constexpr double kNonInteractingMax = 0.75;

CaseResult finish_case(const ExperimentCase& c, PsTimeSeries series, const TailWindow& window,
                       std::optional<double> prediction) {
    CaseResult r;
    r.label = c.label;
    r.state = c.state;
    r.final_value = series.empty() ? 0.0 : series.back().p_same;
    r.tail_average = tail_average(series, window);
    r.series = std::move(series);
    r.prediction = prediction;
    if (prediction) r.gap = std::abs(r.tail_average - *prediction);

    const Expectation& e = c.expect;
    if (e.tolerance && r.gap && *r.gap > *e.tolerance) r.passed = false;
    if (e.tolerance && !prediction) r.passed = false;
    if (e.lower_bound && r.tail_average < *e.lower_bound) r.passed = false;
    if (e.strict_lower_bound && !(r.tail_average > *e.strict_lower_bound)) r.passed = false;
    return r;
}

CaseResult run_single(const ExperimentSpec& spec, const ExperimentCase& c, const TailWindow& window) {
    const auto& coin_state = std::get<CoinState>(c.state);
    const CoinOperator coin = hadamard_coin();
    WalkState s = WalkState::at_origin(coin_state);
    PsTimeSeries series;
    for (int t = 0; t <= spec.steps; ++t) {
        if (t > 0) s = step(s, coin);
        series.push_back({t, half_line_split(position_distribution(s)).minus});
    }
    CaseResult r = finish_case(c, std::move(series), window, asymptotic_half_line(coin_state).minus);
    if (spec.outputs.distribution) r.distribution = position_distribution(s);
    return r;
}

CaseResult run_pair(const ExperimentSpec& spec, const ExperimentCase& c, const TailWindow& window) {
    const CoinOperator coin = hadamard_coin();
    BasisWalks walks = BasisWalks::at_origin();
    PsTimeSeries series;
    std::optional<JointDistribution> last;
    for (int t = 0; t <= spec.steps; ++t) {
        if (t > 0) walks = walks.advanced(coin);
        JointDistribution d = [&] {
            switch (spec.mode) {
                case RunMode::boson: return boson_joint_distribution(walks);
                case RunMode::fermion: return fermion_joint_distribution(walks);
                default: return joint_distribution_distinguishable(std::get<TwoCoinState>(c.state), walks);
            }
        }();
        series.push_back({t, p_same_side(d)});
        if (t == spec.steps) last = std::move(d);
    }

    std::optional<double> prediction;
    switch (spec.mode) {
        case RunMode::boson: prediction = ps_entangled(bell_state(BellKind::psi_plus)); break;
        case RunMode::fermion: prediction = ps_entangled(bell_state(BellKind::psi_minus)); break;
        default: prediction = ps_entangled(std::get<TwoCoinState>(c.state)); break;
    }
    CaseResult r = finish_case(c, std::move(series), window, prediction);
    if (spec.outputs.joint) r.joint = std::move(last);
    if (spec.outputs.distribution && r.joint) r.distribution = r.joint->marginal_first();
    return r;
}

CaseResult run_delta(const ExperimentSpec& spec, const ExperimentCase& c, const TailWindow& window) {
    if (joint_amplitude_count(spec.steps) > spec.max_amplitudes) {
        throw ResourceLimitError("experiment '" + spec.name + "': " + std::to_string(spec.steps) +
                                 " steps exceed the amplitude cap " + std::to_string(spec.max_amplitudes));
    }
    const auto& initial = std::get<TwoCoinState>(c.state);
    const InteractionCoin& delta = *spec.interaction_coin;
    const CoinOperator coin = hadamard_coin();
    JointWalkState s = JointWalkState::at_origin(initial);
    PsTimeSeries series;
    for (int t = 0; t <= spec.steps; ++t) {
        if (t > 0) s = step_delta(s, coin, delta);
        series.push_back({t, p_same_side(joint_distribution_of(s))});
    }

    // Only the non-interacting walk has a closed-form limit.
    std::optional<double> prediction;
    const InteractionCoin product = InteractionCoin::product(coin, coin);
    if ((delta.matrix() - product.matrix()).cwiseAbs().maxCoeff() <= kNormTolerance) {
        prediction = ps_entangled(initial);
    }
    CaseResult r = finish_case(c, std::move(series), window, prediction);
    if (spec.outputs.joint || spec.outputs.distribution) {
        JointDistribution d = joint_distribution_of(s);
        if (spec.outputs.distribution) r.distribution = d.marginal_first();
        if (spec.outputs.joint) r.joint = std::move(d);
    }
    return r;
}

std::vector<SurfacePoint> run_surface(const SurfaceGrid& grid) {
    std::vector<SurfacePoint> out;
    const int n = grid.points;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = static_cast<double>(i) / (n - 1);
            const double y = static_cast<double>(j) / (n - 1);
            if (grid.kind == SurfaceKind::separable) {
                const CoinState first = from_hadamard_coords({std::sqrt(x), std::sqrt(1.0 - x)});
                const CoinState second = from_hadamard_coords({std::sqrt(y), std::sqrt(1.0 - y)});
                out.push_back({x, y, ps_separable(first, second)});
            } else {
                // Integer test keeps the x + y == 1 diagonal in the grid.
                if (i + j > n - 1) continue;
                const double rest = std::sqrt(std::max(0.0, 1.0 - x - y) / 2.0);
                const TwoCoinState s = from_hadamard_coords2({std::sqrt(x), rest, rest, std::sqrt(y)});
                out.push_back({x, y, ps_entangled(s)});
            }
        }
    }
    return out;
}

ExperimentCase make_case(std::string label, InitialState state, Expectation expect = {kFigureTolerance, {}, {}}) {
    return {std::move(label), std::move(state), expect};
}

}  // namespace

std::string_view to_string(RunMode mode) {
    switch (mode) {
        case RunMode::single: return "single";
        case RunMode::pair: return "pair";
        case RunMode::boson: return "boson";
        case RunMode::fermion: return "fermion";
        case RunMode::delta: return "delta";
        case RunMode::surface: return "surface";
    }
    return "unknown";
}

TailWindow default_tail_window(int steps) {
    int first = steps - steps / 5;
    // Short runs: widen so the window holds at least one even step.
    if (first == steps && steps % 2 != 0) first = steps - 1;
    return {first, steps, true};
}

double tail_average(const PsTimeSeries& series, const TailWindow& window) {
    double acc = 0.0;
    int count = 0;
    for (const auto& p : series) {
        if (p.t < window.first || p.t > window.last) continue;
        if (window.even_only && p.t % 2 != 0) continue;
        acc += p.p_same;
        ++count;
    }
    return count == 0 ? 0.0 : acc / count;
}

void validate(const ExperimentSpec& spec) {
    if (spec.steps < 0) throw SpecError("experiment '" + spec.name + "': negative step count");
    if (const auto& w = spec.window) {
        if (w->first < 0 || w->first > w->last || w->last > spec.steps) {
            throw SpecError("experiment '" + spec.name + "': tail window outside [0, steps]");
        }
        if (w->even_only && w->first == w->last && w->first % 2 != 0) {
            throw SpecError("experiment '" + spec.name + "': tail window holds no even step");
        }
    }
    if (spec.mode == RunMode::surface) {
        if (!spec.surface) throw SpecError("surface experiment needs a grid");
        if (spec.surface->points < 2) throw SpecError("surface grid needs at least 2 points");
        if (!spec.cases.empty()) throw SpecError("surface experiment takes no initial states");
        return;
    }
    if (spec.cases.empty()) throw SpecError("experiment '" + spec.name + "' has no cases");
    if (spec.mode == RunMode::delta && !spec.interaction_coin) {
        throw SpecError("delta experiment needs an interaction coin");
    }
    if (spec.mode != RunMode::delta && spec.interaction_coin) {
        throw SpecError("interaction coin only applies to delta experiments");
    }
    if (spec.mode == RunMode::single && spec.outputs.joint) {
        throw SpecError("single-particle experiment has no joint distribution");
    }
    for (const auto& c : spec.cases) {
        const bool ok = std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                switch (spec.mode) {
                    case RunMode::single: return std::is_same_v<T, CoinState>;
                    case RunMode::pair:
                    case RunMode::delta: return std::is_same_v<T, TwoCoinState>;
                    case RunMode::boson:
                    case RunMode::fermion: return std::is_same_v<T, std::monostate>;
                    case RunMode::surface: return false;
                }
                return false;
            },
            c.state);
        if (!ok) {
            throw SpecError("case '" + c.label + "' has a state incompatible with mode " +
                            std::string(to_string(spec.mode)));
        }
        if (const auto* s = std::get_if<CoinState>(&c.state); s && !s->is_normalized()) {
            throw SpecError("case '" + c.label + "': coin state is not normalized");
        }
        if (const auto* s = std::get_if<TwoCoinState>(&c.state); s && !s->is_normalized()) {
            throw SpecError("case '" + c.label + "': two-coin state is not normalized");
        }
    }
}

bool ExperimentResult::passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed; });
}

ExperimentResult run(const ExperimentSpec& spec) {
    validate(spec);
    ExperimentResult result;
    result.spec = spec;
    result.window = spec.window.value_or(default_tail_window(spec.steps));
    if (spec.mode == RunMode::surface) {
        result.surface = run_surface(*spec.surface);
        return result;
    }
    for (const auto& c : spec.cases) {
        switch (spec.mode) {
            case RunMode::single: result.cases.push_back(run_single(spec, c, result.window)); break;
            case RunMode::delta: result.cases.push_back(run_delta(spec, c, result.window)); break;
            default: result.cases.push_back(run_pair(spec, c, result.window)); break;
        }
    }
    return result;
}

std::vector<std::string> preset_names() {
    return {"fig1", "fig1_2", "fig1_3", "fig2", "fig2_2", "fig6", "bosons", "fermions"};
}

ExperimentSpec preset(std::string_view name) {
    ExperimentSpec s;
    s.name = std::string(name);
    const auto [chi_plus, chi_minus] = hadamard_eigenbasis();
    if (name == "fig1") {
        s.mode = RunMode::pair;
        s.steps = 100;
        s.cases = {make_case("LR", tensor(coin_left(), coin_right())),
                   make_case("LL", tensor(coin_left(), coin_left())),
                   make_case("SS", tensor(coin_symmetric(), coin_symmetric()))};
    } else if (name == "fig1_2") {
        s.mode = RunMode::surface;
        s.steps = 0;
        s.surface = SurfaceGrid{SurfaceKind::separable, 21};
        s.outputs.timeseries = false;
    } else if (name == "fig1_3") {
        s.mode = RunMode::single;
        s.steps = 100;
        s.cases = {make_case("chi+", chi_plus)};
        s.outputs.distribution = true;
    } else if (name == "fig2") {
        s.mode = RunMode::pair;
        s.steps = 100;
        s.cases = {make_case("psi+", bell_state(BellKind::psi_plus)),
                   make_case("psi-", bell_state(BellKind::psi_minus)),
                   make_case("phi+", bell_state(BellKind::phi_plus)),
                   make_case("phi-", bell_state(BellKind::phi_minus))};
    } else if (name == "fig2_2") {
        s.mode = RunMode::surface;
        s.steps = 0;
        s.surface = SurfaceGrid{SurfaceKind::entangled, 21};
        s.outputs.timeseries = false;
    } else if (name == "fig6") {
        s.mode = RunMode::delta;
        s.steps = 200;
        s.interaction_coin = delta_coin_default();
        s.cases = {make_case("phi-", bell_state(BellKind::phi_minus), {{}, kDeltaGate, kNonInteractingMax})};
        s.outputs.joint = true;
    } else if (name == "bosons") {
        s.mode = RunMode::boson;
        s.steps = 100;
        s.cases = {make_case("bosons", std::monostate{})};
    } else if (name == "fermions") {
        s.mode = RunMode::fermion;
        s.steps = 100;
        s.cases = {make_case("fermions", std::monostate{})};
    } else {
        throw SpecError("unknown preset '" + std::string(name) + "'");
    }
    return s;
}

CoinState random_coin_state(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const Complex a{g(rng), g(rng)};
    const Complex b{g(rng), g(rng)};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

TwoCoinState random_two_coin_state(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    TwoCoinState s;
    for (auto& x : s.c) x = Complex{g(rng), g(rng)};
    const double n = std::sqrt(s.norm_squared());
    for (auto& x : s.c) x /= n;
    return s;
}

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.count < 0) throw SpecError("sweep: negative count");
    if (spec.steps < 0) throw SpecError("sweep: negative step count");
    SweepResult out;
    out.spec = spec;
    out.window = default_tail_window(spec.steps);
    std::mt19937_64 rng{spec.seed};
    for (int i = 0; i < spec.count; ++i) {
        SweepRow row;
        row.index = i;
        row.state = random_two_coin_state(rng);
        row.closed_form = ps_entangled(row.state);
        row.tail_average = tail_average(ps_timeseries(row.state, spec.steps), out.window);
        row.gap = std::abs(row.tail_average - row.closed_form);
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace qwalk
