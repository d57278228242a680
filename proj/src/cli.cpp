#include "qwalk/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace qwalk {

namespace {

constexpr double kStateRenormalizeTolerance = 1e-6;
constexpr double kCoinFileUnitarityTolerance = 1e-10;

double parse_real(std::string_view text, std::string_view whole) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw UsageError("malformed complex literal '" + std::string(whole) + "'");
    }
    return v;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::optional<CoinState> named_coin(std::string_view name) {
    const auto [chi_plus, chi_minus] = hadamard_eigenbasis();
    if (name == "L") return coin_left();
    if (name == "R") return coin_right();
    if (name == "sym") return coin_symmetric();
    if (name == "chi+") return chi_plus;
    if (name == "chi-") return chi_minus;
    return std::nullopt;
}

// Accept exact states, renormalize near misses, reject the rest.
template <class State>
State checked_norm(State s, std::string_view text, std::ostream& warn) {
    const double n2 = s.norm_squared();
    if (std::abs(n2 - 1.0) <= kNormTolerance) return s;
    if (std::abs(n2 - 1.0) > kStateRenormalizeTolerance) {
        throw UsageError("state '" + std::string(text) + "' is not normalized (norm^2 = " + format_number(n2) + ")");
    }
    const double n = std::sqrt(n2);
    if constexpr (std::is_same_v<State, CoinState>) {
        s.a /= n;
        s.b /= n;
    } else {
        for (auto& x : s.c) x /= n;
    }
    warn << "warning: renormalized state '" << text << "' (norm^2 was " << format_number(n2) << ")\n";
    return s;
}

TwoCoinState require_pair(const InitialState& s, std::string_view text) {
    if (const auto* p = std::get_if<TwoCoinState>(&s)) return *p;
    throw UsageError("state '" + std::string(text) + "' is a single-particle state; a coin pair is needed here");
}

CoinState require_single(const InitialState& s, std::string_view text) {
    if (const auto* p = std::get_if<CoinState>(&s)) return *p;
    throw UsageError("state '" + std::string(text) + "' is a coin pair; a single coin state is needed here");
}

std::optional<std::filesystem::path> output_path(const RunConfig& c, const std::string& name) {
    if (c.out) return c.out;
    if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) {
        return std::filesystem::path(dir) / (name + (c.format == OutputFormat::json ? ".json" : ".csv"));
    }
    return std::nullopt;
}

void print_summary(const ExperimentResult& r, std::ostream& out) {
    if (r.spec.mode == RunMode::surface) {
        out << r.spec.name << ": " << r.surface.size() << " surface points\n";
        return;
    }
    for (const auto& c : r.cases) {
        out << r.spec.name << " " << c.label << ": final=" << format_number(c.final_value)
            << " tail_average=" << format_number(c.tail_average) << " window=[" << r.window.first << ","
            << r.window.last << "]";
        if (c.prediction) out << " prediction=" << format_number(*c.prediction) << " gap=" << format_number(*c.gap);
        out << (c.passed ? " PASS" : " FAIL") << "\n";
    }
}

int emit_result(const ExperimentResult& r, const RunConfig& c, std::ostream& out) {
    print_summary(r, out);
    if (auto path = output_path(c, r.spec.name)) {
        const auto files = render(r, c.format, *path);
        write_files(files);
        for (const auto& f : files) out << "wrote " << f.path.string() << "\n";
    }
    return kExitOk;
}

ExperimentSpec spec_for_state_run(const RunConfig& c, RunMode mode, std::ostream& err) {
    ExperimentSpec s;
    s.mode = mode;
    s.steps = c.steps.value_or(100);
    s.name = std::string(to_string(mode));
    if (c.max_amps) s.max_amplitudes = *c.max_amps;
    s.outputs.joint = c.joint;

    const bool stateless = mode == RunMode::boson || mode == RunMode::fermion;
    if (stateless) {
        if (c.state) throw UsageError(std::string(to_string(mode)) + " runs start from |1_(0,L) 1_(0,R)>; --state is not accepted");
        s.cases = {{s.name, std::monostate{}, {}}};
        return s;
    }
    if (!c.state) throw UsageError(std::string(to_string(mode)) + " needs --state");
    const InitialState parsed = parse_state(*c.state, err);
    if (mode == RunMode::single) {
        if (c.joint) throw UsageError("single runs have no joint distribution");
        s.cases = {{*c.state, require_single(parsed, *c.state), {}}};
        s.outputs.distribution = true;
    } else {
        s.cases = {{*c.state, require_pair(parsed, *c.state), {}}};
    }
    if (mode == RunMode::delta) s.interaction_coin = load_delta_coin(c.delta_coin);
    return s;
}

int run_asymptote(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (!c.state) throw UsageError("asymptote needs --state");
    const InitialState s = parse_state(*c.state, err);
    if (const auto* single = std::get_if<CoinState>(&s)) {
        const HalfLineSplit h = asymptotic_half_line(*single);
        out << format_number(h.minus) << " " << format_number(h.plus) << "\n";
    } else {
        out << format_number(ps_entangled(std::get<TwoCoinState>(s))) << "\n";
    }
    return kExitOk;
}

int run_sweep_command(const RunConfig& c, std::ostream& out) {
    SweepSpec spec;
    spec.count = c.count;
    spec.steps = c.steps.value_or(200);
    spec.seed = c.seed;
    const SweepResult r = run_sweep(spec);
    double worst = 0.0;
    for (const auto& row : r.rows) worst = std::max(worst, row.gap);
    out << "sweep: " << r.rows.size() << " states, steps=" << spec.steps << " window=[" << r.window.first << ","
        << r.window.last << "] max_gap=" << format_number(worst) << "\n";
    if (auto path = output_path(c, "sweep")) {
        const auto files = render_sweep(r, c.format, *path);
        write_files(files);
        for (const auto& f : files) out << "wrote " << f.path.string() << "\n";
    }
    return kExitOk;
}

}  // namespace

Complex parse_complex(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s.push_back(ch);
    if (s.empty()) throw UsageError("empty complex literal");
    if (s.back() != 'i') return {parse_real(s, text), 0.0};

    s.pop_back();
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split_at = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    auto imag_part = [&](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        return parse_real(part, text);
    };
    if (split_at == std::string::npos) return {0.0, imag_part(s)};
    return {parse_real(s.substr(0, split_at), text), imag_part(s.substr(split_at))};
}

InitialState parse_state(std::string_view text, std::ostream& warn) {
    if (text.empty()) throw UsageError("empty state");
    if (auto c = named_coin(text)) return *c;
    if (text.substr(0, 5) == "bell:") {
        try {
            return bell_state(text.substr(5));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (const auto star = text.find('*'); star != std::string_view::npos) {
        const auto first = named_coin(text.substr(0, star));
        const auto second = named_coin(text.substr(star + 1));
        if (!first || !second) throw UsageError("product state '" + std::string(text) + "' needs two named coin states");
        return tensor(*first, *second);
    }
    const auto parts = split(text, ',');
    if (parts.size() == 2) {
        return checked_norm(CoinState{parse_complex(parts[0]), parse_complex(parts[1])}, text, warn);
    }
    if (parts.size() == 4) {
        TwoCoinState s;
        for (std::size_t k = 0; k < 4; ++k) s.c[k] = parse_complex(parts[k]);
        return checked_norm(s, text, warn);
    }
    throw UsageError("unrecognized state '" + std::string(text) + "'");
}

InteractionCoin parse_delta_coin(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Complex> entries;
    std::string token;
    while (in >> token) entries.push_back(parse_complex(token));
    if (entries.size() != 16) {
        throw UsageError("delta coin needs 16 complex entries, got " + std::to_string(entries.size()));
    }
    Eigen::Matrix4cd m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = entries[static_cast<std::size_t>(4 * r + c)];
    try {
        return InteractionCoin{m, kCoinFileUnitarityTolerance};
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

InteractionCoin load_delta_coin(const std::string& source) {
    if (source == "default") return delta_coin_default();
    std::ifstream in(source);
    if (!in) throw UsageError("cannot read delta coin file '" + source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_delta_coin(buf.str());
}

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"Coined quantum walks with one and two particles: same-side probabilities"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string out_path;
    std::size_t max_amps = 0;
    int steps = 0;

    auto add_common = [&](CLI::App* sub, bool with_state, bool with_steps) {
        if (with_state) {
            sub->add_option("--state", cfg.state,
                            "L, R, sym, chi+, chi-, bell:psi+|psi-|phi+|phi-, A*B, a,b or cLL,cLR,cRL,cRR");
        }
        if (with_steps) sub->add_option("--steps", steps, "number of walk steps")->check(CLI::NonNegativeNumber);
        sub->add_option("--out", out_path, "output file");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* single = app.add_subcommand("single", "one walker");
    add_common(single, true, true);
    CLI::App* pair = app.add_subcommand("pair", "two distinguishable walkers");
    add_common(pair, true, true);
    pair->add_flag("--joint", cfg.joint, "also write the final joint distribution");
    CLI::App* boson = app.add_subcommand("boson", "two bosons from |1_(0,L) 1_(0,R)>");
    add_common(boson, false, true);
    boson->add_flag("--joint", cfg.joint, "also write the final joint distribution");
    CLI::App* fermion = app.add_subcommand("fermion", "two fermions from |1_(0,L) 1_(0,R)>");
    add_common(fermion, false, true);
    fermion->add_flag("--joint", cfg.joint, "also write the final joint distribution");
    CLI::App* delta = app.add_subcommand("delta", "two walkers with a coin swap on m == n");
    add_common(delta, true, true);
    delta->add_option("--delta-coin", cfg.delta_coin, "'default' or a file with 16 complex entries");
    delta->add_option("--max-amps", max_amps, "cap on stored amplitudes")->check(CLI::PositiveNumber);
    delta->add_flag("--joint", cfg.joint, "also write the final joint distribution");
    CLI::App* asym = app.add_subcommand("asymptote", "closed-form long-time limits");
    asym->add_option("--state", cfg.state, "coin state or coin pair")->required();
    CLI::App* pre = app.add_subcommand("preset", "run a named figure reproduction");
    std::string preset_name;
    pre->add_option("name", preset_name, "preset name")->required();
    add_common(pre, false, true);
    pre->add_option("--max-amps", max_amps, "cap on stored amplitudes")->check(CLI::PositiveNumber);
    CLI::App* sweep = app.add_subcommand("sweep", "random-state check of the closed-form limit");
    add_common(sweep, false, true);
    sweep->add_option("--count", cfg.count, "number of random states")->check(CLI::NonNegativeNumber);
    sweep->add_option("--seed", cfg.seed, "random seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        cfg.help = true;
        cfg.help_text = app.help("", CLI::AppFormatMode::All);
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const std::pair<CLI::App*, Subcommand> table[] = {
        {single, Subcommand::single}, {pair, Subcommand::pair},          {boson, Subcommand::boson},
        {fermion, Subcommand::fermion}, {delta, Subcommand::delta},      {asym, Subcommand::asymptote},
        {pre, Subcommand::preset},    {sweep, Subcommand::sweep}};
    for (const auto& [sub, kind] : table) {
        if (sub->parsed()) {
            cfg.command = kind;
            auto given = [sub](const char* name) {
                const CLI::Option* o = sub->get_option_no_throw(name);
                return o != nullptr && o->count() > 0;
            };
            if (given("--steps")) cfg.steps = steps;
            if (given("--out")) cfg.out = out_path;
            if (given("--max-amps")) cfg.max_amps = max_amps;
        }
    }
    if (cfg.command == Subcommand::preset) cfg.preset = preset_name;
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    return cfg;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    switch (c.command) {
        case Subcommand::asymptote: return run_asymptote(c, out, err);
        case Subcommand::sweep: return run_sweep_command(c, out);
        case Subcommand::preset: {
            ExperimentSpec spec = preset(*c.preset);
            if (c.steps) spec.steps = *c.steps;
            if (c.max_amps) spec.max_amplitudes = *c.max_amps;
            const ExperimentResult r = run(spec);
            emit_result(r, c, out);
            return r.passed() ? kExitOk : kExitGateFailed;
        }
        case Subcommand::single: return emit_result(run(spec_for_state_run(c, RunMode::single, err)), c, out);
        case Subcommand::pair: return emit_result(run(spec_for_state_run(c, RunMode::pair, err)), c, out);
        case Subcommand::boson: return emit_result(run(spec_for_state_run(c, RunMode::boson, err)), c, out);
        case Subcommand::fermion: return emit_result(run(spec_for_state_run(c, RunMode::fermion, err)), c, out);
        case Subcommand::delta: return emit_result(run(spec_for_state_run(c, RunMode::delta, err)), c, out);
    }
    return kExitFailure;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = parse_args(args);
        if (cfg.help) {
            out << cfg.help_text;
            return kExitOk;
        }
        return run(cfg, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const OutputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitOutput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace qwalk
