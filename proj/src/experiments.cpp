#include "qpurify/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "qpurify/bsm.hpp"
#include "qpurify/cavity.hpp"
#include "qpurify/channels.hpp"
#include "qpurify/filtering.hpp"
#include "qpurify/measures.hpp"
#include "qpurify/polarizer.hpp"
#include "qpurify/recurrence.hpp"

namespace qpurify {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;  // extra header comments
    std::string anchor;
};

/// Computes rows[i] = fn(i) over a worker pool; results land in grid order so
/// the output does not depend on the thread count.
std::vector<std::vector<double>> parallel_rows(size_t count, int threads,
                                               const std::function<std::vector<double>(size_t)>& fn) {
    std::vector<std::vector<double>> rows(count);
    if (threads <= 1 || count < 2) {
        for (size_t i = 0; i < count; ++i) rows[i] = fn(i);
        return rows;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) rows[i] = fn(i);
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(count));
    pool.reserve(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return rows;
}

class ParamReader {
public:
    ParamReader(const ExperimentConfig& config, std::vector<Diagnostic>* diags)
        : config_(config), diags_(diags) {}

    double require(const std::string& key, double lo, double hi) {
        auto it = config_.params.find(key);
        if (it == config_.params.end()) {
            report(key, "missing required parameter");
            return lo;
        }
        return parse_and_check(key, it->second, lo, hi);
    }

    double optional(const std::string& key, double fallback, double lo, double hi) {
        auto it = config_.params.find(key);
        if (it == config_.params.end()) return fallback;
        return parse_and_check(key, it->second, lo, hi);
    }

    bool has(const std::string& key) const { return config_.params.count(key) > 0; }

    void check_known(const std::vector<std::string>& known) {
        for (const auto& [key, value] : config_.params) {
            (void)value;
            if (std::find(known.begin(), known.end(), key) == known.end())
                report(key, "unknown parameter for experiment '" + config_.experiment + "'");
        }
    }

    bool ok() const { return ok_; }

private:
    double parse_and_check(const std::string& key, const std::string& text, double lo, double hi) {
        try {
            size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument("trailing characters");
            if (v < lo || v > hi) {
                std::ostringstream msg;
                msg << "value " << text << " outside [" << lo << ", " << hi << "]";
                report(key, msg.str());
                return lo;
            }
            return v;
        } catch (const std::exception&) {
            report(key, "cannot parse '" + text + "' as a number");
            return lo;
        }
    }

    void report(const std::string& key, const std::string& message) {
        ok_ = false;
        if (diags_) diags_->push_back(Diagnostic{key, message});
    }

    const ExperimentConfig& config_;
    std::vector<Diagnostic>* diags_;
    bool ok_ = true;
};

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> values;
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) values.push_back(lo + i * step);
    return values;
}

// ---------------------------------------------------------------------------
// experiment implementations

Table run_rank_two(const ExperimentConfig& config, ParamReader& reader) {
    const double f_min = reader.require("f_min", 1e-6, 1.0);
    const double f_max = reader.require("f_max", 1e-6, 1.0);
    const double f_step = reader.require("f_step", 1e-9, 1.0);
    const double e_min = reader.require("eps_min", 1e-6, 1.0);
    const double e_max = reader.require("eps_max", 1e-6, 1.0);
    const double e_step = reader.require("eps_step", 1e-9, 1.0);
    reader.check_known({"f_min", "f_max", "f_step", "eps_min", "eps_max", "eps_step"});
    if (!reader.ok()) return {};

    Table table;
    table.anchor = "rank-two-filter-tradeoff";
    table.columns = {"F", "eps", "F_prime", "p_success", "F_prime_pipeline", "p_pipeline"};
    std::vector<std::pair<double, double>> points;
    for (double f : grid(f_min, f_max, f_step))
        for (double e : grid(e_min, e_max, e_step)) points.emplace_back(f, e);
    table.rows = parallel_rows(points.size(), config.threads, [&](size_t i) {
        const auto [f, e] = points[i];
        const RankTwoResult closed = rank_two_distill(f, e);
        const RankTwoResult pipe = rank_two_distill_pipeline(f, e);
        return std::vector<double>{f, e, closed.fidelity, closed.probability, pipe.fidelity,
                                   pipe.probability};
    });
    return table;
}

Table run_distill(const ExperimentConfig& config, ParamReader& reader, ChannelFamily family) {
    const bool depolarizing_family = family == ChannelFamily::Depolarizing;
    const double default_a = depolarizing_family ? 0.97 : 1.0 / std::sqrt(2.0);
    const double default_b = depolarizing_family ? 0.25 : 1.0 / std::sqrt(2.0);
    double a = reader.optional("a", default_a, 0.0, 1.0);
    double b = reader.optional("b", default_b, 0.0, 1.0);
    const double p_min = reader.require("p_min", 0.0, 1.0);
    const double p_max = reader.require("p_max", 0.0, 1.0);
    const double p_step = reader.require("p_step", 1e-9, 1.0);
    reader.check_known({"a", "b", "p_min", "p_max", "p_step"});
    if (!reader.ok()) return {};

    Table table;
    const double norm = std::hypot(a, b);
    if (std::abs(norm - 1.0) > 1e-12) {
        table.notes.push_back("note: (a,b) normalized from (" + format_value(a) + "," +
                              format_value(b) + ")");
        a /= norm;
        b /= norm;
    }

    auto make_channel = [&](double p) {
        switch (family) {
            case ChannelFamily::Depolarizing: return depolarizing(p);
            case ChannelFamily::AmplitudeDamping: return amplitude_damping(p);
            case ChannelFamily::PhaseDamping: return phase_damping(p);
        }
        throw std::logic_error("unknown family");
    };

    switch (family) {
        case ChannelFamily::Depolarizing:
            table.anchor = "depolarizing-distillation-curves";
            break;
        case ChannelFamily::AmplitudeDamping:
            table.anchor = "damping-distillation-curves";
            break;
        case ChannelFamily::PhaseDamping:
            table.anchor = "phase-damping-distillation-curves";
            break;
    }
    table.columns = {"p", "C_before", "C_after", "beta_before", "beta_after"};
    if (depolarizing_family) {
        const std::vector<std::string> extra = {
            "beta_before_xy",    "beta_after_xy",      "C_before_closed",  "C_after_closed",
            "beta_before_closed", "beta_after_closed", "closed_form_deviation"};
        table.columns.insert(table.columns.end(), extra.begin(), extra.end());
    }

    const std::vector<double> ps = grid(p_min, p_max, p_step);
    table.rows = parallel_rows(ps.size(), config.threads, [&](size_t i) {
        const double p = ps[i];
        const Channel ch = make_channel(p);
        const DensityMatrix rho = apply_bilocal(ch, ch, pure_to_density(PureState::schmidt(a, b)));
        const DistillationReport rep = distill(rho);
        std::vector<double> row{p, rep.c_before, rep.c_after, rep.beta_before, rep.beta_after};
        if (depolarizing_family) {
            const double beta_b_xy = chsh_max_xy_plane(rho).beta;
            const double beta_a_xy = chsh_max_xy_plane(rep.output_state).beta;
            const FamilyParams params{a, b, p};
            const ConcurrenceClosedForm cf = concurrence_closed_form(family, params);
            const ChshClosedForm bf = chsh_closed_form(family, params);
            const double deviation = std::max(
                {std::abs(rep.c_before - cf.c_initial), std::abs(rep.c_after - cf.c_filtered),
                 std::abs(beta_b_xy - bf.beta_initial), std::abs(beta_a_xy - bf.beta_filtered)});
            row.insert(row.end(), {beta_b_xy, beta_a_xy, cf.c_initial, cf.c_filtered,
                                   bf.beta_initial, bf.beta_filtered, deviation});
        }
        return row;
    });
    return table;
}

Table run_recurrence(const ExperimentConfig& config, ParamReader& reader) {
    const double f0 = reader.require("f0", 0.0, 1.0);
    const double target = reader.optional("target_fidelity", 0.99, 0.0, 1.0);
    const double max_rounds = reader.optional("max_rounds", 20, 1, 1000);
    reader.check_known({"f0", "target_fidelity", "max_rounds"});
    if (!reader.ok()) return {};
    (void)config;

    Table table;
    table.anchor = "recurrence-iteration-table";
    table.columns = {"round", "fidelity", "N", "yield"};
    const PurificationTrace trace =
        iterate(BellDiagonal::werner(f0), static_cast<int>(max_rounds), target);
    for (size_t r = 0; r < trace.rounds.size(); ++r) {
        const PurificationRound& round = trace.rounds[r];
        table.rows.push_back({static_cast<double>(r), round.state.fidelity(),
                              round.success_probability, round.cumulative_yield});
    }
    table.notes.push_back(std::string("converged: ") + (trace.converged ? "true" : "false"));
    return table;
}

Table run_cavity_sweep(const ExperimentConfig& config, ParamReader& reader) {
    const double g_min = reader.optional("g_min_mhz", 13.5, 0.1, 1000.0);
    const double g_max = reader.optional("g_max_mhz", 40.0, 0.1, 1000.0);
    const double g_step = reader.optional("g_step_mhz", 0.5, 1e-6, 1000.0);
    const double kappa = reader.optional("kappa_mhz", 2.4, 1e-6, 1000.0);
    const double gamma = reader.optional("gamma_mhz", 2.6, 0.0, 1000.0);
    const double t_us = reader.optional("t_us", 10.0, 1e-3, 1e4);
    const double eps = reader.optional("epsilon", 0.2, 1e-6, 1.0);
    const double samples = reader.optional("samples", 4096, 64, 1 << 20);
    const bool with_purified = reader.has("a_tilde");
    const double a_tilde = reader.optional("a_tilde", 1.0, 0.0, 1.0);
    reader.check_known({"g_min_mhz", "g_max_mhz", "g_step_mhz", "kappa_mhz", "gamma_mhz", "t_us",
                        "epsilon", "samples", "a_tilde"});
    if (!reader.ok()) return {};

    Table table;
    table.anchor = "cavity-povm-fidelity-sweep";
    table.columns = {"g_over_2pi_MHz", "F_POVM", "F_BSM"};
    if (with_purified) table.columns.push_back("purified_fidelity");

    const CavityParams base = CavityParams::from_mhz(g_min, kappa, gamma);
    const Pulse pulse = Pulse::gaussian(t_us, static_cast<int>(samples));
    const std::vector<double> gs = grid(g_min, g_max, g_step);
    table.rows = parallel_rows(gs.size(), config.threads, [&](size_t i) {
        CavityParams params = base;
        params.g = 2.0 * M_PI * gs[i];
        const PovmFidelityResult f = povm_fidelity(params, eps, pulse);
        std::vector<double> row{gs[i], f.average, f.average * f.average};
        if (with_purified) row.push_back(a_tilde * f.average * f.average);
        return row;
    });
    return table;
}

Table run_polarizer_design(const ExperimentConfig& config, ParamReader& reader) {
    const double n_slab = reader.optional("n_slab", 1.52, 1.0, 3.0);
    const double slabs = reader.optional("slabs", 4, 1, 64);
    const double theta_min = reader.require("theta_min_deg", 0.0, 89.999);
    const double theta_max = reader.require("theta_max_deg", 0.0, 89.999);
    const double theta_step = reader.require("theta_step_deg", 1e-9, 90.0);
    const bool with_target = reader.has("target_epsilon");
    const double target = reader.optional("target_epsilon", 0.2, 1e-9, 1.0);
    reader.check_known({"n_slab", "slabs", "theta_min_deg", "theta_max_deg", "theta_step_deg",
                        "target_epsilon"});
    if (!reader.ok()) return {};
    (void)config;

    Table table;
    table.anchor = "partial-polarizer-design";
    table.columns = {"theta_deg",      "amp_product_p", "amp_product_s", "epsilon_paper",
                     "T_p",            "T_s",           "epsilon_physical"};
    for (double deg : grid(theta_min, theta_max, theta_step)) {
        SlabStack stack{1.0, n_slab, static_cast<int>(slabs), deg * M_PI / 180.0};
        const Transmission t = stack_epsilon(stack);
        table.rows.push_back({deg, t.t_h_paper, t.t_v_paper, t.epsilon_paper, t.t_p_physical,
                              t.t_s_physical, t.epsilon_physical});
    }
    if (with_target) {
        const double theta = theta_for_epsilon(target, n_slab, static_cast<int>(slabs));
        table.notes.push_back("solved_theta_deg for target_epsilon " + format_value(target) +
                              ": " + format_value(theta * 180.0 / M_PI));
    }
    return table;
}

Table dispatch(const ExperimentConfig& config, std::vector<Diagnostic>* diags) {
    ParamReader reader(config, diags);
    if (config.experiment == "rank-two") return run_rank_two(config, reader);
    if (config.experiment == "distill-depolarizing")
        return run_distill(config, reader, ChannelFamily::Depolarizing);
    if (config.experiment == "distill-damping")
        return run_distill(config, reader, ChannelFamily::AmplitudeDamping);
    if (config.experiment == "distill-phase")
        return run_distill(config, reader, ChannelFamily::PhaseDamping);
    if (config.experiment == "recurrence") return run_recurrence(config, reader);
    if (config.experiment == "cavity-sweep") return run_cavity_sweep(config, reader);
    if (config.experiment == "polarizer-design") return run_polarizer_design(config, reader);
    if (diags)
        diags->push_back(Diagnostic{"experiment",
                                    "unknown experiment '" + config.experiment + "'"});
    return {};
}

}  // namespace

const std::vector<std::string>& list_experiments() {
    static const std::vector<std::string> names = {
        "distill-depolarizing", "distill-damping", "distill-phase", "rank-two",
        "recurrence",           "cavity-sweep",    "polarizer-design"};
    return names;
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig config;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        if (stripped.front() == '[' && stripped.back() == ']') {
            config.experiment = trim(stripped.substr(1, stripped.size() - 2));
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (key == "experiment")
            config.experiment = value;
        else if (key == "output")
            config.output_path = value;
        else if (key == "seed")
            config.seed = std::stoull(value);
        else if (key == "threads")
            config.threads = std::stoi(value);
        else
            config.params[key] = value;
    }
    if (config.experiment.empty()) throw ConfigError("config does not name an experiment");
    if (config.output_path.empty()) config.output_path = config.experiment + ".csv";
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::vector<Diagnostic> validate(const ExperimentConfig& config) {
    std::vector<Diagnostic> diags;
    dispatch(config, &diags);
    return diags;
}

void run(const ExperimentConfig& config) {
    std::vector<Diagnostic> diags;
    const Table table = dispatch(config, &diags);
    if (!diags.empty())
        throw ConfigError(diags.front().key + ": " + diags.front().message);

    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + config.output_path + "'");
    out << "# experiment: " << config.experiment << "\n";
    out << "# anchor: " << table.anchor << "\n";
    out << "# seed: " << config.seed << "\n";
    for (const auto& [key, value] : config.params) out << "# param " << key << " = " << value << "\n";
    for (const std::string& note : table.notes) out << "# " << note << "\n";
    for (size_t c = 0; c < table.columns.size(); ++c)
        out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c)
            out << format_value(row[c]) << (c + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

}  // namespace qpurify
