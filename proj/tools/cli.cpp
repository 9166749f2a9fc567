#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "catdiscord/csv.hpp"
#include "catdiscord/errors.hpp"
#include "catdiscord/model.hpp"
#include "catdiscord/scan.hpp"
#include "catdiscord/svg_plot.hpp"
#include "catdiscord/verify.hpp"

namespace catdiscord::cli {

namespace {

constexpr const char* kWorkerEnv = "CATDISCORD_WORKERS";

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not a number: " + s);
    return v;
}

int parse_int(const std::string& s) {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not an integer: " + s);
    return v;
}

bool parse_bool(const std::string& s) {
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw std::invalid_argument("not a boolean: " + s);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Output sink that is either the caller's stream or a file.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw std::ios_base::failure("cannot open '" + path + "' for writing");
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }
    void finish(const std::string& path) {
        stream_->flush();
        if (!*stream_) throw std::ios_base::failure("write to '" + path + "' failed");
    }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::string describe(const std::optional<double>& v, std::string_view why) {
    if (v) return io::format_number(*v);
    return why.empty() ? std::string("undefined") : std::string(why);
}

ScanConfig make_scan_config(const CliConfig& cfg) {
    ScanConfig sc;
    sc.params = ModelParams<double>(cfg.nbar, cfg.p, cfg.gamma);
    if (cfg.spacing) {
        if (*cfg.spacing == "linear") {
            sc.spacing = Spacing::Linear;
        } else if (*cfg.spacing == "log") {
            sc.spacing = Spacing::Log;
        } else {
            throw ParameterError("spacing must be 'linear' or 'log'");
        }
    } else {
        sc.spacing = default_spacing(cfg.nbar);
    }
    sc.gt_min = cfg.tmin.value_or(sc.spacing == Spacing::Log ? 1e-4 : 0.0);
    sc.gt_max = cfg.tmax;
    sc.points = cfg.points;
    sc.freeze_tol = cfg.freeze_tol;
    sc.workers = effective_workers(cfg.workers);
    sc.validate();
    return sc;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kParamError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kParamError;
    } catch (const TruncationError& e) {
        err << "error: " << e.what() << '\n';
        return kParamError;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kFormatError;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace

Sweep parse_sweep(const std::string& variable, const std::string& range) {
    if (variable != "nbar" && variable != "p") {
        throw std::invalid_argument("sweep variable must be 'nbar' or 'p'");
    }
    std::vector<std::string> parts;
    std::string item;
    std::istringstream ss(range);
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw std::invalid_argument("sweep range must look like a:b:n");
    Sweep s{variable, parse_double(parts[0]), parse_double(parts[1]), parse_int(parts[2])};
    if (s.count < 1) throw std::invalid_argument("sweep needs at least one point");
    return s;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
    std::map<std::string, std::string> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return entries;
}

void apply_config_entry(CliConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "nbar") cfg.nbar = parse_double(value);
    else if (key == "p") cfg.p = parse_double(value);
    else if (key == "gamma") cfg.gamma = parse_double(value);
    else if (key == "tmin") cfg.tmin = parse_double(value);
    else if (key == "tmax") cfg.tmax = parse_double(value);
    else if (key == "points") cfg.points = parse_int(value);
    else if (key == "spacing") cfg.spacing = value;
    else if (key == "freeze-tol" || key == "freeze_tol") cfg.freeze_tol = parse_double(value);
    else if (key == "out") cfg.out_path = value;
    else if (key == "format") cfg.format = value;
    else if (key == "truncation") cfg.truncation_override = parse_int(value);
    else if (key == "seed") cfg.seed = static_cast<unsigned>(parse_int(value));
    else if (key == "workers") cfg.workers = parse_int(value);
    else if (key == "t") cfg.t = parse_double(value);
    else if (key == "grid") cfg.grid = value;
    else if (key == "element-tol") cfg.element_tol = parse_double(value);
    else if (key == "random-states") cfg.random_states = parse_int(value);
    else if (key == "input") cfg.input_path = value;
    else if (key == "columns") cfg.columns = split_list(value);
    else if (key == "log-x" || key == "log_x") cfg.log_x = parse_bool(value);
    else if (key == "title") cfg.title = value;
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

int effective_workers(int requested) {
    int workers = requested;
    if (const char* env = std::getenv(kWorkerEnv)) {
        try {
            const int cap = parse_int(env);
            if (cap >= 1) workers = workers == 0 ? cap : std::min(workers, cap);
        } catch (const std::exception&) {
            // Unparsable cap: ignore it.
        }
    }
    return workers;
}

int run_scan(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ScanConfig sc = make_scan_config(cfg);
        if (cfg.format != "csv" && cfg.format != "svg") {
            throw ParameterError("format must be 'csv' or 'svg'");
        }
        const auto records = scan(sc);
        std::optional<RegimeSegmentation> seg;
        try {
            seg = segment_regimes(records, characteristic_times(sc.params), sc);
        } catch (const ResolutionError& e) {
            err << "note: " << e.what() << "; regime column left indeterminate\n";
        }

        std::ostringstream csv;
        io::write_scan_csv(csv, records, seg ? &*seg : nullptr);

        Sink sink(cfg.out_path, out);
        if (cfg.format == "csv") {
            sink.stream() << csv.str();
        } else {
            std::istringstream in(csv.str());
            io::PlotOptions opts;
            opts.y_columns = cfg.columns;
            opts.log_x = sc.spacing == Spacing::Log;
            opts.title = cfg.title;
            sink.stream() << io::render_svg(io::read_csv(in), opts);
        }
        sink.finish(cfg.out_path);
        return int(kOk);
    });
}

int run_regimes(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.sweep) {
            const Sweep& s = *cfg.sweep;
            Sink sink(cfg.out_path, out);
            auto& os = sink.stream();
            os << "nbar,p,t1,t2,dfs_span,ts,ts_numeric\n";
            for (int i = 0; i < s.count; ++i) {
                const double v = s.count == 1 ? s.lo : s.lo + (s.hi - s.lo) * i / (s.count - 1);
                const double nbar = s.variable == "nbar" ? v : cfg.nbar;
                const double p = s.variable == "p" ? v : cfg.p;
                const ModelParams<double> params(nbar, p, cfg.gamma);
                const auto times = characteristic_times(params);
                const auto numeric = locate_switch_time(params, std::max(6.0, times.t2 * cfg.gamma));
                const auto cell = [](const std::optional<double>& x) {
                    return x ? io::format_number(*x) : std::string();
                };
                std::optional<double> ts_numeric;
                if (numeric) ts_numeric = *numeric / cfg.gamma;
                os << io::format_number(nbar) << ',' << io::format_number(p) << ','
                   << cell(times.t1) << ',' << io::format_number(times.t2) << ','
                   << cell(times.dfs_span) << ',' << cell(times.ts) << ',' << cell(ts_numeric)
                   << '\n';
            }
            sink.finish(cfg.out_path);
            return int(kOk);
        }

        const ModelParams<double> params(cfg.nbar, cfg.p, cfg.gamma);
        const auto times = characteristic_times(params);
        const auto numeric = locate_switch_time(params, std::max(6.0, times.t2 * cfg.gamma));
        std::optional<double> ts_numeric;
        if (numeric) ts_numeric = *numeric / cfg.gamma;

        Sink sink(cfg.out_path, out);
        auto& os = sink.stream();
        os << "nbar = " << cfg.nbar << ", p = " << cfg.p << ", gamma = " << cfg.gamma << '\n';
        os << "quantity    time (1/gamma)\n";
        os << "t1          " << describe(times.t1, times.t1_note) << '\n';
        os << "t2          " << io::format_number(times.t2)
           << (times.mesoscopic_window ? "" : "  (no mesoscopic window)") << '\n';
        os << "dt          " << describe(times.dfs_span, times.t1_note) << '\n';
        os << "ts          " << describe(times.ts, times.ts_note) << '\n';
        os << "ts_numeric  "
           << describe(ts_numeric, "undefined (no basis switch found)") << '\n';
        sink.finish(cfg.out_path);
        return int(kOk);
    });
}

int run_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        if (cfg.nbar > 10) {
            err << "warning: nbar > 10 makes the dense two-mode oracle large ("
                << oracle::default_truncation(cfg.nbar) + 1 << "^2 basis states)\n";
        }
        if (cfg.eta_identity) {
            const ModelParams<double> params(cfg.nbar, cfg.p, cfg.gamma);
            const int n = cfg.truncation_override.value_or(oracle::default_truncation(cfg.nbar));
            const double e = oracle::channel_identity_error(params, n);
            out << "channel identity (eta = 1): max deviation " << io::format_number(e) << '\n';
            if (!(e < 1e-12)) {
                out << "FAIL: identity channel changed the state\n";
                return kToleranceError;
            }
            out << "PASS\n";
            return kOk;
        }

        oracle::VerifyGrid grid;
        if (cfg.t) {
            grid = {{cfg.nbar}, {cfg.p}, {*cfg.t * cfg.gamma}};
        } else if (cfg.grid != "default") {
            throw ParameterError("unknown verify grid '" + cfg.grid + "' (only 'default')");
        }
        for (double nbar : grid.nbar) ModelParams<double>(nbar, grid.p.front());
        for (double p : grid.p) ModelParams<double>(grid.nbar.front(), p);

        oracle::VerifyOptions opts;
        opts.truncation = cfg.truncation_override;
        if (cfg.element_tol) opts.tolerances.matrix_element = *cfg.element_tol;
        const auto summary = oracle::verify_grid(grid, opts);

        out << "points checked        " << summary.points.size() << '\n'
            << "max element error     " << io::format_number(summary.max_element_error)
            << "  (tol " << opts.tolerances.matrix_element << ")\n"
            << "max leakage           " << io::format_number(summary.max_leakage)
            << "  (tol 1e-10)\n"
            << "max non-X element     " << io::format_number(summary.max_non_x) << '\n'
            << "max discord gap       " << io::format_number(summary.max_discord_gap)
            << "  (tol 1e-06)\n";

        if (cfg.seed) {
            std::mt19937_64 rng(*cfg.seed);
            double worst = 0;
            int above = 0;
            for (int i = 0; i < cfg.random_states; ++i) {
                const auto x = oracle::random_real_xstate(rng);
                const double gap = oracle::brute_force_classical(x).value -
                                   classical_correlations(x).value;
                worst = std::max(worst, gap);
                if (gap > opts.tolerances.discord_gap) ++above;
            }
            out << "random X-states       " << cfg.random_states << " (seed " << *cfg.seed
                << "): max gap " << io::format_number(worst) << ", " << above
                << " above 1e-06 (reported only)\n";
        }

        if (!summary.passed()) {
            const auto& f = *summary.first_failure;
            out << "FAIL at nbar=" << io::format_number(f.nbar) << " p=" << io::format_number(f.p)
                << " gt=" << io::format_number(f.gt) << ": " << summary.failure_reason << '\n';
            return kToleranceError;
        }
        out << "PASS\n";
        return kOk;
    });
}

int run_plot(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.input_path.empty()) throw ParameterError("plot needs --input");
        std::ifstream in(cfg.input_path, std::ios::binary);
        if (!in) throw std::ios_base::failure("cannot read '" + cfg.input_path + "'");
        const auto table = io::read_csv(in);
        io::PlotOptions opts;
        opts.y_columns = cfg.columns;
        opts.log_x = cfg.log_x;
        opts.title = cfg.title;
        const std::string svg = io::render_svg(table, opts);
        Sink sink(cfg.out_path, out);
        sink.stream() << svg;
        sink.finish(cfg.out_path);
        return int(kOk);
    });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig cfg;

    // Config file first, so command-line flags parsed below override it.
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        std::string path;
        if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
        if (path.empty()) continue;
        try {
            for (const auto& [key, value] : read_config_file(path)) {
                apply_config_entry(cfg, key, value);
            }
        } catch (const std::invalid_argument& e) {
            err << "error: " << path << ": " << e.what() << '\n';
            return kParamError;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kIoError;
        }
    }

    CLI::App app{"Correlation dynamics of two damped entangled cat-state modes"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "key=value file; command-line flags take precedence");

    const auto add_model = [&](CLI::App* sub) {
        sub->add_option("--nbar", cfg.nbar, "mean photon number per mode");
        sub->add_option("--p", cfg.p, "weight of the psi-type component");
        sub->add_option("--gamma", cfg.gamma, "cavity decay rate");
        sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    };

    auto* scan_cmd = app.add_subcommand("scan", "time sweep written as CSV (or SVG)");
    add_model(scan_cmd);
    scan_cmd->add_option("--tmin", cfg.tmin, "first gamma*t (default 0, or 1e-4 for log)");
    scan_cmd->add_option("--tmax", cfg.tmax, "last gamma*t");
    scan_cmd->add_option("--points", cfg.points, "number of grid points");
    scan_cmd->add_option("--spacing", cfg.spacing, "linear or log (default log when nbar >= 5)");
    scan_cmd->add_option("--freeze-tol", cfg.freeze_tol, "freezing tolerance in bits");
    scan_cmd->add_option("--format", cfg.format, "csv or svg");
    scan_cmd->add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
    std::string columns;
    scan_cmd->add_option("--columns", columns, "columns plotted with --format svg");

    auto* regimes_cmd = app.add_subcommand("regimes", "characteristic times t1, t2, dt, ts");
    add_model(regimes_cmd);
    std::vector<std::string> sweep_args;
    regimes_cmd->add_option("--sweep", sweep_args, "nbar|p a:b:n, emits CSV")->expected(2);

    auto* verify_cmd = app.add_subcommand("verify", "Fock-space oracle comparison");
    add_model(verify_cmd);
    verify_cmd->add_option("--t", cfg.t, "single time point (units 1/gamma)");
    verify_cmd->add_option("--grid", cfg.grid, "named verification grid");
    verify_cmd->add_flag("--eta-identity", cfg.eta_identity, "check the eta = 1 channel");
    verify_cmd->add_option("--element-tol", cfg.element_tol, "matrix-element tolerance");
    verify_cmd->add_option("--truncation", cfg.truncation_override, "photon-number cutoff");
    verify_cmd->add_option("--seed", cfg.seed, "also sweep random X-states with this seed");
    verify_cmd->add_option("--random-states", cfg.random_states, "random X-states to sweep");

    auto* plot_cmd = app.add_subcommand("plot", "SVG line plot of a scan CSV");
    plot_cmd->add_option("--input", cfg.input_path, "scan CSV");
    plot_cmd->add_option("--out", cfg.out_path, "output SVG (default stdout)");
    plot_cmd->add_option("--columns", columns, "comma-separated columns (default I,C,D)");
    plot_cmd->add_flag("--log-x", cfg.log_x, "logarithmic time axis");
    plot_cmd->add_option("--title", cfg.title, "plot title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int(kOk) : int(kParamError);
    }

    try {
        if (!columns.empty()) cfg.columns = split_list(columns);
        if (!sweep_args.empty()) cfg.sweep = parse_sweep(sweep_args[0], sweep_args[1]);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kParamError;
    }

    if (scan_cmd->parsed()) return run_scan(cfg, out, err);
    if (regimes_cmd->parsed()) return run_regimes(cfg, out, err);
    if (verify_cmd->parsed()) return run_verify(cfg, out, err);
    return run_plot(cfg, out, err);
}

}  // namespace catdiscord::cli
