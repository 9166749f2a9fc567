#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace catdiscord::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kParamError = 1,
    kIoError = 2,
    kToleranceError = 3,
    kFormatError = 4,
};

struct Sweep {
    std::string variable;  // "nbar" or "p"
    double lo{0};
    double hi{0};
    int count{0};
};

struct CliConfig {
    std::string command;
    double nbar{10};
    double p{0.3};
    double gamma{1};
    std::optional<double> tmin;
    double tmax{6};
    int points{400};
    std::optional<std::string> spacing;  // "linear" | "log"; default depends on nbar
    double freeze_tol{2e-3};
    std::string out_path;                // empty or "-" -> stdout
    std::string format{"csv"};           // "csv" | "svg"
    std::optional<int> truncation_override;
    std::optional<unsigned> seed;
    int workers{0};                      // 0 -> hardware concurrency, capped by env

    // regimes
    std::optional<Sweep> sweep;
    // verify
    std::optional<double> t;
    std::string grid{"default"};
    std::optional<double> element_tol;
    bool eta_identity{false};
    int random_states{200};
    // plot
    std::string input_path;
    std::vector<std::string> columns{"I", "C", "D"};
    bool log_x{false};
    std::string title;
};

/// Parses "a:b:n" into a sweep over `variable`. Throws std::invalid_argument.
Sweep parse_sweep(const std::string& variable, const std::string& range);

/// Reads a key=value file ('#' comments, blank lines ignored).
/// Throws std::runtime_error if unreadable or a line lacks '='.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Applies one config-file entry. Throws std::invalid_argument for unknown keys
/// or unparsable values.
void apply_config_entry(CliConfig& cfg, const std::string& key, const std::string& value);

/// Worker count after applying the CATDISCORD_WORKERS cap.
int effective_workers(int requested);

int run_scan(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_regimes(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_plot(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: parse, then dispatch to the run_* function.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace catdiscord::cli
