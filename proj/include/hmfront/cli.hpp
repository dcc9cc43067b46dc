#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hmfront/bvp.hpp"

namespace hmfront::cli {

inline constexpr int kSchemaVersion = 1;

/// Exit codes; every nonzero exit is preceded by one `error:` line on stderr.
enum ExitCode : int {
    ok = 0,
    criteria_failed = 1,
    usage = 2,
    solver_failed = 3,
    margin = 4,
    io = 5,
};

/// Effective configuration of one run, echoed into every output header.
struct RunConfig {
    std::string command;
    double c = 0.0;
    double cmin = -1.0, cmax = 1.0, dc = 0.5;
    double eps = 1e-3;
    double delta = 0.1;
    std::optional<double> xmin, xmax;
    double h = kDefaultSpacing;
    double tol = 1e-10;
    std::string out;  // empty writes to stdout
    bool spectrum = false;
    std::string seed_file;
    int k = 3;
    double dt = 0.01, t_end = 200.0;
    std::string scheme = "cn";
    double amplitude = 1e-3;
    double omega0_shift = 0.0;
    std::vector<int> criteria;

    /// `key=value` lines for the keys that matter to `command`, in a form the
    /// config reader accepts back.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

class CliError : public std::runtime_error {
public:
    CliError(ExitCode code, std::string kind, const std::string& what)
        : std::runtime_error(what), code_(code), kind_(std::move(kind)) {}
    ExitCode code() const { return code_; }
    const std::string& kind() const { return kind_; }

private:
    ExitCode code_;
    std::string kind_;
};

/// A parsed output file: `# key=value` header lines and numeric rows.
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::optional<std::string> get(const std::string& key) const;
    std::size_t column(const std::string& name) const;  // throws CliError if missing
};

void write_csv(std::ostream& os, const RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& header,
               const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows);

/// Throws CliError(io) unless the first line is `# schema_version=1`.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

/// Profile from a `solve` output file.
FrontProfile read_profile(const std::string& path);

/// 17 significant digits.
std::string format_number(double v);

/// Runs one command line. Output files go to cfg.out or `out`; diagnostics and
/// the machine-readable error line go to `err`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hmfront::cli
