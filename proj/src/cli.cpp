#include "hmfront/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include "hmfront/acceptance.hpp"
#include "hmfront/continuation.hpp"
#include "hmfront/diagnostics.hpp"
#include "hmfront/evolve.hpp"
#include "hmfront/newton.hpp"
#include "hmfront/specialfns.hpp"
#include "hmfront/spectrum.hpp"

namespace hmfront::cli {

namespace {

constexpr double kMargin = 5.0;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Plain key=value lines, plus the `# config.key=value` lines echoed into
// output files so that any output can be fed back as a config.
class HeaderConfig : public CLI::ConfigBase {
public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::stringstream kept;
        std::string line;
        while (std::getline(input, line)) {
            const std::string t = trim(line);
            if (t.rfind("# config.", 0) == 0) {
                kept << t.substr(9) << '\n';
            } else if (!t.empty() && t[0] != '#' && t.find('=') != std::string::npos) {
                kept << t << '\n';
            }
        }
        return CLI::ConfigBase::from_config(kept);
    }
};

SolverConfig solver_config(const RunConfig& rc) {
    SolverConfig sc;
    sc.tol_residual = rc.tol;
    return sc;
}

ContinuationConfig continuation_config(const RunConfig& rc) {
    ContinuationConfig cc;
    cc.h = rc.h;
    cc.delta = rc.delta;
    return cc;
}

const FrontProfile& point_at(const Branch& b, double c) {
    for (const BranchPoint& p : b.points) {
        if (p.c == c) return p.profile;
    }
    std::string why = b.failures.empty() ? "" : ": " + b.failures.back().second;
    throw CliError(solver_failed, "continuation",
                   "continuation stopped at c = " + format_number(b.last_good_c) + why);
}

void check_margin(const FrontProfile& p, double delta) {
    const double xd = front_position(p, delta);
    if (xd - p.grid.x_min() < kMargin || p.grid.x_max() - xd < kMargin) {
        throw CliError(margin, "margin",
                       "interface x_delta = " + format_number(xd) + " is within " + format_number(kMargin) +
                           " of the domain [" + format_number(p.grid.x_min()) + ", " + format_number(p.grid.x_max()) +
                           "]");
    }
}

FrontProfile front_for(const RunConfig& rc) {
    const SolverConfig sc = solver_config(rc);
    const ContinuationConfig cc = continuation_config(rc);
    const BoundaryClosure bc;
    FrontProfile p;
    if (!rc.seed_file.empty()) {
        FrontProfile s = read_profile(rc.seed_file);
        if (std::abs(s.grid.h() - rc.h) > 1e-12 * rc.h) {
            s = reinterpolate(s, Grid::on_lattice(s.grid.x_min(), s.grid.x_max(), rc.h));
        }
        s = solve(s, bc, sc).first;
        p = s.c == rc.c ? s : point_at(continue_branch(s, rc.c, 0.5, sc, cc), rc.c);
    } else {
        p = front_at(rc.c, sc, cc);
    }
    if (rc.xmin || rc.xmax) {
        const double lo = rc.xmin.value_or(p.grid.x_min());
        const double hi = rc.xmax.value_or(p.grid.x_max());
        if (!(lo < hi)) throw CliError(usage, "config", "xmin must be below xmax");
        check_margin(reinterpolate(p, Grid::on_lattice(lo, hi, rc.h)), rc.delta);
        p = solve(reinterpolate(p, Grid::on_lattice(lo, hi, rc.h)), bc, sc).first;
    }
    check_margin(p, rc.delta);
    return p;
}

struct Output {
    std::ofstream file;
    std::ostream* os;
    Output(const RunConfig& rc, std::ostream& fallback) : os(&fallback) {
        if (rc.out.empty()) return;
        file.open(rc.out);
        if (!file) throw CliError(io, "io", "cannot open " + rc.out + " for writing");
        os = &file;
    }
};

std::pair<std::string, std::string> kv(const std::string& k, double v) { return {k, format_number(v)}; }

double alpha_plus_of(const FrontProfile& p) {
    try {
        return fit_tail_coefficients(p).alpha_plus;
    } catch (const std::exception&) {
        return kNaN;
    }
}

int cmd_solve(const RunConfig& rc, std::ostream& out) {
    const FrontProfile p = front_for(rc);
    const FrontDiagnostics d = diagnose(p, rc.delta);
    TailFit f;
    f.alpha_plus = f.alpha_minus = kNaN;
    try {
        f = fit_tail_coefficients(p);
    } catch (const std::exception&) {
        // tail windows fall outside short or strongly drifted domains
    }
    std::string cross;
    for (double x : d.crossing_points) cross += (cross.empty() ? "" : " ") + format_number(x);
    std::vector<std::pair<std::string, std::string>> hdr{
        kv("c", p.c),
        kv("h", p.grid.h()),
        {"domain", format_number(p.grid.x_min()) + " " + format_number(p.grid.x_max())},
        kv("residual_norm", p.residual_norm),
        kv("alpha_plus", f.alpha_plus),
        kv("alpha_minus", f.alpha_minus),
        kv("x_delta", d.x_delta),
        {"crossings", cross},
        kv("u_at_zero", d.u_at_zero),
    };
    if (rc.spectrum) hdr.push_back(kv("lambda0", leading_eigenvalues(p, 1).eigenvalues[0]));
    const std::vector<double> r = residual(p, BoundaryClosure{});
    std::vector<std::vector<double>> rows;
    rows.reserve(p.u.size());
    for (std::size_t i = 0; i < p.u.size(); ++i) rows.push_back({p.grid.x(i), p.u[i], r[i]});
    Output o(rc, out);
    write_csv(*o.os, rc, hdr, {"x", "u", "residual"}, rows);
    return ok;
}

std::vector<double> lattice(double lo, double hi, double dc) {
    std::vector<double> out;
    const auto k0 = static_cast<long>(std::ceil(lo / dc - 1e-9));
    const auto k1 = static_cast<long>(std::floor(hi / dc + 1e-9));
    for (long k = k0; k <= k1; ++k) out.push_back(static_cast<double>(k) * dc);
    return out;
}

int cmd_branch(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    if (!(rc.cmin < rc.cmax)) throw CliError(usage, "config", "cmin must be below cmax");
    if (!(rc.dc > 0.0)) throw CliError(usage, "config", "dc must be positive");
    const SolverConfig sc = solver_config(rc);
    const ContinuationConfig cc = continuation_config(rc);
    const FrontProfile seed = hastings_mcleod_seed(sc, rc.h);

    std::vector<double> up, down;
    for (double c : lattice(rc.cmin, rc.cmax, rc.dc)) {
        if (c > 0.0) up.push_back(c);
        if (c < 0.0) down.insert(down.begin(), c);
    }
    if (rc.cmax > 0.0 && (up.empty() || up.back() < rc.cmax)) up.push_back(rc.cmax);
    if (rc.cmin < 0.0 && (down.empty() || down.back() > rc.cmin)) down.push_back(rc.cmin);
    const double step = std::min(0.5, rc.dc);
    Branch lo, hi;
    lo.direction = Branch::Direction::decreasing_c;
    lo.points.push_back({0.0, seed, {}});
    hi.points.push_back({0.0, seed, {}});
    if (!down.empty()) lo = continue_through(seed, down, step, sc, cc);
    if (!up.empty()) hi = continue_through(seed, up, step, sc, cc);
    const Branch b = merge_branches(lo, hi);

    std::vector<std::vector<double>> rows;
    for (const BranchPoint& bp : b.points) {
        if (bp.c < rc.cmin - 1e-12 || bp.c > rc.cmax + 1e-12) continue;
        const FrontDiagnostics d = diagnose(bp.profile, rc.delta);
        double lambda0 = kNaN;
        try {
            lambda0 = leading_eigenvalues(bp.profile, 1).eigenvalues[0];
        } catch (const std::exception&) {
        }
        rows.push_back({bp.c, d.u_at_zero, d.x_delta, static_cast<double>(d.crossing_points.size()), lambda0,
                        alpha_plus_of(bp.profile)});
    }
    const bool failed = lo.terminated_early || hi.terminated_early;
    std::vector<std::pair<std::string, std::string>> hdr{
        {"points", std::to_string(rows.size())},
        {"complete", failed ? "false" : "true"},
    };
    {
        Output o(rc, out);
        write_csv(*o.os, rc, hdr, {"c", "u_at_zero", "x_delta", "crossing_count", "lambda0", "alpha_plus"}, rows);
    }
    if (!failed) return ok;

    std::ostringstream log;
    for (const Branch* part : {&lo, &hi}) {
        for (const auto& [c, why] : part->failures) log << "c=" << format_number(c) << " " << why << '\n';
    }
    if (rc.out.empty()) {
        err << log.str();
    } else {
        std::ofstream f(rc.out + ".failures.log");
        f << log.str();
    }
    throw CliError(solver_failed, "continuation",
                   "branch stopped early (down to " + format_number(lo.last_good_c) + ", up to " +
                       format_number(hi.last_good_c) + "); partial branch written");
}

int cmd_spectrum(const RunConfig& rc, std::ostream& out) {
    const FrontProfile p = front_for(rc);
    const SpectrumReport s = leading_eigenvalues(p, rc.k);
    std::vector<std::pair<std::string, std::string>> hdr{
        kv("c", p.c),
        kv("potential_min", s.potential_min),
        kv("potential_argmin", s.potential_argmin),
        kv("ground_state_min", s.ground_state_min),
        kv("max_rayleigh_residual", s.max_rayleigh_residual),
    };
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < s.eigenvalues.size(); ++j) rows.push_back({static_cast<double>(j), s.eigenvalues[j]});
    Output o(rc, out);
    write_csv(*o.os, rc, hdr, {"j", "lambda"}, rows);
    return ok;
}

int cmd_evolve(const RunConfig& rc, std::ostream& out) {
    if (rc.scheme != "cn" && rc.scheme != "euler") throw CliError(usage, "config", "scheme must be cn or euler");
    const FrontProfile p = front_for(rc);
    const double lambda0 = leading_eigenvalues(p, 1).eigenvalues[0];
    FrontProfile init = p;
    const std::vector<double> b = bump(p.grid, front_position(p, rc.delta), 2.0);
    for (std::size_t i = 0; i < b.size(); ++i) init.u[i] += rc.amplitude * b[i];
    EvolveConfig ec;
    ec.c = rc.c;
    ec.dt = rc.dt;
    ec.t_end = rc.t_end;
    ec.scheme = rc.scheme == "cn" ? Scheme::imex_cn : Scheme::imex_euler;
    const EvolveResult er = evolve(init, ec, p.u);
    std::vector<std::pair<std::string, std::string>> hdr{
        kv("c", p.c),
        kv("lambda0", lambda0),
        kv("measured_rate", er.measured_rate),
        kv("fit_t_lo", er.fit_t_lo),
        kv("fit_t_hi", er.fit_t_hi),
        {"steps", std::to_string(er.steps)},
    };
    std::vector<std::vector<double>> rows;
    for (const auto& [t, d] : er.deviation_history) rows.push_back({t, d});
    Output o(rc, out);
    write_csv(*o.os, rc, hdr, {"t", "deviation"}, rows);
    return ok;
}

int cmd_compare_tanh(const RunConfig& rc, std::ostream& out) {
    if (!(rc.eps > 0.0 && rc.eps <= 0.1)) throw CliError(usage, "config", "eps must lie in (0, 0.1]");
    const double e13 = std::cbrt(rc.eps);
    const FrontProfile inner = front_at(rc.c / e13, solver_config(rc), continuation_config(rc));
    InnerScalingOptions io;
    io.delta = rc.delta;
    io.h_inner = rc.h;
    io.solver = solver_config(rc);
    const InnerScalingReport r = compare_inner_scaling(rc.eps, rc.c, inner, io);
    std::vector<std::pair<std::string, std::string>> hdr{
        kv("eps", r.eps),
        kv("c", r.c),
        kv("c_scaled", r.c_scaled),
        kv("sup_gap", r.sup_gap),
        kv("x_delta_tanh", r.x_delta_tanh),
        kv("x_delta_inner_scaled", r.x_delta_inner_scaled),
        kv("interface_gap", r.interface_gap),
    };
    std::vector<std::vector<double>> rows;
    for (const OverlayRow& row : r.rows) rows.push_back({row.x, row.u_tanh, row.u_inner_scaled, row.gap});
    Output o(rc, out);
    write_csv(*o.os, rc, hdr, {"x", "u_tanh", "u_inner_scaled", "gap"}, rows);
    return ok;
}

int cmd_validate(const RunConfig& rc, std::ostream& out) {
    AcceptanceOptions opt;
    opt.h = rc.h;
    opt.omega0_shift = rc.omega0_shift;
    opt.only = rc.criteria;
    bool all = true;
    for (int id = 1; id <= kCriterionCount; ++id) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
        const CriterionResult r = run_criterion(id, opt);
        out << format_result(r) << std::endl;
        all = all && r.passed;
    }
    return all ? ok : criteria_failed;
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> e;
    auto num = [&](const char* k, double v) { e.emplace_back(k, format_number(v)); };
    const bool front = command == "solve" || command == "spectrum" || command == "evolve";
    if (front || command == "compare-tanh") num("c", c);
    if (command == "branch") {
        num("cmin", cmin);
        num("cmax", cmax);
        num("dc", dc);
    }
    if (command == "compare-tanh") num("eps", eps);
    num("delta", delta);
    if (front && xmin) num("xmin", *xmin);
    if (front && xmax) num("xmax", *xmax);
    num("h", h);
    num("tol", tol);
    if (command == "solve") e.emplace_back("spectrum", spectrum ? "true" : "false");
    if (front && !seed_file.empty()) e.emplace_back("seed-file", quoted(seed_file));
    if (command == "spectrum") e.emplace_back("k", std::to_string(k));
    if (command == "evolve") {
        num("dt", dt);
        num("t-end", t_end);
        e.emplace_back("scheme", scheme);
        num("amplitude", amplitude);
    }
    return e;
}

std::optional<std::string> CsvTable::get(const std::string& key) const {
    for (const auto& [k, v] : header) {
        if (k == key) return v;
    }
    return std::nullopt;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw CliError(io, "io", "missing column " + name);
}

void write_csv(std::ostream& os, const RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& header,
               const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows) {
    os << "# schema_version=" << kSchemaVersion << '\n';
    os << "# command=" << cfg.command << '\n';
    for (const auto& [k, v] : cfg.echo()) os << "# config." << k << '=' << v << '\n';
    for (const auto& [k, v] : header) os << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
    if (!os) throw CliError(io, "io", "write failed");
}

CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    if (!std::getline(is, line) || trim(line).rfind("# schema_version=", 0) != 0) {
        throw CliError(io, "schema", "not a versioned output file (missing schema_version header)");
    }
    const std::string version = trim(line).substr(17);
    if (version != std::to_string(kSchemaVersion)) {
        throw CliError(io, "schema", "unsupported schema_version " + version);
    }
    while (std::getline(is, line)) {
        const std::string s = trim(line);
        if (s.empty()) continue;
        if (s[0] == '#') {
            const std::string body = trim(s.substr(1));
            const auto eq = body.find('=');
            if (eq != std::string::npos) t.header.emplace_back(body.substr(0, eq), body.substr(eq + 1));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
        if (t.columns.empty()) {
            t.columns = std::move(cells);
            continue;
        }
        if (cells.size() != t.columns.size()) throw CliError(io, "io", "ragged row: " + s);
        std::vector<double> row;
        for (const std::string& c : cells) {
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (end == c.c_str() || *end != '\0') throw CliError(io, "io", "bad number '" + c + "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CliError(io, "io", "cannot open " + path);
    return read_csv(f);
}

FrontProfile read_profile(const std::string& path) {
    const CsvTable t = read_csv_file(path);
    const auto c = t.get("c");
    const auto h = t.get("h");
    if (!c || !h || t.rows.size() < 9) throw CliError(io, "io", path + " is not a profile file");
    const std::size_t ix = t.column("x"), iu = t.column("u");
    FrontProfile p;
    p.c = std::stod(*c);
    p.grid = Grid::on_lattice(t.rows.front()[ix], t.rows.back()[ix], std::stod(*h));
    if (p.grid.size() != t.rows.size()) throw CliError(io, "io", path + ": rows do not match the grid spacing");
    for (const auto& row : t.rows) p.u.push_back(row[iu]);
    return p;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    CLI::App app{"Admissible fronts of u'' + c u' - x u - u^3 = 0"};
    app.set_help_flag("--help", "print this help");  // -h would clash with --h
    app.config_formatter(std::make_shared<HeaderConfig>());
    app.set_config("--config", "", "key=value file, or an earlier output file to rerun");
    app.add_option("--c", rc.c, "drift");
    app.add_option("--cmin", rc.cmin, "branch lower end");
    app.add_option("--cmax", rc.cmax, "branch upper end");
    app.add_option("--dc", rc.dc, "branch row spacing");
    app.add_option("--eps", rc.eps, "ramp scale for compare-tanh");
    app.add_option("--delta", rc.delta, "interface level");
    app.add_option_function<double>("--xmin", [&](const double& v) { rc.xmin = v; }, "left end of the domain");
    app.add_option_function<double>("--xmax", [&](const double& v) { rc.xmax = v; }, "right end of the domain");
    app.add_option("--h", rc.h, "grid spacing");
    app.add_option("--tol", rc.tol, "Newton residual tolerance (max norm)");
    app.add_option("--out", rc.out, "output file (default stdout)");
    app.add_flag("--spectrum", rc.spectrum, "add lambda0 to the solve header");
    app.add_option("--seed-file", rc.seed_file, "profile file used as the starting point");
    app.add_option("--k", rc.k, "number of eigenvalues");
    app.add_option("--dt", rc.dt, "time step");
    app.add_option("--t-end", rc.t_end, "final time");
    app.add_option("--scheme", rc.scheme, "cn or euler");
    app.add_option("--amplitude", rc.amplitude, "perturbation amplitude");
    app.add_option("--omega0-shift", rc.omega0_shift, "added to Omega0 in the front-delay check");
    app.add_option("--criterion", rc.criteria, "acceptance criteria to run (default all)");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"solve", "front at one c, written as x,u,residual"},
        {"branch", "continuation over [cmin, cmax]"},
        {"spectrum", "leading eigenvalues of the linearization"},
        {"evolve", "decay of a perturbed front"},
        {"compare-tanh", "tanh-ramp front against the scaled linear-ramp front"},
        {"validate", "acceptance suite"},
    };
    for (const auto& [name, desc] : commands) app.add_subcommand(name, desc)->fallthrough();
    app.require_subcommand(1);

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: command=" << " kind=usage exit=" << usage << " message=" << quoted(e.what()) << '\n';
        return usage;
    }
    rc.command = app.get_subcommands().front()->get_name();

    try {
        if (!(rc.h > 0.0) || !(rc.tol > 0.0)) throw CliError(usage, "config", "h and tol must be positive");
        if (!(rc.delta > 0.0)) throw CliError(usage, "config", "delta must be positive");
        if (rc.command == "solve") return cmd_solve(rc, out);
        if (rc.command == "branch") return cmd_branch(rc, out, err);
        if (rc.command == "spectrum") return cmd_spectrum(rc, out);
        if (rc.command == "evolve") return cmd_evolve(rc, out);
        if (rc.command == "compare-tanh") return cmd_compare_tanh(rc, out);
        return cmd_validate(rc, out);
    } catch (const CliError& e) {
        err << "error: command=" << rc.command << " kind=" << e.kind() << " exit=" << e.code()
            << " message=" << quoted(e.what()) << '\n';
        return e.code();
    } catch (const SolverError& e) {
        err << "error: command=" << rc.command << " kind=" << to_string(e.kind()) << " exit=" << solver_failed
            << " message=" << quoted(e.what()) << '\n';
        return solver_failed;
    } catch (const std::exception& e) {
        err << "error: command=" << rc.command << " kind=runtime exit=" << solver_failed
            << " message=" << quoted(e.what()) << '\n';
        return solver_failed;
    }
}

}  // namespace hmfront::cli
