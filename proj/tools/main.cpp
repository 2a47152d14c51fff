// Command-line interface: validate spray configs, compute sim-values,
// complex dimensions, tube-formula and oracle volumes, and cross-validation
// sweeps. Exit codes: 0 success, 1 validation failure, 2 solver error,
// 3 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gds/config.hpp"
#include "gds/oracle.hpp"
#include "gds/report.hpp"
#include "gds/spectral.hpp"
#include "gds/tube_formula.hpp"

namespace {

using namespace gds;

SprayConfig load_checked(const std::string& path) {
    SprayConfig config = load_spray_config(path);
    ValidationReport report = validate_spray(config);
    if (!report.ok()) {
        for (const std::string& v : report.violations) std::cerr << "violation: " << v << "\n";
        std::cerr << "INVALID (" << report.violations.size() << " violation"
                  << (report.violations.size() == 1 ? "" : "s") << ")\n";
        std::exit(1);
    }
    return config;
}

DimensionOptions dimension_options(const SprayConfig& config, const std::string& method) {
    DimensionOptions opts;
    opts.tol = config.settings.dims_tol;
    opts.delta = config.settings.delta;
    opts.lattice_tol = config.settings.lattice_tol;
    opts.max_denominator = config.settings.max_denominator;
    if (method == "lattice") opts.method = DimensionMethod::lattice;
    if (method == "generic") opts.method = DimensionMethod::generic;
    return opts;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw SolverError(ErrorCode::parse_error, "cannot write \"" + out_path + "\"");
    out << text;
}

int run_validate(const std::string& path) {
    SprayConfig config = load_spray_config(path);
    ValidationReport report = validate_spray(config);
    if (!report.ok()) {
        for (const std::string& v : report.violations) std::cout << "violation: " << v << "\n";
        std::cout << "INVALID (" << report.violations.size() << " violation"
                  << (report.violations.size() == 1 ? "" : "s") << ")\n";
        return 1;
    }
    std::cout << "OK: " << config.graph.vertex_count() << " vertices, "
              << config.graph.edges().size() << " edges, n = "
              << config.graph.space_dimension() << "\n";
    return 0;
}

int run_simvalue(const std::string& path) {
    SprayConfig config = load_checked(path);
    const SimValue sv = sim_value(config.graph, config.settings.sim_tol);
    std::cout << "D = " << format_full(sv.value) << "\n";
    std::cout << "rho_residual = " << format_full(sv.rho_residual) << "\n";
    std::cout << "bracket_width = " << format_full(sv.bracket_width) << "\n";
    return 0;
}

int run_dims(const std::string& path, double height, const std::string& method,
             const std::string& out_path) {
    SprayConfig config = load_checked(path);
    ZetaSystem zs(config.graph, config.profiles);
    const ComplexDimensionSet dims = zs.find_dimensions(height, dimension_options(config, method));
    emit(dims_json(dims), out_path);
    return 0;
}

int run_tube(const std::string& path, double eps, bool height_set, double height_value) {
    SprayConfig config = load_checked(path);
    ZetaSystem zs(config.graph, config.profiles);
    const double t = height_set ? height_value : config.settings.truncation_height;
    const ComplexDimensionSet dims = zs.find_dimensions(t, dimension_options(config, "auto"));
    const TubeFormulaResult result = tube_volume_formula(zs, dims, eps, t);

    std::printf("%-14s %-14s %-16s %s\n", "Re(pole)", "Im(pole)", "contribution", "paired");
    for (const PoleContribution& c : result.contributions)
        std::printf("%-14s %-14s %-16s %s\n", format_human(c.pole.real()).c_str(),
                    format_human(c.pole.imag()).c_str(), format_human(c.combined).c_str(),
                    c.conjugate_paired ? "conj-pair" : "-");
    std::cout << "value = " << format_full(result.value) << "\n";
    std::cout << "truncation_height = " << format_full(result.truncation_height) << "\n";
    std::cout << "validity_bound = " << format_full(zs.validity_bound()) << "\n";
    std::cout << "within_validity_bound = " << (result.within_validity_bound ? "true" : "false")
              << "\n";
    return 0;
}

int run_oracle(const std::string& path, double eps) {
    SprayConfig config = load_checked(path);
    OracleOptions opts;
    opts.path_cap = config.settings.path_cap;
    opts.lattice_grouping = config.settings.lattice_grouping;
    opts.sim_tol = config.settings.sim_tol;
    Oracle oracle(config.graph, config.profiles, opts);
    const OracleResult result = oracle.tube_volume(eps);
    for (int u = 0; u < config.graph.vertex_count(); ++u)
        std::cout << "V[\"" << config.graph.vertex_name(u)
                  << "\"] = " << format_full(result.per_vertex[u]) << "\n";
    std::cout << "V = " << format_full(result.combined) << "\n";
    std::cout << "paths_expanded = " << result.paths_expanded << "\n";
    return 0;
}

std::vector<SweepRow> build_sweep(const SprayConfig& config, const std::vector<double>& grid,
                                  double height) {
    ZetaSystem zs(config.graph, config.profiles);
    OracleOptions opts;
    opts.path_cap = config.settings.path_cap;
    opts.lattice_grouping = config.settings.lattice_grouping;
    opts.sim_tol = config.settings.sim_tol;
    Oracle oracle(config.graph, config.profiles, opts);
    const ComplexDimensionSet dims = zs.find_dimensions(height, dimension_options(config, "auto"));
    const double bound = zs.validity_bound();

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double eps : grid) {
        SweepRow row;
        row.eps = eps;
        row.v_formula = tube_volume_formula(zs, dims, eps, height).value;
        row.v_oracle = oracle.tube_volume(eps).combined;
        row.abs_err = std::abs(row.v_formula - row.v_oracle);
        row.rel_err = row.abs_err / std::abs(row.v_oracle);
        row.within_bound = eps < bound;
        rows.push_back(row);
    }
    return rows;
}

int run_sweep(const std::string& path, double eps_min, double eps_max, int points, bool log_spaced,
              const std::string& out_path, bool height_set, double height_value) {
    SprayConfig config = load_checked(path);
    const double t = height_set ? height_value : config.settings.truncation_height;
    const std::vector<double> grid = log_spaced ? log_grid(eps_min, eps_max, points)
                                                : linear_grid(eps_min, eps_max, points);
    const std::vector<SweepRow> rows = build_sweep(config, grid, t);
    emit(sweep_csv(rows), out_path);
    if (!out_path.empty())
        std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return 0;
}

int run_compare(const std::string& path, int points, bool height_set, double height_value) {
    SprayConfig config = load_checked(path);
    const double t = height_set ? height_value : config.settings.truncation_height;
    ZetaSystem zs(config.graph, config.profiles);
    const double bound = zs.validity_bound();
    const std::vector<double> grid = log_grid_open(1e-3 * bound, bound, points);
    const std::vector<SweepRow> rows = build_sweep(config, grid, t);
    double max_rel = 0.0;
    for (const SweepRow& r : rows) max_rel = std::max(max_rel, r.rel_err);
    std::cout << "points = " << points << " in (" << format_full(1e-3 * bound) << ", "
              << format_full(bound) << "), truncation_height = " << format_full(t) << "\n";
    std::cout << "max_rel_err = " << format_full(max_rel) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inner tube volumes of graph-directed sprays: residue formula vs exact oracle"};
    app.require_subcommand(1);

    std::string config_path, method = "auto", out_path;
    double eps = 0.0, eps_min = 0.0, eps_max = 0.0, height_value = 0.0;
    int points = 20;
    bool log_spaced = false;
    bool height_set = false;

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "spray config (JSON)")->required();
    };
    auto add_height = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option_function<double>(
            "--height",
            [&](double v) {
                height_value = v;
                height_set = true;
            },
            "truncation height T");
        if (required) opt->required();
    };

    CLI::App* validate = app.add_subcommand("validate", "check the config model");
    add_config(validate);

    CLI::App* simvalue = app.add_subcommand("simvalue", "sim-value D of the graph");
    add_config(simvalue);

    CLI::App* dims = app.add_subcommand("dims", "complex dimensions in a strip (JSON)");
    add_config(dims);
    add_height(dims, true);
    dims->add_option("--method", method, "auto|lattice|generic")
        ->check(CLI::IsMember({"auto", "lattice", "generic"}));
    dims->add_option("--out", out_path, "write JSON here instead of stdout");

    CLI::App* tube = app.add_subcommand("tube", "residue tube formula at one eps");
    add_config(tube);
    tube->add_option("--eps", eps, "tube radius")->required();
    add_height(tube, false);

    CLI::App* oracle = app.add_subcommand("oracle", "exact functional-equation volume");
    add_config(oracle);
    oracle->add_option("--eps", eps, "tube radius")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "formula/oracle CSV over an eps grid");
    add_config(sweep);
    sweep->add_option("--eps-min", eps_min, "grid start")->required();
    sweep->add_option("--eps-max", eps_max, "grid end")->required();
    sweep->add_option("--points", points, "grid size")->required();
    sweep->add_flag("--log", log_spaced, "geometric spacing");
    sweep->add_option("--out", out_path, "output CSV file")->required();
    add_height(sweep, false);

    CLI::App* compare = app.add_subcommand("compare", "max formula/oracle relative error");
    add_config(compare);
    compare->add_option("--points", points, "grid size");
    add_height(compare, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (app.got_subcommand(validate)) return run_validate(config_path);
        if (app.got_subcommand(simvalue)) return run_simvalue(config_path);
        if (app.got_subcommand(dims)) return run_dims(config_path, height_value, method, out_path);
        if (app.got_subcommand(tube)) return run_tube(config_path, eps, height_set, height_value);
        if (app.got_subcommand(oracle)) return run_oracle(config_path, eps);
        if (app.got_subcommand(sweep))
            return run_sweep(config_path, eps_min, eps_max, points, log_spaced, out_path,
                             height_set, height_value);
        if (app.got_subcommand(compare))
            return run_compare(config_path, points, height_set, height_value);
    } catch (const gds::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 3;
}
