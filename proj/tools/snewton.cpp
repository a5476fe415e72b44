/// \file snewton.cpp
/// \brief CLI for the planar Schrodinger-Newton solver: solve a minimal
///        action problem, verify a computed field, compare two records,
///        export plot data, and run the convolution self-test.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include "sn/convolve.hpp"
#include "sn/report.hpp"
#include "sn/runconfig.hpp"
#include "sn/snf1.hpp"
#include "sn/solver.hpp"
#include "sn/symmetry.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitFail = 1;    // non-convergence or failed assertions
constexpr int kExitUsage = 2;   // bad config / unreadable inputs

int fail_json(const std::string& kind, const std::string& detail, int code) {
    ordered_json err{{"error", kind}, {"detail", detail}};
    std::cout << err.dump(2) << std::endl;
    return code;
}

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct ConfigCli {
    std::string config_file;
    std::vector<std::string> overrides;  // key=value pairs from --set
};

void add_config_options(CLI::App* cmd, ConfigCli& cc) {
    cmd->add_option("--config", cc.config_file, "key=value config file");
    cmd->add_option("--set", cc.overrides, "config override key=value (repeatable)")
        ->take_all();
}

// precedence: defaults < file < --set pairs < dedicated flags (applied later
// by the caller via more --set-style entries appended last)
sn::RunConfig assemble_config(const ConfigCli& cc) {
    sn::RunConfig cfg;
    if (!cc.config_file.empty()) sn::load_config_file(cfg, cc.config_file);
    for (const auto& kv : cc.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override '" + kv + "' is not key=value");
        sn::apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

ordered_json tolerances_json(const sn::CheckTolerances& c) {
    return {
        {"tol_asymmetry", c.tol_asymmetry},   {"tol_movingplane", c.tol_movingplane},
        {"tol_nehari", c.tol_nehari},         {"tol_ray", c.tol_ray},
        {"tail_floor", c.tail_floor},         {"decay_floor", c.decay_floor},
        {"decay_band_lo", c.decay_band_lo},   {"decay_band_hi", c.decay_band_hi},
        {"decay_annulus_lo", c.decay_annulus_lo}, {"decay_annulus_hi", c.decay_annulus_hi},
        {"gap_annulus_lo", c.gap_annulus_lo}, {"gap_annulus_hi", c.gap_annulus_hi},
    };
}

// ---------------------------------------------------------------------------

int cmd_solve(const ConfigCli& cc, const std::string& out_dir) {
    sn::RunConfig cfg = assemble_config(cc);
    cfg.solver.validate();
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);

    sn::ManifestBuilder manifest("solve");
    auto cfg_json = sn::config_json(cfg.solver);
    cfg_json["tolerances"] = tolerances_json(cfg.checks);
    manifest.set_config(cfg_json);

    const auto t0 = std::chrono::steady_clock::now();
    sn::SolutionRecord rec;
    if (cfg.solver.initial_guess == sn::InitialGuessKind::from_file) {
        if (cfg.initial_file.empty())
            throw std::invalid_argument("initial_guess=from_file requires initial_file=<path>");
        const sn::Snf1File f = sn::snf1_read(cfg.initial_file);
        rec = sn::minimize(cfg.solver, f.field);
    } else {
        rec = sn::minimize(cfg.solver);
    }
    manifest.add_timing("solve", ms_since(t0));

    const auto t1 = std::chrono::steady_clock::now();
    sn::snf1_write(dir / "field.snf1", rec.u, cfg.solver.p, cfg.solver.symmetry,
                   std::string("snewton solve ") + sn::kArtifactVersion);
    {
        std::ofstream out(dir / "energy.json");
        ordered_json ej = sn::to_json(rec.breakdown);
        ej["residual_norm"] = rec.residual_norm;
        ej["residual_rel"] = rec.residual_norm / sn::l2_norm(rec.u);
        ej["iterations"] = rec.iterations;
        ej["converged"] = rec.converged;
        out << ej.dump(2) << '\n';
    }
    sn::write_iteration_csv(dir / "iterations.csv", rec.history);
    manifest.add_timing("write", ms_since(t1));
    manifest.add_file("field", dir / "field.snf1");
    manifest.add_file("energy", dir / "energy.json");
    manifest.add_file("iterations", dir / "iterations.csv");
    manifest.write(dir / "manifest.json");

    if (!rec.converged)
        return fail_json("non-convergence", rec.failure_reason, kExitFail);
    std::cout << "converged in " << rec.iterations << " iterations, I = "
              << sn::format_double(rec.breakdown.total) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct CheckLine {
    std::string name;
    bool pass;
    std::string detail;
};

int cmd_verify(const std::string& field_path, std::vector<std::string> checks, const ConfigCli& cc,
               const std::string& report_path, const std::string& scan_csv) {
    sn::RunConfig cfg = assemble_config(cc);
    const sn::Snf1File f = sn::snf1_read(field_path);
    const double p = f.header.p;
    const auto& tol = cfg.checks;

    static const std::vector<std::string> known = {
        "oddness",   "residual", "nehari",      "positivity", "symmetry",
        "monotonic", "movingplane", "ray",      "decay",      "asymptotics"};
    if (checks.empty() || (checks.size() == 1 && checks[0] == "all"))
        checks.assign(known.begin(), known.end());
    for (const auto& c : checks)
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw std::invalid_argument("unknown check '" + c + "'");
    auto selected = [&](const std::string& name) {
        return std::find(checks.begin(), checks.end(), name) != checks.end();
    };

    const sn::SymmetryReport rep = sn::build_symmetry_report(f.field, p, tol.tail_floor);
    const sn::EnergyBreakdown e = sn::energy(f.field, p);
    std::vector<CheckLine> lines;

    if (selected("oddness")) {
        const bool applicable = f.header.symmetry == sn::SymmetryClass::odd_in_x2;
        const bool ok = !applicable || sn::is_exactly_odd(f.field);
        lines.push_back({"oddness", ok, applicable ? "exact node antisymmetry" : "not an odd record"});
    }
    if (selected("residual")) {
        const double rel = sn::l2_norm(sn::el_residual(f.field, p)) / sn::l2_norm(f.field);
        lines.push_back({"residual", rel <= cfg.solver.tol_residual,
                         "rel residual " + sn::format_double(rel)});
    }
    if (selected("nehari")) {
        const double ratio = std::abs(e.nehari_value) / e.h1_part;
        lines.push_back({"nehari", ratio <= tol.tol_nehari,
                         "|<I'u,u>|/h1 = " + sn::format_double(ratio)});
    }
    if (selected("positivity"))
        lines.push_back({"positivity", rep.positivity_count == 0,
                         std::to_string(rep.positivity_count) + " wrong-sign upper nodes"});
    if (selected("symmetry"))
        lines.push_back({"symmetry", rep.asymmetry < tol.tol_asymmetry,
                         "asymmetry " + sn::format_double(rep.asymmetry) + " at lambda0 " +
                             sn::format_double(rep.lambda0)});
    if (selected("monotonic"))
        lines.push_back({"monotonic", rep.monotonicity_count == 0,
                         std::to_string(rep.monotonicity_count) + " violations"});
    if (selected("movingplane")) {
        const double bound = -tol.tol_movingplane * sn::max_abs(f.field);
        lines.push_back({"movingplane", rep.movingplane_min >= bound,
                         "min w_lambda " + sn::format_double(rep.movingplane_min)});
    }
    if (selected("ray")) {
        const double sup = sn::sup_ray(f.field, p, 4.0, 4096);
        lines.push_back({"ray", sup - e.total <= tol.tol_ray * std::abs(e.total),
                         "sup_ray - I = " + sn::format_double(sup - e.total)});
    }
    if (selected("decay")) {
        if (rep.decay_ok) {
            const bool ok =
                rep.decay.slope >= tol.decay_band_lo && rep.decay.slope <= tol.decay_band_hi;
            lines.push_back({"decay", ok, "slope " + sn::format_double(rep.decay.slope) + " over [" +
                                              sn::format_double(rep.decay.r_lo) + "," +
                                              sn::format_double(rep.decay.r_hi) + "]"});
        } else {
            lines.push_back({"decay", false, "annulus holds no nodes above the round-off floor"});
        }
    }
    if (selected("asymptotics"))
        lines.push_back({"asymptotics", true,
                         "w gap " + sn::format_double(rep.gaps.w_gap) + ", H2 gap " +
                             sn::format_double(rep.gaps.h2_gap) +
                             " (report only; the decrease check needs two domains)"});

    bool all_ok = true;
    for (const auto& l : lines) {
        std::cout << (l.pass ? "PASS " : "FAIL ") << l.name << ": " << l.detail << "\n";
        all_ok = all_ok && l.pass;
    }

    if (!report_path.empty()) {
        ordered_json rj = sn::to_json(rep);
        rj["energy"] = sn::to_json(e);
        rj["tolerances"] = tolerances_json(tol);
        ordered_json cj = ordered_json::array();
        for (const auto& l : lines) cj.push_back({{"check", l.name}, {"pass", l.pass}, {"detail", l.detail}});
        rj["checks"] = std::move(cj);
        std::ofstream out(report_path);
        out << rj.dump(2) << '\n';
    }
    if (!scan_csv.empty()) sn::write_lambda_scan_csv(scan_csv, rep.movingplane);
    return all_ok ? 0 : kExitFail;
}

// ---------------------------------------------------------------------------

int cmd_compare(const std::string& path_a, const std::string& path_b, bool assert_gap, bool with_cv) {
    const sn::Snf1File a = sn::snf1_read(path_a);
    const sn::Snf1File b = sn::snf1_read(path_b);
    if (a.header.n != b.header.n || a.header.half_width != b.header.half_width ||
        a.header.p != b.header.p)
        throw std::invalid_argument("compare: records use different (p, L, n)");

    const sn::EnergyBreakdown ea = sn::energy(a.field, a.header.p);
    const sn::EnergyBreakdown eb = sn::energy(b.field, b.header.p);

    double bar = 0.0;
    if (with_cv) {
        for (const auto* rec : {&a, &b}) {
            sn::SolverConfig cfg;
            cfg.p = rec->header.p;
            cfg.half_width = rec->header.half_width;
            cfg.n = rec->header.n;
            cfg.symmetry = rec->header.symmetry;
            sn::SolutionRecord sr = sn::minimize(cfg, rec->field);
            if (!sr.converged)
                throw std::runtime_error("compare: record is not a converged solution");
            bar = std::max(bar, sn::cross_validate(sr, 2 * cfg.n));
        }
    }

    ordered_json out{{"I_A", ea.total},
                     {"I_B", eb.total},
                     {"difference", ea.total - eb.total},
                     {"cv_error_bar", bar}};
    std::cout << out.dump(2) << std::endl;
    if (assert_gap) {
        const bool ok = (ea.total - eb.total > 10.0 * bar) && ea.total > 0.0 && eb.total > 0.0;
        if (!ok) return fail_json("gap assertion failed",
                                  "need I_A - I_B > 10 x cv bar and both energies positive",
                                  kExitFail);
    }
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_export(const std::string& field_path, const std::string& out_dir) {
    const sn::Snf1File f = sn::snf1_read(field_path);
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    const sn::GridSpec& g = f.field.spec();
    const int n = g.n;

    {  // x1 profile along the first row above the axis
        std::ofstream out(dir / "axis_profile.csv");
        out << "x1,u\n";
        for (int i = 0; i < n; ++i)
            out << sn::format_double(g.coord(i)) << ',' << sn::format_double(f.field.at(i, n / 2))
                << '\n';
    }
    {
        const sn::SymmetryReport rep = sn::build_symmetry_report(f.field, f.header.p);
        sn::write_lambda_scan_csv(dir / "lambda_scan.csv", rep.movingplane);
    }
    {  // decay scatter
        std::ofstream out(dir / "decay_scatter.csv");
        out << "r,log_abs_u\n";
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double a = std::abs(f.field.at(i, j));
                if (a <= 0.0) continue;
                out << sn::format_double(std::hypot(g.coord(i), g.coord(j))) << ','
                    << sn::format_double(std::log(a)) << '\n';
            }
    }
    std::cout << "wrote axis_profile.csv, lambda_scan.csv, decay_scatter.csv to " << out_dir
              << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_convolve_test(int n, double L, unsigned long long seed) {
    const sn::GridSpec g = sn::make_grid(L, n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    sn::ScalarField rho(g);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double r2 = g.coord(i) * g.coord(i) + g.coord(j) * g.coord(j);
            rho.at(i, j) = unif(rng) * std::exp(-0.5 * r2);
        }
    const auto t0 = std::chrono::steady_clock::now();
    const sn::ScalarField direct = sn::log_convolve_direct(rho);
    const sn::ScalarField fast = sn::log_convolve_fast(rho);
    double scale = 0.0, err = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            scale = std::max(scale, std::abs(direct.at(i, j)));
            err = std::max(err, std::abs(direct.at(i, j) - fast.at(i, j)));
        }
    const double rel = err / scale;
    std::cout << "n=" << n << " sup relative error fast vs direct: " << sn::format_double(rel)
              << "  (" << sn::format_double(ms_since(t0)) << " ms)\n";
    return rel < 1e-10 ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar Schrodinger-Newton minimal action solver and verifier"};
    app.require_subcommand(1);

    ConfigCli cc_solve, cc_verify;
    std::string out_dir = ".";
    auto* solve = app.add_subcommand("solve", "run the Nehari-constrained descent");
    add_config_options(solve, cc_solve);
    solve->add_option("--out", out_dir, "output directory");

    std::string verify_field, report_path, scan_csv;
    std::vector<std::string> verify_checks;
    auto* verify = app.add_subcommand("verify", "run diagnostics on an SNF1 field");
    verify->add_option("field", verify_field, "SNF1 field file")->required();
    verify->add_option("--checks", verify_checks, "subset of checks (default: all)")->delimiter(',');
    verify->add_option("--report", report_path, "write the JSON report here");
    verify->add_option("--scan-csv", scan_csv, "write the lambda scan CSV here");
    add_config_options(verify, cc_verify);

    std::string cmp_a, cmp_b;
    bool assert_gap = false, with_cv = false;
    auto* compare = app.add_subcommand("compare", "energy ordering of two records");
    compare->add_option("A", cmp_a, "SNF1 record A")->required();
    compare->add_option("B", cmp_b, "SNF1 record B")->required();
    compare->add_flag("--assert-gap", assert_gap, "fail unless I_A - I_B > 10 x cv bar, both > 0");
    compare->add_flag("--cv", with_cv, "compute the cross-validation error bar (re-solves at 2n)");

    std::string export_field, export_dir = ".";
    auto* exportc = app.add_subcommand("export", "CSV slices and profiles for plotting");
    exportc->add_option("field", export_field, "SNF1 field file")->required();
    exportc->add_option("--out", export_dir, "output directory");

    int conv_n = 32;
    double conv_L = 6.0;
    unsigned long long conv_seed = 1;
    auto* convtest = app.add_subcommand("convolve-test", "fast vs direct convolution oracle");
    convtest->add_option("--n", conv_n, "grid nodes per axis");
    convtest->add_option("--L", conv_L, "half width");
    convtest->add_option("--seed", conv_seed, "rng seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(cc_solve, out_dir);
        if (verify->parsed())
            return cmd_verify(verify_field, verify_checks, cc_verify, report_path, scan_csv);
        if (compare->parsed()) return cmd_compare(cmp_a, cmp_b, assert_gap, with_cv);
        if (exportc->parsed()) return cmd_export(export_field, export_dir);
        if (convtest->parsed()) return cmd_convolve_test(conv_n, conv_L, conv_seed);
    } catch (const std::invalid_argument& ex) {
        return fail_json("invalid configuration", ex.what(), kExitUsage);
    } catch (const std::exception& ex) {
        return fail_json("runtime error", ex.what(), kExitUsage);
    }
    return kExitUsage;
}
