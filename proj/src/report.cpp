#include "sn/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "sn/snf1.hpp"

namespace sn {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::ordered_json to_json(const EnergyBreakdown& e) {
    return {
        {"h1_part", e.h1_part}, {"v0", e.v0},       {"v1", e.v1},
        {"v2", e.v2},           {"total", e.total}, {"nehari_value", e.nehari_value},
        {"p", e.p},             {"hls_ratio", e.hls_ratio},
    };
}

nlohmann::ordered_json to_json(const SymmetryReport& r) {
    nlohmann::ordered_json scan = nlohmann::ordered_json::array();
    for (const auto& e : r.movingplane)
        scan.push_back({{"lambda", e.lambda},
                        {"min_w", e.min_w},
                        {"argmin_i", e.argmin_i},
                        {"argmin_j", e.argmin_j}});
    nlohmann::ordered_json j{
        {"lambda0", r.lambda0},
        {"asymmetry", r.asymmetry},
        {"positivity_violations", r.positivity_count},
        {"monotonicity_violations", r.monotonicity_count},
        {"movingplane_min", r.movingplane_min},
        {"tail_floor_rel", r.tail_floor_rel},
        {"decay_valid", r.decay_ok},
        {"potential_asymptote_gap", r.gaps.w_gap},
        {"h2_asymptote_gap", r.gaps.h2_gap},
        {"gap_annulus", {r.gaps.r_lo, r.gaps.r_hi}},
        {"movingplane", std::move(scan)},
    };
    if (r.decay_ok) {
        j["decay_slope"] = r.decay.slope;
        j["decay_annulus"] = {r.decay.r_lo, r.decay.r_hi};
        j["decay_nodes"] = r.decay.nodes;
    }
    return j;
}

nlohmann::ordered_json config_json(const SolverConfig& cfg) {
    return {
        {"p", cfg.p},
        {"L", cfg.half_width},
        {"n", cfg.n},
        {"symmetry", to_string(cfg.symmetry)},
        {"tol_residual", cfg.tol_residual},
        {"max_iters", cfg.max_iters},
        {"step0", cfg.step0},
        {"backtrack", cfg.backtrack},
        {"seed", cfg.seed},
        {"initial_guess", cfg.initial_guess == InitialGuessKind::dipole_gaussian ? "dipole_gaussian"
                          : cfg.initial_guess == InitialGuessKind::gaussian      ? "gaussian"
                                                                                 : "from_file"},
    };
}

void write_iteration_csv(const std::filesystem::path& path,
                         const std::vector<IterationSample>& history) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot create " + path.string());
    out << "iter,I,residual,t_nehari,step\n";
    for (const auto& s : history)
        out << s.iter << ',' << format_double(s.energy) << ',' << format_double(s.residual) << ','
            << format_double(s.t_nehari) << ',' << format_double(s.step) << '\n';
}

void write_lambda_scan_csv(const std::filesystem::path& path,
                           const std::vector<MovingPlaneEntry>& scan) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot create " + path.string());
    out << "lambda,min_w,argmin_i,argmin_j\n";
    for (const auto& e : scan)
        out << format_double(e.lambda) << ',' << format_double(e.min_w) << ',' << e.argmin_i << ','
            << e.argmin_j << '\n';
}

ManifestBuilder::ManifestBuilder(std::string command) {
    doc_["artifact_version"] = kArtifactVersion;
    doc_["command"] = std::move(command);
    doc_["files"] = nlohmann::ordered_json::object();
    doc_["timings_ms"] = nlohmann::ordered_json::object();
}

void ManifestBuilder::set_config(const nlohmann::ordered_json& cfg) { doc_["config"] = cfg; }

void ManifestBuilder::add_file(const std::string& label, const std::filesystem::path& path) {
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof hashbuf, "%016" PRIx64, fnv1a64_file(path));
    doc_["files"][label] = {{"path", path.filename().string()},
                            {"bytes", std::filesystem::file_size(path)},
                            {"fnv1a64", hashbuf}};
}

void ManifestBuilder::add_timing(const std::string& phase, double milliseconds) {
    doc_["timings_ms"][phase] = milliseconds;
}

void ManifestBuilder::write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot create " + path.string());
    out << doc_.dump(2) << '\n';
}

}  // namespace sn
