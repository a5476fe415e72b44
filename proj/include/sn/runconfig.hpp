/// \file runconfig.hpp
/// \brief key=value run configuration shared by the CLI commands.
///        Precedence: command line > config file > defaults; unknown keys
///        are errors.
#pragma once

#include <filesystem>
#include <string>

#include "sn/solver.hpp"

namespace sn {

/// Tolerances used by the verify checks; all config-visible and echoed into
/// the manifest.
struct CheckTolerances {
    double tol_asymmetry = 1e-3;      // normalized sup asymmetry at the detected axis
    double tol_movingplane = 1e-6;    // min w_lambda >= -tol * ||u||_inf for lambda <= lambda0
    double tol_nehari = 1e-8;         // |<I'(u),u>| <= tol * h1_part
    double tol_ray = 1e-8;            // sup_ray - I <= tol * |I|
    double tail_floor = 1e-8;         // relative floor for sign-based tail tests
    double decay_floor = 1e-12;       // relative floor for the decay fit
    double decay_band_lo = -1.15;     // accepted slope band
    double decay_band_hi = -0.85;
    double decay_annulus_lo = 0.5;    // fractions of L
    double decay_annulus_hi = 0.8;
    double gap_annulus_lo = 0.6;
    double gap_annulus_hi = 0.85;
};

struct RunConfig {
    SolverConfig solver;
    CheckTolerances checks;
    std::string initial_file;  // SNF1 path when initial_guess=from_file
};

/// Applies one key=value pair; throws std::invalid_argument for unknown keys
/// or unparsable values.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads a key=value text file ('#' starts a comment, blank lines ignored).
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);

}  // namespace sn
