/// \file report.hpp
/// \brief JSON/CSV emission for energies, diagnostics and run manifests.
#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sn/functional.hpp"
#include "sn/solver.hpp"
#include "sn/symmetry.hpp"

namespace sn {

inline constexpr const char* kArtifactVersion = "1.0.0";

nlohmann::ordered_json to_json(const EnergyBreakdown& e);
nlohmann::ordered_json to_json(const SymmetryReport& r);
nlohmann::ordered_json config_json(const SolverConfig& cfg);

/// Header: iter,I,residual,t_nehari,step
void write_iteration_csv(const std::filesystem::path& path,
                         const std::vector<IterationSample>& history);
/// Header: lambda,min_w,argmin_i,argmin_j
void write_lambda_scan_csv(const std::filesystem::path& path,
                           const std::vector<MovingPlaneEntry>& scan);

/// Accumulates emitted files and phase timings, then writes the manifest
/// with a content hash per file.
class ManifestBuilder {
public:
    explicit ManifestBuilder(std::string command);
    void set_config(const nlohmann::ordered_json& cfg);
    void add_file(const std::string& label, const std::filesystem::path& path);
    void add_timing(const std::string& phase, double milliseconds);
    void write(const std::filesystem::path& path) const;

private:
    nlohmann::ordered_json doc_;
};

std::string format_double(double v);  // %.17g, the round-trip format used in all text outputs

}  // namespace sn
