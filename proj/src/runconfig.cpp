#include "sn/runconfig.hpp"

#include <fstream>
#include <stdexcept>

#include "sn/snf1.hpp"

namespace sn {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': cannot parse '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config key '" + key + "': trailing junk in '" + value + "'");
    return v;
}

long long parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long long v;
    try {
        v = std::stoll(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': cannot parse '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config key '" + key + "': trailing junk in '" + value + "'");
    return v;
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto& s = cfg.solver;
    auto& c = cfg.checks;
    if (key == "p") s.p = parse_double(key, value);
    else if (key == "L") s.half_width = parse_double(key, value);
    else if (key == "n") s.n = static_cast<int>(parse_int(key, value));
    else if (key == "symmetry") s.symmetry = symmetry_from_string(value);
    else if (key == "tol_residual") s.tol_residual = parse_double(key, value);
    else if (key == "max_iters") s.max_iters = static_cast<int>(parse_int(key, value));
    else if (key == "step0") s.step0 = parse_double(key, value);
    else if (key == "backtrack") s.backtrack = parse_double(key, value);
    else if (key == "seed") s.seed = static_cast<unsigned long long>(parse_int(key, value));
    else if (key == "initial_guess") {
        if (value == "dipole_gaussian") s.initial_guess = InitialGuessKind::dipole_gaussian;
        else if (value == "gaussian") s.initial_guess = InitialGuessKind::gaussian;
        else if (value == "from_file") s.initial_guess = InitialGuessKind::from_file;
        else throw std::invalid_argument("config key 'initial_guess': unknown value '" + value + "'");
    }
    else if (key == "initial_file") cfg.initial_file = value;
    else if (key == "tol_asymmetry") c.tol_asymmetry = parse_double(key, value);
    else if (key == "tol_movingplane") c.tol_movingplane = parse_double(key, value);
    else if (key == "tol_nehari") c.tol_nehari = parse_double(key, value);
    else if (key == "tol_ray") c.tol_ray = parse_double(key, value);
    else if (key == "tail_floor") c.tail_floor = parse_double(key, value);
    else if (key == "decay_floor") c.decay_floor = parse_double(key, value);
    else if (key == "decay_band_lo") c.decay_band_lo = parse_double(key, value);
    else if (key == "decay_band_hi") c.decay_band_hi = parse_double(key, value);
    else if (key == "decay_annulus_lo") c.decay_annulus_lo = parse_double(key, value);
    else if (key == "decay_annulus_hi") c.decay_annulus_hi = parse_double(key, value);
    else if (key == "gap_annulus_lo") c.gap_annulus_lo = parse_double(key, value);
    else if (key == "gap_annulus_hi") c.gap_annulus_hi = parse_double(key, value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        apply_config_entry(cfg, line.substr(start, eq - start), line.substr(eq + 1));
    }
}

}  // namespace sn
