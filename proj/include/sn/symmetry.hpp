/// \file symmetry.hpp
/// \brief Moving-plane diagnostics and qualitative checks for computed
///        solutions: axis detection, sign structure, monotonicity, decay and
///        far-field asymptotics.
#pragma once

#include <vector>

#include "sn/grid.hpp"

namespace sn {

/// Reflection planes are restricted to lattice-compatible positions
/// lambda_k = -L + k h/2 (k = 1 .. 2n-2), where x1 -> 2 lambda - x1 maps
/// node column i to column k-1-i exactly.
double lattice_lambda(const GridSpec& g, int k);
/// Inverse of lattice_lambda; throws std::invalid_argument off the lattice.
int lambda_index(const GridSpec& g, double lambda);
/// All lattice lambdas in [lo, hi].
std::vector<double> lattice_lambdas(const GridSpec& g, double lo, double hi);

struct AxisDetection {
    double lambda0 = 0.0;
    int k = 0;
    double asymmetry = 0.0;  // sup |u - u reflected| / ||u||_inf, zero-extended outside the grid
};

/// Scans every lattice plane and returns the one minimizing the normalized
/// sup difference between u and its reflection.
AxisDetection detect_axis(const ScalarField& u);

struct MovingPlaneEntry {
    double lambda = 0.0;
    double min_w = 0.0;  // min over live upper nodes of w_lambda = u(x^lambda) - u(x)
    int argmin_i = -1;
    int argmin_j = -1;
};

/// For each lambda in the grid, the minimum of w_lambda over upper-half
/// nodes left of the plane whose value (or reflected value) exceeds
/// floor_rel * ||u||_inf. Expects u sign-normalized positive on the upper
/// half. Reflections landing outside the grid read as zero.
std::vector<MovingPlaneEntry> moving_plane_scan(const ScalarField& u,
                                                const std::vector<double>& lambdas,
                                                double floor_rel = 1e-8);

/// Quadrature of the plane-difference representation of H1 over the left
/// half-strip: 2 h^2 sum_{y1 < lambda, y upper} log(|x-y|/|x-y^lambda|)
/// (|u_lambda|^p - |u|^p), zero-extending u so the strip matches the
/// reflected truncation exactly. Equals H1(x^lambda) - H1(x).
double L_lambda(const ScalarField& u, double p, double lambda, int i, int j);

/// Same for the reflected kernel; carries no leading factor 2 and equals
/// H2(x^lambda) - H2(x).
double M_lambda(const ScalarField& u, double p, double lambda, int i, int j);

/// Counts upper nodes violating the away-from-axis decrease in x1 on either
/// side of lambda0, ignoring nodes below floor_rel * ||u||_inf.
long monotonicity_check(const ScalarField& u, double lambda0, double floor_rel = 1e-8);

/// Upper nodes with non-positive value above the tail floor (expects the
/// sign-normalized field).
long positivity_violations(const ScalarField& u, double floor_rel = 1e-8);

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_lo = 0.0, r_hi = 0.0;
    long nodes = 0;
};

/// Least-squares slope of log|u| vs |x| over the annulus
/// [lo_frac L, hi_frac L], restricted to nodes above floor_rel * ||u||_inf.
/// Throws std::runtime_error when no usable nodes remain.
DecayFit decay_fit(const ScalarField& u, double lo_frac = 0.5, double hi_frac = 0.8,
                   double floor_rel = 1e-12);

struct AsymptoteGaps {
    double w_gap = 0.0;   // max over the annulus of |w - m log|x||, m = h^2 sum |u|^p
    double h2_gap = 0.0;  // max over upper annulus of |H2/2 - m_plus log|x||
    double r_lo = 0.0, r_hi = 0.0;
};

/// Far-field gaps of the potential and of the reflected half-plane kernel
/// over the annulus [lo_frac L, hi_frac L].
AsymptoteGaps asymptotics_check(const ScalarField& u, double p, double lo_frac = 0.6,
                                double hi_frac = 0.85);

struct SymmetryReport {
    double lambda0 = 0.0;
    double asymmetry = 0.0;
    long positivity_count = 0;
    long monotonicity_count = 0;
    std::vector<MovingPlaneEntry> movingplane;
    double movingplane_min = 0.0;
    bool decay_ok = false;  // decay_fit had usable nodes
    DecayFit decay;
    AsymptoteGaps gaps;
    double tail_floor_rel = 1e-8;
};

/// Runs the full diagnostic battery (axis, sign structure, scan up to the
/// detected axis, decay fit, asymptotics) on a sign-normalized copy of u.
SymmetryReport build_symmetry_report(const ScalarField& u, double p,
                                     double tail_floor_rel = 1e-8);

}  // namespace sn
