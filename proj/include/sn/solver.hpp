/// \file solver.hpp
/// \brief Nehari-reprojected, H1-preconditioned gradient descent for the
///        minimal action problem, in the odd class or unconstrained.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sn/functional.hpp"
#include "sn/grid.hpp"

namespace sn {

enum class InitialGuessKind { dipole_gaussian, gaussian, from_file };

struct SolverConfig {
    double p = 2.0;
    double half_width = 12.0;
    int n = 256;
    SymmetryClass symmetry = SymmetryClass::odd_in_x2;
    double tol_residual = 1e-6;   // on ||r||_L2 / ||u||_L2
    int max_iters = 20000;
    double step0 = 0.5;
    double backtrack = 0.5;       // in (0,1)
    unsigned long long seed = 0;  // echoed for reproducibility bookkeeping
    InitialGuessKind initial_guess = InitialGuessKind::dipole_gaussian;

    GridSpec grid() const;
    void validate() const;  // throws std::invalid_argument
};

struct IterationSample {
    int iter = 0;
    double energy = 0.0;
    double residual = 0.0;  // relative
    double t_nehari = 0.0;
    double step = 0.0;
};

struct SolutionRecord {
    ScalarField u;
    EnergyBreakdown breakdown;
    double residual_norm = 0.0;  // absolute ||r||_L2
    int iterations = 0;
    bool converged = false;
    std::string failure_reason;
    SolverConfig config;
    std::vector<IterationSample> history;
};

/// Analytic starting field: dipole_gaussian A x2 exp(-s|x|^2) (exactly odd)
/// or gaussian A exp(-|x|^2). The amplitude is doubled within [2^-20, 2^20]
/// only to escape a degenerate underflow (the sign of v0 is amplitude
/// invariant); if the dipole shape itself has v0 >= 0 the exponent s is
/// doubled until the shape is Nehari-projectable. Throws std::runtime_error
/// when the search fails.
ScalarField initial_guess(const SolverConfig& cfg);

/// Iterates u <- nehari_project(Pi_sym(u - tau P(el_residual(u)))) with
/// P = (I - Lap_h)^{-1} solved exactly by a sine transform, backtracking on
/// the energy so the accepted sequence is non-increasing (up to a 1e-13
/// round-off allowance), and an x1 recentering every 100 iterations.
/// Stops when both the residual and Nehari tests pass; a non-converged
/// record carries full diagnostics and failure_reason.
SolutionRecord minimize(const SolverConfig& cfg);

/// Same loop from a caller-provided start (warm restarts, file guesses).
SolutionRecord minimize(const SolverConfig& cfg, const ScalarField& start);

/// Re-solves at finer_n (= n or 2n) from the bilinear interpolant of the
/// record and returns |I_fine - I_coarse| as the discretization error
/// estimate. Throws on a non-converged record or unsupported finer_n.
double cross_validate(const SolutionRecord& record, int finer_n);

/// Bilinear interpolation onto another grid with the same half-width,
/// zero-extended outside the node hull.
ScalarField interpolate_bilinear(const ScalarField& u, const GridSpec& fine);

/// Exact solve of (I - Lap_h) g = r by a type-I sine transform; the Dirichlet
/// ghost convention matches laplacian()/h1_norm_sq().
class H1Preconditioner {
public:
    explicit H1Preconditioner(const GridSpec& g);
    ~H1Preconditioner();
    H1Preconditioner(const H1Preconditioner&) = delete;
    H1Preconditioner& operator=(const H1Preconditioner&) = delete;

    ScalarField apply(const ScalarField& r) const;

private:
    struct Impl;
    GridSpec spec_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace sn
