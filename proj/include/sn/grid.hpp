/// \file grid.hpp
/// \brief Square node-centered grid, scalar fields, discrete norms and the
///        odd-symmetry projection.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sn {

enum class SymmetryClass { none, odd_in_x2 };

/// Uniform square grid on [-L,L]^2 with n nodes per axis, n even.
///
/// Nodes straddle both coordinate axes: x_i = (2i + 1 - n) * (L/n), so no
/// node lies on an axis and the reflections x1 -> -x1, x2 -> -x2 map nodes
/// to nodes exactly (index i <-> n-1-i). Spacing is h = 2L/n.
struct GridSpec {
    double half_width = 0.0;  // L
    int n = 0;                // nodes per axis (even)
    double pitch = 0.0;       // L/n, stored so coord(i) negates exactly under i <-> n-1-i

    double h() const { return 2.0 * pitch; }
    double coord(int i) const { return (2 * i + 1 - n) * pitch; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }
    bool operator==(const GridSpec&) const = default;
};

/// Validates and builds a GridSpec. Throws std::invalid_argument for odd n,
/// n < 2, or non-positive L.
GridSpec make_grid(double half_width, int n);

/// Real values on a GridSpec, row-major: value(i,j) ~ u(x_i, y_j) where i
/// indexes x1 and j indexes x2.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const GridSpec& g, double fill = 0.0)
        : spec_(g), v_(g.size(), fill) {}

    const GridSpec& spec() const { return spec_; }
    int n() const { return spec_.n; }

    double& at(int i, int j) { return v_[static_cast<std::size_t>(i) * spec_.n + j]; }
    double at(int i, int j) const { return v_[static_cast<std::size_t>(i) * spec_.n + j]; }

    std::span<double> values() { return v_; }
    std::span<const double> values() const { return v_; }

private:
    GridSpec spec_;
    std::vector<double> v_;
};

/// Odd part (u(x1,x2) - u(x1,-x2))/2. The result satisfies
/// value(i,j) == -value(i,n-1-j) exactly; idempotent and linear.
ScalarField project_odd(const ScalarField& u);

/// True iff value(i,j) == -value(i,n-1-j) holds bit-exactly everywhere.
bool is_exactly_odd(const ScalarField& u);

bool all_finite(const ScalarField& u);

/// h^2 * sum(|Du|^2 + u^2), forward differences with zero Dirichlet ghost
/// values outside the grid; every edge (including both boundary-to-ghost
/// edges per line) is counted once.
double h1_norm_sq(const ScalarField& u);

/// h^2 * sum |u|^p  (p-th power of the L^p norm, midpoint quadrature).
double lp_norm_p(const ScalarField& u, double p);

/// h^2 * sum log(1+|x|) |u|^p  (log-weighted L^p norm to the p).
double star_norm_p(const ScalarField& u, double p);

/// sqrt(h^2 * sum u^2).
double l2_norm(const ScalarField& u);

double max_abs(const ScalarField& u);

/// 5-point Laplacian with zero Dirichlet ghosts, the adjoint of the
/// forward-difference gradient used in h1_norm_sq.
ScalarField laplacian(const ScalarField& u);

}  // namespace sn
