/// \file functional.hpp
/// \brief The action functional, its convolution split, first variation,
///        Nehari projection, and the half-plane form.
#pragma once

#include <stdexcept>

#include "sn/grid.hpp"
#include "sn/halfplane.hpp"

namespace sn {

/// I(u) = h1_part/2 + v0/(2p), with v0 = v1 - v2 and
/// nehari_value = <I'(u),u> = h1_part + v0.
struct EnergyBreakdown {
    double h1_part = 0.0;
    double v0 = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
    double total = 0.0;
    double nehari_value = 0.0;
    double p = 2.0;
    double hls_ratio = 0.0;  // v2 / ||u||_{4p/3}^{2p}, reported only
};

struct VValues {
    double v0 = 0.0, v1 = 0.0, v2 = 0.0;
};

/// v_k = h^2 sum_x |u|^p(x) (K_k * |u|^p)(x) for the log, log(1+.) and
/// log(1+1/.) kernels. v1 >= 0, v2 >= 0 for real u.
VValues v_functionals(const ScalarField& u, double p);

EnergyBreakdown energy(const ScalarField& u, double p);

/// r = -Lap_h u + u + w |u|^{p-2} u with w = log * |u|^p (fast path).
/// The discrete pairing is exact: <r, v>_{L2} equals the directional
/// derivative of I at u in direction v, because the backward-difference
/// divergence in Lap_h is the adjoint of the forward-difference gradient of
/// h1_norm_sq under zero Dirichlet ghosts.
ScalarField el_residual(const ScalarField& u, double p);

class NotNehariProjectable : public std::domain_error {
public:
    explicit NotNehariProjectable(double v0)
        : std::domain_error("not Nehari-projectable: v0 = " + std::to_string(v0) +
                            " >= 0, the ray I(tu) has no critical point"),
          v0_(v0) {}
    double v0() const { return v0_; }

private:
    double v0_;
};

struct NehariProjection {
    double t = 0.0;
    ScalarField tu;
};

/// Closed-form amplitude t = (h1/(-v0))^(1/(2p-2)) placing tu on the Nehari
/// manifold. Throws NotNehariProjectable when v0 >= 0.
NehariProjection nehari_project(const ScalarField& u, double p);

/// Scalar form of the projection, t solving t^2 h1 + t^{2p} v0 = 0.
double nehari_t(double h1, double v0, double p);

/// I(t u) from the amplitude homogeneity of the discrete sums.
double ray_energy(double h1, double v0, double p, double t);

/// max of I(t u) over a geometric t-grid spanning [1e-3 t_max, t_max].
double sup_ray(const ScalarField& u, double p, double t_max, int samples);

/// Half-plane H^1 sum without the 1/2 factor: all x1-edges over upper rows,
/// the x2-edges within the upper rows plus the top ghost edge, the axis term
/// 2 v(i,0)^2 (the equally shared crossing edge of the odd extension), and
/// the mass term. For odd extensions, 2 * this = h1_norm_sq.
double halfplane_h1_sq(const HalfField& v);

/// The half-plane action: halfplane_h1_sq + (1/2p) h^2 sum f (H1 + H2),
/// f = |v|^p. Equals energy(odd_extension(v)).total up to round-off.
double halfplane_energy(const HalfField& v, double p);

}  // namespace sn
