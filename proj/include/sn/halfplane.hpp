/// \file halfplane.hpp
/// \brief Fields restricted to the upper half of the grid and the half-plane
///        potential kernels H1 (free) and H2 (reflected), with the F - G cap
///        decomposition of H2.
#pragma once

#include <vector>

#include "sn/grid.hpp"

namespace sn {

/// Values on the upper-half nodes x2 > 0: n columns by n/2 rows. Row r
/// corresponds to full-grid index j = n/2 + r, i.e. x2 = (2r+1) * pitch.
class HalfField {
public:
    HalfField() = default;
    explicit HalfField(const GridSpec& g, double fill = 0.0)
        : spec_(g), v_(static_cast<std::size_t>(g.n) * (g.n / 2), fill) {}

    const GridSpec& spec() const { return spec_; }
    int n() const { return spec_.n; }
    int rows() const { return spec_.n / 2; }

    double& at(int i, int r) { return v_[static_cast<std::size_t>(i) * rows() + r]; }
    double at(int i, int r) const { return v_[static_cast<std::size_t>(i) * rows() + r]; }

    /// x2 coordinate of row r.
    double x2(int r) const { return spec_.coord(spec_.n / 2 + r); }

private:
    GridSpec spec_;
    std::vector<double> v_;
};

HalfField restrict_upper(const ScalarField& u);
/// Full-grid field with v on the upper half and -v reflected below.
ScalarField odd_extension(const HalfField& v);
/// Full-grid field with f on the upper half, zero below.
ScalarField upper_embed(const HalfField& f);
/// Full-grid field with f reflected evenly into the lower half, zero above.
/// For y' = (y1,-y2) in the lower half, |x - y'|^2 = (x1-y1)^2 + (x2+y2)^2,
/// which turns the reflected kernel into a plain log convolution.
ScalarField lower_reflect(const HalfField& f);

/// H1(x) = 2 * h^2 sum_{y upper} log|x-y| |u|^p(y), evaluated at upper nodes.
HalfField halfplane_H1(const HalfField& u_plus, double p);

/// H2(x) = h^2 sum_{y upper} log((x1-y1)^2 + (x2+y2)^2) |u|^p(y); the kernel
/// is smooth since x2 + y2 >= h on the upper-half product.
HalfField halfplane_H2(const HalfField& u_plus, double p);

struct CapSplit {
    double F = 0.0;  // reflected-kernel log over the region with squared reflected distance >= 1
    double G = 0.0;  // minus the log over the complementary cap; F - G = H2(x), F,G >= 0
};

/// Split of H2 at the upper node (i, row r) across the unit cap in the
/// reflected metric.
CapSplit halfplane_F_G(const HalfField& u_plus, double p, int i, int r);

/// |v|^p applied nodewise.
HalfField abs_pow(const HalfField& v, double p);

}  // namespace sn
