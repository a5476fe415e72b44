/// \file kernels.hpp
/// \brief Tabulated long-range kernels on node displacements.
#pragma once

#include <vector>

#include "sn/grid.hpp"

namespace sn {

enum class KernelKind {
    log_kernel,           // log|d|,       cell-averaged at d = 0
    log1p,                // log(1+|d|),   smooth, point samples
    log1p_inv,            // log(1+1/|d|), defined so log1p - log1p_inv == log at every entry
    halfplane_reflected,  // log(d1^2 + d2^2) = 2 log|d|, used with d2 = x2+y2 > 0
};

/// Exact cell average (1/h^2) * integral of log|z| over the h x h square
/// centered at the origin: log h - log(2)/2 - 3/2 + pi/4.
double log_cell_average(double h);

/// log-kernel sample for a node displacement (di,dj): log|d| off the origin,
/// the exact cell average at the origin. Valid for any integer displacement,
/// also outside the tabulated range.
double log_displacement(const GridSpec& g, int di, int dj);

/// (2n-1) x (2n-1) kernel samples K(d) for all node displacement vectors,
/// immutable after construction.
class KernelTable {
public:
    KernelTable(const GridSpec& g, KernelKind kind);

    /// Displacement in node units, |di|, |dj| <= n-1.
    double at(int di, int dj) const {
        return table_[static_cast<std::size_t>(di + n_ - 1) * (2 * n_ - 1) + (dj + n_ - 1)];
    }

    KernelKind kind() const { return kind_; }
    const GridSpec& spec() const { return spec_; }

private:
    GridSpec spec_;
    int n_;
    KernelKind kind_;
    std::vector<double> table_;
};

}  // namespace sn
