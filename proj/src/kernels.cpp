#include "sn/kernels.hpp"

#include <cmath>
#include <numbers>

namespace sn {

double log_cell_average(double h) {
    // Antiderivative of log over the square: for the quarter cell [0,a]^2,
    //   int log(x^2+y^2) = a^2 log(2a^2) - 3a^2 + pi a^2 / 2,  a = h/2,
    // and log|z| = log(x^2+y^2)/2; averaging over the full cell gives
    return std::log(h) - 0.5 * std::numbers::ln2 - 1.5 + 0.25 * std::numbers::pi;
}

double log_displacement(const GridSpec& g, int di, int dj) {
    if (di == 0 && dj == 0) return log_cell_average(g.h());
    return std::log(std::hypot(di * g.h(), dj * g.h()));
}

KernelTable::KernelTable(const GridSpec& g, KernelKind kind)
    : spec_(g), n_(g.n), kind_(kind), table_(static_cast<std::size_t>(2 * g.n - 1) * (2 * g.n - 1)) {
    const double h = g.h();
    const double log0 = log_cell_average(h);
    std::size_t idx = 0;
    for (int di = -(n_ - 1); di <= n_ - 1; ++di) {
        for (int dj = -(n_ - 1); dj <= n_ - 1; ++dj, ++idx) {
            double v = 0.0;
            if (di == 0 && dj == 0) {
                switch (kind) {
                    case KernelKind::log_kernel: v = log0; break;
                    case KernelKind::log1p: v = 0.0; break;
                    // chosen so the identity log1p - log1p_inv == log holds on
                    // the singular cell too
                    case KernelKind::log1p_inv: v = -log0; break;
                    case KernelKind::halfplane_reflected: v = 2.0 * log0; break;
                }
            } else {
                const double r = std::hypot(di * h, dj * h);
                switch (kind) {
                    case KernelKind::log_kernel: v = std::log(r); break;
                    case KernelKind::log1p: v = std::log1p(r); break;
                    case KernelKind::log1p_inv: v = std::log1p(1.0 / r); break;
                    case KernelKind::halfplane_reflected: v = 2.0 * std::log(r); break;
                }
            }
            table_[idx] = v;
        }
    }
}

}  // namespace sn
