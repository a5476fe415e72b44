#include "sn/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace sn {

GridSpec make_grid(double half_width, int n) {
    if (!(half_width > 0.0))
        throw std::invalid_argument("make_grid: half width must be positive");
    if (n < 2)
        throw std::invalid_argument("make_grid: need at least 2 nodes per axis");
    if (n % 2 != 0)
        throw std::invalid_argument("make_grid: node count must be even");
    GridSpec g;
    g.half_width = half_width;
    g.n = n;
    g.pitch = half_width / n;
    return g;
}

ScalarField project_odd(const ScalarField& u) {
    const int n = u.n();
    ScalarField out(u.spec());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.at(i, j) = 0.5 * (u.at(i, j) - u.at(i, n - 1 - j));
    return out;
}

bool is_exactly_odd(const ScalarField& u) {
    const int n = u.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (u.at(i, j) != -u.at(i, n - 1 - j)) return false;
    return true;
}

bool all_finite(const ScalarField& u) {
    for (double x : u.values())
        if (!std::isfinite(x)) return false;
    return true;
}

double h1_norm_sq(const ScalarField& u) {
    const int n = u.n();
    const double h = u.spec().h();
    long double grad = 0.0L, mass = 0.0L;
    // x1-edges: for each column of the transposed view, n+1 edges per line
    for (int j = 0; j < n; ++j) {
        double prev = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = u.at(i, j) - prev;
            grad += static_cast<long double>(d) * d;
            prev = u.at(i, j);
        }
        grad += static_cast<long double>(prev) * prev;  // edge to the ghost at i=n
    }
    // x2-edges
    for (int i = 0; i < n; ++i) {
        double prev = 0.0;
        for (int j = 0; j < n; ++j) {
            const double d = u.at(i, j) - prev;
            grad += static_cast<long double>(d) * d;
            prev = u.at(i, j);
        }
        grad += static_cast<long double>(prev) * prev;
    }
    for (double x : u.values()) mass += static_cast<long double>(x) * x;
    return static_cast<double>(grad + mass * h * h);  // grad/h^2 * h^2 cancels
}

double lp_norm_p(const ScalarField& u, double p) {
    if (p < 2.0) throw std::invalid_argument("lp_norm_p: p must be >= 2");
    const double h = u.spec().h();
    long double s = 0.0L;
    if (p == 2.0) {
        for (double x : u.values()) s += static_cast<long double>(x) * x;
    } else {
        for (double x : u.values()) s += std::pow(std::abs(x), p);
    }
    return static_cast<double>(s * h * h);
}

double star_norm_p(const ScalarField& u, double p) {
    if (p < 2.0) throw std::invalid_argument("star_norm_p: p must be >= 2");
    const GridSpec& g = u.spec();
    const double h = g.h();
    long double s = 0.0L;
    for (int i = 0; i < g.n; ++i) {
        const double x1 = g.coord(i);
        for (int j = 0; j < g.n; ++j) {
            const double r = std::hypot(x1, g.coord(j));
            const double a = std::abs(u.at(i, j));
            const double ap = (p == 2.0) ? a * a : std::pow(a, p);
            s += static_cast<long double>(std::log1p(r)) * ap;
        }
    }
    return static_cast<double>(s * h * h);
}

double l2_norm(const ScalarField& u) {
    long double s = 0.0L;
    for (double x : u.values()) s += static_cast<long double>(x) * x;
    return std::sqrt(static_cast<double>(s)) * u.spec().h();
}

double max_abs(const ScalarField& u) {
    double m = 0.0;
    for (double x : u.values()) m = std::max(m, std::abs(x));
    return m;
}

ScalarField laplacian(const ScalarField& u) {
    const int n = u.n();
    const double inv_h2 = 1.0 / (u.spec().h() * u.spec().h());
    ScalarField out(u.spec());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double up = (i > 0) ? u.at(i - 1, j) : 0.0;
            const double dn = (i < n - 1) ? u.at(i + 1, j) : 0.0;
            const double lf = (j > 0) ? u.at(i, j - 1) : 0.0;
            const double rt = (j < n - 1) ? u.at(i, j + 1) : 0.0;
            out.at(i, j) = (up + dn + lf + rt - 4.0 * u.at(i, j)) * inv_h2;
        }
    }
    return out;
}

}  // namespace sn
