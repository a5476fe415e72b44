#include "sn/symmetry.hpp"

#include <cmath>
#include <stdexcept>

#include "sn/convolve.hpp"
#include "sn/halfplane.hpp"
#include "sn/kernels.hpp"

namespace sn {

double lattice_lambda(const GridSpec& g, int k) {
    if (k < 1 || k > 2 * g.n - 2) throw std::invalid_argument("lattice_lambda: index out of range");
    return (k - g.n) * g.pitch;  // -L + k h/2, written to negate exactly under k <-> 2n-k
}

int lambda_index(const GridSpec& g, double lambda) {
    const double pos = lambda / g.pitch + g.n;
    const int k = static_cast<int>(std::lround(pos));
    if (std::abs(pos - k) > 1e-9 || k < 1 || k > 2 * g.n - 2)
        throw std::invalid_argument("lambda is not a lattice-compatible plane position");
    return k;
}

std::vector<double> lattice_lambdas(const GridSpec& g, double lo, double hi) {
    std::vector<double> out;
    for (int k = 1; k <= 2 * g.n - 2; ++k) {
        const double lam = lattice_lambda(g, k);
        if (lam >= lo && lam <= hi) out.push_back(lam);
    }
    return out;
}

AxisDetection detect_axis(const ScalarField& u) {
    const int n = u.n();
    const double scale = max_abs(u);
    if (scale == 0.0) throw std::invalid_argument("detect_axis: zero field");
    AxisDetection best;
    best.asymmetry = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 2 * n - 2; ++k) {
        double worst = 0.0;
        for (int i = 0; i < n && worst < best.asymmetry * scale; ++i) {
            const int ir = k - 1 - i;
            for (int j = 0; j < n; ++j) {
                const double refl = (ir >= 0 && ir < n) ? u.at(ir, j) : 0.0;
                worst = std::max(worst, std::abs(u.at(i, j) - refl));
            }
        }
        if (worst < best.asymmetry * scale) {
            best.k = k;
            best.asymmetry = worst / scale;
            best.lambda0 = lattice_lambda(u.spec(), k);
        }
    }
    return best;
}

std::vector<MovingPlaneEntry> moving_plane_scan(const ScalarField& u,
                                                const std::vector<double>& lambdas,
                                                double floor_rel) {
    const GridSpec& g = u.spec();
    const int n = g.n;
    const double floor = floor_rel * max_abs(u);
    std::vector<MovingPlaneEntry> out;
    out.reserve(lambdas.size());
    for (double lam : lambdas) {
        const int k = lambda_index(g, lam);
        MovingPlaneEntry e;
        e.lambda = lam;
        bool any = false;
        for (int i = 0; i < n && 2 * i < k - 1; ++i) {  // x1 < lambda
            const int ir = k - 1 - i;
            for (int j = n / 2; j < n; ++j) {
                const double here = u.at(i, j);
                const double refl = (ir >= 0 && ir < n) ? u.at(ir, j) : 0.0;
                if (std::abs(here) <= floor && std::abs(refl) <= floor) continue;
                const double w = refl - here;
                if (!any || w < e.min_w) {
                    e.min_w = w;
                    e.argmin_i = i;
                    e.argmin_j = j;
                    any = true;
                }
            }
        }
        if (!any) e.min_w = 0.0;
        out.push_back(e);
    }
    return out;
}

namespace {

// Shared quadrature for the two plane-difference representations. The y-sum
// runs over the continuum half-strip y1 < lambda restricted to columns where
// either y or its reflection is a grid node; off-grid densities are zero, so
// the strip matches the reflected image of the truncated grid exactly.
double plane_difference(const ScalarField& u, double p, double lambda, int i, int j,
                        bool reflected_kernel) {
    const GridSpec& g = u.spec();
    const int n = g.n;
    if (j < n / 2) throw std::invalid_argument("plane difference: x must be an upper-half node");
    const int k = lambda_index(g, lambda);
    if (2 * i >= k - 1) throw std::invalid_argument("plane difference: x must lie left of the plane");

    auto fpow = [&](int a, int b) -> double {
        if (a < 0 || a >= n) return 0.0;
        const double v = std::abs(u.at(a, b));
        return (p == 2.0) ? v * v : std::pow(v, p);
    };

    const int a_lo = std::min(0, k - n);
    long double s = 0.0L;
    for (int a = a_lo; 2 * a < k - 1; ++a) {
        const int ar = k - 1 - a;
        const bool a_in = (a >= 0 && a < n);
        const bool ar_in = (ar >= 0 && ar < n);
        if (!a_in && !ar_in) continue;
        for (int b = n / 2; b < n; ++b) {
            const double df = fpow(ar, b) - fpow(a, b);
            if (df == 0.0) continue;
            double kdiff;
            if (reflected_kernel) {
                const int sj = j + b + 1 - n;  // (x2+y2)/h, always >= 1 here
                kdiff = 2.0 * (log_displacement(g, i - a, sj) - log_displacement(g, i - ar, sj));
            } else {
                kdiff = log_displacement(g, i - a, j - b) - log_displacement(g, i - ar, j - b);
            }
            s += static_cast<long double>(kdiff) * df;
        }
    }
    const double h2 = g.h() * g.h();
    return static_cast<double>(s) * h2 * (reflected_kernel ? 1.0 : 2.0);
}

}  // namespace

double L_lambda(const ScalarField& u, double p, double lambda, int i, int j) {
    return plane_difference(u, p, lambda, i, j, false);
}

double M_lambda(const ScalarField& u, double p, double lambda, int i, int j) {
    return plane_difference(u, p, lambda, i, j, true);
}

long monotonicity_check(const ScalarField& u, double lambda0, double floor_rel) {
    const GridSpec& g = u.spec();
    const int n = g.n;
    const double h = g.h();
    const double floor = floor_rel * max_abs(u);
    long violations = 0;
    for (int i = 0; i + 1 < n; ++i) {
        const bool right = g.coord(i) > lambda0 + h;       // moving away from the axis
        const bool left = g.coord(i + 1) < lambda0 - h;    // moving toward the axis
        if (!right && !left) continue;
        for (int j = n / 2; j < n; ++j) {
            const double d = u.at(i + 1, j) - u.at(i, j);
            if (right && d >= 0.0 && std::abs(u.at(i, j)) > floor) ++violations;
            if (left && d <= 0.0 && std::abs(u.at(i + 1, j)) > floor) ++violations;
        }
    }
    return violations;
}

long positivity_violations(const ScalarField& u, double floor_rel) {
    const int n = u.n();
    const double floor = floor_rel * max_abs(u);
    long count = 0;
    for (int i = 0; i < n; ++i)
        for (int j = n / 2; j < n; ++j)
            if (u.at(i, j) <= 0.0 && std::abs(u.at(i, j)) > floor) ++count;
    return count;
}

DecayFit decay_fit(const ScalarField& u, double lo_frac, double hi_frac, double floor_rel) {
    const GridSpec& g = u.spec();
    const double lo = lo_frac * g.half_width, hi = hi_frac * g.half_width;
    const double floor = floor_rel * max_abs(u);
    long double sr = 0, sv = 0, srr = 0, srv = 0;
    long count = 0;
    for (int i = 0; i < g.n; ++i) {
        const double x1 = g.coord(i);
        for (int j = 0; j < g.n; ++j) {
            const double r = std::hypot(x1, g.coord(j));
            if (r < lo || r > hi) continue;
            const double a = std::abs(u.at(i, j));
            if (a <= floor) continue;
            const double v = std::log(a);
            sr += r;
            sv += v;
            srr += static_cast<long double>(r) * r;
            srv += static_cast<long double>(r) * v;
            ++count;
        }
    }
    const long double det = count * srr - sr * sr;
    if (count < 2 || det == 0.0L)
        throw std::runtime_error("decay_fit: annulus holds no usable nodes (domain too small "
                                 "or field below the round-off floor)");
    DecayFit fit;
    fit.slope = static_cast<double>((count * srv - sr * sv) / det);
    fit.intercept = static_cast<double>((sv - fit.slope * sr) / count);
    fit.r_lo = lo;
    fit.r_hi = hi;
    fit.nodes = count;
    return fit;
}

AsymptoteGaps asymptotics_check(const ScalarField& u, double p, double lo_frac, double hi_frac) {
    const GridSpec& g = u.spec();
    const int n = g.n;
    ScalarField f(g);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double a = std::abs(u.at(i, j));
            f.at(i, j) = (p == 2.0) ? a * a : std::pow(a, p);
        }
    const ScalarField w = shared_convolver(g, KernelKind::log_kernel).apply(f);
    const double m = lp_norm_p(u, p);

    AsymptoteGaps gaps;
    gaps.r_lo = lo_frac * g.half_width;
    gaps.r_hi = hi_frac * g.half_width;
    for (int i = 0; i < n; ++i) {
        const double x1 = g.coord(i);
        for (int j = 0; j < n; ++j) {
            const double r = std::hypot(x1, g.coord(j));
            if (r < gaps.r_lo || r > gaps.r_hi) continue;
            gaps.w_gap = std::max(gaps.w_gap, std::abs(w.at(i, j) - m * std::log(r)));
        }
    }

    const HalfField up = restrict_upper(u);
    const HalfField H2 = halfplane_H2(up, p);
    long double mp = 0.0L;
    for (int i = 0; i < n; ++i)
        for (int j = n / 2; j < n; ++j) mp += f.at(i, j);
    const double m_plus = static_cast<double>(mp) * g.h() * g.h();
    for (int i = 0; i < n; ++i) {
        const double x1 = g.coord(i);
        for (int r = 0; r < n / 2; ++r) {
            const double rad = std::hypot(x1, up.x2(r));
            if (rad < gaps.r_lo || rad > gaps.r_hi) continue;
            gaps.h2_gap = std::max(gaps.h2_gap,
                                   std::abs(0.5 * H2.at(i, r) - m_plus * std::log(rad)));
        }
    }
    return gaps;
}

SymmetryReport build_symmetry_report(const ScalarField& u, double p, double tail_floor_rel) {
    ScalarField v = u;
    {  // normalize so the upper-half max is positive
        const int n = v.n();
        double best = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = n / 2; j < n; ++j)
                if (std::abs(v.at(i, j)) > std::abs(best)) best = v.at(i, j);
        if (best < 0.0)
            for (double& x : v.values()) x = -x;
    }

    SymmetryReport rep;
    rep.tail_floor_rel = tail_floor_rel;
    const AxisDetection axis = detect_axis(v);
    rep.lambda0 = axis.lambda0;
    rep.asymmetry = axis.asymmetry;
    rep.positivity_count = positivity_violations(v, tail_floor_rel);
    rep.monotonicity_count = monotonicity_check(v, axis.lambda0, tail_floor_rel);

    const GridSpec& g = v.spec();
    const auto lambdas = lattice_lambdas(g, -g.half_width, axis.lambda0);
    rep.movingplane = moving_plane_scan(v, lambdas, tail_floor_rel);
    rep.movingplane_min = 0.0;
    for (const auto& e : rep.movingplane) rep.movingplane_min = std::min(rep.movingplane_min, e.min_w);

    try {
        rep.decay = decay_fit(v);
        rep.decay_ok = true;
    } catch (const std::runtime_error&) {
        rep.decay_ok = false;
    }
    rep.gaps = asymptotics_check(v, p);
    return rep;
}

}  // namespace sn
