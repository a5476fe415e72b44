#include "sn/halfplane.hpp"

#include <cmath>
#include <stdexcept>

#include "sn/convolve.hpp"

namespace sn {

HalfField restrict_upper(const ScalarField& u) {
    const int n = u.n();
    HalfField out(u.spec());
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n / 2; ++r)
            out.at(i, r) = u.at(i, n / 2 + r);
    return out;
}

ScalarField odd_extension(const HalfField& v) {
    const int n = v.n();
    ScalarField out(v.spec());
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < n / 2; ++r) {
            out.at(i, n / 2 + r) = v.at(i, r);
            out.at(i, n / 2 - 1 - r) = -v.at(i, r);
        }
    }
    return out;
}

ScalarField upper_embed(const HalfField& f) {
    const int n = f.n();
    ScalarField out(f.spec());
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n / 2; ++r)
            out.at(i, n / 2 + r) = f.at(i, r);
    return out;
}

ScalarField lower_reflect(const HalfField& f) {
    const int n = f.n();
    ScalarField out(f.spec());
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n / 2; ++r)
            out.at(i, n / 2 - 1 - r) = f.at(i, r);
    return out;
}

HalfField abs_pow(const HalfField& v, double p) {
    const int n = v.n();
    HalfField out(v.spec());
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n / 2; ++r) {
            const double a = std::abs(v.at(i, r));
            out.at(i, r) = (p == 2.0) ? a * a : std::pow(a, p);
        }
    return out;
}

HalfField halfplane_H1(const HalfField& u_plus, double p) {
    const ScalarField rho = upper_embed(abs_pow(u_plus, p));
    ScalarField w = shared_convolver(u_plus.spec(), KernelKind::log_kernel).apply(rho);
    HalfField out = restrict_upper(w);
    const int n = u_plus.n();
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n / 2; ++r)
            out.at(i, r) *= 2.0;
    return out;
}

HalfField halfplane_H2(const HalfField& u_plus, double p) {
    // log((x1-y1)^2 + (x2+y2)^2) = 2 log|x - y'| with y' the lower-half mirror
    // of y, so H2 is the log convolution of the reflected density, doubled.
    const ScalarField rho = lower_reflect(abs_pow(u_plus, p));
    ScalarField w = shared_convolver(u_plus.spec(), KernelKind::log_kernel).apply(rho);
    HalfField out = restrict_upper(w);
    const int n = u_plus.n();
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n / 2; ++r)
            out.at(i, r) *= 2.0;
    return out;
}

CapSplit halfplane_F_G(const HalfField& u_plus, double p, int i, int r) {
    const GridSpec& g = u_plus.spec();
    const int n = g.n;
    if (i < 0 || i >= n || r < 0 || r >= n / 2)
        throw std::invalid_argument("halfplane_F_G: node outside the upper half grid");
    const HalfField f = abs_pow(u_plus, p);
    const double x1 = g.coord(i);
    const double x2 = u_plus.x2(r);
    const double h2 = g.h() * g.h();
    long double F = 0.0L, G = 0.0L;
    for (int a = 0; a < n; ++a) {
        const double d1 = x1 - g.coord(a);
        for (int b = 0; b < n / 2; ++b) {
            const double s2 = x2 + f.x2(b);
            const double d2 = d1 * d1 + s2 * s2;
            const double v = std::log(d2) * f.at(a, b);
            if (d2 >= 1.0)
                F += v;
            else
                G -= v;
        }
    }
    return {static_cast<double>(F) * h2, static_cast<double>(G) * h2};
}

}  // namespace sn
