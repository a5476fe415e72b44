#include "sn/solver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sn/convolve.hpp"

namespace sn {

GridSpec SolverConfig::grid() const { return make_grid(half_width, n); }

void SolverConfig::validate() const {
    make_grid(half_width, n);
    if (p < 2.0) throw std::invalid_argument("config: p must be >= 2");
    if (!(tol_residual > 0.0)) throw std::invalid_argument("config: tol_residual must be positive");
    if (!(step0 > 0.0)) throw std::invalid_argument("config: step0 must be positive");
    if (!(backtrack > 0.0 && backtrack < 1.0))
        throw std::invalid_argument("config: backtrack factor must lie in (0,1)");
    if (max_iters < 1) throw std::invalid_argument("config: max_iters must be positive");
}

// ---------------------------------------------------------------------------
// Preconditioner

struct H1Preconditioner::Impl {
    double* buf = nullptr;
    fftw_plan plan = nullptr;  // RODFT00 is its own inverse up to 2(n+1) per axis
    std::vector<double> lambda;

    ~Impl() {
        if (plan) fftw_destroy_plan(plan);
        fftw_free(buf);
    }
};

H1Preconditioner::H1Preconditioner(const GridSpec& g) : spec_(g), impl_(std::make_unique<Impl>()) {
    const int n = g.n;
    impl_->buf = fftw_alloc_real(static_cast<std::size_t>(n) * n);
    impl_->plan = fftw_plan_r2r_2d(n, n, impl_->buf, impl_->buf, FFTW_RODFT00, FFTW_RODFT00, FFTW_ESTIMATE);
    if (!impl_->plan) throw std::runtime_error("H1Preconditioner: planning failed");
    impl_->lambda.resize(n);
    const double h = g.h();
    for (int k = 0; k < n; ++k) {
        const double s = std::sin(0.5 * std::numbers::pi * (k + 1) / (n + 1));
        impl_->lambda[k] = 4.0 * s * s / (h * h);
    }
}

H1Preconditioner::~H1Preconditioner() = default;

ScalarField H1Preconditioner::apply(const ScalarField& r) const {
    if (!(r.spec() == spec_)) throw std::invalid_argument("H1Preconditioner: grid mismatch");
    const int n = spec_.n;
    std::copy(r.values().begin(), r.values().end(), impl_->buf);
    fftw_execute(impl_->plan);
    const double norm = 1.0 / (4.0 * (n + 1.0) * (n + 1.0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            impl_->buf[static_cast<std::size_t>(a) * n + b] *=
                norm / (1.0 + impl_->lambda[a] + impl_->lambda[b]);
    fftw_execute(impl_->plan);
    ScalarField out(spec_);
    std::copy(impl_->buf, impl_->buf + static_cast<std::size_t>(n) * n, out.values().begin());
    return out;
}

// ---------------------------------------------------------------------------
// Initial guesses

namespace {

ScalarField shape_field(const GridSpec& g, bool dipole, double sharp, double amp) {
    ScalarField u(g);
    for (int i = 0; i < g.n; ++i) {
        const double x1 = g.coord(i);
        for (int j = 0; j < g.n; ++j) {
            const double x2 = g.coord(j);
            const double e = std::exp(-sharp * (x1 * x1 + x2 * x2));
            u.at(i, j) = dipole ? amp * x2 * e : amp * e;
        }
    }
    return u;
}

bool shape_projectable(const GridSpec& g, double p, bool dipole, double sharp, ScalarField& out) {
    for (double amp = 1.0; amp <= 1048576.0; amp *= 2.0) {
        ScalarField u = shape_field(g, dipole, sharp, amp);
        const double v0 = v_functionals(u, p).v0;
        if (v0 < 0.0) {
            out = std::move(u);
            return true;
        }
        if (v0 > 0.0) return false;  // sign is amplitude-invariant; only v0 == 0 warrants retrying
    }
    return false;
}

}  // namespace

ScalarField initial_guess(const SolverConfig& cfg) {
    cfg.validate();
    const GridSpec g = cfg.grid();
    const bool dipole = cfg.initial_guess == InitialGuessKind::dipole_gaussian;
    if (cfg.initial_guess == InitialGuessKind::from_file)
        throw std::invalid_argument("initial_guess: from_file starts are supplied by the caller");
    ScalarField u;
    for (double sharp = 1.0; sharp <= 1048576.0; sharp *= 2.0) {
        if (shape_projectable(g, cfg.p, dipole, sharp, u)) return u;
        if (!dipole) break;  // the radial gaussian has no width fallback
    }
    throw std::runtime_error("initial_guess: no amplitude in [2^-20, 2^20] yields v0 < 0");
}

// ---------------------------------------------------------------------------
// Descent loop

namespace {

ScalarField scaled(const ScalarField& u, double t) {
    ScalarField out(u.spec());
    auto src = u.values();
    auto dst = out.values();
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = t * src[k];
    return out;
}

void axpy(ScalarField& y, double a, const ScalarField& x) {
    auto Y = y.values();
    auto X = x.values();
    for (std::size_t k = 0; k < Y.size(); ++k) Y[k] += a * X[k];
}

// integer-node x1 shift with zero fill (exact translation on the lattice)
ScalarField shift_x1(const ScalarField& u, int nodes) {
    const int n = u.n();
    ScalarField out(u.spec());
    for (int i = 0; i < n; ++i) {
        const int src = i + nodes;
        if (src < 0 || src >= n) continue;
        for (int j = 0; j < n; ++j) out.at(i, j) = u.at(src, j);
    }
    return out;
}

int centroid_shift_nodes(const ScalarField& u) {
    const GridSpec& g = u.spec();
    long double wsum = 0.0L, xsum = 0.0L;
    for (int i = 0; i < g.n; ++i) {
        const double x1 = g.coord(i);
        for (int j = 0; j < g.n; ++j) {
            const double a = std::abs(u.at(i, j));
            wsum += a;
            xsum += static_cast<long double>(a) * x1;
        }
    }
    if (wsum == 0.0L) return 0;
    const double c = static_cast<double>(xsum / wsum);
    return static_cast<int>(std::lround(c / g.h()));
}

void sign_normalize(ScalarField& u, SymmetryClass sym) {
    const int n = u.n();
    double best = 0.0;
    const int j0 = (sym == SymmetryClass::odd_in_x2) ? n / 2 : 0;
    for (int i = 0; i < n; ++i)
        for (int j = j0; j < n; ++j)
            if (std::abs(u.at(i, j)) > std::abs(best)) best = u.at(i, j);
    if (best < 0.0)
        for (double& x : u.values()) x = -x;
}

struct RayState {
    double h1 = 0.0, v0 = 0.0, t = 1.0, energy = 0.0;
};

// Nehari projection bookkeeping for a candidate field; false when v0 >= 0.
bool project_state(const ScalarField& v, double p, RayState& s) {
    s.h1 = h1_norm_sq(v);
    if (s.h1 == 0.0) return false;
    s.v0 = v_functionals(v, p).v0;
    if (!(s.v0 < 0.0)) return false;
    s.t = nehari_t(s.h1, s.v0, p);
    s.energy = ray_energy(s.h1, s.v0, p, s.t);
    return true;
}

}  // namespace

SolutionRecord minimize(const SolverConfig& cfg) { return minimize(cfg, initial_guess(cfg)); }

SolutionRecord minimize(const SolverConfig& cfg, const ScalarField& start) {
    cfg.validate();
    const GridSpec g = cfg.grid();
    if (!(start.spec() == g)) throw std::invalid_argument("minimize: start field grid mismatch");
    const bool odd = cfg.symmetry == SymmetryClass::odd_in_x2;
    const double p = cfg.p;

    SolutionRecord rec;
    rec.config = cfg;

    ScalarField u = odd ? project_odd(start) : start;
    RayState state;
    if (!project_state(u, p, state)) {
        rec.u = u;
        rec.failure_reason = "start field is not Nehari-projectable (v0 >= 0)";
        return rec;
    }
    u = scaled(u, state.t);
    state.h1 *= state.t * state.t;
    state.v0 *= std::pow(state.t, 2.0 * p);
    state.t = 1.0;
    double I = ray_energy(state.h1, state.v0, p, 1.0);

    const H1Preconditioner precond(g);
    const LogConvolver& conv = shared_convolver(g, KernelKind::log_kernel);
    double step = cfg.step0;
    const double max_step = 4.0 * cfg.step0;
    double t_last = 1.0;

    for (int iter = 0; iter <= cfg.max_iters; ++iter) {
        // residual of the current iterate
        ScalarField f(g);
        {
            auto src = u.values();
            auto dst = f.values();
            if (p == 2.0)
                for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] * src[k];
            else
                for (std::size_t k = 0; k < src.size(); ++k) dst[k] = std::pow(std::abs(src[k]), p);
        }
        const ScalarField w = conv.apply(f);
        ScalarField r = laplacian(u);
        {
            const int n = g.n;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double ui = u.at(i, j);
                    const double nl =
                        (p == 2.0) ? ui : (ui == 0.0 ? 0.0 : std::pow(std::abs(ui), p - 2.0) * ui);
                    r.at(i, j) = -r.at(i, j) + ui + w.at(i, j) * nl;
                }
        }
        const double rnorm = l2_norm(r);
        const double unorm = l2_norm(u);
        const double rel = rnorm / unorm;
        rec.history.push_back({iter, I, rel, t_last, step});
        rec.iterations = iter;
        rec.residual_norm = rnorm;

        const double nehari = state.h1 + state.v0;
        if (rel <= cfg.tol_residual && std::abs(nehari) <= 1e-8 * state.h1) {
            rec.converged = true;
            break;
        }
        if (iter == cfg.max_iters) {
            rec.failure_reason = "max_iters reached, residual " + std::to_string(rel);
            break;
        }
        if (!all_finite(r)) {
            rec.failure_reason = "non-finite residual";
            break;
        }

        const ScalarField gdir = precond.apply(r);

        // backtracking on I; the accepted sequence is non-increasing up to
        // round-off
        const double allow = 1e-13 * (1.0 + std::abs(I));
        double tau = step;
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            ScalarField v = u;
            axpy(v, -tau, gdir);
            if (odd) v = project_odd(v);
            RayState trial;
            if (project_state(v, p, trial) && trial.energy <= I + allow) {
                u = scaled(v, trial.t);
                t_last = trial.t;
                trial.h1 *= trial.t * trial.t;
                trial.v0 *= std::pow(trial.t, 2.0 * p);
                trial.t = 1.0;
                if (trial.energy > I + allow)
                    throw std::logic_error("minimize: energy increased on an accepted step");
                I = trial.energy;
                state = trial;
                accepted = true;
                break;
            }
            tau *= cfg.backtrack;
        }
        if (!accepted) {
            rec.failure_reason = "backtracking stalled at residual " + std::to_string(rel);
            break;
        }
        step = std::min(tau / cfg.backtrack, max_step);

        // counter translation drift along x1 (the problem is translation
        // invariant in x1; minimizers are determined up to such shifts)
        if ((iter + 1) % 100 == 0) {
            const int shift = centroid_shift_nodes(u);
            if (shift != 0) {
                ScalarField v = shift_x1(u, shift);
                if (odd) v = project_odd(v);
                RayState moved;
                if (project_state(v, p, moved) && moved.energy <= I + allow) {
                    u = scaled(v, moved.t);
                    moved.h1 *= moved.t * moved.t;
                    moved.v0 *= std::pow(moved.t, 2.0 * p);
                    moved.t = 1.0;
                    I = moved.energy;
                    state = moved;
                }
            }
        }
    }

    sign_normalize(u, cfg.symmetry);
    rec.u = std::move(u);
    rec.breakdown = energy(rec.u, p);
    return rec;
}

ScalarField interpolate_bilinear(const ScalarField& u, const GridSpec& fine) {
    const GridSpec& c = u.spec();
    ScalarField out(fine);
    auto sample = [&](int i, int j) -> double {
        if (i < 0 || i >= c.n || j < 0 || j >= c.n) return 0.0;
        return u.at(i, j);
    };
    for (int i = 0; i < fine.n; ++i) {
        const double si = (fine.coord(i) - c.coord(0)) / c.h();
        const int i0 = static_cast<int>(std::floor(si));
        const double fi = si - i0;
        for (int j = 0; j < fine.n; ++j) {
            const double sj = (fine.coord(j) - c.coord(0)) / c.h();
            const int j0 = static_cast<int>(std::floor(sj));
            const double fj = sj - j0;
            out.at(i, j) = (1 - fi) * ((1 - fj) * sample(i0, j0) + fj * sample(i0, j0 + 1)) +
                           fi * ((1 - fj) * sample(i0 + 1, j0) + fj * sample(i0 + 1, j0 + 1));
        }
    }
    return out;
}

double cross_validate(const SolutionRecord& record, int finer_n) {
    if (!record.converged) throw std::invalid_argument("cross_validate: record did not converge");
    const int n = record.config.n;
    if (finer_n != n && finer_n != 2 * n)
        throw std::invalid_argument("cross_validate: finer_n must be n or 2n");
    SolverConfig fine_cfg = record.config;
    fine_cfg.n = finer_n;
    const ScalarField start =
        (finer_n == n) ? record.u : interpolate_bilinear(record.u, fine_cfg.grid());
    SolutionRecord fine = minimize(fine_cfg, start);
    if (!fine.converged) throw std::runtime_error("cross_validate: fine solve did not converge");
    return std::abs(fine.breakdown.total - record.breakdown.total);
}

}  // namespace sn
