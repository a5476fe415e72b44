#include "sn/convolve.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>
#include <tuple>

namespace sn {

int next_fast_size(int m) {
    for (int s = m;; ++s) {
        int r = s;
        while (r % 2 == 0) r /= 2;
        while (r % 3 == 0) r /= 3;
        while (r % 5 == 0) r /= 5;
        if (r == 1) return s;
    }
}

struct LogConvolver::Impl {
    double* real = nullptr;          // pad x pad scratch
    fftw_complex* cplx = nullptr;    // pad x (pad/2+1) scratch
    fftw_complex* kernel_hat = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    ~Impl() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(cplx);
        fftw_free(kernel_hat);
    }
};

LogConvolver::LogConvolver(const GridSpec& g, KernelKind kind)
    : spec_(g), pad_(next_fast_size(2 * g.n - 1)), impl_(std::make_unique<Impl>()) {
    const int P = pad_;
    const int Pc = P / 2 + 1;
    impl_->real = fftw_alloc_real(static_cast<std::size_t>(P) * P);
    impl_->cplx = fftw_alloc_complex(static_cast<std::size_t>(P) * Pc);
    impl_->kernel_hat = fftw_alloc_complex(static_cast<std::size_t>(P) * Pc);
    // FFTW_ESTIMATE keeps planning input-independent and runs reproducible.
    impl_->fwd = fftw_plan_dft_r2c_2d(P, P, impl_->real, impl_->cplx, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_c2r_2d(P, P, impl_->cplx, impl_->real, FFTW_ESTIMATE);
    if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("LogConvolver: FFT planning failed");

    // Kernel wrapped onto the cyclic grid: entry (di mod P, dj mod P).
    KernelTable table(g, kind);
    std::memset(impl_->real, 0, sizeof(double) * P * P);
    const int n = g.n;
    for (int di = -(n - 1); di <= n - 1; ++di) {
        const int iw = (di + P) % P;
        for (int dj = -(n - 1); dj <= n - 1; ++dj) {
            const int jw = (dj + P) % P;
            impl_->real[static_cast<std::size_t>(iw) * P + jw] = table.at(di, dj);
        }
    }
    fftw_execute(impl_->fwd);
    std::memcpy(impl_->kernel_hat, impl_->cplx, sizeof(fftw_complex) * P * Pc);
}

LogConvolver::~LogConvolver() = default;

ScalarField LogConvolver::apply(const ScalarField& rho) const {
    if (!(rho.spec() == spec_)) throw std::invalid_argument("LogConvolver: grid mismatch");
    const int n = spec_.n;
    const int P = pad_;
    const int Pc = P / 2 + 1;
    std::memset(impl_->real, 0, sizeof(double) * P * P);
    for (int i = 0; i < n; ++i)
        std::memcpy(impl_->real + static_cast<std::size_t>(i) * P, &rho.values()[static_cast<std::size_t>(i) * n],
                    sizeof(double) * n);
    fftw_execute(impl_->fwd);
    for (std::size_t k = 0; k < static_cast<std::size_t>(P) * Pc; ++k) {
        const double ar = impl_->cplx[k][0], ai = impl_->cplx[k][1];
        const double br = impl_->kernel_hat[k][0], bi = impl_->kernel_hat[k][1];
        impl_->cplx[k][0] = ar * br - ai * bi;
        impl_->cplx[k][1] = ar * bi + ai * br;
    }
    fftw_execute(impl_->bwd);
    const double scale = spec_.h() * spec_.h() / (static_cast<double>(P) * P);
    ScalarField out(spec_);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.at(i, j) = impl_->real[static_cast<std::size_t>(i) * P + j] * scale;
    return out;
}

const LogConvolver& shared_convolver(const GridSpec& g, KernelKind kind) {
    using Key = std::tuple<int, double, int>;
    static std::map<Key, std::unique_ptr<LogConvolver>> cache;
    const Key key{g.n, g.half_width, static_cast<int>(kind)};
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<LogConvolver>(g, kind)).first;
    return *it->second;
}

ScalarField log_convolve_direct(const ScalarField& rho) {
    const GridSpec& g = rho.spec();
    const int n = g.n;
    KernelTable table(g, KernelKind::log_kernel);
    const double h2 = g.h() * g.h();
    ScalarField out(g);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            long double s = 0.0L;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    s += static_cast<long double>(table.at(i - a, j - b)) * rho.at(a, b);
            out.at(i, j) = static_cast<double>(s) * h2;
        }
    }
    return out;
}

ScalarField log_convolve_fast(const ScalarField& rho) {
    return shared_convolver(rho.spec(), KernelKind::log_kernel).apply(rho);
}

}  // namespace sn
