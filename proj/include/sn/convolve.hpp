/// \file convolve.hpp
/// \brief Long-range logarithmic convolutions: padded-FFT fast path and the
///        direct-sum oracle path.
#pragma once

#include <memory>

#include "sn/grid.hpp"
#include "sn/kernels.hpp"

namespace sn {

/// Exact linear (non-circular) convolution against a tabulated kernel via
/// zero-padded cyclic FFT on a >= (2n-1)-point grid. Output is
/// h^2 * sum_y K(x-y) rho(y), matching the direct oracle up to round-off.
///
/// Instances hold FFT plans and scratch buffers; they are immutable in
/// contract but not safe for concurrent apply() calls on one instance.
class LogConvolver {
public:
    LogConvolver(const GridSpec& g, KernelKind kind);
    ~LogConvolver();
    LogConvolver(const LogConvolver&) = delete;
    LogConvolver& operator=(const LogConvolver&) = delete;

    ScalarField apply(const ScalarField& rho) const;

    int padded_size() const { return pad_; }
    const GridSpec& spec() const { return spec_; }

private:
    struct Impl;
    GridSpec spec_;
    int pad_ = 0;
    std::unique_ptr<Impl> impl_;
};

/// Smallest 2^a 3^b 5^c >= m.
int next_fast_size(int m);

/// Process-wide convolver cache keyed by (grid, kernel kind).
const LogConvolver& shared_convolver(const GridSpec& g, KernelKind kind);

/// Direct O(n^4) double loop against the log kernel table; deterministic,
/// intended as the oracle for small grids (n <= 64).
ScalarField log_convolve_direct(const ScalarField& rho);

/// Fast-path log convolution, identical contract to log_convolve_direct.
ScalarField log_convolve_fast(const ScalarField& rho);

}  // namespace sn
