#pragma once

// FFTW-backed spectral operations on the periodic grid. Plans are created
// once per size (FFTW planning is not thread-safe, so creation is guarded)
// and executed with per-call buffers through the new-array interface.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "kdvvar/grid.hpp"

namespace kdv::spectral {

using Spectrum = std::vector<std::complex<double>>;

/// Unnormalised forward real-to-complex transform (M/2 + 1 modes).
Spectrum forward(std::span<const double> samples);

/// Inverse of forward() including the 1/M normalisation.
std::vector<double> backward(const Spectrum& modes, std::size_t points);

/// Angular wavenumber of mode j on the grid: π j / L.
double wavenumber(const Grid& grid, std::size_t j);

/// Multiplies mode j by (i κ_j)^order. The Nyquist mode is dropped for odd
/// orders so real data stays real.
Spectrum differentiate(const Spectrum& modes, const Grid& grid, int order);

/// Applies a real, even Fourier multiplier m(κ).
std::vector<double> apply_multiplier(std::span<const double> samples, const Grid& grid,
                                     const std::function<double(double)>& multiplier);

/// Σ_j w_j m(κ_j) Re(û_j conj(v̂_j)) scaled so that m ≡ 1 gives h Σ u_i v_i.
double weighted_inner(const Spectrum& u, const Spectrum& v, const Grid& grid,
                      const std::function<double(double)>& multiplier);

}  // namespace kdv::spectral
