#include "spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace kdv::spectral {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> allocate(std::size_t n) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto real = allocate<double>(n);
  auto cplx = allocate<fftw_complex>(n / 2 + 1);
  const int ni = static_cast<int>(n);
  PlanPair p;
  p.r2c = fftw_plan_dft_r2c_1d(ni, real.get(), cplx.get(), FFTW_ESTIMATE);
  p.c2r = fftw_plan_dft_c2r_1d(ni, cplx.get(), real.get(), FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

}  // namespace

Spectrum forward(std::span<const double> samples) {
  const std::size_t n = samples.size();
  const auto& p = plans_for(n);
  auto in = allocate<double>(n);
  auto out = allocate<fftw_complex>(n / 2 + 1);
  std::memcpy(in.get(), samples.data(), sizeof(double) * n);
  fftw_execute_dft_r2c(p.r2c, in.get(), out.get());
  Spectrum modes(n / 2 + 1);
  for (std::size_t j = 0; j < modes.size(); ++j) modes[j] = {out[j][0], out[j][1]};
  return modes;
}

std::vector<double> backward(const Spectrum& modes, std::size_t points) {
  const auto& p = plans_for(points);
  auto in = allocate<fftw_complex>(points / 2 + 1);
  auto out = allocate<double>(points);
  for (std::size_t j = 0; j < modes.size(); ++j) {
    in[j][0] = modes[j].real();
    in[j][1] = modes[j].imag();
  }
  fftw_execute_dft_c2r(p.c2r, in.get(), out.get());
  std::vector<double> v(points);
  const double scale = 1.0 / static_cast<double>(points);
  for (std::size_t i = 0; i < points; ++i) v[i] = out[i] * scale;
  return v;
}

double wavenumber(const Grid& grid, std::size_t j) {
  return std::numbers::pi * static_cast<double>(j) / grid.half_width;
}

Spectrum differentiate(const Spectrum& modes, const Grid& grid, int order) {
  Spectrum out(modes.size());
  const std::size_t nyquist = grid.points / 2;
  for (std::size_t j = 0; j < modes.size(); ++j) {
    if (order % 2 == 1 && j == nyquist) {
      out[j] = 0.0;
      continue;
    }
    const std::complex<double> ik(0.0, wavenumber(grid, j));
    std::complex<double> factor = 1.0;
    for (int o = 0; o < order; ++o) factor *= ik;
    out[j] = modes[j] * factor;
  }
  return out;
}

std::vector<double> apply_multiplier(std::span<const double> samples, const Grid& grid,
                                     const std::function<double(double)>& multiplier) {
  auto modes = forward(samples);
  for (std::size_t j = 0; j < modes.size(); ++j) modes[j] *= multiplier(wavenumber(grid, j));
  return backward(modes, samples.size());
}

double weighted_inner(const Spectrum& u, const Spectrum& v, const Grid& grid,
                      const std::function<double(double)>& multiplier) {
  const std::size_t nyquist = grid.points / 2;
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double w = (j == 0 || j == nyquist) ? 1.0 : 2.0;
    s += w * multiplier(wavenumber(grid, j)) * (u[j] * std::conj(v[j])).real();
  }
  return s * grid.spacing() / static_cast<double>(grid.points);
}

}  // namespace kdv::spectral
