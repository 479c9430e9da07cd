#include <algorithm>
#include <cmath>
#include <vector>

#include "labelguard/errors.hpp"
#include "labelguard/signal.hpp"

namespace labelguard {

namespace {

struct FilterPair {
  std::vector<double> lo;  // scaling (analysis low-pass)
  std::vector<double> hi;  // wavelet (analysis high-pass)
};

FilterPair filters(Wavelet wavelet) {
  switch (wavelet) {
    case Wavelet::haar: {
      const double s = 1.0 / std::sqrt(2.0);
      return {{s, s}, {s, -s}};
    }
    case Wavelet::db4: {
      const double r3 = std::sqrt(3.0);
      const double d = 4.0 * std::sqrt(2.0);
      std::vector<double> lo = {(1.0 + r3) / d, (3.0 + r3) / d,
                                (3.0 - r3) / d, (1.0 - r3) / d};
      // Quadrature mirror: g[n] = (-1)^n h[taps-1-n].
      std::vector<double> hi = {lo[3], -lo[2], lo[1], -lo[0]};
      return {std::move(lo), std::move(hi)};
    }
  }
  throw ArgumentError("unknown wavelet family");
}

// One periodized analysis step; m must be even.
void analysis_step(const std::vector<double>& x, const FilterPair& f,
                   std::vector<double>& approx, std::vector<double>& detail) {
  const std::size_t m = x.size();
  const std::size_t half = m / 2;
  const std::size_t taps = f.lo.size();
  approx.assign(half, 0.0);
  detail.assign(half, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    double a = 0.0, d = 0.0;
    for (std::size_t t = 0; t < taps; ++t) {
      const double v = x[(2 * k + t) % m];
      a += f.lo[t] * v;
      d += f.hi[t] * v;
    }
    approx[k] = a;
    detail[k] = d;
  }
}

// Adjoint of analysis_step; exact inverse for an orthonormal filter pair.
std::vector<double> synthesis_step(const std::vector<double>& approx,
                                   const std::vector<double>& detail,
                                   const FilterPair& f) {
  const std::size_t half = approx.size();
  const std::size_t m = half * 2;
  const std::size_t taps = f.lo.size();
  std::vector<double> x(m, 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t t = 0; t < taps; ++t) {
      x[(2 * k + t) % m] += f.lo[t] * approx[k] + f.hi[t] * detail[k];
    }
  }
  return x;
}

std::vector<double> reflect_pad(const std::vector<double>& x,
                                std::size_t target) {
  std::vector<double> out = x;
  out.reserve(target);
  // Mirror about the last sample; pad never exceeds the signal length
  // because length >= 2^levels is checked by the caller.
  std::size_t src = x.size() >= 2 ? x.size() - 2 : 0;
  while (out.size() < target) {
    out.push_back(x[src]);
    if (src > 0) --src;
  }
  return out;
}

double universal_threshold(const std::vector<double>& finest_details,
                           std::size_t signal_length) {
  std::vector<double> mags(finest_details.size());
  for (std::size_t i = 0; i < mags.size(); ++i)
    mags[i] = std::abs(finest_details[i]);
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  const double mad = mags[mags.size() / 2];
  const double sigma = mad / 0.6745;
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(signal_length)));
}

}  // namespace

WaveletDecomposition wavelet_decompose(const Signal& signal, int levels,
                                       Wavelet wavelet) {
  signal.validate();
  if (levels < 1) throw ArgumentError("wavelet_decompose: levels must be >= 1");
  if (levels > 62 ||
      signal.size() < (static_cast<std::size_t>(1) << levels))
    throw ArgumentError("wavelet_decompose: signal shorter than 2^levels");

  const std::size_t block = static_cast<std::size_t>(1) << levels;
  const std::size_t padded_len =
      (signal.size() + block - 1) / block * block;

  const FilterPair f = filters(wavelet);
  WaveletDecomposition dec;
  dec.original_length = signal.size();
  dec.sampling_rate_hz = signal.sampling_rate_hz;
  dec.details.reserve(static_cast<std::size_t>(levels));

  std::vector<double> current = reflect_pad(signal.samples, padded_len);
  for (int level = 0; level < levels; ++level) {
    std::vector<double> approx, detail;
    analysis_step(current, f, approx, detail);
    dec.details.push_back(std::move(detail));
    current = std::move(approx);
  }
  dec.approx = std::move(current);
  return dec;
}

Signal wavelet_reconstruct(const WaveletDecomposition& dec, Wavelet wavelet) {
  const FilterPair f = filters(wavelet);
  std::vector<double> current = dec.approx;
  for (auto it = dec.details.rbegin(); it != dec.details.rend(); ++it)
    current = synthesis_step(current, *it, f);
  if (current.size() < dec.original_length)
    throw ArgumentError("wavelet_reconstruct: inconsistent decomposition");
  current.resize(dec.original_length);
  return Signal{std::move(current), dec.sampling_rate_hz};
}

Signal wavelet_denoise(const Signal& signal, int levels, Wavelet wavelet) {
  WaveletDecomposition dec = wavelet_decompose(signal, levels, wavelet);
  const double threshold =
      universal_threshold(dec.details.front(), signal.size());
  for (auto& level : dec.details) {
    for (double& c : level) {
      const double mag = std::abs(c) - threshold;
      c = mag > 0.0 ? (c > 0.0 ? mag : -mag) : 0.0;
    }
  }
  return wavelet_reconstruct(dec, wavelet);
}

}  // namespace labelguard
