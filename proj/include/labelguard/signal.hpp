#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "labelguard/labels.hpp"

namespace labelguard {

struct Signal {
  std::vector<double> samples;
  double sampling_rate_hz = 0.0;

  std::size_t size() const { return samples.size(); }

  /// Throws ArgumentError on non-finite samples or non-positive rate.
  void validate() const;
};

/// One cardiac cycle, spanning midpoint-to-midpoint around its R-peak.
struct BeatSegment {
  std::vector<double> samples;
  std::size_t r_peak_index = 0;   // index into the parent signal
  std::size_t window_start = 0;   // parent index of samples[0]
  double prev_rr_s = 0.0;
  ClassLabel label = ClassLabel::N;
  std::string record_id;
  std::optional<double> qrs_duration_s;  // from CSV when given, else estimated

  std::size_t r_peak_offset() const { return r_peak_index - window_start; }
};

/// Subtracts the running median over a window of 2 * half_window + 1 samples
/// (edge samples replicated), leaving the baseline-corrected residual.
Signal median_baseline_remove(const Signal& signal, std::size_t half_window);

/// Half window matching roughly 600 ms at the given rate.
std::size_t default_median_half_window(double sampling_rate_hz);

enum class Wavelet { haar, db4 };

/// Multi-level periodized orthogonal wavelet decomposition. The input is
/// reflection-padded to a multiple of 2^levels; details run finest first.
struct WaveletDecomposition {
  std::vector<std::vector<double>> details;
  std::vector<double> approx;
  std::size_t original_length = 0;
  double sampling_rate_hz = 0.0;
};

WaveletDecomposition wavelet_decompose(const Signal& signal, int levels,
                                       Wavelet wavelet);

Signal wavelet_reconstruct(const WaveletDecomposition& dec, Wavelet wavelet);

/// Soft-thresholds every detail level with the universal threshold
/// sigma * sqrt(2 ln L), sigma estimated from the finest-level details as
/// MAD / 0.6745, then reconstructs.
Signal wavelet_denoise(const Signal& signal, int levels, Wavelet wavelet);

/// Beats cut between consecutive R-peak midpoints. The first and last peaks
/// lack one midpoint and are dropped; fewer than 3 peaks yields an empty
/// result with too_few_peaks set.
struct SegmentationResult {
  std::vector<BeatSegment> beats;
  bool too_few_peaks = false;
};

SegmentationResult segment_beats(const Signal& signal,
                                 const std::vector<std::size_t>& r_peaks,
                                 const std::vector<ClassLabel>& labels);

/// Linear morphology resampling of a segment of length n* >= 2 onto n >= 2
/// points:
///   x(j) = y(j*) + (y(j*+1) - y(j*)) (r_j - j*),  r_j = (j-1)(n*-1)/(n-1) + 1
/// with j* the integral part of r_j; the final point equals y(n*) exactly.
std::vector<double> resample_morphology(const std::vector<double>& segment,
                                        std::size_t n);

/// Stand-in QRS width estimator: the contiguous interval around the R-peak
/// where |sample - segment median| exceeds 10% of the R amplitude, clamped
/// to [40 ms, 200 ms].
double estimate_qrs_duration_s(const BeatSegment& beat,
                               double sampling_rate_hz);

}  // namespace labelguard
