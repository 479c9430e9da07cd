#include "labelguard/signal.hpp"

#include <algorithm>
#include <cmath>

#include "labelguard/errors.hpp"

namespace labelguard {

void Signal::validate() const {
  if (!(sampling_rate_hz > 0.0))
    throw ArgumentError("Signal: sampling rate must be positive");
  for (double v : samples)
    if (!std::isfinite(v))
      throw ArgumentError("Signal: non-finite sample value");
}

std::size_t default_median_half_window(double sampling_rate_hz) {
  return static_cast<std::size_t>(std::floor(0.3 * sampling_rate_hz));
}

Signal median_baseline_remove(const Signal& signal, std::size_t half_window) {
  signal.validate();
  const std::size_t n = signal.size();
  const std::size_t w = 2 * half_window + 1;
  if (w > n)
    throw ArgumentError("median_baseline_remove: window of " +
                        std::to_string(w) + " exceeds signal length " +
                        std::to_string(n));

  // Edge-replicated padding lets one sliding window cover all positions.
  std::vector<double> padded;
  padded.reserve(n + 2 * half_window);
  padded.insert(padded.end(), half_window, signal.samples.front());
  padded.insert(padded.end(), signal.samples.begin(), signal.samples.end());
  padded.insert(padded.end(), half_window, signal.samples.back());

  // Sorted sliding window; w stays small (a few hundred samples) so the
  // insert/erase memmoves beat a tree-based multiset.
  std::vector<double> window(padded.begin(), padded.begin() + w);
  std::sort(window.begin(), window.end());

  Signal out;
  out.sampling_rate_hz = signal.sampling_rate_hz;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.samples[i] = signal.samples[i] - window[half_window];
    if (i + 1 < n) {
      const double leaving = padded[i];
      const double entering = padded[i + w];
      window.erase(std::lower_bound(window.begin(), window.end(), leaving));
      window.insert(std::upper_bound(window.begin(), window.end(), entering),
                    entering);
    }
  }
  return out;
}

SegmentationResult segment_beats(const Signal& signal,
                                 const std::vector<std::size_t>& r_peaks,
                                 const std::vector<ClassLabel>& labels) {
  signal.validate();
  if (labels.size() != r_peaks.size())
    throw ArgumentError("segment_beats: one label per peak required");
  for (std::size_t i = 0; i < r_peaks.size(); ++i) {
    if (i > 0 && r_peaks[i] <= r_peaks[i - 1])
      throw ArgumentError("segment_beats: peaks not strictly increasing");
    if (r_peaks[i] >= signal.size())
      throw ArgumentError("segment_beats: peak index beyond signal end");
  }

  SegmentationResult result;
  if (r_peaks.size() < 3) {
    result.too_few_peaks = true;
    return result;
  }

  result.beats.reserve(r_peaks.size() - 2);
  for (std::size_t k = 1; k + 1 < r_peaks.size(); ++k) {
    const std::size_t lo = (r_peaks[k - 1] + r_peaks[k]) / 2;
    const std::size_t hi = (r_peaks[k] + r_peaks[k + 1]) / 2;
    BeatSegment beat;
    beat.samples.assign(signal.samples.begin() + lo,
                        signal.samples.begin() + hi);
    beat.r_peak_index = r_peaks[k];
    beat.window_start = lo;
    beat.prev_rr_s =
        static_cast<double>(r_peaks[k] - r_peaks[k - 1]) / signal.sampling_rate_hz;
    beat.label = labels[k];
    result.beats.push_back(std::move(beat));
  }
  return result;
}

std::vector<double> resample_morphology(const std::vector<double>& segment,
                                        std::size_t n) {
  const std::size_t ns = segment.size();
  if (ns < 2)
    throw ArgumentError("resample_morphology: segment needs >= 2 samples");
  if (n < 2) throw ArgumentError("resample_morphology: n must be >= 2");

  // r_j - 1 = (j - 1)(ns - 1) / (n - 1) kept as an exact rational so grid
  // hits (endpoints, the identity case) copy samples instead of
  // interpolating them a rounding error apart.
  std::vector<double> out(n);
  const std::size_t den = n - 1;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t num = j * (ns - 1);
    const std::size_t base = num / den;
    const std::size_t rem = num % den;
    if (rem == 0) {
      out[j] = segment[base];
    } else {
      const double frac = static_cast<double>(rem) / static_cast<double>(den);
      out[j] = segment[base] + (segment[base + 1] - segment[base]) * frac;
    }
  }
  return out;
}

double estimate_qrs_duration_s(const BeatSegment& beat,
                               double sampling_rate_hz) {
  if (beat.samples.empty())
    throw ArgumentError("estimate_qrs_duration_s: empty beat");
  if (!(sampling_rate_hz > 0.0))
    throw ArgumentError("estimate_qrs_duration_s: bad sampling rate");

  std::vector<double> sorted = beat.samples;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                   sorted.end());
  const double baseline = sorted[sorted.size() / 2];

  const std::size_t peak = std::min(beat.r_peak_offset(), beat.samples.size() - 1);
  const double amplitude = std::abs(beat.samples[peak] - baseline);
  const double threshold = 0.1 * amplitude;

  std::size_t left = peak;
  while (left > 0 && std::abs(beat.samples[left - 1] - baseline) > threshold)
    --left;
  std::size_t right = peak;
  while (right + 1 < beat.samples.size() &&
         std::abs(beat.samples[right + 1] - baseline) > threshold)
    ++right;

  const double width = static_cast<double>(right - left + 1) / sampling_rate_hz;
  return std::clamp(width, 0.040, 0.200);
}

}  // namespace labelguard
