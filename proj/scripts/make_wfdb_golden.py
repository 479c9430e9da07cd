#!/usr/bin/env python3
"""Builds the format-212 golden fixture used by the acceptance suite.

Synthesizes a 30 s two-channel ECG-like record at 360 Hz, packs it with an
independent format-212 encoder (pure Python, written directly from the format
definition: each 3-byte frame holds two 12-bit two's-complement samples,
s1 = b0 | ((b1 & 0x0F) << 8), s2 = b2 | ((b1 & 0xF0) << 4)), and writes

  tests/data/golden.dat          the packed byte stream
  tests/data/golden_samples.csv  channel,index,value rows (the decoder
                                     oracle)
  tests/data/golden_annotations.csv  record_id,sample_index,label beat marks
  tests/data/golden_beats.csv        record_id,r_peak_index,label,qrs_duration_ms

Deterministic: fixed seed, no third-party imports.
"""

import csv
import math
import pathlib
import random

FS = 360
SECONDS = 30
N = FS * SECONDS
RECORD_ID = "golden"
OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


def beat_template(t):
    """Crude PQRST-ish pulse centered at t=0 (seconds)."""
    p = 0.12 * math.exp(-((t + 0.20) ** 2) / (2 * 0.025**2))
    q = -0.15 * math.exp(-((t + 0.035) ** 2) / (2 * 0.008**2))
    r = 1.00 * math.exp(-(t**2) / (2 * 0.012**2))
    s = -0.22 * math.exp(-((t - 0.035) ** 2) / (2 * 0.010**2))
    tw = 0.30 * math.exp(-((t - 0.28) ** 2) / (2 * 0.060**2))
    return p + q + r + s + tw


def synthesize():
    rng = random.Random(20260814)
    labels = ["N", "N", "V", "N", "A", "N", "R", "N", "/", "L"]
    peaks = []
    at = int(0.45 * FS)
    while at < N - int(0.6 * FS):
        peaks.append(at)
        at += int(FS * rng.uniform(0.70, 0.95))
    ch0 = [0.0] * N
    ch1 = [0.0] * N
    for k, peak in enumerate(peaks):
        amp = rng.uniform(0.9, 1.1)
        lo = max(0, peak - int(0.45 * FS))
        hi = min(N, peak + int(0.55 * FS))
        for i in range(lo, hi):
            v = amp * beat_template((i - peak) / FS)
            ch0[i] += v
            ch1[i] += 0.6 * v
    for i in range(N):
        drift = 0.25 * math.sin(2 * math.pi * 0.33 * i / FS)
        hum = 0.04 * math.sin(2 * math.pi * 50.0 * i / FS)
        ch0[i] += drift + hum + rng.gauss(0, 0.01)
        ch1[i] += 0.8 * drift + hum + rng.gauss(0, 0.01)
    adc0 = [max(-2048, min(2047, round(1024 + 200 * v))) for v in ch0]
    adc1 = [max(-2048, min(2047, round(1024 + 200 * v))) for v in ch1]
    beat_labels = [labels[k % len(labels)] for k in range(len(peaks))]
    return adc0, adc1, peaks, beat_labels


def encode_212(samples):
    """Independent reference encoder for interleaved 12-bit sample pairs."""
    assert len(samples) % 2 == 0
    out = bytearray()
    for i in range(0, len(samples), 2):
        a = samples[i] & 0xFFF
        b = samples[i + 1] & 0xFFF
        out.append(a & 0xFF)
        out.append(((a >> 8) & 0x0F) | (((b >> 8) & 0x0F) << 4))
        out.append(b & 0xFF)
    return bytes(out)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    adc0, adc1, peaks, beat_labels = synthesize()

    interleaved = []
    for a, b in zip(adc0, adc1):
        interleaved.append(a)
        interleaved.append(b)
    (OUT / "golden.dat").write_bytes(encode_212(interleaved))

    with open(OUT / "golden_samples.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["channel", "index", "value"])
        for i, v in enumerate(adc0):
            w.writerow([0, i, v])
        for i, v in enumerate(adc1):
            w.writerow([1, i, v])

    with open(OUT / "golden_annotations.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["record_id", "sample_index", "label"])
        for peak, label in zip(peaks, beat_labels):
            w.writerow([RECORD_ID, peak, label])

    with open(OUT / "golden_beats.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["record_id", "r_peak_index", "label", "qrs_duration_ms"])
        for peak, label in zip(peaks, beat_labels):
            w.writerow([RECORD_ID, peak, label, 80])

    print(f"{len(peaks)} beats, {N} samples/channel -> {OUT}")


if __name__ == "__main__":
    main()
