#!/usr/bin/env python3
"""Converts MIT-BIH .atr annotations to the annotations CSV schema.

Usage:
  python3 scripts/convert_mitbih_annotations.py <mitbih_dir> <out.csv> [records...]

Requires the `wfdb` package (pip install wfdb). Records default to the 20
used by the experiment harness. The output schema is
`record_id,sample_index,label`; symbol filtering (keeping N, A, V, R, /, L)
happens downstream in the loader, so all beat symbols are written as-is.
"""

import csv
import sys

DEFAULT_RECORDS = [
    "100", "102", "104", "105", "106", "107", "118", "119", "200", "201",
    "202", "203", "205", "208", "209", "212", "213", "214", "215", "217",
]


def main():
    if len(sys.argv) < 3:
        print(__doc__)
        return 2
    try:
        import wfdb
    except ImportError:
        print("the wfdb package is required: pip install wfdb", file=sys.stderr)
        return 2

    mitbih_dir, out_path = sys.argv[1], sys.argv[2]
    records = sys.argv[3:] or DEFAULT_RECORDS
    with open(out_path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["record_id", "sample_index", "label"])
        for record in records:
            ann = wfdb.rdann(f"{mitbih_dir}/{record}", "atr")
            for sample, symbol in zip(ann.sample, ann.symbol):
                w.writerow([record, int(sample), symbol])
    print(f"wrote {out_path} for {len(records)} records")
    return 0


if __name__ == "__main__":
    sys.exit(main())
