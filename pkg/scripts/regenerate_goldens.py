"""Regenerate the golden empirical-ratio fixtures.

The golden suites compare freshly observed maxima of the two-sided
maximal/square comparison ratios against the values stored here, with a
+-5% band.  The sampling is pinned (seed 0, fixed trial count and levels),
so the stored values are reproducible bit-for-bit on any platform with the
same numpy.
"""

import json
import pathlib

from normlab.checks.dyadic_checks import _RATIO_SPECS, observed_ratio_max

out = {}
for family, p in _RATIO_SPECS:
    check_id = f"dyadic.golden_{family}_p{p:g}"
    out[check_id] = observed_ratio_max(family, p)
    print(f"{check_id}: {out[check_id]:.12g}")

target = pathlib.Path(__file__).resolve().parent.parent / "src" / "normlab" / "data"
target.mkdir(parents=True, exist_ok=True)
path = target / "golden_ratios.json"
path.write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
print(f"wrote {path}")
