"""Statistics on per-call energy series.

Smoothing, normalization and alignment, pairwise comparison (RMSD, Pearson, quartile agreement),
autocorrelation, and the ADF and two-sample KS tests. Every function is pure and returns new
values.

```python
from annealwatch.series import EnergySeries, compare_series

report = compare_series(EnergySeries(problem, "problem"), EnergySeries(pi, "indicator"), 500)
report.pearson, report.rmsd, report.bin_agreement
```
"""

from __future__ import annotations

from .basic import (
    bin_breakdown,
    mean_align,
    minmax_normalize,
    moving_average,
    pearson,
    quartile_bin_agreement,
    quartile_bins,
    rmsd,
)
from .correlation import acf, pacf, white_noise_band
from .io import dumps_report, load_report, load_series, save_report, save_series
from .pipeline import PreparedPair, analyze_series, compare_series, prepare_pair
from .significance import AdfResult, KsResult, adf_test, auto_lag, ks_two_sample, mackinnon_p
from .types import EnergySeries, QualityBin, StatReport
