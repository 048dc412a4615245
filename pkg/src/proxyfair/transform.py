"""Weighted binary sample transformation.

Doubles a dataset so a real-valued proxy column becomes a binary
pseudo-group label plus sample mass: the first copy of each row carries
the complement weight, the second copy the proxy weight. Group statistics
computed on the doubled table equal the proxy-weighted statistics on the
original, which is what lets off-the-shelf weighted learners consume
real-valued proxies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import MOutOfRange


@dataclass(frozen=True)
class WeightedBinaryDataset:
    """Doubled dataset with binary pseudo-groups and provenance.

    Row i < n mirrors source row i with pseudo-group 0; row n + i mirrors
    it with pseudo-group 1. ``dataset.sensitive`` holds the two indicator
    columns [1 - group, group]; masses telescope pairwise back to the
    source mass.
    """

    dataset: Dataset
    source_rows: np.ndarray
    group: np.ndarray  # the binary pseudo-group column, length 2n

    @property
    def n_source(self) -> int:
        return self.dataset.n // 2


def wbst(dataset: Dataset, proxy, k: int) -> WeightedBinaryDataset:
    """Apply the transformation for one proxy column.

    ``proxy`` is a proxy model with range [0, 1] (anything else raises
    MOutOfRange) or a raw value array already in [0, 1]. Zero-mass rows are
    kept so indices stay aligned with the source.
    """
    if hasattr(proxy, "predict"):
        if proxy.M != 1.0:
            raise MOutOfRange(proxy.M)
        values = proxy.predict(dataset.features, k)
    else:
        values = np.asarray(proxy, dtype=np.float64).ravel()
        if values.min() < 0.0 or values.max() > 1.0:
            raise MOutOfRange((float(values.min()), float(values.max())))
    n = dataset.n
    upper = dataset.mass * values
    lower = dataset.mass - upper
    group = np.concatenate([np.zeros(n), np.ones(n)])
    doubled = Dataset(
        np.vstack([dataset.features, dataset.features]),
        np.column_stack([1.0 - group, group]),
        np.vstack([dataset.labels, dataset.labels]),
        np.concatenate([lower, upper]),
        dataset.column_names,
    )
    return WeightedBinaryDataset(doubled, np.concatenate([np.arange(n), np.arange(n)]), group)
