"""Datasets, CSV ingestion, binning recipes, synthetic generators, splits.

A Dataset is an immutable table: real features, binary sensitive columns,
binary label columns (one per learning task), and a probability mass per
row. A FiniteDistribution is the exact counterpart used by brute-force
checks: a small support with exact point probabilities and the exact
conditional mean of each sensitive column given the features.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    DegenerateSplit,
    DimensionMismatch,
    EmptyInput,
    MissingColumn,
    NonBinaryLabel,
    NonBinarySensitive,
    NonFiniteInput,
    NonPositiveInput,
    UnknownCode,
    UnparseableCell,
)

MASS_TOL = 1e-12


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


def _is_binary(a: np.ndarray) -> bool:
    return bool(np.all((a == 0.0) | (a == 1.0)))


@dataclass(frozen=True)
class Dataset:
    """Immutable sample: features (n,d), sensitive (n,K), labels (n,m), mass (n,).

    Mass entries are nonnegative and sum to 1 within 1e-12. Sensitive and
    label entries are exactly 0 or 1. Empty sensitive groups are legal at
    construction; they only fail once group statistics are requested.
    """

    features: np.ndarray
    sensitive: np.ndarray
    labels: np.ndarray
    mass: np.ndarray | None = None
    column_names: tuple = ()

    def __post_init__(self):
        f = _freeze(np.atleast_2d(self.features))
        s = _freeze(np.atleast_2d(self.sensitive))
        y = _freeze(np.atleast_2d(self.labels))
        n = f.shape[0]
        if n < 1 or f.shape[1] < 1:
            raise EmptyInput("features")
        if s.shape[0] != n or y.shape[0] != n:
            raise DimensionMismatch(n, (s.shape[0], y.shape[0]))
        if s.shape[1] < 1 or y.shape[1] < 1:
            raise EmptyInput("sensitive/labels")
        if not np.all(np.isfinite(f)):
            raise NonFiniteInput("features")
        if not _is_binary(s):
            raise NonBinarySensitive("?", "?")
        if not _is_binary(y):
            raise NonBinaryLabel("?", "?")
        if self.mass is None:
            m = np.full(n, 1.0 / n)
        else:
            m = np.asarray(self.mass, dtype=np.float64)
        if m.shape != (n,):
            raise DimensionMismatch((n,), m.shape)
        if np.any(m < 0) or abs(float(m.sum()) - 1.0) > MASS_TOL:
            raise NonFiniteInput("mass (negative entries or sum != 1)")
        object.__setattr__(self, "features", f)
        object.__setattr__(self, "sensitive", s)
        object.__setattr__(self, "labels", y)
        object.__setattr__(self, "mass", _freeze(m))
        object.__setattr__(self, "column_names", tuple(self.column_names))

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    @property
    def num_groups(self) -> int:
        return self.sensitive.shape[1]

    @property
    def num_tasks(self) -> int:
        return self.labels.shape[1]

    def with_labels(self, labels: np.ndarray) -> "Dataset":
        return replace(self, labels=labels)

    def take(self, idx: np.ndarray) -> "Dataset":
        """Row subset with mass renormalized to sum 1."""
        idx = np.asarray(idx)
        if idx.size == 0:
            raise DegenerateSplit()
        m = self.mass[idx]
        total = float(m.sum())
        if total <= 0:
            raise DegenerateSplit("selected rows carry zero mass")
        return Dataset(
            self.features[idx],
            self.sensitive[idx],
            self.labels[idx],
            m / total,
            self.column_names,
        )


@dataclass(frozen=True)
class FiniteDistribution:
    """Finite-support distribution with exact probabilities.

    ``cond_z[s, k]`` is the exact conditional mean of sensitive column k at
    support point s; ``labels[s, j]`` the deterministic label of task j.
    Sensitive bits are conditionally independent of labels given the point,
    by construction. ``affine_coef`` holds the generating affine map
    (K, d+1) when the conditional means are affine in the features, else None.
    """

    points: np.ndarray
    probs: np.ndarray
    cond_z: np.ndarray
    labels: np.ndarray
    affine_coef: np.ndarray | None = None

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        if abs(float(p.sum()) - 1.0) > 1e-15 or np.any(p < 0):
            raise NonFiniteInput("support probabilities")
        cz = np.asarray(self.cond_z, dtype=np.float64)
        if np.any(cz < 0) or np.any(cz > 1):
            raise NonFiniteInput("conditional means (outside [0,1])")
        object.__setattr__(self, "points", _freeze(np.atleast_2d(self.points)))
        object.__setattr__(self, "probs", _freeze(p))
        object.__setattr__(self, "cond_z", _freeze(np.atleast_2d(cz)))
        object.__setattr__(self, "labels", _freeze(np.atleast_2d(self.labels)))

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def num_groups(self) -> int:
        return self.cond_z.shape[1]

    @property
    def num_tasks(self) -> int:
        return self.labels.shape[1]


# ---------------------------------------------------------------------------
# Raw tables and binning


@dataclass(frozen=True)
class RawTable:
    """Header + string cells, the shape of a CSV before typing."""

    columns: tuple
    rows: tuple  # tuple of row tuples, cells as strings

    def column_index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise MissingColumn(name) from None


@dataclass(frozen=True)
class BinningRecipe:
    """Maps integer source codes of one column onto bin indices.

    ``bins`` is an ordered tuple of (label, codes) pairs; bin index is the
    position in the tuple. Source-code sets must be disjoint. ``drop``
    lists columns removed wholesale when the recipe is applied.
    """

    column: str
    bins: tuple
    drop: tuple = ()

    def __post_init__(self):
        seen = set()
        for _, codes in self.bins:
            overlap = seen & set(codes)
            if overlap:
                raise NonFiniteInput(f"recipe for {self.column}: codes {overlap} repeated")
            seen |= set(codes)

    def code_map(self) -> dict:
        out = {}
        for index, (_, codes) in enumerate(self.bins):
            for c in codes:
                out[c] = index
        return out


SCHL_RECIPE = BinningRecipe(
    column="SCHL",
    bins=(
        ("Didn't finish high school", frozenset(range(0, 16))),
        ("Finished high school or equivalent", frozenset(range(16, 20))),
        ("Associate's degree", frozenset({20})),
        ("Bachelor's degree", frozenset({21})),
        ("Master's degree", frozenset({22})),
        ("Other professional degree", frozenset({23})),
        ("PhD", frozenset({24})),
    ),
)

ESP_RECIPE = BinningRecipe(
    column="ESP",
    bins=(
        ("N/A", frozenset({0})),
        ("Living with two parents, both working", frozenset({1})),
        ("Living with two parents, one working", frozenset({2, 3})),
        ("Living with two parents, neither working", frozenset({4})),
        ("Living with one parent, working", frozenset({5, 7})),
        ("Living with one parent, not working", frozenset({6, 8})),
    ),
)

JWTR_RECIPE = BinningRecipe(
    column="JWTR",
    bins=(
        ("Personal vehicle", frozenset({1, 8})),
        ("Bus, streetcar, or trolley bus", frozenset({2, 3})),
        ("Subway, elevated, or railroad", frozenset({4, 5})),
        ("Taxicab", frozenset({7})),
        ("Bicycle", frozenset({9})),
        ("Walked", frozenset({10})),
        ("Worked at home", frozenset({11})),
        ("Other (including Ferry)", frozenset({6, 12})),
    ),
)

ACS_DROP_COLUMNS = ("OCCP", "POBP", "ST", "PUMA", "POWPUMA", "RELP")


def acs_recipes() -> tuple:
    """The built-in recipes, with the standard dropped-feature list attached."""
    return (replace(SCHL_RECIPE, drop=ACS_DROP_COLUMNS), ESP_RECIPE, JWTR_RECIPE)


def _parse_code(cell, column):
    try:
        value = float(cell)
    except (TypeError, ValueError):
        raise UnknownCode(column, cell) from None
    if not value.is_integer():
        raise UnknownCode(column, cell)
    return int(value)


def apply_binning(table: RawTable, recipes) -> RawTable:
    """Replace listed codes by bin indices; drop scheduled columns.

    A cell matching a declared raw code maps to its bin. A cell that is no
    raw code but is a valid bin index of the recipe passes through
    unchanged (tolerates re-running the step on unambiguous columns). Any
    other value raises UnknownCode.
    """
    columns = list(table.columns)
    rows = [list(r) for r in table.rows]
    for recipe in recipes:
        if recipe.column:
            if recipe.column not in columns:
                raise MissingColumn(recipe.column)
            codes = recipe.code_map()
            valid_bins = set(range(len(recipe.bins)))
            live = columns.index(recipe.column)
            for r in rows:
                code = _parse_code(r[live], recipe.column)
                if code in codes:
                    r[live] = str(codes[code])
                elif code in valid_bins:
                    pass
                else:
                    raise UnknownCode(recipe.column, code)
        for name in recipe.drop:
            if name in columns:
                j = columns.index(name)
                del columns[j]
                for r in rows:
                    del r[j]
    return RawTable(tuple(columns), tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# CSV ingestion


def load_raw_csv(path) -> RawTable:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(f"csv file {path}") from None
        rows = [tuple(cell.strip() for cell in row) for row in reader]
    return RawTable(tuple(h.strip() for h in header), tuple(rows))


def _parse_binary(cell, row, column, exc):
    try:
        v = float(cell)
    except (TypeError, ValueError):
        raise UnparseableCell(row, column) from None
    if v not in (0.0, 1.0):
        raise exc(row, column)
    return v


def load_csv(path, schema) -> Dataset:
    """Load a typed Dataset from a CSV file plus a column-role schema.

    ``schema`` maps roles to column names: ``{"features": [...],
    "sensitive": [...], "labels": [...], "categorical": [...]}`` with
    ``categorical`` a subset of ``features``. Categorical features are
    one-hot encoded in sorted category order; row order is preserved and
    mass is uniform.
    """
    table = path if isinstance(path, RawTable) else load_raw_csv(path)
    features = list(schema.get("features", []))
    sensitive = list(schema.get("sensitive", []))
    labels = list(schema.get("labels", []))
    categorical = set(schema.get("categorical", []))
    if not sensitive or not labels:
        raise MissingColumn("schema must name at least one sensitive and one label column")
    for name in features + sensitive + labels:
        table.column_index(name)
    for name in categorical:
        if name not in features:
            raise MissingColumn(f"categorical column {name!r} not listed under features")

    nrows = len(table.rows)
    if nrows == 0:
        raise EmptyInput("csv data rows")
    col = {name: table.column_index(name) for name in table.columns}

    sens = np.empty((nrows, len(sensitive)))
    for k, name in enumerate(sensitive):
        j = col[name]
        for i, row in enumerate(table.rows):
            sens[i, k] = _parse_binary(row[j], i + 1, name, NonBinarySensitive)
    labs = np.empty((nrows, len(labels)))
    for k, name in enumerate(labels):
        j = col[name]
        for i, row in enumerate(table.rows):
            labs[i, k] = _parse_binary(row[j], i + 1, name, NonBinaryLabel)

    blocks = []
    names = []
    for name in features:
        j = col[name]
        cells = [row[j] for row in table.rows]
        if name in categorical:
            cats = sorted(set(cells))
            block = np.zeros((nrows, len(cats)))
            index = {c: p for p, c in enumerate(cats)}
            for i, cell in enumerate(cells):
                block[i, index[cell]] = 1.0
            blocks.append(block)
            names.extend(f"{name}={c}" for c in cats)
        else:
            column = np.empty(nrows)
            for i, cell in enumerate(cells):
                try:
                    column[i] = float(cell)
                except (TypeError, ValueError):
                    raise UnparseableCell(i + 1, name) from None
            blocks.append(column[:, None])
            names.append(name)
    if not blocks:
        raise EmptyInput("feature columns")
    X = np.hstack(blocks)
    return Dataset(X, sens, labs, np.full(nrows, 1.0 / nrows), tuple(names))


def load_schema(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# Synthetic generation


@dataclass(frozen=True)
class SynthSpec:
    """Knobs for the conditionally independent synthetic generator.

    The feature support is a uniform grid on [-1, 1]^d with ``levels``
    points per axis, capped at 64 support points so exact expectations stay
    cheap. Sensitive bits are Bernoulli(g_k(x)) and labels are functions of
    x alone, so sensitive columns and labels are independent given x by
    construction. With ``linear_realizable`` the g_k are affine with range
    inside (0, 1), so a linear proxy family contains the exact
    conditional mean.
    """

    levels: int = 4
    linear_realizable: bool = True
    tasks: int = 2
    base_rate: float = 0.5
    slope: float = 0.3


def _grid(levels: int, d: int) -> np.ndarray:
    if levels < 1:
        raise NonPositiveInput("levels", levels)
    if levels**d > 64:
        raise NonPositiveInput("levels**d (support size, must be <= 64)", levels**d)
    axis = np.linspace(-1.0, 1.0, levels) if levels > 1 else np.zeros(1)
    mesh = np.meshgrid(*([axis] * d), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def synth_cond_independent(seed: int, n: int, d: int, K: int, spec: SynthSpec = SynthSpec()):
    """Draw an i.i.d. sample plus the exact finite distribution behind it.

    Returns ``(dataset, dist)``; the same seed reproduces both bit for bit.
    """
    if n < 1:
        raise NonPositiveInput("n", n)
    if not 0 < spec.base_rate < 1:
        raise NonPositiveInput("base_rate", spec.base_rate)
    rng = np.random.default_rng([seed, 0xD1CE])
    pts = _grid(spec.levels, d)
    s = pts.shape[0]
    probs = np.full(s, 1.0 / s)

    signs = rng.choice([-1.0, 1.0], size=(K, d))
    coef = np.zeros((K, d + 1))
    coef[:, :d] = signs * (spec.slope / d)
    coef[:, d] = spec.base_rate
    if spec.base_rate - spec.slope <= 0 or spec.base_rate + spec.slope >= 1:
        raise NonPositiveInput("base_rate +/- slope (must stay inside (0,1))", spec.slope)
    aug = np.hstack([pts, np.ones((s, 1))])
    if spec.linear_realizable:
        cond_z = aug @ coef.T
        affine = coef
    else:
        wiggle = rng.normal(size=(K, d))
        cond_z = np.clip(
            spec.base_rate + spec.slope * np.tanh(pts @ wiggle.T * 2.0), 0.05, 0.95
        )
        affine = None

    dirs = rng.normal(size=(spec.tasks, d))
    offsets = rng.uniform(-0.5, 0.5, size=spec.tasks)
    labels = (pts @ dirs.T + offsets > 0).astype(float)

    dist = FiniteDistribution(pts, probs, cond_z, labels, affine)

    ds = sample_from(dist, n, seed)
    return ds, dist


def sample_from(dist: FiniteDistribution, n: int, seed: int) -> Dataset:
    """Draw an i.i.d. sample of size n from a finite distribution.

    Rows pick support points by their exact probabilities; sensitive bits
    are Bernoulli draws of the conditional means, labels copy the point's
    deterministic labels. Deterministic under seed.
    """
    if n < 1:
        raise NonPositiveInput("n", n)
    rng = np.random.default_rng([seed, 0x5A3D])
    s = dist.size
    idx = rng.choice(s, size=n, p=dist.probs)
    z = (rng.random((n, dist.num_groups)) < dist.cond_z[idx]).astype(float)
    return Dataset(
        dist.points[idx],
        z,
        dist.labels[idx],
        np.full(n, 1.0 / n),
        tuple(f"x{j}" for j in range(dist.points.shape[1])),
    )


# ---------------------------------------------------------------------------
# Splits and standardization


def split(dataset: Dataset, fraction: float, seed: int):
    """Disjoint row partition, deterministic under seed.

    Train size is max(1, min(n-1, floor(fraction*n))) so both halves are
    always usable; masses are renormalized per half.
    """
    n = dataset.n
    if n < 2:
        raise DegenerateSplit("need at least two rows to split")
    if not 0.0 < fraction < 1.0:
        raise DegenerateSplit(f"fraction must be in (0,1), got {fraction}")
    size = max(1, min(n - 1, int(np.floor(fraction * n))))
    perm = np.random.default_rng([seed, 0x5917]).permutation(n)
    left = np.sort(perm[:size])
    right = np.sort(perm[size:])
    return dataset.take(left), dataset.take(right)


def standardize(train: Dataset, *others):
    """Per-column mean-0 variance-1 scaling, statistics from the train split only.

    Constant columns are left unscaled. Returns the transformed train set
    followed by the transformed extras.
    """
    mu = train.features.mean(axis=0)
    sd = train.features.std(axis=0)
    sd = np.where(sd > 0, sd, 1.0)

    def apply(ds: Dataset) -> Dataset:
        return replace(ds, features=(ds.features - mu) / sd)

    out = [apply(train)] + [apply(ds) for ds in others]
    return out[0] if not others else tuple(out)
