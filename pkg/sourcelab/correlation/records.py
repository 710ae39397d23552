import csv
import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from sourcelab.errors import EnsembleTooSmall, SourceLabError
from sourcelab.utils import frobenius


class Pathway(Enum):
    MONTE_CARLO = "monte_carlo"
    ANALYTIC = "analytic"
    #: exact moments of the discrete sampler, residual symbol included
    SAMPLER_ORACLE = "sampler_oracle"


@dataclass(frozen=True, eq=False)
class CorrelationRecord(object):
    """
    ``E[u_inf(x) u_inf(y)^T]`` for one direction pair. The product carries no
    complex conjugate.

    Monte Carlo records hold ``n_samples >= 2`` and a non-negative (per-entry)
    standard error; the other pathways hold ``n_samples = 0`` and
    ``stderr = 0``.
    """

    x_hat: np.ndarray
    y_hat: np.ndarray
    k: float
    value: object
    n_samples: int
    stderr: object
    pathway: Pathway
    branch: str = "scalar"

    def __post_init__(self):
        stderr = np.asarray(self.stderr, dtype=float)
        if self.pathway is Pathway.MONTE_CARLO:
            if self.n_samples < 2:
                raise EnsembleTooSmall(
                    "Monte Carlo records need at least 2 samples, got {}".format(
                        self.n_samples
                    )
                )
            if np.any(stderr < 0):
                raise SourceLabError("standard errors must be non-negative")
        elif self.n_samples != 0 or np.any(stderr != 0):
            raise SourceLabError(
                "{} records carry no samples and no standard error".format(
                    self.pathway.value
                )
            )

    @property
    def is_matrix(self):
        return np.ndim(self.value) == 2

    def norm(self):
        """Modulus (scalar) or Frobenius norm (matrix) of the value."""
        return float(frobenius(self.value, self.is_matrix))

    def norm_stderr(self):
        """Standard error carried over to the norm (Frobenius of the entries)."""
        return float(frobenius(self.stderr, self.is_matrix))


@dataclass(frozen=True)
class SupStatistic(object):
    """
    ``M(k)``: the largest correlation norm over the tested direction pairs.
    ``resolution`` is the number of directions the pairs were built from.
    """

    k: float
    value: float
    resolution: int
    model: str
    stderr: float = 0.0
    pairs: int = 0


def grid_records(values, directions, k, pathway, index_pairs, stderr=None, n_samples=0):
    """
    Records for the ``(i, j)`` entries of branch-keyed correlation grids of
    shape ``(M, M[, d, d])`` over ``directions``.
    """
    directions = np.asarray(directions, dtype=float)
    first, second = index_pairs
    records = []
    for branch, grid in values.items():
        for i, j in zip(first, second):
            value = np.asarray(grid[i, j])
            records.append(
                CorrelationRecord(
                    directions[i],
                    directions[j],
                    float(k),
                    value if value.ndim else complex(value),
                    int(n_samples),
                    0.0 if stderr is None else stderr[branch][i, j],
                    pathway,
                    branch,
                )
            )
    return records


def _cells(value):
    value = np.asarray(value)
    if value.ndim == 0:
        return [("", value)]
    return [
        ("{}{}".format(i + 1, j + 1), value[i, j])
        for i in range(value.shape[0])
        for j in range(value.shape[1])
    ]


def write_records_csv(records, path, metadata=None):
    """
    One row per record and value entry: directions, entry, Re/Im, stderr. A
    JSON manifest with the shared metadata is written next to the CSV.
    """
    records = list(records)
    d = len(records[0].x_hat) if records else 0
    header = (
        ["pair", "branch", "pathway", "k", "n_samples"]
        + ["x{}".format(i + 1) for i in range(d)]
        + ["y{}".format(i + 1) for i in range(d)]
        + ["entry", "value_re", "value_im", "stderr"]
    )
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for index, record in enumerate(records):
            stderr = dict(_cells(record.stderr)) if np.ndim(record.stderr) else None
            for entry, value in _cells(record.value):
                err = stderr[entry] if stderr is not None else record.stderr
                writer.writerow(
                    [index, record.branch, record.pathway.value, record.k, record.n_samples]
                    + ["{!r}".format(float(v)) for v in record.x_hat]
                    + ["{!r}".format(float(v)) for v in record.y_hat]
                    + [
                        entry,
                        "{!r}".format(float(np.real(value))),
                        "{!r}".format(float(np.imag(value))),
                        "{!r}".format(float(err)),
                    ]
                )
    manifest_path = path.rsplit(".", 1)[0] + ".json"
    with open(manifest_path, "w") as f:
        json.dump(
            dict(metadata or {}, records=len(records)), f, indent=2, sort_keys=True
        )
    return [path, manifest_path]
