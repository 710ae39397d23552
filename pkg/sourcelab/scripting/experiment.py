"""
Batch experiment runner.

``run`` executes the pipeline stages a config implies and writes every output
through one ``OutputWriter``, which checksums each file into the run
manifest. ``emit_plot_data`` turns a stored series into a tidy long-format
CSV.
"""

import csv
import json
import os
import time
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np

from cdislogging import get_logger

from sourcelab import settings
from sourcelab.correlation.analytic import AnalyticPairSupplier, analytic_correlation_grid
from sourcelab.correlation.monte_carlo import MonteCarloPairSupplier, ensemble_correlation_grid
from sourcelab.correlation.records import Pathway, grid_records, write_records_csv
from sourcelab.correlation.statistics import (
    estimate_residual_budget,
    sandwich_check,
    sup_from_grid,
)
from sourcelab.errors import SeriesMissing, SourceLabError, StageFailure
from sourcelab.farfield.directions import antipodal_pairs, direction_grid, with_antipodes
from sourcelab.farfield.patterns import ElasticWavenumbers, farfield_ensemble
from sourcelab.green.near_field import asymptote_residual
from sourcelab.params.model import ModelKind
from sourcelab.params.transforms import QuadratureTransform
from sourcelab.reconstruction.stability import stability_probe, write_probe_csv
from sourcelab.reconstruction.synthesis import reconstruct
from sourcelab.sampler.gmig import FieldRealization, sample_ensemble
from sourcelab.scripting.config import validate_config
from sourcelab.storage import save_reconstruction, save_strength
from sourcelab.utils import derive_seed, loglog_slope, sha256_file

logger = get_logger(__name__)

MANIFEST_NAME = "manifest.json"

#: series that ``emit_plot_data`` can produce, with the id columns and the
#: standard-error column of each stored quantity
SERIES = {
    "scaling": (("k",), {"sup_value": "stderr"}),
    "sandwich": (("k",), {"value": "inflation"}),
    "reconstruction": (("k", "x"), {}),
    "probe": (("k",), {}),
    "asymptotics": (("k", "x"), {}),
}


def _number(value):
    return "{!r}".format(float(value))


class OutputWriter(object):
    """Writes files under one directory and keeps their sha256 checksums."""

    def __init__(self, root, logger=None):
        self.root = root
        self.files = OrderedDict()
        self.logger = logger or get_logger("OutputWriter")
        if not os.path.isdir(root):
            os.makedirs(root)

    def path(self, name):
        return os.path.join(self.root, name)

    def record(self, path):
        name = os.path.relpath(path, self.root)
        self.files[name] = sha256_file(path)
        self.logger.debug("wrote {}".format(name))
        return name

    def write_csv(self, name, header, rows):
        path = self.path(name)
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            writer.writerows(rows)
        return self.record(path)

    def write_json(self, name, data):
        path = self.path(name)
        with open(path, "w") as f:
            json.dump(data, f, indent=2, sort_keys=True)
        return self.record(path)

    def write_with(self, save, name, *args):
        """Write through a saver ``save(path, *args)`` that returns the paths it wrote."""
        paths = save(self.path(name), *args)
        if isinstance(paths, str):
            paths = [paths]
        return [self.record(path) for path in paths]


@dataclass
class RunManifest(object):
    """
    Config hash, package version, wall time per stage, and every output
    file with its sha256. ``series`` maps plot series to their stored file.
    """

    config_hash: str
    version: str
    output_dir: str
    stage_times: dict = field(default_factory=OrderedDict)
    files: dict = field(default_factory=OrderedDict)
    series: dict = field(default_factory=OrderedDict)
    summary: dict = field(default_factory=OrderedDict)

    @property
    def path(self):
        return os.path.join(self.output_dir, MANIFEST_NAME)

    def to_dict(self):
        return {
            "config_hash": self.config_hash,
            "version": self.version,
            "output_dir": self.output_dir,
            "stage_times": dict(self.stage_times),
            "files": dict(self.files),
            "series": dict(self.series),
            "summary": dict(self.summary),
        }

    def write(self):
        with open(self.path, "w") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
        return self.path

    @classmethod
    def load(cls, path):
        if os.path.isdir(path):
            path = os.path.join(path, MANIFEST_NAME)
        try:
            with open(path, "r") as f:
                data = json.load(f)
        except (IOError, OSError, ValueError) as e:
            raise SourceLabError("cannot read manifest {}: {}".format(path, e))
        return cls(
            data["config_hash"],
            data["version"],
            data.get("output_dir") or os.path.dirname(os.path.abspath(path)),
            data.get("stage_times", {}),
            data.get("files", {}),
            data.get("series", {}),
            data.get("summary", {}),
        )

    def data_checksums(self):
        """Checksums of every inventoried file, keyed by name."""
        return dict(self.files)


def _token(k):
    return "{:g}".format(k).replace(".", "p")


class ExperimentRunner(object):
    """
    Runs the stages a config implies: strength, far field (Monte Carlo
    pathway only), scaling, sandwich, reconstruction, probe and, when
    configured, far-field asymptotics.
    """

    def __init__(self, config, logger=None):
        self.config = config
        self.logger = logger or get_logger("ExperimentRunner")
        self.model = config.model
        self.spec = None
        self.strength = None
        self.directions = None
        self.realizations = None
        self.seeds = []
        self.correlations = OrderedDict()
        self.statistics = OrderedDict()

    def stages(self):
        names = ["strength"]
        if self.config.pathway == "monte_carlo":
            names.append("farfield")
        names.extend(["scaling", "sandwich", "reconstruction", "probe"])
        if self.config.asymptotics is not None:
            names.append("asymptotics")
        return names

    def run(self):
        """
        Execute every stage and write the manifest.

        Raises:
            ConfigInvalid: the config's source does not validate
            StageFailure: a stage raised; the message names the stage
        """
        config = self.config
        self.spec = validate_config(config)
        self.strength = self.spec.strength
        self.directions = with_antipodes(direction_grid(self.model.d, config.direction_count))
        self.writer = OutputWriter(config.output_dir, logger=self.logger)
        self.manifest = RunManifest(
            config.digest(), settings.VERSION, config.output_dir
        )
        self.writer.write_json("config.json", config.to_dict())

        for name in self.stages():
            self.logger.info("stage {} started".format(name))
            start = time.time()
            try:
                getattr(self, "stage_" + name)()
            except SourceLabError as e:
                self.logger.error("stage {} failed: {}".format(name, e.message))
                raise StageFailure("{}: {}".format(name, e.message), e.code) from e
            elapsed = time.time() - start
            self.manifest.stage_times[name] = elapsed
            self.logger.info("stage {} finished in {:.3f}s".format(name, elapsed))

        self.manifest.files.update(self.writer.files)
        self.manifest.write()
        return self.manifest

    def _sigma_hat(self):
        return QuadratureTransform(self.strength)

    def stage_strength(self):
        self.writer.write_with(
            save_strength, "strength", self.strength, self.model, self.config.m, self.config.s
        )

    def stage_farfield(self):
        config = self.config
        mc = config.monte_carlo
        self.seeds = [derive_seed(mc.base_seed, "sample", i) for i in range(mc.realizations)]
        self.realizations = sample_ensemble(
            self.model,
            self.spec,
            self.spec.grid,
            self.seeds,
            projected=mc.em_sampler == "projected",
        )
        for k in config.wavenumbers:
            ensemble = farfield_ensemble(self.model, self.realizations, k, self.directions)
            stem = "farfield_k{}".format(_token(k))
            self.writer.record(ensemble.write_csv(self.writer.path(stem + ".csv")))
            self.writer.record(ensemble.write_manifest(self.writer.path(stem + ".json")))
            grids = {
                branch: ensemble_correlation_grid(ensemble, branch)
                for branch in ensemble.values
            }
            self.correlations[k] = (
                {branch: grid[0] for branch, grid in grids.items()},
                {branch: grid[1] for branch, grid in grids.items()},
            )

    def correlation_grid(self, k):
        """Branch-keyed correlation grids and standard errors at ``k``."""
        if k not in self.correlations:
            values = analytic_correlation_grid(
                self.model, self._sigma_hat(), k, self.config.m, self.directions
            )
            self.correlations[k] = (values, None)
        return self.correlations[k]

    def stage_scaling(self):
        rows = []
        for k in self.config.wavenumbers:
            values, stderr = self.correlation_grid(k)
            statistic = sup_from_grid(
                values, k, self.model, self.directions.shape[0], stderr=stderr
            )
            self.statistics[k] = statistic
            rows.append((k, statistic.value, statistic.stderr, statistic.pairs))
        slope = loglog_slope([r[0] for r in rows], [r[1] for r in rows])
        self.manifest.summary["slope"] = slope
        if self.model.kind is ModelKind.POLYHARMONIC:
            self.manifest.summary["predicted_slope"] = (
                self.model.d + 1 - 4 * self.model.n - self.config.m
            )
        self.logger.debug("scaling slope {}".format(slope))
        name = self.writer.write_csv(
            "scaling.csv",
            ["k", "sup_value", "stderr", "pairs", "slope"],
            [
                [_number(k), _number(value), _number(err), pairs, _number(slope)]
                for k, value, err, pairs in rows
            ],
        )
        self.manifest.series["scaling"] = name

    def stage_sandwich(self):
        rows = []
        monte_carlo = self.config.pathway == "monte_carlo"
        for k, statistic in self.statistics.items():
            residual = float("nan")
            budget = 0.0
            if monte_carlo:
                reference = analytic_correlation_grid(
                    self.model, self._sigma_hat(), k, self.config.m, self.directions
                )
                values = self.correlations[k][0]
                residual = max(
                    estimate_residual_budget(
                        values[branch], reference[branch], self.model, k, self.config.m
                    )
                    for branch in values
                )
                budget = residual
            report = sandwich_check(
                statistic,
                self.strength,
                self.model,
                self.config.m,
                budget=budget,
                inflation=4.0 * statistic.stderr if monte_carlo else 0.0,
            )
            rows.append(
                [
                    _number(k),
                    _number(report.value),
                    _number(report.lower),
                    _number(report.upper),
                    _number(report.budget),
                    _number(report.inflation),
                    int(report.within),
                    _number(residual),
                ]
            )
        name = self.writer.write_csv(
            "sandwich.csv",
            ["k", "value", "lower", "upper", "budget", "inflation", "within", "residual"],
            rows,
        )
        self.manifest.series["sandwich"] = name
        self.write_correlation_records()

    def write_correlation_records(self):
        """Antipodal-pair correlation records at every wavenumber."""
        monte_carlo = self.config.pathway == "monte_carlo"
        pathway = Pathway.MONTE_CARLO if monte_carlo else Pathway.ANALYTIC
        pairs = antipodal_pairs(self.directions)
        records = []
        for k in self.config.wavenumbers:
            values, stderr = self.correlation_grid(k)
            records.extend(
                grid_records(
                    values,
                    self.directions,
                    k,
                    pathway,
                    pairs,
                    stderr=stderr,
                    n_samples=len(self.seeds),
                )
            )
        metadata = {
            "model": self.model.to_dict(),
            "wavenumbers": list(self.config.wavenumbers),
            "resolution": int(self.directions.shape[0]),
            "grid": self.spec.grid.to_dict(),
            "pathway": pathway.value,
            "seeds": list(self.seeds),
        }
        self.writer.write_with(
            lambda path, records, metadata: write_records_csv(records, path, metadata),
            "correlations.csv",
            records,
            metadata,
        )

    def cutoff(self, k):
        """Synthesis radius at ``k`` under the configured policy."""
        policy = self.config.cutoff
        if policy.policy == "theory":
            return k ** (1.0 / self.config.s)
        if policy.policy == "fixed":
            return policy.value
        if self.model.kind is ModelKind.ELASTIC:
            return ElasticWavenumbers.from_lame(k, *self.model.lame).k_p
        return 2.0 * k

    def _supplier(self, k):
        if self.config.pathway == "monte_carlo":
            return MonteCarloPairSupplier(
                self.model, self.realizations, k, self.config.monte_carlo.batch_size
            )
        return AnalyticPairSupplier(self.model, self._sigma_hat(), k, self.config.m)

    def _planted(self):
        if self.model.kind is ModelKind.ELASTIC:
            return self.strength.trace().values
        return self.strength.values

    def _slice(self, values):
        """Values along the first axis through the origin, one per node."""
        grid = self.spec.grid
        index = (slice(None),) + (grid.points // 2,) * (grid.d - 1)
        line = values[index]
        if line.ndim == 3:
            line = np.sqrt(np.sum(line ** 2, axis=(-2, -1)))
        return line

    def stage_reconstruction(self):
        grid = self.spec.grid
        planted = self._planted()
        rows = []
        errors = OrderedDict()
        for k in self.config.wavenumbers:
            result = reconstruct(
                self.model,
                self._supplier(k),
                k,
                self.config.m,
                grid,
                self.cutoff(k),
                planted=planted,
            )
            self.writer.write_with(
                save_reconstruction, "reconstruction_k{}".format(_token(k)), result
            )
            errors[_token(k)] = {"sup_error": result.sup_error, "l1_error": result.l1_error}
            for x, truth, recovered in zip(
                grid.axis, self._slice(planted), self._slice(result.values)
            ):
                rows.append([_number(k), _number(x), _number(truth), _number(recovered)])
        self.manifest.summary["reconstruction"] = errors
        name = self.writer.write_csv(
            "reconstruction.csv", ["k", "x", "planted", "recovered"], rows
        )
        self.manifest.series["reconstruction"] = name

    def stage_probe(self):
        def correlation(k, directions):
            return self.correlation_grid(k)[0]

        rows = stability_probe(
            self.strength,
            self.model,
            self.config.m,
            self.config.s,
            self.config.wavenumbers,
            correlation=correlation,
            directions=self.directions,
        )
        path = write_probe_csv(rows, self.writer.path("probe.csv"))
        self.manifest.series["probe"] = self.writer.record(path)

    def stage_asymptotics(self):
        if self.model.kind is not ModelKind.POLYHARMONIC:
            self.logger.warning("far-field asymptotics only run for the polyharmonic model")
            return
        asymptotics = self.config.asymptotics
        grid = self.spec.grid
        source = FieldRealization(grid, self.strength.values)
        direction = asymptotics.direction or tuple(np.eye(grid.d)[0])
        rows = []
        for k in self.config.wavenumbers:
            residuals = asymptote_residual(source, k, self.model.n, direction, asymptotics.radii)
            for radius, residual in zip(asymptotics.radii, residuals):
                rows.append([_number(k), _number(radius), _number(residual)])
        name = self.writer.write_csv("asymptotics.csv", ["k", "x", "residual"], rows)
        self.manifest.series["asymptotics"] = name


def run(config, logger=None):
    """Run every stage of ``config``; see ``ExperimentRunner.run``."""
    return ExperimentRunner(config, logger=logger).run()


def _read_rows(path):
    with open(path, "r", newline="") as f:
        return list(csv.DictReader(f))


def emit_plot_data(manifest, which, destination=None):
    """
    Melt a stored series into tidy rows ``k, quantity, x, value, stderr``.

    Args:
        manifest (RunManifest)
        which (str): one of ``SERIES``
        destination (Optional[str]): output path, default
            ``plot_<which>.csv`` next to the manifest

    Return:
        str: path of the written CSV

    Raises:
        SeriesMissing: the run did not store ``which``
    """
    if which not in SERIES or which not in manifest.series:
        raise SeriesMissing(
            "series {} is not in the manifest (have {})".format(
                which, sorted(manifest.series)
            )
        )
    ids, errors = SERIES[which]
    rows = _read_rows(os.path.join(manifest.output_dir, manifest.series[which]))
    skipped = set(ids) | set(errors.values())
    tidy = []
    for row in rows:
        for quantity, value in row.items():
            if quantity in skipped:
                continue
            tidy.append(
                [
                    row["k"],
                    quantity,
                    row.get("x", ""),
                    value,
                    row[errors[quantity]] if quantity in errors else "",
                ]
            )
    destination = destination or os.path.join(manifest.output_dir, "plot_{}.csv".format(which))
    with open(destination, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["k", "quantity", "x", "value", "stderr"])
        writer.writerows(tidy)
    if os.path.dirname(os.path.abspath(destination)) == os.path.abspath(manifest.output_dir):
        manifest.files[os.path.basename(destination)] = sha256_file(destination)
        manifest.write()
    logger.info("emitted {} rows of series {} to {}".format(len(tidy), which, destination))
    return destination
