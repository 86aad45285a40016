"""Suite orchestration: sampling campaigns, equality certification, sharpness
sweeps, and deterministic JSON/CSV reporting.

Every suite is seed-deterministic: map generation, context sampling and
record ordering are all derived from the configured seed, so identical
configurations produce byte-identical reports.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import bounds, cauchy, geometry
from . import multiindex as mi
from .holomap import PolyMap, random_polymap, sq_norm

SCHEMA = "spv-report/1"

SUITE_IDS = ("main", "disk", "partials", "radial", "origin", "equality", "sharpness")

#: Default |w| ladder for the asymptotic-sharpness sweeps.
DEFAULT_SWEEP_RADII = (0.9, 0.99, 0.999, 0.9999)

#: Certification threshold for equality-suite slacks.
EQUALITY_TOL = 1e-9


class ConfigError(ValueError):
    """Invalid suite configuration; reported before any computation."""


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "main"
    n: int = 2
    m: int = 2
    samples: int = 20
    degree: int = 4
    k_max: int = 4
    seed: int = 42
    tol: float = 1e-8
    out: str | None = None
    fmt: str = "json"


def validate_config(config: SuiteConfig) -> None:
    if config.suite not in SUITE_IDS:
        raise ConfigError(f"unknown suite {config.suite!r}; expected one of {SUITE_IDS}")
    if not 1 <= config.n <= 4 or not 1 <= config.m <= 4:
        raise ConfigError("dimensions n, m must lie in 1..4 at desk scale")
    if config.samples < 1:
        raise ConfigError("samples must be at least 1")
    if not 1 <= config.k_max <= 8:
        raise ConfigError("k_max must lie in 1..8")
    if not 1 <= config.degree <= 8:
        raise ConfigError("degree must lie in 1..8")
    if config.tol <= 0:
        raise ConfigError("tol must be positive")
    if config.fmt not in ("json", "csv"):
        raise ConfigError(f"unknown output format {config.fmt!r}")
    if config.suite == "disk" and config.n != 1:
        raise ConfigError("the disk suite requires n = 1")
    if config.suite == "equality" and config.n > config.m:
        raise ConfigError("the equality suite requires n <= m")


def expected_ids(suite: str, m: int) -> tuple[str, ...]:
    """Manifest of inequality ids each suite must exercise."""
    table = {
        "main": ("1.3", "1.4"),
        "disk": ("1.1", "4.1") if m == 1 else ("4.1",),
        "partials": ("1.2", "5.1", "5.2") if m == 1 else ("5.1",),
        "radial": ("5.3",),
        "origin": ("3.1", "3.2"),
        "equality": ("1.3", "3.2"),
        "sharpness": ("4.1", "5.3"),
    }
    ids = table[suite]
    if not ids:
        raise AssertionError(f"suite {suite} has an empty manifest")
    return ids


# --------------------------------------------------------------------------
# seeded sampling helpers

def random_unit_vector(rng, dim: int) -> np.ndarray:
    g = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return g / np.linalg.norm(g)


def random_ball_point(rng, n: int, radius: float) -> np.ndarray:
    """Uniform draw from the ball of the given radius (radius-rescaled Gaussian)."""
    return random_unit_vector(rng, n) * (radius * rng.uniform() ** (1.0 / (2 * n)))


def random_isometry(rng, m: int, n: int) -> np.ndarray:
    """Random m x n matrix with orthonormal columns."""
    q, _ = np.linalg.qr(rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n)))
    return q[:, :n]


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(key)))


def _beta_set(rng, z: np.ndarray, count: int = 2) -> list[np.ndarray]:
    """Random unit directions plus e1 and the radial direction z/|z|."""
    n = z.shape[0]
    betas = [random_unit_vector(rng, n) for _ in range(count)]
    e1 = np.zeros(n, dtype=complex)
    e1[0] = 1.0
    betas.append(e1)
    zn = math.sqrt(float(sq_norm(z)))
    if zn > 0:
        betas.append(z / zn)
    return betas


# --------------------------------------------------------------------------
# records and reports

def _cvec(value) -> list | None:
    if value is None:
        return None
    arr = np.asarray(value, dtype=complex).reshape(-1)
    return [[float(c.real), float(c.imag)] for c in arr]


def _k_or_v(context: dict) -> str:
    if context.get("v") is not None:
        return "v=" + ",".join(str(x) for x in context["v"])
    if context.get("k") is not None:
        return f"k={context['k']}"
    return ""


def record_from_report(suite: str, sample: str, report: bounds.BoundReport, **extra) -> dict:
    rec = {
        "suite": suite,
        "sample": sample,
        "kind": "bound",
        "inequality": report.inequality,
        "k_or_v": _k_or_v(report.context),
        "z": _cvec(report.context.get("z")),
        "beta": _cvec(report.context.get("beta")),
        "lhs": report.lhs,
        "rhs": report.rhs,
        "slack": report.slack,
        "ratio": report.ratio,
    }
    rec.update(extra)
    return rec


def certificate_record(suite: str, sample: str, name: str, measured: float, slack: float, **extra) -> dict:
    """A pass/fail certification row; pass iff slack >= 0."""
    rec = {
        "suite": suite,
        "sample": sample,
        "kind": "certificate",
        "inequality": name,
        "k_or_v": extra.pop("k_or_v", ""),
        "z": extra.pop("z", None),
        "beta": None,
        "lhs": float(measured),
        "rhs": float(measured) + float(slack),
        "slack": float(slack),
        "ratio": 0.0,
    }
    rec.update(extra)
    return rec


def _is_failure(record: dict, tol: float) -> bool:
    if record["kind"] == "certificate":
        return record["slack"] < 0.0
    return record["slack"] < -tol


def summarize(records: list[dict], tol: float) -> dict:
    slacks = [r["slack"] for r in records]
    ratios = [r["ratio"] for r in records if r["kind"] == "bound"]
    return {
        "record_count": len(records),
        "failure_count": sum(_is_failure(r, tol) for r in records),
        "min_slack": min(slacks) if slacks else 0.0,
        "min_ratio": min(ratios) if ratios else 0.0,
        "max_ratio": max(ratios) if ratios else 0.0,
    }


@dataclass
class Report:
    schema: str
    config: dict
    records: list
    failures: list
    summary: dict

    def to_json(self) -> str:
        body = {
            "schema": self.schema,
            "config": self.config,
            "summary": self.summary,
            "records": self.records,
            "failures": self.failures,
        }
        return json.dumps(body, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        body = json.loads(text)
        return cls(schema=body["schema"], config=body["config"], records=body["records"],
                   failures=body["failures"], summary=body["summary"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["suite", "sample", "inequality", "k_or_v", "z", "beta",
                         "lhs", "rhs", "slack", "ratio"])
        for rec in self.records:
            writer.writerow([
                rec["suite"], rec["sample"], rec["inequality"], rec["k_or_v"],
                _csv_vec(rec["z"]), _csv_vec(rec["beta"]),
                repr(rec["lhs"]), repr(rec["rhs"]), repr(rec["slack"]), repr(rec["ratio"]),
            ])
        return buf.getvalue()


def _csv_vec(pairs) -> str:
    if not pairs:
        return ""
    return ";".join(f"{re!r}{im:+}j" for re, im in pairs)


def _finalize(config: SuiteConfig, records: list[dict], failures: list[dict],
              expected: tuple[str, ...] | None = None) -> Report:
    records.sort(key=lambda r: (r["sample"], r["inequality"]))
    for rec in records:
        if rec["kind"] == "bound":
            # negative slack within tolerance is discretization noise, not a violation
            rec["tight"] = -config.tol <= rec["slack"] < 0.0
    for ineq in (expected if expected is not None else expected_ids(config.suite, config.m)):
        if not any(r["inequality"] == ineq for r in records):
            raise AssertionError(f"suite {config.suite} produced no records for inequality {ineq}")
    echo = asdict(config)
    echo.pop("out")  # destination path is environment metadata, not canonical body
    return Report(schema=SCHEMA, config=echo, records=records,
                  failures=failures, summary=summarize(records, config.tol))


def _note_failures(records, tol, poly_by_sample, failures):
    seen = set()
    for rec in records:
        if _is_failure(rec, tol) and rec["sample"] not in seen:
            seen.add(rec["sample"])
            payload = {"sample": rec["sample"], "suite": rec["suite"], "worst_slack": rec["slack"]}
            f = poly_by_sample.get(rec["sample"])
            if isinstance(f, PolyMap):
                payload["map"] = f.to_json_dict()
            else:
                payload["map"] = getattr(f, "describe", lambda: "unknown")() if f is not None else "unknown"
            failures.append(payload)


def emit(report: Report, fmt: str, path) -> None:
    """Write a report (json or csv); failing samples are additionally written
    as standalone replay files next to the report."""
    if fmt not in ("json", "csv"):
        raise ConfigError(f"unknown output format {fmt!r}")
    path = Path(path)
    text = report.to_json() if fmt == "json" else report.to_csv()
    try:
        path.write_text(text)
        for failure in report.failures:
            if isinstance(failure.get("map"), dict):
                side = path.with_name(f"{path.stem}-failure-{failure['sample']}.json")
                side.write_text(json.dumps(failure["map"], sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc


# --------------------------------------------------------------------------
# sampling suites

def run_suite(config: SuiteConfig, _maps_override=None) -> Report:
    """Run one verification suite and return its deterministic report.

    Suites `main`, `disk`, `partials`, `radial` and `origin` sample certified
    polynomial maps (plus ball automorphisms when n = m in `main`) and check
    the inequality ids assigned by the manifest.  `equality` and `sharpness`
    delegate to their dedicated drivers.
    """
    validate_config(config)
    if config.suite == "equality":
        return equality_suite(config)
    if config.suite == "sharpness":
        records, failures = [], []
        for family in ("remark2", "remark4"):
            recs = _sweep_records(config, family, DEFAULT_SWEEP_RADII)
            records.extend(recs)
        return _finalize(config, records, failures)

    suite_code = SUITE_IDS.index(config.suite)
    records: list[dict] = []
    failures: list[dict] = []
    poly_by_sample: dict[str, object] = {}

    for s in range(config.samples):
        rng = _rng(config.seed, suite_code, s)
        sample = f"poly-{s:04d}"
        f = random_polymap(config.n, config.m, config.degree, rng)
        if _maps_override is not None and s < len(_maps_override):
            sample, f = _maps_override[s]
        poly_by_sample[sample] = f
        if config.suite == "main":
            records.extend(_main_records(config, rng, sample, f))
            if config.n == config.m and _maps_override is None:
                a = random_ball_point(rng, config.m, 0.5)
                aut = geometry.AutomorphismMap(a)
                aut_sample = f"aut-{s:04d}"
                poly_by_sample[aut_sample] = aut
                records.extend(_main_records(config, rng, aut_sample, aut))
        elif config.suite == "disk":
            records.extend(_disk_records(config, rng, sample, f))
        elif config.suite == "partials":
            records.extend(_partials_records(config, rng, sample, f))
        elif config.suite == "radial":
            records.extend(_radial_records(config, rng, sample, f))
        elif config.suite == "origin":
            records.extend(_origin_records(config, rng, sample, f))
            ext_sample = f"ext-{s:04d}"
            ext_map, ext_records = _origin_extremal_records(config, rng, ext_sample)
            poly_by_sample[ext_sample] = ext_map
            records.extend(ext_records)

    report = _finalize(config, records, failures)
    _note_failures(report.records, config.tol, poly_by_sample, failures)
    report.summary = summarize(report.records, config.tol)
    return report


def _main_records(config, rng, sample, f):
    out = []
    zs = [random_ball_point(rng, config.n, 0.9) for _ in range(2)]
    near = random_unit_vector(rng, config.n) * rng.uniform(0.955, 0.99)
    zs.append(near)
    for z in zs:
        bundle = cauchy.partial_bundle(f, z, config.k_max)
        for beta in _beta_set(rng, z):
            rep = bounds.check_inequality(f, "1.3", z=z, beta=beta, bundle=bundle, map_id=sample)
            out.append(record_from_report(config.suite, sample, rep))
            for k in range(1, config.k_max + 1):
                rep = bounds.check_inequality(f, "1.4", z=z, beta=beta, k=k, bundle=bundle, map_id=sample)
                out.append(record_from_report(config.suite, sample, rep))
    return out


def _disk_records(config, rng, sample, f):
    out = []
    for _ in range(3):
        z = random_ball_point(rng, 1, 0.9)
        bundle = cauchy.partial_bundle(f, z, config.k_max)
        for k in range(1, config.k_max + 1):
            rep = bounds.check_inequality(f, "4.1", z=z, k=k, bundle=bundle, map_id=sample)
            out.append(record_from_report(config.suite, sample, rep))
            if config.m == 1:
                rep = bounds.check_inequality(f, "1.1", z=z, k=k, bundle=bundle, map_id=sample)
                out.append(record_from_report(config.suite, sample, rep))
    return out


def _partials_records(config, rng, sample, f):
    out = []
    orders = mi.enumerate_up_to(config.n, min(config.k_max, 4), include_zero=False)
    for _ in range(2):
        z = random_ball_point(rng, config.n, 0.9)
        bundle = cauchy.partial_bundle(f, z, min(config.k_max, 4))
        for v in orders:
            rep = bounds.check_inequality(f, "5.1", z=z, v=v, bundle=bundle, map_id=sample)
            out.append(record_from_report(config.suite, sample, rep))
            if config.m == 1:
                for ineq in ("5.2", "1.2"):
                    rep = bounds.check_inequality(f, ineq, z=z, v=v, bundle=bundle, map_id=sample)
                    out.append(record_from_report(config.suite, sample, rep))
    return out


def _radial_records(config, rng, sample, f):
    out = []
    orders = mi.enumerate_up_to(config.n, min(config.k_max, 4), include_zero=False)
    for _ in range(2):
        z = np.zeros(config.n, dtype=complex)
        z[0] = rng.uniform(0.0, 0.9) * np.exp(2j * np.pi * rng.uniform())
        bundle = cauchy.partial_bundle(f, z, min(config.k_max, 4))
        for v in orders:
            rep = bounds.check_inequality(f, "5.3", z=z, v=v, bundle=bundle, map_id=sample)
            out.append(record_from_report(config.suite, sample, rep))
    return out


def _origin_records(config, rng, sample, f):
    out = []
    betas = _beta_set(rng, np.zeros(config.n, dtype=complex))
    for beta in betas:
        for k in range(1, config.k_max + 1):
            rep = bounds.check_inequality(f, "3.1", beta=beta, k=k, map_id=sample)
            out.append(record_from_report(config.suite, sample, rep))
    for v in mi.enumerate_up_to(config.n, min(config.k_max, 4), include_zero=False):
        rep = bounds.check_inequality(f, "3.2", v=v, map_id=sample)
        out.append(record_from_report(config.suite, sample, rep))
    return out


def _origin_extremal_records(config, rng, sample):
    """One origin-extremal construction checked through the quadrature route."""
    orders = mi.enumerate_up_to(config.n, min(config.k_max, 4), include_zero=False)
    v = orders[int(rng.integers(len(orders)))]
    a0_abs = float(rng.choice([0.0, 0.3, 0.7]))
    a0 = a0_abs * random_unit_vector(rng, config.m) if a0_abs > 0 else np.zeros(config.m, dtype=complex)
    f = geometry.extremal_origin_from_direction(a0, random_unit_vector(rng, config.m), v)
    zero = (0,) * config.n
    coeffs = cauchy.taylor_coefficients(f, [zero, v])
    lhs = bounds.lhs_quadratic(coeffs[v], coeffs[zero])
    rhs = bounds.rhs_origin(v, float(np.linalg.norm(coeffs[zero]))).coefficient_bound
    rep = bounds.BoundReport.build("3.2", lhs, rhs, {"map": sample, "v": v})
    return f, [record_from_report(config.suite, sample, rep)]


# --------------------------------------------------------------------------
# equality certification

def equality_suite(config: SuiteConfig) -> Report:
    """Certify the equality cases: origin-extremal maps across a parameter
    grid, the first-order extremal construction, the linear-plus-square
    example (equality with an off-shape coefficient), and the off-lattice
    Taylor-coefficient vanishing for extremal maps."""
    validate_config(config)
    records: list[dict] = []
    failures: list[dict] = []
    poly_by_sample: dict[str, object] = {}

    # origin-extremal grid: all v with |v| <= 4, |a0| in {0, 0.3, 0.7}
    rng = _rng(config.seed, 100)
    idx = 0
    zero = (0,) * config.n
    for v in mi.enumerate_up_to(config.n, 4, include_zero=False):
        for a0_abs in (0.0, 0.3, 0.7):
            sample = f"ext-{idx:04d}"
            idx += 1
            a0 = a0_abs * random_unit_vector(rng, config.m) if a0_abs > 0 else np.zeros(config.m, dtype=complex)
            f = geometry.extremal_origin_from_direction(a0, random_unit_vector(rng, config.m), v)
            coeffs = cauchy.taylor_coefficients(f, [zero, v])
            lhs = bounds.lhs_quadratic(coeffs[v], coeffs[zero])
            rhs = bounds.rhs_origin(v, float(np.linalg.norm(coeffs[zero]))).coefficient_bound
            rep = bounds.BoundReport.build("3.2", lhs, rhs, {"map": sample, "v": v})
            records.append(record_from_report("equality", sample, rep))
            records.append(certificate_record(
                "equality", sample, "3.2-equality",
                measured=abs(rep.slack), slack=EQUALITY_TOL - abs(rep.slack),
                k_or_v=_k_or_v(rep.context)))

    # linear-plus-square example: equality at v = (1,0) with an off-shape coefficient
    if config.n == 2:
        f = geometry.linear_plus_square_map()
        poly_by_sample["remark-example"] = f
        rep = bounds.check_inequality(f, "3.2", v=(1, 0), map_id="remark-example")
        records.append(record_from_report("equality", "remark-example", rep))
        records.append(certificate_record(
            "equality", "remark-example", "3.2-equality",
            measured=abs(rep.slack), slack=1e-12 - abs(rep.slack), k_or_v="v=1,0"))
        off_form = float(np.linalg.norm(f.coefficient((0, 2))))
        records.append(certificate_record(
            "equality", "remark-example", "off-shape-coefficient",
            measured=off_form, slack=off_form - 1e-6, k_or_v="v=0,2"))

    # off-lattice Taylor-coefficient vanishing (rigidity of the extremal shape)
    rng = _rng(config.seed, 101)
    for i, v in enumerate(((1, 1), (2, 1), (2, 2))):
        for a0_abs in (0.3, 0.7):
            sample = f"rigid-{i}{int(a0_abs * 10):02d}"
            a0 = a0_abs * random_unit_vector(rng, 1)
            f = geometry.extremal_origin_from_direction(a0, random_unit_vector(rng, 1), v)
            table = cauchy.coefficient_table(f, 8)
            lattice = {tuple(j * x for x in v) for j in range(0, 9)}
            worst = max(float(np.linalg.norm(c)) for alpha, c in table.items() if alpha not in lattice)
            records.append(certificate_record(
                "equality", sample, "off-lattice-vanishing",
                measured=worst, slack=1e-9 - worst, k_or_v="v=" + ",".join(map(str, v))))

    # first-order extremal constructions: metric equality in every direction
    rng = _rng(config.seed, 102)
    for i in range(3):
        sample = f"k1-{i:04d}"
        xi = random_ball_point(rng, config.n, 0.5)
        w0 = random_ball_point(rng, config.m, 0.5)
        frame = random_isometry(rng, config.m, config.n)
        jac = geometry.jacobian_from_frame(xi, w0, frame)
        f = geometry.extremal_k1_map(xi, w0, jac)
        bundle = cauchy.partial_bundle(f, xi, 1)
        worst = 0.0
        for _ in range(50):
            beta = random_unit_vector(rng, config.n)
            rep = bounds.check_inequality(f, "1.3", z=xi, beta=beta, bundle=bundle, map_id=sample)
            worst = max(worst, abs(rep.slack))
        records.append(record_from_report("equality", sample, rep))
        records.append(certificate_record(
            "equality", sample, "first-order-equality",
            measured=worst, slack=EQUALITY_TOL - worst))

    report = _finalize(config, records, failures)
    _note_failures(report.records, config.tol, poly_by_sample, failures)
    report.summary = summarize(report.records, config.tol)
    return report


# --------------------------------------------------------------------------
# sharpness sweeps

def sweep_prediction(family: str, k: int, xi_abs: float, w_abs: float) -> float:
    """Closed-form squared-ratio prediction ((|w|+|xi|)/(1+|xi|))^(2(k-1))."""
    if family not in ("remark2", "remark4"):
        raise ConfigError(f"unknown sweep family {family!r}")
    return ((w_abs + xi_abs) / (1.0 + xi_abs)) ** (2 * (k - 1))


def _sweep_records(config: SuiteConfig, family: str, radii, k_values=None, xi_values=None):
    if list(radii) != sorted(set(radii)) or not all(0.0 < r < 1.0 for r in radii):
        raise ConfigError("sweep radii must be strictly increasing inside (0, 1)")
    k_values = tuple(k_values or range(1, min(config.k_max, 4) + 1))
    xi_values = tuple(xi_values or (0.25, 0.5, 0.75))
    rng = _rng(config.seed, 200 if family == "remark2" else 201)
    xi_phase = np.exp(2j * np.pi * rng.uniform())
    w_dir = random_unit_vector(rng, config.m) if family == "remark2" else np.exp(2j * np.pi * rng.uniform())
    records = []
    for k in k_values:
        for xi_abs in xi_values:
            series = []
            sample = f"{family}-k{k}-x{xi_abs:.2f}"
            for w_abs in radii:
                if family == "remark2":
                    f = geometry.Remark2Map(xi_abs * xi_phase, w_abs * w_dir)
                    z = np.array([xi_abs * xi_phase])
                    dk = cauchy.partial_derivative(f, z, (k,)).value
                    lhs = bounds.lhs_quadratic(dk, w_abs * w_dir)
                    rhs = bounds.rhs_disk(k, z[0], w_abs)
                    rep = bounds.BoundReport.build("4.1", lhs, rhs, {"map": sample, "z": z, "k": k})
                else:
                    f = geometry.Remark4Map(xi_abs * xi_phase, w_abs * w_dir, n=config.n)
                    v = (k,) + (0,) * (config.n - 1)
                    z = np.zeros(config.n, dtype=complex)
                    z[0] = xi_abs * xi_phase
                    dk = cauchy.partial_derivative(f, z, v).value
                    lhs = bounds.lhs_quadratic(dk, np.array([w_abs * w_dir]))
                    rhs = bounds.rhs_radial(v, z, w_abs)
                    rep = bounds.BoundReport.build("5.3", lhs, rhs, {"map": sample, "z": z, "v": v})
                predicted = sweep_prediction(family, k, xi_abs, w_abs)
                series.append((w_abs, rep.ratio, predicted))
                records.append(record_from_report(
                    "sharpness", sample, rep,
                    family=family, w_abs=w_abs, xi_abs=xi_abs,
                    ratio_modulus=math.sqrt(rep.ratio), predicted=predicted,
                    predicted_modulus=math.sqrt(predicted)))
            ratios = [r for _, r, _ in series]
            mono_gap = min(b - a for a, b in zip(ratios, ratios[1:])) if len(ratios) > 1 else 0.0
            # nondecreasing up to quadrature noise (k = 1 series are constant)
            records.append(certificate_record(
                "sharpness", sample, "sweep-monotone", measured=mono_gap, slack=mono_gap + 1e-9,
                family=family, xi_abs=xi_abs))
            final_gap = ratios[-1] - (series[-1][2] - 1e-6)
            records.append(certificate_record(
                "sharpness", sample, "sweep-final-ratio", measured=ratios[-1], slack=final_gap,
                family=family, xi_abs=xi_abs))
    return records


def sharpness_sweep(config: SuiteConfig, family: str, radii=DEFAULT_SWEEP_RADII,
                    k_values=None, xi_values=None) -> Report:
    """Sweep |w| toward the boundary for one sharpness family and record the
    attained ratios against their closed-form predictions."""
    validate_config(config)
    records = _sweep_records(config, family, radii, k_values, xi_values)
    cfg = SuiteConfig(**{**asdict(config), "suite": "sharpness"})
    return _finalize(cfg, records, [], expected=("4.1",) if family == "remark2" else ("5.3",))


def replay_sample(path, config: SuiteConfig) -> Report:
    """Re-run a persisted failing polynomial map through its suite."""
    payload = json.loads(Path(path).read_text())
    f = PolyMap.from_json_dict(payload)
    cfg = SuiteConfig(**{**asdict(config), "n": f.n, "m": f.m, "samples": 1})
    return run_suite(cfg, _maps_override=[(f"replay-{Path(path).stem}", f)])
