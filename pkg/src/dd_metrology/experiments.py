"""Config-driven parameter sweeps and the figure presets built on them.

A sweep evolves the coherent spin state along a time grid under one pulse
sequence and tabulates the requested quantities.  Figures are lists of
sweep variants whose columns are merged into one Dataset.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from functools import lru_cache
import json
import math
import os

import numpy as np

from . import noise, pulses, qfi, spin, squeezing
from .errors import DegenerateDirection, InvalidArgument, NumericFailure

try:
    from importlib.metadata import version as _dist_version
    TOOL_VERSION = _dist_version("dd-metrology")
except Exception:  # not installed as a distribution
    TOOL_VERSION = "0+unknown"

QUANTITIES = ("R", "Omega", "xi2", "purity", "qfi", "eta", "eta_pure")
_STATE_QUANTITIES = {"xi2", "purity", "qfi", "eta"}

# dotted config key -> SweepConfig field
CONFIG_KEYS = {
    "n_atoms": "n_atoms",
    "alpha": "alpha",
    "temperature": "temperature",
    "sequence.family": "family",
    "sequence.n": "n",
    "time_grid.t_min": "t_min",
    "time_grid.t_max": "t_max",
    "time_grid.points": "points",
    "quantities": "quantities",
    "chi": "chi",
    "lambda": "lam",
    "kernel": "kernel",
}


@dataclass(frozen=True)
class SweepConfig:
    n_atoms: int = 200
    alpha: float = 0.01
    temperature: float = 1.0
    family: str = "UDD"
    n: int = 50
    t_min: float = 0.0
    t_max: float = 20.0
    points: int = 400
    quantities: tuple = ("R", "Omega", "xi2", "purity")
    chi: float = 0.0
    lam: float = 1.0
    kernel: str = "exact"

    def __post_init__(self):
        q = self.quantities
        if isinstance(q, str):
            q = tuple(s.strip() for s in q.split(",") if s.strip())
        object.__setattr__(self, "quantities", tuple(q))
        object.__setattr__(self, "family", str(self.family).upper())
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 2:
            raise InvalidArgument(f"n_atoms must be an integer >= 2, got {self.n_atoms}")
        if not self.alpha >= 0:
            raise InvalidArgument(f"alpha must be >= 0, got {self.alpha}")
        if not self.temperature >= 0:
            raise InvalidArgument(f"temperature must be >= 0, got {self.temperature}")
        if self.family not in ("FREE", "PDD", "UDD"):
            raise InvalidArgument(f"sequence.family must be FREE, PDD or UDD, got {self.family!r}")
        if int(self.n) != self.n or self.n < 0:
            raise InvalidArgument(f"sequence.n must be a non-negative integer, got {self.n}")
        if int(self.points) != self.points or self.points < 2:
            raise InvalidArgument(f"time_grid.points must be an integer >= 2, got {self.points}")
        if not 0 <= self.t_min < self.t_max or not math.isfinite(self.t_max):
            raise InvalidArgument("need 0 <= time_grid.t_min < time_grid.t_max < inf")
        bad = [x for x in self.quantities if x not in QUANTITIES]
        if bad or not self.quantities:
            raise InvalidArgument(f"quantities must be a non-empty subset of {QUANTITIES}, got {bad or 'nothing'}")
        if len(set(self.quantities)) != len(self.quantities):
            raise InvalidArgument("quantities contain duplicates")
        if self.kernel not in pulses.KERNEL_CONVENTIONS:
            raise InvalidArgument(f"kernel must be one of {pulses.KERNEL_CONVENTIONS}")
        if not (math.isfinite(self.chi) and math.isfinite(self.lam)):
            raise InvalidArgument("chi and lambda must be finite")

    @property
    def times(self):
        return np.linspace(self.t_min, self.t_max, self.points)

    def to_flat(self):
        d = asdict(self)
        out = {key: d[name] for key, name in CONFIG_KEYS.items()}
        out["quantities"] = list(self.quantities)
        return out

    @classmethod
    def from_flat(cls, values, base=None):
        """Build from dotted keys; string values are parsed to the field type."""
        base = base or cls()
        unknown = sorted(set(values) - set(CONFIG_KEYS))
        if unknown:
            raise InvalidArgument(f"unknown config key(s) {unknown}; valid keys: {sorted(CONFIG_KEYS)}")
        types = {f.name: f.type for f in fields(cls)}
        kw = {}
        for key, raw in values.items():
            name = CONFIG_KEYS[key]
            kw[name] = _coerce(key, types[name], raw)
        return replace(base, **kw)


def _coerce(key, typ, raw):
    if not isinstance(raw, str):
        return tuple(raw) if typ == "tuple" or typ is tuple else raw
    raw = raw.strip()
    try:
        if typ in ("int", int):
            return int(raw)
        if typ in ("float", float):
            return float(raw)
    except ValueError:
        raise InvalidArgument(f"cannot parse {key}={raw!r}") from None
    if typ in ("tuple", tuple):
        return tuple(s.strip() for s in raw.split(",") if s.strip())
    return raw


@dataclass
class Dataset:
    """Ordered named columns of equal length plus JSON-serialisable metadata."""

    columns: dict
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.columns = {k: np.asarray(v, dtype=float) for k, v in self.columns.items()}
        lengths = {v.shape for v in self.columns.values()}
        if len(lengths) > 1 or any(len(s) != 1 for s in lengths):
            raise InvalidArgument("columns must be 1-D and of equal length")

    def __len__(self):
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def __getitem__(self, name):
        return self.columns[name]

    def equals(self, other):
        if list(self.columns) != list(other.columns) or self.metadata != other.metadata:
            return False
        return all(np.array_equal(self[k], other[k], equal_nan=True) for k in self.columns)

    def to_csv(self, path):
        lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in self.metadata.items()]
        lines.append(",".join(self.columns))
        rows = np.column_stack(list(self.columns.values()))
        lines.extend(",".join(_fmt(x) for x in row) for row in rows)
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def from_csv(cls, path):
        meta, body = {}, []
        with open(path) as fh:
            for line in fh:
                line = line.rstrip("\n")
                if line.startswith("#"):
                    key, _, val = line[1:].strip().partition(": ")
                    meta[key] = json.loads(val)
                elif line:
                    body.append(line.split(","))
        header, rows = body[0], body[1:]
        data = np.array([[float(x) for x in r] for r in rows]).reshape(len(rows), len(header))
        return cls({h: data[:, i] for i, h in enumerate(header)}, meta)


def _fmt(x):
    # 17 significant digits round-trip every double
    return "nan" if math.isnan(x) else f"{x:.16e}"


def thread_count():
    raw = os.environ.get("DD_METROLOGY_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise InvalidArgument(f"DD_METROLOGY_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise InvalidArgument("DD_METROLOGY_THREADS must be >= 0")
    return n or min(32, os.cpu_count() or 1)


@lru_cache(maxsize=1 << 16)
def _unit_record(temperature, family, n, t, kernel):
    # R and Omega are linear in alpha, so records are computed once at alpha = 1
    rec = noise.dephasing_record(noise.NoiseSpec(1.0, 1.0, temperature), family, n, t, kernel=kernel)
    return rec.r, rec.omega_twist, rec.phi_integral


def dephasing_at(config, t):
    r, om, phi = _unit_record(config.temperature, config.family, config.n, float(t), config.kernel)
    return noise.DephasingRecord(config.alpha * r, config.alpha * om, phi, float(t))


def _evaluate(config, css, t):
    rec = dephasing_at(config, t)
    want = config.quantities
    out = {}
    if "R" in want:
        out["R"] = rec.r
    if "Omega" in want:
        out["Omega"] = rec.omega_twist
    if _STATE_QUANTITIES & set(want):
        state = spin.evolve(css, rec, config.lam, config.chi)
        if "xi2" in want:
            try:
                out["xi2"] = squeezing.squeezing_numeric(state).xi2
            except DegenerateDirection:
                out["xi2"] = math.nan
        if "purity" in want:
            out["purity"] = spin.purity(state)
        if "qfi" in want or "eta" in want:
            res = qfi.qfi_state(state)
            out["qfi"], out["eta"] = res.f_max, res.eta
    if "eta_pure" in want:
        out["eta_pure"] = qfi.amplification_closed(config.n_atoms, rec.omega_twist - config.chi * rec.t)
    return [out[q] for q in want]


def run_sweep(config, threads=None):
    """Tabulate config.quantities on the config's time grid (deterministic)."""
    times = config.times
    css = spin.css_state(config.n_atoms)

    def job(i):
        try:
            return _evaluate(config, css, times[i])
        except NumericFailure as exc:
            exc.point = {"index": i, "t": float(times[i]), **(exc.point or {})}
            raise

    workers = threads or thread_count()
    if workers == 1:
        rows = [job(i) for i in range(len(times))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(job, range(len(times))))
    values = np.array(rows, dtype=float).reshape(len(times), len(config.quantities))
    cols = {"t": times}
    cols.update({q: values[:, k] for k, q in enumerate(config.quantities)})
    meta = {"tool": "dd-metrology", "version": TOOL_VERSION, "kind": "sweep",
            "config": config.to_flat()}
    return Dataset(cols, meta)


def atom_sweep(config, n_values, t, threads=None):
    """eta (mixed-state route) and the closed pure-state eta at fixed t for several N."""
    n_values = [int(x) for x in n_values]
    if not n_values or min(n_values) < 2:
        raise InvalidArgument("need atom numbers >= 2")
    rec = dephasing_at(config, t)
    twist = rec.omega_twist - config.chi * rec.t

    def job(n_atoms):
        state = spin.evolve(spin.css_state(n_atoms), rec, config.lam, config.chi)
        return qfi.qfi_state(state).eta, qfi.amplification_closed(n_atoms, twist)

    with ThreadPoolExecutor(max_workers=threads or thread_count()) as pool:
        rows = list(pool.map(job, n_values))
    eta, eta_pure = np.array(rows).T
    return Dataset({"N": n_values, "eta": eta, "eta_pure": eta_pure},
                   {"tool": "dd-metrology", "version": TOOL_VERSION, "kind": "atom_sweep",
                    "config": config.to_flat(), "t": float(t), "n_values": n_values,
                    "R": rec.r, "Omega": rec.omega_twist})


# Figure presets.  Each entry: base config overrides, then (label, overrides) variants.
# Values marked as defaults in the notes are choices, echoed in the metadata and overridable.
_SEQ_N50 = [("FREE", {"sequence.family": "FREE", "sequence.n": 0}),
            ("PDD50", {"sequence.family": "PDD", "sequence.n": 50}),
            ("UDD50", {"sequence.family": "UDD", "sequence.n": 50})]

FIGURES = {
    "1": ({"alpha": 0.1, "temperature": 1.0, "quantities": "R,Omega"}, _SEQ_N50,
          "pulse count n=50 is a default"),
    "2a": ({"temperature": 0.0, "sequence.family": "FREE", "sequence.n": 0, "quantities": "xi2"},
           [(f"alpha={a}", {"alpha": a}) for a in (0.01, 0.05, 0.1)],
           "alpha values are defaults"),
    "2b": ({"alpha": 0.01, "sequence.family": "FREE", "sequence.n": 0, "quantities": "xi2"},
           [(f"T={x}", {"temperature": x}) for x in (0.0, 1.0, 5.0)],
           "alpha=0.01 and T values are defaults"),
    "3a": ({"alpha": 0.01, "temperature": 1.0, "sequence.family": "PDD", "quantities": "xi2"},
           [(f"PDD{n}", {"sequence.n": n}) for n in (10, 20, 50)],
           "pulse counts are defaults"),
    "3b": ({"alpha": 0.01, "temperature": 1.0, "sequence.family": "UDD", "quantities": "xi2"},
           [(f"UDD{n}", {"sequence.n": n}) for n in (10, 20, 50)],
           "pulse counts are defaults"),
    "4": ({"temperature": 1.0, "quantities": "purity"},
          [(f"{fam}{n};alpha={a}", {"alpha": a, "sequence.family": fam, "sequence.n": n})
           for a in (0.1, 0.05, 0.01) for n in (20, 50) for fam in ("UDD", "PDD")],
          "pulse counts are defaults; UDD solid, PDD dashed"),
    "5a": ({"temperature": 1.0, "sequence.family": "UDD", "sequence.n": 50,
            "quantities": "eta,eta_pure"},
           [(f"alpha={a}", {"alpha": a}) for a in (0.01, 0.05)],
           "alpha values are defaults"),
    "5b": ({"alpha": 0.05, "temperature": 1.0, "sequence.family": "UDD", "sequence.n": 50,
            "quantities": "eta,eta_pure"}, [], "t=5, N=20..400"),
}
FIGURE_5B_T = 5.0
FIGURE_5B_N = tuple(range(20, 401, 20))


def figure_configs(figure_id, overrides=None):
    """Resolved (label, SweepConfig) pairs of a figure preset."""
    if figure_id not in FIGURES:
        raise InvalidArgument(f"unknown figure {figure_id!r}; choose from {sorted(FIGURES)}")
    base, variants, _ = FIGURES[figure_id]
    base_cfg = SweepConfig.from_flat(base)
    out = []
    for label, var in variants or [("", {})]:
        cfg = SweepConfig.from_flat(var, base_cfg)
        if overrides:
            cfg = SweepConfig.from_flat(overrides, cfg)
        out.append((label, cfg))
    return out


def run_figure(figure_id, overrides=None, threads=None):
    figure_id = str(figure_id)
    overrides = dict(overrides or {})
    pairs = figure_configs(figure_id, overrides)
    meta = {"tool": "dd-metrology", "version": TOOL_VERSION, "kind": "figure",
            "figure": figure_id, "overrides": overrides, "note": FIGURES[figure_id][2],
            "variants": {label: cfg.to_flat() for label, cfg in pairs}}
    if figure_id == "5b":
        ds = atom_sweep(pairs[0][1], FIGURE_5B_N, FIGURE_5B_T, threads)
        ds.metadata = {**meta, "t": FIGURE_5B_T, "n_values": list(FIGURE_5B_N)}
        return ds
    cols = {}
    for label, cfg in pairs:
        ds = run_sweep(cfg, threads)
        cols.setdefault("t", ds["t"])
        if not np.array_equal(cols["t"], ds["t"]):
            raise InvalidArgument("figure variants must share one time grid")
        for q in cfg.quantities:
            cols[f"{q}@{label}"] = ds[q]
    if figure_id in ("3a", "3b"):
        cols["xi2_limit"] = np.full(len(cols["t"]), squeezing.squeezing_limit(pairs[0][1].n_atoms))
    return Dataset(cols, meta)


def rerun(metadata):
    """Recompute a Dataset from its own metadata."""
    kind = metadata.get("kind")
    if kind == "figure":
        return run_figure(metadata["figure"], metadata["overrides"])
    cfg = SweepConfig.from_flat(metadata["config"])
    if kind == "sweep":
        return run_sweep(cfg)
    if kind == "atom_sweep":
        return atom_sweep(cfg, metadata["n_values"], metadata["t"])
    raise InvalidArgument(f"cannot re-run dataset of kind {kind!r}")
