"""Command-line front end.

Subcommands build the analytic tables, run the matrix-model Monte
Carlo, and drive the three physical models, emitting plot-ready CSV
tables and JSON scalar results.  Every output file starts with a
comment line carrying the tool version, a hash of the fully resolved
run configuration, and the seed, so runs can be replayed bit-identically
(`--config` reloads a saved configuration; explicit flags override it).

Parallelism (`--threads`) only distributes independent members across a
worker pool; accumulation always happens in member order, so outputs do
not depend on the thread count.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import math
import os
import sys
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import d_q_crossover, d_q_oe, d_q_ue
from .ensembles import EnsembleSpec, eigh, sample_pandey_mehta
from .estimators import (
    HistogramAccumulator,
    MomentAccumulator,
    ProfileAccumulator,
    fit_epsilon,
)
from .models import (
    BilliardSpec,
    QkrSpec,
    SpinChainSpec,
    billiard_dos_theory,
    billiard_hamiltonian,
    qkr_floquet,
    sector_basis,
    spin_chain_block,
    unitary_eigs,
)
from .specfun import QuadratureError

_SENTINEL = object()


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _meta_line(config_hash: str, seed) -> str:
    return f"# mfcross {__version__} config={config_hash} seed={seed}"


def write_table(path, columns, rows, config_hash, seed, fmt="csv"):
    """Write one table as CSV (default) or JSON with a metadata header."""
    path = Path(path)
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(_meta_line(config_hash, seed) + "\n")
            fh.write(",".join(columns) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(cell) for cell in row) + "\n")
    elif fmt == "json":

        def cell_value(cell):
            if isinstance(cell, str):
                return cell
            if isinstance(cell, (int, np.integer)):
                return int(cell)
            return float(cell)

        payload = {
            "meta": {"tool": "mfcross", "version": __version__, "config": config_hash, "seed": seed},
            "columns": list(columns),
            "data": [[cell_value(cell) for cell in row] for row in rows],
        }
        with open(path, "w", encoding="utf-8", newline="") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def write_scalars(path, payload: dict, config_hash, seed):
    record = {
        "meta": {"tool": "mfcross", "version": __version__, "config": config_hash, "seed": seed},
        **payload,
    }
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(record, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


def _resolve_config(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults < --config file < explicit flags."""
    given = {k: v for k, v in vars(args).items() if k not in ("func", "command_name", "config")}
    merged = dict(defaults)
    config_path = getattr(args, "config", None)
    if config_path:
        with open(config_path, encoding="utf-8") as fh:
            loaded = json.load(fh)
        loaded.pop("command", None)
        unknown = set(loaded) - set(defaults)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        merged.update(loaded)
    merged.update(given)
    return merged


def _save_run_config(out_dir: Path, command: str, config: dict) -> str:
    record = {"command": command, **config}
    config_hash = _config_hash(record)
    with open(out_dir / "run_config.json", "w", encoding="utf-8", newline="") as fh:
        json.dump(record, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return config_hash


def _ordered_map(fn, items, max_workers):
    """Apply fn across items in parallel, yielding results in input order."""
    if max_workers <= 1:
        for item in items:
            yield fn(item)
        return
    items = iter(items)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        pending = deque(
            pool.submit(fn, item) for item in itertools.islice(items, max_workers + 2)
        )
        while pending:
            yield pending.popleft().result()
            nxt = next(items, _SENTINEL)
            if nxt is not _SENTINEL:
                pending.append(pool.submit(fn, nxt))


def _parse_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _parse_ints(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


class _SampleThinner:
    """Deterministic stride subsample of pooled component intensities.

    The stride is bumped until it is coprime with the per-state row
    width, otherwise a resonant stride would revisit the same few
    spectral positions and bias the pooled sample.
    """

    def __init__(self, target: int, total: int, width: int = 1):
        stride = max(1, total // max(target, 1))
        while stride > 1 and math.gcd(stride, width) != 1:
            stride += 1
        self.stride = stride
        self.offset = 0
        self.chunks = []

    def update(self, x_flat: np.ndarray) -> None:
        start = (-self.offset) % self.stride
        self.chunks.append(x_flat[start:: self.stride])
        self.offset = (self.offset + x_flat.size) % self.stride

    def values(self) -> np.ndarray:
        return np.concatenate(self.chunks) if self.chunks else np.empty(0)


def _profile_rows(profile):
    for j in range(len(profile.eigenvalues)):
        yield (
            j,
            profile.eigenvalues[j],
            profile.d1[j],
            profile.d2[j],
            profile.s1[j],
            profile.s2[j],
        )


_PROFILE_COLUMNS = ("index", "eigenvalue", "D1", "D2", "S1", "S2")


def _hist_rows(hist):
    centers = 0.5 * (hist.bin_edges[:-1] + hist.bin_edges[1:])
    for y, dens in zip(centers, hist.density):
        yield (y, dens)


def _fit_payload(fit):
    return {
        "eps_hat": fit.eps_hat,
        "neg_log_likelihood": fit.neg_log_likelihood,
        "n_samples": fit.n_samples,
        "converged": fit.converged,
        "boundary_hit": fit.boundary_hit,
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

ANALYTIC_DEFAULTS = {
    "q_grid": "1,2,3,4,5,6",
    "n_grid": "1000",
    "eps_list": "1,4,10",
    "out": ".",
    "format": "csv",
    "seed": 0,
    "threads": 0,
}


def cmd_analytic(args):
    cfg = _resolve_config(args, ANALYTIC_DEFAULTS)
    out_dir = Path(cfg["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    config_hash = _save_run_config(out_dir, "analytic", cfg)

    q_grid = _parse_floats(cfg["q_grid"])
    n_grid = _parse_ints(cfg["n_grid"])
    eps_list = _parse_floats(cfg["eps_list"])

    rows = []
    skipped = 0
    for n_dim in n_grid:
        ln_n = math.log(n_dim)
        for q in q_grid:
            for family, dq_fn in (("OE", d_q_oe), ("UE", d_q_ue)):
                dq = dq_fn(q, n_dim).value
                rows.append((family, "", q, n_dim, dq, ln_n * (1.0 - dq)))
            for eps in eps_list:
                try:
                    dq = d_q_crossover(eps, q, n_dim).value
                except QuadratureError as exc:
                    print(f"warning: skipped crossover row eps={eps} q={q} N={n_dim}: {exc}", file=sys.stderr)
                    skipped += 1
                    continue
                rows.append(("crossover", eps, q, n_dim, dq, ln_n * (1.0 - dq)))
    ext = "csv" if cfg["format"] == "csv" else "json"
    write_table(
        out_dir / f"analytic_dq.{ext}",
        ("family", "eps", "q", "N", "Dq", "Sq"),
        rows,
        config_hash,
        cfg["seed"],
        cfg["format"],
    )
    return 0


RMT_DEFAULTS = {
    "n": 1000,
    "alpha": 0.0,
    "members": 200,
    "v2": None,
    "q_grid": "1,1.5,2,2.5,3,3.5,4,4.5,5,5.5,6",
    "analyses": "hist,qsweep,profile,fit",
    "bins": 81,
    "y_range": "-12,3",
    "fit_samples": 100000,
    "bracket": "1e-3,1e5",
    "out": ".",
    "format": "csv",
    "seed": 0,
    "threads": 0,
}


def cmd_rmt(args):
    cfg = _resolve_config(args, RMT_DEFAULTS)
    out_dir = Path(cfg["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    config_hash = _save_run_config(out_dir, "rmt", cfg)

    spec = EnsembleSpec(
        n_dim=int(cfg["n"]),
        alpha=float(cfg["alpha"]),
        n_members=int(cfg["members"]),
        seed=int(cfg["seed"]),
        v2=None if cfg["v2"] in (None, "") else float(cfg["v2"]),
    )
    analyses = {tok.strip() for tok in cfg["analyses"].split(",") if tok.strip()}
    unknown = analyses - {"hist", "qsweep", "profile", "fit"}
    if unknown:
        raise ValueError(f"unknown analyses: {sorted(unknown)}")
    q_grid = _parse_floats(cfg["q_grid"])
    y_lo, y_hi = _parse_floats(cfg["y_range"])

    moments = MomentAccumulator(q_grid) if "qsweep" in analyses else None
    profile = ProfileAccumulator() if "profile" in analyses else None
    hist = HistogramAccumulator(int(cfg["bins"]), (y_lo, y_hi)) if "hist" in analyses else None
    thinner = None
    if "fit" in analyses:
        total = spec.n_members * spec.n_dim**2
        thinner = _SampleThinner(int(cfg["fit_samples"]), total, width=spec.n_dim)

    threads = int(cfg["threads"]) or (os.cpu_count() or 1)

    def run_member(m):
        return eigh(sample_pandey_mehta(spec, m), check=False)

    for system in _ordered_map(run_member, range(spec.n_members), threads):
        for acc in (moments, profile, hist):
            if acc is not None:
                acc.update(system)
        if thinner is not None:
            thinner.update((system.n_dim * np.abs(system.eigenvectors) ** 2).ravel())

    fmt = cfg["format"]
    ext = "csv" if fmt == "csv" else "json"
    if moments is not None:
        averages = moments.result()
        write_table(
            out_dir / f"qsweep.{ext}",
            ("q", "Dq", "Sq"),
            zip(averages.q_grid, averages.d_q, averages.s_q),
            config_hash,
            spec.seed,
            fmt,
        )
    if profile is not None:
        write_table(
            out_dir / f"profile.{ext}",
            _PROFILE_COLUMNS,
            _profile_rows(profile.result()),
            config_hash,
            spec.seed,
            fmt,
        )
    if hist is not None:
        write_table(
            out_dir / f"hist.{ext}",
            ("y", "density"),
            _hist_rows(hist.result()),
            config_hash,
            spec.seed,
            fmt,
        )
    if thinner is not None:
        lo, hi = _parse_floats(cfg["bracket"])
        fit = fit_epsilon(thinner.values(), bracket=(lo, hi))
        write_scalars(out_dir / "fit.json", _fit_payload(fit), config_hash, spec.seed)
    return 0


QKR_DEFAULTS = {
    "n": 201,
    "members": 500,
    "kick": 20000.0,
    "gamma": 0.0,
    "theta0": None,
    "jitter": 250.0,
    "fit_samples": 100000,
    "bracket": "1e-3,1e5",
    "out": ".",
    "format": "csv",
    "seed": 0,
    "threads": 0,
}


def cmd_qkr(args):
    cfg = _resolve_config(args, QKR_DEFAULTS)
    out_dir = Path(cfg["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    config_hash = _save_run_config(out_dir, "qkr", cfg)

    spec = QkrSpec(
        n_dim=int(cfg["n"]),
        kick_strength=float(cfg["kick"]),
        trs_gamma=float(cfg["gamma"]),
        theta0=None if cfg["theta0"] in (None, "") else float(cfg["theta0"]),
        n_members=int(cfg["members"]),
        kick_jitter=float(cfg["jitter"]),
        seed=int(cfg["seed"]),
    )
    profile = ProfileAccumulator()
    thinner = _SampleThinner(int(cfg["fit_samples"]), spec.n_members * spec.n_dim**2, width=spec.n_dim)
    threads = int(cfg["threads"]) or (os.cpu_count() or 1)

    def run_member(m):
        return unitary_eigs(qkr_floquet(spec, m), check=False)

    for system in _ordered_map(run_member, range(spec.n_members), threads):
        profile.update(system)
        thinner.update((system.n_dim * np.abs(system.eigenvectors) ** 2).ravel())

    fmt = cfg["format"]
    ext = "csv" if fmt == "csv" else "json"
    write_table(
        out_dir / f"profile.{ext}",
        _PROFILE_COLUMNS,
        _profile_rows(profile.result()),
        config_hash,
        spec.seed,
        fmt,
    )
    lo, hi = _parse_floats(cfg["bracket"])
    fit = fit_epsilon(thinner.values(), bracket=(lo, hi))
    write_scalars(out_dir / "fit.json", _fit_payload(fit), config_hash, spec.seed)
    return 0


BILLIARD_DEFAULTS = {
    "width": 80,
    "height": 90,
    "ellipse_a": 45,
    "ellipse_b": 35,
    "onsite": 4.0,
    "hopping": -1.0,
    "b_field": 0.0,
    "dos_bins": 64,
    "fit_samples": 100000,
    "bracket": "1e-3,1e5",
    "out": ".",
    "format": "csv",
    "seed": 0,
    "threads": 0,
}


def cmd_billiard(args):
    cfg = _resolve_config(args, BILLIARD_DEFAULTS)
    out_dir = Path(cfg["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    config_hash = _save_run_config(out_dir, "billiard", cfg)

    spec = BilliardSpec(
        rect_width=int(cfg["width"]),
        rect_height=int(cfg["height"]),
        ellipse_a=int(cfg["ellipse_a"]),
        ellipse_b=int(cfg["ellipse_b"]),
        onsite=float(cfg["onsite"]),
        hopping=float(cfg["hopping"]),
        b_field=float(cfg["b_field"]),
    )
    hamiltonian, coords = billiard_hamiltonian(spec)
    dense = hamiltonian.toarray()
    if spec.b_field == 0.0:
        dense = dense.real
    system = eigh(dense, check=False)

    fmt = cfg["format"]
    ext = "csv" if fmt == "csv" else "json"
    write_table(
        out_dir / f"sites.{ext}",
        ("site_index", "x", "y"),
        ((i, int(x), int(y)) for i, (x, y) in enumerate(coords)),
        config_hash,
        cfg["seed"],
        fmt,
    )

    profile = ProfileAccumulator()
    profile.update(system)
    write_table(
        out_dir / f"profile.{ext}",
        _PROFILE_COLUMNS,
        _profile_rows(profile.result()),
        config_hash,
        cfg["seed"],
        fmt,
    )

    edges = np.linspace(0.0, 8.0, int(cfg["dos_bins"]) + 1)
    counts, _ = np.histogram(system.eigenvalues, bins=edges)
    widths = np.diff(edges)
    rho_emp = counts / (system.n_dim * widths)
    centers = 0.5 * (edges[:-1] + edges[1:])
    rho_theory = billiard_dos_theory(centers)
    write_table(
        out_dir / f"dos.{ext}",
        ("E", "rho_emp", "rho_theory"),
        zip(centers, rho_emp, rho_theory),
        config_hash,
        cfg["seed"],
        fmt,
    )

    thinner = _SampleThinner(int(cfg["fit_samples"]), system.n_dim**2, width=system.n_dim)
    thinner.update((system.n_dim * np.abs(system.eigenvectors) ** 2).ravel())
    lo, hi = _parse_floats(cfg["bracket"])
    fit = fit_epsilon(thinner.values(), bracket=(lo, hi))
    write_scalars(out_dir / "fit.json", _fit_payload(fit), config_hash, cfg["seed"])
    return 0


SPINCHAIN_DEFAULTS = {
    "length": 13,
    "j_coupling": 1.0,
    "h_strength": 0.2,
    "k_list": "0,0.01,0.6",
    "sz": 0.5,
    "realization": 0,
    "export_basis": False,
    "fit_samples": 100000,
    "bracket": "1e-3,1e5",
    "out": ".",
    "format": "csv",
    "seed": 0,
    "threads": 0,
}


def _k_tag(k: float) -> str:
    return format(k, "g").replace("-", "m").replace(".", "p")


def cmd_spinchain(args):
    cfg = _resolve_config(args, SPINCHAIN_DEFAULTS)
    out_dir = Path(cfg["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    config_hash = _save_run_config(out_dir, "spinchain", cfg)

    fmt = cfg["format"]
    ext = "csv" if fmt == "csv" else "json"
    k_list = _parse_floats(cfg["k_list"])
    lo, hi = _parse_floats(cfg["bracket"])

    if cfg["export_basis"]:
        basis = sector_basis(int(cfg["length"]), float(cfg["sz"]))
        write_table(
            out_dir / f"basis.{ext}",
            ("state_index", "bitstring"),
            ((i, format(int(s), f"0{int(cfg['length'])}b")) for i, s in enumerate(basis)),
            config_hash,
            cfg["seed"],
            fmt,
        )

    for k in k_list:
        spec = SpinChainSpec(
            length=int(cfg["length"]),
            j_coupling=float(cfg["j_coupling"]),
            h_strength=float(cfg["h_strength"]),
            k_chirality=k,
            sz_sector=float(cfg["sz"]),
            seed=int(cfg["seed"]),
        )
        system = eigh(spin_chain_block(spec, int(cfg["realization"])), check=False)
        profile = ProfileAccumulator()
        profile.update(system)
        tag = _k_tag(k)
        write_table(
            out_dir / f"profile_K{tag}.{ext}",
            _PROFILE_COLUMNS,
            _profile_rows(profile.result()),
            config_hash,
            cfg["seed"],
            fmt,
        )
        thinner = _SampleThinner(int(cfg["fit_samples"]), system.n_dim**2, width=system.n_dim)
        thinner.update((system.n_dim * np.abs(system.eigenvectors) ** 2).ravel())
        fit = fit_epsilon(thinner.values(), bracket=(lo, hi))
        write_scalars(out_dir / f"fit_K{tag}.json", _fit_payload(fit), config_hash, cfg["seed"])
    return 0


FIT_DEFAULTS = {
    "samples": "",
    "bracket": "1e-3,1e5",
    "out": ".",
    "format": "csv",
    "seed": 0,
    "threads": 0,
}


def _read_samples(path) -> np.ndarray:
    values = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            token = line.split(",")[-1]
            try:
                values.append(float(token))
            except ValueError:
                continue  # header row
    return np.asarray(values)


def cmd_fit(args):
    cfg = _resolve_config(args, FIT_DEFAULTS)
    if not cfg["samples"]:
        raise ValueError("fit requires --samples FILE")
    out_dir = Path(cfg["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    config_hash = _save_run_config(out_dir, "fit", cfg)
    samples = _read_samples(cfg["samples"])
    lo, hi = _parse_floats(cfg["bracket"])
    fit = fit_epsilon(samples, bracket=(lo, hi))
    write_scalars(out_dir / "fit.json", _fit_payload(fit), config_hash, cfg["seed"])
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(parser):
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="base RNG seed")
    parser.add_argument("--out", default=argparse.SUPPRESS, help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    parser.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker threads (0 = cores)")
    parser.add_argument("--config", default=None, help="JSON run configuration; flags override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfcross",
        description="Multifractal dimensions across the orthogonal-to-unitary crossover",
    )
    parser.add_argument("--version", action="version", version=f"mfcross {__version__}")
    sub = parser.add_subparsers(dest="command_name", required=True)

    p = sub.add_parser("analytic", help="closed-form and crossover Dq/Sq tables")
    p.add_argument("--q-grid", dest="q_grid", default=argparse.SUPPRESS)
    p.add_argument("--n-grid", dest="n_grid", default=argparse.SUPPRESS)
    p.add_argument("--eps", dest="eps_list", default=argparse.SUPPRESS)
    _add_common(p)
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("rmt", help="Monte Carlo of the crossover matrix model")
    p.add_argument("--n", type=int, default=argparse.SUPPRESS)
    p.add_argument("--alpha", type=float, default=argparse.SUPPRESS)
    p.add_argument("--members", type=int, default=argparse.SUPPRESS)
    p.add_argument("--v2", type=float, default=argparse.SUPPRESS)
    p.add_argument("--q-grid", dest="q_grid", default=argparse.SUPPRESS)
    p.add_argument("--analyses", default=argparse.SUPPRESS, help="subset of hist,qsweep,profile,fit")
    p.add_argument("--bins", type=int, default=argparse.SUPPRESS)
    p.add_argument("--y-range", dest="y_range", default=argparse.SUPPRESS)
    p.add_argument("--fit-samples", dest="fit_samples", type=int, default=argparse.SUPPRESS)
    p.add_argument("--bracket", default=argparse.SUPPRESS)
    _add_common(p)
    p.set_defaults(func=cmd_rmt)

    p = sub.add_parser("qkr", help="kicked-rotor Floquet ensemble")
    p.add_argument("--n", type=int, default=argparse.SUPPRESS)
    p.add_argument("--members", type=int, default=argparse.SUPPRESS)
    p.add_argument("--kick", type=float, default=argparse.SUPPRESS)
    p.add_argument("--gamma", type=float, default=argparse.SUPPRESS)
    p.add_argument("--theta0", type=float, default=argparse.SUPPRESS)
    p.add_argument("--jitter", type=float, default=argparse.SUPPRESS)
    p.add_argument("--fit-samples", dest="fit_samples", type=int, default=argparse.SUPPRESS)
    p.add_argument("--bracket", default=argparse.SUPPRESS)
    _add_common(p)
    p.set_defaults(func=cmd_qkr)

    p = sub.add_parser("billiard", help="quarter Sinai billiard")
    p.add_argument("--width", type=int, default=argparse.SUPPRESS)
    p.add_argument("--height", type=int, default=argparse.SUPPRESS)
    p.add_argument("--ellipse-a", dest="ellipse_a", type=int, default=argparse.SUPPRESS)
    p.add_argument("--ellipse-b", dest="ellipse_b", type=int, default=argparse.SUPPRESS)
    p.add_argument("--onsite", type=float, default=argparse.SUPPRESS)
    p.add_argument("--hopping", type=float, default=argparse.SUPPRESS)
    p.add_argument("--b-field", dest="b_field", type=float, default=argparse.SUPPRESS)
    p.add_argument("--dos-bins", dest="dos_bins", type=int, default=argparse.SUPPRESS)
    p.add_argument("--fit-samples", dest="fit_samples", type=int, default=argparse.SUPPRESS)
    p.add_argument("--bracket", default=argparse.SUPPRESS)
    _add_common(p)
    p.set_defaults(func=cmd_billiard)

    p = sub.add_parser("spinchain", help="chirality spin chain, one block per K")
    p.add_argument("--length", type=int, default=argparse.SUPPRESS)
    p.add_argument("--j", dest="j_coupling", type=float, default=argparse.SUPPRESS)
    p.add_argument("--h", dest="h_strength", type=float, default=argparse.SUPPRESS)
    p.add_argument("--k-list", dest="k_list", default=argparse.SUPPRESS)
    p.add_argument("--sz", type=float, default=argparse.SUPPRESS)
    p.add_argument("--realization", type=int, default=argparse.SUPPRESS)
    p.add_argument("--export-basis", dest="export_basis", action="store_true", default=argparse.SUPPRESS)
    p.add_argument("--fit-samples", dest="fit_samples", type=int, default=argparse.SUPPRESS)
    p.add_argument("--bracket", default=argparse.SUPPRESS)
    _add_common(p)
    p.set_defaults(func=cmd_spinchain)

    p = sub.add_parser("fit", help="fit the crossover parameter to a sample file")
    p.add_argument("--samples", default=argparse.SUPPRESS, help="file with one x value per line")
    p.add_argument("--bracket", default=argparse.SUPPRESS)
    _add_common(p)
    p.set_defaults(func=cmd_fit)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
