"""Command-line surface binding every module of the library.

Nine subcommands: ``sums``, ``blocks``, ``diagram``, ``bifurcate``,
``symmetry``, ``resonances``, ``stability``, ``charges``, ``verify``.
Each emits CSV (header row) or JSON, never anything binary, and documents
every numeric column in its ``--help`` text, including whether a frequency
column is raw or sqrt(omega)-normalized (the ``nu_kind`` tag; the two
conventions differ by the factor sqrt(mu + s_1) and mixing them up is the
single most likely consumer error).

Determinism contract: repeated invocations with identical inputs produce
byte-identical data files.  Everything run-dependent (wall time) lives in a
segregated run manifest written next to the data file as
``<output>.manifest.json``; the data file itself carries no timestamps.
Writes are atomic (temp file + rename) so a crashed run never leaves a
truncated artifact.

Exit codes: 0 success, 1 domain error (bad flags, malformed config,
out-of-domain parameters, degenerate orbits), 2 verification failure.
Diagnostics are single-line and machine-parsable:
``ringbif: <subcommand>: <kind>: <detail>``.

A JSON config file (``--config``) mirrors every long flag with dashes
replaced by underscores; explicit command-line flags win over config
values, which win over built-in defaults.  The environment variable
``RINGBIF_OUTDIR`` names a default directory for relative ``--out`` paths.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import hashlib
import io
import json
import math
import os
import sys
import tempfile
import time

import numpy as np

from . import __version__
from .bifurcation import DegenerateOrbitError, enumerate_bifurcations
from .charges import ChargeConfig, charge_bifurcations
from .oracle import dense_crossings, fd_hessian_check, raw_s, recurrence_bruteforce
from .polygonal import RingConfig, block_m0, block_m1, verify_full_diagonalization
from .resonance import is_truly_spatial, spatial_spatial_resonances, subharmonic_bound
from .spectrum import eigen_signature, spectral_curve
from .stability import critical_mass_star, spectral_stability
from .sums import s_sum, sum_table, verify_recurrences
from .symmetry import describe

ENV_OUTDIR = "RINGBIF_OUTDIR"
EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFY = 2

# Tolerances quoted in run manifests and applied by the verify suites.
VERIFY_TOL = {
    "sums": 1e-9,
    "hessian": 1e-6,
    "blocks": 1e-10,
    "crossings": 1e-7,
}


class CommandError(Exception):
    """Usage or domain error; main() turns it into exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags, but this tool reserves 2
    # for verification failures; route parse errors through CommandError
    # so unknown flags and malformed values exit 1 like every other
    # domain error.
    def error(self, message):
        raise CommandError(message)


# ---------------------------------------------------------------------------
# run manifests, atomic writes, emission


def _fingerprint(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _atomic_write(path: str, text: str) -> None:
    """Write text to path via a sibling temp file and an atomic rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ringbif-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _render_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def _render_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _resolve_output(out, fmt):
    """Split --out/--format into (format, path-or-None for stdout).

    The literal values ``--out csv`` / ``--out json`` are format shorthands
    that stream to stdout, so `bifurcate --n 3 --mu 1 --out json` works
    without naming a file.
    """
    if out in ("csv", "json"):
        if fmt is not None and fmt != out:
            raise CommandError(f"--out {out} conflicts with --format {fmt}")
        fmt, out = out, None
    if fmt is None:
        fmt = "csv"
    if fmt not in ("csv", "json"):
        raise CommandError(f"--format must be csv or json, got {fmt!r}")
    if out in (None, "-"):
        return fmt, None
    if not os.path.isabs(out):
        base = os.environ.get(ENV_OUTDIR)
        if base:
            out = os.path.join(base, out)
    return fmt, out


def _emit(ns, command, parameters, tolerances, columns, rows, payload, started,
          config_fp=None) -> None:
    """Render and deliver one artifact plus its segregated manifest."""
    fmt, path = _resolve_output(ns.out, ns.format)
    text = _render_csv(columns, rows) if fmt == "csv" else _render_json(payload)
    if path is None:
        sys.stdout.write(text)
        return
    _atomic_write(path, text)
    manifest = {
        "command": command,
        "parameters": parameters,
        "tool_version": __version__,
        "tolerances": tolerances,
        "wall_time_s": time.perf_counter() - started,
        "input_fingerprints": {
            "parameters_sha256": _fingerprint(parameters),
            "config_file_sha256": config_fp,
        },
        "output": {"path": os.path.abspath(path), "format": fmt},
    }
    _atomic_write(path + ".manifest.json", _render_json(manifest))


# ---------------------------------------------------------------------------
# config-file mirroring and parameter resolution


def _load_config(ns):
    path = getattr(ns, "config", None)
    if not path:
        return {}, None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CommandError(f"config: {exc}")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CommandError(f"config: malformed JSON: {exc}")
    if not isinstance(data, dict):
        raise CommandError("config: top level must be a JSON object")
    cfg = {str(k).replace("-", "_"): v for k, v in data.items()}
    return cfg, hashlib.sha256(raw.encode("utf-8")).hexdigest()


def _opt(ns, config, name, default=None, required=False, cast=None):
    """Resolve one parameter: CLI flag, then config file, then default."""
    value = getattr(ns, name, None)
    if value is None:
        value = config.get(name, default)
    if value is None:
        if required:
            raise CommandError(f"missing required parameter --{name.replace('_', '-')}")
        return None
    if cast is not None:
        try:
            value = cast(value)
        except (TypeError, ValueError):
            raise CommandError(f"bad value for --{name.replace('_', '-')}: {value!r}")
    return value


def _threads(ns, config) -> int:
    t = _opt(ns, config, "threads", default=os.cpu_count() or 1, cast=int)
    if t < 1:
        raise CommandError(f"--threads must be >= 1, got {t}")
    return t


def _parallel_map(fn, keys, threads):
    """fn over sorted(keys); results merged back in key order.

    Work items are independent, so thread scheduling cannot leak into the
    output order — determinism comes from the sorted merge, not from luck.
    """
    keys = sorted(keys)
    if threads <= 1 or len(keys) <= 1:
        return [(key, fn(key)) for key in keys]
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {key: pool.submit(fn, key) for key in keys}
        return [(key, futures[key].result()) for key in keys]


def _ring(n, mu, alpha) -> RingConfig:
    try:
        return RingConfig(n, mu, alpha)
    except ValueError as exc:
        raise CommandError(str(exc))


# ---------------------------------------------------------------------------
# subcommands


def cmd_sums(ns, config, config_fp, started) -> int:
    n = _opt(ns, config, "n", required=True, cast=int)
    alpha = _opt(ns, config, "alpha", default=2.0, cast=float)
    try:
        table = sum_table(n, alpha)
    except ValueError as exc:
        raise CommandError(str(exc))
    rows = []
    for k in range(n + 1):
        sbar = float(table.s_bar[k]) if k < n else None
        rows.append((k, float(table.s[k]), sbar))
    payload = {
        "n": n,
        "alpha": alpha,
        "rows": [{"k": k, "s": s, "s_bar": sb} for k, s, sb in rows],
    }
    _emit(ns, "sums", {"n": n, "alpha": alpha}, {}, ("k", "s", "s_bar"),
          rows, payload, started, config_fp)
    return EXIT_OK


def cmd_blocks(ns, config, config_fp, started) -> int:
    n = _opt(ns, config, "n", required=True, cast=int)
    mu = _opt(ns, config, "mu", required=True, cast=float)
    alpha = _opt(ns, config, "alpha", default=2.0, cast=float)
    k = _opt(ns, config, "k", required=True, cast=int)
    sector = _opt(ns, config, "sector", default="planar")
    nu = _opt(ns, config, "nu", required=True, cast=float)
    nu_kind = _opt(ns, config, "nu_kind", default="raw")
    if sector not in ("planar", "spatial"):
        raise CommandError(f"--sector must be planar or spatial, got {sector!r}")
    if nu_kind not in ("raw", "normalized"):
        raise CommandError(f"--nu-kind must be raw or normalized, got {nu_kind!r}")
    ring = _ring(n, mu, alpha)
    if not 1 <= k <= n:
        raise CommandError(f"--k must lie in 1..{n}, got {k}")
    raw = nu * math.sqrt(ring.omega) if nu_kind == "normalized" else nu
    try:
        if sector == "planar":
            mat = np.atleast_2d(np.asarray(block_m0(ring, k, raw)))
        else:
            mat = np.atleast_2d(np.asarray(block_m1(ring, k, raw)))
    except ValueError as exc:
        raise CommandError(str(exc))
    neg, zero, pos = eigen_signature(mat)
    rows = [
        (sector, k, nu, nu_kind, i, j, float(mat[i, j].real), float(mat[i, j].imag))
        for i in range(mat.shape[0])
        for j in range(mat.shape[1])
    ]
    payload = {
        "n": n, "mu": mu, "alpha": alpha, "sector": sector, "k": k,
        "nu": nu, "nu_kind": nu_kind, "nu_raw": raw,
        "matrix": [[[float(v.real), float(v.imag)] for v in row] for row in mat],
        "eigen_signature": {"negative": neg, "zero": zero, "positive": pos},
    }
    params = {"n": n, "mu": mu, "alpha": alpha, "sector": sector, "k": k,
              "nu": nu, "nu_kind": nu_kind}
    _emit(ns, "blocks", params, {"eigen_zero_tol": "64*eps*scale"},
          ("sector", "k", "nu", "nu_kind", "row", "col", "real", "imag"),
          rows, payload, started, config_fp)
    return EXIT_OK


def cmd_diagram(ns, config, config_fp, started) -> int:
    n = _opt(ns, config, "n", required=True, cast=int)
    k = _opt(ns, config, "k", required=True, cast=int)
    sector = _opt(ns, config, "sector", default="planar")
    samples = _opt(ns, config, "samples", default=601, cast=int)
    threads = _threads(ns, config)
    if sector not in ("planar", "spatial"):
        raise CommandError(f"--sector must be planar or spatial, got {sector!r}")
    if samples < 2:
        raise CommandError(f"--samples must be >= 2, got {samples}")
    if n < 3:
        raise CommandError(f"--n must be >= 3 for locus diagrams, got {n}")

    if sector == "planar":
        if not 1 <= k <= n - 1:
            raise CommandError(
                f"planar locus needs 1 <= k <= {n - 1} (the center block "
                f"k = {n} degenerates only on nu in {{0, 1}}), got {k}")
        branches = ("mu_zero_k1",) if k in (1, n - 1) else ("mu_minus", "mu_plus")
        nu_min = _opt(ns, config, "nu_min", default=-3.0, cast=float)
        nu_max = _opt(ns, config, "nu_max", default=3.0, cast=float)
        nu_kind = "normalized"
    else:
        if not 1 <= k <= n:
            raise CommandError(f"--k must lie in 1..{n}, got {k}")
        branches = (f"spatial_k{k}",)
        nu_min = _opt(ns, config, "nu_min", default=0.0, cast=float)
        nu_max = _opt(ns, config, "nu_max", default=4.0, cast=float)
        nu_kind = "raw"
    if not nu_max > nu_min:
        raise CommandError(f"empty frequency window [{nu_min}, {nu_max}]")
    grid = np.linspace(nu_min, nu_max, samples)

    def sample(branch):
        if sector == "spatial":
            s_k = float(n) if k == n else float(sum_table(n, 2.0).s[k])
            return [(float(x), float(x * x - s_k)) for x in grid]
        try:
            curve = spectral_curve(n, k, branch, grid)
        except ValueError as exc:
            raise CommandError(str(exc))
        return list(curve.samples)

    rows = []
    for branch, pts in _parallel_map(sample, branches, threads):
        rows.extend((branch, nu, mu, nu_kind) for nu, mu in pts)
    payload = {
        "n": n, "k": k, "sector": sector, "nu_kind": nu_kind,
        "window": [nu_min, nu_max], "samples_per_branch": samples,
        "branches": {
            branch: [[nu, mu] for b, nu, mu, _ in rows if b == branch]
            for branch in branches
        },
    }
    params = {"n": n, "k": k, "sector": sector, "nu_min": nu_min,
              "nu_max": nu_max, "samples": samples}
    _emit(ns, "diagram", params, {}, ("branch", "nu", "mu", "nu_kind"),
          rows, payload, started, config_fp)
    return EXIT_OK


def _point_rows(points, channel):
    rows = []
    for p in points:
        res = p.resonance
        rows.append((
            channel, p.sector, p.k, p.nu, p.nu_normalized, "raw", p.eta,
            p.multiplicity, p.isotropy.h, ";".join(p.isotropy.special),
            p.isotropy.reversal_partner,
            None if res is None else res.truly_spatial,
        ))
    return rows


_POINT_COLUMNS = ("channel", "sector", "k", "nu", "nu_normalized", "nu_kind",
                  "eta", "multiplicity", "isotropy_h", "special_tags",
                  "reversal_partner", "truly_spatial")


def cmd_bifurcate(ns, config, config_fp, started) -> int:
    n = _opt(ns, config, "n", required=True, cast=int)
    mu = _opt(ns, config, "mu", required=True, cast=float)
    alpha = _opt(ns, config, "alpha", default=2.0, cast=float)
    ring = _ring(n, mu, alpha)
    try:
        bset = enumerate_bifurcations(ring)
    except DegenerateOrbitError as exc:
        raise CommandError(f"degenerate orbit: {exc}")
    except ValueError as exc:
        raise CommandError(str(exc))
    rows = _point_rows(bset.points, "point") + _point_rows(bset.silent, "silent")
    payload = bset.to_dict()
    payload["nu_kind"] = {"nu": "raw", "nu_normalized": "normalized"}
    params = {"n": n, "mu": mu, "alpha": alpha}
    _emit(ns, "bifurcate", params,
          {"pencil_cluster_tol": 1e-6, "near_threshold_radius": 1e-6},
          _POINT_COLUMNS, rows, payload, started, config_fp)
    return EXIT_OK


def cmd_symmetry(ns, config, config_fp, started) -> int:
    n = _opt(ns, config, "n", required=True, cast=int)
    k = _opt(ns, config, "k", required=True, cast=int)
    sector = _opt(ns, config, "sector", default="planar")
    try:
        desc = describe(n, k, sector)
    except ValueError as exc:
        raise CommandError(str(exc))
    rows = [(
        n, k, sector, desc.h, desc.n_bar, desc.k_bar, desc.k_prime,
        desc.central_body, desc.reversal_partner, ";".join(desc.special),
        desc.ring_relation["text"],
    )]
    params = {"n": n, "k": k, "sector": sector}
    _emit(ns, "symmetry", params, {},
          ("n", "k", "sector", "h", "n_bar", "k_bar", "k_prime",
           "central_body", "reversal_partner", "special_tags", "ring_relation"),
          rows, desc.to_dict(), started, config_fp)
    return EXIT_OK


def cmd_resonances(ns, config, config_fp, started) -> int:
    n = _opt(ns, config, "n", required=True, cast=int)
    k = _opt(ns, config, "k", required=True, cast=int)
    pair = _opt(ns, config, "pair", cast=int)

    if pair is not None:
        # The certified harmonic bound exists for representative pairs
        # k <= pair <= n/2; outside that range (e.g. the reversal partner
        # pair = n - k) the caller must cap the harmonics explicitly.
        try:
            bound = subharmonic_bound(n, k, pair)
        except ValueError:
            bound = None
        l_max = _opt(ns, config, "l_max", default=bound, cast=int)
        if l_max is None:
            raise CommandError(
                f"no certified harmonic bound for the pair ({k}, {pair}); "
                f"pass --l-max explicitly")
        try:
            cands = spatial_spatial_resonances(n, k, pair, range(1, l_max + 1))
        except ValueError as exc:
            raise CommandError(str(exc))
        rows = [(n, c["k1"], c["k2"], c["l"], c["mu"], c["note"]) for c in cands]
        payload = {"n": n, "k1": k, "k2": pair, "subharmonic_bound": bound,
                   "l_max": l_max, "candidates": cands,
                   "nu_kind": "not applicable (the lock nu_k2 = l nu_k1 holds "
                              "in either convention; rows carry masses only)"}
        params = {"n": n, "k": k, "pair": pair, "l_max": l_max}
        _emit(ns, "resonances", params, {},
              ("n", "k1", "k2", "l", "mu", "note"),
              rows, payload, started, config_fp)
        return EXIT_OK

    mu = _opt(ns, config, "mu", required=True, cast=float)
    alpha = _opt(ns, config, "alpha", default=2.0, cast=float)
    ring = _ring(n, mu, alpha)
    try:
        report = is_truly_spatial(ring, k)
    except ValueError as exc:
        raise CommandError(str(exc))
    rows = [
        (n, k, mu, report.nu_k, "normalized", l, abs_det, verdict,
         report.truly_spatial, report.bound_l_max)
        for l, abs_det, verdict in report.checked_modes
    ]
    payload = report.to_dict()
    payload["nu_kind"] = "normalized"
    params = {"n": n, "mu": mu, "alpha": alpha, "k": k}
    _emit(ns, "resonances", params,
          {"certification_margin": report.certification_margin,
           "exclusion_radius": report.exclusion_radius},
          ("n", "k", "mu", "nu_k", "nu_kind", "l", "abs_det", "verdict",
           "truly_spatial", "bound_l_max"),
          rows, payload, started, config_fp)
    return EXIT_OK


def cmd_stability(ns, config, config_fp, started) -> int:
    n = _opt(ns, config, "n", required=True, cast=int)
    star = bool(_opt(ns, config, "star", default=False))
    mu_min = _opt(ns, config, "mu_min", cast=float)
    mu_max = _opt(ns, config, "mu_max", cast=float)

    if star:
        try:
            report = critical_mass_star(n)
        except ValueError as exc:
            raise CommandError(str(exc))
        rows = [(n, k_lo, (n - k_lo) % n or n, thr if math.isfinite(thr) else None)
                for k_lo, thr in report.per_pair]
        payload = report.to_dict()
        _emit(ns, "stability", {"n": n, "star": True}, {},
              ("n", "k_low", "k_high", "threshold_mass"),
              rows, payload, started, config_fp)
        return EXIT_OK

    if mu_min is not None or mu_max is not None:
        if mu_min is None or mu_max is None:
            raise CommandError("--mu-min and --mu-max must be given together")
        if not mu_max > mu_min:
            raise CommandError(f"empty mass window [{mu_min}, {mu_max}]")
        samples = _opt(ns, config, "samples", default=25, cast=int)
        if samples < 2:
            raise CommandError(f"--samples must be >= 2, got {samples}")
        threads = _threads(ns, config)
        grid = np.linspace(mu_min, mu_max, samples)

        def verdict_at(mu):
            return spectral_stability(_ring(n, float(mu), 2.0))

        rows, entries = [], []
        for mu, v in _parallel_map(verdict_at, [float(m) for m in grid], threads):
            rows.append((n, mu, v.planar_real_roots, v.planar_required,
                         v.spatial_real_roots, v.spatial_required,
                         v.spectrally_stable))
            entries.append(v.to_dict())
        payload = {"n": n, "mu_min": mu_min, "mu_max": mu_max,
                   "samples": samples, "verdicts": entries}
        params = {"n": n, "mu_min": mu_min, "mu_max": mu_max, "samples": samples}
        _emit(ns, "stability", params, {"real_root_imag_rtol": 1e-5},
              ("n", "mu", "planar_real_roots", "planar_required",
               "spatial_real_roots", "spatial_required", "spectrally_stable"),
              rows, payload, started, config_fp)
        return EXIT_OK

    mu = _opt(ns, config, "mu", required=True, cast=float)
    try:
        verdict = spectral_stability(_ring(n, mu, 2.0))
    except ValueError as exc:
        raise CommandError(str(exc))
    m_star = verdict.m_star if math.isfinite(verdict.m_star) else None
    rows = [(n, mu, verdict.planar_real_roots, verdict.planar_required,
             verdict.spatial_real_roots, verdict.spatial_required,
             verdict.spectrally_stable, m_star, verdict.dominant_k,
             ";".join(verdict.flags))]
    _emit(ns, "stability", {"n": n, "mu": mu},
          {"real_root_imag_rtol": 1e-5, "near_threshold_rtol": 1e-6},
          ("n", "mu", "planar_real_roots", "planar_required",
           "spatial_real_roots", "spatial_required", "spectrally_stable",
           "m_star", "dominant_k", "flags"),
          rows, verdict.to_dict(), started, config_fp)
    return EXIT_OK


def cmd_charges(ns, config, config_fp, started) -> int:
    n = _opt(ns, config, "n", required=True, cast=int)
    q = _opt(ns, config, "q", required=True, cast=float)
    try:
        cfg = ChargeConfig(n, q)
        cset = charge_bifurcations(cfg)
    except ValueError as exc:
        raise CommandError(str(exc))
    rows = _point_rows(cset.points, "point") + _point_rows(cset.silent, "silent")
    payload = cset.to_dict()
    payload["nu_kind"] = {"nu": "raw", "nu_normalized": "normalized"}
    _emit(ns, "charges", {"n": n, "q": q}, {"pencil_cluster_tol": 1e-6},
          _POINT_COLUMNS, rows, payload, started, config_fp)
    return EXIT_OK


# --- verify -----------------------------------------------------------------


def _suite_sums(n, mu, alpha):
    cases = []
    for a in (1.0, float(alpha), 3.0):
        closed = verify_recurrences(n, a).max_residual
        brute = recurrence_bruteforce(n, a)
        cross = max(abs(s_sum(n, a, k) - raw_s(n, a, k)) for k in range(1, n + 1))
        cases.append((f"sums n={n} alpha={a}", max(closed, brute, cross)))
    return cases


def _suite_hessian(n, mu, alpha):
    ring = RingConfig(n, mu, alpha)
    residual = fd_hessian_check(ring.to_general())
    return [(f"hessian ring n={n} mu={mu} alpha={alpha}", residual)]


def _suite_blocks(n, mu, alpha):
    ring = RingConfig(n, mu, alpha)
    cases = []
    for nu in (0.0, 0.3, 1.0, 2.7):
        report = verify_full_diagonalization(ring, nu)
        cases.append((f"blocks n={n} mu={mu} nu={nu}", report.max_residual))
    return cases


def _suite_crossings(n, mu, alpha):
    ring = RingConfig(n, mu, alpha)
    s = ring.s_array()
    expected = sorted({math.sqrt(mu + s[k]) for k in range(1, n)}
                      | {math.sqrt(mu + n)})
    hi = expected[-1] + 0.75
    found = [c.nu for c in dense_crossings(ring.to_general(), (1e-3, hi),
                                           sector="spatial")]
    if not found:
        return [(f"crossings n={n} mu={mu}", math.inf)]
    residual = max(
        max(min(abs(e - f) for f in found) for e in expected),
        max(min(abs(e - f) for e in expected) for f in found),
    )
    return [(f"crossings n={n} mu={mu}", residual)]


_SUITES = {
    "sums": _suite_sums,
    "hessian": _suite_hessian,
    "blocks": _suite_blocks,
    "crossings": _suite_crossings,
}


def cmd_verify(ns, config, config_fp, started) -> int:
    suite = _opt(ns, config, "suite", default="all")
    n = _opt(ns, config, "n", default=6, cast=int)
    mu = _opt(ns, config, "mu", default=2.0, cast=float)
    alpha = _opt(ns, config, "alpha", default=2.0, cast=float)
    names = tuple(_SUITES) if suite == "all" else (suite,)
    unknown = [s for s in names if s not in _SUITES]
    if unknown:
        raise CommandError(
            f"--suite must be all or one of {'|'.join(_SUITES)}, got {suite!r}")

    rows, suites_payload, all_passed = [], [], True
    for name in names:
        tol = VERIFY_TOL[name]
        try:
            cases = _SUITES[name](n, mu, alpha)
        except ValueError as exc:
            raise CommandError(f"suite {name}: {exc}")
        case_entries = []
        for fingerprint, residual in cases:
            passed = residual <= tol
            all_passed &= passed
            rows.append((name, fingerprint, residual, tol, passed))
            case_entries.append({"fingerprint": fingerprint,
                                 "max_residual": residual, "passed": passed})
        suites_payload.append({
            "suite": name,
            "tolerance": tol,
            "passed": all(c["passed"] for c in case_entries),
            "max_residual": max(c["max_residual"] for c in case_entries),
            "cases": case_entries,
        })
    payload = {"n": n, "mu": mu, "alpha": alpha, "passed": all_passed,
               "suites": suites_payload}
    params = {"suite": suite, "n": n, "mu": mu, "alpha": alpha}
    _emit(ns, "verify", params, {k: VERIFY_TOL[k] for k in names},
          ("suite", "case", "max_residual", "tolerance", "passed"),
          rows, payload, started, config_fp)
    if not all_passed:
        failing = [s["suite"] for s in suites_payload if not s["passed"]]
        worst = max(s["max_residual"] for s in suites_payload if not s["passed"])
        print(f"ringbif: verify: verification-failure: suites={','.join(failing)} "
              f"max_residual={worst:.3e}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser assembly


def _add_io_flags(p):
    p.add_argument("--out", metavar="PATH",
                   help="output file (default: stdout); the literal values "
                        "'csv' and 'json' select that format on stdout; "
                        "relative paths resolve under $RINGBIF_OUTDIR when set")
    p.add_argument("--format", choices=("csv", "json"),
                   help="artifact format (default: csv)")
    p.add_argument("--config", metavar="FILE",
                   help="JSON file mirroring the long flags (dashes become "
                        "underscores); explicit flags win")
    p.add_argument("--threads", type=int, metavar="T",
                   help="worker threads for sweeps (default: available "
                        "parallelism); results are merged by sorted keys, so "
                        "the thread count never changes the output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ringbif",
        description="Bifurcation structure, symmetry types, resonances and "
                    "spectral stability of the regular n-gon relative "
                    "equilibrium with a central mass, plus the charged-ring "
                    "analogue.",
        epilog="Frequency conventions: nu_kind=raw means the physical "
               "frequency of the linearized equations; nu_kind=normalized "
               "means nu/sqrt(omega) with omega = mu + s_1. Every subcommand "
               "help lists its columns.",
    )
    parser.add_argument("--version", action="version",
                        version=f"ringbif {__version__}")
    sub = parser.add_subparsers(dest="cmd", metavar="subcommand", required=True)

    fmt = argparse.RawDescriptionHelpFormatter

    p = sub.add_parser(
        "sums", formatter_class=fmt,
        help="trigonometric lattice sums s_k, sbar_k",
        description="Tabulate the ring's trigonometric sums for one (n, alpha).",
        epilog="Columns:\n"
               "  k      representation index, 0..n (dimensionless)\n"
               "  s      lattice sum s_k (units: inverse cube of ring radius "
               "at alpha=2; dimensionless table)\n"
               "  s_bar  companion sum sbar_k, defined for k = 0..n-1 "
               "(blank at k = n)\n")
    p.add_argument("--n", type=int, help="number of ring bodies (>= 2)")
    p.add_argument("--alpha", type=float, help="force-law exponent (default 2)")
    _add_io_flags(p)
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser(
        "blocks", formatter_class=fmt,
        help="one symmetry-adapted block of the linearization",
        description="Evaluate the planar (2x2 or 3x3) or spatial (1x1 or 2x2) "
                    "block of representation k at one frequency.",
        epilog="Columns:\n"
               "  sector   planar | spatial\n"
               "  k        representation index, 1..n\n"
               "  nu       evaluation frequency as given (see nu_kind)\n"
               "  nu_kind  raw | normalized; normalized means nu/sqrt(omega)\n"
               "  row,col  0-based matrix indices\n"
               "  real,imag  entry of the block (Hessian units)\n")
    p.add_argument("--n", type=int, help="number of ring bodies")
    p.add_argument("--mu", type=float, help="central mass")
    p.add_argument("--alpha", type=float, help="force-law exponent (default 2)")
    p.add_argument("--k", type=int, help="representation index, 1..n")
    p.add_argument("--sector", choices=("planar", "spatial"),
                   help="which sector's block (default planar)")
    p.add_argument("--nu", type=float, help="evaluation frequency")
    p.add_argument("--nu-kind", choices=("raw", "normalized"), dest="nu_kind",
                   help="convention of --nu (default raw)")
    _add_io_flags(p)
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser(
        "diagram", formatter_class=fmt,
        help="zero locus of one block's determinant in the (nu, mu) plane",
        description="Sample the curve det = 0 of representation k. Planar "
                    "interior k yields the two branches mu_minus/mu_plus "
                    "(asymptote mu -> -s_1 for large |nu|); k in {1, n-1} "
                    "yields the single positive-mass curve mu_zero_k1 "
                    "(blows up at nu in {0, 1} for n >= 7). Spatial k is the "
                    "parabola mu = nu^2 - s_k.",
        epilog="Columns:\n"
               "  branch   mu_minus | mu_plus | mu_zero_k1 | spatial_k<k>\n"
               "  nu       frequency (see nu_kind; planar loci live in the "
               "normalized convention)\n"
               "  mu       central mass on the locus (mass units; ring "
               "bodies have unit mass)\n"
               "  nu_kind  raw | normalized, constant per diagram\n")
    p.add_argument("--n", type=int, help="number of ring bodies (>= 3)")
    p.add_argument("--k", type=int, help="representation index")
    p.add_argument("--sector", choices=("planar", "spatial"),
                   help="sector of the locus (default planar)")
    p.add_argument("--nu-min", type=float, dest="nu_min",
                   help="window start (planar default -3, spatial 0)")
    p.add_argument("--nu-max", type=float, dest="nu_max",
                   help="window end (planar default 3, spatial 4)")
    p.add_argument("--samples", type=int,
                   help="grid points per branch (default 601)")
    _add_io_flags(p)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser(
        "bifurcate", formatter_class=fmt,
        help="certified bifurcation points of one (n, mu)",
        description="Enumerate every positive-frequency crossing of the "
                    "ring's blocks with its jump index eta and symmetry "
                    "type. eta = 0 kernel touches land in the silent channel.",
        epilog="Columns:\n"
               "  channel        point (eta != 0) | silent (eta = 0)\n"
               "  sector         planar | spatial\n"
               "  k              representation index, 1..n\n"
               "  nu             crossing frequency, raw convention\n"
               "  nu_normalized  the same crossing as nu/sqrt(omega)\n"
               "  nu_kind        convention of the nu column (always raw)\n"
               "  eta            Morse-index jump (+1/-1; 0 in silent channel)\n"
               "  multiplicity   kernel multiplicity of the crossing\n"
               "  isotropy_h     gcd(n, k); order of the surviving rotation "
               "group\n"
               "  special_tags   semicolon-joined symmetry tags\n"
               "  reversal_partner  time-reversed partner representation n-k\n"
               "  truly_spatial  spatial branches: non-planarity certificate "
               "(blank for planar)\n")
    p.add_argument("--n", type=int, help="number of ring bodies")
    p.add_argument("--mu", type=float, help="central mass")
    p.add_argument("--alpha", type=float, help="force-law exponent (default 2)")
    _add_io_flags(p)
    p.set_defaults(func=cmd_bifurcate)

    p = sub.add_parser(
        "symmetry", formatter_class=fmt,
        help="symmetry type of one representation",
        description="Describe the isotropy of branches bifurcating in "
                    "representation k: factor structure (h, n_bar, k_bar), "
                    "central-body behavior, and special orbit tags.",
        epilog="Columns:\n"
               "  n, k, sector   as requested\n"
               "  h              gcd(n, k)\n"
               "  n_bar, k_bar   n/h, k/h (reduced ring and winding numbers)\n"
               "  k_prime        modular inverse of k mod n when h = 1, else "
               "blank\n"
               "  central_body   fixed_at_center | rotating_phase(k')\n"
               "  reversal_partner  n - k (mod n, in 1..n)\n"
               "  special_tags   semicolon-joined tags (hip_hop, "
               "pulsing_polygons, ...)\n"
               "  ring_relation  orbit law of the ring bodies (text)\n")
    p.add_argument("--n", type=int, help="number of ring bodies")
    p.add_argument("--k", type=int, help="representation index, 1..n")
    p.add_argument("--sector", choices=("planar", "spatial"),
                   help="sector (default planar)")
    _add_io_flags(p)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser(
        "resonances", formatter_class=fmt,
        help="non-planarity certificates and resonant masses",
        description="Without --pair: certify that the spatial branch of "
                    "representation k at mass mu is truly spatial (no planar "
                    "block is singular at any harmonic of its frequency). "
                    "With --pair K2: tabulate candidate masses where the "
                    "spatial frequencies of k and K2 lock as nu_K2 = l nu_k, "
                    "up to the subharmonic bound.",
        epilog="Certificate columns:\n"
               "  n, k, mu   as requested\n"
               "  nu_k       spatial crossing sqrt((mu + s_k)/omega), "
               "normalized convention (it feeds the normalized planar "
               "blocks at harmonics 2 l nu_k)\n"
               "  nu_kind    always normalized\n"
               "  l          checked harmonic\n"
               "  abs_det    |det| of the planar block at frequency 2 l nu_k\n"
               "  verdict    invertible | marginal | singular\n"
               "  truly_spatial, bound_l_max   certificate summary\n"
               "Pair columns:\n"
               "  n, k1, k2, l  resonance indices\n"
               "  mu            resonant central mass (blank when l = 1 is "
               "structurally excluded)\n"
               "  note          no_1_1_resonance | reversal_duality | blank\n")
    p.add_argument("--n", type=int, help="number of ring bodies")
    p.add_argument("--k", type=int, help="representation index")
    p.add_argument("--mu", type=float, help="central mass (certificate mode)")
    p.add_argument("--alpha", type=float, help="force-law exponent (default 2)")
    p.add_argument("--pair", type=int, metavar="K2",
                   help="second representation: tabulate nu_K2 = l nu_k masses")
    p.add_argument("--l-max", type=int, dest="l_max",
                   help="largest harmonic to tabulate (default: the certified "
                        "bound floor(sqrt(s_K2/s_k)), available for "
                        "k <= K2 <= n/2; required otherwise)")
    _add_io_flags(p)
    p.set_defaults(func=cmd_resonances)

    p = sub.add_parser(
        "stability", formatter_class=fmt,
        help="spectral stability verdicts and thresholds",
        description="Point mode (--mu): verdict at one mass by counting real "
                    "pencil roots (4(n+1) planar and 2(n+1) spatial required). "
                    "Sweep mode (--mu-min/--mu-max/--samples): verdicts on a "
                    "mass grid. Star mode (--star): the stability threshold "
                    "m_star(n) and its per-pair table.",
        epilog="Point/sweep columns:\n"
               "  n, mu                     as requested\n"
               "  planar_real_roots         real roots of the planar pencil, "
               "with multiplicity\n"
               "  planar_required           4(n+1)\n"
               "  spatial_real_roots        real roots of the spatial pencil\n"
               "  spatial_required          2(n+1)\n"
               "  spectrally_stable         both counts complete\n"
               "  m_star, dominant_k, flags  threshold summary (point mode)\n"
               "Star columns:\n"
               "  n, k_low, k_high          representation pair (k, n-k)\n"
               "  threshold_mass            mass above which the pair's "
               "planar roots are all real (blank: never)\n")
    p.add_argument("--n", type=int, help="number of ring bodies")
    p.add_argument("--mu", type=float, help="central mass (point mode)")
    p.add_argument("--mu-min", type=float, dest="mu_min", help="sweep start")
    p.add_argument("--mu-max", type=float, dest="mu_max", help="sweep end")
    p.add_argument("--samples", type=int, help="sweep grid size (default 25)")
    p.add_argument("--star", action="store_true", default=None,
                   help="emit the m_star(n) threshold table instead")
    _add_io_flags(p)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser(
        "charges", formatter_class=fmt,
        help="bifurcations of the charged ring around a fixed nucleus",
        description="Enumerate the crossings of the n-charge analogue: n unit "
                    "charges on a ring about a fixed nucleus of charge q > "
                    "s_1. Planar blocks cross exactly once per "
                    "representation; spatial crossings sit at sqrt(q - s_k).",
        epilog="Columns: identical to `bifurcate` (channel, sector, k, nu, "
               "nu_normalized, nu_kind, eta, multiplicity, isotropy_h, "
               "special_tags, reversal_partner, truly_spatial — the last is "
               "blank here).\nJSON adds per-k uniqueness counts for the "
               "planar crossings.\n")
    p.add_argument("--n", type=int, help="number of ring charges (>= 2)")
    p.add_argument("--q", type=float, help="nucleus charge (must exceed s_1)")
    _add_io_flags(p)
    p.set_defaults(func=cmd_charges)

    p = sub.add_parser(
        "verify", formatter_class=fmt,
        help="run the self-verification suites (exit 2 on failure)",
        description="Replay the oracle checks: recurrence identities of the "
                    "sums (closed form vs brute force), finite-difference "
                    "gradient/Hessian residuals, block-diagonalization "
                    "congruence, and dense-pencil crossing positions against "
                    "the closed forms.",
        epilog="Columns:\n"
               "  suite         sums | hessian | blocks | crossings\n"
               "  case          fingerprint of the checked instance\n"
               "  max_residual  worst absolute residual of the case\n"
               "  tolerance     pass threshold for the suite\n"
               "  passed        True | False\n"
               "Tolerances: sums 1e-9, hessian 1e-6, blocks 1e-10, "
               "crossings 1e-7.\n")
    p.add_argument("--suite", help="all | sums | hessian | blocks | crossings "
                                   "(default all)")
    p.add_argument("--n", type=int, help="ring size for the checks (default 6)")
    p.add_argument("--mu", type=float, help="central mass (default 2)")
    p.add_argument("--alpha", type=float, help="force-law exponent (default 2)")
    _add_io_flags(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    cmd = "cli"
    try:
        parser = build_parser()
        ns = parser.parse_args(argv)
        cmd = ns.cmd
        config, config_fp = _load_config(ns)
        # --out / --format / --threads are read by the shared emission
        # helpers rather than through _opt, so merge them here once
        for name in ("out", "format", "threads"):
            if getattr(ns, name, None) is None and name in config:
                setattr(ns, name, config[name])
        started = time.perf_counter()
        return ns.func(ns, config, config_fp, started)
    except CommandError as exc:
        detail = " ".join(str(exc).split())
        print(f"ringbif: {cmd}: domain-error: {detail}", file=sys.stderr)
        return EXIT_DOMAIN
    except DegenerateOrbitError as exc:
        detail = " ".join(str(exc).split())
        print(f"ringbif: {cmd}: degenerate-orbit: {detail}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        detail = " ".join(str(exc).split())
        print(f"ringbif: {cmd}: domain-error: {detail}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
