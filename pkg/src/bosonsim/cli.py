"""Command-line driver: run experiments from JSON configs, emit CSV + manifest.

Every run writes its data files plus a manifest.json holding the fully
resolved config, package version, seed and wall time; feeding a manifest
back as the config reproduces the same data files byte for byte (the one
exception is the bench command, whose measured timings are inherently
machine- and run-dependent).

Exit codes: 0 success, 2 config parse failure, 3 config validation failure,
4 enumeration guard exceeded, 5 runtime numeric failure.
"""

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from . import __version__
from .interferometers import (
    Interferometer,
    beam_splitter,
    compose,
    fourier,
    hadamard,
    interferometer_from_dict,
    interferometer_to_dict,
    phase_shift,
    rand_haar,
)
from .model import (
    Bosonic,
    Distinguishable,
    Event,
    FockDetection,
    GuardError,
    Input,
    ModeOccupation,
    NumericError,
    OneParameterInterpolation,
    UserGram,
    compute_probability_fock,
    event_to_json,
    first_modes,
    full_distribution,
)
from .optimize import (
    bunching_objective,
    entry_modulus_objective,
    riemannian_ascent,
    trace_overlap_objective,
    write_trace_csv,
)
from .partitions import Partition, Subset, partition_counts_all, write_partition_csv
from .permanents import permanent_ryser
from .samplers import (
    SamplerConfig,
    noisy_distribution,
    read_samples_csv,
    sample_batch,
    write_samples_csv,
)
from .validation import (
    bayesian_confidence,
    fock_hypothesis,
    run_validation_trials,
    table_sampler,
    write_density_csv,
    write_traces_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INVALID = 3
EXIT_GUARD = 4
EXIT_NUMERIC = 5

OUTPUT_ENV_VAR = "BOSONSIM_OUT"

_COMMANDS = ("hom", "prob", "sample", "noisy-dist", "partition", "validate",
             "optimize", "bench")
_MODEL_NAMES = ("bosonic", "distinguishable", "interpolation", "gram")
_INTERF_KINDS = ("haar", "fourier", "hadamard", "inline", "circuit")
_OBJECTIVES = ("trace-overlap", "entry-modulus", "full-bunching")


# --- config validation --------------------------------------------------------


def _want_int(cfg, key, errors, default=None, minimum=None):
    v = cfg.get(key, default)
    if v is None:
        errors.append(f"{key}: required field is missing")
        return None
    if isinstance(v, bool) or not isinstance(v, int):
        errors.append(f"{key}: must be an integer")
        return None
    if minimum is not None and v < minimum:
        errors.append(f"{key}: must be >= {minimum}")
        return None
    cfg[key] = v
    return v


def _want_number(cfg, key, errors, default=None, lo=None, hi=None):
    v = cfg.get(key, default)
    if v is None:
        errors.append(f"{key}: required field is missing")
        return None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        errors.append(f"{key}: must be a number")
        return None
    v = float(v)
    if (lo is not None and v < lo) or (hi is not None and v > hi):
        errors.append(f"{key}: must be in [{lo}, {hi}]")
        return None
    cfg[key] = v
    return v


def _check_model(doc, path, errors, n=None, allow_gram=True):
    if not isinstance(doc, dict) or "name" not in doc:
        errors.append(f"{path}: must be an object with a 'name' field")
        return
    name = doc["name"]
    if name not in _MODEL_NAMES:
        errors.append(f"{path}.name: unknown model {name!r}")
        return
    if name == "interpolation":
        x = doc.get("x")
        if not isinstance(x, (int, float)) or isinstance(x, bool) or not 0.0 <= x <= 1.0:
            errors.append(f"{path}.x: must be a number in [0, 1]")
    if name == "gram":
        if not allow_gram:
            errors.append(f"{path}.name: gram models are not supported by this command")
        elif "re" not in doc or "im" not in doc:
            errors.append(f"{path}: gram model needs 're' and 'im' matrices")
        elif n is not None and len(doc["re"]) != n:
            errors.append(f"{path}: gram dimension must equal the photon count {n}")


def _check_interferometer(doc, m, path, errors):
    if not isinstance(doc, dict) or "kind" not in doc:
        errors.append(f"{path}: must be an object with a 'kind' field")
        return
    kind = doc["kind"]
    if kind not in _INTERF_KINDS:
        errors.append(f"{path}.kind: unknown interferometer kind {kind!r}")
        return
    if kind == "hadamard" and m is not None and (m < 1 or m & (m - 1)):
        errors.append(f"{path}: hadamard needs a power-of-two mode count, got {m}")
    if kind == "inline":
        if "re" not in doc or "im" not in doc:
            errors.append(f"{path}: inline interferometer needs 're' and 'im'")
        elif m is not None and len(doc["re"]) != m:
            errors.append(f"{path}: inline matrix must be {m} x {m}")
    if kind == "circuit":
        elements = doc.get("elements")
        if not isinstance(elements, list):
            errors.append(f"{path}.elements: must be a list of circuit elements")
            return
        for i, el in enumerate(elements):
            epath = f"{path}.elements[{i}]"
            if not isinstance(el, dict) or el.get("kind") not in ("beamsplitter", "phaseshift"):
                errors.append(f"{epath}: kind must be beamsplitter or phaseshift")
                continue
            if el["kind"] == "beamsplitter":
                t = el.get("t")
                if not isinstance(t, (int, float)) or not 0.0 <= t <= 1.0:
                    errors.append(f"{epath}.t: must be a number in [0, 1]")
                modes = el.get("modes")
                if (not isinstance(modes, list) or len(modes) != 2
                        or modes[0] == modes[1]
                        or (m is not None and any(not 0 <= q < m for q in modes))):
                    errors.append(f"{epath}.modes: must be two distinct modes below m")
            else:
                if not isinstance(el.get("phi"), (int, float)):
                    errors.append(f"{epath}.phi: must be a number")
                mode = el.get("mode", 0)
                if m is not None and not 0 <= mode < m:
                    errors.append(f"{epath}.mode: out of range")


def _check_subsets(subsets, m, path, errors):
    if not isinstance(subsets, list) or not subsets:
        errors.append(f"{path}: must be a nonempty list of mode-index lists")
        return
    seen = set()
    for i, sub in enumerate(subsets):
        if not isinstance(sub, list) or not sub:
            errors.append(f"{path}[{i}]: must be a nonempty list of mode indices")
            continue
        for q in sub:
            if not isinstance(q, int) or (m is not None and not 0 <= q < m):
                errors.append(f"{path}[{i}]: mode index {q!r} out of range")
                break
        overlap = seen & set(sub)
        if overlap:
            errors.append(f"{path}[{i}]: subsets must be disjoint (repeated {sorted(overlap)})")
        seen |= set(sub)


def validate_config_doc(doc):
    """Semantic validation of a parsed config; returns (config, error list)."""
    if not isinstance(doc, dict):
        return None, ["config root must be a JSON object"]
    if "config" in doc and "version" in doc:  # a manifest fed back as config
        doc = doc["config"]
    cfg = dict(doc)
    errors = []
    command = cfg.get("command")
    if command not in _COMMANDS:
        return None, [f"command: must be one of {', '.join(_COMMANDS)} (got {command!r})"]

    _want_int(cfg, "seed", errors, default=0)
    _want_int(cfg, "threads", errors, default=1, minimum=1)
    out = cfg.get("out", os.environ.get(OUTPUT_ENV_VAR, "."))
    if not isinstance(out, str):
        errors.append("out: must be a path string")
    cfg["out"] = out

    needs_nm = command in ("prob", "sample", "noisy-dist", "partition", "validate")
    if needs_nm:
        n = _want_int(cfg, "n", errors, minimum=0)
        m = _want_int(cfg, "m", errors, minimum=1)
        if n is not None and m is not None and n > m:
            errors.append("n: n exceeds m")
        cfg.setdefault("interferometer", {"kind": "haar", "seed": cfg.get("seed", 0)})
        _check_interferometer(cfg["interferometer"], m, "interferometer", errors)

    if command == "hom":
        _want_number(cfg, "delta_omega", errors, default=1.0)
        _want_number(cfg, "tau_min", errors, default=-4.0)
        _want_number(cfg, "tau_max", errors, default=4.0)
        _want_number(cfg, "tau_step", errors, default=0.01)
        if ("tau_min" in cfg and "tau_max" in cfg
                and isinstance(cfg.get("tau_step"), float)
                and (cfg["tau_step"] <= 0 or cfg["tau_min"] >= cfg["tau_max"])):
            errors.append("tau_step: need tau_min < tau_max and tau_step > 0")

    if command in ("prob", "sample", "noisy-dist", "partition", "validate"):
        cfg.setdefault("model", {"name": "bosonic"})
        allow_gram = command in ("prob", "partition")
        _check_model(cfg["model"], "model", errors, n=cfg.get("n"), allow_gram=allow_gram)
        _want_number(cfg, "loss", errors, default=1.0, lo=0.0, hi=1.0)

    if command == "prob":
        meas = cfg.get("measurement")
        if not isinstance(meas, dict) or meas.get("kind") != "fock" or "out" not in meas:
            errors.append("measurement: prob needs {kind: 'fock', out: [...]} ")
        else:
            out_counts = meas["out"]
            if (not isinstance(out_counts, list)
                    or any(not isinstance(c, int) or c < 0 for c in out_counts)):
                errors.append("measurement.out: must be a list of nonnegative counts")
            elif cfg.get("m") is not None and len(out_counts) != cfg["m"]:
                errors.append("measurement.out: length must equal m")

    if command == "sample":
        _want_int(cfg, "samples", errors, default=1000, minimum=1)
        meas = cfg.setdefault("measurement", {"kind": "fock-sample"})
        if not isinstance(meas, dict) or meas.get("kind") not in ("fock-sample", "dark-count"):
            errors.append("measurement.kind: must be fock-sample or dark-count")
        elif meas["kind"] == "dark-count":
            p = meas.get("p")
            if not isinstance(p, (int, float)) or isinstance(p, bool) or not 0.0 <= p <= 1.0:
                errors.append("measurement.p: invalid probability")

    if command == "noisy-dist":
        _want_int(cfg, "samples", errors, default=100_000, minimum=1)
        sampler = cfg.setdefault("sampler", {})
        if not isinstance(sampler, dict):
            errors.append("sampler: must be an object")
        else:
            sampler.setdefault("burn_in", 100)
            sampler.setdefault("thinning", 10)
            sampler.setdefault("error", 1e-4)
            sampler.setdefault("failure_probability", 1e-4)
            if sampler["burn_in"] < 0 or sampler["thinning"] < 1:
                errors.append("sampler: need burn_in >= 0 and thinning >= 1")
            for key in ("error", "failure_probability"):
                v = sampler[key]
                if not isinstance(v, (int, float)) or not 0.0 < v < 1.0:
                    errors.append(f"sampler.{key}: must be in (0, 1)")

    if command == "partition":
        meas = cfg.get("measurement")
        if not isinstance(meas, dict) or meas.get("kind") != "partition":
            errors.append("measurement: partition needs {kind: 'partition', subsets: [...]}")
        else:
            _check_subsets(meas.get("subsets"), cfg.get("m"), "measurement.subsets", errors)

    if command == "validate":
        _want_int(cfg, "n_trials", errors, default=100, minimum=1)
        _want_int(cfg, "n_samples", errors, default=300, minimum=1)
        _want_number(cfg, "prior", errors, default=0.5)
        if isinstance(cfg.get("prior"), float) and not 0.0 < cfg["prior"] < 1.0:
            errors.append("prior: must be strictly inside (0, 1)")
        for key in ("h0", "ha"):
            if key not in cfg:
                errors.append(f"{key}: required hypothesis model is missing")
            else:
                _check_model(cfg[key], key, errors, n=cfg.get("n"))
        if "samples_file" in cfg:
            if not isinstance(cfg["samples_file"], str):
                errors.append("samples_file: must be a path string")
        else:
            cfg.setdefault("truth", cfg.get("h0"))
            if cfg["truth"] is not None:
                _check_model(cfg["truth"], "truth", errors, n=cfg.get("n"))

    if command == "optimize":
        m = _want_int(cfg, "m", errors, minimum=1)
        _want_number(cfg, "step", errors, default=0.1)
        _want_number(cfg, "tol", errors, default=1e-8)
        _want_int(cfg, "max_iter", errors, default=500, minimum=1)
        if isinstance(cfg.get("step"), float) and cfg["step"] <= 0:
            errors.append("step: must be positive")
        if isinstance(cfg.get("tol"), float) and cfg["tol"] <= 0:
            errors.append("tol: must be positive")
        obj = cfg.setdefault("objective", {"name": "trace-overlap"})
        if not isinstance(obj, dict) or obj.get("name") not in _OBJECTIVES:
            errors.append(f"objective.name: must be one of {', '.join(_OBJECTIVES)}")
        elif obj["name"] == "full-bunching":
            nb = obj.get("n")
            if not isinstance(nb, int) or nb < 1 or (m is not None and nb > m):
                errors.append("objective.n: must be an integer in [1, m]")
            if "subset" in obj:
                _check_subsets([obj["subset"]], m, "objective.subset", errors)
        elif obj["name"] == "trace-overlap" and "target" in obj:
            _check_interferometer(obj["target"], m, "objective.target", errors)

    if command == "bench":
        n_min = _want_int(cfg, "n_min", errors, default=2, minimum=1)
        n_max = _want_int(cfg, "n_max", errors, default=20, minimum=1)
        _want_int(cfg, "reps", errors, default=3, minimum=1)
        if n_min is not None and n_max is not None and n_min > n_max:
            errors.append("n_min: must not exceed n_max")

    if errors:
        return None, errors
    return cfg, []


def validate_config(text):
    """Parse raw JSON text and validate it; all errors are returned, not raised."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        return None, [f"config is not valid JSON: {exc}"]
    return validate_config_doc(doc)


# --- builders -------------------------------------------------------------------


def _build_model(doc):
    name = doc["name"]
    if name == "bosonic":
        return Bosonic()
    if name == "distinguishable":
        return Distinguishable()
    if name == "interpolation":
        return OneParameterInterpolation(float(doc["x"]))
    s = np.asarray(doc["re"], float) + 1j * np.asarray(doc["im"], float)
    return UserGram(s)


def _build_interferometer(doc, m, seed):
    kind = doc["kind"]
    if kind == "haar":
        return rand_haar(m, seed=doc.get("seed", seed))
    if kind == "fourier":
        return fourier(m)
    if kind == "hadamard":
        return hadamard(m)
    if kind == "inline":
        return interferometer_from_dict({"m": m, "re": doc["re"], "im": doc["im"],
                                         "kind": doc.get("tag", "user")})
    elements = []
    for el in doc["elements"]:
        if el["kind"] == "beamsplitter":
            elements.append(beam_splitter(el["t"], tuple(el["modes"])))
        else:
            elements.append(phase_shift(el["phi"], el.get("mode", 0)))
    return compose(elements, m)


def _fmt(x):
    return repr(float(x))


def _write_lines(path, lines):
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_table_csv(path, table, m):
    lines = [",".join(f"mode_{q + 1}" for q in range(m)) + ",probability"]
    for occ, p in zip(table.outcomes, table.probs):
        counts = occ.counts if hasattr(occ, "counts") else occ
        lines.append(",".join(str(c) for c in counts) + f",{_fmt(p)}")
    _write_lines(path, lines)


# --- command runners -------------------------------------------------------------


def _run_hom(cfg, outdir):
    delta_omega = cfg["delta_omega"]
    taus = np.arange(cfg["tau_min"], cfg["tau_max"] + cfg["tau_step"] / 2.0,
                     cfg["tau_step"])
    splitter = compose([beam_splitter(1.0 / math.sqrt(2.0))], 2)
    coincidence = ModeOccupation((1, 1))
    lines = ["delta_tau,coincidence"]
    for tau in taus:
        x = math.exp(-((delta_omega * tau) ** 2))
        ev = Event(Input(first_modes(2, 2), OneParameterInterpolation(x)),
                   FockDetection(coincidence), splitter)
        p = compute_probability_fock(ev)
        lines.append(f"{_fmt(tau)},{_fmt(p)}")
    _write_lines(outdir / "hom.csv", lines)
    return ["hom.csv"]


def _run_prob(cfg, outdir):
    interf = _build_interferometer(cfg["interferometer"], cfg["m"], cfg["seed"])
    inp = Input(first_modes(cfg["n"], cfg["m"]), _build_model(cfg["model"]))
    ev = Event(inp, FockDetection(ModeOccupation(tuple(cfg["measurement"]["out"]))),
               interf)
    compute_probability_fock(ev)
    with open(outdir / "event.json", "w") as fh:
        fh.write(event_to_json(ev) + "\n")
    return ["event.json"]


def _run_sample(cfg, outdir):
    interf = _build_interferometer(cfg["interferometer"], cfg["m"], cfg["seed"])
    inp = Input(first_modes(cfg["n"], cfg["m"]), _build_model(cfg["model"]))
    dark_p = None
    if cfg["measurement"]["kind"] == "dark-count":
        dark_p = float(cfg["measurement"]["p"])
    samples = sample_batch(inp, interf, cfg["samples"], cfg["seed"],
                           eta=cfg["loss"], dark_p=dark_p)
    meta = {"seed": cfg["seed"], "n": cfg["n"], "m": cfg["m"],
            "model": cfg["model"], "eta": cfg["loss"]}
    if dark_p is not None:
        meta["dark_count_p"] = dark_p
    write_samples_csv(outdir / "samples.csv", samples, meta=meta,
                      meta_path=outdir / "samples.meta.json")
    return ["samples.csv", "samples.meta.json"]


def _run_noisy_dist(cfg, outdir):
    interf = _build_interferometer(cfg["interferometer"], cfg["m"], cfg["seed"])
    inp = Input(first_modes(cfg["n"], cfg["m"]), _build_model(cfg["model"]))
    sampler = cfg["sampler"]
    sampler_cfg = SamplerConfig(seed=cfg["seed"], burn_in=sampler["burn_in"],
                                thinning=sampler["thinning"], error=sampler["error"],
                                failure_probability=sampler["failure_probability"])
    exact, truncated, sampled = noisy_distribution(
        inp, cfg["loss"], interf, sampler_cfg, samples=cfg["samples"])
    _write_table_csv(outdir / "noisy_exact.csv", exact, cfg["m"])
    _write_table_csv(outdir / "noisy_truncated.csv", truncated, cfg["m"])
    _write_table_csv(outdir / "noisy_sampled.csv", sampled, cfg["m"])
    return ["noisy_exact.csv", "noisy_truncated.csv", "noisy_sampled.csv"]


def _run_partition(cfg, outdir):
    interf = _build_interferometer(cfg["interferometer"], cfg["m"], cfg["seed"])
    inp = Input(first_modes(cfg["n"], cfg["m"]), _build_model(cfg["model"]))
    part = Partition(tuple(Subset(cfg["m"], tuple(sub))
                           for sub in cfg["measurement"]["subsets"]))
    table = partition_counts_all(inp, interf, part)
    write_partition_csv(outdir / "partition.csv", part, table)
    return ["partition.csv"]


def _run_validate(cfg, outdir):
    n, m = cfg["n"], cfg["m"]
    interf = _build_interferometer(cfg["interferometer"], m, cfg["seed"])
    occupation = first_modes(n, m)
    h0 = fock_hypothesis("h0", Input(occupation, _build_model(cfg["h0"])), interf)
    ha = fock_hypothesis("ha", Input(occupation, _build_model(cfg["ha"])), interf)
    if "samples_file" in cfg:
        samples = read_samples_csv(cfg["samples_file"])
        traces = [bayesian_confidence(samples, h0, ha, cfg["prior"])]
        ts = np.arange(len(traces[0].xi))
        density, _, _ = np.histogram2d(
            ts, traces[0].xi, bins=50, range=[[0, len(samples)], [0.0, 1.0]])
        result = SimpleNamespace(traces=traces, density=density)
    else:
        truth_table = full_distribution(
            Input(occupation, _build_model(cfg["truth"])), interf)
        result = run_validation_trials(
            cfg["n_trials"], cfg["n_samples"], table_sampler(truth_table),
            h0, ha, prior=cfg["prior"], seed=cfg["seed"])
    write_traces_csv(outdir / "traces.csv", result.traces)
    write_density_csv(outdir / "density.csv", result)
    return ["traces.csv", "density.csv"]


def _run_optimize(cfg, outdir):
    m = cfg["m"]
    obj_doc = cfg["objective"]
    name = obj_doc["name"]
    if name == "trace-overlap":
        if "target" in obj_doc:
            target = _build_interferometer(obj_doc["target"], m, cfg["seed"])
        else:
            target = fourier(m)
        obj = trace_overlap_objective(target.U)
    elif name == "entry-modulus":
        obj = entry_modulus_objective(obj_doc.get("row", 0), obj_doc.get("col", 0))
    else:
        subset = obj_doc.get("subset", list(range(max(1, m // 2))))
        obj = bunching_objective(obj_doc["n"], tuple(subset), m)
    result = riemannian_ascent(obj, m, step=cfg["step"], max_iter=cfg["max_iter"],
                               tol=cfg["tol"], seed=cfg["seed"])
    write_trace_csv(outdir / "trace.csv", result)
    doc = interferometer_to_dict(Interferometer(result.U, kind="user"))
    doc["objective_value"] = result.f
    with open(outdir / "optimum.json", "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")
    return ["trace.csv", "optimum.json"]


def _run_bench(cfg, outdir):
    reps = cfg["reps"]
    lines = ["n,mean_seconds"]
    warm = rand_haar(2, seed=cfg["seed"]).U
    permanent_ryser(warm)
    for n in range(cfg["n_min"], cfg["n_max"] + 1):
        u = rand_haar(n, seed=cfg["seed"] + n).U
        permanent_ryser(u)  # warm pass, untimed
        elapsed = 0.0
        for _ in range(reps):
            t0 = time.perf_counter()
            permanent_ryser(u)
            elapsed += time.perf_counter() - t0
        lines.append(f"{n},{_fmt(elapsed / reps)}")
    _write_lines(outdir / "bench.csv", lines)
    return ["bench.csv"]


_RUNNERS = {
    "hom": _run_hom,
    "prob": _run_prob,
    "sample": _run_sample,
    "noisy-dist": _run_noisy_dist,
    "partition": _run_partition,
    "validate": _run_validate,
    "optimize": _run_optimize,
    "bench": _run_bench,
}


def run(cfg):
    """Execute a validated config; returns the list of files written."""
    outdir = Path(cfg["out"])
    outdir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    files = _RUNNERS[cfg["command"]](cfg, outdir)
    wall = time.perf_counter() - t0
    manifest = {
        "config": cfg,
        "version": __version__,
        "seed": cfg["seed"],
        "threads": cfg["threads"],
        "wall_time_s": wall,
        "files": files,
    }
    with open(outdir / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return files + ["manifest.json"]


# --- argument parsing ------------------------------------------------------------


_EPILOG = f"""\
exit codes:
  0  success
  2  config parse failure (unreadable file or invalid JSON)
  3  config validation failure (all problems are reported at once)
  4  enumeration guard exceeded
  5  runtime numeric failure

The config is a single JSON document; command-line flags override config
fields. A manifest.json emitted by a previous run can be fed back as the
config and reproduces the same data files byte for byte (bench timings
excepted). {OUTPUT_ENV_VAR} sets the default output directory. --threads caps
the worker count; the numerical kernels are sequential, so any value
produces identical results and the flag is recorded in the manifest.
"""


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bosonsim",
        description="Simulation toolkit for multi-photon interferometry",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")
    descriptions = {
        "hom": "two-photon coincidence dip versus time delay",
        "prob": "probability of one input/output pattern",
        "sample": "draw output patterns, with optional loss and dark counts",
        "noisy-dist": "exact, truncated and chain-sampled noisy distributions",
        "partition": "photon-count probabilities in binned output modes",
        "validate": "Bayesian hypothesis testing on samples",
        "optimize": "maximize an objective over the unitary group",
        "bench": "time the permanent kernel across matrix sizes",
    }
    for name in _COMMANDS:
        p = sub.add_parser(name, help=descriptions[name])
        p.add_argument("--config", help="JSON config file (or a previous manifest)")
        p.add_argument("--seed", type=int, help="master RNG seed")
        p.add_argument("--out", help="output directory prefix")
        p.add_argument("--threads", type=int, help="worker count cap")
        p.add_argument("--n", type=int, help="photon count")
        p.add_argument("--m", type=int, help="mode count")
        p.add_argument("--samples", type=int, help="number of samples")
        p.add_argument("--loss", type=float,
                       help="transmission probability of the uniform loss channel")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_CONFIG
    doc = {}
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    if not isinstance(doc, dict):
        print("error: config root must be a JSON object", file=sys.stderr)
        return EXIT_CONFIG
    if "config" in doc and "version" in doc:  # a manifest fed back as config
        doc = doc["config"]
    doc = dict(doc)
    doc["command"] = args.command
    for key in ("seed", "out", "threads", "n", "m", "samples", "loss"):
        value = getattr(args, key, None)
        if value is not None:
            doc[key] = value
    cfg, errors = validate_config_doc(doc)
    if errors:
        for err in errors:
            print(f"config error: {err}", file=sys.stderr)
        return EXIT_INVALID
    try:
        files = run(cfg)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (NumericError, FloatingPointError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    for name in files:
        print(Path(cfg["out"]) / name)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
