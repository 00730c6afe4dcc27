"""Command-line front end: ``jmd {decompose,synth,eval,plot}``."""
from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
import warnings
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from . import io, synth
from .baselines import decompose_auto
from .config import DecompConfig, JMDError, OMEGA_INITS, STOP_RULES, validate_config

log = logging.getLogger("jmd")

# flag dest -> (type, default); None default means required
DECOMPOSE_KEYS = {
    "input": (str, None),
    "output": (str, "jmd_out"),
    "k": (int, None),
    "alpha": (float, None),
    "beta": (float, 0.03),
    "bbar": (float, 0.3),
    "tau1": (float, 0.0),
    "tau2": (float, 10.0),
    "eps": (float, 1e-7),
    "max_iter": (int, 500),
    "init": (str, "peaks"),
    "seed": (int, ""),
    "stop_rule": (str, "components"),
    "fs": (float, ""),
    "no_jump": (bool, False),
}
# manifest entries describing the run rather than its inputs
RESULT_KEYS = (
    "started", "finished", "n_channels", "n_samples", "sample_rate",
    "converged", "iterations", "final_change",
)


class UsageError(Exception):
    pass


def _parse_bool(s) -> bool:
    if isinstance(s, bool):
        return s
    v = str(s).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off", ""):
        return False
    raise UsageError(f"not a boolean: {s!r}")


def _coerce(key: str, raw):
    typ, _ = DECOMPOSE_KEYS[key]
    if raw == "" or raw is None:
        return None
    if typ is bool:
        return _parse_bool(raw)
    try:
        return typ(raw)
    except ValueError:
        raise UsageError(f"{key}: cannot parse {raw!r} as {typ.__name__}") from None


def resolve_decompose_args(args: argparse.Namespace) -> Dict[str, object]:
    """Merge config file values, command-line flags and defaults (in increasing priority:
    defaults, file, flags)."""
    merged: Dict[str, object] = {}
    if args.config:
        for key, raw in io.read_keyvalue(args.config).items():
            key = key.replace("-", "_")
            if key in RESULT_KEYS:
                continue
            if key not in DECOMPOSE_KEYS:
                raise UsageError(f"{args.config}: unknown key {key!r}")
            merged[key] = _coerce(key, raw)
    for key in DECOMPOSE_KEYS:
        val = getattr(args, key, None)
        if val is not None and not (key == "no_jump" and val is False):
            merged[key] = val
    for key, (_, default) in DECOMPOSE_KEYS.items():
        if merged.get(key) is None:
            if default is None:
                raise UsageError(f"missing required option --{key.replace('_', '-')}")
            merged[key] = None if default == "" else default
    return merged


def build_config(p: Dict[str, object]) -> DecompConfig:
    return DecompConfig(
        K=p["k"], alpha=p["alpha"], beta=p["beta"], b_bar=p["bbar"], tau1=p["tau1"],
        tau2=p["tau2"], eps=p["eps"], max_iter=p["max_iter"], omega_init=p["init"],
        seed=p["seed"], stop_rule=p["stop_rule"],
    )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def cmd_decompose(args) -> int:
    p = resolve_decompose_args(args)
    started = _now()
    sig = io.read_signal(p["input"], sample_rate=p["fs"])
    vcfg = validate_config(build_config(p), sig)
    res = decompose_auto(sig, vcfg, jump=not p["no_jump"])

    out = Path(p["output"])
    out.mkdir(parents=True, exist_ok=True)
    labels = list(sig.labels)
    for k in range(res.modes.shape[0]):
        io.write_channels(out / f"mode_{k + 1}.csv", res.modes[k], labels)
    io.write_channels(out / "jump.csv", res.jump, labels)
    io.write_channels(out / "residual.csv", res.residual, labels)
    K = res.omegas.size
    io.write_table(
        out / "omegas.csv",
        np.column_stack([np.arange(1, K + 1), res.omegas, res.omegas_hz]),
        ["mode", "omega", "omega_hz"],
    )
    trace = res.convergence_trace
    io.write_table(
        out / "trace.csv",
        np.column_stack([np.arange(1, trace.size + 1), trace]).reshape(-1, 2),
        ["iteration", "change"],
    )
    final = float(trace[-1]) if trace.size and np.isfinite(trace[-1]) else float("nan")
    manifest = dict(p)
    manifest["input"] = str(Path(p["input"]).resolve())
    manifest["output"] = str(out.resolve())
    manifest["fs"] = float(sig.sample_rate)
    manifest.update(
        started=started, finished=_now(), n_channels=sig.n_channels,
        n_samples=sig.n_samples, sample_rate=float(sig.sample_rate),
        converged=res.converged, iterations=res.iterations, final_change=final,
    )
    io.write_keyvalue(out / "manifest.txt", manifest)
    if not res.converged:
        log.warning("no convergence within %d iterations (last change %.3g)",
                    res.iterations, final)
    print(f"{res.iterations} iterations, converged={res.converged}; "
          f"omegas (Hz): {' '.join(f'{w:.4g}' for w in res.omegas_hz)}")
    return 0


def cmd_synth(args) -> int:
    gen = synth.GENERATORS.get(args.example)
    if gen is None:
        raise UsageError(
            f"unknown example {args.example!r}; choose from {', '.join(synth.GENERATORS)}"
        )
    sig, truth = gen(n=args.n, seed=args.seed, sigma=args.sigma)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    io.write_signal(out / "signal.csv", sig)
    labels = list(sig.labels)
    for name, comp in truth.components.items():
        io.write_channels(out / f"truth_{name}.csv", comp, labels)
    rows = [(c, i, h) for c, es in enumerate(truth.jump_edges) for i, h in es]
    io.write_table(out / "edges.csv", np.array(rows, dtype=float).reshape(-1, 3),
                   ["channel", "index", "height"])
    io.write_keyvalue(out / "synth.txt", {
        "example": args.example, "n": args.n, "seed": args.seed,
        "sigma": float(args.sigma), "fs": float(sig.sample_rate),
    })
    print(f"wrote {sig.n_channels}-channel signal of {sig.n_samples} samples to {out}")
    return 0


def _mode_files(d: Path) -> List[Path]:
    files = sorted(d.glob("mode_*.csv"), key=lambda p: int(p.stem.split("_")[1]))
    if not files:
        raise io.FileFormatError(f"no mode_*.csv files in {d}")
    return files


def _require(path: Path) -> Path:
    if not path.is_file():
        raise io.FileFormatError(f"missing file: {path}")
    return path


def evaluate(decomp_dir, truth_dir, b_bar: Optional[float] = None) -> List[tuple]:
    """Metric rows ``(metric, channel, component, mode, value)``.

    Modes are paired with the tones present in each channel by greedy
    best-correlation matching, so the numbering of the mode files is
    irrelevant.
    """
    ddir, tdir = Path(decomp_dir), Path(truth_dir)
    if b_bar is None:
        man = ddir / "manifest.txt"
        b_bar = float(io.read_keyvalue(man).get("bbar", 0.3)) if man.is_file() else 0.3
    modes = np.array([io.read_channels(f)[1] for f in _mode_files(ddir)])
    labels, jump = io.read_channels(_require(ddir / "jump.csv"))
    _, resid = io.read_channels(_require(ddir / "residual.csv"))
    tone_files = sorted(tdir.glob("truth_tone_*.csv"))
    if not tone_files and not (tdir / "truth_jump.csv").is_file():
        raise io.FileFormatError(f"no truth_*.csv files in {tdir}")
    tones = {f.stem[len("truth_"):]: io.read_channels(f)[1] for f in tone_files}
    comps = {f.stem[len("truth_"):]: io.read_channels(f)[1] for f in sorted(tdir.glob("truth_*.csv"))}
    C, N = jump.shape
    for name, arr in comps.items():
        if arr.shape != (C, N):
            raise ValueError(f"shape mismatch: truth {name} is {arr.shape}, decomposition is {(C, N)}")
    if modes.shape[1:] != (C, N) or resid.shape != (C, N):
        raise ValueError("shape mismatch between mode, jump and residual files")

    edges_path = tdir / "edges.csv"
    true_edges: Dict[int, List[int]] = {}
    if edges_path.is_file():
        _, e = io.read_table(edges_path)
        for c, i, _h in e.reshape(-1, 3):
            true_edges.setdefault(int(c), []).append(int(i))

    rows = []
    for c in range(C):
        label = labels[c]
        present = [n for n, t in tones.items() if np.ptp(t[c]) > 0]
        if present:
            corr = np.array([[synth.component_correlation(modes[k, c], tones[n][c])
                              for n in present] for k in range(modes.shape[0])])
            for k, j in synth.greedy_match(corr):
                rows.append(("correlation", label, present[j], k + 1, corr[k, j]))
        found = [i for i, _ in synth.jump_edges(jump[c], b_bar / 2)]
        for e in true_edges.get(c, []):
            err = min((abs(i - e) for i in found), default=math.nan)
            rows.append(("edge_error", label, f"edge@{e}", "", float(err)))
        rows.append(("residual_rms", label, "", "", float(np.sqrt(np.mean(resid[c] ** 2)))))
        clean = sum(a[c] for n, a in comps.items() if n != "noise")
        if not isinstance(clean, np.ndarray) or not np.any(clean):
            continue
        err = clean - (modes[:, c].sum(axis=0) + jump[c])
        snr = synth.snr_db(clean, err) if np.any(err) else math.inf
        rows.append(("snr_db", label, "", "", snr))
    return rows


def cmd_eval(args) -> int:
    rows = evaluate(args.input, args.truth, args.bbar)
    out = Path(args.output) if args.output else Path(args.input) / "metrics.csv"
    with out.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["metric", "channel", "component", "mode", "value"])
        for r in rows:
            w.writerow(list(r[:4]) + [io.FLOAT_FMT % r[4]])
    for r in rows:
        print(f"{r[0]:<13} {r[1]:<6} {r[2]:<14} {str(r[3]):<4} {r[4]:.6g}")
    return 0


def cmd_plot(args) -> int:
    from . import plotting

    d = Path(args.input)
    out = Path(args.output) if args.output else d
    out.mkdir(parents=True, exist_ok=True)
    fs = 1.0
    sig_path = args.signal
    man = d / "manifest.txt"
    if man.is_file():
        m = io.read_keyvalue(man)
        fs = float(m.get("sample_rate", 1.0))
        sig_path = sig_path or m.get("input")
    if not sig_path:
        raise io.FileFormatError(f"no input signal: pass --signal or provide {man}")
    sig = io.read_signal(sig_path, sample_rate=fs if man.is_file() else None)
    fs = sig.sample_rate
    written = [plotting.plot_panel(out / "signal.svg", sig.samples, sig.labels, "input",
                                   fs, args.normalize)]
    for i, f in enumerate(_mode_files(d), 1):
        labels, x = io.read_channels(f)
        written.append(plotting.plot_panel(out / f"mode_{i}.svg", x, labels, f"mode {i}",
                                           fs, args.normalize))
    labels, x = io.read_channels(_require(d / "jump.csv"))
    written.append(plotting.plot_panel(out / "jump.svg", x, labels, "jump", fs, args.normalize))
    if args.residual:
        rpath = d / "residual.csv"
        labels, x = io.read_channels(rpath) if rpath.is_file() else ([], np.empty((0, 0)))
        if x.size == 0:
            warnings.warn(f"residual file {rpath} is missing or empty; residual plot skipped")
        else:
            written.append(plotting.plot_panel(out / "residual.svg", x, labels, "residual",
                                               fs, args.normalize))
    print(f"wrote {len(written)} plots to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jmd", description="Jump plus oscillatory mode decomposition.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="decompose a CSV signal")
    d.add_argument("--config", help="key=value file supplying any option below")
    d.add_argument("--input")
    d.add_argument("--output")
    d.add_argument("--k", type=int)
    d.add_argument("--alpha", type=float)
    d.add_argument("--beta", type=float)
    d.add_argument("--bbar", type=float)
    d.add_argument("--tau1", type=float)
    d.add_argument("--tau2", type=float)
    d.add_argument("--eps", type=float)
    d.add_argument("--max-iter", dest="max_iter", type=int)
    d.add_argument("--init", choices=OMEGA_INITS)
    d.add_argument("--seed", type=int)
    d.add_argument("--stop-rule", dest="stop_rule", choices=STOP_RULES)
    d.add_argument("--fs", type=float, help="sample rate (default: from time column, else N)")
    d.add_argument("--no-jump", dest="no_jump", action="store_true",
                   help="disable the jump branch (plain VMD / MVMD)")
    d.set_defaults(func=cmd_decompose)

    s = sub.add_parser("synth", help="generate a synthetic signal with ground truth")
    s.add_argument("--example", required=True)
    s.add_argument("--n", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sigma", type=float, default=0.1)
    s.add_argument("--output", default="synth_out")
    s.set_defaults(func=cmd_synth)

    e = sub.add_parser("eval", help="score a decomposition against synthetic ground truth")
    e.add_argument("--input", required=True, help="decomposition output directory")
    e.add_argument("--truth", required=True, help="synth output directory")
    e.add_argument("--bbar", type=float, help="edge threshold is bbar/2 (default: manifest)")
    e.add_argument("--output", help="metrics CSV (default: <input>/metrics.csv)")
    e.set_defaults(func=cmd_eval)

    p = sub.add_parser("plot", help="write SVG panels of a decomposition")
    p.add_argument("--input", required=True, help="decomposition output directory")
    p.add_argument("--signal", help="input signal CSV (default: from manifest)")
    p.add_argument("--output", help="plot directory (default: the input directory)")
    p.add_argument("--normalize", action="store_true", help="min-max scale each panel to [0, 1]")
    p.add_argument("--residual", action="store_true", help="also plot the residual")
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        ap.error(str(exc))
    except (JMDError, io.FileFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
