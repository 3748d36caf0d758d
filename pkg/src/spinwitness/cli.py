"""Command-line front end. Emits CSV or JSON for plotting; never plots.

Exit codes: 0 success, 2 invalid arguments, 3 resource cap, 4 no jump found.
Errors print one line ``error code=<CODE> message=<text>`` on stderr.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from spinwitness import closed_forms, decidability, fitting, paths, spinsim
from spinwitness.errors import InvalidArgumentError, SpinWitnessError
from spinwitness.multiplicity import DEFAULT_EXACT_CAP, Backend, degeneracy_rows_stream, mult_row
from spinwitness.paths import DEFAULT_NODE_BUDGET
from spinwitness.spins import TwiceSpin

REPORT_VERSION = 1


@dataclass
class RunConfig:
    command: str
    spin: TwiceSpin | None = None
    n: int | None = None
    n_min: int = 1
    n_max: int | None = None
    j: TwiceSpin | None = None
    backend: str = Backend.NORMALIZED.value
    output: str = "-"
    seed: int = 0
    row_cap: int = DEFAULT_EXACT_CAP
    node_cap: int = DEFAULT_NODE_BUDGET
    dim_cap: int = spinsim.DEFAULT_DIM_CAP
    limit: int = 1000
    input: str | None = None
    weighted: bool = False
    trials: int = 10**5
    coupling: float = 1.0
    open: bool = False

    def as_json(self) -> dict:
        out = {}
        for k, v in dataclasses.asdict(self).items():
            out[k] = str(v) if isinstance(v, TwiceSpin) else v
        return out


def _spin(token: str) -> TwiceSpin:
    try:
        return TwiceSpin.parse(token)
    except InvalidArgumentError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _fail("INVALID_ARGUMENT", message, 2)


def _fail(code: str, message: str, status: int):
    print(f"error code={code} message={' '.join(str(message).split())}", file=sys.stderr)
    raise SystemExit(status)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spinwitness", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, *, spin=True, backend=False):
        if spin:
            sp.add_argument("--spin", type=_spin, required=True, help="integer or <odd>/2")
        if backend:
            sp.add_argument("--backend", choices=[b.value for b in Backend], default=Backend.NORMALIZED.value)
            sp.add_argument("--row-cap", type=int, default=DEFAULT_EXACT_CAP, help="max N for the exact backend")
        sp.add_argument("--output", "-o", default="-")

    sp = sub.add_parser("mult", help="multiplicities and degeneracies at one N")
    common(sp, backend=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--j", type=_spin)
    sp.set_defaults(backend=Backend.EXACT.value)

    sp = sub.add_parser("seq", help="m_s(N, j) for N = 1..n-max, comma separated")
    common(sp)
    sp.add_argument("--j", type=_spin, default=TwiceSpin(0))
    sp.add_argument("--n-max", type=int, required=True)

    sp = sub.add_parser("fraction", help="decidable fraction f_s(N)")
    common(sp, backend=True)
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("series", help="f_s(N) over a range of N as CSV")
    common(sp, backend=True)
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--n-max", type=int, required=True)

    sp = sub.add_parser("asymptote", help="jump-bracket estimate of f_s(inf)")
    common(sp, backend=True)
    sp.add_argument("--n-max", type=int, default=10000)

    sp = sub.add_parser("fit", help="fit f_s(inf) = 1/(a s^b + c)")
    common(sp, spin=False)
    sp.add_argument("--input", required=True, help="CSV with columns s,f[,half_width]")
    sp.add_argument("--weighted", action="store_true", help="weight points by 1/half_width^2")
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("paths", help="list lattice paths as x,twice_y pairs")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--j", type=_spin, required=True)
    sp.add_argument("--limit", type=int, default=1000)
    sp.add_argument("--node-cap", type=int, default=DEFAULT_NODE_BUDGET)

    sp = sub.add_parser("sim", help="small-N quantum checks as a JSON report")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=10**5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--coupling", type=float, default=1.0)
    sp.add_argument("--open", action="store_true", help="open chain instead of periodic")
    sp.add_argument("--dim-cap", type=int, default=spinsim.DEFAULT_DIM_CAP)
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})


def _emit(cfg: RunConfig, text: str, path: str | None = None) -> None:
    path = cfg.output if path is None else path
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _json(cfg: RunConfig, payload: dict) -> str:
    return json.dumps({"spec_version": REPORT_VERSION, "config": cfg.as_json(), **payload}, indent=2) + "\n"


def _label(j: int) -> str:
    return str(TwiceSpin(j))


def cmd_mult(cfg: RunConfig) -> None:
    row = mult_row(cfg.spin, cfg.n, cfg.backend, cfg.row_cap)
    js = [cfg.j] if cfg.j is not None else list(row.twice_js())
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["j", "twice_j", "m", "d"])
    for j in js:
        m = row[j]
        d = (j + 1) * m
        if row.backend is Backend.NORMALIZED:
            m, d = format(float(m), ".12g"), format(float(d), ".12g")
        w.writerow([_label(j), int(j), m, d])
    _emit(cfg, buf.getvalue())


def cmd_seq(cfg: RunConfig) -> None:
    vals = [row[cfg.j] for row in degeneracy_rows_stream(cfg.spin, cfg.n_max, Backend.EXACT, max(cfg.n_max, 0))]
    _emit(cfg, ", ".join(str(v) for v in vals[1:]) + "\n")


def cmd_fraction(cfg: RunConfig) -> None:
    f = decidability.fraction(cfg.spin, cfg.n, cfg.backend, cfg.row_cap)
    _emit(cfg, format(f, ".12g") + "\n")


def _suffixed(path: str, suffix: str) -> str:
    p = Path(path)
    return str(p.with_name(f"{p.stem}_{suffix}{p.suffix or '.csv'}"))


def cmd_series(cfg: RunConfig) -> None:
    series = decidability.fraction_series(cfg.spin, cfg.n_min, cfg.n_max, cfg.backend, cfg.row_cap)
    if series.parity_split and cfg.output != "-":
        for name, sub in series.classes().items():
            _emit(cfg, sub.to_csv(), _suffixed(cfg.output, name))
    else:
        _emit(cfg, series.to_csv())


def cmd_asymptote(cfg: RunConfig) -> None:
    est = decidability.last_jump(decidability.fraction_series(cfg.spin, 1, cfg.n_max, cfg.backend, cfg.row_cap))
    _emit(cfg, _json(cfg, {
        "s": str(cfg.spin), "N_lo": est.N_lo, "N_hi": est.N_hi, "f_lo": est.f_lo, "f_hi": est.f_hi,
        "center": est.center, "half_width": est.half_width,
    }))


def read_fit_points(path: str, weighted: bool = False) -> list[tuple[float, float, float]]:
    """Rows ``s,f[,half_width]``; spins may be written as ``3/2``."""
    points = []
    with open(path, newline="") as fh:
        for r in csv.DictReader(fh):
            s = float(TwiceSpin.parse(r["s"]).j) if "." not in r["s"] else float(r["s"])
            w = 1.0
            if weighted:
                if not r.get("half_width"):
                    raise InvalidArgumentError("--weighted needs a half_width column")
                w = 1.0 / float(r["half_width"]) ** 2
            points.append((s, float(r["f"]), w))
    return points


def cmd_fit(cfg: RunConfig) -> None:
    result = fitting.fit(read_fit_points(cfg.input, cfg.weighted), seed=cfg.seed)
    _emit(cfg, _json(cfg, result.report()))


def cmd_paths(cfg: RunConfig) -> None:
    found = paths.list_paths(cfg.spin, cfg.n, cfg.j, cfg.limit, cfg.node_cap)
    _emit(cfg, "".join(paths.format_path(p) + "\n" for p in found))


def cmd_sim(cfg: RunConfig) -> None:
    s, N = cfg.spin, cfg.n
    spectrum, resid = spinsim.witness_spectrum(s, N, cfg.dim_cap)
    row = mult_row(s, N)
    dp = {j: d for j, d in zip(row.twice_js(), row.degeneracies()) if d}
    min_w, _ = spinsim.separable_bound_mc(s, N, cfg.trials, cfg.seed)
    comm = spinsim.commutator_check(s, N, cfg.coupling, not cfg.open, cfg.seed, cfg.dim_cap)
    _emit(cfg, _json(cfg, {
        "degeneracies": {
            "spectrum": {_label(j): c for j, c in spectrum.items()},
            "dp": {_label(j): d for j, d in dp.items()},
            "match": spectrum == dp,
            "max_cluster_residual": resid,
        },
        "bound_check": {"trials": cfg.trials, "min_witness": min_w,
                        "separable_bound": float(decidability.separable_bound(s, N))},
        "commutator": {k: v for k, v in comm.as_dict().items() if k not in ("s", "N")},
    }))


COMMANDS = {
    "mult": cmd_mult, "seq": cmd_seq, "fraction": cmd_fraction, "series": cmd_series,
    "asymptote": cmd_asymptote, "fit": cmd_fit, "paths": cmd_paths, "sim": cmd_sim,
}


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = _config(ns)
    for name in ("n", "n_max"):
        v = getattr(cfg, name)
        if v is not None and v < 0:
            _fail("INVALID_ARGUMENT", f"--{name.replace('_', '-')} must be >= 0", 2)
    try:
        COMMANDS[cfg.command](cfg)
    except SpinWitnessError as e:
        _fail(e.code, str(e), e.exit_code)
    except OSError as e:
        _fail("IO", str(e), 2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
