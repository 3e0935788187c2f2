"""Command-line interface: Cotor tables and spectral sequence runs.

Exit codes: 0 success (or N-convergent), 1 invalid configuration,
2 window overflow, 3 non-convergent, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import cobar, emss_engine, graded_hopf, rw_hopf_ring

_KIND_MAP = {
    "Lambda": ("exterior", None),
    "P": ("polynomial", None),
    "Gamma": ("divided_power", None),
    "Ru": ("r_u", None),
}
_SLICE_RE = re.compile(r"^H\((\d+),(\d+),(\d+)\)$")
_KIND_RE = re.compile(r"^(Lambda|P|Gamma|Ru)(?:_(\d+))?:deg=(\d+)$")


class SpecError(ValueError):
    pass


def parse_coalgebra_spec(spec: str, p: int | None):
    """Parse "Kind_k:deg=d" or "H(p,n,m)" into a HopfPresentation.

    Returns (presentation, label, periodic_flag).
    """
    m = _SLICE_RE.match(spec)
    if m:
        sp, sn, sm = (int(x) for x in m.groups())
        if p is not None and p != sp:
            raise SpecError(f"--p {p} conflicts with {spec}")
        sl = rw_hopf_ring.slice_coalgebra(sp, sn, sm)
        return sl.presentation, spec, True
    m = _KIND_RE.match(spec)
    if not m:
        raise SpecError(f"cannot parse coalgebra spec {spec!r}")
    kind_name, height, deg = m.group(1), m.group(2), int(m.group(3))
    if p is None:
        raise SpecError("--p is required for standard coalgebras")
    kind, _ = _KIND_MAP[kind_name]
    if height is not None:
        if kind == "polynomial":
            kind = "truncated"
        elif kind == "divided_power":
            kind = "divided_power_truncated"
        else:
            raise SpecError(f"{kind_name} takes no height subscript")
        height = int(height)
    try:
        pres = graded_hopf.standard(kind, deg, p, height=height)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    return pres, spec, False


def _default_t_max(spec: str, p: int, max_s: int) -> int:
    m = _KIND_RE.match(spec)
    deg = int(m.group(3))
    return 2 * deg * (max_s + 1)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dims_chart(dims: dict, max_s: int, period: int | None) -> str:
    rows = sorted({t - s if period is None else (t - s) % period
                   for (s, t) in dims})
    width = max(2, *(len(str(d)) for d in dims.values())) if dims else 2
    lines = ["t-s\\s " + " ".join(f"{s:>{width}}" for s in range(max_s + 1))]
    for u in rows:
        cells = []
        for s in range(max_s + 1):
            t = s + u if period is None else (s + u) % period
            d = dims.get((s, t), 0)
            cells.append(f"{d:>{width}}" if d else " " * (width - 1) + ".")
        lines.append(f"{u:>5} " + " ".join(cells))
    return "\n".join(lines)


def cmd_cotor(args) -> int:
    try:
        pres, label, periodic = parse_coalgebra_spec(args.coalgebra, args.p)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    t_max = args.t_max
    if not periodic and t_max is None:
        t_max = _default_t_max(args.coalgebra, args.p, args.max_s)
    try:
        window = cobar.CobarWindow(pres, args.max_s, t_max=t_max,
                                   word_cap=args.word_cap)
        rows = window.summary()
    except cobar.WindowOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "text-chart":
        dims = {(r["bidegree"][0], r["bidegree"][1]): r["dim_E2"]
                for r in rows if r["dim_E2"]}
        text = f"Cotor of {label}\n" + _dims_chart(dims, args.max_s - 1, pres.period)
    else:
        payload = {
            "coalgebra": label,
            "p": pres.p,
            "period": pres.period,
            "max_s": args.max_s,
            "t_max": t_max,
            "table": rows,
        }
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    _emit(text, args.out)
    return 0


def cmd_emss(args) -> int:
    if args.p < 3 or args.n < 1 or args.m < 1 or args.max_s < 2:
        print("error: need odd p, n >= 1, m >= 1, max-s >= 2", file=sys.stderr)
        return 1
    try:
        run = emss_engine.run_to_collapse(args.p, args.n, args.m, args.max_s)
    except cobar.WindowOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "text-chart":
        parts = [emss_engine.render_chart(run.pages[r]) for r in sorted(run.pages)]
        rep = run.report
        parts.append(
            f"verdict: {rep.verdict}"
            + (f" (N = {rep.N})" if rep.N is not None else "")
            + f"; E^infinity rank {rep.einfty_rank} vs target {rep.target_rank}")
        text = "\n\n".join(parts)
    else:
        text = emss_engine.run_to_json(run)
    _emit(text, args.out)
    verdict = run.report.verdict
    if verdict == "N-convergent":
        return 0
    if verdict == "non-convergent":
        return 3
    return 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morava-emss",
        description="Exact Cotor and Eilenberg-Moore spectral sequence computations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cot = sub.add_parser("cotor", help="Cotor dimension table of a coalgebra")
    cot.add_argument("--coalgebra", required=True,
                     help='e.g. "Gamma_1:deg=2" or "H(3,1,1)"')
    cot.add_argument("--p", type=int, default=None)
    cot.add_argument("--max-s", type=int, required=True)
    cot.add_argument("--t-max", type=int, default=None,
                     help="internal degree bound (non-periodic coalgebras)")
    cot.add_argument("--word-cap", type=int, default=None)
    cot.add_argument("--format", choices=("json", "text-chart"), default="json")
    cot.add_argument("--out", default=None)
    cot.set_defaults(func=cmd_cotor)

    em = sub.add_parser("emss", help="run a path-loop spectral sequence")
    em.add_argument("--p", type=int, required=True)
    em.add_argument("--n", type=int, required=True)
    em.add_argument("--m", type=int, required=True)
    em.add_argument("--max-s", type=int, required=True)
    em.add_argument("--format", choices=("json", "text-chart"), default="json")
    em.add_argument("--out", default=None)
    em.set_defaults(func=cmd_emss)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
