"""askey-ladder command line.

Exit codes: 0 ok, 1 identity failure, 2 configuration error, 3 runtime error.
Exact values cross this boundary as strings; only chain outputs are floats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from fractions import Fraction

from . import campaign, families
from . import identities as ids
from .errors import AskeyError, InvalidParameters
from .exact import parse, parse_rational, render

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2, 3
DEFAULT_CAMPAIGN = 20
PARAM_NAMES = ("alpha", "beta", "gamma", "delta", "a", "b", "c", "d", "p", "lam", "phi",
               "trunc", "m")


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Let "-5/7" and "-1/2+3*i" through as values rather than option flags.
    _NEGATIVE_LITERAL = re.compile(r"^-\d+(/\d+)?([+-]\d+(/\d+)?\*i)?$|^-\d*\.\d+$")

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = self._NEGATIVE_LITERAL

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _index_range(text: str) -> list[int]:
    """``"3"`` or an inclusive range ``"0..4"``."""
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or lo..hi, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _exact_list(text: str) -> list:
    """Comma-separated exact values, or an inclusive integer range ``lo..hi``."""
    if ".." in text:
        return [Fraction(v) for v in _index_range(text)]
    try:
        return [parse(part) for part in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_output(p):
    p.add_argument("--output", choices=("json", "csv", "pretty"), default=None)
    p.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")


def _add_params(p):
    for name in ("alpha", "beta", "gamma", "delta", "a", "b", "c", "d", "p", "lambda", "phi"):
        p.add_argument(f"--{name}", type=_rational, dest=name.replace("lambda", "lam"))
    p.add_argument("--trunc", choices=[t.value for t in families.Truncation])
    p.add_argument("--m", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="askey-ladder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a polynomial family exactly")
    p.add_argument("--family", required=True, choices=families.FAMILIES)
    _add_params(p)
    p.add_argument("--n", type=_index_range, required=True, help="degree or lo..hi")
    p.add_argument("--x", type=_exact_list, required=True,
                   help="comma-separated exact values, e.g. 1/2 or 1/2+1/3*i; or lo..hi")
    _add_output(p)

    p = sub.add_parser("check", help="verify an identity at explicit points or by campaign")
    p.add_argument("--eq", required=True, choices=sorted(campaign.EQUATIONS))
    p.add_argument("--campaign", type=int, metavar="N",
                   help=f"number of random parameter sets (default {DEFAULT_CAMPAIGN} "
                        "when no parameters are given)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--as-printed", action="store_true",
                   help="check the uncorrected variant (krawtchouk-pair: (m-x+1); "
                        "racah-orthogonality: norm without (alpha-delta+1)_n)")
    p.add_argument("--case", choices=[c.value for c in ids.LimitCase], default="gamma-inf")
    p.add_argument("--t", type=_rational, default=campaign.LIMIT_T0, help="first rung of the t-ladder")
    p.add_argument("--k", type=_index_range, help="proof-identity summation index")
    p.add_argument("--n", type=_index_range)
    p.add_argument("--x", type=_exact_list)
    _add_params(p)
    _add_output(p)

    p = sub.add_parser("orthogonality", help="exact Racah orthogonality residual matrix")
    _add_params(p)
    p.add_argument("--as-printed", action="store_true", help="use the norm without (alpha-delta+1)_n")
    _add_output(p)

    p = sub.add_parser("chain", help="build and simulate the coupled chain")
    p.add_argument("--m", type=int, required=True)
    for name in ("alpha", "beta", "delta"):
        p.add_argument(f"--{name}", type=_rational, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--t-steps", type=int, required=True)
    p.add_argument("--output", choices=("json", "csv", "pretty"), default="json")
    p.add_argument("--out", metavar="PATH")
    return parser


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise ConfigError("missing required option(s): " + ", ".join("--" + m for m in missing))
    return [getattr(args, n) for n in names]


_FREE = {"alpha": ("beta", "gamma", "delta"), "gamma": ("alpha", "beta", "delta"),
         "beta-delta": ("alpha", "gamma")}


def _racah_params(args) -> families.RacahParams:
    """Racah parameters; the one fixed by the truncation may be left out."""
    trunc, m = _need(args, "trunc", "m")
    given = {k: getattr(args, k) for k in ("alpha", "beta", "gamma", "delta")}
    if all(v is not None for v in given.values()):
        return families.RacahParams(*given.values(), families.TruncationCase(trunc, m))
    _need(args, *_FREE[trunc])
    if trunc == "beta-delta" and given["beta"] is None and given["delta"] is None:
        raise ConfigError("beta-delta truncation needs --beta or --delta")
    return families.RacahParams.truncated(trunc, m, **given)


def _integer_xs(xs) -> list[int]:
    out = []
    for x in xs:
        if not (isinstance(x, Fraction) and x.denominator == 1):
            raise ConfigError(f"this family needs integer x, got {render(x)}")
        out.append(int(x))
    return out


def _family_evaluator(args):
    fam = args.family
    if fam == "racah":
        params = _racah_params(args)
        return params, lambda n, x: families.racah_eval(params, n, x), True
    if fam == "wilson":
        params = families.WilsonParams(*_need(args, "a", "b", "c", "d"))
        return params, lambda n, x: families.wilson_eval(params, n, x), False
    if fam == "hahn":
        alpha, beta, m = _need(args, "alpha", "beta", "m")
        params = families.HahnParams(alpha, beta, m)
        return params, lambda n, x: families.hahn_eval(params, n, x), True
    if fam == "krawtchouk":
        p, m = _need(args, "p", "m")
        params = families.KrawtchoukParams(p, m)
        return params, lambda n, x: families.krawtchouk_eval(params, n, x), True
    if fam == "cont-hahn":
        params = families.ContHahnParams(*_need(args, "a", "b", "c", "d"))
        return params, lambda n, x: families.cont_hahn_eval(params, n, x), False
    if fam == "cont-dual-hahn":
        params = families.ContDualHahnParams(*_need(args, "a", "b", "c"))
        return params, lambda n, x: families.cont_dual_hahn_eval(params, n, x), False
    lam = _need(args, "lam")[0]
    phi = args.phi if args.phi is not None else Fraction(1, 2)
    params = families.MeixnerPollaczekParams(lam, phi)
    return params, lambda n, x: families.meixner_pollaczek_eval(params, n, x), False


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_eval(args) -> int:
    _params, evaluate, discrete = _family_evaluator(args)
    xs = _integer_xs(args.x) if discrete else args.x
    rows = [(n, x, render(evaluate(n, x))) for n in args.n for x in xs]
    output = args.output or "pretty"
    if output == "json":
        text = json.dumps([{"family": args.family, "n": n, "x": render(x), "value": v}
                           for n, x, v in rows], indent=2) + "\n"
    elif output == "csv":
        text = _csv_text(("n", "x", "value"), [(n, render(x), v) for n, x, v in rows])
    elif len(rows) == 1:
        text = rows[0][2] + "\n"
    else:
        text = "".join(f"n={n} x={render(x)} {v}\n" for n, x, v in rows)
    _emit(args, text)
    return EXIT_OK


def _explicit_unit(args) -> campaign.Unit:
    eq = args.eq
    if eq == "proof-identity":
        beta, gamma, delta = _need(args, "beta", "gamma", "delta")
        if args.k is None and args.x is None:
            return campaign.Unit(eq, (beta, gamma, delta), campaign.default_points(eq, None))
        ks, xs = _need(args, "k", "x")
        return campaign.Unit(eq, (beta, gamma, delta),
                             tuple((k, x) for k in ks for x in _integer_xs(xs)))
    if eq in ("racah-pair", "racah-composition", "racah-orthogonality"):
        params = _racah_params(args)
        if eq == "racah-orthogonality":
            return campaign.Unit(eq, params, ((None, None),))
    elif eq == "hahn-shift-pair":
        params = families.HahnParams(*_need(args, "alpha", "beta", "m"))
    elif eq == "krawtchouk-pair":
        params = families.KrawtchoukParams(*_need(args, "p", "m"))
    elif eq == "racah-hahn-limit":
        base = families.HahnParams(*_need(args, "alpha", "beta", "m"))
        params = (ids.LimitCase(args.case), base, args.t)
    elif eq in ("wilson-recurrences", "wilson-difference-pair", "wilson-composition"):
        params = families.WilsonParams(*_need(args, "a", "b", "c", "d"))
    elif eq == "cdual-hahn-reduction":
        params = tuple(_need(args, "a", "b"))
    else:
        params = families.ContHahnParams(*_need(args, "a", "b", "c", "d"))
    if args.n is None and args.x is None:
        return campaign.Unit(eq, params, campaign.default_points(eq, params))
    ns, xs = _need(args, "n", "x")
    if eq in ("racah-pair", "racah-composition", "hahn-shift-pair", "krawtchouk-pair",
              "racah-hahn-limit"):
        xs = _integer_xs(xs)
    return campaign.Unit(eq, params, tuple((n, x) for n in ns for x in xs))


def _report_rows(reports):
    return [r.to_json() for r in reports]


def cmd_check(args) -> int:
    options = {"as_printed": args.as_printed}
    explicit = any(getattr(args, name) is not None for name in PARAM_NAMES)
    if args.campaign is not None and explicit:
        raise ConfigError("give either --campaign or explicit parameters, not both")
    if explicit:
        units = [_explicit_unit(args)]
    else:
        size = DEFAULT_CAMPAIGN if args.campaign is None else args.campaign
        if size < 1:
            raise ConfigError("--campaign must be a positive integer")
        units = campaign.sample_units(args.eq, size, args.seed)
    result = campaign.run_units(units, options)
    rows = _report_rows(result.reports)
    output = args.output or "json"
    if output == "json":
        text = json.dumps(rows, indent=2) + "\n"
    elif output == "csv":
        keys = ("equationId", "params", "n", "x", "residual", "exact", "pass")
        text = _csv_text(keys, [[row[k] for k in keys] for row in rows])
    else:
        text = "".join(
            f"{'PASS' if r['pass'] else 'FAIL'} {r['equationId']} {r['params']} "
            f"n={r['n']} x={r['x']} residual={r['residual']}\n" for r in rows)
    _emit(args, text)
    print(result.summary_line(), file=sys.stderr)
    return EXIT_OK if result.failed == 0 else EXIT_FAILED


def cmd_orthogonality(args) -> int:
    params = _racah_params(args)
    table = ids.check_racah_orthogonality(params, as_printed=args.as_printed)
    residuals = [[render(r.residual) for r in row] for row in table]
    ok = all(r.passed for row in table for r in row)
    output = args.output or "pretty"
    if output == "json":
        text = json.dumps({"equationId": ids.EquationId.RacahOrthogonality.value,
                           "params": table[0][0].params, "m": params.m,
                           "residuals": residuals, "pass": ok}, indent=2) + "\n"
    elif output == "csv":
        text = _csv_text(("l", "n", "residual"),
                         [(l, n, v) for l, row in enumerate(residuals) for n, v in enumerate(row)])
    else:
        width = max(len(v) for row in residuals for v in row)
        text = "".join(" ".join(v.rjust(width) for v in row) + "\n" for row in residuals)
    _emit(args, text)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_chain(args) -> int:
    from . import spinchain

    if args.t_steps < 1:
        raise ConfigError("--t-steps must be a positive integer")
    if not math.isfinite(args.t_max) or args.t_max < 0:
        raise ConfigError("--t-max must be a finite nonnegative number")
    if args.m < 1:
        raise ConfigError("--m must be a positive integer")
    chain = spinchain.ChainSpec(args.m, args.alpha, args.beta, args.delta)
    times = [args.t_max * j / args.t_steps for j in range(args.t_steps + 1)]
    report = spinchain.chain_report(chain, times)
    if args.output == "csv":
        text = _csv_text(("t", "fidelity"),
                         [(repr(s["t"]), repr(s["fidelity"])) for s in report["fidelity_samples"]])
    elif args.output == "pretty":
        lines = [f"couplings: {' '.join(f'{j:.12g}' for j in report['couplings'])}",
                 f"eigenvalues: {' '.join(f'{v:.12g}' for v in report['eigenvalues'])}"]
        lines += [f"t={s['t']:.6g} fidelity={s['fidelity']:.12f}" for s in report["fidelity_samples"]]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(report, indent=2) + "\n"
    _emit(args, text)
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "check": cmd_check, "orthogonality": cmd_orthogonality,
            "chain": cmd_chain}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except (ConfigError, InvalidParameters) as exc:
        print(f"askey-ladder: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (AskeyError, ZeroDivisionError, OSError) as exc:
        print(f"askey-ladder: runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
