"""Command-line front end: ``noonsim <command> [options]``.

Every command writes one CSV (header line plus rows, floats with 17
significant digits) to ``--out`` or stdout. Exit codes: 0 ok, 2 state-file
parse error, 3 state validation error, 4 numerical error, 5 bad arguments.
"""

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from .dephasing import DephasingParams, evolve_analytic
from .errors import ArgumentError, NumericalError, ParseError, ValidationFailed
from .interferometry import fringe_curve, t_crit, visibility_curve
from .partial_transpose import esd_probe, pt_spectrum_analytic
from .state_core import make_noon
from .stateio import fmt, parse_state_file

COMMANDS = ("evolve", "pt-spectrum", "negativity-scan", "visibility-scan", "tcrit", "fringe")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4
EXIT_ARGS = 5

# reserved for randomized runs; no current command reads it
SEED_ENV = "NOONSIM_SEED"

HEADERS = {
    "evolve": "t,k,m,re,im",
    "pt-spectrum": "index,eigenvalue,provenance",
    "negativity-scan": "t,negativity,min_eig,log_bound_exponent,entangled,float_underflow",
    "visibility-scan": "t,visibility,dosage_max,dosage_min",
    "fringe": "phi,dosage",
    "tcrit": "n,gamma_eff,v_crit,t_crit",
}


@dataclass(frozen=True)
class SweepSpec:
    """One fully resolved CLI run.

    ``n_total`` is a tuple so ``tcrit`` can tabulate several N at once; every
    other command takes exactly one entry. Single-time commands (pt-spectrum,
    fringe) use the last grid time.
    """

    command: str
    n_total: tuple
    gamma1: float
    gamma2: float
    t_grid: tuple
    phi_samples: int | None
    v_crit: float | None
    state_source: str
    output_path: str | None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ArgumentError(f"unknown command {self.command!r}")
        if not self.t_grid:
            raise ArgumentError("empty time grid")
        if self.t_grid[0] < 0 or any(b <= a for a, b in zip(self.t_grid, self.t_grid[1:])):
            raise ArgumentError("time grid must be nonnegative and strictly increasing")
        if self.command != "tcrit" and len(self.n_total) > 1:
            raise ArgumentError(f"{self.command} takes a single --n")
        if not (self.state_source.startswith("noon:") or self.state_source.startswith("file:")):
            raise ArgumentError("--state must be noon:<phase> or file:<path>")

    @property
    def params(self):
        return DephasingParams(self.gamma1, self.gamma2)


def make_t_grid(t_start, t_end, t_steps):
    if t_start < 0 or t_end < t_start or t_steps < 1:
        raise ArgumentError("need 0 <= t_start <= t_end and t_steps >= 1")
    if t_steps == 1:
        return (float(t_start),)
    return tuple(float(t) for t in np.linspace(t_start, t_end, t_steps))


def load_state(spec):
    kind, _, value = spec.state_source.partition(":")
    if kind == "file":
        state = parse_state_file(value)
        if spec.n_total and spec.n_total[0] != state.n_total:
            raise ArgumentError(f"--n {spec.n_total[0]} disagrees with N={state.n_total} in {value}")
        return state
    if not spec.n_total:
        raise ArgumentError("--n is required with a noon state")
    try:
        phase = float(value) if value else 0.0
    except ValueError:
        raise ArgumentError(f"bad NOON phase {value!r}") from None
    return make_noon(spec.n_total[0], phase)


def _bool(x):
    return "true" if x else "false"


def render(spec):
    """Build the CSV text for ``spec`` (no file I/O)."""
    p = spec.params
    rows = [HEADERS[spec.command]]
    cmd = spec.command

    if cmd == "tcrit":
        if spec.v_crit is None:
            raise ArgumentError("tcrit needs --v-crit")
        if not spec.n_total:
            raise ArgumentError("tcrit needs --n")
        for n in spec.n_total:
            tc = t_crit(n, p.gamma_eff, spec.v_crit)
            rows.append(f"{n},{fmt(p.gamma_eff)},{fmt(spec.v_crit)},{fmt(tc)}")
        return "\n".join(rows) + "\n"

    s0 = load_state(spec)
    if cmd == "evolve":
        for t in spec.t_grid:
            s = evolve_analytic(s0, p, t)
            for k in range(s.dim):
                for m in range(k, s.dim):
                    v = s.rho[k, m]
                    rows.append(f"{fmt(t)},{k},{m},{fmt(v.real)},{fmt(v.imag)}")
    elif cmd == "pt-spectrum":
        spec_pt = pt_spectrum_analytic(evolve_analytic(s0, p, spec.t_grid[-1]))
        for i, (ev, label) in enumerate(zip(spec_pt.all_eigenvalues, spec_pt.provenance)):
            rows.append(f"{i},{fmt(ev)},{label}")
    elif cmd == "negativity-scan":
        for pt in esd_probe(s0, p, spec.t_grid):
            rows.append(",".join([
                fmt(pt.t), fmt(pt.negativity), fmt(pt.min_eigenvalue),
                fmt(pt.log_bound_exponent), _bool(pt.entangled), _bool(pt.float_underflow),
            ]))
    elif cmd == "visibility-scan":
        for rec in visibility_curve(s0, p, spec.t_grid, spec.phi_samples):
            rows.append(f"{fmt(rec.t)},{fmt(rec.v)},{fmt(rec.dosage_max)},{fmt(rec.dosage_min)}")
    elif cmd == "fringe":
        t = spec.t_grid[-1]
        n = s0.n_total
        samples = spec.phi_samples if spec.phi_samples is not None else 8 * n
        if samples < 1:
            raise ArgumentError("--phi-samples must be >= 1")
        curve = fringe_curve(evolve_analytic(s0, p, t), samples, t)
        for phi, d in zip(curve.phi_grid, curve.values):
            rows.append(f"{fmt(phi)},{fmt(d)}")
    return "\n".join(rows) + "\n"


def run(spec, stdout=None):
    """Execute ``spec``; returns the process exit code."""
    stdout = sys.stdout if stdout is None else stdout
    try:
        text = render(spec)
    except ParseError as exc:
        return _fail(EXIT_PARSE, f"parse error: {exc}")
    except ValidationFailed as exc:
        return _fail(EXIT_VALIDATION, str(exc))
    except NumericalError as exc:
        return _fail(EXIT_NUMERICAL, f"numerical error: {exc}")
    except (ArgumentError, OSError) as exc:
        return _fail(EXIT_ARGS, str(exc))
    if spec.output_path in (None, "-"):
        stdout.write(text)
    else:
        try:
            with open(spec.output_path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            return _fail(EXIT_ARGS, str(exc))
    return EXIT_OK


def _fail(code, message):
    print(f"noonsim: {message}", file=sys.stderr)
    return code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgumentError(message)


def _n_list(text):
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --n value {text!r}") from None
    return values


def build_parser():
    parser = _Parser(prog="noonsim", description="Dephasing of two-mode N-photon states.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=_n_list, default=(),
                        help="photon number N (tcrit accepts a comma list)")
    parser.add_argument("--gamma1", type=float, default=0.0)
    parser.add_argument("--gamma2", type=float, default=0.0)
    parser.add_argument("--state", default="noon:0", help="noon:<phase> or file:<path>")
    parser.add_argument("--t-start", type=float, default=0.0)
    parser.add_argument("--t-end", type=float, default=None)
    parser.add_argument("--t-steps", type=int, default=1)
    parser.add_argument("--t-list", default=None, help="explicit comma-separated times")
    parser.add_argument("--phi-samples", type=int, default=None, help="default 8N")
    parser.add_argument("--v-crit", type=float, default=None)
    parser.add_argument("--out", default=None, help="output CSV path (default stdout)")
    return parser


def spec_from_args(argv):
    args = build_parser().parse_args(argv)
    if args.t_list is not None:
        try:
            t_grid = tuple(float(x) for x in args.t_list.split(","))
        except ValueError:
            raise ArgumentError(f"bad --t-list {args.t_list!r}") from None
    else:
        t_end = args.t_start if args.t_end is None else args.t_end
        t_grid = make_t_grid(args.t_start, t_end, args.t_steps)
    if any(not math.isfinite(t) for t in t_grid):
        raise ArgumentError("times must be finite")
    return SweepSpec(
        command=args.command,
        n_total=args.n,
        gamma1=args.gamma1,
        gamma2=args.gamma2,
        t_grid=t_grid,
        phi_samples=args.phi_samples,
        v_crit=args.v_crit,
        state_source=args.state,
        output_path=args.out,
    )


def main(argv=None, stdout=None):
    try:
        spec = spec_from_args(sys.argv[1:] if argv is None else argv)
        spec.params  # validates the rates up front
    except ArgumentError as exc:
        return _fail(EXIT_ARGS, str(exc))
    return run(spec, stdout)


if __name__ == "__main__":
    sys.exit(main())
