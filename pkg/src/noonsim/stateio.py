"""Line-oriented state files and CSV formatting.

State file format::

    # comment
    N 3
    rho 0 0 0.5 0.0
    rho 0 3 0.5 0.0
    rho 3 3 0.5 0.0

Entries are given for k <= m only; the lower triangle is the conjugate.
Unlisted entries are zero.
"""

import numpy as np

from .errors import ParseError, ValidationFailed
from .state_core import TwoModeNState, validate


def fmt(x):
    """Float with 17 significant digits (round-trips every double).

    Integral values keep a trailing ``.0`` so columns read as floats.
    """
    text = format(float(x), ".17g")
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def parse_state_text(text, check=True):
    n = None
    entries = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "N":
            if n is not None:
                raise ParseError(line_no, "duplicate N header")
            if len(parts) != 2:
                raise ParseError(line_no, "expected 'N <int>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(line_no, f"N must be an integer, got {parts[1]!r}") from None
            if n < 1:
                raise ParseError(line_no, f"N must be >= 1, got {n}")
        elif parts[0] == "rho":
            if n is None:
                raise ParseError(line_no, "rho entry before N header")
            if len(parts) != 5:
                raise ParseError(line_no, "expected 'rho <k> <m> <re> <im>'")
            try:
                k, m = int(parts[1]), int(parts[2])
                value = complex(float(parts[3]), float(parts[4]))
            except ValueError:
                raise ParseError(line_no, "malformed number") from None
            if not (0 <= k <= n and 0 <= m <= n):
                raise ParseError(line_no, f"index out of range for N={n}: ({k}, {m})")
            if k > m:
                raise ParseError(line_no, f"entries must have k <= m, got ({k}, {m})")
            if (k, m) in entries:
                raise ParseError(line_no, f"duplicate entry ({k}, {m})")
            entries[k, m] = value
        else:
            raise ParseError(line_no, f"unknown record {parts[0]!r}")
    if n is None:
        raise ParseError(0, "missing N header")

    rho = np.zeros((n + 1, n + 1), dtype=np.complex128)
    for (k, m), value in entries.items():
        rho[k, m] = value
        if k != m:
            rho[m, k] = value.conjugate()
    state = TwoModeNState(n, rho)
    if check:
        report = validate(state)
        if not report.ok:
            raise ValidationFailed(report)
    return state


def parse_state_file(path, check=True):
    with open(path, encoding="utf-8") as fh:
        return parse_state_text(fh.read(), check=check)


def serialize_state(s):
    """Canonical text: header, then nonzero upper-triangle entries row by row."""
    lines = [f"N {s.n_total}"]
    for k in range(s.dim):
        for m in range(k, s.dim):
            v = s.rho[k, m]
            if v != 0:
                lines.append(f"rho {k} {m} {fmt(v.real)} {fmt(v.imag)}")
    return "\n".join(lines) + "\n"


def write_state_file(s, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_state(s))
