"""Text formats for symmetric tensors and decompositions.

Tensor files come in two forms. The orbit form lists one line per distinct
entry, with 1-based indices::

    symtensor 3 2
    1 1 1 24
    2 1 1 18

The dense form lists all ``n**d`` values in first-index-fastest order::

    dense 3 2
    24 18 18 12 18 12 12 6

Decomposition files hold one ``lambda v_1 ... v_n`` line per term::

    steroid-decomposition 3 2 4
    46.79355605... 0.8396... 0.5431...
    ...
    residual 1.82e-14

Lines starting with ``#`` and blank lines are ignored. Writers emit 17
significant digits so every value round-trips exactly.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .decomposition import Decomposition, check_symmetric_input
from .exceptions import ParseError
from .symtensor import SYM_TOL, new_symmetric, orbit_map, orbit_values


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(tokens, lineno, what):
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise ParseError(f"expected integer {what}, got {' '.join(tokens)!r}", lineno) from None


def _float(token, lineno):
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"expected a number, got {token!r}", lineno) from None


def parse_tensor(text: str, sym_tol: float = SYM_TOL) -> np.ndarray:
    """Parse either tensor form from a string.

    Raises
    ------
    ParseError
        Malformed content; the message carries the line number.
    SymmetryError
        A dense payload that is not symmetric within ``sym_tol``.
    """
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty tensor file", 1)
    lineno, head = lines[0]
    if len(head) != 3 or head[0] not in ("symtensor", "dense"):
        raise ParseError("header must be 'symtensor <d> <n>' or 'dense <d> <n>'", lineno)
    d, n = _ints(head[1:], lineno, "order and dimension")
    if d < 1 or n < 1:
        raise ParseError("order and dimension must be positive", lineno)

    if head[0] == "dense":
        values = [_float(tok, ln) for ln, toks in lines[1:] for tok in toks]
        if len(values) != n**d:
            raise ParseError(f"expected {n**d} values, found {len(values)}", lines[-1][0])
        t = np.asarray(values).reshape((n,) * d, order="F")
        return check_symmetric_input(t, sym_tol)

    entries = {}
    for ln, toks in lines[1:]:
        if len(toks) != d + 1:
            raise ParseError(f"expected {d} indices and a value", ln)
        idx = _ints(toks[:d], ln, "indices")
        if any(i < 1 or i > n for i in idx):
            raise ParseError(f"index {tuple(idx)} out of range [1, {n}]", ln)
        key, value = tuple(sorted(idx, reverse=True)), _float(toks[d], ln)
        if key in entries and entries[key] != value:
            raise ParseError(f"conflicting values on the orbit of {key}", ln)
        entries[key] = value
    return new_symmetric(d, n, entries)


def read_tensor(path, sym_tol: float = SYM_TOL) -> np.ndarray:
    return parse_tensor(Path(path).read_text(), sym_tol)


def format_tensor(t) -> str:
    """Orbit-form text: nonzero orbits only, indices sorted non-increasingly."""
    t = np.asarray(t, dtype=float)
    d, n = t.ndim, t.shape[0]
    reps = orbit_map(n, d).reps
    vals = orbit_values(t)
    out = [f"symtensor {d} {n}"]
    for rep, val in zip(reps, vals):
        if val != 0:
            out.append(" ".join(str(int(i) + 1) for i in rep) + " " + _fmt(val))
    return "\n".join(out) + "\n"


def write_tensor(path, t) -> None:
    Path(path).write_text(format_tensor(t))


def format_decomposition(dec: Decomposition) -> str:
    out = [f"steroid-decomposition {dec.order} {dec.dim} {dec.rank}"]
    for lam, v in zip(dec.coefficients, dec.vectors):
        out.append(" ".join(_fmt(x) for x in (lam, *v)))
    if not dec.converged:
        out.append("# unconverged")
    out.append(f"residual {_fmt(dec.residual_norm)}")
    return "\n".join(out) + "\n"


def write_decomposition(path, dec: Decomposition) -> None:
    Path(path).write_text(format_decomposition(dec))


def parse_decomposition(text: str) -> Decomposition:
    """Parse a decomposition file. Report and iteration data are not stored."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty decomposition file", 1)
    lineno, head = lines[0]
    if len(head) != 4 or head[0] != "steroid-decomposition":
        raise ParseError("header must be 'steroid-decomposition <d> <n> <R>'", lineno)
    d, n, r = _ints(head[1:], lineno, "header fields")
    body = lines[1:]
    if not body or body[-1][1][0] != "residual" or len(body[-1][1]) != 2:
        raise ParseError("missing 'residual <value>' trailer", body[-1][0] if body else lineno)
    residual = _float(body[-1][1][1], body[-1][0])
    terms = body[:-1]
    if len(terms) != r:
        raise ParseError(f"header announces {r} terms, found {len(terms)}", lineno)
    rows = []
    for ln, toks in terms:
        if len(toks) != n + 1:
            raise ParseError(f"expected lambda and {n} vector entries", ln)
        rows.append([_float(x, ln) for x in toks])
    rows = np.asarray(rows, dtype=float).reshape(r, n + 1)
    converged = "# unconverged" not in text
    return Decomposition(d, n, rows[:, 0].copy(), rows[:, 1:].copy(), residual,
                         converged=converged)


def read_decomposition(path) -> Decomposition:
    return parse_decomposition(Path(path).read_text())
