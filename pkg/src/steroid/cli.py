"""Command-line interface: ``steroid {decompose,embed,verify,generate}``.

Exit codes: 0 success, 1 verification failure, 2 parse or shape error,
3 symmetry error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import io, oracle
from .decomposition import HEAD_MODES, decompose
from .exceptions import ParseError, ShapeError, SymmetryError
from .symtensor import embed, from_orbit_values, frobenius_norm, orbit_map

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_SYMMETRY = 0, 1, 2, 3

logger = logging.getLogger("steroid")


@dataclass
class RunConfig:
    command: str
    input: Path | None = None
    decomposition: Path | None = None
    out: Path | None = None
    tau: float = 1e-10
    max_tail_iters: int = 10
    seed: int = 0
    format: str = "text"
    head: str = "ls"
    dim: int | None = None
    order: int | None = None
    int_range: tuple[int, int] | None = None

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_decompose(cfg: RunConfig) -> int:
    t = io.read_tensor(cfg.input)
    dec = decompose(t, tau=cfg.tau, max_tail_iters=cfg.max_tail_iters, head=cfg.head)
    # the report goes to stderr when stdout carries the decomposition itself
    report = sys.stdout if cfg.out is not None else sys.stderr
    rows = dec.report.rows()
    if cfg.format == "text":
        print(f"decomposing order-{dec.order} tensor of dimension {dec.dim} "
              f"(r_max={dec.report.r_max})", file=report)
    for row in rows:
        print(row, file=report)
    status = "converged" if dec.converged else "unconverged"
    if cfg.format == "rows":
        print(f"status={status} terms={dec.rank} tail_iters={dec.iterations} "
              f"residual={dec.residual_norm:.6e}", file=report)
    else:
        print(f"{status}: {dec.rank} terms, {dec.iterations} tail iterations, "
              f"residual {dec.residual_norm:.6e}", file=report)
    _emit(io.format_decomposition(dec), cfg.out)
    return EXIT_OK


def cmd_embed(cfg: RunConfig) -> int:
    t = io.read_tensor(cfg.input)
    _emit(io.format_tensor(embed(t)), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    t = io.read_tensor(cfg.input)
    dec = io.read_decomposition(cfg.decomposition)
    if (dec.order, dec.dim) != (t.ndim, t.shape[0]):
        raise ShapeError(
            f"decomposition is order {dec.order}, dim {dec.dim}; "
            f"tensor is order {t.ndim}, dim {t.shape[0]}"
        )
    rep = oracle.verify_decomposition(t, dec)
    ok = rep.reconstruction_error <= cfg.tau * max(1.0, frobenius_norm(t))
    print(f"reconstruction_error={rep.reconstruction_error:.6e} "
          f"symmetry_violation={rep.max_symmetry_violation:.3e} "
          f"rank_bound_holds={rep.monomial_rank_bound_holds} "
          f"result={'ok' if ok else 'fail'}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_generate(cfg: RunConfig) -> int:
    if not cfg.dim or not cfg.order or cfg.dim < 1 or cfg.order < 1:
        raise ShapeError("generate needs positive --dim and --order")
    rng = np.random.default_rng(cfg.seed)
    count = len(orbit_map(cfg.dim, cfg.order).reps)
    if cfg.int_range is not None:
        lo, hi = cfg.int_range
        values = rng.integers(lo, hi, size=count, endpoint=True).astype(float)
    else:
        values = rng.standard_normal(count)
    t = from_orbit_values(values, cfg.dim, cfg.order)
    _emit(io.format_tensor(t), cfg.out)
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "embed": cmd_embed,
    "verify": cmd_verify,
    "generate": cmd_generate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steroid",
        description="Decompose symmetric tensors into symmetric rank-1 terms.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tau=True):
        p.add_argument("--out", type=Path, help="output file (default: stdout)")
        if tau:
            p.add_argument("--tau", type=float, default=1e-10,
                           help="relative residual tolerance (default: 1e-10)")

    p = sub.add_parser("decompose", help="decompose a tensor file")
    p.add_argument("input", type=Path)
    common(p)
    p.add_argument("--max-iters", dest="max_tail_iters", type=int, default=10)
    p.add_argument("--format", choices=("text", "rows"), default="text")
    p.add_argument("--head", choices=HEAD_MODES, default="ls")

    p = sub.add_parser("embed", help="embed a tensor into power-of-two order")
    p.add_argument("input", type=Path)
    common(p, tau=False)

    p = sub.add_parser("verify", help="check a decomposition against a tensor")
    p.add_argument("input", type=Path)
    p.add_argument("decomposition", type=Path)
    common(p)

    p = sub.add_parser("generate", help="write a random symmetric tensor")
    p.add_argument("-n", "--dim", type=int, required=True)
    p.add_argument("-d", "--order", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--int-range", type=int, nargs=2, metavar=("LO", "HI"),
                   help="uniform integers in [LO, HI] instead of standard normals")
    common(p, tau=False)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    if fields.get("int_range") is not None:
        fields["int_range"] = tuple(fields["int_range"])
    try:
        cfg = RunConfig(**fields)
        return COMMANDS[cfg.command](cfg)
    except SymmetryError as exc:
        print(f"steroid: symmetry error: {exc}", file=sys.stderr)
        return EXIT_SYMMETRY
    except (ParseError, ShapeError, ValueError, OSError) as exc:
        print(f"steroid: error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
