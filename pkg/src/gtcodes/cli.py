"""
Command-line front end.

    gtc construct --A a.txt --D d.txt
    gtc analyze   --A a.txt --D d.txt [--dist-limit N] [--json]
    gtc encode    --A a.txt --D d.txt --message "1 0 1 1 0"
    gtc decode    --A a.txt --D d.txt --received r.txt
    gtc puncture  --A a.txt --D d.txt --mask "1,2 2,3" | --pos r,c ... | --col k | --row k
    gtc search    --A a.txt [--trials N --seed N --objective distance|dimension --top N]
    gtc autgroup  --A a.txt [--D d.txt]

Matrix files: first non-comment line ``p r c``, then r lines of c integers
in [0, p). Lines starting with ``#`` and blank lines are ignored.

Reports go to stdout (or ``--out``), diagnostics to stderr. Exit codes:
0 success, 2 parse error, 3 precondition violation, 4 enumeration limit,
5 theorem-diagnostic failure, 6 uncorrectable received word.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

from . import analysis, code as core, graphs
from .puncture import PositionMask, puncture, punctured_minimum_distance
from .errors import (
    AmbiguousSyndromeError,
    EnumerationLimitError,
    GtcError,
    MatrixParseError,
    ModulusError,
    PreconditionError,
    TheoremViolation,
    UncorrectableError,
)
from .galois import Matrix, check_modulus

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_LIMIT = 4
EXIT_THEOREM = 5
EXIT_UNCORRECTABLE = 6

COMMANDS = ("construct", "analyze", "encode", "decode", "puncture", "search", "autgroup")

_TOKEN = re.compile(r"\S+")


def parse_matrix_text(text: str, source: str = "<string>") -> Matrix:
    rows: List[List[int]] = []
    header = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        values = []
        for m in _TOKEN.finditer(line):
            tok = m.group()
            if not re.fullmatch(r"[+-]?\d+", tok):
                raise MatrixParseError(f"{source}: {tok!r} is not a base-10 integer", lineno, m.start() + 1)
            values.append((int(tok), m.start() + 1))
        if header is None:
            if len(values) != 3:
                raise MatrixParseError(f"{source}: header must be 'p r c', got {len(values)} fields", lineno)
            (p, _), (r, rc), (c, cc) = values
            try:
                p = check_modulus(p)
            except ModulusError as exc:
                raise MatrixParseError(f"{source}: {exc}", lineno, values[0][1]) from None
            if r < 1:
                raise MatrixParseError(f"{source}: row count must be positive", lineno, rc)
            if c < 1:
                raise MatrixParseError(f"{source}: column count must be positive", lineno, cc)
            header = (p, r, c)
            continue
        p, r, c = header
        if len(rows) == r:
            raise MatrixParseError(f"{source}: more than the declared {r} rows", lineno)
        if len(values) != c:
            raise MatrixParseError(f"{source}: expected {c} entries, found {len(values)}", lineno)
        for x, col in values:
            if not 0 <= x < p:
                raise MatrixParseError(f"{source}: entry {x} outside [0, {p})", lineno, col)
        rows.append([x for x, _ in values])
    if header is None:
        raise MatrixParseError(f"{source}: missing header line 'p r c'")
    if len(rows) != header[1]:
        raise MatrixParseError(f"{source}: declared {header[1]} rows, found {len(rows)}")
    return Matrix(rows, header[0])


def parse_matrix_file(path) -> Matrix:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MatrixParseError(f"{path}: cannot read file ({exc.strerror})") from None
    return parse_matrix_text(text, str(path))


def format_matrix(M: Matrix) -> str:
    """Render M in the matrix file format."""
    lines = [f"{M.p} {M.rows} {M.cols}"]
    lines += [" ".join(str(x) for x in row) for row in M.tolist()]
    return "\n".join(lines) + "\n"


@dataclass
class RunConfig:
    command: str
    A: Optional[Path] = None
    D: Optional[Path] = None
    modulus: Optional[int] = None
    dist_limit: int = analysis.DEFAULT_DISTANCE_LIMIT
    invertible_budget: int = analysis.DEFAULT_INVERTIBLE_BUDGET
    trials: int = 100
    seed: int = 0
    objective: str = "distance"
    top: Optional[int] = None
    mask: Optional[str] = None
    positions: List[str] = field(default_factory=list)
    col: Optional[int] = None
    row: Optional[int] = None
    message: Optional[str] = None
    received: Optional[Path] = None
    json: bool = False
    out: Optional[Path] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise PreconditionError(f"unknown command {self.command!r}")
        if self.modulus is not None:
            check_modulus(self.modulus)


def _load(path: Optional[Path], name: str, cfg: RunConfig) -> Matrix:
    if path is None:
        raise PreconditionError(f"--{name} is required for '{cfg.command}'")
    M = parse_matrix_file(path)
    if cfg.modulus is not None and M.p != cfg.modulus:
        raise ModulusError(f"{path} is over F_{M.p} but --modulus is {cfg.modulus}")
    return M


def _load_pair(cfg: RunConfig):
    A = _load(cfg.A, "A", cfg)
    D = _load(cfg.D, "D", cfg)
    return A, D


def run_construct(cfg: RunConfig) -> dict:
    A, D = _load_pair(cfg)
    c = core.construct_code(A, D)
    return {
        "command": "construct",
        "p": c.p,
        "n": c.n,
        "length": c.length,
        "k": c.k,
        "parity_check_rank": c.length - c.k,
        "basis": [B.tolist() for B in c.basis],
    }


def run_analyze(cfg: RunConfig) -> dict:
    A, D = _load_pair(cfg)
    report = analysis.bound_report(A, D, dist_limit=cfg.dist_limit, invertible_budget=cfg.invertible_budget)
    return {"command": "analyze", **report.to_dict()}


def _parse_message(text: str) -> List[int]:
    try:
        return [int(t) for t in re.split(r"[,\s]+", text.strip()) if t]
    except ValueError:
        raise MatrixParseError(f"message {text!r} must be integers separated by spaces or commas") from None


def run_encode(cfg: RunConfig) -> dict:
    A, D = _load_pair(cfg)
    c = core.construct_code(A, D)
    if cfg.message is None:
        raise PreconditionError("--message is required for 'encode'")
    msg = _parse_message(cfg.message)
    if any(not 0 <= a < c.p for a in msg):
        raise MatrixParseError(f"message entries must lie in [0, {c.p})")
    B = core.encode(c, msg)
    return {"command": "encode", "p": c.p, "n": c.n, "k": c.k, "message": msg, "codeword": B.tolist()}


def run_decode(cfg: RunConfig) -> dict:
    A, D = _load_pair(cfg)
    if cfg.received is None:
        raise PreconditionError("--received is required for 'decode'")
    R = parse_matrix_file(cfg.received)
    c = core.construct_code(A, D)
    table = core.build_syndrome_table(c)
    B, E = core.correct_single_error(c, table, R)
    error = None
    if not E.is_zero():
        (r, col), = zip(*E.array.nonzero())
        error = {"row": int(r) + 1, "col": int(col) + 1, "magnitude": int(E.array[r, col])}
    return {
        "command": "decode",
        "p": c.p,
        "n": c.n,
        "k": c.k,
        "codeword": B.tolist(),
        "message": core.message_of(c, B),
        "error": error,
    }


def _mask_from(cfg: RunConfig, n: int) -> PositionMask:
    parts = []
    if cfg.mask:
        parts.append(cfg.mask)
    parts.extend(cfg.positions)
    if cfg.col is not None:
        parts.append(f"col={cfg.col}")
    if cfg.row is not None:
        parts.append(f"row={cfg.row}")
    if not parts:
        raise PreconditionError("puncture needs --mask, --pos, --col or --row")
    return PositionMask.parse(n, " ".join(parts))


def run_puncture(cfg: RunConfig) -> dict:
    A, D = _load_pair(cfg)
    c = core.construct_code(A, D)
    mask = _mask_from(cfg, c.n)
    pc = puncture(c, mask, strict=True)
    d = punctured_minimum_distance(pc, cfg.dist_limit) if pc.k else None
    return {
        "command": "puncture",
        "p": c.p,
        "n": c.n,
        "parent": {"length": c.length, "k": c.k},
        "mask": [list(rc) for rc in mask.one_based()],
        "length": pc.length,
        "k": pc.k,
        "d": d,
        "basis": [list(v) for v in pc.basis],
    }


def run_search(cfg: RunConfig) -> dict:
    A = _load(cfg.A, "A", cfg)
    result = analysis.search_twists(A, cfg.trials, cfg.seed, cfg.dist_limit, cfg.objective)
    payload = result.to_dict()
    if cfg.top is not None:
        payload["entries"] = payload["entries"][: cfg.top]
    return {"command": "search", "p": A.p, "n": A.rows, **payload}


def run_autgroup(cfg: RunConfig) -> dict:
    A = _load(cfg.A, "A", cfg)
    aut_a = graphs.automorphism_group(A)
    payload = {"command": "autgroup", "p": A.p, "n": A.rows, "aut_A": [list(g.image) for g in aut_a]}
    if cfg.D is not None:
        D = _load(cfg.D, "D", cfg)
        c = core.construct_code(A, D)
        aut_ad = graphs.automorphism_group(A @ D)
        for P in aut_a:
            for Q in aut_ad:
                graphs.verify_coordinate_action(c, P, Q)
        payload["aut_AD"] = [list(g.image) for g in aut_ad]
        payload["verified_pairs"] = len(aut_a) * len(aut_ad)
        payload["k"] = c.k
    return payload


RUNNERS = {
    "construct": run_construct,
    "analyze": run_analyze,
    "encode": run_encode,
    "decode": run_decode,
    "puncture": run_puncture,
    "search": run_search,
    "autgroup": run_autgroup,
}


def render_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _rows(M) -> str:
    return "\n".join("  " + " ".join(str(x) for x in row) for row in M)


def _perm(image) -> str:
    return "[" + ",".join(str(x) for x in image) + "]"


def render_text(payload: dict) -> str:
    cmd = payload["command"]
    p, n = payload["p"], payload["n"]
    out: List[str] = []
    if cmd == "construct":
        out.append(f"C(A,D) over F_{p}, n = {n}: length {payload['length']}, dimension {payload['k']}")
        for i, B in enumerate(payload["basis"], start=1):
            out.append(f"B_{i}:")
            out.append(_rows(B))
    elif cmd == "analyze":
        d = payload["d"] if payload["d"] is not None else ("-" if payload["k"] == 0 else "?")
        b = payload["bounds"]
        pc = payload["product_code"]
        out.append(f"C(A,D) over F_{p}, n = {n}: [{payload['length']}, {payload['k']}, {d}]")
        out.append(f"rank(A) = {payload['r_A']}, rank(AD) = {payload['r_AD']}")
        out.append(f"k <= n^2 - n*r_A + n*r_AD = {b['rank_bound']}")
        if b["nonscalar_bound"] is not None:
            out.append(f"k <= n^2 - 1 = {b['nonscalar_bound']}")
        if b["zero_product_bound"] is not None:
            out.append(f"AD = O: k <= n^2 - n*r_A = {b['zero_product_bound']}")
        out.append(f"product subcode: dim Ker(A) = {pc['k']}, dim Ker(D^t A^t) = {pc['k_prime']}, "
                   f"kk' = {pc['kk']}, dd' = {pc['dd'] if pc['dd'] is not None else '-'}")
        out.append(f"centralizer dimension dim C(A) = {payload['centralizer_dimension']}")
        if payload["invertible_codeword"] is None:
            out.append("invertible codeword: none found")
        else:
            out.append("invertible codeword:")
            out.append(_rows(payload["invertible_codeword"]))
    elif cmd == "encode":
        out.append(f"message {payload['message']} ->")
        out.append(_rows(payload["codeword"]))
    elif cmd == "decode":
        e = payload["error"]
        where = "none" if e is None else f"row {e['row']}, col {e['col']}, magnitude {e['magnitude']}"
        out.append(f"error: {where}")
        out.append("codeword:")
        out.append(_rows(payload["codeword"]))
        out.append(f"message: {payload['message']}")
    elif cmd == "puncture":
        d = payload["d"] if payload["d"] is not None else "-"
        mask = " ".join(f"({r},{c})" for r, c in payload["mask"])
        out.append(f"punctured at {mask}: [{payload['length']}, {payload['k']}, {d}] "
                   f"from parent [{payload['parent']['length']}, {payload['parent']['k']}]")
        for v in payload["basis"]:
            out.append("  " + " ".join(str(x) for x in v))
    elif cmd == "search":
        out.append(f"seed {payload['seed']}, {payload['trials']} trials, objective {payload['objective']}")
        for e in payload["entries"]:
            d = e["d"] if e["d"] is not None else "?"
            out.append(f"[{n * n}, {e['k']}, {d}]  D = {e['D']}")
    elif cmd == "autgroup":
        out.append(f"|Aut(A)| = {len(payload['aut_A'])}: " + " ".join(_perm(g) for g in payload["aut_A"]))
        if "aut_AD" in payload:
            out.append(f"|Aut(AD)| = {len(payload['aut_AD'])}: " + " ".join(_perm(g) for g in payload["aut_AD"]))
            out.append(f"all {payload['verified_pairs']} pairs (P,Q) preserve the code (k = {payload['k']})")
    return "\n".join(out) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gtc", description="Generalized twisted centralizer codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--A", dest="A", type=Path, help="matrix file for A")
        sp.add_argument("--D", dest="D", type=Path, help="matrix file for the twist D")
        sp.add_argument("--modulus", type=int, help="require this field modulus")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument("--out", type=Path, help="write the report here instead of stdout")
        sp.add_argument("-v", "--verbose", action="store_true")
        if name in ("analyze", "puncture", "search"):
            sp.add_argument("--dist-limit", type=int, default=analysis.DEFAULT_DISTANCE_LIMIT,
                            help="largest number of nonzero messages to enumerate")
        if name == "analyze":
            sp.add_argument("--invertible-budget", type=int, default=analysis.DEFAULT_INVERTIBLE_BUDGET)
        if name == "encode":
            sp.add_argument("--message", required=True, help='k field elements, e.g. "1 0 1"')
        if name == "decode":
            sp.add_argument("--received", type=Path, required=True, help="received matrix file")
        if name == "puncture":
            sp.add_argument("--mask", help='positions such as "1,2 2,3" or "col=4"')
            sp.add_argument("--pos", action="append", default=[], dest="positions", metavar="R,C")
            sp.add_argument("--col", type=int)
            sp.add_argument("--row", type=int)
        if name == "search":
            sp.add_argument("--trials", type=int, default=100)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--objective", choices=sorted(analysis.OBJECTIVES), default="distance")
            sp.add_argument("--top", type=int)
    return parser


def _exit_code(exc: GtcError) -> int:
    if isinstance(exc, MatrixParseError):
        return EXIT_PARSE
    if isinstance(exc, EnumerationLimitError):
        return EXIT_LIMIT
    if isinstance(exc, TheoremViolation):
        return EXIT_THEOREM
    if isinstance(exc, UncorrectableError):
        return EXIT_UNCORRECTABLE
    # precondition family, including d < 3 for decoding and non-codewords
    return EXIT_PRECONDITION


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    logging.captureWarnings(True)
    opts = {k: v for k, v in vars(args).items() if k != "verbose"}
    try:
        cfg = RunConfig(**opts)
        payload = RUNNERS[cfg.command](cfg)
    except UncorrectableError as exc:
        print(f"uncorrectable: {exc}", file=sys.stderr)
        if exc.syndrome is not None:
            print("syndrome:", file=sys.stderr)
            print(_rows(exc.syndrome.tolist()), file=sys.stderr)
        return EXIT_UNCORRECTABLE
    except AmbiguousSyndromeError as exc:
        print(f"ambiguous syndrome, cannot build a single-error syndrome table: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except GtcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc)
    text = render_json(payload) if cfg.json else render_text(payload)
    if cfg.out is not None:
        cfg.out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK
