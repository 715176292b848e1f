"""Command-line front end: ``hoffman --generate box:3 --method cover``."""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import generators
from .core import (NORMS, TOL_ZERO, BudgetExceeded, CoverCertificate,
                   EmptyPolyhedronError, HoffmanError, HoffmanResult, IndexSet,
                   NumericalFailure, PreconditionFailed, ZeroMatrixError,
                   as_matrix)
from .cover import DEFAULT_MAX_STEPS, cover_algorithm, verify_certificate
from .enumeration import brute_force, enum_solve
from .lpcc import lpcc_solve
from .subproblems import distance_to_polyhedron, fast_path, residual

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4

CLI_METHODS = ("cover", "lpcc", "enum", "bruteforce", "auto")
GENERATORS = {"box": generators.box, "simplex": generators.simplex,
              "l1ball": generators.l1ball}


class ParseError(HoffmanError):
    """Malformed input file; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
        self.line = line
        self.column = column


class DimensionError(ParseError):
    pass


@dataclass(frozen=True)
class RunConfig:
    input: Optional[str] = None
    format: str = "csv"
    generate: Optional[str] = None
    method: str = "auto"
    max_steps: int = DEFAULT_MAX_STEPS
    tol_zero: float = TOL_ZERO
    json: Optional[str] = None
    verify: Optional[str] = None
    bound_check: Optional[str] = None

    def __post_init__(self):
        if (self.input is None) == (self.generate is None):
            raise ValueError("exactly one of --input and --generate is required")
        if self.method not in CLI_METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.format not in ("csv", "mtx"):
            raise ValueError(f"unknown format {self.format!r}")


def _parse_csv(text: str) -> np.ndarray:
    rows = []
    for lineno, row in enumerate(csv.reader(text.splitlines()), start=1):
        if not row or all(not f.strip() for f in row):
            continue
        vals = []
        for col, field in enumerate(row, start=1):
            try:
                x = float(field)
            except ValueError:
                raise ParseError(f"not a number: {field.strip()!r}", lineno, col) from None
            if not math.isfinite(x):
                raise ParseError(f"non-finite entry {field.strip()!r}", lineno, col)
            vals.append(x)
        if rows and len(vals) != len(rows[0]):
            raise DimensionError(f"row has {len(vals)} entries, expected {len(rows[0])}", lineno)
        rows.append(vals)
    if not rows:
        raise ParseError("empty matrix")
    return np.array(rows, dtype=float)


def _parse_mtx(path: str) -> np.ndarray:
    import scipy.io
    import scipy.sparse

    with open(path) as fh:
        header = fh.readline()
    parts = header.lower().split()
    if len(parts) < 5 or parts[0] != "%%matrixmarket" or parts[1] != "matrix":
        raise ParseError("missing '%%MatrixMarket matrix' header", 1, 1)
    if parts[2] not in ("array", "coordinate"):
        raise ParseError(f"unsupported layout {parts[2]!r}", 1)
    if parts[3] not in ("real", "integer"):
        raise ParseError(f"unsupported field {parts[3]!r}", 1)
    try:
        M = scipy.io.mmread(path)
    except (ValueError, IndexError, OSError) as exc:
        raise ParseError(f"malformed MatrixMarket file: {exc}") from None
    if scipy.sparse.issparse(M):
        M = M.toarray()
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.size == 0:
        raise DimensionError("matrix must be nonempty and 2-d")
    if not np.all(np.isfinite(M)):
        raise ParseError("non-finite entry")
    return M


def parse_matrix(path: str, format: str = "csv") -> np.ndarray:
    """Read a dense matrix from CSV or MatrixMarket (``mtx``/``matrixmarket``)."""
    if format == "csv":
        with open(path) as fh:
            return _parse_csv(fh.read())
    if format in ("mtx", "matrixmarket"):
        return _parse_mtx(path)
    raise ValueError(f"unknown format {format!r}")


def parse_generator(spec: str) -> np.ndarray:
    """``name:n[:seed]`` with name in box, simplex, l1ball, random, feasible.

    ``random`` and ``feasible`` take ``m,n`` as the size (``random:6,3:7``).
    """
    parts = spec.split(":")
    if len(parts) not in (2, 3):
        raise ParseError(f"generator spec {spec!r} is not name:n[:seed]")
    name, size = parts[0], parts[1]
    try:
        seed = int(parts[2]) if len(parts) == 3 else 0
        if name in ("random", "feasible"):
            m, n = (int(s) for s in size.split(","))
            fn = generators.random_instance if name == "random" else generators.strictly_feasible_instance
            return fn(m, n, seed)
        n = int(size)
    except ValueError:
        raise ParseError(f"bad size or seed in generator spec {spec!r}") from None
    if name not in GENERATORS:
        raise ParseError(f"unknown generator {name!r}")
    return GENERATORS[name](n)


def solve(A, method: str, max_steps: int = DEFAULT_MAX_STEPS, tol_zero: float = TOL_ZERO) -> HoffmanResult:
    if method == "cover":
        return cover_algorithm(A, max_steps=max_steps, tol_zero=tol_zero)
    if method == "lpcc":
        return lpcc_solve(A)
    if method == "enum":
        return enum_solve(A, max_steps=max_steps)
    if method == "bruteforce":
        return brute_force(A, tol_zero=tol_zero)
    if method == "auto":
        res = fast_path(A, tol_zero=tol_zero)
        if res is not None:
            m, n = as_matrix(A).shape
            full = IndexSet.full(m)
            res.certificate = CoverCertificate(m, n, (full,), (), res.value, full,
                                               (1.0 / res.value,), 1, 1, "fastpath")
            return res
        return cover_algorithm(A, max_steps=max_steps, tol_zero=tol_zero)
    raise ValueError(f"unknown method {method!r}")


# JSON with every float written as %.17g

def _dumps(obj) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError("non-finite value in certificate")
        s = "%.17g" % x
        return s if any(c in s for c in ".en") else s + ".0"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def result_to_json(A, res: HoffmanResult) -> dict:
    m, n = as_matrix(A).shape
    cert = res.certificate
    return {
        "m": m,
        "n": n,
        "norms": dict(NORMS),
        "H": float(res.value),
        "method": res.method,
        "argmax_J": list(res.argmax) if res.argmax is not None else None,
        "F": [list(J) for J in cert.F] if cert is not None else None,
        "I": [list(J) for J in cert.I] if cert is not None else None,
        "rho_F": [float(r) for r in cert.rho_F] if cert is not None else None,
        "iterations": int(res.iterations),
        "lp_solves": int(res.lp_solves),
    }


def write_json(path: str, A, res: HoffmanResult) -> None:
    with open(path, "w") as fh:
        fh.write(_dumps(result_to_json(A, res)) + "\n")


def certificate_from_json(data: dict) -> CoverCertificate:
    try:
        m, n = int(data["m"]), int(data["n"])
        if data.get("F") is None or data.get("I") is None:
            raise ParseError(f"method {data.get('method')!r} emits no covering certificate")
        F = tuple(IndexSet(m, S) for S in data["F"])
        I = tuple(IndexSet(m, S) for S in data["I"])
        arg = data.get("argmax_J")
        return CoverCertificate(m, n, F, I, float(data["H"]),
                                IndexSet(m, arg) if arg is not None else None,
                                tuple(float(r) for r in data.get("rho_F") or ()),
                                int(data.get("iterations", 0)), int(data.get("lp_solves", 0)),
                                data.get("method", "cover"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed certificate: {exc}") from None


def read_certificate(path: str) -> CoverCertificate:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return certificate_from_json(data)


def read_bound_pair(path: str):
    """Two nonblank lines: ``b`` then ``u``, comma- or space-separated."""
    vecs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                vecs.append(np.array([float(t) for t in line.replace(",", " ").split()]))
            except ValueError:
                raise ParseError("not a number", lineno) from None
    if len(vecs) != 2:
        raise ParseError(f"expected 2 vectors (b, u), found {len(vecs)}")
    return vecs[0], vecs[1]


def _load(cfg: RunConfig) -> np.ndarray:
    if cfg.generate is not None:
        return as_matrix(parse_generator(cfg.generate))
    return as_matrix(parse_matrix(cfg.input, cfg.format))


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    err = sys.stderr
    try:
        A = _load(cfg)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ZeroMatrixError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE

    try:
        if cfg.verify is not None:
            cert = read_certificate(cfg.verify)
            if cert.method == "enum":
                print("invalid: enum certificates record row rank, not membership in S(A)", file=out)
                return EXIT_PRECONDITION
            t0 = time.perf_counter()
            ver = verify_certificate(A, cert, tol_zero=cfg.tol_zero)
            print(f"{'valid' if ver.ok else 'invalid'}: {ver.reason} "
                  f"({time.perf_counter() - t0:.3f} s)", file=out)
            return EXIT_OK if ver.ok else EXIT_PRECONDITION

        res = solve(A, cfg.method, cfg.max_steps, cfg.tol_zero)
        m, n = A.shape
        print(f"H = {res.value:.12g}", file=out)
        print(f"method = {res.method}  m = {m}  n = {n}", file=out)
        print(f"iterations = {res.iterations}  lp_solves = {res.lp_solves}"
              + (f"  nodes = {res.nodes}" if res.nodes else ""), file=out)
        if res.argmax is not None:
            print(f"argmax J = {res.argmax}", file=out)
        print(f"wall time = {res.wall_time:.3f} s", file=out)
        if cfg.json is not None:
            write_json(cfg.json, A, res)

        if cfg.bound_check is not None:
            b, u = read_bound_pair(cfg.bound_check)
            if b.size != m or u.size != n:
                raise DimensionError(f"bound-check vectors need lengths {m} and {n}")
            dist = distance_to_polyhedron(A, b, u)
            rhs = res.value * residual(A, b, u)
            ok = dist <= rhs + 1e-6 * (1.0 + float(np.max(np.abs(A))))
            print(f"bound check: dist = {dist:.12g}  H*residual = {rhs:.12g}  "
                  f"{'holds' if ok else 'VIOLATED'}", file=out)
            if not ok:
                return EXIT_PRECONDITION
        return EXIT_OK
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=err)
        print(f"bounds: {exc.lower:.12g} <= H <= {exc.upper:.12g}", file=out)
        return EXIT_BUDGET
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=err)
        return EXIT_NUMERICAL
    except (PreconditionFailed, EmptyPolyhedronError, HoffmanError) as exc:
        print(f"precondition failed: {exc}", file=err)
        return EXIT_PRECONDITION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hoffman",
        description="Hoffman constant of Ax <= b (l1 domain, l-infinity codomain).")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="matrix file")
    src.add_argument("--generate", metavar="SPEC",
                     help="name:n[:seed], name in box, simplex, l1ball; or random:m,n:seed, feasible:m,n:seed")
    p.add_argument("--format", choices=("csv", "mtx"), default="csv")
    p.add_argument("--method", choices=CLI_METHODS, default="auto")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS, metavar="N")
    p.add_argument("--tol-zero", type=float, default=TOL_ZERO, metavar="X")
    p.add_argument("--json", metavar="PATH", help="write the result and certificate as JSON")
    p.add_argument("--verify", metavar="PATH", help="check a JSON certificate against the matrix")
    p.add_argument("--bound-check", metavar="PATH", help="file with b and u, one vector per line")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if ns.max_steps < 1 or not ns.tol_zero > 0:
        print("error: --max-steps and --tol-zero must be positive", file=sys.stderr)
        return EXIT_USAGE
    cfg = RunConfig(input=ns.input, format=ns.format, generate=ns.generate, method=ns.method,
                    max_steps=ns.max_steps, tol_zero=ns.tol_zero, json=ns.json,
                    verify=ns.verify, bound_check=ns.bound_check)
    return run(cfg)
