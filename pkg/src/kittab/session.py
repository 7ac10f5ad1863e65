"""Session files: a tiny declarative language driving the library.

    ring R = QQ[x,y];          # or ZZ/32003[x0,x1]
    ideal I = x^2+y, x^5;
    matrix M = [[x,0],[0,y]];
    scalar s = 2;
    generic_kitt 2 I;

Statements end with ``;`` and ``#`` starts a comment.  Every diagnostic
carries the line and column where the offending text starts.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field

from . import generic, ideals
from .kitt import KittInput, g_condition, g_condition_heights, kitt, residual_check
from .ideals import Ideal
from .modules import PolyMatrix
from .report import VerificationReport, height_value
from .ring import (
    GF, QQ, DomainError, PolyParseError, PolyRing, PreconditionError, StructuralError,
)


class SessionError(Exception):
    """Parse-time problem: syntax, unknown identifiers, misplaced declarations."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col

    def to_dict(self) -> dict:
        return {"kind": "parse", "message": self.message, "line": self.line, "column": self.col}


@dataclass
class Statement:
    kind: str          # ring | ideal | matrix | scalar | command
    name: str
    args: list
    text: str
    line: int
    col: int
    arg_names: list = field(default_factory=list)


@dataclass
class Session:
    ring: PolyRing | None = None
    ring_name: str = ""
    values: dict = field(default_factory=dict)   # name -> (type, value)
    statements: list = field(default_factory=list)

    @property
    def commands(self) -> list:
        return [s for s in self.statements if s.kind == "command"]


# command name -> argument types; "int" accepts a literal or a scalar name,
# a trailing "?" marks an optional argument
SIGNATURES = {
    "gb": ["ideal"],
    "colon": ["ideal", "ideal"],
    "intersect": ["ideal", "ideal"],
    "dim": ["ideal"],
    "kitt": ["ideal", "ideal", "matrix?"],
    "generic_kitt": ["int", "ideal"],
    "generic_residual": ["int", "ideal"],
    "specialize": ["ideal", "matrix"],
    "residual_check": ["ideal", "ideal", "int"],
    "verify_specialization": ["ideal", "ideal", "matrix?"],
    "verify_deformation": ["ideal", "ideal", "int"],
    "height_report": ["ideal", "ideal", "int"],
    "g_condition": ["ideal", "int"],
}

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_RING_RE = re.compile(rf"^ring\s+({_NAME})\s*=\s*(QQ|ZZ\s*/\s*(\d+))\s*\[([^\]]*)\]\s*$", re.S)
_DECL_RE = re.compile(rf"^(ideal|matrix|scalar)\s+({_NAME})\s*=(.*)$", re.S)


class _Source:
    """Maps offsets in the original text to 1-based line and column numbers."""

    def __init__(self, text: str):
        self.text = text
        self.starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def locate(self, offset: int) -> tuple[int, int]:
        lo, hi = 0, len(self.starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.starts[mid] <= offset:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, offset - self.starts[lo] + 1

    def error(self, message: str, offset: int) -> SessionError:
        return SessionError(message, *self.locate(offset))


def _split_statements(src: _Source):
    """Yield ``(text, offset)`` for each statement, comments blanked out."""
    text = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), src.text)
    start = 0
    for i, ch in enumerate(text):
        if ch == ";":
            chunk = text[start:i]
            if chunk.strip():
                lead = len(chunk) - len(chunk.lstrip())
                yield chunk.strip(), start + lead
            start = i + 1
    rest = text[start:]
    if rest.strip():
        lead = len(rest) - len(rest.lstrip())
        raise src.error("statement is missing its terminating ';'", start + lead)


def parse_session(text: str) -> Session:
    src = _Source(text)
    sess = Session()
    for stmt, off in _split_statements(src):
        head = stmt.split(None, 1)[0]
        line, col = src.locate(off)
        if head == "ring":
            _parse_ring(sess, src, stmt, off)
        elif head in ("ideal", "matrix", "scalar"):
            _parse_decl(sess, src, stmt, off)
        elif head in SIGNATURES:
            sess.statements.append(_parse_command(sess, src, stmt, off))
        else:
            raise src.error(f"unknown statement {head!r}", off)
        if head == "ring":
            sess.statements.append(Statement("ring", sess.ring_name, [], stmt, line, col))
    return sess


def _parse_ring(sess: Session, src: _Source, stmt: str, off: int):
    if sess.ring is not None:
        raise src.error("a session declares exactly one ring", off)
    m = _RING_RE.match(stmt)
    if not m:
        raise src.error("expected 'ring NAME = QQ[vars]' or 'ring NAME = ZZ/p[vars]'", off)
    name, _, p, vars_ = m.groups()
    names = [v.strip() for v in vars_.split(",")] if vars_.strip() else []
    try:
        field_ = QQ if p is None else GF(int(p))
    except (DomainError, ValueError) as exc:
        raise src.error(str(exc), off + m.start(3)) from None
    try:
        sess.ring = PolyRing(field_, names)
    except (StructuralError, ValueError) as exc:
        raise src.error(str(exc), off + m.start(4)) from None
    sess.ring_name = name


def _need_ring(sess: Session, src: _Source, off: int) -> PolyRing:
    if sess.ring is None:
        raise src.error("no ring declared", off)
    return sess.ring


def _parse_poly(ring: PolyRing, src: _Source, text: str, off: int):
    try:
        return ring.parse(text)
    except PolyParseError as exc:
        raise src.error(exc.message, off + exc.offset) from None


def _split_commas(body: str, off: int):
    """Comma-separated pieces with their absolute offsets, whitespace trimmed."""
    pos = 0
    for piece in body.split(","):
        lead = len(piece) - len(piece.lstrip())
        yield piece.strip(), off + pos + lead
        pos += len(piece) + 1


def _parse_decl(sess: Session, src: _Source, stmt: str, off: int):
    m = _DECL_RE.match(stmt)
    if not m:
        raise src.error("expected 'KIND NAME = VALUE'", off)
    kind, name, body = m.groups()
    body_off = off + m.start(3)
    if name in sess.values or name == sess.ring_name:
        raise src.error(f"{name!r} is already declared", off)
    if kind == "scalar":
        if not re.fullmatch(r"\s*\d+\s*", body):
            raise src.error("scalar values are nonnegative integers", body_off)
        sess.values[name] = ("int", int(body))
        sess.statements.append(Statement("scalar", name, [int(body)], stmt, *src.locate(off)))
        return
    ring = _need_ring(sess, src, off)
    if kind == "ideal":
        gens = []
        for piece, poff in _split_commas(body, body_off):
            if not piece:
                raise src.error("empty generator", poff)
            gens.append(_parse_poly(ring, src, piece, poff))
        value = Ideal(ring, gens)
    else:
        value = _parse_matrix(ring, src, body, body_off)
    sess.values[name] = (kind, value)
    sess.statements.append(Statement(kind, name, [value], stmt, *src.locate(off)))


def _parse_matrix(ring: PolyRing, src: _Source, body: str, off: int) -> PolyMatrix:
    stripped = body.strip()
    lead = off + len(body) - len(body.lstrip())
    if not (stripped.startswith("[") and stripped.endswith("]")):
        raise src.error("matrices are written [[a, b], [c, d]]", lead)
    inner = stripped[1:-1]
    inner_off = lead + 1
    rows = []
    pos = 0
    for m in re.finditer(r"\[([^\[\]]*)\]", inner):
        gap = inner[pos:m.start()]
        if gap.strip(" \t\n,"):
            raise src.error("unexpected text between matrix rows", inner_off + pos)
        pos = m.end()
        row = []
        for piece, poff in _split_commas(m.group(1), inner_off + m.start(1)):
            if not piece:
                raise src.error("empty matrix entry", poff)
            row.append(_parse_poly(ring, src, piece, poff))
        rows.append(row)
    if inner[pos:].strip(" \t\n,"):
        raise src.error("unexpected text after the last matrix row", inner_off + pos)
    if not rows:
        raise src.error("a matrix needs at least one row", lead)
    if any(len(r) != len(rows[0]) for r in rows):
        raise src.error("matrix rows have different lengths", lead)
    return PolyMatrix(ring, rows)


def _parse_command(sess: Session, src: _Source, stmt: str, off: int) -> Statement:
    _need_ring(sess, src, off)
    tokens = [(m.group(), off + m.start()) for m in re.finditer(r"\S+", stmt)]
    name = tokens[0][0]
    sig = SIGNATURES[name]
    args = tokens[1:]
    required = [t for t in sig if not t.endswith("?")]
    if not len(required) <= len(args) <= len(sig):
        want = len(required) if len(required) == len(sig) else f"{len(required)} to {len(sig)}"
        raise src.error(f"{name} takes {want} arguments, got {len(args)}", off)
    values = []
    for (tok, toff), typ in zip(args, sig):
        typ = typ.rstrip("?")
        if typ == "int" and tok.isdigit():
            values.append(int(tok))
            continue
        if tok not in sess.values:
            raise src.error(f"unknown identifier {tok!r}", toff)
        have, value = sess.values[tok]
        if have != typ:
            raise src.error(f"{tok!r} is {_article(have)}, expected {_article(typ)}", toff)
        values.append(value)
    return Statement("command", name, values, " ".join(t for t, _ in tokens), *src.locate(off),
                     arg_names=[t for t, _ in args])


def _article(kind: str) -> str:
    return {"int": "a scalar", "ideal": "an ideal", "matrix": "a matrix"}[kind]


# ---------------------------------------------------------------------------
# execution


@dataclass
class CommandOutput:
    command: str
    inputs: dict
    line: int
    ring: str = ""
    generators: list | None = None
    report: VerificationReport | None = None
    values: dict | None = None
    error: dict | None = None
    millis: float = 0.0

    @property
    def failed(self) -> bool:
        return self.error is not None

    def to_dict(self, timings: bool = True) -> dict:
        out = {"command": self.command, "inputs": self.inputs}
        if self.error is not None:
            out["error"] = self.error
        if self.generators is not None:
            out["ring"] = self.ring
            out["generators"] = self.generators
        if self.values is not None:
            out["values"] = self.values
        if self.report is not None:
            out["report"] = self.report.to_dict(timings=timings)
        if timings:
            out["millis"] = round(self.millis, 3)
        return out

    def to_text(self) -> str:
        lines = [f"> {self.command}"]
        if self.error is not None:
            lines.append(f"error ({self.error['kind']}): {self.error['message']}")
        if self.generators is not None:
            lines.append(f"ring: {self.ring}")
            lines.append("generators:")
            lines.extend(f"  {g}" for g in (self.generators or ["0"]))
        if self.values is not None:
            for k, v in self.values.items():
                lines.append(f"{k}: {_text_value(v)}")
        if self.report is not None:
            lines.append(self.report.to_text())
        return "\n".join(lines)


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return ", ".join(_text_value(x) for x in v)
    return str(v)


def _ideal_out(out: CommandOutput, I: Ideal) -> CommandOutput:
    out.ring = repr(I.ring)
    out.generators = [str(g) for g in I.gens]
    return out


def _describe_inputs(st: Statement) -> dict:
    out = {}
    for name, value in zip(st.arg_names, st.args):
        if isinstance(value, int):
            out[name] = value
        elif isinstance(value, Ideal):
            out[name] = [str(g) for g in value.gens]
        else:
            out[name] = [[str(e) for e in row] for row in value.rows]
    return out


def _kitt_input(a: Ideal, I: Ideal, M: PolyMatrix | None) -> KittInput:
    f, gens = list(I.gens), list(a.gens)
    if M is None:
        return KittInput.from_generators(gens, f)
    if M.nrows != len(f) or M.ncols != len(gens):
        raise StructuralError(f"matrix is {M.nrows}x{M.ncols}, expected {len(f)}x{len(gens)}")
    return KittInput(f, gens, M)


def execute(st: Statement) -> CommandOutput:
    out = CommandOutput(st.text, _describe_inputs(st), st.line)
    t0 = time.perf_counter()
    try:
        _dispatch(st, out)
    except PreconditionError as exc:
        out.error = {"kind": "precondition", "message": str(exc)}
    except DomainError as exc:
        out.error = {"kind": "domain", "message": str(exc)}
    except StructuralError as exc:
        out.error = {"kind": "structural", "message": str(exc)}
    out.millis = (time.perf_counter() - t0) * 1000
    return out


def _dispatch(st: Statement, out: CommandOutput):
    name, args = st.name, st.args
    if name == "gb":
        I = args[0]
        _ideal_out(out, Ideal(I.ring, I.groebner()))
    elif name == "colon":
        _ideal_out(out, ideals.colon(args[0], args[1]))
    elif name == "intersect":
        _ideal_out(out, ideals.intersect(args[0], args[1]))
    elif name == "dim":
        d = ideals.dimension(args[0])
        out.values = {"dim": d.dim, "height": height_value(d.height)}
    elif name == "kitt":
        M = args[2] if len(args) > 2 else None
        _ideal_out(out, kitt(_kitt_input(args[0], args[1], M)))
    elif name == "generic_kitt":
        s, I = args
        if s < 1:
            raise DomainError("generic_kitt needs s >= 1")
        _ideal_out(out, generic.generic_kitt(list(I.gens), s))
    elif name == "generic_residual":
        s, I = args
        if s < 1:
            raise DomainError("generic_residual needs s >= 1")
        _ideal_out(out, generic.generic_residual(list(I.gens), s))
    elif name == "specialize":
        I, M = args
        if M.nrows != len(I.gens):
            raise StructuralError(f"matrix has {M.nrows} rows, I has {len(I.gens)} generators")
        ext, res = generic.generic_kitt_result(list(I.gens), M.ncols)
        _ideal_out(out, generic.specialize(res.ideal, generic.SpecializationData(ext, M)))
    elif name == "residual_check":
        out.report = residual_check(*args)
    elif name == "verify_specialization":
        M = args[2] if len(args) > 2 else None
        out.report = generic.verify_specialization(_kitt_input(args[0], args[1], M))
    elif name == "verify_deformation":
        out.report = generic.verify_deformation(*args)
    elif name == "height_report":
        a, I, s = args
        out.report = generic.height_report(list(I.gens), list(a.gens), s)
    elif name == "g_condition":
        I, s = args
        heights = g_condition_heights(I, s)
        out.values = {
            "g_condition": g_condition(I, s),
            "fitting_heights": [f"Fitt_{i}: {h}" for i, h in heights],
        }
    else:  # pragma: no cover - the parser only admits known commands
        raise DomainError(f"unknown command {name}")


def run(sess: Session, emit=None) -> list[CommandOutput]:
    """Execute the commands in order; ``emit`` sees each output as soon as it exists."""
    outputs = []
    for st in sess.commands:
        out = execute(st)
        outputs.append(out)
        if emit is not None:
            emit(out)
    return outputs
