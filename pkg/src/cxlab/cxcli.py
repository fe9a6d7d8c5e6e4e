"""Scenario files, task runner, reports and the ``cxlab`` command line tool.

Scenario grammar (line oriented, ``#`` comments):

    field p = <prime>
    ring <name> = [<var>, ...] / (<poly>, ...)
    module <name> = coker <ring> [[<poly>, ...], ...] degrees [<d>, ...]
                  | k <ring> | kchi <ring> j=<j> | cut <module> j=<j>
                  | syzygy <module> i=<i> | sum <m1> <m2>
    task betti <module> maxdeg=<N> | complexity <module>
         | ext <M> <N> maxdeg=<N> | tor <M> <N> maxdeg=<N>
         | verify-complex <ring> matrices=[...] range=<a>..<b>
         | reduce <module> maxdeg=<t> | projdim-check <module>
         | symmetry <M> <N> | vartest <M> tests=<T1,...> t=<t>
         | testci <M> t=<t> q=<q> n=<n> tests=<T1,...>

Reports serialize to aligned text (with timings) and to a versioned JSON
schema; the JSON carries no wall-clock data, so rerunning a scenario with
the same seed reproduces it byte for byte.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .errors import InputError, ScenarioError
from .exactla import Field
from .gralg import Algebra, Polynomial, build_algebra
from .gmod import Module, coker_presentation, direct_sum, residue_field
from .resol import estimate_complexity, resolve, syzygy, verify_complex
from .yoneda import (
    ext_table,
    reduction_sequence,
    self_ext_pd_check,
    symmetry_check,
    tor_table,
)
from .cioper import MonomialCI, build_kchi, cut_by_chi, eisenbud_operators, testci_run, vartest_check

__all__ = ["parse_scenario", "print_scenario", "run", "RunOptions", "Report", "main"]

SCHEMA_VERSION = 1

TASK_KINDS = {
    "betti", "complexity", "ext", "tor", "verify-complex", "reduce",
    "projdim-check", "symmetry", "vartest", "testci",
}


# -- tokens -------------------------------------------------------------------

_SYMBOLS = ("..", "[", "]", "(", ")", ",", "=", "/", "^", "*", "+", "-")


@dataclass(frozen=True)
class Token:
    kind: str   # IDENT, INT, SYM, NEWLINE, EOF
    value: str
    line: int
    col: int


def _tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        i = 0
        while i < len(line):
            ch = line[i]
            if ch.isspace():
                i += 1
                continue
            col = i + 1
            if ch.isdigit():
                j = i
                while j < len(line) and line[j].isdigit():
                    j += 1
                tokens.append(Token("INT", line[i:j], lineno, col))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(line) and (line[j].isalnum() or line[j] == "_"):
                    j += 1
                tokens.append(Token("IDENT", line[i:j], lineno, col))
                i = j
                continue
            for sym in _SYMBOLS:
                if line.startswith(sym, i):
                    tokens.append(Token("SYM", sym, lineno, col))
                    i += len(sym)
                    break
            else:
                raise ScenarioError(f"unexpected character {ch!r}", lineno, col)
        if tokens and tokens[-1].kind != "NEWLINE":
            tokens.append(Token("NEWLINE", "", lineno, len(line) + 1))
    last_line = text.count("\n") + 1
    tokens.append(Token("EOF", "", last_line + 1, 1))
    return tokens


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class SrcLoc:
    line: int
    col: int


_NOLOC = SrcLoc(0, 0)


@dataclass
class FieldDecl:
    p: int
    loc: SrcLoc = dc_field(default=_NOLOC, compare=False)


@dataclass
class RingDecl:
    name: str
    varnames: Tuple[str, ...]
    relations: Tuple[Polynomial, ...]
    loc: SrcLoc = dc_field(default=_NOLOC, compare=False)


@dataclass
class ModuleDecl:
    name: str
    kind: str                       # coker, k, kchi, cut, syzygy, sum
    ring: Optional[str] = None
    matrix: Optional[tuple] = None  # tuple of tuples of Polynomial
    degrees: Optional[Tuple[int, ...]] = None
    arg: Optional[str] = None
    arg2: Optional[str] = None
    j: Optional[int] = None
    i: Optional[int] = None
    loc: SrcLoc = dc_field(default=_NOLOC, compare=False)


@dataclass
class TaskDecl:
    kind: str
    args: dict
    loc: SrcLoc = dc_field(default=_NOLOC, compare=False)

    def label(self) -> str:
        parts = [self.kind]
        for key in ("module", "module2", "ring"):
            if key in self.args:
                parts.append(str(self.args[key]))
        return " ".join(parts)


@dataclass
class Scenario:
    field_decl: FieldDecl
    decls: Tuple[object, ...]
    rings: Dict[str, RingDecl] = dc_field(default_factory=dict, compare=False)
    modules: Dict[str, ModuleDecl] = dc_field(default_factory=dict, compare=False)
    tasks: Tuple[TaskDecl, ...] = dc_field(default=(), compare=False)


# -- parser -------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.fp: Optional[Field] = None
        self.rings: Dict[str, RingDecl] = {}
        self.modules: Dict[str, ModuleDecl] = {}
        self.module_ring: Dict[str, str] = {}

    # token helpers
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def err(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise ScenarioError(message, tok.line, tok.col)

    def expect_sym(self, sym: str) -> Token:
        tok = self.peek()
        if tok.kind != "SYM" or tok.value != sym:
            self.err(f"expected '{sym}'")
        return self.next()

    def expect_ident(self, what: str = "identifier") -> Token:
        tok = self.peek()
        if tok.kind != "IDENT":
            self.err(f"expected {what}")
        return self.next()

    def expect_int(self, what: str = "integer") -> int:
        tok = self.peek()
        if tok.kind != "INT":
            self.err(f"expected {what}")
        return int(self.next().value)

    def expect_keyword(self, word: str):
        tok = self.peek()
        if tok.kind != "IDENT" or tok.value != word:
            self.err(f"expected '{word}'")
        return self.next()

    def skip_newlines(self):
        while self.peek().kind == "NEWLINE":
            self.next()

    def end_statement(self):
        tok = self.peek()
        if tok.kind == "EOF":
            return
        if tok.kind != "NEWLINE":
            self.err("expected end of line")
        self.next()

    # grammar
    def parse(self) -> Scenario:
        self.skip_newlines()
        tok = self.peek()
        if tok.kind != "IDENT" or tok.value != "field":
            self.err("expected 'field'")
        field_decl = self.parse_field()
        decls: List[object] = []
        tasks: List[TaskDecl] = []
        while True:
            self.skip_newlines()
            tok = self.peek()
            if tok.kind == "EOF":
                break
            if tok.kind != "IDENT":
                self.err("expected 'ring', 'module' or 'task'")
            if tok.value == "ring":
                decl = self.parse_ring()
            elif tok.value == "module":
                decl = self.parse_module()
            elif tok.value == "task":
                decl = self.parse_task()
                tasks.append(decl)
            elif tok.value == "field":
                self.err("duplicate 'field' declaration")
            else:
                self.err("expected 'ring', 'module' or 'task'")
            decls.append(decl)
        return Scenario(field_decl, tuple(decls), dict(self.rings), dict(self.modules), tuple(tasks))

    def parse_field(self) -> FieldDecl:
        tok = self.expect_keyword("field")
        self.expect_keyword("p")
        self.expect_sym("=")
        ptok = self.peek()
        p = self.expect_int("prime")
        try:
            self.fp = Field(p)
        except InputError as exc:
            raise ScenarioError(str(exc), ptok.line, ptok.col) from exc
        self.end_statement()
        return FieldDecl(p, SrcLoc(tok.line, tok.col))

    def parse_ring(self) -> RingDecl:
        tok = self.expect_keyword("ring")
        name_tok = self.expect_ident("ring name")
        name = name_tok.value
        if name in self.rings or name in self.modules:
            self.err(f"name {name!r} already defined", name_tok)
        self.expect_sym("=")
        self.expect_sym("[")
        varnames: List[str] = []
        if not (self.peek().kind == "SYM" and self.peek().value == "]"):
            while True:
                varnames.append(self.expect_ident("variable name").value)
                if self.peek().kind == "SYM" and self.peek().value == ",":
                    self.next()
                    continue
                break
        self.expect_sym("]")
        if len(set(varnames)) != len(varnames):
            self.err("duplicate variable name", name_tok)
        self.expect_sym("/")
        self.expect_sym("(")
        relations: List[Polynomial] = []
        if not (self.peek().kind == "SYM" and self.peek().value == ")"):
            while True:
                ptok = self.peek()
                poly = self.parse_poly(tuple(varnames))
                if not poly.is_homogeneous() or poly.is_zero() or poly.degree() < 1:
                    raise ScenarioError("relation must be homogeneous of degree >= 1", ptok.line, ptok.col)
                relations.append(poly)
                if self.peek().kind == "SYM" and self.peek().value == ",":
                    self.next()
                    continue
                break
        self.expect_sym(")")
        self.end_statement()
        decl = RingDecl(name, tuple(varnames), tuple(relations), SrcLoc(tok.line, tok.col))
        self.rings[name] = decl
        return decl

    def parse_module(self) -> ModuleDecl:
        tok = self.expect_keyword("module")
        name_tok = self.expect_ident("module name")
        name = name_tok.value
        if name in self.rings or name in self.modules:
            self.err(f"name {name!r} already defined", name_tok)
        self.expect_sym("=")
        kind_tok = self.expect_ident("module builder")
        kind = kind_tok.value
        loc = SrcLoc(tok.line, tok.col)
        if kind == "coker":
            ring = self.ref_ring()
            matrix = self.parse_matrix(self.rings[ring].varnames)
            self.expect_keyword("degrees")
            degrees = self.parse_int_list()
            if len(degrees) != len(matrix):
                self.err("degree count does not match matrix rows", name_tok)
            decl = ModuleDecl(name, "coker", ring=ring, matrix=matrix, degrees=degrees, loc=loc)
        elif kind == "k":
            ring = self.ref_ring()
            decl = ModuleDecl(name, "k", ring=ring, loc=loc)
        elif kind == "kchi":
            ring = self.ref_ring()
            j = self.parse_kv_int("j")
            if not 1 <= j <= len(self.rings[ring].varnames):
                self.err(f"j={j} out of range for ring {ring!r}", name_tok)
            decl = ModuleDecl(name, "kchi", ring=ring, j=j, loc=loc)
        elif kind == "cut":
            arg = self.ref_module()
            j = self.parse_kv_int("j")
            ring = self.module_ring[arg]
            if not 1 <= j <= len(self.rings[ring].varnames):
                self.err(f"j={j} out of range", name_tok)
            decl = ModuleDecl(name, "cut", arg=arg, ring=ring, j=j, loc=loc)
        elif kind == "syzygy":
            arg = self.ref_module()
            i = self.parse_kv_int("i")
            if i < 0:
                self.err("syzygy index must be nonnegative", name_tok)
            decl = ModuleDecl(name, "syzygy", arg=arg, ring=self.module_ring[arg], i=i, loc=loc)
        elif kind == "sum":
            arg = self.ref_module()
            arg2 = self.ref_module()
            if self.module_ring[arg] != self.module_ring[arg2]:
                self.err("sum of modules over different rings", name_tok)
            decl = ModuleDecl(name, "sum", arg=arg, arg2=arg2, ring=self.module_ring[arg], loc=loc)
        else:
            self.err("expected one of: coker, k, kchi, cut, syzygy, sum", kind_tok)
        self.end_statement()
        self.modules[name] = decl
        self.module_ring[name] = decl.ring
        return decl

    def parse_task(self) -> TaskDecl:
        tok = self.expect_keyword("task")
        kind = self.parse_task_name()
        loc = SrcLoc(tok.line, tok.col)
        args: dict = {}
        if kind == "betti":
            args["module"] = self.ref_module()
            args["maxdeg"] = self.parse_kv_int("maxdeg")
        elif kind == "complexity":
            args["module"] = self.ref_module()
        elif kind in ("ext", "tor"):
            args["module"] = self.ref_module()
            args["module2"] = self.ref_module()
            args["maxdeg"] = self.parse_kv_int("maxdeg")
        elif kind == "verify-complex":
            args["ring"] = self.ref_ring()
            self.expect_keyword("matrices")
            self.expect_sym("=")
            args["matrices"] = self.parse_matrix_list(self.rings[args["ring"]].varnames)
            self.expect_keyword("range")
            self.expect_sym("=")
            a = self.expect_int("range start")
            self.expect_sym("..")
            b = self.expect_int("range end")
            if b < a:
                self.err("empty range")
            if b - a + 1 != len(args["matrices"]):
                self.err(f"range {a}..{b} needs {b - a + 1} matrices, got {len(args['matrices'])}")
            args["range"] = (a, b)
        elif kind == "reduce":
            args["module"] = self.ref_module()
            args["maxdeg"] = self.parse_kv_int("maxdeg")
        elif kind == "projdim-check":
            args["module"] = self.ref_module()
        elif kind == "symmetry":
            args["module"] = self.ref_module()
            args["module2"] = self.ref_module()
        elif kind == "vartest":
            args["module"] = self.ref_module()
            self.expect_keyword("tests")
            self.expect_sym("=")
            args["tests"] = self.parse_module_list()
            args["t"] = self.parse_kv_int("t")
        elif kind == "testci":
            args["module"] = self.ref_module()
            args["t"] = self.parse_kv_int("t")
            args["q"] = self.parse_kv_int("q")
            args["n"] = self.parse_kv_int("n")
            self.expect_keyword("tests")
            self.expect_sym("=")
            args["tests"] = self.parse_module_list()
        else:
            self.err(f"unknown task {kind!r}")
        self.end_statement()
        return TaskDecl(kind, args, loc)

    def parse_task_name(self) -> str:
        parts = [self.expect_ident("task name").value]
        while self.peek().kind == "SYM" and self.peek().value == "-":
            self.next()
            parts.append(self.expect_ident("task name").value)
        name = "-".join(parts)
        if name not in TASK_KINDS:
            self.err(f"unknown task {name!r}")
        return name

    def ref_ring(self) -> str:
        tok = self.expect_ident("ring name")
        if tok.value not in self.rings:
            self.err(f"unknown ring {tok.value!r}", tok)
        return tok.value

    def ref_module(self) -> str:
        tok = self.expect_ident("module name")
        if tok.value not in self.modules:
            self.err(f"unknown module {tok.value!r}", tok)
        return tok.value

    def parse_module_list(self) -> Tuple[str, ...]:
        names = [self.ref_module()]
        while self.peek().kind == "SYM" and self.peek().value == ",":
            self.next()
            names.append(self.ref_module())
        return tuple(names)

    def parse_kv_int(self, key: str) -> int:
        self.expect_keyword(key)
        self.expect_sym("=")
        return self.expect_int()

    def parse_int_list(self) -> Tuple[int, ...]:
        self.expect_sym("[")
        vals = []
        if not (self.peek().kind == "SYM" and self.peek().value == "]"):
            while True:
                neg = False
                if self.peek().kind == "SYM" and self.peek().value == "-":
                    self.next()
                    neg = True
                v = self.expect_int()
                vals.append(-v if neg else v)
                if self.peek().kind == "SYM" and self.peek().value == ",":
                    self.next()
                    continue
                break
        self.expect_sym("]")
        return tuple(vals)

    def parse_matrix(self, varnames: Tuple[str, ...]) -> tuple:
        self.expect_sym("[")
        rows = []
        while True:
            self.expect_sym("[")
            row = []
            if not (self.peek().kind == "SYM" and self.peek().value == "]"):
                while True:
                    row.append(self.parse_poly(varnames))
                    if self.peek().kind == "SYM" and self.peek().value == ",":
                        self.next()
                        continue
                    break
            self.expect_sym("]")
            rows.append(tuple(row))
            if self.peek().kind == "SYM" and self.peek().value == ",":
                self.next()
                continue
            break
        self.expect_sym("]")
        if len({len(r) for r in rows}) > 1:
            self.err("ragged matrix")
        return tuple(rows)

    def parse_matrix_list(self, varnames: Tuple[str, ...]) -> tuple:
        self.expect_sym("[")
        mats = [self.parse_matrix(varnames)]
        while self.peek().kind == "SYM" and self.peek().value == ",":
            self.next()
            mats.append(self.parse_matrix(varnames))
        self.expect_sym("]")
        return tuple(mats)

    def parse_poly(self, varnames: Tuple[str, ...]) -> Polynomial:
        fp = self.fp
        nvars = len(varnames)
        var_index = {v: i for i, v in enumerate(varnames)}
        acc: Dict[Tuple[int, ...], int] = {}
        sign = 1
        if self.peek().kind == "SYM" and self.peek().value in ("+", "-"):
            sign = -1 if self.next().value == "-" else 1
        while True:
            coeff = 1
            exps = [0] * nvars
            saw = False
            while True:
                tok = self.peek()
                if tok.kind == "INT":
                    coeff = (coeff * int(self.next().value)) % fp.p
                    saw = True
                elif tok.kind == "IDENT":
                    if tok.value not in var_index:
                        self.err(f"unknown variable {tok.value!r}", tok)
                    self.next()
                    power = 1
                    if self.peek().kind == "SYM" and self.peek().value == "^":
                        self.next()
                        power = self.expect_int("exponent")
                    exps[var_index[tok.value]] += power
                    saw = True
                else:
                    self.err("expected a coefficient or a variable", tok)
                if self.peek().kind == "SYM" and self.peek().value == "*":
                    self.next()
                    continue
                break
            if not saw:
                self.err("empty term")
            e = tuple(exps)
            acc[e] = (acc.get(e, 0) + sign * coeff) % fp.p
            tok = self.peek()
            if tok.kind == "SYM" and tok.value in ("+", "-"):
                sign = -1 if self.next().value == "-" else 1
                continue
            break
        return Polynomial(fp, nvars, acc)


def parse_scenario(text: str) -> Scenario:
    """Parse and semantically validate a scenario; errors carry line:col."""
    return _Parser(text).parse()


# -- canonical printer --------------------------------------------------------


def _poly_text(poly: Polynomial, varnames: Tuple[str, ...]) -> str:
    return poly.text(varnames)


def _matrix_text(matrix: tuple, varnames: Tuple[str, ...]) -> str:
    rows = []
    for row in matrix:
        rows.append("[" + ",".join(_poly_text(e, varnames) for e in row) + "]")
    return "[" + ",".join(rows) + "]"


def print_scenario(scenario: Scenario) -> str:
    """Canonical text form; reparsing yields an AST equal to the original."""
    out = [f"field p = {scenario.field_decl.p}"]
    for decl in scenario.decls:
        if isinstance(decl, RingDecl):
            rels = ", ".join(_poly_text(g, decl.varnames) for g in decl.relations)
            out.append(f"ring {decl.name} = [{','.join(decl.varnames)}] / ({rels})")
        elif isinstance(decl, ModuleDecl):
            names = scenario.rings[decl.ring].varnames if decl.ring else ()
            if decl.kind == "coker":
                out.append(
                    f"module {decl.name} = coker {decl.ring} "
                    f"{_matrix_text(decl.matrix, names)} degrees [{','.join(map(str, decl.degrees))}]"
                )
            elif decl.kind == "k":
                out.append(f"module {decl.name} = k {decl.ring}")
            elif decl.kind == "kchi":
                out.append(f"module {decl.name} = kchi {decl.ring} j={decl.j}")
            elif decl.kind == "cut":
                out.append(f"module {decl.name} = cut {decl.arg} j={decl.j}")
            elif decl.kind == "syzygy":
                out.append(f"module {decl.name} = syzygy {decl.arg} i={decl.i}")
            elif decl.kind == "sum":
                out.append(f"module {decl.name} = sum {decl.arg} {decl.arg2}")
        elif isinstance(decl, TaskDecl):
            out.append(_task_text(scenario, decl))
    return "\n".join(out) + "\n"


def _task_text(scenario: Scenario, task: TaskDecl) -> str:
    a = task.args
    if task.kind == "betti":
        return f"task betti {a['module']} maxdeg={a['maxdeg']}"
    if task.kind == "complexity":
        return f"task complexity {a['module']}"
    if task.kind in ("ext", "tor"):
        return f"task {task.kind} {a['module']} {a['module2']} maxdeg={a['maxdeg']}"
    if task.kind == "verify-complex":
        names = scenario.rings[a["ring"]].varnames
        mats = "[" + ",".join(_matrix_text(mx, names) for mx in a["matrices"]) + "]"
        lo, hi = a["range"]
        return f"task verify-complex {a['ring']} matrices={mats} range={lo}..{hi}"
    if task.kind == "reduce":
        return f"task reduce {a['module']} maxdeg={a['maxdeg']}"
    if task.kind == "projdim-check":
        return f"task projdim-check {a['module']}"
    if task.kind == "symmetry":
        return f"task symmetry {a['module']} {a['module2']}"
    if task.kind == "vartest":
        return f"task vartest {a['module']} tests={','.join(a['tests'])} t={a['t']}"
    if task.kind == "testci":
        return (f"task testci {a['module']} t={a['t']} q={a['q']} n={a['n']} "
                f"tests={','.join(a['tests'])}")
    raise InputError(f"unknown task kind {task.kind!r}")


# -- runner -------------------------------------------------------------------


@dataclass
class RunOptions:
    max_degree: int = 20
    seed: int = 0
    json: bool = False


@dataclass
class TaskResult:
    label: str
    kind: str
    ok: bool
    result: Optional[dict]
    error: Optional[str]
    seconds: float

    def to_jsonable(self) -> dict:
        return {"task": self.label, "kind": self.kind, "ok": self.ok,
                "result": self.result, "error": self.error}


@dataclass
class Report:
    seed: int
    max_degree: int
    tasks: List[TaskResult]

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.tasks)

    def to_json(self) -> str:
        payload = {
            "schema": SCHEMA_VERSION,
            "engine": f"cxlab {__version__}",
            "seed": self.seed,
            "max_degree": self.max_degree,
            "ok": self.ok,
            "tasks": [t.to_jsonable() for t in self.tasks],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"cxlab {__version__}  (seed {self.seed}, max degree {self.max_degree})"]
        for t in self.tasks:
            status = "ok" if t.ok else "FAIL"
            lines.append(f"[{status}] {t.label}  ({t.seconds:.2f}s)")
            if t.error:
                lines.append(f"    error: {t.error}")
            elif t.result is not None:
                for key in sorted(t.result):
                    lines.append(f"    {key}: {_short(t.result[key])}")
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines) + "\n"


def _short(value) -> str:
    text = json.dumps(value, sort_keys=True, default=str)
    return text if len(text) <= 200 else text[:197] + "..."


class _Workspace:
    """Materialized rings and modules for one scenario run."""

    def __init__(self, scenario: Scenario, options: RunOptions):
        self.scenario = scenario
        self.options = options
        self.field = Field(scenario.field_decl.p)
        self.algebras: Dict[str, Algebra] = {}
        self.cis: Dict[str, MonomialCI] = {}
        self.mods: Dict[str, Module] = {}
        for decl in scenario.decls:
            if isinstance(decl, RingDecl):
                self.algebras[decl.name] = build_algebra(
                    self.field, len(decl.varnames), list(decl.relations), varnames=decl.varnames
                )
            elif isinstance(decl, ModuleDecl):
                self.mods[decl.name] = self._build_module(decl)

    def ci(self, ring: str) -> MonomialCI:
        got = self.cis.get(ring)
        if got is None:
            got = MonomialCI.from_algebra(self.algebras[ring])
            self.cis[ring] = got
        return got

    def _build_module(self, decl: ModuleDecl) -> Module:
        A = self.algebras[decl.ring]
        if decl.kind == "coker":
            entries = [[A.nf_polynomial(p) for p in row] for row in decl.matrix]
            return coker_presentation(A, entries, list(decl.degrees))
        if decl.kind == "k":
            return residue_field(A)
        if decl.kind == "kchi":
            return build_kchi(self.ci(decl.ring), decl.j)
        if decl.kind == "cut":
            parent = self.mods[decl.arg]
            ops = eisenbud_operators(self.ci(decl.ring), parent, 4)
            module = cut_by_chi(ops, decl.j).module
            if parent.chi_cuts is not None:
                module.chi_cuts = parent.chi_cuts + 1
            return module
        if decl.kind == "syzygy":
            return syzygy(self.mods[decl.arg], decl.i)
        if decl.kind == "sum":
            return direct_sum(self.mods[decl.arg], self.mods[decl.arg2])
        raise InputError(f"unknown module builder {decl.kind!r}")


def _betti_text(betti: List[int]) -> str:
    head = "n:    " + " ".join(f"{i:>4}" for i in range(len(betti)))
    vals = "beta: " + " ".join(f"{b:>4}" for b in betti)
    return head + "\n" + vals


def _run_task(ws: _Workspace, task: TaskDecl) -> dict:
    a = task.args
    opts = ws.options
    if task.kind == "betti":
        betti = resolve(ws.mods[a["module"]], a["maxdeg"]).betti_list(a["maxdeg"])
        return {"ok": True, "betti": betti, "table": _betti_text(betti)}
    if task.kind == "complexity":
        est = estimate_complexity(
            resolve(ws.mods[a["module"]], opts.max_degree).betti_list(opts.max_degree)
        )
        return {"ok": True, **est.to_jsonable()}
    if task.kind in ("ext", "tor"):
        fn = ext_table if task.kind == "ext" else tor_table
        table = fn(ws.mods[a["module"]], ws.mods[a["module2"]], a["maxdeg"])
        return {"ok": True, "dims": table}
    if task.kind == "verify-complex":
        A = ws.algebras[a["ring"]]
        mats = [[[A.nf_polynomial(p) for p in row] for row in mx] for mx in a["matrices"]]
        report = verify_complex(A, mats, start_index=a["range"][0])
        return {"ok": report.ok, **report.to_jsonable()}
    if task.kind == "reduce":
        seq, transcript = reduction_sequence(
            ws.mods[a["module"]], a["maxdeg"], seed=opts.seed, window=opts.max_degree
        )
        return {
            "ok": True,
            "found": seq is not None,
            "sequence": seq.to_jsonable() if seq else None,
            "transcript": transcript,
        }
    if task.kind == "projdim-check":
        v = self_ext_pd_check(ws.mods[a["module"]], opts.max_degree)
        return {"ok": v.ok, **v.to_jsonable()}
    if task.kind == "symmetry":
        v = symmetry_check(ws.mods[a["module"]], ws.mods[a["module2"]], opts.max_degree)
        return {"ok": v.ok, **v.to_jsonable()}
    if task.kind == "vartest":
        t = a["t"]
        tests = []
        for name in a["tests"]:
            mod = ws.mods[name]
            if mod.chi_cuts != t:
                raise InputError(
                    f"test module {name!r} was built with {mod.chi_cuts} coordinate cuts, task declares t={t}"
                )
            tests.append((mod, t))
        v = vartest_check(ws.mods[a["module"]], tests, opts.max_degree)
        return {"ok": v.ok, **v.to_jsonable()}
    if task.kind == "testci":
        tests = [ws.mods[name] for name in a["tests"]]
        v = testci_run(ws.mods[a["module"]], a["t"], a["q"], a["n"], tests,
                       test_names=list(a["tests"]))
        return {"ok": v.ok, **v.to_jsonable()}
    raise InputError(f"unknown task kind {task.kind!r}")


def run(scenario: Scenario, options: Optional[RunOptions] = None) -> Report:
    """Execute every task in order; failures are isolated per task.

    Ring and module construction happens up front; a failure there (for
    example a non-Artinian quotient, or an operator cut over a ring that is
    not a monomial complete intersection) aborts the whole run with an
    InputError since no task could be trusted afterwards.
    """
    options = options or RunOptions()
    ws = _Workspace(scenario, options)
    results: List[TaskResult] = []
    for task in scenario.tasks:
        started = time.perf_counter()
        try:
            payload = _run_task(ws, task)
            ok = bool(payload.pop("ok"))
            results.append(TaskResult(task.label(), task.kind, ok, payload, None,
                                      time.perf_counter() - started))
        except Exception as exc:  # isolate per task
            results.append(TaskResult(task.label(), task.kind, False, None,
                                      f"{type(exc).__name__}: {exc}",
                                      time.perf_counter() - started))
    return Report(options.seed, options.max_degree, results)


# -- command line -------------------------------------------------------------


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="cxlab",
                                     description="homological complexity lab over prime fields")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run a scenario file")
    p_run.add_argument("file")
    p_run.add_argument("--max-degree", type=int, default=20)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--json", action="store_true")
    p_run.add_argument("--out", default=None)
    p_check = sub.add_parser("check", help="parse a scenario file without running it")
    p_check.add_argument("file")
    args = parser.parse_args(argv)

    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return 2
    try:
        scenario = parse_scenario(text)
    except ScenarioError as exc:
        print(f"{args.file}:{exc}", file=sys.stderr)
        return 2

    if args.command == "check":
        print(f"OK: {len(scenario.tasks)} tasks, {len(scenario.rings)} rings, "
              f"{len(scenario.modules)} modules")
        return 0

    options = RunOptions(max_degree=args.max_degree, seed=args.seed, json=args.json)
    try:
        report = run(scenario, options)
    except InputError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return 1
    output = report.to_json() if args.json else report.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
