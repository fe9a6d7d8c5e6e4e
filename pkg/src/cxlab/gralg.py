"""Graded Artinian local algebras A = F_p[x_1..x_v]/I with degreewise normal forms.

Only homogeneous ideals are supported, so per-degree reduced echelon bases
give canonical normal forms without any Groebner machinery.  Standard
monomials (the quotient basis) are the non-pivot monomials under a fixed
descending degrevlex order; the flat basis of A lists them degree by degree.
"""
from __future__ import annotations

import itertools
import re
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InputError
from .exactla import Field, Mat, rref

__all__ = [
    "Polynomial",
    "parse_polynomial",
    "Algebra",
    "AlgebraElement",
    "build_algebra",
    "multiply",
    "is_gorenstein",
    "codimension",
    "monomials_of_degree",
]

Monomial = Tuple[int, ...]


def _mono_degree(e: Monomial) -> int:
    return sum(e)


def _drl_pos_key(e: Monomial):
    # descending degrevlex within a fixed degree = ascending lex on reversed tuples
    return tuple(reversed(e))


def monomials_of_degree(nvars: int, d: int) -> List[Monomial]:
    """All exponent tuples of total degree d, in descending degrevlex order."""
    if d < 0:
        return []
    if nvars == 0:
        return [()] if d == 0 else []
    monos = []
    for bars in itertools.combinations(range(d + nvars - 1), nvars - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(d + nvars - 2 - prev)
        monos.append(tuple(e))
    monos.sort(key=_drl_pos_key)
    return monos


def _term_sort_key(item):
    e, _ = item
    return (_mono_degree(e), _drl_pos_key(e))


class Polynomial:
    """Element of F_p[x_1..x_v] with exact coefficients in [0, p)."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: Dict[Monomial, int]):
        clean = {}
        for e, c in terms.items():
            if len(e) != nvars:
                raise InputError(f"exponent tuple {e} has wrong length, expected {nvars}")
            c %= field.p
            if c:
                clean[tuple(int(x) for x in e)] = c
        self.field = field
        self.nvars = nvars
        self.terms = tuple(sorted(clean.items(), key=_term_sort_key))

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "Polynomial":
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field: Field, nvars: int, c: int) -> "Polynomial":
        return cls(field, nvars, {tuple([0] * nvars): c})

    @classmethod
    def variable(cls, field: Field, nvars: int, i: int, power: int = 1) -> "Polynomial":
        e = [0] * nvars
        e[i] = power
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, field: Field, e: Monomial, c: int = 1) -> "Polynomial":
        return cls(field, len(e), {tuple(e): c})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        """Total degree when homogeneous and nonzero, else None."""
        degs = {_mono_degree(e) for e, _ in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({_mono_degree(e) for e, _ in self.terms}) <= 1

    def __add__(self, other: "Polynomial") -> "Polynomial":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = (acc.get(e, 0) + c) % self.field.p
        return Polynomial(self.field, self.nvars, acc)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, self.nvars, {e: -c for e, c in self.terms})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        acc: Dict[Monomial, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = (acc.get(e, 0) + c1 * c2) % self.field.p
        return Polynomial(self.field, self.nvars, acc)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.field, self.nvars, {e: cc * c for e, cc in self.terms})

    def shift_by_monomial(self, e: Monomial) -> "Polynomial":
        return Polynomial(
            self.field,
            self.nvars,
            {tuple(a + b for a, b in zip(e1, e)): c for e1, c in self.terms},
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.nvars, self.terms))

    def text(self, varnames: Sequence[str]) -> str:
        """Canonical text form, parseable by parse_polynomial."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            factors = []
            for i, a in enumerate(e):
                if a == 1:
                    factors.append(varnames[i])
                elif a > 1:
                    factors.append(f"{varnames[i]}^{a}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return "+".join(parts)

    def __repr__(self):
        names = [f"x{i+1}" for i in range(self.nvars)]
        return f"Polynomial({self.text(names)} over F_{self.field.p})"


_TERM_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|[\^\*\+\-])")


def parse_polynomial(text: str, varnames: Sequence[str], field: Field) -> Polynomial:
    """Parse the shared polynomial syntax: terms like ``c*x1^2*x3`` joined by +/-.

    Coefficients are integer literals reduced mod p; whitespace is
    insignificant; a bare monomial has coefficient 1.
    """
    var_index = {name: i for i, name in enumerate(varnames)}
    nvars = len(varnames)
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TERM_TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise InputError(f"bad polynomial syntax near {text[pos:pos+10]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise InputError("empty polynomial")

    acc: Dict[Monomial, int] = {}
    i = 0
    sign = 1
    if tokens[0] in "+-":
        sign = -1 if tokens[0] == "-" else 1
        i = 1
    while i < len(tokens):
        coeff = 1
        exps = [0] * nvars
        expect_factor = True
        saw_factor = False
        while i < len(tokens) and tokens[i] not in "+-":
            tok = tokens[i]
            if tok == "*":
                if expect_factor:
                    raise InputError("unexpected '*' in polynomial")
                expect_factor = True
                i += 1
                continue
            if not expect_factor:
                raise InputError(f"missing '*' before {tok!r} in polynomial")
            if tok.isdigit():
                coeff = (coeff * int(tok)) % field.p
            else:
                if tok not in var_index:
                    raise InputError(f"unknown variable {tok!r}")
                power = 1
                if i + 1 < len(tokens) and tokens[i + 1] == "^":
                    if i + 2 >= len(tokens) or not tokens[i + 2].isdigit():
                        raise InputError("expected integer exponent after '^'")
                    power = int(tokens[i + 2])
                    i += 2
                exps[var_index[tok]] += power
            expect_factor = False
            saw_factor = True
            i += 1
        if not saw_factor:
            raise InputError("empty term in polynomial")
        e = tuple(exps)
        acc[e] = (acc.get(e, 0) + sign * coeff) % field.p
        if i < len(tokens):
            sign = -1 if tokens[i] == "-" else 1
            i += 1
            if i == len(tokens):
                raise InputError("dangling sign at end of polynomial")
    return Polynomial(field, nvars, acc)


class _DegreeSlice:
    """Degree-d data: monomial list, ideal-slice RREF, standard monomials."""

    __slots__ = ("monos", "mono_index", "std", "std_index", "nf_matrix")

    def __init__(self, monos, std, nf_matrix):
        self.monos = monos
        self.mono_index = {e: j for j, e in enumerate(monos)}
        self.std = std
        self.std_index = {e: j for j, e in enumerate(std)}
        self.nf_matrix = nf_matrix  # len(std) x len(monos): NF of each monomial


class Algebra:
    """A graded Artinian local F_p-algebra with fully materialized degree tables.

    Immutable after construction; all operations are pure.
    """

    def __init__(self, field: Field, nvars: int, relations: Sequence[Polynomial],
                 varnames: Optional[Sequence[str]] = None, degree_cap: int = 64):
        self.field = field
        self.nvars = nvars
        self.varnames = tuple(varnames) if varnames is not None else tuple(f"x{i+1}" for i in range(nvars))
        if len(self.varnames) != nvars:
            raise InputError("variable name count does not match nvars")
        rels = []
        for g in relations:
            if g.field != field or g.nvars != nvars:
                raise InputError("relation over the wrong polynomial ring")
            d = g.degree()
            if d is None or d < 1:
                raise InputError(f"relations must be homogeneous of degree >= 1, got {g!r}")
            rels.append(g)
        self.relations = tuple(rels)
        self.degree_cap = degree_cap
        self._slices: List[_DegreeSlice] = []
        self._build_slices()
        self.top_degree = len(self._slices) - 1
        # flat quotient basis: standard monomials listed degree by degree
        self.basis: List[Monomial] = []
        self.basis_degrees: List[int] = []
        self.basis_index: Dict[Monomial, int] = {}
        for d, sl in enumerate(self._slices):
            for e in sl.std:
                self.basis_index[e] = len(self.basis)
                self.basis.append(e)
                self.basis_degrees.append(d)
        self.dim = len(self.basis)
        self._degree_offsets = {}
        off = 0
        for d, sl in enumerate(self._slices):
            self._degree_offsets[d] = off
            off += len(sl.std)
        self._var_actions: List[Optional[Mat]] = [None] * nvars
        self._product_cache: Dict[Tuple[int, int], np.ndarray] = {}

    def _build_slices(self):
        p = self.field.p
        # pure-monomial ideals admit a direct slice computation whose result
        # is identical to the dense echelon path: the ideal slice is spanned
        # by monomials, so the standard monomials are exactly the
        # non-divisible ones and every normal form is 0 or the monomial itself
        monomial_ideal = all(len(g.terms) == 1 for g in self.relations)
        lead_exps = [g.terms[0][0] for g in self.relations] if monomial_ideal else []
        for d in range(self.degree_cap + 1):
            monos = monomials_of_degree(self.nvars, d)
            if monomial_ideal:
                std = [
                    e for e in monos
                    if not any(all(a >= b for a, b in zip(e, le)) for le in lead_exps)
                ]
                if not std:
                    return
                nf = np.zeros((len(std), len(monos)), dtype=np.int64)
                std_pos = {e: j for j, e in enumerate(std)}
                for j, e in enumerate(monos):
                    if e in std_pos:
                        nf[std_pos[e], j] = 1
                self._slices.append(_DegreeSlice(monos, std, nf))
                continue
            mono_pos = {e: j for j, e in enumerate(monos)}
            rows = []
            for g in self.relations:
                e = g.degree()
                if e > d:
                    continue
                for m in monomials_of_degree(self.nvars, d - e):
                    prod = g.shift_by_monomial(m)
                    row = np.zeros(len(monos), dtype=np.int64)
                    for em, c in prod.terms:
                        row[mono_pos[em]] = c
                    rows.append(row)
            if rows:
                R, pivots, _ = rref(Mat.from_rows(self.field, rows, cols=len(monos)))
                pivot_set = set(pivots)
            else:
                R, pivots, pivot_set = None, (), set()
            std = [e for j, e in enumerate(monos) if j not in pivot_set]
            if not std:
                # A_d = 0 forces A_e = 0 for all e > d (standard graded)
                return
            nf = np.zeros((len(std), len(monos)), dtype=np.int64)
            std_pos = {e: j for j, e in enumerate(std)}
            for j, e in enumerate(monos):
                if e in std_pos:
                    nf[std_pos[e], j] = 1
            if R is not None:
                nonpivot_cols = [j for j in range(len(monos)) if j not in pivot_set]
                for r, pc in enumerate(pivots):
                    for jj in nonpivot_cols:
                        c = int(R.a[r, jj])
                        if c:
                            nf[std_pos[monos[jj]], pc] = (-c) % p
            self._slices.append(_DegreeSlice(monos, std, nf))
        raise InputError(
            f"quotient still nonzero at degree {self.degree_cap}: possibly non-Artinian "
            "(raise degree_cap only if the quotient really is finite dimensional)"
        )

    # -- basis bookkeeping ------------------------------------------------

    def slice_std(self, d: int) -> List[Monomial]:
        if 0 <= d <= self.top_degree:
            return self._slices[d].std
        return []

    def hilbert_function(self) -> Tuple[int, ...]:
        return tuple(len(self._slices[d].std) for d in range(self.top_degree + 1))

    def nf_monomial(self, e: Monomial) -> np.ndarray:
        """Normal form of a single monomial as a vector over the flat basis."""
        d = _mono_degree(e)
        vec = np.zeros(self.dim, dtype=np.int64)
        if d > self.top_degree:
            return vec
        sl = self._slices[d]
        col = sl.mono_index[tuple(e)]
        off = self._degree_offsets[d]
        vec[off : off + len(sl.std)] = sl.nf_matrix[:, col]
        return vec

    def nf_polynomial(self, poly: Polynomial) -> "AlgebraElement":
        if poly.field != self.field or poly.nvars != self.nvars:
            raise InputError("polynomial over the wrong ring")
        vec = np.zeros(self.dim, dtype=np.int64)
        for e, c in poly.terms:
            vec = (vec + c * self.nf_monomial(e)) % self.field.p
        return AlgebraElement(self, vec)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, np.zeros(self.dim, dtype=np.int64))

    def one(self) -> "AlgebraElement":
        vec = np.zeros(self.dim, dtype=np.int64)
        vec[0] = 1
        return AlgebraElement(self, vec)

    def variable(self, i: int) -> "AlgebraElement":
        if not 0 <= i < self.nvars:
            raise InputError(f"variable index {i} out of range")
        return self.nf_polynomial(Polynomial.variable(self.field, self.nvars, i))

    def element(self, vec) -> "AlgebraElement":
        return AlgebraElement(self, np.asarray(vec, dtype=np.int64) % self.field.p)

    def basis_element(self, idx: int) -> "AlgebraElement":
        vec = np.zeros(self.dim, dtype=np.int64)
        vec[idx] = 1
        return AlgebraElement(self, vec)

    def product_of_basis(self, i: int, j: int) -> np.ndarray:
        key = (i, j) if i <= j else (j, i)
        out = self._product_cache.get(key)
        if out is None:
            e = tuple(a + b for a, b in zip(self.basis[key[0]], self.basis[key[1]]))
            out = self.nf_monomial(e)
            self._product_cache[key] = out
        return out

    def variable_action(self, i: int) -> Mat:
        """Multiplication by x_i as a matrix on the flat quotient basis."""
        if self._var_actions[i] is None:
            cols = np.zeros((self.dim, self.dim), dtype=np.int64)
            for j, e in enumerate(self.basis):
                ee = list(e)
                ee[i] += 1
                cols[:, j] = self.nf_monomial(tuple(ee))
            self._var_actions[i] = Mat(self.field, cols)
        return self._var_actions[i]

    def __repr__(self):
        rel = ", ".join(g.text(self.varnames) for g in self.relations)
        return f"Algebra(F_{self.field.p}[{', '.join(self.varnames)}]/({rel}), dim {self.dim})"


class AlgebraElement:
    """Element of an Algebra, stored as coefficients over the standard monomials."""

    __slots__ = ("algebra", "vec")

    def __init__(self, algebra: Algebra, vec: np.ndarray):
        v = np.asarray(vec, dtype=np.int64) % algebra.field.p
        if v.shape != (algebra.dim,):
            raise InputError(f"coefficient vector has shape {v.shape}, expected ({algebra.dim},)")
        v.setflags(write=False)
        self.algebra = algebra
        self.vec = v

    def is_zero(self) -> bool:
        return not self.vec.any()

    def constant_term(self) -> int:
        return int(self.vec[0]) if self.algebra.dim else 0

    def degree(self) -> Optional[int]:
        """Degree when homogeneous and nonzero, else None."""
        degs = {self.algebra.basis_degrees[j] for j in np.nonzero(self.vec)[0]}
        if len(degs) != 1:
            return None
        return degs.pop()

    def is_homogeneous(self) -> bool:
        degs = {self.algebra.basis_degrees[j] for j in np.nonzero(self.vec)[0]}
        return len(degs) <= 1

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, (self.vec + other.vec) % self.algebra.field.p)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, (self.vec - other.vec) % self.algebra.field.p)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, -self.vec)

    def scale(self, c: int) -> "AlgebraElement":
        return AlgebraElement(self.algebra, (self.vec * (c % self.algebra.field.p)))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        p = self.algebra.field.p
        acc = np.zeros(self.algebra.dim, dtype=np.int64)
        nz1 = np.nonzero(self.vec)[0]
        nz2 = np.nonzero(other.vec)[0]
        for i in nz1:
            ci = int(self.vec[i])
            for j in nz2:
                acc = (acc + ci * int(other.vec[j]) * self.algebra.product_of_basis(int(i), int(j))) % p
        return AlgebraElement(self.algebra, acc)

    def to_polynomial(self) -> Polynomial:
        """Canonical lift: the combination of standard monomials itself."""
        terms = {self.algebra.basis[j]: int(c) for j, c in enumerate(self.vec) if c}
        return Polynomial(self.algebra.field, self.algebra.nvars, terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.algebra is other.algebra
            and bool(np.array_equal(self.vec, other.vec))
        )

    def __hash__(self):
        return hash((id(self.algebra), self.vec.tobytes()))

    def __repr__(self):
        return f"AlgebraElement({self.to_polynomial().text(self.algebra.varnames)})"

    def _check(self, other: "AlgebraElement"):
        if self.algebra is not other.algebra:
            raise InputError("elements of different algebras")


def build_algebra(field: Field, nvars: int, relations: Sequence[Polynomial],
                  degree_cap: int = 64, varnames: Optional[Sequence[str]] = None) -> Algebra:
    """Construct F_p[x_1..x_v]/(relations) with all degree tables materialized.

    Raises InputError when a relation is not homogeneous of degree >= 1 or
    when the quotient is still nonzero at degree_cap (possibly non-Artinian).
    """
    return Algebra(field, nvars, relations, varnames=varnames, degree_cap=degree_cap)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Product in the algebra (bilinear, commutative, associative)."""
    return a * b


def socle_dimension(A: Algebra) -> int:
    """Dimension of {a in A : m a = 0}, the annihilator of the maximal ideal."""
    if A.nvars == 0:
        return A.dim
    stacked = A.variable_action(0)
    for i in range(1, A.nvars):
        stacked = stacked.vstack(A.variable_action(i))
    return A.dim - stacked.rank()


def is_gorenstein(A: Algebra) -> bool:
    """True iff the socle is one dimensional."""
    return socle_dimension(A) == 1


def codimension(A: Algebra) -> int:
    """dim_k(m/m^2); for an Artinian algebra this is the usual codimension."""
    return len(A.slice_std(1))
