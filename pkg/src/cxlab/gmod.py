"""Finitely generated graded modules over a graded Artinian algebra.

A module is a graded vector space with one commuting action matrix per
algebra variable.  Every constructor verifies the module axioms at build
time (commutativity, vanishing of the relations, degree shifts): the
engine asserts, it never assumes.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InputError
from .exactla import Field, Mat, kernel_basis, rref
from .gralg import Algebra, AlgebraElement

__all__ = [
    "Module",
    "FreeModule",
    "ModuleMap",
    "IsoVerdict",
    "free_module",
    "coker_presentation",
    "residue_field",
    "direct_sum",
    "shift",
    "min_generators",
    "depth",
    "hom_space",
    "is_isomorphic",
    "quotient_by_span",
    "submodule_from_span",
]


class Module:
    """Graded module: degree-labelled basis plus commuting variable actions."""

    def __init__(self, algebra: Algebra, degrees: Sequence[int], actions: Sequence[Mat],
                 provenance: str = "", chi_cuts: Optional[int] = None,
                 _skip_verify: bool = False):
        self.algebra = algebra
        self.degrees = tuple(int(d) for d in degrees)
        self.actions = tuple(actions)
        self.provenance = provenance
        self.chi_cuts = chi_cuts
        self._monomial_actions: Dict[Tuple[int, ...], Mat] = {}
        self._resolution = None
        if not _skip_verify:
            self._verify()

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def field(self) -> Field:
        return self.algebra.field

    def _verify(self):
        A = self.algebra
        n = self.dim
        if len(self.actions) != A.nvars:
            raise InputError(f"expected {A.nvars} action matrices, got {len(self.actions)}")
        for X in self.actions:
            if X.shape != (n, n):
                raise InputError(f"action matrix has shape {X.shape}, expected ({n}, {n})")
            if X.field != A.field:
                raise InputError("action matrix over the wrong field")
        # degree shift: x_i maps the degree-d slice into the degree-(d+1) slice
        for X in self.actions:
            rr, cc = np.nonzero(X.a)
            for r, c in zip(rr, cc):
                assert self.degrees[r] == self.degrees[c] + 1, (
                    f"action entry ({r},{c}) violates grading: "
                    f"{self.degrees[c]} -> {self.degrees[r]}"
                )
        # commutativity
        for i in range(A.nvars):
            for j in range(i + 1, A.nvars):
                assert self.actions[i] @ self.actions[j] == self.actions[j] @ self.actions[i], (
                    f"actions of variables {i} and {j} do not commute"
                )
        # every algebra relation must act as zero
        for g in A.relations:
            acc = Mat.zeros(A.field, n, n)
            for e, c in g.terms:
                acc = acc + self.monomial_action(e).scale(c)
            assert acc.is_zero(), f"relation {g!r} does not annihilate the module"

    def monomial_action(self, e: Tuple[int, ...]) -> Mat:
        """Action of the monomial x^e (product of the commuting variable actions)."""
        e = tuple(int(a) for a in e)
        got = self._monomial_actions.get(e)
        if got is not None:
            return got
        out = Mat.identity(self.field, self.dim)
        for i, a in enumerate(e):
            for _ in range(a):
                out = self.actions[i] @ out
        self._monomial_actions[e] = out
        return out

    def element_action(self, a: AlgebraElement) -> Mat:
        if a.algebra is not self.algebra:
            raise InputError("element of a different algebra")
        out = Mat.zeros(self.field, self.dim, self.dim)
        for j in np.nonzero(a.vec)[0]:
            out = out + self.monomial_action(self.algebra.basis[int(j)]).scale(int(a.vec[j]))
        return out

    def hilbert(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.degrees).items()))

    def is_zero_module(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        tag = f" {self.provenance}" if self.provenance else ""
        return f"Module(dim {self.dim} over F_{self.field.p},{tag} degrees {sorted(set(self.degrees))})"


class FreeModule(Module):
    """Free module on homogeneous generators; basis is generator-major blocks
    (generator g, standard monomial m) with degree deg(m) + deg(g)."""

    def __init__(self, algebra: Algebra, gen_degrees: Sequence[int]):
        self.gen_degrees = tuple(int(d) for d in gen_degrees)
        dA = algebra.dim
        degrees = []
        for g in self.gen_degrees:
            degrees.extend(d + g for d in algebra.basis_degrees)
        actions = []
        for i in range(algebra.nvars):
            blk = algebra.variable_action(i).a
            n = dA * len(self.gen_degrees)
            arr = np.zeros((n, n), dtype=np.int64)
            for g in range(len(self.gen_degrees)):
                arr[g * dA : (g + 1) * dA, g * dA : (g + 1) * dA] = blk
            actions.append(Mat(algebra.field, arr))
        # the blocks are the regular representation; verifying it once per
        # algebra certifies every block-diagonal power of it
        certified = getattr(algebra, "_regular_rep_ok", False)
        super().__init__(algebra, degrees, actions, provenance="free",
                         _skip_verify=certified)
        if not certified:
            algebra._regular_rep_ok = True

    @property
    def rank(self) -> int:
        return len(self.gen_degrees)

    def gen_vector(self, g: int) -> np.ndarray:
        """Basis vector of the g-th generator (the monomial 1 in block g)."""
        v = np.zeros(self.dim, dtype=np.int64)
        v[g * self.algebra.dim] = 1
        return v

    def block(self, vec: np.ndarray, g: int) -> np.ndarray:
        dA = self.algebra.dim
        return np.asarray(vec[g * dA : (g + 1) * dA], dtype=np.int64)

    def to_algebra_entries(self, vec: np.ndarray) -> List[AlgebraElement]:
        """Split a coordinate vector into one algebra element per generator."""
        return [AlgebraElement(self.algebra, self.block(vec, g)) for g in range(self.rank)]


def free_module(algebra: Algebra, gen_degrees: Sequence[int]) -> FreeModule:
    return FreeModule(algebra, gen_degrees)


def realize_algebra_matrix(src: FreeModule, tgt: FreeModule,
                           entries: Sequence[Sequence[AlgebraElement]]) -> Mat:
    """Field-linear matrix of the map src -> tgt given by a matrix over A.

    entries[i][j] is the coefficient of generator i of tgt on generator j of
    src; basis column (g, m) maps to the coordinates of entries[.][g] * m.
    """
    A = src.algebra
    if len(entries) != tgt.rank or any(len(r) != src.rank for r in entries):
        raise InputError("entry matrix shape does not match generator counts")
    out = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    dA = A.dim
    for j in range(src.rank):
        col_elts = [entries[i][j] for i in range(tgt.rank)]
        for mi, mono in enumerate(A.basis):
            col = j * dA + mi
            for i, a in enumerate(col_elts):
                if a.is_zero():
                    continue
                prod = a * A.basis_element(mi)
                out[i * dA : (i + 1) * dA, col] = prod.vec
    return Mat(A.field, out)


def residue_field(algebra: Algebra) -> Module:
    """k = A/m as a module: one basis vector in degree 0, all actions zero."""
    z = Mat.zeros(algebra.field, 1, 1)
    return Module(algebra, [0], [z] * algebra.nvars, provenance="k", chi_cuts=0)


def direct_sum(m: Module, n: Module) -> Module:
    if m.algebra is not n.algebra:
        raise InputError("direct sum of modules over different algebras")
    degrees = m.degrees + n.degrees
    actions = []
    for i in range(m.algebra.nvars):
        arr = np.zeros((m.dim + n.dim, m.dim + n.dim), dtype=np.int64)
        arr[: m.dim, : m.dim] = m.actions[i].a
        arr[m.dim :, m.dim :] = n.actions[i].a
        actions.append(Mat(m.field, arr))
    return Module(m.algebra, degrees, actions, provenance="sum")


def shift(m: Module, s: int) -> Module:
    """Relabel every degree by +s; nothing else changes."""
    return Module(m.algebra, [d + s for d in m.degrees], m.actions,
                  provenance=m.provenance or "shift", chi_cuts=m.chi_cuts)


def min_generators(m: Module) -> List[Tuple[np.ndarray, int]]:
    """A basis of M/mM lifted to homogeneous elements of M, with degrees.

    Lifts are unit coordinate vectors at the non-pivot positions of the
    reduced echelon form of mM, so the choice is canonical.
    """
    if m.dim == 0:
        return []
    if m.algebra.nvars == 0:
        span_rows = Mat.zeros(m.field, 0, m.dim)
    else:
        # mM is spanned by the images of the basis under each variable
        span_rows = Mat(m.field, np.vstack([X.a.T for X in m.actions]))
    _, pivots, _ = rref(span_rows)
    pivot_set = set(pivots)
    gens = []
    for q in range(m.dim):
        if q not in pivot_set:
            v = np.zeros(m.dim, dtype=np.int64)
            v[q] = 1
            gens.append((v, m.degrees[q]))
    return gens


def depth(m: Module) -> int:
    """Depth over an Artinian local ring: always 0 for a nonzero module."""
    if m.dim == 0:
        raise InputError("depth of the zero module is undefined")
    return 0


@dataclass
class ModuleMap:
    """Field-linear map that commutes with every variable action."""

    source: Module
    target: Module
    matrix: Mat

    def is_equivariant(self) -> bool:
        for i in range(self.source.algebra.nvars):
            if self.matrix @ self.source.actions[i] != self.target.actions[i] @ self.matrix:
                return False
        return True

    def degree_shift(self) -> Optional[int]:
        """Common degree shift when the map is homogeneous, else None."""
        rr, cc = np.nonzero(self.matrix.a)
        shifts = {self.target.degrees[r] - self.source.degrees[c] for r, c in zip(rr, cc)}
        if len(shifts) > 1:
            return None
        return shifts.pop() if shifts else 0

    def is_invertible(self) -> bool:
        return self.source.dim == self.target.dim and self.matrix.rank() == self.source.dim

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        if other.target is not self.source:
            raise InputError("maps do not compose")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)


def hom_space(m: Module, n: Module) -> List[ModuleMap]:
    """Basis of Hom_A(M, N) = {phi : phi X_i = X_i phi for all i}.

    Solved as one field-linear system; the basis is canonical under the
    deterministic pivoting of the kernel computation.
    """
    if m.algebra is not n.algebra:
        raise InputError("hom between modules over different algebras")
    p = m.field.p
    dM, dN = m.dim, n.dim
    if dM == 0 or dN == 0:
        return []
    nv = m.algebra.nvars
    if nv == 0:
        blocks = np.zeros((0, dN * dM), dtype=np.int64)
    else:
        rows = []
        I_N = np.eye(dN, dtype=np.int64)
        I_M = np.eye(dM, dtype=np.int64)
        for i in range(nv):
            # row-major vec(phi): vec(phi X) = (I (x) X^T) v, vec(X phi) = (X (x) I) v
            block = (np.kron(I_N, m.actions[i].a.T) - np.kron(n.actions[i].a, I_M)) % p
            rows.append(block)
        blocks = np.vstack(rows)
    K = kernel_basis(Mat(m.field, blocks))
    maps = []
    for j in range(K.cols):
        phi = Mat(m.field, K.a[:, j].reshape(dN, dM))
        mm = ModuleMap(m, n, phi)
        assert mm.is_equivariant()
        maps.append(mm)
    return maps


@dataclass
class IsoVerdict:
    """Outcome of the randomized isomorphism search.

    kind is one of "yes", "structurally_distinct", "no_witness_found";
    the inconclusive branch is never reported as a definite "no".
    """

    kind: str
    witness: Optional[ModuleMap] = None
    reason: Optional[str] = None

    def to_jsonable(self) -> dict:
        return {"kind": self.kind, "reason": self.reason}


def is_isomorphic(m: Module, n: Module, seed: int = 0, attempts: int = 64) -> IsoVerdict:
    """Search for an invertible equivariant map M -> N.

    Structural invariants (dimension, graded dimensions, minimal generator
    count) rule out isomorphism outright; otherwise basis homomorphisms and
    seeded random combinations are tried.  A verified witness gives "yes";
    exhaustion gives "no_witness_found", which is explicitly inconclusive.
    """
    if m.algebra is not n.algebra:
        raise InputError("modules over different algebras")
    if m.dim != n.dim:
        return IsoVerdict("structurally_distinct", reason=f"dim {m.dim} != {n.dim}")
    if m.hilbert() != n.hilbert():
        return IsoVerdict("structurally_distinct", reason=f"graded dimensions differ: {m.hilbert()} vs {n.hilbert()}")
    if len(min_generators(m)) != len(min_generators(n)):
        return IsoVerdict("structurally_distinct", reason="minimal generator counts differ")
    if m.dim == 0:
        return IsoVerdict("yes", witness=ModuleMap(m, n, Mat.zeros(m.field, 0, 0)))
    basis = hom_space(m, n)
    if not basis:
        return IsoVerdict("no_witness_found", reason="Hom(M, N) = 0")
    for cand in basis:
        if cand.is_invertible():
            return IsoVerdict("yes", witness=cand)
    rng = random.Random(seed)
    p = m.field.p
    for _ in range(attempts):
        coeffs = [rng.randrange(p) for _ in basis]
        if not any(coeffs):
            continue
        acc = Mat.zeros(m.field, n.dim, m.dim)
        for c, bm in zip(coeffs, basis):
            if c:
                acc = acc + bm.matrix.scale(c)
        cand = ModuleMap(m, n, acc)
        if cand.is_invertible():
            assert cand.is_equivariant()
            return IsoVerdict("yes", witness=cand)
    return IsoVerdict("no_witness_found", reason=f"no invertible combination in {attempts} attempts")


# -- subquotient machinery -------------------------------------------------


def _row_degree(m: Module, row: np.ndarray) -> int:
    degs = {m.degrees[j] for j in np.nonzero(row)[0]}
    assert len(degs) == 1, f"inhomogeneous vector with degrees {degs}"
    return degs.pop()


@dataclass
class Quotient:
    module: Module
    projection: Mat  # ambient coords -> quotient coords
    lift: Mat        # quotient coords -> ambient coords (section)


def quotient_by_span(m: Module, span_rows: Mat, provenance: str = "quotient",
                     chi_cuts: Optional[int] = None) -> Quotient:
    """Quotient of M by the subspace spanned by the given homogeneous rows.

    The rows must span an A-submodule (verified).  The quotient basis is the
    set of non-pivot coordinates of the span's reduced echelon form, so the
    construction is canonical.
    """
    if span_rows.cols != m.dim:
        raise InputError("span vectors have the wrong length")
    p = m.field.p
    R, pivots, rank = rref(span_rows)
    nonpivot = [j for j in range(m.dim) if j not in set(pivots)]
    for r in range(rank):
        _row_degree(m, R.a[r])
    proj = np.zeros((len(nonpivot), m.dim), dtype=np.int64)
    pos = {j: q for q, j in enumerate(nonpivot)}
    for j in nonpivot:
        proj[pos[j], j] = 1
    for r, pc in enumerate(pivots):
        for j in nonpivot:
            c = int(R.a[r, j])
            if c:
                proj[pos[j], pc] = (-c) % p
    P = Mat(m.field, proj)
    lift = np.zeros((m.dim, len(nonpivot)), dtype=np.int64)
    for q, j in enumerate(nonpivot):
        lift[j, q] = 1
    L = Mat(m.field, lift)
    # invariance of the span: the induced actions are well defined
    Rt = R.transpose()
    for i in range(m.algebra.nvars):
        assert (P @ (m.actions[i] @ Rt)).is_zero(), "span is not an A-submodule"
    actions = [P @ m.actions[i] @ L for i in range(m.algebra.nvars)]
    degrees = [m.degrees[j] for j in nonpivot]
    q = Module(m.algebra, degrees, actions, provenance=provenance, chi_cuts=chi_cuts)
    return Quotient(q, P, L)


@dataclass
class Submodule:
    module: Module
    inclusion: Mat  # submodule coords -> ambient coords


def submodule_from_span(m: Module, span_rows: Mat, provenance: str = "submodule") -> Submodule:
    """The A-submodule spanned by the given homogeneous rows, as a module.

    The basis is the reduced echelon form of the span; coordinates in the
    span are read off the pivot columns.
    """
    if span_rows.cols != m.dim:
        raise InputError("span vectors have the wrong length")
    R, pivots, rank = rref(span_rows)
    degrees = [_row_degree(m, R.a[r]) for r in range(rank)]
    inc = Mat(m.field, R.a[:rank].T)
    actions = []
    for i in range(m.algebra.nvars):
        img = m.actions[i] @ inc  # ambient coords of X_i applied to each basis row
        coords = img.a[list(pivots), :] if rank else np.zeros((0, rank), dtype=np.int64)
        # reconstruction check: the span is closed under the action
        assert np.array_equal((inc.a @ coords) % m.field.p, img.a), "span is not closed under the action"
        actions.append(Mat(m.field, coords))
    sub = Module(m.algebra, degrees, actions, provenance=provenance)
    return Submodule(sub, inc)


def coker_presentation(algebra: Algebra, entries: Sequence[Sequence[AlgebraElement]],
                       row_degrees: Sequence[int]) -> Module:
    """Cokernel of the map of free modules presented by a homogeneous matrix.

    entries[i][j] sits in row i (generator of degree row_degrees[i]) and
    column j; every nonzero entry of a column must yield the same total
    degree (generator degree plus entry degree), otherwise the column degree
    would be ambiguous and the presentation is rejected.
    """
    rows = len(row_degrees)
    if len(entries) != rows:
        raise InputError(f"presentation has {len(entries)} rows, degrees give {rows}")
    ncols = len(entries[0]) if rows else 0
    for r in entries:
        if len(r) != ncols:
            raise InputError("ragged presentation matrix")
    F = free_module(algebra, row_degrees)
    for j in range(ncols):
        col_degs = set()
        for i in range(rows):
            a = entries[i][j]
            if a.algebra is not algebra:
                raise InputError("presentation entry over the wrong algebra")
            if a.is_zero():
                continue
            d = a.degree()
            if d is None:
                raise InputError(f"presentation entry ({i},{j}) is not homogeneous")
            col_degs.add(d + row_degrees[i])
        if len(col_degs) != 1:
            raise InputError(f"column {j} has ambiguous degree {sorted(col_degs)}")
    dA = algebra.dim
    span = []
    for j in range(ncols):
        col = np.zeros(F.dim, dtype=np.int64)
        for i in range(rows):
            col[i * dA : (i + 1) * dA] = entries[i][j].vec
        for e in algebra.basis:
            span.append(F.monomial_action(e).a @ col % algebra.field.p)
    span_rows = Mat.from_rows(algebra.field, span, cols=F.dim) if span else Mat.zeros(algebra.field, 0, F.dim)
    return quotient_by_span(F, span_rows, provenance="coker").module
