"""Exact dense linear algebra over prime fields F_p.

This is the sole arithmetic substrate of the engine.  Matrices are int64
arrays with entries normalized to [0, p); every operation is exact modular
arithmetic, no floating point anywhere.  Pivoting is deterministic (first
nonzero entry in column order), so all derived bases are reproducible
across runs and platforms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InputError

__all__ = ["Field", "Mat", "rref", "kernel_basis", "solve", "solve_matrix"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """The prime field F_p with 2 <= p < 2**31, validated at construction."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not (2 <= self.p < 2**31):
            raise InputError(f"field cardinality out of range: {self.p!r}")
        if not _is_prime(self.p):
            raise InputError(f"field cardinality must be prime, got {self.p}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def reduce(self, arr) -> np.ndarray:
        return np.asarray(arr, dtype=np.int64) % self.p


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """a @ b mod p without int64 overflow (entries of a, b lie in [0, p))."""
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    # at most `chunk` products of size < p^2 may be summed before reducing
    chunk = max(1, (2**62) // max(1, (p - 1) ** 2))
    if k <= chunk:
        return (a @ b) % p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, chunk):
        acc = (acc + a[:, s : s + chunk] @ b[s : s + chunk, :]) % p
    return acc


class Mat:
    """Immutable dense matrix over a prime field.

    Entries are stored row-major as a read-only int64 array, reduced mod p.
    """

    __slots__ = ("field", "a", "_rank")

    def __init__(self, field: Field, array):
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 2:
            raise InputError(f"matrix must be 2-dimensional, got shape {arr.shape}")
        arr = arr % field.p
        arr.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", arr)
        object.__setattr__(self, "_rank", None)

    def __setattr__(self, name, value):
        if name == "_rank":
            object.__setattr__(self, name, value)
        else:
            raise AttributeError("Mat is immutable")

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "Mat":
        if len(rows) == 0:
            if cols is None:
                raise InputError("cannot infer column count of an empty matrix")
            return cls.zeros(field, 0, cols)
        return cls(field, np.array([list(r) for r in rows], dtype=np.int64))

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.cols != other.rows:
            raise InputError(f"shape mismatch in product: {self.shape} @ {other.shape}")
        return Mat(self.field, _matmul_mod(self.a, other.a, self.field.p))

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.shape != other.shape:
            raise InputError(f"shape mismatch in sum: {self.shape} + {other.shape}")
        return Mat(self.field, (self.a + other.a) % self.field.p)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.shape != other.shape:
            raise InputError(f"shape mismatch in difference: {self.shape} - {other.shape}")
        return Mat(self.field, (self.a - other.a) % self.field.p)

    def __neg__(self) -> "Mat":
        return Mat(self.field, (-self.a) % self.field.p)

    def scale(self, c: int) -> "Mat":
        return Mat(self.field, (self.a * (c % self.field.p)) % self.field.p)

    def transpose(self) -> "Mat":
        return Mat(self.field, self.a.T)

    def hstack(self, other: "Mat") -> "Mat":
        self._check_field(other)
        return Mat(self.field, np.hstack([self.a, other.a]))

    def vstack(self, other: "Mat") -> "Mat":
        self._check_field(other)
        return Mat(self.field, np.vstack([self.a, other.a]))

    @property
    def shape(self) -> tuple:
        return self.a.shape

    def is_zero(self) -> bool:
        return not self.a.any()

    def rank(self) -> int:
        if self._rank is None:
            self._rank = rref(self)[2]
        return self._rank

    def column(self, j: int) -> np.ndarray:
        return self.a[:, j].copy()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.a.tobytes()))

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols} over F_{self.field.p})"

    def _check_field(self, other: "Mat"):
        if self.field != other.field:
            raise InputError("matrices over different fields")


def _rref_array(a: np.ndarray, p: int):
    """In-place style RREF on a copy; returns (array, pivot column list)."""
    A = a.copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        f = A[:, c].copy()
        f[r] = 0
        if f.any():
            A -= np.outer(f, A[r])
            A %= p
        pivots.append(c)
        r += 1
    return A, pivots


def rref(m: Mat):
    """Reduced row-echelon form.

    Returns (reduced, pivot_columns, rank).  The row space is preserved and
    the result is canonical: pivots are chosen as the first nonzero entry in
    column order, each pivot is normalized to 1 and cleared above and below.
    """
    A, pivots = _rref_array(m.a, m.field.p)
    return Mat(m.field, A), tuple(pivots), len(pivots)


def kernel_basis(m: Mat) -> Mat:
    """Matrix whose columns are a basis of the null space {x : m x = 0}.

    Columns are produced in increasing free-column order, one per non-pivot
    column, so the basis is canonical for a given input.
    """
    R, pivots, rank = rref(m)
    p = m.field.p
    free = [j for j in range(m.cols) if j not in set(pivots)]
    K = np.zeros((m.cols, len(free)), dtype=np.int64)
    for idx, f in enumerate(free):
        K[f, idx] = 1
        for r, pc in enumerate(pivots):
            K[pc, idx] = (-int(R.a[r, f])) % p
    return Mat(m.field, K)


def solve(m: Mat, b) -> Optional[np.ndarray]:
    """One exact solution x of m x = b, or None when b is not in the column space."""
    bv = np.asarray(b, dtype=np.int64) % m.field.p
    if bv.ndim != 1 or bv.shape[0] != m.rows:
        raise InputError(f"right-hand side has {bv.shape} entries, expected {m.rows}")
    X = solve_matrix(m, Mat(m.field, bv.reshape(-1, 1)))
    return None if X is None else X.a[:, 0].copy()


def solve_matrix(m: Mat, B: Mat) -> Optional[Mat]:
    """Solve m X = B for all columns at once; None when any column is unsolvable."""
    if B.rows != m.rows:
        raise InputError(f"right-hand side has {B.rows} rows, expected {m.rows}")
    aug = np.hstack([m.a, B.a])
    R, pivots = _rref_array(aug, m.field.p)
    if any(pc >= m.cols for pc in pivots):
        return None
    X = np.zeros((m.cols, B.cols), dtype=np.int64)
    for r, pc in enumerate(pivots):
        X[pc, :] = R[r, m.cols :]
    return Mat(m.field, X)
