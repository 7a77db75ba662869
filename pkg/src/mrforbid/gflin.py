"""Dense linear algebra over GF(p) for p in {2, 3, 5, 7}.

Matrices over GF(2) are handled with one int per row (bit j = column j);
other primes use plain lists of residues.  Elimination always takes the
leftmost pivot column and the topmost available row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

SUPPORTED_PRIMES = (2, 3, 5, 7)


class DimensionError(ValueError):
    """Operands have incompatible shapes or fields."""


@dataclass(frozen=True)
class FieldSpec:
    p: int

    def __post_init__(self) -> None:
        if self.p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported field size {self.p}; expected one of {SUPPORTED_PRIMES}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def nonzero(self) -> range:
        return range(1, self.p)

    def __str__(self) -> str:
        return f"GF({self.p})"


GF2 = FieldSpec(2)


def as_field(field: FieldSpec | int) -> FieldSpec:
    return field if isinstance(field, FieldSpec) else FieldSpec(field)


@dataclass(frozen=True)
class FVector:
    field: FieldSpec
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(not 0 <= e < self.field.p for e in self.entries):
            raise ValueError("vector entry out of range")

    @classmethod
    def of(cls, field: FieldSpec | int, entries: Iterable[int]) -> "FVector":
        f = as_field(field)
        return cls(f, tuple(int(e) % f.p for e in entries))

    @classmethod
    def zeros(cls, field: FieldSpec | int, n: int) -> "FVector":
        return cls(as_field(field), (0,) * n)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def is_zero(self) -> bool:
        return not any(self.entries)


@dataclass(frozen=True)
class FMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError("entries do not match the declared shape")
        p = self.field.p
        if any(not 0 <= e < p for r in self.entries for e in r):
            raise ValueError("matrix entry out of range")

    @classmethod
    def of(cls, field: FieldSpec | int, rows: Sequence[Sequence[int]]) -> "FMatrix":
        f = as_field(field)
        ent = tuple(tuple(int(e) % f.p for e in r) for r in rows)
        ncols = len(ent[0]) if ent else 0
        return cls(f, len(ent), ncols, ent)

    @classmethod
    def from_bitrows(cls, rows: Sequence[int], n: int) -> "FMatrix":
        """Square GF(2) matrix from bit-packed rows."""
        return cls(GF2, n, n, tuple(tuple((r >> j) & 1 for j in range(n)) for r in rows))

    def bitrows(self) -> list[int]:
        if self.field.p != 2:
            raise ValueError("bit-packed rows only exist over GF(2)")
        return [sum(1 << j for j, e in enumerate(r) if e) for r in self.entries]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i)
        )

    def transpose(self) -> "FMatrix":
        return FMatrix(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def column(self, j: int) -> FVector:
        return FVector(self.field, tuple(r[j] for r in self.entries))

    def matvec(self, a: Sequence[int]) -> FVector:
        if len(a) != self.cols:
            raise DimensionError("vector length does not match column count")
        p = self.field.p
        return FVector(self.field, tuple(sum(x * y for x, y in zip(r, a)) % p for r in self.entries))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(e) for e in r) for r in self.entries)


# ---------------------------------------------------------------------------
# raw kernels


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of bit-packed GF(2) rows.

    The basis is kept sorted by decreasing value so that ``min(r, r ^ b)``
    clears each leading bit exactly once.
    """
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def modp_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of a list-of-lists matrix over GF(p) by row reduction."""
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(work)):
            if work[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = pow(prow[col], p - 2, p)
        if inv != 1:
            prow = [(x * inv) % p for x in prow]
            work[rank] = prow
        for i in range(rank + 1, len(work)):
            f = work[i][col] % p
            if f:
                r = work[i]
                work[i] = [(x - f * y) % p for x, y in zip(r, prow)]
        rank += 1
        if rank == len(work):
            break
    return rank


def _rref(rows: list[list[int]], p: int, ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form restricted to the first ``ncols`` columns."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][col] % p), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][col], p - 2, p)
        work[rank] = [(x * inv) % p for x in work[rank]]
        prow = work[rank]
        for i in range(len(work)):
            if i != rank:
                f = work[i][col] % p
                if f:
                    work[i] = [(x - f * y) % p for x, y in zip(work[i], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work, pivots


# ---------------------------------------------------------------------------
# public operations


def rank(m: FMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.p == 2:
        return gf2_rank(m.bitrows())
    return modp_rank(m.entries, m.field.p)


def hstack(a: FMatrix, b: FMatrix) -> FMatrix:
    if a.field != b.field or a.rows != b.rows:
        raise DimensionError("cannot place matrices side by side")
    return FMatrix(a.field, a.rows, a.cols + b.cols, tuple(x + y for x, y in zip(a.entries, b.entries)))


def col_space_contains(m: FMatrix, w: FVector | Sequence[int]) -> tuple[bool, FVector | None]:
    """Decide whether ``w`` lies in col(m).

    Returns ``(True, a)`` with ``m @ a == w`` (free variables set to 0), or
    ``(False, None)``.
    """
    if not isinstance(w, FVector):
        w = FVector.of(m.field, w)
    if w.field != m.field or len(w) != m.rows:
        raise DimensionError(f"vector of length {len(w)} against {m.rows} rows")
    p = m.field.p
    aug = [list(r) + [x] for r, x in zip(m.entries, w.entries)]
    red, pivots = _rref(aug, p, m.cols)
    r = len(pivots)
    if any(row[-1] for row in red[r:]):
        return False, None
    a = [0] * m.cols
    for i, c in enumerate(pivots):
        a[c] = red[i][-1]
    return True, FVector(m.field, tuple(a))


def col_space_equal(a: FMatrix, b: FMatrix) -> bool:
    if a.rows != b.rows or a.field != b.field:
        raise DimensionError("row count or field mismatch")
    ra, rb = rank(a), rank(b)
    return ra == rb and rank(hstack(a, b)) == ra


def bordered(m: FMatrix, u: FVector | Sequence[int], v: FVector | Sequence[int], c: int) -> FMatrix:
    """The matrix [[m, u], [v^T, c]]."""
    u = tuple(u)
    v = tuple(v)
    if len(u) != m.rows or len(v) != m.cols:
        raise DimensionError("border vectors are not conformal")
    p = m.field.p
    top = tuple(r + (x % p,) for r, x in zip(m.entries, u))
    bottom = tuple(x % p for x in v) + (c % p,)
    return FMatrix(m.field, m.rows + 1, m.cols + 1, top + (bottom,))


def bordered_rank(m: FMatrix, u: FVector | Sequence[int], v: FVector | Sequence[int], c: int) -> int:
    return rank(bordered(m, u, v, c))


def bilinear(m: FMatrix, q: Sequence[int], pvec: Sequence[int]) -> int:
    """q^T m p."""
    return sum(x * y for x, y in zip(q, m.matvec(pvec).entries)) % m.field.p
