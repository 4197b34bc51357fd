"""Dense exact linear algebra over the Gaussian rationals.

Everything here is deterministic: Gaussian elimination always takes the
first row with a nonzero entry in the current column, and Element-level
solvers order their rows by sorted basis keys.  Failures are therefore
reproducible bit for bit.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .elements import Element
from .errors import DomainMismatch
from .scalars import ONE, ZERO, Scalar


class Matrix:
    """Mutable dense matrix of Scalars; rows of equal length."""

    __slots__ = ("rows", "m", "n")

    def __init__(self, rows: list, ncols: int | None = None):
        self.rows = [list(r) for r in rows]
        self.m = len(self.rows)
        self.n = len(self.rows[0]) if self.rows else (ncols or 0)

    @classmethod
    def zeros(cls, m: int, n: int) -> "Matrix":
        return cls([[ZERO] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        rows = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = ONE
        return cls(rows)

    def copy(self) -> "Matrix":
        return Matrix(self.rows)

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.m)] for j in range(self.n)])

    def mul(self, other: "Matrix") -> "Matrix":
        assert self.n == other.m
        out = Matrix.zeros(self.m, other.n)
        for i in range(self.m):
            row = self.rows[i]
            orow = out.rows[i]
            for k in range(self.n):
                c = row[k]
                if not c:
                    continue
                brow = other.rows[k]
                for j in range(other.n):
                    if brow[j]:
                        orow[j] = orow[j] + c * brow[j]
        return out

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and its pivot columns (first-nonzero pivoting)."""
        a = self.copy()
        pivots: list[int] = []
        r = 0
        for c in range(a.n):
            pivot = None
            for i in range(r, a.m):
                if a.rows[i][c]:
                    pivot = i
                    break
            if pivot is None:
                continue
            a.rows[r], a.rows[pivot] = a.rows[pivot], a.rows[r]
            inv = a.rows[r][c].inverse()
            a.rows[r] = [x * inv for x in a.rows[r]]
            for i in range(a.m):
                if i != r and a.rows[i][c]:
                    f = a.rows[i][c]
                    a.rows[i] = [
                        x - f * y for x, y in zip(a.rows[i], a.rows[r])
                    ]
            pivots.append(c)
            r += 1
            if r == a.m:
                break
        return a, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def solve(self, rhs: "Matrix") -> "Matrix | None":
        """One exact solution of ``self @ X = rhs`` (free variables 0), or None."""
        assert rhs.m == self.m
        aug = Matrix([self.rows[i] + rhs.rows[i] for i in range(self.m)])
        red, pivots = aug.rref()
        piv_in_lhs = [p for p in pivots if p < self.n]
        # inconsistent iff a pivot lands in the rhs block
        if len(piv_in_lhs) != len(pivots):
            return None
        x = Matrix.zeros(self.n, rhs.n)
        for r, p in enumerate(piv_in_lhs):
            for j in range(rhs.n):
                x.rows[p][j] = red.rows[r][self.n + j]
        return x

    def nullspace(self) -> list[list[Scalar]]:
        """Deterministic basis of the right kernel."""
        red, pivots = self.rref()
        pivset = set(pivots)
        free = [c for c in range(self.n) if c not in pivset]
        basis = []
        for f in free:
            v = [ZERO] * self.n
            v[f] = ONE
            for r, p in enumerate(pivots):
                v[p] = -red.rows[r][f]
            basis.append(v)
        return basis

    def inverse(self) -> "Matrix | None":
        if self.m != self.n:
            return None
        sol = self.solve(Matrix.identity(self.n))
        if sol is None:
            return None
        # solve() returns garbage-free only if rank is full; verify
        if self.mul(sol).rows != Matrix.identity(self.n).rows:
            return None
        return sol


# -- Element-level helpers -------------------------------------------------


def _common_domain(elements: Sequence[Element]) -> str:
    domains = {e.domain for e in elements}
    if len(domains) != 1:
        raise DomainMismatch(f"mixed domains {sorted(domains)!r}")
    return domains.pop()


def elements_to_matrix(elements: Sequence[Element], keys: Sequence) -> Matrix:
    """Column matrix of the elements' coefficients over the given row keys."""
    idx = {k: i for i, k in enumerate(keys)}
    mat = Matrix.zeros(len(keys), len(elements))
    for j, e in enumerate(elements):
        for k, c in e.coeffs.items():
            mat.rows[idx[k]][j] = c
    return mat


def union_support(elements: Sequence[Element]) -> list:
    keys = set()
    for e in elements:
        keys.update(e.coeffs)
    return sorted(keys)


def linear_solve(generators: Sequence[Element], target: Element):
    """Exact coefficients c with sum(c_i * g_i) = target, or None.

    Deterministic: rows are the sorted union support, elimination pivots on
    the first nonzero entry.
    """
    _common_domain(list(generators) + [target])
    keys = union_support(list(generators) + [target])
    a = elements_to_matrix(generators, keys)
    b = elements_to_matrix([target], keys)
    sol = a.solve(b)
    if sol is None:
        return None
    coeffs = [sol.rows[i][0] for i in range(len(generators))]
    # solve() guarantees consistency of the augmented system exactly
    return coeffs


class SparseEliminator:
    """Incremental sparse row reduction keyed by sorted basis keys.

    Rows are dicts key -> Scalar; each accepted pivot row is normalised on
    its least key.  Scales to large sparse operator families where a dense
    rref would not.
    """

    def __init__(self):
        self.pivots: dict = {}  # lead key -> reduced row

    @staticmethod
    def _lead(row: dict):
        return min(row)

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        while row:
            lead = self._lead(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row
            c = row[lead]
            for k, v in piv.items():
                cur = row.get(k)
                nv = (cur - c * v) if cur is not None else -c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Reduce and keep the row; True if it enlarged the span."""
        red = self.reduce(row)
        if not red:
            return False
        lead = self._lead(red)
        inv = red[lead].inverse()
        self.pivots[lead] = {k: v * inv for k, v in red.items()}
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def span_rank(elements: Sequence[Element]) -> int:
    elim = SparseEliminator()
    for e in elements:
        elim.add(e.coeffs)
    return elim.rank


def in_span(generators: Sequence[Element], target: Element) -> bool:
    elim = SparseEliminator()
    for e in generators:
        elim.add(e.coeffs)
    return elim.contains(target.coeffs)


def spans_same(a: Sequence[Element], b: Sequence[Element]) -> bool:
    """Exact subspace equality: equal ranks and mutual containment."""
    ea, eb = SparseEliminator(), SparseEliminator()
    for e in a:
        ea.add(e.coeffs)
    for e in b:
        eb.add(e.coeffs)
    if ea.rank != eb.rank:
        return False
    return all(ea.contains(e.coeffs) for e in b) and all(
        eb.contains(e.coeffs) for e in a
    )


def kernel_elements(
    rows: Sequence[Element], unknowns_domain: str, unknown_keys: Sequence
) -> list[Element]:
    """Kernel of the map sending the unknown vector to the stacked rows.

    ``rows[i]`` is interpreted as the linear constraint whose coefficient on
    unknown ``unknown_keys[j]`` is ``rows[i].coeff(unknown_keys[j])``.
    """
    mat = Matrix(
        [[r.coeff(k) for k in unknown_keys] for r in rows]
    )
    return [
        Element(unknowns_domain, dict(zip(unknown_keys, v)))
        for v in mat.nullspace()
    ]


class LinearMap:
    """Basis-indexed linear map between element domains."""

    __slots__ = ("src_domain", "dst_domain", "table")

    def __init__(self, src_domain: str, dst_domain: str, table: dict):
        self.src_domain = src_domain
        self.dst_domain = dst_domain
        self.table = table  # key -> Element over dst_domain

    def __call__(self, x: Element) -> Element:
        if x.domain != self.src_domain:
            raise DomainMismatch(f"{x.domain!r} vs {self.src_domain!r}")
        out = Element.zero(self.dst_domain)
        for k, c in x.coeffs.items():
            out = out + self.table[k].scale(c)
        return out

    @classmethod
    def from_function(cls, src_domain, dst_domain, keys, fn: Callable) -> "LinearMap":
        return cls(src_domain, dst_domain, {k: fn(k) for k in keys})

    def compose(self, inner: "LinearMap") -> "LinearMap":
        return LinearMap(
            inner.src_domain,
            self.dst_domain,
            {k: self(v) for k, v in inner.table.items()},
        )

    def matrix(self, src_keys: Sequence, dst_keys: Sequence) -> Matrix:
        idx = {k: i for i, k in enumerate(dst_keys)}
        mat = Matrix.zeros(len(dst_keys), len(src_keys))
        for j, k in enumerate(src_keys):
            for k2, c in self.table[k].coeffs.items():
                mat.rows[idx[k2]][j] = c
        return mat

    def inverse_on(self, src_keys: Sequence, dst_keys: Sequence) -> "LinearMap | None":
        inv = self.matrix(src_keys, dst_keys).inverse()
        if inv is None:
            return None
        table = {}
        for j, k in enumerate(dst_keys):
            table[k] = Element(
                self.src_domain,
                {src_keys[i]: inv.rows[i][j] for i in range(len(src_keys))},
            )
        return LinearMap(self.dst_domain, self.src_domain, table)
