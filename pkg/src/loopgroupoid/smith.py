"""Exact integer matrices, Smith normal form, and diagonalization over ℤ/m.

``smith_normal_form`` works over the integers with Python's arbitrary
precision and returns unimodular ``U``, ``V`` with ``U·M·V = D``.
``diagonalize_mod`` is a leaner variant over ℤ/m used for kernels of large
coboundary matrices: it keeps entries reduced, tracks only the column
transform, and does not bother with the divisibility chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence

import numpy as np


@dataclass(frozen=True)
class IntegerMatrix:
    entries: tuple[tuple[int, ...], ...]
    cols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)), cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ot = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntegerMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in ot) for r in self.entries),
            other.cols,
        )

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(tuple(zip(*self.entries)) if self.rows else ((),) * 0, self.rows)

    def determinant(self) -> int:
        """Bareiss fraction-free elimination; exact."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.determinant()) == 1

    def is_diagonal(self) -> bool:
        return all(v == 0 for i, r in enumerate(self.entries) for j, v in enumerate(r) if i != j)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.shape)))


def has_divisibility_chain(d: Sequence[int]) -> bool:
    """``d[0] | d[1] | ...`` with zeros (if any) only at the end."""
    for a, b in zip(d, d[1:]):
        if a == 0:
            if b != 0:
                return False
        elif b % a:
            return False
    return True


@dataclass(frozen=True)
class SmithForm:
    """``U·M·V = D``; unpacks as ``U, D, V``.  Inverses are filled on request."""

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix
    U_inv: IntegerMatrix | None = None
    V_inv: IntegerMatrix | None = None

    def __iter__(self) -> Iterator[IntegerMatrix]:
        return iter((self.U, self.D, self.V))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.D.diagonal() if d != 0)


class _Elimination:
    # Mutable working state for smith_normal_form.  U and V (and optionally
    # their inverses) follow every elementary operation applied to A.

    def __init__(self, A, cols, track_left, inverses):
        self.A = A
        self.r = len(A)
        self.c = cols
        self.track_left = track_left
        self.inverses = inverses
        self.U = _eye(self.r) if track_left else None
        self.V = _eye(self.c)
        self.U_inv = _eye(self.r) if (track_left and inverses) else None
        self.V_inv = _eye(self.c) if inverses else None

    def swap_rows(self, i, j):
        if i == j:
            return
        A = self.A
        A[i], A[j] = A[j], A[i]
        if self.U is not None:
            self.U[i], self.U[j] = self.U[j], self.U[i]
        if self.U_inv is not None:
            for row in self.U_inv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.A:
            row[i], row[j] = row[j], row[i]
        for row in self.V:
            row[i], row[j] = row[j], row[i]
        if self.V_inv is not None:
            self.V_inv[i], self.V_inv[j] = self.V_inv[j], self.V_inv[i]

    def add_row(self, dst, src, q):
        """row[dst] += q·row[src]"""
        rd, rs = self.A[dst], self.A[src]
        for k in range(len(rd)):
            if rs[k]:
                rd[k] += q * rs[k]
        if self.U is not None:
            ud, us = self.U[dst], self.U[src]
            for k in range(len(ud)):
                if us[k]:
                    ud[k] += q * us[k]
        if self.U_inv is not None:
            for row in self.U_inv:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(self, dst, src, q):
        """col[dst] += q·col[src]"""
        for row in self.A:
            if row[src]:
                row[dst] += q * row[src]
        for row in self.V:
            if row[src]:
                row[dst] += q * row[src]
        if self.V_inv is not None:
            vs, vd = self.V_inv[src], self.V_inv[dst]
            for k in range(len(vs)):
                if vd[k]:
                    vs[k] -= q * vd[k]

    def negate_row(self, i):
        self.A[i] = [-v for v in self.A[i]]
        if self.U is not None:
            self.U[i] = [-v for v in self.U[i]]
        if self.U_inv is not None:
            for row in self.U_inv:
                row[i] = -row[i]


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: IntegerMatrix, inverses: bool = False, track_left: bool = True) -> SmithForm:
    """Smith normal form with smallest-absolute-value pivoting.

    The diagonal of ``D`` is nonnegative and forms a divisibility chain.
    With ``track_left=False`` the left transform is not accumulated (``U`` is
    returned as ``None``), which saves a lot of work for tall matrices.
    """
    A = [list(r) for r in M.entries]
    st = _Elimination(A, M.cols, track_left, inverses)
    r, c = st.r, st.c
    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                row = A[i]
                for j in range(t, c):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return _finish(st, M)
            _, i, j = best
            st.swap_rows(t, i)
            st.swap_cols(t, j)

            while True:
                p = A[t][t]
                for i in range(t + 1, r):
                    if A[i][t]:
                        st.add_row(i, t, -(A[i][t] // p))
                for j in range(t + 1, c):
                    if A[t][j]:
                        st.add_col(j, t, -(A[t][j] // p))
                rest = [(abs(A[i][t]), i, None) for i in range(t + 1, r) if A[i][t]]
                rest += [(abs(A[t][j]), None, j) for j in range(t + 1, c) if A[t][j]]
                if not rest:
                    break
                _, i, j = min(rest, key=lambda e: e[0])
                if i is not None:
                    st.swap_rows(t, i)
                else:
                    st.swap_cols(t, j)

            p = A[t][t]
            bad = next(
                (i for i in range(t + 1, r) if any(A[i][j] % p for j in range(t + 1, c))),
                None,
            )
            if bad is None:
                break
            st.add_row(t, bad, 1)
        if A[t][t] < 0:
            st.negate_row(t)
    return _finish(st, M)


def _finish(st: _Elimination, M: IntegerMatrix) -> SmithForm:
    r, c = st.r, st.c

    def wrap(rows, n):
        return None if rows is None else IntegerMatrix.from_rows(rows, n)

    return SmithForm(
        U=wrap(st.U, r),
        D=IntegerMatrix.from_rows(st.A, c) if r else IntegerMatrix.zeros(0, c),
        V=wrap(st.V, c),
        U_inv=wrap(st.U_inv, r),
        V_inv=wrap(st.V_inv, c),
    )


def invariant_factors(M: IntegerMatrix) -> tuple[int, ...]:
    return smith_normal_form(M, track_left=False).invariant_factors


# ---------------------------------------------------------------------------
# over ℤ/m


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass(frozen=True)
class ModularDiagonal:
    """``U·M·V ≡ diag(pivots) (mod m)`` for some invertible ``U`` (not kept).

    ``annihilators[i] = gcd(pivot_i, m)`` for every column position, with
    ``m`` for columns carrying no pivot.  ``V`` and ``V_inv`` are integer
    arrays reduced mod ``m`` and inverse to each other mod ``m``.
    """

    modulus: int
    annihilators: tuple[int, ...]
    V: np.ndarray
    V_inv: np.ndarray

    def kernel_generators(self) -> list[np.ndarray]:
        """Generators of ``{x : M x ≡ 0 (mod m)}``, one per nontrivial coordinate."""
        m = self.modulus
        out = []
        for i, g in enumerate(self.annihilators):
            if g > 1:
                out.append((self.V[:, i] * (m // g)) % m)
        return out


MAX_MODULUS = 2**31


def diagonalize_mod(M, m: int) -> ModularDiagonal:
    """Diagonalize an integer matrix over ℤ/m by unimodular row and column steps."""
    if not 1 <= m < MAX_MODULUS:
        raise ValueError(f"modulus must lie in [1, 2^31), got {m}")
    A = np.asarray(M, dtype=np.int64)
    c = A.shape[1] if A.ndim == 2 else 0
    A = A.reshape(-1, c) % m
    if A.shape[0]:
        A = A[(A != 0).any(axis=1)]
        if A.shape[0]:
            A = np.unique(A, axis=0)
    V = np.eye(c, dtype=np.int64)
    V_inv = np.eye(c, dtype=np.int64)
    if m <= 1 << 16:
        lut = np.array([gcd(v, m) for v in range(m)], dtype=np.int64)
        gcd_m = lut.__getitem__
    else:
        gcd_m = lambda x: np.gcd(x, m)  # noqa: E731
    pivots = [0] * c
    t = dead = 0
    while t < min(A.shape[0], c):
        # Scan in row blocks and stop at the first unit; else take the least gcd.
        best = None
        for r0 in range(t, A.shape[0], 256):
            win = A[r0 : r0 + 256, t:]
            gw = np.where(win != 0, gcd_m(win), m + 1)
            i, j = np.unravel_index(int(np.argmin(gw)), gw.shape)
            if best is None or gw[i, j] < best[0]:
                best = (int(gw[i, j]), int(i) + r0, int(j) + t)
                if best[0] == 1:
                    break
        if best is None or best[0] > m:
            break
        _, i, j = best
        if i != t:
            A[[t, i]] = A[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
            V_inv[[t, j]] = V_inv[[j, t]]
        while True:
            p = int(A[t, t])
            gp = gcd(p, m)
            if gp > 1:
                col = A[t + 1 :, t]
                off = np.flatnonzero(col % gp)
                if len(off):
                    k = t + 1 + int(off[0])
                    b = int(A[k, t])
                    d, s, u = _xgcd(p, b)
                    rt, rk = A[t].copy(), A[k].copy()
                    A[t] = (s * rt + u * rk) % m
                    A[k] = ((-b // d) * rt + (p // d) * rk) % m
                    continue
                row = A[t, t + 1 :]
                off = np.flatnonzero(row % gp)
                if len(off):
                    k = t + 1 + int(off[0])
                    b = int(A[t, k])
                    d, s, u = _xgcd(p, b)
                    e, f = -b // d, p // d
                    for X in (A, V):
                        ct, ck = X[:, t].copy(), X[:, k].copy()
                        X[:, t] = (s * ct + u * ck) % m
                        X[:, k] = (e * ct + f * ck) % m
                    rt, rk = V_inv[t].copy(), V_inv[k].copy()
                    V_inv[t] = (f * rt - e * rk) % m
                    V_inv[k] = (-u * rt + s * rk) % m
                    continue
            break
        # every entry of row t and column t is now a multiple of gp
        mp = m // gp
        inv_unit = pow(p // gp, -1, mp) if mp > 1 else 0
        below = t + 1 + np.flatnonzero(A[t + 1 :, t])
        if len(below):
            qs = ((A[below, t] // gp) * inv_unit) % max(mp, 1)
            A[below] = (A[below] - np.outer(qs, A[t])) % m
            dead += int((~A[below].any(axis=1)).sum())
            if 4 * dead > A.shape[0]:
                keep = A.any(axis=1)
                keep[: t + 1] = True
                A = A[keep]
                dead = 0
        qc = ((A[t, t + 1 :] // gp) * inv_unit) % max(mp, 1)
        if qc.any():
            A[t, t + 1 :] = 0
            V[:, t + 1 :] = (V[:, t + 1 :] - np.outer(V[:, t], qc)) % m
            V_inv[t] = (V_inv[t] + qc @ V_inv[t + 1 :]) % m
        pivots[t] = int(A[t, t])
        t += 1
    ann = tuple(gcd(p, m) for p in pivots)
    return ModularDiagonal(m, ann, V % m, V_inv % m)
