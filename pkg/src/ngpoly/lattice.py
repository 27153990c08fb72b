"""Exact integer and rational linear algebra over lattices.

Every routine in this module works in exact arithmetic: arbitrary precision
integers for lattice data and ``fractions.Fraction`` for rational data.  No
floating point is used anywhere, because the geometric predicates downstream
(reflexivity, Gorensteinness, slice membership) are brittle equalities.

Conventions used throughout the package:

* a point is a tuple of ``int`` or ``Fraction`` entries (integral values are
  stored as ``int``),
* a linear form is a tuple of ``int`` coefficients,
* a matrix is a tuple of row tuples,
* integer point sets are ordered lexicographically.

``fractions.Fraction`` already maintains the reduced-fraction invariants
(coprime numerator/denominator, positive denominator) required of rational
scalars, so no wrapper type is introduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def canonical_scalar(x):
    """Return ``x`` as an ``int`` when integral, else as a ``Fraction``."""
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


def canonical_point(point) -> tuple:
    """Canonicalize a coordinate tuple (ints for integral entries)."""
    return tuple(canonical_scalar(x) for x in point)


def is_integral(point) -> bool:
    """True when every coordinate of ``point`` is an integer."""
    return all(isinstance(x, int) or Fraction(x).denominator == 1 for x in point)


def primitivize(v):
    """Divide an integer vector by the gcd of its entries.

    Returns the pair ``(primitive vector, scale)`` where ``scale`` is the
    positive gcd of the absolute entries and ``vector * scale == v``.  The
    direction of ``v`` is preserved.

    Raises:
        ValueError: on the zero vector ("zero normal").
    """
    vec = tuple(int(x) for x in v)
    scale = 0
    for x in vec:
        scale = gcd(scale, x)
    if scale == 0:
        raise ValueError("zero normal")
    return tuple(x // scale for x in vec), scale


def hermite_normal_form(M):
    """Row-style Hermite normal form with transformation matrix.

    Given an integer matrix ``M`` (sequence of rows), returns ``(H, U)``
    where ``U`` is unimodular (``|det U| = 1``), ``U * M = H``, and ``H`` is
    in row Hermite normal form: pivot columns strictly increase row by row,
    pivots are positive, entries above a pivot are reduced into
    ``[0, pivot)``, and zero rows sit at the bottom.
    """
    H = [[int(x) for x in row] for row in M]
    m = len(H)
    n = len(H[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def addmul(dst, src, q):
        # row_dst -= q * row_src, applied to H and U in lockstep
        hd, hs = H[dst], H[src]
        for j in range(n):
            hd[j] -= q * hs[j]
        ud, us = U[dst], U[src]
        for j in range(m):
            ud[j] -= q * us[j]

    def swap(i, j):
        H[i], H[j] = H[j], H[i]
        U[i], U[j] = U[j], U[i]

    def negate(i):
        H[i] = [-x for x in H[i]]
        U[i] = [-x for x in U[i]]

    p = 0
    for col in range(n):
        if p == m:
            break
        # clear column below the pivot position by a gcd sweep
        while True:
            nz = [i for i in range(p, m) if H[i][col] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(H[i][col]))
            if k != p:
                swap(p, k)
            done = True
            for i in range(p + 1, m):
                if H[i][col] != 0:
                    addmul(i, p, H[i][col] // H[p][col])
                    if H[i][col] != 0:
                        done = False
            if done:
                break
        if H[p][col] == 0:
            continue
        if H[p][col] < 0:
            negate(p)
        for i in range(p):
            q = H[i][col] // H[p][col]
            if q:
                addmul(i, p, q)
        p += 1
    return tuple(tuple(r) for r in H), tuple(tuple(r) for r in U)


def integer_kernel(M):
    """Basis of the integer kernel ``{x in Z^n : M x = 0}``.

    ``M`` is an integer matrix with ``n`` columns; the result is a tuple of
    kernel basis vectors (rows).  The returned lattice is saturated: any
    integer vector annihilated by ``M`` is a Z-combination of the basis.
    """
    rows = [tuple(r) for r in M]
    if not rows:
        raise ValueError("empty matrix has ambiguous column count")
    n = len(rows[0])
    # row HNF of the transpose: zero rows of H mark transformation rows of U
    # that are annihilated by M
    transpose = [tuple(r[j] for r in rows) for j in range(n)]
    H, U = hermite_normal_form(transpose)
    kernel = [U[i] for i in range(n) if all(x == 0 for x in H[i])]
    # canonicalize the basis itself
    if kernel:
        KH, _ = hermite_normal_form(kernel)
        kernel = [row for row in KH if any(row)]
    return tuple(tuple(r) for r in kernel)


def matrix_rank(M) -> int:
    """Rank of a rational matrix, by exact Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in M]
    if not rows:
        return 0
    n = len(rows[0])
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col] * inv
                rows[i] = [a - factor * b for a, b in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def matrix_inverse(M):
    """Exact inverse of a square rational matrix (tuple of Fraction rows).

    Raises:
        ValueError: if the matrix is singular.
    """
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    if any(len(row) != 2 * n for row in aug):
        raise ValueError("matrix is not square")
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[col])]
    return tuple(tuple(canonical_scalar(x) for x in row[n:]) for row in aug)


def matrix_det(M):
    """Exact determinant of a square rational matrix."""
    n = len(M)
    rows = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for i in range(col + 1, n):
            if rows[i][col] != 0:
                factor = rows[i][col] * inv
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[col])]
    return canonical_scalar(det)


def lattice_normalize(points, basis):
    """Express lattice points in the coordinates of a new lattice basis.

    ``basis`` is a square rational matrix whose *columns* generate a lattice
    L as a Z-module; every input point must lie in L.  Returns the list of
    coordinate vectors ``basis^{-1} * point`` as integer tuples.  The map is
    a lattice isomorphism L -> Z^d, so convexity, the face lattice, and
    lattice point counts are preserved by it.

    Raises:
        ValueError: naming the first point that is not in the lattice.
    """
    n = len(basis)
    if any(len(row) != n for row in basis):
        raise ValueError("basis matrix must be square")
    if matrix_det(basis) == 0:
        raise ValueError("basis matrix is singular")
    inv = matrix_inverse(basis)
    out = []
    for point in points:
        if len(point) != n:
            raise ValueError(f"point {tuple(point)} has wrong dimension")
        coords = tuple(sum(inv[i][j] * Fraction(point[j]) for j in range(n))
                       for i in range(n))
        if not is_integral(coords):
            raise ValueError(f"point {tuple(point)} is not in the lattice")
        out.append(tuple(int(c) for c in coords))
    return out


@dataclass(frozen=True)
class AffineLatticeMap:
    """Witness of an affine change of lattice coordinates.

    Maps the affine hull of a point set bijectively onto Z^dim via
    ``project``; ``lift`` is the exact inverse.  ``anchor`` is the image of
    the origin of the new coordinates and ``rows`` are the basis vectors of
    the (saturated) difference lattice, so that
    ``lift(y) = anchor + sum y_i * rows[i]``.
    """

    ambient_dim: int
    dim: int
    anchor: tuple
    rows: tuple

    def project(self, point) -> tuple:
        """Coordinates of an affine-hull point in the new lattice basis."""
        if len(point) != self.ambient_dim:
            raise ValueError("wrong ambient dimension")
        diff = [Fraction(x) - Fraction(a) for x, a in zip(point, self.anchor)]
        coords = []
        residue = diff
        for i, row in enumerate(self.rows):
            # rows are in HNF, so peel off coordinates at the pivot columns
            piv = self._pivots[i]
            c = residue[piv] / row[piv]
            coords.append(c)
            residue = [r - c * b for r, b in zip(residue, row)]
        if any(residue):
            raise ValueError(f"point {tuple(point)} is outside the affine hull")
        return canonical_point(coords)

    def lift(self, point) -> tuple:
        """Inverse of ``project``."""
        if len(point) != self.dim:
            raise ValueError("wrong projected dimension")
        out = [Fraction(a) for a in self.anchor]
        for c, row in zip(point, self.rows):
            if c:
                out = [o + Fraction(c) * b for o, b in zip(out, row)]
        return canonical_point(out)

    @property
    def _pivots(self):
        pivots = []
        for row in self.rows:
            pivots.append(next(j for j, x in enumerate(row) if x != 0))
        return pivots


def affine_lattice_projection(points):
    """Project integer points onto the lattice of their affine hull.

    Returns ``(projected points, witness)`` where the witness is an
    :class:`AffineLatticeMap`.  The projected points live in Z^d' with d'
    the dimension of the affine hull, and the map restricted to
    ``aff(points)`` meets every integer point: it is a bijection
    ``aff(points) ∩ Z^d -> Z^d'``, built from the saturation of the
    difference lattice.  Lattice point sets of any face, and their counts,
    are preserved.  A single point projects to dimension 0.

    Points that are already full-dimensional get the identity witness.
    """
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("points have mixed dimensions")
    anchor = min(pts)
    diffs = [tuple(x - a for x, a in zip(p, anchor)) for p in pts if p != anchor]
    if diffs:
        H, _ = hermite_normal_form(diffs)
        basis = [row for row in H if any(row)]
    else:
        basis = []
    r = len(basis)
    if r == d:
        identity = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
        witness = AffineLatticeMap(d, d, (0,) * d, identity)
        return [tuple(p) for p in pts], witness
    if r == 0:
        witness = AffineLatticeMap(d, 0, tuple(anchor), ())
        return [() for _ in pts], witness
    # saturate: the integer kernel of an integer matrix is saturated, so two
    # kernel computations replace the difference lattice by the full set of
    # integer vectors in its rational span
    complement = integer_kernel(basis)
    saturated = integer_kernel(complement)
    witness = AffineLatticeMap(d, r, tuple(anchor), saturated)
    return [witness.project(p) for p in pts], witness
