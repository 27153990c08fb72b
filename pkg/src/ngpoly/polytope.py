"""Exact convex polytopes with dual vertex/facet representations.

A polytope is stored as its canonical sorted vertex list together with an
irredundant facet presentation ``n_F(x) >= -h_F`` whose normals ``n_F`` are
primitive integer linear forms.  Both representations are exact; conversion
in either direction runs the incremental double description method on the
appropriate homogenization, entirely in integer arithmetic.

Full-dimensional polytopes carry facets.  Lower-dimensional polytopes with
integer vertices are supported for vertex-level operations (lattice points,
edges, Minkowski sums); they delegate to an internal lattice-preserving
projection onto their affine hull and never expose an ambient facet system.
Lower-dimensional polytopes with non-integer vertices are rejected.

Lattice point enumeration walks an axis-aligned bounding box coordinate by
coordinate, pruning each partial assignment with interval bounds computed
from the facet system (suffix extrema of each inequality over the box).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import ceil, floor, gcd
from typing import NamedTuple

from .lattice import (
    affine_lattice_projection,
    canonical_point,
    canonical_scalar,
    matrix_rank,
    primitivize,
)


class PolytopeError(ValueError):
    """Base class for polytope construction and query failures."""


class LowerDimensionalError(PolytopeError):
    """Input is not full-dimensional in its ambient space."""


class NotAPolytopeError(PolytopeError):
    """Facet system is unbounded."""


class EmptyPolytopeError(PolytopeError):
    """Facet system has no solutions."""


class Facet(NamedTuple):
    """One irredundant inequality ``normal(x) >= -height``."""

    normal: tuple
    height: object

    def evaluate(self, point):
        """Value of ``normal(point) + height`` (nonnegative inside)."""
        return sum(n * x for n, x in zip(self.normal, point)) + self.height


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _extreme_rays(rows, n):
    """Extreme rays of the cone ``{z in Q^n : r . z >= 0 for r in rows}``.

    ``rows`` are integer tuples.  Requires the cone to be pointed, which is
    equivalent to the rows having rank ``n``; raises
    :class:`LowerDimensionalError` otherwise.  Returns primitive integer ray
    vectors, sorted.
    """
    m = len(rows)
    # greedily select n linearly independent rows for the simplicial start
    selected = []
    echelon = []
    for idx in range(m):
        row = [Fraction(x) for x in rows[idx]]
        for piv, erow in echelon:
            if row[piv] != 0:
                factor = row[piv]
                row = [a - factor * b for a, b in zip(row, erow)]
        piv = next((j for j, x in enumerate(row) if x != 0), None)
        if piv is None:
            continue
        inv = 1 / row[piv]
        echelon.append((piv, [a * inv for a in row]))
        selected.append(idx)
        if len(selected) == n:
            break
    if len(selected) < n:
        raise LowerDimensionalError("constraint rows do not span")

    # rays of the initial simplicial cone are the columns of B^{-1}
    basis = [rows[i] for i in selected]
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(basis)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[col])]
    inverse_cols = [[aug[i][n + j] for i in range(n)] for j in range(n)]

    def to_primitive(vec):
        mult = 1
        for x in vec:
            den = Fraction(x).denominator
            mult = mult * den // gcd(mult, den)
        prim, _ = primitivize([int(x * mult) for x in vec])
        return prim

    rays = [to_primitive(col) for col in inverse_cols]
    processed = list(selected)
    masks = []
    for j in range(n):
        mask = 0
        for pos, idx in enumerate(processed):
            if _dot(rows[idx], rays[j]) == 0:
                mask |= 1 << pos
        masks.append(mask)

    chosen = set(selected)
    for idx in range(m):
        if idx in chosen:
            continue
        row = rows[idx]
        vals = [_dot(row, r) for r in rays]
        bit = 1 << len(processed)
        if all(v >= 0 for v in vals):
            masks = [mk | bit if v == 0 else mk for mk, v in zip(masks, vals)]
            processed.append(idx)
            continue
        plus = [i for i, v in enumerate(vals) if v > 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        combos = []
        for ip in plus:
            mp = masks[ip]
            for im in minus:
                common = mp & masks[im]
                if common.bit_count() < n - 2:
                    continue
                adjacent = True
                for k in range(len(rays)):
                    if k != ip and k != im and (common & ~masks[k]) == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                raw = [vals[ip] * rm - vals[im] * rp
                       for rp, rm in zip(rays[ip], rays[im])]
                prim, _ = primitivize(raw)
                combos.append(prim)
        new_rays = []
        new_masks = []
        for i, v in enumerate(vals):
            if v > 0:
                new_rays.append(rays[i])
                new_masks.append(masks[i])
            elif v == 0:
                new_rays.append(rays[i])
                new_masks.append(masks[i] | bit)
        processed.append(idx)
        seen = set(new_rays)
        for ray in combos:
            if ray in seen:
                continue
            seen.add(ray)
            mask = 0
            for pos, pidx in enumerate(processed):
                if _dot(rows[pidx], ray) == 0:
                    mask |= 1 << pos
            new_rays.append(ray)
            new_masks.append(mask)
        rays, masks = new_rays, new_masks

    return sorted(rays)


def _scale_row_integral(coeffs):
    """Clear denominators of a rational row by a positive factor."""
    mult = 1
    for x in coeffs:
        den = Fraction(x).denominator
        mult = mult * den // gcd(mult, den)
    return tuple(int(Fraction(x) * mult) for x in coeffs)


def _facet_rows(facets):
    """Integer rows ``(normal, const)`` meaning ``normal . x + const >= 0``."""
    rows = []
    for normal, height in facets:
        scaled = _scale_row_integral(tuple(normal) + (height,))
        rows.append((scaled[:-1], scaled[-1]))
    return rows


def _system_vertices(ineqs, ambient_dim):
    """Vertices of ``{x : n . x + h >= 0}`` for the given inequality list.

    Raises :class:`NotAPolytopeError` when unbounded (or when the normals do
    not span, in which case the solution set is empty or unbounded) and
    :class:`EmptyPolytopeError` when empty.
    """
    d = ambient_dim
    rows = [_scale_row_integral(tuple(n) + (h,)) for n, h in ineqs]
    rows.append((0,) * d + (1,))
    try:
        rays = _extreme_rays(rows, d + 1)
    except LowerDimensionalError:
        raise NotAPolytopeError("not a polytope") from None
    vertices = []
    recession = False
    for ray in rays:
        if ray[d] > 0:
            vertices.append(canonical_point(Fraction(x, ray[d]) for x in ray[:d]))
        elif any(ray[:d]):
            recession = True
    if vertices and recession:
        raise NotAPolytopeError("not a polytope")
    if not vertices:
        raise EmptyPolytopeError("empty polytope")
    return sorted(set(vertices))


def _enumerate_box(rows, lo, hi):
    """Integer points of ``{x : n . x + c >= 0}`` inside the box, sorted.

    ``rows`` is a list of ``(normal tuple, const)`` integer pairs.  The
    recursion fixes coordinates left to right; at depth ``t`` every row is
    pruned against the best value its suffix can still contribute, and the
    admissible interval for the coordinate is derived from the same bound,
    so every emitted point satisfies every inequality exactly.
    """
    d = len(lo)
    if any(l > h for l, h in zip(lo, hi)):
        return []
    if d == 0:
        return [()] if all(c >= 0 for _, c in rows) else []
    norms = [list(n) for n, _ in rows]
    consts = [c for _, c in rows]
    nrows = len(rows)
    best = [[0] * (d + 1) for _ in range(nrows)]
    for j in range(nrows):
        for t in range(d - 1, -1, -1):
            n = norms[j][t]
            best[j][t] = best[j][t + 1] + (n * hi[t] if n > 0 else n * lo[t])
    out = []
    point = [0] * d
    rng = range(nrows)

    def rec(t, partial):
        lb, ub = lo[t], hi[t]
        nxt = t + 1
        for j in rng:
            n = norms[j][t]
            num = -partial[j] - best[j][nxt]
            if n == 0:
                if num > 0:
                    return
            elif n > 0:
                q = -((-num) // n)
                if q > lb:
                    lb = q
            else:
                q = num // n
                if q < ub:
                    ub = q
        if lb > ub:
            return
        if nxt == d:
            for x in range(lb, ub + 1):
                point[t] = x
                out.append(tuple(point))
            return
        steps = [norms[j][t] for j in rng]
        cur = [partial[j] + steps[j] * lb for j in rng]
        x = lb
        while True:
            point[t] = x
            rec(nxt, cur)
            if x == ub:
                break
            x += 1
            for j in rng:
                cur[j] += steps[j]

    rec(0, consts)
    return out


_TOKEN = object()


class Polytope:
    """Immutable exact polytope; see the module docstring for conventions."""

    def __init__(self, vertices, facets, ambient_dim, projection=None,
                 projected=None, _token=None):
        if _token is not _TOKEN:
            raise TypeError("use Polytope.from_points or Polytope.from_facets")
        self._vertices = vertices
        self._facets = facets
        self._ambient_dim = ambient_dim
        self._projection = projection
        self._projected = projected

    @classmethod
    def from_points(cls, points):
        """Convex hull of a finite point set.

        Full-dimensional inputs (rational coordinates allowed) get an
        irredundant facet presentation; lower-dimensional integer inputs are
        kept as vertex sets over their affine lattice; lower-dimensional
        rational inputs raise :class:`LowerDimensionalError`.
        """
        pts = sorted(set(canonical_point(p) for p in points))
        if not pts:
            raise ValueError("need at least one point")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("points have mixed dimensions")
        if d == 0:
            return cls(((),), (), 0, _token=_TOKEN)
        if all(all(isinstance(x, int) for x in p) for p in pts):
            projected, witness = affine_lattice_projection(pts)
            if witness.dim == 0:
                zero = cls(((),), (), 0, _token=_TOKEN)
                return cls((pts[0],), None, d, projection=witness,
                           projected=zero, _token=_TOKEN)
            if witness.dim < d:
                sub = cls.from_points(projected)
                verts = tuple(sorted(witness.lift(v) for v in sub.vertices))
                return cls(verts, None, d, projection=witness, projected=sub,
                           _token=_TOKEN)
        rows = [_scale_row_integral(tuple(p) + (1,)) for p in pts]
        rays = _extreme_rays(rows, d + 1)
        facets = []
        for ray in rays:
            normal, height = ray[:d], ray[d]
            if not any(normal):
                raise AssertionError("trivial inequality returned as a facet")
            prim, scale = primitivize(normal)
            facets.append(Facet(prim, canonical_scalar(Fraction(height, scale))))
        facets = tuple(sorted(facets))
        verts = []
        for p in pts:
            active = [f.normal for f in facets if f.evaluate(p) == 0]
            if len(active) >= d and matrix_rank(active) == d:
                verts.append(p)
        return cls(tuple(verts), facets, d, _token=_TOKEN)

    @classmethod
    def from_facets(cls, facets):
        """Polytope cut out by inequalities ``normal(x) >= -height``.

        The input system may contain redundant rows; the result carries a
        recomputed irredundant presentation.  Raises
        :class:`NotAPolytopeError` for unbounded systems and
        :class:`EmptyPolytopeError` for empty ones.
        """
        ineqs = [(tuple(n), canonical_scalar(h)) for n, h in facets]
        if not ineqs:
            raise ValueError("need at least one inequality")
        d = len(ineqs[0][0])
        verts = _system_vertices(ineqs, d)
        return cls.from_points(verts)

    @property
    def ambient_dim(self) -> int:
        return self._ambient_dim

    @property
    def vertices(self) -> tuple:
        """Canonically sorted tuple of vertex tuples."""
        return self._vertices

    @cached_property
    def dim(self) -> int:
        if self._projection is not None:
            return self._projection.dim
        if len(self._vertices) == 1:
            return 0
        first = self._vertices[0]
        diffs = [tuple(Fraction(a) - Fraction(b) for a, b in zip(v, first))
                 for v in self._vertices[1:]]
        return matrix_rank(diffs)

    @property
    def facets(self) -> tuple:
        """Irredundant facet presentation; full-dimensional polytopes only."""
        if self._facets is None:
            raise LowerDimensionalError(
                "polytope is not full-dimensional; apply affine_lattice_projection")
        return self._facets

    @property
    def is_full_dimensional(self) -> bool:
        return self._facets is not None

    @cached_property
    def is_lattice(self) -> bool:
        """True when every vertex has integer coordinates."""
        return all(all(isinstance(x, int) for x in v) for v in self._vertices)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return (self._ambient_dim == other._ambient_dim
                and self._vertices == other._vertices)

    def __hash__(self):
        return hash((self._ambient_dim, self._vertices))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={list(self._vertices)!r})"

    # -- point queries ----------------------------------------------------

    def contains(self, point) -> bool:
        """Exact membership test."""
        if self._facets is not None:
            return all(f.evaluate(point) >= 0 for f in self._facets)
        if self._ambient_dim == 0:
            return True
        try:
            q = self._projection.project(point)
        except ValueError:
            return False
        return self._projected.contains(q)

    def strictly_contains(self, point) -> bool:
        """Membership in the ambient-space interior."""
        if self._facets is None:
            return self._ambient_dim == 0
        return all(f.evaluate(point) > 0 for f in self._facets)

    @cached_property
    def _box(self):
        lo = [min(v[i] for v in self._vertices) for i in range(self._ambient_dim)]
        hi = [max(v[i] for v in self._vertices) for i in range(self._ambient_dim)]
        return [ceil(x) for x in lo], [floor(x) for x in hi]

    @cached_property
    def _int_rows(self):
        return _facet_rows(self.facets)

    def lattice_points(self) -> tuple:
        """All integer points of the polytope, lexicographically sorted."""
        return self._lattice_point_cache

    @cached_property
    def _lattice_point_cache(self):
        if self._ambient_dim == 0:
            return ((),)
        if self._facets is None:
            pts = self._projected.lattice_points()
            return tuple(sorted(self._projection.lift(p) for p in pts))
        lo, hi = self._box
        return tuple(_enumerate_box(self._int_rows, lo, hi))

    def interior_lattice_points(self) -> tuple:
        """Integer points interior to the polytope (ambient topology)."""
        return self._interior_point_cache

    @cached_property
    def _interior_point_cache(self):
        if self._ambient_dim == 0:
            return ((),)
        if self._facets is None:
            return ()
        lo, hi = self._box
        rows = [(n, c - 1) for n, c in self._int_rows]
        return tuple(_enumerate_box(rows, lo, hi))

    def boundary_lattice_points(self) -> tuple:
        """Lattice points minus interior lattice points."""
        interior = set(self.interior_lattice_points())
        return tuple(p for p in self.lattice_points() if p not in interior)

    # -- constructions -----------------------------------------------------

    def dilate(self, k):
        """The dilate ``kP`` for a positive rational ``k``."""
        k = canonical_scalar(k)
        if k <= 0:
            raise ValueError("dilation factor must be positive")
        verts = tuple(canonical_point(tuple(k * x for x in v))
                      for v in self._vertices)
        if self._facets is not None:
            facets = tuple(Facet(f.normal, canonical_scalar(k * f.height))
                           for f in self._facets)
            return Polytope(verts, facets, self._ambient_dim, _token=_TOKEN)
        return Polytope.from_points(verts)

    def translate(self, v):
        """The translate ``P + v``."""
        if len(v) != self._ambient_dim:
            raise ValueError("translation vector has wrong dimension")
        v = canonical_point(v)
        verts = tuple(canonical_point(tuple(a + b for a, b in zip(p, v)))
                      for p in self._vertices)
        if self._facets is not None:
            facets = tuple(
                Facet(f.normal, canonical_scalar(f.height - _dot(f.normal, v)))
                for f in self._facets)
            return Polytope(verts, facets, self._ambient_dim, _token=_TOKEN)
        return Polytope.from_points(verts)

    def minkowski_sum(self, other):
        """Minkowski sum, as the hull of pairwise vertex sums."""
        if not isinstance(other, Polytope):
            raise TypeError("expected a Polytope")
        if self._ambient_dim != other._ambient_dim:
            raise ValueError("ambient dimension mismatch")
        sums = [tuple(a + b for a, b in zip(p, q))
                for p in self._vertices for q in other._vertices]
        return Polytope.from_points(sums)

    __add__ = minkowski_sum

    def polar_dual(self):
        """The polar dual ``{n : n(x) >= -1 for all x in P}``.

        Requires the origin in the interior; the dual's vertices are the
        facet normals divided by their heights.
        """
        facets = self.facets
        if any(f.height <= 0 for f in facets):
            raise PolytopeError("dual undefined: origin is not an interior point")
        pts = [tuple(Fraction(n) / f.height for n in f.normal) for f in facets]
        return Polytope.from_points(pts)

    def is_reflexive(self) -> bool:
        """Lattice polytope whose presentation has all heights equal to one
        (equivalently: the origin is interior and the dual is lattice)."""
        if self._facets is None or not self.is_lattice:
            return False
        return all(f.height == 1 for f in self._facets)

    def edges(self) -> tuple:
        """All 1-faces as sorted vertex pairs.

        A vertex pair spans an edge when the facets active at both points
        have normal rank ``dim - 1``.
        """
        if self._ambient_dim == 0 or len(self._vertices) == 1:
            return ()
        if self._facets is None:
            lifted = []
            for a, b in self._projected.edges():
                pa, pb = self._projection.lift(a), self._projection.lift(b)
                lifted.append(tuple(sorted((pa, pb))))
            return tuple(sorted(lifted))
        d = self._ambient_dim
        active = [frozenset(i for i, f in enumerate(self._facets)
                            if f.evaluate(v) == 0)
                  for v in self._vertices]
        out = []
        nverts = len(self._vertices)
        for i in range(nverts):
            for j in range(i + 1, nverts):
                common = active[i] & active[j]
                if len(common) < d - 1:
                    continue
                if d == 1:
                    out.append((self._vertices[i], self._vertices[j]))
                    continue
                normals = [self._facets[k].normal for k in sorted(common)]
                if matrix_rank(normals) == d - 1:
                    out.append((self._vertices[i], self._vertices[j]))
        return tuple(sorted(out))


def lattice_edge_length(pair) -> int:
    """Lattice length of a segment between lattice points: the gcd of the
    coordinate differences."""
    a, b = pair
    g = 0
    for x, y in zip(a, b):
        g = gcd(g, abs(x - y))
    return g


def hull_facets(points) -> Polytope:
    """Facet presentation of the hull of a full-dimensional point set.

    Raises:
        LowerDimensionalError: instructing the caller to apply
            affine_lattice_projection first.
    """
    P = Polytope.from_points(points)
    if not P.is_full_dimensional:
        raise LowerDimensionalError(
            "points are not full-dimensional; apply affine_lattice_projection")
    return P


def vertices_from_facets(facets) -> Polytope:
    """Vertex recovery for a bounded inequality system (see from_facets)."""
    return Polytope.from_facets(facets)


def lattice_points(P: Polytope) -> tuple:
    return P.lattice_points()


def interior_lattice_points(P: Polytope) -> tuple:
    return P.interior_lattice_points()


def boundary_lattice_points(P: Polytope) -> tuple:
    return P.boundary_lattice_points()


def dilate(P: Polytope, k) -> Polytope:
    return P.dilate(k)


def translate(P: Polytope, v) -> Polytope:
    return P.translate(v)


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    return P.minkowski_sum(Q)


def polytope_equal(P: Polytope, Q: Polytope) -> bool:
    """Exact equality, by canonical sorted vertex lists."""
    return P == Q


def polar_dual(P: Polytope) -> Polytope:
    return P.polar_dual()


def is_reflexive(P: Polytope) -> bool:
    return P.is_reflexive()


def edges(P: Polytope) -> tuple:
    return P.edges()


def lattice_points_of_system(ineqs, ambient_dim) -> tuple:
    """Integer solutions of ``normal(x) >= -height``, or () when empty.

    The system must be bounded; its vertices are computed first to obtain
    the enumeration box.
    """
    try:
        verts = _system_vertices(ineqs, ambient_dim)
    except EmptyPolytopeError:
        return ()
    lo = [ceil(min(v[i] for v in verts)) for i in range(ambient_dim)]
    hi = [floor(max(v[i] for v in verts)) for i in range(ambient_dim)]
    rows = _facet_rows(ineqs)
    return tuple(_enumerate_box(rows, lo, hi))
