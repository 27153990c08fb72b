"""Gorenstein and nearly-Gorenstein analysis of lattice polytopes.

Everything here works on the cone over a full-dimensional lattice polytope
``P`` with facet presentation ``n_F(x) >= -h_F``.  The height-``k`` slice of
that cone is ``kP``; two derived slice families drive all verdicts:

* ``int_slice(P, k)``: lattice points strictly inside ``kP``, i.e.
  ``n_F(x) >= 1 - k*h_F`` for every facet;
* ``ant_slice(P, k)``: lattice points of the system pushed out by one,
  ``n_F(x) >= -k*h_F - 1``, defined for every integer ``k``.

The codegree ``a`` is the least ``k >= 1`` with a nonempty interior slice.
The floor polytope is the hull of the interior lattice points; the remainder
polytope is the hull of ``ant_slice(P, 1 - a)``.

``P`` is Gorenstein when the interior slice at the codegree is a single
lattice point at lattice distance one from every facet.  ``P`` is nearly
Gorenstein when every nonzero lattice point of the cone splits as an
interior-slice point plus an ant-slice point; at height one this is exactly
the lattice-point decomposition ``P = floor(aP) + remainder(P)``, which is a
necessary condition on its own and, together with the integer decomposition
property, a sufficient one.  Without IDP the criterion quantifies over all
heights, so the bounded search reports ``unknown_bounded`` rather than
over-claim.

Lower-dimensional input is rejected everywhere: callers project first so
that every verdict names the lattice it was computed in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .polytope import (
    LowerDimensionalError,
    Polytope,
    PolytopeError,
    lattice_edge_length,
    lattice_points_of_system,
)

STATUS_GORENSTEIN = "gorenstein"
STATUS_NEARLY = "nearly_gorenstein"
STATUS_NOT_NEARLY = "not_nearly_gorenstein"
STATUS_UNKNOWN = "unknown_bounded"


@dataclass(frozen=True)
class NGVerdict:
    """Outcome of the nearly-Gorenstein decision procedure.

    ``certificate`` replays to the claimed status: the reflexive-translate
    pair ``(a, v)`` for ``gorenstein``, the per-point decomposition witness
    for ``nearly_gorenstein``, a ``(height, point)`` violation for
    ``not_nearly_gorenstein``, and ``None`` for ``unknown_bounded``.
    ``checked_height`` records how far the cone criterion was verified:
    0 when settled by the Gorenstein certificate, 1 when settled at height
    one (decomposition route), otherwise the violating or last-checked
    height.
    """

    status: str
    codegree: int
    certificate: object
    checked_height: int


@dataclass(frozen=True)
class GorensteinResult:
    value: bool
    codegree: int
    point: tuple | None


@dataclass(frozen=True)
class IdpResult:
    value: bool
    bound: int
    failing_height: int | None
    counterexample: tuple | None


@dataclass(frozen=True)
class DecompositionResult:
    """Height-one decomposition: ``witness`` maps each lattice point ``z`` of
    ``P`` to ``(u, w)`` with ``u`` in the floor of ``aP``, ``w`` in the
    remainder, ``z = u + w``; ``u`` is the lexicographically smallest
    choice.  ``counterexample`` is a non-decomposable point."""

    value: bool
    witness: tuple | None
    counterexample: tuple | None


@dataclass(frozen=True)
class HeightCheck:
    height: int
    ok: bool
    counterexample: tuple | None


@dataclass(frozen=True)
class DilationBound:
    """``K = d*L + a``: beyond this factor all dilates are nearly
    Gorenstein (``L`` is the longest lattice edge of the remainder of
    ``aP``)."""

    L: int
    a: int
    K: int


@dataclass(frozen=True)
class ConstructionResult:
    """Outcome of ``construct_candidate``: the assembled polytope, its
    verdict, the integrality scale ``r`` applied to the rational
    intersection, and the dilation factor that produced the verdict (None
    when the search hit its cap)."""

    polytope: Polytope
    verdict: NGVerdict
    scale: int
    dilation: int | None


def _require_input(P):
    if not isinstance(P, Polytope):
        raise TypeError("expected a Polytope")
    if P.ambient_dim == 0 or not P.is_full_dimensional:
        raise LowerDimensionalError(
            "full-dimensional input required; apply affine_lattice_projection")
    if not P.is_lattice:
        raise ValueError("lattice polytope required")


def int_slice(P: Polytope, k: int) -> tuple:
    """Lattice points with ``n_F(x) >= 1 - k*h_F`` for every facet."""
    _require_input(P)
    if not isinstance(k, int) or k < 0:
        raise ValueError("interior slice height must be a nonnegative integer")
    rows = [(f.normal, k * f.height - 1) for f in P.facets]
    return lattice_points_of_system(rows, P.ambient_dim)


def ant_slice(P: Polytope, k: int) -> tuple:
    """Lattice points with ``n_F(x) >= -k*h_F - 1`` for every facet."""
    _require_input(P)
    if not isinstance(k, int):
        raise ValueError("slice height must be an integer")
    rows = [(f.normal, k * f.height + 1) for f in P.facets]
    return lattice_points_of_system(rows, P.ambient_dim)


class PolytopeCone:
    """The cone over ``P`` and its integer slice families.

    ``piece(k)`` is the height-``k`` slice ``kP`` of the cone itself;
    ``int_slice``/``ant_slice`` are the interior and pushed-out systems.
    """

    def __init__(self, base: Polytope):
        _require_input(base)
        self.base = base

    def piece(self, k: int) -> tuple:
        if not isinstance(k, int) or k < 0:
            raise ValueError("cone piece height must be a nonnegative integer")
        if k == 0:
            return ((0,) * self.base.ambient_dim,)
        return self.base.dilate(k).lattice_points()

    def int_slice(self, k: int) -> tuple:
        return int_slice(self.base, k)

    def ant_slice(self, k: int) -> tuple:
        return ant_slice(self.base, k)


def codegree(P: Polytope) -> int:
    """Least ``k >= 1`` whose dilate ``kP`` has an interior lattice point.

    Always lands in ``1..d+1``; exceeding that range is an internal error.
    """
    _require_input(P)
    for k in range(1, P.ambient_dim + 2):
        if int_slice(P, k):
            return k
    raise AssertionError("codegree exceeded ambient dimension + 1")


def floor_polytope(P: Polytope):
    """Hull of the interior lattice points, or None when there are none.

    The hull may be lower-dimensional; it is returned as a vertex-level
    polytope in the same ambient space.
    """
    _require_input(P)
    pts = P.interior_lattice_points()
    if not pts:
        return None
    return Polytope.from_points(pts)


def remainder_polytope(P: Polytope) -> Polytope:
    """Hull of ``ant_slice(P, 1 - a)``, i.e. of the lattice points of the
    facet system pushed out by one at level ``1 - a``."""
    _require_input(P)
    a = codegree(P)
    pts = ant_slice(P, 1 - a)
    if not pts:
        raise AssertionError("remainder slice is empty")
    return Polytope.from_points(pts)


def ng_necessary_minkowski(P: Polytope) -> bool:
    """Exact Minkowski identity ``P = floor(aP) + remainder(P)``.

    Holding is necessary for ``P`` to be nearly Gorenstein and is the
    standing hypothesis of the dilation and identity checks below.
    """
    _require_input(P)
    a = codegree(P)
    floor_a = floor_polytope(P.dilate(a))
    if floor_a is None:
        raise AssertionError("floor of the codegree dilate cannot be empty")
    return floor_a + remainder_polytope(P) == P


def ng_lattice_decomposition(P: Polytope) -> DecompositionResult:
    """Height-one decomposition of lattice points.

    True iff every lattice point of ``P`` is a sum of an interior lattice
    point of ``aP`` and a lattice point of the remainder, and every such sum
    lands back in ``P``.  The forward failure point is reported; the reverse
    direction is verified exhaustively as well.
    """
    _require_input(P)
    a = codegree(P)
    floor_pts = int_slice(P, a)
    rem_pts = ant_slice(P, 1 - a)
    rem_set = set(rem_pts)
    witness = []
    for z in P.lattice_points():
        for u in floor_pts:
            w = tuple(x - y for x, y in zip(z, u))
            if w in rem_set:
                witness.append((z, u, w))
                break
        else:
            return DecompositionResult(False, None, z)
    points = set(P.lattice_points())
    for u in floor_pts:
        for w in rem_pts:
            s = tuple(x + y for x, y in zip(u, w))
            if s not in points:
                return DecompositionResult(False, None, s)
    return DecompositionResult(True, tuple(witness), None)


def is_idp(P: Polytope, bound: int | None = None) -> IdpResult:
    """Integer decomposition property up to the given dilation bound.

    Checks ``kP . Z = (P . Z) + ((k-1)P . Z)`` for ``k = 2..bound`` (default
    ``max(2, d-1)``).  Only the forward containment is searched: a sum of
    lattice points of ``P`` and ``(k-1)P`` lies in ``kP`` by linearity of
    the facet forms.  With the default bound the verdict is conclusive: the
    semigroup over the cone is generated in heights ``<= max(2, d-1)``, and
    once every level below ``k`` splits, a non-splitting point at level
    ``k`` would be a generator there.
    """
    _require_input(P)
    d = P.ambient_dim
    if bound is None:
        bound = max(2, d - 1)
    if bound < 2:
        raise ValueError("IDP bound must be at least 2")
    level_one = P.lattice_points()
    prev = set(level_one)
    for k in range(2, bound + 1):
        level_k = P.dilate(k).lattice_points()
        for z in level_k:
            for p in level_one:
                w = tuple(x - y for x, y in zip(z, p))
                if w in prev:
                    break
            else:
                return IdpResult(False, bound, k, z)
        prev = set(level_k)
    return IdpResult(True, bound, None, None)


def is_gorenstein(P: Polytope) -> GorensteinResult:
    """Gorenstein test with reflexive-translate certificate.

    True iff the interior slice at the codegree is a single point ``v``
    with ``n_F(v) + a*h_F = 1`` on every facet; then ``aP - v`` is
    reflexive and ``(a, v)`` is the certificate.
    """
    _require_input(P)
    a = codegree(P)
    pts = int_slice(P, a)
    if len(pts) != 1:
        return GorensteinResult(False, a, None)
    v = pts[0]
    for f in P.facets:
        if sum(n * x for n, x in zip(f.normal, v)) + a * f.height != 1:
            return GorensteinResult(False, a, None)
    return GorensteinResult(True, a, v)


def cone_ng_check(P: Polytope, H: int) -> tuple:
    """Per-height verification of the cone decomposition criterion.

    For each ``k = 1..H``, every lattice point of ``kP`` must split as a
    point of ``int_slice(P, i)`` plus a point of ``ant_slice(P, k - i)``
    for some ``i`` with a nonempty interior slice, i.e. ``a <= i <= k + a``
    (ant levels below ``-a`` are empty: adding an interior point of ``aP``
    would land in the empty negative-height part of the cone).
    """
    _require_input(P)
    if not isinstance(H, int) or H < 1:
        raise ValueError("height bound must be a positive integer")
    a = codegree(P)
    int_cache = {}
    ant_cache = {}

    def ints(i):
        if i not in int_cache:
            int_cache[i] = int_slice(P, i)
        return int_cache[i]

    def ants(j):
        if j not in ant_cache:
            ant_cache[j] = frozenset(ant_slice(P, j)) if j >= -a else frozenset()
        return ant_cache[j]

    results = []
    for k in range(1, H + 1):
        bad = None
        for z in P.dilate(k).lattice_points():
            found = False
            for i in range(a, k + a + 1):
                ant_set = ants(k - i)
                if not ant_set:
                    continue
                for u in ints(i):
                    w = tuple(x - y for x, y in zip(z, u))
                    if w in ant_set:
                        found = True
                        break
                if found:
                    break
            if not found:
                bad = z
                break
        results.append(HeightCheck(k, bad is None, bad))
    return tuple(results)


def is_nearly_gorenstein(P: Polytope, height_bound: int | None = None) -> NGVerdict:
    """Nearly-Gorenstein decision procedure.

    Route: a Gorenstein certificate settles the question outright; failing
    the height-one decomposition settles it negatively (it is the cone
    criterion at height one); passing it with IDP confirmed settles it
    positively.  Otherwise the cone criterion is checked height by height
    up to ``height_bound`` (default ``a + d``) and the verdict is
    ``unknown_bounded`` when no violation appears, since the full criterion
    quantifies over all heights.
    """
    _require_input(P)
    a = codegree(P)
    g = is_gorenstein(P)
    if g.value:
        return NGVerdict(STATUS_GORENSTEIN, a, (a, g.point), 0)
    dec = ng_lattice_decomposition(P)
    if not dec.value:
        return NGVerdict(STATUS_NOT_NEARLY, a, (1, dec.counterexample), 1)
    idp = is_idp(P)
    if idp.value:
        return NGVerdict(STATUS_NEARLY, a, dec.witness, 1)
    H = height_bound if height_bound is not None else a + P.ambient_dim
    if H < 2:
        H = 2
    for check in cone_ng_check(P, H):
        if not check.ok:
            return NGVerdict(STATUS_NOT_NEARLY, a,
                             (check.height, check.counterexample), check.height)
    return NGVerdict(STATUS_UNKNOWN, a, None, H)


def dilation_threshold(P: Polytope) -> DilationBound:
    """``K = d*L + a`` with ``L`` the longest lattice edge of the remainder
    of ``aP``; every dilate ``kP`` with ``k >= K`` is nearly Gorenstein.

    Requires the Minkowski identity ``P = floor(aP) + remainder(P)``.
    """
    _require_input(P)
    if not ng_necessary_minkowski(P):
        raise ValueError("Minkowski hypothesis fails: P != floor(aP) + remainder(P)")
    a = codegree(P)
    rem_a = remainder_polytope(P.dilate(a))
    L = max(lattice_edge_length(e) for e in rem_a.edges())
    return DilationBound(L, a, P.ambient_dim * L + a)


def _facet_shift_polytope(P, shifts):
    rows = [(f.normal, h) for f, h in zip(P.facets, shifts)]
    try:
        return Polytope.from_facets(rows)
    except PolytopeError:
        return None


def floor_rem_facet_identity(P: Polytope) -> bool:
    """Facet-system identities for the floor of ``aP`` and the remainder.

    Verifies ``floor(aP) = {x : n_F(x) >= 1 - a*h_F}`` and
    ``remainder(P) = {x : n_F(x) >= (a-1)*h_F - 1}`` as exact polytope
    equalities; when ``a = 1`` additionally asserts the remainder is
    reflexive (translating by its unique interior lattice point when the
    origin is not already interior).  Requires the Minkowski identity.
    """
    _require_input(P)
    if not ng_necessary_minkowski(P):
        raise ValueError("Minkowski hypothesis fails: P != floor(aP) + remainder(P)")
    a = codegree(P)
    floor_a = floor_polytope(P.dilate(a))
    lhs = _facet_shift_polytope(P, [a * f.height - 1 for f in P.facets])
    if lhs is None or lhs != floor_a:
        return False
    rem = remainder_polytope(P)
    rhs = _facet_shift_polytope(P, [1 - (a - 1) * f.height for f in P.facets])
    if rhs is None or rhs != rem:
        return False
    if a == 1:
        if not rem.is_reflexive():
            inner = rem.interior_lattice_points()
            if len(inner) != 1:
                return False
            v = inner[0]
            if not rem.translate(tuple(-x for x in v)).is_reflexive():
                return False
    return True


def _origin(P):
    return Polytope.from_points([(0,) * P.ambient_dim])


def aP_decomposition_check(P: Polytope) -> bool:
    """Minkowski identities for the codegree dilate.

    Verifies ``aP = floor(aP) + remainder(aP)`` and
    ``remainder(aP) = (a-1)P + remainder(P)`` exactly.  Requires the
    Minkowski identity on ``P``.
    """
    _require_input(P)
    if not ng_necessary_minkowski(P):
        raise ValueError("Minkowski hypothesis fails: P != floor(aP) + remainder(P)")
    a = codegree(P)
    aP = P.dilate(a)
    floor_a = floor_polytope(aP)
    rem_aP = remainder_polytope(aP)
    if floor_a + rem_aP != aP:
        return False
    lower = P.dilate(a - 1) if a > 1 else _origin(P)
    return lower + remainder_polytope(P) == rem_aP


def dilate_identities_check(P: Polytope, k_max: int) -> bool:
    """Dilation identities under the Minkowski hypothesis.

    For ``k = 1..k_max`` verifies ``kP = floor((k+a-1)P) + remainder(P)``;
    for ``k' = a..a+k_max`` verifies ``floor(k'P) = floor(aP) + (k'-a)P``.
    """
    _require_input(P)
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if not ng_necessary_minkowski(P):
        raise ValueError("Minkowski hypothesis fails: P != floor(aP) + remainder(P)")
    a = codegree(P)
    rem = remainder_polytope(P)
    for k in range(1, k_max + 1):
        floor_k = floor_polytope(P.dilate(k + a - 1))
        if floor_k is None or floor_k + rem != P.dilate(k):
            return False
    floor_a = floor_polytope(P.dilate(a))
    for kp in range(a, a + k_max + 1):
        floor_kp = floor_polytope(P.dilate(kp))
        scaled = P.dilate(kp - a) if kp > a else _origin(P)
        if floor_kp is None or floor_a + scaled != floor_kp:
            return False
    return True


def normals_on_reflexive_boundary(P: Polytope) -> bool:
    """Facet normals of a nearly Gorenstein ``P`` against the remainder dual.

    With ``Q`` the remainder of ``aP`` translated so the origin is its
    interior lattice point, checks that ``Q`` is reflexive, that every
    facet normal ``n`` of ``P`` attains ``min over vert(Q) of n(x) = -1``
    (so ``n`` lies on the boundary of the dual), and that every vertex of
    the dual appears among the normals of ``P``.  Requires a conclusive
    positive nearly-Gorenstein verdict first.
    """
    _require_input(P)
    verdict = is_nearly_gorenstein(P)
    if verdict.status not in (STATUS_GORENSTEIN, STATUS_NEARLY):
        raise ValueError("input is not certified nearly Gorenstein")
    a = verdict.codegree
    Q = remainder_polytope(P.dilate(a))
    if not Q.strictly_contains((0,) * P.ambient_dim):
        inner = Q.interior_lattice_points()
        if len(inner) != 1:
            return False
        Q = Q.translate(tuple(-x for x in inner[0]))
    if not Q.is_reflexive():
        return False
    for f in P.facets:
        low = min(sum(n * x for n, x in zip(f.normal, v)) for v in Q.vertices)
        if low != -1:
            return False
    normals = {f.normal for f in P.facets}
    dual = Q.polar_dual()
    return all(v in normals for v in dual.vertices)


def _primitive_row(normal, height):
    g = 0
    for x in normal:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero normal in the height map")
    h = Fraction(height, g)
    return tuple(x // g for x in normal), (int(h) if h.denominator == 1 else h)


def construct_candidate(Q: Polytope, S, heights) -> ConstructionResult:
    """Assemble a nearly-Gorenstein candidate from a reflexive target.

    ``Q`` must be reflexive; ``S`` is a set of integer boundary points of
    the dual of ``Q`` containing all dual vertices; ``heights`` assigns an
    integer to each ``n`` in ``S``.  The intersection
    ``P' = {x : n(x) >= -heights[n] for n in S}`` must be bounded with every
    inequality irredundant.  The least integer ``r`` making ``rP'`` a
    lattice polytope with an interior lattice point is applied (its
    remainder is then ``Q`` by construction, which is asserted), and the
    dilates ``k * rP'`` are searched for the first conclusive positive
    verdict, with the cap taken from ``dilation_threshold`` when the
    Minkowski hypothesis holds and ``4d`` otherwise.
    """
    _require_input(Q)
    if not Q.is_reflexive():
        raise ValueError("target polytope is not reflexive")
    d = Q.ambient_dim
    dual = Q.polar_dual()
    S = [tuple(p) for p in S]
    boundary = set(dual.boundary_lattice_points())
    for p in S:
        if p not in boundary:
            raise ValueError(f"normal {p} is not a boundary lattice point of the dual")
    for v in dual.vertices:
        if v not in set(S):
            raise ValueError(f"dual vertex {v} is missing from the normal set")
    rows = []
    for n in S:
        if n not in heights:
            raise ValueError(f"no height assigned to normal {n}")
        rows.append((n, heights[n]))
    prime = Polytope.from_facets(rows)
    want = {_primitive_row(n, h) for n, h in rows}
    got = {(f.normal, f.height) for f in prime.facets}
    if want != got:
        extra = sorted(want - got)
        raise ValueError(f"redundant inequality for normal {extra[0][0]}")

    r0 = 1
    for v in prime.vertices:
        for x in v:
            den = getattr(x, "denominator", 1)
            r0 = r0 * den // gcd(r0, den)
    base = None
    scale = None
    for mult in range(1, d + 2):
        r = r0 * mult
        candidate = Polytope.from_points(
            [tuple(r * x for x in v) for v in prime.vertices])
        if candidate.interior_lattice_points():
            base = candidate
            scale = r
            break
    if base is None:
        raise AssertionError("no dilate below the codegree bound has interior points")
    if remainder_polytope(base) != Q:
        raise AssertionError("remainder of the assembled polytope is not the target")

    if ng_necessary_minkowski(base):
        k_cap = dilation_threshold(base).K
    else:
        k_cap = 4 * d
    for k in range(1, k_cap + 1):
        candidate = base.dilate(k)
        verdict = is_nearly_gorenstein(candidate)
        if verdict.status in (STATUS_GORENSTEIN, STATUS_NEARLY):
            return ConstructionResult(candidate, verdict, scale, k)
    unknown = NGVerdict(STATUS_UNKNOWN, codegree(base), None, k_cap)
    return ConstructionResult(base, unknown, scale, None)
