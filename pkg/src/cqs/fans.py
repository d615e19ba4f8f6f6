"""Fan constructions over a normalized cone: minimal resolution, RDP fan,
the fan of an admissible chain, P-resolution validation, and the ray-subset
search that double-checks the chain enumeration.

All fans live in normal coordinates, rays ordered counterclockwise from
(1,0) to (-q,n). Each two-dimensional cone carries a roof: the segment its
defining functional cuts out at its height, with exact rational endpoints.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .chains import KChain, rdp_chain
from .errors import (
    ConsistencyError,
    DomainError,
    ResourceLimitError,
    ValidationError,
)
from .lattice import (
    LatticeVector,
    Point,
    det2,
    lattice_length,
    nvec,
    pair,
)
from .model import (
    GENERAL,
    SMOOTH,
    NormalForm,
    SingularityClass,
    classify_cone,
    cone_geometry,
    v_rays,
    w_generators,
)


@dataclass(frozen=True)
class Roof:
    """Roof of a two-dimensional cone: the segment at height h cut out by w."""

    w: LatticeVector
    h: int
    l: int
    left: Point
    right: Point


@dataclass(frozen=True)
class Cone2D:
    left: LatticeVector
    right: LatticeVector
    roof: Roof
    cls: SingularityClass


@dataclass(frozen=True)
class Fan:
    """Ordered subdivision of the normalized cone.

    chain_cones, present on chain-built fans, maps each chain index
    i = 2..e-1 (stored 0-based) to the position of its cone, or None for a
    degenerate (merged) one.
    """

    rays: tuple[LatticeVector, ...]
    cones: tuple[Cone2D, ...]
    chain_cones: tuple[int | None, ...] | None = None

    def ray_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(r.xy for r in self.rays)

    def interior_rays(self) -> tuple[LatticeVector, ...]:
        return self.rays[1:-1]

    def roof_sum(self) -> Fraction:
        """Sum of l/h over the two-dimensional cones."""
        return sum((Fraction(c.roof.l, c.roof.h) for c in self.cones), Fraction(0))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failed: str | None = None
    detail: str = ""


def _intrinsic_cone(u: LatticeVector, v: LatticeVector) -> Cone2D:
    """Cone with the roof its own geometry defines: endpoints at the generators."""
    cls = classify_cone(u, v)
    w, h, l = cone_geometry(u, v)
    return Cone2D(u, v, Roof(w, h, l, u.point(), v.point()), cls)


def fan_from_rays(rays) -> Fan:
    """Fan through the given primitive rays, which must be in strict
    counterclockwise order; every cone gets its intrinsic roof."""
    rays = tuple(rays)
    if len(rays) < 2:
        raise DomainError("a fan needs at least two rays")
    for a, b in zip(rays, rays[1:]):
        if det2(a, b) <= 0:
            raise DomainError(f"rays out of angular order: {a}, {b}")
    cones = tuple(_intrinsic_cone(a, b) for a, b in zip(rays, rays[1:]))
    return Fan(rays, cones)


def minimal_resolution_fan(nf: NormalForm) -> Fan:
    """Subdivision along all v^i; every cone must come out smooth."""
    fan = fan_from_rays(v_rays(nf))
    for c in fan.cones:
        if c.cls.tag != SMOOTH:
            raise ConsistencyError(
                "minimal resolution produced a singular cone", cone=(c.left, c.right)
            )
    return fan


def _inside_sigma(nf: NormalForm, v: LatticeVector) -> bool:
    s1, s2 = nf.sigma
    return det2(s1, v) >= 0 and det2(v, s2) >= 0


def fan_from_chain(nf: NormalForm, chain: KChain) -> Fan:
    """The fan attached to an admissible chain.

    Interior ray candidates for i = 3..e-1 are the primitive vectors in sigma
    orthogonal to q_{i-1}*w^i - q_i*w^{i-1} (the integer multiple of
    w^i/q_i - w^{i-1}/q_{i-1}). Consecutive duplicates come exactly from the
    degenerate indices a_i = k_i and are merged; each surviving cone tau_i
    carries the roof at height q_i with length (a_i - k_i)*q_i.
    """
    e = nf.e
    a = nf.a_chain.coeffs
    if len(chain.k) != e - 2:
        raise DomainError(f"chain length {len(chain.k)} does not match e - 2 = {e - 2}")
    if any(k > ai for k, ai in zip(chain.k, a)):
        raise DomainError(f"chain {chain} exceeds the a-chain caps {list(a)}")

    ws = w_generators(nf)
    qs = chain.q_seq
    s_left, s_right = nf.sigma

    raw = [s_left]
    for i in range(3, e):
        # orthogonal to u = q_{i-1} w^i - q_i w^{i-1}, rotated into sigma
        ux = qs[i - 2] * ws[i - 1].x - qs[i - 1] * ws[i - 2].x
        uy = qs[i - 2] * ws[i - 1].y - qs[i - 1] * ws[i - 2].y
        cand = nvec(-uy, ux).primitive()
        if not _inside_sigma(nf, cand):
            cand = -cand
        if not _inside_sigma(nf, cand):
            raise ValidationError(f"no orthogonal ray inside sigma for index {i}")
        raw.append(cand)
    raw.append(s_right)

    rays = [s_left]
    cones: list[Cone2D] = []
    chain_cones: list[int | None] = []
    for i in range(2, e):
        left, right = raw[i - 2], raw[i - 1]
        degenerate = a[i - 2] == chain.k[i - 2]
        if (left == right) != degenerate:
            raise ValidationError(
                f"ray merge disagrees with degeneracy at index {i}: "
                f"{left} vs {right}, a_i={a[i - 2]}, k_i={chain.k[i - 2]}"
            )
        if degenerate:
            chain_cones.append(None)
            continue
        if left != rays[-1]:
            raise ValidationError(f"rays out of order at index {i}")
        rays.append(right)

        wi, qi = ws[i - 1], qs[i - 1]
        endpoints = []
        for ray in (left, right):
            s = pair(ray, wi)
            if s <= 0:
                raise ValidationError(f"ray {ray} not positive against w^{i}")
            endpoints.append((Fraction(ray.x * qi, s), Fraction(ray.y * qi, s)))
        length = (a[i - 2] - chain.k[i - 2]) * qi
        if lattice_length(*endpoints) != length:
            raise ConsistencyError(
                "roof length disagrees with (a_i - k_i) q_i",
                index=i, chain=chain,
            )
        cls = classify_cone(left, right)
        if cls.tag == GENERAL:
            raise ValidationError(f"cone {left},{right} of {chain} fails the T-test")
        cones.append(Cone2D(left, right, Roof(wi, qi, length, *endpoints), cls))
        chain_cones.append(len(cones) - 1)

    if rays[-1] != s_right:
        raise ValidationError("fan does not close up on the second generator")
    for u, v in zip(rays, rays[1:]):
        if det2(u, v) <= 0:
            raise ValidationError(f"rays out of angular order: {u}, {v}")
    return Fan(tuple(rays), tuple(cones), tuple(chain_cones))


def rdp_fan(nf: NormalForm) -> Fan:
    """Fan of the RDP resolution: the chain construction for (1,2,...,2,1),
    cross-checked against rays through the hull vertices."""
    if nf.e <= 3:
        raise DomainError("RDP fan needs embedding dimension >= 4")
    fan = fan_from_chain(nf, rdp_chain(nf.e - 2))
    hull = {v.xy for v in hull_vertex_rays(nf)}
    if fan.ray_set() != hull:
        raise ConsistencyError(
            "chain-built RDP fan disagrees with hull vertices",
            chain_rays=sorted(fan.ray_set()), hull_rays=sorted(hull),
        )
    return fan


def validate_presolution(fan: Fan) -> ValidationReport:
    """Check the three P-resolution conditions.

    (1) every cone is smooth or T (h divides l); (2) adjacent roofs share
    their endpoint on the common ray; (3) the concatenated roof path is
    strictly convex at every interior ray. Collinear adjacent roofs are the
    crepant case and fail, as does any reflex turn.
    """
    for c in fan.cones:
        if not c.cls.is_t_like:
            return ValidationReport(
                False, "t-test", f"cone {c.left},{c.right} has h={c.cls.h}, l={c.cls.l}"
            )
    for ca, cb in zip(fan.cones, fan.cones[1:]):
        if ca.roof.right != cb.roof.left:
            return ValidationReport(
                False, "roof-continuity",
                f"roofs disagree on ray {cb.left}: {ca.roof.right} vs {cb.roof.left}",
            )
    points = [fan.cones[0].roof.left] + [c.roof.right for c in fan.cones]
    for j in range(1, len(points) - 1):
        ax = points[j][0] - points[j - 1][0]
        ay = points[j][1] - points[j - 1][1]
        bx = points[j + 1][0] - points[j][0]
        by = points[j + 1][1] - points[j][1]
        cross = ax * by - ay * bx
        if cross == 0:
            return ValidationReport(
                False, "roof-convexity", f"collinear roofs (crepant) at {points[j]}"
            )
        if cross > 0:
            return ValidationReport(
                False, "roof-convexity", f"reflex roof path at {points[j]}"
            )
    return ValidationReport(True)


# --- lattice points, hulls, ray-subset search ------------------------------


def triangle_lattice_points(nf: NormalForm) -> list[tuple[int, int]]:
    """Lattice points of conv{0, (1,0), (-q,n)} without the origin."""
    n, q = nf.n, nf.q
    pts = []
    for y in range(n + 1):
        xmin = -((q * y) // n)                 # ceil(-q*y/n)
        xmax = (n - (q + 1) * y) // n          # floor(1 - (q+1)*y/n)
        for x in range(xmin, xmax + 1):
            if (x, y) != (0, 0):
                pts.append((x, y))
    return pts


def _convex_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Counterclockwise hull vertices (monotone chain, collinear dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[int, int]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def hull_vertex_rays(nf: NormalForm) -> list[LatticeVector]:
    """Rays through the vertices of the hull chain facing the origin,
    from (1,0) to (-q,n)."""
    g1, g2 = (1, 0), (-nf.q, nf.n)
    hull = _convex_hull(triangle_lattice_points(nf))
    if len(hull) == 2:
        return [nvec(*g1), nvec(*g2)]
    i1, i2 = hull.index(g1), hull.index(g2)

    def arc(i, j):
        out = [hull[i]]
        while i != j:
            i = (i + 1) % len(hull)
            out.append(hull[i])
        return out

    forward, backward = arc(i1, i2), arc(i2, i1)[::-1]
    # the chain facing the origin keeps its interior strictly off the
    # hypotenuse [g1, g2], on the origin's side
    def on_origin_side(p):
        hx, hy = g2[0] - g1[0], g2[1] - g1[1]
        c = hx * (p[1] - g1[1]) - hy * (p[0] - g1[0])
        c0 = hx * (0 - g1[1]) - hy * (0 - g1[0])
        return c * c0 > 0

    for candidate in (forward, backward):
        interior = candidate[1:-1]
        if interior and all(on_origin_side(p) for p in interior):
            return [nvec(*p) for p in candidate]
    return [nvec(*g1), nvec(*g2)]


def hull_boundary_lattice_points(nf: NormalForm) -> list[LatticeVector]:
    """All lattice points on the origin-facing hull chain (minimal-resolution
    ray set, computed without the b-chain recursion)."""
    verts = hull_vertex_rays(nf)
    out = [verts[0]]
    for a, b in zip(verts, verts[1:]):
        steps = int(lattice_length(a.xy, b.xy))
        sx, sy = (b.x - a.x) // steps, (b.y - a.y) // steps
        for s in range(1, steps + 1):
            out.append(nvec(a.x + sx * s, a.y + sy * s))
    return out


def dominating_interior_rays(nf: NormalForm) -> list[LatticeVector]:
    """Primitive interior directions of all lattice points in the bounding
    triangle; every P-resolution's rays are among them."""
    dirs = {nvec(x, y).primitive().xy for x, y in triangle_lattice_points(nf)}
    dirs.discard((1, 0))
    dirs.discard((-nf.q, nf.n))
    rays = [nvec(*d) for d in dirs]
    rays.sort(key=functools.cmp_to_key(lambda a, b: -det2(a, b)))
    return rays


def brute_force_presolutions(nf: NormalForm, max_interior: int = 20) -> tuple[Fan, ...]:
    """All P-resolutions found by the ray-subset method.

    Enumerates every subset of the dominating fan's interior rays and keeps
    exactly the fans passing validate_presolution. Intended for small n; the
    subset space is guarded at 2**max_interior.
    """
    if nf.e <= 3:
        raise DomainError("subset search needs embedding dimension >= 4")
    inner = dominating_interior_rays(nf)
    if len(inner) > max_interior:
        raise ResourceLimitError(
            f"{len(inner)} interior rays exceed the bound of {max_interior}"
        )
    s_left, s_right = nf.sigma
    all_rays = [s_left] + inner + [s_right]
    cone_cache: dict[tuple[int, int], Cone2D] = {}

    def cone_at(i: int, j: int) -> Cone2D:
        key = (i, j)
        if key not in cone_cache:
            cone_cache[key] = _intrinsic_cone(all_rays[i], all_rays[j])
        return cone_cache[key]

    survivors = []
    for size in range(len(inner) + 1):
        for combo in combinations(range(1, len(inner) + 1), size):
            idxs = (0, *combo, len(all_rays) - 1)
            cones = []
            ok = True
            for i, j in zip(idxs, idxs[1:]):
                c = cone_at(i, j)
                if not c.cls.is_t_like:
                    ok = False
                    break
                cones.append(c)
            if not ok:
                continue
            fan = Fan(tuple(all_rays[t] for t in idxs), tuple(cones))
            if validate_presolution(fan).ok:
                survivors.append(fan)
    survivors.sort(key=lambda f: tuple(r.xy for r in f.rays))
    return tuple(survivors)


def roof_endpoint_anomalies(fan: Fan) -> list[str]:
    """Roof endpoints that do not sit on the primitive ray generators.

    Expected to be empty for every chain-built fan; reported instead of
    assumed.
    """
    notes = []
    for c in fan.cones:
        if c.roof.left != c.left.point() or c.roof.right != c.right.point():
            notes.append(
                f"roof of cone {c.left},{c.right} has endpoints "
                f"{c.roof.left}, {c.roof.right} off the primitive generators"
            )
    return notes
