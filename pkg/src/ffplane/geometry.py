"""Points, point sets, circles, and difference tables in the plane over F_q.

A point is a plain tuple ``(x1, x2)`` of canonical residues.  The distance
form is the quadratic form ``|p| = p1^2 + p2^2 mod q`` -- it takes values in
F_q and is not a metric.  The circle of radius j is the level set of that
form; for j != 0 it has ``q - eta(-1)`` points, so "radius" j and circle
size are unrelated to Euclidean intuition.
"""

import functools
import json
import os

from .errors import PointSetFormatError
from .field import PrimeFieldCtx
from .rng import SplitMix64

Point = tuple


class PointSet:
    """Immutable set of distinct points with O(1) membership.

    Keeps both the ordered element tuple (for deterministic iteration) and a
    hash-set indicator (for membership probes in the counters).
    """

    __slots__ = ("q", "elements", "_members")

    def __init__(self, q: int, points):
        pts = tuple((int(p[0]), int(p[1])) for p in points)
        members = frozenset(pts)
        if len(members) != len(pts):
            raise ValueError("duplicate points in point set")
        for x1, x2 in pts:
            if not (0 <= x1 < q and 0 <= x2 < q):
                raise ValueError(f"point {(x1, x2)} not reduced mod {q}")
        self.q = q
        self.elements = pts
        self._members = members

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p):
        return p in self._members

    def member_set(self) -> frozenset:
        return self._members

    def __eq__(self, other):
        return (
            isinstance(other, PointSet)
            and self.q == other.q
            and self._members == other._members
        )

    def __hash__(self):
        return hash((self.q, self._members))

    def __repr__(self):
        return f"PointSet(q={self.q}, size={len(self.elements)})"


class DifferenceTable:
    """Counts D(v) = #{(a, b) in A x B : a - b = v}; total mass |A|*|B|."""

    __slots__ = ("q", "counts", "total")

    def __init__(self, q: int, counts: dict, total: int):
        self.q = q
        self.counts = counts
        self.total = total

    def count(self, v) -> int:
        return self.counts.get(v, 0)


def norm(ctx: PrimeFieldCtx, p) -> int:
    """The distance form p1^2 + p2^2 mod q."""
    return (p[0] * p[0] + p[1] * p[1]) % ctx.q


@functools.lru_cache(maxsize=None)
def _circle_cached(q: int, j: int) -> PointSet:
    pts = [(x1, x2) for x1 in range(q) for x2 in range(q)
           if (x1 * x1 + x2 * x2) % q == j]
    return PointSet(q, pts)


def circle(ctx: PrimeFieldCtx, j: int) -> PointSet:
    """All points at form-value j from the origin.  Cached per (q, j)."""
    return _circle_cached(ctx.q, j % ctx.q)


def full_plane(ctx: PrimeFieldCtx) -> PointSet:
    """The whole plane F_q^2 (q^2 points, row-major order)."""
    q = ctx.q
    return PointSet(q, [(x1, x2) for x1 in range(q) for x2 in range(q)])


def difference_table(ctx: PrimeFieldCtx, A: PointSet, B: PointSet) -> DifferenceTable:
    """Tabulate a - b over A x B.  O(|A|*|B|)."""
    q = ctx.q
    counts: dict = {}
    for a1, a2 in A.elements:
        for b1, b2 in B.elements:
            v = ((a1 - b1) % q, (a2 - b2) % q)
            counts[v] = counts.get(v, 0) + 1
    return DifferenceTable(q, counts, len(A) * len(B))


def intersect_shift(ctx: PrimeFieldCtx, Ei: PointSet, Ej: PointSet, x) -> PointSet:
    """The set Ei shifted against Ej: {u in Ei : u + x in Ej}."""
    q = ctx.q
    x1, x2 = x
    members = Ej.member_set()
    kept = [u for u in Ei.elements if ((u[0] + x1) % q, (u[1] + x2) % q) in members]
    return PointSet(q, kept)


def gen_example_line_ap(ctx: PrimeFieldCtx, X) -> PointSet:
    """Horizontal-strip construction: {(a, b) : a in F_q, b in X}.

    With X an arithmetic progression this is the standard example of a set
    whose parallelogram count is governed by the additive energy of X.
    """
    q = ctx.q
    xs = [x % q for x in X]
    if len(set(xs)) != len(xs):
        raise ValueError("X must consist of distinct residues")
    return PointSet(q, [(a, b) for a in range(q) for b in xs])


def gen_random_set(ctx: PrimeFieldCtx, density: float, seed: int) -> PointSet:
    """Bernoulli(density) sample of the plane, row-major scan order.

    Driven by splitmix64, so the result is a pure function of
    (q, density, seed).
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    q = ctx.q
    rng = SplitMix64(seed)
    pts = [(x1, x2) for x1 in range(q) for x2 in range(q)
           if rng.next_float() < density]
    return PointSet(q, pts)


# -- file formats -----------------------------------------------------------
#
# Text form:  first line "q <value>", then one "x1 x2" pair per line.
# JSON form:  {"q": int, "points": [[x1, x2], ...]}.
# Duplicates are rejected in both forms.


def point_set_to_json_obj(ps: PointSet) -> dict:
    return {"q": ps.q, "points": [[p[0], p[1]] for p in ps.elements]}


def point_set_from_json_obj(obj) -> PointSet:
    try:
        q = int(obj["q"])
        raw = obj["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise PointSetFormatError(f"bad point-set JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise PointSetFormatError("'points' must be a list")
    pts = []
    for entry in raw:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise PointSetFormatError(f"bad point entry {entry!r}")
        pts.append((int(entry[0]), int(entry[1])))
    try:
        return PointSet(q, pts)
    except ValueError as exc:
        raise PointSetFormatError(str(exc)) from exc


def point_set_to_text(ps: PointSet) -> str:
    lines = [f"q {ps.q}"]
    lines.extend(f"{p[0]} {p[1]}" for p in ps.elements)
    return "\n".join(lines) + "\n"


def point_set_from_text(text: str) -> PointSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise PointSetFormatError("empty point-set file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "q":
        raise PointSetFormatError(f"expected header 'q <value>', got {lines[0]!r}")
    try:
        q = int(header[1])
    except ValueError as exc:
        raise PointSetFormatError(f"bad modulus {header[1]!r}") from exc
    pts = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise PointSetFormatError(f"expected 'x1 x2', got {ln!r}")
        try:
            pts.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise PointSetFormatError(f"bad coordinate in {ln!r}") from exc
    try:
        return PointSet(q, pts)
    except ValueError as exc:
        raise PointSetFormatError(str(exc)) from exc


def save_point_set(ps: PointSet, path: str) -> None:
    """Write a set file; JSON when the extension is .json, text otherwise."""
    if os.path.splitext(path)[1].lower() == ".json":
        payload = json.dumps(point_set_to_json_obj(ps), sort_keys=True)
        data = payload + "\n"
    else:
        data = point_set_to_text(ps)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(data)


def load_point_set(path: str) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        data = fh.read()
    if os.path.splitext(path)[1].lower() == ".json":
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as exc:
            raise PointSetFormatError(f"invalid JSON: {exc}") from exc
        return point_set_from_json_obj(obj)
    return point_set_from_text(data)
