"""Exact configuration counters over four point sets in the plane.

Every quantity has at least two independent routes:

* ``oracle`` -- literal nested-loop enumeration, the ground truth;
* ``fast``   -- difference tables / circle probing, the workhorse;
* ``fourier`` (one-side-length parallelograms only) -- numerical evaluation
  of the character-sum expansion, restricted to q <= 31.

All counts are exact integers.  The only float-derived value is the fourier
total, which must land within 1e-6 of an integer or the call raises.

Conventions (ordered tuples throughout):

* one-side-length parallelograms: quadruples (x, y, z, w) in
  E1 x E2 x E3 x E4 with x - y = z - w and |x - y| = t;
* rhombi of side t: triples (u, v, x) with |x| = t, u in E1, u + x in E2,
  v in E3, v + x in E4 and |u - v| = t, i.e. the vertex path
  (u, u + x, v + x, v); tuples with v = u + x are the degenerate ones and
  are counted unless explicitly excluded.
"""

import functools
from dataclasses import dataclass

import numpy as np

from .errors import ToleranceExceeded
from .field import PrimeFieldCtx
from .fourier import transform
from .geometry import PointSet, circle, difference_table, intersect_shift

FOURIER_Q_CAP = 31
ROUND_TOL = 1e-6


@dataclass(frozen=True)
class CountResult:
    value: int
    method: str
    q: int
    t: int | None
    set_sizes: tuple

    def to_json_obj(self, quantity: str) -> dict:
        return {
            "quantity": quantity,
            "q": self.q,
            "t": self.t,
            "value": self.value,
            "method": self.method,
            "set_sizes": list(self.set_sizes),
        }


@dataclass(frozen=True)
class FourierSplit:
    """Character-sum evaluation of the one-side-length parallelogram count.

    ``total`` is the full double sum over frequency pairs and equals the
    count exactly in exact arithmetic.  ``term_i`` is the diagonal
    contribution normalized with the idealized circle mass 1/q, which makes
    it equal to (all-parallelograms count)/q and independent of t; the small
    correction from the true circle mass |S_t|/q^2 is carried by
    ``term_ii`` together with the off-diagonal terms.
    """

    term_i: complex
    term_ii: complex
    total: complex
    value: int
    q: int
    t: int
    set_sizes: tuple


def _require_same_q(ctx: PrimeFieldCtx, *sets: PointSet) -> None:
    for s in sets:
        if s.q != ctx.q:
            raise ValueError("point sets and field context disagree on q")


# -- unit distances ----------------------------------------------------------

def count_unit_distances(ctx, U: PointSet, V: PointSet, t: int,
                         method: str = "fast") -> CountResult:
    """Pairs (u, v) in U x V with |u - v| = t."""
    _require_same_q(ctx, U, V)
    q = ctx.q
    t %= q
    if method == "oracle":
        total = 0
        for u1, u2 in U.elements:
            for v1, v2 in V.elements:
                d1 = (u1 - v1) % q
                d2 = (u2 - v2) % q
                if (d1 * d1 + d2 * d2) % q == t:
                    total += 1
    elif method == "fast":
        # v is at form-distance t from u iff v in u + S_t (S_t = -S_t).
        members = V.member_set()
        st = circle(ctx, t).elements
        total = 0
        for u1, u2 in U.elements:
            for s1, s2 in st:
                if ((u1 + s1) % q, (u2 + s2) % q) in members:
                    total += 1
    else:
        raise ValueError(f"unknown method {method!r}")
    return CountResult(total, method, q, t, (len(U), len(V)))


# -- parallelograms ----------------------------------------------------------

def count_par_t(ctx, E1, E2, E3, E4, t: int, method: str = "fast") -> CountResult:
    """Quadruples (x, y, z, w) with x - y = z - w and |x - y| = t."""
    _require_same_q(ctx, E1, E2, E3, E4)
    q = ctx.q
    t %= q
    if method == "oracle":
        total = 0
        for x1, x2 in E1.elements:
            for y1, y2 in E2.elements:
                v1 = (x1 - y1) % q
                v2 = (x2 - y2) % q
                if (v1 * v1 + v2 * v2) % q != t:
                    continue
                for z1, z2 in E3.elements:
                    for w1, w2 in E4.elements:
                        if (z1 - w1) % q == v1 and (z2 - w2) % q == v2:
                            total += 1
    elif method == "fast":
        d12 = difference_table(ctx, E1, E2)
        d34 = difference_table(ctx, E3, E4)
        total = sum(d12.count(v) * d34.count(v) for v in circle(ctx, t).elements)
    elif method == "fourier":
        total = par_t_fourier(ctx, E1, E2, E3, E4, t).value
    else:
        raise ValueError(f"unknown method {method!r}")
    return CountResult(total, method, q, t, (len(E1), len(E2), len(E3), len(E4)))


def count_par_all(ctx, E1, E2, E3, E4, method: str = "fast") -> CountResult:
    """All quadruples with x - y = z - w (sum over every side-length t)."""
    _require_same_q(ctx, E1, E2, E3, E4)
    q = ctx.q
    if method == "fast":
        d12 = difference_table(ctx, E1, E2)
        d34 = difference_table(ctx, E3, E4)
        total = sum(c * d34.count(v) for v, c in d12.counts.items())
    elif method == "oracle":
        # Enumerate (x, y, z) and test the forced 4th vertex w = z - (x - y).
        members = E4.member_set()
        total = 0
        for x1, x2 in E1.elements:
            for y1, y2 in E2.elements:
                v1 = (x1 - y1) % q
                v2 = (x2 - y2) % q
                for z1, z2 in E3.elements:
                    if ((z1 - v1) % q, (z2 - v2) % q) in members:
                        total += 1
    else:
        raise ValueError(f"unknown method {method!r}")
    return CountResult(total, method, q, None,
                       (len(E1), len(E2), len(E3), len(E4)))


def par_t_profile(ctx, E1, E2, E3, E4) -> dict:
    """One-side-length counts for every t at once, from one table pass.

    Returns {t: Par_t} covering all t in F_q; the values sum to the
    all-parallelograms count.
    """
    _require_same_q(ctx, E1, E2, E3, E4)
    q = ctx.q
    d12 = difference_table(ctx, E1, E2)
    d34 = difference_table(ctx, E3, E4)
    profile = {t: 0 for t in range(q)}
    for (v1, v2), c in d12.counts.items():
        other = d34.count((v1, v2))
        if other:
            profile[(v1 * v1 + v2 * v2) % q] += c * other
    return profile


# -- rhombi -------------------------------------------------------------------

def count_rhom_t(ctx, E1, E2, E3, E4, t: int, method: str = "fast",
                 exclude_degenerate: bool = False) -> CountResult:
    """Rhombi of side t: triples (u, v, x) as in the module docstring."""
    _require_same_q(ctx, E1, E2, E3, E4)
    q = ctx.q
    t %= q
    if method == "oracle":
        m2 = E2.member_set()
        m4 = E4.member_set()
        total = 0
        for s1, s2 in circle(ctx, t).elements:
            for u1, u2 in E1.elements:
                for v1, v2 in E3.elements:
                    if ((u1 + s1) % q, (u2 + s2) % q) not in m2:
                        continue
                    if ((v1 + s1) % q, (v2 + s2) % q) not in m4:
                        continue
                    d1 = (u1 - v1) % q
                    d2 = (u2 - v2) % q
                    if (d1 * d1 + d2 * d2) % q == t:
                        total += 1
    elif method == "fast":
        total = 0
        for x in circle(ctx, t).elements:
            e12 = intersect_shift(ctx, E1, E2, x)
            e34 = intersect_shift(ctx, E3, E4, x)
            total += count_unit_distances(ctx, e12, e34, t, method="fast").value
    else:
        raise ValueError(f"unknown method {method!r}")
    if exclude_degenerate:
        total -= count_degenerate_rhom(ctx, E1, E2, E3, E4, t).value
    return CountResult(total, method, q, t, (len(E1), len(E2), len(E3), len(E4)))


def count_degenerate_rhom(ctx, E1, E2, E3, E4, t: int) -> CountResult:
    """Rhombus tuples with v = u + x (the collapsed-diagonal case)."""
    _require_same_q(ctx, E1, E2, E3, E4)
    q = ctx.q
    t %= q
    total = 0
    for x in circle(ctx, t).elements:
        e12 = intersect_shift(ctx, E1, E2, x)
        members = intersect_shift(ctx, E3, E4, x).member_set()
        x1, x2 = x
        for u1, u2 in e12.elements:
            if ((u1 + x1) % q, (u2 + x2) % q) in members:
                total += 1
    return CountResult(total, "fast", q, t, (len(E1), len(E2), len(E3), len(E4)))


# -- character-sum evaluation --------------------------------------------------

@functools.lru_cache(maxsize=4)
def _neg_sum_flat_index(q: int) -> np.ndarray:
    """Flat index of (-(m1+n1) mod q, -(m2+n2) mod q) over all frequency pairs.

    Shape (q^2, q^2): row = flattened m, column = flattened n.
    """
    idx = np.arange(q)
    neg = np.mod(-(idx[:, None] + idx[None, :]), q)  # neg[a, b] = -(a+b) mod q
    rows = neg[:, None, :, None]
    cols = neg[None, :, None, :]
    return (rows * q + cols).reshape(q * q, q * q)


def _negated(coeffs: np.ndarray, q: int) -> np.ndarray:
    negi = np.mod(-np.arange(q), q)
    return coeffs[np.ix_(negi, negi)]


def par_t_fourier(ctx, E1, E2, E3, E4, t: int) -> FourierSplit:
    """Evaluate the frequency-side expansion of the one-side-length count.

    total  = q^6 * sum_{m,n} ehat1(-m) ehat2(m) ehat3(-n) ehat4(n) shat_t(-m-n)
    term_i = q^5 * sum_m ehat1(-m) ehat2(m) ehat3(m) ehat4(-m)

    term_i is the diagonal n = -m normalized with circle mass 1/q, hence
    equals Par/q and carries no t dependence; term_ii = total - term_i.
    Raises ToleranceExceeded when total is not within 1e-6 of an integer.
    """
    _require_same_q(ctx, E1, E2, E3, E4)
    q = ctx.q
    if q > FOURIER_Q_CAP:
        raise ValueError(f"fourier counter is restricted to q <= {FOURIER_Q_CAP}")
    t %= q

    e1 = transform(ctx, E1).coeffs
    e2 = transform(ctx, E2).coeffs
    e3 = transform(ctx, E3).coeffs
    e4 = transform(ctx, E4).coeffs
    st = transform(ctx, circle(ctx, t)).coeffs

    # Writing the count as sum_v S_t(v) * sum_{x,y} E1(x)E2(x-v)E3(y)E4(y-v)
    # and expanding E2, E4 by inversion pairs E1 with E2 on one frequency and
    # E3 with E4 on the other.
    a = (_negated(e1, q) * e2).reshape(-1)          # a[m] = ehat1(-m) ehat2(m)
    b = (_negated(e3, q) * e4).reshape(-1)          # b[n] = ehat3(-n) ehat4(n)
    st_flat = st.reshape(-1)

    pair_idx = _neg_sum_flat_index(q)
    total = complex(q**6 * (a[:, None] * b[None, :] * st_flat[pair_idx]).sum())

    b_neg = (_negated(e4, q) * e3).reshape(-1)      # b[-m] = ehat3(m) ehat4(-m)
    term_i = complex(q**5 * (a * b_neg).sum())
    term_ii = total - term_i

    nearest = round(total.real)
    if abs(total - nearest) > ROUND_TOL:
        raise ToleranceExceeded(
            f"fourier total {total!r} is not within {ROUND_TOL} of an integer")
    return FourierSplit(term_i, term_ii, total, int(nearest), q, t,
                        (len(E1), len(E2), len(E3), len(E4)))
