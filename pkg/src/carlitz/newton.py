"""Newton polygons, Carlitz division points, and logarithm reduction.

Solving C_t(x) = theta x + x^q = beta in the working field proceeds by
Newton polygon: the lower hull of (i, v(c_i)) gives candidate root
valuations (-slope per segment), the residual polynomial of each segment
gives leading residues, and Hensel iteration x <- x - f(x)/theta (the
derivative is constantly theta) refines them.  Roots that would require a
non-integral valuation or a residue-field extension raise
ExtensionRequired.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .analytic import carlitz_action, carlitz_exp, carlitz_log, t_power_coeffs
from .errors import ExtensionRequired, IndeterminateValuation
from .fields import FieldConfig, LocalElement, NormInfo, _INF, local_norm


@dataclass(frozen=True)
class Segment:
    """One lower-hull edge: roots of this segment have valuation -slope."""

    slope: Fraction
    length: int
    residual: Tuple[int, ...]  # residue codes, ascending in the segment variable


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: Tuple[Tuple[int, int], ...]
    segments: Tuple[Segment, ...]
    ord_zero: int  # number of roots at 0 (trailing zero coefficients)


def newton_polygon(coeffs: Sequence[LocalElement]) -> NewtonPolygon:
    """Lower convex hull of (i, v(c_i)) with residual polynomials.

    Exactly-zero coefficients are skipped; a zero-at-precision coefficient
    is tolerated only when its precision bound keeps it strictly above the
    hull, otherwise the hull is not determined and IndeterminateValuation
    is raised.  The leading coefficient must be visibly nonzero.
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_exact_zero():
        coeffs.pop()
    if not coeffs or coeffs[-1].is_zero_at_prec():
        raise IndeterminateValuation("leading coefficient is zero at precision")
    points: List[Tuple[int, int]] = []
    uncertain: List[Tuple[int, int]] = []
    for i, c in enumerate(coeffs):
        if c.support:
            points.append((i, c.valuation()))
        elif not c.is_exact_zero():
            uncertain.append((i, c.prec))
    ord_zero = points[0][0]
    # monotone-chain lower hull
    hull: List[Tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)

    def hull_value(x: int) -> Fraction:
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= x <= x2:
                return Fraction(y1) + Fraction(y2 - y1, x2 - x1) * (x - x1)
        return Fraction(hull[-1][1]) if x >= hull[-1][0] else Fraction(hull[0][1])

    for i, bound in uncertain:
        if hull[0][0] < i < hull[-1][0] and Fraction(bound) <= hull_value(i):
            raise IndeterminateValuation(
                f"coefficient {i} is zero at precision {bound}, at or below the hull")

    segments: List[Segment] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        residual: List[int] = []
        for i in range(x1, x2 + 1):
            line = Fraction(y1) + slope * (i - x1)
            c = coeffs[i]
            if line.denominator == 1 and c.support and c.valuation() == line:
                residual.append(c.coeff(int(line)))
            else:
                residual.append(0)
        segments.append(Segment(slope, x2 - x1, tuple(residual)))
    return NewtonPolygon(tuple(hull), tuple(segments), ord_zero)


# -- residual polynomial helpers (dense code vectors over the residue field) --

def _residual_eval(cfg: FieldConfig, poly: Sequence[int], u: int) -> int:
    R = cfg.residue
    acc = 0
    for c in reversed(list(poly)):
        acc = R.add(R.mul(acc, u), c)
    return acc


def _residual_deflate(cfg: FieldConfig, poly: List[int], u: int) -> List[int]:
    """Divide by (X - u); assumes u is a root."""
    R = cfg.residue
    out = [0] * (len(poly) - 1)
    carry = 0
    for k in range(len(poly) - 1, 0, -1):
        carry = R.add(poly[k], R.mul(carry, u))
        out[k - 1] = carry
    return out


def _residual_roots_split(cfg: FieldConfig, poly: Sequence[int]) -> List[int]:
    """Distinct roots, verifying the polynomial splits over F_{q^e}."""
    R = cfg.residue
    work = list(poly)
    while work and work[-1] == 0:
        work.pop()
    roots: List[int] = []
    while len(work) > 1:
        root = None
        for u in R.elements():
            if _residual_eval(cfg, work, u) == 0:
                root = u
                break
        if root is None:
            raise ExtensionRequired(
                "residual", "residual polynomial does not split over the residue field")
        if root not in roots:
            roots.append(root)
        work = _residual_deflate(cfg, work, root)
    return roots


# ---------------------------------------------------------------------------
# division points
# ---------------------------------------------------------------------------

def _hensel_refine(beta: LocalElement, x: LocalElement, target: int) -> LocalElement:
    """Refine a leading-term approximation to a root of x^q + theta x = beta.

    While the residual f(x) is large (outside the contraction radius
    |f| < |theta|^(q/(q-1))), the correction y solving y^q + theta y = -f(x)
    is dug out digit by digit from its own dominant balance: for residual
    valuation w <= -q*ram/(q-1) the balance is y^q = -f(x) (valuation w/q,
    requiring q | w), otherwise the plain Newton step y = -f(x)/theta works
    and converges quadratically since f' is constantly theta.
    """
    cfg = beta.config
    q, ram = cfg.q, cfg.ram
    R = cfg.residue
    th = cfg.theta()
    th_inv = th.inv()
    domain_floor = -(q * ram) // (q - 1)
    last_floor = -_INF
    for _ in range(400):
        fx = (x.twist(1) + th * x - beta).truncate(target)
        if fx.is_zero_at_prec():
            return x.truncate(target)
        w = fx.valuation()
        if w <= last_floor:
            raise ArithmeticError("root refinement stalled")
        last_floor = w
        if w < domain_floor:
            if w % q:
                raise ExtensionRequired(
                    "slope", f"correction valuation {w}/{q} is not integral")
            lead = R.frob_q_inv(R.neg(fx.coeff(w)))  # q-th root of -f leading
            x = (x + cfg.monomial(w // q, lead)).truncate(target)
        elif w == domain_floor:
            # boundary: the theta-term is collinear, residual u^q + tbar u = gbar
            tbar = th.coeff(-ram)
            gbar = R.neg(fx.coeff(w))
            lead = next((u for u in R.elements()
                         if R.add(R.pow_q(u, 1), R.mul(tbar, u)) == gbar), None)
            if lead is None:
                raise ExtensionRequired(
                    "residual", "boundary correction equation has no residue root")
            x = (x + cfg.monomial(w // q, lead)).truncate(target)
        else:
            x = (x - fx * th_inv).truncate(target)
    raise ArithmeticError("root refinement did not converge")


def division_points(beta: LocalElement) -> List[LocalElement]:
    """All roots of x^q + theta x = beta in the working field.

    Roots differ by the t-torsion F_q * zeta, so one Hensel lift per
    residual root is completed by torsion translation.  Raises
    ExtensionRequired when a segment slope is non-integral or a residual
    polynomial fails to split.
    """
    cfg = beta.config
    q = cfg.q
    R = cfg.residue
    th = cfg.theta()
    zeta = cfg.zeta()
    target = beta.prec if beta.prec is not None else cfg.default_prec
    f_coeffs = [-beta, th] + [cfg.zero()] * (q - 2) + [cfg.one()]
    np = newton_polygon(f_coeffs)
    starts: List[LocalElement] = []
    for seg in np.segments:
        w = -seg.slope  # root valuation
        if w.denominator != 1:
            raise ExtensionRequired(
                "slope", f"segment slope {seg.slope} gives non-integral root valuation")
        for u in _residual_roots_split(cfg, seg.residual):
            starts.append(cfg.monomial(int(w), u))
    roots: List[LocalElement] = []
    if np.ord_zero:
        roots.append(cfg.zero(prec=target))
    for x0 in starts:
        roots.append(_hensel_refine(beta, x0, target))
    # complete with torsion translates and deduplicate at precision
    full: List[LocalElement] = []
    seen = set()
    for r in roots:
        for c in range(q):
            cand = (r + zeta.scale(R.from_int(c)) if c else r).truncate(target)
            key = tuple(sorted(cand.support.items()))
            if key not in seen:
                seen.add(key)
                full.append(cand)
    if len(full) != q:
        raise ArithmeticError(f"expected {q} division points, found {len(full)}")
    return full


# ---------------------------------------------------------------------------
# logarithm reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionResult:
    """Greedy reduction data: C_{t^n}(alpha) = beta with alpha small.

    ``check_division`` / ``check_exp`` are the norms of C_{t^n}(alpha)-beta
    and exp_C(theta^n log_C(alpha))-beta at the working precision.  The
    torsion summand f*pitilde of the reduced logarithm is not recovered;
    the checks make the root choices auditable.
    """

    alpha: LocalElement
    n: int
    check_division: NormInfo
    check_exp: NormInfo


def _root_sort_key(r: LocalElement):
    cfg = r.config
    v = r.val_floor()
    if v == _INF:
        return (-(10 ** 9), ())
    items = tuple((e, cfg.residue.coords(c)) for e, c in sorted(r.support.items()))
    return (-int(v), items)


def reduce_log(beta: LocalElement, prec: Optional[int] = None) -> ReductionResult:
    """Repeatedly replace beta by a t-division point until it is very small.

    Each step keeps the division point of largest valuation (for beta
    outside the log domain all q roots share valuation v(beta)/q, matching
    |alpha| = |beta|^(1/q); inside it the unique principal root, valuation
    v(beta) + ram, is taken).  Valuation ties are broken by the
    lexicographically smallest leading residue.  The loop stops once
    v(beta) > q*ram/(q-1), mirroring the log-domain bound, so that a
    forward-constructed C_{t^n}(alpha_0) recovers n exactly.
    """
    cfg = beta.config
    if beta.is_zero_at_prec():
        raise IndeterminateValuation("beta is zero at precision")
    if prec is not None:
        beta = beta.truncate(prec)
    stop_above = cfg.q * cfg.ram // (cfg.q - 1)
    b = beta
    n = 0
    while b.support and b.valuation() <= stop_above:
        roots = division_points(b)
        b = min(roots, key=_root_sort_key)
        n += 1
    alpha = b
    target = beta.prec if beta.prec is not None else cfg.default_prec
    lhs = carlitz_action(t_power_coeffs(n), alpha)
    check_div = local_norm((lhs - beta).truncate(target))
    th_pow = cfg.theta() ** n
    exp_side = carlitz_exp(th_pow * carlitz_log(alpha, target), target)
    check_exp = local_norm((exp_side - beta).truncate(target))
    return ReductionResult(alpha, n, check_div, check_exp)


def torsion_points(cfg: FieldConfig, n: int, prec: Optional[int] = None) -> List[LocalElement]:
    """The t^n-torsion of the Carlitz module: all x with C_{t^n}(x) = 0."""
    pts = [cfg.zero(prec=prec if prec is not None else cfg.default_prec)]
    for _ in range(n):
        nxt: List[LocalElement] = []
        seen = set()
        for tau in pts:
            for r in division_points(tau):
                key = tuple(sorted(r.support.items()))
                if key not in seen:
                    seen.add(key)
                    nxt.append(r)
        pts = nxt
    return pts
