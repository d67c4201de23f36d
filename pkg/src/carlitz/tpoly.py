"""Polynomials in t with exact Laurent-polynomial coefficients.

Coefficients live in the subring F_{q^e}[pi, 1/pi] of the working field
(exact finite-support elements).  That ring is a UFD, so fraction-free
(Bareiss) elimination over these polynomials stays exact: every division it
performs is exact and is implemented here as `exact_div`.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .fields import EXACT, FieldConfig, LocalElement
from .series import TateSeries


def elem_exact_div(a: LocalElement, b: LocalElement) -> Optional[LocalElement]:
    """a / b inside F_{q^e}[pi, 1/pi]; None when b does not divide a."""
    if not a.support:
        return a.config.zero() if a.is_exact_zero() else None
    if not b.support or not (a.is_exact() and b.is_exact()):
        return None
    R = a.config.residue
    vb = b.valuation()
    lead_inv = R.inv(b.support[vb])
    rem = dict(a.support)
    out = {}
    width = max(a.support) - min(a.support)
    for _ in range(width + 1):
        if not rem:
            return LocalElement(a.config, out, EXACT)
        e = min(rem)
        c = R.mul(rem[e], lead_inv)
        out[e - vb] = c
        for eb, cb in b.support.items():
            k = e - vb + eb
            s = R.sub(rem.get(k, 0), R.mul(c, cb))
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return LocalElement(a.config, out, EXACT) if not rem else None


class TPoly:
    """Dense polynomial in t over exact elements."""

    __slots__ = ("config", "coeffs")

    def __init__(self, config: FieldConfig, coeffs: Sequence[LocalElement]):
        trimmed = list(coeffs)
        for c in trimmed:
            if not c.is_exact():
                raise ValueError("TPoly coefficients must be exact")
        while trimmed and trimmed[-1].is_exact_zero():
            trimmed.pop()
        self.config = config
        self.coeffs: Tuple[LocalElement, ...] = tuple(trimmed)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(config: FieldConfig) -> "TPoly":
        return TPoly(config, [])

    @staticmethod
    def one(config: FieldConfig) -> "TPoly":
        return TPoly(config, [config.one()])

    @staticmethod
    def constant(value: LocalElement) -> "TPoly":
        return TPoly(value.config, [value])

    @staticmethod
    def t_minus_theta(config: FieldConfig) -> "TPoly":
        return TPoly(config, [-config.theta(), config.one()])

    @staticmethod
    def from_fq_codes(config: FieldConfig, codes: Sequence[int]) -> "TPoly":
        return TPoly(config, [config.element({0: c} if c else {}) for c in codes])

    # -- inspection -----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, j: int) -> LocalElement:
        return self.coeffs[j] if j < len(self.coeffs) else self.config.zero()

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"<TPoly deg {self.degree}>"

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "TPoly") -> "TPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return TPoly(self.config, [self.coeff(j) + other.coeff(j) for j in range(n)])

    def __neg__(self) -> "TPoly":
        return TPoly(self.config, [-c for c in self.coeffs])

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-other)

    def __mul__(self, other: "TPoly") -> "TPoly":
        if self.is_zero() or other.is_zero():
            return TPoly.zero(self.config)
        zero = self.config.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_exact_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_exact_zero():
                    out[i + j] = out[i + j] + a * b
        return TPoly(self.config, out)

    def scale(self, a: LocalElement) -> "TPoly":
        return TPoly(self.config, [c * a for c in self.coeffs])

    def __pow__(self, k: int) -> "TPoly":
        result = TPoly.one(self.config)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def twist(self, n: int) -> "TPoly":
        """Coefficientwise Frobenius twist (t is fixed)."""
        return TPoly(self.config, [c.twist(n) for c in self.coeffs])

    def eval(self, a: LocalElement) -> LocalElement:
        acc = self.config.zero()
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def to_series(self, t_deg: int) -> TateSeries:
        return TateSeries.from_poly(self.config, list(self.coeffs), t_deg)

    # -- exact division ----------------------------------------------------------

    def divmod_unit_lead(self, other: "TPoly") -> Tuple["TPoly", "TPoly"]:
        """Division when the divisor's leading coefficient is a monomial."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead = other.coeffs[-1]
        if len(lead.support) != 1:
            raise ValueError("divisor leading coefficient must be a monomial")
        lead_inv = lead.inv()
        rem = list(self.coeffs)
        q_coeffs = [self.config.zero()] * max(0, len(rem) - len(other.coeffs) + 1)
        while len(rem) >= len(other.coeffs):
            c = rem[-1] * lead_inv
            k = len(rem) - len(other.coeffs)
            q_coeffs[k] = q_coeffs[k] + c
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
            while rem and rem[-1].is_exact_zero():
                rem.pop()
            if len(rem) == len(self.coeffs):
                raise ArithmeticError("division made no progress")
        return TPoly(self.config, q_coeffs), TPoly(self.config, rem)

    def exact_div(self, other: "TPoly") -> Optional["TPoly"]:
        """Exact quotient in the coefficient UFD, or None if not divisible."""
        if other.is_zero():
            return None
        if self.is_zero():
            return TPoly.zero(self.config)
        rem = list(self.coeffs)
        q_coeffs = [self.config.zero()] * max(0, len(rem) - len(other.coeffs) + 1)
        while rem:
            if len(rem) < len(other.coeffs):
                return None
            c = elem_exact_div(rem[-1], other.coeffs[-1])
            if c is None:
                return None
            k = len(rem) - len(other.coeffs)
            q_coeffs[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
            while rem and rem[-1].is_exact_zero():
                rem.pop()
            if rem and len(rem) - 1 >= k + len(other.coeffs) - 1:
                return None  # no progress: not divisible
        return TPoly(self.config, q_coeffs)


# ---------------------------------------------------------------------------
# gcds: the coefficient ring F_{q^e}[pi, 1/pi] has monomials as units, so
# contents are pi-free polynomials in pi normalized monic
# ---------------------------------------------------------------------------

def _fq_poly_gcd(R, a: List[int], b: List[int]) -> List[int]:
    a, b = list(a), list(b)
    while b:
        inv = R.inv(b[-1])
        while a and len(a) >= len(b):
            c = R.mul(a[-1], inv)
            k = len(a) - len(b)
            for j, x in enumerate(b):
                a[k + j] = R.sub(a[k + j], R.mul(c, x))
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return a


def elem_gcd(x: LocalElement, y: LocalElement) -> LocalElement:
    """gcd in F_{q^e}[pi, 1/pi], normalized with valuation 0 and monic lead."""
    cfg = x.config
    R = cfg.residue
    parts = []
    for z in (x, y):
        if z.support:
            v = z.valuation()
            width = max(z.support) - v
            parts.append([z.coeff(v + i) for i in range(width + 1)])
    if not parts:
        return cfg.zero()
    g = parts[0]
    for p in parts[1:]:
        g = _fq_poly_gcd(R, g, p)
    inv = R.inv(g[-1])
    return LocalElement(cfg, {i: R.mul(c, inv) for i, c in enumerate(g) if c}, EXACT)


def tpoly_content(p: TPoly) -> LocalElement:
    cont: Optional[LocalElement] = None
    for c in p.coeffs:
        if c.support:
            cont = c if cont is None else elem_gcd(cont, c)
            if len(cont.support) == 1:
                break
    if cont is None:
        return p.config.zero()
    return _unit_normalize(cont)


def _unit_normalize(x: LocalElement) -> LocalElement:
    """Scale by a unit so the valuation is 0 and the leading residue is 1."""
    R = x.config.residue
    v = x.valuation()
    inv = R.inv(x.support[v])
    return LocalElement(x.config, {e - v: R.mul(c, inv) for e, c in x.support.items()},
                        EXACT)


def tpoly_primitive(p: TPoly) -> TPoly:
    if p.is_zero():
        return p
    cont = tpoly_content(p)
    if len(cont.support) == 1:
        return p.scale(cont.inv())
    out = []
    for c in p.coeffs:
        q = elem_exact_div(c, cont)
        if q is None:
            raise AssertionError("content does not divide a coefficient")
        out.append(q)
    return TPoly(p.config, out)


def _pseudo_rem(a: TPoly, b: TPoly) -> TPoly:
    """A power of lead(b) times (a mod b), computed without division."""
    lead = b.coeffs[-1]
    rem = a
    while not rem.is_zero() and rem.degree >= b.degree:
        k = rem.degree - b.degree
        shift = TPoly(rem.config, [rem.config.zero()] * k + [rem.coeffs[-1]])
        rem = TPoly(rem.config, [c * lead for c in rem.coeffs]) - shift * b
    return rem


def tpoly_gcd(a: TPoly, b: TPoly) -> TPoly:
    """Primitive gcd over the fraction field (subresultant-free variant)."""
    if a.is_zero():
        return tpoly_primitive(b)
    if b.is_zero():
        return tpoly_primitive(a)
    a, b = tpoly_primitive(a), tpoly_primitive(b)
    if b.degree > a.degree:
        a, b = b, a
    while not b.is_zero():
        if b.degree == 0:
            return TPoly.one(a.config)
        rem = _pseudo_rem(a, b)
        a, b = b, (tpoly_primitive(rem) if not rem.is_zero() else rem)
    return a


def primitive_vector(slots: Sequence[TPoly]) -> Tuple[TPoly, ...]:
    """Divide a relation vector by its polynomial gcd and coefficient content.

    The result generates the same rank-1 module over the coefficient ring;
    only a unit (monomial) ambiguity remains, which downstream extraction
    normalizes away.
    """
    nz = [s for s in slots if not s.is_zero()]
    if not nz:
        return tuple(slots)
    g = nz[0]
    for p in nz[1:]:
        if g.degree == 0:
            break
        g = tpoly_gcd(g, p)
    out = list(slots)
    if g.degree > 0:
        reduced = []
        for s in out:
            q = s.exact_div(g)
            if q is None:
                return tuple(out)  # not actually a common factor; keep as is
            reduced.append(q)
        out = reduced
    cont: Optional[LocalElement] = None
    for s in out:
        for c in s.coeffs:
            if c.support:
                cont = c if cont is None else elem_gcd(cont, c)
    if cont is not None and len(cont.support) > 1:
        cont = _unit_normalize(cont)
        reduced = []
        ok = True
        for s in out:
            cs = []
            for c in s.coeffs:
                q = elem_exact_div(c, cont)
                if q is None:
                    ok = False
                    break
                cs.append(q)
            if not ok:
                break
            reduced.append(TPoly(s.config, cs))
        if ok:
            out = reduced
    return tuple(out)


def strip_t_minus_theta(poly: TPoly) -> Optional[Tuple[LocalElement, int]]:
    """Write poly = c (t-theta)^s with c a nonzero constant, if possible."""
    if poly.is_zero():
        return None
    tmt = TPoly.t_minus_theta(poly.config)
    s = 0
    cur = poly
    while cur.degree > 0:
        quo, rem = cur.divmod_unit_lead(tmt)
        if not rem.is_zero():
            return None
        cur = quo
        s += 1
    c = cur.coeff(0)
    if c.is_exact_zero():
        return None
    return c, s


def tpoly_matrix_rank(rows: List[List[TPoly]]) -> Tuple[int, List[int]]:
    """Rank over the fraction field, via fraction-free Bareiss elimination.

    Returns (rank, indices of a row subset realizing it).  All divisions are
    exact in the coefficient ring, so the computation is exact.
    """
    if not rows:
        return 0, []
    cfg = rows[0][0].config
    work = [list(r) for r in rows]
    n = len(work)
    m = len(work[0])
    order = list(range(n))
    prev = TPoly.one(cfg)
    rank = 0
    pivots: List[int] = []
    col = 0
    while rank < n and col < m:
        pivot_row = None
        for i in range(rank, n):
            if not work[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            col += 1
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        order[rank], order[pivot_row] = order[pivot_row], order[rank]
        piv = work[rank][col]
        for i in range(rank + 1, n):
            for j in range(col + 1, m):
                num = work[i][j] * piv - work[rank][j] * work[i][col]
                quo = num.exact_div(prev)
                if quo is None:
                    raise AssertionError("Bareiss division failed")
                work[i][j] = quo
            work[i][col] = TPoly.zero(cfg)
        prev = piv
        pivots.append(order[rank])
        rank += 1
        col += 1
    return rank, pivots
