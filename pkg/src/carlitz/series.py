"""Truncated Tate-algebra arithmetic: series in t over the working field.

A `TateSeries` stores coefficients c_0..c_{t_deg} (LocalElements sharing one
FieldConfig) and optionally a `TailBound` certifying, for every untracked
degree j > t_deg, a lower bound v_min(j) on the pi-valuation of the true
coefficient.  The Gauss norm is sup_j |c_j|; with a tail whose v_min is
nondecreasing and unbounded the series is entire and can be evaluated
outside the closed unit disk (typically at t = theta).
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import InsufficientTruncation, NotAUnit, OutsideUnitDisk
from .fields import EXACT, FieldConfig, LocalElement, _INF


# ---------------------------------------------------------------------------
# tail bounds
# ---------------------------------------------------------------------------

class TailBound:
    """Valuation lower bounds for untracked coefficients.

    Subclasses provide v_min(j), nondecreasing and unbounded, plus
    steady_index(x): an index J such that v_min(j+1) - v_min(j) >= x for all
    j >= J (None when no such J exists).  That is what makes evaluation at a
    point of norm q^(-slope/ram) certifiable by a finite scan.
    """

    kind = "USER"

    def v_min(self, j: int) -> int:
        raise NotImplementedError

    def steady_index(self, x: int) -> Optional[int]:
        raise NotImplementedError

    def scaled(self, factor: int) -> "TailBound":
        """Tail for the series with all coefficient valuations multiplied."""
        return ScaledTail(self, factor) if factor != 1 else self

    def inf_shifted(self, start: int, slope: int) -> Optional[int]:
        """inf over j >= start of v_min(j) + j*slope, or None if unbounded below."""
        J = self.steady_index(-slope)
        if J is None:
            return None
        best: Optional[int] = None
        for j in range(start, max(start, J) + 1):
            g = self.v_min(j) + j * slope
            if best is None or g < best:
                best = g
        return best

    def params(self) -> dict:
        return {}


class OmegaTail(TailBound):
    """v_min(j) = lead * q^j (geometric), the shape of the Omega product."""

    kind = "OMEGA"

    def __init__(self, lead: int, q: int):
        self.lead = lead
        self.q = q

    def v_min(self, j: int) -> int:
        return self.lead * self.q ** j

    def steady_index(self, x: int) -> Optional[int]:
        j = 0
        while self.lead * self.q ** j * (self.q - 1) < x:
            j += 1
        return j

    def params(self) -> dict:
        return {"lead": self.lead, "q": self.q}


class AffineTail(TailBound):
    """v_min(j) = base + step*j, the shape of the L_alpha expansions."""

    kind = "LALPHA"

    def __init__(self, base: int, step: int):
        if step <= 0:
            raise ValueError("tail step must be positive")
        self.base = base
        self.step = step

    def v_min(self, j: int) -> int:
        return self.base + self.step * j

    def steady_index(self, x: int) -> Optional[int]:
        return 0 if self.step >= x else None

    def params(self) -> dict:
        return {"base": self.base, "step": self.step}


class ScaledTail(TailBound):
    def __init__(self, inner: TailBound, factor: int):
        self.inner = inner
        self.factor = factor
        self.kind = inner.kind

    def v_min(self, j: int) -> int:
        return self.factor * self.inner.v_min(j)

    def steady_index(self, x: int) -> Optional[int]:
        return self.inner.steady_index(-(-x // self.factor))

    def params(self) -> dict:
        return {"factor": self.factor, "inner": {"kind": self.inner.kind,
                                                 **self.inner.params()}}


class MinTail(TailBound):
    """Pointwise minimum, used when adding two tailed series."""

    kind = "PRODUCT"

    def __init__(self, a: TailBound, b: TailBound):
        self.a = a
        self.b = b

    def v_min(self, j: int) -> int:
        return min(self.a.v_min(j), self.b.v_min(j))

    def steady_index(self, x: int) -> Optional[int]:
        ja = self.a.steady_index(x)
        jb = self.b.steady_index(x)
        if ja is None or jb is None:
            return None
        return max(ja, jb)


class ProductTail(TailBound):
    """Min-plus convolution bound for a product of two tailed series.

    Stored coefficient valuation floors of each factor are kept so the
    mixed (stored x tail) splits are covered; only valid for degrees
    j > t_deg_a + t_deg_b, which is all a product series ever needs.
    """

    kind = "PRODUCT"

    def __init__(self, floors_a: List[Optional[int]], tail_a: TailBound,
                 floors_b: List[Optional[int]], tail_b: TailBound):
        self.floors_a = floors_a
        self.tail_a = tail_a
        self.floors_b = floors_b
        self.tail_b = tail_b

    def _mixed(self, floors: List[Optional[int]], tail: TailBound, j: int) -> Optional[int]:
        best: Optional[int] = None
        for a, fa in enumerate(floors):
            if fa is None:
                continue
            g = fa + tail.v_min(j - a)
            if best is None or g < best:
                best = g
        return best

    def v_min(self, j: int) -> int:
        nda, ndb = len(self.floors_a), len(self.floors_b)
        cands = []
        m1 = self._mixed(self.floors_a, self.tail_b, j)
        if m1 is not None:
            cands.append(m1)
        m2 = self._mixed(self.floors_b, self.tail_a, j)
        if m2 is not None:
            cands.append(m2)
        # both indices beyond their truncations
        lo = nda
        hi = j - ndb
        if lo <= hi:
            cands.append(min(self.tail_a.v_min(a) + self.tail_b.v_min(j - a)
                             for a in range(lo, hi + 1)))
        if not cands:  # both factors zero: any bound is valid
            return self.tail_a.v_min(j)
        return min(cands)

    def steady_index(self, x: int) -> Optional[int]:
        ja = self.tail_a.steady_index(x)
        jb = self.tail_b.steady_index(x)
        if ja is None or jb is None:
            return None
        return max(ja + len(self.floors_b), jb + len(self.floors_a))


class UserTail(TailBound):
    """Explicit table of bounds with an affine continuation."""

    kind = "USER"

    def __init__(self, start: int, values: Sequence[int], step: int):
        if step <= 0:
            raise ValueError("tail step must be positive")
        if any(values[i + 1] < values[i] for i in range(len(values) - 1)):
            raise ValueError("tail values must be nondecreasing")
        self.start = start
        self.values = list(values)
        self.step = step

    def v_min(self, j: int) -> int:
        if j < self.start:
            return self.values[0]
        k = j - self.start
        if k < len(self.values):
            return self.values[k]
        return self.values[-1] + self.step * (k - len(self.values) + 1)

    def steady_index(self, x: int) -> Optional[int]:
        if self.step < x:
            return None
        return self.start + len(self.values)

    def params(self) -> dict:
        return {"start": self.start, "values": self.values, "step": self.step}


# ---------------------------------------------------------------------------
# the series type
# ---------------------------------------------------------------------------

class TateSeries:
    """Series in t truncated at t_deg, with LocalElement coefficients."""

    __slots__ = ("config", "coeffs", "tail")

    def __init__(self, config: FieldConfig, coeffs: Sequence[LocalElement],
                 tail: Optional[TailBound] = None):
        self.config = config
        self.coeffs: Tuple[LocalElement, ...] = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("series needs at least the constant coefficient")
        self.tail = tail

    @property
    def t_deg(self) -> int:
        return len(self.coeffs) - 1

    # -- constructors --------------------------------------------------------

    @staticmethod
    def constant(value: LocalElement, t_deg: int,
                 tail: Optional[TailBound] = None) -> "TateSeries":
        cfg = value.config
        zero = cfg.zero()
        return TateSeries(cfg, [value] + [zero] * t_deg, tail)

    @staticmethod
    def one(config: FieldConfig, t_deg: int) -> "TateSeries":
        return TateSeries.constant(config.one(), t_deg)

    @staticmethod
    def from_poly(config: FieldConfig, coeffs: Sequence[LocalElement],
                  t_deg: int) -> "TateSeries":
        zero = config.zero()
        padded = list(coeffs[:t_deg + 1]) + [zero] * max(0, t_deg + 1 - len(coeffs))
        return TateSeries(config, padded)

    # -- inspection -----------------------------------------------------------

    def coeff(self, j: int) -> LocalElement:
        return self.coeffs[j] if j <= self.t_deg else self.config.zero()

    def is_zero_at_prec(self) -> bool:
        return all(c.is_zero_at_prec() for c in self.coeffs)

    def min_val_floor(self) -> Union[int, float]:
        """min_j val_floor(c_j); the Gauss norm is <= q^(-this/ram)."""
        return min(c.val_floor() for c in self.coeffs)

    def min_coeff_prec(self) -> Optional[int]:
        precs = [c.prec for c in self.coeffs if c.prec is not EXACT]
        return min(precs) if precs else EXACT

    def gauss_norm_log_q(self) -> Tuple[Union[Fraction, float], bool]:
        """(log_q of the Gauss norm or an upper bound for it, is_exact).

        Exact when the max comes from a visible coefficient and no
        zero-at-precision coefficient could exceed it.
        """
        visible = [c.norm_log_q() for c in self.coeffs if c.support]
        bounds = [c.norm_bound_log_q() for c in self.coeffs if not c.support]
        vmax = max(visible) if visible else None
        bmax = max(bounds) if bounds else None
        if vmax is None:
            return (bmax if bmax is not None else -_INF), False
        if bmax is not None and bmax > vmax:
            return bmax, False
        return vmax, True

    def __eq__(self, other) -> bool:
        if not isinstance(other, TateSeries):
            return NotImplemented
        return self.config == other.config and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        tail = f" tail={self.tail.kind}" if self.tail else ""
        return f"<TateSeries deg {self.t_deg}{tail}>"

    # -- ring operations --------------------------------------------------------

    def _zip_deg(self, other: "TateSeries") -> int:
        return min(self.t_deg, other.t_deg)

    def __add__(self, other: "TateSeries") -> "TateSeries":
        d = self._zip_deg(other)
        coeffs = [self.coeffs[j] + other.coeffs[j] for j in range(d + 1)]
        tail = MinTail(self.tail, other.tail) if self.tail and other.tail else None
        return TateSeries(self.config, coeffs, tail)

    def __neg__(self) -> "TateSeries":
        return TateSeries(self.config, [-c for c in self.coeffs], self.tail)

    def __sub__(self, other: "TateSeries") -> "TateSeries":
        return self + (-other)

    def scale_elem(self, a: LocalElement) -> "TateSeries":
        tail = None
        if self.tail is not None and a.support:
            v = a.valuation()
            tail = ShiftedTail(self.tail, v) if v else self.tail
        return TateSeries(self.config, [c * a for c in self.coeffs], tail)

    def __mul__(self, other: "TateSeries") -> "TateSeries":
        d = self._zip_deg(other)
        zero = self.config.zero()
        out: List[LocalElement] = []
        for j in range(d + 1):
            acc = zero
            for a in range(j + 1):
                ca = self.coeffs[a] if a <= self.t_deg else None
                cb = other.coeffs[j - a] if j - a <= other.t_deg else None
                if ca is None or cb is None:
                    continue
                if ca.is_exact_zero() or cb.is_exact_zero():
                    continue
                acc = acc + ca * cb
            out.append(acc)
        tail = None
        if self.tail and other.tail:
            fa = [None if c.val_floor() == _INF else int(c.val_floor())
                  for c in self.coeffs]
            fb = [None if c.val_floor() == _INF else int(c.val_floor())
                  for c in other.coeffs]
            tail = ProductTail(fa, self.tail, fb, other.tail)
        return TateSeries(self.config, out, tail)

    def t_shift(self, k: int) -> "TateSeries":
        """Multiply by t^k, keeping the truncation order (tail dropped)."""
        zero = self.config.zero()
        coeffs = [zero] * min(k, self.t_deg + 1) + list(self.coeffs)
        return TateSeries(self.config, coeffs[:self.t_deg + 1])

    def truncate_t(self, t_deg: int) -> "TateSeries":
        if t_deg >= self.t_deg:
            zero = self.config.zero()
            return TateSeries(self.config,
                              list(self.coeffs) + [zero] * (t_deg - self.t_deg),
                              self.tail)
        return TateSeries(self.config, self.coeffs[:t_deg + 1], self.tail)

    def truncate_prec(self, prec: Optional[int]) -> "TateSeries":
        return TateSeries(self.config, [c.truncate(prec) for c in self.coeffs],
                          self.tail)

    # -- twisting ------------------------------------------------------------------

    def twist(self, n: int) -> "TateSeries":
        coeffs = [c.twist(n) for c in self.coeffs]
        tail = None
        if self.tail is not None and n >= 0:
            tail = self.tail.scaled(self.config.q ** n)
        return TateSeries(self.config, coeffs, tail)

    # -- inversion ---------------------------------------------------------------

    def invert_unit(self) -> "TateSeries":
        """Inverse of a series of unit shape lambda*(1 + sum b_i t^i), sup|b_i| < 1.

        Raises NotAUnit when constant-term dominance cannot be certified at
        the available precision.
        """
        c0 = self.coeffs[0]
        if not c0.support:
            raise NotAUnit("constant term is zero at precision")
        v0 = c0.valuation()
        for j in range(1, self.t_deg + 1):
            if self.coeffs[j].val_floor() <= v0:
                raise NotAUnit(
                    f"coefficient of t^{j} is not dominated by the constant term")
        c0_inv = c0.inv()
        u_coeffs = [self.config.zero()] + [c * c0_inv for c in self.coeffs[1:]]
        u = TateSeries(self.config, u_coeffs)
        total = TateSeries.one(self.config, self.t_deg)
        term = total
        for _ in range(self.t_deg):
            term = -(u * term)
            if term.is_zero_at_prec():
                break
            total = total + term
        return total.scale_elem(c0_inv)

    # -- evaluation ---------------------------------------------------------------

    def eval_unit_disk(self, a: LocalElement) -> LocalElement:
        """Horner evaluation at |a| <= 1."""
        if a.val_floor() < 0:
            raise OutsideUnitDisk("evaluation point has norm > 1")
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * a + c
        return acc

    def eval_entire(self, a: LocalElement) -> LocalElement:
        """Certified evaluation anywhere, using the tail bound.

        Result precision is min(propagated, inf_{j>t_deg} v_min(j)+j*v(a));
        the tail certificate must produce a usable bound or
        InsufficientTruncation is raised.
        """
        if self.tail is None:
            raise InsufficientTruncation("series carries no tail bound")
        vf = a.val_floor()
        if vf == _INF:
            return self.coeffs[0]
        slope = int(vf)
        floor = self.tail.inf_shifted(self.t_deg + 1, slope)
        if floor is None:
            raise InsufficientTruncation(
                "tail bound cannot certify evaluation at this point")
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * a + c
        result = acc.truncate(floor)
        v = result.valuation()
        if v is not None and result.prec is not EXACT and result.prec <= v:
            raise InsufficientTruncation(
                "certificate has no width at this truncation order")
        return result


class ShiftedTail(TailBound):
    """Tail of a series multiplied by a scalar of valuation ``shift``."""

    def __init__(self, inner: TailBound, shift: int):
        self.inner = inner
        self.shift = shift
        self.kind = inner.kind

    def v_min(self, j: int) -> int:
        return self.inner.v_min(j) + self.shift

    def steady_index(self, x: int) -> Optional[int]:
        return self.inner.steady_index(x)

    def params(self) -> dict:
        return {"shift": self.shift, "inner": {"kind": self.inner.kind,
                                               **self.inner.params()}}


# ---------------------------------------------------------------------------
# free-function operation surface
# ---------------------------------------------------------------------------

def tate_arith(op: str, f: TateSeries, g: TateSeries) -> TateSeries:
    if f.config != g.config:
        raise ValueError("incompatible field configurations")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def tate_twist(f: TateSeries, n: int) -> TateSeries:
    return f.twist(n)


def tate_invert_unit(f: TateSeries) -> TateSeries:
    return f.invert_unit()


def tate_eval(f: TateSeries, a: LocalElement) -> LocalElement:
    return f.eval_unit_disk(a)


def tate_eval_entire(f: TateSeries, a: LocalElement) -> LocalElement:
    return f.eval_entire(a)
