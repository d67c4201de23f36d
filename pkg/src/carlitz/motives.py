"""Matrix presentations (Phi, Psi) of pre-t-motives and their checks.

Phi is kept as a pair (num, den): a square matrix over the exact
t-polynomial ring and a scalar polynomial denominator, so duals and
negative Carlitz powers stay representable without general rational
functions.  Psi is a matrix of truncated Tate series.  The defining
property is the twisted trivialization identity

    den^(1) * Psi = num^(1) * Psi^(1)

(the once-twisted form of Psi^(-1) = Phi Psi, so only forward Frobenius is
ever applied to computed series).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .analytic import build_L_alpha, build_omega
from .errors import NonInvertible, NotAQthPower
from .fields import FieldConfig, LocalElement, _INF
from .series import TateSeries
from .tpoly import TPoly, strip_t_minus_theta


class TPolyMatrix:
    """Rectangular matrix of exact t-polynomials."""

    __slots__ = ("config", "rows", "cols", "entries")

    def __init__(self, config: FieldConfig, entries: Sequence[Sequence[TPoly]]):
        self.config = config
        self.entries: Tuple[Tuple[TPoly, ...], ...] = tuple(tuple(r) for r in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")

    @staticmethod
    def identity(config: FieldConfig, n: int) -> "TPolyMatrix":
        one, zero = TPoly.one(config), TPoly.zero(config)
        return TPolyMatrix(config, [[one if i == j else zero for j in range(n)]
                                    for i in range(n)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TPolyMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __getitem__(self, ij: Tuple[int, int]) -> TPoly:
        return self.entries[ij[0]][ij[1]]

    def __mul__(self, other: "TPolyMatrix") -> "TPolyMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = TPoly.zero(self.config)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return TPolyMatrix(self.config, out)

    def scale(self, p: TPoly) -> "TPolyMatrix":
        return TPolyMatrix(self.config, [[e * p for e in r] for r in self.entries])

    def transpose(self) -> "TPolyMatrix":
        return TPolyMatrix(self.config, list(zip(*self.entries)))

    def twist(self, n: int) -> "TPolyMatrix":
        return TPolyMatrix(self.config, [[e.twist(n) for e in r] for r in self.entries])

    def kron(self, other: "TPolyMatrix") -> "TPolyMatrix":
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                row = []
                for j in range(self.cols):
                    for l in range(other.cols):
                        row.append(self.entries[i][j] * other.entries[k][l])
                out.append(row)
        return TPolyMatrix(self.config, out)

    def minor(self, i: int, j: int) -> "TPolyMatrix":
        ents = [[e for l, e in enumerate(r) if l != j]
                for k, r in enumerate(self.entries) if k != i]
        return TPolyMatrix(self.config, ents)

    def det(self) -> TPoly:
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of non-square matrix")
        if n == 0:
            return TPoly.one(self.config)
        if n == 1:
            return self.entries[0][0]
        acc = TPoly.zero(self.config)
        for j in range(n):
            e = self.entries[0][j]
            if e.is_zero():
                continue
            term = e * self.minor(0, j).det()
            acc = acc + term if j % 2 == 0 else acc - term
        return acc

    def adjugate(self) -> "TPolyMatrix":
        n = self.rows
        if n == 1:
            return TPolyMatrix(self.config, [[TPoly.one(self.config)]])
        out = [[TPoly.zero(self.config)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m = self.minor(i, j).det()
                out[j][i] = m if (i + j) % 2 == 0 else -m
        return TPolyMatrix(self.config, out)


# ---------------------------------------------------------------------------
# series matrices
# ---------------------------------------------------------------------------

def _series_matmul(a: List[List[TateSeries]], b: List[List[TateSeries]]) -> List[List[TateSeries]]:
    out = []
    for i in range(len(a)):
        row = []
        for j in range(len(b[0])):
            acc: Optional[TateSeries] = None
            for k in range(len(b)):
                term = a[i][k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def _series_kron(a: List[List[TateSeries]], b: List[List[TateSeries]]) -> List[List[TateSeries]]:
    out = []
    for i in range(len(a)):
        for k in range(len(b)):
            row = []
            for j in range(len(a[0])):
                for l in range(len(b[0])):
                    row.append(a[i][j] * b[k][l])
            out.append(row)
    return out


def _series_det(m: List[List[TateSeries]]) -> TateSeries:
    n = len(m)
    if n == 1:
        return m[0][0]
    acc: Optional[TateSeries] = None
    for j in range(n):
        sub = [[m[i][l] for l in range(n) if l != j] for i in range(1, n)]
        term = m[0][j] * _series_det(sub)
        if acc is None:
            acc = term if j % 2 == 0 else -term
        else:
            acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _series_adjugate(m: List[List[TateSeries]], cfg: FieldConfig,
                     t_deg: int) -> List[List[TateSeries]]:
    n = len(m)
    if n == 1:
        return [[TateSeries.one(cfg, t_deg)]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[m[k][l] for l in range(n) if l != j]
                   for k in range(n) if k != i]
            d = _series_det(sub)
            out[j][i] = d if (i + j) % 2 == 0 else -d
    return out


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

@dataclass
class MotivePresentation:
    name: str
    r: int
    phi_num: TPolyMatrix
    phi_den: TPoly
    psi: List[List[TateSeries]]
    provenance: str
    config: FieldConfig
    t_deg: int
    prec: int


@dataclass(frozen=True)
class TrivializationReport:
    """Gauss-norm residual of den^(1) Psi - num^(1) Psi^(1), with threshold.

    Both are log_q exponents; passed means every residual entry is zero at
    its propagated precision, i.e. residual <= threshold with threshold
    derived from coefficient precision certificates.
    """

    residual_log_q: Union[Fraction, float]
    threshold_log_q: Union[Fraction, float]
    passed: bool


def check_trivialization(pres: MotivePresentation) -> TrivializationReport:
    t_deg = min(s.t_deg for row in pres.psi for s in row)
    num_t = pres.phi_num.twist(1)
    den_t = pres.phi_den.twist(1).to_series(t_deg)
    psi_t = [[s.twist(1) for s in row] for row in pres.psi]
    num_series = [[num_t[i, j].to_series(t_deg) for j in range(pres.r)]
                  for i in range(pres.r)]
    rhs = _series_matmul(num_series, psi_t)
    residual_bound: Union[Fraction, float] = -_INF
    threshold: Union[Fraction, float] = -_INF
    passed = True
    for i in range(pres.r):
        for j in range(pres.r):
            res = den_t * pres.psi[i][j] - rhs[i][j]
            bound, _ = res.gauss_norm_log_q()
            residual_bound = max(residual_bound, bound)
            mp = res.min_coeff_prec()
            entry_threshold = (-_INF if mp is None
                               else Fraction(-mp, pres.config.ram))
            threshold = max(threshold, entry_threshold)
            if not res.is_zero_at_prec():
                passed = False
    return TrivializationReport(residual_bound, threshold, passed)


def make_one(config: FieldConfig, t_deg: int, prec: Optional[int] = None) -> MotivePresentation:
    """The identity object: phi = [1], psi = [1]."""
    prec = config.default_prec if prec is None else prec
    return MotivePresentation(
        name="one", r=1,
        phi_num=TPolyMatrix.identity(config, 1),
        phi_den=TPoly.one(config),
        psi=[[TateSeries.one(config, t_deg)]],
        provenance="ONE", config=config, t_deg=t_deg, prec=prec)


def make_carlitz_power(config: FieldConfig, n: int, t_deg: int,
                       prec: Optional[int] = None) -> MotivePresentation:
    """C(n): phi = (t-theta)^n, psi = Omega^n (inverted Omega for n < 0)."""
    if n == 0:
        return make_one(config, t_deg, prec)
    prec = config.default_prec if prec is None else prec
    omega = build_omega(config, t_deg, prec)
    tmt = TPoly.t_minus_theta(config)
    if n > 0:
        num = TPolyMatrix(config, [[tmt ** n]])
        den = TPoly.one(config)
        psi = TateSeries.one(config, t_deg)
        for _ in range(n):
            psi = psi * omega
    else:
        num = TPolyMatrix.identity(config, 1)
        den = tmt ** (-n)
        om_inv = omega.invert_unit()
        psi = TateSeries.one(config, t_deg)
        for _ in range(-n):
            psi = psi * om_inv
    return MotivePresentation(
        name=f"C({n})", r=1, phi_num=num, phi_den=den, psi=[[psi]],
        provenance="CARLITZ_N", config=config, t_deg=t_deg, prec=prec)


def make_X(config: FieldConfig, alphas: Sequence[LocalElement], t_deg: int,
           prec: Optional[int] = None,
           sigma_alphas: Optional[Sequence[LocalElement]] = None) -> MotivePresentation:
    """The logarithm motive X(alpha_1..alpha_r), an extension of 1^r by C.

    phi is lower triangular with first column
    (t-theta, sigma(alpha_1)(t-theta), ..., sigma(alpha_r)(t-theta)); psi has
    first column (Omega, Omega L_alpha_1, ..., Omega L_alpha_r).  The
    constructor needs sigma(alpha_i) = alpha_i^(1/q); pass sigma_alphas
    explicitly when the q-th roots are not already in the working field.
    """
    prec = config.default_prec if prec is None else prec
    r = len(alphas)
    for a in alphas:
        if not a.is_exact():
            raise ValueError("alphas must be exact")
    if sigma_alphas is None:
        try:
            sigma_alphas = [a.twist(-1) for a in alphas]
        except NotAQthPower as exc:
            raise NotAQthPower(
                f"{exc}; supply sigma_alphas (the q-th roots of the alphas) "
                "explicitly, e.g. from a config with enlarged ramification") from exc
    else:
        sigma_alphas = list(sigma_alphas)
        for a, sa in zip(alphas, sigma_alphas):
            if not (sa.twist(1) - a).is_exact_zero():
                raise ValueError("sigma_alphas[i]^q must equal alphas[i] exactly")
    tmt = TPoly.t_minus_theta(config)
    zero, one = TPoly.zero(config), TPoly.one(config)
    ents = [[tmt] + [zero] * r]
    for i in range(r):
        row = [tmt.scale(sigma_alphas[i])]
        row += [one if j == i else zero for j in range(r)]
        ents.append(row)
    omega = build_omega(config, t_deg, prec)
    zero_s = TateSeries.constant(config.zero(), t_deg)
    one_s = TateSeries.one(config, t_deg)
    psi = [[omega] + [zero_s] * r]
    for i in range(r):
        ol = omega * build_L_alpha(alphas[i], t_deg, prec)
        psi.append([ol] + [one_s if j == i else zero_s for j in range(r)])
    return MotivePresentation(
        name=f"X({r} logs)", r=r + 1, phi_num=TPolyMatrix(config, ents),
        phi_den=one, psi=psi, provenance="X_ALPHAS", config=config,
        t_deg=t_deg, prec=prec)


def tensor_presentation(p: MotivePresentation, q: MotivePresentation) -> MotivePresentation:
    """Kronecker product on both phi and psi."""
    if p.config != q.config:
        raise ValueError("incompatible configurations")
    return MotivePresentation(
        name=f"{p.name} (x) {q.name}", r=p.r * q.r,
        phi_num=p.phi_num.kron(q.phi_num),
        phi_den=p.phi_den * q.phi_den,
        psi=_series_kron(p.psi, q.psi),
        provenance="TENSOR", config=p.config,
        t_deg=min(p.t_deg, q.t_deg), prec=min(p.prec, q.prec))


def dual_presentation(p: MotivePresentation) -> MotivePresentation:
    """phi -> (phi^{-1})^tr, psi -> (psi^{-1})^tr.

    The inverse of phi = num/den is den*adj(num)/det(num); the determinant
    must be of the Anderson shape c (t-theta)^s for the result to stay in
    the supported ring.
    """
    cfg = p.config
    det_num = p.phi_num.det()
    if strip_t_minus_theta(det_num) is None:
        raise NonInvertible("det(phi) is not c*(t-theta)^s")
    new_num = p.phi_num.adjugate().scale(p.phi_den).transpose()
    new_den = det_num
    det_psi = _series_det(p.psi)
    try:
        det_psi_inv = det_psi.invert_unit()
    except Exception as exc:
        raise NonInvertible(f"psi determinant is not a unit: {exc}") from exc
    adj = _series_adjugate(p.psi, cfg, p.t_deg)
    new_psi = [[adj[j][i] * det_psi_inv for j in range(p.r)] for i in range(p.r)]
    return MotivePresentation(
        name=f"dual({p.name})", r=p.r, phi_num=new_num, phi_den=new_den,
        psi=new_psi, provenance="DUAL", config=cfg, t_deg=p.t_deg, prec=p.prec)


@dataclass(frozen=True)
class MorphismReport:
    passed: bool
    max_degree_left: int
    max_degree_right: int


def check_morphism(p: MotivePresentation, q: MotivePresentation,
                   b: TPolyMatrix) -> MorphismReport:
    """Exact check of B Phi_q^(1) = Phi_p^(1) B^(1) (twisted morphism law).

    Denominators are cleared, so this is an identity of polynomial
    matrices and passes only when exactly zero.
    """
    if b.rows != p.r or b.cols != q.r:
        raise ValueError("B must be r_p x r_q")
    lhs = (b * q.phi_num.twist(1)).scale(p.phi_den.twist(1))
    rhs = (p.phi_num.twist(1) * b.twist(1)).scale(q.phi_den.twist(1))
    passed = all(
        (lhs[i, j] - rhs[i, j]).is_zero()
        for i in range(b.rows) for j in range(q.r))
    deg_l = max((lhs[i, j].degree for i in range(b.rows) for j in range(q.r)),
                default=-1)
    deg_r = max((rhs[i, j].degree for i in range(b.rows) for j in range(q.r)),
                default=-1)
    return MorphismReport(passed, deg_l, deg_r)


@dataclass(frozen=True)
class AndersonDet:
    c: LocalElement
    s: int


def check_anderson_det(phi_num: TPolyMatrix,
                       phi_den: Optional[TPoly] = None) -> Optional[AndersonDet]:
    """Factor det(phi) as c (t-theta)^s exactly; None when impossible."""
    from .tpoly import elem_exact_div
    det = phi_num.det()
    stripped = strip_t_minus_theta(det)
    if stripped is None:
        return None
    c, s = stripped
    if phi_den is not None and not (phi_den.is_constant() and
                                    phi_den.coeff(0) == phi_num.config.one()):
        dd = strip_t_minus_theta(phi_den)
        if dd is None:
            return None
        c_den, s_den = dd
        r = phi_num.rows
        ratio = elem_exact_div(c, c_den ** r)
        if ratio is None:
            return None
        return AndersonDet(ratio, s - r * s_den)
    return AndersonDet(c, s)
