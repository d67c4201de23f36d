"""Finite-precision search for linear relations among 1, Omega, Omega*L_alpha.

A relation is a vector of t-polynomial coefficients (one per slot: the
constant slot, the Omega slot X_0, and one slot X_i per alpha) whose
combination vanishes modulo (t^(t_deg+1), pi^prec).  Candidate coefficient
monomials are theta^a zeta^s t^j with a in [v_lo, v_hi], s in [0, q-2] and
j <= d_t: powers of the two canonical field constants, which is the
bounded-height approximation of algebraic coefficients this search uses
(the torsion example genuinely needs zeta in its coefficients).

The kernel is computed by exact Gaussian elimination over the residue
field.  Kernel vectors come in monomial-scaled copies of the same
underlying relation, so the number of *independent* relations (which sets
the reported group dimension via dim Gamma = r + 1 - #relations) is the
rank of the kernel over the rational-function field, computed exactly by
fraction-free elimination.  Certification re-verifies a relation at
margin-scaled precision; a certified relation is still "verified at
precision", never a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .analytic import build_L_alpha, build_omega, carlitz_log, pi_tilde
from .errors import GammaExtractionFailed, NotCertified, UnderdeterminedSystem
from .fields import EXACT, FieldConfig, LocalElement, NormInfo, _INF, local_norm
from .series import TateSeries
from .tpoly import TPoly, primitive_vector, tpoly_matrix_rank


@dataclass(frozen=True)
class SearchBounds:
    """Search-space knobs.  No a-priori bound on relation coefficients is
    known, so failure to find one is only evidence within these bounds."""

    d_t: int
    v_lo: int
    v_hi: int
    prec: int
    t_deg: int
    margin: int = 2

    def __post_init__(self):
        if self.v_lo > self.v_hi:
            raise ValueError("v_lo must be <= v_hi")
        if self.d_t < 0 or self.prec < 1 or self.t_deg < 1:
            raise ValueError("bounds out of range")
        if self.margin < 1:
            raise ValueError("margin must be >= 1")


@dataclass(frozen=True)
class RelationVector:
    """Coefficient polynomials, slot order (1, X_0, X_1..X_r)."""

    slots: Tuple[TPoly, ...]

    @property
    def r(self) -> int:
        return len(self.slots) - 2

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.slots)


@dataclass(frozen=True)
class Certification:
    certified: bool
    residual_log_q: Union[Fraction, float]
    threshold_log_q: Union[Fraction, float]
    prec: int
    t_deg: int


@dataclass(frozen=True)
class EvaluatedRelation:
    """Values at t = theta: the emitted identity is

        c_const + sum_i c_log[i] * log_C(alpha_i) + c_pitilde * pitilde = 0.

    c_const is the Omega-slot coefficient at theta; genuine relations have
    it exactly zero, a nonzero value is flagged as a precision artifact
    with its norm.  identity_residual is the numeric check of the emitted
    identity at the certification precision.
    """

    c_const: LocalElement
    c_pitilde: LocalElement
    c_log: Tuple[LocalElement, ...]
    artifact_norm: Optional[NormInfo]
    identity_residual: NormInfo


@dataclass(frozen=True)
class FqRat:
    """Rational function over F_q in t: coefficient code lists, ascending."""

    num: Tuple[int, ...]
    den: Tuple[int, ...] = (1,)


def _fq_poly_divmod(R, num: List[int], den: List[int]) -> Tuple[List[int], List[int]]:
    num = list(num)
    inv = R.inv(den[-1])
    quo = [0] * max(0, len(num) - len(den) + 1)
    while num and len(num) >= len(den):
        c = R.mul(num[-1], inv)
        k = len(num) - len(den)
        quo[k] = c
        for j, b in enumerate(den):
            num[k + j] = R.sub(num[k + j], R.mul(c, b))
        while num and num[-1] == 0:
            num.pop()
    return quo, num


def _make_fqrat(R, num: Sequence[int], den: Sequence[int] = (1,)) -> FqRat:
    """Reduced fraction with monic denominator."""
    num, den = list(num), list(den)
    while num and num[-1] == 0:
        num.pop()
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return FqRat((), (1,))
    a, b = num, den
    while b:
        _, r = _fq_poly_divmod(R, a, b)
        a, b = b, r
    quo_n, _ = _fq_poly_divmod(R, num, a)
    quo_d, _ = _fq_poly_divmod(R, den, a)
    lead_inv = R.inv(quo_d[-1])
    return FqRat(tuple(R.mul(c, lead_inv) for c in quo_n),
                 tuple(R.mul(c, lead_inv) for c in quo_d))


@dataclass(frozen=True)
class GammaEntry:
    """Defining data extracted from one relation.

    G = g_const + g_x0 X_0 + sum g_xi X_i vanishes on the group and
    satisfies G(1, 0, ..., 0) = 0 (g_x0 = -g_const); F = sum F_i X_i is the
    unipotent-part form (G's X-part divided by its first nonzero
    coefficient); b0, b are one lift realizing G; f is the torsor
    correction (X_0-coefficient offset of the scaled relation H), reported
    together with the scaling used.
    """

    g_const: FqRat
    g_x0: FqRat
    g_xi: Tuple[FqRat, ...]
    f_form: Tuple[FqRat, ...]
    b0: FqRat
    b: Tuple[FqRat, ...]
    f_poly: Tuple[LocalElement, ...]
    scale: LocalElement


@dataclass(frozen=True)
class RelationReport:
    alphas: Tuple[LocalElement, ...]
    bounds: SearchBounds
    relations: Tuple[RelationVector, ...]
    kernel_dim: int
    certifications: Tuple[Certification, ...]
    evaluated: Tuple[EvaluatedRelation, ...]
    gamma_dim: int
    gamma: Tuple[GammaEntry, ...]
    certified_prec: int
    certified_t_deg: int


# ---------------------------------------------------------------------------
# column space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Column:
    slot: int
    j: int
    a: int  # theta exponent
    s: int  # zeta exponent
    pi_exp: int


def _columns(cfg: FieldConfig, nslots: int, bounds: SearchBounds) -> List[_Column]:
    unit = cfg.ram // (cfg.q - 1)
    cols = []
    for slot in range(nslots):
        for j in range(bounds.d_t + 1):
            mons = []
            for a in range(bounds.v_lo, bounds.v_hi + 1):
                for s in range(cfg.q - 1):
                    mons.append((-a * cfg.ram - s * unit, a, s))
            mons.sort()
            for exp, a, s in mons:
                cols.append(_Column(slot, j, a, s, exp))
    return cols


def _monomial(cfg: FieldConfig, col: _Column) -> LocalElement:
    return cfg.theta() ** col.a * cfg.zeta() ** col.s


def _base_series(cfg: FieldConfig, alphas: Sequence[LocalElement],
                 t_deg: int, prec: int) -> List[TateSeries]:
    omega = build_omega(cfg, t_deg, prec)
    out = [TateSeries.one(cfg, t_deg), omega]
    for a in alphas:
        out.append(omega * build_L_alpha(a, t_deg, prec))
    return out


def _combination(rel: RelationVector, base: List[TateSeries]) -> TateSeries:
    t_deg = base[0].t_deg
    acc: Optional[TateSeries] = None
    for poly, g in zip(rel.slots, base):
        if poly.is_zero():
            continue
        term = poly.to_series(t_deg) * g
        acc = term if acc is None else acc + term
    if acc is None:
        return TateSeries.constant(base[0].config.zero(), t_deg)
    return acc


# ---------------------------------------------------------------------------
# kernel over the residue field
# ---------------------------------------------------------------------------

def _kernel_basis(cfg: FieldConfig, equations: List[Dict[int, int]],
                  ncols: int) -> List[List[int]]:
    R = cfg.residue
    basis: List[List[int]] = [[1 if i == j else 0 for j in range(ncols)]
                              for i in range(ncols)]
    for eq in equations:
        if not basis:
            break
        items = list(eq.items())
        dots = []
        for vec in basis:
            d = 0
            for c, a in items:
                v = vec[c]
                if v:
                    d = R.add(d, R.mul(v, a))
            dots.append(d)
        pivot = next((k for k, d in enumerate(dots) if d), None)
        if pivot is None:
            continue
        pvec = basis.pop(pivot)
        pdot = dots.pop(pivot)
        pd_inv = R.inv(pdot)
        for k, d in enumerate(dots):
            if d:
                factor = R.mul(d, pd_inv)
                vec = basis[k]
                basis[k] = [R.sub(v, R.mul(factor, pw)) for v, pw in zip(vec, pvec)]
    return basis


def _rref(cfg: FieldConfig, vectors: List[List[int]]) -> List[List[int]]:
    """Reduced echelon form; leading coefficient of each vector is 1."""
    R = cfg.residue
    rows = [list(v) for v in vectors]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = R.inv(rows[rank][col])
        rows[rank] = [R.mul(inv, v) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [R.sub(v, R.mul(f, w)) for v, w in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    rows.sort(key=lambda r: next((i for i, v in enumerate(r) if v), len(r)))
    return [r for r in rows if any(r)]


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def search_relations(cfg: FieldConfig, alphas: Sequence[LocalElement],
                     bounds: SearchBounds) -> List[RelationVector]:
    """Kernel basis of the vanishing system, normalized to reduced echelon
    form in the monomial order (slot, t-degree, pi-exponent)."""
    for a in alphas:
        if not a.is_exact():
            raise ValueError("alphas must be exact")
    nslots = len(alphas) + 2
    base = _base_series(cfg, alphas, bounds.t_deg, bounds.prec)
    cols = _columns(cfg, nslots, bounds)
    col_series: List[TateSeries] = []
    for col in cols:
        g = base[col.slot]
        s = g.scale_elem(_monomial(cfg, col))
        if col.j:
            s = s.t_shift(col.j)
        col_series.append(s)
    # usable digit slots per t-degree
    t_deg = bounds.t_deg
    equations: List[Dict[int, int]] = []
    usable_rows = 0
    for tau in range(t_deg + 1):
        floor: Union[int, float] = _INF
        cap: Union[int, float] = _INF
        for s in col_series:
            c = s.coeffs[tau]
            floor = min(floor, c.val_floor())
            if c.prec is not EXACT:
                cap = min(cap, c.prec)
        if cap == _INF:
            caps = [max(s.coeffs[tau].support) for s in col_series
                    if s.coeffs[tau].support]
            if not caps:
                continue
            cap = max(caps) + 1
        if floor == _INF or floor >= cap:
            continue
        usable_rows += int(cap) - int(floor)
        for w in range(int(floor), int(cap)):
            eq: Dict[int, int] = {}
            for idx, s in enumerate(col_series):
                code = s.coeffs[tau].coeff(w)
                if code:
                    eq[idx] = code
            if eq:
                equations.append(eq)
    if usable_rows < len(cols):
        raise UnderdeterminedSystem(
            f"{usable_rows} usable digit rows for {len(cols)} unknowns; "
            "increase prec or t_deg")
    kernel = _kernel_basis(cfg, equations, len(cols))
    kernel = _rref(cfg, kernel)
    out = []
    for vec in kernel:
        out.append(_vector_to_relation(cfg, vec, cols, nslots, bounds.d_t))
    return out


def _vector_to_relation(cfg: FieldConfig, vec: List[int], cols: List[_Column],
                        nslots: int, d_t: int) -> RelationVector:
    polys = []
    for slot in range(nslots):
        coeffs = [cfg.zero() for _ in range(d_t + 1)]
        for idx, col in enumerate(cols):
            if col.slot == slot and vec[idx]:
                coeffs[col.j] = coeffs[col.j] + _monomial(cfg, col).scale(vec[idx])
        polys.append(TPoly(cfg, coeffs))
    return RelationVector(tuple(polys))


# ---------------------------------------------------------------------------
# certification and evaluation
# ---------------------------------------------------------------------------

def certify_relation(cfg: FieldConfig, rel: RelationVector,
                     alphas: Sequence[LocalElement],
                     bounds: SearchBounds,
                     _base: Optional[List[TateSeries]] = None) -> Certification:
    """Recompute the combination at margin-scaled precision and truncation.

    Certified means the residual is zero at the re-derived precision; the
    report keeps the residual and threshold exponents.
    """
    prec2 = bounds.margin * bounds.prec
    t_deg2 = bounds.margin * bounds.t_deg
    if rel.is_zero():
        return Certification(False, -_INF, -_INF, prec2, t_deg2)
    base = _base if _base is not None else _base_series(cfg, alphas, t_deg2, prec2)
    resid = _combination(rel, base)
    bound, _ = resid.gauss_norm_log_q()
    mp = resid.min_coeff_prec()
    threshold = -_INF if mp is None else Fraction(-mp, cfg.ram)
    return Certification(resid.is_zero_at_prec(), bound, threshold, prec2, t_deg2)


def evaluate_relation_at_theta(cfg: FieldConfig, rel: RelationVector,
                               alphas: Sequence[LocalElement],
                               certification: Optional[Certification] = None,
                               bounds: Optional[SearchBounds] = None) -> EvaluatedRelation:
    """Turn a certified series relation into the k-linear relation at t=theta.

    With rel = a_const 1 + a_0 Omega + sum a_i Omega L_alpha_i, dividing by
    Omega and using 1/Omega(theta) = -pitilde gives

        a_0(theta) + sum a_i(theta) log_C(alpha_i) - a_const(theta) pitilde = 0.
    """
    if certification is None:
        if bounds is None:
            raise ValueError("need a certification or bounds to derive one")
        certification = certify_relation(cfg, rel, alphas, bounds)
    if not certification.certified:
        raise NotCertified("relation failed margin-precision certification")
    th = cfg.theta()
    prec = certification.prec
    c_const = rel.slots[1].eval(th)
    c_pitilde = -rel.slots[0].eval(th)
    c_log = tuple(rel.slots[2 + i].eval(th) for i in range(rel.r))
    artifact = None if c_const.is_exact_zero() else local_norm(c_const)
    resid = c_const.truncate(prec)
    pt = pi_tilde(cfg, prec)
    resid = resid + c_pitilde * pt
    for coeff, a in zip(c_log, alphas):
        resid = resid + coeff * carlitz_log(a, prec)
    return EvaluatedRelation(c_const, c_pitilde, c_log, artifact,
                             local_norm(resid))


# ---------------------------------------------------------------------------
# group data extraction
# ---------------------------------------------------------------------------

def _fq_code(cfg: FieldConfig, ratio: LocalElement, prec: int) -> int:
    code = ratio.coeff(0)
    rest = ratio - ratio.config.element({0: code} if code else {})
    if not rest.truncate(prec).is_zero_at_prec():
        raise GammaExtractionFailed(
            "coefficient ratio is not a constant at the working precision")
    if not cfg.residue.in_prime_subfield_q(code):
        raise GammaExtractionFailed("coefficient ratio lies outside F_q")
    return code


def _trim_codes(codes: List[int]) -> Tuple[int, ...]:
    while codes and codes[-1] == 0:
        codes.pop()
    return tuple(codes)


def extract_gamma_entry(cfg: FieldConfig, rel: RelationVector,
                        prec: int) -> GammaEntry:
    """Scale a relation so the constant and X_i slots land in F_q[t] and
    read off the group / torsor defining data."""
    r = rel.r
    check_order = [0] + [2 + i for i in range(r)]
    c0: Optional[LocalElement] = None
    for s in check_order:
        for c in rel.slots[s].coeffs:
            if c.support:
                c0 = c
                break
        if c0 is not None:
            break
    if c0 is None:
        raise GammaExtractionFailed("relation has no constant or X_i part")
    c0_inv = c0.inv(prec)
    beta: Dict[int, Tuple[int, ...]] = {}
    for s in check_order:
        codes = []
        for c in rel.slots[s].coeffs:
            if c.support:
                codes.append(_fq_code(cfg, c * c0_inv, prec))
            else:
                codes.append(0)
        beta[s] = _trim_codes(codes)
    beta_const = beta[0]
    if not beta_const and all(not beta[2 + i] for i in range(r)):
        raise GammaExtractionFailed("extracted polynomial is identically zero")
    R = cfg.residue
    g_const = _make_fqrat(R, beta_const)
    g_x0 = _make_fqrat(R, tuple(R.neg(c) for c in beta_const))
    g_xi = tuple(_make_fqrat(R, beta[2 + i]) for i in range(r))
    # F := X-part / (its first nonzero coefficient polynomial), so the
    # leading F-coefficient is 1 and b0 = Lambda + 1, b_lead = beta_const
    # gives one lift with F(b) = beta_const.
    lead_idx = next((i for i in range(r) if beta[2 + i]), None)
    if lead_idx is None:
        raise GammaExtractionFailed("relation has no X_i part")
    lam = beta[2 + lead_idx]
    f_form = tuple(_make_fqrat(R, beta[2 + i], lam) for i in range(r))
    b0_num = list(lam)
    b0_num[0] = R.add(b0_num[0], 1)
    b0 = _make_fqrat(R, b0_num)
    b = tuple(_make_fqrat(R, beta_const) if i == lead_idx else FqRat((), (1,))
              for i in range(r))
    # torsor correction: H = rel / c0 has X_0 coefficient beta_0 - f
    beta0_elems = [cfg.element({0: R.neg(c)} if c else {}) for c in beta_const]
    h_x0 = [c * c0_inv for c in rel.slots[1].coeffs]
    n = max(len(beta0_elems), len(h_x0))
    f_poly = []
    for j in range(n):
        bj = beta0_elems[j] if j < len(beta0_elems) else cfg.zero()
        hj = h_x0[j] if j < len(h_x0) else cfg.zero()
        f_poly.append(bj - hj)  # exact when the scaling c0 was a monomial
    return GammaEntry(g_const, g_x0, g_xi, f_form, b0, b,
                      tuple(f_poly), c0)


# ---------------------------------------------------------------------------
# the full report
# ---------------------------------------------------------------------------

def gamma_report(cfg: FieldConfig, alphas: Sequence[LocalElement],
                 bounds: SearchBounds,
                 relations: Optional[List[RelationVector]] = None) -> RelationReport:
    """Search (unless given), certify, pick independent representatives,
    and assemble the group data with dim Gamma = (r+1) - #relations.

    The reported dimension is labeled conjectural: by the transcendence
    bridge it equals the expected transcendence degree of the field
    generated by pitilde and the logarithms.
    """
    if relations is None:
        relations = search_relations(cfg, alphas, bounds)
    kernel_dim = len(relations)
    r = len(alphas)
    base2 = (_base_series(cfg, alphas, bounds.margin * bounds.t_deg,
                          bounds.margin * bounds.prec) if relations else None)
    for rel in relations:
        cert = certify_relation(cfg, rel, alphas, bounds, _base=base2)
        if not cert.certified:
            raise NotCertified("kernel vector failed certification")
    if relations:
        rank, pivots = tpoly_matrix_rank([list(rel.slots) for rel in relations])
        # report a primitive generator per independent relation (kernel
        # vectors come in monomial- and t-multiplied copies)
        selected = [RelationVector(primitive_vector(relations[i].slots))
                    for i in sorted(pivots)]
    else:
        rank, selected = 0, []
    gamma_dim = (r + 1) - rank
    certs = tuple(certify_relation(cfg, rel, alphas, bounds, _base=base2)
                  for rel in selected)
    for cert in certs:
        if not cert.certified:
            raise NotCertified("primitive representative failed certification")
    evaluated = tuple(
        evaluate_relation_at_theta(cfg, rel, alphas, certification=cert)
        for rel, cert in zip(selected, certs))
    gamma = tuple(extract_gamma_entry(cfg, rel, bounds.margin * bounds.prec)
                  for rel in selected)
    return RelationReport(
        alphas=tuple(alphas), bounds=bounds, relations=tuple(selected),
        kernel_dim=kernel_dim, certifications=certs, evaluated=evaluated,
        gamma_dim=gamma_dim, gamma=gamma,
        certified_prec=bounds.margin * bounds.prec,
        certified_t_deg=bounds.margin * bounds.t_deg)
