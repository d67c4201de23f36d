"""Carlitz special functions over the working field.

Implements the exponential and logarithm of the Carlitz module, the period
pitilde, the entire series Omega and L_alpha (with tail certificates), and
the module action itself.  Truncation orders are derived from the valuation
growth of the defining denominators:

    exp:   term i has valuation  q^i v(z) + i * ram * q^i
    log:   term i has valuation  q^i (v(z) + A) - A,     A = ram*q/(q-1)
    Omega: coefficient j has valuation >= A * q^j
    L_a:   coefficient j has valuation >= C + ram*q*j

so a requested absolute precision fixes the number of terms.  The log
domain |z| < |theta|^(q/(q-1)) is exactly v(z) > -A.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from .errors import OutsideLogDomain
from .fields import FieldConfig, LocalElement, _INF
from .series import AffineTail, OmegaTail, TateSeries

_MAX_TERMS = 64


def _lin_coeff_A(cfg: FieldConfig) -> int:
    """A = ram*q/(q-1); v(pitilde) = -ram - ram/(q-1) = -(ram + A - ram) - ..."""
    return cfg.ram * cfg.q // (cfg.q - 1)


def exp_denominator(cfg: FieldConfig, i: int) -> LocalElement:
    """D_i = prod_{l<i} (theta^(q^i) - theta^(q^l)), D_0 = 1."""
    th = cfg.theta()
    out = cfg.one()
    hi = th ** (cfg.q ** i)
    for l in range(i):
        out = out * (hi - th ** (cfg.q ** l))
    return out


def log_denominator(cfg: FieldConfig, i: int) -> LocalElement:
    """L_i = prod_{1<=l<=i} (theta - theta^(q^l)), L_0 = 1."""
    th = cfg.theta()
    out = cfg.one()
    for l in range(1, i + 1):
        out = out * (th - th ** (cfg.q ** l))
    return out


def carlitz_exp(z: LocalElement, prec: Optional[int] = None) -> LocalElement:
    """exp_C(z) = z + sum_i z^(q^i)/D_i, truncated at absolute precision prec.

    Converges for every z; F_q-linear.
    """
    cfg = z.config
    prec = cfg.default_prec if prec is None else prec
    vz = z.val_floor()
    if vz == _INF:
        return z
    vz = int(vz)
    total = z.truncate(prec)
    for i in range(1, _MAX_TERMS):
        term_floor = cfg.q ** i * vz + i * cfg.ram * cfg.q ** i
        if term_floor >= prec:
            return total.truncate(prec)
        num = z.twist(i)
        den = exp_denominator(cfg, i)
        rel = prec - term_floor
        total = total + (num * den.inv(rel)).truncate(prec)
    raise ArithmeticError(
        f"exp_C needs more than {_MAX_TERMS} terms at this precision")


def carlitz_log(z: LocalElement, prec: Optional[int] = None) -> LocalElement:
    """log_C(z) = z + sum_i z^(q^i)/L_i for |z| < |theta|^(q/(q-1)).

    Term i has valuation q^i (v(z)+A) - A with A = ram*q/(q-1), so the
    domain condition v(z) > -A makes the valuations strictly increasing;
    the term count follows.  Raises OutsideLogDomain otherwise.
    """
    cfg = z.config
    prec = cfg.default_prec if prec is None else prec
    A = _lin_coeff_A(cfg)
    vz = z.val_floor()
    if vz == _INF:
        return z
    vz = int(vz)
    if vz <= -A:
        raise OutsideLogDomain(
            f"v(z) = {vz} <= -{A}; need |z| < |theta|^(q/(q-1))")
    total = z.truncate(prec)
    for i in range(1, _MAX_TERMS):
        term_floor = cfg.q ** i * (vz + A) - A
        if term_floor >= prec:
            return total.truncate(prec)
        num = z.twist(i)
        den = log_denominator(cfg, i)
        rel = prec - term_floor
        total = total + (num * den.inv(rel)).truncate(prec)
    raise ArithmeticError(
        f"log_C needs more than {_MAX_TERMS} terms at this precision")


def pi_tilde(cfg: FieldConfig, prec: Optional[int] = None) -> LocalElement:
    """The Carlitz period theta*zeta*prod_i (1 - theta^(1-q^i))^(-1).

    Dropped factors are 1 + O(pi^(ram*(q^i - 1))); the product is cut once
    that exceeds the requested relative precision.  v(pitilde) =
    -ram - ram/(q-1).
    """
    prec = cfg.default_prec if prec is None else prec
    th = cfg.theta()
    acc = (th * cfg.zeta()).truncate(prec)
    rel = prec - acc.valuation()
    i = 1
    while cfg.ram * (cfg.q ** i - 1) < rel and i < _MAX_TERMS:
        factor = cfg.one() - th ** (1 - cfg.q ** i)
        acc = (acc * factor.inv(rel)).truncate(prec)
        i += 1
    return acc


def build_omega(cfg: FieldConfig, t_deg: int, prec: Optional[int] = None) -> TateSeries:
    """Omega = zeta^(-q) prod_i (1 - t/theta^(q^i)), a unit in the Tate algebra.

    Satisfies the twisted functional equation Omega = (t - theta^q) Omega^(1).
    The attached tail certifies v(c_j) >= A q^j, enabling evaluation at
    t = theta (where -1/Omega(theta) is the Carlitz period).
    """
    prec = cfg.default_prec if prec is None else prec
    q, ram = cfg.q, cfg.ram
    th = cfg.theta()
    zero = cfg.zero()
    one = cfg.one()
    prod = TateSeries(cfg, [one] + [zero] * t_deg)
    i = 1
    while ram * q ** i < prec + ram * q and i < _MAX_TERMS:
        factor = TateSeries(cfg, [one, -(th ** (-(q ** i)))] + [zero] * (t_deg - 1))
        prod = prod * factor
        i += 1
    lead = cfg.zeta() ** (-q)
    out = prod.scale_elem(lead).truncate_prec(prec)
    return TateSeries(cfg, out.coeffs, OmegaTail(_lin_coeff_A(cfg), q))


def build_L_alpha(alpha: LocalElement, t_deg: int,
                  prec: Optional[int] = None) -> TateSeries:
    """L_alpha = alpha + sum_i alpha^(q^i) / ((t-theta^q)...(t-theta^(q^i))).

    Each 1/(t - theta^(q^l)) is the geometric expansion
    -theta^(-q^l) sum_m (t/theta^(q^l))^m  (a unit: |theta^(q^l)| > 1).
    Requires |alpha| < |theta|^(q/(q-1)).  Satisfies the twisted equation
    (t - theta^q) L = alpha (t - theta^q) + L^(1) and L(theta) = log_C(alpha).
    """
    cfg = alpha.config
    prec = cfg.default_prec if prec is None else prec
    q, ram = cfg.q, cfg.ram
    A = _lin_coeff_A(cfg)
    va = alpha.val_floor()
    if va == _INF:
        return TateSeries.constant(alpha, t_deg, AffineTail(prec, ram * q))
    va = int(va)
    if va <= -A:
        raise OutsideLogDomain(
            f"v(alpha) = {va} <= -{A}; need |alpha| < |theta|^(q/(q-1))")
    th = cfg.theta()
    zero = cfg.zero()
    total = TateSeries.constant(alpha, t_deg)
    cumulative: Optional[TateSeries] = None
    margin = prec + ram * q + 1  # keeps the twisted-equation residual invisible
    c_floor: Optional[int] = None
    i = 1
    while i < _MAX_TERMS:
        c_i = q ** i * (va + A) - A
        if c_i >= margin:
            break
        if c_floor is None or c_i < c_floor:
            c_floor = c_i
        pole = th ** (q ** i)
        pole_inv = pole.inv()  # exact monomial
        geo = TateSeries(cfg, [-(pole_inv * pole_inv ** m) for m in range(t_deg + 1)])
        cumulative = geo if cumulative is None else cumulative * geo
        total = total + cumulative.scale_elem(alpha.twist(i))
        i += 1
    base = min(va, c_floor) if c_floor is not None else va
    out = total.truncate_prec(prec)
    return TateSeries(cfg, out.coeffs, AffineTail(base, ram * q))


def carlitz_action(a_coeffs: Sequence[int], x: LocalElement) -> LocalElement:
    """C_a(x) for a = sum a_k t^k with a_k in F_q (residue codes).

    C_t(x) = theta x + x^q; the general action is the Horner recursion
    y <- C_t(y) + a_k x from the top coefficient down.
    """
    cfg = x.config
    R = cfg.residue
    for c in a_coeffs:
        if not R.in_prime_subfield_q(c):
            raise ValueError(f"coefficient code {c} is not in F_q")
    th = cfg.theta()
    y = cfg.zero()
    for c in reversed(list(a_coeffs)):
        y = th * y + y.twist(1)
        if c:
            y = y + x.scale(c)
    return y


def t_power_coeffs(n: int) -> List[int]:
    """Coefficient vector of t^n for carlitz_action."""
    return [0] * n + [1]
