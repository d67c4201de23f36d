"""Exact arithmetic in the working ramified local field F_{q^e}((pi)).

The working field is a computable stand-in for the completion of the
algebraic closure of F_q((1/theta)).  We fix a uniformizer pi and put

    theta = -pi^(-ram),        zeta = pi^(-ram/(q-1)),

where ram is a positive multiple of q-1, so that zeta^(q-1) = -theta holds
exactly.  The infinity-adic norm is normalized by |x| = q^(-v(x)/ram), which
gives |theta| = q and |zeta| = q^(1/(q-1)).

Elements (`LocalElement`) are Laurent series in pi over F_{q^e} with finite
stored support, truncated at an absolute precision (a pi-exponent cutoff) or
EXACT when the support is finite and complete.  All operations are pure and
propagate precision pessimistically:

    add/sub:  min(prec_a, prec_b)
    mul:      min(prec_a + v(b), prec_b + v(a))
    inv:      prec - 2 v(b)   (EXACT non-monomial input: default_prec digits)

There is no exact zero test on computed values: an element with empty
support and finite precision is only "zero at precision".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .errors import DivisionByIndistinguishableZero, NotAQthPower

EXACT: Optional[int] = None

_INF = float("inf")


# ---------------------------------------------------------------------------
# polynomials over F_p (coefficient tuples, ascending degree)
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_trim(f: List[int]) -> List[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mulmod(f: List[int], g: List[int], mod: Tuple[int, ...], p: int) -> List[int]:
    d = len(mod) - 1
    out = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = (out[i + j] + a * b) % p
    # reduce by the monic modulus
    for k in range(len(out) - 1, d - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for j in range(d):
                out[k - d + j] = (out[k - d + j] - c * mod[j]) % p
    return _poly_trim(out[:d] if len(out) > d else out)


def _poly_powmod(f: List[int], k: int, mod: Tuple[int, ...], p: int) -> List[int]:
    result = [1]
    base = list(f)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        k >>= 1
    return result


def _poly_gcd(f: List[int], g: List[int], p: int) -> List[int]:
    f, g = list(f), list(g)
    while g:
        inv = pow(g[-1], p - 2, p)
        # f mod g
        while len(f) >= len(g) and f:
            c = (f[-1] * inv) % p
            shift = len(f) - len(g)
            for j, b in enumerate(g):
                f[shift + j] = (f[shift + j] - c * b) % p
            _poly_trim(f)
        f, g = g, f
    return f


def _prime_factors(n: int) -> List[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(f: Tuple[int, ...], p: int) -> bool:
    d = len(f) - 1
    if d == 1:
        return True
    x = [0, 1]
    # x^(p^d) == x mod f
    t = x
    for _ in range(d):
        t = _poly_powmod(t, p, f, p)
    if _poly_trim([(a - b) % p for a, b in
                   zip(t + [0] * len(x), x + [0] * len(t))]):
        return False
    for r in _prime_factors(d):
        t = x
        for _ in range(d // r):
            t = _poly_powmod(t, p, f, p)
        diff = _poly_trim([(a - b) % p for a, b in
                           zip(t + [0] * len(x), x + [0] * len(t))])
        if len(_poly_gcd(diff, list(f), p)) != 1:
            return False
    return True


def minimal_irreducible(p: int, d: int) -> Tuple[int, ...]:
    """Deterministic defining polynomial of F_{p^d}.

    Monic x^d + c_{d-1} x^{d-1} + ... + c_0, minimizing the integer
    sum(c_i p^i); equivalently lexicographically smallest on the tuple
    (c_{d-1}, ..., c_0).  Reproducible with no external tables.
    """
    for code in range(p ** d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % p)
            c //= p
        f = tuple(coeffs + [1])
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# the residue field F_{q^e}
# ---------------------------------------------------------------------------

class ResidueField:
    """F_{p^d} with d = m*e, elements encoded as integers in [0, p^d).

    The integer code is the base-p digit vector on the power basis of the
    defining polynomial (constant coordinate least significant).  Small
    fields get full discrete-log tables so that mul/inv/frobenius are O(1)
    lookups; addition uses a table when p^d is small, digit arithmetic
    otherwise.
    """

    def __init__(self, p: int, m: int, e: int):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if m < 1 or e < 1:
            raise ValueError("m and e must be >= 1")
        self.p = p
        self.m = m
        self.e = e
        self.d = m * e
        self.q = p ** m
        self.order = p ** self.d
        self.modulus = minimal_irreducible(p, self.d)
        self._build_tables()

    # -- construction of lookup tables ------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        fa = self.coords(a)
        fb = self.coords(b)
        out = _poly_mulmod(list(fa), list(fb), self.modulus, self.p)
        return self._encode(out)

    def _build_tables(self) -> None:
        p, d, n = self.p, self.d, self.order
        if d == 1:
            self._exp = None
            self._log = None
        else:
            g = self._find_generator()
            exp = [1] * (n - 1)
            acc = 1
            for i in range(1, n - 1):
                acc = self._raw_mul(acc, g)
                exp[i] = acc
            log = [0] * n
            for i, v in enumerate(exp):
                log[v] = i
            self._exp = exp
            self._log = log
        if d > 1 and n <= 4096:
            self._add_table: Optional[List[List[int]]] = [
                [self._digit_add(a, b) for b in range(n)] for a in range(n)
            ]
        else:
            self._add_table = None
        # q-power Frobenius and its inverse as permutation tables
        self._frob = [self.pow(a, self.q) if d > 1 else (a % p) for a in range(n)]
        inv_frob = [0] * n
        for a, fa in enumerate(self._frob):
            inv_frob[fa] = a
        self._frob_inv = inv_frob

    def _find_generator(self) -> int:
        n = self.order
        factors = _prime_factors(n - 1)
        for g in range(2, n):
            ok = True
            for r in factors:
                if self._raw_pow(g, (n - 1) // r) == 1:
                    ok = False
                    break
            if ok:
                return g
        raise AssertionError("no generator found")

    def _raw_pow(self, a: int, k: int) -> int:
        result = 1
        base = a
        while k:
            if k & 1:
                result = self._raw_mul(result, base)
            base = self._raw_mul(base, base)
            k >>= 1
        return result

    # -- element codecs ----------------------------------------------------

    def coords(self, a: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.d):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def _encode(self, coeffs: List[int]) -> int:
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + (c % self.p)
        return code

    def from_coords(self, coords) -> int:
        coords = list(coords)
        if len(coords) > self.d:
            raise ValueError("too many coordinates")
        return self._encode(coords + [0] * (self.d - len(coords)))

    def from_int(self, n: int) -> int:
        return n % self.p

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.d):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._digit_add(a, b)

    def neg(self, a: int) -> int:
        if self.d == 1:
            return (-a) % self.p
        return self.mul(a, self.from_int(self.p - 1))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("residue inverse of zero")
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if self.d == 1:
            return pow(a, k, self.p)
        if a == 0:
            return 0 if k else 1
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def frob_q(self, a: int) -> int:
        """a -> a^q (the arithmetic Frobenius over F_q)."""
        return self._frob[a]

    def frob_q_inv(self, a: int) -> int:
        """The unique q-th root: inverse of frob_q (finite fields are perfect)."""
        return self._frob_inv[a]

    def pow_q(self, a: int, n: int) -> int:
        """a -> a^(q^n) for any integer n; uses q^e-periodicity."""
        n %= self.e
        for _ in range(n):
            a = self._frob[a]
        return a

    def in_prime_subfield_q(self, a: int) -> bool:
        """True when a lies in F_q, i.e. a^q = a."""
        return self._frob[a] == a

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))


# ---------------------------------------------------------------------------
# field configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldConfig:
    """Parameters of the working field F_{q^e}((pi)) with theta = -pi^(-ram).

    q = p^m; ram must be a positive multiple of q-1 so that zeta =
    pi^(-ram/(q-1)) lies in the field; default_prec is the absolute
    pi-adic precision used when truncation is forced on exact inputs.
    """

    p: int
    m: int = 1
    e: int = 1
    ram: int = 0
    default_prec: int = 200

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.m < 1 or self.e < 1:
            raise ValueError("m, e must be >= 1")
        q = self.p ** self.m
        ram = self.ram if self.ram else (q - 1)
        object.__setattr__(self, "ram", ram)
        if ram <= 0 or ram % (q - 1) != 0:
            raise ValueError(f"ram = {ram} must be a positive multiple of q-1 = {q - 1}")
        if self.default_prec < 1:
            raise ValueError("default_prec must be >= 1")
        object.__setattr__(self, "_residue", ResidueField(self.p, self.m, self.e))

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def residue(self) -> ResidueField:
        return self._residue  # type: ignore[attr-defined]

    @property
    def modulus(self) -> Tuple[int, ...]:
        return self.residue.modulus

    # -- element constructors ----------------------------------------------

    def element(self, support: Dict[int, int], prec: Optional[int] = EXACT) -> "LocalElement":
        return LocalElement(self, support, prec)

    def zero(self, prec: Optional[int] = EXACT) -> "LocalElement":
        return LocalElement(self, {}, prec)

    def one(self) -> "LocalElement":
        return LocalElement(self, {0: 1}, EXACT)

    def monomial(self, exp: int, code: int = 1, prec: Optional[int] = EXACT) -> "LocalElement":
        return LocalElement(self, {exp: code}, prec)

    def from_int(self, n: int) -> "LocalElement":
        return LocalElement(self, {0: self.residue.from_int(n)}, EXACT)

    def pi(self) -> "LocalElement":
        return self.monomial(1)

    def theta(self) -> "LocalElement":
        """theta = -pi^(-ram), so |theta| = q."""
        return self.monomial(-self.ram, self.residue.from_int(self.p - 1))

    def zeta(self) -> "LocalElement":
        """zeta = pi^(-ram/(q-1)), a fixed (q-1)-th root of -theta."""
        return self.monomial(-self.ram // (self.q - 1))

    def log_domain_floor(self) -> int:
        """Valuations strictly above -q*ram/(q-1) lie in the log domain."""
        return -(self.q * self.ram) // (self.q - 1)


# ---------------------------------------------------------------------------
# Laurent series elements
# ---------------------------------------------------------------------------

def _min_prec(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is EXACT:
        return b
    if b is EXACT:
        return a
    return min(a, b)


class LocalElement:
    """A truncated pi-Laurent series over F_{q^e} with absolute precision.

    ``support`` maps pi-exponents to nonzero residue codes; ``prec`` is the
    exponent cutoff (coefficients at exponents >= prec are unknown), or
    EXACT (None) when the element is known completely.
    """

    __slots__ = ("config", "support", "prec")

    def __init__(self, config: FieldConfig, support: Dict[int, int],
                 prec: Optional[int] = EXACT):
        if prec is EXACT:
            cleaned = {k: v for k, v in support.items() if v}
        else:
            cleaned = {k: v for k, v in support.items() if v and k < prec}
        self.config = config
        self.support = cleaned
        self.prec = prec

    # -- inspection ----------------------------------------------------------

    def valuation(self) -> Optional[int]:
        """Smallest exponent with a nonzero coefficient; None if none stored."""
        return min(self.support) if self.support else None

    def val_floor(self) -> Union[int, float]:
        """Lower bound for the valuation: val if visible, else prec (inf if exact 0)."""
        if self.support:
            return min(self.support)
        return _INF if self.prec is EXACT else self.prec

    def is_exact(self) -> bool:
        return self.prec is EXACT

    def is_exact_zero(self) -> bool:
        return not self.support and self.prec is EXACT

    def is_zero_at_prec(self) -> bool:
        """Tri-state zero test: True means no nonzero digit is visible."""
        return not self.support

    def norm_log_q(self) -> Optional[Fraction]:
        """log_q |x| as an exact rational, or None when only a bound is known."""
        v = self.valuation()
        if v is None:
            return None
        return Fraction(-v, self.config.ram)

    def norm_bound_log_q(self) -> Union[Fraction, float]:
        """log_q of an upper bound for |x| (uses prec when zero at precision)."""
        vf = self.val_floor()
        if vf == _INF:
            return -_INF
        return Fraction(-int(vf), self.config.ram)

    def coeff(self, exp: int) -> int:
        return self.support.get(exp, 0)

    def items(self) -> List[Tuple[int, int]]:
        return sorted(self.support.items())

    # -- structure -----------------------------------------------------------

    def truncate(self, prec: Optional[int]) -> "LocalElement":
        return LocalElement(self.config, self.support, _min_prec(self.prec, prec))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalElement):
            return NotImplemented
        return (self.config == other.config and self.support == other.support
                and self.prec == other.prec)

    def __hash__(self):
        return hash((frozenset(self.support.items()), self.prec))

    def __repr__(self) -> str:
        if not self.support:
            body = "0"
        else:
            parts = []
            for exp, code in self.items():
                if exp == 0:
                    parts.append(f"{code}")
                elif exp == 1:
                    parts.append(f"{code}*pi")
                else:
                    parts.append(f"{code}*pi^{exp}")
            body = " + ".join(parts)
        tag = "" if self.prec is EXACT else f" + O(pi^{self.prec})"
        return f"<{body}{tag}>"

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "LocalElement") -> "LocalElement":
        R = self.config.residue
        prec = _min_prec(self.prec, other.prec)
        merged = dict(self.support)
        for exp, code in other.support.items():
            s = R.add(merged.get(exp, 0), code)
            if s:
                merged[exp] = s
            else:
                merged.pop(exp, None)
        return LocalElement(self.config, merged, prec)

    def __neg__(self) -> "LocalElement":
        R = self.config.residue
        return LocalElement(self.config, {e: R.neg(c) for e, c in self.support.items()},
                            self.prec)

    def __sub__(self, other: "LocalElement") -> "LocalElement":
        return self + (-other)

    def scale(self, code: int) -> "LocalElement":
        """Multiply by a residue-field scalar."""
        R = self.config.residue
        if code == 0:
            return LocalElement(self.config, {}, self.prec)
        return LocalElement(self.config,
                            {e: R.mul(c, code) for e, c in self.support.items()},
                            self.prec)

    def shift(self, k: int) -> "LocalElement":
        """Multiply by pi^k."""
        prec = self.prec if self.prec is EXACT else self.prec + k
        return LocalElement(self.config, {e + k: c for e, c in self.support.items()}, prec)

    def __mul__(self, other: "LocalElement") -> "LocalElement":
        if self.is_exact_zero() or other.is_exact_zero():
            return self.config.zero()
        va, vb = self.val_floor(), other.val_floor()
        prec: Optional[int] = EXACT
        if self.prec is not EXACT:
            prec = self.prec + (vb if vb != _INF else 0)
            prec = int(prec)
        if other.prec is not EXACT:
            p2 = other.prec + (va if va != _INF else 0)
            prec = _min_prec(prec, int(p2))
        if not self.support or not other.support:
            return LocalElement(self.config, {}, prec)
        cap = None if prec is EXACT else prec
        out = _convolve(self.config.residue, self.support, other.support, cap)
        return LocalElement(self.config, out, prec)

    def inv(self, rel_prec: Optional[int] = None) -> "LocalElement":
        """Multiplicative inverse.

        Exact monomials invert exactly.  Otherwise the result is truncated:
        an input with absolute precision N and valuation v yields precision
        N - 2v; an EXACT multi-term input yields rel_prec (default
        config.default_prec) digits of relative precision.
        """
        if not self.support:
            raise DivisionByIndistinguishableZero(
                "divisor has no nonzero coefficient below its precision")
        cfg = self.config
        R = cfg.residue
        v = self.valuation()
        lead = self.support[v]
        if self.prec is EXACT and len(self.support) == 1:
            return LocalElement(cfg, {-v: R.inv(lead)}, EXACT)
        if self.prec is EXACT:
            rel = rel_prec if rel_prec is not None else cfg.default_prec
        else:
            rel = self.prec - v
        target = -v + rel  # absolute precision of the inverse
        y = LocalElement(cfg, {-v: R.inv(lead)}, EXACT)
        b = self.truncate(v + rel)
        one = cfg.one()
        while True:
            err = (one - b * y).truncate(rel)
            if err.is_zero_at_prec():
                break
            y = (y + y * err).truncate(target)
        return y.truncate(target)

    def __truediv__(self, other: "LocalElement") -> "LocalElement":
        return self * other.inv()

    def __pow__(self, k: int) -> "LocalElement":
        if k < 0:
            return self.inv() ** (-k)
        result = self.config.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- Frobenius twisting ------------------------------------------------------

    def twist(self, n: int) -> "LocalElement":
        """n-fold Frobenius twist x -> x^(q^n).

        For n >= 0 this is the exact q^n-th power (exponents scale by q^n,
        coefficients are raised to q^n).  For n < 0 it is the inverse map,
        defined only when every stored exponent is divisible by q^|n|.
        """
        if n == 0:
            return self
        cfg = self.config
        R = cfg.residue
        if n > 0:
            s = cfg.q ** n
            prec = self.prec if self.prec is EXACT else self.prec * s
            return LocalElement(cfg, {e * s: R.pow_q(c, n) for e, c in self.support.items()},
                                prec)
        s = cfg.q ** (-n)
        for e in self.support:
            if e % s:
                raise NotAQthPower(
                    f"support exponent {e} not divisible by q^{-n} = {s}")
        prec = self.prec if self.prec is EXACT else -(-self.prec // s)  # ceil
        return LocalElement(cfg, {e // s: R.pow_q(c, n) for e, c in self.support.items()},
                            prec)


def _convolve(R: ResidueField, sa: Dict[int, int], sb: Dict[int, int],
              cap: Optional[int]) -> Dict[int, int]:
    if R.d == 1 and len(sa) * len(sb) >= 256:
        return _convolve_packed(R.p, sa, sb, cap)
    out: Dict[int, int] = {}
    if len(sa) > len(sb):
        sa, sb = sb, sa
    for ea, ca in sa.items():
        for eb, cb in sb.items():
            e = ea + eb
            if cap is not None and e >= cap:
                continue
            s = R.add(out.get(e, 0), R.mul(ca, cb))
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _convolve_packed(p: int, sa: Dict[int, int], sb: Dict[int, int],
                     cap: Optional[int]) -> Dict[int, int]:
    """Dense convolution over F_p via one big-integer multiply.

    Digits are padded so convolution sums cannot overflow between digits;
    each digit is reduced mod p on decode.
    """
    va, vb = min(sa), min(sb)
    wa, wb = max(sa) - va + 1, max(sb) - vb + 1
    bound = min(len(sa), len(sb)) * (p - 1) * (p - 1)
    nbytes = (bound.bit_length() + 7) // 8
    buf_a = bytearray(wa * nbytes)
    for e, c in sa.items():
        buf_a[(e - va) * nbytes] = c
    buf_b = bytearray(wb * nbytes)
    for e, c in sb.items():
        buf_b[(e - vb) * nbytes] = c
    prod = int.from_bytes(buf_a, "little") * int.from_bytes(buf_b, "little")
    raw = prod.to_bytes((wa + wb) * nbytes, "little")
    base = va + vb
    out: Dict[int, int] = {}
    for i in range(wa + wb - 1):
        e = base + i
        if cap is not None and e >= cap:
            break
        c = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") % p
        if c:
            out[e] = c
    return out


# ---------------------------------------------------------------------------
# free-function operation surface
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormInfo:
    """Valuation and infinity-adic norm of an element.

    When ``is_upper_bound`` is set the element is zero at precision and the
    reported data bound the true value: |x| <= q^log_q_norm.
    """

    valuation: Optional[int]
    log_q_norm: Union[Fraction, float]
    is_upper_bound: bool


def local_norm(a: LocalElement) -> NormInfo:
    v = a.valuation()
    if v is not None:
        return NormInfo(v, Fraction(-v, a.config.ram), False)
    return NormInfo(None, a.norm_bound_log_q(), True)


def local_twist(a: LocalElement, n: int) -> LocalElement:
    return a.twist(n)


def local_arith(op: str, a: LocalElement, b=None) -> LocalElement:
    """Dispatcher for the arithmetic surface: add/sub/mul/div/inv/pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown operation {op!r}")
