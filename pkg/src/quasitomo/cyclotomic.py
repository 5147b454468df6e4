"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) reduced modulo
the n-th cyclotomic polynomial, so equality and zero tests are coefficient
comparisons.  Values of different orders are combined in the field of the
lcm of the orders.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

import mpmath

__all__ = [
    "CycNum",
    "GaloisElement",
    "totient",
    "units_mod",
    "cyclotomic_poly",
    "zeta",
    "coerce",
    "galois_apply",
    "conjugate",
    "is_real",
    "degree_over_Q",
    "norm_to_Q",
    "norm_full",
    "norm_over_field",
    "vp_rational",
    "vp_one_minus_root",
    "vp_fm",
    "sign_of_real",
    "sign_re",
    "sign_im",
    "to_json",
    "from_json",
]


def totient(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def units_mod(n: int) -> tuple[int, ...]:
    """Residues a in [1, n) with gcd(a, n) = 1 (just (1,) for n <= 2)."""
    if n <= 2:
        return (1,)
    return tuple(a for a in range(1, n) if math.gcd(a, n) == 1)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both low-to-high, den monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    # reductions of x^k mod Phi_n for 0 <= k < 2n
    phi = totient(n)
    cp = cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(2 * n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cp[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _real_embedding(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    phi = totient(n)
    with mpmath.workprec(80):
        cos = tuple(float(mpmath.cos(2 * mpmath.pi * j / n)) for j in range(phi))
        sin = tuple(float(mpmath.sin(2 * mpmath.pi * j / n)) for j in range(phi))
    return cos, sin


def _clean(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _as_coeff(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return c
    if isinstance(c, Fraction):
        return _clean(c)
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, _RationalABC):
        return _clean(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _clean(Fraction(c))
    raise TypeError(f"cannot use {c!r} as an exact rational coefficient")


def _mul_vec(n: int, a: tuple, b: tuple) -> tuple:
    phi = len(a)
    table = _power_table(n)
    raw = [0] * (2 * phi - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    raw[i + j] += ai * bj
    out = list(raw[:phi])
    for k in range(phi, 2 * phi - 1):
        rk = raw[k]
        if rk:
            row = table[k]
            for j in range(phi):
                if row[j]:
                    out[j] += rk * row[j]
    return tuple(_clean(c) for c in out)


class CycNum:
    """An element of the cyclotomic field Q(zeta_n).

    >>> i = zeta(4)
    >>> i * i
    CycNum(4, [-1, 0])
    """

    __slots__ = ("order", "coeffs", "_hash", "_approx", "_l1")

    def __init__(self, order: int, coeffs=None):
        order = int(order)
        if order < 1:
            raise ValueError("order must be positive")
        phi = totient(order)
        if coeffs is None:
            coeffs = (0,) * phi
        coeffs = tuple(_as_coeff(c) for c in coeffs)
        if len(coeffs) != phi:
            # accept longer vectors in the basis 1, z, z^2, ... and reduce
            if len(coeffs) > phi:
                coeffs = _reduce_long(order, coeffs)
            else:
                coeffs = coeffs + (0,) * (phi - len(coeffs))
        self.order = order
        self.coeffs = coeffs
        self._hash = None
        self._approx = None
        self._l1 = None

    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> "CycNum":
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        obj._approx = None
        obj._l1 = None
        return obj

    @classmethod
    def rational(cls, q, order: int = 1) -> "CycNum":
        phi = totient(order)
        return cls._raw(order, (_as_coeff(q),) + (0,) * (phi - 1))

    # -- conversions -----------------------------------------------------

    def _lift(self, other):
        if isinstance(other, CycNum):
            if other.order == self.order:
                return self, other
            n = math.lcm(self.order, other.order)
            return coerce(self, n), coerce(other, n)
        try:
            q = _as_coeff(other)
        except TypeError:
            return None
        return self, CycNum.rational(q, self.order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.coeffs[0])

    def is_integral(self) -> bool:
        """True when every power-basis coefficient is an integer."""
        return all(type(c) is int for c in self.coeffs)

    def denominator(self) -> int:
        d = 1
        for c in self.coeffs:
            if type(c) is Fraction:
                d = math.lcm(d, c.denominator)
        return d

    def approx(self) -> complex:
        """Double-precision value under zeta_n -> exp(2 pi i / n)."""
        if self._approx is None:
            cos, sin = _real_embedding(self.order)
            re = 0.0
            im = 0.0
            for c, cj, sj in zip(self.coeffs, cos, sin):
                if c:
                    fc = float(c)
                    re += fc * cj
                    im += fc * sj
            self._approx = complex(re, im)
        return self._approx

    def __complex__(self) -> complex:
        return self.approx()

    def l1(self) -> float:
        """Sum of |coefficients|; bounds |x| and scales the error of approx()."""
        if self._l1 is None:
            self._l1 = float(sum(abs(c) for c in self.coeffs))
        return self._l1

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNum._raw(a.order, tuple(_clean(x + y) for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNum._raw(a.order, tuple(_clean(x - y) for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, CycNum):
            try:
                q = _as_coeff(other)
            except TypeError:
                return NotImplemented
            return CycNum._raw(self.order, tuple(_clean(c * q) for c in self.coeffs))
        a, b = self._lift(other)
        return CycNum._raw(a.order, _mul_vec(a.order, a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycNum.rational(1 / Fraction(self.coeffs[0]), self.order)
        # x^-1 = (product of the other conjugates) / N(x)
        others = CycNum.rational(1, self.order)
        for a in units_mod(self.order)[1:]:
            others = others * galois_apply(GaloisElement(self.order, a), self)
        norm = (self * others).to_fraction()
        return others * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, CycNum):
            return self * other.inverse()
        try:
            q = _as_coeff(other)
        except TypeError:
            return NotImplemented
        if q == 0:
            raise ZeroDivisionError("division by zero")
        return self * (1 / Fraction(q))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        acc = CycNum.rational(1, self.order)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycNum):
            if other.order == self.order:
                return self.coeffs == other.coeffs
            a, b = self._lift(other)
            return a.coeffs == b.coeffs
        try:
            q = _as_coeff(other)
        except TypeError:
            return NotImplemented
        return self.is_rational() and self.coeffs[0] == q

    def __hash__(self):
        if self._hash is None:
            m = self.minimal()
            self._hash = hash(m.coeffs[0]) if m.order == 1 else hash((m.order, m.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def minimal(self) -> "CycNum":
        """The same value expressed in the smallest cyclotomic field containing it."""
        n = self.order
        if n <= 2:
            return self if n == 1 else CycNum._raw(1, self.coeffs[:1])
        for d in _divisors(n):
            if d == n:
                break
            if d % 4 == 2:
                continue
            if _in_subfield(self, d):
                return _descend(self, d)
        return self

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"CycNum({self.order}, [{body}])"

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                mon = f"z{self.order}" + (f"^{j}" if j > 1 else "")
                terms.append(mon if c == 1 else f"-{mon}" if c == -1 else f"({c})*{mon}")
        return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


def _reduce_long(order: int, coeffs: tuple) -> tuple:
    phi = totient(order)
    out = [0] * phi
    for k, c in enumerate(coeffs):
        c = _as_coeff(c)
        if not c:
            continue
        row = _power_table(order)[k % order]
        for j in range(phi):
            if row[j]:
                out[j] += c * row[j]
    return tuple(_clean(c) for c in out)


def zeta(n: int, k: int = 1) -> CycNum:
    """The root of unity zeta_n^k = exp(2 pi i k / n)."""
    row = _power_table(n)[k % n]
    return CycNum._raw(n, row)


def coerce(x: CycNum, N: int) -> CycNum:
    """Re-express ``x`` in Q(zeta_N); requires order(x) | N."""
    n = x.order
    if N == n:
        return x
    if N % n:
        raise ValueError(f"cannot coerce order {n} into order {N}")
    step = N // n
    table = _power_table(N)
    phi = totient(N)
    out = [0] * phi
    for j, c in enumerate(x.coeffs):
        if c:
            row = table[(j * step) % N]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return CycNum._raw(N, tuple(_clean(c) for c in out))


def _in_subfield(x: CycNum, d: int) -> bool:
    n = x.order
    for a in units_mod(n):
        if a != 1 and (a - 1) % d == 0:
            if galois_apply(GaloisElement(n, a), x).coeffs != x.coeffs:
                return False
    return True


@lru_cache(maxsize=None)
def _descent_map(d: int, n: int):
    # left inverse of the coercion matrix Q(zeta_d) -> Q(zeta_n), on pivot rows
    phid, phin = totient(d), totient(n)
    cols = [coerce(zeta(d, j), n).coeffs for j in range(phid)]
    mat = [[Fraction(cols[j][i]) for j in range(phid)] for i in range(phin)]
    pivots = []
    rows = []
    # pick independent rows greedily
    for i in range(phin):
        cand = rows + [mat[i]]
        if _rank(cand) == len(cand):
            rows = cand
            pivots.append(i)
        if len(rows) == phid:
            break
    inv = _invert(rows)
    return tuple(pivots), inv


def _rank(rows):
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _invert(rows):
    k = len(rows)
    m = [list(r) + [Fraction(int(i == j)) for j in range(k)] for i, r in enumerate(rows)]
    for c in range(k):
        piv = next(r for r in range(c, k) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [a / pv for a in m[c]]
        for r in range(k):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [row[k:] for row in m]


def _descend(x: CycNum, d: int) -> CycNum:
    pivots, inv = _descent_map(d, x.order)
    rhs = [x.coeffs[i] for i in pivots]
    out = tuple(_clean(sum((row[j] * rhs[j] for j in range(len(rhs))), Fraction(0))) for row in inv)
    return CycNum._raw(d, out)


class GaloisElement:
    """The automorphism zeta_n -> zeta_n^a of Q(zeta_n)."""

    __slots__ = ("order", "residue")

    def __init__(self, order: int, residue: int):
        residue %= order if order > 1 else 1
        if order > 2 and math.gcd(residue, order) != 1:
            raise ValueError(f"residue {residue} is not a unit mod {order}")
        if order <= 2:
            residue = 1
        self.order = order
        self.residue = residue

    def __call__(self, x: CycNum) -> CycNum:
        return galois_apply(self, x)

    def __repr__(self):
        return f"GaloisElement({self.order}, {self.residue})"

    def __eq__(self, other):
        return isinstance(other, GaloisElement) and (self.order, self.residue) == (other.order, other.residue)

    def __hash__(self):
        return hash((self.order, self.residue))


def galois_apply(sigma: GaloisElement, x: CycNum) -> CycNum:
    n = sigma.order
    if x.order != n:
        if n % x.order == 0:
            x = coerce(x, n)
        else:
            raise ValueError(f"Galois element of order {n} applied to order {x.order}")
    a = sigma.residue
    if a == 1:
        return x
    table = _power_table(n)
    phi = len(x.coeffs)
    out = [0] * phi
    for j, c in enumerate(x.coeffs):
        if c:
            row = table[(a * j) % n]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return CycNum._raw(n, tuple(_clean(c) for c in out))


def conjugate(x: CycNum) -> CycNum:
    if x.order <= 2:
        return x
    return galois_apply(GaloisElement(x.order, x.order - 1), x)


def is_real(x: CycNum) -> bool:
    return conjugate(x).coeffs == x.coeffs


def _orbit(x: CycNum) -> list[CycNum]:
    seen = {}
    for a in units_mod(x.order):
        y = galois_apply(GaloisElement(x.order, a), x)
        seen.setdefault(y.coeffs, y)
    return list(seen.values())


def degree_over_Q(x: CycNum) -> int:
    """[Q(x) : Q], the size of the Galois orbit of x."""
    return len(_orbit(x))


def _product(values, order) -> CycNum:
    acc = CycNum.rational(1, order)
    for v in values:
        acc = acc * v
    return acc


def norm_to_Q(x: CycNum) -> Fraction:
    """N_{Q(x)/Q}(x): the product of the distinct Galois conjugates of x."""
    if x.is_zero():
        raise ZeroDivisionError("norm of zero")
    return _product(_orbit(x), x.order).to_fraction()


def norm_full(x: CycNum) -> Fraction:
    """N_{Q(zeta_n)/Q}(x) with n = order(x): product over the whole Galois group."""
    if x.is_zero():
        raise ZeroDivisionError("norm of zero")
    imgs = (galois_apply(GaloisElement(x.order, a), x) for a in units_mod(x.order))
    return _product(imgs, x.order).to_fraction()


def norm_over_field(x: CycNum, f: int) -> Fraction:
    """Norm of x from a degree-f field containing it, via N(x)^(f/e)."""
    e = degree_over_Q(x)
    if f % e:
        raise ValueError(f"degree {e} of x does not divide field degree {f}")
    return norm_to_Q(x) ** (f // e)


# -- p-adic valuations --------------------------------------------------------


def _vp_int(p: int, n: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rational(p: int, q) -> int:
    q = Fraction(q)
    if q == 0:
        raise ValueError("v_p(0) is infinite")
    return _vp_int(p, abs(q.numerator)) - _vp_int(p, q.denominator)


def _prime_power_exponent(p: int, r: int) -> int:
    # t with r == p^t, or 0 if r is not a positive power of p
    t = 0
    while r % p == 0:
        r //= p
        t += 1
    return t if r == 1 and t > 0 else 0


def vp_one_minus_root(p: int, m: int, k: int) -> Fraction:
    """v_p(1 - zeta_m^k) for zeta_m^k != 1."""
    if k % m == 0:
        raise ValueError("1 - zeta_m^k vanishes when m divides k")
    r = m // math.gcd(m, k)
    t = _prime_power_exponent(p, r)
    if t == 0:
        return Fraction(0)
    return Fraction(1, p ** (t - 1) * (p - 1))


def _check_dprime(m: int, d) -> None:
    if len(d) != 4:
        raise ValueError("index tuple must have four entries")
    k1, k2, k3, k4 = d
    if not all(1 <= k <= m - 1 for k in d) or k1 + k2 != k3 + k4:
        raise ValueError(f"{tuple(d)} is not in D'_{m}")


def vp_fm(p: int, m: int, d) -> Fraction:
    _check_dprime(m, d)
    k1, k2, k3, k4 = d
    return (
        vp_one_minus_root(p, m, k1)
        + vp_one_minus_root(p, m, k2)
        - vp_one_minus_root(p, m, k3)
        - vp_one_minus_root(p, m, k4)
    )


# -- exact signs --------------------------------------------------------------

_FLOAT_SLACK = 1e-11


def _float_sign(x: CycNum, imag: bool) -> int:
    """Sign from the double-precision embedding, or 0 when too close to call."""
    z = x.approx()
    v = z.imag if imag else z.real
    # rounding error of approx() is far below the slack for any sane l1
    if abs(v) > _FLOAT_SLACK * (1.0 + x.l1()):
        return 1 if v > 0 else -1
    return 0


def _interval_sign(x: CycNum, imag: bool) -> int:
    n = x.order
    iv = mpmath.iv
    saved = iv.prec
    fn = iv.sin if imag else iv.cos
    prec = 64
    try:
        while prec <= 1 << 16:
            iv.prec = prec
            two_pi = 2 * iv.pi
            acc = iv.mpf(0)
            for j, c in enumerate(x.coeffs):
                if c:
                    q = Fraction(c)
                    acc += iv.mpf(q.numerator) / q.denominator * fn(two_pi * j / n)
            if acc.a > 0:
                return 1
            if acc.b < 0:
                return -1
            prec *= 2
    finally:
        iv.prec = saved
    raise ArithmeticError("sign refinement did not terminate")


def sign_re(x: CycNum) -> int:
    """Exact sign of the real part of x."""
    s = _float_sign(x, imag=False)
    if s:
        return s
    if (x + conjugate(x)).is_zero():
        return 0
    return _interval_sign(x, imag=False)


def sign_im(x: CycNum) -> int:
    """Exact sign of the imaginary part of x."""
    s = _float_sign(x, imag=True)
    if s:
        return s
    if is_real(x):
        return 0
    return _interval_sign(x, imag=True)


def sign_of_real(x: CycNum) -> int:
    if not is_real(x):
        raise ValueError(f"sign_of_real called on non-real {x!r}")
    s = _float_sign(x, imag=False)
    if s:
        return s
    if x.is_zero():
        return 0
    return _interval_sign(x, imag=False)


# -- serialization ------------------------------------------------------------


def _frac_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_json(x: CycNum) -> dict:
    return {"n": x.order, "coeffs": [_frac_str(c) for c in x.coeffs]}


def from_json(obj) -> CycNum:
    if isinstance(obj, CycNum):
        return obj
    if isinstance(obj, (int, str, Fraction)):
        return CycNum.rational(Fraction(obj))
    return CycNum(int(obj["n"]), [Fraction(c) if isinstance(c, str) else c for c in obj["coeffs"]])
