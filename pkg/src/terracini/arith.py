"""Exact arithmetic over a prime field and its dual-number extension.

Field elements are plain Python ints reduced into ``range(p)``; the prime is
carried by a :class:`FieldContext` (or passed explicitly as ``p``).  A
:class:`Dual` is ``a + b*eps`` with ``eps**2 == 0`` and both parts in F_p.

Univariate polynomials are lists of coefficients, lowest degree first, with
no trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import CompositeModulus, NoRoot, SplittingFailure

MERSENNE_61 = (1 << 61) - 1

_SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_probable_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin with ``rounds`` bases drawn deterministically from ``n``."""
    if n < 2:
        return False
    if n in (2, 3):
        return True
    if n % 2 == 0:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    s, t = 0, n - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    rng = random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        y = pow(a, t, n)
        if y in (1, n - 1):
            continue
        for _ in range(s - 1):
            y = y * y % n
            if y == n - 1:
                break
        else:
            return False
    return True


def derive_seed(seed: int, *labels) -> int:
    """Split a 64-bit seed deterministically by a tuple of labels."""
    h = hashlib.blake2b(digest_size=8)
    h.update(repr((int(seed),) + tuple(labels)).encode())
    return int.from_bytes(h.digest(), "big")


def random_primes(count: int, seed: int, lo: int = 1 << 60, hi: int = 1 << 61) -> list[int]:
    """``count`` distinct primes in ``(lo, hi)``, chosen from ``seed``."""
    rng = random.Random(derive_seed(seed, "primes"))
    primes: list[int] = []
    while len(primes) < count:
        q = rng.randrange(lo, hi) | 1
        while q < hi and not is_probable_prime(q):
            q += 2
        if q < hi and q not in primes:
            primes.append(q)
    return primes


@dataclass(frozen=True)
class FieldContext:
    """A prime field F_p plus a splittable deterministic random stream."""

    p: int
    seed: int = 0

    def rng(self, *labels) -> random.Random:
        return random.Random(derive_seed(self.seed, self.p, *labels))

    def child(self, *labels) -> "FieldContext":
        return FieldContext(self.p, derive_seed(self.seed, *labels))

    def with_prime(self, p: int) -> "FieldContext":
        return field_context(p, self.seed)


def field_context(prime: int, seed: int = 0) -> FieldContext:
    if prime < 3 or not is_probable_prime(prime):
        raise CompositeModulus(f"{prime} is not an odd prime")
    return FieldContext(int(prime), int(seed) & ((1 << 64) - 1))


class Dual:
    """Element ``a + b*eps`` of F_p[eps]/(eps^2)."""

    __slots__ = ("a", "b", "p")

    def __init__(self, a: int, b: int, p: int):
        self.a = a % p
        self.b = b % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Dual):
            return other.a, other.b
        return other, 0

    def __add__(self, other):
        c, d = self._coerce(other)
        return Dual(self.a + c, self.b + d, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        c, d = self._coerce(other)
        return Dual(self.a - c, self.b - d, self.p)

    def __rsub__(self, other):
        c, d = self._coerce(other)
        return Dual(c - self.a, d - self.b, self.p)

    def __mul__(self, other):
        c, d = self._coerce(other)
        return Dual(self.a * c, self.a * d + self.b * c, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Dual(-self.a, -self.b, self.p)

    def __mod__(self, p):
        # parts are always reduced; lets ring-generic code write ``(x * y) % p``
        return self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.a == 0:
            return Dual(0, self.b if k == 1 else 0, self.p) if k else Dual(1, 0, self.p)
        ak1 = pow(self.a, k - 1, self.p) if k else 0
        return Dual(ak1 * self.a if k else 1, k * ak1 * self.b, self.p)

    def inverse(self) -> "Dual":
        if self.a == 0:
            raise ZeroDivisionError("dual number with zero constant part is not invertible")
        ai = pow(self.a, -1, self.p)
        return Dual(ai, -ai * ai * self.b, self.p)

    def __truediv__(self, other):
        if isinstance(other, Dual):
            return self * other.inverse()
        return self * pow(other, -1, self.p)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        c, d = self._coerce(other)
        return self.a == c % self.p and self.b == d % self.p

    def __hash__(self):
        return hash((self.a, self.b, self.p))

    def __repr__(self):
        return f"Dual({self.a}, {self.b}, p={self.p})"

    def sqrt(self) -> "Dual":
        r = sqrt_mod(self.a, self.p)
        if r == 0:
            if self.b:
                raise NoRoot("eps-part nonzero over a zero constant part")
            return Dual(0, 0, self.p)
        return Dual(r, self.b * pow(2 * r, -1, self.p), self.p)


def residue(v) -> int:
    """Constant part of a field element or dual number."""
    return v.a if isinstance(v, Dual) else v


def eps_part(v) -> int:
    return v.b if isinstance(v, Dual) else 0


def inverse(v, p: int):
    if isinstance(v, Dual):
        return v.inverse()
    if v % p == 0:
        raise ZeroDivisionError("zero is not invertible")
    return pow(v, -1, p)


def lift(v, p: int, direction: int = 0) -> Dual:
    return Dual(v, direction, p)


# ---------------------------------------------------------------- square roots


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> int:
    """Tonelli-Shanks; returns the smaller of the two roots.

    Raises :class:`NoRoot` for a quadratic nonresidue.
    """
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise NoRoot(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while legendre(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


# ------------------------------------------------------ univariate polynomials


def poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_deg(f: list[int]) -> int:
    return len(f) - 1


def poly_add(f, g, p):
    n = max(len(f), len(g))
    return poly_trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def poly_sub(f, g, p):
    n = max(len(f), len(g))
    return poly_trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def poly_scale(f, c, p):
    return poly_trim([a * c % p for a in f])


def poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly_trim([c % p for c in out])


def poly_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = [c % p for c in f]
    poly_trim(r)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    inv_lead = pow(g[-1], -1, p)
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg] * inv_lead % p
        q[k] = c
        if c:
            for j in range(dg + 1):
                r[k + j] = (r[k + j] - c * g[j]) % p
    return poly_trim(q), poly_trim(r[:dg])


def poly_mod(f, g, p):
    return poly_divmod(f, g, p)[1]


def poly_monic(f, p):
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def poly_gcd(f, g, p):
    """Monic gcd (``[]`` when both inputs are zero)."""
    a, b = poly_trim(list(f)), poly_trim(list(g))
    while b:
        a, b = b, poly_mod(a, b, p)
    return poly_monic(a, p)


def poly_powmod(base, e, mod, p):
    result = [1]
    base = poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = poly_mod(poly_mul(base, base, p), mod, p)
    return result


def poly_eval(f, t, p):
    """Horner evaluation; ``t`` may be an int or a :class:`Dual`."""
    acc = 0
    for c in reversed(f):
        acc = (acc * t + c) % p
    return acc


def poly_deriv(f, p):
    return poly_trim([i * f[i] % p for i in range(1, len(f))])


def interpolate(xs, ys, p):
    """Lagrange interpolation through ``(xs[i], ys[i])`` with distinct field nodes."""
    n = len(xs)
    # master polynomial prod (X - x_i)
    master = [1]
    for x in xs:
        master = poly_mul(master, [-x % p, 1], p)
    result = [0] * n
    for i, x in enumerate(xs):
        if ys[i] % p == 0:
            continue
        num, _ = poly_divmod(master, [-x % p, 1], p)
        denom = poly_eval(num, x, p)
        c = ys[i] * pow(denom, -1, p) % p
        for k, a in enumerate(num):
            result[k] = (result[k] + c * a) % p
    return poly_trim(result)


def _split_linear(g, p, rng, out):
    """Append the roots of ``g`` (monic, squarefree, all roots in F_p) to ``out``."""
    if len(g) == 1:
        return
    if len(g) == 2:
        out.append(-g[0] % p)
        return
    for _ in range(64):
        a = rng.randrange(p)
        h = poly_powmod([a, 1], (p - 1) // 2, g, p)
        h = poly_sub(h, [1], p)
        d = poly_gcd(g, h, p)
        if 1 < len(d) < len(g):
            _split_linear(d, p, rng, out)
            _split_linear(poly_divmod(g, d, p)[0], p, rng, out)
            return
    raise SplittingFailure(f"equal-degree splitting failed on a degree {len(g) - 1} factor")


@lru_cache(maxsize=4096)
def _roots_cached(coeffs: tuple, p: int) -> tuple:
    f = poly_monic(list(coeffs), p)
    xp = poly_powmod([0, 1], p, f, p)
    g = poly_gcd(f, poly_sub(xp, [0, 1], p), p)
    roots: list[int] = []
    _split_linear(g, p, random.Random(derive_seed(0, "split", coeffs, p)), roots)
    mult = {}
    for r in sorted(roots):
        m, rest = 0, f
        while True:
            q, rem = poly_divmod(rest, [-r % p, 1], p)
            if rem:
                break
            m, rest = m + 1, q
        mult[r] = m
    return tuple(mult.items())


def roots_in_field(f, p: int) -> dict[int, int]:
    """Roots of ``f`` lying in F_p, mapped to their multiplicities."""
    f = poly_trim([c % p for c in f])
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    if len(f) == 1:
        return {}
    return dict(_roots_cached(tuple(f), p))
