"""Exact arithmetic in cyclotomic fields Q(zeta_n), n in {3, 4, 5, 12, 15, 20}.

Elements are stored as an integer coordinate vector over a common positive
denominator in the power basis 1, z, ..., z^(phi(n)-1).

Subfield embeddings always send zeta_m to zeta_n^(n/m). In particular
zeta_5 -> zeta_20^4, i -> zeta_20^5, zeta_5 -> zeta_15^3, zeta_3 -> zeta_15^5.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator

import sympy

from . import kernels
from .exactmath import Poly, format_rational, parse_rational

SUPPORTED_CONDUCTORS = (3, 4, 5, 12, 15, 20)

# constant term first
_PHI_TABLE = {
    3: (1, 1, 1),
    4: (1, 0, 1),
    5: (1, 1, 1, 1, 1),
    12: (1, 0, -1, 0, 1),
    15: (1, -1, 0, 1, -1, 1, 0, -1, 1),
    20: (1, 0, -1, 0, 1, 0, -1, 0, 1),
}


class IncompatibleFieldsError(ValueError):
    pass


class BadPrimeError(ValueError):
    pass


class OracleExhaustedError(RuntimeError):
    """No certificate could be produced within the configured prime/lift caps."""


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Poly:
    """Phi_n via x^n - 1 = prod_{d | n} Phi_d (integer coefficients)."""
    num = Poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            q, r = _int_divrem(num, cyclotomic_poly(d))
            assert r.is_zero()
            num = q
    return num


def _int_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    from .exactmath import poly_divrem

    q, r = poly_divrem(a, b)
    return q.map(lambda c: int(c) if Fraction(c).denominator == 1 else c), r


@dataclass(frozen=True)
class OracleConfig:
    prime_cap: int = 200
    lift_cap: int = 64

    @classmethod
    def from_env(cls) -> "OracleConfig":
        cap = os.environ.get("TORSION5_PRIME_CAP")
        return cls(prime_cap=int(cap)) if cap else cls()


class CycloField:
    """Q(zeta_n) as Q[z]/(Phi_n)."""

    def __init__(self, n: int):
        if n not in SUPPORTED_CONDUCTORS:
            raise ValueError(f"unsupported conductor {n}; expected one of {SUPPORTED_CONDUCTORS}")
        phi = _PHI_TABLE[n]
        if list(phi) != [int(c) for c in cyclotomic_poly(n).coeffs]:
            raise AssertionError(f"hard-coded Phi_{n} disagrees with the classical formula")
        self.n = n
        self.conductor = n
        self.modulus = Poly(phi)
        self.degree = len(phi) - 1
        d = self.degree
        # z^m for m in [0, max(n, 2d-1)) as integer vectors
        pows = [[int(i == m) for i in range(d)] for m in range(d)]
        while len(pows) < max(n, 2 * d - 1):
            prev = pows[-1]
            top = prev[-1]
            nxt = [0] + prev[:-1]
            if top:
                nxt = [nxt[i] - top * phi[i] for i in range(d)]
            pows.append(nxt)
        self._pow = pows
        self._red = pows[d : 2 * d - 1]
        self.units = tuple(k for k in range(1, n) if math.gcd(k, n) == 1)
        assert len(self.units) == d

    def __repr__(self) -> str:
        return f"CycloField({self.n})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CycloField) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("cyclo", self.n))

    @property
    def base(self) -> "CycloField":
        return self

    @property
    def absolute_degree(self) -> int:
        return self.degree

    def __call__(self, value: Any) -> "CycloElement":
        if isinstance(value, CycloElement):
            if value.field == self:
                return value
            return embed_subfield(value, self)
        q = Fraction(value)
        return CycloElement(self, [q.numerator] + [0] * (self.degree - 1), q.denominator)

    def zero(self) -> "CycloElement":
        return self(0)

    def one(self) -> "CycloElement":
        return self(1)

    @property
    def gen(self) -> "CycloElement":
        return self.zeta_power(1)

    def zeta_power(self, m: int) -> "CycloElement":
        return CycloElement(self, self._pow[m % self.n], 1)

    def root_of_unity(self, order: int) -> "CycloElement":
        """The fixed primitive ``order``-th root zeta_n^(n/order)."""
        if self.n % order:
            raise IncompatibleFieldsError(f"zeta_{order} is not in Q(zeta_{self.n})")
        return self.zeta_power(self.n // order)

    def from_coords(self, coords) -> "CycloElement":
        fr = [Fraction(c) for c in coords]
        if len(fr) != self.degree:
            raise ValueError("wrong number of coordinates")
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return CycloElement(self, [int(c * den) for c in fr], den)

    def to_json(self) -> dict:
        return {"conductor": self.n}


@lru_cache(maxsize=None)
def cyclo_field(n: int) -> CycloField:
    return CycloField(n)


class CycloElement:
    __slots__ = ("field", "num", "den")

    def __init__(self, fld: CycloField, num, den: int = 1):
        num = list(num)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = den
        for c in num:
            if g == 1:
                break
            g = math.gcd(g, c)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.field = fld
        self.num = tuple(num)
        self.den = den

    # -- basic protocol
    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloElement):
            return self.field == other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return self.is_rational() and Fraction(self.num[0], self.den) == q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.n, self.num, self.den))

    def __repr__(self) -> str:
        return f"CycloElement({self.field.n}, {self})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            terms.append(f"({format_rational(c)}){('*' + mono) if mono else ''}")
        return " + ".join(terms) if terms else "0"

    def _lift(self, other: Any) -> "CycloElement | None":
        if isinstance(other, CycloElement):
            if other.field != self.field:
                raise IncompatibleFieldsError(f"Q(zeta_{self.field.n}) vs Q(zeta_{other.field.n})")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    # -- arithmetic
    def __add__(self, other: Any):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return CycloElement(self.field, [a + b for a, b in zip(self.num, o.num)], self.den)
        return CycloElement(
            self.field, [a * o.den + b * self.den for a, b in zip(self.num, o.num)], self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self) -> "CycloElement":
        return CycloElement(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other: Any):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloElement(self.field, [a * q.numerator for a in self.num], self.den * q.denominator)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prod = kernels.cyclo_mul(list(self.num), list(o.num), self.field._red)
        return CycloElement(self.field, prod, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Any):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return CycloElement(self.field, [a * q.denominator for a in self.num], self.den * q.numerator)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other: Any):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e: int) -> "CycloElement":
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def norm(self) -> Fraction:
        """Absolute norm N_{Q(zeta_n)/Q}."""
        prod = self
        for k in self.field.units[1:]:
            prod = prod * apply_automorphism(self, k)
        assert prod.is_rational()
        return Fraction(prod.num[0], prod.den)

    def inv(self) -> "CycloElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self.field(Fraction(self.den, self.num[0]))
        conj = self.field.one()
        for k in self.field.units[1:]:
            conj = conj * apply_automorphism(self, k)
        n = (self * conj)
        assert n.is_rational()
        return conj / Fraction(n.num[0], n.den)

    def conj(self, k: int) -> "CycloElement":
        return apply_automorphism(self, k)

    def to_json(self) -> dict:
        return {"conductor": self.field.n, "coords": [format_rational(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data: dict) -> "CycloElement":
        fld = cyclo_field(int(data["conductor"]))
        return fld.from_coords(parse_rational(c) for c in data["coords"])


def embed_subfield(e: CycloElement, target: CycloField) -> CycloElement:
    """Image of ``e`` under zeta_m -> zeta_n^(n/m)."""
    m, n = e.field.n, target.n
    if n % m:
        raise IncompatibleFieldsError(f"Q(zeta_{m}) is not a subfield of Q(zeta_{n})")
    step = n // m
    d = target.degree
    out = [0] * d
    for j, c in enumerate(e.num):
        if c:
            row = target._pow[(j * step) % n]
            for i in range(d):
                out[i] += c * row[i]
    return CycloElement(target, out, e.den)


def apply_automorphism(e: CycloElement, k: int) -> CycloElement:
    """The automorphism zeta_n -> zeta_n^k."""
    fld = e.field
    if math.gcd(k, fld.n) != 1:
        raise ValueError(f"exponent {k} is not coprime to {fld.n}")
    k %= fld.n
    if k == 1:
        return e
    d = fld.degree
    out = [0] * d
    for j, c in enumerate(e.num):
        if c:
            row = fld._pow[(j * k) % fld.n]
            for i in range(d):
                out[i] += c * row[i]
    return CycloElement(fld, out, e.den)


def automorphism_exponent(n: int, congruences: dict[int, int]) -> int:
    """Smallest k in (Z/n)^* with k = r (mod m) for every ``m: r`` given (CRT)."""
    for k in range(1, n):
        if math.gcd(k, n) == 1 and all(k % m == r % m for m, r in congruences.items()):
            return k
    raise ValueError(f"no unit mod {n} satisfies {congruences}")


# -- reduction modulo split primes ------------------------------------------

def reduce_mod_prime(e: CycloElement, p: int, root: int) -> int:
    """Image of ``e`` under z -> root in F_p (p = 1 mod n, root a root of Phi_n)."""
    n = e.field.n
    if not sympy.isprime(p):
        raise BadPrimeError(f"{p} is not prime")
    if p % n != 1:
        raise BadPrimeError(f"{p} is not 1 mod {n}: Phi_{n} does not split")
    if e.field.modulus(root) % p:
        raise BadPrimeError(f"{root} is not a root of Phi_{n} mod {p}")
    if e.den % p == 0:
        raise BadPrimeError(f"{p} divides a coordinate denominator")
    acc = 0
    for c in reversed(e.num):
        acc = (acc * root + c) % p
    return acc * pow(e.den, -1, p) % p


def phi_roots_mod(fld: CycloField, p: int) -> list[int]:
    """All roots of Phi_n mod p (p = 1 mod n), ordered by exponent of a primitive root."""
    g = int(sympy.primitive_root(p))
    r0 = pow(g, (p - 1) // fld.n, p)
    return [pow(r0, k, p) for k in fld.units]


def split_primes(modulus: int, start: int = 2) -> Iterator[int]:
    """Primes p = 1 (mod modulus), increasing, p >= start."""
    k = max(1, (start - 2) // modulus + 1)
    while True:
        p = k * modulus + 1
        if sympy.isprime(p):
            yield p
        k += 1


# -- power-residue oracles ------------------------------------------------

@dataclass
class ResidueCertificate:
    """Verifiable answer to "is ``element`` an ell-th power in its field?".

    A yes-certificate carries the exact root. A no-certificate names a prime
    and a ring homomorphism to F_p (``phi_root`` plus, for towers, the images
    of the radicals) under which ``element`` maps to ``residue``, which is
    not an ell-th power mod p.
    """

    kind: str
    verdict: bool
    element: Any
    root: Any = None
    prime: int | None = None
    phi_root: int | None = None
    radical_images: tuple[int, ...] = ()
    residue: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ell(self) -> int:
        return 2 if self.kind == "square" else 3

    def verify(self) -> bool:
        if self.verdict:
            return self.root is not None and self.root ** self.ell == self.element
        p = self.prime
        if p is None or (p - 1) % self.ell:
            return False
        img = reduce_any_mod_prime(self.element, p, self.phi_root, self.radical_images)
        return img == self.residue and img != 0 and pow(img, (p - 1) // self.ell, p) != 1

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, "verdict": "yes" if self.verdict else "no",
                               "element": self.element.to_json()}
        if self.verdict:
            out["witness"] = {"root": self.root.to_json()}
        else:
            out["witness"] = {"prime": self.prime, "phi_root": self.phi_root,
                              "radical_images": list(self.radical_images), "residue": self.residue}
        return out


def reduce_any_mod_prime(e: Any, p: int, phi_root: int, radical_images=()) -> int:
    """Reduce a cyclotomic or tower element along a chosen homomorphism to F_p."""
    if isinstance(e, CycloElement):
        return reduce_mod_prime(e, p, phi_root)
    return e.reduce_mod_prime(p, phi_root, tuple(radical_images))


def _ratrecon(a: int, m: int) -> Fraction | None:
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1, s0, s1 = m, a, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(s1, m) != 1:
        return None
    return Fraction(r1, s1)


def _hensel_root(poly_coeffs: list[int], x: int, mod: int) -> int:
    """Newton-lift a simple root of an integer polynomial to ``mod``."""
    deriv = [k * c for k, c in enumerate(poly_coeffs)][1:]

    def ev(cs, v):
        acc = 0
        for c in reversed(cs):
            acc = (acc * v + c) % mod
        return acc

    for _ in range(mod.bit_length() + 2):
        f = ev(poly_coeffs, x)
        if f == 0:
            return x
        x = (x - f * pow(ev(deriv, x), -1, mod)) % mod
    assert ev(poly_coeffs, x) == 0
    return x


def _mat_inv_mod(mat: list[list[int]], mod: int) -> list[list[int]]:
    n = len(mat)
    aug = [row[:] + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if math.gcd(aug[r][col], mod) == 1)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, mod)
        aug[col] = [v * inv % mod for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(v - f * w) % mod for v, w in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _ell_roots_mod_p(a: int, ell: int, p: int) -> list[int]:
    return sorted(int(r) for r in sympy.ntheory.residue_ntheory.nthroot_mod(a, ell, p, all_roots=True))


def _reconstruct_root(e: CycloElement, ell: int, p: int, roots: list[int], lift_cap: int) -> CycloElement | None:
    fld = e.field
    d = fld.degree
    phi = list(fld.modulus.coeffs)
    base_vals = [reduce_mod_prime(e, p, r) for r in roots]
    base_cands = [_ell_roots_mod_p(v, ell, p) for v in base_vals]
    # ell-th roots of unity in the field make the first choice free
    if ell == 2 or fld.n % ell == 0:
        base_cands[0] = base_cands[0][:1]
    k = 1
    while k <= lift_cap:
        mod = p**k
        rts = [_hensel_root(phi, r, mod) for r in roots]
        inv_den = pow(e.den, -1, mod)
        vals = []
        for r in rts:
            acc = 0
            for c in reversed(e.num):
                acc = (acc * r + c) % mod
            vals.append(acc * inv_den % mod)
        cands = [
            [_hensel_root([-v] + [0] * (ell - 1) + [1], w, mod) for w in ws]
            for v, ws in zip(vals, base_cands)
        ]
        vinv = _mat_inv_mod([[pow(r, i, mod) for i in range(d)] for r in rts], mod)
        row0 = vinv[0]
        for combo in itertools.product(*cands):
            c0 = _ratrecon(sum(a * b for a, b in zip(row0, combo)), mod)
            if c0 is None:
                continue
            coords = [c0]
            for i in range(1, d):
                ci = _ratrecon(sum(a * b for a, b in zip(vinv[i], combo)), mod)
                if ci is None:
                    break
                coords.append(ci)
            else:
                w = fld.from_coords(coords)
                if w**ell == e:
                    return w
        k *= 2
    return None


_LOOKAHEAD = 4


def power_residue(e: CycloElement, ell: int, config: OracleConfig | None = None) -> ResidueCertificate:
    """Decide whether ``e`` is an ell-th power (ell in {2, 3}) in its cyclotomic field."""
    if ell not in (2, 3):
        raise ValueError("only squares and cubes are supported")
    if e.is_zero():
        raise ValueError("zero has no residue certificate")
    config = config or OracleConfig.from_env()
    kind = "square" if ell == 2 else "cube"
    fld = e.field
    mod = math.lcm(fld.n, ell, 2)
    passed = 0
    for tried, p in enumerate(split_primes(mod, start=3)):
        if tried >= config.prime_cap:
            break
        if e.den % p == 0:
            continue
        roots = phi_roots_mod(fld, p)
        vals = [reduce_mod_prime(e, p, r) for r in roots]
        if 0 in vals:
            continue
        for r, v in zip(roots, vals):
            if pow(v, (p - 1) // ell, p) != 1:
                return ResidueCertificate(kind, False, e, prime=p, phi_root=r, residue=v)
        # lifting is the expensive part; a few more primes settle most "no" cases first
        passed += 1
        if passed < _LOOKAHEAD:
            continue
        w = _reconstruct_root(e, ell, p, roots, config.lift_cap)
        if w is not None:
            if ell == 2 and next(c for c in w.num if c) < 0:
                w = -w
            return ResidueCertificate(kind, True, e, root=w)
    raise OracleExhaustedError(f"no {kind} certificate for {e!r} within {config.prime_cap} primes")


def is_square(e: Any, config: OracleConfig | None = None) -> ResidueCertificate:
    if isinstance(e, CycloElement):
        return power_residue(e, 2, config)
    return e.field.power_residue(e, 2, config)


def is_cube(e: Any, config: OracleConfig | None = None) -> ResidueCertificate:
    if isinstance(e, CycloElement):
        return power_residue(e, 3, config)
    return e.field.power_residue(e, 3, config)


def screen(e: CycloElement, ell: int, count: int = 10, start: int = 2**32) -> list[tuple[int, bool]]:
    """Residue test at ``count`` word-size split primes (all embeddings each).

    Independent of the certificate search; used to cross-check verdicts.
    """
    out = []
    mod = math.lcm(e.field.n, ell, 2)
    for p in split_primes(mod, start=start):
        if len(out) == count:
            break
        if e.den % p == 0:
            continue
        vals = [reduce_mod_prime(e, p, r) for r in phi_roots_mod(e.field, p)]
        if 0 in vals:
            continue
        out.append((p, all(pow(v, (p - 1) // ell, p) == 1 for v in vals)))
    return out


def descend_to_subfield(e: CycloElement, target: CycloField) -> CycloElement | None:
    """Preimage of ``e`` under the embedding of ``target``, or None if e is not in it."""
    if e.field.n % target.n:
        raise IncompatibleFieldsError(f"Q(zeta_{target.n}) is not a subfield of Q(zeta_{e.field.n})")
    cols = [embed_subfield(target.zeta_power(j), e.field).coords for j in range(target.degree)]
    mat = sympy.Matrix([[cols[j][i] for j in range(target.degree)] for i in range(e.field.degree)])
    rhs = sympy.Matrix(list(e.coords))
    try:
        sol, params = mat.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    assert not params
    return target.from_coords(Fraction(int(q.p), int(q.q)) for q in sol)
