"""Towers of square-root and cube-root extensions over a cyclotomic field.

A ``TowerField`` is one radical step ``t**k = radicand`` (k = 2 or 3) on
top of a field below, which is either another ``TowerField`` or a
``CycloField``. Elements store one coefficient from the field below per
power of ``t``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator

import sympy

from .cyclofield import (
    BadPrimeError,
    CycloElement,
    CycloField,
    OracleConfig,
    OracleExhaustedError,
    ResidueCertificate,
    phi_roots_mod,
    power_residue,
    reduce_mod_prime,
    split_primes,
)

KINDS = {"sqrt": 2, "cbrt": 3}


class TowerField:
    def __init__(self, below: "TowerField | CycloField", kind: str, radicand: Any):
        if kind not in KINDS:
            raise ValueError(f"unknown step kind {kind!r}")
        self.below = below
        self.kind = kind
        self.degree = KINDS[kind]
        self.radicand = below(radicand)
        if self.radicand == 0:
            raise ValueError("zero radicand")

    @property
    def base(self) -> CycloField:
        return self.below.base

    @property
    def steps(self) -> list[tuple[str, Any]]:
        prev = self.below.steps if isinstance(self.below, TowerField) else []
        return prev + [(self.kind, self.radicand)]

    @property
    def depth(self) -> int:
        return len(self.steps)

    @property
    def absolute_degree(self) -> int:
        return self.degree * self.below.absolute_degree

    def ancestors(self) -> list:
        """This field and every field below it, top first."""
        out: list = [self]
        f = self.below
        while isinstance(f, TowerField):
            out.append(f)
            f = f.below
        out.append(f)
        return out

    def __repr__(self) -> str:
        return f"TowerField({self.base.n}, steps={[k for k, _ in self.steps]})"

    def __call__(self, value: Any) -> "TowerElement":
        if isinstance(value, TowerElement):
            if value.field is self:
                return value
            if not self.contains_field(value.field):
                low = value.descend()
                if low is value:
                    raise ValueError("element does not lie in this tower")
                return self(low)
        low = self.below(value)
        zero = self.below(0)
        return TowerElement(self, [low] + [zero] * (self.degree - 1))

    def contains_field(self, other: Any) -> bool:
        return any(f is other or f == other for f in self.ancestors())

    def zero(self) -> "TowerElement":
        return self(0)

    def one(self) -> "TowerElement":
        return self(1)

    @property
    def gen(self) -> "TowerElement":
        zero, one = self.below(0), self.below(1)
        return TowerElement(self, [zero, one] + [zero] * (self.degree - 2))

    def element(self, coeffs) -> "TowerElement":
        return TowerElement(self, [self.below(c) for c in coeffs])

    def random_element(self, rng: random.Random, bound: int = 5) -> "TowerElement":
        return TowerElement(self, [_random_in(self.below, rng, bound) for _ in range(self.degree)])

    def to_json(self) -> dict:
        return {
            "conductor": self.base.n,
            "steps": [{"kind": k, "radicand": element_coords(r)} for k, r in self.steps],
        }

    def power_residue(self, e: "TowerElement", ell: int, config: OracleConfig | None = None) -> ResidueCertificate:
        return tower_power_residue(e, ell, config)


def _random_in(fld: Any, rng: random.Random, bound: int):
    if isinstance(fld, CycloField):
        return fld.from_coords(Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(fld.degree))
    return fld.random_element(rng, bound)


def element_coords(e: Any) -> list:
    """Nested coordinate arrays (rationals as strings)."""
    if isinstance(e, CycloElement):
        return e.to_json()["coords"]
    return [element_coords(c) for c in e.coeffs]


class TowerElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, fld: TowerField, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != fld.degree:
            raise ValueError("coordinate shape does not match the step degree")
        self.field = fld
        self.coeffs = coeffs

    def _pair(self, other: Any) -> "tuple[TowerElement, TowerElement] | None":
        """Both operands promoted to the larger of the two fields."""
        if isinstance(other, TowerElement):
            if other.field is self.field:
                return self, other
            if self.field.contains_field(other.field):
                return self, self.field(other)
            if other.field.contains_field(self.field):
                return other.field(self), other
            raise ValueError("elements of unrelated towers")
        if isinstance(other, (int, Fraction)):
            return self, self.field(other)
        if isinstance(other, CycloElement):
            if other.field != self.field.base:
                raise ValueError("element of a different cyclotomic base")
            return self, self.field(other)
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return all(x == y for x, y in zip(a.coeffs, b.coeffs))

    def __hash__(self) -> int:
        d = self.descend()
        if d is not self:
            return hash(d)
        return hash((id(self.field), self.coeffs))

    def descend(self) -> Any:
        """The same element in the lowest field of the chain containing it."""
        if all(c == 0 for c in self.coeffs[1:]):
            c = self.coeffs[0]
            return c.descend() if isinstance(c, TowerElement) else c
        return self

    def __repr__(self) -> str:
        return f"TowerElement({element_coords(self)})"

    def __add__(self, other: Any):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return TowerElement(a.field, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "TowerElement":
        return TowerElement(self.field, [-a for a in self.coeffs])

    def __sub__(self, other: Any):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return TowerElement(a.field, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other: Any):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return TowerElement(a.field, [y - x for x, y in zip(a.coeffs, b.coeffs)])

    def __mul__(self, other: Any):
        if isinstance(other, (int, Fraction)):
            return TowerElement(self.field, [a * other for a in self.coeffs])
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        a, b = pr
        return a._mul_same(b)

    __rmul__ = __mul__

    def _mul_same(self, o: "TowerElement") -> "TowerElement":
        k = self.field.degree
        a = self.field.radicand
        acc = [self.field.below(0)] * (2 * k - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(o.coeffs):
                if y != 0:
                    acc[i + j] = acc[i + j] + x * y
        out = acc[:k]
        for i in range(k, 2 * k - 1):
            if acc[i] != 0:
                out[i - k] = out[i - k] + a * acc[i]
        return TowerElement(self.field, out)

    def inv(self) -> "TowerElement":
        """Closed-form inverse through the relative norm of one radical step."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        a = self.field.radicand
        if self.field.degree == 2:
            u, v = self.coeffs
            n = u * u - a * v * v
            ninv = n.inv()
            return TowerElement(self.field, [u * ninv, -v * ninv])
        u, v, w = self.coeffs
        c0 = u * u - a * v * w
        c1 = a * w * w - u * v
        c2 = v * v - u * w
        n = u * c0 + a * (w * c1 + v * c2)
        ninv = n.inv()
        return TowerElement(self.field, [c0 * ninv, c1 * ninv, c2 * ninv])

    def __truediv__(self, other: Any):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        return pr[0]._mul_same(pr[1].inv())

    def __rtruediv__(self, other: Any):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        return pr[1]._mul_same(pr[0].inv())

    def __pow__(self, e: int) -> "TowerElement":
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

    def reduce_mod_prime(self, p: int, phi_root: int, radical_images: tuple[int, ...]) -> int:
        """Image under the homomorphism to F_p fixed by ``phi_root`` and the radical images."""
        if len(radical_images) != self.field.depth:
            raise ValueError("one radical image per tower step is required")
        t = radical_images[-1] % p
        below = radical_images[:-1]

        def red(x):
            if isinstance(x, CycloElement):
                return reduce_mod_prime(x, p, phi_root)
            return x.reduce_mod_prime(p, phi_root, below)

        if (pow(t, self.field.degree, p) - red(self.field.radicand)) % p:
            raise BadPrimeError("radical image does not satisfy the step equation")
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * t + red(c)) % p
        return acc

    def to_json(self) -> dict:
        return {"coords": element_coords(self), "depth": self.field.depth}


# -- extension ------------------------------------------------------------

@dataclass
class Degenerate:
    """Outcome of ``extend`` when the radicand already has a root below."""

    field: Any
    root: Any
    certificate: ResidueCertificate


def extend(fld: Any, kind: str, radicand: Any, config: OracleConfig | None = None):
    """Adjoin a square or cube root of ``radicand``.

    Returns a new ``TowerField`` of relative degree 2 or 3, or ``Degenerate``
    carrying the exact root when the radicand is already a square/cube.
    """
    ell = KINDS[kind]
    r = fld(radicand)
    if r == 0:
        raise ValueError("zero radicand")
    cert = residue(r, ell, config)
    if cert.verdict:
        return Degenerate(fld, cert.root, cert)
    return TowerField(fld, kind, r)


def adjoin(fld: Any, kind: str, radicand: Any, config: OracleConfig | None = None):
    """``extend`` flattened to ``(field, root)``; the root lives in the returned field."""
    out = extend(fld, kind, radicand, config)
    if isinstance(out, Degenerate):
        return out.field, out.root
    return out, out.gen


def absolute_degree(fld: Any) -> int:
    return fld.absolute_degree


def residue(e: Any, ell: int, config: OracleConfig | None = None) -> ResidueCertificate:
    if isinstance(e, CycloElement):
        return power_residue(e, ell, config)
    return tower_power_residue(e, ell, config)


# -- roots in towers ------------------------------------------------------

def _root(e: Any, ell: int, config: OracleConfig | None) -> Any:
    """An ell-th root of ``e`` in its own field, or None."""
    if isinstance(e, CycloElement):
        return power_residue(e, ell, config).root
    T = e.field
    k = T.degree
    a = T.radicand
    rest_zero = all(c == 0 for c in e.coeffs[1:])
    u = e.coeffs[0]
    if rest_zero:
        r = _root(u, ell, config)
        if r is not None:
            return T(r)
        if ell == 2 and k == 3:
            # odd relative degree: no new square roots of elements below
            return None
        if ell == 3 and k == 2:
            return None
        # t**j * s with s below (Kummer)
        if ell == 3 and T.base.n % 3:
            raise NotImplementedError("cube roots across a cube step need zeta_3 in the base")
        for j in range(1, k):
            r = _root(u / a**j, ell, config)
            if r is not None:
                return T(r) * T.gen**j
        return None
    if ell == 2 and k == 2:
        v = e.coeffs[1]
        n0 = _root(u * u - a * v * v, 2, config)
        if n0 is None:
            return None
        for sgn in (1, -1):
            h = (u + sgn * n0) / 2
            if h == 0:
                continue
            s = _root(h, 2, config)
            if s is None:
                continue
            r = TowerElement(T, [s, v / (2 * s)])
            if r * r == e:
                return r
        return None
    raise NotImplementedError(f"{'square' if ell == 2 else 'cube'} roots of general elements across a "
                              f"{'cube' if k == 3 else 'square'} step")


def _homomorphisms(fld: Any, p: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    if isinstance(fld, CycloField):
        for r in phi_roots_mod(fld, p):
            yield r, ()
        return
    for r, imgs in _homomorphisms(fld.below, p):
        try:
            a = fld.radicand
            img = reduce_mod_prime(a, p, r) if isinstance(a, CycloElement) else a.reduce_mod_prime(p, r, imgs)
        except BadPrimeError:
            continue
        if img == 0:
            continue
        for t in sorted(int(x) for x in sympy.ntheory.residue_ntheory.nthroot_mod(img, fld.degree, p, all_roots=True) or []):
            yield r, imgs + (t,)


def tower_power_residue(e: TowerElement, ell: int, config: OracleConfig | None = None) -> ResidueCertificate:
    if ell not in (2, 3):
        raise ValueError("only squares and cubes are supported")
    if e == 0:
        raise ValueError("zero has no residue certificate")
    config = config or OracleConfig.from_env()
    kind = "square" if ell == 2 else "cube"
    r = _root(e, ell, config)
    if r is not None:
        return ResidueCertificate(kind, True, e, root=r)
    fld = e.field
    mod = math.lcm(fld.base.n, ell, 2, *(KINDS[k] for k, _ in fld.steps))
    for tried, p in enumerate(split_primes(mod, start=3)):
        if tried >= config.prime_cap:
            break
        for phi_root, imgs in _homomorphisms(fld, p):
            try:
                v = e.reduce_mod_prime(p, phi_root, imgs)
            except BadPrimeError:
                continue
            if v and pow(v, (p - 1) // ell, p) != 1:
                return ResidueCertificate(kind, False, e, prime=p, phi_root=phi_root,
                                          radical_images=imgs, residue=v)
    raise OracleExhaustedError(f"no {kind} certificate within {config.prime_cap} primes")
