"""Short Weierstrass curves y^2 = x^3 + b x + c over exact fields."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .cyclofield import CycloElement, CycloField
from .exactmath import Poly, format_rational
from .radtower import TowerElement, TowerField, adjoin


class PointAtInfinity:
    """The identity of the group law; a singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    is_infinity = True

    def __repr__(self) -> str:
        return "O"

    def to_json(self) -> dict:
        return {"inf": True}


INFINITY = PointAtInfinity()


@dataclass(frozen=True, eq=False)
class AffinePoint:
    x: Any
    y: Any
    is_infinity = False

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AffinePoint) and self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((_descend(self.x), _descend(self.y)))

    def to_json(self) -> dict:
        return {"x": element_json(self.x), "y": element_json(self.y)}


Point = AffinePoint | PointAtInfinity


def _descend(e: Any) -> Any:
    return e.descend() if isinstance(e, TowerElement) else e


def element_json(e: Any) -> Any:
    if isinstance(e, (int, Fraction)):
        return format_rational(e)
    return e.to_json()


def field_of(*elems: Any):
    """The largest field among the owners of ``elems`` (None if all rational)."""
    best = None
    for e in elems:
        f = e.field if isinstance(e, (CycloElement, TowerElement)) else None
        if f is None:
            continue
        if best is None or (isinstance(f, TowerField) and f.contains_field(best)):
            best = f
    return best


class Curve:
    def __init__(self, b: Any = 0, c: Any = 0, family: str | None = None):
        b = Fraction(b) if isinstance(b, (int, str)) else b
        c = Fraction(c) if isinstance(c, (int, str)) else c
        if 4 * b * b * b + 27 * c * c == 0:
            raise ValueError("singular curve: 4b^3 + 27c^2 = 0")
        if family is None:
            family = "F1" if c == 0 else ("F2" if b == 0 else "general")
        if family == "F1" and c != 0 or family == "F2" and b != 0:
            raise ValueError(f"coefficients do not match family {family}")
        self.b, self.c, self.family = b, c, family

    def __repr__(self) -> str:
        return f"Curve(b={self.b}, c={self.c}, family={self.family})"

    def rhs(self, x: Any) -> Any:
        return x * x * x + self.b * x + self.c

    def on_curve(self, P: Point) -> bool:
        return P.is_infinity or P.y * P.y == self.rhs(P.x)

    def point(self, x: Any, y: Any) -> AffinePoint:
        P = AffinePoint(x, y)
        if not self.on_curve(P):
            raise ValueError("point is not on the curve")
        return P

    def neg(self, P: Point) -> Point:
        return P if P.is_infinity else AffinePoint(P.x, -P.y)

    def add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if P.y == -Q.y:
                return INFINITY
            lam = (3 * P.x * P.x + self.b) / (2 * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - P.x - Q.x
        y3 = lam * (P.x - x3) - P.y
        return AffinePoint(x3, y3)

    def sub(self, P: Point, Q: Point) -> Point:
        return self.add(P, self.neg(Q))

    def scalar_mul(self, n: int, P: Point) -> Point:
        if n < 0:
            return self.scalar_mul(-n, self.neg(P))
        result: Point = INFINITY
        addend = P
        while n:
            if n & 1:
                result = self.add(result, addend)
            addend = self.add(addend, addend)
            n >>= 1
        return result

    def order(self, P: Point, bound: int = 64) -> int | None:
        Q = P
        for k in range(1, bound + 1):
            if Q.is_infinity:
                return k
            Q = self.add(Q, P)
        return None

    def cm_endo(self, P: Point, power: int = 1) -> Point:
        """phi_1(x, y) = (-x, i y) on F1, phi_2(x, y) = (zeta_3 x, y) on F2."""
        if P.is_infinity:
            return P
        fld = field_of(P.x, P.y)
        if fld is None:
            raise ValueError("rational coordinates: the CM scalar is not in the field")
        base = fld.base if isinstance(fld, TowerField) else fld
        if self.family == "F1":
            i = base.root_of_unity(4)
            for _ in range(power % 4):
                P = AffinePoint(-P.x, i * P.y)
            return P
        if self.family == "F2":
            z3 = base.root_of_unity(3)
            for _ in range(power % 3):
                P = AffinePoint(z3 * P.x, P.y)
            return P
        raise ValueError("no CM endomorphism for a general curve")

    # -- division polynomials

    def division_poly(self, m: int) -> Poly:
        """psi_m for odd m; psi_m**2 for even m (so psi_2**2 = 4(x^3 + bx + c))."""
        if m < 1:
            raise ValueError("m must be positive")
        F = _division_polys(self.b, self.c, m)
        if m % 2:
            return F[m]
        f = Poly([self.c, self.b, 0, 1])
        return f * F[m] * F[m]

    # -- Weil pairing

    def weil_pairing(self, P: Point, Q: Point, m: int, seed: int = 0, retries: int = 16) -> Any:
        """e_m(P, Q) by Miller's algorithm with a shifted auxiliary point S."""
        if P.is_infinity or Q.is_infinity or P == Q:
            return 1
        fld = field_of(P.x, P.y, Q.x, Q.y)
        if fld is None:
            raise ValueError("pairing needs points over a cyclotomic or tower field")
        rng = random.Random(seed)
        for _ in range(retries):
            sx = Fraction(rng.randint(-30, 30), rng.randint(1, 7))
            rhs = self.rhs(sx)
            if rhs == 0:
                continue
            top, sy = adjoin(fld, "sqrt", rhs)
            S = AffinePoint(top(sx), sy)
            try:
                num1 = self._miller(P, self.add(Q, S), m)
                den1 = self._miller(P, S, m)
                num2 = self._miller(Q, self.neg(S), m)
                den2 = self._miller(Q, self.sub(P, S), m)
            except _Degenerate:
                continue
            val = (num1 * num2) / (den1 * den2)
            return _descend(val)
        raise RuntimeError("Weil pairing: every auxiliary point was degenerate")

    def _miller(self, P: AffinePoint, X: Point, m: int) -> Any:
        """f_P(X) where div f_P = m(P) - m(O)."""
        if X.is_infinity:
            raise _Degenerate
        acc: Any = 1
        T: Point = P
        for _ in range(m - 1):
            nxt = self.add(T, P)
            num = _line(self, T, P, X)
            den = 1 if nxt.is_infinity else X.x - nxt.x
            if num == 0 or den == 0:
                raise _Degenerate
            acc = acc * num / den
            T = nxt
        if not T.is_infinity:
            raise ValueError(f"point is not {m}-torsion")
        return acc


class _Degenerate(Exception):
    pass


def _line(C: Curve, A: AffinePoint, B: AffinePoint, X: AffinePoint) -> Any:
    if A.x == B.x and A.y == -B.y:
        return X.x - A.x
    if A == B:
        lam = (3 * A.x * A.x + C.b) / (2 * A.y)
    else:
        lam = (B.y - A.y) / (B.x - A.x)
    return X.y - A.y - lam * (X.x - A.x)


def _division_polys(b: Any, c: Any, m: int) -> list[Poly]:
    """Reduced division polynomials: psi_k = F_k for odd k, y * F_k for even k."""
    f = Poly([c, b, 0, 1])
    half = Fraction(1, 2)
    F: list[Poly] = [
        Poly(),
        Poly([1]),
        Poly([2]),
        Poly([-b * b, 12 * c, 6 * b, 0, 3]),
        Poly([-8 * c * c - b * b * b, -4 * b * c, -5 * b * b, 20 * c, 5 * b, 0, 1]) * 4,
    ]
    for n in range(5, m + 1):
        k = n // 2
        if n % 2:
            if k % 2 == 0:
                F.append(f * f * F[k + 2] * F[k] ** 3 - F[k - 1] * F[k + 1] ** 3)
            else:
                F.append(F[k + 2] * F[k] ** 3 - f * f * F[k - 1] * F[k + 1] ** 3)
        else:
            inner = F[k + 2] * F[k - 1] * F[k - 1] - F[k - 2] * F[k + 1] * F[k + 1]
            F.append(F[k] * inner * half)
    return F


# -- abscissa polynomials as printed -----------------------------------------

def printed_p5(b: Any, c: Any) -> Poly:
    return Poly([
        256 * c**4 + 32 * b**3 * c**2 - b**6,
        640 * b * c**3 + 100 * b**4 * c,
        240 * b**2 * c**2 + 50 * b**5,
        1600 * c**3 + 80 * b**3 * c,
        1920 * b * c**2 + 125 * b**4,
        696 * b**2 * c,
        240 * c**2 + 300 * b**3,
        -240 * b * c,
        105 * b**2,
        -380 * c,
        -62 * b,
        0,
        -5,
    ])


def printed_q5(b: Any) -> Poly:
    return Poly([-b**6, 0, 50 * b**5, 0, 125 * b**4, 0, 300 * b**3, 0, 105 * b**2, 0, -62 * b, 0, -5])


def printed_r5(c: Any) -> Poly:
    return Poly([256 * c**4, 0, 0, 1600 * c**3, 0, 0, 240 * c**2, 0, 0, -380 * c, 0, 0, -5])


def monic_equal(a: Poly, b: Poly) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.monic() == b.monic()
