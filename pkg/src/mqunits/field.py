"""Exact arithmetic in multiquadratic fields Q(sqrt(d1), ..., sqrt(dk)).

An element is a rational combination of the surds sqrt(r), where r runs over
the squarefree parts of the 2^k subset products of the generators.  sqrt(r)
for negative r means i*sqrt(|r|), so CM fields use the same machinery with a
negative radicand (conventionally -1, listed last) among the generators.

Everything is exact: coefficients are Fractions, products reduce through the
precomputed structure constants sqrt(r1)*sqrt(r2) = c*sqrt(r3), square roots
are extracted by recursive descent through the quadratic tower, and real
signs are decided by adaptive rational bracketing of the surds.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .intarith import RationalInterval, is_perfect_square, sqrt_interval, squarefree_decompose


class FieldBasis:
    """The multiquadratic field generated by square roots of `generators`.

    Radicands are indexed by bitmask over the generator list: radicand(m) is
    the squarefree part of the product of the generators selected by m.
    Generators must be multiplicatively independent modulo squares, which
    makes the 2^k radicands distinct and the surds linearly independent.
    """

    def __init__(self, generators):
        generators = tuple(int(g) for g in generators)
        for g in generators:
            if g in (0, 1) or squarefree_decompose(g)[1] != 1:
                raise ValueError(f"generator {g} must be squarefree and != 0, 1")
        self.generators = generators
        self.k = len(generators)
        self.dim = 1 << self.k
        rads = []
        for m in range(self.dim):
            prod = 1
            for i in range(self.k):
                if m >> i & 1:
                    prod *= generators[i]
            rads.append(squarefree_decompose(prod)[0])
        for m in range(1, self.dim):
            if rads[m] == 1:
                raise ValueError("generators are multiplicatively dependent modulo squares")
        self.radicands = tuple(rads)
        self.mask_of = {r: m for m, r in enumerate(rads)}
        assert len(self.mask_of) == self.dim
        self.is_cm = any(r < 0 for r in rads)
        coef = []
        for m1 in range(self.dim):
            row = []
            for m2 in range(self.dim):
                r1, r2, r3 = rads[m1], rads[m2], rads[m1 ^ m2]
                t2 = r1 * r2 // r3
                t = math.isqrt(t2)
                assert t * t == t2
                row.append(-t if r1 < 0 and r2 < 0 else t)
            coef.append(tuple(row))
        self._coef = tuple(coef)
        self._sub = None

    @property
    def sub(self) -> "FieldBasis":
        """The subfield dropping the last generator (cached)."""
        assert self.k > 0
        if self._sub is None:
            self._sub = FieldBasis(self.generators[:-1])
        return self._sub

    def __eq__(self, other):
        return isinstance(other, FieldBasis) and self.generators == other.generators

    def __repr__(self):
        surds = ",".join(f"sqrt({g})" for g in self.generators)
        return f"Q({surds})" if surds else "Q"

    def zero(self) -> "FieldElement":
        return FieldElement(self, (Fraction(0),) * self.dim)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def from_rational(self, x) -> "FieldElement":
        coords = [Fraction(0)] * self.dim
        coords[0] = Fraction(x)
        return FieldElement(self, tuple(coords))

    def element(self, coords: dict) -> "FieldElement":
        """Build an element from {radicand: coefficient}."""
        out = [Fraction(0)] * self.dim
        for r, c in coords.items():
            out[self.mask_of[r]] += Fraction(c)
        return FieldElement(self, tuple(out))

    def surd(self, r: int) -> "FieldElement":
        """The basis surd sqrt(r) (i*sqrt(|r|) for negative r)."""
        return self.element({r: 1})


class FieldElement:
    """Immutable element of a multiquadratic field."""

    __slots__ = ("basis", "_coords")

    def __init__(self, basis: FieldBasis, coords: tuple):
        assert len(coords) == basis.dim
        self.basis = basis
        self._coords = coords

    @property
    def coords(self) -> dict:
        """Nonzero coefficients keyed by radicand."""
        rads = self.basis.radicands
        return {rads[m]: c for m, c in enumerate(self._coords) if c}

    def is_zero(self) -> bool:
        return not any(self._coords)

    def is_rational(self) -> bool:
        return not any(self._coords[1:])

    def rational_value(self) -> Fraction:
        assert self.is_rational()
        return self._coords[0]

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.basis == other.basis and self._coords == other._coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self._coords[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.basis.generators, self._coords))

    def _lift(self, other):
        if isinstance(other, (int, Fraction)):
            return self.basis.from_rational(other)
        if isinstance(other, FieldElement):
            if other.basis != self.basis:
                raise ValueError("elements belong to different bases")
            return other
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.basis, tuple(a + b for a, b in zip(self._coords, other._coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.basis, tuple(a - b for a, b in zip(self._coords, other._coords)))

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return FieldElement(self.basis, tuple(-a for a in self._coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.basis, tuple(a * other for a in self._coords))
        other = self._lift(other)
        if other is None:
            return NotImplemented
        dim = self.basis.dim
        coef = self.basis._coef
        out = [Fraction(0)] * dim
        for m1, x in enumerate(self._coords):
            if not x:
                continue
            row = coef[m1]
            for m2, y in enumerate(other._coords):
                if not y:
                    continue
                out[m1 ^ m2] += x * y * row[m2]
        return FieldElement(self.basis, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.basis.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj_gen(self, j: int) -> "FieldElement":
        """Conjugate sending sqrt(g_j) to -sqrt(g_j)."""
        return FieldElement(
            self.basis,
            tuple(-c if m >> j & 1 else c for m, c in enumerate(self._coords)),
        )

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse via the product of all Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverting zero field element")
        v = self
        cof = self.basis.one()
        for j in range(self.basis.k):
            w = v.conj_gen(j)
            cof = cof * w
            v = v * w
        assert v.is_rational()
        return cof * (Fraction(1) / v.rational_value())

    def __repr__(self):
        return f"<{serialize_element(self)} in {self.basis!r}>"


class Automorphism:
    """Galois automorphism given by a sign for each generator's square root."""

    def __init__(self, signs: dict):
        for g, s in signs.items():
            if s not in (-1, 1):
                raise ValueError(f"sign for {g} must be +-1")
        self.signs = dict(signs)

    def __repr__(self):
        return f"Automorphism({self.signs})"


def apply_automorphism(u: FieldElement, t: Automorphism) -> FieldElement:
    """Apply the automorphism: each surd's coefficient picks up the subset sign."""
    basis = u.basis
    for g in basis.generators:
        if g not in t.signs:
            raise ValueError(f"automorphism does not fix a sign for generator {g}")
    gen_signs = [t.signs[g] for g in basis.generators]
    out = []
    for m, c in enumerate(u._coords):
        s = 1
        for i in range(basis.k):
            if m >> i & 1:
                s *= gen_signs[i]
        out.append(c * s)
    return FieldElement(basis, tuple(out))


def relative_norm(u: FieldElement, t: Automorphism) -> FieldElement:
    """u * t(u), which lies in the fixed field of the involution t."""
    v = u * apply_automorphism(u, t)
    assert apply_automorphism(v, t) == v
    return v


def sign_at_embedding(u: FieldElement, signs: dict) -> int:
    """Sign of u under the real embedding sending sqrt(g) to signs[g]*sqrt(g).

    Only defined for elements supported on positive radicands.  Refines
    rational brackets of the surds until zero is excluded.
    """
    if u.is_zero():
        raise ValueError("sign of zero is undefined")
    basis = u.basis
    for g in basis.generators:
        if g > 0 and g not in signs:
            raise ValueError(f"no sign provided for generator {g}")
    terms = []
    for m, c in enumerate(u._coords):
        if not c:
            continue
        r = basis.radicands[m]
        if r < 0:
            raise ValueError("sign_at_embedding requires a real-supported element")
        s = 1
        for i in range(basis.k):
            if m >> i & 1:
                s *= signs[basis.generators[i]]
        terms.append((c * s, r))
    eps = Fraction(1, 10**8)
    for _ in range(50):
        total = RationalInterval.point(0)
        for c, r in terms:
            total = total + sqrt_interval(r, eps).scaled(c)
        if not total.contains_zero():
            return 1 if total.lo > 0 else -1
        eps = eps / 10**8
    raise RuntimeError("sign refinement did not converge")


def is_totally_positive(u: FieldElement) -> bool:
    """True when u is positive under every real embedding (real support required)."""
    real_gens = [g for g in u.basis.generators if g > 0]
    for bits in range(1 << len(real_gens)):
        signs = {g: 1 - 2 * (bits >> i & 1) for i, g in enumerate(real_gens)}
        if sign_at_embedding(u, signs) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# square roots by descent through the tower


def _split_top(u: FieldElement):
    """Write u = a + b*sqrt(g_top) with a, b in the subfield basis."""
    basis = u.basis
    sub = basis.sub
    half = sub.dim
    top = half
    a = [Fraction(0)] * half
    b = [Fraction(0)] * half
    for m in range(half):
        a[m] = u._coords[m]
        c = basis._coef[m][top]
        b[m] = u._coords[m | top] / c
    return FieldElement(sub, tuple(a)), FieldElement(sub, tuple(b))


def _join_top(basis: FieldBasis, a: FieldElement, b: FieldElement) -> FieldElement:
    half = basis.sub.dim
    top = half
    out = [Fraction(0)] * basis.dim
    for m in range(half):
        out[m] = a._coords[m]
        out[m | top] = b._coords[m] * basis._coef[m][top]
    return FieldElement(basis, tuple(out))


def _sqrt_rational(x: Fraction):
    if x < 0:
        return None
    nsq, nroot = is_perfect_square(x.numerator)
    dsq, droot = is_perfect_square(x.denominator)
    if nsq and dsq:
        return Fraction(nroot, droot)
    return None


def _sqrt_descent(u: FieldElement):
    basis = u.basis
    if basis.k == 0:
        r = _sqrt_rational(u._coords[0])
        return None if r is None else basis.from_rational(r)
    d = basis.generators[-1]
    a, b = _split_top(u)
    if b.is_zero():
        r = _sqrt_descent(a)
        if r is not None:
            return _join_top(basis, r, a.basis.zero())
        r = _sqrt_descent(a * d)
        if r is not None:
            return _join_top(basis, a.basis.zero(), r * Fraction(1, d))
        return None
    n = a * a - b * b * d
    w = _sqrt_descent(n)
    if w is None:
        return None
    for ww in (w, -w):
        s = _sqrt_descent((a + ww) * Fraction(1, 2))
        if s is not None and not s.is_zero():
            t = b * s.inverse() * Fraction(1, 2)
            assert s * s + t * t * d == a and 2 * s * t == b
            return _join_top(basis, s, t)
    return None


def sqrt_in_field(u: FieldElement):
    """An exact square root of u in its own field, or None.

    Descends the quadratic tower in generator order: with u = a + b*sqrt(d)
    over the subfield F, either b = 0 and one of a, a*d must be a square in
    F, or the relative norm a^2 - b^2*d must be a square w^2 in F with
    (a+w)/2 or (a-w)/2 a square again.  The returned witness is re-squared.
    Which of the two roots comes back is not specified; callers normalize.
    """
    if u.is_zero():
        raise ValueError("sqrt of zero is excluded by the nonzero precondition")
    w = _sqrt_descent(u)
    if w is not None:
        assert w * w == u
    return w


def fourth_root_in_field(u: FieldElement):
    """An exact fourth root of u, or None; tries both signs of sqrt(u)."""
    if u.is_zero():
        raise ValueError("fourth root of zero is excluded by the nonzero precondition")
    w = sqrt_in_field(u)
    if w is None:
        return None
    for cand in (w, -w):
        r = _sqrt_descent(cand)
        if r is not None:
            assert r * r * r * r == u
            return r
    return None


# ---------------------------------------------------------------------------
# roots of unity


def zeta(n: int, basis: FieldBasis) -> FieldElement:
    """The root of unity zeta_n as an exact element; n in {8, 24}."""
    if n == 8:
        for r in (-1, 2, -2):
            if r not in basis.mask_of:
                raise ValueError("zeta_8 needs radicands -1 and 2")
        return basis.element({2: Fraction(1, 2), -2: Fraction(1, 2)})
    if n == 24:
        if -3 not in basis.mask_of:
            raise ValueError("zeta_24 needs radicand -3")
        zeta3 = basis.element({1: Fraction(-1, 2), -3: Fraction(1, 2)})
        return zeta(8, basis) * zeta3
    raise ValueError("only zeta_8 and zeta_24 are constructed directly")


def torsion_order(basis: FieldBasis) -> int:
    """Order of the roots of unity in the field: 2 for totally real fields,
    else determined by which of i, zeta_8, zeta_{2^n}, zeta_3 lie inside."""
    rads = basis.mask_of
    n = 2
    if -1 in rads:
        n = 4
        if 2 in rads:
            n = 8
            mu = basis.surd(2)
            while True:
                nxt = sqrt_in_field(mu + 2)
                if nxt is None:
                    break
                n *= 2
                mu = nxt
    if -3 in rads:
        n *= 3
    return n


# ---------------------------------------------------------------------------
# serialization and embedding


_TERM_RE = re.compile(r"^(-?\d+)/(\d+)\*sqrt\((-?\d+)\)$")


def serialize_element(u: FieldElement) -> str:
    """Canonical text form: nonzero terms "num/den*sqrt(r)" joined by " + "
    in basis mask order; the zero element prints as "0/1*sqrt(1)"."""
    parts = []
    for m, c in enumerate(u._coords):
        if c:
            parts.append(f"{c.numerator}/{c.denominator}*sqrt({u.basis.radicands[m]})")
    return " + ".join(parts) if parts else "0/1*sqrt(1)"


def parse_element(s: str, basis: FieldBasis) -> FieldElement:
    """Inverse of serialize_element for elements of the given basis."""
    out = [Fraction(0)] * basis.dim
    seen = set()
    for part in s.split(" + "):
        m = _TERM_RE.match(part.strip())
        if not m:
            raise ValueError(f"bad element term {part!r}")
        num, den, r = int(m.group(1)), int(m.group(2)), int(m.group(3))
        if r not in basis.mask_of:
            raise ValueError(f"radicand {r} not in basis {basis!r}")
        if r in seen:
            raise ValueError(f"radicand {r} repeated")
        seen.add(r)
        out[basis.mask_of[r]] = Fraction(num, den)
    return FieldElement(basis, tuple(out))


def embed_element(u: FieldElement, big: FieldBasis) -> FieldElement:
    """Reinterpret u inside a larger basis containing all its radicands."""
    out = [Fraction(0)] * big.dim
    for r, c in u.coords.items():
        if r not in big.mask_of:
            raise ValueError(f"radicand {r} of element not present in {big!r}")
        out[big.mask_of[r]] = c
    return FieldElement(big, tuple(out))
