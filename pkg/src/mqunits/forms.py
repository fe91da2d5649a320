"""Class numbers of quadratic fields via reduced binary quadratic forms.

Imaginary fields: enumerate the reduced primitive positive-definite forms of
the fundamental discriminant, then compute the class-group structure through
Gauss composition (concordant-form method) and element orders.  Real fields:
the narrow class number is the number of rho-reduction cycles of reduced
indefinite forms, and the wide class number follows from the norm of the
fundamental unit.  Everything is integer arithmetic; square-root comparisons
against sqrt(D) are done through isqrt brackets, never floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .intarith import is_squarefree
from .quadratic import fundamental_unit

DISCRIMINANT_GUARD = 8 * 10**7


@dataclass(frozen=True)
class ClassNumberReport:
    """Class number of one quadratic field with its exact 2-part.

    group_structure lists primary cyclic orders (imaginary case only);
    two_rank counts its even entries.  Real fields report h and h2 only.
    """

    discriminant_or_radicand: int
    h: int
    h2: int
    two_rank: int | None = None
    group_structure: tuple[int, ...] | None = None


def disc_of_radicand(m: int) -> int:
    """Fundamental discriminant of Q(sqrt(m)) for squarefree m."""
    if m in (0, 1) or not is_squarefree(m):
        raise ValueError(f"{m} is not a valid radicand")
    return m if m % 4 == 1 else 4 * m


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def _two_part(h: int) -> int:
    h2 = 1
    while h % 2 == 0:
        h //= 2
        h2 *= 2
    return h2


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# imaginary: positive definite forms


def _reduce_posdef(a, b, c, D):
    while True:
        if b > a or b <= -a:
            b %= 2 * a
            if b > a:
                b -= 2 * a
            c = (b * b - D) // (4 * a)
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return a, b, c


def _principal_form(D):
    if D % 2:
        return (1, 1, (1 - D) // 4)
    return (1, 0, -D // 4)


def _enumerate_posdef(D):
    forms = []
    b = D % 2
    while 3 * b * b <= -D:
        m = (b * b - D) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                if math.gcd(a, math.gcd(b, c)) == 1:
                    forms.append((a, b, c))
                    if 0 < b < a < c:
                        forms.append((a, -b, c))
            a += 1
        b += 2
    return sorted(forms)


def _crt(r1, m1, r2, m2):
    g = math.gcd(m1, m2)
    assert (r1 - r2) % g == 0
    lcm = m1 // g * m2
    k = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g)
    return (r1 + m1 * k) % lcm, lcm


def _coprime_representation(form, n, D):
    """A form equivalent to `form` whose first coefficient is coprime to n.

    Per prime p of n pick (x, y) mod p at which the form is nonzero (possible
    for primitive forms), combine by CRT, then nudge y by multiples of the
    modulus until gcd(x, y) = 1 so the pair extends to a unimodular matrix.
    """
    a, b, c = form
    if math.gcd(a, n) == 1:
        return form
    xr, yr, mod = 0, 0, 1
    for p in _prime_factors(n):
        if a % p:
            xp, yp = 1, 0
        elif c % p:
            xp, yp = 0, 1
        else:
            xp, yp = 1, 1  # then form(1,1) = a+b+c = b != 0 mod p by primitivity
        xr, _ = _crt(xr, mod, xp, p)
        yr, mod = _crt(yr, mod, yp, p)
    if xr == 0:
        xr = mod
    t = 0
    while math.gcd(xr, yr + t * mod) != 1:
        t += 1
        assert t < 10**4
    x, y = xr, yr + t * mod
    # unimodular completion: x*v - y*u = 1
    g, s, tt = _egcd(x, y)
    assert g == 1
    v, u = s, -tt
    a2 = a * x * x + b * x * y + c * y * y
    b2 = 2 * a * x * u + b * (x * v + y * u) + 2 * c * y * v
    c2 = a * u * u + b * u * v + c * v * v
    assert b2 * b2 - 4 * a2 * c2 == D
    assert math.gcd(a2, n) == 1
    return (a2, b2, c2)


def _egcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    return old_r, old_s, old_t


def compose_forms(f1, f2, D):
    """Gauss composition of two primitive forms of discriminant D, reduced."""
    a1, b1, _ = f1
    a2, b2, _ = _coprime_representation(f2, a1, D)
    B, _ = _crt(b1, 2 * a1, b2, 2 * a2)
    a3 = a1 * a2
    c3 = (B * B - D) // (4 * a3)
    return _reduce_posdef(a3, B, c3, D)


def _form_pow(f, n, D):
    result = _principal_form(D)
    base = f
    while n:
        if n & 1:
            result = compose_forms(result, base, D)
        base = compose_forms(base, base, D)
        n >>= 1
    return result


def _group_structure(forms, D):
    """Primary cyclic decomposition from counts of l^j-torsion elements."""
    h = len(forms)
    e = _principal_form(D)
    structure = []
    for l in _prime_factors(h):
        exp = 0
        hh = h
        while hh % l == 0:
            hh //= l
            exp += 1
        counts = [1]
        for j in range(1, exp + 1):
            nj = sum(1 for f in forms if _form_pow(f, l**j, D) == e)
            counts.append(nj)
        t = []
        for j in range(1, exp + 1):
            assert counts[j] % counts[j - 1] == 0
            ratio = counts[j] // counts[j - 1]
            tj = 0
            while ratio > 1:
                assert ratio % l == 0
                ratio //= l
                tj += 1
            t.append(tj)
        t.append(0)
        for j in range(1, exp + 1):
            structure.extend([l**j] * (t[j - 1] - t[j]))
    assert math.prod(structure) == h
    return tuple(sorted(structure))


@lru_cache(maxsize=None)
def class_number_imaginary(D: int) -> ClassNumberReport:
    """Class number and 2-group data of the imaginary field with discriminant D."""
    if D >= 0 or not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a negative fundamental discriminant")
    if -D > DISCRIMINANT_GUARD:
        raise ValueError(f"|{D}| exceeds the supported bound {DISCRIMINANT_GUARD}")
    forms = _enumerate_posdef(D)
    h = len(forms)
    structure = _group_structure(forms, D)
    return ClassNumberReport(
        discriminant_or_radicand=D,
        h=h,
        h2=_two_part(h),
        two_rank=sum(1 for n in structure if n % 2 == 0),
        group_structure=structure,
    )


# ---------------------------------------------------------------------------
# real: indefinite forms


def _enumerate_indefinite(D):
    """Reduced indefinite forms: |sqrt(D) - 2|a|| < b < sqrt(D), exact via isqrt."""
    s = math.isqrt(D)
    forms = []
    b = 2 - (D % 2)
    while b <= s:
        m = (D - b * b) // 4
        e = 1
        while e * e <= m:
            if m % e == 0:
                for aa in {e, m // e}:
                    if 2 * aa + b >= s + 1 and 2 * aa - b <= s:
                        c = -(m // aa)
                        forms.append((aa, b, c))
                        forms.append((-aa, b, -c))
            e += 1
        b += 2
    return sorted(forms)


def _rho(form, D, s):
    """One reduction step on an indefinite form; cycles through each class."""
    _, b, c = form
    c2 = abs(c)
    if c2 <= s:
        r = s - ((s + b) % (2 * c2))
    else:
        r = (-b) % (2 * c2)
        if r > c2:
            r -= 2 * c2
    return (c, r, (r * r - D) // (4 * c))


def _narrow_class_number(D):
    s = math.isqrt(D)
    allforms = frozenset(_enumerate_indefinite(D))
    remaining = set(allforms)
    cycles = 0
    while remaining:
        start = min(remaining)
        f = start
        steps = 0
        while True:
            remaining.discard(f)
            f = _rho(f, D, s)
            assert f in allforms
            steps += 1
            assert steps <= len(allforms)
            if f == start:
                break
        cycles += 1
    return cycles


@lru_cache(maxsize=None)
def class_number_real(d: int) -> ClassNumberReport:
    """Wide class number of Q(sqrt(d)): rho cycles give the narrow number,
    halved exactly when the fundamental unit has norm +1."""
    if d <= 1 or not is_squarefree(d):
        raise ValueError(f"{d} is not a valid real radicand")
    D = disc_of_radicand(d)
    if D > DISCRIMINANT_GUARD:
        raise ValueError(f"{D} exceeds the supported bound {DISCRIMINANT_GUARD}")
    h_narrow = _narrow_class_number(D)
    if fundamental_unit(d).norm == 1:
        assert h_narrow % 2 == 0
        h = h_narrow // 2
    else:
        h = h_narrow
    return ClassNumberReport(discriminant_or_radicand=d, h=h, h2=_two_part(h))
