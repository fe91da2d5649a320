"""Fundamental systems of units (FSUs) for multiquadratic fields.

A unit of a multiquadratic field is represented by a `UnitExpr`: an exact
field element (the witness) together with its exponent vector over the
fundamental units of the quadratic subfields, with denominators 1, 2 or 4.
An FSU is a list of such units whose exponent matrix is nonsingular; the
absolute determinant 2^(-j) records the index of the subfield-unit lattice.

Construction goes bottom-up: known FSU shapes for the six relevant
biquadratic configurations, then saturation by square roots of subset
products for degree-8 totally real fields, then one torsion-twisted square
root for the CM extension.  Every predicted square root is materialized as
an exact element; a missing root raises Falsified rather than guessing.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import Falsified
from .field import (
    Automorphism,
    FieldBasis,
    FieldElement,
    apply_automorphism,
    embed_element,
    relative_norm,
    sign_at_embedding,
    sqrt_in_field,
    torsion_order,
    zeta,
)
from .quadratic import COND1, COND2, classify_pair, fundamental_unit


@dataclass
class UnitExpr:
    """A unit as torsion * product of quadratic fundamental units to rational powers.

    With s the lcm of the exponent denominators, the defining identity is

        witness**s == zeta**torsion_exponent * prod(eps_r ** (e_r * s))

    where zeta generates the roots of unity of the field (-1 in the totally
    real case) and eps_r is the fundamental unit of Q(sqrt(r)).
    """

    torsion_exponent: int
    exponents: dict
    witness: FieldElement

    def cleared_level(self) -> int:
        s = 1
        for e in self.exponents.values():
            s = math.lcm(s, e.denominator)
        return s


@dataclass
class FsuResult:
    """A fundamental system of units of `field` modulo roots of unity."""

    field: FieldBasis
    torsion: str
    generators: tuple
    q_index_log2: int


# ---------------------------------------------------------------------------
# shared helpers


def _quad_unit(r: int, basis: FieldBasis) -> FieldElement:
    """The fundamental unit of Q(sqrt(r)) as an element of `basis`."""
    u = fundamental_unit(r)
    return basis.element({1: Fraction(u.x, u.denom), r: Fraction(u.y, u.denom)})


def _base_units(basis: FieldBasis) -> dict:
    return {r: _quad_unit(r, basis) for r in basis.radicands if r > 1}


_TORSION_CACHE = {}


def _torsion(basis: FieldBasis):
    """(generator, order) of the roots of unity of the field."""
    key = basis.generators
    if key not in _TORSION_CACHE:
        n = torsion_order(basis)
        if n == 2:
            g = basis.from_rational(-1)
        elif n == 4:
            g = basis.surd(-1)
        elif n == 8:
            g = zeta(8, basis)
        elif n == 12:
            g = basis.element({3: Fraction(1, 2), -1: Fraction(1, 2)})
        elif n == 24:
            g = zeta(24, basis)
        else:
            raise AssertionError(f"unexpected torsion order {n}")
        assert g ** n == basis.one() and g ** (n // 2) == -basis.one()
        _TORSION_CACHE[key] = (g, n)
    return _TORSION_CACHE[key]


def _torsion_name(n: int) -> str:
    return "-1" if n == 2 else f"zeta{n}"


def _norm_pos(w: FieldElement) -> FieldElement:
    """Normalize a real-supported witness to be positive at the all-plus
    embedding; complex-supported witnesses are left as computed."""
    signs = {g: 1 for g in w.basis.generators if g > 0}
    try:
        s = sign_at_embedding(w, signs)
    except ValueError:
        return w
    return w if s > 0 else -w


def _sign_vector(w: FieldElement):
    gens = [g for g in w.basis.generators if g > 0]
    out = []
    for bits in range(1 << len(gens)):
        signs = {g: 1 - 2 * (bits >> i & 1) for i, g in enumerate(gens)}
        out.append(sign_at_embedding(w, signs))
    return tuple(out)


def _make_expr(basis: FieldBasis, base_units: dict, exps: dict, witness: FieldElement) -> UnitExpr:
    """Build a verified UnitExpr, solving for the torsion exponent."""
    exps = {r: Fraction(e) for r, e in exps.items() if e}
    s = 1
    for e in exps.values():
        s = math.lcm(s, e.denominator)
    assert s in (1, 2, 4), f"exponent denominator {s} out of range"
    lhs = witness ** s
    rhs = basis.one()
    for r, e in exps.items():
        n = e * s
        assert n.denominator == 1
        rhs = rhs * base_units[r] ** int(n)
    gen, order = _torsion(basis)
    cur = rhs
    for t in range(order):
        if cur == lhs:
            return UnitExpr(t, exps, witness)
        cur = cur * gen
    raise AssertionError("witness does not match its exponent vector")


def verify_unit_expr(expr: UnitExpr) -> None:
    """Re-check the defining identity of a UnitExpr; raises on mismatch."""
    basis = expr.witness.basis
    rebuilt = _make_expr(basis, _base_units(basis), expr.exponents, expr.witness)
    assert rebuilt.torsion_exponent == expr.torsion_exponent % _torsion(basis)[1]


def _det(rows):
    n = len(rows)
    m = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                for cc in range(c, n):
                    m[r][cc] -= f * m[c][cc]
    return det


def _gen_labels(gens):
    return sorted({r for g in gens for r in g.exponents})


def _q_log2(gens) -> int:
    """-log2 |det| of the exponent matrix; asserts the det is a power of 2."""
    labels = _gen_labels(gens)
    assert len(labels) == len(gens), "exponent matrix is not square"
    d = abs(_det([[g.exponents.get(r, Fraction(0)) for r in labels] for g in gens]))
    assert d != 0, "exponent matrix is singular"
    assert d.numerator == 1 and d.denominator & (d.denominator - 1) == 0
    return d.denominator.bit_length() - 1


def _sum_exps(dicts):
    out = {}
    for d in dicts:
        for r, e in d.items():
            out[r] = out.get(r, Fraction(0)) + e
    return {r: e for r, e in out.items() if e}


# ---------------------------------------------------------------------------
# quadratic and biquadratic FSUs


def fsu_quadratic(d: int) -> FsuResult:
    """FSU of the real quadratic field Q(sqrt(d)): its fundamental unit."""
    basis = FieldBasis((d,))
    assert not basis.is_cm
    expr = UnitExpr(0, {d: Fraction(1)}, _quad_unit(d, basis))
    return FsuResult(basis, "-1", (expr,), 0)


def _V(*syms):
    return (False, syms)


def _S(*syms):
    return (True, syms)


# Known FSU shapes for the six biquadratic configurations, keyed by the set
# of quadratic subfield radicands written with p = 5 mod 8 and q = 3 mod 8.
_BIQUAD_TABLE = {
    frozenset({"p", "q", "pq"}): {
        COND1: (_V("p"), _V("q"), _S("pq")),
        COND2: (_V("p"), _V("q"), _S("q", "pq")),
    },
    frozenset({"2", "q", "2q"}): {
        COND1: (_V("2"), _S("q"), _S("2q")),
        COND2: (_V("2"), _S("q"), _S("2q")),
    },
    frozenset({"p", "2q", "2pq"}): {
        COND1: (_V("p"), _V("2q"), _S("2q", "2pq")),
        COND2: (_V("p"), _V("2q"), _S("2pq")),
    },
    frozenset({"q", "2p", "2pq"}): {
        COND1: (_V("q"), _V("2p"), _S("2pq")),
        COND2: (_V("q"), _V("2p"), _S("q", "2pq")),
    },
    frozenset({"2", "pq", "2pq"}): {
        COND1: (_V("2"), _V("pq"), _S("pq", "2pq")),
        COND2: (_V("2"), _V("pq"), _S("pq", "2pq")),
    },
    frozenset({"2", "p", "2p"}): {
        COND1: (_V("2"), _V("p"), _S("2", "p", "2p")),
        COND2: (_V("2"), _V("p"), _S("2", "p", "2p")),
    },
}


def _odd_primes(n: int):
    out = []
    m = abs(n)
    while m % 2 == 0:
        m //= 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            m //= f
        else:
            f += 2
    if m > 1:
        out.append(m)
    return out


def _symbol_map(radicands):
    """Map each field radicand to its symbolic name over the primes p, q."""
    primes = set()
    for r in radicands:
        primes.update(_odd_primes(r))
    p = [f for f in primes if f % 8 == 5]
    q = [f for f in primes if f % 8 == 3]
    if len(p) > 1 or len(q) > 1 or len(p) + len(q) < len(primes):
        raise ValueError(f"radicands {radicands} are not built from one p = 5 and one q = 3 mod 8")
    table = {2: "2"}
    if p:
        table.update({p[0]: "p", 2 * p[0]: "2p"})
    if q:
        table.update({q[0]: "q", 2 * q[0]: "2q"})
    if p and q:
        table.update({p[0] * q[0]: "pq", 2 * p[0] * q[0]: "2pq"})
    reverse = {v: k for k, v in table.items()}
    return table, reverse


def fsu_biquadratic(d1: int, d2: int, cond=None) -> FsuResult:
    """FSU of the real biquadratic field Q(sqrt(d1), sqrt(d2)).

    Covers the six configurations whose quadratic subfield radicands are
    {p,q,pq}, {2,q,2q}, {p,2q,2pq}, {q,2p,2pq}, {2,pq,2pq} or {2,p,2p} with
    p = 5 mod 8 and q = 3 mod 8 primes.  The shape of the system depends on
    the condition class of the pair (p, q) through the Legendre symbol;
    cond=None infers it when both primes appear, and is accepted for the
    configurations whose shape is the same either way.
    Predicted square roots are materialized exactly; raises Falsified when
    one does not exist, ValueError for an unknown configuration.
    """
    basis = FieldBasis((d1, d2))
    if basis.is_cm:
        raise ValueError("biquadratic FSU shapes cover totally real fields only")
    if cond is not None and not cond.is_applicable:
        raise ValueError(f"condition class required: {cond.reason}")
    rads = [r for r in basis.radicands if r != 1]
    try:
        table, reverse = _symbol_map(rads)
        shapes = _BIQUAD_TABLE[frozenset(table[r] for r in rads)]
    except (KeyError, ValueError) as exc:
        raise ValueError(f"unknown biquadratic configuration {sorted(rads)}") from exc
    if "p" in reverse and "q" in reverse:
        actual = classify_pair(reverse["p"], reverse["q"])
        if not actual.is_applicable:
            raise ValueError(f"pair not applicable: {actual.reason}")
        if cond is not None and actual.tag != cond.tag:
            raise ValueError(
                f"condition {cond.tag} does not match the pair ({reverse['p']}, {reverse['q']})"
            )
        specs = shapes[actual.tag]
    elif cond is not None:
        specs = shapes[cond.tag]
    elif shapes[COND1] == shapes[COND2]:
        specs = shapes[COND1]
    else:
        raise ValueError("condition class required for this configuration")
    units = _base_units(basis)
    gens = []
    for is_sqrt, syms in specs:
        parts = [reverse[s] for s in syms]
        if not is_sqrt:
            (r,) = parts
            gens.append(UnitExpr(0, {r: Fraction(1)}, units[r]))
            continue
        prod = basis.one()
        for r in parts:
            prod = prod * units[r]
        w = sqrt_in_field(prod)
        if w is None:
            names = "*".join(f"eps_{r}" for r in parts)
            raise Falsified(f"{names} is predicted to be a square in {basis!r} but is not")
        gens.append(_make_expr(basis, units, {r: Fraction(1, 2) for r in parts}, _norm_pos(w)))
    return FsuResult(basis, "-1", tuple(gens), _q_log2(gens))


# ---------------------------------------------------------------------------
# degree-8 totally real fields: saturation by subset square roots


def wada_fsu(field: FieldBasis, subfield_fsus) -> FsuResult:
    """FSU of a totally real multiquadratic field from three subfield FSUs.

    Starts from the union of the subfield generators (deduplicated in
    exponent space), then repeatedly tests every subset product, up to sign,
    for being a square in the field.  A found square root replaces the
    highest-index generator of its subset and the sweep restarts; the loop
    ends with a full sweep that finds nothing, which is the closure proof.
    Subsets are tried by increasing size, then lexicographically.  An exact
    sign-vector filter skips subsets whose product changes sign under some
    real embedding (such a product cannot be a square).
    """
    assert not field.is_cm
    units = _base_units(field)
    gens = []
    seen = set()
    for fsu in subfield_fsus:
        for g in fsu.generators:
            key = frozenset(g.exponents.items())
            if key in seen:
                continue
            seen.add(key)
            gens.append(_make_expr(field, units, g.exponents, embed_element(g.witness, field)))
    _q_log2(gens)
    vecs = [_sign_vector(g.witness) for g in gens]
    memo = {}
    while True:
        found = _find_subset_square(gens, vecs, memo)
        if found is None:
            break
        idxs, exps, w, sign = found
        half = {r: e / 2 for r, e in exps.items()}
        top = max(idxs)
        gens[top] = _make_expr(field, units, half, _norm_pos(w))
        vecs[top] = _sign_vector(gens[top].witness)
    return FsuResult(field, "-1", tuple(gens), _q_log2(gens))


def _find_subset_square(gens, vecs, memo):
    n = len(gens)
    for size in range(1, n + 1):
        for idxs in combinations(range(n), size):
            vec = vecs[idxs[0]]
            for i in idxs[1:]:
                vec = tuple(a * b for a, b in zip(vec, vecs[i]))
            if all(s > 0 for s in vec):
                sign = 1
            elif all(s < 0 for s in vec):
                sign = -1
            else:
                continue
            exps = _sum_exps([gens[i].exponents for i in idxs])
            key = (frozenset(exps.items()), sign)
            if key not in memo:
                u = gens[idxs[0]].witness
                for i in idxs[1:]:
                    u = u * gens[i].witness
                memo[key] = sqrt_in_field(u if sign > 0 else -u)
            if memo[key] is not None:
                return idxs, exps, memo[key], sign
    return None


# ---------------------------------------------------------------------------
# CM extension: one torsion-twisted square root


def azizi_extend(real_fsu: FsuResult, cm_basis: FieldBasis) -> FsuResult:
    """FSU of the CM field K(i) from the FSU of the totally real field K.

    With 2^n the 2-power torsion order of K(i) and mu = zeta + 1/zeta for a
    primitive 2^n-th root of unity zeta, searches all subset products e of
    the real FSU, up to sign, for (2 + mu) * e a square in K.  At most one
    subset can succeed; two successes contradict the independence of the
    FSU and raise Falsified.  On success the highest-index generator of the
    subset is replaced by an exact square root of zeta * e, which halves the
    exponent lattice; otherwise the real FSU carries over unchanged except
    for the enlarged torsion.
    """
    real = real_fsu.field
    if not cm_basis.is_cm:
        raise ValueError("cm_basis must contain a negative radicand")
    if cm_basis.generators != real.generators + (-1,):
        raise ValueError("cm_basis must extend the real basis by -1")
    tors_gen, order = _torsion(cm_basis)
    n0 = (order & -order).bit_length() - 1
    assert n0 in (2, 3), f"unsupported 2-power torsion 2^{n0}"
    mu = real.surd(2) if n0 == 3 else real.zero()
    xi = zeta(8, cm_basis) if n0 == 3 else cm_basis.surd(-1)
    two_mu = mu + 2

    gens = list(real_fsu.generators)
    vecs = [_sign_vector(g.witness) for g in gens]
    base_vec = _sign_vector(two_mu)
    hits = []
    for bits in range(1 << len(gens)):
        vec = base_vec
        for i in range(len(gens)):
            if bits >> i & 1:
                vec = tuple(a * b for a, b in zip(vec, vecs[i]))
        if all(s > 0 for s in vec):
            sign = 1
        elif all(s < 0 for s in vec):
            sign = -1
        else:
            continue
        eps = real.one() if sign > 0 else -real.one()
        for i in range(len(gens)):
            if bits >> i & 1:
                eps = eps * gens[i].witness
        if sqrt_in_field(two_mu * eps) is not None:
            hits.append((bits, eps))
    if len(hits) > 1:
        raise Falsified("two independent unit subsets make (2+mu)*eps square; FSU was dependent")

    units = _base_units(cm_basis)
    out = [_make_expr(cm_basis, units, g.exponents, embed_element(g.witness, cm_basis)) for g in gens]
    if hits:
        bits, eps = hits[0]
        if bits == 0:
            raise Falsified("(2+mu) itself is a square, contradicting the torsion order")
        idxs = [i for i in range(len(gens)) if bits >> i & 1]
        w = sqrt_in_field(xi * embed_element(eps, cm_basis))
        if w is None:
            raise Falsified("zeta*eps is predicted to be a square in the CM field but is not")
        half = {r: e / 2 for r, e in _sum_exps([gens[i].exponents for i in idxs]).items()}
        out[max(idxs)] = _make_expr(cm_basis, units, half, w)
    return FsuResult(cm_basis, _torsion_name(order), tuple(out), _q_log2(out))


def unit_index(fsu: FsuResult) -> int:
    """The unit index 2^j recorded by the FSU: the exponent-lattice index,
    times one extra factor of 2 in the CM case for the enlarged torsion."""
    return 2 ** (fsu.q_index_log2 + (1 if fsu.field.is_cm else 0))


# ---------------------------------------------------------------------------
# reference unit groups for the degree-8 and degree-16 fields


def theorem_real_exponents(p: int, q: int, tag: str):
    """Reference FSU exponent vectors for Q(sqrt2, sqrt p, sqrt q)."""
    H, Q = Fraction(1, 2), Fraction(1, 4)
    base = [
        {2: Fraction(1)},
        {p: Fraction(1)},
        {q: H},
        {2 * q: H},
        {p * q: H},
        {2: H, p: H, 2 * p: H},
    ]
    if tag == COND1:
        base.append({p: H, 2 * q: Q, p * q: Q, 2 * p * q: Q})
    elif tag == COND2:
        base.append({2: H, p: H, q: Q, p * q: Q, 2 * p * q: Q})
    else:
        raise ValueError(f"no reference list for condition {tag}")
    return base


def theorem_cm_exponents(p: int, q: int, tag: str):
    """Reference FSU exponent vectors for Q(sqrt2, sqrt p, sqrt q, i): the
    real list with sqrt(eps_2q) replaced by the torsion-twisted root."""
    out = theorem_real_exponents(p, q, tag)
    out[3] = {2: Fraction(1, 2), q: Fraction(1, 4), 2 * q: Fraction(1, 4)}
    return out


def _solve_linear(mat, rhs):
    """Solve the square system mat*x = rhs over Fractions; None if singular
    or inconsistent."""
    n = len(rhs)
    m = [list(row) + [r] for row, r in zip(mat, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [v * inv for v in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [row[n] for row in m]


def vector_in_lattice(vec: dict, exps_list) -> bool:
    """Is `vec` an integer combination of the exponent vectors in exps_list?"""
    labels = sorted({r for e in exps_list for r in e} | set(vec))
    if len(labels) != len(exps_list):
        return False
    mat = [[Fraction(e.get(r, 0)) for e in exps_list] for r in labels]
    x = _solve_linear(mat, [Fraction(vec.get(r, 0)) for r in labels])
    return x is not None and all(c.denominator == 1 for c in x)


def lattice_equal(a_list, b_list) -> bool:
    """Do two generator lists span the same exponent lattice?"""
    if len(a_list) != len(b_list):
        return False
    return all(vector_in_lattice(v, b_list) for v in a_list) and all(
        vector_in_lattice(v, a_list) for v in b_list
    )


# ---------------------------------------------------------------------------
# conjugation and relative norm tables


@dataclass
class NormRow:
    label: str
    entries: dict


@dataclass
class NormTable:
    field: FieldBasis
    rows: tuple


NORM_COLUMNS = ("tau1", "tau2", "tau3", "n1", "n2", "n3", "n12", "n13", "n23")

# Predicted conjugates and relative norms of the degree-8 units.  tau1, tau2,
# tau3 negate sqrt(2), sqrt(p), sqrt(q); column nXY is the norm 1 + tauX*tauY.
# Each entry is (sign, monomial): sign is +-1 or a per-row symbol resolved at
# check time, the monomial maps unit names to integer powers.  None = no claim.

E2, EP, EQ, E2P, E2Q, EPQ, E2PQ = (
    "eps_2", "eps_p", "eps_q", "eps_2p", "eps_2q", "eps_pq", "eps_2pq",
)
SQ, S2Q, SPQ, S2PQ = "sqrt_eps_q", "sqrt_eps_2q", "sqrt_eps_pq", "sqrt_eps_2pq"
SP2P = "sqrt_eps_2_eps_p_eps_2p"
F4 = "fourth_root"

_NT_COMMON = {
    E2: (
        (-1, {E2: -1}), (1, {E2: 1}), (1, {E2: 1}),
        (-1, {}), (1, {E2: 2}), (1, {E2: 2}), (-1, {}), (-1, {}), (1, {E2: 2}),
    ),
    EP: (
        (1, {EP: 1}), (-1, {EP: -1}), (1, {EP: 1}),
        (1, {EP: 2}), (-1, {}), (1, {EP: 2}), (-1, {}), (1, {EP: 2}), (-1, {}),
    ),
    SQ: (
        (-1, {SQ: 1}), (1, {SQ: 1}), (-1, {SQ: -1}),
        (-1, {EQ: 1}), (1, {EQ: 1}), (-1, {}), (-1, {EQ: 1}), (1, {}), (-1, {}),
    ),
    S2Q: (
        (1, {S2Q: -1}), (1, {S2Q: 1}), (-1, {S2Q: -1}),
        (1, {}), (1, {E2Q: 1}), (-1, {}), (1, {}), (-1, {E2Q: 1}), (-1, {}),
    ),
    SP2P: (
        ("u", {SP2P: 1, E2: -1, E2P: -1}), ("v", {SP2P: 1, EP: -1, E2P: -1}), (1, {SP2P: 1}),
        ("u", {EP: 1}), ("v", {E2: 1}), (1, {E2: 1, EP: 1, E2P: 1}), None, None, None,
    ),
}

_NT_COND1 = {
    SPQ: (
        (1, {SPQ: 1}), (-1, {SPQ: -1}), (1, {SPQ: -1}),
        (1, {EPQ: 1}), (-1, {}), (1, {}), (-1, {}), (1, {}), (-1, {EPQ: 1}),
    ),
    S2PQ: (
        (1, {S2PQ: -1}), (1, {S2PQ: -1}), (-1, {S2PQ: -1}),
        (1, {}), (1, {}), (-1, {}), (1, {E2PQ: 1}), (-1, {E2PQ: 1}), (-1, {E2PQ: 1}),
    ),
    F4: (
        ("r", {F4: 1, S2Q: -1, S2PQ: -1}),
        ("s", {F4: 1, EP: -1, SPQ: -1, S2PQ: -1}),
        ("t", {F4: 1, S2Q: -1, SPQ: -1, S2PQ: -1}),
        ("r", {EP: 1, SPQ: 1}), ("s", {S2Q: 1}), ("t", {EP: 1}), None, None, None,
    ),
}

_NT_COND2 = {
    SPQ: (
        (-1, {SPQ: 1}), (-1, {SPQ: -1}), (1, {SPQ: -1}),
        (-1, {EPQ: 1}), (-1, {}), (1, {}), (1, {}), (-1, {}), (-1, {EPQ: 1}),
    ),
    S2PQ: (
        (-1, {S2PQ: -1}), (1, {S2PQ: -1}), (-1, {S2PQ: -1}),
        (-1, {}), (1, {}), (-1, {}), (-1, {E2PQ: 1}), (1, {E2PQ: 1}), (-1, {E2PQ: 1}),
    ),
    F4: (
        ("r", {F4: 1, E2: -1, S2PQ: -1}),
        ("s", {F4: 1, EP: -1, SPQ: -1, S2PQ: -1}),
        ("t", {F4: 1, SQ: -1, SPQ: -1, S2PQ: -1}),
        ("r", {EP: 1, SQ: 1, SPQ: 1}), ("s", {E2: 1, SQ: 1}), ("t", {E2: 1, EP: 1}), None, None, None,
    ),
}

_NT_ROW_ORDER = (E2, EP, SQ, S2Q, SPQ, S2PQ, SP2P, F4)


def norm_table(field: FieldBasis, fsu: FsuResult) -> NormTable:
    """Check conjugates and relative norms of the degree-8 units against the
    predicted table, resolving the symbolic signs.

    Every table entry is materialized exactly from canonical witnesses
    (square roots normalized positive at the all-plus embedding) and
    compared with the computed conjugate or norm.  A fixed-sign entry must
    match exactly; a symbolic sign is resolved on first use and must stay
    consistent within its row.  Any mismatch raises Falsified.
    """
    assert not field.is_cm and field.k == 3
    ps = [g for g in field.generators if g % 8 == 5]
    qs = [g for g in field.generators if g % 8 == 3]
    assert 2 in field.generators and len(ps) == 1 and len(qs) == 1
    p, q = ps[0], qs[0]
    cond = classify_pair(p, q)
    assert cond.is_applicable
    assert fsu.field == field

    units = _base_units(field)
    env = {
        E2: units[2], EP: units[p], EQ: units[q], E2P: units[2 * p],
        E2Q: units[2 * q], EPQ: units[p * q], E2PQ: units[2 * p * q],
    }
    by_exps = {frozenset(g.exponents.items()): g.witness for g in fsu.generators}

    def materialize(name, exps, square):
        key = frozenset(exps.items())
        if key in by_exps and by_exps[key] * by_exps[key] == square:
            return _norm_pos(by_exps[key])
        w = sqrt_in_field(square)
        if w is None:
            raise Falsified(f"{name} is predicted to exist in {field!r} but its square is not a square")
        return _norm_pos(w)

    H, Q4 = Fraction(1, 2), Fraction(1, 4)
    env[SQ] = materialize(SQ, {q: H}, env[EQ])
    env[S2Q] = materialize(S2Q, {2 * q: H}, env[E2Q])
    env[SPQ] = materialize(SPQ, {p * q: H}, env[EPQ])
    env[S2PQ] = materialize(S2PQ, {2 * p * q: H}, env[E2PQ])
    env[SP2P] = materialize(SP2P, {2: H, p: H, 2 * p: H}, env[E2] * env[EP] * env[E2P])
    if cond.tag == COND1:
        f4_exps = {p: H, 2 * q: Q4, p * q: Q4, 2 * p * q: Q4}
        f4_square = env[EP] * env[S2Q] * env[SPQ] * env[S2PQ]
    else:
        f4_exps = {2: H, p: H, q: Q4, p * q: Q4, 2 * p * q: Q4}
        f4_square = env[E2] * env[EP] * env[SQ] * env[SPQ] * env[S2PQ]
    env[F4] = materialize(F4, f4_exps, f4_square)

    inv_cache = {}

    def power(name, e):
        if e >= 0:
            return env[name] ** e
        if name not in inv_cache:
            inv_cache[name] = env[name].inverse()
        return inv_cache[name] ** (-e)

    taus = {
        "tau1": Automorphism({2: -1, p: 1, q: 1}),
        "tau2": Automorphism({2: 1, p: -1, q: 1}),
        "tau3": Automorphism({2: 1, p: 1, q: -1}),
        "n12": Automorphism({2: -1, p: -1, q: 1}),
        "n13": Automorphism({2: -1, p: 1, q: -1}),
        "n23": Automorphism({2: 1, p: -1, q: -1}),
    }

    table = dict(_NT_COMMON)
    table.update(_NT_COND1 if cond.tag == COND1 else _NT_COND2)
    rows = []
    for label in _NT_ROW_ORDER:
        w = env[label]
        resolved = {}
        entries = {}
        for col, entry in zip(NORM_COLUMNS, table[label]):
            if entry is None:
                continue
            if col.startswith("tau"):
                computed = apply_automorphism(w, taus[col])
            else:
                tau = taus[col] if col in taus else taus["tau" + col[1]]
                computed = relative_norm(w, tau)
            sign, mono = entry
            value = field.one()
            for name, e in mono.items():
                value = value * power(name, e)
            if sign in (1, -1):
                if computed != (value if sign > 0 else -value):
                    raise Falsified(f"norm table mismatch at row {label}, column {col}")
                entries[col] = (sign, None, dict(mono))
                continue
            if computed == value:
                got = 1
            elif computed == -value:
                got = -1
            else:
                raise Falsified(f"norm table shape mismatch at row {label}, column {col}")
            if resolved.setdefault(sign, got) != got:
                raise Falsified(f"inconsistent sign {sign} in norm table row {label}")
            entries[col] = (got, sign, dict(mono))
        rows.append(NormRow(label, entries))
    return NormTable(field, tuple(rows))
