"""2-class numbers of multiquadratic fields via the class number formula.

For a multiquadratic field of degree 4, 8 or 16 the 2-class number is
2^(q_log2 - v) times the product of the 2-class numbers of its quadratic
subfields, where q_log2 is the exponent of the unit index and v is a fixed
exponent per field shape (2, 9, 16).  The subfield values are computed by
the forms module, so the formula ties the unit-index computation to class
numbers computed by an entirely independent route.  A non-integral result
means the inputs contradict each other and raises Falsified.
"""

from dataclasses import dataclass

from .errors import Falsified
from .forms import ClassNumberReport, class_number_imaginary, class_number_real, disc_of_radicand
from .quadratic import COND1, COND2, classify_pair

_V_BY_DEGREE = {4: 2, 8: 9, 16: 16}

_H2_MEMO: dict[int, tuple[int, int]] = {}


def seed_h2_memo(entries) -> None:
    """Pre-load class numbers keyed by radicand, e.g. from a scan cache."""
    for r, (h, h2) in dict(entries).items():
        _H2_MEMO[int(r)] = (int(h), int(h2))


def quadratic_h2(r: int) -> ClassNumberReport:
    """Class number report of Q(sqrt(r)) for squarefree r, either sign."""
    if r in _H2_MEMO:
        h, h2 = _H2_MEMO[r]
        return ClassNumberReport(r if r > 1 else disc_of_radicand(r), h, h2)
    if r > 1:
        rep = class_number_real(r)
    else:
        rep = class_number_imaginary(disc_of_radicand(r))
    _H2_MEMO[r] = (rep.h, rep.h2)
    return rep


def subfield_radicands(p: int, q: int):
    """The 15 quadratic subfield radicands of Q(sqrt2, sqrt p, sqrt q, i),
    in the fixed report order."""
    return (
        -1, 2, -2, p, -p, q, -q, 2 * p, -2 * p, 2 * q, -2 * q,
        p * q, -p * q, 2 * p * q, -2 * p * q,
    )


@dataclass
class KurodaInstance:
    """One application of the class number formula.

    degree 4, 8 and 16 carry v_exponent 2, 9 and 16 and expect 3, 7 and 15
    subfield entries (radicand, h2) respectively.
    """

    degree: int
    v_exponent: int
    subfield_h2: tuple
    q_log2: int

    def __post_init__(self):
        if self.degree not in _V_BY_DEGREE:
            raise ValueError(f"degree {self.degree} not covered")
        if self.v_exponent != _V_BY_DEGREE[self.degree]:
            raise ValueError(f"degree {self.degree} requires v = {_V_BY_DEGREE[self.degree]}")
        self.subfield_h2 = tuple((int(r), int(h)) for r, h in self.subfield_h2)
        if len(self.subfield_h2) != self.degree - 1:
            raise ValueError(f"degree {self.degree} has {self.degree - 1} quadratic subfields")
        assert self.q_log2 >= 0
        assert all(h >= 1 for _, h in self.subfield_h2)


def kuroda_h2(instance: KurodaInstance) -> int:
    """Evaluate 2^(q_log2 - v) * prod(subfield h2); Falsified if non-integral."""
    num = 2 ** instance.q_log2
    for _, h in instance.subfield_h2:
        num *= h
    den = 2 ** instance.v_exponent
    if num % den:
        raise Falsified(
            f"class number formula gives {num}/{den} for the degree-{instance.degree} field, "
            "which is not an integer"
        )
    return num // den


def deg4_instance(p: int, q_log2: int) -> KurodaInstance:
    """Formula instance for Q(sqrt2, sqrt p)."""
    rads = (2, p, 2 * p)
    return KurodaInstance(4, 2, tuple((r, quadratic_h2(r).h2) for r in rads), q_log2)


def deg8_instance(p: int, q: int, q_log2: int) -> KurodaInstance:
    """Formula instance for the totally real field Q(sqrt2, sqrt p, sqrt q)."""
    rads = (2, p, q, 2 * p, 2 * q, p * q, 2 * p * q)
    return KurodaInstance(8, 9, tuple((r, quadratic_h2(r).h2) for r in rads), q_log2)


def deg16_instance(p: int, q: int, q_log2: int) -> KurodaInstance:
    """Formula instance for the CM field Q(sqrt2, sqrt p, sqrt q, i)."""
    rads = subfield_radicands(p, q)
    return KurodaInstance(16, 16, tuple((r, quadratic_h2(r).h2) for r in rads), q_log2)


# ---------------------------------------------------------------------------
# claimed subfield values


def crosscheck_quadratic_h2(p: int, q: int, cond):
    """Compare computed h2 of all 15 quadratic subfields with the claimed
    values; returns (claim, computed, pass) triples.

    The claims: h2 = 1 for 2, p, q, 2q, -1, -2, -q; h2 = 2 for 2p, pq, 2pq,
    -p, -2p, -2q; h2 = 4 for -2pq; and for -pq exactly 2 under Cond2 but
    2^m with m >= 2 under Cond1.
    """
    if not cond.is_applicable:
        raise ValueError(f"pair is not applicable: {cond.reason}")
    ones = {2, p, q, 2 * q, -1, -2, -q}
    twos = {2 * p, p * q, 2 * p * q, -p, -2 * p, -2 * q}
    out = []
    for r in subfield_radicands(p, q):
        h2 = quadratic_h2(r).h2
        if r == -p * q:
            if cond.tag == COND2:
                out.append((f"h2({r}) == 2", h2, h2 == 2))
            else:
                out.append((f"h2({r}) >= 4", h2, h2 >= 4))
        elif r == -2 * p * q:
            out.append((f"h2({r}) == 4", h2, h2 == 4))
        elif r in ones:
            out.append((f"h2({r}) == 1", h2, h2 == 1))
        else:
            assert r in twos
            out.append((f"h2({r}) == 2", h2, h2 == 2))
    return out


# ---------------------------------------------------------------------------
# predicted 2-class group and Galois structures


@dataclass
class StructureReport:
    """Predicted 2-class group shapes along the towers over a pair (p, q).

    m is the exponent with h2(-pq) = 2^m.  Group labels are plain strings:
    "(2,2)", "Z/n", "Q_k" (generalized quaternion of order 2^k).
    """

    m: int
    cl2_genus_base: str
    cl2_L: int
    cl2_F: str
    cl2_K: str
    gal_F2: str
    gal_k2: str
    h2_Ln_plus: int
    iwasawa: tuple

    def h2_Ln(self, n: int) -> int:
        assert n >= 1
        return 2 ** (n + self.m - 1)


def predict_structures(p: int, q: int) -> StructureReport:
    """Fill the structure template for an applicable pair.

    m comes from the independently computed h2(-pq).  Under Cond1 the class
    groups of the two index-2 towers are of type (2,2) with generalized
    quaternion Galois group Q_{m+1}; under Cond2 everything collapses to
    cyclic: m must equal 1 (h2(-pq) = 2) and the tower group is Z/4.
    A violated condition constraint raises Falsified.
    """
    cond = classify_pair(p, q)
    if not cond.is_applicable:
        raise ValueError(f"pair is not applicable: {cond.reason}")
    h2 = quadratic_h2(-p * q).h2
    assert h2 & (h2 - 1) == 0 and h2 > 1
    m = h2.bit_length() - 1
    if cond.tag == COND2:
        if m != 1:
            raise Falsified(f"Cond2 pair ({p},{q}) has h2(-pq) = {h2}, expected 2")
        cl2_tower, gal_f2 = "Z/4", "Z/4"
    else:
        if m < 2:
            raise Falsified(f"Cond1 pair ({p},{q}) has h2(-pq) = {h2}, expected >= 4")
        cl2_tower, gal_f2 = "(2,2)", f"Q_{m + 1}"
    return StructureReport(
        m=m,
        cl2_genus_base="(2,2)",
        cl2_L=2 ** (m + 1),
        cl2_F=cl2_tower,
        cl2_K=cl2_tower,
        gal_F2=gal_f2,
        gal_k2=f"Q_{m + 2}",
        h2_Ln_plus=1,
        iwasawa=(1, m - 1),
    )
