"""Highest-root normalization constants for root-system configurations.

Two closed routes to the constant gamma-tilde squared (one through the
highest root, one through the dual root system) and a direct route through
the identity gamma^2 * lambda^2 = -4 h^3, where h is the proportionality
factor between the weighted Gram form and the invariant inner product.  All
norm data lives in realization-independent tables, so the direct route works
on any rational realization of the root system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .configuration import Configuration, duals
from .exactla import dot, rat
from .veesystem import lambda_sq


class NoATableError(ValueError):
    """No coefficient table for this family / multiplicity combination."""


class ClassificationError(ValueError):
    """Configuration covectors cannot be matched to the root-class census."""


@dataclass(frozen=True)
class RootClass:
    label: str
    norm_sq: Fraction
    count: int


@dataclass(frozen=True)
class RootData:
    """Norms, highest-root coefficients and the positive-root census.

    All entries are rationals tied to the standard realization of the root
    system (long-root norm 2 in the simply-laced case), independent of the
    coordinates any particular configuration uses.
    """

    family: str
    rank: int
    simple_norms: tuple[Fraction, ...]
    marks: tuple[int, ...]  # coefficients of the highest root over the simple roots
    theta_norm: Fraction
    census: tuple[RootClass, ...]

    @property
    def simply_laced(self) -> bool:
        return len(self.census) == 1


_E_MARKS = {6: (1, 2, 2, 3, 2, 1), 7: (2, 2, 3, 4, 3, 2, 1), 8: (2, 3, 4, 6, 5, 4, 3, 2)}
_E_COUNT = {6: 36, 7: 63, 8: 120}


def root_data(family: str, rank: int | None = None) -> RootData:
    two = Fraction(2)
    one = Fraction(1)
    four = Fraction(4)
    if family == "A":
        n = rank
        return RootData("A", n, (two,) * n, (1,) * n, two,
                        (RootClass("all", two, n * (n + 1) // 2),))
    if family == "B":
        n = rank
        marks = (1,) + (2,) * (n - 1)
        return RootData("B", n, (two,) * (n - 1) + (one,), marks, two,
                        (RootClass("short", one, n), RootClass("long", two, n * (n - 1))))
    if family == "C":
        n = rank
        marks = (2,) * (n - 1) + (1,)
        return RootData("C", n, (two,) * (n - 1) + (four,), marks, four,
                        (RootClass("short", two, n * (n - 1)), RootClass("long", four, n)))
    if family == "D":
        n = rank
        if n < 3:
            raise NoATableError("D needs rank >= 3")
        marks = (1,) + (2,) * (n - 3) + (1, 1)
        return RootData("D", n, (two,) * n, marks, two,
                        (RootClass("all", two, n * (n - 1)),))
    if family in ("E6", "E7", "E8"):
        n = int(family[1])
        return RootData(family, n, (two,) * n, _E_MARKS[n], two,
                        (RootClass("all", two, _E_COUNT[n]),))
    if family == "F4":
        return RootData("F4", 4, (two, two, one, one), (2, 3, 4, 2), two,
                        (RootClass("short", one, 12), RootClass("long", two, 12)))
    if family == "G2":
        return RootData("G2", 2, (Fraction(3), one), (2, 3), Fraction(3),
                        (RootClass("short", one, 3), RootClass("long", Fraction(3), 3)))
    if family == "BC":
        n = rank
        return RootData("BC", n, (), (), Fraction(0),
                        (RootClass("r", one, n), RootClass("s", four, n),
                         RootClass("q", two, n * (n - 1))))
    raise NoATableError("no root data for family %r" % family)


def _a_table(rd: RootData, mult: Mapping[str, Fraction]) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Coefficients (a_0, a_1..a_N) of the highest-root formula per family."""
    mult = {k: rat(v) for k, v in mult.items()}
    if rd.simply_laced:
        if set(mult) != {"all"}:
            raise NoATableError("simply-laced families take a single multiplicity 'all'")
        t = mult["all"]
        return t * t, (t * t,) * rd.rank
    if set(mult) != {"short", "long"}:
        raise NoATableError("family %s takes multiplicities 'short' and 'long'" % rd.family)
    p, q = mult["short"], mult["long"]
    n = rd.rank
    if rd.family == "B":
        a = [p * q] + [q * q] * (n - 2) + [p * q]
        return p * q, tuple(a)
    if rd.family == "C":
        a = [p * q] + [p * p] * (n - 2) + [p * q]
        return p * q, tuple(a)
    if rd.family == "F4":
        return p * q, (p * p, p * q, q * q, p * q)
    if rd.family == "G2":
        return p * p, (p * q, q * q)
    raise NoATableError("no coefficient table for family %r" % rd.family)


def gamma_tilde_sq(rd: RootData, mult: Mapping[str, Fraction]) -> Fraction:
    """gamma-tilde^2 by the highest-root formula
    -(1/8)(a_0 <theta,theta> + sum a_i n_i^2 <alpha_i,alpha_i>)."""
    a0, a = _a_table(rd, mult)
    total = a0 * rd.theta_norm
    for ai, ni, norm in zip(a, rd.marks, rd.simple_norms):
        total += ai * ni * ni * norm
    return -total / 8


def gamma_tilde_sq_dual(rd: RootData, mult: Mapping[str, Fraction]) -> Fraction:
    """gamma-tilde^2 through the dual root system beta-vee = 2 beta / <beta,beta>."""
    a0, a = _a_table(rd, mult)
    theta = rd.theta_norm
    total = a0 * 4 / theta
    for ai, ni, norm in zip(a, rd.marks, rd.simple_norms):
        nbar = Fraction(ni) * norm / theta
        total += nbar * nbar * ai * 4 / norm
    return -(theta * theta) / 32 * total


def classify_and_h(cfg: Configuration, rd: RootData) -> tuple[Fraction, dict[int, str]]:
    """Match covectors to census classes and recover the Gram factor h.

    Uses the intrinsic values v_a = a(a-vee) = <a,a>/h, which are invariant
    under any linear change of realization; the assignment census-class ->
    value is pinned by count matching and consistency of h across classes.
    """
    dv = duals(cfg)
    values: dict[Fraction, list[int]] = {}
    for i, a in enumerate(cfg.covectors):
        values.setdefault(dot(a, dv[i]), []).append(i)
    groups = sorted(values.items())
    census = sorted(rd.census, key=lambda c: (c.count, c.norm_sq))
    if len(groups) != len(census):
        raise ClassificationError(
            "configuration has %d norm classes, census has %d" % (len(groups), len(census))
        )
    from itertools import permutations

    valid = []
    for perm in permutations(range(len(census))):
        h = None
        ok = True
        for (v, idxs), ci in zip(groups, perm):
            cls = census[ci]
            if cls.count != len(idxs):
                ok = False
                break
            hc = cls.norm_sq / v
            if h is None:
                h = hc
            elif hc != h:
                ok = False
                break
        if ok:
            assignment = {i: census[ci].label for (v, idxs), ci in zip(groups, perm) for i in idxs}
            valid.append((h, assignment))
    if not valid:
        raise ClassificationError("covector classes do not match the census")
    hs = {h for h, _ in valid}
    if len(hs) != 1:
        raise ClassificationError("ambiguous census assignment")
    return valid[0]


def gamma_sq_direct(cfg: Configuration, rd: RootData) -> Fraction:
    """gamma^2 through gamma^2 * lambda^2 = -4 h^3.

    The factor h comes from the census trace identity
    h = (1/N) sum_a c_a <a,a>, evaluated through the intrinsic classification
    above, so any rational realization of the root system works.
    """
    h, _ = classify_and_h(cfg, rd)
    lam = lambda_sq(cfg)
    if lam == 0:
        raise ZeroDivisionError("lambda^2 vanishes")
    return -4 * h**3 / lam


def census_h(cfg: Configuration, rd: RootData, class_mults: Mapping[str, Fraction]) -> Fraction:
    """h = (1/N) sum over census classes of mult * count * norm^2."""
    total = Fraction(0)
    for cls in rd.census:
        total += rat(class_mults[cls.label]) * cls.count * cls.norm_sq
    return total / rd.rank
