"""Configurations: finite covector collections with rational multiplicities.

The pair (covectors, multiplicities) determines the weighted Gram form, dual
vectors, collinearity classes with their weighted sums, and a positive-system
normalization.  All values are immutable and hashable, so derived data is
memoized per configuration.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .exactla import (
    Mat,
    Vec,
    dot,
    invert,
    is_zero_vec,
    mat_vec,
    primitive,
    rat,
    vec,
)


class MixedClassError(ValueError):
    """A subset handed to c_delta spans more than one collinearity class."""


class NoGenericFunctionalError(ValueError):
    """No functional separates the covectors (only possible with a zero covector)."""


class ZeroMultiplicityWarning(UserWarning):
    """Covectors whose merged multiplicity cancelled to zero were dropped."""


@dataclass(frozen=True)
class Configuration:
    """A finite collection of covectors with rational multiplicities."""

    dim: int
    covectors: tuple[Vec, ...]
    multiplicities: tuple[Fraction, ...]
    name: str | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if len(self.covectors) != len(self.multiplicities):
            raise ValueError("covectors and multiplicities must have equal length")
        for a in self.covectors:
            if len(a) != self.dim:
                raise ValueError("covector length does not match dimension")
            if is_zero_vec(a):
                raise ValueError("zero covector is not allowed")

    def __len__(self) -> int:
        return len(self.covectors)

    def with_name(self, name: str) -> "Configuration":
        return Configuration(self.dim, self.covectors, self.multiplicities, name)


def configuration(dim: int, covectors: Iterable[Iterable], multiplicities: Iterable, name=None) -> Configuration:
    """Coercing constructor: entries may be ints, strings or Fractions."""
    return Configuration(dim, tuple(vec(a) for a in covectors), vec(multiplicities), name)


@lru_cache(maxsize=None)
def gram(cfg: Configuration) -> Mat:
    """The weighted Gram form: sum of c_a * (a (x) a) as an N x N matrix."""
    n = cfg.dim
    g = [[Fraction(0)] * n for _ in range(n)]
    for a, c in zip(cfg.covectors, cfg.multiplicities):
        for i in range(n):
            if a[i] == 0:
                continue
            cai = c * a[i]
            row = g[i]
            for j in range(n):
                row[j] += cai * a[j]
    return tuple(tuple(row) for row in g)


@lru_cache(maxsize=None)
def gram_inverse(cfg: Configuration) -> Mat:
    return invert(gram(cfg))


def dual(cfg: Configuration, gamma: Iterable) -> Vec:
    """The vector gamma-vee with G(gamma-vee, v) = gamma(v) for all v."""
    return mat_vec(gram_inverse(cfg), vec(gamma))


@lru_cache(maxsize=None)
def duals(cfg: Configuration) -> tuple[Vec, ...]:
    gi = gram_inverse(cfg)
    return tuple(mat_vec(gi, a) for a in cfg.covectors)


@dataclass(frozen=True)
class CollinearClass:
    """One maximal proportionality class; ratios are taken against the anchor."""

    anchor: int
    members: tuple[tuple[int, Fraction], ...]  # (covector index, ratio k with gamma = k * anchor)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.members)


@lru_cache(maxsize=None)
def collinear_classes(cfg: Configuration) -> tuple[CollinearClass, ...]:
    """Partition of the covector indices into proportionality classes."""
    buckets: dict[Vec, list[int]] = {}
    for i, a in enumerate(cfg.covectors):
        buckets.setdefault(primitive(a), []).append(i)
    classes = []
    for key in sorted(buckets, key=lambda k: buckets[k][0]):
        idxs = buckets[key]
        anchor = idxs[0]
        a0 = cfg.covectors[anchor]
        p = next(k for k in range(cfg.dim) if a0[k] != 0)
        members = tuple((i, cfg.covectors[i][p] / a0[p]) for i in idxs)
        classes.append(CollinearClass(anchor, members))
    return tuple(classes)


def class_of(cfg: Configuration, index: int) -> CollinearClass:
    for cls in collinear_classes(cfg):
        if index in cls.indices:
            return cls
    raise IndexError(index)


def c_delta(cfg: Configuration, subset: Iterable[int], anchor: int) -> Fraction:
    """The weighted sum over a subset of one collinearity class.

    Equals sum of c_g * k_g^2 with ratios k_g relative to the anchor; zero or
    nonzero status does not depend on the anchor choice.
    """
    subset = tuple(subset)
    cls = class_of(cfg, anchor)
    ratios = dict(cls.members)
    if any(i not in ratios for i in subset):
        raise MixedClassError("subset is not contained in the anchor's collinearity class")
    k_anchor = ratios[anchor]
    total = Fraction(0)
    for i in subset:
        k = ratios[i] / k_anchor
        total += cfg.multiplicities[i] * k * k
    return total


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


def auto_functional(cfg: Configuration) -> Vec:
    """Deterministic generic functional (1, eps, eps^2, ...), eps = 1/prime."""
    for p in _PRIMES:
        eps = Fraction(1, p)
        phi = tuple(eps**k for k in range(cfg.dim))
        if all(dot(a, phi) != 0 for a in cfg.covectors):
            return phi
    raise NoGenericFunctionalError("could not separate covectors from zero")


def normalize_positive(cfg: Configuration, functional: Iterable | None = None) -> Configuration:
    """Flip covectors to the positive side of a functional and merge duplicates.

    Exact duplicates are merged with summed multiplicities; merged
    multiplicities of zero are dropped with a ZeroMultiplicityWarning.  The
    Gram form is unchanged by this operation.
    """
    phi = auto_functional(cfg) if functional is None else vec(functional)
    merged: dict[Vec, Fraction] = {}
    order: list[Vec] = []
    for a, c in zip(cfg.covectors, cfg.multiplicities):
        v = dot(a, phi)
        if v == 0:
            raise NoGenericFunctionalError("functional vanishes on a covector")
        b = a if v > 0 else tuple(-x for x in a)
        if b not in merged:
            merged[b] = Fraction(0)
            order.append(b)
        merged[b] += c
    covs, mults = [], []
    dropped = 0
    for b in order:
        if merged[b] == 0:
            dropped += 1
            continue
        covs.append(b)
        mults.append(merged[b])
    if dropped:
        warnings.warn(
            "%d covector(s) merged to zero multiplicity and were dropped" % dropped,
            ZeroMultiplicityWarning,
            stacklevel=2,
        )
    return Configuration(cfg.dim, tuple(covs), tuple(mults), cfg.name)


def apply_matrix(cfg: Configuration, u: Mat) -> Configuration:
    """Compose every covector with the linear map given by u (columns act on V)."""
    cols = tuple(zip(*u))
    covs = tuple(tuple(dot(a, col) for col in cols) for a in cfg.covectors)
    return Configuration(cfg.dim, covs, cfg.multiplicities, cfg.name)


def flip_classes(cfg: Configuration, class_positions: Iterable[int]) -> Configuration:
    """Negate entire collinearity classes (class indices into collinear_classes)."""
    classes = collinear_classes(cfg)
    flip: set[int] = set()
    for p in class_positions:
        flip.update(classes[p].indices)
    covs = tuple(
        tuple(-x for x in a) if i in flip else a for i, a in enumerate(cfg.covectors)
    )
    return Configuration(cfg.dim, covs, cfg.multiplicities, cfg.name)


# --- JSON interchange --------------------------------------------------------


def _rat_from_json(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ValueError("rationals must be serialized as strings or integers, got %r" % (x,))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.replace("−", "-"))
    raise ValueError("cannot parse rational from %r" % (x,))


def to_json_dict(cfg: Configuration) -> dict:
    d = {
        "dim": cfg.dim,
        "covectors": [[str(x) for x in a] for a in cfg.covectors],
        "multiplicities": [str(c) for c in cfg.multiplicities],
    }
    if cfg.name is not None:
        d["name"] = cfg.name
    return d


def from_json_dict(d: Mapping) -> Configuration:
    if not isinstance(d.get("dim"), int):
        raise ValueError("missing or non-integer 'dim'")
    covs = [tuple(_rat_from_json(x) for x in a) for a in d["covectors"]]
    mults = [_rat_from_json(c) for c in d["multiplicities"]]
    return Configuration(d["dim"], tuple(covs), tuple(mults), d.get("name"))
