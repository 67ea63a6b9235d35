"""Restriction of a configuration to the common kernel of a subsystem.

Covectors outside the subsystem are projected onto the intersection of the
member kernels; exactly equal projections are merged with summed
multiplicities (proportional-but-unequal projections stay distinct).  The
resulting configuration carries the same coupling constant as its parent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .configuration import Configuration, c_delta, class_of, gram
from .exactla import Vec, dot, nullspace, rank
from .veesystem import SubsystemHandle


class CDeltaZeroError(ValueError):
    """A spanning covector's collinearity class has vanishing weighted sum."""


class DegenerateRestrictedGramError(ValueError):
    """The Gram form restricted to the kernel subspace is degenerate."""


class EmptyChildError(ValueError):
    """Every covector restricts to zero."""


@dataclass(frozen=True)
class RestrictionResult:
    child: Configuration
    basis: tuple[Vec, ...]  # basis of the kernel subspace, in parent coordinates
    provenance: tuple[tuple[int, ...], ...]  # parent indices merged into each child covector


def restrict(cfg: Configuration, sub: SubsystemHandle) -> RestrictionResult:
    """Project the configuration onto the common kernel of the subsystem.

    The caller is expected to pass a vee-system with a defined lambda^2; the
    hypotheses actually enforced here are the nonvanishing class sums of the
    spanning covectors and nondegeneracy of the restricted Gram form.
    """
    for i in sub.span_indices:
        cls = class_of(cfg, i)
        if c_delta(cfg, cls.indices, cls.anchor) == 0:
            raise CDeltaZeroError(
                "collinearity class of spanning covector %d has zero weighted sum" % i
            )

    basis = nullspace([cfg.covectors[i] for i in sub.span_indices], cfg.dim)
    if not basis:
        raise EmptyChildError("the subsystem spans the whole dual space")
    g = gram(cfg)
    restricted_gram = [
        [dot(u, tuple(dot(row, v) for row in g)) for v in basis] for u in basis
    ]
    if rank(restricted_gram) < len(basis):
        raise DegenerateRestrictedGramError("restricted Gram form is degenerate")

    members = set(sub.member_indices)
    merged: dict[Vec, list] = {}
    order: list[Vec] = []
    for j, a in enumerate(cfg.covectors):
        if j in members:
            continue
        pa = tuple(dot(a, b) for b in basis)
        if all(x == 0 for x in pa):
            # only covectors inside the span can vanish here; closure of the
            # handle guarantees those are members
            continue
        if pa not in merged:
            merged[pa] = [Fraction(0), []]
            order.append(pa)
        merged[pa][0] += cfg.multiplicities[j]
        merged[pa][1].append(j)
    if not order:
        raise EmptyChildError("all restrictions vanish")

    covs = tuple(order)
    mults = tuple(merged[p][0] for p in order)
    provenance = tuple(tuple(merged[p][1]) for p in order)
    name = None if cfg.name is None else "%s | restricted along %s" % (
        cfg.name,
        list(sub.span_indices),
    )
    child = Configuration(len(basis), covs, mults, name)
    return RestrictionResult(child, tuple(basis), provenance)
