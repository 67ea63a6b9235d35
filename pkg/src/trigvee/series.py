"""Decomposition of a configuration into maximal alpha-series (strings).

For a fixed covector alpha, two covectors g1, g2 outside alpha's collinearity
class are related when g1 + g2 or g1 - g2 equals m * alpha with m an integer
(m = 0 allowed).  The maximal classes of the induced equivalence partition
the rest of the configuration; within one series all wedges alpha ^ g agree
up to sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .configuration import Configuration
from .exactla import Vec


@dataclass(frozen=True)
class SeriesDecomposition:
    alpha: int
    series: tuple[tuple[int, ...], ...]

    def series_of(self, index: int) -> tuple[int, ...]:
        for s in self.series:
            if index in s:
                return s
        raise KeyError(index)


def _floor_frac(w: Fraction) -> Fraction:
    return w - (w.numerator // w.denominator)


def _transverse_part(alpha: Vec, gamma: Vec, pivot: int) -> tuple[Vec, Fraction]:
    """Write gamma = t*alpha + rho with rho[pivot] = 0; returns (rho, t)."""
    t = gamma[pivot] / alpha[pivot]
    rho = tuple(g - t * a for g, a in zip(gamma, alpha))
    return rho, t


def series_with_signs(
    cfg: Configuration, alpha_index: int, integral_steps: bool = True
) -> list[tuple[list[int], dict[int, int]]]:
    """Series together with the relative wedge signs of their members.

    For members b1, b2 of one series, alpha ^ b1 = s1*s2 * (alpha ^ b2) where
    s_i are the returned signs.  Grouping key: two covectors are related iff
    their sign-normalized transverse parts agree and the sign-weighted alpha
    coefficients differ by an integer, which is the transitive closure of the
    defining relation.
    """
    alpha = cfg.covectors[alpha_index]
    pivot = next(k for k in range(cfg.dim) if alpha[k] != 0)
    buckets: dict[tuple, tuple[list[int], dict[int, int]]] = {}
    order: list[tuple] = []
    for g, gamma in enumerate(cfg.covectors):
        rho, t = _transverse_part(alpha, gamma, pivot)
        if all(x == 0 for x in rho):
            continue  # collinear with alpha: belongs to delta_alpha, not to any series
        lead = next(x for x in rho if x != 0)
        sign = 1 if lead > 0 else -1
        key_vec = tuple(sign * x for x in rho)
        w = sign * t
        step = _floor_frac(w) if integral_steps else Fraction(0)
        key = (key_vec, step)
        if key not in buckets:
            buckets[key] = ([], {})
            order.append(key)
        members, signs = buckets[key]
        members.append(g)
        signs[g] = sign
    return [buckets[k] for k in order]


def alpha_series(
    cfg: Configuration, alpha_index: int, integral_steps: bool = True
) -> SeriesDecomposition:
    """Partition of everything outside alpha's collinearity class into series.

    With ``integral_steps=False`` the step m may be any rational (exploratory
    mode); the default requires m to be an integer multiple of alpha exactly
    as the series relation states it.
    """
    groups = series_with_signs(cfg, alpha_index, integral_steps)
    series = tuple(tuple(sorted(members)) for members, _ in groups)
    series = tuple(sorted(series, key=lambda s: s[0]))
    return SeriesDecomposition(alpha_index, series)
