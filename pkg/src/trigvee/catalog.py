"""Batch restriction catalogs: enumerate span-closed subsets, restrict, dedup.

Flats (subsets of the form configuration-intersect-span) are enumerated by
extending smaller flats one collinearity class at a time.  The heavy
combinatorial sweep runs in guarded floating point on intrinsic pairing data;
each deduplicated representative is then re-verified and restricted in exact
arithmetic.  Deduplication keys on intrinsic invariants of the restriction
and is a heuristic: full linear-equivalence testing is out of scope.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .configuration import Configuration, collinear_classes, duals, normalize_positive
from .exactla import dot
from .restriction import restrict
from .veesystem import lambda_sq, subsystem, vee_residuals


class CatalogError(RuntimeError):
    """An entry failed its exact re-verification."""


def pairing_profile(cfg: Configuration) -> tuple:
    """Intrinsic invariants of a configuration under linear equivalence.

    The configuration is first normalized to a positive system (merging
    opposite covectors, which leaves all vee-data unchanged); the profile
    collects the multiset of (multiplicity, a(a-vee)) diagonal data and the
    multiset of unordered pair data (multiplicities, |a(b-vee)|).  Invariant
    under any invertible change of coordinates and per-covector sign flips.
    """
    import warnings as _warnings

    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore")
        cfg = normalize_positive(cfg)
    dv = duals(cfg)
    n = len(cfg)
    diag = sorted(
        (cfg.multiplicities[i], dot(cfg.covectors[i], dv[i])) for i in range(n)
    )
    off = []
    for i in range(n):
        ai = cfg.covectors[i]
        for j in range(i + 1, n):
            ci, cj = cfg.multiplicities[i], cfg.multiplicities[j]
            lo, hi = (ci, cj) if ci <= cj else (cj, ci)
            off.append((lo, hi, abs(dot(ai, dv[j]))))
    return (cfg.dim, tuple(diag), tuple(sorted(off)))


def canonical_digest(cfg: Configuration) -> str:
    """Heuristic canonical-form hash of a configuration (see pairing_profile)."""
    return hashlib.sha256(repr(pairing_profile(cfg)).encode()).hexdigest()[:16]


def equivalent_profiles(a: Configuration, b: Configuration) -> bool:
    return pairing_profile(a) == pairing_profile(b)


@dataclass(frozen=True)
class FlatClass:
    span_indices: tuple[int, ...]  # representative anchors spanning the flat
    n_members: int
    corank: int
    class_size: int


def _float_matrix(rows) -> np.ndarray:
    return np.array([[float(x) for x in r] for r in rows], dtype=float)


_PAR_TOL = 1e-9
_ROUND = 7


def enumerate_flat_classes(cfg: Configuration, max_corank: int) -> list[FlatClass]:
    """Deduplicated classes of span-closed subsets of corank 1..max_corank.

    Flats with identical member-pairing multisets and identical restriction
    fingerprints (merged multiplicity profile plus projected pairing
    multiset) are collected into one class.
    """
    if not 0 <= max_corank < cfg.dim:
        raise ValueError("max_corank must lie in [0, dim)")
    if max_corank == 0:
        return []
    n = len(cfg)
    av = _float_matrix(cfg.covectors)
    dv = _float_matrix(duals(cfg))
    vf = av @ dv.T
    mults = np.array([float(c) for c in cfg.multiplicities])
    classes = collinear_classes(cfg)
    anchors = [cls.anchor for cls in classes]

    # level 1: flats are the collinearity classes themselves (exact)
    level = {}
    for cls in classes:
        mask = np.zeros(n, dtype=bool)
        mask[list(cls.indices)] = True
        level[np.packbits(mask).tobytes()] = ((cls.anchor,), mask)

    flats: list[tuple[tuple[int, ...], np.ndarray]] = list(level.values())
    for _ in range(2, max_corank + 1):
        nxt: dict[bytes, tuple[tuple[int, ...], np.ndarray]] = {}
        for span, mask in level.values():
            basis = av[list(span)]
            q, _ = np.linalg.qr(basis.T)
            resid = av - (av @ q) @ q.T
            norms = np.linalg.norm(resid, axis=1)
            inspan = norms < _PAR_TOL
            unit = resid / np.where(inspan, 1.0, norms)[:, None]
            par = np.abs(unit @ unit.T) > 1.0 - _PAR_TOL
            cand = [a for a in anchors if not mask[a]]
            if not cand:
                continue
            new_masks = par[cand] | mask[None, :] | inspan[None, :]
            packed = np.packbits(new_masks, axis=1)
            for ci, a in enumerate(cand):
                key = packed[ci].tobytes()
                if key not in nxt:
                    nxt[key] = (span + (a,), new_masks[ci])
        level = nxt
        flats.extend(level.values())

    groups: dict[tuple, list[tuple[tuple[int, ...], int]]] = {}
    order: list[tuple] = []
    absvf = np.abs(vf)
    rvec = np.random.default_rng(1234).uniform(0.5, 1.5, cfg.dim)
    for span, mask in flats:
        key = _flat_key(av, vf, absvf, rvec, mults, span, mask)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append((span, int(mask.sum())))
    out = []
    for key in order:
        members = groups[key]
        span, nmem = members[0]
        out.append(FlatClass(span, nmem, len(span), len(members)))
    return out


def _flat_key(av, vf, absvf, rvec, mults, span, mask) -> tuple:
    """Grouping fingerprint of one flat: member pairings, merged multiplicity
    profile of the projected covectors, and moments of the projected pairing
    multiset.  All components are invariant under symmetries of the parent
    (which act on covectors up to sign).  Projected covectors are merged via
    a fixed random linear hash of their sign-canonical rounded coordinates."""
    keep = ~mask
    s = list(span)
    m0 = vf[np.ix_(s, s)]
    b = vf[s][:, keep]
    try:
        x = np.linalg.solve(m0, b)
    except np.linalg.LinAlgError:  # isotropic flat of an indefinite parent
        x = np.linalg.lstsq(m0, b, rcond=None)[0]
    ahat = av[keep] - x.T @ av[s]
    rows = np.round(ahat, _ROUND)
    lead = rows[np.arange(rows.shape[0]), (np.abs(rows) > 10.0**-_ROUND).argmax(1)]
    rows *= np.where(lead < 0.0, -1.0, 1.0)[:, None]
    proj = rows @ rvec
    order = proj.argsort()
    ps = proj[order]
    starts = np.empty(ps.size, dtype=bool)
    starts[0] = True
    np.greater(np.abs(np.diff(ps)), 10.0**-_ROUND, out=starts[1:])
    profile = np.add.reduceat(mults[keep][order], np.flatnonzero(starts))
    profile = np.sort(np.round(profile, _ROUND))
    vhat = np.abs(vf[keep][:, keep] - b.T @ x)
    memvals = np.sort(np.round(absvf[mask][:, mask], _ROUND), axis=None)
    return (
        int(memvals.size),
        len(span),
        memvals.tobytes(),
        profile.tobytes(),
        round(float(vhat.sum()), 5),
        round(float((vhat * vhat).sum()), 5),
        round(float(vhat.max()), 7),
    )


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    params: str
    corank: int
    span_indices: tuple[int, ...]
    n_members: int
    class_size: int
    digest: str
    lambda_sq: Fraction
    covector_count: int
    child_dim: int
    lambda_verified: bool = True  # one-dimensional children carry no wedge constraint

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "corank": self.corank,
            "span_indices": list(self.span_indices),
            "n_members": self.n_members,
            "class_size": self.class_size,
            "digest": self.digest,
            "lambda_sq": str(self.lambda_sq),
            "lambda_verified": self.lambda_verified,
            "covector_count": self.covector_count,
            "child_dim": self.child_dim,
        }


@dataclass(frozen=True)
class Catalog:
    family: str
    params: str
    max_corank: int
    parent_lambda_sq: Fraction
    entries: tuple[CatalogEntry, ...]

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "max_corank": self.max_corank,
            "parent_lambda_sq": str(self.parent_lambda_sq),
            "entries": [e.to_json_dict() for e in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def build_catalog(
    cfg: Configuration, family: str, params: str, max_corank: int
) -> Catalog:
    """Restrict along every flat class and emit deduplicated, verified entries.

    Every entry's child is re-checked in exact arithmetic: it must pass the
    vee-condition and carry the parent's lambda^2; a failure raises
    CatalogError.
    """
    parent_lam = lambda_sq(cfg)
    entries: dict[str, CatalogEntry] = {}
    root_entry = CatalogEntry(
        family, params, 0, (), len(cfg), 1, canonical_digest(cfg), parent_lam, len(cfg), cfg.dim
    )
    entries[root_entry.digest] = root_entry
    if max_corank > 0:
        for fc in enumerate_flat_classes(cfg, max_corank):
            handle = subsystem(cfg, fc.span_indices)
            if len(handle.member_indices) != fc.n_members:
                raise CatalogError("float flat enumeration disagrees with exact members")
            res = restrict(cfg, handle)
            child = res.child
            if any(r.residual != 0 for r in vee_residuals(child)):
                raise CatalogError("restricted child failed the vee-condition")
            if child.dim >= 2:
                child_lam = lambda_sq(child)
                if child_lam != parent_lam:
                    raise CatalogError("lambda^2 not preserved by restriction")
                verified = True
            else:
                child_lam = parent_lam
                verified = False
            digest = canonical_digest(child)
            if digest in entries:
                old = entries[digest]
                entries[digest] = CatalogEntry(
                    family, params, old.corank, old.span_indices, old.n_members,
                    old.class_size + fc.class_size, digest, child_lam,
                    old.covector_count, old.child_dim, old.lambda_verified,
                )
            else:
                entries[digest] = CatalogEntry(
                    family, params, fc.corank, fc.span_indices, len(handle.member_indices),
                    fc.class_size, digest, child_lam, len(child), child.dim, verified,
                )
    ordered = tuple(
        sorted(entries.values(), key=lambda e: (e.corank, e.child_dim, e.digest))
    )
    return Catalog(family, params, max_corank, parent_lam, ordered)
