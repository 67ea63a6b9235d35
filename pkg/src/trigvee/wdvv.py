"""Independent floating-point verification of the WDVV identities.

Builds the third-derivative matrices of the trigonometric prepotential with
the auxiliary cubic variable, evaluates the commutator conditions and the
tangent-space product at seeded random sample points, and reports scaled
residuals.  Only the cotangent is ever evaluated; the prepotential itself is
never needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .configuration import Configuration, duals, gram


class PoleTooCloseError(ValueError):
    """A sample point is too close to one of the covector hyperplanes."""


class SingularBaseFormError(ValueError):
    """The constant matrix of the y-derivatives is numerically singular."""


@dataclass(frozen=True)
class SamplePoint:
    x: tuple[float, ...]
    min_sine: float


@dataclass(frozen=True)
class ResidualReport:
    max_residual: float
    tol: float
    passed: bool
    seed: int
    points: int


@dataclass(frozen=True)
class AssociativityReport:
    max_residual: float
    tol: float
    passed: bool
    seed: int
    points: int
    wdvv_max_residual: float
    agrees_with_wdvv: bool


def _float_covectors(cfg: Configuration) -> np.ndarray:
    return np.array([[float(x) for x in a] for a in cfg.covectors], dtype=float)


def _float_mults(cfg: Configuration) -> np.ndarray:
    return np.array([float(c) for c in cfg.multiplicities], dtype=float)


def _lambda_from_sq(lambda_sq) -> complex:
    # principal square root; the verdict depends on lambda^2 only
    return complex(np.sqrt(complex(float(lambda_sq))))


DEFAULT_GUARD = 1.0 / 20


def sample_points(
    cfg: Configuration, points: int, seed: int, guard: float = DEFAULT_GUARD
) -> list[SamplePoint]:
    """Seeded points with min over covectors of |sin a(x)| above the pole guard."""
    rng = np.random.default_rng(seed)
    av = _float_covectors(cfg)
    out: list[SamplePoint] = []
    tries = 0
    while len(out) < points:
        tries += 1
        if tries > 1000 * points:
            raise PoleTooCloseError("could not find enough pole-free sample points")
        x = rng.uniform(-2.0, 2.0, cfg.dim)
        ms = float(np.min(np.abs(np.sin(av @ x)))) if len(cfg) else 1.0
        if ms >= guard:
            out.append(SamplePoint(tuple(x), ms))
    return out


def base_form(cfg: Configuration) -> np.ndarray:
    """The constant (N+1)x(N+1) matrix of y-derivatives: 2*blockdiag(sum c a(x)a, 1)."""
    n = cfg.dim
    g = np.array([[float(x) for x in row] for row in gram(cfg)])
    f = np.zeros((n + 1, n + 1))
    f[:n, :n] = 2.0 * g
    f[n, n] = 2.0
    return f


def third_derivs(cfg: Configuration, lam: complex, pt: SamplePoint, guard: float = DEFAULT_GUARD):
    """All N+1 third-derivative matrices at a sample point.

    The trig part contributes lam * c_a a_i a_p a_q cot a(x) to the top-left
    blocks of F_1..F_N; the cubic part contributes the constant borders and
    the base form F_{N+1}.
    """
    n = cfg.dim
    av = _float_covectors(cfg)
    c = _float_mults(cfg)
    x = np.asarray(pt.x)
    vals = av @ x
    s = np.sin(vals)
    if len(cfg) and float(np.min(np.abs(s))) < guard:
        raise PoleTooCloseError("sample point violates the pole guard")
    cot = np.cos(vals) / s
    gm = (av.T * c) @ av
    dtype = complex if isinstance(lam, complex) and lam.imag != 0 else float
    lam_ = lam if dtype is complex else lam.real
    trig = np.einsum("a,a,ai,ap,aq->ipq", c, cot, av, av, av)
    mats = []
    for i in range(n):
        f = np.zeros((n + 1, n + 1), dtype=dtype)
        f[:n, :n] = lam_ * trig[i]
        f[:n, n] = 2.0 * gm[i]
        f[n, :n] = 2.0 * gm[i]
        mats.append(f)
    mats.append(base_form(cfg).astype(dtype))
    return mats


def wdvv_residual(
    cfg: Configuration,
    lambda_sq,
    points: int = 20,
    seed: int = 42,
    tol: float = 1e-8,
    guard: float = DEFAULT_GUARD,
) -> ResidualReport:
    """Max scaled commutator residual of F_i F_{N+1}^{-1} F_j over seeded points."""
    lam = _lambda_from_sq(lambda_sq)
    pts = sample_points(cfg, points, seed, guard)
    base = base_form(cfg)
    if np.linalg.cond(base) > 1e12:
        raise SingularBaseFormError("base form is numerically singular")
    binv = np.linalg.inv(base)
    binv_norm = np.linalg.norm(binv)
    worst = 0.0
    n = cfg.dim
    for pt in pts:
        mats = third_derivs(cfg, lam, pt, guard)
        prods = [m @ binv for m in mats[:n]]
        norms = [np.linalg.norm(m) for m in mats[:n]]
        for i in range(n):
            for j in range(i + 1, n):
                comm = prods[i] @ mats[j] - prods[j] @ mats[i]
                scale = 1.0 + norms[i] * binv_norm * norms[j]
                worst = max(worst, float(np.linalg.norm(comm)) / scale)
    return ResidualReport(worst, tol, bool(worst < tol), seed, points)


def product(cfg: Configuration, lam: complex, pt: SamplePoint, a, b, guard: float = DEFAULT_GUARD):
    """The tangent-space product of two vectors of V + U at a sample point.

    On V it is sum over covectors of c w(a) w(b) ((lam/2) cot w(x) w-vee + E),
    extended by linearity with E acting as the identity.
    """
    n = cfg.dim
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    av = _float_covectors(cfg)
    c = _float_mults(cfg)
    x = np.asarray(pt.x)
    vals = av @ x
    s = np.sin(vals)
    if len(cfg) and float(np.min(np.abs(s))) < guard:
        raise PoleTooCloseError("sample point violates the pole guard")
    cot = np.cos(vals) / s
    coef = c * (av @ a[:n]) * (av @ b[:n])
    out = np.zeros(n + 1, dtype=complex)
    if np.any(coef):
        # duals only exist for a nonsingular Gram form, which the weighted
        # sum does not need when every coefficient vanishes
        dv = np.array([[float(x_) for x_ in d] for d in duals(cfg)])
        out[:n] = (lam / 2.0) * (coef * cot) @ dv
    out[n] = coef.sum()
    out += b[n] * np.concatenate([a[:n], [0.0]])
    out += a[n] * np.concatenate([b[:n], [0.0]])
    out[n] += a[n] * b[n]
    return out


def associativity_residual(
    cfg: Configuration,
    lambda_sq,
    points: int = 20,
    seed: int = 42,
    tol: float = 1e-8,
    triples: int = 4,
    guard: float = DEFAULT_GUARD,
) -> AssociativityReport:
    """Max scaled residual of (a*b)*c - a*(b*c) over seeded points and triples.

    Shares its sample points with the commutator check and reports whether
    the two verdicts agree.
    """
    lam = _lambda_from_sq(lambda_sq)
    pts = sample_points(cfg, points, seed, guard)
    rng = np.random.default_rng(seed + 1)
    n = cfg.dim
    worst = 0.0
    for pt in pts:
        for _ in range(triples):
            a, b, cc = (rng.uniform(-1.0, 1.0, n + 1) for _ in range(3))
            ab = product(cfg, lam, pt, a, b, guard)
            bc = product(cfg, lam, pt, b, cc, guard)
            lhs = product(cfg, lam, pt, ab, cc, guard)
            rhs = product(cfg, lam, pt, a, bc, guard)
            scale = 1.0 + np.linalg.norm(ab) * np.linalg.norm(cc) + np.linalg.norm(bc) * np.linalg.norm(a)
            worst = max(worst, float(np.linalg.norm(lhs - rhs)) / scale)
    wd = wdvv_residual(cfg, lambda_sq, points, seed, tol, guard)
    passed = bool(worst < tol)
    return AssociativityReport(
        worst, tol, passed, seed, points, wd.max_residual, passed == wd.passed
    )


def trig_second_derivs(cfg: Configuration, lam: complex, x) -> np.ndarray:
    """Second derivatives of the trig part: lam * sum c_a a_i a_j log|sin a(x)|.

    Central finite differences of this matrix reproduce the trig third
    derivatives; used to validate the analytic derivative rules.
    """
    av = _float_covectors(cfg)
    c = _float_mults(cfg)
    vals = av @ np.asarray(x)
    logs = np.log(np.abs(np.sin(vals)))
    return lam * (av.T * (c * logs)) @ av
