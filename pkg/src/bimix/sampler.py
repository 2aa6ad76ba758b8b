"""Entrywise sampling of weighted adjacency matrices.

Every supported edge-weight law produces independent entries A(i, j) whose
expectation equals the supplied mean matrix entry omega(i, j).  The mean
matrix must lie inside the law's admissible domain, which is checked before
any random draw happens.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

KINDS = (
    "bernoulli",
    "poisson",
    "binomial",
    "normal",
    "exponential",
    "uniform",
    "logistic",
    "signed",
)

# Sign pattern the connectivity matrix must satisfy for each edge law.
_SIGN_REQUIREMENT = {
    "bernoulli": "nonnegative",
    "poisson": "strictly-positive",
    "binomial": "nonnegative",
    "normal": "any-real",
    "exponential": "strictly-positive",
    "uniform": "nonnegative",
    "logistic": "any-real",
    "signed": "any-real",
}


class SamplingDomainError(ValueError):
    """A mean-matrix entry lies outside the edge law's admissible domain."""


@dataclass(frozen=True)
class EdgeDistribution:
    """One of the supported edge-weight laws plus its shape parameters.

    Parameters are present exactly for the kinds that need them: ``m``
    (trial count) for binomial, ``sigma2`` (variance) for normal, ``beta``
    (scale) for logistic.
    """

    kind: str
    m: int | None = None
    sigma2: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}; expected one of {KINDS}")
        needs = {"binomial": "m", "normal": "sigma2", "logistic": "beta"}.get(self.kind)
        for param in ("m", "sigma2", "beta"):
            value = getattr(self, param)
            if param == needs:
                if value is None:
                    raise ValueError(f"{self.kind} distribution requires parameter {param!r}")
            elif value is not None:
                raise ValueError(f"{self.kind} distribution takes no parameter {param!r}")
        if self.kind == "binomial":
            if int(self.m) != self.m or self.m < 1:
                raise ValueError(f"binomial trial count m must be a positive integer, got {self.m!r}")
            object.__setattr__(self, "m", int(self.m))
        if self.kind == "normal":
            if not (self.sigma2 >= 0.0):
                raise ValueError(f"normal variance sigma2 must be >= 0, got {self.sigma2!r}")
            object.__setattr__(self, "sigma2", float(self.sigma2))
        if self.kind == "logistic":
            if not (self.beta > 0.0):
                raise ValueError(f"logistic scale beta must be > 0, got {self.beta!r}")
            object.__setattr__(self, "beta", float(self.beta))

    @classmethod
    def bernoulli(cls) -> "EdgeDistribution":
        return cls("bernoulli")

    @classmethod
    def poisson(cls) -> "EdgeDistribution":
        return cls("poisson")

    @classmethod
    def binomial(cls, m: int) -> "EdgeDistribution":
        return cls("binomial", m=m)

    @classmethod
    def normal(cls, sigma2: float) -> "EdgeDistribution":
        return cls("normal", sigma2=sigma2)

    @classmethod
    def exponential(cls) -> "EdgeDistribution":
        return cls("exponential")

    @classmethod
    def uniform(cls) -> "EdgeDistribution":
        return cls("uniform")

    @classmethod
    def logistic(cls, beta: float) -> "EdgeDistribution":
        return cls("logistic", beta=beta)

    @classmethod
    def signed(cls) -> "EdgeDistribution":
        return cls("signed")

    def label(self) -> str:
        """Short human-readable tag, e.g. ``binomial(m=7)``."""
        if self.kind == "binomial":
            return f"binomial(m={self.m})"
        if self.kind == "normal":
            return f"normal(sigma2={self.sigma2})"
        if self.kind == "logistic":
            return f"logistic(beta={self.beta})"
        return self.kind

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for param in ("m", "sigma2", "beta"):
            value = getattr(self, param)
            if value is not None:
                out[param] = value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "EdgeDistribution":
        return cls(
            kind=data["kind"],
            m=data.get("m"),
            sigma2=data.get("sigma2"),
            beta=data.get("beta"),
        )


@dataclass(frozen=True)
class RandomSource:
    """Seedable random source with indexed substreams.

    Identical ``(seed, stream)`` pairs yield identical draw sequences on
    every run.  Substreams are independent, so replicates and grid points
    can be sampled in any order (or in parallel) without changing results.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if int(self.stream) < 0:
            raise ValueError(f"stream index must be nonnegative, got {self.stream!r}")
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "stream", int(self.stream))

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))

    def substream(self, offset: int) -> "RandomSource":
        return RandomSource(self.seed, self.stream + offset)


@dataclass(frozen=True)
class RhoInterval:
    """Admissible interval for the scale parameter rho, with open/closed ends."""

    lo: float
    hi: float
    lo_open: bool = True
    hi_open: bool = False

    def contains(self, x: float) -> bool:
        if not math.isfinite(x):
            return False
        above = x > self.lo if self.lo_open else x >= self.lo
        below = x < self.hi if self.hi_open else x <= self.hi
        return above and below

    def __str__(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        hi = "inf" if math.isinf(self.hi) else f"{self.hi:g}"
        return f"{left}{self.lo:g}, {hi}{right}"


def admissible_rho_interval(dist: EdgeDistribution) -> RhoInterval:
    """Range of scale parameters rho compatible with the edge law.

    Bernoulli means are probabilities so rho <= 1; binomial success
    probabilities cap rho at the trial count m; the signed law needs the
    two point probabilities (1 +/- omega)/2 to stay inside (0, 1).
    """
    if dist.kind == "bernoulli":
        return RhoInterval(0.0, 1.0, lo_open=True, hi_open=False)
    if dist.kind == "binomial":
        return RhoInterval(0.0, float(dist.m), lo_open=True, hi_open=False)
    if dist.kind == "signed":
        return RhoInterval(0.0, 1.0, lo_open=True, hi_open=True)
    return RhoInterval(0.0, math.inf, lo_open=True, hi_open=True)


def required_sign_class(dist: EdgeDistribution) -> str:
    """Weakest sign pattern the connectivity matrix must satisfy for ``dist``."""
    return _SIGN_REQUIREMENT[dist.kind]


def distribution_gamma(dist: EdgeDistribution, rho: float) -> float:
    """Upper bound on the normalized noise level max Var[A(i,j)] / rho.

    Per kind: bernoulli, poisson and binomial give 1; normal gives
    sigma2/rho; exponential gives rho; uniform gives rho/3; logistic gives
    pi^2 beta^2 / (3 rho); signed gives 1/rho.
    """
    interval = admissible_rho_interval(dist)
    if not interval.contains(rho):
        raise SamplingDomainError(
            f"rho={rho!r} outside admissible interval {interval} for {dist.kind}"
        )
    if dist.kind in ("bernoulli", "poisson", "binomial"):
        return 1.0
    if dist.kind == "normal":
        return dist.sigma2 / rho
    if dist.kind == "exponential":
        return rho
    if dist.kind == "uniform":
        return rho / 3.0
    if dist.kind == "logistic":
        return math.pi**2 * dist.beta**2 / (3.0 * rho)
    return 1.0 / rho  # signed


def _first_violation(omega: np.ndarray, bad: np.ndarray, bound: str, kind: str) -> str:
    i, j = np.argwhere(bad)[0]
    return f"{kind} mean at entry ({i}, {j}) is {omega[i, j]!r}, outside {bound}"


def _check_domain(omega: np.ndarray, dist: EdgeDistribution) -> None:
    if not np.all(np.isfinite(omega)):
        bad = ~np.isfinite(omega)
        raise SamplingDomainError(_first_violation(omega, bad, "finite values", dist.kind))
    kind = dist.kind
    if kind == "bernoulli":
        bad = (omega < 0.0) | (omega > 1.0)
        bound = "[0, 1]"
    elif kind == "poisson":
        bad = omega < 0.0
        bound = "[0, inf)"
    elif kind == "binomial":
        bad = (omega < 0.0) | (omega > dist.m)
        bound = f"[0, {dist.m}]"
    elif kind == "exponential":
        bad = omega <= 0.0
        bound = "(0, inf)"
    elif kind == "uniform":
        bad = omega < 0.0
        bound = "[0, inf)"
    elif kind == "signed":
        bad = np.abs(omega) > 1.0
        bound = "[-1, 1]"
    else:  # normal, logistic accept any finite mean
        return
    if bad.any():
        raise SamplingDomainError(_first_violation(omega, bad, bound, kind))


def sample_adjacency(
    omega: np.ndarray, dist: EdgeDistribution, rng: RandomSource
) -> np.ndarray:
    """Draw an adjacency matrix with independent entries and mean ``omega``.

    Entry supports per kind: bernoulli in {0, 1}, poisson in the nonnegative
    integers, binomial in {0, ..., m}, signed in {-1, 1}, exponential in
    (0, inf), uniform in [0, 2 omega(i, j)], normal and logistic anywhere on
    the real line.  The mirrored uniform law on [2 omega, 0] for negative
    means is obtained by negating a sample drawn with ``-omega``.
    """
    omega = np.asarray(omega, dtype=float)
    if omega.ndim != 2:
        raise ValueError(f"mean matrix must be 2-dimensional, got shape {omega.shape}")
    _check_domain(omega, dist)
    g = rng.generator()
    kind = dist.kind
    if kind == "bernoulli":
        return (g.random(omega.shape) < omega).astype(float)
    if kind == "poisson":
        return g.poisson(omega).astype(float)
    if kind == "binomial":
        return g.binomial(dist.m, omega / dist.m).astype(float)
    if kind == "normal":
        # scale 0 reproduces the mean exactly
        return g.normal(loc=omega, scale=math.sqrt(dist.sigma2))
    if kind == "exponential":
        return g.exponential(scale=omega)
    if kind == "uniform":
        return g.uniform(low=0.0, high=2.0 * omega)
    if kind == "logistic":
        return g.logistic(loc=omega, scale=dist.beta)
    # signed: +1 with probability (1 + omega) / 2, else -1
    return np.where(g.random(omega.shape) < (1.0 + omega) / 2.0, 1.0, -1.0)
