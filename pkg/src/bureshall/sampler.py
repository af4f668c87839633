"""Random spectra from the Bures-Hall ensemble.

Two backends:

* ``mcmc_chain`` targets the unconstrained eigenvalue density

      h(x) ~ prod_{i<j} (x_i - x_j)^2 / (x_i + x_j) * prod_i x_i^alpha e^{-x_i}

  with a random-walk Metropolis kernel in log coordinates and projects
  x -> lambda = x / theta.  The factorization h(x) dx = f(lambda) g(theta)
  dtheta dlambda (theta ~ Gamma(d)) makes the projected spectra exactly
  Bures-Hall distributed and independent of theta.  Each Metropolis sweep is
  a component update (independent Gaussian increments on ln x_i) followed by
  a collective scale update (a common increment on all ln x_i); the scale
  move sees only the Gamma(d) factor of the density and decorrelates theta
  quickly.  Chains run vectorized; every chain owns an RNG stream spawned
  from (seed, chain index), so batches are bit-reproducible and merging is
  deterministic by chain index.

* ``sample_matrix_model`` draws the reduced density matrix directly for
  n = m, where the unitary weight is flat: M = (I+U) Z Z* (I+U)* with Z
  complex Ginibre and U Haar unitary, spectrum = eig(M) / tr(M).

Also here: entropy statistics and the unbiased k-statistics with
batch-means standard errors used by every Monte Carlo acceptance check.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .cumulants import EnsembleDims


class DegenerateInputError(ValueError):
    """Coincident eigenvalues, where the density vanishes."""


@dataclass(frozen=True)
class UnconstrainedSpectrum:
    """Eigenvalues on the positive orthant with their trace."""

    x: np.ndarray
    theta: float

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        object.__setattr__(self, "x", x)
        if np.any(x <= 0):
            raise ValueError("all coordinates must be positive")
        if not math.isclose(self.theta, float(x.sum()), rel_tol=0, abs_tol=1e-9 * max(1.0, x.sum())):
            raise ValueError("theta must equal sum(x)")


@dataclass(frozen=True)
class Spectrum:
    """A point of the eigenvalue simplex."""

    lam: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lam, dtype=float)
        object.__setattr__(self, "lam", lam)
        if np.any(lam < 0):
            raise ValueError("eigenvalues must be nonnegative")
        if abs(lam.sum() - 1.0) > 1e-12:
            raise ValueError(f"eigenvalues must sum to 1, got {lam.sum()!r}")


@dataclass(frozen=True)
class ChainConfig:
    """Metropolis chain settings.  step_scale None means 0.25/sqrt(m),
    auto-tuned during burn-in to acceptance in [0.2, 0.5] and then frozen."""

    samples: int
    burn_in: int = 2000
    thinning: int = 10
    step_scale: Optional[float] = None
    chain_count: int = 64
    seed: int = 0

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if self.thinning < 1:
            raise ValueError("thinning must be >= 1")
        if self.chain_count < 1:
            raise ValueError("chain_count must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        if self.step_scale is not None and not self.step_scale > 0:
            raise ValueError("step_scale must be positive")


@dataclass(frozen=True)
class Provenance:
    dims: EnsembleDims
    config: Optional[ChainConfig]
    backend: str


@dataclass(frozen=True)
class SampleBatch:
    """Parallel arrays of spectra, traces and entropies plus provenance."""

    spectra: np.ndarray  # (N, m)
    thetas: np.ndarray  # (N,)
    entropies: np.ndarray  # (N,)
    chain_index: np.ndarray  # (N,)
    step_index: np.ndarray  # (N,)
    provenance: Provenance

    def __len__(self):
        return len(self.thetas)

    def entropies_T(self) -> np.ndarray:
        """Unconstrained entropies T = sum x ln x = theta ln theta - theta S."""
        return self.thetas * np.log(self.thetas) - self.thetas * self.entropies


def entropy(s) -> float:
    """Von Neumann entropy -sum lam ln lam with the 0 ln 0 = 0 convention."""
    lam = s.lam if isinstance(s, Spectrum) else np.asarray(s, dtype=float)
    pos = lam[lam > 0]
    return float(-(pos * np.log(pos)).sum()) + 0.0


def entropy_T(u) -> float:
    """Unconstrained entropy T = sum x ln x."""
    x = u.x if isinstance(u, UnconstrainedSpectrum) else np.asarray(u, dtype=float)
    return float((x * np.log(x)).sum())


def project_to_simplex(u: UnconstrainedSpectrum) -> tuple[Spectrum, float]:
    """lambda = x / theta; the spectrum is Bures-Hall and independent of theta."""
    return Spectrum(u.x / u.theta), u.theta


def log_density_unconstrained(x, dims: EnsembleDims) -> float:
    """Unnormalized log of the unconstrained eigenvalue density."""
    x = np.asarray(x, dtype=float)
    if x.shape != (dims.m,):
        raise ValueError(f"expected {dims.m} coordinates, got shape {x.shape}")
    if np.any(x <= 0):
        raise ValueError("coordinates must be positive")
    m = dims.m
    alpha = float(dims.alpha)
    total = float(alpha * np.log(x).sum() - x.sum())
    for i in range(m):
        for j in range(i + 1, m):
            diff = x[i] - x[j]
            if diff == 0.0:
                raise DegenerateInputError(f"coincident coordinates x[{i}] == x[{j}]")
            total += 2.0 * math.log(abs(diff)) - math.log(x[i] + x[j])
    return total


# ---------------------------------------------------------------------------
# Metropolis backend
# ---------------------------------------------------------------------------

_BLOCK = 512
_TUNE_WINDOW = 100
_SCALE_BOUNDS = (1e-3, 5.0)


def _pair_term(x: np.ndarray, iu) -> np.ndarray:
    if iu is None:
        return np.zeros(x.shape[0])
    d = x[:, iu[0]] - x[:, iu[1]]
    s = x[:, iu[0]] + x[:, iu[1]]
    with np.errstate(divide="ignore"):
        return (2.0 * np.log(np.abs(d)) - np.log(s)).sum(axis=1)


def mcmc_chain(dims: EnsembleDims, config: ChainConfig) -> SampleBatch:
    """Sample the unconstrained ensemble and project to the simplex.

    Returns config.samples spectra merged from chain_count chains in
    step-major, chain-minor order.  Bit-identical for identical arguments.
    """
    m = dims.m
    alpha = float(dims.alpha)
    d_shape = float(dims.d)
    n_chains = config.chain_count
    kept_per_chain = -(-config.samples // n_chains)
    total_steps = config.burn_in + config.thinning * kept_per_chain

    children = np.random.SeedSequence(config.seed).spawn(n_chains)
    gens = [np.random.Generator(np.random.PCG64(s)) for s in children]

    iu = np.triu_indices(m, 1) if m > 1 else None
    x = np.empty((n_chains, m))
    for c, g in enumerate(gens):
        x[c] = g.gamma(alpha + 1.0, 1.0, size=m)
        while np.unique(x[c]).size < m:  # measure-zero, but be safe
            x[c] = g.gamma(alpha + 1.0, 1.0, size=m)
    y = np.log(x)
    theta = x.sum(axis=1)
    logp = _pair_term(x, iu) + (alpha + 1.0) * y.sum(axis=1) - theta

    sigma_comp = config.step_scale if config.step_scale is not None else 0.25 / math.sqrt(m)
    sigma_scale = 2.4 / math.sqrt(max(d_shape, 1.0))

    lam_out = np.empty((kept_per_chain, n_chains, m))
    theta_out = np.empty((kept_per_chain, n_chains))

    step = 0
    kept = 0
    acc_comp = trials = acc_scale = 0
    while step < total_steps:
        nblock = min(_BLOCK, total_steps - step)
        comp_steps = np.empty((n_chains, nblock, m))
        comp_u = np.empty((n_chains, nblock))
        scale_steps = np.empty((n_chains, nblock))
        scale_u = np.empty((n_chains, nblock))
        for c, g in enumerate(gens):
            comp_steps[c] = g.standard_normal((nblock, m))
            comp_u[c] = g.random(nblock)
            scale_steps[c] = g.standard_normal(nblock)
            scale_u[c] = g.random(nblock)

        for t in range(nblock):
            # component move
            y_prop = y + sigma_comp * comp_steps[:, t, :]
            x_prop = np.exp(y_prop)
            logp_prop = (
                _pair_term(x_prop, iu)
                + (alpha + 1.0) * y_prop.sum(axis=1)
                - x_prop.sum(axis=1)
            )
            accept = np.log(comp_u[:, t]) < logp_prop - logp
            y[accept] = y_prop[accept]
            x[accept] = x_prop[accept]
            logp[accept] = logp_prop[accept]
            theta[accept] = x[accept].sum(axis=1)

            # collective scale move; only the Gamma(d) trace factor changes
            s = sigma_scale * scale_steps[:, t]
            delta = d_shape * s - theta * np.expm1(s)
            accept_s = np.log(scale_u[:, t]) < delta
            if np.any(accept_s):
                y[accept_s] += s[accept_s, None]
                x[accept_s] *= np.exp(s[accept_s])[:, None]
                logp[accept_s] += delta[accept_s]
                theta[accept_s] *= np.exp(s[accept_s])

            if step < config.burn_in:
                acc_comp += int(accept.sum())
                acc_scale += int(accept_s.sum())
                trials += n_chains
                if trials >= _TUNE_WINDOW * n_chains:
                    if config.step_scale is None:
                        rate = acc_comp / trials
                        if rate < 0.2:
                            sigma_comp = max(sigma_comp * 0.6, _SCALE_BOUNDS[0])
                        elif rate > 0.5:
                            sigma_comp = min(sigma_comp * 1.5, _SCALE_BOUNDS[1])
                    rate_s = acc_scale / trials
                    if rate_s < 0.2:
                        sigma_scale = max(sigma_scale * 0.6, _SCALE_BOUNDS[0])
                    elif rate_s > 0.5:
                        sigma_scale = min(sigma_scale * 1.5, _SCALE_BOUNDS[1])
                    acc_comp = acc_scale = trials = 0
            elif (step - config.burn_in) % config.thinning == config.thinning - 1:
                lam_out[kept] = x / theta[:, None]
                theta_out[kept] = theta
                kept += 1
            step += 1

    lam_flat = lam_out.reshape(-1, m)[: config.samples]
    theta_flat = theta_out.reshape(-1)[: config.samples]
    with np.errstate(invalid="ignore"):
        ent = -np.where(lam_flat > 0, lam_flat * np.log(lam_flat), 0.0).sum(axis=1)
    chain_idx = np.tile(np.arange(n_chains), kept_per_chain)[: config.samples]
    step_idx = np.repeat(
        config.burn_in + config.thinning * (np.arange(kept_per_chain) + 1) - 1, n_chains
    )[: config.samples]
    return SampleBatch(
        spectra=lam_flat,
        thetas=theta_flat,
        entropies=ent,
        chain_index=chain_idx,
        step_index=step_idx,
        provenance=Provenance(dims, config, "mcmc"),
    )


# ---------------------------------------------------------------------------
# matrix-model backend (n = m only)
# ---------------------------------------------------------------------------

def _haar_unitary(gen: np.random.Generator, count: int, m: int) -> np.ndarray:
    z = (gen.standard_normal((count, m, m)) + 1j * gen.standard_normal((count, m, m)))
    z /= math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.einsum("...ii->...i", r)
    q *= (diag / np.abs(diag))[:, None, :]
    return q


def sample_matrix_model_batch(m: int, count: int, seed: int) -> SampleBatch:
    """count spectra from the n = m matrix model M = (I+U) Z Z* (I+U)*."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if count < 1:
        raise ValueError("count must be >= 1")
    gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    dims = EnsembleDims(m, m)
    lam_all = np.empty((count, m))
    theta_all = np.empty(count)
    block = 20000
    done = 0
    while done < count:
        nb = min(block, count - done)
        u = _haar_unitary(gen, nb, m)
        z = (gen.standard_normal((nb, m, m)) + 1j * gen.standard_normal((nb, m, m)))
        z /= math.sqrt(2.0)
        a = np.eye(m) + u
        w = a @ z
        mat = w @ w.conj().transpose(0, 2, 1)
        lam = np.linalg.eigvalsh(mat)  # ascending, real
        trace = lam.sum(axis=1)
        lam = lam / trace[:, None]
        if lam.min() < -1e-12:
            raise ValueError(f"eigenvalue below round-off tolerance: {lam.min()}")
        lam = np.clip(lam, 0.0, None)
        sums = lam.sum(axis=1)
        if np.max(np.abs(sums - 1.0)) > 1e-12:
            raise ValueError("spectrum normalization drifted beyond 1e-12")
        lam /= sums[:, None]
        lam_all[done : done + nb] = lam[:, ::-1]  # descending
        theta_all[done : done + nb] = trace
        done += nb
    with np.errstate(invalid="ignore"):
        ent = -np.where(lam_all > 0, lam_all * np.log(lam_all), 0.0).sum(axis=1)
    return SampleBatch(
        spectra=lam_all,
        thetas=theta_all,
        entropies=ent,
        chain_index=np.zeros(count, dtype=int),
        step_index=np.arange(count),
        provenance=Provenance(dims, None, "matrix"),
    )


def sample_matrix_model(m: int, seed: int) -> Spectrum:
    """A single spectrum from the n = m matrix model."""
    batch = sample_matrix_model_batch(m, 1, seed)
    return Spectrum(batch.spectra[0])


# ---------------------------------------------------------------------------
# k-statistics
# ---------------------------------------------------------------------------

class KStats(NamedTuple):
    k1: float
    k2: float
    k3: float
    se1: float
    se2: float
    se3: float


def _k123(values: np.ndarray) -> tuple[float, float, float]:
    n = len(values)
    mean = values.mean()
    centered = values - mean
    m2 = float((centered ** 2).sum())
    m3 = float((centered ** 3).mean())
    k2 = m2 / (n - 1)
    k3 = n * n / ((n - 1) * (n - 2)) * m3
    return float(mean), k2, k3


def k_statistics(values, min_batches: int = 30, max_batches: int = 50) -> KStats:
    """Unbiased cumulant estimators k1, k2, k3 with batch-means standard errors.

    k1 is the sample mean, k2 the unbiased variance and
    k3 = N^2/((N-1)(N-2)) times the mean cubed deviation.  Standard errors
    come from the dispersion of per-batch estimates over non-overlapping
    batches (NaN when fewer than min_batches batches of length >= 2 fit).
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or len(values) < 3:
        raise ValueError("need a flat list of at least 3 values")
    n = len(values)
    k1, k2, k3 = _k123(values)

    n_batches = min(max_batches, n // 3)
    if n_batches < min_batches:
        return KStats(k1, k2, k3, math.nan, math.nan, math.nan)
    batch_len = n // n_batches
    trimmed = values[: n_batches * batch_len].reshape(n_batches, batch_len)
    stats = np.array([_k123(row) for row in trimmed])
    ses = stats.std(axis=0, ddof=1) / math.sqrt(n_batches)
    return KStats(k1, k2, k3, float(ses[0]), float(ses[1]), float(ses[2]))


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------

def write_sample_csv(batch: SampleBatch, path: str) -> None:
    """Write `chain,step,theta,S,lambda_1..lambda_m` with round-trip floats."""
    m = batch.spectra.shape[1]
    header = "chain,step,theta,S," + ",".join(f"lambda_{i+1}" for i in range(m))
    lines = [header]
    for i in range(len(batch)):
        lam = ",".join(repr(float(v)) for v in batch.spectra[i])
        lines.append(
            f"{int(batch.chain_index[i])},{int(batch.step_index[i])},"
            f"{float(batch.thetas[i])!r},{float(batch.entropies[i])!r},{lam}"
        )
    content = "\n".join(lines) + "\n"
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_sample_csv(path: str):
    """Read back a sample CSV; returns (chain, step, theta, S, lambdas)."""
    data = np.genfromtxt(path, delimiter=",", names=True)
    names = data.dtype.names
    lam_cols = [n for n in names if n.startswith("lambda_")]
    lam = np.stack([data[n] for n in lam_cols], axis=1)
    return (
        data["chain"].astype(int),
        data["step"].astype(int),
        np.atleast_1d(data["theta"]),
        np.atleast_1d(data["S"]),
        np.atleast_2d(lam),
    )
