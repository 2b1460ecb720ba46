"""Monte Carlo and exhaustive validation of the protocol's failure rates.

Three experiment kinds, all over small fields where millions of trials
are cheap:

* ``withholding``   — a claimer answers only challenges in a hyperplane;
                      deception per session of s samples happens with
                      probability q**-s.
* ``consistency``   — a claimer offsets coded vectors by a fixed d != 0;
                      p uniform projections all miss it with q**-p.
* ``multiverifier_rank`` — l verifiers of s samples each reconstruct
                      unless the stacked n x ls coefficient matrix is
                      rank deficient (exact product formula).

Randomness is counter-based (Philox keyed by master seed and experiment
label, trials consume fixed-size blocks), so results are reproducible
and independent of execution order.  Exhaustive mode replaces sampling
by full enumeration and must match the analytic value exactly.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from itertools import product

import numpy as np


from . import analysis, protocol
from .errors import ConfigError
from .field import ScalarMatrix, ScalarVector, field_new
from .groups import transparent_group

_CHUNK = 1 << 17
_EXHAUSTIVE_LIMIT = 1 << 22

KINDS = ("withholding", "consistency", "multiverifier_rank")


@dataclass(frozen=True)
class ExperimentSpec:
    kind: str
    q: int
    m: int = 0
    n: int = 0
    l: int = 1
    s: int = 1
    p: int = 1
    trials: int = 1
    master_seed: int = 0
    exhaustive: bool = False
    protocol_check_trials: int = 200  # consistency only: full-path cross-check

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1 and not self.exhaustive:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.q < 2:
            raise ConfigError(f"field cardinality must be >= 2, got {self.q}")
        if self.kind == "withholding" and self.n < 1:
            raise ConfigError("withholding needs n >= 1")
        if self.kind == "consistency" and (self.m < 1 or self.p < 0):
            raise ConfigError("consistency needs m >= 1 and p >= 0")
        if self.kind == "multiverifier_rank":
            if self.n < 1 or self.l * self.s < self.n:
                raise ConfigError("rank experiment needs l*s >= n >= 1")


@dataclass(frozen=True)
class ExperimentResult:
    spec: ExperimentSpec
    empirical_rate: float
    analytic_value: float
    trials: int
    std_error: float
    within_3sigma: bool

    @staticmethod
    def csv_header() -> str:
        return "kind,q,m,n,l,s,p,trials,empirical,analytic,std_error,in_band"

    def csv_row(self) -> str:
        sp = self.spec
        return (
            f"{sp.kind},{sp.q},{sp.m},{sp.n},{sp.l},{sp.s},{sp.p},{self.trials},"
            f"{self.empirical_rate:.5e},{self.analytic_value:.5e},"
            f"{self.std_error:.5e},{str(self.within_3sigma).lower()}"
        )


def _rng(spec: ExperimentSpec, label: bytes) -> np.random.Generator:
    digest = hashlib.sha256(
        spec.master_seed.to_bytes(16, "little", signed=False) + b"/" + label
    ).digest()
    key = int.from_bytes(digest[:16], "little")
    return np.random.Generator(np.random.Philox(key=key))


def _result(spec: ExperimentSpec, successes: int, trials: int, analytic: float,
            exact: bool = False) -> ExperimentResult:
    rate = successes / trials
    std_error = math.sqrt(rate * (1.0 - rate) / trials)
    if exact:
        in_band = rate == analytic
    else:
        null_sigma = math.sqrt(analytic * (1.0 - analytic) / trials)
        in_band = abs(rate - analytic) <= 3.0 * null_sigma
    return ExperimentResult(spec, rate, analytic, trials, std_error, in_band)


def _nonzero_rows(rng: np.random.Generator, count: int, width: int, q: int) -> np.ndarray:
    rows = rng.integers(0, q, size=(count, width), dtype=np.int64)
    while True:
        zero = ~rows.any(axis=1)
        if not zero.any():
            return rows
        rows[zero] = rng.integers(0, q, size=(int(zero.sum()), width), dtype=np.int64)


def run_withholding(spec: ExperimentSpec) -> ExperimentResult:
    """Deception rate of a hyperplane claimer over s challenges."""
    if spec.kind != "withholding":
        raise ConfigError(f"spec kind is {spec.kind!r}")
    q, n, s = spec.q, spec.n, spec.s
    analytic = float(q) ** -s if s else 1.0
    if spec.exhaustive:
        if q**n > _EXHAUSTIVE_LIMIT:
            raise ConfigError(f"{q}^{n} challenges is too many to enumerate")
        normal = _nonzero_rows(_rng(spec, b"withholding/normal"), 1, n, q)[0]
        answerable = sum(
            1 for c in product(range(q), repeat=n)
            if sum(int(u) * v for u, v in zip(normal, c)) % q == 0
        )
        total = q**n
        # challenges are independent, so s samples succeed at (count/total)**s
        exact = answerable**s * q**s == total**s
        return ExperimentResult(
            spec, (answerable / total) ** s, analytic, total, 0.0, within_3sigma=exact
        )
    rng = _rng(spec, b"withholding")
    successes = 0
    if s == 0:
        return _result(spec, spec.trials, spec.trials, 1.0)
    remaining = spec.trials
    while remaining:
        t = min(remaining, _CHUNK)
        normals = _nonzero_rows(rng, t, n, q)
        challenges = rng.integers(0, q, size=(t, s, n), dtype=np.int64)
        dots = np.einsum("tn,tsn->ts", normals, challenges) % q
        successes += int((dots == 0).all(axis=1).sum())
        remaining -= t
    return _result(spec, successes, spec.trials, analytic)


def run_consistency(spec: ExperimentSpec) -> ExperimentResult:
    """Rate at which p uniform projections all annihilate a nonzero d."""
    if spec.kind != "consistency":
        raise ConfigError(f"spec kind is {spec.kind!r}")
    q, m, p = spec.q, spec.m, spec.p
    analytic = float(q) ** -p if p else 1.0
    if spec.exhaustive:
        if p and (q**m) ** p > _EXHAUSTIVE_LIMIT:
            raise ConfigError(f"({q}^{m})^{p} projection tuples is too many")
        d = _nonzero_rows(_rng(spec, b"consistency/d"), 1, m, q)[0]
        hits = 0
        total = (q**m) ** p if p else 1
        for tup in product(product(range(q), repeat=m), repeat=p):
            if all(sum(int(a) * b for a, b in zip(d, proj)) % q == 0 for proj in tup):
                hits += 1
        result = ExperimentResult(
            spec, hits / total, analytic, total, 0.0,
            within_3sigma=(hits * q**p == total),
        )
    else:
        rng = _rng(spec, b"consistency")
        successes = 0
        remaining = spec.trials
        if p == 0:
            result = _result(spec, spec.trials, spec.trials, 1.0)
        else:
            while remaining:
                t = min(remaining, _CHUNK)
                d = _nonzero_rows(rng, t, m, q)
                projections = rng.integers(0, q, size=(t, p, m), dtype=np.int64)
                dots = np.einsum("tpm,tm->tp", projections, d) % q
                successes += int((dots == 0).all(axis=1).sum())
                remaining -= t
            result = _result(spec, successes, spec.trials, analytic)
    if spec.protocol_check_trials and p:
        _consistency_protocol_check(spec)
    return result


def _consistency_protocol_check(spec: ExperimentSpec):
    """Drive the real verifier against an inconsistent claimer on the
    transparent group: it must accept exactly when every projection
    annihilates the claimer's offset."""
    fld = field_new(spec.q)
    n = spec.n if spec.n >= 1 else spec.m
    params = protocol.ProtocolParams(
        spec.m, n, spec.p, fld, transparent_group(fld), protocol.MODE_INTERACTIVE
    )
    rng = _rng(spec, b"consistency/protocol")
    q = spec.q
    for trial in range(spec.protocol_check_trials):
        V = ScalarMatrix(fld, rng.integers(0, q, size=(spec.m, n)).tolist())
        d = ScalarVector(fld, _nonzero_rows(rng, 1, spec.m, q)[0].tolist())
        claimer = protocol.InconsistentClaimer(V, params, d)
        tag = trial.to_bytes(8, "little")
        challenge = protocol.verifier_make_challenge(b"sim-chal" + tag, n, fld)
        omega = claimer.respond(challenge)
        projections = protocol.projections_from_seed(b"sim-proj" + tag, spec.p, spec.m, fld)
        proof = claimer.prove(challenge, omega, projections)
        verdict = protocol.verifier_verify(
            claimer.commitments, challenge, omega, projections, proof, params
        )
        should_accept = all(proj.dot(d) == 0 for proj in projections)
        if verdict.accepted != should_accept:
            raise AssertionError(
                f"protocol path disagrees with the counting model on trial {trial}: "
                f"verifier={'accept' if verdict.accepted else 'reject'}, "
                f"projections {'do' if should_accept else 'do not'} annihilate d"
            )


def _batched_rank(mats: np.ndarray, q: int, inv_table: np.ndarray) -> np.ndarray:
    """Row ranks of a batch of matrices over GF(q); fixed control flow."""
    A = mats.copy()
    T, R, C = A.shape
    r = np.zeros(T, dtype=np.int64)
    rows = np.arange(R)[None, :]
    tidx = np.arange(T)
    for j in range(C):
        col = A[:, :, j]
        eligible = (rows >= r[:, None]) & (col != 0)
        has = eligible.any(axis=1)
        piv = np.argmax(eligible, axis=1)
        rcur = np.minimum(r, R - 1)
        do = has[:, None]
        prow_piv = A[tidx, piv, :].copy()
        prow_cur = A[tidx, rcur, :].copy()
        A[tidx, piv, :] = np.where(do, prow_cur, prow_piv)
        A[tidx, rcur, :] = np.where(do, prow_piv, prow_cur)
        pivot_vals = A[tidx, rcur, j]
        norm = A[tidx, rcur, :] * inv_table[pivot_vals][:, None] % q
        A[tidx, rcur, :] = np.where(do, norm, A[tidx, rcur, :])
        colv = A[:, :, j]
        elim = (rows > rcur[:, None]) & (colv != 0) & do
        factors = np.where(elim, colv, 0)
        A = (A - factors[:, :, None] * A[tidx, rcur, :][:, None, :]) % q
        r += has
        if int(r.min()) == min(R, C):
            break
    return r


def run_multiverifier_rank(spec: ExperimentSpec) -> ExperimentResult:
    """Rank-deficiency rate of uniform n x (l*s) coefficient matrices."""
    if spec.kind != "multiverifier_rank":
        raise ConfigError(f"spec kind is {spec.kind!r}")
    q, n = spec.q, spec.n
    cols = spec.l * spec.s
    analytic = analysis.rank_deficiency_prob(q, n, cols)
    inv_table = np.array([0] + [pow(v, q - 2, q) for v in range(1, q)], dtype=np.int64)
    if spec.exhaustive:
        total = q ** (n * cols)
        if total > _EXHAUSTIVE_LIMIT:
            raise ConfigError(f"{q}^({n}*{cols}) matrices is too many to enumerate")
        mats = np.array(
            [np.array(flat, dtype=np.int64).reshape(n, cols)
             for flat in product(range(q), repeat=n * cols)]
        )
        deficient = int((_batched_rank(mats, q, inv_table) < n).sum())
        # counting full-rank matrices row by row gives prod(q^cols - q^i)
        full_rank_count = math.prod(q**cols - q**i for i in range(n))
        return ExperimentResult(
            spec, deficient / total, analytic, total, 0.0,
            within_3sigma=(total - deficient == full_rank_count),
        )
    rng = _rng(spec, b"rank")
    deficient = 0
    remaining = spec.trials
    while remaining:
        t = min(remaining, _CHUNK)
        mats = rng.integers(0, q, size=(t, n, cols), dtype=np.int64)
        deficient += int((_batched_rank(mats, q, inv_table) < n).sum())
        remaining -= t
    return _result(spec, deficient, spec.trials, analytic)


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    runner = {
        "withholding": run_withholding,
        "consistency": run_consistency,
        "multiverifier_rank": run_multiverifier_rank,
    }[spec.kind]
    return runner(spec)
