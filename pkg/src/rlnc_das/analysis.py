"""Closed-form probability bounds and download-cost models.

Covers four scheme families at the accounting level only (none of the
erasure codes or commitment trees are constructed here):

* RLNC sampling with Pedersen row commitments: a sample costs one coded
  vector plus p inner product arguments of 2*log2(n)+2 group elements;
  an eavesdropping-proof challenge defeats withholding with probability
  1 - q**-1 per sample, so s samples leave q**-s undetected.
* Fixed-rate index sampling (2D-RS with Merkle or KZG commitments, and
  the LDPC coded Merkle tree): an adversary reveals the maximal (1-alpha)
  fraction of symbols, so s uniform samples miss the withheld set with
  probability (1-alpha)**s.

Byte displays use 1 kB = 1024 B (the convention that reproduces the
reference comparison table exactly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import ConfigError, DomainError

MIB = 1024 * 1024


# ---------------------------------------------------------------------------
# probability models

def p_undetected_index(alpha: float, s: int) -> float:
    """(1 - alpha)**s: all s index samples land in the revealed fraction."""
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")
    if s < 0:
        raise DomainError(f"sample count must be >= 0, got {s}")
    return (1.0 - alpha) ** s

def p_undetected_rlnc(q: int, s: int) -> float:
    """q**-s: every coded challenge falls in the adversary's hyperplane."""
    if q < 2:
        raise DomainError(f"field cardinality must be >= 2, got {q}")
    if s < 0:
        raise DomainError(f"sample count must be >= 0, got {s}")
    return float(q) ** -s

def undecodability_rlnc(q: int) -> float:
    """alpha for coded sampling: 1 - 1/q."""
    if q < 2:
        raise DomainError(f"field cardinality must be >= 2, got {q}")
    return 1.0 - 1.0 / q

def samples_needed_index(alpha: float, target: float) -> int:
    """Minimal s with (1 - alpha)**s <= target."""
    _check_target(target)
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")
    s = max(1, math.ceil(math.log(target) / math.log(1.0 - alpha)))
    while s > 1 and p_undetected_index(alpha, s - 1) <= target:
        s -= 1
    while p_undetected_index(alpha, s) > target:
        s += 1
    return s

def samples_needed_rlnc(q: int, target: float) -> int:
    """Minimal s with q**-s <= target."""
    _check_target(target)
    if q < 2:
        raise DomainError(f"field cardinality must be >= 2, got {q}")
    s = max(1, math.ceil(math.log(1.0 / target) / math.log(q)))
    while s > 1 and p_undetected_rlnc(q, s - 1) <= target:
        s -= 1
    while p_undetected_rlnc(q, s) > target:
        s += 1
    return s

def _check_target(target: float):
    if not 0 < target < 1:
        raise DomainError(f"target failure probability must be in (0, 1), got {target}")


def rank_deficiency_prob(q: int, n: int, cols: int) -> float:
    """P[rank < n] for a uniform n x cols matrix over GF(q).

    Exact product formula 1 - prod_{i=0}^{n-1} (1 - q**(i-cols)),
    evaluated through log1p/expm1 so the tiny-probability regime keeps
    its leading digits.
    """
    if q < 2 or n < 1 or cols < n:
        raise DomainError(f"need q >= 2 and cols >= n >= 1, got q={q}, n={n}, cols={cols}")
    log_prod = sum(math.log1p(-float(q) ** (i - cols)) for i in range(n))
    return -math.expm1(log_prod)


@dataclass(frozen=True)
class SoundnessBound:
    """Terms of the soundness-failure bound for l verifiers x s samples."""

    dishonest_term: float      # acceptance while withholding: q**-s
    honest_rank_term: float    # upper bound q**(n - ls) on rank deficiency
    exact_rank_prob: float     # exact rank-deficiency probability
    overall_bound: float       # max of the two branches


def soundness_bound(q: int, n: int, l: int, s: int) -> SoundnessBound:
    ls = l * s
    if q < 2 or n < 1 or ls < n:
        raise DomainError(f"need ls >= n >= 1, got q={q}, n={n}, ls={ls}")
    dishonest = float(q) ** -s
    honest_bound = float(q) ** (n - ls)
    exact = rank_deficiency_prob(q, n, ls)
    return SoundnessBound(dishonest, honest_bound, exact, max(dishonest, exact))


def consistency_bound(q: int, p: int) -> float:
    """q**-p: all p uniform projections annihilate a fixed nonzero offset."""
    if q < 2:
        raise DomainError(f"field cardinality must be >= 2, got {q}")
    if p < 1:
        raise DomainError(f"projection count must be >= 1, got {p}")
    return float(q) ** -p


# ---------------------------------------------------------------------------
# scheme parameters (defaults = the reference comparison's Table values)

@dataclass(frozen=True)
class RlncParams:
    m: int = 16
    coeff_bytes: int = 8    # per coefficient and per data chunk
    group_bytes: int = 32   # compressed commitment-group element
    p: int = 4              # projection vectors per sample


@dataclass(frozen=True)
class CmtParams:
    base_symbol_bytes: int = 256
    rate: float = 0.25
    alpha: float = 0.125
    batch: int = 8          # hashes concatenated per node at each layer
    roots: int = 256        # hash count of the published root layer
    hash_bytes: int = 32


@dataclass(frozen=True)
class RsMtParams:
    symbol_bytes: int = 512
    rate: float = 0.25
    alpha: float = 0.25
    hash_bytes: int = 32


@dataclass(frozen=True)
class RsKzgParams:
    symbol_bytes: int = 512
    rate: float = 0.25
    alpha: float = 0.25
    group_bytes: int = 32


@dataclass(frozen=True)
class CostReport:
    scheme: str
    commitment_kind: str
    data_bytes: int
    samples_needed: int
    per_sample_bytes: int
    sample_cost_bytes: int
    commitment_bytes: int
    storage_overhead_bytes: int
    needs_auditor: bool
    needs_trusted_setup: bool

    @property
    def total_download_bytes(self) -> int:
        return self.sample_cost_bytes + self.commitment_bytes

    def to_json_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "commitment": self.commitment_kind,
            "data_bytes": self.data_bytes,
            "samples_needed": self.samples_needed,
            "per_sample_bytes": self.per_sample_bytes,
            "sample_cost_bytes": self.sample_cost_bytes,
            "commitment_bytes": self.commitment_bytes,
            "storage_overhead_bytes": self.storage_overhead_bytes,
            "total_download_bytes": self.total_download_bytes,
            "needs_auditor": self.needs_auditor,
            "needs_trusted_setup": self.needs_trusted_setup,
            "display": {
                "sampling_cost": fmt_kb(self.sample_cost_bytes),
                "commitment_size": fmt_kb(self.commitment_bytes),
                "storage_overhead": fmt_storage(self.storage_overhead_bytes),
                "total_download": fmt_kb(self.total_download_bytes),
            },
        }


def fmt_kb(nbytes: int) -> str:
    return f"{nbytes / 1024:.1f} kB"

def fmt_storage(nbytes: int) -> str:
    if nbytes == 0:
        return "0.0 B"
    return f"{nbytes / MIB:.1f} MB"


def _storage_overhead(d: int, rate: float) -> int:
    frac = Fraction(rate)
    return int(d * (1 / frac - 1))


def cost_rlnc(
    d: int,
    prm: RlncParams = RlncParams(),
    target: float = 1e-9,
    coded_vector_accounting: str = "field",
) -> CostReport:
    """RLNC sampling cost: coded vector + p inner product arguments.

    ``coded_vector_accounting`` selects how the coded vector is priced:
    "field" is m chunks of coeff_bytes (the comparison-table convention);
    "group" prices it at m group elements instead.
    """
    if d <= 0:
        raise DomainError(f"data size must be positive, got {d}")
    _check_target(target)
    col_bytes = prm.m * prm.coeff_bytes
    n = -(-d // col_bytes)  # ceil: number of data columns
    q = 2 ** (8 * prm.coeff_bytes)
    s = samples_needed_rlnc(q, target)
    log2n = (n - 1).bit_length() if n > 1 else 0
    ipa_bytes = 2 * log2n * prm.group_bytes + 2 * prm.group_bytes
    if coded_vector_accounting == "field":
        vector_bytes = prm.m * prm.coeff_bytes
    elif coded_vector_accounting == "group":
        vector_bytes = prm.m * prm.group_bytes
    else:
        raise ConfigError(f"unknown accounting {coded_vector_accounting!r}")
    per_sample = vector_bytes + prm.p * ipa_bytes
    return CostReport(
        scheme=f"RLNC (m={prm.m})",
        commitment_kind="Pedersen",
        data_bytes=d,
        samples_needed=s,
        per_sample_bytes=per_sample,
        sample_cost_bytes=s * per_sample,
        commitment_bytes=prm.m * prm.group_bytes,
        storage_overhead_bytes=0,
        needs_auditor=False,
        needs_trusted_setup=False,
    )


def cmt_layer_count(k: int, rate: float, batch: int, roots: int) -> int:
    """Layers of the coded tree: k shrinks by the factor rate*batch per
    layer until at most rate*roots information symbols remain."""
    shrink = Fraction(rate) * batch
    if shrink <= 1:
        raise DomainError(
            f"rate * batch = {float(shrink)} does not shrink the tree; need > 1"
        )
    stop = Fraction(rate) * roots
    layers = 0
    cur = Fraction(k)
    while cur > stop:
        cur /= shrink
        layers += 1
    return layers


def cost_cmt(d: int, prm: CmtParams = CmtParams(), target: float = 1e-9) -> CostReport:
    """Coded-Merkle-tree sampling: base symbol + per-layer hash batches."""
    if d <= 0:
        raise DomainError(f"data size must be positive, got {d}")
    _check_target(target)
    k = -(-d // prm.base_symbol_bytes)
    layers = cmt_layer_count(k, prm.rate, prm.batch, prm.roots)
    # per layer: batch-1 sibling hashes plus the q(1-r) parity hashes
    # sampled to keep intermediate symbols indistinguishable
    per_layer = int(
        prm.hash_bytes * (prm.batch - 1)
        + prm.hash_bytes * prm.batch * (1 - Fraction(prm.rate))
    )
    per_sample = prm.base_symbol_bytes + layers * per_layer
    s = samples_needed_index(prm.alpha, target)
    return CostReport(
        scheme="LDPC",
        commitment_kind="CMT",
        data_bytes=d,
        samples_needed=s,
        per_sample_bytes=per_sample,
        sample_cost_bytes=s * per_sample,
        commitment_bytes=prm.roots * prm.hash_bytes,
        storage_overhead_bytes=_storage_overhead(d, prm.rate),
        needs_auditor=True,
        needs_trusted_setup=False,
    )


def _square_grid_side(d: int, symbol_bytes: int) -> int:
    """sqrt(k) with k rounded up to the next perfect square."""
    k = -(-d // symbol_bytes)
    side = math.isqrt(k)
    return side if side * side == k else side + 1


def cost_rs_mt(d: int, prm: RsMtParams = RsMtParams(), target: float = 1e-9) -> CostReport:
    """2D-RS with Merkle roots over every row and column."""
    if d <= 0:
        raise DomainError(f"data size must be positive, got {d}")
    _check_target(target)
    side = _square_grid_side(d, prm.symbol_bytes)
    merkle_path = (2 * side - 1).bit_length()  # ceil(log2(2 sqrt(k)))
    per_sample = prm.symbol_bytes + prm.hash_bytes * merkle_path
    s = samples_needed_index(prm.alpha, target)
    return CostReport(
        scheme="2D-RS",
        commitment_kind="MT",
        data_bytes=d,
        samples_needed=s,
        per_sample_bytes=per_sample,
        sample_cost_bytes=s * per_sample,
        commitment_bytes=4 * prm.hash_bytes * side,
        storage_overhead_bytes=_storage_overhead(d, prm.rate),
        needs_auditor=True,
        needs_trusted_setup=False,
    )


def cost_rs_kzg(d: int, prm: RsKzgParams = RsKzgParams(), target: float = 1e-9) -> CostReport:
    """2D-RS with one polynomial commitment per original row."""
    if d <= 0:
        raise DomainError(f"data size must be positive, got {d}")
    _check_target(target)
    side = _square_grid_side(d, prm.symbol_bytes)
    per_sample = prm.symbol_bytes + prm.group_bytes
    s = samples_needed_index(prm.alpha, target)
    return CostReport(
        scheme="2D-RS",
        commitment_kind="KZG",
        data_bytes=d,
        samples_needed=s,
        per_sample_bytes=per_sample,
        sample_cost_bytes=s * per_sample,
        commitment_bytes=prm.group_bytes * side,
        storage_overhead_bytes=_storage_overhead(d, prm.rate),
        needs_auditor=False,
        needs_trusted_setup=True,
    )


def comparison_table(d: int = 32 * MIB, target: float = 1e-9) -> list[CostReport]:
    """The four-scheme comparison at the reference parameters."""
    return [
        cost_rs_mt(d, RsMtParams(), target),
        cost_rs_kzg(d, RsKzgParams(), target),
        cost_cmt(d, CmtParams(), target),
        cost_rlnc(d, RlncParams(), target),
    ]


# ---------------------------------------------------------------------------
# figure data

@dataclass(frozen=True)
class Fig3Config:
    s_min: int = 1
    s_max: int = 100
    ldpc_alpha: float = 0.125
    rs_alpha: float = 0.25
    rlnc_coeff_bytes: tuple[int, ...] = (1, 2, 3)


@dataclass(frozen=True)
class Fig4Config:
    d_mib: tuple[int, ...] = (1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024)
    target: float = 1e-9
    m_values: tuple[int, ...] = (16, 64, 256, 1024)
    rlnc: RlncParams = RlncParams()
    cmt: CmtParams = CmtParams()
    rs_mt: RsMtParams = RsMtParams()
    rs_kzg: RsKzgParams = RsKzgParams()


def figure_data(figure: str, config=None) -> tuple[list[str], list[list]]:
    """Rows for one figure: (header, rows), CSV-ready."""
    if figure == "fig3":
        cfg = config or Fig3Config()
        if cfg.s_min < 1 or cfg.s_max < cfg.s_min:
            raise ConfigError(f"bad sample range [{cfg.s_min}, {cfg.s_max}]")
        header = ["s", "ldpc", "2d_rs"] + [f"rlnc_{w}B" for w in cfg.rlnc_coeff_bytes]
        rows = []
        for s in range(cfg.s_min, cfg.s_max + 1):
            row = [s, p_undetected_index(cfg.ldpc_alpha, s), p_undetected_index(cfg.rs_alpha, s)]
            row += [p_undetected_rlnc(2 ** (8 * w), s) for w in cfg.rlnc_coeff_bytes]
            rows.append(row)
        return header, rows
    if figure in ("fig4_sampling", "fig4_commitment"):
        cfg = config or Fig4Config()
        if not cfg.d_mib:
            raise ConfigError("empty data-size range")
        header = ["d_mib", "twodrs_mt", "twodrs_kzg", "cmt"] + [
            f"rlnc_m{m}" for m in cfg.m_values
        ]
        rows = []
        for d_mib in cfg.d_mib:
            d = d_mib * MIB
            reports = [
                cost_rs_mt(d, cfg.rs_mt, cfg.target),
                cost_rs_kzg(d, cfg.rs_kzg, cfg.target),
                cost_cmt(d, cfg.cmt, cfg.target),
            ]
            for m in cfg.m_values:
                reports.append(
                    cost_rlnc(
                        d,
                        RlncParams(m, cfg.rlnc.coeff_bytes, cfg.rlnc.group_bytes, cfg.rlnc.p),
                        cfg.target,
                    )
                )
            if figure == "fig4_sampling":
                rows.append([d_mib] + [r.sample_cost_bytes / d for r in reports])
            else:
                rows.append([d_mib] + [r.commitment_bytes / d for r in reports])
        return header, rows
    raise ConfigError(f"unknown figure {figure!r}")


def rows_to_csv(header: list[str], rows: list[list]) -> str:
    """Serialize figure rows; floats rendered as 6-significant-digit
    scientific notation, integers verbatim."""
    def cell(v):
        if isinstance(v, bool):
            return str(v).lower()
        if isinstance(v, float):
            return f"{v:.5e}"
        return str(v)

    lines = [",".join(header)]
    lines += [",".join(cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"
