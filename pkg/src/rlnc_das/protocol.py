"""Producer / claimer / verifier state machines for the sampling protocol.

One sample round trip:

1. producer commits to the rows of V and publishes the commitments;
2. verifier sends a coefficient challenge c (a 32-byte seed on the wire);
3. claimer answers with the coded vector w = V @ c;
4. verifier sends p projection vectors (or, in Fiat-Shamir mode, both
   sides derive them from a transcript over commitments, c and w and the
   step is skipped);
5. claimer proves <p_i^T V, c> for each projection;
6. verifier checks every argument against the homomorphically combined
   row commitments; one failure deems the data unavailable, otherwise it
   requests more samples until its failure target is met.

Adversarial claimers are deterministic strategy objects fixed before
sampling begins (the non-adaptivity assumption): a withholding claimer
answers only challenges inside a chosen hyperplane, an inconsistent
claimer adds a fixed offset to every coded vector.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field

from . import analysis
from .errors import ConfigError, DimensionMismatch, FieldMismatch, MalformedFile
from .field import FieldParams, ScalarMatrix, ScalarVector, field_new, mat_vec_mul
from .field import RISTRETTO255_ORDER
from .groups import (
    GeneratorBasis,
    Group,
    GroupElement,
    RowCommitments,
    combine_commitments,
    derive_basis,
    pedersen_commit,
    ristretto_group,
    transparent_group,
)
from .ipa import IpaProof, ipa_prove, ipa_verify
from .transcript import Transcript

MODE_INTERACTIVE = "interactive"
MODE_FS = "fiat_shamir_projections"

SESSION_DOMAIN = b"rlnc-das/v1"
G_LABEL = b"rlnc-das/g"
H_LABEL = b"rlnc-das/h"
U_LABEL = b"rlnc-das/u"

# wire message tags
MSG_COMMITMENTS = 1
MSG_CHALLENGE = 2
MSG_RESPONSE = 3
MSG_REFUSE = 4
MSG_PROJECTIONS = 5
MSG_PROOF = 6
MSG_VERDICT = 7


def named_field(name: str) -> tuple[FieldParams, Group]:
    """Map a CLI field name to (scalar field, matching group)."""
    if name == "crypto":
        return field_new(RISTRETTO255_ORDER), ristretto_group()
    if name.startswith("test"):
        try:
            q = int(name[4:])
        except ValueError:
            raise ConfigError(f"unknown field {name!r}") from None
        fld = field_new(q)
        return fld, transparent_group(fld)
    raise ConfigError(f"unknown field {name!r}")


@dataclass(frozen=True)
class ProtocolParams:
    m: int
    n: int
    p: int
    field: FieldParams
    group: Group
    mode: str = MODE_INTERACTIVE
    n_pad: int = dc_field(init=False)
    g: GeneratorBasis = dc_field(init=False)
    h: GeneratorBasis = dc_field(init=False)
    u: GroupElement = dc_field(init=False)

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.p < 1:
            raise ConfigError(f"need m, n, p >= 1, got ({self.m}, {self.n}, {self.p})")
        if self.mode not in (MODE_INTERACTIVE, MODE_FS):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.group.order != self.field.modulus:
            raise FieldMismatch(
                f"group order {self.group.order} != field modulus {self.field.modulus}"
            )
        n_pad = 1 << (self.n - 1).bit_length() if self.n > 1 else 1
        object.__setattr__(self, "n_pad", n_pad)
        object.__setattr__(self, "g", derive_basis(self.group, G_LABEL, n_pad))
        object.__setattr__(self, "h", derive_basis(self.group, H_LABEL, n_pad))
        object.__setattr__(self, "u", derive_basis(self.group, U_LABEL, 1)[0])


def make_params(
    m: int, n: int, p: int = 4, field_name: str = "crypto", mode: str = MODE_INTERACTIVE
) -> ProtocolParams:
    fld, grp = named_field(field_name)
    return ProtocolParams(m, n, p, fld, grp, mode)


# ---------------------------------------------------------------------------
# deterministic byte-stream expansion for challenges and projections

def _expand_vector(
    seed: bytes, label: bytes, field: FieldParams, length: int, forbid_zero: bool
) -> ScalarVector:
    """Uniform vector over F^length from a seed; optionally redrawn if zero."""
    q = field.modulus
    bits = (q - 1).bit_length()
    w = (bits + 7) // 8
    mask = (1 << bits) - 1
    per_digest = max(1, 32 // w)
    for attempt in range(256):
        vals: list[int] = []
        counter = 0
        while len(vals) < length:
            h = hashlib.sha256()
            h.update(b"rlnc-das/expand")
            h.update(len(label).to_bytes(4, "little"))
            h.update(label)
            h.update(len(seed).to_bytes(4, "little"))
            h.update(seed)
            h.update(attempt.to_bytes(4, "little"))
            h.update(counter.to_bytes(8, "little"))
            digest = h.digest()
            for i in range(per_digest):
                v = int.from_bytes(digest[i * w : (i + 1) * w], "little") & mask
                if v < q:
                    vals.append(v)
                    if len(vals) == length:
                        break
            counter += 1
        if not forbid_zero or any(vals):
            return ScalarVector(field, vals)
    raise ConfigError("could not expand a nonzero vector (degenerate field?)")


@dataclass
class Challenge:
    """Coefficient vector for one sample; usually carried as a seed."""

    c: ScalarVector
    seed: bytes | None = None

    @classmethod
    def from_seed(cls, seed: bytes, n: int, field: FieldParams) -> "Challenge":
        return cls(_expand_vector(seed, b"challenge", field, n, forbid_zero=True), bytes(seed))


def verifier_make_challenge(rng_seed: bytes, n: int, field: FieldParams) -> Challenge:
    """Expand a uniform nonzero challenge c in F^n from a seed."""
    return Challenge.from_seed(rng_seed, n, field)


@dataclass
class ProjectionSet:
    vectors: list[ScalarVector]

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]


def projections_from_seed(seed: bytes, p: int, m: int, field: FieldParams) -> ProjectionSet:
    return ProjectionSet(
        [
            _expand_vector(seed, b"projection/%d" % i, field, m, forbid_zero=False)
            for i in range(p)
        ]
    )


@dataclass
class MembershipProof:
    proofs: list[IpaProof]


@dataclass
class VerifierVerdict:
    accepted: bool
    failed_projection_index: int | None = None
    samples_so_far: int = 0


# ---------------------------------------------------------------------------
# protocol steps

def producer_commit(V: ScalarMatrix, params: ProtocolParams) -> RowCommitments:
    """Pedersen commitments over the rows of V under basis g."""
    if V.rows != params.m or V.cols != params.n:
        raise DimensionMismatch(
            f"data is {V.rows}x{V.cols}, params say {params.m}x{params.n}"
        )
    return [pedersen_commit(params.g, V.row(i)) for i in range(V.rows)]


def _session_transcript(
    params: ProtocolParams,
    coms: RowCommitments,
    challenge: Challenge,
    omega: ScalarVector,
) -> Transcript:
    t = Transcript(SESSION_DOMAIN)
    t.absorb_int(b"m", params.m)
    t.absorb_int(b"n", params.n)
    t.absorb_int(b"p", params.p)
    t.absorb(b"q", params.field.modulus.to_bytes(40, "little"))
    t.absorb(b"group", params.group.name.encode())
    t.absorb(b"mode", params.mode.encode())
    for com in coms:
        t.absorb_element(b"row-commitment", com)
    t.absorb(b"challenge", challenge.c.encode())
    t.absorb(b"coded-vector", omega.encode())
    return t


def projections_from_transcript(
    params: ProtocolParams,
    coms: RowCommitments,
    challenge: Challenge,
    omega: ScalarVector,
) -> ProjectionSet:
    """Fiat-Shamir projections: both sides derive them, no message needed."""
    t = _session_transcript(params, coms, challenge, omega)
    return ProjectionSet(
        [
            ScalarVector(params.field, t.challenge_vector(b"projection", params.field, params.m))
            for _ in range(params.p)
        ]
    )


def _proof_transcript(base: Transcript, index: int, projection: ScalarVector) -> Transcript:
    t = base.clone()
    t.absorb_int(b"projection-index", index)
    t.absorb(b"projection", projection.encode())
    return t


def _pad(vec: ScalarVector, n_pad: int) -> ScalarVector:
    if len(vec) == n_pad:
        return vec
    return ScalarVector(vec.field, vec.values + [0] * (n_pad - len(vec)))


def claimer_respond(V: ScalarMatrix, challenge: Challenge) -> ScalarVector:
    """Honest response: the coded vector V @ c."""
    return mat_vec_mul(V, challenge.c)


def claimer_prove(
    V: ScalarMatrix,
    challenge: Challenge,
    omega: ScalarVector,
    projections: ProjectionSet,
    params: ProtocolParams,
    coms: RowCommitments,
) -> MembershipProof:
    """One inner product argument per projection: <p_i^T V, c>.

    ``omega`` is the coded vector as sent (it feeds the transcript that
    binds proofs to this sample).
    """
    if len(projections) != params.p:
        raise DimensionMismatch(f"{len(projections)} projections, params say {params.p}")
    base = _session_transcript(params, coms, challenge, omega)
    q = params.field.modulus
    Vt = V.transpose()
    c_pad = _pad(challenge.c, params.n_pad)
    proofs = []
    for i, proj in enumerate(projections):
        a = _pad(mat_vec_mul(Vt, proj), params.n_pad)
        t = _proof_transcript(base, i, proj)
        proofs.append(ipa_prove(t, params.g, params.h, params.u, a, c_pad))
    return MembershipProof(proofs)


def verifier_verify(
    coms: RowCommitments,
    challenge: Challenge,
    omega: ScalarVector,
    projections: ProjectionSet | None,
    proof: MembershipProof,
    params: ProtocolParams,
    samples_so_far: int = 0,
) -> VerifierVerdict:
    """Check all p arguments; never touches V.

    In Fiat-Shamir mode the verifier derives the projections itself and
    ignores any supplied set.
    """
    if params.mode == MODE_FS:
        projections = projections_from_transcript(params, coms, challenge, omega)
    if projections is None:
        raise ConfigError("interactive mode requires explicit projections")
    if len(proof.proofs) != params.p or len(projections) != params.p:
        return VerifierVerdict(False, 0, samples_so_far)
    base = _session_transcript(params, coms, challenge, omega)
    com_b = pedersen_commit(params.h, _pad(challenge.c, params.n_pad))
    for i, proj in enumerate(projections):
        com_a = combine_commitments(proj, coms)
        z = proj.dot(omega)
        t = _proof_transcript(base, i, proj)
        try:
            ok = ipa_verify(
                t, params.g, params.h, params.u, com_a, com_b, z, proof.proofs[i]
            )
        except Exception:
            ok = False
        if not ok:
            return VerifierVerdict(False, i, samples_so_far)
    return VerifierVerdict(True, None, samples_so_far)


# ---------------------------------------------------------------------------
# claimer strategies

class HonestClaimer:
    """Holds the full matrix and answers every challenge truthfully."""

    def __init__(self, V: ScalarMatrix, params: ProtocolParams):
        self.V = V
        self.params = params
        self.commitments = producer_commit(V, params)

    def respond(self, challenge: Challenge) -> ScalarVector | None:
        return claimer_respond(self.V, challenge)

    def prove(
        self, challenge: Challenge, omega: ScalarVector, projections: ProjectionSet
    ) -> MembershipProof:
        return claimer_prove(self.V, challenge, omega, projections, self.params, self.commitments)


class WithholdingClaimer(HonestClaimer):
    """Answers only challenges inside the hyperplane normal^T c = 0.

    This is the canonical worst case: it keeps the maximal q^(n-1)
    answerable challenges while still making the data undecodable.
    """

    def __init__(self, V: ScalarMatrix, params: ProtocolParams, normal: ScalarVector):
        super().__init__(V, params)
        if normal.is_zero():
            raise ConfigError("hyperplane normal must be nonzero")
        self.normal = normal

    def respond(self, challenge: Challenge) -> ScalarVector | None:
        if self.normal.dot(challenge.c) != 0:
            return None  # refuse
        return claimer_respond(self.V, challenge)


class InconsistentClaimer(HonestClaimer):
    """Sends w' = V @ c + d for a fixed nonzero offset d.

    It cannot forge inner product arguments, so it proves with the honest
    witness; the fake vector survives only when every projection
    annihilates d.
    """

    def __init__(self, V: ScalarMatrix, params: ProtocolParams, offset: ScalarVector):
        super().__init__(V, params)
        if offset.is_zero():
            raise ConfigError("offset d must be nonzero")
        self.offset = offset

    def respond(self, challenge: Challenge) -> ScalarVector | None:
        return claimer_respond(self.V, challenge) + self.offset


def withholding_claimer_from_seed(
    V: ScalarMatrix, params: ProtocolParams, seed: bytes
) -> WithholdingClaimer:
    normal = _expand_vector(seed, b"hyperplane-normal", params.field, params.n, forbid_zero=True)
    return WithholdingClaimer(V, params, normal)


def inconsistent_claimer_from_seed(
    V: ScalarMatrix, params: ProtocolParams, seed: bytes
) -> InconsistentClaimer:
    offset = _expand_vector(seed, b"offset-d", params.field, params.m, forbid_zero=True)
    return InconsistentClaimer(V, params, offset)


# ---------------------------------------------------------------------------
# message framing (1-byte tag + 4-byte little-endian length + body)

def encode_message(tag: int, body: bytes) -> bytes:
    return bytes([tag]) + len(body).to_bytes(4, "little") + body


def decode_message(data: bytes) -> tuple[int, bytes]:
    if len(data) < 5:
        raise MalformedFile("message shorter than its framing")
    tag = data[0]
    length = int.from_bytes(data[1:5], "little")
    if len(data) != 5 + length:
        raise MalformedFile(f"message body {len(data) - 5} bytes, header says {length}")
    return tag, data[5:]


def commitments_body(coms: RowCommitments) -> bytes:
    out = bytearray(len(coms).to_bytes(4, "little"))
    for com in coms:
        out += com.encode()
    return bytes(out)


def decode_commitments_body(group: Group, body: bytes) -> RowCommitments:
    if len(body) < 4:
        raise MalformedFile("commitments body shorter than its header")
    count = int.from_bytes(body[:4], "little")
    es = group.element_size
    if len(body) != 4 + count * es:
        raise MalformedFile("commitments body length mismatch")
    try:
        return [group.decode(body[4 + i * es : 4 + (i + 1) * es]) for i in range(count)]
    except ValueError as e:
        raise MalformedFile(f"bad group element: {e}") from e


def challenge_body(challenge: Challenge) -> bytes:
    if challenge.seed is not None:
        return b"\x00" + challenge.seed
    return b"\x01" + challenge.c.encode()


def decode_challenge_body(field: FieldParams, n: int, body: bytes) -> Challenge:
    if not body:
        raise MalformedFile("empty challenge body")
    if body[0] == 0:
        return Challenge.from_seed(body[1:], n, field)
    if body[0] == 1:
        return Challenge(ScalarVector.decode(field, body[1:]), None)
    raise MalformedFile(f"unknown challenge form {body[0]}")


def proof_body(proof: MembershipProof, field: FieldParams) -> bytes:
    out = bytearray(len(proof.proofs).to_bytes(4, "little"))
    for p in proof.proofs:
        blob = p.serialize(field)
        out += len(blob).to_bytes(4, "little")
        out += blob
    return bytes(out)


def decode_proof_body(group: Group, field: FieldParams, body: bytes) -> MembershipProof:
    if len(body) < 4:
        raise MalformedFile("proof body shorter than its header")
    count = int.from_bytes(body[:4], "little")
    off = 4
    proofs = []
    for _ in range(count):
        if off + 4 > len(body):
            raise MalformedFile("truncated proof list")
        length = int.from_bytes(body[off : off + 4], "little")
        off += 4
        if off + length > len(body):
            raise MalformedFile("truncated proof blob")
        proofs.append(IpaProof.deserialize(group, field, body[off : off + length]))
        off += length
    if off != len(body):
        raise MalformedFile("trailing bytes after proof list")
    return MembershipProof(proofs)


def projections_body(projections: ProjectionSet) -> bytes:
    out = bytearray(len(projections).to_bytes(4, "little"))
    for v in projections:
        out += v.encode()
    return bytes(out)


# ---------------------------------------------------------------------------
# full sessions

@dataclass
class SessionPolicy:
    """How much certainty the verifier wants before it accepts."""

    target_failure: float = 1e-9
    s_max: int | None = None
    samples: int | None = None  # explicit override used by experiments

    def samples_needed(self, q: int) -> int:
        if self.samples is not None:
            return self.samples
        s = analysis.samples_needed_rlnc(q, self.target_failure)
        if self.s_max is not None:
            s = min(s, self.s_max)
        return max(1, s)


@dataclass
class SessionLog:
    mode: str
    m: int
    n: int
    p: int
    q: int
    seed_hex: str
    samples_target: int
    events: list[dict] = dc_field(default_factory=list)
    verdict: VerifierVerdict | None = None

    @property
    def accepted(self) -> bool:
        return bool(self.verdict and self.verdict.accepted)

    def log(self, step: str, tag: int, size: int, **extra):
        self.events.append({"step": step, "tag": tag, "bytes": size, **extra})

    def to_json_lines(self) -> str:
        head = {
            "mode": self.mode, "m": self.m, "n": self.n, "p": self.p,
            "q_bits": self.q.bit_length(), "seed": self.seed_hex,
            "samples_target": self.samples_target,
        }
        lines = [json.dumps(head)]
        lines += [json.dumps(e) for e in self.events]
        if self.verdict is not None:
            lines.append(
                json.dumps(
                    {
                        "verdict": "available" if self.verdict.accepted else "unavailable",
                        "failed_projection_index": self.verdict.failed_projection_index,
                        "samples_so_far": self.verdict.samples_so_far,
                    }
                )
            )
        return "\n".join(lines) + "\n"


def run_session(
    policy: SessionPolicy,
    claimer,
    params: ProtocolParams,
    rng_seed: bytes,
) -> SessionLog:
    """Drive steps 2-6 until the policy's sample count or a failure.

    Deterministic given the seed: challenge and projection seeds are
    derived per sample index.
    """
    s = policy.samples_needed(params.field.modulus)
    log = SessionLog(
        params.mode, params.m, params.n, params.p, params.field.modulus,
        bytes(rng_seed).hex(), s,
    )
    coms = claimer.commitments
    log.log("commitments", MSG_COMMITMENTS, len(encode_message(MSG_COMMITMENTS, commitments_body(coms))))
    for k in range(s):
        ch_seed = hashlib.sha256(b"challenge-seed" + bytes(rng_seed) + k.to_bytes(4, "little")).digest()
        challenge = Challenge.from_seed(ch_seed, params.n, params.field)
        log.log("challenge", MSG_CHALLENGE, len(encode_message(MSG_CHALLENGE, challenge_body(challenge))), sample=k)

        omega = claimer.respond(challenge)
        if omega is None:
            log.log("refuse", MSG_REFUSE, len(encode_message(MSG_REFUSE, b"")), sample=k)
            log.verdict = VerifierVerdict(False, None, samples_so_far=k)
            return log
        log.log("response", MSG_RESPONSE, len(encode_message(MSG_RESPONSE, omega.encode())), sample=k)

        if params.mode == MODE_FS:
            projections = projections_from_transcript(params, coms, challenge, omega)
        else:
            pj_seed = hashlib.sha256(b"projection-seed" + bytes(rng_seed) + k.to_bytes(4, "little")).digest()
            projections = projections_from_seed(pj_seed, params.p, params.m, params.field)
            log.log(
                "projections", MSG_PROJECTIONS,
                len(encode_message(MSG_PROJECTIONS, projections_body(projections))), sample=k,
            )

        proof = claimer.prove(challenge, omega, projections)
        log.log("proof", MSG_PROOF, len(encode_message(MSG_PROOF, proof_body(proof, params.field))), sample=k)

        verdict = verifier_verify(coms, challenge, omega, projections, proof, params, samples_so_far=k + 1)
        if not verdict.accepted:
            log.verdict = verdict
            return log
    log.verdict = VerifierVerdict(True, None, samples_so_far=s)
    return log
