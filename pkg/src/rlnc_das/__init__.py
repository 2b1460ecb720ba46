"""Data availability sampling by on-the-fly random linear network coding.

A producer commits to the rows of an uncoded data matrix with Pedersen
vector commitments; verifiers sample fresh linear combinations of its
columns and check membership through inner product arguments against the
homomorphically combined row commitments.  Alongside the protocol, the
package ships closed-form cost/probability models and a Monte Carlo
harness that validates the failure bounds empirically.
"""

from .analysis import (
    CmtParams,
    CostReport,
    RlncParams,
    RsKzgParams,
    RsMtParams,
    SoundnessBound,
    comparison_table,
    consistency_bound,
    cost_cmt,
    cost_rlnc,
    cost_rs_kzg,
    cost_rs_mt,
    figure_data,
    p_undetected_index,
    p_undetected_rlnc,
    rank_deficiency_prob,
    samples_needed_index,
    samples_needed_rlnc,
    soundness_bound,
    undecodability_rlnc,
)
from .errors import (
    ConfigError,
    DimensionMismatch,
    DomainError,
    FieldMismatch,
    InconsistentSamples,
    InsufficientRank,
    MalformedFile,
    MalformedProof,
    NonPowerOfTwoLength,
    NonPrimeModulus,
    RlncDasError,
    SingularMatrix,
)
from .field import (
    RISTRETTO255_ORDER,
    FieldParams,
    Scalar,
    ScalarMatrix,
    ScalarVector,
    field_new,
    mat_vec_mul,
    rank,
    solve,
)
from .groups import (
    GeneratorBasis,
    GroupElement,
    RistrettoGroup,
    RowCommitments,
    TransparentGroup,
    combine_commitments,
    commit_rows,
    derive_basis,
    pedersen_commit,
    ristretto_group,
    transparent_group,
)
from .ipa import IpaProof, ipa_prove, ipa_verify, proof_wire_size
from .protocol import (
    MODE_FS,
    MODE_INTERACTIVE,
    Challenge,
    HonestClaimer,
    InconsistentClaimer,
    MembershipProof,
    ProjectionSet,
    ProtocolParams,
    SessionLog,
    SessionPolicy,
    VerifierVerdict,
    WithholdingClaimer,
    claimer_prove,
    claimer_respond,
    make_params,
    named_field,
    producer_commit,
    projections_from_seed,
    projections_from_transcript,
    run_session,
    verifier_make_challenge,
    verifier_verify,
)
from .rlnc import (
    AddResult,
    CodedSample,
    DecoderState,
    decoder_add,
    decoder_reconstruct,
    rlnc_encode,
)
from .sim import (
    ExperimentResult,
    ExperimentSpec,
    run_consistency,
    run_experiment,
    run_multiverifier_rank,
    run_withholding,
)
from .transcript import Transcript

__version__ = "0.1.0"
