"""Command-line interface: file-based protocol steps plus report generators.

Subcommands:

* ``commit``    — data file -> row-commitments file (protocol step 1)
* ``challenge`` — commitments file -> challenge file (step 2)
* ``respond``   — data + commitments + challenge -> response file with the
                  coded vector and membership proofs (steps 3-5); supports
                  scripted adversaries for demos
* ``verify``    — commitments + challenge + response -> verdict; exit code
                  0 means available, 1 unavailable (step 6)
* ``costs``     — comparison table and figure data as CSV, with rendered
                  PNG figures alongside
* ``simulate``  — Monte Carlo / exhaustive experiments as CSV

Every artifact file starts with magic "RDAS", a version byte and a type
byte; re-running a pipeline with the same seeds reproduces each file
byte for byte.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import analysis, protocol, sim
from .errors import ConfigError, MalformedFile, RlncDasError
from .field import ScalarMatrix, ScalarVector
from .protocol import MODE_FS, MODE_INTERACTIVE, ProtocolParams

MAGIC = b"RDAS"
VERSION = 1
FILE_COMMITMENTS = 1
FILE_CHALLENGE = 2
FILE_RESPONSE = 3

_MODE_BYTE = {MODE_INTERACTIVE: 0, MODE_FS: 1}
_BYTE_MODE = {v: k for k, v in _MODE_BYTE.items()}


def _write_artifact(path: str, file_type: int, body: bytes):
    Path(path).write_bytes(MAGIC + bytes([VERSION, file_type]) + body)


def _read_artifact(path: str, file_type: int) -> bytes:
    try:
        blob = Path(path).read_bytes()
    except OSError as e:
        raise MalformedFile(f"cannot read {path}: {e}") from e
    if len(blob) < 6 or blob[:4] != MAGIC:
        raise MalformedFile(f"{path}: bad magic")
    if blob[4] != VERSION:
        raise MalformedFile(f"{path}: unsupported version {blob[4]}")
    if blob[5] != file_type:
        raise MalformedFile(f"{path}: type {blob[5]}, expected {file_type}")
    return blob[6:]


def _chunk_bytes_for(field_name: str) -> int:
    """Bytes per data word such that every word is a canonical scalar."""
    fld, _ = protocol.named_field(field_name)
    limit = (fld.modulus.bit_length() - 1) // 8
    if limit < 1:
        raise ConfigError(
            f"field {field_name} is too small to embed bytes; use test257 or crypto"
        )
    return min(8, limit)


def _ingest_data(raw: bytes, m: int, field_name: str):
    """Pack the file into an m x n matrix of chunk-size words, zero padded."""
    fld, _ = protocol.named_field(field_name)
    w = _chunk_bytes_for(field_name)
    words = [int.from_bytes(raw[i : i + w], "little") for i in range(0, len(raw), w)]
    if not words:
        words = [0]
    n = -(-len(words) // m)
    words += [0] * (m * n - len(words))
    V = ScalarMatrix(fld, [words[i * n : (i + 1) * n] for i in range(m)])
    return V, fld, w


def _params_from_header(field_name: str, mode: str, m: int, n: int, p: int) -> ProtocolParams:
    fld, grp = protocol.named_field(field_name)
    return ProtocolParams(m, n, p, fld, grp, mode)


def _commitments_header(field_name, mode, m, n, p, chunk, true_len, coms) -> bytes:
    name = field_name.encode()
    body = bytearray([len(name)])
    body += name
    body += bytes([_MODE_BYTE[mode]])
    body += m.to_bytes(4, "little") + n.to_bytes(4, "little") + p.to_bytes(4, "little")
    body += bytes([chunk])
    body += true_len.to_bytes(8, "little")
    body += protocol.commitments_body(coms)
    return bytes(body)


def _parse_commitments_file(path: str):
    body = _read_artifact(path, FILE_COMMITMENTS)
    try:
        name_len = body[0]
        field_name = body[1 : 1 + name_len].decode()
        off = 1 + name_len
        mode = _BYTE_MODE[body[off]]
        m = int.from_bytes(body[off + 1 : off + 5], "little")
        n = int.from_bytes(body[off + 5 : off + 9], "little")
        p = int.from_bytes(body[off + 9 : off + 13], "little")
        chunk = body[off + 13]
        true_len = int.from_bytes(body[off + 14 : off + 22], "little")
        rest = body[off + 22 :]
    except (IndexError, KeyError, UnicodeDecodeError) as e:
        raise MalformedFile(f"{path}: corrupt header ({e})") from e
    params = _params_from_header(field_name, mode, m, n, p)
    coms = protocol.decode_commitments_body(params.group, rest)
    if len(coms) != m:
        raise MalformedFile(f"{path}: {len(coms)} commitments for m={m}")
    return params, field_name, chunk, true_len, coms


# ---------------------------------------------------------------------------
# protocol subcommands

def cmd_commit(args) -> int:
    raw = Path(args.data).read_bytes()
    V, _, chunk = _ingest_data(raw, args.m, args.field)
    mode = MODE_FS if args.mode == "fs" else MODE_INTERACTIVE
    params = _params_from_header(args.field, mode, args.m, V.cols, args.p)
    coms = protocol.producer_commit(V, params)
    body = _commitments_header(
        args.field, mode, args.m, V.cols, args.p, chunk, len(raw), coms
    )
    _write_artifact(args.out, FILE_COMMITMENTS, body)
    com_bytes = len(coms) * params.group.element_size
    print(f"committed {len(raw)} data bytes as {args.m} x {V.cols} matrix")
    print(f"commitment size: {com_bytes} bytes -> {args.out}")
    return 0


def cmd_challenge(args) -> int:
    params, field_name, _, _, _ = _parse_commitments_file(args.commitments)
    seed = args.seed.encode()
    challenge_seed = hashlib.sha256(b"rlnc-das/cli/challenge" + seed).digest()
    projection_seed = hashlib.sha256(b"rlnc-das/cli/projections" + seed).digest()
    body = params.n.to_bytes(4, "little") + challenge_seed + projection_seed
    _write_artifact(args.out, FILE_CHALLENGE, body)
    print(f"challenge over F^{params.n} (seed form, 32 bytes) -> {args.out}")
    return 0


def _parse_challenge_file(path: str, params: ProtocolParams):
    body = _read_artifact(path, FILE_CHALLENGE)
    if len(body) != 4 + 32 + 32:
        raise MalformedFile(f"{path}: challenge body must be 68 bytes, got {len(body)}")
    n = int.from_bytes(body[:4], "little")
    if n != params.n:
        raise MalformedFile(f"{path}: challenge n={n}, commitments say n={params.n}")
    challenge = protocol.Challenge.from_seed(body[4:36], n, params.field)
    return challenge, body[36:68]


def _projections_for(params, coms, challenge, omega, projection_seed):
    if params.mode == MODE_FS:
        return protocol.projections_from_transcript(params, coms, challenge, omega)
    return protocol.projections_from_seed(projection_seed, params.p, params.m, params.field)


def cmd_respond(args) -> int:
    params, field_name, chunk, true_len, coms = _parse_commitments_file(args.commitments)
    raw = Path(args.data).read_bytes()
    if len(raw) != true_len:
        raise MalformedFile(
            f"data file is {len(raw)} bytes, commitments were made over {true_len}"
        )
    V, _, _ = _ingest_data(raw, params.m, field_name)
    if V.cols != params.n:
        raise MalformedFile(f"data gives n={V.cols}, commitments say n={params.n}")
    challenge, projection_seed = _parse_challenge_file(args.challenge, params)

    if args.adversary:
        kind, _, adv_seed = args.adversary.partition(":")
        if kind == "withhold":
            claimer = protocol.withholding_claimer_from_seed(V, params, adv_seed.encode())
        elif kind == "inconsistent":
            claimer = protocol.inconsistent_claimer_from_seed(V, params, adv_seed.encode())
        else:
            raise ConfigError(f"unknown adversary {kind!r} (use withhold:<seed> or inconsistent:<seed>)")
    else:
        claimer = protocol.HonestClaimer(V, params)

    omega = claimer.respond(challenge)
    if omega is None:
        _write_artifact(args.out, FILE_RESPONSE, b"\x00")
        print(f"claimer refused the challenge -> {args.out}")
        return 0
    projections = _projections_for(params, coms, challenge, omega, projection_seed)
    proof = claimer.prove(challenge, omega, projections)
    body = b"\x01" + omega.encode() + protocol.proof_body(proof, params.field)
    _write_artifact(args.out, FILE_RESPONSE, body)
    print(
        f"coded vector ({params.m} scalars) + {params.p} membership proofs "
        f"({len(body)} bytes) -> {args.out}"
    )
    return 0


def cmd_verify(args) -> int:
    params, _, _, _, coms = _parse_commitments_file(args.commitments)
    challenge, projection_seed = _parse_challenge_file(args.challenge, params)
    body = _read_artifact(args.response, FILE_RESPONSE)
    if not body:
        raise MalformedFile(f"{args.response}: empty response body")
    if body[0] == 0:
        print("verdict: UNAVAILABLE (claimer refused the challenge)")
        return 1
    if body[0] != 1:
        raise MalformedFile(f"{args.response}: unknown status byte {body[0]}")
    w = params.field.byte_width
    omega_len = 4 + params.m * w
    if len(body) < 1 + omega_len:
        raise MalformedFile(f"{args.response}: truncated coded vector")
    omega = ScalarVector.decode(params.field, body[1 : 1 + omega_len])
    proof = protocol.decode_proof_body(params.group, params.field, body[1 + omega_len :])
    projections = _projections_for(params, coms, challenge, omega, projection_seed)
    verdict = protocol.verifier_verify(coms, challenge, omega, projections, proof, params)
    if verdict.accepted:
        print("verdict: AVAILABLE (all membership proofs verified)")
        return 0
    where = (
        f"projection {verdict.failed_projection_index}"
        if verdict.failed_projection_index is not None
        else "malformed response"
    )
    print(f"verdict: UNAVAILABLE (verification failed at {where})")
    return 1


# ---------------------------------------------------------------------------
# report subcommands

def _parse_size(text: str) -> int:
    units = {"kib": 1024, "mib": 1024**2, "gib": 1024**3, "b": 1}
    t = text.strip().lower()
    for suffix, mult in units.items():
        if t.endswith(suffix):
            return int(float(t[: -len(suffix)]) * mult)
    return int(t)


def _print_table(reports):
    header = (
        f"{'Code':<14} {'Commitment':<10} {'Sampling':>10} {'Comm.size':>10} "
        f"{'Storage':>10} {'Auditor':>8} {'Trusted':>8} {'Samples':>8}"
    )
    print(header)
    print("-" * len(header))
    for r in reports:
        print(
            f"{r.scheme:<14} {r.commitment_kind:<10} "
            f"{analysis.fmt_kb(r.sample_cost_bytes):>10} "
            f"{analysis.fmt_kb(r.commitment_bytes):>10} "
            f"{analysis.fmt_storage(r.storage_overhead_bytes):>10} "
            f"{'Yes' if r.needs_auditor else 'No':>8} "
            f"{'Yes' if r.needs_trusted_setup else 'No':>8} "
            f"{r.samples_needed:>8}"
        )


def _table2_csv(reports) -> str:
    header = (
        "code,commitment,samples,sample_cost_bytes,sampling_cost_kb,"
        "commitment_bytes,commitment_kb,storage_overhead_bytes,"
        "total_download_bytes,needs_auditor,needs_trusted_setup"
    )
    lines = [header]
    for r in reports:
        lines.append(
            f"{r.scheme},{r.commitment_kind},{r.samples_needed},"
            f"{r.sample_cost_bytes},{r.sample_cost_bytes / 1024:.1f},"
            f"{r.commitment_bytes},{r.commitment_bytes / 1024:.1f},"
            f"{r.storage_overhead_bytes},{r.total_download_bytes},"
            f"{str(r.needs_auditor).lower()},{str(r.needs_trusted_setup).lower()}"
        )
    return "\n".join(lines) + "\n"


def cmd_costs(args) -> int:
    target = args.target
    if args.figure == "table2":
        reports = analysis.comparison_table(_parse_size(args.d), target)
        _print_table(reports)
        if args.out:
            Path(args.out).write_text(_table2_csv(reports))
            print(f"\nwrote {args.out}")
        if args.json:
            Path(args.json).write_text(
                json.dumps([r.to_json_dict() for r in reports], indent=2) + "\n"
            )
            print(f"wrote {args.json}")
        return 0

    if args.figure == "fig3":
        header, rows = analysis.figure_data("fig3")
        csv = analysis.rows_to_csv(header, rows)
        if args.out:
            Path(args.out).write_text(csv)
            print(f"wrote {args.out}")
        else:
            print(csv, end="")
        plot_path = args.plot or (str(Path(args.out).with_suffix(".png")) if args.out else None)
        if plot_path and not args.no_plot:
            from . import plots

            plots.render_fig3(header, rows, plot_path)
            print(f"wrote {plot_path}")
        return 0

    if args.figure in ("fig4", "fig4_sampling", "fig4_commitment"):
        sampling = analysis.figure_data("fig4_sampling")
        commitment = analysis.figure_data("fig4_commitment")
        chosen = {
            "fig4_sampling": [("sampling", sampling)],
            "fig4_commitment": [("commitment", commitment)],
            "fig4": [("sampling", sampling), ("commitment", commitment)],
        }[args.figure]
        for name, (header, rows) in chosen:
            csv = analysis.rows_to_csv(header, rows)
            if args.out:
                base = Path(args.out)
                path = (
                    base
                    if len(chosen) == 1
                    else base.with_name(f"{base.stem}_{name}{base.suffix}")
                )
                path.write_text(csv)
                print(f"wrote {path}")
            else:
                print(f"# {name}")
                print(csv, end="")
        plot_path = args.plot or (str(Path(args.out).with_suffix(".png")) if args.out else None)
        if plot_path and not args.no_plot:
            from . import plots

            plots.render_fig4(sampling, commitment, plot_path)
            print(f"wrote {plot_path}")
        return 0

    raise ConfigError(f"unknown figure {args.figure!r}")


def cmd_simulate(args) -> int:
    spec = sim.ExperimentSpec(
        kind=args.kind.replace("-", "_"),
        q=args.q,
        m=args.m,
        n=args.n,
        l=args.l,
        s=args.s,
        p=args.p,
        trials=args.trials,
        master_seed=args.seed_int,
        exhaustive=args.exhaustive,
    )
    result = sim.run_experiment(spec)
    lines = [sim.ExperimentResult.csv_header(), result.csv_row()]
    text = "\n".join(lines) + "\n"
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text)
    return 0 if result.within_3sigma else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rlnc-das",
        description="Data availability sampling by on-the-fly linear coding",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("commit", help="commit to a data file (step 1)")
    p.add_argument("data")
    p.add_argument("--m", type=int, default=16, help="rows of the data matrix")
    p.add_argument("--p", type=int, default=4, help="projection count for later steps")
    p.add_argument("--field", default="crypto", choices=["crypto", "test257", "test17"])
    p.add_argument("--mode", default="fs", choices=["interactive", "fs"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_commit)

    p = sub.add_parser("challenge", help="draw a coding challenge (step 2)")
    p.add_argument("commitments")
    p.add_argument("--seed", default="challenge-0", help="verifier randomness")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_challenge)

    p = sub.add_parser("respond", help="answer a challenge with proofs (steps 3-5)")
    p.add_argument("data")
    p.add_argument("commitments")
    p.add_argument("challenge")
    p.add_argument(
        "--adversary",
        default=None,
        help="withhold:<seed> refuses challenges off a hyperplane; "
        "inconsistent:<seed> offsets every coded vector",
    )
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_respond)

    p = sub.add_parser("verify", help="check a response (step 6); exit 0=available")
    p.add_argument("commitments")
    p.add_argument("challenge")
    p.add_argument("response")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("costs", help="cost tables and figure data")
    p.add_argument(
        "--figure",
        required=True,
        choices=["table2", "fig3", "fig4", "fig4_sampling", "fig4_commitment"],
    )
    p.add_argument("--d", default="32MiB", help="data size (e.g. 32MiB or bytes)")
    p.add_argument("--target", type=float, default=1e-9, help="failure probability target")
    p.add_argument("--out", default=None, help="CSV output path")
    p.add_argument("--json", default=None, help="cost-report JSON path (table2)")
    p.add_argument("--plot", default=None, help="PNG output path")
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_costs)

    p = sub.add_parser("simulate", help="Monte Carlo / exhaustive experiments")
    p.add_argument(
        "--kind",
        required=True,
        choices=["withholding", "consistency", "multiverifier-rank", "multiverifier_rank"],
    )
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", dest="seed_int", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RlncDasError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
