"""Role-oriented command line: authority, sender, receiver, third party.

One binary, subcommands per role action, operating on the wire-format
files (*.params, *.msk, *.key, *.ct, *.proof). Exit codes are a stable
scripting contract: 0 success or valid, 1 cryptographic invalid, 2
usage or I/O trouble.

Failure hygiene: unsigncrypt and the two verify commands never say why
a ciphertext or proof was rejected, only "invalid". Distinguishable
rejection reasons hand an attacker a decryption oracle.
"""

import csv
import sys

import click

from . import backend, codec, scheme, testkit
from .backend import DrbgSource, SystemRandomSource

_SEED_WARNING = (
    "WARNING: --seed makes every nonce predictable; "
    "known-answer vectors only, never real traffic."
)


class CliError(click.ClickException):
    exit_code = 2


def _invalid():
    click.echo("invalid")
    sys.exit(1)


def _rng_for(seed, production):
    if seed is None:
        return SystemRandomSource()
    if production:
        raise CliError("--seed is refused in --production mode")
    try:
        seed_bytes = bytes.fromhex(seed)
    except ValueError:
        raise CliError("--seed must be a hex string") from None
    click.echo(_SEED_WARNING, err=True)
    return DrbgSource(seed_bytes)


def _read_file(path, what):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {what} file: {exc}") from None


def _write_file(path, data, what):
    try:
        testkit.write_atomic(path, data)
    except OSError as exc:
        raise CliError(f"cannot write {what} file: {exc}") from None


def _load_trusted(path, kind, what, params=None):
    """Infrastructure inputs (params, master, keys): malformed is a usage error."""
    try:
        return codec.decode(_read_file(path, what), kind, params)
    except codec.CodecError as exc:
        raise CliError(f"malformed {what} file: {exc}") from None


def _load_params(path):
    return _load_trusted(path, codec.KIND_PARAMS, "params")


def _identity(value, flag):
    ident = value.encode()
    if not ident:
        raise CliError(f"{flag} must be a nonempty identity")
    return ident


@click.group()
@click.version_option(package_name="ibpsc")
def main():
    """Identity-based public-verifiable signcryption."""


@main.command()
@click.option("--profile", default=backend.DEFAULT_PROFILE, show_default=True,
              help="Named curve profile.")
@click.option("--out-params", required=True, type=click.Path(dir_okay=False),
              help="Where to write the public parameters.")
@click.option("--out-master", required=True, type=click.Path(dir_okay=False),
              help="Where to write the master secret.")
@click.option("--seed", default=None, help="Hex seed for deterministic output (tests only).")
@click.option("--production", is_flag=True, help="Refuse any deterministic seeding.")
def setup(profile, out_params, out_master, seed, production):
    """Generate system parameters and the master secret (authority role)."""
    rng = _rng_for(seed, production)
    try:
        params, master = scheme.setup(profile, rng)
    except scheme.UnsupportedProfile as exc:
        raise CliError(str(exc)) from None
    _write_file(out_params, codec.encode(params), "params")
    _write_file(out_master, codec.encode(master), "master")
    click.echo(f"profile: {profile}")
    click.echo(f"params digest: {codec.params_digest(params).hex()}")


@main.command()
@click.option("--params", "params_path", required=True, type=click.Path(dir_okay=False))
@click.option("--master", "master_path", required=True, type=click.Path(dir_okay=False))
@click.option("--identity", required=True, help="Identity the key is issued to.")
@click.option("--out-key", required=True, type=click.Path(dir_okay=False))
def keygen(params_path, master_path, identity, out_key):
    """Issue a private key for an identity (authority role)."""
    params = _load_params(params_path)
    master = _load_trusted(master_path, codec.KIND_MASTER, "master")
    ident = _identity(identity, "--identity")
    try:
        key = scheme.keygen(params, master, ident)
    except scheme.SchemeError as exc:
        raise CliError(str(exc)) from None
    _write_file(out_key, codec.encode(key), "key")
    click.echo(f"issued key for identity {identity!r}")


@main.command()
@click.option("--params", "params_path", required=True, type=click.Path(dir_okay=False))
@click.option("--key", "key_path", required=True, type=click.Path(dir_okay=False),
              help="Sender's private key file.")
@click.option("--from", "sender", required=True, help="Sender identity.")
@click.option("--to", "receiver", required=True, help="Receiver identity.")
@click.option("--in", "in_path", required=True, type=click.Path(dir_okay=False),
              help="Plaintext file.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False),
              help="Signcryption output file.")
@click.option("--seed", default=None, help="Hex seed for a deterministic nonce (tests only).")
@click.option("--production", is_flag=True, help="Refuse any deterministic seeding.")
def signcrypt(params_path, key_path, sender, receiver, in_path, out_path, seed, production):
    """Sign and encrypt a message (sender role)."""
    rng = _rng_for(seed, production)
    params = _load_params(params_path)
    key = _load_trusted(key_path, codec.KIND_KEY, "key", params)
    message = _read_file(in_path, "message")
    try:
        sigma = scheme.signcrypt(
            params, key, _identity(sender, "--from"), _identity(receiver, "--to"),
            message, rng,
        )
    except scheme.SelfSigncrypt:
        raise CliError("self-signcryption not permitted") from None
    except scheme.SchemeError as exc:
        raise CliError(str(exc)) from None
    blob = codec.encode(sigma)
    _write_file(out_path, blob, "signcryption")
    click.echo(f"wrote {len(blob)}-byte signcryption")


@main.command()
@click.option("--params", "params_path", required=True, type=click.Path(dir_okay=False))
@click.option("--key", "key_path", required=True, type=click.Path(dir_okay=False),
              help="Receiver's private key file.")
@click.option("--from", "sender", required=True, help="Sender identity.")
@click.option("--to", "receiver", required=True, help="Receiver identity.")
@click.option("--in", "in_path", required=True, type=click.Path(dir_okay=False),
              help="Signcryption file.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False),
              help="Recovered plaintext output.")
@click.option("--proof-out", "proof_path", required=True, type=click.Path(dir_okay=False),
              help="Third-party proof output.")
def unsigncrypt(params_path, key_path, sender, receiver, in_path, out_path, proof_path):
    """Verify and decrypt a signcryption (receiver role)."""
    params = _load_params(params_path)
    key = _load_trusted(key_path, codec.KIND_KEY, "key", params)
    wire = _read_file(in_path, "signcryption")
    id_a = _identity(sender, "--from")
    id_b = _identity(receiver, "--to")
    try:
        sigma = codec.decode(wire, codec.KIND_SIGMA, params)
        message, proof = scheme.unsigncrypt(params, key, id_a, id_b, sigma)
    except (codec.CodecError, scheme.InvalidSigncryption, scheme.KeyIdentityMismatch):
        # one opaque verdict for parse failures, signature failures, tag
        # failures and wrong-key attempts alike
        _invalid()
    except scheme.SchemeError as exc:
        raise CliError(str(exc)) from None
    _write_file(out_path, message, "message")
    _write_file(proof_path, codec.encode(proof), "proof")
    click.echo(f"valid: recovered {len(message)} bytes")


@main.command("verify-public")
@click.option("--params", "params_path", required=True, type=click.Path(dir_okay=False))
@click.option("--from", "sender", required=True, help="Sender identity.")
@click.option("--to", "receiver", required=True, help="Receiver identity.")
@click.option("--ct", "ct_path", required=True, type=click.Path(dir_okay=False),
              help="Signcryption file.")
def verify_public(params_path, sender, receiver, ct_path):
    """Check the sender's signature using public data only."""
    params = _load_params(params_path)
    wire = _read_file(ct_path, "signcryption")
    try:
        sigma = codec.decode(wire, codec.KIND_SIGMA, params)
        ok = scheme.verify_public(
            params, _identity(sender, "--from"), _identity(receiver, "--to"), sigma)
    except codec.CodecError:
        _invalid()
    if not ok:
        _invalid()
    click.echo("valid")


@main.command("tp-verify")
@click.option("--params", "params_path", required=True, type=click.Path(dir_okay=False))
@click.option("--from", "sender", required=True, help="Sender identity.")
@click.option("--to", "receiver", required=True, help="Receiver identity.")
@click.option("--proof", "proof_path", required=True, type=click.Path(dir_okay=False),
              help="Proof file released by the receiver.")
@click.option("--relaxed", is_flag=True,
              help="Tag-only verdict; skip the signature equation.")
def tp_verify(params_path, sender, receiver, proof_path, relaxed):
    """Verify a receiver-released proof (third-party role)."""
    params = _load_params(params_path)
    wire = _read_file(proof_path, "proof")
    try:
        proof = codec.decode(wire, codec.KIND_PROOF, params)
        ok = scheme.tp_verify(
            params, _identity(sender, "--from"), _identity(receiver, "--to"),
            proof, require_signature=not relaxed)
    except codec.CodecError:
        _invalid()
    if not ok:
        _invalid()
    click.echo("valid")


def _render_report(rows, report_dir):
    import os

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(report_dir, exist_ok=True)
    csv_path = os.path.join(report_dir, "bench.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["op", "pairings", "scalar_mults", "gt_exps",
                         "median_ms", "iterations"])
        for r in rows:
            writer.writerow([r.op, r.pairings, r.scalar_mults, r.gt_exps,
                             f"{r.median_ms:.4f}", r.iterations])

    ops = [r.op for r in rows]
    x = range(len(rows))
    width = 0.25

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar([i - width for i in x], [r.scalar_mults for r in rows], width, label="scalar mults")
    ax.bar(list(x), [r.gt_exps for r in rows], width, label="GT exps")
    ax.bar([i + width for i in x], [r.pairings for r in rows], width, label="pairings")
    ax.set_xticks(list(x))
    ax.set_xticklabels(ops)
    ax.set_ylabel("operations per call")
    ax.set_title("Logical operation counts")
    ax.legend()
    fig.tight_layout()
    counts_path = os.path.join(report_dir, "op_counts.png")
    fig.savefig(counts_path, dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(ops, [r.median_ms for r in rows], color="#4878a8")
    ax.set_ylabel("median wall time (ms)")
    ax.set_title(f"Timings over {rows[0].iterations} iterations")
    fig.tight_layout()
    times_path = os.path.join(report_dir, "timings.png")
    fig.savefig(times_path, dpi=120)
    plt.close(fig)

    return [csv_path, counts_path, times_path]


@main.command()
@click.option("--params", "params_path", required=True, type=click.Path(dir_okay=False),
              help="Params file naming the curve profile to measure.")
@click.option("--iterations", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--report-dir", default=None, type=click.Path(file_okay=False),
              help="Also write bench.csv and figures here.")
def bench(params_path, iterations, report_dir):
    """Measure operation counts and wall time per call.

    Counts must reproduce the published comparison row (3 mults, 1 GT
    exp, 0 pairings to signcrypt; 0, 0, 3 to unsigncrypt); the command
    fails if they deviate.
    """
    params = _load_params(params_path)
    try:
        rows = testkit.run_bench(iterations, profile=params.curve_profile)
    except OSError as exc:
        raise CliError(str(exc)) from None

    click.echo(f"{'op':<14} {'mults':>6} {'exps':>6} {'pairings':>9} {'median ms':>10}")
    for r in rows:
        click.echo(f"{r.op:<14} {r.scalar_mults:>6} {r.gt_exps:>6} "
                   f"{r.pairings:>9} {r.median_ms:>10.3f}")

    deviations = [
        f"{r.op}: expected {testkit.EXPECTED_COUNTS[r.op]}, measured {r.counts()}"
        for r in rows if r.counts() != testkit.EXPECTED_COUNTS[r.op]
    ]
    if report_dir is not None:
        try:
            for path in _render_report(rows, report_dir):
                click.echo(f"wrote {path}")
        except OSError as exc:
            raise CliError(f"cannot write report: {exc}") from None
    if deviations:
        for line in deviations:
            click.echo(f"count deviation, {line}", err=True)
        sys.exit(1)
    click.echo("operation counts match the published comparison")


@main.command("game-suite")
@click.option("--params", "params_path", required=True, type=click.Path(dir_okay=False))
@click.option("--master", "master_path", required=True, type=click.Path(dir_okay=False))
@click.option("--trials", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--seed", default=None, help="Hex seed for a reproducible run.")
def game_suite(params_path, master_path, trials, seed):
    """Run the adversarial property suite against a parameter set."""
    rng = _rng_for(seed, production=False)
    params = _load_params(params_path)
    master = _load_trusted(master_path, codec.KIND_MASTER, "master")
    report = testkit.run_game_suite(params, master, trials, rng)
    click.echo(report.render())
    if not report.ok:
        sys.exit(1)


@main.group()
def kat():
    """Known-answer vectors: deterministic generate and byte-exact verify."""


@kat.command("generate")
@click.option("--seed", required=True, help="Hex seed; fully determines the file.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--count", type=click.IntRange(min=1), default=5, show_default=True)
def kat_generate(seed, out_path, count):
    """Write a known-answer file derived entirely from the seed."""
    try:
        seed_bytes = bytes.fromhex(seed)
    except ValueError:
        raise CliError("--seed must be a hex string") from None
    try:
        n = testkit.generate_kats(seed_bytes, out_path, count)
    except OSError as exc:
        raise CliError(f"cannot write KAT file: {exc}") from None
    click.echo(f"wrote {n} vectors")


@kat.command("verify")
@click.option("--in", "in_path", required=True, type=click.Path(dir_okay=False))
def kat_verify(in_path):
    """Re-derive every vector from the stored seed and compare."""
    try:
        total, failures = testkit.verify_kats(in_path)
    except OSError as exc:
        raise CliError(f"cannot read KAT file: {exc}") from None
    except codec.CodecError as exc:
        raise CliError(f"malformed KAT file: {exc}") from None
    failed = {i for i, _ in failures}
    for i in range(total):
        if i in failed:
            field = next(name for j, name in failures if j == i)
            click.echo(f"FAIL vector {i}: {field} mismatch")
        else:
            click.echo(f"PASS vector {i}")
    if failures:
        sys.exit(1)
    click.echo(f"all {total} vectors verified")


if __name__ == "__main__":
    main()
