"""End-to-end command-line behavior, exit codes included.

Exit code contract: 0 success or valid, 1 cryptographic invalid,
2 usage or I/O error.
"""

import os

import pytest
from click.testing import CliRunner

from ibpsc.cli import main

runner = CliRunner()


def _run(*args):
    return runner.invoke(main, [str(a) for a in args])


@pytest.fixture(scope="session")
def cli_env(tmp_path_factory):
    """One authority, two users, one ciphertext and proof on disk."""
    root = tmp_path_factory.mktemp("cli")
    paths = {
        "params": root / "sys.params",
        "master": root / "sys.msk",
        "alice": root / "alice.key",
        "bob": root / "bob.key",
        "msg": root / "msg.bin",
        "ct": root / "msg.ct",
        "rec": root / "rec.bin",
        "proof": root / "msg.proof",
        "root": root,
    }
    r = _run("setup", "--out-params", paths["params"], "--out-master", paths["master"],
             "--seed", "aa55")
    assert r.exit_code == 0, r.output
    for name in ("alice", "bob"):
        r = _run("keygen", "--params", paths["params"], "--master", paths["master"],
                 "--identity", name, "--out-key", paths[name])
        assert r.exit_code == 0, r.output
    paths["msg"].write_bytes(b"the eagle lands at midnight")
    r = _run("signcrypt", "--params", paths["params"], "--key", paths["alice"],
             "--from", "alice", "--to", "bob",
             "--in", paths["msg"], "--out", paths["ct"], "--seed", "0badcafe")
    assert r.exit_code == 0, r.output
    r = _run("unsigncrypt", "--params", paths["params"], "--key", paths["bob"],
             "--from", "alice", "--to", "bob", "--in", paths["ct"],
             "--out", paths["rec"], "--proof-out", paths["proof"])
    assert r.exit_code == 0, r.output
    return paths


class TestLifecycle:
    def test_round_trip_recovers_message(self, cli_env):
        assert cli_env["rec"].read_bytes() == cli_env["msg"].read_bytes()

    def test_params_file_has_documented_length(self, cli_env):
        assert cli_env["params"].stat().st_size == 951

    def test_verify_public_accepts(self, cli_env):
        r = _run("verify-public", "--params", cli_env["params"], "--from", "alice",
                 "--to", "bob", "--ct", cli_env["ct"])
        assert r.exit_code == 0 and "valid" in r.output

    def test_tp_verify_accepts(self, cli_env):
        for extra in ([], ["--relaxed"]):
            r = _run("tp-verify", "--params", cli_env["params"], "--from", "alice",
                     "--to", "bob", "--proof", cli_env["proof"], *extra)
            assert r.exit_code == 0 and "valid" in r.output

    def test_large_message_round_trip(self, cli_env, tmp_path):
        big = tmp_path / "big.bin"
        big.write_bytes(os.urandom(1024 * 1024))
        ct, rec, proof = tmp_path / "big.ct", tmp_path / "big.rec", tmp_path / "big.proof"
        r = _run("signcrypt", "--params", cli_env["params"], "--key", cli_env["alice"],
                 "--from", "alice", "--to", "bob", "--in", big, "--out", ct)
        assert r.exit_code == 0
        r = _run("unsigncrypt", "--params", cli_env["params"], "--key", cli_env["bob"],
                 "--from", "alice", "--to", "bob", "--in", ct,
                 "--out", rec, "--proof-out", proof)
        assert r.exit_code == 0
        assert rec.read_bytes() == big.read_bytes()


class TestDeterminism:
    def test_seeded_setup_reproduces_files(self, tmp_path):
        outs = []
        for tag in ("x", "y"):
            p, m = tmp_path / f"{tag}.params", tmp_path / f"{tag}.msk"
            r = _run("setup", "--out-params", p, "--out-master", m, "--seed", "1234")
            assert r.exit_code == 0
            outs.append((p.read_bytes(), m.read_bytes()))
        assert outs[0] == outs[1]

    def test_keygen_reproduces_files(self, cli_env, tmp_path):
        k1, k2 = tmp_path / "k1", tmp_path / "k2"
        for k in (k1, k2):
            r = _run("keygen", "--params", cli_env["params"], "--master",
                     cli_env["master"], "--identity", "carol", "--out-key", k)
            assert r.exit_code == 0
        assert k1.read_bytes() == k2.read_bytes()

    def test_seeded_signcrypt_reproduces_files(self, cli_env, tmp_path):
        c1, c2 = tmp_path / "c1", tmp_path / "c2"
        for c in (c1, c2):
            r = _run("signcrypt", "--params", cli_env["params"], "--key",
                     cli_env["alice"], "--from", "alice", "--to", "bob",
                     "--in", cli_env["msg"], "--out", c, "--seed", "77")
            assert r.exit_code == 0
        assert c1.read_bytes() == c2.read_bytes()

    def test_seed_prints_warning(self, tmp_path):
        r = _run("setup", "--out-params", tmp_path / "p", "--out-master",
                 tmp_path / "m", "--seed", "00")
        assert "WARNING" in r.stderr


class TestFailureModes:
    def test_wrong_receiver_key_is_opaque_invalid(self, cli_env, tmp_path):
        r = _run("unsigncrypt", "--params", cli_env["params"], "--key",
                 cli_env["alice"], "--from", "alice", "--to", "bob",
                 "--in", cli_env["ct"], "--out", tmp_path / "x",
                 "--proof-out", tmp_path / "y")
        assert r.exit_code == 1
        assert r.output.strip() == "invalid"

    def test_tampered_ciphertext_rejected(self, cli_env, tmp_path):
        blob = bytearray(cli_env["ct"].read_bytes())
        blob[len(blob) // 2] ^= 0x10
        bad = tmp_path / "bad.ct"
        bad.write_bytes(bytes(blob))
        r = _run("verify-public", "--params", cli_env["params"], "--from", "alice",
                 "--to", "bob", "--ct", bad)
        assert r.exit_code == 1 and r.output.strip() == "invalid"
        r = _run("unsigncrypt", "--params", cli_env["params"], "--key", cli_env["bob"],
                 "--from", "alice", "--to", "bob", "--in", bad,
                 "--out", tmp_path / "x", "--proof-out", tmp_path / "y")
        assert r.exit_code == 1 and r.output.strip() == "invalid"

    def test_tampered_proof_rejected(self, cli_env, tmp_path):
        blob = bytearray(cli_env["proof"].read_bytes())
        blob[-3] ^= 0x01
        bad = tmp_path / "bad.proof"
        bad.write_bytes(bytes(blob))
        r = _run("tp-verify", "--params", cli_env["params"], "--from", "alice",
                 "--to", "bob", "--proof", bad)
        assert r.exit_code == 1 and r.output.strip() == "invalid"

    def test_self_signcryption_refused(self, cli_env, tmp_path):
        r = _run("signcrypt", "--params", cli_env["params"], "--key", cli_env["alice"],
                 "--from", "alice", "--to", "alice",
                 "--in", cli_env["msg"], "--out", tmp_path / "z.ct")
        assert r.exit_code == 2
        assert "self-signcryption not permitted" in r.stderr

    def test_production_refuses_seed(self, tmp_path):
        r = _run("setup", "--out-params", tmp_path / "p", "--out-master",
                 tmp_path / "m", "--seed", "00", "--production")
        assert r.exit_code == 2

    def test_bad_seed_hex(self, tmp_path):
        r = _run("setup", "--out-params", tmp_path / "p", "--out-master",
                 tmp_path / "m", "--seed", "zz")
        assert r.exit_code == 2

    def test_missing_output_directory_leaves_nothing(self, tmp_path):
        target = tmp_path / "absent" / "out.params"
        r = _run("setup", "--out-params", target, "--out-master", tmp_path / "m")
        assert r.exit_code == 2
        assert not target.parent.exists()

    def test_empty_identity_refused(self, cli_env, tmp_path):
        r = _run("keygen", "--params", cli_env["params"], "--master",
                 cli_env["master"], "--identity", "", "--out-key", tmp_path / "k")
        assert r.exit_code == 2

    def test_malformed_params_file(self, tmp_path):
        junk = tmp_path / "junk.params"
        junk.write_bytes(b"not a wire object at all")
        r = _run("keygen", "--params", junk, "--master", junk,
                 "--identity", "x", "--out-key", tmp_path / "k")
        assert r.exit_code == 2

    def test_missing_input_file(self, cli_env, tmp_path):
        r = _run("verify-public", "--params", cli_env["params"], "--from", "alice",
                 "--to", "bob", "--ct", tmp_path / "nope.ct")
        assert r.exit_code == 2


class TestBenchCommand:
    def test_report_files_written(self, cli_env, tmp_path):
        report = tmp_path / "report"
        r = _run("bench", "--params", cli_env["params"], "--iterations", 3,
                 "--report-dir", report)
        assert r.exit_code == 0, r.output
        assert "operation counts match" in r.output
        csv_text = (report / "bench.csv").read_text().splitlines()
        assert csv_text[0] == "op,pairings,scalar_mults,gt_exps,median_ms,iterations"
        assert len(csv_text) == 4
        for figure in ("op_counts.png", "timings.png"):
            data = (report / figure).read_bytes()
            assert data[:8] == b"\x89PNG\r\n\x1a\n"

    def test_zero_iterations_is_usage_error(self, cli_env):
        r = _run("bench", "--params", cli_env["params"], "--iterations", 0)
        assert r.exit_code == 2


class TestKatCommand:
    def test_generate_verify_cycle(self, tmp_path):
        path = tmp_path / "v.kat"
        r = _run("kat", "generate", "--seed", "c0ffee", "--out", path, "--count", 3)
        assert r.exit_code == 0 and "wrote 3 vectors" in r.output
        r = _run("kat", "verify", "--in", path)
        assert r.exit_code == 0
        assert r.output.count("PASS") == 3

    def test_corrupted_vector_flagged(self, tmp_path):
        path = tmp_path / "v.kat"
        _run("kat", "generate", "--seed", "c0ffee", "--out", path)
        blob = bytearray(path.read_bytes())
        blob[-20] ^= 0x80
        path.write_bytes(bytes(blob))
        r = _run("kat", "verify", "--in", path)
        assert r.exit_code == 1
        assert r.output.count("FAIL") == 1


class TestGameSuiteCommand:
    def test_suite_passes(self, cli_env):
        r = _run("game-suite", "--params", cli_env["params"], "--master",
                 cli_env["master"], "--trials", 1, "--seed", "5eed")
        assert r.exit_code == 0, r.output
        assert r.output.count("PASS") == 6
