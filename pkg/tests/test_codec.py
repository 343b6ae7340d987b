"""Transcript and wire-format contracts.

The transcript tests restate the framing rule independently with struct;
the wire tests exercise every error branch a hostile file can trigger.
"""

import struct

import pytest

from ibpsc import backend, codec, scheme
from ibpsc.backend import DrbgSource


def _frame(tag, payload):
    return bytes([tag]) + struct.pack(">I", len(payload)) + payload


class TestTranscripts:
    def test_framing_matches_independent_serializer(self):
        fields = [(codec.FIELD_OCTETS, b"hello"), (codec.FIELD_IDENTITY, b"alice")]
        expected = _frame(0x01, b"hello") + _frame(0x02, b"alice")
        assert codec.encode_transcript(fields) == expected

    def test_length_prefixes_prevent_field_bleed(self):
        a = codec.encode_transcript([(codec.FIELD_OCTETS, b""), (codec.FIELD_IDENTITY, b"a")])
        b = codec.encode_transcript([(codec.FIELD_OCTETS, b"a"), (codec.FIELD_IDENTITY, b"")])
        assert a != b

    def test_deterministic(self):
        fields = [(codec.FIELD_G1, bytes(48))]
        assert codec.encode_transcript(fields) == codec.encode_transcript(fields)

    def test_h4_payload_layout(self):
        # the oracle inputs must follow the fixed field order:
        # ciphertext, R, S, sender, receiver
        R = backend.g1_generator()
        S = backend.g2_generator()
        expected = (
            _frame(0x01, b"ct")
            + _frame(0x03, R.data)
            + _frame(0x04, S.data)
            + _frame(0x02, b"a")
            + _frame(0x02, b"b")
        )
        assert codec.h4_payload(b"ct", R, S, b"a", b"b") == expected

    def test_h3_payload_omits_identities(self):
        g = backend.pair(backend.g1_generator(), backend.g2_generator())
        payload = codec.h3_payload(g, backend.g1_generator(), backend.g2_generator())
        assert payload == (
            _frame(0x05, g.data)
            + _frame(0x03, backend.g1_generator().data)
            + _frame(0x04, backend.g2_generator().data)
        )

    def test_random_fuzz_injective(self):
        rng = DrbgSource(b"transcript-fuzz")
        seen = {}
        for _ in range(300):
            n_fields = rng.read(1)[0] % 4
            fields = tuple(
                (rng.read(1)[0] % 6 + 1, rng.read(rng.read(1)[0] % 16))
                for _ in range(n_fields)
            )
            blob = codec.encode_transcript(list(fields))
            if blob in seen:
                assert seen[blob] == fields
            seen[blob] = fields


class TestWireRoundTrips:
    def test_all_kinds(self, params, master, alice):
        rng = DrbgSource(b"wire")
        sigma = scheme.signcrypt(params, alice, b"alice", b"bob", b"payload", rng)
        kat = codec.KatFile(seed=b"s", profile="bls12-381", vectors=(
            codec.KatVector(b"a", b"b", b"m", bytes(32), b"sw", b"pw"),
        ))
        cases = [
            (params, codec.KIND_PARAMS),
            (master, codec.KIND_MASTER),
            (alice, codec.KIND_KEY),
            (sigma, codec.KIND_SIGMA),
            (kat, codec.KIND_KAT),
        ]
        for obj, kind in cases:
            blob = codec.encode(obj)
            assert codec.decode(blob, kind, params) == obj
            # canonical: re-encoding an accepted string reproduces it
            assert codec.encode(codec.decode(blob, kind, params)) == blob

    def test_proof_round_trip(self, params, alice, bob):
        rng = DrbgSource(b"proof-wire")
        sigma = scheme.signcrypt(params, alice, b"alice", b"bob", b"msg", rng)
        _, proof = scheme.unsigncrypt(params, bob, b"alice", b"bob", sigma)
        blob = codec.encode(proof)
        assert codec.decode(blob, codec.KIND_PROOF, params) == proof

    def test_params_file_length_is_documented_value(self, params):
        # 6 header + (4+9) profile + 48+96+48+96+576 elements
        # + 4*(4+11) hash tags + 8 for n2 and k
        expected = 6 + 13 + 864 + 60 + 8
        assert expected == 951
        assert len(codec.encode(params)) == 951

    def test_unknown_object_rejected(self):
        with pytest.raises(TypeError):
            codec.encode(object())


class TestWireErrors:
    def test_bad_magic(self, params):
        blob = bytearray(codec.encode(params))
        blob[0] ^= 0xFF
        with pytest.raises(codec.BadMagic):
            codec.decode(bytes(blob), codec.KIND_PARAMS)

    def test_bad_version(self, params):
        blob = bytearray(codec.encode(params))
        blob[4] = 9
        with pytest.raises(codec.BadVersion):
            codec.decode(bytes(blob), codec.KIND_PARAMS)

    def test_kind_mismatch(self, params, master):
        with pytest.raises(codec.KindMismatch):
            codec.decode(codec.encode(master), codec.KIND_PARAMS)

    def test_truncation(self, params, alice):
        blob = codec.encode(alice)
        with pytest.raises(codec.Truncated):
            codec.decode(blob[:-1], codec.KIND_KEY, params)

    def test_trailing_bytes(self, params, master):
        with pytest.raises(codec.TrailingBytes):
            codec.decode(codec.encode(master) + b"\x00", codec.KIND_MASTER)

    def test_invalid_group_element(self, params):
        blob = bytearray(codec.encode(params))
        # clearing the compression flag invalidates the first point
        blob[6 + 13] &= 0x7F
        with pytest.raises(codec.InvalidGroupElement):
            codec.decode(bytes(blob), codec.KIND_PARAMS)

    def test_inconsistent_key_halves(self, params, alice, bob):
        forged = scheme.UserPrivateKey(identity=b"alice", D1=alice.D1, D2=bob.D2)
        with pytest.raises(codec.InconsistentKeyHalves):
            codec.decode(codec.encode(forged), codec.KIND_KEY, params)

    def test_key_decode_requires_params(self, alice):
        with pytest.raises(ValueError):
            codec.decode(codec.encode(alice), codec.KIND_KEY)

    def test_master_scalar_range(self):
        zero = codec.MAGIC + bytes([codec.VERSION, codec.KIND_MASTER]) + bytes(32)
        with pytest.raises(codec.MalformedField):
            codec.decode(zero, codec.KIND_MASTER)
        over = codec.MAGIC + bytes([codec.VERSION, codec.KIND_MASTER]) \
            + backend.ORDER.to_bytes(32, "big")
        with pytest.raises(codec.MalformedField):
            codec.decode(over, codec.KIND_MASTER)

    def test_sigma_ciphertext_must_hold_a_tag(self, params, alice):
        rng = DrbgSource(b"short-c")
        sigma = scheme.signcrypt(params, alice, b"alice", b"bob", b"hi", rng)
        short = scheme.Signcryption(c=b"\x01" * 31, R=sigma.R, S=sigma.S, T=sigma.T)
        with pytest.raises(codec.MalformedField):
            codec.decode(codec.encode(short), codec.KIND_SIGMA, params)

    def test_proof_tag_length_enforced(self, params, alice, bob):
        rng = DrbgSource(b"badtag")
        sigma = scheme.signcrypt(params, alice, b"alice", b"bob", b"m", rng)
        _, proof = scheme.unsigncrypt(params, bob, b"alice", b"bob", sigma)
        bad = scheme.TPProof(message=proof.message, tag=proof.tag[:-1],
                             alpha=proof.alpha, sigma=proof.sigma)
        with pytest.raises(codec.MalformedField):
            codec.decode(codec.encode(bad), codec.KIND_PROOF, params)

    def test_unknown_profile_rejected(self, params):
        blob = bytearray(codec.encode(params))
        blob[10] ^= 0x20  # flip one profile-name byte
        with pytest.raises(codec.MalformedField):
            codec.decode(bytes(blob), codec.KIND_PARAMS)
