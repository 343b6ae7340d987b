"""Canonical byte encodings: hash transcripts and the on-disk wire format.

Transcripts are the exact serialization fed to each hash oracle. Every
field is framed as one type-tag byte, a 4-byte big-endian length, then
the payload, which makes the encoding injective: no two distinct field
sequences can produce the same byte string. Field order inside each
per-oracle builder is fixed and load-bearing; reordering changes every
derived value.

Wire objects are the persistent format: magic "IBPS", version byte,
kind byte, then a kind-specific body of fixed-length group encodings
and length-prefixed byte strings. decode() re-validates everything it
parses; malformed or non-subgroup material never reaches the scheme.
"""

import struct
from dataclasses import dataclass

from . import backend
from .backend import G1Elem, G2Elem, GTElem, HashConfig
from .scheme import (
    MasterSecret,
    Signcryption,
    SystemParams,
    TPProof,
    UserPrivateKey,
)

MAGIC = b"IBPS"
VERSION = 1

KIND_PARAMS = 0x01
KIND_MASTER = 0x02
KIND_KEY = 0x03
KIND_SIGMA = 0x04
KIND_PROOF = 0x05
KIND_KAT = 0x06

# transcript field type tags
FIELD_OCTETS = 0x01    # messages and ciphertexts
FIELD_IDENTITY = 0x02
FIELD_G1 = 0x03
FIELD_G2 = 0x04
FIELD_GT = 0x05

_SCALAR_LEN = 32
_DIGEST_LEN = 32


class CodecError(Exception):
    """Base for every decoding failure."""


class BadMagic(CodecError):
    pass


class BadVersion(CodecError):
    pass


class KindMismatch(CodecError):
    pass


class Truncated(CodecError):
    """Input ended before the declared layout did."""


class TrailingBytes(CodecError):
    """Input continued past the declared layout."""


class InvalidGroupElement(CodecError):
    """A group encoding failed curve or subgroup validation."""


class InconsistentKeyHalves(CodecError):
    """The two halves of a private key do not share a scalar."""


class MalformedField(CodecError):
    """A structurally valid frame carried an out-of-contract value."""


# ---------------------------------------------------------------------------
# transcripts


def encode_transcript(fields) -> bytes:
    """Frame an ordered sequence of (type_tag, payload_bytes) pairs."""
    out = bytearray()
    for tag, payload in fields:
        if not 0 <= tag <= 0xFF:
            raise ValueError("field type tag must fit one byte")
        if len(payload) > 0xFFFFFFFF:
            raise ValueError("field payload too long for 4-byte length")
        out.append(tag)
        out += struct.pack(">I", len(payload))
        out += payload
    return bytes(out)


def h1_payload(identity: bytes) -> bytes:
    return encode_transcript([(FIELD_IDENTITY, identity)])


def h2_payload(message: bytes, alpha: GTElem, R: G1Elem, S: G2Elem,
               id_sender: bytes, id_receiver: bytes) -> bytes:
    return encode_transcript([
        (FIELD_OCTETS, message),
        (FIELD_GT, alpha.data),
        (FIELD_G1, R.data),
        (FIELD_G2, S.data),
        (FIELD_IDENTITY, id_sender),
        (FIELD_IDENTITY, id_receiver),
    ])


def h3_payload(alpha: GTElem, R: G1Elem, S: G2Elem) -> bytes:
    return encode_transcript([
        (FIELD_GT, alpha.data),
        (FIELD_G1, R.data),
        (FIELD_G2, S.data),
    ])


def h4_payload(ciphertext: bytes, R: G1Elem, S: G2Elem,
               id_sender: bytes, id_receiver: bytes) -> bytes:
    return encode_transcript([
        (FIELD_OCTETS, ciphertext),
        (FIELD_G1, R.data),
        (FIELD_G2, S.data),
        (FIELD_IDENTITY, id_sender),
        (FIELD_IDENTITY, id_receiver),
    ])


# ---------------------------------------------------------------------------
# wire objects


@dataclass(frozen=True)
class KatVector:
    """One deterministic test vector: everything re-derivable from the seed."""

    id_sender: bytes
    id_receiver: bytes
    message: bytes
    params_digest: bytes
    sigma_wire: bytes   # kept opaque so corruption localizes to one vector
    proof_wire: bytes


@dataclass(frozen=True)
class KatFile:
    seed: bytes
    profile: str
    vectors: tuple


def _lp(data: bytes) -> bytes:
    return struct.pack(">I", len(data)) + data


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise Truncated(f"needed {n} bytes at offset {self.pos}")
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def u32(self) -> int:
        return struct.unpack(">I", self.take(4))[0]

    def lp(self) -> bytes:
        return self.take(self.u32())

    def finish(self):
        if self.pos != len(self.data):
            raise TrailingBytes(f"{len(self.data) - self.pos} bytes past end of object")


def _check_g1(data: bytes) -> G1Elem:
    if not backend.g1_is_valid(data):
        raise InvalidGroupElement("bad G1 element")
    return G1Elem(data)


def _check_g2(data: bytes) -> G2Elem:
    if not backend.g2_is_valid(data):
        raise InvalidGroupElement("bad G2 element")
    return G2Elem(data)


def _check_gt(data: bytes) -> GTElem:
    if not backend.gt_is_valid(data):
        raise InvalidGroupElement("bad GT element")
    return GTElem(data)


def encode(obj) -> bytes:
    """Serialize any wire object kind to its canonical byte string."""
    if isinstance(obj, SystemParams):
        kind, body = KIND_PARAMS, _params_body(obj)
    elif isinstance(obj, MasterSecret):
        kind, body = KIND_MASTER, obj.s.to_bytes(_SCALAR_LEN, "big")
    elif isinstance(obj, UserPrivateKey):
        kind, body = KIND_KEY, _lp(obj.identity) + obj.D1.data + obj.D2.data
    elif isinstance(obj, Signcryption):
        kind, body = KIND_SIGMA, _lp(obj.c) + obj.R.data + obj.S.data + obj.T.data
    elif isinstance(obj, TPProof):
        kind, body = KIND_PROOF, (
            _lp(obj.message) + _lp(obj.tag) + obj.alpha.data + _lp(encode(obj.sigma))
        )
    elif isinstance(obj, KatFile):
        kind, body = KIND_KAT, _kat_body(obj)
    else:
        raise TypeError(f"not a wire object: {type(obj).__name__}")
    return MAGIC + bytes([VERSION, kind]) + body


def _params_body(params: SystemParams) -> bytes:
    cfg = params.hash_cfg
    return (
        _lp(params.curve_profile.encode())
        + params.P1.data + params.P2.data
        + params.Ppub1.data + params.Ppub2.data
        + params.g.data
        + _lp(cfg.tag_h1) + _lp(cfg.tag_h2) + _lp(cfg.tag_h3) + _lp(cfg.tag_h4)
        + struct.pack(">II", cfg.n2, cfg.k)
    )


def _kat_body(kat: KatFile) -> bytes:
    body = _lp(kat.seed) + _lp(kat.profile.encode()) + struct.pack(">I", len(kat.vectors))
    for v in kat.vectors:
        if len(v.params_digest) != _DIGEST_LEN:
            raise ValueError("params digest must be 32 bytes")
        body += (
            _lp(v.id_sender) + _lp(v.id_receiver) + _lp(v.message)
            + v.params_digest + _lp(v.sigma_wire) + _lp(v.proof_wire)
        )
    return body


def decode(data: bytes, expected_kind: int, params: SystemParams | None = None):
    """Parse and validate a wire object.

    Group elements are subgroup-checked, scalars range-checked, and
    private keys must pass the dual-half pairing check, which needs the
    system parameters: pass `params` when decoding a key. Raises a
    CodecError subtype on any violation.
    """
    r = _Reader(data)
    if r.take(4) != MAGIC:
        raise BadMagic("not a wire object")
    version = r.take(1)[0]
    if version != VERSION:
        raise BadVersion(f"unsupported version {version}")
    kind = r.take(1)[0]
    if kind != expected_kind:
        raise KindMismatch(f"expected kind {expected_kind}, found {kind}")

    if kind == KIND_PARAMS:
        obj = _decode_params(r)
    elif kind == KIND_MASTER:
        obj = _decode_master(r)
    elif kind == KIND_KEY:
        obj = _decode_key(r, params)
    elif kind == KIND_SIGMA:
        obj = _decode_sigma(r, params)
    elif kind == KIND_PROOF:
        obj = _decode_proof(r, params)
    elif kind == KIND_KAT:
        obj = _decode_kat(r)
    else:
        raise KindMismatch(f"unknown kind {kind}")
    r.finish()
    return obj


def _tag_bytes(params) -> int:
    return params.hash_cfg.tag_bytes if params is not None else HashConfig().tag_bytes


def _decode_params(r: _Reader) -> SystemParams:
    profile = r.lp().decode("utf-8", errors="replace")
    if profile not in backend.PROFILES:
        raise MalformedField(f"unknown curve profile {profile!r}")
    prof = backend.PROFILES[profile]
    p1 = _check_g1(r.take(prof.l1))
    p2 = _check_g2(r.take(prof.l2))
    ppub1 = _check_g1(r.take(prof.l1))
    ppub2 = _check_g2(r.take(prof.l2))
    g = _check_gt(r.take(prof.lt))
    tags = [r.lp() for _ in range(4)]
    n2, k = struct.unpack(">II", r.take(8))
    try:
        cfg = HashConfig(tag_h1=tags[0], tag_h2=tags[1], tag_h3=tags[2],
                         tag_h4=tags[3], n2=n2, k=k)
    except ValueError as exc:
        raise MalformedField(str(exc)) from None
    return SystemParams(curve_profile=profile, P1=p1, P2=p2,
                        Ppub1=ppub1, Ppub2=ppub2, g=g, hash_cfg=cfg)


def _decode_master(r: _Reader) -> MasterSecret:
    s = int.from_bytes(r.take(_SCALAR_LEN), "big")
    if not 1 <= s < backend.ORDER:
        raise MalformedField("master scalar out of range")
    return MasterSecret(s)


def _decode_key(r: _Reader, params) -> UserPrivateKey:
    if params is None:
        raise ValueError("decoding a private key requires the system parameters")
    identity = r.lp()
    if not identity:
        raise MalformedField("empty identity in key file")
    d1 = _check_g1(r.take(backend.BLS12_381.l1))
    d2 = _check_g2(r.take(backend.BLS12_381.l2))
    # both halves must hide the same scalar or later pairings disagree
    if backend.pair(d1, params.P2) != backend.pair(params.P1, d2):
        raise InconsistentKeyHalves("key halves do not share a scalar")
    return UserPrivateKey(identity=identity, D1=d1, D2=d2)


def _decode_sigma(r: _Reader, params) -> Signcryption:
    c = r.lp()
    if len(c) < _tag_bytes(params):
        raise MalformedField("ciphertext shorter than the authentication tag")
    R = _check_g1(r.take(backend.BLS12_381.l1))
    S = _check_g2(r.take(backend.BLS12_381.l2))
    T = _check_g1(r.take(backend.BLS12_381.l1))
    return Signcryption(c=c, R=R, S=S, T=T)


def _decode_proof(r: _Reader, params) -> TPProof:
    message = r.lp()
    tag = r.lp()
    if len(tag) != _tag_bytes(params):
        raise MalformedField("proof tag has the wrong length")
    alpha = _check_gt(r.take(backend.BLS12_381.lt))
    sigma = decode(r.lp(), KIND_SIGMA, params)
    if len(sigma.c) != len(message) + _tag_bytes(params):
        raise MalformedField("proof message length disagrees with ciphertext")
    return TPProof(message=message, tag=tag, alpha=alpha, sigma=sigma)


def _decode_kat(r: _Reader) -> KatFile:
    seed = r.lp()
    profile = r.lp().decode("utf-8", errors="replace")
    count = r.u32()
    vectors = []
    for _ in range(count):
        id_a = r.lp()
        id_b = r.lp()
        message = r.lp()
        digest = r.take(_DIGEST_LEN)
        sigma_wire = r.lp()
        proof_wire = r.lp()
        vectors.append(KatVector(id_sender=id_a, id_receiver=id_b, message=message,
                                 params_digest=digest, sigma_wire=sigma_wire,
                                 proof_wire=proof_wire))
    return KatFile(seed=seed, profile=profile, vectors=tuple(vectors))


def params_digest(params: SystemParams) -> bytes:
    """Stable 32-byte fingerprint of a parameter set."""
    import hashlib

    return hashlib.sha256(encode(params)).digest()
