"""Bilinear group arithmetic and hash oracles over BLS12-381.

Everything here is a thin, typed layer over the compiled extension
module: elements travel as canonical compressed bytes (G1 = 48, G2 = 96,
GT = 576) wrapped in frozen dataclasses, scalars are plain ints mod the
group order. The scheme layer never touches raw encodings directly.

The four random oracles are domain-separated by fixed 11-byte tags; each
primitive hashes tag || payload so the oracles stay independent even on
identical payloads.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass

from . import _bls12381 as _native

ORDER = int.from_bytes(_native.scalar_order(), "big")

# ORDER is a 255-bit prime; 32 bytes carry any canonical scalar.
_SCALAR_LEN = 32
_TOP_MASK = (1 << 255) - 1


class ZeroInverse(ValueError):
    """Raised when inverting the zero scalar."""


@dataclass(frozen=True)
class CurveProfile:
    name: str
    l1: int  # G1 compressed byte length
    l2: int  # G2 compressed byte length
    lt: int  # GT canonical byte length
    k: int   # security parameter, bits


BLS12_381 = CurveProfile(name="bls12-381", l1=48, l2=96, lt=576, k=128)

PROFILES = {BLS12_381.name: BLS12_381}

DEFAULT_PROFILE = BLS12_381.name


@dataclass(frozen=True)
class HashConfig:
    """Domain tags and size parameters for the four hash oracles."""

    tag_h1: bytes = b"IBPSC-v1-H1"
    tag_h2: bytes = b"IBPSC-v1-H2"
    tag_h3: bytes = b"IBPSC-v1-H3"
    tag_h4: bytes = b"IBPSC-v1-H4"
    n2: int = 256   # authentication tag length, bits
    k: int = 128    # security parameter, bits

    def __post_init__(self):
        tags = (self.tag_h1, self.tag_h2, self.tag_h3, self.tag_h4)
        if len(set(tags)) != 4 or any(len(t) == 0 for t in tags):
            raise ValueError("hash domain tags must be distinct and nonempty")
        if self.n2 < 128 or self.n2 % 8:
            raise ValueError("n2 must be a whole number of bytes, at least 128 bits")
        if self.k < 128:
            raise ValueError("k must be at least 128 bits")

    @property
    def tag_bytes(self):
        return self.n2 // 8


@dataclass(frozen=True)
class G1Elem:
    data: bytes

    def __post_init__(self):
        if len(self.data) != BLS12_381.l1:
            raise ValueError("G1 encoding must be 48 bytes")


@dataclass(frozen=True)
class G2Elem:
    data: bytes

    def __post_init__(self):
        if len(self.data) != BLS12_381.l2:
            raise ValueError("G2 encoding must be 96 bytes")


@dataclass(frozen=True)
class GTElem:
    data: bytes

    def __post_init__(self):
        if len(self.data) != BLS12_381.lt:
            raise ValueError("GT encoding must be 576 bytes")


_G1_GEN = bytes(_native.g1_generator())
_G2_GEN = bytes(_native.g2_generator())
_G1_ID = bytes(_native.g1_identity())
_G2_ID = bytes(_native.g2_identity())
_GT_ID = bytes(_native.gt_identity())


def g1_generator() -> G1Elem:
    return G1Elem(_G1_GEN)


def g2_generator() -> G2Elem:
    return G2Elem(_G2_GEN)


def g1_identity() -> G1Elem:
    return G1Elem(_G1_ID)


def g2_identity() -> G2Elem:
    return G2Elem(_G2_ID)


def gt_identity() -> GTElem:
    return GTElem(_GT_ID)


def g1_is_valid(data: bytes) -> bool:
    """On-curve and prime-subgroup check for a candidate G1 encoding."""
    return _native.g1_validate(data)


def g2_is_valid(data: bytes) -> bool:
    return _native.g2_validate(data)


def gt_is_valid(data: bytes) -> bool:
    """Membership in the order-p subgroup of the target group."""
    return _native.gt_validate(data)


# ---------------------------------------------------------------------------
# randomness sources


class SystemRandomSource:
    """OS entropy. The default for anything that signs real data."""

    def read(self, n: int) -> bytes:
        return os.urandom(n)


class DrbgSource:
    """Deterministic byte stream from a seed, for test vectors only.

    SHAKE-256 over a fixed prefix plus the seed; read(n) walks the XOF
    output left to right, so equal seeds give equal streams regardless
    of how reads are chunked.
    """

    def __init__(self, seed: bytes):
        self._xof = hashlib.shake_256(b"IBPSC-v1-DRBG" + seed)
        self._offset = 0

    def read(self, n: int) -> bytes:
        end = self._offset + n
        out = self._xof.digest(end)[self._offset:end]
        self._offset = end
        return out


def scalar_random(rng) -> int:
    """Uniform scalar in [1, p-1] by rejection sampling.

    p is just under 2^255, so masking to 255 bits and rejecting
    out-of-range draws keeps the output exactly uniform (acceptance
    rate about 0.91 per draw).
    """
    while True:
        x = int.from_bytes(rng.read(_SCALAR_LEN), "big") & _TOP_MASK
        if 1 <= x < ORDER:
            return x


def scalar_invert(x: int) -> int:
    if x % ORDER == 0:
        raise ZeroInverse("zero scalar has no inverse")
    return pow(x, -1, ORDER)


def _scalar_bytes(s: int) -> bytes:
    return (s % ORDER).to_bytes(_SCALAR_LEN, "big")


# ---------------------------------------------------------------------------
# group operations
#
# The optional `counters` argument is any object with pairings,
# scalar_mults and gt_exps attributes (see testkit.OpCounters). Counts
# are logical scheme-level operations: callers that derive public keys
# or hash to the curve deliberately pass counters=None there.


def group_mul(s: int, x, counters=None):
    """Scalar multiplication in either source group."""
    if counters is not None:
        counters.scalar_mults += 1
    sb = _scalar_bytes(s)
    if isinstance(x, G1Elem):
        return G1Elem(bytes(_native.g1_mul(x.data, sb)))
    if isinstance(x, G2Elem):
        return G2Elem(bytes(_native.g2_mul(x.data, sb)))
    raise TypeError("group_mul needs a G1Elem or G2Elem")


def group_add(x, y):
    """Point addition; both operands must live in the same source group."""
    if isinstance(x, G1Elem) and isinstance(y, G1Elem):
        return G1Elem(bytes(_native.g1_add(x.data, y.data)))
    if isinstance(x, G2Elem) and isinstance(y, G2Elem):
        return G2Elem(bytes(_native.g2_add(x.data, y.data)))
    raise TypeError("group_add operands must share a source group")


def group_neg(x):
    if isinstance(x, G1Elem):
        return G1Elem(bytes(_native.g1_neg(x.data)))
    if isinstance(x, G2Elem):
        return G2Elem(bytes(_native.g2_neg(x.data)))
    raise TypeError("group_neg needs a G1Elem or G2Elem")


def pair(x: G1Elem, y: G2Elem, counters=None) -> GTElem:
    if counters is not None:
        counters.pairings += 1
    return GTElem(bytes(_native.pairing(x.data, y.data)))


def gt_mul(a: GTElem, b: GTElem) -> GTElem:
    return GTElem(bytes(_native.gt_mul(a.data, b.data)))


def gt_exp(a: GTElem, s: int, counters=None) -> GTElem:
    if counters is not None:
        counters.gt_exps += 1
    return GTElem(bytes(_native.gt_exp(a.data, _scalar_bytes(s))))


# ---------------------------------------------------------------------------
# hash oracles


def hash_to_scalar(cfg: HashConfig, payload: bytes) -> int:
    """First oracle: transcript bytes to a nonzero scalar.

    Expands tag || payload to 2k bits with SHAKE-256 and reduces mod p;
    a zero residue maps to 1 so the codomain stays Z_p*.
    """
    width = 2 * cfg.k // 8
    digest = hashlib.shake_256(cfg.tag_h1 + payload).digest(width)
    x = int.from_bytes(digest, "big") % ORDER
    return x if x != 0 else 1


def hash_to_g1(cfg: HashConfig, payload: bytes) -> G1Elem:
    """Fourth oracle: genuine hash-to-curve into G1.

    Standard suite (SHA-256 based, random-oracle variant) with the H4
    domain tag as its DST, so nobody, this library included, knows the
    discrete log of the output relative to the generator.
    """
    return G1Elem(bytes(_native.hash_to_g1(payload, cfg.tag_h4)))


def xof_stream(cfg: HashConfig, tag: bytes, payload: bytes, out_len: int) -> bytes:
    """Keystream of exactly out_len bytes from SHAKE-256 over tag || payload.

    Backs both the second oracle (fixed-width tag) and the third (mask of
    length |m| + n2/8). SHAKE output is prefix-consistent, which the mask
    construction relies on for varying message lengths.
    """
    if out_len < 1:
        raise ValueError("out_len must be positive")
    return hashlib.shake_256(tag + payload).digest(out_len)
