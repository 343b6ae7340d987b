"""Identity-based public-verifiable signcryption.

Five operations: setup, keygen, signcrypt, unsigncrypt, tp_verify, plus
the standalone public signature check verify_public. Private keys take
the inverse-exponent form D = (H1(ID) + s)^{-1} P, so the corresponding
public key Q = H1(ID) P + Ppub pairs with D to the fixed constant
g = e(P1, P2) and no certificate is needed.

Asymmetric-pairing layout: the signature components R, T and the curve
hash H live in G1, S lives in G2, and every value that appears in both
pairing slots (generator, master public key, user keys) is carried as a
G1/G2 pair sharing one scalar. With that slot assignment every equation
below reads exactly as in the symmetric setting.

All operations are pure; signcrypt takes an explicit randomness source.
The optional counters argument tallies logical scheme operations only:
public-key derivation and hashing to the curve are uncounted on purpose.
"""

from __future__ import annotations

import hmac
from dataclasses import dataclass

from . import backend
from .backend import (
    G1Elem,
    G2Elem,
    GTElem,
    HashConfig,
    PROFILES,
)


class SchemeError(Exception):
    """Base for all signcryption-level errors."""


class UnsupportedProfile(SchemeError):
    pass


class EmptyIdentity(SchemeError):
    pass


class DegenerateKey(SchemeError):
    """H1(ID) + s vanished mod p; the key for this identity is undefined."""


class SelfSigncrypt(SchemeError):
    """Sender and receiver identities must differ."""


class KeyIdentityMismatch(SchemeError):
    pass


SIGNATURE_CHECK = "signature-check"
TAG_CHECK = "tag-check"


class InvalidSigncryption(SchemeError):
    """Rejected ciphertext.

    `reason` distinguishes the failed signature equation from a failed
    authentication tag for tests and logs. External surfaces must not
    forward it: a decryption-failure oracle is an attack foothold, so
    the CLI collapses both reasons into one opaque "invalid".
    """

    def __init__(self, reason: str):
        super().__init__("invalid signcryption")
        self.reason = reason


@dataclass(frozen=True)
class SystemParams:
    curve_profile: str
    P1: G1Elem
    P2: G2Elem
    Ppub1: G1Elem
    Ppub2: G2Elem
    g: GTElem
    hash_cfg: HashConfig


@dataclass(frozen=True)
class MasterSecret:
    s: int


@dataclass(frozen=True)
class UserPrivateKey:
    identity: bytes
    D1: G1Elem
    D2: G2Elem


@dataclass(frozen=True)
class Signcryption:
    c: bytes
    R: G1Elem
    S: G2Elem
    T: G1Elem


@dataclass(frozen=True)
class TPProof:
    message: bytes
    tag: bytes
    alpha: GTElem
    sigma: Signcryption


# codec needs the dataclasses above at import time, and the operations
# below need codec's transcript builders; defining types first keeps the
# circular import well ordered.
from . import codec  # noqa: E402


def _require_identity(identity: bytes):
    if not isinstance(identity, bytes):
        raise TypeError("identities are byte strings")
    if len(identity) == 0:
        raise EmptyIdentity("identity must be nonempty")


def setup(profile: str, rng) -> tuple[SystemParams, MasterSecret]:
    """Generate system parameters and the master secret for one authority."""
    if profile not in PROFILES:
        raise UnsupportedProfile(f"unknown curve profile {profile!r}")
    s = backend.scalar_random(rng)
    p1 = backend.g1_generator()
    p2 = backend.g2_generator()
    params = SystemParams(
        curve_profile=profile,
        P1=p1,
        P2=p2,
        Ppub1=backend.group_mul(s, p1),
        Ppub2=backend.group_mul(s, p2),
        g=backend.pair(p1, p2),
        hash_cfg=HashConfig(),
    )
    return params, MasterSecret(s)


def public_key_of(params: SystemParams, identity: bytes, side: int):
    """Q = H1(ID) P + Ppub on the requested source-group side (1 or 2)."""
    _require_identity(identity)
    h = backend.hash_to_scalar(params.hash_cfg, codec.h1_payload(identity))
    if side == 1:
        return backend.group_add(backend.group_mul(h, params.P1), params.Ppub1)
    if side == 2:
        return backend.group_add(backend.group_mul(h, params.P2), params.Ppub2)
    raise ValueError("side must be 1 or 2")


def keygen(params: SystemParams, master: MasterSecret, identity: bytes) -> UserPrivateKey:
    """Issue D = (H1(ID) + s)^{-1} P in both source groups."""
    _require_identity(identity)
    h = backend.hash_to_scalar(params.hash_cfg, codec.h1_payload(identity))
    e = (h + master.s) % backend.ORDER
    if e == 0:
        # probability ~2^-255 per identity, but silently resampling would
        # make keygen nondeterministic, so surface it
        raise DegenerateKey("H1(identity) + s is zero mod p")
    inv = backend.scalar_invert(e)
    return UserPrivateKey(
        identity=identity,
        D1=backend.group_mul(inv, params.P1),
        D2=backend.group_mul(inv, params.P2),
    )


def signcrypt(
    params: SystemParams,
    sender_key: UserPrivateKey,
    id_sender: bytes,
    id_receiver: bytes,
    message: bytes,
    rng,
    counters=None,
) -> Signcryption:
    """Sign and encrypt message from id_sender to id_receiver.

    Per call: 3 scalar multiplications, 1 GT exponentiation, 0 pairings.
    """
    _require_identity(id_sender)
    _require_identity(id_receiver)
    if id_sender == id_receiver:
        # the security model excludes self-signcryption; keep it unreachable
        raise SelfSigncrypt("sender and receiver identities must differ")
    if sender_key.identity != id_sender:
        raise KeyIdentityMismatch("sender key was issued for a different identity")

    cfg = params.hash_cfg
    r = backend.scalar_random(rng)
    r_inv = backend.scalar_invert(r)

    alpha = backend.gt_exp(params.g, r_inv, counters)
    R = backend.group_mul(r_inv, public_key_of(params, id_receiver, 1), counters)
    S = backend.group_mul(r, public_key_of(params, id_sender, 2), counters)

    gamma = backend.xof_stream(
        cfg, cfg.tag_h2,
        codec.h2_payload(message, alpha, R, S, id_sender, id_receiver),
        cfg.tag_bytes,
    )
    mask = backend.xof_stream(
        cfg, cfg.tag_h3,
        codec.h3_payload(alpha, R, S),
        len(message) + cfg.tag_bytes,
    )
    c = bytes(a ^ b for a, b in zip(message + gamma, mask))

    H = backend.hash_to_g1(cfg, codec.h4_payload(c, R, S, id_sender, id_receiver))
    T = backend.group_add(backend.group_mul(r, H, counters), sender_key.D1)
    return Signcryption(c=c, R=R, S=S, T=T)


def unsigncrypt(
    params: SystemParams,
    receiver_key: UserPrivateKey,
    id_sender: bytes,
    id_receiver: bytes,
    sigma: Signcryption,
    counters=None,
) -> tuple[bytes, TPProof]:
    """Verify-then-decrypt. Per call: 3 pairings, no mults, no exps.

    Raises InvalidSigncryption on any failure; on success returns the
    message together with the third-party proof phi.
    """
    _require_identity(id_sender)
    _require_identity(id_receiver)
    if receiver_key.identity != id_receiver:
        raise KeyIdentityMismatch("receiver key was issued for a different identity")
    cfg = params.hash_cfg
    if len(sigma.c) < cfg.tag_bytes:
        raise InvalidSigncryption(SIGNATURE_CHECK)

    h_prime = backend.hash_to_g1(
        cfg, codec.h4_payload(sigma.c, sigma.R, sigma.S, id_sender, id_receiver)
    )
    lhs = backend.pair(sigma.T, public_key_of(params, id_sender, 2), counters)
    rhs = backend.gt_mul(backend.pair(h_prime, sigma.S, counters), params.g)
    if lhs != rhs:
        raise InvalidSigncryption(SIGNATURE_CHECK)

    alpha = backend.pair(sigma.R, receiver_key.D2, counters)
    mask = backend.xof_stream(
        cfg, cfg.tag_h3, codec.h3_payload(alpha, sigma.R, sigma.S), len(sigma.c)
    )
    plain = bytes(a ^ b for a, b in zip(sigma.c, mask))
    message, tag = plain[: -cfg.tag_bytes], plain[-cfg.tag_bytes:]

    expected = backend.xof_stream(
        cfg, cfg.tag_h2,
        codec.h2_payload(message, alpha, sigma.R, sigma.S, id_sender, id_receiver),
        cfg.tag_bytes,
    )
    if not hmac.compare_digest(expected, tag):
        raise InvalidSigncryption(TAG_CHECK)
    return message, TPProof(message=message, tag=tag, alpha=alpha, sigma=sigma)


def verify_public(
    params: SystemParams,
    id_sender: bytes,
    id_receiver: bytes,
    sigma: Signcryption,
    counters=None,
) -> bool:
    """Check the sender's signature on sigma from public data alone.

    Accepts iff e(T, Q_A) = e(H', S) g. Needs no private key, so anyone
    holding the ciphertext can attribute it. Per call: 2 pairings.
    """
    _require_identity(id_sender)
    _require_identity(id_receiver)
    cfg = params.hash_cfg
    if len(sigma.c) < cfg.tag_bytes:
        return False
    h_prime = backend.hash_to_g1(
        cfg, codec.h4_payload(sigma.c, sigma.R, sigma.S, id_sender, id_receiver)
    )
    lhs = backend.pair(sigma.T, public_key_of(params, id_sender, 2), counters)
    rhs = backend.gt_mul(backend.pair(h_prime, sigma.S, counters), params.g)
    return lhs == rhs


def tp_verify(
    params: SystemParams,
    id_sender: bytes,
    id_receiver: bytes,
    proof: TPProof,
    require_signature: bool = True,
) -> bool:
    """Third-party check of a proof released by the receiver.

    Recomputes m* || gamma* from the ciphertext under the disclosed
    alpha and accepts iff the recomputed tag matches both the freshly
    derived one and the carried one, and m* matches the carried message.
    With require_signature (the default) the sender's signature on sigma
    must also hold, giving the third party origin as well as integrity;
    pass False for the relaxed tag-only verdict.
    """
    _require_identity(id_sender)
    _require_identity(id_receiver)
    cfg = params.hash_cfg
    sigma = proof.sigma
    if len(proof.tag) != cfg.tag_bytes or len(sigma.c) != len(proof.message) + cfg.tag_bytes:
        return False
    if require_signature and not verify_public(params, id_sender, id_receiver, sigma):
        return False

    mask = backend.xof_stream(
        cfg, cfg.tag_h3, codec.h3_payload(proof.alpha, sigma.R, sigma.S), len(sigma.c)
    )
    plain = bytes(a ^ b for a, b in zip(sigma.c, mask))
    m_star, g_star = plain[: -cfg.tag_bytes], plain[-cfg.tag_bytes:]

    expected = backend.xof_stream(
        cfg, cfg.tag_h2,
        codec.h2_payload(m_star, proof.alpha, sigma.R, sigma.S, id_sender, id_receiver),
        cfg.tag_bytes,
    )
    if not hmac.compare_digest(g_star, expected):
        return False
    if not hmac.compare_digest(g_star, proof.tag):
        return False
    return m_star == proof.message
