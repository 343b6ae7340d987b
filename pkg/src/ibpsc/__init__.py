"""Identity-based public-verifiable signcryption over BLS12-381.

Library layout:

- backend: group arithmetic, hash oracles, randomness sources
- scheme: setup, keygen, signcrypt, unsigncrypt, verify_public, tp_verify
- codec: hash transcripts and the versioned wire format
- testkit: tamper harness, game-style property suite, KATs, benchmark
- cli: the `ibpsc` command
"""

from .backend import DrbgSource, SystemRandomSource
from .scheme import (
    DegenerateKey,
    EmptyIdentity,
    InvalidSigncryption,
    KeyIdentityMismatch,
    MasterSecret,
    SchemeError,
    SelfSigncrypt,
    Signcryption,
    SystemParams,
    TPProof,
    UnsupportedProfile,
    UserPrivateKey,
    keygen,
    public_key_of,
    setup,
    signcrypt,
    tp_verify,
    unsigncrypt,
    verify_public,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateKey",
    "DrbgSource",
    "EmptyIdentity",
    "InvalidSigncryption",
    "KeyIdentityMismatch",
    "MasterSecret",
    "SchemeError",
    "SelfSigncrypt",
    "Signcryption",
    "SystemParams",
    "SystemRandomSource",
    "TPProof",
    "UnsupportedProfile",
    "UserPrivateKey",
    "keygen",
    "public_key_of",
    "setup",
    "signcrypt",
    "tp_verify",
    "unsigncrypt",
    "verify_public",
]
