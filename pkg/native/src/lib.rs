//! Flat bytes-in/bytes-out BLS12-381 primitives for the Python layer.
//!
//! Encodings are arkworks canonical compressed form: G1 = 48 bytes,
//! G2 = 96 bytes, GT (Fq12) = 576 bytes, scalars = 32 bytes big-endian.
//! The `*_validate` functions run the full on-curve + subgroup checks;
//! arithmetic entry points assume inputs already went through validation
//! (the Python codec gates every externally supplied element).

use ark_bls12_381::{Bls12_381, Fq12, Fr, G1Affine, G1Projective, G2Affine, G2Projective};
use ark_ec::hashing::curve_maps::wb::WBMap;
use ark_ec::hashing::map_to_curve_hasher::MapToCurveBasedHasher;
use ark_ec::hashing::HashToCurve;
use ark_ec::pairing::Pairing;
use ark_ec::{AffineRepr, CurveGroup};
use ark_ff::field_hashers::DefaultFieldHasher;
use ark_ff::{BigInteger, Field, One, PrimeField, Zero};
use ark_serialize::{CanonicalDeserialize, CanonicalSerialize};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyBytes;
use sha2::Sha256;

const G1_LEN: usize = 48;
const G2_LEN: usize = 96;
const GT_LEN: usize = 576;
const FR_LEN: usize = 32;

fn decode_g1(bytes: &[u8]) -> PyResult<G1Affine> {
    if bytes.len() != G1_LEN {
        return Err(PyValueError::new_err("G1 encoding must be 48 bytes"));
    }
    G1Affine::deserialize_compressed_unchecked(bytes)
        .map_err(|_| PyValueError::new_err("undecodable G1 element"))
}

fn decode_g2(bytes: &[u8]) -> PyResult<G2Affine> {
    if bytes.len() != G2_LEN {
        return Err(PyValueError::new_err("G2 encoding must be 96 bytes"));
    }
    G2Affine::deserialize_compressed_unchecked(bytes)
        .map_err(|_| PyValueError::new_err("undecodable G2 element"))
}

fn decode_gt(bytes: &[u8]) -> PyResult<Fq12> {
    if bytes.len() != GT_LEN {
        return Err(PyValueError::new_err("GT encoding must be 576 bytes"));
    }
    Fq12::deserialize_compressed_unchecked(bytes)
        .map_err(|_| PyValueError::new_err("undecodable GT element"))
}

fn decode_fr(bytes: &[u8]) -> PyResult<Fr> {
    if bytes.len() != FR_LEN {
        return Err(PyValueError::new_err("scalar encoding must be 32 bytes"));
    }
    Ok(Fr::from_be_bytes_mod_order(bytes))
}

fn encode_g1(py: Python<'_>, p: &G1Affine) -> Py<PyBytes> {
    let mut buf = Vec::with_capacity(G1_LEN);
    p.serialize_compressed(&mut buf).expect("G1 serialization");
    PyBytes::new(py, &buf).into()
}

fn encode_g2(py: Python<'_>, p: &G2Affine) -> Py<PyBytes> {
    let mut buf = Vec::with_capacity(G2_LEN);
    p.serialize_compressed(&mut buf).expect("G2 serialization");
    PyBytes::new(py, &buf).into()
}

fn encode_gt(py: Python<'_>, v: &Fq12) -> Py<PyBytes> {
    let mut buf = Vec::with_capacity(GT_LEN);
    v.serialize_compressed(&mut buf).expect("GT serialization");
    PyBytes::new(py, &buf).into()
}

#[pyfunction]
fn scalar_order(py: Python<'_>) -> Py<PyBytes> {
    PyBytes::new(py, &Fr::MODULUS.to_bytes_be()).into()
}

#[pyfunction]
fn g1_generator(py: Python<'_>) -> Py<PyBytes> {
    encode_g1(py, &G1Affine::generator())
}

#[pyfunction]
fn g2_generator(py: Python<'_>) -> Py<PyBytes> {
    encode_g2(py, &G2Affine::generator())
}

#[pyfunction]
fn g1_identity(py: Python<'_>) -> Py<PyBytes> {
    encode_g1(py, &G1Affine::identity())
}

#[pyfunction]
fn g2_identity(py: Python<'_>) -> Py<PyBytes> {
    encode_g2(py, &G2Affine::identity())
}

#[pyfunction]
fn gt_identity(py: Python<'_>) -> Py<PyBytes> {
    encode_gt(py, &Fq12::one())
}

#[pyfunction]
fn g1_add(py: Python<'_>, a: &[u8], b: &[u8]) -> PyResult<Py<PyBytes>> {
    let sum = (G1Projective::from(decode_g1(a)?) + decode_g1(b)?).into_affine();
    Ok(encode_g1(py, &sum))
}

#[pyfunction]
fn g2_add(py: Python<'_>, a: &[u8], b: &[u8]) -> PyResult<Py<PyBytes>> {
    let sum = (G2Projective::from(decode_g2(a)?) + decode_g2(b)?).into_affine();
    Ok(encode_g2(py, &sum))
}

#[pyfunction]
fn g1_neg(py: Python<'_>, a: &[u8]) -> PyResult<Py<PyBytes>> {
    Ok(encode_g1(py, &(-decode_g1(a)?)))
}

#[pyfunction]
fn g2_neg(py: Python<'_>, a: &[u8]) -> PyResult<Py<PyBytes>> {
    Ok(encode_g2(py, &(-decode_g2(a)?)))
}

#[pyfunction]
fn g1_mul(py: Python<'_>, point: &[u8], scalar: &[u8]) -> PyResult<Py<PyBytes>> {
    let p = decode_g1(point)?.mul_bigint(decode_fr(scalar)?.into_bigint());
    Ok(encode_g1(py, &p.into_affine()))
}

#[pyfunction]
fn g2_mul(py: Python<'_>, point: &[u8], scalar: &[u8]) -> PyResult<Py<PyBytes>> {
    let p = decode_g2(point)?.mul_bigint(decode_fr(scalar)?.into_bigint());
    Ok(encode_g2(py, &p.into_affine()))
}

#[pyfunction]
fn pairing(py: Python<'_>, a: &[u8], b: &[u8]) -> PyResult<Py<PyBytes>> {
    let out = Bls12_381::pairing(decode_g1(a)?, decode_g2(b)?);
    Ok(encode_gt(py, &out.0))
}

#[pyfunction]
fn gt_mul(py: Python<'_>, a: &[u8], b: &[u8]) -> PyResult<Py<PyBytes>> {
    Ok(encode_gt(py, &(decode_gt(a)? * decode_gt(b)?)))
}

#[pyfunction]
fn gt_exp(py: Python<'_>, a: &[u8], scalar: &[u8]) -> PyResult<Py<PyBytes>> {
    let base = decode_gt(a)?;
    let exp = decode_fr(scalar)?.into_bigint();
    Ok(encode_gt(py, &base.pow(exp)))
}

/// Full decode check: parses, on-curve, prime-order subgroup, canonical.
///
/// Re-serializing must reproduce the input exactly; the deserializer
/// alone ignores the non-flag bits of an infinity-flagged encoding, so
/// without the round trip every such bit pattern would count as valid.
#[pyfunction]
fn g1_validate(bytes: &[u8]) -> bool {
    if bytes.len() != G1_LEN {
        return false;
    }
    match G1Affine::deserialize_compressed(bytes) {
        Ok(p) => {
            let mut out = [0u8; G1_LEN];
            p.serialize_compressed(&mut out[..]).is_ok() && out[..] == *bytes
        }
        Err(_) => false,
    }
}

#[pyfunction]
fn g2_validate(bytes: &[u8]) -> bool {
    if bytes.len() != G2_LEN {
        return false;
    }
    match G2Affine::deserialize_compressed(bytes) {
        Ok(p) => {
            let mut out = [0u8; G2_LEN];
            p.serialize_compressed(&mut out[..]).is_ok() && out[..] == *bytes
        }
        Err(_) => false,
    }
}

/// GT membership: nonzero field element of multiplicative order dividing
/// r, in canonical encoding.
#[pyfunction]
fn gt_validate(bytes: &[u8]) -> bool {
    if bytes.len() != GT_LEN {
        return false;
    }
    match Fq12::deserialize_compressed_unchecked(bytes) {
        Ok(v) => {
            if v.is_zero() || !v.pow(Fr::MODULUS).is_one() {
                return false;
            }
            let mut out = [0u8; GT_LEN];
            v.serialize_compressed(&mut out[..]).is_ok() && out[..] == *bytes
        }
        Err(_) => false,
    }
}

/// RFC 9380 BLS12381G1_XMD:SHA-256_SSWU_RO with caller-supplied DST.
#[pyfunction]
fn hash_to_g1(py: Python<'_>, msg: &[u8], dst: &[u8]) -> PyResult<Py<PyBytes>> {
    let hasher = MapToCurveBasedHasher::<
        G1Projective,
        DefaultFieldHasher<Sha256, 128>,
        WBMap<ark_bls12_381::g1::Config>,
    >::new(dst)
    .map_err(|_| PyValueError::new_err("bad hash-to-curve domain tag"))?;
    let point: G1Affine = hasher
        .hash(msg)
        .map_err(|_| PyValueError::new_err("hash-to-curve failure"))?;
    Ok(encode_g1(py, &point))
}

#[pymodule]
fn _bls12381(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(scalar_order, m)?)?;
    m.add_function(wrap_pyfunction!(g1_generator, m)?)?;
    m.add_function(wrap_pyfunction!(g2_generator, m)?)?;
    m.add_function(wrap_pyfunction!(g1_identity, m)?)?;
    m.add_function(wrap_pyfunction!(g2_identity, m)?)?;
    m.add_function(wrap_pyfunction!(gt_identity, m)?)?;
    m.add_function(wrap_pyfunction!(g1_add, m)?)?;
    m.add_function(wrap_pyfunction!(g2_add, m)?)?;
    m.add_function(wrap_pyfunction!(g1_neg, m)?)?;
    m.add_function(wrap_pyfunction!(g2_neg, m)?)?;
    m.add_function(wrap_pyfunction!(g1_mul, m)?)?;
    m.add_function(wrap_pyfunction!(g2_mul, m)?)?;
    m.add_function(wrap_pyfunction!(pairing, m)?)?;
    m.add_function(wrap_pyfunction!(gt_mul, m)?)?;
    m.add_function(wrap_pyfunction!(gt_exp, m)?)?;
    m.add_function(wrap_pyfunction!(g1_validate, m)?)?;
    m.add_function(wrap_pyfunction!(g2_validate, m)?)?;
    m.add_function(wrap_pyfunction!(gt_validate, m)?)?;
    m.add_function(wrap_pyfunction!(hash_to_g1, m)?)?;
    Ok(())
}
