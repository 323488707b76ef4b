//! Lossless packing of byte streams into base-field symbols.
//!
//! The field is not byte-aligned (p is a small odd prime), so each byte is
//! spelled in base p using the smallest digit count L with p^L ≥ 256. The
//! stream starts with the payload length as eight length-prefix bytes, which
//! makes the trailing zero padding (added to fill whole messages)
//! unambiguous on the way back.

use windfec_core::gf::{ExtElem, QuadExtField};

use crate::FormatError;

/// Base-p digits per byte: smallest L with p^L ≥ 256.
pub fn limbs_per_byte(p: u32) -> usize {
    let mut l = 1;
    let mut cap = p as u64;
    while cap < 256 {
        cap *= p as u64;
        l += 1;
    }
    l
}

fn push_byte(out: &mut Vec<ExtElem>, field: QuadExtField, limbs: usize, byte: u8) {
    let p = field.prime() as u64;
    let mut v = byte as u64;
    let mut digits = vec![0u64; limbs];
    for d in digits.iter_mut().rev() {
        *d = v % p;
        v /= p;
    }
    out.extend(digits.into_iter().map(|d| field.elem(d, 0)));
}

/// Bytes → symbols: an 8-byte big-endian length prefix, then the payload,
/// each byte as `limbs_per_byte` base-field symbols.
pub fn pack_bytes(data: &[u8], field: QuadExtField) -> Vec<ExtElem> {
    let limbs = limbs_per_byte(field.prime());
    let mut out = Vec::with_capacity((data.len() + 8) * limbs);
    for b in (data.len() as u64).to_be_bytes() {
        push_byte(&mut out, field, limbs, b);
    }
    for &b in data {
        push_byte(&mut out, field, limbs, b);
    }
    out
}

fn take_byte(symbols: &[ExtElem], field: QuadExtField, limbs: usize, idx: usize) -> Result<u8, FormatError> {
    let p = field.prime() as u64;
    let chunk = &symbols[idx * limbs..(idx + 1) * limbs];
    let mut v: u64 = 0;
    for (i, s) in chunk.iter().enumerate() {
        if s.ext_coeff() != 0 {
            return Err(FormatError::new(
                (idx * limbs + i) as u64,
                "packed symbols must lie in the base field",
            ));
        }
        v = v * p + s.base_coeff() as u64;
    }
    u8::try_from(v).map_err(|_| {
        FormatError::new(idx as u64 * limbs as u64, format!("digit group decodes to {v} > 255"))
    })
}

/// Symbols → bytes, tolerating trailing zero padding after the declared
/// length. Offsets in errors index symbols, not file bytes.
pub fn unpack_bytes(symbols: &[ExtElem], field: QuadExtField) -> Result<Vec<u8>, FormatError> {
    let limbs = limbs_per_byte(field.prime());
    let have = symbols.len() / limbs;
    if have < 8 {
        return Err(FormatError::new(0, "missing length prefix"));
    }
    let mut len_bytes = [0u8; 8];
    for (i, b) in len_bytes.iter_mut().enumerate() {
        *b = take_byte(symbols, field, limbs, i)?;
    }
    let len = u64::from_be_bytes(len_bytes) as usize;
    if have < 8 + len {
        return Err(FormatError::new(
            symbols.len() as u64,
            format!("stream holds {} payload bytes, header claims {len}", have - 8),
        ));
    }
    let mut out = Vec::with_capacity(len);
    for i in 8..8 + len {
        out.push(take_byte(symbols, field, limbs, i)?);
    }
    Ok(out)
}
