//! Arithmetic in a prime field GF(p) and its quadratic extension GF(p²).
//!
//! The extension is modeled as GF(p)[w]/(w² − r) where r is the smallest
//! quadratic non-residue mod p, so a given block length always derives the
//! same (p, r) pair. Elements are canonical coefficient pairs a + b·w with
//! a, b in [0, p). The base field embeds as the elements with b = 0, and
//! `alpha` (the adjoined root w itself) is the canonical element outside
//! the base field.

use core::fmt;

/// Errors from field construction and element validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldError {
    /// The requested modulus is not prime.
    NotPrime(u64),
    /// p = 2 has no odd-characteristic quadratic extension of this shape.
    EvenCharacteristic,
    /// A coefficient was not a canonical representative in [0, p).
    NonCanonical { value: u32, modulus: u32 },
    /// The stored non-residue does not match the canonical choice for p.
    WrongNonResidue { got: u32, expected: u32 },
    /// Text form did not match `a+b*w`.
    Malformed,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::EvenCharacteristic => {
                write!(f, "p = 2 is rejected: the extension needs an odd prime")
            }
            FieldError::NonCanonical { value, modulus } => {
                write!(f, "coefficient {value} is not reduced mod {modulus}")
            }
            FieldError::WrongNonResidue { got, expected } => {
                write!(f, "non-residue {got} is not the canonical choice {expected}")
            }
            FieldError::Malformed => write!(f, "element text is not of the form a+b*w"),
        }
    }
}

impl core::error::Error for FieldError {}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p with p ≥ n. Trial division; inputs here are O(T).
pub fn smallest_prime_at_least(n: u64) -> u64 {
    let mut p = n.max(2);
    while !is_prime(p) {
        p += 1;
    }
    p
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Smallest quadratic non-residue mod an odd prime p, via Euler's criterion.
pub fn find_nonresidue(p: u32) -> Result<u32, FieldError> {
    if p == 2 {
        return Err(FieldError::EvenCharacteristic);
    }
    if !is_prime(p as u64) {
        return Err(FieldError::NotPrime(p as u64));
    }
    let p64 = p as u64;
    for r in 2..p64 {
        if pow_mod(r, (p64 - 1) / 2, p64) == p64 - 1 {
            return Ok(r as u32);
        }
    }
    // Unreachable: half the nonzero residues of an odd prime are non-squares.
    Err(FieldError::NotPrime(p as u64))
}

/// An element of GF(p), stored as its canonical representative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FieldElem(u32);

impl FieldElem {
    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        Ok(Self { p })
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduce an integer into the field.
    pub fn elem(self, v: u64) -> FieldElem {
        FieldElem((v % self.p as u64) as u32)
    }

    pub fn zero(self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(self) -> FieldElem {
        self.elem(1)
    }

    pub fn add(self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.elem(x.0 as u64 + y.0 as u64)
    }

    pub fn sub(self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.elem(x.0 as u64 + (self.p - y.0) as u64)
    }

    pub fn neg(self, x: FieldElem) -> FieldElem {
        self.elem((self.p - x.0) as u64)
    }

    pub fn mul(self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.elem(x.0 as u64 * y.0 as u64)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, x: FieldElem) -> Option<FieldElem> {
        if x.0 == 0 {
            return None;
        }
        Some(FieldElem(
            pow_mod(x.0 as u64, self.p as u64 - 2, self.p as u64) as u32,
        ))
    }
}

/// An element a + b·w of GF(p²). Coefficients are canonical in [0, p).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExtElem {
    a: u32,
    b: u32,
}

impl ExtElem {
    /// Base coefficient a of a + b·w.
    pub fn base_coeff(self) -> u32 {
        self.a
    }

    /// Extension coefficient b of a + b·w.
    pub fn ext_coeff(self) -> u32 {
        self.b
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Binary form: the two coefficients as little-endian u32s.
    pub fn to_le_bytes(self) -> [u8; 8] {
        let mut out = [0u8; 8];
        out[..4].copy_from_slice(&self.a.to_le_bytes());
        out[4..].copy_from_slice(&self.b.to_le_bytes());
        out
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*w", self.a, self.b)
    }
}

/// GF(p²) = GF(p)[w]/(w² − r), r the smallest non-residue mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadExtField {
    p: u32,
    r: u32,
}

impl QuadExtField {
    /// Build the extension of GF(p) with the canonical non-residue.
    pub fn new(p: u32) -> Result<Self, FieldError> {
        let r = find_nonresidue(p)?;
        Ok(Self { p, r })
    }

    /// Field sized for an (n, k) code: the smallest prime ≥ max(n, 3).
    ///
    /// n ≥ 2 keeps the Cauchy evaluation points distinct and the max(·, 3)
    /// floor keeps the characteristic odd so the extension exists.
    pub fn for_block_length(n: usize) -> Self {
        let p = smallest_prime_at_least((n as u64).max(3)) as u32;
        Self::new(p).expect("smallest prime >= 3 is an odd prime")
    }

    /// Rebuild from stored (p, r), validating both.
    pub fn from_parts(p: u32, r: u32) -> Result<Self, FieldError> {
        let expected = find_nonresidue(p)?;
        if r != expected {
            return Err(FieldError::WrongNonResidue { got: r, expected });
        }
        Ok(Self { p, r })
    }

    pub fn prime(self) -> u32 {
        self.p
    }

    pub fn nonresidue(self) -> u32 {
        self.r
    }

    pub fn order(self) -> u64 {
        self.p as u64 * self.p as u64
    }

    pub fn base_field(self) -> PrimeField {
        PrimeField { p: self.p }
    }

    /// Element a + b·w, reducing both coefficients.
    pub fn elem(self, a: u64, b: u64) -> ExtElem {
        ExtElem {
            a: (a % self.p as u64) as u32,
            b: (b % self.p as u64) as u32,
        }
    }

    /// Element from already-canonical coefficients; rejects out-of-range.
    pub fn checked_elem(self, a: u32, b: u32) -> Result<ExtElem, FieldError> {
        for v in [a, b] {
            if v >= self.p {
                return Err(FieldError::NonCanonical {
                    value: v,
                    modulus: self.p,
                });
            }
        }
        Ok(ExtElem { a, b })
    }

    pub fn zero(self) -> ExtElem {
        ExtElem { a: 0, b: 0 }
    }

    pub fn one(self) -> ExtElem {
        self.elem(1, 0)
    }

    /// The adjoined root w: the canonical element outside the base field.
    pub fn alpha(self) -> ExtElem {
        self.elem(0, 1)
    }

    /// Ring embedding GF(p) → GF(p²), x ↦ x + 0·w.
    pub fn embed(self, x: FieldElem) -> ExtElem {
        ExtElem { a: x.0, b: 0 }
    }

    /// True iff the element lies in the embedded base field (b = 0).
    pub fn is_in_base(self, x: ExtElem) -> bool {
        x.b == 0
    }

    pub fn add(self, x: ExtElem, y: ExtElem) -> ExtElem {
        self.elem(x.a as u64 + y.a as u64, x.b as u64 + y.b as u64)
    }

    pub fn sub(self, x: ExtElem, y: ExtElem) -> ExtElem {
        let p = self.p as u64;
        self.elem(x.a as u64 + p - y.a as u64, x.b as u64 + p - y.b as u64)
    }

    pub fn neg(self, x: ExtElem) -> ExtElem {
        let p = self.p as u64;
        self.elem(p - x.a as u64, p - x.b as u64)
    }

    /// (a + bw)(c + dw) = (ac + bd·r) + (ad + bc)w.
    pub fn mul(self, x: ExtElem, y: ExtElem) -> ExtElem {
        let p = self.p as u64;
        let (a, b) = (x.a as u64, x.b as u64);
        let (c, d) = (y.a as u64, y.b as u64);
        let ac = a * c % p;
        let bdr = b * d % p * self.r as u64 % p;
        self.elem(ac + bdr, a * d % p + b * c % p)
    }

    /// Multiplicative inverse via the norm a² − r·b²; `None` for zero.
    pub fn inv(self, x: ExtElem) -> Option<ExtElem> {
        if x.is_zero() {
            return None;
        }
        let p = self.p as u64;
        let (a, b) = (x.a as u64, x.b as u64);
        // Norm is nonzero for nonzero x: a² = r·b² would make r a square.
        let norm = (a * a % p + (p - self.r as u64) * (b * b % p) % p) % p;
        let ninv = pow_mod(norm, p - 2, p);
        Some(self.elem(a * ninv, (p - b) * ninv))
    }

    pub fn div(self, x: ExtElem, y: ExtElem) -> Option<ExtElem> {
        self.inv(y).map(|yi| self.mul(x, yi))
    }

    pub fn pow(self, x: ExtElem, mut e: u64) -> ExtElem {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All p² elements in a fixed order; intended for exhaustive tests.
    pub fn elements(self) -> impl Iterator<Item = ExtElem> {
        let p = self.p;
        (0..p).flat_map(move |a| (0..p).map(move |b| ExtElem { a, b }))
    }

    /// Parse the text form `a+b*w`.
    pub fn parse_elem(self, s: &str) -> Result<ExtElem, FieldError> {
        let (a_txt, rest) = s.split_once('+').ok_or(FieldError::Malformed)?;
        let b_txt = rest.strip_suffix("*w").ok_or(FieldError::Malformed)?;
        let a: u32 = a_txt.parse().map_err(|_| FieldError::Malformed)?;
        let b: u32 = b_txt.parse().map_err(|_| FieldError::Malformed)?;
        self.checked_elem(a, b)
    }

    /// Inverse of [`ExtElem::to_le_bytes`], validating canonical range.
    pub fn elem_from_le_bytes(self, bytes: [u8; 8]) -> Result<ExtElem, FieldError> {
        let a = u32::from_le_bytes(bytes[..4].try_into().unwrap());
        let b = u32::from_le_bytes(bytes[4..].try_into().unwrap());
        self.checked_elem(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_search() {
        assert_eq!(smallest_prime_at_least(8), 11);
        assert_eq!(smallest_prime_at_least(2), 2);
        assert_eq!(smallest_prime_at_least(14), 17);
        assert_eq!(smallest_prime_at_least(1), 2);
    }

    #[test]
    fn nonresidue_search() {
        assert_eq!(find_nonresidue(11), Ok(2));
        assert_eq!(find_nonresidue(3), Ok(2));
        // squares mod 7 are {1, 2, 4}, so 2 is a residue and 3 is not
        assert_eq!(find_nonresidue(7), Ok(3));
        assert_eq!(find_nonresidue(2), Err(FieldError::EvenCharacteristic));
        assert_eq!(find_nonresidue(9), Err(FieldError::NotPrime(9)));
    }

    #[test]
    fn identity_and_root() {
        let f = QuadExtField::new(11).unwrap();
        let x = f.elem(7, 3);
        assert_eq!(f.mul(f.one(), x), x);
        // w² = r
        assert_eq!(f.mul(f.alpha(), f.alpha()), f.elem(f.nonresidue() as u64, 0));
    }

    #[test]
    fn exhaustive_inverses_gf121() {
        let f = QuadExtField::new(11).unwrap();
        let mut nonzero = 0;
        for x in f.elements() {
            match f.inv(x) {
                None => assert!(x.is_zero()),
                Some(xi) => {
                    nonzero += 1;
                    assert_eq!(f.mul(x, xi), f.one());
                }
            }
        }
        assert_eq!(nonzero, 120);
    }

    #[test]
    fn embedding_is_ring_homomorphism() {
        let f = QuadExtField::new(11).unwrap();
        let base = f.base_field();
        assert_eq!(f.embed(base.zero()), f.zero());
        assert!(!f.is_in_base(f.alpha()));
        for a in 0..11u64 {
            for b in 0..11u64 {
                let (x, y) = (base.elem(a), base.elem(b));
                assert_eq!(
                    f.mul(f.embed(x), f.embed(y)),
                    f.embed(base.mul(x, y))
                );
                assert_eq!(
                    f.add(f.embed(x), f.embed(y)),
                    f.embed(base.add(x, y))
                );
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_base_field() {
        for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let f = QuadExtField::new(p).unwrap();
            for x in f.elements() {
                let fixed = f.pow(x, p as u64) == x;
                assert_eq!(fixed, f.is_in_base(x), "p={p} x={x}");
            }
        }
    }

    #[test]
    fn deterministic_field_choice() {
        let f1 = QuadExtField::for_block_length(8);
        let f2 = QuadExtField::for_block_length(8);
        assert_eq!((f1.prime(), f1.nonresidue()), (f2.prime(), f2.nonresidue()));
        assert_eq!((f1.prime(), f1.nonresidue()), (11, 2));
        // smallest admissible parameters give n = 2; p must skip 2
        let f = QuadExtField::for_block_length(2);
        assert_eq!(f.prime(), 3);
    }

    #[test]
    fn text_and_binary_forms_round_trip() {
        let f = QuadExtField::new(11).unwrap();
        for x in f.elements() {
            let s = alloc::format!("{x}");
            assert_eq!(f.parse_elem(&s).unwrap(), x);
            assert_eq!(f.elem_from_le_bytes(x.to_le_bytes()).unwrap(), x);
        }
        assert_eq!(f.parse_elem("3+1"), Err(FieldError::Malformed));
        assert_eq!(
            f.parse_elem("11+0*w"),
            Err(FieldError::NonCanonical { value: 11, modulus: 11 })
        );
    }
}
