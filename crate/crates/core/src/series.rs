//! Truncated formal power series in one variable `q`.
//!
//! A [`Series`] stores the coefficients `c_0..=c_N` of `q^0..=q^N` over either
//! the integers or a residue ring `Z/M`. Exact arithmetic is fixed-width
//! (`i128`) with checked operations, so growth past the capacity surfaces as
//! [`Error::IntegerOverflow`] instead of wrapping. Residues are always kept in
//! `[0, M)` which makes equality of two series a plain vector comparison.
//!
//! Binary operations require both operands to live in the same [`Ring`] and
//! produce a result truncated to the smaller of the two truncations.

use std::fmt;

use crate::error::{Error, Result};
use crate::lab::numtheory::mod_inverse;

/// Largest residue modulus accepted; keeps every product of two residues
/// inside `i128`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Moduli below this bound have residue products under 2^62, so a full
/// convolution row can be accumulated in `i128` and reduced once.
const LAZY_REDUCTION_BOUND: u64 = 1 << 31;

/// Coefficient ring of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Residues(u64),
}

impl Ring {
    /// `0` selects exact integers, anything in `2..=2^62` a residue ring.
    pub fn from_modulus(modulus: u64) -> Result<Ring> {
        match modulus {
            0 => Ok(Ring::Integers),
            1 => Err(Error::InvalidModulus(1)),
            m if m > MAX_MODULUS => Err(Error::InvalidModulus(m)),
            m => Ok(Ring::Residues(m)),
        }
    }

    /// The modulus, with `0` standing for the integers.
    pub fn modulus(self) -> u64 {
        match self {
            Ring::Integers => 0,
            Ring::Residues(m) => m,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Ring::Integers)
    }

    /// Canonical representative of `value`.
    #[inline]
    pub fn normalize(self, value: i128) -> i128 {
        match self {
            Ring::Integers => value,
            Ring::Residues(m) => value.rem_euclid(m as i128),
        }
    }

    fn is_unit(self, value: i128) -> bool {
        match self {
            Ring::Integers => value == 1 || value == -1,
            Ring::Residues(m) => gcd(value.rem_euclid(m as i128) as u128, m as u128) == 1,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Residues(m) => write!(f, "Z/{m}"),
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A power series truncated after `q^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    ring: Ring,
    coeffs: Vec<i128>,
}

impl Series {
    /// Builds a series from raw coefficients, normalizing residues.
    ///
    /// # Panics
    ///
    /// Panics if `coeffs` is empty: every series carries at least `c_0`.
    pub fn from_coeffs(ring: Ring, mut coeffs: Vec<i128>) -> Series {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        if let Ring::Residues(_) = ring {
            for c in coeffs.iter_mut() {
                *c = ring.normalize(*c);
            }
        }
        Series { ring, coeffs }
    }

    pub fn zero(ring: Ring, truncation: usize) -> Series {
        Series { ring, coeffs: vec![0; truncation + 1] }
    }

    pub fn one(ring: Ring, truncation: usize) -> Series {
        Series::monomial(ring, 0, 1, truncation)
    }

    /// `coeff * q^exponent`, or zero when the exponent is past the truncation.
    pub fn monomial(ring: Ring, exponent: usize, coeff: i128, truncation: usize) -> Series {
        let mut s = Series::zero(ring, truncation);
        if exponent <= truncation {
            s.coeffs[exponent] = ring.normalize(coeff);
        }
        s
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i128> {
        self.coeffs
    }

    /// Coefficient of `q^n`; `None` past the truncation.
    pub fn coeff(&self, n: usize) -> Option<i128> {
        self.coeffs.get(n).copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Restriction to a smaller truncation (no-op if `n` is not smaller).
    pub fn truncate(&self, n: usize) -> Series {
        let len = (n + 1).min(self.coeffs.len());
        Series { ring: self.ring, coeffs: self.coeffs[..len].to_vec() }
    }

    fn check_ring(&self, other: &Series) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ModulusMismatch { left: self.ring, right: other.ring });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.zip_with(other, i128::checked_add)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.zip_with(other, i128::checked_sub)
    }

    fn zip_with(&self, other: &Series, op: fn(i128, i128) -> Option<i128>) -> Result<Series> {
        self.check_ring(other)?;
        let n = self.truncation().min(other.truncation());
        let coeffs = (0..=n)
            .map(|i| {
                op(self.coeffs[i], other.coeffs[i])
                    .map(|c| self.ring.normalize(c))
                    .ok_or(Error::IntegerOverflow { index: i })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Series { ring: self.ring, coeffs })
    }

    pub fn neg(&self) -> Result<Series> {
        self.scale(-1)
    }

    pub fn scale(&self, factor: i128) -> Result<Series> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                c.checked_mul(factor)
                    .map(|v| self.ring.normalize(v))
                    .ok_or(Error::IntegerOverflow { index: i })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Series { ring: self.ring, coeffs })
    }

    /// Multiplication by `q^k`, keeping the truncation.
    pub fn shift(&self, k: usize) -> Series {
        let mut out = Series::zero(self.ring, self.truncation());
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i + k > out.truncation() {
                break;
            }
            out.coeffs[i + k] = c;
        }
        out
    }

    /// The substitution `q -> q^k` truncated at `truncation`.
    pub fn dilate(&self, k: usize, truncation: usize) -> Series {
        assert!(k >= 1, "dilation factor must be positive");
        let mut out = Series::zero(self.ring, truncation);
        for (i, &c) in self.coeffs.iter().enumerate() {
            let Some(e) = i.checked_mul(k).filter(|&e| e <= truncation) else { break };
            out.coeffs[e] = c;
        }
        out
    }

    /// Cauchy product truncated at the smaller truncation.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let n = self.truncation().min(other.truncation());
        // Iterate over the sparser operand's support.
        let (sparse, dense) =
            if self.support_len(n) <= other.support_len(n) { (self, other) } else { (other, self) };
        let support: Vec<(usize, i128)> =
            sparse.coeffs[..=n].iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        let dense = &dense.coeffs[..=n];
        let mut out = vec![0i128; n + 1];
        match self.ring {
            Ring::Integers => {
                for (k, slot) in out.iter_mut().enumerate() {
                    let mut acc: i128 = 0;
                    for &(i, a) in &support {
                        if i > k {
                            break;
                        }
                        acc = a
                            .checked_mul(dense[k - i])
                            .and_then(|p| acc.checked_add(p))
                            .ok_or(Error::IntegerOverflow { index: k })?;
                    }
                    *slot = acc;
                }
            }
            Ring::Residues(m) if m < LAZY_REDUCTION_BOUND => {
                let m = m as i128;
                for (k, slot) in out.iter_mut().enumerate() {
                    let mut acc: i128 = 0;
                    for &(i, a) in &support {
                        if i > k {
                            break;
                        }
                        acc += a * dense[k - i];
                    }
                    *slot = acc % m;
                }
            }
            Ring::Residues(m) => {
                let m = m as i128;
                for (k, slot) in out.iter_mut().enumerate() {
                    let mut acc: i128 = 0;
                    for &(i, a) in &support {
                        if i > k {
                            break;
                        }
                        acc = (acc + a * dense[k - i]) % m;
                    }
                    *slot = acc;
                }
            }
        }
        Ok(Series { ring: self.ring, coeffs: out })
    }

    fn support_len(&self, n: usize) -> usize {
        self.coeffs[..=n].iter().filter(|&&c| c != 0).count()
    }

    /// Multiplicative inverse up to the truncation.
    pub fn invert(&self) -> Result<Series> {
        let c0 = self.coeffs[0];
        if !self.ring.is_unit(c0) {
            return Err(Error::NonUnitConstantTerm { value: c0, ring: self.ring });
        }
        let inv0 = match self.ring {
            Ring::Integers => c0,
            Ring::Residues(m) => mod_inverse(c0, m)? as i128,
        };
        let n = self.truncation();
        let support: Vec<(usize, i128)> =
            self.coeffs[1..].iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i + 1, c)).collect();
        let mut out = vec![0i128; n + 1];
        out[0] = inv0;
        for k in 1..=n {
            let mut acc: i128 = 0;
            for &(i, c) in &support {
                if i > k {
                    break;
                }
                acc = match self.ring {
                    Ring::Integers => c
                        .checked_mul(out[k - i])
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::IntegerOverflow { index: k })?,
                    Ring::Residues(m) => (acc + c * out[k - i]) % m as i128,
                };
            }
            out[k] = match self.ring {
                Ring::Integers => acc.checked_mul(-inv0).ok_or(Error::IntegerOverflow { index: k })?,
                Ring::Residues(m) => {
                    let m = m as i128;
                    ((m - acc % m) % m * inv0) % m
                }
            };
        }
        Ok(Series { ring: self.ring, coeffs: out })
    }

    /// `self^k` by repeated squaring; `k = 0` gives one.
    pub fn pow(&self, k: u32) -> Result<Series> {
        let mut result = Series::one(self.ring, self.truncation());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// The series `sum_n c_{A n + B} q^n` over all `A n + B <= N`.
    ///
    /// An offset past the truncation yields the single coefficient `0`.
    pub fn extract_progression(&self, step: usize, offset: usize) -> Series {
        assert!(step >= 1, "progression step must be positive");
        let n = self.truncation();
        if offset > n {
            return Series::zero(self.ring, 0);
        }
        let coeffs = self.coeffs[offset..].iter().step_by(step).copied().collect();
        Series { ring: self.ring, coeffs }
    }

    /// Reduction into `Z/M`. Reducing a residue series requires `M` to
    /// divide the current modulus.
    pub fn reduce_mod(&self, modulus: u64) -> Result<Series> {
        let target = Ring::from_modulus(modulus)?;
        if let Ring::Residues(current) = self.ring {
            if target == Ring::Integers || current % modulus != 0 {
                return Err(Error::ModulusMismatch { left: self.ring, right: target });
            }
        }
        Ok(Series::from_coeffs(target, self.coeffs.clone()))
    }

    /// First index `n <= upto` where the two series differ modulo `M`,
    /// returned with both canonical residues.
    pub fn first_mismatch_mod(
        &self,
        other: &Series,
        modulus: u64,
        upto: usize,
    ) -> Option<(usize, i128, i128)> {
        assert!(
            upto <= self.truncation() && upto <= other.truncation(),
            "comparison range exceeds a truncation"
        );
        let m = modulus as i128;
        (0..=upto).find_map(|n| {
            let (x, y) = (self.coeffs[n].rem_euclid(m), other.coeffs[n].rem_euclid(m));
            (x != y).then_some((n, x, y))
        })
    }
}

/// True iff `a` and `b` agree modulo `M` on `q^0..=q^upto`.
pub fn series_congruent(a: &Series, b: &Series, modulus: u64, upto: usize) -> bool {
    a.first_mismatch_mod(b, modulus, upto).is_none()
}

/// The truncated product `(q^a; q^m)_inf = prod_{i >= 0} (1 - q^{a + i m})`.
pub fn pochhammer(a: usize, m: usize, ring: Ring, truncation: usize) -> Result<Series> {
    assert!(a >= 1 && m >= 1, "pochhammer needs a >= 1 and m >= 1");
    let mut coeffs = vec![0i128; truncation + 1];
    coeffs[0] = 1;
    let mut e = a;
    while e <= truncation {
        for n in (e..=truncation).rev() {
            coeffs[n] = match ring {
                Ring::Integers => {
                    coeffs[n].checked_sub(coeffs[n - e]).ok_or(Error::IntegerOverflow { index: n })?
                }
                Ring::Residues(_) => ring.normalize(coeffs[n] - coeffs[n - e]),
            };
        }
        e += m;
    }
    Ok(Series { ring, coeffs })
}

/// `f_k = (q^k; q^k)_inf`.
pub fn euler_product(k: usize, ring: Ring, truncation: usize) -> Result<Series> {
    pochhammer(k, k, ring, truncation)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i128]) -> Series {
        Series::from_coeffs(Ring::Integers, c.to_vec())
    }

    #[test]
    fn one_has_unit_constant_term() {
        assert_eq!(Series::one(Ring::Integers, 3).coeffs(), &[1, 0, 0, 0]);
        assert_eq!(Series::one(Ring::Residues(2), 0).coeffs(), &[1]);
        assert_eq!(Series::one(Ring::Residues(5), 2).coeffs(), &[1, 0, 0]);
    }

    #[test]
    fn difference_of_squares() {
        let p = z(&[1, -1, 0]).mul(&z(&[1, 1, 0])).unwrap();
        assert_eq!(p.coeffs(), &[1, 0, -1]);
    }

    #[test]
    fn f1_squared() {
        let f1 = euler_product(1, Ring::Integers, 7).unwrap();
        assert_eq!(f1.mul(&f1).unwrap().coeffs(), &[1, -2, -1, 2, 1, 2, -2, 0]);
    }

    #[test]
    fn f1_times_its_inverse_is_one() {
        let f1 = euler_product(1, Ring::Integers, 10).unwrap();
        let prod = f1.mul(&f1.invert().unwrap()).unwrap();
        assert_eq!(prod, Series::one(Ring::Integers, 10));
    }

    #[test]
    fn inverse_of_f1_gives_partition_numbers() {
        let p = euler_product(1, Ring::Integers, 9).unwrap().invert().unwrap();
        assert_eq!(p.coeffs(), &[1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn geometric_series() {
        assert_eq!(z(&[1, -1, 0, 0, 0]).invert().unwrap().coeffs(), &[1, 1, 1, 1, 1]);
        let one = Series::one(Ring::Integers, 4);
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn non_unit_constant_term_is_rejected() {
        assert!(matches!(z(&[2, 1]).invert(), Err(Error::NonUnitConstantTerm { .. })));
        let s = Series::from_coeffs(Ring::Residues(6), vec![3, 1]);
        assert!(matches!(s.invert(), Err(Error::NonUnitConstantTerm { .. })));
        // 5 is a unit mod 6.
        let s = Series::from_coeffs(Ring::Residues(6), vec![5, 1, 0]);
        let prod = s.mul(&s.invert().unwrap()).unwrap();
        assert_eq!(prod, Series::one(Ring::Residues(6), 2));
    }

    #[test]
    fn pochhammer_examples() {
        let f1 = pochhammer(1, 1, Ring::Integers, 7).unwrap();
        assert_eq!(f1.coeffs(), &[1, -1, -1, 0, 0, 1, 0, 1]);
        assert_eq!(pochhammer(4, 4, Ring::Integers, 3).unwrap().coeffs(), &[1, 0, 0, 0]);
        assert_eq!(pochhammer(3, 4, Ring::Integers, 8).unwrap().coeffs(), &[1, 0, 0, -1, 0, 0, 0, -1, 0]);
    }

    #[test]
    fn powers_of_f1() {
        let f1 = euler_product(1, Ring::Integers, 7).unwrap();
        assert_eq!(f1.pow(5).unwrap().coeffs(), &[1, -5, 5, 10, -15, -6, -5, 25]);
        let f1 = euler_product(1, Ring::Residues(2), 7).unwrap();
        assert_eq!(f1.pow(5).unwrap().coeffs(), &[1, 1, 1, 0, 1, 0, 1, 1]);
        assert_eq!(f1.pow(0).unwrap(), Series::one(Ring::Residues(2), 7));
    }

    #[test]
    fn progression_extraction() {
        let f1 = euler_product(1, Ring::Integers, 12).unwrap();
        assert_eq!(f1.extract_progression(2, 0).coeffs(), &[1, -1, 0, 0, 0, 0, -1]);
        assert_eq!(f1.extract_progression(1, 0), f1);
        assert!(Series::one(Ring::Integers, 12).extract_progression(3, 1).is_zero());
        assert_eq!(f1.extract_progression(5, 12).truncation(), 0);
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let a = Series::one(Ring::Integers, 3);
        let b = Series::one(Ring::Residues(2), 3);
        assert!(matches!(a.mul(&b), Err(Error::ModulusMismatch { .. })));
        assert!(matches!(a.add(&b), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn exact_overflow_is_reported() {
        let big = z(&[1, i128::MAX / 2, 0]);
        assert!(matches!(big.mul(&big), Err(Error::IntegerOverflow { index: 2 })));
        // Partition numbers outgrow i128 well before n = 2000.
        let f1 = euler_product(1, Ring::Integers, 2000).unwrap();
        assert!(matches!(f1.invert(), Err(Error::IntegerOverflow { .. })));
    }

    #[test]
    fn lemma_examples() {
        let f1 = euler_product(1, Ring::Integers, 200).unwrap();
        let f2 = euler_product(2, Ring::Integers, 200).unwrap();
        let f3 = euler_product(3, Ring::Integers, 200).unwrap();
        assert!(series_congruent(&f2, &f1.pow(2).unwrap(), 2, 200));
        assert!(series_congruent(&f3, &f1.pow(3).unwrap(), 3, 200));
        let cube = f1.pow(3).unwrap();
        assert_eq!(f3.first_mismatch_mod(&cube, 2, 10), Some((1, 0, 1)));
    }

    #[test]
    fn reduce_mod_rules() {
        let s = z(&[-1, 7, 12]);
        assert_eq!(s.reduce_mod(5).unwrap().coeffs(), &[4, 2, 2]);
        let r6 = s.reduce_mod(6).unwrap();
        assert_eq!(r6.reduce_mod(3).unwrap().coeffs(), &[2, 1, 0]);
        assert!(r6.reduce_mod(4).is_err());
        assert!(s.reduce_mod(1).is_err());
    }

    #[test]
    fn large_modulus_path() {
        let m = (1u64 << 61) - 1;
        let f1 = euler_product(1, Ring::Residues(m), 50).unwrap();
        let exact = euler_product(1, Ring::Integers, 50).unwrap();
        let lhs = f1.pow(3).unwrap().mul(&f1.invert().unwrap()).unwrap();
        let rhs = exact.pow(2).unwrap().reduce_mod(m).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dilate_and_shift() {
        let s = z(&[1, 2, 3]);
        assert_eq!(s.dilate(2, 5).coeffs(), &[1, 0, 2, 0, 3, 0]);
        assert_eq!(s.shift(1).coeffs(), &[0, 1, 2]);
    }
}
