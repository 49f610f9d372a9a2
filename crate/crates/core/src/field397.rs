//! The field GF(3^97) = GF(3)[x] / (x^97 + x^16 + 2) in polynomial basis.
//!
//! Reduction rewrites `x^97 = 2x^16 + 1`, the same two feedback taps the
//! LFSR multiplier uses.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf3::{Trit, TritVector};
use crate::polymul::{schoolbook_vec, Poly};

/// Extension degree.
pub const DEGREE: usize = 97;
/// Exponent of the middle term of the modulus.
pub const TAP: usize = 16;
/// Longest input accepted by [`reduce`]: the product of two degree-96 operands.
pub const MAX_UNREDUCED: usize = 2 * DEGREE - 1;

/// Element of GF(3^97), stored as exactly 97 coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F97Element {
    coeffs: TritVector,
}

impl F97Element {
    pub fn zero() -> Self {
        F97Element {
            coeffs: TritVector::zeros(DEGREE),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `x^k` for `k < 97`.
    pub fn monomial(k: usize) -> Self {
        F97Element {
            coeffs: TritVector::monomial(DEGREE, k, Trit::ONE),
        }
    }

    pub fn from_trit(t: Trit) -> Self {
        F97Element {
            coeffs: TritVector::monomial(DEGREE, 0, t),
        }
    }

    pub fn from_coeffs(coeffs: TritVector) -> Result<Self> {
        if coeffs.len() != DEGREE {
            return Err(Error::WrongLength {
                expected: DEGREE,
                found: coeffs.len(),
            });
        }
        Ok(F97Element { coeffs })
    }

    pub fn random(seed: u64) -> Self {
        F97Element {
            coeffs: TritVector::random(DEGREE, seed),
        }
    }

    pub fn random_from<R: Rng + ?Sized>(rng: &mut R) -> Self {
        F97Element {
            coeffs: TritVector::random_from(DEGREE, rng),
        }
    }

    pub fn coeffs(&self) -> &TritVector {
        &self.coeffs
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn scale(&self, k: Trit) -> Self {
        F97Element {
            coeffs: self.coeffs.scale(k),
        }
    }

    /// Reference product: schoolbook multiplication followed by [`reduce`].
    pub fn mul_ref(&self, rhs: &F97Element) -> F97Element {
        reduce_vec(schoolbook_vec(&self.coeffs, &rhs.coeffs))
    }
}

/// `p mod (x^97 + x^16 + 2)` for `p` of at most 193 coefficients.
pub fn reduce(p: &Poly) -> Result<F97Element> {
    if p.len() > MAX_UNREDUCED {
        return Err(Error::TooLong {
            len: p.len(),
            max: MAX_UNREDUCED,
        });
    }
    Ok(reduce_vec(p.coeffs().clone()))
}

/// Folds everything at or above `x^97` back down with `x^97 = 2x^16 + 1`.
/// Two folds suffice for inputs up to degree 192.
pub(crate) fn reduce_vec(mut v: TritVector) -> F97Element {
    while v.len() > DEGREE {
        let high = v.slice(DEGREE, v.len() - DEGREE);
        let mut low = v.resized(DEGREE).resized(DEGREE.max(high.len() + TAP));
        low.accumulate_at(&high, 0, Trit::ONE);
        low.accumulate_at(&high, TAP, Trit::TWO);
        v = low;
    }
    F97Element {
        coeffs: v.resized(DEGREE),
    }
}

pub fn mul(a: &F97Element, b: &F97Element) -> F97Element {
    a.mul_ref(b)
}

impl Add for &F97Element {
    type Output = F97Element;
    fn add(self, rhs: &F97Element) -> F97Element {
        let mut coeffs = self.coeffs.clone();
        coeffs.add_assign_unchecked(&rhs.coeffs);
        F97Element { coeffs }
    }
}

impl Sub for &F97Element {
    type Output = F97Element;
    fn sub(self, rhs: &F97Element) -> F97Element {
        let mut coeffs = self.coeffs.clone();
        coeffs.accumulate(&rhs.coeffs, Trit::TWO);
        F97Element { coeffs }
    }
}

impl Mul for &F97Element {
    type Output = F97Element;
    fn mul(self, rhs: &F97Element) -> F97Element {
        self.mul_ref(rhs)
    }
}

impl Neg for &F97Element {
    type Output = F97Element;
    fn neg(self) -> F97Element {
        F97Element {
            coeffs: self.coeffs.neg(),
        }
    }
}

impl Add for F97Element {
    type Output = F97Element;
    fn add(mut self, rhs: F97Element) -> F97Element {
        self += &rhs;
        self
    }
}

impl Sub for F97Element {
    type Output = F97Element;
    fn sub(mut self, rhs: F97Element) -> F97Element {
        self -= &rhs;
        self
    }
}

impl Mul for F97Element {
    type Output = F97Element;
    fn mul(self, rhs: F97Element) -> F97Element {
        self.mul_ref(&rhs)
    }
}

impl Neg for F97Element {
    type Output = F97Element;
    fn neg(self) -> F97Element {
        -&self
    }
}

impl AddAssign<&F97Element> for F97Element {
    fn add_assign(&mut self, rhs: &F97Element) {
        self.coeffs.add_assign_unchecked(&rhs.coeffs);
    }
}

impl SubAssign<&F97Element> for F97Element {
    fn sub_assign(&mut self, rhs: &F97Element) {
        self.coeffs.accumulate(&rhs.coeffs, Trit::TWO);
    }
}

impl fmt::Debug for F97Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F97({})", self.coeffs)
    }
}

/// 97 ternary digits, most significant first.
impl fmt::Display for F97Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.coeffs, f)
    }
}

impl FromStr for F97Element {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        F97Element::from_coeffs(s.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Long division by x^97 + x^16 + 2 on plain integer coefficients.
    fn long_division(mut c: Vec<i64>) -> Vec<u8> {
        let mut modulus = vec![0i64; DEGREE + 1];
        modulus[0] = 2;
        modulus[TAP] = 1;
        modulus[DEGREE] = 1;
        for top in (DEGREE..c.len()).rev() {
            let q = c[top].rem_euclid(3);
            for (k, m) in modulus.iter().enumerate() {
                c[top - DEGREE + k] -= q * m;
            }
            assert_eq!(c[top].rem_euclid(3), 0);
        }
        c.resize(DEGREE, 0);
        c.into_iter().map(|x| x.rem_euclid(3) as u8).collect()
    }

    fn monomial_poly(k: usize) -> Poly {
        Poly::monomial(k + 1, k)
    }

    #[test]
    fn x97_reduces_to_taps() {
        let r = reduce(&monomial_poly(97)).unwrap();
        let mut expect = vec![0u8; DEGREE];
        expect[0] = 1;
        expect[16] = 2;
        assert_eq!(r.coeffs().to_values(), expect);
        let mut c = vec![0; 98];
        c[97] = 1;
        assert_eq!(long_division(c), expect);
    }

    #[test]
    fn x112_reduces() {
        let r = reduce(&monomial_poly(112)).unwrap();
        let mut expect = vec![0u8; DEGREE];
        expect[15] = 1;
        expect[31] = 2;
        assert_eq!(r.coeffs().to_values(), expect);
    }

    #[test]
    fn reduce_matches_long_division() {
        for seed in 0..200 {
            let len = 1 + (seed as usize * 37) % MAX_UNREDUCED;
            let p = Poly::random(len, seed);
            let c: Vec<i64> = p.coeffs().iter().map(|t| t.value() as i64).collect();
            assert_eq!(reduce(&p).unwrap().coeffs().to_values(), long_division(c), "len {len}");
        }
    }

    #[test]
    fn short_inputs_unchanged() {
        let p = Poly::random(97, 3);
        assert_eq!(reduce(&p).unwrap().coeffs(), p.coeffs());
        let q = Poly::random(40, 4);
        assert_eq!(reduce(&q).unwrap().coeffs(), &q.coeffs().resized(97));
    }

    #[test]
    fn too_long_is_rejected() {
        assert_eq!(reduce(&Poly::zero(194)), Err(Error::TooLong { len: 194, max: 193 }));
        assert!(reduce(&Poly::zero(193)).is_ok());
    }

    #[test]
    fn mul_examples() {
        let a = F97Element::random(1);
        assert_eq!(&a * &F97Element::one(), a);
        assert!((&a * &F97Element::zero()).is_zero());
        let r = &F97Element::monomial(96) * &F97Element::monomial(1);
        assert_eq!(r, reduce(&monomial_poly(97)).unwrap());
    }

    #[test]
    fn additive_examples() {
        let a = F97Element::random(2);
        assert!((&a + &-&a).is_zero());
        assert_eq!(&a + &F97Element::zero(), a);
        assert_eq!(-(-a.clone()), a);
        let b = F97Element::random(3);
        assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn text_form() {
        let one = F97Element::one();
        let s = one.to_string();
        assert_eq!(s.len(), 97);
        assert!(s.ends_with('1') && s[..96].chars().all(|c| c == '0'));
        assert_eq!(s.parse::<F97Element>().unwrap(), one);
        assert_eq!(
            "012".parse::<F97Element>(),
            Err(Error::WrongLength { expected: 97, found: 3 })
        );
    }
}
