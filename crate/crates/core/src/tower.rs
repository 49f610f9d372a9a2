//! Tower arithmetic `GF(3^97) ⊂ GF(3^(2·97)) ⊂ GF(3^(6·97))`.
//!
//! * `Fp2 = F97[s] / (s^2 + 1)`, elements `c0 + c1·s`;
//! * `Fp6 = Fp2[r] / (r^3 - r - 1)`, elements `A0 + A1·r + A2·r^2`, or in
//!   flat form `a0 + a1·s + a2·r + a3·rs + a4·r^2 + a5·r^2·s`.
//!
//! Every base-field multiplication performed by the multiplication routines
//! goes through a [`MulCounter`], so the number of `GF(3^97)` products each
//! schedule needs can be asserted exactly.
//!
//! Three Fp6 products are provided besides the schoolbook reference:
//! the Karatsuba baseline ([`fp6_mul_18`], 6 Fp2 products), the five-point
//! evaluation/interpolation method ([`fp6_mul_15`], 5 Fp2 products), and a
//! literal transcription of the closed-form product list
//! ([`fp6_mul_appendix`]) kept as an independent cross-check.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field397::F97Element;
use crate::gf3::Trit;

/// Counts base-field multiplications. One counter belongs to one caller.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MulCounter {
    base_muls: u64,
}

impl MulCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn base_muls(&self) -> u64 {
        self.base_muls
    }

    pub fn reset(&mut self) {
        self.base_muls = 0;
    }

    /// One counted `GF(3^97)` product.
    pub fn mul(&mut self, a: &F97Element, b: &F97Element) -> F97Element {
        self.base_muls += 1;
        a.mul_ref(b)
    }
}

/// A GF(9) scalar `re + im·s`, the constants that appear in the evaluation
/// points and interpolation formulas. Applying one to a field element costs
/// only negations, a component swap and additions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct F9 {
    pub re: Trit,
    pub im: Trit,
}

#[allow(clippy::should_implement_trait)]
impl F9 {
    pub const ZERO: F9 = F9::new(0, 0);
    pub const ONE: F9 = F9::new(1, 0);
    pub const NEG_ONE: F9 = F9::new(-1, 0);
    pub const S: F9 = F9::new(0, 1);
    pub const NEG_S: F9 = F9::new(0, -1);

    pub const fn new(re: i64, im: i64) -> Self {
        F9 {
            re: Trit::from_i64(re),
            im: Trit::from_i64(im),
        }
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(self, rhs: F9) -> F9 {
        F9 {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }

    pub fn neg(self) -> F9 {
        F9 {
            re: -self.re,
            im: -self.im,
        }
    }

    pub fn mul(self, rhs: F9) -> F9 {
        F9 {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }

    /// `self · x` for `x` in Fp2, without base multiplications.
    pub fn apply(self, x: &Fp2Element) -> Fp2Element {
        let mut out = x.scale(self.re);
        if !self.im.is_zero() {
            out += &fp2_mul_by_s(x).scale(self.im);
        }
        out
    }

    /// `self · x` for `x` in the base field.
    pub fn apply_real(self, x: &F97Element) -> Fp2Element {
        Fp2Element::new(x.scale(self.re), x.scale(self.im))
    }
}

impl fmt::Display for F9 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |t: Trit| match t.value() {
            1 => "+",
            _ => "-",
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}1", sign(self.re)),
            (true, false) => write!(f, "{}s", sign(self.im)),
            (false, false) if self.re == self.im => write!(f, "{}(s+1)", sign(self.im)),
            (false, false) => write!(f, "{}(s-1)", sign(self.im)),
        }
    }
}

/// Element `c0 + c1·s` of the quadratic extension, `s^2 = -1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fp2Element {
    pub c0: F97Element,
    pub c1: F97Element,
}

impl Fp2Element {
    pub fn new(c0: F97Element, c1: F97Element) -> Self {
        Fp2Element { c0, c1 }
    }

    pub fn zero() -> Self {
        Self::new(F97Element::zero(), F97Element::zero())
    }

    pub fn one() -> Self {
        Self::new(F97Element::one(), F97Element::zero())
    }

    /// The generator `s`.
    pub fn s() -> Self {
        Self::new(F97Element::zero(), F97Element::one())
    }

    pub fn from_real(c0: F97Element) -> Self {
        Self::new(c0, F97Element::zero())
    }

    pub fn random_from<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(F97Element::random_from(rng), F97Element::random_from(rng))
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.c1.is_zero()
    }

    pub fn scale(&self, k: Trit) -> Self {
        Self::new(self.c0.scale(k), self.c1.scale(k))
    }

    /// The conjugate `c0 - c1·s`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.c0.clone(), -&self.c1)
    }
}

impl Add for &Fp2Element {
    type Output = Fp2Element;
    fn add(self, rhs: &Fp2Element) -> Fp2Element {
        Fp2Element::new(&self.c0 + &rhs.c0, &self.c1 + &rhs.c1)
    }
}

impl Sub for &Fp2Element {
    type Output = Fp2Element;
    fn sub(self, rhs: &Fp2Element) -> Fp2Element {
        Fp2Element::new(&self.c0 - &rhs.c0, &self.c1 - &rhs.c1)
    }
}

impl Neg for &Fp2Element {
    type Output = Fp2Element;
    fn neg(self) -> Fp2Element {
        Fp2Element::new(-&self.c0, -&self.c1)
    }
}

impl AddAssign<&Fp2Element> for Fp2Element {
    fn add_assign(&mut self, rhs: &Fp2Element) {
        self.c0 += &rhs.c0;
        self.c1 += &rhs.c1;
    }
}

impl SubAssign<&Fp2Element> for Fp2Element {
    fn sub_assign(&mut self, rhs: &Fp2Element) {
        self.c0 -= &rhs.c0;
        self.c1 -= &rhs.c1;
    }
}

/// Uncounted convenience product; use [`fp2_mul`] where counts matter.
impl Mul for &Fp2Element {
    type Output = Fp2Element;
    fn mul(self, rhs: &Fp2Element) -> Fp2Element {
        fp2_mul(self, rhs, &mut MulCounter::new())
    }
}

impl fmt::Display for Fp2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.c0, self.c1)
    }
}

/// Karatsuba product with three base multiplications.
pub fn fp2_mul(a: &Fp2Element, b: &Fp2Element, ctr: &mut MulCounter) -> Fp2Element {
    fp2_mul_recorded(a, b, ctr, None)
}

fn fp2_mul_recorded(
    a: &Fp2Element,
    b: &Fp2Element,
    ctr: &mut MulCounter,
    record: Option<&mut Vec<F97Element>>,
) -> Fp2Element {
    let v0 = ctr.mul(&a.c0, &b.c0);
    let v1 = ctr.mul(&a.c1, &b.c1);
    let m = ctr.mul(&(&a.c0 + &a.c1), &(&b.c0 + &b.c1));
    let c0 = &v0 - &v1;
    let c1 = &(&m - &v0) - &v1;
    if let Some(rec) = record {
        rec.extend([v0, v1, m]);
    }
    Fp2Element::new(c0, c1)
}

/// Four-multiplication product, used by the flat reference.
pub fn fp2_mul_schoolbook(a: &Fp2Element, b: &Fp2Element, ctr: &mut MulCounter) -> Fp2Element {
    let c0 = &ctr.mul(&a.c0, &b.c0) - &ctr.mul(&a.c1, &b.c1);
    let c1 = &ctr.mul(&a.c0, &b.c1) + &ctr.mul(&a.c1, &b.c0);
    Fp2Element::new(c0, c1)
}

/// `s·(a0 + a1·s) = -a1 + a0·s`: a swap and a negation.
pub fn fp2_mul_by_s(a: &Fp2Element) -> Fp2Element {
    Fp2Element::new(-&a.c1, a.c0.clone())
}

/// Element `A0 + A1·r + A2·r^2` of the sextic extension, `r^3 = r + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fp6Element {
    pub c: [Fp2Element; 3],
}

impl Fp6Element {
    pub fn new(c0: Fp2Element, c1: Fp2Element, c2: Fp2Element) -> Self {
        Fp6Element { c: [c0, c1, c2] }
    }

    pub fn zero() -> Self {
        Self::new(Fp2Element::zero(), Fp2Element::zero(), Fp2Element::zero())
    }

    pub fn one() -> Self {
        Self::new(Fp2Element::one(), Fp2Element::zero(), Fp2Element::zero())
    }

    /// `r^k` for `k < 3`.
    pub fn r_power(k: usize) -> Self {
        let mut out = Self::zero();
        out.c[k] = Fp2Element::one();
        out
    }

    /// From `[a0, .., a5]` with `a_{2i} = A_i.c0`, `a_{2i+1} = A_i.c1`.
    pub fn from_flat(flat: [F97Element; 6]) -> Self {
        let [a0, a1, a2, a3, a4, a5] = flat;
        Self::new(
            Fp2Element::new(a0, a1),
            Fp2Element::new(a2, a3),
            Fp2Element::new(a4, a5),
        )
    }

    pub fn to_flat(&self) -> [F97Element; 6] {
        let [a, b, c] = &self.c;
        [
            a.c0.clone(),
            a.c1.clone(),
            b.c0.clone(),
            b.c1.clone(),
            c.c0.clone(),
            c.c1.clone(),
        ]
    }

    pub fn random_from<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(
            Fp2Element::random_from(rng),
            Fp2Element::random_from(rng),
            Fp2Element::random_from(rng),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Fp2Element::is_zero)
    }
}

impl Add for &Fp6Element {
    type Output = Fp6Element;
    fn add(self, rhs: &Fp6Element) -> Fp6Element {
        Fp6Element::new(&self.c[0] + &rhs.c[0], &self.c[1] + &rhs.c[1], &self.c[2] + &rhs.c[2])
    }
}

impl Sub for &Fp6Element {
    type Output = Fp6Element;
    fn sub(self, rhs: &Fp6Element) -> Fp6Element {
        Fp6Element::new(&self.c[0] - &rhs.c[0], &self.c[1] - &rhs.c[1], &self.c[2] - &rhs.c[2])
    }
}

impl Neg for &Fp6Element {
    type Output = Fp6Element;
    fn neg(self) -> Fp6Element {
        Fp6Element::new(-&self.c[0], -&self.c[1], -&self.c[2])
    }
}

/// Six canonical base-field strings joined by `:` in the order `a0..a5`.
impl fmt::Display for Fp6Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.c;
        write!(f, "{a}:{b}:{c}")
    }
}

impl FromStr for Fp6Element {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 6 {
            return Err(Error::ComponentCount {
                expected: 6,
                found: parts.len(),
            });
        }
        let mut flat = Vec::with_capacity(6);
        for p in parts {
            flat.push(p.parse::<F97Element>()?);
        }
        let flat: [F97Element; 6] = flat.try_into().expect("six parts");
        Ok(Fp6Element::from_flat(flat))
    }
}

impl FromStr for Fp2Element {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 2 {
            return Err(Error::ComponentCount {
                expected: 2,
                found: parts.len(),
            });
        }
        Ok(Fp2Element::new(parts[0].parse()?, parts[1].parse()?))
    }
}

/// Reduces `c0 + c1 r + c2 r^2 + c3 r^3 + c4 r^4` with `r^3 = r + 1` and
/// `r^4 = r^2 + r`.
pub fn reduce_r(c: &[Fp2Element; 5]) -> Fp6Element {
    let d0 = &c[0] + &c[3];
    let d1 = &(&c[1] + &c[3]) + &c[4];
    let d2 = &c[2] + &c[4];
    Fp6Element::new(d0, d1, d2)
}

fn poly_product(
    a: &Fp6Element,
    b: &Fp6Element,
    mut mul: impl FnMut(&Fp2Element, &Fp2Element) -> Fp2Element,
) -> [Fp2Element; 5] {
    let mut c: [Fp2Element; 5] = std::array::from_fn(|_| Fp2Element::zero());
    for i in 0..3 {
        for j in 0..3 {
            c[i + j] += &mul(&a.c[i], &b.c[j]);
        }
    }
    c
}

/// Schoolbook product over Fp2 with Karatsuba Fp2 products (27 base muls).
pub fn fp6_mul_schoolbook(a: &Fp6Element, b: &Fp6Element, ctr: &mut MulCounter) -> Fp6Element {
    reduce_r(&poly_product(a, b, |x, y| fp2_mul(x, y, ctr)))
}

/// Fully classical product (36 base muls); the reference for every other path.
pub fn fp6_mul_schoolbook_flat(a: &Fp6Element, b: &Fp6Element, ctr: &mut MulCounter) -> Fp6Element {
    reduce_r(&poly_product(a, b, |x, y| fp2_mul_schoolbook(x, y, ctr)))
}

/// Uncounted reference product.
pub fn fp6_mul_reference(a: &Fp6Element, b: &Fp6Element) -> Fp6Element {
    fp6_mul_schoolbook_flat(a, b, &mut MulCounter::new())
}

/// Three-term Karatsuba over `r`: six Fp2 products, 18 base muls.
pub fn fp6_mul_18(a: &Fp6Element, b: &Fp6Element, ctr: &mut MulCounter) -> Fp6Element {
    let [a0, a1, a2] = &a.c;
    let [b0, b1, b2] = &b.c;
    let v0 = fp2_mul(a0, b0, ctr);
    let v1 = fp2_mul(a1, b1, ctr);
    let v2 = fp2_mul(a2, b2, ctr);
    let m01 = fp2_mul(&(a0 + a1), &(b0 + b1), ctr);
    let m02 = fp2_mul(&(a0 + a2), &(b0 + b2), ctr);
    let m12 = fp2_mul(&(a1 + a2), &(b1 + b2), ctr);
    let c1 = &(&m01 - &v0) - &v1;
    let c2 = &(&(&m02 - &v0) - &v2) + &v1;
    let c3 = &(&m12 - &v1) - &v2;
    reduce_r(&[v0, c1, c2, c3, v2])
}

/// Values recorded while computing a product through five Fp2 point products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTrace {
    /// The fifteen recorded products. For [`fp6_mul_15`] these are the base
    /// products (zero `s`-part), three per point; for [`fp6_mul_appendix`]
    /// they are the fifteen listed products, six of them with Fp2 operands.
    pub products: Vec<Fp2Element>,
    /// Point products at `1, s, -1, -s, ∞`.
    pub points: [Fp2Element; 5],
    /// Degree-4 product coefficients before reduction by `r^3 = r + 1`.
    pub coefficients: [Fp2Element; 5],
}

/// `A(1), A(s), A(-1), A(-s)` and the leading coefficient `A(∞) = A2`.
pub fn evaluate_points(a: &[Fp2Element; 3]) -> [Fp2Element; 5] {
    let [a0, a1, a2] = a;
    let sa1 = fp2_mul_by_s(a1);
    let even = a0 + a2;
    let even_s = a0 - a2;
    [&even + a1, &even_s + &sa1, &even - a1, &even_s - &sa1, a2.clone()]
}

/// Recovers `c0..c4` from the five point products. The finite points are
/// the fourth roots of unity, and `4 = 1` in characteristic 3, so each
/// coefficient is a signed sum of the point values.
pub fn interpolate(q: &[Fp2Element; 5]) -> [Fp2Element; 5] {
    let [q1, qs, qm1, qms, qinf] = q;
    let sqs = fp2_mul_by_s(qs);
    let sqms = fp2_mul_by_s(qms);
    let c0 = &(&(&(q1 + qs) + qm1) + qms) - qinf;
    let c1 = &(&(q1 - &sqs) - qm1) + &sqms;
    let c2 = &(&(q1 - qs) + qm1) - qms;
    let c3 = &(&(q1 + &sqs) - qm1) - &sqms;
    [c0, c1, c2, c3, qinf.clone()]
}

/// Five-point evaluation and interpolation: five Fp2 products, 15 base muls.
pub fn fp6_mul_15(a: &Fp6Element, b: &Fp6Element, ctr: &mut MulCounter) -> (Fp6Element, ProductTrace) {
    let ea = evaluate_points(&a.c);
    let eb = evaluate_points(&b.c);
    let mut base = Vec::with_capacity(15);
    let points: [Fp2Element; 5] = std::array::from_fn(|k| fp2_mul_recorded(&ea[k], &eb[k], ctr, Some(&mut base)));
    let coefficients = interpolate(&points);
    let result = reduce_r(&coefficients);
    let trace = ProductTrace {
        products: base.into_iter().map(Fp2Element::from_real).collect(),
        points,
        coefficients,
    };
    (result, trace)
}

const Z: F9 = F9::ZERO;
const P: F9 = F9::ONE;
const M: F9 = F9::NEG_ONE;
const S: F9 = F9::S;
const MS: F9 = F9::NEG_S;
const SP1: F9 = F9::new(1, 1);
const MSP1: F9 = F9::new(-1, -1);
const SM1: F9 = F9::new(-1, 1);
const MSM1: F9 = F9::new(1, -1);

/// Operand of product `P_k` as coefficients of `a0..a5` (the same pattern
/// applies to `b0..b5`).
pub const APPENDIX_OPERANDS: [[F9; 6]; 15] = [
    [P, Z, P, Z, P, Z],
    [P, P, P, P, P, P],
    [Z, P, Z, P, Z, P],
    [P, Z, S, Z, M, Z],
    [P, P, S, S, M, M],
    [Z, P, Z, S, Z, M],
    [P, Z, M, Z, P, Z],
    [P, P, M, M, P, P],
    [Z, P, Z, M, Z, P],
    [P, Z, MS, Z, M, Z],
    [P, P, MS, MS, M, M],
    [Z, P, Z, MS, Z, M],
    [Z, Z, Z, Z, P, Z],
    [Z, Z, Z, Z, P, P],
    [Z, Z, Z, Z, Z, P],
];

/// Coefficients of `P_0..P_14` in each output `c0..c5`.
///
/// Derived by solving the linear system that makes the combination agree
/// with the tower product on every pair of basis inputs; the system has a
/// unique solution. Two entries differ from the commonly reproduced closed
/// form: `P_12` enters `c1` with `+1`, and `P_0` enters `c5` with `-1`.
pub const APPENDIX_OUTPUTS: [[F9; 15]; 6] = [
    [M, Z, P, SP1, Z, MSP1, Z, Z, Z, MSM1, Z, SM1, M, Z, P],
    [P, M, P, MSP1, SP1, MSP1, Z, Z, Z, SM1, MSM1, SM1, P, M, P],
    [M, Z, P, Z, Z, Z, P, Z, M, Z, Z, Z, P, Z, M],
    [P, M, P, Z, Z, Z, M, P, M, Z, Z, Z, M, P, M],
    [P, Z, M, M, Z, P, P, Z, M, M, Z, P, P, Z, M],
    [M, P, M, P, M, P, M, P, M, P, M, P, M, P, M],
];

fn appendix_operand(flat: &[F97Element; 6], pattern: &[F9; 6]) -> Fp2Element {
    let mut out = Fp2Element::zero();
    for (x, k) in flat.iter().zip(pattern) {
        if !k.is_zero() {
            out += &k.apply_real(x);
        }
    }
    out
}

/// The fifteen products `P_0..P_14` of the closed-form list.
pub fn appendix_products(a: &Fp6Element, b: &Fp6Element) -> Vec<Fp2Element> {
    let fa = a.to_flat();
    let fb = b.to_flat();
    let mut ctr = MulCounter::new();
    APPENDIX_OPERANDS
        .iter()
        .map(|pat| fp2_mul(&appendix_operand(&fa, pat), &appendix_operand(&fb, pat), &mut ctr))
        .collect()
}

/// Combines `P_0..P_14` into the flat coefficients `c0..c5` with the given
/// table. Fails if any combination has a nonzero `s`-component.
pub fn appendix_combine(products: &[Fp2Element], table: &[[F9; 15]; 6]) -> Result<[F97Element; 6]> {
    let mut out: Vec<F97Element> = Vec::with_capacity(6);
    for (index, row) in table.iter().enumerate() {
        let mut acc = Fp2Element::zero();
        for (k, p) in row.iter().zip(products) {
            if !k.is_zero() {
                acc += &k.apply(p);
            }
        }
        if !acc.is_real() {
            return Err(Error::FormulaDiscrepancy {
                index,
                residual: acc.c1.to_string(),
            });
        }
        out.push(acc.c0);
    }
    Ok(out.try_into().expect("six rows"))
}

/// Point product at one evaluation point from its three Karatsuba parts.
fn karatsuba_point(p0: &Fp2Element, p1: &Fp2Element, p2: &Fp2Element) -> Fp2Element {
    let re = p0 - p2;
    let im = &(p1 - p0) - p2;
    &re + &fp2_mul_by_s(&im)
}

/// Literal closed-form product: fifteen listed products combined with
/// [`APPENDIX_OUTPUTS`].
pub fn fp6_mul_appendix(a: &Fp6Element, b: &Fp6Element) -> Result<(Fp6Element, ProductTrace)> {
    let products = appendix_products(a, b);
    let flat = appendix_combine(&products, &APPENDIX_OUTPUTS)?;
    let points: [Fp2Element; 5] =
        std::array::from_fn(|k| karatsuba_point(&products[3 * k], &products[3 * k + 1], &products[3 * k + 2]));
    let coefficients = interpolate(&points);
    Ok((
        Fp6Element::from_flat(flat),
        ProductTrace {
            products,
            points,
            coefficients,
        },
    ))
}

/// Checks `P_9 = σ(P_3)`, `P_10 = σ(P_4)`, `P_11 = σ(P_5)` on an appendix
/// trace, where σ negates the `s`-component.
pub fn conjugate_check(trace: &ProductTrace) -> bool {
    trace.products.len() == 15 && (0..3).all(|k| trace.products[9 + k] == trace.products[3 + k].conjugate())
}
