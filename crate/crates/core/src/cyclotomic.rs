//! Exact arithmetic in the cyclotomic field `Q(ζ_n)`.
//!
//! Elements are stored on the power basis `1, ζ, …, ζ^{φ(n)-1}` and are kept
//! fully reduced modulo the `n`-th cyclotomic polynomial `Φ_n`, so equality is
//! structural. The field data for each order (the modulus and a table of the
//! reduced powers `ζ^k`) is built once and shared between elements.
//!
//! ```
//! use psc_moduli::cyclotomic::{root_of_unity, CyclotomicElement};
//!
//! let z = root_of_unity(6, 1);
//! // ζ_6² = ζ_6 - 1
//! assert_eq!(&z * &z, &z - &CyclotomicElement::one(6));
//! ```

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{self, ExactRational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CyclotomicError {
    #[error(
        "order mismatch: Q(zeta_{left}) vs Q(zeta_{right}); lift explicitly to a common order"
    )]
    OrderMismatch { left: u32, right: u32 },
    #[error("division by zero in Q(zeta_{order})")]
    DivisionByZero { order: u32 },
    #[error("element is not rational: {0}")]
    NotRational(Box<CyclotomicElement>),
    #[error("zeta -> zeta^{k} is not an automorphism of Q(zeta_{order}) (gcd(k, order) != 1)")]
    NotAUnit { k: i64, order: u32 },
    #[error("cannot lift Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    NotADivisor { from: u32, to: u32 },
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients of `Φ_n`, lowest degree first.
///
/// Obtained by exact division of `x^n - 1` by `Φ_d` for every proper divisor
/// `d` of `n`.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0 is undefined");
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        poly = exact_monic_division(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn exact_monic_division(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// Shared per-order data.
pub(crate) struct Field {
    order: u32,
    degree: usize,
    /// `Φ_n`, lowest degree first, monic.
    modulus: Vec<BigRational>,
    powers: OnceLock<Vec<Vec<BigRational>>>,
}

impl Field {
    fn new(order: u32) -> Self {
        let modulus: Vec<BigRational> = cyclotomic_polynomial(order)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        Field {
            order,
            degree: modulus.len() - 1,
            modulus,
            powers: OnceLock::new(),
        }
    }

    /// Reduces a polynomial of any length modulo `Φ_n`.
    fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree;
        for i in (d..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[i], BigRational::zero());
            for j in 0..d {
                if !self.modulus[j].is_zero() {
                    poly[i - d + j] -= &c * &self.modulus[j];
                }
            }
        }
        poly.resize(d, BigRational::zero());
        poly
    }

    /// `ζ^k` on the power basis, for `0 <= k < n`.
    fn powers(&self) -> &[Vec<BigRational>] {
        self.powers.get_or_init(|| {
            let mut table = Vec::with_capacity(self.order as usize);
            let mut cur = vec![BigRational::zero(); self.degree];
            cur[0] = BigRational::one();
            for _ in 0..self.order {
                let mut next = Vec::with_capacity(self.degree + 1);
                next.push(BigRational::zero());
                next.extend(cur.iter().cloned());
                table.push(cur);
                cur = self.reduce(next);
            }
            table
        })
    }
}

fn field(order: u32) -> Arc<Field> {
    assert!(order >= 1, "cyclotomic field of order 0 is undefined");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut map = cache.lock().expect("cyclotomic field cache poisoned");
    map.entry(order)
        .or_insert_with(|| Arc::new(Field::new(order)))
        .clone()
}

/// An element of `Q(ζ_n)` in canonical reduced form.
#[derive(Clone)]
pub struct CyclotomicElement {
    field: Arc<Field>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicElement {}

impl CyclotomicElement {
    fn from_reduced(field: Arc<Field>, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len(), field.degree);
        CyclotomicElement { field, coeffs }
    }

    pub fn zero(order: u32) -> Self {
        let f = field(order);
        let coeffs = vec![BigRational::zero(); f.degree];
        Self::from_reduced(f, coeffs)
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u32, r: ExactRational) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = r;
        e
    }

    /// Builds `Σ coeffs[i] ζ^i` from a polynomial of any length.
    pub fn from_coeffs(order: u32, coeffs: Vec<ExactRational>) -> Self {
        let f = field(order);
        let reduced = if coeffs.len() < f.degree {
            let mut c = coeffs;
            c.resize(f.degree, BigRational::zero());
            c
        } else {
            f.reduce(coeffs)
        };
        Self::from_reduced(f, reduced)
    }

    pub fn from_integer_coeffs(order: u32, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            order,
            coeffs.iter().map(|&c| rational::integer(c)).collect(),
        )
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// `φ(n)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.field.degree
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_order(&self, other: &Self) -> Result<(), CyclotomicError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(CyclotomicError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_reduced(self.field.clone(), coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_reduced(self.field.clone(), coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.same_order(other)?;
        let d = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                prod[i + j] += a * b;
            }
        }
        Ok(Self::from_reduced(
            self.field.clone(),
            self.field.reduce(prod),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.same_order(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, r: &ExactRational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * r).collect();
        Self::from_reduced(self.field.clone(), coeffs)
    }

    /// Multiplication by `ζ^k`.
    pub fn mul_root(&self, k: i64) -> Self {
        let mut acc = CyclicAccumulator::new(self.order());
        acc.add_rotated(self, k);
        acc.finish()
    }

    /// Integer powers; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, CyclotomicError> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// representative polynomial and `Φ_n`.
    pub fn inverse(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero {
                order: self.order(),
            });
        }
        let (mut r0, mut r1) = (self.field.modulus.clone(), trimmed(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_n is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let g = r0[0].clone();
        let inv: Vec<BigRational> = s0.into_iter().map(|c| c / &g).collect();
        Ok(Self::from_coeffs(self.order(), inv))
    }

    /// The element as a rational number, if it lies in `Q`.
    pub fn as_rational(&self) -> Result<ExactRational, CyclotomicError> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(CyclotomicError::NotRational(Box::new(self.clone())))
        }
    }

    /// The automorphism `ζ ↦ ζ^k`.
    pub fn galois(&self, k: i64) -> Result<Self, CyclotomicError> {
        let n = self.order() as i64;
        if k.gcd(&n) != 1 {
            return Err(CyclotomicError::NotAUnit {
                k,
                order: self.order(),
            });
        }
        let mut slots = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let idx = (i as i64 * k).rem_euclid(n) as usize;
            slots[idx] += c;
        }
        Ok(Self::from_reduced(
            self.field.clone(),
            self.field.reduce(slots),
        ))
    }

    /// Image under `Q(ζ_m) → Q(ζ_n)`, `ζ_m ↦ ζ_n^{n/m}`; requires `m | n`.
    pub fn lift(&self, order: u32) -> Result<Self, CyclotomicError> {
        let m = self.order();
        if order % m != 0 {
            return Err(CyclotomicError::NotADivisor { from: m, to: order });
        }
        let step = (order / m) as usize;
        let mut poly = vec![BigRational::zero(); step * (self.degree() - 1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_coeffs(order, poly))
    }

    /// Lifts both operands to `Q(ζ_lcm)`.
    pub fn coerce_pair(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.order().lcm(&b.order());
        (
            a.lift(l).expect("lcm is a multiple"),
            b.lift(l).expect("lcm is a multiple"),
        )
    }

    /// Complex embedding with `ζ = e^{2πi/n}`.
    pub fn approx_complex(&self) -> (f64, f64) {
        let n = self.order() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (i, c)| {
                let c = rational::to_f64(c);
                let theta = std::f64::consts::TAU * i as f64 / n;
                (re + c * theta.cos(), im + c * theta.sin())
            })
    }
}

/// `ζ_n^{k mod n}`.
pub fn root_of_unity(order: u32, k: i64) -> CyclotomicElement {
    let f = field(order);
    let idx = k.rem_euclid(order as i64) as usize;
    let coeffs = f.powers()[idx].clone();
    CyclotomicElement::from_reduced(f, coeffs)
}

/// Sums of the form `Σ ζ^{k_j} a_j` accumulated in `Q[x]/(x^n - 1)`, where
/// multiplication by a root of unity is a rotation, and reduced modulo `Φ_n`
/// once at the end.
pub struct CyclicAccumulator {
    field: Arc<Field>,
    slots: Vec<BigRational>,
}

impl CyclicAccumulator {
    pub fn new(order: u32) -> Self {
        CyclicAccumulator {
            field: field(order),
            slots: vec![BigRational::zero(); order as usize],
        }
    }

    /// Adds `ζ^shift · e`.
    pub fn add_rotated(&mut self, e: &CyclotomicElement, shift: i64) {
        assert_eq!(e.order(), self.field.order, "accumulator order mismatch");
        let n = self.slots.len() as i64;
        for (i, c) in e.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let idx = (i as i64 + shift).rem_euclid(n) as usize;
            self.slots[idx] += c;
        }
    }

    /// Adds `c · ζ^k`.
    pub fn add_root(&mut self, c: &ExactRational, k: i64) {
        let idx = k.rem_euclid(self.slots.len() as i64) as usize;
        self.slots[idx] += c;
    }

    pub fn finish(self) -> CyclotomicElement {
        let coeffs = self.field.reduce(self.slots);
        CyclotomicElement::from_reduced(self.field, coeffs)
    }
}

fn trimmed(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (Vec::new(), trimmed(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bj;
        }
        quot[i - db] = c;
    }
    rem.truncate(db);
    (trimmed(quot), trimmed(rem))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trimmed(out)
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CyclotomicElement> for &CyclotomicElement {
            type Output = CyclotomicElement;

            /// # Panics
            ///
            /// Panics when the orders differ; use the `checked_*` form or lift first.
            fn $method(self, rhs: &CyclotomicElement) -> CyclotomicElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<CyclotomicElement> for CyclotomicElement {
            type Output = CyclotomicElement;

            fn $method(self, rhs: CyclotomicElement) -> CyclotomicElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;

    fn neg(self) -> CyclotomicElement {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        CyclotomicElement::from_reduced(self.field.clone(), coeffs)
    }
}

impl Neg for CyclotomicElement {
    type Output = CyclotomicElement;

    fn neg(self) -> CyclotomicElement {
        -&self
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                _ => {
                    if show_coeff {
                        f.write_str("*")?;
                    }
                    write!(f, "z{}", self.order())?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicElement(Q(zeta_{}): {})", self.order(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, ratio};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_degree() {
        for n in 1..60 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n) as usize);
        }
    }

    #[test]
    fn root_of_unity_reductions() {
        assert_eq!(
            root_of_unity(2, 1),
            CyclotomicElement::from_rational(2, integer(-1))
        );
        assert_eq!(
            root_of_unity(6, 2),
            CyclotomicElement::from_integer_coeffs(6, &[-1, 1])
        );
        assert_eq!(
            root_of_unity(4, 1) * root_of_unity(4, 3),
            CyclotomicElement::one(4)
        );
        assert_eq!(root_of_unity(7, 0), CyclotomicElement::one(7));
        assert_eq!(root_of_unity(5, -1), root_of_unity(5, 4));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = root_of_unity(3, 1);
        let b = root_of_unity(6, 1);
        assert!(matches!(
            a.checked_add(&b),
            Err(CyclotomicError::OrderMismatch { left: 3, right: 6 })
        ));
        let (la, lb) = CyclotomicElement::coerce_pair(&a, &b);
        assert_eq!(la, root_of_unity(6, 2));
        assert_eq!(lb.order(), 6);
    }

    #[test]
    fn lift_rejects_non_divisors() {
        assert!(root_of_unity(4, 1).lift(6).is_err());
        assert_eq!(root_of_unity(3, 1).lift(6).unwrap(), root_of_unity(6, 2));
    }

    #[test]
    fn inverses() {
        assert_eq!(
            CyclotomicElement::one(9).inverse().unwrap(),
            CyclotomicElement::one(9)
        );
        assert_eq!(
            root_of_unity(10, 1).inverse().unwrap(),
            root_of_unity(10, 9)
        );
        let a = &root_of_unity(6, 1) - &CyclotomicElement::one(6);
        assert_eq!(&a.inverse().unwrap() * &a, CyclotomicElement::one(6));
        assert!(matches!(
            CyclotomicElement::zero(5).inverse(),
            Err(CyclotomicError::DivisionByZero { order: 5 })
        ));
    }

    #[test]
    fn rationality() {
        assert_eq!(
            CyclotomicElement::zero(8).as_rational().unwrap(),
            integer(0)
        );
        assert!(matches!(
            root_of_unity(6, 1).as_rational(),
            Err(CyclotomicError::NotRational(_))
        ));
        let s = (1..5).fold(CyclotomicElement::zero(5), |acc, k| {
            &acc + &root_of_unity(5, k)
        });
        assert_eq!(s.as_rational().unwrap(), integer(-1));
    }

    #[test]
    fn galois_action() {
        let a = CyclotomicElement::from_coeffs(
            7,
            vec![ratio(1, 2), integer(3), integer(0), ratio(-2, 5)],
        );
        assert_eq!(a.galois(1).unwrap(), a);
        assert_eq!(root_of_unity(9, 1).galois(8).unwrap(), root_of_unity(9, 8));
        assert!(matches!(a.galois(7), Err(CyclotomicError::NotAUnit { .. })));
    }

    #[test]
    fn embedding_of_basic_elements() {
        let (re, im) = CyclotomicElement::one(5).approx_complex();
        assert_eq!((re, im), (1.0, 0.0));
        let (re, im) = root_of_unity(4, 1).approx_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn display() {
        let a = CyclotomicElement::from_coeffs(6, vec![ratio(1, 2), integer(-1)]);
        assert_eq!(a.to_string(), "1/2 - z6");
        assert_eq!(CyclotomicElement::zero(3).to_string(), "0");
        assert_eq!(root_of_unity(12, 3).to_string(), "z12^3");
    }
}
