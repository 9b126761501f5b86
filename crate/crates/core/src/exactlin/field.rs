//! Exact scalar fields: the rationals, prime fields and small extensions of them.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Description of a scalar domain, used for reporting and export.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Rationals,
    Prime { p: u32 },
    /// `modulus` lists the coefficients c_0..c_{k-1} of the monic modulus
    /// t^k + c_{k-1} t^{k-1} + ... + c_0.
    Extension { p: u32, modulus: Vec<u32> },
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::Prime { p } | FieldDescriptor::Extension { p, .. } => *p as u64,
        }
    }

    pub fn label(&self) -> String {
        match self {
            FieldDescriptor::Rationals => "Q".to_string(),
            FieldDescriptor::Prime { p } => format!("F_{p}"),
            FieldDescriptor::Extension { p, modulus } => {
                format!("F_{}", (*p as u64).pow(modulus.len() as u32))
            }
        }
    }
}

/// A field context. Elements are plain values; all arithmetic goes through the context.
pub trait Field: Copy + Eq + Hash + Debug + Send + Sync + 'static {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;
    /// The `index`-th element in the canonical enumeration order (finite fields only).
    fn element(&self, index: u64) -> Self::Elem;
    /// Position of `a` in the canonical enumeration order (finite fields only).
    fn index_of(&self, a: &Self::Elem) -> u64;
    fn descriptor(&self) -> FieldDescriptor;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    /// A basis of the field over its prime field (just `[1]` for prime fields and the rationals).
    fn prime_basis(&self) -> Vec<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// The inverse of 2; exists because the characteristic is never 2.
    fn half(&self) -> Self::Elem {
        self.inv(&self.from_i64(2)).expect("2 is invertible")
    }

    fn elements(&self) -> Result<Vec<Self::Elem>> {
        let q = self.size().ok_or(Error::InfiniteField)?;
        Ok((0..q).map(|i| self.element(i)).collect())
    }

    fn nonzero_elements(&self) -> Result<Vec<Self::Elem>> {
        Ok(self.elements()?.into_iter().filter(|e| !self.is_zero(e)).collect())
    }

    // Vector helpers.

    fn vzero(&self, n: usize) -> Vec<Self::Elem> {
        vec![self.zero(); n]
    }

    fn unit_vec(&self, n: usize, i: usize) -> Vec<Self::Elem> {
        let mut v = self.vzero(n);
        v[i] = self.one();
        v
    }

    fn vadd(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| self.add(x, y)).collect()
    }

    fn vsub(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| self.sub(x, y)).collect()
    }

    fn vneg(&self, a: &[Self::Elem]) -> Vec<Self::Elem> {
        a.iter().map(|x| self.neg(x)).collect()
    }

    fn vscale(&self, c: &Self::Elem, a: &[Self::Elem]) -> Vec<Self::Elem> {
        a.iter().map(|x| self.mul(c, x)).collect()
    }

    /// y += c·x
    fn vaxpy(&self, y: &mut [Self::Elem], c: &Self::Elem, x: &[Self::Elem]) {
        debug_assert_eq!(y.len(), x.len());
        if self.is_zero(c) {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                *yi = self.add(yi, &self.mul(c, xi));
            }
        }
    }

    fn vis_zero(&self, a: &[Self::Elem]) -> bool {
        a.iter().all(|x| self.is_zero(x))
    }

    fn vrandom<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<Self::Elem> {
        (0..n).map(|_| self.random(rng)).collect()
    }

    /// Scale a nonzero vector so that its first nonzero entry is 1.
    fn normalize(&self, a: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        let lead = a.iter().find(|x| !self.is_zero(x))?;
        let li = self.inv(lead)?;
        Some(self.vscale(&li, a))
    }

    fn vformat(&self, a: &[Self::Elem]) -> String {
        let parts: Vec<String> = a.iter().map(|x| self.format(x)).collect();
        format!("[{}]", parts.join(", "))
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_characteristic(p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if p < 5 {
        return Err(Error::InvalidField(format!(
            "characteristic {p} not allowed (must differ from 2 and 3)"
        )));
    }
    if p >= 1 << 16 {
        return Err(Error::InvalidField(format!("prime {p} too large (limit 65536)")));
    }
    Ok(())
}

/// The prime field F_p with p ≥ 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        check_characteristic(p)?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u32)
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn size(&self) -> Option<u64> {
        Some(self.p as u64)
    }
    fn element(&self, index: u64) -> u32 {
        index as u32
    }
    fn index_of(&self, a: &u32) -> u64 {
        *a as u64
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime { p: self.p }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn prime_basis(&self) -> Vec<u32> {
        vec![1]
    }
}

/// F_{p^k} = F_p[t]/(m(t)) for a monic irreducible m of degree 2..=4.
/// Elements are coefficient arrays c_0 + c_1 t + ..., unused slots zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u32,
    degree: usize,
    modulus: [u32; 4],
}

impl ExtensionField {
    /// `modulus` holds c_0..c_{k-1} of the monic polynomial t^k + c_{k-1}t^{k-1} + ... + c_0.
    pub fn new(p: u32, modulus: &[u32]) -> Result<Self> {
        check_characteristic(p)?;
        let degree = modulus.len();
        if !(2..=4).contains(&degree) {
            return Err(Error::InvalidField(format!(
                "extension degree {degree} unsupported (2..=4)"
            )));
        }
        if (p as u64).pow(degree as u32) > u32::MAX as u64 {
            return Err(Error::InvalidField("extension field too large".into()));
        }
        let mut m = [0u32; 4];
        for (i, c) in modulus.iter().enumerate() {
            m[i] = c % p;
        }
        let f = ExtensionField { p, degree, modulus: m };
        if !f.modulus_irreducible() {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The class of t.
    pub fn generator(&self) -> [u32; 4] {
        let mut g = [0; 4];
        g[1] = 1;
        g
    }

    fn modulus_poly(&self) -> Vec<u64> {
        let mut m: Vec<u64> = self.modulus[..self.degree].iter().map(|&c| c as u64).collect();
        m.push(1);
        m
    }

    fn modulus_irreducible(&self) -> bool {
        let p = self.p as u64;
        let m = self.modulus_poly();
        let eval = |x: u64| m.iter().rev().fold(0u64, |acc, c| (acc * x + c) % p);
        if (0..p).any(|x| eval(x) == 0) {
            return false;
        }
        if self.degree == 4 {
            // no monic quadratic factor t^2 + b t + c
            for b in 0..p {
                for c in 0..p {
                    if poly_rem_zero(&m, &[c, b, 1], p) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn poly_rem_zero(num: &[u64], den: &[u64], p: u64) -> bool {
    // den monic
    let mut r: Vec<u64> = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dd;
        for (i, d) in den.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p * p - (lead * d) % p) % p;
        }
        r.pop();
    }
    r.iter().all(|c| c % p == 0)
}

impl Field for ExtensionField {
    type Elem = [u32; 4];

    fn zero(&self) -> [u32; 4] {
        [0; 4]
    }
    fn one(&self) -> [u32; 4] {
        [1, 0, 0, 0]
    }
    fn add(&self, a: &[u32; 4], b: &[u32; 4]) -> [u32; 4] {
        let mut r = [0; 4];
        for i in 0..self.degree {
            let s = a[i] + b[i];
            r[i] = if s >= self.p { s - self.p } else { s };
        }
        r
    }
    fn sub(&self, a: &[u32; 4], b: &[u32; 4]) -> [u32; 4] {
        let mut r = [0; 4];
        for i in 0..self.degree {
            r[i] = if a[i] >= b[i] { a[i] - b[i] } else { a[i] + self.p - b[i] };
        }
        r
    }
    fn neg(&self, a: &[u32; 4]) -> [u32; 4] {
        self.sub(&[0; 4], a)
    }
    fn mul(&self, a: &[u32; 4], b: &[u32; 4]) -> [u32; 4] {
        let p = self.p as u64;
        let k = self.degree;
        let mut prod = [0u64; 7];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..k {
                let idx = top - k + j;
                prod[idx] = (prod[idx] + c * (p - self.modulus[j] as u64)) % p;
            }
        }
        let mut r = [0u32; 4];
        for i in 0..k {
            r[i] = prod[i] as u32;
        }
        r
    }
    fn inv(&self, a: &[u32; 4]) -> Option<[u32; 4]> {
        if self.is_zero(a) {
            return None;
        }
        // a^(q-2)
        let mut e = self.size().unwrap() - 2;
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Some(acc)
    }
    fn from_i64(&self, n: i64) -> [u32; 4] {
        [n.rem_euclid(self.p as i64) as u32, 0, 0, 0]
    }
    fn is_zero(&self, a: &[u32; 4]) -> bool {
        *a == [0; 4]
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn size(&self) -> Option<u64> {
        Some((self.p as u64).pow(self.degree as u32))
    }
    fn element(&self, index: u64) -> [u32; 4] {
        // c_0 is the most significant digit so that the index order agrees with `Ord`.
        let mut r = [0u32; 4];
        let mut idx = index;
        for i in (0..self.degree).rev() {
            r[i] = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        r
    }
    fn index_of(&self, a: &[u32; 4]) -> u64 {
        a[..self.degree].iter().fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Extension {
            p: self.p,
            modulus: self.modulus[..self.degree].to_vec(),
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> [u32; 4] {
        let mut r = [0u32; 4];
        for c in r.iter_mut().take(self.degree) {
            *c = rng.gen_range(0..self.p);
        }
        r
    }
    fn format(&self, a: &[u32; 4]) -> String {
        let mut terms = Vec::new();
        for i in 0..self.degree {
            if a[i] == 0 {
                continue;
            }
            terms.push(match i {
                0 => a[i].to_string(),
                1 => format!("{}w", a[i]),
                _ => format!("{}w^{}", a[i], i),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
    fn prime_basis(&self) -> Vec<[u32; 4]> {
        (0..self.degree)
            .map(|i| {
                let mut e = [0u32; 4];
                e[i] = 1;
                e
            })
            .collect()
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn element(&self, _index: u64) -> BigRational {
        panic!("the rationals are not enumerable")
    }
    fn index_of(&self, _a: &BigRational) -> u64 {
        panic!("the rationals are not enumerable")
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let n: i64 = rng.gen_range(-4..=4);
        let d: i64 = rng.gen_range(1..=3);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn prime_basis(&self) -> Vec<BigRational> {
        vec![self.one()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7u32 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn small_characteristics_rejected() {
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(5).is_ok());
    }

    #[test]
    fn f25_arithmetic() {
        // t^2 - 2
        let f = ExtensionField::new(5, &[3, 0]).unwrap();
        let w = f.generator();
        assert_eq!(f.mul(&w, &w), [2, 0, 0, 0]);
        for i in 1..25 {
            let a = f.element(i);
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            assert_eq!(f.index_of(&a), i);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 - 1 = (t-1)(t+1)
        assert!(ExtensionField::new(5, &[4, 0]).is_err());
        // t^4 + 1 over F_5 has no roots but splits into quadratics: (t^2+2)(t^2+3)
        assert!(ExtensionField::new(5, &[1, 0, 0, 0]).is_err());
        // t^3 - 2 is irreducible over F_7 (2 is not a cube mod 7)
        assert!(ExtensionField::new(7, &[5, 0, 0]).is_ok());
    }

    #[test]
    fn element_order_matches_ord() {
        let f = ExtensionField::new(5, &[3, 0]).unwrap();
        let els = f.elements().unwrap();
        let mut sorted = els.clone();
        sorted.sort();
        assert_eq!(els, sorted);
    }

    #[test]
    fn rationals_canonical() {
        let q = Rationals;
        let a = q.div(&q.from_i64(2), &q.from_i64(-4)).unwrap();
        assert_eq!(q.format(&a), "-1/2");
        assert!(q.size().is_none());
    }
}
