//! Exact values in cyclotomic fields.
//!
//! [`RootValue`] is a single integer multiple of a root of unity, which is
//! all that character values of the orbit method ever produce. [`CycloSum`]
//! is a general element of `Z[ζ_e]` stored as a coefficient vector modulo
//! `x^e − 1`; equality and zero tests reduce modulo the cyclotomic
//! polynomial `Φ_e`, so they are exact.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// `scale · ζ_order^exponent`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RootValue {
    pub scale: i64,
    #[serde(rename = "root_order")]
    pub order: u64,
    pub exponent: u64,
}

impl RootValue {
    pub fn new(scale: i64, order: u64, exponent: u64) -> Self {
        assert!(order > 0);
        RootValue { scale, order, exponent: exponent % order }
    }

    pub fn zero() -> Self {
        RootValue { scale: 0, order: 1, exponent: 0 }
    }

    pub fn root(order: u64, exponent: u64) -> Self {
        RootValue::new(1, order, exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.scale == 0
    }

    /// Lowest-terms form: positive scale, exponent/order reduced, zero
    /// canonicalised.
    pub fn normalized(&self) -> Self {
        if self.scale == 0 {
            return RootValue::zero();
        }
        let (mut scale, mut order, mut exponent) = (self.scale, self.order, self.exponent % self.order);
        if scale < 0 {
            scale = -scale;
            if order % 2 == 1 {
                exponent = 2 * exponent + order;
                order *= 2;
            } else {
                exponent = (exponent + order / 2) % order;
            }
        }
        let g = exponent.gcd(&order);
        if g > 0 {
            order /= g;
            exponent /= g;
        }
        if exponent == 0 {
            order = 1;
        }
        RootValue { scale, order, exponent }
    }

    pub fn conj(&self) -> Self {
        RootValue::new(self.scale, self.order, self.order - self.exponent % self.order)
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.scale == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let theta = 2.0 * std::f64::consts::PI * (self.exponent as f64) / (self.order as f64);
        Complex64::from_polar(self.scale as f64, theta)
    }

    pub fn to_sum(&self, order: u64) -> CycloSum {
        let mut s = CycloSum::zero(order);
        s.add_root(self.scale, self.exponent_in(order));
        s
    }

    /// The exponent of this root written over `order` (which must be a multiple).
    pub fn exponent_in(&self, order: u64) -> u64 {
        assert!(order % self.order == 0, "order {order} is not a multiple of {}", self.order);
        self.exponent * (order / self.order)
    }
}

impl PartialEq for RootValue {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        a.scale == b.scale && a.order == b.order && a.exponent == b.exponent
    }
}

impl Eq for RootValue {}

impl fmt::Display for RootValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.normalized();
        if v.scale == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}*zeta({})^{}", v.scale, v.order, v.exponent)
        }
    }
}

/// An element `Σ_k c_k ζ_e^k` of `Z[ζ_e]`.
#[derive(Debug, Clone)]
pub struct CycloSum {
    order: u64,
    coeffs: Vec<i64>,
}

impl CycloSum {
    pub fn zero(order: u64) -> Self {
        assert!(order > 0);
        CycloSum { order, coeffs: vec![0; order as usize] }
    }

    pub fn from_histogram(order: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, order);
        CycloSum { order, coeffs: counts.to_vec() }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add_root(&mut self, scale: i64, exponent: u64) {
        self.coeffs[(exponent % self.order) as usize] += scale;
    }

    pub fn add(&self, other: &CycloSum) -> CycloSum {
        assert_eq!(self.order, other.order);
        CycloSum {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> CycloSum {
        CycloSum { order: self.order, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &CycloSum) -> CycloSum {
        assert_eq!(self.order, other.order);
        let e = self.order as usize;
        let mut out = vec![0i64; e];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[(i + j) % e] += a * b;
            }
        }
        CycloSum { order: self.order, coeffs: out }
    }

    pub fn conj(&self) -> CycloSum {
        let e = self.order as usize;
        let mut out = vec![0i64; e];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[(e - k) % e] += c;
        }
        CycloSum { order: self.order, coeffs: out }
    }

    pub fn scale(&self, k: i64) -> CycloSum {
        CycloSum { order: self.order, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    /// Exact division by an integer, if every reduced coefficient is divisible.
    pub fn div_exact(&self, k: i64) -> Option<CycloSum> {
        let r = self.reduced();
        if r.iter().all(|c| c % k == 0) {
            let mut coeffs = vec![0; self.order as usize];
            for (i, c) in r.iter().enumerate() {
                coeffs[i] = c / k;
            }
            Some(CycloSum { order: self.order, coeffs })
        } else {
            None
        }
    }

    /// Remainder modulo `Φ_e`; a canonical form of the value.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        let mut r = self.coeffs.clone();
        for top in (deg..r.len()).rev() {
            let c = r[top];
            if c == 0 {
                continue;
            }
            // Φ is monic
            for (i, &p) in phi.iter().enumerate() {
                r[top - deg + i] -= c * p;
            }
        }
        r.truncate(deg);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&c| c == 0)
    }

    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, &c)| RootValue::new(c, self.order, k as u64).to_complex())
            .sum()
    }
}

impl PartialEq for CycloSum {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.add(&other.neg()).is_zero()
    }
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n > 0);
    // x^n − 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = poly_div_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut r = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd] / lead;
        q[i] = c;
        for (j, &p) in den.iter().enumerate() {
            r[i + j] -= c * p;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0), "inexact polynomial division");
    q
}
