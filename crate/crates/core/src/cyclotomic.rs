//! Zero tests for finite exponential sums `Σ c_j e^{-2πi θ_j}`.
//!
//! With rational coefficients and rational phases the sum is an element of a
//! cyclotomic field: if `N` is the common denominator of the phases, it equals
//! `P(ζ)` for `P(x) = Σ c_j x^{N θ_j}` and the primitive root `ζ = e^{-2πi/N}`.
//! It vanishes exactly when the cyclotomic polynomial `Φ_N` divides `P`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::parallel::CompensatedComplex;
use crate::rational::{to_f64, Rational};

/// Default tolerance for numeric zero tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactTerm {
    pub coeff: Rational,
    pub phase: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericTerm {
    pub coeff: f64,
    pub phase: f64,
}

/// `Σ c e^{-2πi θ}` split into exactly representable terms and terms with
/// floating-point phases (from irrational shifts).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExponentialSum {
    exact: Vec<ExactTerm>,
    numeric: Vec<NumericTerm>,
}

fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

impl ExponentialSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_exact(&mut self, coeff: Rational, phase: Rational) {
        let phase = frac(&phase);
        match self.exact.iter_mut().find(|t| t.phase == phase) {
            Some(t) => t.coeff += coeff,
            None => self.exact.push(ExactTerm { coeff, phase }),
        }
        self.exact.retain(|t| !t.coeff.is_zero());
        self.exact.sort_by(|a, b| a.phase.cmp(&b.phase));
    }

    pub fn push_numeric(&mut self, coeff: f64, phase: f64) {
        self.numeric.push(NumericTerm {
            coeff,
            phase: phase - phase.floor(),
        });
    }

    pub fn exact_terms(&self) -> &[ExactTerm] {
        &self.exact
    }

    pub fn numeric_terms(&self) -> &[NumericTerm] {
        &self.numeric
    }

    pub fn is_exact(&self) -> bool {
        self.numeric.is_empty()
    }

    pub fn len(&self) -> usize {
        self.exact.len() + self.numeric.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Multiplies the whole sum by the unit `e^{-2πi r}`.
    pub fn rotate(&self, r: &Rational) -> Self {
        let mut out = Self::new();
        for t in &self.exact {
            out.push_exact(t.coeff.clone(), &t.phase + r);
        }
        let rf = to_f64(r);
        for t in &self.numeric {
            out.push_numeric(t.coeff, t.phase + rf);
        }
        out
    }

    /// Compensated floating-point value.
    pub fn evaluate(&self) -> Complex64 {
        let mut acc = CompensatedComplex::default();
        for t in &self.exact {
            acc.add(unit(to_f64(&t.phase)) * to_f64(&t.coeff));
        }
        for t in &self.numeric {
            acc.add(unit(t.phase) * t.coeff);
        }
        acc.value()
    }

    fn abs_coeff_sum(&self) -> f64 {
        self.exact
            .iter()
            .map(|t| to_f64(&t.coeff).abs())
            .sum::<f64>()
            + self.numeric.iter().map(|t| t.coeff.abs()).sum::<f64>()
    }
}

impl fmt::Display for ExponentialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self
            .exact
            .iter()
            .map(|t| format!("{}*e(-{})", t.coeff, t.phase))
            .collect();
        parts.extend(
            self.numeric
                .iter()
                .map(|t| format!("{}*e(-{})", t.coeff, t.phase)),
        );
        f.write_str(&parts.join(" + "))
    }
}

/// `e^{-2πi θ}` for `θ ∈ [0, 1)`, reduced so that rational phases with small
/// denominators land on exact quadrant values.
fn unit(theta: f64) -> Complex64 {
    let (s, c) = sin_cos_pi(2.0 * theta);
    Complex64::new(c, -s)
}

/// `(sin πt, cos πt)` with argument reduction modulo 2 done before scaling.
pub fn sin_cos_pi(t: f64) -> (f64, f64) {
    let r = t - 2.0 * (t / 2.0).round();
    // r ∈ [-1, 1]; quadrant points are returned exactly.
    if r.abs() == 1.0 {
        return (0.0, -1.0);
    }
    if r == 0.0 {
        return (0.0, 1.0);
    }
    if r == 0.5 {
        return (1.0, 0.0);
    }
    if r == -0.5 {
        return (-1.0, 0.0);
    }
    (std::f64::consts::PI * r).sin_cos()
}

/// Integer polynomial, coefficients from low to high degree.
type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact quotient of `num` by a monic `den` (panics if not exact).
fn div_monic_exact(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let mut rem = num.clone();
    trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() <= dd {
        assert!(rem.is_empty(), "inexact cyclotomic division");
        return vec![];
    }
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (k, dk) in den.iter().enumerate() {
            rem[i + k] -= &c * dk;
        }
        q[i] = c;
    }
    trim(&mut rem);
    assert!(rem.is_empty(), "inexact cyclotomic division");
    q
}

fn divisors(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .collect();
    let large: Vec<usize> = out
        .iter()
        .rev()
        .map(|d| n / d)
        .filter(|&q| q * q != n)
        .collect();
    out.extend(large);
    out
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_n`, computed as `(x^n - 1) / Π_{d | n, d < n} Φ_d` and memoized.
pub fn cyclotomic_polynomial(n: usize) -> Arc<IntPoly> {
    assert!(n > 0, "cyclotomic polynomial index must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut p: IntPoly = vec![BigInt::zero(); n + 1];
    p[0] = -BigInt::one();
    p[n] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            p = div_monic_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(p);
    cache().lock().unwrap().insert(n, Arc::clone(&p));
    p
}

/// Remainder of a rational polynomial modulo a monic integer polynomial.
fn rem_monic(mut p: Vec<Rational>, m: &IntPoly) -> Vec<Rational> {
    let dm = m.len() - 1;
    while p.len() > dm {
        let lead = p.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = p.len() - dm;
        for (k, mk) in m.iter().enumerate().take(dm) {
            p[shift + k] -= &lead * Rational::from_integer(mk.clone());
        }
    }
    p
}

/// Exact zero test. Refuses sums that carry irrational phases.
pub fn is_zero_exact(s: &ExponentialSum) -> Result<bool> {
    if !s.is_exact() {
        return Err(Error::IrrationalPhase);
    }
    if s.exact.is_empty() {
        return Ok(true);
    }
    let n = s
        .exact
        .iter()
        .fold(BigInt::one(), |acc, t| acc.lcm(t.phase.denom()));
    let n = n
        .to_usize()
        .expect("common phase denominator does not fit in memory");
    let mut p = vec![Rational::zero(); n];
    for t in &s.exact {
        let k = (&t.phase * Rational::from_integer(n.into())).to_integer();
        let k = k.to_usize().expect("phase index in range");
        p[k] += &t.coeff;
    }
    let r = rem_monic(p, &cyclotomic_polynomial(n));
    Ok(r.iter().all(Zero::is_zero))
}

/// Outcome of a floating-point zero test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericZero {
    pub is_zero: bool,
    pub magnitude: f64,
    /// Bound on the rounding error of `magnitude`.
    pub error_bound: f64,
    pub tolerance: f64,
}

pub fn is_zero_numeric(s: &ExponentialSum, tol: f64) -> NumericZero {
    let magnitude = s.evaluate().norm();
    // Each term costs a few roundings in the phase, the sine/cosine and the
    // product; compensated accumulation keeps the sum error at that level.
    let error_bound = 8.0 * f64::EPSILON * s.abs_coeff_sum();
    NumericZero {
        is_zero: magnitude <= tol,
        magnitude,
        error_bound,
        tolerance: tol,
    }
}

/// How a zero/nonzero decision was reached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroDecision {
    Exact(bool),
    Numeric(NumericZero),
}

impl ZeroDecision {
    pub fn is_zero(&self) -> bool {
        match self {
            ZeroDecision::Exact(z) => *z,
            ZeroDecision::Numeric(n) => n.is_zero,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ZeroDecision::Exact(_))
    }
}

/// Exact test when possible, numeric at `tol` otherwise.
pub fn decide_zero(s: &ExponentialSum, tol: f64) -> ZeroDecision {
    match is_zero_exact(s) {
        Ok(z) => ZeroDecision::Exact(z),
        Err(_) => ZeroDecision::Numeric(is_zero_numeric(s, tol)),
    }
}

/// Product of `Φ_d` over the divisors of `n`, for identity checks.
pub fn divisor_product(n: usize) -> IntPoly {
    let mut acc: IntPoly = vec![BigInt::one()];
    for d in divisors(n) {
        let phi = cyclotomic_polynomial(d);
        let mut out = vec![BigInt::zero(); acc.len() + phi.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in phi.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        acc = out;
    }
    acc
}
