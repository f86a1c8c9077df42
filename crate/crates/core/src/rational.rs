//! Exact rational scalars, vectors and square matrices.
//!
//! Everything here is exact: there is no floating point on any path that
//! feeds a verdict. Conversions to `f64` exist only for the numeric oracle.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type RatVector = Vec<Rational>;
pub type IntVector = Vec<BigInt>;

/// Shorthand for `num / den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` with optional sign. Decimal points and exponents
/// are rejected so that exact inputs stay exact.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::MalformedRational(text.to_string());
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let is_int = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators or denominators: divide in f64 after scaling.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn vec_to_f64(v: &[Rational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

pub fn zero_vector(d: usize) -> RatVector {
    vec![Rational::zero(); d]
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn is_integer_vector(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn add(a: &[Rational], b: &[Rational]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Rational]) -> RatVector {
    a.iter().map(|x| -x).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn int_to_rat(v: &[BigInt]) -> RatVector {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Sup norm of an exact vector.
pub fn sup_norm(v: &[Rational]) -> Rational {
    v.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Formats a vector as `(a, b, c)`; scalars in one dimension print bare.
pub fn format_vector(v: &[Rational]) -> String {
    if v.len() == 1 {
        return v[0].to_string();
    }
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Square matrix with exact rational entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.dim {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            f.write_str(&row.join(" "))?;
        }
        f.write_str("]")
    }
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![Rational::one(); dim])
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let dim = diag.len();
        let mut entries = vec![Rational::zero(); dim * dim];
        for (i, v) in diag.iter().enumerate() {
            entries[i * dim + i] = v.clone();
        }
        Self { dim, entries }
    }

    /// One-dimensional matrix `[a]`.
    pub fn scalar(a: Rational) -> Self {
        Self {
            dim: 1,
            entries: vec![a],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(self.get(j, i).clone());
            }
        }
        Self { dim: d, entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = Rational::zero();
                for k in 0..d {
                    acc += self.get(i, k) * other.get(k, j);
                }
                entries.push(acc);
            }
        }
        Self { dim: d, entries }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> RatVector {
        (0..self.dim).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn mul_int_vec(&self, v: &[BigInt]) -> RatVector {
        self.mul_vec(&int_to_rat(v))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| vec_to_f64(self.row(i))).collect()
    }

    /// Exact determinant by fraction-preserving Gaussian elimination.
    pub fn det(&self) -> Rational {
        let d = self.dim;
        let mut m = self.entries.clone();
        let mut det = Rational::one();
        for col in 0..d {
            let Some(pivot) = (col..d).find(|&r| !m[r * d + col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                for k in 0..d {
                    m.swap(pivot * d + k, col * d + k);
                }
                det = -det;
            }
            let p = m[col * d + col].clone();
            det *= &p;
            for r in col + 1..d {
                if m[r * d + col].is_zero() {
                    continue;
                }
                let factor = &m[r * d + col] / &p;
                for k in col..d {
                    let delta = &factor * &m[col * d + k];
                    m[r * d + k] -= delta;
                }
            }
        }
        det
    }

    pub fn abs_det(&self) -> Rational {
        self.det().abs()
    }

    /// Gauss-Jordan inverse; `inverse(M) * M` is the identity exactly.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.dim;
        let mut m = self.entries.clone();
        let mut inv = Self::identity(d).entries;
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !m[r * d + col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for k in 0..d {
                    m.swap(pivot * d + k, col * d + k);
                    inv.swap(pivot * d + k, col * d + k);
                }
            }
            let p = m[col * d + col].clone();
            for k in 0..d {
                m[col * d + k] /= &p;
                inv[col * d + k] /= &p;
            }
            for r in 0..d {
                if r == col || m[r * d + col].is_zero() {
                    continue;
                }
                let factor = m[r * d + col].clone();
                for k in 0..d {
                    let dm = &factor * &m[col * d + k];
                    m[r * d + k] -= dm;
                    let di = &factor * &inv[col * d + k];
                    inv[r * d + k] -= di;
                }
            }
        }
        Ok(Self {
            dim: d,
            entries: inv,
        })
    }

    /// `M' = (M^T)^{-1}`, the generator of the dual lattice.
    pub fn dual(&self) -> Result<Self> {
        self.transpose().inverse()
    }

    /// Maximum absolute row sum (the operator norm induced by the sup norm).
    pub fn sup_operator_norm(&self) -> Rational {
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .fold(Rational::zero(), |acc, x| acc + x.abs())
            })
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// All integer points `z` with `lower_i <= z_i <= upper_i`, in lexicographic order.
pub fn integer_points(lower: &[BigInt], upper: &[BigInt]) -> Vec<IntVector> {
    let d = lower.len();
    if lower.iter().zip(upper).any(|(l, u)| l > u) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current: IntVector = lower.to_vec();
    loop {
        out.push(current.clone());
        let mut axis = d;
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            if current[axis] < upper[axis] {
                current[axis] += 1;
                current[axis + 1..d].clone_from_slice(&lower[axis + 1..d]);
                break;
            }
        }
    }
}

/// Integer points strictly inside the open box `(lower, upper)`.
pub fn integer_points_open(lower: &[Rational], upper: &[Rational]) -> Vec<IntVector> {
    let lo: IntVector = lower.iter().map(|l| l.floor().to_integer() + 1).collect();
    let hi: IntVector = upper.iter().map(|u| u.ceil().to_integer() - 1).collect();
    integer_points(&lo, &hi)
}

/// Integer points inside the closed box `[lower, upper]`.
pub fn integer_points_closed(lower: &[Rational], upper: &[Rational]) -> Vec<IntVector> {
    let lo: IntVector = lower.iter().map(|l| l.ceil().to_integer()).collect();
    let hi: IntVector = upper.iter().map(|u| u.floor().to_integer()).collect();
    integer_points(&lo, &hi)
}
