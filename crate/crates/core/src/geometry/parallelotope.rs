use num_bigint::BigInt;
use num_traits::Zero;

use super::band::{Band, RatBox};
use super::polytope::{ConvexPolytope, HalfSpace};
use crate::error::{Error, Result};
use crate::parallel::{map_slice, Execution};
use crate::rational::{
    add, dot, int_to_rat, integer_points_open, sub, IntVector, RatMatrix, RatVector, Rational,
};

/// Image `{ M x + v : x in box }` of a half-open box under an invertible
/// affine map, kept both as its generator and as `2d` half-spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parallelotope {
    matrix: RatMatrix,
    inverse: RatMatrix,
    source: RatBox,
    shift: RatVector,
    polytope: ConvexPolytope,
    lower: RatVector,
    upper: RatVector,
}

impl Parallelotope {
    pub fn new(matrix: RatMatrix, source: RatBox, shift: RatVector) -> Result<Self> {
        let d = matrix.dim();
        if source.dim() != d || shift.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: if source.dim() != d {
                    source.dim()
                } else {
                    shift.len()
                },
            });
        }
        let inverse = matrix.inverse()?;
        // l_i <= w_i · (y - v) < u_i for each row w_i of M^{-1}.
        let mut halfspaces = Vec::with_capacity(2 * d);
        for i in 0..d {
            let w = inverse.row(i).to_vec();
            let wv = dot(&w, &shift);
            halfspaces.push(HalfSpace::new(
                w.iter().map(|a| -a).collect(),
                -(&source.lower()[i] + &wv),
            ));
            halfspaces.push(HalfSpace::new(w, &source.upper()[i] + &wv));
        }
        let polytope = ConvexPolytope::new(d, halfspaces);

        let mut lower = Vec::with_capacity(d);
        let mut upper = Vec::with_capacity(d);
        for r in 0..d {
            let mut lo = shift[r].clone();
            let mut hi = shift[r].clone();
            for c in 0..d {
                let a = matrix.get(r, c);
                let p = a * &source.lower()[c];
                let q = a * &source.upper()[c];
                if p <= q {
                    lo += p;
                    hi += q;
                } else {
                    lo += q;
                    hi += p;
                }
            }
            lower.push(lo);
            upper.push(hi);
        }
        Ok(Self {
            matrix,
            inverse,
            source,
            shift,
            polytope,
            lower,
            upper,
        })
    }

    /// The box itself, viewed as a parallelotope under the identity.
    pub fn from_box(b: RatBox) -> Self {
        let d = b.dim();
        Self::new(RatMatrix::identity(d), b, vec![Rational::zero(); d])
            .expect("identity is invertible")
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &RatBox {
        &self.source
    }

    pub fn shift(&self) -> &[Rational] {
        &self.shift
    }

    pub fn polytope(&self) -> &ConvexPolytope {
        &self.polytope
    }

    pub fn volume(&self) -> Rational {
        self.matrix.abs_det() * self.source.volume()
    }

    /// Closed bounding box `(lower, upper)`.
    pub fn bounding_box(&self) -> (&[Rational], &[Rational]) {
        (&self.lower, &self.upper)
    }

    pub fn translate(&self, v: &[Rational]) -> Self {
        let shift = add(&self.shift, v);
        Self::new(self.matrix.clone(), self.source.clone(), shift)
            .expect("translation preserves invertibility")
    }

    pub fn translate_int(&self, k: &[BigInt]) -> Self {
        self.translate(&int_to_rat(k))
    }

    /// Exact half-open membership, decided through the generator.
    pub fn contains(&self, y: &[Rational]) -> bool {
        let x = self.inverse.mul_vec(&sub(y, &self.shift));
        self.source.contains(&x)
    }

    /// If the parallelotope is itself an axis-aligned box, returns it.
    pub fn as_box(&self) -> Option<RatBox> {
        if !self.matrix.is_diagonal() {
            return None;
        }
        RatBox::new(self.lower.clone(), self.upper.clone()).ok()
    }
}

/// Images of every box of `band` under `y = M x + v`.
pub fn linear_image(
    band: &Band,
    matrix: &RatMatrix,
    shift: &[Rational],
) -> Result<Vec<Parallelotope>> {
    if band.dim() != matrix.dim() {
        return Err(Error::DimensionMismatch {
            expected: matrix.dim(),
            found: band.dim(),
        });
    }
    if matrix.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    band.boxes()
        .iter()
        .map(|b| Parallelotope::new(matrix.clone(), b.clone(), shift.to_vec()))
        .collect()
}

fn boxes_open_disjoint(p: &Parallelotope, q: &Parallelotope) -> bool {
    let (plo, phi) = p.bounding_box();
    let (qlo, qhi) = q.bounding_box();
    (0..p.dim()).any(|i| phi[i] <= qlo[i] || qhi[i] <= plo[i])
}

/// Whether the open interiors of `p` and `q` meet, decided by exact LP.
pub fn interior_overlap(p: &Parallelotope, q: &Parallelotope) -> bool {
    if boxes_open_disjoint(p, q) {
        return false;
    }
    p.polytope().intersection(q.polytope()).has_interior()
}

/// Every `k ∈ ℤ^d` with `interior_overlap(p, q + k)`, in lexicographic order.
pub fn overlap_translates(p: &Parallelotope, q: &Parallelotope) -> Vec<IntVector> {
    overlap_translates_with(Execution::default(), p, q)
}

pub fn overlap_translates_with(
    exec: Execution,
    p: &Parallelotope,
    q: &Parallelotope,
) -> Vec<IntVector> {
    let (plo, phi) = p.bounding_box();
    let (qlo, qhi) = q.bounding_box();
    // p and q + k can only share interior if k lies strictly inside p - q.
    let lo = sub(plo, qhi);
    let hi = sub(phi, qlo);
    let candidates = integer_points_open(&lo, &hi);
    let hits = map_slice(exec, &candidates, |k| {
        interior_overlap(p, &q.translate_int(k))
    });
    candidates
        .into_iter()
        .zip(hits)
        .filter_map(|(k, hit)| hit.then_some(k))
        .collect()
}
