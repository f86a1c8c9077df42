use num_traits::{One, Signed, Zero};

use crate::lp::{maximize, LpOutcome};
use crate::rational::{dot, RatVector, Rational};

/// Closed half-space `normal · y <= offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub normal: RatVector,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: RatVector, offset: Rational) -> Self {
        Self { normal, offset }
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        dot(&self.normal, y) <= self.offset
    }

    pub fn complement(&self) -> Self {
        Self {
            normal: self.normal.iter().map(|a| -a).collect(),
            offset: -&self.offset,
        }
    }

    /// Positive rescaling so the first nonzero normal entry has magnitude one.
    fn normalized(&self) -> Option<Self> {
        let lead = self.normal.iter().find(|a| !a.is_zero())?.abs();
        Some(Self {
            normal: self.normal.iter().map(|a| a / &lead).collect(),
            offset: &self.offset / &lead,
        })
    }
}

/// Convex polytope in half-space form. Only the interior matters for every
/// predicate here, so open and closed faces are not distinguished.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexPolytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
}

impl ConvexPolytope {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Self {
        Self { dim, halfspaces }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    /// Adds a constraint unless an identical one is already present.
    pub fn with(&self, h: HalfSpace) -> Self {
        let mut halfspaces = self.halfspaces.clone();
        if !halfspaces.contains(&h) {
            halfspaces.push(h);
        }
        Self {
            dim: self.dim,
            halfspaces,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .chain(&other.halfspaces)
                .cloned()
                .collect(),
        }
    }

    /// `{ y + v : y in self }`.
    pub fn translate(&self, v: &[Rational]) -> Self {
        Self {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| HalfSpace::new(h.normal.clone(), &h.offset + dot(&h.normal, v)))
                .collect(),
        }
    }

    /// The closed unit cube `[0,1]^d`.
    pub fn unit_cube(dim: usize) -> Self {
        let mut halfspaces = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut e = vec![Rational::zero(); dim];
            e[i] = Rational::one();
            halfspaces.push(HalfSpace::new(
                e.iter().map(|a| -a).collect(),
                Rational::zero(),
            ));
            halfspaces.push(HalfSpace::new(e, Rational::one()));
        }
        Self { dim, halfspaces }
    }

    pub fn contains_closed(&self, y: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(y))
    }

    /// Largest uniform slack `t` (capped at one) such that some point satisfies
    /// every constraint with margin `t`, together with that point.
    pub fn max_slack(&self) -> (Rational, RatVector) {
        let d = self.dim;
        let mut rows = Vec::with_capacity(self.halfspaces.len() + 1);
        let mut rhs = Vec::with_capacity(self.halfspaces.len() + 1);
        for h in &self.halfspaces {
            let mut row = h.normal.clone();
            row.push(Rational::one());
            rows.push(row);
            rhs.push(h.offset.clone());
        }
        let mut cap = vec![Rational::zero(); d];
        cap.push(Rational::one());
        rows.push(cap);
        rhs.push(Rational::one());

        let origin = vec![Rational::zero(); d];
        let t0 = self
            .halfspaces
            .iter()
            .map(|h| &h.offset - dot(&h.normal, &origin))
            .fold(Rational::one(), |acc, s| if s < acc { s } else { acc });
        let mut start = origin;
        start.push(t0);
        let mut objective = vec![Rational::zero(); d];
        objective.push(Rational::one());
        match maximize(&objective, &rows, &rhs, &start) {
            LpOutcome::Optimal { value, mut point } => {
                point.pop();
                (value, point)
            }
            LpOutcome::Unbounded => unreachable!("slack is capped at one"),
        }
    }

    /// Whether the open interior is nonempty.
    pub fn has_interior(&self) -> bool {
        self.max_slack().0.is_positive()
    }

    pub fn interior_point(&self) -> Option<RatVector> {
        let (t, p) = self.max_slack();
        t.is_positive().then_some(p)
    }

    /// Exact axis bounds of a bounded polytope with nonempty interior.
    pub fn bounding_box(&self) -> Option<(RatVector, RatVector)> {
        let start = self.interior_point()?;
        let rows: Vec<RatVector> = self.halfspaces.iter().map(|h| h.normal.clone()).collect();
        let rhs: Vec<Rational> = self.halfspaces.iter().map(|h| h.offset.clone()).collect();
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut e = vec![Rational::zero(); self.dim];
            for (sign, out) in [(Rational::one(), &mut hi), (-Rational::one(), &mut lo)] {
                e[i] = sign.clone();
                match maximize(&e, &rows, &rhs, &start) {
                    LpOutcome::Optimal { value, .. } => out.push(value * &sign),
                    LpOutcome::Unbounded => return None,
                }
            }
        }
        Some((lo, hi))
    }

    /// Drops constraints implied by the others.
    pub fn without_redundant(&self) -> Self {
        let Some(start) = self.interior_point() else {
            return self.clone();
        };
        let mut kept: Vec<HalfSpace> = Vec::new();
        for h in &self.halfspaces {
            if !kept.contains(h) {
                kept.push(h.clone());
            }
        }
        let mut i = 0;
        while i < kept.len() {
            let others: Vec<&HalfSpace> = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h)
                .collect();
            let rows: Vec<RatVector> = others.iter().map(|h| h.normal.clone()).collect();
            let rhs: Vec<Rational> = others.iter().map(|h| h.offset.clone()).collect();
            let redundant = match maximize(&kept[i].normal, &rows, &rhs, &start) {
                LpOutcome::Optimal { value, .. } => value <= kept[i].offset,
                LpOutcome::Unbounded => false,
            };
            if redundant {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Self {
            dim: self.dim,
            halfspaces: kept,
        }
    }

    /// Exact volume by the recursive facet formula
    /// `vol_d(P) = (1/d) Σ_i b_i · vol_{d-1}(proj_k F_i) / |a_ik|`.
    ///
    /// Cost grows like `m^d` in the number of constraints, so this is only
    /// meant for the low-dimensional cells of a covering arrangement.
    pub fn volume(&self) -> Rational {
        if !self.has_interior() {
            return Rational::zero();
        }
        let mut hs: Vec<HalfSpace> = self
            .halfspaces
            .iter()
            .filter_map(HalfSpace::normalized)
            .collect();
        hs.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
        hs.dedup();

        if self.dim == 1 {
            let mut lo: Option<Rational> = None;
            let mut hi: Option<Rational> = None;
            for h in &hs {
                let bound = &h.offset / &h.normal[0];
                if h.normal[0].is_positive() {
                    if hi.as_ref().is_none_or(|x| bound < *x) {
                        hi = Some(bound);
                    }
                } else if lo.as_ref().is_none_or(|x| bound > *x) {
                    lo = Some(bound);
                }
            }
            let (Some(lo), Some(hi)) = (lo, hi) else {
                panic!("volume of an unbounded polytope");
            };
            return hi - lo;
        }

        let mut total = Rational::zero();
        for (i, facet) in hs.iter().enumerate() {
            if facet.offset.is_zero() {
                continue;
            }
            let k = facet
                .normal
                .iter()
                .position(|a| !a.is_zero())
                .expect("normalized half-space has a nonzero entry");
            // After normalization facet.normal[k] = ±1; solve for y_k on the facet.
            let ak = facet.normal[k].clone();
            let projected: Vec<HalfSpace> = hs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| {
                    let ratio = &h.normal[k] / &ak;
                    let normal: RatVector = (0..self.dim)
                        .filter(|&l| l != k)
                        .map(|l| &h.normal[l] - &ratio * &facet.normal[l])
                        .collect();
                    HalfSpace::new(normal, &h.offset - &ratio * &facet.offset)
                })
                .collect();
            let sub = ConvexPolytope::new(self.dim - 1, projected);
            total += &facet.offset * sub.volume() / ak.abs();
        }
        total / Rational::from_integer(self.dim.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn unit_square() -> ConvexPolytope {
        ConvexPolytope::new(
            2,
            vec![
                HalfSpace::new(vec![int(-1), int(0)], int(0)),
                HalfSpace::new(vec![int(1), int(0)], int(1)),
                HalfSpace::new(vec![int(0), int(-1)], int(0)),
                HalfSpace::new(vec![int(0), int(1)], int(1)),
            ],
        )
    }

    #[test]
    fn square_volume_and_interior() {
        let sq = unit_square();
        assert!(sq.has_interior());
        assert_eq!(sq.volume(), int(1));
    }

    #[test]
    fn triangle_volume_with_redundant_constraint() {
        // x >= 0, y >= 0, x + y <= 1, plus redundant x <= 5.
        let tri = ConvexPolytope::new(
            2,
            vec![
                HalfSpace::new(vec![int(-1), int(0)], int(0)),
                HalfSpace::new(vec![int(0), int(-1)], int(0)),
                HalfSpace::new(vec![int(1), int(1)], int(1)),
                HalfSpace::new(vec![int(1), int(0)], int(5)),
            ],
        );
        assert_eq!(tri.volume(), rat(1, 2));
    }

    #[test]
    fn triangle_bounding_box() {
        let tri = ConvexPolytope::new(
            2,
            vec![
                HalfSpace::new(vec![int(-1), int(0)], int(0)),
                HalfSpace::new(vec![int(0), int(-1)], int(0)),
                HalfSpace::new(vec![int(1), int(2)], int(1)),
            ],
        );
        assert_eq!(
            tri.bounding_box(),
            Some((vec![int(0), int(0)], vec![int(1), rat(1, 2)]))
        );
        let half_plane = ConvexPolytope::new(2, vec![HalfSpace::new(vec![int(1), int(0)], int(0))]);
        assert_eq!(half_plane.bounding_box(), None);
    }

    #[test]
    fn redundant_constraints_are_dropped() {
        let sq = unit_square()
            .with(HalfSpace::new(vec![int(1), int(1)], int(3)))
            .with(HalfSpace::new(vec![int(1), int(0)], int(2)));
        let pruned = sq.without_redundant();
        assert_eq!(pruned.halfspaces().len(), 4);
        assert_eq!(pruned.volume(), int(1));
        let cut = unit_square().with(HalfSpace::new(vec![int(1), int(1)], int(1)));
        let pruned = cut.without_redundant();
        assert_eq!(pruned.halfspaces().len(), 3);
        assert_eq!(pruned.volume(), rat(1, 2));
    }

    #[test]
    fn flat_polytope_has_no_interior() {
        let flat = unit_square().with(HalfSpace::new(vec![int(1), int(0)], int(0)));
        assert!(!flat.has_interior());
        assert_eq!(flat.volume(), int(0));
    }

    #[test]
    fn simplex_volume_in_three_dimensions() {
        let tet = ConvexPolytope::new(
            3,
            vec![
                HalfSpace::new(vec![int(-1), int(0), int(0)], int(0)),
                HalfSpace::new(vec![int(0), int(-1), int(0)], int(0)),
                HalfSpace::new(vec![int(0), int(0), int(-1)], int(0)),
                HalfSpace::new(vec![int(1), int(1), int(1)], int(2)),
            ],
        );
        assert_eq!(tet.volume(), rat(8, 6));
    }
}
