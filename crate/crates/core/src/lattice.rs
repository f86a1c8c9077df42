//! Shifted lattices, the union `Λ` of their dual lattices, membership sets,
//! shift groupings, and covering (periodization) functions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{linear_image, Band, ConvexPolytope, Parallelotope, RatBox};
use crate::parallel::{map_range, map_slice, Execution};
use crate::rational::{
    integer_points, integer_points_closed, is_integer_vector, is_zero_vector, sub, to_f64,
    vec_to_f64, IntVector, RatMatrix, RatVector, Rational,
};

/// Translation part of a sample set. Irrational shifts are carried as
/// floating point and demote every verdict that touches them to numeric.
#[derive(Debug, Clone, PartialEq)]
pub enum Shift {
    Exact(RatVector),
    Numeric(Vec<f64>),
}

impl Shift {
    pub fn zero(dim: usize) -> Self {
        Shift::Exact(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        match self {
            Shift::Exact(v) => v.len(),
            Shift::Numeric(v) => v.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Shift::Exact(_))
    }

    pub fn exact(&self) -> Option<&RatVector> {
        match self {
            Shift::Exact(v) => Some(v),
            Shift::Numeric(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Shift::Exact(v) => is_zero_vector(v),
            Shift::Numeric(v) => v.iter().all(|x| *x == 0.0),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Shift::Exact(v) => vec_to_f64(v),
            Shift::Numeric(v) => v.clone(),
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shift::Exact(v) => f.write_str(&crate::rational::format_vector(v)),
            Shift::Numeric(v) => write!(f, "{v:?}"),
        }
    }
}

/// Sample set `{ A z + β : z ∈ ℤ^d }`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedLattice {
    matrix: RatMatrix,
    dual: RatMatrix,
    abs_det: Rational,
    shift: Shift,
}

impl ShiftedLattice {
    pub fn new(matrix: RatMatrix, shift: Shift) -> Result<Self> {
        if shift.dim() != matrix.dim() {
            return Err(Error::DimensionMismatch {
                expected: matrix.dim(),
                found: shift.dim(),
            });
        }
        let dual = matrix.dual()?;
        let abs_det = matrix.abs_det();
        Ok(Self {
            matrix,
            dual,
            abs_det,
            shift,
        })
    }

    pub fn unshifted(matrix: RatMatrix) -> Result<Self> {
        let d = matrix.dim();
        Self::new(matrix, Shift::zero(d))
    }

    pub fn exact(matrix: RatMatrix, shift: RatVector) -> Result<Self> {
        Self::new(matrix, Shift::Exact(shift))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// `A' = (A^T)^{-1}`.
    pub fn dual(&self) -> &RatMatrix {
        &self.dual
    }

    pub fn abs_det(&self) -> &Rational {
        &self.abs_det
    }

    /// `|det A|^{-1}`, the tight frame constant of this lattice alone.
    pub fn density(&self) -> Rational {
        Rational::one() / &self.abs_det
    }

    pub fn shift(&self) -> &Shift {
        &self.shift
    }

    pub fn with_shift(&self, shift: Shift) -> Result<Self> {
        Self::new(self.matrix.clone(), shift)
    }

    /// Whether `alpha` lies in the dual lattice `A' ℤ^d`, i.e. `A^T alpha ∈ ℤ^d`.
    pub fn dual_contains(&self, alpha: &[Rational]) -> bool {
        is_integer_vector(&self.matrix.transpose().mul_vec(alpha))
    }
}

/// Ordered family of shifted lattices sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSystem {
    lattices: Vec<ShiftedLattice>,
}

impl LatticeSystem {
    pub fn new(lattices: Vec<ShiftedLattice>) -> Result<Self> {
        let first = lattices.first().ok_or(Error::EmptySystem)?;
        let d = first.dim();
        if let Some(l) = lattices.iter().find(|l| l.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: l.dim(),
            });
        }
        Ok(Self { lattices })
    }

    pub fn dim(&self) -> usize {
        self.lattices[0].dim()
    }

    pub fn len(&self) -> usize {
        self.lattices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattices.is_empty()
    }

    pub fn lattices(&self) -> &[ShiftedLattice] {
        &self.lattices
    }

    pub fn get(&self, j: usize) -> &ShiftedLattice {
        &self.lattices[j]
    }

    pub fn iter(&self) -> impl Iterator<Item = &ShiftedLattice> {
        self.lattices.iter()
    }

    pub fn shifts(&self) -> Vec<Shift> {
        self.lattices.iter().map(|l| l.shift.clone()).collect()
    }

    pub fn is_unshifted(&self) -> bool {
        self.lattices.iter().all(|l| l.shift.is_zero())
    }

    pub fn is_exact(&self) -> bool {
        self.lattices.iter().all(|l| l.shift.is_exact())
    }

    /// The common matrix if every lattice uses the same one.
    pub fn single_matrix(&self) -> Option<&RatMatrix> {
        let m = &self.lattices[0].matrix;
        self.lattices.iter().all(|l| &l.matrix == m).then_some(m)
    }

    /// `Σ_j |det A_j|^{-1}`.
    pub fn total_density(&self) -> Rational {
        self.lattices
            .iter()
            .fold(Rational::zero(), |acc, l| acc + l.density())
    }

    /// Indices `j` with `A_j^T alpha ∈ ℤ^d`.
    pub fn members(&self, alpha: &[Rational]) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.lattices[j].dual_contains(alpha))
            .collect()
    }

    /// Same system with every shift replaced by zero.
    pub fn without_shifts(&self) -> Self {
        Self {
            lattices: self
                .lattices
                .iter()
                .map(|l| {
                    l.with_shift(Shift::zero(l.dim()))
                        .expect("dimension unchanged")
                })
                .collect(),
        }
    }
}

/// A point `α ∈ Λ` together with its membership set `𝒫_α` (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPointInfo {
    pub alpha: RatVector,
    pub members: Vec<usize>,
}

/// All `α ∈ Λ` in the closed box `window`, sorted and deduplicated exactly.
pub fn enumerate_lambda(sys: &LatticeSystem, window: &RatBox) -> Vec<DualPointInfo> {
    dual_points(sys, window.lower(), window.upper(), BoxKind::Closed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BoxKind {
    Open,
    Closed,
}

fn in_box(alpha: &[Rational], lo: &[Rational], hi: &[Rational], kind: BoxKind) -> bool {
    alpha
        .iter()
        .zip(lo.iter().zip(hi))
        .all(|(a, (l, h))| match kind {
            BoxKind::Open => l < a && a < h,
            BoxKind::Closed => l <= a && a <= h,
        })
}

fn dual_points(
    sys: &LatticeSystem,
    lo: &[Rational],
    hi: &[Rational],
    kind: BoxKind,
) -> Vec<DualPointInfo> {
    let d = sys.dim();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    let per_lattice: Vec<Vec<RatVector>> = map_range(Execution::default(), sys.len(), |j| {
        let lat = sys.get(j);
        // α = A' z in the box  <=>  z = A^T α ∈ A^T · box.
        let at = lat.matrix().transpose();
        let (zlo, zhi) = image_bounds(&at, lo, hi);
        let candidates = integer_points_closed(&zlo, &zhi);
        candidates
            .iter()
            .map(|z| lat.dual().mul_int_vec(z))
            .filter(|alpha| in_box(alpha, lo, hi, kind))
            .collect()
    });
    let mut points: BTreeMap<RatVector, ()> = BTreeMap::new();
    for alpha in per_lattice.into_iter().flatten() {
        debug_assert_eq!(alpha.len(), d);
        points.insert(alpha, ());
    }
    points
        .into_keys()
        .map(|alpha| {
            let members = sys.members(&alpha);
            DualPointInfo { alpha, members }
        })
        .collect()
}

/// Bounds of `{ M x : lo <= x <= hi }`.
fn image_bounds(m: &RatMatrix, lo: &[Rational], hi: &[Rational]) -> (RatVector, RatVector) {
    let d = m.dim();
    let mut out_lo = Vec::with_capacity(d);
    let mut out_hi = Vec::with_capacity(d);
    for r in 0..d {
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        for c in 0..d {
            let p = m.get(r, c) * &lo[c];
            let q = m.get(r, c) * &hi[c];
            if p <= q {
                a += p;
                b += q;
            } else {
                a += q;
                b += p;
            }
        }
        out_lo.push(a);
        out_hi.push(b);
    }
    (out_lo, out_hi)
}

/// Every `α ∈ Λ` with `measure(E ∩ (F + α)) > 0`. The origin is reported only
/// when `include_zero` is set.
pub fn overlap_shifts_band(
    e: &Band,
    f: &Band,
    sys: &LatticeSystem,
    include_zero: bool,
) -> Result<Vec<DualPointInfo>> {
    for b in [e, f] {
        if b.dim() != sys.dim() {
            return Err(Error::DimensionMismatch {
                expected: sys.dim(),
                found: b.dim(),
            });
        }
    }
    let (Some((elo, ehi)), Some((flo, fhi))) = (e.bounding_box(), f.bounding_box()) else {
        return Ok(Vec::new());
    };
    let lo = sub(&elo, &fhi);
    let hi = sub(&ehi, &flo);
    let candidates = dual_points(sys, &lo, &hi, BoxKind::Open);
    let keep = map_slice(Execution::default(), &candidates, |info| {
        (include_zero || !is_zero_vector(&info.alpha)) && e.overlaps_translate(f, &info.alpha)
    });
    Ok(candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect())
}

/// Grouping key for shift differences. Numeric keys come from irrational
/// shifts and are matched up to a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub enum ShiftKey {
    Exact(RatVector),
    Numeric(Vec<f64>),
}

impl ShiftKey {
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            ShiftKey::Exact(v) => vec_to_f64(v),
            ShiftKey::Numeric(v) => v.clone(),
        }
    }

    fn matches(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (ShiftKey::Exact(a), ShiftKey::Exact(b)) => a == b,
            _ => self
                .to_f64()
                .iter()
                .zip(other.to_f64())
                .all(|(a, b)| (a - b).abs() <= tol),
        }
    }
}

impl fmt::Display for ShiftKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftKey::Exact(v) => f.write_str(&crate::rational::format_vector(v)),
            ShiftKey::Numeric(v) => write!(f, "{v:?}"),
        }
    }
}

/// One class of a shift-difference partition.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftGroup {
    pub key: ShiftKey,
    pub members: Vec<usize>,
}

/// Partition of a membership set by shift difference. Groups are ordered by
/// their smallest member.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftGroups {
    pub groups: Vec<ShiftGroup>,
    /// False when any key came from an irrational shift.
    pub exact: bool,
}

/// Default tolerance for matching numeric shift differences.
pub const NUMERIC_KEY_TOLERANCE: f64 = 1e-9;

fn difference(a: &Shift, b: &Shift) -> ShiftKey {
    match (a, b) {
        (Shift::Exact(x), Shift::Exact(y)) => ShiftKey::Exact(sub(x, y)),
        _ => ShiftKey::Numeric(
            a.to_f64()
                .iter()
                .zip(b.to_f64())
                .map(|(x, y)| x - y)
                .collect(),
        ),
    }
}

fn transform_shift(m: &RatMatrix, s: &Shift) -> Shift {
    match s {
        Shift::Exact(v) => Shift::Exact(m.mul_vec(v)),
        Shift::Numeric(v) => {
            let mf = m.to_f64();
            Shift::Numeric(
                mf.iter()
                    .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                    .collect(),
            )
        }
    }
}

/// Partitions `members` by the key of each index.
pub fn group_by_key(members: &[usize], keys: &[ShiftKey], tol: f64) -> ShiftGroups {
    let mut groups: Vec<ShiftGroup> = Vec::new();
    let mut exact = true;
    for &j in members {
        let key = &keys[j];
        exact &= matches!(key, ShiftKey::Exact(_));
        match groups.iter_mut().find(|g| g.key.matches(key, tol)) {
            Some(g) => g.members.push(j),
            None => groups.push(ShiftGroup {
                key: key.clone(),
                members: vec![j],
            }),
        }
    }
    ShiftGroups { groups, exact }
}

/// Groups `𝒫_α` by `q = γ_j - β_j` (the classes `I_{q,α}`).
pub fn group_shifts(info: &DualPointInfo, betas: &[Shift], gammas: &[Shift]) -> ShiftGroups {
    let keys: Vec<ShiftKey> = betas
        .iter()
        .zip(gammas)
        .map(|(b, g)| difference(g, b))
        .collect();
    group_by_key(&info.members, &keys, NUMERIC_KEY_TOLERANCE)
}

/// Groups all indices by `q = B^{-1} γ_j - A^{-1} β_j` (the classes `J_q`).
pub fn group_shifts_paired(
    a: &RatMatrix,
    betas: &[Shift],
    b: &RatMatrix,
    gammas: &[Shift],
) -> Result<ShiftGroups> {
    let ainv = a.inverse()?;
    let binv = b.inverse()?;
    let keys: Vec<ShiftKey> = betas
        .iter()
        .zip(gammas)
        .map(|(beta, gamma)| {
            difference(
                &transform_shift(&binv, gamma),
                &transform_shift(&ainv, beta),
            )
        })
        .collect();
    let all: Vec<usize> = (0..keys.len()).collect();
    Ok(group_by_key(&all, &keys, NUMERIC_KEY_TOLERANCE))
}

/// Region of a covering-function cell inside the unit cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellRegion {
    Box(RatBox),
    Polytope(ConvexPolytope),
}

impl CellRegion {
    pub fn volume(&self) -> Rational {
        match self {
            CellRegion::Box(b) => b.volume(),
            CellRegion::Polytope(p) => p.volume(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCell {
    pub region: CellRegion,
    pub count: u32,
}

/// `ξ ↦ Σ_m χ_E(A'(ξ + m))` on the unit cube, i.e. the periodization of
/// `χ_{A^T E}`. Cells are pairwise interior-disjoint and tile the cube.
#[derive(Debug, Clone)]
pub struct CoveringFunction {
    dim: usize,
    pieces: Vec<Parallelotope>,
    cells: Vec<CoverCell>,
}

impl CoveringFunction {
    pub fn cells(&self) -> &[CoverCell] {
        &self.cells
    }

    pub fn ess_sup(&self) -> u32 {
        self.cells.iter().map(|c| c.count).max().unwrap_or(0)
    }

    /// Exact integral over the unit cube.
    pub fn integral(&self) -> Rational {
        self.cells
            .iter()
            .filter(|c| c.count > 0)
            .fold(Rational::zero(), |acc, c| {
                acc + c.region.volume() * Rational::from_integer(c.count.into())
            })
    }

    /// Exact value at `xi`, counted directly from the half-open pieces.
    pub fn value_at(&self, xi: &[Rational]) -> u32 {
        let mut count = 0;
        for p in &self.pieces {
            let (lo, hi) = p.bounding_box();
            // ξ + m ∈ P needs lo - ξ <= m <= hi - ξ.
            let ms = integer_points_closed(&sub(lo, xi), &sub(hi, xi));
            for m in ms {
                let y: RatVector = xi
                    .iter()
                    .zip(&m)
                    .map(|(x, k)| x + Rational::from_integer(k.clone()))
                    .collect();
                if p.contains(&y) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Builds the covering function of `E` for the lattice `A ℤ^d` (the shift
/// plays no role).
pub fn covering_function(e: &Band, lattice: &ShiftedLattice) -> Result<CoveringFunction> {
    let d = lattice.dim();
    if e.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: e.dim(),
        });
    }
    let at = lattice.matrix().transpose();
    let pieces = linear_image(e, &at, &vec![Rational::zero(); d])?;

    // Integer translates m with (P - m) meeting the open unit cube.
    let mut folded: Vec<(usize, IntVector)> = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        let (lo, hi) = p.bounding_box();
        let mlo: IntVector = lo.iter().map(|l| l.floor().to_integer()).collect();
        let mhi: IntVector = hi
            .iter()
            .map(|h| h.ceil().to_integer() - BigInt::one())
            .collect();
        for m in integer_points(&mlo, &mhi) {
            folded.push((i, m));
        }
    }

    let cells = if at.is_diagonal() {
        box_arrangement(d, &pieces, &folded)
    } else {
        polytope_arrangement(d, &pieces, &folded)
    };
    Ok(CoveringFunction {
        dim: d,
        pieces,
        cells,
    })
}

fn box_arrangement(
    d: usize,
    pieces: &[Parallelotope],
    folded: &[(usize, IntVector)],
) -> Vec<CoverCell> {
    let unit = RatBox::unit_cube(d);
    let boxes: Vec<RatBox> = folded
        .iter()
        .filter_map(|(i, m)| {
            let b = pieces[*i].as_box().expect("diagonal image is a box");
            let neg: RatVector = m
                .iter()
                .map(|k| -Rational::from_integer(k.clone()))
                .collect();
            b.translate(&neg).intersect(&unit)
        })
        .collect();
    let breaks: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut v = vec![Rational::zero(), Rational::one()];
            for b in &boxes {
                v.push(b.lower()[i].clone());
                v.push(b.upper()[i].clone());
            }
            v.sort();
            v.dedup();
            v
        })
        .collect();
    let shape: Vec<usize> = breaks.iter().map(|b| b.len() - 1).collect();
    let lo: IntVector = vec![BigInt::zero(); d];
    let hi: IntVector = shape.iter().map(|n| BigInt::from(*n as i64 - 1)).collect();
    integer_points(&lo, &hi)
        .into_iter()
        .map(|idx| {
            let idx: Vec<usize> = idx.iter().map(|k| usize::try_from(k).unwrap()).collect();
            let cell = RatBox::new(
                (0..d).map(|i| breaks[i][idx[i]].clone()).collect(),
                (0..d).map(|i| breaks[i][idx[i] + 1].clone()).collect(),
            )
            .expect("grid cell is nonempty");
            let count = boxes.iter().filter(|b| b.contains(cell.lower())).count() as u32;
            CoverCell {
                region: CellRegion::Box(cell),
                count,
            }
        })
        .collect()
}

fn polytope_arrangement(
    d: usize,
    pieces: &[Parallelotope],
    folded: &[(usize, IntVector)],
) -> Vec<CoverCell> {
    struct Cell {
        region: ConvexPolytope,
        count: u32,
        lo: RatVector,
        hi: RatVector,
    }
    fn cell(region: ConvexPolytope, count: u32) -> Cell {
        let region = region.without_redundant();
        let (lo, hi) = region
            .bounding_box()
            .expect("cells are bounded with interior");
        Cell {
            region,
            count,
            lo,
            hi,
        }
    }

    let cube = ConvexPolytope::unit_cube(d);
    let mut cells = vec![cell(cube.clone(), 0)];
    for (i, m) in folded {
        let neg: RatVector = m
            .iter()
            .map(|k| -Rational::from_integer(k.clone()))
            .collect();
        let piece = pieces[*i].polytope().translate(&neg);
        let (plo, phi) = pieces[*i].bounding_box();
        let plo = sub(
            plo,
            &m.iter()
                .cloned()
                .map(Rational::from_integer)
                .collect::<Vec<_>>(),
        );
        let phi = sub(
            phi,
            &m.iter()
                .cloned()
                .map(Rational::from_integer)
                .collect::<Vec<_>>(),
        );
        if !piece.intersection(&cube).has_interior() {
            continue;
        }
        let mut next = Vec::with_capacity(cells.len() + 4);
        for c in cells {
            let apart = (0..d).any(|k| c.hi[k] <= plo[k] || phi[k] <= c.lo[k]);
            if apart {
                next.push(c);
                continue;
            }
            let inside = c.region.intersection(&piece);
            if !inside.has_interior() {
                next.push(c);
                continue;
            }
            let mut rest = c.region;
            for h in piece.halfspaces() {
                let outside = rest.with(h.complement());
                if outside.has_interior() {
                    next.push(cell(outside, c.count));
                    rest = rest.with(h.clone());
                }
            }
            next.push(cell(inside, c.count + 1));
        }
        cells = next;
    }
    cells
        .into_iter()
        .map(|c| CoverCell {
            region: CellRegion::Polytope(c.region),
            count: c.count,
        })
        .collect()
}

/// Brute-force check used by tests: value of the covering function at a
/// floating-point point.
pub fn covering_value_f64(e: &Band, lattice: &ShiftedLattice, xi: &[f64]) -> u32 {
    let dual = lattice.dual().to_f64();
    let d = xi.len();
    let mut count = 0;
    // Enumerate m with A'(ξ + m) in the bounding box of E.
    let Some((lo, hi)) = e.bounding_box() else {
        return 0;
    };
    let at = lattice.matrix().transpose();
    let (mlo, mhi) = image_bounds(&at, &lo, &hi);
    let xi_r: Vec<Rational> = xi
        .iter()
        .map(|x| Rational::from_float(*x).expect("finite"))
        .collect();
    for m in integer_points_closed(&sub(&mlo, &xi_r), &sub(&mhi, &xi_r)) {
        let y: Vec<f64> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| dual[r][c] * (xi[c] + to_f64(&Rational::from_integer(m[c].clone()))))
                    .sum()
            })
            .collect();
        if e.boxes().iter().any(|b| b.contains_f64(&y)) {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn lat1(a: Rational, b: Rational) -> ShiftedLattice {
        ShiftedLattice::exact(RatMatrix::scalar(a), vec![b]).unwrap()
    }

    fn band1(a: Rational, b: Rational) -> Band {
        Band::from_box(RatBox::interval(a, b).unwrap())
    }

    fn alphas(infos: &[DualPointInfo]) -> Vec<RatVector> {
        infos.iter().map(|i| i.alpha.clone()).collect()
    }

    #[test]
    fn lambda_for_integer_and_half_integer_duals() {
        let sys = LatticeSystem::new(vec![lat1(int(1), int(0)), lat1(int(2), int(0))]).unwrap();
        let window = RatBox::interval(int(-1), int(1)).unwrap();
        let pts = enumerate_lambda(&sys, &window);
        assert_eq!(
            alphas(&pts),
            vec![
                vec![int(-1)],
                vec![rat(-1, 2)],
                vec![int(0)],
                vec![rat(1, 2)],
                vec![int(1)]
            ]
        );
        let half = pts.iter().find(|p| p.alpha == vec![rat(1, 2)]).unwrap();
        assert_eq!(half.members, vec![1]);
        let zero = pts.iter().find(|p| p.alpha == vec![int(0)]).unwrap();
        assert_eq!(zero.members, vec![0, 1]);
    }

    #[test]
    fn shift_groupings() {
        let info = DualPointInfo {
            alpha: vec![int(1)],
            members: vec![0, 1],
        };
        let ex = |v: Rational| Shift::Exact(vec![v]);
        let betas = [ex(int(0)), ex(rat(1, 2))];
        let g = group_shifts(&info, &betas, &[ex(rat(1, 2)), ex(int(0))]);
        assert!(g.exact);
        assert_eq!(g.groups.len(), 2);
        assert_eq!(g.groups[0].key, ShiftKey::Exact(vec![rat(1, 2)]));
        assert_eq!(g.groups[0].members, vec![0]);
        assert_eq!(g.groups[1].key, ShiftKey::Exact(vec![rat(-1, 2)]));
        assert_eq!(g.groups[1].members, vec![1]);

        let same = group_shifts(&info, &betas, &betas);
        assert_eq!(same.groups.len(), 1);
        assert_eq!(same.groups[0].key, ShiftKey::Exact(vec![int(0)]));

        let modified = group_shifts(&info, &betas, &[ex(rat(1, 2)), ex(int(1))]);
        assert_eq!(modified.groups.len(), 1);
        assert_eq!(modified.groups[0].members, vec![0, 1]);
        assert_eq!(modified.groups[0].key, ShiftKey::Exact(vec![rat(1, 2)]));
    }

    #[test]
    fn irrational_shift_grouping_is_flagged() {
        let info = DualPointInfo {
            alpha: vec![int(1)],
            members: vec![0, 1],
        };
        let betas = [
            Shift::Numeric(vec![2f64.sqrt()]),
            Shift::Exact(vec![int(0)]),
        ];
        let gammas = [
            Shift::Exact(vec![int(0)]),
            Shift::Numeric(vec![-(2f64.sqrt())]),
        ];
        let g = group_shifts(&info, &betas, &gammas);
        assert!(!g.exact);
        assert_eq!(g.groups.len(), 1);
    }

    #[test]
    fn covering_functions_in_one_dimension() {
        let c = covering_function(&band1(int(0), int(1)), &lat1(int(1), int(0))).unwrap();
        assert_eq!(c.ess_sup(), 1);
        assert!(c.cells().iter().all(|cell| cell.count == 1));

        let c = covering_function(&band1(rat(-1, 2), rat(1, 2)), &lat1(int(2), int(0))).unwrap();
        assert_eq!(c.ess_sup(), 2);
        assert!(c.cells().iter().all(|cell| cell.count == 2));
        assert_eq!(c.integral(), int(2));

        let c = covering_function(&band1(int(0), rat(1, 2)), &lat1(int(1), int(0))).unwrap();
        assert_eq!(c.value_at(&[rat(1, 4)]), 1);
        assert_eq!(c.value_at(&[rat(3, 4)]), 0);
        assert_eq!(c.value_at(&[rat(1, 2)]), 0);
        assert_eq!(c.integral(), rat(1, 2));
        let expected = vec![
            CoverCell {
                region: CellRegion::Box(RatBox::interval(int(0), rat(1, 2)).unwrap()),
                count: 1,
            },
            CoverCell {
                region: CellRegion::Box(RatBox::interval(rat(1, 2), int(1)).unwrap()),
                count: 0,
            },
        ];
        assert_eq!(c.cells(), expected.as_slice());
    }

    #[test]
    fn covering_function_for_a_shear() {
        let shear = RatMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(2)]]).unwrap();
        let lat = ShiftedLattice::unshifted(shear).unwrap();
        let e = Band::unit_cube(2);
        let c = covering_function(&e, &lat).unwrap();
        assert_eq!(c.integral(), int(2));
        assert_eq!(c.ess_sup(), 2);
    }

    #[test]
    fn overlap_shift_examples() {
        let a2 = LatticeSystem::new(vec![lat1(int(2), int(0)), lat1(int(2), int(0))]).unwrap();
        let shannon = band1(rat(-1, 2), rat(1, 2));
        let pts = overlap_shifts_band(&shannon, &shannon, &a2, false).unwrap();
        assert_eq!(alphas(&pts), vec![vec![rat(-1, 2)], vec![rat(1, 2)]]);

        let a1 = LatticeSystem::new(vec![lat1(int(1), int(0)), lat1(int(1), int(0))]).unwrap();
        let pts = overlap_shifts_band(&band1(int(0), int(1)), &band1(int(-1), int(0)), &a1, true)
            .unwrap();
        assert_eq!(alphas(&pts), vec![vec![int(1)]]);
        assert_eq!(pts[0].members, vec![0, 1]);

        // E ∩ (F + α) with F = [5, 6) lands on [0, 1) only for α = -5.
        let single = LatticeSystem::new(vec![lat1(int(1), int(0))]).unwrap();
        let pts = overlap_shifts_band(
            &band1(int(0), int(1)),
            &band1(int(5), int(6)),
            &single,
            true,
        )
        .unwrap();
        assert_eq!(alphas(&pts), vec![vec![int(-5)]]);
    }
}
