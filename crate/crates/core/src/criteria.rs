//! Decision procedures for tightness and orthogonality of sampling on unions
//! of (shifted) lattices.
//!
//! Every negative verdict carries a witness that can be re-checked on its own
//! with [`recheck_tightness_witness`] or [`recheck_orthogonality_witness`].
//! Witnesses are chosen reproducibly: the lowest lattice index first, then the
//! lexicographically smallest shift (for tightness, whose failing shifts come
//! in `±α` pairs, the representative with positive leading coordinate), then
//! the shift-difference class containing the lowest lattice index.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::cyclotomic::{decide_zero, ExponentialSum, ZeroDecision, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::geometry::{linear_image, overlap_translates, Band};
use crate::lattice::{
    covering_function, group_shifts, group_shifts_paired, overlap_shifts_band, DualPointInfo,
    LatticeSystem, Shift, ShiftGroup, ShiftKey,
};
use crate::parallel::{map_range, map_slice, Execution};
use crate::rational::{dot, format_vector, to_f64, IntVector, RatMatrix, RatVector, Rational};

/// Provenance of a verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    /// Every step was exact rational or cyclotomic arithmetic.
    Exact,
    /// Some shift was irrational; trigonometric sums were compared to zero
    /// at `tolerance`.
    Numeric { tolerance: f64 },
}

impl Mode {
    fn for_exactness(exact: bool, tolerance: f64) -> Self {
        if exact {
            Mode::Exact
        } else {
            Mode::Numeric { tolerance }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Mode::Exact)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Numeric { .. } => f.write_str("numeric"),
        }
    }
}

/// A shift `α` at which the tightness condition fails.
#[derive(Debug, Clone, PartialEq)]
pub struct TightnessWitness {
    /// Lattice whose dual contains `α` (the first member of `𝒫_α`).
    pub lattice: usize,
    pub alpha: RatVector,
    /// `A_j^T α`, the integer vector with `α = A_j' z`.
    pub z: IntVector,
    /// `𝒫_α`.
    pub members: Vec<usize>,
    /// `E ∩ (E + α)`, of positive measure.
    pub overlap: Band,
    /// The nonvanishing sum `Σ_{j∈𝒫_α} |det A_j|^{-1} e^{-2πi β_j·α}`; absent for
    /// the unshifted check, where overlap alone decides.
    pub sum: Option<ExponentialSum>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TightnessVerdict {
    pub tight: bool,
    /// `K = Σ_j K_j`, present iff tight.
    pub constant: Option<Rational>,
    /// `K_j = |det A_j|^{-1}` for every lattice.
    pub per_lattice: Vec<Rational>,
    pub witness: Option<TightnessWitness>,
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthogonalityCriterion {
    /// No shifts: per-lattice disjointness of periodized images.
    Unshifted,
    /// Shifted, `B_j = A_j` for every `j`.
    SharedMatrices,
    /// Shifted, one matrix `A` for the first system and one `B` for the second.
    SingleMatrixPair,
}

impl fmt::Display for OrthogonalityCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrthogonalityCriterion::Unshifted => "unshifted",
            OrthogonalityCriterion::SharedMatrices => "shared-matrices",
            OrthogonalityCriterion::SingleMatrixPair => "single-matrix-pair",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrthogonalityWitness {
    /// `B_j^T F` meets `A_j^T E + k` in a set of positive measure.
    Translate { lattice: usize, k: IntVector },
    /// `E ∩ (F + α)` has positive measure and the class `I_{q,α}` has a
    /// nonvanishing sum.
    DualPoint {
        alpha: RatVector,
        overlap: Band,
        group: ShiftGroup,
        sum: ExponentialSum,
    },
    /// `A^T E` meets `B^T F + m` in a set of positive measure and the class
    /// `J_q` has a nonvanishing sum.
    IntegerShift {
        m: IntVector,
        group: ShiftGroup,
        sum: ExponentialSum,
    },
}

impl OrthogonalityWitness {
    pub fn group(&self) -> Option<&ShiftGroup> {
        match self {
            OrthogonalityWitness::Translate { .. } => None,
            OrthogonalityWitness::DualPoint { group, .. }
            | OrthogonalityWitness::IntegerShift { group, .. } => Some(group),
        }
    }

    pub fn sum(&self) -> Option<&ExponentialSum> {
        match self {
            OrthogonalityWitness::Translate { .. } => None,
            OrthogonalityWitness::DualPoint { sum, .. }
            | OrthogonalityWitness::IntegerShift { sum, .. } => Some(sum),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityVerdict {
    pub orthogonal: bool,
    pub mode: Mode,
    pub criterion: OrthogonalityCriterion,
    /// Per-lattice verdicts (unshifted criterion only; empty otherwise).
    pub per_lattice: Vec<bool>,
    pub witness: Option<OrthogonalityWitness>,
}

fn check_band(b: &Band, d: usize) -> Result<()> {
    if b.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: b.dim(),
        });
    }
    Ok(())
}

fn check_lengths(a: &LatticeSystem, b: &LatticeSystem) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

fn leading_positive(v: &[Rational]) -> bool {
    v.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_positive())
}

/// Adds `coeff · e^{-2πi shift·v}` to `sum`.
fn push_phase(sum: &mut ExponentialSum, coeff: &Rational, shift: &Shift, v: &[Rational]) {
    match shift {
        Shift::Exact(s) => sum.push_exact(coeff.clone(), dot(s, v)),
        Shift::Numeric(s) => {
            let phase = s.iter().zip(v).map(|(a, b)| a * to_f64(b)).sum();
            sum.push_numeric(to_f64(coeff), phase);
        }
    }
}

/// Per-lattice essential supremum of the covering function
/// `ξ ↦ Σ_k χ_E(A_j'(ξ + k))`. Always finite for a bounded band, so the
/// sampling transform is bounded.
pub fn check_bounded(e: &Band, sys: &LatticeSystem) -> Result<Vec<Rational>> {
    check_band(e, sys.dim())?;
    let sups = map_range(Execution::default(), sys.len(), |j| {
        covering_function(e, sys.get(j)).map(|c| Rational::from_integer(c.ess_sup().into()))
    });
    sups.into_iter().collect()
}

fn tight_verdict(
    sys: &LatticeSystem,
    witness: Option<TightnessWitness>,
    mode: Mode,
) -> TightnessVerdict {
    let per_lattice: Vec<Rational> = sys.iter().map(|l| l.density()).collect();
    let tight = witness.is_none();
    TightnessVerdict {
        tight,
        constant: tight.then(|| sys.total_density()),
        per_lattice,
        witness,
        mode,
    }
}

fn make_tightness_witness(
    e: &Band,
    sys: &LatticeSystem,
    info: &DualPointInfo,
    sum: Option<ExponentialSum>,
) -> Result<TightnessWitness> {
    let lattice = info.members[0];
    let z = sys
        .get(lattice)
        .matrix()
        .transpose()
        .mul_vec(&info.alpha)
        .into_iter()
        .map(|x| x.to_integer())
        .collect();
    Ok(TightnessWitness {
        lattice,
        alpha: info.alpha.clone(),
        z,
        members: info.members.clone(),
        overlap: e.intersect(&e.translate(&info.alpha)?)?,
        sum,
    })
}

/// Picks the failing shift with positive leading coordinate that comes first
/// lexicographically (`candidates` are already sorted).
fn pick_symmetric<'a, T>(
    candidates: impl Iterator<Item = (&'a DualPointInfo, T)>,
) -> Option<(&'a DualPointInfo, T)> {
    let mut fallback = None;
    for (info, extra) in candidates {
        if leading_positive(&info.alpha) {
            return Some((info, extra));
        }
        if fallback.is_none() {
            fallback = Some((info, extra));
        }
    }
    fallback
}

/// Tightness of unshifted samples `{A_j z}` on `E`: tight iff no lattice has a
/// nonzero dual vector `α = A_j' z` with `measure(E ∩ (E + α)) > 0`, and then
/// `K = Σ_j |det A_j|^{-1}`.
pub fn check_tight_unshifted(e: &Band, sys: &LatticeSystem) -> Result<TightnessVerdict> {
    check_band(e, sys.dim())?;
    if !sys.is_unshifted() {
        return Err(Error::ShiftedSystem);
    }
    let per_j: Vec<Result<Option<TightnessWitness>>> =
        map_range(Execution::default(), sys.len(), |j| {
            let single = LatticeSystem::new(vec![sys.get(j).clone()])?;
            let pts = overlap_shifts_band(e, e, &single, false)?;
            match pick_symmetric(pts.iter().map(|p| (p, ()))) {
                None => Ok(None),
                Some((info, ())) => {
                    let full = DualPointInfo {
                        alpha: info.alpha.clone(),
                        members: sys.members(&info.alpha),
                    };
                    let mut w = make_tightness_witness(e, sys, &full, None)?;
                    w.lattice = j;
                    w.z = sys
                        .get(j)
                        .matrix()
                        .transpose()
                        .mul_vec(&info.alpha)
                        .into_iter()
                        .map(|x| x.to_integer())
                        .collect();
                    Ok(Some(w))
                }
            }
        });
    let mut witness = None;
    for w in per_j {
        if let Some(w) = w? {
            witness = Some(w);
            break;
        }
    }
    Ok(tight_verdict(sys, witness, Mode::Exact))
}

/// The tightness sum `Σ_{j∈𝒫_α} |det A_j|^{-1} e^{-2πi β_j·α}`.
pub fn tightness_sum(sys: &LatticeSystem, info: &DualPointInfo) -> ExponentialSum {
    let mut sum = ExponentialSum::new();
    for &j in &info.members {
        let lat = sys.get(j);
        push_phase(&mut sum, &lat.density(), lat.shift(), &info.alpha);
    }
    sum
}

/// Tightness of shifted samples `{A_j z + β_j}`: for every `α ∈ Λ \ {0}`
/// either `E ∩ (E + α)` is null or the tightness sum at `α` vanishes.
pub fn check_tight_shifted(e: &Band, sys: &LatticeSystem) -> Result<TightnessVerdict> {
    check_tight_shifted_tol(e, sys, DEFAULT_TOLERANCE)
}

pub fn check_tight_shifted_tol(
    e: &Band,
    sys: &LatticeSystem,
    tol: f64,
) -> Result<TightnessVerdict> {
    check_band(e, sys.dim())?;
    let pts = overlap_shifts_band(e, e, sys, false)?;
    let decisions: Vec<(ExponentialSum, ZeroDecision)> =
        map_slice(Execution::default(), &pts, |info| {
            let sum = tightness_sum(sys, info);
            let decision = decide_zero(&sum, tol);
            (sum, decision)
        });
    let failing = pts
        .iter()
        .zip(decisions)
        .filter(|(_, (_, d))| !d.is_zero())
        .map(|(info, (sum, _))| (info, sum));
    let witness = match pick_symmetric(failing) {
        Some((info, sum)) => Some(make_tightness_witness(e, sys, info, Some(sum))?),
        None => None,
    };
    Ok(tight_verdict(
        sys,
        witness,
        Mode::for_exactness(sys.is_exact(), tol),
    ))
}

/// Dispatches to the unshifted or shifted tightness check.
pub fn decide_tightness(e: &Band, sys: &LatticeSystem, tol: f64) -> Result<TightnessVerdict> {
    if sys.is_unshifted() {
        check_tight_unshifted(e, sys)
    } else {
        check_tight_shifted_tol(e, sys, tol)
    }
}

/// Integer shifts `k` with `B^T F ∩ (A^T E + k)` of positive measure.
fn periodized_overlaps(e: &Band, a: &RatMatrix, f: &Band, b: &RatMatrix) -> Result<Vec<IntVector>> {
    let d = a.dim();
    let zero = vec![Rational::zero(); d];
    let pa = linear_image(e, &a.transpose(), &zero)?;
    let pb = linear_image(f, &b.transpose(), &zero)?;
    let mut ks: Vec<IntVector> = Vec::new();
    for p in &pb {
        for q in &pa {
            ks.extend(overlap_translates(p, q));
        }
    }
    ks.sort();
    ks.dedup();
    Ok(ks)
}

/// Orthogonality of unshifted samples `{A_j z}` on `E` and `{B_j z}` on `F`:
/// orthogonal iff for every `j` the periodizations of `A_j^T E` and `B_j^T F`
/// are disjoint up to a null set.
pub fn check_orthogonal_unshifted(
    e: &Band,
    f: &Band,
    a: &LatticeSystem,
    b: &LatticeSystem,
) -> Result<OrthogonalityVerdict> {
    check_lengths(a, b)?;
    check_band(e, a.dim())?;
    check_band(f, a.dim())?;
    if !a.is_unshifted() || !b.is_unshifted() {
        return Err(Error::ShiftedSystem);
    }
    let per_j: Vec<Result<Vec<IntVector>>> = map_range(Execution::default(), a.len(), |j| {
        periodized_overlaps(e, a.get(j).matrix(), f, b.get(j).matrix())
    });
    let mut per_lattice = Vec::with_capacity(a.len());
    let mut witness = None;
    for (j, ks) in per_j.into_iter().enumerate() {
        let ks = ks?;
        per_lattice.push(ks.is_empty());
        if witness.is_none() {
            if let Some(k) = ks.into_iter().next() {
                witness = Some(OrthogonalityWitness::Translate { lattice: j, k });
            }
        }
    }
    Ok(OrthogonalityVerdict {
        orthogonal: witness.is_none(),
        mode: Mode::Exact,
        criterion: OrthogonalityCriterion::Unshifted,
        per_lattice,
        witness,
    })
}

/// `Σ_{j∈I} |det A_j|^{-1} e^{-2πi γ_j·α}` over one shift class.
pub fn shared_group_sum(
    a: &LatticeSystem,
    gammas: &[Shift],
    group: &ShiftGroup,
    alpha: &[Rational],
) -> ExponentialSum {
    let mut sum = ExponentialSum::new();
    for &j in &group.members {
        push_phase(&mut sum, &a.get(j).density(), &gammas[j], alpha);
    }
    sum
}

/// Orthogonality of `{A_j z + β_j}` on `E` and `{A_j z + γ_j}` on `F` (same
/// matrices): for every `α ∈ Λ`, the origin included, either `E ∩ (F + α)` is
/// null or every class `I_{q,α} = { j ∈ 𝒫_α : γ_j - β_j = q }` has a vanishing
/// sum `Σ |det A_j|^{-1} e^{-2πi γ_j·α}`.
pub fn check_orthogonal_shifted_shared(
    e: &Band,
    f: &Band,
    a: &LatticeSystem,
    b: &LatticeSystem,
) -> Result<OrthogonalityVerdict> {
    check_orthogonal_shifted_shared_tol(e, f, a, b, DEFAULT_TOLERANCE)
}

pub fn check_orthogonal_shifted_shared_tol(
    e: &Band,
    f: &Band,
    a: &LatticeSystem,
    b: &LatticeSystem,
    tol: f64,
) -> Result<OrthogonalityVerdict> {
    check_lengths(a, b)?;
    check_band(e, a.dim())?;
    check_band(f, a.dim())?;
    if let Some(index) = (0..a.len()).find(|&j| a.get(j).matrix() != b.get(j).matrix()) {
        return Err(Error::MatricesDiffer { index });
    }
    let betas = a.shifts();
    let gammas = b.shifts();
    let pts = overlap_shifts_band(e, f, a, true)?;
    let failures: Vec<Option<(ShiftGroup, ExponentialSum)>> =
        map_slice(Execution::default(), &pts, |info| {
            let groups = group_shifts(info, &betas, &gammas);
            groups.groups.into_iter().find_map(|g| {
                let sum = shared_group_sum(a, &gammas, &g, &info.alpha);
                (!decide_zero(&sum, tol).is_zero()).then_some((g, sum))
            })
        });
    let mut witness = None;
    for (info, failure) in pts.iter().zip(failures) {
        if let Some((group, sum)) = failure {
            witness = Some(OrthogonalityWitness::DualPoint {
                alpha: info.alpha.clone(),
                overlap: e.intersect(&f.translate(&info.alpha)?)?,
                group,
                sum,
            });
            break;
        }
    }
    Ok(OrthogonalityVerdict {
        orthogonal: witness.is_none(),
        mode: Mode::for_exactness(a.is_exact() && b.is_exact(), tol),
        criterion: OrthogonalityCriterion::SharedMatrices,
        per_lattice: Vec::new(),
        witness,
    })
}

/// `Σ_{j∈J_q} e^{-2πi γ_j·B'm}` over one shift class.
pub fn pair_group_sum(gammas: &[Shift], group: &ShiftGroup, bm: &[Rational]) -> ExponentialSum {
    let one = Rational::from_integer(1.into());
    let mut sum = ExponentialSum::new();
    for &j in &group.members {
        push_phase(&mut sum, &one, &gammas[j], bm);
    }
    sum
}

/// Orthogonality of `{A z + β_j}` on `E` and `{B z + γ_j}` on `F` (one matrix
/// per system): for every `m ∈ ℤ^d`, either `A^T E ∩ (B^T F + m)` is null or
/// every class `J_q = { j : B^{-1}γ_j - A^{-1}β_j = q }` has a vanishing sum
/// `Σ e^{-2πi γ_j·B'm}`.
pub fn check_orthogonal_shifted_pair(
    e: &Band,
    f: &Band,
    a: &LatticeSystem,
    b: &LatticeSystem,
) -> Result<OrthogonalityVerdict> {
    check_orthogonal_shifted_pair_tol(e, f, a, b, DEFAULT_TOLERANCE)
}

pub fn check_orthogonal_shifted_pair_tol(
    e: &Band,
    f: &Band,
    a: &LatticeSystem,
    b: &LatticeSystem,
    tol: f64,
) -> Result<OrthogonalityVerdict> {
    check_lengths(a, b)?;
    check_band(e, a.dim())?;
    check_band(f, a.dim())?;
    let (Some(am), Some(bm)) = (a.single_matrix(), b.single_matrix()) else {
        return Err(Error::NotSingleMatrix);
    };
    let betas = a.shifts();
    let gammas = b.shifts();
    let groups = group_shifts_paired(am, &betas, bm, &gammas)?;
    // A^T E ∩ (B^T F + m) is periodized_overlaps with the roles swapped.
    let ms = periodized_overlaps(f, bm, e, am)?;
    let b_dual = bm.dual()?;
    let failures: Vec<Option<(ShiftGroup, ExponentialSum)>> =
        map_slice(Execution::default(), &ms, |m| {
            let v = b_dual.mul_int_vec(m);
            groups.groups.iter().find_map(|g| {
                let sum = pair_group_sum(&gammas, g, &v);
                (!decide_zero(&sum, tol).is_zero()).then(|| (g.clone(), sum))
            })
        });
    let witness = ms.iter().zip(failures).find_map(|(m, fail)| {
        fail.map(|(group, sum)| OrthogonalityWitness::IntegerShift {
            m: m.clone(),
            group,
            sum,
        })
    });
    Ok(OrthogonalityVerdict {
        orthogonal: witness.is_none(),
        mode: Mode::for_exactness(a.is_exact() && b.is_exact(), tol),
        criterion: OrthogonalityCriterion::SingleMatrixPair,
        per_lattice: Vec::new(),
        witness,
    })
}

/// Picks the orthogonality criterion that applies to the two systems.
///
/// Systems with nontrivial shifts whose matrices are neither shared per index
/// nor single per system are rejected: no characterization is known for them.
pub fn decide_orthogonality(
    e: &Band,
    f: &Band,
    a: &LatticeSystem,
    b: &LatticeSystem,
    tol: f64,
) -> Result<OrthogonalityVerdict> {
    check_lengths(a, b)?;
    if a.is_unshifted() && b.is_unshifted() {
        return check_orthogonal_unshifted(e, f, a, b);
    }
    if (0..a.len()).all(|j| a.get(j).matrix() == b.get(j).matrix()) {
        return check_orthogonal_shifted_shared_tol(e, f, a, b, tol);
    }
    if a.single_matrix().is_some() && b.single_matrix().is_some() {
        return check_orthogonal_shifted_pair_tol(e, f, a, b, tol);
    }
    Err(Error::NoCriterion(
        "shifted systems whose matrices differ per index and are not single-matrix".into(),
    ))
}

/// Re-derives a tightness witness from scratch and confirms that it violates
/// the tightness condition.
pub fn recheck_tightness_witness(
    e: &Band,
    sys: &LatticeSystem,
    w: &TightnessWitness,
    tol: f64,
) -> Result<bool> {
    check_band(e, sys.dim())?;
    if w.alpha.iter().all(Zero::is_zero) || w.lattice >= sys.len() {
        return Ok(false);
    }
    let lat = sys.get(w.lattice);
    if lat.dual().mul_int_vec(&w.z) != w.alpha {
        return Ok(false);
    }
    let overlap = e.intersect(&e.translate(&w.alpha)?)?;
    if overlap != w.overlap || !overlap.measure().is_positive() {
        return Ok(false);
    }
    let members = sys.members(&w.alpha);
    if members != w.members {
        return Ok(false);
    }
    match &w.sum {
        None => Ok(true),
        Some(sum) => {
            let info = DualPointInfo {
                alpha: w.alpha.clone(),
                members,
            };
            let fresh = tightness_sum(sys, &info);
            Ok(&fresh == sum && !decide_zero(&fresh, tol).is_zero())
        }
    }
}

/// Re-derives an orthogonality witness from scratch and confirms that it
/// violates the cited condition.
pub fn recheck_orthogonality_witness(
    e: &Band,
    f: &Band,
    a: &LatticeSystem,
    b: &LatticeSystem,
    w: &OrthogonalityWitness,
    tol: f64,
) -> Result<bool> {
    check_lengths(a, b)?;
    match w {
        OrthogonalityWitness::Translate { lattice, k } => {
            if *lattice >= a.len() {
                return Ok(false);
            }
            let ks = periodized_overlaps(e, a.get(*lattice).matrix(), f, b.get(*lattice).matrix())?;
            Ok(ks.contains(k))
        }
        OrthogonalityWitness::DualPoint {
            alpha,
            overlap,
            group,
            sum,
        } => {
            let fresh_overlap = e.intersect(&f.translate(alpha)?)?;
            if &fresh_overlap != overlap || !fresh_overlap.measure().is_positive() {
                return Ok(false);
            }
            let members = a.members(alpha);
            if members.is_empty() {
                return Ok(false);
            }
            let info = DualPointInfo {
                alpha: alpha.clone(),
                members,
            };
            let groups = group_shifts(&info, &a.shifts(), &b.shifts());
            if !groups.groups.contains(group) {
                return Ok(false);
            }
            let fresh = shared_group_sum(a, &b.shifts(), group, alpha);
            Ok(&fresh == sum && !decide_zero(&fresh, tol).is_zero())
        }
        OrthogonalityWitness::IntegerShift { m, group, sum } => {
            let (Some(am), Some(bm)) = (a.single_matrix(), b.single_matrix()) else {
                return Ok(false);
            };
            let ms = periodized_overlaps(f, bm, e, am)?;
            if !ms.contains(m) {
                return Ok(false);
            }
            let groups = group_shifts_paired(am, &a.shifts(), bm, &b.shifts())?;
            if !groups.groups.contains(group) {
                return Ok(false);
            }
            let v = bm.dual()?.mul_int_vec(m);
            let fresh = pair_group_sum(&b.shifts(), group, &v);
            Ok(&fresh == sum && !decide_zero(&fresh, tol).is_zero())
        }
    }
}

/// Fourier multiplier symbol `s(ξ) = Σ_j |det A_j|^{-1} e^{2πi(β_j - γ_j)·ξ}`
/// on `E ∩ F`, zero elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierSymbol {
    pub support: Band,
    /// `(|det A_j|^{-1}, γ_j - β_j)` per lattice.
    pub terms: Vec<(Rational, ShiftKey)>,
}

impl MultiplierSymbol {
    /// `s(ξ)` as an exponential sum (empty off the support).
    pub fn evaluate(&self, xi: &[Rational]) -> ExponentialSum {
        let mut sum = ExponentialSum::new();
        if !self.support.contains(xi) {
            return sum;
        }
        for (c, q) in &self.terms {
            match q {
                ShiftKey::Exact(q) => sum.push_exact(c.clone(), dot(q, xi)),
                ShiftKey::Numeric(q) => {
                    let phase = q.iter().zip(xi).map(|(a, b)| a * to_f64(b)).sum();
                    sum.push_numeric(to_f64(c), phase);
                }
            }
        }
        sum
    }

    pub fn evaluate_f64(&self, xi: &[Rational]) -> Complex64 {
        self.evaluate(xi).evaluate()
    }
}

pub fn multiplier_symbol(
    e: &Band,
    f: &Band,
    a: &LatticeSystem,
    b: &LatticeSystem,
) -> Result<MultiplierSymbol> {
    check_lengths(a, b)?;
    if let Some(index) = (0..a.len()).find(|&j| a.get(j).matrix() != b.get(j).matrix()) {
        return Err(Error::MatricesDiffer { index });
    }
    let support = e.intersect(f)?;
    let terms = (0..a.len())
        .map(|j| {
            let q = match (a.get(j).shift(), b.get(j).shift()) {
                (Shift::Exact(beta), Shift::Exact(gamma)) => {
                    ShiftKey::Exact(gamma.iter().zip(beta).map(|(g, b)| g - b).collect())
                }
                (beta, gamma) => ShiftKey::Numeric(
                    gamma
                        .to_f64()
                        .iter()
                        .zip(beta.to_f64())
                        .map(|(g, b)| g - b)
                        .collect(),
                ),
            };
            (a.get(j).density(), q)
        })
        .collect();
    Ok(MultiplierSymbol { support, terms })
}

/// Human-readable rendering of an integer vector.
pub fn format_int_vector(v: &[BigInt]) -> String {
    let r: Vec<Rational> = v.iter().cloned().map(Rational::from_integer).collect();
    format_vector(&r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RatBox;
    use crate::lattice::ShiftedLattice;
    use crate::rational::{int, rat};

    fn band1(a: Rational, b: Rational) -> Band {
        Band::from_box(RatBox::interval(a, b).unwrap())
    }

    fn sys1(entries: &[(Rational, Rational)]) -> LatticeSystem {
        LatticeSystem::new(
            entries
                .iter()
                .map(|(a, b)| {
                    ShiftedLattice::exact(RatMatrix::scalar(a.clone()), vec![b.clone()]).unwrap()
                })
                .collect(),
        )
        .unwrap()
    }

    fn shannon() -> Band {
        band1(rat(-1, 2), rat(1, 2))
    }

    #[test]
    fn bounded_examples() {
        assert_eq!(
            check_bounded(&band1(int(0), int(1)), &sys1(&[(int(1), int(0))])).unwrap(),
            vec![int(1)]
        );
        assert_eq!(
            check_bounded(&shannon(), &sys1(&[(int(2), int(0))])).unwrap(),
            vec![int(2)]
        );
        assert_eq!(
            check_bounded(
                &band1(int(0), int(2)),
                &sys1(&[(int(1), int(0)), (int(1), int(0))])
            )
            .unwrap(),
            vec![int(2), int(2)]
        );
    }

    #[test]
    fn unshifted_tightness_examples() {
        let v = check_tight_unshifted(&shannon(), &sys1(&[(int(1), int(0))])).unwrap();
        assert!(v.tight);
        assert_eq!(v.constant, Some(int(1)));

        let v = check_tight_unshifted(&shannon(), &sys1(&[(int(2), int(0))])).unwrap();
        assert!(!v.tight);
        let w = v.witness.unwrap();
        assert_eq!(w.lattice, 0);
        assert_eq!(w.z, vec![BigInt::from(1)]);
        assert_eq!(w.alpha, vec![rat(1, 2)]);
        assert_eq!(w.overlap, band1(int(0), rat(1, 2)));

        let v =
            check_tight_unshifted(&band1(int(0), int(1)), &sys1(&[(rat(1, 2), int(0))])).unwrap();
        assert!(v.tight);
        assert_eq!(v.per_lattice, vec![int(2)]);
        assert_eq!(v.constant, Some(int(2)));
    }

    #[test]
    fn unshifted_check_rejects_shifts() {
        let err = check_tight_unshifted(&shannon(), &sys1(&[(int(1), rat(1, 2))])).unwrap_err();
        assert_eq!(err, Error::ShiftedSystem);
    }

    #[test]
    fn shifted_tightness_examples() {
        let union = sys1(&[(int(2), int(0)), (int(2), int(1))]);
        let v = check_tight_shifted(&shannon(), &union).unwrap();
        assert!(v.tight);
        assert_eq!(v.constant, Some(int(1)));
        assert_eq!(v.mode, Mode::Exact);

        let half = sys1(&[(int(1), int(0)), (int(1), rat(1, 2))]);
        let v = check_tight_shifted(&band1(int(0), int(1)), &half).unwrap();
        assert!(v.tight);
        assert_eq!(v.constant, Some(int(2)));

        let odd = sys1(&[(int(2), int(1))]);
        let v = check_tight_shifted(&shannon(), &odd).unwrap();
        assert!(!v.tight);
        let w = v.witness.unwrap();
        assert!(recheck_tightness_witness(&shannon(), &odd, &w, DEFAULT_TOLERANCE).unwrap());
    }

    #[test]
    fn unshifted_orthogonality_examples() {
        let one = sys1(&[(int(1), int(0))]);
        let v = check_orthogonal_unshifted(
            &band1(int(0), rat(1, 2)),
            &band1(rat(1, 2), int(1)),
            &one,
            &one,
        )
        .unwrap();
        assert!(v.orthogonal);

        let v =
            check_orthogonal_unshifted(&band1(int(0), int(1)), &band1(int(0), int(1)), &one, &one)
                .unwrap();
        assert_eq!(
            v.witness,
            Some(OrthogonalityWitness::Translate {
                lattice: 0,
                k: vec![BigInt::from(0)]
            })
        );

        let v =
            check_orthogonal_unshifted(&band1(int(0), int(1)), &band1(int(1), int(2)), &one, &one)
                .unwrap();
        assert_eq!(
            v.witness,
            Some(OrthogonalityWitness::Translate {
                lattice: 0,
                k: vec![BigInt::from(1)]
            })
        );
    }

    #[test]
    fn shared_matrix_orthogonality_examples() {
        let e = band1(int(0), int(1));
        let f = band1(int(-1), int(0));
        let a = sys1(&[(int(1), int(0)), (int(1), rat(1, 2))]);
        let b = sys1(&[(int(1), rat(1, 2)), (int(1), int(0))]);
        let v = check_orthogonal_shifted_shared(&e, &f, &a, &b).unwrap();
        assert!(!v.orthogonal);
        match v.witness.as_ref().unwrap() {
            OrthogonalityWitness::DualPoint {
                alpha, group, sum, ..
            } => {
                assert_eq!(alpha, &vec![int(1)]);
                assert_eq!(group.key, ShiftKey::Exact(vec![rat(1, 2)]));
                let val = sum.evaluate();
                assert!((val.re + 1.0).abs() < 1e-15 && val.im.abs() < 1e-15);
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(recheck_orthogonality_witness(
            &e,
            &f,
            &a,
            &b,
            v.witness.as_ref().unwrap(),
            DEFAULT_TOLERANCE
        )
        .unwrap());

        let b_mod = sys1(&[(int(1), rat(1, 2)), (int(1), int(1))]);
        let v = check_orthogonal_shifted_shared(&e, &f, &a, &b_mod).unwrap();
        assert!(v.orthogonal);
        assert_eq!(v.mode, Mode::Exact);

        let z = sys1(&[(int(1), int(0))]);
        let v = check_orthogonal_shifted_shared(&e, &e, &z, &z).unwrap();
        match v.witness.unwrap() {
            OrthogonalityWitness::DualPoint {
                alpha, group, sum, ..
            } => {
                assert_eq!(alpha, vec![int(0)]);
                assert_eq!(group.key, ShiftKey::Exact(vec![int(0)]));
                assert_eq!(sum.evaluate(), Complex64::new(1.0, 0.0));
            }
            other => panic!("unexpected witness {other:?}"),
        }

        let other = sys1(&[(int(2), int(0)), (int(1), int(0))]);
        assert_eq!(
            check_orthogonal_shifted_shared(&e, &f, &a, &other).unwrap_err(),
            Error::MatricesDiffer { index: 0 }
        );
    }

    #[test]
    fn single_matrix_pair_examples() {
        let e = band1(int(0), int(1));
        let a = sys1(&[(int(1), int(0)), (int(1), rat(1, 2))]);
        let b = sys1(&[(int(1), rat(1, 2)), (int(1), int(1))]);
        let v = check_orthogonal_shifted_pair(&e, &band1(int(-1), int(0)), &a, &b).unwrap();
        assert!(v.orthogonal);

        let z = sys1(&[(int(1), int(0))]);
        let v = check_orthogonal_shifted_pair(&e, &e, &z, &z).unwrap();
        match v.witness.unwrap() {
            OrthogonalityWitness::IntegerShift { m, .. } => assert_eq!(m, vec![BigInt::from(0)]),
            other => panic!("unexpected witness {other:?}"),
        }

        let two = sys1(&[(int(2), int(0))]);
        let v = check_orthogonal_shifted_pair(&e, &band1(int(0), rat(1, 2)), &z, &two).unwrap();
        match v.witness.unwrap() {
            OrthogonalityWitness::IntegerShift { m, group, sum } => {
                assert_eq!(m, vec![BigInt::from(0)]);
                assert_eq!(group.key, ShiftKey::Exact(vec![int(0)]));
                assert_eq!(sum.evaluate(), Complex64::new(1.0, 0.0));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn mixed_systems_have_no_criterion() {
        let e = band1(int(0), int(1));
        let a = sys1(&[(int(1), int(0)), (int(2), rat(1, 2))]);
        let b = sys1(&[(int(2), int(0)), (int(1), int(0))]);
        assert!(matches!(
            decide_orthogonality(&e, &e, &a, &b, DEFAULT_TOLERANCE),
            Err(Error::NoCriterion(_))
        ));
    }

    #[test]
    fn multiplier_symbol_examples() {
        let e = band1(int(0), int(1));
        let tight = sys1(&[(int(2), int(0)), (int(1), int(0))]);
        let s = multiplier_symbol(&e, &e, &tight, &tight).unwrap();
        let val = s.evaluate_f64(&[rat(1, 3)]);
        assert!((val.re - 1.5).abs() < 1e-15 && val.im.abs() < 1e-15);

        let disjoint = multiplier_symbol(&e, &band1(int(1), int(2)), &tight, &tight).unwrap();
        assert!(disjoint.evaluate(&[rat(1, 2)]).is_empty());

        let a = sys1(&[(int(1), int(0))]);
        let b = sys1(&[(int(1), rat(1, 2))]);
        let s = multiplier_symbol(&e, &e, &a, &b).unwrap();
        assert_eq!(s.evaluate_f64(&[int(0)]), Complex64::new(1.0, 0.0));
        let v = s.evaluate_f64(&[rat(1, 2)]);
        assert!(v.re.abs() < 1e-15 && (v.im + 1.0).abs() < 1e-15);
    }
}
