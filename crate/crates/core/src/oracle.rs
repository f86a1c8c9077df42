//! Numeric sampling oracle.
//!
//! Test functions have piecewise-constant spectra `f̂ = Σ c·χ_box`, so
//! `f(x) = ∫ f̂(ξ) e^{2πi x·ξ} dξ` is a finite sum of products of modulated
//! sincs and is evaluated in closed form. Truncated sampling transforms are
//! summed shell by shell (`‖z‖∞ = s` for `s = 0..=R`); shells may be computed
//! concurrently but are always merged in order with compensated summation, so
//! output is bit-identical across [`Execution`] modes.
//!
//! Tightness constants and correlation magnitudes do not depend on the sign
//! convention of the Fourier transform; phases of correlations do.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::sin_cos_pi;
use crate::error::{Error, Result};
use crate::geometry::{Band, RatBox};
use crate::lattice::{LatticeSystem, ShiftedLattice};
use crate::parallel::{map_range, CompensatedComplex, CompensatedSum, Execution};
use crate::rational::{to_f64, vec_to_f64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Truncation radius `R`: samples with `‖z‖∞ ≤ R`.
    pub radius: u64,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Subdivisions per axis for random spectra.
    pub resolution: usize,
    pub execution: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            radius: 1000,
            trials: 8,
            seed: 42,
            tolerance: 1e-2,
            resolution: 4,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCell {
    region: RatBox,
    coeff: Complex64,
    lower: Vec<f64>,
    upper: Vec<f64>,
    mid: Vec<f64>,
    width: Vec<f64>,
}

impl SpectralCell {
    fn new(region: RatBox, coeff: Complex64) -> Self {
        let lower = vec_to_f64(region.lower());
        let upper = vec_to_f64(region.upper());
        let mid = region
            .lower()
            .iter()
            .zip(region.upper())
            .map(|(l, u)| to_f64(&((l + u) / crate::rational::int(2))))
            .collect();
        let width = region
            .lower()
            .iter()
            .zip(region.upper())
            .map(|(l, u)| to_f64(&(u - l)))
            .collect();
        Self {
            region,
            coeff,
            lower,
            upper,
            mid,
            width,
        }
    }

    pub fn region(&self) -> &RatBox {
        &self.region
    }

    pub fn coeff(&self) -> Complex64 {
        self.coeff
    }

    fn contains(&self, eta: &[f64]) -> bool {
        eta.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(x, (l, u))| *l <= *x && *x < *u)
    }
}

/// Bandlimited function with spectrum `Σ c·χ_box` over disjoint boxes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    dim: usize,
    cells: Vec<SpectralCell>,
}

/// `sin(πt)/(πt)`.
fn sinc(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        sin_cos_pi(t).0 / (std::f64::consts::PI * t)
    }
}

/// `e^{2πiθ}`.
fn cis(theta: f64) -> Complex64 {
    let (s, c) = sin_cos_pi(2.0 * theta);
    Complex64::new(c, s)
}

fn dot_f64(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl SpectralFunction {
    pub fn new(dim: usize, cells: Vec<(RatBox, Complex64)>) -> Result<Self> {
        for (b, _) in &cells {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: b.dim(),
                });
            }
        }
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if cells[i].0.intersect(&cells[j].0).is_some() {
                    return Err(Error::OverlappingCells {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(Self {
            dim,
            cells: cells
                .into_iter()
                .map(|(b, c)| SpectralCell::new(b, c))
                .collect(),
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            cells: Vec::new(),
        }
    }

    /// `f̂ = χ_E`.
    pub fn indicator(band: &Band) -> Self {
        Self {
            dim: band.dim(),
            cells: band
                .boxes()
                .iter()
                .map(|b| SpectralCell::new(b.clone(), Complex64::new(1.0, 0.0)))
                .collect(),
        }
    }

    /// Splits every box of `band` into `resolution^d` sub-boxes and draws
    /// each coefficient with real and imaginary parts uniform on `[-1, 1)`.
    /// The stream is selected by `(seed, stream)`.
    pub fn random_element(band: &Band, resolution: usize, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut cells = Vec::new();
        for b in band.boxes() {
            for sub in b.subdivide(resolution) {
                let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                cells.push(SpectralCell::new(sub, c));
            }
        }
        Self {
            dim: band.dim(),
            cells,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[SpectralCell] {
        &self.cells
    }

    pub fn is_zero(&self) -> bool {
        self.cells
            .iter()
            .all(|c| c.coeff == Complex64::new(0.0, 0.0))
    }

    /// `‖f‖² = Σ |c|²·vol`.
    pub fn norm_sq(&self) -> f64 {
        let mut acc = CompensatedSum::default();
        for c in &self.cells {
            acc.add(c.coeff.norm_sqr() * to_f64(&c.region.volume()));
        }
        acc.value()
    }

    /// `f̂(η)`.
    pub fn spectrum_at(&self, eta: &[f64]) -> Complex64 {
        self.cells
            .iter()
            .find(|c| c.contains(eta))
            .map_or(Complex64::new(0.0, 0.0), |c| c.coeff)
    }

    /// `f(x) = Σ c·e^{2πi x·m} ∏ w_i sinc(x_i w_i)` with `m` the cell center
    /// and `w` its side lengths.
    pub fn evaluate(&self, x: &[f64]) -> Complex64 {
        let mut acc = CompensatedComplex::default();
        for c in &self.cells {
            let amp: f64 = x
                .iter()
                .zip(&c.width)
                .map(|(xi, w)| w * sinc(xi * w))
                .product();
            acc.add(c.coeff * cis(dot_f64(x, &c.mid)) * amp);
        }
        acc.value()
    }

    /// Axis bounds of the spectral support.
    fn support_bounds(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let first = self.cells.first()?;
        let mut lo = first.lower.clone();
        let mut hi = first.upper.clone();
        for c in &self.cells[1..] {
            for i in 0..self.dim {
                lo[i] = lo[i].min(c.lower[i]);
                hi[i] = hi[i].max(c.upper[i]);
            }
        }
        Some((lo, hi))
    }
}

/// Floating-point copy of `x ↦ A x + β`.
#[derive(Debug, Clone)]
struct SamplePoints {
    matrix: Vec<Vec<f64>>,
    shift: Vec<f64>,
}

impl SamplePoints {
    fn new(lattice: &ShiftedLattice) -> Self {
        Self {
            matrix: lattice.matrix().to_f64(),
            shift: lattice.shift().to_f64(),
        }
    }

    fn point(&self, z: &[i64]) -> Vec<f64> {
        self.matrix
            .iter()
            .zip(&self.shift)
            .map(|(row, b)| row.iter().zip(z).map(|(a, &zi)| a * zi as f64).sum::<f64>() + b)
            .collect()
    }
}

/// Integer points with `‖z‖∞ = s`, in lexicographic order.
pub fn shell(dim: usize, s: i64) -> Vec<Vec<i64>> {
    if dim == 0 {
        return if s == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if s == 0 {
        return vec![vec![0; dim]];
    }
    let cube = |d: usize| -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..d {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (-s..=s).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    };
    let inner_shell = shell(dim - 1, s);
    let full = cube(dim - 1);
    let mut out = Vec::new();
    let xs: Vec<i64> = if inner_shell.is_empty() {
        vec![-s, s]
    } else {
        (-s..=s).collect()
    };
    for x in xs {
        let tails = if x.abs() == s { &full } else { &inner_shell };
        for t in tails {
            let mut z = Vec::with_capacity(dim);
            z.push(x);
            z.extend_from_slice(t);
            out.push(z);
        }
    }
    out
}

/// Per-shell totals merged in order. Shell magnitudes behave like `C s^{-2}`
/// with an oscillating `C`, so the tail `Σ_{s>R}` is estimated as `C̄/R` with
/// `C̄` the mean of `s²·|shell_s|` over the upper half of the shells.
fn shell_sums<F>(dim: usize, cfg: &OracleConfig, term: F) -> (Complex64, f64)
where
    F: Fn(&[i64]) -> Complex64 + Sync + Send,
{
    let shells = map_range(cfg.execution, cfg.radius as usize + 1, |s| {
        let mut acc = CompensatedComplex::default();
        for z in shell(dim, s as i64) {
            acc.add(term(&z));
        }
        acc.value()
    });
    let mut total = CompensatedComplex::default();
    for s in &shells {
        total.add(*s);
    }
    let r = cfg.radius as usize;
    let tail = if r == 0 {
        0.0
    } else {
        let from = r.div_ceil(2).max(1);
        let mut c = CompensatedSum::default();
        for (s, v) in shells.iter().enumerate().skip(from) {
            c.add(v.norm() * (s * s) as f64);
        }
        c.value() / (r + 1 - from) as f64 / r as f64
    };
    (total.value(), tail)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyEstimate {
    /// `Σ_j Σ_{‖z‖∞≤R} |f(A_j z + β_j)|²`.
    pub value: f64,
    /// Estimated mass beyond the truncation radius.
    pub tail: f64,
}

pub fn sampling_energy(
    f: &SpectralFunction,
    sys: &LatticeSystem,
    cfg: &OracleConfig,
) -> Result<EnergyEstimate> {
    if f.dim() != sys.dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            found: f.dim(),
        });
    }
    let points: Vec<SamplePoints> = sys.iter().map(SamplePoints::new).collect();
    let (value, tail) = shell_sums(sys.dim(), cfg, |z| {
        let mut acc = CompensatedSum::default();
        for p in &points {
            acc.add(f.evaluate(&p.point(z)).norm_sqr());
        }
        Complex64::new(acc.value(), 0.0)
    });
    Ok(EnergyEstimate {
        value: value.re,
        tail,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEstimate {
    /// `Σ_j Σ_{‖z‖∞≤R} f(A_j z + β_j) conj(g(B_j z + γ_j))`.
    pub value: Complex64,
    pub tail: f64,
}

pub fn cross_correlation(
    f: &SpectralFunction,
    g: &SpectralFunction,
    a: &LatticeSystem,
    b: &LatticeSystem,
    cfg: &OracleConfig,
) -> Result<CorrelationEstimate> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    for dim in [b.dim(), f.dim(), g.dim()] {
        if dim != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: dim,
            });
        }
    }
    let pa: Vec<SamplePoints> = a.iter().map(SamplePoints::new).collect();
    let pb: Vec<SamplePoints> = b.iter().map(SamplePoints::new).collect();
    let (value, tail) = shell_sums(a.dim(), cfg, |z| {
        let mut acc = CompensatedComplex::default();
        for (p, q) in pa.iter().zip(&pb) {
            acc.add(f.evaluate(&p.point(z)) * g.evaluate(&q.point(z)).conj());
        }
        acc.value()
    });
    Ok(CorrelationEstimate { value, tail })
}

/// `F(ξ) = Σ_k f̂(M'(ξ+k)) e^{2πi β·M'(ξ+k)}`, the periodized spectrum of
/// `z ↦ f(Mz + β)` up to the factor `|det M|^{-1}`.
struct Periodizer {
    dual: Vec<Vec<f64>>,
    shift: Vec<f64>,
    ks: Vec<Vec<i64>>,
}

impl Periodizer {
    fn new(lattice: &ShiftedLattice, f: &SpectralFunction) -> Self {
        let dual = lattice.dual().to_f64();
        let shift = lattice.shift().to_f64();
        let d = lattice.dim();
        // ξ + k ranges over M^T·supp(f̂) for ξ ∈ [0,1)^d.
        let ks = match f.support_bounds() {
            None => Vec::new(),
            Some((lo, hi)) => {
                let mt = lattice.matrix().transpose().to_f64();
                let mut klo = Vec::with_capacity(d);
                let mut khi = Vec::with_capacity(d);
                for row in &mt {
                    let (mut a, mut b) = (0.0, 0.0);
                    for (m, (l, h)) in row.iter().zip(lo.iter().zip(&hi)) {
                        a += (m * l).min(m * h);
                        b += (m * l).max(m * h);
                    }
                    klo.push(a.floor() as i64 - 2);
                    khi.push(b.ceil() as i64 + 1);
                }
                let mut out = vec![Vec::new()];
                for i in 0..d {
                    out = out
                        .into_iter()
                        .flat_map(|p: Vec<i64>| {
                            (klo[i]..=khi[i]).map(move |x| {
                                let mut q = p.clone();
                                q.push(x);
                                q
                            })
                        })
                        .collect();
                }
                out
            }
        };
        Self { dual, shift, ks }
    }

    fn eval(&self, f: &SpectralFunction, xi: &[f64]) -> Complex64 {
        let mut acc = CompensatedComplex::default();
        for k in &self.ks {
            let y: Vec<f64> = xi.iter().zip(k).map(|(x, &ki)| x + ki as f64).collect();
            let eta: Vec<f64> = self.dual.iter().map(|row| dot_f64(row, &y)).collect();
            let s = f.spectrum_at(&eta);
            if s != Complex64::new(0.0, 0.0) {
                acc.add(s * cis(dot_f64(&self.shift, &eta)));
            }
        }
        acc.value()
    }
}

/// Bracket-product form of the cross pairing:
/// `Σ_j |det A_j det B_j|^{-1} ∫_{[0,1)^d} F_j(ξ) conj(G_j(ξ)) dξ` where `F_j`
/// and `G_j` periodize `f̂` over `A_j'` (phase `β_j`) and `ĝ` over `B_j'`
/// (phase `γ_j`). The integral uses the midpoint rule with `grid` points per
/// axis; the bracket sums are finite and evaluated exactly at each node.
pub fn bracket_functional(
    f: &SpectralFunction,
    g: &SpectralFunction,
    a: &LatticeSystem,
    b: &LatticeSystem,
    grid: usize,
    exec: Execution,
) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let d = a.dim();
    let grid = grid.max(1);
    let fp: Vec<Periodizer> = a.iter().map(|l| Periodizer::new(l, f)).collect();
    let gp: Vec<Periodizer> = b.iter().map(|l| Periodizer::new(l, g)).collect();
    let weights: Vec<f64> = a
        .iter()
        .zip(b.iter())
        .map(|(la, lb)| 1.0 / (to_f64(la.abs_det()) * to_f64(lb.abs_det())))
        .collect();
    let nodes = grid.pow(d as u32);
    let values = map_range(exec, nodes, |mut idx| {
        let mut xi = vec![0.0; d];
        for i in (0..d).rev() {
            xi[i] = ((idx % grid) as f64 + 0.5) / grid as f64;
            idx /= grid;
        }
        let mut acc = CompensatedComplex::default();
        for ((p, q), w) in fp.iter().zip(&gp).zip(&weights) {
            acc.add(p.eval(f, &xi) * q.eval(g, &xi).conj() * *w);
        }
        acc.value()
    });
    let mut total = CompensatedComplex::default();
    for v in values {
        total.add(v);
    }
    Ok(total.value() / nodes as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TightnessEstimate {
    /// `Σ_j |det A_j|^{-1}`.
    pub expected: f64,
    /// `K̂ = energy / ‖f‖²` per trial.
    pub ratios: Vec<f64>,
    /// Relative tail estimate per trial.
    pub tails: Vec<f64>,
    /// `max |K̂ - expected| / expected`.
    pub max_relative_deviation: f64,
    /// `(max K̂ - min K̂) / mean K̂`.
    pub spread: f64,
}

/// Runs `cfg.trials` random elements of `V_E` through the truncated sampling
/// transform. Trial `t` draws from stream `t` of `cfg.seed`.
pub fn verify_tight(
    e: &Band,
    sys: &LatticeSystem,
    cfg: &OracleConfig,
) -> Result<TightnessEstimate> {
    let expected = to_f64(&sys.total_density());
    let mut ratios = Vec::with_capacity(cfg.trials);
    let mut tails = Vec::with_capacity(cfg.trials);
    for t in 0..cfg.trials {
        let f = SpectralFunction::random_element(e, cfg.resolution, cfg.seed, t as u64);
        let norm = f.norm_sq();
        if norm == 0.0 {
            continue;
        }
        let energy = sampling_energy(&f, sys, cfg)?;
        ratios.push(energy.value / norm);
        tails.push(energy.tail / norm);
    }
    let max_relative_deviation = ratios
        .iter()
        .map(|r| (r - expected).abs() / expected)
        .fold(0.0, f64::max);
    let spread = if ratios.is_empty() {
        0.0
    } else {
        let max = ratios.iter().copied().fold(f64::MIN, f64::max);
        let min = ratios.iter().copied().fold(f64::MAX, f64::min);
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        (max - min) / mean
    };
    Ok(TightnessEstimate {
        expected,
        ratios,
        tails,
        max_relative_deviation,
        spread,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityEstimate {
    /// Pairing of `f̂ = χ_E` and `ĝ = χ_F` (trial 0).
    pub indicator: Complex64,
    /// `|⟨Θ_A f, Θ_B g⟩| / (‖f‖‖g‖)` per trial; trial 0 uses the indicators.
    pub magnitudes: Vec<f64>,
    /// Relative tail estimate per trial.
    pub tails: Vec<f64>,
    pub max_magnitude: f64,
}

/// Trial 0 pairs the indicator spectra of `E` and `F`; trial `t ≥ 1` pairs
/// random elements drawn from streams `2t` and `2t + 1`.
pub fn verify_orthogonal(
    e: &Band,
    f: &Band,
    a: &LatticeSystem,
    b: &LatticeSystem,
    cfg: &OracleConfig,
) -> Result<OrthogonalityEstimate> {
    let mut indicator = Complex64::new(0.0, 0.0);
    let mut magnitudes = Vec::with_capacity(cfg.trials.max(1));
    let mut tails = Vec::with_capacity(cfg.trials.max(1));
    for t in 0..cfg.trials.max(1) {
        let (fe, gf) = if t == 0 {
            (
                SpectralFunction::indicator(e),
                SpectralFunction::indicator(f),
            )
        } else {
            (
                SpectralFunction::random_element(e, cfg.resolution, cfg.seed, 2 * t as u64),
                SpectralFunction::random_element(f, cfg.resolution, cfg.seed, 2 * t as u64 + 1),
            )
        };
        let scale = (fe.norm_sq() * gf.norm_sq()).sqrt();
        if scale == 0.0 {
            continue;
        }
        let c = cross_correlation(&fe, &gf, a, b, cfg)?;
        if t == 0 {
            indicator = c.value;
        }
        magnitudes.push(c.value.norm() / scale);
        tails.push(c.tail / scale);
    }
    let max_magnitude = magnitudes.iter().copied().fold(0.0, f64::max);
    Ok(OrthogonalityEstimate {
        indicator,
        magnitudes,
        tails,
        max_magnitude,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, RatMatrix, Rational};
    use std::f64::consts::PI;

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

    fn cfg(radius: u64) -> OracleConfig {
        OracleConfig {
            radius,
            ..OracleConfig::default()
        }
    }

    #[test]
    fn evaluate_examples() {
        let f = SpectralFunction::indicator(&band1(int(0), int(1)));
        assert_eq!(f.evaluate(&[0.0]), Complex64::new(1.0, 0.0));
        for n in [-3.0, -1.0, 1.0, 2.0, 17.0] {
            assert!(f.evaluate(&[n]).norm() < 1e-15);
        }
        let half = f.evaluate(&[0.5]);
        assert!(half.re.abs() < 1e-15);
        assert!((half.im - 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn evaluate_is_conjugate_symmetric_for_even_real_spectra() {
        let f = SpectralFunction::indicator(&band1(rat(-1, 3), rat(1, 3)));
        for x in [0.1, 0.7, 2.3] {
            let diff = f.evaluate(&[-x]) - f.evaluate(&[x]).conj();
            assert!(diff.norm() < 1e-15);
        }
    }

    #[test]
    fn overlapping_cells_are_rejected() {
        let a = RatBox::interval(int(0), int(1)).unwrap();
        let b = RatBox::interval(rat(1, 2), int(2)).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(
            SpectralFunction::new(1, vec![(a, one), (b, one)]).unwrap_err(),
            Error::OverlappingCells {
                first: 0,
                second: 1
            }
        );
    }

    #[test]
    fn random_elements_tile_the_band() {
        let e = Band::new(
            2,
            vec![
                RatBox::new(vec![int(0), int(0)], vec![int(1), rat(1, 2)]).unwrap(),
                RatBox::new(vec![int(2), int(0)], vec![int(3), int(1)]).unwrap(),
            ],
        )
        .unwrap();
        let f = SpectralFunction::random_element(&e, 3, 7, 0);
        assert_eq!(f.cells().len(), 18);
        let total: Rational = f.cells().iter().map(|c| c.region().volume()).sum();
        assert_eq!(total, e.measure());
        assert_eq!(f, SpectralFunction::random_element(&e, 3, 7, 0));
        assert_ne!(f, SpectralFunction::random_element(&e, 3, 7, 1));
        let one = SpectralFunction::random_element(&e, 1, 7, 0);
        assert_eq!(one.cells().len(), e.boxes().len());
    }

    #[test]
    fn shells_partition_the_cube() {
        for d in 1..=3 {
            let mut all: Vec<Vec<i64>> = (0..=2).flat_map(|s| shell(d, s)).collect();
            let n = all.len();
            all.sort();
            all.dedup();
            assert_eq!(all.len(), n);
            assert_eq!(n, 5usize.pow(d as u32));
        }
    }

    #[test]
    fn plancherel_on_integer_lattice() {
        let f = SpectralFunction::indicator(&band1(int(0), int(1)));
        let sys = sys1(&[(int(1), int(0))]);
        for r in [1, 10, 1000] {
            let energy = sampling_energy(&f, &sys, &cfg(r)).unwrap();
            assert!((energy.value - 1.0).abs() < 1e-12);
        }
        let zero = SpectralFunction::zero(1);
        assert_eq!(sampling_energy(&zero, &sys, &cfg(10)).unwrap().value, 0.0);
    }

    #[test]
    fn energy_is_monotone_in_radius() {
        let e = band1(rat(-1, 2), rat(1, 2));
        let f = SpectralFunction::random_element(&e, 4, 42, 3);
        let sys = sys1(&[(int(2), int(0))]);
        let mut last = 0.0;
        for r in [1, 5, 20, 100] {
            let v = sampling_energy(&f, &sys, &cfg(r)).unwrap().value;
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn half_shift_pair_pairing_is_four_over_pi() {
        let e = band1(int(0), int(1));
        let f = band1(int(-1), int(0));
        let a = sys1(&[(int(1), int(0)), (int(1), rat(1, 2))]);
        let b = sys1(&[(int(1), rat(1, 2)), (int(1), int(0))]);
        let c = cross_correlation(
            &SpectralFunction::indicator(&e),
            &SpectralFunction::indicator(&f),
            &a,
            &b,
            &cfg(50),
        )
        .unwrap();
        assert!(c.value.re.abs() < 1e-12);
        assert!((c.value.im - 4.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn output_is_identical_across_execution_modes() {
        let e = band1(rat(-1, 2), rat(1, 2));
        let sys = sys1(&[(int(2), int(0)), (int(2), int(1))]);
        let mut seq = cfg(200);
        seq.execution = Execution::Sequential;
        let mut par = cfg(200);
        par.execution = Execution::Parallel;
        assert_eq!(
            verify_tight(&e, &sys, &seq).unwrap(),
            verify_tight(&e, &sys, &par).unwrap()
        );
        let f = SpectralFunction::random_element(&e, 4, 1, 0);
        let g = SpectralFunction::random_element(&e, 4, 1, 1);
        assert_eq!(
            bracket_functional(&f, &g, &sys, &sys, 256, Execution::Sequential).unwrap(),
            bracket_functional(&f, &g, &sys, &sys, 256, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn bracket_functional_matches_correlation() {
        let e = band1(int(0), int(1));
        let a = sys1(&[(int(1), int(0)), (rat(1, 2), rat(1, 3))]);
        let b = sys1(&[(int(1), rat(1, 2)), (rat(1, 2), int(0))]);
        let f = SpectralFunction::random_element(&e, 4, 5, 0);
        let g = SpectralFunction::random_element(&e, 4, 5, 1);
        let direct = cross_correlation(&f, &g, &a, &b, &cfg(1000)).unwrap().value;
        let bracket = bracket_functional(&f, &g, &a, &b, 4096, Execution::default()).unwrap();
        assert!((direct - bracket).norm() < 1e-2, "{direct} vs {bracket}");
    }

    #[test]
    fn shannon_union_estimates() {
        let e = band1(rat(-1, 2), rat(1, 2));
        let union = sys1(&[(int(2), int(0)), (int(2), int(1))]);
        let est = verify_tight(&e, &union, &OracleConfig::default()).unwrap();
        assert!(est.max_relative_deviation <= 1e-2, "{est:?}");
        let alone = sys1(&[(int(2), int(0))]);
        let est = verify_tight(&e, &alone, &OracleConfig::default()).unwrap();
        assert!(est.spread > 0.1, "{est:?}");
    }
}
