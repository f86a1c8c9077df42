use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{add, RatVector, Rational};

/// Half-open box `[lower_0, upper_0) x ... x [lower_{d-1}, upper_{d-1})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatBox {
    lower: RatVector,
    upper: RatVector,
}

impl fmt::Debug for RatBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, u)) in self.lower.iter().zip(&self.upper).enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "[{l},{u})")?;
        }
        Ok(())
    }
}

impl RatBox {
    pub fn new(lower: RatVector, upper: RatVector) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if let Some(axis) = (0..lower.len()).find(|&i| lower[i] >= upper[i]) {
            return Err(Error::EmptyBox {
                axis,
                lower: lower[axis].to_string(),
                upper: upper[axis].to_string(),
            });
        }
        Ok(Self { lower, upper })
    }

    /// One-dimensional interval `[lower, upper)`.
    pub fn interval(lower: Rational, upper: Rational) -> Result<Self> {
        Self::new(vec![lower], vec![upper])
    }

    pub fn unit_cube(dim: usize) -> Self {
        Self {
            lower: vec![Rational::zero(); dim],
            upper: vec![Rational::one(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn volume(&self) -> Rational {
        self.lower
            .iter()
            .zip(&self.upper)
            .fold(Rational::one(), |acc, (l, u)| acc * (u - l))
    }

    pub fn translate(&self, v: &[Rational]) -> Self {
        Self {
            lower: add(&self.lower, v),
            upper: add(&self.upper, v),
        }
    }

    /// Intersection with nonempty interior, if any.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lower: RatVector = self
            .lower
            .iter()
            .zip(&other.lower)
            .map(|(a, b)| a.max(b).clone())
            .collect();
        let upper: RatVector = self
            .upper
            .iter()
            .zip(&other.upper)
            .map(|(a, b)| a.min(b).clone())
            .collect();
        if lower.iter().zip(&upper).all(|(l, u)| l < u) {
            Some(Self { lower, upper })
        } else {
            None
        }
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        point
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(x, (l, u))| l <= x && x < u)
    }

    pub fn contains_f64(&self, point: &[f64]) -> bool {
        point
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(x, (l, u))| crate::rational::to_f64(l) <= *x && *x < crate::rational::to_f64(u))
    }

    /// Splits along every axis into `parts` equal pieces (`parts^d` sub-boxes,
    /// lexicographic order).
    pub fn subdivide(&self, parts: usize) -> Vec<Self> {
        let parts = parts.max(1);
        let d = self.dim();
        let n = Rational::from_integer(parts.into());
        let mut out = Vec::with_capacity(parts.pow(d as u32));
        let mut idx = vec![0usize; d];
        loop {
            let mut lower = Vec::with_capacity(d);
            let mut upper = Vec::with_capacity(d);
            for i in 0..d {
                let w = (&self.upper[i] - &self.lower[i]) / &n;
                let k = Rational::from_integer(idx[i].into());
                lower.push(&self.lower[i] + &w * &k);
                upper.push(&self.lower[i] + &w * (k + Rational::one()));
            }
            out.push(Self { lower, upper });
            let mut axis = d;
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                if idx[axis] + 1 < parts {
                    idx[axis] += 1;
                    for k in idx.iter_mut().skip(axis + 1) {
                        *k = 0;
                    }
                    break;
                }
            }
        }
    }
}

/// Finite union of half-open boxes, always held in canonical form.
///
/// The canonical form is determined by the indicator function alone: the
/// coarsest axis-aligned grid on which the set is a union of cells, with
/// occupied cells merged along the last axis and listed in lexicographic
/// order. Two bands are therefore equal as sets iff they compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Band {
    dim: usize,
    boxes: Vec<RatBox>,
}

impl fmt::Debug for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.boxes.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.boxes.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" u "))
    }
}

impl Band {
    pub fn new(dim: usize, boxes: Vec<RatBox>) -> Result<Self> {
        if let Some(b) = boxes.iter().find(|b| b.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: b.dim(),
            });
        }
        Ok(Self {
            dim,
            boxes: canonicalize(dim, &boxes),
        })
    }

    pub fn from_box(b: RatBox) -> Self {
        let dim = b.dim();
        Self {
            dim,
            boxes: vec![b],
        }
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            boxes: Vec::new(),
        }
    }

    /// The unit cube `[0,1)^d`.
    pub fn unit_cube(dim: usize) -> Self {
        Self::from_box(RatBox::unit_cube(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[RatBox] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn measure(&self) -> Rational {
        self.boxes
            .iter()
            .fold(Rational::zero(), |acc, b| acc + b.volume())
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    pub fn translate(&self, v: &[Rational]) -> Result<Self> {
        self.check_dim(v.len())?;
        // Translation maps the canonical grid to the canonical grid.
        Ok(Self {
            dim: self.dim,
            boxes: self.boxes.iter().map(|b| b.translate(v)).collect(),
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let pieces: Vec<RatBox> = self
            .boxes
            .iter()
            .flat_map(|a| other.boxes.iter().filter_map(move |b| a.intersect(b)))
            .collect();
        Ok(Self {
            dim: self.dim,
            boxes: canonicalize(self.dim, &pieces),
        })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let all: Vec<RatBox> = self.boxes.iter().chain(&other.boxes).cloned().collect();
        Ok(Self {
            dim: self.dim,
            boxes: canonicalize(self.dim, &all),
        })
    }

    /// `measure(self ∩ (other + shift)) > 0`, without building the intersection.
    pub fn overlaps_translate(&self, other: &Self, shift: &[Rational]) -> bool {
        self.boxes.iter().any(|a| {
            other
                .boxes
                .iter()
                .any(|b| a.intersect(&b.translate(shift)).is_some())
        })
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        self.boxes.iter().any(|b| b.contains(point))
    }

    /// Smallest closed box containing the band, or `None` if it is empty.
    pub fn bounding_box(&self) -> Option<(RatVector, RatVector)> {
        let first = self.boxes.first()?;
        let mut lo = first.lower.clone();
        let mut hi = first.upper.clone();
        for b in &self.boxes[1..] {
            for i in 0..self.dim {
                if b.lower[i] < lo[i] {
                    lo[i] = b.lower[i].clone();
                }
                if b.upper[i] > hi[i] {
                    hi[i] = b.upper[i].clone();
                }
            }
        }
        Some((lo, hi))
    }
}

/// Grid index helper: strides for a row-major array of the given shape.
fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * shape[i + 1];
    }
    s
}

fn unflatten(mut flat: usize, shape: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for i in (0..shape.len()).rev() {
        idx[i] = flat % shape[i];
        flat /= shape[i];
    }
    idx
}

struct Grid {
    breaks: Vec<Vec<Rational>>,
    occupied: Vec<bool>,
}

impl Grid {
    fn shape(&self) -> Vec<usize> {
        self.breaks
            .iter()
            .map(|b| b.len().saturating_sub(1))
            .collect()
    }

    /// Slab `k` along `axis` as a vector of occupancy flags (other axes in
    /// row-major order).
    fn slab(&self, axis: usize, k: usize) -> Vec<bool> {
        let shape = self.shape();
        let st = strides(&shape);
        let total: usize = shape.iter().product();
        (0..total)
            .filter(|&flat| (flat / st[axis]) % shape[axis] == k)
            .map(|flat| self.occupied[flat])
            .collect()
    }

    /// Keeps only the slabs along `axis` listed in `keep` (with their new
    /// right-hand breakpoints).
    fn rebuild(&mut self, axis: usize, keep: &[usize], new_breaks: Vec<Rational>) {
        let shape = self.shape();
        let mut new_shape = shape.clone();
        new_shape[axis] = keep.len();
        let total: usize = new_shape.iter().product();
        let old_st = strides(&shape);
        let mut occ = Vec::with_capacity(total);
        for flat in 0..total {
            let mut idx = unflatten(flat, &new_shape);
            idx[axis] = keep[idx[axis]];
            let old: usize = idx.iter().zip(&old_st).map(|(i, s)| i * s).sum();
            occ.push(self.occupied[old]);
        }
        self.occupied = occ;
        self.breaks[axis] = new_breaks;
    }

    /// Drops empty outer slabs and merges identical neighbours along `axis`.
    /// Returns whether anything changed.
    fn simplify_axis(&mut self, axis: usize) -> bool {
        let n = self.shape()[axis];
        let slabs: Vec<Vec<bool>> = (0..n).map(|k| self.slab(axis, k)).collect();
        let nonempty: Vec<usize> = (0..n).filter(|&k| slabs[k].iter().any(|&b| b)).collect();
        let (Some(&first), Some(&last)) = (nonempty.first(), nonempty.last()) else {
            return false;
        };
        let breaks = &self.breaks[axis];
        let mut keep = vec![first];
        let mut new_breaks = vec![breaks[first].clone()];
        for k in first + 1..=last {
            if slabs[k] != slabs[*keep.last().unwrap()] {
                new_breaks.push(breaks[k].clone());
                keep.push(k);
            }
        }
        new_breaks.push(breaks[last + 1].clone());
        let changed = keep.len() != n;
        if changed {
            self.rebuild(axis, &keep, new_breaks);
        }
        changed
    }
}

fn canonicalize(dim: usize, boxes: &[RatBox]) -> Vec<RatBox> {
    if boxes.is_empty() {
        return Vec::new();
    }
    let mut breaks: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut v: Vec<Rational> = boxes
                .iter()
                .flat_map(|b| [b.lower[i].clone(), b.upper[i].clone()])
                .collect();
            v.sort();
            v.dedup();
            v
        })
        .collect();
    if dim == 0 {
        breaks = Vec::new();
    }
    let shape: Vec<usize> = breaks.iter().map(|b| b.len() - 1).collect();
    let st = strides(&shape);
    let total: usize = shape.iter().product();
    let mut occupied = vec![false; total];
    for b in boxes {
        let ranges: Vec<(usize, usize)> = (0..dim)
            .map(|i| {
                let lo = breaks[i].binary_search(&b.lower[i]).unwrap();
                let hi = breaks[i].binary_search(&b.upper[i]).unwrap();
                (lo, hi)
            })
            .collect();
        let sub_shape: Vec<usize> = ranges.iter().map(|(l, h)| h - l).collect();
        let sub_total: usize = sub_shape.iter().product();
        for flat in 0..sub_total {
            let idx = unflatten(flat, &sub_shape);
            let cell: usize = idx
                .iter()
                .zip(&ranges)
                .zip(&st)
                .map(|((k, (l, _)), s)| (k + l) * s)
                .sum();
            occupied[cell] = true;
        }
    }
    let mut grid = Grid { breaks, occupied };
    loop {
        let mut changed = false;
        for axis in 0..dim {
            changed |= grid.simplify_axis(axis);
        }
        if !changed {
            break;
        }
    }

    // Emit occupied cells, merging runs along the last axis.
    let shape = grid.shape();
    let total: usize = shape.iter().product();
    let mut out = Vec::new();
    let mut flat = 0;
    while flat < total {
        if !grid.occupied[flat] {
            flat += 1;
            continue;
        }
        let idx = unflatten(flat, &shape);
        let last = dim - 1;
        let mut run_end = idx[last] + 1;
        while run_end < shape[last] && grid.occupied[flat + (run_end - idx[last])] {
            run_end += 1;
        }
        let lower: RatVector = (0..dim).map(|i| grid.breaks[i][idx[i]].clone()).collect();
        let upper: RatVector = (0..dim)
            .map(|i| {
                if i == last {
                    grid.breaks[i][run_end].clone()
                } else {
                    grid.breaks[i][idx[i] + 1].clone()
                }
            })
            .collect();
        out.push(RatBox { lower, upper });
        flat += run_end - idx[last];
    }
    out
}
