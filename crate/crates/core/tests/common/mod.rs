#![allow(dead_code)]

use lattice_sampling::geometry::{Band, RatBox};
use lattice_sampling::lattice::{LatticeSystem, ShiftedLattice};
use lattice_sampling::rational::{rat, RatMatrix, Rational};
use proptest::prelude::*;

pub fn small_rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(n, d)| rat(n, d))
}

pub fn positive_rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_num, 1..=max_den).prop_map(|(n, d)| rat(n, d))
}

pub fn rat_box(dim: usize) -> impl Strategy<Value = RatBox> {
    prop::collection::vec((small_rational(4, 3), positive_rational(4, 3)), dim).prop_map(|axes| {
        let lower: Vec<Rational> = axes.iter().map(|(l, _)| l.clone()).collect();
        let upper: Vec<Rational> = axes.iter().map(|(l, w)| l + w).collect();
        RatBox::new(lower, upper).unwrap()
    })
}

pub fn band(dim: usize, max_boxes: usize) -> impl Strategy<Value = Band> {
    prop::collection::vec(rat_box(dim), 1..=max_boxes)
        .prop_map(move |boxes| Band::new(dim, boxes).unwrap())
}

pub fn matrix(dim: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(small_rational(3, 2), dim * dim)
        .prop_map(move |entries| {
            RatMatrix::from_rows(entries.chunks(dim).map(|r| r.to_vec()).collect()).unwrap()
        })
        .prop_filter("singular", |m| m.det() != Rational::from_integer(0.into()))
}

pub fn diagonal_matrix(dim: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec((positive_rational(3, 3), any::<bool>()), dim).prop_map(|d| {
        let diag: Vec<Rational> = d
            .into_iter()
            .map(|(x, neg)| if neg { -x } else { x })
            .collect();
        RatMatrix::diagonal(&diag)
    })
}

pub fn shift(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(3, 4), dim)
}

pub fn system_from(parts: Vec<(RatMatrix, Vec<Rational>)>) -> LatticeSystem {
    LatticeSystem::new(
        parts
            .into_iter()
            .map(|(m, s)| ShiftedLattice::exact(m, s).unwrap())
            .collect(),
    )
    .unwrap()
}

/// Up to `max_n` lattices, general matrices, exact shifts.
pub fn shifted_system(dim: usize, max_n: usize) -> impl Strategy<Value = LatticeSystem> {
    prop::collection::vec((matrix(dim), shift(dim)), 1..=max_n).prop_map(system_from)
}

pub fn unshifted_system(dim: usize, max_n: usize) -> impl Strategy<Value = LatticeSystem> {
    shifted_system(dim, max_n).prop_map(|s| s.without_shifts())
}

pub fn band1(a: Rational, b: Rational) -> Band {
    Band::from_box(RatBox::interval(a, b).unwrap())
}

pub mod random {
    use lattice_sampling::geometry::{Band, RatBox};
    use lattice_sampling::lattice::LatticeSystem;
    use lattice_sampling::rational::{rat, RatMatrix, Rational};
    use num_traits::Zero;
    use rand::Rng;

    pub fn rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
        rat(
            rng.gen_range(-max_num..=max_num),
            rng.gen_range(1..=max_den),
        )
    }

    pub fn positive<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
        rat(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
    }

    pub fn matrix<R: Rng>(rng: &mut R, dim: usize, max_num: i64, max_den: i64) -> RatMatrix {
        loop {
            let rows = (0..dim)
                .map(|_| (0..dim).map(|_| rational(rng, max_num, max_den)).collect())
                .collect();
            let m = RatMatrix::from_rows(rows).unwrap();
            if !m.det().is_zero() {
                return m;
            }
        }
    }

    /// Mostly diagonal, sometimes general.
    pub fn lattice_matrix<R: Rng>(rng: &mut R, dim: usize) -> RatMatrix {
        if dim == 1 || rng.gen_bool(0.5) {
            let diag: Vec<Rational> = (0..dim).map(|_| positive(rng, 3, 2)).collect();
            RatMatrix::diagonal(&diag)
        } else {
            matrix(rng, dim, 2, 2)
        }
    }

    pub fn shift<R: Rng>(rng: &mut R, dim: usize) -> Vec<Rational> {
        (0..dim)
            .map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=4)))
            .collect()
    }

    pub fn rat_box<R: Rng>(rng: &mut R, dim: usize, max_side: i64, den: i64) -> RatBox {
        let lower: Vec<Rational> = (0..dim).map(|_| rational(rng, den, den)).collect();
        let upper = lower
            .iter()
            .map(|l| l + positive(rng, max_side, den))
            .collect();
        RatBox::new(lower, upper).unwrap()
    }

    pub fn band<R: Rng>(rng: &mut R, dim: usize, max_boxes: usize) -> Band {
        let n = rng.gen_range(1..=max_boxes);
        Band::new(dim, (0..n).map(|_| rat_box(rng, dim, 3, 4)).collect()).unwrap()
    }

    pub fn system<R: Rng>(rng: &mut R, dim: usize, max_n: usize, shifted: bool) -> LatticeSystem {
        let n = rng.gen_range(1..=max_n);
        super::system_from(
            (0..n)
                .map(|_| {
                    let m = lattice_matrix(rng, dim);
                    let s = if shifted {
                        shift(rng, dim)
                    } else {
                        vec![Rational::zero(); dim]
                    };
                    (m, s)
                })
                .collect(),
        )
    }
}
