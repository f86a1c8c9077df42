mod common;

use common::*;
use lattice_sampling::geometry::{
    interior_overlap, linear_image, overlap_translates, Parallelotope, RatBox,
};
use lattice_sampling::rational::{integer_points, RatMatrix, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn parallelotope(dim: usize) -> impl Strategy<Value = Parallelotope> {
    (matrix(dim), rat_box(dim), shift(dim))
        .prop_map(|(m, b, v)| Parallelotope::new(m, b, v).unwrap())
}

/// Entries in `[-1, 1]` with denominators up to 2 keep 3-D candidate ranges small.
fn small_parallelotope(dim: usize) -> impl Strategy<Value = Parallelotope> {
    let m = prop::collection::vec(small_rational(2, 2), dim * dim)
        .prop_map(move |e| {
            RatMatrix::from_rows(e.chunks(dim).map(|r| r.to_vec()).collect()).unwrap()
        })
        .prop_filter("singular", |m| !m.det().is_zero());
    let b = prop::collection::vec((small_rational(2, 2), positive_rational(2, 2)), dim).prop_map(
        |axes| {
            RatBox::new(
                axes.iter().map(|(l, _)| l.clone()).collect(),
                axes.iter().map(|(l, w)| l + w).collect(),
            )
            .unwrap()
        },
    );
    (m, b, shift(dim)).prop_map(|(m, b, v)| Parallelotope::new(m, b, v).unwrap())
}

/// Every `k` in a box two units wider than the candidate range.
fn brute_translates(p: &Parallelotope, q: &Parallelotope) -> Vec<Vec<BigInt>> {
    let (plo, phi) = p.bounding_box();
    let (qlo, qhi) = q.bounding_box();
    let lo: Vec<BigInt> = plo
        .iter()
        .zip(qhi)
        .map(|(a, b)| (a - b).floor().to_integer() - 2)
        .collect();
    let hi: Vec<BigInt> = phi
        .iter()
        .zip(qlo)
        .map(|(a, b)| (a - b).ceil().to_integer() + 2)
        .collect();
    integer_points(&lo, &hi)
        .into_iter()
        .filter(|k| interior_overlap(p, &q.translate_int(k)))
        .collect()
}

/// Exact positive-measure test for axis-aligned boxes.
fn boxes_overlap(a: &RatBox, b: &RatBox) -> bool {
    a.intersect(b).is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linear_image_scales_measure(
        (e, m, v) in (1usize..=3).prop_flat_map(|d| (band(d, 3), matrix(d), shift(d)))
    ) {
        let pieces = linear_image(&e, &m, &v).unwrap();
        let total: Rational = pieces.iter().map(|p| p.volume()).sum();
        prop_assert_eq!(total, m.abs_det() * e.measure());
    }

    #[test]
    fn intersect_is_commutative_associative_and_monotone(
        a in band(2, 3), b in band(2, 3), c in band(2, 3)
    ) {
        let ab = a.intersect(&b).unwrap();
        prop_assert_eq!(&ab, &b.intersect(&a).unwrap());
        prop_assert_eq!(
            ab.intersect(&c).unwrap(),
            a.intersect(&b.intersect(&c).unwrap()).unwrap()
        );
        let m = ab.measure();
        prop_assert!(m <= a.measure() && m <= b.measure());
    }

    #[test]
    fn interior_overlap_is_symmetric(p in parallelotope(3), q in parallelotope(3)) {
        prop_assert_eq!(interior_overlap(&p, &q), interior_overlap(&q, &p));
        let (plo, phi) = p.bounding_box();
        let (qlo, qhi) = q.bounding_box();
        let disjoint = (0..3).any(|i| phi[i] <= qlo[i] || qhi[i] <= plo[i]);
        if disjoint {
            prop_assert!(!interior_overlap(&p, &q));
        }
    }

    #[test]
    fn overlap_translates_matches_brute_force_2d(p in parallelotope(2), q in parallelotope(2)) {
        prop_assert_eq!(overlap_translates(&p, &q), brute_translates(&p, &q));
    }

    #[test]
    fn overlap_translates_matches_brute_force_3d(p in small_parallelotope(3), q in small_parallelotope(3)) {
        prop_assert_eq!(overlap_translates(&p, &q), brute_translates(&p, &q));
    }

    #[test]
    fn overlap_translates_of_boxes_matches_box_intersection(
        (a, b) in (1usize..=3).prop_flat_map(|d| (rat_box(d), rat_box(d)))
    ) {
        let d = a.dim();
        let p = Parallelotope::from_box(a.clone());
        let q = Parallelotope::from_box(b.clone());
        let lo = vec![BigInt::from(-12); d];
        let hi = vec![BigInt::from(12); d];
        let expected: Vec<Vec<BigInt>> = integer_points(&lo, &hi)
            .into_iter()
            .filter(|k| {
                let v: Vec<Rational> = k.iter().cloned().map(Rational::from_integer).collect();
                boxes_overlap(&a, &b.translate(&v))
            })
            .collect();
        prop_assert_eq!(overlap_translates(&p, &q), expected);
    }
}

#[test]
fn identity_image_of_unit_cube_is_itself() {
    let e = lattice_sampling::geometry::Band::unit_cube(2);
    let pieces = linear_image(
        &e,
        &RatMatrix::identity(2),
        &[Rational::zero(), Rational::zero()],
    )
    .unwrap();
    assert_eq!(pieces.len(), 1);
    assert_eq!(pieces[0].as_box(), Some(RatBox::unit_cube(2)));
}
