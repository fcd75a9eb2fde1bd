//! Property tests for the algebra layer.

use proptest::prelude::*;

use sqz_core::field::{Field, PrimeField, Rationals};
use sqz_core::poly::{gcd_homogeneous_bivariate, Homogeneity, Poly};
use sqz_core::polymatrix::PolyMatrix;

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

/// Strategy for a sparse polynomial over F_101 with up to `terms` terms.
fn arb_poly_fp(n_vars: usize, terms: usize) -> impl Strategy<Value = Poly<PrimeField>> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, n_vars), 0u64..101),
        0..=terms,
    )
    .prop_map(move |term_list| {
        let field = f101();
        let mut p = Poly::zero(n_vars);
        for (exps, coeff) in term_list {
            let term = Poly::from_term(&field, n_vars, exps, coeff);
            p = p.add(&term, &field).unwrap();
        }
        p
    })
}

fn arb_poly_q(n_vars: usize, terms: usize) -> impl Strategy<Value = Poly<Rationals>> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, n_vars), -9i64..10),
        0..=terms,
    )
    .prop_map(move |term_list| {
        let q = Rationals;
        let mut p = Poly::zero(n_vars);
        for (exps, coeff) in term_list {
            let term = Poly::from_term(&q, n_vars, exps, q.from_i64(coeff));
            p = p.add(&term, &q).unwrap();
        }
        p
    })
}

/// Homogeneous bivariate polynomial of the given degree.
fn arb_homogeneous_bivariate(degree: u32) -> impl Strategy<Value = Poly<PrimeField>> {
    prop::collection::vec(0u64..101, degree as usize + 1).prop_map(move |coeffs| {
        let field = f101();
        let mut p = Poly::zero(2);
        for (k, c) in coeffs.into_iter().enumerate() {
            let term = Poly::from_term(&field, 2, vec![k as u32, degree - k as u32], c);
            p = p.add(&term, &field).unwrap();
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_fp(f in arb_poly_fp(3, 4), g in arb_poly_fp(3, 4), h in arb_poly_fp(3, 4)) {
        let k = f101();
        prop_assert_eq!(f.add(&g, &k).unwrap(), g.add(&f, &k).unwrap());
        prop_assert_eq!(f.mul(&g, &k).unwrap(), g.mul(&f, &k).unwrap());
        prop_assert_eq!(
            f.mul(&g, &k).unwrap().mul(&h, &k).unwrap(),
            f.mul(&g.mul(&h, &k).unwrap(), &k).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g.add(&h, &k).unwrap(), &k).unwrap(),
            f.mul(&g, &k).unwrap().add(&f.mul(&h, &k).unwrap(), &k).unwrap()
        );
    }

    #[test]
    fn render_parse_round_trip_q(f in arb_poly_q(3, 5)) {
        let q = Rationals;
        let rendered = f.render(&q);
        let parsed = Poly::parse(&q, 3, &rendered).unwrap();
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn render_parse_round_trip_fp(f in arb_poly_fp(2, 5)) {
        let k = f101();
        let rendered = f.render(&k);
        let parsed = Poly::parse(&k, 2, &rendered).unwrap();
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn homogeneous_scaling(f in arb_homogeneous_bivariate(3), a in 0u64..101, b in 0u64..101, lambda in 1u64..101) {
        let k = f101();
        if let Homogeneity::Homogeneous(d) = f.homogeneity() {
            let direct = f.eval(&[k.mul(&lambda, &a), k.mul(&lambda, &b)], &k).unwrap();
            let mut scale = k.one();
            for _ in 0..d {
                scale = k.mul(&scale, &lambda);
            }
            let scaled = k.mul(&scale, &f.eval(&[a, b], &k).unwrap());
            prop_assert_eq!(direct, scaled);
        }
    }

    #[test]
    fn gcd_divides_both(f in arb_homogeneous_bivariate(4), g in arb_homogeneous_bivariate(3)) {
        let k = f101();
        let gcd = gcd_homogeneous_bivariate(&f, &g, &k).unwrap();
        if !gcd.is_zero() {
            prop_assert!(f.div_exact(&gcd, &k).is_some());
            prop_assert!(g.div_exact(&gcd, &k).is_some());
        } else {
            prop_assert!(f.is_zero() && g.is_zero());
        }
    }

    #[test]
    fn minor_changes_sign_with_row_and_column_swaps(
        entries in prop::collection::vec(arb_poly_fp(2, 2), 25)
    ) {
        let k = f101();
        let mut m = PolyMatrix::new(k, 5, 2).unwrap();
        for (idx, p) in entries.into_iter().enumerate() {
            m.set(idx / 5 + 1, idx % 5 + 1, p).unwrap();
        }
        let base = m.minor(&[1, 2, 3], &[2, 3, 4]).unwrap();
        // swapping two selected rows flips the sign; swapping the same two
        // positions in both selections restores it
        let row_swapped = m.minor(&[2, 1, 3], &[2, 3, 4]).unwrap();
        prop_assert_eq!(row_swapped, base.neg(&k));
        let both_swapped = m.minor(&[2, 1, 3], &[3, 2, 4]).unwrap();
        prop_assert_eq!(both_swapped, base);
    }

    #[test]
    fn specialization_rank_never_exceeds_symbolic(
        entries in prop::collection::vec(prop::option::weighted(0.4, arb_poly_fp(2, 2)), 16),
        points in prop::collection::vec((0u64..101, 0u64..101), 5)
    ) {
        let k = f101();
        let mut m = PolyMatrix::new(k, 4, 2).unwrap();
        for (idx, p) in entries.into_iter().enumerate() {
            if let Some(p) = p {
                m.set(idx / 4 + 1, idx % 4 + 1, p).unwrap();
            }
        }
        let symbolic = m.symbolic_rank();
        for (a, b) in points {
            prop_assert!(m.rank_at_point(&[a, b]).unwrap() <= symbolic);
        }
    }
}
