use lqp::lang::{parse_formula, parse_program};
use lqp::linalg::{inner, GaussianRational as C, Matrix};
use lqp::random;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = C> {
    (-6i64..=6, -6i64..=6, 1i64..=4).prop_map(|(a, b, d)| &C::from_ints(a, b) / &C::from_int(d))
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(scalar(), c), r).prop_map(move |rows| Matrix::from_rows(c, rows))
    })
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &C::zero(), a.clone());
        prop_assert_eq!(&a * &C::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn rank_nullity(m in matrix(5)) {
        let k = m.kernel_basis();
        let nullity = if k.rows() == 0 { 0 } else { k.rank() };
        prop_assert_eq!(m.rank() + nullity, m.cols());
        for v in k.row_vecs() {
            prop_assert!(m.mul_vec(&v).iter().all(C::is_zero));
        }
    }

    #[test]
    fn adjoint_inner_product(m in matrix(4), seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let x = random::vector(&mut r, m.cols());
        let y = random::vector(&mut r, m.rows());
        prop_assert_eq!(inner(&m.mul_vec(&x), &y), inner(&x, &m.conj_transpose().mul_vec(&y)));
    }

    #[test]
    fn formula_print_parse_round_trip(seed in any::<u64>(), depth in 1usize..5) {
        let f = random::surface_formula(&mut random::rng(seed), 4, depth);
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text).map_err(|e| format!("{text}: {e}")), Ok(f));
    }

    #[test]
    fn program_print_parse_round_trip(seed in any::<u64>(), depth in 1usize..5) {
        let p = random::surface_program(&mut random::rng(seed), 4, depth);
        let text = p.to_string();
        prop_assert_eq!(parse_program(&text).map_err(|e| format!("{text}: {e}")), Ok(p));
    }
}
