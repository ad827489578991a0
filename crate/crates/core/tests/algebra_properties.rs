use postulation_core::algebra::{mat_kernel, mat_rank, poly_eval, poly_mul, MatrixFp, Monomial, Polynomial, PrimeField};
use proptest::prelude::*;

fn field() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

/// Small matrices with many repeated rows so ranks vary.
fn matrix() -> impl Strategy<Value = MatrixFp> {
    (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
            .prop_map(|rows| MatrixFp::from_rows(field(), &rows))
    })
}

fn polynomial(deg: u32) -> impl Strategy<Value = Polynomial> {
    let monos = postulation_core::algebra::monomials_of_degree(4, deg);
    prop::collection::vec(0u64..32003, monos.len()).prop_map(move |cs| {
        Polynomial::from_terms(field(), 4, monos.iter().cloned().zip(cs).collect::<Vec<(Monomial, u64)>>())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn rank_of_transpose(m in matrix()) {
        prop_assert_eq!(mat_rank(&m), mat_rank(&m.transpose()));
    }

    #[test]
    fn kernel_is_annihilated(m in matrix()) {
        let k = mat_kernel(&m);
        prop_assert_eq!(k.cols(), m.cols());
        prop_assert_eq!(k.rows(), m.cols() - mat_rank(&m));
        prop_assert_eq!(mat_rank(&k), k.rows());
        if k.rows() > 0 {
            prop_assert!(m.mul(&k.transpose()).is_zero());
        }
    }

    #[test]
    fn evaluation_is_multiplicative(
        f in polynomial(2),
        g in polynomial(3),
        p in prop::array::uniform4(0u64..32003),
    ) {
        let field = field();
        prop_assert_eq!(poly_eval(&poly_mul(&f, &g), &p), field.mul(poly_eval(&f, &p), poly_eval(&g, &p)));
    }
}
