use proptest::prelude::*;
use ulrich_core::clifford::{
    char_poly_identity, generate_diagonal_rep, irreducible, ulrich_rank, verify_rep, GCARep,
};
use ulrich_core::exactalg::{CycloField, FieldElem, MultiPoly};
use ulrich_core::random;

fn random_rep(d: u32, n: usize, seed: u64) -> GCARep {
    let field = CycloField::new(d).unwrap();
    let mut rng = random::rng(seed);
    let roots: Vec<FieldElem> = (0..n)
        .map(|_| random::nonzero_field_elem(&mut rng, &field, 2))
        .collect();
    generate_diagonal_rep(d, n, &roots).unwrap()
}

// f(l_1 x_1, ..., l_n x_n)
fn rescale_form(f: &MultiPoly, lambdas: &[FieldElem]) -> MultiPoly {
    let terms = f.terms().map(|(m, c)| {
        let factor = m
            .exponents()
            .iter()
            .zip(lambdas)
            .fold(c.clone(), |acc, (&e, l)| &acc * &l.pow(e as u64));
        (m.clone(), factor)
    });
    MultiPoly::from_terms(f.field(), f.nvars(), terms).unwrap()
}

#[test]
fn generator_grid_with_unit_roots() {
    for d in 2..=5u32 {
        let field = CycloField::new(d).unwrap();
        for n in 2..=3usize {
            let rep = generate_diagonal_rep(d, n, &vec![FieldElem::one(&field); n]).unwrap();
            assert_eq!(rep.m(), (d as usize).pow(n as u32 - 1));
            assert!(verify_rep(&rep).pass(), "d={d} n={n}");
        }
    }
}

#[test]
fn char_poly_for_small_reps() {
    for (d, n) in [(2, 2), (3, 2), (4, 2), (2, 3)] {
        for seed in 0..3 {
            let rep = random_rep(d, n, seed);
            assert!(char_poly_identity(&rep).unwrap(), "d={d} n={n} seed={seed}");
        }
    }
    assert_eq!(ulrich_rank(&random_rep(2, 3, 0)), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_reps_verify(d in 2u32..6, n in 2usize..4, seed in any::<u64>()) {
        prop_assume!(!(d == 5 && n == 3));
        prop_assert!(verify_rep(&random_rep(d, n, seed)).pass());
    }

    #[test]
    fn verification_is_conjugation_invariant(d in 2u32..5, seed in any::<u64>()) {
        let rep = random_rep(d, 2, seed);
        let (theta, _) = random::invertible_matrix(&mut random::rng(seed ^ 1), rep.field(), rep.m(), 2);
        let conj = rep.conjugate(&theta).unwrap();
        prop_assert!(verify_rep(&conj).pass());
        let a = irreducible(&rep, 64).unwrap();
        let b = irreducible(&conj, 64).unwrap();
        prop_assert_eq!(a.algebra_dimension, b.algebra_dimension);
        prop_assert_eq!(a.irreducible, b.irreducible);
    }

    #[test]
    fn scaling_preserves_verdict(d in 2u32..5, seed in any::<u64>()) {
        let rep = random_rep(d, 2, seed);
        let mut rng = random::rng(seed ^ 2);
        let lambdas: Vec<FieldElem> = (0..2)
            .map(|_| random::nonzero_field_elem(&mut rng, rep.field(), 3))
            .collect();
        let form = rescale_form(rep.form(), &lambdas);
        let mats = rep
            .matrices()
            .iter()
            .zip(&lambdas)
            .map(|(a, l)| a.scale(l))
            .collect();
        let scaled = GCARep::new(d, form, mats).unwrap();
        prop_assert!(verify_rep(&scaled).pass());
    }

    #[test]
    fn reducible_sum_stays_reducible(d in 2u32..4, seed in any::<u64>()) {
        let rep = random_rep(d, 2, seed);
        let sum = rep.direct_sum(&rep).unwrap();
        prop_assert!(verify_rep(&sum).pass());
        let r = irreducible(&sum, 64).unwrap();
        prop_assert!(!r.irreducible);
        prop_assert_eq!(r.algebra_dimension, rep.m() * rep.m());
    }
}

#[test]
fn wrong_form_is_rejected() {
    let rep = random_rep(3, 2, 7);
    let two = FieldElem::from_int(rep.field(), 2);
    let form = rescale_form(rep.form(), &[two.clone(), FieldElem::one(rep.field())]);
    let bad = GCARep::new(3, form, rep.matrices().to_vec()).unwrap();
    let report = verify_rep(&bad);
    let disc = report.first_discrepancy.expect("must fail");
    assert_eq!((disc.row, disc.col), (0, 0));
    assert_eq!(disc.exponents, vec![3, 0]);
}
