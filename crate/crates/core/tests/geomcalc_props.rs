use proptest::prelude::*;
use ulrich_core::geomcalc::{
    brill_noether_rho, k3_euler_char, mukai_moduli_dim, numerology_replay, serre_residual,
    ulrich_hilbert_poly, BNQuery, ChernData, LedgerStatus,
};
use ulrich_core::exactalg::Rational;

#[test]
fn line_bundle_euler_characteristic() {
    // chi(O(mH)) = 2 + (mH)^2 / 2 with H^2 = 4
    for m in -10..=10i64 {
        assert_eq!(k3_euler_char(&ChernData::line_bundle(m)).unwrap(), 2 + 2 * m * m);
    }
}

#[test]
fn ledger_replays_clean() {
    let rows = numerology_replay();
    assert_eq!(rows.len(), 24);
    for row in rows {
        assert_eq!(row.status, LedgerStatus::Match, "{}", row.key);
    }
}

proptest! {
    #[test]
    fn residual_is_an_involution(g in 1i64..40, r in 0i64..10, d in 0i64..80) {
        prop_assume!(d <= 2 * g - 2);
        let (d2, r2) = serre_residual(g, r, d).unwrap();
        prop_assume!(r2 >= 0);
        prop_assert_eq!(serre_residual(g, r2, d2).unwrap(), (d, r));
        let rho = |r, d| brill_noether_rho(&BNQuery::new(g, r, d).unwrap());
        prop_assert_eq!(rho(r, d), rho(r2, d2));
    }

    #[test]
    fn line_bundles_are_rigid(m in -30i64..30) {
        let dims = mukai_moduli_dim(&ChernData::line_bundle(m)).unwrap();
        prop_assert_eq!(dims.moduli_dim, 0);
        prop_assert_eq!(dims.chi_end, 2);
    }

    #[test]
    fn hilbert_poly_values(d in 2i64..6, r in 1i64..5, n in 1i64..6, t in 0i64..8) {
        // d r binom(t + n - 1, n - 1) evaluated directly
        let coeffs = ulrich_hilbert_poly(d, r, n).unwrap();
        let value: Rational = coeffs
            .iter()
            .rev()
            .fold(Rational::from_integer(0.into()), |acc, c| acc * Rational::from_integer(t.into()) + c);
        let binom = (1..n).fold(1i64, |acc, k| acc * (t + k) / k);
        prop_assert_eq!(value, Rational::from_integer((d * r * binom).into()));
    }
}
