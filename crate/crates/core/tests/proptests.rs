use mindlin::exact::characteristic_roots;
use mindlin::transform::{forward_transform, inverse_transform, PhysicalFields};
use mindlin::weno::{fill_ghosts, weno5_derivative, GhostRule, StencilDirection};
use mindlin::{DerivedCoefficients, GaugeFields, Grid, MaterialParams};
use proptest::prelude::*;

fn valid_params() -> impl Strategy<Value = MaterialParams> {
    (0.1f64..10.0, 0.1f64..10.0, 0.1f64..10.0, 0.1f64..50.0, 0.1f64..10.0, -0.99f64..0.99)
        .prop_filter("A != 0", |p| p.5.abs() > 1e-3)
        .prop_map(|(rho, i_mu, gamma, b, c, frac)| MaterialParams::new(rho, i_mu, gamma, frac * (gamma * b).sqrt(), b, c))
}

proptest! {
    #[test]
    fn valid_params_validate(p in valid_params()) {
        prop_assert!(p.validate().is_ok());
        prop_assert!(DerivedCoefficients::from_params(&p).is_ok());
    }

    #[test]
    fn scaling_preserves_validity(p in valid_params(), k in 0.01f64..100.0) {
        prop_assert!(p.scaled(k).validate().is_ok());
    }

    #[test]
    fn roots_are_ordered_and_positive(p in valid_params(), w in 0.01f64..50.0) {
        let c = DerivedCoefficients::from_params(&p).unwrap();
        let (xi, eta) = characteristic_roots(&c, w).unwrap();
        prop_assert!(xi >= eta && eta > 0.0);
        let (xn, en) = characteristic_roots(&c, -w).unwrap();
        prop_assert_eq!((xi, eta), (xn, en));
    }

    #[test]
    fn transform_round_trip(p in valid_params(), vals in prop::collection::vec(-10.0f64..10.0, 6 * 8)) {
        let grid = Grid::unit(8);
        let g = GaugeFields::constant(&DerivedCoefficients::from_params(&p).unwrap(), 8);
        let col = |k: usize| vals[8 * k..8 * (k + 1)].to_vec();
        let q = PhysicalFields { u: col(0), chi: col(1), u_t: col(2), chi_t: col(3), u_x: col(4), chi_x: col(5) };
        let s = forward_transform(&q, &g, grid).unwrap();
        let (ut, ct) = inverse_transform(&s, &q.u_x, &q.chi_x, &g).unwrap();
        let scale = 1.0 + s.as_slice().iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for i in 0..8 {
            prop_assert!((ut[i] - q.u_t[i]).abs() <= 1e-13 * scale);
            prop_assert!((ct[i] - q.chi_t[i]).abs() <= 1e-13 * scale);
        }
    }

    #[test]
    fn weno_commutes_with_shift_and_constants(vals in prop::collection::vec(-1.0f64..1.0, 12), shift in 0usize..12, c in -5.0f64..5.0) {
        let f = |v: &[f64]| weno5_derivative(&fill_ghosts(v, GhostRule::Periodic, GhostRule::Periodic).unwrap(), 0.1, StencilDirection::Rightward).unwrap();
        let d = f(&vals);
        let mut rotated = vals.clone();
        rotated.rotate_left(shift);
        let mut dr = d.clone();
        dr.rotate_left(shift);
        prop_assert_eq!(f(&rotated), dr);
        let lifted: Vec<f64> = vals.iter().map(|v| v + c).collect();
        let dl = f(&lifted);
        for (a, b) in dl.iter().zip(&d) {
            prop_assert!((a - b).abs() < 1e-9 * (1.0 + c.abs()));
        }
    }
}
