use maillet_core::exact_linalg::{det_bareiss, det_modular_crt, is_centrosymmetric, is_latin_square, is_normal, matmul};
use maillet_core::matrices::{build_a_c, circulant, circulant_row, similarity_permutation};
use maillet_core::spectral::{det_spectral_exact, exact_zero_eigenvalues};
use maillet_core::wavelet::{build_r, tau_derivative_direct, tau_derivative_via_matrix, TrigPolynomial};
use maillet_core::{EntryVector, OddPrime, PrimitiveRoot};
use num_traits::Zero;
use proptest::prelude::*;

/// Central `m`-th difference with step `h`.
fn central_difference(r: &TrigPolynomial, m: u32, x: f64, h: f64) -> f64 {
    let mut binom = 1.0;
    let mut acc = 0.0;
    for j in 0..=m {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let offset = (m as f64 / 2.0 - j as f64) * h;
        acc += sign * binom * r.eval(x + offset).re;
        binom = binom * (m - j) as f64 / (j + 1) as f64;
    }
    acc / h.powi(m as i32)
}

/// Richardson extrapolation of the central difference over halved steps.
fn fd_derivative(r: &TrigPolynomial, m: u32, x: f64) -> f64 {
    let levels = 4;
    let h0 = 0.02;
    let mut table: Vec<f64> = (0..levels)
        .map(|k| central_difference(r, m, x, h0 / 2f64.powi(k)))
        .collect();
    for order in 1..levels {
        let factor = 4f64.powi(order as i32);
        table = table
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
    }
    table[0]
}

#[test]
fn analytic_mask_derivative_matches_finite_differences() {
    for q in [3u64, 5, 7] {
        let p = OddPrime::new(q).unwrap();
        for m in 1..=3 {
            let r = build_r(p, m);
            // The mask has real coefficients; check the real part at and between zero points.
            let points = (0..=2 * q).map(|k| std::f64::consts::PI * k as f64 / q as f64 - 0.3);
            for x in points {
                for order in 1..=m {
                    let analytic = r.derivative(order, x).re;
                    let fd = fd_derivative(&r, order, x);
                    assert!((analytic - fd).abs() < 1e-6, "p={q} m={m} order={order} x={x}: {analytic} vs {fd}");
                }
            }
        }
    }
}

#[test]
fn tau_chain_rule_identity() {
    for q in [3u64, 5, 7] {
        let p = OddPrime::new(q).unwrap();
        for m in 1..=3 {
            let r = build_r(p, m);
            let via_matrix = tau_derivative_via_matrix(&r, p, m).unwrap();
            let direct = tau_derivative_direct(&r, p, m);
            let scale = via_matrix.iter().chain(&direct).map(|z| z.norm()).fold(0.0, f64::max);
            let vmax = maillet_core::wavelet::derivative_vector(&r, p, m)
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            for (a, b) in via_matrix.iter().zip(&direct) {
                assert!((a - b).norm() <= 1e-6 * vmax, "p={q} m={m}: {a} vs {b} (scale {scale})");
            }
        }
    }
}

fn prime_index() -> impl Strategy<Value = OddPrime> {
    prop::sample::select(OddPrime::up_to(19))
}

fn entry_vector() -> impl Strategy<Value = (OddPrime, EntryVector, EntryVector)> {
    prime_index().prop_flat_map(|p| {
        let n = p.order();
        (
            Just(p),
            prop::collection::vec(-40i64..40, n),
            prop::collection::vec(-40i64..40, n),
        )
            .prop_map(|(p, a, b)| {
                (
                    p,
                    EntryVector::from_i64(p, &a).unwrap(),
                    EntryVector::from_i64(p, &b).unwrap(),
                )
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn general_family_structure((p, c, c2) in entry_vector()) {
        let a = build_a_c(p, &c).unwrap();
        let b = build_a_c(p, &c2).unwrap();
        prop_assert!(is_centrosymmetric(&a));
        prop_assert!(is_normal(&a));
        prop_assert_eq!(is_latin_square(&a), c.is_distinct());
        prop_assert_eq!(matmul(&a, &b).unwrap(), matmul(&b, &a).unwrap());
        prop_assert_eq!(matmul(&a, &b.transpose()).unwrap(), matmul(&b.transpose(), &a).unwrap());
        for h in maillet_core::zmod::find_primitive_roots(p) {
            let conj = similarity_permutation(h).conjugate(&a).unwrap();
            prop_assert_eq!(conj, circulant(circulant_row(&c, h).unwrap().as_slice()));
        }
    }

    #[test]
    fn three_determinants_agree((p, c, _c2) in entry_vector()) {
        let a = build_a_c(p, &c).unwrap();
        let h = PrimitiveRoot::smallest(p);
        let d = det_bareiss(&a).unwrap();
        prop_assert_eq!(det_modular_crt(&a).unwrap(), d.clone());
        prop_assert_eq!(det_spectral_exact(&c, h).unwrap(), d.clone());
        let zeros = exact_zero_eigenvalues(&c, h).unwrap();
        prop_assert_eq!(d.is_zero(), !zeros.is_empty());
    }
}
