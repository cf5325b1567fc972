use kluyver::lseries::{
    eta_expansion, l_value, l_value_split, modular_identity_report, CuspForm, EtaProduct, FormId, DEFAULT_TERMS,
};
use kluyver::moments::published::R50;
use proptest::prelude::*;
use std::f64::consts::PI;

/// Multiply out `prod (1 - q^{m n})^e` factor by factor, truncated at `q^len`.
fn product_oracle(factors: &[(u32, u32)], shift: usize, len: usize) -> Vec<i128> {
    let mut s = vec![0i128; len];
    s[0] = 1;
    for &(m, e) in factors {
        for _ in 0..e {
            let mut step = m as usize;
            while step < len {
                for i in (step..len).rev() {
                    s[i] -= s[i - step];
                }
                step += m as usize;
            }
        }
    }
    let mut out = vec![0i128; len];
    out[shift..].copy_from_slice(&s[..len - shift]);
    out
}

fn form(id: FormId) -> CuspForm {
    CuspForm::standard(id, DEFAULT_TERMS).unwrap()
}

#[test]
fn pentagonal_leading_terms() {
    assert_eq!(eta_expansion(1, 13), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
    assert_eq!(eta_expansion(1, 40), product_oracle(&[(1, 1)], 0, 40));
    assert_eq!(eta_expansion(3, 40), product_oracle(&[(3, 1)], 0, 40));
}

#[test]
fn weight_four_expansion_against_direct_product() {
    let f = CuspForm::standard(FormId::F4_6, 50).unwrap();
    let oracle = product_oracle(&[(1, 2), (2, 2), (3, 2), (6, 2)], 1, 51);
    assert_eq!(f.coeffs, oracle);
    assert_eq!(&f.coeffs[1..6], &[1, -2, -3, 4, 6]);
    assert_eq!(f.weight, 4);
    assert_eq!(f.level, 6);
}

#[test]
fn weight_three_form_is_normalized() {
    let f = CuspForm::standard(FormId::F3_15, 50).unwrap();
    let oracle: Vec<i128> = product_oracle(&[(3, 3), (5, 3)], 1, 51)
        .iter()
        .zip(product_oracle(&[(1, 3), (15, 3)], 2, 51))
        .map(|(a, b)| a + b)
        .collect();
    assert_eq!(f.coeffs, oracle);
    assert_eq!(f.coeffs[1], 1);
}

#[test]
fn quotient_form_has_integer_expansion() {
    let f = form(FormId::F6_6);
    assert_eq!(f.coeffs[0], 0);
    assert_eq!(f.coeffs[1], 1);
    assert_eq!(f.weight, 6);
}

#[test]
fn bad_eta_products_are_rejected() {
    assert!(EtaProduct::new(&[(1, 1)]).is_err());
    assert!(EtaProduct::new(&[(1, -24)]).is_err());
}

#[test]
fn fricke_signs_detected() {
    for id in FormId::ALL {
        let (eps, worst) = form(id).fricke_eigenvalue().unwrap();
        assert!(eps == 1 || eps == -1);
        assert!(worst < 1e-10, "{id:?}: {worst}");
    }
}

#[test]
fn cusp_decay() {
    for id in FormId::ALL {
        let f = form(id);
        for i in 0..20 {
            let y = 1.0 + 0.25 * i as f64;
            assert!(f.eval_imag(y).abs() <= 2.0 * (-2.0 * PI * y).exp(), "{id:?}, y = {y}");
        }
    }
}

#[test]
fn l_values_do_not_depend_on_the_split() {
    for id in FormId::ALL {
        let f = form(id);
        for s in 1..f.weight {
            let a = l_value(&f, s, 1e-12).unwrap().value;
            let b = l_value_split(&f, s, 1.3, 1e-12).unwrap().value;
            assert!((a - b).abs() < 1e-9, "{id:?}, s = {s}: {a} vs {b}");
        }
    }
}

#[test]
fn critical_values() {
    let f315 = form(FormId::F3_15);
    let l = l_value(&f315, 2, 1e-12).unwrap();
    assert!((l.value - PI.powi(3) * R50 / (3.0 * 15f64.sqrt())).abs() < 1e-8);
    assert_eq!(l.n_used, DEFAULT_TERMS);

    let f46 = form(FormId::F4_6);
    let r = l_value(&f46, 1, 1e-12).unwrap().value / l_value(&f46, 3, 1e-12).unwrap().value;
    assert!((r - 3.0 / (PI * PI)).abs() < 1e-8);

    let f66 = form(FormId::F6_6);
    let r = l_value(&f66, 5, 1e-12).unwrap().value / l_value(&f66, 3, 1e-12).unwrap().value;
    assert!((r - 2.0 * PI * PI / 21.0).abs() < 1e-8);

    assert!(l_value(&f46, 4, 1e-12).is_err());
    assert!(l_value(&f46, 0, 1e-12).is_err());
}

#[test]
fn identity_table_passes() {
    let records = modular_identity_report(1e-7, 1e-10);
    assert!(records.len() >= 15);
    for r in &records {
        assert!(r.passed(), "{r:?}");
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #[test]
    fn coefficients_are_multiplicative(m in 2usize..20, n in 2usize..20) {
        prop_assume!(gcd(m, n) == 1);
        for id in FormId::ALL {
            let f = CuspForm::standard(id, 400).unwrap();
            prop_assert_eq!(f.coeffs[m] * f.coeffs[n], f.coeffs[m * n], "{:?}", id);
        }
    }
}
