//! Critical L-values of the three eta-product forms and the identities they satisfy.

use kluyver::lseries::{l_value, modular_identity_report, CuspForm, FormId, DEFAULT_TERMS};

fn main() -> kluyver::Result<()> {
    for id in FormId::ALL {
        let f = CuspForm::standard(id, DEFAULT_TERMS)?;
        println!("{} (weight {}, level {}): a_1..a_10 = {:?}", f.name, f.weight, f.level, &f.coeffs[1..=10]);
        for s in 1..f.weight {
            let v = l_value(&f, s, 1e-12)?;
            println!("    L(s = {s}) = {:.15}  eps {:+}  err {:.1e}", v.value, v.eps_detected, v.err);
        }
    }
    println!();
    for r in modular_identity_report(1e-7, 1e-10) {
        println!("{:<16} residual {:.2e}  {}", r.id, r.residual, r.identity);
    }
    Ok(())
}
