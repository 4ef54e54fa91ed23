//! Gamma and Mittag-Leffler values.

use fracdec::special::{gamma, ln_gamma, mittag_leffler};

fn main() -> fracdec::Result<()> {
    for z in [0.5, 1.5, 2.5, 3.5, -0.5] {
        println!("Γ({z}) = {:.15}", gamma(z)?);
    }
    println!("ln Γ(100) = {:.12}", ln_gamma(100.0)?);
    for z in [0.0, 0.5, 1.0] {
        println!(
            "z = {z}: E_1,1 = {:.15} (e^z = {:.15}), E_1,1.5 = {:.15}",
            mittag_leffler(1.0, 1.0, z)?,
            f64::exp(z),
            mittag_leffler(1.0, 1.5, z)?
        );
    }
    match gamma(-2.0) {
        Err(e) => println!("Γ(-2): {e}"),
        Ok(v) => println!("Γ(-2) = {v}"),
    }
    Ok(())
}
