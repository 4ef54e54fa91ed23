//! Half derivative of x^3 on 64 edges next to the two-sided closed form.

use fracdec::mesh::{interval_mesh, Cochain};
use fracdec::operator::{build_frac_derivative, FracConfig, RightSign};
use fracdec::oracles::two_sided_cubic;

fn main() -> fracdec::Result<()> {
    let complex = interval_mesh(0.0, 1.0, 64)?;
    let alpha = Cochain::sample_vertices(&complex, |p| p[0].powi(3))?;
    let config = FracConfig::new(0.5)?.with_right_sign(RightSign::Minus);
    let op = build_frac_derivative(&complex, 0, &config)?;
    let out = op.apply(&alpha)?;

    println!("{:>8} {:>12} {:>12}", "x", "discrete", "closed form");
    for i in (0..64).step_by(8).chain([63]) {
        let x = complex.barycenter(1, i).unwrap()[0];
        println!("{x:>8.4} {:>12.6} {:>12.6}", out.values()[i], two_sided_cubic(x)?);
    }
    Ok(())
}
