//! The experimental weight-then-differentiate variant next to the Caputo one.

use fracdec::mesh::{interval_mesh, Cochain};
use fracdec::operator::{build_frac_derivative, build_riemann_liouville_experimental, FracConfig};

fn main() -> fracdec::Result<()> {
    let complex = interval_mesh(0.0, 1.0, 8)?;
    let config = FracConfig::new(0.5)?;
    let caputo = build_frac_derivative(&complex, 0, &config)?;
    let rl = build_riemann_liouville_experimental(&complex, 0, &config)?;
    for (name, alpha) in [
        ("x^3", Cochain::sample_vertices(&complex, |p| p[0].powi(3))?),
        ("1", Cochain::constant(&complex, 0, 1.0)),
    ] {
        println!("{name}:");
        println!("  {}: {:.4?}", caputo.kind(), caputo.apply(&alpha)?.values());
        println!("  {}: {:.4?}", rl.kind(), rl.apply(&alpha)?.values());
    }
    Ok(())
}
