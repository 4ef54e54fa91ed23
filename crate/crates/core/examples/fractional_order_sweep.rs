//! L-infinity error over the fractional order for -10x^3 + 10x^2.

use fracdec::analysis::fractional_order_sweep;
use fracdec::operator::FracConfig;
use fracdec::oracles::Family;

fn main() -> fracdec::Result<()> {
    let orders: Vec<f64> = (1..10).map(|k| k as f64 / 10.0).collect();
    let rows = fractional_order_sweep(Family::Poly, &[16, 64, 256], &orders, &FracConfig::new(0.5)?)?;
    println!("{:>5} {:>5} {:>10}", "n", "s", "L∞");
    for row in rows {
        println!("{:>5} {:>5.2} {:>10.4}", row.n, row.s, row.linf_error);
    }
    Ok(())
}
