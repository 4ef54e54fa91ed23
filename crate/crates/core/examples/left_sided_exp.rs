//! Left-sided half derivative of e^x against x^(1/2) E_{1,3/2}(x).

use fracdec::analysis::{edge_samples, linf_error};
use fracdec::operator::{FracConfig, Sidedness};
use fracdec::oracles::{ClosedFormFamily, Family, Side};

fn main() -> fracdec::Result<()> {
    let family = ClosedFormFamily::new(Family::Exp, 0.5, Side::Left)?;
    let config = FracConfig::new(0.5)?.with_sidedness(Sidedness::LeftSided);
    for n in [8, 16, 32, 64, 128] {
        let samples = edge_samples(&family, n, &config)?;
        let pairs: Vec<(f64, f64)> = samples.iter().map(|s| (s.predicted, s.reference)).collect();
        let below = samples.iter().filter(|s| s.predicted < s.reference).count();
        println!("n = {n:>3}: L∞ = {:.4}, {below}/{n} edges below the curve", linf_error(&pairs)?);
    }
    Ok(())
}
