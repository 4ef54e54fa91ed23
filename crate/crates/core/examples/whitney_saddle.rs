//! Fractional gradient of -x^2 + y^2 through Whitney reconstruction.

use fracdec::analysis::field2d_experiment;
use fracdec::operator::FracConfig;
use fracdec::oracles::{ClosedFormFamily, Family, Side};

fn main() -> fracdec::Result<()> {
    let config = FracConfig::new(0.5)?;
    for family in [Family::Saddle2d, Family::ShiftedMin2d] {
        let reference = ClosedFormFamily::new(family, 0.5, Side::TwoSided)?;
        for n in [4, 8] {
            let report = field2d_experiment(&reference, n, &config)?;
            let s = report.errors.summary.expect("some triangle has a nonzero reference");
            println!(
                "{family} n = {n}: relative error min {:.4} max {:.4} mean {:.4}, worst triangle {} layers from the critical one",
                s.min,
                s.max,
                s.mean,
                report.worst_to_critical_layers().unwrap_or(0)
            );
        }
    }
    Ok(())
}
