//! L2 error of the half derivative of -10x^3 + 10x^2 as the mesh is refined.

use fracdec::analysis::{convergence_study, StepLayout};
use fracdec::operator::FracConfig;
use fracdec::oracles::{ClosedFormFamily, Family, Side};

fn main() -> fracdec::Result<()> {
    let family = ClosedFormFamily::new(Family::Poly, 0.5, Side::TwoSided)?;
    let edges: Vec<usize> = (1..=10).map(|k| 1 << k).collect();
    let config = FracConfig::new(0.5)?;
    for layout in [StepLayout::EdgeAligned, StepLayout::Barycentric] {
        println!("{layout:?}");
        for row in convergence_study(&family, &edges, &config, layout)? {
            let ratio = row.ratio.map(|r| format!("{r:.4}")).unwrap_or_default();
            println!("{:>6} {:>10.4} {:>8}", row.n, row.error, ratio);
        }
    }
    Ok(())
}
