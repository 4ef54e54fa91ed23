//! Coboundary matrices on a two-triangle complex, and `D_1 D_0 = 0`.

use fracdec::mesh::{build_coboundary, SimplicialComplex};

fn main() -> fracdec::Result<()> {
    let complex = SimplicialComplex::from_simplices(
        4,
        vec![vec![0, 1, 2], vec![1, 2, 3]],
        Some(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]),
        None,
    )?;
    println!("edges: {:?}", complex.simplices(1));

    let d0 = build_coboundary(&complex, 0)?;
    println!("D_0 = {:?}", d0.to_dense());
    let d1 = build_coboundary(&complex, 1)?;
    println!("D_1 = {:?}", d1.to_dense());

    let product = d1.compose(&d0)?;
    println!("nonzeros in D_1 D_0: {}", product.len());
    Ok(())
}
