//! Geodesic and Euclidean distances between edges of a square mesh.

use fracdec::mesh::unit_square_mesh;
use fracdec::metric::{all_pairs_vertex_distance, simplex_distance, DistanceMode};

fn main() -> fracdec::Result<()> {
    let complex = unit_square_mesh(4)?;
    let vertices = all_pairs_vertex_distance(&complex)?;
    let corner = complex.num_vertices() - 1;
    println!("vertex 0 to vertex {corner} along edges: {:.6}", vertices.get(0, corner));

    let geodesic = simplex_distance(&complex, 1, DistanceMode::Geodesic)?;
    let euclidean = simplex_distance(&complex, 1, DistanceMode::Euclidean)?;
    println!("edge pair   geodesic   euclidean");
    for j in [1, 5, 20, complex.count(1) - 1] {
        println!("(0, {j:>2})    {:.6}   {:.6}", geodesic.get(0, j), euclidean.get(0, j));
    }
    println!("closest distinct edges: {:.6}", geodesic.min_off_diagonal().unwrap());
    Ok(())
}
