//! Writing and reading OFF and JSON meshes.

use fracdec::mesh::io::{load_mesh, parse_off, write_mesh};
use fracdec::mesh::unit_square_mesh;

fn main() -> fracdec::Result<()> {
    let dir = std::env::temp_dir().join(format!("fracdec-mesh-files-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir is writable");
    let square = unit_square_mesh(3)?;
    for name in ["square.off", "square.json"] {
        let path = dir.join(name);
        write_mesh(&square, &path)?;
        let back = load_mesh(&path)?;
        println!("{name}: {} vertices, {} triangles, identical: {}", back.num_vertices(), back.count(2), back == square);
    }

    let broken = "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n4 0 1 2 3\n";
    if let Err(e) = parse_off(broken, "inline.off") {
        println!("rejected: {e}");
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}
