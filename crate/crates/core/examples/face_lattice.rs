//! Face lattice of a random pointed cone in R^4: f-vector, Euler relation
//! and the conormal cone of each ray.

use lkpolar::polycone::{conormal_cone, faces, random_pointed_cone};
use lkpolar::RngStream;

fn main() -> lkpolar::Result<()> {
    let mut rng = RngStream::new(11).rng();
    let cone = random_pointed_cone(&mut rng, 4, 7);
    let lattice = faces(&cone);
    let f = lattice.f_vector();
    println!("generators: {}, facets: {}", cone.generators().len(), cone.facet_normals().len());
    println!("f-vector by dimension: {f:?}");
    let euler: i64 = f.iter().enumerate().map(|(k, c)| if k % 2 == 0 { *c as i64 } else { -(*c as i64) }).sum();
    println!("alternating sum: {euler} (0 for every pointed cone)");
    for face in lattice.iter().filter(|f| f.dim == 1) {
        let normal = conormal_cone(face, &cone)?;
        println!("ray {:?}: conormal cone of dimension {}", face.generator_indices, normal.dim());
    }
    Ok(())
}
