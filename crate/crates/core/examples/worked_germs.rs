//! Closed-form invariants of the standard cones in the plane and in space.

use lkpolar::angle::AngleConfig;
use lkpolar::invariants::InvariantProfile;
use lkpolar::{ConvexCone, Vector};

fn cone(gens: &[&[f64]]) -> lkpolar::Result<ConvexCone> {
    let n = gens[0].len();
    let g: Vec<Vector> = gens.iter().map(|v| Vector::from(*v)).collect();
    ConvexCone::from_generators(&g, n, lkpolar::polycone::DEFAULT_TOL)
}

fn main() -> lkpolar::Result<()> {
    let germs = [
        ("quadrant", cone(&[&[1.0, 0.0], &[0.0, 1.0]])?),
        ("half-plane", cone(&[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0]])?),
        ("45-degree wedge", cone(&[&[1.0, 0.0], &[1.0, 1.0]])?),
        ("octant", ConvexCone::orthant(3)),
        (
            "half-space",
            cone(&[&[1.0, 0.0, 0.0], &[-1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, 1.0]])?,
        ),
    ];
    for (name, c) in &germs {
        let p = InvariantProfile::compute(c, &AngleConfig::default())?;
        println!("{name}");
        println!("  sigma       {:?}", p.sigma);
        println!("  lambda_loc  {:?}", p.lambda_loc);
        println!("  c_k         {:?}", p.face_contributions.values);
        println!("  angle sum - 1 = {:e}", p.angle_sum_residual);
    }
    Ok(())
}
