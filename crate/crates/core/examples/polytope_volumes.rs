//! Intrinsic volumes and Steiner polynomials of a few polytopes.

use lkpolar::angle::AngleConfig;
use lkpolar::invariants::{polytope_intrinsic_volumes, steiner_coefficients};
use lkpolar::polycone::{homogenize, unit_cube_vertices};
use lkpolar::Vector;

fn main() -> lkpolar::Result<()> {
    let shapes = vec![
        ("unit square", unit_cube_vertices(2)),
        ("unit cube", unit_cube_vertices(3)),
        (
            "3-4-5 triangle",
            vec![Vector::from(vec![0.0, 0.0]), Vector::from(vec![3.0, 0.0]), Vector::from(vec![0.0, 4.0])],
        ),
        (
            "regular simplex",
            vec![
                Vector::from(vec![1.0, 1.0, 1.0]),
                Vector::from(vec![1.0, -1.0, -1.0]),
                Vector::from(vec![-1.0, 1.0, -1.0]),
                Vector::from(vec![-1.0, -1.0, 1.0]),
            ],
        ),
    ];
    for (name, verts) in shapes {
        let p = homogenize(&verts)?;
        let iv = polytope_intrinsic_volumes(&p, &AngleConfig::default())?;
        let c = steiner_coefficients(&iv.values);
        let poly: Vec<String> = c.iter().enumerate().map(|(k, v)| format!("{v:.6} r^{k}")).collect();
        println!("{name}: Λ = {:?}", iv.values);
        println!("  V(r) = {}", poly.join(" + "));
    }
    Ok(())
}
