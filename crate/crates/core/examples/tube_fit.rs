//! Tube volumes with a Steiner-polynomial fit: the unit disc, the unit
//! square and a quadrant germ.

use lkpolar::crofton::{steiner_fit_mc, tube_volume_mc, McConfig, TubeTarget};
use lkpolar::invariants::ball_intrinsic_volumes;
use lkpolar::numkit::alpha;
use lkpolar::polycone::{homogenize, unit_cube_vertices};
use lkpolar::{ConvexCone, PolyUnion};

fn main() -> lkpolar::Result<()> {
    let radii: Vec<f64> = (1..=32).map(|k| 1.5 * (k as f64 / 32.0).powi(3)).collect();
    let cfg = McConfig { samples: 400_000, seed: 2, tube_radii: Some(radii), ..McConfig::default() };

    let disc = TubeTarget::from_union(&PolyUnion::single(ConvexCone::full_space(2)))?;
    let fit = steiner_fit_mc(&disc, &cfg)?;
    println!("disc: exact {:?}", ball_intrinsic_volumes(2));
    for (i, e) in fit.iter().enumerate() {
        println!("  Λ_{i} = {:.4} ± {:.4}", e.value, e.stderr);
    }

    let square = homogenize(&unit_cube_vertices(2))?;
    let target = TubeTarget::from_polytope(&square);
    for r in [0.25, 0.5] {
        let v = tube_volume_mc(&target, r, &cfg)?;
        println!(
            "square tube r = {r}: {:.4} ± {:.4}, exact {:.4}",
            v.value,
            v.stderr,
            1.0 + 4.0 * r + std::f64::consts::PI * r * r
        );
    }

    let quadrant = TubeTarget::from_union(&PolyUnion::single(ConvexCone::orthant(2)))?;
    for (i, e) in steiner_fit_mc(&quadrant, &cfg)?.iter().enumerate() {
        let e = e.scaled(1.0 / alpha(i));
        println!("quadrant Λ^loc_{i} = {:.4} ± {:.4}", e.value, e.stderr);
    }
    Ok(())
}
