//! A non-convex germ: two opposite quadrants. The closed path uses
//! inclusion-exclusion over the members, the oracle path projection fibers.

use lkpolar::angle::AngleConfig;
use lkpolar::crofton::{lambda_loc_union_closed, sigma_mc_all, McConfig};
use lkpolar::invariants::transfer_matrix;
use lkpolar::{ConvexCone, PolyUnion, Vector};

fn main() -> lkpolar::Result<()> {
    let tol = lkpolar::polycone::DEFAULT_TOL;
    let q =
        |a: f64, b: f64| ConvexCone::from_generators(&[Vector::from(vec![a, 0.0]), Vector::from(vec![0.0, b])], 2, tol);
    let union = PolyUnion::new(vec![q(1.0, 1.0)?, q(-1.0, -1.0)?])?;

    let (lambda, _) = lambda_loc_union_closed(&union, &AngleConfig::default())?;
    let sigma = sigma_mc_all(&union, &McConfig { samples: 100_000, seed: 4, ..McConfig::default() })?;
    let values: Vec<f64> = sigma.iter().map(|e| e.value).collect();
    let predicted = transfer_matrix(2)?.apply(&values);

    println!("closed lambda_loc = {lambda:?} (1 + π/4 = {})", 1.0 + std::f64::consts::FRAC_PI_4);
    for (j, e) in sigma.iter().enumerate() {
        println!("sigma_{j} = {:.5} ± {:.5}", e.value, e.stderr);
    }
    println!("M * sigma = {predicted:?}");
    Ok(())
}
