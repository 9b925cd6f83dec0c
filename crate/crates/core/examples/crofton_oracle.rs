//! Monte Carlo oracles for a random cone in R^3 next to the closed forms:
//! Crofton slices for Λ_i and projection fibers for σ_j.

use lkpolar::angle::AngleConfig;
use lkpolar::crofton::{crofton_lambda_mc, sigma_mc, McConfig};
use lkpolar::invariants::InvariantProfile;
use lkpolar::numkit::alpha;
use lkpolar::polycone::random_pointed_cone;
use lkpolar::{PolyUnion, RngStream};

fn main() -> lkpolar::Result<()> {
    let cone = random_pointed_cone(&mut RngStream::new(5).rng(), 3, 5);
    let closed = InvariantProfile::compute(&cone, &AngleConfig::default())?;
    let union = PolyUnion::single(cone);
    let cfg = McConfig { samples: 40_000, seed: 1, ..McConfig::default() };
    println!(
        "{:>3} {:>12} {:>12} {:>8} {:>12} {:>12} {:>8}",
        "i", "lambda_loc", "crofton", "z", "sigma", "fibers", "z"
    );
    for i in 1..=3 {
        let c = crofton_lambda_mc(&union, i, &cfg)?.scaled(1.0 / alpha(i));
        let s = sigma_mc(&union, i, &cfg)?;
        println!(
            "{i:>3} {:>12.6} {:>12.6} {:>8.2} {:>12.6} {:>12.6} {:>8.2}",
            closed.lambda_loc[i],
            c.value,
            c.z_score(closed.lambda_loc[i], 0.0),
            closed.sigma[i],
            s.value,
            s.z_score(closed.sigma[i], 0.0),
        );
    }
    Ok(())
}
