//! Prints the transfer matrix taking polar invariants to local curvatures
//! and applies it to the positive quadrant.

use lkpolar::angle::AngleConfig;
use lkpolar::invariants::{transfer_matrix, InvariantProfile};
use lkpolar::ConvexCone;

fn main() -> lkpolar::Result<()> {
    for n in 1..=4 {
        let m = transfer_matrix(n)?;
        println!("n = {n}");
        for i in 1..=n {
            let row: Vec<String> =
                (1..=n).map(|j| if j < i { format!("{:>10}", "") } else { format!("{:>10.6}", m.get(i, j)) }).collect();
            println!("  {}", row.join(""));
        }
    }

    let quadrant = ConvexCone::orthant(2);
    let p = InvariantProfile::compute(&quadrant, &AngleConfig::default())?;
    let m = transfer_matrix(2)?;
    println!("quadrant sigma      = {:?}", p.sigma);
    println!("M * sigma           = {:?}", m.apply(&p.sigma));
    println!("lambda_loc (closed) = {:?}", p.lambda_loc);
    Ok(())
}
