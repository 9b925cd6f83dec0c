//! Uniform random planes: the expected squared length of the projection of
//! a fixed unit vector onto a random i-plane in R^n is i/n.

use lkpolar::angle::grassmann_sample;
use lkpolar::numkit::Stats;
use lkpolar::RngStream;

fn main() {
    let n = 5;
    let mut rng = RngStream::new(8).rng();
    let e1 = {
        let mut v = vec![0.0; n];
        v[0] = 1.0;
        v
    };
    for i in 1..n {
        let mut stats = Stats::default();
        for _ in 0..50_000 {
            let plane = grassmann_sample(&mut rng, i, n);
            let p = plane.project(&e1);
            stats.push(p.iter().map(|x| x * x).sum());
        }
        println!(
            "G({i}, {n}): mean |P e1|^2 = {:.4} ± {:.4}, expected {:.4}",
            stats.mean,
            stats.stderr(),
            i as f64 / n as f64
        );
    }
}
