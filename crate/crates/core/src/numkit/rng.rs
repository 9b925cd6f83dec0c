//! Deterministic random streams and the sampling primitives built on them.
//!
//! Monte-Carlo work is cut into fixed-size chunks; chunk `c` always draws
//! from substream `c`, and chunk results are combined in index order. The
//! thread count therefore never changes a result.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::linalg::{norm, Basis, Vector, RANK_TOL};

/// Samples per parallel work unit.
pub const CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream_index: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream { seed, stream_index: 0 }
    }

    /// Independent child stream; equal `(self, k)` always give the same child.
    pub fn substream(&self, k: u64) -> RngStream {
        RngStream { seed: self.seed, stream_index: splitmix64(self.stream_index ^ splitmix64(k.wrapping_add(1))) }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// Runs `f(rng, count)` over `total` samples split into [`CHUNK`]-sized
/// pieces. Output is in chunk order.
pub fn map_chunks<T, F>(stream: &RngStream, total: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
{
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK.min(total - c * CHUNK);
            let mut rng = stream.substream(c as u64).rng();
            f(&mut rng, count)
        })
        .collect()
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// Uniform point on the unit sphere S^{n−1}.
pub fn unit_sphere<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let mut g = gaussian(rng, n);
        let r = norm(&g);
        if r > 1e-300 {
            g.iter_mut().for_each(|c| *c /= r);
            return g;
        }
    }
}

/// Uniform point in the closed unit n-ball.
pub fn unit_ball<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let mut u = unit_sphere(rng, n);
    let radius = rng.random::<f64>().powf(1.0 / n as f64);
    u.iter_mut().for_each(|c| *c *= radius);
    u
}

/// Orthonormalization of `i` standard Gaussian vectors in R^n. The span is
/// distributed by the rotation-invariant measure on the Grassmannian.
pub fn gaussian_frame<R: Rng + ?Sized>(rng: &mut R, i: usize, n: usize) -> Basis {
    loop {
        let vs: Vec<Vector> = (0..i).map(|_| Vector::from(gaussian(rng, n))).collect();
        let b = Basis::span_of(n, &vs, RANK_TOL).expect("consistent dimensions");
        if b.dim() == i {
            return b;
        }
    }
}

/// Running mean and variance with an order-fixed merge.
#[derive(Clone, Copy, Debug, Default)]
pub struct Stats {
    pub count: u64,
    pub mean: f64,
    m2: f64,
}

impl Stats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Stats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let d = other.mean - self.mean;
        self.mean += d * other.count as f64 / total as f64;
        self.m2 += other.m2 + d * d * (self.count as f64 * other.count as f64) / total as f64;
        self.count = total;
    }

    /// Sample variance (n − 1 denominator).
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

pub fn merge_all<'a>(parts: impl IntoIterator<Item = &'a Stats>) -> Stats {
    let mut s = Stats::default();
    for p in parts {
        s.merge(p);
    }
    s
}
