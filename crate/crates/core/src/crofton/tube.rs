use rand::Rng;

use super::{McConfig, McEstimate};
use crate::error::{Error, Result};
use crate::numkit::dykstra::{dykstra_distance, ConvexSet, Distance, DEFAULT_MAX_ITER};
use crate::numkit::linalg::{dot, norm, Vector};
use crate::numkit::nnls::{default_max_iter, nnls};
use crate::numkit::rng::{map_chunks, RngStream};
use crate::numkit::steiner::fit_steiner_gls;
use crate::polycone::{faces, ConvexCone, PolyUnion, Polytope};

const DYKSTRA_TOL: f64 = 1e-10;
const FACE_TOL: f64 = 1e-12;

/// Exact distance to K ∩ B(0, 1) for a convex cone K: the nearest point is
/// the projection onto K pulled back into the ball. The projection onto K is
/// found among the faces by Moreau's decomposition, with NNLS as a fallback.
#[derive(Clone, Debug)]
struct ConeInBall {
    normals: Vec<Vector>,
    generators: Vec<Vector>,
    /// Orthonormal span bases of all faces, largest first.
    face_spans: Vec<Vec<Vector>>,
}

impl ConeInBall {
    fn new(cone: &ConvexCone) -> Self {
        let mut lattice: Vec<_> = faces(cone).iter().cloned().collect();
        lattice.sort_by_key(|f| std::cmp::Reverse(f.dim));
        ConeInBall {
            normals: cone.facet_normals().to_vec(),
            generators: cone.generators().to_vec(),
            face_spans: lattice.into_iter().map(|f| f.span_basis.into_vectors()).collect(),
        }
    }

    fn project_cone(&self, x: &[f64], p: &mut [f64]) -> Result<()> {
        let scale = norm(x).max(1.0) * FACE_TOL;
        p.copy_from_slice(x);
        if self.normals.iter().all(|a| dot(a, x) <= scale) {
            return Ok(());
        }
        for span in &self.face_spans {
            p.iter_mut().for_each(|v| *v = 0.0);
            for b in span {
                let c = dot(b, x);
                p.iter_mut().zip(b.iter()).for_each(|(v, bk)| *v += c * bk);
            }
            if self.normals.iter().all(|a| dot(a, p) <= scale)
                && self.generators.iter().all(|g| dot(g, x) - dot(g, p) <= scale)
            {
                return Ok(());
            }
        }
        let sol = nnls(&self.generators, x, 1e-13, default_max_iter(self.generators.len(), x.len()))?;
        p.copy_from_slice(&sol.fitted(&self.generators, x.len()));
        Ok(())
    }

    fn distance(&self, x: &[f64], p: &mut [f64]) -> Result<f64> {
        self.project_cone(x, p)?;
        let r = norm(p);
        if r > 1.0 {
            p.iter_mut().for_each(|v| *v /= r);
        }
        Ok(x.iter().zip(p.iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
    }
}

#[derive(Clone, Debug)]
enum Piece {
    ConeInBall(ConeInBall),
    Sets(Vec<ConvexSet>),
}

/// A bounded set given as a signed combination of convex pieces inside the
/// box [lo, hi].
#[derive(Clone, Debug)]
pub struct TubeTarget {
    n: usize,
    pieces: Vec<(i32, Piece)>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    /// Every piece lies in the closed unit ball.
    in_unit_ball: bool,
}

impl TubeTarget {
    /// X ∩ B(0, 1) for a union of cones.
    pub fn from_union(union: &PolyUnion) -> Result<Self> {
        let n = union.ambient_dim();
        let pieces = union
            .intersection_terms()?
            .into_iter()
            .map(|t| (t.sign, Piece::ConeInBall(ConeInBall::new(&t.cone))))
            .collect();
        Ok(TubeTarget { n, pieces, lo: vec![-1.0; n], hi: vec![1.0; n], in_unit_ball: true })
    }

    /// X ∩ B(0, 1) with every piece handled by Dykstra's algorithm on
    /// [cone, ball]; slower than [`from_union`](Self::from_union) and kept
    /// as a cross-check.
    pub fn from_union_dykstra(union: &PolyUnion) -> Result<Self> {
        let n = union.ambient_dim();
        let pieces = union
            .intersection_terms()?
            .into_iter()
            .map(|t| {
                let sets = vec![
                    ConvexSet::Cone { generators: t.cone.generators().to_vec() },
                    ConvexSet::Ball { center: Vector::zeros(n), radius: 1.0 },
                ];
                (t.sign, Piece::Sets(sets))
            })
            .collect();
        Ok(TubeTarget { n, pieces, lo: vec![-1.0; n], hi: vec![1.0; n], in_unit_ball: true })
    }

    pub fn from_polytope(polytope: &Polytope) -> Self {
        let sets = polytope
            .halfspaces()
            .into_iter()
            .filter(|(a, _)| a.norm() > 1e-12)
            .map(|(normal, offset)| ConvexSet::HalfSpace { normal, offset })
            .collect();
        let (lo, hi) = polytope.bounding_box();
        TubeTarget { n: polytope.ambient_dim(), pieces: vec![(1, Piece::Sets(sets))], lo, hi, in_unit_ball: false }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    fn distances_into(&self, x: &[f64], out: &mut Vec<f64>, scratch: &mut [f64]) -> Result<()> {
        out.clear();
        for (_, piece) in &self.pieces {
            out.push(match piece {
                Piece::ConeInBall(c) => c.distance(x, scratch)?,
                Piece::Sets(sets) => match dykstra_distance(x, sets, DYKSTRA_TOL, DEFAULT_MAX_ITER)? {
                    Distance::Finite(d) => d,
                    Distance::Infeasible => f64::INFINITY,
                },
            });
        }
        Ok(())
    }
}

/// Default tube radii 0.1, 0.2, …, 0.1·(n + 2).
pub fn default_tube_radii(n: usize) -> Vec<f64> {
    (1..=n + 2).map(|k| 0.1 * k as f64).collect()
}

/// Joint estimate of V(r) at several radii from one set of sample points.
#[derive(Clone, Debug)]
pub struct TubeVolumes {
    pub radii: Vec<f64>,
    pub estimates: Vec<McEstimate>,
    /// Covariance of the estimates (shared samples make them correlated).
    pub covariance: Vec<Vec<f64>>,
}

#[derive(Clone)]
struct Moments {
    count: usize,
    sum: Vec<f64>,
    cross: Vec<Vec<f64>>,
}

impl Moments {
    fn new(k: usize) -> Self {
        Moments { count: 0, sum: vec![0.0; k], cross: vec![vec![0.0; k]; k] }
    }

    fn push(&mut self, w: &[f64]) {
        self.count += 1;
        for a in 0..w.len() {
            self.sum[a] += w[a];
            for b in 0..w.len() {
                self.cross[a][b] += w[a] * w[b];
            }
        }
    }

    fn merge(&mut self, other: &Moments) {
        self.count += other.count;
        for a in 0..self.sum.len() {
            self.sum[a] += other.sum[a];
            for b in 0..self.sum.len() {
                self.cross[a][b] += other.cross[a][b];
            }
        }
    }
}

/// Modified tube volumes V(r) = ∫ χ(X ∩ B(x, r)) dx at every radius, with
/// common sample points in the box widened by the largest radius.
pub fn tube_volumes_mc(target: &TubeTarget, radii: &[f64], cfg: &McConfig) -> Result<TubeVolumes> {
    cfg.validate()?;
    if radii.is_empty() || radii.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
        return Err(Error::Domain("tube radii must be positive and finite".into()));
    }
    let n = target.n;
    let r_max = radii.iter().cloned().fold(0.0, f64::max);
    let lo: Vec<f64> = target.lo.iter().map(|l| l - r_max).collect();
    let width: Vec<f64> = target.hi.iter().zip(&target.lo).map(|(h, l)| h - l + 2.0 * r_max).collect();
    let box_volume: f64 = width.iter().product();
    let k = radii.len();
    let parts = map_chunks(&RngStream::new(cfg.seed).substream(1), cfg.samples, |rng, count| -> Result<Moments> {
        let mut m = Moments::new(k);
        let mut x = vec![0.0; n];
        let mut w = vec![0.0; k];
        let mut dist = Vec::with_capacity(target.pieces.len());
        let mut scratch = vec![0.0; n];
        for _ in 0..count {
            for d in 0..n {
                x[d] = lo[d] + width[d] * rng.random::<f64>();
            }
            if target.in_unit_ball && norm(&x) - 1.0 > r_max {
                m.count += 1;
                continue;
            }
            target.distances_into(&x, &mut dist, &mut scratch)?;
            for (wk, &r) in w.iter_mut().zip(radii) {
                let chi: i32 = target.pieces.iter().zip(&dist).filter(|(_, &d)| d <= r).map(|((s, _), _)| *s).sum();
                *wk = box_volume * chi as f64;
            }
            m.push(&w);
        }
        Ok(m)
    });
    let mut total = Moments::new(k);
    for p in parts {
        total.merge(&p?);
    }
    let nf = total.count as f64;
    let mean: Vec<f64> = total.sum.iter().map(|s| s / nf).collect();
    let covariance: Vec<Vec<f64>> = (0..k)
        .map(|a| (0..k).map(|b| (total.cross[a][b] / nf - mean[a] * mean[b]) * nf / (nf - 1.0) / nf).collect())
        .collect();
    let estimates = (0..k)
        .map(|a| McEstimate {
            value: mean[a],
            stderr: covariance[a][a].max(0.0).sqrt(),
            samples: total.count,
            seed: cfg.seed,
        })
        .collect();
    Ok(TubeVolumes { radii: radii.to_vec(), estimates, covariance })
}

/// V(r) at a single radius.
pub fn tube_volume_mc(target: &TubeTarget, r: f64, cfg: &McConfig) -> Result<McEstimate> {
    Ok(tube_volumes_mc(target, &[r], cfg)?.estimates.remove(0))
}

/// Λ_0..Λ_n of the target read off the tube polynomial.
pub fn steiner_fit_mc(target: &TubeTarget, cfg: &McConfig) -> Result<Vec<McEstimate>> {
    let n = target.n;
    let radii = cfg.tube_radii.clone().unwrap_or_else(|| default_tube_radii(n));
    let tube = tube_volumes_mc(target, &radii, cfg)?;
    let volumes: Vec<f64> = tube.estimates.iter().map(|e| e.value).collect();
    let fit = fit_steiner_gls(&radii, &volumes, n, &tube.covariance)?;
    let stderr = fit.stderr().expect("covariance was supplied");
    Ok(fit
        .coefficients
        .iter()
        .zip(stderr)
        .map(|(&value, stderr)| McEstimate { value, stderr, samples: cfg.samples, seed: cfg.seed })
        .collect())
}

/// Distance from `x` to the closest point of a piece; exposed for tests.
pub fn piece_distances(target: &TubeTarget, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != target.n {
        return Err(Error::DimensionMismatch { expected: target.n, found: x.len() });
    }
    let mut out = Vec::new();
    target.distances_into(x, &mut out, &mut vec![0.0; x.len()])?;
    Ok(out)
}
