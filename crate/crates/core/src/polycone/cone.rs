use rand::Rng;

use super::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::numkit::linalg::{dot, norm, rank, Basis, Vector, RANK_TOL};
use crate::numkit::nnls::{default_max_iter, nnls};
use crate::numkit::rng::gaussian;

/// Membership and redundancy tolerance for unit-length data.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A closed convex polyhedral cone with both descriptions:
/// cone(generators) = {x : ⟨a, x⟩ ≤ 0 for every facet normal a}.
///
/// Generators and normals are stored at unit length. A cone that is not
/// full-dimensional carries ± pairs of normals spanning the orthogonal
/// complement of its span.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexCone {
    ambient_dim: usize,
    generators: Vec<Vector>,
    facet_normals: Vec<Vector>,
    lineality_dim: usize,
    dim: usize,
}

fn check_dims(vectors: &[Vector], n: usize) -> Result<()> {
    for v in vectors {
        if v.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
        }
        if v.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
    }
    Ok(())
}

fn unit_pairs(basis: &Basis) -> impl Iterator<Item = Vector> + '_ {
    basis.vectors().iter().flat_map(|b| {
        let neg: Vec<f64> = b.iter().map(|x| -x).collect();
        [b.clone(), Vector::from(neg)]
    })
}

/// Minimal H-representation of cone(generators) by double description on
/// the polar cone inside the generators' span.
pub fn dd_convert(generators: &[Vector], ambient_dim: usize, tol: f64) -> Result<Vec<Vector>> {
    check_dims(generators, ambient_dim)?;
    let span = Basis::span_of(ambient_dim, generators, RANK_TOL)?;
    let mut normals: Vec<Vector> = Vec::new();
    if span.dim() > 0 {
        let coords: Vec<Vec<f64>> = generators.iter().map(|g| span.coords(g)).collect();
        for ray in extreme_rays(&coords, span.dim(), tol) {
            normals.push(span.lift(&ray).normalized());
        }
    }
    normals.extend(unit_pairs(&span.complement()));
    Ok(normals)
}

impl ConvexCone {
    /// Builds a cone from generators, dropping redundant ones and computing
    /// facet normals.
    pub fn from_generators(generators: &[Vector], ambient_dim: usize, tol: f64) -> Result<Self> {
        check_dims(generators, ambient_dim)?;
        let mut gens: Vec<Vector> = Vec::with_capacity(generators.len());
        for (index, g) in generators.iter().enumerate() {
            if g.norm() == 0.0 {
                return Err(Error::ZeroGenerator { index });
            }
            gens.push(g.normalized());
        }
        let mut k = 0;
        while k < gens.len() {
            let others: Vec<&[f64]> = gens.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, g)| &g[..]).collect();
            let sol = nnls(&others, &gens[k], 1e-13, default_max_iter(others.len(), ambient_dim))?;
            if sol.residual <= tol {
                gens.remove(k);
            } else {
                k += 1;
            }
        }
        let facet_normals = dd_convert(&gens, ambient_dim, tol)?;
        Ok(Self::assemble(ambient_dim, gens, facet_normals))
    }

    /// The cone {x : ⟨a, x⟩ ≤ 0 for every a in `normals`}; generators are
    /// regenerated by double description.
    pub fn from_halfspaces(normals: &[Vector], ambient_dim: usize, tol: f64) -> Result<Self> {
        check_dims(normals, ambient_dim)?;
        let normals: Vec<Vector> = normals.iter().filter(|a| a.norm() > 0.0).map(|a| a.normalized()).collect();
        let span = Basis::span_of(ambient_dim, &normals, RANK_TOL)?;
        let lineality = span.complement();
        let mut gens: Vec<Vector> = Vec::new();
        if span.dim() > 0 {
            let coords: Vec<Vec<f64>> = normals.iter().map(|a| span.coords(a)).collect();
            for ray in extreme_rays(&coords, span.dim(), tol) {
                gens.push(span.lift(&ray).normalized());
            }
        }
        gens.extend(unit_pairs(&lineality));
        Self::from_generators(&gens, ambient_dim, tol)
    }

    fn assemble(ambient_dim: usize, generators: Vec<Vector>, facet_normals: Vec<Vector>) -> Self {
        let gs: Vec<&[f64]> = generators.iter().map(|g| &g[..]).collect();
        let ns: Vec<&[f64]> = facet_normals.iter().map(|a| &a[..]).collect();
        let dim = rank(&gs, RANK_TOL);
        let lineality_dim = ambient_dim - rank(&ns, RANK_TOL);
        ConvexCone { ambient_dim, generators, facet_normals, lineality_dim, dim }
    }

    /// {0} in R^n.
    pub fn zero(ambient_dim: usize) -> Self {
        let normals: Vec<Vector> = unit_pairs(&Basis::standard(ambient_dim)).collect();
        Self::assemble(ambient_dim, Vec::new(), normals)
    }

    /// All of R^n.
    pub fn full_space(ambient_dim: usize) -> Self {
        let gens: Vec<Vector> = unit_pairs(&Basis::standard(ambient_dim)).collect();
        Self::assemble(ambient_dim, gens, Vec::new())
    }

    /// Nonnegative orthant of R^n.
    pub fn orthant(ambient_dim: usize) -> Self {
        let gens: Vec<Vector> = (0..ambient_dim).map(|k| Vector::unit(ambient_dim, k)).collect();
        Self::from_generators(&gens, ambient_dim, DEFAULT_TOL).expect("orthant is well formed")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality_dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn facet_normals(&self) -> &[Vector] {
        &self.facet_normals
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_dim == 0
    }

    pub fn is_full_dim(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn span_basis(&self) -> Basis {
        Basis::span_of(self.ambient_dim, &self.generators, RANK_TOL).expect("consistent dimensions")
    }

    /// Orthonormal basis of the largest linear subspace inside the cone.
    pub fn lineality_basis(&self) -> Basis {
        Basis::span_of(self.ambient_dim, &self.facet_normals, RANK_TOL).expect("consistent dimensions").complement()
    }

    /// H-representation sign test, `tol` relative to ‖x‖.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let scale = norm(x).max(f64::MIN_POSITIVE);
        self.facet_normals.iter().all(|a| dot(a, x) <= tol * scale)
    }

    /// Distance from `x` to the cone, by NNLS over the generators.
    pub fn distance(&self, x: &[f64]) -> Result<f64> {
        Ok(nnls(&self.generators, x, 1e-13, default_max_iter(self.generators.len(), x.len()))?.residual)
    }

    /// Membership by NNLS residual, `tol` relative to ‖x‖.
    pub fn contains_nnls(&self, x: &[f64], tol: f64) -> Result<bool> {
        Ok(self.distance(x)? <= tol * norm(x).max(f64::MIN_POSITIVE))
    }

    /// The same cone with every generator mapped through `f` (e.g. a rotation).
    pub fn map_generators(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        let gens: Vec<Vector> = self.generators.iter().map(|g| Vector::from(f(g))).collect();
        let n = gens.first().map_or(self.ambient_dim, |g| g.dim());
        if gens.is_empty() {
            return Ok(Self::zero(n));
        }
        Self::from_generators(&gens, n, DEFAULT_TOL)
    }
}

/// Builds a cone from generators.
pub fn cone_from_generators(generators: &[Vector], ambient_dim: usize, tol: f64) -> Result<ConvexCone> {
    ConvexCone::from_generators(generators, ambient_dim, tol)
}

/// Image of `cone` under orthogonal projection onto span(`subspace`),
/// expressed in the subspace's coordinates.
pub fn project_cone(cone: &ConvexCone, subspace: &Basis) -> Result<ConvexCone> {
    if subspace.ambient_dim() != cone.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: cone.ambient_dim(), found: subspace.ambient_dim() });
    }
    let m = subspace.dim();
    let gens: Vec<Vector> = cone
        .generators()
        .iter()
        .map(|g| subspace.coords(g))
        .filter(|c| norm(c) > DEFAULT_TOL)
        .map(Vector::from)
        .collect();
    ConvexCone::from_generators(&gens, m, DEFAULT_TOL)
}

/// Intersection of cones sharing one ambient space.
pub fn intersect(cones: &[ConvexCone]) -> Result<ConvexCone> {
    let n = cones.first().ok_or(Error::Empty("intersect needs at least one cone"))?.ambient_dim();
    let mut normals = Vec::new();
    for c in cones {
        if c.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: c.ambient_dim() });
        }
        normals.extend(c.facet_normals().iter().cloned());
    }
    if cones.len() == 1 {
        return Ok(cones[0].clone());
    }
    ConvexCone::from_halfspaces(&normals, n, DEFAULT_TOL)
}

/// `count` Gaussian generators in R^n, each flipped into the open half-space
/// of one random direction so the cone they span is pointed.
pub fn random_pointed_generators<R: Rng + ?Sized>(rng: &mut R, n: usize, count: usize) -> Vec<Vector> {
    let axis = crate::numkit::rng::unit_sphere(rng, n);
    (0..count)
        .map(|_| {
            let mut g = gaussian(rng, n);
            if dot(&g, &axis) < 0.0 {
                g.iter_mut().for_each(|x| *x = -*x);
            }
            Vector::from(g)
        })
        .collect()
}

/// A random pointed cone with full dimension (redraws until the generators
/// span R^n).
pub fn random_pointed_cone<R: Rng + ?Sized>(rng: &mut R, n: usize, count: usize) -> ConvexCone {
    assert!(count >= n, "need at least n generators for a full-dimensional cone");
    loop {
        let gens = random_pointed_generators(rng, n, count);
        if let Ok(c) = ConvexCone::from_generators(&gens, n, DEFAULT_TOL) {
            if c.is_full_dim() && c.is_pointed() {
                return c;
            }
        }
    }
}
