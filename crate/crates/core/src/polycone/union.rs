use super::cone::{intersect, ConvexCone};
use crate::error::{Error, Result};

/// Largest union handled by inclusion-exclusion (63 intersection terms).
pub const MAX_MEMBERS: usize = 6;

/// A finite union of convex cones in one ambient space.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyUnion {
    members: Vec<ConvexCone>,
}

/// One inclusion-exclusion term: the intersection of the members in
/// `subset`, entering with `sign` = (−1)^{|subset|+1}.
#[derive(Clone, Debug)]
pub struct IntersectionTerm {
    pub sign: i32,
    pub subset: Vec<usize>,
    pub cone: ConvexCone,
}

impl PolyUnion {
    pub fn new(members: Vec<ConvexCone>) -> Result<Self> {
        let first = members.first().ok_or(Error::Empty("union needs at least one member"))?;
        let n = first.ambient_dim();
        if let Some(m) = members.iter().find(|m| m.ambient_dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: m.ambient_dim() });
        }
        Ok(PolyUnion { members })
    }

    pub fn single(cone: ConvexCone) -> Self {
        PolyUnion { members: vec![cone] }
    }

    pub fn members(&self) -> &[ConvexCone] {
        &self.members
    }

    pub fn ambient_dim(&self) -> usize {
        self.members[0].ambient_dim()
    }

    /// All 2^m − 1 nonempty intersections with their signs, in subset
    /// bit-mask order.
    pub fn intersection_terms(&self) -> Result<Vec<IntersectionTerm>> {
        let m = self.members.len();
        if m > MAX_MEMBERS {
            return Err(Error::TooManyMembers(m));
        }
        (1u32..(1 << m))
            .map(|mask| {
                let subset: Vec<usize> = (0..m).filter(|&k| mask & (1 << k) != 0).collect();
                let cones: Vec<ConvexCone> = subset.iter().map(|&k| self.members[k].clone()).collect();
                let sign = if subset.len() % 2 == 1 { 1 } else { -1 };
                Ok(IntersectionTerm { sign, subset, cone: intersect(&cones)? })
            })
            .collect()
    }
}
