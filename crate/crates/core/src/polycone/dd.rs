//! Double description: extreme rays of a pointed cone given by homogeneous
//! inequalities.

use crate::numkit::linalg::{dot, norm, rank, solve_square, RANK_TOL};

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<f64>,
    /// processed constraints tight on this ray, sorted
    zero: Vec<usize>,
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Extreme rays (unit length) of {x ∈ R^d : ⟨c, x⟩ ≤ 0 for every constraint c}.
///
/// The constraints must span R^d, so the cone is pointed. Constraints are
/// added one at a time; a pair of rays on opposite sides of the new
/// hyperplane is combined only when the constraints tight on both have rank
/// d − 2, i.e. when the two rays are adjacent.
pub(crate) fn extreme_rays(constraints: &[Vec<f64>], d: usize, tol: f64) -> Vec<Vec<f64>> {
    let cons: Vec<Vec<f64>> = constraints
        .iter()
        .filter(|c| norm(c) > 0.0)
        .map(|c| {
            let n = norm(c);
            c.iter().map(|x| x / n).collect()
        })
        .collect();
    if d == 0 {
        return Vec::new();
    }

    // initial simplicial cone from d independent constraints
    let mut basis_idx: Vec<usize> = Vec::new();
    for (k, c) in cons.iter().enumerate() {
        let mut trial: Vec<&[f64]> = basis_idx.iter().map(|&b| &cons[b][..]).collect();
        trial.push(c);
        if rank(&trial, RANK_TOL) == trial.len() {
            basis_idx.push(k);
            if basis_idx.len() == d {
                break;
            }
        }
    }
    assert_eq!(basis_idx.len(), d, "constraints must span the space");
    let rows: Vec<Vec<f64>> = basis_idx.iter().map(|&b| cons[b].clone()).collect();
    let mut rays: Vec<Ray> = (0..d)
        .map(|k| {
            let mut rhs = vec![0.0; d];
            rhs[k] = -1.0;
            let v = solve_square(&rows, &rhs).expect("independent rows");
            let nv = norm(&v);
            let mut zero: Vec<usize> = basis_idx.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &b)| b).collect();
            zero.sort_unstable();
            Ray { v: v.into_iter().map(|x| x / nv).collect(), zero }
        })
        .collect();

    for (ci, c) in cons.iter().enumerate() {
        if basis_idx.contains(&ci) {
            continue;
        }
        let vals: Vec<f64> = rays.iter().map(|r| dot(c, &r.v)).collect();
        let classify = |v: f64| {
            if v > tol {
                1
            } else if v < -tol {
                -1
            } else {
                0
            }
        };
        if vals.iter().all(|&v| classify(v) <= 0) {
            for (r, &v) in rays.iter_mut().zip(&vals) {
                if classify(v) == 0 {
                    r.zero.push(ci);
                    r.zero.sort_unstable();
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for (p, &vp) in rays.iter().zip(&vals) {
            if classify(vp) != 1 {
                continue;
            }
            for (q, &vq) in rays.iter().zip(&vals) {
                if classify(vq) != -1 {
                    continue;
                }
                let common = intersect_sorted(&p.zero, &q.zero);
                if d < 2 || common.len() < d - 2 {
                    continue;
                }
                let tight: Vec<&[f64]> = common.iter().map(|&k| &cons[k][..]).collect();
                if rank(&tight, RANK_TOL) != d - 2 {
                    continue;
                }
                let mut v: Vec<f64> = q.v.iter().zip(&p.v).map(|(a, b)| vp * a - vq * b).collect();
                let nv = norm(&v);
                v.iter_mut().for_each(|x| *x /= nv);
                let mut zero = common;
                zero.push(ci);
                zero.sort_unstable();
                next.push(Ray { v, zero });
            }
        }
        for (mut r, &v) in rays.into_iter().zip(&vals) {
            match classify(v) {
                1 => {}
                0 => {
                    r.zero.push(ci);
                    r.zero.sort_unstable();
                    next.push(r);
                }
                _ => next.push(r),
            }
        }
        rays = dedup(next);
    }
    rays.into_iter().map(|r| r.v).collect()
}

fn dedup(rays: Vec<Ray>) -> Vec<Ray> {
    let mut out: Vec<Ray> = Vec::with_capacity(rays.len());
    for r in rays {
        if let Some(existing) = out.iter_mut().find(|o| norm(&crate::numkit::linalg::sub(&o.v, &r.v)) < 1e-9) {
            let mut z = existing.zero.clone();
            z.extend(&r.zero);
            z.sort_unstable();
            z.dedup();
            existing.zero = z;
        } else {
            out.push(r);
        }
    }
    out
}
