//! Report assembly and formatting for the command-line front end.

use serde::Serialize;

use super::scene::{Geometry, LoadedObject};
use crate::angle::AngleConfig;
use crate::crofton::{
    crofton_lambda_mc, lambda_loc_union_closed, sigma_mc, sigma_mc_all, steiner_fit_mc, McConfig, McEstimate,
    TubeTarget,
};
use crate::error::Result;
use crate::invariants::{polytope_intrinsic_volumes, steiner_coefficients, transfer_matrix, InvariantProfile};
use crate::numkit::special::alpha;
use crate::numkit::RngStream;
use crate::polycone::PolyUnion;

/// Largest |z| accepted by `verify`.
pub const Z_LIMIT: f64 = 4.0;
/// Differences below this count as agreement when both sides are exact.
pub const EXACT_TOL: f64 = 1e-10;

/// `v` with `digits` significant digits in plain decimal notation.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Plain aligned text: first column left-aligned, the rest right-aligned.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (k, c) in cells.iter().enumerate() {
            let pad = width[k] - c.chars().count();
            if k == 0 {
                s.push_str(c);
                s.push_str(&" ".repeat(pad));
            } else {
                s.push_str("  ");
                s.push_str(&" ".repeat(pad));
                s.push_str(c);
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect()));
    for r in rows {
        out.push_str(&line(r.iter().map(|s| s.as_str()).take(cols).collect()));
    }
    out
}

/// Invariants of one object as reported by `invariants`.
#[derive(Clone, Debug, Serialize)]
pub struct ObjectInvariants {
    pub name: String,
    pub kind: &'static str,
    pub ambient_dim: usize,
    pub sigma: Vec<f64>,
    pub sigma_stderr: Vec<f64>,
    /// "closed" for cones, "monte_carlo" for unions.
    pub sigma_method: &'static str,
    pub lambda_loc: Vec<f64>,
    pub lambda_loc_stderr: Vec<f64>,
    pub face_contributions: Option<Vec<f64>>,
    pub face_contributions_stderr: Option<Vec<f64>>,
    pub angle_sum_residual: Option<f64>,
}

pub fn object_invariants(obj: &LoadedObject, angles: &AngleConfig, mc: &McConfig) -> Result<Option<ObjectInvariants>> {
    Ok(match &obj.geometry {
        Geometry::Cone(cone) => {
            let p = InvariantProfile::compute(cone, angles)?;
            Some(ObjectInvariants {
                name: obj.name.clone(),
                kind: obj.kind.as_str(),
                ambient_dim: obj.ambient_dim,
                sigma: p.sigma,
                sigma_stderr: p.sigma_stderr,
                sigma_method: "closed",
                lambda_loc: p.lambda_loc,
                lambda_loc_stderr: p.lambda_loc_stderr,
                face_contributions: Some(p.face_contributions.values),
                face_contributions_stderr: Some(p.face_contributions.stderr),
                angle_sum_residual: Some(p.angle_sum_residual),
            })
        }
        Geometry::Union(u) => {
            let (lambda_loc, lambda_loc_stderr) = lambda_loc_union_closed(u, angles)?;
            let sigma = sigma_mc_all(u, mc)?;
            Some(ObjectInvariants {
                name: obj.name.clone(),
                kind: obj.kind.as_str(),
                ambient_dim: obj.ambient_dim,
                sigma: sigma.iter().map(|e| e.value).collect(),
                sigma_stderr: sigma.iter().map(|e| e.stderr).collect(),
                sigma_method: "monte_carlo",
                lambda_loc,
                lambda_loc_stderr,
                face_contributions: None,
                face_contributions_stderr: None,
                angle_sum_residual: None,
            })
        }
        Geometry::Polytope(_) => None,
    })
}

pub fn invariants_json(items: &[ObjectInvariants]) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        objects: &'a [ObjectInvariants],
    }
    serde_json::to_string_pretty(&Doc { objects: items }).expect("report serializes") + "\n"
}

fn series(o: &ObjectInvariants) -> Vec<(&'static str, &[f64], &[f64])> {
    let mut s =
        vec![("sigma", &o.sigma[..], &o.sigma_stderr[..]), ("lambda_loc", &o.lambda_loc[..], &o.lambda_loc_stderr[..])];
    if let (Some(v), Some(e)) = (&o.face_contributions, &o.face_contributions_stderr) {
        s.push(("face_contribution", &v[..], &e[..]));
    }
    s
}

pub fn invariants_csv(items: &[ObjectInvariants]) -> String {
    let mut out = String::from("object,quantity,index,value,stderr\n");
    for o in items {
        for (q, v, e) in series(o) {
            for (i, (x, s)) in v.iter().zip(e).enumerate() {
                out.push_str(&format!("{},{q},{i},{x},{s}\n", o.name));
            }
        }
        if let Some(r) = o.angle_sum_residual {
            out.push_str(&format!("{},angle_sum_residual,0,{r},0\n", o.name));
        }
    }
    out
}

pub fn invariants_table(items: &[ObjectInvariants]) -> String {
    let mut out = String::new();
    for (k, o) in items.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.push_str(&format!("{} ({}, n = {}, sigma {})\n", o.name, o.kind, o.ambient_dim, o.sigma_method));
        let mut header = vec!["index", "sigma", "sigma_se", "lambda_loc", "lambda_loc_se"];
        if o.face_contributions.is_some() {
            header.push("face_contrib");
        }
        let rows: Vec<Vec<String>> = (0..=o.ambient_dim)
            .map(|i| {
                let mut r = vec![
                    i.to_string(),
                    fmt_sig(o.sigma[i], 12),
                    fmt_sig(o.sigma_stderr[i], 3),
                    fmt_sig(o.lambda_loc[i], 12),
                    fmt_sig(o.lambda_loc_stderr[i], 3),
                ];
                if let Some(c) = &o.face_contributions {
                    r.push(fmt_sig(c[i], 12));
                }
                r
            })
            .collect();
        out.push_str(&render_table(&header, &rows));
        if let Some(r) = o.angle_sum_residual {
            out.push_str(&format!("angle-sum residual: {r:e}\n"));
        }
    }
    out
}

/// One line of the `verify` report.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub object: String,
    pub check: &'static str,
    pub index: usize,
    pub closed: f64,
    pub closed_stderr: f64,
    pub oracle: f64,
    pub oracle_stderr: f64,
    pub z: f64,
    pub pass: bool,
}

fn z_of(closed: f64, closed_se: f64, oracle: f64, oracle_se: f64) -> f64 {
    let d = oracle - closed;
    let s = closed_se.hypot(oracle_se);
    if d.abs() <= EXACT_TOL {
        0.0
    } else if s > 0.0 {
        d / s
    } else {
        f64::INFINITY.copysign(d)
    }
}

fn compare(object: &str, check: &'static str, index: usize, closed: (f64, f64), oracle: (f64, f64)) -> Comparison {
    let z = z_of(closed.0, closed.1, oracle.0, oracle.1);
    Comparison {
        object: object.to_string(),
        check,
        index,
        closed: closed.0,
        closed_stderr: closed.1,
        oracle: oracle.0,
        oracle_stderr: oracle.1,
        z,
        pass: z.abs() <= Z_LIMIT,
    }
}

fn mc_for(base: &McConfig, object: usize, check: u64) -> McConfig {
    let seed = RngStream::new(base.seed).substream(object as u64).substream(check).stream_index;
    McConfig { seed, ..base.clone() }
}

fn oracle_lines(
    name: &str,
    union: &PolyUnion,
    lambda: &[f64],
    lambda_se: &[f64],
    idx: usize,
    mc: &McConfig,
    out: &mut Vec<Comparison>,
) -> Result<()> {
    let n = union.ambient_dim();
    for i in 1..=n {
        let e = crofton_lambda_mc(union, i, &mc_for(mc, idx, 10 + i as u64))?.scaled(1.0 / alpha(i));
        out.push(compare(name, "crofton", i, (lambda[i], lambda_se[i]), (e.value, e.stderr)));
    }
    let fit = steiner_fit_mc(&TubeTarget::from_union(union)?, &mc_for(mc, idx, 2))?;
    for (i, e) in fit.into_iter().enumerate() {
        let e = e.scaled(1.0 / alpha(i));
        out.push(compare(name, "tube_fit", i, (lambda[i], lambda_se[i]), (e.value, e.stderr)));
    }
    Ok(())
}

/// Closed forms against every applicable oracle for one object.
pub fn verify_object(obj: &LoadedObject, idx: usize, angles: &AngleConfig, mc: &McConfig) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    let name = obj.name.as_str();
    let angles = angles.with_stream(angles.stream.substream(idx as u64));
    match &obj.geometry {
        Geometry::Cone(cone) => {
            let n = cone.ambient_dim();
            let p = InvariantProfile::compute(cone, &angles)?;
            let c = &p.face_contributions;
            let total_se = c.stderr.iter().map(|s| s * s).sum::<f64>().sqrt();
            out.push(compare(name, "angle_sum", 0, (1.0, 0.0), (c.total(), total_se)));
            let m = transfer_matrix(n)?;
            let pred = m.apply(&p.sigma);
            let pred_se = m.apply_stderr(&p.sigma_stderr);
            for i in 1..=n {
                out.push(compare(name, "transfer", i, (p.lambda_loc[i], 0.0), (pred[i], pred_se[i])));
            }
            let union = PolyUnion::single(cone.clone());
            for j in 1..=n {
                let e = sigma_mc(&union, j, &mc_for(mc, idx, 100 + j as u64))?;
                out.push(compare(name, "sigma_mc", j, (p.sigma[j], p.sigma_stderr[j]), (e.value, e.stderr)));
            }
            oracle_lines(name, &union, &p.lambda_loc, &p.lambda_loc_stderr, idx, mc, &mut out)?;
        }
        Geometry::Union(u) => {
            let n = u.ambient_dim();
            let (lambda, lambda_se) = lambda_loc_union_closed(u, &angles)?;
            let sigma: Vec<McEstimate> =
                (0..=n).map(|j| sigma_mc(u, j, &mc_for(mc, idx, 100 + j as u64))).collect::<Result<_>>()?;
            let m = transfer_matrix(n)?;
            let sv: Vec<f64> = sigma.iter().map(|e| e.value).collect();
            let se: Vec<f64> = sigma.iter().map(|e| e.stderr).collect();
            let pred = m.apply(&sv);
            let pred_se = m.apply_stderr(&se);
            for i in 1..=n {
                out.push(compare(name, "transfer", i, (lambda[i], lambda_se[i]), (pred[i], pred_se[i])));
            }
            oracle_lines(name, u, &lambda, &lambda_se, idx, mc, &mut out)?;
        }
        Geometry::Polytope(poly) => {
            let iv = polytope_intrinsic_volumes(poly, &angles)?;
            let fit = steiner_fit_mc(&TubeTarget::from_polytope(poly), &mc_for(mc, idx, 3))?;
            for (i, e) in fit.into_iter().enumerate() {
                out.push(compare(name, "tube_fit", i, (iv.values[i], iv.stderr[i]), (e.value, e.stderr)));
            }
        }
    }
    Ok(out)
}

pub fn verify_table(lines: &[Comparison]) -> String {
    let rows: Vec<Vec<String>> = lines
        .iter()
        .map(|c| {
            vec![
                c.object.clone(),
                c.check.to_string(),
                c.index.to_string(),
                fmt_sig(c.closed, 10),
                fmt_sig(c.oracle, 10),
                fmt_sig(c.closed_stderr.hypot(c.oracle_stderr), 3),
                format!("{:.2}", c.z),
                if c.pass { "ok" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let failed = lines.iter().filter(|c| !c.pass).count();
    let mut out = render_table(&["object", "check", "i", "closed", "oracle", "stderr", "z", "status"], &rows);
    out.push_str(&format!("{} comparisons, {failed} with |z| > {Z_LIMIT}\n", lines.len()));
    out
}

pub fn verify_json(lines: &[Comparison], samples: usize, seed: u64) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        samples: usize,
        seed: u64,
        z_limit: f64,
        pass: bool,
        comparisons: &'a [Comparison],
    }
    let doc = Doc { samples, seed, z_limit: Z_LIMIT, pass: lines.iter().all(|c| c.pass), comparisons: lines };
    serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
}

pub fn polytope_table(name: &str, poly: &crate::polycone::Polytope, angles: &AngleConfig) -> Result<String> {
    let iv = polytope_intrinsic_volumes(poly, angles)?;
    let coeffs = steiner_coefficients(&iv.values);
    let n = poly.ambient_dim();
    let rows: Vec<Vec<String>> = (0..=n)
        .map(|i| vec![i.to_string(), fmt_sig(iv.values[i], 15), fmt_sig(iv.stderr[i], 3), fmt_sig(coeffs[i], 15)])
        .collect();
    let mut out = format!("{name} (polytope, n = {n}, dim = {})\n", poly.dim());
    out.push_str(&render_table(&["index", "intrinsic_volume", "stderr", "steiner_coeff"], &rows));
    out.push_str("intrinsic_volume[i] = Λ_i; steiner_coeff[p] multiplies r^p in V(r)\n");
    Ok(out)
}

pub fn matrix_text(n: usize) -> Result<String> {
    let m = transfer_matrix(n)?;
    let mut out = format!("transfer matrix, n = {n}\n");
    for i in 1..=n {
        for j in i..=n {
            out.push_str(&format!("m_{i}^{j} = {}\n", fmt_sig(m.get(i, j), 15)));
        }
    }
    Ok(out)
}
