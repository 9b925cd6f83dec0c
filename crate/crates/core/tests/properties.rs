use lkpolar::angle::{grassmann_sample, AngleConfig};
use lkpolar::crofton::{fiber_euler, sigma_mc, AffineSubspace, McConfig};
use lkpolar::invariants::InvariantProfile;
use lkpolar::numkit::rng::gaussian_frame;
use lkpolar::polycone::{faces, random_pointed_cone, DEFAULT_TOL};
use lkpolar::{Basis, ConvexCone, PolyUnion, RngStream, Vector};
use proptest::prelude::*;
use rand::Rng;

fn random_cone(seed: u64, n: usize, extra: usize) -> ConvexCone {
    random_pointed_cone(&mut RngStream::new(seed).rng(), n, n + extra)
}

fn profile(c: &ConvexCone) -> InvariantProfile {
    InvariantProfile::compute(c, &AngleConfig::default()).unwrap()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn unit(v: &[f64]) -> Vec<f64> {
    let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / r).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generators_and_halfspaces_round_trip(seed in any::<u64>(), n in 2usize..=4, extra in 0usize..4) {
        let c = random_cone(seed, n, extra);
        let back = ConvexCone::from_halfspaces(c.facet_normals(), n, DEFAULT_TOL).unwrap();
        prop_assert_eq!(back.generators().len(), c.generators().len());
        for g in back.generators() {
            let u = unit(g);
            prop_assert!(c.generators().iter().any(|h| close(&unit(h), &u, 1e-8)));
        }
        let again = ConvexCone::from_generators(back.generators(), n, DEFAULT_TOL).unwrap();
        prop_assert_eq!(again.facet_normals().len(), c.facet_normals().len());
    }

    #[test]
    fn face_numbers_satisfy_euler(seed in any::<u64>(), n in 2usize..=4, extra in 0usize..4) {
        let c = random_cone(seed, n, extra);
        let f = faces(&c).f_vector();
        let alternating: i64 = f.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(alternating, 0);
        prop_assert_eq!(f[0], 1);
        prop_assert_eq!(f[n], 1);
        prop_assert_eq!(f[1], c.generators().len());
        prop_assert_eq!(f[n - 1], c.facet_normals().len());
    }

    #[test]
    fn invariants_ignore_generator_scaling(seed in any::<u64>(), n in 2usize..=3, scale in 0.01f64..100.0) {
        let c = random_cone(seed, n, 2);
        let scaled = c.map_generators(|g| g.iter().map(|x| x * scale).collect()).unwrap();
        let (a, b) = (profile(&c), profile(&scaled));
        prop_assert!(close(&a.sigma, &b.sigma, 1e-9));
        prop_assert!(close(&a.lambda_loc, &b.lambda_loc, 1e-9));
    }

    #[test]
    fn invariants_ignore_rotations(seed in any::<u64>(), n in 2usize..=3) {
        let c = random_cone(seed, n, 2);
        let frame = gaussian_frame(&mut RngStream::new(seed ^ 0x5eed).rng(), n, n);
        let q: Vec<Vec<f64>> = frame.vectors().iter().map(|v| v.to_vec()).collect();
        let rotated = c.map_generators(|g| q.iter().map(|row| row.iter().zip(g).map(|(a, b)| a * b).sum()).collect()).unwrap();
        let (a, b) = (profile(&c), profile(&rotated));
        prop_assert!(close(&a.sigma, &b.sigma, 1e-9));
        prop_assert!(close(&a.lambda_loc, &b.lambda_loc, 1e-9));
        prop_assert!(close(&a.face_contributions.values, &b.face_contributions.values, 1e-9));
    }

    #[test]
    fn fiber_euler_is_bounded(seed in any::<u64>(), n in 2usize..=3, k in 0usize..3, members in 1usize..=3) {
        let root = RngStream::new(seed);
        let cones: Vec<ConvexCone> =
            (0..members).map(|m| random_pointed_cone(&mut root.substream(m as u64).rng(), n, n + 1)).collect();
        let union = PolyUnion::new(cones.clone()).unwrap();
        let k = k.min(n);
        let mut rng = root.substream(99).rng();
        let dirs = grassmann_sample(&mut rng, k, n);
        let point: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let plane = AffineSubspace::new(Vector::from(point), dirs).unwrap();
        let chi = fiber_euler(&union, &plane, f64::INFINITY).unwrap();
        prop_assert!((0..=members as i32).contains(&chi), "chi = {}", chi);
        for c in cones {
            let single = fiber_euler(&PolyUnion::single(c), &plane, f64::INFINITY).unwrap();
            prop_assert!(single == 0 || single == 1);
        }
    }

    #[test]
    fn grassmann_planes_are_isotropic(seed in any::<u64>(), n in 2usize..=5, i in 1usize..5) {
        let i = i.min(n - 1).max(1);
        let mut rng = RngStream::new(seed).rng();
        let trials = 4000;
        let mut mass = vec![0.0; n];
        for _ in 0..trials {
            let p = grassmann_sample(&mut rng, i, n);
            prop_assert_eq!(p.dim(), i);
            for (k, m) in mass.iter_mut().enumerate() {
                let mut e = vec![0.0; n];
                e[k] = 1.0;
                *m += p.project(&e).iter().map(|x| x * x).sum::<f64>();
            }
        }
        let expected = i as f64 / n as f64;
        // each |P e_k|^2 lies in [0, 1], so its sd is at most 1/2
        let tol = 5.0 * 0.5 / (trials as f64).sqrt();
        for m in mass {
            prop_assert!((m / trials as f64 - expected).abs() <= tol);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fiber_oracle_matches_closed_form(seed in any::<u64>(), n in 2usize..=3) {
        let c = random_cone(seed, n, 2);
        let closed = profile(&c);
        let union = PolyUnion::single(c);
        let cfg = McConfig { samples: 4000, seed, ..McConfig::default() };
        for j in 1..=n {
            let e = sigma_mc(&union, j, &cfg).unwrap();
            let z = e.z_score(closed.sigma[j], 0.0);
            prop_assert!(z.abs() <= 5.0, "j = {}: {} vs {} (z {})", j, e.value, closed.sigma[j], z);
        }
    }
}

#[test]
fn zero_dimensional_fibers_are_membership() {
    let q = PolyUnion::single(ConvexCone::orthant(3));
    let at = |p: [f64; 3]| AffineSubspace::new(Vector::from(p.to_vec()), Basis::empty(3)).unwrap();
    assert_eq!(fiber_euler(&q, &at([0.1, 0.2, 0.3]), f64::INFINITY).unwrap(), 1);
    assert_eq!(fiber_euler(&q, &at([0.1, -0.2, 0.3]), f64::INFINITY).unwrap(), 0);
}
