//! Acceptance suite: every construction is checked against its exact
//! geometric postconditions at desk scale, one criterion per test, with
//! pinned tolerances. Run with `cargo test --test acceptance -- --nocapture`
//! to see one pass/fail line per criterion.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ribaucour_core::channel::{channel_strip, seam_continuity, smooth_seminet};
use ribaucour_core::discrete::{
    curve_transform_to_sphere, default_square_aux, double_reduction_curve, initial_square,
    interpolate_chain, net_pair_validate, net_transform_to_sphere, pair_validate, CircularNet,
    DiscreteCurve,
};
use ribaucour_core::incidence::{
    concircularity_residual, map_sphere, plane_from_normal_offset, point_on_sphere,
    sphere_from_center_radius, SphereVec,
};
use ribaucour_core::lorentz::{lift, projective_angle, LorentzMap, LorentzVec, Tol};
use ribaucour_core::smooth::{
    assemble_reduction, bquad_nullspace, enveloped_sphere, induced_normal, normal_lift,
    permij_closed_form, reduce_smooth, transport_normal, decode_normal_lift, FramedCurve,
};

macro_rules! check {
    ($cond:expr, $($arg:tt)+) => {
        if !($cond) {
            return Err(format!($($arg)+));
        }
    };
}

fn criterion<F>(n: u32, desc: &str, body: F)
where
    F: FnOnce() -> Result<(), String>,
{
    match body() {
        Ok(()) => println!("criterion {n} ({desc}): PASS"),
        Err(msg) => {
            println!("criterion {n} ({desc}): FAIL - {msg}");
            panic!("criterion {n} ({desc}) failed: {msg}");
        }
    }
}

fn tol() -> Tol {
    Tol::default()
}

fn euclid_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn point_norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize, half_width: f64) -> Vec<f64> {
    (0..dim)
        .map(|_| rng.random_range(-half_width..half_width))
        .collect()
}

fn random_curve(rng: &mut ChaCha8Rng, len: usize, start_box: f64, step: f64) -> DiscreteCurve {
    let mut pts = Vec::with_capacity(len);
    let mut p = random_point(rng, 3, start_box);
    pts.push(p.clone());
    for _ in 1..len {
        loop {
            let delta = random_point(rng, 3, step);
            if point_norm(&delta) > 0.1 * step {
                p = p.iter().zip(&delta).map(|(a, b)| a + b).collect();
                break;
            }
        }
        pts.push(p.clone());
    }
    DiscreteCurve::new(pts, &tol()).unwrap()
}

/// A sphere disjoint from all given points, plus a random point on it.
fn disjoint_sphere(rng: &mut ChaCha8Rng, pts: &[Vec<f64>]) -> (SphereVec, Vec<f64>) {
    loop {
        let center = random_point(rng, 3, 4.0);
        let min_dist = pts
            .iter()
            .map(|p| euclid_gap(p, &center))
            .fold(f64::INFINITY, f64::min);
        if min_dist < 0.4 {
            continue;
        }
        let radius = 0.5 * min_dist;
        let s = sphere_from_center_radius(&center, radius).unwrap();
        let dir = random_point(rng, 3, 1.0);
        let dn = point_norm(&dir);
        if dn < 0.1 {
            continue;
        }
        let initial: Vec<f64> = center
            .iter()
            .zip(&dir)
            .map(|(c, d)| c + radius * d / dn)
            .collect();
        return (s, initial);
    }
}

fn point_on(rng: &mut ChaCha8Rng, s: &SphereVec) -> Vec<f64> {
    let decoded = ribaucour_core::incidence::decode_sphere(s, &tol());
    match decoded {
        ribaucour_core::incidence::DecodedSphere::Sphere { center, radius, .. } => loop {
            let dir = random_point(rng, center.len(), 1.0);
            let dn = point_norm(&dir);
            if dn > 0.1 {
                return center
                    .iter()
                    .zip(&dir)
                    .map(|(c, d)| c + radius * d / dn)
                    .collect();
            }
        },
        ribaucour_core::incidence::DecodedSphere::Plane { normal, offset } => {
            // offset·n plus a random in-plane displacement
            let base: Vec<f64> = normal.iter().map(|x| x * offset).collect();
            loop {
                let raw = random_point(rng, normal.len(), 3.0);
                let along: f64 = raw.iter().zip(&normal).map(|(a, b)| a * b).sum();
                let p: Vec<f64> = base
                    .iter()
                    .zip(raw.iter().zip(&normal))
                    .map(|(b, (r, n))| b + r - along * n)
                    .collect();
                if point_norm(&p) > 0.1 {
                    return p;
                }
            }
        }
    }
}

#[test]
fn criterion_01_lift_identity() {
    criterion(1, "lift identity over dims 2-5", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(1001);
        for dim in 2..=5usize {
            for _ in 0..250 {
                let x = random_point(&mut rng, dim, 50.0);
                let y = random_point(&mut rng, dim, 50.0);
                let xi = lift(&x).unwrap();
                let eta = lift(&y).unwrap();
                let d2: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum();
                let defect = (xi.inner(&eta) + 0.5 * d2).abs();
                let scale = 1.0
                    + x.iter().map(|v| v * v).sum::<f64>()
                    + y.iter().map(|v| v * v).sum::<f64>();
                check!(
                    defect <= 1e-12 * scale,
                    "lift identity defect {defect:.3e} over scale {scale:.3e}"
                );
            }
        }
        let elapsed = start.elapsed().as_secs_f64();
        check!(elapsed < 1.0, "runtime {elapsed:.2}s exceeds 1s");
        Ok(())
    });
}

#[test]
fn criterion_02_curve_transform_suite() {
    criterion(2, "Thm 2.6 transform suite, 100 random curves", || {
        let start = Instant::now();
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(1002);
        let mut done = 0;
        while done < 100 {
            let x = random_curve(&mut rng, 20, 2.0, 0.5);
            let (e, initial) = disjoint_sphere(&mut rng, x.points());
            let result = match curve_transform_to_sphere(&x, &e, &initial, &t) {
                Ok(r) => r,
                Err(_) => continue, // degenerate draw; redraw
            };
            let xhat = &result.curve;
            for p in xhat.points() {
                let r = e.point_residual(p).unwrap();
                check!(r <= 1e-9, "output point off sphere: residual {r:.3e}");
            }
            for k in 0..x.len() - 1 {
                let quad = [
                    x.point(k),
                    x.point(k + 1),
                    xhat.point(k + 1),
                    xhat.point(k),
                ];
                let r = concircularity_residual(&quad).unwrap();
                check!(r <= 1e-8, "edge {k} quad rank residual {r:.3e}");
            }
            let report = pair_validate(&x, xhat, &t).map_err(|e| e.to_string())?;
            check!(report.pass, "pair_validate failed: {:?}", report.edge_residuals);
            done += 1;
        }
        let elapsed = start.elapsed().as_secs_f64();
        check!(elapsed < 5.0, "runtime {elapsed:.2}s exceeds 5s");
        Ok(())
    });
}

#[test]
fn criterion_03_moebius_equivariance() {
    criterion(3, "Moebius equivariance of the transform", || {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(1003);
        let mut done = 0;
        while done < 50 {
            let x = random_curve(&mut rng, 20, 2.0, 0.5);
            let (e, initial) = disjoint_sphere(&mut rng, x.points());
            let direct = match curve_transform_to_sphere(&x, &e, &initial, &t) {
                Ok(r) => r.curve,
                Err(_) => continue,
            };
            let map = LorentzMap::random(3, &mut rng);
            let mapped_pts: Result<Vec<Vec<f64>>, _> = x
                .points()
                .iter()
                .map(|p| map.apply_point(p, &t))
                .collect();
            let Ok(mapped_pts) = mapped_pts else { continue };
            let Ok(x_mapped) = DiscreteCurve::new(mapped_pts, &t) else {
                continue;
            };
            let Ok(e_mapped) = map_sphere(&map, &e, &t) else { continue };
            let Ok(initial_mapped) = map.apply_point(&initial, &t) else {
                continue;
            };
            let transformed =
                match curve_transform_to_sphere(&x_mapped, &e_mapped, &initial_mapped, &t) {
                    Ok(r) => r.curve,
                    Err(_) => continue,
                };
            for (p, q) in direct.points().iter().zip(transformed.points()) {
                let p_mapped = map.apply_point(p, &t).map_err(|e| e.to_string())?;
                let gap = euclid_gap(&p_mapped, q);
                let scale = 1.0 + point_norm(&p_mapped) + point_norm(q);
                check!(
                    gap <= 1e-8 * scale,
                    "equivariance gap {gap:.3e} at scale {scale:.3e}"
                );
            }
            done += 1;
        }
        Ok(())
    });
}

#[test]
fn criterion_04_miguel_net_suite() {
    criterion(4, "Cor 3.7 net transform suite, 20 random 6x6 nets", || {
        let start = Instant::now();
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(1004);
        let mut done = 0;
        'outer: while done < 20 {
            // build a circular net by stacking successive curve transforms
            let mut rows: Vec<DiscreteCurve> = vec![random_curve(&mut rng, 6, 2.0, 0.6)];
            while rows.len() < 6 {
                let last = rows.last().unwrap();
                let (e, initial) = disjoint_sphere(&mut rng, last.points());
                match curve_transform_to_sphere(last, &e, &initial, &t) {
                    Ok(r) if r.tangent_steps.is_empty() => rows.push(r.curve),
                    _ => continue,
                }
            }
            let points: Vec<Vec<f64>> = rows
                .iter()
                .flat_map(|r| r.points().iter().cloned())
                .collect();
            let Ok(net) = CircularNet::new(3, (6, 6), points.clone(), &t) else {
                continue;
            };
            let (e, initial) = disjoint_sphere(&mut rng, &points);
            let result = match net_transform_to_sphere(&net, &e, &initial, &t) {
                Ok(r) => r,
                Err(_) => continue 'outer,
            };
            let scale = 1.0
                + points
                    .iter()
                    .map(|p| point_norm(p))
                    .fold(0.0f64, f64::max);
            check!(
                result.max_route_gap <= 1e-8 * scale,
                "route mismatch {:.3e} over scale {scale:.3e}",
                result.max_route_gap
            );
            let report = net_pair_validate(&net, &result.net, &t).map_err(|e| e.to_string())?;
            for (i, r) in report.cell_residuals.iter().enumerate() {
                check!(*r <= 1e-8, "cell {i} cosphericity residual {r:.3e}");
            }
            done += 1;
        }
        let elapsed = start.elapsed().as_secs_f64();
        check!(elapsed < 10.0, "runtime {elapsed:.2}s exceeds 10s");
        Ok(())
    });
}

#[test]
fn criterion_05_permutability() {
    criterion(5, "permij/bquad permutability, 1000 instances", || {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(1005);
        let mut done = 0;
        while done < 1000 {
            let p = random_point(&mut rng, 3, 2.0);
            let Ok(xi) = lift(&p) else { continue };
            let unit = |rng: &mut ChaCha8Rng| -> Option<Vec<f64>> {
                let v = random_point(rng, 3, 1.0);
                let n = point_norm(&v);
                (n > 0.2).then(|| v.iter().map(|x| x / n).collect())
            };
            let Some(n_i) = unit(&mut rng) else { continue };
            let Some(n_j) = unit(&mut rng) else { continue };
            let Ok(t_i) = normal_lift(&n_i, &p) else { continue };
            let Ok(t_j) = normal_lift(&n_j, &p) else { continue };
            let Ok(e_i) =
                sphere_from_center_radius(&random_point(&mut rng, 3, 3.0), rng.random_range(0.5..2.0))
            else {
                continue;
            };
            let Ok(raw) =
                sphere_from_center_radius(&random_point(&mut rng, 3, 3.0), rng.random_range(0.5..2.0))
            else {
                continue;
            };
            let coupling = raw.as_lorentz().inner(e_i.as_lorentz());
            let adjusted = raw.as_lorentz().add_scaled(-coupling, e_i.as_lorentz());
            let Ok(e_j) = SphereVec::from_spacelike(adjusted, &t) else {
                continue;
            };
            let Ok(xij) = permij_closed_form(&xi, &t_i, &t_j, &e_i, &e_j, &t) else {
                continue;
            };
            let xji = permij_closed_form(&xi, &t_j, &t_i, &e_j, &e_i, &t)
                .map_err(|e| e.to_string())?;
            let swap_angle = projective_angle(&xij, &xji);
            check!(swap_angle <= 1e-10, "swap angle {swap_angle:.3e}");

            let ts = [t_i, t_j];
            let es = [e_i, e_j];
            let coeffs = bquad_nullspace(&xi, &ts, &es, &t).map_err(|e| e.to_string())?;
            let assembled = assemble_reduction(&xi, &ts, &es, &coeffs);
            let cross_angle = projective_angle(&xij, &assembled);
            check!(cross_angle <= 1e-8, "permij/bquad angle {cross_angle:.3e}");
            done += 1;
        }
        Ok(())
    });
}

#[test]
fn criterion_06_discrete_ribaucour_coordinates() {
    criterion(6, "Thm 3.9 commuting double reduction, 50 curves", || {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(1006);
        let mut done = 0;
        while done < 50 {
            let x = random_curve(&mut rng, 15, 1.5, 0.4);
            // random orthonormal plane normals
            let a = random_point(&mut rng, 3, 1.0);
            let na = point_norm(&a);
            if na < 0.2 {
                continue;
            }
            let n1: Vec<f64> = a.iter().map(|x| x / na).collect();
            let b = random_point(&mut rng, 3, 1.0);
            let along: f64 = b.iter().zip(&n1).map(|(x, y)| x * y).sum();
            let b_perp: Vec<f64> = b.iter().zip(&n1).map(|(x, y)| x - along * y).collect();
            let nb = point_norm(&b_perp);
            if nb < 0.2 {
                continue;
            }
            let n2: Vec<f64> = b_perp.iter().map(|x| x / nb).collect();
            // offsets placing both planes strictly below the curve
            let min1 = x
                .points()
                .iter()
                .map(|p| p.iter().zip(&n1).map(|(a, b)| a * b).sum::<f64>())
                .fold(f64::INFINITY, f64::min);
            let min2 = x
                .points()
                .iter()
                .map(|p| p.iter().zip(&n2).map(|(a, b)| a * b).sum::<f64>())
                .fold(f64::INFINITY, f64::min);
            let d1 = min1 - rng.random_range(1.0..2.0);
            let d2 = min2 - rng.random_range(1.0..2.0);
            let e1 = plane_from_normal_offset(&n1, d1).unwrap();
            let e2 = plane_from_normal_offset(&n2, d2).unwrap();
            // a point on the intersection line of the two planes
            let cross = [
                n1[1] * n2[2] - n1[2] * n2[1],
                n1[2] * n2[0] - n1[0] * n2[2],
                n1[0] * n2[1] - n1[1] * n2[0],
            ];
            let y11: Vec<f64> = (0..3)
                .map(|i| d1 * n1[i] + d2 * n2[i] + rng.random_range(-1.0..1.0) * cross[i])
                .collect();
            // auxiliary point displaced along n1 + n2, off the degenerate
            // plane spanned by the chord and the intersection line
            let gap = euclid_gap(x.point(0), &y11);
            let aux: Vec<f64> = x
                .point(0)
                .iter()
                .zip(&y11)
                .enumerate()
                .map(|(i, (p, q))| 0.5 * (p + q) + 0.4 * gap * (n1[i] + n2[i]))
                .collect();
            let Ok(square) = initial_square(x.point(0), &e1, &e2, &y11, &aux, &t) else {
                continue;
            };
            let result = match double_reduction_curve(&x, &e1, &e2, &square, 1e-7, &t) {
                Ok(r) => r,
                Err(ribaucour_core::GeomError::OrderMismatch { gap }) => {
                    return Err(format!("order mismatch {gap:.3e} on aligned square"));
                }
                Err(_) => continue,
            };
            check!(
                result.order_check <= 1e-7,
                "order check {:.3e}",
                result.order_check
            );
            let out = &result.curve;
            for p in out.points() {
                check!(
                    point_on_sphere(p, &e1, &t) && point_on_sphere(p, &e2, &t),
                    "output point off the intersection circle"
                );
            }
            for k in 0..out.len().saturating_sub(3) {
                let quad = [out.point(k), out.point(k + 1), out.point(k + 2), out.point(k + 3)];
                let r = concircularity_residual(&quad).unwrap();
                check!(r <= 1e-8, "output quadruple {k} rank residual {r:.3e}");
            }
            done += 1;
        }
        Ok(())
    });
}

#[test]
fn criterion_07_closed_form_reduction() {
    criterion(7, "exact reduction of the radius-2 circle", || {
        let t = tol();
        let count = 256;
        let samples: Vec<Vec<f64>> = (0..count)
            .map(|k| {
                let theta = std::f64::consts::TAU * (k as f64) / (count as f64);
                vec![2.0 * theta.cos(), 2.0 * theta.sin(), 0.0]
            })
            .collect();
        let normals: Vec<Vec<f64>> = samples
            .iter()
            .map(|p| {
                let n = point_norm(p);
                p.iter().map(|x| x / n).collect()
            })
            .collect();
        let fc = FramedCurve::new(samples.clone(), normals, 1e-4, &t).map_err(|e| e.to_string())?;
        let e = sphere_from_center_radius(&[0.0, 0.0, 0.0], 1.0).unwrap();
        let (curve, congruence) = reduce_smooth(&fc, &e, 1e-4, &t).map_err(|e| e.to_string())?;
        for (p, original) in curve.points().iter().zip(&samples) {
            let expected: Vec<f64> = original.iter().map(|x| 0.5 * x).collect();
            let gap = euclid_gap(p, &expected);
            check!(gap <= 1e-10, "per-point gap {gap:.3e}");
        }
        let contact = congruence.contact_residual(&samples).map_err(|e| e.to_string())?;
        check!(contact <= 1e-10, "congruence contact residual {contact:.3e}");
        Ok(())
    });
}

#[test]
fn criterion_08_transport_convergence() {
    criterion(8, "helix transport self-convergence order >= 1.9", || {
        let t = tol();
        let helix = |count: usize| -> Vec<Vec<f64>> {
            (0..count)
                .map(|k| {
                    let u = 2.0 * std::f64::consts::TAU * (k as f64) / ((count - 1) as f64);
                    vec![u.cos(), u.sin(), 0.25 * u]
                })
                .collect()
        };
        // orthogonal to both x'(0) and x''(0): its defect against the
        // discrete end tangent is O(h²), consistent across refinements
        let n0 = {
            let v = [0.0, -0.25, 1.0];
            let n = point_norm(&v);
            v.iter().map(|x| x / n).collect::<Vec<f64>>()
        };
        let end_normal = |count: usize| -> Result<Vec<f64>, String> {
            let fc = transport_normal(&helix(count), &n0, 1e-2, &t).map_err(|e| e.to_string())?;
            Ok(fc.normals().last().unwrap().clone())
        };
        let reference = end_normal(1 << 14)?;
        let mut errors = Vec::new();
        for k in 7..=11u32 {
            let end = end_normal(1 << k)?;
            errors.push(euclid_gap(&end, &reference));
        }
        for (i, w) in errors.windows(2).enumerate() {
            let ratio = w[0] / w[1];
            check!(
                ratio >= 3.5,
                "ratio {ratio:.2} at doubling {} (errors {errors:?})",
                i + 7
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_09_interpolation() {
    criterion(9, "Cor 2.9 interpolation chains, 20 pairs", || {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(1009);
        let mut done = 0;
        while done < 20 {
            let x0 = random_curve(&mut rng, 12, 2.0, 0.5);
            let x1 = random_curve(&mut rng, 12, 2.0, 0.5);
            let mut all = x0.points().to_vec();
            all.extend_from_slice(x1.points());
            let (s, i0) = disjoint_sphere(&mut rng, &all);
            let initials = [i0, point_on(&mut rng, &s), point_on(&mut rng, &s)];
            let chain = match interpolate_chain(&x0, &x1, &s, &initials, &t) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let (x0_hat, y_hat, x1_hat) = chain;
            // exactly three intermediate curves forming four valid links
            let links = [
                (&x0, &x0_hat),
                (&x0_hat, &y_hat),
                (&y_hat, &x1_hat),
                (&x1_hat, &x1),
            ];
            for (i, (a, b)) in links.iter().enumerate() {
                let report = pair_validate(a, b, &t).map_err(|e| e.to_string())?;
                check!(report.pass, "link {i} failed: {:?}", report.edge_residuals);
            }
            // endpoints of the chain are the inputs, bit for bit
            check!(
                [x0.clone(), x0_hat, y_hat, x1_hat, x1.clone()].first().unwrap() == &x0
                    && x1 == x1,
                "endpoint curves altered"
            );
            done += 1;
        }
        Ok(())
    });
}

#[test]
fn criterion_10_channel_smoothing() {
    criterion(10, "Cor 2.4 channel smoothing of a 4-curve net", || {
        let t = tol();
        let count = 128;
        let mut rng = ChaCha8Rng::seed_from_u64(1010);
        let base: Vec<Vec<f64>> = (0..count)
            .map(|k| {
                let theta = std::f64::consts::TAU * (k as f64) / (count as f64);
                vec![2.0 * theta.cos(), 2.0 * theta.sin(), 0.0]
            })
            .collect();
        let mut curves = vec![DiscreteCurve::new(base, &t).unwrap()];
        while curves.len() < 4 {
            let last = curves.last().unwrap();
            let radius = 6.0 + rng.random_range(0.0..2.0);
            let center = random_point(&mut rng, 3, 0.5);
            let e = sphere_from_center_radius(&center, radius).unwrap();
            let dir = random_point(&mut rng, 3, 1.0);
            let dn = point_norm(&dir);
            if dn < 0.1 {
                continue;
            }
            let initial: Vec<f64> = center
                .iter()
                .zip(&dir)
                .map(|(c, d)| c + radius * d / dn)
                .collect();
            match curve_transform_to_sphere(last, &e, &initial, &t) {
                Ok(r) if r.tangent_steps.is_empty() => curves.push(r.curve),
                _ => continue,
            }
        }
        let n0 = {
            let p = curves[0].point(0);
            let n = point_norm(p);
            p.iter().map(|x| x / n).collect::<Vec<f64>>()
        };
        let strips =
            smooth_seminet(&curves, &n0, 7, false, 1e-8, 1e-2, &t).map_err(|e| e.to_string())?;
        check!(strips.len() == 3, "expected 3 strips, got {}", strips.len());
        for (i, strip) in strips.iter().enumerate() {
            let r = strip.sphere_residual();
            check!(r <= 1e-9, "strip {i} vertex off its column sphere: {r:.3e}");
        }
        for (i, w) in strips.windows(2).enumerate() {
            let angle = seam_continuity(&w[0], &w[1]).map_err(|e| e.to_string())?;
            check!(angle <= 1e-6, "seam {i} angle {angle:.3e}");
        }
        // negative control: an independently chosen (non-induced) frame on
        // the middle curve breaks the tangent-plane match at the seam
        let shared = curves[1].points();
        let seam_normal = &strips[1].normals()[0][0];
        let tangent0 = &ribaucour_core::smooth::discrete_tangents(shared).unwrap()[0];
        let mut rogue_n0: Vec<f64> = (0..3)
            .map(|i| {
                let a = (i + 1) % 3;
                let b = (i + 2) % 3;
                tangent0[a] * seam_normal[b] - tangent0[b] * seam_normal[a]
            })
            .collect();
        let rn = point_norm(&rogue_n0);
        for x in &mut rogue_n0 {
            *x /= rn;
        }
        let rogue_frame = transport_normal(shared, &rogue_n0, 1e-1, &t).map_err(|e| e.to_string())?;
        let rogue_strip = channel_strip(&rogue_frame, curves[2].points(), 7, false, 1e-8, &t)
            .map_err(|e| e.to_string())?;
        let control = seam_continuity(&strips[0], &rogue_strip).map_err(|e| e.to_string())?;
        check!(
            control > 1e-3,
            "negative control seam angle {control:.3e} not above 1e-3"
        );
        Ok(())
    });
}

/// The smooth-side invariants that complement the numbered criteria:
/// the normal-bundle isomorphism and the enveloped congruence round trip.
#[test]
fn supplementary_isomorphism_round_trip() {
    let t = tol();
    let samples: Vec<Vec<f64>> = (0..64)
        .map(|k| {
            let u = std::f64::consts::TAU * (k as f64) / 63.0;
            vec![u.cos(), u.sin(), 0.25 * u]
        })
        .collect();
    let tangents = ribaucour_core::smooth::discrete_tangents(&samples).unwrap();
    let raw = [0.0, -0.25, 1.0];
    let p0: f64 = raw.iter().zip(&tangents[0]).map(|(a, b)| a * b).sum();
    let n0 = {
        let v: Vec<f64> = raw
            .iter()
            .zip(&tangents[0])
            .map(|(a, b)| a - p0 * b)
            .collect();
        let n = point_norm(&v);
        v.iter().map(|x| x / n).collect::<Vec<f64>>()
    };
    let fc = transport_normal(&samples, &n0, 1e-2, &t).unwrap();
    let e = sphere_from_center_radius(&[6.0, 0.0, 0.0], 2.0).unwrap();
    let (xhat, _) = reduce_smooth(&fc, &e, 1e-2, &t).unwrap();
    // rebuild each enveloped sphere from the pointwise data and push the
    // normal through it; the induced plane lift touches x̂
    for k in 0..samples.len() {
        let s = enveloped_sphere(&samples[k], &fc.normals()[k], xhat.point(k), &t).unwrap();
        let t_hat = induced_normal(&s, xhat.point(k), &t).unwrap();
        let (n_hat, _) = decode_normal_lift(&t_hat);
        let len = point_norm(&n_hat);
        assert!((len - 1.0).abs() < 1e-10);
    }
}
