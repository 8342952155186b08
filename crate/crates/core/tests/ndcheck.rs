use num_complex::Complex64;
use vortexw::ndcheck::*;
use vortexw::{ConformalPolyMap, Trig};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn finite_difference_operator_matches_disc_operator() {
    let id = ConformalPolyMap::identity();
    let fd = assemble_du_matrix(&id, 12, DEFAULT_FD_STEP).unwrap();
    let exact = du_star_matrix_analytic_disc(12).unwrap();
    assert!((&fd.matrix - &exact.matrix).amax() < 1e-6);
}

#[test]
fn compact_part_only_touches_the_first_mode() {
    // for n ≥ 2 the columns are those of L alone: n on the diagonal
    let fd = assemble_du_matrix_at(&ConformalPolyMap::identity(), c(0.0, 0.0), 10, DEFAULT_FD_STEP).unwrap();
    for n in 2..=10 {
        for kind in [Trig::Cos, Trig::Sin] {
            let col = fd.index_of(n, kind).unwrap();
            for row in 0..fd.matrix.nrows() {
                let expect = if row == col { n as f64 } else { 0.0 };
                assert!((fd.matrix[(row, col)] - expect).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn perturbed_disc_operator_stays_close_to_the_disc_spectrum() {
    let f = ConformalPolyMap::perturbed_identity(c(0.05, 0.0), 2);
    let m = assemble_du_matrix(&f, 16, DEFAULT_FD_STEP).unwrap();
    let smin = m.smallest_singular_value();
    assert!((smin - 1.0).abs() < 0.25);
    let diag: f64 = (0..m.matrix.nrows()).map(|i| m.matrix[(i, i)].abs()).fold(f64::INFINITY, f64::min);
    let off: f64 = (0..m.matrix.nrows())
        .map(|i| (0..m.matrix.ncols()).filter(|&j| j != i).map(|j| m.matrix[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    assert!(off < diag);

    let coarse = assemble_du_matrix(&f, 16, DEFAULT_FD_STEP).unwrap().smallest_singular_value();
    let fine = assemble_du_matrix(&f, 32, DEFAULT_FD_STEP).unwrap().smallest_singular_value();
    assert!((coarse - fine).abs() < 1e-3);
}

#[test]
fn nd_checks_for_disc_scalings_and_perturbations() {
    let id = check_nd2(&ConformalPolyMap::identity(), 16).unwrap();
    assert!(id.pass && (id.smallest_singular_value - 1.0).abs() < 1e-6);

    let scaled = ConformalPolyMap::scaling(2.0);
    let nd1 = check_nd1(&scaled).unwrap();
    assert!(nd1.pass && nd1.a0.norm() < 1e-12);
    let m = assemble_du_matrix(&scaled, 8, DEFAULT_FD_STEP).unwrap();
    let disc = du_star_matrix_analytic_disc(8).unwrap();
    assert!((&m.matrix - &disc.matrix).amax() < 1e-6);
    assert!(check_nd2(&scaled, 8).unwrap().pass);

    let f = ConformalPolyMap::perturbed_identity(c(0.05, 0.0), 2);
    let nd1 = check_nd1(&f).unwrap();
    assert!(nd1.pass);
    let two_pi = 2.0 * std::f64::consts::PI;
    let id2 = nalgebra::DMatrix::<f64>::identity(2, 2);
    assert!((&nd1.hessian_hat + two_pi * &id2).amax() < 0.05 * two_pi * 2.0);
    assert!((&nd1.hessian_w - two_pi * &id2).amax() < 0.05 * two_pi * 2.0);
    assert!(check_nd2_at(&f, nd1.a0, 16).unwrap().pass);
}

#[test]
fn stability_family_threshold_is_reported() {
    // f(z) = z + εz²: report where the pipeline first fails; no assertion on
    // the threshold itself.
    let mut threshold = None;
    for k in 1..=9 {
        let eps = 0.05 * k as f64;
        let f = ConformalPolyMap::perturbed_identity(c(eps, 0.0), 2);
        let ok = check_nd1(&f)
            .and_then(|nd1| if nd1.pass { check_nd2_at(&f, nd1.a0, 12).map(|r| r.pass) } else { Ok(false) })
            .unwrap_or(false);
        if !ok {
            threshold = Some(eps);
            break;
        }
    }
    println!("first failing ε on the grid 0.05..0.45: {threshold:?}");
}

#[test]
fn determinant_identity_on_random_inputs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
    for _ in 0..1000 {
        let w = c(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        assert!(magic_determinant_check(w));
    }
}
