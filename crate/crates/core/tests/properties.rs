use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use defect_pt::fields::{self, DefectFamily, DeformParam, SERIES_THRESHOLD};
use defect_pt::grid::Grid;
use defect_pt::numerics::{self, solve_spectrum};
use defect_pt::perturb::{self, LevelSpec};
use defect_pt::schrodinger::{self, ContinuumBox, ContinuumMode, QMPotentialSpec};
use DefectFamily::*;

fn kp(k: f64) -> DeformParam {
    DeformParam::new(k).unwrap()
}

fn family() -> impl Strategy<Value = DefectFamily> {
    prop_oneof![Just(Phi4Kink), Just(Chi4Lump), Just(SineGordonLump)]
}

proptest! {
    #[test]
    fn even_in_k(f in family(), k in -3.0..3.0f64, y in -15.0..15.0f64) {
        prop_assert_eq!(fields::deformed_field(f, kp(k), y), fields::deformed_field(f, kp(-k), y));
        prop_assert_eq!(fields::energy_density(f, kp(k), y), fields::energy_density(f, kp(-k), y));
        prop_assert_eq!(fields::topological_mass_closed(f, kp(k)), fields::topological_mass_closed(f, kp(-k)));
        // the raw closed forms are even as well
        let t = f.theory();
        let k = if k.abs() < 1e-3 { 1e-3 } else { k };
        prop_assert!((t.deformed_closed(k, y) - t.deformed_closed(-k, y)).abs() < 1e-12);
        prop_assert!((t.deformed_deriv_closed(k, y) - t.deformed_deriv_closed(-k, y)).abs() < 1e-12);
        prop_assert!((t.vqm_closed(k, y) - t.vqm_closed(-k, y)).abs() < 1e-10);
    }

    #[test]
    fn parity_in_y(f in family(), k in 0.0..3.0f64, y in -15.0..15.0f64) {
        let v = fields::deformed_field(f, kp(k), y);
        let vm = fields::deformed_field(f, kp(k), -y);
        let d = fields::deformed_field_deriv(f, kp(k), y);
        let dm = fields::deformed_field_deriv(f, kp(k), -y);
        if f.is_kink() {
            prop_assert_eq!(v, -vm);
            prop_assert_eq!(d, dm);
        } else {
            prop_assert_eq!(v, vm);
            prop_assert_eq!(d, -dm);
        }
    }

    #[test]
    fn kink_has_no_nodes(k in 0.0..4.0f64, y in -50.0..50.0f64) {
        prop_assert!(fields::deformed_field_deriv(Phi4Kink, kp(k), y) > 0.0);
    }

    #[test]
    fn lump_derivative_vanishes_only_at_center(f in prop_oneof![Just(Chi4Lump), Just(SineGordonLump)],
                                               k in 0.0..3.0f64, y in 1e-3..20.0f64) {
        prop_assert_eq!(fields::deformed_field_deriv(f, kp(k), 0.0), 0.0);
        prop_assert!(fields::deformed_field_deriv(f, kp(k), y) < 0.0);
        prop_assert!(fields::deformed_field_deriv(f, kp(k), -y) > 0.0);
    }

    #[test]
    fn derivative_matches_central_difference(f in family(), k in 0.0..3.0f64, y in -8.0..8.0f64) {
        let h = 1e-4;
        let fd = (fields::deformed_field(f, kp(k), y + h) - fields::deformed_field(f, kp(k), y - h)) / (2.0 * h);
        prop_assert!((fd - fields::deformed_field_deriv(f, kp(k), y)).abs() < 1e-7);
    }

    #[test]
    fn series_seam_is_continuous(f in family(), y in -20.0..20.0f64) {
        let k = kp(SERIES_THRESHOLD);
        let t = f.theory();
        prop_assert!((fields::deformed_field_series(f, k, y) - t.deformed_closed(k.value(), y)).abs() < 1e-12);
        prop_assert!((fields::deformed_field_deriv_series(f, k, y) - t.deformed_deriv_closed(k.value(), y)).abs() < 1e-12);
    }

    #[test]
    fn energy_density_is_even_and_nonnegative(f in family(), k in 0.0..3.0f64, y in -15.0..15.0f64) {
        let rho = fields::energy_density(f, kp(k), y);
        prop_assert!(rho >= 0.0);
        prop_assert_eq!(rho, fields::energy_density(f, kp(k), -y));
    }

    #[test]
    fn perturbed_levels_even_in_k(k in 0.0..1.0f64, q in 0.0..3.0f64, l in 0.5..30.0f64) {
        for level in [LevelSpec::Zero, LevelSpec::One, LevelSpec::Two { half_width: l }, LevelSpec::Continuum { q, half_width: l }] {
            prop_assert_eq!(perturb::omega_perturbed(level, kp(k)).unwrap(), perturb::omega_perturbed(level, kp(-k)).unwrap());
        }
    }

    #[test]
    fn continuum_normalization_closed_form(q in 0.0..3.0f64, l in 0.5..15.0f64) {
        let mode = ContinuumMode::new(q, ContinuumBox::new(l).unwrap()).unwrap();
        let norm = numerics::quad(|y| mode.density(y).unwrap(), -l, l, 1e-12).unwrap();
        prop_assert!((norm.value - 1.0).abs() < 1e-9);
    }
}

#[test]
fn seam_continuity_on_a_dense_grid() {
    let k = kp(SERIES_THRESHOLD);
    let grid = Grid::symmetric(30.0, 6001).unwrap();
    for f in DefectFamily::ALL {
        let t = f.theory();
        for y in grid.nodes() {
            let gap = (fields::deformed_field_series(f, k, y) - t.deformed_closed(k.value(), y)).abs();
            assert!(gap < 1e-12, "{f} y={y} gap={gap:e}");
        }
    }
}

#[test]
fn mass_is_strictly_decreasing() {
    for f in DefectFamily::ALL {
        let mut last = f64::INFINITY;
        for i in 1..=300 {
            let m = fields::topological_mass_closed(f, kp(i as f64 * 0.01));
            assert!(m < last, "{f} k={}", i as f64 * 0.01);
            last = m;
        }
    }
}

#[test]
fn mass_oracle_equivalence() {
    for f in DefectFamily::ALL {
        for k in [0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 3.0] {
            let closed = fields::topological_mass_closed(f, kp(k));
            let quad = fields::topological_mass_quad(f, kp(k), 1e-11).unwrap().value;
            assert!(((closed - quad) / closed).abs() < 1e-8, "{f} k={k}: {closed} vs {quad}");
        }
    }
}

fn residual<F: Fn(f64) -> f64>(psi: F, omega2: f64, l: f64) -> f64 {
    let h = 5e-3;
    let n = (2.0 * l / h) as usize;
    (0..=n)
        .map(|i| -l + i as f64 * h)
        .map(|y| {
            let d2 = (-psi(y - 2.0 * h) + 16.0 * psi(y - h) - 30.0 * psi(y) + 16.0 * psi(y + h) - psi(y + 2.0 * h))
                / (12.0 * h * h);
            let v = 4.0 - 6.0 / y.cosh().powi(2);
            (-d2 + v * psi(y) - omega2 * psi(y)).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn pt_eigenstate_residuals() {
    for level in [0, 1] {
        let w = schrodinger::pt_eigenvalue(level).unwrap();
        let r = residual(|y| schrodinger::pt_bound_mode(level, y).unwrap(), w, 15.0);
        assert!(r < 1e-8, "level {level}: {r:e}");
    }
    let domain = ContinuumBox::new(12.0).unwrap();
    for q in [0.0, 0.5, 1.0, 2.0] {
        let w = schrodinger::continuum_omega2(q);
        let mode = ContinuumMode::new(q, domain).unwrap();
        let re = residual(|y| mode.eval(y.clamp(-12.0, 12.0)).unwrap().re, w, 11.9);
        let im = residual(|y| mode.eval(y.clamp(-12.0, 12.0)).unwrap().im, w, 11.9);
        assert!(re < 1e-8 && im < 1e-8, "q={q}: {re:e} {im:e}");
    }
}

#[test]
fn spectrum_structure() {
    let grid = Grid::symmetric(20.0, 4001).unwrap();
    for f in DefectFamily::ALL {
        for k in [0.0, 0.5, 1.5] {
            let s = solve_spectrum(&QMPotentialSpec::exact(f, kp(k)), &grid, 4).unwrap();
            assert!(s.eigenvalues.windows(2).all(|w| w[0] < w[1]));
            for (n, psi) in s.eigenfunctions.iter().enumerate() {
                assert_abs_diff_eq!(psi.norm(), 1.0, epsilon = 1e-10);
                let parity = psi.inner(&psi.reflected());
                assert!((parity.abs() - 1.0).abs() < 1e-8, "{f} k={k} n={n}: {parity}");
                if !s.is_box_artifact(n) {
                    assert_eq!(psi.sign_changes(1e-8), n, "{f} k={k} n={n}");
                }
            }
        }
    }
}

#[test]
fn second_order_grid_convergence() {
    let err = |n: usize| {
        let grid = Grid::symmetric(20.0, n).unwrap();
        let s = solve_spectrum(&QMPotentialSpec::poschl_teller(Phi4Kink), &grid, 2).unwrap();
        (s.eigenvalues[1] - 3.0).abs()
    };
    let ratio = err(1001) / err(2001);
    assert!((3.6..4.4).contains(&ratio), "ratio {ratio}");
}

#[test]
fn kink_spectrum_has_no_negative_modes() {
    let grid = Grid::symmetric(20.0, 4001).unwrap();
    for i in 0..=12 {
        let k = i as f64 * 0.25;
        let s = solve_spectrum(&QMPotentialSpec::exact(Phi4Kink, kp(k)), &grid, 3).unwrap();
        assert!(s.eigenvalues.iter().all(|&w| w >= -1e-4), "k={k}: {:?}", s.eigenvalues);
    }
}

#[test]
fn lumps_are_unstable() {
    let grid = Grid::symmetric(20.0, 4001).unwrap();
    for f in [Chi4Lump, SineGordonLump] {
        for k in [0.0, 0.1, 0.3] {
            let s = solve_spectrum(&QMPotentialSpec::exact(f, kp(k)), &grid, 1).unwrap();
            assert!(s.eigenvalues[0] < -1.0, "{f} k={k}: {}", s.eigenvalues[0]);
        }
    }
}

#[test]
fn expanded_lump_spectra_at_k0() {
    let grid = Grid::symmetric(20.0, 4001).unwrap();
    let chi = solve_spectrum(&QMPotentialSpec::poschl_teller(Chi4Lump), &grid, 3).unwrap();
    for (n, w) in chi.eigenvalues.iter().enumerate() {
        let want = 4.0 - (3.0 - n as f64).powi(2);
        assert_abs_diff_eq!(*w, want, epsilon = 1e-3);
    }
    let eta = solve_spectrum(&QMPotentialSpec::poschl_teller(SineGordonLump), &grid, 2).unwrap();
    for (n, w) in eta.eigenvalues.iter().enumerate() {
        let want = 1.0 - (2.0 - n as f64).powi(2);
        assert_abs_diff_eq!(*w, want, epsilon = 1e-3);
    }
}

#[test]
fn continuum_shift_suppressed_with_box_size() {
    for q in [0.0, 1.0, 2.0] {
        for k in [0.2, 0.5] {
            let shifts: Vec<f64> = [3.0, 5.0, 10.0, 20.0]
                .iter()
                .map(|&l| {
                    let w = perturb::omega_perturbed(LevelSpec::Continuum { q, half_width: l }, kp(k)).unwrap();
                    (w - 4.0 - q * q).abs()
                })
                .collect();
            assert!(shifts.windows(2).all(|w| w[1] < w[0]), "q={q} k={k}: {shifts:?}");
        }
    }
}

#[test]
fn kink_zero_mode_spreads_with_k() {
    let grid = Grid::symmetric(20.0, 4001).unwrap();
    let widths: Vec<f64> = [0.0, 0.2, 0.5, 1.0, 2.0]
        .iter()
        .map(|&k| {
            let z = schrodinger::zero_mode_exact(Phi4Kink, kp(k), &grid);
            let sq: Vec<f64> = z.values().iter().map(|v| v * v).collect();
            defect_pt::Profile::new(grid, sq).unwrap().variance()
        })
        .collect();
    assert!(widths.windows(2).all(|w| w[1] > w[0]), "{widths:?}");
}
