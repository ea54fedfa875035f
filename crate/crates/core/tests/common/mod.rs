#![allow(dead_code)]

use std::f64::consts::PI;
use vkplate::fields::{AngularProfile, Harmonic, Material};
use vkplate::scenarios::*;

pub fn mat() -> Material {
    Material::new(1.0, 1.0, 0.3).unwrap()
}

pub const TETRA_GAMMA: f64 = 0.2;

pub fn tetrahedral_angles() -> Vec<(f64, f64)> {
    let g = TETRA_GAMMA;
    vec![(0.5 * PI, g), (7.0 * PI / 6.0, g), (11.0 * PI / 6.0, g)]
}

/// One bundle of each scenario family, with the parameter sets used throughout the tests.
pub fn all_scenarios() -> Vec<Scenario> {
    let g = TETRA_GAMMA;
    let dcone = AngularProfile::harmonic(vec![Harmonic::constant(0.3), Harmonic::cos(0.3 * (2.0f64 / 3.0).sqrt(), 2.0)]).unwrap();
    vec![
        make_disclination(PI, mat(), 0.0).unwrap(),
        make_disclination(-1.5 * PI, mat(), 0.3).unwrap(),
        make_dcone(dcone, mat()).unwrap(),
        make_linear_fold(0.1, 2.0, 6.0, -1.0, 1.0, mat()).unwrap(),
        make_linear_fold(0.1, 0.0, 0.0, -1.0, 1.0, mat()).unwrap(),
        make_circular_fold(0.2, 0.5, mat(), true).unwrap(),
        make_circular_fold(0.2, 0.5, mat(), false).unwrap(),
        solve_terminating_fold(0.3, mat()).unwrap().0,
        make_tetrahedral_folds(&tetrahedral_angles(), mat()).unwrap().0,
        make_tetrahedral_folds(&[(0.0, g), (PI, g)], mat()).unwrap().0,
    ]
}
