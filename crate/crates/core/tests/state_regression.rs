//! Ground state of the reference well against the grid stored by the first
//! verified build.

use diracwell::model::QuantumLabel;
use diracwell::spectrum::square_well_spectrum;
use diracwell::states::{assemble_square_well_state, probability_density, to_real_spinor};

const REFERENCE: &str = include_str!("data/ground_state_k2_v02.csv");

#[test]
fn ground_state_matches_stored_grid() {
    let eps = square_well_spectrum(2.0, 2.0, 1.0)[0];
    let state = assemble_square_well_state(QuantumLabel::new(2.0, eps), 2.0, 1.0).unwrap();
    let mut lines = REFERENCE.lines();
    assert_eq!(lines.next(), Some("x,re_psi1,im_psi1"));
    let mut rows = 0;
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let psi = state.psi1(v[0]);
        assert!((psi.re - v[1]).abs() < 1e-9 && (psi.im - v[2]).abs() < 1e-9, "x = {}", v[0]);
        rows += 1;
    }
    assert_eq!(rows, 41);
}

#[test]
fn ground_state_density_is_a_single_even_peak() {
    let eps = square_well_spectrum(2.0, 2.0, 1.0)[0];
    let state = assemble_square_well_state(QuantumLabel::new(2.0, eps), 2.0, 1.0).unwrap();
    let rho = probability_density(&state).rho;
    let mid = rho.len() / 2;
    for i in 0..mid {
        let j = rho.len() - 1 - i;
        assert!((rho[i] - rho[j]).abs() < 1e-10);
        assert!(rho[i] < rho[i + 1], "rho not increasing towards the centre at {i}");
    }
    let spinor = to_real_spinor(&state);
    assert!(spinor.psi1[mid] > 0.0);
}
