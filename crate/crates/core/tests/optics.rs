use std::f64::consts::PI;

use weylqubit::optics::{
    component_unitary, dp_sorter, gate_circuit, interior_unitarity_defect, sorter_routing, verify_gate,
    verify_gate_circuit, weyl_relation_residual, Component, Gate, ModeSpace, OpticalCircuit,
};
use weylqubit::Error;

#[test]
fn components_are_unitary_on_interior() {
    let s = ModeSpace::new(2, true, 10).unwrap();
    let comps = [
        Component::BeamSplitter { i: 0, j: 1, t: 0.5 },
        Component::BeamSplitter { i: 1, j: 0, t: 0.2 },
        Component::PhaseShifter { path: 0, phi: 1.3 },
        Component::Mirror { path: 1 },
        Component::Hologram { path: 0, q: 3 },
        Component::DovePrism { path: 1, alpha: 0.8, sign_flip: true },
        Component::Pbs { i: 0, j: 1 },
        Component::Hwp { path: 0, angle: 0.4 },
        Component::Qwp { path: 1, angle: -0.9 },
        Component::QPlate { path: 0, q: 1.5 },
    ];
    for c in comps {
        let u = component_unitary(&c, &s).unwrap();
        let defect = interior_unitarity_defect(&u, &s, c.shift() + 1);
        assert!(defect < 1e-12, "{c:?}: {defect}");
    }
}

#[test]
fn sorter_parity_routing() {
    let s = ModeSpace::new(2, false, 32).unwrap();
    for (even, odd) in [(1, 0), (0, 1)] {
        let c = dp_sorter(&s, 0, even, odd).unwrap();
        let (dev, _, _) = sorter_routing(&c, 0, even, odd, 24).unwrap();
        assert!(dev <= 1e-12);
    }
    assert!(matches!(dp_sorter(&s, 0, 1, 1), Err(Error::Config(_))));
}

#[test]
fn phase_gate_naming() {
    let r = verify_gate(Gate::Phase(PI / 2.0), 32).unwrap();
    assert!(r.passes(1e-10));
    let alt = r.alternative.unwrap();
    assert!(alt.fidelity < 0.9, "{}", alt.fidelity);
}

#[test]
fn two_qubit_gate_is_controlled_z() {
    let r = verify_gate(Gate::ControlledZ, 32).unwrap();
    assert!(r.passes(1e-10), "{r:?}");
    assert_eq!(r.matrix.len(), 4);
    assert!((r.matrix[3][3][0] + 1.0).abs() < 1e-10);
}

#[test]
fn codewords_reaching_the_edge_are_rejected() {
    let c = gate_circuit(Gate::Not, 2).unwrap();
    assert!(matches!(verify_gate_circuit(Gate::Not, &c), Err(Error::Sizing(_))));
}

#[test]
fn optical_weyl_relation() {
    assert!(weyl_relation_residual(32, 0.7, 2).unwrap() < 1e-12);
    assert!(weyl_relation_residual(32, -PI / 5.0, -4).unwrap() < 1e-12);
}

#[test]
fn circuit_inverse_is_identity_on_codewords() {
    let c = gate_circuit(Gate::Hadamard, 16).unwrap();
    let mut round = c.clone();
    round.extend(&c.inverse()).unwrap();
    let r = verify_gate_circuit(Gate::Not, &round).unwrap();
    // H·H† = I, so the fidelity against NOT vanishes and nothing leaks.
    assert!(r.fidelity < 1e-10 && r.leakage < 1e-10);
}

#[test]
fn malformed_circuits_are_config_errors() {
    let s = ModeSpace::new(1, false, 4).unwrap();
    assert!(matches!(OpticalCircuit::new(s, vec![Component::Hwp { path: 0, angle: 0.0 }]), Err(Error::Config(_))));
    assert!(matches!(
        OpticalCircuit::new(s, vec![Component::PhaseShifter { path: 3, phi: 0.0 }]),
        Err(Error::Config(_))
    ));
}
