//! Structural identities of the tensor constructions on random modules.

mod common;

use common::*;
use galrel::algebra::{ConstField, OperatorKind, RatFunc};
use galrel::error::Error;
use galrel::linalg::Matrix;
use galrel::tensor::*;

const KINDS: [OperatorKind; 2] = [OperatorKind::Derivation, OperatorKind::Shift];

fn random_module(seed: u64, n: usize, kind: OperatorKind) -> DModule {
    let f = ConstField::rationals();
    module_from_system(&random_system(&mut rng(seed), n, kind, &f)).unwrap()
}

#[test]
fn first_powers_are_the_module() {
    for kind in KINDS {
        for seed in 0..5 {
            let m = random_module(seed, 3, kind);
            assert_eq!(symmetric_power(&m, 1).unwrap().action(), m.action());
            assert_eq!(exterior_power(&m, 1).unwrap().action(), m.action());
        }
    }
}

#[test]
fn top_exterior_power_is_trace_or_determinant() {
    for kind in KINDS {
        for n in 1..=3 {
            let m = random_module(10 + n as u64, n, kind);
            let top = exterior_power(&m, n).unwrap();
            let expect = match kind {
                OperatorKind::Derivation => m.action().trace(),
                OperatorKind::Shift => m.action().det(),
            };
            assert_eq!(top.action().get(0, 0), &expect, "{kind:?} n={n}");
        }
    }
}

#[test]
fn unit_module_is_neutral_for_tensor() {
    let f = ConstField::rationals();
    for kind in KINDS {
        let m = random_module(20, 2, kind);
        let u = DModule::unit(kind, &f);
        assert_eq!(tensor_product(&m, &u).unwrap(), m);
        assert_eq!(tensor_product(&u, &m).unwrap(), m);
    }
}

#[test]
fn pairing_element_is_horizontal() {
    for kind in KINDS {
        let m = random_module(30, 2, kind);
        let t = tensor_product(&m, &dual_module(&m).unwrap()).unwrap();
        let e = pairing_element(&m);
        let image = apply_operator(&t, &e);
        match kind {
            OperatorKind::Derivation => assert!(image.iter().all(RatFunc::is_zero)),
            OperatorKind::Shift => assert_eq!(image, e),
        }
    }
}

#[test]
fn system_module_round_trip() {
    let f = ConstField::rationals();
    for kind in KINDS {
        let sys = random_system(&mut rng(40), 3, kind, &f);
        assert_eq!(system_from_module(&module_from_system(&sys).unwrap()).unwrap(), sys);
    }
}

#[test]
fn induced_system_in_degree_one_is_kronecker_with_identity() {
    let f = ConstField::rationals();
    for kind in KINDS {
        let sys = random_system(&mut rng(50), 2, kind, &f);
        let id = Matrix::identity(2, &RatFunc::one(&f));
        let induced = induced_system_on_monomials(&sys, 1).unwrap();
        assert_eq!(induced.matrix(), &sys.matrix().kronecker(&id));
    }
}

#[test]
fn degree_out_of_range() {
    let m = random_module(60, 2, OperatorKind::Derivation);
    assert_eq!(symmetric_power(&m, 0), Err(Error::DegreeOutOfRange(0)));
    assert_eq!(exterior_power(&m, 0), Err(Error::DegreeOutOfRange(0)));
    assert_eq!(exterior_power(&m, 3), Err(Error::DegreeOutOfRange(3)));
}

#[test]
fn mixed_kinds_rejected() {
    let a = random_module(70, 1, OperatorKind::Derivation);
    let b = random_module(71, 1, OperatorKind::Shift);
    assert_eq!(tensor_product(&a, &b), Err(Error::KindMismatch));
}
