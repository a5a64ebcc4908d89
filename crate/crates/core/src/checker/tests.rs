use super::*;
use crate::lang::{parse_formula, parse_program};
use crate::linalg::GaussianRational as C;
use crate::qframe::{Basis, Subspace};
use crate::regions::Region;

fn env(n: usize) -> Env {
    Env::new(Frame::new(n))
}

fn valid(e: &Env, src: &str) -> Validity {
    let ck = Checker::new(e);
    let f = ck.desugar(&parse_formula(src).unwrap()).unwrap();
    ck.check_valid(&f).unwrap()
}

fn run(e: &Env, prog: &str, s: &Ray) -> Vec<Ray> {
    let ck = Checker::new(e);
    let p = crate::lang::desugar_program(e.frame.n, &parse_program(prog).unwrap()).unwrap();
    match ck.denote_program(&p).unwrap() {
        Denotation::Action(a) => a.images(s),
        Denotation::LocalTrivial(_) => panic!("not a finite action"),
    }
}

#[test]
fn x_flips_zero_to_one() {
    let e = env(1);
    assert_eq!(valid(&e, "0_1 -> [X_1]1_1"), Validity::Valid);
    match valid(&e, "1_1 -> [X_1]1_1") {
        Validity::Counterexample(w) => assert_eq!(w, Ray::product(&[Basis::One])),
        v => panic!("expected a counterexample, got {v:?}"),
    }
}

#[test]
fn bell_state_from_identity() {
    let e = env(2);
    let ck = Checker::new(&e);
    let s = ck.entangled(1, 2, &Program::Test(Box::new(Formula::Top(vec![1, 2])))).unwrap();
    assert_eq!(s, Ray::from_ints(&[1, 0, 0, 1]).unwrap().as_subspace());
}

#[test]
fn flip_swaps_qubits() {
    let e = env(2);
    let out = run(&e, "flip_1_2", &Ray::product(&[Basis::Zero, Basis::One]));
    assert_eq!(out, vec![Ray::product(&[Basis::One, Basis::Zero])]);
}

#[test]
fn test_projects_bell_state() {
    let e = env(2);
    let beta = Ray::from_ints(&[1, 0, 0, 1]).unwrap();
    let out = run(&e, "(0_1 & 0_2)?", &beta);
    assert_eq!(out, vec![Ray::product(&[Basis::Zero, Basis::Zero])]);
}

#[test]
fn sequencing_runs_left_to_right() {
    let e = env(1);
    let out = run(&e, "H_1; X_1", &Ray::product(&[Basis::One]));
    // X(H|1>) = X(|0> - |1>) = |1> - |0>
    assert_eq!(out, vec![Ray::from_ints(&[-1, 1]).unwrap()]);
}

#[test]
fn variables_and_unbound() {
    let mut e = env(1);
    e.bind_subspace("p", local_state(&e.frame, 1, Basis::Plus));
    assert_eq!(valid(&e, "p -> [H_1]0_1"), Validity::Valid);
    let ck = Checker::new(&e);
    assert!(matches!(
        ck.eval(&Formula::var("q")),
        Err(CheckError::UnboundVariable(_))
    ));
}

#[test]
fn separation_atoms_are_exact() {
    let e = env(2);
    assert_eq!(valid(&e, "0_1 -> T{1}"), Validity::Valid);
    assert!(matches!(valid(&e, "T{1}"), Validity::Counterexample(_)));
    // every state is separated across the trivial cut
    assert_eq!(valid(&e, "T{1,2}"), Validity::Valid);
}

#[test]
fn components_of_products() {
    let e = env(2);
    let ck = Checker::new(&e);
    let f = ck.desugar(&parse_formula("cmp{1}(0_1 & +_2)").unwrap()).unwrap();
    let r = ck.eval(&f).unwrap();
    let expect = ck.eval(&ck.desugar(&parse_formula("0_1 & T{1}").unwrap()).unwrap()).unwrap();
    assert!(r.equals(&expect).unwrap());
}

#[test]
fn trivial_local_box() {
    let e = env(2);
    // [T{1}] 0_2 holds exactly on 0_2
    assert_eq!(valid(&e, "[T{1}]0_2 <-> 0_2"), Validity::Valid);
}

#[test]
fn entangled_component() {
    let e = env(2);
    let ck = Checker::new(&e);
    let f = ck.desugar(&parse_formula("cmp{1}(ent[1,2](id))").unwrap()).unwrap();
    assert!(ck.eval(&f).unwrap().is_empty().unwrap());
    let (o, l) = (C::zero(), C::one());
    let plane = Subspace::span(4, &[vec![l.clone(), o.clone(), o.clone(), l.clone()], vec![o.clone(), l, o.clone(), o]]);
    let mut e = env(2);
    e.bind("p", Region::from_subspace(e.frame, plane));
    let ck = Checker::new(&e);
    let g = ck.desugar(&parse_formula("cmp{1}(p)").unwrap()).unwrap();
    assert!(ck.eval(&g).unwrap_err().is_unsupported());
    assert!(ck.holds(&Ray::product(&[Basis::Zero, Basis::Plus]), &g).unwrap());
    assert!(!ck.holds(&Ray::product(&[Basis::One, Basis::Zero]), &g).unwrap());
    let zero = Ray::product(&[Basis::Zero, Basis::Zero]);
    assert!(!ck.holds(&zero, &f).unwrap());
}

#[test]
fn adjoint_of_nondeterministic_is_an_error() {
    let e = env(1);
    let ck = Checker::new(&e);
    let p = parse_program("X_1 + Z_1").unwrap();
    assert!(matches!(ck.det_map(&p), Err(CheckError::NonDeterministicAdjoint(_))));
}

#[test]
fn schematic_claim_over_local_variable() {
    let e = env(2);
    let claim = SchematicClaim {
        name: "local".into(),
        vars: vec![("q".into(), vec![1])],
        template: parse_formula("q -> [X_2; flip_1_2; flip_1_2]q").unwrap(),
        branches: vec![],
    };
    let out = check_schematic(&claim, &e, 5, 7).unwrap();
    assert!(out.ok(), "{:?}", out.failures());
    assert_eq!(out.instances(), (3, 3));
    assert_eq!(out.random(), (5, 5));
}
