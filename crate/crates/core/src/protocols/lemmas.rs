//! Derived lemmas about entanglement, transport and local programs.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::checker::{local_instance, Checker, Env};
use crate::lang::Program;
use crate::linalg::GaussianRational as C;
use crate::qframe::{Frame, Ray};
use crate::random;
use crate::regions::Region;

use super::{expect_refuted, expect_valid, formula, on_qubit, program, Report, Section};

const PER_LEMMA: usize = 8;

/// A word on qubit 1; the identity for instance 0.
fn word(r: &mut ChaCha8Rng, i: usize) -> Program {
    if i == 0 {
        Program::Id
    } else {
        random::one_qubit_word(r, 1, 4)
    }
}

/// A ray on `k` qubits: a basis product for small `i`, random otherwise; real when asked.
fn local_ray(r: &mut ChaCha8Rng, i: usize, k: usize, real: bool) -> Ray {
    use crate::qframe::Basis::{One, Plus, Zero};
    let basics = [Zero, One, Plus];
    if i < 3 {
        return Ray::product(&vec![basics[i]; k]);
    }
    loop {
        let v = if real { random::real_vector(r, 1 << k) } else { random::vector(r, 1 << k) };
        if let Ok(s) = Ray::new(v) {
            return s;
        }
    }
}

fn bind_local(env: &mut Env, name: &str, qs: &[usize], x: &Ray) {
    let f = env.frame;
    env.bind(name, Region::from_subspace(f, local_instance(&f, qs, x)));
}

fn bind_ray(env: &mut Env, name: &str, x: &Ray) {
    let f = env.frame;
    env.bind(name, Region::from_subspace(f, x.as_subspace()));
}

fn one_qubit_matrix(p: &Program) -> crate::linalg::Matrix {
    let env = Env::new(Frame::new(1));
    Checker::new(&env).det_map(&crate::lang::desugar_program(1, p).expect("desugars")).expect("deterministic")
}

/// A local ray on one qubit orthogonal to `y`.
fn orthogonal_qubit(y: &Ray) -> Ray {
    let a = y.amplitudes();
    Ray::new(vec![-a[1].conj(), a[0].conj()]).expect("nonzero")
}

fn teleportation_property(r: &mut ChaCha8Rng) -> Section {
    let mut s = Section::new("teleportation property");
    for i in 0..PER_LEMMA {
        let (pi, sigma) = (word(r, i), word(r, i));
        let x = local_ray(r, i, 1, false);
        let mut env = Env::new(Frame::new(3));
        bind_local(&mut env, "p", &[1], &x);
        let f = formula(&format!(
            "eqi{{3}}(img(ent[2,3]({sigma})?; ent[1,2]({pi})?, p), img(mov[1,2]({pi}); mov[2,3]({sigma}), p))"
        ));
        s.push(expect_valid(format!("pi={pi} sigma={sigma} p={x}"), &env, &f));
    }
    s
}

fn measure_then_transport(r: &mut ChaCha8Rng) -> Section {
    let mut s = Section::new("measurement on an entangled pair");
    for i in 0..PER_LEMMA {
        let (pi, sigma) = (word(r, i), word(r, i));
        let x = local_ray(r, i, 1, false);
        let mut env = Env::new(Frame::new(3));
        bind_local(&mut env, "p", &[1], &x);
        let f = formula(&format!(
            "eqi{{3}}(img(ent[1,2]({pi})?, p & ent[2,3]({sigma})), img(mov[1,2]({pi}); mov[2,3]({sigma}), p))"
        ));
        s.push(expect_valid(format!("pi={pi} sigma={sigma} p={x}"), &env, &f));
    }
    s
}

fn bell_measurement(r: &mut ChaCha8Rng) -> Section {
    let mut s = Section::new("bell measurement by gates");
    for i in 0..PER_LEMMA / 2 {
        let p = local_ray(r, i, 3, false);
        let mut env = Env::new(Frame::new(3));
        bind_ray(&mut env, "p", &p);
        for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let f = formula(&format!(
                "eqi{{3}}(img(CNOT_1_2; H_1; ({x}_1 & {y}_2)?, p), img(bell[{x},{y},1,2]?, p))"
            ));
            s.push(expect_valid(format!("x={x},y={y} p={p}"), &env, &f));
        }
    }
    s
}

fn bell_preparation() -> Section {
    let mut s = Section::new("bell preparation");
    let env = Env::new(Frame::new(2));
    for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let f = formula(&format!("eqf(img(H_1; CNOT_1_2, {x}_1 & {y}_2), bell[{x},{y},1,2])"));
        s.push(expect_valid(format!("x={x},y={y}"), &env, &f));
    }
    s
}

fn composition(r: &mut ChaCha8Rng) -> Section {
    let mut s = Section::new("entanglement composition");
    let env = Env::new(Frame::new(4));
    for i in 0..PER_LEMMA {
        let (f, g, h) = (word(r, i), word(r, i), word(r, i));
        let (u, v) = (word(r, i), word(r, i));
        let (u2, g3) = (on_qubit(&u, 2), on_qubit(&v, 3));
        let claim = formula(&format!(
            "ent[1,2]({f}) & ent[3,4]({g}) -> [{u2}; {g3}; ent[2,3]({h})?]ent[1,4]({f}; {u}; {h}; adj({v}); {g})"
        ));
        s.push(expect_valid(format!("F={f} G={g} H={h} U={u} V={v}"), &env, &claim));
    }
    s
}

fn compatibility(r: &mut ChaCha8Rng) -> Section {
    let mut s = Section::new("compatibility");
    for i in 0..PER_LEMMA {
        let a = if i == 0 { Program::Id } else { random::gate_word(r, 2, 4) };
        let b = on_qubit(&word(r, i), 3);
        let p = local_ray(r, i, 3, false);
        let mut env = Env::new(Frame::new(3));
        bind_ray(&mut env, "p", &p);
        let f = formula(&format!("eqf(img({a}; {b}, p), img({b}; {a}, p))"));
        s.push(expect_valid(format!("pi={a} pi'={b} p={p}"), &env, &f));
    }
    s
}

fn agreement(r: &mut ChaCha8Rng) -> Section {
    let mut s = Section::new("agreement");
    for i in 0..PER_LEMMA {
        let w = random::gate_word(r, 3, 4);
        let (w1, w2) = (random::gate_word(r, 2, 4), random::gate_word(r, 2, 4));
        let (x, y) = (r.random_range(0..2), r.random_range(0..2));
        let t = format!("({x}_1 & {y}_2)?");
        let pi = format!("{w}; {t}; {w1}");
        let pi2 = format!("{w}; {t}; {w2}");
        let p = local_ray(r, i, 3, false);
        let mut env = Env::new(Frame::new(3));
        bind_ray(&mut env, "p", &p);
        let id = format!("pi={pi} pi'={pi2} p={p}");
        s.push(expect_valid(format!("{id} domains"), &env, &formula(&format!("eqf(dom({pi}), dom({pi2}))"))));
        s.push(expect_valid(id, &env, &formula(&format!("eqi{{3}}(img({pi}, p), img({pi2}, p))"))));
    }
    s
}

fn dual_entanglement(r: &mut ChaCha8Rng) -> Section {
    let mut s = Section::new("dual entanglement");
    for i in 0..PER_LEMMA {
        let pi = word(r, i);
        let x = local_ray(r, i, 1, true);
        for (a, b) in [(1, 2), (2, 3)] {
            let mut env = Env::new(Frame::new(3));
            bind_local(&mut env, "q", &[b], &x);
            let f = formula(&format!(
                "testable(q) -> eqi{{{a}}}(img(q?, ent[{a},{b}]({pi})), img(mov[{b},{a}](adj({pi})), q))"
            ));
            s.push(expect_valid(format!("i={a},j={b} pi={pi} q={x}"), &env, &f));
        }
    }
    s
}

fn preparation_claim(pi: &Program, x: &Ray, q: &Ray) -> (Env, crate::lang::Formula) {
    let mut env = Env::new(Frame::new(2));
    bind_local(&mut env, "p", &[1], x);
    bind_local(&mut env, "q", &[2], q);
    let f = formula(&format!("perpf(img(mov[1,2]({pi}), p), q) -> perpf(ent[1,2]({pi}), p & q)"));
    (env, f)
}

/// Real `p` only: the pair state pairs `p` with `G(p̄)`.
fn preparation(r: &mut ChaCha8Rng) -> Section {
    let mut s = Section::new("entanglement preparation");
    for i in 0..PER_LEMMA {
        let pi = word(r, i);
        let x = local_ray(r, i, 1, true);
        let q = if r.random_bool(0.5) {
            let y = x.apply(&one_qubit_matrix(&pi)).expect("unitary word");
            orthogonal_qubit(&y)
        } else {
            local_ray(r, 3, 1, false)
        };
        let (env, f) = preparation_claim(&pi, &x, &q);
        s.push(expect_valid(format!("pi={pi} p={x} q={q}"), &env, &f));
    }
    s
}

/// With `p = (1, i)` and `q ⊥ π(p)` the premise holds but the pair state is not orthogonal.
fn complex_preparation() -> Section {
    let mut s = Section::new("complex local state");
    let x = Ray::new(vec![C::one(), C::i()]).expect("nonzero");
    for pi in [Program::Id, program("H_1")] {
        let y = x.apply(&one_qubit_matrix(&pi)).expect("unitary word");
        let (env, f) = preparation_claim(&pi, &x, &orthogonal_qubit(&y));
        s.push(expect_refuted(format!("pi={pi} p={x}"), &env, &f));
    }
    s
}

pub fn lemma_suite(seed: u64) -> Report {
    let mut r = random::rng(seed ^ 0x1e);
    let mut rep = Report::new("lemmas", seed);
    let secs = [
        teleportation_property(&mut r),
        measure_then_transport(&mut r),
        bell_measurement(&mut r),
        bell_preparation(),
        composition(&mut r),
        compatibility(&mut r),
        agreement(&mut r),
        dual_entanglement(&mut r),
        preparation(&mut r),
    ];
    for s in secs {
        rep.section(s, true);
    }
    rep.section(complex_preparation(), false);
    rep
}
