//! Seeded generators for states, subspaces and gate words.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::lang::{Formula, Program};
use crate::linalg::GaussianRational as C;
use crate::qframe::{Basis, GateKind, Ray, Subspace};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Rational with numerator in `[-3, 3]` and denominator in `[1, 3]`.
pub fn scalar_real(r: &mut ChaCha8Rng) -> C {
    C::from_ratio(r.random_range(-3..=3), r.random_range(1..=3))
}

pub fn scalar(r: &mut ChaCha8Rng) -> C {
    let re = scalar_real(r);
    let im = scalar_real(r);
    re + im * C::i()
}

pub fn vector(r: &mut ChaCha8Rng, dim: usize) -> Vec<C> {
    (0..dim).map(|_| scalar(r)).collect()
}

pub fn real_vector(r: &mut ChaCha8Rng, dim: usize) -> Vec<C> {
    (0..dim).map(|_| scalar_real(r)).collect()
}

pub fn ray(r: &mut ChaCha8Rng, dim: usize) -> Ray {
    loop {
        if let Ok(s) = Ray::new(vector(r, dim)) {
            return s;
        }
    }
}

/// Span of up to `max_rank` random vectors; may be zero when `max_rank` is 0.
pub fn subspace(r: &mut ChaCha8Rng, dim: usize, max_rank: usize) -> Subspace {
    let k = r.random_range(0..=max_rank.min(dim));
    let vecs: Vec<Vec<C>> = (0..k).map(|_| vector(r, dim)).collect();
    Subspace::span(dim, &vecs)
}

/// Random word of length 1 to `max_len` in `X`, `Z`, `H` on the given qubit.
pub fn one_qubit_word(r: &mut ChaCha8Rng, q: usize, max_len: usize) -> Program {
    let len = r.random_range(1..=max_len);
    let gates = (0..len).map(|_| {
        let kind = [GateKind::X, GateKind::Z, GateKind::H][r.random_range(0..3)];
        Program::gate(kind, &[q])
    });
    Program::seq_all(gates.collect::<Vec<_>>()).expect("nonempty word")
}

/// Random word over all gates of an `n`-qubit frame.
pub fn gate_word(r: &mut ChaCha8Rng, n: usize, max_len: usize) -> Program {
    let len = r.random_range(1..=max_len);
    let mut out = Vec::new();
    for _ in 0..len {
        let pick = if n >= 2 { r.random_range(0..4) } else { r.random_range(0..3) };
        let q = r.random_range(1..=n);
        let g = match pick {
            0 => Program::gate(GateKind::X, &[q]),
            1 => Program::gate(GateKind::Z, &[q]),
            2 => Program::gate(GateKind::H, &[q]),
            _ => {
                let mut t = r.random_range(1..=n);
                while t == q {
                    t = r.random_range(1..=n);
                }
                Program::gate(GateKind::Cnot, &[q, t])
            }
        };
        out.push(g);
    }
    Program::seq_all(out).expect("nonempty word")
}

fn pick_qubit(r: &mut ChaCha8Rng, n: usize) -> usize {
    r.random_range(1..=n)
}

fn pick_pair(r: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let i = pick_qubit(r, n);
    loop {
        let j = pick_qubit(r, n);
        if j != i {
            return (i, j);
        }
    }
}

fn pick_set(r: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (1..=n).filter(|_| r.random_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

fn constant(r: &mut ChaCha8Rng, n: usize) -> Formula {
    let b = [Basis::Zero, Basis::One, Basis::Plus, Basis::Minus][r.random_range(0..4)];
    Formula::Const(b, pick_qubit(r, n))
}

/// Separation-free formula over the variables `p` and `q`; needs `n >= 2`.
pub fn formula(r: &mut ChaCha8Rng, n: usize, depth: usize) -> Formula {
    if depth == 0 || r.random_bool(0.25) {
        return match r.random_range(0..7) {
            0 => Formula::var("p"),
            1 => Formula::var("q"),
            2 | 3 => constant(r, n),
            4 => {
                let (i, j) = pick_pair(r, n);
                Formula::Bell { x: r.random_range(0..2), y: r.random_range(0..2), i, j }
            }
            5 => {
                let (i, j) = pick_pair(r, n);
                Formula::Ent(i, j, Box::new(one_qubit_word(r, 1, 3)))
            }
            _ => [Formula::True, Formula::False][r.random_range(0..2)].clone(),
        };
    }
    let d = depth - 1;
    match r.random_range(0..10) {
        0 => Formula::not(formula(r, n, d)),
        1 => Formula::and(formula(r, n, d), formula(r, n, d)),
        2 => Formula::or(formula(r, n, d), formula(r, n, d)),
        3 => Formula::imp(formula(r, n, d), formula(r, n, d)),
        4 => Formula::Iff(Box::new(formula(r, n, d)), Box::new(formula(r, n, d))),
        5 => Formula::Ortho(Box::new(formula(r, n, d))),
        6 => Formula::boxp(program(r, n, d), formula(r, n, d)),
        7 => Formula::DiaP(Box::new(program(r, n, d)), Box::new(formula(r, n, d))),
        8 => Formula::BoxM(Box::new(formula(r, n, d))),
        _ => Formula::DiaM(Box::new(formula(r, n, d))),
    }
}

/// Finite program over gates, tests, `+`, `;` and adjoints of deterministic parts.
pub fn program(r: &mut ChaCha8Rng, n: usize, depth: usize) -> Program {
    if depth == 0 || r.random_bool(0.3) {
        return gate_word(r, n, 3);
    }
    let d = depth - 1;
    match r.random_range(0..5) {
        0 => Program::test(formula(r, n, d)),
        1 => Program::union(program(r, n, d), program(r, n, d)),
        2 => Program::seq(program(r, n, d), program(r, n, d)),
        3 => {
            let p = program(r, n, d);
            if p.is_deterministic() {
                Program::Adj(Box::new(p))
            } else {
                p
            }
        }
        _ => gate_word(r, n, 4),
    }
}

/// Any formula of the surface syntax, sugar included; indices valid for `n >= 3`.
pub fn surface_formula(r: &mut ChaCha8Rng, n: usize, depth: usize) -> Formula {
    if depth == 0 || r.random_bool(0.2) {
        return match r.random_range(0..10) {
            0 => Formula::var(["p", "q", "r1", "s_a"][r.random_range(0..4)]),
            1 => constant(r, n),
            2 => Formula::Top(pick_set(r, n)),
            3 => [Formula::One, Formula::PlusAll, Formula::True, Formula::False][r.random_range(0..4)].clone(),
            4 => {
                let (i, j) = pick_pair(r, n);
                Formula::Bell { x: r.random_range(0..2), y: r.random_range(0..2), i, j }
            }
            5 => Formula::Ghz(1, 2, 3),
            6 => {
                let (i, j) = pick_pair(r, n);
                Formula::Gamma(i, j)
            }
            7 => {
                let (i, j) = pick_pair(r, n);
                Formula::Ent(i, j, Box::new(surface_program(r, n, 1)))
            }
            8 => Formula::Dom(Box::new(surface_program(r, n, 1))),
            _ => Formula::var("p"),
        };
    }
    let d = depth - 1;
    let pick = r.random_range(0..22);
    let mut f = || surface_formula(r, n, d);
    match pick {
        0 => Formula::not(f()),
        1 => Formula::and(f(), f()),
        2 => Formula::or(f(), f()),
        3 => Formula::imp(f(), f()),
        4 => Formula::Iff(Box::new(f()), Box::new(f())),
        5 => Formula::Ortho(Box::new(f())),
        6 => Formula::BoxM(Box::new(f())),
        7 => Formula::DiaM(Box::new(f())),
        8 => Formula::Testable(Box::new(f())),
        9 => Formula::Leq(Box::new(f()), Box::new(f())),
        10 => Formula::Eqf(Box::new(f()), Box::new(f())),
        11 => Formula::Perp(Box::new(f()), Box::new(f())),
        12 => Formula::Sqcup(Box::new(f()), Box::new(f())),
        13 => Formula::Cmp(pick_set(r, n), Box::new(surface_formula(r, n, d))),
        14 => Formula::Local(pick_set(r, n), Box::new(surface_formula(r, n, d))),
        15 => Formula::Eqi(pick_set(r, n), Box::new(surface_formula(r, n, d)), Box::new(surface_formula(r, n, d))),
        16 => Formula::LocalP(pick_set(r, n), Box::new(surface_program(r, n, d))),
        17 => Formula::boxp(surface_program(r, n, d), surface_formula(r, n, d)),
        18 => Formula::DiaP(Box::new(surface_program(r, n, d)), Box::new(surface_formula(r, n, d))),
        19 => Formula::Img(Box::new(surface_program(r, n, d)), Box::new(surface_formula(r, n, d))),
        20 => Formula::Post(Box::new(surface_program(r, n, d)), Box::new(surface_formula(r, n, d))),
        _ => Formula::Dom(Box::new(surface_program(r, n, d))),
    }
}

/// Any program of the surface syntax.
pub fn surface_program(r: &mut ChaCha8Rng, n: usize, depth: usize) -> Program {
    if depth == 0 || r.random_bool(0.25) {
        return match r.random_range(0..7) {
            0 => gate_word(r, n, 2),
            1 => Program::Id,
            2 => Program::Top(pick_set(r, n)),
            3 => {
                let (i, j) = pick_pair(r, n);
                Program::Flip(i, j)
            }
            4 => Program::Set0(pick_set(r, n)),
            5 => Program::Proj0(pick_set(r, n)),
            _ => Program::test(constant(r, n)),
        };
    }
    let d = depth - 1;
    match r.random_range(0..7) {
        0 => Program::test(surface_formula(r, n, d)),
        1 => Program::union(surface_program(r, n, d), surface_program(r, n, d)),
        2 => Program::seq(surface_program(r, n, d), surface_program(r, n, d)),
        3 => Program::Adj(Box::new(surface_program(r, n, d))),
        4 => Program::Unary1(Box::new(surface_program(r, n, d))),
        5 => {
            let (i, j) = (pick_qubit(r, n), pick_qubit(r, n));
            Program::Mov(i, j, Box::new(surface_program(r, n, d)))
        }
        _ => gate_word(r, n, 3),
    }
}
