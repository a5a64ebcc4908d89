//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use lqp::lang::{parse_formula, parse_program, Formula, Program};
use lqp::protocols::{
    adjointness, axiom_suite, bell_table, coherence, frame_properties, gate_tables, lemma_suite, phase_counterexample,
    qss_branch, quantum_secret_sharing, teleportation, teleportation_branch, QssConvention, Report, DEFAULT_SEED,
};
use lqp::qframe::{Basis, GateKind};
use lqp::random;

const SEED: u64 = DEFAULT_SEED;

/// Sections enumerated over a finite family, or refutations kept as evidence.
const NOT_RANDOMIZED: [&str; 7] = [
    "orthocomplement of separation",
    "basic-state testability",
    "proper superposition",
    "gate locality",
    "gate characteristics",
    "entanglement with a complex local state",
    "orthogonality to a component, entangled q",
];

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn report_detail(r: &Report) -> Outcome {
    let failed: Vec<String> = r.sections.iter().filter(|s| !s.ok()).map(|s| s.name.clone()).collect();
    Outcome {
        ok: r.pass(),
        detail: if failed.is_empty() { r.headline() } else { format!("{}; failing: {}", r.headline(), failed.join(", ")) },
    }
}

fn section_sizes(r: &Report, min: usize, names: &[&str]) -> Result<(), String> {
    for n in names {
        match r.get(n) {
            None => return Err(format!("missing section `{n}`")),
            Some(s) if s.instances.len() < min => {
                return Err(format!("`{n}` has {} instances, need {min}", s.instances.len()))
            }
            Some(_) => {}
        }
    }
    Ok(())
}

fn with_sizes(r: &Report, min: usize, names: &[&str]) -> Outcome {
    let mut o = report_detail(r);
    if let Err(e) = section_sizes(r, min, names) {
        o.ok = false;
        o.detail = format!("{}; {e}", o.detail);
    }
    o
}

fn gate_table_criterion() -> Outcome {
    let s = gate_tables();
    Outcome { ok: s.ok() && s.instances.len() == 18, detail: format!("{}/{} entries", s.passed(), s.instances.len()) }
}

fn bell_criterion() -> Outcome {
    let (a, b) = (bell_table(2), bell_table(3));
    Outcome {
        ok: a.is_identity() && b.is_identity(),
        detail: format!("identity at n=2: {}, at n=3: {}", a.is_identity(), b.is_identity()),
    }
}

fn frame_criterion() -> Outcome {
    let r = frame_properties(SEED, 100);
    let names: Vec<&str> = r.sections.iter().map(|s| s.name.as_str()).collect();
    let mut o = with_sizes(&r, 100, &names);
    if names.len() != 10 {
        o.ok = false;
        o.detail = format!("{}; expected 10 properties, got {}", o.detail, names.len());
    }
    o
}

fn adjointness_criterion() -> Outcome {
    with_sizes(&adjointness(SEED, 200), 200, &["adjointness"])
}

fn axiom_criterion() -> Outcome {
    let r = axiom_suite(SEED);
    let randomized: Vec<&str> =
        r.sections.iter().map(|s| s.name.as_str()).filter(|n| !NOT_RANDOMIZED.contains(n)).collect();
    let mut o = with_sizes(&r, 50, &randomized);
    o.detail = format!("{}; {} randomized schemas, {} finite", o.detail, randomized.len(), NOT_RANDOMIZED.len());
    if let Err(e) = section_sizes(&r, 50, &["entanglement"]) {
        o.ok = false;
        o.detail = format!("{}; {e}", o.detail);
    }
    o
}

fn teleportation_criterion() -> Outcome {
    let r = teleportation(SEED);
    let mut o = report_detail(&r);
    let need = [("teleportation branches", 12), ("teleportation union", 3), ("teleportation random", 20), ("mutations", 3)];
    for (n, k) in need {
        if r.get(n).map(|s| s.instances.len()) != Some(k) {
            o.ok = false;
            o.detail = format!("{}; `{n}` should have {k} instances", o.detail);
        }
    }
    o
}

fn qss_criterion() -> Outcome {
    let r = quantum_secret_sharing(SEED);
    let mut o = report_detail(&r);
    if r.get("qss branches").map(|s| s.instances.len()) != Some(24) || r.get("ghz intermediate").is_none() {
        o.ok = false;
        o.detail = format!("{}; expected 8 branches x 3 basis states and the ghz identity", o.detail);
    }
    o
}

fn lemma_criterion() -> Outcome {
    report_detail(&lemma_suite(SEED))
}

fn phase_criterion() -> Outcome {
    let s = phase_counterexample();
    Outcome { ok: s.ok(), detail: format!("{}/{} assertions", s.passed(), s.instances.len()) }
}

fn coherence_criterion() -> Outcome {
    let s = coherence(SEED, 1000);
    Outcome { ok: s.ok() && s.instances.len() == 1000, detail: format!("{}/{} pairs agree", s.passed(), s.instances.len()) }
}

fn test(f: Formula) -> Program {
    Program::test(f)
}

fn konst(b: Basis, q: usize) -> Formula {
    Formula::Const(b, q)
}

fn bit(x: u8) -> Basis {
    if x == 0 { Basis::Zero } else { Basis::One }
}

fn expected_teleportation(x: u8, y: u8) -> Program {
    let mut parts = vec![
        Program::gate(GateKind::Cnot, &[1, 2]),
        Program::gate(GateKind::H, &[1]),
        test(Formula::and(konst(bit(x), 1), konst(bit(y), 2))),
    ];
    if y == 1 {
        parts.push(Program::gate(GateKind::X, &[3]));
    }
    if x == 1 {
        parts.push(Program::gate(GateKind::Z, &[3]));
    }
    Program::seq_all(parts).unwrap()
}

fn expected_qss(x: u8, y: u8, z: u8) -> Program {
    let sign = if z == 0 { Basis::Plus } else { Basis::Minus };
    let mut parts = vec![test(Formula::Bell { x, y, i: 1, j: 2 }), test(konst(sign, 3))];
    for (k, g) in [(z, GateKind::Z), (y, GateKind::X), (x, GateKind::Z)] {
        if k == 1 {
            parts.push(Program::gate(g, &[4]));
        }
    }
    Program::seq_all(parts).unwrap()
}

fn parser_criterion() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for seed in 0..150u64 {
        let f = random::surface_formula(&mut random::rng(seed), 4, 4);
        let p = random::surface_program(&mut random::rng(seed), 4, 4);
        if parse_formula(&f.to_string()).ok() != Some(f.clone()) {
            bad.push(f.to_string());
        }
        if parse_program(&p.to_string()).ok() != Some(p.clone()) {
            bad.push(p.to_string());
        }
        count += 2;
    }
    let mut texts = 0;
    for x in 0..2u8 {
        for y in 0..2u8 {
            let mut t = format!("CNOT_1_2; H_1; ({x}_1 & {y}_2)?");
            if y == 1 {
                t.push_str("; X_3");
            }
            if x == 1 {
                t.push_str("; Z_3");
            }
            let want = expected_teleportation(x, y);
            if parse_program(&t).ok() != Some(want.clone()) || teleportation_branch(x, y, true, true) != want {
                bad.push(t);
            }
            texts += 1;
            for z in 0..2u8 {
                let sign = if z == 0 { '+' } else { '-' };
                let mut t = format!("bell[{x},{y},1,2]?; {sign}_3?");
                for (k, g) in [(z, "Z_4"), (y, "X_4"), (x, "Z_4")] {
                    if k == 1 {
                        t.push_str("; ");
                        t.push_str(g);
                    }
                }
                let want = expected_qss(x, y, z);
                if parse_program(&t).ok() != Some(want.clone())
                    || qss_branch(x, y, z, QssConvention::State, true) != want
                {
                    bad.push(t);
                }
                texts += 1;
            }
        }
    }
    let moves = [("mov[1,3](id)", 1, 3), ("mov[1,4](id)", 1, 4)];
    for (t, i, j) in moves {
        if parse_program(t).ok() != Some(Program::Mov(i, j, Box::new(Program::Id))) {
            bad.push(t.to_string());
        }
        texts += 1;
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("{} round trips, {texts} protocol texts, {} mismatches {:?}", count, bad.len(), bad),
    }
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("gate tables", Duration::from_secs(1), gate_table_criterion),
        ("bell characterization", Duration::from_secs(1), bell_criterion),
        ("frame properties", Duration::from_secs(30), frame_criterion),
        ("adjointness", Duration::from_secs(30), adjointness_criterion),
        ("axiom suite", Duration::from_secs(180), axiom_criterion),
        ("teleportation", Duration::from_secs(5), teleportation_criterion),
        ("quantum secret sharing", Duration::from_secs(15), qss_criterion),
        ("lemma suite", Duration::from_secs(120), lemma_criterion),
        ("phase counterexample", Duration::from_secs(1), phase_criterion),
        ("evaluator coherence", Duration::from_secs(60), coherence_criterion),
        ("parser", Duration::from_secs(10), parser_criterion),
    ];
    let mut failures = 0;
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let t = start.elapsed();
        let ok = o.ok && t <= limit;
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({:.2}s, limit {}s) {}",
            k + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            t.as_secs_f64(),
            limit.as_secs(),
            o.detail
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
