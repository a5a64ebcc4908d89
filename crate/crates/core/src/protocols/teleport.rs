//! Teleportation and three-party quantum secret sharing.

use crate::checker::{check_schematic, local_instance, Env, InstanceKind, SchematicClaim, SchematicOutcome};
use crate::lang::{Formula, Program};
use crate::qframe::{Basis, GateKind};
use crate::regions::Region;

use super::{basis_ray, expect_refuted, expect_valid, formula, frame, power, program, Instance, Report, Section};

const RANDOM_SAMPLES: usize = 20;

/// `CNOT_1_2; H_1; (x_1 & y_2)?; X_3^y; Z_3^x`, optionally without a correction.
pub fn teleportation_branch(x: u8, y: u8, with_x: bool, with_z: bool) -> Program {
    let mut text = format!("CNOT_1_2; H_1; ({x}_1 & {y}_2)?");
    if with_x && y == 1 {
        text.push_str("; X_3");
    }
    if with_z && x == 1 {
        text.push_str("; Z_3");
    }
    program(&text)
}

fn bits2() -> [(u8, u8); 4] {
    [(0, 0), (0, 1), (1, 0), (1, 1)]
}

fn union(ps: Vec<Program>) -> Program {
    ps.into_iter().reduce(Program::union).expect("nonempty")
}

fn teleport_claim(p: &Program) -> Formula {
    formula(&format!("eqi{{3}}(img({p}, q & bell[0,0,2,3]), img(mov[1,3](id), q))"))
}

/// Sign-test convention for the pooled bit `z` of secret sharing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QssConvention {
    /// `z = 0` tests `+`, `z = 1` tests `-`.
    State,
    /// `z = 0` tests `-`, `z = 1` tests `+`.
    FootnoteLiteral,
}

impl QssConvention {
    fn sign(self, z: u8) -> char {
        match (self, z) {
            (QssConvention::State, 0) | (QssConvention::FootnoteLiteral, 1) => '+',
            _ => '-',
        }
    }
}

/// `bell[x,y,1,2]?; (-)^z_3?; Z_4^z; X_4^y; Z_4^x`.
pub fn qss_branch(x: u8, y: u8, z: u8, conv: QssConvention, with_z_correction: bool) -> Program {
    let mut parts = vec![
        program(&format!("bell[{x},{y},1,2]?")),
        program(&format!("{}_3?", conv.sign(z))),
    ];
    if with_z_correction {
        parts.extend(power(GateKind::Z, 4, z));
    }
    parts.extend(power(GateKind::X, 4, y));
    parts.extend(power(GateKind::Z, 4, x));
    Program::seq_all(parts).expect("nonempty")
}

fn qss_claim(p: &Program) -> Formula {
    formula(&format!("eqi{{4}}(img({p}, q & ghz[2,3,4]), img(mov[1,4](id), q))"))
}

fn schematic_sections(out: &SchematicOutcome, name: &str, branch_ids: &[String]) -> (Section, Section, Section) {
    let mut branches = Section::new(format!("{name} branches"));
    let mut whole = Section::new(format!("{name} union"));
    let mut random = Section::new(format!("{name} random"));
    for r in &out.records {
        let (sec, id) = match r.kind {
            InstanceKind::Branch(k) => (&mut branches, format!("{} q={}", branch_ids[k], r.assignment)),
            InstanceKind::Whole => (&mut whole, format!("q={}", r.assignment)),
            InstanceKind::Random => (&mut random, format!("q={}", r.assignment)),
        };
        sec.push(match &r.failure {
            None => Instance::pass(id),
            Some(f) => Instance::fail(id, f.clone()),
        });
    }
    (branches, whole, random)
}

fn run_schematic(claim: &SchematicClaim, env: &Env, seed: u64) -> Result<SchematicOutcome, String> {
    check_schematic(claim, env, RANDOM_SAMPLES, seed).map_err(|e| e.to_string())
}

fn env_with_q(n: usize, b: Basis) -> Env {
    let f = frame(n);
    let mut env = Env::new(f);
    env.bind("q", Region::from_subspace(f, local_instance(&f, &[1], &basis_ray(b))));
    env
}

pub fn teleportation(seed: u64) -> Report {
    let env = Env::new(frame(3));
    let branches: Vec<Program> = bits2().iter().map(|&(x, y)| teleportation_branch(x, y, true, true)).collect();
    let ids: Vec<String> = bits2().iter().map(|(x, y)| format!("x={x},y={y}")).collect();
    let claim = SchematicClaim {
        name: "teleportation".into(),
        vars: vec![("q".into(), vec![1])],
        template: teleport_claim(&union(branches.clone())),
        branches: branches.iter().map(teleport_claim).collect(),
    };
    let mut report = Report::new("teleportation", seed);
    report.note = Some(format!("{} branches", branches.len()));
    match run_schematic(&claim, &env, seed) {
        Ok(out) => {
            let (b, w, r) = schematic_sections(&out, "teleportation", &ids);
            report.section(b, true);
            report.section(w, false);
            report.section(r, false);
        }
        Err(e) => {
            let mut s = Section::new("teleportation branches");
            s.push(Instance::fail("claim", e));
            report.section(s, true);
        }
    }

    let mut muts = Section::new("mutations");
    let drop_x = union(bits2().iter().map(|&(x, y)| teleportation_branch(x, y, false, true)).collect());
    let drop_z = union(bits2().iter().map(|&(x, y)| teleportation_branch(x, y, true, false)).collect());
    muts.push(expect_refuted("drop X correction, q=0", &env_with_q(3, Basis::Zero), &teleport_claim(&drop_x)));
    muts.push(expect_refuted("drop Z correction, q=+", &env_with_q(3, Basis::Plus), &teleport_claim(&drop_z)));
    let x1 = teleportation_branch(1, 0, true, false);
    muts.push(expect_refuted("drop Z correction, branch x=1,y=0, q=+", &env_with_q(3, Basis::Plus), &teleport_claim(&x1)));
    report.section(muts, false);
    report
}

fn bits3() -> Vec<(u8, u8, u8)> {
    let mut v = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                v.push((x, y, z));
            }
        }
    }
    v
}

fn qss_program(conv: QssConvention, with_z: bool) -> (Vec<Program>, Vec<String>) {
    let branches = bits3().iter().map(|&(x, y, z)| qss_branch(x, y, z, conv, with_z)).collect();
    let ids = bits3().iter().map(|(x, y, z)| format!("x={x},y={y},z={z}")).collect();
    (branches, ids)
}

/// `(-)^z_3?(ghz[2,3,4]) =_{2,4} bell[z,0,2,4]`.
pub fn ghz_intermediate(z: u8, conv: QssConvention) -> Formula {
    formula(&format!("eqi{{2,4}}(img({}_3?, ghz[2,3,4]), bell[{z},0,2,4])", conv.sign(z)))
}

pub fn quantum_secret_sharing(seed: u64) -> Report {
    let env = Env::new(frame(4));
    let (branches, ids) = qss_program(QssConvention::State, true);
    let claim = SchematicClaim {
        name: "qss".into(),
        vars: vec![("q".into(), vec![1])],
        template: qss_claim(&union(branches.clone())),
        branches: branches.iter().map(qss_claim).collect(),
    };
    let mut report = Report::new("qss", seed);
    report.note = Some(format!("{} branches", branches.len()));
    match run_schematic(&claim, &env, seed) {
        Ok(out) => {
            let (b, w, r) = schematic_sections(&out, "qss", &ids);
            report.section(b, true);
            report.section(w, false);
            report.section(r, false);
        }
        Err(e) => {
            let mut s = Section::new("qss branches");
            s.push(Instance::fail("claim", e));
            report.section(s, true);
        }
    }

    let mut ghz = Section::new("ghz intermediate");
    for z in 0..2 {
        ghz.push(expect_valid(format!("z={z}"), &env, &ghz_intermediate(z, QssConvention::State)));
    }
    report.section(ghz, false);

    let mut muts = Section::new("mutations");
    let (literal, _) = qss_program(QssConvention::FootnoteLiteral, true);
    muts.push(expect_refuted(
        "footnote sign convention, q=+",
        &env_with_q(4, Basis::Plus),
        &qss_claim(&union(literal)),
    ));
    let (no_z, _) = qss_program(QssConvention::State, false);
    muts.push(expect_refuted(
        "omit pooled bit z, q=+",
        &env_with_q(4, Basis::Plus),
        &qss_claim(&union(no_z)),
    ));
    report.section(muts, false);
    report
}
