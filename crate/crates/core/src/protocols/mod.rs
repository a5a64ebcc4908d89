//! Named verification targets: the protocols, lemma and axiom suites, frame
//! properties and characterization tables.

mod axioms;
mod coherence;
mod frame;
mod lemmas;
mod tables;
mod teleport;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::checker::{CheckError, Checker, Env, Validity};
use crate::lang::{parse_formula, parse_program, Formula, Program};
use crate::qframe::{Basis, Frame, GateKind, Ray};

pub use axioms::axiom_suite;
pub use coherence::coherence;
pub use frame::{adjointness, frame_properties, phase_counterexample, adjoint_properties, basis_determinacy};
pub use lemmas::lemma_suite;
pub use tables::{bell_ray, bell_table, gate_tables, BellTable};
pub use teleport::{
    ghz_intermediate, qss_branch, quantum_secret_sharing, teleportation, teleportation_branch, QssConvention,
};

pub const DEFAULT_SEED: u64 = 1;

pub const TARGETS: &[&str] = &["teleportation", "qss", "lemmas", "axioms", "frame", "tables", "coherence"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub pass: bool,
    /// Witness or error text for failures; confirmation text for rejected mutations.
    pub detail: Option<String>,
}

impl Instance {
    pub fn pass(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            pass: true,
            detail: None,
        }
    }

    pub fn fail(id: impl Into<String>, why: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            pass: false,
            detail: Some(why.into()),
        }
    }

    pub fn check(id: impl Into<String>, ok: bool, why: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(id)
        } else {
            Self::fail(id, why())
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub instances: Vec<Instance>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            instances: Vec::new(),
        }
    }

    pub fn push(&mut self, i: Instance) {
        self.instances.push(i);
    }

    pub fn passed(&self) -> usize {
        self.instances.iter().filter(|i| i.pass).count()
    }

    pub fn ok(&self) -> bool {
        self.passed() == self.instances.len()
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub target: String,
    pub seed: u64,
    /// Extra text after the instance count in the headline.
    pub note: Option<String>,
    /// Sections counted in the headline; the rest are corroborating checks.
    pub counted: Vec<usize>,
    pub sections: Vec<Section>,
    pub duration: Duration,
}

impl Report {
    pub fn new(target: &str, seed: u64) -> Self {
        Self {
            target: target.to_string(),
            seed,
            note: None,
            counted: Vec::new(),
            sections: Vec::new(),
            duration: Duration::ZERO,
        }
    }

    pub fn section(&mut self, s: Section, counted: bool) {
        if counted {
            self.counted.push(self.sections.len());
        }
        self.sections.push(s);
    }

    pub fn pass(&self) -> bool {
        self.sections.iter().all(Section::ok)
    }

    pub fn get(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    fn counts(&self) -> (usize, usize) {
        let idx: Vec<usize> = if self.counted.is_empty() {
            (0..self.sections.len()).collect()
        } else {
            self.counted.clone()
        };
        idx.iter().fold((0, 0), |(p, t), &k| {
            (p + self.sections[k].passed(), t + self.sections[k].instances.len())
        })
    }

    /// `PASS (12/12 instances, 4 branches)` style summary.
    pub fn headline(&self) -> String {
        let (p, t) = self.counts();
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        match &self.note {
            Some(n) => format!("{verdict} ({p}/{t} instances, {n})"),
            None => format!("{verdict} ({p}/{t} instances)"),
        }
    }

    /// Plain-text rendering; durations only when `timing` is set.
    pub fn render(&self, timing: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.headline());
        for s in &self.sections {
            let v = if s.ok() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  {}: {v} ({}/{})", s.name, s.passed(), s.instances.len());
            for i in s.instances.iter().filter(|i| !i.pass) {
                let _ = writeln!(out, "    FAIL {}: {}", i.id, i.detail.as_deref().unwrap_or(""));
            }
        }
        let _ = writeln!(out, "  seed: {}", self.seed);
        if timing {
            let _ = writeln!(out, "  time: {:.3}s", self.duration.as_secs_f64());
        }
        out
    }

    /// One line per instance: target, instance id, verdict.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            for i in &s.instances {
                let v = if i.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{}\t{}/{}\t{v}", self.target, s.name, i.id);
            }
        }
        out
    }
}

/// Runs one named target.
pub fn run_target(name: &str, seed: u64) -> Option<Report> {
    let start = Instant::now();
    let mut r = match name {
        "teleportation" => teleportation(seed),
        "qss" => quantum_secret_sharing(seed),
        "lemmas" => lemma_suite(seed),
        "axioms" => axiom_suite(seed),
        "frame" => {
            let mut r = frame_properties(seed, 100);
            for s in adjointness(seed, 200).sections {
                r.section(s, true);
            }
            for s in adjoint_properties(seed, 50).sections.into_iter().chain(basis_determinacy(seed, 20, 100).sections) {
                r.section(s, true);
            }
            r.section(phase_counterexample(), true);
            r.target = "frame".into();
            r
        }
        "tables" => {
            let mut r = Report::new("tables", seed);
            r.section(gate_tables(), true);
            for n in [2, 3] {
                r.section(bell_table(n).section(), true);
            }
            r
        }
        "coherence" => {
            let mut r = Report::new("coherence", seed);
            r.section(coherence(seed, 1000), true);
            r
        }
        _ => return None,
    };
    r.duration = start.elapsed();
    Some(r)
}

// Helpers shared by the targets.

pub(crate) fn formula(src: &str) -> Formula {
    parse_formula(src).unwrap_or_else(|e| panic!("built-in formula `{src}` does not parse: {e}"))
}

pub(crate) fn program(src: &str) -> Program {
    parse_program(src).unwrap_or_else(|e| panic!("built-in program `{src}` does not parse: {e}"))
}

/// Validity check of a formula as a report instance.
pub(crate) fn expect_valid(id: impl Into<String>, env: &Env, f: &Formula) -> Instance {
    let id = id.into();
    match validity(env, f) {
        Ok(Validity::Valid) => Instance::pass(id),
        Ok(Validity::Counterexample(w)) => Instance::fail(id, format!("counterexample {w}")),
        Err(e) => Instance::fail(id, format!("error: {e}")),
    }
}

/// Passes iff the formula is refuted by a pointwise-confirmed witness.
pub(crate) fn expect_refuted(id: impl Into<String>, env: &Env, f: &Formula) -> Instance {
    let id = id.into();
    match validity(env, f) {
        Ok(Validity::Counterexample(w)) => Instance {
            id,
            pass: true,
            detail: Some(format!("rejected, witness {w}")),
        },
        Ok(Validity::Valid) => Instance::fail(id, "expected a counterexample, got VALID"),
        Err(e) => Instance::fail(id, format!("error: {e}")),
    }
}

pub(crate) fn validity(env: &Env, f: &Formula) -> Result<Validity, CheckError> {
    let ck = Checker::new(env);
    let core = ck.desugar(f)?;
    ck.check_valid(&core)
}

/// The same gate word with every qubit index renamed by `to`.
pub(crate) fn relabel(p: &Program, to: &dyn Fn(usize) -> usize) -> Program {
    match p {
        Program::Gate(k, ts) => Program::Gate(*k, ts.iter().map(|&q| to(q)).collect()),
        Program::Seq(a, b) => Program::seq(relabel(a, to), relabel(b, to)),
        Program::Union(a, b) => Program::union(relabel(a, to), relabel(b, to)),
        Program::Adj(a) => Program::Adj(Box::new(relabel(a, to))),
        other => other.clone(),
    }
}

/// A word on qubit 1 moved to qubit `q`.
pub(crate) fn on_qubit(word: &Program, q: usize) -> Program {
    relabel(word, &|_| q)
}

/// `G^e` for a gate on one qubit, or nothing when `e = 0`.
pub(crate) fn power(kind: GateKind, q: usize, e: u8) -> Option<Program> {
    (e == 1).then(|| Program::gate(kind, &[q]))
}

pub(crate) fn basis_ray(b: Basis) -> Ray {
    Ray::product(&[b])
}

pub(crate) fn frame(n: usize) -> Frame {
    Frame::new(n)
}
