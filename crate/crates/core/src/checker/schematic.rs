//! Claims quantified over local propositional variables.
//!
//! A variable local to `I` ranges over states `x ⊗ H_rest` with `x` in `H_I`.
//! The claim is checked for every `x` in the product basis `{0,1,+}^I`, then
//! corroborated on random complex `x`.

use crate::lang::Formula;
use crate::qframe::{embed_local, Basis, Frame, Ray, Subspace};
use crate::random;
use crate::regions::Region;

use super::{CheckError, Checker, Env, Validity};

#[derive(Debug, Clone)]
pub struct SchematicClaim {
    pub name: String,
    /// Variables with their locality sets.
    pub vars: Vec<(String, Vec<usize>)>,
    /// The whole claim.
    pub template: Formula,
    /// Optional per-branch sub-claims, each checked at every assignment.
    pub branches: Vec<Formula>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// Per-branch sub-claim `k` (0-based), or the whole claim when there are no branches.
    Branch(usize),
    /// The whole claim at a basis assignment.
    Whole,
    /// The whole claim at a random assignment.
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceRecord {
    pub kind: InstanceKind,
    pub assignment: String,
    /// `None` when the instance is valid.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SchematicOutcome {
    pub branches: usize,
    pub records: Vec<InstanceRecord>,
}

impl SchematicOutcome {
    pub fn ok(&self) -> bool {
        self.records.iter().all(|r| r.failure.is_none())
    }

    fn select(&self, f: impl Fn(InstanceKind) -> bool) -> (usize, usize) {
        let rs: Vec<_> = self.records.iter().filter(|r| f(r.kind)).collect();
        (rs.iter().filter(|r| r.failure.is_none()).count(), rs.len())
    }

    /// (passed, total) over basis assignment × branch instances.
    pub fn instances(&self) -> (usize, usize) {
        self.select(|k| matches!(k, InstanceKind::Branch(_)))
    }

    pub fn whole(&self) -> (usize, usize) {
        self.select(|k| k == InstanceKind::Whole)
    }

    pub fn random(&self) -> (usize, usize) {
        self.select(|k| k == InstanceKind::Random)
    }

    pub fn failures(&self) -> Vec<String> {
        self.records
            .iter()
            .filter_map(|r| r.failure.as_ref().map(|f| format!("{:?} [{}]: {f}", r.kind, r.assignment)))
            .collect()
    }
}

/// `x ⊗ H_rest` for a ray `x` over the qubits `qs`.
pub fn local_instance(frame: &Frame, qs: &[usize], x: &Ray) -> Subspace {
    embed_local(frame, qs, &x.as_subspace())
}

fn basis_rays(k: usize) -> Vec<Ray> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Basis>| {
                [Basis::Zero, Basis::One, Basis::Plus].map(|b| {
                    let mut q = p.clone();
                    q.push(b);
                    q
                })
            })
            .collect();
    }
    out.iter().map(|p| Ray::product(p)).collect()
}

fn cartesian(choices: &[Vec<Ray>]) -> Vec<Vec<Ray>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Ray>| {
                c.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

pub fn check_schematic(
    claim: &SchematicClaim,
    base: &Env,
    random_samples: usize,
    seed: u64,
) -> Result<SchematicOutcome, CheckError> {
    let frame = base.frame;
    let mut out = SchematicOutcome {
        branches: claim.branches.len(),
        records: Vec::new(),
    };
    let mut sorted_vars = claim.vars.clone();
    for (_, qs) in &mut sorted_vars {
        qs.sort_unstable();
    }

    let describe = |xs: &[Ray]| -> String {
        sorted_vars
            .iter()
            .zip(xs)
            .map(|((v, _), x)| format!("{v}={x}"))
            .collect::<Vec<_>>()
            .join(", ")
    };

    let check_at = |xs: &[Ray], formulas: &[&Formula]| -> Result<Vec<Option<String>>, CheckError> {
        let mut env = base.clone();
        for ((v, qs), x) in sorted_vars.iter().zip(xs) {
            env.bind(v, Region::from_subspace(frame, local_instance(&frame, qs, x)));
        }
        let ck = Checker::new(&env);
        let mut res = Vec::new();
        for f in formulas {
            let core = ck.desugar(f)?;
            res.push(match ck.check_valid(&core)? {
                Validity::Valid => None,
                Validity::Counterexample(w) => Some(format!("counterexample {w}")),
            });
        }
        Ok(res)
    };

    let choices: Vec<Vec<Ray>> = sorted_vars.iter().map(|(_, qs)| basis_rays(qs.len())).collect();
    for xs in cartesian(&choices) {
        let mut fs: Vec<&Formula> = vec![&claim.template];
        fs.extend(claim.branches.iter());
        let res = check_at(&xs, &fs)?;
        let assignment = describe(&xs);
        if !claim.branches.is_empty() {
            out.records.push(InstanceRecord {
                kind: InstanceKind::Whole,
                assignment: assignment.clone(),
                failure: res[0].clone(),
            });
        }
        let sub = if claim.branches.is_empty() { &res[..1] } else { &res[1..] };
        for (k, r) in sub.iter().enumerate() {
            out.records.push(InstanceRecord {
                kind: InstanceKind::Branch(k),
                assignment: assignment.clone(),
                failure: r.clone(),
            });
        }
    }

    let mut r = random::rng(seed);
    for _ in 0..random_samples {
        let xs: Vec<Ray> = sorted_vars
            .iter()
            .map(|(_, qs)| random::ray(&mut r, 1 << qs.len()))
            .collect();
        let res = check_at(&xs, &[&claim.template])?;
        out.records.push(InstanceRecord {
            kind: InstanceKind::Random,
            assignment: describe(&xs),
            failure: res[0].clone(),
        });
    }
    Ok(out)
}
