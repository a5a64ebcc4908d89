//! Agreement of the symbolic and pointwise evaluators.

use rand::Rng;

use crate::checker::{Checker, Env};
use crate::qframe::{Frame, Ray};
use crate::random;
use crate::regions::Region;

use super::{Instance, Section};

/// `k` sampled (formula, ray) pairs at `n = 2`, separation-free.
pub fn coherence(seed: u64, k: usize) -> Section {
    let mut r = random::rng(seed ^ 0xc0);
    let frame = Frame::new(2);
    let mut s = Section::new("evaluator coherence");
    let per_env = 10;
    for e in 0..k.div_ceil(per_env) {
        let mut env = Env::new(frame);
        let mut pieces = Vec::new();
        for v in ["p", "q"] {
            let sub = random::subspace(&mut r, 4, 3);
            pieces.push(sub.clone());
            let val = match r.random_range(0..3) {
                0 => Region::from_subspace(frame, sub),
                1 => Region::from_subspace(frame, sub).complement(),
                _ => Region::from_subspace(frame, sub).union(&Region::from_subspace(frame, random::subspace(&mut r, 4, 2))),
            };
            env.bind(v, val);
        }
        let ck = Checker::new(&env);
        for j in 0..per_env.min(k - e * per_env) {
            let f = random::formula(&mut r, 2, 3);
            let ray = match pieces.iter().find(|p| !p.is_zero() && r.random_bool(0.5)) {
                Some(p) => Ray::new(p.sample_vector(&random::vector(&mut r, p.rank()))).unwrap_or_else(|_| random::ray(&mut r, 4)),
                None => random::ray(&mut r, 4),
            };
            let id = format!("#{} {f} at {ray}", e * per_env + j);
            let res = ck.desugar(&f).and_then(|core| {
                let sym = ck.eval(&core)?.contains(&ray);
                let pt = ck.holds_direct(&ray, &core)?;
                Ok((sym, pt))
            });
            s.push(match res {
                Ok((a, b)) => Instance::check(id, a == b, || format!("symbolic {a}, pointwise {b}")),
                Err(err) => Instance::fail(id, format!("error: {err}")),
            });
        }
    }
    s
}
