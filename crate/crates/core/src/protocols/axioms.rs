//! Semantic validity of the axiom schemas and their derived consequences.
//!
//! Schemas with a finite instance space (gate characteristics, locality of
//! gates, separation over index sets) are enumerated exhaustively; the others
//! get `PER_SCHEMA` random instances.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::checker::{local_instance, Checker, Env};
use crate::lang::{Formula, Program};
use crate::linalg::GaussianRational as C;
use crate::qframe::{Basis, Frame, Ray, Subspace};
use crate::random;
use crate::regions::Region;

use super::{expect_refuted, expect_valid, formula, Instance, Report, Section};

const PER_SCHEMA: usize = 50;

type Case = (String, Env, Formula);

fn schema(name: &str, k: usize, r: &mut ChaCha8Rng, mut make: impl FnMut(&mut ChaCha8Rng, usize) -> Case) -> Section {
    let mut s = Section::new(name);
    for i in 0..k {
        let (id, env, f) = make(r, i);
        s.push(expect_valid(format!("#{i} {id}"), &env, &f));
    }
    s
}

fn exhaustive(name: &str, cases: Vec<Case>) -> Section {
    let mut s = Section::new(name);
    for (id, env, f) in cases {
        s.push(expect_valid(id, &env, &f));
    }
    s
}

/// A random property: a subspace, a union of two, or a complement.
fn valuation(r: &mut ChaCha8Rng, frame: Frame) -> Region {
    let dim = frame.dim();
    let sub = |r: &mut ChaCha8Rng| Region::from_subspace(frame, random::subspace(r, dim, dim));
    match r.random_range(0..4) {
        0 | 1 => sub(r),
        2 => sub(r).union(&sub(r)),
        _ => sub(r).complement(),
    }
}

fn testable_valuation(r: &mut ChaCha8Rng, frame: Frame) -> Region {
    Region::from_subspace(frame, random::subspace(r, frame.dim(), frame.dim()))
}

fn env_pq(r: &mut ChaCha8Rng, n: usize, testable: bool) -> Env {
    let frame = Frame::new(n);
    let mut env = Env::new(frame);
    for v in ["p", "q"] {
        let val = if testable { testable_valuation(r, frame) } else { valuation(r, frame) };
        env.bind(v, val);
    }
    env
}

fn word(r: &mut ChaCha8Rng, n: usize) -> Program {
    random::gate_word(r, n, 6)
}

/// Deterministic program: a gate word, possibly with a test of a variable.
fn det_program(r: &mut ChaCha8Rng, n: usize) -> String {
    let w = word(r, n);
    match r.random_range(0..3) {
        0 => w.to_string(),
        1 => format!("p?; {w}"),
        _ => format!("{w}; q?"),
    }
}

/// Any finite program: deterministic branches joined by `+`.
fn any_program(r: &mut ChaCha8Rng, n: usize) -> String {
    if r.random_bool(0.5) {
        det_program(r, n)
    } else {
        format!("({}) + ({})", det_program(r, n), det_program(r, n))
    }
}

fn case(id: String, env: Env, f: &str) -> Case {
    (format!("{id} {f}"), env, formula(f))
}

fn single_system(r: &mut ChaCha8Rng) -> Vec<Section> {
    let n = 2;
    let mut out = Vec::new();
    let plain = |src: &'static str, testable: bool| {
        move |r: &mut ChaCha8Rng, _i: usize| case(String::new(), env_pq(r, n, testable), src)
    };
    let with_prog = |src: &'static str, det: bool| {
        move |r: &mut ChaCha8Rng, _i: usize| {
            let env = env_pq(r, n, false);
            let p = if det { det_program(r, n) } else { any_program(r, n) };
            case(String::new(), env, &src.replace("PI", &p))
        }
    };
    let with_word = |src: &'static str| {
        move |r: &mut ChaCha8Rng, _i: usize| {
            let env = env_pq(r, n, false);
            let u = word(r, n);
            case(String::new(), env, &src.replace("U", &u.to_string()))
        }
    };
    out.push(schema("Kripke", PER_SCHEMA, r, with_prog("[PI](p -> q) -> ([PI]p -> [PI]q)", false)));
    out.push(schema("testability", PER_SCHEMA, r, plain("box p -> [q?]p", false)));
    out.push(schema("testability (dual)", PER_SCHEMA, r, plain("<q?>p -> <p?>true", false)));
    out.push(schema("partial functionality", PER_SCHEMA, r, plain("![p?]q -> [p?]!q", false)));
    out.push(schema("adequacy", PER_SCHEMA, r, plain("p & q -> <p?>q", false)));
    out.push(schema("repeatability", PER_SCHEMA, r, plain("testable(p) -> [p?]p", false)));
    out.push(schema("proper superpositions", PER_SCHEMA, r, |r, _| {
        let env = env_pq(r, n, false);
        let (a, b) = (any_program(r, n), any_program(r, n));
        case(String::new(), env, &format!("<{a}>box box p -> [{b}]p"))
    }));
    out.push(schema("unitary functionality", PER_SCHEMA, r, with_word("![U]q <-> [U]!q")));
    out.push(schema("unitary bijectivity 1", PER_SCHEMA, r, with_word("p <-> [U; adj(U)]p")));
    out.push(schema("unitary bijectivity 2", PER_SCHEMA, r, with_word("p <-> [adj(U); U]p")));
    out.push(schema("adjointness", PER_SCHEMA, r, with_prog("p -> [PI]box <adj(PI)>dia p", true)));
    out.push(schema("quantum modus ponens", PER_SCHEMA, r, plain("leq(p & [p?]q, q)", false)));
    out.push(schema("testability closure", PER_SCHEMA, r, |r, i| {
        let env = env_pq(r, n, false);
        let pi = det_program(r, n);
        let f = match i % 5 {
            0 => "testable(p) & testable(q) -> testable(p & q)".to_string(),
            1 => format!("testable(p) -> testable([{pi}]p)"),
            2 => "testable(box p)".to_string(),
            3 => "testable(~p)".to_string(),
            _ => format!("testable(post({pi}, p))"),
        };
        case(String::new(), env, &f)
    }));
    // Over testable properties: `post` closes its image.
    out.push(schema("sp/wp adjunction", PER_SCHEMA, r, |r, _| {
        let env = env_pq(r, n, true);
        let pi = det_program(r, n);
        case(String::new(), env, &format!("leq(p, [{pi}]post({pi}, p)) & leq(post({pi}, [{pi}]p), p)"))
    }));
    out
}

fn set_text(qs: &[usize]) -> String {
    qs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1..(1u32 << n)).map(|m| (1..=n).filter(|q| m & (1 << (q - 1)) != 0).collect()).collect()
}

fn random_subset(r: &mut ChaCha8Rng, n: usize, proper: bool) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (1..=n).filter(|_| r.random_bool(0.5)).collect();
        if !s.is_empty() && (!proper || s.len() < n) {
            return s;
        }
    }
}

fn local_ray(r: &mut ChaCha8Rng, k: usize, real: bool) -> Ray {
    loop {
        let v = if real { random::real_vector(r, 1 << k) } else { random::vector(r, 1 << k) };
        if let Ok(s) = Ray::new(v) {
            return s;
        }
    }
}

fn local_subspace(frame: Frame, qs: &[usize], x: &Ray) -> Subspace {
    local_instance(&frame, qs, x)
}

/// A word acting only on the qubits of `set`.
fn local_word(r: &mut ChaCha8Rng, set: &[usize]) -> Program {
    let len = r.random_range(1..=5);
    let gates: Vec<Program> = (0..len)
        .map(|_| {
            let q = set[r.random_range(0..set.len())];
            let pick = if set.len() >= 2 { r.random_range(0..4) } else { r.random_range(0..3) };
            match pick {
                0 => Program::gate(crate::qframe::GateKind::X, &[q]),
                1 => Program::gate(crate::qframe::GateKind::Z, &[q]),
                2 => Program::gate(crate::qframe::GateKind::H, &[q]),
                _ => {
                    let t = loop {
                        let t = set[r.random_range(0..set.len())];
                        if t != q {
                            break t;
                        }
                    };
                    Program::gate(crate::qframe::GateKind::Cnot, &[q, t])
                }
            }
        })
        .collect();
    Program::seq_all(gates).expect("nonempty")
}

fn separation() -> Section {
    let n = 3;
    let mut cases = vec![case("N".into(), Env::new(Frame::new(n)), "T{1,2,3}")];
    for i in subsets(n) {
        for j in subsets(n) {
            let rest: Vec<usize> = (1..=n).filter(|q| !i.contains(q)).collect();
            let uni: Vec<usize> = (1..=n).filter(|q| i.contains(q) || j.contains(q)).collect();
            let meet: Vec<usize> = i.iter().copied().filter(|q| j.contains(q)).collect();
            let mut concl: Vec<String> = vec![format!("T{{{}}}", set_text(&uni))];
            for s in [rest, meet] {
                if !s.is_empty() {
                    concl.push(format!("T{{{}}}", set_text(&s)));
                }
            }
            let f = format!("T{{{}}} & T{{{}}} -> {}", set_text(&i), set_text(&j), concl.join(" & "));
            cases.push(case(String::new(), Env::new(Frame::new(n)), &f));
        }
    }
    exhaustive("separation", cases)
}

fn trivial_local_program(r: &mut ChaCha8Rng) -> Vec<Section> {
    let n = 2;
    // Checked pointwise: `<⊤_I>p` leaves the symbolic fragment when `¬p` is not a subspace.
    let mut weakest = Section::new("weakest local program");
    let frame2 = Frame::new(n);
    for i in 0..PER_SCHEMA {
        let set = random_subset(r, n, true);
        let pi = local_word(r, &set);
        let mut env = Env::new(frame2);
        let base = random::subspace(r, frame2.dim(), frame2.dim() - 1);
        let mut val = Region::from_subspace(frame2, base.clone());
        if r.random_bool(0.5) {
            val = val.union(&valuation(r, frame2));
        }
        env.bind("p", val);
        let ck = Checker::new(&env);
        let f = formula(&format!("<{pi}>p -> <T{{{}}}>p", set_text(&set)));
        let core = ck.desugar(&f);
        let inv = ck.det_map(&Program::Adj(Box::new(pi.clone())));
        let mut states: Vec<Ray> = (0..4).map(|_| random::ray(r, frame2.dim())).collect();
        if let (Ok(inv), false) = (&inv, base.is_zero()) {
            let t = base.sample_vector(&random::vector(r, base.rank()));
            if let Ok(t) = Ray::new(t) {
                states.extend(t.apply(inv));
            }
        }
        let res: Result<bool, _> = core.and_then(|c| {
            states.iter().try_fold(true, |acc, s| ck.holds(s, &c).map(|h| acc && h))
        });
        weakest.push(Instance::check(format!("#{i} {f}"), res == Ok(true), || format!("{res:?}")));
    }

    // I(⊤_I): a state is I-separated iff its I-component is.
    let mut own = Section::new("trivial local program is local");
    let frame = Frame::new(3);
    let env = Env::new(frame);
    let ck = Checker::new(&env);
    for i in 0..PER_SCHEMA {
        let set = random_subset(r, 3, true);
        let s = if i % 2 == 0 {
            let x = local_ray(r, set.len(), false);
            let y = local_ray(r, 3 - set.len(), false);
            let v = crate::qframe::tensor_vectors(&frame, &set, x.amplitudes(), y.amplitudes());
            Ray::new(v).expect("nonzero")
        } else {
            local_ray(r, 3, false)
        };
        let top = Formula::Top(set.clone());
        let cmp = Formula::Cmp(set.clone(), Box::new(top.clone()));
        let res = ck.holds(&s, &top).and_then(|a| ck.holds(&s, &cmp).map(|b| a == b));
        own.push(Instance::check(format!("#{i} I={set:?} s={s}"), res == Ok(true), || format!("{res:?}")));
    }

    let cor4 = schema("weakest local property", PER_SCHEMA, r, |r, _| {
        let frame = Frame::new(n);
        let set = random_subset(r, n, true);
        let mut env = Env::new(frame);
        let mut val = Region::from_subspace(frame, local_subspace(frame, &set, &local_ray(r, set.len(), false)));
        if r.random_bool(0.5) {
            val = val.union(&Region::from_subspace(frame, local_subspace(frame, &set, &local_ray(r, set.len(), false))));
        }
        env.bind("p", val);
        case(String::new(), env, &format!("local{{{0}}}(p) -> leq(p, T{{{0}}})", set_text(&set)))
    });

    let cor5 = exhaustive(
        "orthocomplement of separation",
        subsets(3)
            .into_iter()
            .map(|s| case(String::new(), Env::new(Frame::new(3)), &format!("eqf(~T{{{}}}, false)", set_text(&s))))
            .collect(),
    );
    vec![weakest, own, cor4, cor5]
}

fn local_states(r: &mut ChaCha8Rng) -> Section {
    schema("local states", PER_SCHEMA, r, |r, _| {
        let n = 3;
        let frame = Frame::new(n);
        let set = random_subset(r, n, true);
        let x = local_ray(r, set.len(), false);
        let y = if r.random_bool(0.5) { x.clone() } else { local_ray(r, set.len(), false) };
        let mut env = Env::new(frame);
        env.bind("p", Region::from_subspace(frame, local_subspace(frame, &set, &x)));
        env.bind("q", Region::from_subspace(frame, local_subspace(frame, &set, &y)));
        let i = set_text(&set);
        case(
            String::new(),
            env,
            &format!("testable(p) & local{{{i}}}(p) & local{{{i}}}(q) & !eqf(q, false) & leq(q, p) -> eqf(q, p)"),
        )
    })
}

fn basic_state_testability(r: &mut ChaCha8Rng) -> Section {
    let mut cases = Vec::new();
    for c in ['0', '1', '+', '-'] {
        for (i, j) in [(1, 2), (2, 1), (1, 3), (3, 2)] {
            let pi = random::one_qubit_word(r, 1, 4);
            let f = format!(
                "testable({c}_{i}) & local{{{i}}}({c}_{i}) & testable(ent[{i},{j}]({pi})) & local{{{i},{j}}}(ent[{i},{j}]({pi}))"
            );
            cases.push(case(String::new(), Env::new(Frame::new(3)), &f));
        }
    }
    exhaustive("basic-state testability", cases)
}

fn proper_superposition() -> Section {
    let mut cases = Vec::new();
    for i in 1..=3 {
        for c in ['+', '-'] {
            cases.push(case(String::new(), Env::new(Frame::new(3)), &format!("{c}_{i} -> dia 0_{i} & dia 1_{i}")));
        }
    }
    exhaustive("proper superposition", cases)
}

fn basic_products(n: usize) -> Vec<String> {
    let mut out = vec![Vec::new()];
    for q in 1..=n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<String>| {
                ['0', '1', '+'].map(|c| {
                    let mut p = p.clone();
                    p.push(format!("{c}_{q}"));
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|p| p.join(" & ")).collect()
}

fn determinacy(r: &mut ChaCha8Rng) -> Section {
    let n = 2;
    schema("determinacy", PER_SCHEMA, r, |r, i| {
        let w = word(r, n);
        let w2 = match i % 3 {
            0 => format!("{w}; X_1; X_1"),
            1 => format!("H_2; H_2; {w}"),
            _ => word(r, n).to_string(),
        };
        let premise: Vec<String> = basic_products(n)
            .iter()
            .map(|c| format!("eqf(img({w}, {c}), img({w2}, {c}))"))
            .collect();
        let env = env_pq(r, n, false);
        let f = format!("{} -> eqf(img({w}, p), img({w2}, p))", premise.join(" & "));
        (format!("pi={w} pi'={w2}"), env, formula(&f))
    })
}

fn entanglement_claim(i: usize, j: usize, pi: &Program, x: &Ray) -> (Env, Formula) {
    let frame = Frame::new(3);
    let mut env = Env::new(frame);
    env.bind("p", Region::from_subspace(frame, local_subspace(frame, &[i], x)));
    let f = formula(&format!("testable(p) -> eqi{{{j}}}(img(p?, ent[{i},{j}]({pi})), img(mov[{i},{j}]({pi}), p))"));
    (env, f)
}

/// Real local states only: for complex `p` the pair state yields `π(p̄)`.
fn entanglement(r: &mut ChaCha8Rng) -> Vec<Section> {
    let mut s = Section::new("entanglement");
    let pairs = [(1, 2), (2, 1), (1, 3), (3, 2), (2, 3), (3, 1)];
    for k in 0..PER_SCHEMA {
        let (i, j) = pairs[k % pairs.len()];
        let pi = random::one_qubit_word(r, 1, 4);
        let x = local_ray(r, 1, true);
        let (env, f) = entanglement_claim(i, j, &pi, &x);
        s.push(expect_valid(format!("#{k} i={i},j={j} pi={pi} p={x}"), &env, &f));
    }
    let mut neg = Section::new("entanglement with a complex local state");
    let x = Ray::new(vec![C::one(), C::i()]).expect("nonzero");
    for pi in ["X_1", "H_1"] {
        let (env, f) = entanglement_claim(1, 2, &super::program(pi), &x);
        neg.push(expect_refuted(format!("pi={pi} p={x}"), &env, &f));
    }
    vec![s, neg]
}

fn gate_locality() -> Section {
    let mut cases = Vec::new();
    for n in [2, 3] {
        for q in 1..=n {
            for g in ["X", "Z", "H"] {
                cases.push(case(format!("n={n}"), Env::new(Frame::new(n)), &format!("localp{{{q}}}({g}_{q})")));
            }
        }
        for (i, j) in [(1, 2), (2, 1)] {
            cases.push(case(format!("n={n}"), Env::new(Frame::new(n)), &format!("localp{{{i},{j}}}(CNOT_{i}_{j})")));
        }
    }
    exhaustive("gate locality", cases)
}

fn gate_characteristics() -> Section {
    let single = [
        ("0", "X", "1"),
        ("1", "X", "0"),
        ("+", "X", "+"),
        ("0", "Z", "0"),
        ("1", "Z", "1"),
        ("+", "Z", "-"),
        ("0", "H", "+"),
        ("1", "H", "-"),
        ("+", "H", "0"),
    ];
    let mut cases = Vec::new();
    for i in 1..=2 {
        for (a, g, b) in single {
            cases.push(case(String::new(), Env::new(Frame::new(2)), &format!("{a}_{i} -> [{g}_{i}]{b}_{i}")));
        }
    }
    for (i, j) in [(1, 2), (2, 1)] {
        let mut cnot = vec![
            format!("1_{i} & 0_{j} -> [CNOT_{i}_{j}]1_{j}"),
            format!("1_{i} & 1_{j} -> [CNOT_{i}_{j}]0_{j}"),
            format!("1_{i} & +_{j} -> [CNOT_{i}_{j}]+_{j}"),
            format!("+_{i} & 0_{j} -> [CNOT_{i}_{j}]bell[0,0,{i},{j}]"),
            format!("+_{i} & 1_{j} -> [CNOT_{i}_{j}]bell[0,1,{i},{j}]"),
            format!("+_{i} & +_{j} -> [CNOT_{i}_{j}]gamma[{i},{j}]"),
        ];
        for c in ['0', '1', '+', '-'] {
            cnot.push(format!("0_{i} & {c}_{j} -> [CNOT_{i}_{j}]{c}_{j}"));
        }
        for f in cnot {
            cases.push(case(String::new(), Env::new(Frame::new(2)), &f));
        }
    }
    exhaustive("gate characteristics", cases)
}

fn product_state(r: &mut ChaCha8Rng, frame: Frame, set: &[usize], x: &Ray) -> Subspace {
    let rest = frame.complement(set);
    let y = local_ray(r, rest.len(), false);
    let v = crate::qframe::tensor_vectors(&frame, set, x.amplitudes(), y.amplitudes());
    Ray::new(v).expect("nonzero").as_subspace()
}

/// A product of one-qubit rays, fixed where given and random elsewhere.
fn product_ray(r: &mut ChaCha8Rng, n: usize, fixed: &[(usize, &Ray)]) -> Ray {
    let mut v = vec![C::one()];
    for q in 1..=n {
        let part = match fixed.iter().find(|(k, _)| *k == q) {
            Some((_, x)) => (*x).clone(),
            None => local_ray(r, 1, false),
        };
        v = crate::linalg::vec_kron(&v, part.amplitudes());
    }
    Ray::new(v).expect("nonzero")
}

fn local_consequences(r: &mut ChaCha8Rng) -> Vec<Section> {
    let n = 3;
    let frame = Frame::new(n);
    let acts = schema("local programs act locally", PER_SCHEMA, r, |r, _| {
        let set = random_subset(r, n, true);
        let rest = frame.complement(&set);
        let x = local_ray(r, set.len(), false);
        let pi = local_word(r, &set);
        let mut env = Env::new(frame);
        env.bind("p", Region::from_subspace(frame, product_state(r, frame, &set, &x)));
        env.bind("q", Region::from_subspace(frame, product_state(r, frame, &set, &x)));
        let (i, o) = (set_text(&set), set_text(&rest));
        let f = format!("eqi{{{i}}}(p, q) -> eqi{{{o}}}(p, img({pi}, p)) & eqi{{{i}}}(img({pi}, p), img({pi}, q))");
        case(String::new(), env, &f)
    });
    let identical = schema("identical parts", PER_SCHEMA, r, |r, _| {
        let a = r.random_range(1..=n);
        let b = loop {
            let b = r.random_range(1..=n);
            if b != a {
                break b;
            }
        };
        let xa = local_ray(r, 1, false);
        let xb = local_ray(r, 1, false);
        let same_b = r.random_bool(0.5);
        let p = product_ray(r, n, &[(a, &xa), (b, &xb)]);
        let q = if same_b { product_ray(r, n, &[(a, &xa), (b, &xb)]) } else { product_ray(r, n, &[(a, &xa)]) };
        let mut env = Env::new(frame);
        env.bind("p", Region::from_subspace(frame, p.as_subspace()));
        env.bind("q", Region::from_subspace(frame, q.as_subspace()));
        let (i, j) = (a.min(b), a.max(b));
        case(String::new(), env, &format!("eqi{{{a}}}(p, q) & eqi{{{b}}}(p, q) -> eqi{{{i},{j}}}(p, q)"))
    });
    let perp = schema("orthogonality to a component", PER_SCHEMA, r, |r, i| {
        let set = random_subset(r, n, true);
        let mut env = Env::new(frame);
        let rest = frame.complement(&set);
        let mut val = Region::empty(frame);
        for _ in 0..r.random_range(1..=2) {
            let u = random::subspace(r, 1 << set.len(), 1 << set.len());
            let w = random::subspace(r, 1 << rest.len(), 1 << rest.len());
            val = val.union(&Region::from_subspace(frame, crate::qframe::tensor_subspaces(&frame, &set, &u, &w)));
        }
        env.bind("p", val);
        let x = local_ray(r, set.len(), false);
        let q = if i % 2 == 0 {
            product_state(r, frame, &set, &x)
        } else {
            local_subspace(frame, &set, &x)
        };
        env.bind("q", Region::from_subspace(frame, q));
        let s = set_text(&set);
        case(String::new(), env, &format!("perpf(cmp{{{s}}}(p), q) <-> perpf(cmp{{{s}}}(p), cmp{{{s}}}(q))"))
    });
    vec![acts, identical, perp]
}

/// `0_1` against a Bell pair: not orthogonal to the pair, but the pair has no 1-component.
fn entangled_component_counterexample() -> Section {
    let frame = Frame::new(2);
    let mut env = Env::new(frame);
    env.bind("p", Region::from_subspace(frame, local_subspace(frame, &[1], &Ray::product(&[Basis::Zero]))));
    env.bind("q", Region::from_subspace(frame, Ray::from_ints(&[0, 1, 1, 0]).expect("nonzero").as_subspace()));
    let mut s = Section::new("orthogonality to a component, entangled q");
    let f = formula("perpf(cmp{1}(p), q) <-> perpf(cmp{1}(p), cmp{1}(q))");
    s.push(expect_refuted("p=0_1 q=|01>+|10>", &env, &f));
    s
}

pub fn axiom_suite(seed: u64) -> Report {
    let mut r = random::rng(seed ^ 0xa5);
    let mut rep = Report::new("axioms", seed);
    for s in single_system(&mut r) {
        rep.section(s, true);
    }
    rep.section(separation(), true);
    for s in trivial_local_program(&mut r) {
        rep.section(s, true);
    }
    rep.section(local_states(&mut r), true);
    rep.section(basic_state_testability(&mut r), true);
    rep.section(proper_superposition(), true);
    rep.section(determinacy(&mut r), true);
    let mut ent = entanglement(&mut r).into_iter();
    rep.section(ent.next().expect("positive section"), true);
    rep.section(ent.next().expect("negative section"), false);
    rep.section(gate_locality(), true);
    rep.section(gate_characteristics(), true);
    for s in local_consequences(&mut r) {
        rep.section(s, true);
    }
    rep.section(entangled_component_counterexample(), false);
    rep
}
