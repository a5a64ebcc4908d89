//! Properties of the concrete frame: tests, unitaries, adjoints and gate words.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::checker::{Checker, Env};
use crate::lang::Program;
use crate::linalg::{inner, is_zero_vec, vec_add, vec_scale, GaussianRational as C, Matrix};
use crate::qframe::{gate, Basis, Frame, GateKind, PartialMap, Ray, Subspace};
use crate::random;
use crate::regions::Region;

use super::{Instance, Report, Section};

fn word_map(n: usize, p: &Program) -> Matrix {
    let env = Env::new(Frame::new(n));
    Checker::new(&env).det_map(p).expect("gate words are deterministic")
}

/// Unnormalized Gram-Schmidt: an orthogonal basis of the span of `vs`.
fn orthogonal_basis(vs: &[Vec<C>]) -> Vec<Vec<C>> {
    let mut out: Vec<Vec<C>> = Vec::new();
    for x in vs {
        let mut v = x.clone();
        for b in &out {
            let k = &inner(b, x) / &inner(b, b);
            v = vec_add(&v, &vec_scale(b, &-k));
        }
        if !is_zero_vec(&v) {
            out.push(v);
        }
    }
    out
}

fn random_map(r: &mut ChaCha8Rng, dim: usize) -> Matrix {
    let mut rows: Vec<Vec<C>> = (0..dim).map(|_| random::vector(r, dim)).collect();
    // Rank-deficient half the time.
    if r.random_bool(0.5) {
        let drop = r.random_range(0..dim);
        rows[drop] = vec![C::zero(); dim];
        if dim > 1 && r.random_bool(0.5) {
            let other = (drop + 1) % dim;
            rows[other] = vec_scale(&rows[(drop + 2) % dim], &random::scalar(r));
        }
    }
    Matrix::from_rows(dim, rows)
}

/// A ray orthogonal to `s`, or an arbitrary ray, with even odds.
fn partner(r: &mut ChaCha8Rng, s: &Ray) -> Ray {
    let dim = s.dim();
    if r.random_bool(0.5) {
        let perp = s.as_subspace().ortho();
        loop {
            let v = perp.sample_vector(&random::vector(r, perp.rank()));
            if let Ok(t) = Ray::new(v) {
                return t;
            }
        }
    }
    random::ray(r, dim)
}

fn perp_or_undefined(s: &Ray, t: Option<Ray>) -> bool {
    t.is_none_or(|t| s.is_orthogonal(&t))
}

fn in_subspace(s: &Subspace, t: &Option<Ray>) -> bool {
    t.as_ref().is_none_or(|t| s.contains_ray(t))
}

/// The ten properties of the concrete frame, `k` instances each, alternating `n = 1, 2`.
pub fn frame_properties(seed: u64, k: usize) -> Report {
    let mut r = random::rng(seed);
    let names = [
        "partial functionality",
        "trivial tests",
        "atomicity",
        "adequacy",
        "repeatability",
        "compatibility",
        "self-adjointness",
        "proper superposition",
        "unitary reversibility",
        "orthogonality preservation",
    ];
    let mut secs: Vec<Section> = names.iter().map(|n| Section::new(*n)).collect();
    for i in 0..k {
        let n = 1 + i % 2;
        let dim = 1 << n;
        let id = |tag: &str| format!("#{i} n={n}{tag}");

        let p = random::subspace(&mut r, dim, dim);
        let proj = p.projector();
        let s = random::ray(&mut r, dim);

        let lambda = loop {
            let c = random::scalar(&mut r);
            if !c.is_zero() {
                break c;
            }
        };
        let scaled = Ray::new(vec_scale(s.amplitudes(), &lambda)).expect("nonzero");
        let (a, b) = (s.apply(&proj), scaled.apply(&proj));
        secs[0].push(Instance::check(id(""), a == b, || format!("{a:?} vs {b:?}")));

        let empty = s.apply(&Subspace::zero(dim).projector());
        let whole = s.apply(&Subspace::full(dim).projector());
        secs[1].push(Instance::check(id(""), empty.is_none() && whole.as_ref() == Some(&s), || {
            format!("empty test gives {empty:?}, full test gives {whole:?}")
        }));

        let t = partner(&mut r, &s);
        let perp = s.as_subspace().ortho();
        let closed = s.as_subspace().ortho().ortho() == s.as_subspace();
        let separates = t == s || t.apply(&perp.projector()).is_some();
        let atom_ok = closed && separates && s.apply(&perp.projector()).is_none();
        secs[2].push(Instance::check(id(""), atom_ok, || format!("s={s} t={t}")));

        let inside = loop {
            if p.is_zero() {
                break None;
            }
            if let Ok(v) = Ray::new(p.sample_vector(&random::vector(&mut r, p.rank()))) {
                break Some(v);
            }
        };
        let adequate = inside.as_ref().is_none_or(|v| v.apply(&proj).as_ref() == Some(v));
        secs[3].push(Instance::check(id(""), adequate, || format!("P={p} s={inside:?}")));

        let out = s.apply(&proj);
        secs[4].push(Instance::check(id(""), in_subspace(&p, &out), || format!("P={p} image {out:?}")));

        let basis = orthogonal_basis(&(0..dim).map(|_| random::vector(&mut r, dim)).collect::<Vec<_>>());
        let pick = |r: &mut ChaCha8Rng| -> Subspace {
            let vs: Vec<Vec<C>> = basis.iter().filter(|_| r.random_bool(0.5)).cloned().collect();
            Subspace::span(dim, &vs)
        };
        let (sa, sb) = (pick(&mut r), pick(&mut r));
        let (pa, pb) = (sa.projector(), sb.projector());
        let commute = pa.mul(&pb) == pb.mul(&pa);
        let meet = pb.mul(&pa) == sa.meet(&sb).projector();
        secs[5].push(Instance::check(id(""), commute && meet, || format!("S={sa} T={sb}")));

        // s -P?-> w, t not orthogonal to w  implies  t -P?-> v with v not orthogonal to s.
        let t = random::ray(&mut r, dim);
        let sa_ok = match s.apply(&proj) {
            Some(w) if !w.is_orthogonal(&t) => t.apply(&proj).is_some_and(|v| !v.is_orthogonal(&s)),
            _ => true,
        };
        secs[6].push(Instance::check(id(""), sa_ok, || format!("P={p} s={s} t={t}")));

        let t = partner(&mut r, &s);
        let w = if s.is_orthogonal(&t) {
            Ray::new(vec_add(s.amplitudes(), t.amplitudes())).ok()
        } else {
            Some(s.clone())
        };
        let sup_ok = w.as_ref().is_some_and(|w| !w.is_orthogonal(&s) && !w.is_orthogonal(&t));
        secs[7].push(Instance::check(id(""), sup_ok, || format!("s={s} t={t} w={w:?}")));

        let word = random::gate_word(&mut r, n, 6);
        let u = PartialMap::new(word_map(n, &word));
        let ud = u.adjoint();
        let back = u.apply(&s).and_then(|x| ud.apply(&x));
        let fwd = ud.apply(&s).and_then(|x| u.apply(&x));
        let rev_ok = u.is_scaled_unitary() && back.as_ref() == Some(&s) && fwd.as_ref() == Some(&s);
        secs[8].push(Instance::check(id(&format!(" {word}")), rev_ok, || format!("s={s}")));

        let t = partner(&mut r, &s);
        let (us, ut) = (u.apply(&s).expect("unitary"), u.apply(&t).expect("unitary"));
        let pres = s.is_orthogonal(&t) == us.is_orthogonal(&ut);
        secs[9].push(Instance::check(id(&format!(" {word}")), pres, || format!("s={s} t={t}")));
    }
    let mut rep = Report::new("frame", seed);
    for s in secs {
        rep.section(s, true);
    }
    rep
}

/// `s ⊥ F†t iff t ⊥ Fs`, and `F†(s) = ([F]s^⊥)^⊥`, on random 4×4 maps.
pub fn adjointness(seed: u64, k: usize) -> Report {
    let mut r = random::rng(seed ^ 0xad);
    let f2 = Frame::new(2);
    let mut orth = Section::new("adjointness");
    let mut dual = Section::new("adjoint as dual of weakest precondition");
    for i in 0..k {
        let f = random_map(&mut r, 4);
        let fd = f.conj_transpose();
        let s = random::ray(&mut r, 4);
        let t = match s.apply(&f) {
            Some(fs) => partner(&mut r, &fs),
            None => random::ray(&mut r, 4),
        };
        let lhs = perp_or_undefined(&s, t.apply(&fd));
        let rhs = perp_or_undefined(&t, s.apply(&f));
        orth.push(Instance::check(format!("#{i}"), lhs == rhs, || format!("F={f} s={s} t={t}")));

        let want = s.apply(&fd).map_or_else(|| Subspace::zero(4), |v| v.as_subspace());
        let got = Region::from_subspace(f2, s.as_subspace().ortho())
            .wp_map(&f)
            .and_then(|w| w.ortho());
        dual.push(Instance::check(format!("#{i}"), got.as_ref() == Ok(&want), || {
            format!("F={f} s={s}: got {got:?}, want {want}")
        }));
    }
    let mut rep = Report::new("frame", seed);
    rep.section(orth, true);
    rep.section(dual, true);
    rep
}

fn random_action(r: &mut ChaCha8Rng, dim: usize) -> Vec<Matrix> {
    (0..r.random_range(1..=3)).map(|_| random_map(r, dim)).collect()
}

fn same_maps(a: &[Matrix], b: &[Matrix]) -> bool {
    a.len() == b.len() && a.iter().all(|m| b.contains(m)) && b.iter().all(|m| a.contains(m))
}

/// Adjoint laws for finite unions of maps, adjoints taken branchwise.
pub fn adjoint_properties(seed: u64, k: usize) -> Report {
    let mut r = random::rng(seed ^ 0x77);
    let f2 = Frame::new(2);
    let names = ["adjoint is a quantum action", "agrees with Hermitian adjoint", "orthogonality", "composition", "strongest postcondition"];
    let mut secs: Vec<Section> = names.iter().map(|n| Section::new(*n)).collect();
    let adj = |a: &[Matrix]| -> Vec<Matrix> { a.iter().map(Matrix::conj_transpose).collect() };
    for i in 0..k {
        let id = format!("#{i}");
        let rr = random_action(&mut r, 4);
        let zz = random_action(&mut r, 4);
        let rd = adj(&rr);

        // R† is again linear on each branch, and taking it twice returns R.
        secs[0].push(Instance::check(id.clone(), same_maps(&adj(&rd), &rr), || "R†† differs from R".into()));

        // Relational adjoint of a single map: t ∈ R†(s) iff t ⊥ [R]s^⊥, i.e. t spans ([F]s^⊥)^⊥.
        let s = random::ray(&mut r, 4);
        let via_wp = Region::from_subspace(f2, s.as_subspace().ortho())
            .wp_map(&rr[0])
            .and_then(|w| w.ortho());
        let herm = s.apply(&rd[0]).map_or_else(|| Subspace::zero(4), |v| v.as_subspace());
        secs[1].push(Instance::check(id.clone(), via_wp.as_ref() == Ok(&herm), || format!("got {via_wp:?}, want {herm}")));

        // s ⊥ R†(t) iff t ⊥ R(s), branchwise images.
        let t = random::ray(&mut r, 4);
        let l = rd.iter().all(|m| perp_or_undefined(&s, t.apply(m)));
        let rgt = rr.iter().all(|m| perp_or_undefined(&t, s.apply(m)));
        secs[2].push(Instance::check(id.clone(), l == rgt, || format!("s={s} t={t}")));

        let seq: Vec<Matrix> = rr.iter().flat_map(|a| zz.iter().map(move |b| b.mul(a))).collect();
        let rev: Vec<Matrix> = adj(&zz).iter().flat_map(|b| rd.iter().map(move |a| a.mul(b))).collect();
        secs[3].push(Instance::check(id.clone(), same_maps(&adj(&seq), &rev), || "(R;Z)† differs from Z†;R†".into()));

        let sset = random::subspace(&mut r, 4, 3);
        let post = rr.iter().fold(Subspace::zero(4), |acc, m| acc.join(&sset.image(m)));
        let pre = rd
            .iter()
            .map(|m| Region::from_subspace(f2, sset.ortho()).wp_map(m))
            .try_fold(Region::full(f2), |acc, w| w.map(|w| acc.intersect(&w)))
            .and_then(|w| w.ortho());
        secs[4].push(Instance::check(id, pre.as_ref() == Ok(&post), || format!("S={sset}: got {pre:?}, want {post}")));
    }
    let mut rep = Report::new("frame", seed);
    for s in secs {
        rep.section(s, true);
    }
    rep
}

/// Inserts an identity-acting word (up to phase) at a random position.
fn pad(r: &mut ChaCha8Rng, word: &Program, n: usize) -> Program {
    let q = r.random_range(1..=n);
    let g = |k| Program::gate(k, &[q]);
    let filler = match r.random_range(0..4) {
        0 => Program::seq(g(GateKind::H), g(GateKind::H)),
        1 => Program::seq_all(vec![g(GateKind::Z), g(GateKind::X), g(GateKind::Z), g(GateKind::X)]).expect("nonempty"),
        2 => Program::seq_all(vec![g(GateKind::H), g(GateKind::X), g(GateKind::H), g(GateKind::Z)]).expect("nonempty"),
        _ if n >= 2 => {
            let t = if q == 1 { 2 } else { 1 };
            let c = Program::gate(GateKind::Cnot, &[q, t]);
            Program::seq(c.clone(), c)
        }
        _ => Program::seq(g(GateKind::X), g(GateKind::X)),
    };
    if r.random_bool(0.5) {
        Program::seq(filler, word.clone())
    } else {
        Program::seq(word.clone(), filler)
    }
}

fn basic_rays(n: usize) -> Vec<Ray> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
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

/// Gate-word maps agreeing on `{0,1,+}^n` agree on `k` random rays; `a` pairs per `n ∈ {1,2,3}`.
pub fn basis_determinacy(seed: u64, a: usize, k: usize) -> Report {
    let mut r = random::rng(seed ^ 0x99);
    let mut sec = Section::new("basis determinacy");
    for n in 1..=3 {
        let dim = 1 << n;
        for i in 0..a {
            let w1 = random::gate_word(&mut r, n, 5);
            let mut w2 = pad(&mut r, &w1, n);
            if r.random_bool(0.5) {
                w2 = pad(&mut r, &w2, n);
            }
            let (m1, m2) = (word_map(n, &w1), word_map(n, &w2));
            let premise = basic_rays(n).iter().all(|s| s.apply(&m1) == s.apply(&m2));
            let mut bad = None;
            for _ in 0..k {
                let s = random::ray(&mut r, dim);
                if s.apply(&m1) != s.apply(&m2) {
                    bad = Some(s);
                    break;
                }
            }
            sec.push(Instance::check(format!("n={n} #{i} {w1} vs {w2}"), premise && bad.is_none(), || {
                if premise {
                    format!("differ on {}", bad.expect("set"))
                } else {
                    "differ on a basic ray".into()
                }
            }));
        }
    }
    let mut rep = Report::new("frame", seed);
    rep.section(sec, true);
    rep
}

/// Identity and `Z` agree on `0` and `1` but not on `+`.
pub fn phase_counterexample() -> Section {
    let f = Frame::new(1);
    let z = gate(&f, GateKind::Z, &[1]).expect("valid gate");
    let id = PartialMap::identity(2);
    let mut s = Section::new("phase");
    for b in [Basis::Zero, Basis::One] {
        let x = Ray::product(&[b]);
        s.push(Instance::check(format!("agree on {}", b.symbol()), z.apply(&x) == id.apply(&x), || "differ".into()));
    }
    let one = Basis::One.vector();
    s.push(Instance::check(
        "vectors differ only in phase on 1",
        z.matrix.mul_vec(&one) == vec_scale(&one, &C::from_int(-1)),
        || "Z|1> is not -|1>".into(),
    ));
    let plus = Ray::product(&[Basis::Plus]);
    s.push(Instance::check("differ on +", z.apply(&plus) != id.apply(&plus), || "agree".into()));
    s
}
