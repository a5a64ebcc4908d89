//! Gate tables and the Bell characterization table.

use crate::checker::{Checker, Env};
use crate::qframe::{gate, Basis, Frame, GateKind, Ray};

use super::{formula, Instance, Section};

/// `|0 y⟩ + (-1)^x |1 ỹ⟩`.
pub fn bell_ray(x: u8, y: u8) -> Ray {
    let mut v = [0i64; 4];
    v[y as usize] = 1;
    v[2 + (1 - y as usize)] = if x == 1 { -1 } else { 1 };
    Ray::from_ints(&v).expect("nonzero")
}

fn sym(b: Basis) -> char {
    b.symbol()
}

pub fn gate_tables() -> Section {
    use Basis::{Minus, One, Plus, Zero};
    let mut s = Section::new("gate tables");
    let f1 = Frame::new(1);
    let single = [
        (GateKind::X, "X", [One, Zero, Plus]),
        (GateKind::Z, "Z", [Zero, One, Minus]),
        (GateKind::H, "H", [Plus, Minus, Zero]),
    ];
    for (kind, name, outs) in single {
        let g = gate(&f1, kind, &[1]).expect("valid gate");
        for (input, expect) in [Zero, One, Plus].into_iter().zip(outs) {
            let got = g.apply(&Ray::product(&[input]));
            let want = Ray::product(&[expect]);
            s.push(Instance::check(
                format!("{name}({})", sym(input)),
                got.as_ref() == Some(&want),
                || format!("got {got:?}, want {want}"),
            ));
        }
    }
    let f2 = Frame::new(2);
    let cnot = gate(&f2, GateKind::Cnot, &[1, 2]).expect("valid gate");
    let gamma = Ray::from_ints(&[1, 1, 1, 1]).expect("nonzero");
    let rows: [([Basis; 2], Ray); 9] = [
        ([Zero, Zero], Ray::product(&[Zero, Zero])),
        ([Zero, One], Ray::product(&[Zero, One])),
        ([Zero, Plus], Ray::product(&[Zero, Plus])),
        ([One, One], Ray::product(&[One, Zero])),
        ([One, Zero], Ray::product(&[One, One])),
        ([One, Plus], Ray::product(&[One, Plus])),
        ([Plus, Zero], bell_ray(0, 0)),
        ([Plus, One], bell_ray(0, 1)),
        ([Plus, Plus], gamma),
    ];
    for (input, want) in rows {
        let got = cnot.apply(&Ray::product(&input));
        s.push(Instance::check(
            format!("CNOT({}{})", sym(input[0]), sym(input[1])),
            got.as_ref() == Some(&want),
            || format!("got {got:?}, want {want}"),
        ));
    }
    s
}

/// `truth[r][c]`: whether Bell ray `r` satisfies formula `bell[c]`, indices `2x + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellTable {
    pub n: usize,
    pub truth: [[bool; 4]; 4],
}

impl BellTable {
    pub fn is_identity(&self) -> bool {
        (0..4).all(|r| (0..4).all(|c| self.truth[r][c] == (r == c)))
    }

    pub fn section(&self) -> Section {
        let mut s = Section::new(format!("bell table n={}", self.n));
        for r in 0..4 {
            for c in 0..4 {
                s.push(Instance::check(
                    format!("beta{}{} |= bell[{},{},1,2]", r / 2, r % 2, c / 2, c % 2),
                    self.truth[r][c] == (r == c),
                    || format!("got {}", self.truth[r][c]),
                ));
            }
        }
        s
    }
}

/// Bell rays on qubits 1,2, with `|+⟩` on any further qubits.
pub fn bell_table(n: usize) -> BellTable {
    let env = Env::new(Frame::new(n));
    let ck = Checker::new(&env);
    let mut truth = [[false; 4]; 4];
    for r in 0..4u8 {
        let mut amps = bell_ray(r / 2, r % 2).amplitudes().to_vec();
        for _ in 2..n {
            amps = crate::linalg::vec_kron(&amps, &Basis::Plus.vector());
        }
        let s = Ray::new(amps).expect("nonzero");
        for c in 0..4u8 {
            let f = ck
                .desugar(&formula(&format!("bell[{},{},1,2]", c / 2, c % 2)))
                .expect("desugars");
            truth[r as usize][c as usize] = ck.holds(&s, &f).expect("symbolic");
        }
    }
    BellTable { n, truth }
}
