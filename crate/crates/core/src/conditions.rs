//! Reducibility tests for generalized permutations.
//!
//! Positions in witnesses are 1-based absolute positions: top slots are
//! `1..=r` and bottom slots are `r+1..=r+l`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::genperm::{GeneralizedPermutation, Letter, Row};

/// A cut `(i0, j0)` exhibiting weak reducibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakSplit {
    pub i0: usize,
    pub j0: usize,
    pub bullet: u8,
}

/// A decomposition of the rows exhibiting a violation of condition Red.
///
/// With `swapped` set, the lists refer to the permutation with its rows
/// exchanged. Each list is a half-open range of 0-based slots in its row;
/// `zero` is the bottom-doubled letter framing `y2_mid`.
///
/// `y1_first` and `y1_last` are never empty: the vertical ray they frame
/// would otherwise leave the seam endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedDecomposition {
    pub swapped: bool,
    pub zero: Letter,
    pub y1_first: (usize, usize),
    pub y1_mid: (usize, usize),
    pub y1_last: (usize, usize),
    pub y2_first: (usize, usize),
    pub y2_mid: (usize, usize),
    pub y2_last: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum WeakVerdict {
    Reducible { witness: WeakSplit },
    Irreducible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RedVerdict {
    Satisfied,
    Violated { decomposition: RedDecomposition },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible,
    FailsWeak { witness: WeakSplit },
    FailsRed { decomposition: RedDecomposition },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

impl fmt::Display for WeakVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeakVerdict::Reducible { witness: w } => {
                write!(f, "Reducible i0={} j0={} bullet={}", w.i0, w.j0, w.bullet)
            }
            WeakVerdict::Irreducible => f.write_str("Irreducible"),
        }
    }
}

impl fmt::Display for RedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RedVerdict::Satisfied => f.write_str("Satisfied"),
            RedVerdict::Violated { .. } => f.write_str("Violated"),
        }
    }
}

impl fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irreducibility::Irreducible => f.write_str("Irreducible"),
            Irreducibility::FailsWeak { witness: w } => {
                write!(f, "FailsWeak i0={} j0={} bullet={}", w.i0, w.j0, w.bullet)
            }
            Irreducibility::FailsRed { .. } => f.write_str("FailsRed"),
        }
    }
}

/// Searches every cut `(i0, j0)` in lexicographic order.
///
/// A cut splits the suspension along a vertical segment of length one for
/// every admissible vector exactly when the prefix count vector
/// `c = (top prefix count - bottom prefix count)` equals `t * b` for
/// `t ∈ {0, 1/2, 1}`, where `b` is the balance vector. The value `t = 1/2`
/// corresponds to the second bullet of the definition.
pub fn weak_reducibility(gp: &GeneralizedPermutation) -> WeakVerdict {
    let (r, l) = gp.kind();
    let balance = gp.balance();
    let k = gp.letter_count();
    let mut top_prefix = vec![0i64; k];
    for i0 in 1..r {
        top_prefix[gp.top()[i0 - 1] as usize] += 1;
        let mut c = top_prefix.clone();
        for jb in 1..l {
            c[gp.bottom()[jb - 1] as usize] -= 1;
            let zero = c.iter().all(|&x| x == 0);
            let full = c.iter().zip(&balance).all(|(&x, &b)| x == b);
            let half = c.iter().zip(&balance).all(|(&x, &b)| 2 * x == b);
            if zero || full || half {
                let bullet = if half && !zero { 2 } else { 1 };
                return WeakVerdict::Reducible { witness: WeakSplit { i0, j0: r + jb, bullet } };
            }
        }
    }
    WeakVerdict::Irreducible
}

impl WeakSplit {
    /// Re-checks the witness against the set-theoretic statement of its bullet.
    pub fn holds(&self, gp: &GeneralizedPermutation) -> bool {
        let (r, l) = gp.kind();
        let p = r + l;
        if self.i0 < 1 || self.i0 >= r || self.j0 <= r || self.j0 >= p {
            return false;
        }
        let inv = gp.involution();
        let image = |range: std::ops::Range<usize>| {
            let mut v: Vec<usize> = range.map(|i| inv[i]).collect();
            v.sort_unstable();
            v
        };
        let (i0, j0) = (self.i0, self.j0);
        match self.bullet {
            1 => image(0..i0) == (r..j0).collect::<Vec<_>>() || image(i0..r) == (j0..p).collect::<Vec<_>>(),
            2 => (0..p).all(|pos| {
                let q = inv[pos];
                let (lo, hi) = (pos.min(q), pos.max(q));
                match (gp.row_of(lo), gp.row_of(hi)) {
                    (Row::Top, Row::Top) => lo < i0 && hi >= i0,
                    (Row::Bottom, Row::Bottom) => lo < j0 && hi >= j0,
                    _ => (lo < i0) == (hi < j0),
                }
            }),
            _ => false,
        }
    }
}

/// Searches for a decomposition violating condition Red, first on the
/// permutation itself and then with the rows exchanged.
pub fn red_condition(gp: &GeneralizedPermutation) -> RedVerdict {
    for swapped in [false, true] {
        let g = if swapped { gp.swap_rows() } else { gp.clone() };
        if let Some(mut d) = red_search(&g) {
            d.swapped = swapped;
            if swapped {
                d.zero = gp.letter_named(g.name(d.zero)).expect("same letters");
            }
            return RedVerdict::Violated { decomposition: d };
        }
    }
    RedVerdict::Satisfied
}

fn red_search(gp: &GeneralizedPermutation) -> Option<RedDecomposition> {
    let (r, l) = gp.kind();
    let occ = gp.occurrences();
    for zero in gp.bottom_pairs() {
        let [p0, p1] = occ[zero as usize];
        let (j0, j1) = (p0 - r, p1 - r);
        for a in 1..r {
            for b in a..r {
                let d = RedDecomposition {
                    swapped: false,
                    zero,
                    y1_first: (0, a),
                    y1_mid: (a, b),
                    y1_last: (b, r),
                    y2_first: (0, j0),
                    y2_mid: (j0 + 1, j1),
                    y2_last: (j1 + 1, l),
                };
                if implications_hold(gp, &d) {
                    return Some(d);
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    TopFirst,
    TopMid,
    TopLast,
    BottomFirst,
    BottomMid,
    BottomLast,
    Zero,
}

fn parts(gp: &GeneralizedPermutation, d: &RedDecomposition) -> Vec<Part> {
    let r = gp.r();
    let within = |x: usize, (lo, hi): (usize, usize)| lo <= x && x < hi;
    (0..gp.size())
        .map(|pos| {
            if pos < r {
                if within(pos, d.y1_first) {
                    Part::TopFirst
                } else if within(pos, d.y1_mid) {
                    Part::TopMid
                } else {
                    Part::TopLast
                }
            } else {
                let j = pos - r;
                if within(j, d.y2_first) {
                    Part::BottomFirst
                } else if within(j, d.y2_mid) {
                    Part::BottomMid
                } else if within(j, d.y2_last) {
                    Part::BottomLast
                } else {
                    Part::Zero
                }
            }
        })
        .collect()
}

/// The membership implications of the decomposition: where the partner of
/// each occurrence is allowed to sit.
fn implications_hold(gp: &GeneralizedPermutation, d: &RedDecomposition) -> bool {
    use Part::*;
    let part = parts(gp, d);
    let inv = gp.involution();
    (0..gp.size()).all(|pos| {
        let target = part[inv[pos]];
        match part[pos] {
            TopFirst => matches!(target, TopLast | BottomFirst),
            TopMid => matches!(target, TopMid | BottomMid),
            TopLast => matches!(target, TopFirst | BottomLast),
            BottomFirst => matches!(target, BottomLast | TopFirst),
            BottomMid => matches!(target, BottomMid | TopMid),
            BottomLast => matches!(target, BottomFirst | TopLast),
            Zero => target == Zero,
        }
    })
}

impl RedDecomposition {
    /// Re-checks the decomposition through the linear identity it encodes:
    /// weighting the occurrences by 2, 1, 0 on the top lists, -2, -1, 0 on the
    /// bottom lists and -1 on each zero must reproduce the balance of every
    /// letter.
    pub fn holds(&self, gp: &GeneralizedPermutation) -> bool {
        let g = if self.swapped { gp.swap_rows() } else { gp.clone() };
        let zero = if self.swapped {
            match g.letter_named(gp.name(self.zero)) {
                Some(z) => z,
                None => return false,
            }
        } else {
            self.zero
        };
        let (r, l) = g.kind();
        let occ = g.occurrences();
        let [p0, p1] = occ[zero as usize];
        if p0 < r || p1 < r {
            return false;
        }
        let contiguous = |a: (usize, usize), b: (usize, usize), c: (usize, usize), end: usize| {
            a.0 == 0 && a.1 == b.0 && b.1 == c.0 && c.1 == end && a.0 <= a.1 && b.0 <= b.1
        };
        if !contiguous(self.y1_first, self.y1_mid, self.y1_last, r) || self.y1_first.1 == 0 || self.y1_last.0 == r {
            return false;
        }
        if self.y2_first != (0, p0 - r) || self.y2_mid != (p0 - r + 1, p1 - r) || self.y2_last != (p1 - r + 1, l) {
            return false;
        }
        let d = RedDecomposition { zero, ..self.clone() };
        let weight = |p: Part| match p {
            Part::TopFirst => 2,
            Part::TopMid => 1,
            Part::TopLast => 0,
            Part::BottomFirst => -2,
            Part::BottomMid | Part::Zero => -1,
            Part::BottomLast => 0,
        };
        let mut total = vec![0i64; g.letter_count()];
        for (pos, p) in parts(&g, &d).into_iter().enumerate() {
            total[g.at(pos) as usize] += weight(p);
        }
        total == g.balance()
    }

    /// The letters of each list, in row order, as tokens of `gp`.
    pub fn lists(&self, gp: &GeneralizedPermutation) -> [Vec<String>; 6] {
        let g = if self.swapped { gp.swap_rows() } else { gp.clone() };
        let pick = |row: &[Letter], (a, b): (usize, usize)| row[a..b].iter().map(|&x| g.name(x).to_string()).collect();
        [
            pick(g.top(), self.y1_first),
            pick(g.top(), self.y1_mid),
            pick(g.top(), self.y1_last),
            pick(g.bottom(), self.y2_first),
            pick(g.bottom(), self.y2_mid),
            pick(g.bottom(), self.y2_last),
        ]
    }
}

/// Exactly one letter is doubled on the top row and exactly one on the bottom.
pub fn condition_star(gp: &GeneralizedPermutation) -> bool {
    gp.top_pairs().len() == 1 && gp.bottom_pairs().len() == 1
}

pub fn is_irreducible(gp: &GeneralizedPermutation) -> Irreducibility {
    if let WeakVerdict::Reducible { witness } = weak_reducibility(gp) {
        return Irreducibility::FailsWeak { witness };
    }
    match red_condition(gp) {
        RedVerdict::Satisfied => Irreducibility::Irreducible,
        RedVerdict::Violated { decomposition } => Irreducibility::FailsRed { decomposition },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> GeneralizedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_weak_example() {
        let p = gp("1 2 3 4 3 5 / 6 1 2 6 5 4");
        let WeakVerdict::Reducible { witness } = weak_reducibility(&p) else { panic!("expected reducible") };
        assert_eq!(witness, WeakSplit { i0: 3, j0: 9, bullet: 2 });
        assert!(witness.holds(&p));
    }

    #[test]
    fn pillowcase_is_weakly_reducible() {
        let p = gp("1 1 / 2 2");
        let WeakVerdict::Reducible { witness } = weak_reducibility(&p) else { panic!("expected reducible") };
        assert_eq!((witness.i0, witness.j0), (1, 3));
        assert!(witness.holds(&p));
    }

    #[test]
    fn appendix_contraction_is_irreducible() {
        let p = gp("0 1 2 3 4 0 / 1 4 5 3 5 2");
        assert_eq!(weak_reducibility(&p), WeakVerdict::Irreducible);
        assert_eq!(is_irreducible(&p), Irreducibility::Irreducible);
    }

    #[test]
    fn red_examples() {
        let p = gp("1 2 2 3 3 1 / 0 0");
        let RedVerdict::Violated { decomposition: d } = red_condition(&p) else { panic!("expected violation") };
        assert!(d.holds(&p));
        let [a, b, c, x, y, z] = d.lists(&p);
        assert_eq!(a, ["1"]);
        assert_eq!(b, ["2", "2", "3", "3"]);
        assert_eq!(c, ["1"]);
        assert!(x.is_empty() && y.is_empty() && z.is_empty());
        assert!(matches!(is_irreducible(&p), Irreducibility::FailsRed { .. }));
        assert_eq!(red_condition(&gp("1 2 3 4 3 5 4 / 6 6 1 5 2")), RedVerdict::Satisfied);
    }

    #[test]
    fn star_condition() {
        assert!(condition_star(&gp("0_1 1 0_1 2 / 2 0_2 1 0_2")));
        assert!(condition_star(&gp("5 3 5 2 4 / 1 2 1 3 4")));
        assert!(!condition_star(&gp("5 2 5 3 4 2 / 1 3 1 4")));
    }

    #[test]
    fn broken_witnesses_are_rejected() {
        let p = gp("1 2 3 4 3 5 / 6 1 2 6 5 4");
        assert!(!WeakSplit { i0: 2, j0: 9, bullet: 2 }.holds(&p));
        assert!(!WeakSplit { i0: 3, j0: 9, bullet: 1 }.holds(&p));
        let q = gp("1 2 2 3 3 1 / 0 0");
        let RedVerdict::Violated { decomposition: mut d } = red_condition(&q) else { panic!() };
        d.y1_first = (0, 2);
        d.y1_mid = (2, 5);
        assert!(!d.holds(&q));
    }
}
