//! Generalized permutations: two rows of letters in which every letter occurs
//! exactly twice.
//!
//! Letters are stored as dense ids `0..k` numbered by first appearance, reading
//! the top row and then the bottom row. The original token of every letter is
//! kept so that rendering reproduces the input text.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense letter id, `0..letter_count()`.
pub type Letter = u32;

/// Which row a position lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Row {
    Top,
    Bottom,
}

/// A generalized permutation of type `(r, l)`.
///
/// Positions are numbered `0..r` on the top row and `r..r + l` on the bottom row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedPermutation {
    top: Vec<Letter>,
    bottom: Vec<Letter>,
    names: Vec<String>,
}

impl GeneralizedPermutation {
    /// Builds a permutation from two rows of tokens.
    pub fn from_tokens<S: AsRef<str>>(top: &[S], bottom: &[S]) -> Result<Self> {
        if top.is_empty() || bottom.is_empty() {
            return Err(Error::EmptyRow);
        }
        let mut ids: HashMap<String, Letter> = HashMap::new();
        let mut names: Vec<String> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        let mut encode = |row: &[S]| -> Vec<Letter> {
            row.iter()
                .map(|tok| {
                    let tok = tok.as_ref();
                    let id = match ids.get(tok) {
                        Some(&id) => id,
                        None => {
                            let id = names.len() as Letter;
                            ids.insert(tok.to_string(), id);
                            names.push(tok.to_string());
                            counts.push(0);
                            id
                        }
                    };
                    counts[id as usize] += 1;
                    id
                })
                .collect()
        };
        let t = encode(top);
        let b = encode(bottom);
        if let Some((id, &count)) = counts.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(Error::LetterCount { letter: names[id].clone(), count });
        }
        Ok(GeneralizedPermutation { top: t, bottom: b, names })
    }

    /// Builds a permutation from numeric rows; the letters are renamed `1..k`
    /// by first appearance.
    pub fn from_ids(top: &[Letter], bottom: &[Letter]) -> Result<Self> {
        let gp = Self::from_tokens(
            &top.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            &bottom.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        )?;
        Ok(gp.relabeled())
    }

    /// Parses the textual form: two rows separated by `/` or a newline,
    /// whitespace-separated tokens.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let rows: Vec<&str> = if text.contains('/') {
            text.split('/').collect()
        } else {
            text.lines().filter(|line| !line.trim().is_empty()).collect()
        };
        if rows.len() != 2 {
            return Err(Error::MalformedText(format!(
                "expected two rows separated by '/' or a newline, found {}",
                rows.len()
            )));
        }
        let top: Vec<&str> = rows[0].split_whitespace().collect();
        let bottom: Vec<&str> = rows[1].split_whitespace().collect();
        Self::from_tokens(&top, &bottom)
    }

    /// Rebuilds from letter rows that may not be in first-appearance order.
    fn normalized(top: &[Letter], bottom: &[Letter], names: &[String]) -> Self {
        let mut map = vec![Letter::MAX; names.len()];
        let mut new_names = Vec::with_capacity(names.len());
        let mut assign = |x: Letter| -> Letter {
            let slot = &mut map[x as usize];
            if *slot == Letter::MAX {
                *slot = new_names.len() as Letter;
                new_names.push(names[x as usize].clone());
            }
            *slot
        };
        let t: Vec<Letter> = top.iter().map(|&x| assign(x)).collect();
        let b: Vec<Letter> = bottom.iter().map(|&x| assign(x)).collect();
        GeneralizedPermutation { top: t, bottom: b, names: new_names }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn top(&self) -> &[Letter] {
        &self.top
    }

    pub fn bottom(&self) -> &[Letter] {
        &self.bottom
    }

    pub fn r(&self) -> usize {
        self.top.len()
    }

    pub fn l(&self) -> usize {
        self.bottom.len()
    }

    /// Total number of positions `r + l`.
    pub fn size(&self) -> usize {
        self.top.len() + self.bottom.len()
    }

    pub fn kind(&self) -> (usize, usize) {
        (self.r(), self.l())
    }

    pub fn letter_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks a letter up by its token.
    pub fn letter_named(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|i| i as Letter)
    }

    /// Letter at an absolute position.
    pub fn at(&self, pos: usize) -> Letter {
        if pos < self.r() {
            self.top[pos]
        } else {
            self.bottom[pos - self.r()]
        }
    }

    pub fn row_of(&self, pos: usize) -> Row {
        if pos < self.r() {
            Row::Top
        } else {
            Row::Bottom
        }
    }

    /// The two absolute positions of every letter, in increasing order.
    pub fn occurrences(&self) -> Vec<[usize; 2]> {
        let mut occ = vec![[usize::MAX; 2]; self.letter_count()];
        for pos in 0..self.size() {
            let slot = &mut occ[self.at(pos) as usize];
            if slot[0] == usize::MAX {
                slot[0] = pos;
            } else {
                slot[1] = pos;
            }
        }
        occ
    }

    /// The position involution pairing the two occurrences of each letter.
    pub fn involution(&self) -> Vec<usize> {
        let mut inv = vec![0; self.size()];
        for [a, b] in self.occurrences() {
            inv[a] = b;
            inv[b] = a;
        }
        inv
    }

    /// Occurrences on the top row minus occurrences on the bottom row.
    pub fn balance(&self) -> Vec<i64> {
        let mut b = vec![0i64; self.letter_count()];
        for &x in &self.top {
            b[x as usize] += 1;
        }
        for &x in &self.bottom {
            b[x as usize] -= 1;
        }
        b
    }

    /// Letters with both occurrences on the top row.
    pub fn top_pairs(&self) -> Vec<Letter> {
        let bal = self.balance();
        (0..self.letter_count() as Letter).filter(|&x| bal[x as usize] == 2).collect()
    }

    /// Letters with both occurrences on the bottom row.
    pub fn bottom_pairs(&self) -> Vec<Letter> {
        let bal = self.balance();
        (0..self.letter_count() as Letter).filter(|&x| bal[x as usize] == -2).collect()
    }

    /// True when every letter has one occurrence per row, so the suspension
    /// is a translation surface.
    pub fn is_abelian(&self) -> bool {
        self.balance().iter().all(|&b| b == 0)
    }

    /// True when some letter is doubled on the top row and some letter is
    /// doubled on the bottom row.
    pub fn has_pairs_on_both_rows(&self) -> bool {
        let bal = self.balance();
        bal.contains(&2) && bal.contains(&-2)
    }

    /// Rotates the top row left by `i` and the bottom row left by `j`.
    pub fn rotate(&self, i: usize, j: usize) -> Self {
        let mut t = self.top.clone();
        t.rotate_left(i % self.r());
        let mut b = self.bottom.clone();
        b.rotate_left(j % self.l());
        Self::normalized(&t, &b, &self.names)
    }

    /// All `r * l` independent cyclic rotations, the identity first.
    pub fn rotations(&self) -> impl Iterator<Item = GeneralizedPermutation> + '_ {
        let l = self.l();
        (0..self.r() * l).map(move |n| self.rotate(n / l, n % l))
    }

    pub fn swap_rows(&self) -> Self {
        Self::normalized(&self.bottom, &self.top, &self.names)
    }

    pub fn reverse_rows(&self) -> Self {
        let t: Vec<Letter> = self.top.iter().rev().copied().collect();
        let b: Vec<Letter> = self.bottom.iter().rev().copied().collect();
        Self::normalized(&t, &b, &self.names)
    }

    /// Replaces every token by its id `1..k`.
    pub fn relabeled(&self) -> Self {
        GeneralizedPermutation {
            top: self.top.clone(),
            bottom: self.bottom.clone(),
            names: (1..=self.letter_count()).map(|i| i.to_string()).collect(),
        }
    }

    /// Deletes a letter heading both rows.
    pub fn restrict(&self) -> Result<Self> {
        if self.top[0] != self.bottom[0] {
            return Err(Error::NotRestrictable(format!(
                "rows start with different letters `{}` and `{}`",
                self.name(self.top[0]),
                self.name(self.bottom[0])
            )));
        }
        if self.r() == 1 || self.l() == 1 {
            return Err(Error::NotRestrictable("a row would become empty".into()));
        }
        Ok(Self::normalized(&self.top[1..], &self.bottom[1..], &self.names))
    }

    /// Adds a fresh letter at the head of both rows.
    pub fn prepend_shared_head(&self) -> Self {
        let fresh = (0..)
            .map(|i: usize| i.to_string())
            .find(|c| !self.names.contains(c))
            .expect("unbounded candidate list");
        let id = self.letter_count() as Letter;
        let mut names = self.names.clone();
        names.push(fresh);
        let mut t = vec![id];
        t.extend_from_slice(&self.top);
        let mut b = vec![id];
        b.extend_from_slice(&self.bottom);
        Self::normalized(&t, &b, &names)
    }

    /// Dense key of the relabeled permutation: top ids, a `0` separator, then
    /// bottom ids, all ids starting at 1.
    fn key_of(top: impl Iterator<Item = Letter>, bottom: impl Iterator<Item = Letter>, k: usize, out: &mut Vec<Letter>) {
        out.clear();
        let mut map = vec![0 as Letter; k];
        let mut next = 1;
        let mut push = |x: Letter, out: &mut Vec<Letter>| {
            let slot = &mut map[x as usize];
            if *slot == 0 {
                *slot = next;
                next += 1;
            }
            out.push(*slot);
        };
        for x in top {
            push(x, out);
        }
        out.push(0);
        for x in bottom {
            push(x, out);
        }
    }

    pub(crate) fn from_key(key: &[Letter]) -> Self {
        let sep = key.iter().position(|&x| x == 0).expect("key has a separator");
        let top = key[..sep].iter().map(|&x| x - 1).collect();
        let bottom = key[sep + 1..].iter().map(|&x| x - 1).collect();
        let k = (key.len() - 1) / 2;
        GeneralizedPermutation { top, bottom, names: (1..=k).map(|i| i.to_string()).collect() }
    }

    /// Minimal relabeled key over the orbit of `sym`.
    pub fn canonical_key(&self, sym: SymmetryGroup) -> Vec<Letter> {
        let k = self.letter_count();
        let mut best: Option<Vec<Letter>> = None;
        let mut buf = Vec::with_capacity(self.size() + 1);
        let swaps: &[bool] = if sym.swap_rows { &[false, true] } else { &[false] };
        let reversals: &[bool] = if sym.reverse_rows { &[false, true] } else { &[false] };
        for &sw in swaps {
            let (a, b) = if sw { (&self.bottom, &self.top) } else { (&self.top, &self.bottom) };
            for &rev in reversals {
                let (ra, rb) = if sym.rotate_rows { (a.len(), b.len()) } else { (1, 1) };
                for i in 0..ra {
                    for j in 0..rb {
                        let ta = a.iter().cycle().skip(i).take(a.len());
                        let tb = b.iter().cycle().skip(j).take(b.len());
                        if rev {
                            let ta: Vec<Letter> = ta.copied().collect();
                            let tb: Vec<Letter> = tb.copied().collect();
                            Self::key_of(ta.into_iter().rev(), tb.into_iter().rev(), k, &mut buf);
                        } else {
                            Self::key_of(ta.copied(), tb.copied(), k, &mut buf);
                        }
                        if best.as_ref().is_none_or(|cur| buf < *cur) {
                            best = Some(buf.clone());
                        }
                    }
                }
            }
        }
        best.expect("orbit is never empty")
    }

    /// Lexicographically least relabeled element of the orbit under `sym`.
    pub fn canonical_form(&self, sym: SymmetryGroup) -> Self {
        Self::from_key(&self.canonical_key(sym))
    }

    pub fn equivalent(&self, other: &Self, sym: SymmetryGroup) -> bool {
        self.letter_count() == other.letter_count() && self.canonical_key(sym) == other.canonical_key(sym)
    }
}

impl fmt::Display for GeneralizedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[Letter]| r.iter().map(|&x| self.name(x)).collect::<Vec<_>>().join(" ");
        write!(f, "{} / {}", row(&self.top), row(&self.bottom))
    }
}

impl fmt::Debug for GeneralizedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneralizedPermutation({self})")
    }
}

impl FromStr for GeneralizedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for GeneralizedPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for GeneralizedPermutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Self::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// The group used to identify permutations. Relabeling is always included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetryGroup {
    pub rotate_rows: bool,
    pub swap_rows: bool,
    pub reverse_rows: bool,
}

impl Default for SymmetryGroup {
    /// Rotations of both rows together with the row exchange. This is the
    /// group that reproduces the published class counts for `Q(8)`.
    fn default() -> Self {
        SymmetryGroup { rotate_rows: true, swap_rows: true, reverse_rows: false }
    }
}

impl SymmetryGroup {
    pub const RELABEL_ONLY: SymmetryGroup =
        SymmetryGroup { rotate_rows: false, swap_rows: false, reverse_rows: false };
    pub const ROTATE: SymmetryGroup = SymmetryGroup { rotate_rows: true, swap_rows: false, reverse_rows: false };
}

impl fmt::Display for SymmetryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec!["relabel"];
        if self.rotate_rows {
            parts.push("rotate");
        }
        if self.swap_rows {
            parts.push("swap");
        }
        if self.reverse_rows {
            parts.push("reverse");
        }
        f.write_str(&parts.join(","))
    }
}

impl FromStr for SymmetryGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut sym = SymmetryGroup::RELABEL_ONLY;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "relabel" => {}
                "rotate" => sym.rotate_rows = true,
                "swap" => sym.swap_rows = true,
                "reverse" => sym.reverse_rows = true,
                other => return Err(Error::BadParameters(format!("unknown symmetry flag `{other}`"))),
            }
        }
        Ok(sym)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> GeneralizedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn parses_the_example_table() {
        let p = gp("1 2 3 4 3 5 4 / 6 6 1 5 2");
        assert_eq!(p.kind(), (7, 5));
        assert_eq!(p.letter_count(), 6);
        assert_eq!(p.render(), "1 2 3 4 3 5 4 / 6 6 1 5 2");
    }

    #[test]
    fn parses_newline_separated_rows() {
        assert_eq!(gp("1 2\n2 1"), gp("1 2 / 2 1"));
        assert_eq!(gp("1 2 / 2 1").kind(), (2, 2));
    }

    #[test]
    fn rejects_bad_text() {
        assert!(matches!(GeneralizedPermutation::parse("1 1 / 2"), Err(Error::LetterCount { .. })));
        assert!(matches!(GeneralizedPermutation::parse("1 1"), Err(Error::MalformedText(_))));
        assert!(matches!(GeneralizedPermutation::parse("1 / 2 / 3"), Err(Error::MalformedText(_))));
        assert_eq!(GeneralizedPermutation::parse(" / 1 1"), Err(Error::EmptyRow));
    }

    #[test]
    fn relabels_by_first_appearance() {
        assert_eq!(gp("7 7 3 / 3 9 9").relabeled().render(), "1 1 2 / 2 3 3");
        assert_eq!(gp("1 1 / 2 2").render(), "1 1 / 2 2");
    }

    #[test]
    fn subscripted_tokens_are_distinct() {
        let p = gp("0_1 1 0_1 2 / 2 0_2 1 0_2");
        assert_eq!(p.letter_count(), 4);
        assert!(!p.is_abelian());
    }

    #[test]
    fn abelian_detection() {
        assert!(gp("1 2 / 2 1").is_abelian());
        assert!(!gp("1 2 3 4 3 5 4 / 6 6 1 5 2").is_abelian());
    }

    #[test]
    fn rotations_cover_the_torus_of_shifts() {
        let p = gp("1 2 3 4 3 5 4 / 6 6 1 5 2");
        let rots: Vec<_> = p.rotations().collect();
        assert_eq!(rots.len(), 35);
        assert_eq!(rots[0], p);
        let shifted = gp("1 2 3 4 3 5 4 / 1 5 2 6 6");
        assert!(rots.iter().any(|q| q.equivalent(&shifted, SymmetryGroup::RELABEL_ONLY)));
        assert!(p.equivalent(&shifted, SymmetryGroup::ROTATE));
    }

    #[test]
    fn pillowcase_rotations_agree() {
        let p = gp("1 1 / 2 2");
        let rots: Vec<_> = p.rotations().map(|q| q.relabeled()).collect();
        assert_eq!(rots.len(), 4);
        assert!(rots.iter().all(|q| *q == rots[0]));
    }

    #[test]
    fn restrict_and_prepend() {
        assert_eq!(gp("0 1 2 / 0 2 1").restrict().unwrap(), gp("1 2 / 2 1"));
        assert!(matches!(gp("1 2 / 2 1").restrict(), Err(Error::NotRestrictable(_))));
        let s = gp("3 4 5 6 5 1 2 / 3 7 2 6 1 4 7").restrict().unwrap();
        assert_eq!(s.kind(), (6, 6));
        let p = gp("1 2 / 2 1");
        assert_eq!(p.prepend_shared_head().render(), "0 1 2 / 0 2 1");
        assert_eq!(p.prepend_shared_head().restrict().unwrap(), p);
    }

    #[test]
    fn swap_is_an_involution() {
        let p = gp("1 1 2 / 3 2 3");
        assert_eq!(p.swap_rows().render(), "3 2 3 / 1 1 2");
        assert_eq!(p.swap_rows().swap_rows(), p);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let p = gp("5 3 5 2 4 / 1 2 1 3 4");
        for sym in [SymmetryGroup::ROTATE, SymmetryGroup::default()] {
            let c = p.canonical_form(sym);
            assert_eq!(c.canonical_form(sym), c);
            assert!(c.equivalent(&p, sym));
        }
    }

    #[test]
    fn symmetry_flags_round_trip() {
        let sym: SymmetryGroup = "relabel,rotate,swap".parse().unwrap();
        assert_eq!(sym, SymmetryGroup::default());
        assert_eq!(sym.to_string(), "relabel,rotate,swap");
        assert!("relabel,spin".parse::<SymmetryGroup>().is_err());
    }

    #[test]
    fn involution_has_no_fixed_point() {
        let p = gp("1 2 3 4 3 5 4 / 6 6 1 5 2");
        let inv = p.involution();
        for (i, &j) in inv.iter().enumerate() {
            assert_ne!(i, j);
            assert_eq!(inv[j], i);
            assert_eq!(p.at(i), p.at(j));
        }
    }
}
