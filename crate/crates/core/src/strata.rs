//! Singularity patterns and the named families of representatives.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genperm::{GeneralizedPermutation, Letter, SymmetryGroup};

/// Orders of the singularities of a quadratic differential together with the
/// genus and complex dimension of the stratum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SingularityPattern {
    pub orders: Vec<i64>,
    pub genus: u32,
    #[serde(rename = "dim")]
    pub dimension: u32,
}

impl SingularityPattern {
    /// Validates a multiset of orders and derives genus and dimension.
    pub fn new(mut orders: Vec<i64>) -> Result<Self> {
        orders.sort_unstable();
        let (genus, dimension) = stratum_info(&orders)?;
        Ok(SingularityPattern { orders, genus, dimension })
    }

    /// Number of cone points `n`.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// Sum of `k + 2` over all singularities, which is the number of positions
    /// of any one-cylinder permutation in the stratum.
    pub fn corner_count(&self) -> usize {
        self.orders.iter().map(|k| (k + 2) as usize).sum()
    }

    /// The same pattern with every order 0 entry removed.
    pub fn without_marked_points(&self) -> SingularityPattern {
        SingularityPattern::new(self.orders.iter().copied().filter(|&k| k != 0).collect())
            .expect("removing zeros keeps the pattern valid")
    }
}

impl fmt::Display for SingularityPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|k| k.to_string()).collect();
        write!(f, "Q({})", parts.join(","))
    }
}

impl FromStr for SingularityPattern {
    type Err = Error;

    /// Accepts `8`, `-1,5`, `{-1,5}` or `Q(-1,5)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('Q').trim_matches(|c| matches!(c, '(' | ')' | '{' | '}' | ' '));
        let orders = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| Error::BadPattern(format!("`{t}` is not an integer"))))
            .collect::<Result<Vec<_>>>()?;
        SingularityPattern::new(orders)
    }
}

/// Genus and dimension of `Q(k_1, ..., k_n)`.
pub fn stratum_info(orders: &[i64]) -> Result<(u32, u32)> {
    if let Some(k) = orders.iter().find(|&&k| k < -1) {
        return Err(Error::BadPattern(format!("order {k} is below -1")));
    }
    let sum: i64 = orders.iter().sum();
    if sum.rem_euclid(4) != 0 {
        return Err(Error::BadPattern(format!("sum of orders {sum} is not divisible by 4")));
    }
    let genus = sum / 4 + 1;
    if genus < 0 {
        return Err(Error::BadPattern(format!("sum of orders {sum} gives a negative genus")));
    }
    let dimension = 2 * genus + orders.len() as i64 - 2;
    if dimension < 0 {
        return Err(Error::BadPattern("negative dimension".into()));
    }
    Ok((genus as u32, dimension as u32))
}

/// A node of the corner complex: the endpoint of boundary intervals at the
/// start of top slot `i` or bottom slot `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Endpoint {
    Top(usize),
    Bottom(usize),
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(parent, a), find(parent, b));
    if a != b {
        parent[a.max(b)] = a.min(b);
    }
}

/// Groups the interval endpoints of the suspension into singularities.
///
/// Endpoints are indexed `0..r` for the top row and `r..r + l` for the bottom
/// row; the returned vector maps each endpoint to the smallest endpoint index
/// of its class.
pub fn endpoint_classes(gp: &GeneralizedPermutation) -> Vec<usize> {
    classes_of_rows(gp.top(), gp.bottom())
}

pub(crate) fn classes_of_rows(top: &[Letter], bottom: &[Letter]) -> Vec<usize> {
    let (r, l) = (top.len(), bottom.len());
    let node = |e: Endpoint| match e {
        Endpoint::Top(i) => i % r,
        Endpoint::Bottom(j) => r + j % l,
    };
    let left = |pos: usize| if pos < r { Endpoint::Top(pos) } else { Endpoint::Bottom(pos - r) };
    let right = |pos: usize| if pos < r { Endpoint::Top(pos + 1) } else { Endpoint::Bottom(pos - r + 1) };
    let k = (r + l) / 2;
    let mut first = vec![usize::MAX; k];
    let mut parent: Vec<usize> = (0..r + l).collect();
    for (pos, &x) in top.iter().chain(bottom).enumerate() {
        let a = first[x as usize];
        if a == usize::MAX {
            first[x as usize] = pos;
            continue;
        }
        if (a < r) == (pos < r) {
            union(&mut parent, node(left(a)), node(right(pos)));
            union(&mut parent, node(right(a)), node(left(pos)));
        } else {
            union(&mut parent, node(left(a)), node(left(pos)));
            union(&mut parent, node(right(a)), node(right(pos)));
        }
    }
    (0..r + l).map(|x| find(&mut parent, x)).collect()
}

/// Sorted singularity orders of raw rows.
pub(crate) fn orders_of_rows(top: &[Letter], bottom: &[Letter]) -> Vec<i64> {
    let classes = classes_of_rows(top, bottom);
    let mut sizes = vec![0i64; classes.len()];
    for &c in &classes {
        sizes[c] += 1;
    }
    let mut orders: Vec<i64> = sizes.into_iter().filter(|&c| c > 0).map(|c| c - 2).collect();
    orders.sort_unstable();
    orders
}

/// Orders of the cone points of any suspension over `gp`.
///
/// Each class of interval endpoints carries one corner of angle π per
/// endpoint, so a class of size `c` is a singularity of order `c - 2`.
pub fn singularity_pattern(gp: &GeneralizedPermutation) -> SingularityPattern {
    SingularityPattern::new(orders_of_rows(gp.top(), gp.bottom())).expect("the corner walk always yields a valid pattern")
}

/// The families of generalized permutations whose suspensions lie in
/// hyperelliptic components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HyperKind {
    Pi1,
    Pi2,
    Pi1a,
}

impl fmt::Display for HyperKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HyperKind::Pi1 => "Pi1",
            HyperKind::Pi2 => "Pi2",
            HyperKind::Pi1a => "Pi1a",
        })
    }
}

fn numbers(range: impl Iterator<Item = usize>) -> impl Iterator<Item = String> {
    range.map(|i| i.to_string())
}

/// Builds `Π1(r, l)`, `Π2(r, l)` or `Π1(r, l, a)` from its defining table.
///
/// `Π1` accepts `r, l ≥ 0`, `Π2` requires `r, l ≥ 1` and `Π1a` requires
/// `2 ≤ a ≤ r + 1`.
pub fn hyperelliptic_rep(kind: HyperKind, r: usize, l: usize, a: Option<usize>) -> Result<GeneralizedPermutation> {
    let z1 = || "0_1".to_string();
    let z2 = || "0_2".to_string();
    let z3 = || "0_3".to_string();
    let (top, bottom): (Vec<String>, Vec<String>) = match kind {
        HyperKind::Pi1 => {
            if a.is_some() {
                return Err(Error::BadParameters("Pi1 takes no third parameter".into()));
            }
            let top = std::iter::once(z1())
                .chain(numbers(1..=r))
                .chain(std::iter::once(z1()))
                .chain(numbers(r + 1..=r + l))
                .collect();
            let bottom = numbers((r + 1..=r + l).rev())
                .chain(std::iter::once(z2()))
                .chain(numbers((1..=r).rev()))
                .chain(std::iter::once(z2()))
                .collect();
            (top, bottom)
        }
        HyperKind::Pi2 => {
            if a.is_some() {
                return Err(Error::BadParameters("Pi2 takes no third parameter".into()));
            }
            if r == 0 || l == 0 {
                return Err(Error::BadParameters("Pi2 needs r, l >= 1".into()));
            }
            (numbers(1..=r).chain(numbers(1..=r)).collect(), numbers(r + 1..=r + l).chain(numbers(r + 1..=r + l)).collect())
        }
        HyperKind::Pi1a => {
            let a = a.ok_or_else(|| Error::BadParameters("Pi1a needs the parameter a".into()))?;
            if a < 2 || a > r + 1 {
                return Err(Error::BadParameters(format!("Pi1a needs 2 <= a <= r + 1, got a = {a}, r = {r}")));
            }
            let top = [z1(), z3()]
                .into_iter()
                .chain(numbers(1..=r))
                .chain(std::iter::once(z1()))
                .chain(numbers(r + 1..=r + l))
                .collect();
            let bottom = numbers((r + 1..=r + l).rev())
                .chain(std::iter::once(z2()))
                .chain(numbers((a..=r).rev()))
                .chain(std::iter::once(z3()))
                .chain(numbers((1..a).rev()))
                .chain(std::iter::once(z2()))
                .collect();
            (top, bottom)
        }
    };
    GeneralizedPermutation::from_tokens(&top, &bottom)
}

/// The representatives of the exceptional components of genus 3 and 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IrreducibleName {
    #[serde(rename = "Q^{irr}(-1,9)")]
    Minus1Nine,
    #[serde(rename = "Q^{irr}(-1,3,6)")]
    Minus1ThreeSix,
    #[serde(rename = "Q^{irr}(-1,3,3,3)")]
    Minus1ThreeThreeThree,
    #[serde(rename = "Q^{irr,I}(12)")]
    TwelveI,
    #[serde(rename = "Q^{irr,II}(12)")]
    TwelveII,
}

impl IrreducibleName {
    pub const ALL: [IrreducibleName; 5] = [
        IrreducibleName::Minus1Nine,
        IrreducibleName::Minus1ThreeSix,
        IrreducibleName::Minus1ThreeThreeThree,
        IrreducibleName::TwelveI,
        IrreducibleName::TwelveII,
    ];

    pub fn table(self) -> &'static str {
        match self {
            IrreducibleName::Minus1Nine => "0 1 2 3 4 0 / 4 3 2 5 1 5",
            IrreducibleName::Minus1ThreeSix => "0 1 2 3 4 5 0 / 5 4 3 2 6 1 6",
            IrreducibleName::Minus1ThreeThreeThree => "0 1 2 3 4 5 6 0 / 6 5 3 2 7 4 1 7",
            IrreducibleName::TwelveI => "1 2 3 4 2 5 6 / 1 4 5 7 6 7 3",
            IrreducibleName::TwelveII => "1 2 3 4 3 5 6 / 1 5 7 4 2 6 7",
        }
    }

    pub fn pattern(self) -> &'static [i64] {
        match self {
            IrreducibleName::Minus1Nine => &[-1, 9],
            IrreducibleName::Minus1ThreeSix => &[-1, 3, 6],
            IrreducibleName::Minus1ThreeThreeThree => &[-1, 3, 3, 3],
            IrreducibleName::TwelveI | IrreducibleName::TwelveII => &[12],
        }
    }
}

impl fmt::Display for IrreducibleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrreducibleName::Minus1Nine => "Q^{irr}(-1,9)",
            IrreducibleName::Minus1ThreeSix => "Q^{irr}(-1,3,6)",
            IrreducibleName::Minus1ThreeThreeThree => "Q^{irr}(-1,3,3,3)",
            IrreducibleName::TwelveI => "Q^{irr,I}(12)",
            IrreducibleName::TwelveII => "Q^{irr,II}(12)",
        })
    }
}

impl FromStr for IrreducibleName {
    type Err = Error;

    /// Accepts the displayed names as well as short forms such as `-1,9`,
    /// `12-I` or `12,II`.
    fn from_str(s: &str) -> Result<Self> {
        let squashed: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .replace("Q^{irr}", "")
            .replace("Q^{irr,", "")
            .replace('}', "")
            .replace(['(', ')'], "");
        let found = match squashed.as_str() {
            "-1,9" => IrreducibleName::Minus1Nine,
            "-1,3,6" => IrreducibleName::Minus1ThreeSix,
            "-1,3,3,3" => IrreducibleName::Minus1ThreeThreeThree,
            "I12" | "12-I" | "12,I" | "12I" => IrreducibleName::TwelveI,
            "II12" | "12-II" | "12,II" | "12II" => IrreducibleName::TwelveII,
            _ => return Err(Error::UnknownName(s.to_string())),
        };
        Ok(found)
    }
}

pub fn irreducible_rep(name: IrreducibleName) -> GeneralizedPermutation {
    GeneralizedPermutation::parse(name.table()).expect("table entries are valid")
}

/// What is known about the component containing a permutation class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum ComponentTag {
    Hyperelliptic { kind: HyperKind, r: usize, l: usize },
    IrreducibleRep { name: IrreducibleName },
    Unknown,
}

impl fmt::Display for ComponentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentTag::Hyperelliptic { kind, r, l } => write!(f, "Hyperelliptic({kind},{r},{l})"),
            ComponentTag::IrreducibleRep { name } => write!(f, "IrreducibleRep({name})"),
            ComponentTag::Unknown => f.write_str("Unknown"),
        }
    }
}

/// Recognizes the named representatives up to `sym`.
pub fn match_component(gp: &GeneralizedPermutation, sym: SymmetryGroup) -> ComponentTag {
    let key = gp.canonical_key(sym);
    let same = |q: &GeneralizedPermutation| q.size() == gp.size() && q.canonical_key(sym) == key;
    for name in IrreducibleName::ALL {
        if same(&irreducible_rep(name)) {
            return ComponentTag::IrreducibleRep { name };
        }
    }
    let (r, l) = gp.kind();
    if r == l && r >= 2 {
        for a in 0..=r - 2 {
            let q = hyperelliptic_rep(HyperKind::Pi1, a, r - 2 - a, None).expect("valid parameters");
            if same(&q) {
                return ComponentTag::Hyperelliptic { kind: HyperKind::Pi1, r: a, l: r - 2 - a };
            }
        }
    }
    let mut candidates = vec![(r / 2, l / 2)];
    if sym.swap_rows {
        candidates.push((l / 2, r / 2));
    }
    if r % 2 == 0 && l % 2 == 0 {
        for (a, b) in candidates {
            let q = hyperelliptic_rep(HyperKind::Pi2, a, b, None).expect("valid parameters");
            if same(&q) {
                return ComponentTag::Hyperelliptic { kind: HyperKind::Pi2, r: a, l: b };
            }
        }
    }
    ComponentTag::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(s: &str) -> Vec<i64> {
        singularity_pattern(&s.parse().unwrap()).orders
    }

    #[test]
    fn small_patterns() {
        assert_eq!(pattern("1 1 2 / 3 2 3"), vec![-1, -1, 2]);
        assert_eq!(pattern("1 1 / 2 2"), vec![-1, -1, -1, -1]);
        assert_eq!(pattern("1 2 3 4 3 5 4 / 6 6 1 5 2"), vec![-1, 9]);
        assert_eq!(pattern("1 2 / 2 1"), vec![0, 0]);
    }

    #[test]
    fn stratum_info_values() {
        assert_eq!(stratum_info(&[8]).unwrap(), (3, 5));
        assert_eq!(stratum_info(&[-1, -1, 2]).unwrap(), (1, 3));
        assert_eq!(stratum_info(&[2, 2]).unwrap(), (2, 4));
        assert!(matches!(stratum_info(&[1, 2]), Err(Error::BadPattern(_))));
        assert!(matches!(stratum_info(&[-2, 2]), Err(Error::BadPattern(_))));
        assert!(matches!(stratum_info(&[-1, -1, -1, -1, -1, -1, -1, -1]), Err(Error::BadPattern(_))));
    }

    #[test]
    fn pattern_text_forms() {
        let p: SingularityPattern = "Q(5,-1)".parse().unwrap();
        assert_eq!(p.orders, vec![-1, 5]);
        assert_eq!(p.to_string(), "Q(-1,5)");
        assert_eq!("8".parse::<SingularityPattern>().unwrap().genus, 3);
        assert!("1,x".parse::<SingularityPattern>().is_err());
    }

    #[test]
    fn hyperelliptic_tables() {
        let p = hyperelliptic_rep(HyperKind::Pi1, 1, 1, None).unwrap();
        assert_eq!(p.render(), "0_1 1 0_1 2 / 2 0_2 1 0_2");
        assert_eq!(singularity_pattern(&p).orders, vec![2, 2]);
        let p = hyperelliptic_rep(HyperKind::Pi1, 3, 5, None).unwrap();
        assert_eq!(singularity_pattern(&p).orders, vec![6, 10]);
        assert_eq!(singularity_pattern(&p).genus, 5);
        let q = hyperelliptic_rep(HyperKind::Pi2, 2, 2, None).unwrap();
        assert_eq!(q.render(), "1 2 1 2 / 3 4 3 4");
        assert_eq!(singularity_pattern(&q).orders, vec![2, 2]);
        let a = hyperelliptic_rep(HyperKind::Pi1a, 3, 3, Some(2)).unwrap();
        assert_eq!(a.render(), "0_1 0_3 1 2 3 0_1 4 5 6 / 6 5 4 0_2 3 2 0_3 1 0_2");
        assert!(hyperelliptic_rep(HyperKind::Pi1a, 3, 3, Some(5)).is_err());
        assert!(hyperelliptic_rep(HyperKind::Pi2, 0, 3, None).is_err());
    }

    #[test]
    fn irreducible_tables() {
        for name in IrreducibleName::ALL {
            let gp = irreducible_rep(name);
            assert_eq!(singularity_pattern(&gp).orders, name.pattern(), "{name}");
            assert_eq!(name.to_string().parse::<IrreducibleName>().unwrap(), name);
        }
        assert_eq!("12-II".parse::<IrreducibleName>().unwrap(), IrreducibleName::TwelveII);
        assert!(matches!("13".parse::<IrreducibleName>(), Err(Error::UnknownName(_))));
    }

    #[test]
    fn component_matching() {
        let sym = SymmetryGroup::default();
        let p = hyperelliptic_rep(HyperKind::Pi1, 3, 5, None).unwrap().rotate(2, 4);
        assert_eq!(match_component(&p, sym), ComponentTag::Hyperelliptic { kind: HyperKind::Pi1, r: 3, l: 5 });
        let q = "1 2 1 2 / 3 4 3 4".parse().unwrap();
        assert_eq!(match_component(&q, sym), ComponentTag::Hyperelliptic { kind: HyperKind::Pi2, r: 2, l: 2 });
        let e = "1 2 3 4 3 5 4 / 6 6 1 5 2".parse().unwrap();
        assert_eq!(match_component(&e, sym), ComponentTag::Unknown);
        let irr = irreducible_rep(IrreducibleName::TwelveII).rotate(3, 1);
        assert_eq!(match_component(&irr, sym), ComponentTag::IrreducibleRep { name: IrreducibleName::TwelveII });
    }

    #[test]
    fn euler_characteristic_agrees_with_gauss_bonnet() {
        // The cylinder complex has one face, one edge per letter plus the seam
        // and one vertex per singularity; the seam and the face cancel.
        for s in ["1 1 2 / 3 2 3", "1 2 3 4 3 5 4 / 6 6 1 5 2", "1 2 3 4 2 5 6 / 1 4 5 7 6 7 3", "1 1 / 2 2"] {
            let gp: GeneralizedPermutation = s.parse().unwrap();
            let pat = singularity_pattern(&gp);
            let chi = pat.len() as i64 - gp.letter_count() as i64;
            assert_eq!(chi, 2 - 2 * pat.genus as i64, "{s}");
        }
    }
}
