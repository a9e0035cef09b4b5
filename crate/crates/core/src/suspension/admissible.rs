use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genperm::{GeneralizedPermutation, Letter};

/// Positive integer lengths, one per letter, with equal top and bottom totals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdmissibleVector {
    lengths: Vec<u64>,
    width: u64,
}

impl AdmissibleVector {
    pub fn new(gp: &GeneralizedPermutation, lengths: Vec<u64>) -> Result<Self> {
        if lengths.len() != gp.letter_count() {
            return Err(Error::BadLengths(format!(
                "expected {} lengths, got {}",
                gp.letter_count(),
                lengths.len()
            )));
        }
        if let Some(i) = lengths.iter().position(|&x| x == 0) {
            return Err(Error::BadLengths(format!("letter `{}` has length 0", gp.name(i as Letter))));
        }
        let top: u64 = gp.top().iter().map(|&x| lengths[x as usize]).sum();
        let bottom: u64 = gp.bottom().iter().map(|&x| lengths[x as usize]).sum();
        if top != bottom {
            return Err(Error::BadLengths(format!("top total {top} differs from bottom total {bottom}")));
        }
        Ok(AdmissibleVector { lengths, width: top })
    }

    /// Every letter of length one; admissible only for balanced types.
    pub fn all_ones(gp: &GeneralizedPermutation) -> Result<Self> {
        Self::new(gp, vec![1; gp.letter_count()])
    }

    /// All ones, except one row-doubled letter on the shorter row which is
    /// lengthened to restore the balance.
    pub fn minimal(gp: &GeneralizedPermutation) -> Result<Self> {
        if !admissible_feasible(gp) {
            return Err(Error::Infeasible);
        }
        let (r, l) = gp.kind();
        let mut lengths = vec![1; gp.letter_count()];
        if r != l {
            let pairs = if r > l { gp.bottom_pairs() } else { gp.top_pairs() };
            lengths[pairs[0] as usize] += (r.abs_diff(l) / 2) as u64;
        }
        Self::new(gp, lengths)
    }

    /// Converts a vector indexed by positions `1..=r+l`; both occurrences of
    /// a letter must carry the same value.
    pub fn from_positions(gp: &GeneralizedPermutation, values: &[u64]) -> Result<Self> {
        if values.len() != gp.size() {
            return Err(Error::BadLengths(format!("expected {} position values, got {}", gp.size(), values.len())));
        }
        let mut lengths = vec![0; gp.letter_count()];
        for [a, b] in gp.occurrences() {
            if values[a] != values[b] {
                return Err(Error::BadLengths(format!(
                    "letter `{}` has lengths {} and {} at its two positions",
                    gp.name(gp.at(a)),
                    values[a],
                    values[b]
                )));
            }
            lengths[gp.at(a) as usize] = values[a];
        }
        Self::new(gp, lengths)
    }

    /// Reads `name=value` pairs or a list of position values.
    pub fn parse(gp: &GeneralizedPermutation, text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
        let number = |t: &str| t.parse::<u64>().map_err(|_| Error::BadLengths(format!("`{t}` is not a positive integer")));
        if tokens.iter().any(|t| t.contains('=')) {
            let mut lengths = vec![0; gp.letter_count()];
            for t in tokens {
                let (name, value) = t
                    .split_once('=')
                    .ok_or_else(|| Error::BadLengths(format!("`{t}` is not of the form letter=value")))?;
                let letter = gp
                    .letter_named(name)
                    .ok_or_else(|| Error::BadLengths(format!("unknown letter `{name}`")))?;
                lengths[letter as usize] = number(value)?;
            }
            Self::new(gp, lengths)
        } else {
            let values = tokens.into_iter().map(number).collect::<Result<Vec<_>>>()?;
            Self::from_positions(gp, &values)
        }
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn get(&self, letter: Letter) -> u64 {
        self.lengths[letter as usize]
    }

    /// Common total `w` of both rows.
    pub fn width(&self) -> u64 {
        self.width
    }

    /// Renders as `name=value` pairs in letter order.
    pub fn render(&self, gp: &GeneralizedPermutation) -> String {
        self.lengths
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{}={v}", gp.name(i as Letter)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A positive solution of the balance equation exists exactly when letters
/// doubled on the top row and letters doubled on the bottom row are both
/// present or both absent.
pub fn admissible_feasible(gp: &GeneralizedPermutation) -> bool {
    gp.top_pairs().is_empty() == gp.bottom_pairs().is_empty()
}

const SAMPLE_ATTEMPTS: usize = 4096;

/// Deterministic pseudo-random admissible vector with entries in `1..=bound`.
///
/// Seed 0 returns the all-ones vector whenever it is admissible.
pub fn sample_admissible(gp: &GeneralizedPermutation, seed: u64, bound: u64) -> Result<AdmissibleVector> {
    if !admissible_feasible(gp) {
        return Err(Error::Infeasible);
    }
    if bound == 0 {
        return Err(Error::BoundTooSmall(bound));
    }
    if seed == 0 {
        if let Ok(v) = AdmissibleVector::all_ones(gp) {
            return Ok(v);
        }
    }
    let balance = gp.balance();
    let doubled: Vec<usize> = (0..gp.letter_count()).filter(|&i| balance[i] != 0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let mut lengths: Vec<u64> = (0..gp.letter_count()).map(|_| rng.gen_range(1..=bound)).collect();
        if !doubled.is_empty() {
            let pivot = doubled[rng.gen_range(0..doubled.len())];
            let rest: i64 = (0..lengths.len())
                .filter(|&i| i != pivot)
                .map(|i| balance[i] * lengths[i] as i64)
                .sum();
            let value = -rest / balance[pivot];
            if value < 1 || value as u64 > bound || value * balance[pivot] != -rest {
                continue;
            }
            lengths[pivot] = value as u64;
        }
        return AdmissibleVector::new(gp, lengths);
    }
    Err(Error::BoundTooSmall(bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> GeneralizedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn feasibility() {
        assert!(admissible_feasible(&gp("1 2 / 2 1")));
        assert!(!admissible_feasible(&gp("1 1 2 3 / 2 3")));
        assert!(admissible_feasible(&gp("1 1 2 / 3 2 3")));
    }

    #[test]
    fn appendix_vector_converts() {
        let p = gp("5 2 5 3 4 2 / 1 3 1 4");
        let v = AdmissibleVector::from_positions(&p, &[1, 1, 1, 1, 1, 1, 2, 1, 2, 1]).unwrap();
        assert_eq!(v.width(), 6);
        assert_eq!(v.get(p.letter_named("1").unwrap()), 2);
        assert_eq!(AdmissibleVector::parse(&p, "1=2,2=1,3=1,4=1,5=1").unwrap(), v);
        assert_eq!(AdmissibleVector::parse(&p, "1 1 1 1 1 1 2 1 2 1").unwrap(), v);
    }

    #[test]
    fn rejects_bad_vectors() {
        let p = gp("1 1 2 / 3 2 3");
        assert!(AdmissibleVector::new(&p, vec![1, 1]).is_err());
        assert!(AdmissibleVector::new(&p, vec![1, 0, 1]).is_err());
        assert!(AdmissibleVector::new(&p, vec![2, 1, 1]).is_err());
        assert!(AdmissibleVector::from_positions(&p, &[1, 2, 1, 1, 1, 1]).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_balanced() {
        let p = gp("1 2 3 4 3 5 4 / 6 6 1 5 2");
        let a = sample_admissible(&p, 1, 100).unwrap();
        let b = sample_admissible(&p, 1, 100).unwrap();
        assert_eq!(a, b);
        assert!(a.lengths().iter().all(|&x| (1..=100).contains(&x)));
        assert_eq!(sample_admissible(&gp("1 2 / 2 1"), 0, 1).unwrap().lengths(), &[1, 1]);
        assert_eq!(sample_admissible(&gp("1 1 2 3 / 2 3"), 0, 5), Err(Error::Infeasible));
    }

    #[test]
    fn minimal_vector() {
        let p = gp("5 2 5 3 4 2 / 1 3 1 4");
        let v = AdmissibleVector::minimal(&p).unwrap();
        assert_eq!(v.width(), 6);
        assert_eq!(v.get(p.letter_named("1").unwrap()), 2);
    }
}
