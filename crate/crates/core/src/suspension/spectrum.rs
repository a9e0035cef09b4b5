use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genperm::{GeneralizedPermutation, Row};
use crate::suspension::admissible::AdmissibleVector;
use crate::suspension::cover::prefix_starts;

/// The vertical direction leaving an interval endpoint into the cylinder:
/// upwards from a bottom endpoint, downwards from a top endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Germ {
    pub row: Row,
    pub index: usize,
}

/// A vertical saddle connection traced from `start` until it reaches `end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start: Germ,
    pub end: Germ,
    #[serde(rename = "len")]
    pub crossings: u64,
    pub is_gamma: bool,
    /// Abscissa of every crossing of the cylinder, in order.
    #[serde(skip)]
    pub columns: Vec<u64>,
}

/// All vertical saddle connections of an integer suspension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatrixSpectrum {
    /// One trace per germ, bottom germs first.
    #[serde(skip)]
    pub traces: Vec<Segment>,
    /// One entry per saddle connection.
    pub segments: Vec<Segment>,
}

impl SeparatrixSpectrum {
    /// Tracing back from the end of every trace returns to its start after
    /// the same number of crossings.
    pub fn pairs_up(&self) -> bool {
        self.traces.iter().all(|t| {
            self.traces
                .iter()
                .find(|u| u.start == t.end)
                .is_some_and(|u| u.end == t.start && u.crossings == t.crossings)
        })
    }

    pub fn gamma(&self) -> Option<&Segment> {
        self.segments.iter().find(|s| s.is_gamma)
    }

    /// Lengths of all saddle connections except the seam.
    pub fn other_lengths(&self) -> Vec<u64> {
        self.segments.iter().filter(|s| !s.is_gamma).map(|s| s.crossings).collect()
    }
}

struct Tracer<'a> {
    gp: &'a GeneralizedPermutation,
    lambda: &'a AdmissibleVector,
    w: u64,
    inv: Vec<usize>,
    tstart: Vec<u64>,
    bstart: Vec<u64>,
    top_slot: Vec<usize>,
    bottom_slot: Vec<usize>,
    top_end: Vec<Option<usize>>,
    bottom_end: Vec<Option<usize>>,
}

impl<'a> Tracer<'a> {
    fn new(gp: &'a GeneralizedPermutation, lambda: &'a AdmissibleVector) -> Self {
        let w = lambda.width();
        let tstart = prefix_starts(gp.top(), lambda);
        let bstart = prefix_starts(gp.bottom(), lambda);
        let slots = |starts: &[u64]| {
            let mut out = vec![0; w as usize];
            for s in 0..starts.len() - 1 {
                for x in starts[s]..starts[s + 1] {
                    out[x as usize] = s;
                }
            }
            out
        };
        let ends = |starts: &[u64]| {
            let mut out = vec![None; w as usize];
            for (s, &x) in starts[..starts.len() - 1].iter().enumerate() {
                out[x as usize] = Some(s);
            }
            out
        };
        Tracer {
            gp,
            lambda,
            w,
            inv: gp.involution(),
            top_slot: slots(&tstart),
            bottom_slot: slots(&bstart),
            top_end: ends(&tstart),
            bottom_end: ends(&bstart),
            tstart,
            bstart,
        }
    }

    fn trace(&self, start: Germ) -> Result<Segment> {
        let r = self.gp.r();
        let budget = 2 * self.w + 2;
        let (mut x, mut upward) = match start.row {
            Row::Bottom => (self.bstart[start.index], true),
            Row::Top => (self.tstart[start.index], false),
        };
        let mut columns = Vec::new();
        loop {
            if columns.len() as u64 >= budget {
                return Err(Error::TraceBudgetExceeded(budget));
            }
            columns.push(x);
            if upward {
                if let Some(i) = self.top_end[x as usize] {
                    return Ok(self.finish(start, Germ { row: Row::Top, index: i }, columns));
                }
                let slot = self.top_slot[x as usize];
                let o = x - self.tstart[slot];
                let partner = self.inv[slot];
                if partner >= r {
                    x = self.bstart[partner - r] + o;
                } else {
                    x = self.tstart[partner] + self.lambda.get(self.gp.top()[slot]) - o;
                    upward = false;
                }
            } else {
                if let Some(j) = self.bottom_end[x as usize] {
                    return Ok(self.finish(start, Germ { row: Row::Bottom, index: j }, columns));
                }
                let slot = self.bottom_slot[x as usize];
                let o = x - self.bstart[slot];
                let partner = self.inv[r + slot];
                if partner < r {
                    x = self.tstart[partner] + o;
                } else {
                    x = self.bstart[partner - r] + self.lambda.get(self.gp.bottom()[slot]) - o;
                    upward = true;
                }
            }
        }
    }

    fn finish(&self, start: Germ, end: Germ, columns: Vec<u64>) -> Segment {
        let seam = |a: Germ, b: Germ| a == Germ { row: Row::Bottom, index: 0 } && b == Germ { row: Row::Top, index: 0 };
        let is_gamma = columns.len() == 1 && (seam(start, end) || seam(end, start));
        Segment { start, end, crossings: columns.len() as u64, is_gamma, columns }
    }
}

/// Traces the vertical ray from every interval endpoint of `Su(gp, lambda)`.
pub fn separatrix_spectrum(gp: &GeneralizedPermutation, lambda: &AdmissibleVector) -> Result<SeparatrixSpectrum> {
    let tracer = Tracer::new(gp, lambda);
    let germs = (0..gp.l())
        .map(|index| Germ { row: Row::Bottom, index })
        .chain((0..gp.r()).map(|index| Germ { row: Row::Top, index }));
    let traces = germs.map(|g| tracer.trace(g)).collect::<Result<Vec<_>>>()?;
    let segments = traces.iter().filter(|t| t.start <= t.end).cloned().collect();
    Ok(SeparatrixSpectrum { traces, segments })
}

/// Every vertical saddle connection other than the seam crosses the cylinder
/// at least three times, which certifies that the seam has multiplicity one.
pub fn gamma_mult_one_evidence(gp: &GeneralizedPermutation, lambda: &AdmissibleVector) -> Result<bool> {
    Ok(separatrix_spectrum(gp, lambda)?.other_lengths().iter().all(|&c| c >= 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectrum(s: &str, lengths: Vec<u64>) -> SeparatrixSpectrum {
        let gp: GeneralizedPermutation = s.parse().unwrap();
        let lambda = AdmissibleVector::new(&gp, lengths).unwrap();
        separatrix_spectrum(&gp, &lambda).unwrap()
    }

    #[test]
    fn seam_has_length_one() {
        let sp = spectrum("1 2 3 4 3 5 4 / 6 6 1 5 2", vec![3, 1, 2, 2, 1, 4]);
        assert!(sp.pairs_up());
        assert_eq!(sp.segments.iter().filter(|s| s.is_gamma).count(), 1);
        assert_eq!(sp.gamma().unwrap().crossings, 1);
    }

    #[test]
    fn traces_of_a_pillow_example() {
        let sp = spectrum("1 1 2 / 3 2 3", vec![1, 1, 1]);
        assert!(sp.pairs_up());
        assert_eq!(sp.other_lengths(), vec![1, 1]);
        let sp = spectrum("1 1 2 / 3 2 3", vec![2, 1, 2]);
        assert!(sp.pairs_up());
        assert_eq!(sp.other_lengths(), vec![1, 3]);
    }

    #[test]
    fn crossings_cover_every_column_twice() {
        let gp: GeneralizedPermutation = "1 2 3 4 2 5 6 / 1 4 5 7 6 7 3".parse().unwrap();
        let lambda = AdmissibleVector::new(&gp, vec![2, 1, 3, 1, 2, 1, 1]).unwrap();
        let sp = separatrix_spectrum(&gp, &lambda).unwrap();
        let total: u64 = sp.traces.iter().map(|t| t.crossings).sum();
        assert!(total <= 2 * lambda.width());
        assert!(sp.pairs_up());
    }
}
