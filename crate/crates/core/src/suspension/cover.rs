//! The orientation double cover of an integer suspension, as a square-tiled
//! surface with a deck involution.
//!
//! Square `x` of the base cylinder lifts to `x` (upper sheet) and `w + x`
//! (lower sheet, the base square turned by a half turn). The lower-left corner
//! of every square carries a flag telling whether it is an endpoint of the
//! boundary intervals of the suspension, so that singularities of order 0
//! survive the construction.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::genperm::GeneralizedPermutation;
use crate::strata::SingularityPattern;
use crate::suspension::admissible::AdmissibleVector;

/// A square-tiled surface with a fixed-point-free involution `deck` that
/// reverses both directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareTiledCover {
    right: Vec<u32>,
    up: Vec<u32>,
    deck: Vec<u32>,
    marked: Vec<bool>,
}

/// Canonical relabeling of a cover, comparable across isomorphic covers.
pub type CoverKey = Vec<u32>;

fn inverse(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    inv
}

/// Slot and offset of every unit column of one row of intervals.
fn columns(row: &[u32], starts: &[u64], lambda: &AdmissibleVector) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(lambda.width() as usize);
    for (slot, &letter) in row.iter().enumerate() {
        for o in 0..lambda.get(letter) {
            out.push((slot, o));
        }
    }
    debug_assert_eq!(out.len() as u64, starts.last().copied().unwrap_or(0));
    out
}

/// Left endpoints of the intervals of a row, followed by the total width.
pub(crate) fn prefix_starts(row: &[u32], lambda: &AdmissibleVector) -> Vec<u64> {
    let mut starts = Vec::with_capacity(row.len() + 1);
    let mut acc = 0;
    starts.push(0);
    for &letter in row {
        acc += lambda.get(letter);
        starts.push(acc);
    }
    starts
}

impl SquareTiledCover {
    /// Builds the double cover of `Su(gp, lambda)`.
    pub fn build(gp: &GeneralizedPermutation, lambda: &AdmissibleVector) -> Result<Self> {
        let w = lambda.width();
        let n = 2 * w as usize;
        let r = gp.r();
        let tstart = prefix_starts(gp.top(), lambda);
        let bstart = prefix_starts(gp.bottom(), lambda);
        let tcol = columns(gp.top(), &tstart, lambda);
        let bcol = columns(gp.bottom(), &bstart, lambda);
        let inv = gp.involution();
        let plus = |x: u64| (x % w) as u32;
        let minus = |x: u64| (w + x % w) as u32;

        let mut right = vec![0u32; n];
        let mut up = vec![0u32; n];
        let mut deck = vec![0u32; n];
        let mut marked = vec![false; n];
        let top_ends: std::collections::HashSet<u64> = tstart[..r].iter().copied().collect();
        let bottom_ends: std::collections::HashSet<u64> = bstart[..gp.l()].iter().copied().collect();
        for x in 0..w {
            let (xp, xm) = (plus(x) as usize, minus(x) as usize);
            right[xp] = plus(x + 1);
            right[xm] = minus(x + w - 1);
            deck[xp] = xm as u32;
            deck[xm] = xp as u32;
            marked[xp] = bottom_ends.contains(&x);
            marked[xm] = top_ends.contains(&((x + 1) % w));

            let (slot, o) = tcol[x as usize];
            let partner = inv[slot];
            let len = lambda.get(gp.top()[slot]);
            up[xp] = if partner >= r {
                plus(bstart[partner - r] + o)
            } else {
                minus(tstart[partner] + len - 1 - o)
            };

            let (slot, o) = bcol[x as usize];
            let partner = inv[r + slot];
            let len = lambda.get(gp.bottom()[slot]);
            up[xm] = if partner < r {
                minus(tstart[partner] + o)
            } else {
                plus(bstart[partner - r] + len - 1 - o)
            };
        }
        Ok(SquareTiledCover { right, up, deck, marked })
    }

    pub fn from_parts(right: Vec<u32>, up: Vec<u32>, deck: Vec<u32>, marked: Vec<bool>) -> Self {
        SquareTiledCover { right, up, deck, marked }
    }

    pub fn len(&self) -> usize {
        self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.right.is_empty()
    }

    pub fn right(&self) -> &[u32] {
        &self.right
    }

    pub fn up(&self) -> &[u32] {
        &self.up
    }

    pub fn deck(&self) -> &[u32] {
        &self.deck
    }

    pub fn marked(&self) -> &[bool] {
        &self.marked
    }

    /// `deck² = id`, `deck` has no fixed square and conjugates `right` and
    /// `up` to their inverses; `right` and `up` are permutations.
    pub fn relations_hold(&self) -> bool {
        let n = self.len();
        let is_perm = |p: &[u32]| {
            let mut seen = vec![false; n];
            p.len() == n && p.iter().all(|&x| (x as usize) < n && !std::mem::replace(&mut seen[x as usize], true))
        };
        if !is_perm(&self.right) || !is_perm(&self.up) || !is_perm(&self.deck) {
            return false;
        }
        (0..n).all(|q| {
            let i = self.deck[q] as usize;
            let ri = self.right[i] as usize;
            let ui = self.up[i] as usize;
            self.deck[i] as usize == q
                && i != q
                && self.right[self.deck[ri] as usize] as usize == q
                && self.up[self.deck[ui] as usize] as usize == q
        })
    }

    /// Number of connected components of the square-tiled surface.
    pub fn component_count(&self) -> usize {
        let n = self.len();
        let ri = inverse(&self.right);
        let ui = inverse(&self.up);
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(q) = stack.pop() {
                for next in [self.right[q], self.up[q], ri[q], ui[q]] {
                    let next = next as usize;
                    if !seen[next] {
                        seen[next] = true;
                        stack.push(next);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Vertex structure from the commutator cycles of the lower-left corners.
    pub fn vertices(&self) -> Vertices {
        let n = self.len();
        let ri = inverse(&self.right);
        let ui = inverse(&self.up);
        let step = |q: usize| self.up[self.right[ui[ri[q] as usize] as usize] as usize] as usize;
        let mut of_square = vec![u32::MAX; n];
        let mut sizes = Vec::new();
        for s in 0..n {
            if of_square[s] != u32::MAX {
                continue;
            }
            let id = sizes.len() as u32;
            let mut q = s;
            let mut m = 0;
            while of_square[q] == u32::MAX {
                of_square[q] = id;
                m += 1;
                q = step(q);
            }
            sizes.push(m);
        }
        let mut first = vec![usize::MAX; sizes.len()];
        let mut marked = vec![false; sizes.len()];
        for q in 0..n {
            let v = of_square[q] as usize;
            if first[v] == usize::MAX {
                first[v] = q;
            }
            marked[v] |= self.marked[q];
        }
        let image: Vec<u32> = first
            .iter()
            .map(|&q| {
                let d = self.deck[q] as usize;
                of_square[self.up[self.right[d] as usize] as usize]
            })
            .collect();
        Vertices { of_square, sizes, image, marked }
    }

    /// Euler characteristic `V - E + F` with `E = 2F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices().sizes.len() as i64 - self.len() as i64
    }

    /// Genus of each component, assuming components are homeomorphic.
    pub fn genus(&self) -> i64 {
        let c = self.component_count() as i64;
        (2 * c - self.euler_characteristic()) / (2 * c)
    }

    /// Pattern of the quotient surface read off the vertices.
    pub fn base_pattern(&self) -> SingularityPattern {
        let v = self.vertices();
        let mut orders = Vec::new();
        for id in 0..v.sizes.len() {
            let img = v.image[id] as usize;
            if img < id {
                continue;
            }
            let k = v.base_order(id);
            if k != 0 || v.marked[id] {
                orders.push(k);
            }
        }
        SingularityPattern::new(orders).expect("a cover always has a valid pattern")
    }

    /// Shear by `[[1, 1], [0, 1]]`, re-cut into unit squares with the same
    /// bottom edges.
    pub fn shear(&self) -> Self {
        let ri = inverse(&self.right);
        let up = (0..self.len()).map(|q| self.up[ri[q] as usize]).collect();
        let deck = (0..self.len()).map(|q| self.right[self.deck[q] as usize]).collect();
        SquareTiledCover { right: self.right.clone(), up, deck, marked: self.marked.clone() }
    }

    /// Quarter turn counterclockwise.
    pub fn rotate(&self) -> Self {
        let marked = (0..self.len()).map(|q| self.marked[self.up[q] as usize]).collect();
        SquareTiledCover { right: inverse(&self.up), up: self.right.clone(), deck: self.deck.clone(), marked }
    }

    /// Relabels squares by breadth-first search from every start square and
    /// keeps the least encoding.
    pub fn canonical_key(&self) -> CoverKey {
        let n = self.len();
        let mut best: Option<CoverKey> = None;
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut key = Vec::with_capacity(4 * n);
        for start in 0..n {
            label.iter_mut().for_each(|x| *x = u32::MAX);
            order.clear();
            label[start] = 0;
            order.push(start);
            let mut head = 0;
            while head < order.len() {
                let q = order[head];
                head += 1;
                for next in [self.right[q], self.up[q], self.deck[q]] {
                    let next = next as usize;
                    if label[next] == u32::MAX {
                        label[next] = order.len() as u32;
                        order.push(next);
                    }
                }
            }
            if order.len() != n {
                continue;
            }
            key.clear();
            key.extend(order.iter().map(|&q| label[self.right[q] as usize]));
            key.extend(order.iter().map(|&q| label[self.up[q] as usize]));
            key.extend(order.iter().map(|&q| label[self.deck[q] as usize]));
            key.extend(order.iter().map(|&q| self.marked[q] as u32));
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key.clone());
            }
        }
        best.unwrap_or_default()
    }

    /// Cover encoded by a canonical key.
    pub fn from_key(key: &CoverKey) -> Self {
        let n = key.len() / 4;
        SquareTiledCover {
            right: key[..n].to_vec(),
            up: key[n..2 * n].to_vec(),
            deck: key[2 * n..3 * n].to_vec(),
            marked: key[3 * n..].iter().map(|&b| b != 0).collect(),
        }
    }

    /// The top edge of `square`, identified with the equal edge of the deck
    /// image, as a base edge id.
    pub fn edge_id(&self, square: u32, ui: &[u32]) -> u32 {
        square.min(ui[self.deck[square as usize] as usize])
    }

    /// Maximal horizontal cylinders of the quotient surface.
    ///
    /// Every cylinder is represented by one of its two lifts; rows are listed
    /// from bottom to top and aligned so that `rows[i + 1][t] = up(rows[i][t])`.
    pub fn horizontal_cylinders(&self) -> Vec<HorizontalCylinder> {
        let n = self.len();
        let v = self.vertices();
        let ui = inverse(&self.up);
        let special = |q: usize| v.is_special(v.of_square[q] as usize);
        let mut row_of = vec![usize::MAX; n];
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for s in 0..n {
            if row_of[s] != usize::MAX {
                continue;
            }
            let mut row = Vec::new();
            let mut q = s;
            while row_of[q] == usize::MAX {
                row_of[q] = rows.len();
                row.push(q as u32);
                q = self.right[q] as usize;
            }
            rows.push(row);
        }
        let bottom_special = |row: &[u32]| row.iter().any(|&q| special(q as usize));
        let mut taken = vec![false; rows.len()];
        let mut lifts: Vec<Vec<Vec<u32>>> = Vec::new();
        let seeds: Vec<usize> = (0..rows.len())
            .filter(|&i| bottom_special(&rows[i]))
            .chain(0..rows.len())
            .collect();
        for seed in seeds {
            if taken[seed] {
                continue;
            }
            let mut stack = vec![rows[seed].clone()];
            taken[seed] = true;
            loop {
                let last = stack.last().expect("non-empty");
                let next: Vec<u32> = last.iter().map(|&q| self.up[q as usize]).collect();
                let next_row = row_of[next[0] as usize];
                if bottom_special(&next) || next_row == seed {
                    break;
                }
                taken[next_row] = true;
                stack.push(next);
            }
            lifts.push(stack);
        }

        let mut lift_of_square = vec![usize::MAX; n];
        for (i, lift) in lifts.iter().enumerate() {
            for row in lift {
                for &q in row {
                    lift_of_square[q as usize] = i;
                }
            }
        }
        let mut out = Vec::new();
        for (i, lift) in lifts.iter().enumerate() {
            let twin = lift_of_square[self.deck[lift[0][0] as usize] as usize];
            let min_of = |l: &Vec<Vec<u32>>| l.iter().flatten().copied().min().unwrap_or(u32::MAX);
            if twin != i && min_of(&lifts[twin]) < min_of(lift) {
                continue;
            }
            let bottom_row = &lift[0];
            let top_row = lift.last().expect("non-empty");
            let bottom_marks: Vec<usize> =
                (0..bottom_row.len()).filter(|&t| special(bottom_row[t] as usize)).collect();
            let top_marks: Vec<usize> =
                (0..top_row.len()).filter(|&t| special(self.up[top_row[t] as usize] as usize)).collect();
            let bottom_edges: Vec<u32> = bottom_row.iter().map(|&q| self.edge_id(ui[q as usize], &ui)).collect();
            let top_edges: Vec<u32> = top_row.iter().map(|&q| self.edge_id(q, &ui)).collect();
            let bottom_vertices = bottom_marks.iter().map(|&t| v.base_vertex(v.of_square[bottom_row[t] as usize])).collect();
            let top_vertices = top_marks
                .iter()
                .map(|&t| v.base_vertex(v.of_square[self.up[top_row[t] as usize] as usize]))
                .collect();
            out.push(HorizontalCylinder {
                rows: lift.clone(),
                bottom_arcs: split_arcs(&bottom_edges, &bottom_marks),
                top_arcs: split_arcs(&top_edges, &top_marks),
                bottom_marks,
                top_marks,
                bottom_vertices,
                top_vertices,
            });
        }
        out
    }

    /// Orbit under the shear and the quarter turn, as canonical keys.
    pub fn sl2z_orbit(&self, cap: usize) -> Orbit {
        let start = self.canonical_key();
        let mut index: HashMap<CoverKey, usize> = HashMap::new();
        let mut keys = vec![start.clone()];
        let mut parent: Vec<Option<(usize, char)>> = vec![None];
        index.insert(start, 0);
        let mut queue = VecDeque::from([0usize]);
        let mut truncated = false;
        'bfs: while let Some(i) = queue.pop_front() {
            let cover = SquareTiledCover::from_key(&keys[i]);
            for (gen, next) in [('T', cover.shear()), ('S', cover.rotate())] {
                let key = next.canonical_key();
                if index.contains_key(&key) {
                    continue;
                }
                if keys.len() >= cap {
                    truncated = true;
                    break 'bfs;
                }
                index.insert(key.clone(), keys.len());
                keys.push(key);
                parent.push(Some((i, gen)));
                queue.push_back(keys.len() - 1);
            }
        }
        Orbit { keys, parent, index, truncated }
    }
}

fn split_arcs(edges: &[u32], marks: &[usize]) -> Vec<Vec<u32>> {
    let n = edges.len();
    if marks.is_empty() {
        return Vec::new();
    }
    let mut arcs = Vec::with_capacity(marks.len());
    for (i, &start) in marks.iter().enumerate() {
        let end = if i + 1 < marks.len() { marks[i + 1] } else { marks[0] + n };
        arcs.push((start..end).map(|t| edges[t % n]).collect());
    }
    arcs
}

/// Vertices of a cover: one per commutator cycle of lower-left corners.
#[derive(Debug, Clone)]
pub struct Vertices {
    pub of_square: Vec<u32>,
    pub sizes: Vec<usize>,
    pub image: Vec<u32>,
    pub marked: Vec<bool>,
}

impl Vertices {
    pub fn is_branched(&self, v: usize) -> bool {
        self.image[v] as usize == v
    }

    /// Order of the image of the vertex on the quotient surface.
    pub fn base_order(&self, v: usize) -> i64 {
        let m = self.sizes[v] as i64;
        if self.is_branched(v) {
            m - 2
        } else {
            2 * m - 2
        }
    }

    /// Cone points and marked points of the quotient.
    pub fn is_special(&self, v: usize) -> bool {
        self.marked[v] || self.base_order(v) != 0
    }

    /// Identifier of the image on the quotient surface.
    pub fn base_vertex(&self, v: u32) -> u32 {
        v.min(self.image[v as usize])
    }
}

/// One horizontal cylinder of the quotient, through a chosen lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorizontalCylinder {
    pub rows: Vec<Vec<u32>>,
    pub bottom_marks: Vec<usize>,
    pub top_marks: Vec<usize>,
    pub bottom_arcs: Vec<Vec<u32>>,
    pub top_arcs: Vec<Vec<u32>>,
    pub bottom_vertices: Vec<u32>,
    pub top_vertices: Vec<u32>,
}

impl HorizontalCylinder {
    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn circumference(&self) -> usize {
        self.rows[0].len()
    }

    /// Each boundary circle is a single saddle connection.
    pub fn is_simple(&self) -> bool {
        self.bottom_arcs.len() == 1 && self.top_arcs.len() == 1
    }
}

/// Result of an orbit search.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub keys: Vec<CoverKey>,
    parent: Vec<Option<(usize, char)>>,
    index: HashMap<CoverKey, usize>,
    pub truncated: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, key: &CoverKey) -> bool {
        self.index.contains_key(key)
    }

    /// Generator word leading from the start cover to element `i`, applied
    /// left to right.
    pub fn word(&self, mut i: usize) -> String {
        let mut out = Vec::new();
        while let Some((p, g)) = self.parent[i] {
            out.push(g);
            i = p;
        }
        out.iter().rev().collect()
    }

    pub fn position(&self, key: &CoverKey) -> Option<usize> {
        self.index.get(key).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::singularity_pattern;

    fn cover(s: &str, lengths: Vec<u64>) -> (GeneralizedPermutation, SquareTiledCover) {
        let gp: GeneralizedPermutation = s.parse().unwrap();
        let lambda = AdmissibleVector::new(&gp, lengths).unwrap();
        let c = SquareTiledCover::build(&gp, &lambda).unwrap();
        (gp, c)
    }

    #[test]
    fn pillowcase_cover() {
        let (gp, c) = cover("1 1 / 2 2", vec![1, 1]);
        assert_eq!(c.len(), 4);
        assert!(c.relations_hold());
        assert!(c.is_connected());
        assert_eq!(c.genus(), 1);
        assert_eq!(c.base_pattern(), singularity_pattern(&gp));
    }

    #[test]
    fn torus_cover_is_two_copies() {
        let (gp, c) = cover("1 2 / 2 1", vec![1, 1]);
        assert!(c.relations_hold());
        assert_eq!(c.component_count(), 2);
        assert_eq!(c.base_pattern(), singularity_pattern(&gp));
    }

    #[test]
    fn figure_example_cover_has_genus_two() {
        let (gp, c) = cover("1 1 2 / 3 2 3", vec![1, 1, 1]);
        assert!(c.relations_hold());
        assert!(c.is_connected());
        assert_eq!(c.genus(), 2);
        assert_eq!(c.base_pattern(), singularity_pattern(&gp));
    }

    #[test]
    fn generators_preserve_relations() {
        let (gp, c) = cover("1 2 3 4 3 5 4 / 6 6 1 5 2", vec![1, 2, 1, 1, 1, 2]);
        let pattern = singularity_pattern(&gp);
        for next in [c.shear(), c.rotate(), c.shear().rotate().shear()] {
            assert!(next.relations_hold());
            assert_eq!(next.base_pattern(), pattern);
        }
        assert_eq!(c.rotate().rotate().canonical_key(), c.canonical_key());
        let st = c.rotate().shear();
        assert_eq!(st.rotate().shear().rotate().shear().canonical_key(), c.rotate().rotate().canonical_key());
    }

    #[test]
    fn canonical_key_ignores_labels() {
        let (_, c) = cover("1 1 2 / 3 2 3", vec![1, 1, 1]);
        let n = c.len() as u32;
        let shift = |p: &[u32]| {
            let mut out = vec![0; p.len()];
            for (i, &j) in p.iter().enumerate() {
                out[(i as u32 + 1) as usize % n as usize] = (j + 1) % n;
            }
            out
        };
        let mut marked = c.marked().to_vec();
        marked.rotate_right(1);
        let d = SquareTiledCover::from_parts(shift(c.right()), shift(c.up()), shift(c.deck()), marked);
        assert_eq!(c.canonical_key(), d.canonical_key());
        assert_eq!(SquareTiledCover::from_key(&c.canonical_key()).canonical_key(), c.canonical_key());
    }

    #[test]
    fn pillowcase_orbit_is_small() {
        let (_, c) = cover("1 1 / 2 2", vec![1, 1]);
        let orbit = c.sl2z_orbit(1000);
        assert!(!orbit.truncated);
        assert_eq!(orbit.len(), 1);
        assert_eq!(orbit.word(0), "");
    }

    #[test]
    fn horizontal_cylinder_of_a_suspension() {
        let (_, c) = cover("1 2 3 4 3 5 4 / 6 6 1 5 2", vec![1, 1, 1, 1, 1, 2]);
        let cyl = c.horizontal_cylinders();
        assert_eq!(cyl.len(), 1);
        assert_eq!(cyl[0].height(), 1);
        assert_eq!(cyl[0].circumference(), 7);
        assert_eq!(cyl[0].top_arcs.len(), 7);
        assert_eq!(cyl[0].bottom_arcs.len(), 5);
    }
}
