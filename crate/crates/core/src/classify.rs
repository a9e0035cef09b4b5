//! Enumeration of the permutation classes of a stratum and the geometric
//! moves that merge them into candidate connected components.
//!
//! Three kinds of moves are available. The vertical foliation of an integer
//! suspension that is a single cylinder encodes another permutation of the
//! same component. Every one-cylinder element of the `SL(2,Z)` orbit of the
//! double cover does the same. Finally a simple vertical cylinder exhibits a
//! class as `C ⊕ s`, where `C` is the component obtained after excising the
//! cylinder and collapsing the seam; two classes with the same `(C, s)` lie
//! in one component.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::conditions::is_irreducible;
use crate::error::{Error, Result};
use crate::genperm::{GeneralizedPermutation, Letter, SymmetryGroup};
use crate::strata::{classes_of_rows, match_component, orders_of_rows, singularity_pattern, ComponentTag, SingularityPattern};
use crate::suspension::{
    head_cylinder_angle, read_one_cylinder, sample_admissible, vertical_permutation, AdmissibleVector, Angle, CoverKey,
    Orbit, SquareTiledCover,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub sym: SymmetryGroup,
    /// Largest accepted `r + l`.
    pub limit: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { sym: SymmetryGroup::default(), limit: 16 }
    }
}

fn check_size(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeLimit { size, limit })
    } else {
        Ok(())
    }
}

/// Walks every perfect matching of `0..rows.len()` with letters numbered by
/// first appearance.
fn fill(rows: &mut [Letter], next: Letter, visit: &mut impl FnMut(&[Letter])) {
    let Some(i) = rows.iter().position(|&x| x == Letter::MAX) else {
        visit(rows);
        return;
    };
    rows[i] = next;
    for j in i + 1..rows.len() {
        if rows[j] == Letter::MAX {
            rows[j] = next;
            fill(rows, next + 1, visit);
            rows[j] = Letter::MAX;
        }
    }
    rows[i] = Letter::MAX;
}

fn doubled_on_both_rows(rows: &[Letter], r: usize, counts: &mut [u8]) -> bool {
    counts.iter_mut().for_each(|c| *c = 0);
    for &x in &rows[..r] {
        counts[x as usize] += 1;
    }
    counts.contains(&2) && counts.contains(&0)
}

fn key_to_permutation(top: &[Letter], bottom: &[Letter]) -> GeneralizedPermutation {
    let mut key: Vec<Letter> = top.iter().map(|&x| x + 1).collect();
    key.push(0);
    key.extend(bottom.iter().map(|&x| x + 1));
    GeneralizedPermutation::from_key(&key)
}

fn classes_of_type(r: usize, l: usize, sym: SymmetryGroup, pattern: Option<&[i64]>) -> BTreeSet<Vec<Letter>> {
    let n = r + l;
    (1..n)
        .into_par_iter()
        .map(|partner| {
            let mut found = BTreeSet::new();
            let mut rows = vec![Letter::MAX; n];
            rows[0] = 0;
            rows[partner] = 0;
            let mut counts = vec![0u8; n / 2];
            fill(&mut rows, 1, &mut |rows| {
                if !doubled_on_both_rows(rows, r, &mut counts) {
                    return;
                }
                let (top, bottom) = rows.split_at(r);
                if pattern.is_some_and(|p| orders_of_rows(top, bottom) != p) {
                    return;
                }
                found.insert(key_to_permutation(top, bottom).canonical_key(sym));
            });
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// All classes of type `(r, l)` with letters doubled on both rows, as
/// canonical forms in increasing order.
pub fn enumerate_type(r: usize, l: usize, opts: &EnumerateOptions) -> Result<Vec<GeneralizedPermutation>> {
    if r == 0 || l == 0 || (r + l) % 2 != 0 {
        return Err(Error::BadParameters(format!("type ({r},{l}) needs r, l ≥ 1 and r + l even")));
    }
    check_size(r + l, opts.limit)?;
    Ok(classes_of_type(r, l, opts.sym, None).iter().map(|k| GeneralizedPermutation::from_key(k)).collect())
}

/// All classes whose suspensions lie in the stratum `pattern`.
pub fn enumerate_stratum(pattern: &SingularityPattern, opts: &EnumerateOptions) -> Result<Vec<GeneralizedPermutation>> {
    let n = pattern.corner_count();
    check_size(n, opts.limit)?;
    let mut keys = BTreeSet::new();
    for r in 2..n.saturating_sub(1) {
        let l = n - r;
        if opts.sym.swap_rows && r < l {
            continue;
        }
        keys.extend(classes_of_type(r, l, opts.sym, Some(&pattern.orders)));
    }
    Ok(keys.iter().map(|k| GeneralizedPermutation::from_key(k)).collect())
}

/// A simple vertical cylinder next to the seam of a rotation of a
/// permutation, together with what remains once it is cut out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Excision {
    /// Rotation of the input whose rows share their first letter.
    pub rotated: GeneralizedPermutation,
    /// Left shifts applied to the top and bottom rows.
    pub shift: (usize, usize),
    /// The rotated permutation without its shared head.
    pub hat: GeneralizedPermutation,
    pub lambda: AdmissibleVector,
    pub angle: Angle,
    /// Stratum reached by collapsing the seam of `hat`, when it joins two
    /// distinct singularities.
    pub collapsed: Option<SingularityPattern>,
    /// Whether `hat` is irreducible, which makes the seam a saddle connection
    /// of multiplicity one.
    pub certified: bool,
}

impl Excision {
    pub fn s(&self) -> u64 {
        self.angle.s
    }
}

/// Pattern obtained by merging the two singularities at the ends of the seam.
fn collapse_seam(hat: &GeneralizedPermutation) -> Option<SingularityPattern> {
    let classes = classes_of_rows(hat.top(), hat.bottom());
    let (top, bottom) = (classes[0], classes[hat.r()]);
    if top == bottom {
        return None;
    }
    let mut sizes: BTreeMap<usize, i64> = BTreeMap::new();
    for c in classes {
        *sizes.entry(c).or_default() += 1;
    }
    let merged = sizes[&top] + sizes[&bottom] - 4;
    let mut orders: Vec<i64> =
        sizes.iter().filter(|(c, _)| **c != top && **c != bottom).map(|(_, &n)| n - 2).collect();
    orders.push(merged);
    orders.retain(|&k| k != 0);
    SingularityPattern::new(orders).ok()
}

fn excise_at(gp: &GeneralizedPermutation, i: usize, j: usize) -> Option<Excision> {
    let rotated = gp.rotate(i, j);
    if rotated.top()[0] != rotated.bottom()[0] {
        return None;
    }
    let hat = rotated.restrict().ok()?;
    let lambda = AdmissibleVector::minimal(&rotated).ok()?;
    let angle = head_cylinder_angle(&rotated, &lambda).ok()?;
    let collapsed = collapse_seam(&hat);
    let certified = is_irreducible(&hat).is_irreducible();
    Some(Excision { rotated, shift: (i, j), hat, lambda, angle, collapsed, certified })
}

/// Every excision available among the rotations of `gp`, identity first.
pub fn excisions(gp: &GeneralizedPermutation) -> Vec<Excision> {
    let (r, l) = gp.kind();
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..l {
            if gp.top()[i] == gp.bottom()[j] {
                out.extend(excise_at(gp, i, j));
            }
        }
    }
    out
}

/// The first certified excision of `gp`, or the first excision at all when
/// none is certified.
pub fn excise_simple_cylinder(gp: &GeneralizedPermutation) -> Result<Excision> {
    let all = excisions(gp);
    let pick = all.iter().position(|e| e.certified).unwrap_or(0);
    all.into_iter().nth(pick).ok_or(Error::NoSimpleCylinderForm)
}

/// Candidate split permutations: `gp` rotated, with a fresh letter at the
/// head of one row and anywhere in the same or the other row.
fn split_candidates(gp: &GeneralizedPermutation) -> impl Iterator<Item = GeneralizedPermutation> + '_ {
    let fresh = gp.letter_count() as Letter;
    gp.rotations().flat_map(move |rot| {
        let names: Vec<String> = rot.names().iter().cloned().chain(std::iter::once(fresh_name(&rot))).collect();
        let build = |top: &[Letter], bottom: &[Letter]| {
            let top: Vec<&str> = top.iter().map(|&x| names[x as usize].as_str()).collect();
            let bottom: Vec<&str> = bottom.iter().map(|&x| names[x as usize].as_str()).collect();
            GeneralizedPermutation::from_tokens(&top, &bottom).expect("every letter appears twice")
        };
        let with_head = |row: &[Letter]| {
            let mut out = vec![fresh];
            out.extend_from_slice(row);
            out
        };
        let inserted = |row: &[Letter], at: usize| {
            let mut out = row.to_vec();
            out.insert(at, fresh);
            out
        };
        let (t, b) = (rot.top(), rot.bottom());
        let mut out = Vec::new();
        for q in 0..=b.len() {
            out.push(build(&with_head(t), &inserted(b, q)));
        }
        for p in 1..=t.len() {
            out.push(build(&inserted(t, p), &with_head(b)));
        }
        for p in 1..=t.len() {
            out.push(build(&inserted(&with_head(t), p + 1), b));
        }
        for q in 1..=b.len() {
            out.push(build(t, &inserted(&with_head(b), q + 1)));
        }
        out
    })
}

fn fresh_name(gp: &GeneralizedPermutation) -> String {
    (0..).map(|i: usize| format!("{i}")).find(|c| gp.letter_named(c).is_none()).expect("unbounded")
}

/// Searches for a permutation `π` whose first excision removes a simple
/// cylinder of angle `s·π` and leaves a split of `gp_hat`: the remaining
/// permutation is `gp_hat` with one extra letter, and collapsing its seam
/// lands in the stratum of `gp_hat`.
pub fn bubble(gp_hat: &GeneralizedPermutation, s: u64, budget: usize) -> Result<GeneralizedPermutation> {
    let target = singularity_pattern(gp_hat).without_marked_points();
    let bound = 2 * u64::from(target.genus) + 2;
    if s == 0 || s > bound {
        return Err(Error::BadParameters(format!("s = {s} must lie in 1..={bound}")));
    }
    for (n, split) in split_candidates(gp_hat).enumerate() {
        if n >= budget {
            break;
        }
        if collapse_seam(&split).as_ref() != Some(&target) {
            continue;
        }
        let pi = split.prepend_shared_head();
        let reached = singularity_pattern(&pi).without_marked_points();
        if reached.len() != target.len() || reached.genus != target.genus + 1 {
            continue;
        }
        let Some(ex) = excisions(&pi).into_iter().next() else { continue };
        if ex.shift == (0, 0) && ex.s() == s && ex.certified {
            return Ok(pi);
        }
    }
    Err(Error::NotFoundWithinBudget(budget))
}

/// Which moves [`component_report`] uses to merge classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MoveConfig {
    #[serde(serialize_with = "display")]
    pub sym: SymmetryGroup,
    pub limit: usize,
    pub seed: u64,
    /// Seeded admissible vectors tried per class besides the minimal one.
    pub samples: usize,
    pub sample_bound: u64,
    pub vertical: bool,
    pub orbit: bool,
    pub orbit_cap: usize,
    pub excise: bool,
}

fn display<S: serde::Serializer>(sym: &SymmetryGroup, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(sym)
}

impl Default for MoveConfig {
    fn default() -> Self {
        MoveConfig {
            sym: SymmetryGroup::default(),
            limit: 16,
            seed: 0,
            samples: 8,
            sample_bound: 4,
            vertical: true,
            orbit: true,
            orbit_cap: 250_000,
            excise: true,
        }
    }
}

impl MoveConfig {
    fn enumerate_options(&self) -> EnumerateOptions {
        EnumerateOptions { sym: self.sym, limit: self.limit }
    }
}

/// A certified reason for two classes to share a component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum MergeEdge {
    /// The vertical foliation of `Su(from, lambda)` is one cylinder encoded by `to`.
    Vertical { from: usize, to: usize, lambda: String },
    /// The double cover of `to` is reached from that of `from` by `word`.
    Orbit { from: usize, to: usize, word: String },
    /// `class` is `C ⊕ s` with `C` the single component of `lower`.
    Excision { class: usize, hat: GeneralizedPermutation, s: u64, lower: SingularityPattern },
}

/// An externally established fact about a stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Citation {
    pub fact: String,
    pub source: String,
    pub lower_bound: usize,
}

fn citations_for(pattern: &SingularityPattern) -> Vec<Citation> {
    const SPORADIC: [&[i64]; 4] = [&[-1, 9], &[-1, 3, 6], &[-1, 3, 3, 3], &[12]];
    if SPORADIC.contains(&pattern.orders.as_slice()) {
        vec![Citation {
            fact: format!("{pattern} has exactly two connected components"),
            source: "Zorich, computation of extended Rauzy classes".into(),
            lower_bound: 2,
        }]
    } else {
        Vec::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub permutation: GeneralizedPermutation,
    pub r: usize,
    pub l: usize,
    pub tag: ComponentTag,
    pub group: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub stratum: SingularityPattern,
    pub moves: MoveConfig,
    pub classes: Vec<ClassEntry>,
    /// Class indices of every group, groups ordered by their first class.
    pub merge_groups: Vec<Vec<usize>>,
    /// Edges that joined two groups, in the order they were applied.
    pub edges: Vec<MergeEdge>,
    /// Bound derived from the computation alone.
    pub internal_lower_bound: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub citations: Vec<Citation>,
}

impl ComponentReport {
    /// Group of the class equivalent to `gp`, if any.
    pub fn group_of(&self, gp: &GeneralizedPermutation) -> Option<usize> {
        let key = gp.canonical_key(self.moves.sym);
        self.classes.iter().find(|c| c.permutation.canonical_key(self.moves.sym) == key).map(|c| c.group)
    }

    /// One line per class: class, tag, group and the edges touching it.
    pub fn to_tsv(&self) -> String {
        let mut touching: Vec<Vec<String>> = vec![Vec::new(); self.classes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            match e {
                MergeEdge::Vertical { from, to, .. } => {
                    touching[*from].push(format!("v{i}"));
                    touching[*to].push(format!("v{i}"));
                }
                MergeEdge::Orbit { from, to, .. } => {
                    touching[*from].push(format!("o{i}"));
                    touching[*to].push(format!("o{i}"));
                }
                MergeEdge::Excision { class, s, .. } => touching[*class].push(format!("x{i}:s={s}")),
            }
        }
        let mut out = String::from("class\ttag\tgroup\tedges\n");
        for (c, t) in self.classes.iter().zip(&touching) {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", c.permutation, c.tag, c.group, t.join(","));
        }
        out
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

/// Admissible vectors tried for the vertical move: the minimal one, then
/// `samples` draws whose seeds come from one generator seeded by `seed`.
fn lambda_set(gp: &GeneralizedPermutation, seeds: &[u64], bound: u64) -> Vec<AdmissibleVector> {
    let mut out: Vec<AdmissibleVector> = AdmissibleVector::minimal(gp).into_iter().collect();
    for &seed in seeds {
        if let Ok(v) = sample_admissible(gp, seed, bound) {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

fn seed_table(seed: u64, classes: usize, samples: usize) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..classes).map(|_| (0..samples).map(|_| rng.gen_range(1..u64::MAX)).collect()).collect()
}

/// Distinct one-cylinder permutations met along an `SL(2,Z)` orbit, with the
/// word reaching the first occurrence of each.
fn orbit_reads(orbit: &Orbit, sym: SymmetryGroup) -> Vec<(GeneralizedPermutation, String)> {
    let reads: Vec<(usize, GeneralizedPermutation)> = (0..orbit.len())
        .into_par_iter()
        .filter_map(|i| {
            let c = SquareTiledCover::from_key(&orbit.keys[i]);
            read_one_cylinder(&c).ok().map(|oc| (i, oc.permutation))
        })
        .collect();
    let mut raw = HashSet::new();
    let distinct: Vec<(usize, GeneralizedPermutation)> =
        reads.into_iter().filter(|(_, p)| raw.insert((p.top().to_vec(), p.bottom().to_vec()))).collect();
    let keyed: Vec<(usize, Vec<Letter>, GeneralizedPermutation)> =
        distinct.into_par_iter().map(|(i, p)| (i, p.canonical_key(sym), p)).collect();
    let mut classes = HashSet::new();
    keyed
        .into_iter()
        .filter(|(_, k, _)| classes.insert(k.clone()))
        .map(|(i, _, p)| (p, orbit.word(i)))
        .collect()
}

/// Classes, merge groups and component bounds for one stratum.
pub fn component_report(pattern: &SingularityPattern, cfg: &MoveConfig) -> Result<ComponentReport> {
    let mut connected = HashMap::new();
    report_with(pattern, cfg, &mut connected)
}

fn report_with(
    pattern: &SingularityPattern,
    cfg: &MoveConfig,
    connected: &mut HashMap<SingularityPattern, bool>,
) -> Result<ComponentReport> {
    let classes = enumerate_stratum(pattern, &cfg.enumerate_options())?;
    let n = classes.len();
    let keys: Vec<Vec<Letter>> = classes.iter().map(|c| c.canonical_key(cfg.sym)).collect();
    let index: HashMap<&[Letter], usize> = keys.iter().enumerate().map(|(i, k)| (k.as_slice(), i)).collect();
    let lookup = |gp: &GeneralizedPermutation| index.get(gp.canonical_key(cfg.sym).as_slice()).copied();

    let mut candidates: Vec<MergeEdge> = Vec::new();
    if cfg.vertical {
        let seeds = seed_table(cfg.seed, n, cfg.samples);
        let per_class: Vec<Vec<MergeEdge>> = classes
            .par_iter()
            .enumerate()
            .map(|(i, gp)| {
                lambda_set(gp, &seeds[i], cfg.sample_bound)
                    .into_iter()
                    .filter_map(|lambda| {
                        let oc = vertical_permutation(gp, &lambda).ok()?;
                        let to = lookup(&oc.permutation)?;
                        Some(MergeEdge::Vertical { from: i, to, lambda: lambda.render(gp) })
                    })
                    .collect()
            })
            .collect();
        candidates.extend(per_class.into_iter().flatten());
    }
    if cfg.orbit {
        let mut visited: HashSet<CoverKey> = HashSet::new();
        for (i, gp) in classes.iter().enumerate() {
            let Ok(cover) = AdmissibleVector::minimal(gp).and_then(|l| SquareTiledCover::build(gp, &l)) else {
                continue;
            };
            if visited.contains(&cover.canonical_key()) {
                continue;
            }
            let orbit = cover.sl2z_orbit(cfg.orbit_cap);
            let mut reached = HashSet::new();
            for (read, word) in orbit_reads(&orbit, cfg.sym) {
                if let Some(to) = lookup(&read) {
                    if to != i && reached.insert(to) {
                        candidates.push(MergeEdge::Orbit { from: i, to, word });
                    }
                }
            }
            visited.extend(orbit.keys);
        }
    }

    let mut nodes: BTreeMap<(SingularityPattern, u64), usize> = BTreeMap::new();
    let mut node_edges: Vec<(usize, usize, MergeEdge)> = Vec::new();
    if cfg.excise {
        let per_class: Vec<Vec<Excision>> = classes
            .par_iter()
            .map(|gp| excisions(gp).into_iter().filter(|e| e.certified && e.collapsed.is_some()).collect())
            .collect();
        for (i, exs) in per_class.into_iter().enumerate() {
            for ex in exs {
                let lower = ex.collapsed.clone().expect("filtered");
                if !lower_is_connected(&lower, cfg, connected)? {
                    continue;
                }
                let next = n + nodes.len();
                let node = *nodes.entry((lower.clone(), ex.s())).or_insert(next);
                let s = ex.s();
                node_edges.push((i, node, MergeEdge::Excision { class: i, hat: ex.hat, s, lower }));
            }
        }
    }

    let mut uf = UnionFind((0..n + nodes.len()).collect());
    let mut edges = Vec::new();
    for e in candidates {
        let (a, b) = match &e {
            MergeEdge::Vertical { from, to, .. } | MergeEdge::Orbit { from, to, .. } => (*from, *to),
            MergeEdge::Excision { .. } => unreachable!("excisions are joined through nodes"),
        };
        if uf.union(a, b) {
            edges.push(e);
        }
    }
    for (class, node, e) in node_edges {
        if uf.union(class, node) {
            edges.push(e);
        }
    }

    let mut group_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut merge_groups: Vec<Vec<usize>> = Vec::new();
    let mut entries = Vec::with_capacity(n);
    for (i, gp) in classes.into_iter().enumerate() {
        let root = uf.find(i);
        let g = *group_of_root.entry(root).or_insert_with(|| {
            merge_groups.push(Vec::new());
            merge_groups.len() - 1
        });
        merge_groups[g].push(i);
        let (r, l) = gp.kind();
        let tag = match_component(&gp, cfg.sym);
        entries.push(ClassEntry { permutation: gp, r, l, tag, group: g });
    }
    let upper_bound = merge_groups.len();
    connected.insert(pattern.clone(), upper_bound == 1);
    let internal_lower_bound = usize::from(n > 0);
    let citations = citations_for(pattern);
    let lower_bound = citations.iter().map(|c| c.lower_bound).fold(internal_lower_bound, usize::max);
    Ok(ComponentReport {
        stratum: pattern.clone(),
        moves: *cfg,
        classes: entries,
        merge_groups,
        edges,
        internal_lower_bound,
        lower_bound,
        upper_bound,
        citations,
    })
}

/// Whether the moves connect every class of `lower`; only then can an
/// excision be attributed to a well-defined component.
fn lower_is_connected(
    lower: &SingularityPattern,
    cfg: &MoveConfig,
    connected: &mut HashMap<SingularityPattern, bool>,
) -> Result<bool> {
    if let Some(&c) = connected.get(lower) {
        return Ok(c);
    }
    let c = match report_with(lower, cfg, connected) {
        Ok(report) => report.upper_bound == 1,
        Err(Error::SizeLimit { .. }) => false,
        Err(e) => return Err(e),
    };
    connected.insert(lower.clone(), c);
    Ok(c)
}

/// Neighbors of a class under the vertical and orbit moves.
fn neighbors(gp: &GeneralizedPermutation, seeds: &[u64], cfg: &MoveConfig) -> Vec<GeneralizedPermutation> {
    let mut out = Vec::new();
    if cfg.vertical {
        for lambda in lambda_set(gp, seeds, cfg.sample_bound) {
            if let Ok(oc) = vertical_permutation(gp, &lambda) {
                out.push(oc.permutation);
            }
        }
    }
    if cfg.orbit {
        if let Ok(cover) = AdmissibleVector::minimal(gp).and_then(|l| SquareTiledCover::build(gp, &l)) {
            out.extend(orbit_reads(&cover.sl2z_orbit(cfg.orbit_cap), cfg.sym).into_iter().map(|(p, _)| p));
        }
    }
    out
}

/// Searches outwards from `a` and `b` with the vertical and orbit moves,
/// without enumerating the stratum, until both searches meet or `budget`
/// classes have been expanded. Returns the number of expanded classes on
/// success.
pub fn connect(
    a: &GeneralizedPermutation,
    b: &GeneralizedPermutation,
    cfg: &MoveConfig,
    budget: usize,
) -> Result<usize> {
    let key = |gp: &GeneralizedPermutation| gp.canonical_key(cfg.sym);
    let mut owner: HashMap<Vec<Letter>, u8> = HashMap::new();
    let mut queue: VecDeque<(GeneralizedPermutation, u8)> = VecDeque::new();
    for (side, gp) in [(0u8, a), (1u8, b)] {
        if let Some(&other) = owner.get(&key(gp)) {
            if other != side {
                return Ok(0);
            }
        }
        owner.insert(key(gp), side);
        queue.push_back((gp.clone(), side));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut expanded = 0;
    while let Some((gp, side)) = queue.pop_front() {
        if expanded >= budget {
            break;
        }
        expanded += 1;
        let seeds: Vec<u64> = (0..cfg.samples).map(|_| rng.gen_range(1..u64::MAX)).collect();
        for next in neighbors(&gp, &seeds, cfg) {
            match owner.get(&key(&next)) {
                Some(&s) if s != side => return Ok(expanded),
                Some(_) => {}
                None => {
                    owner.insert(key(&next), side);
                    queue.push_back((next, side));
                }
            }
        }
    }
    Err(Error::NotFoundWithinBudget(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::{irreducible_rep, IrreducibleName};

    fn pattern(s: &str) -> SingularityPattern {
        s.parse().unwrap()
    }

    #[test]
    fn small_types() {
        let opts = EnumerateOptions::default();
        let classes = enumerate_type(2, 2, &opts).unwrap();
        let rendered: Vec<String> = classes.iter().map(|c| c.render()).collect();
        assert_eq!(rendered, ["1 1 / 2 2"]);
        assert!(enumerate_type(3, 2, &opts).is_err());
        assert_eq!(enumerate_type(9, 9, &opts), Err(Error::SizeLimit { size: 18, limit: 16 }));
    }

    #[test]
    fn q8_counts() {
        let classes = enumerate_stratum(&pattern("8"), &EnumerateOptions::default()).unwrap();
        assert_eq!(classes.len(), 7);
        let balanced = classes.iter().filter(|c| c.r() == c.l()).count();
        assert_eq!(balanced, 4);
    }

    #[test]
    fn excise_reps() {
        let ex = excise_simple_cylinder(&irreducible_rep(IrreducibleName::TwelveI)).unwrap();
        assert_eq!((ex.s(), ex.collapsed), (2, Some(pattern("8"))));
        let ex = excise_simple_cylinder(&irreducible_rep(IrreducibleName::TwelveII)).unwrap();
        assert_eq!((ex.s(), ex.collapsed), (6, Some(pattern("8"))));
        assert!(excise_simple_cylinder(&"1 2 / 2 1".parse().unwrap()).is_err());
    }
}
