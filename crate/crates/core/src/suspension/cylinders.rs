use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genperm::GeneralizedPermutation;
use crate::suspension::admissible::AdmissibleVector;
use crate::suspension::cover::{HorizontalCylinder, SquareTiledCover, Vertices};
use crate::suspension::spectrum::Segment;

/// Angle `s·π` between the boundary loops of a simple cylinder, on the smaller
/// side, and the angle on the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Angle {
    pub s: u64,
    pub complement: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cylinder {
    pub width: u64,
    pub circumference: u64,
    pub simple: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle: Option<Angle>,
    /// Lengths of the saddle connections on each boundary circle.
    pub bottom_lengths: Vec<u64>,
    pub top_lengths: Vec<u64>,
    #[serde(skip)]
    pub bottom_arcs: Vec<Vec<u32>>,
    #[serde(skip)]
    pub top_arcs: Vec<Vec<u32>>,
    /// Base columns `x ∈ 0..w` swept by the cylinder.
    #[serde(skip)]
    pub columns: Vec<u64>,
}

/// Vertical cylinders of an integer suspension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderDecomposition {
    pub cylinders: Vec<Cylinder>,
    pub area: u64,
    /// Edge id of the vertical unit segment above abscissa `x`.
    #[serde(skip)]
    edge_of_column: Vec<u32>,
}

impl CylinderDecomposition {
    /// Id of the cylinder containing the unit column `[x, x + 1]`.
    pub fn cylinder_containing(&self, x: u64) -> Option<usize> {
        self.cylinders.iter().position(|c| c.columns.contains(&x))
    }

    pub fn total_area(&self) -> u64 {
        self.cylinders.iter().map(|c| c.width * c.circumference).sum()
    }

    /// Edge ids crossed by a vertical saddle connection.
    pub fn segment_edges(&self, segment: &Segment) -> Vec<u32> {
        let mut edges: Vec<u32> = segment.columns.iter().map(|&x| self.edge_of_column[x as usize]).collect();
        edges.sort_unstable();
        edges
    }

    /// Every boundary saddle connection is a union of traced vertical
    /// saddle connections.
    pub fn boundaries_match(&self, segments: &[Segment]) -> bool {
        let pieces: Vec<Vec<u32>> = segments.iter().map(|s| self.segment_edges(s)).collect();
        let mut owner: HashMap<u32, usize> = HashMap::new();
        for (i, p) in pieces.iter().enumerate() {
            for &e in p {
                if owner.insert(e, i).is_some_and(|prev| prev != i) {
                    return false;
                }
            }
        }
        self.cylinders.iter().flat_map(|c| c.bottom_arcs.iter().chain(&c.top_arcs)).all(|arc| {
            let mut arc = arc.clone();
            arc.sort_unstable();
            arc.dedup();
            let mut covered: Vec<u32> = Vec::new();
            for e in &arc {
                match owner.get(e) {
                    Some(&i) => covered.extend(&pieces[i]),
                    None => return false,
                }
            }
            covered.sort_unstable();
            covered.dedup();
            covered == arc
        })
    }
}

/// Angle between the boundary loops of a simple horizontal cylinder, read off
/// the horizontal rays around its singularity.
fn sector_angle(cover: &SquareTiledCover, vertices: &Vertices, cyl: &HorizontalCylinder) -> Option<Angle> {
    if !cyl.is_simple() || cyl.bottom_vertices[0] != cyl.top_vertices[0] {
        return None;
    }
    let n = cover.len();
    let mut ri = vec![0u32; n];
    let mut ui = vec![0u32; n];
    for q in 0..n {
        ri[cover.right()[q] as usize] = q as u32;
        ui[cover.up()[q] as usize] = q as u32;
    }
    let deck = cover.deck();
    let key = |y: u32, east: bool| {
        let image = (ui[deck[y as usize] as usize], !east);
        (y, east).min(image)
    };
    let qb = cyl.rows[0][cyl.bottom_marks[0]];
    let top_row = cyl.rows.last().expect("non-empty");
    let qt = top_row[cyl.top_marks[0]];
    let v = vertices.of_square[qb as usize] as usize;
    let m = vertices.sizes[v];
    let turns = if vertices.is_branched(v) { m } else { 2 * m };
    let mut position: HashMap<(u32, bool), usize> = HashMap::new();
    let mut q = qb as usize;
    for t in 0..m {
        position.entry(key(ui[q], true)).or_insert((2 * t) % turns);
        position.entry(key(ui[ri[q] as usize], false)).or_insert((2 * t + 1) % turns);
        q = cover.up()[cover.right()[ui[ri[q] as usize] as usize] as usize] as usize;
    }
    let east_bottom = position[&key(ui[qb as usize], true)];
    let west_bottom = position[&key(ui[ri[qb as usize] as usize], false)];
    let east_top = *position.get(&key(qt, true))?;
    let west_top = *position.get(&key(ri[qt as usize], false))?;
    let s1 = (west_top + turns - west_bottom) % turns;
    let s2 = (east_bottom + turns - east_top) % turns;
    Some(Angle { s: s1.min(s2) as u64, complement: s1.max(s2) as u64 })
}

fn describe(cover: &SquareTiledCover, vertices: &Vertices, cyl: &HorizontalCylinder, w: u64) -> Cylinder {
    let mut columns: Vec<u64> = cyl.rows.iter().flatten().map(|&q| q as u64 % w).collect();
    columns.sort_unstable();
    Cylinder {
        width: cyl.height() as u64,
        circumference: cyl.circumference() as u64,
        simple: cyl.is_simple(),
        angle: sector_angle(cover, vertices, cyl),
        bottom_lengths: cyl.bottom_arcs.iter().map(|a| a.len() as u64).collect(),
        top_lengths: cyl.top_arcs.iter().map(|a| a.len() as u64).collect(),
        bottom_arcs: cyl.bottom_arcs.clone(),
        top_arcs: cyl.top_arcs.clone(),
        columns,
    }
}

/// Vertical cylinders of `Su(gp, lambda)`, found as the horizontal cylinders
/// of the cover turned by a quarter turn. Widths count unit columns.
pub fn cylinder_decomposition(gp: &GeneralizedPermutation, lambda: &AdmissibleVector) -> Result<CylinderDecomposition> {
    let w = lambda.width();
    let turned = SquareTiledCover::build(gp, lambda)?.rotate();
    let vertices = turned.vertices();
    let cylinders = turned
        .horizontal_cylinders()
        .iter()
        .map(|c| describe(&turned, &vertices, c, w))
        .collect();
    let mut ui = vec![0u32; turned.len()];
    for (q, &u) in turned.up().iter().enumerate() {
        ui[u as usize] = q as u32;
    }
    let edge_of_column = (0..w).map(|x| turned.edge_id(((x + w - 1) % w) as u32, &ui)).collect();
    Ok(CylinderDecomposition { cylinders, area: w, edge_of_column })
}

/// Angle of a simple vertical cylinder.
pub fn simple_cylinder_angle(gp: &GeneralizedPermutation, lambda: &AdmissibleVector, id: usize) -> Result<Angle> {
    let d = cylinder_decomposition(gp, lambda)?;
    let cyl = d.cylinders.get(id).ok_or(Error::NoSuchCylinder(id))?;
    cyl.angle.ok_or(Error::NotSimple(id))
}

/// Angle of the vertical cylinder through the first column, which is simple
/// when both rows start with the same letter.
pub fn head_cylinder_angle(gp: &GeneralizedPermutation, lambda: &AdmissibleVector) -> Result<Angle> {
    let d = cylinder_decomposition(gp, lambda)?;
    let id = d.cylinder_containing(0).expect("column 0 lies in a cylinder");
    d.cylinders[id].angle.ok_or(Error::NotSimple(id))
}

/// A permutation with lengths read off a one-cylinder surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneCylinder {
    pub permutation: GeneralizedPermutation,
    pub lambda: AdmissibleVector,
    pub height: u64,
}

/// Reads the generalized permutation of a cover whose quotient has a single
/// horizontal cylinder.
pub fn read_one_cylinder(cover: &SquareTiledCover) -> Result<OneCylinder> {
    let cyls = cover.horizontal_cylinders();
    if cyls.len() != 1 {
        return Err(Error::NotSingleCylinder(cyls.len()));
    }
    let c = &cyls[0];
    let token = |arc: &Vec<u32>| arc.iter().min().expect("arcs are non-empty").to_string();
    let top: Vec<String> = c.top_arcs.iter().map(token).collect();
    let bottom: Vec<String> = c.bottom_arcs.iter().map(token).collect();
    let raw = GeneralizedPermutation::from_tokens(&top, &bottom)?;
    let mut lengths = vec![0; raw.letter_count()];
    for arc in c.top_arcs.iter().chain(&c.bottom_arcs) {
        let letter = raw.letter_named(&token(arc)).expect("token present");
        lengths[letter as usize] = arc.len() as u64;
    }
    let lambda = AdmissibleVector::new(&raw, lengths)?;
    Ok(OneCylinder { permutation: raw.relabeled(), lambda, height: c.height() as u64 })
}

/// The permutation encoding the vertical direction when it is a single
/// cylinder.
pub fn vertical_permutation(gp: &GeneralizedPermutation, lambda: &AdmissibleVector) -> Result<OneCylinder> {
    read_one_cylinder(&SquareTiledCover::build(gp, lambda)?.rotate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genperm::SymmetryGroup;
    use crate::strata::singularity_pattern;
    use crate::suspension::spectrum::separatrix_spectrum;

    fn setup(s: &str, lengths: Option<Vec<u64>>) -> (GeneralizedPermutation, AdmissibleVector) {
        let gp: GeneralizedPermutation = s.parse().unwrap();
        let lambda = match lengths {
            Some(l) => AdmissibleVector::new(&gp, l).unwrap(),
            None => AdmissibleVector::all_ones(&gp).unwrap(),
        };
        (gp, lambda)
    }

    #[test]
    fn twelve_one_has_two_cylinders() {
        let (gp, lambda) = setup("1 2 3 4 2 5 6 / 1 4 5 7 6 7 3", None);
        let d = cylinder_decomposition(&gp, &lambda).unwrap();
        assert_eq!(d.cylinders.len(), 2);
        assert_eq!(d.cylinders.iter().filter(|c| c.simple).count(), 1);
        assert_eq!(d.total_area(), 7);
        assert_eq!(head_cylinder_angle(&gp, &lambda).unwrap().s, 2);
    }

    #[test]
    fn boundaries_are_saddle_connections() {
        let (gp, lambda) = setup("1 2 3 4 3 5 4 / 6 6 1 5 2", Some(vec![3, 1, 2, 2, 1, 4]));
        let d = cylinder_decomposition(&gp, &lambda).unwrap();
        let sp = separatrix_spectrum(&gp, &lambda).unwrap();
        assert!(d.boundaries_match(&sp.segments));
        assert_eq!(d.total_area(), lambda.width());
    }

    #[test]
    fn torus_turns_into_itself() {
        let (gp, lambda) = setup("1 2 / 2 1", None);
        let v = vertical_permutation(&gp, &lambda).unwrap();
        assert!(v.permutation.equivalent(&gp, SymmetryGroup::default()));
    }

    #[test]
    fn vertical_permutation_keeps_the_pattern() {
        let (gp, lambda) = setup("5 2 5 3 4 2 / 1 3 1 4", Some(vec![1, 1, 1, 1, 2]));
        let v = vertical_permutation(&gp, &lambda).unwrap();
        assert_eq!(v.permutation.kind(), (5, 5));
        assert_eq!(singularity_pattern(&v.permutation), singularity_pattern(&gp));
    }

    #[test]
    fn appendix_angles() {
        for (s, expected) in [
            ("3 4 0 0 1 2 / 3 5 2 1 4 5", 1),
            ("2 3 4 0 0 1 / 2 4 5 1 3 5", 2),
            ("1 2 3 4 5 6 5 / 1 4 7 3 7 2 6", 4),
            ("1 2 3 4 3 5 6 / 1 5 7 4 2 6 7", 6),
        ] {
            let (gp, lambda) = setup(s, None);
            assert_eq!(head_cylinder_angle(&gp, &lambda).unwrap().s, expected, "{s}");
        }
    }
}
