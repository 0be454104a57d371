use std::collections::BTreeSet;

use serde::Serialize;

use super::graph::IncidenceGraph;
use super::polygon::weak_polygon_gonality;
use super::{IncidenceGeometry, VerifiedGp};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SubKind {
    /// A (possibly thin) subpolygon of the ambient gonality.
    pub is_sub: bool,
    pub is_full: bool,
    pub is_ideal: bool,
    pub is_thin: bool,
}

/// A substructure of a verified polygon, recorded by ambient indices.
///
/// `line_points[i]` lists the ambient points the substructure puts on its
/// `i`-th line `lines[i]`; it may be a proper subset of the ambient points
/// of that line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubGpRecord {
    pub points: Vec<usize>,
    pub lines: Vec<usize>,
    pub line_points: Vec<Vec<usize>>,
    pub kind: SubKind,
}

impl SubGpRecord {
    /// Classifies the substructure with the given points, lines and flags.
    /// Every argument refers to ambient indices and must be consistent with
    /// the ambient incidence.
    pub fn from_parts(
        ambient: &VerifiedGp,
        points: Vec<usize>,
        lines: Vec<usize>,
        line_points: Vec<Vec<usize>>,
    ) -> Self {
        let geom = ambient.geometry();
        let local: std::collections::HashMap<usize, usize> =
            points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let local_lines: Vec<Vec<usize>> = line_points
            .iter()
            .map(|pts| pts.iter().map(|p| local[p]).collect())
            .collect();
        let graph = IncidenceGraph::from_line_points(points.len(), &local_lines);
        let gonality = weak_polygon_gonality(&graph);
        let is_sub = gonality == Some(ambient.gonality());
        let thick = (0..graph.num_vertices()).all(|v| graph.degree(v) >= 3);

        let is_full = lines
            .iter()
            .zip(&line_points)
            .all(|(&l, pts)| pts.len() == geom.points_on(l).len());
        let mut degree = vec![0usize; points.len()];
        for pts in &local_lines {
            for &p in pts {
                degree[p] += 1;
            }
        }
        let is_ideal = points
            .iter()
            .enumerate()
            .all(|(i, &p)| degree[i] == geom.lines_through(p).len());
        SubGpRecord {
            points,
            lines,
            line_points,
            kind: SubKind {
                is_sub,
                is_full,
                is_ideal,
                is_thin: is_sub && !thick,
            },
        }
    }

    /// The substructure with ambient incidence restricted to the chosen
    /// points and lines.
    pub fn induced(ambient: &VerifiedGp, points: &BTreeSet<usize>, lines: &BTreeSet<usize>) -> Self {
        let line_points = lines
            .iter()
            .map(|&l| {
                let mut pts: Vec<usize> = ambient
                    .points_on(l)
                    .iter()
                    .copied()
                    .filter(|p| points.contains(p))
                    .collect();
                pts.sort_unstable();
                pts
            })
            .collect();
        Self::from_parts(
            ambient,
            points.iter().copied().collect(),
            lines.iter().copied().collect(),
            line_points,
        )
    }

    /// Materializes the substructure with the ambient identifiers. Fails
    /// when two of its lines carry the same point set.
    pub fn to_geometry(&self, ambient: &IncidenceGeometry) -> Result<IncidenceGeometry> {
        let local: std::collections::HashMap<usize, usize> =
            self.points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        IncidenceGeometry::from_indices(
            self.points
                .iter()
                .map(|&p| ambient.point_name(p).to_string())
                .collect(),
            self.lines
                .iter()
                .map(|&l| ambient.line_name(l).to_string())
                .collect(),
            self.line_points
                .iter()
                .map(|pts| pts.iter().map(|p| local[p]).collect())
                .collect(),
        )
    }

    pub fn point_set(&self) -> BTreeSet<usize> {
        self.points.iter().copied().collect()
    }

    pub fn line_set(&self) -> BTreeSet<usize> {
        self.lines.iter().copied().collect()
    }

    /// Same points and same lines.
    pub fn same_elements(&self, other: &SubGpRecord) -> bool {
        self.point_set() == other.point_set() && self.line_set() == other.line_set()
    }

    /// Points and lines contained in those of `other`.
    pub fn contained_in(&self, other: &SubGpRecord) -> bool {
        self.point_set().is_subset(&other.point_set())
            && self.line_set().is_subset(&other.line_set())
    }
}

/// Least substructure containing the seed that is closed under: a line
/// brings in all of its ambient points, and two points on a common ambient
/// line bring in that line.
pub fn generated_subgeometry(
    gp: &VerifiedGp,
    seed_points: &[usize],
    seed_lines: &[usize],
) -> Result<SubGpRecord> {
    if seed_points.is_empty() && seed_lines.is_empty() {
        return Err(Error::InvalidGeometry("empty seed".into()));
    }
    let geom = gp.geometry();
    if let Some(&p) = seed_points.iter().find(|&&p| p >= geom.num_points()) {
        return Err(Error::UnknownPoint(format!("#{p}")));
    }
    if let Some(&l) = seed_lines.iter().find(|&&l| l >= geom.num_lines()) {
        return Err(Error::UnknownLine(format!("#{l}")));
    }
    let mut points: BTreeSet<usize> = seed_points.iter().copied().collect();
    let mut lines: BTreeSet<usize> = seed_lines.iter().copied().collect();
    loop {
        let before = (points.len(), lines.len());
        for &l in &lines {
            points.extend(geom.points_on(l).iter().copied());
        }
        let pts: Vec<usize> = points.iter().copied().collect();
        for (i, &p) in pts.iter().enumerate() {
            for &q in &pts[i + 1..] {
                if let Some(l) = geom.join(p, q) {
                    lines.insert(l);
                }
            }
        }
        if (points.len(), lines.len()) == before {
            break;
        }
    }
    Ok(SubGpRecord::induced(gp, &points, &lines))
}

/// Locates `sub` inside `ambient` by identifiers and classifies it.
///
/// A line of `sub` is matched to the ambient line of the same name when that
/// line carries all of its points, otherwise to the unique ambient line
/// through its points (at least two are then required).
pub fn classify_sub(sub: &IncidenceGeometry, ambient: &VerifiedGp) -> Result<SubGpRecord> {
    let amb = ambient.geometry();
    let points: Vec<usize> = sub
        .point_names()
        .iter()
        .map(|n| {
            amb.point_id(n)
                .map_err(|_| Error::NotContained(format!("point `{n}` is not in the ambient")))
        })
        .collect::<Result<_>>()?;
    let mut lines = Vec::with_capacity(sub.num_lines());
    let mut line_points = Vec::with_capacity(sub.num_lines());
    for l in 0..sub.num_lines() {
        let pts: Vec<usize> = sub.points_on(l).iter().map(|&p| points[p]).collect();
        let carries = |m: usize| pts.iter().all(|&p| amb.incident(p, m));
        let by_name = amb.line_id(sub.line_name(l)).ok().filter(|&m| carries(m));
        let target = match by_name {
            Some(m) => m,
            None => {
                let candidates: Vec<usize> = match pts.first() {
                    Some(&p0) => amb
                        .lines_through(p0)
                        .iter()
                        .copied()
                        .filter(|&m| carries(m))
                        .collect(),
                    None => Vec::new(),
                };
                if candidates.len() != 1 {
                    return Err(Error::NotContained(format!(
                        "line `{}` matches {} ambient lines",
                        sub.line_name(l),
                        candidates.len()
                    )));
                }
                candidates[0]
            }
        };
        if lines.contains(&target) {
            return Err(Error::NotContained(format!(
                "two lines of the substructure map to ambient line `{}`",
                amb.line_name(target)
            )));
        }
        lines.push(target);
        let mut sorted = pts;
        sorted.sort_unstable();
        line_points.push(sorted);
    }
    Ok(SubGpRecord::from_parts(ambient, points, lines, line_points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{fano_plane, verify_gp};

    #[test]
    fn empty_seed_rejected() {
        let gp = verify_gp(&fano_plane()).unwrap();
        assert!(generated_subgeometry(&gp, &[], &[]).is_err());
    }

    #[test]
    fn closure_of_everything() {
        let gp = verify_gp(&fano_plane()).unwrap();
        let all: Vec<usize> = (0..7).collect();
        let rec = generated_subgeometry(&gp, &all, &[]).unwrap();
        assert_eq!(rec.points.len(), 7);
        assert_eq!(rec.lines.len(), 7);
        assert!(rec.kind.is_sub && rec.kind.is_full && rec.kind.is_ideal);
    }

    #[test]
    fn triangle_generates_the_fano_plane() {
        let gp = verify_gp(&fano_plane()).unwrap();
        // points 1, 2, 3 are not collinear
        let rec = generated_subgeometry(&gp, &[0, 1, 2], &[]).unwrap();
        assert_eq!(rec.points, (0..7).collect::<Vec<_>>());
        assert_eq!(rec.lines.len(), 7);
    }

    #[test]
    fn ambient_classifies_as_everything() {
        let gp = verify_gp(&fano_plane()).unwrap();
        let rec = classify_sub(gp.geometry(), &gp).unwrap();
        assert_eq!(
            rec.kind,
            SubKind {
                is_sub: true,
                is_full: true,
                is_ideal: true,
                is_thin: false
            }
        );
    }

    #[test]
    fn foreign_point_is_a_containment_violation() {
        let gp = verify_gp(&fano_plane()).unwrap();
        let sub = IncidenceGeometry::new(["1", "99"], [("L".to_string(), vec!["1", "99"])]).unwrap();
        assert!(matches!(classify_sub(&sub, &gp), Err(Error::NotContained(_))));
    }

    #[test]
    fn partial_line_is_not_full() {
        let gp = verify_gp(&fano_plane()).unwrap();
        let sub = IncidenceGeometry::new(["1", "2"], [("x".to_string(), vec!["1", "2"])]).unwrap();
        let rec = classify_sub(&sub, &gp).unwrap();
        assert!(!rec.kind.is_full);
        assert!(!rec.kind.is_sub);
        assert_eq!(rec.lines, vec![0]);
    }
}
