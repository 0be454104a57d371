use std::fmt;

use serde::Serialize;

use super::graph::{IncidenceGraph, Length};
use super::IncidenceGeometry;

/// A geometry certified to be a thick generalized `n`-gon of order `(s, t)`.
#[derive(Debug, Clone)]
pub struct VerifiedGp {
    geom: IncidenceGeometry,
    gonality: usize,
    s: usize,
    t: usize,
    graph: IncidenceGraph,
}

impl VerifiedGp {
    pub fn geometry(&self) -> &IncidenceGeometry {
        &self.geom
    }

    pub fn into_geometry(self) -> IncidenceGeometry {
        self.geom
    }

    pub fn gonality(&self) -> usize {
        self.gonality
    }

    /// `(s, t)`: `s + 1` points per line, `t + 1` lines per point.
    pub fn order(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    pub fn incidence_graph(&self) -> &IncidenceGraph {
        &self.graph
    }

    pub fn dual(&self) -> VerifiedGp {
        verify_gp(&self.geom.dual().expect("points of a polygon have distinct pencils")).expect("the dual of a generalized polygon is one")
    }
}

impl std::ops::Deref for VerifiedGp {
    type Target = IncidenceGeometry;

    fn deref(&self) -> &IncidenceGeometry {
        &self.geom
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    Disconnected,
    /// Line sizes or point degrees are not constant.
    NoOrder {
        line_sizes: Vec<usize>,
        point_degrees: Vec<usize>,
    },
    /// An ordinary k-gon with k < n exists.
    AxiomI { girth: Length, gonality: usize },
    /// Some pair of elements lies on no ordinary n-gon.
    AxiomII { girth: Length, diameter: Length },
    /// Thin: fewer than three points on some line or lines through some point.
    AxiomIII { min_line_size: usize, min_point_degree: usize },
    GonalityTooSmall { gonality: usize },
    OddGonalityUnequalOrder { gonality: usize, s: usize, t: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => f.write_str("empty structure"),
            Violation::Disconnected => f.write_str("incidence graph is disconnected"),
            Violation::NoOrder {
                line_sizes,
                point_degrees,
            } => write!(
                f,
                "no order: line sizes {line_sizes:?}, point degrees {point_degrees:?}"
            ),
            Violation::AxiomI { girth, gonality } => write!(
                f,
                "axiom (i): girth {girth} < {} contains a short ordinary polygon",
                2 * gonality
            ),
            Violation::AxiomII { girth, diameter } => write!(
                f,
                "axiom (ii): girth {girth} is not twice the diameter {diameter}"
            ),
            Violation::AxiomIII {
                min_line_size,
                min_point_degree,
            } => write!(
                f,
                "axiom (iii): thin, s+1 = {min_line_size}, t+1 = {min_point_degree}"
            ),
            Violation::GonalityTooSmall { gonality } => {
                write!(f, "gonality {gonality} is below 3")
            }
            Violation::OddGonalityUnequalOrder { gonality, s, t } => {
                write!(f, "odd gonality {gonality} with s = {s} != t = {t}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub girth: Option<Length>,
    pub diameter: Option<Length>,
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn has(&self, pred: impl Fn(&Violation) -> bool) -> bool {
        self.violations.iter().any(pred)
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

fn distinct_sorted(values: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = values.collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Checks the generalized polygon axioms through the incidence graph:
/// connected, girth twice the diameter `n >= 3`, constant line sizes and
/// point degrees, and thickness.
pub fn verify_gp(geom: &IncidenceGeometry) -> Result<VerifiedGp, ViolationReport> {
    let graph = IncidenceGraph::of(geom);
    let (girth, diameter) = match graph.girth_and_diameter() {
        Ok(gd) => gd,
        Err(_) => {
            return Err(ViolationReport {
                girth: None,
                diameter: None,
                violations: vec![Violation::Empty],
            })
        }
    };
    let mut violations = Vec::new();

    let line_sizes = distinct_sorted((0..geom.num_lines()).map(|l| geom.points_on(l).len()));
    let point_degrees =
        distinct_sorted((0..geom.num_points()).map(|p| geom.lines_through(p).len()));
    if line_sizes.len() != 1 || point_degrees.len() != 1 {
        violations.push(Violation::NoOrder {
            line_sizes: line_sizes.clone(),
            point_degrees: point_degrees.clone(),
        });
    }

    let gonality = match diameter {
        Length::Infinite => {
            violations.push(Violation::Disconnected);
            None
        }
        Length::Finite(n) => Some(n),
    };
    if let Some(n) = gonality {
        if n < 3 {
            violations.push(Violation::GonalityTooSmall { gonality: n });
        }
        if matches!(girth, Length::Finite(g) if g < 2 * n) {
            violations.push(Violation::AxiomI { girth, gonality: n });
        }
        if girth != Length::Finite(2 * n) {
            violations.push(Violation::AxiomII { girth, diameter });
        }
    }

    let min_line_size = line_sizes.first().copied().unwrap_or(0);
    let min_point_degree = point_degrees.first().copied().unwrap_or(0);
    if min_line_size < 3 || min_point_degree < 3 {
        violations.push(Violation::AxiomIII {
            min_line_size,
            min_point_degree,
        });
    }

    if violations.is_empty() {
        let n = gonality.expect("connected");
        let (s, t) = (min_line_size - 1, min_point_degree - 1);
        if n % 2 == 1 && s != t {
            violations.push(Violation::OddGonalityUnequalOrder { gonality: n, s, t });
        } else {
            return Ok(VerifiedGp {
                geom: geom.clone(),
                gonality: n,
                s,
                t,
                graph,
            });
        }
    }
    Err(ViolationReport {
        girth: Some(girth),
        diameter: Some(diameter),
        violations,
    })
}

/// Gonality of a possibly thin generalized polygon: connected, girth twice
/// the diameter, diameter at least 3 and every element on at least two
/// others. Thin structures such as grids and ordinary polygons qualify.
pub fn weak_polygon_gonality(graph: &IncidenceGraph) -> Option<usize> {
    if graph.num_vertices() == 0 || (0..graph.num_vertices()).any(|v| graph.degree(v) < 2) {
        return None;
    }
    match graph.girth_and_diameter().ok()? {
        (Length::Finite(g), Length::Finite(d)) if d >= 3 && g == 2 * d => Some(d),
        _ => None,
    }
}

/// Direct check of axiom (ii) for gonality `n`: every pair of elements lies
/// on a common cycle of length `2n` in the incidence graph. Only run for at
/// most 50 elements; returns `None` above that.
pub fn axiom_ii_by_cycles(geom: &IncidenceGeometry, n: usize) -> Option<bool> {
    let graph = IncidenceGraph::of(geom);
    let nv = graph.num_vertices();
    if nv > 50 {
        return None;
    }
    let len = 2 * n;
    for root in 0..nv {
        let mut covered = vec![false; nv];
        let mut path = vec![root];
        let mut on_path = vec![false; nv];
        on_path[root] = true;
        cycles_through(&graph, root, len, &mut path, &mut on_path, &mut covered);
        if covered.iter().enumerate().any(|(v, &c)| v != root && !c) {
            return Some(false);
        }
    }
    Some(true)
}

fn cycles_through(
    graph: &IncidenceGraph,
    root: usize,
    len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    covered: &mut [bool],
) {
    let last = *path.last().expect("path starts at root");
    if path.len() == len {
        if graph.neighbors(last).contains(&root) {
            for &v in path.iter() {
                covered[v] = true;
            }
        }
        return;
    }
    for &w in graph.neighbors(last) {
        if !on_path[w] {
            on_path[w] = true;
            path.push(w);
            cycles_through(graph, root, len, path, on_path, covered);
            path.pop();
            on_path[w] = false;
        }
    }
}
