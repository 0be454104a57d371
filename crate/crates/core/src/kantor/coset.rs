use std::collections::HashMap;

use super::family::{verify_kantor, KantorFamily};
use crate::error::{Error, Result};
use crate::groups::{format_vector, Vector};
use crate::incidence::{GeomMorphism, IncidenceGeometry};

/// Identifier of the translation point.
pub const INFINITY: &str = "INF";

/// Identifier of the line symbol `[A_i]`.
pub fn line_symbol(i: usize) -> String {
    format!("[A_{i}]")
}

/// The coset geometry of a Kantor family, with the index bookkeeping needed
/// to act on it by translations.
#[derive(Debug, Clone)]
pub struct CosetGeometry {
    pub geometry: IncidenceGeometry,
    /// The point `∞`.
    pub x: usize,
    /// The zero element of `T`, an affine point.
    pub z: usize,
    family: KantorFamily,
    star_points: Vec<HashMap<Vector, usize>>,
    member_lines: Vec<HashMap<Vector, usize>>,
    symbol_lines: Vec<usize>,
}

impl CosetGeometry {
    pub fn family(&self) -> &KantorFamily {
        &self.family
    }

    /// Point index of the group element `g` (its lexicographic index).
    pub fn element_point(&self, g: &[u32]) -> usize {
        self.family.group().index_of(g)
    }

    /// Point `A_i* + g`.
    pub fn star_coset_point(&self, i: usize, g: &[u32]) -> usize {
        let rep = self.family.members()[i].a_star.coset_rep(g);
        self.star_points[i][&rep]
    }

    /// Line `A_i + g`.
    pub fn coset_line(&self, i: usize, g: &[u32]) -> usize {
        let rep = self.family.members()[i].a.coset_rep(g);
        self.member_lines[i][&rep]
    }

    /// Line `[A_i]`.
    pub fn symbol_line(&self, i: usize) -> usize {
        self.symbol_lines[i]
    }

    /// The translation by `g`, as a map on points and lines.
    pub fn translation(&self, g: &[u32]) -> GeomMorphism {
        let group = self.family.group();
        let mut point_map = vec![usize::MAX; self.geometry.num_points()];
        let mut line_map = vec![usize::MAX; self.geometry.num_lines()];
        for h in group.elements() {
            let image = group.add(&h, g);
            point_map[group.index_of(&h)] = group.index_of(&image);
        }
        for i in 0..self.family.len() {
            for (rep, &pt) in &self.star_points[i] {
                point_map[pt] = self.star_coset_point(i, &group.add(rep, g));
            }
            for (rep, &line) in &self.member_lines[i] {
                line_map[line] = self.coset_line(i, &group.add(rep, g));
            }
            line_map[self.symbol_lines[i]] = self.symbol_lines[i];
        }
        point_map[self.x] = self.x;
        GeomMorphism { point_map, line_map }
    }
}

/// Builds the coset incidence structure of a verified Kantor family.
///
/// Points: the elements of `T`, the cosets `A_i* + g`, and `∞`. Lines: the
/// cosets `A_i + g` and the symbols `[A_i]`. An element lies on the cosets
/// `A_i + h` containing it; `A_i + g` meets `A_i* + g`; `A_i* + g` lies on
/// `[A_i]`; `∞` lies on every `[A_i]`.
pub fn coset_geometry(kf: &KantorFamily) -> Result<CosetGeometry> {
    let report = verify_kantor(kf)?;
    if let Some(fail) = report.first_failure() {
        let detail = fail
            .witness
            .as_ref()
            .map_or_else(String::new, |w| format!(": {w}"));
        return Err(Error::KantorViolation(format!("{}{detail}", fail.axiom.name())));
    }
    let group = kf.group();
    let mut point_names: Vec<String> = group.elements().map(|g| format_vector(&g)).collect();
    let mut star_points = Vec::with_capacity(kf.len());
    for (i, m) in kf.members().iter().enumerate() {
        let mut map = HashMap::new();
        for rep in m.a_star.coset_reps() {
            map.insert(rep.clone(), point_names.len());
            point_names.push(format!("A_{i}*+{}", format_vector(&rep)));
        }
        star_points.push(map);
    }
    let x = point_names.len();
    point_names.push(INFINITY.to_string());

    let mut line_names = Vec::new();
    let mut line_points = Vec::new();
    let mut member_lines = Vec::with_capacity(kf.len());
    for (i, m) in kf.members().iter().enumerate() {
        let mut map = HashMap::new();
        for rep in m.a.coset_reps() {
            map.insert(rep.clone(), line_names.len());
            line_names.push(format!("A_{i}+{}", format_vector(&rep)));
            let mut pts: Vec<usize> = m
                .a
                .coset_members(&rep)?
                .iter()
                .map(|h| group.index_of(h))
                .collect();
            pts.push(star_points[i][&m.a_star.coset_rep(&rep)]);
            line_points.push(pts);
        }
        member_lines.push(map);
    }
    let mut symbol_lines = Vec::with_capacity(kf.len());
    for (i, m) in kf.members().iter().enumerate() {
        symbol_lines.push(line_names.len());
        line_names.push(line_symbol(i));
        let mut pts: Vec<usize> = m
            .a_star
            .coset_reps()
            .iter()
            .map(|rep| star_points[i][rep])
            .collect();
        pts.push(x);
        line_points.push(pts);
    }
    let geometry = IncidenceGeometry::from_indices(point_names, line_names, line_points)?;
    Ok(CosetGeometry {
        geometry,
        x,
        z: group.index_of(&group.zero()),
        family: kf.clone(),
        star_points,
        member_lines,
        symbol_lines,
    })
}
