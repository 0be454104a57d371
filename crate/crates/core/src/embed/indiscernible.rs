use serde::Serialize;

use super::endo::MAX_SEARCH_POINTS;
use crate::error::{Error, Result};
use crate::incidence::{generated_subgeometry, pinned_isomorphisms, GeomMorphism, Pin, SearchMode, SubGpRecord, VerifiedGp};

/// Whether no two of the lines share a point.
pub fn mutually_skew(gp: &VerifiedGp, lines: &[usize]) -> bool {
    lines
        .iter()
        .enumerate()
        .all(|(i, &a)| lines[i + 1..].iter().all(|&b| a != b && gp.meet(a, b).is_none()))
}

/// An ordered list of mutually skew lines, none meeting a base line `L`.
#[derive(Debug, Clone)]
pub struct LineSequence {
    gp: VerifiedGp,
    base_line: usize,
    lines: Vec<usize>,
}

impl LineSequence {
    pub fn new(gp: VerifiedGp, base_line: usize, lines: Vec<usize>) -> Result<Self> {
        let nl = gp.num_lines();
        if let Some(&l) = std::iter::once(&base_line).chain(&lines).find(|&&l| l >= nl) {
            return Err(Error::UnknownLine(format!("#{l}")));
        }
        if let Some(&l) = lines.iter().find(|&&l| l == base_line || gp.meet(l, base_line).is_some()) {
            return Err(Error::InvalidSequence(format!(
                "line {} meets the base line {}",
                gp.line_name(l),
                gp.line_name(base_line)
            )));
        }
        if !mutually_skew(&gp, &lines) {
            return Err(Error::InvalidSequence("lines are not mutually skew".into()));
        }
        Ok(Self { gp, base_line, lines })
    }

    pub fn gp(&self) -> &VerifiedGp {
        &self.gp
    }

    pub fn base_line(&self) -> usize {
        self.base_line
    }

    pub fn lines(&self) -> &[usize] {
        &self.lines
    }

    /// The points of the base line.
    pub fn base_points(&self) -> &[usize] {
        self.gp.points_on(self.base_line)
    }
}

/// An automorphism fixing the base line pointwise and carrying `from` onto
/// `to`, lines given by ambient index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleWitness {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub map: GeomMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndiscernibleVerdict {
    pub indiscernible: bool,
    pub max_len: usize,
    pub witnesses: Vec<TupleWitness>,
    /// A pair of tuples with no automorphism between them.
    pub failure: Option<(Vec<usize>, Vec<usize>)>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// An automorphism fixing the points of `L` and mapping `from[i] ↦ to[i]`.
pub fn tuple_automorphism(seq: &LineSequence, from: &[usize], to: &[usize]) -> Option<GeomMorphism> {
    let g = seq.gp.geometry();
    let pins: Vec<Pin> = seq
        .base_points()
        .iter()
        .map(|&p| Pin::Point(p, p))
        .chain(from.iter().zip(to).map(|(&a, &b)| Pin::Line(a, b)))
        .collect();
    pinned_isomorphisms(g, g, &pins, SearchMode::First).into_iter().next()
}

/// Checks that any two increasing tuples of the sequence of equal length
/// at most `max_len` are related by an automorphism fixing `L` pointwise.
///
/// Each tuple is compared with the first tuple of its length; the relation
/// is an equivalence, so this covers every pair.
pub fn indiscernible_check(seq: &LineSequence, max_len: usize) -> Result<IndiscernibleVerdict> {
    if max_len > seq.lines.len() {
        return Err(Error::InvalidSequence(format!(
            "max_len {max_len} exceeds the {} lines of the sequence",
            seq.lines.len()
        )));
    }
    if seq.gp.num_points() > MAX_SEARCH_POINTS {
        return Err(Error::GuardExceeded {
            what: "points for automorphism search",
            size: seq.gp.num_points(),
            limit: MAX_SEARCH_POINTS,
        });
    }
    let mut witnesses = Vec::new();
    for k in 1..=max_len {
        let tuples: Vec<Vec<usize>> = combinations(seq.lines.len(), k)
            .into_iter()
            .map(|idx| idx.into_iter().map(|i| seq.lines[i]).collect())
            .collect();
        let first = &tuples[0];
        for t in &tuples {
            match tuple_automorphism(seq, first, t) {
                Some(map) => witnesses.push(TupleWitness {
                    from: first.clone(),
                    to: t.clone(),
                    map,
                }),
                None => {
                    return Ok(IndiscernibleVerdict {
                        indiscernible: false,
                        max_len,
                        witnesses,
                        failure: Some((first.clone(), t.clone())),
                    })
                }
            }
        }
    }
    Ok(IndiscernibleVerdict {
        indiscernible: true,
        max_len,
        witnesses,
        failure: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutsideLine {
    pub line: usize,
    /// Points of the line lying in the generated subgeometry.
    pub common_points: Vec<usize>,
    /// The line itself belongs to the generated subgeometry.
    pub in_generated: bool,
}

impl OutsideLine {
    pub fn disjoint(&self) -> bool {
        self.common_points.is_empty() && !self.in_generated
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DisjointnessReport {
    pub generated: SubGpRecord,
    pub outside: Vec<OutsideLine>,
}

impl DisjointnessReport {
    pub fn all_disjoint(&self) -> bool {
        self.outside.iter().all(OutsideLine::disjoint)
    }
}

/// Generates from `L` and the sequence lines at positions `subset`, then
/// reports how each remaining sequence line meets the result.
pub fn generated_disjointness_probe(seq: &LineSequence, subset: &[usize]) -> Result<DisjointnessReport> {
    if let Some(&i) = subset.iter().find(|&&i| i >= seq.lines.len()) {
        return Err(Error::InvalidSequence(format!("index {i} out of range")));
    }
    let mut seed: Vec<usize> = subset.iter().map(|&i| seq.lines[i]).collect();
    seed.push(seq.base_line);
    let generated = generated_subgeometry(&seq.gp, &[], &seed)?;
    let points = generated.point_set();
    let lines = generated.line_set();
    let outside = (0..seq.lines.len())
        .filter(|i| !subset.contains(i))
        .map(|i| {
            let line = seq.lines[i];
            OutsideLine {
                line,
                common_points: seq
                    .gp
                    .points_on(line)
                    .iter()
                    .copied()
                    .filter(|p| points.contains(p))
                    .collect(),
                in_generated: lines.contains(&line),
            }
        })
        .collect();
    Ok(DisjointnessReport { generated, outside })
}
