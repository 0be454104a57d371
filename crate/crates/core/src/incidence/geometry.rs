use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite point-line incidence structure.
///
/// Points and lines are addressed by dense indices in declaration order and
/// carry string identifiers. The flag relation is stored twice: as the
/// point list of every line (in the order it was declared) and as the
/// sorted line list of every point.
#[derive(Debug, Clone)]
pub struct IncidenceGeometry {
    point_names: Vec<String>,
    line_names: Vec<String>,
    line_points: Vec<Vec<usize>>,
    point_lines: Vec<Vec<usize>>,
    point_index: HashMap<String, usize>,
    line_index: HashMap<String, usize>,
}

/// Identifier given to the `i`-th line when a file does not name its lines.
pub fn default_line_name(i: usize) -> String {
    format!("L{i}")
}

impl IncidenceGeometry {
    /// Builds a geometry from named points and named lines given as lists
    /// of point identifiers.
    pub fn new<P, L, Q>(points: P, lines: L) -> Result<Self>
    where
        P: IntoIterator,
        P::Item: Into<String>,
        L: IntoIterator<Item = (String, Q)>,
        Q: IntoIterator,
        Q::Item: AsRef<str>,
    {
        let point_names: Vec<String> = points.into_iter().map(Into::into).collect();
        let mut point_index = HashMap::with_capacity(point_names.len());
        for (i, name) in point_names.iter().enumerate() {
            if point_index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidGeometry(format!("duplicate point `{name}`")));
            }
        }
        let mut line_names = Vec::new();
        let mut line_points = Vec::new();
        for (name, pts) in lines {
            let mut idx = Vec::new();
            for p in pts {
                let p = p.as_ref();
                let i = *point_index.get(p).ok_or_else(|| {
                    Error::InvalidGeometry(format!("line `{name}` references undeclared point `{p}`"))
                })?;
                idx.push(i);
            }
            line_names.push(name);
            line_points.push(idx);
        }
        Self::from_indices(point_names, line_names, line_points)
    }

    /// Builds a geometry from index data. Every other constructor ends here,
    /// so this is where the type invariants are enforced.
    pub fn from_indices(
        point_names: Vec<String>,
        line_names: Vec<String>,
        line_points: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if line_names.len() != line_points.len() {
            return Err(Error::InvalidGeometry(
                "line names and line point lists differ in length".into(),
            ));
        }
        let np = point_names.len();
        let mut point_index = HashMap::with_capacity(np);
        for (i, name) in point_names.iter().enumerate() {
            if point_index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidGeometry(format!("duplicate point `{name}`")));
            }
        }
        let mut line_index = HashMap::with_capacity(line_names.len());
        for (i, name) in line_names.iter().enumerate() {
            if line_index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidGeometry(format!("duplicate line `{name}`")));
            }
        }
        let mut point_lines = vec![Vec::new(); np];
        let mut seen_sets: HashMap<Vec<usize>, usize> = HashMap::new();
        for (l, pts) in line_points.iter().enumerate() {
            let mut sorted = pts.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGeometry(format!(
                    "line `{}` lists a point twice",
                    line_names[l]
                )));
            }
            if let Some(&p) = sorted.iter().find(|&&p| p >= np) {
                return Err(Error::InvalidGeometry(format!(
                    "line `{}` references point index {p} out of range",
                    line_names[l]
                )));
            }
            if let Some(other) = seen_sets.insert(sorted.clone(), l) {
                return Err(Error::InvalidGeometry(format!(
                    "lines `{}` and `{}` carry the same point set",
                    line_names[other], line_names[l]
                )));
            }
            for &p in &sorted {
                point_lines[p].push(l);
            }
        }
        Ok(Self {
            point_names,
            line_names,
            line_points,
            point_lines,
            point_index,
            line_index,
        })
    }

    pub fn num_points(&self) -> usize {
        self.point_names.len()
    }

    pub fn num_lines(&self) -> usize {
        self.line_names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.point_names.is_empty() && self.line_names.is_empty()
    }

    pub fn point_name(&self, p: usize) -> &str {
        &self.point_names[p]
    }

    pub fn line_name(&self, l: usize) -> &str {
        &self.line_names[l]
    }

    pub fn point_names(&self) -> &[String] {
        &self.point_names
    }

    pub fn line_names(&self) -> &[String] {
        &self.line_names
    }

    pub fn point_id(&self, name: &str) -> Result<usize> {
        self.point_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn line_id(&self, name: &str) -> Result<usize> {
        self.line_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLine(name.to_string()))
    }

    /// Points on line `l`, in declaration order.
    pub fn points_on(&self, l: usize) -> &[usize] {
        &self.line_points[l]
    }

    /// Lines through point `p`, ascending.
    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    pub fn line_point_lists(&self) -> &[Vec<usize>] {
        &self.line_points
    }

    pub fn incident(&self, p: usize, l: usize) -> bool {
        self.point_lines[p].binary_search(&l).is_ok()
    }

    /// The line joining two distinct points, if any (lowest index first).
    pub fn join(&self, p: usize, q: usize) -> Option<usize> {
        if p == q {
            return None;
        }
        let (a, b) = (&self.point_lines[p], &self.point_lines[q]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Some(a[i]),
            }
        }
        None
    }

    /// The common point of two distinct lines, if any.
    pub fn meet(&self, l: usize, m: usize) -> Option<usize> {
        if l == m {
            return None;
        }
        self.line_points[l]
            .iter()
            .copied()
            .filter(|&p| self.incident(p, m))
            .min()
    }

    pub fn collinear(&self, p: usize, q: usize) -> bool {
        self.join(p, q).is_some()
    }

    pub fn num_flags(&self) -> usize {
        self.line_points.iter().map(Vec::len).sum()
    }

    /// Flag relation as a sorted set of (point, line) pairs.
    pub fn flag_set(&self) -> BTreeSet<(usize, usize)> {
        self.line_points
            .iter()
            .enumerate()
            .flat_map(|(l, pts)| pts.iter().map(move |&p| (p, l)))
            .collect()
    }

    /// Points and lines exchanged, flag relation transposed. Line `i` of the
    /// dual is point `i` of `self`, and vice versa.
    ///
    /// Fails when two points lie on exactly the same lines, since they would
    /// become two lines carrying the same point set.
    pub fn dual(&self) -> Result<IncidenceGeometry> {
        Self::from_indices(
            self.line_names.clone(),
            self.point_names.clone(),
            self.point_lines.clone(),
        )
        .map_err(|_| {
            let mut seen: HashMap<&[usize], usize> = HashMap::new();
            let pair = self
                .point_lines
                .iter()
                .enumerate()
                .find_map(|(p, ls)| seen.insert(ls, p).map(|q| (q, p)));
            match pair {
                Some((q, p)) => Error::InvalidGeometry(format!(
                    "points `{}` and `{}` lie on the same lines; the dual would repeat a line",
                    self.point_names[q], self.point_names[p]
                )),
                None => Error::InvalidGeometry("dual is not well formed".into()),
            }
        })
    }

    pub fn to_file(&self) -> GeometryFile {
        let defaults = self
            .line_names
            .iter()
            .enumerate()
            .all(|(i, n)| *n == default_line_name(i));
        GeometryFile {
            points: self.point_names.clone(),
            lines: self
                .line_points
                .iter()
                .map(|pts| pts.iter().map(|&p| self.point_names[p].clone()).collect())
                .collect(),
            line_names: if defaults {
                None
            } else {
                Some(self.line_names.clone())
            },
        }
    }

    pub fn from_file(file: GeometryFile) -> Result<Self> {
        let names = match file.line_names {
            Some(names) => {
                if names.len() != file.lines.len() {
                    return Err(Error::Format(format!(
                        "{} line names for {} lines",
                        names.len(),
                        file.lines.len()
                    )));
                }
                names
            }
            None => (0..file.lines.len()).map(default_line_name).collect(),
        };
        Self::new(file.points, names.into_iter().zip(file.lines))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("geometry serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GeometryFile = serde_json::from_str(text).map_err(|e| {
            Error::Format(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        Self::from_file(file)
    }
}

/// Equality of names and of the flag relation; the order in which a line's
/// points were declared is ignored.
impl PartialEq for IncidenceGeometry {
    fn eq(&self, other: &Self) -> bool {
        self.point_names == other.point_names
            && self.line_names == other.line_names
            && self.point_lines == other.point_lines
    }
}

impl Eq for IncidenceGeometry {}

/// On-disk geometry format: `{"points": [...], "lines": [[...], ...]}` with
/// an optional `"line_names"` array aligned with `"lines"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFile {
    pub points: Vec<String>,
    pub lines: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_names: Option<Vec<String>>,
}

/// Fano plane on points `1..=7`.
pub fn fano_plane() -> IncidenceGeometry {
    const LINES: [[u8; 3]; 7] = [
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 7],
        [5, 6, 1],
        [6, 7, 2],
        [7, 1, 3],
    ];
    let points: Vec<String> = (1..=7).map(|i| i.to_string()).collect();
    IncidenceGeometry::new(
        points,
        LINES
            .iter()
            .enumerate()
            .map(|(i, l)| (default_line_name(i), l.iter().map(|p| p.to_string()))),
    )
    .expect("Fano plane is well formed")
}

/// The `rows × cols` grid: points `(r,c)`, one line per row and per column.
pub fn grid(rows: usize, cols: usize) -> IncidenceGeometry {
    let name = |r: usize, c: usize| format!("({r},{c})");
    let points: Vec<String> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| name(r, c)))
        .collect();
    let mut lines: Vec<(String, Vec<String>)> = Vec::new();
    for r in 0..rows {
        lines.push((format!("row{r}"), (0..cols).map(|c| name(r, c)).collect()));
    }
    for c in 0..cols {
        lines.push((format!("col{c}"), (0..rows).map(|r| name(r, c)).collect()));
    }
    IncidenceGeometry::new(points, lines).expect("grid is well formed")
}

/// Ordinary `n`-gon: `n` points and `n` lines in one cycle.
pub fn ordinary_polygon(n: usize) -> IncidenceGeometry {
    let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let lines = (0..n).map(|i| {
        (
            default_line_name(i),
            vec![format!("p{i}"), format!("p{}", (i + 1) % n)],
        )
    });
    IncidenceGeometry::new(points, lines).expect("ordinary polygon is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_undeclared_point() {
        let err = IncidenceGeometry::new(["a", "b"], [("L".to_string(), vec!["a", "c"])]);
        assert!(matches!(err, Err(Error::InvalidGeometry(_))));
    }

    #[test]
    fn rejects_duplicate_lines() {
        let err = IncidenceGeometry::new(
            ["a", "b", "c"],
            [
                ("L".to_string(), vec!["a", "b"]),
                ("M".to_string(), vec!["b", "a"]),
            ],
        );
        assert!(matches!(err, Err(Error::InvalidGeometry(m)) if m.contains("same point set")));
    }

    #[test]
    fn rejects_repeated_point_on_line() {
        let err = IncidenceGeometry::new(["a", "b"], [("L".to_string(), vec!["a", "a"])]);
        assert!(err.is_err());
    }

    #[test]
    fn views_are_consistent() {
        let g = fano_plane();
        for l in 0..g.num_lines() {
            for &p in g.points_on(l) {
                assert!(g.lines_through(p).contains(&l));
            }
        }
        for p in 0..g.num_points() {
            for &l in g.lines_through(p) {
                assert!(g.points_on(l).contains(&p));
            }
        }
        assert_eq!(g.num_flags(), 21);
    }

    #[test]
    fn dual_is_an_involution() {
        let g = fano_plane();
        assert_eq!(g.dual().unwrap().dual().unwrap(), g);
        let grid = grid(3, 3);
        assert_eq!(grid.dual().unwrap().dual().unwrap(), grid);
        let twins = IncidenceGeometry::new(["a", "b", "c"], [("L".to_string(), ["a", "b"])]).unwrap();
        assert!(matches!(twins.dual(), Err(Error::InvalidGeometry(m)) if m.contains("`a` and `b`")));
    }

    #[test]
    fn file_round_trip_preserves_order() {
        let text = r#"{"points":["z","a","m"],"lines":[["m","z"],["a","z"]]}"#;
        let g = IncidenceGeometry::from_json(text).unwrap();
        let back: GeometryFile = serde_json::from_str(&g.to_json()).unwrap();
        let orig: GeometryFile = serde_json::from_str(text).unwrap();
        assert_eq!(back, orig);
        assert_eq!(g.line_name(1), "L1");
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = IncidenceGeometry::from_json("{\"points\": [\"a\",\n ]}").unwrap_err();
        assert!(matches!(err, Error::Format(m) if m.contains("line 2")));
    }
}
