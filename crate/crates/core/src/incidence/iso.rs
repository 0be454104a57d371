use std::collections::BTreeMap;

use serde::Serialize;

use super::graph::IncidenceGraph;
use super::{IncidenceGeometry, VerifiedGp};

/// A pair of maps, points to points and lines to lines.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GeomMorphism {
    pub point_map: Vec<usize>,
    pub line_map: Vec<usize>,
}

impl GeomMorphism {
    pub fn identity(geom: &IncidenceGeometry) -> Self {
        Self {
            point_map: (0..geom.num_points()).collect(),
            line_map: (0..geom.num_lines()).collect(),
        }
    }

    pub fn point(&self, p: usize) -> usize {
        self.point_map[p]
    }

    pub fn line(&self, l: usize) -> usize {
        self.line_map[l]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GeomMorphism) -> GeomMorphism {
        GeomMorphism {
            point_map: other.point_map.iter().map(|&p| self.point_map[p]).collect(),
            line_map: other.line_map.iter().map(|&l| self.line_map[l]).collect(),
        }
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<GeomMorphism> {
        let inv = |m: &[usize]| {
            let mut out = vec![usize::MAX; m.len()];
            for (i, &j) in m.iter().enumerate() {
                if j >= m.len() || out[j] != usize::MAX {
                    return None;
                }
                out[j] = i;
            }
            Some(out)
        };
        Some(GeomMorphism {
            point_map: inv(&self.point_map)?,
            line_map: inv(&self.line_map)?,
        })
    }

    pub fn is_flag_preserving(&self, source: &IncidenceGeometry, target: &IncidenceGeometry) -> bool {
        self.point_map.len() == source.num_points()
            && self.line_map.len() == source.num_lines()
            && self.point_map.iter().all(|&p| p < target.num_points())
            && self.line_map.iter().all(|&l| l < target.num_lines())
            && (0..source.num_lines()).all(|l| {
                let image = self.line_map[l];
                source
                    .points_on(l)
                    .iter()
                    .all(|&p| target.incident(self.point_map[p], image))
            })
    }

    pub fn is_injective(&self) -> bool {
        fn injective(m: &[usize]) -> bool {
            let mut v = m.to_vec();
            v.sort_unstable();
            v.windows(2).all(|w| w[0] != w[1])
        }
        injective(&self.point_map) && injective(&self.line_map)
    }

    pub fn is_bijective(&self, target: &IncidenceGeometry) -> bool {
        self.is_injective()
            && self.point_map.len() == target.num_points()
            && self.line_map.len() == target.num_lines()
    }

    /// Flag-preserving bijection whose inverse also preserves flags.
    pub fn is_isomorphism(&self, source: &IncidenceGeometry, target: &IncidenceGeometry) -> bool {
        self.is_bijective(target)
            && source.num_flags() == target.num_flags()
            && self.is_flag_preserving(source, target)
    }

    pub fn is_identity(&self) -> bool {
        self.point_map.iter().enumerate().all(|(i, &j)| i == j)
            && self.line_map.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// A bijective flag-preserving map from `g1` to `g2`, if one exists.
pub fn isomorphic(g1: &IncidenceGeometry, g2: &IncidenceGeometry) -> Option<GeomMorphism> {
    if g1.num_points() != g2.num_points()
        || g1.num_lines() != g2.num_lines()
        || g1.num_flags() != g2.num_flags()
    {
        return None;
    }
    let c1 = initial_colors(g1, &[], &[]);
    let c2 = initial_colors(g2, &[], &[]);
    colored_search(g1, c1, g2, c2, SearchMode::First)
        .into_iter()
        .next()
}

/// All automorphisms fixing every point of `fix_pointwise` and mapping
/// every line of `stabilize_lines` to itself, sorted.
pub fn automorphisms(
    gp: &VerifiedGp,
    fix_pointwise: &[usize],
    stabilize_lines: &[usize],
) -> Vec<GeomMorphism> {
    automorphisms_of(gp.geometry(), fix_pointwise, stabilize_lines)
}

/// [`automorphisms`] for an arbitrary incidence geometry.
pub fn automorphisms_of(
    geom: &IncidenceGeometry,
    fix_pointwise: &[usize],
    stabilize_lines: &[usize],
) -> Vec<GeomMorphism> {
    let pins: Vec<Pin> = fix_pointwise
        .iter()
        .map(|&p| Pin::Point(p, p))
        .chain(stabilize_lines.iter().map(|&l| Pin::Line(l, l)))
        .collect();
    let mut out = pinned_isomorphisms(geom, geom, &pins, SearchMode::All);
    out.sort();
    out
}

/// A prescribed image: `Point(a, b)` requires `a ↦ b`, likewise for lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pin {
    Point(usize, usize),
    Line(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    First,
    All,
}

/// Isomorphisms `g1 → g2` honouring every pin.
pub fn pinned_isomorphisms(
    g1: &IncidenceGeometry,
    g2: &IncidenceGeometry,
    pins: &[Pin],
    mode: SearchMode,
) -> Vec<GeomMorphism> {
    if g1.num_points() != g2.num_points()
        || g1.num_lines() != g2.num_lines()
        || g1.num_flags() != g2.num_flags()
    {
        return Vec::new();
    }
    let (mut src_p, mut src_l, mut dst_p, mut dst_l) = (vec![], vec![], vec![], vec![]);
    for pin in pins {
        match *pin {
            Pin::Point(a, b) => {
                src_p.push(a);
                dst_p.push(b);
            }
            Pin::Line(a, b) => {
                src_l.push(a);
                dst_l.push(b);
            }
        }
    }
    let c1 = initial_colors(g1, &src_p, &src_l);
    let c2 = initial_colors(g2, &dst_p, &dst_l);
    colored_search(g1, c1, g2, c2, mode)
}

/// Points get colour 0, lines colour 1; the `k`-th pinned element gets its
/// own colour `2 + k`.
fn initial_colors(geom: &IncidenceGeometry, points: &[usize], lines: &[usize]) -> Vec<u32> {
    let np = geom.num_points();
    let mut colors: Vec<u32> = (0..np + geom.num_lines())
        .map(|v| if v < np { 0 } else { 1 })
        .collect();
    let mut next = 2;
    for &p in points {
        colors[p] = next;
        next += 1;
    }
    for &l in lines {
        colors[np + l] = next;
        next += 1;
    }
    colors
}

struct Search<'a> {
    g1: &'a IncidenceGraph,
    g2: &'a IncidenceGraph,
    geom1: &'a IncidenceGeometry,
    geom2: &'a IncidenceGeometry,
    mode: SearchMode,
    found: Vec<GeomMorphism>,
}

fn colored_search(
    geom1: &IncidenceGeometry,
    mut c1: Vec<u32>,
    geom2: &IncidenceGeometry,
    mut c2: Vec<u32>,
    mode: SearchMode,
) -> Vec<GeomMorphism> {
    let g1 = IncidenceGraph::of(geom1);
    let g2 = IncidenceGraph::of(geom2);
    // pinned colours must be assigned consistently before refinement
    if histogram(&c1) != histogram(&c2) {
        return Vec::new();
    }
    let (p1, p2) = (perp_profiles(&g1), perp_profiles(&g2));
    let mut ids: BTreeMap<(u32, &PerpProfile), u32> = BTreeMap::new();
    for key in c1.iter().zip(&p1).chain(c2.iter().zip(&p2)) {
        ids.entry((*key.0, key.1)).or_insert(0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i as u32;
    }
    c1 = c1.iter().zip(&p1).map(|(&c, p)| ids[&(c, p)]).collect();
    c2 = c2.iter().zip(&p2).map(|(&c, p)| ids[&(c, p)]).collect();
    if histogram(&c1) != histogram(&c2) {
        return Vec::new();
    }
    let mut search = Search {
        g1: &g1,
        g2: &g2,
        geom1,
        geom2,
        mode,
        found: Vec::new(),
    };
    if refine(&g1, &g2, &mut c1, &mut c2) {
        search.descend(c1, c2);
    }
    search.found
}

/// For each vertex `v`, the multiset over same-type vertices `w ≠ v` of
/// `(w ∈ N[v], |{v,w}^⊥|, |{v,w}^⊥⊥|)`, where `N[u]` is `u` together with the
/// vertices at distance 2 and `X^⊥` is the intersection of `N[u]` over
/// `u ∈ X`.
type PerpProfile = Vec<((bool, u32, u32), u32)>;

fn perp_profiles(g: &IncidenceGraph) -> Vec<PerpProfile> {
    let n = g.num_vertices();
    let words = n.div_ceil(64);
    let mut near = vec![vec![0u64; words]; n];
    for (v, row) in near.iter_mut().enumerate() {
        row[v / 64] |= 1 << (v % 64);
        for &a in g.neighbors(v) {
            for &b in g.neighbors(a) {
                row[b / 64] |= 1 << (b % 64);
            }
        }
    }
    let np = g.num_points();
    let side = |v: usize| v < np;
    let mut counts: Vec<BTreeMap<(bool, u32, u32), u32>> = vec![BTreeMap::new(); n];
    let mut perp = vec![0u64; words];
    let mut perp2 = vec![0u64; words];
    for v in 0..n {
        for w in (v + 1)..n {
            if side(v) != side(w) {
                continue;
            }
            let mut members = Vec::new();
            for (i, x) in perp.iter_mut().enumerate() {
                *x = near[v][i] & near[w][i];
                let mut bits = *x;
                while bits != 0 {
                    members.push(i * 64 + bits.trailing_zeros() as usize);
                    bits &= bits - 1;
                }
            }
            perp2.iter_mut().for_each(|x| *x = u64::MAX);
            for &u in &members {
                for (x, y) in perp2.iter_mut().zip(&near[u]) {
                    *x &= y;
                }
            }
            let size2 = if members.is_empty() {
                0
            } else {
                perp2.iter().map(|x| x.count_ones()).sum()
            };
            let adjacent = near[v][w / 64] >> (w % 64) & 1 == 1;
            let key = (adjacent, members.len() as u32, size2);
            *counts[v].entry(key).or_insert(0) += 1;
            *counts[w].entry(key).or_insert(0) += 1;
        }
    }
    counts.into_iter().map(|c| c.into_iter().collect()).collect()
}

fn histogram(colors: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Joint colour refinement of two coloured graphs. Colours stay comparable
/// across the two sides; returns false as soon as the colour class sizes
/// disagree.
fn refine(g1: &IncidenceGraph, g2: &IncidenceGraph, c1: &mut Vec<u32>, c2: &mut Vec<u32>) -> bool {
    let mut classes = histogram(c1).len();
    loop {
        let sig = |g: &IncidenceGraph, c: &[u32], v: usize| {
            let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| c[w]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let s1: Vec<_> = (0..c1.len()).map(|v| sig(g1, c1, v)).collect();
        let s2: Vec<_> = (0..c2.len()).map(|v| sig(g2, c2, v)).collect();
        let mut ids: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in s1.iter().chain(s2.iter()) {
            ids.entry(s).or_insert(0);
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i as u32;
        }
        let n1: Vec<u32> = s1.iter().map(|s| ids[s]).collect();
        let n2: Vec<u32> = s2.iter().map(|s| ids[s]).collect();
        if histogram(&n1) != histogram(&n2) {
            return false;
        }
        let new_classes = ids.len();
        *c1 = n1;
        *c2 = n2;
        if new_classes == classes {
            return true;
        }
        classes = new_classes;
    }
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.mode == SearchMode::First && !self.found.is_empty()
    }

    fn descend(&mut self, c1: Vec<u32>, c2: Vec<u32>) {
        let hist = histogram(&c1);
        // target cell: smallest non-singleton class, lowest colour on ties
        let cell = hist
            .iter()
            .filter(|(_, &n)| n > 1)
            .min_by_key(|(&c, &n)| (n, c))
            .map(|(&c, _)| c);
        let Some(cell) = cell else {
            self.leaf(&c1, &c2);
            return;
        };
        let v = c1.iter().position(|&c| c == cell).expect("cell is nonempty");
        let fresh = hist.keys().next_back().copied().unwrap_or(0) + 1;
        for w in (0..c2.len()).filter(|&w| c2[w] == cell) {
            let mut n1 = c1.clone();
            let mut n2 = c2.clone();
            n1[v] = fresh;
            n2[w] = fresh;
            if refine(self.g1, self.g2, &mut n1, &mut n2) {
                self.descend(n1, n2);
                if self.done() {
                    return;
                }
            }
        }
    }

    fn leaf(&mut self, c1: &[u32], c2: &[u32]) {
        let slot: BTreeMap<u32, usize> = c2.iter().enumerate().map(|(w, &c)| (c, w)).collect();
        let image: Vec<usize> = c1.iter().map(|c| slot[c]).collect();
        let np = self.geom1.num_points();
        if image[..np].iter().any(|&w| w >= np) || image[np..].iter().any(|&w| w < np) {
            return;
        }
        let morphism = GeomMorphism {
            point_map: image[..np].to_vec(),
            line_map: image[np..].iter().map(|&w| w - np).collect(),
        };
        if morphism.is_isomorphism(self.geom1, self.geom2) {
            self.found.push(morphism);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{fano_plane, grid, verify_gp};

    #[test]
    fn self_isomorphism_is_identity() {
        let f = fano_plane();
        let m = isomorphic(&f, &f).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn fano_is_self_dual() {
        let f = fano_plane();
        let m = isomorphic(&f, &f.dual().unwrap()).unwrap();
        assert!(m.is_isomorphism(&f, &f.dual().unwrap()));
    }

    #[test]
    fn fano_group_has_order_168() {
        let gp = verify_gp(&fano_plane()).unwrap();
        let auts = automorphisms(&gp, &[], &[]);
        assert_eq!(auts.len(), 168);
        let all_points: Vec<usize> = (0..7).collect();
        let fixed = automorphisms(&gp, &all_points, &[]);
        assert_eq!(fixed.len(), 1);
        assert!(fixed[0].is_identity());
    }

    #[test]
    fn grid_automorphisms() {
        // (S3 x S3) x C2
        assert_eq!(automorphisms_of(&grid(3, 3), &[], &[]).len(), 72);
    }

    #[test]
    fn composition_and_inverse() {
        let gp = verify_gp(&fano_plane()).unwrap();
        let auts = automorphisms(&gp, &[], &[]);
        let a = &auts[5];
        let b = &auts[77];
        let ab = a.compose(b);
        assert!(auts.binary_search(&ab).is_ok());
        let inv = a.inverse().unwrap();
        assert!(a.compose(&inv).is_identity());
    }
}
