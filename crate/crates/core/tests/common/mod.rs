#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::path::PathBuf;

use gpwb::incidence::{GeomMorphism, IncidenceGeometry};
use proptest::prelude::*;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

/// Adjacency matrix of the incidence graph, points first.
fn adjacency(g: &IncidenceGeometry) -> Vec<Vec<bool>> {
    let np = g.num_points();
    let n = np + g.num_lines();
    let mut a = vec![vec![false; n]; n];
    for l in 0..g.num_lines() {
        for &p in g.points_on(l) {
            a[p][np + l] = true;
            a[np + l][p] = true;
        }
    }
    a
}

/// Girth by deleting each edge and measuring the shortest path between its
/// ends; diameter by Floyd-Warshall. `None` stands for infinity.
pub fn brute_girth_diameter(g: &IncidenceGeometry) -> (Option<usize>, Option<usize>) {
    let a = adjacency(g);
    let n = a.len();
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if a[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let diameter = d.iter().flatten().copied().max().filter(|&x| x < INF);
    let mut girth: Option<usize> = None;
    for u in 0..n {
        for v in (u + 1)..n {
            if !a[u][v] {
                continue;
            }
            let mut dist = vec![usize::MAX; n];
            dist[u] = 0;
            let mut q = VecDeque::from([u]);
            while let Some(x) = q.pop_front() {
                for y in 0..n {
                    if a[x][y] && !(x == u && y == v) && dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        q.push_back(y);
                    }
                }
            }
            if dist[v] != usize::MAX {
                let c = dist[v] + 1;
                girth = Some(girth.map_or(c, |g: usize| g.min(c)));
            }
        }
    }
    (girth, diameter)
}

/// All point permutations preserving the line set, found by backtracking
/// over points with a collinearity check, sorted. Lines must be distinct
/// point sets.
pub fn brute_automorphisms(g: &IncidenceGeometry) -> Vec<GeomMorphism> {
    let np = g.num_points();
    let line_of: HashMap<BTreeSet<usize>, usize> = (0..g.num_lines())
        .map(|l| (g.points_on(l).iter().copied().collect(), l))
        .collect();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; np];
    let mut used = vec![false; np];
    fn rec(
        g: &IncidenceGeometry,
        i: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        line_of: &HashMap<BTreeSet<usize>, usize>,
        out: &mut Vec<GeomMorphism>,
    ) {
        let np = g.num_points();
        if i == np {
            let mut line_map = Vec::with_capacity(g.num_lines());
            for l in 0..g.num_lines() {
                let img: BTreeSet<usize> = g.points_on(l).iter().map(|&p| image[p]).collect();
                match line_of.get(&img) {
                    Some(&m) => line_map.push(m),
                    None => return,
                }
            }
            out.push(GeomMorphism { point_map: image.clone(), line_map });
            return;
        }
        for c in 0..np {
            if used[c] {
                continue;
            }
            let ok = (0..i).all(|j| g.collinear(i, j) == g.collinear(c, image[j]));
            if !ok {
                continue;
            }
            image[i] = c;
            used[c] = true;
            rec(g, i + 1, image, used, line_of, out);
            used[c] = false;
        }
        image[i] = usize::MAX;
    }
    rec(g, 0, &mut image, &mut used, &line_of, &mut out);
    out.sort();
    out
}

/// Whether some point permutation maps the lines of `a` onto those of `b`.
pub fn brute_isomorphic(a: &IncidenceGeometry, b: &IncidenceGeometry) -> bool {
    if a.num_points() != b.num_points() || a.num_lines() != b.num_lines() {
        return false;
    }
    let target: BTreeSet<BTreeSet<usize>> = (0..b.num_lines())
        .map(|l| b.points_on(l).iter().copied().collect())
        .collect();
    let n = a.num_points();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mapped: BTreeSet<BTreeSet<usize>> = (0..a.num_lines())
            .map(|l| a.points_on(l).iter().map(|&p| perm[p]).collect())
            .collect();
        if mapped == target {
            return true;
        }
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return false;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// A geometry on `np` points whose lines are the distinct nonempty sets
/// given.
pub fn geometry(np: usize, lines: Vec<BTreeSet<usize>>) -> IncidenceGeometry {
    let unique: BTreeSet<BTreeSet<usize>> = lines.into_iter().filter(|l| !l.is_empty()).collect();
    let line_points: Vec<Vec<usize>> = unique.into_iter().map(|l| l.into_iter().collect()).collect();
    IncidenceGeometry::from_indices(
        (0..np).map(|i| format!("p{i}")).collect(),
        (0..line_points.len()).map(|i| format!("l{i}")).collect(),
        line_points,
    )
    .unwrap()
}

pub fn small_geometry(max_points: usize, max_lines: usize) -> impl Strategy<Value = IncidenceGeometry> {
    (1..=max_points).prop_flat_map(move |np| {
        prop::collection::vec(prop::collection::btree_set(0..np, 1..=np), 0..=max_lines)
            .prop_map(move |lines| geometry(np, lines))
    })
}
