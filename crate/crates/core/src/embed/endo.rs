use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::incidence::{GeomMorphism, IncidenceGraph, SubGpRecord, VerifiedGp};

/// Largest number of points accepted by the endomorphism and
/// indiscernibility searches.
pub const MAX_SEARCH_POINTS: usize = 64;

/// Default node budget of [`enumerate_endos`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// A polygon with a distinguished point.
#[derive(Debug, Clone)]
pub struct PointedGp {
    gp: VerifiedGp,
    x: usize,
}

impl PointedGp {
    pub fn new(gp: VerifiedGp, x: usize) -> Result<Self> {
        if x >= gp.num_points() {
            return Err(Error::UnknownPoint(format!("#{x}")));
        }
        Ok(Self { gp, x })
    }

    pub fn gp(&self) -> &VerifiedGp {
        &self.gp
    }

    pub fn x(&self) -> usize {
        self.x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EndoMode {
    Injective,
    All,
}

/// How the lines through `x` must be fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fixing {
    /// Each line through `x` is mapped to itself.
    Setwise,
    /// Each point on a line through `x` is fixed as well.
    Pointwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EFlags {
    pub fixes_x: bool,
    pub fixes_lines_through_x: bool,
    pub injective: bool,
    pub bijective: bool,
}

impl EFlags {
    pub fn of(base: &PointedGp, eta: &GeomMorphism) -> Self {
        let g = base.gp.geometry();
        let injective = eta.is_injective();
        Self {
            fixes_x: eta.point(base.x) == base.x,
            fixes_lines_through_x: g.lines_through(base.x).iter().all(|&l| eta.line(l) == l),
            injective,
            bijective: eta.is_bijective(g),
        }
    }
}

/// A pointed polygon with a self-map `η`, tested against membership in the
/// category of pointed polygons with an injective, non-surjective
/// endomorphism fixing the point linewise.
#[derive(Debug, Clone, Serialize)]
pub struct EObjectCandidate<'a> {
    #[serde(skip)]
    base: &'a PointedGp,
    eta: GeomMorphism,
    flags: EFlags,
}

impl<'a> EObjectCandidate<'a> {
    /// Fails unless `eta` is a flag-preserving self-map of the base polygon.
    pub fn new(base: &'a PointedGp, eta: GeomMorphism) -> Result<Self> {
        let g = base.gp.geometry();
        if !eta.is_flag_preserving(g, g) {
            return Err(Error::InvalidGeometry("eta is not flag-preserving".into()));
        }
        let flags = EFlags::of(base, &eta);
        Ok(Self { base, eta, flags })
    }

    /// Test hook: stores `flags` as given.
    pub fn with_flags_unchecked(base: &'a PointedGp, eta: GeomMorphism, flags: EFlags) -> Self {
        Self { base, eta, flags }
    }

    pub fn base(&self) -> &'a PointedGp {
        self.base
    }

    pub fn eta(&self) -> &GeomMorphism {
        &self.eta
    }

    pub fn flags(&self) -> EFlags {
        self.flags
    }

    /// Recomputes the flags and checks them against the stored ones.
    pub fn validate(&self) -> Result<()> {
        let g = self.base.gp.geometry();
        if !self.eta.is_flag_preserving(g, g) {
            return Err(Error::InvalidGeometry("eta is not flag-preserving".into()));
        }
        let actual = EFlags::of(self.base, &self.eta);
        if actual != self.flags {
            return Err(Error::InvalidGeometry(format!(
                "stored flags {:?} disagree with recomputed {:?}",
                self.flags, actual
            )));
        }
        Ok(())
    }
}

/// `fixes_x ∧ fixes_lines_through_x ∧ injective ∧ ¬bijective`, on
/// recomputed flags.
pub fn is_e_object(c: &EObjectCandidate<'_>) -> bool {
    let f = EFlags::of(c.base, &c.eta);
    f.fixes_x && f.fixes_lines_through_x && f.injective && !f.bijective
}

#[derive(Debug, Clone, Serialize)]
pub struct EndoEnumeration<'a> {
    pub candidates: Vec<EObjectCandidate<'a>>,
    /// False when the node budget ran out.
    pub complete: bool,
    pub nodes: u64,
}

struct EndoSearch<'g> {
    graph: &'g IncidenceGraph,
    order: Vec<usize>,
    parent: Vec<usize>,
    dist: Vec<usize>,
    fixed: Vec<Option<usize>>,
    injective: bool,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    found: Vec<Vec<usize>>,
}

impl EndoSearch<'_> {
    fn fits(&self, v: usize, c: usize) -> bool {
        if self.dist[c] > self.dist[v] {
            return false;
        }
        if self.injective && self.used[c] {
            return false;
        }
        if let Some(f) = self.fixed[v] {
            if f != c {
                return false;
            }
        }
        self.graph.neighbors(v).iter().all(|&w| match self.image[w] {
            Some(iw) => self.graph.neighbors(c).contains(&iw),
            None => true,
        })
    }

    fn run(&mut self, depth: usize) {
        if self.exhausted {
            return;
        }
        if depth == self.order.len() {
            self.found.push(self.image.iter().map(|i| i.expect("complete")).collect());
            return;
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = if depth == 0 {
            vec![v]
        } else {
            let pv = self.image[self.parent[v]].expect("parent assigned first");
            self.graph.neighbors(pv).to_vec()
        };
        for c in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            if !self.fits(v, c) {
                continue;
            }
            self.image[v] = Some(c);
            self.used[c] = true;
            self.run(depth + 1);
            self.image[v] = None;
            if self.injective {
                self.used[c] = false;
            }
            if self.exhausted {
                return;
            }
        }
    }
}

/// Backtracking enumeration of the flag-preserving self-maps fixing `x`
/// and fixing each line through `x` (per `fixing`), sorted.
///
/// Vertices of the incidence graph are assigned in breadth-first order
/// from `x`; a vertex's image must be adjacent to the images of its
/// assigned neighbours, and may not be further from `x` than the vertex
/// itself.
pub fn enumerate_endos(
    pg: &PointedGp,
    mode: EndoMode,
    fixing: Fixing,
    budget: u64,
) -> Result<EndoEnumeration<'_>> {
    let g = pg.gp.geometry();
    if g.num_points() > MAX_SEARCH_POINTS {
        return Err(Error::GuardExceeded {
            what: "points for endomorphism search",
            size: g.num_points(),
            limit: MAX_SEARCH_POINTS,
        });
    }
    let graph = pg.gp.incidence_graph();
    let np = g.num_points();
    let n = graph.num_vertices();
    let dist = graph.distances_from(pg.x);
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([pg.x]);
    seen[pg.x] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in graph.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut fixed = vec![None; n];
    fixed[pg.x] = Some(pg.x);
    for &l in g.lines_through(pg.x) {
        fixed[np + l] = Some(np + l);
        if fixing == Fixing::Pointwise {
            for &p in g.points_on(l) {
                fixed[p] = Some(p);
            }
        }
    }
    let mut search = EndoSearch {
        graph,
        order,
        parent,
        dist: dist.into_iter().map(|d| d.unwrap_or(usize::MAX)).collect(),
        fixed,
        injective: mode == EndoMode::Injective,
        image: vec![None; n],
        used: vec![false; n],
        budget,
        nodes: 0,
        exhausted: false,
        found: Vec::new(),
    };
    search.run(0);
    let mut maps: Vec<GeomMorphism> = search
        .found
        .into_iter()
        .map(|img| GeomMorphism {
            point_map: img[..np].to_vec(),
            line_map: img[np..].iter().map(|&w| w - np).collect(),
        })
        .collect();
    maps.sort();
    let candidates = maps
        .into_iter()
        .map(|eta| EObjectCandidate::new(pg, eta))
        .collect::<Result<Vec<_>>>()?;
    Ok(EndoEnumeration {
        candidates,
        complete: !search.exhausted,
        nodes: search.nodes,
    })
}

/// Whether `β ∘ η = η' ∘ β`.
pub fn intertwines(beta: &GeomMorphism, eta: &GeomMorphism, eta_prime: &GeomMorphism) -> bool {
    beta.compose(eta) == eta_prime.compose(beta)
}

#[derive(Debug, Clone, Serialize)]
pub struct EtaChain {
    /// `Γ^{η^i}` for `i = 1..=k`.
    pub images: Vec<SubGpRecord>,
    /// `images[i]` is contained in its predecessor (`Γ` itself for `i = 0`).
    pub nested: Vec<bool>,
    /// Each image is ideally embedded or equals `Γ`.
    pub ideal_or_equal: Vec<bool>,
    /// Least `i` with `Γ^{η^i} = Γ^{η^{i+1}}`, if reached within `k` steps.
    pub stabilization: Option<usize>,
}

fn image_record(gp: &VerifiedGp, eta: &GeomMorphism) -> SubGpRecord {
    let g = gp.geometry();
    let points: BTreeSet<usize> = eta.point_map.iter().copied().collect();
    let lines: BTreeSet<usize> = eta.line_map.iter().copied().collect();
    let line_points = lines
        .iter()
        .map(|&l| {
            let pts: BTreeSet<usize> = (0..g.num_lines())
                .filter(|&m| eta.line(m) == l)
                .flat_map(|m| g.points_on(m).iter().map(|&p| eta.point(p)))
                .collect();
            pts.into_iter().collect()
        })
        .collect();
    SubGpRecord::from_parts(gp, points.into_iter().collect(), lines.into_iter().collect(), line_points)
}

/// The images of `η, η², …, η^k` with containment and ideal-embedding
/// checks.
pub fn eta_chain(c: &EObjectCandidate<'_>, k: usize) -> Result<EtaChain> {
    if k == 0 {
        return Err(Error::InvalidSequence("eta_chain needs k >= 1".into()));
    }
    let gp = c.base.gp();
    let g = gp.geometry();
    let whole = SubGpRecord::induced(
        gp,
        &(0..g.num_points()).collect(),
        &(0..g.num_lines()).collect(),
    );
    let mut power = c.eta.clone();
    let mut images = Vec::with_capacity(k);
    for _ in 0..k {
        images.push(image_record(gp, &power));
        power = c.eta.compose(&power);
    }
    let mut nested = Vec::with_capacity(k);
    let mut ideal_or_equal = Vec::with_capacity(k);
    let mut stabilization = None;
    for i in 0..k {
        let prev = if i == 0 { &whole } else { &images[i - 1] };
        nested.push(images[i].contained_in(prev));
        ideal_or_equal.push(images[i].kind.is_ideal || images[i].same_elements(&whole));
        if stabilization.is_none() && images[i].same_elements(prev) {
            stabilization = Some(i);
        }
    }
    Ok(EtaChain {
        images,
        nested,
        ideal_or_equal,
        stabilization,
    })
}
