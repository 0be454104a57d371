use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{format_vector, ElemAbelianGroup, Subgroup, Vector, DEFAULT_MAX_GROUP_ORDER};

/// One pair `(A, A*)` of a Kantor family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Member {
    pub a: Subgroup,
    pub a_star: Subgroup,
}

/// A candidate Kantor family `(T, F, F*)` in an elementary abelian group.
/// Construction only checks that every subgroup lives in `T`; the axioms
/// are checked by [`verify_kantor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KantorFamily {
    group: ElemAbelianGroup,
    members: Vec<Member>,
}

impl KantorFamily {
    pub fn new(group: ElemAbelianGroup, members: Vec<Member>) -> Result<Self> {
        for (i, m) in members.iter().enumerate() {
            if m.a.group() != group || m.a_star.group() != group {
                return Err(Error::ParentMismatch(format!(
                    "member {i} does not live in {group}"
                )));
            }
        }
        Ok(Self { group, members })
    }

    pub fn group(&self) -> ElemAbelianGroup {
        self.group
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members sorted lexicographically by canonical basis.
    pub fn canonicalized(mut self) -> Self {
        self.members.sort();
        self
    }

    /// Same group and the same members up to order.
    pub fn same_up_to_order(&self, other: &KantorFamily) -> bool {
        self.group == other.group && self.clone().canonicalized().members == other.clone().canonicalized().members
    }

    /// `s = |A_i|` and `t = |F| - 1`.
    pub fn order(&self) -> (usize, usize) {
        let s = self.members.first().map_or(0, |m| m.a.order());
        (s, self.members.len().saturating_sub(1))
    }

    pub fn to_file(&self) -> KantorFile {
        KantorFile {
            p: self.group.p(),
            dim: self.group.dim(),
            f: self.members.iter().map(|m| m.a.basis().to_vec()).collect(),
            fstar: self.members.iter().map(|m| m.a_star.basis().to_vec()).collect(),
        }
    }

    pub fn from_file(file: &KantorFile) -> Result<Self> {
        Self::from_file_with_guard(file, DEFAULT_MAX_GROUP_ORDER)
    }

    pub fn from_file_with_guard(file: &KantorFile, max_order: u64) -> Result<Self> {
        if file.f.len() != file.fstar.len() {
            return Err(Error::Format(format!(
                "\"F\" has {} entries but \"Fstar\" has {}",
                file.f.len(),
                file.fstar.len()
            )));
        }
        let group = ElemAbelianGroup::with_max_order(file.p, file.dim, max_order)?;
        let members = file
            .f
            .iter()
            .zip(&file.fstar)
            .map(|(a, b)| {
                Ok(Member {
                    a: Subgroup::from_generators(group, a.iter().cloned())?,
                    a_star: Subgroup::from_generators(group, b.iter().cloned())?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, members)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("family serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_with_guard(text, DEFAULT_MAX_GROUP_ORDER)
    }

    pub fn from_json_with_guard(text: &str, max_order: u64) -> Result<Self> {
        let file: KantorFile = serde_json::from_str(text).map_err(|e| {
            Error::Format(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        Self::from_file_with_guard(&file, max_order)
    }
}

/// On-disk family format: `{"p", "dim", "F": [basis, ...], "Fstar": [basis, ...]}`
/// with `"Fstar"` aligned index by index with `"F"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KantorFile {
    pub p: u32,
    pub dim: usize,
    #[serde(rename = "F")]
    pub f: Vec<Vec<Vector>>,
    #[serde(rename = "Fstar")]
    pub fstar: Vec<Vec<Vector>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KantorAxiom {
    /// `A_i ≤ A_i*` and `A_i ≠ A_i*`.
    Nested,
    /// `A_i + A_j* = T` for `i ≠ j`.
    Complement,
    /// `(A_i + A_j) ∩ A_k = 0` for distinct `i, j, k`.
    TripleIntersection,
    /// `A_i*/A_i` and the `(A_i + A_j)/A_i` partition `T/A_i`.
    Partition,
    /// All `|A_i|` equal and all `|A_i*|` equal.
    UniformSizes,
}

impl KantorAxiom {
    pub const ALL: [KantorAxiom; 5] = [
        KantorAxiom::Nested,
        KantorAxiom::Complement,
        KantorAxiom::TripleIntersection,
        KantorAxiom::Partition,
        KantorAxiom::UniformSizes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KantorAxiom::Nested => "A_i <= A_i* != A_i",
            KantorAxiom::Complement => "A_i + A_j* = T (i != j)",
            KantorAxiom::TripleIntersection => "(A_i + A_j) meets A_k trivially",
            KantorAxiom::Partition => "partition of T/A_i",
            KantorAxiom::UniformSizes => "uniform member sizes",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KantorWitness {
    NotContained { i: usize },
    Equal { i: usize },
    Complement { i: usize, j: usize },
    Triple { i: usize, j: usize, k: usize, element: Vector },
    /// `element` lies in two of the subgroups covering `T/A_i` outside `A_i`;
    /// `None` stands for `A_i*`, `Some(j)` for `A_i + A_j`.
    Overlap { i: usize, first: Option<usize>, second: Option<usize>, element: Vector },
    /// The coset `element + A_i` is covered by none of them.
    Uncovered { i: usize, element: Vector },
    Sizes { a_orders: Vec<usize>, a_star_orders: Vec<usize> },
}

impl fmt::Display for KantorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KantorWitness::NotContained { i } => write!(f, "A_{i} is not contained in A_{i}*"),
            KantorWitness::Equal { i } => write!(f, "A_{i} = A_{i}*"),
            KantorWitness::Complement { i, j } => write!(f, "A_{i} + A_{j}* != T"),
            KantorWitness::Triple { i, j, k, element } => write!(
                f,
                "{} lies in (A_{i} + A_{j}) and A_{k}",
                format_vector(element)
            ),
            KantorWitness::Overlap { i, first, second, element } => {
                let name = |x: &Option<usize>| match x {
                    None => format!("A_{i}*"),
                    Some(j) => format!("A_{i} + A_{j}"),
                };
                write!(
                    f,
                    "coset {} + A_{i} lies in both {} and {}",
                    format_vector(element),
                    name(first),
                    name(second)
                )
            }
            KantorWitness::Uncovered { i, element } => {
                write!(f, "coset {} + A_{i} is uncovered", format_vector(element))
            }
            KantorWitness::Sizes { a_orders, a_star_orders } => {
                write!(f, "orders |A_i| = {a_orders:?}, |A_i*| = {a_star_orders:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: KantorAxiom,
    pub passed: bool,
    pub witness: Option<KantorWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KantorReport {
    pub checks: Vec<AxiomCheck>,
    /// `(s, t)` when the sizes are uniform.
    pub order: Option<(usize, usize)>,
    /// `|T| = s²·t`, a derived consistency check.
    pub size_relation: Option<bool>,
}

impl KantorReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.size_relation != Some(false)
    }

    pub fn check(&self, axiom: KantorAxiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("every axiom is checked")
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for KantorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "  [{}] {}", if c.passed { "pass" } else { "FAIL" }, c.axiom.name())?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        if let Some(ok) = self.size_relation {
            writeln!(f, "  [{}] |T| = s^2 t", if ok { "pass" } else { "FAIL" })?;
        }
        Ok(())
    }
}

fn check(axiom: KantorAxiom, witness: Option<KantorWitness>) -> AxiomCheck {
    AxiomCheck {
        axiom,
        passed: witness.is_none(),
        witness,
    }
}

fn nonzero_element(a: &Subgroup) -> Option<Vector> {
    a.basis().first().cloned()
}

/// Checks the Kantor family axioms, returning the first witness found for
/// each failing axiom.
pub fn verify_kantor(kf: &KantorFamily) -> Result<KantorReport> {
    let n = kf.members.len();
    if n < 3 {
        return Err(Error::ThinFamily(n));
    }
    let group = kf.group;
    let whole = group.whole();
    let m = &kf.members;

    let nested = (0..n).find_map(|i| {
        if !m[i].a.is_subgroup_of(&m[i].a_star) {
            Some(KantorWitness::NotContained { i })
        } else if m[i].a == m[i].a_star {
            Some(KantorWitness::Equal { i })
        } else {
            None
        }
    });

    let mut complement = None;
    'outer: for i in 0..n {
        for j in 0..n {
            if i != j && m[i].a.sum(&m[j].a_star)? != whole {
                complement = Some(KantorWitness::Complement { i, j });
                break 'outer;
            }
        }
    }

    let mut triple = None;
    'triples: for i in 0..n {
        for j in (i + 1)..n {
            let sum = m[i].a.sum(&m[j].a)?;
            for (k, mk) in m.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let meet = sum.intersect(&mk.a)?;
                if let Some(element) = nonzero_element(&meet) {
                    triple = Some(KantorWitness::Triple { i, j, k, element });
                    break 'triples;
                }
            }
        }
    }

    let mut partition = None;
    for i in 0..n {
        if let Some(w) = partition_witness(kf, i)? {
            partition = Some(w);
            break;
        }
    }

    let a_orders: Vec<usize> = m.iter().map(|x| x.a.order()).collect();
    let a_star_orders: Vec<usize> = m.iter().map(|x| x.a_star.order()).collect();
    let uniform = a_orders.windows(2).all(|w| w[0] == w[1])
        && a_star_orders.windows(2).all(|w| w[0] == w[1]);
    let sizes = (!uniform).then(|| KantorWitness::Sizes {
        a_orders: a_orders.clone(),
        a_star_orders,
    });

    let order = uniform.then(|| (a_orders[0], n - 1));
    let size_relation = order.map(|(s, t)| group.order() == s * s * t);

    Ok(KantorReport {
        checks: vec![
            check(KantorAxiom::Nested, nested),
            check(KantorAxiom::Complement, complement),
            check(KantorAxiom::TripleIntersection, triple),
            check(KantorAxiom::Partition, partition),
            check(KantorAxiom::UniformSizes, sizes),
        ],
        order,
        size_relation,
    })
}

fn partition_witness(kf: &KantorFamily, i: usize) -> Result<Option<KantorWitness>> {
    let m = &kf.members;
    let base = &m[i].a;
    let mut parts: Vec<(Option<usize>, Subgroup)> = vec![(None, base.sum(&m[i].a_star)?)];
    for (j, mj) in m.iter().enumerate() {
        if j != i {
            parts.push((Some(j), base.sum(&mj.a)?));
        }
    }
    for x in 0..parts.len() {
        for y in (x + 1)..parts.len() {
            let meet = parts[x].1.intersect(&parts[y].1)?;
            if meet.rank() > base.rank() {
                let element = meet
                    .basis()
                    .iter()
                    .find(|v| !base.contains(v))
                    .cloned()
                    .expect("meet is larger than A_i");
                return Ok(Some(KantorWitness::Overlap {
                    i,
                    first: parts[x].0,
                    second: parts[y].0,
                    element: base.coset_rep(&element),
                }));
            }
        }
    }
    let covered: usize =
        base.order() + parts.iter().map(|(_, s)| s.order() - base.order()).sum::<usize>();
    if covered != kf.group.order() {
        let element = kf
            .group
            .elements()
            .find(|g| parts.iter().all(|(_, s)| !s.contains(g)))
            .expect("coverage count is short, so some coset is missed");
        return Ok(Some(KantorWitness::Uncovered {
            i,
            element: base.coset_rep(&element),
        }));
    }
    Ok(None)
}
