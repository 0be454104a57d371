//! The kernel of a translation quadrangle: endomorphisms of `T` mapping
//! every `A_i` into itself, computed as the solution space of a linear
//! system over `GF(p)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::linalg;
use crate::groups::{format_vector, ElemAbelianGroup, GroupEndo, Subgroup, Vector};
use crate::kantor::{kantor_from_tgq, verify_kantor, KantorFamily, Member, TgqInstance};

/// Default bound on the number of kernel elements listed explicitly.
pub const DEFAULT_MAX_KERNEL_ELEMENTS: usize = 1 << 12;

#[derive(Debug, Clone)]
pub struct KernelRing {
    group: ElemAbelianGroup,
    family: KantorFamily,
    basis: Vec<GroupEndo>,
    elements: Option<Vec<GroupEndo>>,
}

/// Parity checks of a subgroup: `v ∈ A` iff `v·h = 0` for every returned `h`.
fn parity_checks(a: &Subgroup) -> Vec<Vector> {
    let g = a.group();
    linalg::right_nullspace(a.basis(), g.dim(), g.p())
}

/// Whether `α` maps `a` into itself.
fn preserves(alpha: &GroupEndo, a: &Subgroup) -> bool {
    a.basis().iter().all(|b| a.contains(&alpha.apply(b)))
}

fn span_elements(group: ElemAbelianGroup, basis: &[GroupEndo]) -> Vec<GroupEndo> {
    let p = group.p();
    let mut out = Vec::with_capacity((p as usize).pow(basis.len() as u32));
    let mut coeffs = vec![0u32; basis.len()];
    loop {
        let mut m = GroupEndo::zero(group);
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                m = m.add(&b.scale(*c)).expect("same group");
            }
        }
        out.push(m);
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                out.sort();
                return out;
            }
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// Computes the kernel of a verified Kantor family, listing its elements
/// when there are at most [`DEFAULT_MAX_KERNEL_ELEMENTS`] of them.
pub fn compute_kernel(kf: &KantorFamily) -> Result<KernelRing> {
    compute_kernel_with_guard(kf, DEFAULT_MAX_KERNEL_ELEMENTS)
}

pub fn compute_kernel_with_guard(kf: &KantorFamily, max_elements: usize) -> Result<KernelRing> {
    let report = verify_kantor(kf)?;
    if let Some(fail) = report.first_failure() {
        return Err(Error::KantorViolation(fail.axiom.name().to_string()));
    }
    let group = kf.group();
    let (p, d) = (group.p(), group.dim());
    // Unknown M[j][k] sits at column j·d + k; b·M·h = Σ b_j M_jk h_k.
    let mut constraints = Vec::new();
    for m in kf.members() {
        let checks = parity_checks(&m.a);
        for b in m.a.basis() {
            for h in &checks {
                let mut row = vec![0u32; d * d];
                for j in 0..d {
                    for k in 0..d {
                        row[j * d + k] = linalg::mul(b[j], h[k], p);
                    }
                }
                constraints.push(row);
            }
        }
    }
    let mut basis = linalg::right_nullspace(&constraints, d * d, p)
        .into_iter()
        .map(|x| GroupEndo::new(group, x.chunks(d).map(<[u32]>::to_vec).collect()))
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<Vector> = basis.iter().map(|e| e.matrix().concat()).collect();
    linalg::rref(&mut rows, p);
    basis = rows
        .into_iter()
        .map(|x| GroupEndo::new(group, x.chunks(d).map(<[u32]>::to_vec).collect()))
        .collect::<Result<Vec<_>>>()?;
    let size = (p as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    let elements = (size <= max_elements as u128).then(|| span_elements(group, &basis));
    Ok(KernelRing {
        group,
        family: kf.clone(),
        basis,
        elements,
    })
}

impl KernelRing {
    /// Builds a ring from an explicit element list, bypassing the solver.
    /// Only the presence of `0` and `1` is enforced; everything else is left
    /// to [`KernelRing::ring_checks`] and friends.
    pub fn from_parts(family: &KantorFamily, elements: Vec<GroupEndo>) -> Result<Self> {
        let group = family.group();
        if elements.iter().any(|e| e.group() != group) {
            return Err(Error::ParentMismatch("ring element outside End(T)".into()));
        }
        let elements: Vec<GroupEndo> = elements.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if !elements.contains(&GroupEndo::zero(group)) {
            return Err(Error::InvalidGroup("ring lacks the zero map".into()));
        }
        if !elements.contains(&GroupEndo::identity(group)) {
            return Err(Error::InvalidGroup("ring lacks the identity".into()));
        }
        let mut rows: Vec<Vector> = elements.iter().map(|e| e.matrix().concat()).collect();
        linalg::rref(&mut rows, group.p());
        let d = group.dim();
        let basis = rows
            .into_iter()
            .map(|x| GroupEndo::new(group, x.chunks(d).map(<[u32]>::to_vec).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            group,
            family: family.clone(),
            basis,
            elements: Some(elements),
        })
    }

    pub fn group(&self) -> ElemAbelianGroup {
        self.group
    }

    pub fn family(&self) -> &KantorFamily {
        &self.family
    }

    /// A `GF(p)` basis of the additive group of the ring.
    pub fn basis(&self) -> &[GroupEndo] {
        &self.basis
    }

    /// All elements in ascending order, when enumerated.
    pub fn elements(&self) -> Option<&[GroupEndo]> {
        self.elements.as_deref()
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    /// `p^dim(basis)`; exact for solver-built rings.
    pub fn order(&self) -> u128 {
        match &self.elements {
            Some(e) => e.len() as u128,
            None => (self.group.p() as u128).pow(self.basis.len() as u32),
        }
    }

    pub fn contains(&self, alpha: &GroupEndo) -> bool {
        match &self.elements {
            Some(e) => e.binary_search(alpha).is_ok(),
            None => {
                let mut rows: Vec<Vector> = self.basis.iter().map(|e| e.matrix().concat()).collect();
                let before = rows.len();
                rows.push(alpha.matrix().concat());
                linalg::rank(&rows, self.group.p()) == before
            }
        }
    }

    fn require_elements(&self, what: &str) -> Result<&[GroupEndo]> {
        self.elements.as_deref().ok_or_else(|| {
            Error::EnumerationRequired(format!(
                "{what} needs the element list; only a basis of size {} is known",
                self.basis.len()
            ))
        })
    }

    /// Exhaustive ring-axiom checks on the element list.
    pub fn ring_checks(&self) -> Result<RingChecks> {
        let elements = self.require_elements("ring checks")?;
        let zero = GroupEndo::zero(self.group);
        let one = GroupEndo::identity(self.group);
        let mut add_failure = None;
        let mut compose_failure = None;
        let mut zero_divisors = None;
        'outer: for a in elements {
            for b in elements {
                let s = a.add(b)?;
                if add_failure.is_none() && !self.contains(&s) {
                    add_failure = Some((a.clone(), b.clone()));
                }
                let c = a.compose(b)?;
                if compose_failure.is_none() && !self.contains(&c) {
                    compose_failure = Some((a.clone(), b.clone()));
                }
                if zero_divisors.is_none() && !a.is_zero() && !b.is_zero() && c.is_zero() {
                    zero_divisors = Some((a.clone(), b.clone()));
                }
                if add_failure.is_some() && compose_failure.is_some() && zero_divisors.is_some() {
                    break 'outer;
                }
            }
        }
        let preserves_members = elements.iter().find_map(|a| {
            self.family
                .members()
                .iter()
                .position(|m| !preserves(a, &m.a))
                .map(|i| (a.clone(), i))
        });
        Ok(RingChecks {
            has_zero: self.contains(&zero),
            has_identity: self.contains(&one),
            add_failure,
            compose_failure,
            zero_divisors,
            preserves_members,
        })
    }
}

/// Outcome of [`KernelRing::ring_checks`]; each `Option` holds the first
/// counterexample found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingChecks {
    pub has_zero: bool,
    pub has_identity: bool,
    pub add_failure: Option<(GroupEndo, GroupEndo)>,
    pub compose_failure: Option<(GroupEndo, GroupEndo)>,
    pub zero_divisors: Option<(GroupEndo, GroupEndo)>,
    /// An element together with the index of a member `A_i` it does not preserve.
    pub preserves_members: Option<(GroupEndo, usize)>,
}

impl RingChecks {
    pub fn passed(&self) -> bool {
        self.has_zero
            && self.has_identity
            && self.add_failure.is_none()
            && self.compose_failure.is_none()
            && self.zero_divisors.is_none()
            && self.preserves_members.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    /// Number of nonzero elements examined.
    pub checked: usize,
    /// False when only the basis could be examined.
    pub complete: bool,
    /// A nonzero `β` with a nonzero `ℓ₀` such that `ℓ₀·β = 0`.
    pub counterexample: Option<(GroupEndo, Vector)>,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that every nonzero element has full rank.
pub fn verify_injectivity(k: &KernelRing) -> InjectivityReport {
    let (list, complete) = match k.elements() {
        Some(e) => (e, true),
        None => (k.basis(), false),
    };
    let mut checked = 0;
    for beta in list.iter().filter(|b| !b.is_zero()) {
        checked += 1;
        if let Some(l0) = beta.kernel_witness() {
            return InjectivityReport {
                checked,
                complete,
                counterexample: Some((beta.clone(), l0)),
            };
        }
    }
    InjectivityReport {
        checked,
        complete,
        counterexample: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewFieldReport {
    pub is_skew_field: bool,
    pub order: usize,
    pub commutative: bool,
    /// Each nonzero element paired with its two-sided inverse.
    pub inverses: Vec<(GroupEndo, GroupEndo)>,
    /// A nonzero element without an inverse in the ring.
    pub witness: Option<GroupEndo>,
}

/// Searches the element list for two-sided inverses.
pub fn is_skew_field(k: &KernelRing) -> Result<SkewFieldReport> {
    let elements = k.require_elements("skew-field check")?;
    let one = GroupEndo::identity(k.group());
    let mut inverses = Vec::new();
    let mut witness = None;
    for a in elements.iter().filter(|a| !a.is_zero()) {
        let inv = elements
            .iter()
            .find(|b| a.compose(b).is_ok_and(|c| c == one) && b.compose(a).is_ok_and(|c| c == one));
        match inv {
            Some(b) => inverses.push((a.clone(), b.clone())),
            None => {
                witness = Some(a.clone());
                break;
            }
        }
    }
    let commutative = elements
        .iter()
        .all(|a| elements.iter().all(|b| a.compose(b).ok() == b.compose(a).ok()));
    Ok(SkewFieldReport {
        is_skew_field: witness.is_none() && elements.len() > 1,
        order: elements.len(),
        commutative,
        inverses,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleViolation {
    pub alpha: GroupEndo,
    pub member: usize,
    /// True for `A_i*`, false for `A_i`.
    pub starred: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub checked: usize,
    pub violations: Vec<ModuleViolation>,
}

impl ModuleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `A_i^α ⊆ A_i` and `A_i*^α ⊆ A_i*` for every element `α` (every
/// basis element when the ring is not enumerated, which is equivalent).
pub fn module_closure_check(kf: &KantorFamily, k: &KernelRing) -> ModuleReport {
    let list = k.elements().unwrap_or(k.basis());
    let mut violations = Vec::new();
    for alpha in list {
        for (i, m) in kf.members().iter().enumerate() {
            if !preserves(alpha, &m.a) {
                violations.push(ModuleViolation { alpha: alpha.clone(), member: i, starred: false });
            }
            if !preserves(alpha, &m.a_star) {
                violations.push(ModuleViolation { alpha: alpha.clone(), member: i, starred: true });
            }
        }
    }
    ModuleReport {
        checked: list.len(),
        violations,
    }
}

/// The family `(T^α, F^α, F*^α)` for a nonzero kernel element `α`.
pub fn gamma_alpha(kf: &KantorFamily, alpha: &GroupEndo) -> Result<KantorFamily> {
    if alpha.group() != kf.group() {
        return Err(Error::ParentMismatch(format!("{} vs {}", alpha.group(), kf.group())));
    }
    if alpha.is_zero() {
        return Err(Error::Degenerate("degenerate: alpha = 0".into()));
    }
    if let Some(i) = kf.members().iter().position(|m| !preserves(alpha, &m.a)) {
        return Err(Error::NotInKernel(format!("{alpha} does not map A_{i} into itself")));
    }
    if let Some(v) = alpha.kernel_witness() {
        return Err(Error::Unsupported(format!(
            "{alpha} kills {}; a non-injective kernel element cannot occur for a verified finite family",
            format_vector(&v)
        )));
    }
    let members = kf
        .members()
        .iter()
        .map(|m| {
            Ok(Member {
                a: alpha.image(&m.a)?,
                a_star: alpha.image(&m.a_star)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let image = KantorFamily::new(kf.group(), members)?;
    let report = verify_kantor(&image)?;
    if !report.passed() {
        return Err(Error::KantorViolation(format!("image family fails:\n{report}")));
    }
    Ok(image)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Linearity {
    Linear { field_order: usize },
    /// A nonzero kernel element without inverse.
    NonInvertible { zeta: GroupEndo },
    /// The kernel is too large to enumerate.
    Undetermined { kernel_order: u128 },
}

#[derive(Debug, Clone, Serialize)]
pub struct LinearityReport {
    pub kernel_order: u128,
    pub basis: Vec<GroupEndo>,
    pub ring: Option<RingChecks>,
    pub injectivity: InjectivityReport,
    pub module: ModuleReport,
    pub skew_field: Option<SkewFieldReport>,
    pub verdict: Linearity,
}

impl LinearityReport {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, Linearity::Linear { .. })
            && self.injectivity.passed()
            && self.module.passed()
            && self.ring.as_ref().is_none_or(RingChecks::passed)
    }
}

/// Family at `z`, kernel, injectivity, module closure and skew-field status.
pub fn linearity_report(inst: &TgqInstance) -> Result<LinearityReport> {
    let kf = kantor_from_tgq(inst)?;
    kernel_report(&kf)
}

/// The pipeline of [`linearity_report`] starting from a family.
pub fn kernel_report(kf: &KantorFamily) -> Result<LinearityReport> {
    let k = compute_kernel(kf)?;
    let ring = k.ring_checks().ok();
    let injectivity = verify_injectivity(&k);
    let module = module_closure_check(kf, &k);
    let skew_field = is_skew_field(&k).ok();
    let verdict = match &skew_field {
        Some(s) if s.is_skew_field => Linearity::Linear { field_order: s.order },
        Some(s) => Linearity::NonInvertible {
            zeta: s.witness.clone().unwrap_or_else(|| GroupEndo::zero(k.group())),
        },
        None => Linearity::Undetermined { kernel_order: k.order() },
    };
    Ok(LinearityReport {
        kernel_order: k.order(),
        basis: k.basis().to_vec(),
        ring,
        injectivity,
        module,
        skew_field,
        verdict,
    })
}

/// A ring isomorphism between two enumerated kernels, as the image of each
/// basis element of `k1`. The map is `GF(p)`-linear, so it is fixed by
/// those images; every candidate is checked on all products.
pub fn ring_isomorphism(k1: &KernelRing, k2: &KernelRing) -> Result<Option<Vec<(GroupEndo, GroupEndo)>>> {
    let e1 = k1.require_elements("ring isomorphism")?;
    let e2 = k2.require_elements("ring isomorphism")?;
    if e1.len() != e2.len() || k1.group().p() != k2.group().p() {
        return Ok(None);
    }
    let p = k1.group().p();
    let b = k1.basis();
    let n = e2.len();
    let candidates = (n as u128).checked_pow(b.len() as u32).unwrap_or(u128::MAX);
    if candidates > 1 << 24 {
        return Err(Error::GuardExceeded {
            what: "ring isomorphism candidates",
            size: usize::try_from(candidates).unwrap_or(usize::MAX),
            limit: 1 << 24,
        });
    }
    // Coordinates of every element of k1 in its basis.
    let coords: Vec<Vec<u32>> = e1.iter().map(|x| coordinates(x, b, p)).collect();
    let mut choice = vec![0usize; b.len()];
    loop {
        let image_of = |c: &[u32]| {
            let mut m = GroupEndo::zero(k2.group());
            for (ci, &j) in c.iter().zip(&choice) {
                m = m.add(&e2[j].scale(*ci)).expect("same group");
            }
            m
        };
        let images: Vec<GroupEndo> = coords.iter().map(|c| image_of(c)).collect();
        let distinct: BTreeSet<&GroupEndo> = images.iter().collect();
        if distinct.len() == n && images.iter().all(|x| k2.contains(x)) {
            let ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    let prod = e1[i].compose(&e1[j]).expect("same group");
                    let idx = e1.binary_search(&prod).expect("closed");
                    images[idx] == images[i].compose(&images[j]).expect("same group")
                })
            });
            if ok {
                return Ok(Some(
                    b.iter()
                        .cloned()
                        .zip(choice.iter().map(|&j| e2[j].clone()))
                        .collect(),
                ));
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(None);
            }
            choice[i] += 1;
            if choice[i] < n {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn coordinates(x: &GroupEndo, basis: &[GroupEndo], p: u32) -> Vec<u32> {
    // Basis is in reduced echelon form over the flattened matrices.
    let flat = x.matrix().concat();
    basis
        .iter()
        .map(|b| {
            let row = b.matrix().concat();
            let pivot = row.iter().position(|&v| v != 0).expect("nonzero basis element");
            linalg::mul(flat[pivot], linalg::inv(row[pivot], p), p)
        })
        .collect()
}
