//! Elementary abelian `p`-groups `(ℤ/p)^d` as row vector spaces over `GF(p)`.
//!
//! Subgroups are stored by their reduced row echelon basis, so two
//! [`Subgroup`] values compare equal exactly when they are the same
//! subgroup. Endomorphisms are `d × d` matrices acting on row vectors from
//! the right: `v ↦ v·M`. Consequently the matrix of `φ ∘ ψ` (apply `ψ`
//! first) is `M_ψ · M_φ`.

pub(crate) mod linalg;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default bound on `p^dim` for exhaustive work.
pub const DEFAULT_MAX_GROUP_ORDER: u64 = 1 << 20;

/// A group element, `dim` coordinates in `0..p`.
pub type Vector = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElemAbelianGroup {
    p: u32,
    dim: usize,
}

impl ElemAbelianGroup {
    pub fn new(p: u32, dim: usize) -> Result<Self> {
        Self::with_max_order(p, dim, DEFAULT_MAX_GROUP_ORDER)
    }

    pub fn with_max_order(p: u32, dim: usize, max_order: u64) -> Result<Self> {
        if !linalg::is_prime(p as u64) {
            return Err(Error::InvalidGroup(format!("{p} is not prime")));
        }
        if dim == 0 {
            return Err(Error::InvalidGroup("dimension must be at least 1".into()));
        }
        let order = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if order > max_order as u128 {
            return Err(Error::GroupTooLarge {
                order,
                limit: max_order,
            });
        }
        Ok(Self { p, dim })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.dim as u32)
    }

    pub fn zero(&self) -> Vector {
        vec![0; self.dim]
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vector {
        a.iter().zip(b).map(|(&x, &y)| linalg::add(x, y, self.p)).collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vector {
        a.iter().map(|&x| linalg::sub(0, x, self.p)).collect()
    }

    pub fn scale(&self, c: u32, a: &[u32]) -> Vector {
        a.iter().map(|&x| linalg::mul(c % self.p, x, self.p)).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.dim && v.iter().all(|&x| x < self.p)
    }

    /// Index of `v` in [`Self::elements`] order (first coordinate most
    /// significant).
    pub fn index_of(&self, v: &[u32]) -> usize {
        v.iter().fold(0usize, |acc, &x| acc * self.p as usize + x as usize)
    }

    pub fn element(&self, mut index: usize) -> Vector {
        let mut v = vec![0; self.dim];
        for x in v.iter_mut().rev() {
            *x = (index % self.p as usize) as u32;
            index /= self.p as usize;
        }
        v
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Vector> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_generators(*self, (0..self.dim).map(|i| self.unit(i)))
            .expect("unit vectors belong to the group")
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup {
            group: *self,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }
}

impl fmt::Display for ElemAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(Z/{})^{}", self.p, self.dim)
    }
}

pub fn format_vector(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    group: ElemAbelianGroup,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subgroup {
    pub fn from_generators<I>(group: ElemAbelianGroup, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut rows: Vec<Vector> = Vec::new();
        for g in gens {
            if !group.contains(&g) {
                return Err(Error::InvalidGroup(format!(
                    "{} is not an element of {group}",
                    format_vector(&g)
                )));
            }
            rows.push(g);
        }
        let pivots = linalg::rref(&mut rows, group.p);
        Ok(Self {
            group,
            basis: rows,
            pivots,
        })
    }

    pub fn group(&self) -> ElemAbelianGroup {
        self.group
    }

    /// Canonical (reduced row echelon) basis.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> usize {
        (self.group.p as usize).pow(self.rank() as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.rank() == self.group.dim
    }

    fn same_parent(&self, other: &Subgroup) -> Result<()> {
        if self.group != other.group {
            return Err(Error::ParentMismatch(format!("{} vs {}", self.group, other.group)));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if !self.group.contains(v) {
            return false;
        }
        let mut w = v.to_vec();
        linalg::reduce(&mut w, &self.basis, &self.pivots, self.group.p);
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.basis.iter().all(|b| other.contains(b))
    }

    /// `A + B`, the set product of two subgroups of an abelian group.
    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_parent(other)?;
        Subgroup::from_generators(
            self.group,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_parent(other)?;
        if self.is_trivial() || other.is_trivial() {
            return Ok(self.group.trivial());
        }
        let p = self.group.p;
        let stacked: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        let relations = linalg::left_nullspace(&stacked, self.group.dim, p);
        let k = self.basis.len();
        let gens = relations
            .iter()
            .map(|c| linalg::vec_mat(&c[..k], &self.basis, p));
        Subgroup::from_generators(self.group, gens)
    }

    /// Canonical representative of the coset `g + A`.
    pub fn coset_rep(&self, g: &[u32]) -> Vector {
        let mut w = g.to_vec();
        linalg::reduce(&mut w, &self.basis, &self.pivots, self.group.p);
        w
    }

    /// Elements of `A`, lexicographic in the coefficients of the basis.
    pub fn elements(&self) -> Vec<Vector> {
        let p = self.group.p;
        let k = self.rank();
        let coeffs = ElemAbelianGroup { p, dim: k.max(1) };
        if k == 0 {
            return vec![self.group.zero()];
        }
        (0..self.order())
            .map(|i| linalg::vec_mat(&coeffs.element(i), &self.basis, p))
            .collect()
    }

    /// Elements of `g + A`, sorted.
    pub fn coset_members(&self, g: &[u32]) -> Result<Vec<Vector>> {
        if !self.group.contains(g) {
            return Err(Error::InvalidGroup(format!(
                "{} is not an element of {}",
                format_vector(g),
                self.group
            )));
        }
        let mut out: Vec<Vector> = self
            .elements()
            .iter()
            .map(|a| self.group.add(a, g))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Canonical representatives of all cosets, sorted.
    pub fn coset_reps(&self) -> Vec<Vector> {
        let mut reps: Vec<Vector> = self
            .group
            .elements()
            .map(|g| self.coset_rep(&g))
            .collect();
        reps.sort();
        reps.dedup();
        reps
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|v| format_vector(v)).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Endomorphism `v ↦ v·M` of an elementary abelian group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupEndo {
    #[serde(skip)]
    group: ElemAbelianGroup,
    matrix: Vec<Vector>,
}

impl GroupEndo {
    pub fn new(group: ElemAbelianGroup, matrix: Vec<Vector>) -> Result<Self> {
        if matrix.len() != group.dim || matrix.iter().any(|r| r.len() != group.dim) {
            return Err(Error::InvalidGroup(format!(
                "endomorphism of {group} needs a {0}x{0} matrix",
                group.dim
            )));
        }
        let matrix = matrix
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % group.p).collect())
            .collect();
        Ok(Self { group, matrix })
    }

    pub fn zero(group: ElemAbelianGroup) -> Self {
        Self::scalar(group, 0)
    }

    pub fn identity(group: ElemAbelianGroup) -> Self {
        Self::scalar(group, 1)
    }

    pub fn scalar(group: ElemAbelianGroup, c: u32) -> Self {
        let matrix = (0..group.dim)
            .map(|i| {
                let mut r = group.zero();
                r[i] = c % group.p;
                r
            })
            .collect();
        Self { group, matrix }
    }

    pub fn group(&self) -> ElemAbelianGroup {
        self.group
    }

    pub fn matrix(&self) -> &[Vector] {
        &self.matrix
    }

    pub fn apply(&self, v: &[u32]) -> Vector {
        linalg::vec_mat(v, &self.matrix, self.group.p)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&x| x == 0)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GroupEndo) -> Result<GroupEndo> {
        self.check(other)?;
        Ok(GroupEndo {
            group: self.group,
            matrix: linalg::mat_mul(&other.matrix, &self.matrix, self.group.p),
        })
    }

    pub fn add(&self, other: &GroupEndo) -> Result<GroupEndo> {
        self.check(other)?;
        let p = self.group.p;
        Ok(GroupEndo {
            group: self.group,
            matrix: self
                .matrix
                .iter()
                .zip(&other.matrix)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| linalg::add(x, y, p)).collect())
                .collect(),
        })
    }

    pub fn scale(&self, c: u32) -> GroupEndo {
        GroupEndo {
            group: self.group,
            matrix: self.matrix.iter().map(|r| self.group.scale(c, r)).collect(),
        }
    }

    fn check(&self, other: &GroupEndo) -> Result<()> {
        if self.group != other.group {
            return Err(Error::ParentMismatch(format!("{} vs {}", self.group, other.group)));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix, self.group.p)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.group.dim
    }

    /// A nonzero `v` with `v·M = 0`, if any.
    pub fn kernel_witness(&self) -> Option<Vector> {
        linalg::left_nullspace(&self.matrix, self.group.dim, self.group.p)
            .into_iter()
            .next()
    }

    /// The image of a subgroup.
    pub fn image(&self, a: &Subgroup) -> Result<Subgroup> {
        if a.group != self.group {
            return Err(Error::ParentMismatch(format!("{} vs {}", a.group, self.group)));
        }
        Subgroup::from_generators(self.group, a.basis.iter().map(|b| self.apply(b)))
    }

    /// The whole group image `T^φ`.
    pub fn image_of_group(&self) -> Subgroup {
        self.image(&self.group.whole()).expect("same group")
    }
}

impl fmt::Display for GroupEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.matrix.iter().map(|r| format_vector(r)).collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g33() -> ElemAbelianGroup {
        ElemAbelianGroup::new(3, 3).unwrap()
    }

    fn span(gens: &[&[u32]]) -> Subgroup {
        Subgroup::from_generators(g33(), gens.iter().map(|v| v.to_vec())).unwrap()
    }

    #[test]
    fn guards() {
        assert!(ElemAbelianGroup::new(4, 2).is_err());
        assert!(ElemAbelianGroup::new(3, 0).is_err());
        assert!(matches!(
            ElemAbelianGroup::new(2, 21),
            Err(Error::GroupTooLarge { .. })
        ));
        assert!(ElemAbelianGroup::new(2, 20).is_ok());
    }

    #[test]
    fn sums() {
        let e1 = span(&[&[1, 0, 0]]);
        let e2 = span(&[&[0, 1, 0]]);
        let s = e1.sum(&e2).unwrap();
        assert_eq!(s.order(), 9);
        assert_eq!(s, span(&[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        let d = span(&[&[1, 1, 0]]);
        assert_eq!(e1.sum(&d).unwrap(), s);
    }

    #[test]
    fn intersections() {
        let e1 = span(&[&[1, 0, 0]]);
        let e2 = span(&[&[0, 1, 0]]);
        assert!(e1.intersect(&e2).unwrap().is_trivial());
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        let a = span(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = span(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), e2);
    }

    #[test]
    fn parent_mismatch() {
        let other = ElemAbelianGroup::new(5, 3).unwrap();
        assert!(matches!(
            g33().whole().sum(&other.whole()),
            Err(Error::ParentMismatch(_))
        ));
    }

    #[test]
    fn images() {
        let a = span(&[&[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(GroupEndo::identity(g33()).image(&a).unwrap(), a);
        assert!(GroupEndo::zero(g33()).image(&a).unwrap().is_trivial());
        let diag = GroupEndo::new(g33(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(diag.image(&a).unwrap(), span(&[&[1, 0, 0]]));
    }

    #[test]
    fn injectivity() {
        assert!(GroupEndo::identity(g33()).is_injective());
        assert!(!GroupEndo::zero(g33()).is_injective());
        let d = GroupEndo::new(g33(), vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 0]]).unwrap();
        assert!(!d.is_injective());
        assert_eq!(d.rank(), 2);
        let w = d.kernel_witness().unwrap();
        assert_eq!(d.apply(&w), vec![0, 0, 0]);
    }

    #[test]
    fn cosets_partition_the_group() {
        let a = span(&[&[1, 2, 0]]);
        let reps = a.coset_reps();
        assert_eq!(reps.len(), 9);
        let mut all: Vec<Vector> = reps.iter().flat_map(|r| a.coset_members(r).unwrap()).collect();
        all.sort();
        let expected: Vec<Vector> = g33().elements().collect();
        assert_eq!(all, expected);
        assert_eq!(a.coset_members(&[0, 0, 1]).unwrap().len(), a.order());
    }

    #[test]
    fn composition_order_is_row_vector_convention() {
        let g = g33();
        let phi = GroupEndo::new(g, vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        let psi = GroupEndo::new(g, vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 2]]).unwrap();
        let v = vec![1, 2, 0];
        assert_eq!(phi.compose(&psi).unwrap().apply(&v), phi.apply(&psi.apply(&v)));
        assert_eq!(phi.compose(&GroupEndo::identity(g)).unwrap(), phi);
    }

    #[test]
    fn element_indexing_round_trip() {
        let g = g33();
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.element(i)), i);
        }
    }
}
