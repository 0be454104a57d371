use super::coset::coset_geometry;
use super::family::{KantorFamily, Member};
use crate::error::{Error, Result};
use crate::groups::{ElemAbelianGroup, Subgroup, Vector};
use crate::incidence::{verify_gp, GeomMorphism, VerifiedGp};

/// A translation generalized quadrangle: a quadrangle, its translation point
/// `x`, the translation group realized as permutations (indexed by the
/// lexicographic index of the group element) and a chosen affine point `z`.
#[derive(Debug, Clone)]
pub struct TgqInstance {
    gp: VerifiedGp,
    x: usize,
    z: usize,
    group: ElemAbelianGroup,
    translations: Vec<GeomMorphism>,
}

impl TgqInstance {
    /// Checks every invariant: quadrangle, translations are automorphisms
    /// fixing every line through `x`, `g ↦ τ_g` is a homomorphism from the
    /// group, regular action on the affine points, `z` affine.
    pub fn new(
        gp: VerifiedGp,
        x: usize,
        z: usize,
        group: ElemAbelianGroup,
        translations: Vec<GeomMorphism>,
    ) -> Result<Self> {
        let inst = Self {
            gp,
            x,
            z,
            group,
            translations,
        };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<()> {
        let g = self.gp.geometry();
        let bad = |m: String| Err(Error::InvalidTgq(m));
        if self.gp.gonality() != 4 {
            return bad(format!("gonality {} is not 4", self.gp.gonality()));
        }
        if self.x >= g.num_points() || self.z >= g.num_points() {
            return bad("translation point or affine point out of range".into());
        }
        if self.translations.len() != self.group.order() {
            return bad(format!(
                "{} translations for a group of order {}",
                self.translations.len(),
                self.group.order()
            ));
        }
        if !self.translations[0].is_identity() {
            return bad("the zero element does not act as the identity".into());
        }
        for (idx, t) in self.translations.iter().enumerate() {
            let name = crate::groups::format_vector(&self.group.element(idx));
            if !t.is_isomorphism(g, g) {
                return bad(format!("translation {name} is not an automorphism"));
            }
            if t.point(self.x) != self.x {
                return bad(format!("translation {name} moves x"));
            }
            if let Some(&l) = g.lines_through(self.x).iter().find(|&&l| t.line(l) != l) {
                return bad(format!(
                    "translation {name} moves the line {} through x",
                    g.line_name(l)
                ));
            }
        }
        for idx in 0..self.group.order() {
            let a = self.group.element(idx);
            for k in 0..self.group.dim() {
                let sum = self.group.add(&a, &self.group.unit(k));
                let composed = self.translations[idx].compose(&self.translations[self.group.index_of(&self.group.unit(k))]);
                if composed != self.translations[self.group.index_of(&sum)] {
                    return bad(format!(
                        "translations are not a homomorphic image of {} at {}",
                        self.group,
                        crate::groups::format_vector(&a)
                    ));
                }
            }
        }
        let affine = self.affine_points();
        if !affine.contains(&self.z) {
            return bad(format!("z = {} is collinear with x", g.point_name(self.z)));
        }
        if affine.len() != self.group.order() {
            return bad(format!(
                "{} affine points but |T| = {}",
                affine.len(),
                self.group.order()
            ));
        }
        let mut orbit: Vec<usize> = self.translations.iter().map(|t| t.point(self.z)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        if orbit != affine {
            return bad("T is not sharply transitive on the affine points".into());
        }
        Ok(())
    }

    pub fn gp(&self) -> &VerifiedGp {
        &self.gp
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn group(&self) -> ElemAbelianGroup {
        self.group
    }

    pub fn translations(&self) -> &[GeomMorphism] {
        &self.translations
    }

    /// Points not collinear with `x`, ascending.
    pub fn affine_points(&self) -> Vec<usize> {
        let g = self.gp.geometry();
        (0..g.num_points())
            .filter(|&p| p != self.x && !g.collinear(p, self.x))
            .collect()
    }

    /// The same quadrangle with another affine point.
    pub fn with_affine_point(mut self, z: usize) -> Result<Self> {
        self.z = z;
        self.validate()?;
        Ok(self)
    }
}

/// The translation quadrangle of a Kantor family: its coset geometry with
/// `x = ∞`, `z = 0` and `T` acting by translation.
pub fn tgq_of(kf: &KantorFamily) -> Result<TgqInstance> {
    let cg = coset_geometry(kf)?;
    let gp = verify_gp(&cg.geometry).map_err(|r| Error::NotAPolygon(r.to_string()))?;
    let group = kf.group();
    let translations = group.elements().map(|g| cg.translation(&g)).collect();
    TgqInstance::new(gp, cg.x, cg.z, group, translations)
}

/// Stabilizer `{g : pred(τ_g)}` as a subgroup; fails if the set is not one.
fn stabilizer(inst: &TgqInstance, pred: impl Fn(&GeomMorphism) -> bool, what: &str) -> Result<Subgroup> {
    let elements: Vec<Vector> = inst
        .translations
        .iter()
        .enumerate()
        .filter(|(_, t)| pred(t))
        .map(|(i, _)| inst.group.element(i))
        .collect();
    let sub = Subgroup::from_generators(inst.group, elements.iter().cloned())?;
    if sub.order() != elements.len() {
        return Err(Error::InvalidTgq(format!("stabilizer of {what} is not a subgroup")));
    }
    Ok(sub)
}

/// Reads off the Kantor family at `z`: for each line `M` through `z`, the
/// stabilizer `T_M` paired with the stabilizer `T_m` of the point `m` of `M`
/// collinear with `x`. Members come out in canonical order.
pub fn kantor_from_tgq(inst: &TgqInstance) -> Result<KantorFamily> {
    let g = inst.gp.geometry();
    let mut members = Vec::new();
    for &line in g.lines_through(inst.z) {
        let m = g
            .points_on(line)
            .iter()
            .copied()
            .find(|&p| g.collinear(p, inst.x))
            .ok_or_else(|| {
                Error::InvalidTgq(format!("line {} has no point collinear with x", g.line_name(line)))
            })?;
        let a = stabilizer(inst, |t| t.line(line) == line, g.line_name(line))?;
        let a_star = stabilizer(inst, |t| t.point(m) == m, g.point_name(m))?;
        members.push(Member { a, a_star });
    }
    Ok(KantorFamily::new(inst.group, members)?.canonicalized())
}
