use std::collections::HashMap;

use super::family::{verify_kantor, KantorFamily, Member};
use crate::error::{Error, Result};
use crate::groups::linalg;
use crate::groups::{format_vector, ElemAbelianGroup, Subgroup, Vector};
use crate::incidence::{verify_gp, IncidenceGeometry, VerifiedGp};

/// The Kantor family of `T2(O)` for the conic `O: x1² = x0·x2` in
/// `PG(2, p)`, `p` an odd prime.
///
/// For each conic point `y` the member is `A_y = ⟨y⟩` and
/// `A_y* = ⟨y, y'⟩`, where `y'` is the derivative of the parametrization
/// `u ↦ (1, u, u²)` (resp. `u ↦ (u², u, 1)` at the point `(0,0,1)`). The
/// result is verified before it is returned.
pub fn classical_t2_conic(p: u32) -> Result<KantorFamily> {
    if p == 2 {
        return Err(Error::Unsupported("even characteristic unsupported".into()));
    }
    if !linalg::is_prime(p as u64) {
        return Err(Error::Unsupported(format!("{p} is not an odd prime")));
    }
    let group = ElemAbelianGroup::new(p, 3)?;
    let mut pairs: Vec<(Vector, Vector)> = (0..p)
        .map(|u| {
            let point = vec![1, u, linalg::mul(u, u, p)];
            let tangent = vec![0, 1, linalg::mul(2, u, p)];
            (point, tangent)
        })
        .collect();
    pairs.push((vec![0, 0, 1], vec![0, 1, 0]));
    let members = pairs
        .into_iter()
        .map(|(point, tangent)| {
            Ok(Member {
                a: Subgroup::from_generators(group, [point.clone()])?,
                a_star: Subgroup::from_generators(group, [point, tangent])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let family = KantorFamily::new(group, members)?.canonicalized();
    let report = verify_kantor(&family)?;
    if !report.passed() {
        return Err(Error::KantorViolation(format!(
            "conic construction for p = {p} failed verification:\n{report}"
        )));
    }
    Ok(family)
}

fn symplectic_form(x: &[u32], y: &[u32], p: u32) -> u32 {
    let term = |a: u32, b: u32, c: u32, d: u32| linalg::sub(linalg::mul(a, b, p), linalg::mul(c, d, p), p);
    linalg::add(term(x[0], y[1], x[1], y[0]), term(x[2], y[3], x[3], y[2]), p)
}

fn normalized(v: &[u32], p: u32) -> Vector {
    let lead = v.iter().copied().find(|&x| x != 0).expect("nonzero vector");
    let s = linalg::inv(lead, p);
    v.iter().map(|&x| linalg::mul(x, s, p)).collect()
}

/// The symplectic quadrangle `W(p)`: points of `PG(3, p)` and the totally
/// isotropic lines of `x0·y1 − x1·y0 + x2·y3 − x3·y2`.
pub fn symplectic_w(p: u32) -> Result<VerifiedGp> {
    let group = ElemAbelianGroup::new(p, 4)?;
    let points: Vec<Vector> = group
        .elements()
        .filter(|v| v.iter().any(|&x| x != 0) && normalized(v, p) == *v)
        .collect();
    let index: HashMap<Vector, usize> = points.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();

    let mut line_of: HashMap<Vec<Vector>, usize> = HashMap::new();
    let mut line_names = Vec::new();
    let mut line_points: Vec<Vec<usize>> = Vec::new();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            if symplectic_form(a, b, p) != 0 {
                continue;
            }
            let span = Subgroup::from_generators(group, [a.clone(), b.clone()])?;
            let key = span.basis().to_vec();
            if line_of.contains_key(&key) {
                continue;
            }
            let mut pts: Vec<usize> = span
                .elements()
                .into_iter()
                .filter(|v| v.iter().any(|&x| x != 0) && normalized(v, p) == *v)
                .map(|v| index[&v])
                .collect();
            pts.sort_unstable();
            line_of.insert(key.clone(), line_names.len());
            let rows: Vec<String> = key.iter().map(|r| format_vector(r)).collect();
            line_names.push(format!("<{}>", rows.join(",")));
            line_points.push(pts);
        }
    }
    let geom = IncidenceGeometry::from_indices(
        points.iter().map(|v| format_vector(v)).collect(),
        line_names,
        line_points,
    )?;
    verify_gp(&geom).map_err(|r| Error::NotAPolygon(format!("W({p}): {r}")))
}
