//! Rank varieties over elementary abelian `p`-groups, at `𝔽_p`-rational points.
//!
//! A point `[α_1 : … : α_m]` selects the shifted element `Σ α_i (x_i - ε(x_i))`
//! of the algebra, where `x_i` are its generators. `M` lies over the point when
//! its restriction to the cyclic subalgebra generated by that element is not
//! free. Only rational points are enumerated, so a variety here is the set of
//! rational points of the usual one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::ffmat::{Field, FpMatrix};
use crate::hopf::{coproduct, hopf_structure};
use crate::module::Module;
use crate::par::{map_slice, Exec};

/// A point of projective space, first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectivePoint(Vec<u32>);

impl ProjectivePoint {
    /// Normalize a nonzero vector.
    pub fn new(field: Field, coords: &[u32]) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|&&c| c != 0)
            .ok_or_else(|| Error::Shape("projective point needs a nonzero coordinate".into()))?;
        let inv = field.inv(*lead);
        Ok(ProjectivePoint(coords.iter().map(|&c| field.mul(c, inv)).collect()))
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// All points of `P^{len-1}(𝔽_p)`, in increasing order.
pub fn projective_points(field: Field, len: usize) -> Vec<ProjectivePoint> {
    let p = field.p();
    let mut out = Vec::new();
    for lead in (0..len).rev() {
        let tail = len - lead - 1;
        let count = (p as usize).pow(tail as u32);
        for mut code in 0..count {
            let mut v = vec![0; len];
            v[lead] = 1;
            for c in v[lead + 1..].iter_mut().rev() {
                *c = (code % p as usize) as u32;
                code /= p as usize;
            }
            out.push(ProjectivePoint(v));
        }
    }
    out.sort();
    out
}

/// A set of rational points in `P^ambient`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankVariety {
    pub p: u32,
    pub ambient: usize,
    pub points: Vec<ProjectivePoint>,
}

impl RankVariety {
    fn from_points(p: u32, ambient: usize, mut points: Vec<ProjectivePoint>) -> Self {
        points.sort();
        points.dedup();
        RankVariety { p, ambient, points }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn contains(&self, pt: &ProjectivePoint) -> bool {
        self.points.binary_search(pt).is_ok()
    }

    pub fn intersection(&self, other: &RankVariety) -> RankVariety {
        let pts = self.points.iter().filter(|x| other.contains(x)).cloned().collect();
        Self::from_points(self.p, self.ambient, pts)
    }

    pub fn union(&self, other: &RankVariety) -> RankVariety {
        let pts = self.points.iter().chain(&other.points).cloned().collect();
        Self::from_points(self.p, self.ambient, pts)
    }
}

impl fmt::Display for RankVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn require_elementary_abelian(m: &Module) -> Result<()> {
    if m.algebra().is_elementary_abelian() {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "rank varieties need an elementary abelian group algebra".into(),
        ))
    }
}

fn combine(field: Field, dim: usize, shifted: &[FpMatrix], pt: &ProjectivePoint) -> FpMatrix {
    let mut x = FpMatrix::zeros(field, dim, dim);
    for (c, a) in pt.coords().iter().zip(shifted) {
        if *c != 0 {
            x.add_scaled(*c, a);
        }
    }
    x
}

/// `X = Σ α_i ρ(x_i - ε(x_i))`.
pub fn shifted_unit_action(m: &Module, pt: &ProjectivePoint) -> Result<FpMatrix> {
    require_elementary_abelian(m)?;
    let shifted = m.shifted_actions();
    if pt.len() != shifted.len() {
        return Err(Error::Shape(format!(
            "point has {} coordinates, algebra has {} generators",
            pt.len(),
            shifted.len()
        )));
    }
    let x = combine(m.field(), m.dim(), &shifted, pt);
    if !x.pow(m.field().p() as u64).is_zero() {
        return Err(Error::InvalidModule("shifted element is not p-nilpotent".into()));
    }
    Ok(x)
}

/// Free over `k[X]/(X^p)`: every Jordan block of `X` has size `p`.
pub fn is_free_restriction(x: &FpMatrix, p: u32) -> bool {
    let n = x.rows();
    if n == 0 {
        return true;
    }
    if !n.is_multiple_of(p as usize) || !x.pow(p as u64).is_zero() {
        return false;
    }
    x.pow(p as u64 - 1).rank() == n / p as usize
}

/// The points of `P^{m-1}(𝔽_p)` over which `M` is not free, `m` the number
/// of generators.
pub fn rank_variety(m: &Module) -> Result<RankVariety> {
    rank_variety_exec(m, Exec::default())
}

pub fn rank_variety_exec(m: &Module, exec: Exec) -> Result<RankVariety> {
    require_elementary_abelian(m)?;
    let f = m.field();
    let p = f.p();
    let shifted = m.shifted_actions();
    let len = shifted.len();
    let pts = projective_points(f, len);
    let keep = map_slice(exec, &pts, |pt| {
        !is_free_restriction(&combine(f, m.dim(), &shifted, pt), p)
    });
    let points = pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(x, _)| x).collect();
    Ok(RankVariety::from_points(p, len.saturating_sub(1), points))
}

/// Variety of a bimodule, as a module over the enveloping algebra. The first
/// half of the coordinates pair with left generators.
pub fn bimodule_rank_variety(b: &Bimodule) -> Result<RankVariety> {
    rank_variety(b.inner())
}

/// For an lrp bimodule, no point of its variety has all left coordinates zero
/// or all right coordinates zero. Non-lrp input passes vacuously.
pub fn lrp_consistency_check(b: &Bimodule) -> Result<bool> {
    if !b.is_lrp()? {
        return Ok(true);
    }
    let n = b.base().num_generators();
    let v = bimodule_rank_variety(b)?;
    Ok(v.points.iter().all(|pt| {
        let (l, r) = pt.coords().split_at(n);
        l.iter().any(|&c| c != 0) && r.iter().any(|&c| c != 0)
    }))
}

/// `V(M ⊗_k N) = V(M) ∩ V(N)`, with the tensor product taken through the
/// coproduct.
pub fn tensor_product_property_check(m: &Module, n: &Module) -> Result<bool> {
    let h = hopf_structure(m.algebra())?;
    let delta = coproduct(&h, m.algebra())?;
    let mn = m.tensor_over_field(n, &delta)?;
    Ok(rank_variety(&mn)? == rank_variety(m)?.intersection(&rank_variety(n)?))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{Algebra, Automorphism};

    fn pt(p: u32, c: &[u32]) -> ProjectivePoint {
        ProjectivePoint::new(Field::new(p as u64).unwrap(), c).unwrap()
    }

    fn twisted_left(a: &Arc<Algebra>, phi: &Automorphism) -> Bimodule {
        Bimodule::twisted(phi, &Automorphism::identity(a.clone())).unwrap()
    }

    #[test]
    fn point_counts_and_normalization() {
        let f = Field::new(3).unwrap();
        assert_eq!(projective_points(f, 2).len(), 4);
        assert_eq!(projective_points(Field::new(2).unwrap(), 4).len(), 15);
        assert_eq!(pt(3, &[2, 1]).coords(), &[1, 2]);
        assert_eq!(pt(3, &[0, 2]).coords(), &[0, 1]);
        assert!(ProjectivePoint::new(f, &[0, 0]).is_err());
        let all = projective_points(f, 3);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn shifted_actions_examples() {
        let a = Algebra::truncated(3, &[3]).unwrap();
        let reg = Bimodule::regular(a.clone());
        let x = shifted_unit_action(reg.inner(), &pt(3, &[1, 0])).unwrap();
        assert_eq!(&x, reg.left_action(0));
        let t = twisted_left(&a, &Automorphism::scalar(&a, 2).unwrap());
        // α u + v acts by (2α + 1) w.
        let x = shifted_unit_action(t.inner(), &pt(3, &[1, 1])).unwrap();
        assert!(x.is_zero());
        assert!(!is_free_restriction(&x, 3));
        let z = Module::zero(a.enveloping());
        assert!(shifted_unit_action(&z, &pt(3, &[1, 2])).unwrap().is_zero());
        assert!(shifted_unit_action(reg.inner(), &pt(3, &[1])).is_err());
    }

    #[test]
    fn freeness_test() {
        let f = Field::new(3).unwrap();
        let j = FpMatrix::from_fn(f, 3, 3, |i, k| u32::from(i == k + 1));
        assert!(is_free_restriction(&j, 3));
        assert!(!is_free_restriction(&FpMatrix::zeros(f, 3, 3), 3));
        assert!(!is_free_restriction(&FpMatrix::zeros(f, 2, 2), 3));
    }

    #[test]
    fn cyclic_twisted_variety() {
        let a = Algebra::truncated(3, &[3]).unwrap();
        let t = twisted_left(&a, &Automorphism::scalar(&a, 2).unwrap());
        let v = bimodule_rank_variety(&t).unwrap();
        assert_eq!(v.points, vec![pt(3, &[1, 1])]);
        assert_eq!(v.ambient, 1);
        assert!(rank_variety(&Module::regular(a.clone())).unwrap().is_empty());
        assert!(lrp_consistency_check(&t).unwrap());
    }

    #[test]
    fn swap_twisted_variety() {
        let a = Algebra::truncated(2, &[2, 2]).unwrap();
        let swap = FpMatrix::from_rows(a.field(), &[vec![0, 1], vec![1, 0]]).unwrap();
        let phi = Automorphism::from_linear(&a, &swap).unwrap();
        let v = bimodule_rank_variety(&twisted_left(&a, &phi)).unwrap();
        let want = vec![pt(2, &[0, 1, 1, 0]), pt(2, &[1, 0, 0, 1]), pt(2, &[1, 1, 1, 1])];
        assert_eq!(v.points, want);
    }

    #[test]
    fn refuses_non_elementary() {
        let a = Algebra::truncated(2, &[4]).unwrap();
        assert!(rank_variety(&Module::trivial(a)).is_err());
    }

    #[test]
    fn consistency_examples() {
        let a = Algebra::truncated(2, &[2, 2]).unwrap();
        assert!(lrp_consistency_check(&Bimodule::trivial(a.clone())).unwrap());
        let env = Bimodule::free_env(a.clone());
        assert!(bimodule_rank_variety(&env).unwrap().is_empty());
        assert!(lrp_consistency_check(&env).unwrap());
    }

    #[test]
    fn tensor_product_examples() {
        let a = Algebra::truncated(2, &[2, 2]).unwrap();
        let k = Module::trivial(a.clone());
        assert_eq!(rank_variety(&k).unwrap().len(), 3);
        assert!(tensor_product_property_check(&k, &k).unwrap());
        let r = Module::regular(a.clone());
        assert!(tensor_product_property_check(&r, &k).unwrap());
    }

    #[test]
    fn exec_modes_agree() {
        let a = Algebra::truncated(3, &[3, 3]).unwrap();
        let m = Module::trivial(a).direct_sum(&Module::trivial(Algebra::truncated(3, &[3, 3]).unwrap())).unwrap();
        assert_eq!(
            rank_variety_exec(&m, Exec::Sequential).unwrap(),
            rank_variety_exec(&m, Exec::Parallel).unwrap()
        );
    }
}
