//! The functors `F: mod A -> lrp(A^env)` and `G = - ⊗_A k` for the group
//! algebra `A` of an abelian `p`-group.
//!
//! `F(M) = M ⊗ A` with `a · (m ⊗ b) = Σ a₁m ⊗ a₂b` and `(m ⊗ b) · a = m ⊗ ba`,
//! basis index `m * dim A + b`. Modules may be given over either the group
//! basis or the truncated `w`-presentation.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraMap, AlgebraSpec, HopfAlgebra};
use crate::bimodule::{tensor, Bimodule, FreeBasis, Side};
use crate::error::{Error, Result};
use crate::ffmat::{unit_vec, FpMatrix, Subspace};
use crate::module::{is_homomorphism, is_isomorphic, Module};

/// The Hopf structure whose group algebra or `w`-algebra is `alg`.
pub fn hopf_structure(alg: &Algebra) -> Result<HopfAlgebra> {
    match alg.spec() {
        AlgebraSpec::Truncated { p, exponents } => HopfAlgebra::abelian(*p, exponents),
        AlgebraSpec::Group { p, orders } => HopfAlgebra::abelian(*p, orders),
        _ => Err(Error::Unsupported(
            "Hopf structure needs an abelian group algebra".into(),
        )),
    }
}

/// `Δ` in the basis of `alg`, which must be one of the two presentations of `h`.
pub fn coproduct(h: &HopfAlgebra, alg: &Algebra) -> Result<FpMatrix> {
    if alg == &**h.group_algebra() {
        Ok(h.comultiplication().clone())
    } else if alg == &**h.w_algebra() {
        Ok(h.comultiplication_w())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// `δ: A -> A^env`, `g ↦ g ⊗ g⁻¹`, on the group basis.
pub fn delta_embedding(h: &HopfAlgebra) -> Result<AlgebraMap> {
    let a = h.group_algebra();
    let f = a.field();
    let id = FpMatrix::identity(f, a.dim());
    let m = &id.kronecker(h.antipode()) * h.comultiplication();
    AlgebraMap::new(a.clone(), a.enveloping(), m)
}

/// `F(M)`.
pub fn functor_f(m: &Module) -> Result<Bimodule> {
    let a = m.algebra().clone();
    let h = hopf_structure(&a)?;
    let delta = coproduct(&h, &a)?;
    let f = a.field();
    let d = a.dim();
    let dm = m.dim();
    let im = FpMatrix::identity(f, dm);
    let left = a
        .generators()
        .iter()
        .map(|&g| {
            let mut acc = FpMatrix::zeros(f, dm * d, dm * d);
            for kl in 0..d * d {
                let c = delta.get(kl, g);
                if c != 0 {
                    let t = m.basis_action(kl / d).kronecker(a.left_basis_matrix(kl % d));
                    acc.add_scaled(c, &t);
                }
            }
            acc
        })
        .collect();
    let right = a
        .generators()
        .iter()
        .map(|&g| im.kronecker(a.right_basis_matrix(g)))
        .collect();
    let b = Bimodule::from_actions_unchecked(a.clone(), dm * d, left, right);
    // Right-free on m ⊗ 1, and (m ⊗ 1) · b_a = m ⊗ b_a is a basis vector.
    let basis = FreeBasis {
        gens: (0..dm).map(|i| unit_vec(dm * d, i * d + a.unit_index())).collect(),
        coords: FpMatrix::identity(f, dm * d),
    };
    Ok(b.with_free_basis(Side::Right, Some(basis)))
}

/// `G(B) = B ⊗_A k` with the quotient map from `B`.
#[derive(Clone, Debug)]
pub struct GImage {
    pub module: Module,
    /// `dim G(B) x dim B`.
    pub projection: FpMatrix,
    /// A linear section of the projection.
    pub section: FpMatrix,
}

/// `G(B)`: the left module `B / B·I(A)`.
pub fn functor_g(b: &Bimodule) -> GImage {
    let f = b.field();
    let n = b.base().num_generators();
    let shifted = b.inner().shifted_actions();
    let mut rel = Subspace::zero(f, b.dim());
    for s in &shifted[n..] {
        for c in s.columns() {
            rel.insert(&c);
        }
    }
    let (module, projection) = b.forget_right().quotient(&rel);
    GImage {
        module,
        projection,
        section: rel.quotient_section(),
    }
}

/// The comparison `G F M -> M` induced by `m ⊗ b ↦ ε(b) m`.
pub fn gf_comparison(m: &Module) -> Result<(GImage, FpMatrix)> {
    let a = m.algebra();
    let fm = functor_f(m)?;
    let g = functor_g(&fm);
    let f = a.field();
    let eps = FpMatrix::new(f, 1, a.dim(), a.augmentation().to_vec())?;
    let e = FpMatrix::identity(f, m.dim()).kronecker(&eps);
    let cmp = &e * &g.section;
    Ok((g, cmp))
}

/// `G F M ≅ M`, witnessed by the explicit comparison map and confirmed by the
/// isomorphism test.
pub fn check_gf_identity(m: &Module, seed: u64) -> Result<bool> {
    let (g, cmp) = gf_comparison(m)?;
    if !cmp.is_square() || !cmp.is_invertible() || !is_homomorphism(&g.module, m, &cmp)? {
        return Ok(false);
    }
    Ok(is_isomorphic(&g.module, m, seed)?.is_yes())
}

/// `Θ: F(M ⊗ N) -> F(M) ⊗_A F(N)`, `m ⊗ n ⊗ b ↦ (m ⊗ 1) ⊗ (n ⊗ b)`, checked
/// to be a bijective bimodule map.
pub fn check_f_monoidal(m: &Module, n: &Module) -> Result<bool> {
    let a = m.algebra();
    let h = hopf_structure(a)?;
    let delta = coproduct(&h, a)?;
    let mn = m.tensor_over_field(n, &delta)?;
    let fmn = functor_f(&mn)?;
    let fm = Arc::new(functor_f(m)?);
    let fn_ = Arc::new(functor_f(n)?);
    let t = tensor(&fm, &fn_)?;
    if t.dim() != fmn.dim() {
        return Ok(false);
    }
    let d = a.dim();
    let (dm, dn) = (m.dim(), n.dim());
    let u = a.unit_index();
    let cols: Vec<Vec<u32>> = (0..fmn.dim())
        .map(|idx| {
            let (mi, rest) = (idx / (dn * d), idx % (dn * d));
            t.project(&unit_vec(dm * d, mi * d + u), &unit_vec(dn * d, rest))
        })
        .collect();
    let theta = FpMatrix::from_columns(a.field(), t.dim(), &cols);
    Ok(theta.is_invertible() && is_homomorphism(fmn.inner(), t.bimodule().inner(), &theta)?)
}

/// `F(M) = A^env ⊗_{δ(A)} M` computed literally as a quotient of
/// `A^env ⊗_k M`. `M` must be over the group basis.
pub fn literal_induction(m: &Module) -> Result<Bimodule> {
    let a = m.algebra().clone();
    let h = hopf_structure(&a)?;
    if a != *h.group_algebra() {
        return Err(Error::Unsupported("literal induction needs the group basis".into()));
    }
    let delta = delta_embedding(&h)?;
    let env = a.enveloping();
    let f = a.field();
    let de = env.dim();
    let dm = m.dim();
    let (ie, im) = (FpMatrix::identity(f, de), FpMatrix::identity(f, dm));
    let mut rel = Subspace::zero(f, de * dm);
    for &g in a.generators() {
        let r = &env.right_mult_matrix(&delta.matrix().column(g)).kronecker(&im)
            - &ie.kronecker(m.basis_action(g));
        for c in r.columns() {
            rel.insert(&c);
        }
    }
    let q = rel.quotient_projection();
    let s = rel.quotient_section();
    let actions: Vec<FpMatrix> = env
        .generators()
        .iter()
        .map(|&x| &(&q * &env.left_basis_matrix(x).kronecker(&im)) * &s)
        .collect();
    let n = a.num_generators();
    let (left, right) = (actions[..n].to_vec(), actions[n..].to_vec());
    Bimodule::from_actions(a, left, right)
}

/// The closed form of `F` agrees with literal induction along `δ`. Modules over
/// the `w`-presentation are first moved to the group basis.
pub fn check_literal_induction(m: &Module, seed: u64) -> Result<bool> {
    let a = m.algebra();
    let h = hopf_structure(a)?;
    let mg = if a == h.group_algebra() {
        m.clone()
    } else {
        let iso = AlgebraMap::new(h.group_algebra().clone(), h.w_algebra().clone(), h.to_w().clone())?;
        m.restrict_along(&iso)?
    };
    let closed = functor_f(&mg)?;
    let literal = literal_induction(&mg)?;
    Ok(is_isomorphic(closed.inner(), literal.inner(), seed)?.is_yes())
}

/// `B` is projective over `A^env` exactly when `G(B)` is projective over `A`.
pub fn sincerity_witness(b: &Bimodule) -> Result<bool> {
    let env_proj = b.is_env_projective()?;
    let g_proj = functor_g(b).module.is_projective()?;
    Ok(env_proj == g_proj)
}
