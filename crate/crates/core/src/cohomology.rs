//! Projective resolutions, Ext and Hochschild cohomology dimensions over
//! local algebras, and the action of algebra automorphisms on `Ext^•(k, k)`.
//!
//! Free modules `A^r` use the basis index `s * dim A + a` for `b_a` times the
//! `s`-th generator.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraSpec, Automorphism};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::ffmat::{unit_vec, FpMatrix, Subspace};
use crate::module::Module;

/// Dimensions in degrees `0..=max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub dims: Vec<usize>,
}

/// A free resolution `… -> P_1 -> P_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: Module,
    ranks: Vec<usize>,
    /// `differentials[i-1]` is `∂_i: P_i -> P_{i-1}`.
    differentials: Vec<FpMatrix>,
    augmentation: FpMatrix,
}

/// A resolution whose differentials land in the radical.
pub type MinimalResolution = Resolution;

/// Minimal resolution of `M` through degree `len`.
pub fn minimal_resolution(m: &Module, len: usize) -> Result<Resolution> {
    Resolution::build(m, len, 0)
}

/// A deliberately non-minimal resolution: every cover uses `extra` redundant
/// generators on top of a minimal set.
pub fn padded_resolution(m: &Module, len: usize, extra: usize) -> Result<Resolution> {
    Resolution::build(m, len, extra)
}

impl Resolution {
    fn build(m: &Module, len: usize, extra: usize) -> Result<Self> {
        let alg = m.algebra().clone();
        if !alg.is_local() {
            return Err(Error::NotLocal);
        }
        let f = alg.field();
        let d = alg.dim();
        let mut ranks = Vec::with_capacity(len + 1);
        let mut maps = Vec::with_capacity(len + 1);
        // Current kernel and its inclusion into the previous term.
        let mut k = m.clone();
        let mut incl = FpMatrix::identity(f, m.dim());
        for _ in 0..=len {
            let mut gens = k.top_generators();
            if !gens.is_empty() {
                gens.extend((0..extra.min(k.dim())).map(|i| unit_vec(k.dim(), i)));
            }
            let r = gens.len();
            let cols: Vec<Vec<u32>> = gens
                .iter()
                .flat_map(|g| (0..d).map(|a| k.basis_action(a).mul_vec(g)).collect::<Vec<_>>())
                .collect();
            let cover = FpMatrix::from_columns(f, k.dim(), &cols);
            maps.push(&incl * &cover);
            ranks.push(r);
            let ker = Subspace::from_vectors(f, r * d, cover.kernel_vectors());
            let (next, inc) = Module::free(alg.clone(), r).submodule(&ker);
            k = next;
            incl = inc;
        }
        let augmentation = maps.remove(0);
        Ok(Resolution {
            module: m.clone(),
            ranks,
            differentials: maps,
            augmentation,
        })
    }

    pub fn module(&self) -> &Module {
        &self.module
    }
    pub fn algebra(&self) -> &Arc<Algebra> {
        self.module.algebra()
    }
    pub fn len(&self) -> usize {
        self.ranks.len() - 1
    }
    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
    pub fn term(&self, i: usize) -> Module {
        Module::free(self.algebra().clone(), self.ranks[i])
    }
    /// `∂_i: P_i -> P_{i-1}` for `i ≥ 1`.
    pub fn differential(&self, i: usize) -> &FpMatrix {
        &self.differentials[i - 1]
    }
    pub fn augmentation(&self) -> &FpMatrix {
        &self.augmentation
    }

    /// Exact in every degree below the top, with surjective augmentation.
    pub fn is_exact(&self) -> bool {
        let d = self.algebra().dim();
        if self.augmentation.rank() != self.module.dim() {
            return false;
        }
        let mut prev_rank = self.augmentation.rank();
        for i in 1..=self.len() {
            let di = self.differential(i);
            let back = if i == 1 { &self.augmentation } else { self.differential(i - 1) };
            if !(back * di).is_zero() {
                return false;
            }
            // image ∂_i = kernel of the previous map
            if di.rank() != self.ranks[i - 1] * d - prev_rank {
                return false;
            }
            prev_rank = di.rank();
        }
        true
    }

    /// Every differential lands in the radical of its target.
    pub fn is_minimal(&self) -> bool {
        let alg = self.algebra();
        let d = alg.dim();
        let eps = alg.augmentation();
        (1..=self.len()).all(|i| {
            let di = self.differential(i);
            (0..di.cols()).all(|c| {
                (0..self.ranks[i - 1]).all(|t| {
                    let s: u64 = (0..d).map(|a| eps[a] as u64 * di.get(t * d + a, c) as u64).sum();
                    s.is_multiple_of(alg.p() as u64)
                })
            })
        })
    }
}

/// `δ: Hom(P_{i-1}, N) -> Hom(P_i, N)`, `φ ↦ φ ∘ ∂`, with `Hom(A^r, N) ≅ N^r`
/// through the images of the generators.
fn cochain_differential(alg: &Algebra, di: &FpMatrix, r_prev: usize, r_cur: usize, n: &Module) -> FpMatrix {
    let d = alg.dim();
    let dn = n.dim();
    let u = alg.unit_index();
    let mut out = FpMatrix::zeros(alg.field(), r_cur * dn, r_prev * dn);
    for s in 0..r_cur {
        for t in 0..r_prev {
            let mut blk = FpMatrix::zeros(alg.field(), dn, dn);
            for a in 0..d {
                let c = di.get(t * d + a, s * d + u);
                if c != 0 {
                    blk.add_scaled(c, n.basis_action(a));
                }
            }
            out.set_block(s * dn, t * dn, &blk);
        }
    }
    out
}

/// Cohomology of `Hom(P_•, N)` in degrees `0..=max` for a complex of free
/// modules with the given ranks and differentials (`diffs[i-1] = ∂_i`).
fn hom_cohomology(alg: &Algebra, ranks: &[usize], diffs: &[FpMatrix], n: &Module, max: usize) -> Vec<usize> {
    let dn = n.dim();
    let rank_delta = |i: usize| -> usize {
        if i == 0 || i >= ranks.len() {
            0
        } else {
            cochain_differential(alg, &diffs[i - 1], ranks[i - 1], ranks[i], n).rank()
        }
    };
    (0..=max)
        .map(|i| ranks[i] * dn - rank_delta(i + 1) - rank_delta(i))
        .collect()
}

/// `dim Ext^i(M, N)` for `0 ≤ i ≤ max`.
pub fn ext_dims(m: &Module, n: &Module, max: usize) -> Result<GradedDims> {
    let res = minimal_resolution(m, max + 1)?;
    ext_dims_from(&res, n, max)
}

/// `dim Ext^i(M, N)` from any resolution of `M` of length `> max`.
pub fn ext_dims_from(res: &Resolution, n: &Module, max: usize) -> Result<GradedDims> {
    if **n.algebra() != **res.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if res.len() <= max {
        return Err(Error::Shape(format!("resolution too short for degree {max}")));
    }
    Ok(GradedDims {
        dims: hom_cohomology(res.algebra(), &res.ranks, &res.differentials, n, max),
    })
}

/// `dim HH^i(A) = dim Ext^i_{A^env}(A, A)`.
pub fn hochschild_dims(a: &Arc<Algebra>, max: usize) -> Result<GradedDims> {
    if !a.is_unipotent() {
        return Err(Error::NotLocal);
    }
    let reg = Bimodule::regular(a.clone());
    ext_dims(reg.inner(), reg.inner(), max)
}

/// `dim HH^i(A) = dim A · dim H^i(A, k)` for `0 ≤ i ≤ max`.
pub fn holm_check(a: &Arc<Algebra>, max: usize) -> Result<bool> {
    if !a.is_elementary_abelian() {
        return Err(Error::Unsupported(
            "the decomposition check needs an elementary abelian group algebra".into(),
        ));
    }
    let hh = hochschild_dims(a, max)?;
    let k = Module::trivial(a.clone());
    let h = ext_dims(&k, &k, max)?;
    Ok(hh.dims.iter().zip(&h.dims).all(|(x, y)| *x == a.dim() * y))
}

/// The tensor product of the periodic resolutions of `k` over each
/// `k[w_i]/(w_i^{e_i})`, built directly from its closed form.
///
/// `P_j` has one generator `ε_J` per exponent tuple `J` with `|J| = j`, in
/// degree-lex order. `∂ ε_J = Σ_i (-1)^{J_1+…+J_{i-1}} x_i(J_i) ε_{J - e_i}`
/// with `x_i(j) = w_i` for odd `j` and `w_i^{e_i - 1}` for even `j`.
#[derive(Clone, Debug)]
pub struct StandardComplex {
    algebra: Arc<Algebra>,
    labels: Vec<Vec<Vec<u32>>>,
    differentials: Vec<FpMatrix>,
}

impl StandardComplex {
    pub fn new(a: &Arc<Algebra>, len: usize) -> Result<Self> {
        let AlgebraSpec::Truncated { exponents, .. } = a.spec() else {
            return Err(Error::Unsupported("the standard complex needs a truncated algebra".into()));
        };
        let n = exponents.len();
        let f = a.field();
        let d = a.dim();
        let labels: Vec<Vec<Vec<u32>>> = (0..=len).map(|j| tuples_of_degree(n, j as u32)).collect();
        let power = |i: usize, e: u32| -> Vec<u32> {
            let mut ex = vec![0; n];
            ex[i] = e;
            unit_vec(d, a.index_of_exponents(&ex).unwrap())
        };
        let mut differentials = Vec::with_capacity(len);
        for j in 1..=len {
            let (src, tgt) = (&labels[j], &labels[j - 1]);
            let mut dj = FpMatrix::zeros(f, tgt.len() * d, src.len() * d);
            for (s, jt) in src.iter().enumerate() {
                let mut img = vec![0; tgt.len() * d];
                let mut sign_sum = 0u32;
                for i in 0..n {
                    if jt[i] > 0 {
                        let mut lower = jt.clone();
                        lower[i] -= 1;
                        let t = tgt.iter().position(|x| *x == lower).unwrap();
                        let x = if jt[i] % 2 == 1 { power(i, 1) } else { power(i, exponents[i] - 1) };
                        let c = if sign_sum.is_multiple_of(2) { 1 } else { f.neg(1) };
                        let mut slot = vec![0; d];
                        f.axpy(&mut slot, c, &x);
                        f.axpy(&mut img[t * d..(t + 1) * d], 1, &slot);
                    }
                    sign_sum += jt[i];
                }
                // Column of b_a ε_J is b_a times the image of ε_J.
                for a_idx in 0..d {
                    let mut col = vec![0; tgt.len() * d];
                    for t in 0..tgt.len() {
                        let blk = a.mul(&unit_vec(d, a_idx), &img[t * d..(t + 1) * d]);
                        col[t * d..(t + 1) * d].copy_from_slice(&blk);
                    }
                    for (r, v) in col.into_iter().enumerate() {
                        dj.set(r, s * d + a_idx, v);
                    }
                }
            }
            differentials.push(dj);
        }
        Ok(StandardComplex {
            algebra: a.clone(),
            labels,
            differentials,
        })
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    /// Exponent tuple labelling each generator in degree `j`.
    pub fn labels(&self, j: usize) -> &[Vec<u32>] {
        &self.labels[j]
    }

    /// `∂² = 0` and the homology is `k` in degree 0 and zero below the top.
    pub fn is_resolution_of_trivial(&self) -> bool {
        let d = self.algebra.dim();
        let ranks = self.ranks();
        let mut prev = 1; // rank of the augmentation A -> k
        for (j, dj) in self.differentials.iter().enumerate() {
            if j > 0 && !(&self.differentials[j - 1] * dj).is_zero() {
                return false;
            }
            let r = dj.rank();
            if r != ranks[j] * d - prev {
                return false;
            }
            prev = r;
        }
        true
    }

    /// `dim Ext^i(k, N)` from this complex.
    pub fn ext_dims(&self, n: &Module, max: usize) -> Result<GradedDims> {
        if self.labels.len() <= max + 1 {
            return Err(Error::Shape(format!("complex too short for degree {max}")));
        }
        Ok(GradedDims {
            dims: hom_cohomology(&self.algebra, &self.ranks(), &self.differentials, n, max),
        })
    }
}

/// Exponent tuples of length `n` and total degree `deg`, lexicographically
/// descending.
fn tuples_of_degree(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in tuples_of_degree(n - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Matrix of `ψ` acting on `Ext^deg(k, k)` in the basis dual to the
/// generators of the minimal resolution.
///
/// The identity `k -> ψ^*k` lifts to a chain map `T` with `T(ax) = ψ(a)T(x)`;
/// the action is `f ↦ f ∘ T`, so the result is the transpose of the top part
/// of `T_deg` and composites act in reverse order.
pub fn aut_action_on_cohomology(psi: &Automorphism, deg: usize) -> Result<FpMatrix> {
    let a = psi.algebra();
    let k = Module::trivial(a.clone());
    let res = minimal_resolution(&k, deg)?;
    let f = a.field();
    let d = a.dim();
    let u = a.unit_index();
    let eps = a.augmentation();
    let psi_basis: Vec<Vec<u32>> = (0..d).map(|i| psi.apply(&unit_vec(d, i))).collect();
    // Images of the generators of P_i under T_i.
    let extend = |r: usize, ys: &[Vec<u32>]| -> FpMatrix {
        let p = Module::free(a.clone(), r);
        let cols: Vec<Vec<u32>> = ys
            .iter()
            .flat_map(|y| psi_basis.iter().map(|x| p.act(x, y)).collect::<Vec<_>>())
            .collect();
        FpMatrix::from_columns(f, r * d, &cols)
    };
    let r0 = res.ranks()[0];
    let mut ys: Vec<Vec<u32>> = Vec::with_capacity(r0);
    for s in 0..r0 {
        let target = res.augmentation().column(s * d + u);
        ys.push(res.augmentation().solve(&target).ok_or(Error::LiftFailed(0))?);
    }
    let mut t_prev = extend(r0, &ys);
    for i in 1..=deg {
        let di = res.differential(i);
        let ri = res.ranks()[i];
        ys = (0..ri)
            .map(|s| {
                let target = t_prev.mul_vec(&di.column(s * d + u));
                di.solve(&target).ok_or(Error::LiftFailed(i))
            })
            .collect::<Result<_>>()?;
        t_prev = extend(ri, &ys);
    }
    let r = res.ranks()[deg];
    let top = FpMatrix::from_fn(f, r, r, |t, s| {
        let v = &ys[s][t * d..(t + 1) * d];
        f.dot(v, eps)
    });
    Ok(top.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_over(p: u32, e: &[u32]) -> Module {
        Module::trivial(Algebra::truncated(p, e).unwrap())
    }

    #[test]
    fn resolution_of_k_over_truncated_cyclic() {
        let k = k_over(3, &[3]);
        let r = minimal_resolution(&k, 4).unwrap();
        assert_eq!(r.ranks(), &[1, 1, 1, 1, 1]);
        assert!(r.is_exact());
        assert!(r.is_minimal());
        // ∂_1 = w·, ∂_2 = w²·
        assert_eq!(r.differential(1).column(0), vec![0, 1, 0]);
        assert_eq!(r.differential(2).column(0), vec![0, 0, 1]);
    }

    #[test]
    fn resolution_of_projective_stops() {
        let a = Algebra::truncated(2, &[2, 2]).unwrap();
        let r = minimal_resolution(&Module::regular(a), 3).unwrap();
        assert_eq!(r.ranks(), &[1, 0, 0, 0]);
        assert!(r.is_exact());
    }

    #[test]
    fn koszul_ranks_over_env() {
        let a = Algebra::truncated(2, &[2]).unwrap();
        let k = Module::trivial(a.enveloping());
        let r = minimal_resolution(&k, 3).unwrap();
        assert_eq!(r.ranks(), &[1, 2, 3, 4]);
    }

    #[test]
    fn ext_examples() {
        let k = k_over(3, &[3]);
        assert_eq!(ext_dims(&k, &k, 6).unwrap().dims, vec![1; 7]);
        let k2 = k_over(2, &[2, 2]);
        assert_eq!(ext_dims(&k2, &k2, 4).unwrap().dims, vec![1, 2, 3, 4, 5]);
        let a = Algebra::truncated(3, &[3]).unwrap();
        let reg = Module::regular(a.clone());
        let j2 = Module::new(a.clone(), vec![FpMatrix::from_rows(a.field(), &[vec![0, 0], vec![1, 0]]).unwrap()]).unwrap();
        assert_eq!(ext_dims(&reg, &j2, 3).unwrap().dims, vec![2, 0, 0, 0]);
    }

    #[test]
    fn padded_resolution_agrees() {
        for (p, e) in [(2u32, vec![2u32]), (3, vec![3]), (2, vec![2, 2])] {
            let k = k_over(p, &e);
            let pad = padded_resolution(&k, 4, 1).unwrap();
            assert!(pad.is_exact());
            assert!(!pad.is_minimal());
            let a = ext_dims_from(&pad, &k, 3).unwrap();
            assert_eq!(a, ext_dims(&k, &k, 3).unwrap());
        }
    }

    #[test]
    fn standard_complex_is_a_resolution() {
        for (p, e) in [(2u32, vec![2u32]), (3, vec![3]), (2, vec![2, 2]), (3, vec![3, 3])] {
            let a = Algebra::truncated(p, &e).unwrap();
            let c = StandardComplex::new(&a, 5).unwrap();
            assert!(c.is_resolution_of_trivial(), "p={p} e={e:?}");
            let k = Module::trivial(a.clone());
            assert_eq!(c.ext_dims(&k, 4).unwrap(), ext_dims(&k, &k, 4).unwrap());
        }
    }

    #[test]
    fn hochschild_examples() {
        let k = Algebra::truncated(2, &[]).unwrap();
        assert_eq!(hochschild_dims(&k, 3).unwrap().dims, vec![1, 0, 0, 0]);
        let a = Algebra::truncated(2, &[2]).unwrap();
        assert_eq!(hochschild_dims(&a, 6).unwrap().dims, vec![2; 7]);
        let b = Algebra::truncated(3, &[3]).unwrap();
        assert_eq!(hochschild_dims(&b, 0).unwrap().dims, vec![3]);
        assert!(holm_check(&a, 6).unwrap());
        assert!(holm_check(&b, 4).unwrap());
    }

    #[test]
    fn automorphism_actions() {
        let a = Algebra::truncated(3, &[3]).unwrap();
        let id = aut_action_on_cohomology(&Automorphism::identity(a.clone()), 2).unwrap();
        assert!(id.is_identity());
        let psi = Automorphism::scalar(&a, 2).unwrap();
        let c = aut_action_on_cohomology(&psi, 1).unwrap();
        assert_eq!(c.get(0, 0), 2);

        let b = Algebra::truncated(2, &[2, 2]).unwrap();
        let swap = FpMatrix::from_rows(b.field(), &[vec![0, 1], vec![1, 0]]).unwrap();
        let s = Automorphism::from_linear(&b, &swap).unwrap();
        assert_eq!(aut_action_on_cohomology(&s, 1).unwrap(), swap);
    }

    #[test]
    fn action_reverses_composition() {
        let b = Algebra::truncated(3, &[3, 3]).unwrap();
        let f = b.field();
        let x = Automorphism::from_linear(&b, &FpMatrix::from_rows(f, &[vec![1, 1], vec![0, 1]]).unwrap()).unwrap();
        let y = Automorphism::from_linear(&b, &FpMatrix::from_rows(f, &[vec![2, 0], vec![1, 1]]).unwrap()).unwrap();
        for deg in 1..=2 {
            let lhs = aut_action_on_cohomology(&x.compose(&y), deg).unwrap();
            let rhs = &aut_action_on_cohomology(&y, deg).unwrap() * &aut_action_on_cohomology(&x, deg).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
