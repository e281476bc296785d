//! Left modules as matrix representations, and the homological toolkit over
//! local selfinjective algebras.

use std::sync::{Arc, OnceLock};

use indexmap::IndexMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraMap, AlgebraSpec};
use crate::error::{Error, Result};
use crate::ffmat::{is_zero_vec, unit_vec, Field, FpMatrix, Subspace};

/// Exhaustive isomorphism search runs when the candidate space has at most
/// this many elements.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
/// Random candidates tried when the exhaustive search is too large.
pub const RANDOM_TRIALS: usize = 1000;

/// A finite-dimensional left module: one action matrix per generator.
#[derive(Clone, Debug)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    actions: Vec<FpMatrix>,
    word_actions: Vec<OnceLock<FpMatrix>>,
    basis_actions: Vec<OnceLock<FpMatrix>>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.dim == other.dim && self.actions == other.actions
    }
}
impl Eq for Module {}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isomorphism {
    /// An explicit invertible intertwiner `M -> N`.
    Yes(FpMatrix),
    No,
    /// Random search missed; the modules may or may not be isomorphic.
    Unknown,
}

impl Isomorphism {
    pub fn is_yes(&self) -> bool {
        matches!(self, Isomorphism::Yes(_))
    }
    pub fn witness(&self) -> Option<&FpMatrix> {
        match self {
            Isomorphism::Yes(m) => Some(m),
            _ => None,
        }
    }
}

/// A module homomorphism with its source and target.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub matrix: FpMatrix,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, matrix: FpMatrix) -> Result<Self> {
        if !is_homomorphism(&source, &target, &matrix)? {
            return Err(Error::InvalidMap("matrix does not intertwine the actions".into()));
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim
    }
    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim
    }
    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }
}

/// On-disk module format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    pub algebra: AlgebraSpec,
    pub dim: usize,
    pub actions: IndexMap<String, FpMatrix>,
}

fn lazy_cells(n: usize) -> Vec<OnceLock<FpMatrix>> {
    (0..n).map(|_| OnceLock::new()).collect()
}

impl Module {
    /// Build and validate a module from generator actions, in generator order.
    pub fn new(algebra: Arc<Algebra>, actions: Vec<FpMatrix>) -> Result<Self> {
        let dim = actions.first().map_or(0, FpMatrix::rows);
        Self::with_dim(algebra, dim, actions)
    }

    pub fn with_dim(algebra: Arc<Algebra>, dim: usize, actions: Vec<FpMatrix>) -> Result<Self> {
        if actions.len() != algebra.num_generators() {
            return Err(Error::InvalidModule(format!(
                "{} actions for {} generators",
                actions.len(),
                algebra.num_generators()
            )));
        }
        for a in &actions {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::Shape(format!("action must be {dim}x{dim}")));
            }
            if a.field() != algebra.field() {
                return Err(Error::FieldMismatch(a.field().p(), algebra.p()));
            }
        }
        let m = Self::new_unchecked(algebra, dim, actions);
        m.validate()?;
        Ok(m)
    }

    /// Skip relation checks. For modules built by constructions that are
    /// correct by design.
    pub fn new_unchecked(algebra: Arc<Algebra>, dim: usize, actions: Vec<FpMatrix>) -> Self {
        let words = algebra.words().len();
        let basis = algebra.dim();
        Module {
            algebra,
            dim,
            actions,
            word_actions: lazy_cells(words),
            basis_actions: lazy_cells(basis),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let n = a.num_generators();
        let bad = |m: String| Err(Error::InvalidModule(m));
        let names = a.generator_names();
        if let Some(bounds) = a.exponent_bounds() {
            for i in 0..n {
                for j in i + 1..n {
                    if &self.actions[i] * &self.actions[j] != &self.actions[j] * &self.actions[i] {
                        return bad(format!("{} and {} do not commute", names[i], names[j]));
                    }
                }
                let pw = self.actions[i].pow(bounds[i] as u64);
                let ok = if a.is_group_basis() {
                    pw.is_identity()
                } else {
                    pw.is_zero()
                };
                if !ok {
                    return bad(format!("{}^{} relation fails", names[i], bounds[i]));
                }
            }
            return Ok(());
        }
        // Generic check: ρ(g) ρ(b_k) = ρ(g b_k) for every generator and basis element.
        if !self.basis_action(a.unit_index()).is_identity() {
            return bad("unit does not act as the identity".into());
        }
        for (gi, &g) in a.generators().iter().enumerate() {
            for k in 0..a.dim() {
                let lhs = &self.actions[gi] * self.basis_action(k);
                let rhs = self.element_action(&a.mul_basis(g, k));
                if lhs != rhs {
                    return bad(format!("relation fails on ({}, {})", names[gi], a.labels()[k]));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let f = algebra.field();
        let actions = vec![FpMatrix::zeros(f, 0, 0); algebra.num_generators()];
        Self::new_unchecked(algebra, 0, actions)
    }

    /// The trivial module `k`, with every element acting through `ε`.
    pub fn trivial(algebra: Arc<Algebra>) -> Self {
        let f = algebra.field();
        let actions = algebra
            .generators()
            .iter()
            .map(|&g| FpMatrix::scalar(f, 1, algebra.augmentation()[g]))
            .collect();
        Self::new_unchecked(algebra, 1, actions)
    }

    /// The regular module `A`.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        Self::free(algebra, 1)
    }

    /// `A^r`, with basis index `s * dim A + a` for the element `b_a` in copy `s`.
    pub fn free(algebra: Arc<Algebra>, r: usize) -> Self {
        let f = algebra.field();
        let id = FpMatrix::identity(f, r);
        let actions = algebra
            .generators()
            .iter()
            .map(|&g| id.kronecker(algebra.left_basis_matrix(g)))
            .collect();
        let d = algebra.dim();
        Self::new_unchecked(algebra, r * d, actions)
    }

    pub fn from_json(json: &ModuleJson) -> Result<Self> {
        let algebra = Algebra::from_spec(&json.algebra)?;
        Self::from_named(algebra, json.dim, &json.actions)
    }

    pub fn from_named(
        algebra: Arc<Algebra>,
        dim: usize,
        actions: &IndexMap<String, FpMatrix>,
    ) -> Result<Self> {
        if actions.len() != algebra.num_generators() {
            return Err(Error::InvalidModule(format!(
                "expected actions for {:?}",
                algebra.generator_names()
            )));
        }
        let ordered = algebra
            .generator_names()
            .iter()
            .map(|n| {
                actions
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::InvalidModule(format!("missing action for {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_dim(algebra, dim, ordered)
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            algebra: self.algebra.spec().clone(),
            dim: self.dim,
            actions: self
                .algebra
                .generator_names()
                .iter()
                .cloned()
                .zip(self.actions.iter().cloned())
                .collect(),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }
    pub fn field(&self) -> Field {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn actions(&self) -> &[FpMatrix] {
        &self.actions
    }
    pub fn action(&self, gen: usize) -> &FpMatrix {
        &self.actions[gen]
    }

    fn word_action(&self, k: usize) -> &FpMatrix {
        if let Some(m) = self.word_actions[k].get() {
            return m;
        }
        let m = match self.algebra.word_steps()[k] {
            None => FpMatrix::identity(self.field(), self.dim),
            Some((g, rest)) => &self.actions[g] * self.word_action(rest),
        };
        let _ = self.word_actions[k].set(m);
        self.word_actions[k].get().unwrap()
    }

    /// Action of basis element `b_i`.
    pub fn basis_action(&self, i: usize) -> &FpMatrix {
        if let Some(m) = self.basis_actions[i].get() {
            return m;
        }
        let m = match self.algebra.basis_in_words() {
            None => self.word_action(i).clone(),
            Some(c) => {
                let mut acc = FpMatrix::zeros(self.field(), self.dim, self.dim);
                for k in 0..c.rows() {
                    let x = c.get(k, i);
                    if x != 0 {
                        acc.add_scaled(x, self.word_action(k));
                    }
                }
                acc
            }
        };
        let _ = self.basis_actions[i].set(m);
        self.basis_actions[i].get().unwrap()
    }

    /// Action of an arbitrary algebra element.
    pub fn element_action(&self, x: &[u32]) -> FpMatrix {
        let mut acc = FpMatrix::zeros(self.field(), self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                acc.add_scaled(c, self.basis_action(i));
            }
        }
        acc
    }

    /// `x · v` without forming the full action matrix.
    pub fn act(&self, x: &[u32], v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = vec![0; self.dim];
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                let y = self.basis_action(i).mul_vec(v);
                f.axpy(&mut out, c, &y);
            }
        }
        out
    }

    /// `ρ(g) - ε(g)` for each generator.
    pub fn shifted_actions(&self) -> Vec<FpMatrix> {
        let f = self.field();
        self.algebra
            .generators()
            .iter()
            .zip(&self.actions)
            .map(|(&g, m)| m - &FpMatrix::scalar(f, self.dim, self.algebra.augmentation()[g]))
            .collect()
    }

    /// Smallest submodule containing the given vectors.
    pub fn submodule_generated(&self, vectors: impl IntoIterator<Item = Vec<u32>>) -> Subspace {
        let mut span = Subspace::zero(self.field(), self.dim);
        let mut queue = Vec::new();
        for v in vectors {
            if span.insert(&v) {
                queue.push(v);
            }
        }
        while let Some(v) = queue.pop() {
            for a in &self.actions {
                let y = a.mul_vec(&v);
                if span.insert(&y) {
                    queue.push(y);
                }
            }
        }
        span
    }

    /// `rad(A) · M`.
    pub fn radical(&self) -> Subspace {
        let images = self
            .shifted_actions()
            .into_iter()
            .flat_map(|m| m.columns())
            .filter(|c| !is_zero_vec(c));
        self.submodule_generated(images)
    }

    pub fn top_dim(&self) -> usize {
        self.dim - self.radical().dim()
    }

    /// Standard basis vectors spanning a complement of the radical. Over a
    /// local algebra they generate the module.
    pub fn top_generators(&self) -> Vec<Vec<u32>> {
        self.radical()
            .complement_indices()
            .into_iter()
            .map(|i| unit_vec(self.dim, i))
            .collect()
    }

    fn require_local(&self) -> Result<()> {
        if self.algebra.is_local() {
            Ok(())
        } else {
            Err(Error::NotLocal)
        }
    }

    /// Over a local algebra: `dim M = dim(M / rad M) · dim A`.
    pub fn is_projective(&self) -> Result<bool> {
        self.require_local()?;
        Ok(self.dim == self.top_dim() * self.algebra.dim())
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Submodule on a subspace closed under the action, with the inclusion.
    pub fn submodule(&self, sub: &Subspace) -> (Module, FpMatrix) {
        let piv = sub.pivots();
        let basis = sub.basis();
        let k = sub.dim();
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let cols: Vec<Vec<u32>> = basis
                    .iter()
                    .map(|b| {
                        let y = a.mul_vec(b);
                        piv.iter().map(|&c| y[c]).collect()
                    })
                    .collect();
                FpMatrix::from_columns(self.field(), k, &cols)
            })
            .collect();
        (
            Module::new_unchecked(self.algebra.clone(), k, actions),
            sub.basis_matrix(),
        )
    }

    /// Quotient by a submodule, with the projection matrix.
    pub fn quotient(&self, sub: &Subspace) -> (Module, FpMatrix) {
        let q = sub.quotient_projection();
        let s = sub.quotient_section();
        let actions = self.actions.iter().map(|a| &(&q * a) * &s).collect();
        (
            Module::new_unchecked(self.algebra.clone(), q.rows(), actions),
            q,
        )
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        same_algebra(self, other)?;
        let f = self.field();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| FpMatrix::block_diagonal(f, &[a, b]))
            .collect();
        Ok(Module::new_unchecked(
            self.algebra.clone(),
            self.dim + other.dim,
            actions,
        ))
    }

    pub fn direct_sum_all(algebra: &Arc<Algebra>, parts: &[Module]) -> Result<Module> {
        parts
            .iter()
            .try_fold(Module::zero(algebra.clone()), |acc, m| acc.direct_sum(m))
    }

    /// `M ⊗_k N` with the action through a coproduct `Δ` given in the
    /// algebra's own basis (`d² x d`, index `k * d + l`).
    pub fn tensor_over_field(&self, other: &Module, coproduct: &FpMatrix) -> Result<Module> {
        same_algebra(self, other)?;
        let a = &self.algebra;
        let d = a.dim();
        if coproduct.rows() != d * d || coproduct.cols() != d {
            return Err(Error::Shape("coproduct must be d² x d".into()));
        }
        let f = self.field();
        let actions = a
            .generators()
            .iter()
            .map(|&g| {
                let mut acc = FpMatrix::zeros(f, self.dim * other.dim, self.dim * other.dim);
                for kl in 0..d * d {
                    let c = coproduct.get(kl, g);
                    if c != 0 {
                        let t = self.basis_action(kl / d).kronecker(other.basis_action(kl % d));
                        acc.add_scaled(c, &t);
                    }
                }
                acc
            })
            .collect();
        Ok(Module::new_unchecked(a.clone(), self.dim * other.dim, actions))
    }

    /// The `k`-dual `Hom_k(M, k)` as a module over the opposite algebra.
    pub fn dual(&self) -> Module {
        let op = self.algebra.opposite();
        let actions = self.actions.iter().map(FpMatrix::transpose).collect();
        Module::new_unchecked(op, self.dim, actions)
    }

    /// Restriction along an algebra map `f: B -> A` of an `A`-module.
    pub fn restrict_along(&self, f: &AlgebraMap) -> Result<Module> {
        if **f.target() != *self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let actions = f
            .source()
            .generators()
            .iter()
            .map(|&g| self.element_action(&f.matrix().column(g)))
            .collect();
        Module::with_dim(f.source().clone(), self.dim, actions)
    }

    /// Change of basis: the module with actions `T⁻¹ ρ T`.
    pub fn conjugate(&self, t: &FpMatrix) -> Result<Module> {
        let inv = t.inverse().ok_or(Error::Singular)?;
        let actions = self.actions.iter().map(|a| &(&inv * a) * t).collect();
        Ok(Module::new_unchecked(self.algebra.clone(), self.dim, actions))
    }

    /// Projective cover `A^r -> M`, with `r` the top dimension. The generators
    /// are the [`top_generators`](Self::top_generators) in order.
    pub fn projective_cover(&self) -> Result<(Module, FpMatrix)> {
        self.require_local()?;
        let gens = self.top_generators();
        let d = self.algebra.dim();
        let p = Module::free(self.algebra.clone(), gens.len());
        let cols: Vec<Vec<u32>> = gens
            .iter()
            .flat_map(|m| (0..d).map(move |a| self.basis_action(a).mul_vec(m)))
            .collect();
        let cover = FpMatrix::from_columns(self.field(), self.dim, &cols);
        Ok((p, cover))
    }

    /// `Ω M`: the kernel of the projective cover, with projective summands
    /// removed when the algebra is selfinjective.
    pub fn syzygy(&self) -> Result<Module> {
        let (p, cover) = self.projective_cover()?;
        let ker = Subspace::from_vectors(self.field(), p.dim, cover.kernel_vectors());
        let (omega, _) = p.submodule(&ker);
        if self.algebra.is_selfinjective_local() {
            omega.strip_projective()
        } else {
            Ok(omega)
        }
    }

    /// `Ω⁻¹ M = D Ω D M`.
    pub fn cosyzygy(&self) -> Result<Module> {
        if !self.algebra.is_selfinjective_local() {
            return Err(Error::NotSelfinjective);
        }
        let back = self.dual().syzygy()?.dual();
        Ok(Module::new_unchecked(
            self.algebra.clone(),
            back.dim,
            back.actions,
        ))
    }

    /// Number of free summands, for a local selfinjective algebra: the rank
    /// of the socle element's action.
    pub fn free_rank(&self) -> Result<usize> {
        let s = self
            .algebra
            .socle_element()
            .ok_or(Error::NotSelfinjective)?;
        Ok(self.element_action(&s).rank())
    }

    /// Remove all free summands. Over a local selfinjective algebra `A` with
    /// socle `ks`, vectors with independent `s`-images generate a free
    /// summand, and the complement is the quotient by it.
    pub fn strip_projective(&self) -> Result<Module> {
        let s = self
            .algebra
            .socle_element()
            .ok_or(Error::NotSelfinjective)?;
        let sm = self.element_action(&s);
        let mut img = Subspace::zero(self.field(), self.dim);
        let gens: Vec<Vec<u32>> = (0..self.dim)
            .filter(|&i| img.insert(&sm.column(i)))
            .map(|i| unit_vec(self.dim, i))
            .collect();
        if gens.is_empty() {
            return Ok(self.clone());
        }
        let sub = self.submodule_generated(gens);
        Ok(self.quotient(&sub).0)
    }

    /// `Ω^n` for `n ≥ 0` and `Ω^{-n}` for negative `n`.
    pub fn omega_power(&self, n: i32) -> Result<Module> {
        let mut m = self.clone();
        for _ in 0..n.unsigned_abs() {
            m = if n > 0 { m.syzygy()? } else { m.cosyzygy()? };
        }
        Ok(m)
    }
}

fn same_algebra(m: &Module, n: &Module) -> Result<()> {
    if Arc::ptr_eq(&m.algebra, &n.algebra) || m.algebra == n.algebra {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// Does `x` (target.dim x source.dim) intertwine the actions?
pub fn is_homomorphism(m: &Module, n: &Module, x: &FpMatrix) -> Result<bool> {
    same_algebra(m, n)?;
    if x.rows() != n.dim || x.cols() != m.dim {
        return Err(Error::Shape("homomorphism matrix shape".into()));
    }
    Ok(m.actions
        .iter()
        .zip(&n.actions)
        .all(|(a, b)| x * a == b * x))
}

/// A basis of `Hom_A(M, N)`.
///
/// The source is spanned by words in the generators applied to a few
/// generating vectors. A homomorphism is free on the generating vectors and
/// determined by them; every relation among the spanning words becomes a
/// linear constraint.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<FpMatrix>> {
    same_algebra(m, n)?;
    let f = m.field();
    let (dm, dn) = (m.dim, n.dim);
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let roots: Vec<Vec<u32>> = if m.algebra.is_local() {
        m.top_generators()
    } else {
        Vec::new()
    };
    // Spin basis: (vector, how it was reached).
    let mut span = Subspace::zero(f, dm);
    let mut vecs: Vec<Vec<u32>> = Vec::new();
    let mut origin: Vec<Origin> = Vec::new();
    let mut root_count = 0;
    let mut spin = |seed: Vec<u32>,
                    span: &mut Subspace,
                    vecs: &mut Vec<Vec<u32>>,
                    origin: &mut Vec<Origin>| {
        if !span.insert(&seed) {
            return;
        }
        vecs.push(seed);
        origin.push(Origin::Root(root_count));
        root_count += 1;
        let mut head = vecs.len() - 1;
        while head < vecs.len() {
            for (g, a) in m.actions.iter().enumerate() {
                let y = a.mul_vec(&vecs[head]);
                if span.insert(&y) {
                    vecs.push(y);
                    origin.push(Origin::Step(head, g));
                }
            }
            head += 1;
        }
    };
    for r in roots {
        spin(r, &mut span, &mut vecs, &mut origin);
    }
    for i in 0..dm {
        if span.dim() == dm {
            break;
        }
        spin(unit_vec(dm, i), &mut span, &mut vecs, &mut origin);
    }
    let unknowns = root_count * dn;
    // X(v_i) = E_i z
    let mut e: Vec<FpMatrix> = Vec::with_capacity(dm);
    for o in &origin {
        let ei = match *o {
            Origin::Root(s) => {
                let mut z = FpMatrix::zeros(f, dn, unknowns);
                for t in 0..dn {
                    z.set(t, s * dn + t, 1);
                }
                z
            }
            Origin::Step(parent, g) => &n.actions[g] * &e[parent],
        };
        e.push(ei);
    }
    let v = FpMatrix::from_columns(f, dm, &vecs);
    let vinv = v.inverse().expect("spin basis spans the module");
    let tree: std::collections::HashSet<(usize, usize)> = origin
        .iter()
        .filter_map(|o| match *o {
            Origin::Step(parent, g) => Some((parent, g)),
            Origin::Root(_) => None,
        })
        .collect();
    let mut constraints = Subspace::zero(f, unknowns);
    for (i, vi) in vecs.iter().enumerate() {
        for (g, a) in m.actions.iter().enumerate() {
            if tree.contains(&(i, g)) {
                continue;
            }
            let c = vinv.mul_vec(&a.mul_vec(vi));
            let mut lhs = -&(&n.actions[g] * &e[i]);
            for (j, &cj) in c.iter().enumerate() {
                if cj != 0 {
                    lhs.add_scaled(cj, &e[j]);
                }
            }
            for r in 0..dn {
                let row = lhs.row(r);
                if !is_zero_vec(row) {
                    constraints.insert(row);
                    if constraints.dim() == unknowns {
                        return Ok(Vec::new());
                    }
                }
            }
        }
    }
    let system = FpMatrix::new(
        f,
        constraints.dim(),
        unknowns,
        constraints.basis().concat(),
    )
    .expect("reduced rows");
    let sols = system.kernel_vectors();
    Ok(sols
        .into_iter()
        .map(|z| {
            let cols: Vec<Vec<u32>> = e.iter().map(|ei| ei.mul_vec(&z)).collect();
            &FpMatrix::from_columns(f, dn, &cols) * &vinv
        })
        .collect())
}

#[derive(Clone, Copy, Debug)]
enum Origin {
    Root(usize),
    Step(usize, usize),
}

/// Decide whether `M ≅ N`.
///
/// Over a local algebra a homomorphism between modules of equal dimension is
/// invertible exactly when it induces an isomorphism on tops, so the search
/// runs over the span of the induced top maps, which is small. The search is
/// exhaustive up to [`EXHAUSTIVE_LIMIT`] candidates and random beyond.
pub fn is_isomorphic(m: &Module, n: &Module, seed: u64) -> Result<Isomorphism> {
    same_algebra(m, n)?;
    if m.dim != n.dim {
        return Ok(Isomorphism::No);
    }
    if m.dim == 0 {
        return Ok(Isomorphism::Yes(FpMatrix::zeros(m.field(), 0, 0)));
    }
    let f = m.field();
    let local = m.algebra.is_local();
    if local && m.top_dim() != n.top_dim() {
        return Ok(Isomorphism::No);
    }
    let homs = hom_space(m, n)?;
    if homs.is_empty() {
        return Ok(Isomorphism::No);
    }
    let outcome = if local {
        let tops_m = m.top_generators();
        let t = tops_m.len();
        let s = FpMatrix::from_columns(f, m.dim, &tops_m);
        let q = n.radical().quotient_projection();
        let mut span = Subspace::zero(f, t * t);
        let (hs, ts): (Vec<FpMatrix>, Vec<FpMatrix>) = homs
            .into_iter()
            .filter_map(|h| {
                let th = &(&q * &h) * &s;
                span.insert(th.data()).then_some((h, th))
            })
            .unzip();
        search_combination(f, &ts, |x| x.rank() == t, seed).map(|c| combine(f, &hs, &c))
    } else {
        if hom_space(n, m)?.len() != homs.len() {
            return Ok(Isomorphism::No);
        }
        search_combination(f, &homs, |x| x.rank() == m.dim, seed).map(|c| combine(f, &homs, &c))
    };
    Ok(match outcome {
        Search::Found(w) => Isomorphism::Yes(w),
        Search::Exhausted => Isomorphism::No,
        Search::GaveUp => Isomorphism::Unknown,
    })
}

enum Search<T> {
    Found(T),
    Exhausted,
    GaveUp,
}

impl<T> Search<T> {
    fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Exhausted => Search::Exhausted,
            Search::GaveUp => Search::GaveUp,
        }
    }
}

fn combine(f: Field, mats: &[FpMatrix], c: &[u32]) -> FpMatrix {
    let mut acc = FpMatrix::zeros(f, mats[0].rows(), mats[0].cols());
    for (m, &x) in mats.iter().zip(c) {
        acc.add_scaled(x, m);
    }
    acc
}

fn search_combination(
    f: Field,
    mats: &[FpMatrix],
    ok: impl Fn(&FpMatrix) -> bool,
    seed: u64,
) -> Search<Vec<u32>> {
    let p = f.p() as u64;
    let k = mats.len();
    let total = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&t| t <= EXHAUSTIVE_LIMIT));
    match total {
        Some(total) => {
            // Skip the zero combination.
            for idx in 1..total {
                let mut c = vec![0u32; k];
                let mut x = idx;
                for ci in c.iter_mut() {
                    *ci = (x % p) as u32;
                    x /= p;
                }
                if ok(&combine(f, mats, &c)) {
                    return Search::Found(c);
                }
            }
            Search::Exhausted
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..RANDOM_TRIALS {
                let c: Vec<u32> = (0..k).map(|_| rng.gen_range(0..f.p())).collect();
                if ok(&combine(f, mats, &c)) {
                    return Search::Found(c);
                }
            }
            Search::GaveUp
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(p: u32) -> Arc<Algebra> {
        Algebra::truncated(p, &[p]).unwrap()
    }

    /// Jordan block of size `n` for the single generator of `k[w]/(w^m)`.
    fn jordan(a: &Arc<Algebra>, n: usize) -> Module {
        let f = a.field();
        let j = FpMatrix::from_fn(f, n, n, |i, k| u32::from(i == k + 1));
        Module::new(a.clone(), vec![j]).unwrap()
    }

    #[test]
    fn hom_examples() {
        let a = cyclic(3);
        let reg = Module::regular(a.clone());
        let k = Module::trivial(a.clone());
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), 3);
        assert_eq!(hom_space(&k, &reg).unwrap().len(), 1);
        assert_eq!(hom_space(&reg, &Module::zero(a)).unwrap().len(), 0);
    }

    #[test]
    fn hom_basis_elements_are_intertwiners() {
        let a = Algebra::truncated(2, &[2, 2]).unwrap();
        let reg = Module::regular(a.clone());
        let m = reg.direct_sum(&Module::trivial(a.clone())).unwrap();
        let hs = hom_space(&m, &reg).unwrap();
        assert!(!hs.is_empty());
        for h in &hs {
            assert!(is_homomorphism(&m, &reg, h).unwrap());
        }
        // Hom(A ⊕ k, A) = A ⊕ soc A.
        assert_eq!(hs.len(), 5);
    }

    #[test]
    fn projectivity() {
        let a = Algebra::truncated(2, &[2]).unwrap();
        assert!(Module::regular(a.clone()).is_projective().unwrap());
        assert!(!Module::trivial(a.clone()).is_projective().unwrap());
        let m = Module::regular(a.clone())
            .direct_sum(&Module::trivial(a))
            .unwrap();
        assert!(!m.is_projective().unwrap());
        let kk = crate::algebra::product_of_fields(2).unwrap();
        assert_eq!(Module::regular(kk).is_projective(), Err(Error::NotLocal));
    }

    #[test]
    fn covers() {
        let a = cyclic(3);
        let (p, c) = Module::trivial(a.clone()).projective_cover().unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(c.rank(), 1);
        let (p, c) = Module::regular(a.clone()).projective_cover().unwrap();
        assert_eq!(p.dim(), 3);
        assert!(c.is_invertible());
        let rad = jordan(&a, 2);
        let (p, c) = rad.projective_cover().unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(c.kernel_vectors().len(), 1);
        assert!(is_homomorphism(&p, &rad, &c).unwrap());
    }

    #[test]
    fn syzygies_of_trivial_module() {
        for p in [2, 3, 5] {
            let a = cyclic(p);
            let k = Module::trivial(a.clone());
            let o1 = k.syzygy().unwrap();
            assert_eq!(o1.dim(), p as usize - 1);
            let o2 = o1.syzygy().unwrap();
            assert!(is_isomorphic(&o2, &k, 0).unwrap().is_yes());
            let back = o1.cosyzygy().unwrap();
            assert!(is_isomorphic(&back, &k, 0).unwrap().is_yes());
        }
    }

    #[test]
    fn syzygy_dimension_count() {
        let a = Algebra::truncated(2, &[2, 2]).unwrap();
        let k = Module::trivial(a.clone());
        let om = k.syzygy().unwrap();
        // dim Ω k = dim P - dim k = 4 - 1
        assert_eq!(om.dim(), 3);
        let om2 = om.syzygy().unwrap();
        assert_eq!(om2.dim(), 2 * 4 - 3);
    }

    #[test]
    fn strip_removes_free_summands() {
        let a = cyclic(3);
        let m = Module::free(a.clone(), 2)
            .direct_sum(&jordan(&a, 2))
            .unwrap();
        assert_eq!(m.free_rank().unwrap(), 2);
        let s = m.strip_projective().unwrap();
        assert!(is_isomorphic(&s, &jordan(&a, 2), 0).unwrap().is_yes());
    }

    #[test]
    fn isomorphism_examples() {
        let a = cyclic(3);
        let j2 = jordan(&a, 2);
        assert!(is_isomorphic(&j2, &j2, 0).unwrap().is_yes());
        let k = Module::trivial(a.clone());
        let reg = Module::regular(a.clone());
        assert_eq!(is_isomorphic(&k, &reg, 0).unwrap(), Isomorphism::No);
        let kk = k.direct_sum(&k).unwrap();
        assert_eq!(is_isomorphic(&kk, &j2, 0).unwrap(), Isomorphism::No);
    }

    #[test]
    fn hom_dim_invariant_under_base_change() {
        let a = Algebra::truncated(3, &[3, 3]).unwrap();
        let f = a.field();
        let m = Module::regular(a.clone())
            .direct_sum(&Module::trivial(a.clone()))
            .unwrap();
        let t = FpMatrix::from_fn(f, 10, 10, |i, j| {
            if i == j {
                1
            } else if j == i + 1 {
                2
            } else {
                0
            }
        });
        let mc = m.conjugate(&t).unwrap();
        mc.validate().unwrap();
        assert_eq!(
            hom_space(&m, &m).unwrap().len(),
            hom_space(&mc, &mc).unwrap().len()
        );
        assert!(is_isomorphic(&m, &mc, 7).unwrap().is_yes());
    }

    #[test]
    fn tensor_with_trivial_and_jordan() {
        let h = crate::algebra::HopfAlgebra::abelian(2, &[2]).unwrap();
        let a = h.w_algebra().clone();
        let delta = h.comultiplication_w();
        let k = Module::trivial(a.clone());
        let j2 = Module::regular(a.clone());
        let kj = k.tensor_over_field(&j2, &delta).unwrap();
        assert!(is_isomorphic(&kj, &j2, 0).unwrap().is_yes());
        let j1 = Module::trivial(a.clone());
        let t = j1.tensor_over_field(&j2, &delta).unwrap();
        assert!(t.is_projective().unwrap());
        assert_eq!(t.dim(), 2);
    }

    #[test]
    fn restriction_along_left_inclusion() {
        let a = cyclic(3);
        let env = a.enveloping();
        let d = a.dim();
        let incl = FpMatrix::from_fn(a.field(), d * d, d, |k, i| u32::from(k == i * d + a.unit_index()));
        let f = AlgebraMap::new(a.clone(), env.clone(), incl).unwrap();
        // A as a bimodule: u acts by left, v by right multiplication.
        let reg_bimod = Module::new(
            env.clone(),
            vec![
                a.left_basis_matrix(a.generators()[0]).clone(),
                a.right_basis_matrix(a.generators()[0]).clone(),
            ],
        )
        .unwrap();
        let left = reg_bimod.restrict_along(&f).unwrap();
        assert!(left.is_projective().unwrap());
        assert_eq!(left.top_dim(), 1);
    }

    #[test]
    fn json_round_trip() {
        let a = Algebra::truncated(3, &[3, 3]).unwrap();
        let m = Module::regular(a);
        let s = serde_json::to_string(&m.to_json()).unwrap();
        let back = Module::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn rejects_broken_relations() {
        let a = cyclic(2);
        let bad = FpMatrix::identity(a.field(), 2);
        assert!(Module::new(a, vec![bad]).is_err());
    }

    #[test]
    fn table_algebra_modules() {
        let kk = crate::algebra::product_of_fields(3).unwrap();
        let reg = Module::regular(kk.clone());
        reg.validate().unwrap();
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), 2);
        let bad = FpMatrix::scalar(kk.field(), 1, 2);
        assert!(Module::new(kk, vec![bad]).is_err());
    }
}
