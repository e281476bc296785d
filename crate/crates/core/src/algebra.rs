//! Finite-dimensional augmented algebras over `F_p`.
//!
//! An [`Algebra`] is a basis with a product rule, a unit, an augmentation and
//! a set of generators. Each basis element also records a word in the
//! generators, which lets modules compute the action of any basis element
//! from the generator actions alone.
//!
//! Enveloping algebras use the pair basis `(b_i, b_j)` at index `i * d + j`
//! with product `(a ⊗ b)(a' ⊗ b') = aa' ⊗ b'b`. The first half of the
//! generators are `u_i = g_i ⊗ 1`, the second half `v_i = 1 ⊗ g_i`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffmat::{unit_vec, Field, FpMatrix, Subspace};

/// Serializable description of an algebra. Two algebras are equal when their
/// descriptors are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraSpec {
    Truncated { p: u32, exponents: Vec<u32> },
    Group { p: u32, orders: Vec<u32> },
    Table(TableSpec),
    Enveloping { base: Box<AlgebraSpec> },
    Opposite { base: Box<AlgebraSpec> },
}

/// Structure constants: `products[i][j]` is the coordinate vector of `b_i b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableSpec {
    pub p: u32,
    pub labels: Vec<String>,
    pub unit: usize,
    pub generators: Vec<usize>,
    pub augmentation: Vec<u32>,
    pub products: Vec<Vec<Vec<u32>>>,
}

impl AlgebraSpec {
    pub fn p(&self) -> u32 {
        match self {
            AlgebraSpec::Truncated { p, .. } | AlgebraSpec::Group { p, .. } => *p,
            AlgebraSpec::Table(t) => t.p,
            AlgebraSpec::Enveloping { base } | AlgebraSpec::Opposite { base } => base.p(),
        }
    }
}

#[derive(Clone, Debug)]
enum Product {
    /// Monomials `w^e` with `e_i < bounds[i]`; products past a bound vanish.
    Monomial {
        bounds: Vec<u32>,
        exps: Vec<Vec<u32>>,
        index: HashMap<Vec<u32>, usize>,
    },
    /// Group elements of an abelian group: exponents add modulo `orders`.
    Group {
        orders: Vec<u32>,
        exps: Vec<Vec<u32>>,
        index: HashMap<Vec<u32>, usize>,
    },
    /// Sparse structure constants.
    Table { terms: Vec<Vec<Vec<(usize, u32)>>> },
}

/// A finite-dimensional augmented algebra.
#[derive(Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    product: Product,
    unit: usize,
    generators: Vec<usize>,
    gen_names: Vec<String>,
    /// Word of each spanning element as generator positions, left to right.
    words: Vec<Vec<usize>>,
    /// `(first generator, index of the remaining word)` for nonempty words.
    word_steps: Vec<Option<(usize, usize)>>,
    /// Coordinates of each basis element in the word elements, when the
    /// words are not themselves the basis.
    basis_in_words: Option<FpMatrix>,
    augmentation: Vec<u32>,
    env_split: Option<usize>,
    spec: AlgebraSpec,
    envelope: OnceLock<Arc<Algebra>>,
    opposite: OnceLock<Arc<Algebra>>,
    left_mats: OnceLock<Vec<FpMatrix>>,
    right_mats: OnceLock<Vec<FpMatrix>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for Algebra {}

/// Degree-lex order: total degree ascending, then exponent tuples
/// lexicographically descending, so `w1` precedes `w2`.
fn degree_lex(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut all: Vec<Vec<u32>> = vec![vec![]];
    for &b in bounds {
        all = all
            .into_iter()
            .flat_map(|prefix| {
                (0..b).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    all.sort_by(|a, b| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    all
}

fn gen_names(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }
}

fn monomial_label(names: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Word of `w^e`: generator `i` repeated `e_i` times, in generator order.
fn monomial_word(e: &[u32]) -> Vec<usize> {
    e.iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
        .collect()
}

fn exponent_index(exps: &[Vec<u32>]) -> HashMap<Vec<u32>, usize> {
    exps.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect()
}

/// Generator basis indices of a monomial-style basis: the unit vectors `e_i`.
fn exponent_generators(index: &HashMap<Vec<u32>, usize>, n: usize) -> Vec<usize> {
    (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            index[&e]
        })
        .collect()
}

fn is_power_of(p: u32, mut n: u32) -> bool {
    if n < p {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

impl Algebra {
    /// `k[w_1, ..., w_n] / (w_i^{m_i})`. An empty exponent list gives `k`.
    pub fn truncated(p: u32, exponents: &[u32]) -> Result<Arc<Algebra>> {
        let field = Field::new(p as u64)?;
        if let Some(&m) = exponents.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidAlgebra(format!("exponent {m} < 2")));
        }
        let n = exponents.len();
        let exps = degree_lex(exponents);
        let index = exponent_index(&exps);
        let names = gen_names("w", n);
        Ok(Arc::new(Self::assemble_exponent(
            field,
            Product::Monomial {
                bounds: exponents.to_vec(),
                exps: exps.clone(),
                index: index.clone(),
            },
            &exps,
            &index,
            names,
            None,
            AlgebraSpec::Truncated {
                p,
                exponents: exponents.to_vec(),
            },
        )))
    }

    /// Group algebra of `Z/o_1 x ... x Z/o_n` in the group-element basis.
    pub fn group(p: u32, orders: &[u32]) -> Result<Arc<Algebra>> {
        let field = Field::new(p as u64)?;
        if let Some(&o) = orders.iter().find(|&&o| !is_power_of(p, o)) {
            return Err(Error::InvalidAlgebra(format!(
                "order {o} is not a power of {p}"
            )));
        }
        let n = orders.len();
        let exps = degree_lex(orders);
        let index = exponent_index(&exps);
        let names = gen_names("g", n);
        Ok(Arc::new(Self::assemble_exponent(
            field,
            Product::Group {
                orders: orders.to_vec(),
                exps: exps.clone(),
                index: index.clone(),
            },
            &exps,
            &index,
            names,
            None,
            AlgebraSpec::Group {
                p,
                orders: orders.to_vec(),
            },
        )))
    }

    fn assemble_exponent(
        field: Field,
        product: Product,
        exps: &[Vec<u32>],
        index: &HashMap<Vec<u32>, usize>,
        names: Vec<String>,
        env_split: Option<usize>,
        spec: AlgebraSpec,
    ) -> Algebra {
        let n = names.len();
        let dim = exps.len();
        let unit = index[&vec![0; n]];
        let generators = exponent_generators(index, n);
        let labels = exps.iter().map(|e| monomial_label(&names, e)).collect();
        let words: Vec<Vec<usize>> = exps.iter().map(|e| monomial_word(e)).collect();
        let mut augmentation = vec![0; dim];
        match product {
            Product::Group { .. } => augmentation.iter_mut().for_each(|x| *x = 1),
            _ => augmentation[unit] = 1,
        }
        Self::finish(
            field, dim, labels, product, unit, generators, names, words, None, augmentation,
            env_split, spec,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        field: Field,
        dim: usize,
        labels: Vec<String>,
        product: Product,
        unit: usize,
        generators: Vec<usize>,
        gen_names: Vec<String>,
        words: Vec<Vec<usize>>,
        basis_in_words: Option<FpMatrix>,
        augmentation: Vec<u32>,
        env_split: Option<usize>,
        spec: AlgebraSpec,
    ) -> Algebra {
        let lookup: HashMap<&[usize], usize> =
            words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let word_steps = words
            .iter()
            .map(|w| {
                if w.is_empty() {
                    None
                } else {
                    Some((w[0], lookup[&w[1..]]))
                }
            })
            .collect();
        Algebra {
            field,
            dim,
            labels,
            product,
            unit,
            generators,
            gen_names,
            words,
            word_steps,
            basis_in_words,
            augmentation,
            env_split,
            spec,
            envelope: OnceLock::new(),
            opposite: OnceLock::new(),
            left_mats: OnceLock::new(),
            right_mats: OnceLock::new(),
        }
    }

    /// Algebra from explicit structure constants. Associativity, the unit and
    /// multiplicativity of the augmentation are checked exhaustively up to
    /// dimension 64 and on generator-by-basis products above that.
    pub fn from_table(spec: TableSpec) -> Result<Arc<Algebra>> {
        let field = Field::new(spec.p as u64)?;
        let d = spec.labels.len();
        let bad = |m: &str| Error::InvalidAlgebra(m.to_string());
        if spec.products.len() != d
            || spec.products.iter().any(|r| r.len() != d)
            || spec
                .products
                .iter()
                .flatten()
                .any(|v| v.len() != d || v.iter().any(|&x| x >= spec.p))
        {
            return Err(bad("product table must be d x d vectors of length d, reduced"));
        }
        if spec.unit >= d || spec.generators.iter().any(|&g| g >= d) {
            return Err(bad("index out of range"));
        }
        if spec.augmentation.len() != d || spec.augmentation.iter().any(|&x| x >= spec.p) {
            return Err(bad("augmentation must be a reduced row of length d"));
        }
        let terms: Vec<Vec<Vec<(usize, u32)>>> = spec
            .products
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.iter()
                            .enumerate()
                            .filter(|(_, &x)| x != 0)
                            .map(|(k, &x)| (k, x))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let product = Product::Table { terms };
        let names: Vec<String> = spec.generators.iter().map(|&g| spec.labels[g].clone()).collect();
        let (words, basis_in_words) =
            Self::word_basis(field, d, spec.unit, &spec.generators, &product)?;
        let alg = Self::finish(
            field,
            d,
            spec.labels.clone(),
            product,
            spec.unit,
            spec.generators.clone(),
            names,
            words,
            basis_in_words,
            spec.augmentation.clone(),
            None,
            AlgebraSpec::Table(spec),
        );
        alg.check_axioms()?;
        Ok(Arc::new(alg))
    }

    /// Breadth-first words `g · word` spanning the algebra.
    fn word_basis(
        field: Field,
        d: usize,
        unit: usize,
        gens: &[usize],
        product: &Product,
    ) -> Result<(Vec<Vec<usize>>, Option<FpMatrix>)> {
        let mul = |i: usize, x: &[u32]| -> Vec<u32> {
            let mut out = vec![0; d];
            for (j, &c) in x.iter().enumerate() {
                if c != 0 {
                    product_into(field, product, i, j, c, &mut out);
                }
            }
            out
        };
        let mut span = Subspace::zero(field, d);
        let mut words = vec![vec![]];
        let mut vecs = vec![unit_vec(d, unit)];
        span.insert(&vecs[0]);
        let mut head = 0;
        while head < vecs.len() && span.dim() < d {
            for (gi, &g) in gens.iter().enumerate() {
                let y = mul(g, &vecs[head]);
                if span.insert(&y) {
                    let mut w = vec![gi];
                    w.extend_from_slice(&words[head]);
                    words.push(w);
                    vecs.push(y);
                }
            }
            head += 1;
        }
        if span.dim() < d {
            return Err(Error::InvalidAlgebra(
                "generators do not generate the algebra".into(),
            ));
        }
        let w = FpMatrix::from_columns(field, d, &vecs);
        if w.is_identity() {
            return Ok((words, None));
        }
        let inv = w.inverse().ok_or(Error::Singular)?;
        Ok((words, Some(inv)))
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim;
        let f = self.field;
        let bad = |m: String| Err(Error::InvalidAlgebra(m));
        for i in 0..d {
            let e = unit_vec(d, i);
            if self.mul_basis(self.unit, i) != e || self.mul_basis(i, self.unit) != e {
                return bad(format!("basis element {i} is not fixed by the unit"));
            }
        }
        if self.epsilon(&unit_vec(d, self.unit)) != 1 {
            return bad("augmentation does not send 1 to 1".into());
        }
        let left: Vec<usize> = if d <= 64 {
            (0..d).collect()
        } else {
            self.generators.clone()
        };
        for &i in &left {
            for j in 0..d {
                let ij = self.mul_basis(i, j);
                if self.epsilon(&ij) != f.mul(self.augmentation[i], self.augmentation[j]) {
                    return bad(format!("augmentation not multiplicative on ({i},{j})"));
                }
                for k in 0..d {
                    let lhs = self.mul(&ij, &unit_vec(d, k));
                    let rhs = self.mul(&unit_vec(d, i), &self.mul_basis(j, k));
                    if lhs != rhs {
                        return bad(format!("product not associative on ({i},{j},{k})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Rebuild from a descriptor.
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Arc<Algebra>> {
        match spec {
            AlgebraSpec::Truncated { p, exponents } => Self::truncated(*p, exponents),
            AlgebraSpec::Group { p, orders } => Self::group(*p, orders),
            AlgebraSpec::Table(t) => Self::from_table(t.clone()),
            AlgebraSpec::Enveloping { base } => Ok(Self::from_spec(base)?.enveloping()),
            AlgebraSpec::Opposite { base } => Ok(Self::from_spec(base)?.opposite()),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn p(&self) -> u32 {
        self.field.p()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit_index(&self) -> usize {
        self.unit
    }
    pub fn one(&self) -> Vec<u32> {
        unit_vec(self.dim, self.unit)
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }
    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }
    pub fn augmentation(&self) -> &[u32] {
        &self.augmentation
    }
    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }
    /// For enveloping algebras, the number of `u` generators.
    pub fn env_split(&self) -> Option<usize> {
        self.env_split
    }
    pub(crate) fn words(&self) -> &[Vec<usize>] {
        &self.words
    }
    pub(crate) fn word_steps(&self) -> &[Option<(usize, usize)>] {
        &self.word_steps
    }
    pub(crate) fn basis_in_words(&self) -> Option<&FpMatrix> {
        self.basis_in_words.as_ref()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gen_names.iter().position(|n| n == name)
    }

    /// Truncation bounds (or group orders) for exponent-style algebras.
    pub fn exponent_bounds(&self) -> Option<&[u32]> {
        match &self.product {
            Product::Monomial { bounds, .. } => Some(bounds),
            Product::Group { orders, .. } => Some(orders),
            Product::Table { .. } => None,
        }
    }

    pub fn is_truncated(&self) -> bool {
        matches!(self.product, Product::Monomial { .. })
    }

    pub fn is_group_basis(&self) -> bool {
        matches!(self.product, Product::Group { .. })
    }

    /// Exponent tuple of basis element `i` for exponent-style algebras.
    pub fn exponents_of(&self, i: usize) -> Option<&[u32]> {
        match &self.product {
            Product::Monomial { exps, .. } | Product::Group { exps, .. } => Some(&exps[i]),
            Product::Table { .. } => None,
        }
    }

    pub fn index_of_exponents(&self, e: &[u32]) -> Option<usize> {
        match &self.product {
            Product::Monomial { index, .. } | Product::Group { index, .. } => index.get(e).copied(),
            Product::Table { .. } => None,
        }
    }

    /// Truncated algebra with every exponent equal to `p`: the group algebra of
    /// an elementary abelian `p`-group in the `w`-presentation.
    pub fn is_elementary_abelian(&self) -> bool {
        let p = self.p();
        match &self.product {
            Product::Monomial { bounds, .. } => bounds.iter().all(|&m| m == p),
            Product::Group { orders, .. } => orders.iter().all(|&m| m == p),
            Product::Table { .. } => false,
        }
    }

    pub fn is_commutative(&self) -> bool {
        match &self.product {
            Product::Monomial { .. } | Product::Group { .. } => true,
            Product::Table { .. } => {
                let gens = &self.generators;
                gens.iter().all(|&a| {
                    gens.iter()
                        .all(|&b| self.mul_basis(a, b) == self.mul_basis(b, a))
                })
            }
        }
    }

    /// Add `c * b_i b_j` into `out`.
    #[inline]
    pub fn mul_basis_into(&self, i: usize, j: usize, c: u32, out: &mut [u32]) {
        product_into(self.field, &self.product, i, j, c, out);
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        self.mul_basis_into(i, j, 1, &mut out);
        out
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    self.mul_basis_into(i, j, f.mul(x, y), &mut out);
                }
            }
        }
        out
    }

    pub fn epsilon(&self, x: &[u32]) -> u32 {
        self.field.dot(&self.augmentation, x)
    }

    /// Left multiplication by basis element `a`.
    pub fn left_basis_matrix(&self, a: usize) -> &FpMatrix {
        &self.left_mats.get_or_init(|| {
            (0..self.dim)
                .map(|a| {
                    let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul_basis(a, j)).collect();
                    FpMatrix::from_columns(self.field, self.dim, &cols)
                })
                .collect()
        })[a]
    }

    /// Right multiplication by basis element `a`: `x ↦ x b_a`.
    pub fn right_basis_matrix(&self, a: usize) -> &FpMatrix {
        &self.right_mats.get_or_init(|| {
            (0..self.dim)
                .map(|a| {
                    let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul_basis(j, a)).collect();
                    FpMatrix::from_columns(self.field, self.dim, &cols)
                })
                .collect()
        })[a]
    }

    pub fn left_mult_matrix(&self, x: &[u32]) -> FpMatrix {
        combine(self.field, self.dim, x, |a| self.left_basis_matrix(a))
    }

    pub fn right_mult_matrix(&self, x: &[u32]) -> FpMatrix {
        combine(self.field, self.dim, x, |a| self.right_basis_matrix(a))
    }

    /// `A ⊗ A^op` in the pair basis.
    pub fn enveloping(self: &Arc<Self>) -> Arc<Algebra> {
        self.envelope.get_or_init(|| Arc::new(self.build_enveloping())).clone()
    }

    fn build_enveloping(&self) -> Algebra {
        let d = self.dim;
        let n = self.num_generators();
        let spec = AlgebraSpec::Enveloping {
            base: Box::new(self.spec.clone()),
        };
        let (u_names, v_names) = if n == 1 {
            (vec!["u".to_string()], vec!["v".to_string()])
        } else {
            (gen_names("u", n), gen_names("v", n))
        };
        let names: Vec<String> = u_names.into_iter().chain(v_names).collect();
        let words: Vec<Vec<usize>> = (0..d * d)
            .map(|k| {
                let (i, j) = (k / d, k % d);
                let mut w = self.words[i].clone();
                w.extend(self.words[j].iter().rev().map(|&g| g + n));
                w
            })
            .collect();
        let generators: Vec<usize> = self
            .generators
            .iter()
            .map(|&g| g * d + self.unit)
            .chain(self.generators.iter().map(|&g| self.unit * d + g))
            .collect();
        let unit = self.unit * d + self.unit;
        let f = self.field;
        let augmentation: Vec<u32> = (0..d * d)
            .map(|k| f.mul(self.augmentation[k / d], self.augmentation[k % d]))
            .collect();
        let label = |k: usize| -> String {
            let (i, j) = (k / d, k % d);
            match (&self.product, i == self.unit, j == self.unit) {
                (Product::Table { .. }, _, _) => format!("{}|{}", self.labels[i], self.labels[j]),
                (_, _, _) => {
                    let mut e = self.exponents_of(i).unwrap().to_vec();
                    e.extend_from_slice(self.exponents_of(j).unwrap());
                    monomial_label(&names, &e)
                }
            }
        };
        let labels: Vec<String> = (0..d * d).map(label).collect();
        let pair_exps = |exps: &[Vec<u32>]| -> (Vec<Vec<u32>>, HashMap<Vec<u32>, usize>) {
            let pe: Vec<Vec<u32>> = (0..d * d)
                .map(|k| {
                    let mut e = exps[k / d].clone();
                    e.extend_from_slice(&exps[k % d]);
                    e
                })
                .collect();
            let idx = exponent_index(&pe);
            (pe, idx)
        };
        let product = match &self.product {
            Product::Monomial { bounds, exps, .. } => {
                let (pe, idx) = pair_exps(exps);
                Product::Monomial {
                    bounds: bounds.iter().chain(bounds).copied().collect(),
                    exps: pe,
                    index: idx,
                }
            }
            Product::Group { orders, exps, .. } => {
                let (pe, idx) = pair_exps(exps);
                Product::Group {
                    orders: orders.iter().chain(orders).copied().collect(),
                    exps: pe,
                    index: idx,
                }
            }
            Product::Table { .. } => {
                let mut terms = vec![vec![Vec::new(); d * d]; d * d];
                for (k1, row) in terms.iter_mut().enumerate() {
                    for (k2, slot) in row.iter_mut().enumerate() {
                        let left = self.mul_basis(k1 / d, k2 / d);
                        let right = self.mul_basis(k2 % d, k1 % d);
                        for (a, &x) in left.iter().enumerate() {
                            for (b, &y) in right.iter().enumerate() {
                                if x != 0 && y != 0 {
                                    slot.push((a * d + b, f.mul(x, y)));
                                }
                            }
                        }
                    }
                }
                Product::Table { terms }
            }
        };
        let basis_in_words = self.basis_in_words.as_ref().map(|c| c.kronecker(c));
        Self::finish(
            f,
            d * d,
            labels,
            product,
            unit,
            generators,
            names,
            words,
            basis_in_words,
            augmentation,
            Some(n),
            spec,
        )
    }

    /// The opposite algebra. Commutative algebras are their own opposite, and
    /// the opposite of an opposite is the original.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if self.is_commutative() {
            return self.clone();
        }
        if let AlgebraSpec::Opposite { base } = &self.spec {
            if let Ok(a) = Algebra::from_spec(base) {
                return a;
            }
        }
        self.opposite.get_or_init(|| Arc::new(self.build_opposite())).clone()
    }

    fn build_opposite(&self) -> Algebra {
        let d = self.dim;
        let terms: Vec<Vec<Vec<(usize, u32)>>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        self.mul_basis(j, i)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, x)| *x != 0)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let product = Product::Table { terms };
        let (words, basis_in_words) =
            Self::word_basis(self.field, d, self.unit, &self.generators, &product)
                .expect("generators of an algebra also generate its opposite");
        Self::finish(
            self.field,
            d,
            self.labels.clone(),
            product,
            self.unit,
            self.generators.clone(),
            self.gen_names.clone(),
            words,
            basis_in_words,
            self.augmentation.clone(),
            None,
            AlgebraSpec::Opposite {
                base: Box::new(self.spec.clone()),
            },
        )
    }

    /// Basis of `ker ε`: `b_i - ε(b_i) 1` for `i ≠ unit`.
    pub fn augmentation_ideal_basis(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        (0..self.dim)
            .filter(|&i| i != self.unit)
            .map(|i| {
                let mut v = unit_vec(self.dim, i);
                v[self.unit] = f.sub(v[self.unit], self.augmentation[i]);
                v
            })
            .collect()
    }

    /// `g - ε(g)` for each generator `g`.
    pub fn shifted_generators(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        self.generators
            .iter()
            .map(|&g| {
                let mut v = unit_vec(self.dim, g);
                v[self.unit] = f.sub(v[self.unit], self.augmentation[g]);
                v
            })
            .collect()
    }

    /// Whether `ker ε` is a nilpotent ideal, i.e. the algebra is local with
    /// residue field `k`.
    ///
    /// `ker ε` is spanned by products involving some `h_j = g_j - ε(g_j)`, so
    /// it is nilpotent iff every word of length `dim A` in the `h_j` vanishes.
    /// `W_i`, the span of the words of length `i`, is `Σ_j h_j W_{i-1}`.
    pub fn is_unipotent(&self) -> bool {
        let d = self.dim;
        let hs = self.shifted_generators();
        let mut words = vec![self.one()];
        for _ in 0..d {
            let mut next = Subspace::zero(self.field, d);
            for w in &words {
                for h in &hs {
                    next.insert(&self.mul(h, w));
                }
            }
            if next.dim() == 0 {
                return true;
            }
            words = next.basis().to_vec();
        }
        false
    }

    pub fn is_local(&self) -> bool {
        self.is_unipotent()
    }

    /// Socle of the regular left module: elements killed by `ker ε`.
    pub fn socle(&self) -> Subspace {
        let mats: Vec<FpMatrix> = self
            .shifted_generators()
            .iter()
            .map(|h| self.left_mult_matrix(h))
            .collect();
        let stacked = mats
            .iter()
            .skip(1)
            .fold(mats.first().cloned().unwrap_or_else(|| FpMatrix::zeros(self.field, 0, self.dim)), |acc, m| acc.vstack(m));
        Subspace::from_vectors(self.field, self.dim, stacked.kernel_vectors())
    }

    /// Local with a one-dimensional socle (a local Frobenius algebra).
    pub fn is_selfinjective_local(&self) -> bool {
        self.is_local() && self.socle().dim() == 1
    }

    /// Spanning element of the socle, if the algebra is local selfinjective.
    pub fn socle_element(&self) -> Option<Vec<u32>> {
        if !self.is_local() {
            return None;
        }
        let s = self.socle();
        (s.dim() == 1).then(|| s.basis()[0].clone())
    }
}

fn combine<'a>(field: Field, d: usize, x: &[u32], mat: impl Fn(usize) -> &'a FpMatrix) -> FpMatrix {
    let mut out = FpMatrix::zeros(field, d, d);
    for (a, &c) in x.iter().enumerate() {
        if c != 0 {
            out.add_scaled(c, mat(a));
        }
    }
    out
}

#[inline]
fn product_into(field: Field, product: &Product, i: usize, j: usize, c: u32, out: &mut [u32]) {
    match product {
        Product::Monomial { bounds, exps, index } => {
            let (a, b) = (&exps[i], &exps[j]);
            let mut e = Vec::with_capacity(a.len());
            for k in 0..a.len() {
                let s = a[k] + b[k];
                if s >= bounds[k] {
                    return;
                }
                e.push(s);
            }
            let k = index[&e];
            out[k] = field.add(out[k], c);
        }
        Product::Group { orders, exps, index } => {
            let (a, b) = (&exps[i], &exps[j]);
            let e: Vec<u32> = (0..a.len()).map(|k| (a[k] + b[k]) % orders[k]).collect();
            let k = index[&e];
            out[k] = field.add(out[k], c);
        }
        Product::Table { terms } => {
            for &(k, x) in &terms[i][j] {
                out[k] = field.add(out[k], field.mul(c, x));
            }
        }
    }
}

/// Binomial coefficient modulo `p`, via Lucas' theorem.
pub fn binomial_mod(field: Field, mut n: u64, mut k: u64) -> u32 {
    let p = field.p() as u64;
    let mut acc = 1u32;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        let mut c = 1u32;
        for t in 0..ki {
            c = field.mul(c, (ni - t) as u32);
            c = field.mul(c, field.inv((t + 1) as u32));
        }
        acc = field.mul(acc, c);
        n /= p;
        k /= p;
    }
    acc
}

/// A group algebra of an abelian `p`-group with its Hopf structure and the
/// change of basis to the truncated presentation `w_i = g_i - 1`.
#[derive(Debug, Clone)]
pub struct HopfAlgebra {
    group: Arc<Algebra>,
    w: Arc<Algebra>,
    to_w: FpMatrix,
    from_w: FpMatrix,
    comultiplication: FpMatrix,
    antipode: FpMatrix,
}

impl HopfAlgebra {
    /// Group algebra of `Z/o_1 x ... x Z/o_n`, each order a power of `p`.
    pub fn abelian(p: u32, orders: &[u32]) -> Result<HopfAlgebra> {
        let group = Algebra::group(p, orders)?;
        let w = Algebra::truncated(p, orders)?;
        let f = group.field();
        let d = group.dim();
        // g^e = Π (1 + w_i)^{e_i} = Σ_{k ≤ e} Π C(e_i, k_i) w^k
        let mut to_w = FpMatrix::zeros(f, d, d);
        for j in 0..d {
            let e = group.exponents_of(j).unwrap();
            for i in 0..d {
                let k = w.exponents_of(i).unwrap();
                let c = e
                    .iter()
                    .zip(k)
                    .fold(1u32, |acc, (&ei, &ki)| f.mul(acc, binomial_mod(f, ei as u64, ki as u64)));
                to_w.set(i, j, c);
            }
        }
        let from_w = to_w.inverse().ok_or(Error::Singular)?;
        let mut comultiplication = FpMatrix::zeros(f, d * d, d);
        let mut antipode = FpMatrix::zeros(f, d, d);
        for j in 0..d {
            comultiplication.set(j * d + j, j, 1);
            let e = group.exponents_of(j).unwrap();
            let inv: Vec<u32> = e.iter().zip(orders).map(|(&x, &o)| (o - x) % o).collect();
            antipode.set(group.index_of_exponents(&inv).unwrap(), j, 1);
        }
        let h = HopfAlgebra {
            group,
            w,
            to_w,
            from_w,
            comultiplication,
            antipode,
        };
        h.check_axioms()?;
        Ok(h)
    }

    /// Group algebra of `(Z/p)^n`.
    pub fn elementary_abelian(p: u32, n: usize) -> Result<HopfAlgebra> {
        Self::abelian(p, &vec![p; n])
    }

    pub fn group_algebra(&self) -> &Arc<Algebra> {
        &self.group
    }
    /// The truncated presentation `k[w_i]/(w_i^{o_i})`.
    pub fn w_algebra(&self) -> &Arc<Algebra> {
        &self.w
    }
    /// Columns: group elements in `w`-coordinates.
    pub fn to_w(&self) -> &FpMatrix {
        &self.to_w
    }
    pub fn from_w(&self) -> &FpMatrix {
        &self.from_w
    }
    /// `Δ` on the group basis, `d² x d`, with `g ⊗ h` at index `g * d + h`.
    pub fn comultiplication(&self) -> &FpMatrix {
        &self.comultiplication
    }
    pub fn antipode(&self) -> &FpMatrix {
        &self.antipode
    }
    pub fn counit(&self) -> &[u32] {
        self.group.augmentation()
    }

    /// `Δ` expressed in the `w`-basis on both sides.
    pub fn comultiplication_w(&self) -> FpMatrix {
        let t = self.to_w.kronecker(&self.to_w);
        &(&t * &self.comultiplication) * &self.from_w
    }

    /// `S` expressed in the `w`-basis.
    pub fn antipode_w(&self) -> FpMatrix {
        &(&self.to_w * &self.antipode) * &self.from_w
    }

    fn check_axioms(&self) -> Result<()> {
        let a = &self.group;
        let f = a.field();
        let d = a.dim();
        let delta = &self.comultiplication;
        let id = FpMatrix::identity(f, d);
        let bad = |m: &str| Err(Error::InvalidAlgebra(format!("Hopf axiom fails: {m}")));
        // Coassociativity.
        let lhs = &delta.kronecker(&id) * delta;
        let rhs = &id.kronecker(delta) * delta;
        if lhs != rhs {
            return bad("coassociativity");
        }
        // Counit laws.
        let eps = FpMatrix::from_raw(f, 1, d, a.augmentation().to_vec());
        if &eps.kronecker(&id) * delta != id || &id.kronecker(&eps) * delta != id {
            return bad("counit");
        }
        // m (S ⊗ 1) Δ = η ε
        let mult = FpMatrix::from_fn(f, d, d * d, |k, ij| a.mul_basis(ij / d, ij % d)[k]);
        let eta_eps = &FpMatrix::column_vector(f, &a.one()) * &eps;
        if &(&mult * &self.antipode.kronecker(&id)) * delta != eta_eps
            || &(&mult * &id.kronecker(&self.antipode)) * delta != eta_eps
        {
            return bad("antipode");
        }
        // Δ is multiplicative.
        for i in 0..d {
            for j in 0..d {
                let prod = delta.mul_vec(&a.mul_basis(i, j));
                let di = delta.column(i);
                let dj = delta.column(j);
                let mut rhs = vec![0; d * d];
                for (x, &cx) in di.iter().enumerate() {
                    for (y, &cy) in dj.iter().enumerate() {
                        if cx != 0 && cy != 0 {
                            let l = a.mul_basis(x / d, y / d);
                            let r = a.mul_basis(x % d, y % d);
                            for (s, &ls) in l.iter().enumerate() {
                                for (t, &rt) in r.iter().enumerate() {
                                    if ls != 0 && rt != 0 {
                                        let k = s * d + t;
                                        rhs[k] = f.add(rhs[k], f.mul(f.mul(cx, cy), f.mul(ls, rt)));
                                    }
                                }
                            }
                        }
                    }
                }
                if prod != rhs {
                    return bad("Δ multiplicative");
                }
            }
        }
        Ok(())
    }
}

/// A linear map between algebras that preserves unit and products.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    matrix: FpMatrix,
}

impl AlgebraMap {
    /// `matrix` is `target.dim x source.dim`. Multiplicativity is checked on
    /// generator-by-basis products, which suffices because generator words
    /// span the source.
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: FpMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape("algebra map dimensions".into()));
        }
        if matrix.mul_vec(&source.one()) != target.one() {
            return Err(Error::InvalidMap("unit not preserved".into()));
        }
        for &g in source.generators() {
            let fg = matrix.column(g);
            for j in 0..source.dim() {
                let lhs = matrix.mul_vec(&source.mul_basis(g, j));
                let rhs = target.mul(&fg, &matrix.column(j));
                if lhs != rhs {
                    return Err(Error::InvalidMap(format!(
                        "not multiplicative on ({}, {})",
                        source.labels()[g],
                        source.labels()[j]
                    )));
                }
            }
        }
        Ok(AlgebraMap {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }
    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }
    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(x)
    }
}

/// An algebra automorphism recorded on the basis.
#[derive(Clone, Debug)]
pub struct Automorphism {
    algebra: Arc<Algebra>,
    matrix: FpMatrix,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.matrix == other.matrix
    }
}
impl Eq for Automorphism {}

impl Automorphism {
    pub fn new(algebra: Arc<Algebra>, matrix: FpMatrix) -> Result<Self> {
        if !matrix.is_invertible() {
            return Err(Error::Singular);
        }
        let map = AlgebraMap::new(algebra.clone(), algebra, matrix)?;
        Ok(Automorphism {
            algebra: map.source,
            matrix: map.matrix,
        })
    }

    pub fn identity(algebra: Arc<Algebra>) -> Self {
        let matrix = FpMatrix::identity(algebra.field(), algebra.dim());
        Automorphism { algebra, matrix }
    }

    /// Extend a linear map on `span{w_i}` multiplicatively to all monomials.
    /// Column `j` of `phi` is the image of `w_j`.
    pub fn from_linear(algebra: &Arc<Algebra>, phi: &FpMatrix) -> Result<Self> {
        let n = algebra.num_generators();
        if !algebra.is_truncated() {
            return Err(Error::Unsupported(
                "linear automorphisms need a truncated polynomial algebra".into(),
            ));
        }
        if phi.rows() != n || phi.cols() != n {
            return Err(Error::Shape(format!("expected a {n}x{n} matrix")));
        }
        if !phi.is_invertible() {
            return Err(Error::Singular);
        }
        let d = algebra.dim();
        let images: Vec<Vec<u32>> = (0..n)
            .map(|j| {
                let mut v = vec![0; d];
                for i in 0..n {
                    v[algebra.generators()[i]] = phi.get(i, j);
                }
                v
            })
            .collect();
        let cols: Vec<Vec<u32>> = (0..d)
            .map(|k| {
                let e = algebra.exponents_of(k).unwrap();
                let mut acc = algebra.one();
                for (j, &ej) in e.iter().enumerate() {
                    for _ in 0..ej {
                        acc = algebra.mul(&acc, &images[j]);
                    }
                }
                acc
            })
            .collect();
        let matrix = FpMatrix::from_columns(algebra.field(), d, &cols);
        Self::new(algebra.clone(), matrix)
    }

    /// `w ↦ c w` on a one-generator truncated algebra.
    pub fn scalar(algebra: &Arc<Algebra>, c: u32) -> Result<Self> {
        let phi = FpMatrix::scalar(algebra.field(), algebra.num_generators(), c);
        Self::from_linear(algebra, &phi)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }
    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            algebra: self.algebra.clone(),
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            algebra: self.algebra.clone(),
            matrix: self.matrix.inverse().expect("automorphisms are invertible"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// One algebra from each built-in constructor, plus `k x k` as a
/// non-unipotent control.
pub fn builtin_algebras(p: u32) -> Result<Vec<Arc<Algebra>>> {
    let mut out = vec![
        Algebra::truncated(p, &[])?,
        Algebra::truncated(p, &[p])?,
        Algebra::truncated(p, &[p, p])?,
        Algebra::truncated(p, &[p * p])?,
        Algebra::group(p, &[p])?,
        Algebra::group(p, &[p, p])?,
    ];
    if p == 2 {
        out.push(Algebra::truncated(p, &[4, 2])?);
    }
    out.push(product_of_fields(p)?);
    Ok(out)
}

/// `k x k` presented on the basis `{1, e}` with `e² = e` and `ε(e) = 0`.
pub fn product_of_fields(p: u32) -> Result<Arc<Algebra>> {
    Algebra::from_table(TableSpec {
        p,
        labels: vec!["1".into(), "e".into()],
        unit: 0,
        generators: vec![1],
        augmentation: vec![1, 0],
        products: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmat::is_zero_vec;

    fn idx(a: &Algebra, e: &[u32]) -> usize {
        a.index_of_exponents(e).unwrap()
    }

    #[test]
    fn truncated_cyclic() {
        let a = Algebra::truncated(3, &[3]).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), &["1", "w", "w^2"]);
        assert!(is_zero_vec(&a.mul_basis(1, 2)));
    }

    #[test]
    fn truncated_two_generators() {
        let a = Algebra::truncated(2, &[2, 2]).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.labels(), &["1", "w1", "w2", "w1*w2"]);
        let (w1, w2) = (idx(&a, &[1, 0]), idx(&a, &[0, 1]));
        assert!(!is_zero_vec(&a.mul_basis(w1, w2)));
        assert!(is_zero_vec(&a.mul_basis(w1, w1)));
    }

    #[test]
    fn truncated_order_four() {
        let a = Algebra::truncated(2, &[4]).unwrap();
        let w = a.generators()[0];
        let w3 = a.mul(&a.mul_basis(w, w), &unit_vec(4, w));
        assert!(!is_zero_vec(&w3));
        assert!(is_zero_vec(&a.mul(&w3, &unit_vec(4, w))));
        // (1 + w)^4 = 1 in characteristic 2.
        let mut g = a.one();
        g[w] = 1;
        let g4 = (0..3).fold(g.clone(), |acc, _| a.mul(&acc, &g));
        assert_eq!(g4, a.one());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(Algebra::truncated(3, &[1]).is_err());
        assert!(Algebra::truncated(4, &[2]).is_err());
        assert!(Algebra::group(3, &[6]).is_err());
    }

    #[test]
    fn enveloping_of_cyclic_is_two_variable() {
        let a = Algebra::truncated(3, &[3]).unwrap();
        let e = a.enveloping();
        assert_eq!(e.dim(), 9);
        assert_eq!(e.generator_names(), &["u", "v"]);
        assert_eq!(e.exponent_bounds().unwrap(), &[3, 3]);
        let (u, v) = (e.generators()[0], e.generators()[1]);
        assert_eq!(e.mul_basis(u, v), e.mul_basis(v, u));
        assert!(e.is_unipotent());
        assert!(Arc::ptr_eq(&e, &a.enveloping()));
    }

    #[test]
    fn enveloping_of_field_is_field() {
        let k = Algebra::truncated(5, &[]).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.enveloping().dim(), 1);
    }

    #[test]
    fn enveloping_product_reverses_right_factor() {
        // Check (a⊗b)(a'⊗b') = aa'⊗b'b on a noncommutative table algebra:
        // upper triangular 2x2 matrices with basis 1, e11, e12.
        let p = 3;
        let spec = TableSpec {
            p,
            labels: vec!["1".into(), "e".into(), "n".into()],
            unit: 0,
            generators: vec![1, 2],
            augmentation: vec![1, 0, 0],
            // e = e11, n = e12: e·e = e, e·n = n, n·e = 0, n·n = 0
            products: vec![
                vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
                vec![vec![0, 1, 0], vec![0, 1, 0], vec![0, 0, 1]],
                vec![vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]],
            ],
        };
        let a = Algebra::from_table(spec).unwrap();
        assert!(!a.is_commutative());
        let env = a.enveloping();
        let d = 3;
        for k1 in 0..9 {
            for k2 in 0..9 {
                let got = env.mul_basis(k1, k2);
                let l = a.mul_basis(k1 / d, k2 / d);
                let r = a.mul_basis(k2 % d, k1 % d);
                let want: Vec<u32> = (0..9).map(|k| (l[k / d] * r[k % d]) % p).collect();
                assert_eq!(got, want);
            }
        }
        let op = a.opposite();
        assert_eq!(op.mul_basis(1, 2), a.mul_basis(2, 1));
        assert_eq!(op.opposite().spec(), a.spec());
    }

    #[test]
    fn unipotence() {
        assert!(Algebra::truncated(3, &[3]).unwrap().is_unipotent());
        assert!(Algebra::group(2, &[2, 2]).unwrap().is_unipotent());
        assert!(!product_of_fields(2).unwrap().is_unipotent());
    }

    #[test]
    fn unipotence_propagates_to_enveloping() {
        for p in [2, 3] {
            for a in builtin_algebras(p).unwrap() {
                if a.is_unipotent() {
                    assert!(a.enveloping().is_unipotent(), "{:?}", a.spec());
                }
            }
        }
    }

    #[test]
    fn socle_of_truncated() {
        let a = Algebra::truncated(3, &[3, 3]).unwrap();
        assert_eq!(a.socle_element().unwrap(), unit_vec(9, idx(&a, &[2, 2])));
        assert!(a.is_selfinjective_local());
    }

    #[test]
    fn hopf_structure() {
        let h = HopfAlgebra::abelian(2, &[2]).unwrap();
        assert!(h.antipode().is_identity());
        let h = HopfAlgebra::abelian(3, &[3]).unwrap();
        let g = idx(h.group_algebra(), &[1]);
        let g2 = idx(h.group_algebra(), &[2]);
        assert_eq!(h.antipode().column(g), unit_vec(3, g2));
        assert_eq!(h.comultiplication().column(g), unit_vec(9, g * 3 + g));
    }

    #[test]
    fn comultiplication_in_w_basis() {
        let h = HopfAlgebra::elementary_abelian(2, 2).unwrap();
        let w = h.w_algebra();
        let d = w.dim();
        let (one, w1) = (w.unit_index(), idx(w, &[1, 0]));
        let mut want = vec![0; d * d];
        want[w1 * d + one] = 1;
        want[one * d + w1] = 1;
        want[w1 * d + w1] = 1;
        assert_eq!(h.comultiplication_w().column(w1), want);
    }

    #[test]
    fn linear_automorphisms() {
        let a = Algebra::truncated(3, &[3]).unwrap();
        let id = Automorphism::from_linear(&a, &FpMatrix::identity(a.field(), 1)).unwrap();
        assert!(id.is_identity());
        let g = Automorphism::scalar(&a, 2).unwrap();
        assert_eq!(g.apply(&unit_vec(3, 1)), vec![0, 2, 0]);
        assert_eq!(g.apply(&unit_vec(3, 2)), vec![0, 0, 1]);

        let b = Algebra::truncated(2, &[2, 2]).unwrap();
        let swap = FpMatrix::from_rows(b.field(), &[vec![0, 1], vec![1, 0]]).unwrap();
        let s = Automorphism::from_linear(&b, &swap).unwrap();
        let w12 = idx(&b, &[1, 1]);
        assert_eq!(s.apply(&unit_vec(4, w12)), unit_vec(4, w12));
        assert_eq!(s.apply(&unit_vec(4, idx(&b, &[1, 0]))), unit_vec(4, idx(&b, &[0, 1])));
    }

    #[test]
    fn linear_automorphisms_compose() {
        let a = Algebra::truncated(3, &[3, 3]).unwrap();
        let f = a.field();
        let x = FpMatrix::from_rows(f, &[vec![1, 2], vec![0, 1]]).unwrap();
        let y = FpMatrix::from_rows(f, &[vec![2, 0], vec![1, 1]]).unwrap();
        let ax = Automorphism::from_linear(&a, &x).unwrap();
        let ay = Automorphism::from_linear(&a, &y).unwrap();
        let axy = Automorphism::from_linear(&a, &(&x * &y)).unwrap();
        assert_eq!(ax.compose(&ay), axy);
        assert!(ax.compose(&ax.inverse()).is_identity());
    }

    #[test]
    fn binomials() {
        let f = Field::new(3).unwrap();
        assert_eq!(binomial_mod(f, 4, 2), 0);
        assert_eq!(binomial_mod(f, 5, 1), 2);
    }

    #[test]
    fn spec_json_round_trip() {
        let a = Algebra::truncated(3, &[3, 3]).unwrap();
        let env = a.enveloping();
        let s = serde_json::to_string(env.spec()).unwrap();
        assert!(s.contains("\"kind\":\"enveloping\""));
        let back: AlgebraSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, env.spec());
        assert_eq!(*Algebra::from_spec(&back).unwrap(), *env);
        let t = product_of_fields(2).unwrap();
        let s = serde_json::to_string(t.spec()).unwrap();
        let back: AlgebraSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, t.spec());
    }
}
