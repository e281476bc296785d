//! Seeded generators for test modules and bimodules.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Automorphism};
use crate::bimodule::{tensor, Bimodule};
use crate::error::{Error, Result};
use crate::ffmat::{Field, FpMatrix};
use crate::hopf::functor_f;
use crate::module::Module;

/// Attempts before a generator gives up on meeting a size bound.
const MAX_TRIES: usize = 200;

/// The Jordan block of size `n` for the single generator of a cyclic algebra:
/// nilpotent for the truncated presentation, unipotent for the group basis.
pub fn jordan_block(alg: &Arc<Algebra>, n: usize) -> Result<Module> {
    if alg.num_generators() != 1 {
        return Err(Error::Unsupported("Jordan blocks need a single generator".into()));
    }
    let f = alg.field();
    let shift = u32::from(alg.is_group_basis());
    let m = FpMatrix::from_fn(f, n, n, |i, j| {
        if i == j + 1 {
            1
        } else if i == j {
            shift
        } else {
            0
        }
    });
    Module::new(alg.clone(), vec![m])
}

/// A seeded source of random test objects.
#[derive(Clone, Debug)]
pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn random_vector(&mut self, field: Field, len: usize) -> Vec<u32> {
        (0..len).map(|_| self.rng.gen_range(0..field.p())).collect()
    }

    pub fn random_matrix(&mut self, field: Field, rows: usize, cols: usize) -> FpMatrix {
        let data = self.random_vector(field, rows * cols);
        FpMatrix::new(field, rows, cols, data).expect("entries are reduced")
    }

    pub fn random_gl(&mut self, field: Field, n: usize) -> FpMatrix {
        loop {
            let m = self.random_matrix(field, n, n);
            if m.is_invertible() {
                return m;
            }
        }
    }

    /// A random automorphism acting linearly on the generators of a truncated
    /// algebra.
    pub fn random_automorphism(&mut self, alg: &Arc<Algebra>) -> Result<Automorphism> {
        let g = self.random_gl(alg.field(), alg.num_generators());
        Automorphism::from_linear(alg, &g)
    }

    /// A random module of dimension `1..=max_dim`: a submodule or quotient of
    /// a small free module cut out by random vectors, in a random basis.
    pub fn random_module(&mut self, alg: &Arc<Algebra>, max_dim: usize) -> Result<Module> {
        let f = alg.field();
        let d = alg.dim();
        for _ in 0..MAX_TRIES {
            let r = self.rng.gen_range(1..=(max_dim / d).clamp(1, 2) + 1);
            let free = Module::free(alg.clone(), r);
            let k = self.rng.gen_range(1..=3);
            let vecs: Vec<Vec<u32>> = (0..k).map(|_| self.random_vector(f, r * d)).collect();
            let sub = free.submodule_generated(vecs);
            let m = if self.rng.gen_bool(0.5) {
                free.submodule(&sub).0
            } else {
                free.quotient(&sub).0
            };
            if (1..=max_dim).contains(&m.dim()) {
                let t = self.random_gl(f, m.dim());
                return m.conjugate(&t);
            }
        }
        Err(Error::Unsupported(format!("no random module of dimension ≤ {max_dim}")))
    }

    /// A random left-right projective bimodule of dimension `1..=max_dim`.
    /// The pool draws from `F(M)`, twisted bimodules, the free bimodule,
    /// syzygies over the enveloping algebra, sums and tensor products.
    pub fn random_lrp_bimodule(&mut self, alg: &Arc<Algebra>, max_dim: usize) -> Result<Bimodule> {
        for _ in 0..MAX_TRIES {
            if let Some(b) = self.try_lrp(alg, max_dim, 2)? {
                if (1..=max_dim).contains(&b.dim()) {
                    return Ok(b);
                }
            }
        }
        Err(Error::Unsupported(format!("no random lrp bimodule of dimension ≤ {max_dim}")))
    }

    fn try_lrp(&mut self, alg: &Arc<Algebra>, max_dim: usize, depth: u32) -> Result<Option<Bimodule>> {
        let d = alg.dim();
        let mut kinds = vec!["twisted"];
        if max_dim >= d {
            kinds.push("induced");
        }
        if max_dim >= d * d {
            kinds.push("free");
        }
        if depth > 0 {
            kinds.extend(["syzygy", "sum", "tensor"]);
        }
        let kind = *kinds.choose(&mut self.rng).unwrap();
        let b = match kind {
            "twisted" => {
                let (x, y) = (self.random_automorphism(alg)?, self.random_automorphism(alg)?);
                Bimodule::twisted(&x, &y)?
            }
            "induced" => {
                let m = self.random_module(alg, (max_dim / d).max(1))?;
                let b = functor_f(&m)?;
                let t = self.random_gl(alg.field(), b.dim());
                b.conjugate(&t)?
            }
            "free" => Bimodule::free_env(alg.clone()),
            "syzygy" => {
                let Some(inner) = self.try_lrp(alg, max_dim, depth - 1)? else {
                    return Ok(None);
                };
                if inner.inner().top_dim() * d * d > 4 * max_dim.max(1) {
                    return Ok(None);
                }
                inner.syzygy()?
            }
            "sum" => {
                let (Some(x), Some(y)) = (self.try_lrp(alg, max_dim, depth - 1)?, self.try_lrp(alg, max_dim, depth - 1)?) else {
                    return Ok(None);
                };
                x.direct_sum(&y)?
            }
            _ => {
                let (Some(x), Some(y)) = (self.try_lrp(alg, max_dim, depth - 1)?, self.try_lrp(alg, max_dim, depth - 1)?) else {
                    return Ok(None);
                };
                let (x, y) = (Arc::new(x), Arc::new(y));
                let t = tensor(&x, &y)?;
                if t.dim() > max_dim {
                    return Ok(None);
                }
                Bimodule::clone(t.bimodule())
            }
        };
        Ok((b.dim() <= max_dim && b.dim() > 0).then_some(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_deterministic() {
        let a = Algebra::truncated(2, &[2, 2]).unwrap();
        let x = Corpus::new(7).random_module(&a, 6).unwrap();
        let y = Corpus::new(7).random_module(&a, 6).unwrap();
        assert_eq!(x, y);
        x.validate().unwrap();
    }

    #[test]
    fn random_modules_respect_bounds() {
        let a = Algebra::truncated(3, &[3]).unwrap();
        let mut c = Corpus::new(1);
        for _ in 0..20 {
            let m = c.random_module(&a, 5).unwrap();
            assert!((1..=5).contains(&m.dim()));
            m.validate().unwrap();
        }
    }

    #[test]
    fn random_bimodules_are_lrp() {
        for (p, e) in [(2u32, vec![2u32]), (3, vec![3]), (2, vec![2, 2])] {
            let a = Algebra::truncated(p, &e).unwrap();
            let mut c = Corpus::new(3);
            for _ in 0..8 {
                let b = c.random_lrp_bimodule(&a, 36).unwrap();
                assert!(b.dim() <= 36);
                b.inner().validate().unwrap();
                assert!(b.is_lrp().unwrap());
            }
        }
    }

    #[test]
    fn jordan_blocks() {
        let a = Algebra::truncated(3, &[3]).unwrap();
        assert_eq!(jordan_block(&a, 3).unwrap().top_dim(), 1);
        let g = Algebra::group(3, &[3]).unwrap();
        assert!(jordan_block(&g, 2).is_ok());
        assert!(jordan_block(&a, 4).is_err());
    }
}
