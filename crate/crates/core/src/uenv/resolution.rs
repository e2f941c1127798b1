//! Free resolutions of the trivial module over an augmented algebra and the
//! induced Hom complexes.
//!
//! `F_i = A^{n_i}` is a left module; `∂_i` is stored by the images of the free
//! generators. Generators for the kernel of `∂_i` are a lift of a basis of
//! `ker / I ker` (`I` the augmentation ideal), completed greedily when those
//! do not generate the whole kernel.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{build_uenv, element_action, monomial_action, AssocAlgebra, DEFAULT_GUARD_DIM};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::{Matrix, SpanBasis};
use crate::rep::RestrictedModule;

#[derive(Clone, Debug)]
pub struct ExtOptions {
    /// Bound on `dim u(L)`.
    pub guard_dim: usize,
    /// Largest free module `A^{n_i}` (as a vector space) whose boundary
    /// kernel is computed.
    pub max_free_dim: usize,
    /// Shuffles kernel bases before generators are picked.
    pub shuffle_seed: Option<u64>,
}

impl Default for ExtOptions {
    fn default() -> Self {
        ExtOptions {
            guard_dim: DEFAULT_GUARD_DIM,
            max_free_dim: 5000,
            shuffle_seed: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    algebra: AssocAlgebra,
    ranks: Vec<usize>,
    /// `images[i][j]`: `∂_i` of the `j`-th generator of `F_i`, a vector of
    /// `n_{i-1}` blocks. `images[0]` is empty.
    images: Vec<Vec<Vec<Elem>>>,
    /// `(rank ∂_{i+1}, nullity ∂_i)` for each resolved stage.
    exactness: Vec<(usize, usize)>,
    truncated: bool,
}

impl FreeResolution {
    /// Resolves the trivial module up to `F_length`.
    pub fn new(algebra: &AssocAlgebra, length: usize, opts: &ExtOptions) -> Result<FreeResolution> {
        let eps = algebra
            .augmentation()
            .ok_or_else(|| Error::InvalidParams("the algebra has no augmentation".into()))?;
        let f = algebra.field().clone();
        let n = algebra.dim();
        let mut rng = opts.shuffle_seed.map(ChaCha8Rng::seed_from_u64);
        let mut res = FreeResolution {
            algebra: algebra.clone(),
            ranks: vec![1],
            images: vec![Vec::new()],
            exactness: Vec::new(),
            truncated: false,
        };
        let eps_matrix = Matrix::from_rows(&f, &[eps.to_vec()])?;
        let mut kernel = eps_matrix.kernel();
        for i in 0..length {
            if let Some(rng) = rng.as_mut() {
                kernel.shuffle(rng);
            }
            let width = res.ranks[i] * n;
            let last = i + 1 == length;
            let mut gens = res.nakayama_lift(&kernel, width);
            if gens.len() * n > opts.max_free_dim {
                res.truncated = true;
                break;
            }
            let mut stage = res.resolve_stage(&gens, res.ranks[i], last);
            if stage.0 < kernel.len() {
                gens = res.greedy_completion(&kernel, gens, width);
                if gens.len() * n > opts.max_free_dim {
                    res.truncated = true;
                    break;
                }
                stage = res.resolve_stage(&gens, res.ranks[i], last);
            }
            res.exactness.push((stage.0, kernel.len()));
            res.ranks.push(gens.len());
            res.images.push(gens);
            match stage.1 {
                Some(next) => kernel = next,
                None => break,
            }
        }
        Ok(res)
    }

    /// Rank of the cover matrix, and its kernel unless this is the last stage.
    fn resolve_stage(&self, gens: &[Vec<Elem>], blocks: usize, last: bool) -> (usize, Option<Vec<Vec<Elem>>>) {
        let boundary = self.cover_matrix(gens, blocks);
        if last {
            (boundary.rank(), None)
        } else {
            let r = boundary.rref_full();
            (r.rank, Some(r.kernel))
        }
    }

    fn act_blocks(&self, b: usize, v: &[Elem], out: &mut [Elem]) {
        let n = self.algebra.dim();
        for (src, dst) in v.chunks(n).zip(out.chunks_mut(n)) {
            self.algebra.left_mul_basis(b, src, dst);
        }
    }

    fn nakayama_lift(&self, kernel: &[Vec<Elem>], width: usize) -> Vec<Vec<Elem>> {
        let f = self.algebra.field();
        let mut span = SpanBasis::new(f, width);
        for v in kernel {
            for &g in self.algebra.generators() {
                let mut out = vec![Elem::ZERO; width];
                self.act_blocks(g, v, &mut out);
                span.insert(&out);
            }
        }
        kernel.iter().filter(|v| span.insert(v)).cloned().collect()
    }

    fn greedy_completion(&self, kernel: &[Vec<Elem>], mut gens: Vec<Vec<Elem>>, width: usize) -> Vec<Vec<Elem>> {
        let f = self.algebra.field();
        let n = self.algebra.dim();
        let mut span = SpanBasis::new(f, width);
        let absorb = |span: &mut SpanBasis, v: &[Elem]| {
            for b in 0..n {
                let mut out = vec![Elem::ZERO; width];
                self.act_blocks(b, v, &mut out);
                span.insert(&out);
            }
        };
        for g in &gens {
            absorb(&mut span, g);
        }
        for v in kernel {
            if span.rank() == kernel.len() {
                break;
            }
            if !span.contains(v) {
                absorb(&mut span, v);
                gens.push(v.clone());
            }
        }
        gens
    }

    /// Matrix of the cover `A^{gens} -> A^{blocks}`: column `(j, b)` is
    /// `b * gens[j]`.
    fn cover_matrix(&self, gens: &[Vec<Elem>], blocks: usize) -> Matrix {
        let n = self.algebra.dim();
        let rows = blocks * n;
        let mut columns = Vec::with_capacity(gens.len() * n);
        for g in gens {
            for b in 0..n {
                let mut out = vec![Elem::ZERO; rows];
                self.act_blocks(b, g, &mut out);
                columns.push(out);
            }
        }
        Matrix::from_columns(self.algebra.field(), rows, &columns)
    }

    pub fn algebra(&self) -> &AssocAlgebra {
        &self.algebra
    }

    /// `n_0, n_1, ...`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Highest index `i` with `F_i` known.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn exactness(&self) -> &[(usize, usize)] {
        &self.exactness
    }

    /// `∂_i : F_i -> F_{i-1}` as a matrix over the field, `1 <= i <= length`.
    pub fn boundary_matrix(&self, i: usize) -> Matrix {
        self.cover_matrix(&self.images[i], self.ranks[i - 1])
    }

    /// `ε : F_0 -> K`.
    pub fn augmentation_matrix(&self) -> Matrix {
        let eps = self.algebra.augmentation().expect("resolutions need an augmentation");
        Matrix::from_rows(self.algebra.field(), &[eps.to_vec()]).expect("one row")
    }

    /// `δ_i : Hom(F_{i-1}, M) -> Hom(F_i, M)` given the action matrices of the
    /// algebra's basis on `M`.
    pub fn hom_differential(&self, basis_actions: &[Matrix], m: usize, i: usize) -> Matrix {
        let f = self.algebra.field();
        let n = self.algebra.dim();
        let (rows, cols) = (self.ranks[i], self.ranks[i - 1]);
        let mut out = Matrix::zeros(f, rows * m, cols * m);
        for (j, image) in self.images[i].iter().enumerate() {
            for (k, block) in image.chunks(n).enumerate() {
                let action = element_action(basis_actions, block, m, f);
                for r in 0..m {
                    for c in 0..m {
                        out.set(j * m + r, k * m + c, action.get(r, c));
                    }
                }
            }
        }
        out
    }

    /// `dim Ext^0 .. Ext^max` against a module given by basis actions, limited
    /// to the degrees the resolution supports.
    pub fn ext_dims_with(&self, basis_actions: &[Matrix], m: usize, max: usize) -> Vec<usize> {
        let top = max.min(self.length().saturating_sub(1));
        let ranks: Vec<usize> = (1..=top + 1)
            .map(|i| self.hom_differential(basis_actions, m, i).rank())
            .collect();
        (0..=top)
            .map(|n| {
                let dim = self.ranks[n] * m;
                let before = if n == 0 { 0 } else { ranks[n - 1] };
                dim - ranks[n] - before
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtReport {
    pub algebra: String,
    pub module: String,
    /// `dim Ext^n` for `n = 0 ..`; shorter than requested when truncated.
    pub ext_dims: Vec<usize>,
    pub requested_max_degree: usize,
    pub truncated: bool,
    pub resolution_ranks: Vec<usize>,
}

/// Action matrices of the PBW basis of `u(L)` on `module`.
pub(crate) fn pbw_actions(u: &AssocAlgebra, module: &RestrictedModule) -> Vec<Matrix> {
    let exps = u.exponents().expect("enveloping algebra");
    exps.iter()
        .map(|e| monomial_action(module.rho(), e, module.dim(), u.field()))
        .collect()
}

/// `dim Ext^n_{u(L)}(K, M)` for `n <= max_degree`.
pub fn ext_dims(module: &RestrictedModule, max_degree: usize, opts: &ExtOptions) -> Result<ExtReport> {
    if !module.is_restricted() {
        return Err(Error::NotRestricted);
    }
    let l = module.algebra();
    let u = build_uenv(l, opts.guard_dim)?;
    let res = FreeResolution::new(&u, max_degree + 1, opts)?;
    let actions = pbw_actions(&u, module);
    Ok(ExtReport {
        algebra: l.name().to_string(),
        module: module.name().to_string(),
        ext_dims: res.ext_dims_with(&actions, module.dim(), max_degree),
        requested_max_degree: max_degree,
        truncated: res.is_truncated(),
        resolution_ranks: res.ranks().to_vec(),
    })
}

pub fn ext_dim(module: &RestrictedModule, n: usize, opts: &ExtOptions) -> Result<usize> {
    let report = ext_dims(module, n, opts)?;
    report.ext_dims.get(n).copied().ok_or(Error::DimensionGuard {
        what: "Ext degree within the resolution size bound",
        value: n as u128,
        limit: report.ext_dims.len().saturating_sub(1) as u128,
    })
}
