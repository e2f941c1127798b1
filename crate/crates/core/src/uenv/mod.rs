//! Finite-dimensional associative algebras given by multiplication tables:
//! restricted enveloping algebras `u(L)` and truncated polynomial algebras
//! `K[x]/(f)`.
//!
//! In `u(L)` the basis is the PBW monomials `e_1^a_1 ... e_d^a_d`, `a_i < p`,
//! ordered lexicographically by exponent tuple. Products are straightened by
//! right multiplication with one generator at a time, memoized per
//! (monomial, generator).

mod hochschild;
mod resolution;

pub use hochschild::{
    hochschild_dim, hochschild_dims, holm_periodic_hochschild, nilradical, verify_hochschild_isomorphism, HochschildIsoCheck,
};
pub use resolution::{ext_dim, ext_dims, ExtOptions, ExtReport, FreeResolution};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, Poly};
use crate::liep::LiePAlgebra;
use crate::linalg::{axpy, Matrix};

/// Default bound on `dim u(L)`.
pub const DEFAULT_GUARD_DIM: usize = 512;

pub(crate) type Sparse = Vec<(u32, Elem)>;

#[derive(Clone, Debug)]
pub struct AssocAlgebra {
    field: Field,
    labels: Vec<String>,
    /// `table[i * dim + j]` is `b_i b_j`.
    table: Vec<Sparse>,
    unit: usize,
    augmentation: Option<Vec<Elem>>,
    /// Basis indices of algebra generators spanning the augmentation ideal
    /// as a two-sided ideal.
    generators: Vec<usize>,
    exponents: Option<Vec<Vec<u32>>>,
}

impl AssocAlgebra {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// `ε` as a coordinate functional, when the algebra is augmented.
    pub fn augmentation(&self) -> Option<&[Elem]> {
        self.augmentation.as_deref()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// PBW exponent tuples of the basis, for enveloping algebras.
    pub fn exponents(&self) -> Option<&[Vec<u32>]> {
        self.exponents.as_deref()
    }

    pub(crate) fn product_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i * self.dim() + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; self.dim()];
        v[i] = Elem::ONE;
        v
    }

    pub fn one(&self) -> Vec<Elem> {
        self.basis_vector(self.unit)
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.dim()];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = f.mul(x, y);
                for &(k, z) in self.product_basis(i, j) {
                    out[k as usize] = f.mul_add(out[k as usize], c, z);
                }
            }
        }
        out
    }

    /// `b_i v`.
    pub(crate) fn left_mul_basis(&self, i: usize, v: &[Elem], out: &mut [Elem]) {
        let f = &self.field;
        for (j, &y) in v.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for &(k, z) in self.product_basis(i, j) {
                out[k as usize] = f.mul_add(out[k as usize], y, z);
            }
        }
    }

    pub fn pow(&self, a: &[Elem], mut e: u64) -> Vec<Elem> {
        let mut result = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    /// Matrix of `x -> a x`.
    pub fn left_mult_matrix(&self, a: &[Elem]) -> Matrix {
        let n = self.dim();
        let columns: Vec<Vec<Elem>> = (0..n).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_columns(&self.field, n, &columns)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.product_basis(i, j) == self.product_basis(j, i)))
    }

    /// Dimension of the center.
    pub fn center_dim(&self) -> usize {
        let n = self.dim();
        let f = &self.field;
        // rows indexed by (generator-free) basis i and output coordinate k
        let mut m = Matrix::zeros(f, n * n, n);
        for i in 0..n {
            for j in 0..n {
                for &(k, z) in self.product_basis(j, i) {
                    let r = i * n + k as usize;
                    m.set(r, j, f.add(m.get(r, j), z));
                }
                for &(k, z) in self.product_basis(i, j) {
                    let r = i * n + k as usize;
                    m.set(r, j, f.sub(m.get(r, j), z));
                }
            }
        }
        m.nullity()
    }

    fn check_triple(&self, i: usize, j: usize, k: usize) -> bool {
        let (a, b, c) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
        self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
    }

    /// Associativity and unit laws on all basis triples when `dim <= 64`,
    /// otherwise on `samples` seeded random triples.
    pub fn check_associativity(&self, samples: usize, seed: u64) -> bool {
        let n = self.dim();
        let unit_ok = (0..n).all(|i| {
            let b = self.basis_vector(i);
            self.mul(&self.one(), &b) == b && self.mul(&b, &self.one()) == b
        });
        if !unit_ok {
            return false;
        }
        if n <= 64 {
            return (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.check_triple(i, j, k))));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).all(|_| self.check_triple(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
    }

    /// `K[x]/(f)` in the basis `1, x, ..., x^(n-1)`, `n = deg f`. Augmented by
    /// `x -> 0` when `f(0) = 0`.
    pub fn truncated_polynomial(f: &Poly) -> Result<AssocAlgebra> {
        let field = f.field().clone();
        let n = match f.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::InvalidParams("the quotient by a unit is the zero algebra".into())),
            Some(n) => n,
        };
        let f = f.monic();
        let mut powers: Vec<Vec<Elem>> = Vec::with_capacity(2 * n - 1);
        for e in 0..2 * n - 1 {
            let r = Poly::monomial(&field, field.one(), e).rem(&f).expect("nonzero modulus");
            powers.push((0..n).map(|i| r.coeff(i)).collect());
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(to_sparse(&powers[i + j]));
            }
        }
        let augmentation = f.coeff(0).is_zero().then(|| {
            let mut e = vec![Elem::ZERO; n];
            e[0] = Elem::ONE;
            e
        });
        Ok(AssocAlgebra {
            field,
            labels: (0..n).map(|i| format!("x^{i}")).collect(),
            table,
            unit: 0,
            augmentation,
            generators: if n > 1 { vec![1] } else { vec![] },
            exponents: None,
        })
    }
}

pub(crate) fn to_sparse(v: &[Elem]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| (i as u32, c))
        .collect()
}

struct Straightener<'a> {
    algebra: &'a LiePAlgebra,
    p: usize,
    d: usize,
    n: usize,
    /// radix weights: index = Σ a_i * weight[i]
    weight: Vec<usize>,
    memo: Vec<Option<Sparse>>,
}

impl<'a> Straightener<'a> {
    fn exps(&self, m: usize) -> Vec<usize> {
        (0..self.d).map(|i| (m / self.weight[i]) % self.p).collect()
    }

    fn add_into(&self, acc: &mut [Elem], c: Elem, v: &Sparse) {
        let f = self.algebra.field();
        for &(k, z) in v {
            acc[k as usize] = f.mul_add(acc[k as usize], c, z);
        }
    }

    /// `m * e_j` in the PBW basis.
    fn times_generator(&mut self, m: usize, j: usize) -> Sparse {
        let key = m * self.d + j;
        if let Some(v) = &self.memo[key] {
            return v.clone();
        }
        let f = self.algebra.field().clone();
        let a = self.exps(m);
        let last = (0..self.d).rev().find(|&i| a[i] > 0);
        let mut acc = vec![Elem::ZERO; self.n];
        match last {
            Some(k) if k > j => {
                // m = m' e_k, and e_k e_j = e_j e_k + [e_k, e_j]
                let m_left = m - self.weight[k];
                let first = self.times_generator(m_left, j);
                for (t, c) in first {
                    let v = self.times_generator(t as usize, k);
                    self.add_into(&mut acc, c, &v);
                }
                let bracket = self.algebra.structure_constants(k, j).to_vec();
                for (l, c) in bracket.into_iter().enumerate() {
                    if !c.is_zero() {
                        let v = self.times_generator(m_left, l);
                        self.add_into(&mut acc, c, &v);
                    }
                }
            }
            Some(k) if k == j && a[j] + 1 == self.p => {
                // e_j^p = e_j^[p]
                let m_left = m - (self.p - 1) * self.weight[j];
                let pj = self.algebra.pmap_basis(j).to_vec();
                for (l, c) in pj.into_iter().enumerate() {
                    if !c.is_zero() {
                        let v = self.times_generator(m_left, l);
                        self.add_into(&mut acc, c, &v);
                    }
                }
            }
            _ => acc[m + self.weight[j]] = f.one(),
        }
        let out = to_sparse(&acc);
        self.memo[key] = Some(out.clone());
        out
    }
}

/// Builds `u(L)`; fails if `p^dim L` exceeds `guard`.
pub fn build_uenv(algebra: &LiePAlgebra, guard: usize) -> Result<AssocAlgebra> {
    let f = algebra.field();
    let p = f.p() as usize;
    let d = algebra.dim();
    let n = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if n > guard as u128 {
        return Err(Error::DimensionGuard {
            what: "dim u(L)",
            value: n,
            limit: guard as u128,
        });
    }
    let n = n as usize;
    let weight: Vec<usize> = (0..d).map(|i| p.pow((d - 1 - i) as u32)).collect();
    let mut s = Straightener {
        algebra,
        p,
        d,
        n,
        weight,
        memo: vec![None; n * d],
    };
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // b_i b_j = ((b_i e_1) e_1 ...) following the exponents of b_j
            let mut acc: Vec<Elem> = vec![Elem::ZERO; n];
            acc[i] = Elem::ONE;
            for (g, &e) in s.exps(j).iter().enumerate() {
                for _ in 0..e {
                    let mut next = vec![Elem::ZERO; n];
                    for (t, &c) in acc.iter().enumerate() {
                        if !c.is_zero() {
                            let v = s.times_generator(t, g);
                            s.add_into(&mut next, c, &v);
                        }
                    }
                    acc = next;
                }
            }
            table.push(to_sparse(&acc));
        }
    }
    let exponents: Vec<Vec<u32>> = (0..n).map(|m| s.exps(m).into_iter().map(|e| e as u32).collect()).collect();
    let labels = exponents
        .iter()
        .map(|e| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    let name = &algebra.basis_names()[i];
                    if a == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{a}")
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let mut augmentation = vec![Elem::ZERO; n];
    augmentation[0] = Elem::ONE;
    let generators = (0..d).map(|i| s.weight[i]).collect();
    let u = AssocAlgebra {
        field: f.clone(),
        labels,
        table,
        unit: 0,
        augmentation: Some(augmentation),
        generators,
        exponents: Some(exponents),
    };
    if !u.check_associativity(200, 0) {
        return Err(Error::InvalidParams("straightening produced a non-associative table".into()));
    }
    Ok(u)
}

/// Image of a Lie element in `u(L)`.
pub fn embed_lie_element(u: &AssocAlgebra, x: &[Elem]) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; u.dim()];
    for (i, &c) in x.iter().enumerate() {
        let g = u.generators[i];
        out[g] = c;
    }
    out
}

/// Matrix of a PBW monomial `e_1^a_1 ... e_d^a_d` on a module: the ordered
/// product of the generator matrices.
pub(crate) fn monomial_action(rho: &[Matrix], exps: &[u32], dim: usize, field: &Field) -> Matrix {
    let mut out = Matrix::identity(field, dim);
    for (i, &a) in exps.iter().enumerate() {
        for _ in 0..a {
            out = out.mul(&rho[i]);
        }
    }
    out
}

/// Action matrix of an arbitrary element of `u(L)` given the basis monomial
/// actions.
pub(crate) fn element_action(monomials: &[Matrix], v: &[Elem], dim: usize, field: &Field) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (b, &c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for r in 0..dim {
            axpy(field, out.row_mut(r), c, monomials[b].row(r));
        }
    }
    out
}
