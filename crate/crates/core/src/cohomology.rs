//! Chevalley-Eilenberg cochains `C^n(L, M) = Hom(Λ^n L, M)` and the
//! dimensions of ordinary Lie algebra cohomology.
//!
//! Cochain coordinates are indexed by (subset, module coordinate), subsets of
//! `{0..d}` in lexicographic order, the module coordinate varying fastest. The
//! differential is
//!
//! `(df)(x_0..x_n) = Σ_i (-1)^i x_i.f(..x̂_i..) + Σ_{i<j} (-1)^{i+j} f([x_i,x_j], ..x̂_i..x̂_j..)`.

use serde::Serialize;

use crate::gf::Elem;
use crate::linalg::Matrix;
use crate::rep::RestrictedModule;

/// Lexicographically ordered `n`-subsets of `0..d`, as bitmasks.
pub(crate) fn subsets(d: usize, n: usize) -> Vec<u32> {
    fn rec(start: usize, d: usize, left: usize, mask: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for i in start..d {
            if d - i < left {
                break;
            }
            rec(i + 1, d, left - 1, mask | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if n <= d {
        rec(0, d, n, 0, &mut out);
    }
    out
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug)]
pub struct CeComplex {
    module: RestrictedModule,
}

impl CeComplex {
    pub fn new(module: &RestrictedModule) -> CeComplex {
        assert!(module.algebra().dim() < 32, "cochain subsets are stored as 32-bit masks");
        CeComplex { module: module.clone() }
    }

    pub fn module(&self) -> &RestrictedModule {
        &self.module
    }

    pub fn top_degree(&self) -> usize {
        self.module.algebra().dim()
    }

    pub fn cochain_dim(&self, n: usize) -> usize {
        binomial(self.top_degree(), n) * self.module.dim()
    }

    /// The matrix of `d_n : C^n -> C^(n+1)`.
    pub fn differential(&self, n: usize) -> Matrix {
        let l = self.module.algebra();
        let f = l.field();
        let d = l.dim();
        let m = self.module.dim();
        let mut out = Matrix::zeros(f, self.cochain_dim(n + 1), self.cochain_dim(n));
        if n >= d {
            return out;
        }
        let source = subsets(d, n);
        let mut index = vec![usize::MAX; 1 << d];
        for (k, &s) in source.iter().enumerate() {
            index[s as usize] = k;
        }
        let neg = |a: Elem, sign: bool| if sign { f.neg(a) } else { a };
        for (row_block, &t) in subsets(d, n + 1).iter().enumerate() {
            let elems = members(t);
            // action terms
            for (i, &a) in elems.iter().enumerate() {
                let col_block = index[(t & !(1 << a)) as usize];
                let rho = &self.module.rho()[a];
                for r in 0..m {
                    for c in 0..m {
                        let v = rho.get(r, c);
                        if !v.is_zero() {
                            let (row, col) = (row_block * m + r, col_block * m + c);
                            out.set(row, col, f.add(out.get(row, col), neg(v, i % 2 == 1)));
                        }
                    }
                }
            }
            // bracket terms
            for i in 0..elems.len() {
                for j in i + 1..elems.len() {
                    let rest = t & !(1 << elems[i]) & !(1 << elems[j]);
                    let bracket = l.structure_constants(elems[i], elems[j]);
                    for (c, &coef) in bracket.iter().enumerate() {
                        if coef.is_zero() || rest & (1 << c) != 0 {
                            continue;
                        }
                        // moving e_c into sorted position among `rest`
                        let below = (rest & ((1u32 << c) - 1)).count_ones() as usize;
                        let sign = (i + j + below) % 2 == 1;
                        let col_block = index[(rest | (1 << c)) as usize];
                        for r in 0..m {
                            let (row, col) = (row_block * m + r, col_block * m + r);
                            out.set(row, col, f.add(out.get(row, col), neg(coef, sign)));
                        }
                    }
                }
            }
        }
        out
    }

    fn rank_of_differential(&self, n: isize) -> usize {
        if n < 0 {
            0
        } else {
            self.differential(n as usize).rank()
        }
    }

    /// `dim H^n = nullity(d_n) - rank(d_{n-1})`.
    pub fn cohomology_dim(&self, n: usize) -> usize {
        if n > self.top_degree() {
            return 0;
        }
        let nullity = self.cochain_dim(n) - self.rank_of_differential(n as isize);
        nullity - self.rank_of_differential(n as isize - 1)
    }

    /// `dim H^0 .. dim H^max`, sharing the rank computations.
    pub fn dims(&self, max: usize) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=max)
            .map(|n| if n >= self.top_degree() { 0 } else { self.rank_of_differential(n as isize) })
            .collect();
        (0..=max)
            .map(|n| {
                let before = if n == 0 { 0 } else { ranks[n - 1] };
                self.cochain_dim(n) - ranks[n] - before
            })
            .collect()
    }
}

pub fn ce_cohomology_dim(module: &RestrictedModule, n: usize) -> usize {
    CeComplex::new(module).cohomology_dim(n)
}

pub fn ce_dims(module: &RestrictedModule, max_degree: usize) -> Vec<usize> {
    CeComplex::new(module).dims(max_degree)
}

/// `Σ (-1)^n dim C^n = Σ (-1)^n dim H^n`.
pub fn ce_euler_check(module: &RestrictedModule) -> bool {
    let complex = CeComplex::new(module);
    let top = complex.top_degree();
    let dims = complex.dims(top);
    let alt = |v: &dyn Fn(usize) -> usize| (0..=top).map(|n| if n % 2 == 0 { v(n) as i64 } else { -(v(n) as i64) }).sum::<i64>();
    alt(&|n| complex.cochain_dim(n)) == alt(&|n| dims[n])
}

#[derive(Clone, Debug, Serialize)]
pub struct CeReport {
    pub algebra: String,
    pub module: String,
    pub dims: Vec<usize>,
}

pub fn ce_report(module: &RestrictedModule, max_degree: usize) -> CeReport {
    CeReport {
        algebra: module.algebra().name().to_string(),
        module: module.name().to_string(),
        dims: ce_dims(module, max_degree),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, HeisenbergPmap};
    use crate::linalg::span_basis;
    use crate::rep::{adjoint_module, dual_module, trivial_module};

    fn modules_of(entry: &catalog::CatalogEntry) -> Vec<RestrictedModule> {
        let l = &entry.algebra;
        let ad = adjoint_module(l);
        let mut out = vec![trivial_module(l), dual_module(&ad), ad];
        out.extend(entry.modules.iter().map(|(_, m)| m.clone()));
        out
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(subsets(2, 0), vec![0]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn abelian_is_exterior_algebra() {
        for p in [2, 3] {
            for d in 1..=5 {
                let l = catalog::abelian(p, d).unwrap();
                let dims = ce_dims(&trivial_module(&l), d + 1);
                let expected: Vec<usize> = (0..=d + 1).map(|n| binomial(d, n)).collect();
                assert_eq!(dims, expected);
            }
        }
    }

    #[test]
    fn nonabelian2_examples() {
        let e = catalog::catalog_get("nonabelian2", 3, 1, None).unwrap();
        let kv = e.module("Kv").unwrap();
        assert_eq!(ce_cohomology_dim(kv, 2), 1);
        assert_eq!(ce_cohomology_dim(&trivial_module(&e.algebra), 2), 0);
        assert_eq!(ce_dims(kv, 3), vec![0, 1, 1, 0]);
    }

    #[test]
    fn heisenberg_trivial_coefficients() {
        for p in [2, 3, 5] {
            let l = catalog::heisenberg(p, HeisenbergPmap::Zero).unwrap();
            assert_eq!(ce_dims(&trivial_module(&l), 4), vec![1, 2, 2, 1, 0]);
        }
    }

    #[test]
    fn first_cohomology_is_dual_of_abelianization() {
        for entry in catalog::standard_instances() {
            let l = &entry.algebra;
            let derived: Vec<Vec<Elem>> = l.bracket_entries().into_iter().map(|(_, _, v)| v).collect();
            let derived_dim = span_basis(l.field(), l.dim(), &derived).len();
            assert_eq!(ce_cohomology_dim(&trivial_module(l), 1), l.dim() - derived_dim, "{}", l.name());
        }
    }

    #[test]
    fn complexes_across_catalog() {
        for entry in catalog::standard_instances() {
            for m in modules_of(&entry) {
                let c = CeComplex::new(&m);
                let top = c.top_degree();
                for n in 0..top {
                    let dd = c.differential(n + 1).mul(&c.differential(n));
                    assert!(dd.is_zero(), "{} {} degree {n}", entry.algebra.name(), m.name());
                }
                assert!(ce_euler_check(&m));
                assert_eq!(c.cohomology_dim(0), m.invariants_dim());
                assert_eq!(c.cohomology_dim(top + 1), 0);
            }
        }
    }

    #[test]
    fn sl2_euler_and_rank_nullity() {
        let l = catalog::sl2(3).unwrap();
        let k = trivial_module(&l);
        assert!(ce_euler_check(&k));
        let c = CeComplex::new(&k);
        for n in 0..=3 {
            let d = c.differential(n);
            assert_eq!(d.rank() + d.nullity(), c.cochain_dim(n));
        }
    }
}
