//! Finite-dimensional modules over a Lie p-algebra, given by the matrices of
//! the basis action. `rho[i]` acts on column vectors: `e_i . m = rho[i] m`.

use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::liep::{LieElement, LiePAlgebra};
use crate::linalg::{axpy, Matrix};

#[derive(Clone, Debug)]
pub struct RestrictedModule {
    name: String,
    algebra: LiePAlgebra,
    rho: Vec<Matrix>,
    restricted: bool,
}

/// Validates the bracket compatibility of `rho` and records whether the
/// p-compatibility `rho(e_i^[p]) = rho(e_i)^p` holds.
pub fn make_module(
    algebra: &LiePAlgebra,
    rho: Vec<Matrix>,
    require_restricted: bool,
) -> Result<RestrictedModule> {
    make_named_module(algebra, "M", rho, require_restricted)
}

pub fn make_named_module(
    algebra: &LiePAlgebra,
    name: impl Into<String>,
    rho: Vec<Matrix>,
    require_restricted: bool,
) -> Result<RestrictedModule> {
    let d = algebra.dim();
    if rho.len() != d {
        return Err(Error::Shape(format!("expected {d} action matrices")));
    }
    let m = rho.first().map_or(0, |r| r.rows());
    if rho.iter().any(|r| r.rows() != m || r.cols() != m || r.field() != algebra.field()) {
        return Err(Error::Shape("action matrices must be square of equal size over the algebra's field".into()));
    }
    let mut module = RestrictedModule {
        name: name.into(),
        algebra: algebra.clone(),
        rho,
        restricted: false,
    };
    for i in 0..d {
        for j in i + 1..d {
            if !module.bracket_residual(i, j).is_zero() {
                return Err(Error::ModuleAxiomViolation(i, j));
            }
        }
    }
    let p = algebra.field().p() as u64;
    module.restricted = (0..d).all(|i| module.action_raw(algebra.pmap_basis(i)) == module.rho[i].pow(p));
    if require_restricted && !module.restricted {
        return Err(Error::NotRestricted);
    }
    Ok(module)
}

/// One-dimensional module with zero action.
pub fn trivial_module(algebra: &LiePAlgebra) -> RestrictedModule {
    let zero = Matrix::zeros(algebra.field(), 1, 1);
    RestrictedModule {
        name: "K".into(),
        algebra: algebra.clone(),
        rho: vec![zero; algebra.dim()],
        restricted: true,
    }
}

/// `e_i . m = [e_i, m]`.
pub fn adjoint_module(algebra: &LiePAlgebra) -> RestrictedModule {
    let rho = (0..algebra.dim())
        .map(|i| algebra.adjoint_raw(algebra.basis_element(i).coords()))
        .collect();
    make_named_module(algebra, "ad", rho, false).expect("the adjoint action is a representation")
}

/// Contragredient module, `rho*(x) = -rho(x)^T`.
pub fn dual_module(module: &RestrictedModule) -> RestrictedModule {
    let rho = module.rho.iter().map(|r| r.transpose().neg()).collect();
    RestrictedModule {
        name: format!("{}*", module.name),
        algebra: module.algebra.clone(),
        rho,
        restricted: module.restricted,
    }
}

impl RestrictedModule {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> RestrictedModule {
        self.name = name.into();
        self
    }

    pub fn algebra(&self) -> &LiePAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.rho.first().map_or(1, |r| r.rows())
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub(crate) fn action_raw(&self, x: &[Elem]) -> Matrix {
        let f = self.algebra.field();
        let m = self.dim();
        let mut out = Matrix::zeros(f, m, m);
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for r in 0..m {
                axpy(f, out.row_mut(r), a, self.rho[i].row(r));
            }
        }
        out
    }

    /// `rho(x)` for an arbitrary element, extended linearly.
    pub fn action(&self, x: &LieElement) -> Result<Matrix> {
        if x.field() != self.algebra.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.action_raw(x.coords()))
    }

    /// `rho([e_i, e_j]) - (rho_i rho_j - rho_j rho_i)`.
    pub fn bracket_residual(&self, i: usize, j: usize) -> Matrix {
        let lhs = self.action_raw(self.algebra.structure_constants(i, j));
        let comm = self.rho[i].mul(&self.rho[j]).sub(&self.rho[j].mul(&self.rho[i]));
        lhs.sub(&comm)
    }

    /// Dimension of the invariants `{ m : e_i . m = 0 for all i }`.
    pub fn invariants_dim(&self) -> usize {
        if self.rho.is_empty() {
            return self.dim();
        }
        let mut stacked = self.rho[0].clone();
        for r in &self.rho[1..] {
            stacked = stacked.stack(r);
        }
        stacked.nullity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_module_is_restricted() {
        let l = catalog::sl2(3).unwrap();
        let k = trivial_module(&l);
        assert_eq!(k.dim(), 1);
        assert!(k.is_restricted());
        let checked = make_module(&l, k.rho().to_vec(), true).unwrap();
        assert!(checked.is_restricted());
        let dual = dual_module(&k);
        assert_eq!(dual.rho(), k.rho());
    }

    #[test]
    fn adjoint_sl2_is_restricted() {
        let l = catalog::sl2(3).unwrap();
        let ad = adjoint_module(&l);
        assert!(ad.is_restricted());
        let h = &ad.rho()[1];
        assert_eq!(h.pow(3), *h);
    }

    #[test]
    fn adjoint_heisenberg_gf2_is_restricted() {
        let l = catalog::heisenberg(2, catalog::HeisenbergPmap::Zero).unwrap();
        let ad = adjoint_module(&l);
        assert!(ad.is_restricted());
        for r in ad.rho() {
            assert!(r.pow(2).is_zero());
        }
    }

    #[test]
    fn kv_module_on_nonabelian2() {
        for p in [2, 3, 5] {
            let l = catalog::nonabelian2(p).unwrap();
            let f = l.field();
            let rho = vec![Matrix::from_ints(f, &[&[0]]), Matrix::from_ints(f, &[&[-1]])];
            let kv = make_module(&l, rho, false).unwrap();
            assert_eq!(kv.dim(), 1);
            // y^[p] = y and (-1)^p = -1
            assert!(kv.is_restricted());
        }
    }

    #[test]
    fn bad_action_reports_witness_pair() {
        let l = catalog::nonabelian2(3).unwrap();
        let f = l.field();
        let rho = vec![Matrix::from_ints(f, &[&[1]]), Matrix::from_ints(f, &[&[0]])];
        assert!(matches!(make_module(&l, rho, false), Err(Error::ModuleAxiomViolation(0, 1))));
    }

    #[test]
    fn non_restricted_module_is_flagged() {
        // abelian(1) with x^[p] = 0 acting by the scalar 1: 1^p != 0
        let l = catalog::abelian(3, 1).unwrap();
        let rho = vec![Matrix::from_ints(l.field(), &[&[1]])];
        let m = make_module(&l, rho.clone(), false).unwrap();
        assert!(!m.is_restricted());
        assert!(matches!(make_module(&l, rho, true), Err(Error::NotRestricted)));
    }

    #[test]
    fn module_invariants_on_catalog() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for entry in catalog::standard_instances() {
            let l = &entry.algebra;
            let p = l.field().p() as u64;
            let mut modules = vec![trivial_module(l), adjoint_module(l)];
            modules.push(dual_module(&modules[1]));
            modules.extend(entry.modules.iter().map(|(_, m)| m.clone()));
            for m in &modules {
                for i in 0..l.dim() {
                    for j in i + 1..l.dim() {
                        assert!(m.bracket_residual(i, j).is_zero());
                    }
                }
                let dd = dual_module(&dual_module(m));
                assert_eq!(dd.rho(), m.rho());
                if m.is_restricted() {
                    for _ in 0..50 {
                        let x = l.random_element(&mut rng);
                        let lhs = m.action(&l.p_power(&x).unwrap()).unwrap();
                        assert_eq!(lhs, m.action(&x).unwrap().pow(p), "{}", l.name());
                    }
                }
            }
        }
    }

    #[test]
    fn invariants_of_adjoint_are_the_center() {
        let l = catalog::heisenberg(3, catalog::HeisenbergPmap::Zero).unwrap();
        assert_eq!(adjoint_module(&l).invariants_dim(), 1);
        assert_eq!(trivial_module(&l).invariants_dim(), 1);
    }
}
