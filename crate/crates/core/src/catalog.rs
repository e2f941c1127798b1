//! Built-in example algebras with their distinguished modules and tables of
//! expected results.

use serde::Serialize;

use crate::analysis::CdStarVerdict;
use crate::cohomology::binomial;
use crate::error::{Error, Result};
use crate::gf::{make_field, Elem, Field};
use crate::liep::{make_algebra, AlgebraData, LiePAlgebra};
use crate::linalg::Matrix;
use crate::rep::{make_named_module, RestrictedModule};

/// How an expected value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    /// Stated in the literature the engine reproduces.
    Published,
    /// Worked out by hand or by an independent method.
    Derived,
    /// Immediate from the definitions.
    Immediate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Quantity {
    /// `dim H^n(L, M)` for a named module (`K` is the trivial module).
    CeCohomology { module: String, degree: usize },
    /// `dim H^n_*(L, K) = dim Ext^n_{u(L)}(K, K)`.
    RestrictedCohomology { degree: usize },
    IsTorus,
    CdStar,
    /// Some basis element is p-nilpotent.
    NilpotentBasisElement,
    /// A two-dimensional subalgebra exists.
    TwoDimSubalgebra,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Dim(usize),
    Flag(bool),
    Verdict(CdStarVerdict),
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectedRow {
    pub quantity: Quantity,
    pub value: Value,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// Entry name such as `torus(2)` or `heisenberg-toral`.
    pub name: String,
    pub p: u32,
    pub k: usize,
    pub algebra: LiePAlgebra,
    pub modules: Vec<(String, RestrictedModule)>,
    pub expected: Vec<ExpectedRow>,
}

impl CatalogEntry {
    pub fn module(&self, name: &str) -> Option<&RestrictedModule> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn label(&self) -> String {
        self.algebra.name().to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeisenbergPmap {
    /// All basis p-powers vanish.
    Zero,
    /// `z^[p] = z`, the others vanish.
    Toral,
    /// `e^[p] = z`, the others vanish.
    NilE,
}

/// Entries that `catalog_get` understands; parameterized ones take `(d)`.
pub const ENTRY_NAMES: &[&str] = &[
    "abelian(d)",
    "nil(d)",
    "torus(d)",
    "nonabelian2",
    "heisenberg",
    "heisenberg-toral",
    "heisenberg-nil",
    "sl2",
    "witt",
    "nonsplit-simple3",
];

type Terms<'a> = &'a [(usize, i64)];

fn build(
    field: &Field,
    name: String,
    basis: &[&str],
    brackets: &[(usize, usize, Terms)],
    pmap: &[Terms],
) -> Result<LiePAlgebra> {
    let d = basis.len();
    let vec_of = |terms: Terms| {
        let mut v = vec![Elem::ZERO; d];
        for &(i, c) in terms {
            v[i] = field.add(v[i], field.from_int(c));
        }
        v
    };
    make_algebra(
        field,
        AlgebraData {
            name,
            basis: basis.iter().map(|s| s.to_string()).collect(),
            brackets: brackets.iter().map(|&(i, j, t)| (i, j, vec_of(t))).collect(),
            pmap: pmap.iter().map(|&t| vec_of(t)).collect(),
        },
    )
}

fn suffix(field: &Field) -> String {
    format!("/{field}")
}

fn abelian_with(field: &Field, name: &str, d: usize, pmap: impl Fn(usize) -> Vec<(usize, i64)>) -> Result<LiePAlgebra> {
    if d == 0 {
        return Err(Error::InvalidParams("dimension must be at least 1".into()));
    }
    let names: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let maps: Vec<Vec<(usize, i64)>> = (0..d).map(pmap).collect();
    let slices: Vec<Terms> = maps.iter().map(|m| m.as_slice()).collect();
    build(field, format!("{name}({d}){}", suffix(field)), &refs, &[], &slices)
}

/// Abelian, all p-powers zero.
pub fn abelian_over(field: &Field, d: usize) -> Result<LiePAlgebra> {
    abelian_with(field, "abelian", d, |_| vec![])
}

/// Abelian with a single p-nilpotent chain `x_i^[p] = x_{i+1}`, `x_d^[p] = 0`.
pub fn nil_over(field: &Field, d: usize) -> Result<LiePAlgebra> {
    abelian_with(field, "nil", d, |i| if i + 1 < d { vec![(i + 1, 1)] } else { vec![] })
}

/// Abelian with `x_i^[p] = x_i`.
pub fn torus_over(field: &Field, d: usize) -> Result<LiePAlgebra> {
    abelian_with(field, "torus", d, |i| vec![(i, 1)])
}

/// Basis `x, y` with `[x, y] = x`; the p-map is forced: `x^[p] = 0`, `y^[p] = y`.
pub fn nonabelian2_over(field: &Field) -> Result<LiePAlgebra> {
    build(
        field,
        format!("nonabelian2{}", suffix(field)),
        &["x", "y"],
        &[(0, 1, &[(0, 1)])],
        &[&[], &[(1, 1)]],
    )
}

pub fn heisenberg_over(field: &Field, pmap: HeisenbergPmap) -> Result<LiePAlgebra> {
    let (label, maps): (&str, [Terms; 3]) = match pmap {
        HeisenbergPmap::Zero => ("heisenberg", [&[], &[], &[]]),
        HeisenbergPmap::Toral => ("heisenberg-toral", [&[], &[], &[(2, 1)]]),
        HeisenbergPmap::NilE => ("heisenberg-nil", [&[(2, 1)], &[], &[]]),
    };
    build(
        field,
        format!("{label}{}", suffix(field)),
        &["e", "f", "z"],
        &[(0, 1, &[(2, 1)])],
        &maps,
    )
}

/// `sl_2` in the basis `e, h, f`: `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`;
/// `e^[p] = f^[p] = 0`, `h^[p] = h`. Needs `p > 2`.
pub fn sl2_over(field: &Field) -> Result<LiePAlgebra> {
    if field.p() == 2 {
        return Err(Error::InvalidParams("sl2 in this presentation needs p > 2".into()));
    }
    build(
        field,
        format!("sl2{}", suffix(field)),
        &["e", "h", "f"],
        &[(0, 1, &[(0, -2)]), (0, 2, &[(1, 1)]), (1, 2, &[(2, -2)])],
        &[&[], &[(1, 1)], &[]],
    )
}

/// The Witt algebra `W(1)`: basis `e_{-1}, ..., e_{p-2}` with
/// `[e_i, e_j] = (j - i) e_{i+j}`, `e_0^[p] = e_0` and the other basis p-powers
/// zero. Needs `p >= 5`.
pub fn witt_over(field: &Field) -> Result<LiePAlgebra> {
    let p = field.p() as i64;
    if p < 5 {
        return Err(Error::InvalidParams("witt needs p >= 5".into()));
    }
    let d = p as usize;
    let names: Vec<String> = (-1..p - 1).map(|i| format!("e{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut terms: Vec<(usize, usize, Vec<(usize, i64)>)> = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let (i, j) = (a as i64 - 1, b as i64 - 1);
            let s = i + j;
            if (-1..p - 1).contains(&s) && (j - i) % p != 0 {
                terms.push((a, b, vec![((s + 1) as usize, j - i)]));
            }
        }
    }
    let brackets: Vec<(usize, usize, Terms)> = terms.iter().map(|(a, b, t)| (*a, *b, t.as_slice())).collect();
    let mut pmap: Vec<Terms> = vec![&[]; d];
    let e0: [(usize, i64); 1] = [(1, 1)];
    pmap[1] = &e0;
    build(field, format!("witt{}", suffix(field)), &refs, &brackets, &pmap)
}

fn prime_field(p: u64) -> Result<Field> {
    make_field(p, 1)
}

pub fn abelian(p: u64, d: usize) -> Result<LiePAlgebra> {
    abelian_over(&prime_field(p)?, d)
}

pub fn nil(p: u64, d: usize) -> Result<LiePAlgebra> {
    nil_over(&prime_field(p)?, d)
}

pub fn torus(p: u64, d: usize) -> Result<LiePAlgebra> {
    torus_over(&prime_field(p)?, d)
}

pub fn nonabelian2(p: u64) -> Result<LiePAlgebra> {
    nonabelian2_over(&prime_field(p)?)
}

pub fn heisenberg(p: u64, pmap: HeisenbergPmap) -> Result<LiePAlgebra> {
    heisenberg_over(&prime_field(p)?, pmap)
}

pub fn sl2(p: u64) -> Result<LiePAlgebra> {
    sl2_over(&prime_field(p)?)
}

pub fn witt(p: u64) -> Result<LiePAlgebra> {
    witt_over(&prime_field(p)?)
}

/// The one-dimensional module `Kv` of the two-dimensional nonabelian algebra
/// with `x . v = 0`, `y . v = -v`.
pub fn kv_module(algebra: &LiePAlgebra) -> Result<RestrictedModule> {
    let f = algebra.field();
    make_named_module(
        algebra,
        "Kv",
        vec![Matrix::from_ints(f, &[&[0]]), Matrix::from_ints(f, &[&[-1]])],
        false,
    )
}

/// Splits `torus(2)` into `("torus", Some(2))`.
pub fn parse_entry_name(name: &str) -> Result<(String, Option<usize>)> {
    match name.split_once('(') {
        None => Ok((name.to_string(), None)),
        Some((base, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
            let d = inner
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParams(format!("bad size parameter in `{name}`")))?;
            Ok((base.to_string(), Some(d)))
        }
    }
}

/// Looks up an entry over GF(p^k). `param` is the size for the abelian
/// families (it may also be given inline, as in `torus(3)`).
pub fn catalog_get(name: &str, p: u64, k: usize, param: Option<usize>) -> Result<CatalogEntry> {
    let (base, inline) = parse_entry_name(name)?;
    let size = inline.or(param);
    let field = make_field(p, k)?;
    let sized = |what: &str| {
        size.ok_or_else(|| Error::InvalidParams(format!("{what} needs a dimension parameter")))
    };
    let (entry_name, algebra) = match base.as_str() {
        "abelian" => {
            let d = sized("abelian")?;
            (format!("abelian({d})"), abelian_over(&field, d)?)
        }
        "nil" => {
            let d = sized("nil")?;
            (format!("nil({d})"), nil_over(&field, d)?)
        }
        "torus" => {
            let d = sized("torus")?;
            (format!("torus({d})"), torus_over(&field, d)?)
        }
        "nonabelian2" => (base.clone(), nonabelian2_over(&field)?),
        "heisenberg" => (base.clone(), heisenberg_over(&field, HeisenbergPmap::Zero)?),
        "heisenberg-toral" => (base.clone(), heisenberg_over(&field, HeisenbergPmap::Toral)?),
        "heisenberg-nil" => (base.clone(), heisenberg_over(&field, HeisenbergPmap::NilE)?),
        "sl2" => (base.clone(), sl2_over(&field)?),
        "witt" => (base.clone(), witt_over(&field)?),
        "nonsplit-simple3" => {
            return Err(Error::InvalidParams(
                "the non-split three-dimensional simple algebra needs an infinite non-closed field; \
                 finite fields are not supported for this entry"
                    .into(),
            ))
        }
        _ => return Err(Error::UnknownEntry(name.to_string())),
    };
    let mut modules = Vec::new();
    if base == "nonabelian2" {
        modules.push(("Kv".to_string(), kv_module(&algebra)?));
    }
    let expected = catalog_expected_for(&base, size, &algebra);
    Ok(CatalogEntry {
        name: entry_name,
        p: p as u32,
        k,
        algebra,
        modules,
        expected,
    })
}

/// Expected-results table of an entry.
pub fn catalog_expected(name: &str, p: u64, k: usize, param: Option<usize>) -> Result<Vec<ExpectedRow>> {
    Ok(catalog_get(name, p, k, param)?.expected)
}

fn row(quantity: Quantity, value: Value, origin: Origin) -> ExpectedRow {
    ExpectedRow { quantity, value, origin }
}

fn ce(module: &str, degree: usize, dim: usize, origin: Origin) -> ExpectedRow {
    row(
        Quantity::CeCohomology {
            module: module.into(),
            degree,
        },
        Value::Dim(dim),
        origin,
    )
}

fn rc(degree: usize, dim: usize, origin: Origin) -> ExpectedRow {
    row(Quantity::RestrictedCohomology { degree }, Value::Dim(dim), origin)
}

fn catalog_expected_for(base: &str, size: Option<usize>, algebra: &LiePAlgebra) -> Vec<ExpectedRow> {
    use Origin::*;
    let p = algebra.field().p();
    let infinite = || row(Quantity::CdStar, Value::Verdict(CdStarVerdict::InfiniteEvidence), Derived);
    let not_torus = || row(Quantity::IsTorus, Value::Flag(false), Immediate);
    let mut rows = Vec::new();
    match base {
        "abelian" => {
            let d = size.unwrap_or(1);
            for n in 0..=d + 1 {
                rows.push(ce("K", n, binomial(d, n), Published));
            }
            // Kunneth over d copies of K[x]/(x^p): one class per degree each
            for n in 0..=6 {
                rows.push(rc(n, binomial(n + d - 1, d - 1), Derived));
            }
            rows.push(not_torus());
            rows.push(infinite());
        }
        "nil" => {
            let d = size.unwrap_or(1);
            for n in 0..=d + 1 {
                rows.push(ce("K", n, binomial(d, n), Published));
            }
            rows.push(not_torus());
            rows.push(infinite());
        }
        "torus" => {
            let d = size.unwrap_or(1);
            rows.push(rc(0, 1, Immediate));
            for n in 1..=6 {
                rows.push(rc(n, 0, Published));
            }
            rows.push(row(Quantity::IsTorus, Value::Flag(true), Published));
            rows.push(row(Quantity::CdStar, Value::Verdict(CdStarVerdict::Zero), Published));
            for n in 0..=d + 1 {
                rows.push(ce("K", n, binomial(d, n), Published));
            }
        }
        "nonabelian2" => {
            rows.push(ce("Kv", 2, 1, Published));
            rows.push(ce("K", 2, 0, Derived));
            rows.push(not_torus());
            rows.push(infinite());
            rows.push(row(Quantity::NilpotentBasisElement, Value::Flag(true), Immediate));
            rows.push(row(Quantity::TwoDimSubalgebra, Value::Flag(true), Immediate));
        }
        "heisenberg" | "heisenberg-toral" | "heisenberg-nil" => {
            for (n, dim) in [1, 2, 2, 1, 0].into_iter().enumerate() {
                rows.push(ce("K", n, dim, Derived));
            }
            if base == "heisenberg" && p == 2 {
                rows.push(rc(1, 2, Derived));
            }
            rows.push(not_torus());
            rows.push(infinite());
            rows.push(row(Quantity::TwoDimSubalgebra, Value::Flag(true), Immediate));
        }
        "sl2" => {
            rows.push(not_torus());
            rows.push(infinite());
            rows.push(row(Quantity::NilpotentBasisElement, Value::Flag(true), Derived));
            rows.push(row(Quantity::TwoDimSubalgebra, Value::Flag(true), Derived));
        }
        "witt" => {
            rows.push(not_torus());
            rows.push(infinite());
            rows.push(row(Quantity::NilpotentBasisElement, Value::Flag(true), Derived));
        }
        _ => {}
    }
    rows
}

/// The instance list the test and reproduction suites iterate over.
pub fn standard_instances() -> Vec<CatalogEntry> {
    let mut specs: Vec<(&str, u64, Option<usize>)> = Vec::new();
    for p in [2, 3, 5] {
        for d in 1..=3 {
            specs.push(("abelian", p, Some(d)));
            specs.push(("torus", p, Some(d)));
        }
        for d in 2..=3 {
            specs.push(("nil", p, Some(d)));
        }
        for name in ["nonabelian2", "heisenberg", "heisenberg-toral", "heisenberg-nil"] {
            specs.push((name, p, None));
        }
    }
    specs.push(("sl2", 3, None));
    specs.push(("sl2", 5, None));
    specs.push(("witt", 5, None));
    specs
        .into_iter()
        .map(|(name, p, d)| catalog_get(name, p, 1, d).expect("catalog entries validate"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonabelian2_ships_kv() {
        let e = catalog_get("nonabelian2", 2, 1, None).unwrap();
        assert_eq!(e.algebra.dim(), 2);
        let x = e.algebra.basis_element(0);
        let y = e.algebra.basis_element(1);
        assert_eq!(e.algebra.bracket(&x, &y).unwrap(), x);
        assert!(e.algebra.p_power(&x).unwrap().is_zero());
        assert_eq!(e.algebra.p_power(&y).unwrap(), y);
        assert!(e.module("Kv").is_some());
    }

    #[test]
    fn witt_at_five() {
        let e = catalog_get("witt", 5, 1, None).unwrap();
        let l = &e.algebra;
        assert_eq!(l.dim(), 5);
        assert_eq!(l.basis_names()[0], "e-1");
        assert_eq!(l.basis_names()[4], "e3");
        // [e_{-1}, e_2] = 3 e_1
        assert_eq!(l.structure_constants(0, 3), l.element_from_ints(&[0, 0, 3, 0, 0]).coords());
        // (ad e_i)^5 = ad(e_i^[5]), checked by matrix powers
        for i in 0..5 {
            let ad = l.adjoint_matrix(&l.basis_element(i)).unwrap();
            let ad_p = l.adjoint_matrix(&l.p_power(&l.basis_element(i)).unwrap()).unwrap();
            assert_eq!(ad.pow(5), ad_p);
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(catalog_get("sl2", 2, 1, None), Err(Error::InvalidParams(_))));
        assert!(matches!(catalog_get("witt", 3, 1, None), Err(Error::InvalidParams(_))));
        assert!(matches!(catalog_get("torus", 3, 1, None), Err(Error::InvalidParams(_))));
        assert!(matches!(catalog_get("bogus", 3, 1, None), Err(Error::UnknownEntry(_))));
        assert!(matches!(catalog_get("nonsplit-simple3", 3, 1, None), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn inline_parameter_and_extension_fields() {
        let e = catalog_get("torus(2)", 3, 2, None).unwrap();
        assert_eq!(e.algebra.dim(), 2);
        assert_eq!(e.algebra.field().order(), 9);
        assert_eq!(e.name, "torus(2)");
    }

    #[test]
    fn expected_tables() {
        let rows = catalog_expected("nonabelian2", 2, 1, None).unwrap();
        assert!(rows.iter().any(|r| r.quantity
            == Quantity::CeCohomology {
                module: "Kv".into(),
                degree: 2
            }
            && r.value == Value::Dim(1)
            && r.origin == Origin::Published));
        let rows = catalog_expected("abelian", 3, 1, Some(3)).unwrap();
        let dims: Vec<_> = rows
            .iter()
            .filter_map(|r| match (&r.quantity, &r.value) {
                (Quantity::CeCohomology { degree, .. }, Value::Dim(d)) => Some((*degree, *d)),
                _ => None,
            })
            .collect();
        assert_eq!(dims, vec![(0, 1), (1, 3), (2, 3), (3, 1), (4, 0)]);
        let rows = catalog_expected("heisenberg", 2, 1, None).unwrap();
        assert!(rows
            .iter()
            .any(|r| r.value == Value::Verdict(CdStarVerdict::InfiniteEvidence)));
    }

    #[test]
    fn every_standard_instance_validates() {
        for e in standard_instances() {
            assert!(e.algebra.verify_axioms().ok(), "{}", e.label());
        }
    }
}
