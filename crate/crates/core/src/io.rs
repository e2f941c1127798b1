//! JSON algebra and module files.
//!
//! Algebra: `{name, p, k, modulus, dim, basis, brackets: [{i, j, value}], pmap}`
//! where every field element is an array of `k` coefficients and `value`
//! lists `[e_i, e_j]` (for `i < j`) coordinate by coordinate.
//!
//! Module: `{algebra, dim, action}` where `algebra` is either an inline
//! algebra object or a catalog name such as `"sl2/GF(3)"` or `"torus(2)"`
//! (the latter with top-level `p` and optional `k`), and `action[i]` is the
//! matrix of `e_i`.

use serde::{Deserialize, Serialize};

use crate::catalog::catalog_get;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FieldSpec};
use crate::liep::{make_algebra, AlgebraData, LiePAlgebra};
use crate::linalg::Matrix;
use crate::rep::{make_named_module, RestrictedModule};

type ElemFile = Vec<u32>;
type VecFile = Vec<ElemFile>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketFile {
    pub i: usize,
    pub j: usize,
    pub value: VecFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub p: u32,
    pub k: usize,
    pub modulus: Vec<u32>,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketFile>,
    pub pmap: Vec<VecFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Name(String),
    Inline(Box<AlgebraFile>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub algebra: AlgebraRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub dim: usize,
    pub action: Vec<Vec<VecFile>>,
}

fn elem_in(field: &Field, c: &[u32]) -> Result<Elem> {
    field.from_coeffs(c)
}

fn vec_in(field: &Field, v: &[ElemFile], len: usize, what: &str) -> Result<Vec<Elem>> {
    if v.len() != len {
        return Err(Error::Parse(format!("{what}: expected {len} coordinates, found {}", v.len())));
    }
    v.iter().map(|c| elem_in(field, c)).collect()
}

fn vec_out(field: &Field, v: &[Elem]) -> VecFile {
    v.iter().map(|&c| field.coeffs(c)).collect()
}

pub fn algebra_file(l: &LiePAlgebra) -> AlgebraFile {
    let f = l.field();
    let spec = f.spec();
    AlgebraFile {
        name: l.name().to_string(),
        p: spec.p,
        k: spec.k,
        modulus: spec.modulus,
        dim: l.dim(),
        basis: l.basis_names().to_vec(),
        brackets: l
            .bracket_entries()
            .into_iter()
            .map(|(i, j, v)| BracketFile { i, j, value: vec_out(f, &v) })
            .collect(),
        pmap: (0..l.dim()).map(|i| vec_out(f, l.pmap_basis(i))).collect(),
    }
}

/// The field and raw data of a file, before axiom checks.
pub fn algebra_data(file: &AlgebraFile) -> Result<(Field, AlgebraData)> {
    let field = Field::from_spec(&FieldSpec {
        p: file.p,
        k: file.k,
        modulus: file.modulus.clone(),
    })?;
    let d = file.dim;
    if file.basis.len() != d {
        return Err(Error::Parse(format!("dim is {d} but {} basis names given", file.basis.len())));
    }
    if file.pmap.len() != d {
        return Err(Error::Parse(format!("pmap must have {d} entries")));
    }
    let mut brackets = Vec::with_capacity(file.brackets.len());
    for b in &file.brackets {
        if b.i >= b.j || b.j >= d {
            return Err(Error::Parse(format!("bracket indices ({}, {}) must satisfy i < j < {d}", b.i, b.j)));
        }
        brackets.push((b.i, b.j, vec_in(&field, &b.value, d, "bracket value")?));
    }
    let pmap = file
        .pmap
        .iter()
        .map(|v| vec_in(&field, v, d, "pmap entry"))
        .collect::<Result<_>>()?;
    let data = AlgebraData {
        name: file.name.clone(),
        basis: file.basis.clone(),
        brackets,
        pmap,
    };
    Ok((field, data))
}

pub fn algebra_from_file(file: &AlgebraFile) -> Result<LiePAlgebra> {
    let (field, data) = algebra_data(file)?;
    make_algebra(&field, data)
}

pub fn parse_algebra_file(json: &str) -> Result<AlgebraFile> {
    Ok(serde_json::from_str(json)?)
}

pub fn parse_algebra(json: &str) -> Result<LiePAlgebra> {
    algebra_from_file(&parse_algebra_file(json)?)
}

pub fn algebra_to_json(l: &LiePAlgebra) -> String {
    serde_json::to_string_pretty(&algebra_file(l)).expect("serializable")
}

/// Splits `"sl2/GF(3^2)"` into `("sl2", Some((3, 2)))`.
fn split_field_suffix(name: &str) -> Result<(&str, Option<(u32, usize)>)> {
    let Some((base, field)) = name.rsplit_once('/') else {
        return Ok((name, None));
    };
    let inner = field
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad field suffix `{field}`")))?;
    let bad = || Error::Parse(format!("bad field suffix `{field}`"));
    let (p, k) = match inner.split_once('^') {
        Some((p, k)) => (p.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?),
        None => (inner.parse().map_err(|_| bad())?, 1),
    };
    Ok((base, Some((p, k))))
}

/// Resolves a catalog reference; a `/GF(..)` suffix in `name` takes
/// precedence over `p` and `k`.
pub fn catalog_algebra(name: &str, p: Option<u32>, k: Option<usize>) -> Result<LiePAlgebra> {
    let (base, field) = split_field_suffix(name)?;
    let (p, k) = match field {
        Some(pk) => pk,
        None => (
            p.ok_or_else(|| Error::Parse(format!("catalog reference `{name}` needs a prime p")))?,
            k.unwrap_or(1),
        ),
    };
    Ok(catalog_get(base, p as u64, k, None)?.algebra)
}

pub fn module_from_file(file: &ModuleFile) -> Result<RestrictedModule> {
    let algebra = match &file.algebra {
        AlgebraRef::Name(name) => catalog_algebra(name, file.p, file.k)?,
        AlgebraRef::Inline(a) => algebra_from_file(a)?,
    };
    let f = algebra.field();
    if file.action.len() != algebra.dim() {
        return Err(Error::Parse(format!(
            "action must list {} matrices, found {}",
            algebra.dim(),
            file.action.len()
        )));
    }
    let n = file.dim;
    let rho = file
        .action
        .iter()
        .map(|m| {
            if m.len() != n {
                return Err(Error::Parse(format!("action matrices must have {n} rows")));
            }
            let rows: Vec<Vec<Elem>> = m
                .iter()
                .map(|r| vec_in(f, r, n, "action row"))
                .collect::<Result<_>>()?;
            Matrix::from_rows(f, &rows)
        })
        .collect::<Result<Vec<_>>>()?;
    make_named_module(&algebra, file.name.clone().unwrap_or_else(|| "M".into()), rho, false)
}

pub fn module_file(m: &RestrictedModule) -> ModuleFile {
    let f = m.algebra().field();
    ModuleFile {
        algebra: AlgebraRef::Inline(Box::new(algebra_file(m.algebra()))),
        name: Some(m.name().to_string()),
        p: None,
        k: None,
        dim: m.dim(),
        action: m
            .rho()
            .iter()
            .map(|a| (0..a.rows()).map(|r| vec_out(f, a.row(r))).collect())
            .collect(),
    }
}

pub fn parse_module(json: &str) -> Result<RestrictedModule> {
    let file: ModuleFile = serde_json::from_str(json)?;
    module_from_file(&file)
}

pub fn module_to_json(m: &RestrictedModule) -> String {
    serde_json::to_string_pretty(&module_file(m)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, standard_instances};
    use crate::gf::make_field;
    use crate::rep::adjoint_module;

    #[test]
    fn algebra_round_trip() {
        for entry in standard_instances() {
            let l = &entry.algebra;
            let json = algebra_to_json(l);
            let back = parse_algebra(&json).unwrap();
            assert_eq!(back.name(), l.name());
            assert_eq!(algebra_file(&back), algebra_file(l));
        }
        let l = catalog::sl2_over(&make_field(3, 2).unwrap()).unwrap();
        let file = algebra_file(&l);
        assert_eq!(file.modulus, vec![1, 0, 1]);
        assert!(file.pmap.iter().flatten().all(|c| c.len() == 2));
        assert_eq!(algebra_file(&parse_algebra(&algebra_to_json(&l)).unwrap()), file);
    }

    #[test]
    fn sl2_file_layout() {
        let file = algebra_file(&catalog::sl2(3).unwrap());
        assert_eq!(file.dim, 3);
        assert_eq!(file.brackets[0], BracketFile { i: 0, j: 1, value: vec![vec![1], vec![0], vec![0]] });
        assert_eq!(file.pmap[1], vec![vec![0], vec![1], vec![0]]);
    }

    #[test]
    fn handwritten_algebra() {
        let json = r#"{"name": "nonabelian2", "p": 2, "k": 1, "modulus": [0, 1], "dim": 2,
            "basis": ["x", "y"], "brackets": [{"i": 0, "j": 1, "value": [[1], [0]]}],
            "pmap": [[[0], [0]], [[0], [1]]]}"#;
        let l = parse_algebra(json).unwrap();
        assert_eq!(l.bracket(&l.basis_element(0), &l.basis_element(1)).unwrap(), l.basis_element(0));
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(parse_algebra("{"), Err(Error::Json(_))));
        let bad_index = r#"{"name": "a", "p": 2, "k": 1, "modulus": [0, 1], "dim": 2, "basis": ["x", "y"],
            "brackets": [{"i": 1, "j": 0, "value": [[1], [0]]}], "pmap": [[[0], [0]], [[0], [0]]]}"#;
        assert!(matches!(parse_algebra(bad_index), Err(Error::Parse(_))));
        let bad_coeff = r#"{"name": "a", "p": 2, "k": 1, "modulus": [0, 1], "dim": 1, "basis": ["x"],
            "pmap": [[[5]]]}"#;
        assert!(matches!(parse_algebra(bad_coeff), Err(Error::Parse(_))));
        let jacobi_ok_but_pmap_bad = r#"{"name": "a", "p": 2, "k": 1, "modulus": [0, 1], "dim": 2,
            "basis": ["x", "y"], "brackets": [{"i": 0, "j": 1, "value": [[1], [0]]}],
            "pmap": [[[0], [0]], [[0], [0]]]}"#;
        assert!(matches!(parse_algebra(jacobi_ok_but_pmap_bad), Err(Error::AxiomViolation(_))));
    }

    #[test]
    fn module_by_name_and_inline() {
        let json = r#"{"algebra": "nonabelian2", "p": 3, "name": "Kv", "dim": 1, "action": [[[[0]]], [[[2]]]]}"#;
        let m = parse_module(json).unwrap();
        assert_eq!(m.name(), "Kv");
        assert!(m.is_restricted());
        assert_eq!(m.invariants_dim(), 0);
        let json = r#"{"algebra": "sl2/GF(3)", "dim": 1, "action": [[[[0]]], [[[0]]], [[[0]]]]}"#;
        assert_eq!(parse_module(json).unwrap().invariants_dim(), 1);
        let ad = adjoint_module(&catalog::sl2(5).unwrap());
        let back = parse_module(&module_to_json(&ad)).unwrap();
        assert_eq!(back.rho(), ad.rho());
        let bad = r#"{"algebra": "nonabelian2", "dim": 1, "action": [[[[0]]], [[[2]]]]}"#;
        assert!(matches!(parse_module(bad), Err(Error::Parse(_))));
        let bracket_violation = r#"{"algebra": "nonabelian2/GF(3)", "dim": 1, "action": [[[[1]]], [[[0]]]]}"#;
        assert!(matches!(parse_module(bracket_violation), Err(Error::ModuleAxiomViolation(..))));
    }

    #[test]
    fn field_suffixes() {
        assert_eq!(split_field_suffix("sl2/GF(3)").unwrap(), ("sl2", Some((3, 1))));
        assert_eq!(split_field_suffix("torus(2)/GF(3^2)").unwrap(), ("torus(2)", Some((3, 2))));
        assert_eq!(split_field_suffix("witt").unwrap(), ("witt", None));
        assert!(split_field_suffix("sl2/F3").is_err());
        assert_eq!(catalog_algebra("torus(2)/GF(2^2)", None, None).unwrap().dim(), 2);
    }
}
