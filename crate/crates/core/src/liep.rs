//! Finite-dimensional Lie p-algebras given by structure constants and the
//! p-powers of a basis.
//!
//! The p-map of an arbitrary element is produced from the basis data with
//! Jacobson's formula `(u + v)^[p] = u^[p] + v^[p] + sum_i s_i(u, v)`, adding one
//! basis summand at a time in basis order. `s_i` is read off from
//! `(ad(t x + y))^(p-1)(x)` by evaluating at the `p` prime-field scalars and
//! interpolating coordinatewise.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{interpolate, Elem, Embedding, Field, Poly};
use crate::linalg::{add_vec, axpy, is_zero_vec, scale_vec, span_basis, sub_vec, Matrix, SpanBasis};

/// A vector of coordinates in the basis of some algebra, over `field`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieElement {
    field: Field,
    coords: Vec<Elem>,
}

impl LieElement {
    pub fn new(field: &Field, coords: Vec<Elem>) -> LieElement {
        LieElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn from_ints(field: &Field, coords: &[i64]) -> LieElement {
        LieElement::new(field, coords.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Elem> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        LieElement::new(&self.field, add_vec(&self.field, &self.coords, &other.coords))
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        LieElement::new(&self.field, sub_vec(&self.field, &self.coords, &other.coords))
    }

    pub fn scale(&self, a: Elem) -> LieElement {
        LieElement::new(&self.field, scale_vec(&self.field, &self.coords, a))
    }

    /// Image under a field inclusion.
    pub fn embed(&self, embedding: &Embedding) -> LieElement {
        LieElement::new(embedding.target(), embedding.map_vec(&self.coords))
    }
}

impl Serialize for LieElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<Vec<u32>> = self.coords.iter().map(|&c| self.field.coeffs(c)).collect();
        parts.serialize(s)
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|&c| self.field.format(c)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Which axiom failed, and on which basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub jacobi_ok: bool,
    pub antisym_ok: bool,
    pub ad_compat_ok: bool,
    pub semilinear_ok: bool,
    pub jacobson_ok: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn flag(&mut self, axiom: &str, witness: Vec<usize>) {
        match axiom {
            "jacobi" => self.jacobi_ok = false,
            "antisymmetry" => self.antisym_ok = false,
            "ad-compatibility" => self.ad_compat_ok = false,
            "semilinearity" => self.semilinear_ok = false,
            _ => self.jacobson_ok = false,
        }
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            witness,
        });
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "all axioms hold");
        }
        let v: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} at {:?}", v.axiom, v.witness))
            .collect();
        write!(f, "{}", v.join("; "))
    }
}

/// Raw construction data: `[e_i, e_j]` for listed pairs (unlisted brackets are
/// zero) and `e_i^[p]` for every basis element.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub name: String,
    pub basis: Vec<String>,
    pub brackets: Vec<(usize, usize, Vec<Elem>)>,
    pub pmap: Vec<Vec<Elem>>,
}

#[derive(Clone)]
pub struct LiePAlgebra {
    name: String,
    field: Field,
    basis: Vec<String>,
    /// `table[i * dim + j]` holds `[e_i, e_j]`.
    table: Vec<Vec<Elem>>,
    pmap: Vec<Vec<Elem>>,
}

/// Validates the data and builds the algebra; rejects on any axiom violation.
pub fn make_algebra(field: &Field, data: AlgebraData) -> Result<LiePAlgebra> {
    let (algebra, mut report) = LiePAlgebra::assemble(field, data)?;
    if report.ok() {
        report = algebra.verify_axioms();
    }
    if report.ok() {
        Ok(algebra)
    } else {
        Err(Error::AxiomViolation(Box::new(report)))
    }
}

impl LiePAlgebra {
    fn assemble(field: &Field, data: AlgebraData) -> Result<(LiePAlgebra, AxiomReport)> {
        let d = data.basis.len();
        let mut report = AxiomReport {
            jacobi_ok: true,
            antisym_ok: true,
            ad_compat_ok: true,
            semilinear_ok: true,
            jacobson_ok: true,
            violations: Vec::new(),
        };
        if data.pmap.len() != d || data.pmap.iter().any(|v| v.len() != d) {
            return Err(Error::Shape(format!("p-map must list {d} vectors of length {d}")));
        }
        let mut table = vec![vec![Elem::ZERO; d]; d * d];
        let mut seen = vec![false; d * d];
        for (i, j, value) in data.brackets {
            if i >= d || j >= d || value.len() != d {
                return Err(Error::Shape(format!("bracket entry ({i}, {j}) out of range")));
            }
            if value.iter().any(|&c| !field.contains(c)) {
                return Err(Error::Parse("coefficient outside the field".into()));
            }
            if i == j {
                if !is_zero_vec(&value) {
                    report.flag("antisymmetry", vec![i, j]);
                }
                continue;
            }
            let (a, b, v) = if i < j {
                (i, j, value)
            } else {
                (j, i, scale_vec(field, &value, field.neg(Elem::ONE)))
            };
            if seen[a * d + b] && table[a * d + b] != v {
                report.flag("antisymmetry", vec![a, b]);
                continue;
            }
            seen[a * d + b] = true;
            table[b * d + a] = scale_vec(field, &v, field.neg(Elem::ONE));
            table[a * d + b] = v;
        }
        let algebra = LiePAlgebra {
            name: data.name,
            field: field.clone(),
            basis: data.basis,
            table,
            pmap: data.pmap,
        };
        Ok((algebra, report))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> LiePAlgebra {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[Elem] {
        &self.table[i * self.dim() + j]
    }

    /// `e_i^[p]` as a coordinate vector.
    pub fn pmap_basis(&self, i: usize) -> &[Elem] {
        &self.pmap[i]
    }

    pub fn zero(&self) -> LieElement {
        LieElement::new(&self.field, vec![Elem::ZERO; self.dim()])
    }

    pub fn basis_element(&self, i: usize) -> LieElement {
        let mut v = vec![Elem::ZERO; self.dim()];
        v[i] = Elem::ONE;
        LieElement::new(&self.field, v)
    }

    pub fn element(&self, coords: Vec<Elem>) -> Result<LieElement> {
        if coords.len() != self.dim() {
            return Err(Error::Shape(format!("expected {} coordinates", self.dim())));
        }
        Ok(LieElement::new(&self.field, coords))
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> LieElement {
        assert_eq!(coords.len(), self.dim());
        LieElement::from_ints(&self.field, coords)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> LieElement {
        LieElement::new(
            &self.field,
            (0..self.dim()).map(|_| self.field.random(rng)).collect(),
        )
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| is_zero_vec(v))
    }

    fn check(&self, x: &LieElement) -> Result<()> {
        if x.field != self.field {
            return Err(Error::FieldMismatch);
        }
        if x.dim() != self.dim() {
            return Err(Error::Shape(format!("expected {} coordinates", self.dim())));
        }
        Ok(())
    }

    pub(crate) fn bracket_raw(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let d = self.dim();
        let mut out = vec![Elem::ZERO; d];
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                axpy(f, &mut out, f.mul(a, b), &self.table[i * d + j]);
            }
        }
        out
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(LieElement::new(&self.field, self.bracket_raw(&x.coords, &y.coords)))
    }

    /// Matrix of `ad x = [x, -]`; column `j` holds `[x, e_j]`.
    pub fn adjoint_matrix(&self, x: &LieElement) -> Result<Matrix> {
        self.check(x)?;
        Ok(self.adjoint_raw(&x.coords))
    }

    pub(crate) fn adjoint_raw(&self, x: &[Elem]) -> Matrix {
        let d = self.dim();
        let columns: Vec<Vec<Elem>> = (0..d)
            .map(|j| {
                let mut e = vec![Elem::ZERO; d];
                e[j] = Elem::ONE;
                self.bracket_raw(x, &e)
            })
            .collect();
        Matrix::from_columns(&self.field, d, &columns)
    }

    /// `[s_1(x, y), ..., s_{p-1}(x, y)]`.
    pub(crate) fn jacobson_terms_raw(&self, x: &[Elem], y: &[Elem]) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let p = f.p() as usize;
        let d = self.dim();
        // (ad(t x + y))^(p-1)(x) at t = 0, 1, ..., p-1
        let samples: Vec<(Elem, Vec<Elem>)> = (0..p)
            .map(|t| {
                let t = f.from_int(t as i64);
                let z = add_vec(f, &scale_vec(f, x, t), y);
                let mut w = x.to_vec();
                for _ in 0..p - 1 {
                    w = self.bracket_raw(&z, &w);
                }
                (t, w)
            })
            .collect();
        let mut terms = vec![vec![Elem::ZERO; d]; p - 1];
        for c in 0..d {
            let points: Vec<(Elem, Elem)> = samples.iter().map(|(t, w)| (*t, w[c])).collect();
            let poly = interpolate(f, &points).expect("distinct prime-field abscissas");
            for (i, term) in terms.iter_mut().enumerate() {
                // i s_i = coefficient of t^(i-1)
                let inv_i = f.inv(f.from_int(i as i64 + 1)).expect("i < p");
                term[c] = f.mul(poly.coeff(i), inv_i);
            }
        }
        terms
    }

    /// `s_i(x, y)` for `1 <= i <= p - 1`.
    pub fn jacobson_s(&self, i: usize, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        self.check(x)?;
        self.check(y)?;
        let p = self.field.p() as usize;
        if i == 0 || i >= p {
            return Err(Error::InvalidParams(format!("s_i needs 1 <= i <= {}", p - 1)));
        }
        let terms = self.jacobson_terms_raw(&x.coords, &y.coords);
        Ok(LieElement::new(&self.field, terms[i - 1].clone()))
    }

    /// `sum_i s_i(x, y)`.
    pub fn jacobson_sum(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        self.check(x)?;
        self.check(y)?;
        let f = &self.field;
        let total = self
            .jacobson_terms_raw(&x.coords, &y.coords)
            .into_iter()
            .fold(vec![Elem::ZERO; self.dim()], |acc, s| add_vec(f, &acc, &s));
        Ok(LieElement::new(f, total))
    }

    pub(crate) fn p_power_raw(&self, x: &[Elem]) -> Vec<Elem> {
        self.p_power_ordered(x, 0..self.dim())
    }

    fn p_power_ordered(&self, x: &[Elem], order: impl Iterator<Item = usize>) -> Vec<Elem> {
        let f = &self.field;
        let d = self.dim();
        let p = f.p() as u64;
        let mut acc: Option<(Vec<Elem>, Vec<Elem>)> = None;
        for i in order {
            let a = x[i];
            if a.is_zero() {
                continue;
            }
            let mut v = vec![Elem::ZERO; d];
            v[i] = a;
            let v_pow = scale_vec(f, &self.pmap[i], f.pow(a, p));
            acc = Some(match acc {
                None => (v, v_pow),
                Some((u, u_pow)) => {
                    let mut pow = add_vec(f, &u_pow, &v_pow);
                    for s in self.jacobson_terms_raw(&u, &v) {
                        pow = add_vec(f, &pow, &s);
                    }
                    (add_vec(f, &u, &v), pow)
                }
            });
        }
        acc.map(|(_, pow)| pow).unwrap_or_else(|| vec![Elem::ZERO; d])
    }

    pub fn p_power(&self, x: &LieElement) -> Result<LieElement> {
        self.check(x)?;
        Ok(LieElement::new(&self.field, self.p_power_raw(&x.coords)))
    }

    pub fn p_power_iter(&self, x: &LieElement, n: usize) -> Result<LieElement> {
        self.check(x)?;
        let mut v = x.coords.clone();
        for _ in 0..n {
            if is_zero_vec(&v) {
                break;
            }
            v = self.p_power_raw(&v);
        }
        Ok(LieElement::new(&self.field, v))
    }

    /// Basis (echelon form) of the subalgebra generated by `gens`, closed also
    /// under the p-map when `with_pmap`.
    pub fn subalgebra_closure(&self, gens: &[LieElement], with_pmap: bool) -> Result<Vec<LieElement>> {
        for g in gens {
            self.check(g)?;
        }
        let mut span = SpanBasis::new(&self.field, self.dim());
        let mut members: Vec<Vec<Elem>> = Vec::new();
        for g in gens {
            if span.insert(&g.coords) {
                members.push(g.coords.clone());
            }
        }
        let mut i = 0;
        while i < members.len() {
            let mut fresh = Vec::new();
            for j in 0..i {
                fresh.push(self.bracket_raw(&members[i], &members[j]));
            }
            if with_pmap {
                fresh.push(self.p_power_raw(&members[i]));
            }
            for v in fresh {
                if span.insert(&v) {
                    members.push(v);
                }
            }
            i += 1;
        }
        Ok(span_basis(&self.field, self.dim(), &members)
            .into_iter()
            .map(|v| LieElement::new(&self.field, v))
            .collect())
    }

    /// The algebra spanned by `basis`, which must be closed under bracket and
    /// p-map, written in that basis.
    pub fn subalgebra(&self, basis: &[LieElement], name: impl Into<String>) -> Result<LiePAlgebra> {
        for b in basis {
            self.check(b)?;
        }
        let m = basis.len();
        let columns: Vec<Vec<Elem>> = basis.iter().map(|b| b.coords.clone()).collect();
        let frame = Matrix::from_columns(&self.field, self.dim(), &columns);
        if frame.rank() != m {
            return Err(Error::DependentPair);
        }
        let mut brackets = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let v = self.bracket_raw(&columns[i], &columns[j]);
                if !is_zero_vec(&v) {
                    brackets.push((i, j, frame.solve(&v)?));
                }
            }
        }
        let pmap = columns
            .iter()
            .map(|b| frame.solve(&self.p_power_raw(b)))
            .collect::<Result<Vec<_>>>()?;
        make_algebra(
            &self.field,
            AlgebraData {
                name: name.into(),
                basis: (0..m).map(|i| format!("b{i}")).collect(),
                brackets,
                pmap,
            },
        )
    }

    /// The same algebra with scalars extended along `embedding`.
    pub fn base_change(&self, embedding: &Embedding) -> Result<LiePAlgebra> {
        if embedding.base() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(LiePAlgebra {
            name: self.name.clone(),
            field: embedding.target().clone(),
            basis: self.basis.clone(),
            table: self.table.iter().map(|v| embedding.map_vec(v)).collect(),
            pmap: self.pmap.iter().map(|v| embedding.map_vec(v)).collect(),
        })
    }

    /// Lists the stored brackets `[e_i, e_j]`, `i < j`, that are nonzero.
    pub fn bracket_entries(&self) -> Vec<(usize, usize, Vec<Elem>)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let v = &self.table[i * d + j];
                if !is_zero_vec(v) {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn data(&self) -> AlgebraData {
        AlgebraData {
            name: self.name.clone(),
            basis: self.basis.clone(),
            brackets: self.bracket_entries(),
            pmap: self.pmap.clone(),
        }
    }

    pub fn verify_axioms(&self) -> AxiomReport {
        let f = &self.field;
        let d = self.dim();
        let p = f.p() as u64;
        let mut report = AxiomReport {
            jacobi_ok: true,
            antisym_ok: true,
            ad_compat_ok: true,
            semilinear_ok: true,
            jacobson_ok: true,
            violations: Vec::new(),
        };
        for i in 0..d {
            for j in 0..d {
                let lhs = &self.table[i * d + j];
                let rhs = scale_vec(f, &self.table[j * d + i], f.neg(Elem::ONE));
                if (i == j && !is_zero_vec(lhs)) || (i < j && *lhs != rhs) {
                    report.flag("antisymmetry", vec![i, j]);
                }
            }
        }
        let basis: Vec<Vec<Elem>> = (0..d).map(|i| self.basis_element(i).coords).collect();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let a = self.bracket_raw(&basis[i], &self.table[j * d + k]);
                    let b = self.bracket_raw(&basis[j], &self.table[k * d + i]);
                    let c = self.bracket_raw(&basis[k], &self.table[i * d + j]);
                    if !is_zero_vec(&add_vec(f, &add_vec(f, &a, &b), &c)) {
                        report.flag("jacobi", vec![i, j, k]);
                    }
                }
            }
        }
        if !report.ok() {
            return report;
        }
        let ads: Vec<Matrix> = basis.iter().map(|b| self.adjoint_raw(b)).collect();
        for i in 0..d {
            if self.adjoint_raw(&self.pmap[i]) != ads[i].pow(p) {
                report.flag("ad-compatibility", vec![i]);
            }
        }
        if !report.ok() {
            return report;
        }
        let g = if f.is_prime_field() { f.from_int(2) } else { f.generator() };
        for (i, b) in basis.iter().enumerate() {
            let scaled = self.p_power_raw(&scale_vec(f, b, g));
            if scaled != scale_vec(f, &self.pmap[i], f.pow(g, p)) {
                report.flag("semilinearity", vec![i]);
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                let sum = add_vec(f, &basis[i], &basis[j]);
                let forward = self.p_power_raw(&sum);
                let backward = self.p_power_ordered(&sum, (0..d).rev());
                if forward != backward || self.adjoint_raw(&forward) != self.adjoint_raw(&sum).pow(p) {
                    report.flag("jacobson", vec![i, j]);
                }
            }
        }
        report
    }

    /// The least relation `x^[p]^m = sum_{j<m} c_j x^[p]^j`, returned as the
    /// p-polynomial `t^(p^m) - sum c_j t^(p^j)`.
    pub fn minimal_p_polynomial(&self, x: &LieElement) -> Result<PRelation> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let f = &self.field;
        let mut powers = vec![x.coords.clone()];
        loop {
            let next = self.p_power_raw(powers.last().expect("nonempty"));
            let frame = Matrix::from_columns(f, self.dim(), &powers);
            match frame.solve(&next) {
                Ok(c) => {
                    let mut coeffs: Vec<Elem> = c.iter().map(|&a| f.neg(a)).collect();
                    coeffs.push(Elem::ONE);
                    return Ok(PRelation::new(f, coeffs));
                }
                Err(Error::NoSolution) => powers.push(next),
                Err(e) => return Err(e),
            }
        }
    }
}

/// A p-polynomial `f(t) = sum_j c_j t^(p^j)`, stored by its coefficients
/// `c_0, ..., c_m` with `c_m = 1`.
#[derive(Clone, Debug)]
pub struct PRelation {
    pub coeffs: Vec<Elem>,
    pub poly: Poly,
}

impl PRelation {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> PRelation {
        let p = field.p() as usize;
        let m = coeffs.len() - 1;
        let mut dense = vec![Elem::ZERO; p.pow(m as u32) + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            dense[p.pow(j as u32)] = c;
        }
        PRelation {
            poly: Poly::new(field, dense),
            coeffs,
        }
    }

    /// Number of p-power steps `m`.
    pub fn height(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Whether the coefficient of `t` vanishes (equivalently `f' = 0`).
    pub fn has_zero_linear_term(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// `sum_j c_j x^[p]^j` in `algebra`.
    pub fn apply(&self, algebra: &LiePAlgebra, x: &LieElement) -> Result<LieElement> {
        let f = algebra.field();
        let mut acc = vec![Elem::ZERO; algebra.dim()];
        let mut power = x.coords().to_vec();
        for (j, &c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                power = algebra.p_power_raw(&power);
            }
            axpy(f, &mut acc, c, &power);
        }
        Ok(LieElement::new(f, acc))
    }
}

/// Block-diagonal sum of two algebras over the same field.
pub fn direct_sum(a: &LiePAlgebra, b: &LiePAlgebra) -> Result<LiePAlgebra> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let (da, db) = (a.dim(), b.dim());
    let n = da + db;
    let pad = |v: &[Elem], offset: usize| {
        let mut out = vec![Elem::ZERO; n];
        out[offset..offset + v.len()].copy_from_slice(v);
        out
    };
    let mut brackets: Vec<(usize, usize, Vec<Elem>)> = a
        .bracket_entries()
        .into_iter()
        .map(|(i, j, v)| (i, j, pad(&v, 0)))
        .collect();
    brackets.extend(
        b.bracket_entries()
            .into_iter()
            .map(|(i, j, v)| (i + da, j + da, pad(&v, da))),
    );
    let mut pmap: Vec<Vec<Elem>> = a.pmap.iter().map(|v| pad(v, 0)).collect();
    pmap.extend(b.pmap.iter().map(|v| pad(v, da)));
    let mut basis = a.basis.clone();
    for name in &b.basis {
        let mut candidate = name.clone();
        while basis.contains(&candidate) {
            candidate.push('\'');
        }
        basis.push(candidate);
    }
    make_algebra(
        &a.field,
        AlgebraData {
            name: format!("{}+{}", a.name, b.name),
            basis,
            brackets,
            pmap,
        },
    )
}

impl fmt::Debug for LiePAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {} over {})", self.name, self.dim(), self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, HeisenbergPmap};
    use crate::gf::make_field;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sl2_matrix(l: &LiePAlgebra, x: &LieElement) -> Matrix {
        // x = a e + b h + c f  ->  [[b, a], [c, -b]]
        let f = l.field();
        let (a, b, c) = (x.coords()[0], x.coords()[1], x.coords()[2]);
        Matrix::from_rows(f, &[vec![b, a], vec![c, f.neg(b)]]).unwrap()
    }

    fn sl2_coords(m: &Matrix) -> Vec<Elem> {
        vec![m.get(0, 1), m.get(0, 0), m.get(1, 0)]
    }

    #[test]
    fn sl2_gf3_brackets_and_pmap() {
        let l = catalog::sl2(3).unwrap();
        let e = l.basis_element(0);
        let h = l.basis_element(1);
        let f = l.basis_element(2);
        assert_eq!(l.bracket(&e, &f).unwrap(), h);
        assert_eq!(l.bracket(&h, &e).unwrap(), e.scale(l.field().from_int(2)));
        let ef = e.add(&f);
        assert_eq!(l.p_power(&ef).unwrap(), ef);
        let ad_h = l.adjoint_matrix(&h).unwrap();
        assert_eq!(ad_h, Matrix::from_ints(l.field(), &[&[2, 0, 0], &[0, 0, 0], &[0, 0, 1]]));
    }

    #[test]
    fn sl2_pmap_matches_matrix_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [3u64, 5, 7] {
            let l = catalog::sl2(p).unwrap();
            for _ in 0..200 {
                let x = l.random_element(&mut rng);
                let oracle = sl2_coords(&sl2_matrix(&l, &x).pow(p));
                assert_eq!(l.p_power(&x).unwrap().coords(), oracle.as_slice());
            }
        }
    }

    #[test]
    fn sl2_over_extension_matches_matrix_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let field = make_field(3, 2).unwrap();
        let l = catalog::sl2_over(&field).unwrap();
        for _ in 0..200 {
            let x = l.random_element(&mut rng);
            let oracle = sl2_coords(&sl2_matrix(&l, &x).pow(3));
            assert_eq!(l.p_power(&x).unwrap().coords(), oracle.as_slice());
        }
    }

    fn witt_operator(l: &LiePAlgebra, x: &LieElement) -> Matrix {
        // e_i = X^(i+1) d/dX on K[X]/(X^p), basis 1, X, ..., X^(p-1)
        let f = l.field();
        let p = f.p() as usize;
        let mut m = Matrix::zeros(f, p, p);
        for (idx, &c) in x.coords().iter().enumerate() {
            for n in 1..p {
                let target = n - 1 + idx;
                if target < p {
                    let v = f.mul_add(m.get(target, n), c, f.from_int(n as i64));
                    m.set(target, n, v);
                }
            }
        }
        m
    }

    #[test]
    fn witt_pmap_matches_operator_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let l = catalog::witt(5).unwrap();
        for _ in 0..100 {
            let x = l.random_element(&mut rng);
            let d = witt_operator(&l, &x).pow(5);
            // a derivation is determined by its value on X
            let coords: Vec<Elem> = (0..5).map(|i| d.get(i, 1)).collect();
            assert_eq!(l.p_power(&x).unwrap().coords(), coords.as_slice());
            assert_eq!(witt_operator(&l, &l.p_power(&x).unwrap()), d);
        }
    }

    #[test]
    fn heisenberg_gf2_squares() {
        let l = catalog::heisenberg(2, HeisenbergPmap::Zero).unwrap();
        let ef = l.element_from_ints(&[1, 1, 0]);
        assert_eq!(l.p_power(&ef).unwrap(), l.basis_element(2));
        assert_eq!(l.p_power_iter(&ef, 2).unwrap(), l.zero());
    }

    #[test]
    fn jacobson_terms_small_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let l2 = catalog::heisenberg(2, HeisenbergPmap::Zero).unwrap();
        for _ in 0..20 {
            let (x, y) = (l2.random_element(&mut rng), l2.random_element(&mut rng));
            assert_eq!(l2.jacobson_s(1, &x, &y).unwrap(), l2.bracket(&x, &y).unwrap());
        }
        let l3 = catalog::sl2(3).unwrap();
        let two = l3.field().from_int(2);
        for _ in 0..20 {
            let (x, y) = (l3.random_element(&mut rng), l3.random_element(&mut rng));
            let xy = l3.bracket(&x, &y).unwrap();
            assert_eq!(l3.jacobson_s(1, &x, &y).unwrap(), l3.bracket(&xy, &y).unwrap());
            assert_eq!(l3.jacobson_s(2, &x, &y).unwrap(), l3.bracket(&xy, &x).unwrap().scale(two));
        }
        assert!(l3.jacobson_s(3, &l3.zero(), &l3.zero()).is_err());
    }

    fn data(field: &Field, brackets: Vec<(usize, usize, Vec<i64>)>, pmap: Vec<Vec<i64>>) -> AlgebraData {
        let d = pmap.len();
        AlgebraData {
            name: "t".into(),
            basis: (0..d).map(|i| format!("x{i}")).collect(),
            brackets: brackets
                .into_iter()
                .map(|(i, j, v)| (i, j, v.iter().map(|&c| field.from_int(c)).collect()))
                .collect(),
            pmap: pmap
                .into_iter()
                .map(|v| v.iter().map(|&c| field.from_int(c)).collect())
                .collect(),
        }
    }

    #[test]
    fn rejects_jacobi_failure() {
        let field = make_field(3, 1).unwrap();
        // sl2 with [e, f] = e instead of h
        let bad = data(
            &field,
            vec![(0, 1, vec![-2, 0, 0]), (0, 2, vec![1, 0, 0]), (1, 2, vec![0, 0, -2])],
            vec![vec![0; 3], vec![0, 1, 0], vec![0; 3]],
        );
        match make_algebra(&field, bad) {
            Err(Error::AxiomViolation(r)) => {
                assert!(!r.jacobi_ok);
                assert_eq!(r.violations[0].witness, vec![0, 1, 2]);
            }
            other => panic!("expected a Jacobi violation, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_pmap() {
        let field = make_field(3, 1).unwrap();
        // nonabelian2 with x^[p] = x: ad x is nilpotent, ad x is not
        let bad = data(&field, vec![(0, 1, vec![1, 0])], vec![vec![1, 0], vec![0, 1]]);
        match make_algebra(&field, bad) {
            Err(Error::AxiomViolation(r)) => assert!(!r.ad_compat_ok),
            other => panic!("expected an ad-compatibility violation, got {other:?}"),
        }
        let inconsistent = data(
            &field,
            vec![(0, 1, vec![1, 0]), (1, 0, vec![1, 0])],
            vec![vec![0, 0], vec![0, 1]],
        );
        assert!(matches!(make_algebra(&field, inconsistent), Err(Error::AxiomViolation(_))));
    }

    #[test]
    fn closure_and_subalgebra() {
        let l = catalog::sl2(3).unwrap();
        let e = l.basis_element(0);
        let h = l.basis_element(1);
        assert_eq!(l.subalgebra_closure(&[e.clone()], true).unwrap().len(), 1);
        assert_eq!(l.subalgebra_closure(&[e.clone(), h.clone()], true).unwrap().len(), 2);
        let f = l.basis_element(2);
        assert_eq!(l.subalgebra_closure(&[e.clone(), f.clone()], false).unwrap().len(), 3);
        let b = l.subalgebra(&[e.clone(), h.clone()], "borel").unwrap();
        assert_eq!(b.dim(), 2);
        assert!(!b.is_abelian());
        assert!(matches!(l.subalgebra(&[e.clone(), e], "x"), Err(Error::DependentPair)));
    }

    #[test]
    fn direct_sum_of_tori_and_names() {
        let t = catalog::torus(3, 1).unwrap();
        let s = direct_sum(&t, &t).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis_names(), &["x1".to_string(), "x1'".to_string()]);
        let x = s.element_from_ints(&[1, 2]);
        assert_eq!(s.p_power(&x).unwrap(), x);
    }

    #[test]
    fn minimal_p_polynomials() {
        let t = catalog::torus(3, 1).unwrap();
        let r = t.minimal_p_polynomial(&t.basis_element(0)).unwrap();
        // t^3 - t
        assert_eq!(r.height(), 1);
        assert!(!r.has_zero_linear_term());
        assert_eq!(r.poly.degree(), Some(3));
        let n = catalog::nil(2, 3).unwrap();
        let r = n.minimal_p_polynomial(&n.basis_element(0)).unwrap();
        // x -> x2 -> x3 -> 0: t^8
        assert_eq!(r.height(), 3);
        assert!(r.has_zero_linear_term());
        assert!(r.apply(&n, &n.basis_element(0)).unwrap().is_zero());
        assert!(matches!(n.minimal_p_polynomial(&n.zero()), Err(Error::ZeroElement)));
    }

    #[test]
    fn base_change_keeps_axioms() {
        let l = catalog::sl2(3).unwrap();
        let emb = crate::gf::extend(l.field(), 2).unwrap();
        let big = l.base_change(&emb).unwrap();
        assert_eq!(big.field().order(), 9);
        assert!(big.verify_axioms().ok());
        let x = l.element_from_ints(&[1, 2, 1]);
        assert_eq!(big.p_power(&x.embed(&emb)).unwrap(), l.p_power(&x).unwrap().embed(&emb));
    }

    fn instances() -> Vec<LiePAlgebra> {
        catalog::standard_instances().into_iter().map(|e| e.algebra).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn jacobson_formula_holds(idx in 0usize..64, seed in any::<u64>()) {
            let all = instances();
            let l = &all[idx % all.len()];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = l.random_element(&mut rng);
            let y = l.random_element(&mut rng);
            let lhs = l.p_power(&x.add(&y)).unwrap();
            let rhs = l.p_power(&x).unwrap().add(&l.p_power(&y).unwrap()).add(&l.jacobson_sum(&x, &y).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pmap_is_semilinear_and_ad_compatible(idx in 0usize..64, seed in any::<u64>()) {
            let all = instances();
            let l = &all[idx % all.len()];
            let f = l.field();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = l.random_element(&mut rng);
            let a = f.random(&mut rng);
            let p = f.p() as u64;
            prop_assert_eq!(l.p_power(&x.scale(a)).unwrap(), l.p_power(&x).unwrap().scale(f.pow(a, p)));
            let ad = l.adjoint_matrix(&x).unwrap().pow(p);
            prop_assert_eq!(l.adjoint_matrix(&l.p_power(&x).unwrap()).unwrap(), ad);
        }

        #[test]
        fn jacobi_and_antisymmetry_at_random(idx in 0usize..64, seed in any::<u64>()) {
            let all = instances();
            let l = &all[idx % all.len()];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = l.random_element(&mut rng);
            let y = l.random_element(&mut rng);
            let z = l.random_element(&mut rng);
            let b = |u: &LieElement, v: &LieElement| l.bracket(u, v).unwrap();
            let j = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).add(&b(&z, &b(&x, &y)));
            prop_assert!(j.is_zero());
            prop_assert!(b(&x, &y).add(&b(&y, &x)).is_zero());
            prop_assert!(b(&x, &x).is_zero());
        }
    }
}
