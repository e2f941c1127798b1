//! Structural analyses of Lie p-algebras: torus detection, almost
//! periodicity, the polynomial `φ_xy(t) = λ(x + t y)`, searches for
//! p-nilpotent elements and two-dimensional subalgebras, and the
//! zero-or-infinity classification of the restricted cohomological dimension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{extend, interpolate, poly_roots_in_extension, Elem, Embedding, Field, FieldSpec, Poly};
use crate::liep::{LieElement, LiePAlgebra, PRelation};
use crate::linalg::{add_vec, is_zero_vec, rank_of, scale_vec, Matrix, SpanBasis};
use crate::rep::trivial_module;
use crate::uenv::{build_uenv, ext_dims, holm_periodic_hochschild, nilradical, ExtOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CdStarVerdict {
    /// The algebra is a torus, so the cohomological dimension is zero.
    Zero,
    /// A witness of infinite cohomological dimension was found.
    InfiniteEvidence,
}

/// Columns are `e_i^[p]`.
fn pmap_matrix(l: &LiePAlgebra) -> Matrix {
    let cols: Vec<Vec<Elem>> = (0..l.dim()).map(|i| l.pmap_basis(i).to_vec()).collect();
    Matrix::from_columns(l.field(), l.dim(), &cols)
}

/// Abelian with a bijective p-map.
pub fn is_torus(l: &LiePAlgebra) -> bool {
    l.is_abelian()
        && pmap_matrix(l)
            .semilinear_kernel(1)
            .expect("square")
            .is_empty()
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusReport {
    pub algebra: String,
    pub is_torus: bool,
    pub abelian: bool,
    /// Dimension of the kernel of the p-map on an abelian algebra.
    pub pmap_kernel_dim: Option<usize>,
    /// `dim` of the nilradical of `u(L)`, when `L` is abelian and within the guard.
    pub nilradical_dim: Option<usize>,
    pub consistent: bool,
}

pub fn torus_report(l: &LiePAlgebra, guard_dim: usize) -> TorusReport {
    let abelian = l.is_abelian();
    let kernel = abelian.then(|| pmap_matrix(l).semilinear_kernel(1).expect("square").len());
    let torus = kernel == Some(0);
    let nil = if abelian {
        build_uenv(l, guard_dim)
            .ok()
            .map(|u| nilradical(&u).expect("commutative").len())
    } else {
        None
    };
    TorusReport {
        algebra: l.name().to_string(),
        is_torus: torus,
        abelian,
        pmap_kernel_dim: kernel,
        nilradical_dim: nil,
        consistent: nil.map_or(true, |n| (n == 0) == torus),
    }
}

/// `Some(λ)` when `v = λ x`, for nonzero `x`.
fn proportionality(f: &Field, x: &[Elem], v: &[Elem]) -> Option<Elem> {
    let i = x.iter().position(|c| !c.is_zero())?;
    let lambda = f.div(v[i], x[i]);
    (scale_vec(f, x, lambda) == v).then_some(lambda)
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaEntry {
    pub element: LieElement,
    #[serde(skip)]
    pub lambda: Elem,
    #[serde(rename = "lambda")]
    pub lambda_coeffs: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlmostPeriodicReport {
    pub holds: bool,
    pub n_used: Option<usize>,
    pub n_max: usize,
    pub seed: u64,
    pub lambda_table: Vec<LambdaEntry>,
    /// A sample `x` and `x^[p]^n_max`, not proportional.
    pub failure_witness: Option<(LieElement, LieElement)>,
}

/// Least `n <= n_max` with `x^[p]^n ∈ span{x}` on the basis and `samples`
/// seeded random elements.
pub fn almost_periodicity(l: &LiePAlgebra, n_max: usize, samples: usize, seed: u64) -> AlmostPeriodicReport {
    let f = l.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elements: Vec<LieElement> = (0..l.dim()).map(|i| l.basis_element(i)).collect();
    elements.extend((0..samples).map(|_| l.random_element(&mut rng)).filter(|x| !x.is_zero()));
    let iterates: Vec<Vec<Vec<Elem>>> = elements
        .iter()
        .map(|x| {
            let mut out = vec![x.coords().to_vec()];
            for _ in 0..n_max {
                let next = l.p_power_raw(out.last().expect("nonempty"));
                out.push(next);
            }
            out
        })
        .collect();
    for n in 1..=n_max {
        let lambdas: Option<Vec<Elem>> = iterates
            .iter()
            .map(|it| proportionality(f, &it[0], &it[n]))
            .collect();
        if let Some(lambdas) = lambdas {
            return AlmostPeriodicReport {
                holds: true,
                n_used: Some(n),
                n_max,
                seed,
                lambda_table: elements
                    .into_iter()
                    .zip(lambdas)
                    .map(|(element, lambda)| LambdaEntry { element, lambda, lambda_coeffs: f.coeffs(lambda) })
                    .collect(),
                failure_witness: None,
            };
        }
    }
    let witness = elements
        .iter()
        .zip(&iterates)
        .find(|(_, it)| proportionality(f, &it[0], &it[n_max]).is_none())
        .map(|(x, it)| (x.clone(), LieElement::new(f, it[n_max].clone())));
    AlmostPeriodicReport {
        holds: false,
        n_used: None,
        n_max,
        seed,
        lambda_table: Vec::new(),
        failure_witness: witness,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiPolynomial {
    /// `φ(t)`, with coefficients in the algebra's field.
    pub phi: Poly,
    pub n: usize,
    /// Field the evaluation points were taken from.
    pub evaluation_field: FieldSpec,
    pub points: usize,
}

/// Extends `vectors` (independent) to a basis with standard vectors and
/// returns the first row of the inverse of the resulting frame.
fn first_dual_coordinate(f: &Field, dim: usize, vectors: &[Vec<Elem>]) -> Vec<Elem> {
    let mut span = SpanBasis::new(f, dim);
    let mut frame: Vec<Vec<Elem>> = Vec::new();
    for v in vectors {
        span.insert(v);
        frame.push(v.clone());
    }
    for i in 0..dim {
        let mut e = vec![Elem::ZERO; dim];
        e[i] = Elem::ONE;
        if span.insert(&e) {
            frame.push(e);
        }
    }
    let m = Matrix::from_columns(f, dim, &frame).transpose();
    let mut e0 = vec![Elem::ZERO; dim];
    e0[0] = Elem::ONE;
    m.solve(&e0).expect("frame is invertible")
}

/// Computes `φ(t)` with `(x + t y)^[p]^n = φ(t) (x + t y)` by interpolation
/// over `GF(q^(n+1))`, and checks the identity as polynomials.
pub fn phi_polynomial(l: &LiePAlgebra, x: &LieElement, y: &LieElement, n: usize) -> Result<PhiPolynomial> {
    let f = l.field();
    if x.field() != f || y.field() != f {
        return Err(Error::FieldMismatch);
    }
    if rank_of(f, l.dim(), &[x.coords().to_vec(), y.coords().to_vec()]) < 2 {
        return Err(Error::DependentPair);
    }
    let emb = extend(f, n + 1)?;
    let big = l.base_change(&emb)?;
    let e = emb.target().clone();
    let count = (f.p() as usize).pow(n as u32) + 1;
    let points: Vec<Elem> = e.elements().take(count).collect();
    let (xe, ye) = (emb.map_vec(x.coords()), emb.map_vec(y.coords()));
    let line = |t: Elem| add_vec(&e, &xe, &scale_vec(&e, &ye, t));
    let values: Vec<Vec<Elem>> = points
        .iter()
        .map(|&t| big.p_power_iter(&LieElement::new(&e, line(t)), n).map(LieElement::into_coords))
        .collect::<Result<_>>()?;
    let d = l.dim();
    let w: Vec<Poly> = (0..d)
        .map(|c| interpolate(&e, &points.iter().zip(&values).map(|(&t, v)| (t, v[c])).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    let row = emb.map_vec(&first_dual_coordinate(f, d, &[x.coords().to_vec(), y.coords().to_vec()]));
    let mut phi = Poly::zero(&e);
    for (c, &r) in row.iter().enumerate() {
        phi = phi.add(&w[c].scale(r));
    }
    let residual: Vec<Poly> = (0..d)
        .map(|c| {
            let lin = Poly::new(&e, vec![xe[c], ye[c]]);
            w[c].sub(&phi.mul(&lin))
        })
        .collect();
    if residual.iter().any(|r| !r.is_zero()) {
        let t0 = e
            .elements()
            .find(|&t| residual.iter().any(|r| !r.eval(t).is_zero()))
            .expect("a nonzero polynomial of degree below the field order has a non-root");
        return Err(Error::ProportionalityFailure(e.coeffs(t0)));
    }
    let coeffs = phi
        .coeffs()
        .iter()
        .map(|&c| emb.preimage(c))
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::FieldMismatch)?;
    Ok(PhiPolynomial {
        phi: Poly::new(f, coeffs),
        n,
        evaluation_field: e.spec(),
        points: count,
    })
}

/// Least `s <= dim` with `x^[p]^s = 0`.
pub fn nilpotency_steps(l: &LiePAlgebra, x: &LieElement) -> Option<usize> {
    if x.is_zero() {
        return Some(0);
    }
    let mut v = x.coords().to_vec();
    for s in 1..=l.dim() {
        v = l.p_power_raw(&v);
        if is_zero_vec(&v) {
            return Some(s);
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct NilpotentOptions {
    pub basis_scan: bool,
    /// Exponent to use instead of the one almost periodicity finds.
    pub n: Option<usize>,
    /// Pairs tried before the basis and random pairs.
    pub pairs: Vec<(LieElement, LieElement)>,
    pub basis_pairs: bool,
    pub random_pairs: usize,
    pub seed: u64,
}

impl Default for NilpotentOptions {
    fn default() -> Self {
        NilpotentOptions {
            basis_scan: true,
            n: None,
            pairs: Vec::new(),
            basis_pairs: true,
            random_pairs: 20,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotentSearchResult {
    pub found: bool,
    pub element: Option<LieElement>,
    pub extension_degree: usize,
    /// Field of `element`.
    pub element_field: Option<FieldSpec>,
    pub nilpotency_steps: Option<usize>,
    pub exponent: Option<usize>,
    pub phi: Option<Poly>,
    pub root: Option<Vec<u32>>,
    pub pair: Option<(LieElement, LieElement)>,
    /// One line per candidate tried.
    pub attempts: Vec<String>,
    pub seed: u64,
}

impl NilpotentSearchResult {
    fn empty(seed: u64) -> Self {
        NilpotentSearchResult {
            found: false,
            element: None,
            extension_degree: 1,
            element_field: None,
            nilpotency_steps: None,
            exponent: None,
            phi: None,
            root: None,
            pair: None,
            attempts: Vec::new(),
            seed,
        }
    }
}

fn describe(x: &LieElement) -> String {
    format!("{x:?}")
}

/// Looks for a nonzero p-nilpotent element, possibly after extending scalars
/// to reach a root of some `φ_xy`.
pub fn find_p_nilpotent(l: &LiePAlgebra, opts: &NilpotentOptions) -> Result<NilpotentSearchResult> {
    let f = l.field();
    let mut out = NilpotentSearchResult::empty(opts.seed);
    if opts.basis_scan {
        for i in 0..l.dim() {
            let e = l.basis_element(i);
            if let Some(s) = nilpotency_steps(l, &e) {
                out.attempts.push(format!("basis element {} is p-nilpotent", l.basis_names()[i]));
                out.found = true;
                out.element_field = Some(f.spec());
                out.nilpotency_steps = Some(s);
                out.element = Some(e);
                return Ok(out);
            }
        }
        out.attempts.push("no basis element is p-nilpotent".into());
    }
    let n = match opts.n {
        Some(n) => n,
        None => {
            let ap = almost_periodicity(l, l.dim() + 2, 100, opts.seed);
            match ap.n_used {
                Some(n) => n,
                None => {
                    out.attempts.push(format!("not almost periodic up to n = {}", ap.n_max));
                    return Ok(out);
                }
            }
        }
    };
    out.exponent = Some(n);
    let mut pairs = opts.pairs.clone();
    if opts.basis_pairs {
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                pairs.push((l.basis_element(i), l.basis_element(j)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_pairs {
        pairs.push((l.random_element(&mut rng), l.random_element(&mut rng)));
    }
    for (x, y) in pairs {
        let label = format!("pair ({}, {})", describe(&x), describe(&y));
        let phi = match phi_polynomial(l, &x, &y, n) {
            Ok(r) => r.phi,
            Err(Error::DependentPair) => {
                out.attempts.push(format!("{label}: dependent"));
                continue;
            }
            Err(Error::ProportionalityFailure(t0)) => {
                out.attempts.push(format!("{label}: not proportional at t = {t0:?}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        if phi.is_zero() {
            out.attempts.push(format!("{label}: phi = 0, x itself is p-nilpotent"));
            let steps = nilpotency_steps(l, &x).expect("phi(0) = 0");
            out.found = true;
            out.element_field = Some(f.spec());
            out.nilpotency_steps = Some(steps);
            out.element = Some(x.clone());
            out.phi = Some(phi);
            out.pair = Some((x, y));
            return Ok(out);
        }
        if phi.is_constant() {
            out.attempts.push(format!("{label}: phi = {} is a nonzero constant", phi.format()));
            continue;
        }
        let deg = phi.degree().expect("nonzero");
        let roots = poly_roots_in_extension(&phi, deg)?;
        let Some(root) = roots.first() else {
            out.attempts.push(format!("{label}: phi = {} has no root", phi.format()));
            continue;
        };
        let emb: &Embedding = &root.embedding;
        let big = l.base_change(emb)?;
        let e = emb.target();
        let xe = x.embed(emb);
        let ye = y.embed(emb);
        let z = xe.add(&ye.scale(root.root));
        let Some(steps) = nilpotency_steps(&big, &z) else {
            out.attempts.push(format!("{label}: candidate from root failed the nilpotency check"));
            continue;
        };
        out.attempts.push(format!(
            "{label}: phi = {}, root in an extension of degree {}",
            phi.format(),
            root.degree
        ));
        out.found = true;
        out.extension_degree = root.degree;
        out.element_field = Some(e.spec());
        out.nilpotency_steps = Some(steps);
        out.root = Some(e.coeffs(root.root));
        out.element = Some(z);
        out.phi = Some(phi);
        out.pair = Some((x, y));
        return Ok(out);
    }
    Ok(out)
}

/// Bound on `q^(2 dim)` for the exhaustive subalgebra scan.
pub const EXHAUSTIVE_GUARD: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct SubalgebraOptions {
    pub exhaustive: bool,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SubalgebraOptions {
    fn default() -> Self {
        SubalgebraOptions {
            exhaustive: true,
            samples: 10_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubalgebraOutcome {
    Found,
    /// The exhaustive scan completed without a hit.
    NoneExists,
    /// Randomized search found nothing; not a proof of absence.
    NotFound,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubalgebraSearchResult {
    pub outcome: SubalgebraOutcome,
    pub pair: Option<(LieElement, LieElement)>,
    /// `basis-pairs`, `exhaustive` or `random`.
    pub mode: String,
    pub checked: u64,
    pub seed: u64,
}

/// `[a, b] ∈ span{a, b}` for independent `a, b`.
fn spans_subalgebra(l: &LiePAlgebra, a: &[Elem], b: &[Elem]) -> bool {
    let c = l.bracket_raw(a, b);
    rank_of(l.field(), l.dim(), &[a.to_vec(), b.to_vec(), c]) == 2
}

pub fn find_2dim_subalgebra(l: &LiePAlgebra, opts: &SubalgebraOptions) -> SubalgebraSearchResult {
    let f = l.field();
    let d = l.dim();
    let mut result = SubalgebraSearchResult {
        outcome: SubalgebraOutcome::NoneExists,
        pair: None,
        mode: "basis-pairs".into(),
        checked: 0,
        seed: opts.seed,
    };
    let found = |result: &mut SubalgebraSearchResult, a: Vec<Elem>, b: Vec<Elem>| {
        result.outcome = SubalgebraOutcome::Found;
        result.pair = Some((LieElement::new(f, a), LieElement::new(f, b)));
    };
    if d < 2 {
        return result;
    }
    for i in 0..d {
        for j in i + 1..d {
            result.checked += 1;
            let (a, b) = (l.basis_element(i).into_coords(), l.basis_element(j).into_coords());
            if spans_subalgebra(l, &a, &b) {
                found(&mut result, a, b);
                return result;
            }
        }
    }
    let q = f.order() as u128;
    let within = q.checked_pow(2 * d as u32).is_some_and(|v| v <= EXHAUSTIVE_GUARD);
    if opts.exhaustive && within {
        result.mode = "exhaustive".into();
        // every 2-dim subspace once, by its reduced echelon basis
        let elems: Vec<Elem> = f.elements().collect();
        for i in 0..d {
            for j in i + 1..d {
                let free_a: Vec<usize> = (i + 1..d).filter(|&c| c != j).collect();
                let free_b: Vec<usize> = (j + 1..d).collect();
                let total = free_a.len() + free_b.len();
                let mut digits = vec![0usize; total];
                loop {
                    let mut a = vec![Elem::ZERO; d];
                    let mut b = vec![Elem::ZERO; d];
                    a[i] = Elem::ONE;
                    b[j] = Elem::ONE;
                    for (k, &c) in free_a.iter().enumerate() {
                        a[c] = elems[digits[k]];
                    }
                    for (k, &c) in free_b.iter().enumerate() {
                        b[c] = elems[digits[free_a.len() + k]];
                    }
                    result.checked += 1;
                    let c = l.bracket_raw(&a, &b);
                    let rest = add_vec(f, &c, &add_vec(f, &scale_vec(f, &a, f.neg(c[i])), &scale_vec(f, &b, f.neg(c[j]))));
                    if is_zero_vec(&rest) {
                        found(&mut result, a, b);
                        return result;
                    }
                    // advance the counter
                    let mut k = 0;
                    while k < total {
                        digits[k] += 1;
                        if digits[k] < elems.len() {
                            break;
                        }
                        digits[k] = 0;
                        k += 1;
                    }
                    if k == total {
                        break;
                    }
                }
            }
        }
        return result;
    }
    result.mode = "random".into();
    result.outcome = SubalgebraOutcome::NotFound;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let a = l.random_element(&mut rng).into_coords();
        let b = l.random_element(&mut rng).into_coords();
        result.checked += 1;
        if rank_of(f, d, &[a.clone(), b.clone()]) == 2 && spans_subalgebra(l, &a, &b) {
            found(&mut result, a, b);
            return result;
        }
    }
    result
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentStep {
    pub k: usize,
    /// `(ad x)^k (y)`.
    pub value: LieElement,
    pub in_span_of_x: bool,
    #[serde(skip)]
    pub lambda: Option<Elem>,
    #[serde(rename = "lambda")]
    pub lambda_coeffs: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentReport {
    pub dependent: bool,
    /// Least `n` with `(ad x)^n y = 0`.
    pub nilpotency_degree: usize,
    pub steps: Vec<DescentStep>,
    pub bracket_zero: bool,
    /// `(x, (ad x)^(k-1) y)` when some step has `(ad x)^k y = λ x`, `λ ≠ 0`.
    pub subalgebra: Option<(LieElement, LieElement)>,
}

/// Replays the descent on `(ad x)^k y` for an ad-nilpotent pair.
pub fn ad_descent_witness(l: &LiePAlgebra, x: &LieElement, y: &LieElement) -> Result<DescentReport> {
    let f = l.field();
    let bxy = l.bracket(y, x)?;
    let mut chain = vec![y.coords().to_vec()];
    while !is_zero_vec(chain.last().expect("nonempty")) {
        if chain.len() > l.dim() {
            return Err(Error::NotAdNilpotent);
        }
        let next = l.bracket_raw(x.coords(), chain.last().expect("nonempty"));
        chain.push(next);
    }
    let n = chain.len() - 1;
    let dependent = rank_of(f, l.dim(), &[x.coords().to_vec(), y.coords().to_vec()]) < 2;
    let mut report = DescentReport {
        dependent,
        nilpotency_degree: n,
        steps: Vec::new(),
        bracket_zero: bxy.is_zero(),
        subalgebra: None,
    };
    if dependent {
        return Ok(report);
    }
    for k in (1..n).rev() {
        let lambda = if x.is_zero() { None } else { proportionality(f, x.coords(), &chain[k]) };
        if let Some(lam) = lambda {
            let prev = &chain[k - 1];
            if !lam.is_zero()
                && report.subalgebra.is_none()
                && rank_of(f, l.dim(), &[x.coords().to_vec(), prev.clone()]) == 2
            {
                report.subalgebra = Some((x.clone(), LieElement::new(f, prev.clone())));
            }
        }
        report.steps.push(DescentStep {
            k,
            value: LieElement::new(f, chain[k].clone()),
            in_span_of_x: lambda.is_some(),
            lambda,
            lambda_coeffs: lambda.map(|c| f.coeffs(c)),
        });
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub max_degree: usize,
    /// Cross-check against `Ext_{u(L)}(K, K)` where the guards allow.
    pub check_ext: bool,
    pub ext: ExtOptions,
    pub random_candidates: usize,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_degree: 6,
            check_ext: true,
            ext: ExtOptions::default(),
            random_candidates: 20,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CdStarWitness {
    pub element: LieElement,
    /// Minimal p-polynomial relation of `element`.
    pub relation: Poly,
    /// `basis`, `nilpotent-part` or `random`.
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CdStarClassification {
    pub algebra: String,
    pub verdict: CdStarVerdict,
    pub torus: bool,
    pub witness: Option<CdStarWitness>,
    /// Whether the witness relation has vanishing derivative.
    pub derivative_vanishes: Option<bool>,
    /// Periodic Hochschild dimensions of `K[t]/(f)` for `n = 0..=D`.
    pub hh_dims: Vec<usize>,
    pub ext_dims_checked: Vec<usize>,
    pub ext_truncated: bool,
    pub ext_skipped: Option<String>,
    /// Ext agrees with the verdict: zero in every positive degree for a torus,
    /// otherwise nonzero in one of the two highest degrees checked.
    pub ext_consistent: Option<bool>,
    pub max_degree: usize,
    pub seed: u64,
}

/// The p-nilpotent part of `(x)_p`: elements `z` of the span of the p-powers
/// of `x` with `z^[p]^m = 0`.
fn nilpotent_part(l: &LiePAlgebra, x: &LieElement, relation: &PRelation) -> Vec<LieElement> {
    let f = l.field();
    let m = relation.height();
    let mut powers = vec![x.coords().to_vec()];
    for _ in 1..m {
        let next = l.p_power_raw(powers.last().expect("nonempty"));
        powers.push(next);
    }
    // p-map on (x)_p in the basis x, x^[p], ..., x^[p]^(m-1)
    let mut p = Matrix::zeros(f, m, m);
    for j in 0..m {
        if j + 1 < m {
            p.set(j + 1, j, Elem::ONE);
        } else {
            for (i, &c) in relation.coeffs[..m].iter().enumerate() {
                p.set(i, j, f.neg(c));
            }
        }
    }
    let mut pm = p.clone();
    for j in 1..m {
        pm = pm.mul(&p.frobenius(j));
    }
    pm.semilinear_kernel(m)
        .expect("square")
        .into_iter()
        .map(|z| {
            let mut v = vec![Elem::ZERO; l.dim()];
            for (j, &c) in z.iter().enumerate() {
                v = add_vec(f, &v, &scale_vec(f, &powers[j], c));
            }
            LieElement::new(f, v)
        })
        .filter(|z| !z.is_zero())
        .collect()
}

fn find_witness(l: &LiePAlgebra, opts: &ClassifyOptions) -> Result<Option<CdStarWitness>> {
    let relation_of = |x: &LieElement| l.minimal_p_polynomial(x);
    let accept = |x: LieElement, source: &str| -> Result<Option<CdStarWitness>> {
        let r = relation_of(&x)?;
        Ok(r.has_zero_linear_term().then(|| CdStarWitness {
            element: x,
            relation: r.poly,
            source: source.into(),
        }))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut candidates: Vec<LieElement> = (0..l.dim()).map(|i| l.basis_element(i)).collect();
    for x in &candidates {
        if let Some(w) = accept(x.clone(), "basis")? {
            return Ok(Some(w));
        }
    }
    let randoms: Vec<LieElement> = (0..opts.random_candidates)
        .map(|_| l.random_element(&mut rng))
        .filter(|x| !x.is_zero())
        .collect();
    candidates.extend(randoms.iter().cloned());
    for (idx, x) in candidates.iter().enumerate() {
        let r = relation_of(x)?;
        for z in nilpotent_part(l, x, &r) {
            if let Some(w) = accept(z, "nilpotent-part")? {
                return Ok(Some(w));
            }
        }
        if idx >= l.dim() {
            if let Some(w) = accept(x.clone(), "random")? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Zero for tori; otherwise an element whose minimal p-polynomial relation
/// `f` has `f' = 0`, so that `u((x)_p) = K[t]/(f)` has nonvanishing
/// Hochschild cohomology in every degree.
pub fn cd_star_classify(l: &LiePAlgebra, opts: &ClassifyOptions) -> Result<CdStarClassification> {
    let torus = is_torus(l);
    let d = opts.max_degree;
    let mut out = CdStarClassification {
        algebra: l.name().to_string(),
        verdict: CdStarVerdict::Zero,
        torus,
        witness: None,
        derivative_vanishes: None,
        hh_dims: Vec::new(),
        ext_dims_checked: Vec::new(),
        ext_truncated: false,
        ext_skipped: None,
        ext_consistent: None,
        max_degree: d,
        seed: opts.seed,
    };
    if !torus {
        let w = find_witness(l, opts)?.ok_or(Error::WitnessNotFound)?;
        out.derivative_vanishes = Some(w.relation.derivative().is_zero());
        out.hh_dims = (0..=d)
            .map(|n| holm_periodic_hochschild(&w.relation, n))
            .collect::<Result<_>>()?;
        out.verdict = CdStarVerdict::InfiniteEvidence;
        out.witness = Some(w);
    }
    if opts.check_ext {
        match ext_dims(&trivial_module(l), d, &opts.ext) {
            Ok(r) => {
                out.ext_truncated = r.truncated;
                let positive = r.ext_dims.get(1..).unwrap_or(&[]);
                out.ext_consistent = Some(if torus {
                    positive.iter().all(|&e| e == 0)
                } else {
                    positive.iter().rev().take(2).any(|&e| e > 0)
                });
                out.ext_dims_checked = r.ext_dims;
            }
            Err(Error::DimensionGuard { what, value, limit }) => {
                out.ext_skipped = Some(format!("{what} = {value} exceeds {limit}"));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub algebra: String,
    pub ambient_torus: bool,
    pub ambient_verdict: CdStarVerdict,
    pub checked: usize,
    pub torus_subalgebras: usize,
    pub non_torus_subalgebras: usize,
    pub consistent: bool,
    pub seed: u64,
}

/// Closes basis elements and seeded random generator sets under bracket and
/// p-map and classifies each p-subalgebra.
pub fn subalgebra_cdstar_consistency(l: &LiePAlgebra, samples: usize, seed: u64) -> Result<ConsistencyReport> {
    let ambient = cd_star_classify(
        l,
        &ClassifyOptions {
            check_ext: false,
            seed,
            ..ClassifyOptions::default()
        },
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gen_sets: Vec<Vec<LieElement>> = (0..l.dim()).map(|i| vec![l.basis_element(i)]).collect();
    for _ in 0..samples {
        let k = rng.gen_range(1..=2usize.min(l.dim()));
        gen_sets.push((0..k).map(|_| l.random_element(&mut rng)).collect());
    }
    let mut report = ConsistencyReport {
        algebra: l.name().to_string(),
        ambient_torus: ambient.torus,
        ambient_verdict: ambient.verdict,
        checked: 0,
        torus_subalgebras: 0,
        non_torus_subalgebras: 0,
        consistent: true,
        seed,
    };
    for gens in gen_sets {
        let basis = l.subalgebra_closure(&gens, true)?;
        if basis.is_empty() {
            continue;
        }
        let sub = l.subalgebra(&basis, format!("sub({})", l.name()))?;
        report.checked += 1;
        if is_torus(&sub) {
            report.torus_subalgebras += 1;
        } else {
            report.non_torus_subalgebras += 1;
            if ambient.torus || ambient.verdict != CdStarVerdict::InfiniteEvidence {
                report.consistent = false;
            }
        }
    }
    Ok(report)
}
