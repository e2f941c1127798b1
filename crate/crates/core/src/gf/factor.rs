//! Factorization of univariate polynomials over GF(q): squarefree
//! decomposition, distinct-degree splitting and Cantor-Zassenhaus
//! equal-degree splitting, plus root extraction in extensions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::extension::{extend, Embedding};
use super::field::{Elem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Seed used by the equal-degree splitter unless a caller supplies its own.
pub const DEFAULT_FACTOR_SEED: u64 = 0;

#[derive(Clone, Debug)]
pub struct Factorization {
    pub lead: Elem,
    /// Monic irreducible factors with multiplicities, sorted by degree and
    /// then by coefficient vector.
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn product(&self, field: &Field) -> Poly {
        let mut acc = Poly::constant(field, self.lead);
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }
}

fn sort_key(p: &Poly) -> (usize, Vec<u32>) {
    let mut key: Vec<u32> = p.coeffs().iter().map(|c| c.raw()).collect();
    key.reverse();
    (p.coeffs().len(), key)
}

fn pth_root_poly(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.p() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.pth_root(c))
        .collect();
    Poly::new(field, coeffs)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with
/// pairwise coprime squarefree `g` and `f = prod g^m`.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let one = Poly::one(field);
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while w != one {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z != one {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c != one {
        let p = field.p() as usize;
        for (g, m) in squarefree_decomposition(&pth_root_poly(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of equal
/// degree: pairs `(product, degree)`.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.order();
    let t = Poly::x(field);
    let mut rest = f.clone();
    let mut h = t.rem(&rest).expect("nonzero");
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.sub(&t));
        if !g.is_constant() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest).expect("nonzero");
            out.push((g, i));
        }
        i += 1;
    }
    if !rest.is_constant() {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn random_poly(field: &Field, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::new(field, (0..below).map(|_| field.random(rng)).collect())
}

/// Cantor-Zassenhaus splitting of a monic squarefree product of irreducibles
/// of degree `d`.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.order();
    loop {
        let a = random_poly(field, n, rng);
        if a.is_constant() {
            continue;
        }
        let candidate = if q % 2 == 1 {
            // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
            let mut frob = a.rem(f).expect("nonzero");
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.pow_mod(q, f);
                norm = norm.mul_mod(&frob, f);
            }
            norm.pow_mod((q - 1) / 2, f).sub(&Poly::one(field))
        } else {
            // absolute trace down to GF(2)
            let mut sq = a.rem(f).expect("nonzero");
            let mut trace = sq.clone();
            for _ in 1..field.k() * d {
                sq = sq.mul_mod(&sq, f);
                trace = trace.add(&sq);
            }
            trace
        };
        let g = f.gcd(&candidate);
        let dg = g.degree().unwrap_or(0);
        if g.is_zero() || dg == 0 || dg == n {
            continue;
        }
        let mut out = equal_degree(&g, d, rng);
        out.extend(equal_degree(&f.div_exact(&g), d, rng));
        return out;
    }
}

/// Complete factorization into monic irreducibles.
pub fn factor(f: &Poly) -> Result<Factorization> {
    factor_seeded(f, DEFAULT_FACTOR_SEED)
}

pub fn factor_seeded(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lead = f.lead();
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    for (sq, mult) in squarefree_decomposition(&f.monic()) {
        for (block, d) in distinct_degree(&sq) {
            for g in equal_degree(&block, d, &mut rng) {
                match factors.iter_mut().find(|(h, _)| *h == g) {
                    Some(entry) => entry.1 += mult,
                    None => factors.push((g, mult)),
                }
            }
        }
    }
    factors.sort_by_key(|(g, _)| sort_key(g));
    Ok(Factorization { lead, factors })
}

/// Distinct roots of `f` in its own coefficient field, ascending.
pub fn roots(f: &Poly) -> Result<Vec<Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let t = Poly::x(field);
    let monic = f.monic();
    if monic.is_constant() {
        return Ok(Vec::new());
    }
    let frob = t.pow_mod(field.order(), &monic);
    let linear_part = monic.gcd(&frob.sub(&t));
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_FACTOR_SEED);
    let mut out: Vec<Elem> = equal_degree(&linear_part, 1, &mut rng)
        .into_iter()
        .map(|g| field.neg(g.coeff(0)))
        .collect();
    out.sort();
    Ok(out)
}

/// A root of a polynomial living in an extension of its coefficient field.
#[derive(Clone, Debug)]
pub struct ExtensionRoot {
    /// Inclusion of the coefficient field into the field holding the root.
    pub embedding: Embedding,
    pub root: Elem,
    /// Degree of the extension over the coefficient field.
    pub degree: usize,
    /// The irreducible factor this root belongs to.
    pub factor: Poly,
}

/// All roots of `f` lying in extensions of degree at most `max_ext` over its
/// coefficient field. Factors are visited by increasing degree; each factor of
/// degree `m` contributes its `m` roots in GF(q^m).
pub fn poly_roots_in_extension(f: &Poly, max_ext: usize) -> Result<Vec<ExtensionRoot>> {
    let fact = factor(f)?;
    let base = f.field();
    let mut out = Vec::new();
    for (g, _) in fact.factors {
        let d = g.degree().expect("nonconstant factor");
        if d > max_ext {
            continue;
        }
        let embedding = if d == 1 {
            Embedding::identity(base)
        } else {
            extend(base, d)?
        };
        let lifted = embedding.map_poly(&g);
        for root in roots(&lifted)? {
            out.push(ExtensionRoot {
                embedding: embedding.clone(),
                root,
                degree: d,
                factor: g.clone(),
            });
        }
    }
    Ok(out)
}
