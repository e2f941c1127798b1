use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Largest supported extension degree over the prime field.
pub const MAX_DEGREE: usize = 12;

/// An element of some `Field`, encoded as `sum c_i p^i` where `c_i` are the
/// coefficients of its representative polynomial in the field generator.
///
/// Elements of the prime subfield are encoded by their residue, so `0` and `1`
/// mean zero and one in every field. The owning field travels with the
/// container (vector, matrix, polynomial), not with each element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn raw(self) -> u32 {
        self.0
    }

    /// Caller guarantees `raw < field.order()`.
    pub fn from_raw(raw: u32) -> Elem {
        Elem(raw)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u32,
    k: usize,
    /// Monic modulus over GF(p), ascending, length k + 1.
    modulus: Vec<u32>,
    order: u64,
    place: [u64; MAX_DEGREE],
}

/// The finite field GF(p^k) = GF(p)[t]/(modulus).
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

/// Serialized form of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: usize,
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds GF(p^k) with the lexicographically smallest monic irreducible modulus
/// (coefficients compared from degree k-1 down to the constant term).
pub fn make_field(p: u64, k: usize) -> Result<Field> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::CompositeP(p));
    }
    if k == 0 || k > MAX_DEGREE || (p as u128).pow(k as u32) > u32::MAX as u128 {
        return Err(Error::DegreeTooLarge(k));
    }
    let p = p as u32;
    if k == 1 {
        return Ok(Field::build(p, vec![0, 1]));
    }
    let prime = Field::build(p, vec![0, 1]);
    let tails = (p as u64).pow(k as u32);
    for n in 0..tails {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut rest = n;
        for _ in 0..k {
            coeffs.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        let candidate = Poly::from_ints(&prime, &coeffs.iter().map(|&c| c as i64).collect::<Vec<_>>());
        if candidate.is_irreducible() {
            return Ok(Field::build(p, coeffs));
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    fn build(p: u32, modulus: Vec<u32>) -> Field {
        let k = modulus.len() - 1;
        let mut place = [0u64; MAX_DEGREE];
        let mut acc = 1u64;
        for slot in place.iter_mut().take(k) {
            *slot = acc;
            acc *= p as u64;
        }
        Field {
            inner: Arc::new(Inner {
                p,
                k,
                modulus,
                order: acc,
                place,
            }),
        }
    }

    /// Rebuilds a field from its serialized form, validating the modulus.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        if !is_prime(spec.p as u64) {
            return Err(Error::CompositeP(spec.p as u64));
        }
        if spec.k == 0 || spec.k > MAX_DEGREE || (spec.p as u128).pow(spec.k as u32) > u32::MAX as u128 {
            return Err(Error::DegreeTooLarge(spec.k));
        }
        if spec.k == 1 {
            return Ok(Field::build(spec.p, vec![0, 1]));
        }
        if spec.modulus.len() != spec.k + 1
            || spec.modulus[spec.k] != 1
            || spec.modulus.iter().any(|&c| c >= spec.p)
        {
            return Err(Error::Parse("modulus must be monic of degree k with entries in [0, p)".into()));
        }
        let prime = Field::build(spec.p, vec![0, 1]);
        let m = Poly::from_ints(&prime, &spec.modulus.iter().map(|&c| c as i64).collect::<Vec<_>>());
        if !m.is_irreducible() {
            return Err(Error::Parse("modulus is not irreducible".into()));
        }
        Ok(Field::build(spec.p, spec.modulus.clone()))
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p(),
            k: self.k(),
            modulus: self.inner.modulus.clone(),
        }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn k(&self) -> usize {
        self.inner.k
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.k == 1
    }

    pub fn prime_subfield(&self) -> Field {
        Field::build(self.p(), vec![0, 1])
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.k() || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::Parse(format!(
                "field element must be {} integers in [0, {})",
                self.k(),
                self.p()
            )));
        }
        Ok(self.encode(coeffs.iter().map(|&c| c as u64)))
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        self.digits(a)[..self.k()].iter().map(|&d| d as u32).collect()
    }

    /// Generator of the field over its prime subfield (the class of t).
    pub fn generator(&self) -> Elem {
        if self.k() == 1 {
            Elem::ONE
        } else {
            Elem(self.p())
        }
    }

    pub fn contains(&self, a: Elem) -> bool {
        (a.0 as u64) < self.order()
    }

    pub fn in_prime_subfield(&self, a: Elem) -> bool {
        a.0 < self.p()
    }

    /// All elements in counting order of their coefficient vectors.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order()).map(|n| Elem(n as u32))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.gen_range(0..self.order()) as u32)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.gen_range(1..self.order()) as u32)
    }

    #[inline]
    fn digits(&self, a: Elem) -> [u64; MAX_DEGREE] {
        let mut out = [0u64; MAX_DEGREE];
        let p = self.p() as u64;
        let mut rest = a.0 as u64;
        for d in out.iter_mut().take(self.k()) {
            *d = rest % p;
            rest /= p;
        }
        out
    }

    #[inline]
    fn encode(&self, digits: impl Iterator<Item = u64>) -> Elem {
        let mut acc = 0u64;
        for (d, w) in digits.zip(self.inner.place.iter()) {
            acc += d * w;
        }
        Elem(acc as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p();
        if self.k() == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return Elem((s % p as u64) as u32);
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let p = p as u64;
        self.encode((0..self.k()).map(|i| (x[i] + y[i]) % p))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if a.0 == 0 {
            return a;
        }
        let p = self.p() as u64;
        if self.k() == 1 {
            return Elem((p - a.0 as u64) as u32);
        }
        let x = self.digits(a);
        self.encode((0..self.k()).map(|i| (p - x[i]) % p))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p() as u64;
        if self.k() == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % p) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let k = self.k();
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        let m = &self.inner.modulus;
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + c * (p - m[i] as u64)) % p;
            }
        }
        self.encode(prod.iter().take(k).copied())
    }

    /// Adds `c * b` to `a`.
    #[inline]
    pub fn mul_add(&self, a: Elem, c: Elem, b: Elem) -> Elem {
        self.add(a, self.mul(c, b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }

    /// `a / b`; panics on division by zero.
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    /// The `p^m`-power Frobenius.
    pub fn frobenius(&self, a: Elem, m: usize) -> Elem {
        let m = m % self.k();
        if m == 0 {
            return a;
        }
        self.pow(a, (self.p() as u64).pow(m as u32))
    }

    /// Inverse of the Frobenius `a -> a^p`.
    pub fn pth_root(&self, a: Elem) -> Elem {
        self.frobenius(a, self.k() - 1)
    }

    pub fn format(&self, a: Elem) -> String {
        if self.k() == 1 {
            return a.0.to_string();
        }
        format!("{:?}", self.coeffs(a))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            write!(f, "GF({}^{})", self.p(), self.k())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gf2_characteristic() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.add(Elem::ONE, Elem::ONE), Elem::ZERO);
    }

    #[test]
    fn gf5_inverse_of_two() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.inv(f.from_int(2)), Some(f.from_int(3)));
    }

    #[test]
    fn gf9_generator_order_divides_eight() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let g = f.generator();
        assert_eq!(f.pow(g, 8), Elem::ONE);
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(a, 8), Elem::ONE);
        }
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(make_field(5, 2).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn guards() {
        assert!(matches!(make_field(4, 1), Err(Error::CompositeP(4))));
        assert!(matches!(make_field(2, 13), Err(Error::DegreeTooLarge(13))));
        assert!(matches!(make_field(2, 0), Err(Error::DegreeTooLarge(0))));
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 4), (3, 3), (5, 2), (7, 2)] {
            let f = make_field(p, k).unwrap();
            for _ in 0..1000 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if let Some(ai) = f.inv(a) {
                    assert_eq!(f.mul(a, ai), Elem::ONE);
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_root_inverts_it() {
        let f = make_field(3, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.pth_root(f.frobenius(a, 1)), a);
            for b in [f.generator(), Elem::ONE] {
                assert_eq!(
                    f.frobenius(f.add(a, b), 1),
                    f.add(f.frobenius(a, 1), f.frobenius(b, 1))
                );
            }
        }
    }

    #[test]
    fn spec_roundtrip_rejects_reducible_modulus() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(Field::from_spec(&f.spec()).unwrap(), f);
        let bad = FieldSpec { p: 3, k: 2, modulus: vec![0, 0, 1] };
        assert!(Field::from_spec(&bad).is_err());
    }
}
