use std::fmt;

use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// Univariate polynomial over a finite field, coefficients ascending.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Poly {
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The polynomial `t`.
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    pub fn monomial(field: &Field, c: Elem, n: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[n] = c;
        Poly::new(field, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Elem::ONE
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.field, other.field);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.field, other.field);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], a, b);
            }
        }
        Poly::new(f, out)
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let d = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let f = &self.field;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut quot = vec![Elem::ZERO; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c;
            let nc = f.neg(c);
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] = f.mul_add(rem[i - d + j], nc, b);
            }
        }
        rem.truncate(d);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; panics when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, t: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, t), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        self.mul(other).rem(modulus).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus).expect("nonzero modulus");
        let mut acc = Poly::one(&self.field).rem(modulus).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        acc
    }

    /// Applies `c -> image(c)` to every coefficient, landing in `target`.
    pub fn map_coeffs(&self, target: &Field, image: impl Fn(Elem) -> Elem) -> Poly {
        Poly::new(target, self.coeffs.iter().map(|&c| image(c)).collect())
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let q = self.field.order();
        let t = Poly::x(&self.field);
        // frob[i] = t^{q^i} mod f
        let mut frob = vec![t.rem(&f).expect("nonzero")];
        for i in 1..=n {
            let next = frob[i - 1].pow_mod(q, &f);
            frob.push(next);
        }
        if frob[n] != t.rem(&f).expect("nonzero") {
            return false;
        }
        let mut m = n;
        let mut r = 2;
        let mut prime_divisors = Vec::new();
        while r * r <= m {
            if m % r == 0 {
                prime_divisors.push(r);
                while m % r == 0 {
                    m /= r;
                }
            }
            r += 1;
        }
        if m > 1 {
            prime_divisors.push(m);
        }
        prime_divisors
            .into_iter()
            .all(|r| frob[n / r].sub(&t).gcd(&f).is_constant())
    }

    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = self.field.format(c);
            terms.push(match i {
                0 => c,
                1 if c == "1" => "t".into(),
                1 => format!("{c}*t"),
                _ if c == "1" => format!("t^{i}"),
                _ => format!("{c}*t^{i}"),
            });
        }
        terms.join(" + ")
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.format())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.format(), self.field)
    }
}

/// Lagrange interpolation through `points`; the result has degree below the
/// number of points.
pub fn interpolate(field: &Field, points: &[(Elem, Elem)]) -> Result<Poly> {
    for (i, a) in points.iter().enumerate() {
        if points[..i].iter().any(|b| b.0 == a.0) {
            return Err(Error::DuplicateAbscissa);
        }
    }
    let mut acc = Poly::zero(field);
    for (i, &(xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one(field);
        let mut denom = Elem::ONE;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Poly::new(field, vec![field.neg(xj), Elem::ONE]));
            denom = field.mul(denom, field.sub(xi, xj));
        }
        acc = acc.add(&basis.scale(field.div(yi, denom)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field::make_field;
    use proptest::prelude::*;

    fn poly_strategy(p: u64, max_len: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(0..p as i64, 0..max_len)
    }

    #[test]
    fn interpolation_through_three_points_gf3() {
        let f = make_field(3, 1).unwrap();
        let pts = [(0, 1), (1, 0), (2, 0)].map(|(a, b)| (f.from_int(a), f.from_int(b)));
        let poly = interpolate(&f, &pts).unwrap();
        assert_eq!(poly, Poly::from_ints(&f, &[1, 0, 2]));
    }

    #[test]
    fn interpolation_edge_cases() {
        let f = make_field(5, 1).unwrap();
        let c = interpolate(&f, &[(f.from_int(3), f.from_int(4))]).unwrap();
        assert_eq!(c, Poly::from_ints(&f, &[4]));
        let line: Vec<_> = (0..4).map(|i| (f.from_int(i), f.from_int(2 * i + 1))).collect();
        assert!(interpolate(&f, &line).unwrap().degree().unwrap() <= 1);
        let dup = [(f.from_int(1), f.from_int(1)), (f.from_int(1), f.from_int(2))];
        assert!(matches!(interpolate(&f, &dup), Err(Error::DuplicateAbscissa)));
    }

    #[test]
    fn derivative_of_pth_power_vanishes() {
        let f = make_field(3, 1).unwrap();
        assert!(Poly::from_ints(&f, &[0, 0, 0, 1]).derivative().is_zero());
        assert_eq!(
            Poly::from_ints(&f, &[0, 2, 0, 1]).derivative(),
            Poly::from_ints(&f, &[2])
        );
    }

    #[test]
    fn irreducibility() {
        let f = make_field(3, 1).unwrap();
        assert!(Poly::from_ints(&f, &[1, 0, 1]).is_irreducible());
        assert!(!Poly::from_ints(&f, &[0, -1, 0, 1]).is_irreducible());
        let g = make_field(2, 1).unwrap();
        assert!(Poly::from_ints(&g, &[1, 1, 0, 0, 1]).is_irreducible());
        assert!(!Poly::from_ints(&g, &[1, 0, 1]).is_irreducible());
    }

    proptest! {
        #[test]
        fn divmod_identity(a in poly_strategy(5, 9), b in poly_strategy(5, 6)) {
            let f = make_field(5, 1).unwrap();
            let (a, b) = (Poly::from_ints(&f, &a), Poly::from_ints(&f, &b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
        }

        #[test]
        fn degree_is_additive(a in poly_strategy(3, 7), b in poly_strategy(3, 7)) {
            let f = make_field(3, 2).unwrap();
            let (a, b) = (Poly::from_ints(&f, &a), Poly::from_ints(&f, &b));
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(a.mul(&b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }

        #[test]
        fn interpolation_recovers_polynomial(a in poly_strategy(7, 7)) {
            let f = make_field(7, 1).unwrap();
            let poly = Poly::from_ints(&f, &a);
            let pts: Vec<_> = f.elements().map(|t| (t, poly.eval(t))).collect();
            prop_assert_eq!(interpolate(&f, &pts).unwrap(), poly);
        }
    }
}
