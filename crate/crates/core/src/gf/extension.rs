use super::factor::roots;
use super::field::{make_field, Elem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Inclusion of GF(q) into GF(q^m), determined by the image of the base
/// field's generator. Prime-field elements map to themselves.
#[derive(Clone, Debug)]
pub struct Embedding {
    base: Field,
    target: Field,
    /// Images of `g^i` for `i < k`, where `g` generates the base field.
    powers: Vec<Elem>,
}

impl Embedding {
    pub fn identity(field: &Field) -> Embedding {
        let powers = (0..field.k())
            .map(|i| field.pow(field.generator(), i as u64))
            .collect();
        Embedding {
            base: field.clone(),
            target: field.clone(),
            powers,
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    /// Degree of the target over the base.
    pub fn degree(&self) -> usize {
        self.target.k() / self.base.k()
    }

    pub fn is_identity(&self) -> bool {
        self.base == self.target
    }

    pub fn map(&self, a: Elem) -> Elem {
        if self.base.k() == 1 || self.is_identity() {
            return a;
        }
        let t = &self.target;
        self.base
            .coeffs(a)
            .iter()
            .zip(&self.powers)
            .fold(Elem::ZERO, |acc, (&c, &g)| t.mul_add(acc, t.from_int(c as i64), g))
    }

    pub fn map_vec(&self, v: &[Elem]) -> Vec<Elem> {
        v.iter().map(|&a| self.map(a)).collect()
    }

    pub fn map_poly(&self, f: &Poly) -> Poly {
        f.map_coeffs(&self.target, |c| self.map(c))
    }

    /// The base element mapping to `a`, if `a` lies in the image.
    pub fn preimage(&self, a: Elem) -> Option<Elem> {
        if self.is_identity() {
            return Some(a);
        }
        if self.base.k() == 1 {
            return self.target.in_prime_subfield(a).then_some(a);
        }
        // solve sum c_i powers[i] = a over the prime field
        let p = self.base.p() as i64;
        let k = self.base.k();
        let n = self.target.k();
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|r| {
                let mut row: Vec<i64> = self
                    .powers
                    .iter()
                    .map(|&g| self.target.coeffs(g)[r] as i64)
                    .collect();
                row.push(self.target.coeffs(a)[r] as i64);
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..k {
            let Some(pr) = (r..n).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = modinv(rows[r][c], p);
            for x in rows[r].iter_mut() {
                *x = (*x * inv).rem_euclid(p);
            }
            for i in 0..n {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..=k {
                        rows[i][j] = (rows[i][j] - f * rows[r][j]).rem_euclid(p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if rows[r..].iter().any(|row| row[k] != 0) {
            return None;
        }
        let mut coeffs = vec![0u32; k];
        for (i, &c) in pivots.iter().enumerate() {
            coeffs[c] = rows[i][k] as u32;
        }
        self.base.from_coeffs(&coeffs).ok()
    }

    pub fn preimage_vec(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        v.iter().map(|&a| self.preimage(a)).collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Result<Embedding> {
        if self.target != next.base {
            return Err(Error::FieldMismatch);
        }
        Ok(Embedding {
            base: self.base.clone(),
            target: next.target.clone(),
            powers: self.powers.iter().map(|&g| next.map(g)).collect(),
        })
    }
}

fn modinv(a: i64, p: i64) -> i64 {
    let mut acc = 1i64;
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Builds GF(q^m) for the base GF(q) together with the inclusion. The base
/// generator is sent to the smallest root of the base modulus in the target.
pub fn extend(base: &Field, m: usize) -> Result<Embedding> {
    if m == 0 {
        return Err(Error::InvalidParams("extension degree must be positive".into()));
    }
    if m == 1 {
        return Ok(Embedding::identity(base));
    }
    let target = make_field(base.p() as u64, base.k() * m)?;
    if base.k() == 1 {
        return Ok(Embedding {
            base: base.clone(),
            target,
            powers: vec![Elem::ONE],
        });
    }
    let modulus = Poly::from_ints(
        &target,
        &base.modulus().iter().map(|&c| c as i64).collect::<Vec<_>>(),
    );
    let g = *roots(&modulus)?
        .first()
        .expect("a finite field contains every root of its subfields' moduli");
    let powers = (0..base.k()).map(|i| target.pow(g, i as u64)).collect();
    Ok(Embedding {
        base: base.clone(),
        target,
        powers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_ring_map() {
        let base = make_field(2, 2).unwrap();
        let e = extend(&base, 3).unwrap();
        assert_eq!(e.target().order(), 64);
        for a in base.elements() {
            for b in base.elements() {
                assert_eq!(e.map(base.mul(a, b)), e.target().mul(e.map(a), e.map(b)));
                assert_eq!(e.map(base.add(a, b)), e.target().add(e.map(a), e.map(b)));
            }
            assert_eq!(e.preimage(e.map(a)), Some(a));
        }
        let outside = e.target().elements().filter(|&x| e.preimage(x).is_none()).count();
        assert_eq!(outside, 64 - 4);
    }

    #[test]
    fn prime_base_embeds_by_value() {
        let base = make_field(3, 1).unwrap();
        let e = extend(&base, 2).unwrap();
        assert_eq!(e.map(base.from_int(2)), Elem::from_raw(2));
        assert_eq!(e.preimage(Elem::from_raw(3)), None);
        assert_eq!(e.degree(), 2);
    }

    #[test]
    fn composition() {
        let base = make_field(3, 1).unwrap();
        let a = extend(&base, 2).unwrap();
        let b = extend(a.target(), 2).unwrap();
        let ab = a.then(&b).unwrap();
        assert_eq!(ab.target().order(), 81);
        assert_eq!(ab.map(base.from_int(2)), b.target().from_int(2));
    }
}
