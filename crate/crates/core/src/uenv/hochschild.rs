//! Hochschild cohomology `HH^n(A, A)`, the nilradical of a commutative
//! algebra, and the comparison `HH^n(u(L), u(L))` against restricted
//! cohomology for abelian `L`.

use serde::Serialize;

use super::resolution::{ext_dims, ExtOptions};
use super::{build_uenv, AssocAlgebra};
use crate::error::{Error, Result};
use crate::gf::{Elem, Poly};
use crate::liep::LiePAlgebra;
use crate::linalg::Matrix;
use crate::rep::trivial_module;

/// Cap on `dim_a^(n+1)`, the dimension of the `n`-cochains.
pub const BAR_GUARD: u128 = 1_000_000;
/// Cap on the number of entries of a dense bar differential.
const BAR_ENTRY_GUARD: u128 = 60_000_000;

fn bar_differential(a: &AssocAlgebra, n: usize) -> Result<Matrix> {
    let f = a.field();
    let dim = a.dim();
    let cols = (dim as u128).pow(n as u32 + 1);
    let rows = cols * dim as u128;
    if cols > BAR_GUARD {
        return Err(Error::DimensionGuard {
            what: "Hochschild cochains dim_a^(n+1)",
            value: cols,
            limit: BAR_GUARD,
        });
    }
    if rows * cols > BAR_ENTRY_GUARD {
        return Err(Error::DimensionGuard {
            what: "dense bar differential entries",
            value: rows * cols,
            limit: BAR_ENTRY_GUARD,
        });
    }
    let (rows, cols) = (rows as usize, cols as usize);
    let mut m = Matrix::zeros(f, rows, cols);
    let minus_one = f.neg(Elem::ONE);
    let sign = |e: usize| if e % 2 == 0 { Elem::ONE } else { minus_one };
    let tuples_in = dim.pow(n as u32);
    // row (t, r): t = (a_1 .. a_{n+1}) with a_1 most significant; column (s, c)
    for t in 0..tuples_in * dim {
        let digits: Vec<usize> = (0..=n).map(|i| (t / dim.pow((n - i) as u32)) % dim).collect();
        let encode = |ds: &[usize]| ds.iter().fold(0, |acc, &d| acc * dim + d);
        let mut add = |row: usize, col: usize, v: Elem| {
            m.set(row, col, f.add(m.get(row, col), v));
        };
        // a_1 f(a_2 .. a_{n+1})
        let s = encode(&digits[1..]);
        for c in 0..dim {
            for &(r, z) in a.product_basis(digits[0], c) {
                add(t * dim + r as usize, s * dim + c, z);
            }
        }
        // (-1)^i f(.., a_i a_{i+1}, ..)
        for i in 0..n {
            for &(k, z) in a.product_basis(digits[i], digits[i + 1]) {
                let mut merged = digits[..i].to_vec();
                merged.push(k as usize);
                merged.extend_from_slice(&digits[i + 2..]);
                let s = encode(&merged);
                let v = f.mul(sign(i + 1), z);
                for r in 0..dim {
                    add(t * dim + r, s * dim + r, v);
                }
            }
        }
        // (-1)^(n+1) f(a_1 .. a_n) a_{n+1}
        let s = encode(&digits[..n]);
        for c in 0..dim {
            for &(r, z) in a.product_basis(c, digits[n]) {
                add(t * dim + r as usize, s * dim + c, f.mul(sign(n + 1), z));
            }
        }
    }
    Ok(m)
}

/// `dim HH^n(A, A)` from the full bar complex.
pub fn hochschild_dim(a: &AssocAlgebra, n: usize) -> Result<usize> {
    let d = bar_differential(a, n)?;
    let before = if n == 0 { 0 } else { bar_differential(a, n - 1)?.rank() };
    Ok(d.nullity() - before)
}

pub fn hochschild_dims(a: &AssocAlgebra, max: usize) -> Result<Vec<usize>> {
    let ranks = (0..=max)
        .map(|n| bar_differential(a, n).map(|d| d.rank()))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=max)
        .map(|n| {
            let before = if n == 0 { 0 } else { ranks[n - 1] };
            a.dim().pow(n as u32 + 1) - ranks[n] - before
        })
        .collect())
}

/// `dim HH^n(K[x]/(f), K[x]/(f))` from the 2-periodic complex
/// `A -0-> A -f'-> A -0-> A -f'-> ...`.
pub fn holm_periodic_hochschild(f: &Poly, n: usize) -> Result<usize> {
    let a = AssocAlgebra::truncated_polynomial(f)?;
    if n == 0 {
        return Ok(a.dim());
    }
    let monic = f.monic();
    let df = monic.derivative().rem(&monic)?;
    let coords: Vec<Elem> = (0..a.dim()).map(|i| df.coeff(i)).collect();
    let mult = a.left_mult_matrix(&coords);
    Ok(a.dim() - mult.rank())
}

/// Basis of the ideal of nilpotent elements of a commutative algebra: the
/// kernel of `a -> a^(p^m)` with `p^m >= dim`.
pub fn nilradical(a: &AssocAlgebra) -> Result<Vec<Vec<Elem>>> {
    if !a.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let f = a.field();
    let p = f.p() as usize;
    let dim = a.dim();
    let mut m = 0;
    while p.pow(m as u32) < dim {
        m += 1;
    }
    let m = m.max(1);
    // a -> a^p is B frob(a) for B with columns b_j^p
    let columns: Vec<Vec<Elem>> = (0..dim).map(|j| a.pow(&a.basis_vector(j), p as u64)).collect();
    let b = Matrix::from_columns(f, dim, &columns);
    let mut bm = b.clone();
    for j in 1..m {
        bm = bm.mul(&b.frobenius(j));
    }
    bm.semilinear_kernel(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct HochschildIsoCheck {
    pub degree: usize,
    /// `dim HH^n(u(L), u(L))`.
    pub lhs: usize,
    /// `dim u(L) * dim H^n_*(L, K)`.
    pub rhs: usize,
    pub equal: bool,
}

/// Compares Hochschild cohomology of `u(L)` with coefficients in itself
/// against restricted cohomology with coefficients in `u(L)^ad`, which for
/// abelian `L` is a sum of `dim u(L)` trivial modules.
pub fn verify_hochschild_isomorphism(l: &LiePAlgebra, n: usize, opts: &ExtOptions) -> Result<HochschildIsoCheck> {
    if !l.is_abelian() {
        return Err(Error::NotCommutative);
    }
    let u = build_uenv(l, opts.guard_dim)?;
    let lhs = hochschild_dim(&u, n)?;
    let ext = ext_dims(&trivial_module(l), n, opts)?;
    let e = *ext.ext_dims.get(n).ok_or(Error::DimensionGuard {
        what: "Ext degree within the resolution size bound",
        value: n as u128,
        limit: ext.ext_dims.len().saturating_sub(1) as u128,
    })?;
    let rhs = u.dim() * e;
    Ok(HochschildIsoCheck {
        degree: n,
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}
