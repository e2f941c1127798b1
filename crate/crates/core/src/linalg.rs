//! Dense exact linear algebra over a `Field`.
//!
//! Matrices are row-major. Elimination pivots on the first nonzero entry of
//! each column; prime fields take a fast path on raw residues.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Output of `Matrix::rref_full`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub kernel: Vec<Vec<Elem>>,
}

/// `y += a * x`
pub fn axpy(field: &Field, y: &mut [Elem], a: Elem, x: &[Elem]) {
    if a.is_zero() {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = field.mul_add(*yi, a, xi);
    }
}

pub fn scale_vec(field: &Field, v: &[Elem], a: Elem) -> Vec<Elem> {
    v.iter().map(|&x| field.mul(a, x)).collect()
}

pub fn add_vec(field: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn sub_vec(field: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn is_zero_vec(v: &[Elem]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// In-place row reduction. With `full` the result is the reduced row-echelon
/// form, otherwise only an echelon form with unit pivots. Returns pivot columns.
fn reduce_rows(field: &Field, data: &mut [Elem], rows: usize, cols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let p = field.p() as u64;
    let prime = field.is_prime_field();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !data[i * cols + c].is_zero()) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                data.swap(r * cols + j, pr * cols + j);
            }
        }
        let inv = field.inv(data[r * cols + c]).expect("pivot is nonzero");
        if inv != Elem::ONE {
            for j in c..cols {
                data[r * cols + j] = field.mul(data[r * cols + j], inv);
            }
        }
        let start = if full { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c];
            if f.is_zero() {
                continue;
            }
            let (pivot_row, target) = if i < r {
                let (lo, hi) = data.split_at_mut(r * cols);
                (&hi[c..cols], &mut lo[i * cols + c..i * cols + cols])
            } else {
                let (lo, hi) = data.split_at_mut(i * cols);
                (&lo[r * cols + c..r * cols + cols], &mut hi[c..cols])
            };
            if prime {
                if p == 2 {
                    for (t, &s) in target.iter_mut().zip(pivot_row) {
                        *t = Elem::from_raw(t.raw() ^ s.raw());
                    }
                } else {
                    let nf = p - f.raw() as u64;
                    for (t, &s) in target.iter_mut().zip(pivot_row) {
                        if !s.is_zero() {
                            *t = Elem::from_raw(((t.raw() as u64 + nf * s.raw() as u64) % p) as u32);
                        }
                    }
                }
            } else {
                let nf = field.neg(f);
                for (t, &s) in target.iter_mut().zip(pivot_row) {
                    if !s.is_zero() {
                        *t = field.mul_add(*t, nf, s);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Elem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Matrix::from_rows(field, &rows).expect("rectangular")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                let src = other.row(l);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                axpy(f, dst, a, src);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.rows, v.len(), "shape mismatch");
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            axpy(&self.field, &mut out, a, self.row(i));
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: add_vec(&self.field, &self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: sub_vec(&self.field, &self.data, &other.data),
        }
    }

    pub fn scale(&self, a: Elem) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: scale_vec(&self.field, &self.data, a),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(Elem::ONE))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Applies `f` to every entry, possibly changing the field.
    pub fn map(&self, field: &Field, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Entrywise `p^m`-power Frobenius.
    pub fn frobenius(&self, m: usize) -> Matrix {
        let f = self.field.clone();
        self.map(&f, |x| f.frobenius(x, m))
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "shape mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rref_full(&self) -> Rref {
        let mut reduced = self.clone();
        let pivots = reduce_rows(&self.field, &mut reduced.data, self.rows, self.cols, true);
        let kernel = kernel_from_rref(&reduced, &pivots);
        Rref {
            rank: pivots.len(),
            reduced,
            pivots,
            kernel,
        }
    }

    pub fn rref(&self) -> Matrix {
        self.rref_full().reduced
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut data = self.data.clone();
        reduce_rows(&self.field, &mut data, self.rows, self.cols, false).len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        self.rref_full().kernel
    }

    /// Some `x` with `A x = b`.
    pub fn solve(&self, b: &[Elem]) -> Result<Vec<Elem>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let cols = self.cols + 1;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.push(b[i]);
        }
        let pivots = reduce_rows(&self.field, &mut data, self.rows, cols, true);
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![Elem::ZERO; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = data[r * cols + self.cols];
        }
        Ok(x)
    }

    /// Basis of `{ v : A * frob_m(v) = 0 }`, where `frob_m` raises every
    /// coordinate to the `p^m`-th power. Computed by writing `v` over the prime
    /// field and solving the resulting `k n`-dimensional linear system.
    pub fn semilinear_kernel(&self, m: usize) -> Result<Vec<Vec<Elem>>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = &self.field;
        let k = f.k();
        let n = self.rows;
        if k == 1 || m % k == 0 {
            return Ok(self.kernel());
        }
        let prime = f.prime_subfield();
        let g = f.generator();
        let twisted: Vec<Elem> = (0..k).map(|j| f.frobenius(f.pow(g, j as u64), m)).collect();
        let mut columns = Vec::with_capacity(n * k);
        for i in 0..n {
            for &gamma in &twisted {
                let mut col = Vec::with_capacity(n * k);
                for r in 0..n {
                    let entry = f.mul(self.get(r, i), gamma);
                    col.extend(f.coeffs(entry).into_iter().map(|c| Elem::from_raw(c)));
                }
                columns.push(col);
            }
        }
        let linear = Matrix::from_columns(&prime, n * k, &columns);
        let vectors: Vec<Vec<Elem>> = linear
            .kernel()
            .into_iter()
            .map(|c| {
                (0..n)
                    .map(|i| {
                        let digits: Vec<u32> = c[i * k..(i + 1) * k].iter().map(|x| x.raw()).collect();
                        f.from_coeffs(&digits).expect("prime-field digits")
                    })
                    .collect()
            })
            .collect();
        Ok(span_basis(f, n, &vectors))
    }
}

fn kernel_from_rref(reduced: &Matrix, pivots: &[usize]) -> Vec<Vec<Elem>> {
    let f = reduced.field();
    let mut is_pivot = vec![None; reduced.cols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..reduced.cols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![Elem::ZERO; reduced.cols];
            v[free] = Elem::ONE;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(reduced.get(r, free));
            }
            v
        })
        .collect()
}

/// A basis (reduced row-echelon rows) of the span of `vectors`.
pub fn span_basis(field: &Field, dim: usize, vectors: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(field, vectors).expect("equal lengths");
    debug_assert_eq!(m.cols(), dim);
    let r = m.rref_full();
    (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect()
}

pub fn rank_of(field: &Field, dim: usize, vectors: &[Vec<Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Matrix::from_rows(field, vectors).expect("equal lengths");
    debug_assert_eq!(m.cols(), dim);
    m.rank()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Incrementally maintained echelon basis of a subspace of `field^dim`.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(field: &Field, dim: usize) -> SpanBasis {
        SpanBasis {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    /// Reduces `v` against the stored rows; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = v[c];
            if !a.is_zero() {
                axpy(f, &mut v, f.neg(a), row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        let r = self.reduce(v);
        let Some(c) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = self.field.inv(r[c]).expect("nonzero");
        self.rows.push(scale_vec(&self.field, &r, inv));
        self.pivots.push(c);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(field: &Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data: Vec<Vec<Elem>> = (0..rows)
            .map(|_| (0..cols).map(|_| field.random(rng)).collect())
            .collect();
        Matrix::from_rows(field, &data).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let f = make_field(3, 1).unwrap();
        let r = Matrix::identity(&f, 3).rref_full();
        assert_eq!(r.rank, 3);
        assert!(r.kernel.is_empty());
    }

    #[test]
    fn all_ones_over_gf2() {
        let f = make_field(2, 1).unwrap();
        let r = Matrix::from_ints(&f, &[&[1, 1], &[1, 1]]).rref_full();
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel, vec![vec![Elem::ONE, Elem::ONE]]);
    }

    #[test]
    fn random_rank_matches_column_space() {
        let f = make_field(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            let a = random_matrix(&f, 6, 4, &mut rng);
            let r = a.rref_full();
            // column space dimension via the transpose
            let cols: Vec<Vec<Elem>> = (0..4).map(|j| a.column(j)).collect();
            assert_eq!(r.rank, rank_of(&f, 6, &cols));
            assert_eq!(r.rank + r.kernel.len(), 4);
        }
    }

    #[test]
    fn solve_cases() {
        let f = make_field(3, 1).unwrap();
        let b: Vec<Elem> = [1, 2, 0].iter().map(|&x| f.from_int(x)).collect();
        assert_eq!(Matrix::identity(&f, 3).solve(&b).unwrap(), b);
        assert!(matches!(Matrix::zeros(&f, 3, 3).solve(&b), Err(Error::NoSolution)));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_matrix(&f, 4, 6, &mut rng);
            let x0: Vec<Elem> = (0..6).map(|_| f.random(&mut rng)).collect();
            let rhs = a.mul_vec(&x0);
            let x = a.solve(&rhs).unwrap();
            assert_eq!(a.mul_vec(&x), rhs);
        }
    }

    #[test]
    fn semilinear_kernel_cases() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(Matrix::zeros(&f, 2, 2).semilinear_kernel(1).unwrap().len(), 2);
        let g = make_field(3, 1).unwrap();
        let inv = Matrix::from_ints(&g, &[&[1, 1], &[0, 1]]);
        assert!(inv.semilinear_kernel(1).unwrap().is_empty());
        // diag(1, 0) over GF(4): enumerate all 16 vectors
        let d = Matrix::from_ints(&f, &[&[1, 0], &[0, 0]]);
        let ker = d.semilinear_kernel(1).unwrap();
        let brute: Vec<(Elem, Elem)> = f
            .elements()
            .flat_map(|a| f.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| d.mul_vec(&[f.frobenius(a, 1), f.frobenius(b, 1)]).iter().all(|x| x.is_zero()))
            .collect();
        assert_eq!(brute.len(), 4);
        assert_eq!(ker, vec![vec![Elem::ZERO, Elem::ONE]]);
        assert!(matches!(
            Matrix::zeros(&f, 2, 3).semilinear_kernel(1),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn semilinear_kernel_matches_enumeration_over_gf9() {
        let f = make_field(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            // rank-one matrices have nontrivial semilinear kernels
            let u: Vec<Elem> = (0..2).map(|_| f.random(&mut rng)).collect();
            let w: Vec<Elem> = (0..2).map(|_| f.random(&mut rng)).collect();
            let a = Matrix::from_fn(&f, 2, 2, |i, j| f.mul(u[i], w[j]));
            let ker = a.semilinear_kernel(1).unwrap();
            let count = f
                .elements()
                .flat_map(|x| f.elements().map(move |y| [x, y]))
                .filter(|v| is_zero_vec(&a.mul_vec(&[f.frobenius(v[0], 1), f.frobenius(v[1], 1)])))
                .count();
            assert_eq!(count as u64, 9u64.pow(ker.len() as u32));
            for v in &ker {
                let tw: Vec<Elem> = v.iter().map(|&x| f.frobenius(x, 1)).collect();
                assert!(is_zero_vec(&a.mul_vec(&tw)));
            }
        }
    }

    #[test]
    fn span_basis_incremental() {
        let f = make_field(5, 1).unwrap();
        let mut s = SpanBasis::new(&f, 3);
        let v = |a: i64, b: i64, c: i64| vec![f.from_int(a), f.from_int(b), f.from_int(c)];
        assert!(s.insert(&v(1, 2, 3)));
        assert!(s.insert(&v(0, 1, 1)));
        assert!(!s.insert(&v(2, 5, 7)));
        assert!(s.contains(&v(1, 3, 4)));
        assert!(!s.contains(&v(0, 0, 1)));
        assert_eq!(s.rank(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn rref_properties(seed in 0u64..500, rows in 1usize..7, cols in 1usize..7, pk in 0usize..4) {
            let (p, k) = [(2u64, 1usize), (3, 1), (5, 1), (2, 2)][pk];
            let f = make_field(p, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&f, rows, cols, &mut rng);
            let r = a.rref_full();
            prop_assert_eq!(r.reduced.rref(), r.reduced.clone());
            prop_assert_eq!(a.rank(), a.transpose().rank());
            prop_assert_eq!(r.rank + r.kernel.len(), cols);
            prop_assert!(r.rank <= rows.min(cols));
            for v in &r.kernel {
                prop_assert!(is_zero_vec(&a.mul_vec(v)));
            }
            prop_assert_eq!(rank_of(&f, cols, &r.kernel), r.kernel.len());
        }
    }
}
