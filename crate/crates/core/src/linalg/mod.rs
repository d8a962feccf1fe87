//! Dense matrices over Z_d.
//!
//! Z_d is not a field when d is composite, so anything that needs division
//! (solving, inverting, rank questions) goes through the integer Smith
//! normal form in [`snf`].

pub mod snf;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

pub use snf::{smith_normal_form, IntMatrix, SnfResult};

use crate::error::{Error, Result};
use crate::ring::{bezout3, gcd, Modulus, Residue};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    modulus: Modulus,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: Modulus) -> Self {
        ModMatrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: Modulus) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from signed rows; entries are reduced into `[0, d)`.
    pub fn from_rows(rows: &[Vec<i64>], modulus: Modulus) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("rows have differing lengths".into()));
        }
        Ok(ModMatrix {
            rows: r,
            cols: c,
            modulus,
            data: rows.iter().flatten().map(|&x| modulus.reduce(x)).collect(),
        })
    }

    /// Builds from columns of length `rows`; needed when there are no columns.
    pub fn from_columns(columns: &[Vec<u64>], rows: usize, modulus: Modulus) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::ShapeMismatch(format!(
                "every column must have {rows} entries"
            )));
        }
        let mut m = Self::zeros(rows, columns.len(), modulus);
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x % modulus.get();
            }
        }
        Ok(m)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        modulus: Modulus,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let mut m = Self::zeros(rows, cols, modulus);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = modulus.reduce(f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = self.modulus.reduce(value);
    }

    pub fn set_u64(&mut self, i: usize, j: usize, value: u64) {
        self.data[i * self.cols + j] = value % self.modulus.get();
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<u64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    /// Copy of the `nrows × ncols` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> Self {
        assert!(
            r0 + nrows <= self.rows && c0 + ncols <= self.cols,
            "block out of range"
        );
        let mut b = Self::zeros(nrows, ncols, self.modulus);
        for i in 0..nrows {
            for j in 0..ncols {
                b.data[i * ncols + j] = self.get(r0 + i, c0 + j);
            }
        }
        b
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ModMatrix) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block out of range"
        );
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j) % self.modulus.get();
            }
        }
    }

    /// Columns of `parts` side by side.
    pub fn hstack(parts: &[&ModMatrix]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::ShapeMismatch("nothing to stack".into()))?;
        let (rows, modulus) = (first.rows, first.modulus);
        let mut cols = 0;
        for p in parts {
            check_modulus(first, p)?;
            if p.rows != rows {
                return Err(Error::ShapeMismatch(format!(
                    "cannot stack {} rows next to {rows}",
                    p.rows
                )));
            }
            cols += p.cols;
        }
        let mut out = Self::zeros(rows, cols, modulus);
        let mut c0 = 0;
        for p in parts {
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<Self> {
        mat_mul(self, other)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let d = self.modulus;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0, |acc, j| {
                    d.add(acc, d.mul(self.get(i, j), v[j] % d.get()))
                })
            })
            .collect())
    }

    pub fn add(&self, other: &ModMatrix) -> Result<Self> {
        self.zip(other, |d, a, b| d.add(a, b))
    }

    pub fn sub(&self, other: &ModMatrix) -> Result<Self> {
        self.zip(other, |d, a, b| d.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        let d = self.modulus;
        ModMatrix {
            data: self.data.iter().map(|&x| d.neg(x)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let d = self.modulus;
        let c = d.reduce(c);
        ModMatrix {
            data: self.data.iter().map(|&x| d.mul(x, c)).collect(),
            ..self.clone()
        }
    }

    fn zip(&self, other: &ModMatrix, f: impl Fn(Modulus, u64, u64) -> u64) -> Result<Self> {
        check_modulus(self, other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let d = self.modulus;
        Ok(ModMatrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(d, a, b))
                .collect(),
            ..self.clone()
        })
    }

    /// Integer lift with entries in `[0, d)`.
    pub fn lift(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, BigInt::from(self.get(i, j)));
            }
        }
        m
    }

    /// Reduces an integer matrix modulo `d`.
    pub fn from_int(m: &IntMatrix, modulus: Modulus) -> Self {
        let d = BigInt::from(modulus.get());
        let mut out = Self::zeros(m.rows(), m.cols(), modulus);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.data[i * m.cols() + j] = reduce_big(m.get(i, j), &d);
            }
        }
        out
    }

    /// Determinant reduced mod d.
    pub fn determinant(&self) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(
                "determinant needs a square matrix".into(),
            ));
        }
        let det = self.lift().determinant();
        Ok(reduce_big(&det, &BigInt::from(self.modulus.get())))
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

fn check_modulus(a: &ModMatrix, b: &ModMatrix) -> Result<()> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch(a.modulus.get(), b.modulus.get()));
    }
    Ok(())
}

fn reduce_big(x: &BigInt, d: &BigInt) -> u64 {
    x.mod_floor(d).to_u64().expect("residue fits in u64")
}

pub fn mat_mul(a: &ModMatrix, b: &ModMatrix) -> Result<ModMatrix> {
    check_modulus(a, b)?;
    if a.cols != b.rows {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let d = a.modulus;
    let mut out = ModMatrix::zeros(a.rows, b.cols, d);
    for i in 0..a.rows {
        for l in 0..a.cols {
            let x = a.get(i, l);
            if x == 0 {
                continue;
            }
            for j in 0..b.cols {
                let idx = i * b.cols + j;
                out.data[idx] = d.add(out.data[idx], d.mul(x, b.get(l, j)));
            }
        }
    }
    Ok(out)
}

/// Invariant factors of the lifted matrix, reduced mod d.
fn invariant_factors_mod(a: &ModMatrix) -> (SnfResult, Vec<u64>) {
    let snf = smith_normal_form(&a.lift());
    let d = BigInt::from(a.modulus.get());
    let diag = snf.diagonal().iter().map(|s| reduce_big(s, &d)).collect();
    (snf, diag)
}

/// True iff the columns of `columns` are linearly independent over Z_d.
pub fn is_linearly_independent(columns: &ModMatrix) -> bool {
    if columns.cols > columns.rows {
        return false;
    }
    let d = columns.modulus.get();
    let (_, diag) = invariant_factors_mod(columns);
    diag.iter().all(|&s| gcd(s, d) == 1)
}

/// Number of elements in the Z_d-span of the columns.
pub fn span_size(columns: &ModMatrix) -> BigUint {
    let d = columns.modulus.get();
    let (_, diag) = invariant_factors_mod(columns);
    diag.iter()
        .map(|&s| BigUint::from(d / gcd(s, d)))
        .fold(BigUint::one(), |acc, x| acc * x)
}

/// Some `x` with `A·x ≡ b (mod d)`, free coordinates set to zero.
pub fn solve_linear(a: &ModMatrix, b: &[u64]) -> Result<Vec<u64>> {
    if b.len() != a.rows {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side has length {}, expected {}",
            b.len(),
            a.rows
        )));
    }
    let md = a.modulus;
    let d = md.get();
    let (snf, diag) = invariant_factors_mod(a);
    let u = ModMatrix::from_int(&snf.u, md);
    let v = ModMatrix::from_int(&snf.v, md);
    let c = u.mul_vec(b)?;

    let mut y = vec![0u64; a.cols];
    for (i, &ci) in c.iter().enumerate() {
        let s = diag.get(i).copied().unwrap_or(0);
        let g = gcd(s, d);
        if ci % g != 0 {
            return Err(Error::NoSolution(d));
        }
        if s == 0 {
            continue;
        }
        // s·y ≡ c (mod d)  ⇔  (s/g)·y ≡ c/g (mod d/g)
        let dg = d / g;
        if dg > 1 {
            let inv = Residue::from_u64(s / g, Modulus::new(dg)?).inverse()?;
            y[i] = ((ci / g) as u128 * inv.value() as u128 % dg as u128) as u64;
        }
    }
    v.mul_vec(&y)
}

/// Inverse over Z_d as `V·S⁻¹·U`.
pub fn inverse_matrix(a: &ModMatrix) -> Result<ModMatrix> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "cannot invert a {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let md = a.modulus;
    let (snf, diag) = invariant_factors_mod(a);
    let mut s_inv = ModMatrix::zeros(a.rows, a.rows, md);
    for (i, &s) in diag.iter().enumerate() {
        let inv = Residue::from_u64(s, md)
            .inverse()
            .map_err(|_| Error::NotInvertible(md.get()))?;
        s_inv.data[i * a.rows + i] = inv.value();
    }
    let u = ModMatrix::from_int(&snf.u, md);
    let v = ModMatrix::from_int(&snf.v, md);
    mat_mul(&mat_mul(&v, &s_inv)?, &u)
}

/// Completes `m` independent columns to an invertible `n×n` matrix whose
/// first `m` columns are the input.
pub fn extend_to_basis(columns: &ModMatrix) -> Result<ModMatrix> {
    let md = columns.modulus;
    let (n, m) = (columns.rows, columns.cols);
    if !is_linearly_independent(columns) {
        return Err(Error::NotIndependent(md.get()));
    }
    if m == 0 {
        return Ok(ModMatrix::identity(n, md));
    }
    if m == n {
        return Ok(columns.clone());
    }
    let mut a = complete_vector(&columns.column(0), md)?;
    for j in 1..m {
        a = extend_step(&a, j, &columns.column(j))?;
    }
    Ok(a)
}

/// Square matrix with first column `a` and determinant ≡ 1 for length ≥ 2.
/// `a` must have order d, i.e. `gcd(a_1, …, a_n, d) = 1`.
fn complete_vector(a: &[u64], md: Modulus) -> Result<ModMatrix> {
    let d = md.get();
    let n = a.len();
    match n {
        0 => {
            return Err(Error::ShapeMismatch(
                "cannot complete an empty vector".into(),
            ))
        }
        1 => {
            if gcd(a[0], d) != 1 {
                return Err(Error::NotIndependent(d));
            }
            return ModMatrix::from_columns(&[a.to_vec()], 1, md);
        }
        2 => {
            let (g, x, y, _) = bezout3(a[0] as i64, a[1] as i64, d as i64)?;
            if g != 1 {
                return Err(Error::NotIndependent(d));
            }
            return ModMatrix::from_rows(&[vec![a[0] as i64, -y], vec![a[1] as i64, x]], md);
        }
        _ => {}
    }

    let head = &a[..n - 1];
    let tail = a[n - 1];
    // head = g·b with b of order d
    let (g, b) = if head.iter().all(|&x| x == 0) {
        let mut e1 = vec![0; n - 1];
        e1[0] = 1;
        (0, e1)
    } else {
        let mut g = head.iter().fold(d, |acc, &x| gcd(acc, x));
        loop {
            let b: Vec<u64> = head.iter().map(|&x| x / g).collect();
            let c = b.iter().fold(d, |acc, &x| gcd(acc, x));
            if c == 1 {
                break (g, b);
            }
            g *= c;
        }
    };
    let inner = complete_vector(&b, md)?;

    let (h, s, t, _) = bezout3(g as i64, tail as i64, d as i64)?;
    if h != 1 {
        return Err(Error::NotIndependent(d));
    }
    let r = -t;
    // rows of the transpose: (g·b, a_n), (inner columns 2.., 0), (r·b, s)
    let mut at = ModMatrix::zeros(n, n, md);
    for j in 0..n - 1 {
        at.set_u64(0, j, head[j]);
        at.set_u64(n - 1, j, md.mul(md.reduce(r), b[j]));
    }
    at.set_u64(0, n - 1, tail);
    at.set(n - 1, n - 1, s);
    for i in 1..n - 1 {
        for j in 0..n - 1 {
            at.set_u64(i, j, inner.get(j, i));
        }
    }
    Ok(at.transpose())
}

/// Given invertible `a` whose first `m` columns are fixed, returns an
/// invertible matrix that keeps them and has `next` as column `m`.
fn extend_step(a: &ModMatrix, m: usize, next: &[u64]) -> Result<ModMatrix> {
    let md = a.modulus;
    let n = a.rows;
    let c = inverse_matrix(a)?.mul_vec(next)?;
    let (c_head, c_tail) = c.split_at(m);
    let completion = complete_vector(c_tail, md)?;

    let mut block = ModMatrix::identity(n, md);
    block.set_block(m, m, &completion);
    let mut t_inv = ModMatrix::identity(n, md);
    for (i, &x) in c_head.iter().enumerate() {
        t_inv.set_u64(i, m, x);
    }
    mat_mul(&mat_mul(a, &block)?, &t_inv)
}
