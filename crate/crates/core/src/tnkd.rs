//! The subgroup `T(n,k,d)` of `Sp(2n, Z_d)` and its factorisation
//! `M = M_T · M_E · M_S · M_L`.
//!
//! Row and column blocks have sizes `(r, k, r, k)` with `r = n − k`:
//!
//! ```text
//!     [ A^{-T}  0    0   0   ]
//! M = [ M21     M22  0   M24 ]
//!     [ M31     M32  A   M34 ]
//!     [ M41     M42  0   M44 ]
//! ```

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{inverse_matrix, mat_mul, ModMatrix};
use crate::ring::{factorize, Modulus};
use crate::symplectic::{is_symplectic, random_invertible, random_symplectic, SymplecticMatrix};

fn check_params(n: usize, k: usize) -> Result<()> {
    if k >= n {
        return Err(Error::InvalidParams(format!(
            "need 0 <= k < n, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// Start offsets of the four blocks.
fn offsets(n: usize, k: usize) -> [usize; 4] {
    let r = n - k;
    [0, r, n, n + r]
}

fn sizes(n: usize, k: usize) -> [usize; 4] {
    let r = n - k;
    [r, k, r, k]
}

/// Block `(i, j)`, 0-based.
fn blk(m: &ModMatrix, n: usize, k: usize, i: usize, j: usize) -> ModMatrix {
    let (o, s) = (offsets(n, k), sizes(n, k));
    m.block(o[i], o[j], s[i], s[j])
}

fn put(m: &mut ModMatrix, n: usize, k: usize, i: usize, j: usize, b: &ModMatrix) {
    let o = offsets(n, k);
    m.set_block(o[i], o[j], b);
}

pub fn is_in_tnkd(m: &ModMatrix, n: usize, k: usize) -> Result<bool> {
    check_params(n, k)?;
    if m.rows() != 2 * n || m.cols() != 2 * n {
        return Err(Error::ShapeMismatch(format!(
            "expected a {0}x{0} matrix, got {1}x{2}",
            2 * n,
            m.rows(),
            m.cols()
        )));
    }
    let zero_blocks = [(0, 1), (0, 2), (0, 3), (1, 2), (3, 2)];
    if zero_blocks
        .iter()
        .any(|&(i, j)| !blk(m, n, k, i, j).is_zero())
    {
        return Ok(false);
    }
    let a = blk(m, n, k, 2, 2);
    let m11 = blk(m, n, k, 0, 0);
    if !mat_mul(&m11.transpose(), &a)?.is_identity() {
        return Ok(false);
    }
    is_symplectic(m, n)
}

/// An element of `T(n,k,d)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TnkdElement {
    k: usize,
    matrix: SymplecticMatrix,
}

impl TnkdElement {
    pub fn new(m: ModMatrix, n: usize, k: usize) -> Result<Self> {
        if !is_in_tnkd(&m, n, k)? {
            return Err(Error::NotInSubgroup {
                n,
                k,
                d: m.modulus().get(),
            });
        }
        Ok(TnkdElement {
            k,
            matrix: SymplecticMatrix::new(m)?,
        })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &ModMatrix {
        self.matrix.matrix()
    }

    pub fn inverse(&self) -> TnkdElement {
        TnkdElement {
            k: self.k,
            matrix: self.matrix.inverse(),
        }
    }

    pub fn mul(&self, other: &TnkdElement) -> Result<TnkdElement> {
        TnkdElement::new(mat_mul(self.matrix(), other.matrix())?, self.n(), self.k)
    }
}

/// The `K_A` block paired with `(N, L)`.
///
/// The result satisfies `K_A − K_Aᵀ = LᵀN − NᵀL`, which is what makes `M_E`
/// symplectic, and equals `NᵀL − LᵀN` whenever that matrix `X` has `3X ≡ 0`.
pub fn canonical_k_a(n_mat: &ModMatrix, l_mat: &ModMatrix) -> Result<ModMatrix> {
    let x = mat_mul(&n_mat.transpose(), l_mat)?.sub(&mat_mul(&l_mat.transpose(), n_mat)?)?;
    let d = x.modulus();
    let mut out = x.clone();
    for i in 0..x.rows() {
        for j in 0..i {
            out.set_u64(i, j, d.sub(x.get(i, j), d.mul(3, x.get(i, j))));
        }
    }
    Ok(out)
}

/// `(M_T, M_E, M_S, M_L)` stored through their free blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TnkdFactors {
    n: usize,
    k: usize,
    k_s: ModMatrix,
    n_mat: ModMatrix,
    l_mat: ModMatrix,
    k_a: ModMatrix,
    a: ModMatrix,
    logical: ModMatrix,
}

impl TnkdFactors {
    /// `k_s` symmetric `r×r`, `n_mat` and `l_mat` `k×r`, `a` invertible `r×r`,
    /// `logical` a `2k×2k` symplectic matrix.
    pub fn new(
        n: usize,
        k: usize,
        k_s: ModMatrix,
        n_mat: ModMatrix,
        l_mat: ModMatrix,
        a: ModMatrix,
        logical: ModMatrix,
    ) -> Result<Self> {
        check_params(n, k)?;
        let r = n - k;
        let shape_ok = [
            (&k_s, r, r),
            (&n_mat, k, r),
            (&l_mat, k, r),
            (&a, r, r),
            (&logical, 2 * k, 2 * k),
        ]
        .iter()
        .all(|(m, rows, cols)| m.rows() == *rows && m.cols() == *cols);
        if !shape_ok {
            return Err(Error::ShapeMismatch(
                "factor blocks have the wrong shape".into(),
            ));
        }
        if k_s != k_s.transpose() {
            return Err(Error::InvalidParams("K_S must be symmetric".into()));
        }
        inverse_matrix(&a)?;
        if !is_symplectic(&logical, k)? {
            return Err(Error::NotSymplectic);
        }
        let k_a = canonical_k_a(&n_mat, &l_mat)?;
        Ok(TnkdFactors {
            n,
            k,
            k_s,
            n_mat,
            l_mat,
            k_a,
            a,
            logical,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> Modulus {
        self.a.modulus()
    }

    pub fn k_s(&self) -> &ModMatrix {
        &self.k_s
    }

    pub fn n_block(&self) -> &ModMatrix {
        &self.n_mat
    }

    pub fn l_block(&self) -> &ModMatrix {
        &self.l_mat
    }

    pub fn k_a(&self) -> &ModMatrix {
        &self.k_a
    }

    pub fn a(&self) -> &ModMatrix {
        &self.a
    }

    /// The `2k×2k` symplectic matrix `[[M22, M24], [M42, M44]]`.
    pub fn logical(&self) -> &ModMatrix {
        &self.logical
    }

    fn identity(&self) -> ModMatrix {
        ModMatrix::identity(2 * self.n, self.modulus())
    }

    pub fn m_t(&self) -> ModMatrix {
        let mut m = self.identity();
        put(&mut m, self.n, self.k, 2, 0, &self.k_s);
        m
    }

    pub fn m_e(&self) -> ModMatrix {
        let (n, k) = (self.n, self.k);
        let mut m = self.identity();
        put(&mut m, n, k, 1, 0, &self.n_mat);
        put(&mut m, n, k, 2, 0, &self.k_a);
        put(&mut m, n, k, 2, 1, &self.l_mat.transpose());
        put(&mut m, n, k, 2, 3, &self.n_mat.transpose().neg());
        put(&mut m, n, k, 3, 0, &self.l_mat);
        m
    }

    pub fn m_s(&self) -> ModMatrix {
        let mut m = self.identity();
        let a_inv_t = inverse_matrix(&self.a)
            .expect("A is invertible")
            .transpose();
        put(&mut m, self.n, self.k, 0, 0, &a_inv_t);
        put(&mut m, self.n, self.k, 2, 2, &self.a);
        m
    }

    pub fn m_l(&self) -> ModMatrix {
        let (n, k) = (self.n, self.k);
        let mut m = self.identity();
        let lg = &self.logical;
        put(&mut m, n, k, 1, 1, &lg.block(0, 0, k, k));
        put(&mut m, n, k, 1, 3, &lg.block(0, k, k, k));
        put(&mut m, n, k, 3, 1, &lg.block(k, 0, k, k));
        put(&mut m, n, k, 3, 3, &lg.block(k, k, k, k));
        m
    }

    pub fn recompose(&self) -> ModMatrix {
        [self.m_e(), self.m_s(), self.m_l()]
            .iter()
            .fold(self.m_t(), |acc, f| mat_mul(&acc, f).unwrap())
    }
}

pub fn decompose(m: &ModMatrix, n: usize, k: usize) -> Result<TnkdFactors> {
    let err = || Error::NotInSubgroup {
        n,
        k,
        d: m.modulus().get(),
    };
    if !is_in_tnkd(m, n, k)? {
        return Err(err());
    }
    let d = m.modulus();
    let a = blk(m, n, k, 2, 2);
    let mut logical = ModMatrix::zeros(2 * k, 2 * k, d);
    logical.set_block(0, 0, &blk(m, n, k, 1, 1));
    logical.set_block(0, k, &blk(m, n, k, 1, 3));
    logical.set_block(k, 0, &blk(m, n, k, 3, 1));
    logical.set_block(k, k, &blk(m, n, k, 3, 3));

    let r = n - k;
    let zero_r = ModMatrix::zeros(r, r, d);
    let zero_kr = ModMatrix::zeros(k, r, d);
    let partial = TnkdFactors::new(
        n,
        k,
        zero_r,
        zero_kr.clone(),
        zero_kr,
        a.clone(),
        logical.clone(),
    )?;
    // M_T·M_E = M·(M_L·M_S)^{-1}
    let ls = mat_mul(&partial.m_l(), &partial.m_s())?;
    let ls_inv = SymplecticMatrix::new(ls)?.inverse();
    let p = mat_mul(m, ls_inv.matrix())?;

    let n_mat = blk(&p, n, k, 1, 0);
    let l_mat = blk(&p, n, k, 3, 0);
    let w = blk(&p, n, k, 2, 0);
    let k_a = canonical_k_a(&n_mat, &l_mat)?;
    let k_s = w.sub(&k_a)?;
    let factors = TnkdFactors::new(n, k, k_s, n_mat, l_mat, a, logical).map_err(|_| err())?;
    if factors.recompose() != *m {
        return Err(err());
    }
    Ok(factors)
}

/// The four factor subgroups of `T(n,k,d)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubgroupKind {
    BS,
    BA,
    GL,
    Sp2k,
}

fn pow_big(base: u64, exp: u64) -> BigUint {
    Pow::pow(BigUint::from(base), exp)
}

/// `|Sp(2n, Z_d)|`.
pub fn sp_order(n: usize, d: Modulus) -> BigUint {
    let n = n as u64;
    let mut total = BigUint::one();
    for &(p, m) in factorize(d).factors() {
        let m = m as u64;
        total *= pow_big(p, (2 * m - 1) * n * n + (m - 1) * n);
        for j in 1..=n {
            total *= pow_big(p, 2 * j) - 1u32;
        }
    }
    total
}

/// `|GL(r, Z_d)|`.
pub fn gl_order(r: usize, d: Modulus) -> BigUint {
    let r = r as u64;
    let mut total = BigUint::one();
    for &(p, m) in factorize(d).factors() {
        let m = m as u64;
        total *= pow_big(p, (m - 1) * r * r);
        for j in 0..r {
            total *= pow_big(p, r) - pow_big(p, j);
        }
    }
    total
}

pub fn subgroup_order(kind: SubgroupKind, n: usize, k: usize, d: Modulus) -> Result<BigUint> {
    check_params(n, k)?;
    let (r, kk, dd) = ((n - k) as u64, k as u64, d.get());
    Ok(match kind {
        SubgroupKind::BS => pow_big(dd, r * (r + 1) / 2),
        SubgroupKind::BA => pow_big(dd, 2 * kk * r),
        SubgroupKind::GL => gl_order(n - k, d),
        SubgroupKind::Sp2k => sp_order(k, d),
    })
}

pub fn tnkd_order(n: usize, k: usize, d: Modulus) -> Result<BigUint> {
    let mut total =
        subgroup_order(SubgroupKind::BS, n, k, d)? * subgroup_order(SubgroupKind::GL, n, k, d)?;
    if k > 0 {
        total *= subgroup_order(SubgroupKind::BA, n, k, d)?
            * subgroup_order(SubgroupKind::Sp2k, n, k, d)?;
    }
    Ok(total)
}

/// Ordered `(n−k)`-tuples of independent, pairwise isotropic vectors.
pub fn count_ordered_isotropic_tuples(n: usize, k: usize, d: Modulus) -> Result<BigUint> {
    let mut denom = subgroup_order(SubgroupKind::BS, n, k, d)?;
    if k > 0 {
        denom *= subgroup_order(SubgroupKind::BA, n, k, d)?
            * subgroup_order(SubgroupKind::Sp2k, n, k, d)?;
    }
    let sp = sp_order(n, d);
    debug_assert!((&sp % &denom) == BigUint::from(0u32));
    Ok(sp / denom)
}

pub mod random {
    //! Seeded samplers for factors and elements of `T(n,k,d)`.

    use super::*;

    fn random_block<R: Rng + ?Sized>(
        rows: usize,
        cols: usize,
        d: Modulus,
        rng: &mut R,
    ) -> ModMatrix {
        ModMatrix::from_fn(rows, cols, d, |_, _| rng.gen_range(0..d.get()) as i64)
    }

    pub fn random_factors<R: Rng + ?Sized>(
        n: usize,
        k: usize,
        d: Modulus,
        rng: &mut R,
    ) -> Result<TnkdFactors> {
        check_params(n, k)?;
        let r = n - k;
        let mut k_s = ModMatrix::zeros(r, r, d);
        for i in 0..r {
            for j in i..r {
                let x = rng.gen_range(0..d.get());
                k_s.set_u64(i, j, x);
                k_s.set_u64(j, i, x);
            }
        }
        let n_mat = random_block(k, r, d, rng);
        let l_mat = random_block(k, r, d, rng);
        let a = random_invertible(r, d, rng);
        let logical = random_symplectic(k, d, rng).into_matrix();
        TnkdFactors::new(n, k, k_s, n_mat, l_mat, a, logical)
    }

    pub fn random_element<R: Rng + ?Sized>(
        n: usize,
        k: usize,
        d: Modulus,
        rng: &mut R,
    ) -> Result<TnkdElement> {
        TnkdElement::new(random_factors(n, k, d, rng)?.recompose(), n, k)
    }
}
