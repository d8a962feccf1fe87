//! The symplectic structure on Z_d^{2n} and check-matrix extension.
//!
//! Vectors are `(x_1..x_n | z_1..z_n)`. With `Λ = [[0, I], [−I, 0]]` the
//! form is `ω(a, b) = aᵀΛb = a_x·b_z − a_z·b_x`.

use std::ops::Range;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    extend_to_basis, inverse_matrix, is_linearly_independent, mat_mul, solve_linear, ModMatrix,
};
use crate::ring::Modulus;

/// `Λ` together with its dimensions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymplecticForm {
    n: usize,
    matrix: ModMatrix,
}

impl SymplecticForm {
    pub fn new(n: usize, d: Modulus) -> Self {
        SymplecticForm {
            n,
            matrix: lambda(n, d),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.matrix.modulus()
    }

    pub fn matrix(&self) -> &ModMatrix {
        &self.matrix
    }

    pub fn product(&self, a: &[u64], b: &[u64]) -> Result<u64> {
        if a.len() != 2 * self.n {
            return Err(Error::ShapeMismatch(format!(
                "expected length {}",
                2 * self.n
            )));
        }
        symplectic_product(a, b, self.modulus())
    }
}

pub fn lambda(n: usize, d: Modulus) -> ModMatrix {
    let mut l = ModMatrix::zeros(2 * n, 2 * n, d);
    for i in 0..n {
        l.set(i, n + i, 1);
        l.set(n + i, i, -1);
    }
    l
}

pub(crate) fn omega(a: &[u64], b: &[u64], d: Modulus) -> u64 {
    let n = a.len() / 2;
    let mut acc = 0;
    for i in 0..n {
        acc = d.add(acc, d.mul(a[i], b[n + i]));
        acc = d.sub(acc, d.mul(a[n + i], b[i]));
    }
    acc
}

pub fn symplectic_product(a: &[u64], b: &[u64], d: Modulus) -> Result<u64> {
    if a.len() != b.len() || a.len() % 2 != 0 {
        return Err(Error::ShapeMismatch(format!(
            "symplectic product of lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(omega(a, b, d))
}

/// `MᵀΛM = Λ`, checked column pair by column pair.
pub fn is_symplectic(m: &ModMatrix, n: usize) -> Result<bool> {
    if m.rows() != 2 * n || m.cols() != 2 * n {
        return Err(Error::ShapeMismatch(format!(
            "expected a {0}x{0} matrix, got {1}x{2}",
            2 * n,
            m.rows(),
            m.cols()
        )));
    }
    let d = m.modulus();
    let cols = m.columns();
    for i in 0..2 * n {
        for j in i + 1..2 * n {
            let expected = if j == i + n && i < n { 1 } else { 0 };
            if omega(&cols[i], &cols[j], d) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A `2n×2n` matrix known to satisfy `MᵀΛM = Λ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymplecticMatrix {
    n: usize,
    matrix: ModMatrix,
}

impl SymplecticMatrix {
    pub fn new(matrix: ModMatrix) -> Result<Self> {
        if matrix.rows() % 2 != 0 {
            return Err(Error::ShapeMismatch(
                "symplectic matrices have even size".into(),
            ));
        }
        let n = matrix.rows() / 2;
        if !is_symplectic(&matrix, n)? {
            return Err(Error::NotSymplectic);
        }
        Ok(SymplecticMatrix { n, matrix })
    }

    pub fn identity(n: usize, d: Modulus) -> Self {
        SymplecticMatrix {
            n,
            matrix: ModMatrix::identity(2 * n, d),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.matrix.modulus()
    }

    pub fn matrix(&self) -> &ModMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ModMatrix {
        self.matrix
    }

    pub fn inverse(&self) -> SymplecticMatrix {
        SymplecticMatrix {
            n: self.n,
            matrix: lambda_conjugate_transpose(&self.matrix),
        }
    }

    pub fn mul(&self, other: &SymplecticMatrix) -> Result<SymplecticMatrix> {
        Ok(SymplecticMatrix {
            n: self.n,
            matrix: mat_mul(&self.matrix, &other.matrix)?,
        })
    }
}

fn lambda_conjugate_transpose(m: &ModMatrix) -> ModMatrix {
    let l = lambda(m.rows() / 2, m.modulus());
    let lt = l.transpose();
    mat_mul(&mat_mul(&lt, &m.transpose()).unwrap(), &l).unwrap()
}

/// `M⁻¹ = ΛᵀMᵀΛ` for symplectic `M`.
pub fn symplectic_inverse(m: &ModMatrix) -> Result<ModMatrix> {
    Ok(SymplecticMatrix::new(m.clone())?.inverse().into_matrix())
}

/// Generators of an `[[n, k]]_d` code as the columns of a `2n×(n−k)` matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckMatrix {
    n: usize,
    k: usize,
    h: ModMatrix,
}

impl CheckMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.n - self.k
    }

    pub fn modulus(&self) -> Modulus {
        self.h.modulus()
    }

    pub fn matrix(&self) -> &ModMatrix {
        &self.h
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        self.h.columns()
    }
}

pub fn validate_check_matrix(h: &ModMatrix, n: usize, k: usize) -> Result<CheckMatrix> {
    if k >= n {
        return Err(Error::InvalidParams(format!(
            "need 0 <= k < n, got n={n}, k={k}"
        )));
    }
    if h.rows() != 2 * n || h.cols() != n - k {
        return Err(Error::ShapeMismatch(format!(
            "check matrix must be {}x{}, got {}x{}",
            2 * n,
            n - k,
            h.rows(),
            h.cols()
        )));
    }
    let d = h.modulus();
    let cols = h.columns();
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            if omega(&cols[i], &cols[j], d) != 0 {
                return Err(Error::NotIsotropic(i, j));
            }
        }
    }
    if !is_linearly_independent(h) {
        return Err(Error::NotIndependent(d.get()));
    }
    Ok(CheckMatrix { n, k, h: h.clone() })
}

/// `x` with `ω(a_j, x) = δ_ij` for the columns `a_j` of `cols`, and
/// `ω(b, x) = 0` for the columns `b` that complete them to a basis.
fn partner_for(cols: &ModMatrix, i: usize) -> Result<Vec<u64>> {
    let d = cols.modulus();
    let basis = extend_to_basis(cols)?;
    let system = mat_mul(&basis.transpose(), &lambda(cols.rows() / 2, d))?;
    let mut rhs = vec![0; cols.rows()];
    rhs[i] = 1;
    solve_linear(&system, &rhs)
}

/// Some `x` with `HᵀΛx = e_i` (0-based `i`).
pub fn find_conjugate_partner(h: &CheckMatrix, i: usize) -> Result<Vec<u64>> {
    if i >= h.r() {
        return Err(Error::InvalidParams(format!(
            "generator index {i} out of range for {} generators",
            h.r()
        )));
    }
    partner_for(&h.h, i)
}

/// Corrects partners so they are mutually isotropic:
/// `w_i = w'_i + Σ_{j<i} ω(w_j, w'_i)·a_j`.
fn gram_schmidt(partners: &[Vec<u64>], gens: &[Vec<u64>], d: Modulus) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = Vec::with_capacity(partners.len());
    for wp in partners {
        let mut w = wp.clone();
        for (j, wj) in out.iter().enumerate() {
            let c = omega(wj, wp, d);
            for (x, &a) in w.iter_mut().zip(&gens[j]) {
                *x = d.add(*x, d.mul(c, a));
            }
        }
        out.push(w);
    }
    out
}

fn check_partners(partners: &[Vec<u64>], gens: &[Vec<u64>], d: Modulus) -> Result<()> {
    for (i, w) in partners.iter().enumerate() {
        if w.len() != gens[0].len() {
            return Err(Error::InvalidPartner(i));
        }
        for (j, a) in gens.iter().enumerate() {
            if omega(a, w, d) != u64::from(i == j) {
                return Err(Error::InvalidPartner(i));
            }
        }
    }
    Ok(())
}

pub fn symplectic_gram_schmidt(partners: &[Vec<u64>], h: &CheckMatrix) -> Result<Vec<Vec<u64>>> {
    let gens = h.columns();
    if partners.len() != gens.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} partners for {} generators",
            partners.len(),
            gens.len()
        )));
    }
    check_partners(partners, &gens, h.modulus())?;
    Ok(gram_schmidt(partners, &gens, h.modulus()))
}

/// A symplectic matrix laid out as `[E | L_X | H | L_Z]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodeSymplectic {
    k: usize,
    matrix: SymplecticMatrix,
}

impl CodeSymplectic {
    /// Wraps a symplectic matrix, reading its column blocks for the given `k`.
    pub fn from_parts(matrix: SymplecticMatrix, k: usize) -> Result<Self> {
        if k >= matrix.n() {
            return Err(Error::InvalidParams(format!(
                "need k < n, got n={}, k={k}",
                matrix.n()
            )));
        }
        Ok(CodeSymplectic { k, matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn symplectic(&self) -> &SymplecticMatrix {
        &self.matrix
    }

    pub fn matrix(&self) -> &ModMatrix {
        self.matrix.matrix()
    }

    pub fn e_range(&self) -> Range<usize> {
        0..self.n() - self.k
    }

    pub fn l_x_range(&self) -> Range<usize> {
        self.n() - self.k..self.n()
    }

    pub fn h_range(&self) -> Range<usize> {
        self.n()..2 * self.n() - self.k
    }

    pub fn l_z_range(&self) -> Range<usize> {
        2 * self.n() - self.k..2 * self.n()
    }

    fn cols(&self, r: Range<usize>) -> ModMatrix {
        self.matrix().block(0, r.start, 2 * self.n(), r.len())
    }

    pub fn e(&self) -> ModMatrix {
        self.cols(self.e_range())
    }

    pub fn l_x(&self) -> ModMatrix {
        self.cols(self.l_x_range())
    }

    pub fn h(&self) -> ModMatrix {
        self.cols(self.h_range())
    }

    pub fn l_z(&self) -> ModMatrix {
        self.cols(self.l_z_range())
    }
}

/// Extends a check matrix to a symplectic matrix with `H` in its third block.
pub fn extend_check_matrix(h: &CheckMatrix) -> Result<CodeSymplectic> {
    let d = h.modulus();
    let (n, k, r) = (h.n(), h.k(), h.r());
    let dim = 2 * n;

    let mut gens = h.columns();
    let partners = (0..r)
        .map(|i| find_conjugate_partner(h, i))
        .collect::<Result<Vec<_>>>()?;
    let mut ws = gram_schmidt(&partners, &gens, d);

    for _ in 0..k {
        let working: Vec<Vec<u64>> = gens.iter().chain(&ws).cloned().collect();
        let aux = pick_auxiliary(&working, dim, d)?;
        // strip the components of aux along the existing pairs
        let mut a_new = aux.clone();
        for (aj, wj) in gens.iter().zip(&ws) {
            let cw = omega(wj, &aux, d);
            let ca = omega(aj, &aux, d);
            for t in 0..dim {
                a_new[t] = d.add(a_new[t], d.mul(cw, aj[t]));
                a_new[t] = d.sub(a_new[t], d.mul(ca, wj[t]));
            }
        }
        gens.push(a_new);
        let extended = ModMatrix::from_columns(&gens, dim, d)?;
        let x = partner_for(&extended, gens.len() - 1)?;
        let mut candidates = ws.clone();
        candidates.push(x);
        ws = gram_schmidt(&candidates, &gens, d);
    }

    let mut m = ModMatrix::zeros(dim, dim, d);
    for (i, w) in ws.iter().take(r).enumerate() {
        for t in 0..dim {
            m.set_u64(t, i, d.neg(w[t]));
        }
    }
    for j in 0..k {
        for t in 0..dim {
            m.set_u64(t, r + j, gens[r + j][t]);
            m.set_u64(t, n + r + j, ws[r + j][t]);
        }
    }
    m.set_block(0, n, h.matrix());
    let matrix = SymplecticMatrix::new(m)?;
    CodeSymplectic::from_parts(matrix, k)
}

/// First standard basis vector keeping `working` independent, or else the
/// next column of a basis extension.
fn pick_auxiliary(working: &[Vec<u64>], dim: usize, d: Modulus) -> Result<Vec<u64>> {
    let mut trial: Vec<Vec<u64>> = working.to_vec();
    for i in 0..dim {
        let mut e = vec![0; dim];
        e[i] = 1;
        trial.push(e);
        if is_linearly_independent(&ModMatrix::from_columns(&trial, dim, d)?) {
            return Ok(trial.pop().unwrap());
        }
        trial.pop();
    }
    let basis = extend_to_basis(&ModMatrix::from_columns(working, dim, d)?)?;
    Ok(basis.column(working.len()))
}

/// Random invertible `n×n` matrix by rejection sampling.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, d: Modulus, rng: &mut R) -> ModMatrix {
    loop {
        let a = ModMatrix::from_fn(n, n, d, |_, _| rng.gen_range(0..d.get()) as i64);
        if inverse_matrix(&a).is_ok() {
            return a;
        }
    }
}

fn random_symmetric<R: Rng + ?Sized>(n: usize, d: Modulus, rng: &mut R) -> ModMatrix {
    let mut s = ModMatrix::zeros(n, n, d);
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(0..d.get());
            s.set_u64(i, j, x);
            s.set_u64(j, i, x);
        }
    }
    s
}

/// Random element of Sp(2n, Z_d) as a product of shears and block-diagonal
/// factors.
pub fn random_symplectic<R: Rng + ?Sized>(n: usize, d: Modulus, rng: &mut R) -> SymplecticMatrix {
    let mut acc = ModMatrix::identity(2 * n, d);
    for _ in 0..3 {
        let mut upper = ModMatrix::identity(2 * n, d);
        upper.set_block(0, n, &random_symmetric(n, d, rng));
        let mut lower = ModMatrix::identity(2 * n, d);
        lower.set_block(n, 0, &random_symmetric(n, d, rng));
        let a = random_invertible(n, d, rng);
        let mut diag = ModMatrix::zeros(2 * n, 2 * n, d);
        diag.set_block(0, 0, &a);
        diag.set_block(n, n, &inverse_matrix(&a).unwrap().transpose());
        for f in [&upper, &diag, &lower] {
            acc = mat_mul(&acc, f).unwrap();
        }
    }
    SymplecticMatrix { n, matrix: acc }
}

/// Random valid check matrix for an `[[n, k]]_d` code.
pub fn random_check_matrix<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    d: Modulus,
    rng: &mut R,
) -> Result<CheckMatrix> {
    if k >= n {
        return Err(Error::InvalidParams(format!(
            "need 0 <= k < n, got n={n}, k={k}"
        )));
    }
    let r = n - k;
    let sp = random_symplectic(n, d, rng);
    let h = sp.matrix().block(0, n, 2 * n, r);
    let mixed = mat_mul(&h, &random_invertible(r, d, rng))?;
    validate_check_matrix(&mixed, n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(d: u64) -> Modulus {
        Modulus::new(d).unwrap()
    }

    fn unit(dim: usize, i: usize) -> Vec<u64> {
        let mut e = vec![0; dim];
        e[i] = 1;
        e
    }

    fn cols(columns: &[Vec<u64>], rows: usize, d: u64) -> ModMatrix {
        ModMatrix::from_columns(columns, rows, m(d)).unwrap()
    }

    #[test]
    fn lambda_identities() {
        for n in 1..=3 {
            let l = lambda(n, m(6));
            assert!(mat_mul(&l.transpose(), &l).unwrap().is_identity());
            assert_eq!(
                mat_mul(&l, &l).unwrap(),
                ModMatrix::identity(2 * n, m(6)).neg()
            );
        }
    }

    #[test]
    fn product_examples() {
        let a = vec![1, 3, 2, 4];
        assert_eq!(symplectic_product(&a, &a, m(5)).unwrap(), 0);
        assert_eq!(symplectic_product(&[1, 0], &[0, 1], m(5)).unwrap(), 1);
        assert_eq!(symplectic_product(&[0, 1], &[1, 0], m(5)).unwrap(), 4);
        assert!(symplectic_product(&[1, 0], &[1, 0, 0], m(5)).is_err());
    }

    #[test]
    fn is_symplectic_examples() {
        assert!(is_symplectic(&ModMatrix::identity(4, m(3)), 2).unwrap());
        assert!(is_symplectic(&lambda(2, m(3)), 2).unwrap());
        let a = ModMatrix::from_rows(&[vec![2, 0], vec![0, 1]], m(4)).unwrap();
        assert!(!is_symplectic(&a, 1).unwrap());
        assert!(is_symplectic(&a, 2).is_err());
    }

    #[test]
    fn is_symplectic_agrees_with_matrix_product() {
        for (n, d) in [(1usize, 2u64), (1, 3), (1, 4), (2, 2)] {
            let dim = 2 * n;
            let l = lambda(n, m(d));
            let total = (d as usize).pow((dim * dim) as u32);
            let mut count = 0;
            for mut idx in 0..total {
                let a = ModMatrix::from_fn(dim, dim, m(d), |_, _| {
                    let x = idx % d as usize;
                    idx /= d as usize;
                    x as i64
                });
                let brute = mat_mul(&mat_mul(&a.transpose(), &l).unwrap(), &a).unwrap() == l;
                assert_eq!(is_symplectic(&a, n).unwrap(), brute);
                count += usize::from(brute);
            }
            let expected = match (n, d) {
                (1, 2) => 6,
                (1, 3) => 24,
                (1, 4) => 48,
                _ => 720,
            };
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn inverse_examples() {
        assert!(symplectic_inverse(&ModMatrix::identity(2, m(5)))
            .unwrap()
            .is_identity());
        let s = ModMatrix::from_rows(&[vec![1, 1], vec![0, 1]], m(5)).unwrap();
        assert_eq!(
            symplectic_inverse(&s).unwrap(),
            ModMatrix::from_rows(&[vec![1, 4], vec![0, 1]], m(5)).unwrap()
        );
        let l = lambda(2, m(7));
        let li = symplectic_inverse(&l).unwrap();
        assert_eq!(li, l.neg());
        assert!(mat_mul(&l, &li).unwrap().is_identity());
        let bad = ModMatrix::from_rows(&[vec![2, 0], vec![0, 1]], m(4)).unwrap();
        assert_eq!(symplectic_inverse(&bad), Err(Error::NotSymplectic));
    }

    #[test]
    fn validate_examples() {
        assert!(validate_check_matrix(&cols(&[unit(4, 2)], 4, 5), 2, 1).is_ok());
        assert_eq!(
            validate_check_matrix(&cols(&[vec![2, 0]], 2, 4), 1, 0),
            Err(Error::NotIndependent(4))
        );
        assert_eq!(
            validate_check_matrix(&cols(&[unit(4, 0), unit(4, 2)], 4, 3), 2, 0),
            Err(Error::NotIsotropic(0, 1))
        );
        assert!(matches!(
            validate_check_matrix(&cols(&[unit(4, 2)], 4, 3), 2, 0),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            validate_check_matrix(&cols(&[], 4, 3), 2, 2),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn partner_examples() {
        for d in [2u64, 3, 4, 7] {
            let h = validate_check_matrix(&cols(&[vec![0, 1]], 2, d), 1, 0).unwrap();
            let x = find_conjugate_partner(&h, 0).unwrap();
            assert_eq!(omega(&[0, 1], &x, m(d)), 1);
            assert_eq!(x, vec![d - 1, 0]);
        }
        let h = validate_check_matrix(&cols(&[unit(4, 2), unit(4, 3)], 4, 5), 2, 0).unwrap();
        let x = find_conjugate_partner(&h, 1).unwrap();
        assert_eq!(omega(&unit(4, 2), &x, m(5)), 0);
        assert_eq!(omega(&unit(4, 3), &x, m(5)), 1);
        assert_eq!(x[1], 4);
        assert!(find_conjugate_partner(&h, 2).is_err());
    }

    #[test]
    fn gram_schmidt_examples() {
        let d = m(2);
        let h = validate_check_matrix(&cols(&[unit(4, 2), unit(4, 3)], 4, 2), 2, 0).unwrap();
        let ready = vec![unit(4, 0), unit(4, 1)];
        assert_eq!(symplectic_gram_schmidt(&ready, &h).unwrap(), ready);

        // ω(e_1, e_2 + e_3) = 1 must be removed
        let skewed = vec![unit(4, 0), vec![0, 1, 1, 0]];
        let w = symplectic_gram_schmidt(&skewed, &h).unwrap();
        assert_eq!(w, ready);
        assert_eq!(omega(&w[0], &w[1], d), 0);

        let wrong = vec![unit(4, 0), vec![1, 1, 0, 0]];
        assert_eq!(
            symplectic_gram_schmidt(&[unit(4, 1), unit(4, 0)], &h),
            Err(Error::InvalidPartner(0))
        );
        assert_eq!(
            symplectic_gram_schmidt(&wrong, &h),
            Err(Error::InvalidPartner(1))
        );
    }

    #[test]
    fn gram_schmidt_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in [2u64, 3, 4, 6] {
            for n in 1..=3 {
                for k in 0..n {
                    for _ in 0..5 {
                        let h = random_check_matrix(n, k, m(d), &mut rng).unwrap();
                        let partners: Vec<_> = (0..h.r())
                            .map(|i| find_conjugate_partner(&h, i).unwrap())
                            .collect();
                        let w = symplectic_gram_schmidt(&partners, &h).unwrap();
                        let gens = h.columns();
                        for i in 0..w.len() {
                            for j in 0..w.len() {
                                assert_eq!(omega(&w[i], &w[j], m(d)), 0);
                                assert_eq!(omega(&gens[j], &w[i], m(d)), u64::from(i == j));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn extend_trivial_code_gives_identity() {
        for d in [2u64, 3, 6] {
            for n in 1..=3 {
                for k in 0..n {
                    let r = n - k;
                    let gens: Vec<_> = (0..r).map(|i| unit(2 * n, n + i)).collect();
                    let h = validate_check_matrix(&cols(&gens, 2 * n, d), n, k).unwrap();
                    let code = extend_check_matrix(&h).unwrap();
                    assert!(
                        code.matrix().is_identity(),
                        "n={n} k={k} d={d}\n{}",
                        code.matrix()
                    );
                }
            }
        }
    }

    #[test]
    fn extend_xz_generator_mod_2() {
        let h = validate_check_matrix(&cols(&[vec![1, 1]], 2, 2), 1, 0).unwrap();
        let code = extend_check_matrix(&h).unwrap();
        assert!(is_symplectic(code.matrix(), 1).unwrap());
        assert_eq!(code.matrix().column(1), vec![1, 1]);
        assert_eq!(code.h(), *h.matrix());
    }

    #[test]
    fn extend_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in [2u64, 3, 4, 6] {
            for n in 1..=3 {
                for k in 0..n {
                    for _ in 0..6 {
                        let h = random_check_matrix(n, k, m(d), &mut rng).unwrap();
                        let code = extend_check_matrix(&h).unwrap();
                        assert!(is_symplectic(code.matrix(), n).unwrap());
                        assert_eq!(code.h(), *h.matrix());
                        assert_eq!(code.e().cols() + code.l_x().cols(), n);
                        assert_eq!(code.l_z().cols(), k);
                    }
                }
            }
        }
    }

    #[test]
    fn extension_with_composite_modulus_and_awkward_generators() {
        // no entry of the generator is a unit
        let h = validate_check_matrix(&cols(&[vec![2, 3, 0, 0]], 4, 6), 2, 1).unwrap();
        let code = extend_check_matrix(&h).unwrap();
        assert!(is_symplectic(code.matrix(), 2).unwrap());
        assert_eq!(code.h(), *h.matrix());
    }

    #[test]
    fn random_symplectic_is_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in [2u64, 3, 4, 6, 9, 12] {
            for n in 1..=4 {
                let s = random_symplectic(n, m(d), &mut rng);
                assert!(is_symplectic(s.matrix(), n).unwrap());
                assert!(mat_mul(s.matrix(), s.inverse().matrix())
                    .unwrap()
                    .is_identity());
            }
        }
    }
}
