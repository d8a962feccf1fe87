//! Weyl-Heisenberg labels: a phase exponent and a vector `(u | v)`.
//!
//! `g(a) = χ^j · X^{u_1} Z^{v_1} ⊗ … ⊗ X^{u_n} Z^{v_n}` with `χ = ω` for odd
//! `d` and `χ = ζ`, `ζ² = ω`, for even `d`. The phase exponent therefore lives
//! in `Z_D` with `D = d` or `D = 2d`.

use crate::error::{Error, Result};
use crate::ring::Modulus;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PauliLabel {
    phase: u64,
    vec: Vec<u64>,
    modulus: Modulus,
}

/// Phase modulus `D`.
pub fn phase_modulus(d: Modulus) -> u64 {
    if d.get() % 2 == 0 {
        2 * d.get()
    } else {
        d.get()
    }
}

/// How many χ-units make one ω-unit.
fn omega_units(d: Modulus) -> u64 {
    phase_modulus(d) / d.get()
}

impl PauliLabel {
    pub fn new(phase: i64, vec: &[i64], modulus: Modulus) -> Result<Self> {
        if vec.len() % 2 != 0 {
            return Err(Error::DimensionMismatch(format!(
                "label vector has odd length {}",
                vec.len()
            )));
        }
        Ok(PauliLabel {
            phase: phase.rem_euclid(phase_modulus(modulus) as i64) as u64,
            vec: vec.iter().map(|&x| modulus.reduce(x)).collect(),
            modulus,
        })
    }

    pub fn identity(n: usize, modulus: Modulus) -> Self {
        PauliLabel {
            phase: 0,
            vec: vec![0; 2 * n],
            modulus,
        }
    }

    pub fn n(&self) -> usize {
        self.vec.len() / 2
    }

    pub fn phase_exponent(&self) -> u64 {
        self.phase
    }

    pub fn vec(&self) -> &[u64] {
        &self.vec
    }

    pub fn u(&self) -> &[u64] {
        &self.vec[..self.n()]
    }

    pub fn v(&self) -> &[u64] {
        &self.vec[self.n()..]
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
}

fn check_compatible(a: &PauliLabel, b: &PauliLabel) -> Result<()> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch(a.modulus.get(), b.modulus.get()));
    }
    if a.vec.len() != b.vec.len() {
        return Err(Error::DimensionMismatch(format!(
            "labels on {} and {} qudits",
            a.n(),
            b.n()
        )));
    }
    Ok(())
}

/// `g(a)·g(b) = ω^{aᵀUb} g(a+b)` with `aᵀUb = v_a · u_b`.
pub fn pauli_compose(a: &PauliLabel, b: &PauliLabel) -> Result<PauliLabel> {
    check_compatible(a, b)?;
    let d = a.modulus;
    let big_d = phase_modulus(d) as u128;
    let cross = a
        .v()
        .iter()
        .zip(b.u())
        .fold(0u128, |acc, (&x, &y)| (acc + x as u128 * y as u128) % big_d);
    let phase = (a.phase as u128 + b.phase as u128 + omega_units(d) as u128 * cross) % big_d;
    Ok(PauliLabel {
        phase: phase as u64,
        vec: a
            .vec
            .iter()
            .zip(&b.vec)
            .map(|(&x, &y)| d.add(x, y))
            .collect(),
        modulus: d,
    })
}

/// Exponent `c` with `g(a)g(b) = ω^c g(b)g(a)`, namely `−aᵀΛb mod d`.
pub fn commutation_phase(a: &PauliLabel, b: &PauliLabel) -> Result<u64> {
    check_compatible(a, b)?;
    let d = a.modulus;
    let n = a.n();
    let mut acc = 0;
    for i in 0..n {
        acc = d.add(acc, d.mul(a.vec[n + i], b.vec[i]));
        acc = d.sub(acc, d.mul(a.vec[i], b.vec[n + i]));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(d: u64) -> Modulus {
        Modulus::new(d).unwrap()
    }

    fn label(phase: i64, vec: &[i64], d: u64) -> PauliLabel {
        PauliLabel::new(phase, vec, m(d)).unwrap()
    }

    #[test]
    fn compose_examples() {
        let x = label(0, &[1, 0], 3);
        let z = label(0, &[0, 1], 3);
        assert_eq!(pauli_compose(&x, &z).unwrap(), label(0, &[1, 1], 3));
        assert_eq!(pauli_compose(&z, &x).unwrap(), label(1, &[1, 1], 3));

        let g = label(4, &[2, 1, 0, 3], 5);
        let id = PauliLabel::identity(2, m(5));
        assert_eq!(pauli_compose(&id, &g).unwrap(), g);
        assert_eq!(pauli_compose(&g, &id).unwrap(), g);

        let x2 = label(0, &[1, 0], 2);
        assert_eq!(pauli_compose(&x2, &x2).unwrap(), label(0, &[0, 0], 2));
    }

    #[test]
    fn even_dimension_uses_doubled_phase() {
        let x = label(0, &[1, 0], 2);
        let z = label(0, &[0, 1], 2);
        // ZX = ωXZ, ω = ζ²
        assert_eq!(pauli_compose(&z, &x).unwrap().phase_exponent(), 2);
        assert_eq!(phase_modulus(m(2)), 4);
        assert_eq!(phase_modulus(m(3)), 3);
        assert_eq!(label(5, &[0, 0], 2).phase_exponent(), 1);
    }

    #[test]
    fn commutation_examples() {
        let a = label(0, &[1, 2, 0, 1], 3);
        assert_eq!(commutation_phase(&a, &a).unwrap(), 0);
        let x1 = label(0, &[1, 0], 3);
        let z1 = label(0, &[0, 1], 3);
        assert_eq!(commutation_phase(&x1, &z1).unwrap(), 2);
        let za = label(0, &[0, 0, 1, 0], 4);
        let zb = label(0, &[0, 0, 0, 1], 4);
        assert_eq!(commutation_phase(&za, &zb).unwrap(), 0);
    }

    #[test]
    fn mismatched_labels_are_rejected() {
        let a = label(0, &[1, 0], 3);
        let b = label(0, &[1, 0, 0, 0], 3);
        assert!(matches!(
            pauli_compose(&a, &b),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            commutation_phase(&a, &b),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(PauliLabel::new(0, &[1, 0, 0], m(3)).is_err());
    }

    #[test]
    fn compose_and_commutation_agree_exhaustively() {
        for d in [2u64, 3] {
            let big_d = phase_modulus(m(d)) as i64;
            let mut labels = Vec::new();
            for p in 0..big_d {
                for u in 0..d as i64 {
                    for v in 0..d as i64 {
                        labels.push(label(p, &[u, v], d));
                    }
                }
            }
            let w = omega_units(m(d));
            for a in &labels {
                for b in &labels {
                    let ab = pauli_compose(a, b).unwrap();
                    let ba = pauli_compose(b, a).unwrap();
                    assert_eq!(ab.vec(), ba.vec());
                    let diff =
                        (ab.phase_exponent() + big_d as u64 - ba.phase_exponent()) % big_d as u64;
                    assert_eq!(diff % w, 0);
                    assert_eq!(diff / w, commutation_phase(a, b).unwrap(), "{a:?} {b:?}");
                }
            }
        }
    }

    fn arb_label(d: u64, n: usize) -> impl Strategy<Value = PauliLabel> {
        let big_d = phase_modulus(m(d)) as i64;
        (0..big_d, proptest::collection::vec(0..d as i64, 2 * n))
            .prop_map(move |(p, v)| label(p, &v, d))
    }

    fn arb_triple() -> impl Strategy<Value = (PauliLabel, PauliLabel, PauliLabel)> {
        (2u64..=6, 1usize..=2)
            .prop_flat_map(|(d, n)| (arb_label(d, n), arb_label(d, n), arb_label(d, n)))
    }

    proptest! {
        #[test]
        fn compose_is_associative((a, b, c) in arb_triple()) {
            let left = pauli_compose(&pauli_compose(&a, &b).unwrap(), &c).unwrap();
            let right = pauli_compose(&a, &pauli_compose(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn commutation_is_antisymmetric((a, b, _c) in arb_triple()) {
            let d = a.modulus();
            let ab = commutation_phase(&a, &b).unwrap();
            let ba = commutation_phase(&b, &a).unwrap();
            prop_assert_eq!(ab, d.neg(ba));
        }
    }
}
