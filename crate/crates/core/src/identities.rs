//! Checkers for the q-series and partition identities that follow from the
//! decomposition for `n = 2` and `n = 3`.
//!
//! Every check builds its two sides along different code paths and records
//! the lowest exponent where they disagree, if any.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::multiplicity::{b_comb_all, count_by_class, master_sides};
use crate::qseries::{
    euler_phi, restricted_partition_gf, shifted_theta, theta_f, theta_g, triple_product_f,
    triple_product_g, QSeries, ThetaKind,
};

/// Where two sides first differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    /// Which sub-identity of the report failed.
    pub label: String,
    pub exponent: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub order: i64,
    pub holds: bool,
    pub first_discrepancy: Option<Discrepancy>,
}

impl IdentityReport {
    fn from_checks(name: &str, order: i64, checks: Vec<Option<Discrepancy>>) -> Self {
        let first_discrepancy = checks.into_iter().flatten().next();
        IdentityReport {
            name: name.to_string(),
            order,
            holds: first_discrepancy.is_none(),
            first_discrepancy,
        }
    }
}

/// Compares two series below the smaller of their orders.
pub fn compare(label: &str, lhs: &QSeries, rhs: &QSeries) -> Option<Discrepancy> {
    let order = lhs.order().min(rhs.order());
    let lhs = lhs.truncate(order).expect("order only shrinks");
    let rhs = rhs.truncate(order).expect("order only shrinks");
    lhs.first_discrepancy(&rhs)
        .map(|(exponent, l, r)| Discrepancy {
            label: label.to_string(),
            exponent,
            lhs: l.to_string(),
            rhs: r.to_string(),
        })
}

fn compare_counts(label: &str, index: i64, lhs: i64, rhs: i64) -> Option<Discrepancy> {
    (lhs != rhs).then(|| Discrepancy {
        label: label.to_string(),
        exponent: index,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

fn q_times(x: &QSeries, m: i64) -> QSeries {
    let order = x.order();
    x.shift(m)
        .truncate(order)
        .expect("shift by m ≥ 0 keeps the order")
}

/// `Σ_m q^{2m² + 2mi} / ∏_{k=1}^{2m+i} (1 − q^k)` for `i ∈ {0, 1}`.
pub fn sumform_n2(i: u32, order: i64) -> QSeries {
    assert!(i <= 1, "sum forms exist for i = 0 and i = 1");
    let len = order.max(0) as usize;
    // Running coefficients of 1 / ∏_{k ≤ top} (1 − q^k).
    let mut inverse = vec![BigInt::from(0); len];
    if len > 0 {
        inverse[0] = BigInt::from(1);
    }
    let mut top = 0usize;
    let mut total = vec![BigInt::from(0); len];
    for m in 0usize.. {
        let lead = 2 * m * m + 2 * m * i as usize;
        if lead >= len {
            break;
        }
        while top < 2 * m + i as usize {
            top += 1;
            for e in top..len {
                let prev = inverse[e - top].clone();
                inverse[e] += prev;
            }
        }
        for e in lead..len {
            total[e] += &inverse[e - lead];
        }
    }
    QSeries::from_coeffs(0, total, order)
}

fn d2(order: i64) -> Result<QSeries> {
    let f53 = theta_f(5, 3, order)?;
    let f17 = theta_f(1, 7, order)?;
    Ok(&(&f53 * &f53) - &q_times(&(&f17 * &f17), 1))
}

fn lemma_5_1_with(order: i64, denominator: &QSeries) -> Result<IdentityReport> {
    let phi = euler_phi(order, 1);
    let b0 = (&phi * &theta_f(5, 3, order)?).checked_div(denominator)?;
    let b1 = (&phi * &theta_f(1, 7, order)?).checked_div(denominator)?;
    Ok(IdentityReport::from_checks(
        "lemma5.1",
        order,
        vec![
            compare("i=0", &sumform_n2(0, order), &b0),
            compare("i=1", &sumform_n2(1, order), &b1),
        ],
    ))
}

/// The `n = 2` sum forms against `φ(q) f(q⁵,q³)/D₂` and `φ(q) f(q,q⁷)/D₂`.
pub fn check_lemma_5_1(order: i64) -> Result<IdentityReport> {
    lemma_5_1_with(order, &d2(order)?)
}

fn lemma_5_2_with(order: i64, sign: i64) -> Result<IdentityReport> {
    let f53 = theta_f(5, 3, order)?;
    let f17 = theta_f(1, 7, order)?;
    let lhs = &(&f53 * &f53) + &q_times(&(&f17 * &f17), 1).scale_i64(sign);
    let rhs = &euler_phi(order, 1) * &euler_phi(order, 2);
    Ok(IdentityReport::from_checks(
        "lemma5.2",
        order,
        vec![compare("D2", &lhs, &rhs)],
    ))
}

/// `f(q⁵,q³)² − q f(q,q⁷)² = φ(q) φ(q²)`.
pub fn check_lemma_5_2(order: i64) -> Result<IdentityReport> {
    lemma_5_2_with(order, -1)
}

fn lemma_5_3_with(order: i64, shifts: (i64, i64)) -> Result<IdentityReport> {
    let phi = euler_phi(order, 1);
    let phi2 = euler_phi(order, 2);
    let lhs0 = theta_f(5, 3, order)?.checked_div(&phi2)?;
    let rhs0 = (&theta_f(11, 13, order)? - &q_times(&theta_f(5, 19, order)?, shifts.0))
        .checked_div(&phi)?;
    let lhs1 = theta_f(1, 7, order)?.checked_div(&phi2)?;
    let rhs1 = (&theta_f(7, 17, order)? - &q_times(&theta_f(1, 23, order)?, shifts.1))
        .checked_div(&phi)?;
    Ok(IdentityReport::from_checks(
        "lemma5.3",
        order,
        vec![compare("i=0", &lhs0, &rhs0), compare("i=1", &lhs1, &rhs1)],
    ))
}

/// Agreement of the `n = 2` generating functions with the older
/// `(f(q¹¹,q¹³) − q f(q⁵,q¹⁹))/φ(q)` and `(f(q⁷,q¹⁷) − q² f(q,q²³))/φ(q)`.
pub fn check_lemma_5_3(order: i64) -> Result<IdentityReport> {
    lemma_5_3_with(order, (1, 2))
}

/// `Σ_{(m,k) ∈ ℤ²} (−1)^{m+k} q^{k(3k+1)/2 + m(3m+1)/2}` summed directly.
fn pentagonal_double_sum(order: i64) -> QSeries {
    let pent = |m: i64| m * (3 * m + 1) / 2;
    let mut terms = Vec::new();
    let mut m = 0i64;
    // pent(m) ≥ 0 for all m and grows in |m|; stop once both signs pass order.
    loop {
        let mut progressed = false;
        for mm in if m == 0 { vec![0] } else { vec![m, -m] } {
            if pent(mm) >= order {
                continue;
            }
            progressed = true;
            let mut k = 0i64;
            loop {
                let mut inner = false;
                for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
                    let e = pent(mm) + pent(kk);
                    if e < order {
                        inner = true;
                        let sign = if (mm + kk).rem_euclid(2) == 0 { 1 } else { -1 };
                        terms.push((e, BigInt::from(sign)));
                    }
                }
                if !inner {
                    break;
                }
                k += 1;
            }
        }
        if !progressed {
            break;
        }
        m += 1;
    }
    QSeries::from_terms(terms, order)
}

/// `D₃ = φ(q)²` for the `n = 3` determinant, plus the auxiliary identities
/// used to see it: the five-term expansion of `φ(q)²` and the vanishing of
/// its extra term `g(q⁵,q¹⁰) g(1,q¹⁵)`.
pub fn check_lemma_5_4(order: i64) -> Result<IdentityReport> {
    let g = |r, s| theta_g(r, s, order);
    let f = |r, s| theta_f(r, s, order);
    let phi_sq = euler_phi(order, 1).pow(2);

    let d3 = &(&g(6, 9)? * &(&g(7, 8)? - &q_times(&g(2, 13)?, 1)))
        - &q_times(&(&g(12, 3)? * &(&g(11, 4)? + &q_times(&g(1, 14)?, 1))), 1);

    let zero_term = &g(5, 10)? * &g(0, 15)?;
    let shifted = shifted_theta(ThetaKind::F, 1, 10, -10, 40, order)?;
    let f_form = &(&f(5, 25)? * &f(10, 20)?) - &(&shifted * &f(5, 25)?);

    let five_terms = [
        (1, 0, g(7, 8)? * g(6, 9)?),
        (-1, 1, g(4, 11)? * g(3, 12)?),
        (-1, 2, g(1, 14)? * g(3, 12)?),
        (-1, 1, g(6, 9)? * g(2, 13)?),
        (1, 2, zero_term.clone()),
    ];
    let coset_sum = five_terms
        .iter()
        .fold(QSeries::zero(order), |acc, (sign, shift, term)| {
            &acc + &q_times(term, *shift).scale_i64(*sign)
        });
    let double_sum = pentagonal_double_sum(order);
    let zero = QSeries::zero(order);

    Ok(IdentityReport::from_checks(
        "lemma5.4",
        order,
        vec![
            compare("D3 = phi^2", &d3, &phi_sq),
            compare("extra term vanishes", &zero_term, &zero),
            compare("extra term f-form vanishes", &f_form, &zero),
            compare("double sum = phi^2", &double_sum, &phi_sq),
            compare("coset expansion = double sum", &coset_sum, &double_sum),
        ],
    ))
}

/// The four counts of the `n = 3` partition identities at one `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abcd {
    pub k: u32,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// `a(k), b(k), c(k), d(k)` for `0 ≤ k ≤ max_k`.
///
/// `a`, `b` count maximal shapes for `n = 3` of class 0 with `3k` boxes and
/// of class 1 with `3k − 2` boxes. `c`, `d` are built from partitions whose
/// parts avoid given residues mod 15, counting partitions of a negative
/// number as 0.
pub fn abcd_table(max_k: u32) -> Vec<Abcd> {
    let counts = count_by_class(3, 3 * max_k as u64);
    let order = max_k as i64 + 1;
    let p = |excluded: &[u32]| restricted_partition_gf(excluded, 15, order);
    let (p7, p2, p4, p1) = (
        p(&[0, 7, 8]),
        p(&[0, 2, 13]),
        p(&[0, 4, 11]),
        p(&[0, 1, 14]),
    );
    let at = |series: &QSeries, m: i64| -> i64 {
        if m < 0 {
            0
        } else {
            i64::try_from(series.coeff(m)).expect("count fits in i64")
        }
    };
    (0..=max_k)
        .map(|k| {
            let ki = k as i64;
            let b = if k == 0 {
                0
            } else {
                counts[3 * k as usize - 2][1] as i64
            };
            Abcd {
                k,
                a: counts[3 * k as usize][0] as i64,
                b,
                c: at(&p7, ki) - at(&p2, ki - 1),
                d: at(&p4, ki - 1) + at(&p1, ki - 2),
            }
        })
        .collect()
}

pub fn a_b_c_d(k: u32) -> Abcd {
    abcd_table(k)[k as usize]
}

/// `a(k) = c(k)` for `0 ≤ k ≤ max_k` and `b(k) = d(k)` for `1 ≤ k ≤ max_k`.
pub fn check_theorem_5_1(max_k: u32) -> IdentityReport {
    let table = abcd_table(max_k);
    let mut checks = Vec::new();
    for row in &table {
        checks.push(compare_counts("a = c", row.k as i64, row.a, row.c));
        if row.k >= 1 {
            checks.push(compare_counts("b = d", row.k as i64, row.b, row.d));
        }
    }
    IdentityReport::from_checks("theorem5.1", max_k as i64, checks)
}

/// The master identity `φ(qⁿ) = Σ_i q^{i²} g(q^{2i+1}, q^{n+1−2i}) B_i(qⁿ)`
/// with each `B_i` taken from the combinatorial count.
pub fn check_master(n: u32, order: i64) -> Result<IdentityReport> {
    let inner = (order + n as i64 - 1) / n as i64;
    let b = b_comb_all(n, inner)?;
    let (lhs, rhs) = master_sides(n, order, &b)?;
    Ok(IdentityReport::from_checks(
        &format!("master n={n}"),
        order,
        vec![compare("master", &lhs, &rhs)],
    ))
}

/// Theta sums against their triple-product expansions over a fixed set of
/// arguments, including every normalised argument used by the Cramer system
/// for `n ≤ 7`.
pub fn check_triple_product(order: i64) -> Result<IdentityReport> {
    let mut args: Vec<(i64, i64)> = vec![
        (1, 2),
        (5, 3),
        (1, 7),
        (6, 9),
        (7, 8),
        (2, 13),
        (11, 4),
        (1, 14),
        (0, 15),
    ];
    for n in 2..=7u32 {
        for i in 0..=crate::max_class(n) {
            for j in 0..n {
                let (kind, r, s) = crate::multiplicity::psi_args(i, j, n);
                let norm = crate::qseries::NormalizedTheta::new(kind, r, s)?;
                args.push((norm.r, norm.s));
            }
        }
    }
    args.sort_unstable();
    args.dedup();
    let mut checks = Vec::new();
    for (r, s) in args {
        let label_f = format!("f({r},{s})");
        let label_g = format!("g({r},{s})");
        checks.push(compare(
            &label_f,
            &theta_f(r, s, order)?,
            &triple_product_f(r, s, order)?,
        ));
        checks.push(compare(
            &label_g,
            &theta_g(r, s, order)?,
            &triple_product_g(r, s, order)?,
        ));
    }
    Ok(IdentityReport::from_checks("triple-product", order, checks))
}

/// The default suite: series identities at `order`, counting identities up
/// to `max_k`, master identities for `n = 2, 3`.
pub fn run_suite(order: i64, max_k: u32) -> Result<Vec<IdentityReport>> {
    let jobs: Vec<Box<dyn Fn() -> Result<IdentityReport> + Send + Sync>> = vec![
        Box::new(move || check_lemma_5_1(order)),
        Box::new(move || check_lemma_5_2(order)),
        Box::new(move || check_lemma_5_3(order)),
        Box::new(move || check_lemma_5_4(order)),
        Box::new(move || Ok(check_theorem_5_1(max_k))),
        Box::new(move || check_master(2, order)),
        Box::new(move || check_master(3, order)),
        Box::new(move || check_triple_product(order)),
    ];
    jobs.par_iter().map(|job| job()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplicity::b_comb;
    use crate::young::tests::all_partitions;

    fn distinct_odd_count(m: u32) -> i64 {
        all_partitions(m)
            .iter()
            .filter(|p| {
                p.pairs()
                    .iter()
                    .all(|&(part, mult)| part % 2 == 1 && mult == 1)
            })
            .count() as i64
    }

    #[test]
    fn sum_forms_count_distinct_odd_parts() {
        let s0 = sumform_n2(0, 12);
        let s1 = sumform_n2(1, 12);
        for k in 0..12i64 {
            assert_eq!(
                s0.coeff(k),
                BigInt::from(distinct_odd_count(2 * k as u32)),
                "k={k}"
            );
            if k >= 1 {
                assert_eq!(
                    s1.coeff(k - 1),
                    BigInt::from(distinct_odd_count(2 * k as u32 - 1))
                );
            }
        }
        assert_eq!(s0.coeff(0), BigInt::from(1));
        assert_eq!(s1.coeff(0), BigInt::from(1));
    }

    #[test]
    fn sum_forms_match_combinatorial_series() {
        assert_eq!(sumform_n2(0, 40), b_comb(0, 2, 40).unwrap());
        assert_eq!(sumform_n2(1, 40), b_comb(1, 2, 40).unwrap());
    }

    #[test]
    fn lemmas_hold() {
        for order in [1, 200] {
            assert!(check_lemma_5_1(order).unwrap().holds);
        }
        for order in [1, 300] {
            assert!(check_lemma_5_2(order).unwrap().holds);
            assert!(check_lemma_5_3(order).unwrap().holds);
            assert!(check_lemma_5_4(order).unwrap().holds);
        }
    }

    #[test]
    fn perturbations_are_caught() {
        let order = 60;
        let bad = &d2(order).unwrap() + &QSeries::monomial(1, 4, order);
        let report = lemma_5_1_with(order, &bad).unwrap();
        assert!(!report.holds);
        assert_eq!(report.first_discrepancy.unwrap().exponent, 4);

        let flipped = lemma_5_2_with(order, 1).unwrap();
        assert_eq!(flipped.first_discrepancy.unwrap().exponent, 1);

        assert!(!lemma_5_3_with(order, (0, 2)).unwrap().holds);
        assert!(!lemma_5_3_with(order, (1, 0)).unwrap().holds);
    }

    #[test]
    fn extra_term_is_identically_zero() {
        assert!((&theta_g(5, 10, 500).unwrap() * &theta_g(0, 15, 500).unwrap()).is_zero());
    }

    #[test]
    fn abcd_examples() {
        assert_eq!(a_b_c_d(6).a, 7);
        assert_eq!(a_b_c_d(6).c, 7);
        assert_eq!(a_b_c_d(2).b, 2);
        let zero = a_b_c_d(0);
        assert_eq!((zero.a, zero.c), (1, 1));
        let one = a_b_c_d(1);
        assert_eq!((one.b, one.d), (1, 1));
    }

    #[test]
    fn theorem_holds_to_thirty() {
        let report = check_theorem_5_1(30);
        assert!(report.holds, "{report:?}");
    }

    #[test]
    fn suite_holds() {
        for report in run_suite(120, 20).unwrap() {
            assert!(report.holds, "{report:?}");
        }
    }
}
