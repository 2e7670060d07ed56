//! Acceptance suite: one PASS/FAIL line per criterion. Reference values come
//! from independent computations in this file (binomials, explicit formulas,
//! evaluation at points) or from the commutative q = 1 tables.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qhs_core::braided::{
    check_central, check_coinvariant, phi_tau2_identity, rea_presentation, rea_raw_relations, trace_power,
};
use qhs_core::classical::{abelianize, classical_oracle, specializes_to_commutative};
use qhs_core::freealg::{AlgebraPresentation, Family, GeneratorId, NcPolynomial, TensorElement};
use qhs_core::matrix::Matrix;
use qhs_core::podles::{parameter_invariance_check, podles_parameters, sphere_quotient, ExtendedScalar};
use qhs_core::quantum_matrices::{
    comultiply, counit, frt_presentation, quantum_determinant, substitute_matrix, XiSpec,
};
use qhs_core::quantum_sl::{sl_presentation, verify_hopf, ReaCoaction};
use qhs_core::quotients::{hilbert, nilcone, orbit_quotient_n2, quotient_tables};
use qhs_core::re_characters::{is_re_solution, residual_vanishes_at_one};
use qhs_core::report::all_passed;
use qhs_core::rmatrix::{build_r, build_r_hat, check_braid, check_hecke};
use qhs_core::{Error, RationalScalar};

type Outcome = Result<String, String>;

fn s(text: &str) -> RationalScalar {
    text.parse().expect("valid scalar")
}

fn p(text: &str) -> NcPolynomial {
    text.parse().expect("valid polynomial")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// `C(m + d - 1, d)`, computed from scratch.
fn binomial_count(m: u64, d: u64) -> usize {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 1..=d {
        num *= BigInt::from(m - 1 + k);
        den *= BigInt::from(k);
    }
    (num / den).try_into().expect("small")
}

/// The displayed four-case formula for `R^{is}_{jt}`.
fn r_formula(i: usize, s_: usize, j: usize, t: usize) -> RationalScalar {
    if i == j && j == s_ && s_ == t {
        s("q")
    } else if i == j && s_ == t && i != s_ {
        s("1")
    } else if i > j && i == t && j == s_ {
        s("q - q^-1")
    } else {
        s("0")
    }
}

fn criterion_1() -> Outcome {
    for n in [2, 3] {
        let r = build_r(n).map_err(err)?;
        let rh = build_r_hat(n).map_err(err)?;
        for i in 1..=n {
            for s_ in 1..=n {
                for j in 1..=n {
                    for t in 1..=n {
                        ensure(*r.entry(i, s_, j, t) == r_formula(i, s_, j, t), format!("R entry ({i}{s_},{j}{t}) n={n}"))?;
                        // flip composed with R swaps the upper indices
                        ensure(*rh.entry(i, s_, j, t) == r_formula(s_, i, j, t), format!("R_hat entry n={n}"))?;
                    }
                }
            }
        }
        ensure(check_hecke(n).map_err(err)?.holds, format!("Hecke residual nonzero at n={n}"))?;
        ensure(check_braid(n).map_err(err)?.holds, format!("braid residual nonzero at n={n}"))?;
    }
    Ok("all entries match for n=2,3; Hecke and braid residuals are zero".into())
}

/// The six relations displayed for `n = 2`, as `lhs - rhs`.
fn displayed_rea_relations() -> Vec<NcPolynomial> {
    [
        "l[2,2]*l[1,2] - q^2*l[1,2]*l[2,2]",
        "l[1,1]*l[1,2] - l[1,2]*l[1,1] - (q^-2-1)*l[1,2]*l[2,2]",
        "l[1,1]*l[2,2] - l[2,2]*l[1,1]",
        "l[2,1]*l[1,2] - l[1,2]*l[2,1] - (q^-2-1)*l[2,2]*(l[2,2] - l[1,1])",
        "l[2,1]*l[2,2] - q^2*l[2,2]*l[2,1]",
        "l[2,1]*l[1,1] - l[1,1]*l[2,1] - (q^-2-1)*l[2,2]*l[2,1]",
    ]
    .iter()
    .map(|t| p(t))
    .collect()
}

fn criterion_2() -> Outcome {
    let rea = rea_presentation(2).map_err(err)?;
    let displayed = displayed_rea_relations();
    let from_display =
        AlgebraPresentation::from_relations(2, rea.algebra.order().clone(), displayed.clone()).map_err(err)?;
    ensure(from_display.rules() == rea.algebra.rules(), "rule sets differ from the displayed relations")?;
    for rel in displayed.iter() {
        ensure(rea.algebra.normal_form(rel).is_zero(), format!("{rel} does not reduce to 0"))?;
    }
    let frt = frt_presentation(2).map_err(err)?;
    let (_, report) = frt.complete(6).map_err(err)?;
    ensure(report.added.is_empty(), format!("completion added {} rules", report.added.len()))?;
    Ok(format!(
        "6 displayed relations generate the same {} rules; FRT n=2 completion adds 0 rules",
        rea.algebra.num_rules()
    ))
}

fn criterion_3() -> Outcome {
    let mut summary = Vec::new();
    for n in [2usize, 3] {
        let frt = frt_presentation(n).map_err(err)?;
        let rea = rea_presentation(n).map_err(err)?;
        let expected: Vec<usize> = (0..=4).map(|d| binomial_count((n * n) as u64, d)).collect();
        let f: Vec<usize> = (0..=4).map(|d| frt.irreducible_word_count(d)).collect();
        let l: Vec<usize> = (0..=4).map(|d| rea.algebra.irreducible_word_count(d)).collect();
        ensure(f == expected, format!("FRT n={n}: {f:?} vs {expected:?}"))?;
        ensure(l == expected, format!("REA n={n}: {l:?} vs {expected:?}"))?;
        summary.push(format!("n={n} {expected:?}"));
    }
    Ok(summary.join("; "))
}

fn criterion_4() -> Outcome {
    for (n, kmax) in [(2, 3), (3, 2)] {
        let rea = rea_presentation(n).map_err(err)?;
        for k in 1..=kmax {
            let tr = trace_power(k, &rea.algebra).map_err(err)?;
            ensure(check_central(&tr, &rea.algebra).central, format!("Tr_q(L^{k}) not central at n={n}"))?;
        }
    }
    let rea = rea_presentation(2).map_err(err)?;
    let sl = sl_presentation(2).map_err(err)?;
    let beta = ReaCoaction::new(&rea.algebra, &sl.algebra);
    for k in 1..=2 {
        let tr = trace_power(k, &rea.algebra).map_err(err)?;
        ensure(check_coinvariant(&tr, &beta).0, format!("Tr_q(L^{k}) not coinvariant"))?;
    }
    for n in 1..=3 {
        let frt = frt_presentation(n).map_err(err)?;
        let det = frt.normal_form(&quantum_determinant(Family::X, n));
        let x_central = frt.generators().iter().all(|g| {
            let x = NcPolynomial::generator(*g);
            frt.normal_form(&det.mul(&x).sub(&x.mul(&det))).is_zero()
        });
        ensure(x_central, format!("det_q not central at n={n}"))?;
        ensure(comultiply(&det, &frt) == TensorElement::pure(&[det.clone(), det.clone()]), format!("det_q not group-like at n={n}"))?;
        ensure(counit(&det) == RationalScalar::one(), "counit of det_q is not 1")?;
    }
    Ok("trace powers central and coinvariant; det_q central, group-like, counit 1 for n<=3".into())
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    for n in [2, 3] {
        let sl = sl_presentation(n).map_err(err)?;
        let reports = verify_hopf(&sl);
        total += reports.len();
        if let Some(bad) = reports.iter().find(|r| !r.passed) {
            return Err(format!("n={n}: {} residual {}", bad.identity, bad.residual));
        }
    }
    let rea = rea_presentation(2).map_err(err)?;
    let sl = sl_presentation(2).map_err(err)?;
    let beta = ReaCoaction::new(&rea.algebra, &sl.algebra);
    for rel in rea_raw_relations(2) {
        ensure(beta.apply(&rel).is_zero(), format!("beta({rel}) is nonzero"))?;
    }
    Ok(format!("{total} Hopf identities pass; beta kills every n=2 relation"))
}

fn criterion_6() -> Outcome {
    let rea2 = rea_presentation(2).map_err(err)?;
    let q2 = quotient_tables(&nilcone(&rea2).map_err(err)?, 6).hilbert.dims;
    let c2 = classical_oracle(&nilcone(&rea2).map_err(err)?, 6).map_err(err)?.hilbert.dims;
    let odd: Vec<usize> = (0..=6).map(|d| 2 * d + 1).collect();
    ensure(q2 == c2 && c2 == odd, format!("n=2: quantum {q2:?}, classical {c2:?}"))?;
    let rea3 = rea_presentation(3).map_err(err)?;
    let qt3 = nilcone(&rea3).map_err(err)?;
    let q3 = quotient_tables(&qt3, 3).hilbert.dims;
    let c3 = classical_oracle(&qt3, 3).map_err(err)?.hilbert.dims;
    ensure(q3 == c3, format!("n=3: quantum {q3:?}, classical {c3:?}"))?;
    Ok(format!("n=2 {q2:?}; n=3 {q3:?} equals the q=1 table"))
}

fn criterion_7() -> Outcome {
    let rea = rea_presentation(2).map_err(err)?;
    let nil = hilbert(&nilcone(&rea).map_err(err)?, 5);
    let cases = [("J2", 2, vec![]), ("diag(2,3)", 0, vec![s("2"), s("3")]), ("diag(0,5)", 1, vec![s("5")])];
    for (name, r, eig) in cases {
        let xi = XiSpec::new(2, r, eig).map_err(err)?;
        let qt = orbit_quotient_n2(&rea, &xi).map_err(err)?;
        let quantum = hilbert(&qt, 5);
        let classical = classical_oracle(&qt, 5).map_err(err)?.hilbert;
        ensure(quantum == classical, format!("{name}: {:?} vs {:?}", quantum.dims, classical.dims))?;
        if name == "J2" {
            ensure(quantum == nil, "J2 orbit differs from the nilpotent cone")?;
        }
    }
    Ok(format!("three orbits match the q=1 tables, dims {:?}", nil.dims))
}

fn criterion_8() -> Outcome {
    let rea = rea_presentation(2).map_err(err)?;
    let qt = nilcone(&rea).map_err(err)?;
    let quantum = quotient_tables(&qt, 4).weights;
    let classical = classical_oracle(&qt, 4).map_err(err)?.weights;
    for d in 0..=4 {
        ensure(quantum[d] == classical[d], format!("degree {d}: {:?} vs {:?}", quantum[d].mult, classical[d].mult))?;
    }
    Ok("weight multiplicities agree in degrees 0..4".into())
}

fn criterion_9() -> Outcome {
    let rea = rea_presentation(2).map_err(err)?;
    for (c1, c2) in [("0", "0"), ("2", "3"), ("1", "q")] {
        let reports = phi_tau2_identity(&rea.algebra, &s(c1), &s(c2), 4).map_err(err)?;
        ensure(all_passed(&reports), format!("identity fails at ({c1},{c2})"))?;
    }
    // alpha = (q^-1 t) s and beta = q^-2 t^2 / (q + q^-1) - (q^-1 + q^-3) d, coordinatewise
    for (t, d) in [("0", "0"), ("3", "0"), ("0", "2"), ("1/2", "q+1")] {
        let (alpha, beta) = podles_parameters(&s(t), &s(d));
        let z = RationalScalar::zero();
        let want_alpha = ExtendedScalar::new(z.clone(), z.clone(), s(&format!("q^-1*({t})")), z.clone());
        let want_beta = ExtendedScalar::from(s(&format!("q^-2*({t})^2/(q+q^-1) - (q^-1+q^-3)*({d})")));
        ensure(alpha == want_alpha && beta == want_beta, format!("parameters at ({t},{d})"))?;
    }
    let pairs: Vec<(RationalScalar, RationalScalar)> =
        [("0", "0"), ("1", "0"), ("0", "1"), ("2", "3"), ("-1", "q"), ("2", "3"), ("1/(q+1)", "q^2")]
            .iter()
            .map(|(t, d)| (s(t), s(d)))
            .collect();
    let report = parameter_invariance_check(&pairs).map_err(err)?;
    ensure(report.passed() && report.template_fits == Some(true), format!("invariance: {:?}", report.mismatches))?;
    let sphere = sphere_quotient(&s("0"), &s("0")).map_err(err)?.hilbert(5).map_err(err)?;
    let nil = hilbert(&nilcone(&rea).map_err(err)?, 5).dims;
    ensure(sphere == nil, format!("sphere (0,0) {sphere:?} vs nilcone {nil:?}"))?;
    Ok("Phi(tau_2) and Newton identities hold; parameters exact; relations affine in (alpha,beta)".into())
}

fn int_matrix(rows: &[&[i64]]) -> Matrix<RationalScalar> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| RationalScalar::from_int(x)).collect()).collect())
}

fn criterion_10() -> Outcome {
    ensure(is_re_solution(&Matrix::identity(2)).solution, "identity n=2")?;
    ensure(is_re_solution(&Matrix::identity(3)).solution, "identity n=3")?;
    let j2 = int_matrix(&[&[0, 1], &[0, 0]]);
    let j2_displayed = displayed_rea_relations().iter().all(|r| substitute_matrix(r, &j2).is_zero());
    ensure(is_re_solution(&j2).solution == j2_displayed, "J2 verdict disagrees with the displayed relations")?;
    let j3 = int_matrix(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    ensure(!is_re_solution(&j3).solution, "J3 accepted")?;
    ensure(!is_re_solution(&int_matrix(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 4]])).solution, "diag(J2, 4) accepted")?;
    ensure(!is_re_solution(&int_matrix(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]])).solution, "diag(1,2,3) accepted")?;
    let mut rng = StdRng::seed_from_u64(7);
    let scalars = ["2", "-3", "q", "q^-2+1", "1/(q+2)"];
    for k in 0..40 {
        let n = 2 + k % 2;
        let zero_corner = k % 4 == 0;
        let draws: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-3..=3)).collect();
        let b = Matrix::from_fn(n, |r, c| {
            if zero_corner && r + 1 == n && c + 1 == n {
                RationalScalar::zero()
            } else {
                RationalScalar::from_int(draws[r * n + c])
            }
        });
        let c = s(scalars[rng.gen_range(0..scalars.len())]);
        let base = is_re_solution(&b);
        let scaled = is_re_solution(&b.scale(&c));
        ensure(base.solution == scaled.solution, "scaling changed the verdict")?;
        ensure(scaled.residual.matrix == base.residual.matrix.scale(&c.mul(&c)), "residual is not quadratic")?;
        // at q = 1 the braiding is the flip and any constant matrix commutes with itself
        ensure(residual_vanishes_at_one(&b).map_err(err)?, format!("residual of {b:?} survives at q=1"))?;
    }
    Ok(format!(
        "identity yes; J2 {} (same as the displayed relations); J3, diag(J2,4), diag(1,2,3) no; 40 samples scale quadratically and vanish at q=1",
        if j2_displayed { "yes" } else { "no" }
    ))
}

/// Order of vanishing at `q = 1` and the value of the deflated polynomial
/// there; `coeffs[k]` multiplies `q^k`.
fn deflate_at_one(mut coeffs: Vec<i64>) -> (usize, i64) {
    let mut order = 0;
    loop {
        let value: i64 = coeffs.iter().sum();
        if value != 0 || coeffs.iter().all(|&c| c == 0) {
            return (order, value);
        }
        // synthetic division by (q - 1)
        let mut quotient = vec![0; coeffs.len() - 1];
        let mut carry = 0;
        for k in (1..coeffs.len()).rev() {
            carry += coeffs[k];
            quotient[k - 1] = carry;
        }
        coeffs = quotient;
        order += 1;
    }
}

fn poly_text(coeffs: &[i64]) -> String {
    let terms: Vec<String> = coeffs.iter().enumerate().map(|(k, c)| format!("({c})*q^{k}")).collect();
    terms.join(" + ")
}

/// Value of a commutative polynomial at a matrix point.
fn eval_comm(poly: &qhs_core::classical::CommPolynomial, vars: &[GeneratorId], m: &[[i64; 3]; 3]) -> BigRational {
    let mut acc = BigRational::zero();
    for (e, c) in poly.terms.iter() {
        let mut term = c.clone();
        for (k, g) in vars.iter().enumerate() {
            for _ in 0..e[k] {
                term *= BigRational::from_integer(m[g.row() - 1][g.col() - 1].into());
            }
        }
        acc += term;
    }
    acc
}

fn random_sl(rng: &mut StdRng, n: usize) -> [[i64; 3]; 3] {
    let mut m = [[0i64; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for _ in 0..4 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        let f = rng.gen_range(-2..=2);
        for c in 0..n {
            m[a][c] += f * m[b][c];
        }
    }
    m
}

fn criterion_11() -> Outcome {
    for n in [2, 3] {
        ensure(specializes_to_commutative(&frt_presentation(n).map_err(err)?).map_err(err)?, format!("FRT n={n}"))?;
        let rea = rea_presentation(n).map_err(err)?;
        ensure(specializes_to_commutative(&rea.algebra).map_err(err)?, format!("REA n={n}"))?;
        let sl = sl_presentation(n).map_err(err)?.algebra;
        let mut rng = StdRng::seed_from_u64(n as u64);
        let points: Vec<_> = (0..6).map(|_| random_sl(&mut rng, n)).collect();
        for rule in sl.rules() {
            let poly = abelianize(&rule.relation(), sl.generators()).map_err(err)?;
            for m in points.iter() {
                ensure(eval_comm(&poly, sl.generators(), m).is_zero(), format!("SL n={n}: {rule} at q=1 misses det = 1"))?;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(11);
    let mut poles = 0;
    for _ in 0..60 {
        let num: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        let mut den: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        if den.iter().all(|&c| c == 0) {
            den[0] = 1;
        }
        let x = s(&format!("({})/({})", poly_text(&num), poly_text(&den)));
        let (on, vn) = deflate_at_one(num.clone());
        let (od, vd) = deflate_at_one(den);
        let numerator_zero = num.iter().all(|&c| c == 0);
        match x.specialize_at_one() {
            Err(Error::NotInK(_)) => {
                ensure(!numerator_zero && od > on, format!("{x}: spurious pole"))?;
                poles += 1;
            }
            Ok(v) => {
                let want = if numerator_zero || on > od {
                    BigRational::zero()
                } else {
                    BigRational::new(vn.into(), vd.into())
                };
                ensure(numerator_zero || od <= on, format!("{x}: missed pole"))?;
                ensure(v == want, format!("{x}: value {v} vs {want}"))?;
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    ensure(matches!(s("1/(q-1)").specialize_at_one(), Err(Error::NotInK(_))), "1/(q-1)")?;
    ensure(s("(q^2-1)/(q-1)").specialize_at_one() == Ok(BigRational::from_integer(2.into())), "(q^2-1)/(q-1)")?;
    Ok(format!("ambient relations become commutators (SL: plus det = 1); {poles}/60 sampled scalars have poles"))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("R-matrix structure", criterion_1),
        ("presentation correctness", criterion_2),
        ("PBW counts of ambient algebras", criterion_3),
        ("centrality and coinvariance", criterion_4),
        ("Hopf verification", criterion_5),
        ("nilpotent cone flatness", criterion_6),
        ("orbit quotient flatness (n=2)", criterion_7),
        ("weight multiplicities", criterion_8),
        ("n=2 identities and quantum spheres", criterion_9),
        ("reflection equation characters", criterion_10),
        ("q=1 specialization", criterion_11),
    ];
    let mut failures = 0;
    let mut summary = BTreeMap::new();
    for (k, (name, run)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match &outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", k + 1);
            }
        }
        summary.insert(k + 1, outcome.is_ok());
    }
    println!("acceptance: {} of {} criteria pass", summary.values().filter(|v| **v).count(), summary.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
