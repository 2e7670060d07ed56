//! The `n = 2` orbit quotients `L_q(M)/(Tr_q(L) = t, Φ(τ₂) = d)` rewritten
//! in the sphere coordinates `x₋₁ = i·l₂₁`, `x₁ = i·l₁₂`,
//! `x₀ = (q+q⁻¹)^{-1/2}(l₁₁ - l₂₂)`.

mod extended;

pub use extended::ExtendedScalar;

use serde_json::{json, Value};

use crate::braided::{phi_tau2, rea_presentation, rea_raw_relations};
use crate::error::Result;
use crate::freealg::{AlgebraPresentation, GeneratorId, MonomialOrder, NcPolynomial, RewriteRule, Word};
use crate::scalars::{Field, RationalScalar};

/// Degree cap for completing sphere presentations.
pub const SPHERE_COMPLETION_CAP: usize = 5;

pub type SpherePolynomial = NcPolynomial<ExtendedScalar>;

/// Generator precedence `x₁ < x₀ < x₋₁`.
pub fn sphere_order() -> MonomialOrder {
    MonomialOrder::new(vec![GeneratorId::sphere(1), GeneratorId::sphere(0), GeneratorId::sphere(-1)])
        .expect("distinct generators")
}

fn ext(c: &RationalScalar) -> ExtendedScalar {
    ExtendedScalar::from(c.clone())
}

fn q_pow(k: i32) -> ExtendedScalar {
    ext(&RationalScalar::q_pow(k))
}

/// Images of `l₁₁, l₁₂, l₂₁, l₂₂` once `l₁₁` is eliminated through
/// `q·l₁₁ + q⁻¹·l₂₂ = t`.
pub fn l_images(t: &RationalScalar) -> [SpherePolynomial; 4] {
    let x = |k: i8| SpherePolynomial::generator(GeneratorId::sphere(k));
    let minus_i = ExtendedScalar::i().neg();
    let qq = q_pow(1).add(&q_pow(-1));
    // l₁₁ - l₂₂ = (q+q⁻¹)·s·x₀, because 1/s = (q+q⁻¹)·s.
    let diff = x(0).scale(&qq.mul(&ExtendedScalar::s()));
    let inv_qq = qq.inv().expect("q + q^-1 is nonzero");
    let l22 = SpherePolynomial::constant(ext(t)).sub(&diff.scale(&q_pow(1))).scale(&inv_qq);
    let l11 = l22.add(&diff);
    [l11, x(1).scale(&minus_i), x(-1).scale(&minus_i), l22]
}

fn to_sphere(p: &NcPolynomial, images: &[SpherePolynomial; 4]) -> SpherePolynomial {
    p.map_coeffs(ext).substitute(|g| match (g.row(), g.col()) {
        (1, 1) => images[0].clone(),
        (1, 2) => images[1].clone(),
        (2, 1) => images[2].clone(),
        _ => images[3].clone(),
    })
}

/// `L_q^{t,d}` in sphere coordinates.
#[derive(Clone, Debug)]
pub struct SphereQuotient {
    pub t: RationalScalar,
    pub d: RationalScalar,
    /// Inter-reduced defining relations, one rule per relation.
    pub presentation: AlgebraPresentation<ExtendedScalar>,
}

impl SphereQuotient {
    /// The defining relations `lhs - rhs`, in rule order.
    pub fn relations(&self) -> Vec<SpherePolynomial> {
        self.presentation.rules().iter().map(RewriteRule::relation).collect()
    }

    /// A confluent presentation through `cap`, for normal forms and counting.
    pub fn completed(&self, cap: usize) -> Result<AlgebraPresentation<ExtendedScalar>> {
        Ok(self.presentation.complete(cap)?.0)
    }

    /// Dimensions of the associated graded algebra in degrees `0..=max_deg`.
    pub fn hilbert(&self, max_deg: usize) -> Result<Vec<usize>> {
        let a = self.completed(max_deg.max(SPHERE_COMPLETION_CAP))?;
        Ok((0..=max_deg).map(|d| a.irreducible_word_count(d)).collect())
    }

    pub fn to_json(&self) -> Value {
        let (alpha, beta) = podles_parameters(&self.t, &self.d);
        json!({
            "t": self.t.to_string(),
            "d": self.d.to_string(),
            "alpha": alpha.to_string(),
            "beta": beta.to_string(),
            "relations": self
                .presentation
                .rules()
                .iter()
                .map(|r| format!("{} = {}", r.lhs, r.rhs))
                .collect::<Vec<_>>(),
        })
    }
}

/// Eliminates `l₁₁`, changes to sphere coordinates and imposes `Φ(τ₂) = d`.
pub fn sphere_quotient(t: &RationalScalar, d: &RationalScalar) -> Result<SphereQuotient> {
    let rea = rea_presentation(2)?;
    let images = l_images(t);
    let mut rels: Vec<SpherePolynomial> = rea_raw_relations(2).iter().map(|r| to_sphere(r, &images)).collect();
    let phi = phi_tau2(&rea.algebra)?;
    rels.push(to_sphere(&phi.sub(&NcPolynomial::constant(d.clone())), &images));
    let presentation = AlgebraPresentation::from_relations(2, sphere_order(), rels)?;
    Ok(SphereQuotient { t: t.clone(), d: d.clone(), presentation })
}

/// `α = q⁻¹·s·t` and `β = α² - (q⁻¹ + q⁻³)·d`.
pub fn podles_parameters(t: &RationalScalar, d: &RationalScalar) -> (ExtendedScalar, ExtendedScalar) {
    let alpha = q_pow(-1).mul(&ExtendedScalar::s()).mul(&ext(t));
    let beta = alpha.mul(&alpha).sub(&q_pow(-1).add(&q_pow(-3)).mul(&ext(d)));
    (alpha, beta)
}

/// `a₀ + a₁·α + a₂·β` for each coefficient of each relation.
#[derive(Clone, Debug)]
pub struct AffineTemplate {
    /// `(lhs, [(word, [a₀, a₁, a₂])])` per relation.
    pub relations: Vec<(Word, Vec<(Word, [ExtendedScalar; 3])>)>,
}

impl AffineTemplate {
    /// The relations the template predicts at `(α, β)`.
    pub fn instantiate(&self, alpha: &ExtendedScalar, beta: &ExtendedScalar) -> Vec<SpherePolynomial> {
        self.relations
            .iter()
            .map(|(lhs, rhs)| {
                let mut p = SpherePolynomial::word(lhs.clone());
                for (w, [a0, a1, a2]) in rhs {
                    let c = a0.add(&a1.mul(alpha)).add(&a2.mul(beta));
                    p.add_term(w.clone(), c.neg());
                }
                p
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.relations
                .iter()
                .map(|(lhs, rhs)| {
                    json!({
                        "lhs": lhs.to_string(),
                        "rhs": rhs.iter().map(|(w, a)| json!({
                            "word": w.to_string(),
                            "const": a[0].to_string(),
                            "alpha": a[1].to_string(),
                            "beta": a[2].to_string(),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

/// Outcome of comparing sphere presentations across parameter pairs.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    /// Pairs with equal `(α, β)` produced identical relation sets.
    pub equal_parameters_agree: bool,
    /// Pairs with different `(α, β)` produced different relation sets.
    pub distinct_parameters_differ: bool,
    /// Affine fit from three pairs with affinely independent `(α, β)`, if any.
    pub template: Option<AffineTemplate>,
    /// Every pair's relations equal the fitted template at its `(α, β)`;
    /// `None` when the samples do not determine a template.
    pub template_fits: Option<bool>,
    pub mismatches: Vec<String>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.equal_parameters_agree && self.distinct_parameters_differ && self.template_fits != Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": if self.passed() { "pass" } else { "fail" },
            "equal_parameters_agree": self.equal_parameters_agree,
            "distinct_parameters_differ": self.distinct_parameters_differ,
            "template_fits": self.template_fits,
            "template": self.template.as_ref().map(AffineTemplate::to_json),
            "mismatches": self.mismatches,
        })
    }
}

/// Solves a square system over `ExtendedScalar`; `None` when singular.
fn solve(mut m: Vec<Vec<ExtendedScalar>>, mut rhs: Vec<ExtendedScalar>) -> Option<Vec<ExtendedScalar>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].inv()?;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].mul(&inv);
                for c in col..n {
                    let v = m[r][c].sub(&f.mul(&m[col][c]));
                    m[r][c] = v;
                }
                rhs[r] = rhs[r].sub(&f.mul(&rhs[col]));
            }
        }
    }
    Some((0..n).map(|k| rhs[k].mul(&m[k][k].inv().expect("nonzero pivot"))).collect())
}

fn fit_template(samples: &[(ExtendedScalar, ExtendedScalar, &SphereQuotient)]) -> Option<AffineTemplate> {
    let design = |k: usize| vec![ExtendedScalar::one(), samples[k].0.clone(), samples[k].1.clone()];
    let n = samples.len();
    let triple = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
        .find(|t| solve(t.iter().map(|&k| design(k)).collect(), vec![ExtendedScalar::zero(); 3]).is_some())?;
    let rules: Vec<Vec<RewriteRule<ExtendedScalar>>> =
        triple.iter().map(|&k| samples[k].2.presentation.rules()).collect();
    let mut relations = Vec::new();
    for (idx, rule) in rules[0].iter().enumerate() {
        if rules.iter().any(|rs| rs.len() != rules[0].len() || rs[idx].lhs != rule.lhs) {
            return None;
        }
        let mut words: Vec<_> = rules.iter().flat_map(|rs| rs[idx].rhs.terms().map(|(w, _)| w.clone())).collect();
        words.sort();
        words.dedup();
        let mut rhs = Vec::new();
        for w in words {
            let values = rules.iter().map(|rs| rs[idx].rhs.coeff(&w)).collect();
            let a = solve(triple.iter().map(|&k| design(k)).collect(), values)?;
            rhs.push((w, [a[0].clone(), a[1].clone(), a[2].clone()]));
        }
        relations.push((rule.lhs.clone(), rhs));
    }
    Some(AffineTemplate { relations })
}

/// Checks that the relations of `L_q^{t,d}` depend on `(t, d)` only through
/// `(α, β)`: equal parameters give equal relations, different parameters
/// different ones, and all relation coefficients are affine in `(α, β)`
/// with one common template.
pub fn parameter_invariance_check(pairs: &[(RationalScalar, RationalScalar)]) -> Result<InvarianceReport> {
    let spheres = pairs.iter().map(|(t, d)| sphere_quotient(t, d)).collect::<Result<Vec<_>>>()?;
    let samples: Vec<_> = pairs
        .iter()
        .zip(spheres.iter())
        .map(|((t, d), s)| {
            let (a, b) = podles_parameters(t, d);
            (a, b, s)
        })
        .collect();
    let mut report = InvarianceReport {
        equal_parameters_agree: true,
        distinct_parameters_differ: true,
        template: None,
        template_fits: None,
        mismatches: Vec::new(),
    };
    for (k, x) in samples.iter().enumerate() {
        for y in samples[k + 1..].iter() {
            let same_params = x.0 == y.0 && x.1 == y.1;
            let same_rels = x.2.relations() == y.2.relations();
            if same_params && !same_rels {
                report.equal_parameters_agree = false;
                report.mismatches.push(format!(
                    "(t,d) = ({},{}) and ({},{}) share (alpha,beta) but differ",
                    x.2.t, x.2.d, y.2.t, y.2.d
                ));
            }
            if !same_params && same_rels {
                report.distinct_parameters_differ = false;
                report.mismatches.push(format!(
                    "(t,d) = ({},{}) and ({},{}) have different (alpha,beta) but equal relations",
                    x.2.t, x.2.d, y.2.t, y.2.d
                ));
            }
        }
    }
    report.template = fit_template(&samples);
    if let Some(template) = report.template.as_ref() {
        report.template_fits = Some(true);
        for (alpha, beta, s) in samples.iter() {
            if template.instantiate(alpha, beta) != s.relations() {
                report.template_fits = Some(false);
                report.mismatches.push(format!("(t,d) = ({},{}) is off the affine template", s.t, s.d));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RationalScalar {
        s.parse().unwrap()
    }

    #[test]
    fn parameters() {
        let (a, b) = podles_parameters(&r("0"), &r("0"));
        assert!(a.is_zero() && b.is_zero());
        let (a, b) = podles_parameters(&r("2"), &r("0"));
        assert_eq!(a.to_string(), "(2*q^-1)*s");
        assert_eq!(b, a.mul(&a));
        let (a, b) = podles_parameters(&r("0"), &r("3"));
        assert!(a.is_zero());
        assert_eq!(b, ExtendedScalar::from(r("-3*q^-1-3*q^-3")));
    }

    #[test]
    fn relations_are_weight_homogeneous() {
        let s = sphere_quotient(&r("1"), &r("2")).unwrap();
        let rels = s.relations();
        assert_eq!(rels.len(), 4);
        for p in rels {
            assert!(p.homogeneous_weight(2).is_some(), "{p}");
        }
    }
}
