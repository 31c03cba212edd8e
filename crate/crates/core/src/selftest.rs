//! The acceptance suite, shared by the `selftest` command and the
//! `acceptance` test target.
//!
//! Every criterion is deterministic: cases come from fixed seeds.

use std::time::{Duration, Instant};

use rand::Rng;

use crate::covariant::{
    build_covariant_system, covariants_of, materialize_projectors, split_covariants_over_extension,
    verify_covariants,
};
use crate::decompose::{
    fine_decompose, multiplicative_jc, sn_decompose, sn_newton_oracle, unbreakable_components,
    verify_fine, verify_frobenius_system, verify_sn,
};
use crate::error::{Error, Result};
use crate::generate::{Generator, Shape, SvdKind};
use crate::matfun::{
    f_equivalence_classes, fine_of_image, same_structure, schwerdtfeger_eval, sylvester_eval,
    verify_apply,
};
use crate::matrix::Matrix;
use crate::poly::{factor_rational, FactoredMinPoly, Poly};
use crate::realclosed::{
    complete_mjc, eigenvalue_norms, svd, svd_corruptions, symmetric_spectral_check, verify_dsu,
    verify_svd_uniqueness,
};
use crate::report::Report;
use crate::scalar::{Field, MultiQuad, NumberField, NumberFieldElement, Rational, Sign};

type M = Matrix<Rational>;
type P = Poly<Rational>;

/// Case counts for one run.
#[derive(Clone, Debug)]
pub struct Scale {
    pub sn_matrices: usize,
    pub mutations: usize,
    pub function_pairs: usize,
    pub dsu_matrices: usize,
    pub svd_matrices: usize,
    pub scalar_cases: usize,
}

impl Scale {
    pub fn full() -> Self {
        Scale {
            sn_matrices: 200,
            mutations: 50,
            function_pairs: 100,
            dsu_matrices: 50,
            svd_matrices: 50,
            scalar_cases: 1000,
        }
    }

    pub fn quick() -> Self {
        Scale {
            sn_matrices: 25,
            mutations: 10,
            function_pairs: 15,
            dsu_matrices: 10,
            svd_matrices: 12,
            scalar_cases: 150,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {}: {} ({}; {:.2} s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

const SN_SEED: u64 = 0x5eed_0001;
const MUTATION_SEED: u64 = 0x5eed_0002;
const FUNCTION_SEED: u64 = 0x5eed_0003;
const DSU_SEED: u64 = 0x5eed_0004;
const SVD_SEED: u64 = 0x5eed_0005;
const SCALAR_SEED: u64 = 0x5eed_0006;

/// Time limits attached to criteria 1 and 8.
pub const SN_TIME_LIMIT: Duration = Duration::from_secs(60);
pub const TOTAL_TIME_LIMIT: Duration = Duration::from_secs(300);

fn failure_names(r: &Report) -> String {
    r.failures()
        .map(|c| c.name.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

fn timed(
    id: u8,
    title: &'static str,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionResult {
    let start = Instant::now();
    let (pass, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        title,
        pass,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Structured matrices shared by criteria 1–3.
pub fn sn_corpus(count: usize) -> Vec<M> {
    let mut g = Generator::new(SN_SEED);
    (0..count)
        .map(|_| g.structured(&Shape::default()).matrix)
        .collect()
}

pub fn criterion_sn(scale: &Scale) -> CriterionResult {
    let mut r = timed(1, "SN correctness and uniqueness", || {
        let corpus = sn_corpus(scale.sn_matrices);
        for (k, m) in corpus.iter().enumerate() {
            let sn = sn_decompose(m)?;
            let report = verify_sn(m, &sn);
            if !report.pass() {
                return Ok((false, format!("matrix {k}: {}", failure_names(&report))));
            }
        }
        Ok((true, format!("{} matrices", corpus.len())))
    });
    if r.pass && r.elapsed >= SN_TIME_LIMIT {
        r.pass = false;
        r.detail = format!("{}; exceeded {} s", r.detail, SN_TIME_LIMIT.as_secs());
    }
    r
}

pub fn criterion_covariants(scale: &Scale) -> CriterionResult {
    timed(2, "covariant axioms", || {
        let corpus = sn_corpus(scale.sn_matrices);
        for (k, m) in corpus.iter().enumerate() {
            let report = verify_covariants(&covariants_of(m)?, m);
            if !report.pass() {
                return Ok((false, format!("matrix {k}: {}", failure_names(&report))));
            }
        }
        Ok((true, format!("{} systems", corpus.len())))
    })
}

pub fn criterion_fine(scale: &Scale) -> CriterionResult {
    timed(3, "fine decomposition conditions", || {
        let corpus = sn_corpus(scale.sn_matrices);
        for (k, m) in corpus.iter().enumerate() {
            let fd = fine_decompose(m)?;
            let report = verify_fine(m, &fd);
            if !report.pass() {
                return Ok((false, format!("matrix {k}: {}", failure_names(&report))));
            }
        }
        // Mutation cases: swap two distinct nilpotent payloads.
        let mut g = Generator::new(MUTATION_SEED);
        let mut detected = 0;
        let mut cases = 0;
        let mut attempts = 0;
        while cases < scale.mutations {
            attempts += 1;
            if attempts > 100 * scale.mutations.max(1) {
                return Ok((false, format!("only {cases} mutation cases found")));
            }
            let m = g.structured(&Shape::default()).matrix;
            let fd = fine_decompose(&m)?;
            let pairs: Vec<(usize, usize)> = (0..fd.components.len())
                .flat_map(|a| (a + 1..fd.components.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| fd.components[a].n != fd.components[b].n)
                .collect();
            if pairs.is_empty() {
                continue;
            }
            let (a, b) = pairs[g.rng().gen_range(0..pairs.len())];
            cases += 1;
            if !verify_fine(&m, &fd.with_swapped_nilpotents(a, b)).pass() {
                detected += 1;
            }
        }
        Ok((
            detected == cases,
            format!(
                "{} matrices pass; {detected}/{cases} swapped decompositions detected",
                corpus.len()
            ),
        ))
    })
}

pub fn criterion_functions(scale: &Scale) -> CriterionResult {
    timed(4, "Schwerdtfeger pipeline equality", || {
        let mut g = Generator::new(FUNCTION_SEED);
        for k in 0..scale.function_pairs {
            let m = g.structured(&Shape::default()).matrix;
            let f = g.polynomial(10);
            let report = verify_apply(&f, &m, &schwerdtfeger_eval(&f, &m)?);
            if !report.pass() {
                return Ok((false, format!("pair {k}: {}", failure_names(&report))));
            }
        }
        Ok((true, format!("{} pairs", scale.function_pairs)))
    })
}

pub fn criterion_dsu(scale: &Scale) -> CriterionResult {
    timed(5, "complete multiplicative decomposition", || {
        let mut g = Generator::new(DSU_SEED);
        for k in 0..scale.dsu_matrices {
            let m = g.structured(&Shape::real_closed()).matrix;
            let dsu = complete_mjc(&m)?;
            let report = verify_dsu(&m, &dsu);
            if !report.pass() {
                return Ok((false, format!("matrix {k}: {}", failure_names(&report))));
            }
        }
        Ok((true, format!("{} matrices", scale.dsu_matrices)))
    })
}

pub fn criterion_svd(scale: &Scale) -> CriterionResult {
    timed(6, "singular value decomposition", || {
        let mut g = Generator::new(SVD_SEED);
        let kinds = [
            SvdKind::General,
            SvdKind::Nilpotent,
            SvdKind::Symmetric,
            SvdKind::Rotation,
        ];
        let mut corruptions = 0;
        let mut normal = 0;
        for k in 0..scale.svd_matrices {
            let kind = kinds[k % kinds.len()];
            let n = g.rng().gen_range(2..=4);
            let case = g.svd_case(n, kind);
            let s = svd(&case.matrix)?;
            let report = verify_svd_uniqueness(&case.matrix, &s);
            if !report.pass() {
                return Ok((
                    false,
                    format!("case {k} ({kind:?}): {}", failure_names(&report)),
                ));
            }
            let squares: Vec<MultiQuad> = case
                .sigma_squares
                .iter()
                .map(|l| MultiQuad::from_rational(l.clone()))
                .collect();
            let got: Vec<MultiQuad> = s.terms.iter().map(|t| t.sigma.mul_ref(&t.sigma)).collect();
            if got != squares {
                return Ok((
                    false,
                    format!("case {k} ({kind:?}): σ² differ from the constructed spectrum"),
                ));
            }
            for (name, bad) in svd_corruptions(&s) {
                let expected = match name {
                    "swapped" => "descending",
                    "scaled" => "partial-isometry",
                    _ => "reassembly",
                };
                let r = verify_svd_uniqueness(&case.matrix, &bad);
                if r.pass() || r.find(expected).is_some_and(|c| c.pass) {
                    return Ok((
                        false,
                        format!("case {k}: {name} corruption not detected by {expected}"),
                    ));
                }
                corruptions += 1;
            }
            if case.is_normal() {
                normal += 1;
                let sigmas: Vec<MultiQuad> = s.terms.iter().map(|t| t.sigma.clone()).collect();
                if sigmas != eigenvalue_norms(&case.matrix)? {
                    return Ok((
                        false,
                        format!("case {k}: singular values differ from eigenvalue norms"),
                    ));
                }
            }
        }
        Ok((
            corruptions > 0,
            format!(
                "{} matrices, {corruptions} corruptions detected, {normal} normal",
                scale.svd_matrices
            ),
        ))
    })
}

pub fn criterion_examples() -> CriterionResult {
    timed(7, "worked-example table", || {
        let table = worked_examples();
        let failed: Vec<&str> = table
            .iter()
            .filter(|(_, f)| !f())
            .map(|(n, _)| *n)
            .collect();
        if failed.is_empty() {
            Ok((true, format!("{} examples", table.len())))
        } else {
            Ok((false, format!("failed: {}", failed.join(", "))))
        }
    })
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(
        rng.gen_range(-6i64..=6).into(),
        rng.gen_range(1i64..=4).into(),
    )
}

fn random_multiquad(rng: &mut impl Rng, labels: &[i64]) -> MultiQuad {
    let mut terms = Vec::new();
    for &l in labels {
        if rng.gen_bool(0.6) {
            terms.push((l, random_rational(rng)));
        }
    }
    MultiQuad::from_terms(terms).expect("squarefree labels")
}

fn random_nf(rng: &mut impl Rng, field: &NumberField) -> NumberFieldElement {
    let coeffs: Vec<Rational> = (0..field.degree()).map(|_| random_rational(rng)).collect();
    field.element(&Poly::new(coeffs))
}

fn field_axioms<F: Field>(a: &F, b: &F, c: &F) -> bool {
    let assoc_add = a.add_ref(b).add_ref(c) == a.add_ref(&b.add_ref(c));
    let assoc_mul = a.mul_ref(b).mul_ref(c) == a.mul_ref(&b.mul_ref(c));
    let comm = a.mul_ref(b) == b.mul_ref(a) && a.add_ref(b) == b.add_ref(a);
    let distrib = a.mul_ref(&b.add_ref(c)) == a.mul_ref(b).add_ref(&a.mul_ref(c));
    let identities =
        a.add_ref(&F::zero()) == *a && a.mul_ref(&F::one()) == *a && a.sub_ref(a).is_zero();
    let inverse = a.is_zero() || a.mul_ref(&a.inv_ref().unwrap()).is_one();
    assoc_add && assoc_mul && comm && distrib && identities && inverse
}

pub fn criterion_scalars(scale: &Scale) -> CriterionResult {
    timed(8, "scalar-layer properties", || {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64_compat(SCALAR_SEED);
        let complex_labels = [1, 2, 3, 6, -1, -2, -3, -6];
        let real_labels = [1, 2, 3, 5, 6, 10, 15, 30];
        let field = NumberField::new(&P::from_i64s(&[-2, 0, 0, 1]))?;
        let conj_field = NumberField::new(&P::from_i64s(&[1, 1, 1]))?;
        for k in 0..scale.scalar_cases {
            let (a, b, c) = (
                random_rational(&mut rng),
                random_rational(&mut rng),
                random_rational(&mut rng),
            );
            if !field_axioms(&a, &b, &c) {
                return Ok((false, format!("case {k}: rational field axioms")));
            }
            let (x, y, z) = (
                random_multiquad(&mut rng, &complex_labels),
                random_multiquad(&mut rng, &complex_labels),
                random_multiquad(&mut rng, &complex_labels),
            );
            if !field_axioms(&x, &y, &z) {
                return Ok((false, format!("case {k}: multi-quadratic field axioms")));
            }
            if x.mul_ref(&y).conjugate() != x.conjugate().mul_ref(&y.conjugate())
                || x.add_ref(&y).conjugate() != x.conjugate().add_ref(&y.conjugate())
                || x.conjugate().conjugate() != x
            {
                return Ok((
                    false,
                    format!("case {k}: conjugation is not an automorphism"),
                ));
            }
            let (u, v) = (
                random_multiquad(&mut rng, &real_labels),
                random_multiquad(&mut rng, &real_labels),
            );
            let (su, sv) = (u.sign()?, v.sign()?);
            let ok = u.mul_ref(&v).sign()? == su * sv
                && u.mul_ref(&u).sign()? != Sign::Negative
                && ((su == Sign::Zero) == u.is_zero());
            if !ok {
                return Ok((false, format!("case {k}: sign consistency")));
            }
            let (p, q, r) = (
                random_nf(&mut rng, &field),
                random_nf(&mut rng, &field),
                random_nf(&mut rng, &field),
            );
            if !field_axioms(&p, &q, &r) {
                return Ok((false, format!("case {k}: number-field axioms")));
            }
            let lin = build_linear(&a, &p, &b, &q);
            if field.trace(&lin) != &a * field.trace(&p) + &b * field.trace(&q) {
                return Ok((false, format!("case {k}: trace is not linear")));
            }
            let w = random_nf(&mut rng, &conj_field);
            if conj_field.trace(&w) != conj_field.multiplication_matrix(&w).trace() {
                return Ok((
                    false,
                    format!("case {k}: trace differs from the multiplication-matrix trace"),
                ));
            }
        }
        Ok((true, format!("{} cases per property", scale.scalar_cases)))
    })
}

fn build_linear(
    a: &Rational,
    p: &NumberFieldElement,
    b: &Rational,
    q: &NumberFieldElement,
) -> NumberFieldElement {
    let a = NumberFieldElement::from_rational(a);
    let b = NumberFieldElement::from_rational(b);
    a.mul_ref(p).add_ref(&b.mul_ref(q))
}

trait SeedCompat {
    fn seed_from_u64_compat(seed: u64) -> Self;
}

impl SeedCompat for rand_chacha::ChaCha8Rng {
    fn seed_from_u64_compat(seed: u64) -> Self {
        rand::SeedableRng::seed_from_u64(seed)
    }
}

/// Runs every criterion. Criterion 8 also requires the whole run to finish
/// within [`TOTAL_TIME_LIMIT`].
pub fn run(scale: &Scale) -> Vec<CriterionResult> {
    let start = Instant::now();
    let mut out = vec![
        criterion_sn(scale),
        criterion_covariants(scale),
        criterion_fine(scale),
        criterion_functions(scale),
        criterion_dsu(scale),
        criterion_svd(scale),
        criterion_examples(),
    ];
    let mut scalars = criterion_scalars(scale);
    let total = start.elapsed();
    if scalars.pass && total >= TOTAL_TIME_LIMIT {
        scalars.pass = false;
        scalars.detail = format!(
            "{}; whole run exceeded {} s",
            scalars.detail,
            TOTAL_TIME_LIMIT.as_secs()
        );
    } else {
        scalars.detail = format!("{}; whole run {:.1} s", scalars.detail, total.as_secs_f64());
    }
    out.push(scalars);
    out
}

pub fn to_report(results: &[CriterionResult]) -> Report {
    let mut r = Report::new("selftest");
    for c in results {
        r.check(
            &format!("criterion-{}", c.id),
            c.title,
            c.pass,
            c.detail.clone(),
        );
    }
    r
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn p(c: &[i64]) -> P {
    P::from_i64s(c)
}

fn mq_terms(terms: &[(i64, i64, i64)]) -> MultiQuad {
    MultiQuad::from_terms(terms.iter().map(|&(l, n, d)| (l, q(n, d)))).unwrap()
}

fn quad_field(c: &[i64]) -> NumberField {
    NumberField::new(&p(c)).unwrap()
}

/// A named example whose expected value is asserted directly.
pub type Example = (&'static str, fn() -> bool);

/// Every directly-asserted example, as a table of named predicates.
pub fn worked_examples() -> Vec<Example> {
    vec![
        ("mq_invert rational", || {
            MultiQuad::from_i64(2).invert() == Ok(MultiQuad::from_rational(q(1, 2)))
        }),
        ("mq_invert sqrt2", || {
            MultiQuad::sqrt_of_squarefree(2).invert() == Ok(mq_terms(&[(2, 1, 2)]))
        }),
        ("mq_sign zero", || {
            MultiQuad::zero().sign() == Ok(Sign::Zero)
        }),
        ("mq_sign sqrt2 - 1", || {
            mq_terms(&[(2, 1, 1), (1, -1, 1)]).sign() == Ok(Sign::Positive)
        }),
        ("mq_conjugate rational", || {
            MultiQuad::from_i64(3).conjugate() == MultiQuad::from_i64(3)
        }),
        ("mq_conjugate i", || {
            MultiQuad::sqrt_of_squarefree(-1).conjugate()
                == MultiQuad::sqrt_of_squarefree(-1).neg_ref()
        }),
        ("mq_conjugate mixed", || {
            mq_terms(&[(1, 1, 1), (-1, 2, 1), (2, 1, 1)]).conjugate()
                == mq_terms(&[(1, 1, 1), (-1, -2, 1), (2, 1, 1)])
        }),
        ("mq_sqrt_rational 4", || {
            MultiQuad::sqrt_rational(&q(4, 1)) == Ok(MultiQuad::from_i64(2))
        }),
        ("mq_sqrt_rational 2", || {
            MultiQuad::sqrt_rational(&q(2, 1)) == Ok(MultiQuad::sqrt_of_squarefree(2))
        }),
        ("mq_sqrt_rational 8/9", || {
            MultiQuad::sqrt_rational(&q(8, 9)) == Ok(mq_terms(&[(2, 2, 3)]))
        }),
        ("nf_invert Y", || {
            let f = quad_field(&[-2, 0, 1]);
            f.generator().invert() == Ok(f.element(&P::new(vec![q(0, 1), q(1, 2)])))
        }),
        ("nf_invert 3", || {
            let f = quad_field(&[1, 0, 1]);
            f.constant(&q(3, 1)).invert() == Ok(f.constant(&q(1, 3)))
        }),
        ("nf_trace Y", || {
            let f = quad_field(&[-2, 0, 1]);
            f.trace(&f.generator()) == q(0, 1)
        }),
        ("nf_trace 3", || {
            let f = quad_field(&[-2, 0, 1]);
            f.trace(&f.constant(&q(3, 1))) == q(6, 1)
        }),
        ("nf_trace Y^2", || {
            let f = quad_field(&[-2, 0, 1]);
            f.trace(&f.generator().mul_ref(&f.generator())) == q(4, 1)
        }),
        ("ext_gcd (X, X-1)", || {
            Poly::ext_gcd(&p(&[0, 1]), &p(&[-1, 1])) == Ok((P::one(), P::one(), p(&[-1])))
        }),
        ("ext_gcd (X^2, X^2)", || {
            Poly::ext_gcd(&p(&[0, 0, 1]), &p(&[0, 0, 1]))
                == Ok((p(&[0, 0, 1]), P::one(), P::zero()))
        }),
        ("squarefree X^2(X-1)", || {
            p(&[0, 0, -1, 1]).squarefree_part()
                == Ok((p(&[0, -1, 1]), vec![(p(&[-1, 1]), 1), (p(&[0, 1]), 2)]))
                || p(&[0, 0, -1, 1]).squarefree_part()
                    == Ok((p(&[0, -1, 1]), vec![(p(&[0, 1]), 2), (p(&[-1, 1]), 1)]))
        }),
        ("squarefree X^2-2", || {
            p(&[-2, 0, 1]).squarefree_part().map(|r| r.0) == Ok(p(&[-2, 0, 1]))
        }),
        ("squarefree (X^2-2)^2(X+1)", || {
            let f = &p(&[-2, 0, 1]).pow(2) * &p(&[1, 1]);
            f.squarefree_part().map(|r| r.0) == Ok(&p(&[-2, 0, 1]) * &p(&[1, 1]))
        }),
        ("factor X^2-1", || {
            factor_rational(&p(&[-1, 0, 1])).map(|f| f.factors)
                == Ok(vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)])
        }),
        ("factor X^4-4", || {
            factor_rational(&p(&[-4, 0, 0, 0, 1])).map(|f| f.factors)
                == Ok(vec![(p(&[-2, 0, 1]), 1), (p(&[2, 0, 1]), 1)])
        }),
        ("factor X^2+1", || {
            factor_rational(&p(&[1, 0, 1])).map(|f| f.factors) == Ok(vec![(p(&[1, 0, 1]), 1)])
        }),
        ("hasse (X^3, 2)", || {
            p(&[0, 0, 0, 1]).hasse_derivative(2) == p(&[0, 3])
        }),
        ("hasse (f, 0)", || {
            p(&[5, -1, 2]).hasse_derivative(0) == p(&[5, -1, 2])
        }),
        ("hasse (X^2+X+1, 1)", || {
            p(&[1, 1, 1]).hasse_derivative(1) == p(&[1, 2])
        }),
        ("trace_coeffwise Y*X + 3", || {
            let f = quad_field(&[-2, 0, 1]);
            Poly::new(vec![f.constant(&q(3, 1)), f.generator()]).trace_coeffwise(&f) == Ok(p(&[6]))
        }),
        ("trace_coeffwise (Y^2/2)*X", || {
            let f = quad_field(&[-2, 0, 1]);
            let y2 = f
                .generator()
                .mul_ref(&f.generator())
                .mul_ref(&f.constant(&q(1, 2)));
            Poly::new(vec![NumberFieldElement::zero(), y2]).trace_coeffwise(&f) == Ok(p(&[0, 2]))
        }),
        ("minimal_polynomial I2", || {
            M::identity(2).minimal_polynomial() == p(&[-1, 1])
        }),
        ("minimal_polynomial nilpotent", || {
            M::from_i64_rows(&[&[0, 1], &[0, 0]]).minimal_polynomial() == p(&[0, 0, 1])
        }),
        ("minimal_polynomial companion", || {
            let f = &p(&[-2, 0, 1]) * &p(&[-1, 1]);
            M::companion(&f).minimal_polynomial() == f
        }),
        ("kernel_basis I2", || {
            M::identity(2).kernel_basis().is_empty()
        }),
        ("kernel_basis zero", || {
            M::zeros(2).kernel_basis().len() == 2
        }),
        ("kernel_basis ones", || {
            let k = M::from_i64_rows(&[&[1, 1], &[1, 1]]).kernel_basis();
            k.len() == 1 && k[0][0] == -k[0][1].clone() && !k[0][0].is_zero()
        }),
        ("horner X^2 at Jordan block", || {
            M::from_i64_rows(&[&[1, 1], &[0, 1]]).horner_eval(&p(&[0, 0, 1]))
                == M::from_i64_rows(&[&[1, 2], &[0, 1]])
        }),
        ("horner X-1 at I2", || {
            M::identity(2).horner_eval(&p(&[-1, 1])).is_zero()
        }),
        ("horner minpoly at companion", || {
            M::companion(&p(&[-2, 0, 1]))
                .horner_eval(&p(&[-2, 0, 1]))
                .is_zero()
        }),
        ("inverse I3", || {
            M::identity(3).inverse() == Ok(M::identity(3))
        }),
        ("inverse 2I2", || {
            M::scalar(2, q(2, 1)).inverse() == Ok(M::scalar(2, q(1, 2)))
        }),
        ("inverse Jordan block", || {
            M::from_i64_rows(&[&[1, 1], &[0, 1]]).inverse()
                == Ok(M::from_i64_rows(&[&[1, -1], &[0, 1]]))
        }),
        ("covariants X(X-1)", || {
            let sys = build_covariant_system(&factor_rational(&p(&[0, -1, 1])).unwrap()).unwrap();
            sys.e_polys == vec![p(&[0, 1]), p(&[1, -1])]
                && sys.generics[0].c.map(|c| c.residue().coeff(0)) == p(&[0, 1])
                && sys.generics[1].c.map(|c| c.residue().coeff(0)) == p(&[1, -1])
        }),
        ("covariants (X-2)^2", || {
            let sys =
                build_covariant_system(&FactoredMinPoly::from_factors(vec![(p(&[-2, 1]), 2)]))
                    .unwrap();
            sys.e_polys == vec![P::one()]
                && sys.s_polys == vec![p(&[2])]
                && sys.n_polys == vec![p(&[-2, 1])]
        }),
        ("projectors diag(1,0)", || {
            let d = M::diagonal(&[q(1, 1), q(0, 1)]);
            materialize_projectors(&covariants_of(&d).unwrap(), &d)
                == Ok(vec![
                    M::diagonal(&[q(1, 1), q(0, 1)]),
                    M::diagonal(&[q(0, 1), q(1, 1)]),
                ])
        }),
        ("projectors I2", || {
            let id = M::identity(2);
            materialize_projectors(&covariants_of(&id).unwrap(), &id) == Ok(vec![M::identity(2)])
        }),
        ("split X^2+1 over Q(i)", || {
            let sys = build_covariant_system(&factor_rational(&p(&[1, 0, 1])).unwrap()).unwrap();
            split_covariants_over_extension(&sys, 0, -1).is_ok_and(|s| {
                s[1].eigenvalue == s[0].eigenvalue.conjugate()
                    && s[1].covariant == s[0].covariant.map(|c| c.conjugate())
            })
        }),
        ("split X-3 rejected", || {
            let sys = build_covariant_system(&factor_rational(&p(&[-3, 1])).unwrap()).unwrap();
            split_covariants_over_extension(&sys, 0, 2).err() == Some(Error::DoesNotSplit)
        }),
        ("sn Jordan block", || {
            sn_decompose(&M::from_i64_rows(&[&[1, 1], &[0, 1]])).is_ok_and(|d| {
                d.s == M::identity(2) && d.n == M::from_i64_rows(&[&[0, 1], &[0, 0]])
            })
        }),
        ("sn nilpotent", || {
            let m = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
            sn_decompose(&m).is_ok_and(|d| d.s.is_zero() && d.n == m)
        }),
        ("newton oracle semisimple", || {
            let d = M::diagonal(&[q(1, 1), q(-2, 1)]);
            sn_newton_oracle(&d) == Ok(d)
        }),
        ("newton oracle Jordan block", || {
            sn_newton_oracle(&M::from_i64_rows(&[&[1, 1], &[0, 1]])) == Ok(M::identity(2))
        }),
        ("fine block diagonal", || {
            let c = M::companion(&p(&[-2, 0, 1]));
            let j = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
            let m = M::block_diag(&[c.clone(), j]);
            fine_decompose(&m).is_ok_and(|fd| {
                let by = |f: &P| {
                    fd.components
                        .iter()
                        .find(|x| &x.factor == f)
                        .cloned()
                        .unwrap()
                };
                let quad = by(&p(&[-2, 0, 1]));
                let lin = by(&p(&[-1, 1]));
                quad.s == M::block_diag(&[c.clone(), M::zeros(2)])
                    && lin.s == M::block_diag(&[M::zeros(2), M::identity(2)])
                    && quad.n.is_zero()
                    && lin.n == M::block_diag(&[M::zeros(2), M::from_i64_rows(&[&[0, 1], &[0, 0]])])
            })
        }),
        ("fine nilpotent", || {
            let m = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
            fine_decompose(&m).is_ok_and(|fd| {
                fd.components.len() == 1 && fd.components[0].s.is_zero() && fd.components[0].n == m
            })
        }),
        ("verify_fine contract", || {
            let m = M::companion(&(&p(&[-2, 0, 1]) * &p(&[0, 0, 1])));
            verify_fine(&m, &fine_decompose(&m).unwrap()).pass()
        }),
        ("verify_fine nilpotent", || {
            let m = M::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
            verify_fine(&m, &fine_decompose(&m).unwrap()).pass()
        }),
        ("unbreakable diag(1,-1)", || {
            unbreakable_components(&M::diagonal(&[q(1, 1), q(-1, 1)])).is_ok_and(|v| {
                v.len() == 2
                    && v.contains(&M::diagonal(&[q(1, 1), q(0, 1)]))
                    && v.contains(&M::diagonal(&[q(0, 1), q(-1, 1)]))
            })
        }),
        ("unbreakable companion", || {
            let c = M::companion(&p(&[-2, 0, 1]));
            unbreakable_components(&c) == Ok(vec![c])
        }),
        ("unbreakable diag(1,2,0)", || {
            unbreakable_components(&M::diagonal(&[q(1, 1), q(2, 1), q(0, 1)])).is_ok_and(|v| {
                v.len() == 2
                    && v.contains(&M::diagonal(&[q(1, 1), q(0, 1), q(0, 1)]))
                    && v.contains(&M::diagonal(&[q(0, 1), q(2, 1), q(0, 1)]))
            })
        }),
        ("mjc [[2,2],[0,2]]", || {
            multiplicative_jc(&M::from_i64_rows(&[&[2, 2], &[0, 2]])).is_ok_and(|d| {
                d.s == M::scalar(2, q(2, 1)) && d.u == M::from_i64_rows(&[&[1, 1], &[0, 1]])
            })
        }),
        ("mjc semisimple", || {
            multiplicative_jc(&M::companion(&p(&[-2, 0, 1]))).is_ok_and(|d| d.u == M::identity(2))
        }),
        ("frobenius pass", || {
            let r = verify_frobenius_system(
                &[
                    M::diagonal(&[q(1, 1), q(0, 1)]),
                    M::diagonal(&[q(0, 1), q(1, 1)]),
                ],
                &[q(1, 1), q(2, 1)],
            );
            r.pass()
                && r.find("rank-criterion")
                    .unwrap()
                    .witness
                    .contains("zero eigenvalue: false")
        }),
        ("frobenius rank deficit", || {
            let r = verify_frobenius_system(&[M::diagonal(&[q(1, 1), q(0, 1)])], &[q(5, 1)]);
            r.pass()
                && r.find("rank-criterion")
                    .unwrap()
                    .witness
                    .contains("zero eigenvalue: true")
        }),
        ("frobenius non-idempotent", || {
            let r = verify_frobenius_system(
                &[
                    M::diagonal(&[q(1, 1), q(0, 1)]),
                    M::from_i64_rows(&[&[0, 1], &[0, 0]]),
                ],
                &[q(1, 1), q(2, 1)],
            );
            !r.find("orthogonal-idempotents").unwrap().pass
        }),
        ("schwerdtfeger X^2 Jordan block", || {
            schwerdtfeger_eval(&p(&[0, 0, 1]), &M::from_i64_rows(&[&[1, 1], &[0, 1]])).is_ok_and(
                |r| {
                    r.value == M::from_i64_rows(&[&[1, 2], &[0, 1]])
                        && r.semisimple_part == M::identity(2)
                        && r.nilpotent_part == M::from_i64_rows(&[&[0, 2], &[0, 0]])
                },
            )
        }),
        ("schwerdtfeger X^2 companion", || {
            schwerdtfeger_eval(&p(&[0, 0, 1]), &M::companion(&p(&[-2, 0, 1]))).is_ok_and(|r| {
                r.value == M::scalar(2, q(2, 1))
                    && r.semisimple_part == M::scalar(2, q(2, 1))
                    && r.nilpotent_part.is_zero()
            })
        }),
        ("sylvester X+1 diag(1,2)", || {
            sylvester_eval(&p(&[1, 1]), &M::diagonal(&[q(1, 1), q(2, 1)]))
                == Ok(M::diagonal(&[q(2, 1), q(3, 1)]))
        }),
        ("sylvester X^2 companion", || {
            sylvester_eval(&p(&[0, 0, 1]), &M::companion(&p(&[-2, 0, 1])))
                == Ok(M::scalar(2, q(2, 1)))
        }),
        ("sylvester not semisimple", || {
            sylvester_eval(&p(&[0, 1]), &M::from_i64_rows(&[&[1, 1], &[0, 1]]))
                == Err(Error::NotSemisimple)
        }),
        ("f-equivalence X^2 merges ±1", || {
            f_equivalence_classes(&p(&[0, 0, 1]), &factor_rational(&p(&[-1, 0, 1])).unwrap())
                .is_ok_and(|c| c.len() == 1 && c[0].image_minpoly == p(&[-1, 1]))
        }),
        ("f-equivalence identity", || {
            let fac = factor_rational(&(&p(&[-1, 0, 1]) * &p(&[1, 0, 1]))).unwrap();
            f_equivalence_classes(&P::x(), &fac).is_ok_and(|c| c.len() == fac.len())
        }),
        ("fine_of_image X^2 diag(1,-1)", || {
            fine_of_image(&p(&[0, 0, 1]), &M::diagonal(&[q(1, 1), q(-1, 1)]))
                .is_ok_and(|fd| fd.components.len() == 1 && fd.components[0].s == M::identity(2))
        }),
        ("fine_of_image identity", || {
            let m = M::companion(&(&p(&[-2, 0, 1]) * &p(&[1, -2, 1])));
            same_structure(
                &fine_of_image(&P::x(), &m).unwrap(),
                &fine_decompose(&m).unwrap(),
            )
        }),
        ("cmjc rotation", || {
            let m = M::from_i64_rows(&[&[0, -1], &[1, 0]]);
            complete_mjc(&m).is_ok_and(|d| {
                d.delta == Matrix::identity(2) && d.sigma == m.lift() && d.u == Matrix::identity(2)
            })
        }),
        ("cmjc [[2,2],[0,2]]", || {
            complete_mjc(&M::from_i64_rows(&[&[2, 2], &[0, 2]])).is_ok_and(|d| {
                d.delta == Matrix::scalar(2, MultiQuad::from_i64(2))
                    && d.sigma == Matrix::identity(2)
                    && d.u == M::from_i64_rows(&[&[1, 1], &[0, 1]]).lift()
            })
        }),
        ("svd diag(3,-2)", || {
            svd(&M::diagonal(&[q(3, 1), q(-2, 1)])).is_ok_and(|s| {
                s.terms.len() == 2
                    && s.terms[0].sigma == MultiQuad::from_i64(3)
                    && s.terms[1].sigma == MultiQuad::from_i64(2)
                    && s.terms[0].a == M::diagonal(&[q(1, 1), q(0, 1)]).lift()
                    && s.terms[1].a == M::diagonal(&[q(0, 1), q(-1, 1)]).lift()
            })
        }),
        ("svd nilpotent", || {
            let a = M::from_i64_rows(&[&[0, 1], &[0, 0]]);
            svd(&a).is_ok_and(|s| {
                s.terms.len() == 1
                    && s.terms[0].sigma == MultiQuad::one()
                    && s.terms[0].a == a.lift()
            })
        }),
        ("svd uniqueness contract", || {
            let a = M::diagonal(&[q(3, 1), q(-2, 1)]);
            verify_svd_uniqueness(&a, &svd(&a).unwrap()).pass()
        }),
        ("svd uniqueness swapped", || {
            let a = M::diagonal(&[q(3, 1), q(-2, 1)]);
            let bad = svd_corruptions(&svd(&a).unwrap());
            !verify_svd_uniqueness(&a, &bad[0].1)
                .find("descending")
                .unwrap()
                .pass
        }),
        ("spectral diag(1,2)", || {
            let r = symmetric_spectral_check(&M::diagonal(&[q(1, 1), q(2, 1)]));
            r.pass() && r.checks.len() == 2
        }),
        ("spectral rotation", || {
            let r = symmetric_spectral_check(&M::from_i64_rows(&[&[0, -1], &[1, 0]]));
            r.pass() && r.checks.len() == 2
        }),
        ("spectral not normal", || {
            let r = symmetric_spectral_check(&M::from_i64_rows(&[&[1, 1], &[0, 1]]));
            r.checks.is_empty() && r.notes.iter().any(|n| n.contains("skipped"))
        }),
        ("sn identity report", || {
            let id = M::identity(2);
            sn_decompose(&id).is_ok_and(|d| d.s == id && d.n.is_zero() && verify_sn(&id, &d).pass())
        }),
    ]
}
