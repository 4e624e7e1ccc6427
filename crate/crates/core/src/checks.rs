//! Samplewise verification of the unit-set axioms and their consequences in
//! the valuation model.
//!
//! Every checker draws `n` rounds from its own seeded stream. Each round
//! evaluates a handful of named claims; a false claim is recorded as a
//! [`Failure`] carrying the round index and the offending inputs. Claims
//! about fixed elements (such as `±1` or the scalar 2) are evaluated once.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::quat::{wedderburn_conjugate, Quaternion};
use crate::sampler::{QuatSampler, SamplerConfig};
use crate::valuation::{classify, v2, Cell, ValuationModel};
use crate::{Rational, RationalQuaternion};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub sample: u64,
    pub claim: String,
    pub inputs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub lemma: String,
    pub samples: u64,
    pub seed: u64,
    /// Number of evaluations per claim.
    pub claims: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures_for(&self, claim: &str) -> usize {
        self.failures.iter().filter(|f| f.claim == claim).count()
    }
}

struct Recorder {
    report: CheckReport,
    sample: u64,
}

impl Recorder {
    fn new(lemma: &str, cfg: &SamplerConfig, samples: u64) -> Self {
        Self {
            report: CheckReport {
                lemma: lemma.to_string(),
                samples,
                seed: cfg.seed,
                claims: BTreeMap::new(),
                failures: Vec::new(),
                witnesses: BTreeMap::new(),
            },
            sample: 0,
        }
    }

    fn claim(&mut self, name: &str, ok: bool, inputs: &[&RationalQuaternion]) {
        *self.report.claims.entry(name.to_string()).or_default() += 1;
        if !ok {
            self.report.failures.push(Failure {
                sample: self.sample,
                claim: name.to_string(),
                inputs: inputs.iter().map(|q| q.to_string()).collect(),
            });
        }
    }

    fn finish(self) -> CheckReport {
        self.report
    }
}

const MODEL: ValuationModel = ValuationModel;

fn scalar(n: i64) -> RationalQuaternion {
    Quaternion::from_scalar(crate::ratio(n, 1))
}

fn inv(q: &RationalQuaternion) -> RationalQuaternion {
    q.inv().expect("sampled elements are nonzero")
}

fn run(
    lemma: &str,
    stream: u64,
    cfg: &SamplerConfig,
    n: u64,
    mut round: impl FnMut(&mut Recorder, &mut QuatSampler),
) -> CheckReport {
    let mut rec = Recorder::new(lemma, cfg, n);
    let mut sampler = cfg.sampler(stream);
    for i in 0..n {
        rec.sample = i;
        round(&mut rec, &mut sampler);
    }
    rec.finish()
}

/// The three defining axioms of the normal subset `𝕹 = U ∪ M`: it holds
/// `±1`, it is closed under products (and every element is a product, via
/// `x = x·1`), and for `n̄ ∈ 𝔑̄`, `n̄ + 1 ∈ 𝕹` while `n̄ − 1 ≠ 0`.
pub fn check_axioms(cfg: &SamplerConfig, n: u64) -> CheckReport {
    let one = scalar(1);
    let minus_one = scalar(-1);
    let mut first = true;
    run("axioms", 1, cfg, n, |rec, s| {
        if std::mem::take(&mut first) {
            rec.claim(
                "plus_minus_one_in_n",
                MODEL.in_n(&one) && MODEL.in_n(&minus_one),
                &[&one, &minus_one],
            );
        }
        let (p, q) = (s.in_n(), s.in_n());
        rec.claim(
            "n_closed_under_products",
            MODEL.in_n(&(p.clone() * q.clone())),
            &[&p, &q],
        );
        rec.claim(
            "n_products_cover_n",
            p.clone() * one.clone() == p && MODEL.in_n(&one),
            &[&p],
        );
        let nb = s.in_cell(Cell::NBar);
        rec.claim(
            "nbar_plus_one_in_n",
            MODEL.in_n(&(nb.clone() + one.clone())),
            &[&nb],
        );
        rec.claim(
            "nbar_minus_one_nonzero",
            !(nb.clone() - one.clone()).is_zero(),
            &[&nb],
        );
    })
}

/// The unit group `U = {n ∈ 𝕹 : n⁻¹ ∈ 𝕹}`: normality, `-1 ∈ U`,
/// `n̄ + U = U`, `n̄⁻¹ ∈ 𝕹`, the inverse swap between `M` and `𝔑̄`,
/// unit translates of the cells, and closure of `M` and `𝔑̄` under products.
pub fn check_units(cfg: &SamplerConfig, n: u64) -> CheckReport {
    let minus_one = scalar(-1);
    let mut first = true;
    run("units", 2, cfg, n, |rec, s| {
        if std::mem::take(&mut first) {
            rec.claim("minus_one_in_u", MODEL.in_u(&minus_one), &[&minus_one]);
        }
        let x = s.any_cell();
        let by_definition = MODEL.in_n(&x) && MODEL.in_n(&inv(&x));
        rec.claim(
            "u_is_n_with_inverse_in_n",
            by_definition == MODEL.in_u(&x),
            &[&x],
        );

        let g = s.nonzero();
        let u = s.in_cell(Cell::U);
        let conj = inv(&g) * u.clone() * g.clone();
        rec.claim("u_closed_under_conjugation", MODEL.in_u(&conj), &[&u, &g]);

        let v = s.in_cell(Cell::U);
        rec.claim(
            "u_is_a_group",
            MODEL.in_u(&(u.clone() * v.clone())) && MODEL.in_u(&inv(&u)),
            &[&u, &v],
        );

        let nb = s.in_cell(Cell::NBar);
        rec.claim(
            "nbar_plus_u_in_u",
            MODEL.in_u(&(nb.clone() + u.clone())),
            &[&nb, &u],
        );
        // u = n̄ + (u − n̄) with u − n̄ ∈ U gives U ⊆ n̄ + U.
        rec.claim(
            "u_minus_nbar_in_u",
            MODEL.in_u(&(u.clone() - nb.clone())),
            &[&u, &nb],
        );
        rec.claim("nbar_inverse_in_n", MODEL.in_n(&inv(&nb)), &[&nb]);

        let t = s.outside_u();
        rec.claim(
            "m_iff_inverse_in_nbar",
            MODEL.in_m(&t) == MODEL.in_nbar(&inv(&t)),
            &[&t],
        );

        let m = s.in_cell(Cell::M);
        let u2 = s.in_cell(Cell::U);
        let translates_ok = MODEL.in_m(&(u.clone() * m.clone()))
            && MODEL.in_m(&(m.clone() * u.clone()))
            && MODEL.in_nbar(&(u.clone() * nb.clone()))
            && MODEL.in_nbar(&(nb.clone() * u.clone()))
            && MODEL.in_m(&(u.clone() * m.clone() * u2.clone()))
            && MODEL.in_nbar(&(u.clone() * nb.clone() * u2.clone()));
        rec.claim("u_translates_cells", translates_ok, &[&u, &m, &nb, &u2]);

        let (nb2, m2) = (s.in_cell(Cell::NBar), s.in_cell(Cell::M));
        rec.claim(
            "nbar_closed_under_products",
            MODEL.in_nbar(&(nb.clone() * nb2.clone())),
            &[&nb, &nb2],
        );
        rec.claim(
            "m_closed_under_products",
            MODEL.in_m(&(m.clone() * m2.clone())),
            &[&m, &m2],
        );
    })
}

/// Coset comparisons on `Γ = N/U`, phrased through the cells exactly as
/// the order is defined: `Ua = Ub` iff `ab⁻¹ ∈ U`, and `Ua < Ub` iff
/// `Ua ≠ Ub` and `ba⁻¹ ∈ 𝔑̄`.
struct CosetOrder;

impl CosetOrder {
    fn eq(a: &RationalQuaternion, b: &RationalQuaternion) -> bool {
        MODEL.in_u(&(a.clone() * inv(b)))
    }

    fn lt(a: &RationalQuaternion, b: &RationalQuaternion) -> bool {
        !Self::eq(a, b) && MODEL.in_nbar(&(b.clone() * inv(a)))
    }

    fn le(a: &RationalQuaternion, b: &RationalQuaternion) -> bool {
        Self::eq(a, b) || Self::lt(a, b)
    }
}

/// The linear order on `Γ`: agreement with `w`, linearity, transitivity,
/// independence of coset representatives, monotone products, and the
/// "sum is the minimum" rules for two terms, equal cosets, and `k` terms
/// with a unique minimum.
pub fn check_order(cfg: &SamplerConfig, n: u64) -> CheckReport {
    type O = CosetOrder;
    run("order", 3, cfg, n, |rec, s| {
        let (a, b, c) = (s.any_cell(), s.any_cell(), s.any_cell());
        let (wa, wb) = (MODEL.w(&a).unwrap(), MODEL.w(&b).unwrap());
        rec.claim(
            "order_matches_valuation",
            O::lt(&a, &b) == (wa < wb) && O::eq(&a, &b) == (wa == wb),
            &[&a, &b],
        );
        let trichotomy = [O::lt(&a, &b), O::eq(&a, &b), O::lt(&b, &a)]
            .iter()
            .filter(|&&t| t)
            .count();
        rec.claim("order_linear", trichotomy == 1, &[&a, &b]);
        rec.claim(
            "order_transitive",
            !(O::lt(&a, &b) && O::lt(&b, &c)) || O::lt(&a, &c),
            &[&a, &b, &c],
        );

        let (u, u2) = (s.in_cell(Cell::U), s.in_cell(Cell::U));
        let ua = u.clone() * a.clone();
        let bu = b.clone() * u2.clone();
        rec.claim(
            "order_independent_of_representative",
            O::lt(&a, &b) == O::lt(&ua, &bu) && O::eq(&a, &b) == O::eq(&ua, &bu),
            &[&a, &b, &u, &u2],
        );

        // Arrange a ≤ c and b ≤ d, then compare ab with cd.
        let (mut p, mut r) = (a.clone(), c.clone());
        if !O::le(&p, &r) {
            std::mem::swap(&mut p, &mut r);
        }
        let (mut q, mut t) = (b.clone(), s.any_cell());
        if !O::le(&q, &t) {
            std::mem::swap(&mut q, &mut t);
        }
        rec.claim(
            "order_monotone_products",
            O::le(&(p.clone() * q.clone()), &(r.clone() * t.clone())),
            &[&p, &q, &r, &t],
        );

        // Two terms in distinct cosets: the sum lies in the smaller coset.
        let mut y = s.any_cell();
        while O::eq(&a, &y) {
            y = s.any_cell();
        }
        let sum = a.clone() + y.clone();
        let smaller = if O::lt(&a, &y) { &a } else { &y };
        let wmin = MODEL.w(&a).unwrap().min(MODEL.w(&y).unwrap());
        rec.claim(
            "sum_of_distinct_cosets_is_min",
            !sum.is_zero() && O::eq(&sum, smaller) && MODEL.w(&sum) == Some(wmin),
            &[&a, &y],
        );

        // Same coset: x and xu.
        let x2 = a.clone() * s.in_cell(Cell::U);
        let same = a.clone() + x2.clone();
        rec.claim(
            "sum_within_coset_not_below",
            same.is_zero() || O::le(&a, &same),
            &[&a, &x2],
        );

        // k terms, one strictly below all others.
        let k = s.rng().gen_range(2..=6);
        let low = s.any_cell();
        let mut terms = vec![low.clone()];
        for _ in 1..k {
            let above = low.clone() * s.in_cell(Cell::NBar) * s.in_cell(Cell::U);
            terms.push(above);
        }
        terms.shuffle(s.rng());
        let total = terms
            .iter()
            .cloned()
            .fold(RationalQuaternion::zero(), |acc, t| acc + t);
        let refs: Vec<&RationalQuaternion> = terms.iter().collect();
        rec.claim(
            "unique_minimum_sum",
            !total.is_zero() && O::eq(&total, &low),
            &refs,
        );
    })
}

/// Powers landing in `U·F^#`. Membership is decided by parity of `w`
/// (`α = 2^{w/2}` gives `q/α ∈ U`; odd `w` admits no scalar since scalars
/// have even `w`). For `n ∉ U·F^#`, `n²` always lands there, so the least
/// such power never exceeds the degree, 2.
pub fn check_power(cfg: &SamplerConfig, n: u64) -> CheckReport {
    run("power", 4, cfg, n, |rec, s| {
        let q = s.outside_u();
        let wq = MODEL.w(&q).unwrap();
        let decided = MODEL.unit_times_scalar(&q);
        let alpha = s.nonzero_rational();
        let alpha_q = Quaternion::from_scalar(alpha.clone());
        let w_alpha = MODEL.w(&alpha_q).unwrap();
        rec.claim("scalar_valuation_even", w_alpha % 2 == 0, &[&alpha_q]);
        let sound = match &decided {
            Some(a) => MODEL.in_u(&q.scale(&(Rational::ONE / a))),
            None => !MODEL.in_u(&q.scale(&(Rational::ONE / alpha))),
        };
        rec.claim(
            "uf_membership_by_parity",
            sound && decided.is_some() == (wq % 2 == 0),
            &[&q, &alpha_q],
        );
        let r = (1..=2u32).find(|&r| MODEL.unit_times_scalar(&q.pow(r)).is_some());
        rec.claim("power_within_degree", r.is_some(), &[&q]);
    })
}

/// Norm and commutator consequences: `nrd(n) ∈ U ⟹ n ∈ U`, commutators
/// lie in `U`, and the scalar 2 witnesses that `F^#` is not inside `U`.
pub fn check_norms(cfg: &SamplerConfig, n: u64) -> CheckReport {
    let two = scalar(2);
    let mut first = true;
    run("norms", 5, cfg, n, |rec, s| {
        if std::mem::take(&mut first) {
            rec.claim(
                "scalar_two_outside_u",
                classify(&two) == Ok(Cell::NBar),
                &[&two],
            );
            rec.report
                .witnesses
                .insert("scalar_outside_u".into(), "2".into());
        }
        for q in [s.any_cell(), s.in_cell(Cell::U)] {
            let norm = Quaternion::from_scalar(q.nrd());
            rec.claim(
                "unit_norm_implies_unit",
                !MODEL.in_u(&norm) || MODEL.in_u(&q),
                &[&q],
            );
        }
        let (g, h) = (s.nonzero(), s.nonzero());
        let comm = Quaternion::commutator(&g, &h).unwrap();
        rec.claim("commutator_in_u", MODEL.in_u(&comm), &[&g, &h]);
    })
}

/// Model sanity: inverses, multiplicativity of the norm, additivity of
/// `v₂` and `w`, the ultrametric inequality, and the cell/sign agreement.
pub fn check_valuation(cfg: &SamplerConfig, n: u64) -> CheckReport {
    run("valuation", 6, cfg, n, |rec, s| {
        let (p, q) = (s.nonzero(), s.nonzero());
        rec.claim(
            "inverse_cancels",
            p.clone() * inv(&p) == RationalQuaternion::one(),
            &[&p],
        );
        rec.claim(
            "norm_multiplicative",
            (p.clone() * q.clone()).nrd() == p.nrd() * q.nrd(),
            &[&p, &q],
        );
        let (r, t) = (s.nonzero_rational(), s.nonzero_rational());
        rec.claim(
            "v2_additive",
            v2(&(r.clone() * t.clone())).unwrap() == v2(&r).unwrap() + v2(&t).unwrap(),
            &[&Quaternion::from_scalar(r), &Quaternion::from_scalar(t)],
        );
        let (wp, wq) = (MODEL.w(&p).unwrap(), MODEL.w(&q).unwrap());
        rec.claim(
            "w_additive",
            MODEL.w(&(p.clone() * q.clone())) == Some(wp + wq),
            &[&p, &q],
        );
        // Cell-targeted operands exercise the inequality across valuations.
        let (x, y) = (s.any_cell(), s.any_cell());
        for (a, b) in [(&p, &q), (&x, &y)] {
            let sum = a.clone() + b.clone();
            let ok = sum.is_zero()
                || MODEL.w(&sum).unwrap() >= MODEL.w(a).unwrap().min(MODEL.w(b).unwrap());
            rec.claim("ultrametric", ok, &[a, b]);
        }
        let cell_ok = matches!(
            (classify(&p), MODEL.w(&p).unwrap().signum()),
            (Ok(Cell::U), 0) | (Ok(Cell::M), -1) | (Ok(Cell::NBar), 1)
        );
        rec.claim("cell_matches_sign", cell_ok, &[&p]);
    })
}

/// The reduced norm as a product of two conjugates, on random noncentral
/// quaternions: the solved `g` satisfies `g q = conj(q) g`,
/// `g⁻¹ q g = conj(q)`, and `q · (g⁻¹ q g) = nrd(q)`, all exactly.
pub fn check_factorization(cfg: &SamplerConfig, n: u64) -> CheckReport {
    run("factorization", 7, cfg, n, |rec, s| {
        let q = s.noncentral();
        match wedderburn_conjugate(&q) {
            Ok(wit) if !wit.scalar && !wit.conjugator.is_zero() => {
                let g = wit.conjugator;
                rec.claim(
                    "conjugator_solves_system",
                    g.clone() * q.clone() == q.conj() * g.clone(),
                    &[&q, &g],
                );
                let conj = q.conjugate_by(&g).unwrap();
                rec.claim("conjugate_is_bar", conj == q.conj(), &[&q, &g]);
                rec.claim(
                    "norm_is_product_of_conjugates",
                    q.clone() * conj == Quaternion::from_scalar(q.nrd()),
                    &[&q, &g],
                );
            }
            _ => rec.claim("conjugator_solves_system", false, &[&q]),
        }
    })
}

/// Every checker, in a fixed order.
pub fn check_all(cfg: &SamplerConfig, n: u64) -> Vec<CheckReport> {
    let checkers: [fn(&SamplerConfig, u64) -> CheckReport; 7] = [
        check_axioms,
        check_units,
        check_order,
        check_power,
        check_norms,
        check_valuation,
        check_factorization,
    ];
    use rayon::prelude::*;
    checkers.par_iter().map(|f| f(cfg, n)).collect()
}
