//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use commgraph::checks::check_factorization;
use commgraph::corpus::CorpusEntry;
use commgraph::driver::{self, build_group, RunOptions};
use commgraph::oracle::Apsp;
use commgraph::quat::wedderburn_conjugate;
use commgraph::sampler::SamplerConfig;
use commgraph::{CommGraph, Distance, Group, Quaternion, Verdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn entry(name: &str) -> CorpusEntry {
    name.parse().expect("corpus entry")
}

fn group(name: &str) -> Group {
    build_group(&entry(name), None).expect("group builds")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

const ORACLE_CORPUS: [&str; 17] = [
    "z6", "s3", "s4", "d12", "q8", "a4", "a5", "psl2_4", "psl2_5", "psl2_7", "psl2_8", "psl2_9",
    "psl2_11", "psl2_13", "a6", "s5", "s6",
];

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for name in ORACLE_CORPUS {
        let diff = driver::run_oracle_diff(&entry(name), None, None).map_err(|e| e.to_string())?;
        ensure(diff.is_empty(), || {
            format!(
                "{name}: {} mismatches, diameter {:?} vs {:?}, components {} vs {}",
                diff.mismatch_count,
                diff.engine_diameter,
                diff.oracle_diameter,
                diff.engine_components,
                diff.oracle_components
            )
        })?;
        ensure(diff.pairs_checked > 0, || {
            format!("{name}: no pairs compared")
        })?;
        pairs += diff.pairs_checked;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("suite took {elapsed:.1?}, limit 60s")
    })?;
    Ok(format!(
        "{} groups, {pairs} pairs, empty diffs, {elapsed:.1?}",
        ORACLE_CORPUS.len()
    ))
}

fn structural_goldens() -> Outcome {
    let quiet = RunOptions {
        max_order: None,
        timing: false,
    };
    let golden: [(&str, usize, Distance, Option<&str>); 3] = [
        ("q8", 1, Distance::Finite(2), None),
        ("s3", 4, Distance::Infinite, None),
        ("a5", 21, Distance::Infinite, Some("DIAM_GT4")),
    ];
    for (name, components, diameter, verdict) in golden {
        let r = driver::run_analyze(&entry(name), &quiet).map_err(|e| e.to_string())?;
        ensure(r.components == components && r.diameter == diameter, || {
            format!(
                "{name}: got {} components, diameter {}; want {components}, {diameter}",
                r.components, r.diameter
            )
        })?;
        if let Some(v) = verdict {
            ensure(r.verdict == v, || {
                format!("{name}: verdict {} want {v}", r.verdict)
            })?;
        }
        // The frozen values must agree with brute force too.
        let g = group(name);
        let apsp = Apsp::compute(&g);
        ensure(
            apsp.component_count() == components && apsp.diameter() == Some(diameter),
            || format!("{name}: brute force disagrees with golden"),
        )?;
    }
    Ok("q8, s3, a5 match exactly".into())
}

const SIMPLE: [&str; 9] = [
    "a5", "a6", "psl2_4", "psl2_5", "psl2_7", "psl2_8", "psl2_9", "psl2_11", "psl2_13",
];

fn hypothesis_screening() -> Outcome {
    let mut verdicts = Vec::new();
    let mut neither = Vec::new();
    let mut slowest = Duration::ZERO;
    for name in SIMPLE {
        let g = group(name);
        let start = Instant::now();
        let graph = CommGraph::new(&g);
        let verdict = graph.hypothesis_check().map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure(elapsed < Duration::from_secs(300), || {
            format!("{name}: {elapsed:.1?}, limit 5 min")
        })?;

        let apsp = Apsp::compute(&g);
        let brute = apsp.verdict(&g);
        ensure(verdict.label() == brute, || {
            format!("{name}: engine {} vs brute force {brute}", verdict.label())
        })?;
        if let Verdict::Balanced(w) = &verdict {
            let fresh = apsp.witness(&g, w.x, w.y);
            let degenerate = w.x == w.y || g.mul(w.x, w.y) == Group::IDENTITY;
            ensure(
                !degenerate && fresh.is_positive() && fresh.distances == w.distances,
                || format!("{name}: witness ({}, {}) fails re-verification", w.x, w.y),
            )?;
        }
        if matches!(verdict, Verdict::Neither) {
            neither.push(name);
        }
        verdicts.push(format!("{name}={}", verdict.label()));
    }
    let observation = if neither.is_empty() {
        "no NEITHER verdicts".to_string()
    } else {
        format!("observation: NEITHER for {}", neither.join(", "))
    };
    Ok(format!(
        "{}; {observation}; slowest {slowest:.1?}",
        verdicts.join(" ")
    ))
}

const SMALL: [&str; 11] = [
    "z6", "s3", "s4", "d12", "q8", "a4", "a5", "psl2_4", "psl2_5", "psl2_7", "s5",
];

fn conjugation_invariance() -> Outcome {
    let mut checks = 0u64;
    for name in SMALL {
        let g = group(name);
        ensure(g.order() <= 200, || format!("{name}: order {}", g.order()))?;
        let graph = CommGraph::new(&g);
        let apsp = Apsp::compute(&g);
        let n = g.order() as u32;
        for x in 1..n {
            for y in 1..n {
                let d = graph.distance(x, y).map_err(|e| e.to_string())?;
                let degenerate = x == y || g.mul(x, y) == Group::IDENTITY;
                let balanced = if degenerate {
                    None
                } else {
                    Some(graph.is_balanced_pair(x, y).map_err(|e| e.to_string())?.0)
                };
                let brute_balanced = (!degenerate).then(|| apsp.witness(&g, x, y).is_positive());
                for h in 0..n {
                    let (xh, yh) = (g.conjugate(x, h), g.conjugate(y, h));
                    let dh = graph.distance(xh, yh).map_err(|e| e.to_string())?;
                    ensure(d == dh && apsp.get(x, y) == apsp.get(xh, yh), || {
                        format!("{name}: d({x},{y}) != d({xh},{yh})")
                    })?;
                    if let Some(b) = balanced {
                        let bh = graph.is_balanced_pair(xh, yh).map_err(|e| e.to_string())?.0;
                        let brute_h = apsp.witness(&g, xh, yh).is_positive();
                        ensure(b == bh && brute_balanced == Some(brute_h), || {
                            format!("{name}: balanced({x},{y}) changes under conjugation by {h}")
                        })?;
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} groups, {checks} conjugated pairs, zero violations",
        SMALL.len()
    ))
}

const UHYP_CLAIMS: [(&str, &[&str]); 7] = [
    (
        "axioms",
        &[
            "plus_minus_one_in_n",
            "n_closed_under_products",
            "n_products_cover_n",
            "nbar_plus_one_in_n",
            "nbar_minus_one_nonzero",
        ],
    ),
    (
        "units",
        &[
            "minus_one_in_u",
            "u_is_n_with_inverse_in_n",
            "u_closed_under_conjugation",
            "u_is_a_group",
            "nbar_plus_u_in_u",
            "u_minus_nbar_in_u",
            "nbar_inverse_in_n",
            "m_iff_inverse_in_nbar",
            "u_translates_cells",
            "nbar_closed_under_products",
            "m_closed_under_products",
        ],
    ),
    (
        "order",
        &[
            "order_matches_valuation",
            "order_linear",
            "order_transitive",
            "order_independent_of_representative",
            "order_monotone_products",
            "sum_of_distinct_cosets_is_min",
            "sum_within_coset_not_below",
            "unique_minimum_sum",
        ],
    ),
    (
        "power",
        &[
            "scalar_valuation_even",
            "uf_membership_by_parity",
            "power_within_degree",
        ],
    ),
    (
        "norms",
        &[
            "scalar_two_outside_u",
            "unit_norm_implies_unit",
            "commutator_in_u",
        ],
    ),
    (
        "valuation",
        &[
            "inverse_cancels",
            "norm_multiplicative",
            "v2_additive",
            "w_additive",
            "ultrametric",
            "cell_matches_sign",
        ],
    ),
    (
        "factorization",
        &[
            "conjugator_solves_system",
            "conjugate_is_bar",
            "norm_is_product_of_conjugates",
        ],
    ),
];

fn uhyp_run() -> Result<(Vec<u8>, bool), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_commgraph"))
        .args(["uhyp", "--samples", "10000", "--seed", "42"])
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.success()))
}

fn valuation_model_suite() -> Outcome {
    let start = Instant::now();
    let (first, ok) = uhyp_run()?;
    let elapsed = start.elapsed();
    ensure(ok, || "uhyp exited nonzero".into())?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("uhyp took {elapsed:.1?}, limit 60s")
    })?;

    let report: serde_json::Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
    let reports = report["reports"].as_array().ok_or("no reports array")?;
    let mut evaluated = 0;
    for (lemma, claims) in UHYP_CLAIMS {
        let r = reports
            .iter()
            .find(|r| r["lemma"] == lemma)
            .ok_or_else(|| format!("missing lemma {lemma}"))?;
        let failures = r["failures"].as_array().map_or(usize::MAX, Vec::len);
        ensure(failures == 0, || format!("{lemma}: {failures} failures"))?;
        for claim in claims {
            let count = r["claims"][claim].as_u64().unwrap_or(0);
            ensure(count > 0, || {
                format!("{lemma}: claim {claim} never evaluated")
            })?;
            evaluated += count;
        }
    }
    let witness = &reports.iter().find(|r| r["lemma"] == "norms").unwrap()["witnesses"];
    ensure(witness["scalar_outside_u"] == "2", || {
        format!("norms witness is {witness}")
    })?;

    let (second, _) = uhyp_run()?;
    ensure(first == second, || "rerun differs byte-for-byte".into())?;
    Ok(format!(
        "{} claims, {evaluated} evaluations, 0 failures, {elapsed:.1?}, rerun identical",
        UHYP_CLAIMS.iter().map(|(_, c)| c.len()).sum::<usize>()
    ))
}

fn wedderburn_factorization() -> Outcome {
    let report = check_factorization(&SamplerConfig::new(42), 100);
    ensure(report.passed(), || {
        format!("{} checker failures", report.failures.len())
    })?;

    // Re-derive every identity directly from the sampled quaternions.
    let mut s = SamplerConfig::new(42).sampler(100);
    for i in 0..100 {
        let q = s.noncentral();
        let w = wedderburn_conjugate(&q).map_err(|e| format!("sample {i}: {e}"))?;
        let g = w.conjugator;
        let ginv = g.inv().map_err(|e| format!("sample {i}: {e}"))?;
        let bar = ginv * q.clone() * g;
        ensure(!w.scalar && bar == q.conj(), || {
            format!("sample {i}: g⁻¹qg ≠ conj(q) for {q}")
        })?;
        ensure(q.clone() * bar == Quaternion::from_scalar(q.nrd()), || {
            format!("sample {i}: q·conj(q) ≠ ν(q) for {q}")
        })?;
    }
    Ok("100 checker samples and 100 direct samples, 0 failures".into())
}

const UP_TO_60: [&str; 9] = [
    "z6", "s3", "s4", "d12", "q8", "a4", "a5", "psl2_4", "psl2_5",
];

/// Nontrivial proper normal subgroups exist iff the group is not simple;
/// found here by brute force over unions of classes.
fn is_simple(g: &Group, classes: &[Vec<u32>]) -> bool {
    let k = classes.len();
    !(1..(1u64 << k) - 1).any(|mask| {
        if mask & 1 == 0 {
            return false;
        }
        let set: Vec<u32> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| classes[i].iter().copied())
            .collect();
        set.len() > 1
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))))
    })
}

fn stabilizer_suite() -> Outcome {
    let mut subsets = 0;
    let mut simple_names = Vec::new();
    for name in UP_TO_60 {
        let g = group(name);
        ensure(g.order() <= 60, || format!("{name}: order {}", g.order()))?;
        let classes = g.conjugacy_classes();
        ensure(classes[0] == [Group::IDENTITY], || {
            format!("{name}: class 0 is not {{e}}")
        })?;
        let simple = is_simple(&g, &classes);
        if simple {
            simple_names.push(name);
        }
        let k = classes.len();
        let n = g.order() as u32;
        for mask in 1..(1u64 << k) - 1 {
            let mut a: Vec<u32> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .flat_map(|i| classes[i].iter().copied())
                .collect();
            a.sort_unstable();
            let x = g
                .normal_subset_stabilizer(&a)
                .map_err(|e| format!("{name}: {e}"))?;
            let expected: Vec<u32> = (0..n)
                .filter(|&x| a.iter().all(|&y| a.binary_search(&g.mul(x, y)).is_ok()))
                .collect();
            ensure(x == expected, || {
                format!("{name}: stabilizer of {a:?} is wrong")
            })?;
            let closed = x
                .iter()
                .all(|&p| x.iter().all(|&q| x.contains(&g.mul(p, q))));
            let normal = x
                .iter()
                .all(|&p| (0..n).all(|h| x.contains(&g.conjugate(p, h))));
            ensure(
                x.contains(&Group::IDENTITY) && closed && normal && x.len() < g.order(),
                || format!("{name}: stabilizer {x:?} of {a:?} is not a proper normal subgroup"),
            )?;
            if simple {
                ensure(x == [Group::IDENTITY], || {
                    format!("{name} is simple but stabilizer of {a:?} is {x:?}")
                })?;
            }
            subsets += 1;
        }
    }
    ensure(simple_names == ["a5", "psl2_4", "psl2_5"], || {
        format!("simple groups found: {simple_names:?}")
    })?;
    Ok(format!(
        "{} groups, {subsets} class unions, all proper normal, trivial for {}",
        UP_TO_60.len(),
        simple_names.join(", ")
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("oracle equivalence", oracle_equivalence),
        ("structural goldens", structural_goldens),
        (
            "hypothesis screening on simple groups",
            hypothesis_screening,
        ),
        ("conjugation invariance", conjugation_invariance),
        ("valuation model suite", valuation_model_suite),
        ("Wedderburn factorization", wedderburn_factorization),
        ("normal subset stabilizers", stabilizer_suite),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {}. {title}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {title}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
