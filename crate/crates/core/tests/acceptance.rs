//! Acceptance criteria, one line of output each. Run with `--nocapture` to see
//! the lines when everything passes.

use std::collections::BTreeSet;
use std::time::Instant;

use mgalpha::descent::{coarse_coefficient, floor_identity_sweep, RamifiedBoundary};
use mgalpha::divisor::{
    lambda_minus_delta, linearization_class, log_canonical_divisor, proportionality_alpha, Genus,
    Model,
};
use mgalpha::fcurves::{gkm_nef_check, FCurve, NefVerdict};
use mgalpha::graph::{
    arithmetic_genus, collapse_tails, find_elliptic_tails, is_pseudostable, t_transform,
};
use mgalpha::linear_series::{dimension_profile, h0_twisted, rank_kn, TailConfiguration};
use mgalpha::oracle::graphs::stable_graphs;
use mgalpha::phase::{critical_alphas, discrepancy_coefficient, pair_with_ray};
use mgalpha::rational::{format, frac, int, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn genus(g: u32) -> Genus {
    Genus::new(g).unwrap()
}

/// Ten rationals in [0, 1] with denominators up to 1000, from a fixed seed.
fn random_alphas(seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..10)
        .map(|_| {
            let q: i64 = rng.gen_range(1..=1000);
            let p: i64 = rng.gen_range(0..=q);
            frac(p, q)
        })
        .collect()
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn ray_pairing() -> Outcome {
    let mut alphas = random_alphas(1);
    alphas.push(frac(9, 11));
    for g in [3, 10, 30] {
        for a in &alphas {
            let d = log_canonical_divisor(genus(g), a, Model::MgStack).unwrap();
            let expected = (int(11) * a - int(9)) / int(12);
            check(pair_with_ray(&d) == expected, || {
                format!("g={g} alpha={}", format(a))
            })?;
        }
        let at_wall = log_canonical_divisor(genus(g), &frac(9, 11), Model::MgStack).unwrap();
        check(pair_with_ray(&at_wall).is_zero(), || {
            format!("g={g}: nonzero at 9/11")
        })?;
    }
    Ok("(11a-9)/12 at 10 random alphas and 0 at 9/11".into())
}

fn first_wall() -> Outcome {
    for g in 3..=30 {
        let r = critical_alphas(genus(g), Model::MgStack).unwrap();
        check(r.critical_alphas() == vec![frac(9, 11)], || {
            format!("g={g}: walls {:?}", r.critical_alphas())
        })?;
        check(r.walls[0].contracted == vec![FCurve::A], || {
            format!("g={g}: contracted {:?}", r.walls[0].contracted)
        })?;
    }
    Ok("g=3..30: single wall 9/11 contracting A".into())
}

fn second_wall() -> Outcome {
    let alpha = frac(7, 10);
    let mut failures = Vec::new();
    for g in 4..=30 {
        let r = critical_alphas(genus(g), Model::PsPullback).unwrap();
        let Some(wall) = r.wall(&alpha) else {
            failures.push(format!("g={g}: no wall at 7/10"));
            continue;
        };
        let got: BTreeSet<FCurve> = wall
            .contracted
            .iter()
            .copied()
            .filter(|f| !r.identically_zero.contains(f))
            .collect();
        let mut want: BTreeSet<FCurve> = BTreeSet::from([FCurve::D(1)]);
        for i in 1..=(g - 1) / 2 {
            want.insert(FCurve::E(i, g - 1 - i));
        }
        if got != want {
            let missing: Vec<String> = want.difference(&got).map(|f| f.to_string()).collect();
            let extra: Vec<String> = got.difference(&want).map(|f| f.to_string()).collect();
            failures.push(format!(
                "g={g}: missing [{}] extra [{}]",
                missing.join(" "),
                extra.join(" ")
            ));
        }
    }
    if failures.is_empty() {
        Ok("g=4..30: 7/10 contracts D(1) and every E(i,j) with i+j=g-1".into())
    } else {
        Err(format!(
            "{} genera differ, first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

fn nef_band() -> Outcome {
    let alphas = [
        frac(7, 10) + frac(1, 1000),
        frac(3, 4),
        frac(4, 5),
        frac(9, 11),
    ];
    for g in 3..=30 {
        for a in &alphas {
            let d = log_canonical_divisor(genus(g), a, Model::PsPullback).unwrap();
            let NefVerdict::Nef { certificate } = gkm_nef_check(&d) else {
                return Err(format!("g={g} alpha={}: not certified nef", format(a)));
            };
            for row in &certificate {
                let ok = if row.curve == FCurve::A {
                    row.value.is_zero()
                } else {
                    row.value.is_positive()
                };
                check(ok, || {
                    format!(
                        "g={g} alpha={} {}={}",
                        format(a),
                        row.curve,
                        format(&row.value)
                    )
                })?;
            }
        }
    }
    Ok("g=3..30, alpha in {7/10+1/1000, 3/4, 4/5, 9/11}: nef, A row 0, others > 0".into())
}

fn discrepancy() -> Outcome {
    let mut alphas = random_alphas(5);
    alphas.extend([int(0), frac(7, 10), frac(9, 11), int(1)]);
    for a in &alphas {
        let c = discrepancy_coefficient(a).map_err(|e| e.to_string())?;
        check(c == int(9) - int(11) * a, || {
            format!("alpha={}: c={}", format(a), format(&c))
        })?;
        for g in [3, 7, 30] {
            let d = log_canonical_divisor(genus(g), a, Model::MgStack).unwrap();
            check(-&c / int(12) == pair_with_ray(&d), || {
                format!("g={g} alpha={}", format(a))
            })?;
        }
    }
    Ok("c = 9 - 11a and -c/12 equals the ray pairing".into())
}

fn linearizations() -> Outcome {
    for g in 3..=30 {
        let gg = genus(g);
        let l4 = linearization_class(gg, 4).unwrap().class;
        let l3 = linearization_class(gg, 3).unwrap().class;
        let r4 = l4.ratio_to(&lambda_minus_delta(gg, 11, 1));
        let r3 = l3.ratio_to(&lambda_minus_delta(gg, 32, 3));
        check(r4.as_ref().is_some_and(|r| r.is_positive()), || {
            format!("g={g}: n=4 not proportional")
        })?;
        check(r3.as_ref().is_some_and(|r| r.is_positive()), || {
            format!("g={g}: n=3 not proportional")
        })?;
        check(proportionality_alpha(&l4) == Some(frac(9, 11)), || {
            format!("g={g}: n=4 alpha")
        })?;
        check(proportionality_alpha(&l3) == Some(frac(25, 32)), || {
            format!("g={g}: n=3 alpha")
        })?;
    }
    Ok("n=4 ~ 11L-D (alpha 9/11), n=3 ~ 32L-3D (alpha 25/32)".into())
}

fn t_transform_suite() -> Outcome {
    let mut total = 0;
    for g in 3..=6u32 {
        for small in stable_graphs(g, 6) {
            let curve = small.to_curve_graph();
            let tails =
                find_elliptic_tails(&curve).map_err(|e| format!("{e}: {}", curve.to_json()))?;
            for (i, a) in tails.iter().enumerate() {
                for b in &tails[i + 1..] {
                    let disjoint = a
                        .subcurve
                        .vertices
                        .iter()
                        .all(|v| !b.subcurve.vertices.contains(v));
                    check(disjoint, || {
                        format!("overlapping tails in {}", curve.to_json())
                    })?;
                }
            }
            let t = t_transform(&curve).map_err(|e| e.to_string())?;
            check(arithmetic_genus(&t).unwrap() == g, || {
                format!("genus changed: {}", curve.to_json())
            })?;
            check(is_pseudostable(&t).holds, || {
                format!("image not pseudostable: {}", curve.to_json())
            })?;
            check(collapse_tails(&t).unwrap() == t, || {
                format!("not idempotent: {}", curve.to_json())
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} stable graphs (genus 3..6, <= 6 vertices): genus kept, pseudostable, idempotent, disjoint tails"))
}

fn decomposition() -> Outcome {
    let mut cases = 0;
    for g in 3..=30u32 {
        for r in 0..=g {
            let Ok(cfg) = TailConfiguration::new(g, r) else {
                continue;
            };
            for n in 2..=6 {
                let h0 =
                    h0_twisted(g - r, r, n, 2).map_err(|e| format!("g={g} r={r} n={n}: {e}"))?;
                let k = rank_kn(genus(g), n).unwrap();
                check(h0 + r as u64 == k, || {
                    format!("g={g} r={r} n={n}: {h0} + {r} != {k}")
                })?;
                let profile = dimension_profile(&cfg, n).map_err(|e| e.to_string())?;
                check(profile.dims[1] == profile.dims[2], || {
                    format!("g={g} r={r} n={n}: dims[1] != dims[2]")
                })?;
                for w in profile.dims[2..].windows(2) {
                    if let [Some(x), Some(y)] = w {
                        check(x - y == r as u64, || {
                            format!("g={g} r={r} n={n}: drop {x} -> {y}")
                        })?;
                    }
                }
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} configurations: h0 + r = k_n and drops equal r"
    ))
}

fn floor_sweep() -> Outcome {
    let s = floor_identity_sweep(200, 20, 12);
    check(s.passed(), || {
        format!(
            "{} failures, first {:?}",
            s.failures.len(),
            s.failures.first()
        )
    })?;
    Ok(format!("{} cases, 0 failures", s.cases))
}

fn dagger_consistency() -> Outcome {
    for a in random_alphas(10) {
        let coarse = coarse_coefficient(&RamifiedBoundary::new(2, a.clone()).unwrap());
        check(coarse == (int(1) + &a) / int(2), || {
            format!("alpha={}", format(&a))
        })?;
        for g in [3, 10] {
            let d = log_canonical_divisor(genus(g), &a, Model::CoarseDagger).unwrap();
            // the class stores 2 - coefficient, with λ = 13
            let weight = d.boundary_weight(1).unwrap();
            check(weight == coarse, || {
                format!(
                    "g={g} alpha={}: {} vs {}",
                    format(&a),
                    format(&weight),
                    format(&coarse)
                )
            })?;
        }
    }
    Ok("(e-1+a)/e at e=2 equals the Delta_1 coefficient (1+a)/2".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("ray pairing", ray_pairing),
        ("first wall", first_wall),
        ("second wall", second_wall),
        ("nefness band", nef_band),
        ("discrepancy", discrepancy),
        ("GIT linearizations", linearizations),
        ("T-transform suite", t_transform_suite),
        ("decomposition identity", decomposition),
        ("floor identity sweep", floor_sweep),
        ("coarse coefficient consistency", dagger_consistency),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({ms} ms)", k + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {name}: {detail} ({ms} ms)", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn random_alphas_lie_in_unit_interval() {
    for a in random_alphas(99) {
        assert!(a >= int(0) && a <= int(1));
        assert!(*a.denom() > BigInt::zero());
    }
}
