//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits nonzero if any failed.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use signed_ortho::families::{
    check_identity, gg_poly, p_poly_hyper, p_poly_ttrr, polys_from_recurrence, recurrence,
    ttrr_gamma, Identity, IdentityParams,
};
use signed_ortho::hypergeom::{contiguous_residual, eval_2f1_terminating, Contiguous, HypParams};
use signed_ortho::numerics::{default_refine_tolerance, parse_rational};
use signed_ortho::orthogonality::{
    gram_schmidt_oracle, recovered_recurrence, verify_orthogonality,
};
use signed_ortho::zeros::{check_interlacing, find_zeros, largest_zero_chain, odd_even_zero_map};
use signed_ortho::{ExactFamily, ExactPoly, Poly, Rational, Scalar};

const ALPHAS: [&str; 6] = ["-1/2", "0", "1/2", "1", "3/2", "5/2"];
const QS: [u32; 4] = [0, 1, 2, 3];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn r(text: &str) -> Rational {
    parse_rational(text).unwrap()
}

fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn grid() -> Vec<ExactFamily> {
    ALPHAS
        .iter()
        .flat_map(|a| QS.iter().map(move |&q| ExactFamily::new(r(a), q).unwrap()))
        .collect()
}

fn poly(coeffs: &[&str]) -> ExactPoly {
    Poly::new(coeffs.iter().map(|c| r(c)).collect())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_form_vs_oracle() -> Outcome {
    let mut checked = 0;
    for fp in grid() {
        let oracle = gram_schmidt_oracle(&fp, 20).map_err(|e| format!("{fp}: {e}"))?;
        let recovered = recovered_recurrence(&fp, &oracle).map_err(|e| format!("{fp}: {e}"))?;
        let closed = recurrence(&fp, 20);
        for k in 0..=20 {
            let (a, b) = (&recovered[k], &closed[k]);
            ensure(a.beta == b.beta && a.gamma == b.gamma, || {
                format!("{fp}, k={k}: oracle {a:?}, closed form {b:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (beta, gamma) pairs equal"))
}

fn route_equivalence() -> Outcome {
    let mut checked = 0;
    for fp in grid() {
        let x_plus_one = Poly::linear_root(&r("-1"));
        for n in (0..=20).step_by(2) {
            let ttrr = p_poly_ttrr(&fp, n);
            let hyper = p_poly_hyper(&fp, n).map_err(|e| format!("{fp}, n={n}: {e}"))?;
            let gg = gg_poly(&fp.gg(), n).map_err(|e| format!("{fp}, n={n}: {e}"))?;
            ensure(ttrr == hyper && hyper == gg, || {
                format!("{fp}, n={n}: ttrr {ttrr}, hyper {hyper}, gg {gg}")
            })?;
            let odd = p_poly_ttrr(&fp, n + 1);
            let factored = &x_plus_one * &p_poly_ttrr(&fp.shifted(1, 0), n);
            ensure(odd == factored, || {
                format!("{fp}: P_{} != (1+x) P_{n}^(alpha+1,q)", n + 1)
            })?;
            let residual = check_identity(
                Identity::P2nGg2n,
                &IdentityParams::Family(fp.clone()),
                n / 2,
            )
            .map_err(|e| e.to_string())?;
            ensure(residual.is_zero(), || {
                format!("{fp}: p2ngg2n residual at n={}", n / 2)
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} even degrees agree on all routes, odd factorization exact"
    ))
}

fn derived_values() -> Outcome {
    let fp = ExactFamily::new(r("0"), 0).unwrap();
    for (n, want) in [(1, "-2/5"), (2, "-6/35"), (3, "-20/63")] {
        let got = ttrr_gamma(&fp, n).map_err(|e| e.to_string())?;
        ensure(got == r(want), || format!("gamma_{n} = {got}, want {want}"))?;
    }
    let p2 = poly(&["-3/5", "0", "1"]);
    let p3 = &poly(&["1", "1"]) * &poly(&["-3/7", "0", "1"]);
    let p4 = poly(&["5/21", "0", "-10/9", "0", "1"]);
    for (n, want) in [(2, p2), (3, p3), (4, p4)] {
        let got = p_poly_ttrr(&fp, n);
        ensure(got == want, || format!("P_{n} = {got}, want {want}"))?;
    }
    Ok("gamma_1..3 and P_2..4 at alpha=0, q=0 exact".to_string())
}

fn orthogonality() -> Outcome {
    let mut checked = 0;
    for fp in grid() {
        for n in 0..=20 {
            let report = verify_orthogonality(&fp, &p_poly_ttrr(&fp, n), n)
                .map_err(|e| format!("{fp}, n={n}: {e}"))?;
            ensure(report.passed(), || {
                format!("{fp}, n={n}: fails at m={:?}", report.first_failure)
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} polynomials orthogonal with exact moments"
    ))
}

fn zero_theorems() -> Outcome {
    let tol = default_refine_tolerance();
    for fp in grid() {
        for n in 0..=16 {
            let rs = find_zeros(&fp, n, &tol).map_err(|e| format!("{fp}, n={n}: {e}"))?;
            ensure(rs.real_count() == n, || {
                format!("{fp}, n={n}: {} real roots", rs.real_count())
            })?;
            if n % 2 == 1 {
                let value = p_poly_ttrr(&fp, n).eval(&r("-1"));
                ensure(Scalar::is_zero(&value), || {
                    format!("{fp}: P_{n}(-1) = {value}")
                })?;
            }
        }
        for m in 1..=7 {
            let lo = find_zeros(&fp, 2 * m, &tol).map_err(|e| e.to_string())?;
            let hi = find_zeros(&fp, 2 * m + 1, &tol).map_err(|e| e.to_string())?;
            let report = check_interlacing(&lo, &hi).map_err(|e| e.to_string())?;
            ensure(!report.interlaces, || {
                format!("{fp}: P_{} and P_{} interlace", 2 * m, 2 * m + 1)
            })?;
            let (a, b) = report
                .witness
                .ok_or_else(|| format!("{fp}, m={m}: no witness"))?;
            ensure(a.enclosure.negated() == b.enclosure, || {
                format!(
                    "{fp}, m={m}: witness {} {} not symmetric",
                    a.enclosure, b.enclosure
                )
            })?;
        }
    }

    let fp = ExactFamily::new(r("0"), 0).unwrap();
    let lo = find_zeros(&fp, 2, &tol).map_err(|e| e.to_string())?;
    let hi = find_zeros(&fp, 3, &tol).map_err(|e| e.to_string())?;
    let (a, b) = check_interlacing(&lo, &hi)
        .map_err(|e| e.to_string())?
        .witness
        .ok_or("no witness at alpha=0, q=0, n=1")?;
    let (wa, wb) = (a.refined.to_f64(), b.refined.to_f64());
    ensure(
        (wa + 0.654654).abs() <= 1e-6 && (wb - 0.654654).abs() <= 1e-6,
        || format!("witness ({wa}, {wb})"),
    )?;

    for fp in grid() {
        for n in 1..=8 {
            largest_zero_chain(fp.alpha(), fp.q(), n, &tol)
                .map_err(|e| format!("{fp}, n={n}: {e}"))?;
        }
    }
    let chain = largest_zero_chain(&r("0"), 0, 2, &tol).map_err(|e| e.to_string())?;
    let (x44, x22) = (
        chain[0].root.refined.to_f64(),
        chain[1].root.refined.to_f64(),
    );
    ensure(
        (x44 - 0.90618).abs() <= 1e-5 && (x22 - 0.74536).abs() <= 1e-5 && x44 > x22,
        || format!("chain ({x44}, {x22})"),
    )?;
    Ok(format!(
        "counts n<=16, P_2n+1(-1)=0, witness ({wa:.6}, {wb:.6}), chain n<=8 with {x44:.5} > {x22:.5}"
    ))
}

fn derivative_identities() -> Outcome {
    let mut checked = 0;
    for fp in grid() {
        let params = IdentityParams::Family(fp.clone());
        for id in [Identity::Zeros1, Identity::Zeros2, Identity::Zeros3] {
            for n in id.min_index()..=16 {
                let residual = check_identity(id, &params, n).map_err(|e| e.to_string())?;
                ensure(residual.is_zero(), || {
                    format!("{fp}, {} at n={n}: residual {residual}", id.name())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} residual polynomials identically zero"))
}

/// Plain rational evaluation of a terminating 2F1, used as an oracle.
fn naive_2f1(a: &Rational, b: &Rational, c: &Rational, z: &Rational, terms: u64) -> Rational {
    let mut sum = ratio(1, 1);
    let mut term = ratio(1, 1);
    for k in 0..terms {
        let k = ratio(k as i64, 1);
        term = term * (a + &k) * (b + &k) / ((c + &k) * (&k + ratio(1, 1))) * z;
        sum += &term;
    }
    sum
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(2..=9);
    let num = rng.gen_range(-40..=40);
    ratio(num, den)
}

fn contiguous_relations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0c0f);
    let mut sets = 0;
    let mut attempts = 0;
    while sets < 150 {
        attempts += 1;
        ensure(attempts < 10_000, || {
            "could not draw enough valid parameter sets".to_string()
        })?;
        let m = rng.gen_range(1..=8);
        let a = ratio(-m, 1);
        let b = random_rational(&mut rng);
        let c = random_rational(&mut rng);
        let z = random_rational(&mut rng);
        let Ok(p) = HypParams::new(a.clone(), b.clone(), c.clone()) else {
            continue;
        };
        let residuals: Result<Vec<_>, _> = Contiguous::ALL
            .iter()
            .map(|&rel| contiguous_residual(rel, &p, &z))
            .collect();
        let Ok(residuals) = residuals else {
            continue;
        };
        for (rel, res) in Contiguous::ALL.iter().zip(&residuals) {
            ensure(Scalar::is_zero(res), || {
                format!(
                    "contiguous-{} at a={a}, b={b}, c={c}, z={z}: {res}",
                    rel.id()
                )
            })?;
        }
        let direct = naive_2f1(&a, &b, &c, &z, m as u64);
        let lib = eval_2f1_terminating(&p, &z);
        ensure(direct == lib, || {
            format!("2F1({a},{b};{c};{z}): {lib} vs oracle {direct}")
        })?;
        let up_a = naive_2f1(&(&a + ratio(1, 1)), &b, &c, &z, m as u64 - 1);
        let up_b = naive_2f1(&a, &(&b + ratio(1, 1)), &c, &z, m as u64);
        let rel4 = (&a - &b) * &direct - &a * up_a + &b * up_b;
        ensure(Scalar::is_zero(&rel4), || {
            format!("oracle contig4 at a={a}, b={b}: {rel4}")
        })?;
        sets += 1;
    }
    Ok(format!(
        "{sets} random parameter sets, 5 relations each, all residuals zero"
    ))
}

fn odd_even_zero_map_check() -> Outcome {
    let tol = default_refine_tolerance();
    let mut checked = 0;
    for fp in grid() {
        for n in 0..=8 {
            for k in 0..=1 {
                for l in 0..=1 {
                    let report = odd_even_zero_map(fp.alpha(), fp.q(), n, k, l, &tol)
                        .map_err(|e| format!("{fp}, n={n}, k={k}, l={l}: {e}"))?;
                    ensure(report.identity_exact == Some(true), || {
                        format!("{fp}, n={n}, k={k}, l={l}: factorization not exact")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} zero maps exact"))
}

fn negative_control() -> Outcome {
    let delta = ratio(1, 1000);
    let mut checked = 0;
    for fp in [grid()[0].clone(), grid()[5].clone(), grid()[23].clone()] {
        for j in 1..=19 {
            let mut rows = recurrence(&fp, 20);
            let g = rows[j].gamma.as_mut().unwrap();
            *g = &*g + &delta;
            let polys = polys_from_recurrence(&rows, fp.alpha(), 20).map_err(|e| e.to_string())?;
            for (n, p) in polys.iter().enumerate() {
                let passed = verify_orthogonality(&fp, p, n)
                    .map_err(|e| e.to_string())?
                    .passed();
                if n <= j {
                    ensure(passed, || format!("{fp}, fault at gamma_{j}: P_{n} failed"))?;
                } else if n == j + 1 {
                    ensure(!passed, || {
                        format!("{fp}, fault at gamma_{j}: P_{n} still passes")
                    })?;
                }
            }
            checked += 1;
        }
    }

    let outcome = signed_ortho_cli::run_args([
        "signed-ortho",
        "verify",
        "--alphas",
        "1/2",
        "--qs",
        "1",
        "--inject-fault",
        "7",
    ])
    .map_err(|e| e.to_string())?;
    ensure(outcome.exit_code() == 1, || {
        "verify with a fault exited 0".to_string()
    })?;
    let report: Value = serde_json::from_str(&outcome.rendered).map_err(|e| e.to_string())?;
    let failed: Vec<&Value> = report["records"]
        .as_array()
        .ok_or("no records")?
        .iter()
        .filter(|rec| rec["status"] == "fail")
        .collect();
    ensure(
        failed
            .first()
            .is_some_and(|rec| rec["identity"] == "orthogonality" && rec["n"] == 8),
        || format!("first failing record {:?}", failed.first()),
    )?;
    ensure(
        failed.iter().all(|rec| rec["identity"] == "orthogonality"),
        || "the fault leaked into checks that do not use it".to_string(),
    )?;
    Ok(format!(
        "{checked} faults each fail exactly from P_(j+1); verify flags {} records",
        failed.len()
    ))
}

fn determinism() -> Outcome {
    let run = || {
        signed_ortho_cli::run_args([
            "signed-ortho",
            "verify",
            "--mode",
            "exact",
            "--format",
            "json",
        ])
        .map_err(|e| e.to_string())
    };
    let first = run()?;
    let second = run()?;
    ensure(first.rendered == second.rendered, || {
        "reports differ".to_string()
    })?;
    ensure(first.passed, || {
        "default verify grid has failing checks".to_string()
    })?;
    let report: Value = serde_json::from_str(&first.rendered).map_err(|e| e.to_string())?;
    Ok(format!(
        "{} bytes identical, {} checks all pass",
        first.rendered.len(),
        report["summary"]["total"]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "closed-form recurrence equals Gram-Schmidt oracle",
            closed_form_vs_oracle,
        ),
        ("route equivalence", route_equivalence),
        ("derived values", derived_values),
        ("orthogonality", orthogonality),
        ("zero theorems", zero_theorems),
        ("derivative identities", derivative_identities),
        ("contiguous relations", contiguous_relations),
        ("odd/even zero map", odd_even_zero_map_check),
        ("negative control", negative_control),
        ("determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
