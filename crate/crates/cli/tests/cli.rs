use std::process::Command;

use serde_json::Value;
use signed_ortho::families::{p_poly_ttrr, recurrence};
use signed_ortho::numerics::parse_rational;
use signed_ortho::{ExactFamily, MpFloat, Poly, Precision, Rational, Scalar};
use signed_ortho_cli::{run_args, CliError};

fn run(args: &[&str]) -> Result<signed_ortho_cli::Outcome, CliError> {
    run_args(std::iter::once("signed-ortho").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let outcome = run(args).unwrap();
    serde_json::from_str(&outcome.rendered).unwrap()
}

fn first_line(args: &[&str]) -> String {
    run(args)
        .unwrap()
        .rendered
        .lines()
        .next()
        .unwrap()
        .to_string()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_signed-ortho"))
}

fn exit_code(args: &[&str]) -> i32 {
    bin().args(args).output().unwrap().status.code().unwrap()
}

fn family(alpha: &str, q: u32) -> ExactFamily {
    ExactFamily::new(parse_rational(alpha).unwrap(), q).unwrap()
}

#[test]
fn coeffs_round_trip_through_json() {
    let report = json(&["coeffs", "--alpha", "3/2", "--q", "2", "--n-max", "12"]);
    let closed = recurrence(&family("3/2", 2), 12);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 13);
    for (row, want) in rows.iter().zip(&closed) {
        assert_eq!(
            parse_rational(row["beta"].as_str().unwrap()).unwrap(),
            want.beta
        );
        let gamma = row["gamma"].as_str().map(|g| parse_rational(g).unwrap());
        assert_eq!(gamma, want.gamma);
    }
    assert!(rows[0]["gamma"].is_null());
}

#[test]
fn poly_coefficients_evaluate_like_the_library() {
    let report = json(&["poly", "--alpha", "-1/2", "--q", "3", "--n", "9"]);
    let coeffs: Vec<Rational> = report["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| parse_rational(c.as_str().unwrap()).unwrap())
        .collect();
    let parsed = Poly::new(coeffs);
    let lib = p_poly_ttrr(&family("-1/2", 3), 9);
    for x in ["-1", "0", "1/3", "7/5"] {
        let x = parse_rational(x).unwrap();
        assert_eq!(parsed.eval(&x), lib.eval(&x));
    }
}

#[test]
fn routes_print_the_same_polynomial() {
    let base = ["poly", "--alpha", "1", "--q", "1", "--n", "6", "--route"];
    let pick = |route: &str| {
        let mut args = base.to_vec();
        args.push(route);
        json(&args)["coefficients"].clone()
    };
    assert_eq!(pick("ttrr"), pick("hyper"));
    assert_eq!(pick("ttrr"), pick("gs-oracle"));
}

#[test]
fn float_hex_values_round_trip() {
    let report = json(&[
        "poly",
        "--alpha",
        "1/3",
        "--q",
        "1",
        "--n",
        "5",
        "--mode",
        "float",
        "--precision",
        "96",
    ]);
    assert_eq!(report["precision_bits"], 96);
    let prec = Precision::new(96).unwrap();
    let fp = signed_ortho::FloatFamily::new(
        MpFloat::from_rational(&parse_rational("1/3").unwrap(), &prec),
        1,
    )
    .unwrap();
    let lib = p_poly_ttrr(&fp, 5);
    for (cell, want) in report["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .zip(lib.coeffs())
    {
        let got = MpFloat::from_hex(cell["hex"].as_str().unwrap(), prec).unwrap();
        assert_eq!(got.to_hex(), want.to_hex());
        assert_eq!(&got, want);
    }
}

#[test]
fn derived_p4_prints_exactly() {
    let csv = run(&[
        "poly", "--alpha", "0", "--q", "0", "--n", "4", "--format", "csv",
    ])
    .unwrap()
    .rendered;
    assert_eq!(csv, "power,coefficient\n0,5/21\n1,0\n2,-10/9\n3,0\n4,1\n");
}

#[test]
fn csv_headers_match_the_documented_columns() {
    let cases: [(&[&str], &str); 6] = [
        (&["coeffs", "--alpha", "0", "--q", "0", "--n-max", "2"], "n,beta,gamma"),
        (&["poly", "--alpha", "0", "--q", "0", "--n", "2"], "power,coefficient"),
        (
            &["zeros", "--alpha", "0", "--q", "0", "--n", "3"],
            "index,lo,hi,refined,structural",
        ),
        (
            &["zeros", "--alpha", "0", "--q", "0", "--n", "3", "--figure"],
            "x,family,zero_index",
        ),
        (
            &["verify", "--alphas", "0", "--qs", "0", "--n-max", "4", "--zeros-n-max", "4", "--chain-n-max", "2"],
            "identity,alpha,q,mu,k,l,z,n,status,residual_norm_or_witness",
        ),
        (
            &["sweep", "--alphas", "0", "--qs", "0", "--n-max", "3"],
            "alpha,q,n,status,real_roots,nonreal_roots,perron_zero,smallest_zero,largest_zero,interlaces_with_next,message",
        ),
    ];
    for (args, header) in cases {
        let mut args = args.to_vec();
        args.extend(["--format", "csv"]);
        assert_eq!(first_line(&args), header, "{args:?}");
    }
}

#[test]
fn zeros_report_the_endpoint_and_a_witness() {
    let report = json(&[
        "zeros",
        "--alpha",
        "0",
        "--q",
        "0",
        "--n",
        "3",
        "--interlace-with",
        "2",
    ]);
    assert_eq!(report["real_roots"], 3);
    assert_eq!(report["roots"][0]["structural"], "at_minus_one");
    assert_eq!(
        report["roots"][0]["enclosure"],
        serde_json::json!(["-1", "-1"])
    );
    let il = &report["interlacing"];
    assert_eq!(il["interlaces"], false);
    let lo = parse_rational(il["witness"][0]["enclosure"][0].as_str().unwrap()).unwrap();
    let hi = parse_rational(il["witness"][1]["enclosure"][1].as_str().unwrap()).unwrap();
    assert_eq!(lo, -hi);
}

#[test]
fn text_output_is_readable() {
    let text = run(&[
        "zeros", "--alpha", "1/2", "--q", "1", "--n", "3", "--format", "text", "--mode", "float",
    ])
    .unwrap()
    .rendered;
    assert!(text.contains("at_minus_one"));
    assert!(text.contains("0.707106781187"));
}

#[test]
fn verify_passes_in_both_modes() {
    for mode in ["exact", "float"] {
        let outcome = run(&[
            "verify",
            "--alphas",
            "1/2",
            "--qs",
            "1",
            "--n-max",
            "10",
            "--zeros-n-max",
            "8",
            "--chain-n-max",
            "4",
            "--mode",
            mode,
        ])
        .unwrap();
        let report: Value = serde_json::from_str(&outcome.rendered).unwrap();
        assert!(outcome.passed, "{mode}: {}", report["summary"]);
        assert_eq!(report["summary"]["failed"], 0);
        assert!(report["summary"]["total"].as_u64().unwrap() > 50);
    }
}

#[test]
fn empty_grid_gives_an_empty_report() {
    let outcome = run(&["verify", "--alphas", "", "--qs", "0"]).unwrap();
    assert!(outcome.passed);
    let report: Value = serde_json::from_str(&outcome.rendered).unwrap();
    assert_eq!(report["records"], serde_json::json!([]));
    assert_eq!(report["summary"]["total"], 0);
}

#[test]
fn fault_index_must_be_in_range() {
    assert!(matches!(
        run(&[
            "verify",
            "--alphas",
            "0",
            "--qs",
            "0",
            "--n-max",
            "6",
            "--inject-fault",
            "6"
        ]),
        Err(CliError::Usage(_))
    ));
}

#[test]
fn exit_codes() {
    assert_eq!(
        exit_code(&["coeffs", "--alpha", "0", "--q", "0", "--n-max", "3"]),
        0
    );
    assert_eq!(
        exit_code(&["coeffs", "--alpha", "-1", "--q", "0", "--n-max", "3"]),
        2
    );
    assert_eq!(
        exit_code(&["coeffs", "--alpha", "0", "--q", "-1", "--n-max", "3"]),
        2
    );
    assert_eq!(exit_code(&["coeffs", "--alpha", "0", "--q", "0"]), 2);
    assert_eq!(exit_code(&["frobnicate"]), 2);
    assert_eq!(
        exit_code(&["poly", "--alpha", "0", "--q", "0", "--n", "3", "--route", "hyper"]),
        1
    );
    assert_eq!(
        exit_code(&[
            "verify",
            "--alphas",
            "0",
            "--qs",
            "0",
            "--n-max",
            "6",
            "--zeros-n-max",
            "4",
            "--chain-n-max",
            "2",
            "--inject-fault",
            "3",
        ]),
        1
    );
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("signed-ortho-out-{}.json", std::process::id()));
    let status = bin()
        .args([
            "coeffs", "--alpha", "0", "--q", "0", "--n-max", "3", "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written["rows"][1]["gamma"], "-2/5");
}

#[test]
fn sweep_rows_follow_the_grid() {
    let report = json(&["sweep", "--alphas", "0,1", "--qs", "0,2", "--n-max", "4"]);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    let order: Vec<(String, u64)> = rows
        .iter()
        .step_by(4)
        .map(|r| {
            (
                r["alpha"].as_str().unwrap().to_string(),
                r["q"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        order,
        [
            ("0".into(), 0),
            ("0".into(), 2),
            ("1".into(), 0),
            ("1".into(), 2)
        ]
    );
    for r in rows {
        assert_eq!(r["status"], "ok");
        assert_eq!(r["nonreal_roots"], 0);
        assert_eq!(r["perron_zero"], r["n"].as_u64().unwrap() % 2 == 1);
    }
}
