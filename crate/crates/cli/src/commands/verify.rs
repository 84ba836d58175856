//! The full check suite over a parameter grid.
//!
//! Each record names an identity, its parameters, an index `n` and a
//! status. What `n` means for each identity is listed in
//! `docs/report-format.md`.

use rayon::prelude::*;
use serde::Serialize;
use signed_ortho::families::{
    check_identity, p_poly_hyper, p_poly_hyper_normal_form, p_poly_ttrr, polys_from_recurrence,
    recurrence, ttrr_beta, ttrr_gamma, FamilyParams, GGParams, Identity, IdentityParams,
};
use signed_ortho::hypergeom::{
    contiguous_residual, contiguous_scale, gamma_even_from_contiguous, gamma_odd_from_contiguous,
    Contiguous, HypParams,
};
use signed_ortho::numerics::ModeConfig;
use signed_ortho::orthogonality::{
    gram_schmidt_oracle, recovered_recurrence, verify_with, SignedFunctional,
};
use signed_ortho::zeros::{
    check_interlacing, critical_point_check, find_zeros, largest_zero_chain, odd_even_zero_map,
    RootSet,
};
use signed_ortho::{Poly, Rational, Result as CoreResult};

use super::{grid_points, Header};
use crate::args::GridArgs;
use crate::error::CliError;
use crate::output::{Report, Table};
use crate::value::{format_f64, Numeric};

/// Perturbation added to `gamma_INDEX` by `--inject-fault`.
pub const FAULT_DELTA: (i64, i64) = (1, 1000);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub alpha: String,
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub identity: String,
    pub params: Params,
    pub n: usize,
    pub status: Status,
    pub residual_norm_or_witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridEcho {
    pub alphas: Vec<String>,
    pub qs: Vec<u32>,
    pub n_max: usize,
    pub zeros_n_max: usize,
    pub chain_n_max: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Fault {
    pub gamma_index: usize,
    pub delta: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    #[serde(flatten)]
    pub header: Header,
    pub grid: GridEcho,
    pub fault: Option<Fault>,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifySettings {
    pub n_max: usize,
    pub zeros_n_max: usize,
    pub chain_n_max: usize,
    pub inject_fault: Option<usize>,
}

impl Default for VerifySettings {
    fn default() -> Self {
        VerifySettings {
            n_max: 20,
            zeros_n_max: 16,
            chain_n_max: 8,
            inject_fault: None,
        }
    }
}

pub fn cmd_verify<T: Numeric>(
    grid: &GridArgs,
    settings: VerifySettings,
    cfg: &ModeConfig,
    ctx: &T::Context,
) -> Result<VerifyReport, CliError> {
    if let Some(j) = settings.inject_fault {
        if j == 0 || j >= settings.n_max {
            return Err(CliError::Usage(format!(
                "--inject-fault must lie in 1..{} (gamma_0 is unused and gamma_{{n_max}} never enters P_0..P_n_max), got {j}",
                settings.n_max
            )));
        }
    }
    let points = grid_points::<T>(grid, ctx)?;
    let records: Vec<CheckRecord> = points
        .par_iter()
        .map(|(label, fp)| Checker::new(label, fp, settings, cfg).run())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let passed = records.iter().filter(|r| r.status == Status::Pass).count();
    let mut alphas: Vec<String> = Vec::new();
    let mut qs: Vec<u32> = Vec::new();
    for (label, fp) in &points {
        if !alphas.contains(label) {
            alphas.push(label.clone());
        }
        if !qs.contains(&fp.q()) {
            qs.push(fp.q());
        }
    }
    Ok(VerifyReport {
        header: Header::new("verify", cfg),
        grid: GridEcho {
            alphas,
            qs,
            n_max: settings.n_max,
            zeros_n_max: settings.zeros_n_max,
            chain_n_max: settings.chain_n_max,
        },
        fault: settings.inject_fault.map(|j| Fault {
            gamma_index: j,
            delta: format!("{}/{}", FAULT_DELTA.0, FAULT_DELTA.1),
        }),
        summary: Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
        },
        records,
    })
}

struct Checker<'a, T: Numeric> {
    label: &'a str,
    fp: &'a FamilyParams<T>,
    settings: VerifySettings,
    tol: &'a Rational,
    bits_kept: u32,
    scale: T,
    out: Vec<CheckRecord>,
}

fn norm<T: Numeric>(p: &Poly<T>, like: &T) -> T {
    p.max_abs_coeff().unwrap_or_else(|| like.zero_like())
}

impl<'a, T: Numeric> Checker<'a, T> {
    fn new(
        label: &'a str,
        fp: &'a FamilyParams<T>,
        settings: VerifySettings,
        cfg: &'a ModeConfig,
    ) -> Self {
        let like = fp.alpha();
        let top = p_poly_ttrr(fp, settings.n_max + 2);
        let scale = like.one_like() + norm(&top, like);
        Checker {
            label,
            fp,
            settings,
            tol: &cfg.refine_tolerance,
            bits_kept: like.precision_bits().map_or(0, |b| b / 2),
            scale,
            out: Vec::new(),
        }
    }

    fn params(&self) -> Params {
        Params {
            alpha: self.label.to_string(),
            q: self.fp.q(),
            mu: None,
            k: None,
            l: None,
            z: None,
        }
    }

    fn push(&mut self, identity: &str, params: Params, n: usize, ok: bool, detail: Option<String>) {
        self.out.push(CheckRecord {
            identity: identity.to_string(),
            params,
            n,
            status: if ok { Status::Pass } else { Status::Fail },
            residual_norm_or_witness: detail,
        });
    }

    fn small(&self, value: &T, scale: &T) -> bool {
        value.negligible_against(scale, self.bits_kept)
    }

    fn residual(&mut self, identity: &str, params: Params, n: usize, r: CoreResult<Poly<T>>) {
        match r {
            Ok(p) => {
                let size = norm(&p, self.fp.alpha());
                let ok = self.small(&size, &self.scale.clone());
                self.push(identity, params, n, ok, Some(size.num().human()));
            }
            Err(e) => self.push(identity, params, n, false, Some(format!("error: {e}"))),
        }
    }

    fn run(mut self) -> Vec<CheckRecord> {
        self.recurrence_and_oracle();
        self.orthogonality();
        self.routes_and_identities();
        self.contiguous();
        self.zero_theorems();
        self.out
    }

    fn recurrence_and_oracle(&mut self) {
        let n_max = self.settings.n_max;
        let fp = self.fp;
        let like = fp.alpha().clone();
        let oracle = match gram_schmidt_oracle(fp, n_max) {
            Ok(o) => o,
            Err(e) => {
                let p = self.params();
                self.push(
                    "recurrence-oracle",
                    p,
                    0,
                    false,
                    Some(format!("error: {e}")),
                );
                return;
            }
        };
        for (k, p) in oracle.iter().enumerate() {
            let params = self.params();
            self.residual("gs-oracle-route", params, k, Ok(p - &p_poly_ttrr(fp, k)));
        }
        match recovered_recurrence(fp, &oracle) {
            Ok(rows) => {
                for row in rows {
                    let k = row.index;
                    let mut diff = (row.beta.clone() - ttrr_beta(fp, k)).abs();
                    if let (Some(g), Ok(closed)) = (&row.gamma, ttrr_gamma(fp, k)) {
                        let dg = (g.clone() - closed).abs();
                        if dg > diff {
                            diff = dg;
                        }
                    }
                    let ok = self.small(&diff, &(like.one_like() + row.beta.abs()));
                    let params = self.params();
                    self.push("recurrence-oracle", params, k, ok, Some(diff.num().human()));
                }
            }
            Err(e) => {
                let p = self.params();
                self.push(
                    "recurrence-oracle",
                    p,
                    0,
                    false,
                    Some(format!("error: {e}")),
                );
            }
        }
        for j in 1..=n_max {
            let closed = ttrr_gamma(fp, j).expect("j >= 1");
            let m = (j / 2) as u64;
            let routed = if j % 2 == 0 {
                gamma_even_from_contiguous(fp.alpha(), fp.q(), m)
            } else {
                Ok(gamma_odd_from_contiguous(fp.alpha(), fp.q(), m))
            };
            let params = self.params();
            match routed {
                Ok(g) => {
                    let diff = (g - &closed).abs();
                    let ok = self.small(&diff, &(like.one_like() + closed.abs()));
                    self.push("gamma-contiguous", params, j, ok, Some(diff.num().human()));
                }
                Err(e) => self.push(
                    "gamma-contiguous",
                    params,
                    j,
                    false,
                    Some(format!("error: {e}")),
                ),
            }
        }
    }

    fn orthogonality(&mut self) {
        let n_max = self.settings.n_max;
        let fp = self.fp;
        let mut rows = recurrence(fp, n_max);
        if let Some(j) = self.settings.inject_fault {
            let delta = fp
                .alpha()
                .lift_rational(&Rational::new(FAULT_DELTA.0.into(), FAULT_DELTA.1.into()));
            if let Some(g) = rows[j].gamma.as_mut() {
                *g = g.clone() + delta;
            }
        }
        let polys = polys_from_recurrence(&rows, fp.alpha(), n_max).expect("rows cover 0..n_max");
        let functional = SignedFunctional::for_degree(fp, n_max);
        for (n, p) in polys.iter().enumerate() {
            let params = self.params();
            match verify_with(&functional, p, n) {
                Ok(report) => {
                    let detail = match report.first_failure {
                        None => format!("k_n = {}", report.values[n].num().human()),
                        Some(m) => format!("<x^{m}, P_{n}> = {}", report.values[m].num().human()),
                    };
                    self.push("orthogonality", params, n, report.passed(), Some(detail));
                }
                Err(e) => self.push(
                    "orthogonality",
                    params,
                    n,
                    false,
                    Some(format!("error: {e}")),
                ),
            }
        }
    }

    fn routes_and_identities(&mut self) {
        let n_max = self.settings.n_max;
        let fp = self.fp;
        for d in (0..=n_max).step_by(2) {
            let ttrr = p_poly_ttrr(fp, d);
            let params = self.params();
            self.residual(
                "hyper-route",
                params,
                d,
                p_poly_hyper(fp, d).map(|h| &h - &ttrr),
            );
            let params = self.params();
            self.residual(
                "hyper-normal-form",
                params,
                d,
                p_poly_hyper_normal_form(fp, d).map(|h| &h - &ttrr),
            );
        }
        let family = IdentityParams::Family(fp.clone());
        let mu = fp.alpha().lift_i64(2 * fp.q() as i64);
        let gg = GGParams::new(fp.alpha().clone(), mu.clone()).map(IdentityParams::Gegenbauer);
        for id in Identity::ALL {
            // largest degree the identity touches for inner index n
            let degree = |n: usize| match id {
                Identity::P2nGg2n | Identity::Zeros1 | Identity::Zeros2 | Identity::GammaEven => {
                    2 * n
                }
                Identity::GammaOdd => 2 * n + 2,
                _ => 2 * n + 1,
            };
            let mut n = id.min_index();
            while degree(n) <= n_max {
                let mut params = self.params();
                let result = if id == Identity::GgOddEven {
                    params.mu = Some(mu.num().human());
                    gg.clone().and_then(|g| check_identity(id, &g, n))
                } else {
                    check_identity(id, &family, n)
                };
                self.residual(id.name(), params, n, result);
                n += 1;
            }
        }
    }

    fn contiguous(&mut self) {
        let fp = self.fp;
        let like = fp.alpha();
        let z = Rational::new(1.into(), 3.into());
        let zt = like.lift_rational(&z);
        let half = like.lift_rational(&Rational::new(1.into(), 2.into()));
        let q = fp.q() as i64;
        for m in 1..=(self.settings.n_max / 2) as i64 {
            let a = like.lift_i64(-m);
            let b = like.lift_i64(-m - q) - &half;
            let c = like.lift_i64(-2 * m - q) - like - &half;
            let Ok(hp) = HypParams::new(a, b, c) else {
                continue;
            };
            for rel in Contiguous::ALL {
                let (Ok(res), Ok(scale)) = (
                    contiguous_residual(rel, &hp, &zt),
                    contiguous_scale(rel, &hp, &zt),
                ) else {
                    continue;
                };
                let ok = self.small(&res, &scale);
                let mut params = self.params();
                params.z = Some(z.to_string());
                self.push(
                    &format!("contiguous-{}", rel.id()),
                    params,
                    m as usize,
                    ok,
                    Some(res.abs().num().human()),
                );
            }
        }
    }

    fn zero_theorems(&mut self) {
        let zmax = self.settings.zeros_n_max;
        let cmax = self.settings.chain_n_max;
        let fp = self.fp;
        let tol = self.tol;
        let like = fp.alpha().clone();

        let sets: Vec<Option<RootSet<T>>> = (0..=zmax)
            .map(|d| {
                let rs = find_zeros(fp, d, tol);
                let params = self.params();
                match rs {
                    Ok(rs) => {
                        let ok = rs.is_symmetric();
                        let detail = format!(
                            "{} real roots{}",
                            rs.real_count(),
                            if ok { "" } else { ", asymmetric" }
                        );
                        self.push("real-zeros", params, d, ok, Some(detail));
                        Some(rs)
                    }
                    Err(e) => {
                        self.push("real-zeros", params, d, false, Some(format!("error: {e}")));
                        None
                    }
                }
            })
            .collect();

        for d in (1..=zmax).step_by(2) {
            let p = p_poly_ttrr(fp, d);
            let value = p.eval(&like.lift_i64(-1));
            let ok = self.small(&value.abs(), &self.scale.clone());
            let params = self.params();
            self.push(
                "perron-zero",
                params,
                d,
                ok,
                Some(value.abs().num().human()),
            );
        }

        let mut n = 1;
        while 2 * n < zmax {
            let params = self.params();
            match (&sets[2 * n], &sets[2 * n + 1]) {
                (Some(lo), Some(hi)) => match check_interlacing(lo, hi) {
                    Ok(report) => {
                        let symmetric = report
                            .witness
                            .as_ref()
                            .is_some_and(|(a, b)| a.enclosure == b.enclosure.negated());
                        let detail =
                            report
                                .witness
                                .as_ref()
                                .map_or("none".to_string(), |(a, b)| {
                                    format!(
                                        "({}, {})",
                                        format_f64(a.refined.to_f64()),
                                        format_f64(b.refined.to_f64())
                                    )
                                });
                        let ok = !report.interlaces && symmetric;
                        self.push("non-interlacing", params, n, ok, Some(detail));
                    }
                    Err(e) => self.push(
                        "non-interlacing",
                        params,
                        n,
                        false,
                        Some(format!("error: {e}")),
                    ),
                },
                _ => self.push(
                    "non-interlacing",
                    params,
                    n,
                    false,
                    Some("error: zeros unavailable".to_string()),
                ),
            }
            n += 1;
        }

        for d in (2..=zmax).step_by(2) {
            let params = self.params();
            match critical_point_check(fp, d, tol) {
                Ok(gaps) => self.push(
                    "critical-points",
                    params,
                    d,
                    true,
                    Some(format!("{} gaps", gaps.len())),
                ),
                Err(e) => self.push(
                    "critical-points",
                    params,
                    d,
                    false,
                    Some(format!("error: {e}")),
                ),
            }
        }

        for n in 1..=cmax {
            let params = self.params();
            match largest_zero_chain(fp.alpha(), fp.q(), n, tol) {
                Ok(links) => {
                    let values: Vec<String> = links
                        .iter()
                        .map(|l| format_f64(l.root.refined.to_f64()))
                        .collect();
                    self.push(
                        "largest-zero-chain",
                        params,
                        n,
                        true,
                        Some(values.join(" > ")),
                    );
                }
                Err(e) => self.push(
                    "largest-zero-chain",
                    params,
                    n,
                    false,
                    Some(format!("error: {e}")),
                ),
            }
        }

        for n in 1..=cmax {
            for k in 0..=1 {
                for l in 0..=1 {
                    let mut params = self.params();
                    params.k = Some(k);
                    params.l = Some(l);
                    match odd_even_zero_map(fp.alpha(), fp.q(), n, k, l, tol) {
                        Ok(r) => {
                            let detail = format!("max deviation {}", r.max_deviation);
                            self.push("odd-even-zero-map", params, n, true, Some(detail));
                        }
                        Err(e) => self.push(
                            "odd-even-zero-map",
                            params,
                            n,
                            false,
                            Some(format!("error: {e}")),
                        ),
                    }
                }
            }
        }
    }
}

impl Report for VerifyReport {
    fn table(&self) -> Table {
        let opt = |o: &Option<String>| o.clone().unwrap_or_default();
        Table {
            header: vec![
                "identity",
                "alpha",
                "q",
                "mu",
                "k",
                "l",
                "z",
                "n",
                "status",
                "residual_norm_or_witness",
            ],
            rows: self
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.identity.clone(),
                        r.params.alpha.clone(),
                        r.params.q.to_string(),
                        opt(&r.params.mu),
                        r.params.k.map_or(String::new(), |k| k.to_string()),
                        r.params.l.map_or(String::new(), |l| l.to_string()),
                        opt(&r.params.z),
                        r.n.to_string(),
                        match r.status {
                            Status::Pass => "pass".to_string(),
                            Status::Fail => "fail".to_string(),
                        },
                        opt(&r.residual_norm_or_witness),
                    ]
                })
                .collect(),
        }
    }

    fn text(&self) -> String {
        let mut s = self.header.text();
        if let Some(f) = &self.fault {
            s.push_str(&format!(
                "# fault injected: gamma_{} += {}\n",
                f.gamma_index, f.delta
            ));
        }
        for r in &self.records {
            let mut params = format!("alpha={} q={}", r.params.alpha, r.params.q);
            if let Some(mu) = &r.params.mu {
                params.push_str(&format!(" mu={mu}"));
            }
            if let (Some(k), Some(l)) = (r.params.k, r.params.l) {
                params.push_str(&format!(" k={k} l={l}"));
            }
            if let Some(z) = &r.params.z {
                params.push_str(&format!(" z={z}"));
            }
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            s.push_str(&format!(
                "{status} {:<18} {params} n={} {}\n",
                r.identity,
                r.n,
                r.residual_norm_or_witness.as_deref().unwrap_or("")
            ));
        }
        s.push_str(&format!(
            "# {} checks, {} passed, {} failed\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        s
    }

    fn passed(&self) -> bool {
        self.summary.failed == 0
    }
}
