use rayon::prelude::*;
use serde::Serialize;
use signed_ortho::families::FamilyParams;
use signed_ortho::numerics::ModeConfig;
use signed_ortho::zeros::{check_interlacing, find_zeros, StructuralRoot};

use super::{grid_points, Header};
use crate::args::GridArgs;
use crate::error::CliError;
use crate::output::{Report, Table};
use crate::value::{Num, Numeric};

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub alpha: String,
    pub q: u32,
    pub n: usize,
    /// `"ok"` or `"error"`.
    pub status: &'static str,
    pub real_roots: Option<usize>,
    pub nonreal_roots: Option<usize>,
    pub perron_zero: Option<bool>,
    pub smallest_zero: Option<Num>,
    pub largest_zero: Option<Num>,
    /// Whether the zeros of `P_n` and `P_{n+1}` interlace.
    pub interlaces_with_next: Option<bool>,
    pub message: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    #[serde(flatten)]
    pub header: Header,
    pub n_max: usize,
    pub rows: Vec<SweepRow>,
}

fn sweep_point<T: Numeric>(
    label: &str,
    fp: &FamilyParams<T>,
    n_max: usize,
    cfg: &ModeConfig,
) -> Vec<SweepRow> {
    let tol = &cfg.refine_tolerance;
    let sets: Vec<_> = (0..=n_max + 1).map(|d| find_zeros(fp, d, tol)).collect();
    (1..=n_max)
        .map(|n| {
            let mut row = SweepRow {
                alpha: label.to_string(),
                q: fp.q(),
                n,
                status: "ok",
                real_roots: None,
                nonreal_roots: None,
                perron_zero: None,
                smallest_zero: None,
                largest_zero: None,
                interlaces_with_next: None,
                message: None,
            };
            match &sets[n] {
                Ok(rs) => {
                    row.real_roots = Some(rs.real_count());
                    row.nonreal_roots = Some(rs.nonreal_count());
                    row.perron_zero = Some(rs.has_structural(StructuralRoot::AtMinusOne));
                    row.smallest_zero = rs.roots.first().map(|r| r.refined.num());
                    row.largest_zero = rs.roots.last().map(|r| r.refined.num());
                    if let Ok(next) = &sets[n + 1] {
                        match check_interlacing(rs, next) {
                            Ok(r) => row.interlaces_with_next = Some(r.interlaces),
                            Err(e) => {
                                row.status = "error";
                                row.message = Some(e.to_string());
                            }
                        }
                    }
                }
                Err(e) => {
                    row.status = "error";
                    row.message = Some(e.to_string());
                }
            }
            row
        })
        .collect()
}

pub fn cmd_sweep<T: Numeric>(
    grid: &GridArgs,
    n_max: usize,
    cfg: &ModeConfig,
    ctx: &T::Context,
) -> Result<SweepReport, CliError> {
    let points = grid_points::<T>(grid, ctx)?;
    let rows = points
        .par_iter()
        .map(|(label, fp)| sweep_point(label, fp, n_max, cfg))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(SweepReport {
        header: Header::new("sweep", cfg),
        n_max,
        rows,
    })
}

impl Report for SweepReport {
    fn table(&self) -> Table {
        let num = |o: &Option<Num>| o.as_ref().map_or(String::new(), Num::cell);
        let show = |o: Option<String>| o.unwrap_or_default();
        Table {
            header: vec![
                "alpha",
                "q",
                "n",
                "status",
                "real_roots",
                "nonreal_roots",
                "perron_zero",
                "smallest_zero",
                "largest_zero",
                "interlaces_with_next",
                "message",
            ],
            rows: self
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.alpha.clone(),
                        r.q.to_string(),
                        r.n.to_string(),
                        r.status.to_string(),
                        show(r.real_roots.map(|v| v.to_string())),
                        show(r.nonreal_roots.map(|v| v.to_string())),
                        show(r.perron_zero.map(|v| v.to_string())),
                        num(&r.smallest_zero),
                        num(&r.largest_zero),
                        show(r.interlaces_with_next.map(|v| v.to_string())),
                        show(r.message.clone()),
                    ]
                })
                .collect(),
        }
    }

    fn text(&self) -> String {
        let mut s = self.header.text();
        for r in &self.rows {
            if r.status != "ok" {
                s.push_str(&format!(
                    "alpha={} q={} n={}: error: {}\n",
                    r.alpha,
                    r.q,
                    r.n,
                    r.message.as_deref().unwrap_or("")
                ));
                continue;
            }
            let human = |o: &Option<Num>| o.as_ref().map_or("-".to_string(), Num::human);
            s.push_str(&format!(
                "alpha={} q={} n={}: real={} perron={} smallest={} largest={} interlaces_next={}\n",
                r.alpha,
                r.q,
                r.n,
                r.real_roots.unwrap_or(0),
                r.perron_zero.unwrap_or(false),
                human(&r.smallest_zero),
                human(&r.largest_zero),
                r.interlaces_with_next
                    .map_or("-".to_string(), |b| b.to_string())
            ));
        }
        s
    }

    fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status == "ok")
    }
}
