use serde::Serialize;
use signed_ortho::numerics::ModeConfig;
use signed_ortho::zeros::{check_interlacing, find_zeros, Root, RootSet};

use super::{alpha_label, parse_family, Header};
use crate::args::FamilyArgs;
use crate::error::CliError;
use crate::output::{Report, Table};
use crate::value::{approx, format_f64, rational, Num, Numeric};

#[derive(Debug, Clone, Serialize)]
pub struct RootRow {
    /// 1-based, ascending.
    pub index: usize,
    /// `[lo, hi]` as exact rationals.
    pub enclosure: [String; 2],
    pub refined: Num,
    /// `"at_minus_one"`, `"at_zero"` or null.
    pub structural: Option<&'static str>,
    #[serde(skip)]
    pub approx: String,
}

impl RootRow {
    pub fn from_root<T: Numeric>(index: usize, r: &Root<T>) -> Self {
        RootRow {
            index,
            enclosure: [rational(&r.enclosure.lo), rational(&r.enclosure.hi)],
            refined: r.refined.num(),
            structural: r.structural.map(|s| s.name()),
            approx: format_f64(r.refined.to_f64()),
        }
    }
}

pub fn root_rows<T: Numeric>(rs: &RootSet<T>) -> Vec<RootRow> {
    rs.roots
        .iter()
        .enumerate()
        .map(|(i, r)| RootRow::from_root(i + 1, r))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct InterlacingRow {
    pub lower_degree: usize,
    pub higher_degree: usize,
    pub interlaces: bool,
    /// Consecutive roots of the higher-degree polynomial with no root of
    /// the lower one between them.
    pub witness: Option<[RootRow; 2]>,
    #[serde(skip)]
    pub witness_text: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZerosReport {
    #[serde(flatten)]
    pub header: Header,
    pub alpha: String,
    pub q: u32,
    pub n: usize,
    pub real_roots: usize,
    pub nonreal_roots: usize,
    pub roots: Vec<RootRow>,
    pub interlacing: Option<InterlacingRow>,
}

pub fn cmd_zeros<T: Numeric>(
    family: &FamilyArgs,
    n: usize,
    interlace_with: Option<usize>,
    cfg: &ModeConfig,
    ctx: &T::Context,
) -> Result<ZerosReport, CliError> {
    let fp = parse_family::<T>(&family.alpha, family.q, ctx)?;
    let tol = &cfg.refine_tolerance;
    let rs = find_zeros(&fp, n, tol)?;
    let interlacing = match interlace_with {
        None => None,
        Some(m) if m + 1 == n || n + 1 == m => {
            let other = find_zeros(&fp, m, tol)?;
            let (lo, hi) = if m < n { (&other, &rs) } else { (&rs, &other) };
            let report = check_interlacing(lo, hi)?;
            let witness_text = report.witness.as_ref().map(|(a, b)| {
                format!(
                    "({}, {})",
                    format_f64(a.refined.to_f64()),
                    format_f64(b.refined.to_f64())
                )
            });
            Some(InterlacingRow {
                lower_degree: lo.degree,
                higher_degree: hi.degree,
                interlaces: report.interlaces,
                witness: report
                    .witness
                    .map(|(a, b)| [RootRow::from_root(0, &a), RootRow::from_root(0, &b)]),
                witness_text,
            })
        }
        Some(m) => {
            return Err(CliError::Usage(format!(
                "--interlace-with must be n-1 or n+1, got {m} for n = {n}"
            )))
        }
    };
    Ok(ZerosReport {
        header: Header::new("zeros", cfg),
        alpha: alpha_label(&family.alpha, fp.alpha()),
        q: fp.q(),
        n,
        real_roots: rs.real_count(),
        nonreal_roots: rs.nonreal_count(),
        roots: root_rows(&rs),
        interlacing,
    })
}

impl Report for ZerosReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["index", "lo", "hi", "refined", "structural"],
            rows: self
                .roots
                .iter()
                .map(|r| {
                    vec![
                        r.index.to_string(),
                        r.enclosure[0].clone(),
                        r.enclosure[1].clone(),
                        r.refined.cell(),
                        r.structural.unwrap_or("").to_string(),
                    ]
                })
                .collect(),
        }
    }

    fn text(&self) -> String {
        let mut s = self.header.text();
        s.push_str(&format!(
            "# zeros of P_{} (alpha = {}, q = {}): {} real, {} nonreal\n",
            self.n, self.alpha, self.q, self.real_roots, self.nonreal_roots
        ));
        for r in &self.roots {
            let tag = r.structural.map_or(String::new(), |t| format!("  ({t})"));
            s.push_str(&format!("{:>3}  {:>16}{tag}\n", r.index, r.approx));
        }
        if let Some(il) = &self.interlacing {
            let verdict = if il.interlaces {
                "interlacing".to_string()
            } else {
                format!(
                    "non-interlacing, witness {}",
                    il.witness_text.as_deref().unwrap_or("none")
                )
            };
            s.push_str(&format!(
                "P_{} vs P_{}: {verdict}\n",
                il.lower_degree, il.higher_degree
            ));
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FigureRow {
    /// Decimal position, for plotting.
    pub x: String,
    /// `"P_2"` or `"P_3"`.
    pub family: &'static str,
    /// 1-based, ascending within the family.
    pub zero_index: usize,
}

/// Zeros of `P_2` and `P_3` on a shared axis.
#[derive(Debug, Clone, Serialize)]
pub struct FigureReport {
    #[serde(flatten)]
    pub header: Header,
    pub alpha: String,
    pub q: u32,
    pub rows: Vec<FigureRow>,
}

pub fn cmd_figure<T: Numeric>(
    family: &FamilyArgs,
    cfg: &ModeConfig,
    ctx: &T::Context,
) -> Result<FigureReport, CliError> {
    let fp = parse_family::<T>(&family.alpha, family.q, ctx)?;
    let mut rows = Vec::new();
    for (n, name) in [(2, "P_2"), (3, "P_3")] {
        let rs = find_zeros(&fp, n, &cfg.refine_tolerance)?;
        for (i, r) in rs.roots.iter().enumerate() {
            rows.push(FigureRow {
                x: approx(&r.enclosure.midpoint()),
                family: name,
                zero_index: i + 1,
            });
        }
    }
    Ok(FigureReport {
        header: Header::new("zeros-figure", cfg),
        alpha: alpha_label(&family.alpha, fp.alpha()),
        q: fp.q(),
        rows,
    })
}

impl Report for FigureReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["x", "family", "zero_index"],
            rows: self
                .rows
                .iter()
                .map(|r| vec![r.x.clone(), r.family.to_string(), r.zero_index.to_string()])
                .collect(),
        }
    }

    fn text(&self) -> String {
        let mut s = self.header.text();
        s.push_str(&format!(
            "# zeros of P_2 and P_3 (alpha = {}, q = {})\n",
            self.alpha, self.q
        ));
        for r in &self.rows {
            s.push_str(&format!("{}  {}  {}\n", r.family, r.zero_index, r.x));
        }
        s
    }
}
