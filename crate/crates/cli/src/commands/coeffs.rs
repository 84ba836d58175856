use serde::Serialize;
use signed_ortho::families::recurrence;
use signed_ortho::numerics::ModeConfig;

use super::{alpha_label, parse_family, Header};
use crate::args::FamilyArgs;
use crate::error::CliError;
use crate::output::{Report, Table};
use crate::value::{Num, Numeric};

#[derive(Debug, Clone, Serialize)]
pub struct CoeffRow {
    pub n: usize,
    pub beta: Num,
    pub gamma: Option<Num>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoeffsReport {
    #[serde(flatten)]
    pub header: Header,
    pub alpha: String,
    pub q: u32,
    pub n_max: usize,
    pub rows: Vec<CoeffRow>,
}

pub fn cmd_coeffs<T: Numeric>(
    family: &FamilyArgs,
    n_max: usize,
    cfg: &ModeConfig,
    ctx: &T::Context,
) -> Result<CoeffsReport, CliError> {
    let fp = parse_family::<T>(&family.alpha, family.q, ctx)?;
    let rows = recurrence(&fp, n_max)
        .into_iter()
        .map(|r| CoeffRow {
            n: r.index,
            beta: r.beta.num(),
            gamma: r.gamma.map(|g| g.num()),
        })
        .collect();
    Ok(CoeffsReport {
        header: Header::new("coeffs", cfg),
        alpha: alpha_label(&family.alpha, fp.alpha()),
        q: fp.q(),
        n_max,
        rows,
    })
}

impl Report for CoeffsReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["n", "beta", "gamma"],
            rows: self
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.beta.cell(),
                        r.gamma.as_ref().map_or(String::new(), Num::cell),
                    ]
                })
                .collect(),
        }
    }

    fn text(&self) -> String {
        let mut s = self.header.text();
        s.push_str(&format!("# alpha = {}, q = {}\n", self.alpha, self.q));
        for r in &self.rows {
            let gamma = r.gamma.as_ref().map_or("-".to_string(), Num::human);
            s.push_str(&format!(
                "n={:<3} beta={:<4} gamma={}\n",
                r.n,
                r.beta.human(),
                gamma
            ));
        }
        s
    }
}
