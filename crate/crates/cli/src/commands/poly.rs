use serde::Serialize;
use signed_ortho::families::{gg_poly, p_poly_hyper, p_poly_ttrr, GGParams};
use signed_ortho::numerics::{parse_scalar, ModeConfig};
use signed_ortho::orthogonality::gram_schmidt_oracle;
use signed_ortho::Poly;

use super::{alpha_label, parse_family, Header};
use crate::args::{FamilyArgs, Route};
use crate::error::CliError;
use crate::output::{Report, Table};
use crate::value::{Num, Numeric};

#[derive(Debug, Clone, Serialize)]
pub struct PolyReport {
    #[serde(flatten)]
    pub header: Header,
    /// `"P"` or `"GG"`.
    pub family: &'static str,
    pub alpha: String,
    /// Present for `P`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    /// Present for `GG`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    pub n: usize,
    pub route: &'static str,
    /// Ascending powers: entry `k` multiplies `x^k`.
    pub coefficients: Vec<Num>,
    #[serde(skip)]
    pub display: String,
}

fn padded<T: Numeric>(p: &Poly<T>, n: usize, like: &T) -> Vec<Num> {
    (0..=n)
        .map(|k| {
            p.coeff(k)
                .cloned()
                .unwrap_or_else(|| like.zero_like())
                .num()
        })
        .collect()
}

pub fn cmd_poly<T: Numeric>(
    family: &FamilyArgs,
    n: usize,
    route: Option<Route>,
    mu: Option<&str>,
    cfg: &ModeConfig,
    ctx: &T::Context,
) -> Result<PolyReport, CliError> {
    let header = Header::new("poly", cfg);
    if let Some(mu_text) = mu {
        let route = route.unwrap_or(Route::Hyper);
        if route != Route::Hyper {
            return Err(CliError::Usage(format!(
                "GG polynomials are built by the hyper route only, got {}",
                route.name()
            )));
        }
        let alpha = parse_scalar::<T>(family.alpha.trim(), ctx)?;
        let mu_value = parse_scalar::<T>(mu_text.trim(), ctx)?;
        let gp = GGParams::new(alpha.clone(), mu_value.clone())?;
        let p = gg_poly(&gp, n)?;
        return Ok(PolyReport {
            header,
            family: "GG",
            alpha: alpha_label(&family.alpha, &alpha),
            q: None,
            mu: Some(alpha_label(mu_text, &mu_value)),
            n,
            route: route.name(),
            coefficients: padded(&p, n, &alpha),
            display: p.to_string(),
        });
    }
    let fp = parse_family::<T>(&family.alpha, family.q, ctx)?;
    let route = route.unwrap_or(Route::Ttrr);
    let p = match route {
        Route::Ttrr => p_poly_ttrr(&fp, n),
        Route::Hyper => p_poly_hyper(&fp, n)?,
        Route::GsOracle => gram_schmidt_oracle(&fp, n)?
            .pop()
            .expect("n + 1 polynomials"),
    };
    Ok(PolyReport {
        header,
        family: "P",
        alpha: alpha_label(&family.alpha, fp.alpha()),
        q: Some(fp.q()),
        mu: None,
        n,
        route: route.name(),
        coefficients: padded(&p, n, fp.alpha()),
        display: p.to_string(),
    })
}

impl Report for PolyReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["power", "coefficient"],
            rows: self
                .coefficients
                .iter()
                .enumerate()
                .map(|(k, c)| vec![k.to_string(), c.cell()])
                .collect(),
        }
    }

    fn text(&self) -> String {
        let mut s = self.header.text();
        let params = match (&self.q, &self.mu) {
            (Some(q), _) => format!("alpha = {}, q = {q}", self.alpha),
            (None, Some(mu)) => format!("alpha = {}, mu = {mu}", self.alpha),
            _ => format!("alpha = {}", self.alpha),
        };
        s.push_str(&format!(
            "# {}_{} ({params}), route {}\n",
            self.family, self.n, self.route
        ));
        s.push_str(&self.display);
        s.push('\n');
        s
    }
}
