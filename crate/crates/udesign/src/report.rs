// SPDX-License-Identifier: Apache-2.0

//! Tomography report tables.

use serde::Serialize;
use udesign_core::tomography::TomographyReport;

use crate::format::{fmt_f64, to_json_string};

pub const CSV_HEADER: &str = "class,d,N,trials,empirical_mean,std_err,predicted,purity,seed";

/// JSON mirror of one CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub class: &'static str,
    pub d: usize,
    #[serde(rename = "N")]
    pub n: u64,
    pub trials: usize,
    pub empirical_mean: f64,
    pub std_err: f64,
    pub predicted: f64,
    pub purity: f64,
    pub seed: u64,
}

impl From<&TomographyReport> for ReportRecord {
    fn from(r: &TomographyReport) -> Self {
        Self {
            class: r.class.as_str(),
            d: r.d,
            n: r.shots,
            trials: r.trials,
            empirical_mean: r.empirical_mean,
            std_err: r.std_err,
            predicted: r.predicted,
            purity: r.purity,
            seed: r.seed,
        }
    }
}

pub fn csv(reports: &[TomographyReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.class.as_str(),
            r.d,
            r.shots,
            r.trials,
            fmt_f64(r.empirical_mean),
            fmt_f64(r.std_err),
            fmt_f64(r.predicted),
            fmt_f64(r.purity),
            r.seed
        ));
    }
    out
}

/// A JSON array of [`ReportRecord`]s.
pub fn json(reports: &[TomographyReport]) -> String {
    let records: Vec<ReportRecord> = reports.iter().map(ReportRecord::from).collect();
    let mut s = to_json_string(&records);
    s.push('\n');
    s
}
