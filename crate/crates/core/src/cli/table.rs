//! Reference tables, recomputed on every call.

use serde::Serialize;

use super::settle;
use crate::error::Result;
use crate::series::rat::{q_pow_neg, to_decimal, Rat};
use crate::series::{iz2, iz3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableId {
    /// `𝕀(Z_2, q)` and `𝕀(Z_3, q)` for q = 2..6, 7 places.
    T1,
    /// `𝕀(Z_2, q)` for q = 2..8, 7 places.
    T2,
    /// `𝕀(Z_2, q)` against its closed-form brackets, q = 2..8, 5 places.
    T3,
    /// `𝕀(Z_3, q)` for q = 2..6, 8 places.
    T4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableData {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn z2_value(q: u32, digits: u32) -> Result<String> {
    settle(|eps| iz2(q, eps), digits)
}

fn z3_value(q: u32, digits: u32) -> Result<String> {
    settle(|eps| iz3(q, eps), digits)
}

fn row<F>(label: &str, qs: &[u32], f: F) -> Result<Vec<String>>
where
    F: Fn(u32) -> Result<String>,
{
    let mut r = vec![label.to_string()];
    for &q in qs {
        r.push(f(q)?);
    }
    Ok(r)
}

fn header(qs: &[u32]) -> Vec<String> {
    std::iter::once("q".to_string()).chain(qs.iter().map(u32::to_string)).collect()
}

pub fn build(which: TableId) -> Result<TableData> {
    let small: Vec<u32> = (2..=6).collect();
    let wide: Vec<u32> = (2..=8).collect();
    Ok(match which {
        TableId::T1 => TableData {
            title: "I(Z_2,q) and I(Z_3,q)".into(),
            header: header(&small),
            rows: vec![
                row("I(Z_2,q)", &small, |q| z2_value(q, 7))?,
                row("I(Z_3,q)", &small, |q| z3_value(q, 7))?,
            ],
        },
        TableId::T2 => TableData {
            title: "I(Z_2,q)".into(),
            header: header(&wide),
            rows: vec![row("I(Z_2,q)", &wide, |q| z2_value(q, 7))?],
        },
        TableId::T3 => {
            let inv = |q: u32, shift: u32| Rat::new(1.into(), (q - shift).into());
            TableData {
                title: "I(Z_2,q) and its brackets".into(),
                header: header(&wide),
                rows: vec![
                    row("q^-1", &wide, |q| Ok(to_decimal(&inv(q, 0), 5)))?,
                    row("I(Z_2,q)", &wide, |q| z2_value(q, 5))?,
                    row("(q-1)^-1 - q^-3", &wide, |q| Ok(to_decimal(&(inv(q, 1) - q_pow_neg(q, 3)), 5)))?,
                    row("(q-1)^-1", &wide, |q| Ok(to_decimal(&inv(q, 1), 5)))?,
                ],
            }
        }
        TableId::T4 => TableData {
            title: "I(Z_3,q)".into(),
            header: header(&small),
            rows: vec![row("I(Z_3,q)", &small, |q| z3_value(q, 8))?],
        },
    })
}

impl TableData {
    pub fn to_text(&self) -> String {
        let all: Vec<&Vec<String>> = std::iter::once(&self.header).chain(&self.rows).collect();
        let cols = self.header.len();
        let widths: Vec<usize> = (0..cols)
            .map(|c| all.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in all {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("| {} |\n", self.header.join(" | "));
        out.push_str(&format!("|{}\n", "---|".repeat(self.header.len())));
        for r in &self.rows {
            out.push_str(&format!("| {} |\n", r.join(" | ")));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        std::iter::once(&self.header)
            .chain(&self.rows)
            .map(|r| r.join(",") + "\n")
            .collect()
    }
}
