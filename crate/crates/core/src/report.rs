//! Tabular rendering of `D_n` profiles, one row per `n`.

use std::fmt::Write as _;

use crate::maximal::DnProfile;

pub const CSV_HEADER: &str = "n,E,F,Cl,alpha,delta,S";

/// Comma-separated rows; the degree sequence is quoted as `"(d_0,...,d_{n-1})"`.
pub fn profiles_csv(rows: &[DnProfile]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},\"{}\"",
            p.n,
            p.edge_count,
            p.full_degree_count,
            p.clique_number,
            p.independence_number,
            p.min_degree,
            p.degree_sequence
        );
    }
    out
}

/// Space-aligned columns for terminals.
pub fn profiles_text(rows: &[DnProfile]) -> String {
    let header = ["n", "|E|", "F", "Cl", "alpha", "delta", "S"];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|p| {
            [
                p.n.to_string(),
                p.edge_count.to_string(),
                p.full_degree_count.to_string(),
                p.clique_number.to_string(),
                p.independence_number.to_string(),
                p.min_degree.to_string(),
                p.degree_sequence.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut line = |fields: &[&str]| {
        let mut s = String::new();
        for (i, (f, w)) in fields.iter().zip(widths).enumerate() {
            if i + 1 == fields.len() {
                s.push_str(f);
            } else {
                let _ = write!(s, "{f:>w$}  ");
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&header);
    for row in &cells {
        line(&row.each_ref().map(String::as_str));
    }
    out
}
