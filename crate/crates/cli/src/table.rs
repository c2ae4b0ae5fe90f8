//! Renderings of a `verify` run.

use std::io::{self, Write};

use lambdag_core::theorems::{Method, VerificationReport};

use crate::record::OutputRecord;

pub const CSV_HEADER: [&str; 10] = [
    "n",
    "partition",
    "delta_closed",
    "delta_recursive",
    "delta_brute",
    "lambda2_closed",
    "lambda2_eq5",
    "lambda2_eq3",
    "lambda_g_pred",
    "agree",
];

fn partition_cell(r: &VerificationReport) -> String {
    r.partition
        .as_slice()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn agree_cell(r: &VerificationReport) -> &'static str {
    if r.agreed {
        "AGREE"
    } else {
        "DISAGREE"
    }
}

fn row(r: &VerificationReport) -> Vec<String> {
    let mut cells = vec![r.n.to_string(), partition_cell(r)];
    cells.extend(Method::ALL.iter().map(|&m| {
        r.value(m)
            .map_or_else(|| "error".to_string(), ToString::to_string)
    }));
    cells.push(agree_cell(r).to_string());
    cells
}

pub fn write_csv<W: Write>(out: W, reports: &[VerificationReport]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record(row(r))?;
    }
    w.flush()
}

pub fn write_text<W: Write>(mut out: W, reports: &[VerificationReport]) -> io::Result<()> {
    let rows: Vec<Vec<String>> = reports.iter().map(row).collect();
    let mut widths: Vec<usize> = CSV_HEADER.iter().map(|h| h.len()).collect();
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let header: Vec<String> = CSV_HEADER.iter().map(|h| h.to_string()).collect();
    for cells in std::iter::once(&header).chain(&rows) {
        let line: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
    }
    let failed = reports.iter().filter(|r| !r.agreed).count();
    writeln!(out, "{} rows, {} disagree", reports.len(), failed)
}

pub fn records(reports: &[VerificationReport]) -> Vec<OutputRecord> {
    reports
        .iter()
        .map(|r| {
            let mut rec = OutputRecord::new("verify")
                .input("n", r.n)
                .input("partition", &r.partition);
            for (m, v) in &r.values {
                rec = rec.result(m.name(), v.clone());
            }
            rec.agree = Some(r.agreed);
            rec
        })
        .collect()
}

pub fn write_json<W: Write>(mut out: W, reports: &[VerificationReport]) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, &records(reports))?;
    writeln!(out)
}
