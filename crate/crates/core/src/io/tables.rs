//! CSV tables. Floats use the shortest text that parses back to the same
//! value; `None` is an empty cell.

use crate::geodesics::Trajectory;
use crate::surfaces::MeshRow;

use super::summary::RunSummary;

pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn write_table(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        debug_assert_eq!(r.len(), header.len());
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

pub const TRAJECTORY_COLUMNS: [&str; 16] = [
    "s", "a", "b", "t", "va", "vb", "vt", "E", "p_a", "p_b", "clairaut1", "clairaut2", "V", "phi",
    "theta", "l",
];

pub fn trajectory_csv(tr: &Trajectory) -> String {
    write_table(
        &TRAJECTORY_COLUMNS,
        tr.samples.iter().map(|smp| {
            let (x, r) = (&smp.state, &smp.record);
            let mut row: Vec<String> = [r.s, x.a, x.b, x.t, x.va, x.vb, x.vt, r.e, r.p_a, r.p_b]
                .into_iter()
                .chain([r.clairaut1, r.clairaut2, r.v])
                .map(fmt_f64)
                .collect();
            row.push(fmt_opt(r.phi));
            row.push(fmt_opt(r.theta));
            row.push(fmt_f64(r.l));
            row
        }),
    )
}

pub const MESH_COLUMNS: [&str; 10] =
    ["t", "s", "c1", "c2", "c3", "c4", "K", "H_e3", "H_e4", "deviation"];

pub fn mesh_csv(rows: &[MeshRow]) -> String {
    write_table(
        &MESH_COLUMNS,
        rows.iter().map(|r| {
            let mut row: Vec<String> =
                [r.t, r.s, r.c1, r.c2, r.c3, r.c4].into_iter().map(fmt_f64).collect();
            row.extend([r.k, r.h_e3, r.h_e4, r.deviation].map(fmt_opt));
            row
        }),
    )
}

pub const SUMMARY_COLUMNS: [&str; 23] = [
    "index",
    "phi0",
    "theta0",
    "a0",
    "b0",
    "t0",
    "s_final",
    "a",
    "b",
    "t",
    "va",
    "vb",
    "vt",
    "steps",
    "termination",
    "drift_E",
    "drift_p_a",
    "drift_p_b",
    "drift_clairaut1",
    "drift_clairaut2",
    "drift_residual",
    "residual_mean",
    "note",
];

pub fn summary_row(index: usize, r: &RunSummary) -> Vec<String> {
    let mut row = vec![index.to_string()];
    row.extend([r.phi0, r.theta0].map(fmt_opt));
    row.extend([r.start.a, r.start.b, r.start.t].map(fmt_f64));
    match &r.end {
        Some((s, x)) => {
            row.push(fmt_f64(*s));
            row.extend([x.a, x.b, x.t, x.va, x.vb, x.vt].map(fmt_f64));
        }
        None => row.extend(std::iter::repeat(String::new()).take(7)),
    }
    row.push(r.steps.to_string());
    row.push(r.termination.clone());
    let d = &r.drifts;
    row.extend([d.e, d.p_a, d.p_b, d.clairaut1, d.clairaut2].map(fmt_f64));
    row.extend([d.residual, r.residual_mean].map(fmt_opt));
    row.push(r.note.clone().unwrap_or_default());
    row
}

pub fn summary_csv(rows: &[RunSummary]) -> String {
    write_table(
        &SUMMARY_COLUMNS,
        rows.iter().enumerate().map(|(i, r)| summary_row(i, r)),
    )
}

/// Parses a table written by this module into header and rows.
pub fn read_table(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>), String> {
    let mut rd = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = rd
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for rec in rd.records() {
        rows.push(rec.map_err(|e| e.to_string())?.iter().map(str::to_string).collect());
    }
    Ok((header, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_text_round_trips() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02e23, 0.0, -0.0, 5e-324] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(fmt_opt(None), "");
    }

    #[test]
    fn quoting() {
        let t = write_table(&["x", "note"], std::iter::once(vec!["1.0".into(), "a, \"b\"".into()]));
        let (h, rows) = read_table(&t).unwrap();
        assert_eq!(h, vec!["x", "note"]);
        assert_eq!(rows[0][1], "a, \"b\"");
    }
}
