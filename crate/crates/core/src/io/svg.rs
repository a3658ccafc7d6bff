//! Minimal SVG line charts.

use std::fmt::Write;

use crate::geodesics::Trajectory;

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 50.0;
const COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

struct Series<'a> {
    name: &'a str,
    pts: Vec<(f64, f64)>,
}

fn bounds(series: &[Series]) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for s in series {
        for &(x, y) in &s.pts {
            b = (b.0.min(x), b.1.max(x), b.2.min(y), b.3.max(y));
        }
    }
    if !b.0.is_finite() {
        return (0.0, 1.0, 0.0, 1.0);
    }
    if b.1 - b.0 < 1e-300 {
        b.1 = b.0 + 1.0;
    }
    if b.3 - b.2 < 1e-300 {
        b = (b.0, b.1, b.2 - 0.5, b.3 + 0.5);
    }
    b
}

fn chart(title: &str, xlabel: &str, ylabel: &str, series: &[Series]) -> String {
    let (x0, x1, y0, y1) = bounds(series);
    let px = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let py = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);
    let mut o = String::new();
    let _ = writeln!(
        o,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(o, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        o,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{title}</text>"#,
        W / 2.0
    );
    let _ = writeln!(
        o,
        r#"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    let _ = writeln!(
        o,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">{xlabel}</text>"#,
        W / 2.0,
        H - 12.0
    );
    let _ = writeln!(
        o,
        r#"<text x="14" y="{}" font-size="12" transform="rotate(-90 14 {})" text-anchor="middle">{ylabel}</text>"#,
        H / 2.0,
        H / 2.0
    );
    for (v, x, y, anchor) in [
        (x0, px(x0), H - PAD + 16.0, "start"),
        (x1, px(x1), H - PAD + 16.0, "end"),
    ] {
        let _ = writeln!(
            o,
            r#"<text x="{x:.1}" y="{y:.1}" font-size="10" text-anchor="{anchor}">{v:.3}</text>"#
        );
    }
    for (v, y) in [(y0, py(y0)), (y1, py(y1))] {
        let _ = writeln!(
            o,
            r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="end">{v:.3}</text>"#,
            PAD - 4.0,
            y + 3.0
        );
    }
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut pts = String::new();
        for &(x, y) in &s.pts {
            let _ = write!(pts, "{:.2},{:.2} ", px(x), py(y));
        }
        let _ = writeln!(
            o,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#,
            pts.trim_end()
        );
        let ly = PAD + 14.0 + 14.0 * i as f64;
        let _ = writeln!(
            o,
            r#"<text x="{:.1}" y="{ly:.1}" font-size="11" fill="{color}">{}</text>"#,
            W - PAD - 90.0,
            s.name
        );
    }
    o.push_str("</svg>\n");
    o
}

/// Keeps at most about `n` evenly spaced points.
fn thin<T: Copy>(v: &[T], n: usize) -> Vec<T> {
    let stride = (v.len() / n.max(1)).max(1);
    let mut out: Vec<T> = v.iter().step_by(stride).copied().collect();
    if let Some(&last) = v.last() {
        if (v.len() - 1) % stride != 0 {
            out.push(last);
        }
    }
    out
}

/// `log10` of each invariant's drift against `s`. Zero drift is drawn at
/// `-17`.
pub fn drift_svg(tr: &Trajectory) -> String {
    let samples = thin(&tr.samples, 2000);
    let r0 = tr.first().record;
    let pick: [(&str, fn(&crate::geodesics::InvariantRecord) -> f64); 5] = [
        ("E", |r| r.e),
        ("p_a", |r| r.p_a),
        ("p_b", |r| r.p_b),
        ("clairaut1", |r| r.clairaut1),
        ("clairaut2", |r| r.clairaut2),
    ];
    let series: Vec<Series> = pick
        .iter()
        .map(|(name, f)| {
            let base = f(&r0);
            let scale = base.abs().max(1.0);
            Series {
                name,
                pts: samples
                    .iter()
                    .map(|smp| {
                        let d = (f(&smp.record) - base).abs() / scale;
                        (smp.record.s, if d > 0.0 { d.log10().max(-17.0) } else { -17.0 })
                    })
                    .filter(|p| p.1.is_finite())
                    .collect(),
            }
        })
        .collect();
    chart(
        &format!("invariant drift, {}", tr.meta.family.name()),
        "s",
        "log10 drift",
        &series,
    )
}

/// Projection of the orbit onto the `(a, b)` angle plane.
pub fn orbit_svg(tr: &Trajectory) -> String {
    let samples = thin(&tr.samples, 4000);
    let series = [Series {
        name: "orbit",
        pts: samples.iter().map(|s| (s.state.a, s.state.b)).collect(),
    }];
    chart(
        &format!("orbit in the angle plane, {}", tr.meta.family.name()),
        "a",
        "b",
        &series,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thinning_keeps_ends() {
        let v: Vec<usize> = (0..10).collect();
        assert_eq!(thin(&v, 3), vec![0, 3, 6, 9]);
        let v: Vec<usize> = (0..11).collect();
        assert_eq!(thin(&v, 3), vec![0, 3, 6, 9, 10]);
        assert_eq!(thin(&v, 100), v);
    }
}
