//! Minimal standalone line charts.

use std::fmt::Write;

use crate::table::Table;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 80.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
        let pad = 0.5 * lo.abs().max(1.0);
        (lo - pad, hi + pad)
    } else {
        (lo, hi)
    }
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if (1e-3..1e4).contains(&v.abs()) {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}

/// Renders `table` as an 800×600 SVG: one series per value column against the
/// first column. Non-finite points are dropped with a note. A series with a
/// single drawable point, or a one-row table, is drawn as markers only.
pub fn emit_svg(table: &Table, title: &str) -> String {
    let (x0, x1) = range(table.column(0));
    let (y0, y1) = range((1..table.columns.len()).flat_map(|c| table.column(c)));
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        LEFT + pw / 2.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for k in 0..=5 {
        let f = k as f64 / 5.0;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            out,
            r#"<line x1="{px}" y1="{}" x2="{px}" y2="{}" stroke="black"/><text x="{px}" y="{}" text-anchor="middle">{}</text>"#,
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 20.0,
            tick_label(xv)
        );
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{py}" x2="{LEFT}" y2="{py}" stroke="black"/><text x="{}" y="{}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 35.0,
        escape(&table.columns[0])
    );
    let y_label = if table.value_columns().len() == 1 {
        table.value_columns()[0].as_str()
    } else {
        "value"
    };
    let _ = writeln!(
        out,
        r#"<text x="20" y="{}" text-anchor="middle" transform="rotate(-90 20 {})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(y_label)
    );

    let mut notes = Vec::new();
    for (k, name) in table.value_columns().iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let points: Vec<(f64, f64)> = table
            .rows
            .iter()
            .map(|r| (r[0], r[k + 1]))
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .collect();
        let dropped = table.rows.len() - points.len();
        if dropped > 0 {
            notes.push(format!("{name}: dropped {dropped} non-finite value(s)"));
        }
        let _ = writeln!(out, r#"<g class="series" data-name="{}">"#, escape(name));
        if table.rows.len() > 1 && points.len() > 1 {
            let coords: Vec<String> = points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                coords.join(" ")
            );
        }
        for &(x, y) in &points {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                sx(x),
                sy(y)
            );
        }
        let ly = TOP + 10.0 + 20.0 * k as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(name)
        );
        let _ = writeln!(out, "</g>");
    }
    for (k, note) in notes.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<text class="note" x="{LEFT}" y="{}" font-size="10">{}</text>"#,
            HEIGHT - 18.0 + 11.0 * k as f64 - 11.0 * (notes.len() as f64 - 1.0),
            escape(note)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: Vec<Vec<f64>>) -> Table {
        let mut t = Table::new(vec!["x".into(), "a".into(), "b<&>".into()]);
        for r in rows {
            t.push_row(r);
        }
        t
    }

    #[test]
    fn one_polyline_per_series() {
        let svg = emit_svg(&table(vec![vec![1.0, 2.0, 3.0], vec![2.0, 1.0, 4.0]]), "t");
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches(r#"class="series""#).count(), 2);
        assert!(svg.contains("b&lt;&amp;&gt;"));
    }

    #[test]
    fn single_row_uses_markers() {
        let svg = emit_svg(&table(vec![vec![1.0, 2.0, 3.0]]), "t");
        assert_eq!(svg.matches("<polyline").count(), 0);
        assert_eq!(svg.matches("<circle").count(), 2);
    }

    #[test]
    fn non_finite_dropped_with_note() {
        let svg = emit_svg(
            &table(vec![vec![1.0, f64::NAN, 3.0], vec![2.0, f64::NAN, 4.0], vec![3.0, 1.0, f64::INFINITY]]),
            "t",
        );
        assert!(svg.contains("a: dropped 2 non-finite value(s)"));
        assert!(svg.contains("dropped 1 non-finite"));
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
