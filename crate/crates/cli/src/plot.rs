//! Static SVG rendering of sweep CSV columns against `t`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::config::Failure;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

/// Parsed sweep table: header names and numeric columns.
pub struct Table {
    pub headers: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.headers
            .iter()
            .position(|h| h == name)
            .map(|i| self.columns[i].as_slice())
    }
}

pub fn read_table(path: &Path) -> Result<Table, Failure> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Failure::io(format!("malformed CSV header: {e}")))?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if headers.is_empty() || headers.iter().all(|h| h.is_empty()) {
        return Err(Failure::io(format!("{}: empty CSV", path.display())));
    }
    if !headers.iter().any(|h| h == "t") {
        return Err(Failure::io("malformed CSV: no t column"));
    }
    let mut columns = vec![Vec::new(); headers.len()];
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure::io(format!("malformed CSV: {e}")))?;
        for (k, field) in record.iter().enumerate() {
            let x: f64 = field
                .trim()
                .parse()
                .map_err(|_| Failure::io(format!("malformed CSV: row {} field {:?}", line + 2, field)))?;
            columns[k].push(x);
        }
    }
    if columns[0].is_empty() {
        return Err(Failure::io(format!("{}: CSV has no data rows", path.display())));
    }
    Ok(Table { headers, columns })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    if hi - lo < 1e-300 {
        let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.5 };
        return (lo - pad, hi + pad);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e4).contains(&a) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

/// Renders the selected columns; identical input gives identical bytes.
pub fn render_svg(t: &[f64], series: &[(String, Vec<f64>)], normalize: bool) -> String {
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let (x0, x1) = bounds(t.iter().copied());
    let (y0, y1) = bounds(series.iter().flat_map(|(_, v)| v.iter().copied()));
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * plot_h;

    let mut s = String::new();
    let names: Vec<String> = series.iter().map(|(n, _)| format!("\"{}\"", escape(n))).collect();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        s,
        "<metadata>{{\"normalize\":{normalize},\"columns\":[{}]}}</metadata>",
        names.join(",")
    );
    let _ = writeln!(s, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" fill=\"none\" stroke=\"black\"/>"
    );

    for k in 0..TICKS {
        let f = k as f64 / (TICKS - 1) as f64;
        let xv = x0 + f * (x1 - x0);
        let yv = y0 + f * (y1 - y0);
        let (px, py) = (sx(xv), sy(yv));
        let bottom = TOP + plot_h;
        let _ = writeln!(
            s,
            "<line x1=\"{px:.2}\" y1=\"{bottom:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
            bottom + 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{px:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            bottom + 18.0,
            tick_label(xv)
        );
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{LEFT:.2}\" y2=\"{py:.2}\" stroke=\"black\"/>",
            LEFT - 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            LEFT - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    if y0 < 0.0 && y1 > 0.0 {
        let z = sy(0.0);
        let _ = writeln!(
            s,
            "<line x1=\"{LEFT:.2}\" y1=\"{z:.2}\" x2=\"{:.2}\" y2=\"{z:.2}\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>",
            LEFT + plot_w
        );
    }

    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">t</text>",
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let ylabel = if normalize { "value / max |value|" } else { "value" };
    let _ = writeln!(
        s,
        "<text x=\"20\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">{ylabel}</text>",
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, (name, values)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = t
            .iter()
            .zip(values)
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            "<polyline data-column=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
            escape(name),
            points.join(" ")
        );
        let ly = TOP + 15.0 + 20.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            s,
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            lx + 20.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{}</text>",
            lx + 26.0,
            ly + 4.0,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn normalized(values: &[f64]) -> Vec<f64> {
    let m = values
        .iter()
        .filter(|v| v.is_finite())
        .fold(0.0f64, |a, v| a.max(v.abs()));
    if m == 0.0 {
        values.to_vec()
    } else {
        values.iter().map(|v| v / m).collect()
    }
}

pub fn cmd_plot(input: &Path, out: &Path, columns: &[String], normalize: bool) -> Result<(), Failure> {
    let table = read_table(input)?;
    let selected: Vec<String> = if columns.is_empty() {
        table.headers.iter().filter(|h| *h != "t").cloned().collect()
    } else {
        columns.to_vec()
    };
    let mut series = Vec::with_capacity(selected.len());
    for name in &selected {
        let values = table
            .column(name)
            .ok_or_else(|| Failure::invalid(format!("column {name:?} not in {}", input.display())))?;
        let values = if normalize { normalized(values) } else { values.to_vec() };
        series.push((name.clone(), values));
    }
    let t = table.column("t").expect("checked on read");
    let svg = render_svg(t, &series, normalize);
    fs::write(out, svg).map_err(|e| Failure::io(format!("{}: {e}", out.display())))?;
    println!("columns {}", selected.len());
    println!("points {}", t.len());
    Ok(())
}
