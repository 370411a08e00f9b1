//! Self-contained SVG polyline charts of f against V_{n,p}(f).

use std::io::{self, Write};

pub struct Chart {
    pub title: String,
    pub xs: Vec<f64>,
    pub f_values: Vec<f64>,
    pub vp_values: Vec<f64>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 260.0;
const MARGIN: f64 = 40.0;

fn polyline(
    xs: &[f64],
    ys: &[f64],
    x_range: (f64, f64),
    y_range: (f64, f64),
    y_off: f64,
) -> String {
    let (x0, x1) = x_range;
    let (y0, y1) = y_range;
    let sx = (WIDTH - 2.0 * MARGIN) / (x1 - x0);
    let sy = (HEIGHT - 2.0 * MARGIN) / (y1 - y0).max(1e-300);
    let mut pts = String::new();
    for (x, y) in xs.iter().zip(ys.iter()) {
        let px = MARGIN + (x - x0) * sx;
        let py = y_off + HEIGHT - MARGIN - (y - y0) * sy;
        pts.push_str(&format!("{px:.2},{py:.2} "));
    }
    pts
}

pub fn write_svg<W: Write>(mut w: W, charts: &[Chart]) -> io::Result<()> {
    let total_height = HEIGHT * charts.len().max(1) as f64;
    writeln!(
        w,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{total_height}" viewBox="0 0 {WIDTH} {total_height}">"##
    )?;
    writeln!(w, r##"<rect width="100%" height="100%" fill="white"/>"##)?;
    for (i, chart) in charts.iter().enumerate() {
        let y_off = HEIGHT * i as f64;
        let x0 = chart.xs.first().copied().unwrap_or(0.0);
        let x1 = chart.xs.last().copied().unwrap_or(1.0);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in chart.f_values.iter().chain(chart.vp_values.iter()) {
            lo = lo.min(*v);
            hi = hi.max(*v);
        }
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            lo -= 0.5;
            hi += 0.5;
        }
        let pad = 0.05 * (hi - lo);
        let y_range = (lo - pad, hi + pad);
        writeln!(
            w,
            r##"<text x="{MARGIN}" y="{:.2}" font-family="monospace" font-size="13">{}</text>"##,
            y_off + 18.0,
            chart.title
        )?;
        writeln!(
            w,
            r##"<line x1="{MARGIN}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-width="1"/>"##,
            y_off + HEIGHT - MARGIN,
            WIDTH - MARGIN,
            y_off + HEIGHT - MARGIN
        )?;
        writeln!(
            w,
            r##"<polyline fill="none" stroke="#1f77b4" stroke-width="1.5" points="{}"/>"##,
            polyline(&chart.xs, &chart.f_values, (x0, x1), y_range, y_off)
        )?;
        writeln!(
            w,
            r##"<polyline fill="none" stroke="#d62728" stroke-width="1.5" points="{}"/>"##,
            polyline(&chart.xs, &chart.vp_values, (x0, x1), y_range, y_off)
        )?;
        writeln!(
            w,
            r##"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="11" fill="#1f77b4">f</text>"##,
            WIDTH - MARGIN - 60.0,
            y_off + 18.0
        )?;
        writeln!(
            w,
            r##"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="11" fill="#d62728">V(f)</text>"##,
            WIDTH - MARGIN - 40.0,
            y_off + 18.0
        )?;
    }
    writeln!(w, "</svg>")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn produces_wellformed_svg() {
        let chart = Chart {
            title: "test".into(),
            xs: (0..16).map(|i| i as f64).collect(),
            f_values: (0..16).map(|i| (i as f64).sin()).collect(),
            vp_values: (0..16).map(|i| (i as f64).cos()).collect(),
        };
        let mut buf = Vec::new();
        write_svg(&mut buf, &[chart]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("<svg"));
        assert!(text.trim_end().ends_with("</svg>"));
        assert_eq!(text.matches("<polyline").count(), 2);
    }
}
