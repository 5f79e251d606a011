//! Minimal static SVG line charts for experiment reports.

use std::fmt::Write as _;

use super::report::ExperimentReport;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 180.0;
const MARGIN_T: f64 = 48.0;
const MARGIN_B: f64 = 56.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// Render the report's curve series (refinement ratios, moment curves) as a
/// single log-log chart.
pub fn render_report(report: &ExperimentReport) -> String {
    let curves: Vec<(&str, &[f64], &[f64])> = report
        .series
        .iter()
        .filter(|s| s.xs.len() == s.values.len() && s.xs.len() >= 2)
        .map(|s| (s.name.as_str(), s.xs.as_slice(), s.values.as_slice()))
        .collect();
    let title = format!(
        "{} — {}",
        report.experiment,
        if report.pass { "pass" } else { "fail" }
    );
    render_chart(&title, "x", "value", &curves)
}

fn log2_safe(v: f64) -> f64 {
    v.max(1e-300).log2()
}

pub fn render_chart(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[(&str, &[f64], &[f64])],
) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        svg,
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">{}</text>",
        MARGIN_L,
        escape(title)
    );

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;

    if series.is_empty() {
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\">no curve series</text>",
            MARGIN_L,
            MARGIN_T + 30.0
        );
        let _ = writeln!(svg, "</svg>");
        return svg;
    }

    let mut x_lo = f64::INFINITY;
    let mut x_hi = f64::NEG_INFINITY;
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for (_, xs, ys) in series {
        for &x in *xs {
            x_lo = x_lo.min(log2_safe(x));
            x_hi = x_hi.max(log2_safe(x));
        }
        for &y in *ys {
            y_lo = y_lo.min(log2_safe(y));
            y_hi = y_hi.max(log2_safe(y));
        }
    }
    if (x_hi - x_lo).abs() < 1e-12 {
        x_hi = x_lo + 1.0;
    }
    if (y_hi - y_lo).abs() < 1e-12 {
        y_hi = y_lo + 1.0;
    }
    let pad = 0.06 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    let px = |x: f64| MARGIN_L + (log2_safe(x) - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |y: f64| MARGIN_T + (1.0 - (log2_safe(y) - y_lo) / (y_hi - y_lo)) * plot_h;

    // frame and axis labels
    let _ = writeln!(
        svg,
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{plot_w}\" height=\"{plot_h}\" fill=\"none\" stroke=\"#333\"/>"
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{} (log2)</text>",
        MARGIN_L + plot_w / 2.0 - 20.0,
        HEIGHT - 16.0,
        escape(x_label)
    );
    let _ = writeln!(
        svg,
        "<text x=\"16\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 {})\">{} (log2)</text>",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        escape(y_label)
    );

    // y ticks at integer log2 values
    let mut t = y_lo.ceil();
    while t <= y_hi {
        let y = MARGIN_T + (1.0 - (t - y_lo) / (y_hi - y_lo)) * plot_h;
        let _ = writeln!(
            svg,
            "<line x1=\"{MARGIN_L}\" y1=\"{y:.1}\" x2=\"{}\" y2=\"{y:.1}\" stroke=\"#ddd\"/>",
            MARGIN_L + plot_w
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">2^{t}</text>",
            MARGIN_L - 6.0,
            y + 3.0
        );
        t += 1.0;
    }

    for (i, (name, xs, ys)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = xs
            .iter()
            .zip(*ys)
            .map(|(&x, &y)| format!("{:.1},{:.1}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            svg,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\"/>",
            pts.join(" ")
        );
        for (&x, &y) in xs.iter().zip(*ys) {
            let _ = writeln!(
                svg,
                "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"2.6\" fill=\"{color}\"/>",
                px(x),
                py(y)
            );
        }
        // x ticks from the first series
        if i == 0 {
            for &x in *xs {
                let _ = writeln!(
                    svg,
                    "<text x=\"{:.1}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
                    px(x),
                    MARGIN_T + plot_h + 16.0,
                    x
                );
            }
        }
        let ly = MARGIN_T + 14.0 + 16.0 * i as f64;
        let lx = MARGIN_L + plot_w + 10.0;
        let _ = writeln!(
            svg,
            "<line x1=\"{lx}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            lx + 18.0
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            lx + 24.0,
            ly + 4.0,
            escape(name)
        );
    }
    let _ = writeln!(svg, "</svg>");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_wellformed_svg() {
        let xs = [64.0, 128.0, 256.0];
        let a = [1.0, 1.1, 1.05];
        let b = [0.5, 0.9, 1.6];
        let svg = render_chart(
            "demo",
            "N",
            "ratio",
            &[("alpha", &xs, &a), ("beta", &xs, &b)],
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("polyline"));
        assert!(svg.contains("alpha"));
    }

    #[test]
    fn empty_series_still_valid() {
        let svg = render_chart("empty", "x", "y", &[]);
        assert!(svg.contains("no curve series"));
    }
}
