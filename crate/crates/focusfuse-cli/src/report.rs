//! Report rendering for the `bench` and `metrics` subcommands.
//!
//! The CSV renderer is deliberately boring: fixed column order, fixed
//! four-decimal formatting, `inf` for infinities, rows pre-sorted by a
//! total key. Byte-stable output is a feature — diffing two bench runs
//! must show only genuine metric changes.

use std::fmt::Write as _;

use focusfuse::MetricReport;

/// One bench measurement: a (source image, fusion method, split geometry)
/// triple with its quality scores.
pub struct BenchRow {
    pub image: String,
    pub method: &'static str,
    pub k: usize,
    pub geometry: &'static str,
    pub sigma: f64,
    /// Mean structural similarity of the fused result against the two
    /// synthetic inputs (not against the original).
    pub ssim_inputs: f64,
    /// Peak signal-to-noise ratio against the untouched original, dB.
    pub psnr: f64,
    /// Root-mean-square error against the untouched original.
    pub rmse: f64,
    pub runtime_ms: f64,
}

pub const CSV_HEADER: &str = "image,method,k,geometry,sigma,ssim_inputs,psnr,rmse,runtime_ms";

/// Fixed four-decimal rendering; infinities become a literal `inf` so the
/// CSV stays parseable without float-special-case handling downstream.
pub fn fmt_float(v: f64) -> String {
    if v.is_infinite() {
        String::from(if v > 0.0 { "inf" } else { "-inf" })
    } else {
        format!("{v:.4}")
    }
}

/// Deterministic total order: source image, then method name, then geometry.
pub fn sort_rows(rows: &mut [BenchRow]) {
    rows.sort_by(|a, b| {
        (a.image.as_str(), a.method, a.geometry).cmp(&(b.image.as_str(), b.method, b.geometry))
    });
}

fn row_fields(row: &BenchRow) -> [String; 9] {
    [
        row.image.clone(),
        row.method.to_string(),
        row.k.to_string(),
        row.geometry.to_string(),
        fmt_float(row.sigma),
        fmt_float(row.ssim_inputs),
        fmt_float(row.psnr),
        fmt_float(row.rmse),
        fmt_float(row.runtime_ms),
    ]
}

/// Renders the header plus one line per row. Field values are written
/// verbatim, so source images should have comma-free file stems.
pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = String::with_capacity((rows.len() + 1) * 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row_fields(row).join(","));
        out.push('\n');
    }
    out
}

/// Markdown mirror of the CSV: same rows as a pipe table, plus a short
/// guide to reading the columns.
pub fn render_markdown(rows: &[BenchRow]) -> String {
    let mut out = String::from("# Fusion bench\n\n");
    writeln!(out, "| {} |", CSV_HEADER.split(',').collect::<Vec<_>>().join(" | ")).unwrap();
    writeln!(out, "|{}", "---|".repeat(9)).unwrap();
    for row in rows {
        writeln!(out, "| {} |", row_fields(row).join(" | ")).unwrap();
    }
    out.push_str(
        "\n**Reading the columns.** `psnr` and `rmse` compare each fused result \
         against the untouched original, so higher `psnr` (lower `rmse`) means \
         better recovery of the fully sharp scene. `ssim_inputs` instead averages \
         structural similarity against the two partially blurred inputs: \
         selection fusion (`proposed`) copies sharp blocks verbatim instead of \
         splitting the difference between both inputs, so it can rank *lower* on \
         that column even while clearly winning on `psnr`. The direction is \
         content-dependent; the column is informational, never a pass/fail \
         signal.\n",
    );
    out
}

/// Human table plus machine-readable `key=value` lines. The table rounds to
/// four decimals; the `key=value` block uses shortest-round-trip formatting
/// so scripted consumers can reparse the exact values.
pub fn render_metrics(report: &MetricReport) -> String {
    let mut out = String::new();
    writeln!(out, "{:<12} {:>12}", "metric", "value").unwrap();
    let named = [
        ("rmse", report.rmse),
        ("psnr", report.psnr),
        ("uqi", report.uqi),
        ("ssim", report.ssim),
    ];
    for (name, value) in named {
        writeln!(out, "{:<12} {:>12}", name, fmt_float(value)).unwrap();
    }
    out.push('\n');
    for (name, value) in named {
        writeln!(out, "{name}={value}").unwrap();
    }
    writeln!(out, "uqi_window={}", report.uqi_window).unwrap();
    writeln!(out, "ssim_window={}", report.ssim_window).unwrap();
    writeln!(out, "ssim_sigma={}", report.ssim_sigma).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_row() -> BenchRow {
        BenchRow {
            image: "peppers".into(),
            method: "proposed",
            k: 2,
            geometry: "vertical",
            sigma: 2.0,
            ssim_inputs: 0.91234567,
            psnr: f64::INFINITY,
            rmse: 0.0,
            runtime_ms: 12.34567,
        }
    }

    #[test]
    fn floats_render_fixed_or_inf() {
        assert_eq!(fmt_float(2.0), "2.0000");
        assert_eq!(fmt_float(0.91235), "0.9123"); // ties-to-even at the 4th decimal
        assert_eq!(fmt_float(f64::INFINITY), "inf");
        assert_eq!(fmt_float(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_float(1e-9), "0.0000");
    }

    #[test]
    fn csv_lines_are_bit_stable() {
        let rows = vec![sample_row()];
        let csv = render_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(
            lines.next(),
            Some("peppers,proposed,2,vertical,2.0000,0.9123,inf,0.0000,12.3457")
        );
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn rows_sort_by_image_then_method_then_geometry() {
        let mut rows: Vec<BenchRow> = Vec::new();
        for (image, method, geometry) in [
            ("b", "wavelet", "vertical"),
            ("a", "wavelet", "vertical"),
            ("a", "average", "vertical"),
            ("a", "average", "diag_main"),
        ] {
            let mut row = sample_row();
            row.image = image.into();
            row.method = method;
            row.geometry = geometry;
            rows.push(row);
        }
        sort_rows(&mut rows);
        let keys: Vec<_> = rows
            .iter()
            .map(|r| (r.image.as_str(), r.method, r.geometry))
            .collect();
        assert_eq!(
            keys,
            vec![
                ("a", "average", "diag_main"),
                ("a", "average", "vertical"),
                ("a", "wavelet", "vertical"),
                ("b", "wavelet", "vertical"),
            ]
        );
    }

    #[test]
    fn markdown_mirrors_rows_and_explains_columns() {
        let md = render_markdown(&[sample_row()]);
        assert!(md.contains("| image | method | k | geometry | sigma |"));
        assert!(md.contains("| peppers | proposed | 2 | vertical |"));
        assert!(md.contains("can rank *lower*"));
    }

    #[test]
    fn metric_rendering_has_table_and_exact_key_values() {
        let report = MetricReport {
            rmse: 0.0,
            psnr: f64::INFINITY,
            uqi: 1.0,
            ssim: 1.0,
            uqi_window: 8,
            ssim_window: 11,
            ssim_sigma: 1.5,
        };
        let text = render_metrics(&report);
        assert!(text.contains(&format!("{:<12} {:>12}", "rmse", "0.0000")));
        assert!(text.contains(&format!("{:<12} {:>12}", "psnr", "inf")));
        assert!(text.contains("\nrmse=0\n"));
        assert!(text.contains("\npsnr=inf\n"));
        assert!(text.contains("\nssim=1\n"));
        assert!(text.contains("\nuqi_window=8\n"));
        assert!(text.contains("\nssim_sigma=1.5\n"));
    }
}
