//! Horizontal bar charts as standalone SVG.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum ChartKind {
    /// One bar per series in each row, e.g. left vs right counts.
    GroupedBar,
    /// One signed bar per row, e.g. a frequency difference.
    DiffBar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartRow {
    pub label: String,
    pub values: Vec<f64>,
}

impl ChartRow {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Self {
        ChartRow {
            label: label.into(),
            values,
        }
    }
}

const PALETTE: [&str; 4] = ["#2b6cb0", "#c53030", "#2f855a", "#b7791f"];
const LABEL_W: f64 = 170.0;
const PLOT_W: f64 = 440.0;
const VALUE_W: f64 = 70.0;
const BAR_H: f64 = 12.0;
const ROW_GAP: f64 = 8.0;
const TOP: f64 = 36.0;

pub fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c if (c as u32) < 0x20 && c != '\t' => out.push(' '),
            c => out.push(c),
        }
    }
    out
}

fn fmt_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v:.0}")
    } else {
        format!("{v:.3}")
    }
}

/// Bar lengths are proportional to values; a zero value gets a zero-width
/// bar and keeps its label. Grouped charts take one value per series.
pub fn render(rows: &[ChartRow], kind: ChartKind, title: &str, series: &[String]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::Format("chart has no rows".into()));
    }
    let per_row = match kind {
        ChartKind::GroupedBar => series.len().max(1),
        ChartKind::DiffBar => 1,
    };
    for r in rows {
        if r.values.len() != per_row {
            return Err(Error::Format(format!(
                "chart row {:?} has {} values, expected {per_row}",
                r.label,
                r.values.len()
            )));
        }
        if r.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Format(format!("chart row {:?} has a non-finite value", r.label)));
        }
    }
    let all = rows.iter().flat_map(|r| r.values.iter().copied());
    let (lo, hi) = all.fold((0.0f64, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let span = if hi > lo { hi - lo } else { 1.0 };
    let scale = PLOT_W / span;
    let zero_x = LABEL_W + (-lo) * scale;
    let row_h = per_row as f64 * BAR_H + ROW_GAP;
    let legend_h = if kind == ChartKind::GroupedBar { 18.0 } else { 0.0 };
    let width = LABEL_W + PLOT_W + VALUE_W;
    let height = TOP + rows.len() as f64 * row_h + legend_h + 10.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="20" font-size="14" font-weight="bold">{}</text>"#,
        8.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r##"<line x1="{zero_x:.2}" y1="{:.2}" x2="{zero_x:.2}" y2="{:.2}" stroke="#444" stroke-width="1"/>"##,
        TOP - 4.0,
        TOP + rows.len() as f64 * row_h - ROW_GAP + 4.0
    );
    for (i, row) in rows.iter().enumerate() {
        let y0 = TOP + i as f64 * row_h;
        let mid = y0 + per_row as f64 * BAR_H / 2.0 + 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{mid:.2}" text-anchor="end">{}</text>"#,
            LABEL_W - 6.0,
            escape(&row.label)
        );
        for (j, &v) in row.values.iter().enumerate() {
            let y = y0 + j as f64 * BAR_H;
            let w = v.abs() * scale;
            let x = if v < 0.0 { zero_x - w } else { zero_x };
            let color = match kind {
                ChartKind::GroupedBar => PALETTE[j % PALETTE.len()],
                ChartKind::DiffBar if v < 0.0 => PALETTE[1],
                ChartKind::DiffBar => PALETTE[0],
            };
            let _ = writeln!(
                s,
                r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{:.2}" fill="{color}"/>"#,
                BAR_H - 1.0
            );
            let (tx, anchor) = if v < 0.0 {
                (x - 3.0, "end")
            } else {
                (x + w + 3.0, "start")
            };
            let _ = writeln!(
                s,
                r#"<text x="{tx:.2}" y="{:.2}" text-anchor="{anchor}" font-size="9">{}</text>"#,
                y + BAR_H - 3.0,
                fmt_value(v)
            );
        }
    }
    if kind == ChartKind::GroupedBar {
        let y = TOP + rows.len() as f64 * row_h + 10.0;
        let mut x = LABEL_W;
        for (j, name) in series.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{y:.2}" fill="{}" font-weight="bold">&#9632; {}</text>"#,
                PALETTE[j % PALETTE.len()],
                escape(name)
            );
            x += 14.0 + 7.0 * name.chars().count() as f64 + 20.0;
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Reads chart rows from CSV: the first column labels each row, every
/// other column is a numeric series named by its header.
pub fn rows_from_csv(bytes: &[u8]) -> Result<(Vec<String>, Vec<ChartRow>)> {
    let mut reader = csv::Reader::from_reader(bytes);
    let headers = reader.headers()?.clone();
    if headers.len() < 2 {
        return Err(Error::Format(
            "chart CSV needs a label column and at least one value column".into(),
        ));
    }
    let series: Vec<String> = headers.iter().skip(1).map(String::from).collect();
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let values = rec
            .iter()
            .skip(1)
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Format(format!("chart CSV row {}: {e}", i + 2)))?;
        rows.push(ChartRow::new(rec.get(0).unwrap_or_default(), values));
    }
    Ok((series, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Vec<String> {
        vec!["left".into(), "right".into()]
    }

    #[test]
    fn grouped_rect_count() {
        let rows = [
            ChartRow::new("mask", vec![3.0, 1.0]),
            ChartRow::new("stay home", vec![0.0, 2.0]),
        ];
        let svg = render(&rows, ChartKind::GroupedBar, "t", &two()).unwrap();
        assert_eq!(svg.matches("<rect").count(), 4);
        assert!(svg.contains(r#"width="0.00""#));
        assert!(svg.contains(">stay home<"));
    }

    #[test]
    fn labels_escaped_and_empty_rejected() {
        let rows = [ChartRow::new("<b>&'\"", vec![1.0])];
        let svg = render(&rows, ChartKind::DiffBar, "a < b", &[]).unwrap();
        assert!(svg.contains("&lt;b&gt;&amp;&apos;&quot;"));
        assert!(!svg.contains("<b>"));
        assert!(render(&[], ChartKind::DiffBar, "t", &[]).is_err());
        assert!(render(&[ChartRow::new("x", vec![1.0])], ChartKind::GroupedBar, "t", &two()).is_err());
    }

    #[test]
    fn lengths_are_proportional() {
        let rows = [ChartRow::new("a", vec![10.0]), ChartRow::new("b", vec![5.0])];
        let svg = render(&rows, ChartKind::DiffBar, "t", &[]).unwrap();
        assert!(svg.contains(&format!(r#"width="{:.2}""#, PLOT_W)));
        assert!(svg.contains(&format!(r#"width="{:.2}""#, PLOT_W / 2.0)));
    }

    #[test]
    fn csv_rows() {
        let (series, rows) = rows_from_csv(b"key,count_left,count_right\nmask,3,1\n").unwrap();
        assert_eq!(series, ["count_left", "count_right"]);
        assert_eq!(rows, [ChartRow::new("mask", vec![3.0, 1.0])]);
    }
}
