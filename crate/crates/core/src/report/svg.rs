//! SVG 1.1 figures: redundancy heatmaps, per-item bar charts and instance
//! redundancy curves.
//!
//! Output is a plain function of the input, so identical inputs produce
//! identical bytes. Colors use a fixed diverging scale anchored at -1, 0 and
//! +1 so figures from different benchmarks are comparable.

use std::fmt::Write;

use super::{CurveFragment, MatrixFragment};

const CELL: f64 = 36.0;
const CHAR_W: f64 = 7.0;
const FONT: &str = "font-family=\"sans-serif\" font-size=\"11\"";

const NEG: (f64, f64, f64) = (33.0, 102.0, 172.0);
const POS: (f64, f64, f64) = (178.0, 24.0, 43.0);

/// Fill color for a value in [-1, 1]: blue below zero, white at zero, red above.
pub fn diverging_color(v: f64) -> String {
    let v = v.clamp(-1.0, 1.0);
    let (end, t) = if v < 0.0 { (NEG, -v) } else { (POS, v) };
    let mix = |c: f64| (255.0 + (c - 255.0) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(end.0), mix(end.1), mix(end.2))
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn open(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{width:.0}\" height=\"{height:.0}\" fill=\"#ffffff\"/>"
    );
}

fn title(out: &mut String, text: &str, x: f64) {
    let _ = writeln!(
        out,
        "<text x=\"{x:.1}\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\" font-weight=\"bold\">{}</text>",
        escape(text)
    );
}

fn selection_label(f: &MatrixFragment) -> String {
    format!("{} {}", f.metric.name().to_uppercase(), f.selection.mode)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapOptions {
    pub show_values: bool,
    pub title: Option<String>,
}

impl Default for HeatmapOptions {
    fn default() -> Self {
        HeatmapOptions {
            show_values: true,
            title: None,
        }
    }
}

/// Colored `m × m` grid; undefined cells are hatched. Values below -1 (R²
/// only) are drawn at -1 and the figure notes the clamping.
pub fn heatmap_svg(f: &MatrixFragment, options: &HeatmapOptions) -> String {
    let m = f.item_ids.len();
    let label_w = f
        .item_ids
        .iter()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1) as f64
        * CHAR_W
        + 12.0;
    let left = label_w;
    let top = label_w + 30.0;
    let grid = CELL * m as f64;
    let width = left + grid + 20.0;
    let height = top + grid + 40.0;

    let mut out = String::new();
    open(&mut out, width, height);
    out.push_str(concat!(
        "<defs><pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"6\" height=\"6\">",
        "<path d=\"M0,6 L6,0\" stroke=\"#888888\" stroke-width=\"1\"/></pattern></defs>\n"
    ));
    let heading = options.title.clone().unwrap_or_else(|| selection_label(f));
    title(&mut out, &heading, 8.0);

    for (i, id) in f.item_ids.iter().enumerate() {
        let y = top + CELL * (i as f64 + 0.5);
        let _ = writeln!(
            out,
            "<text class=\"row-label\" x=\"{:.1}\" y=\"{y:.1}\" text-anchor=\"end\" dominant-baseline=\"middle\" {FONT}>{}</text>",
            left - 4.0,
            escape(id)
        );
        let x = left + CELL * (i as f64 + 0.5);
        let _ = writeln!(
            out,
            "<text class=\"col-label\" x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"start\" transform=\"rotate(-90 {x:.1} {:.1})\" dominant-baseline=\"middle\" {FONT}>{}</text>",
            top - 4.0,
            top - 4.0,
            escape(id)
        );
    }

    let mut clamped = false;
    for (i, row) in f.cells.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let (x, y) = (left + CELL * j as f64, top + CELL * i as f64);
            match cell {
                Some(v) => {
                    clamped |= *v < -1.0;
                    let _ = writeln!(
                        out,
                        "<rect class=\"cell\" x=\"{x:.1}\" y=\"{y:.1}\" width=\"{CELL:.1}\" height=\"{CELL:.1}\" fill=\"{}\" stroke=\"#ffffff\"><title>{} / {}: {v}</title></rect>",
                        diverging_color(*v),
                        escape(&f.item_ids[i]),
                        escape(&f.item_ids[j])
                    );
                    if options.show_values {
                        let ink = if v.abs() > 0.6 { "#ffffff" } else { "#000000" };
                        let _ = writeln!(
                            out,
                            "<text class=\"value\" x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"{ink}\" font-family=\"sans-serif\" font-size=\"9\">{v:.2}</text>",
                            x + CELL / 2.0,
                            y + CELL / 2.0
                        );
                    }
                }
                None => {
                    let _ = writeln!(
                        out,
                        "<rect class=\"cell undefined\" x=\"{x:.1}\" y=\"{y:.1}\" width=\"{CELL:.1}\" height=\"{CELL:.1}\" fill=\"url(#hatch)\" stroke=\"#cccccc\"><title>{} / {}: undefined</title></rect>",
                        escape(&f.item_ids[i]),
                        escape(&f.item_ids[j])
                    );
                }
            }
        }
    }
    if clamped {
        let _ = writeln!(
            out,
            "<text class=\"note\" x=\"8\" y=\"{:.1}\" {FONT}>values below -1 drawn at -1</text>",
            top + grid + 20.0
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Bar per item showing its average redundancy (ρ(X_i) or ρ(Y_i)).
pub fn bar_svg(f: &MatrixFragment, title_text: Option<&str>) -> String {
    let m = f.item_ids.len();
    let label_h = f
        .item_ids
        .iter()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1) as f64
        * CHAR_W
        + 10.0;
    let (left, top, plot_h, bar_w) = (44.0, 30.0, 200.0, 28.0);
    let lo = if f.per_item.iter().flatten().any(|v| *v < 0.0) {
        -1.0
    } else {
        0.0
    };
    let hi = 1.0;
    let y_of = |v: f64| top + (hi - v.clamp(lo, hi)) / (hi - lo) * plot_h;
    let width = left + bar_w * m as f64 + 20.0;
    let height = top + plot_h + label_h + 10.0;

    let mut out = String::new();
    open(&mut out, width, height);
    let heading = title_text
        .map(str::to_owned)
        .unwrap_or_else(|| selection_label(f));
    title(&mut out, &heading, 8.0);

    for tick in [lo, (lo + hi) / 2.0, hi] {
        let y = y_of(tick);
        let _ = writeln!(
            out,
            "<line class=\"grid\" x1=\"{left:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"#dddddd\"/>",
            width - 10.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.1}\" y=\"{y:.1}\" text-anchor=\"end\" dominant-baseline=\"middle\" {FONT}>{tick:.1}</text>",
            left - 4.0
        );
    }
    let zero = y_of(0.0);
    for (i, (id, rho)) in f.item_ids.iter().zip(&f.per_item).enumerate() {
        let x = left + bar_w * i as f64;
        match rho {
            Some(v) => {
                let y = y_of(*v);
                let (y0, h) = if y < zero {
                    (y, zero - y)
                } else {
                    (zero, y - zero)
                };
                let _ = writeln!(
                    out,
                    "<rect class=\"bar\" x=\"{:.1}\" y=\"{y0:.1}\" width=\"{:.1}\" height=\"{h:.1}\" fill=\"{}\"><title>{}: {v}</title></rect>",
                    x + 3.0,
                    bar_w - 6.0,
                    diverging_color(*v),
                    escape(id)
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "<text class=\"na\" x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" {FONT}>n/a</text>",
                    x + bar_w / 2.0,
                    zero - 4.0
                );
            }
        }
        let lx = x + bar_w / 2.0;
        let ly = top + plot_h + 6.0;
        let _ = writeln!(
            out,
            "<text class=\"item-label\" x=\"{lx:.1}\" y=\"{ly:.1}\" text-anchor=\"end\" transform=\"rotate(-90 {lx:.1} {ly:.1})\" dominant-baseline=\"middle\" {FONT}>{}</text>",
            escape(id)
        );
    }
    let _ = writeln!(
        out,
        "<line class=\"axis\" x1=\"{left:.1}\" y1=\"{zero:.1}\" x2=\"{:.1}\" y2=\"{zero:.1}\" stroke=\"#000000\"/>",
        width - 10.0
    );
    out.push_str("</svg>\n");
    out
}

/// Mean correlation against sampling ratio, with a ±1 std band, the
/// threshold rule and a marker at the minimal sufficient ratio.
pub fn curve_svg(f: &CurveFragment) -> String {
    let (left, top, plot_w, plot_h) = (50.0, 30.0, 360.0, 220.0);
    let lo = f
        .points
        .iter()
        .filter_map(|p| Some(p.mean? - p.std.unwrap_or(0.0)))
        .fold(0.0_f64, f64::min)
        .max(-1.0);
    let hi = 1.0;
    let x_of = |r: f64| left + r * plot_w;
    let y_of = |v: f64| top + (hi - v.clamp(lo, hi)) / (hi - lo) * plot_h;
    let width = left + plot_w + 30.0;
    let height = top + plot_h + 50.0;

    let mut out = String::new();
    open(&mut out, width, height);
    title(
        &mut out,
        &format!(
            "{} {} {}",
            f.benchmark,
            f.metric.name().to_uppercase(),
            f.selection.mode
        ),
        8.0,
    );

    for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let x = x_of(tick);
        let _ = writeln!(
            out,
            "<text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\" {FONT}>{:.0}%</text>",
            top + plot_h + 16.0,
            tick * 100.0
        );
    }
    for tick in [lo, (lo + hi) / 2.0, hi] {
        let y = y_of(tick);
        let _ = writeln!(
            out,
            "<text x=\"{:.1}\" y=\"{y:.1}\" text-anchor=\"end\" dominant-baseline=\"middle\" {FONT}>{tick:.2}</text>",
            left - 4.0
        );
    }
    let _ = writeln!(
        out,
        "<rect class=\"frame\" x=\"{left:.1}\" y=\"{top:.1}\" width=\"{plot_w:.1}\" height=\"{plot_h:.1}\" fill=\"none\" stroke=\"#000000\"/>"
    );

    let defined: Vec<(f64, f64, f64)> = f
        .points
        .iter()
        .filter_map(|p| Some((p.ratio, p.mean?, p.std.unwrap_or(0.0))))
        .collect();
    if !defined.is_empty() {
        let upper = defined
            .iter()
            .map(|(r, m, s)| format!("{:.2},{:.2}", x_of(*r), y_of(m + s)));
        let lower = defined
            .iter()
            .rev()
            .map(|(r, m, s)| format!("{:.2},{:.2}", x_of(*r), y_of(m - s)));
        let band: Vec<String> = upper.chain(lower).collect();
        let _ = writeln!(
            out,
            "<polygon class=\"band\" points=\"{}\" fill=\"#b2182b\" fill-opacity=\"0.15\" stroke=\"none\"/>",
            band.join(" ")
        );
        let line: Vec<String> = defined
            .iter()
            .map(|(r, m, _)| format!("{:.2},{:.2}", x_of(*r), y_of(*m)))
            .collect();
        let _ = writeln!(
            out,
            "<polyline class=\"mean\" points=\"{}\" fill=\"none\" stroke=\"#b2182b\" stroke-width=\"1.5\"/>",
            line.join(" ")
        );
    }

    let ty = y_of(f.threshold);
    let _ = writeln!(
        out,
        "<line class=\"threshold\" x1=\"{left:.1}\" y1=\"{ty:.2}\" x2=\"{:.1}\" y2=\"{ty:.2}\" stroke=\"#555555\" stroke-dasharray=\"4 3\"/>",
        left + plot_w
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.1}\" y=\"{:.2}\" text-anchor=\"end\" {FONT}>{}</text>",
        left + plot_w - 2.0,
        ty - 3.0,
        f.threshold
    );
    if let Some(r) = f.minimal_sufficient_ratio {
        if let Some(p) = f.points.iter().find(|p| p.ratio == r) {
            let (x, y) = (x_of(r), y_of(p.mean.unwrap_or(f.threshold)));
            let _ = writeln!(
                out,
                "<circle class=\"minimal-ratio\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"><title>minimal sufficient ratio {r}</title></circle>"
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
