use std::io::Write;

use super::{CellClass, RegionGrid};
use crate::bounds::h2;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    pub both: String,
    pub degree_only: String,
    pub clique_only: String,
    /// `None` leaves cells satisfying neither bound unpainted.
    pub neither: Option<String>,
    pub curve: String,
}

impl Default for Palette {
    fn default() -> Self {
        Self {
            both: "#2ca02c".into(),
            degree_only: "#d62728".into(),
            clique_only: "#1f77b4".into(),
            neither: None,
            curve: "#000000".into(),
        }
    }
}

impl Palette {
    pub fn color(&self, class: CellClass) -> Option<&str> {
        match class {
            CellClass::Both => Some(&self.both),
            CellClass::DegreeOnly => Some(&self.degree_only),
            CellClass::CliqueOnly => Some(&self.clique_only),
            CellClass::Neither => self.neither.as_deref(),
        }
    }
}

const WIDTH: f64 = 680.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const TOP: f64 = 40.0;
const PLOT_W: f64 = 400.0;
const PLOT_H: f64 = 380.0;
const TICKS: usize = 5;

/// Renders the grid as one rectangle per run of equally classified cells in
/// each `p` column, with the curve `R = h2(p)`, axes and a legend.
pub fn write_svg<W: Write>(grid: &RegionGrid, palette: &Palette, mut out: W) -> Result<()> {
    let cfg = &grid.config;
    let (p0, p1) = cfg.p_range;
    let (r0, r1) = cfg.r_range;
    let x_of = |p: f64| LEFT + (p - p0) / (p1 - p0) * PLOT_W;
    let y_of = |r: f64| TOP + (r1 - r) / (r1 - r0) * PLOT_H;

    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )?;
    writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#)?;
    writeln!(
        out,
        r#"<defs><clipPath id="plot"><rect x="{LEFT}" y="{TOP}" width="{PLOT_W}" height="{PLOT_H}"/></clipPath></defs>"#
    )?;
    writeln!(
        out,
        r#"<text x="{}" y="22" text-anchor="middle">d1 = {}, d2 = {}</text>"#,
        LEFT + PLOT_W / 2.0,
        cfg.d1,
        cfg.d2
    )?;

    let (np, nr) = cfg.grid;
    if np > 0 && nr > 0 {
        let cw = PLOT_W / np as f64;
        let ch = PLOT_H / nr as f64;
        writeln!(out, r#"<g clip-path="url(#plot)" shape-rendering="crispEdges">"#)?;
        for i in 0..np {
            let mut j = 0;
            while j < nr {
                let class = grid.cell(i, j).class;
                let start = j;
                while j < nr && grid.cell(i, j).class == class {
                    j += 1;
                }
                if let Some(color) = palette.color(class) {
                    // Row 0 is the lowest rate, drawn at the bottom.
                    writeln!(
                        out,
                        r#"<rect class="{class}" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{color}"/>"#,
                        LEFT + i as f64 * cw,
                        TOP + PLOT_H - j as f64 * ch,
                        cw,
                        (j - start) as f64 * ch,
                    )?;
                }
            }
        }
        writeln!(out, "</g>")?;
    }

    let samples = 400;
    let points: Vec<String> = (0..=samples)
        .map(|s| {
            let p = p0 + (p1 - p0) * s as f64 / samples as f64;
            format!("{:.3},{:.3}", x_of(p), y_of(h2(p)))
        })
        .collect();
    writeln!(
        out,
        r#"<polyline clip-path="url(#plot)" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
        palette.curve,
        points.join(" ")
    )?;

    // Axes, ticks and labels.
    writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{PLOT_W}" height="{PLOT_H}" fill="none" stroke="black"/>"#
    )?;
    for t in 0..=TICKS {
        let f = t as f64 / TICKS as f64;
        let (p, r) = (p0 + f * (p1 - p0), r0 + f * (r1 - r0));
        let (x, y) = (x_of(p), y_of(r));
        let base = TOP + PLOT_H;
        writeln!(
            out,
            r#"<line x1="{x:.3}" y1="{base}" x2="{x:.3}" y2="{}" stroke="black"/><text x="{x:.3}" y="{}" text-anchor="middle">{p:.3}</text>"#,
            base + 5.0,
            base + 20.0
        )?;
        writeln!(
            out,
            r#"<line x1="{}" y1="{y:.3}" x2="{LEFT}" y2="{y:.3}" stroke="black"/><text x="{}" y="{:.3}" text-anchor="end">{r:.3}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0
        )?;
    }
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">p</text>"#,
        LEFT + PLOT_W / 2.0,
        TOP + PLOT_H + 42.0
    )?;
    writeln!(
        out,
        r#"<text x="20" y="{}" text-anchor="middle" transform="rotate(-90 20 {})">R</text>"#,
        TOP + PLOT_H / 2.0,
        TOP + PLOT_H / 2.0
    )?;

    let lx = LEFT + PLOT_W + 20.0;
    let entries = [
        (palette.both.as_str(), "both bounds"),
        (palette.degree_only.as_str(), "degree bound only"),
        (palette.clique_only.as_str(), "clique bound only"),
    ];
    for (k, (color, label)) in entries.iter().enumerate() {
        let y = TOP + 10.0 + 22.0 * k as f64;
        writeln!(
            out,
            r#"<rect x="{lx}" y="{y}" width="14" height="14" fill="{color}"/><text x="{}" y="{}">{label}</text>"#,
            lx + 20.0,
            y + 11.0
        )?;
    }
    let y = TOP + 10.0 + 22.0 * 3.0 + 7.0;
    writeln!(
        out,
        r#"<line x1="{lx}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="2"/><text x="{}" y="{}">R = h2(p)</text>"#,
        lx + 14.0,
        palette.curve,
        lx + 20.0,
        y + 4.0
    )?;
    writeln!(out, "</svg>")?;
    Ok(())
}
