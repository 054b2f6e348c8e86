//! Whole-figure layouts: a single strip, a stacked disk, and the two table
//! flavours.

use super::strip::{render_disk_pair, render_dots, render_overlay, render_strip, StripOptions};
use super::{Anchor, Element, FigureDoc};
use crate::color::{HclColor, RgbColor, ShadingContext};
use crate::density::{Sample, SupportBounds};
use crate::error::Result;
use crate::geometry::{tessellate, HalfDiskStrip, Orientation};
use crate::table::{Cell, ComparisonTable, HddsTable};

const GRID_GRAY: RgbColor = RgbColor {
    r: 0.55,
    g: 0.55,
    b: 0.55,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub margin: f64,
    pub pad: f64,
    pub label_width: f64,
    pub font_size: f64,
    pub show_median: bool,
    pub show_dots: bool,
    pub seed: u64,
}

impl Default for Layout {
    fn default() -> Self {
        Self {
            margin: 16.0,
            pad: 10.0,
            label_width: 110.0,
            font_size: 11.0,
            show_median: true,
            show_dots: false,
            seed: 0,
        }
    }
}

fn text(x: f64, y: f64, size: f64, anchor: Anchor, content: impl Into<String>) -> Element {
    Element::Text {
        x,
        y,
        size,
        anchor,
        content: content.into(),
    }
}

fn line(x1: f64, y1: f64, x2: f64, y2: f64) -> Element {
    Element::Line {
        x1,
        y1,
        x2,
        y2,
        width: 0.75,
        color: GRID_GRAY,
    }
}

fn dots(sample: &Sample, strip: &HalfDiskStrip, seed: u64, cx: f64, cy: f64) -> Vec<Element> {
    let overlay = render_dots(sample, strip, seed);
    render_overlay(&overlay, cx, cy, strip.radius(), strip.orientation)
}

/// One strip, optionally with its data, under an optional title.
pub fn strip_figure(
    strip: &HalfDiskStrip,
    sample: Option<&Sample>,
    title: &str,
    layout: &Layout,
) -> FigureDoc {
    let r = strip.radius();
    let title_h = if title.is_empty() {
        0.0
    } else {
        1.6 * layout.font_size
    };
    let width = strip.diameter + 2.0 * layout.margin;
    let height = r + 2.0 * layout.margin + title_h + 1.4 * layout.font_size;
    let (cx, cy) = (layout.margin + r, layout.margin + title_h + r);
    let mut doc = FigureDoc::new(width, height, layout.seed);
    if !title.is_empty() {
        doc.push(text(
            width / 2.0,
            layout.margin + layout.font_size,
            layout.font_size,
            Anchor::Middle,
            title,
        ));
    }
    let opts = StripOptions {
        cx,
        cy,
        show_median: false,
        show_bounds: true,
        font_size: layout.font_size,
    };
    doc.extend(render_strip(strip, &opts));
    if layout.show_dots {
        if let Some(s) = sample {
            doc.extend(dots(s, strip, layout.seed, cx, cy));
        }
    }
    if layout.show_median {
        let opts = StripOptions {
            show_median: true,
            show_bounds: false,
            ..opts
        };
        // the tick goes on top of dots; re-render only the tick
        doc.extend(
            render_strip(strip, &opts)
                .into_iter()
                .filter(|e| matches!(e, Element::Line { .. })),
        );
    }
    doc
}

fn swatch(x: f64, y: f64, size: f64, color: HclColor, label: &str) -> [Element; 2] {
    [
        Element::Circle {
            cx: x,
            cy: y - 0.35 * size,
            r: 0.4 * size,
            fill: color.to_rgb(),
        },
        text(x + 0.8 * size, y, size, Anchor::Start, label),
    ]
}

/// Two strips stacked into a disk, `top` above the shared diameter.
#[allow(clippy::too_many_arguments)]
pub fn disk_pair_figure(
    top: &HalfDiskStrip,
    bottom: &HalfDiskStrip,
    samples: (Option<&Sample>, Option<&Sample>),
    labels: (&str, &str),
    colors: (HclColor, HclColor),
    layout: &Layout,
) -> Result<FigureDoc> {
    let r = top.radius().max(bottom.radius());
    let legend_h = 1.8 * layout.font_size;
    let width = 2.0 * r + 2.0 * layout.margin;
    let height = 2.0 * r + 2.0 * layout.margin + legend_h + 1.4 * layout.font_size;
    let (cx, cy) = (layout.margin + r, layout.margin + legend_h + r);
    let mut doc = FigureDoc::new(width, height, layout.seed);
    let y = layout.margin + layout.font_size;
    doc.extend(swatch(
        layout.margin,
        y,
        layout.font_size,
        colors.0,
        labels.0,
    ));
    doc.extend(swatch(width / 2.0, y, layout.font_size, colors.1, labels.1));
    let opts = StripOptions {
        cx,
        cy,
        show_median: false,
        show_bounds: true,
        font_size: layout.font_size,
    };
    doc.extend(render_disk_pair(top, bottom, &opts)?);
    if layout.show_dots {
        if let Some(s) = samples.0 {
            doc.extend(dots(s, top, layout.seed, cx, cy));
        }
        if let Some(s) = samples.1 {
            doc.extend(dots(s, bottom, layout.seed.wrapping_add(1), cx, cy));
        }
    }
    if layout.show_median {
        let opts = StripOptions {
            show_median: true,
            show_bounds: false,
            ..opts
        };
        doc.extend(
            render_disk_pair(top, bottom, &opts)?
                .into_iter()
                .filter(|e| matches!(e, Element::Line { color, .. } if *color == RgbColor::BLACK)),
        );
    }
    Ok(doc)
}

/// Strip for a table cell, or an unshaded placeholder carrying the bounds
/// when the cell has no grid.
fn cell_strip(
    cell: &Cell,
    ctx: &ShadingContext,
    bounds: &SupportBounds,
    orientation: Orientation,
) -> Result<Option<HalfDiskStrip>> {
    if cell.diameter <= 0.0 {
        return Ok(None);
    }
    Ok(Some(match &cell.grid {
        Some(g) => tessellate(g, ctx, cell.diameter, orientation)?,
        None => HalfDiskStrip {
            diameter: cell.diameter,
            orientation,
            sectors: Vec::new(),
            median_angle: None,
            bounds: *bounds,
            tick_angles: Vec::new(),
        },
    }))
}

struct CellDraw<'a> {
    cx: f64,
    cy: f64,
    seed: u64,
    layout: &'a Layout,
}

impl CellDraw<'_> {
    fn half(&self, cell: &Cell, strip: Option<&HalfDiskStrip>, out: &mut Vec<Element>) {
        let Some(strip) = strip else { return };
        let opts = StripOptions {
            cx: self.cx,
            cy: self.cy,
            show_median: self.layout.show_median,
            show_bounds: false,
            font_size: self.layout.font_size,
        };
        if strip.sectors.is_empty() {
            out.push(Element::Sector {
                cx: self.cx,
                cy: self.cy,
                radius: strip.radius(),
                theta_start: 0.0,
                theta_end: std::f64::consts::PI,
                orientation: strip.orientation,
                fill: None,
                stroke: Some(GRID_GRAY),
            });
        } else {
            out.extend(render_strip(strip, &opts));
        }
        let sparse = cell.grid.is_none();
        if self.layout.show_dots || sparse {
            if let Some(s) = &cell.sample {
                out.extend(dots(s, strip, self.seed, self.cx, self.cy));
            }
        }
    }
}

/// Width of the row-label column: the layout minimum, widened for long
/// labels at roughly 0.6 em per character.
fn label_column(layout: &Layout, labels: &[String]) -> f64 {
    let longest = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    layout
        .label_width
        .max(longest as f64 * 0.6 * layout.font_size + 12.0)
}

fn prob_label(p: f64) -> String {
    format!("{p:.3}")
}

/// Grid of half disks with row/column headers and the margin separators.
pub fn table_figure(table: &HddsTable, layout: &Layout) -> Result<FigureDoc> {
    let f = layout.font_size;
    let cols = table.col_labels.len();
    let rows = table.row_labels.len();
    let cell_w = table.d_base + 2.0 * layout.pad;
    let cell_h = table.d_base / 2.0 + 2.0 * layout.pad + 1.4 * f;
    let header_h = 2.2 * f;
    let x0 = layout.margin + label_column(layout, &table.row_labels);
    let y0 = layout.margin + header_h;
    let width = x0 + cols as f64 * cell_w + layout.margin;
    let height = y0 + rows as f64 * cell_h + layout.margin + 1.4 * f;
    let mut doc = FigureDoc::new(width, height, layout.seed);

    let corner_label = if table.col_name.is_empty() {
        table.row_name.clone()
    } else {
        format!("{} / {}", table.row_name, table.col_name)
    };
    doc.push(text(
        layout.margin,
        layout.margin + f,
        f,
        Anchor::Start,
        corner_label,
    ));
    for (j, label) in table.col_labels.iter().enumerate() {
        let cx = x0 + (j as f64 + 0.5) * cell_w;
        doc.push(text(
            cx,
            layout.margin + 1.6 * f,
            f,
            Anchor::Middle,
            label.clone(),
        ));
    }
    let sep_x = x0 + (cols - 1) as f64 * cell_w;
    let sep_y = y0 + (rows - 1) as f64 * cell_h;
    if cols > 1 {
        doc.push(line(sep_x, y0, sep_x, y0 + rows as f64 * cell_h));
    }
    doc.push(line(layout.margin, sep_y, width - layout.margin, sep_y));

    let mut index = 0u64;
    for (i, row) in table.cells.iter().enumerate() {
        let base_y = y0 + i as f64 * cell_h + layout.pad + table.d_base / 2.0;
        doc.push(text(
            x0 - 6.0,
            base_y - table.d_base / 4.0,
            f,
            Anchor::End,
            table.row_labels[i].clone(),
        ));
        for (j, cell) in row.iter().enumerate() {
            let cx = x0 + (j as f64 + 0.5) * cell_w;
            let draw = CellDraw {
                cx,
                cy: base_y,
                seed: layout.seed.wrapping_add(index),
                layout,
            };
            index += 1;
            let strip = cell_strip(cell, &table.ctx, &table.bounds, Orientation::Up)?;
            let mut els = Vec::new();
            draw.half(cell, strip.as_ref(), &mut els);
            doc.extend(els);
            let caption = if cell.probability == 0.0 {
                "empty".to_string()
            } else {
                prob_label(cell.probability)
            };
            doc.push(text(cx, base_y + 1.2 * f, 0.9 * f, Anchor::Middle, caption));
        }
    }
    let lo = crate::geometry::format_tick(table.bounds.lo);
    let hi = crate::geometry::format_tick(table.bounds.hi);
    doc.push(text(
        layout.margin,
        height - layout.margin,
        0.9 * f,
        Anchor::Start,
        format!("support [{lo}, {hi}], coverage {}", table.bounds.coverage),
    ));
    Ok(doc)
}

/// Comparison grid: each cell stacks source A (up) over source B (down).
pub fn comparison_figure(table: &ComparisonTable, layout: &Layout) -> Result<FigureDoc> {
    let f = layout.font_size;
    let cols = table.col_labels.len();
    let rows = table.row_labels.len();
    let cell_w = table.d_base + 2.0 * layout.pad;
    let cell_h = table.d_base + 2.0 * layout.pad;
    let header_h = 3.8 * f;
    let x0 = layout.margin + label_column(layout, &table.row_labels);
    let y0 = layout.margin + header_h;
    let width = x0 + cols as f64 * cell_w + layout.margin;
    let height = y0 + rows as f64 * cell_h + layout.margin + 1.4 * f;
    let mut doc = FigureDoc::new(width, height, layout.seed);

    doc.extend(swatch(
        layout.margin,
        layout.margin + f,
        f,
        table.ctx_top.base,
        &table.source_labels.0,
    ));
    doc.extend(swatch(
        layout.margin + width / 3.0,
        layout.margin + f,
        f,
        table.ctx_bottom.base,
        &table.source_labels.1,
    ));
    let corner_label = if table.col_name.is_empty() {
        table.row_name.clone()
    } else {
        format!("{} / {}", table.row_name, table.col_name)
    };
    doc.push(text(
        layout.margin,
        layout.margin + 2.6 * f,
        f,
        Anchor::Start,
        corner_label,
    ));
    for (j, label) in table.col_labels.iter().enumerate() {
        let cx = x0 + (j as f64 + 0.5) * cell_w;
        doc.push(text(
            cx,
            layout.margin + 3.4 * f,
            f,
            Anchor::Middle,
            label.clone(),
        ));
    }
    let sep_x = x0 + (cols - 1) as f64 * cell_w;
    let sep_y = y0 + (rows - 1) as f64 * cell_h;
    if cols > 1 {
        doc.push(line(sep_x, y0, sep_x, y0 + rows as f64 * cell_h));
    }
    doc.push(line(layout.margin, sep_y, width - layout.margin, sep_y));

    let mut index = 0u64;
    for (i, row) in table.cells.iter().enumerate() {
        let cy = y0 + i as f64 * cell_h + cell_h / 2.0;
        doc.push(text(
            x0 - 6.0,
            cy + 0.35 * f,
            f,
            Anchor::End,
            table.row_labels[i].clone(),
        ));
        for (j, cell) in row.iter().enumerate() {
            let cx = x0 + (j as f64 + 0.5) * cell_w;
            let top = cell_strip(&cell.top, &table.ctx_top, &table.bounds, Orientation::Up)?;
            let bottom = cell_strip(
                &cell.bottom,
                &table.ctx_bottom,
                &table.bounds,
                Orientation::Down,
            )?;
            let mut els = Vec::new();
            let seed = layout.seed.wrapping_add(2 * index);
            CellDraw {
                cx,
                cy,
                seed,
                layout,
            }
            .half(&cell.top, top.as_ref(), &mut els);
            CellDraw {
                cx,
                cy,
                seed: seed.wrapping_add(1),
                layout,
            }
            .half(&cell.bottom, bottom.as_ref(), &mut els);
            index += 1;
            let half = cell.top.diameter.max(cell.bottom.diameter) / 2.0;
            if half > 0.0 {
                els.push(Element::Line {
                    x1: cx - half,
                    y1: cy,
                    x2: cx + half,
                    y2: cy,
                    width: 0.5,
                    color: GRID_GRAY,
                });
            } else {
                els.push(text(cx, cy, 0.9 * f, Anchor::Middle, "empty"));
            }
            doc.extend(els);
        }
    }
    let lo = crate::geometry::format_tick(table.bounds.lo);
    let hi = crate::geometry::format_tick(table.bounds.hi);
    doc.push(text(
        layout.margin,
        height - layout.margin,
        0.9 * f,
        Anchor::Start,
        format!("support [{lo}, {hi}], coverage {}", table.bounds.coverage),
    ));
    Ok(doc)
}
