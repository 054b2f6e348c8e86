//! Deterministic SVG output.
//!
//! A [`FigureDoc`] is an ordered list of primitives in figure units.
//! Serialization writes every number with four decimals, so identical
//! documents give identical bytes on every platform.

mod compose;
mod strip;

use std::fmt::Write as _;

use crate::color::RgbColor;
use crate::geometry::Orientation;

pub use compose::{comparison_figure, disk_pair_figure, strip_figure, table_figure, Layout};
pub use strip::{
    render_disk_pair, render_dots, render_overlay, render_strip, DotOverlay, StripOptions,
    DOT_RADIAL_RANGE, JITTER_FRACTION, MEDIAN_TICK_FRACTION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Start,
    Middle,
    End,
}

impl Anchor {
    fn as_str(self) -> &'static str {
        match self {
            Anchor::Start => "start",
            Anchor::Middle => "middle",
            Anchor::End => "end",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    /// Circular sector centered at `(cx, cy)`; angles measured from the
    /// positive x axis, mirrored below the diameter for `Orientation::Down`.
    Sector {
        cx: f64,
        cy: f64,
        radius: f64,
        theta_start: f64,
        theta_end: f64,
        orientation: Orientation,
        fill: Option<RgbColor>,
        stroke: Option<RgbColor>,
    },
    Line {
        x1: f64,
        y1: f64,
        x2: f64,
        y2: f64,
        width: f64,
        color: RgbColor,
    },
    Circle {
        cx: f64,
        cy: f64,
        r: f64,
        fill: RgbColor,
    },
    Text {
        x: f64,
        y: f64,
        size: f64,
        anchor: Anchor,
        content: String,
    },
}

impl Element {
    fn scaled(&self, f: f64) -> Element {
        match self.clone() {
            Element::Sector {
                cx,
                cy,
                radius,
                theta_start,
                theta_end,
                orientation,
                fill,
                stroke,
            } => Element::Sector {
                cx: cx * f,
                cy: cy * f,
                radius: radius * f,
                theta_start,
                theta_end,
                orientation,
                fill,
                stroke,
            },
            Element::Line {
                x1,
                y1,
                x2,
                y2,
                width,
                color,
            } => Element::Line {
                x1: x1 * f,
                y1: y1 * f,
                x2: x2 * f,
                y2: y2 * f,
                width: width * f,
                color,
            },
            Element::Circle { cx, cy, r, fill } => Element::Circle {
                cx: cx * f,
                cy: cy * f,
                r: r * f,
                fill,
            },
            Element::Text {
                x,
                y,
                size,
                anchor,
                content,
            } => Element::Text {
                x: x * f,
                y: y * f,
                size: size * f,
                anchor,
                content,
            },
        }
    }
}

/// Point at `theta` on a circle of `radius` around `(cx, cy)` in SVG
/// coordinates (y grows downward).
pub fn polar_point(
    cx: f64,
    cy: f64,
    radius: f64,
    theta: f64,
    orientation: Orientation,
) -> (f64, f64) {
    let dy = radius * theta.sin();
    let y = match orientation {
        Orientation::Up => cy - dy,
        Orientation::Down => cy + dy,
    };
    (cx + radius * theta.cos(), y)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureDoc {
    pub width: f64,
    pub height: f64,
    pub elements: Vec<Element>,
    pub seed: u64,
}

impl FigureDoc {
    pub fn new(width: f64, height: f64, seed: u64) -> Self {
        Self {
            width,
            height,
            elements: Vec::new(),
            seed,
        }
    }

    pub fn push(&mut self, element: Element) {
        self.elements.push(element);
    }

    pub fn extend<I: IntoIterator<Item = Element>>(&mut self, elements: I) {
        self.elements.extend(elements);
    }

    /// Uniformly rescaled copy; colors and angles are untouched.
    pub fn scaled(&self, factor: f64) -> FigureDoc {
        FigureDoc {
            width: self.width * factor,
            height: self.height * factor,
            elements: self.elements.iter().map(|e| e.scaled(factor)).collect(),
            seed: self.seed,
        }
    }
}

/// Fixed four-decimal formatting with negative zero folded to zero.
pub fn fmt_num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c if (c as u32) < 0x20 && c != '\t' && c != '\n' && c != '\r' => out.push(' '),
            c => out.push(c),
        }
    }
    out
}

fn paint(color: Option<RgbColor>) -> String {
    color.map_or_else(|| "none".to_string(), RgbColor::to_hex)
}

fn sector_path(
    cx: f64,
    cy: f64,
    radius: f64,
    theta_start: f64,
    theta_end: f64,
    orientation: Orientation,
) -> String {
    let (x1, y1) = polar_point(cx, cy, radius, theta_start, orientation);
    let (x2, y2) = polar_point(cx, cy, radius, theta_end, orientation);
    // counter-clockwise on screen above the diameter, clockwise below
    let sweep = match orientation {
        Orientation::Up => 0,
        Orientation::Down => 1,
    };
    format!(
        "M{} {} L{} {} A{} {} 0 0 {} {} {} Z",
        fmt_num(cx),
        fmt_num(cy),
        fmt_num(x1),
        fmt_num(y1),
        fmt_num(radius),
        fmt_num(radius),
        sweep,
        fmt_num(x2),
        fmt_num(y2)
    )
}

/// SVG 1.1, UTF-8, elements in document order.
pub fn serialize(doc: &FigureDoc) -> Vec<u8> {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = fmt_num(doc.width),
        h = fmt_num(doc.height)
    );
    for el in &doc.elements {
        match el {
            Element::Sector {
                cx,
                cy,
                radius,
                theta_start,
                theta_end,
                orientation,
                fill,
                stroke,
            } => {
                let d = sector_path(*cx, *cy, *radius, *theta_start, *theta_end, *orientation);
                let _ = write!(out, "<path d=\"{d}\" fill=\"{}\"", paint(*fill));
                match stroke {
                    Some(c) => {
                        let _ = write!(out, " stroke=\"{}\" stroke-width=\"0.5000\"", c.to_hex());
                    }
                    // hairline in the fill color hides antialiasing seams
                    None => {
                        let _ = write!(out, " stroke=\"{}\" stroke-width=\"0.2500\"", paint(*fill));
                    }
                }
                out.push_str("/>\n");
            }
            Element::Line {
                x1,
                y1,
                x2,
                y2,
                width,
                color,
            } => {
                let _ = writeln!(
                    out,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
                    fmt_num(*x1),
                    fmt_num(*y1),
                    fmt_num(*x2),
                    fmt_num(*y2),
                    color.to_hex(),
                    fmt_num(*width)
                );
            }
            Element::Circle { cx, cy, r, fill } => {
                let _ = writeln!(
                    out,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
                    fmt_num(*cx),
                    fmt_num(*cy),
                    fmt_num(*r),
                    fill.to_hex()
                );
            }
            Element::Text {
                x,
                y,
                size,
                anchor,
                content,
            } => {
                let _ = writeln!(
                    out,
                    "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"{}\">{}</text>",
                    fmt_num(*x),
                    fmt_num(*y),
                    fmt_num(*size),
                    anchor.as_str(),
                    escape(content)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn empty_document() {
        let svg = String::from_utf8(serialize(&FigureDoc::new(120.0, 80.0, 0))).unwrap();
        assert!(svg.contains("width=\"120.0000\""));
        assert!(svg.contains("height=\"80.0000\""));
        let parsed = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(parsed.root_element().tag_name().name(), "svg");
        assert_eq!(
            parsed
                .root_element()
                .children()
                .filter(|n| n.is_element())
                .count(),
            0
        );
    }

    #[test]
    fn one_sector_one_path() {
        let mut doc = FigureDoc::new(100.0, 60.0, 0);
        doc.push(Element::Sector {
            cx: 50.0,
            cy: 55.0,
            radius: 40.0,
            theta_start: 0.0,
            theta_end: PI,
            orientation: Orientation::Up,
            fill: Some(RgbColor::new(0.5, 0.2, 0.1)),
            stroke: None,
        });
        doc.push(Element::Text {
            x: 1.0,
            y: 2.0,
            size: 9.0,
            anchor: Anchor::Start,
            content: "a < b & \"c\"".into(),
        });
        let bytes = serialize(&doc);
        assert_eq!(bytes, serialize(&doc));
        let svg = String::from_utf8(bytes).unwrap();
        let parsed = roxmltree::Document::parse(&svg).unwrap();
        let paths = parsed
            .descendants()
            .filter(|n| n.has_tag_name("path"))
            .count();
        assert_eq!(paths, 1);
        let text = parsed
            .descendants()
            .find(|n| n.has_tag_name("text"))
            .unwrap();
        assert_eq!(text.text(), Some("a < b & \"c\""));
        assert!(svg.contains(
            "M50.0000 55.0000 L90.0000 55.0000 A40.0000 40.0000 0 0 0 10.0000 55.0000 Z"
        ));
    }

    #[test]
    fn negative_zero_is_folded() {
        assert_eq!(fmt_num(-0.0), "0.0000");
        assert_eq!(fmt_num(-0.00001), "0.0000");
        assert_eq!(fmt_num(1.23456), "1.2346");
    }

    #[test]
    fn polar_points_mirror() {
        let (x, y) = polar_point(0.0, 0.0, 2.0, PI / 2.0, Orientation::Up);
        assert!(x.abs() < 1e-12 && (y + 2.0).abs() < 1e-12);
        let (_, y) = polar_point(0.0, 0.0, 2.0, PI / 2.0, Orientation::Down);
        assert!((y - 2.0).abs() < 1e-12);
    }
}
