use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{polar_point, Anchor, Element};
use crate::color::RgbColor;
use crate::density::{Kind, Sample};
use crate::error::{Error, Result};
use crate::geometry::{map_support_to_angle, HalfDiskStrip, Orientation};

/// Share of the radius, at the rim, covered by the median tick.
pub const MEDIAN_TICK_FRACTION: f64 = 0.10;
/// Radial placement range for data dots, as fractions of the radius.
pub const DOT_RADIAL_RANGE: (f64, f64) = (0.20, 0.90);
/// Angular jitter of discrete data, as a fraction of one bin's extent.
pub const JITTER_FRACTION: f64 = 0.35;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripOptions {
    pub cx: f64,
    pub cy: f64,
    pub show_median: bool,
    pub show_bounds: bool,
    pub font_size: f64,
}

impl Default for StripOptions {
    fn default() -> Self {
        Self {
            cx: 0.0,
            cy: 0.0,
            show_median: true,
            show_bounds: true,
            font_size: 10.0,
        }
    }
}

fn sectors(strip: &HalfDiskStrip, orientation: Orientation, opts: &StripOptions) -> Vec<Element> {
    strip
        .sectors
        .iter()
        .map(|s| Element::Sector {
            cx: opts.cx,
            cy: opts.cy,
            radius: strip.radius(),
            theta_start: s.theta_start,
            theta_end: s.theta_end,
            orientation,
            fill: Some(s.fill.to_rgb()),
            stroke: None,
        })
        .collect()
}

fn median_tick(
    strip: &HalfDiskStrip,
    orientation: Orientation,
    opts: &StripOptions,
) -> Option<Element> {
    let theta = strip.median_angle?;
    let r = strip.radius();
    let (x1, y1) = polar_point(
        opts.cx,
        opts.cy,
        r * (1.0 - MEDIAN_TICK_FRACTION),
        theta,
        orientation,
    );
    let (x2, y2) = polar_point(opts.cx, opts.cy, r, theta, orientation);
    Some(Element::Line {
        x1,
        y1,
        x2,
        y2,
        width: (0.01 * strip.diameter).clamp(0.5, 1.5),
        color: RgbColor::BLACK,
    })
}

fn bound_labels(
    strip: &HalfDiskStrip,
    orientation: Orientation,
    opts: &StripOptions,
) -> Vec<Element> {
    let r = strip.radius();
    let dy = match orientation {
        Orientation::Up => opts.font_size,
        Orientation::Down => -0.3 * opts.font_size,
    };
    strip
        .tick_angles
        .iter()
        .map(|(theta, label)| {
            let (x, y) = polar_point(opts.cx, opts.cy, r, *theta, orientation);
            let anchor = if *theta > PI / 2.0 {
                Anchor::Start
            } else {
                Anchor::End
            };
            Element::Text {
                x,
                y: y + dy,
                size: opts.font_size,
                anchor,
                content: label.clone(),
            }
        })
        .collect()
}

/// Sector paths, then the median tick and the bound labels when enabled.
pub fn render_strip(strip: &HalfDiskStrip, opts: &StripOptions) -> Vec<Element> {
    let mut out = sectors(strip, strip.orientation, opts);
    if opts.show_median {
        out.extend(median_tick(strip, strip.orientation, opts));
    }
    if opts.show_bounds {
        out.extend(bound_labels(strip, strip.orientation, opts));
    }
    out
}

/// Two half disks sharing a center and a horizontal diameter: `top` above,
/// `bottom` mirrored below.
pub fn render_disk_pair(
    top: &HalfDiskStrip,
    bottom: &HalfDiskStrip,
    opts: &StripOptions,
) -> Result<Vec<Element>> {
    if top.orientation != Orientation::Up || bottom.orientation != Orientation::Down {
        return Err(Error::InvalidParameter(
            "disk pair needs an upward top strip and a downward bottom strip".into(),
        ));
    }
    let mut out = sectors(top, Orientation::Up, opts);
    out.extend(sectors(bottom, Orientation::Down, opts));
    let half = top.radius().max(bottom.radius());
    out.push(Element::Line {
        x1: opts.cx - half,
        y1: opts.cy,
        x2: opts.cx + half,
        y2: opts.cy,
        width: 0.5,
        color: RgbColor::new(0.3, 0.3, 0.3),
    });
    if opts.show_median {
        out.extend(median_tick(top, Orientation::Up, opts));
        out.extend(median_tick(bottom, Orientation::Down, opts));
    }
    if opts.show_bounds {
        let wider = if top.diameter >= bottom.diameter {
            top
        } else {
            bottom
        };
        out.extend(bound_labels(wider, Orientation::Up, opts));
    }
    Ok(out)
}

/// Dot positions relative to a strip.
#[derive(Debug, Clone, PartialEq)]
pub struct DotOverlay {
    /// `(angle, radial_fraction)` per retained observation.
    pub positions: Vec<(f64, f64)>,
    pub marker_radius: f64,
    /// Observations outside the strip bounds.
    pub dropped: usize,
}

/// Seeded dot cloud for `sample` over `strip`.
///
/// Continuous values sit exactly at their mapped angle; discrete values get
/// a uniform angular jitter of ±[`JITTER_FRACTION`] of one bin. Radial
/// fractions are uniform on [`DOT_RADIAL_RANGE`].
pub fn render_dots(sample: &Sample, strip: &HalfDiskStrip, seed: u64) -> DotOverlay {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = &strip.bounds;
    let bin_extent = PI / bounds.width();
    let (r_min, r_max) = DOT_RADIAL_RANGE;
    let mut positions = Vec::with_capacity(sample.len());
    let mut dropped = 0;
    for &v in sample.values() {
        let Ok(theta) = map_support_to_angle(v, bounds) else {
            dropped += 1;
            continue;
        };
        let theta = match sample.kind() {
            Kind::Continuous => theta,
            Kind::Discrete => theta + rng.gen_range(-JITTER_FRACTION..JITTER_FRACTION) * bin_extent,
        };
        let radial = rng.gen_range(r_min..r_max);
        positions.push((theta, radial));
    }
    DotOverlay {
        positions,
        marker_radius: (0.006 * strip.diameter).max(0.6),
        dropped,
    }
}

/// Circle markers for an overlay drawn on a half disk of `radius`.
pub fn render_overlay(
    overlay: &DotOverlay,
    cx: f64,
    cy: f64,
    radius: f64,
    orientation: Orientation,
) -> Vec<Element> {
    overlay
        .positions
        .iter()
        .map(|&(theta, frac)| {
            let (x, y) = polar_point(cx, cy, radius * frac, theta, orientation);
            Element::Circle {
                cx: x,
                cy: y,
                r: overlay.marker_radius,
                fill: RgbColor::BLACK,
            }
        })
        .collect()
}
