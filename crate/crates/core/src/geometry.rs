//! Mapping a density grid onto a half disk.
//!
//! Angles run from 0 at the right end of the diameter to π at the left end,
//! so the lower bound of the support sits on the left.

use std::f64::consts::PI;

use crate::color::{shade, HclColor, ShadingContext};
use crate::density::{DensityGrid, SupportBounds};
use crate::error::{Error, Result};

pub const DEFAULT_K: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub theta_start: f64,
    pub theta_end: f64,
    /// Grid bin this sector shades.
    pub bin: usize,
    pub fill: HclColor,
}

impl Sector {
    pub fn extent(&self) -> f64 {
        self.theta_end - self.theta_start
    }
}

/// Sectors ordered by increasing angle, i.e. from the upper bound of the
/// support to the lower one.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfDiskStrip {
    pub diameter: f64,
    pub orientation: Orientation,
    pub sectors: Vec<Sector>,
    pub median_angle: Option<f64>,
    pub bounds: SupportBounds,
    pub tick_angles: Vec<(f64, String)>,
}

impl HalfDiskStrip {
    pub fn radius(&self) -> f64 {
        0.5 * self.diameter
    }

    /// Sector with the lowest luminance; the first one on ties.
    pub fn darkest_sector(&self) -> Option<&Sector> {
        self.sectors.iter().reduce(|best, s| {
            if s.fill.luminance < best.fill.luminance {
                s
            } else {
                best
            }
        })
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn with_diameter(mut self, diameter: f64) -> Self {
        self.diameter = diameter;
        self
    }
}

/// `π·(hi − value)/(hi − lo)`.
pub fn map_support_to_angle(value: f64, bounds: &SupportBounds) -> Result<f64> {
    if !bounds.contains(value) {
        return Err(Error::OutOfBounds {
            value,
            lo: bounds.lo,
            hi: bounds.hi,
        });
    }
    Ok(angle_unchecked(value, bounds))
}

fn angle_unchecked(value: f64, bounds: &SupportBounds) -> f64 {
    PI * ((bounds.hi - value) / (bounds.hi - bounds.lo))
}

/// Short tick label: integers print bare, everything else with up to two
/// decimals.
pub fn format_tick(value: f64) -> String {
    if value.fract() == 0.0 && value.abs() < 1e15 {
        return format!("{}", value as i64);
    }
    let s = format!("{value:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// One sector per bin, shaded under `ctx`.
pub fn tessellate(
    grid: &DensityGrid,
    ctx: &ShadingContext,
    diameter: f64,
    orientation: Orientation,
) -> Result<HalfDiskStrip> {
    if !(diameter > 0.0 && diameter.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "diameter must be positive, got {diameter}"
        )));
    }
    let bounds = grid.bounds();
    let edges = grid.edges();
    let n = grid.n_bins();
    let sectors = (0..n)
        .rev()
        .map(|m| Sector {
            theta_start: angle_unchecked(edges[m + 1], &bounds),
            theta_end: angle_unchecked(edges[m], &bounds),
            bin: m,
            fill: shade(grid.values()[m], ctx),
        })
        .collect();
    let median_angle = bounds
        .contains(grid.median())
        .then(|| angle_unchecked(grid.median(), &bounds));
    let (lo_label, hi_label) = match grid.kind() {
        crate::density::Kind::Discrete => {
            (format_tick(bounds.lo + 0.5), format_tick(bounds.hi - 0.5))
        }
        crate::density::Kind::Continuous => (format_tick(bounds.lo), format_tick(bounds.hi)),
    };
    Ok(HalfDiskStrip {
        diameter,
        orientation,
        sectors,
        median_angle,
        bounds,
        tick_angles: vec![(PI, lo_label), (0.0, hi_label)],
    })
}

/// `d_base · p^k`.
pub fn diameter_scale(p: f64, k: f64, d_base: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "probability {p} outside [0, 1]"
        )));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "k must be positive, got {k}"
        )));
    }
    if !(d_base > 0.0 && d_base.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "baseline diameter must be positive, got {d_base}"
        )));
    }
    Ok(d_base * p.powf(k))
}
