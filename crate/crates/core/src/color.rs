//! HCL shading of density values and conversion to sRGB.

use std::fmt;
use std::str::FromStr;

use crate::density::DensityGrid;
use crate::error::{Error, Result};

/// D65 reference white, CIE 1931 2° observer.
const WHITE_X: f64 = 0.95047;
const WHITE_Y: f64 = 1.0;
const WHITE_Z: f64 = 1.08883;

const XYZ_TO_LINEAR_SRGB: [[f64; 3]; 3] = [
    [3.2404542, -1.5371385, -0.4985314],
    [-0.9692660, 1.8760108, 0.0415560],
    [0.0556434, -0.2040259, 1.0572252],
];

/// Polar CIE LUV color.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HclColor {
    pub hue: f64,
    pub chroma: f64,
    pub luminance: f64,
}

impl HclColor {
    pub fn new(hue: f64, chroma: f64, luminance: f64) -> Result<Self> {
        if !(hue.is_finite() && chroma.is_finite() && luminance.is_finite()) {
            return Err(Error::InvalidParameter("non-finite HCL component".into()));
        }
        if chroma < 0.0 {
            return Err(Error::InvalidParameter(format!("negative chroma {chroma}")));
        }
        if !(0.0..=100.0).contains(&luminance) {
            return Err(Error::InvalidParameter(format!(
                "luminance {luminance} outside [0, 100]"
            )));
        }
        Ok(Self {
            hue: hue.rem_euclid(360.0),
            chroma,
            luminance,
        })
    }

    /// Dark red used for a single series.
    pub const fn default_base() -> Self {
        Self {
            hue: 10.0,
            chroma: 90.0,
            luminance: 30.0,
        }
    }

    /// Dark blue used for the second series of a comparison.
    pub const fn default_second() -> Self {
        Self {
            hue: 250.0,
            chroma: 90.0,
            luminance: 30.0,
        }
    }

    pub fn white(hue: f64) -> Self {
        Self {
            hue,
            chroma: 0.0,
            luminance: 100.0,
        }
    }

    /// Same hue and luminance with the chroma removed.
    pub fn grayscale(self) -> Self {
        Self {
            chroma: 0.0,
            ..self
        }
    }

    pub fn to_rgb(self) -> RgbColor {
        hcl_to_rgb(self)
    }
}

impl fmt::Display for HclColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.hue, self.chroma, self.luminance)
    }
}

/// Parses `hue,chroma,luminance`, e.g. `10,90,30`.
impl FromStr for HclColor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidParameter(format!(
                "color `{s}` is not `hue,chroma,luminance`"
            )));
        }
        let mut nums = [0.0; 3];
        for (slot, part) in nums.iter_mut().zip(&parts) {
            *slot = part.parse::<f64>().map_err(|_| {
                Error::InvalidParameter(format!("color component `{part}` is not a number"))
            })?;
        }
        HclColor::new(nums[0], nums[1], nums[2])
    }
}

/// Gamma-encoded sRGB, components in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RgbColor {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl RgbColor {
    pub fn new(r: f64, g: f64, b: f64) -> Self {
        Self {
            r: r.clamp(0.0, 1.0),
            g: g.clamp(0.0, 1.0),
            b: b.clamp(0.0, 1.0),
        }
    }

    pub const BLACK: RgbColor = RgbColor {
        r: 0.0,
        g: 0.0,
        b: 0.0,
    };

    pub fn to_hex(self) -> String {
        let byte = |c: f64| (c * 255.0).round() as u8;
        format!(
            "#{:02x}{:02x}{:02x}",
            byte(self.r),
            byte(self.g),
            byte(self.b)
        )
    }
}

fn srgb_encode(linear: f64) -> f64 {
    let c = linear.clamp(0.0, 1.0);
    if c <= 0.0031308 {
        12.92 * c
    } else if c >= 1.0 {
        1.0
    } else {
        1.055 * c.powf(1.0 / 2.4) - 0.055
    }
}

/// Polar LUV → LUV → XYZ (D65) → linear sRGB → encoded sRGB, clamped.
pub fn hcl_to_rgb(c: HclColor) -> RgbColor {
    let l = c.luminance;
    if l <= 0.0 {
        return RgbColor::BLACK;
    }
    let y = if l > 8.0 {
        ((l + 16.0) / 116.0).powi(3)
    } else {
        l * 27.0 / 24389.0
    } * WHITE_Y;

    // The reference white maps to (1,1,1), so grays are exact.
    if c.chroma == 0.0 {
        let v = srgb_encode(y);
        return RgbColor::new(v, v, v);
    }

    let denom = WHITE_X + 15.0 * WHITE_Y + 3.0 * WHITE_Z;
    let un = 4.0 * WHITE_X / denom;
    let vn = 9.0 * WHITE_Y / denom;
    let h = c.hue.to_radians();
    let u = c.chroma * h.cos();
    let v = c.chroma * h.sin();
    let up = u / (13.0 * l) + un;
    let vp = v / (13.0 * l) + vn;
    let x = y * 9.0 * up / (4.0 * vp);
    let z = y * (12.0 - 3.0 * up - 20.0 * vp) / (4.0 * vp);

    let lin = XYZ_TO_LINEAR_SRGB.map(|row| row[0] * x + row[1] * y + row[2] * z);
    RgbColor::new(
        srgb_encode(lin[0]),
        srgb_encode(lin[1]),
        srgb_encode(lin[2]),
    )
}

/// Shared normalization under which several strips are shaded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadingContext {
    pub base: HclColor,
    pub white: HclColor,
    pub gamma: f64,
    pub norm: f64,
}

impl ShadingContext {
    /// Context with an explicit normalization constant.
    pub fn with_norm(base: HclColor, gamma: f64, norm: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::DegenerateContext);
        }
        Ok(Self {
            base,
            white: HclColor::white(base.hue),
            gamma,
            norm,
        })
    }

    /// Mixing weight `min(f / norm, 1)^gamma`.
    pub fn weight(&self, f_value: f64) -> f64 {
        let p = (f_value / self.norm).clamp(0.0, 1.0);
        p.powf(self.gamma)
    }
}

/// Context whose normalization is the largest value over all `grids`.
pub fn make_context<'a, I>(grids: I, base: HclColor, gamma: f64) -> Result<ShadingContext>
where
    I: IntoIterator<Item = &'a DensityGrid>,
{
    let norm = grids
        .into_iter()
        .map(DensityGrid::max_value)
        .fold(0.0, f64::max);
    if norm <= 0.0 {
        return Err(Error::DegenerateContext);
    }
    ShadingContext::with_norm(base, gamma, norm)
}

/// Blend between white and the base color; hue stays at `base.hue`.
pub fn shade(f_value: f64, ctx: &ShadingContext) -> HclColor {
    let w = ctx.weight(f_value);
    HclColor {
        hue: ctx.base.hue,
        chroma: w * ctx.base.chroma + (1.0 - w) * ctx.white.chroma,
        luminance: w * ctx.base.luminance + (1.0 - w) * ctx.white.luminance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{estimate_discrete, Sample};

    fn ctx(gamma: f64) -> ShadingContext {
        ShadingContext::with_norm(HclColor::default_base(), gamma, 2.0).unwrap()
    }

    #[test]
    fn shade_endpoints() {
        let c = ctx(1.0);
        let white = shade(0.0, &c);
        assert_eq!((white.chroma, white.luminance), (0.0, 100.0));
        assert_eq!(shade(2.0, &c), c.base);
        // clipped above the norm
        assert_eq!(shade(5.0, &c), c.base);
    }

    #[test]
    fn gamma_half_at_quarter() {
        let c = ctx(0.5);
        let s = shade(0.5, &c);
        assert!((s.chroma - 45.0).abs() < 1e-12);
        assert!((s.luminance - 65.0).abs() < 1e-12);
    }

    #[test]
    fn achromatic_extremes() {
        assert_eq!(
            hcl_to_rgb(HclColor::new(123.0, 0.0, 100.0).unwrap()),
            RgbColor::new(1.0, 1.0, 1.0)
        );
        assert_eq!(
            hcl_to_rgb(HclColor::new(0.0, 0.0, 0.0).unwrap()),
            RgbColor::BLACK
        );
        let gray = hcl_to_rgb(HclColor::new(40.0, 0.0, 53.0).unwrap());
        assert!(gray.r == gray.g && gray.g == gray.b);
    }

    #[test]
    fn golden_conversions() {
        // Frozen from two independent CIE LUV/D65 implementations.
        let cases = [
            ((0.0, 50.0, 50.0), (0.67710, 0.37693, 0.44170)),
            ((10.0, 90.0, 30.0), (0.56183, 0.05053, 0.11118)),
            ((250.0, 60.0, 40.0), (0.14935, 0.37674, 0.61865)),
        ];
        for ((h, c, l), (r, g, b)) in cases {
            let rgb = hcl_to_rgb(HclColor::new(h, c, l).unwrap());
            assert!((rgb.r - r).abs() < 1e-4, "{h} {c} {l}: {rgb:?}");
            assert!((rgb.g - g).abs() < 1e-4, "{h} {c} {l}: {rgb:?}");
            assert!((rgb.b - b).abs() < 1e-4, "{h} {c} {l}: {rgb:?}");
        }
    }

    #[test]
    fn out_of_gamut_is_clamped() {
        let rgb = hcl_to_rgb(HclColor::new(130.0, 180.0, 50.0).unwrap());
        for ch in [rgb.r, rgb.g, rgb.b] {
            assert!((0.0..=1.0).contains(&ch));
        }
    }

    #[test]
    fn parse_color() {
        let c: HclColor = "370, 40, 20".parse().unwrap();
        assert_eq!(
            c,
            HclColor {
                hue: 10.0,
                chroma: 40.0,
                luminance: 20.0
            }
        );
        assert!("1,2".parse::<HclColor>().is_err());
        assert!("1,2,x".parse::<HclColor>().is_err());
        assert!("1,-2,3".parse::<HclColor>().is_err());
        assert!("1,2,300".parse::<HclColor>().is_err());
    }

    #[test]
    fn context_from_grids() {
        let a = estimate_discrete(&Sample::discrete(vec![0.0, 0.0, 1.0, 2.0]).unwrap()).unwrap();
        let b = estimate_discrete(&Sample::discrete(vec![1.0, 2.0, 3.0, 4.0]).unwrap()).unwrap();
        let base = HclColor::default_base();
        assert_eq!(make_context([&a], base, 1.0).unwrap().norm, 0.5);
        assert_eq!(make_context([&a, &b], base, 1.0).unwrap().norm, 0.5);
        assert_eq!(make_context([&b], base, 1.0).unwrap().norm, 0.25);
        assert_eq!(
            make_context([&a, &a], base, 1.0).unwrap(),
            make_context([&a], base, 1.0).unwrap()
        );
        assert!(matches!(
            make_context([], base, 1.0),
            Err(Error::DegenerateContext)
        ));
        assert!(make_context([&a], base, 0.0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn lighter_for_smaller_values(a in 0.0f64..2.0, b in 0.0f64..2.0, gamma in 0.1f64..5.0) {
                prop_assume!(a < b);
                let c = ctx(gamma);
                let (sa, sb) = (shade(a, &c), shade(b, &c));
                // the weights can coincide in floating point for extreme gammas
                prop_assert!(sa.luminance >= sb.luminance);
                if c.weight(a) < c.weight(b) {
                    prop_assert!(sa.luminance > sb.luminance);
                }
            }

            #[test]
            fn gray_inputs_give_gray_output(h in 0.0f64..360.0, l in 0.0f64..=100.0) {
                let rgb = hcl_to_rgb(HclColor::new(h, 0.0, l).unwrap());
                prop_assert!(rgb.r == rgb.g && rgb.g == rgb.b);
            }
        }
    }
}
