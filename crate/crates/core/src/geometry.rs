//! Hyperbolic data of extremal surfaces: the regular `(12g - 6)`-gon with
//! interior angles `2π/3` and its inscribed and circumscribed radii.
//!
//! Values are computed with `astro-float` at the requested number of
//! fractional digits plus guard digits, then rounded to decimal strings.

use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

const GUARD_DIGITS: usize = 20;
const ROUNDING: RoundingMode = RoundingMode::ToEven;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("genus {0} surfaces are not hyperbolic; need genus at least 2")]
    NotHyperbolic(usize),
    #[error("requested precision must be at least one digit")]
    ZeroDigits,
    #[error("arbitrary-precision backend failed: {0}")]
    Backend(String),
}

/// Decimal values rounded to `digits` fractional places.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalGeometry {
    pub genus: usize,
    pub digits: usize,
    pub n_sides: usize,
    /// `π / (12g - 6)`.
    pub beta: String,
    /// Radius of the largest embedded disk, `arccosh(1 / (2 sin β))`.
    pub embedded_radius: String,
    /// Radius of the smallest covering disk, `arccosh(1 / (√3 tan β))`.
    pub covering_radius: String,
    /// `2π / 3`.
    pub interior_angle: String,
    /// `4π (g - 1)`.
    pub area: String,
    /// Every printed value is within this distance of the true value.
    pub error_bound: String,
    /// True when the guard digits rule out a rounding-boundary ambiguity
    /// for every printed value.
    pub correctly_rounded: bool,
    pub embedded_below_covering: bool,
}

fn bits_for(digits: usize) -> usize {
    let bits = ((digits + GUARD_DIGITS) as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
    bits.div_ceil(64) * 64
}

struct Ctx {
    p: usize,
    cc: Consts,
}

impl Ctx {
    fn new(digits: usize) -> Result<Self, GeometryError> {
        let cc = Consts::new().map_err(|e| GeometryError::Backend(format!("{e:?}")))?;
        Ok(Ctx { p: bits_for(digits), cc })
    }

    fn int(&self, n: u64) -> BigFloat {
        BigFloat::from_u64(n, self.p)
    }

    fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, ROUNDING)
    }

    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, ROUNDING)
    }

    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, ROUNDING)
    }

    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, ROUNDING)
    }

    fn format(&mut self, x: &BigFloat) -> Result<String, GeometryError> {
        x.format(Radix::Dec, ROUNDING, &mut self.cc).map_err(|e| GeometryError::Backend(format!("{e:?}")))
    }
}

/// High-precision values before rounding.
struct Raw {
    beta: BigFloat,
    embedded: BigFloat,
    covering: BigFloat,
    angle: BigFloat,
    area: BigFloat,
}

fn sides(g: usize) -> usize {
    12 * g - 6
}

fn raw_values(ctx: &mut Ctx, g: usize) -> Raw {
    let pi = ctx.pi();
    let beta = ctx.div(&pi, &ctx.int(sides(g) as u64));
    let sin = beta.sin(ctx.p, ROUNDING, &mut ctx.cc);
    let tan = beta.tan(ctx.p, ROUNDING, &mut ctx.cc);
    let sqrt3 = ctx.int(3).sqrt(ctx.p, ROUNDING);
    let one = ctx.int(1);
    let embedded = ctx.div(&one, &ctx.mul(&ctx.int(2), &sin)).acosh(ctx.p, ROUNDING, &mut ctx.cc);
    let covering = ctx.div(&one, &ctx.mul(&sqrt3, &tan)).acosh(ctx.p, ROUNDING, &mut ctx.cc);
    let angle = ctx.div(&ctx.mul(&ctx.int(2), &pi), &ctx.int(3));
    let area = ctx.mul(&ctx.int(4 * (g as u64 - 1)), &pi);
    Raw { beta, embedded, covering, angle, area }
}

/// Rounds a backend scientific string (`d.ddd…e±x`) to `digits` fractional
/// places, half away from zero. Also reports whether the discarded tail sits
/// clearly away from the rounding boundary.
fn round_scientific(text: &str, digits: usize) -> Option<(String, bool)> {
    let text = text.trim();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (mantissa, exponent) = match body.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let all_digits: String = format!("{int_part}{frac_part}");
    if all_digits.is_empty() || !all_digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let magnitude: BigInt = all_digits.parse().ok()?;
    // value = magnitude * 10^(exponent - frac_len); scale to 10^-digits units
    let shift = exponent - frac_part.len() as i64 + digits as i64;
    let (units, clear) = if shift >= 0 {
        (magnitude * BigInt::from(10).pow(shift as u32), true)
    } else {
        let divisor = BigInt::from(10).pow((-shift) as u32);
        let (q, r) = magnitude.div_rem(&divisor);
        let twice: BigInt = &r * 2;
        let rounded = if twice >= divisor { q + 1 } else { q };
        // tail distance from one half, in units of the divisor
        let margin: BigInt = (twice - &divisor).abs();
        let tolerance = &divisor / BigInt::from(10).pow(10u32.min((-shift) as u32));
        let clear = margin > tolerance;
        (rounded, clear)
    };
    let digits_text = units.to_string();
    let padded = format!("{digits_text:0>width$}", width = digits + 1);
    let (whole, frac) = padded.split_at(padded.len() - digits);
    let sign = if negative && units.sign() == num_bigint::Sign::Plus { "-" } else { "" };
    Some((format!("{sign}{whole}.{frac}"), clear))
}

fn rounded(ctx: &mut Ctx, x: &BigFloat, digits: usize) -> Result<(String, bool), GeometryError> {
    let text = ctx.format(x)?;
    round_scientific(&text, digits).ok_or_else(|| GeometryError::Backend(format!("unexpected number format {text:?}")))
}

fn check_genus(g: usize) -> Result<(), GeometryError> {
    if g < 2 {
        Err(GeometryError::NotHyperbolic(g))
    } else {
        Ok(())
    }
}

/// Angle, radii and area for genus `g`, rounded to `digits` fractional places.
pub fn extremal_geometry(g: usize, digits: usize) -> Result<ExtremalGeometry, GeometryError> {
    check_genus(g)?;
    if digits == 0 {
        return Err(GeometryError::ZeroDigits);
    }
    let mut ctx = Ctx::new(digits)?;
    let raw = raw_values(&mut ctx, g);
    let mut all_clear = true;
    let mut round = |x: &BigFloat| -> Result<String, GeometryError> {
        let (s, clear) = rounded(&mut ctx, x, digits)?;
        all_clear &= clear;
        Ok(s)
    };
    let beta = round(&raw.beta)?;
    let embedded_radius = round(&raw.embedded)?;
    let covering_radius = round(&raw.covering)?;
    let interior_angle = round(&raw.angle)?;
    let area = round(&raw.area)?;
    Ok(ExtremalGeometry {
        genus: g,
        digits,
        n_sides: sides(g),
        beta,
        embedded_radius,
        covering_radius,
        interior_angle,
        area,
        error_bound: format!("1e-{digits}"),
        correctly_rounded: all_clear,
        embedded_below_covering: raw.embedded.partial_cmp(&raw.covering) == Some(Ordering::Less),
    })
}

/// Decimal exponent of `|cosh C · tan β · √3 - 1|` evaluated at `digits`
/// digits; `None` when the residual is exactly zero.
pub fn circumradius_residual_exponent(g: usize, digits: usize) -> Result<Option<i32>, GeometryError> {
    check_genus(g)?;
    let mut ctx = Ctx::new(digits)?;
    let raw = raw_values(&mut ctx, g);
    let cosh = raw.covering.cosh(ctx.p, ROUNDING, &mut ctx.cc);
    let tan = raw.beta.tan(ctx.p, ROUNDING, &mut ctx.cc);
    let sqrt3 = ctx.int(3).sqrt(ctx.p, ROUNDING);
    let product = ctx.mul(&ctx.mul(&cosh, &tan), &sqrt3);
    let residual = ctx.sub(&product, &ctx.int(1)).abs();
    decimal_exponent(&mut ctx, &residual)
}

fn decimal_exponent(ctx: &mut Ctx, x: &BigFloat) -> Result<Option<i32>, GeometryError> {
    if x.is_zero() {
        return Ok(None);
    }
    let text = ctx.format(x)?;
    let exponent = text
        .split_once(['e', 'E'])
        .and_then(|(_, e)| e.parse::<i32>().ok())
        .ok_or_else(|| GeometryError::Backend(format!("unexpected number format {text:?}")))?;
    Ok(Some(exponent))
}

/// Whether the angle defect `(n - 2)π - n · 2π/3` of the polygon equals
/// `4π (g - 1)` to 50 digits.
pub fn gauss_bonnet_check(g: usize) -> Result<bool, GeometryError> {
    check_genus(g)?;
    const DIGITS: usize = 50;
    let mut ctx = Ctx::new(DIGITS)?;
    let raw = raw_values(&mut ctx, g);
    let pi = ctx.pi();
    let n = sides(g) as u64;
    let defect = ctx.sub(&ctx.mul(&ctx.int(n - 2), &pi), &ctx.mul(&ctx.int(n), &raw.angle));
    let diff = ctx.sub(&defect, &raw.area).abs();
    Ok(match decimal_exponent(&mut ctx, &diff)? {
        None => true,
        Some(e) => e < -(DIGITS as i32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_of_scientific_strings() {
        assert_eq!(round_scientific("1.23456e+0", 3), Some(("1.235".into(), true)));
        assert_eq!(round_scientific("9.9996e+0", 3), Some(("10.000".into(), true)));
        assert_eq!(round_scientific("5.81776e-2", 4), Some(("0.0582".into(), true)));
        assert_eq!(round_scientific("-1.5e+1", 2), Some(("-15.00".into(), true)));
        assert_eq!(round_scientific("1.2345000000000000e+0", 3).map(|r| r.1), Some(false));
        assert_eq!(round_scientific("x", 3), None);
    }

    #[test]
    fn genus_two_values() {
        let geo = extremal_geometry(2, 30).unwrap();
        assert_eq!(geo.n_sides, 18);
        assert_eq!(geo.beta, "0.174532925199432957692369076849");
        assert_eq!(geo.embedded_radius, "1.719107120615051545948519779873");
        assert_eq!(geo.covering_radius, "1.855077135319087331223368964084");
        assert_eq!(geo.area, "12.566370614359172953850573533118");
        assert!(geo.embedded_below_covering);
    }

    #[test]
    fn rejects_non_hyperbolic() {
        assert_eq!(extremal_geometry(1, 10), Err(GeometryError::NotHyperbolic(1)));
        assert_eq!(extremal_geometry(2, 0), Err(GeometryError::ZeroDigits));
        assert_eq!(gauss_bonnet_check(1), Err(GeometryError::NotHyperbolic(1)));
    }

    #[test]
    fn area_identity() {
        assert!(gauss_bonnet_check(2).unwrap());
        assert!(gauss_bonnet_check(10).unwrap());
    }
}
