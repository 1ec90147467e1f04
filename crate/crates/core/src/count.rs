//! Exact evaluation of the mass formulas and the surface counts derived
//! from them. Everything here is arbitrary-precision rational arithmetic.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("genus must be at least 1")]
    InvalidGenus,
    #[error("negative factorial argument {argument} in {formula} with satisfied conditions")]
    FormulaDomain { formula: &'static str, argument: i64 },
    #[error("{quantity} = {value} is not a nonnegative integer at genus {genus}")]
    IntegralityViolation { genus: usize, quantity: &'static str, value: String },
}

/// Reduced fraction with arbitrary-precision numerator and denominator.
///
/// Displays and serializes as `"p/q"` (always with the denominator).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Self {
        ExactRational(self.0.recip())
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as a rational")]
pub struct ParseRationalError(String);

impl FromStr for ExactRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(ExactRational::new(n, d))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: Self) -> Self {
        ExactRational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a ExactRational> for ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: &'a ExactRational) -> Self {
        ExactRational(self.0 + &rhs.0)
    }
}

impl AddAssign for ExactRational {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &'a ExactRational) {
        self.0 += &rhs.0;
    }
}

impl Sub for ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: Self) -> Self {
        ExactRational(self.0 - rhs.0)
    }
}

impl Mul for ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: Self) -> Self {
        ExactRational(self.0 * rhs.0)
    }
}

impl Mul<i64> for ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: i64) -> Self {
        ExactRational(self.0 * BigRational::from_integer(BigInt::from(rhs)))
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = &'a ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

static FACTORIALS: RwLock<Vec<BigUint>> = RwLock::new(Vec::new());

/// `n!`, memoized across threads.
pub fn factorial(n: usize) -> BigUint {
    {
        let table = FACTORIALS.read().unwrap_or_else(|e| e.into_inner());
        if let Some(v) = table.get(n) {
            return v.clone();
        }
    }
    let mut table = FACTORIALS.write().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.push(BigUint::one());
    }
    while table.len() <= n {
        let k = table.len();
        let next = &table[k - 1] * BigUint::from(k);
        table.push(next);
    }
    table[n].clone()
}

fn checked_factorial(argument: i64, formula: &'static str) -> Result<BigInt, CountError> {
    if argument < 0 {
        return Err(CountError::FormulaDomain { formula, argument });
    }
    Ok(BigInt::from(factorial(argument as usize)))
}

fn pow_ratio(numer: i64, denom: i64, exp: usize) -> BigRational {
    let base = BigRational::new(BigInt::from(numer), BigInt::from(denom));
    num_traits::pow(base, exp)
}

/// Nonnegative integer quotient `num / den`, if exact.
fn exact_quotient(num: i64, den: i64) -> Option<usize> {
    (num >= 0 && num % den == 0).then(|| (num / den) as usize)
}

fn check_genus(g: usize) -> Result<(), CountError> {
    if g == 0 {
        Err(CountError::InvalidGenus)
    } else {
        Ok(())
    }
}

/// `m₁ᵍ = 2 (1/12)ᵍ (6g-5)! / (g! (3g-3)!)`.
pub fn m1(g: usize) -> Result<ExactRational, CountError> {
    check_genus(g)?;
    let gi = g as i64;
    let num = checked_factorial(6 * gi - 5, "m1")?;
    let den = checked_factorial(gi, "m1")? * checked_factorial(3 * gi - 3, "m1")?;
    let value = BigRational::from_integer(BigInt::from(2)) * pow_ratio(1, 12, g) * BigRational::new(num, den);
    Ok(ExactRational(value))
}

/// Mass of `W₂ᵍ(r)`: forms with an involution reversing exactly `r` edges.
pub fn m2(g: usize, r: usize) -> Result<ExactRational, CountError> {
    check_genus(g)?;
    let (gi, ri) = (g as i64, r as i64);
    let Some(f) = exact_quotient(2 * gi + 1 - ri, 4) else {
        return Ok(ExactRational::zero());
    };
    let fi = f as i64;
    let num = checked_factorial(6 * fi + 2 * ri - 5, "m2")?;
    let den = checked_factorial(fi, "m2")? * checked_factorial(3 * fi + ri - 3, "m2")?;
    let value = pow_ratio(4, 12, f) * BigRational::new(num, den * BigInt::from(factorial(r)));
    Ok(ExactRational(value))
}

/// Mass of `W₃ᵍ(s,t)`: forms with an order-3 automorphism fixing `s`
/// positive and `t` negative vertices.
pub fn m3(g: usize, s: usize, t: usize) -> Result<ExactRational, CountError> {
    check_genus(g)?;
    let (gi, si, ti) = (g as i64, s as i64, t as i64);
    let Some(f) = exact_quotient(gi + 1 - si - ti, 3) else {
        return Ok(ExactRational::zero());
    };
    if (si - (2 * gi + 1)).rem_euclid(3) != 0 || (ti - 2 * gi).rem_euclid(3) != 0 {
        return Ok(ExactRational::zero());
    }
    if g == 1 {
        return Ok(if (s, t) == (0, 2) { ExactRational::new(1, 6) } else { ExactRational::zero() });
    }
    let fi = f as i64;
    let num = checked_factorial(6 * fi + 2 * si + 2 * ti - 5, "m3")?;
    let den = checked_factorial(fi, "m3")?
        * checked_factorial(3 * fi + si + ti - 3, "m3")?
        * BigInt::from(factorial(s))
        * BigInt::from(factorial(t));
    let value = pow_ratio(2, 3, 1) * pow_ratio(9, 12, f) * BigRational::new(num, den);
    Ok(ExactRational(value))
}

/// Mass of `W₆ᵍ(3r; 2s, 2t)`, taking the formula parameters `(r, s, t)`.
pub fn m6(g: usize, r: usize, s: usize, t: usize) -> Result<ExactRational, CountError> {
    check_genus(g)?;
    let (gi, ri, si, ti) = (g as i64, r as i64, s as i64, t as i64);
    let Some(f) = exact_quotient(2 * gi + 5 - 3 * ri - 4 * si - 4 * ti, 12) else {
        return Ok(ExactRational::zero());
    };
    if (2 * si - (2 * gi + 1)).rem_euclid(3) != 0 || (2 * ti - 2 * gi).rem_euclid(3) != 0 {
        return Ok(ExactRational::zero());
    }
    if g == 1 {
        return Ok(if (r, s, t) == (1, 0, 1) { ExactRational::new(1, 6) } else { ExactRational::zero() });
    }
    let fi = f as i64;
    let num = checked_factorial(6 * fi + 2 * ri + 2 * si + 2 * ti - 5, "m6")?;
    let den = checked_factorial(fi, "m6")?
        * checked_factorial(3 * fi + ri + si + ti - 3, "m6")?
        * BigInt::from(factorial(r))
        * BigInt::from(factorial(s))
        * BigInt::from(factorial(t));
    let value = pow_ratio(2, 6, 1) * pow_ratio(36, 12, f) * BigRational::new(num, den);
    Ok(ExactRational(value))
}

/// Nonzero stratum masses keyed by their parameters.
pub type Strata<K> = Vec<(K, ExactRational)>;

/// Admissible `r` with nonzero `m₂ᵍ(r)`.
pub fn m2_strata(g: usize) -> Result<Strata<usize>, CountError> {
    let mut out = Vec::new();
    for r in 0..=2 * g + 1 {
        let v = m2(g, r)?;
        if !v.is_zero() {
            out.push((r, v));
        }
    }
    Ok(out)
}

/// Admissible `(s, t)` with nonzero `m₃ᵍ(s, t)`.
pub fn m3_strata(g: usize) -> Result<Strata<(usize, usize)>, CountError> {
    let mut out = Vec::new();
    for s in 0..=g + 1 {
        for t in 0..=g + 1 - s {
            let v = m3(g, s, t)?;
            if !v.is_zero() {
                out.push(((s, t), v));
            }
        }
    }
    Ok(out)
}

/// Admissible formula parameters `(r, s, t)` with nonzero `m₆ᵍ`.
pub fn m6_strata(g: usize) -> Result<Strata<(usize, usize, usize)>, CountError> {
    let bound = 2 * g + 5;
    let mut out = Vec::new();
    for r in 0..=bound / 3 {
        for s in 0..=(bound - 3 * r) / 4 {
            for t in 0..=(bound - 3 * r - 4 * s) / 4 {
                let v = m6(g, r, s, t)?;
                if !v.is_zero() {
                    out.push(((r, s, t), v));
                }
            }
        }
    }
    Ok(out)
}

/// Stratum totals `(m₂ᵍ, m₃ᵍ, m₆ᵍ)`.
pub fn totals(g: usize) -> Result<(ExactRational, ExactRational, ExactRational), CountError> {
    check_genus(g)?;
    let m2t = m2_strata(g)?.into_iter().map(|(_, v)| v).sum();
    let m3t = m3_strata(g)?.into_iter().map(|(_, v)| v).sum();
    let m6t = m6_strata(g)?.into_iter().map(|(_, v)| v).sum();
    Ok((m2t, m3t, m6t))
}

/// Masses, surface counts `M_d` (automorphism of order `d`) and exact-order
/// counts `N_d` (automorphism group of order exactly `d`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub genus: usize,
    pub m1: ExactRational,
    pub m2: ExactRational,
    pub m3: ExactRational,
    pub m6: ExactRational,
    /// `M₁, M₂, M₃, M₆`.
    pub at_least: [BigInt; 4],
    /// `N₁, N₂, N₃, N₆`.
    pub exactly: [BigInt; 4],
    /// `(12g - 6) m_d` for `d = 1, 2, 3, 6`.
    pub pointed: [BigInt; 4],
}

impl CountTable {
    /// `M₁ᵍ`, the number of classes.
    pub fn classes(&self) -> &BigInt {
        &self.at_least[0]
    }
}

fn integral(g: usize, quantity: &'static str, value: ExactRational) -> Result<BigInt, CountError> {
    match value.to_integer() {
        Some(v) if !v.is_negative() => Ok(v),
        _ => Err(CountError::IntegralityViolation { genus: g, quantity, value: value.to_string() }),
    }
}

pub fn count_table(g: usize) -> Result<CountTable, CountError> {
    check_genus(g)?;
    let m1v = m1(g)?;
    let (m2v, m3v, m6v) = totals(g)?;
    let big1 = integral(g, "M1", m1v.clone() + &m2v + m3v.clone() * 2 + m6v.clone() * 2)?;
    let big2 = integral(g, "M2", m2v.clone() * 2 + m6v.clone() * 4)?;
    let big3 = integral(g, "M3", m3v.clone() * 3 + m6v.clone() * 3)?;
    let big6 = integral(g, "M6", m6v.clone() * 6)?;
    let as_rational = |v: &BigInt| ExactRational::from_integer(v.clone());
    let n6 = integral(g, "N6", as_rational(&big6))?;
    let n3 = integral(g, "N3", as_rational(&big3) - as_rational(&big6))?;
    let n2 = integral(g, "N2", as_rational(&big2) - as_rational(&big6))?;
    let n1 = integral(g, "N1", as_rational(&big1) - as_rational(&big2) - as_rational(&big3) + as_rational(&big6))?;
    let sides = 12 * g as i64 - 6;
    let pointed = [
        integral(g, "pointed m1", m1v.clone() * sides)?,
        integral(g, "pointed m2", m2v.clone() * sides)?,
        integral(g, "pointed m3", m3v.clone() * sides)?,
        integral(g, "pointed m6", m6v.clone() * sides)?,
    ];
    Ok(CountTable {
        genus: g,
        m1: m1v,
        m2: m2v,
        m3: m3v,
        m6: m6v,
        at_least: [big1, big2, big3, big6],
        exactly: [n1, n2, n3, n6],
        pointed,
    })
}

/// One row of the surface-count table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub genus: usize,
    pub count: BigInt,
    /// Set for genus 3, where the correspondence with surfaces is unsettled.
    pub note: Option<&'static str>,
}

pub const GENUS_THREE_NOTE: &str = "bijection open";

/// Rows `g = 1, 2, 4, ..., max_genus`, plus genus 3 when requested.
pub fn surface_table(max_genus: usize, include_genus_3: bool) -> Result<Vec<TableRow>, CountError> {
    check_genus(max_genus)?;
    let mut rows = Vec::new();
    for g in 1..=max_genus {
        if g == 3 && !include_genus_3 {
            continue;
        }
        let table = count_table(g)?;
        rows.push(TableRow {
            genus: g,
            count: table.at_least[0].clone(),
            note: (g == 3).then_some(GENUS_THREE_NOTE),
        });
    }
    Ok(rows)
}

/// Aligned two-column text, one row per line.
pub fn format_table_text(rows: &[TableRow]) -> String {
    let width = rows.iter().map(|r| r.genus.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for row in rows {
        out.push_str(&format!("{:<width$}  {}", row.genus, row.count));
        if let Some(note) = row.note {
            out.push_str(&format!("  ({note})"));
        }
        out.push('\n');
    }
    out
}

pub fn format_table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("genus,count,note\n");
    for row in rows {
        out.push_str(&format!("{},{},{}\n", row.genus, row.count, row.note.unwrap_or("")));
    }
    out
}
