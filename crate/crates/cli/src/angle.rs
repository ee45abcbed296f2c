//! Angle arguments.
//!
//! Multiples of pi are held as exact rationals until the single conversion to
//! radians, so `1pi`, `1/2pi` and `0.5pi` land on the same float as
//! `std::f64::consts::PI` and its exact halves.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use num_rational::Ratio;

/// Largest denominator accepted for a multiple of pi.
pub const MAX_DENOMINATOR: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum AngleUnit {
    /// Bare numbers are radians; append `pi` for multiples of pi.
    #[default]
    Rad,
    /// Bare numbers are multiples of pi.
    Pi,
}

/// A parsed angle argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    /// `p/q * pi`, reduced.
    PiMultiple(Ratio<i64>),
    Radians(f64),
}

impl Angle {
    pub fn parse(s: &str, unit: AngleUnit) -> Result<Self, String> {
        let trimmed = s.trim();
        let mut lower = trimmed.to_ascii_lowercase().replace('π', "pi");
        // `2pi/3` reads as `2/3pi`.
        if let Some((coef, denom)) = lower.split_once("pi/") {
            let coef = coef.trim().trim_end_matches('*').trim();
            let coef = match coef {
                "" => "1",
                "-" => "-1",
                c => c,
            };
            lower = format!("{coef}/{}pi", denom.trim());
        }
        let (body, is_pi) = match lower.strip_suffix("pi") {
            Some(rest) => (rest.trim().trim_end_matches('*').trim(), true),
            None => (lower.as_str(), unit == AngleUnit::Pi),
        };
        if is_pi {
            let ratio = if body.is_empty() {
                Ratio::from_integer(1)
            } else if body == "-" {
                Ratio::from_integer(-1)
            } else {
                parse_ratio(body)
                    .ok_or_else(|| format!("cannot read `{trimmed}` as a multiple of pi"))?
            };
            if *ratio.denom() > MAX_DENOMINATOR {
                return Err(format!(
                    "`{trimmed}` needs a denominator above {MAX_DENOMINATOR}; give it in radians instead"
                ));
            }
            Ok(Angle::PiMultiple(ratio))
        } else {
            f64::from_str(body)
                .ok()
                .filter(|v| v.is_finite())
                .map(Angle::Radians)
                .ok_or_else(|| format!("cannot read `{trimmed}` as an angle"))
        }
    }

    pub fn radians(self) -> f64 {
        match self {
            Angle::PiMultiple(r) => {
                let (p, q) = (*r.numer(), *r.denom());
                if q == 1 {
                    PI * p as f64
                } else {
                    PI * p as f64 / q as f64
                }
            }
            Angle::Radians(x) => x,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiMultiple(r) if *r.denom() == 1 => write!(f, "{}pi", r.numer()),
            Angle::PiMultiple(r) => write!(f, "{}/{}pi", r.numer(), r.denom()),
            Angle::Radians(x) => write!(f, "{x:?}"),
        }
    }
}

/// `p/q`, an integer, or a finite decimal, read exactly.
fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_decimal(p.trim())?;
        let q = parse_decimal(q.trim())?;
        if *q.numer() == 0 {
            return None;
        }
        let numer = p.numer().checked_mul(*q.denom())?;
        let denom = p.denom().checked_mul(*q.numer())?;
        return Some(Ratio::new(numer, denom));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<Ratio<i64>> {
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut numer: i64 = 0;
    for c in int.chars().chain(frac.chars()) {
        numer = numer
            .checked_mul(10)?
            .checked_add(i64::from(c as u8 - b'0'))?;
    }
    let denom = 10i64.checked_pow(u32::try_from(frac.len()).ok()?)?;
    let numer = if negative { -numer } else { numer };
    Some(Ratio::new(numer, denom))
}
