//! Run configuration shared by the subcommands: series order, tolerance,
//! τ samples, output format, and the RNG seed for randomized spot checks.

use std::fmt;

use framed_voa::Complex64;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Check(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Check(m) => write!(f, "{m}"),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub order: i64,
    pub tol: f64,
    pub taus: Vec<Complex64>,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.order < 2 {
            return Err(usage(format!("order must be at least 2, got {}", self.order)));
        }
        if !(self.tol > 0.0) {
            return Err(usage(format!("tolerance must be positive, got {}", self.tol)));
        }
        for tau in &self.taus {
            if !(tau.im > 0.0) {
                return Err(usage(format!(
                    "tau sample {} is not in the upper half-plane",
                    render_tau(*tau)
                )));
            }
        }
        Ok(())
    }
}

/// Parses "i", "0.8i", "1.3i", "0.5+2i", "-1+0.25i".
pub fn parse_tau(s: &str) -> Result<Complex64, CliError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let body = t
        .strip_suffix('i')
        .ok_or_else(|| usage(format!("tau sample '{s}' must end in 'i'")))?;
    // Split an optional real part off at the last sign that is not an
    // exponent sign and not the leading sign.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(i, c)| {
            (*c == '+' || *c == '-')
                && !matches!(body.as_bytes().get(i - 1), Some(b'e') | Some(b'E'))
        })
        .map(|(i, _)| i)
        .last();
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part
            .parse::<f64>()
            .map_err(|_| usage(format!("cannot parse real part of tau sample '{s}'")))?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => im_part
            .parse::<f64>()
            .map_err(|_| usage(format!("cannot parse imaginary part of tau sample '{s}'")))?,
    };
    Ok(Complex64::new(re, im))
}

pub fn render_tau(tau: Complex64) -> String {
    if tau.re == 0.0 {
        format!("{}i", tau.im)
    } else if tau.im < 0.0 {
        format!("{}{}i", tau.re, tau.im)
    } else {
        format!("{}+{}i", tau.re, tau.im)
    }
}

pub fn default_taus() -> Vec<Complex64> {
    vec![
        Complex64::new(0.0, 0.8),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, 1.3),
    ]
}

/// Deterministic xorshift64* stream; hand-rolled so identical seeds give
/// identical reports across releases of any external RNG crate.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        // A zero state would be a fixed point; fold the seed into a nonzero
        // starting point.
        let state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(0xD1B54A32D192ED03);
        Rng(if state == 0 { 0x9E3779B97F4A7C15 } else { state })
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform draw from 0..bound (bound > 0).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            items.swap(i, self.below(i + 1));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_forms() {
        assert_eq!(parse_tau("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_tau("0.8i").unwrap(), Complex64::new(0.0, 0.8));
        assert_eq!(parse_tau("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_tau("-0.5+1.25i").unwrap(), Complex64::new(-0.5, 1.25));
        assert_eq!(parse_tau("2e-1i").unwrap(), Complex64::new(0.0, 0.2));
        assert!(parse_tau("1.3").is_err());
    }

    #[test]
    fn rng_is_deterministic() {
        let mut a = Rng::new(7);
        let mut b = Rng::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
