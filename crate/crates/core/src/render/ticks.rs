//! 1-2-5 "nice number" axis ticks.

use crate::{Error, Result};

const MANTISSAS: [u32; 3] = [1, 2, 5];

/// Tick spacing as `mantissa * 10^exponent`, kept symbolic so tick values
/// can be formed without accumulated rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NiceStep {
    pub mantissa: u32,
    pub exponent: i32,
}

impl NiceStep {
    pub fn value(self) -> f64 {
        f64::from(self.mantissa) * 10f64.powi(self.exponent)
    }

    /// `k * step`, dividing by a power of ten for negative exponents so
    /// decimal ticks come out as the nearest double (0.3, not 0.30000000000000004).
    fn multiple(self, k: i64) -> f64 {
        let m = k as f64 * f64::from(self.mantissa);
        if self.exponent >= 0 {
            m * 10f64.powi(self.exponent)
        } else {
            m / 10f64.powi(-self.exponent)
        }
    }

    pub fn decimals(self) -> usize {
        if self.exponent < 0 {
            (-self.exponent) as usize
        } else {
            0
        }
    }
}

/// Axis ticks chosen by [`compute_ticks`].
#[derive(Clone, Debug, PartialEq)]
pub struct Ticks {
    pub values: Vec<f64>,
    pub step: NiceStep,
}

impl Ticks {
    pub fn lo(&self) -> f64 {
        self.values[0]
    }

    pub fn hi(&self) -> f64 {
        *self.values.last().expect("at least two ticks")
    }

    pub fn labels(&self) -> Vec<String> {
        self.values.iter().map(|&v| format_tick(v, self.step)).collect()
    }
}

pub fn format_tick(value: f64, step: NiceStep) -> String {
    let s = format!("{:.*}", step.decimals(), value);
    // "-0" and "-0.0" read badly on an axis.
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Smallest 1-2-5 step whose covering tick set has at most `max_ticks` entries.
pub fn compute_ticks(data_min: f64, data_max: f64, max_ticks: usize) -> Result<Ticks> {
    if !data_min.is_finite() || !data_max.is_finite() || data_min > data_max {
        return Err(Error::InvalidInput(format!(
            "tick range [{data_min}, {data_max}] is not a finite interval"
        )));
    }
    if max_ticks < 2 {
        return Err(Error::InvalidInput("at least two ticks are required".into()));
    }
    let (lo, hi) = if data_min == data_max {
        (data_min - 1.0, data_max + 1.0)
    } else {
        (data_min, data_max)
    };
    let span = hi - lo;
    let mut exponent = (span / max_ticks as f64).log10().floor() as i32 - 1;
    loop {
        for mantissa in MANTISSAS {
            let step = NiceStep { mantissa, exponent };
            let v = step.value();
            let first = (lo / v + 1e-9).floor() as i64;
            let last = (hi / v - 1e-9).ceil() as i64;
            let count = (last - first + 1) as usize;
            if (2..=max_ticks).contains(&count) {
                return Ok(Ticks {
                    values: (first..=last).map(|k| step.multiple(k)).collect(),
                    step,
                });
            }
        }
        exponent += 1;
        if exponent > 308 {
            return Err(Error::InvalidInput("no tick layout found".into()));
        }
    }
}
