//! Parameter axes and scan grids.

use std::fmt;
use std::str::FromStr;

use crate::error::CliError;

/// One parameter axis: either a fixed value or an inclusive `min:max:step`
/// range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    Fixed(f64),
    Range { min: f64, max: f64, step: f64 },
}

impl Axis {
    pub fn count(&self) -> usize {
        match *self {
            Axis::Fixed(_) => 1,
            Axis::Range { min, max, step } => ((max - min) / step + 1e-9).floor() as usize + 1,
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        match *self {
            Axis::Fixed(v) => v,
            Axis::Range { min, step, .. } => min + i as f64 * step,
        }
    }

    pub fn fixed(&self) -> Option<f64> {
        match *self {
            Axis::Fixed(v) => Some(v),
            Axis::Range { .. } => None,
        }
    }
}

fn parse_number(s: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Invalid(format!("'{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::Invalid(format!("'{s}' is not finite")));
    }
    Ok(v)
}

impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(Axis::Fixed(parse_number(v)?)),
            [min, max, step] => {
                let (min, max, step) =
                    (parse_number(min)?, parse_number(max)?, parse_number(step)?);
                if step <= 0.0 {
                    return Err(CliError::Invalid(format!(
                        "axis '{s}': step must be positive"
                    )));
                }
                if min > max {
                    return Err(CliError::Invalid(format!("axis '{s}': min exceeds max")));
                }
                if (max - min) / step >= u32::MAX as f64 {
                    return Err(CliError::Invalid(format!("axis '{s}': too many points")));
                }
                Ok(Axis::Range { min, max, step })
            }
            _ => Err(CliError::Invalid(format!(
                "axis '{s}' must be a number or min:max:step"
            ))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Fixed(v) => write!(f, "{v}"),
            Axis::Range { min, max, step } => write!(f, "{min}:{max}:{step}"),
        }
    }
}

/// Cartesian grid over `(w, alpha, beta)`, enumerated with `w` outermost and
/// `beta` innermost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    pub w: Axis,
    pub alpha: Axis,
    pub beta: Axis,
}

impl ScanGrid {
    /// Total point count, or `None` on overflow.
    pub fn point_count(&self) -> Option<usize> {
        self.w
            .count()
            .checked_mul(self.alpha.count())?
            .checked_mul(self.beta.count())
    }

    pub fn point(&self, index: usize) -> (f64, f64, f64) {
        let nb = self.beta.count();
        let na = self.alpha.count();
        let (iw, rest) = (index / (na * nb), index % (na * nb));
        (
            self.w.value(iw),
            self.alpha.value(rest / nb),
            self.beta.value(rest % nb),
        )
    }
}
