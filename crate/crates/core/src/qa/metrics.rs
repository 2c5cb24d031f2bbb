//! Scalar properties of plot elements that question answers are derived from.

use serde::{Deserialize, Serialize};

use crate::synth::Series;
use crate::{Error, Result};

/// Relative separation two derived values need to count as distinct.
pub const SEPARATION: f64 = 1e-6;

fn check_grid(x: &[f64], y: &[f64], min_len: usize, what: &str) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "{what}: x has {} points, y has {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < min_len {
        return Err(Error::InvalidInput(format!(
            "{what} needs at least {min_len} points, got {}",
            x.len()
        )));
    }
    if x.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidInput(format!(
            "{what}: x must be strictly increasing"
        )));
    }
    Ok(())
}

/// Roughness at or below this fraction of the curve's summed absolute slope
/// is floating-point residue (collinear points) and reads as exactly zero.
pub const ROUGHNESS_NOISE: f64 = 1e-9;

/// Sum of absolute differences between consecutive finite-difference slopes.
pub fn roughness(x: &[f64], y: &[f64]) -> Result<f64> {
    check_grid(x, y, 3, "roughness")?;
    let slopes: Vec<f64> = x
        .windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| (ys[1] - ys[0]) / (xs[1] - xs[0]))
        .collect();
    let total: f64 = slopes.windows(2).map(|s| (s[1] - s[0]).abs()).sum();
    let scale: f64 = slopes.iter().map(|s| s.abs()).sum();
    Ok(if total <= ROUGHNESS_NOISE * scale { 0.0 } else { total })
}

/// Trapezoidal integral over the x-grid.
pub fn area_under_curve(x: &[f64], y: &[f64]) -> Result<f64> {
    check_grid(x, y, 2, "area under curve")?;
    Ok(x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| (xs[1] - xs[0]) * (ys[0] + ys[1]) / 2.0)
        .sum())
}

/// True when `a` and `b` differ by more than [`SEPARATION`] relative to the larger magnitude.
pub fn separated(a: f64, b: f64) -> bool {
    (a - b).abs() > SEPARATION * a.abs().max(b.abs())
}

/// True when every pair of values is [`separated`].
pub fn pairwise_separated(values: &[f64]) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(i, &a)| values[i + 1..].iter().all(|&b| separated(a, b)))
}

/// Indices `(low, high)` of the low and high median in the original order.
///
/// Odd lengths return the middle element twice.
pub fn low_high_median(values: &[f64]) -> Result<(usize, usize)> {
    if values.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "median questions need at least 3 elements, got {}",
            values.len()
        )));
    }
    if !pairwise_separated(values) {
        return Err(Error::InvalidInput("median of tied values is ambiguous".into()));
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let n = values.len();
    if n % 2 == 1 {
        Ok((order[n / 2], order[n / 2]))
    } else {
        Ok((order[n / 2 - 1], order[n / 2]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveOrder {
    Less,
    Greater,
    Neither,
}

fn same_grid(a: &Series, b: &Series) -> Result<()> {
    if a.x_values != b.x_values || a.y_values.len() != a.x_values.len() || b.y_values.len() != b.x_values.len() {
        return Err(Error::InvalidInput("curves do not share one x-grid".into()));
    }
    Ok(())
}

/// Pointwise strict comparison over the shared grid.
pub fn curve_compare(a: &Series, b: &Series) -> Result<CurveOrder> {
    same_grid(a, b)?;
    let pairs = || a.y_values.iter().zip(&b.y_values);
    Ok(if pairs().all(|(p, q)| p < q) {
        CurveOrder::Less
    } else if pairs().all(|(p, q)| p > q) {
        CurveOrder::Greater
    } else {
        CurveOrder::Neither
    })
}

/// Whether the piecewise-linear interpolants touch or cross.
pub fn curves_intersect(a: &Series, b: &Series) -> Result<bool> {
    same_grid(a, b)?;
    let diff: Vec<f64> = a
        .y_values
        .iter()
        .zip(&b.y_values)
        .map(|(p, q)| p - q)
        .collect();
    if diff.len() == 1 {
        return Ok(diff[0] == 0.0);
    }
    Ok(diff.windows(2).any(|d| d[0] * d[1] <= 0.0))
}

/// Derived per-element scalars.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementSummary {
    /// Bar height or pie fraction; first y-value for curves.
    pub value: f64,
    pub auc: Option<f64>,
    pub roughness: Option<f64>,
    pub min_y: f64,
    pub max_y: f64,
}

pub fn summarize(series: &Series) -> ElementSummary {
    let x = &series.x_values;
    let y = &series.y_values;
    ElementSummary {
        value: y.first().copied().unwrap_or(f64::NAN),
        auc: area_under_curve(x, y).ok(),
        roughness: roughness(x, y).ok(),
        min_y: y.iter().copied().fold(f64::INFINITY, f64::min),
        max_y: y.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::ColorId;
    use proptest::prelude::*;

    fn curve(x: &[f64], y: &[f64]) -> Series {
        Series {
            color_id: ColorId(0),
            x_values: x.to_vec(),
            y_values: y.to_vec(),
        }
    }

    #[test]
    fn roughness_examples() {
        assert_eq!(roughness(&[0., 1., 2., 3.], &[0., 2., 4., 6.]).unwrap(), 0.0);
        // |(0-1)/1 - (1-0)/1| = 2
        assert_eq!(roughness(&[0., 1., 2.], &[0., 1., 0.]).unwrap(), 2.0);
        // slopes 2, 0, 4 -> |0-2| + |4-0| = 6
        assert_eq!(roughness(&[0., 1., 2., 3.], &[0., 2., 2., 6.]).unwrap(), 6.0);
    }

    #[test]
    fn roughness_needs_three_points() {
        assert!(roughness(&[0., 1.], &[0., 1.]).is_err());
        assert!(roughness(&[0., 0., 1.], &[0., 1., 2.]).is_err());
        assert!(roughness(&[0., 1., 2.], &[0., 1.]).is_err());
    }

    #[test]
    fn auc_examples() {
        assert_eq!(area_under_curve(&[0., 1., 2.], &[1., 1., 1.]).unwrap(), 2.0);
        assert_eq!(area_under_curve(&[0., 2.], &[0., 2.]).unwrap(), 2.0);
        // trapezoids: 1*(2+0)/2 + 2*(0+4)/2 = 1 + 4
        assert_eq!(area_under_curve(&[0., 1., 3.], &[2., 0., 4.]).unwrap(), 5.0);
        assert!(area_under_curve(&[0.], &[1.]).is_err());
    }

    #[test]
    fn median_examples() {
        assert_eq!(low_high_median(&[3., 1., 2.]).unwrap(), (2, 2));
        // sorted: 1(idx1) 2(idx3) 3(idx2) 4(idx0) -> low = value 2, high = value 3
        assert_eq!(low_high_median(&[4., 1., 3., 2.]).unwrap(), (3, 2));
        assert!(low_high_median(&[1., 2.]).is_err());
        assert!(low_high_median(&[1., 2., 2.]).is_err());
    }

    #[test]
    fn compare_examples() {
        let c = |a: &[f64], b: &[f64]| {
            curve_compare(&curve(&[0., 1.], a), &curve(&[0., 1.], b)).unwrap()
        };
        assert_eq!(c(&[1., 1.], &[2., 3.]), CurveOrder::Less);
        assert_eq!(c(&[2., 3.], &[1., 1.]), CurveOrder::Greater);
        assert_eq!(c(&[1., 3.], &[2., 2.]), CurveOrder::Neither);
        assert_eq!(c(&[1., 2.], &[1., 2.]), CurveOrder::Neither);
        let mismatched = curve_compare(&curve(&[0., 1.], &[0., 0.]), &curve(&[0., 2.], &[0., 0.]));
        assert!(mismatched.is_err());
    }

    #[test]
    fn intersect_examples() {
        let i = |a: &[f64], b: &[f64]| {
            let x: Vec<f64> = (0..a.len()).map(|v| v as f64).collect();
            curves_intersect(&curve(&x, a), &curve(&x, b)).unwrap()
        };
        assert!(i(&[0., 1.], &[1., 0.]));
        assert!(!i(&[0., 1., 2.], &[1., 2., 3.]));
        // touching at the first grid point only
        assert!(i(&[1., 2., 3.], &[1., 3., 4.]));
        assert!(i(&[0., 1., 2.], &[3., 1., 5.]));
    }

    proptest! {
        #[test]
        fn linear_series_have_zero_roughness(
            slope in -100.0f64..100.0,
            intercept in -100.0f64..100.0,
            n in 3usize..30,
        ) {
            let x: Vec<f64> = (0..n).map(|i| i as f64 * 0.5).collect();
            let y: Vec<f64> = x.iter().map(|v| slope * v + intercept).collect();
            prop_assert!(roughness(&x, &y).unwrap() <= 1e-9);
        }

        #[test]
        fn collinear_curves_tie_exactly(
            a in (-1000.0f64..1000.0, -1000.0f64..1000.0),
            b in (-1000.0f64..1000.0, -1000.0f64..1000.0),
            start in 0.0f64..100.0,
            span in 10.0f64..100.0,
            n in 5usize..20,
        ) {
            let x: Vec<f64> = (0..n).map(|i| start + span * i as f64 / (n - 1) as f64).collect();
            let line = |(k, c): (f64, f64)| -> Vec<f64> { x.iter().map(|v| k * v + c).collect() };
            prop_assert_eq!(roughness(&x, &line(a)).unwrap(), 0.0);
            prop_assert_eq!(roughness(&x, &line(b)).unwrap(), 0.0);
        }

        #[test]
        fn roughness_shift_invariant_and_scale_linear(
            y in prop::collection::vec(-50.0f64..50.0, 3..20),
            shift in -1000.0f64..1000.0,
            scale in 0.01f64..100.0,
        ) {
            let x: Vec<f64> = (0..y.len()).map(|i| i as f64).collect();
            let base = roughness(&x, &y).unwrap();
            let shifted: Vec<f64> = y.iter().map(|v| v + shift).collect();
            let scaled: Vec<f64> = y.iter().map(|v| v * scale).collect();
            let tol = 1e-9 * (1.0 + base.abs() + shift.abs()) * y.len() as f64;
            prop_assert!((roughness(&x, &shifted).unwrap() - base).abs() <= tol);
            prop_assert!((roughness(&x, &scaled).unwrap() - scale * base).abs() <= 1e-9 * (1.0 + scale * base));
        }

        #[test]
        fn nonnegative_curves_have_nonnegative_auc(
            y in prop::collection::vec(0.0f64..50.0, 2..20),
        ) {
            let x: Vec<f64> = (0..y.len()).map(|i| i as f64 * 1.5).collect();
            prop_assert!(area_under_curve(&x, &y).unwrap() >= 0.0);
        }

        #[test]
        fn odd_median_indices_coincide(
            values in prop::collection::vec(0.0f64..1000.0, 3..12),
        ) {
            prop_assume!(pairwise_separated(&values));
            let (lo, hi) = low_high_median(&values).unwrap();
            if values.len() % 2 == 1 {
                prop_assert_eq!(lo, hi);
            } else {
                prop_assert!(values[lo] < values[hi]);
            }
        }
    }
}
