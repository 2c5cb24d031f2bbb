//! Second, independently written implementation of every question's
//! semantics, used to cross-check emitted answers.
//!
//! It shares no code with the question generator: medians come from ranks,
//! areas from rectangle-plus-triangle pieces, smoothness from
//! cross-multiplied slope differences and crossings from segment orientation
//! tests.

use crate::color::ColorId;
use crate::qa::metrics::SEPARATION;
use crate::qa::Answer;
use crate::synth::{FigureSpec, FigureType};

fn distinct(values: &[f64]) -> bool {
    for i in 0..values.len() {
        for j in 0..i {
            let scale = values[i].abs().max(values[j].abs());
            if (values[i] - values[j]).abs() <= SEPARATION * scale {
                return false;
            }
        }
    }
    true
}

/// Number of values strictly below `values[i]`.
fn rank(values: &[f64], i: usize) -> usize {
    values.iter().filter(|&&v| v < values[i]).count()
}

fn is_smallest(values: &[f64], i: usize) -> bool {
    rank(values, i) == 0
}

fn is_largest(values: &[f64], i: usize) -> bool {
    rank(values, i) == values.len() - 1
}

fn area(x: &[f64], y: &[f64]) -> f64 {
    let mut total = 0.0;
    for i in 1..x.len() {
        let dx = x[i] - x[i - 1];
        let low = y[i].min(y[i - 1]);
        total += dx * low + dx * (y[i] - y[i - 1]).abs() * 0.5;
    }
    total
}

/// Collinear points leave rounding residue; anything within a billionth of
/// the total slope magnitude counts as perfectly straight.
fn bumpiness(x: &[f64], y: &[f64]) -> f64 {
    let mut total = 0.0;
    let mut steepness = (y[1] - y[0]).abs() / (x[1] - x[0]);
    for i in 1..x.len() - 1 {
        let (dx0, dx1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
        let (dy0, dy1) = (y[i] - y[i - 1], y[i + 1] - y[i]);
        total += (dy1 * dx0 - dy0 * dx1).abs() / (dx0 * dx1);
        steepness += dy1.abs() / dx1;
    }
    if total <= 1e-9 * steepness {
        0.0
    } else {
        total
    }
}

fn orientation(p: (f64, f64), q: (f64, f64), r: (f64, f64)) -> i8 {
    let v = (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

fn within(p: (f64, f64), q: (f64, f64), r: (f64, f64)) -> bool {
    r.0 >= p.0.min(q.0) && r.0 <= p.0.max(q.0) && r.1 >= p.1.min(q.1) && r.1 <= p.1.max(q.1)
}

/// Closed-segment intersection including touching and collinear overlap.
pub fn segments_meet(a0: (f64, f64), a1: (f64, f64), b0: (f64, f64), b1: (f64, f64)) -> bool {
    let o1 = orientation(a0, a1, b0);
    let o2 = orientation(a0, a1, b1);
    let o3 = orientation(b0, b1, a0);
    let o4 = orientation(b0, b1, a1);
    if o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0 {
        return true;
    }
    (o1 == 0 && within(a0, a1, b0))
        || (o2 == 0 && within(a0, a1, b1))
        || (o3 == 0 && within(b0, b1, a0))
        || (o4 == 0 && within(b0, b1, a1))
}

/// Whether two polylines on the same x-grid share a point.
pub fn polylines_meet(x: &[f64], a: &[f64], b: &[f64]) -> bool {
    if x.len() == 1 {
        return a[0] == b[0];
    }
    (1..x.len()).any(|i| {
        segments_meet((x[i - 1], a[i - 1]), (x[i], a[i]), (x[i - 1], b[i - 1]), (x[i], b[i]))
    })
}

/// Answer derived from source data, or `None` when the question does not
/// apply to this figure or names colors it lacks.
pub fn oracle_answer(spec: &FigureSpec, template_id: u8, x: ColorId, y: Option<ColorId>) -> Option<Answer> {
    let find = |c: ColorId| spec.series.iter().position(|s| s.color_id == c);
    let xi = find(x)?;
    let pairwise = matches!(template_id, 5 | 6 | 13 | 14 | 15);
    let yi = match (pairwise, y) {
        (true, Some(c)) => Some(find(c)?).filter(|&j| j != xi),
        (false, None) => None,
        _ => return None,
    };
    if pairwise && yi.is_none() {
        return None;
    }
    let n = spec.series.len();
    let categorical = matches!(
        spec.figure_type,
        FigureType::VerticalBar | FigureType::HorizontalBar | FigureType::Pie
    );
    let yes = match template_id {
        1..=6 if categorical => {
            let v: Vec<f64> = spec.series.iter().map(|s| s.y_values[0]).collect();
            match template_id {
                1 => is_smallest(&v, xi),
                2 => is_largest(&v, xi),
                3 | 4 => {
                    if n < 3 || !distinct(&v) {
                        return None;
                    }
                    let r = rank(&v, xi);
                    let (low, high) = if n % 2 == 1 { (n / 2, n / 2) } else { (n / 2 - 1, n / 2) };
                    r == if template_id == 3 { low } else { high }
                }
                5 => v[xi] < v[yi?],
                _ => v[xi] > v[yi?],
            }
        }
        7..=15 if !categorical => {
            let grid = &spec.series[0].x_values;
            let ys = |i: usize| &spec.series[i].y_values;
            match template_id {
                7 | 8 => {
                    let a: Vec<f64> = (0..n).map(|i| area(grid, ys(i))).collect();
                    if template_id == 7 { is_smallest(&a, xi) } else { is_largest(&a, xi) }
                }
                9 | 10 => {
                    let r: Vec<f64> = (0..n).map(|i| bumpiness(grid, ys(i))).collect();
                    if !distinct(&r) {
                        return None;
                    }
                    if template_id == 9 { is_smallest(&r, xi) } else { is_largest(&r, xi) }
                }
                11 => {
                    let lows: Vec<f64> = (0..n).map(|i| ys(i).iter().cloned().fold(f64::MAX, f64::min)).collect();
                    is_smallest(&lows, xi)
                }
                12 => {
                    let highs: Vec<f64> = (0..n).map(|i| ys(i).iter().cloned().fold(f64::MIN, f64::max)).collect();
                    is_largest(&highs, xi)
                }
                13 => ys(xi).iter().zip(ys(yi?)).all(|(a, b)| a < b),
                14 => ys(xi).iter().zip(ys(yi?)).all(|(a, b)| a > b),
                _ => polylines_meet(grid, ys(xi), ys(yi?)),
            }
        }
        _ => return None,
    };
    Some(if yes { Answer::Yes } else { Answer::No })
}
