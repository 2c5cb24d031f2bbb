use rand::Rng;
use serde::{Deserialize, Serialize};

use super::metrics::{self, CurveOrder, ElementSummary};
use super::templates::{QuestionTemplate, TEMPLATES};
use crate::color::{ColorId, ColorTable};
use crate::synth::FigureSpec;
use crate::{seed, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
}

impl From<bool> for Answer {
    fn from(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QaPair {
    pub figure_id: u64,
    pub template_id: u8,
    pub question: String,
    pub color_x: ColorId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color_y: Option<ColorId>,
    pub answer: Answer,
}

impl QaPair {
    /// Canonical corpus order.
    pub fn sort_key(&self) -> (u64, u8, Answer, ColorId, Option<ColorId>) {
        (self.figure_id, self.template_id, self.answer, self.color_x, self.color_y)
    }
}

/// Smoothness questions need pairwise-distinct roughness, which linear curves never have.
pub fn roughness_questions_apply(spec: &FigureSpec) -> bool {
    if !spec.figure_type.is_line() {
        return false;
    }
    let values: Option<Vec<f64>> = spec
        .series
        .iter()
        .map(|s| metrics::roughness(&s.x_values, &s.y_values).ok())
        .collect();
    values.is_some_and(|v| metrics::pairwise_separated(&v))
}

struct Facts<'a> {
    spec: &'a FigureSpec,
    summaries: Vec<ElementSummary>,
}

fn argmin(values: impl Iterator<Item = f64>) -> usize {
    values
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
        .expect("at least one element")
}

fn argmax(values: impl Iterator<Item = f64>) -> usize {
    values
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
        .expect("at least one element")
}

impl<'a> Facts<'a> {
    fn new(spec: &'a FigureSpec) -> Self {
        Facts {
            spec,
            summaries: spec.series.iter().map(metrics::summarize).collect(),
        }
    }

    fn n(&self) -> usize {
        self.summaries.len()
    }

    fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.summaries.iter().map(|s| s.value)
    }

    fn applicable(&self, template: &QuestionTemplate) -> bool {
        template.applies(self.spec.figure_type)
            && match template.id {
                3 | 4 => self.n() >= 3,
                9 | 10 => roughness_questions_apply(self.spec),
                _ => true,
            }
    }

    /// The answer for subjects `x` (and `y` for pairwise templates), by series index.
    fn answer(&self, template_id: u8, x: usize, y: Option<usize>) -> Result<bool> {
        let s = &self.summaries;
        let pair = || y.ok_or_else(|| Error::InvalidInput(format!("template {template_id} needs Y")));
        let series = &self.spec.series;
        Ok(match template_id {
            1 => argmin(self.values()) == x,
            2 => argmax(self.values()) == x,
            3 | 4 => {
                let values: Vec<f64> = self.values().collect();
                let (low, high) = metrics::low_high_median(&values)?;
                x == if template_id == 3 { low } else { high }
            }
            5 => s[x].value < s[pair()?].value,
            6 => s[x].value > s[pair()?].value,
            7 => argmin(s.iter().map(|e| e.auc.unwrap_or(f64::NAN))) == x,
            8 => argmax(s.iter().map(|e| e.auc.unwrap_or(f64::NAN))) == x,
            9 => argmin(s.iter().map(|e| e.roughness.unwrap_or(f64::NAN))) == x,
            10 => argmax(s.iter().map(|e| e.roughness.unwrap_or(f64::NAN))) == x,
            11 => argmin(s.iter().map(|e| e.min_y)) == x,
            12 => argmax(s.iter().map(|e| e.max_y)) == x,
            13 => metrics::curve_compare(&series[x], &series[pair()?])? == CurveOrder::Less,
            14 => metrics::curve_compare(&series[x], &series[pair()?])? == CurveOrder::Greater,
            15 => metrics::curves_intersect(&series[x], &series[pair()?])?,
            other => return Err(Error::InvalidInput(format!("unknown template {other}"))),
        })
    }
}

/// Answers template `template_id` about the named colors of `spec`.
pub fn answer(spec: &FigureSpec, template_id: u8, x: ColorId, y: Option<ColorId>) -> Result<Answer> {
    let index = |c: ColorId| {
        spec.series
            .iter()
            .position(|s| s.color_id == c)
            .ok_or_else(|| Error::InvalidInput(format!("color {c} not in figure {}", spec.figure_id)))
    };
    let xi = index(x)?;
    let yi = y.map(index).transpose()?;
    Ok(Facts::new(spec).answer(template_id, xi, yi)?.into())
}

/// One yes and one no instance per applicable template, when each exists.
pub fn generate_qa(spec: &FigureSpec, table: &ColorTable) -> Result<Vec<QaPair>> {
    let facts = Facts::new(spec);
    let mut rng = seed::rng(seed::hash64(spec.seed, seed::tag::QA_SUBJECTS));
    let mut out = Vec::new();
    for template in TEMPLATES.iter().filter(|t| facts.applicable(t)) {
        let subjects: Vec<(usize, Option<usize>)> = if template.pairwise {
            (0..facts.n())
                .flat_map(|x| (0..facts.n()).filter(move |&y| y != x).map(move |y| (x, Some(y))))
                .collect()
        } else {
            (0..facts.n()).map(|x| (x, None)).collect()
        };
        let mut yes = Vec::new();
        let mut no = Vec::new();
        for (x, y) in subjects {
            if facts.answer(template.id, x, y)? {
                yes.push((x, y));
            } else {
                no.push((x, y));
            }
        }
        for (pool, answer) in [(yes, Answer::Yes), (no, Answer::No)] {
            if pool.is_empty() {
                continue;
            }
            let (x, y) = pool[rng.gen_range(0..pool.len())];
            let cx = spec.series[x].color_id;
            let cy = y.map(|y| spec.series[y].color_id);
            out.push(QaPair {
                figure_id: spec.figure_id,
                template_id: template.id,
                question: template.render(table.name(cx), cy.map(|c| table.name(c))),
                color_x: cx,
                color_y: cy,
                answer,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::default_color_table;
    use crate::synth::{FigureType, Series, ShapeFunction, StyleParams};

    fn spec(figure_type: FigureType, ys: &[&[f64]]) -> FigureSpec {
        let n = ys[0].len();
        FigureSpec {
            figure_id: 3,
            figure_type,
            series: ys
                .iter()
                .enumerate()
                .map(|(i, y)| Series {
                    color_id: ColorId(i as u16 * 2),
                    x_values: if n == 1 { vec![i as f64] } else { (0..n).map(|v| v as f64).collect() },
                    y_values: y.to_vec(),
                })
                .collect(),
            shape: if figure_type.is_line() { ShapeFunction::Quadratic } else { ShapeFunction::UniformRandom },
            magnitude: 1.0,
            style: StyleParams {
                width_to_height: 1.5,
                font_size_index: 0,
                gridlines: false,
                legend_inside: false,
                legend_right: true,
                line_style_ids: if figure_type.is_line() { vec![0; ys.len()] } else { vec![] },
            },
            seed: 77,
        }
    }

    #[test]
    fn forced_maximum_is_the_yes_subject() {
        let table = default_color_table();
        let s = spec(FigureType::VerticalBar, &[&[1.0], &[2.0], &[3.0]]);
        let qa = generate_qa(&s, &table).unwrap();
        let yes = qa.iter().find(|q| q.template_id == 2 && q.answer == Answer::Yes).unwrap();
        assert_eq!(yes.color_x, ColorId(4));
        // Odd count: both medians point at the value-2 bar.
        for t in [3, 4] {
            let yes = qa.iter().find(|q| q.template_id == t && q.answer == Answer::Yes).unwrap();
            assert_eq!(yes.color_x, ColorId(2));
        }
    }

    #[test]
    fn two_slice_pie_less_than() {
        let table = default_color_table();
        let s = spec(FigureType::Pie, &[&[0.7], &[0.3]]);
        let qa = generate_qa(&s, &table).unwrap();
        let yes = qa.iter().find(|q| q.template_id == 5 && q.answer == Answer::Yes).unwrap();
        let c1 = table.name(ColorId(0));
        let c2 = table.name(ColorId(2));
        assert_eq!(yes.question, format!("Is {c2} less than {c1}?"));
        // Median templates need three elements.
        assert!(qa.iter().all(|q| q.template_id != 3 && q.template_id != 4));
        assert!(qa.iter().all(|q| q.template_id <= 6));
    }

    #[test]
    fn one_yes_and_one_no_per_template() {
        let table = default_color_table();
        let s = spec(FigureType::HorizontalBar, &[&[4.0], &[1.0], &[3.0], &[2.0]]);
        let qa = generate_qa(&s, &table).unwrap();
        for t in 1..=6u8 {
            let yes = qa.iter().filter(|q| q.template_id == t && q.answer == Answer::Yes).count();
            let no = qa.iter().filter(|q| q.template_id == t && q.answer == Answer::No).count();
            assert_eq!((yes, no), (1, 1), "template {t}");
        }
        let low = qa.iter().find(|q| q.template_id == 3 && q.answer == Answer::Yes).unwrap();
        let high = qa.iter().find(|q| q.template_id == 4 && q.answer == Answer::Yes).unwrap();
        assert_eq!(low.color_x, ColorId(6));
        assert_eq!(high.color_x, ColorId(4));
    }

    #[test]
    fn line_templates_only_realizable_sides() {
        let table = default_color_table();
        // Curves cross, so no pointwise "less" or "greater" instance exists.
        let s = spec(FigureType::Line, &[&[1.0, 5.0, 2.0, 4.0, 3.0], &[2.0, 3.0, 7.0, 1.0, 2.5]]);
        let qa = generate_qa(&s, &table).unwrap();
        assert!(qa.iter().all(|q| q.template_id >= 7));
        for t in [13, 14] {
            assert!(qa.iter().all(|q| !(q.template_id == t && q.answer == Answer::Yes)));
            assert!(qa.iter().any(|q| q.template_id == t && q.answer == Answer::No));
        }
        assert!(qa.iter().any(|q| q.template_id == 15 && q.answer == Answer::Yes));
        assert!(qa.iter().all(|q| !(q.template_id == 15 && q.answer == Answer::No)));
        for q in &qa {
            assert_eq!(answer(&s, q.template_id, q.color_x, q.color_y).unwrap(), q.answer);
            assert_eq!(q.color_y.is_some(), matches!(q.template_id, 13..=15));
        }
    }

    #[test]
    fn linear_curves_skip_smoothness_questions() {
        let table = default_color_table();
        let mut s = spec(FigureType::DotLine, &[&[1.0, 2.0, 3.0, 4.0, 5.0], &[5.0, 4.5, 4.0, 3.5, 3.0]]);
        s.shape = ShapeFunction::Linear;
        let qa = generate_qa(&s, &table).unwrap();
        assert!(qa.iter().all(|q| q.template_id != 9 && q.template_id != 10));
        assert!(qa.iter().any(|q| q.template_id == 7));
    }

    #[test]
    fn generation_is_deterministic() {
        let table = default_color_table();
        let s = spec(FigureType::Pie, &[&[0.1], &[0.2], &[0.3], &[0.4]]);
        assert_eq!(generate_qa(&s, &table).unwrap(), generate_qa(&s, &table).unwrap());
    }
}
