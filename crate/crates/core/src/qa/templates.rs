use crate::synth::FigureType;

const CATEGORICAL: &[FigureType] = &[
    FigureType::VerticalBar,
    FigureType::HorizontalBar,
    FigureType::Pie,
];
const CONTINUOUS: &[FigureType] = &[FigureType::Line, FigureType::DotLine];

/// One question type. `X` and `Y` in the surface form are color-name slots.
#[derive(Debug, PartialEq, Eq)]
pub struct QuestionTemplate {
    pub id: u8,
    pub surface_form: &'static str,
    pub applies_to: &'static [FigureType],
    /// Whether the question names a second element `Y`.
    pub pairwise: bool,
}

const fn t(
    id: u8,
    surface_form: &'static str,
    applies_to: &'static [FigureType],
    pairwise: bool,
) -> QuestionTemplate {
    QuestionTemplate {
        id,
        surface_form,
        applies_to,
        pairwise,
    }
}

pub static TEMPLATES: [QuestionTemplate; 15] = [
    t(1, "Is X the minimum?", CATEGORICAL, false),
    t(2, "Is X the maximum?", CATEGORICAL, false),
    t(3, "Is X the low median?", CATEGORICAL, false),
    t(4, "Is X the high median?", CATEGORICAL, false),
    t(5, "Is X less than Y?", CATEGORICAL, true),
    t(6, "Is X greater than Y?", CATEGORICAL, true),
    t(7, "Does X have the minimum area under the curve?", CONTINUOUS, false),
    t(8, "Does X have the maximum area under the curve?", CONTINUOUS, false),
    t(9, "Is X the smoothest?", CONTINUOUS, false),
    t(10, "Is X the roughest?", CONTINUOUS, false),
    t(11, "Does X have the lowest value?", CONTINUOUS, false),
    t(12, "Does X have the highest value?", CONTINUOUS, false),
    t(13, "Is X less than Y?", CONTINUOUS, true),
    t(14, "Is X greater than Y?", CONTINUOUS, true),
    t(15, "Does X intersect Y?", CONTINUOUS, true),
];

pub fn template(id: u8) -> Option<&'static QuestionTemplate> {
    TEMPLATES.get(usize::from(id).checked_sub(1)?)
}

impl QuestionTemplate {
    pub fn applies(&self, figure_type: FigureType) -> bool {
        self.applies_to.contains(&figure_type)
    }

    /// Substitutes the slots. Only standalone `X`/`Y` tokens are slots, so
    /// names such as "Yellow" are never re-substituted.
    pub fn render(&self, x: &str, y: Option<&str>) -> String {
        let mut out = String::with_capacity(self.surface_form.len() + 32);
        let chars: Vec<char> = self.surface_form.chars().collect();
        for (i, &c) in chars.iter().enumerate() {
            let standalone = |j: Option<usize>| {
                j.and_then(|j| chars.get(j))
                    .map_or(true, |n| !n.is_alphanumeric())
            };
            let is_slot = (c == 'X' || c == 'Y') && standalone(i.checked_sub(1)) && standalone(Some(i + 1));
            match (is_slot, c) {
                (true, 'X') => out.push_str(x),
                (true, 'Y') => out.push_str(y.unwrap_or("Y")),
                _ => out.push(c),
            }
        }
        out
    }
}
