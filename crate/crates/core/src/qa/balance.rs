use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;

use super::generate::{Answer, QaPair};
use crate::seed;

/// Discards pairs of the majority answer until every template has equal yes
/// and no counts.
///
/// Majority pairs without an opposite-answer sibling (same figure, same
/// template) are discarded first, which keeps as many figures per-template
/// balanced as possible. Choices are seeded; output is in canonical order.
pub fn balance(pairs: Vec<QaPair>, seed: u64) -> Vec<QaPair> {
    let mut by_template: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
    for (i, p) in pairs.iter().enumerate() {
        by_template.entry(p.template_id).or_default().push(i);
    }

    let mut dropped = HashSet::new();
    for (&template_id, members) in &by_template {
        let (yes, no): (Vec<usize>, Vec<usize>) =
            members.iter().partition(|&&i| pairs[i].answer == Answer::Yes);
        let (majority, minority) = if yes.len() > no.len() { (yes, no) } else { (no, yes) };
        let excess = majority.len() - minority.len();
        if excess == 0 {
            continue;
        }
        let minority_figures: HashSet<u64> = minority.iter().map(|&i| pairs[i].figure_id).collect();
        let (mut orphans, mut paired): (Vec<usize>, Vec<usize>) = majority
            .into_iter()
            .partition(|&i| !minority_figures.contains(&pairs[i].figure_id));
        let mut rng = seed::rng(seed::hash64(
            seed::hash64(seed, seed::tag::BALANCE),
            u64::from(template_id),
        ));
        orphans.shuffle(&mut rng);
        paired.shuffle(&mut rng);
        dropped.extend(orphans.into_iter().chain(paired).take(excess));
    }

    let mut kept: Vec<QaPair> = pairs
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !dropped.contains(i))
        .map(|(_, p)| p)
        .collect();
    kept.sort_by_key(QaPair::sort_key);
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::ColorId;

    fn pair(figure_id: u64, template_id: u8, answer: Answer, x: u16) -> QaPair {
        QaPair {
            figure_id,
            template_id,
            question: format!("q{figure_id}-{template_id}-{x}"),
            color_x: ColorId(x),
            color_y: None,
            answer,
        }
    }

    fn counts(pairs: &[QaPair], template_id: u8) -> (usize, usize) {
        let of = |a| pairs.iter().filter(|p| p.template_id == template_id && p.answer == a).count();
        (of(Answer::Yes), of(Answer::No))
    }

    #[test]
    fn four_yes_two_no_becomes_two_two() {
        let input: Vec<_> = (0..4)
            .map(|f| pair(f, 1, Answer::Yes, 0))
            .chain((0..2).map(|f| pair(f, 1, Answer::No, 1)))
            .collect();
        let out = balance(input, 9);
        assert_eq!(counts(&out, 1), (2, 2));
        // Orphan yes pairs (figures 2 and 3) go first.
        assert!(out.iter().all(|p| p.figure_id < 2));
    }

    #[test]
    fn balanced_input_is_fixed_point() {
        let mut input = vec![
            pair(1, 5, Answer::No, 3),
            pair(0, 2, Answer::Yes, 1),
            pair(0, 2, Answer::No, 2),
            pair(1, 5, Answer::Yes, 4),
        ];
        let out = balance(input.clone(), 1);
        input.sort_by_key(QaPair::sort_key);
        assert_eq!(out, input);
    }

    #[test]
    fn empty_input() {
        assert!(balance(Vec::new(), 0).is_empty());
    }

    #[test]
    fn deterministic_for_seed() {
        let input: Vec<_> = (0..40)
            .map(|f| pair(f, 13, if f % 3 == 0 { Answer::Yes } else { Answer::No }, (f % 7) as u16))
            .collect();
        let a = balance(input.clone(), 5);
        assert_eq!(a, balance(input, 5));
        assert_eq!(counts(&a, 13).0, counts(&a, 13).1);
    }
}
