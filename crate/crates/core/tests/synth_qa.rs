use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use figsynth::color::{default_color_table, split_colors, ColorId, SchemeMode};
use figsynth::corpus::oracle::oracle_answer;
use figsynth::qa::{balance, generate_qa, template, Answer, QaPair};
use figsynth::synth::{sample_figure, sample_figure_with, FigureSpec, FigureType, SynthConfig};

fn figures(seed: u64, per_type: u64, mode: SchemeMode) -> Vec<FigureSpec> {
    let table = default_color_table();
    let scheme = split_colors(&table, seed).unwrap().with_mode(mode);
    FigureType::ALL
        .iter()
        .flat_map(|&ft| (0..per_type).map(move |id| (ft, id)))
        .map(|(ft, id)| sample_figure(ft, id, &scheme, seed).unwrap())
        .collect()
}

#[test]
fn sampled_figures_are_well_formed() {
    let table = default_color_table();
    for mode in [SchemeMode::Training, SchemeMode::Alternated] {
        let scheme = split_colors(&table, 9).unwrap().with_mode(mode);
        for spec in figures(9, 200, mode) {
            assert!(spec.structural_violations().is_empty(), "{:?}", spec.structural_violations());
            assert!(spec.scheme_violations(&scheme).is_empty());
            let ft = spec.figure_type;
            assert!(ft.series_range().contains(&spec.series.len()));
            let colors: BTreeSet<ColorId> = spec.color_ids().collect();
            assert_eq!(colors.len(), spec.series.len(), "colors repeat within a figure");
            for s in &spec.series {
                assert!(ft.point_range().contains(&s.x_values.len()));
                assert_eq!(s.x_values.len(), s.y_values.len());
                assert!(s.y_values.iter().all(|v| v.is_finite()));
                if ft.is_line() {
                    assert_eq!(s.x_values, spec.series[0].x_values, "curves share one grid");
                }
            }
            if ft == FigureType::Pie {
                let total: f64 = spec.series.iter().map(|s| s.y_values[0]).sum();
                assert!(spec.series.iter().all(|s| s.y_values[0] > 0.0));
                assert!(total > 0.0);
            }
        }
    }
}

#[test]
fn attempts_redraw_independently() {
    let table = default_color_table();
    let scheme = split_colors(&table, 1).unwrap();
    let cfg = SynthConfig::default();
    let a = sample_figure_with(&cfg, FigureType::Line, 4, &scheme, 1, 0).unwrap();
    let b = sample_figure_with(&cfg, FigureType::Line, 4, &scheme, 1, 1).unwrap();
    assert_ne!(a.series, b.series);
    assert_eq!(a, sample_figure_with(&cfg, FigureType::Line, 4, &scheme, 1, 0).unwrap());
}

/// Every answer the oracle gives over all subject choices, per template.
fn brute_force(spec: &FigureSpec) -> BTreeMap<u8, BTreeSet<Answer>> {
    let ids: Vec<ColorId> = spec.color_ids().collect();
    let mut out: BTreeMap<u8, BTreeSet<Answer>> = BTreeMap::new();
    for t in 1..=15u8 {
        let pairwise = template(t).unwrap().pairwise;
        for &x in &ids {
            let ys: Vec<Option<ColorId>> = if pairwise {
                ids.iter().filter(|&&y| y != x).map(|&y| Some(y)).collect()
            } else {
                vec![None]
            };
            for y in ys {
                if let Some(a) = oracle_answer(spec, t, x, y) {
                    out.entry(t).or_default().insert(a);
                }
            }
        }
    }
    out
}

#[test]
fn questions_agree_with_brute_force_oracle() {
    let table = default_color_table();
    for spec in figures(5, 120, SchemeMode::Training) {
        let qa = generate_qa(&spec, &table).unwrap();
        let expected = brute_force(&spec);
        let mut emitted: BTreeMap<u8, BTreeSet<Answer>> = BTreeMap::new();
        for q in &qa {
            assert_eq!(oracle_answer(&spec, q.template_id, q.color_x, q.color_y), Some(q.answer), "{q:?}");
            assert!(emitted.entry(q.template_id).or_default().insert(q.answer), "duplicate answer {q:?}");
            let t = template(q.template_id).unwrap();
            let text = t.render(table.name(q.color_x), q.color_y.map(|c| table.name(c)));
            assert_eq!(q.question, text);
            assert!(q.question.contains(table.name(q.color_x)));
        }
        assert_eq!(emitted, expected, "figure {} ({:?})", spec.figure_id, spec.figure_type);
    }
}

#[test]
fn balancing_equalizes_generated_pairs() {
    let table = default_color_table();
    let pairs: Vec<QaPair> = figures(6, 60, SchemeMode::Training)
        .iter()
        .flat_map(|s| generate_qa(s, &table).unwrap())
        .collect();
    let before = pairs.len();
    let out = balance(pairs.clone(), 77);
    assert!(out.len() <= before);
    let mut counts: BTreeMap<u8, (usize, usize)> = BTreeMap::new();
    for q in &out {
        let e = counts.entry(q.template_id).or_default();
        if q.answer == Answer::Yes {
            e.0 += 1
        } else {
            e.1 += 1
        }
        assert!(pairs.contains(q), "balancing invented a pair");
    }
    assert!(counts.values().all(|(y, n)| y == n), "{counts:?}");
    assert_eq!(out, balance(pairs, 77));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampling_is_a_pure_function(seed in any::<u64>(), id in 0u64..1_000_000, t in 0usize..5) {
        let table = default_color_table();
        let scheme = split_colors(&table, seed).unwrap();
        let ft = FigureType::ALL[t];
        let a = sample_figure(ft, id, &scheme, seed).unwrap();
        let b = sample_figure(ft, id, &scheme, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.structural_violations().is_empty());
        prop_assert!(a.scheme_violations(&scheme).is_empty());
    }

    #[test]
    fn every_emitted_answer_matches_oracle(seed in any::<u64>(), id in 0u64..10_000, t in 0usize..5) {
        let table = default_color_table();
        let scheme = split_colors(&table, seed).unwrap();
        let spec = sample_figure(FigureType::ALL[t], id, &scheme, seed).unwrap();
        for q in generate_qa(&spec, &table).unwrap() {
            prop_assert_eq!(oracle_answer(&spec, q.template_id, q.color_x, q.color_y), Some(q.answer));
        }
    }
}
