use std::path::Path;

use figsynth::color::ColorId;
use figsynth::corpus::{
    corpus_stats, generate_corpus, generate_split, read_json, read_manifest, split_dir, to_json, validate_corpus,
    AnnotationsFile, CorpusConfig, QaFile, Split, SplitCounts, ANNOTATIONS_FILE, QA_FILE,
};
use figsynth::qa::Answer;
use figsynth::synth::FigureType;
use figsynth::Error;

fn config(seed: u64, counts: SplitCounts) -> CorpusConfig {
    CorpusConfig {
        master_seed: seed,
        counts,
        ..CorpusConfig::default()
    }
}

fn small_counts() -> SplitCounts {
    SplitCounts {
        train: 25,
        val1: 5,
        val2: 10,
        test1: 0,
        test2: 5,
    }
}

fn rewrite<T: serde::Serialize + for<'de> serde::Deserialize<'de>>(path: &Path, edit: impl FnOnce(&mut T)) {
    let mut value: T = read_json(path).unwrap();
    edit(&mut value);
    std::fs::write(path, to_json(&value)).unwrap();
}

#[test]
fn cardinality_and_id_ranges() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = generate_corpus(&config(3, small_counts()), dir.path(), 2).unwrap();
    let mut next_id = 0;
    for info in &manifest.splits {
        assert_eq!(info.first_figure_id, next_id, "ids are contiguous across splits");
        next_id += info.figure_count;
        let ann: AnnotationsFile = read_json(&split_dir(dir.path(), info.split).join(ANNOTATIONS_FILE)).unwrap();
        let qa: QaFile = read_json(&split_dir(dir.path(), info.split).join(QA_FILE)).unwrap();
        assert_eq!(ann.figures.len() as u64, info.figure_count);
        assert_eq!(qa.qa_pairs.len() as u64, info.qa_count);
        for (i, r) in ann.figures.iter().enumerate() {
            assert_eq!(r.figure_id, info.first_figure_id + i as u64);
            assert!(split_dir(dir.path(), info.split).join(&r.image).is_file());
        }
    }
    assert_eq!(next_id, small_counts().total());
    let report = validate_corpus(dir.path(), true).unwrap();
    assert!(report.is_clean(), "{report}");
}

#[test]
fn in_memory_split_matches_written_corpus() {
    let cfg = config(4, SplitCounts::only(Split::Train, 12));
    let dir = tempfile::tempdir().unwrap();
    generate_corpus(&cfg, dir.path(), 1).unwrap();
    let mem = generate_split(&cfg, Split::Train, 3).unwrap();
    let qa: QaFile = read_json(&split_dir(dir.path(), Split::Train).join(QA_FILE)).unwrap();
    assert_eq!(qa.qa_pairs, mem.qa_pairs);
    for f in &mem.figures {
        let on_disk = std::fs::read(split_dir(dir.path(), Split::Train).join(&f.record.image)).unwrap();
        assert_eq!(on_disk, f.png);
    }
}

#[test]
fn output_location_does_not_change_bytes() {
    let cfg = config(8, SplitCounts::only(Split::Val1, 6));
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    generate_corpus(&cfg, &a.path().join("x"), 1).unwrap();
    generate_corpus(&cfg, &b.path().join("deeper/y"), 1).unwrap();
    let read = |root: &Path| std::fs::read(root.join("manifest.json")).unwrap();
    assert_eq!(read(&a.path().join("x")), read(&b.path().join("deeper/y")));
}

#[test]
fn regenerating_over_a_corpus_replaces_it() {
    let dir = tempfile::tempdir().unwrap();
    generate_corpus(&config(1, SplitCounts::only(Split::Train, 10)), dir.path(), 1).unwrap();
    generate_corpus(&config(1, SplitCounts::only(Split::Test1, 5)), dir.path(), 1).unwrap();
    let ann: AnnotationsFile = read_json(&split_dir(dir.path(), Split::Train).join(ANNOTATIONS_FILE)).unwrap();
    assert!(ann.figures.is_empty());
    assert_eq!(read_manifest(dir.path()).unwrap().config.counts.test1, 5);
    assert!(validate_corpus(dir.path(), false).unwrap().is_clean());
}

#[test]
fn refuses_foreign_non_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("notes.txt"), "keep me").unwrap();
    let err = generate_corpus(&config(1, SplitCounts::only(Split::Train, 2)), dir.path(), 1).unwrap_err();
    assert!(matches!(err, Error::Config(_)), "{err}");
    assert!(dir.path().join("notes.txt").is_file());
}

#[test]
fn invalid_config_is_rejected() {
    assert!(CorpusConfig::from_toml("bogus_key = 1").is_err());
    assert!(matches!(CorpusConfig::from_toml("base_height = 10"), Err(Error::Config(_))));
    let cfg = CorpusConfig::from_toml("master_seed = 12\n[counts]\ntrain = 3\n").unwrap();
    assert_eq!(cfg.master_seed, 12);
    assert_eq!(cfg.counts.train, 3);
}

#[test]
fn flipped_answer_is_one_oracle_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    generate_corpus(&config(11, SplitCounts::only(Split::Train, 20)), dir.path(), 1).unwrap();
    let path = split_dir(dir.path(), Split::Train).join(QA_FILE);
    rewrite::<QaFile>(&path, |qa| {
        let q = &mut qa.qa_pairs[0];
        q.answer = match q.answer {
            Answer::Yes => Answer::No,
            Answer::No => Answer::Yes,
        };
    });
    let report = validate_corpus(dir.path(), false).unwrap();
    assert_eq!(report.oracle_mismatches, 1);
    assert!(!report.is_clean());
}

#[test]
fn off_subset_color_is_a_scheme_violation() {
    let dir = tempfile::tempdir().unwrap();
    generate_corpus(&config(12, SplitCounts::only(Split::Train, 10)), dir.path(), 1).unwrap();
    let manifest = read_manifest(dir.path()).unwrap();
    // Vertical bars train on subset A; give one a subset-B color.
    let foreign: ColorId = manifest.color_partition.subset_b[0];
    let table = figsynth::color::default_color_table();
    let path = split_dir(dir.path(), Split::Train).join(ANNOTATIONS_FILE);
    rewrite::<AnnotationsFile>(&path, |ann| {
        let r = ann
            .figures
            .iter_mut()
            .find(|r| r.source_data.figure_type == FigureType::VerticalBar)
            .unwrap();
        r.source_data.series[0].color_id = foreign;
        r.colors[0] = table.entry(foreign).clone();
    });
    let report = validate_corpus(dir.path(), false).unwrap();
    assert_eq!(report.scheme_violations, 1, "{report}");
}

#[test]
fn shifted_box_fails_pixel_check() {
    let dir = tempfile::tempdir().unwrap();
    generate_corpus(&config(13, SplitCounts::only(Split::Train, 5)), dir.path(), 1).unwrap();
    let path = split_dir(dir.path(), Split::Train).join(ANNOTATIONS_FILE);
    rewrite::<AnnotationsFile>(&path, |ann| {
        let b = ann.figures[0]
            .boxes
            .iter_mut()
            .find(|b| b.element_class.is_data())
            .unwrap();
        b.x += 1;
    });
    let report = validate_corpus(dir.path(), true).unwrap();
    assert!(report.bbox_failures >= 1, "{report}");
}

#[test]
fn missing_manifest_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    assert!(validate_corpus(dir.path(), false).is_err());
    assert!(corpus_stats(dir.path()).is_err());
}

#[test]
fn stats_report_counts_and_ratios() {
    let dir = tempfile::tempdir().unwrap();
    let counts = SplitCounts {
        train: 1000,
        val1: 0,
        val2: 0,
        test1: 0,
        test2: 0,
    };
    generate_corpus(&config(21, counts), dir.path(), 0).unwrap();
    let stats = corpus_stats(dir.path()).unwrap();
    let train = stats.splits.iter().find(|s| s.split == Split::Train).unwrap();
    assert_eq!(train.figures, 1000);
    assert_eq!(train.figure_types.len(), 5);
    assert!(train.figure_types.values().all(|&n| n == 200));
    assert!(train.templates.iter().all(|t| t.yes == t.no && t.yes_ratio == 0.5));
    if let Some(empty) = stats.splits.iter().find(|s| s.split == Split::Val1) {
        assert_eq!(empty.figures, 0);
        assert_eq!(empty.qa_pairs, 0);
    }
    let text = stats.to_string();
    assert!(text.contains("train"));
    assert!(text.contains("0.500"));
}
