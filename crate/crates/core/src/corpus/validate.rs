use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::Split;
use super::oracle::oracle_answer;
use super::schema::{
    image_name, read_json, read_manifest, split_dir, FigureRecord, ANNOTATIONS_FILE,
    QA_FILE, SCHEMA_VERSION,
};
use crate::color::{default_color_table, split_colors, ColorScheme, ColorTable};
use crate::qa::{template, Answer, QaPair};
use crate::render::{decode_png, Canvas, ElementClass};
use crate::Result;

/// Without a full scan, every n-th figure of a split gets the pixel check.
pub const PIXEL_SAMPLE_STRIDE: usize = 10;
/// Problem messages kept in a report.
const MAX_PROBLEMS: usize = 50;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateCount {
    pub template_id: u8,
    pub yes: u64,
    pub no: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitValidation {
    pub split: Option<Split>,
    pub figures: u64,
    pub qa_pairs: u64,
    pub answer_counts: Vec<TemplateCount>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub oracle_mismatches: u64,
    pub applicability_violations: u64,
    pub imbalanced_templates: u64,
    pub bbox_failures: u64,
    pub figures_pixel_checked: u64,
    pub scheme_violations: u64,
    pub schema_errors: u64,
    pub splits: Vec<SplitValidation>,
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn violation_count(&self) -> u64 {
        self.oracle_mismatches
            + self.applicability_violations
            + self.imbalanced_templates
            + self.bbox_failures
            + self.scheme_violations
            + self.schema_errors
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count() == 0
    }

    fn note(&mut self, message: String) {
        if self.problems.len() < MAX_PROBLEMS {
            self.problems.push(message);
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "oracle mismatches         {}", self.oracle_mismatches)?;
        writeln!(f, "applicability violations  {}", self.applicability_violations)?;
        writeln!(f, "imbalanced templates      {}", self.imbalanced_templates)?;
        writeln!(
            f,
            "bbox failures             {} ({} figures scanned)",
            self.bbox_failures, self.figures_pixel_checked
        )?;
        writeln!(f, "color scheme violations   {}", self.scheme_violations)?;
        writeln!(f, "schema errors             {}", self.schema_errors)?;
        for s in &self.splits {
            let name = s.split.map_or("?", Split::name);
            write!(f, "{name}: {} figures, {} qa pairs;", s.figures, s.qa_pairs)?;
            for t in &s.answer_counts {
                write!(f, " t{}={}/{}", t.template_id, t.yes, t.no)?;
            }
            writeln!(f)?;
        }
        for p in &self.problems {
            writeln!(f, "  - {p}")?;
        }
        Ok(())
    }
}

/// Pixel-level box checks for one rendered figure; returns one message per failure.
///
/// Every pixel exactly matching a series color must lie inside a box carrying
/// that color, and each such box must have a matching pixel on all four edges.
pub fn check_boxes(record: &FigureRecord, canvas: &Canvas, table: &ColorTable) -> Vec<String> {
    let mut failures = Vec::new();
    let id = record.figure_id;
    if (canvas.width(), canvas.height()) != (record.width, record.height) {
        failures.push(format!(
            "figure {id}: image is {}x{}, record says {}x{}",
            canvas.width(),
            canvas.height(),
            record.width,
            record.height
        ));
        return failures;
    }
    for b in &record.boxes {
        if b.w == 0 || b.h == 0 || b.x + b.w > canvas.width() || b.y + b.h > canvas.height() {
            failures.push(format!("figure {id}: {:?} box out of bounds", b.element_class));
        }
        if b.element_class.is_data() && b.color_id.is_none() {
            failures.push(format!("figure {id}: {:?} box without color", b.element_class));
        }
    }
    if !failures.is_empty() {
        return failures;
    }
    for series in &record.source_data.series {
        let c = series.color_id;
        let rgb = table.rgb(c);
        let boxes: Vec<_> = record
            .boxes
            .iter()
            .filter(|b| b.color_id == Some(c) && b.element_class.is_data())
            .collect();
        let per_class = |class| record.boxes.iter().filter(|b| b.color_id == Some(c) && b.element_class == class).count();
        if per_class(ElementClass::LegendToken) != 1 || per_class(ElementClass::LegendLabel) != 1 {
            failures.push(format!("figure {id}: color {c} lacks exactly one legend token and label"));
        }
        let mut seen = 0u64;
        let mut outside = 0u64;
        for y in 0..canvas.height() {
            for x in 0..canvas.width() {
                if canvas.get(x, y) == rgb {
                    seen += 1;
                    if !boxes.iter().any(|b| b.contains(x, y)) {
                        outside += 1;
                    }
                }
            }
        }
        if seen == 0 {
            failures.push(format!("figure {id}: color {c} has no pixels"));
        }
        if outside > 0 {
            failures.push(format!("figure {id}: {outside} pixels of color {c} outside its boxes"));
        }
        for b in &boxes {
            let (x1, y1) = (b.x + b.w - 1, b.y + b.h - 1);
            let row_hit = |y: u32| (b.x..=x1).any(|x| canvas.get(x, y) == rgb);
            let col_hit = |x: u32| (b.y..=y1).any(|y| canvas.get(x, y) == rgb);
            if !(row_hit(b.y) && row_hit(y1) && col_hit(b.x) && col_hit(x1)) {
                failures.push(format!("figure {id}: {:?} box for color {c} is not tight", b.element_class));
            }
        }
    }
    failures
}

fn parse_items<T: for<'de> Deserialize<'de>>(
    report: &mut ValidationReport,
    value: &serde_json::Value,
    key: &str,
    file: &str,
) -> Vec<T> {
    let Some(items) = value.get(key).and_then(|v| v.as_array()) else {
        report.schema_errors += 1;
        report.note(format!("{file}: missing `{key}` array"));
        return Vec::new();
    };
    let mut out = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        match T::deserialize(item) {
            Ok(v) => out.push(v),
            Err(e) => {
                report.schema_errors += 1;
                report.note(format!("{file}[{i}]: {e}"));
            }
        }
    }
    out
}

fn load_value(report: &mut ValidationReport, path: &Path) -> Option<serde_json::Value> {
    match read_json::<serde_json::Value>(path) {
        Ok(v) => Some(v),
        Err(e) => {
            report.schema_errors += 1;
            report.note(e.to_string());
            None
        }
    }
}

/// Checks a corpus directory. Problems with individual files and records are
/// counted in the report; only a missing or unreadable manifest is an error.
pub fn validate_corpus(root: &Path, full_pixel_scan: bool) -> Result<ValidationReport> {
    let manifest = read_manifest(root)?;
    let table = default_color_table();
    let mut report = ValidationReport::default();

    if manifest.schema_version != SCHEMA_VERSION {
        report.schema_errors += 1;
        report.note(format!("unsupported schema version {}", manifest.schema_version));
    }
    let partition = ColorScheme {
        subset_a: manifest.color_partition.subset_a.clone(),
        subset_b: manifest.color_partition.subset_b.clone(),
        mode: crate::color::SchemeMode::Training,
    };
    if partition.validate().is_err() {
        report.schema_errors += 1;
        report.note("color partition is not two disjoint halves of the table".into());
        return Ok(report);
    }
    match split_colors(&table, manifest.config.master_seed) {
        Ok(expected) if expected.subset_a == partition.subset_a => {}
        _ => {
            report.schema_errors += 1;
            report.note("color partition does not match the master seed".into());
        }
    }

    for info in &manifest.splits {
        let split = info.split;
        let dir = split_dir(root, split);
        let scheme = partition.with_mode(split.scheme_mode());
        let mut sv = SplitValidation {
            split: Some(split),
            ..SplitValidation::default()
        };
        if info.scheme_mode != split.scheme_mode() {
            report.schema_errors += 1;
            report.note(format!("{}: scheme mode {:?} recorded", split.name(), info.scheme_mode));
        }

        let mut figures: HashMap<u64, FigureRecord> = HashMap::new();
        let mut order = Vec::new();
        if let Some(v) = load_value(&mut report, &dir.join(ANNOTATIONS_FILE)) {
            let file = format!("{}/{ANNOTATIONS_FILE}", split.name());
            let records: Vec<FigureRecord> = parse_items(&mut report, &v, "figures", &file);
            for r in records {
                let id = r.figure_id;
                if figures.insert(id, r).is_some() {
                    report.schema_errors += 1;
                    report.note(format!("{file}: figure {id} listed twice"));
                } else {
                    order.push(id);
                }
            }
        }
        let expected: HashSet<u64> = (info.first_figure_id..info.first_figure_id + info.figure_count).collect();
        let present: HashSet<u64> = figures.keys().copied().collect();
        for missing in expected.difference(&present) {
            report.schema_errors += 1;
            report.note(format!("{}: figure {missing} has no record", split.name()));
        }
        for extra in present.difference(&expected) {
            report.schema_errors += 1;
            report.note(format!("{}: figure {extra} is outside the split range", split.name()));
        }
        sv.figures = figures.len() as u64;

        order.sort_unstable();
        for (k, id) in order.iter().enumerate() {
            let record = &figures[id];
            let spec = &record.source_data;
            let mut problems = Vec::new();
            if spec.figure_id != *id || record.image != image_name(*id) {
                problems.push(format!("figure {id}: id or image path inconsistent"));
            }
            for p in spec.structural_violations() {
                problems.push(format!("figure {id}: {p}"));
            }
            if spec.series.iter().any(|s| table.get(s.color_id).is_none()) {
                problems.push(format!("figure {id}: unknown color id"));
            } else {
                let expected: Vec<_> = spec.color_ids().map(|c| table.entry(c).clone()).collect();
                if record.colors != expected {
                    problems.push(format!("figure {id}: color records disagree with the table"));
                }
            }
            let image_path = dir.join(&record.image);
            if !image_path.is_file() {
                problems.push(format!("figure {id}: missing image {}", record.image));
            }
            for c in spec.scheme_violations(&scheme) {
                report.scheme_violations += 1;
                report.note(format!(
                    "{}: figure {id} uses color {c} outside its {:?} subset",
                    split.name(),
                    split.scheme_mode()
                ));
            }
            let malformed = !problems.is_empty();
            report.schema_errors += problems.len() as u64;
            for p in problems {
                report.note(p);
            }
            if malformed {
                continue;
            }
            if full_pixel_scan || k % PIXEL_SAMPLE_STRIDE == 0 {
                let decoded = std::fs::read(&image_path)
                    .map_err(|e| e.to_string())
                    .and_then(|bytes| decode_png(&bytes).map_err(|e| e.to_string()));
                match decoded {
                    Ok(canvas) => {
                        report.figures_pixel_checked += 1;
                        for failure in check_boxes(record, &canvas, &table) {
                            report.bbox_failures += 1;
                            report.note(failure);
                        }
                    }
                    Err(e) => {
                        report.schema_errors += 1;
                        report.note(format!("figure {id}: {e}"));
                    }
                }
            }
        }

        let mut counts: BTreeMap<u8, (u64, u64)> = BTreeMap::new();
        if let Some(v) = load_value(&mut report, &dir.join(QA_FILE)) {
            let file = format!("{}/{QA_FILE}", split.name());
            let pairs: Vec<QaPair> = parse_items(&mut report, &v, "qa_pairs", &file);
            sv.qa_pairs = pairs.len() as u64;
            if sv.qa_pairs != info.qa_count {
                report.schema_errors += 1;
                report.note(format!("{file}: {} pairs, manifest says {}", sv.qa_pairs, info.qa_count));
            }
            for q in &pairs {
                let entry = counts.entry(q.template_id).or_default();
                match q.answer {
                    Answer::Yes => entry.0 += 1,
                    Answer::No => entry.1 += 1,
                }
                check_pair(&mut report, &figures, &table, q);
            }
        }
        for (&template_id, &(yes, no)) in &counts {
            if yes != no {
                report.imbalanced_templates += 1;
                report.note(format!("{}: template {template_id} has {yes} yes / {no} no", split.name()));
            }
            sv.answer_counts.push(TemplateCount { template_id, yes, no });
        }
        report.splits.push(sv);
    }
    Ok(report)
}

fn check_pair(report: &mut ValidationReport, figures: &HashMap<u64, FigureRecord>, table: &ColorTable, q: &QaPair) {
    let Some(record) = figures.get(&q.figure_id) else {
        report.schema_errors += 1;
        report.note(format!("qa pair refers to unknown figure {}", q.figure_id));
        return;
    };
    let spec = &record.source_data;
    let Some(t) = template(q.template_id) else {
        report.schema_errors += 1;
        report.note(format!("figure {}: unknown template {}", q.figure_id, q.template_id));
        return;
    };
    let known = |c| spec.color_ids().any(|s| s == c);
    if !known(q.color_x) || q.color_y.is_some_and(|c| !known(c)) || q.color_y.is_some() != t.pairwise {
        report.schema_errors += 1;
        report.note(format!("figure {}: template {} names colors badly", q.figure_id, q.template_id));
        return;
    }
    let question = t.render(table.name(q.color_x), q.color_y.map(|c| table.name(c)));
    if question != q.question {
        report.schema_errors += 1;
        report.note(format!("figure {}: question text {:?} does not match its template", q.figure_id, q.question));
    }
    match oracle_answer(spec, q.template_id, q.color_x, q.color_y) {
        None => {
            report.applicability_violations += 1;
            report.note(format!("figure {}: template {} does not apply", q.figure_id, q.template_id));
        }
        Some(a) if a != q.answer => {
            report.oracle_mismatches += 1;
            report.note(format!(
                "figure {}: template {} ({:?}) answered {:?}, oracle says {:?}",
                q.figure_id, q.template_id, q.question, q.answer, a
            ));
        }
        Some(_) => {}
    }
}
