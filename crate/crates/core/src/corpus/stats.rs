use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::Split;
use super::schema::{read_json, read_manifest, split_dir, AnnotationsFile, QaFile, ANNOTATIONS_FILE, QA_FILE};
use crate::qa::Answer;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemplateStats {
    pub template_id: u8,
    pub yes: u64,
    pub no: u64,
    pub yes_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitStats {
    pub split: Split,
    pub figures: u64,
    pub qa_pairs: u64,
    /// Keyed by figure type name.
    pub figure_types: BTreeMap<String, u64>,
    pub templates: Vec<TemplateStats>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub splits: Vec<SplitStats>,
}

pub fn corpus_stats(root: &Path) -> Result<CorpusStats> {
    let manifest = read_manifest(root)?;
    let mut splits = Vec::new();
    for info in &manifest.splits {
        let dir = split_dir(root, info.split);
        let annotations: AnnotationsFile = read_json(&dir.join(ANNOTATIONS_FILE))?;
        let qa: QaFile = read_json(&dir.join(QA_FILE))?;
        let mut figure_types = BTreeMap::new();
        for r in &annotations.figures {
            *figure_types.entry(r.source_data.figure_type.name().to_string()).or_insert(0) += 1;
        }
        let mut counts: BTreeMap<u8, (u64, u64)> = BTreeMap::new();
        for q in &qa.qa_pairs {
            let e = counts.entry(q.template_id).or_default();
            match q.answer {
                Answer::Yes => e.0 += 1,
                Answer::No => e.1 += 1,
            }
        }
        splits.push(SplitStats {
            split: info.split,
            figures: annotations.figures.len() as u64,
            qa_pairs: qa.qa_pairs.len() as u64,
            figure_types,
            templates: counts
                .into_iter()
                .map(|(template_id, (yes, no))| TemplateStats {
                    template_id,
                    yes,
                    no,
                    yes_ratio: yes as f64 / (yes + no) as f64,
                })
                .collect(),
        });
    }
    Ok(CorpusStats { splits })
}

impl fmt::Display for CorpusStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.splits {
            writeln!(f, "[{}] figures={} qa_pairs={}", s.split.name(), s.figures, s.qa_pairs)?;
            for (name, n) in &s.figure_types {
                writeln!(f, "  {name:<16}{n:>8}")?;
            }
            if !s.templates.is_empty() {
                writeln!(f, "  {:<10}{:>8}{:>8}{:>8}", "template", "yes", "no", "ratio")?;
            }
            for t in &s.templates {
                writeln!(f, "  {:<10}{:>8}{:>8}{:>8.3}", t.template_id, t.yes, t.no, t.yes_ratio)?;
            }
        }
        Ok(())
    }
}
