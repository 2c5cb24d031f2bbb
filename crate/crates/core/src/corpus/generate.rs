use std::path::Path;

use rayon::prelude::*;

use super::config::{CorpusConfig, Split};
use super::schema::{
    image_name, split_dir, to_json, write_atomic, AnnotationsFile, ColorPartition, ConfigEcho, FigureRecord,
    Manifest, QaFile, SplitInfo, ANNOTATIONS_FILE, IMAGES_DIR, MANIFEST_FILE, QA_FILE, SCHEMA_VERSION,
};
use crate::color::{default_color_table, split_colors, ColorScheme, ColorTable, COLOR_TABLE_VERSION};
use crate::qa::{balance, generate_qa, QaPair};
use crate::render::{render, BitmapFont, FONT_ASSET_VERSION};
use crate::synth::{sample_figure_with, FigureType};
use crate::{seed, Error, Result, GENERATOR_VERSION};

/// Redraws of one figure id before generation gives up.
pub const MAX_ATTEMPTS: u32 = 16;

/// Figure types cycle within each split so their counts differ by at most one.
pub fn figure_type_for(index_in_split: u64) -> FigureType {
    FigureType::ALL[(index_in_split % FigureType::ALL.len() as u64) as usize]
}

pub fn balance_seed(master_seed: u64, split: Split) -> u64 {
    seed::hash64(master_seed, split.index() as u64)
}

#[derive(Clone, Debug)]
pub struct FigureOutput {
    pub record: FigureRecord,
    pub png: Vec<u8>,
    /// Unbalanced.
    pub qa: Vec<QaPair>,
}

/// Samples, renders and questions one figure, redrawing it while the
/// layout does not fit.
pub fn generate_figure(
    config: &CorpusConfig,
    table: &ColorTable,
    font: &BitmapFont,
    scheme: &ColorScheme,
    figure_type: FigureType,
    figure_id: u64,
) -> Result<FigureOutput> {
    let synth = config.synth();
    let opts = config.render_options();
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let spec = sample_figure_with(&synth, figure_type, figure_id, scheme, config.master_seed, attempt)?;
        let rendered = match render(&spec, table, font, &opts) {
            Ok(r) => r,
            Err(Error::Render(reason)) => {
                last = reason;
                continue;
            }
            Err(e) => return Err(e),
        };
        let qa = generate_qa(&spec, table)?;
        let colors = spec.color_ids().map(|id| table.entry(id).clone()).collect();
        let record = FigureRecord {
            figure_id,
            image: image_name(figure_id),
            width: rendered.width,
            height: rendered.height,
            source_data: spec,
            colors,
            legend: rendered.legend,
            boxes: rendered.boxes,
        };
        return Ok(FigureOutput {
            record,
            png: rendered.png,
            qa,
        });
    }
    Err(Error::Generation {
        figure_id,
        seed: seed::attempt_seed(config.master_seed, figure_id, MAX_ATTEMPTS - 1),
        attempts: MAX_ATTEMPTS,
        reason: last,
    })
}

/// One split held in memory: records in figure order, balanced QA pairs.
#[derive(Clone, Debug)]
pub struct SplitOutput {
    pub split: Split,
    pub figures: Vec<FigureOutput>,
    pub qa_pairs: Vec<QaPair>,
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))
}

/// Generates `split` without touching the filesystem. `workers == 0` uses
/// one worker per core.
pub fn generate_split(config: &CorpusConfig, split: Split, workers: usize) -> Result<SplitOutput> {
    config.validate()?;
    let table = default_color_table();
    let scheme = split_colors(&table, config.master_seed)?.with_mode(split.scheme_mode());
    let font = BitmapFont::embedded();
    let first = config.first_id(split);
    let count = config.counts.get(split);
    let figures: Vec<FigureOutput> = pool(workers)?.install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| generate_figure(config, &table, font, &scheme, figure_type_for(i), first + i))
            .collect::<Result<_>>()
    })?;
    let qa = figures.iter().flat_map(|f| f.qa.iter().cloned()).collect();
    Ok(SplitOutput {
        split,
        qa_pairs: balance(qa, balance_seed(config.master_seed, split)),
        figures,
    })
}

fn prepare_output(root: &Path) -> Result<()> {
    match std::fs::read_dir(root) {
        Ok(mut entries) => {
            if entries.next().is_none() {
                return Ok(());
            }
            if !root.join(MANIFEST_FILE).is_file() {
                return Err(Error::Config(format!(
                    "{} is not empty and holds no corpus; refusing to overwrite",
                    root.display()
                )));
            }
            // Regenerating over an earlier corpus: drop its artifacts only.
            for split in Split::ALL {
                let dir = split_dir(root, split);
                if dir.exists() {
                    std::fs::remove_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
                }
            }
            let manifest = root.join(MANIFEST_FILE);
            std::fs::remove_file(&manifest).map_err(|e| Error::io(&manifest, e))
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            std::fs::create_dir_all(root).map_err(|e| Error::io(root, e))
        }
        Err(e) => Err(Error::io(root, e)),
    }
}

/// Writes a full corpus under `root` and returns its manifest. The manifest
/// is written last, so its presence marks a complete corpus.
pub fn generate_corpus(config: &CorpusConfig, root: &Path, workers: usize) -> Result<Manifest> {
    config.validate()?;
    prepare_output(root)?;
    let table = default_color_table();
    let partition = split_colors(&table, config.master_seed)?;
    let font = BitmapFont::embedded();
    let pool = pool(workers)?;
    let mut splits = Vec::new();

    for split in Split::ALL {
        let scheme = partition.with_mode(split.scheme_mode());
        let dir = split_dir(root, split);
        let images = dir.join(IMAGES_DIR);
        std::fs::create_dir_all(&images).map_err(|e| Error::io(&images, e))?;
        let first = config.first_id(split);
        let count = config.counts.get(split);

        let outputs: Vec<(FigureRecord, Vec<QaPair>)> = pool.install(|| {
            (0..count)
                .into_par_iter()
                .map(|i| {
                    let out = generate_figure(config, &table, font, &scheme, figure_type_for(i), first + i)?;
                    write_atomic(&dir.join(&out.record.image), &out.png)?;
                    Ok((out.record, out.qa))
                })
                .collect::<Result<_>>()
        })?;

        let (figures, qa): (Vec<FigureRecord>, Vec<Vec<QaPair>>) = outputs.into_iter().unzip();
        let seed = balance_seed(config.master_seed, split);
        let qa_pairs = balance(qa.into_iter().flatten().collect(), seed);
        splits.push(SplitInfo {
            split,
            scheme_mode: split.scheme_mode(),
            first_figure_id: first,
            figure_count: count,
            qa_count: qa_pairs.len() as u64,
            balance_seed: seed,
        });
        write_atomic(&dir.join(QA_FILE), &to_json(&QaFile { split, qa_pairs }))?;
        write_atomic(&dir.join(ANNOTATIONS_FILE), &to_json(&AnnotationsFile { split, figures }))?;
    }

    let manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        generator_version: GENERATOR_VERSION.to_string(),
        config: ConfigEcho {
            master_seed: config.master_seed,
            counts: config.counts,
            base_height: config.base_height,
            per_segment_boxes: config.per_segment_boxes,
            magnitude_factors: config.magnitude_factors.clone(),
        },
        color_table_version: COLOR_TABLE_VERSION.to_string(),
        font_version: FONT_ASSET_VERSION,
        color_partition: ColorPartition {
            subset_a: partition.subset_a,
            subset_b: partition.subset_b,
        },
        splits,
    };
    write_atomic(&root.join(MANIFEST_FILE), &to_json(&manifest))?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::config::SplitCounts;

    #[test]
    fn round_robin_types() {
        let types: Vec<_> = (0..7).map(figure_type_for).collect();
        assert_eq!(types[0], FigureType::VerticalBar);
        assert_eq!(types[4], FigureType::Pie);
        assert_eq!(types[5], FigureType::VerticalBar);
    }

    #[test]
    fn small_split_in_memory() {
        let config = CorpusConfig {
            counts: SplitCounts::only(Split::Val2, 10),
            master_seed: 5,
            ..CorpusConfig::default()
        };
        let out = generate_split(&config, Split::Val2, 2).unwrap();
        assert_eq!(out.figures.len(), 10);
        assert_eq!(out.figures[0].record.figure_id, 0);
        let again = generate_split(&config, Split::Val2, 1).unwrap();
        assert_eq!(out.qa_pairs, again.qa_pairs);
        assert!(out.figures.iter().zip(&again.figures).all(|(a, b)| a.png == b.png));
    }
}
