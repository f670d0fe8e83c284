//! Corpus benchmark: noise every image at each variance, run every filter,
//! score against the clean original and aggregate per configuration.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::format::csv_num;
use crate::metrics::{mse, psnr_from_mse};
use crate::pgm::read_pgm_file;
use crate::{
    add_gaussian_noise, filter_image, BorderPolicy, Error, FilterKind, Image, NoiseSpec, Result,
    Threshold,
};

pub const DEFAULT_VARIANCES: [f64; 2] = [0.02, 0.04];
pub const DEFAULT_THETAS: [f64; 3] = [0.2, 0.3, 0.4];

pub const CSV_HEADER: [&str; 7] = [
    "record",
    "image_id",
    "noise_variance",
    "filter",
    "theta",
    "mse",
    "psnr_db",
];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub corpus_dir: PathBuf,
    pub noise_variances: Vec<f64>,
    pub thetas: Vec<Threshold>,
    /// Filters in report order; adaptive entries normally mirror `thetas`.
    pub filters: Vec<FilterKind>,
    pub seed: u64,
    pub border: BorderPolicy,
}

impl BenchConfig {
    /// Default sweep: variances 0.02 and 0.04, mean and median baselines,
    /// adaptive mean at θ = 0.2, 0.3, 0.4.
    pub fn new(corpus_dir: impl Into<PathBuf>) -> Self {
        let thetas: Vec<Threshold> = DEFAULT_THETAS
            .iter()
            .map(|&t| Threshold::new(t).expect("default thresholds are in range"))
            .collect();
        Self {
            corpus_dir: corpus_dir.into(),
            noise_variances: DEFAULT_VARIANCES.to_vec(),
            filters: default_filters(&thetas),
            thetas,
            seed: 0,
            border: BorderPolicy::default(),
        }
    }

    /// Replaces the thresholds and rebuilds the filter list around them.
    pub fn with_thetas(mut self, thetas: Vec<Threshold>) -> Self {
        self.filters = default_filters(&thetas);
        self.thetas = thetas;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.noise_variances.is_empty() || self.thetas.is_empty() || self.filters.is_empty() {
            return Err(Error::InvalidConfig(
                "noise variances, thresholds and filters must be nonempty".into(),
            ));
        }
        if let Some(v) = self
            .noise_variances
            .iter()
            .find(|v| !(**v >= 0.0 && v.is_finite()))
        {
            return Err(Error::InvalidConfig(format!(
                "noise variance {v} must be >= 0"
            )));
        }
        Ok(())
    }
}

fn default_filters(thetas: &[Threshold]) -> Vec<FilterKind> {
    let mut f = vec![FilterKind::Mean, FilterKind::Median];
    f.extend(thetas.iter().map(|&t| FilterKind::AdaptiveMean(t)));
    f
}

/// Noise seed for one image: the first 8 bytes of
/// `SHA-256(seed as little-endian u64 || file name)`.
pub fn image_seed(seed: u64, image_id: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(image_id.as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub image_id: String,
    pub noise_variance: f64,
    pub filter: FilterKind,
    pub mse: f64,
    pub psnr_db: f64,
}

/// Mean over images for one (variance, filter) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub noise_variance: f64,
    pub filter: FilterKind,
    pub images: usize,
    pub mse: f64,
    pub psnr_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub aggregates: Vec<Aggregate>,
    /// Files that could not be read as grayscale PGM, with the reason.
    pub skipped: Vec<(String, String)>,
    thetas: Vec<Threshold>,
}

/// Regular, non-hidden files of `dir`, sorted by name.
fn corpus_files(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.starts_with('.') || !entry.file_type()?.is_file() {
            continue;
        }
        files.push((name, entry.path()));
    }
    files.sort();
    Ok(files)
}

/// Scores one clean image under every (variance, filter) pair of `cfg`.
pub fn bench_image(image_id: &str, clean: &Image, cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let seed = image_seed(cfg.seed, image_id);
    let mut rows = Vec::with_capacity(cfg.noise_variances.len() * cfg.filters.len());
    for &variance in &cfg.noise_variances {
        let noisy = add_gaussian_noise(clean, &NoiseSpec::new(variance, seed)?);
        for &filter in &cfg.filters {
            let out = filter_image(&noisy, filter, cfg.border);
            let e = mse(&out, clean)?;
            rows.push(BenchRow {
                image_id: image_id.to_string(),
                noise_variance: variance,
                filter,
                mse: e,
                psnr_db: psnr_from_mse(e),
            });
        }
    }
    Ok(rows)
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let mut images = Vec::new();
    let mut skipped = Vec::new();
    for (name, path) in corpus_files(&cfg.corpus_dir)? {
        match read_pgm_file(&path) {
            Ok(img) => images.push((name, img)),
            Err(e) => skipped.push((name, e.to_string())),
        }
    }
    if images.is_empty() {
        return Err(Error::EmptyCorpus(cfg.corpus_dir.display().to_string()));
    }

    let per_image: Vec<Vec<BenchRow>> = images
        .par_iter()
        .map(|(id, img)| bench_image(id, img, cfg))
        .collect::<Result<_>>()?;
    let rows: Vec<BenchRow> = per_image.into_iter().flatten().collect();
    let aggregates = aggregate(&rows, cfg);
    Ok(BenchReport {
        rows,
        aggregates,
        skipped,
        thetas: cfg.thetas.clone(),
    })
}

fn aggregate(rows: &[BenchRow], cfg: &BenchConfig) -> Vec<Aggregate> {
    let mut out = Vec::new();
    for &variance in &cfg.noise_variances {
        for &filter in &cfg.filters {
            let members: Vec<&BenchRow> = rows
                .iter()
                .filter(|r| r.noise_variance == variance && r.filter == filter)
                .collect();
            let n = members.len();
            if n == 0 {
                continue;
            }
            out.push(Aggregate {
                noise_variance: variance,
                filter,
                images: n,
                mse: members.iter().map(|r| r.mse).sum::<f64>() / n as f64,
                psnr_db: members.iter().map(|r| r.psnr_db).sum::<f64>() / n as f64,
            });
        }
    }
    out
}

fn theta_field(f: &FilterKind) -> String {
    f.theta().map(|t| csv_num(t.value())).unwrap_or_default()
}

impl BenchReport {
    pub fn aggregate(&self, noise_variance: f64, filter: FilterKind) -> Option<&Aggregate> {
        self.aggregates
            .iter()
            .find(|a| a.noise_variance == noise_variance && a.filter == filter)
    }

    pub fn image_count(&self) -> usize {
        self.aggregates.first().map_or(0, |a| a.images)
    }

    /// Per-image rows followed by aggregate rows (`image_id` = `*`).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.rows {
            w.write_record([
                "image",
                r.image_id.as_str(),
                &csv_num(r.noise_variance),
                r.filter.label(),
                &theta_field(&r.filter),
                &csv_num(r.mse),
                &csv_num(r.psnr_db),
            ])?;
        }
        for a in &self.aggregates {
            w.write_record([
                "aggregate",
                "*",
                &csv_num(a.noise_variance),
                a.filter.label(),
                &theta_field(&a.filter),
                &csv_num(a.mse),
                &csv_num(a.psnr_db),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Console summary with one row per (noise, threshold):
    /// Noise, Threshold, PSNR adaptive, PSNR mean, MSE adaptive, MSE mean.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>8}  {:>9}  {:>13}  {:>9}  {:>12}  {:>9}",
            "Noise", "Threshold", "PSNR adaptive", "PSNR mean", "MSE adaptive", "MSE mean"
        );
        let mut variances: Vec<f64> = Vec::new();
        for a in &self.aggregates {
            if !variances.contains(&a.noise_variance) {
                variances.push(a.noise_variance);
            }
        }
        for &v in &variances {
            let mean = self.aggregate(v, FilterKind::Mean);
            for &t in &self.thetas {
                let Some(ad) = self.aggregate(v, FilterKind::AdaptiveMean(t)) else {
                    continue;
                };
                let (mp, mm) = mean.map_or((String::from("-"), String::from("-")), |m| {
                    (format!("{:.2}", m.psnr_db), format!("{:.5}", m.mse))
                });
                let _ = writeln!(
                    s,
                    "{:>8}  {:>9}  {:>13.2}  {:>9}  {:>12.5}  {:>9}",
                    v,
                    t.value(),
                    ad.psnr_db,
                    mp,
                    ad.mse,
                    mm
                );
            }
            if let Some(md) = self.aggregate(v, FilterKind::Median) {
                let _ = writeln!(
                    s,
                    "{:>8}  {:>9}  median PSNR {:.2}, MSE {:.5}",
                    v, "-", md.psnr_db, md.mse
                );
            }
        }
        let _ = writeln!(
            s,
            "images scored: {}, skipped: {}",
            self.image_count(),
            self.skipped.len()
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgm::write_pgm_file;

    #[test]
    fn seeds_depend_on_name_and_seed() {
        assert_eq!(image_seed(1, "a.pgm"), image_seed(1, "a.pgm"));
        assert_ne!(image_seed(1, "a.pgm"), image_seed(2, "a.pgm"));
        assert_ne!(image_seed(1, "a.pgm"), image_seed(1, "b.pgm"));
    }

    #[test]
    fn default_config() {
        let cfg = BenchConfig::new("x");
        assert_eq!(cfg.noise_variances, vec![0.02, 0.04]);
        assert_eq!(cfg.filters.len(), 5);
        cfg.validate().unwrap();
        let empty = cfg.clone().with_thetas(vec![]);
        assert!(empty.validate().is_err());
    }

    #[test]
    fn constant_image_without_noise_scores_zero() {
        let dir = tempfile::tempdir().unwrap();
        write_pgm_file(
            dir.path().join("flat.pgm"),
            &Image::filled(12, 9, 0.4).unwrap(),
        )
        .unwrap();
        let mut cfg = BenchConfig::new(dir.path());
        cfg.noise_variances = vec![0.0];
        let report = run_bench(&cfg).unwrap();
        assert_eq!(report.rows.len(), 5);
        for r in &report.rows {
            assert_eq!(r.mse, 0.0);
            assert_eq!(r.psnr_db, f64::INFINITY);
        }
    }

    #[test]
    fn skips_unreadable_and_rejects_empty() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("notes.txt"), "hello").unwrap();
        let cfg = BenchConfig::new(dir.path());
        assert!(matches!(run_bench(&cfg), Err(Error::EmptyCorpus(_))));

        write_pgm_file(
            dir.path().join("g.pgm"),
            &Image::from_fn(10, 10, |x, _| x as f64 / 9.0).unwrap(),
        )
        .unwrap();
        let report = run_bench(&cfg).unwrap();
        assert_eq!(report.skipped.len(), 1);
        assert_eq!(report.skipped[0].0, "notes.txt");
        assert_eq!(report.image_count(), 1);
        assert!(report.table().contains("skipped: 1"));
    }

    #[test]
    fn aggregates_are_means_of_rows() {
        let dir = tempfile::tempdir().unwrap();
        for i in 0..3 {
            let img = Image::from_fn(16, 12, |x, y| ((x * (i + 1) + y) % 7) as f64 / 6.0).unwrap();
            write_pgm_file(dir.path().join(format!("img{i}.pgm")), &img).unwrap();
        }
        let report = run_bench(&BenchConfig::new(dir.path())).unwrap();
        assert_eq!(report.aggregates.len(), 10);
        for a in &report.aggregates {
            let m: Vec<f64> = report
                .rows
                .iter()
                .filter(|r| r.noise_variance == a.noise_variance && r.filter == a.filter)
                .map(|r| r.mse)
                .collect();
            assert_eq!(m.len(), 3);
            let mean = m.iter().sum::<f64>() / 3.0;
            assert!((mean - a.mse).abs() <= 1e-12 * mean.max(1.0));
        }
        let table = report.table();
        assert_eq!(table.lines().count(), 1 + 2 * 4 + 1);
        assert!(table.lines().next().unwrap().contains("PSNR adaptive"));
    }
}
