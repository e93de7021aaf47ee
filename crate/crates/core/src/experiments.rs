//! Ranking experiments: how often does a length function put a correct
//! first generator of a random sentence near the top of the ranking?
//!
//! Each sample draws `NG` generators of `WL` random Artin letters on `NS`
//! strands and a sentence `X` of `SL` of them. Every signed generator
//! `a_i^ε` is scored by the length of `a_i^{−ε} X`; the best position of a
//! correct first generator is histogrammed over samples.
//!
//! Randomness comes from ChaCha8 streams keyed by `(seed, sample index)`,
//! so results do not depend on evaluation order or thread count.

use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lengths::LengthMetric;
use crate::simple::Kind;
use crate::solver::random_artin_word;
use crate::structure::Structure;
use crate::word::BraidWord;

const GENERATION_STREAM: u64 = 0;
const RANKING_STREAM: u64 = 1;

/// Positions plotted by default.
pub const PLOT_POSITIONS: usize = 35;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub ns: usize,
    pub wl: usize,
    pub ng: usize,
    pub sl: usize,
    pub samples: usize,
    pub metric: LengthMetric,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            ns: 16,
            wl: 8,
            ng: 32,
            sl: 16,
            samples: 200,
            metric: LengthMetric::RationalBkl,
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidConfig(what.to_string()));
        if self.ns < 2 {
            return bad("ns must be at least 2");
        }
        if self.ns > crate::structure::MAX_STRANDS {
            return bad("ns exceeds the supported strand count");
        }
        if self.wl == 0 {
            return bad("wl must be at least 1");
        }
        if self.ng == 0 {
            return bad("ng must be at least 1");
        }
        if self.sl == 0 {
            return bad("sl must be at least 1");
        }
        if self.samples == 0 {
            return bad("samples must be at least 1");
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_metric(&self, metric: LengthMetric) -> Self {
        ExperimentConfig {
            metric,
            ..self.clone()
        }
    }
}

/// Stream `stream` of the generator for sample `index`.
pub fn sample_rng(seed: u64, index: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed ^ splitmix(index)));
    rng.set_stream(stream);
    rng
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentSample {
    pub index: u64,
    pub generators: Vec<BraidWord>,
    /// 0-based generator indices `i_1..i_SL`.
    pub sentence_indices: Vec<usize>,
    pub sentence: BraidWord,
    /// 0-based, ascending; empty until computed.
    pub cor: Vec<usize>,
    /// 1-based; `None` until ranked.
    pub best_position: Option<usize>,
}

/// Generators and sentence of sample `index`; `i_j = (j−1 mod NG)+1`.
pub fn gen_sample(cfg: &ExperimentConfig, index: u64) -> ExperimentSample {
    let mut rng = sample_rng(cfg.seed, index, GENERATION_STREAM);
    let generators: Vec<BraidWord> = (0..cfg.ng)
        .map(|_| random_artin_word(&mut rng, cfg.ns, cfg.wl))
        .collect();
    let sentence_indices: Vec<usize> = (0..cfg.sl).map(|j| j % cfg.ng).collect();
    let sentence = BraidWord::product(
        Kind::Artin,
        cfg.ns,
        sentence_indices.iter().map(|&i| &generators[i]),
    )
    .expect("same presentation");
    ExperimentSample {
        index,
        generators,
        sentence_indices,
        sentence,
        cor: Vec::new(),
        best_position: None,
    }
}

/// Generators `a_i` occurring in the sentence with `X` equal to `a_i`
/// followed by the sentence with the first occurrence of `a_i` removed.
pub fn compute_cor(sample: &ExperimentSample) -> Vec<usize> {
    let n = sample.sentence.strands();
    let st = Structure::artin(n);
    let x = st.greedy_nf(&sample.sentence).expect("artin sentence");
    let mut cor = Vec::new();
    for i in 0..sample.generators.len() {
        let Some(first) = sample.sentence_indices.iter().position(|&g| g == i) else {
            continue;
        };
        let reordered = std::iter::once(i)
            .chain(sample.sentence_indices[..first].iter().copied())
            .chain(sample.sentence_indices[first + 1..].iter().copied());
        let word = BraidWord::product(Kind::Artin, n, reordered.map(|g| &sample.generators[g]))
            .expect("same presentation");
        if st.greedy_nf(&word).expect("artin word") == x {
            cor.push(i);
        }
    }
    cor
}

/// A signed generator with its score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ranked {
    pub generator: usize,
    pub inverse: bool,
    pub score: u64,
}

/// Scores `metric(a_i^{−ε} X)` for every signed generator, in the order
/// `(a_1,+), (a_1,−), (a_2,+), …`.
pub fn score_generators(sample: &ExperimentSample, metric: LengthMetric) -> Vec<Ranked> {
    let kind = metric.kind();
    let st = Structure::new(kind, sample.sentence.strands()).expect("valid strand count");
    let x = st
        .greedy_nf(&sample.sentence.to_kind(kind))
        .expect("sentence");
    let mut out = Vec::with_capacity(2 * sample.generators.len());
    for (i, g) in sample.generators.iter().enumerate() {
        let g = g.to_kind(kind);
        for inverse in [false, true] {
            let peel = if inverse { g.clone() } else { g.inverse() };
            let nf = st.nf_left_mul_word(&peel, &x).expect("same structure");
            out.push(Ranked {
                generator: i,
                inverse,
                score: metric.evaluate_nf(&st, &nf),
            });
        }
    }
    out
}

/// Ascending by score; each run of equal scores is shuffled with `rng`.
pub fn rank_generators(
    sample: &ExperimentSample,
    metric: LengthMetric,
    rng: &mut ChaCha8Rng,
) -> Vec<Ranked> {
    let mut ranked = score_generators(sample, metric);
    ranked.sort_by_key(|r| r.score);
    shuffle_ties(&mut ranked, rng);
    ranked
}

/// Shuffles each maximal run of equal scores in a sorted ranking.
pub fn shuffle_ties(ranked: &mut [Ranked], rng: &mut ChaCha8Rng) {
    let mut start = 0;
    while start < ranked.len() {
        let score = ranked[start].score;
        let end = start
            + ranked[start..]
                .iter()
                .take_while(|r| r.score == score)
                .count();
        ranked[start..end].shuffle(rng);
        start = end;
    }
}

/// 1-based position of the best-ranked `(i,+)` with `i ∈ cor`.
pub fn best_position(ranked: &[Ranked], cor: &[usize]) -> Option<usize> {
    ranked
        .iter()
        .position(|r| !r.inverse && cor.contains(&r.generator))
        .map(|p| p + 1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub metric: LengthMetric,
    pub samples: usize,
    /// `histogram[p−1]` counts samples with best position `p`.
    pub histogram: Vec<u64>,
    /// `cumulative[p−1]` is the fraction with best position `≤ p`.
    pub cumulative: Vec<f64>,
}

impl ExperimentResult {
    pub fn from_positions(metric: LengthMetric, positions_total: usize, best: &[usize]) -> Self {
        let mut histogram = vec![0u64; positions_total];
        for &p in best {
            histogram[p - 1] += 1;
        }
        let samples = best.len();
        let mut running = 0u64;
        let cumulative = histogram
            .iter()
            .map(|&c| {
                running += c;
                running as f64 / samples as f64
            })
            .collect();
        ExperimentResult {
            metric,
            samples,
            histogram,
            cumulative,
        }
    }

    /// Fraction of samples with best position at most `p`.
    pub fn at_most(&self, p: usize) -> f64 {
        match p {
            0 => 0.0,
            p => self.cumulative[(p - 1).min(self.cumulative.len() - 1)],
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("position,count,probability,cumulative\n");
        for (i, (&count, &cum)) in self.histogram.iter().zip(&self.cumulative).enumerate() {
            let prob = count as f64 / self.samples as f64;
            writeln!(out, "{},{count},{prob:?},{cum:?}", i + 1).expect("write to string");
        }
        out
    }
}

/// Best positions per sample, one vector per metric, sharing samples.
fn best_positions(cfg: &ExperimentConfig, metrics: &[LengthMetric]) -> Result<Vec<Vec<usize>>> {
    cfg.validate()?;
    let per_sample: Vec<Vec<usize>> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|index| {
            let sample = gen_sample(cfg, index);
            let cor = compute_cor(&sample);
            metrics
                .iter()
                .map(|&metric| {
                    let mut rng = sample_rng(cfg.seed, index, RANKING_STREAM);
                    let ranked = rank_generators(&sample, metric, &mut rng);
                    best_position(&ranked, &cor).expect("first generator is always correct")
                })
                .collect()
        })
        .collect();
    Ok((0..metrics.len())
        .map(|m| per_sample.iter().map(|b| b[m]).collect())
        .collect())
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let best = best_positions(cfg, &[cfg.metric])?;
    Ok(ExperimentResult::from_positions(
        cfg.metric,
        2 * cfg.ng,
        &best[0],
    ))
}

/// Runs the sample and ranks it; fills `cor` and `best_position`.
pub fn run_sample(cfg: &ExperimentConfig, index: u64) -> ExperimentSample {
    let mut sample = gen_sample(cfg, index);
    sample.cor = compute_cor(&sample);
    let mut rng = sample_rng(cfg.seed, index, RANKING_STREAM);
    let ranked = rank_generators(&sample, cfg.metric, &mut rng);
    sample.best_position = best_position(&ranked, &sample.cor);
    sample
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    /// Usually the BKL curve.
    pub upper: ExperimentResult,
    /// Usually the Artin curve.
    pub lower: ExperimentResult,
    pub positions: usize,
    /// `upper − lower` cumulative, for positions `1..=positions`.
    pub differences: Vec<f64>,
    pub fraction_nonnegative: f64,
    /// Sum of the differences (unit spacing).
    pub area: f64,
}

/// Both metrics on the same samples, compared over the first `positions`.
pub fn compare_metrics(
    cfg: &ExperimentConfig,
    upper: LengthMetric,
    lower: LengthMetric,
    positions: usize,
) -> Result<Comparison> {
    let best = best_positions(cfg, &[upper, lower])?;
    let total = 2 * cfg.ng;
    let upper = ExperimentResult::from_positions(upper, total, &best[0]);
    let lower = ExperimentResult::from_positions(lower, total, &best[1]);
    Ok(compare_results(upper, lower, positions))
}

pub fn compare_results(
    upper: ExperimentResult,
    lower: ExperimentResult,
    positions: usize,
) -> Comparison {
    let positions = positions.min(upper.cumulative.len()).max(1);
    let differences: Vec<f64> = (1..=positions)
        .map(|p| upper.at_most(p) - lower.at_most(p))
        .collect();
    let nonneg = differences.iter().filter(|&&d| d >= 0.0).count();
    Comparison {
        fraction_nonnegative: nonneg as f64 / positions as f64,
        area: differences.iter().sum(),
        differences,
        positions,
        upper,
        lower,
    }
}

/// Cumulative curves as SVG polylines over the first `positions`.
pub fn render_svg(results: &[&ExperimentResult], positions: usize) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 40.0;
    const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    let span = positions.saturating_sub(1).max(1) as f64;
    let x = |p: usize| PAD + (p - 1) as f64 / span * (W - 2.0 * PAD);
    let y = |v: f64| H - PAD - v * (H - 2.0 * PAD);
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<rect width="{W}" height="{H}" fill="white"/><line x1="{PAD}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/><line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{b}" stroke="black"/>"#,
        b = H - PAD,
        r = W - PAD
    )
    .unwrap();
    for (k, res) in results.iter().enumerate() {
        let count = positions.min(res.cumulative.len());
        let points: Vec<String> = (1..=count)
            .map(|p| format!("{:.2},{:.2}", x(p), y(res.at_most(p))))
            .collect();
        writeln!(
            svg,
            r#"<polyline data-metric="{}" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            res.metric,
            COLORS[k % COLORS.len()],
            points.join(" ")
        )
        .unwrap();
        writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="12" fill="{}">{}</text>"#,
            W - PAD - 120.0,
            PAD + 16.0 * (k + 1) as f64,
            COLORS[k % COLORS.len()],
            res.metric
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

/// Writes the CSV of each result to `csv_path` (one file per result, the
/// metric name inserted before the extension when there are several) and
/// optionally the SVG plot.
pub fn emit_results(
    results: &[&ExperimentResult],
    csv_path: &Path,
    svg_path: Option<&Path>,
) -> std::io::Result<Vec<std::path::PathBuf>> {
    let mut written = Vec::new();
    for res in results {
        let path = if results.len() == 1 {
            csv_path.to_path_buf()
        } else {
            let stem = csv_path.file_stem().unwrap_or_default().to_string_lossy();
            let ext = csv_path
                .extension()
                .map(|e| format!(".{}", e.to_string_lossy()))
                .unwrap_or_default();
            csv_path.with_file_name(format!("{stem}-{}{ext}", res.metric))
        };
        std::fs::write(&path, res.to_csv())?;
        written.push(path);
    }
    if let Some(svg) = svg_path {
        std::fs::write(svg, render_svg(results, PLOT_POSITIONS))?;
        written.push(svg.to_path_buf());
    }
    Ok(written)
}
