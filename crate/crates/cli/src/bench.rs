//! Repeated hull runs over one instance with per-run statistics.

use std::io::Write;
use std::time::Instant;

use bbhull_core::generators::{Family, GeneratorSpec};
use bbhull_core::geometry::Point;
use bbhull_core::hull::{convex_hull, InsertionOrder};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("summary of an empty list")]
    Empty,
    #[error("runs must be at least 1")]
    NoRuns,
    #[error(transparent)]
    Hull(#[from] bbhull_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// How each run orders its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderPolicy {
    Given,
    /// Run `i` uses `InsertionOrder::Random(seed + i)`.
    Random,
    Lexicographic,
}

impl OrderPolicy {
    fn for_run(self, seed: u64, run: usize) -> InsertionOrder {
        match self {
            OrderPolicy::Given => InsertionOrder::Given,
            OrderPolicy::Random => InsertionOrder::Random(seed.wrapping_add(run as u64)),
            OrderPolicy::Lexicographic => InsertionOrder::Lexicographic,
        }
    }
}

/// A benchmark instance: its point set plus the columns identifying it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    /// `s` for the polygon families, `n` for `cyclic` and `rand-sphere`.
    pub s_n: Option<usize>,
    pub points: Vec<Point>,
}

impl Instance {
    pub fn generated(spec: &GeneratorSpec, polar: bool) -> Result<Self, BenchError> {
        let mut g = spec.generate()?;
        if polar {
            g = g.polar()?;
        }
        let s_n = match spec.family {
            Family::PolygonProduct | Family::DwarfedPolygonProduct => Some(spec.s),
            Family::Cyclic | Family::RandSphere => Some(spec.n),
            _ => None,
        };
        let id = if polar { format!("{}-polar", spec.id()) } else { spec.id() };
        Ok(Instance { id, s_n, points: g.points })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub instance: String,
    pub d: usize,
    pub s_n: Option<usize>,
    pub order: InsertionOrder,
    pub seed: u64,
    pub vertices: usize,
    pub facets: usize,
    pub t_final: usize,
    pub star_of_last: usize,
    pub evaluations: u64,
    /// Wall time, when measured.
    pub millis: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StatsSummary {
    pub avg: f64,
    pub min: f64,
    pub max: f64,
    /// Sample standard deviation; zero for a single value.
    pub stddev: f64,
}

pub fn summarize(values: &[f64]) -> Result<StatsSummary, BenchError> {
    if values.is_empty() {
        return Err(BenchError::Empty);
    }
    let n = values.len() as f64;
    let avg = values.iter().sum::<f64>() / n;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let stddev = if values.len() > 1 {
        (values.iter().map(|x| (x - avg).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Ok(StatsSummary { avg, min, max, stddev })
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub runs: usize,
    pub seed: u64,
    pub order: OrderPolicy,
    /// Measure wall time. Off gives byte-identical output for equal seeds.
    pub timing: bool,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub records: Vec<RunRecord>,
    /// Per metric, in CSV column order.
    pub summary: Vec<(&'static str, StatsSummary)>,
}

pub fn run_bench(instance: &Instance, cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    if cfg.runs == 0 {
        return Err(BenchError::NoRuns);
    }
    let mut records = Vec::with_capacity(cfg.runs);
    for run in 0..cfg.runs {
        let order = cfg.order.for_run(cfg.seed, run);
        let start = Instant::now();
        let hull = convex_hull(&instance.points, order)?;
        let elapsed = start.elapsed();
        records.push(RunRecord {
            instance: instance.id.clone(),
            d: hull.polytope.dim,
            s_n: instance.s_n,
            order,
            seed: match order {
                InsertionOrder::Random(s) => s,
                _ => cfg.seed,
            },
            vertices: hull.polytope.n_vertices(),
            facets: hull.polytope.n_facets(),
            t_final: hull.triangulation.size(),
            star_of_last: hull.stats.star_of_last,
            evaluations: hull.stats.evaluations,
            millis: cfg.timing.then(|| elapsed.as_secs_f64() * 1000.0),
        });
    }

    let metric = |f: fn(&RunRecord) -> f64| -> Result<StatsSummary, BenchError> {
        summarize(&records.iter().map(f).collect::<Vec<_>>())
    };
    let mut summary = vec![
        ("vertices", metric(|r| r.vertices as f64)?),
        ("facets", metric(|r| r.facets as f64)?),
        ("t_final", metric(|r| r.t_final as f64)?),
        ("star_of_last", metric(|r| r.star_of_last as f64)?),
        ("evaluations", metric(|r| r.evaluations as f64)?),
    ];
    if cfg.timing {
        summary.push(("millis", metric(|r| r.millis.unwrap_or(0.0))?));
    }
    Ok(BenchReport { records, summary })
}

pub const CSV_HEADER: [&str; 11] =
    ["instance", "d", "s_n", "order", "seed", "vertices", "facets", "t_final", "star_of_last", "evaluations", "millis"];

fn order_name(order: InsertionOrder) -> &'static str {
    match order {
        InsertionOrder::Given => "given",
        InsertionOrder::Random(_) => "random",
        InsertionOrder::Lexicographic => "lex",
    }
}

pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.instance.clone(),
            r.d.to_string(),
            r.s_n.map(|v| v.to_string()).unwrap_or_default(),
            order_name(r.order).to_string(),
            r.seed.to_string(),
            r.vertices.to_string(),
            r.facets.to_string(),
            r.t_final.to_string(),
            r.star_of_last.to_string(),
            r.evaluations.to_string(),
            r.millis.map(|m| format!("{m:.3}")).unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Plain-text table of a summary.
pub fn format_summary(report: &BenchReport) -> String {
    let mut out = format!("{:<14} {:>14} {:>14} {:>14} {:>14}\n", "metric", "average", "minimum", "maximum", "stddev");
    for (name, s) in &report.summary {
        out.push_str(&format!("{name:<14} {:>14.3} {:>14.3} {:>14.3} {:>14.3}\n", s.avg, s.min, s.max, s.stddev));
    }
    out
}
