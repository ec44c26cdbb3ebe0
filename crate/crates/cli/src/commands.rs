//! Subcommand definitions and their implementations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use bbhull_core::arith::Scalar;
use bbhull_core::generators::{Family, GeneratorSpec};
use bbhull_core::geometry::{polar, Halfspace, Point, Triangulation};
use bbhull_core::hull::{convex_hull, Hull, InsertionOrder};
use bbhull_core::oracle::{enumerate_faces, validate_triangulation, IncidenceMatrix};

use crate::bench::{self, BenchConfig, BenchError, Instance, OrderPolicy};
use crate::format::{self, PolyFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 1 usage, 2 unreadable or malformed input, 3 validation or geometric
    /// failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. } => 2,
            CliError::Invalid(_) | CliError::Failed(_) => 3,
        }
    }
}

impl From<bbhull_core::Error> for CliError {
    fn from(e: bbhull_core::Error) -> Self {
        match e {
            bbhull_core::Error::InvalidParameter(m) => CliError::Usage(m),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Hull(e) => e.into(),
            BenchError::NoRuns => CliError::Usage(e.to_string()),
            e => CliError::Failed(e.to_string()),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Parse { path: path.display().to_string(), message: e.to_string() }
}

#[derive(Debug, Parser)]
#[command(name = "bbhull", version, about = "Exact convex hulls by Beneath-and-Beyond")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a benchmark polytope as a POLY file.
    Generate {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[command(flatten)]
        params: Params,
        /// Generator seed (rand-sphere).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute vertices and facets of the V section of a POLY file.
    Hull {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Given)]
        order: Order,
        /// Seed for `--order random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append operation counts as comment lines.
        #[arg(long)]
        stats: bool,
        /// Write the placing triangulation to this file.
        #[arg(long)]
        triangulation_out: Option<PathBuf>,
    },
    /// Check a triangulation of the V section of a POLY file.
    Validate {
        file: PathBuf,
        #[arg(long)]
        triangulation: PathBuf,
    },
    /// Print the f-vector of the hull of the V section.
    Fvector { file: PathBuf },
    /// Polar dual around an interior point, as a V section.
    Polar {
        file: PathBuf,
        /// Comma-separated rationals, e.g. "1/2,1/2,1/2".
        #[arg(long, allow_hyphen_values = true)]
        interior: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Repeat hull computations and report counts per run.
    Bench {
        /// A family name or a POLY file.
        target: String,
        #[command(flatten)]
        params: Params,
        /// Generator seed (rand-sphere).
        #[arg(long, default_value_t = 0)]
        instance_seed: u64,
        /// Benchmark the polar dual of the generated polytope.
        #[arg(long)]
        polar: bool,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        /// Run i of a random order uses seed + i.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Order::Random)]
        order: Order,
        /// CSV output file; standard output if omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Leave the millis column empty, making output reproducible.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Debug, Args)]
pub struct Params {
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value_t = 3)]
    pub s: usize,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub a: usize,
    #[arg(long, default_value_t = 1)]
    pub b: usize,
}

impl Params {
    fn spec(&self, family: Family, seed: u64) -> GeneratorSpec {
        GeneratorSpec::new(family).with_d(self.d).with_s(self.s).with_n(self.n).with_ab(self.a, self.b).with_seed(seed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Given,
    Random,
    Lex,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        format!("unknown family {s:?}; expected one of {}", names.join(", "))
    })
}

fn read_poly(path: &Path) -> Result<PolyFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    format::parse_poly(&text).map_err(|e| CliError::Parse { path: path.display().to_string(), message: e.to_string() })
}

fn read_points(path: &Path) -> Result<Vec<Point>, CliError> {
    read_poly(path)?.points.ok_or_else(|| CliError::Parse {
        path: path.display().to_string(),
        message: "no `V` section".into(),
    })
}

fn emit(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Failed(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Failed(e.to_string())),
    }
}

/// Facets of the hull, followed by each affine-hull equation as a pair of
/// opposite inequalities.
fn hull_poly(h: &Hull) -> PolyFile {
    let p = &h.polytope;
    let mut rows: Vec<Halfspace> = p.halfspaces();
    for e in &p.affine_hull {
        rows.push(e.clone());
        rows.push(e.flipped());
    }
    PolyFile::from_points(p.ambient_dim(), p.vertices()).with_halfspaces(&rows)
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Generate { family, params, seed, output } => {
            let g = params.spec(family, seed).generate()?;
            let mut file = PolyFile::from_points(g.ambient_dim(), g.points);
            if let Some(ineqs) = &g.inequalities {
                file = file.with_halfspaces(ineqs);
            }
            emit(output.as_deref(), &format::write_poly(&file), stdout)
        }
        Command::Hull { file, order, seed, stats, triangulation_out } => {
            let points = read_points(&file)?;
            let order = match order {
                Order::Given => InsertionOrder::Given,
                Order::Random => InsertionOrder::Random(seed),
                Order::Lex => InsertionOrder::Lexicographic,
            };
            let h = convex_hull(&points, order)?;
            let mut text = format::write_poly(&hull_poly(&h));
            if stats {
                let s = &h.stats;
                text.push_str(&format!(
                    "# order {order}\n# dim {}\n# vertices {}\n# facets {}\n# cells {}\n# star_of_last {}\n# evaluations {}\n# simplices_created {}\n",
                    h.polytope.dim,
                    h.polytope.n_vertices(),
                    h.polytope.n_facets(),
                    h.triangulation.size(),
                    s.star_of_last,
                    s.evaluations,
                    s.simplices_created,
                ));
            }
            if let Some(path) = triangulation_out {
                let t = format::write_triangulation(h.triangulation.dim(), h.triangulation.cells());
                emit(Some(&path), &t, stdout)?;
            }
            emit(None, &text, stdout)
        }
        Command::Validate { file, triangulation } => {
            let poly = read_poly(&file)?;
            let points = read_points(&file)?;
            let text = fs::read_to_string(&triangulation).map_err(|e| io_error(&triangulation, e))?;
            let (dim, cells) = format::parse_triangulation(&text).map_err(|e| CliError::Parse {
                path: triangulation.display().to_string(),
                message: e.to_string(),
            })?;
            let h = convex_hull(&points, InsertionOrder::Given)?;
            if dim != h.polytope.dim {
                return Err(CliError::Invalid(format!("triangulation has dimension {dim}, the hull {}", h.polytope.dim)));
            }
            let t = Triangulation::new(h.triangulation.points().to_vec(), cells, dim)
                .map_err(|e| CliError::Invalid(format!("malformed triangulation: {e}")))?;
            let r = validate_triangulation(&t, &h.polytope)?;
            let mut out = String::new();
            out.push_str(&format!("cells {}\nvolume {}\nhull_volume {}\n", t.size(), r.volume_total, r.hull_volume));
            let hist: Vec<String> = r.ridge_histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            out.push_str(&format!("ridge_histogram {}\n", hist.join(" ")));
            out.push_str(&format!(
                "cells_ok {}\nboundary_ok {}\ncover_ok {}\nvertices_ok {}\n",
                r.cells_ok, r.boundary_ok, r.cover_ok, r.vertices_ok
            ));
            for m in &r.mismatches {
                out.push_str(&format!("# {m}\n"));
            }
            let mut valid = r.is_valid();
            if let Some(given) = poly.halfspaces() {
                let given: std::collections::BTreeSet<Halfspace> = given?.into_iter().collect();
                let mut computed = h.polytope.facet_set();
                for e in &h.polytope.affine_hull {
                    computed.insert(e.clone());
                    computed.insert(e.flipped());
                }
                let same = given == computed;
                out.push_str(&format!("facets_ok {same}\n"));
                valid &= same;
            }
            out.push_str(if valid { "valid\n" } else { "invalid\n" });
            emit(None, &out, stdout)?;
            if valid {
                Ok(())
            } else {
                Err(CliError::Invalid("triangulation failed validation".into()))
            }
        }
        Command::Fvector { file } => {
            let points = read_points(&file)?;
            let h = convex_hull(&points, InsertionOrder::Given)?;
            let inc = IncidenceMatrix::from_polytope(&h.polytope)?;
            let f = enumerate_faces(&inc, &h.polytope.vertices(), h.polytope.dim)?;
            let f: Vec<String> = f.iter().map(usize::to_string).collect();
            emit(None, &format!("{}\n", f.join(" ")), stdout)
        }
        Command::Polar { file, interior, output } => {
            let poly = read_poly(&file)?;
            let c = format::parse_point(&interior).map_err(CliError::Usage)?;
            if c.dim() != poly.dim {
                return Err(CliError::Usage(format!("interior point has {} coordinates, the file {}", c.dim(), poly.dim)));
            }
            let (facets, vertices) = match (poly.halfspaces(), &poly.points) {
                (Some(hs), _) => (hs?, None),
                (None, Some(points)) => {
                    let h = convex_hull(points, InsertionOrder::Given)?;
                    (h.polytope.halfspaces(), Some(h.polytope.vertices()))
                }
                (None, None) => unreachable!("parser requires a section"),
            };
            let dual = polar(&facets, &c)?;
            let mut file = PolyFile::from_points(poly.dim, dual);
            if let Some(vertices) = vertices {
                // vertex v gives 1 - (v - c).y >= 0
                let rows = vertices
                    .iter()
                    .map(|v| Halfspace::new(Scalar::one(), v.coords().sub(c.coords()).scale(&Scalar::from(-1))))
                    .collect::<Result<Vec<_>, _>>()?;
                file = file.with_halfspaces(&rows);
            }
            emit(output.as_deref(), &format::write_poly(&file), stdout)
        }
        Command::Bench { target, params, instance_seed, polar, runs, seed, order, csv, no_timing } => {
            let instance = match parse_family(&target) {
                Ok(family) => Instance::generated(&params.spec(family, instance_seed), polar)?,
                Err(_) if Path::new(&target).exists() => {
                    if polar {
                        return Err(CliError::Usage("--polar applies to generated families only".into()));
                    }
                    let path = Path::new(&target);
                    let id = path.file_stem().map_or_else(|| target.clone(), |s| s.to_string_lossy().into_owned());
                    Instance { id, s_n: None, points: read_points(path)? }
                }
                Err(e) => return Err(CliError::Usage(format!("{e}, and no file {target:?} exists"))),
            };
            let order = match order {
                Order::Given => OrderPolicy::Given,
                Order::Random => OrderPolicy::Random,
                Order::Lex => OrderPolicy::Lexicographic,
            };
            let cfg = BenchConfig { runs, seed, order, timing: !no_timing };
            let report = bench::run_bench(&instance, &cfg)?;
            let summary = bench::format_summary(&report);
            match csv {
                Some(path) => {
                    let f = fs::File::create(&path).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))?;
                    bench::write_csv(&report.records, f)?;
                    emit(None, &summary, stdout)
                }
                None => {
                    bench::write_csv(&report.records, &mut *stdout)?;
                    eprint!("{summary}");
                    Ok(())
                }
            }
        }
    }
}
