//! Command dispatch. Every output carries the toolkit version and the
//! resolved configuration.

use std::path::Path;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use geowb::extremal::{self, Genus2Search, Status};
use geowb::fenchel_nielsen::format::SurfaceSpec;
use geowb::fenchel_nielsen::{holonomy, FNCoordinates, HolonomyRep, OneHoledTorus, PantsGraph};
use geowb::onetorus::{self, TraceTriple};
use geowb::{markov, spectra, GeoError};

use crate::config::{ExperimentConfig, Format};
use crate::plot;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, configuration or surface: exit code 2.
    Usage(String),
    /// A search hit its cap or budget: exit code 1.
    Inconclusive(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Inconclusive(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Inconclusive(m) => write!(f, "inconclusive: {m}"),
        }
    }
}

impl From<GeoError> for CliError {
    fn from(e: GeoError) -> Self {
        match e {
            GeoError::Inconclusive(m) => CliError::Inconclusive(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Output of a successful run; `inconclusive` runs still produce a document.
pub struct Outcome {
    pub body: String,
    pub inconclusive: bool,
}

pub enum Surface {
    Torus(OneHoledTorus),
    General { graph: PantsGraph, coords: FNCoordinates },
}

impl Surface {
    fn rep(&self) -> Result<HolonomyRep, CliError> {
        Ok(match self {
            Surface::Torus(t) => t.rep(),
            Surface::General { graph, coords } => holonomy(graph, coords)?,
        })
    }

    fn graph_rep(&self) -> Result<(PantsGraph, HolonomyRep), CliError> {
        Ok(match self {
            Surface::Torus(t) => {
                let g = PantsGraph::one_holed_torus();
                let rep = holonomy(&g, &FNCoordinates::one_holed_torus(t.length, t.twist, t.boundary))?;
                (g, rep)
            }
            Surface::General { graph, coords } => (graph.clone(), holonomy(graph, coords)?),
        })
    }

    fn torus(&self, what: &str) -> Result<&OneHoledTorus, CliError> {
        match self {
            Surface::Torus(t) => Ok(t),
            Surface::General { .. } => Err(CliError::Usage(format!("{what} needs a one-holed torus"))),
        }
    }
}

fn numbers(s: &str, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("`{what}` expects {n} comma-separated numbers")))?;
    if v.len() != n {
        return Err(CliError::Usage(format!("`{what}` expects {n} comma-separated numbers")));
    }
    Ok(v)
}

/// `modular-torus`, `torus:LENGTH,TWIST,BOUNDARY`,
/// `genus2:L1,L2,L3,T1,T2,T3` or the path of a surface file.
pub fn load_surface(spec: &str) -> Result<Surface, CliError> {
    if spec == "modular-torus" {
        return Ok(Surface::Torus(OneHoledTorus::modular()));
    }
    if let Some(rest) = spec.strip_prefix("torus:") {
        let v = numbers(rest, 3, "torus:")?;
        return Ok(Surface::Torus(OneHoledTorus::new(v[0], v[1], v[2])?));
    }
    if let Some(rest) = spec.strip_prefix("genus2:") {
        let v = numbers(rest, 6, "genus2:")?;
        return Ok(Surface::General {
            graph: PantsGraph::genus2_theta(),
            coords: FNCoordinates::closed(v[..3].to_vec(), v[3..].to_vec()),
        });
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(CliError::Usage(format!(
            "unknown surface `{spec}`: expected modular-torus, torus:L,T,B, genus2:L1,L2,L3,T1,T2,T3 or a surface file"
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
    let s = SurfaceSpec::parse(&text)?;
    if s.graph == PantsGraph::one_holed_torus() {
        let c = &s.coords;
        return Ok(Surface::Torus(OneHoledTorus::new(c.lengths[0], c.twists[0], c.boundary[0])?));
    }
    Ok(Surface::General { graph: s.graph, coords: s.coords })
}

fn wrap_json(cfg: &ExperimentConfig, result: impl Serialize) -> String {
    let doc = json!({
        "geowb_version": VERSION,
        "config": cfg,
        "result": result,
    });
    serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
}

fn csv_header(cfg: &ExperimentConfig) -> String {
    let mut s = format!("# geowb {VERSION}\n");
    for line in cfg.to_text().lines() {
        s.push_str("# ");
        s.push_str(line);
        s.push('\n');
    }
    s
}

fn need<T: Copy>(v: Option<T>, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing {what}")))
}

/// Run a resolved configuration.
pub fn run(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let done = |body: String| Ok(Outcome { body, inconclusive: false });
    match cfg.command.as_str() {
        "spectrum" => {
            let surface = load_surface(cfg.surface.as_deref().unwrap_or_default())?;
            let cutoff = need(cfg.cutoff, "cutoff")?;
            if cfg.simple == Some(true) {
                let t = surface.torus("--simple")?;
                let spec = onetorus::trace_tree(&TraceTriple::from_torus(t), cutoff)?;
                match cfg.format {
                    Some(Format::Json) => done(wrap_json(cfg, &spec)),
                    _ => done(csv_header(cfg) + &spec.to_csv()),
                }
            } else {
                let rep = surface.rep()?;
                let en = spectra::enumerate_with_budget(&rep, cutoff, need(cfg.budget, "budget")?)?;
                match cfg.format {
                    Some(Format::Json) => done(wrap_json(cfg, &en)),
                    _ => done(csv_header(cfg) + &en.to_csv(&rep.names)),
                }
            }
        }
        "extremal" => {
            let run = match cfg.surface.as_deref() {
                Some("genus2") => {
                    let search = Genus2Search {
                        starts: need(cfg.budget, "budget")? as usize,
                        seed: need(cfg.seed, "seed")?,
                        ..Genus2Search::default()
                    };
                    extremal::maximize_genus2_systole(&search)?
                }
                _ => extremal::maximize_torus_systole(need(cfg.boundary, "boundary")?)?,
            };
            Ok(Outcome { body: wrap_json(cfg, &run), inconclusive: run.status == Status::BudgetExhausted })
        }
        "plot" => {
            let surface = load_surface(cfg.surface.as_deref().unwrap_or_default())?;
            let t = surface.torus("plot")?;
            let p = plot::fold_simple_geodesics(t, need(cfg.slope_bound, "slope bound")? as usize)?;
            let header = format!("geowb {VERSION}\n{}", cfg.to_text());
            done(p.to_svg(need(cfg.resolution, "resolution")? as usize, &header))
        }
        "markov" => {
            let bound = need(cfg.bound, "bound")?;
            let scan = markov::frobenius_scan(&BigUint::from(bound));
            let corr = cfg.correspond.map(markov::modular_correspondence).transpose()?;
            done(wrap_json(cfg, markov::report_json(&scan, corr.as_ref())))
        }
        "bers" => {
            let surface = load_surface(cfg.surface.as_deref().unwrap_or_default())?;
            let (graph, rep) = surface.graph_rep()?;
            done(wrap_json(cfg, spectra::bers_upper(&graph, &rep)?))
        }
        "huber" => {
            let surface = load_surface(cfg.surface.as_deref().unwrap_or_default())?;
            let top = need(cfg.cutoff, "cutoff")?;
            let grid: Vec<f64> = (0..).map(|k| 6.0 + 0.5 * k as f64).take_while(|l| *l <= top + 1e-12).collect();
            done(wrap_json(cfg, spectra::huber_check(&surface.rep()?, &grid)?))
        }
        "gendulphe" => done(wrap_json(cfg, spectra::gendulphe_constant())),
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    }
}
