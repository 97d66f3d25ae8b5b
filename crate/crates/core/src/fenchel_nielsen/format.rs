//! Plain-text surface files.
//!
//! ```text
//! # comments start with '#'
//! pants P0
//! pants P1
//! glue P0.1 P1.1 length=1.5 twist=0.25
//! boundary P0.3 length=0
//! ```
//!
//! Pants are numbered in declaration order. Cuffs are `1..=3`. Every cuff that
//! is not glued needs a `boundary` line (`length=0` is a cusp). Numbers are
//! written with Rust's shortest round-trip formatting, so write then parse
//! reproduces the coordinates bit for bit.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{CuffRef, FNCoordinates, Gluing, PantsGraph};
use crate::error::{GeoError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSpec {
    pub pants_names: Vec<String>,
    pub graph: PantsGraph,
    pub coords: FNCoordinates,
}

fn perr(line: usize, msg: impl Into<String>) -> GeoError {
    GeoError::Parse { line, msg: msg.into() }
}

impl SurfaceSpec {
    pub fn new(graph: PantsGraph, coords: FNCoordinates) -> Self {
        let pants_names = (0..graph.n_pants).map(|p| format!("P{p}")).collect();
        SurfaceSpec { pants_names, graph, coords }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut gluings = Vec::new();
        let mut lengths = Vec::new();
        let mut twists = Vec::new();
        let mut boundary: Vec<(CuffRef, f64, usize)> = Vec::new();

        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut tok = body.split_whitespace();
            let kw = tok.next().unwrap();
            let rest: Vec<&str> = tok.collect();
            match kw {
                "pants" => {
                    let [name] = rest[..] else {
                        return Err(perr(line, "expected `pants NAME`"));
                    };
                    if index.contains_key(name) || name.contains('.') {
                        return Err(perr(line, format!("bad or duplicate pants name `{name}`")));
                    }
                    index.insert(name.to_string(), names.len());
                    names.push(name.to_string());
                }
                "glue" => {
                    if rest.len() != 4 {
                        return Err(perr(line, "expected `glue A.i B.j length=L twist=T`"));
                    }
                    let a = cuff(&index, rest[0], line)?;
                    let b = cuff(&index, rest[1], line)?;
                    let kv = keyvals(&rest[2..], line)?;
                    lengths.push(need(&kv, "length", line)?);
                    twists.push(need(&kv, "twist", line)?);
                    gluings.push(Gluing { first: a, second: b });
                }
                "boundary" => {
                    if rest.len() != 2 {
                        return Err(perr(line, "expected `boundary A.i length=L`"));
                    }
                    let c = cuff(&index, rest[0], line)?;
                    let kv = keyvals(&rest[1..], line)?;
                    boundary.push((c, need(&kv, "length", line)?, line));
                }
                other => return Err(perr(line, format!("unknown keyword `{other}`"))),
            }
        }
        let graph = PantsGraph { n_pants: names.len(), gluings };
        graph.validate().map_err(|e| perr(0, e.to_string()))?;
        let mut bvals = Vec::new();
        for r in graph.free_cuffs() {
            let hits: Vec<_> = boundary.iter().filter(|(c, _, _)| *c == r).collect();
            match hits[..] {
                [(_, v, _)] => bvals.push(*v),
                [] => {
                    return Err(perr(
                        0,
                        format!("free cuff {}.{} has no boundary line", names[r.pants], r.cuff + 1),
                    ))
                }
                _ => return Err(perr(hits[1].2, "boundary given twice")),
            }
        }
        if let Some((_, _, line)) = boundary.iter().find(|(c, _, _)| !graph.free_cuffs().contains(c)) {
            return Err(perr(*line, "boundary on a glued cuff"));
        }
        Ok(SurfaceSpec {
            pants_names: names,
            graph,
            coords: FNCoordinates { lengths, twists, boundary: bvals },
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for n in &self.pants_names {
            writeln!(s, "pants {n}").unwrap();
        }
        let cname = |r: CuffRef| format!("{}.{}", self.pants_names[r.pants], r.cuff + 1);
        for (e, g) in self.graph.gluings.iter().enumerate() {
            writeln!(
                s,
                "glue {} {} length={:?} twist={:?}",
                cname(g.first),
                cname(g.second),
                self.coords.lengths[e],
                self.coords.twists[e]
            )
            .unwrap();
        }
        for (r, b) in self.graph.free_cuffs().into_iter().zip(&self.coords.boundary) {
            writeln!(s, "boundary {} length={:?}", cname(r), b).unwrap();
        }
        s
    }
}

fn cuff(index: &HashMap<String, usize>, tok: &str, line: usize) -> Result<CuffRef> {
    let (name, k) = tok.rsplit_once('.').ok_or_else(|| perr(line, format!("`{tok}` is not NAME.k")))?;
    let pants = *index.get(name).ok_or_else(|| perr(line, format!("unknown pants `{name}`")))?;
    let k: usize = k.parse().map_err(|_| perr(line, format!("bad cuff index in `{tok}`")))?;
    if !(1..=3).contains(&k) {
        return Err(perr(line, format!("cuff index must be 1..3 in `{tok}`")));
    }
    Ok(CuffRef { pants, cuff: k - 1 })
}

fn keyvals(toks: &[&str], line: usize) -> Result<HashMap<String, f64>> {
    let mut out = HashMap::new();
    for t in toks {
        let (k, v) = t.split_once('=').ok_or_else(|| perr(line, format!("expected key=value, got `{t}`")))?;
        let v: f64 = v.parse().map_err(|_| perr(line, format!("bad number `{v}`")))?;
        if out.insert(k.to_string(), v).is_some() {
            return Err(perr(line, format!("`{k}` given twice")));
        }
    }
    Ok(out)
}

fn need(kv: &HashMap<String, f64>, key: &str, line: usize) -> Result<f64> {
    kv.get(key).copied().ok_or_else(|| perr(line, format!("missing `{key}=`")))
}
