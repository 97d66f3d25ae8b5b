//! Upper bounds for the shortest pants decomposition.
//!
//! The decomposition defining the surface gives `max` of its curve lengths.
//! Each interior curve can be flipped inside the four-holed sphere (or
//! one-holed torus) formed by the two pants meeting along it: the candidates
//! are Dehn-twist images of a curve crossing it once or twice, which are
//! simple and disjoint from every other curve of the decomposition by
//! construction. The shortest candidate gives a new decomposition.

use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::fenchel_nielsen::{cuff_word, word_length, CuffRef, HolonomyRep, PantsGraph};
use crate::word::{self, Letter, Word};

const TWIST_RANGE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flip {
    /// Name of the replaced curve.
    pub replaces: String,
    pub word: String,
    pub length: f64,
    /// Longest curve of the decomposition after the flip.
    pub decomposition_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BersReport {
    /// Interior curves of the defining decomposition with their lengths.
    pub curves: Vec<(String, f64)>,
    /// Longest defining curve.
    pub defining_max: f64,
    pub flips: Vec<Flip>,
    /// Smallest maximum over the defining decomposition and its flips.
    pub upper_bound: f64,
    pub semantics: &'static str,
}

fn power(w: &[Letter], k: i32) -> Word {
    let base = if k < 0 { word::inverse(w) } else { w.to_vec() };
    let mut out = Vec::new();
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    out
}

fn conj(s: &[Letter], w: &[Letter]) -> Word {
    word::reduce(&[s.to_vec(), w.to_vec(), word::inverse(s)].concat())
}

fn next(r: CuffRef, k: usize) -> CuffRef {
    CuffRef { pants: r.pants, cuff: (r.cuff + k) % 3 }
}

/// Candidate curves replacing the curve of gluing `e`.
fn candidates(graph: &PantsGraph, rep: &HolonomyRep, e: usize) -> Vec<Word> {
    let g = graph.gluings[e];
    let stable: Word = rep
        .names
        .iter()
        .position(|n| *n == format!("S{}", e + 1))
        .map(|i| vec![i as Letter + 1])
        .unwrap_or_default();
    let mut out = Vec::new();
    if g.first.pants == g.second.pants {
        // one-holed torus: the stable letter crosses the cuff once
        let x = cuff_word(g.first);
        for k in -TWIST_RANGE..=TWIST_RANGE {
            out.push(word::reduce(&[stable.clone(), power(&x, k)].concat()));
        }
        return out;
    }
    let q1 = cuff_word(next(g.first, 1));
    let q2 = cuff_word(next(g.first, 2));
    let q3 = conj(&stable, &cuff_word(next(g.second, 1)));
    let c = [q1.clone(), q2.clone()].concat();
    for k in -TWIST_RANGE..=TWIST_RANGE {
        let ck = power(&c, k);
        let moved = word::reduce(&[ck.clone(), q3.clone(), word::inverse(&ck)].concat());
        out.push(word::reduce(&[q2.clone(), moved.clone()].concat()));
        out.push(word::reduce(&[q1.clone(), moved].concat()));
    }
    out
}

fn render(rep: &HolonomyRep, w: &[Letter]) -> String {
    w.iter()
        .map(|&l| {
            let n = &rep.names[(l.unsigned_abs() - 1) as usize];
            if l < 0 {
                format!("{n}^-1")
            } else {
                n.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Upper bound for the Bers constant of the surface of `rep`, which must be
/// the holonomy of `graph`.
pub fn bers_upper(graph: &PantsGraph, rep: &HolonomyRep) -> Result<BersReport> {
    let sig = graph.validate()?;
    let expected = 3 * sig.genus + sig.boundaries;
    if graph.gluings.len() + 3 != expected {
        return Err(GeoError::Structural("graph is not a pants decomposition".into()));
    }
    if rep.names.len() < 2 * graph.n_pants || rep.names.first().map(String::as_str) != Some("P0.1") {
        return Err(GeoError::Structural("representation does not come from the pants graph".into()));
    }
    let mut curves = Vec::new();
    for (e, g) in graph.gluings.iter().enumerate() {
        curves.push((format!("c{}", e + 1), word_length(rep, &cuff_word(g.first))?));
    }
    let defining_max = curves.iter().map(|c| c.1).fold(0.0, f64::max);
    let mut flips = Vec::new();
    for e in 0..graph.gluings.len() {
        let mut best: Option<(Word, f64)> = None;
        for w in candidates(graph, rep, e) {
            let Ok(l) = word_length(rep, &w) else { continue };
            if best.as_ref().is_none_or(|(_, b)| l < *b) {
                best = Some((w, l));
            }
        }
        if let Some((w, l)) = best {
            let rest = curves.iter().enumerate().filter(|(i, _)| *i != e).map(|(_, c)| c.1);
            let decomposition_max = rest.fold(l, f64::max);
            flips.push(Flip { replaces: curves[e].0.clone(), word: render(rep, &w), length: l, decomposition_max });
        }
    }
    let upper_bound = flips.iter().map(|f| f.decomposition_max).fold(defining_max, f64::min);
    Ok(BersReport {
        curves,
        defining_max,
        flips,
        upper_bound,
        semantics: "upper bound on the Bers constant; not the constant itself",
    })
}
