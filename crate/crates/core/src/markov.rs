//! Markov triples `a² + b² + c² = 3abc` in exact integer arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::error::Result;
use crate::fenchel_nielsen::OneHoledTorus;
use crate::onetorus::{self, TraceTriple};

/// Sorted `a <= b <= c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkovTriple {
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
}

impl MarkovTriple {
    pub fn root() -> Self {
        let one = BigUint::one();
        MarkovTriple { a: one.clone(), b: one.clone(), c: one }
    }

    pub fn new(x: BigUint, y: BigUint, z: BigUint) -> Self {
        let mut v = [x, y, z];
        v.sort();
        let [a, b, c] = v;
        MarkovTriple { a, b, c }
    }

    pub fn satisfies_cubic(&self) -> bool {
        let lhs = &self.a * &self.a + &self.b * &self.b + &self.c * &self.c;
        let rhs = BigUint::from(3u32) * &self.a * &self.b * &self.c;
        lhs == rhs
    }

    /// The two neighbours whose maximum is at least `c`.
    pub fn children(&self) -> [MarkovTriple; 2] {
        let three = BigUint::from(3u32);
        let (a, b, c) = (&self.a, &self.b, &self.c);
        [
            MarkovTriple::new(b.clone(), c.clone(), &three * b * c - a),
            MarkovTriple::new(a.clone(), c.clone(), &three * a * c - b),
        ]
    }

    fn to_json(&self) -> Value {
        json!([big_json(&self.a), big_json(&self.b), big_json(&self.c)])
    }
}

fn big_json(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// All triples with largest entry `<= bound`.
pub fn markov_tree(bound: &BigUint) -> BTreeSet<MarkovTriple> {
    let mut out = BTreeSet::new();
    let root = MarkovTriple::root();
    if &root.c > bound {
        return out;
    }
    let mut stack = vec![root];
    while let Some(t) = stack.pop() {
        for ch in t.children() {
            if &ch.c <= bound && !out.contains(&ch) && ch != t {
                stack.push(ch);
            }
        }
        out.insert(t);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusReport {
    pub bound: BigUint,
    pub triples: usize,
    /// Markov numbers in increasing order.
    pub markov_numbers: Vec<BigUint>,
    /// Maxima reached by more than one triple.
    pub collisions: Vec<(BigUint, Vec<MarkovTriple>)>,
}

impl FrobeniusReport {
    pub fn unique(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// Count triples per maximum up to `bound`; a collision would be a
/// counterexample to uniqueness.
pub fn frobenius_scan(bound: &BigUint) -> FrobeniusReport {
    let triples = markov_tree(bound);
    let mut by_max: BTreeMap<BigUint, Vec<MarkovTriple>> = BTreeMap::new();
    let mut numbers = BTreeSet::new();
    for t in &triples {
        by_max.entry(t.c.clone()).or_default().push(t.clone());
        numbers.insert(t.a.clone());
        numbers.insert(t.b.clone());
        numbers.insert(t.c.clone());
    }
    let collisions = by_max.into_iter().filter(|(_, v)| v.len() > 1).collect();
    FrobeniusReport {
        bound: bound.clone(),
        triples: triples.len(),
        markov_numbers: numbers.into_iter().collect(),
        collisions,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Correspondence {
    pub bound: u64,
    pub exact_match: bool,
    /// `3a` for Markov numbers `a <= bound`.
    pub markov_traces: Vec<u64>,
    /// Distinct rounded traces of simple geodesics with trace `<= 3 bound`.
    pub geodesic_traces: Vec<u64>,
    /// Number of simple geodesics per trace.
    pub multiplicities: Vec<(u64, usize)>,
    /// Traces found on one side only, or whose multiplicity is not a
    /// multiple of 3, or that are not near an integer.
    pub offending: Vec<String>,
}

/// Compare the simple spectrum of the modular torus, built from its
/// Fenchel–Nielsen coordinates, with the Markov numbers up to `bound`.
pub fn modular_correspondence(bound: u64) -> Result<Correspondence> {
    let torus = OneHoledTorus::modular();
    let triple = TraceTriple::from_torus(&torus);
    let top = 3.0 * bound as f64;
    let cutoff = 2.0 * (top / 2.0).acosh() * (1.0 + 1e-9);
    let spec = onetorus::trace_tree(&triple, cutoff)?;
    let mut offending = Vec::new();
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for e in &spec.entries {
        let r = e.trace.round();
        if (e.trace - r).abs() > 1e-6 * e.trace {
            offending.push(format!("trace {} of slope ({}, {}) is not an integer", e.trace, e.slope.p, e.slope.q));
            continue;
        }
        if r as u64 <= 3 * bound {
            *counts.entry(r as u64).or_default() += 1;
        }
    }
    let markov: Vec<u64> = frobenius_scan(&BigUint::from(bound))
        .markov_numbers
        .iter()
        .map(|a| 3 * a.to_u64().expect("bounded by a u64"))
        .collect();
    let geodesic: Vec<u64> = counts.keys().copied().collect();
    for t in &markov {
        if !counts.contains_key(t) {
            offending.push(format!("trace {t} = 3·{} has no simple geodesic", t / 3));
        }
    }
    for (t, n) in &counts {
        if markov.binary_search(t).is_err() {
            offending.push(format!("trace {t} is not three times a Markov number"));
        }
        if n % 3 != 0 {
            offending.push(format!("trace {t} has multiplicity {n}"));
        }
    }
    Ok(Correspondence {
        bound,
        exact_match: offending.is_empty(),
        markov_traces: markov,
        geodesic_traces: geodesic,
        multiplicities: counts.into_iter().collect(),
        offending,
    })
}

/// JSON report with fields `bound`, `triples`, `collisions` and
/// `correspondence_status`.
pub fn report_json(scan: &FrobeniusReport, corr: Option<&Correspondence>) -> Value {
    let triples: Vec<Value> = markov_tree(&scan.bound).iter().map(MarkovTriple::to_json).collect();
    let collisions: Vec<Value> = scan
        .collisions
        .iter()
        .map(|(c, ts)| json!({"max": big_json(c), "triples": ts.iter().map(MarkovTriple::to_json).collect::<Vec<_>>()}))
        .collect();
    let status = match corr {
        None => json!("not requested"),
        Some(c) if c.exact_match => json!("exact match"),
        Some(_) => json!("mismatch"),
    };
    let mut v = json!({
        "bound": big_json(&scan.bound),
        "triple_count": scan.triples,
        "triples": triples,
        "markov_numbers": scan.markov_numbers.iter().map(big_json).collect::<Vec<_>>(),
        "collisions": collisions,
        "correspondence_status": status,
        "orientation": "unoriented classes",
    });
    if let Some(c) = corr {
        v["correspondence"] = json!({
            "bound": c.bound,
            "markov_traces": c.markov_traces,
            "geodesic_traces": c.geodesic_traces,
            "multiplicities_unoriented": c.multiplicities,
            "multiplicities_oriented": c.multiplicities.iter().map(|(t, n)| (*t, 2 * n)).collect::<Vec<_>>(),
            "offending": c.offending,
        });
    }
    v
}
