//! Local refinement of a max-min point by sequential linear programming.
//!
//! Near a local maximum of the systole a handful of curves are almost
//! shortest. Each step linearizes their lengths by central differences and
//! solves `max t` subject to `len_i + grad_i · d >= t` inside a box of half
//! width `radius`; the step is kept if the true systole increases, otherwise
//! the box shrinks.

use microlp::{ComparisonOp, OptimizationDirection, Problem};

#[derive(Debug, Clone)]
pub struct Polished {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    /// Systole after each accepted step.
    pub history: Vec<f64>,
    pub converged: bool,
}

pub struct PolishOptions {
    /// Curves this far above the minimum enter the linearization.
    pub margin: f64,
    pub radius: f64,
    pub min_radius: f64,
    pub max_steps: usize,
    pub diff_step: f64,
}

impl Default for PolishOptions {
    fn default() -> Self {
        PolishOptions { margin: 0.15, radius: 0.05, min_radius: 1e-10, max_steps: 200, diff_step: 1e-6 }
    }
}

/// `near(p, margin)` returns the systole at `p` and the curves within
/// `margin` of it; `length(p, c)` the length of curve `c` at `p`. Points are
/// clamped to `bounds`.
pub fn polish<K, N, L>(start: &[f64], bounds: &[(f64, f64)], near: N, length: L, opt: &PolishOptions) -> Polished
where
    N: Fn(&[f64], f64) -> Option<(f64, Vec<K>)>,
    L: Fn(&[f64], &K) -> Option<f64>,
{
    let n = start.len();
    let clamp = |p: &mut Vec<f64>| {
        for (x, (lo, hi)) in p.iter_mut().zip(bounds) {
            *x = x.clamp(*lo, *hi);
        }
    };
    let mut p = start.to_vec();
    clamp(&mut p);
    let mut evaluations = 1;
    let Some((mut value, mut active)) = near(&p, opt.margin) else {
        return Polished { point: p, value: f64::NEG_INFINITY, evaluations, history: vec![], converged: false };
    };
    let mut radius = opt.radius;
    let mut history = vec![value];
    let mut converged = false;

    for _ in 0..opt.max_steps {
        if radius < opt.min_radius {
            converged = true;
            break;
        }
        let mut rows = Vec::with_capacity(active.len());
        for c in &active {
            let Some(l0) = length(&p, c) else { continue };
            let mut grad = vec![0.0; n];
            let mut ok = true;
            for j in 0..n {
                let h = opt.diff_step * p[j].abs().max(1.0);
                let mut up = p.clone();
                up[j] += h;
                let mut down = p.clone();
                down[j] -= h;
                match (length(&up, c), length(&down, c)) {
                    (Some(a), Some(b)) => grad[j] = (a - b) / (2.0 * h),
                    _ => ok = false,
                }
            }
            if ok {
                rows.push((l0, grad));
            }
        }
        let Some(step) = lp_step(&rows, &p, bounds, radius) else {
            radius /= 4.0;
            continue;
        };
        let mut q: Vec<f64> = p.iter().zip(&step).map(|(a, b)| a + b).collect();
        clamp(&mut q);
        evaluations += 1;
        match near(&q, opt.margin) {
            Some((v, act)) if v > value => {
                p = q;
                value = v;
                active = act;
                history.push(v);
                radius = (radius * 2.0).min(opt.radius);
            }
            _ => radius /= 4.0,
        }
    }
    Polished { point: p, value, evaluations, history, converged }
}

fn lp_step(rows: &[(f64, Vec<f64>)], p: &[f64], bounds: &[(f64, f64)], radius: f64) -> Option<Vec<f64>> {
    if rows.is_empty() {
        return None;
    }
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let t = lp.add_var(1.0, (f64::NEG_INFINITY, f64::INFINITY));
    let d: Vec<_> = p
        .iter()
        .zip(bounds)
        .map(|(x, (lo, hi))| lp.add_var(0.0, ((lo - x).max(-radius), (hi - x).min(radius))))
        .collect();
    for (l0, g) in rows {
        // t - g·d <= l0
        let mut terms = vec![(t, 1.0)];
        terms.extend(d.iter().zip(g).map(|(v, c)| (*v, -c)));
        lp.add_constraint(terms, ComparisonOp::Le, *l0);
    }
    let sol = lp.solve().ok()?.into_solution().ok()?;
    Some(d.iter().map(|v| sol.var_value(*v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    // max over (x, y) of min(1 - x, 1 + x - y, 1 + x + y) peaks at 0 with all three equal
    #[test]
    fn reaches_equalized_maximum() {
        let fs = |p: &[f64], k: &usize| -> Option<f64> {
            Some(match k {
                0 => 1.0 - p[0] + 0.1 * p[1] * p[1],
                1 => 1.0 + p[0] - p[1],
                _ => 1.0 + p[0] + p[1],
            })
        };
        let near = |p: &[f64], m: f64| {
            let v: Vec<f64> = (0..3).map(|k| fs(p, &k).unwrap()).collect();
            let min = v.iter().copied().fold(f64::INFINITY, f64::min);
            Some((min, (0..3).filter(|&k| v[k] <= min + m).collect::<Vec<usize>>()))
        };
        let r = polish(&[0.3, -0.2], &[(-1.0, 1.0), (-1.0, 1.0)], near, fs, &PolishOptions::default());
        assert!((r.value - 1.0).abs() < 1e-9, "{}", r.value);
        assert!(r.point[0].abs() < 1e-8 && r.point[1].abs() < 1e-8);
    }
}
