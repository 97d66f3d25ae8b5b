//! Nelder–Mead simplex search (minimization).

#[derive(Debug, Clone)]
pub struct Simplex {
    pub best: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    /// Best value after each iteration.
    pub history: Vec<f64>,
    /// True when the simplex collapsed below the tolerance before the budget ran out.
    pub converged: bool,
}

/// Minimize `f` from `start` with initial edge lengths `step`.
///
/// Stops when the spread of values and the simplex diameter are both below
/// `tol`, or after `max_evals` evaluations.
pub fn minimize<F>(f: F, start: &[f64], step: &[f64], tol: f64, max_evals: usize) -> Simplex
where
    F: Fn(&[f64]) -> f64,
{
    let n = start.len();
    let evals = std::cell::Cell::new(0usize);
    let eval = |x: &[f64]| {
        evals.set(evals.get() + 1);
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut pts: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step[i];
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| eval(p)).collect();
    let mut history = Vec::new();
    let mut converged = false;

    while evals.get() < max_evals {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        history.push(vals[0]);

        let spread = vals[n] - vals[0];
        let diam = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if (spread.is_finite() && spread <= tol * vals[0].abs().max(1.0)) && diam <= tol {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n).map(|j| pts[..n].iter().map(|p| p[j]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> { (0..n).map(|j| centroid[j] + t * (pts[n][j] - centroid[j])).collect() };

        let xr = along(-1.0);
        let fr = eval(&xr);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = eval(&xe);
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[n] {
            let x = along(-0.5);
            let v = eval(&x);
            (x, v)
        } else {
            let x = along(0.5);
            let v = eval(&x);
            (x, v)
        };
        if fc < vals[n].min(fr) {
            pts[n] = xc;
            vals[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        for i in 1..=n {
            pts[i] = (0..n).map(|j| pts[0][j] + 0.5 * (pts[i][j] - pts[0][j])).collect();
            vals[i] = eval(&pts[i]);
        }
    }
    let i = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
    Simplex { best: pts[i].clone(), value: vals[i], evaluations: evals.get(), history, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let s = minimize(f, &[-1.2, 1.0], &[0.5, 0.5], 1e-10, 5000);
        assert!(s.converged);
        assert!((s.best[0] - 1.0).abs() < 1e-4 && (s.best[1] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn respects_budget() {
        let s = minimize(|x: &[f64]| x[0].abs() + x[1].abs(), &[3.0, 4.0], &[1.0, 1.0], 0.0, 40);
        assert!(s.evaluations <= 40 + 3);
        assert!(!s.converged);
    }
}
