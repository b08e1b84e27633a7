//! A small Nelder-Mead maximizer for the first-contact search.
//!
//! The objective there (min over a fixed parabolic family of the exhaustion
//! values) is piecewise smooth with ridges along the loci where two family
//! members tie, which is exactly where the maxima sit; a derivative-free
//! simplex method handles this well provided it is restarted, since a single
//! simplex can collapse prematurely on a ridge. `maximize` therefore runs a
//! chain of restarts, re-seeding a fresh simplex at the current best point
//! until the best value stops improving.

/// Standard Nelder-Mead coefficients (reflection, expansion, contraction,
/// shrink) on an n-simplex; maximizes by minimizing -f.
pub struct NelderMead {
    pub init_step: f64,
    pub diameter_tol: f64,
    pub max_evals: u64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            init_step: 0.25,
            diameter_tol: 1e-10,
            max_evals: 100_000,
        }
    }
}

pub struct OptimizeResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: u64,
}

impl NelderMead {
    /// One simplex run from `x0`; stops when the simplex diameter falls below
    /// `diameter_tol` or the evaluation budget is spent.
    fn run_once<F: FnMut(&[f64]) -> f64>(
        &self,
        f: &mut F,
        x0: &[f64],
        step: f64,
        budget: &mut u64,
    ) -> (Vec<f64>, f64) {
        let n = x0.len();
        let mut eval = |x: &[f64], budget: &mut u64| -> f64 {
            if *budget > 0 {
                *budget -= 1;
            }
            -f(x)
        };

        // simplex: x0 plus a step along each axis
        let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        pts.push(x0.to_vec());
        for k in 0..n {
            let mut p = x0.to_vec();
            p[k] += step;
            pts.push(p);
        }
        let mut vals: Vec<f64> = pts.iter().map(|p| eval(p, budget)).collect();

        loop {
            // order ascending (best = smallest of -f)
            let mut idx: Vec<usize> = (0..=n).collect();
            idx.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap());
            let reordered: Vec<Vec<f64>> = idx.iter().map(|&i| pts[i].clone()).collect();
            let revals: Vec<f64> = idx.iter().map(|&i| vals[i]).collect();
            pts = reordered;
            vals = revals;

            let diameter = pts[1..]
                .iter()
                .map(|p| {
                    p.iter()
                        .zip(&pts[0])
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            if diameter < self.diameter_tol || *budget == 0 {
                break;
            }

            // centroid of all but worst
            let mut c = vec![0.0; n];
            for p in &pts[..n] {
                for (ci, pi) in c.iter_mut().zip(p) {
                    *ci += pi / n as f64;
                }
            }
            let combine = |a: f64| -> Vec<f64> {
                c.iter()
                    .zip(&pts[n])
                    .map(|(ci, wi)| ci + a * (ci - wi))
                    .collect()
            };

            let xr = combine(1.0);
            let fr = eval(&xr, budget);
            if fr < vals[0] {
                let xe = combine(2.0);
                let fe = eval(&xe, budget);
                if fe < fr {
                    pts[n] = xe;
                    vals[n] = fe;
                } else {
                    pts[n] = xr;
                    vals[n] = fr;
                }
            } else if fr < vals[n - 1] {
                pts[n] = xr;
                vals[n] = fr;
            } else {
                let xc = if fr < vals[n] {
                    combine(0.5)
                } else {
                    combine(-0.5)
                };
                let fc = eval(&xc, budget);
                if fc < vals[n].min(fr) {
                    pts[n] = xc;
                    vals[n] = fc;
                } else {
                    // shrink toward best
                    for k in 1..=n {
                        let best = pts[0].clone();
                        for (pi, bi) in pts[k].iter_mut().zip(&best) {
                            *pi = bi + 0.5 * (*pi - bi);
                        }
                        vals[k] = eval(&pts[k], budget);
                    }
                }
            }
        }

        let mut best = 0;
        for k in 1..=n {
            if vals[k] < vals[best] {
                best = k;
            }
        }
        (pts[best].clone(), -vals[best])
    }

    /// Maximizes f from `x0` with a chain of `restarts` re-seeded runs; each
    /// restart shrinks the initial step so late runs polish rather than
    /// wander. The evaluation budget is shared across the chain.
    pub fn maximize<F: FnMut(&[f64]) -> f64>(
        &self,
        mut f: F,
        x0: &[f64],
        restarts: u32,
    ) -> OptimizeResult {
        let mut budget = self.max_evals;
        let total = self.max_evals;
        let mut x = x0.to_vec();
        let mut value = f64::NEG_INFINITY;
        let mut step = self.init_step;
        for _ in 0..=restarts {
            let (nx, nv) = self.run_once(&mut f, &x, step, &mut budget);
            if nv > value {
                value = nv;
                x = nx;
            }
            step = (step * 0.5).max(16.0 * self.diameter_tol);
            if budget == 0 {
                break;
            }
        }
        OptimizeResult {
            x,
            value,
            evals: total - budget,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_peak() {
        let nm = NelderMead::default();
        let res = nm.maximize(
            |x| -(x[0] - 1.5) * (x[0] - 1.5) - (x[1] + 0.5) * (x[1] + 0.5),
            &[0.0, 0.0],
            4,
        );
        assert!((res.x[0] - 1.5).abs() < 1e-7);
        assert!((res.x[1] + 0.5).abs() < 1e-7);
        assert!(res.value > -1e-12);
    }

    #[test]
    fn ridge_min_of_two() {
        // max of min(1 - |x - 1|, 1 - |x + 1| + x) style kink: optimum at a
        // non-smooth tie point; restarts must still find it.
        let nm = NelderMead::default();
        let res = nm.maximize(
            |x| (1.0 - (x[0] - 1.0).abs()).min(1.0 - 0.5 * (x[0] + 1.0).abs()),
            &[3.0],
            8,
        );
        // tie at x = 1/3: 1 - |x-1| = 1 - 0.5|x+1|
        assert!((res.x[0] - 1.0 / 3.0).abs() < 1e-6, "{}", res.x[0]);
    }

    #[test]
    fn budget_respected() {
        let nm = NelderMead {
            max_evals: 50,
            ..NelderMead::default()
        };
        let mut calls = 0u64;
        let res = nm.maximize(
            |x| {
                calls += 1;
                -x[0] * x[0]
            },
            &[2.0],
            3,
        );
        assert!(res.evals <= 50);
        assert!(calls >= res.evals);
    }
}
