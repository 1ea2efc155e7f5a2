//! Deterministic Nelder–Mead minimizer.
//!
//! Infinite objective values mark infeasible points; the simplex retreats from
//! them through contraction and shrink steps.

use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadSettings {
    pub max_iterations: usize,
    /// Simplex diameter below which the search stops.
    pub x_tolerance: f64,
    /// Relative spread of vertex values below which the search stops.
    pub f_tolerance: f64,
}

impl Default for NelderMeadSettings {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            x_tolerance: 1e-10,
            f_tolerance: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Clone)]
struct Vertex {
    x: Vec<f64>,
    f: f64,
}

fn order(a: &Vertex, b: &Vertex) -> Ordering {
    a.f.total_cmp(&b.f).then_with(|| {
        a.x.iter()
            .zip(&b.x)
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn lerp(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

/// Minimizes `f` from `start`, with the initial simplex spanned by `steps`
/// along each coordinate axis.
pub fn nelder_mead<F>(mut f: F, start: &[f64], steps: &[f64], settings: &NelderMeadSettings) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    assert_eq!(start.len(), steps.len(), "one step per coordinate");
    let dim = start.len();
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        f(x)
    };

    let mut simplex = Vec::with_capacity(dim + 1);
    simplex.push(Vertex {
        x: start.to_vec(),
        f: eval(start),
    });
    for (k, &step) in steps.iter().enumerate() {
        let mut x = start.to_vec();
        x[k] += step;
        let fx = eval(&x);
        simplex.push(Vertex { x, f: fx });
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < settings.max_iterations {
        simplex.sort_by(order);
        let (best, worst) = (simplex[0].f, simplex[dim].f);
        let diameter = simplex[1..]
            .iter()
            .flat_map(|v| v.x.iter().zip(&simplex[0].x).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        let flat = worst.is_finite() && (worst - best) <= settings.f_tolerance * best.abs().max(f64::MIN_POSITIVE);
        if diameter <= settings.x_tolerance || (flat && diameter <= settings.x_tolerance.sqrt()) {
            converged = best.is_finite();
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; dim];
        for v in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(&v.x) {
                *c += xi / dim as f64;
            }
        }
        let worst_x = simplex[dim].x.clone();

        let reflected = lerp(&centroid, &worst_x, -1.0);
        let fr = eval(&reflected);
        if fr < simplex[0].f {
            let expanded = lerp(&centroid, &worst_x, -2.0);
            let fe = eval(&expanded);
            simplex[dim] = if fe < fr {
                Vertex { x: expanded, f: fe }
            } else {
                Vertex { x: reflected, f: fr }
            };
            continue;
        }
        if fr < simplex[dim - 1].f {
            simplex[dim] = Vertex { x: reflected, f: fr };
            continue;
        }
        let (contracted, fc) = if fr < simplex[dim].f {
            let x = lerp(&centroid, &worst_x, -0.5);
            let fx = eval(&x);
            (x, fx)
        } else {
            let x = lerp(&centroid, &worst_x, 0.5);
            let fx = eval(&x);
            (x, fx)
        };
        if fc < simplex[dim].f.min(fr) {
            simplex[dim] = Vertex { x: contracted, f: fc };
            continue;
        }
        let anchor = simplex[0].x.clone();
        for v in simplex.iter_mut().skip(1) {
            v.x = lerp(&anchor, &v.x, 0.5);
            v.f = eval(&v.x);
        }
    }
    simplex.sort_by(order);
    let best = simplex.swap_remove(0);
    Minimum {
        point: best.x,
        value: best.f,
        iterations,
        evaluations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let m = nelder_mead(
            |x| (x[0] - 1.5).powi(2) + 3.0 * (x[1] + 0.25).powi(2),
            &[0.0, 0.0],
            &[0.5, 0.5],
            &NelderMeadSettings::default(),
        );
        assert!(m.converged);
        assert!((m.point[0] - 1.5).abs() < 1e-6 && (m.point[1] + 0.25).abs() < 1e-6);
    }

    #[test]
    fn retreats_from_infeasible_region() {
        let f = |x: &[f64]| if x[0] < 2.0 { f64::INFINITY } else { x[0] };
        let m = nelder_mead(f, &[3.0], &[1.0], &NelderMeadSettings::default());
        assert!(m.value >= 2.0 && m.value < 2.0 + 1e-6);
    }

    #[test]
    fn never_worse_than_start() {
        let f = |x: &[f64]| (x[0] * 7.0).sin() + 0.1 * x[0] * x[0];
        let start = [0.9];
        let m = nelder_mead(f, &start, &[0.3], &NelderMeadSettings::default());
        assert!(m.value <= f(&start));
    }

    #[test]
    fn respects_iteration_cap() {
        let settings = NelderMeadSettings { max_iterations: 3, ..Default::default() };
        let m = nelder_mead(|x| x[0].abs(), &[100.0], &[1.0], &settings);
        assert_eq!(m.iterations, 3);
        assert!(!m.converged);
    }
}
