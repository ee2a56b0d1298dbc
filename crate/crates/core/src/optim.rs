//! One-dimensional search primitives shared by the orthogonality routines and
//! the constant engine.
//!
//! Golden-section search keeps three of the four probe points per iteration,
//! so each iteration costs a single evaluation. On a unimodal function the
//! bracket shrinks by `1/φ` per step; on anything else the routine still
//! terminates and reports the best point it has seen, which is what the grid
//! refinement in the engine relies on.

/// `(√5 − 1) / 2`.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Hard cap on golden-section iterations; `1/φ^400` underflows any bracket.
const MAX_GOLDEN_ITERS: usize = 400;

/// Best point found by a one-dimensional search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

#[inline]
fn sanitize_min(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Minimizes `f` on `[a, b]` by golden-section search until the bracket is
/// narrower than `tol`. Returns the best interior probe.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Extremum {
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = sanitize_min(f(c));
    let mut fd = sanitize_min(f(d));
    let mut evals = 2;
    let mut best = if fd < fc {
        Extremum { x: d, value: fd, evaluations: 0 }
    } else {
        Extremum { x: c, value: fc, evaluations: 0 }
    };
    let tol = tol.max(0.0);
    let mut iters = 0;
    while (b - a) > tol && iters < MAX_GOLDEN_ITERS {
        iters += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            if !(c > a && c < d) {
                break;
            }
            fc = sanitize_min(f(c));
            evals += 1;
            if fc < best.value {
                best = Extremum { x: c, value: fc, evaluations: 0 };
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            if !(d > c && d < b) {
                break;
            }
            fd = sanitize_min(f(d));
            evals += 1;
            if fd < best.value {
                best = Extremum { x: d, value: fd, evaluations: 0 };
            }
        }
    }
    best.evaluations = evals;
    best
}

/// Maximizes `f` on `[a, b]`; mirror image of [`golden_min`].
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Extremum {
    let r = golden_min(
        |x| {
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                -v
            }
        },
        a,
        b,
        tol,
    );
    Extremum { x: r.x, value: -r.value, evaluations: r.evaluations }
}

/// Index of the first maximum of a slice, ignoring NaN.
pub fn argmax_first(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

/// Index of the first minimum of a slice, ignoring NaN.
pub fn argmin_first(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        match best {
            Some((_, b)) if v >= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

/// Evenly spaced points `lo, …, hi` (both ends included).
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_min_finds_parabola_vertex() {
        let r = golden_min(|x| (x - 0.3).powi(2) + 1.0, -1.0, 2.0, 1e-12);
        assert!((r.x - 0.3).abs() < 1e-6);
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn golden_max_on_kinked_peak() {
        let r = golden_max(|x| 2.0 - (x - 0.7).abs(), 0.0, 1.0, 1e-12);
        assert!((r.x - 0.7).abs() < 1e-10);
    }

    #[test]
    fn golden_min_monotone_goes_to_edge() {
        let r = golden_min(|x| x, 0.0, 1.0, 1e-10);
        assert!(r.x < 1e-9);
    }

    #[test]
    fn nan_is_never_chosen() {
        let r = golden_min(|x| if x < 0.5 { f64::NAN } else { x }, 0.0, 1.0, 1e-10);
        assert!(r.value.is_finite());
        assert!(r.x >= 0.5);
    }

    #[test]
    fn argmax_prefers_first() {
        assert_eq!(argmax_first(&[1.0, 3.0, 3.0, f64::NAN]), Some(1));
        assert_eq!(argmin_first(&[2.0, 1.0, 1.0]), Some(1));
        assert_eq!(argmax_first(&[f64::NAN]), None);
    }

    #[test]
    fn linspace_hits_both_ends() {
        let g = linspace(0.1, 0.9, 5);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[4], 0.9);
    }
}
