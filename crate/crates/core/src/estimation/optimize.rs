/// `n` equally spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`,
/// stopping once the bracket is narrower than `tol`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if b - a <= f64::EPSILON * (a.abs() + b.abs()) {
            break;
        }
    }
    // the endpoints may beat the interior probes when the maximum sits on them
    [(a, f(a)), (b, f(b)), (c, fc), (d, fd)]
        .into_iter()
        .fold((f64::NAN, f64::NEG_INFINITY), |best, cand| if cand.1 > best.1 { cand } else { best })
}

/// First and second derivatives by central differences with one
/// Richardson extrapolation step.
pub fn derivatives<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> (f64, f64) {
    let f0 = f(x);
    let central = |h: f64| {
        let (fp, fm) = (f(x + h), f(x - h));
        ((fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h))
    };
    let (d1h, d2h) = central(h);
    let (d1s, d2s) = central(h / 2.0);
    ((4.0 * d1s - d1h) / 3.0, (4.0 * d2s - d2h) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_endpoints() {
        let xs = linspace(0.0, 1.0, 11);
        assert_eq!(xs.len(), 11);
        assert_eq!(xs[0], 0.0);
        assert_eq!(xs[10], 1.0);
        assert!((xs[3] - 0.3).abs() < 1e-16);
        assert!(linspace(0.0, 1.0, 0).is_empty());
    }

    #[test]
    fn golden_section_finds_peak() {
        let (x, fx) = golden_section_max(|x| -(x - 0.3141).powi(2), 0.0, 1.0, 1e-12);
        assert!((x - 0.3141).abs() < 1e-8);
        assert!(fx <= 0.0);
        let (x, _) = golden_section_max(|x| x, 0.0, 2.0, 1e-10);
        assert_eq!(x, 2.0);
    }

    #[test]
    fn derivatives_of_sine() {
        let (d1, d2) = derivatives(f64::sin, 0.7, 1e-4);
        assert!((d1 - 0.7f64.cos()).abs() < 1e-10);
        assert!((d2 + 0.7f64.sin()).abs() < 1e-7);
    }
}
