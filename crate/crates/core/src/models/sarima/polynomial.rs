//! Lag polynomials and the partial-autocorrelation reparameterisation.
//!
//! AR-type coefficient vectors `c` denote `1 - c[0] B - c[1] B^2 - ...`;
//! MA-type vectors denote `1 + c[0] B + ...`.

/// Maps partial autocorrelations in (-1, 1) to the coefficients of a
/// stationary AR polynomial (Durbin–Levinson recursion).
pub fn pacf_to_ar(partials: &[f64]) -> Vec<f64> {
    let mut phi: Vec<f64> = Vec::with_capacity(partials.len());
    for (k, &r) in partials.iter().enumerate() {
        let prev = phi.clone();
        for j in 0..k {
            phi[j] = prev[j] - r * prev[k - 1 - j];
        }
        phi.push(r);
    }
    phi
}

/// Inverse of [`pacf_to_ar`]; `None` if the polynomial is not stationary.
pub fn ar_to_pacf(coefs: &[f64]) -> Option<Vec<f64>> {
    let mut phi = coefs.to_vec();
    let mut partials = vec![0.0; coefs.len()];
    for k in (0..coefs.len()).rev() {
        let r = phi[k];
        if !(r.abs() < 1.0) {
            return None;
        }
        partials[k] = r;
        let denom = 1.0 - r * r;
        let prev = phi.clone();
        for j in 0..k {
            phi[j] = (prev[j] + r * prev[k - 1 - j]) / denom;
        }
        phi.truncate(k);
    }
    Some(partials)
}

/// All roots of `1 - sum c_i B^i` lie outside the unit circle.
pub fn is_stationary(coefs: &[f64]) -> bool {
    ar_to_pacf(coefs).is_some()
}

/// Unconstrained reals to stationary AR coefficients.
pub fn constrain_ar(x: &[f64]) -> Vec<f64> {
    let partials: Vec<f64> = x.iter().map(|v| v.tanh()).collect();
    pacf_to_ar(&partials)
}

pub fn unconstrain_ar(coefs: &[f64]) -> Option<Vec<f64>> {
    ar_to_pacf(coefs).map(|p| p.iter().map(|r| r.clamp(-0.9999, 0.9999).atanh()).collect())
}

/// Unconstrained reals to invertible MA coefficients.
pub fn constrain_ma(x: &[f64]) -> Vec<f64> {
    constrain_ar(x).into_iter().map(|c| -c).collect()
}

pub fn unconstrain_ma(coefs: &[f64]) -> Option<Vec<f64>> {
    let neg: Vec<f64> = coefs.iter().map(|c| -c).collect();
    unconstrain_ar(&neg)
}

/// Product of two polynomials given by full coefficient vectors
/// (constant term first).
pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Full coefficient vector of `1 + sign * sum c_i B^(step * (i+1))`.
fn expand(coefs: &[f64], step: usize, sign: f64) -> Vec<f64> {
    let mut full = vec![0.0; coefs.len() * step + 1];
    full[0] = 1.0;
    for (i, c) in coefs.iter().enumerate() {
        full[(i + 1) * step] = sign * c;
    }
    full
}

/// Combined AR polynomial `phi(B) Phi(B^s)` in AR-type form.
pub fn combined_ar(ar: &[f64], sar: &[f64], s: usize) -> Vec<f64> {
    let full = poly_mul(&expand(ar, 1, -1.0), &expand(sar, s.max(1), -1.0));
    full[1..].iter().map(|c| -c).collect()
}

/// Combined MA polynomial `theta(B) Theta(B^s)` in MA-type form.
pub fn combined_ma(ma: &[f64], sma: &[f64], s: usize) -> Vec<f64> {
    let full = poly_mul(&expand(ma, 1, 1.0), &expand(sma, s.max(1), 1.0));
    full[1..].to_vec()
}

/// Full coefficient vector of `(1 - B)^d (1 - B^s)^D`.
pub fn differencing(d: usize, big_d: usize, s: usize) -> Vec<f64> {
    let mut out = vec![1.0];
    for _ in 0..d {
        out = poly_mul(&out, &[1.0, -1.0]);
    }
    for _ in 0..big_d {
        out = poly_mul(&out, &expand(&[1.0], s.max(1), -1.0));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ar2_round_trip() {
        let c = constrain_ar(&[0.4, -0.7]);
        assert!(is_stationary(&c));
        let back = unconstrain_ar(&c).unwrap();
        assert!((back[0] - 0.4).abs() < 1e-12 && (back[1] + 0.7).abs() < 1e-12);
    }

    #[test]
    fn unit_root_is_not_stationary() {
        assert!(!is_stationary(&[1.0]));
        assert!(!is_stationary(&[0.5, 0.5]));
        assert!(is_stationary(&[0.5, 0.3]));
        assert!(is_stationary(&[]));
    }

    #[test]
    fn seasonal_products() {
        // (1 - 0.5B)(1 - 0.3B^2) = 1 - 0.5B - 0.3B^2 + 0.15B^3
        let ar = combined_ar(&[0.5], &[0.3], 2);
        assert_eq!(ar.len(), 3);
        assert!((ar[0] - 0.5).abs() < 1e-15 && (ar[1] - 0.3).abs() < 1e-15 && (ar[2] + 0.15).abs() < 1e-15);
        // (1 + 0.4B)(1 + 0.2B^7)
        let ma = combined_ma(&[0.4], &[0.2], 7);
        assert_eq!(ma.len(), 8);
        assert!((ma[6] - 0.2).abs() < 1e-15 && (ma[7] - 0.08).abs() < 1e-15);
    }

    #[test]
    fn differencing_operator() {
        assert_eq!(differencing(1, 0, 7), vec![1.0, -1.0]);
        let op = differencing(1, 1, 3);
        assert_eq!(op, vec![1.0, -1.0, 0.0, -1.0, 1.0]);
        assert_eq!(differencing(0, 0, 7), vec![1.0]);
    }

    proptest! {
        #[test]
        fn constrained_ar_is_stationary(x in proptest::collection::vec(-4.0f64..4.0, 0..5)) {
            let c = constrain_ar(&x);
            prop_assert!(is_stationary(&c));
            let m = constrain_ma(&x);
            prop_assert!(is_stationary(&m.iter().map(|v| -v).collect::<Vec<_>>()));
        }
    }
}
