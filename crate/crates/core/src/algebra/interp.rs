//! Univariate polynomials in dense coefficient form `c_0 + c_1 m + ...`,
//! with exact interpolation at consecutive integer nodes.

use num_traits::Zero;

use super::rational::{int, Rat};

/// Coefficients of the unique polynomial of degree `< values.len()` taking
/// `values[i]` at `m = start + i`. Newton forward differences, then expansion
/// into the monomial basis.
pub fn interpolate(start: i64, values: &[Rat]) -> Vec<Rat> {
    let n = values.len();
    let mut diffs = values.to_vec();
    let mut newton = Vec::with_capacity(n);
    for k in 0..n {
        newton.push(diffs[0].clone());
        for i in 0..n - k - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    // sum_k newton[k] * binom(m - start, k)
    let mut out = vec![Rat::zero(); n.max(1)];
    let mut basis = vec![int(1)];
    for (k, coeff) in newton.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            out[i] += coeff * b;
        }
        // basis *= (m - start - k) / (k + 1)
        let shift = int(-(start + k as i64));
        let denom = int(k as i64 + 1);
        let mut next = vec![Rat::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b / &denom;
            next[i] += &(b * &shift) / &denom;
        }
        basis = next;
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

pub fn eval_poly(coeffs: &[Rat], m: &Rat) -> Rat {
    coeffs
        .iter()
        .rev()
        .fold(Rat::zero(), |acc, c| acc * m + c)
}

/// Renders `c_d m^d + ... + c_0` with rationals as `p/q`.
pub fn fmt_poly(coeffs: &[Rat], var: &str) -> String {
    use super::rational::fmt_rat;
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(if mono.is_empty() {
            fmt_rat(c)
        } else if *c == int(1) {
            mono
        } else {
            format!("{}*{mono}", fmt_rat(c))
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}
