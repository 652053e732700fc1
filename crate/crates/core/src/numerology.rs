//! Integer identities for curves on ruled surfaces in `P^3`.

use serde::Serialize;

/// `2g - 2 = (k - 1)(2 deg C - k deg S) + k (2 sigma - 2)` for a curve meeting the rulings of a
/// ruled surface `S` over a base of genus `sigma` in `k` points.
pub fn segre_genus(k: i64, deg_curve: i64, deg_surface: i64, sigma: i64) -> i64 {
    (k - 1) * (2 * deg_curve - k * deg_surface) + k * (2 * sigma - 2)
}

/// Coefficients `(a, b, c)`, with positive leading term and no common factor, of the Segre
/// identity `segre_genus(k, deg_curve, deg_surface, sigma) = 2 genus - 2` as a quadratic in `k`.
pub fn segre_quadratic(deg_curve: i64, deg_surface: i64, sigma: i64, genus: i64) -> (i64, i64, i64) {
    let a = deg_surface;
    let b = -(2 * deg_curve + deg_surface + 2 * sigma - 2);
    let c = 2 * deg_curve + 2 * genus - 2;
    let g = gcd(gcd(a, b), c).abs().max(1);
    (a / g, b / g, c / g)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Integer roots of `a k^2 + b k + c`.
pub fn integer_roots(a: i64, b: i64, c: i64) -> Vec<i64> {
    let disc = b * b - 4 * a * c;
    if disc < 0 {
        return Vec::new();
    }
    let s = (disc as f64).sqrt().round() as i64;
    if s * s != disc {
        return Vec::new();
    }
    let mut out: Vec<i64> = [-b + s, -b - s]
        .into_iter()
        .filter(|n| n % (2 * a) == 0)
        .map(|n| n / (2 * a))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Genus `P` of a ruled surface swept by a degree-`n` genus-`p` curve of lines, and the degree
/// of its double curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RuledNumbers {
    pub genus: i64,
    pub double_curve: i64,
}

/// `2P - 2 = (n - 5)(n + 2p - 2)` and `(n - 1)(n - 2)/2 - p`.
pub fn ruled_numerology(n: i64, p: i64) -> RuledNumbers {
    let two_p_minus_2 = (n - 5) * (n + 2 * p - 2);
    RuledNumbers { genus: two_p_minus_2 / 2 + 1, double_curve: (n - 1) * (n - 2) / 2 - p }
}

/// Castelnuovo's bound for a nondegenerate degree-`n` curve in `P^3`.
pub fn castelnuovo_bound(n: i64) -> i64 {
    assert!(n >= 3, "curves in P^3 span it only from degree 3");
    let m = (n - 1) / 2;
    let eps = n - 1 - 2 * m;
    m * (m - 1) + m * eps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_cover() {
        for sigma in 0..3 {
            assert_eq!(segre_genus(1, 8, 6, sigma), 2 * sigma - 2);
        }
    }

    #[test]
    fn quadratic_matches_direct_evaluation() {
        for (d, s, sigma) in [(8, 3, 0), (7, 3, 1), (8, 6, 1)] {
            let (a, b, c) = segre_quadratic(d, s, sigma, 5);
            for k in integer_roots(a, b, c) {
                assert_eq!(segre_genus(k, d, s, sigma), 8);
            }
        }
    }
}
