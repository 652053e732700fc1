//! Projective points over finite fields: normalization and deterministic enumeration.

use crate::error::{Error, Result};
use crate::field::{Field, Gf};

/// Scale `v` so that its first nonzero coordinate is 1. Returns `false` for the zero vector.
pub fn normalize<K: Field>(field: &K, v: &mut [K::Elem]) -> bool {
    let Some(pos) = v.iter().position(|x| !field.is_zero(x)) else {
        return false;
    };
    let inv = field.inv(&v[pos]).expect("nonzero");
    for x in v.iter_mut().skip(pos) {
        *x = field.mul(x, &inv);
    }
    true
}

/// Normalized copy of `v`; `None` for the zero vector.
pub fn normalized<K: Field>(field: &K, v: &[K::Elem]) -> Option<Vec<K::Elem>> {
    let mut w = v.to_vec();
    normalize(field, &mut w).then_some(w)
}

/// Whether two nonzero vectors span the same point.
pub fn same_point<K: Field>(field: &K, a: &[K::Elem], b: &[K::Elem]) -> bool {
    normalized(field, a) == normalized(field, b)
}

/// `P^n(F_q)` enumerated in lexicographic order of normalized coordinate vectors.
#[derive(Clone, Copy, Debug)]
pub struct ProjSpace {
    pub field: Gf,
    pub n: usize,
}

impl ProjSpace {
    pub fn new(field: Gf, n: usize) -> Self {
        ProjSpace { field, n }
    }

    /// `(q^(n+1) - 1) / (q - 1)`.
    pub fn count(&self) -> u64 {
        let q = self.field.q();
        (0..=self.n as u32).map(|i| q.pow(i)).sum()
    }

    /// Guard against enumerations beyond `budget` points.
    pub fn check_budget(&self, budget: u64) -> Result<()> {
        let q = self.field.q() as f64;
        let approx = q.powi(self.n as i32);
        if approx > budget as f64 {
            return Err(Error::Budget(format!(
                "P^{}(F_{}) has about {:.3e} points, budget {}",
                self.n,
                self.field.q(),
                approx,
                budget
            )));
        }
        Ok(())
    }

    /// The point with the given index in enumeration order.
    pub fn point(&self, mut idx: u64) -> Vec<u64> {
        let q = self.field.q();
        let mut v = vec![0u64; self.n + 1];
        for lead in (0..=self.n).rev() {
            let tail = self.n - lead;
            let block = q.pow(tail as u32);
            if idx < block {
                v[lead] = 1;
                for pos in (lead + 1..=self.n).rev() {
                    v[pos] = idx % q;
                    idx /= q;
                }
                return v;
            }
            idx -= block;
        }
        panic!("index beyond P^{}", self.n)
    }

    /// Index of a normalized point.
    pub fn index_of(&self, v: &[u64]) -> u64 {
        let q = self.field.q();
        let lead = v.iter().position(|&x| x != 0).expect("nonzero point");
        let mut idx: u64 = (lead + 1..=self.n).map(|l| q.pow((self.n - l) as u32)).sum();
        let mut tail = 0u64;
        for &x in &v[lead + 1..] {
            tail = tail * q + x;
        }
        idx += tail;
        idx
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.count()).map(move |i| self.point(i))
    }
}

/// Lift a vector over a prime field into an extension (encodings are unchanged).
pub fn lift(v: &[u64]) -> Vec<u64> {
    v.to_vec()
}

/// Whether every coordinate lies in the prime field.
pub fn is_prime_rational(field: &Gf, v: &[u64]) -> bool {
    v.iter().all(|&x| field.in_prime_field(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_count_and_index() {
        let f = Gf::prime(5).unwrap();
        let sp = ProjSpace::new(f, 2);
        assert_eq!(sp.count(), 31);
        let pts: Vec<Vec<u64>> = sp.iter().collect();
        assert_eq!(pts[0], vec![0, 0, 1]);
        assert_eq!(pts[30], vec![1, 4, 4]);
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(sp.index_of(p), i as u64);
        }
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, pts);
    }

    #[test]
    fn normalization() {
        let f = Gf::prime(7).unwrap();
        let mut v = vec![0, 3, 6];
        assert!(normalize(&f, &mut v));
        assert_eq!(v, vec![0, 1, 2]);
        assert!(same_point(&f, &[2, 4], &[1, 2]));
    }
}
