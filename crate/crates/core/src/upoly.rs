//! Univariate polynomials: gcd, square-free parts, and factorization over finite fields.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Gf};

/// Dense univariate polynomial, coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly<K: Field> {
    field: K,
    c: Vec<K::Elem>,
}

impl<K: Field> UPoly<K> {
    pub fn new(field: &K, mut c: Vec<K::Elem>) -> Self {
        while c.last().is_some_and(|x| field.is_zero(x)) {
            c.pop();
        }
        UPoly { field: field.clone(), c }
    }

    pub fn zero(field: &K) -> Self {
        UPoly { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &K) -> Self {
        Self::new(field, vec![field.one()])
    }

    /// `x - r`.
    pub fn linear_root(field: &K, r: &K::Elem) -> Self {
        Self::new(field, vec![field.neg(r), field.one()])
    }

    /// `x`.
    pub fn x(field: &K) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn coeffs(&self) -> &[K::Elem] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lead(&self) -> Option<&K::Elem> {
        self.c.last()
    }
    pub fn coeff(&self, i: usize) -> K::Elem {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        Self::new(f, (0..n).map(|i| f.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        Self::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.c.iter().map(|x| f.mul(x, s)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Self::zero(f);
        }
        let mut r = vec![f.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] = f.add(&r[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, r)
    }

    pub fn map_field<L: Field>(&self, target: &L, map: impl Fn(&K::Elem) -> L::Elem) -> UPoly<L> {
        UPoly::new(target, self.c.iter().map(map).collect())
    }

    pub fn eval(&self, x: &K::Elem) -> K::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.c.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(f, self.c.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect())
    }

    /// Quotient and remainder.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        let inv = f.inv(d.lead().unwrap()).expect("invertible leading coefficient");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            let coef = f.mul(&r[top], &inv);
            if f.is_zero(&coef) {
                continue;
            }
            q[top - dd] = coef.clone();
            for j in 0..=dd {
                r[top - dd + j] = f.sub(&r[top - dd + j], &f.mul(&coef, &d.c[j]));
            }
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&self.field.inv(l).unwrap()),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `Some(q)` when `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &K::Elem) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::linear_root(&self.field, r);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            m += 1;
        }
        m
    }
}

/// An irreducible factor with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor<K: Field> {
    pub poly: UPoly<K>,
    pub multiplicity: usize,
}

impl UPoly<Gf> {
    /// Roots in the coefficient field, each listed once, sorted.
    pub fn roots(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .factor()
            .into_iter()
            .filter(|f| f.poly.degree() == Some(1))
            .map(|f| self.field.neg(&f.poly.coeff(0)))
            .collect();
        out.sort_unstable();
        out
    }

    fn pth_root(&self) -> Self {
        // every exponent is a multiple of p; coefficients are p-th powers
        let f = &self.field;
        let p = f.p() as usize;
        let q = f.q();
        let inv_frob = |a: &u64| f.pow(a, q / f.p());
        Self::new(f, self.c.iter().step_by(p).map(inv_frob).collect())
    }

    /// Square-free decomposition: pairs `(g, m)` with `self = lead * prod g^m`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let f = &self.field;
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.monic();
        let d = p.derivative();
        if d.is_zero() {
            for (g, m) in p.pth_root().squarefree_decomposition() {
                out.push((g, m * f.p() as usize));
            }
            return out;
        }
        let mut c = p.gcd(&d);
        let mut w = p.exact_div(&c).unwrap();
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let fac = w.exact_div(&y).unwrap();
            if fac.degree().unwrap_or(0) > 0 {
                out.push((fac, i));
            }
            w = y;
            c = c.exact_div(&w).unwrap();
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * f.p() as usize));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let f = &self.field;
        let q = f.q();
        let mut out = Vec::new();
        let mut rest = self.clone();
        let x = Self::x(f);
        let mut h = x.clone();
        let mut d = 1;
        while rest.degree().unwrap_or(0) >= 2 * d {
            h = h.powmod(q, &rest);
            let g = h.sub(&x).gcd(&rest);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), d));
                rest = rest.exact_div(&g).unwrap();
                h = h.rem(&rest);
            }
            d += 1;
        }
        if let Some(deg) = rest.degree() {
            if deg > 0 {
                out.push((rest, deg));
            }
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<Self> {
        let n = self.degree().unwrap();
        if n == d {
            return vec![self.clone()];
        }
        let f = &self.field;
        let q = f.q();
        loop {
            let a = Self::new(f, (0..n).map(|_| rng.gen_range(0..q)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let g = if f.p() == 2 {
                // trace map a + a^2 + ... + a^(2^(kd-1))
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..(f.k() as usize * d) {
                    t = t.mulmod(&t, self);
                    acc = acc.add(&t);
                }
                acc.gcd(self)
            } else {
                let e = (q.pow(d as u32) - 1) / 2;
                a.powmod(e, self).sub(&Self::one(f)).gcd(self)
            };
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let other = self.exact_div(&g).unwrap();
                let mut out = g.equal_degree(d, rng);
                out.extend(other.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles, sorted by (degree, coefficients).
    pub fn factor(&self) -> Vec<Factor<Gf>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out = Vec::new();
        for (sf, m) in self.squarefree_decomposition() {
            for (part, d) in sf.distinct_degree() {
                for g in part.equal_degree(d, &mut rng) {
                    out.push(Factor { poly: g.monic(), multiplicity: m });
                }
            }
        }
        out.sort_by(|a, b| {
            (a.poly.c.len(), a.poly.c.iter().rev().cloned().collect::<Vec<_>>())
                .cmp(&(b.poly.c.len(), b.poly.c.iter().rev().cloned().collect::<Vec<_>>()))
        });
        out
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Gf, c: &[i64]) -> UPoly<Gf> {
        UPoly::new(f, c.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn factor_x6_minus_1_over_f7() {
        let f = Gf::prime(7).unwrap();
        let p = poly(&f, &[-1, 0, 0, 0, 0, 0, 1]);
        let fs = p.factor();
        assert_eq!(fs.len(), 6);
        assert!(fs.iter().all(|x| x.poly.degree() == Some(1) && x.multiplicity == 1));
        assert_eq!(p.roots(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn factor_reconstructs_product() {
        let f = Gf::prime(11).unwrap();
        let a = poly(&f, &[1, 0, 1]); // x^2+1 irreducible mod 11
        let b = poly(&f, &[3, 1]);
        let c = poly(&f, &[2, 1, 0, 1]);
        let p = a.mul(&a).mul(&b).mul(&c);
        let fs = p.factor();
        let mut prod = UPoly::one(&f);
        for fac in &fs {
            for _ in 0..fac.multiplicity {
                prod = prod.mul(&fac.poly);
            }
        }
        assert_eq!(prod, p.monic());
    }

    #[test]
    fn squarefree_in_characteristic_p() {
        let f = Gf::prime(3).unwrap();
        // (x+1)^3 = x^3 + 1 over F_3
        let p = poly(&f, &[1, 0, 0, 1]);
        let dec = p.squarefree_decomposition();
        assert_eq!(dec, vec![(poly(&f, &[1, 1]), 3)]);
    }

    #[test]
    fn factor_over_extension() {
        let f = Gf::new(3, 2).unwrap();
        let p = UPoly::new(&f, vec![1, 0, 1]); // x^2+1 splits over F_9
        assert_eq!(p.roots().len(), 2);
        let f2 = Gf::new(2, 2).unwrap();
        let p = UPoly::new(&f2, vec![1, 1, 1]); // x^2+x+1 splits over F_4
        assert_eq!(p.roots().len(), 2);
    }
}
