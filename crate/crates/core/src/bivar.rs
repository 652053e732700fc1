//! Bivariate gcd on affine charts, used to decide whether a ternary form is square-free.

use crate::field::Field;
use crate::poly::HomogPoly;
use crate::upoly::UPoly;

/// Polynomial in `v` whose coefficients are polynomials in `u`.
#[derive(Clone, Debug, PartialEq)]
struct Bi<K: Field> {
    field: K,
    c: Vec<UPoly<K>>,
}

impl<K: Field> Bi<K> {
    fn new(field: &K, mut c: Vec<UPoly<K>>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Bi { field: field.clone(), c }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg_v(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lead(&self) -> &UPoly<K> {
        self.c.last().expect("nonzero")
    }

    fn content(&self) -> UPoly<K> {
        let mut g = UPoly::zero(&self.field);
        for x in &self.c {
            g = g.gcd(x);
            if g.degree() == Some(0) {
                break;
            }
        }
        g
    }

    fn div_scalar(&self, d: &UPoly<K>) -> Self {
        Bi::new(&self.field, self.c.iter().map(|x| x.exact_div(d).expect("content divides")).collect())
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut p = self.div_scalar(&self.content());
        let l = p.lead().lead().cloned().unwrap();
        let inv = self.field.inv(&l).unwrap();
        p.c = p.c.iter().map(|x| x.scale(&inv)).collect();
        p
    }

    fn d_v(&self) -> Self {
        let f = &self.field;
        Bi::new(f, self.c.iter().enumerate().skip(1).map(|(i, x)| x.scale(&f.from_i64(i as i64))).collect())
    }

    fn d_u(&self) -> Self {
        Bi::new(&self.field, self.c.iter().map(|x| x.derivative()).collect())
    }

    /// Pseudo-remainder of `self` by `b` in the variable `v`.
    fn prem(&self, b: &Self) -> Self {
        let mut a = self.clone();
        let lb = b.lead().clone();
        let db = b.deg_v();
        while !a.is_zero() && a.deg_v() >= db {
            let la = a.lead().clone();
            let shift = a.deg_v() - db;
            let mut next: Vec<UPoly<K>> = a.c.iter().map(|x| x.mul(&lb)).collect();
            for (j, bc) in b.c.iter().enumerate() {
                next[j + shift] = next[j + shift].sub(&bc.mul(&la));
            }
            a = Bi::new(&self.field, next);
        }
        a
    }

    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_with_content();
        }
        if other.is_zero() {
            return self.primitive_with_content();
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.deg_v() < b.deg_v() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() && b.deg_v() > 0 {
            let r = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        let g = if b.is_zero() { a } else { Bi::new(&self.field, vec![UPoly::one(&self.field)]) };
        Bi::new(&self.field, g.c.iter().map(|x| x.mul(&cont)).collect())
    }

    fn primitive_with_content(&self) -> Self {
        self.clone()
    }

    fn is_constant(&self) -> bool {
        self.c.len() == 1 && self.c[0].degree() == Some(0)
    }
}

/// Dehomogenize a ternary form at `x_chart = 1`, keeping the other two variables in order.
fn chart<K: Field>(p: &HomogPoly<K>, chart: usize) -> Bi<K> {
    let f = p.field();
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let (iu, iv) = (others[0], others[1]);
    let d = p.degree() as usize;
    let mut grid = vec![vec![f.zero(); d + 1]; d + 1];
    for (m, c) in p.terms() {
        grid[m[iv] as usize][m[iu] as usize] = c.clone();
    }
    Bi::new(f, grid.into_iter().map(|row| UPoly::new(f, row)).collect())
}

/// Whether a ternary form has no repeated factor. Uses `gcd(f, df/du, df/dv)` on the
/// charts `x2 = 1` and `x0 = 1`, which together see every component.
pub fn squarefree_test<K: Field>(p: &HomogPoly<K>) -> bool {
    assert_eq!(p.nvars(), 3, "square-free test is for ternary forms");
    if p.is_zero() {
        return false;
    }
    if p.degree() <= 1 {
        return true;
    }
    for ch in [2usize, 0] {
        let f = chart(p, ch);
        if f.is_zero() {
            return false;
        }
        let g = f.gcd(&f.d_u()).gcd(&f.d_v());
        if !g.is_constant() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf, QQ};

    #[test]
    fn square_of_conic_is_not_squarefree() {
        let f = Gf::prime(7).unwrap();
        let c = HomogPoly::parse_body(&f, 3, "x0*x1 + x2^2", 0).unwrap();
        assert!(squarefree_test(&c));
        assert!(!squarefree_test(&c.mul(&c)));
    }

    #[test]
    fn repeated_line_at_infinity_is_caught() {
        let f = Gf::prime(11).unwrap();
        let c = HomogPoly::parse_body(&f, 3, "x0^3 + x1^3 + x2^3", 0).unwrap();
        let z = HomogPoly::var(&f, 3, 2);
        let x = HomogPoly::var(&f, 3, 0);
        assert!(!squarefree_test(&c.mul(&z).mul(&z)));
        assert!(!squarefree_test(&c.mul(&x).mul(&x)));
        assert!(squarefree_test(&c.mul(&z).mul(&x)));
    }

    #[test]
    fn rational_cubic_times_line() {
        let c = HomogPoly::parse_body(&QQ, 3, "x1^2*x2 + -1*x0^3 + x0*x2^2", 0).unwrap();
        let l = HomogPoly::parse_body(&QQ, 3, "x0 + x1", 0).unwrap();
        assert!(squarefree_test(&c.mul(&l)));
        assert!(!squarefree_test(&c.mul(&l).mul(&l)));
    }

    #[test]
    fn pth_power_in_small_characteristic() {
        let f = Gf::prime(3).unwrap();
        let l = HomogPoly::parse_body(&f, 3, "x0 + x1 + x2", 0).unwrap();
        assert!(!squarefree_test(&l.pow(3)));
    }
}
