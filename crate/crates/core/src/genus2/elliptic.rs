//! Two plane cubics glued at a point and embedded in complementary planes of `P^4`.

use serde::Serialize;

use super::quadric_web_from_points;
use crate::error::{Error, Result};
use crate::field::{Field, Gf};
use crate::matrix::Matrix;
use crate::poly::HomogPoly;
use crate::proj::{normalize, ProjSpace};
use crate::quadrics::{quadric_of, SymWeb};
use crate::quintic::{lift_poly, parse_tagged_form, singular_points};

/// Smooth plane cubic with a marked rational point.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkedCubic {
    pub cubic: HomogPoly<Gf>,
    pub marked: Vec<u64>,
}

impl MarkedCubic {
    pub fn new(cubic: HomogPoly<Gf>, marked: Vec<u64>) -> Result<Self> {
        let f = *cubic.field();
        if cubic.nvars() != 3 || cubic.degree() != 3 {
            return Err(Error::Input("expected a ternary cubic".into()));
        }
        if marked.len() != 3 || marked.iter().all(|&c| c == 0) {
            return Err(Error::Input("marked point must be a nonzero vector of length 3".into()));
        }
        if cubic.eval(&marked) != 0 {
            return Err(Error::Input("marked point is not on the cubic".into()));
        }
        let ext = f.extension(2)?;
        if !singular_points(&lift_poly(&cubic, &ext)).is_empty() {
            return Err(Error::Degenerate("cubic is singular".into()));
        }
        Ok(MarkedCubic { cubic, marked })
    }

    /// Frame sending `(0:0:1)` to the marked point.
    fn frame(&self) -> Matrix<Gf> {
        let f = *self.cubic.field();
        let pivot = self.marked.iter().position(|&c| c != 0).unwrap();
        let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
        Matrix::from_fn(&f, 3, 3, |i, j| match j {
            2 => self.marked[i],
            _ => u64::from(i == others[j]),
        })
    }
}

/// Parse two blocks of `GF(p): cubic` followed by `marked: a b c`.
pub fn parse_elliptic_fixture(text: &str) -> Result<(MarkedCubic, MarkedCubic)> {
    let lines: Vec<&str> = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).collect();
    if lines.len() != 4 {
        return Err(Error::Parse(format!("expected 4 lines (cubic, marked, cubic, marked), got {}", lines.len())));
    }
    let mut out = Vec::new();
    for pair in lines.chunks(2) {
        let cubic = parse_tagged_form(pair[0], 3)?;
        let f = *cubic.field();
        let coords = pair[1].strip_prefix("marked:").ok_or_else(|| Error::Parse(format!("expected `marked:`, got `{}`", pair[1])))?;
        let marked: Vec<u64> = coords.split(|c: char| c.is_whitespace() || c == ',').filter(|w| !w.is_empty()).map(|w| f.parse_elem(w)).collect::<Result<_>>()?;
        out.push(MarkedCubic::new(cubic, marked)?);
    }
    let second = out.pop().unwrap();
    Ok((out.pop().unwrap(), second))
}

/// The union of two cubics meeting at one point, its points and its web of quadrics.
#[derive(Clone, Debug)]
pub struct EllipticUnion {
    pub first: MarkedCubic,
    pub second: MarkedCubic,
    /// Embedded points over the quadratic extension.
    pub points: Vec<Vec<u64>>,
    pub web: SymWeb<Gf>,
    /// The common point of the two planes.
    pub node: Vec<u64>,
}

/// Embed `first` into `x3 = x4 = 0` and `second` into `x0 = x1 = 0`, both marked points going
/// to `(0:0:1:0:0)`, and compute the quadrics through the union.
pub fn elliptic_union_web(first: MarkedCubic, second: MarkedCubic) -> Result<EllipticUnion> {
    let f = *first.cubic.field();
    if *second.cubic.field() != f {
        return Err(Error::Input("cubics over different fields".into()));
    }
    let ext = f.extension(2)?;
    let mut points = Vec::new();
    for (which, mc) in [&first, &second].into_iter().enumerate() {
        let inv = mc.frame().inverse().ok_or_else(|| Error::Input("bad gluing data".into()))?;
        let inv = inv.map_field(&ext, |&c| c);
        let cubic = lift_poly(&mc.cubic, &ext);
        for u in ProjSpace::new(ext, 2).iter().filter(|u| cubic.eval(u) == 0) {
            let w = inv.mul_vec(&u);
            let mut x = match which {
                0 => vec![w[0], w[1], w[2], 0, 0],
                _ => vec![0, 0, w[2], w[1], w[0]],
            };
            normalize(&ext, &mut x);
            points.push(x);
        }
    }
    points.sort();
    points.dedup();
    let web = quadric_web_from_points(&f, &ext, &points)?;
    Ok(EllipticUnion { first, second, points, web, node: vec![0, 0, 1, 0, 0] })
}

impl MarkedCubic {
    /// The cubic in coordinates where the marked point is `(1:0:0)`.
    pub fn marked_at_first_vertex(&self) -> HomogPoly<Gf> {
        let frame = self.frame().to_rows();
        // frame sends (0:0:1) to the marked point; reversing the coordinates moves it to (1:0:0)
        let rows: Vec<Vec<u64>> = frame.iter().map(|r| r.iter().rev().copied().collect()).collect();
        self.cubic.linear_change(&rows)
    }

    /// Cone over the cubic with vertex at coordinate `vertex` of `P^3`, the marked point going
    /// to the line `x2 = x3 = 0`.
    pub fn cone(&self, vertex: usize) -> HomogPoly<Gf> {
        let c = self.marked_at_first_vertex();
        let other = 1 - vertex;
        let rows: Vec<Vec<u64>> = (0..3).map(|i| {
            let target = [other, 2, 3][i];
            (0..4).map(|j| u64::from(j == target)).collect()
        }).collect();
        c.linear_change(&rows)
    }
}

/// Census of a web of singular quadrics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularWebCensus {
    pub max_rank: usize,
    pub node_in_every_kernel: bool,
    /// Members of rank at most 3, with the number that factor into two rational linear forms.
    pub low_rank_members: usize,
    pub factored: usize,
    /// Factored members whose factors each contain one of the two planes.
    pub plane_pairs: usize,
}

/// Rank, kernel and factorization checks over every rational member of the web.
pub fn singular_web_census(eu: &EllipticUnion) -> SingularWebCensus {
    let f = *eu.web.field();
    let sp = ProjSpace::new(f, eu.web.params() - 1);
    let planes = [[0usize, 1, 2], [2, 3, 4]];
    let mut census = SingularWebCensus { max_rank: 0, node_in_every_kernel: true, low_rank_members: 0, factored: 0, plane_pairs: 0 };
    for t in sp.iter() {
        let m = eu.web.at(&t);
        let r = m.rank();
        census.max_rank = census.max_rank.max(r);
        if m.mul_vec(&eu.node).iter().any(|&c| c != 0) {
            census.node_in_every_kernel = false;
        }
        if r <= 3 {
            census.low_rank_members += 1;
            if let Some((l1, l2)) = factor_rank_two(&m) {
                census.factored += 1;
                let vanishes_on = |l: &[u64], pl: &[usize; 3]| pl.iter().all(|&i| l[i] == 0);
                let pairs = (vanishes_on(&l1, &planes[0]) && vanishes_on(&l2, &planes[1]))
                    || (vanishes_on(&l1, &planes[1]) && vanishes_on(&l2, &planes[0]));
                if pairs {
                    census.plane_pairs += 1;
                }
            }
        }
    }
    census
}

/// Write a quadric of rank at most 2 as a product of two rational linear forms, returned as
/// coefficient vectors. `None` if the rank exceeds 2 or the factors are conjugate.
pub fn factor_rank_two(m: &Matrix<Gf>) -> Option<(Vec<u64>, Vec<u64>)> {
    let f = *m.field();
    let n = m.rows();
    let (rref, pivots) = m.rref();
    let rows: Vec<Vec<u64>> = (0..pivots.len()).map(|i| rref.row(i).to_vec()).collect();
    let scale_to = |l: &[u64]| -> Option<(Vec<u64>, Vec<u64>)> {
        let target = quadric_of(m);
        let lin = HomogPoly::linear(&f, l);
        let sq = lin.mul(&lin);
        target.is_proportional(&sq).then(|| {
            let c = target.coeff(&sq.leading().unwrap().0);
            let c = f.div(&c, &sq.leading().unwrap().1).unwrap();
            (l.iter().map(|x| f.mul(x, &c)).collect(), l.to_vec())
        })
    };
    match rows.len() {
        0 => None,
        1 => scale_to(&rows[0]),
        2 => {
            // dual vectors w_i with r_i . w_j = delta_ij: standard vectors at the pivots
            let w: Vec<Vec<u64>> = pivots.iter().map(|&p| (0..n).map(|i| u64::from(i == p)).collect()).collect();
            let b11 = m.bilinear(&w[0], &w[0]);
            let b12 = m.bilinear(&w[0], &w[1]);
            let b22 = m.bilinear(&w[1], &w[1]);
            // b11 s^2 + 2 b12 s t + b22 t^2 with s = r_0 . x, t = r_1 . x
            let combine = |a: u64, b: u64| -> Vec<u64> { (0..n).map(|i| f.add(&f.mul(&a, &rows[0][i]), &f.mul(&b, &rows[1][i]))).collect() };
            if b11 == 0 {
                // t (2 b12 s + b22 t)
                return Some((combine(0, 1), combine(f.mul(&2, &b12), b22)));
            }
            let disc = f.sub(&f.mul(&b12, &b12), &f.mul(&b11, &b22));
            let d = f.sqrt(&disc)?;
            // b11 (s - r1 t)(s - r2 t), r = (-b12 +- d) / b11
            let r1 = f.div(&f.add(&f.neg(&b12), &d), &b11).unwrap();
            let r2 = f.div(&f.sub(&f.neg(&b12), &d), &b11).unwrap();
            Some((combine(b11, f.neg(&f.mul(&b11, &r1))), combine(1, f.neg(&r2))))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_factorization() {
        let f = Gf::prime(7).unwrap();
        let q = HomogPoly::parse_body(&f, 5, "x0*x3 + 2*x1*x3 + 3*x0*x4 + 6*x1*x4", 2).unwrap();
        let m = crate::quadrics::matrix_of_quadric(&q).unwrap();
        let (a, b) = factor_rank_two(&m).unwrap();
        let prod = HomogPoly::linear(&f, &a).mul(&HomogPoly::linear(&f, &b));
        assert!(prod.is_proportional(&q));
        let irreducible = HomogPoly::parse_body(&f, 5, "x0^2 + x1^2", 2).unwrap();
        assert!(factor_rank_two(&crate::quadrics::matrix_of_quadric(&irreducible).unwrap()).is_none());
    }
}
