//! Plane curves over finite fields: singular points, line components and conic factors.

use rayon::prelude::*;
use serde::Serialize;

use crate::bivar::squarefree_test;
use crate::error::{Error, Result};
use crate::field::{Field, Gf};
use crate::matrix::Matrix;
use crate::poly::{monomials, HomogPoly};
use crate::proj::ProjSpace;
use crate::upoly::UPoly;

/// A singular point and whether it is an ordinary double point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub point: Vec<u64>,
    pub node: bool,
}

/// Parse `GF(p^k): body` into a form in `nvars` variables over the named field.
pub fn parse_tagged_form(text: &str, nvars: usize) -> Result<HomogPoly<Gf>> {
    let (tag, body) = text.split_once(':').ok_or_else(|| Error::Parse(format!("missing field tag in `{}`", text.trim())))?;
    let field = match crate::field::parse_field_tag(tag)? {
        crate::field::AnyField::Finite(f) => f,
        _ => return Err(Error::Input("expected a finite field".into())),
    };
    let p = HomogPoly::parse_body(&field, nvars, body, 0)?;
    if p.is_zero() {
        return Err(Error::Input("the zero form defines no curve".into()));
    }
    Ok(p)
}

/// Copy of `p` with coefficients read in an extension of its prime field.
pub fn lift_poly(p: &HomogPoly<Gf>, ext: &Gf) -> HomogPoly<Gf> {
    assert_eq!(p.field().p(), ext.p(), "lift within one characteristic");
    p.map_field(ext, |&c| c)
}

/// Rank of the matrix of second partials at `pt`.
pub fn hessian_rank<K: Field>(p: &HomogPoly<K>, pt: &[K::Elem]) -> usize {
    let n = p.nvars();
    let grads = p.gradient();
    let rows: Vec<Vec<K::Elem>> = grads.iter().map(|g| (0..n).map(|j| g.partial(j).eval(pt)).collect()).collect();
    Matrix::from_rows(p.field(), rows).rank()
}

/// Whether `p` and all its first partials vanish at `pt`.
pub fn is_singular_at<K: Field>(p: &HomogPoly<K>, grads: &[HomogPoly<K>], pt: &[K::Elem]) -> bool {
    let f = p.field();
    f.is_zero(&p.eval(pt)) && grads.iter().all(|g| f.is_zero(&g.eval(pt)))
}

/// Singular points of a hypersurface over its coefficient field. A point is a node when
/// the Hessian has rank `n - 1` there (the Euler relation kills one direction).
pub fn singular_points(p: &HomogPoly<Gf>) -> Vec<SingularPoint> {
    let f = *p.field();
    let n = p.nvars();
    let grads = p.gradient();
    let sp = ProjSpace::new(f, n - 1);
    (0..sp.count())
        .into_par_iter()
        .filter_map(|i| {
            let pt = sp.point(i);
            if !is_singular_at(p, &grads, &pt) {
                return None;
            }
            let node = hessian_rank(p, &pt) == n - 1;
            Some(SingularPoint { point: pt, node })
        })
        .collect()
}

/// Linear forms over the coefficient field dividing `p`, normalized and in scan order.
pub fn lines_in_curve(p: &HomogPoly<Gf>) -> Vec<HomogPoly<Gf>> {
    let f = *p.field();
    let sp = ProjSpace::new(f, p.nvars() - 1);
    (0..sp.count())
        .into_par_iter()
        .filter_map(|i| {
            let l = HomogPoly::linear(&f, &sp.point(i));
            p.exact_divide(&l).map(|_| l)
        })
        .collect()
}

/// Number of conics scanned by [`conic_cubic_split`] over `field`.
pub fn conic_scan_size(field: &Gf) -> u64 {
    ProjSpace::new(*field, 5).count()
}

/// A conic factor and its cofactor, scanning `P^5` of conics in lexicographic order of
/// coefficient vectors (monomials in graded-lex order) and returning the first divisor.
pub fn conic_cubic_split(p: &HomogPoly<Gf>, budget: u64) -> Result<Option<(HomogPoly<Gf>, HomogPoly<Gf>)>> {
    if p.nvars() != 3 || p.degree() < 2 {
        return Err(Error::Input("conic split needs a plane curve of degree at least 2".into()));
    }
    let f = *p.field();
    let count = conic_scan_size(&f);
    if count > budget {
        return Err(Error::Budget(format!("{count} conics over {} exceed budget {budget}", f.tag())));
    }
    let basis = monomials(3, 2);
    let sp = ProjSpace::new(f, 5);
    let hit = (0..count).into_par_iter().find_map_first(|i| {
        let c = HomogPoly::from_dense(&f, 3, 2, &basis, &sp.point(i));
        p.exact_divide(&c).map(|r| (c, r))
    });
    Ok(hit)
}

/// Split `p` using a caller-supplied conic (works over any field).
pub fn split_with_candidate<K: Field>(p: &HomogPoly<K>, conic: &HomogPoly<K>) -> Option<HomogPoly<K>> {
    p.exact_divide(conic)
}

/// Restriction of `p` to the line through `a` and `b`, as a binary form in `(s, t)`
/// for the point `s a + t b`.
pub fn restrict_to_line<K: Field>(p: &HomogPoly<K>, a: &[K::Elem], b: &[K::Elem]) -> HomogPoly<K> {
    let f = p.field();
    let images: Vec<HomogPoly<K>> = a.iter().zip(b).map(|(x, y)| HomogPoly::linear(f, &[x.clone(), y.clone()])).collect();
    p.substitute_linear(&images)
}

/// Binary form `sum c_i s^i t^(d-i)` as the univariate `sum c_i s^i`, with its degree `d`.
pub fn binary_to_upoly<K: Field>(b: &HomogPoly<K>) -> UPoly<K> {
    let f = b.field();
    let d = b.degree() as usize;
    let mut c = vec![f.zero(); d + 1];
    for (m, v) in b.terms() {
        c[m[0] as usize] = v.clone();
    }
    UPoly::new(f, c)
}

/// Degrees (with multiplicity) of the irreducible factors of a nonzero binary form.
pub fn binary_factor_degrees(b: &HomogPoly<Gf>) -> Vec<usize> {
    let u = binary_to_upoly(b);
    let at_infinity = b.degree() as usize - u.degree().unwrap_or(0);
    let mut out = vec![1; at_infinity];
    for fac in u.factor() {
        for _ in 0..fac.multiplicity {
            out.push(fac.poly.degree().unwrap());
        }
    }
    out.sort_unstable();
    out
}

fn has_subset_sum(degs: &[usize], target: usize) -> bool {
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=target).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach[target]
}

/// A line on which the restriction of `p` has no factor of degree 2; such a line proves
/// that `p` has no conic factor over the coefficient field.
pub fn conic_factor_obstruction(p: &HomogPoly<Gf>, max_lines: u64) -> Option<Vec<u64>> {
    let f = *p.field();
    let sp = ProjSpace::new(f, 2);
    for i in 0..sp.count().min(max_lines) {
        let l = sp.point(i);
        let (a, b) = line_points(&f, &l);
        let r = restrict_to_line(p, &a, &b);
        if r.is_zero() {
            continue;
        }
        if !has_subset_sum(&binary_factor_degrees(&r), 2) {
            return Some(l);
        }
    }
    None
}

/// Two spanning points of the line `l . x = 0` in the plane.
pub fn line_points(f: &Gf, l: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let m = Matrix::from_rows(f, vec![l.to_vec()]);
    let ns = m.nullspace();
    (ns[0].clone(), ns[1].clone())
}

/// Verdict on a conic factor over one field.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SplitVerdict {
    Found { conic: String, cubic: String },
    /// Certified absent; `line` witnesses the obstruction or is empty after a full scan.
    Absent { line: Option<Vec<u64>> },
    Undetermined,
}

/// JSON-ready analysis of a plane quintic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuinticReport {
    pub field: String,
    pub degree: u32,
    pub squarefree: bool,
    pub singular_points: Vec<SingularPoint>,
    pub singular_points_quadratic_ext: usize,
    pub nodes_quadratic_ext: usize,
    pub lines: Vec<String>,
    pub split_base_field: SplitVerdict,
    pub split_quadratic_ext: SplitVerdict,
}

/// Full analysis: singular census over `F_q` and `F_{q^2}`, line components, and conic
/// factors over each field separately.
pub fn analyze(p: &HomogPoly<Gf>, budget: u64) -> Result<QuinticReport> {
    let f = *p.field();
    let squarefree = squarefree_test(p);
    let sing = singular_points(p);
    let lines: Vec<String> = lines_in_curve(p).iter().map(|l| l.body_text()).collect();
    let split_base_field = match conic_cubic_split(p, budget)? {
        Some((c, r)) => SplitVerdict::Found { conic: c.body_text(), cubic: r.body_text() },
        None => SplitVerdict::Absent { line: conic_factor_obstruction(p, 4096) },
    };
    let (ext_sing, ext_nodes, split_quadratic_ext) = if f.k() == 1 {
        let ext = f.extension(2)?;
        let lifted = lift_poly(p, &ext);
        let s = singular_points(&lifted);
        let nodes = s.iter().filter(|x| x.node).count();
        let verdict = if let SplitVerdict::Found { conic, cubic } = &split_base_field {
            SplitVerdict::Found { conic: conic.clone(), cubic: cubic.clone() }
        } else if let Some(l) = conic_factor_obstruction(&lifted, 4096) {
            SplitVerdict::Absent { line: Some(l) }
        } else {
            split_through_nodes(&lifted, &s)
        };
        (s.len(), nodes, verdict)
    } else {
        (sing.len(), sing.iter().filter(|x| x.node).count(), SplitVerdict::Undetermined)
    };
    Ok(QuinticReport {
        field: f.tag(),
        degree: p.degree(),
        squarefree,
        singular_points: sing,
        singular_points_quadratic_ext: ext_sing,
        nodes_quadratic_ext: ext_nodes,
        lines,
        split_base_field,
        split_quadratic_ext,
    })
}

/// Try conics through five of the rational singular points; a conic component meets the
/// residual cubic in singular points, so this finds splits whose nodes are rational.
fn split_through_nodes(p: &HomogPoly<Gf>, sing: &[SingularPoint]) -> SplitVerdict {
    let f = *p.field();
    let pts: Vec<Vec<u64>> = sing.iter().map(|s| s.point.clone()).collect();
    if pts.len() < 5 || pts.len() > 16 {
        return SplitVerdict::Undetermined;
    }
    let n = pts.len();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != 5 {
            continue;
        }
        let chosen: Vec<Vec<u64>> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| pts[i].clone()).collect();
        for c in crate::hilbert::forms_vanishing(&f, 3, 2, &chosen) {
            if let Some(r) = p.exact_divide(&c) {
                return SplitVerdict::Found { conic: c.monic().body_text(), cubic: r.body_text() };
            }
        }
    }
    SplitVerdict::Undetermined
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(f: &Gf, s: &str) -> HomogPoly<Gf> {
        HomogPoly::parse_body(f, 3, s, 0).unwrap()
    }

    #[test]
    fn smooth_conic_has_no_singular_points() {
        let f = Gf::prime(7).unwrap();
        assert!(singular_points(&parse(&f, "x0*x1 + x2^2")).is_empty());
    }

    #[test]
    fn cusp_is_not_a_node() {
        let f = Gf::prime(7).unwrap();
        let cusp = parse(&f, "x1^2*x2 + -1*x0^3");
        let conic = parse(&f, "x0^2 + x1^2 + 3*x2^2 + x0*x1");
        let s = singular_points(&cusp.mul(&conic));
        let cusp_pt = s.iter().find(|s| s.point == vec![0, 0, 1]).unwrap();
        assert!(!cusp_pt.node);
    }

    #[test]
    fn five_lines_are_all_found() {
        let f = Gf::prime(7).unwrap();
        let ls = ["x0", "x1", "x2", "x0 + x1", "x0 + 2*x2"];
        let mut p = HomogPoly::one(&f, 3);
        for l in ls {
            p = p.mul(&parse(&f, l));
        }
        assert_eq!(lines_in_curve(&p).len(), 5);
        let (c, r) = conic_cubic_split(&p, 1 << 20).unwrap().unwrap();
        assert_eq!(c.mul(&r), p);
        assert_eq!(c.degree(), 2);
    }

    #[test]
    fn subset_sums() {
        assert!(!has_subset_sum(&[1, 4], 2));
        assert!(!has_subset_sum(&[5], 2));
        assert!(has_subset_sum(&[1, 1, 3], 2));
        assert!(has_subset_sum(&[2, 3], 2));
    }
}
