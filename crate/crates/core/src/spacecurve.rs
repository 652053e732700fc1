//! Point samples of curves in `P^3`: projection, secant-line census, ideal dimensions and
//! the cone-liaison construction.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Gf};
use crate::hilbert::{double_vanishing_dimension, double_vanishing_forms, forms_vanishing, hilbert_function, interpolation_rank};
use crate::matrix::Matrix;
use crate::poly::HomogPoly;
use crate::upoly::UPoly;
use crate::proj::{is_prime_rational, normalize, normalized, ProjSpace};

/// Image of a point sample under projection from `center`, with the projection matrix.
#[derive(Clone, Debug)]
pub struct Projection {
    /// `4 x 5` matrix whose kernel is the center.
    pub matrix: Matrix<Gf>,
    pub points: Vec<Vec<u64>>,
    /// Points of the input that map to an image already produced by another point.
    pub collisions: usize,
}

/// Project points of `P^4` (coordinates in `ext`) from a rational `center` among them.
pub fn project_from_point(base: &Gf, ext: &Gf, pts: &[Vec<u64>], center: &[u64]) -> Result<Projection> {
    let c = normalized(base, center).ok_or_else(|| Error::Input("zero center".into()))?;
    if !pts.iter().any(|p| normalized(ext, p).as_deref() == Some(&c[..])) {
        return Err(Error::Input("projection center is not on the curve".into()));
    }
    let rows = Matrix::from_rows(base, vec![c.clone()]).nullspace();
    let matrix = Matrix::from_rows(base, rows);
    let lifted = matrix.map_field(ext, |&x| x);
    let mut points: Vec<Vec<u64>> = pts
        .iter()
        .filter(|p| normalized(ext, p).as_deref() != Some(&c[..]))
        .map(|p| normalized(ext, &lifted.mul_vec(p)).expect("only the center maps to zero"))
        .collect();
    let before = points.len();
    points.sort();
    points.dedup();
    let collisions = before - points.len();
    Ok(Projection { matrix, points, collisions })
}

/// A line of `P^3`, stored as the reduced row echelon form of two spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProjLine {
    pub rows: [Vec<u64>; 2],
}

impl ProjLine {
    /// The line through two distinct points; `None` if they coincide.
    pub fn through(field: &Gf, a: &[u64], b: &[u64]) -> Option<ProjLine> {
        let (r, piv) = Matrix::from_rows(field, vec![a.to_vec(), b.to_vec()]).rref();
        (piv.len() == 2).then(|| ProjLine { rows: [r.row(0).to_vec(), r.row(1).to_vec()] })
    }

    /// Two linear forms cutting out the line.
    pub fn equations(&self, field: &Gf) -> Vec<Vec<u64>> {
        Matrix::from_rows(field, self.rows.to_vec()).nullspace()
    }

    pub fn contains(&self, field: &Gf, x: &[u64]) -> bool {
        Matrix::from_rows(field, vec![self.rows[0].clone(), self.rows[1].clone(), x.to_vec()]).rank() == 2
    }

    /// Points of the line over `field` (which may extend the field of the spanning rows).
    pub fn points(&self, field: &Gf) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = ProjSpace::new(*field, 1)
            .iter()
            .map(|st| {
                let v: Vec<u64> = (0..self.rows[0].len())
                    .map(|i| field.add(&field.mul(&st[0], &self.rows[0][i]), &field.mul(&st[1], &self.rows[1][i])))
                    .collect();
                normalized(field, &v).unwrap()
            })
            .collect();
        out.sort();
        out
    }
}

/// Number of lines of `P^3(F_q)`.
pub fn line_count(field: &Gf) -> u64 {
    let q = field.q();
    (q * q + 1) * (q * q + q + 1)
}

/// All lines of `P^3(F_q)` in a fixed order (pivot pair, then free entries).
pub fn all_lines(field: &Gf) -> Vec<ProjLine> {
    let q = field.q();
    let mut out = Vec::with_capacity(line_count(field) as usize);
    for i in 0..4 {
        for j in (i + 1)..4 {
            let free0: Vec<usize> = ((i + 1)..4).filter(|&k| k != j).collect();
            let free1: Vec<usize> = ((j + 1)..4).collect();
            let nfree = (free0.len() + free1.len()) as u32;
            for mut code in 0..q.pow(nfree) {
                let mut r0 = vec![0u64; 4];
                let mut r1 = vec![0u64; 4];
                r0[i] = 1;
                r1[j] = 1;
                for (row, free) in [(&mut r0, &free0), (&mut r1, &free1)] {
                    for &k in free {
                        row[k] = code % q;
                        code /= q;
                    }
                }
                out.push(ProjLine { rows: [r0, r1] });
            }
        }
    }
    out
}

/// Incidence counts of rational lines with a Galois-closed point sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SecantCensus {
    /// `k -> number of lines containing exactly k sample points`, for `k >= 2`.
    pub histogram: BTreeMap<usize, usize>,
    /// Lines with at least four points, with their counts.
    pub quadrisecants: Vec<(ProjLine, usize)>,
    /// Largest number of such lines through one rational sample point.
    pub max_quadrisecants_through_point: usize,
    pub excluded: usize,
}

impl SecantCensus {
    pub fn at_least(&self, k: usize) -> usize {
        self.histogram.range(k..).map(|(_, n)| n).sum()
    }
}

/// Scan every rational line of `P^3(F_q)` and count the sample points (over `ext`) on it.
/// Lines in `excluded` are left out of the summary.
pub fn secant_census(base: &Gf, ext: &Gf, pts: &[Vec<u64>], excluded: &[ProjLine], budget: u64) -> Result<SecantCensus> {
    if line_count(base) > budget {
        return Err(Error::Budget(format!("{} lines exceed budget {budget}", line_count(base))));
    }
    let lines = all_lines(base);
    let index: HashMap<&ProjLine, usize> = lines.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let (rational, other): (Vec<&Vec<u64>>, Vec<&Vec<u64>>) = pts.iter().partition(|p| is_prime_rational(ext, p));
    let mut counts: Vec<usize> = lines
        .par_iter()
        .map(|l| {
            let eqs = l.equations(base);
            rational
                .iter()
                .filter(|p| eqs.iter().all(|e| e.iter().zip(p.iter()).fold(0, |a, (x, y)| base.add(&a, &base.mul(x, y))) == 0))
                .count()
        })
        .collect();
    // a non-rational point lies on exactly one rational line, the one through its conjugate
    let q0 = base.q();
    for p in other {
        let conj: Vec<u64> = p.iter().map(|&x| ext.frobenius_q(x, q0)).collect();
        let Some(l) = ProjLine::through(ext, p, &conj) else { continue };
        if let Some(&i) = index.get(&l) {
            counts[i] += 1;
        }
    }
    let skip: Vec<usize> = excluded.iter().filter_map(|l| index.get(l).copied()).collect();
    let mut histogram = BTreeMap::new();
    let mut quadrisecants = Vec::new();
    for (i, &c) in counts.iter().enumerate() {
        if c < 2 || skip.contains(&i) {
            continue;
        }
        *histogram.entry(c).or_insert(0) += 1;
        if c >= 4 {
            quadrisecants.push((lines[i].clone(), c));
        }
    }
    let max_quadrisecants_through_point = rational
        .iter()
        .map(|p| quadrisecants.iter().filter(|(l, _)| l.contains(base, p)).count())
        .max()
        .unwrap_or(0);
    Ok(SecantCensus { histogram, quadrisecants, max_quadrisecants_through_point, excluded: skip.len() })
}

/// Histogram of rational lines through pairs of sample points, by direct pair enumeration.
pub fn secant_histogram_brute_force(ext: &Gf, pts: &[Vec<u64>]) -> BTreeMap<usize, usize> {
    let mut seen: BTreeMap<ProjLine, usize> = BTreeMap::new();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let Some(l) = ProjLine::through(ext, &pts[i], &pts[j]) else { continue };
            if !l.rows.iter().all(|r| is_prime_rational(ext, r)) || seen.contains_key(&l) {
                continue;
            }
            let c = pts.iter().filter(|p| l.contains(ext, p)).count();
            seen.insert(l, c);
        }
    }
    let mut hist = BTreeMap::new();
    for c in seen.into_values() {
        *hist.entry(c).or_insert(0) += 1;
    }
    hist
}

/// Dimension of cubic forms vanishing on the sample.
pub fn cubic_through(ext: &Gf, pts: &[Vec<u64>]) -> usize {
    forms_vanishing(ext, 4, 3, pts).len()
}

/// Dimension of degree-`d` forms singular at every sample point.
pub fn double_ideal_dimension(ext: &Gf, pts: &[Vec<u64>], d: u32) -> usize {
    double_vanishing_dimension(ext, 4, d, pts)
}

/// Forms of degree `d` singular along `fit`, checked for singularity at `holdout`.
pub fn double_ideal_holdout(ext: &Gf, fit: &[Vec<u64>], holdout: &[Vec<u64>], d: u32) -> (usize, bool) {
    let forms = double_vanishing_forms(ext, 4, d, fit);
    let ok = forms.iter().all(|g| {
        let grads = g.gradient();
        holdout.iter().all(|p| g.eval(p) == 0 && grads.iter().all(|h| h.eval(p) == 0))
    });
    (forms.len(), ok)
}

/// Add the points of `line` over `ext` to a sample.
pub fn with_line(ext: &Gf, pts: &[Vec<u64>], line: &ProjLine) -> Vec<Vec<u64>> {
    let mut out = pts.to_vec();
    out.extend(line.points(ext));
    out.sort();
    out.dedup();
    out
}

/// Two cubic cones in `P^3` with vertices `(1:0:0:0)` and `(0:1:0:0)`, both containing the line
/// `x2 = x3 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConePair {
    pub first: HomogPoly<Gf>,
    pub second: HomogPoly<Gf>,
}

impl ConePair {
    /// `first` must not involve `x0` and have no `x1^3` term; `second` must not involve `x1`
    /// and have no `x0^3` term.
    pub fn new(first: HomogPoly<Gf>, second: HomogPoly<Gf>) -> Result<Self> {
        for (g, skip, lead) in [(&first, 0usize, 1usize), (&second, 1, 0)] {
            if g.nvars() != 4 || g.degree() != 3 || g.is_zero() {
                return Err(Error::Input("cones must be cubic forms in four variables".into()));
            }
            if g.terms().iter().any(|(m, _)| m[skip] != 0) {
                return Err(Error::Input(format!("cone must not involve x{skip}")));
            }
            let mut m = [0u8; 5];
            m[lead] = 3;
            if g.coeff(&m) != 0 {
                return Err(Error::Input("cones do not share the line x2 = x3 = 0".into()));
            }
        }
        Ok(ConePair { first, second })
    }

    pub fn vertices() -> [Vec<u64>; 2] {
        [vec![1, 0, 0, 0], vec![0, 1, 0, 0]]
    }

    pub fn common_line() -> ProjLine {
        ProjLine { rows: [vec![1, 0, 0, 0], vec![0, 1, 0, 0]] }
    }
}

/// Degree, genus and vertex data of the residual curve of the common line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiaisonReport {
    /// First differences of the Hilbert function of the two cones, degrees 4..=7.
    pub complete_intersection_slopes: Vec<usize>,
    /// Hilbert function of the residual point sample, degrees 2..=7.
    pub residual_hilbert: Vec<usize>,
    pub residual_degree: usize,
    pub residual_arithmetic_genus: i64,
    /// Both vertices lie on the closure of the residual sample.
    pub vertices_on_residual: [bool; 2],
    /// Rank of the Jacobian of the two cones at each vertex.
    pub vertex_jacobian_rank: [usize; 2],
    pub residual_points: usize,
}

impl LiaisonReport {
    pub fn vertices_singular(&self) -> bool {
        self.vertices_on_residual.iter().all(|&v| v) && self.vertex_jacobian_rank.iter().all(|&r| r <= 1)
    }
}

/// Points of the cone intersection off the common line, over `ext`. Each cone is a cubic in
/// one coordinate over every point `(x2:x3)` of the base line, so the points come from
/// univariate roots.
pub fn residual_points(cones: &ConePair, ext: &Gf) -> Vec<Vec<u64>> {
    let a = crate::quintic::lift_poly(&cones.first, ext);
    let b = crate::quintic::lift_poly(&cones.second, ext);
    let base: Vec<(u64, u64)> = std::iter::once((0, 1)).chain(ext.elements().map(|t| (1, t))).collect();
    let mut pts: Vec<Vec<u64>> = base
        .par_iter()
        .flat_map_iter(|&(s, t)| {
            let r1 = fiber(ext, &a, 1, s, t).roots();
            let r0 = fiber(ext, &b, 0, s, t).roots();
            let mut out = Vec::new();
            for &x0 in &r0 {
                for &x1 in &r1 {
                    let mut p = vec![x0, x1, s, t];
                    normalize(ext, &mut p);
                    out.push(p);
                }
            }
            out.into_iter()
        })
        .collect();
    pts.sort();
    pts
}

/// `g(..., x_var, ..., s, t)` as a polynomial in `x_var`, for a form in `x_var, x2, x3`.
fn fiber(ext: &Gf, g: &HomogPoly<Gf>, var: usize, s: u64, t: u64) -> UPoly<Gf> {
    let mut coeffs = vec![0u64; g.degree() as usize + 1];
    for (m, c) in g.terms() {
        let v = ext.mul(c, &ext.mul(&ext.pow(&s, m[2] as u64), &ext.pow(&t, m[3] as u64)));
        let e = m[var] as usize;
        coeffs[e] = ext.add(&coeffs[e], &v);
    }
    UPoly::new(ext, coeffs)
}

/// Smallest extension of degree `2..=4` over which the residual curve has at least `min`
/// points off the common line.
pub fn liaison_sample_field(cones: &ConePair, min: usize) -> Result<Gf> {
    let f = *cones.first.field();
    for k in 2..=4 {
        let ext = f.extension(k)?;
        if residual_points(cones, &ext).len() >= min {
            return Ok(ext);
        }
    }
    Err(Error::FieldTooSmall(format!("fewer than {min} residual points over F_{{q^4}}")))
}

/// Link the common line through the two cones and analyze the residual curve.
pub fn cone_liaison(cones: &ConePair, ext: &Gf) -> Result<(Vec<Vec<u64>>, LiaisonReport)> {
    let f = *cones.first.field();
    let gens = [cones.first.clone(), cones.second.clone()];
    let hf: Vec<usize> = (3..=7).map(|d| hilbert_function(&f, 4, &gens, d)).collect::<Result<_>>()?;
    let complete_intersection_slopes: Vec<usize> = hf.windows(2).map(|w| w[1] - w[0]).collect();
    if complete_intersection_slopes.iter().any(|&s| s != 9) {
        return Err(Error::Degenerate("the cones share a surface component".into()));
    }
    let pts = residual_points(cones, ext);
    let residual_hilbert: Vec<usize> = (2..=7).map(|d| interpolation_rank(ext, 4, d, &pts)).collect();
    let residual_degree = residual_hilbert[5] - residual_hilbert[4];
    let residual_arithmetic_genus = (residual_degree * 7 + 1) as i64 - residual_hilbert[5] as i64;
    let forms = forms_vanishing(ext, 4, 4, &pts);
    let vertices = ConePair::vertices();
    let vertices_on_residual = [0, 1].map(|i| !forms.is_empty() && forms.iter().all(|g| g.eval(&vertices[i]) == 0));
    let vertex_jacobian_rank = [0, 1].map(|i| {
        let rows: Vec<Vec<u64>> = gens.iter().map(|g| g.gradient().iter().map(|d| d.eval(&vertices[i])).collect()).collect();
        Matrix::from_rows(&f, rows).rank()
    });
    let report = LiaisonReport {
        complete_intersection_slopes,
        residual_hilbert,
        residual_degree,
        residual_arithmetic_genus,
        vertices_on_residual,
        vertex_jacobian_rank,
        residual_points: pts.len(),
    };
    Ok((pts, report))
}

/// Normalize a list of points in place and drop duplicates.
pub fn normalize_sample(field: &Gf, pts: &mut Vec<Vec<u64>>) {
    for p in pts.iter_mut() {
        normalize(field, p);
    }
    pts.sort();
    pts.dedup();
}
