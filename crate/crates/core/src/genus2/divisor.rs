//! Divisors cut on the embedded curve by hyperplanes, the bisecant curve of a web member,
//! its residual involution and the admissibility test for `3K` embeddings.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{CurvePoint, Embedding, Polarization};
use crate::error::{Error, Result};
use crate::field::{Field, Gf};
use crate::matrix::Matrix;
use crate::quadrics::SymWeb;
use crate::upoly::UPoly;

/// Series precision used at the points at infinity.
const SERIES_PRECISION: usize = 16;

/// Support of a prime divisor over the working field or one of its extensions.
#[derive(Clone, Debug, PartialEq)]
pub enum Place {
    Point(CurvePoint),
    /// One point `(r, y(r))` over each root `r` of an irreducible `x`-polynomial.
    BranchOrbit(UPoly<Gf>),
    /// Both points over each root of an irreducible `x`-polynomial.
    FiberOrbit(UPoly<Gf>),
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Point(_) => 1,
            Place::BranchOrbit(phi) => phi.degree().unwrap(),
            Place::FiberOrbit(phi) => 2 * phi.degree().unwrap(),
        }
    }
}

/// Effective divisor as a list of places with multiplicities.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Divisor {
    pub parts: Vec<(Place, usize)>,
}

impl Divisor {
    pub fn degree(&self) -> usize {
        self.parts.iter().map(|(p, m)| p.degree() * m).sum()
    }

    pub fn multiplicity(&self, pt: &CurvePoint) -> usize {
        self.parts
            .iter()
            .filter(|(p, _)| *p == Place::Point(*pt))
            .map(|(_, m)| *m)
            .sum()
    }

    pub fn add_point(&mut self, pt: CurvePoint, n: usize) {
        if n == 0 {
            return;
        }
        match self.parts.iter_mut().find(|(p, _)| *p == Place::Point(pt)) {
            Some((_, m)) => *m += n,
            None => self.parts.push((Place::Point(pt), n)),
        }
    }

    /// Subtract `n` copies of a point; fails if the divisor would stop being effective.
    pub fn remove(&mut self, pt: &CurvePoint, n: usize) -> Result<()> {
        let have = self.multiplicity(pt);
        if have < n {
            return Err(Error::Mismatch(format!("{pt:?} has multiplicity {have}, cannot remove {n}")));
        }
        for (p, m) in self.parts.iter_mut() {
            if *p == Place::Point(*pt) {
                *m -= n;
            }
        }
        self.parts.retain(|(_, m)| *m > 0);
        Ok(())
    }

    /// Points of the support defined over the working field, with multiplicities, sorted.
    pub fn points(&self) -> Vec<(CurvePoint, usize)> {
        let mut out: Vec<(CurvePoint, usize)> = self
            .parts
            .iter()
            .filter_map(|(p, m)| match p {
                Place::Point(pt) => Some((*pt, *m)),
                _ => None,
            })
            .collect();
        out.sort();
        out
    }

    /// Whether every place is a point over the working field.
    pub fn is_split(&self) -> bool {
        self.parts.iter().all(|(p, _)| matches!(p, Place::Point(_)))
    }
}

fn linear(field: &Gf, root: u64) -> UPoly<Gf> {
    UPoly::linear_root(field, &root)
}

/// Square root of a power series with constant term 1.
fn series_sqrt(field: &Gf, g: &[u64], n: usize) -> Vec<u64> {
    let half = field.inv(&2).expect("odd characteristic");
    let mut w = vec![0u64; n];
    w[0] = 1;
    for k in 1..n {
        let mut acc = g.get(k).copied().unwrap_or(0);
        for i in 1..k {
            acc = field.sub(&acc, &field.mul(&w[i], &w[k - i]));
        }
        w[k] = field.mul(&acc, &half);
    }
    w
}

/// `t^shift * p(1/t)` as a coefficient vector, requiring `deg p <= shift`.
fn reversed(p: &UPoly<Gf>, shift: usize, n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n.max(shift + 1)];
    for (i, c) in p.coeffs().iter().enumerate() {
        assert!(i <= shift, "pole order exceeds the allowed bound");
        out[shift - i] = *c;
    }
    out.truncate(n);
    out
}

/// Divisor of zeros, as a section of the embedding bundle, of the hyperplane `c . x = 0`
/// pulled back to the curve. `c` has coordinates in `ext`.
pub fn section_divisor(emb: &Embedding, ext: &Gf, c: &[u64]) -> Result<Divisor> {
    let f = ext;
    if c.len() != 5 {
        return Err(Error::Input("a hyperplane in P^4 needs 5 coefficients".into()));
    }
    let fx = emb.curve.sextic_over(f);
    let (u, v, bound, extras) = match emb.bundle {
        Polarization::ThreeK => (UPoly::new(f, c[..4].to_vec()), UPoly::new(f, vec![c[4]]), 3usize, vec![]),
        Polarization::TwoKPlus { p: (a, b), q: (cx, d) } => {
            let xa = linear(f, a);
            let xc = linear(f, cx);
            let quad = UPoly::new(f, c[..3].to_vec());
            let u = quad
                .mul(&xa)
                .mul(&xc)
                .add(&xc.scale(&f.mul(&c[3], &b)))
                .add(&xa.scale(&f.mul(&c[4], &d)));
            let v = xc.scale(&c[3]).add(&xa.scale(&c[4]));
            let extras = vec![CurvePoint::Affine { x: a, y: f.neg(&b) }, CurvePoint::Affine { x: cx, y: f.neg(&d) }];
            (u, v, 4, extras)
        }
    };
    if u.is_zero() && v.is_zero() {
        return Err(Error::Degenerate("the zero hyperplane".into()));
    }
    let mut div = Divisor::default();

    // common factor of U and V: whole fibres of the x-map
    let g = if v.is_zero() {
        u.monic()
    } else if u.is_zero() {
        v.monic()
    } else {
        u.gcd(&v).monic()
    };
    let u1 = if u.is_zero() { u.clone() } else { u.exact_div(&g).expect("gcd divides") };
    let v1 = if v.is_zero() { v.clone() } else { v.exact_div(&g).expect("gcd divides") };
    if g.degree().unwrap_or(0) > 0 {
        for fa in g.factor() {
            let e = fa.multiplicity;
            if fa.poly.degree() == Some(1) {
                let r = f.neg(&fa.poly.coeff(0));
                let val = fx.eval(&r);
                if val == 0 {
                    div.add_point(CurvePoint::Affine { x: r, y: 0 }, 2 * e);
                } else if let Some(y) = f.sqrt(&val) {
                    div.add_point(CurvePoint::Affine { x: r, y }, e);
                    div.add_point(CurvePoint::Affine { x: r, y: f.neg(&y) }, e);
                } else {
                    div.parts.push((Place::FiberOrbit(fa.poly), e));
                }
            } else {
                div.parts.push((Place::FiberOrbit(fa.poly), e));
            }
        }
    }

    // coprime part: zeros read off the norm U^2 - f V^2
    let norm = u1.mul(&u1).sub(&fx.mul(&v1).mul(&v1));
    if norm.degree().unwrap_or(0) > 0 {
        for fa in norm.factor() {
            if fa.poly.degree() == Some(1) {
                let r = f.neg(&fa.poly.coeff(0));
                let y = f.div(&f.neg(&u1.eval(&r)), &v1.eval(&r)).expect("coprime U, V");
                div.add_point(CurvePoint::Affine { x: r, y }, fa.multiplicity);
            } else {
                div.parts.push((Place::BranchOrbit(fa.poly), fa.multiplicity));
            }
        }
    }

    // points at infinity, local parameter t = 1/x
    let lead = emb.curve.lead();
    let s0 = f
        .sqrt(&lead)
        .ok_or_else(|| Error::FieldTooSmall("points at infinity are not defined over the working field".into()))?;
    let n = SERIES_PRECISION;
    let inv_lead = f.inv(&lead).unwrap();
    let g_series: Vec<u64> = (0..n)
        .map(|k| if k <= 6 { f.mul(&fx.coeff(6 - k), &inv_lead) } else { 0 })
        .collect();
    let w = series_sqrt(f, &g_series, n);
    let ut = reversed(&u, bound, n);
    let vt = reversed(&v, bound - 3, n);
    let mut vw = vec![0u64; n];
    for (i, a) in vt.iter().enumerate() {
        for (j, b) in w.iter().enumerate().take(n - i) {
            vw[i + j] = f.add(&vw[i + j], &f.mul(a, b));
        }
    }
    for s in [s0, f.neg(&s0)] {
        let ord = (0..n).find(|&k| {
            let ui = ut.get(k).copied().unwrap_or(0);
            f.add(&ui, &f.mul(&s, &vw[k])) != 0
        });
        let ord = ord.ok_or_else(|| Error::Degenerate("section vanishes to high order at infinity".into()))?;
        div.add_point(CurvePoint::Infinity { s }, ord);
    }

    for pt in &extras {
        div.remove(pt, 1)?;
    }
    if div.degree() != 6 {
        return Err(Error::Mismatch(format!("hyperplane section has degree {}, expected 6", div.degree())));
    }
    div.parts.sort_by_key(|(p, _)| match p {
        Place::Point(pt) => (0, Some(*pt), Vec::new()),
        Place::BranchOrbit(phi) => (1, None, phi.coeffs().to_vec()),
        Place::FiberOrbit(phi) => (2, None, phi.coeffs().to_vec()),
    });
    Ok(div)
}

/// Degree-4 residual of `2p` in the tangent hyperplane section `Q(p, .) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub divisor: Divisor,
    /// Multiplicity of `p` in the full section (at least 2).
    pub contact: usize,
}

/// `div(Q(p, .)) - 2p` for a web member `q` over the base field.
pub fn residual_divisor(emb: &Embedding, q: &Matrix<Gf>, ext: &Gf, p: &CurvePoint) -> Result<Residual> {
    let m = q.map_field(ext, |&c| c);
    let c = m.mul_vec(&emb.map(ext, p));
    if c.iter().all(|&x| x == 0) {
        return Err(Error::Degenerate("the point lies in the vertex of the quadric".into()));
    }
    let mut divisor = section_divisor(emb, ext, &c)?;
    let contact = divisor.multiplicity(p);
    if contact < 2 {
        return Err(Error::Mismatch(format!("tangent section meets the point with multiplicity {contact}")));
    }
    divisor.remove(p, 2)?;
    Ok(Residual { divisor, contact })
}

/// Unordered pair of points of the curve, stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PairDivisor {
    pub first: CurvePoint,
    pub second: CurvePoint,
}

impl PairDivisor {
    pub fn new(a: CurvePoint, b: CurvePoint) -> Self {
        if a <= b {
            PairDivisor { first: a, second: b }
        } else {
            PairDivisor { first: b, second: a }
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.first == self.second
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        self.first == *p || self.second == *p
    }
}

/// Whether the line through `u` and `v` lies on the quadric, by evaluation at three of its points.
pub fn line_on_quadric(m: &Matrix<Gf>, u: &[u64], v: &[u64]) -> bool {
    let f = m.field();
    let w: Vec<u64> = u.iter().zip(v).map(|(a, b)| f.add(a, b)).collect();
    [u, v, &w[..]].iter().all(|x| m.bilinear(x, x) == 0)
}

/// Degree-2 divisors defined over the base field whose bisecant lies in the web member `q`:
/// pairs of rational points, Frobenius-conjugate pairs over the quadratic extension, and
/// tangent lines at rational points. Pairs in the canonical pencil are excluded.
pub fn bisecant_curve(emb: &Embedding, q: &Matrix<Gf>, ext: &Gf) -> Result<Vec<PairDivisor>> {
    let base = *emb.field();
    if ext.p() != base.p() || ext.k() != 2 * base.k() {
        return Err(Error::Input("bisecant enumeration needs the quadratic extension".into()));
    }
    let m = q.map_field(ext, |&c| c);
    let pts = emb.curve.points(ext);
    let images: Vec<Vec<u64>> = pts.iter().map(|p| emb.map(ext, p)).collect();
    let rational: Vec<usize> = (0..pts.len()).filter(|&i| pts[i].is_rational_over_prime(ext)).collect();
    let q0 = base.q();

    let mut out: Vec<PairDivisor> = rational
        .par_iter()
        .enumerate()
        .flat_map_iter(|(a, &i)| {
            let mut found = Vec::new();
            for &j in &rational[a + 1..] {
                if pts[j] != pts[i].hyperelliptic_conjugate(ext) && line_on_quadric(&m, &images[i], &images[j]) {
                    found.push(PairDivisor::new(pts[i], pts[j]));
                }
            }
            found.into_iter()
        })
        .collect();

    let conjugate: Vec<PairDivisor> = (0..pts.len())
        .into_par_iter()
        .filter_map(|i| {
            let p = pts[i];
            if p.is_rational_over_prime(ext) {
                return None;
            }
            let fp = p.frobenius(ext, q0);
            if fp <= p || fp == p.hyperelliptic_conjugate(ext) {
                return None;
            }
            line_on_quadric(&m, &images[i], &emb.map(ext, &fp)).then(|| PairDivisor::new(p, fp))
        })
        .collect();
    out.extend(conjugate);

    let diagonal: Vec<Result<Option<PairDivisor>>> = rational
        .par_iter()
        .map(|&i| {
            let c = m.mul_vec(&images[i]);
            if c.iter().all(|&x| x == 0) {
                return Ok(None);
            }
            let d = section_divisor(emb, ext, &c)?;
            Ok((d.multiplicity(&pts[i]) >= 3).then(|| PairDivisor::new(pts[i], pts[i])))
        })
        .collect();
    for d in diagonal {
        out.extend(d?);
    }
    out.sort();
    Ok(out)
}

/// Hasse-Weil window `q + 1 +- 2 g sqrt(q)` for a curve of genus `g`.
pub fn hasse_weil_window(q: u64, genus: u64) -> (f64, f64) {
    let c = q as f64 + 1.0;
    let r = 2.0 * genus as f64 * (q as f64).sqrt();
    (c - r, c + r)
}

/// The pair `xi'` with `xi + xi'` cut out together with a canonical pair `R + iota R`
/// by one hyperplane.
pub fn residual_involution(emb: &Embedding, ext: &Gf, xi: &PairDivisor) -> Result<PairDivisor> {
    let (p1, p2) = (xi.first, xi.second);
    let forbidden = [p1, p2, p1.hyperelliptic_conjugate(ext), p2.hyperelliptic_conjugate(ext)];
    let candidates = emb.curve.points(ext);
    for r in candidates.iter().filter(|r| !r.is_weierstrass() && !forbidden.contains(r)) {
        let ir = r.hyperelliptic_conjugate(ext);
        let mut through = vec![p1, *r, ir];
        if !xi.is_diagonal() {
            through.push(p2);
        }
        let rows: Vec<Vec<u64>> = through.iter().map(|p| emb.map(ext, p)).collect();
        let null = Matrix::from_rows(ext, rows).nullspace();
        let Some(mut d) = hyperplane_through(emb, ext, &null, xi)? else {
            continue;
        };
        for p in [p1, p2, *r, ir] {
            d.remove(&p, 1)?;
        }
        if !d.is_split() {
            return Err(Error::FieldTooSmall("residual pair is not defined over the working field".into()));
        }
        let pts: Vec<CurvePoint> = d.points().into_iter().flat_map(|(p, m)| std::iter::repeat_n(p, m)).collect();
        if pts.len() != 2 {
            return Err(Error::Mismatch(format!("residual has degree {}", pts.len())));
        }
        return Ok(PairDivisor::new(pts[0], pts[1]));
    }
    Err(Error::Degenerate("no auxiliary canonical pair spans a hyperplane".into()))
}

/// Section divisor of the unique hyperplane in the span of `null` containing the bisecant of
/// `xi` (for a diagonal pair, the member tangent at the point).
fn hyperplane_through(emb: &Embedding, ext: &Gf, null: &[Vec<u64>], xi: &PairDivisor) -> Result<Option<Divisor>> {
    if !xi.is_diagonal() {
        return match null {
            [c] => section_divisor(emb, ext, c).map(Some),
            _ => Ok(None),
        };
    }
    let [n1, n2] = null else {
        return Ok(None);
    };
    let pencil = std::iter::once(n2.clone()).chain(
        ext.elements()
            .map(|l| n1.iter().zip(n2).map(|(a, b)| ext.add(a, &ext.mul(&l, b))).collect::<Vec<u64>>()),
    );
    for c in pencil {
        let d = section_divisor(emb, ext, &c)?;
        if d.multiplicity(&xi.first) >= 2 {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Even subset of the six Weierstrass indices modulo complement: a point of order at most 2
/// in the Jacobian. Stored as a bitmask not containing index 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoTorsionLabel(u8);

impl TwoTorsionLabel {
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        for &i in indices {
            if i >= 6 {
                return Err(Error::Input(format!("Weierstrass index {i} out of range")));
            }
            mask ^= 1 << i;
        }
        if !mask.count_ones().is_multiple_of(2) {
            return Err(Error::Input("two-torsion labels need an even subset".into()));
        }
        if mask & 0b100000 != 0 {
            mask ^= 0b111111;
        }
        Ok(TwoTorsionLabel(mask))
    }

    pub fn all() -> Vec<TwoTorsionLabel> {
        (0u8..32).filter(|m| m.count_ones() % 2 == 0).map(TwoTorsionLabel).collect()
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..6).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.0 == 0
    }

    /// Sum of two labels.
    pub fn add(&self, other: &Self) -> Self {
        TwoTorsionLabel(self.0 ^ other.0)
    }

    /// The pair of Weierstrass indices carrying this nontrivial label.
    pub fn weierstrass_pair(&self) -> Option<(usize, usize)> {
        let idx = if self.0.count_ones() == 2 {
            self.indices()
        } else if self.0.count_ones() == 4 {
            (0..6).filter(|i| self.0 & (1 << i) == 0).collect()
        } else {
            return None;
        };
        Some((idx[0], idx[1]))
    }
}

impl Serialize for TwoTorsionLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

/// Outcome of the special-line test on a web member.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadricAdmissibility {
    pub rank: usize,
    /// Labels of the Weierstrass-pair lines lying on the quadric.
    pub weierstrass_lines: Vec<TwoTorsionLabel>,
    /// The canonical-pencil bisecants lie on the quadric.
    pub canonical_pencil: bool,
    pub admissible: bool,
}

/// Weierstrass images over the splitting field of the sextic.
fn weierstrass_images(emb: &Embedding) -> Result<(Gf, Vec<Vec<u64>>)> {
    let d = emb.curve.splitting_degree();
    if d > 4 {
        return Err(Error::FieldTooSmall(format!("Weierstrass points need an extension of degree {d}")));
    }
    let big = emb.field().extension(d)?;
    let xs = emb.curve.weierstrass_x(&big).expect("sextic splits over its splitting field");
    let pts = xs.iter().map(|&x| emb.map(&big, &CurvePoint::Affine { x, y: 0 })).collect();
    Ok((big, pts))
}

/// Whether the member `t` of the web avoids the 16 special lines of a `3K` embedding:
/// the 15 Weierstrass-pair lines and the canonical-pencil bisecants (tested on three samples).
pub fn admissible_quadric(emb: &Embedding, web: &SymWeb<Gf>, t: &[u64]) -> Result<QuadricAdmissibility> {
    if emb.bundle != Polarization::ThreeK {
        return Err(Error::Input("the special-line test is implemented for 3K embeddings".into()));
    }
    let m = web.at(t);
    let rank = m.rank();
    let (big, w) = weierstrass_images(emb)?;
    let mb = m.map_field(&big, |&c| c);
    let mut weierstrass_lines = Vec::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            if mb.bilinear(&w[i], &w[j]) == 0 {
                weierstrass_lines.push(TwoTorsionLabel::new(&[i, j])?);
            }
        }
    }
    let ext = emb.sample_field();
    let me = m.map_field(&ext, |&c| c);
    let samples: Vec<CurvePoint> = emb
        .curve
        .points(&ext)
        .into_iter()
        .filter(|p| !p.is_weierstrass() && matches!(p, CurvePoint::Affine { .. }))
        .take(3)
        .collect();
    let canonical_pencil = samples.iter().any(|r| {
        let u = emb.map(&ext, r);
        let v = emb.map(&ext, &r.hyperelliptic_conjugate(&ext));
        line_on_quadric(&me, &u, &v)
    });
    let admissible = rank >= 4 && weierstrass_lines.is_empty() && !canonical_pencil;
    Ok(QuadricAdmissibility { rank, weierstrass_lines, canonical_pencil, admissible })
}

/// Parameters of a web member containing the line through Weierstrass points `i` and `j`,
/// when both are rational.
pub fn member_containing_weierstrass_line(emb: &Embedding, web: &SymWeb<Gf>, i: usize, j: usize) -> Result<Option<Vec<u64>>> {
    let f = *emb.field();
    let xs = f_roots(emb);
    if xs.len() != 6 || i >= 6 || j >= 6 || i == j {
        return Ok(None);
    }
    let wi = emb.map(&f, &CurvePoint::Affine { x: xs[i], y: 0 });
    let wj = emb.map(&f, &CurvePoint::Affine { x: xs[j], y: 0 });
    let row: Vec<u64> = web.coefficient_matrices().iter().map(|mk| mk.bilinear(&wi, &wj)).collect();
    Ok(Matrix::from_rows(&f, vec![row]).nullspace().into_iter().next())
}

fn f_roots(emb: &Embedding) -> Vec<u64> {
    emb.curve.sextic().roots()
}
