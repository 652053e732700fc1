//! Genus-2 curves `y^2 = f(x)` with `deg f = 6`, their degree-6 embeddings in `P^4`,
//! the web of quadrics through the image and its plane-times-quartic discriminant.

pub mod divisor;
pub mod elliptic;
pub mod kummer;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Gf};
use crate::hilbert::forms_vanishing;
use crate::matrix::Matrix;
use crate::poly::HomogPoly;
use crate::proj::{normalize, ProjSpace};
use crate::quadrics::{matrix_of_quadric, SymWeb};
use crate::quintic::{lift_poly, singular_points, SingularPoint};
use crate::upoly::{Factor, UPoly};

/// A point of the smooth model of `y^2 = f(x)`; coordinates are encodings in the field
/// the point was computed over. `Infinity { s }` is the point where `y / x^3 -> s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CurvePoint {
    Affine { x: u64, y: u64 },
    Infinity { s: u64 },
}

impl CurvePoint {
    /// Image under the hyperelliptic involution `y -> -y`.
    pub fn hyperelliptic_conjugate(&self, field: &Gf) -> CurvePoint {
        match *self {
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x, y: field.neg(&y) },
            CurvePoint::Infinity { s } => CurvePoint::Infinity { s: field.neg(&s) },
        }
    }

    /// Image under the `p`-power Frobenius of `field`'s prime field raised to `power`.
    pub fn frobenius(&self, field: &Gf, q0: u64) -> CurvePoint {
        match *self {
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: field.frobenius_q(x, q0), y: field.frobenius_q(y, q0) },
            CurvePoint::Infinity { s } => CurvePoint::Infinity { s: field.frobenius_q(s, q0) },
        }
    }

    pub fn is_rational_over_prime(&self, field: &Gf) -> bool {
        match *self {
            CurvePoint::Affine { x, y } => field.in_prime_field(x) && field.in_prime_field(y),
            CurvePoint::Infinity { s } => field.in_prime_field(s),
        }
    }

    pub fn is_weierstrass(&self) -> bool {
        matches!(self, CurvePoint::Affine { y: 0, .. })
    }
}

/// Smooth genus-2 curve `y^2 = f(x)`, `deg f = 6`, over a prime field of odd characteristic.
#[derive(Clone, Debug, PartialEq)]
pub struct Genus2Curve {
    field: Gf,
    f: UPoly<Gf>,
}

impl Genus2Curve {
    /// `coeffs` lists `f_0, ..., f_6`.
    pub fn new(field: &Gf, coeffs: &[u64]) -> Result<Self> {
        if field.k() != 1 || field.p() == 2 {
            return Err(Error::Input("genus-2 curves need an odd prime field".into()));
        }
        if coeffs.len() != 7 {
            return Err(Error::Input(format!("expected 7 sextic coefficients, got {}", coeffs.len())));
        }
        let f = UPoly::new(field, coeffs.iter().map(|&c| c % field.p()).collect());
        if f.degree() != Some(6) {
            return Err(Error::Input("f must have degree exactly 6".into()));
        }
        if !f.is_squarefree() {
            return Err(Error::Degenerate("f has a repeated root; the curve is singular".into()));
        }
        Ok(Genus2Curve { field: *field, f })
    }

    /// Parse `GF(p): f0 f1 ... f6` (whitespace or comma separated).
    pub fn parse_fixture(text: &str) -> Result<Self> {
        let body: Vec<&str> = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).collect();
        let joined = body.join(" ");
        let (tag, rest) = joined.split_once(':').ok_or_else(|| Error::Parse("missing field tag".into()))?;
        let field = match crate::field::parse_field_tag(tag)? {
            crate::field::AnyField::Finite(f) => f,
            _ => return Err(Error::Parse("genus-2 fixtures need a finite field".into())),
        };
        let coeffs: Vec<u64> = rest
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| field.parse_elem(s))
            .collect::<Result<_>>()?;
        Self::new(&field, &coeffs)
    }

    pub fn to_fixture_text(&self) -> String {
        let cs: Vec<String> = (0..7).map(|i| self.f.coeff(i).to_string()).collect();
        format!("{}: {}\n", self.field.tag(), cs.join(" "))
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }
    pub fn sextic(&self) -> &UPoly<Gf> {
        &self.f
    }

    /// `f` with coefficients read in `ext`.
    pub fn sextic_over(&self, ext: &Gf) -> UPoly<Gf> {
        self.f.map_field(ext, |&c| c)
    }

    pub fn lead(&self) -> u64 {
        *self.f.lead().unwrap()
    }

    /// Irreducible factors of `f` over the base field.
    pub fn weierstrass_factors(&self) -> Vec<Factor<Gf>> {
        self.f.factor()
    }

    /// Degree of the splitting field of `f` over the base field.
    pub fn splitting_degree(&self) -> u32 {
        self.weierstrass_factors()
            .iter()
            .map(|fa| fa.poly.degree().unwrap() as u32)
            .fold(1, |a, d| a / gcd(a, d) * d)
    }

    /// The six Weierstrass `x`-values in `ext`, if `f` splits there.
    pub fn weierstrass_x(&self, ext: &Gf) -> Option<Vec<u64>> {
        let roots = self.sextic_over(ext).roots();
        (roots.len() == 6).then_some(roots)
    }

    /// All points over `ext` (an extension of the base field), sorted.
    pub fn points(&self, ext: &Gf) -> Vec<CurvePoint> {
        let f = self.sextic_over(ext);
        let mut out: Vec<CurvePoint> = ext
            .elements()
            .collect::<Vec<_>>()
            .into_par_iter()
            .flat_map_iter(|x| {
                let v = f.eval(&x);
                let mut pts = Vec::new();
                if v == 0 {
                    pts.push(CurvePoint::Affine { x, y: 0 });
                } else if let Some(y) = ext.sqrt(&v) {
                    pts.push(CurvePoint::Affine { x, y });
                    pts.push(CurvePoint::Affine { x, y: ext.neg(&y) });
                }
                pts.into_iter()
            })
            .collect();
        if let Some(s) = ext.sqrt(&self.lead()) {
            out.push(CurvePoint::Infinity { s });
            out.push(CurvePoint::Infinity { s: ext.neg(&s) });
        }
        out.sort();
        out
    }

    /// Whether `pt` (over `ext`) lies on the curve.
    pub fn contains(&self, ext: &Gf, pt: &CurvePoint) -> bool {
        match *pt {
            CurvePoint::Affine { x, y } => ext.mul(&y, &y) == self.sextic_over(ext).eval(&x),
            CurvePoint::Infinity { s } => ext.mul(&s, &s) == self.lead(),
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Degree-6 line bundle used for the embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Polarization {
    /// Three times the canonical class.
    ThreeK,
    /// Twice the canonical class plus `P + Q` for rational affine points `P`, `Q`.
    TwoKPlus { p: (u64, u64), q: (u64, u64) },
}

/// A genus-2 curve together with the map to `P^4` given by a degree-6 bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    pub curve: Genus2Curve,
    pub bundle: Polarization,
}

impl Embedding {
    /// Validates the bundle data: `P`, `Q` must be distinct rational points, not Weierstrass,
    /// and not exchanged by the hyperelliptic involution.
    pub fn new(curve: Genus2Curve, bundle: Polarization) -> Result<Self> {
        if let Polarization::TwoKPlus { p, q } = bundle {
            let f = *curve.field();
            for (x, y) in [p, q] {
                if !curve.contains(&f, &CurvePoint::Affine { x, y }) {
                    return Err(Error::Input(format!("({x}, {y}) is not on the curve")));
                }
                if y == 0 {
                    return Err(Error::Input("a Weierstrass point in the divisor; move it".into()));
                }
            }
            if p.0 == q.0 {
                return Err(Error::Input("divisor points share an x-coordinate; move one".into()));
            }
        }
        Ok(Embedding { curve, bundle })
    }

    pub fn field(&self) -> &Gf {
        self.curve.field()
    }

    /// Parse a curve fixture with an optional `bundle: 3K` or `bundle: 2K+D x1,y1 x2,y2` line
    /// (default `3K`).
    pub fn parse_fixture(text: &str) -> Result<Self> {
        let mut curve_lines = Vec::new();
        let mut bundle = Polarization::ThreeK;
        for line in text.lines() {
            let body = line.split('#').next().unwrap_or("").trim();
            match body.strip_prefix("bundle:") {
                Some(spec) => bundle = parse_bundle(spec)?,
                None => curve_lines.push(body),
            }
        }
        let curve = Genus2Curve::parse_fixture(&curve_lines.join("\n"))?;
        Embedding::new(curve, bundle)
    }

    pub fn to_fixture_text(&self) -> String {
        let bundle = match self.bundle {
            Polarization::ThreeK => "3K".to_string(),
            Polarization::TwoKPlus { p, q } => format!("2K+D {},{} {},{}", p.0, p.1, q.0, q.1),
        };
        format!("{}bundle: {bundle}\n", self.curve.to_fixture_text())
    }

    /// Normalized image in `P^4(ext)`.
    pub fn map(&self, ext: &Gf, pt: &CurvePoint) -> Vec<u64> {
        let f = ext;
        let mut v = match (self.bundle, *pt) {
            (Polarization::ThreeK, CurvePoint::Affine { x, y }) => {
                let x2 = f.mul(&x, &x);
                vec![1, x, x2, f.mul(&x2, &x), y]
            }
            (Polarization::ThreeK, CurvePoint::Infinity { s }) => vec![0, 0, 0, 1, s],
            (Polarization::TwoKPlus { .. }, CurvePoint::Infinity { s }) => vec![0, 0, 1, s, s],
            (Polarization::TwoKPlus { p, q }, CurvePoint::Affine { x, y }) => {
                if (x, y) == p {
                    vec![0, 0, 0, 1, 0]
                } else if (x, y) == q {
                    vec![0, 0, 0, 0, 1]
                } else {
                    let x2 = f.mul(&x, &x);
                    vec![1, x, x2, self.pole_function(f, p, x, y), self.pole_function(f, q, x, y)]
                }
            }
        };
        normalize(f, &mut v);
        v
    }

    /// Value of `(y + b) / (x - a)` at `(x, y) != (a, b)`.
    fn pole_function(&self, f: &Gf, (a, b): (u64, u64), x: u64, y: u64) -> u64 {
        if x == a {
            // at (a, -b): (f(x) - f(a)) / ((x - a)(y - b)) -> f'(a) / (-2b)
            let d = self.curve.sextic_over(f).derivative().eval(&a);
            f.div(&f.neg(&d), &f.mul(&2, &b)).expect("b is nonzero")
        } else {
            f.div(&f.add(&y, &b), &f.sub(&x, &a)).expect("x != a")
        }
    }

    /// Images of all points over `ext`.
    pub fn embedded_points(&self, ext: &Gf) -> Vec<Vec<u64>> {
        self.curve.points(ext).iter().map(|p| self.map(ext, p)).collect()
    }

    /// Working field for sampling: the quadratic extension of the base field.
    pub fn sample_field(&self) -> Gf {
        self.field().extension(2).expect("quadratic extension")
    }
}

fn parse_bundle(spec: &str) -> Result<Polarization> {
    let words: Vec<&str> = spec.split_whitespace().collect();
    let point = |w: &str| -> Result<(u64, u64)> {
        let (x, y) = w.split_once(',').ok_or_else(|| Error::Parse(format!("expected x,y, got `{w}`")))?;
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad coordinate `{t}`")));
        Ok((parse(x)?, parse(y)?))
    };
    match words.as_slice() {
        ["3K"] => Ok(Polarization::ThreeK),
        ["2K+D", a, b] => Ok(Polarization::TwoKPlus { p: point(a)?, q: point(b)? }),
        _ => Err(Error::Parse(format!("unknown bundle `{}`", spec.trim()))),
    }
}

/// Degree-2 forms through the points: the web of quadrics. Fails unless the space has
/// dimension exactly 4.
pub fn quadric_web_from_points(base: &Gf, ext: &Gf, pts: &[Vec<u64>]) -> Result<SymWeb<Gf>> {
    if pts.len() < 15 {
        return Err(Error::Input(format!("{} points cannot cut out quadrics; need at least 15", pts.len())));
    }
    let forms = forms_vanishing(ext, 5, 2, pts);
    if forms.len() != 4 {
        return Err(Error::Degenerate(format!("quadrics through the points form a space of dimension {}", forms.len())));
    }
    let mut mats = Vec::new();
    for q in forms {
        if q.terms().iter().any(|(_, c)| !ext.in_prime_field(*c)) {
            return Err(Error::Degenerate("web basis is not defined over the base field".into()));
        }
        mats.push(matrix_of_quadric(&q.map_field(base, |&c| c))?);
    }
    SymWeb::web(base, mats)
}

/// The web of quadrics containing the embedded curve, sampled over the quadratic extension.
pub fn quadric_web(emb: &Embedding) -> Result<SymWeb<Gf>> {
    let ext = emb.sample_field();
    quadric_web_from_points(emb.field(), &ext, &emb.embedded_points(&ext))
}

/// Whether the points span `P^4`.
pub fn spans_p4(field: &Gf, pts: &[Vec<u64>]) -> bool {
    !pts.is_empty() && Matrix::from_rows(field, pts.to_vec()).rank() == 5
}

/// No line through two of the points contains a third.
pub fn trisecant_absence(field: &Gf, pts: &[Vec<u64>]) -> bool {
    let n = pts.len();
    (0..n).into_par_iter().all(|i| {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let m = Matrix::from_rows(field, vec![pts[i].clone(), pts[j].clone(), pts[k].clone()]);
                if m.rank() < 3 {
                    return false;
                }
            }
        }
        true
    })
}

/// Plane and quartic factors of the web determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct WebDiscriminant {
    pub determinant: HomogPoly<Gf>,
    pub plane: HomogPoly<Gf>,
    pub quartic: HomogPoly<Gf>,
}

/// Split the web determinant into a linear form and a quartic by scanning rational linear
/// forms (first divisor in scan order).
pub fn web_discriminant(web: &SymWeb<Gf>, budget: u64) -> Result<WebDiscriminant> {
    let f = *web.field();
    let det = web.determinant();
    if det.is_zero() {
        return Err(Error::Degenerate("web determinant vanishes identically".into()));
    }
    let sp = ProjSpace::new(f, web.params() - 1);
    if sp.count() > budget {
        return Err(Error::Budget(format!("{} linear forms exceed budget {budget}", sp.count())));
    }
    let hit = (0..sp.count()).into_par_iter().find_map_first(|i| {
        let l = HomogPoly::linear(&f, &sp.point(i));
        det.exact_divide(&l).map(|r| (l, r))
    });
    let (plane, quartic) = hit.ok_or_else(|| Error::Degenerate("web determinant has no rational linear factor".into()))?;
    Ok(WebDiscriminant { determinant: det, plane, quartic })
}

/// Basis of the plane `l . x = 0` in `P^3` (three vectors), in reduced echelon order.
pub fn plane_basis(field: &Gf, l: &[u64]) -> Vec<Vec<u64>> {
    Matrix::from_rows(field, vec![l.to_vec()]).nullspace()
}

/// Coefficient vector of a linear form.
pub fn linear_coeffs(l: &HomogPoly<Gf>) -> Vec<u64> {
    (0..l.nvars())
        .map(|i| {
            let mut m = [0u8; 5];
            m[i] = 1;
            l.coeff(&m)
        })
        .collect()
}

/// Restriction of a form on `P^3` to the plane spanned by `basis`, as a ternary form.
pub fn restrict_to_plane(p: &HomogPoly<Gf>, basis: &[Vec<u64>]) -> HomogPoly<Gf> {
    let n = p.nvars();
    let rows: Vec<Vec<u64>> = (0..n).map(|i| basis.iter().map(|b| b[i]).collect()).collect();
    p.linear_change(&rows)
}

/// Singularities of the quartic and of its section by the plane component.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscriminantReport {
    pub plane: String,
    pub quartic: String,
    /// Singular points of the quartic over the quadratic extension.
    pub quartic_singular: usize,
    pub quartic_nodes: usize,
    /// Singular points of the plane section over the base field and the quadratic extension.
    pub section_singular_base: Vec<SingularPoint>,
    pub section_singular_ext: usize,
    /// The section is a double conic.
    pub section_is_double_conic: bool,
    pub section_squarefree: bool,
}

/// Analyze the quartic and the plane-section curve.
pub fn discriminant_report(wd: &WebDiscriminant) -> Result<DiscriminantReport> {
    let f = *wd.quartic.field();
    let ext = f.extension(2)?;
    let quartic_ext = lift_poly(&wd.quartic, &ext);
    let sing = singular_points(&quartic_ext);
    let basis = plane_basis(&f, &linear_coeffs(&wd.plane));
    let section = restrict_to_plane(&wd.quartic, &basis);
    let section_singular_base = singular_points(&section);
    let section_singular_ext = singular_points(&lift_poly(&section, &ext)).len();
    Ok(DiscriminantReport {
        plane: wd.plane.body_text(),
        quartic: wd.quartic.body_text(),
        quartic_singular: sing.len(),
        quartic_nodes: sing.iter().filter(|s| s.node).count(),
        section_singular_base,
        section_singular_ext,
        section_is_double_conic: is_square_up_to_scalar(&section).is_some(),
        section_squarefree: crate::bivar::squarefree_test(&section),
    })
}

/// `c` with `p = lambda c^2` for a scalar `lambda`, if one exists.
pub fn is_square_up_to_scalar(p: &HomogPoly<Gf>) -> Option<HomogPoly<Gf>> {
    if p.is_zero() {
        return None;
    }
    p.monic().sqrt().map(|c| c.monic())
}

/// Distinct points, deduplicated after normalization.
pub fn distinct_points(field: &Gf, pts: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let set: BTreeSet<Vec<u64>> = pts
        .iter()
        .filter_map(|p| {
            let mut v = p.clone();
            normalize(field, &mut v).then_some(v)
        })
        .collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x6_minus_1() -> Genus2Curve {
        let f = Gf::prime(7).unwrap();
        Genus2Curve::new(&f, &[6, 0, 0, 0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn points_at_infinity_and_count() {
        let c = x6_minus_1();
        let f = *c.field();
        let pts = c.points(&f);
        // x^6 - 1 vanishes on F_7^*, x = 0 gives y^2 = -1 (non-square), two points at infinity
        assert_eq!(pts.len(), 8);
        assert!(pts.contains(&CurvePoint::Infinity { s: 1 }));
        assert!(pts.contains(&CurvePoint::Infinity { s: 6 }));
    }

    #[test]
    fn three_k_embedding() {
        let c = x6_minus_1();
        let emb = Embedding::new(c, Polarization::ThreeK).unwrap();
        let f = *emb.field();
        assert_eq!(emb.map(&f, &CurvePoint::Affine { x: 2, y: 0 }), vec![1, 2, 4, 1, 0]);
        assert_eq!(emb.map(&f, &CurvePoint::Infinity { s: 6 }), vec![0, 0, 0, 1, 6]);
        let web = quadric_web(&emb).unwrap();
        assert_eq!(web.params(), 4);
        let ext = emb.sample_field();
        let pts = emb.embedded_points(&ext);
        assert!(spans_p4(&ext, &pts));
        let lifted = web.lift(&ext).unwrap();
        assert!(pts.iter().all(|p| lifted.contains(p)));
    }

    #[test]
    fn too_few_points_is_an_error() {
        let f = Gf::prime(7).unwrap();
        let pts: Vec<Vec<u64>> = (1..=10u64).map(|i| vec![1, i % 7, (i * i) % 7, (i * i * i) % 7, 1]).collect();
        assert!(quadric_web_from_points(&f, &f, &pts).is_err());
    }

    #[test]
    fn planar_triple_is_a_trisecant() {
        let f = Gf::prime(7).unwrap();
        let pts = vec![vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0], vec![1, 1, 0, 0, 0]];
        assert!(!trisecant_absence(&f, &pts));
        assert!(trisecant_absence(&f, &[]));
    }
}
