//! Tropes of the quartic component and the polar cubic map onto a trope plane.

use rayon::prelude::*;

use super::{is_square_up_to_scalar, plane_basis, restrict_to_plane};
use crate::error::{Error, Result};
use crate::field::{Field, Gf};
use crate::matrix::Matrix;
use crate::poly::{monomial_index, monomials, num_monomials, HomogPoly};
use crate::proj::ProjSpace;

/// A plane meeting the quartic in a double conic.
#[derive(Clone, Debug, PartialEq)]
pub struct Trope {
    /// Coefficients of the linear form.
    pub plane: Vec<u64>,
    /// Three vectors spanning the plane; plane coordinates refer to this basis.
    pub basis: Vec<Vec<u64>>,
    /// The conic in plane coordinates, monic.
    pub conic: HomogPoly<Gf>,
}

/// Rational planes whose section of `quartic` is a square up to a scalar.
pub fn trope_planes(quartic: &HomogPoly<Gf>, budget: u64) -> Result<Vec<Trope>> {
    if quartic.nvars() != 4 || quartic.degree() != 4 {
        return Err(Error::Input("tropes need a quartic surface in P^3".into()));
    }
    let f = *quartic.field();
    let sp = ProjSpace::new(f, 3);
    if sp.count() > budget {
        return Err(Error::Budget(format!("{} planes exceed budget {budget}", sp.count())));
    }
    Ok((0..sp.count())
        .into_par_iter()
        .filter_map(|i| {
            let plane = sp.point(i);
            let basis = plane_basis(&f, &plane);
            let section = restrict_to_plane(quartic, &basis);
            let conic = is_square_up_to_scalar(&section)?;
            Some(Trope { plane, basis, conic })
        })
        .collect())
}

/// Points of `pts` (over `ext`) lying on the trope plane, in plane coordinates.
pub fn points_on_trope(trope: &Trope, ext: &Gf, pts: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let frame = adapted_frame(ext, trope);
    let inv = frame.inverse().expect("adapted frame is invertible");
    pts.iter()
        .filter(|p| p.iter().zip(&trope.plane).fold(0, |acc, (a, b)| ext.add(&acc, &ext.mul(a, b))) == 0)
        .map(|p| inv.mul_vec(p)[1..].to_vec())
        .collect()
}

/// Columns: a point off the plane with `plane(v0) = 1`, then the plane basis.
fn adapted_frame(field: &Gf, trope: &Trope) -> Matrix<Gf> {
    let lead = trope.plane.iter().position(|&c| c != 0).expect("nonzero plane");
    let mut v0 = [0u64; 4];
    v0[lead] = field.inv(&trope.plane[lead]).unwrap();
    Matrix::from_fn(field, 4, 4, |i, j| if j == 0 { v0[i] } else { trope.basis[j - 1][i] })
}

/// Linear map sending a point `x` to its polar cubic restricted to the trope plane.
#[derive(Clone, Debug)]
pub struct PolarMap {
    frame: Matrix<Gf>,
    /// Coefficient of the first adapted coordinate, as a plane cubic.
    pub f3: HomogPoly<Gf>,
    /// The plane section, a scalar multiple of the squared conic.
    pub f4: HomogPoly<Gf>,
    f4_gradient: Vec<HomogPoly<Gf>>,
    pub conic: HomogPoly<Gf>,
}

impl PolarMap {
    pub fn new(quartic: &HomogPoly<Gf>, trope: &Trope) -> Result<Self> {
        let f = *quartic.field();
        let frame = adapted_frame(&f, trope);
        if frame.rank() != 4 {
            return Err(Error::Degenerate("adapted coordinate change is singular".into()));
        }
        let adapted = quartic.linear_change(&frame.to_rows());
        let to_plane: Vec<Vec<u64>> = (0..4).map(|i| (0..3).map(|j| u64::from(i == j + 1)).collect()).collect();
        let f3 = adapted.partial(0).linear_change(&to_plane);
        let f4 = adapted.linear_change(&to_plane);
        if !f4.is_proportional(&trope.conic.mul(&trope.conic)) {
            return Err(Error::Mismatch("plane section is not the square of the trope conic".into()));
        }
        let f4_gradient = f4.gradient();
        Ok(PolarMap { frame, f3, f4, f4_gradient, conic: trope.conic.clone() })
    }

    /// Polar cubic of a point given in adapted coordinates `(a, b, c, d)`.
    pub fn cubic_adapted(&self, x: &[u64]) -> HomogPoly<Gf> {
        let mut acc = self.f3.scale(&x[0]);
        for (g, c) in self.f4_gradient.iter().zip(&x[1..]) {
            acc = acc.add(&g.scale(c));
        }
        acc
    }

    /// Adapted coordinates of a point of `P^3`.
    pub fn adapted_coordinates(&self, x: &[u64]) -> Vec<u64> {
        self.frame.inverse().expect("invertible frame").mul_vec(x)
    }

    /// Polar cubic of a point given in the original coordinates.
    pub fn cubic_at(&self, x: &[u64]) -> HomogPoly<Gf> {
        self.cubic_adapted(&self.adapted_coordinates(x))
    }

    /// `4 x 10` matrix of the map in the monomial basis of plane cubics.
    pub fn matrix(&self) -> Matrix<Gf> {
        let f = *self.f3.field();
        let basis = monomials(3, 3);
        let index = monomial_index(&basis);
        let rows = (0..4)
            .map(|k| {
                let mut e = vec![0u64; 4];
                e[k] = 1;
                self.cubic_adapted(&e).to_dense(&index, num_monomials(3, 3))
            })
            .collect();
        Matrix::from_rows(&f, rows)
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_section_is_a_trope() {
        let f = Gf::prime(7).unwrap();
        // (x0^2 + x1 x2)^2 + x3 * (x0^3 + x1^3 + x2^3 + x3^3)
        let q = HomogPoly::parse_body(&f, 4, "x0^4 + 2*x0^2*x1*x2 + x1^2*x2^2 + x0^3*x3 + x1^3*x3 + x2^3*x3 + x3^4", 4).unwrap();
        let tropes = trope_planes(&q, 1000).unwrap();
        let t = tropes.iter().find(|t| t.plane == vec![0, 0, 0, 1]).expect("x3 = 0 is a trope");
        let pm = PolarMap::new(&q, t).unwrap();
        assert_eq!(pm.cubic_adapted(&[1, 0, 0, 0]), pm.f3);
        let on_plane = pm.cubic_adapted(&[0, 1, 2, 3]);
        assert!(on_plane.exact_divide(&pm.conic).is_some());
    }
}
