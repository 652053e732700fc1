//! Hilbert functions of homogeneous ideals and interpolation by point evaluation.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::{monomial_index, monomials, num_monomials, HomogPoly, Mono};

/// Value of the Hilbert function of `S / (gens)` in degree `d`, where `S` has `nvars` variables.
pub fn hilbert_function<K: Field>(field: &K, nvars: usize, gens: &[HomogPoly<K>], d: u32) -> Result<usize> {
    let total = num_monomials(nvars, d);
    if gens.is_empty() {
        return Ok(total);
    }
    if let Some(g) = gens.iter().find(|g| g.degree() > d) {
        return Err(Error::Input(format!(
            "degree {d} is below generator degree {}",
            g.degree()
        )));
    }
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::Input("generator variable count mismatch".into()));
    }
    Ok(total - ideal_slice(field, nvars, gens, d).rank())
}

/// Matrix whose rows span the degree-`d` part of the ideal generated by `gens`.
pub fn ideal_slice<K: Field>(field: &K, nvars: usize, gens: &[HomogPoly<K>], d: u32) -> Matrix<K> {
    let basis = monomials(nvars, d);
    let index = monomial_index(&basis);
    let mut rows = Vec::new();
    for g in gens {
        for m in monomials(nvars, d - g.degree()) {
            let mg = g.mul(&HomogPoly::monomial(field, nvars, m, field.one()));
            rows.push(mg.to_dense(&index, basis.len()));
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(field, 0, basis.len());
    }
    Matrix::from_rows(field, rows)
}

fn eval_mono<K: Field>(field: &K, m: &Mono, pt: &[K::Elem]) -> K::Elem {
    let mut acc = field.one();
    for (i, &e) in m.iter().enumerate().take(pt.len()) {
        if e > 0 {
            acc = field.mul(&acc, &field.pow(&pt[i], e as u64));
        }
    }
    acc
}

/// Evaluation matrix: one row per point, one column per degree-`d` monomial.
pub fn evaluation_matrix<K: Field>(field: &K, nvars: usize, d: u32, points: &[Vec<K::Elem>]) -> Matrix<K> {
    let basis = monomials(nvars, d);
    let rows: Vec<Vec<K::Elem>> = points
        .iter()
        .map(|p| basis.iter().map(|m| eval_mono(field, m, p)).collect())
        .collect();
    if rows.is_empty() {
        return Matrix::zeros(field, 0, basis.len());
    }
    Matrix::from_rows(field, rows)
}

/// Rank of the degree-`d` evaluation map on `points`; equals the Hilbert function of the
/// vanishing ideal once enough points are sampled.
pub fn interpolation_rank<K: Field>(field: &K, nvars: usize, d: u32, points: &[Vec<K::Elem>]) -> usize {
    evaluation_matrix(field, nvars, d, points).rank()
}

/// Basis of degree-`d` forms vanishing at every point, in reduced echelon order.
pub fn forms_vanishing<K: Field>(field: &K, nvars: usize, d: u32, points: &[Vec<K::Elem>]) -> Vec<HomogPoly<K>> {
    let basis = monomials(nvars, d);
    let m = evaluation_matrix(field, nvars, d, points);
    m.nullspace()
        .into_iter()
        .map(|v| HomogPoly::from_dense(field, nvars, d, &basis, &v))
        .collect()
}

/// Dimension of degree-`d` forms vanishing to order two at every point.
pub fn double_vanishing_dimension<K: Field>(field: &K, nvars: usize, d: u32, points: &[Vec<K::Elem>]) -> usize {
    double_vanishing_forms(field, nvars, d, points).len()
}

/// Degree-`d` forms that vanish together with all first partials at every point.
pub fn double_vanishing_forms<K: Field>(field: &K, nvars: usize, d: u32, points: &[Vec<K::Elem>]) -> Vec<HomogPoly<K>> {
    let basis = monomials(nvars, d);
    let mut rows = Vec::with_capacity(points.len() * nvars);
    for p in points {
        for var in 0..nvars {
            let row: Vec<K::Elem> = basis
                .iter()
                .map(|m| {
                    if m[var] == 0 {
                        return field.zero();
                    }
                    let mut dm = *m;
                    dm[var] -= 1;
                    field.mul(&field.from_i64(m[var] as i64), &eval_mono(field, &dm, p))
                })
                .collect();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return monomials(nvars, d)
            .into_iter()
            .map(|m| HomogPoly::monomial(field, nvars, m, field.one()))
            .collect();
    }
    // Euler's identity makes vanishing of the form itself automatic when d is a unit;
    // add the value rows anyway so small characteristics stay correct.
    for p in points {
        rows.push(basis.iter().map(|m| eval_mono(field, m, p)).collect());
    }
    Matrix::from_rows(field, rows)
        .nullspace()
        .into_iter()
        .map(|v| HomogPoly::from_dense(field, nvars, d, &basis, &v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf;

    #[test]
    fn empty_generators_give_full_space() {
        let f = Gf::prime(7).unwrap();
        assert_eq!(hilbert_function::<Gf>(&f, 5, &[], 3).unwrap(), 35);
    }

    #[test]
    fn coordinate_complete_intersection() {
        let f = Gf::prime(101).unwrap();
        let gens: Vec<HomogPoly<Gf>> = ["x0^2 + x1^2 + x2^2 + x3^2 + x4^2", "x0*x1 + 2*x2^2 + 3*x3*x4", "x0^2 + 5*x1*x2 + 7*x4^2"]
            .iter()
            .map(|s| HomogPoly::parse_body(&f, 5, s, 0).unwrap())
            .collect();
        for d in 2..=6u32 {
            assert_eq!(hilbert_function(&f, 5, &gens, d).unwrap(), (8 * d - 4) as usize);
        }
        assert!(hilbert_function(&f, 5, &gens, 1).is_err());
    }

    #[test]
    fn vanishing_forms_through_points() {
        let f = Gf::prime(11).unwrap();
        let pts = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![1, 2, 3]];
        let conics = forms_vanishing(&f, 3, 2, &pts);
        assert_eq!(conics.len(), 1);
        for p in &pts {
            assert_eq!(conics[0].eval(p), 0);
        }
        assert_eq!(interpolation_rank(&f, 3, 2, &pts), 5);
    }
}
