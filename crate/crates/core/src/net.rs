//! Nets of quadrics in `P^4`: block-diagonal generation, discriminant quintic, rank census,
//! involution recovery and fixed-point checks.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bivar::squarefree_test;
use crate::error::{Error, Result};
use crate::field::{Field, Gf};
use crate::hilbert::hilbert_function;
use crate::matrix::{Matrix, PolyMatrix};
use crate::poly::HomogPoly;
use crate::proj::{normalize, ProjSpace};
use crate::quadrics::{QuadricFamily, SymNet};

/// Outcome of taking the determinant of a net.
#[derive(Clone, Debug, PartialEq)]
pub enum Discriminant<K: Field> {
    Quintic(HomogPoly<K>),
    /// Every member is singular.
    Trigonal,
}

impl<K: Field> Discriminant<K> {
    pub fn quintic(&self) -> Option<&HomogPoly<K>> {
        match self {
            Discriminant::Quintic(q) => Some(q),
            Discriminant::Trigonal => None,
        }
    }
}

/// Determinant of the net as a ternary quintic.
pub fn discriminant_quintic<K: Field>(net: &SymNet<K>) -> Discriminant<K> {
    let d = net.determinant();
    if d.is_zero() {
        Discriminant::Trigonal
    } else {
        Discriminant::Quintic(d)
    }
}

/// A 2x2 and a 3x3 net of symmetric matrices together with a change of basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockPair<K: Field> {
    pub a: Vec<Matrix<K>>,
    pub b: Vec<Matrix<K>>,
    pub g: Matrix<K>,
}

impl<K: Field> BlockPair<K> {
    pub fn field(&self) -> &K {
        self.g.field()
    }

    /// `det A`, the conic of the small block.
    pub fn conic(&self) -> HomogPoly<K> {
        PolyMatrix::from_pencil(self.field(), &self.a).det()
    }

    /// `det B`, the cubic of the large block.
    pub fn cubic(&self) -> HomogPoly<K> {
        PolyMatrix::from_pencil(self.field(), &self.b).det()
    }

    /// Block-diagonal coefficient matrices `diag(A_i, B_i)`.
    pub fn block_matrices(&self) -> Vec<Matrix<K>> {
        let f = self.field();
        self.a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| {
                Matrix::from_fn(f, 5, 5, |i, j| match (i < 2, j < 2) {
                    (true, true) => a.get(i, j).clone(),
                    (false, false) => b.get(i - 2, j - 2).clone(),
                    _ => f.zero(),
                })
            })
            .collect()
    }

    /// The involution `g^-1 diag(-1,-1,1,1,1) g` that the construction guarantees.
    pub fn witness_involution(&self) -> Matrix<K> {
        let f = self.field();
        let s = Matrix::diagonal(f, &[f.from_i64(-1), f.from_i64(-1), f.one(), f.one(), f.one()]);
        let gi = self.g.inverse().expect("invertible change of basis");
        gi.mul(&s).mul(&self.g)
    }
}

/// A net built as `g^T diag(A, B) g`, keeping the construction data.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockNet<K: Field> {
    pub net: SymNet<K>,
    pub pair: BlockPair<K>,
}

/// `g^T diag(A, B) g` as a net.
pub fn make_block_net<K: Field>(pair: BlockPair<K>) -> Result<BlockNet<K>> {
    let f = pair.field().clone();
    if pair.a.len() != 3 || pair.b.len() != 3 {
        return Err(Error::Mismatch("block nets need three parameters".into()));
    }
    if pair.a.iter().any(|m| m.rows() != 2 || !m.is_symmetric()) || pair.b.iter().any(|m| m.rows() != 3 || !m.is_symmetric()) {
        return Err(Error::Input("blocks must be symmetric of sizes 2 and 3".into()));
    }
    if pair.g.rows() != 5 || f.is_zero(&pair.g.det()) {
        return Err(Error::Degenerate("change of basis is singular".into()));
    }
    if pair.conic().is_zero() || pair.cubic().is_zero() {
        return Err(Error::Degenerate("a block has identically vanishing determinant".into()));
    }
    let base = QuadricFamily::net(&f, pair.block_matrices())?;
    Ok(BlockNet { net: base.transform(&pair.g), pair })
}

fn random_sym(field: &Gf, rng: &mut ChaCha8Rng, n: usize) -> Matrix<Gf> {
    let q = field.q();
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(0..q);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

fn random_invertible(field: &Gf, rng: &mut ChaCha8Rng, n: usize) -> Matrix<Gf> {
    let q = field.q();
    loop {
        let g = Matrix::from_fn(field, n, n, |_, _| rng.gen_range(0..q));
        if g.det() != 0 {
            return g;
        }
    }
}

/// Random block data over `field`; `identity_g` keeps the net literally block-diagonal.
pub fn random_block_pair(field: &Gf, rng: &mut ChaCha8Rng, identity_g: bool) -> BlockPair<Gf> {
    let a = (0..3).map(|_| random_sym(field, rng, 2)).collect();
    let b = (0..3).map(|_| random_sym(field, rng, 3)).collect();
    let g = if identity_g { Matrix::identity(field, 5) } else { random_invertible(field, rng, 5) };
    BlockPair { a, b, g }
}

/// A net with independent coefficient matrices and nonzero determinant. Other conditions
/// are left to the caller.
pub fn random_net(field: &Gf, rng: &mut ChaCha8Rng) -> SymNet<Gf> {
    assert!(field.p() != 2, "quadrics need odd characteristic");
    loop {
        let mats = (0..3).map(|_| random_sym(field, rng, 5)).collect();
        if let Ok(net) = SymNet::net(field, mats) {
            if !net.determinant().is_zero() {
                return net;
            }
        }
    }
}

/// Admissibility report for a net together with its involution.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Admissibility {
    pub discriminant_squarefree: bool,
    pub no_low_rank_members: bool,
    pub base_locus_smooth: bool,
    pub base_points: usize,
    pub hilbert_signature: bool,
    pub conic_smooth: bool,
    pub cubic_squarefree: bool,
    pub fixed_point_free: bool,
}

impl Admissibility {
    pub fn ok(&self) -> bool {
        self.discriminant_squarefree
            && self.no_low_rank_members
            && self.base_locus_smooth
            && self.hilbert_signature
            && self.conic_smooth
            && self.cubic_squarefree
            && self.fixed_point_free
    }
}

/// Check the conditions that make a block net define a smooth genus-5 curve with a
/// fixed-point-free involution. Rank and smoothness are checked over the base field and
/// its quadratic extension; the involution is checked over the closure.
pub fn check_block_net(bn: &BlockNet<Gf>, budget: u64) -> Result<Admissibility> {
    let f = *bn.net.field();
    let gamma = discriminant_quintic(&bn.net);
    let discriminant_squarefree = gamma.quintic().is_some_and(squarefree_test);
    let conic = bn.pair.conic();
    let cubic = bn.pair.cubic();
    let conic_smooth = conic.degree() == 2 && squarefree_test(&conic);
    let cubic_squarefree = squarefree_test(&cubic);
    let ext = f.extension(2)?;
    let no_low_rank_members =
        rank_profile(&bn.net).min_rank() > 2 && rank_profile(&bn.net.lift(&ext)?).min_rank() > 2;
    let pts = bn.net.base_locus(budget)?;
    let base_locus_smooth = bn.net.smoothness_check(&pts) && bn.net.lift(&ext)?.kernel_singular_points(budget)?.is_empty();
    let hilbert_signature = hilbert_signature(&bn.net)?;
    let sigma = bn.pair.witness_involution();
    let fixed_point_free = fixed_point_check(&bn.net, &sigma, 2)?.free;
    Ok(Admissibility {
        discriminant_squarefree,
        no_low_rank_members,
        base_locus_smooth,
        base_points: pts.len(),
        hilbert_signature,
        conic_smooth,
        cubic_squarefree,
        fixed_point_free,
    })
}

/// Draw block nets from `rng` until one passes [`check_block_net`]. Returns the net and the
/// number of rejected draws.
pub fn admissible_block_net(field: &Gf, rng: &mut ChaCha8Rng, budget: u64) -> Result<(BlockNet<Gf>, usize)> {
    if field.p() == 2 {
        return Err(Error::Input("quadrics need odd characteristic".into()));
    }
    for rejected in 0..1000 {
        let pair = random_block_pair(field, rng, false);
        let Ok(bn) = make_block_net(pair) else { continue };
        if check_block_net(&bn, budget)?.ok() {
            return Ok((bn, rejected));
        }
    }
    Err(Error::Degenerate("no admissible block net in 1000 draws".into()))
}

/// Whether `HF(d) = 8d - 4` for `d = 2..=6`, the signature of a (2,2,2) complete
/// intersection curve.
pub fn hilbert_signature<K: Field>(net: &SymNet<K>) -> Result<bool> {
    let gens = net.quadric_forms();
    for d in 2..=6u32 {
        if hilbert_function(net.field(), 5, &gens, d)? != (8 * d - 4) as usize {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of every member over the rational points of the parameter plane.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankCensus {
    /// Number of parameter points of each rank.
    pub counts: BTreeMap<usize, usize>,
    /// Parameter points of rank at most 4 with their ranks, in enumeration order.
    pub singular_members: Vec<(Vec<u64>, usize)>,
}

impl RankCensus {
    pub fn min_rank(&self) -> usize {
        self.counts.keys().next().copied().unwrap_or(5)
    }

    /// Parameter points where the rank is at most `r`.
    pub fn points_with_rank_at_most(&self, r: usize) -> Vec<Vec<u64>> {
        self.singular_members.iter().filter(|(_, k)| *k <= r).map(|(p, _)| p.clone()).collect()
    }
}

/// Rank of the member at every point of `P^2(F_q)`.
pub fn rank_profile(net: &SymNet<Gf>) -> RankCensus {
    let sp = ProjSpace::new(*net.field(), net.params() - 1);
    let ranks: Vec<usize> = (0..sp.count()).into_par_iter().map(|i| net.at(&sp.point(i)).rank()).collect();
    let mut counts = BTreeMap::new();
    let mut singular_members = Vec::new();
    for (i, r) in ranks.into_iter().enumerate() {
        *counts.entry(r).or_insert(0) += 1;
        if r < net.dim() {
            singular_members.push((sp.point(i as u64), r));
        }
    }
    RankCensus { counts, singular_members }
}

/// An involution of `k^5` preserving every member of a net.
#[derive(Clone, Debug, PartialEq)]
pub struct Involution<K: Field> {
    pub sigma: Matrix<K>,
    /// Dimensions of the (-1)- and (+1)-eigenspaces.
    pub signature: (usize, usize),
    /// Dimension of the linear commutant that was searched.
    pub commutant_dim: usize,
}

/// Candidate parameter points in lexicographic order: all of `P^2(F_q)` for finite
/// fields, small integer points otherwise.
fn parameter_points<K: Field>(field: &K, count: usize) -> Vec<Vec<K::Elem>> {
    let vals: Vec<K::Elem> = match field.finite_elements() {
        Some(v) => v,
        None => (0..6).map(|i| field.from_i64(i)).collect(),
    };
    let mut out = Vec::new();
    for lead in (0..3).rev() {
        let tail = 2 - lead;
        let total = vals.len().pow(tail as u32);
        for mut idx in 0..total {
            let mut v = vec![field.zero(); 3];
            v[lead] = field.one();
            for pos in (lead + 1..3).rev() {
                v[pos] = vals[idx % vals.len()].clone();
                idx /= vals.len();
            }
            out.push(v);
            if out.len() >= count {
                return out;
            }
        }
    }
    out
}

fn is_involution_of<K: Field>(net: &SymNet<K>, s: &Matrix<K>) -> Option<(usize, usize)> {
    let f = net.field();
    let n = s.rows();
    let id = Matrix::identity(f, n);
    if s.mul(s) != id || *s == id || *s == id.scale(&f.from_i64(-1)) {
        return None;
    }
    let st = s.transpose();
    if !net.coefficient_matrices().iter().all(|m| st.mul(m).mul(s) == *m) {
        return None;
    }
    let minus = n - s.add(&id).rank();
    let plus = n - s.sub(&id).rank();
    Some((minus, plus))
}

/// Coordinates of `target` in the span of `basis`, if it lies there.
fn solve_in_span<K: Field>(field: &K, basis: &[Vec<K::Elem>], target: &[K::Elem]) -> Option<Vec<K::Elem>> {
    let cols = basis.len();
    let rows: Vec<Vec<K::Elem>> = (0..target.len())
        .map(|r| {
            let mut row: Vec<K::Elem> = basis.iter().map(|b| b[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut m = Matrix::from_rows(field, rows);
    let pivots = m.rref_in_place();
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m.get(r, cols).clone();
    }
    Some(x)
}

fn to_matrix<K: Field>(field: &K, v: &[K::Elem], n: usize) -> Matrix<K> {
    Matrix::from_fn(field, n, n, |i, j| v[i * n + j].clone())
}

/// Recover an involution preserving the net with eigenspaces of dimensions (2, 3).
///
/// Works in the linear space of matrices commuting with `q0^-1 M_i` and making `q0 s`
/// symmetric, where `q0` is the first invertible member. Returns `Ok(None)` when no such
/// involution exists over the field and `FieldTooSmall` when one exists only after a
/// quadratic extension.
pub fn recover_involution<K: Field>(net: &SymNet<K>) -> Result<Option<Involution<K>>> {
    Ok(involution_candidates(net)?.into_iter().next())
}

/// The first recovered involution without fixed points on the base curve, searching
/// extensions up to degree `max_k`. Differs from [`recover_involution`] only when the net
/// has several involutions.
pub fn recover_free_involution(net: &SymNet<Gf>, max_k: u32) -> Result<Option<Involution<Gf>>> {
    for inv in involution_candidates(net)? {
        if fixed_point_check(net, &inv.sigma, max_k)?.free {
            return Ok(Some(inv));
        }
    }
    Ok(None)
}

/// Every involution with eigenspaces of dimensions (2, 3) preserving the net, in search
/// order. A two-dimensional commutant yields at most one.
pub fn involution_candidates<K: Field>(net: &SymNet<K>) -> Result<Vec<Involution<K>>> {
    let f = net.field();
    let n = net.dim();
    let q0 = parameter_points(f, 4096)
        .into_iter()
        .map(|t| net.at(&t))
        .find(|m| !f.is_zero(&m.det()))
        .ok_or_else(|| Error::Degenerate("no invertible member found".into()))?;
    let q0i = q0.inverse().expect("invertible");
    let psis: Vec<Matrix<K>> = net.coefficient_matrices().iter().map(|m| q0i.mul(m)).collect();
    let nn = n * n;
    let mut rows: Vec<Vec<K::Elem>> = Vec::new();
    for psi in &psis {
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![f.zero(); nn];
                for k in 0..n {
                    // (s psi)[r][c] = sum_k s[r][k] psi[k][c]
                    row[r * n + k] = f.add(&row[r * n + k], psi.get(k, c));
                    // (psi s)[r][c] = sum_k psi[r][k] s[k][c]
                    row[k * n + c] = f.sub(&row[k * n + c], psi.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    for r in 0..n {
        for c in (r + 1)..n {
            let mut row = vec![f.zero(); nn];
            for a in 0..n {
                // (q0 s)[r][c] - (q0 s)[c][r]
                row[a * n + c] = f.add(&row[a * n + c], q0.get(r, a));
                row[a * n + r] = f.sub(&row[a * n + r], q0.get(c, a));
            }
            rows.push(row);
        }
    }
    let basis = Matrix::from_rows(f, rows).nullspace();
    let dim = basis.len();
    let accept = |s: Matrix<K>| -> Option<Involution<K>> {
        let (minus, plus) = is_involution_of(net, &s)?;
        match (minus, plus) {
            (2, 3) => Some(Involution { sigma: s, signature: (2, 3), commutant_dim: dim }),
            (3, 2) => {
                let s = s.scale(&f.from_i64(-1));
                Some(Involution { sigma: s, signature: (2, 3), commutant_dim: dim })
            }
            _ => None,
        }
    };
    if dim <= 1 {
        return Ok(Vec::new());
    }
    let id_vec: Vec<K::Elem> = Matrix::identity(f, n).to_rows().concat();
    if dim == 2 {
        let m_vec = basis
            .iter()
            .find(|b| solve_in_span(f, std::slice::from_ref(&id_vec), b).is_none())
            .cloned()
            .expect("commutant contains the identity");
        let m = to_matrix(f, &m_vec, n);
        let m2 = m.mul(&m).to_rows().concat();
        if let Some(c) = solve_in_span(f, &[id_vec.clone(), m_vec.clone()], &m2) {
            let (alpha, beta) = (&c[0], &c[1]);
            // (a I + b M)^2 = I  with  a = -b beta / 2,  b^2 = 1 / (alpha + beta^2 / 4)
            let four = f.from_i64(4);
            let denom = f.add(alpha, &f.div(&f.mul(beta, beta), &four).expect("odd characteristic"));
            if f.is_zero(&denom) {
                return Ok(Vec::new());
            }
            let b2 = f.inv(&denom).expect("nonzero");
            let Some(b) = f.sqrt(&b2) else {
                return Err(Error::FieldTooSmall(
                    "the involution is defined only over a quadratic extension".into(),
                ));
            };
            let a = f.neg(&f.div(&f.mul(&b, beta), &f.from_i64(2)).expect("odd characteristic"));
            let s = Matrix::identity(f, n).scale(&a).add(&m.scale(&b));
            return Ok(accept(s).into_iter().collect());
        }
    }
    if dim > 4 {
        return Err(Error::Degenerate(format!("commutant of dimension {dim} is too large to search")));
    }
    let Some(vals) = f.finite_elements() else {
        return Err(Error::Degenerate(format!("commutant of dimension {dim} over an infinite field")));
    };
    let total = vals.len().pow(dim as u32);
    let mut found: Vec<Involution<K>> = Vec::new();
    for mut idx in 0..total {
        let mut v = vec![f.zero(); nn];
        for b in &basis {
            let c = &vals[idx % vals.len()];
            idx /= vals.len();
            if !f.is_zero(c) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.add(x, &f.mul(c, y));
                }
            }
        }
        if let Some(inv) = accept(to_matrix(f, &v, n)) {
            if !found.iter().any(|g| g.sigma == inv.sigma) {
                found.push(inv);
            }
        }
    }
    Ok(found)
}

/// Fixed-point analysis of an involution acting on the base curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedPointReport {
    /// Fixed base points found over `F_{q^k}` for each searched `k`.
    pub fixed_points: BTreeMap<u32, usize>,
    /// The net restricted to the (-1)-eigenline has no common zero over the closure.
    pub minus_line_empty: bool,
    /// The net restricted to the (+1)-eigenplane has no common zero over the closure.
    pub plus_plane_empty: bool,
    pub free: bool,
}

fn restrict<K: Field>(m: &Matrix<K>, basis: &[Vec<K::Elem>]) -> Matrix<K> {
    let f = m.field();
    Matrix::from_fn(f, basis.len(), basis.len(), |i, j| m.bilinear(&basis[i], &basis[j]))
}

/// Whether the quadrics `x^T M_i x` restricted to `span(basis)` have a common zero over
/// the algebraic closure, decided by the Hilbert function in degree `2 dim - 1`.
fn restricted_common_zero<K: Field>(net: &SymNet<K>, basis: &[Vec<K::Elem>]) -> Result<bool> {
    let f = net.field();
    let r = basis.len();
    if r == 0 {
        return Ok(false);
    }
    let forms: Vec<HomogPoly<K>> = net
        .coefficient_matrices()
        .iter()
        .map(|m| crate::quadrics::quadric_of(&restrict(m, basis)))
        .collect();
    let forms: Vec<HomogPoly<K>> = forms.into_iter().filter(|q| !q.is_zero()).collect();
    if forms.len() < r {
        // fewer nonzero equations than variables always leave a common zero
        return Ok(true);
    }
    // an ideal of quadrics with no projective zero in r variables contains every form of
    // degree >= 2r - 1 when it is a complete intersection; use a generous degree
    let d = (2 * r) as u32;
    Ok(hilbert_function(f, r, &forms, d)? > 0)
}

/// Fixed points of `sigma` on the base locus. Each fixed point lies in an eigenspace, so
/// the search enumerates eigenspace points over `F_{q^k}` for `k = 1..=max_k` and the
/// closure statement uses Hilbert functions of the restricted nets.
pub fn fixed_point_check(net: &SymNet<Gf>, sigma: &Matrix<Gf>, max_k: u32) -> Result<FixedPointReport> {
    let f = *net.field();
    let n = net.dim();
    let id = Matrix::identity(&f, n);
    if *sigma == id || *sigma == id.scale(&f.neg(&1)) || sigma.mul(sigma) != id {
        return Err(Error::Input("sigma is not a nontrivial involution".into()));
    }
    let minus = sigma.add(&id).nullspace();
    let plus = sigma.sub(&id).nullspace();
    let minus_line_empty = !restricted_common_zero(net, &minus)?;
    let plus_plane_empty = !restricted_common_zero(net, &plus)?;
    let mut fixed_points = BTreeMap::new();
    for k in 1..=max_k {
        let ext = if k == 1 { f } else { f.extension(k)? };
        let lifted = net.lift(&ext)?;
        let mut count = 0;
        for basis in [&minus, &plus] {
            count += eigenspace_base_points(&lifted, basis).len();
        }
        fixed_points.insert(k, count);
    }
    let free = minus_line_empty && plus_plane_empty && fixed_points.values().all(|&c| c == 0);
    Ok(FixedPointReport { fixed_points, minus_line_empty, plus_plane_empty, free })
}

/// Base points of `net` inside the span of `basis`, enumerated over the net's field.
pub fn eigenspace_base_points(net: &SymNet<Gf>, basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let f = *net.field();
    if basis.is_empty() {
        return Vec::new();
    }
    let sp = ProjSpace::new(f, basis.len() - 1);
    let mut pts: Vec<Vec<u64>> = (0..sp.count())
        .into_par_iter()
        .filter_map(|i| {
            let c = sp.point(i);
            let mut x = vec![0u64; net.dim()];
            for (ci, b) in c.iter().zip(basis) {
                for (xj, bj) in x.iter_mut().zip(b) {
                    *xj = f.add(xj, &f.mul(ci, bj));
                }
            }
            if net.contains(&x) {
                normalize(&f, &mut x);
                Some(x)
            } else {
                None
            }
        })
        .collect();
    pts.sort();
    pts
}

/// Brute-force oracle: base points `x` with `sigma x` proportional to `x`.
pub fn fixed_points_brute_force(net: &SymNet<Gf>, sigma: &Matrix<Gf>, pts: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let f = *net.field();
    let sigma = sigma.map_field(&f, |&x| x);
    pts.iter()
        .filter(|p| crate::proj::same_point(&f, &sigma.mul_vec(p), p))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn identity_change_gives_diagonal_involution() {
        let f = Gf::prime(11).unwrap();
        let mut r = rng::stream(3, 0);
        let pair = random_block_pair(&f, &mut r, true);
        let bn = make_block_net(pair).unwrap();
        let inv = recover_involution(&bn.net).unwrap().unwrap();
        let expect = Matrix::diagonal(&f, &[10, 10, 1, 1, 1]);
        assert_eq!(inv.sigma, expect);
        assert_eq!(inv.signature, (2, 3));
    }

    #[test]
    fn discriminant_is_product_of_block_determinants() {
        let f = Gf::prime(11).unwrap();
        let mut r = rng::stream(5, 0);
        let bn = make_block_net(random_block_pair(&f, &mut r, false)).unwrap();
        let gamma = discriminant_quintic(&bn.net);
        let g2 = f.pow(&bn.pair.g.det(), 2);
        let expect = bn.pair.conic().mul(&bn.pair.cubic()).scale(&g2);
        assert_eq!(gamma.quintic().unwrap(), &expect);
    }

    #[test]
    fn zero_block_gives_trigonal_verdict() {
        let f = Gf::prime(7).unwrap();
        let mut r = rng::stream(2, 0);
        let mats = (0..3)
            .map(|_| {
                let m = random_sym(&f, &mut r, 5);
                Matrix::from_fn(&f, 5, 5, |i, j| if i < 3 && j < 3 { 0 } else { *m.get(i, j) })
            })
            .collect();
        let net = SymNet::net(&f, mats).unwrap();
        assert_eq!(discriminant_quintic(&net), Discriminant::Trigonal);
        assert!(rank_profile(&net).counts.keys().all(|&r| r < 5));
    }

    #[test]
    fn admissible_net_has_free_involution() {
        let f = Gf::prime(11).unwrap();
        let mut r = rng::stream(1, 0);
        let (bn, _) = admissible_block_net(&f, &mut r, 1 << 24).unwrap();
        let inv = recover_involution(&bn.net).unwrap().unwrap();
        let pts = bn.net.base_locus(1 << 24).unwrap();
        assert!(fixed_points_brute_force(&bn.net, &inv.sigma, &pts).is_empty());
        assert!(fixed_point_check(&bn.net, &inv.sigma, 2).unwrap().free);
    }

    #[test]
    fn common_conic_point_gives_fixed_point() {
        let f = Gf::prime(11).unwrap();
        let mut r = rng::stream(9, 0);
        let mut pair = random_block_pair(&f, &mut r, true);
        // force (0:0:1) of the large block onto every conic
        for b in pair.b.iter_mut() {
            b.set(2, 2, 0);
        }
        let bn = make_block_net(pair).unwrap();
        let sigma = bn.pair.witness_involution();
        let rep = fixed_point_check(&bn.net, &sigma, 1).unwrap();
        assert!(!rep.free);
        assert!(!rep.plus_plane_empty);
        let e4 = vec![0, 0, 0, 0, 1];
        assert!(bn.net.contains(&e4));
        assert!(fixed_points_brute_force(&bn.net, &sigma, &[e4]).len() == 1);
    }
}
