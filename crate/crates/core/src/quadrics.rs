//! Linear families of symmetric matrices (nets and webs of quadrics) and their base loci.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{parse_field_tag, AnyField, Field, Gf};
use crate::matrix::{Matrix, PolyMatrix};
use crate::poly::{normalize_tag, HomogPoly};
use crate::proj::{normalize, ProjSpace};

/// `sum_i t_i M_i` for symmetric scalar matrices `M_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricFamily<K: Field> {
    field: K,
    mats: Vec<Matrix<K>>,
}

/// Three-parameter family of 5x5 symmetric matrices.
pub type SymNet<K> = QuadricFamily<K>;
/// Four-parameter family of 5x5 symmetric matrices.
pub type SymWeb<K> = QuadricFamily<K>;

fn reject_char_two<K: Field>(field: &K) -> Result<()> {
    if field.characteristic() == 2 {
        return Err(Error::Input("quadrics need odd or zero characteristic".into()));
    }
    Ok(())
}

impl<K: Field> QuadricFamily<K> {
    /// Checks squareness, symmetry and linear independence of the coefficient matrices.
    pub fn new(field: &K, mats: Vec<Matrix<K>>) -> Result<Self> {
        reject_char_two(field)?;
        let Some(first) = mats.first() else {
            return Err(Error::Input("empty family".into()));
        };
        let n = first.rows();
        if n == 0 || n > 5 {
            return Err(Error::Mismatch(format!("matrix size {n} outside 1..=5")));
        }
        for m in &mats {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Mismatch("coefficient matrices differ in shape".into()));
            }
            if !m.is_symmetric() {
                return Err(Error::Input("coefficient matrix is not symmetric".into()));
            }
        }
        let stacked = Matrix::from_rows(field, mats.iter().map(|m| m.to_rows().concat()).collect());
        if stacked.rank() != mats.len() {
            return Err(Error::Degenerate("coefficient matrices are linearly dependent".into()));
        }
        Ok(QuadricFamily { field: field.clone(), mats })
    }

    /// Net: exactly three 5x5 coefficient matrices.
    pub fn net(field: &K, mats: Vec<Matrix<K>>) -> Result<Self> {
        Self::with_shape(field, mats, 3)
    }

    /// Web: exactly four 5x5 coefficient matrices.
    pub fn web(field: &K, mats: Vec<Matrix<K>>) -> Result<Self> {
        Self::with_shape(field, mats, 4)
    }

    fn with_shape(field: &K, mats: Vec<Matrix<K>>, m: usize) -> Result<Self> {
        if mats.len() != m || mats.iter().any(|a| a.rows() != 5) {
            return Err(Error::Mismatch(format!("expected {m} matrices of size 5x5")));
        }
        Self::new(field, mats)
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    /// Number of parameters.
    pub fn params(&self) -> usize {
        self.mats.len()
    }
    /// Size of the matrices.
    pub fn dim(&self) -> usize {
        self.mats[0].rows()
    }
    pub fn coefficient_matrices(&self) -> &[Matrix<K>] {
        &self.mats
    }

    /// Member at parameter `t`.
    pub fn at(&self, t: &[K::Elem]) -> Matrix<K> {
        let f = &self.field;
        let mut acc = Matrix::zeros(f, self.dim(), self.dim());
        for (m, c) in self.mats.iter().zip(t) {
            if !f.is_zero(c) {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// Matrix of linear forms in the parameters.
    pub fn poly_matrix(&self) -> PolyMatrix<K> {
        PolyMatrix::from_pencil(&self.field, &self.mats)
    }

    /// Determinant of the family, a form of degree `dim` in the parameters.
    pub fn determinant(&self) -> HomogPoly<K> {
        self.poly_matrix().det()
    }

    /// Quadratic forms `x^T M_i x`.
    pub fn quadric_forms(&self) -> Vec<HomogPoly<K>> {
        self.mats.iter().map(quadric_of).collect()
    }

    /// `g^T M_i g` for each coefficient matrix.
    pub fn transform(&self, g: &Matrix<K>) -> Self {
        let gt = g.transpose();
        QuadricFamily { field: self.field.clone(), mats: self.mats.iter().map(|m| gt.mul(m).mul(g)).collect() }
    }

    /// Family with the coefficient matrices replaced by `combo[j] = sum_i c_ji M_i`.
    pub fn reparametrize(&self, combos: &[Vec<K::Elem>]) -> Result<Self> {
        Self::new(&self.field, combos.iter().map(|c| self.at(c)).collect())
    }

    pub fn map_field<L: Field>(&self, target: &L, map: impl Fn(&K::Elem) -> L::Elem + Copy) -> QuadricFamily<L> {
        QuadricFamily { field: target.clone(), mats: self.mats.iter().map(|m| m.map_field(target, map)).collect() }
    }

    /// Value of every member's quadric at `x`.
    pub fn eval_at(&self, x: &[K::Elem]) -> Vec<K::Elem> {
        self.mats.iter().map(|m| m.bilinear(x, x)).collect()
    }

    /// Whether `x` lies on every quadric of the family.
    pub fn contains(&self, x: &[K::Elem]) -> bool {
        self.mats.iter().all(|m| self.field.is_zero(&m.bilinear(x, x)))
    }

    /// Rank of the Jacobian `(M_i x)_i` at `x`.
    pub fn jacobian_rank(&self, x: &[K::Elem]) -> usize {
        Matrix::from_rows(&self.field, self.mats.iter().map(|m| m.mul_vec(x)).collect()).rank()
    }

    /// True iff the Jacobian has full rank at every listed point.
    pub fn smoothness_check(&self, pts: &[Vec<K::Elem>]) -> bool {
        pts.iter().all(|p| self.jacobian_rank(p) == self.params())
    }

    /// Points of `pts` where the Jacobian drops rank.
    pub fn singular_base_points(&self, pts: &[Vec<K::Elem>]) -> Vec<Vec<K::Elem>> {
        pts.iter().filter(|p| self.jacobian_rank(p) < self.params()).cloned().collect()
    }

    /// Fixture text: field tag, then one linear form per upper-triangle entry.
    pub fn to_fixture_text(&self) -> String {
        let pm = self.poly_matrix();
        let mut out = format!("{}\n", self.field.tag());
        for i in 0..self.dim() {
            for j in i..self.dim() {
                out.push_str(&pm.entry(i, j).body_text());
                out.push('\n');
            }
        }
        out
    }

    /// Parse fixture text over a known field. `params` is the number of parameters.
    pub fn parse_fixture_over(field: &K, text: &str, params: usize) -> Result<Self> {
        let mut lines = fixture_lines(text);
        let tag = lines.next().ok_or_else(|| Error::Parse("empty fixture".into()))?;
        if normalize_tag(tag) != normalize_tag(&field.tag()) {
            return Err(Error::Parse(format!("fixture field `{tag}` does not match {}", field.tag())));
        }
        let forms: Vec<HomogPoly<K>> = lines
            .map(|l| HomogPoly::parse_body(field, params, l, 1))
            .collect::<Result<_>>()?;
        let n = match forms.len() {
            15 => 5,
            10 => 4,
            6 => 3,
            3 => 2,
            1 => 1,
            k => return Err(Error::Parse(format!("{k} entries do not fill an upper triangle"))),
        };
        if let Some(bad) = forms.iter().find(|f| f.degree() != 1) {
            return Err(Error::Parse(format!("entry `{}` is not linear", bad.body_text())));
        }
        let mut mats = vec![Matrix::zeros(field, n, n); params];
        let mut idx = 0;
        for i in 0..n {
            for j in i..n {
                for (v, m) in mats.iter_mut().enumerate() {
                    let mut mono = [0u8; 5];
                    mono[v] = 1;
                    let c = forms[idx].coeff(&mono);
                    m.set(i, j, c.clone());
                    m.set(j, i, c);
                }
                idx += 1;
            }
        }
        Self::new(field, mats)
    }
}

fn fixture_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty())
}

/// Parse a family fixture whose first line names a finite field.
pub fn parse_finite_fixture(text: &str, params: usize) -> Result<QuadricFamily<Gf>> {
    let tag = fixture_lines(text).next().ok_or_else(|| Error::Parse("empty fixture".into()))?;
    match parse_field_tag(tag)? {
        AnyField::Finite(f) => QuadricFamily::parse_fixture_over(&f, text, params),
        AnyField::Rational => Err(Error::Input("expected a finite field fixture".into())),
    }
}

/// `x^T M x` as a form in `M.rows()` variables.
pub fn quadric_of<K: Field>(m: &Matrix<K>) -> HomogPoly<K> {
    let f = m.field();
    let n = m.rows();
    let two = f.from_i64(2);
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i..n {
            let c = if i == j { m.get(i, i).clone() } else { f.mul(&two, m.get(i, j)) };
            if !f.is_zero(&c) {
                let mut mono = [0u8; 5];
                mono[i] += 1;
                mono[j] += 1;
                terms.push((mono, c));
            }
        }
    }
    HomogPoly::from_terms(f, n, 2, terms).expect("quadratic terms")
}

/// Symmetric matrix of a quadratic form (odd characteristic).
pub fn matrix_of_quadric<K: Field>(q: &HomogPoly<K>) -> Result<Matrix<K>> {
    let f = q.field();
    reject_char_two(f)?;
    if q.degree() != 2 {
        return Err(Error::Mismatch("not a quadratic form".into()));
    }
    let n = q.nvars();
    let half = f.inv(&f.from_i64(2)).expect("odd characteristic");
    let mut m = Matrix::zeros(f, n, n);
    for (mono, c) in q.terms() {
        let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, mono[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m.set(i, i, c.clone());
        } else {
            let h = f.mul(c, &half);
            m.set(i, j, h.clone());
            m.set(j, i, h);
        }
    }
    Ok(m)
}

impl QuadricFamily<Gf> {
    /// Lift to an extension of the prime field (encodings are preserved).
    pub fn lift(&self, ext: &Gf) -> Result<Self> {
        if ext.p() != self.field.p() || (self.field.k() != 1 && ext.k() != self.field.k()) {
            return Err(Error::Input(format!("cannot lift {} to {}", self.field.tag(), ext.tag())));
        }
        Ok(self.map_field(ext, |&x| x))
    }

    /// All points of `P^(n-1)` over the family's field where every quadric vanishes.
    /// Visits `O(q^(n-2))` points by solving one member for a coordinate; `budget` caps
    /// the number of points visited.
    pub fn base_locus(&self, budget: u64) -> Result<Vec<Vec<u64>>> {
        let f = self.field;
        let n = self.dim();
        let space = ProjSpace::new(f, n - 2);
        let Some((member, j)) = self.solvable_member() else {
            let full = ProjSpace::new(f, n - 1);
            if full.count() > budget {
                return Err(Error::Budget(format!("{} points of P^{} exceed budget {budget}", full.count(), n - 1)));
            }
            let mut pts: Vec<Vec<u64>> = (0..full.count())
                .into_par_iter()
                .map(|i| full.point(i))
                .filter(|p| self.contains(p))
                .collect();
            pts.sort();
            return Ok(pts);
        };
        if space.count() > budget {
            return Err(Error::Budget(format!(
                "{} points of P^{}(F_{}) exceed budget {budget}",
                space.count(),
                n - 2,
                f.q()
            )));
        }
        let a = *member.get(j, j);
        let a_inv = f.inv(&a).expect("nonzero pivot");
        let others: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let mut pts: Vec<Vec<u64>> = (0..space.count())
            .into_par_iter()
            .flat_map_iter(|idx| {
                let y = space.point(idx);
                let mut x = vec![0u64; n];
                for (k, &i) in others.iter().enumerate() {
                    x[i] = y[k];
                }
                // a t^2 + 2 b t + c = 0 with t = x_j
                let mut b = 0u64;
                for &i in &others {
                    b = f.add(&b, &f.mul(member.get(j, i), &x[i]));
                }
                let c = member.bilinear(&x, &x);
                let disc = f.sub(&f.mul(&b, &b), &f.mul(&a, &c));
                let mut found = Vec::new();
                if let Some(s) = f.sqrt(&disc) {
                    let nb = f.neg(&b);
                    let r1 = f.mul(&f.add(&nb, &s), &a_inv);
                    let r2 = f.mul(&f.sub(&nb, &s), &a_inv);
                    for r in if r1 == r2 { vec![r1] } else { vec![r1, r2] } {
                        let mut z = x.clone();
                        z[j] = r;
                        if self.contains(&z) {
                            normalize(&f, &mut z);
                            found.push(z);
                        }
                    }
                }
                found.into_iter()
            })
            .collect();
        let mut ej = vec![0u64; n];
        ej[j] = 1;
        if self.contains(&ej) {
            pts.push(ej);
        }
        pts.sort();
        pts.dedup();
        Ok(pts)
    }

    /// Singular points of the base locus over the family's field, found without listing the
    /// base locus: the Jacobian drops rank at `x` exactly when `M_t x = 0` for some `t`, so
    /// it is enough to scan the kernels of the singular members.
    pub fn kernel_singular_points(&self, budget: u64) -> Result<Vec<Vec<u64>>> {
        let f = self.field;
        let n = self.dim();
        let params = ProjSpace::new(f, self.params() - 1);
        if params.count() > budget {
            return Err(Error::Budget(format!("{} parameter points exceed budget {budget}", params.count())));
        }
        let det = self.determinant();
        let found: Vec<Result<Vec<Vec<u64>>>> = (0..params.count())
            .into_par_iter()
            .filter_map(|idx| {
                let t = params.point(idx);
                if det.eval(&t) != 0 {
                    return None;
                }
                let kernel = self.at(&t).nullspace();
                let span = ProjSpace::new(f, kernel.len() - 1);
                if span.count() > budget {
                    return Some(Err(Error::Budget(format!("kernel of dimension {} exceeds budget", kernel.len()))));
                }
                let pts = span
                    .iter()
                    .map(|c| {
                        let mut x = vec![0u64; n];
                        for (ci, v) in c.iter().zip(&kernel) {
                            for (xk, vk) in x.iter_mut().zip(v) {
                                *xk = f.add(xk, &f.mul(ci, vk));
                            }
                        }
                        x
                    })
                    .filter(|x| self.contains(x))
                    .map(|mut x| {
                        normalize(&f, &mut x);
                        x
                    })
                    .collect();
                Some(Ok(pts))
            })
            .collect();
        let mut pts: Vec<Vec<u64>> = Vec::new();
        for r in found {
            pts.extend(r?);
        }
        pts.sort();
        pts.dedup();
        Ok(pts)
    }

    /// A member and a coordinate whose square appears in it.
    fn solvable_member(&self) -> Option<(Matrix<Gf>, usize)> {
        let f = self.field;
        let m = self.params();
        let sp = ProjSpace::new(f, m - 1);
        let limit = sp.count().min(64);
        for idx in 0..limit {
            let t = sp.point(idx);
            let member = self.at(&t);
            for j in (0..self.dim()).rev() {
                if *member.get(j, j) != 0 {
                    return Some((member, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_net(f: &Gf) -> SymNet<Gf> {
        let q = |s: &str| matrix_of_quadric(&HomogPoly::parse_body(f, 5, s, 0).unwrap()).unwrap();
        SymNet::net(f, vec![
            q("x0^2 + x1^2 + x2^2 + x3^2 + x4^2"),
            q("x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2 + 5*x4^2"),
            q("x0^2 + 4*x1^2 + 9*x2^2 + 16*x3^2 + 25*x4^2"),
        ])
        .unwrap()
    }

    #[test]
    fn quadric_matrix_round_trip() {
        let f = Gf::prime(11).unwrap();
        let q = HomogPoly::parse_body(&f, 5, "x0*x1 + 3*x2^2 + 5*x3*x4", 0).unwrap();
        assert_eq!(quadric_of(&matrix_of_quadric(&q).unwrap()), q);
    }

    #[test]
    fn base_locus_matches_brute_force() {
        let f = Gf::prime(7).unwrap();
        let net = sample_net(&f);
        let fast = net.base_locus(1 << 30).unwrap();
        let brute: Vec<Vec<u64>> = ProjSpace::new(f, 4).iter().filter(|p| net.contains(p)).collect();
        assert_eq!(fast, brute);
        assert!(net.smoothness_check(&fast));
    }

    #[test]
    fn fixture_round_trip() {
        let f = Gf::prime(7).unwrap();
        let net = sample_net(&f);
        let text = net.to_fixture_text();
        let back = parse_finite_fixture(&text, 3).unwrap();
        assert_eq!(back, net);
    }

    #[test]
    fn dependent_matrices_rejected() {
        let f = Gf::prime(7).unwrap();
        let id = Matrix::identity(&f, 5);
        assert!(SymNet::net(&f, vec![id.clone(), id.scale(&2), Matrix::diagonal(&f, &[1, 2, 3, 4, 5])]).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let f = Gf::prime(7).unwrap();
        assert!(matches!(sample_net(&f).base_locus(10), Err(Error::Budget(_))));
    }
}
