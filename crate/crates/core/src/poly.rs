//! Sparse homogeneous polynomials in at most five variables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

pub const MAX_VARS: usize = 5;

/// Exponent vector; unused trailing slots stay zero.
pub type Mono = [u8; MAX_VARS];

/// Total degree of an exponent vector.
pub fn mono_degree(m: &Mono) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

fn mono_add(a: &Mono, b: &Mono) -> Mono {
    let mut r = [0u8; MAX_VARS];
    for i in 0..MAX_VARS {
        r[i] = a[i] + b[i];
    }
    r
}

fn mono_sub(a: &Mono, b: &Mono) -> Option<Mono> {
    let mut r = [0u8; MAX_VARS];
    for i in 0..MAX_VARS {
        r[i] = a[i].checked_sub(b[i])?;
    }
    Some(r)
}

/// `binom(n, k)` in `u64`.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of monomials of degree `d` in `n` variables.
pub fn num_monomials(n: usize, d: u32) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binom(d as u64 + n as u64 - 1, n as u64 - 1) as usize
}

/// All monomials of degree `d` in `n` variables, in graded-lex order (largest first).
pub fn monomials(n: usize, d: u32) -> Vec<Mono> {
    let mut out = Vec::with_capacity(num_monomials(n, d));
    let mut cur = [0u8; MAX_VARS];
    fn rec(i: usize, n: usize, left: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i + 1 == n {
            cur[i] = left as u8;
            out.push(*cur);
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u8;
            rec(i + 1, n, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(cur);
        }
        return out;
    }
    rec(0, n, d, &mut cur, &mut out);
    out
}

/// Position lookup for a monomial basis.
pub fn monomial_index(basis: &[Mono]) -> HashMap<Mono, usize> {
    basis.iter().enumerate().map(|(i, m)| (*m, i)).collect()
}

/// A homogeneous polynomial: every stored monomial has the same total degree,
/// no zero coefficient is stored, and terms are kept in graded-lex order.
#[derive(Clone)]
pub struct HomogPoly<K: Field> {
    field: K,
    nvars: usize,
    degree: u32,
    terms: Vec<(Mono, K::Elem)>,
}

impl<K: Field> PartialEq for HomogPoly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.nvars == other.nvars
            && (self.degree == other.degree || (self.terms.is_empty() && other.terms.is_empty()))
            && self.terms == other.terms
    }
}

impl<K: Field> fmt::Debug for HomogPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<K: Field> fmt::Display for HomogPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body_text())
    }
}

impl<K: Field> HomogPoly<K> {
    pub fn zero(field: &K, nvars: usize, degree: u32) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        HomogPoly { field: field.clone(), nvars, degree, terms: Vec::new() }
    }

    pub fn constant(field: &K, nvars: usize, c: K::Elem) -> Self {
        let mut p = Self::zero(field, nvars, 0);
        if !field.is_zero(&c) {
            p.terms.push(([0; MAX_VARS], c));
        }
        p
    }

    pub fn one(field: &K, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `x_i`.
    pub fn var(field: &K, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut m = [0u8; MAX_VARS];
        m[i] = 1;
        HomogPoly { field: field.clone(), nvars, degree: 1, terms: vec![(m, field.one())] }
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(field: &K, coeffs: &[K::Elem]) -> Self {
        let n = coeffs.len();
        let terms = coeffs.iter().enumerate().map(|(i, c)| {
            let mut m = [0u8; MAX_VARS];
            m[i] = 1;
            (m, c.clone())
        });
        Self::from_terms(field, n, 1, terms).expect("linear form")
    }

    pub fn monomial(field: &K, nvars: usize, m: Mono, c: K::Elem) -> Self {
        let d = mono_degree(&m);
        Self::from_terms(field, nvars, d, [(m, c)]).expect("monomial")
    }

    /// Build from arbitrary terms; repeated monomials are summed.
    pub fn from_terms<I>(field: &K, nvars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Mono, K::Elem)>,
    {
        if nvars > MAX_VARS {
            return Err(Error::Mismatch(format!("{nvars} variables exceeds {MAX_VARS}")));
        }
        let mut acc: BTreeMap<Mono, K::Elem> = BTreeMap::new();
        for (m, c) in terms {
            if mono_degree(&m) != degree {
                return Err(Error::Mismatch(format!("term of degree {} in a degree-{degree} form", mono_degree(&m))));
            }
            if m[nvars..].iter().any(|&e| e != 0) {
                return Err(Error::Mismatch("exponent on a variable beyond nvars".into()));
            }
            let e = acc.entry(m).or_insert_with(|| field.zero());
            *e = field.add(e, &c);
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !field.is_zero(c)).collect();
        Ok(HomogPoly { field: field.clone(), nvars, degree, terms })
    }

    /// Dense coefficient vector in the given monomial basis.
    pub fn from_dense(field: &K, nvars: usize, degree: u32, basis: &[Mono], coeffs: &[K::Elem]) -> Self {
        Self::from_terms(field, nvars, degree, basis.iter().copied().zip(coeffs.iter().cloned()))
            .expect("dense basis of matching degree")
    }

    pub fn to_dense(&self, index: &HashMap<Mono, usize>, len: usize) -> Vec<K::Elem> {
        let mut v = vec![self.field.zero(); len];
        for (m, c) in &self.terms {
            v[index[m]] = c.clone();
        }
        v
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn terms(&self) -> &[(Mono, K::Elem)] {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> K::Elem {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Mono, K::Elem)> {
        self.terms.first()
    }

    fn check_compat(&self, other: &Self, same_degree: bool) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Mismatch(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        if same_degree && self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Mismatch(format!("degree {} vs {}", self.degree, other.degree)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compat(other, true)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                (None, _) => std::cmp::Ordering::Less,
            };
            match take {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(&self.terms[i].1, &other.terms[j].1);
                    if !f.is_zero(&c) {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(HomogPoly { field: f.clone(), nvars: self.nvars, degree: self.degree, terms: out })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("polynomial add")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("polynomial sub")
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        HomogPoly {
            field: f.clone(),
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(s) {
            return Self::zero(f, self.nvars, self.degree);
        }
        HomogPoly {
            field: f.clone(),
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, f.mul(c, s))).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other, false)?;
        let f = &self.field;
        let degree = self.degree + other.degree;
        let mut acc: HashMap<Mono, K::Elem> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = mono_add(ma, mb);
                let prod = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = f.add(e, &prod),
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, K::Elem)> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(HomogPoly { field: f.clone(), nvars: self.nvars, degree, terms })
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("polynomial mul")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Value at a coordinate vector.
    pub fn eval(&self, pt: &[K::Elem]) -> K::Elem {
        assert_eq!(pt.len(), self.nvars, "coordinate count must match variable count");
        let f = &self.field;
        let d = self.degree as usize;
        let powers: Vec<Vec<K::Elem>> = pt
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(d + 1);
                v.push(f.one());
                for i in 0..d {
                    v.push(f.mul(&v[i], x));
                }
                v
            })
            .collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars {
                if m[i] > 0 {
                    t = f.mul(&t, &powers[i][m[i] as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Formal partial derivative with respect to `x_var`.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let f = &self.field;
        let degree = self.degree.saturating_sub(1);
        let terms = self.terms.iter().filter(|(m, _)| m[var] > 0).map(|(m, c)| {
            let mut m2 = *m;
            m2[var] -= 1;
            (m2, f.mul(c, &f.from_i64(m[var] as i64)))
        });
        let mut p = Self::from_terms(f, self.nvars, degree, terms).expect("derivative");
        p.degree = degree;
        p
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// `Some(r)` with `self = divisor * r` when the division is exact.
    pub fn exact_divide(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.nvars != divisor.nvars {
            return None;
        }
        let f = &self.field;
        if self.is_zero() {
            return (self.degree >= divisor.degree)
                .then(|| Self::zero(f, self.nvars, self.degree - divisor.degree));
        }
        if self.degree < divisor.degree {
            return None;
        }
        let qdeg = self.degree - divisor.degree;
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = f.inv(&lc)?;
        let mut rem: BTreeMap<Mono, K::Elem> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, K::Elem)> = Vec::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let t = mono_sub(&m, &lm)?;
            let coef = f.mul(&c, &lc_inv);
            for (dm, dc) in &divisor.terms {
                let mm = mono_add(&t, dm);
                let sub = f.mul(&coef, dc);
                let entry = rem.entry(mm).or_insert_with(|| f.zero());
                *entry = f.sub(entry, &sub);
                if f.is_zero(entry) {
                    rem.remove(&mm);
                }
            }
            quot.push((t, coef));
        }
        Some(HomogPoly { field: f.clone(), nvars: self.nvars, degree: qdeg, terms: quot })
    }

    /// `Some(s)` with `s*s = self` when a square root exists over the coefficient field.
    pub fn sqrt(&self) -> Option<Self> {
        let f = &self.field;
        if self.degree % 2 == 1 {
            return None;
        }
        let half = self.degree / 2;
        if self.is_zero() {
            return Some(Self::zero(f, self.nvars, half));
        }
        let two = f.from_i64(2);
        if f.is_zero(&two) {
            return None;
        }
        let (lm, lc) = &self.terms[0];
        if lm.iter().any(|e| e % 2 == 1) {
            return None;
        }
        let mut hm = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            hm[i] = lm[i] / 2;
        }
        let root_lc = f.sqrt(lc)?;
        let mut s = Self::monomial(f, self.nvars, hm, root_lc.clone());
        let two_lc_inv = f.inv(&f.mul(&two, &root_lc))?;
        let bound = num_monomials(self.nvars, half) + 1;
        for _ in 0..bound {
            let r = self.sub(&s.mul(&s));
            let Some((rm, rc)) = r.terms.first().cloned() else {
                return Some(s);
            };
            let t = mono_sub(&rm, &hm)?;
            if t >= hm {
                return None;
            }
            let c = f.mul(&rc, &two_lc_inv);
            s = s.add(&Self::monomial(f, self.nvars, t, c));
        }
        None
    }

    /// Substitute `x_i -> images[i]`, where every image is a linear form in a common
    /// set of variables.
    pub fn substitute_linear(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let f = &self.field;
        let m = images.first().map(|p| p.nvars).unwrap_or(0);
        let d = self.degree;
        let mut cache: Vec<Vec<Self>> = images.iter().map(|im| vec![Self::one(f, m), im.clone()]).collect();
        let mut acc = Self::zero(f, m, d);
        for (mono, c) in &self.terms {
            let mut t = Self::constant(f, m, c.clone());
            for i in 0..self.nvars {
                let e = mono[i] as usize;
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][e]);
            }
            if !t.is_zero() {
                acc = if acc.is_zero() { t } else { acc.add(&t) };
            }
        }
        acc.degree = d;
        acc
    }

    /// Substitute `x -> M y` for a square or rectangular scalar matrix given row-wise:
    /// `x_i = sum_j rows[i][j] y_j`.
    pub fn linear_change(&self, rows: &[Vec<K::Elem>]) -> Self {
        let images: Vec<Self> = rows.iter().map(|r| Self::linear(&self.field, r)).collect();
        self.substitute_linear(&images)
    }

    /// Apply a coefficient map into another field (for example a prime field into an extension).
    pub fn map_field<L: Field, F: Fn(&K::Elem) -> L::Elem>(&self, target: &L, map: F) -> HomogPoly<L> {
        let terms = self.terms.iter().map(|(m, c)| (*m, map(c)));
        let mut p = HomogPoly::from_terms(target, self.nvars, self.degree, terms).expect("field map");
        p.degree = self.degree;
        p
    }

    /// Scalar multiple with leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            Some((_, c)) => self.scale(&self.field.inv(c).expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Whether `self = lambda * other` for a nonzero scalar.
    pub fn is_proportional(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.nvars == other.nvars && self.degree == other.degree && self.monic() == other.monic()
    }

    /// Text body `c*x0^a*x1^b + ...` (no field tag).
    pub fn body_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = &self.field;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                let cs = f.format_elem(c);
                let has_vars = m.iter().any(|&e| e > 0);
                if !(f.is_one(c) && has_vars) {
                    factors.push(cs);
                }
                for (i, &e) in m.iter().enumerate().take(self.nvars) {
                    match e {
                        0 => {}
                        1 => factors.push(format!("x{i}")),
                        _ => factors.push(format!("x{i}^{e}")),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }

    /// Full text form with the field tag prefix.
    pub fn to_text(&self) -> String {
        format!("{}: {}", self.field.tag(), self.body_text())
    }

    /// Parse a body in the text format. The degree of the zero polynomial is `zero_degree`.
    pub fn parse_body(field: &K, nvars: usize, text: &str, zero_degree: u32) -> Result<Self> {
        let text = text.trim();
        if text == "0" || text.is_empty() {
            return Ok(Self::zero(field, nvars, zero_degree));
        }
        let mut terms = Vec::new();
        let mut degree = None;
        for raw in split_top_level(text, '+') {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(Error::Parse(format!("empty term in `{text}`")));
            }
            let (neg, body) = match raw.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, raw),
            };
            let mut coef = field.one();
            let mut mono = [0u8; MAX_VARS];
            for factor in split_top_level(body, '*') {
                let factor = factor.trim();
                if let Some(v) = factor.strip_prefix('x') {
                    let (idx, exp) = match v.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u8>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
                        None => (v, 1u8),
                    };
                    let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                    if idx >= nvars {
                        return Err(Error::Parse(format!("variable x{idx} outside {nvars} variables")));
                    }
                    mono[idx] += exp;
                } else {
                    coef = field.mul(&coef, &field.parse_elem(factor)?);
                }
            }
            if neg {
                coef = field.neg(&coef);
            }
            let d = mono_degree(&mono);
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(Error::Parse(format!("inhomogeneous text `{text}`"))),
                _ => {}
            }
            terms.push((mono, coef));
        }
        Self::from_terms(field, nvars, degree.unwrap_or(zero_degree), terms)
    }

    /// Parse `TAG: body`, checking the tag against `field`.
    pub fn parse_text(field: &K, nvars: usize, text: &str, zero_degree: u32) -> Result<Self> {
        let (tag, body) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing field tag in `{text}`")))?;
        if normalize_tag(tag) != normalize_tag(&field.tag()) {
            return Err(Error::Parse(format!("field tag `{}` does not match {}", tag.trim(), field.tag())));
        }
        Self::parse_body(field, nvars, body, zero_degree)
    }
}

pub(crate) fn normalize_tag(t: &str) -> String {
    let t: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    t.replace("^1)", ")")
}

/// Split on `sep` outside parentheses.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf, QQ};

    fn x(f: &Gf, n: usize, i: usize) -> HomogPoly<Gf> {
        HomogPoly::var(f, n, i)
    }

    #[test]
    fn difference_of_squares() {
        let f = Gf::prime(7).unwrap();
        let (a, b) = (x(&f, 2, 0), x(&f, 2, 1));
        let prod = a.add(&b).mul(&a.sub(&b));
        let expect = a.mul(&a).sub(&b.mul(&b));
        assert_eq!(prod, expect);
        assert_eq!(prod.to_text(), "GF(7): x0^2 + 6*x1^2");
    }

    #[test]
    fn multiply_by_one() {
        let f = Gf::prime(7).unwrap();
        let p = HomogPoly::parse_body(&f, 3, "3*x0^2*x1 + x2^3", 0).unwrap();
        assert_eq!(p.mul(&HomogPoly::one(&f, 3)), p);
    }

    #[test]
    fn add_rejects_degree_mismatch() {
        let f = Gf::prime(7).unwrap();
        let a = x(&f, 3, 0);
        let b = a.mul(&a);
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_add(&x(&f, 2, 0)).is_err());
    }

    #[test]
    fn terms_are_graded_lex() {
        let f = Gf::prime(5).unwrap();
        let p = HomogPoly::parse_body(&f, 3, "x2^2 + x0*x1 + x1^2 + x0^2", 0).unwrap();
        let order: Vec<Mono> = p.terms().iter().map(|t| t.0).collect();
        let basis = monomials(3, 2);
        let filtered: Vec<Mono> = basis.into_iter().filter(|m| order.contains(m)).collect();
        assert_eq!(order, filtered);
        assert_eq!(order[0], [2, 0, 0, 0, 0]);
    }

    #[test]
    fn derivative_of_fourth_power() {
        let f = Gf::prime(11).unwrap();
        let p = x(&f, 4, 0).pow(4);
        assert_eq!(p.partial(0), x(&f, 4, 0).pow(3).scale(&4));
    }

    #[test]
    fn square_root_of_a_square() {
        let f = Gf::prime(13).unwrap();
        let c = HomogPoly::parse_body(&f, 3, "x0*x1 + x2^2", 0).unwrap();
        let r = c.mul(&c).sqrt().unwrap();
        assert!(r.is_proportional(&c));
        let q = QQ;
        let c = HomogPoly::parse_body(&q, 3, "x0*x1 + (-2/3)*x2^2", 0).unwrap();
        let r = c.mul(&c).sqrt().unwrap();
        assert!(r.is_proportional(&c));
    }

    #[test]
    fn division_round_trip_and_failure() {
        let f = Gf::prime(7).unwrap();
        let conic = HomogPoly::parse_body(&f, 3, "x0*x1 + x2^2", 0).unwrap();
        let cubic = HomogPoly::parse_body(&f, 3, "x0^3 + 2*x1^2*x2 + x2^3", 0).unwrap();
        let prod = conic.mul(&cubic);
        assert_eq!(prod.exact_divide(&conic).unwrap(), cubic);
        assert_eq!(prod.exact_divide(&prod).unwrap(), HomogPoly::one(&f, 3));
        let other = HomogPoly::parse_body(&f, 3, "x0^2 + x1^2 + x2^2", 0).unwrap();
        assert!(prod.exact_divide(&other).is_none());
    }

    #[test]
    fn text_round_trip_extension_and_rational() {
        let f = Gf::new(5, 2).unwrap();
        let p = HomogPoly::parse_body(&f, 2, "(1+2*a)*x0^2 + 3*a*x0*x1 + x1^2", 0).unwrap();
        let back = HomogPoly::parse_text(&f, 2, &p.to_text(), 0).unwrap();
        assert_eq!(p, back);
        let p = HomogPoly::parse_body(&QQ, 2, "(1/2)*x0 + -3*x1", 0).unwrap();
        let back = HomogPoly::parse_text(&QQ, 2, &p.to_text(), 0).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(5, 2).len(), 15);
        assert_eq!(monomials(4, 3).len(), 20);
        assert_eq!(monomials(4, 7).len(), 120);
        assert_eq!(monomials(3, 5).len(), 21);
    }
}
