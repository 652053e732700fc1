//! Exact coefficient domains: prime fields, their small extensions, and the rationals.
//!
//! A [`Field`] value is a cheap handle describing the domain; elements are plain
//! data (`u64` encodings for finite fields, [`BigRational`] for `QQ`). All
//! arithmetic goes through the handle so that generic code never has to know
//! which domain it runs over.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest prime accepted as a characteristic.
pub const MAX_PRIME: u64 = 257;
/// Largest accepted extension degree.
pub const MAX_EXT_DEGREE: u32 = 4;

const TABLE_LIMIT: u64 = 1 << 20;

/// A coefficient domain with exact arithmetic.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Text tag used as the prefix of serialized polynomials, e.g. `GF(11)` or `QQ`.
    fn tag(&self) -> String;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    /// A square root inside the field, if one exists.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Every element, for finite domains small enough to list.
    fn finite_elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Finite fields
// ---------------------------------------------------------------------------

struct Tables {
    log: Vec<u32>,
    exp: Vec<u64>,
}

/// Shared, interned description of `F_{p^k}`.
pub struct GfCtx {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, coefficients from degree 0 to degree k (only used for k > 1).
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

/// Handle to the finite field `F_{p^k}`. Elements are `u64` encodings `sum c_i p^i`
/// of polynomials in the generator `a` modulo the field's fixed modulus.
#[derive(Clone, Copy)]
pub struct Gf(&'static GfCtx);

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}
impl Eq for Gf {}

impl Debug for Gf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.tag())
    }
}

fn registry() -> &'static Mutex<HashMap<(u64, u32), &'static GfCtx>> {
    static REG: OnceLock<Mutex<HashMap<(u64, u32), &'static GfCtx>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p used only while building extension fields.
fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    fp_rem(&mut r, m, p);
    r
}

fn fp_rem(r: &mut Vec<u64>, m: &[u64], p: u64) {
    let dm = m.len() - 1;
    let lead_inv = fp_inv(m[dm], p);
    fp_trim(r);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        for j in 0..=dm {
            let idx = top - dm + j;
            r[idx] = (r[idx] + p * p - c * m[j] % p) % p;
        }
        fp_trim(r);
    }
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn fp_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        fp_rem(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn fp_powx(e: u64, m: &[u64], p: u64) -> Vec<u64> {
    // x^e mod m
    let mut acc = vec![1u64];
    let mut base = vec![0u64, 1];
    fp_rem(&mut base, m, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulmod(&acc, &base, m, p);
        }
        base = fp_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

/// Rabin irreducibility test for a monic polynomial over F_p.
fn fp_irreducible(m: &[u64], p: u64) -> bool {
    let k = (m.len() - 1) as u32;
    let sub_x = |e: u64| {
        let mut v = fp_powx(e, m, p);
        v.resize(v.len().max(2), 0);
        v[1] = (v[1] + p - 1) % p;
        fp_trim(&mut v);
        v
    };
    if !sub_x(p.pow(k)).is_empty() {
        return false;
    }
    for d in prime_factors(k as u64) {
        let g = fp_gcd(m.to_vec(), sub_x(p.pow(k / d as u32)), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree `k` over F_p,
/// coefficients listed from degree 0 upward. Candidates are ordered by their
/// non-leading coefficients read from degree k-1 down to degree 0.
pub fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    for code in 0..count {
        let mut m = vec![0u64; k as usize + 1];
        m[k as usize] = 1;
        let mut c = code;
        for i in 0..k as usize {
            m[i] = c % p;
            c /= p;
        }
        if k == 1 || fp_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial exists in every degree")
}

impl GfCtx {
    fn build(p: u64, k: u32) -> GfCtx {
        let q = p.pow(k);
        let modulus = smallest_irreducible(p, k);
        let mut ctx = GfCtx { p, k, q, modulus, tables: None };
        if q <= TABLE_LIMIT && q > 2 {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx
    }

    fn build_tables(&self) -> Tables {
        let order = self.q - 1;
        let factors = prime_factors(order);
        let mut g = 1u64;
        for cand in 2..self.q {
            if factors.iter().all(|&r| self.slow_pow(cand, order / r) != 1) {
                g = cand;
                break;
            }
        }
        if self.q == 3 {
            g = 2;
        }
        let mut exp = vec![0u64; 2 * order as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u64;
        for i in 0..order as usize {
            exp[i] = x;
            exp[i + order as usize] = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, g);
        }
        Tables { log, exp }
    }

    fn digits(&self, mut a: u64) -> [u64; 4] {
        let mut d = [0u64; 4];
        for slot in d.iter_mut().take(self.k as usize) {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u64]) -> u64 {
        let mut acc = 0u64;
        for &c in d.iter().take(self.k as usize).rev() {
            acc = acc * self.p + c;
        }
        acc
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let p = self.p;
        let mut r = [0u64; 8];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                r[i + j] = (r[i + j] + da[i] * db[j]) % p;
            }
        }
        for top in (k..2 * k - 1).rev() {
            let c = r[top];
            if c == 0 {
                continue;
            }
            r[top] = 0;
            for j in 0..k {
                r[top - k + j] = (r[top - k + j] + p * p - c * self.modulus[j] % p) % p;
            }
        }
        self.encode(&r[..k])
    }

    fn slow_pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl Gf {
    /// The field `F_{p^k}`; `p` must be a prime at most 257 and `1 <= k <= 4`.
    pub fn new(p: u64, k: u32) -> Result<Gf> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::Input(format!("characteristic {p} is not a prime <= {MAX_PRIME}")));
        }
        if k == 0 || k > MAX_EXT_DEGREE {
            return Err(Error::Input(format!("extension degree {k} outside 1..={MAX_EXT_DEGREE}")));
        }
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(ctx) = reg.get(&(p, k)) {
            return Ok(Gf(ctx));
        }
        let ctx: &'static GfCtx = Box::leak(Box::new(GfCtx::build(p, k)));
        reg.insert((p, k), ctx);
        Ok(Gf(ctx))
    }

    /// Prime field `F_p`.
    pub fn prime(p: u64) -> Result<Gf> {
        Gf::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn k(&self) -> u32 {
        self.0.k
    }
    /// Number of elements.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Fixed modulus of the extension, coefficients from degree 0 to degree k.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Extension `F_{p^(k*m)}` of this field. Only extensions of prime fields keep
    /// the inclusion trivial, so `self` must be a prime field unless `m == 1`.
    pub fn extension(&self, m: u32) -> Result<Gf> {
        if m == 1 {
            return Ok(*self);
        }
        if self.k() != 1 {
            return Err(Error::Input(
                "only prime fields can be lifted to extensions".to_string(),
            ));
        }
        Gf::new(self.p(), m)
    }

    /// Whether `a` lies in the prime subfield (encodings below `p`).
    pub fn in_prime_field(&self, a: u64) -> bool {
        a < self.0.p
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u64> + Clone {
        0..self.0.q
    }

    /// The `p`-power Frobenius.
    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(&a, self.0.p)
    }

    /// Frobenius of the subfield of order `q0`: `a -> a^q0`.
    pub fn frobenius_q(&self, a: u64, q0: u64) -> u64 {
        self.pow(&a, q0)
    }

    pub fn is_square(&self, a: u64) -> bool {
        if a == 0 || self.0.p == 2 {
            return true;
        }
        self.pow(&a, (self.0.q - 1) / 2) == 1
    }

    /// Digits of the encoding: coefficients of `1, a, a^2, ...`.
    pub fn coords(&self, a: u64) -> Vec<u64> {
        self.0.digits(a)[..self.0.k as usize].to_vec()
    }

    pub fn from_coords(&self, c: &[u64]) -> u64 {
        let mut d = [0u64; 4];
        for (i, &x) in c.iter().enumerate().take(self.0.k as usize) {
            d[i] = x % self.0.p;
        }
        self.0.encode(&d)
    }

    fn tonelli(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        let q = self.0.q;
        if self.0.p == 2 {
            return Some(self.pow(&a, q / 2));
        }
        if !self.is_square(a) {
            return None;
        }
        let mut s = 0u32;
        let mut t = q - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = self.elements().find(|&z| z != 0 && !self.is_square(z))?;
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut tt = self.pow(&a, t);
        let mut r = self.pow(&a, t.div_ceil(2));
        while tt != 1 {
            let mut i = 0u32;
            let mut x = tt;
            while x != 1 {
                x = self.mul(&x, &x);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

impl Field for Gf {
    type Elem = u64;

    fn finite_elements(&self) -> Option<Vec<u64>> {
        (self.q() <= TABLE_LIMIT).then(|| self.elements().collect())
    }

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.0.p as i64) as u64
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let ctx = self.0;
        if ctx.k == 1 {
            let s = a + b;
            return if s >= ctx.p { s - ctx.p } else { s };
        }
        let (da, db) = (ctx.digits(*a), ctx.digits(*b));
        let mut d = [0u64; 4];
        for i in 0..ctx.k as usize {
            let s = da[i] + db[i];
            d[i] = if s >= ctx.p { s - ctx.p } else { s };
        }
        ctx.encode(&d)
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        let ctx = self.0;
        if ctx.k == 1 {
            return a * b % ctx.p;
        }
        if *a == 0 || *b == 0 {
            return 0;
        }
        match &ctx.tables {
            Some(t) => t.exp[t.log[*a as usize] as usize + t.log[*b as usize] as usize],
            None => ctx.slow_mul(*a, *b),
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        let ctx = self.0;
        if ctx.k == 1 {
            return if *a == 0 { 0 } else { ctx.p - a };
        }
        let da = ctx.digits(*a);
        let mut d = [0u64; 4];
        for i in 0..ctx.k as usize {
            d[i] = if da[i] == 0 { 0 } else { ctx.p - da[i] };
        }
        ctx.encode(&d)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let ctx = self.0;
        match &ctx.tables {
            Some(t) => {
                let order = (ctx.q - 1) as usize;
                let l = t.log[*a as usize] as usize;
                Some(t.exp[(order - l) % order])
            }
            None => Some(ctx.slow_pow(*a, ctx.q - 2)),
        }
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.0.p
    }
    fn tag(&self) -> String {
        if self.0.k == 1 {
            format!("GF({})", self.0.p)
        } else {
            format!("GF({}^{})", self.0.p, self.0.k)
        }
    }
    fn format_elem(&self, a: &u64) -> String {
        if self.0.k == 1 {
            return a.to_string();
        }
        let d = self.coords(*a);
        let mut parts = Vec::new();
        for (i, &c) in d.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*a"),
                _ => format!("{c}*a^{i}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else if parts.len() == 1 && d[0] == *a {
            parts[0].clone()
        } else {
            format!("({})", parts.join("+"))
        }
    }
    fn parse_elem(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        let mut acc = 0u64;
        let bad = || Error::Parse(format!("bad {} element `{s}`", self.tag()));
        for raw in split_signed(inner) {
            let (neg, term) = raw;
            let term = term.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, power) = if let Some(pos) = term.find('a') {
                let c = term[..pos].trim_end_matches('*').trim();
                let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad())? };
                let rest = &term[pos + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?
                };
                if e >= self.0.k {
                    return Err(bad());
                }
                (c, e)
            } else {
                (term.parse::<i64>().map_err(|_| bad())?, 0)
            };
            let c = if neg { -coef } else { coef };
            let mut d = vec![0u64; self.0.k as usize];
            d[power as usize] = c.rem_euclid(self.0.p as i64) as u64;
            acc = self.add(&acc, &self.from_coords(&d));
        }
        Ok(acc)
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return Some(0);
        }
        let ctx = self.0;
        if let Some(t) = &ctx.tables {
            let l = t.log[*a as usize] as usize;
            if ctx.p == 2 {
                let order = (ctx.q - 1) as usize;
                let half = if l.is_multiple_of(2) { l / 2 } else { (l + order) / 2 };
                return Some(t.exp[half]);
            }
            if l % 2 == 1 {
                return None;
            }
            let r = t.exp[l / 2];
            let r2 = self.neg(&r);
            return Some(r.min(r2));
        }
        self.tonelli(*a).map(|r| r.min(self.neg(&r)))
    }
    fn pow(&self, a: &u64, e: u64) -> u64 {
        if let Some(t) = &self.0.tables {
            if *a == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let order = self.0.q - 1;
            let l = t.log[*a as usize] as u64;
            return t.exp[((l as u128 * e as u128) % order as u128) as usize];
        }
        let mut base = *a;
        let mut acc = 1u64;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Split `a+b-c` into signed pieces without breaking exponents.
fn split_signed(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && prev.is_some_and(|c| c != '^' && c != '*' && c != '/') && !cur.trim().is_empty() {
            out.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.trim().is_empty() {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur));
    }
    out
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

/// Shorthand for the rational field handle.
pub const QQ: Rationals = Rationals;

fn bigint_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn tag(&self) -> String {
        "QQ".to_string()
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("({}/{})", a.numer(), a.denom())
        }
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        let bad = || Error::Parse(format!("bad rational `{s}`"));
        let (n, d) = match inner.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (inner, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        let n = bigint_sqrt(a.numer())?;
        let d = bigint_sqrt(a.denom())?;
        Some(BigRational::new(n, d))
    }
}

/// A field chosen at run time from a text tag.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Finite(Gf),
    Rational,
}

/// Parse `GF(p)`, `GF(p^k)` or `QQ`.
pub fn parse_field_tag(tag: &str) -> Result<AnyField> {
    let t = tag.trim();
    if t == "QQ" {
        return Ok(AnyField::Rational);
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("unknown field tag `{t}`")))?;
    let (p, k) = match inner.split_once('^') {
        Some((p, k)) => (p.trim(), k.trim()),
        None => (inner.trim(), "1"),
    };
    let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad prime in `{t}`")))?;
    let k: u32 = k.parse().map_err(|_| Error::Parse(format!("bad degree in `{t}`")))?;
    Ok(AnyField::Finite(Gf::new(p, k)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = Gf::prime(11).unwrap();
        for a in 1..11 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
    }

    #[test]
    fn extension_moduli_are_smallest() {
        // x^2 + 1 is irreducible mod 11 and mod 7 and nothing smaller is.
        assert_eq!(smallest_irreducible(11, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(7, 2), vec![1, 0, 1]);
        // mod 5, -1 is a square, x^2+2 is the first irreducible.
        assert_eq!(smallest_irreducible(5, 2), vec![2, 0, 1]);
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = Gf::new(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(&a, &b), f.0.slow_mul(a, b));
            }
        }
    }

    #[test]
    fn large_extension_without_tables() {
        let f = Gf::new(257, 3).unwrap();
        assert!(f.0.tables.is_none());
        let a = f.from_coords(&[3, 5, 7]);
        let ai = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &ai), 1);
        let sq = f.mul(&a, &a);
        let r = f.sqrt(&sq).unwrap();
        assert_eq!(f.mul(&r, &r), sq);
    }

    #[test]
    fn square_roots() {
        for (p, k) in [(7, 1), (11, 2), (13, 1), (5, 4), (2, 3)] {
            let f = Gf::new(p, k).unwrap();
            for a in f.elements() {
                if let Some(r) = f.sqrt(&a) {
                    assert_eq!(f.mul(&r, &r), a);
                } else {
                    assert!(!f.is_square(a));
                }
            }
        }
    }

    #[test]
    fn element_text_round_trip() {
        let f = Gf::new(11, 2).unwrap();
        for a in f.elements() {
            let s = f.format_elem(&a);
            assert_eq!(f.parse_elem(&s).unwrap(), a, "{s}");
        }
        let q = QQ;
        let x = q.parse_elem("(-3/4)").unwrap();
        assert_eq!(q.format_elem(&x), "(-3/4)");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Gf::new(263, 1).is_err());
        assert!(Gf::new(9, 1).is_err());
        assert!(Gf::new(7, 5).is_err());
    }
}
