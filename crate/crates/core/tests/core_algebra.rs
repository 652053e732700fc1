use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use prym5::bivar::squarefree_test;
use prym5::hilbert::{hilbert_function, interpolation_rank};
use prym5::net::{admissible_block_net, discriminant_quintic};
use prym5::poly::{binom, monomials, num_monomials};
use prym5::rng::stream;
use prym5::{Field, Gf, HomogPoly, Matrix, PolyMatrix};

fn random_poly(f: &Gf, rng: &mut ChaCha8Rng, nvars: usize, degree: u32) -> HomogPoly<Gf> {
    let basis = monomials(nvars, degree);
    let coeffs: Vec<u64> = basis.iter().map(|_| rng.gen_range(0..f.q())).collect();
    HomogPoly::from_dense(f, nvars, degree, &basis, &coeffs)
}

fn random_point(f: &Gf, rng: &mut ChaCha8Rng, n: usize) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(0..f.q())).collect()
}

fn parse(f: &Gf, nvars: usize, s: &str) -> HomogPoly<Gf> {
    HomogPoly::parse_body(f, nvars, s, 0).unwrap()
}

/// Whether some `r` of the right degree satisfies `p = q r`, by a dense linear solve.
fn divisible_by_linear_solve(p: &HomogPoly<Gf>, q: &HomogPoly<Gf>) -> bool {
    let f = *p.field();
    let n = p.nvars();
    let rd = p.degree() - q.degree();
    let target = monomials(n, p.degree());
    let index = prym5::poly::monomial_index(&target);
    let len = target.len();
    let cols: Vec<Vec<u64>> = monomials(n, rd)
        .into_iter()
        .map(|m| q.mul(&HomogPoly::monomial(&f, n, m, 1)).to_dense(&index, len))
        .collect();
    let a = Matrix::from_fn(&f, len, cols.len(), |i, j| cols[j][i]);
    let pv = p.to_dense(&index, len);
    let aug = Matrix::from_fn(&f, len, cols.len() + 1, |i, j| if j < cols.len() { cols[j][i] } else { pv[i] });
    a.rank() == aug.rank()
}

#[test]
fn difference_of_squares() {
    let f = Gf::prime(7).unwrap();
    let prod = parse(&f, 2, "x0 + x1").mul(&parse(&f, 2, "x0 + 6*x1"));
    assert_eq!(prod, parse(&f, 2, "x0^2 + 6*x1^2"));
    let p = parse(&f, 3, "x0^2*x1 + 3*x2^3");
    assert_eq!(p.mul(&HomogPoly::one(&f, 3)), p);
}

#[test]
fn product_matches_naive_term_loop() {
    let f = Gf::prime(13).unwrap();
    let mut rng = stream(11, 0);
    for _ in 0..50 {
        let a = random_poly(&f, &mut rng, 3, 2);
        let b = random_poly(&f, &mut rng, 3, 3);
        let mut terms = Vec::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut m = *ma;
                for (e, x) in m.iter_mut().zip(mb) {
                    *e += x;
                }
                terms.push((m, f.mul(ca, cb)));
            }
        }
        let naive = HomogPoly::from_terms(&f, 3, 5, terms).unwrap();
        assert_eq!(a.mul(&b), naive);
    }
}

#[test]
fn adding_different_degrees_is_an_error() {
    let f = Gf::prime(7).unwrap();
    assert!(parse(&f, 3, "x0").checked_add(&parse(&f, 3, "x0^2")).is_err());
    assert!(parse(&f, 3, "x0").checked_add(&parse(&f, 4, "x0")).is_err());
}

#[test]
fn evaluation_scales_by_degree_power() {
    let f = Gf::new(3, 2).unwrap();
    let mut rng = stream(4, 0);
    let x2y2 = parse(&f, 3, "x0^2 + x1^2");
    assert_eq!(x2y2.eval(&[1, 0, 0]), 1);
    for _ in 0..50 {
        let p = random_poly(&f, &mut rng, 3, 4);
        let x = random_point(&f, &mut rng, 3);
        let lam = rng.gen_range(1..f.q());
        let scaled: Vec<u64> = x.iter().map(|c| f.mul(c, &lam)).collect();
        assert_eq!(p.eval(&scaled), f.mul(&f.pow(&lam, 4), &p.eval(&x)));
    }
}

#[test]
fn partial_derivatives() {
    let f = Gf::prime(7).unwrap();
    assert_eq!(parse(&f, 3, "x0^4").partial(0), parse(&f, 3, "4*x0^3"));
    let conic = parse(&f, 3, "x0*x1 + x2^2");
    let lhs = conic.mul(&conic).partial(1);
    let rhs = conic.mul(&conic.partial(1)).scale(&2);
    assert_eq!(lhs, rhs);
}

#[test]
fn euler_identity() {
    let f = Gf::prime(31).unwrap();
    let mut rng = stream(7, 0);
    for _ in 0..100 {
        let d = rng.gen_range(1..6u32);
        let p = random_poly(&f, &mut rng, 4, d);
        let mut acc = HomogPoly::zero(&f, 4, d);
        for (i, g) in p.gradient().iter().enumerate() {
            acc = acc.add(&g.mul(&HomogPoly::var(&f, 4, i)));
        }
        assert_eq!(acc, p.scale(&u64::from(d)));
    }
}

#[test]
fn exact_division_examples() {
    let f = Gf::prime(11).unwrap();
    let conic = parse(&f, 3, "x0^2 + x1*x2");
    let cubic = parse(&f, 3, "x0^3 + 2*x1^3 + 3*x2^3 + x0*x1*x2");
    assert_eq!(conic.mul(&cubic).exact_divide(&conic), Some(cubic.clone()));
    assert_eq!(cubic.exact_divide(&cubic), Some(HomogPoly::one(&f, 3)));

    let mut rng = stream(8, 0);
    let mut absent = 0;
    for _ in 0..40 {
        let quintic = random_poly(&f, &mut rng, 3, 5);
        let q = random_poly(&f, &mut rng, 3, 2);
        let fast = quintic.exact_divide(&q).is_some();
        assert_eq!(fast, divisible_by_linear_solve(&quintic, &q));
        absent += usize::from(!fast);
    }
    assert_eq!(absent, 40);
}

#[test]
fn determinant_examples() {
    let f = Gf::prime(11).unwrap();
    let id = PolyMatrix::from_pencil(&f, &[Matrix::identity(&f, 5)]);
    assert_eq!(id.det(), parse(&f, 1, "x0^5"));

    let mut rng = stream(12, 0);
    let small: Vec<Matrix<Gf>> = (0..3).map(|_| sym(&f, &mut rng, 2)).collect();
    let large: Vec<Matrix<Gf>> = (0..3).map(|_| sym(&f, &mut rng, 3)).collect();
    let blocks: Vec<Matrix<Gf>> = small
        .iter()
        .zip(&large)
        .map(|(a, b)| Matrix::from_fn(&f, 5, 5, |i, j| match (i < 2, j < 2) {
            (true, true) => *a.get(i, j),
            (false, false) => *b.get(i - 2, j - 2),
            _ => 0,
        }))
        .collect();
    let whole = PolyMatrix::from_pencil(&f, &blocks).det();
    let prod = PolyMatrix::from_pencil(&f, &small).det().mul(&PolyMatrix::from_pencil(&f, &large).det());
    assert_eq!(whole, prod);
}

fn sym(f: &Gf, rng: &mut ChaCha8Rng, n: usize) -> Matrix<Gf> {
    let mut m = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(0..f.q());
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

#[test]
fn determinant_matches_evaluation_oracle() {
    for (p, k) in [(11, 1), (7, 1), (3, 2)] {
        let f = Gf::new(p, k).unwrap();
        let mut rng = stream(p + u64::from(k), 0);
        let mats: Vec<Matrix<Gf>> = (0..3).map(|_| sym(&f, &mut rng, 5)).collect();
        let pm = PolyMatrix::from_pencil(&f, &mats);
        let det = pm.det();
        assert_eq!(det.degree(), 5);
        for _ in 0..100 {
            let t = random_point(&f, &mut rng, 3);
            assert_eq!(det.eval(&t), pm.eval(&t).det());
        }
    }
}

#[test]
fn nullspace_examples() {
    let f = Gf::prime(13).unwrap();
    assert_eq!(Matrix::zeros(&f, 3, 4).nullspace().len(), 4);
    assert!(Matrix::<Gf>::identity(&f, 4).nullspace().is_empty());
    let mut rng = stream(13, 0);
    for r in 0..=5usize {
        let left = Matrix::from_fn(&f, 6, r, |_, _| rng.gen_range(0..13));
        let right = Matrix::from_fn(&f, r, 7, |_, _| rng.gen_range(0..13));
        let m = if r == 0 { Matrix::zeros(&f, 6, 7) } else { left.mul(&right) };
        let rank = m.rank();
        assert!(rank <= r);
        let ns = m.nullspace();
        assert_eq!(rank + ns.len(), 7);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }
}

#[test]
fn squarefree_examples() {
    let f = Gf::prime(11).unwrap();
    let conic = parse(&f, 3, "x0^2 + x1*x2");
    assert!(!squarefree_test(&conic.mul(&conic)));
    // meets the conic in six distinct points of the chart x2 = 1
    let cubic = parse(&f, 3, "x1^3 + 10*x1*x2^2");
    let product = conic.mul(&cubic);
    assert!(squarefree_test(&product));
    // a factor supported on the line at infinity
    let at_infinity = parse(&f, 3, "x2^2").mul(&parse(&f, 3, "x0^3 + x1^3 + x0*x1*x2"));
    assert!(!squarefree_test(&at_infinity));

    let (bn, _) = admissible_block_net(&f, &mut stream(21, 0), 1 << 24).unwrap();
    assert!(squarefree_test(discriminant_quintic(&bn.net).quintic().unwrap()));
}

#[test]
fn square_roots() {
    let f = Gf::prime(7).unwrap();
    let c = parse(&f, 3, "x0*x1 + x2^2");
    let root = c.mul(&c).sqrt().unwrap();
    assert!(root == c || root == c.neg());
    let quartic = parse(&f, 3, "x0^4 + x1^4 + x2^4 + x0*x1*x2^2");
    assert!(squarefree_test(&quartic));
    assert!(quartic.sqrt().is_none());
}

#[test]
fn hilbert_function_examples() {
    let f = Gf::prime(101).unwrap();
    let mut rng = stream(2, 0);
    assert_eq!(hilbert_function::<Gf>(&f, 5, &[], 4).unwrap(), binom(8, 4) as usize);
    let gens: Vec<HomogPoly<Gf>> = (0..3).map(|_| random_poly(&f, &mut rng, 5, 2)).collect();
    assert_eq!(hilbert_function(&f, 5, &gens, 2).unwrap(), 12);
    for d in 3..=6u32 {
        assert_eq!(hilbert_function(&f, 5, &gens, d).unwrap(), (8 * d - 4) as usize);
    }
    // adding generators can only shrink the quotient
    for k in 0..3 {
        let fewer = hilbert_function(&f, 5, &gens[..k], 3).unwrap();
        let more = hilbert_function(&f, 5, &gens[..=k], 3).unwrap();
        assert!(more <= fewer);
    }
    assert!(hilbert_function(&f, 5, &gens, 1).is_err());
}

#[test]
fn hilbert_function_matches_interpolation_rank() {
    let f = Gf::prime(11).unwrap();
    let (bn, _) = admissible_block_net(&f, &mut stream(3, 0), 1 << 24).unwrap();
    let ext = f.extension(2).unwrap();
    let net = bn.net.lift(&ext).unwrap();
    let pts = net.base_locus(1 << 24).unwrap();
    let gens = net.quadric_forms();
    let mut compared = 0;
    for d in 2..=6u32 {
        // a form not vanishing on the curve meets it in 8d points
        if pts.len() <= 8 * d as usize {
            continue;
        }
        assert_eq!(hilbert_function(&ext, 5, &gens, d).unwrap(), interpolation_rank(&ext, 5, d, &pts));
        compared += 1;
    }
    assert!(compared >= 3, "only {} curve points over {}", pts.len(), ext.tag());
}

#[test]
fn text_round_trip() {
    let f = Gf::new(5, 2).unwrap();
    let mut rng = stream(5, 0);
    for _ in 0..20 {
        let p = random_poly(&f, &mut rng, 4, 3);
        assert_eq!(HomogPoly::parse_text(&f, 4, &p.to_text(), 3).unwrap(), p);
    }
    assert_eq!(num_monomials(5, 2), 15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), d in 0u32..4) {
        let f = Gf::new(7, 2).unwrap();
        let mut rng = stream(seed, 0);
        let p = random_poly(&f, &mut rng, 3, d);
        let q = random_poly(&f, &mut rng, 3, d);
        let r = random_poly(&f, &mut rng, 3, d);
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
    }

    #[test]
    fn division_undoes_multiplication(seed in any::<u64>(), dp in 0u32..4, dq in 0u32..3) {
        let f = Gf::prime(13).unwrap();
        let mut rng = stream(seed, 1);
        let p = random_poly(&f, &mut rng, 3, dp);
        let q = random_poly(&f, &mut rng, 3, dq);
        prop_assume!(!q.is_zero());
        let r = p.mul(&q).exact_divide(&q);
        prop_assert_eq!(r, Some(p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_determinant_matches_evaluation(entries in prop::collection::vec(-5i64..6, 45), t in prop::collection::vec(-9i64..10, 3)) {
        use prym5::field::QQ;
        let mats: Vec<Matrix<prym5::field::Rationals>> = (0..3)
            .map(|k| {
                let e = &entries[k * 15..(k + 1) * 15];
                let mut m = Matrix::zeros(&QQ, 5, 5);
                let mut idx = 0;
                for i in 0..5 {
                    for j in i..5 {
                        m.set(i, j, QQ.from_i64(e[idx]));
                        m.set(j, i, QQ.from_i64(e[idx]));
                        idx += 1;
                    }
                }
                m
            })
            .collect();
        let pm = PolyMatrix::from_pencil(&QQ, &mats);
        let pt: Vec<_> = t.iter().map(|&x| QQ.from_i64(x)).collect();
        prop_assert_eq!(pm.det().eval(&pt), pm.eval(&pt).det());
    }
}
