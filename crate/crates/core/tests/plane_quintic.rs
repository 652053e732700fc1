use rand::Rng;

use prym5::bivar::squarefree_test;
use prym5::net::{admissible_block_net, discriminant_quintic};
use prym5::poly::{monomial_index, monomials};
use prym5::proj::{normalized, ProjSpace};
use prym5::quadrics::parse_finite_fixture;
use prym5::quintic::*;
use prym5::rng::stream;
use prym5::{Gf, HomogPoly};

const BUDGET: u64 = 1 << 24;

fn parse(f: &Gf, s: &str) -> HomogPoly<Gf> {
    HomogPoly::parse_body(f, 3, s, 0).unwrap()
}

fn points(sing: &[SingularPoint]) -> Vec<Vec<u64>> {
    let mut v: Vec<Vec<u64>> = sing.iter().map(|s| s.point.clone()).collect();
    v.sort();
    v
}

fn common_zeros(f: &Gf, a: &HomogPoly<Gf>, b: &HomogPoly<Gf>) -> Vec<Vec<u64>> {
    let mut v: Vec<Vec<u64>> = ProjSpace::new(*f, 2).iter().filter(|t| a.eval(t) == 0 && b.eval(t) == 0).collect();
    v.sort();
    v
}

fn golden_quintic() -> HomogPoly<Gf> {
    let text = std::fs::read_to_string(format!("{}/fixtures/net_block_f11.txt", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let net = parse_finite_fixture(&text, 3).unwrap();
    discriminant_quintic(&net).quintic().unwrap().clone()
}

#[test]
fn smooth_conic_has_no_singular_points() {
    let f = Gf::prime(7).unwrap();
    assert!(singular_points(&parse(&f, "x0^2 + x1^2 + x2^2")).is_empty());
}

#[test]
fn transverse_conic_times_cubic_has_nodes_at_the_intersection() {
    let f = Gf::prime(11).unwrap();
    let conic = parse(&f, "x0^2 + x1*x2");
    let cubic = parse(&f, "x0^3 + x1^3 + x2^3");
    let sing = singular_points(&conic.mul(&cubic));
    assert!(!sing.is_empty());
    assert_eq!(points(&sing), common_zeros(&f, &conic, &cubic));
    assert!(sing.iter().all(|s| s.node));
}

#[test]
fn cusp_is_flagged() {
    let f = Gf::prime(13).unwrap();
    let cusp = parse(&f, "x1^2*x2 + 12*x0^3");
    let conic = parse(&f, "x0^2 + x1^2 + 3*x0*x2 + 5*x1*x2 + 2*x2^2");
    assert_ne!(conic.eval(&[0, 0, 1]), 0);
    let sing = singular_points(&cusp.mul(&conic));
    let worse: Vec<_> = sing.iter().filter(|s| !s.node).collect();
    assert_eq!(worse.len(), 1);
    assert_eq!(worse[0].point, vec![0, 0, 1]);
}

#[test]
fn five_lines_are_all_found() {
    let f = Gf::prime(7).unwrap();
    let lines: Vec<HomogPoly<Gf>> = ["x0", "x1", "x2", "x0 + x1", "x0 + 2*x1 + 3*x2"].iter().map(|s| parse(&f, s)).collect();
    let product = lines.iter().skip(1).fold(lines[0].clone(), |acc, l| acc.mul(l));
    let found = lines_in_curve(&product);
    assert_eq!(found.len(), 5);
    for l in &lines {
        assert!(found.iter().any(|g| g.is_proportional(l)));
    }
}

#[test]
fn six_line_factors_are_all_reported() {
    let f = Gf::prime(7).unwrap();
    let lines: Vec<HomogPoly<Gf>> =
        ["x0", "x1", "x2", "x0 + x1", "x1 + x2", "x0 + x2"].iter().map(|s| parse(&f, s)).collect();
    let product = lines.iter().skip(1).fold(lines[0].clone(), |acc, l| acc.mul(l));
    assert_eq!(lines_in_curve(&product).len(), 6);
}

#[test]
fn generic_block_discriminant_has_no_lines() {
    assert!(lines_in_curve(&golden_quintic()).is_empty());
}

#[test]
fn single_line_factor_is_found() {
    let f = Gf::prime(7).unwrap();
    let quartic = parse(&f, "x0^4 + x1^4 + 3*x2^4 + x0*x1*x2^2");
    let line = parse(&f, "x0 + 3*x1 + 5*x2");
    let found = lines_in_curve(&line.mul(&quartic));
    assert_eq!(found.len(), 1);
    assert!(found[0].is_proportional(&line));
}

#[test]
fn block_discriminant_splits_along_the_small_block() {
    let f = Gf::prime(11).unwrap();
    for seed in 0..5 {
        let (bn, _) = admissible_block_net(&f, &mut stream(seed, 0), BUDGET).unwrap();
        let gamma = discriminant_quintic(&bn.net);
        let gamma = gamma.quintic().unwrap();
        let (conic, cubic) = conic_cubic_split(gamma, BUDGET).unwrap().unwrap();
        assert!(conic.is_proportional(&bn.pair.conic()));
        assert!(conic.mul(&cubic).is_proportional(gamma));
    }
}

#[test]
fn concurrent_lines_return_the_first_conic_in_scan_order() {
    let f = Gf::prime(5).unwrap();
    let lines: Vec<HomogPoly<Gf>> = ["x0", "x1", "x0 + x1", "x0 + 2*x1", "x0 + 3*x1"].iter().map(|s| parse(&f, s)).collect();
    let product = lines.iter().skip(1).fold(lines[0].clone(), |acc, l| acc.mul(l));
    let basis = monomials(3, 2);
    let index = monomial_index(&basis);
    let sp = ProjSpace::new(f, 5);
    let mut best: Option<(u64, Vec<u64>)> = None;
    for i in 0..5 {
        for j in i + 1..5 {
            let v = normalized(&f, &lines[i].mul(&lines[j]).to_dense(&index, 6)).unwrap();
            let idx = sp.index_of(&v);
            if best.as_ref().is_none_or(|(b, _)| idx < *b) {
                best = Some((idx, v));
            }
        }
    }
    let (conic, cubic) = conic_cubic_split(&product, BUDGET).unwrap().unwrap();
    assert_eq!(normalized(&f, &conic.to_dense(&index, 6)).unwrap(), best.unwrap().1);
    assert!(conic.mul(&cubic).is_proportional(&product));
}

#[test]
fn random_quintics_do_not_split() {
    let f = Gf::prime(7).unwrap();
    let mut rng = stream(17, 0);
    let basis = monomials(3, 5);
    for _ in 0..5 {
        let coeffs: Vec<u64> = basis.iter().map(|_| rng.gen_range(0..7)).collect();
        let p = HomogPoly::from_dense(&f, 3, 5, &basis, &coeffs);
        let rep = analyze(&p, BUDGET).unwrap();
        assert!(matches!(rep.split_base_field, SplitVerdict::Absent { .. }));
        assert!(matches!(rep.split_quadratic_ext, SplitVerdict::Absent { .. }));
    }
}

#[test]
fn constructed_products_always_split() {
    let f = Gf::prime(7).unwrap();
    let mut rng = stream(18, 0);
    let b2 = monomials(3, 2);
    let b3 = monomials(3, 3);
    for _ in 0..20 {
        let q = HomogPoly::from_dense(&f, 3, 2, &b2, &b2.iter().map(|_| rng.gen_range(0..7)).collect::<Vec<_>>());
        let r = HomogPoly::from_dense(&f, 3, 3, &b3, &b3.iter().map(|_| rng.gen_range(0..7)).collect::<Vec<_>>());
        if q.is_zero() || r.is_zero() {
            continue;
        }
        let gamma = q.mul(&r);
        let (c, k) = conic_cubic_split(&gamma, BUDGET).unwrap().unwrap();
        assert!(c.mul(&k).is_proportional(&gamma));
        assert!(gamma.exact_divide(&c).is_some());
        // common zeros of the factors are singular points of the product
        let sing = points(&singular_points(&gamma));
        for z in common_zeros(&f, &q, &r) {
            assert!(sing.contains(&z));
        }
    }
}

#[test]
fn rational_split_with_supplied_conic() {
    use prym5::field::QQ;
    let conic = HomogPoly::parse_body(&QQ, 3, "x0^2 + x1*x2 + 3*x2^2", 0).unwrap();
    let cubic = HomogPoly::parse_body(&QQ, 3, "x0^3 + 1/2*x1^3 + 7*x0*x1*x2", 0).unwrap();
    assert_eq!(split_with_candidate(&conic.mul(&cubic), &conic), Some(cubic));
}

#[test]
fn golden_discriminant_analysis() {
    let gamma = golden_quintic();
    let rep = analyze(&gamma, BUDGET).unwrap();
    assert_eq!(rep.degree, 5);
    assert!(rep.squarefree && squarefree_test(&gamma));
    assert!(matches!(rep.split_base_field, SplitVerdict::Found { .. }));
    assert!(rep.singular_points.iter().all(|s| s.node));
}
