use rand::Rng;

use prym5::bivar::squarefree_test;
use prym5::genus2::divisor::hasse_weil_window;
use prym5::net::*;
use prym5::proj::{same_point, ProjSpace};
use prym5::quadrics::{matrix_of_quadric, parse_finite_fixture, SymNet};
use prym5::quintic::{analyze, singular_points, SplitVerdict};
use prym5::rng::stream;
use prym5::{Field, Gf, HomogPoly, Matrix};

const BUDGET: u64 = 1 << 24;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn preserves(net: &SymNet<Gf>, sigma: &Matrix<Gf>) -> bool {
    net.coefficient_matrices().iter().all(|m| sigma.transpose().mul(m).mul(sigma) == *m)
}

#[test]
fn identity_change_keeps_blocks_apart() {
    let f = Gf::prime(11).unwrap();
    let bn = make_block_net(random_block_pair(&f, &mut stream(1, 0), true)).unwrap();
    for m in bn.net.coefficient_matrices() {
        for i in 0..2 {
            for j in 2..5 {
                assert_eq!(*m.get(i, j), 0);
                assert_eq!(*m.get(j, i), 0);
            }
        }
    }
}

#[test]
fn discriminant_is_scaled_block_product() {
    let f = Gf::prime(11).unwrap();
    for seed in 0..20 {
        let bn = make_block_net(random_block_pair(&f, &mut stream(seed, 0), false)).unwrap();
        let gamma = discriminant_quintic(&bn.net);
        let gamma = gamma.quintic().unwrap();
        let lam = f.pow(&bn.pair.g.det(), 2);
        assert_eq!(*gamma, bn.pair.conic().mul(&bn.pair.cubic()).scale(&lam));
        assert!(gamma.exact_divide(&bn.pair.conic()).is_some());
    }
}

#[test]
fn singular_change_of_basis_is_rejected() {
    let f = Gf::prime(7).unwrap();
    let mut pair = random_block_pair(&f, &mut stream(2, 0), true);
    pair.g = Matrix::diagonal(&f, &[1, 1, 1, 1, 0]);
    assert!(make_block_net(pair).is_err());
}

#[test]
fn golden_block_net_matches_seeded_generation() {
    let f = Gf::prime(11).unwrap();
    let golden = parse_finite_fixture(&fixture("net_block_f11.txt"), 3).unwrap();
    let (bn, _) = admissible_block_net(&f, &mut stream(42, 0), BUDGET).unwrap();
    assert_eq!(golden, bn.net);
    let gamma = discriminant_quintic(&golden);
    let gamma = gamma.quintic().unwrap();
    assert!(gamma.len() <= 21);
    let mut rng = stream(42, 9);
    for _ in 0..50 {
        let t: Vec<u64> = (0..3).map(|_| rng.gen_range(0..11)).collect();
        assert_eq!(gamma.eval(&t), golden.at(&t).det());
    }
}

#[test]
fn golden_random_net_matches_seeded_generation() {
    let f = Gf::prime(7).unwrap();
    let golden = parse_finite_fixture(&fixture("net_random_f7.txt"), 3).unwrap();
    assert_eq!(golden, random_net(&f, &mut stream(7, 0)));
    assert!(!golden.determinant().is_zero());
}

#[test]
fn random_discriminants_are_mostly_squarefree() {
    let f = Gf::prime(7).unwrap();
    let squarefree = (0..100u64)
        .filter(|&s| {
            let net = random_net(&f, &mut stream(s, 0));
            discriminant_quintic(&net).quintic().is_some_and(squarefree_test)
        })
        .count();
    println!("squarefree random discriminants over GF(7): {squarefree}/100");
    assert!(squarefree >= 90);
}

#[test]
fn dependent_coefficient_matrices_are_rejected() {
    let f = Gf::prime(7).unwrap();
    let a = Matrix::diagonal(&f, &[1, 2, 3, 4, 5]);
    let b = Matrix::diagonal(&f, &[1, 0, 0, 0, 1]);
    assert!(SymNet::net(&f, vec![a.clone(), b.clone(), a.add(&b)]).is_err());
}

#[test]
fn zero_block_is_trigonal() {
    let f = Gf::prime(7).unwrap();
    let mut rng = stream(4, 0);
    let mats: Vec<Matrix<Gf>> = (0..3)
        .map(|_| {
            let mut m = Matrix::zeros(&f, 5, 5);
            for i in 0..5 {
                for j in i..5 {
                    if i >= 3 || j >= 3 {
                        let v = rng.gen_range(0..7);
                        m.set(i, j, v);
                        m.set(j, i, v);
                    }
                }
            }
            m
        })
        .collect();
    let net = SymNet::net(&f, mats).unwrap();
    assert_eq!(discriminant_quintic(&net), Discriminant::Trigonal);
    assert!(!rank_profile(&net).counts.contains_key(&5));
    // enumeration still runs on the degenerate net
    let pts = net.base_locus(BUDGET).unwrap();
    assert!(!net.smoothness_check(&pts));
}

#[test]
fn base_locus_respects_weil_bound() {
    let f = Gf::prime(7).unwrap();
    for seed in 0..5 {
        let (bn, _) = admissible_block_net(&f, &mut stream(seed, 0), BUDGET).unwrap();
        let n = bn.net.base_locus(BUDGET).unwrap().len() as f64;
        let (lo, hi) = hasse_weil_window(7, 5);
        assert!(lo <= n && n <= hi, "{n} outside [{lo}, {hi}]");
    }
}

#[test]
fn forced_common_point_is_found() {
    let f = Gf::prime(7).unwrap();
    let mut rng = stream(5, 0);
    let mats: Vec<Matrix<Gf>> = (0..3)
        .map(|_| {
            let mut m = Matrix::zeros(&f, 5, 5);
            for i in 0..5 {
                for j in i..5 {
                    let v = if (i, j) == (0, 0) { 0 } else { rng.gen_range(0..7) };
                    m.set(i, j, v);
                    m.set(j, i, v);
                }
            }
            m
        })
        .collect();
    let net = SymNet::net(&f, mats).unwrap();
    assert!(net.base_locus(BUDGET).unwrap().contains(&vec![1, 0, 0, 0, 0]));
}

#[test]
fn rank_two_member_through_base_point_is_singular() {
    let f = Gf::prime(7).unwrap();
    let net = parse_finite_fixture(&fixture("net_singular_f7.txt"), 3).unwrap();
    let q = |s: &str| matrix_of_quadric(&HomogPoly::parse_body(&f, 5, s, 0).unwrap()).unwrap();
    assert_eq!(q("x3*x4").rank(), 2);
    let expect = SymNet::net(&f, vec![
        q("x0*x1 + x2^2 + 2*x3^2 + 3*x4^2"),
        q("x0*x2 + x1^2 + x3*x4 + 5*x4^2"),
        q("x3*x4"),
    ])
    .unwrap();
    assert_eq!(net, expect);
    let pts = net.base_locus(BUDGET).unwrap();
    assert!(!net.smoothness_check(&pts));
    assert!(net.singular_base_points(&pts).contains(&vec![1, 0, 0, 0, 0]));
    assert!(net.smoothness_check(&[]));
}

#[test]
fn smooth_block_nets_pass_smoothness() {
    let f = Gf::prime(11).unwrap();
    let (bn, _) = admissible_block_net(&f, &mut stream(6, 0), BUDGET).unwrap();
    let pts = bn.net.base_locus(BUDGET).unwrap();
    assert!(bn.net.smoothness_check(&pts));
    assert!(hilbert_signature(&bn.net).unwrap());
}

#[test]
fn recovered_involution_is_conjugate_to_the_witness() {
    let f = Gf::prime(11).unwrap();
    let diag = Matrix::diagonal(&f, &[10, 10, 1, 1, 1]);
    for seed in 0..10 {
        let (bn, _) = admissible_block_net(&f, &mut stream(seed, 0), BUDGET).unwrap();
        let inv = recover_free_involution(&bn.net, 2).unwrap().unwrap();
        let s = &inv.sigma;
        assert_eq!(s.mul(s), Matrix::identity(&f, 5));
        assert_eq!(inv.signature, (2, 3));
        assert!(preserves(&bn.net, s));
        if inv.commutant_dim == 2 {
            let g = &bn.pair.g;
            assert_eq!(g.mul(s).mul(&g.inverse().unwrap()), diag);
        }
        for cand in involution_candidates(&bn.net).unwrap() {
            assert!(preserves(&bn.net, &cand.sigma));
        }
    }
}

#[test]
fn irreducible_discriminant_has_no_involution() {
    let f = Gf::prime(7).unwrap();
    let mut checked = 0;
    for seed in 0..20u64 {
        let net = random_net(&f, &mut stream(seed, 0));
        let gamma = discriminant_quintic(&net);
        let a = analyze(gamma.quintic().unwrap(), BUDGET).unwrap();
        let absent = matches!(a.split_base_field, SplitVerdict::Absent { .. })
            && matches!(a.split_quadratic_ext, SplitVerdict::Absent { .. });
        if absent {
            assert!(recover_involution(&net).unwrap().is_none());
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn fixed_point_check_agrees_with_brute_force() {
    let f = Gf::prime(11).unwrap();
    for seed in 0..5 {
        let (bn, _) = admissible_block_net(&f, &mut stream(seed, 0), BUDGET).unwrap();
        let sigma = bn.pair.witness_involution();
        let rep = fixed_point_check(&bn.net, &sigma, 2).unwrap();
        let pts = bn.net.base_locus(BUDGET).unwrap();
        let brute = fixed_points_brute_force(&bn.net, &sigma, &pts);
        assert_eq!(rep.fixed_points[&1], brute.len());
        assert!(rep.free && brute.is_empty());
        // direct projective test on every base point
        assert!(pts.iter().all(|p| !same_point(&f, &sigma.mul_vec(p), p)));
    }
}

#[test]
fn common_conic_point_is_a_fixed_point() {
    let f = Gf::prime(11).unwrap();
    let mut pair = random_block_pair(&f, &mut stream(9, 0), true);
    for b in pair.b.iter_mut() {
        b.set(2, 2, 0);
    }
    let bn = make_block_net(pair).unwrap();
    let sigma = bn.pair.witness_involution();
    let rep = fixed_point_check(&bn.net, &sigma, 1).unwrap();
    assert!(!rep.free);
    assert!(!rep.plus_plane_empty);
    let pts = bn.net.base_locus(BUDGET).unwrap();
    let fixed = fixed_points_brute_force(&bn.net, &sigma, &pts);
    assert!(!fixed.is_empty());
    // fixed points sit in the (+1)-eigenspace: the first two coordinates vanish
    assert!(fixed.iter().all(|p| p[0] == 0 && p[1] == 0));
}

#[test]
fn rank_three_members_are_singular_points_of_the_discriminant() {
    let mut compared = 0;
    for (p, seeds) in [(7u64, 0..6u64), (11, 0..3)] {
        let f = Gf::prime(p).unwrap();
        for seed in seeds {
            let nets = [
                random_net(&f, &mut stream(seed, 0)),
                admissible_block_net(&f, &mut stream(seed, 0), BUDGET).unwrap().0.net,
            ];
            for net in nets {
                // a rank-4 member whose vertex is a singular base point is also a singular point of the discriminant
                if !net.smoothness_check(&net.base_locus(BUDGET).unwrap()) {
                    continue;
                }
                compared += 1;
                let census = rank_profile(&net);
                let gamma = discriminant_quintic(&net);
                let gamma = gamma.quintic().unwrap();
                let mut sing: Vec<Vec<u64>> = singular_points(gamma).into_iter().map(|s| s.point).collect();
                sing.sort();
                let mut low = census.points_with_rank_at_most(3);
                low.sort();
                assert_eq!(low, sing);
                let mut zeros: Vec<Vec<u64>> = ProjSpace::new(f, 2).iter().filter(|t| gamma.eval(t) == 0).collect();
                zeros.sort();
                let mut le4 = census.points_with_rank_at_most(4);
                le4.sort();
                assert_eq!(le4, zeros);
            }
        }
    }
    assert!(compared >= 12);
}

#[test]
fn block_conic_points_are_singular_members() {
    let f = Gf::prime(11).unwrap();
    let (bn, _) = admissible_block_net(&f, &mut stream(8, 0), BUDGET).unwrap();
    let conic = bn.pair.conic();
    for t in ProjSpace::new(f, 2).iter().filter(|t| conic.eval(t) == 0) {
        assert!(bn.net.at(&t).rank() <= 4);
    }
}

#[test]
fn kernel_scan_finds_the_same_singular_points_as_the_jacobian() {
    let f = Gf::prime(7).unwrap();
    let ext = f.extension(2).unwrap();
    let singular = parse_finite_fixture(&fixture("net_singular_f7.txt"), 3).unwrap();
    let mut nets = vec![singular];
    nets.extend((0..6).map(|seed| random_net(&f, &mut stream(seed, 0))));
    let mut seen_singular = 0;
    for net in nets {
        for fam in [net.clone(), net.lift(&ext).unwrap()] {
            let pts = fam.base_locus(BUDGET).unwrap();
            let mut jac = fam.singular_base_points(&pts);
            jac.sort();
            assert_eq!(fam.kernel_singular_points(BUDGET).unwrap(), jac);
            seen_singular += usize::from(!jac.is_empty());
        }
    }
    assert!(seen_singular >= 2);
}
