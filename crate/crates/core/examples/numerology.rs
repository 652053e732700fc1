use prym5::numerology::{castelnuovo_bound, integer_roots, ruled_numerology, segre_genus, segre_quadratic};

fn main() {
    let (a, b, c) = segre_quadratic(8, 3, 0, 5);
    println!("{a} k^2 + {b} k + {c}: integer roots {:?}", integer_roots(a, b, c));
    println!("genus from k = 3: {}", segre_genus(3, 8, 3, 0) / 2 + 1);
    for (n, p) in [(6, 2), (6, 3)] {
        println!("n = {n}, p = {p}: {:?}", ruled_numerology(n, p));
    }
    for n in 4..=7 {
        println!("Castelnuovo bound for degree {n}: {}", castelnuovo_bound(n));
    }
}
