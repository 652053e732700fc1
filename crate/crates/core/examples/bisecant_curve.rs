//! Bisecant lines of a 3K genus-2 curve lying on a smooth web member, and the residual
//! involution on them.

use prym5::genus2::divisor::{admissible_quadric, bisecant_curve, residual_involution};
use prym5::genus2::{quadric_web, Embedding, Genus2Curve, Polarization};
use prym5::proj::ProjSpace;
use prym5::{Field, Gf};

fn main() -> prym5::Result<()> {
    let f = Gf::prime(11)?;
    let emb = Embedding::new(Genus2Curve::new(&f, &[1, 2, 3, 0, 1, 0, 1])?, Polarization::ThreeK)?;
    let web = quadric_web(&emb)?;
    let mut member = None;
    for t in ProjSpace::new(f, 3).iter() {
        if admissible_quadric(&emb, &web, &t)?.admissible {
            member = Some(t);
            break;
        }
    }
    let t = member.expect("some member avoids the special lines");
    println!("web member {t:?}");

    let ext = emb.sample_field();
    let pairs = bisecant_curve(&emb, &web.at(&t), &ext)?;
    println!("{} bisecants defined over {}", pairs.len(), f.tag());
    for xi in pairs.iter().filter(|x| !x.is_diagonal()).take(5) {
        let image = residual_involution(&emb, &ext, xi)?;
        println!("  {:?} + {:?}  ->  {:?} + {:?}", xi.first, xi.second, image.first, image.second);
    }
    Ok(())
}
