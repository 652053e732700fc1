//! Tropes of the quartic component for y^2 = x^6 - 1 over F_7 and the polar cubic map on each.

use prym5::genus2::kummer::{points_on_trope, trope_planes, PolarMap};
use prym5::genus2::{quadric_web, web_discriminant, Embedding, Genus2Curve, Polarization};
use prym5::quintic::{lift_poly, singular_points};
use prym5::{Field, Gf};

fn main() -> prym5::Result<()> {
    let f = Gf::prime(7)?;
    let emb = Embedding::new(Genus2Curve::new(&f, &[6, 0, 0, 0, 0, 0, 1])?, Polarization::ThreeK)?;
    let wd = web_discriminant(&quadric_web(&emb)?, 1 << 20)?;
    let ext = f.extension(2)?;
    let nodes: Vec<Vec<u64>> = singular_points(&lift_poly(&wd.quartic, &ext)).into_iter().map(|s| s.point).collect();
    println!("quartic {} has {} nodes over {}", wd.quartic.body_text(), nodes.len(), ext.tag());

    for t in trope_planes(&wd.quartic, 1 << 20)? {
        let pm = PolarMap::new(&wd.quartic, &t)?;
        let on = points_on_trope(&t, &ext, &nodes).len();
        println!("plane {:?}: conic {}, {on} nodes, polar rank {}", t.plane, t.conic.body_text(), pm.rank());
    }
    Ok(())
}
