//! Two elliptic curves glued at a point: the singular web through them, then the curve linked
//! to a line by the two cones over them.

use prym5::genus2::elliptic::{elliptic_union_web, singular_web_census, MarkedCubic};
use prym5::pipeline::cones_over;
use prym5::spacecurve::{cone_liaison, liaison_sample_field};
use prym5::{Gf, HomogPoly};

fn main() -> prym5::Result<()> {
    let f = Gf::prime(7)?;
    let e1 = MarkedCubic::new(HomogPoly::parse_body(&f, 3, "x1^2*x2 + 6*x0^3 + 6*x0*x2^2 + 6*x2^3", 3)?, vec![0, 1, 0])?;
    let e2 = MarkedCubic::new(HomogPoly::parse_body(&f, 3, "x1^2*x2 + 6*x0^3 + 5*x0*x2^2 + 4*x2^3", 3)?, vec![0, 1, 0])?;

    let cones = cones_over(&e1, &e2)?;
    let eu = elliptic_union_web(e1, e2)?;
    println!("{:?}", singular_web_census(&eu));

    println!("cones: {} and {}", cones.first.body_text(), cones.second.body_text());
    let ext = liaison_sample_field(&cones, 64)?;
    let (_, report) = cone_liaison(&cones, &ext)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    Ok(())
}
