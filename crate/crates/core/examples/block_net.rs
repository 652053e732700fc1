//! Generate a block-diagonal net of quadrics over F_11, then read its involution back off
//! the discriminant.

use prym5::net::{admissible_block_net, discriminant_quintic, fixed_point_check, recover_involution};
use prym5::quintic::conic_cubic_split;
use prym5::{rng, Gf};

fn main() -> prym5::Result<()> {
    let f = Gf::prime(11)?;
    let (bn, rejected) = admissible_block_net(&f, &mut rng::stream(42, 0), 1 << 24)?;
    println!("admissible net after {rejected} rejected draws:\n{}", bn.net.to_fixture_text());

    let gamma = discriminant_quintic(&bn.net);
    let quintic = gamma.quintic().expect("block nets are not trigonal");
    println!("discriminant: {}", quintic.body_text());
    if let Some((conic, cubic)) = conic_cubic_split(quintic, 1 << 24)? {
        println!("  conic {}\n  cubic {}", conic.body_text(), cubic.body_text());
    }

    let inv = recover_involution(&bn.net)?.expect("split discriminant gives an involution");
    println!("involution with eigenspace dimensions {:?}", inv.signature);
    let fixed = fixed_point_check(&bn.net, &inv.sigma, 2)?;
    println!("fixed points over F_q, F_q^2: {:?}; free: {}", fixed.fixed_points, fixed.free);
    Ok(())
}
