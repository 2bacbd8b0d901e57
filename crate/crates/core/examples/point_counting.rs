//! Two point-counting oracles side by side, with the Hasse interval.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdlab::models::{ec_point_count, ec_point_count_naive, random_curve, random_general_curve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [3, 5, 7, 11, 97] {
        let c = random_curve(p, &mut rng)?;
        let fast = ec_point_count(&c)?;
        let naive = ec_point_count_naive(&c)?;
        let width = 2.0 * (p as f64).sqrt();
        println!(
            "y^2 = x^3 + {}x + {} over F_{p}: {} points (naive {}), trace {} in [-{width:.2}, {width:.2}]",
            c.a4(), c.a6(), fast.n, naive.n, fast.trace
        );
    }
    let (coeffs, c) = random_general_curve(2, &mut rng)?;
    println!("general form {coeffs:?} over F_2: {} points, trace {}", c.n, c.trace);
    Ok(())
}
