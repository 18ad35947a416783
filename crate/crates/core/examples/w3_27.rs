//! Times building the W(3,27) line incidence and its streaming rank.

use std::time::Instant;

use polar_rank::field::FieldSpec;
use polar_rank::geometry::SymplecticSpace;
use polar_rank::incidence::build_incidence;
use polar_rank::rank::rank_streaming;

fn main() {
    let t0 = Instant::now();
    let s = SymplecticSpace::new(2, FieldSpec::new(3, 3).unwrap()).unwrap();
    let a = build_incidence(&s, 2).unwrap();
    println!("built {}x{} in {:?}", a.rows(), a.cols(), t0.elapsed());
    let t1 = Instant::now();
    let r = rank_streaming(a.row_data(), a.cols(), 3).unwrap();
    println!("rank {r} in {:?}", t1.elapsed());
}
