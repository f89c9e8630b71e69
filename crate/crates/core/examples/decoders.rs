//! The three fusion-center decoders on hand-made words, including ties.

use codeloc::bits::BitWord;
use codeloc::channel::ReliabilityVector;
use codeloc::coding::CodeMatrix;
use codeloc::decoding::{exclusion_decode, hamming_decode, soft_decode};
use codeloc::rng::seeded;

fn main() -> codeloc::error::Result<()> {
    let code = CodeMatrix::from_membership(4, &[0, 0, 1, 1, 2, 2, 3, 3])?;
    let mut rng = seeded(2);
    for word in ["11000000", "10100000", "11110000", "00000000"] {
        let u = BitWord::parse(word).expect("binary literal");
        let single = hamming_decode(&u, &code, &mut rng)?;
        let pair = exclusion_decode(&u, &code, &mut rng)?;
        println!(
            "u={word} distances {:?}: hamming {:?} (ties {}), exclusion {:?} (ties {})",
            single.distances, single.chosen, single.tie_count, pair.chosen, pair.tie_count
        );
    }

    // Confident 0s everywhere except a weak 1 in region 3.
    let psi = ReliabilityVector(vec![2.0, 1.5, 3.0, 2.5, 1.0, 2.0, -0.3, -0.2]);
    let out = soft_decode(&psi, &code, &mut rng, false)?;
    println!("\nsoft decoding, F-distances {:.2?} -> {:?}", out.distances, out.chosen);
    let out = soft_decode(&psi, &code, &mut rng, true)?;
    println!("soft exclusion -> {:?}", out.chosen);
    Ok(())
}
