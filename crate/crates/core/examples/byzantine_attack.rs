//! Byzantine sensors flipping their decisions, and how far that pushes the
//! received word from the transmitted codeword as the attacker share grows.

use codeloc::analysis::fault_tolerance_fraction;
use codeloc::bits::BitWord;
use codeloc::channel::{apply_byzantine, AttackModel};
use codeloc::coding::build_code_matrix;
use codeloc::decoding::{hamming_decode, Decision};
use codeloc::geometry::{deploy_grid, split_region, Rect, RegionOfInterest};
use codeloc::rng::seeded;

fn main() -> codeloc::error::Result<()> {
    let field = deploy_grid(16, 32, Rect::square(8.0)?)?;
    let partition = split_region(&RegionOfInterest::Single(field.roi()), 4, &field, &field.all_sensors())?;
    let code = build_code_matrix(&partition)?;
    let n = field.len();

    for k in 0..3 {
        println!(
            "iteration {k}: basic code tolerates a Byzantine fraction of {:.4}",
            fault_tolerance_fraction(4, n, k)
        );
    }

    // Every honest sensor reports the codeword of region 1 exactly.
    let sent: BitWord = code.row(1).clone();
    let mut rng = seeded(3);
    println!("\nalpha  attackers  distance to c1  decoded");
    for alpha in [0.0, 0.1, 0.25, 0.4, 0.5, 0.6] {
        let attack = AttackModel::new(alpha, 1.0)?;
        let byz = attack.sample_set(n, &mut rng);
        let received = apply_byzantine(&sent, partition.active(), &byz, &mut rng)?;
        let out = hamming_decode(&received, &code, &mut rng)?;
        let Decision::Single(j) = out.chosen else {
            unreachable!()
        };
        println!(
            "{alpha:>5}  {:>9}  {:>14}  region {j}{}",
            byz.count(),
            received.hamming(&sent),
            if out.tie_count > 1 { " (tie)" } else { "" }
        );
    }
    Ok(())
}
