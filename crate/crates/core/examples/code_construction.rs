//! Splits a small field into four regions, builds the code matrix the fusion
//! center uses and checks the geometric pairing that the analysis relies on.
//!
//! Run with `cargo run --example code_construction`.

use codeloc::coding::{build_code_matrix, fault_tolerance_bits, min_hamming_distance};
use codeloc::geometry::{deploy_grid, split_region, verify_pairing, Rect, RegionOfInterest};
use codeloc::signal::{thresholds_for, PropagationModel};

fn main() -> codeloc::error::Result<()> {
    let field = deploy_grid(4, 4, Rect::square(8.0)?)?;
    let roi = RegionOfInterest::Single(field.roi());
    let partition = split_region(&roi, 4, &field, &field.all_sensors())?;

    for (j, region) in partition.regions().iter().enumerate() {
        println!(
            "region {j}: x [{}, {}) y [{}, {}) sensors {:?}",
            region.x_min,
            region.x_max,
            region.y_min,
            region.y_max,
            partition.members(j)
        );
    }

    let code = build_code_matrix(&partition)?;
    println!("\ncode matrix ({} x {}):", code.m(), code.n_k());
    for (j, row) in code.rows().iter().enumerate() {
        println!("  c{j} = {row}");
    }
    println!(
        "minimum distance {}, correctable faults {}",
        min_hamming_distance(&code),
        fault_tolerance_bits(&code)
    );

    let thresholds = thresholds_for(&partition, &PropagationModel::default(), &field)?;
    println!("\nthresholds: {:.3?}", thresholds.as_slice());
    println!(
        "symmetric pairing holds: {}",
        verify_pairing(&partition, &field, thresholds.as_slice())
    );

    // The second iteration works inside the chosen region only.
    let chosen = 2;
    let inner = split_region(
        &RegionOfInterest::Single(partition.region(chosen)),
        4,
        &field,
        &partition.members(chosen),
    )?;
    let inner_code = build_code_matrix(&inner)?;
    println!(
        "\nafter keeping region {chosen}: {} x {} code",
        inner_code.m(),
        inner_code.n_k()
    );
    for row in inner_code.rows() {
        println!("  {row}");
    }
    Ok(())
}
