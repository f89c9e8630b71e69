//! Rayleigh fading between sensors and the fusion center: per-bit reliabilities,
//! and soft-decision decoding against sign detection plus Hamming decoding.

use codeloc::channel::{
    hard_demodulate, reliability, reliability_variance, reliability_variance_bound, transmit, FadingChannel,
};
use codeloc::coding::CodeMatrix;
use codeloc::decoding::{hamming_decode, soft_decode, Decision};
use codeloc::rng::seeded;

fn main() -> codeloc::error::Result<()> {
    let channel = FadingChannel::rayleigh(1.0, 3.0, 1.0)?;
    println!("received value -> log-likelihood ratio ln p(v|0)/p(v|1)");
    for v in [-6.0, -2.0, -0.5, 0.0, 0.5, 2.0, 6.0] {
        println!("  {v:>5.1} -> {:>8.4}", channel.llr(v)?);
    }

    let mut rng = seeded(9);
    println!(
        "\nspread of the centred reliability (bound with sensor sigma 3: {:.4})",
        reliability_variance_bound(&channel, 3.0)
    );
    for p_one in [0.0, 0.25, 0.5] {
        println!(
            "  P(bit = 1) = {p_one}: variance {:.4}",
            reliability_variance(&channel, p_one, 50_000, &mut rng)?
        );
    }

    // 4 regions with 16 columns each; region 2 is the true one.
    let membership: Vec<usize> = (0..64).map(|i| i / 16).collect();
    let code = CodeMatrix::from_membership(4, &membership)?;
    let sent = code.row(2).clone();
    let trials = 20_000;
    let (mut soft_ok, mut hard_ok) = (0, 0);
    for _ in 0..trials {
        let v = transmit(&sent, &channel, &mut rng);
        let psi = reliability(&channel, &v)?;
        if soft_decode(&psi, &code, &mut rng, false)?.chosen == Decision::Single(2) {
            soft_ok += 1;
        }
        if hamming_decode(&hard_demodulate(&v), &code, &mut rng)?.chosen == Decision::Single(2) {
            hard_ok += 1;
        }
    }
    println!(
        "\ncorrect decisions over {trials} noisy codewords: soft {:.4}, hard {:.4}",
        soft_ok as f64 / trials as f64,
        hard_ok as f64 / trials as f64
    );
    Ok(())
}
