//! One target localized by the basic and the exclusion scheme, with the
//! decision made at every iteration.

use codeloc::channel::AttackModel;
use codeloc::geometry::{deploy_grid, Position, Rect};
use codeloc::localization::{run_trial, Scheme, SchemeConfig};
use codeloc::rng::seeded;

fn main() -> codeloc::error::Result<()> {
    let field = deploy_grid(16, 32, Rect::square(8.0)?)?;
    let target = Position::new(5.3, 2.2);
    for (scheme, k_stop) in [(Scheme::Basic, 2), (Scheme::Exclusion, 4)] {
        let config = SchemeConfig {
            scheme,
            k_stop,
            attack: AttackModel::new(0.125, 1.0)?,
            ..SchemeConfig::default()
        };
        let est = run_trial(&field, &config, target, &mut seeded(21))?;
        println!("{scheme:?} scheme, target ({}, {})", target.x, target.y);
        for r in &est.trace {
            println!(
                "  k={} active={:>3} decision={:?} true region={:?} correct={}",
                r.k, r.active_count, r.decision, r.true_region, r.correct
            );
        }
        println!(
            "  estimate ({:.3}, {:.3}), squared error {:.4}\n",
            est.theta_hat.x,
            est.theta_hat.y,
            est.theta_hat.distance(&target).powi(2)
        );
    }
    Ok(())
}
