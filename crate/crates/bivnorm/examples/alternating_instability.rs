//! Why the classic alternating series is kept only as a foil.
//!
//! The textbook expansion of T(h, a) alternates in sign with terms carrying
//! a^(2k+1), so it is fine for small |a|, crawls as |a| approaches 1, and
//! for |a| > 1 its terms grow astronomically before the gamma damping can
//! win; the cancellation destroys every significant digit long before then.
//! The recursion this crate uses has none of those regimes: same-sign
//! terms, geometric decay, slope transformed below 1 up front.
//!
//! Run with: cargo run --example alternating_instability

use bivnorm::{owen_t, owen_t_alternating, SeriesVariant};

fn main() {
    println!("{:>5} {:>6}  {:>14}  {:>10}  {:>14}", "h", "a", "alternating", "terms", "recursion");
    for (h, a) in [(0.5, 0.25), (2.0, 0.5), (3.0, 0.7), (0.125, 0.999)] {
        let rec = owen_t(h, a, SeriesVariant::AtanExtYes, -1.0).unwrap();
        match owen_t_alternating(h, a, 50_000) {
            Ok(alt) => println!(
                "{h:>5} {a:>6}  {:>14.11}  {:>10}  {:>14.11}  (recursion: {} iterations)",
                alt.value, alt.terms, rec.value, rec.iterations
            ),
            Err(e) => println!("{h:>5} {a:>6}  failed: {e}"),
        }
    }

    println!("\nSteep slopes, same budget:");
    for (h, a) in [(5.0, 4.0), (10.0, 7.0)] {
        let rec = owen_t(h, a, SeriesVariant::AtanExtYes, -1.0).unwrap();
        match owen_t_alternating(h, a, 50_000) {
            Ok(alt) => println!("  T({h}, {a}): unexpectedly converged to {}", alt.value),
            Err(e) => println!(
                "  T({h}, {a}): alternating {e}; recursion got {:.17} in {} iterations",
                rec.value, rec.iterations
            ),
        }
    }
}
