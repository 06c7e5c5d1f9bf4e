//! Certified truncation bounds sandwiching the true series error.
//!
//! After n + 1 terms of either series the remainder is provably below a
//! closed-form cap built from double factorial ratios, and the running
//! error term the recursion tracks equals that cap exactly.  This example
//! sums the series term by term and prints the true remaining error next
//! to the certificate; the certificate never dips below the truth.
//!
//! Run with: cargo run --example truncation_bounds

use bivnorm::owent::{series_partial_sums, OwenParams};
use bivnorm::{owen_t, truncation_bound, SeriesVariant};

fn main() {
    let (h, r) = (0.5, 0.8);
    let variant = SeriesVariant::AtanExtNo;
    let exact = owen_t(h, r, variant, -1.0).unwrap().value;
    let params = OwenParams::new(h, r).unwrap();
    let sums = series_partial_sums(&params, variant, 12);

    println!("T({h}, {r}), variant {}:", variant.label());
    println!("{:>3}  {:>13}  {:>13}", "n", "true error", "certificate");
    for (n, partial) in sums.iter().enumerate() {
        let true_err = (exact - partial).abs();
        let cert = truncation_bound(n as i64, &params, variant).unwrap().value;
        let ok = if cert >= true_err { "" } else { "  VIOLATED" };
        println!("{n:>3}  {true_err:>13.6e}  {cert:>13.6e}{ok}");
    }

    // The a priori n = -1 bound caps the whole sum before any term is
    // taken; it also bounds |T| itself.
    let apriori = truncation_bound(-1, &params, variant).unwrap().value;
    println!("\na priori cap (n = -1): {apriori:.6e}, |T| = {:.6e}", exact.abs());

    // The gap between variants: the damped certificate shrinks by the
    // factor (1 - e^(-q))^(n+2).
    println!("\nSame point, variant {}:", SeriesVariant::AtanExtYes.label());
    for n in [0i64, 4, 8] {
        let plain = truncation_bound(n, &params, SeriesVariant::AtanExtNo)
            .unwrap()
            .value;
        let damped = truncation_bound(n, &params, SeriesVariant::AtanExtYes)
            .unwrap()
            .value;
        println!("  n = {n}: plain {plain:.6e}, damped {damped:.6e}");
    }
}
