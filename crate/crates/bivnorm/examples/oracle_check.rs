//! Check the series against slow brute-force quadrature oracles.
//!
//! Two independent referees: adaptive Gauss-Kronrod quadrature of the
//! defining integral for Owen's T, and Plackett's single-integral form for
//! Phi2.  Both are orders of magnitude slower than the series and exist
//! only to catch it lying.
//!
//! Run with: cargo run --example oracle_check

use bivnorm::oracle::{owen_t_quadrature, phi2_plackett_quadrature};
use bivnorm::{owen_t, phi2, Correlation, Phi2Options, SeriesVariant};

fn main() {
    let tol = 1e-13;

    println!("Owen's T, series vs adaptive quadrature:");
    for (h, a) in [(0.5, 0.25), (2.1, 1.0), (0.125, 0.999), (3.0, 12.0)] {
        let series = owen_t(h, a, SeriesVariant::AtanExtYes, -1.0).unwrap().value;
        let quad = owen_t_quadrature(h, a, tol).unwrap();
        println!(
            "  T({h:>5}, {a:>5})  series {series:.16}  quad err est {:.1e}  diff {:.2e}",
            quad.error_estimate,
            (series - quad.value).abs()
        );
    }

    println!("\nPhi2, series vs Plackett quadrature:");
    for (x, y, rho) in [
        (-1.2, 2.3, -0.8),
        (0.5, 0.5, 0.6),
        (1.5, 0.5, 0.9921875),
        (-2.0, -2.0, 0.5),
    ] {
        let series = phi2(x, y, Correlation::new(rho).unwrap(), Phi2Options::default()).unwrap();
        let quad = phi2_plackett_quadrature(x, y, rho, tol).unwrap();
        println!(
            "  Phi2({x:>4}, {y:>4}; {rho:>9})  series {series:.16}  diff {:.2e}",
            (series - quad.value).abs()
        );
    }
}
