//! Run the same series at 256 bits of precision.
//!
//! Every recursion in this crate is generic over a scalar trait, so the
//! identical code path that produces binary64 answers also runs on wide
//! floats.  Here the boundary value Phi2(2.1, 0; sqrt(2)/2), which has the
//! elementary closed form Phi(h) (1 - Phi(h)/2), is evaluated at 256 bits
//! and checked against that closed form computed at 512 bits.
//!
//! Run with: cargo run --features highprec --example high_precision

#[cfg(feature = "highprec")]
fn main() {
    use bivnorm::numkernel::{MpFloat, RealScalar};
    use bivnorm::{phi2_h0_with, SeriesVariant};

    let bits = 256u32;
    let proto = MpFloat::with_precision(bits, 0.0);
    let h = MpFloat::from_f64(&proto, 2.1);
    let two = MpFloat::from_f64(&proto, 2.0);
    let rho = two.sqrt() / MpFloat::from_f64(&proto, 2.0);

    let rep = phi2_h0_with(h, rho, SeriesVariant::AtanExtYes, MpFloat::from_f64(&proto, -1.0))
        .unwrap();
    println!("series value at {bits} bits ({} iterations):", rep.iterations);
    println!("  {}", rep.value);

    // Reference from the closed form at double the working precision.
    let wide = MpFloat::with_precision(2 * bits, 0.0);
    let phi = MpFloat::from_f64(&wide, 2.1).norm_cdf();
    let half = MpFloat::from_f64(&wide, 0.5);
    let reference = phi.clone() * (MpFloat::one(&wide) - half * phi);
    println!("closed form at {} bits:", 2 * bits);
    println!("  {}", reference);

    let err = (MpFloat(rep.value.0.clone()) - reference).abs();
    println!("absolute difference: {:.3e}", err.0.to_f64());
    println!("2^-{bits} threshold:  {:.3e}", 2f64.powi(-(bits as i32)));
}

#[cfg(not(feature = "highprec"))]
fn main() {
    println!("This example needs the wide-float backend.");
    println!("Run with: cargo run --features highprec --example high_precision");
}
