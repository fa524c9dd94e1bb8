//! The classical tensor dictionaries: Weyl components to conjugate quartic
//! polynomials, the stress-tensor primed form, and light-cone variables.
//!
//! ```bash
//! cargo run -p qweyl --example dictionaries
//! ```

use qweyl::scalar::GaussRat;
use qweyl::weylsol::dict::{
    cpm_rank_report, lightcone_map, primed_to_stress, stress_to_primed, weyl_to_cpm,
    StressTensor, WeylComponents,
};

fn main() {
    // Weyl components -> the two conjugate quartics.
    let mut w = WeylComponents::default();
    w.0[1] = GaussRat::one(); // C_1
    let (plus, minus) = weyl_to_cpm(&w);
    println!("C_1 = 1:");
    for (k, c) in plus.coeffs.iter().enumerate() {
        if !c.is_zero() {
            println!("  C+_{k} = {c}");
        }
    }
    for (k, c) in minus.coeffs.iter().enumerate() {
        if !c.is_zero() {
            println!("  C-_{k} = {c}");
        }
    }

    // The combined 10x10 map has full rank even with the asymmetric z^3
    // rows printed as factors 8 and 2.
    let rank = cpm_rank_report();
    println!(
        "\ncombined map rank = {} (z^3 row factors {:?})",
        rank.rank, rank.c3_row_factors
    );

    // Stress dictionary: traceless symmetric tensors round-trip exactly.
    let mut t = StressTensor::default();
    t.entries[4] = GaussRat::from_int(2); // T11
    t.entries[9] = GaussRat::from_int(-1); // T33
    t.entries[3] = GaussRat::from_ratio(1, 2); // T03
    t.entries[0] = &t.entries[4] + &t.entries[9]; // enforce tracelessness (T22 = 0)
    assert!(t.is_traceless());
    let primed = stress_to_primed(&t);
    println!("\nT'22 = {}", primed.get(2, 2));
    println!("T'11 = {}", primed.get(1, 1));
    let back = primed_to_stress(&primed);
    assert_eq!(back, t);
    println!("round trip recovers the traceless tensor exactly");

    // Light-cone change of variables.
    let lc = lightcone_map(&[
        GaussRat::from_int(1),
        GaussRat::from_int(2),
        GaussRat::from_int(3),
        GaussRat::from_int(4),
    ]);
    println!(
        "\n(1,2,3,4) -> x+ = {}, x- = {}, v = {}, vb = {}",
        lc.plus, lc.minus, lc.v, lc.vbar
    );
}
