//! The q-plane-wave components: construction, normalization, phases, and
//! the classical limit (k.x)^s.
//!
//! ```bash
//! cargo run -p qweyl --example plane_wave
//! ```

use qweyl::planewave::{
    beta, beta_inverse_sum, classical_kx_power, exp_q, hhat, ExpConst, PhasePoly, PlaneWaveSpec,
    UNIT_B,
};

fn main() {
    // The normalization beta_s and its defining sum.
    for s in 0..=3u32 {
        let b = beta(s);
        assert!((&b * &beta_inverse_sum(s)).is_one());
        println!("beta_{s} = {b}");
    }

    // h_0 = 1; h_1 is the deformed pairing of momenta and coordinates.
    println!("\nh_0 = {}", hhat(&PlaneWaveSpec::plain(0)).unwrap());
    println!("h_1 = {}", hhat(&PlaneWaveSpec::plain(1)).unwrap());

    // At q = 1 every component collapses to (k.x)^s with
    // k.x = (k+ x- + k- x+ - kv vb - kvb v)/2, whatever the phase.
    let h2 = hhat(&PlaneWaveSpec::plain(2)).unwrap();
    assert_eq!(h2.eval_q1().unwrap(), classical_kx_power(2));
    println!("\nh_2 at q=1 = {}", h2.eval_q1().unwrap());

    let phased = hhat(&PlaneWaveSpec::new(
        2,
        PhasePoly::Plus {
            r: vec![0, 1],
            b: ExpConst::int(-7),
        },
    ))
    .unwrap();
    assert_eq!(phased.eval_q1().unwrap(), classical_kx_power(2));
    println!("phase choices vanish in the classical limit");

    // A symbolic q^B phase stays symbolic in the coefficients.
    let symbolic = hhat(&PlaneWaveSpec::new(
        1,
        PhasePoly::Plus {
            r: vec![],
            b: ExpConst::symbolic(UNIT_B),
        },
    ))
    .unwrap();
    println!("\nh_1 with P = B*b: {symbolic}");

    // Truncated series [h_s / [s]_q!].
    let series = exp_q(|_| PhasePoly::Zero, 3).unwrap();
    println!("\ntruncated wave components: {} entries", series.len());
    for (s, c) in series.iter().enumerate() {
        println!("  s = {s}: {} terms", c.term_count());
    }
}
