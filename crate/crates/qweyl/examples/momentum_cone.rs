//! The momentum q-cone: reduction to canonical representatives modulo
//! `k- k+ = q^-1 kv kvb`, and the consistency of its two printed
//! presentations.
//!
//! ```bash
//! cargo run -p qweyl --example momentum_cone
//! ```

use qweyl::ncalg::{cone_check_consistency, parse_word, normal_order, Alphabet, NCWord, Strategy};
use qweyl::scalar::QScalar;

fn main() {
    for input in ["k- * k+", "kv * kvb", "k-^2 * k+", "k+ * k-"] {
        let (letters, _) = parse_word(input).unwrap();
        let nf = normal_order(&NCWord::from_letters(letters), Strategy::LeftmostInnermost);
        let reduced = nf.cone_reduce();
        println!(
            "{input:10} = {:28} -> cone: {}",
            nf.display(Alphabet::Momentum),
            reduced.display(Alphabet::Momentum)
        );
    }

    // Idempotence and degree preservation come for free with the canonical
    // form: min(b, c) = 0 in every monomial.
    let (letters, _) = parse_word("k-^3 * k+^2 * kvb").unwrap();
    let nf = normal_order(&NCWord::from_letters(letters), Strategy::LeftmostInnermost);
    let once = nf.cone_reduce();
    assert_eq!(once.cone_reduce(), once);
    println!("\nk-^3 k+^2 kvb -> {}", once.display(Alphabet::Momentum));

    // The two presentations k- k+ - q^-1 kv kvb and k+ k- - q kv kvb
    // agree exactly when the commutator is lambda; anything else leaves a
    // witness.
    let good = cone_check_consistency(&QScalar::lambda());
    println!("\nwith commutator lambda: pass = {}", good.pass);
    let broken = cone_check_consistency(&(&QScalar::from_int(2) * &QScalar::lambda()));
    println!(
        "with commutator 2*lambda: pass = {}, witness = {}",
        broken.pass,
        broken.witness.display(Alphabet::Momentum)
    );
}
