//! The exact coefficient field: rational functions in q over the Gaussian
//! rationals, q-integers, q-factorials, and the q-Gamma cutoffs.
//!
//! ```bash
//! cargo run -p qweyl --example q_arithmetic
//! ```

use qweyl::scalar::{inv_gamma_q, qfactorial, qnum, QScalar};

fn main() {
    // q-integers expand to symmetric Laurent polynomials.
    for n in [0i64, 1, 2, 3, 5, -3] {
        println!("[{n}]_q = {}", qnum(n));
    }

    // q-factorials and the inverse Gamma cutoffs that truncate the
    // plane-wave sums.
    println!("\n[3]_q! = {}", qfactorial(3).unwrap());
    println!("1/Gamma_q(3) = {}", inv_gamma_q(3));
    println!("1/Gamma_q(0) = {} (vanishes for p <= 0)", inv_gamma_q(0));

    // Exact rational-function arithmetic with automatic cancellation.
    let lambda = QScalar::lambda();
    let ratio = &(&QScalar::q_pow(3) - &QScalar::q_pow(-3)) / &lambda;
    println!("\n(q^3 - q^-3)/(q - q^-1) = {ratio}");
    assert_eq!(ratio, qnum(3));

    // The bar conjugation inverts q, so lambda is antisymmetric.
    println!("conj(lambda) = {}", lambda.conj());

    // Exact classical limits: substitute q = 1.
    println!("\n[7]_q at q=1 = {}", qnum(7).eval_q1().unwrap());
    let pole = QScalar::one() / (QScalar::q_pow(1) - QScalar::one());
    println!("1/(q-1) at q=1 -> {:?}", pole.eval_q1().unwrap_err());

    // Symbolic exponent units model powers like q^B.
    let b = QScalar::unit_pow(1, 1);
    let phase = &QScalar::q_pow(2) * &b.pow(3);
    println!("\nq^2 (q^B)^3 = {phase}");
}
