//! The operator calculus: shift/scale/q-difference generators, the named
//! composites, and their classical limits.
//!
//! ```bash
//! cargo run -p qweyl --example q_operators
//! ```

use qweyl::operators::{lookup, qdal, qi2, DalBasis, OperatorExpr, Var};
use qweyl::repspace::RepElement;
use qweyl::scalar::QScalar;

fn main() {
    // D_+ acts on x+^n as [n]_q x+^(n-1).
    let e = RepElement::monomial([0, 0, 3, 0], [0, 0]);
    println!("D+ (x+^3) = {}", OperatorExpr::dhat(Var::Plus).apply(&e));

    // T_v is the eigenvalue operator q^j on v^j.
    let e = RepElement::monomial([2, 0, 0, 0], [0, 0]);
    println!("Tv (v^2)  = {}", OperatorExpr::t(Var::V).apply(&e));

    // The q-difference operator is literally lambda^-1 M^-1 (T - T^-1).
    let defined = (&OperatorExpr::shift_pow(Var::Plus, -1)
        * &(&OperatorExpr::t(Var::Plus) - &OperatorExpr::t_inv(Var::Plus)))
        .scale(&QScalar::lambda().inv());
    let e = RepElement::monomial([1, 2, 2, 0], [0, 1]);
    assert_eq!(
        OperatorExpr::dhat(Var::Plus).apply(&e),
        defined.apply(&e)
    );
    println!("\nD = lambda^-1 M^-1 (T - T^-1) holds termwise");

    // qI2 is the interesting simple-root operator; at q = 1 it becomes
    // z dv + z zb d+ + zb dvb + d-.
    let e = RepElement::monomial([1, 1, 0, 0], [1, 0]);
    println!("\nqI2 (v x- z)      = {}", qi2().apply(&e));
    println!("qI2 at q=1        = {}", qi2().apply_at_q1(&e).unwrap());

    // Both q-d'Alembert operators collapse to box = d- d+ - dv dvb.
    let e = RepElement::monomial([1, 1, 1, 1], [0, 0]);
    println!("\nqdal-hat (v x- x+ vb)   = {}", qdal(DalBasis::Hat).apply(&e));
    println!(
        "qdal-hat at q=1         = {}",
        qdal(DalBasis::Hat).apply_at_q1(&e).unwrap()
    );
    println!(
        "qdal-tilde at q=1       = {}",
        qdal(DalBasis::Tilde).apply_at_q1(&e).unwrap()
    );

    // Every named operator is addressable by its registry key.
    for name in ["qI1", "qI+(4)", "I-", "box", "qM+(0)"] {
        let op = lookup(name).expect("registered");
        println!("registry {name:8} -> {} summands", op.term_count());
    }
}
