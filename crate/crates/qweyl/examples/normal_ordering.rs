//! Normal ordering in the q-Minkowski quartet algebra, the word parser, and
//! the conjugation omega.
//!
//! ```bash
//! cargo run -p qweyl --example normal_ordering
//! ```

use qweyl::ncalg::{normal_order, parse_word, NCElement, NCWord, Strategy};

fn main() {
    // The defining relations, seen through the rewriter.
    for input in ["x+ * v", "x+ * x-", "vb * v", "x- * x+ * v"] {
        let (letters, alphabet) = parse_word(input).unwrap();
        let nf = normal_order(&NCWord::from_letters(letters), Strategy::LeftmostInnermost);
        println!("{input:14} = {}", nf.display(alphabet));
    }

    // Confluence: pivot strategy does not matter.
    let (letters, _) = parse_word("vb^2 * x+ * x- * v").unwrap();
    let left = normal_order(
        &NCWord::from_letters(letters.clone()),
        Strategy::LeftmostInnermost,
    );
    let right = normal_order(&NCWord::from_letters(letters), Strategy::RightmostOutermost);
    assert_eq!(left, right);
    println!("\nvb^2 x+ x- v  = {left}");

    // The antilinear anti-involution: reverses words, swaps v <-> vb,
    // inverts q.
    let (letters, _) = parse_word("v * x-^2 * vb").unwrap();
    let element = normal_order(&NCWord::from_letters(letters), Strategy::LeftmostInnermost);
    let conj = element.omega();
    println!("\nomega(v x-^2 vb) = {conj}");
    assert_eq!(conj.omega(), element, "omega is an involution");

    // Products distribute and reassociate exactly.
    let x = NCElement::gen(qweyl::ncalg::Letter::Plus);
    let y = NCElement::gen(qweyl::ncalg::Letter::Minus);
    println!("\nx+ * x-        = {}", x.mul(&y));
    println!("(x+ x-) * x+   = {}", x.mul(&y).mul(&x));
}
