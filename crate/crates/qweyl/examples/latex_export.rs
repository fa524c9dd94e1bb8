//! LaTeX fragments for documentation: scalars, algebra elements, and the
//! solution components.
//!
//! ```bash
//! cargo run -p qweyl --example latex_export
//! ```

use qweyl::latex;
use qweyl::ncalg::{normal_order, parse_word, Alphabet, NCWord, Strategy};
use qweyl::planewave::{hhat, PlaneWaveSpec};
use qweyl::scalar::qnum;

fn main() {
    println!("% [3]_q");
    print!("{}", latex::fragment(&latex::scalar_latex(&qnum(3))));

    println!("% x+ x- normal-ordered");
    let (letters, _) = parse_word("x+ * x-").unwrap();
    let nf = normal_order(&NCWord::from_letters(letters), Strategy::LeftmostInnermost);
    print!(
        "{}",
        latex::fragment(&latex::nc_latex(&nf, Alphabet::Coordinate))
    );

    println!("% the four-term component h_1");
    let h1 = hhat(&PlaneWaveSpec::plain(1)).unwrap();
    print!("{}", latex::fragment(&latex::rep_latex(&h1)));
}
