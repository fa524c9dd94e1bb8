//! Assembling the q-Weyl solution components C+-_s and verifying that the
//! fourth-order operators annihilate them on the momentum q-cone.
//!
//! ```bash
//! cargo run -p qweyl --example weyl_solutions
//! ```

use qweyl::planewave::ExpConst;
use qweyl::scalar::QScalar;
use qweyl::weylsol::{
    assemble_series, chat, prefactor_product, verify_weyl, FactorOrder, Side, VerifyOptions,
    WeylSolSpec,
};

fn main() {
    let gammas = [
        QScalar::from_int(1),
        QScalar::from_ratio(1, 2),
        QScalar::i(),
        QScalar::from_int(-2),
        QScalar::from_int(3),
    ];

    // One prefactor product: four degree-one momentum-z factors.
    let pref = prefactor_product(Side::Plus, 1, ExpConst::int(-4), 1, FactorOrder::Ascending);
    println!("plus-side m=1 prefactor: {} terms", pref.term_count());

    // The full component and its verification.
    let spec = WeylSolSpec {
        side: Side::Plus,
        s: 1,
        gammas: gammas.clone(),
        b_or_d: ExpConst::int(-4),
        free_poly: vec![1, 2],
    };
    let component = chat(&spec, FactorOrder::Ascending).unwrap();
    println!("C+_1: {} terms", component.term_count());

    let report = verify_weyl(&spec, &VerifyOptions::default());
    println!(
        "qI+(4) C+_1 on the cone: pass = {}, residual terms = {}",
        report.pass, report.residual_term_count
    );
    assert!(report.pass);

    // The factor-order convention is empirically pinned: descending order
    // breaks the solution once the cone matters (s >= 2).
    let spec2 = WeylSolSpec { s: 2, ..spec.clone() };
    let descending = verify_weyl(
        &spec2,
        &VerifyOptions {
            order: FactorOrder::Descending,
            ..Default::default()
        },
    );
    println!(
        "descending factor order at s=2: pass = {} (ascending is the convention)",
        descending.pass
    );
    assert!(!descending.pass);

    // Series form with constants independent of s: B_s = B' - s - 4.
    let series = assemble_series(
        Side::Plus,
        gammas,
        ExpConst::int(0),
        vec![],
        2,
        FactorOrder::Ascending,
    )
    .unwrap();
    println!("\nseries components C+_s/[s]_q!:");
    for (s, c) in series.iter().enumerate() {
        println!("  s = {s}: {} terms", c.term_count());
    }
}
