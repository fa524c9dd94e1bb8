//! Assembly and verification of the q-Weyl solution components.
//!
//! The plus-side component is
//!
//! ```text
//! C+_s = sum_{m=0}^4 gamma_m ( prod_{i=0}^{3-m} (k+ - q^{i+B_s+s+4} kvb z) )
//!                            ( prod_{j=4-m}^{3} (kv - q^{j+B_s+s+4} k-  z) ) h+_s
//! ```
//!
//! with `h+_s` the plane-wave component with phase `P = R_s(a) + B_s b`; the
//! minus side mirrors it with `zb`, exponents `q^{i-D_s}`, products
//! `prod_{i=-1}^{2-m} (k+ - q^{i-D_s} kv zb)`, `prod_{j=3-m}^{2} (kvb -
//! q^{j-D_s} k- zb)`, and phase `P = D_s a + Q_s(b)`. Empty products are 1.
//!
//! Factors inside each product do not commute; the recorded convention
//! multiplies them left to right in ascending printed index (see
//! [`FactorOrder`]). Verification applies `qI+(4)` (resp. `qI-(4)`),
//! projects onto the momentum q-cone, and demands exact zero.

pub mod dict;

use serde::{Deserialize, Serialize};

use crate::operators::{qi_pm, qi_pm_mutated, OpSign};
use crate::planewave::{hhat, ExpConst, PhasePoly, PlaneWaveSpec};
use crate::repspace::{RepElement, RepElementJson, TermKey};
use crate::scalar::{qfactorial, QScalar};
use crate::ncalg::NCMonomial;

/// Which of the two conjugate Weyl equations a solution targets.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

/// Multiplication order for the factors inside each prefactor product.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorOrder {
    /// Ascending printed index, left to right — the recorded convention.
    #[default]
    Ascending,
    /// Reversed, exposed so the convention stays empirically pinned.
    Descending,
}

/// Full recipe for one solution component `C+-_s`.
#[derive(Clone, PartialEq, Debug)]
pub struct WeylSolSpec {
    pub side: Side,
    pub s: u32,
    /// The five arbitrary constants `gamma_m`, `m = 0..4`.
    pub gammas: [QScalar; 5],
    /// `B_s` (plus side) or `D_s` (minus side).
    pub b_or_d: ExpConst,
    /// Coefficients (ascending degree) of the free polynomial `R_s(a)`
    /// (plus) or `Q_s(b)` (minus).
    pub free_poly: Vec<i64>,
}

impl WeylSolSpec {
    pub fn phase(&self) -> PhasePoly {
        match self.side {
            Side::Plus => PhasePoly::Plus {
                r: self.free_poly.clone(),
                b: self.b_or_d,
            },
            Side::Minus => PhasePoly::Minus {
                d: self.b_or_d,
                q: self.free_poly.clone(),
            },
        }
    }
}

fn k_gen(a: u32, b: u32, c: u32, d: u32) -> RepElement {
    RepElement::term(
        TermKey {
            k: NCMonomial::new(a, b, c, d),
            x: [0; 4],
            z: [0; 2],
        },
        QScalar::one(),
    )
}

fn k_gen_z(a: u32, b: u32, c: u32, d: u32, z: [i32; 2], coeff: QScalar) -> RepElement {
    RepElement::term(
        TermKey {
            k: NCMonomial::new(a, b, c, d),
            x: [0; 4],
            z,
        },
        coeff,
    )
}

/// The degree-one factors of the index-`m` prefactor, in ascending printed
/// index. The factors depend on `B_s`/`D_s` but are independent of the free
/// polynomial by construction.
fn prefactor_factors(side: Side, m: u32, b_or_d: ExpConst, s: u32) -> Vec<RepElement> {
    let m = m as i64;
    let s = s as i64;
    let mut factors = Vec::new();
    match side {
        Side::Plus => {
            // prod_{i=0}^{3-m} (k+ - q^{i+B_s+s+4} kvb z)
            for i in 0..=(3 - m) {
                let pow = b_or_d.shifted(i + s + 4).q_power(1);
                factors.push(k_gen(0, 0, 1, 0).sub(&k_gen_z(0, 0, 0, 1, [1, 0], pow)));
            }
            // prod_{j=4-m}^{3} (kv - q^{j+B_s+s+4} k- z)
            for j in (4 - m)..=3 {
                let pow = b_or_d.shifted(j + s + 4).q_power(1);
                factors.push(k_gen(1, 0, 0, 0).sub(&k_gen_z(0, 1, 0, 0, [1, 0], pow)));
            }
        }
        Side::Minus => {
            // prod_{i=-1}^{2-m} (k+ - q^{i-D_s} kv zb)
            for i in -1..=(2 - m) {
                let pow = &QScalar::q_pow(i as i32) * &b_or_d.q_power(-1);
                factors.push(k_gen(0, 0, 1, 0).sub(&k_gen_z(1, 0, 0, 0, [0, 1], pow)));
            }
            // prod_{j=3-m}^{2} (kvb - q^{j-D_s} k- zb)
            for j in (3 - m)..=2 {
                let pow = &QScalar::q_pow(j as i32) * &b_or_d.q_power(-1);
                factors.push(k_gen(0, 0, 0, 1).sub(&k_gen_z(0, 1, 0, 0, [0, 1], pow)));
            }
        }
    }
    factors
}

/// Expanded prefactor product for one `m`; four degree-one factors in total
/// (an empty product contributes the identity).
pub fn prefactor_product(
    side: Side,
    m: u32,
    b_or_d: ExpConst,
    s: u32,
    order: FactorOrder,
) -> RepElement {
    let mut factors = prefactor_factors(side, m, b_or_d, s);
    if order == FactorOrder::Descending {
        factors.reverse();
    }
    factors
        .iter()
        .fold(RepElement::one(), |acc, f| acc.mul(f))
}

/// The five prefactor products a component assembly uses, taken from the
/// full recipe. They depend on `B_s`/`D_s` but must be independent of the
/// free polynomial — that independence is an acceptance check, which is why
/// this takes the whole spec.
pub fn prefactor_products(spec: &WeylSolSpec, order: FactorOrder) -> Vec<RepElement> {
    (0..5)
        .map(|m| prefactor_product(spec.side, m, spec.b_or_d, spec.s, order))
        .collect()
}

/// Assembles the solution component `C+-_s` for the given recipe.
pub fn chat(spec: &WeylSolSpec, order: FactorOrder) -> Result<RepElement, crate::planewave::PhaseError> {
    let h = hhat(&PlaneWaveSpec::new(spec.s, spec.phase()))?;
    let prefs = prefactor_products(spec, order);
    let mut out = RepElement::zero();
    for (gamma, pref) in spec.gammas.iter().zip(&prefs) {
        if gamma.is_zero() {
            continue;
        }
        out = out.add(&pref.mul(&h).scale(gamma));
    }
    Ok(out)
}

/// Options for [`verify_weyl`].
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Project onto the momentum q-cone before testing for zero. Disabling
    /// this is the negative control: residuals must survive off the cone.
    pub cone: bool,
    pub order: FactorOrder,
    /// Perturb the middle coefficient of `qI+-(4)` — the other negative
    /// control.
    pub mutate_operator: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cone: true,
            order: FactorOrder::Ascending,
            mutate_operator: false,
        }
    }
}

/// JSON echo of a [`WeylSolSpec`] inside reports.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct WeylSpecJson {
    pub side: Side,
    pub s: u32,
    pub gammas: Vec<QScalar>,
    pub b_or_d_offset: i64,
    pub b_or_d_unit: Option<usize>,
    pub free_poly: Vec<i64>,
}

/// Verification report: carries the surviving residual on failure rather
/// than raising an error.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct WeylReport {
    pub spec: WeylSpecJson,
    pub residual_term_count: usize,
    pub residual: RepElementJson,
    pub elapsed_ms: u64,
    pub pass: bool,
}

/// Applies `qI+(4)` (plus side) or `qI-(4)` (minus side) to `chat(spec)`,
/// cone-projects, and reports whether the result is exactly zero.
///
/// The operator is applied to a denominator-cleared scalar multiple of the
/// component (zero-testing is unaffected); a failing report's residual is
/// that multiple's residual.
pub fn verify_weyl(spec: &WeylSolSpec, options: &VerifyOptions) -> WeylReport {
    let start = std::time::Instant::now();
    let sign = match spec.side {
        Side::Plus => OpSign::Plus,
        Side::Minus => OpSign::Minus,
    };
    let op = if options.mutate_operator {
        qi_pm_mutated(sign, 4)
    } else {
        qi_pm(sign, 4)
    };
    let component = chat(spec, options.order)
        .expect("plus/minus phases are total")
        .clear_denominators();
    let image = op.apply(&component);
    let residual = if options.cone {
        image.cone_project()
    } else {
        image
    };
    let pass = residual.is_zero();
    WeylReport {
        spec: WeylSpecJson {
            side: spec.side,
            s: spec.s,
            gammas: spec.gammas.to_vec(),
            b_or_d_offset: spec.b_or_d.offset,
            b_or_d_unit: spec.b_or_d.unit,
            free_poly: spec.free_poly.clone(),
        },
        residual_term_count: residual.term_count(),
        residual: residual.to_json(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        pass,
    }
}

/// The series form: the list `[C+-_s / [s]_q!]` for `s <= s_max` with
/// constants independent of `s` wired in — `B_s = B' - s - 4` on the plus
/// side (so prefactor exponents read `q^{i+B'}`), `D_s = D` on the minus
/// side.
pub fn assemble_series(
    side: Side,
    gammas: [QScalar; 5],
    constant: ExpConst,
    free_poly: Vec<i64>,
    s_max: u32,
    order: FactorOrder,
) -> Result<Vec<RepElement>, crate::planewave::PhaseError> {
    (0..=s_max)
        .map(|s| {
            let b_or_d = match side {
                Side::Plus => constant.shifted(-(s as i64) - 4),
                Side::Minus => constant,
            };
            let spec = WeylSolSpec {
                side,
                s,
                gammas: gammas.clone(),
                b_or_d,
                free_poly: free_poly.clone(),
            };
            Ok(chat(&spec, order)?.scale(&qfactorial(s as i64).expect("s >= 0").inv()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{normal_order, NCWord, Strategy};

    fn unit_gammas(m: usize) -> [QScalar; 5] {
        let mut g = [
            QScalar::zero(),
            QScalar::zero(),
            QScalar::zero(),
            QScalar::zero(),
            QScalar::zero(),
        ];
        g[m] = QScalar::one();
        g
    }

    fn all_gammas() -> [QScalar; 5] {
        [
            QScalar::from_int(1),
            QScalar::from_ratio(2, 3),
            &QScalar::i() * &QScalar::from_int(-1),
            QScalar::from_int(4),
            QScalar::from_ratio(-5, 7),
        ]
    }

    #[test]
    fn empty_product_conventions() {
        // plus, m = 4: first product empty, second has four factors.
        let factors = prefactor_factors(Side::Plus, 4, ExpConst::int(0), 0);
        assert_eq!(factors.len(), 4);
        // every factor is of the kv/k-z type
        for f in &factors {
            assert!(f
                .terms()
                .all(|(key, _)| key.k == NCMonomial::new(1, 0, 0, 0)
                    || key.k == NCMonomial::new(0, 1, 0, 0)));
        }
        // minus, m = 4: first product is empty (prod_{i=-1}^{-2}).
        let factors = prefactor_factors(Side::Minus, 4, ExpConst::int(0), 0);
        assert_eq!(factors.len(), 4);
        for f in &factors {
            assert!(f
                .terms()
                .all(|(key, _)| key.k == NCMonomial::new(0, 0, 0, 1)
                    || key.k == NCMonomial::new(0, 1, 0, 0)));
        }
        // always four factors in total
        for side in [Side::Plus, Side::Minus] {
            for m in 0..=4 {
                assert_eq!(prefactor_factors(side, m, ExpConst::int(-2), 3).len(), 4);
            }
        }
    }

    #[test]
    fn prefactor_expansion_matches_word_oracle() {
        // plus, s = 0, m = 0, integer B: expand the product over the 2^4
        // factor choices with naive word-level q-reordering as the oracle.
        let b = -3i64;
        let s = 0u32;
        let product = prefactor_product(Side::Plus, 0, ExpConst::int(b), s, FactorOrder::Ascending);
        // oracle: sum over subsets S of {0,1,2,3}; factor i contributes k+
        // if i not in S else -q^{i+B+s+4} kvb z; multiply words left to
        // right with the generic rewriter.
        let mut oracle = RepElement::zero();
        for subset in 0u32..16 {
            let mut letters = Vec::new();
            let mut coeff = QScalar::one();
            let mut zdeg = 0i32;
            for i in 0..4 {
                if subset & (1 << i) != 0 {
                    letters.push(crate::ncalg::Letter::Vbar);
                    coeff = &coeff
                        * &-&QScalar::q_pow((i as i64 + b + s as i64 + 4) as i32);
                    zdeg += 1;
                } else {
                    letters.push(crate::ncalg::Letter::Plus);
                }
            }
            let nf = normal_order(&NCWord::new(coeff, letters), Strategy::LeftmostInnermost);
            for (kmono, c) in nf.terms() {
                oracle.insert_add(
                    TermKey {
                        k: *kmono,
                        x: [0; 4],
                        z: [zdeg, 0],
                    },
                    c.clone(),
                );
            }
        }
        assert_eq!(product, oracle);
    }

    #[test]
    fn z_degree_bound() {
        for side in [Side::Plus, Side::Minus] {
            let spec = WeylSolSpec {
                side,
                s: 1,
                gammas: all_gammas(),
                b_or_d: ExpConst::int(-1),
                free_poly: vec![1, 2],
            };
            let c = chat(&spec, FactorOrder::Ascending).unwrap();
            let zi = match side {
                Side::Plus => 0,
                Side::Minus => 1,
            };
            for (key, _) in c.terms() {
                assert!(key.z[zi] <= 4);
                assert_eq!(key.z[1 - zi], 0);
            }
        }
    }

    #[test]
    fn prefactors_independent_of_free_poly() {
        // Byte-identical serialized prefactor products across distinct
        // R_s/Q_s draws (only B_s/D_s may enter them).
        for side in [Side::Plus, Side::Minus] {
            let build = |poly: Vec<i64>| {
                let spec = WeylSolSpec {
                    side,
                    s: 2,
                    gammas: all_gammas(),
                    b_or_d: ExpConst::int(-2),
                    free_poly: poly,
                };
                prefactor_products(&spec, FactorOrder::Ascending)
                    .iter()
                    .map(|p| serde_json::to_string(&p.to_json()).unwrap())
                    .collect::<Vec<_>>()
            };
            let a = build(vec![]);
            let b = build(vec![3, -1, 2]);
            let c = build(vec![0, 7]);
            assert_eq!(a, b);
            assert_eq!(b, c);
        }
    }

    #[test]
    fn verify_weyl_plus_s0_basis_gammas() {
        for m in 0..5 {
            let spec = WeylSolSpec {
                side: Side::Plus,
                s: 0,
                gammas: unit_gammas(m),
                b_or_d: ExpConst::int(0),
                free_poly: vec![],
            };
            let report = verify_weyl(&spec, &VerifyOptions::default());
            assert!(report.pass, "m = {m}, residual {}", report.residual_term_count);
        }
    }

    #[test]
    fn verify_weyl_minus_s0() {
        let spec = WeylSolSpec {
            side: Side::Minus,
            s: 0,
            gammas: all_gammas(),
            b_or_d: ExpConst::int(1),
            free_poly: vec![],
        };
        let report = verify_weyl(&spec, &VerifyOptions::default());
        assert!(report.pass, "residual {}", report.residual_term_count);
    }

    #[test]
    fn verify_weyl_plus_s1_with_phase() {
        let spec = WeylSolSpec {
            side: Side::Plus,
            s: 1,
            gammas: all_gammas(),
            b_or_d: ExpConst::int(-5),
            free_poly: vec![2, 1],
        };
        let report = verify_weyl(&spec, &VerifyOptions::default());
        assert!(report.pass, "residual {}", report.residual_term_count);
    }

    #[test]
    fn off_cone_and_mutated_operator_fail() {
        // The cone (and the exact middle coefficient) start doing work at
        // s = 2: the s = 0, 1 images vanish identically, the s = 2 ones only
        // modulo the cone ideal.
        let spec = WeylSolSpec {
            side: Side::Plus,
            s: 2,
            gammas: all_gammas(),
            b_or_d: ExpConst::int(0),
            free_poly: vec![],
        };
        assert!(verify_weyl(&spec, &VerifyOptions::default()).pass);
        let off_cone = verify_weyl(
            &spec,
            &VerifyOptions {
                cone: false,
                ..Default::default()
            },
        );
        assert!(!off_cone.pass);
        assert!(off_cone.residual_term_count > 0);
        let mutated = verify_weyl(
            &spec,
            &VerifyOptions {
                mutate_operator: true,
                ..Default::default()
            },
        );
        assert!(!mutated.pass);
    }

    #[test]
    fn factor_order_convention_is_pinned() {
        // Ascending printed index is the convention the equations select:
        // from s = 2 on, multiplying each product's factors in descending
        // index breaks the solution.
        let spec = WeylSolSpec {
            side: Side::Plus,
            s: 2,
            gammas: all_gammas(),
            b_or_d: ExpConst::int(-3),
            free_poly: vec![1, 1],
        };
        assert!(verify_weyl(&spec, &VerifyOptions::default()).pass);
        let descending = verify_weyl(
            &spec,
            &VerifyOptions {
                order: FactorOrder::Descending,
                ..Default::default()
            },
        );
        assert!(!descending.pass);
    }

    #[test]
    fn gamma_linearity() {
        // chat is linear in each gamma: the all-gamma component is the
        // gamma-weighted sum of the basis components.
        let spec_for = |g: [QScalar; 5]| WeylSolSpec {
            side: Side::Plus,
            s: 1,
            gammas: g,
            b_or_d: ExpConst::int(-1),
            free_poly: vec![1],
        };
        let gammas = all_gammas();
        let total = chat(&spec_for(gammas.clone()), FactorOrder::Ascending).unwrap();
        let mut sum = RepElement::zero();
        for m in 0..5 {
            let basis = chat(&spec_for(unit_gammas(m)), FactorOrder::Ascending).unwrap();
            sum = sum.add(&basis.scale(&gammas[m]));
        }
        assert_eq!(total, sum);
    }

    #[test]
    fn series_prefactors_independent_of_s() {
        // With B_s = B' - s - 4 the plus-side prefactor exponents read
        // q^{i+B'}, independent of s.
        let bprime = 0i64;
        let reference = prefactor_product(
            Side::Plus,
            2,
            ExpConst::int(bprime - 4),
            0,
            FactorOrder::Ascending,
        );
        for s in 1..=2u32 {
            let p = prefactor_product(
                Side::Plus,
                2,
                ExpConst::int(bprime - s as i64 - 4),
                s,
                FactorOrder::Ascending,
            );
            assert_eq!(p, reference, "s = {s}");
        }
        // Series assembly: s_max = 0 entry equals chat at s = 0.
        let series = assemble_series(
            Side::Minus,
            all_gammas(),
            ExpConst::int(0),
            vec![],
            0,
            FactorOrder::Ascending,
        )
        .unwrap();
        assert_eq!(series.len(), 1);
        let direct = chat(
            &WeylSolSpec {
                side: Side::Minus,
                s: 0,
                gammas: all_gammas(),
                b_or_d: ExpConst::int(0),
                free_poly: vec![],
            },
            FactorOrder::Ascending,
        )
        .unwrap();
        assert_eq!(series[0], direct);
    }
}
