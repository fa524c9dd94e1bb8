//! Construction of the q-plane-wave components `h_s`: the degree-s bilinears
//! in noncommutative momenta and coordinates whose weighted sum deforms the
//! plane wave. Includes the normalization `beta_s`, the admissible phase
//! polynomials `P_s(a, b)`, and the truncated series.
//!
//! The component is the finite sum over the support
//! `{(a, b, n): a >= n >= 0, b >= n, s - a - b + n >= 0}` of
//!
//! ```text
//! beta_s (-1)^{s-a-b} q^{n(s-2a-2b+2n) + a(s-a-1) + b(-s+a+b+1) + P_s(a,b)}
//! ----------------------------------------------------------------------- x
//!     Gamma_q(a-n+1) Gamma_q(b-n+1) Gamma_q(s-a-b+n+1) [n]_q!
//!
//!   x  kv^{s-a-b+n} k-^{b-n} k+^{a-n} kvb^n  v^n x-^{a-n} x+^{b-n} vb^{s-a-b+n}
//! ```
//!
//! with `(beta_s)^-1 = sum_{p=0}^s q^{(s-p)(p-1)+p} / ([p]_q! [s-p]_q!)`.
//! The support truncation is exactly the vanishing of `1/Gamma_q` on
//! nonpositive arguments. At `q = 1` every component collapses to
//! `(k.x)^s` with `k.x = (k+ x- + k- x+ - kv vb - kvb v)/2`, independently
//! of the phase.

use std::collections::BTreeMap;

use crate::ncalg::NCMonomial;
use crate::repspace::{RepElement, TermKey};
use crate::scalar::{inv_gamma_q, qfactorial, QScalar};
use thiserror::Error;

/// Unit index (1-based) reserved for a symbolic `q^B` in plus-type phases.
pub const UNIT_B: usize = 1;
/// Unit index reserved for a symbolic `q^D` in minus-type phases.
pub const UNIT_D: usize = 2;

/// An exponent constant `offset + (symbolic part)`: either a concrete
/// integer or a symbolic unit (`q^B`, `q^D`) with an integer shift, so
/// choices like `B_s = B' - s - 4` stay representable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExpConst {
    pub offset: i64,
    /// 1-based auxiliary-unit index for the symbolic part, if any.
    pub unit: Option<usize>,
}

impl ExpConst {
    pub fn int(v: i64) -> Self {
        ExpConst {
            offset: v,
            unit: None,
        }
    }

    pub fn symbolic(unit: usize) -> Self {
        ExpConst {
            offset: 0,
            unit: Some(unit),
        }
    }

    pub fn shifted(self, by: i64) -> Self {
        ExpConst {
            offset: self.offset + by,
            unit: self.unit,
        }
    }

    /// `q^{self * multiplier}` as a scalar monomial.
    pub fn q_power(self, multiplier: i64) -> QScalar {
        let base = QScalar::q_pow((self.offset * multiplier) as i32);
        match self.unit {
            None => base,
            Some(u) => &base * &QScalar::unit_pow(u, multiplier as i32),
        }
    }
}

/// The phase polynomial `P_s(a, b)` entering the exponent of `h_s`.
#[derive(Clone, PartialEq, Debug)]
pub enum PhasePoly {
    /// `P = 0`, the original plane wave.
    Zero,
    /// `P = R(a) + B b` with `R` an integer polynomial (coefficients in
    /// ascending degree) — the phase family solving the plus-side equations.
    Plus { r: Vec<i64>, b: ExpConst },
    /// `P = D a + Q(b)` with `Q` an integer polynomial — the minus-side
    /// family.
    Minus { d: ExpConst, q: Vec<i64> },
    /// Arbitrary integer values tabulated on the support lattice.
    General(BTreeMap<(i64, i64), i64>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PhaseError {
    #[error("general phase table has no value at (a, b) = ({0}, {1})")]
    MissingTableEntry(i64, i64),
}

fn poly_eval(coeffs: &[i64], x: i64) -> i64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
}

impl PhasePoly {
    /// `q^{P_s(a, b)}` as a scalar (a pure monomial, possibly involving a
    /// symbolic unit).
    pub fn q_power(&self, a: i64, b: i64) -> Result<QScalar, PhaseError> {
        Ok(match self {
            PhasePoly::Zero => QScalar::one(),
            PhasePoly::Plus { r, b: bconst } => {
                &QScalar::q_pow(poly_eval(r, a) as i32) * &bconst.q_power(b)
            }
            PhasePoly::Minus { d, q } => {
                &QScalar::q_pow(poly_eval(q, b) as i32) * &d.q_power(a)
            }
            PhasePoly::General(table) => {
                let v = table
                    .get(&(a, b))
                    .ok_or(PhaseError::MissingTableEntry(a, b))?;
                QScalar::q_pow(*v as i32)
            }
        })
    }
}

/// Recipe for one plane-wave component.
#[derive(Clone, PartialEq, Debug)]
pub struct PlaneWaveSpec {
    pub s: u32,
    pub phase: PhasePoly,
}

impl PlaneWaveSpec {
    pub fn new(s: u32, phase: PhasePoly) -> Self {
        PlaneWaveSpec { s, phase }
    }

    pub fn plain(s: u32) -> Self {
        PlaneWaveSpec {
            s,
            phase: PhasePoly::Zero,
        }
    }
}

/// The normalization `beta_s`: exact inverse of the printed sum
/// `sum_{p=0}^s q^{(s-p)(p-1)+p} / ([p]_q! [s-p]_q!)`.
pub fn beta(s: u32) -> QScalar {
    beta_inverse_sum(s).inv()
}

/// The printed sum itself (exposed so tests can check `beta_s * sum = 1`).
pub fn beta_inverse_sum(s: u32) -> QScalar {
    let s = s as i64;
    let mut sum = QScalar::zero();
    for p in 0..=s {
        let exponent = (s - p) * (p - 1) + p;
        let term = &(&QScalar::q_pow(exponent as i32)
            * &qfactorial(p).expect("p >= 0").inv())
            * &qfactorial(s - p).expect("s - p >= 0").inv();
        sum = &sum + &term;
    }
    sum
}

/// Builds the component `h_s` as a representation-space element.
pub fn hhat(spec: &PlaneWaveSpec) -> Result<RepElement, PhaseError> {
    let s = spec.s as i64;
    let beta_s = beta(spec.s);
    let mut out = RepElement::zero();
    for n in 0..=s {
        for a in n..=(s + n) {
            for b in n..=(s + n - a) {
                let w = s - a - b + n;
                debug_assert!(w >= 0);
                let exponent =
                    n * (s - 2 * a - 2 * b + 2 * n) + a * (s - a - 1) + b * (-s + a + b + 1);
                let sign = if (s - a - b).rem_euclid(2) == 0 {
                    QScalar::one()
                } else {
                    -&QScalar::one()
                };
                let coeff = &(&(&(&(&(&(&beta_s * &sign) * &QScalar::q_pow(exponent as i32))
                    * &spec.phase.q_power(a, b)?)
                    * &inv_gamma_q(a - n + 1))
                    * &inv_gamma_q(b - n + 1))
                    * &inv_gamma_q(w + 1))
                    * &qfactorial(n).expect("n >= 0").inv();
                let key = TermKey {
                    k: NCMonomial::new(w as u32, (b - n) as u32, (a - n) as u32, n as u32),
                    x: [n as i32, (a - n) as i32, (b - n) as i32, w as i32],
                    z: [0, 0],
                };
                out.insert_add(key, coeff);
            }
        }
    }
    Ok(out)
}

/// Truncated deformed plane wave: the list `[h_s / [s]_q!]` for `s <= s_max`
/// with per-s phases supplied by `phase`. No closed-form exponential exists;
/// callers work with the components.
pub fn exp_q(
    phase: impl Fn(u32) -> PhasePoly,
    s_max: u32,
) -> Result<Vec<RepElement>, PhaseError> {
    (0..=s_max)
        .map(|s| {
            let h = hhat(&PlaneWaveSpec::new(s, phase(s)))?;
            Ok(h.scale(&qfactorial(s as i64).expect("s >= 0").inv()))
        })
        .collect()
}

/// Independent classical oracle: the multinomial expansion of `(k.x)^s`
/// with the light-cone pairing `k.x = (k+ x- + k- x+ - kv vb - kvb v)/2`,
/// built with commutative integer arithmetic only.
pub fn classical_kx_power(s: u32) -> RepElement {
    let s = s as i64;
    let mut out = RepElement::zero();
    let factorial = |n: i64| -> num::BigInt { (1..=n).map(num::BigInt::from).product() };
    for i in 0..=s {
        for j in 0..=(s - i) {
            for k in 0..=(s - i - j) {
                let l = s - i - j - k;
                // multinomial s! / (i! j! k! l!)
                let multi = factorial(s) / (factorial(i) * factorial(j) * factorial(k) * factorial(l));
                let sign = if (k + l) % 2 == 0 { 1 } else { -1 };
                let coeff = QScalar::from_gauss(crate::scalar::GaussRat::new(
                    num::BigRational::new(
                        multi * num::BigInt::from(sign),
                        num::BigInt::from(1i64) << (s as usize),
                    ),
                    num::BigRational::from_integer(0.into()),
                ));
                // (k+ x-)^i (k- x+)^j (kv vb)^k (kvb v)^l
                let key = TermKey {
                    k: NCMonomial::new(k as u32, j as u32, i as u32, l as u32),
                    x: [l as i32, i as i32, j as i32, k as i32],
                    z: [0, 0],
                };
                out.insert_add(key, coeff);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{qdal, DalBasis};
    use crate::scalar::{qnum, GaussRat};

    #[test]
    fn beta_examples() {
        assert!(beta(0).is_one());
        // beta_1 = 1/[2]_q
        assert_eq!(beta(1), qnum(2).inv());
        // consistency: beta_s times the printed sum is exactly 1
        for s in 0..=12 {
            assert!((&beta(s) * &beta_inverse_sum(s)).is_one(), "s = {s}");
        }
    }

    #[test]
    fn beta_classical_value() {
        // At q = 1 the inverse sum collapses to 2^s/s!, so beta_s -> s!/2^s.
        let factorial = |n: u32| -> i64 { (1..=n as i64).product() };
        for s in 0..=8u32 {
            let expected = GaussRat::from_ratio(factorial(s), 1 << s);
            assert_eq!(beta(s).eval_q1().unwrap(), expected, "s = {s}");
        }
    }

    #[test]
    fn hhat_s0_is_one() {
        let h = hhat(&PlaneWaveSpec::plain(0)).unwrap();
        assert_eq!(h, RepElement::one());
        // Brute-force oracle: loop over all (a, b, n) in a box and use the
        // inv_gamma cutoffs only; the support analysis must agree.
        let mut brute = RepElement::zero();
        for n in 0..=5i64 {
            for a in 0..=5i64 {
                for b in 0..=5i64 {
                    let s = 0i64;
                    let w = s - a - b + n;
                    let gammas = &(&inv_gamma_q(a - n + 1) * &inv_gamma_q(b - n + 1))
                        * &inv_gamma_q(w + 1);
                    if gammas.is_zero() {
                        continue;
                    }
                    // everything the gamma cutoffs let through is in the
                    // support lattice
                    assert!(w >= 0 && a >= n && b >= n);
                    let exponent =
                        n * (s - 2 * a - 2 * b + 2 * n) + a * (s - a - 1) + b * (-s + a + b + 1);
                    let sign = if (s - a - b).rem_euclid(2) == 0 { 1 } else { -1 };
                    let coeff = &(&(&(&beta(0) * &QScalar::from_int(sign))
                        * &QScalar::q_pow(exponent as i32))
                        * &gammas)
                        * &qfactorial(n).unwrap().inv();
                    brute.insert_add(
                        TermKey {
                            k: NCMonomial::new(w as u32, (b - n) as u32, (a - n) as u32, n as u32),
                            x: [n as i32, (a - n) as i32, (b - n) as i32, w as i32],
                            z: [0, 0],
                        },
                        coeff,
                    );
                }
            }
        }
        assert_eq!(h, brute);
    }

    #[test]
    fn hhat_s1_classical_limit() {
        // h_1 at q = 1 with P = 0 must be (k+ x- + k- x+ - kv vb - kvb v)/2.
        let h = hhat(&PlaneWaveSpec::plain(1)).unwrap();
        assert_eq!(h.term_count(), 4);
        assert_eq!(h.eval_q1().unwrap(), classical_kx_power(1));
    }

    #[test]
    fn hhat_classical_limit_up_to_4() {
        for s in 0..=4u32 {
            let h = hhat(&PlaneWaveSpec::plain(s)).unwrap();
            assert_eq!(h.eval_q1().unwrap(), classical_kx_power(s), "s = {s}");
        }
    }

    #[test]
    fn classical_limit_is_phase_independent() {
        let phases = [
            PhasePoly::Zero,
            PhasePoly::Plus {
                r: vec![1, -2, 3],
                b: ExpConst::int(-7),
            },
            PhasePoly::Minus {
                d: ExpConst::int(4),
                q: vec![0, 5],
            },
        ];
        for s in 0..=3u32 {
            let reference = classical_kx_power(s);
            for phase in &phases {
                let h = hhat(&PlaneWaveSpec::new(s, phase.clone())).unwrap();
                assert_eq!(h.eval_q1().unwrap(), reference, "s = {s}, {phase:?}");
            }
        }
    }

    #[test]
    fn support_and_degree_invariants() {
        for s in 0..=5u32 {
            let h = hhat(&PlaneWaveSpec::plain(s)).unwrap();
            assert!(h.validate_nonnegative().is_ok());
            for (key, _) in h.terms() {
                assert_eq!(key.momentum_degree(), s, "momentum degree");
                assert_eq!(key.coordinate_degree(), s as i32, "coordinate degree");
            }
        }
    }

    #[test]
    fn qdal_annihilates_hhat_on_the_cone() {
        // The headline d'Alembert check for small s; the full sweep is in
        // the acceptance suite. Off the cone the residual must be nonzero
        // from s = 2 on.
        let op = qdal(DalBasis::Hat);
        for s in 0..=3u32 {
            let h = hhat(&PlaneWaveSpec::plain(s)).unwrap();
            let image = op.apply(&h);
            assert!(image.cone_project().is_zero(), "s = {s}");
            if s >= 2 {
                assert!(!image.is_zero(), "off-cone residual should survive, s = {s}");
            }
        }
    }

    #[test]
    fn qdal_annihilates_hhat_with_symbolic_b() {
        let phase = PhasePoly::Plus {
            r: vec![2, 1],
            b: ExpConst::symbolic(UNIT_B),
        };
        let h = hhat(&PlaneWaveSpec::new(2, phase)).unwrap();
        let image = qdal(DalBasis::Hat).apply(&h);
        assert!(image.cone_project().is_zero());
    }

    #[test]
    fn qdal_annihilates_hhat_with_general_table() {
        // Any integer-valued phase on the support works, not only the
        // plus/minus families.
        let s = 2u32;
        let mut table = BTreeMap::new();
        for n in 0..=s as i64 {
            for a in n..=(s as i64 + n) {
                for b in n..=(s as i64 + n - a) {
                    table.insert((a, b), (3 * a - 2 * b * b + 1) % 7);
                }
            }
        }
        let h = hhat(&PlaneWaveSpec::new(s, PhasePoly::General(table))).unwrap();
        assert!(qdal(DalBasis::Hat).apply(&h).cone_project().is_zero());
        // A hole in the table is an error, not a silent zero.
        let sparse = PhasePoly::General(BTreeMap::new());
        assert_eq!(
            hhat(&PlaneWaveSpec::new(1, sparse)),
            Err(PhaseError::MissingTableEntry(0, 0))
        );
    }

    #[test]
    fn exp_q_truncation() {
        let series = exp_q(|_| PhasePoly::Zero, 2).unwrap();
        assert_eq!(series.len(), 3);
        assert_eq!(series[0], RepElement::one());
        // Partial sums at q = 1 match the classical Taylor coefficients
        // (k.x)^s / s!.
        for (s, comp) in series.iter().enumerate() {
            let classical = comp.eval_q1().unwrap();
            let factorial: i64 = (1..=s as i64).product::<i64>().max(1);
            let expected = classical_kx_power(s as u32).scale(&QScalar::from_ratio(1, factorial));
            assert_eq!(classical, expected, "s = {s}");
        }
    }
}
