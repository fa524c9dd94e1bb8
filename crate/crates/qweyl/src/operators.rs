//! The operator calculus: shift, scale and q-difference generators for the
//! six variables `v, x-, x+, vb, z, zb`, formal operator expressions, and the
//! named composites used by the field equations.
//!
//! Generator semantics on a monomial with exponent `e` in variable `kappa`:
//!
//! - shift `M^p`: `e -> e + p`, coefficient unchanged (multiplication by the
//!   variable at `q = 1` when `p = 1`);
//! - scale `T^p`: coefficient times `q^{p e}`, exponent unchanged;
//! - q-difference `D`: maps the term to `[e]_q` times the term with exponent
//!   `e - 1`, which is exactly `lambda^-1 M^-1 (T - T^-1)`.
//!
//! Generators of distinct variables commute; within one variable
//! `T M = q M T`. Expressions are not normalized into a canonical operator
//! form — they are evaluated by action, and the classical (`q = 1`) limits
//! are obtained by evaluating output coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use crate::repspace::{RepElement, TermKey};
use crate::scalar::{qnum, QScalar};

/// The six variables operators can touch. The first four index coordinate
/// exponents, the last two the central z-powers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    V,
    Minus,
    Plus,
    Vbar,
    Z,
    Zbar,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::V, Var::Minus, Var::Plus, Var::Vbar, Var::Z, Var::Zbar];
}

fn exp_of(key: &TermKey, var: Var) -> i32 {
    match var {
        Var::V => key.x[0],
        Var::Minus => key.x[1],
        Var::Plus => key.x[2],
        Var::Vbar => key.x[3],
        Var::Z => key.z[0],
        Var::Zbar => key.z[1],
    }
}

fn with_exp(key: &TermKey, var: Var, e: i32) -> TermKey {
    let mut out = *key;
    match var {
        Var::V => out.x[0] = e,
        Var::Minus => out.x[1] = e,
        Var::Plus => out.x[2] = e,
        Var::Vbar => out.x[3] = e,
        Var::Z => out.z[0] = e,
        Var::Zbar => out.z[1] = e,
    }
    out
}

/// A single generator application.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    /// `M^by`: shifts the exponent.
    Shift { var: Var, by: i32 },
    /// `T^by`: multiplies by `q^{by * exponent}`.
    Scale { var: Var, by: i32 },
    /// The q-difference operator; apply repeatedly for powers.
    QDiff { var: Var },
}

impl Gen {
    /// Applies the generator to one term; `None` when the term is killed
    /// (q-difference of an exponent-0 term).
    fn apply(&self, key: &TermKey, coeff: &QScalar) -> Option<(TermKey, QScalar)> {
        match *self {
            Gen::Shift { var, by } => Some((with_exp(key, var, exp_of(key, var) + by), coeff.clone())),
            Gen::Scale { var, by } => {
                let e = exp_of(key, var);
                Some((*key, coeff * &QScalar::q_pow(by * e)))
            }
            Gen::QDiff { var } => {
                let e = exp_of(key, var);
                let bracket = qnum(e as i64);
                if bracket.is_zero() {
                    return None;
                }
                Some((with_exp(key, var, e - 1), coeff * &bracket))
            }
        }
    }
}

/// Formal sum of weighted generator compositions. A composition is written
/// in reading order and applied right to left, matching operator
/// juxtaposition in the usual convention.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct OperatorExpr {
    terms: Vec<(QScalar, Vec<Gen>)>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        OperatorExpr {
            terms: vec![(QScalar::one(), Vec::new())],
        }
    }

    pub fn gen(g: Gen) -> Self {
        OperatorExpr {
            terms: vec![(QScalar::one(), vec![g])],
        }
    }

    /// Shift generator `M_var` (raising; use [`shift_pow`] for inverses).
    pub fn mhat(var: Var) -> Self {
        Self::gen(Gen::Shift { var, by: 1 })
    }

    pub fn shift_pow(var: Var, by: i32) -> Self {
        Self::gen(Gen::Shift { var, by })
    }

    /// Scale generator `T_var^by`.
    pub fn t_pow(var: Var, by: i32) -> Self {
        Self::gen(Gen::Scale { var, by })
    }

    pub fn t(var: Var) -> Self {
        Self::t_pow(var, 1)
    }

    pub fn t_inv(var: Var) -> Self {
        Self::t_pow(var, -1)
    }

    /// q-difference generator `D_var`.
    pub fn dhat(var: Var) -> Self {
        Self::gen(Gen::QDiff { var })
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        OperatorExpr {
            terms: self
                .terms
                .iter()
                .map(|(w, g)| (w * c, g.clone()))
                .collect(),
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Applies the expression to an element: linear in both, with a
    /// deterministic key-sorted merge.
    pub fn apply(&self, e: &RepElement) -> RepElement {
        let mut out = RepElement::zero();
        for (weight, gens) in &self.terms {
            for (key, coeff) in e.terms() {
                let mut cur = Some((*key, coeff * weight));
                for g in gens.iter().rev() {
                    cur = match cur {
                        None => None,
                        Some((k, c)) => g.apply(&k, &c),
                    };
                    if cur.is_none() {
                        break;
                    }
                }
                if let Some((k, c)) = cur {
                    out.insert_add(k, c);
                }
            }
        }
        out
    }

    /// Applies and then takes the classical `q = 1` limit of every output
    /// coefficient.
    pub fn apply_at_q1(&self, e: &RepElement) -> Result<RepElement, crate::scalar::ScalarError> {
        self.apply(e).eval_q1()
    }

    /// Operator power (composition with itself).
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, rhs: &OperatorExpr) -> OperatorExpr {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        OperatorExpr { terms }
    }
}

impl Sub for &OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: &OperatorExpr) -> OperatorExpr {
        self + &(-rhs)
    }
}

impl Neg for &OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        self.scale(&-&QScalar::one())
    }
}

/// Composition: `(A * B)(phi) = A(B(phi))`.
impl Mul for &OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, rhs: &OperatorExpr) -> OperatorExpr {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (wa, ga) in &self.terms {
            for (wb, gb) in &rhs.terms {
                let mut g = ga.clone();
                g.extend(gb.iter().copied());
                terms.push((wa * wb, g));
            }
        }
        OperatorExpr { terms }
    }
}

/// Operator sign selector for the parameter-dependent composites.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OpSign {
    Plus,
    Minus,
}

// --- q-deformed composites ---------------------------------------------------

/// `qI_1 = D_z T_z T_v T_+ (T_- T_vb)^-1`.
pub fn qi1() -> OperatorExpr {
    let e = &OperatorExpr::dhat(Var::Z) * &OperatorExpr::t(Var::Z);
    let e = &e * &OperatorExpr::t(Var::V);
    let e = &e * &OperatorExpr::t(Var::Plus);
    let e = &e * &OperatorExpr::t_inv(Var::Minus);
    &e * &OperatorExpr::t_inv(Var::Vbar)
}

/// `qI_2 = (q M_z D_v T_-^2 + M_z M_zb D_+ T_- T_vb T_v^-1 + D_- T_-
///          + q^-1 M_zb D_vb - lambda M_v M_zb D_- D_+ T_vb) T_vb T_zb^-1`.
pub fn qi2() -> OperatorExpr {
    let t1 = (&(&OperatorExpr::mhat(Var::Z) * &OperatorExpr::dhat(Var::V))
        * &OperatorExpr::t_pow(Var::Minus, 2))
        .scale(&QScalar::q_pow(1));
    let t2 = &(&(&(&OperatorExpr::mhat(Var::Z) * &OperatorExpr::mhat(Var::Zbar))
        * &OperatorExpr::dhat(Var::Plus))
        * &(&OperatorExpr::t(Var::Minus) * &OperatorExpr::t(Var::Vbar)))
        * &OperatorExpr::t_inv(Var::V);
    let t3 = &OperatorExpr::dhat(Var::Minus) * &OperatorExpr::t(Var::Minus);
    let t4 = (&OperatorExpr::mhat(Var::Zbar) * &OperatorExpr::dhat(Var::Vbar))
        .scale(&QScalar::q_pow(-1));
    let t5 = (&(&(&(&OperatorExpr::mhat(Var::V) * &OperatorExpr::mhat(Var::Zbar))
        * &OperatorExpr::dhat(Var::Minus))
        * &OperatorExpr::dhat(Var::Plus))
        * &OperatorExpr::t(Var::Vbar))
        .scale(&QScalar::lambda());
    let bracket = &(&(&(&t1 + &t2) + &t3) + &t4) - &t5;
    &(&bracket * &OperatorExpr::t(Var::Vbar)) * &OperatorExpr::t_inv(Var::Zbar)
}

/// `qI_3 = D_zb T_zb`.
pub fn qi3() -> OperatorExpr {
    &OperatorExpr::dhat(Var::Zbar) * &OperatorExpr::t(Var::Zbar)
}

/// The q-deformed parameter-dependent operators:
/// `qI^+(n) = 1/2 ([n][n-1] qI1^2 qI2^2 - [2][n-1][n+1] qI1 qI2^2 qI1
///            + [n][n+1] qI2^2 qI1^2)`, and the same with `qI1 -> qI3`
/// for the minus sign.
pub fn qi_pm(sign: OpSign, n: i64) -> OperatorExpr {
    build_qi_pm_weighted(sign, n, &QScalar::one())
}

/// Variant with the middle weight multiplied by `middle_factor`; the
/// untouched operator is `middle_factor = 1`. A deliberately perturbed
/// middle coefficient is used as a negative control by the verification
/// drivers.
pub fn qi_pm_mutated(sign: OpSign, n: i64) -> OperatorExpr {
    build_qi_pm_weighted(sign, n, &QScalar::from_int(2))
}

fn build_qi_pm_weighted(sign: OpSign, n: i64, middle_factor: &QScalar) -> OperatorExpr {
    let i_a = match sign {
        OpSign::Plus => qi1(),
        OpSign::Minus => qi3(),
    };
    let i2sq = qi2().pow(2);
    let a2 = i_a.pow(2);
    let first = (&a2 * &i2sq).scale(&(&qnum(n) * &qnum(n - 1)));
    let middle = (&(&i_a * &i2sq) * &i_a)
        .scale(&(&(&(&qnum(2) * &qnum(n - 1)) * &qnum(n + 1)) * middle_factor));
    let last = (&i2sq * &a2).scale(&(&qnum(n) * &qnum(n + 1)));
    (&(&first - &middle) + &last).scale(&QScalar::half())
}

/// The q-Maxwell-style first-order composites kept in the registry for
/// completeness: `1/2 ([n+2] qI1 qI2 - [n+3] qI2 qI1)` and the `qI3` mirror.
pub fn q_maxwell_pm(sign: OpSign, n: i64) -> OperatorExpr {
    let i_a = match sign {
        OpSign::Plus => qi1(),
        OpSign::Minus => qi3(),
    };
    let first = (&i_a * &qi2()).scale(&qnum(n + 2));
    let second = (&qi2() * &i_a).scale(&qnum(n + 3));
    (&first - &second).scale(&QScalar::half())
}

/// Basis selector for the q-d'Alembert operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DalBasis {
    Hat,
    Tilde,
}

/// The q-d'Alembert operators:
/// hat:   `(q D_- D_+ T_v T_vb - D_v D_vb) T_v T_- T_+ T_vb`;
/// tilde: `(D_- D_+ - q D_v D_vb T_v T_vb) T_- T_+`.
pub fn qdal(basis: DalBasis) -> OperatorExpr {
    match basis {
        DalBasis::Hat => {
            let a = (&(&(&OperatorExpr::dhat(Var::Minus) * &OperatorExpr::dhat(Var::Plus))
                * &OperatorExpr::t(Var::V))
                * &OperatorExpr::t(Var::Vbar))
                .scale(&QScalar::q_pow(1));
            let b = &OperatorExpr::dhat(Var::V) * &OperatorExpr::dhat(Var::Vbar);
            let tail = &(&(&OperatorExpr::t(Var::V) * &OperatorExpr::t(Var::Minus))
                * &OperatorExpr::t(Var::Plus))
                * &OperatorExpr::t(Var::Vbar);
            &(&a - &b) * &tail
        }
        DalBasis::Tilde => {
            let a = &OperatorExpr::dhat(Var::Minus) * &OperatorExpr::dhat(Var::Plus);
            let b = (&(&(&OperatorExpr::dhat(Var::V) * &OperatorExpr::dhat(Var::Vbar))
                * &OperatorExpr::t(Var::V))
                * &OperatorExpr::t(Var::Vbar))
                .scale(&QScalar::q_pow(1));
            let tail = &OperatorExpr::t(Var::Minus) * &OperatorExpr::t(Var::Plus);
            &(&a - &b) * &tail
        }
    }
}

// --- classical (q = 1) operators ----------------------------------------------
//
// Classical operators are the same generator calculus meant to be read at
// q = 1 (evaluate output coefficients with `apply_at_q1`): D becomes the
// partial derivative, M multiplication by the variable.

/// Classical simple-root operators: `I_1 = d_z`,
/// `I_2 = zb z d_+ + z d_v + zb d_vb + d_-`, `I_3 = d_zb`.
pub fn classical_ia(a: u8) -> OperatorExpr {
    match a {
        1 => OperatorExpr::dhat(Var::Z),
        2 => {
            let t1 = &(&OperatorExpr::mhat(Var::Zbar) * &OperatorExpr::mhat(Var::Z))
                * &OperatorExpr::dhat(Var::Plus);
            let t2 = &OperatorExpr::mhat(Var::Z) * &OperatorExpr::dhat(Var::V);
            let t3 = &OperatorExpr::mhat(Var::Zbar) * &OperatorExpr::dhat(Var::Vbar);
            let t4 = OperatorExpr::dhat(Var::Minus);
            &(&(&t1 + &t2) + &t3) + &t4
        }
        3 => OperatorExpr::dhat(Var::Zbar),
        _ => panic!("classical I_a index must be 1, 2 or 3"),
    }
}

/// Classical `I^+-(n) = 1/2 (n(n-1) I_1^2 I_2^2 - 2(n^2-1) I_1 I_2^2 I_1
/// + n(n+1) I_2^2 I_1^2)` (minus: `I_1 -> I_3`).
pub fn classical_i_pm_n(sign: OpSign, n: i64) -> OperatorExpr {
    classical_i_pm_n_weighted(sign, n, &QScalar::one())
}

/// Middle-coefficient-perturbed variant, see [`qi_pm_mutated`].
pub fn classical_i_pm_n_mutated(sign: OpSign, n: i64) -> OperatorExpr {
    classical_i_pm_n_weighted(sign, n, &QScalar::from_int(2))
}

fn classical_i_pm_n_weighted(sign: OpSign, n: i64, middle_factor: &QScalar) -> OperatorExpr {
    let i_a = match sign {
        OpSign::Plus => classical_ia(1),
        OpSign::Minus => classical_ia(3),
    };
    let i2sq = classical_ia(2).pow(2);
    let a2 = i_a.pow(2);
    let first = (&a2 * &i2sq).scale(&QScalar::from_int(n * (n - 1)));
    let middle = (&(&i_a * &i2sq) * &i_a)
        .scale(&(&QScalar::from_int(2 * (n * n - 1)) * middle_factor));
    let last = (&i2sq * &a2).scale(&QScalar::from_int(n * (n + 1)));
    (&(&first - &middle) + &last).scale(&QScalar::half())
}

/// The explicit second-order-in-`d_z` operator `I^+` (and the `zb` mirror),
/// hard-coded from its printed classical form as an independent cross-check
/// of the composite `I^+-(4)`.
pub fn classical_i_pm_explicit(sign: OpSign) -> OperatorExpr {
    let m = OperatorExpr::mhat;
    let d = OperatorExpr::dhat;
    let two = QScalar::from_int(2);

    // Shared first bracket:
    // z^2 zb^2 d+^2 + z^2 dv^2 + zb^2 dvb^2 + d-^2 + 2 z^2 zb dv d+
    // + 2 z zb^2 d+ dvb + 2 z zb (d- d+ + dv dvb) + 2 zb d- dvb + 2 z dv d-
    let z2 = m(Var::Z).pow(2);
    let zb2 = m(Var::Zbar).pow(2);
    let zzb = &m(Var::Z) * &m(Var::Zbar);
    let dp2 = d(Var::Plus).pow(2);
    let dv2 = d(Var::V).pow(2);
    let dvb2 = d(Var::Vbar).pow(2);
    let dm2 = d(Var::Minus).pow(2);
    let mixed = &(&d(Var::Minus) * &d(Var::Plus)) + &(&d(Var::V) * &d(Var::Vbar));
    let first = &(&(&(&(&(&(&(&(&z2 * &zb2) * &dp2) + &(&z2 * &dv2)) + &(&zb2 * &dvb2)) + &dm2)
        + &(&(&z2 * &m(Var::Zbar)) * &(&d(Var::V) * &d(Var::Plus))).scale(&two))
        + &(&(&m(Var::Z) * &zb2) * &(&d(Var::Plus) * &d(Var::Vbar))).scale(&two))
        + &(&zzb * &mixed).scale(&two))
        + &(&(&m(Var::Zbar) * &(&d(Var::Minus) * &d(Var::Vbar))).scale(&two)
            + &(&m(Var::Z) * &(&d(Var::V) * &d(Var::Minus))).scale(&two));

    match sign {
        OpSign::Plus => {
            // - 6 (z zb^2 d+^2 + z dv^2 + 2 z zb dv d+ + zb^2 d+ dvb
            //      + zb (d- d+ + dv dvb) + dv d-) d_z + 12 (zb^2 d+^2 + dv^2
            //      + 2 zb dv d+)
            let second = &(&(&(&(&(&(&m(Var::Z) * &zb2) * &dp2) + &(&m(Var::Z) * &dv2))
                + &(&zzb * &(&d(Var::V) * &d(Var::Plus))).scale(&two))
                + &(&zb2 * &(&d(Var::Plus) * &d(Var::Vbar))))
                + &(&m(Var::Zbar) * &mixed))
                + &(&d(Var::V) * &d(Var::Minus));
            let third = &(&(&zb2 * &dp2) + &dv2)
                + &(&m(Var::Zbar) * &(&d(Var::V) * &d(Var::Plus))).scale(&two);
            let dz2 = d(Var::Z).pow(2);
            &(&(&first * &dz2) - &(&second * &d(Var::Z)).scale(&QScalar::from_int(6)))
                + &third.scale(&QScalar::from_int(12))
        }
        OpSign::Minus => {
            // - 6 (z^2 zb d+^2 + zb dvb^2 + 2 z zb d+ dvb + z^2 dv d+
            //      + z (d- d+ + dv dvb) + d- dvb) d_zb + 12 (z^2 d+^2 + dvb^2
            //      + 2 z d+ dvb)
            let second = &(&(&(&(&(&(&z2 * &m(Var::Zbar)) * &dp2) + &(&m(Var::Zbar) * &dvb2))
                + &(&zzb * &(&d(Var::Plus) * &d(Var::Vbar))).scale(&two))
                + &(&z2 * &(&d(Var::V) * &d(Var::Plus))))
                + &(&m(Var::Z) * &mixed))
                + &(&d(Var::Minus) * &d(Var::Vbar));
            let third = &(&(&z2 * &dp2) + &dvb2)
                + &(&m(Var::Z) * &(&d(Var::Plus) * &d(Var::Vbar))).scale(&two);
            let dzb2 = d(Var::Zbar).pow(2);
            &(&(&first * &dzb2) - &(&second * &d(Var::Zbar)).scale(&QScalar::from_int(6)))
                + &third.scale(&QScalar::from_int(12))
        }
    }
}

/// The classical d'Alembert operator in light-cone variables:
/// `box = d_- d_+ - d_v d_vb`.
pub fn box_op() -> OperatorExpr {
    &(&OperatorExpr::dhat(Var::Minus) * &OperatorExpr::dhat(Var::Plus))
        - &(&OperatorExpr::dhat(Var::V) * &OperatorExpr::dhat(Var::Vbar))
}

/// Resolves the string keys the CLI exposes: `qI1`, `qI2`, `qI3`, `qI+(n)`,
/// `qI-(n)`, `qdal-hat`, `qdal-tilde`, `I+`, `I-`, `I+(n)`, `I-(n)`, `box`,
/// and the q-Maxwell composites `qM+(n)`, `qM-(n)`.
pub fn lookup(name: &str) -> Option<OperatorExpr> {
    let name = name.trim();
    match name {
        "qI1" => return Some(qi1()),
        "qI2" => return Some(qi2()),
        "qI3" => return Some(qi3()),
        "qdal-hat" => return Some(qdal(DalBasis::Hat)),
        "qdal-tilde" => return Some(qdal(DalBasis::Tilde)),
        "I+" => return Some(classical_i_pm_explicit(OpSign::Plus)),
        "I-" => return Some(classical_i_pm_explicit(OpSign::Minus)),
        "box" => return Some(box_op()),
        _ => {}
    }
    let parse_n = |inner: &str| inner.trim().parse::<i64>().ok().filter(|n| *n >= 0);
    if let Some(rest) = name.strip_prefix("qI+(").and_then(|s| s.strip_suffix(')')) {
        return parse_n(rest).map(|n| qi_pm(OpSign::Plus, n));
    }
    if let Some(rest) = name.strip_prefix("qI-(").and_then(|s| s.strip_suffix(')')) {
        return parse_n(rest).map(|n| qi_pm(OpSign::Minus, n));
    }
    if let Some(rest) = name.strip_prefix("I+(").and_then(|s| s.strip_suffix(')')) {
        return parse_n(rest).map(|n| classical_i_pm_n(OpSign::Plus, n));
    }
    if let Some(rest) = name.strip_prefix("I-(").and_then(|s| s.strip_suffix(')')) {
        return parse_n(rest).map(|n| classical_i_pm_n(OpSign::Minus, n));
    }
    if let Some(rest) = name.strip_prefix("qM+(").and_then(|s| s.strip_suffix(')')) {
        return parse_n(rest).map(|n| q_maxwell_pm(OpSign::Plus, n));
    }
    if let Some(rest) = name.strip_prefix("qM-(").and_then(|s| s.strip_suffix(')')) {
        return parse_n(rest).map(|n| q_maxwell_pm(OpSign::Minus, n));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn mono(x: [i32; 4], z: [i32; 2]) -> RepElement {
        RepElement::monomial(x, z)
    }

    fn random_element(rng: &mut StdRng) -> RepElement {
        let mut e = RepElement::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let key = TermKey {
                k: crate::ncalg::NCMonomial::new(
                    rng.gen_range(0..=2),
                    rng.gen_range(0..=2),
                    rng.gen_range(0..=2),
                    rng.gen_range(0..=2),
                ),
                x: [
                    rng.gen_range(0..=3),
                    rng.gen_range(0..=3),
                    rng.gen_range(0..=3),
                    rng.gen_range(0..=3),
                ],
                z: [rng.gen_range(0..=3), rng.gen_range(0..=3)],
            };
            let c = &QScalar::from_int(rng.gen_range(-4..=4)) * &QScalar::q_pow(rng.gen_range(-2..=2));
            e.insert_add(key, c);
        }
        e
    }

    #[test]
    fn scale_is_eigenvalue() {
        // T_v on a v^j-term multiplies by q^j.
        let e = mono([3, 0, 0, 0], [0, 0]);
        let out = OperatorExpr::t(Var::V).apply(&e);
        assert_eq!(out, e.scale(&QScalar::q_pow(3)));
    }

    #[test]
    fn qdiff_matches_its_definition() {
        // D = lambda^-1 M^-1 (T - T^-1), checked termwise on random elements
        // for every variable.
        let mut rng = StdRng::seed_from_u64(3);
        for var in Var::ALL {
            let defined = (&OperatorExpr::shift_pow(var, -1)
                * &(&OperatorExpr::t(var) - &OperatorExpr::t_inv(var)))
                .scale(&QScalar::lambda().inv());
            for _ in 0..40 {
                let e = random_element(&mut rng);
                assert_eq!(
                    OperatorExpr::dhat(var).apply(&e),
                    defined.apply(&e),
                    "var = {var:?}"
                );
            }
        }
    }

    #[test]
    fn qdiff_examples() {
        // D_+ on x+^2 gives [2]_q x+.
        let e = mono([0, 0, 2, 0], [0, 0]);
        let out = OperatorExpr::dhat(Var::Plus).apply(&e);
        assert_eq!(out, mono([0, 0, 1, 0], [0, 0]).scale(&qnum(2)));
        // D_+ on a constant dies.
        assert!(OperatorExpr::dhat(Var::Plus).apply(&RepElement::one()).is_zero());
    }

    #[test]
    fn generator_exchange_relations() {
        let mut rng = StdRng::seed_from_u64(5);
        for var in Var::ALL {
            let tm = &OperatorExpr::t(var) * &OperatorExpr::mhat(var);
            let mt = (&OperatorExpr::mhat(var) * &OperatorExpr::t(var)).scale(&QScalar::q_pow(1));
            for _ in 0..20 {
                let e = random_element(&mut rng);
                assert_eq!(tm.apply(&e), mt.apply(&e), "T M = q M T for {var:?}");
            }
        }
        // Generators of different variables commute.
        for _ in 0..20 {
            let e = random_element(&mut rng);
            let ab = &OperatorExpr::dhat(Var::Z) * &OperatorExpr::t(Var::Plus);
            let ba = &OperatorExpr::t(Var::Plus) * &OperatorExpr::dhat(Var::Z);
            assert_eq!(ab.apply(&e), ba.apply(&e));
            let ab = &OperatorExpr::mhat(Var::V) * &OperatorExpr::dhat(Var::Vbar);
            let ba = &OperatorExpr::dhat(Var::Vbar) * &OperatorExpr::mhat(Var::V);
            assert_eq!(ab.apply(&e), ba.apply(&e));
        }
    }

    #[test]
    fn apply_is_linear() {
        let mut rng = StdRng::seed_from_u64(8);
        let a = qi2();
        let b = qi1();
        for _ in 0..20 {
            let e = random_element(&mut rng);
            let f = random_element(&mut rng);
            assert_eq!((&a + &b).apply(&e), a.apply(&e).add(&b.apply(&e)));
            assert_eq!(a.apply(&e.add(&f)), a.apply(&e).add(&a.apply(&f)));
        }
        assert_eq!(OperatorExpr::identity().apply(&mono([1, 2, 0, 0], [1, 0])), mono([1, 2, 0, 0], [1, 0]));
        assert!(qi2().apply(&RepElement::zero()).is_zero());
    }

    #[test]
    fn qi3_on_zbar_squared() {
        // qI3 = D_zb T_zb on zb^2: T_zb gives q^2, D_zb gives [2]_q zb.
        let e = mono([0; 4], [0, 2]);
        let out = qi3().apply(&e);
        assert_eq!(
            out,
            mono([0; 4], [0, 1]).scale(&(&qnum(2) * &QScalar::q_pow(2)))
        );
    }

    #[test]
    fn qi_operators_reduce_to_classical_at_q1() {
        // On a spanning set of monomials the q = 1 limits must match the
        // classical simple-root operators.
        let classical = [classical_ia(1), classical_ia(2), classical_ia(3)];
        let deformed = [qi1(), qi2(), qi3()];
        for x0 in 0..=2 {
            for x3 in 0..=2 {
                for p in 0..=2 {
                    for pb in 0..=2 {
                        let e = mono([x0, 1, x3, 1], [p, pb]);
                        for (qop, cop) in deformed.iter().zip(classical.iter()) {
                            let got = qop.apply_at_q1(&e).unwrap();
                            let want = cop.apply_at_q1(&e).unwrap();
                            assert_eq!(got, want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn qi_pm_coefficient_structure() {
        // n = 1: middle coefficient [2][0][2] = 0, so only two summand
        // blocks survive.
        let op = qi_pm(OpSign::Plus, 1);
        let direct = {
            let i2sq = qi2().pow(2);
            let a2 = qi1().pow(2);
            let first = (&a2 * &i2sq).scale(&(&qnum(1) * &qnum(0)));
            let last = (&i2sq * &a2).scale(&(&qnum(1) * &qnum(2)));
            (&first + &last).scale(&QScalar::half())
        };
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..10 {
            let e = random_element(&mut rng);
            assert_eq!(op.apply(&e), direct.apply(&e));
        }
        // n = 4 at q = 1: weights (12, -30, 20)/2 from n(n-1), 2(n^2-1),
        // n(n+1).
        assert_eq!(
            (&qnum(4) * &qnum(3)).eval_q1().unwrap(),
            GaussRat::from_int(12)
        );
        assert_eq!(
            (&(&qnum(2) * &qnum(3)) * &qnum(5)).eval_q1().unwrap(),
            GaussRat::from_int(30)
        );
        assert_eq!(
            (&qnum(4) * &qnum(5)).eval_q1().unwrap(),
            GaussRat::from_int(20)
        );
    }

    #[test]
    fn qdal_reduces_to_box_at_q1() {
        for basis in [DalBasis::Hat, DalBasis::Tilde] {
            let op = qdal(basis);
            for j in 0..=2 {
                for n in 0..=2 {
                    for l in 0..=2 {
                        for m in 0..=2 {
                            let e = mono([j, n, l, m], [0, 0]);
                            let got = op.apply_at_q1(&e).unwrap();
                            let want = box_op().apply_at_q1(&e).unwrap();
                            assert_eq!(got, want, "basis {basis:?} on {:?}", [j, n, l, m]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classical_identity_i_pm_equals_i_pm4_sample() {
        // Spot check here; the exhaustive degree sweep lives in the
        // acceptance suite.
        let iplus = classical_i_pm_explicit(OpSign::Plus);
        let iplus4 = classical_i_pm_n(OpSign::Plus, 4);
        let e = mono([1, 0, 2, 0], [4, 1]);
        assert_eq!(
            iplus.apply_at_q1(&e).unwrap(),
            iplus4.apply_at_q1(&e).unwrap()
        );
        let iminus = classical_i_pm_explicit(OpSign::Minus);
        let iminus4 = classical_i_pm_n(OpSign::Minus, 4);
        let e = mono([0, 1, 1, 2], [1, 4]);
        assert_eq!(
            iminus.apply_at_q1(&e).unwrap(),
            iminus4.apply_at_q1(&e).unwrap()
        );
    }

    #[test]
    fn registry_resolves_names() {
        for name in [
            "qI1", "qI2", "qI3", "qI+(4)", "qI-(2)", "qdal-hat", "qdal-tilde", "I+", "I-",
            "I+(4)", "I-(2)", "box", "qM+(0)", "qM-(1)",
        ] {
            assert!(lookup(name).is_some(), "{name} should resolve");
        }
        assert!(lookup("qI+(x)").is_none());
        assert!(lookup("nope").is_none());
    }
}
