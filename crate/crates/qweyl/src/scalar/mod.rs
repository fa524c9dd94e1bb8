//! Exact coefficient field for the whole calculus: rational functions in the
//! deformation parameter `q` (and optional auxiliary units modelling symbolic
//! exponents like `q^B`) over the Gaussian rationals, together with the
//! q-combinatorics built on top of it ([`qnum`], [`qfactorial`],
//! [`inv_gamma_q`]).
//!
//! Every value is kept in a canonical normalized form, so equality (and in
//! particular equality to zero) is a structural check.

mod gauss;
mod poly;

pub use gauss::GaussRat;
pub use poly::{var_name, ExpVec, Poly, VAR_Q};

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("q-factorial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("denominator vanishes at q = 1 (and all units = 1)")]
    PoleAtOne,
    #[error("division by zero scalar")]
    DivisionByZero,
}

/// Exact rational function in `q` and the auxiliary units, over the Gaussian
/// rationals.
///
/// Canonical form: the numerator and denominator share no nonconstant factor,
/// the denominator is a genuine polynomial (minimum exponent zero in every
/// variable) with leading coefficient 1, and a zero numerator forces a unit
/// denominator. The numerator may be Laurent (monomials are invertible).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QScalar {
    num: Poly,
    den: Poly,
}

impl QScalar {
    fn make(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut s = QScalar { num, den };
        s.normalize();
        s
    }

    /// Finishes a fraction already known to be reduced: only normalizes the
    /// zero case and the denominator's leading coefficient.
    fn monicized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return QScalar::zero();
        }
        debug_assert!(den.min_exps().is_unit(), "denominator must be a polynomial");
        if den.is_one() {
            return QScalar {
                num,
                den: Poly::one(),
            };
        }
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            QScalar { num, den }
        } else {
            let inv = lc.inv();
            QScalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if !self.den.is_one() {
            // Shift the denominator's monomial content into the numerator.
            let dm = self.den.min_exps();
            if !dm.is_unit() {
                self.den = self.den.mul_monomial(&dm.inverted(), &GaussRat::one());
                self.num = self.num.mul_monomial(&dm.inverted(), &GaussRat::one());
            }
            let g = Poly::gcd(&self.num, &self.den);
            if !g.is_one() {
                let nm = self.num.min_exps();
                let shifted = self.num.mul_monomial(&nm.inverted(), &GaussRat::one());
                let reduced = shifted.divide_exact(&g).expect("gcd divides numerator");
                self.num = reduced.mul_monomial(&nm, &GaussRat::one());
                self.den = self.den.divide_exact(&g).expect("gcd divides denominator");
            }
            let lc = self.den.leading().expect("nonzero denominator").1.clone();
            if !lc.is_one() {
                let inv = lc.inv();
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    pub fn zero() -> Self {
        QScalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        QScalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        QScalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_gauss(GaussRat::from_ratio(p, q))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_gauss(GaussRat::i())
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i32) -> Self {
        QScalar {
            num: Poly::var_pow(VAR_Q, k),
            den: Poly::one(),
        }
    }

    /// `u^k` for auxiliary unit number `unit` (1-based index into the
    /// session's unit list).
    pub fn unit_pow(unit: usize, k: i32) -> Self {
        assert!(unit >= 1, "unit indices are 1-based");
        QScalar {
            num: Poly::var_pow(unit, k),
            den: Poly::one(),
        }
    }

    /// `lambda = q - q^-1`.
    pub fn lambda() -> Self {
        &Self::q_pow(1) - &Self::q_pow(-1)
    }

    pub fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    pub fn from_fraction(num: Poly, den: Poly) -> Self {
        Self::make(num, den)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero scalar")
    }

    pub fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::make(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: i32) -> Self {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The bar conjugation: `q -> q^-1`, every unit `u -> u^-1`, and complex
    /// conjugation of all coefficients. An involution.
    pub fn conj(&self) -> Self {
        Self::make(self.num.conj_invert(), self.den.conj_invert())
    }

    /// Exact substitution `q -> 1`, all units `-> 1`.
    pub fn eval_q1(&self) -> Result<GaussRat, ScalarError> {
        let d = self.den.eval_ones();
        if d.is_zero() {
            return Err(ScalarError::PoleAtOne);
        }
        Ok(&self.num.eval_ones() / &d)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QScalar::make(self.num.add(&rhs.num), self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): ( a d' + c b' ) / (g b' d'); the only
        // common factor left divides g, which keeps every gcd small.
        let g = Poly::gcd(&self.den, &rhs.den);
        if g.is_one() {
            // coprime denominators: the sum is already reduced
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            let den = self.den.mul(&rhs.den);
            return QScalar::monicized(num, den);
        }
        let b1 = self.den.divide_exact(&g).expect("gcd divides");
        let d1 = rhs.den.divide_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&rhs.num.mul(&b1));
        if num.is_zero() {
            return QScalar::zero();
        }
        let nm = num.min_exps();
        let shifted = num.mul_monomial(&nm.inverted(), &GaussRat::one());
        let h = Poly::gcd(&shifted, &g);
        if h.is_one() {
            QScalar::monicized(num, self.den.mul(&d1))
        } else {
            let num = shifted
                .divide_exact(&h)
                .expect("h divides")
                .mul_monomial(&nm, &GaussRat::one());
            let den = self
                .den
                .divide_exact(&h)
                .expect("h divides denominator")
                .mul(&d1);
            QScalar::monicized(num, den)
        }
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar {
                num: self.num.mul(&rhs.num),
                den: Poly::one(),
            };
        }
        // Cross-cancellation: with both inputs reduced, the only common
        // factors pair each numerator with the opposite denominator.
        let cancel = |num: &Poly, den: &Poly| -> (Poly, Poly) {
            if den.is_one() {
                return (num.clone(), Poly::one());
            }
            let nm = num.min_exps();
            let shifted = num.mul_monomial(&nm.inverted(), &GaussRat::one());
            let g = Poly::gcd(&shifted, den);
            if g.is_one() {
                (num.clone(), den.clone())
            } else {
                (
                    shifted
                        .divide_exact(&g)
                        .expect("gcd divides")
                        .mul_monomial(&nm, &GaussRat::one()),
                    den.divide_exact(&g).expect("gcd divides"),
                )
            }
        };
        let (na, db) = cancel(&self.num, &rhs.den);
        let (nb, da) = cancel(&rhs.num, &self.den);
        QScalar::monicized(na.mul(&nb), da.mul(&db))
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        self * &rhs.inv()
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident, $method:ident;)*) => {
        $(
            impl $trait for QScalar {
                type Output = QScalar;
                fn $method(self, rhs: QScalar) -> QScalar {
                    $trait::$method(&self, &rhs)
                }
            }
            impl $trait<&QScalar> for QScalar {
                type Output = QScalar;
                fn $method(self, rhs: &QScalar) -> QScalar {
                    $trait::$method(&self, rhs)
                }
            }
        )*
    };
}
owned_ops! { Add, add; Sub, sub; Mul, mul; Div, div; }

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.term_count() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// The q-integer `[n]_q = (q^n - q^-n)/(q - q^-1)`, computed in fully
/// cancelled Laurent form. Total: `[0]_q = 0` and `[-n]_q = -[n]_q`.
pub fn qnum(n: i64) -> QScalar {
    if n == 0 {
        return QScalar::zero();
    }
    if n < 0 {
        return -&qnum(-n);
    }
    // q^(n-1) + q^(n-3) + ... + q^(1-n)
    let mut p = Poly::zero();
    let mut k = n - 1;
    while k >= -(n - 1) {
        p = p.add(&Poly::var_pow(VAR_Q, k as i32));
        k -= 2;
    }
    QScalar {
        num: p,
        den: Poly::one(),
    }
}

/// `[n]_q! = [n]_q [n-1]_q ... [1]_q`, with `[0]_q! = 1`.
pub fn qfactorial(n: i64) -> Result<QScalar, ScalarError> {
    if n < 0 {
        return Err(ScalarError::NegativeFactorial(n));
    }
    let mut acc = QScalar::one();
    for k in 1..=n {
        acc = &acc * &qnum(k);
    }
    Ok(acc)
}

/// `1/Gamma_q(p)`: equals `1/[p-1]_q!` for `p >= 1` and `0` for `p <= 0`.
/// Total by construction; the vanishing branch is what truncates the
/// plane-wave support sums.
pub fn inv_gamma_q(p: i64) -> QScalar {
    if p <= 0 {
        return QScalar::zero();
    }
    qfactorial(p - 1).expect("p - 1 >= 0").inv()
}

// --- JSON serialization -----------------------------------------------------
//
// Wire form: {"num": [term...], "den": [term...]} with each term
// {"coeff": [re_num, re_den, im_num, im_den], "powers": {"q": n, "u1": k, ...}}.
// The four coefficient components are decimal strings so round trips stay
// lossless for arbitrarily large integers.

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: [String; 4],
    powers: std::collections::BTreeMap<String, i32>,
}

fn poly_to_json(p: &Poly) -> Vec<TermJson> {
    p.terms()
        .map(|(e, c)| {
            let mut powers = std::collections::BTreeMap::new();
            powers.insert("q".to_string(), e.get(VAR_Q));
            for (i, exp) in e.iter() {
                if i != VAR_Q {
                    powers.insert(var_name(i), exp);
                }
            }
            TermJson {
                coeff: [
                    c.re().numer().to_string(),
                    c.re().denom().to_string(),
                    c.im().numer().to_string(),
                    c.im().denom().to_string(),
                ],
                powers,
            }
        })
        .collect()
}

fn poly_from_json(terms: &[TermJson]) -> Result<Poly, String> {
    use num::{BigInt, BigRational};
    let mut p = Poly::zero();
    for t in terms {
        let parse = |s: &str| -> Result<BigInt, String> {
            s.parse::<BigInt>().map_err(|e| format!("bad integer: {e}"))
        };
        let re_d = parse(&t.coeff[1])?;
        let im_d = parse(&t.coeff[3])?;
        if re_d == BigInt::from(0) || im_d == BigInt::from(0) {
            return Err("zero denominator in coefficient".into());
        }
        let c = GaussRat::new(
            BigRational::new(parse(&t.coeff[0])?, re_d),
            BigRational::new(parse(&t.coeff[2])?, im_d),
        );
        let mut exps = vec![0i32; 1];
        for (name, &e) in &t.powers {
            let var = if name == "q" {
                VAR_Q
            } else if let Some(idx) = name.strip_prefix('u').and_then(|s| s.parse::<usize>().ok())
            {
                idx
            } else {
                return Err(format!("unknown variable {name}"));
            };
            if exps.len() <= var {
                exps.resize(var + 1, 0);
            }
            exps[var] = e;
        }
        p = p.add(&Poly::monomial(ExpVec::of(&exps), c));
    }
    Ok(p)
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            num: Vec<TermJson>,
            den: Vec<TermJson>,
        }
        Wire {
            num: poly_to_json(&self.num),
            den: poly_to_json(&self.den),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            num: Vec<TermJson>,
            den: Vec<TermJson>,
        }
        let w = Wire::deserialize(deserializer)?;
        let num = poly_from_json(&w.num).map_err(D::Error::custom)?;
        let den = poly_from_json(&w.den).map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(QScalar::make(num, den))
    }
}
