//! The noncommutative quartet algebra shared by the q-Minkowski coordinates
//! `(v, x-, x+, vb)` and the momenta `(kv, k-, k+, kvb)`.
//!
//! Relations (`lambda = q - q^-1`):
//!
//! ```text
//! x+- v  = q^{+-1} v  x+-      x+ x- - x- x+ = lambda v vb
//! x+- vb = q^{+-1} vb x+-      vb v = v vb
//! ```
//!
//! Normal form fixes the order `v, x-, x+, vb`. The same relations govern the
//! momentum quartet; the momentum copy additionally carries the q-cone
//! quotient `k- k+ = q^-1 kv kvb` (see [`NCElement::cone_reduce`]).

mod parse;

pub use parse::{parse_word, Alphabet, ParseError};

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::QScalar;

/// One generator of the quartet, in normal-form order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Letter {
    V,
    Minus,
    Plus,
    Vbar,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::V, Letter::Minus, Letter::Plus, Letter::Vbar];

    pub fn name(self, alphabet: Alphabet) -> &'static str {
        match (alphabet, self) {
            (Alphabet::Coordinate, Letter::V) => "v",
            (Alphabet::Coordinate, Letter::Minus) => "x-",
            (Alphabet::Coordinate, Letter::Plus) => "x+",
            (Alphabet::Coordinate, Letter::Vbar) => "vb",
            (Alphabet::Momentum, Letter::V) => "kv",
            (Alphabet::Momentum, Letter::Minus) => "k-",
            (Alphabet::Momentum, Letter::Plus) => "k+",
            (Alphabet::Momentum, Letter::Vbar) => "kvb",
        }
    }
}

/// A raw word in the generators with a scalar coefficient; not necessarily
/// normal-ordered.
#[derive(Clone, Debug)]
pub struct NCWord {
    pub coeff: QScalar,
    pub letters: Vec<Letter>,
}

impl NCWord {
    pub fn new(coeff: QScalar, letters: Vec<Letter>) -> Self {
        NCWord { coeff, letters }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        NCWord {
            coeff: QScalar::one(),
            letters,
        }
    }
}

/// Normal-ordered monomial `v^a x-^b x+^c vb^d` (or its momentum twin).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Default)]
pub struct NCMonomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl NCMonomial {
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        NCMonomial { a, b, c, d }
    }

    pub fn one() -> Self {
        NCMonomial::default()
    }

    pub fn gen(letter: Letter) -> Self {
        match letter {
            Letter::V => NCMonomial::new(1, 0, 0, 0),
            Letter::Minus => NCMonomial::new(0, 1, 0, 0),
            Letter::Plus => NCMonomial::new(0, 0, 1, 0),
            Letter::Vbar => NCMonomial::new(0, 0, 0, 1),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == NCMonomial::one()
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c + self.d
    }

    pub fn exp(&self, l: Letter) -> u32 {
        match l {
            Letter::V => self.a,
            Letter::Minus => self.b,
            Letter::Plus => self.c,
            Letter::Vbar => self.d,
        }
    }

    /// The word `v^a x-^b x+^c vb^d` spelled out letter by letter.
    pub fn letters(&self) -> Vec<Letter> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (l, n) in [
            (Letter::V, self.a),
            (Letter::Minus, self.b),
            (Letter::Plus, self.c),
            (Letter::Vbar, self.d),
        ] {
            w.extend(std::iter::repeat(l).take(n as usize));
        }
        w
    }
}

/// Finite sum of normal-ordered monomials with scalar coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NCElement {
    terms: BTreeMap<NCMonomial, QScalar>,
}

/// Pivot-selection strategy for the word rewriter; the relations are
/// confluent so all strategies agree on the normal form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    LeftmostInnermost,
    RightmostOutermost,
}

impl NCElement {
    pub fn zero() -> Self {
        NCElement::default()
    }

    pub fn one() -> Self {
        NCElement::monomial(NCMonomial::one(), QScalar::one())
    }

    pub fn gen(letter: Letter) -> Self {
        NCElement::monomial(NCMonomial::gen(letter), QScalar::one())
    }

    pub fn monomial(m: NCMonomial, coeff: QScalar) -> Self {
        let mut e = NCElement::zero();
        e.insert_add(m, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCMonomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, m: &NCMonomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_else(QScalar::zero)
    }

    fn insert_add(&mut self, m: NCMonomial, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCElement) -> NCElement {
        self.add(&other.scale(&-&QScalar::one()))
    }

    pub fn scale(&self, c: &QScalar) -> NCElement {
        if c.is_zero() {
            return NCElement::zero();
        }
        NCElement {
            terms: self
                .terms
                .iter()
                .map(|(m, cc)| (*m, cc * c))
                .collect(),
        }
    }

    /// Product in the quotient algebra: left letters are pushed through the
    /// right factor one at a time using the commutation relations. This is
    /// the structured route; the word rewriter [`normal_order`] is the
    /// independent one.
    pub fn mul(&self, other: &NCElement) -> NCElement {
        let mut out = NCElement::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = mono_mul(*ma, *mb);
                for (m, c) in &prod.terms {
                    out.insert_add(*m, &(ca * cb) * c);
                }
            }
        }
        out
    }

    /// The anti-linear anti-involution: reverses words, swaps `v <-> vb`,
    /// fixes `x+-`, and bar-conjugates every coefficient (`q -> q^-1`).
    pub fn omega(&self) -> NCElement {
        let mut out = NCElement::zero();
        for (m, c) in &self.terms {
            // reverse(v^a x-^b x+^c vb^d) with v <-> vb = v^d x+^c x-^b vb^a
            let img = NCElement::monomial(NCMonomial::new(m.d, 0, 0, 0), c.conj())
                .mul(&NCElement::monomial(
                    NCMonomial::new(0, 0, m.c, 0),
                    QScalar::one(),
                ))
                .mul(&NCElement::monomial(
                    NCMonomial::new(0, m.b, 0, 0),
                    QScalar::one(),
                ))
                .mul(&NCElement::monomial(
                    NCMonomial::new(0, 0, 0, m.a),
                    QScalar::one(),
                ));
            out = out.add(&img);
        }
        out
    }

    /// Canonical representative modulo the momentum q-cone ideal: every
    /// mixed `k- k+` pair is replaced via `k- k+ = q^-1 kv kvb` until
    /// `min(b, c) = 0`. Total degree of each monomial is preserved.
    pub fn cone_reduce(&self) -> NCElement {
        let mut out = NCElement::zero();
        for (m, c) in &self.terms {
            let (m2, factor) = cone_reduce_monomial(*m);
            out.insert_add(m2, c * &factor);
        }
        out
    }

    /// Substitutes `q = 1` (and all units = 1) in every coefficient,
    /// returning the commutative-limit element.
    pub fn eval_q1(&self) -> Result<NCElement, crate::scalar::ScalarError> {
        let mut out = NCElement::zero();
        for (m, c) in &self.terms {
            out.insert_add(*m, QScalar::from_gauss(c.eval_q1()?));
        }
        Ok(out)
    }

    pub fn display(&self, alphabet: Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            if !c.is_one() || m.is_one() {
                factors.push(format!("{c}"));
            }
            for (l, n) in [
                (Letter::V, m.a),
                (Letter::Minus, m.b),
                (Letter::Plus, m.c),
                (Letter::Vbar, m.d),
            ] {
                if n == 1 {
                    factors.push(l.name(alphabet).to_string());
                } else if n > 1 {
                    factors.push(format!("{}^{}", l.name(alphabet), n));
                }
            }
            parts.push(factors.join(" "));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for NCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(Alphabet::Coordinate))
    }
}

/// Single cone step on a monomial: `(a,b,c,d) -> q^{1-b-c} (a+1,b-1,c-1,d+1)`,
/// iterated until no mixed pair remains.
fn cone_reduce_monomial(mut m: NCMonomial) -> (NCMonomial, QScalar) {
    let mut factor = QScalar::one();
    while m.b > 0 && m.c > 0 {
        let shift = 1i32 - m.b as i32 - m.c as i32;
        factor = &factor * &QScalar::q_pow(shift);
        m = NCMonomial::new(m.a + 1, m.b - 1, m.c - 1, m.d + 1);
    }
    (m, factor)
}

/// Left-multiplies a normal-ordered monomial by a single generator,
/// producing the normal form directly from the commutation relations.
fn left_mul_letter(l: Letter, m: NCMonomial, coeff: &QScalar) -> NCElement {
    match l {
        Letter::V => NCElement::monomial(NCMonomial::new(m.a + 1, m.b, m.c, m.d), coeff.clone()),
        // x- v^a = q^-a v^a x-
        Letter::Minus => NCElement::monomial(
            NCMonomial::new(m.a, m.b + 1, m.c, m.d),
            coeff * &QScalar::q_pow(-(m.a as i32)),
        ),
        // vb passes x-^b (factor q^b) and x+^c (factor q^-c)
        Letter::Vbar => NCElement::monomial(
            NCMonomial::new(m.a, m.b, m.c, m.d + 1),
            coeff * &QScalar::q_pow(m.b as i32 - m.c as i32),
        ),
        // x+ v^a = q^a v^a x+, then x+ has to cross the x- block; prepending
        // the v^a block afterwards is free since v is the lowest letter.
        Letter::Plus => {
            let lead = coeff * &QScalar::q_pow(m.a as i32);
            plus_through_minus(m.b, m.c, m.d)
                .terms
                .iter()
                .fold(NCElement::zero(), |mut acc, (mm, cc)| {
                    acc.insert_add(NCMonomial::new(m.a + mm.a, mm.b, mm.c, mm.d), &lead * cc);
                    acc
                })
        }
    }
}

/// Normal form of `x+ x-^b x+^c vb^d`, by the recursion
/// `x+ x-^b = x- (x+ x-^{b-1}) + lambda q^{b-1} v x-^{b-1} vb`.
fn plus_through_minus(b: u32, c: u32, d: u32) -> NCElement {
    if b == 0 {
        return NCElement::monomial(NCMonomial::new(0, 0, c + 1, d), QScalar::one());
    }
    let rec = plus_through_minus(b - 1, c, d);
    let mut out = NCElement::zero();
    // x- times each normal term picks up q^-a from crossing the v block.
    for (m, cc) in rec.terms() {
        out.insert_add(
            NCMonomial::new(m.a, m.b + 1, m.c, m.d),
            cc * &QScalar::q_pow(-(m.a as i32)),
        );
    }
    // lambda q^{b-1} v x-^{b-1} x+^c vb^{d+1}, with vb crossing x+^c.
    let lam = &QScalar::lambda() * &QScalar::q_pow(b as i32 - 1 - c as i32);
    out.insert_add(NCMonomial::new(1, b - 1, c, d + 1), lam);
    out
}

/// Product of two normal-ordered monomials as an element of the algebra.
pub fn mono_mul(m1: NCMonomial, m2: NCMonomial) -> NCElement {
    let mut acc = NCElement::monomial(m2, QScalar::one());
    // Prepend m1's letters right to left so the invariant "acc is normal
    // ordered" holds at every step.
    let mut letters = m1.letters();
    letters.reverse();
    for l in letters {
        let mut next = NCElement::zero();
        for (m, c) in acc.terms() {
            next = next.add(&left_mul_letter(l, *m, c));
        }
        acc = next;
    }
    acc
}

/// Normal-orders a raw word by rewriting out-of-order adjacent pairs, with a
/// selectable pivot strategy. Independent of the structured product; used as
/// the ground-truth oracle and by the word parser.
pub fn normal_order(word: &NCWord, strategy: Strategy) -> NCElement {
    normal_order_with(word, strategy, &QScalar::lambda(), &mut 0)
}

/// Word rewriter with an explicit commutator scalar in place of `lambda`
/// (used by the cone-consistency check) and a step counter (used by the
/// termination tests).
pub fn normal_order_with(
    word: &NCWord,
    strategy: Strategy,
    commutator: &QScalar,
    steps: &mut u64,
) -> NCElement {
    let mut out = NCElement::zero();
    let mut stack = vec![(word.coeff.clone(), word.letters.clone())];
    while let Some((coeff, letters)) = stack.pop() {
        if coeff.is_zero() {
            continue;
        }
        let pivot = find_pivot(&letters, strategy);
        match pivot {
            None => {
                let mut mono = NCMonomial::one();
                for l in &letters {
                    match l {
                        Letter::V => mono.a += 1,
                        Letter::Minus => mono.b += 1,
                        Letter::Plus => mono.c += 1,
                        Letter::Vbar => mono.d += 1,
                    }
                }
                out.insert_add(mono, coeff);
            }
            Some(i) => {
                *steps += 1;
                let (l, r) = (letters[i], letters[i + 1]);
                let mut swapped = letters.clone();
                swapped.swap(i, i + 1);
                match (l, r) {
                    (Letter::Minus, Letter::V) => {
                        stack.push((&coeff * &QScalar::q_pow(-1), swapped))
                    }
                    (Letter::Plus, Letter::V) => {
                        stack.push((&coeff * &QScalar::q_pow(1), swapped))
                    }
                    (Letter::Vbar, Letter::V) => stack.push((coeff, swapped)),
                    (Letter::Vbar, Letter::Minus) => {
                        stack.push((&coeff * &QScalar::q_pow(1), swapped))
                    }
                    (Letter::Vbar, Letter::Plus) => {
                        stack.push((&coeff * &QScalar::q_pow(-1), swapped))
                    }
                    (Letter::Plus, Letter::Minus) => {
                        // x+ x- = x- x+ + commutator * v vb
                        let mut split = letters.clone();
                        split[i] = Letter::V;
                        split[i + 1] = Letter::Vbar;
                        stack.push((coeff.clone(), swapped));
                        stack.push((&coeff * commutator, split));
                    }
                    _ => unreachable!("pivot is out of order"),
                }
            }
        }
    }
    out
}

fn find_pivot(letters: &[Letter], strategy: Strategy) -> Option<usize> {
    let reducible = |i: usize| letters[i] > letters[i + 1];
    if letters.len() < 2 {
        return None;
    }
    match strategy {
        Strategy::LeftmostInnermost => (0..letters.len() - 1).find(|&i| reducible(i)),
        Strategy::RightmostOutermost => (0..letters.len() - 1).rev().find(|&i| reducible(i)),
    }
}

/// Report from the cone-presentation consistency check.
#[derive(Clone, Debug)]
pub struct ConeConsistency {
    pub pass: bool,
    /// Difference of the two normal-ordered presentations; empty iff `pass`.
    pub witness: NCElement,
}

/// Checks that the two printed presentations of the momentum q-cone,
/// `k- k+ - q^-1 kv kvb` and `k+ k- - q kv kvb`, normal-order to the same
/// element when the algebra's commutator is `commutator * kv kvb`. With the
/// true `lambda` they agree; any other commutator yields a witness.
pub fn cone_check_consistency(commutator: &QScalar) -> ConeConsistency {
    let kvkvb = NCMonomial::new(1, 0, 0, 1);
    let mut steps = 0;
    let first = normal_order_with(
        &NCWord::from_letters(vec![Letter::Minus, Letter::Plus]),
        Strategy::LeftmostInnermost,
        commutator,
        &mut steps,
    )
    .sub(&NCElement::monomial(kvkvb, QScalar::q_pow(-1)));
    let second = normal_order_with(
        &NCWord::from_letters(vec![Letter::Plus, Letter::Minus]),
        Strategy::LeftmostInnermost,
        commutator,
        &mut steps,
    )
    .sub(&NCElement::monomial(kvkvb, QScalar::q_pow(1)));
    let witness = first.sub(&second);
    ConeConsistency {
        pass: witness.is_zero(),
        witness,
    }
}
