//! Sparse multivariate Laurent polynomials over the Gaussian rationals.
//!
//! Variable 0 is always the deformation parameter `q`; variables 1, 2, ...
//! are auxiliary commuting units (used to model symbolic exponents such as
//! `q^B`). Exponents are signed, so monomials are invertible.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::gauss::GaussRat;

/// Index of the deformation parameter in exponent vectors.
pub const VAR_Q: usize = 0;

/// Exponent vector with trailing zeros trimmed. Ordering pads with zeros,
/// so `[1]` and `[1, 0]` compare equal.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ExpVec(SmallVec<[i32; 3]>);

impl ExpVec {
    pub fn unit() -> Self {
        ExpVec(SmallVec::new())
    }

    pub fn of(exps: &[i32]) -> Self {
        let mut v = SmallVec::from_slice(exps);
        while v.last() == Some(&0) {
            v.pop();
        }
        ExpVec(v)
    }

    pub fn single(var: usize, exp: i32) -> Self {
        if exp == 0 {
            return ExpVec::unit();
        }
        let mut v = SmallVec::new();
        v.resize(var + 1, 0);
        v[var] = exp;
        ExpVec(v)
    }

    pub fn get(&self, var: usize) -> i32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &e)| (e != 0).then_some((i, e)))
    }

    fn combine(&self, other: &ExpVec, f: impl Fn(i32, i32) -> i32) -> ExpVec {
        let n = self.0.len().max(other.0.len());
        let mut v = SmallVec::with_capacity(n);
        for i in 0..n {
            v.push(f(self.get(i), other.get(i)));
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        ExpVec(v)
    }

    pub fn mul(&self, other: &ExpVec) -> ExpVec {
        self.combine(other, |a, b| a + b)
    }

    pub fn div(&self, other: &ExpVec) -> ExpVec {
        self.combine(other, |a, b| a - b)
    }

    /// Negates every exponent (the substitution `x -> 1/x` for all vars).
    pub fn inverted(&self) -> ExpVec {
        let mut v = self.0.clone();
        for e in v.iter_mut() {
            *e = -*e;
        }
        ExpVec(v)
    }

    fn with(&self, var: usize, exp: i32) -> ExpVec {
        let mut v = self.0.clone();
        if v.len() <= var {
            v.resize(var + 1, 0);
        }
        v[var] = exp;
        while v.last() == Some(&0) {
            v.pop();
        }
        ExpVec(v)
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial: a finite map from exponent vectors to
/// nonzero Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    terms: BTreeMap<ExpVec, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ExpVec::unit(), c);
        }
        Poly { terms }
    }

    pub fn monomial(exps: ExpVec, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { terms }
    }

    pub fn var_pow(var: usize, exp: i32) -> Self {
        Poly::monomial(ExpVec::single(var, exp), GaussRat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ExpVec::unit())
                .map(GaussRat::is_one)
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(ExpVec::is_unit)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &GaussRat)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, exps: ExpVec, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert_add(ea.mul(eb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, exps: &ExpVec, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, cc)| (e.mul(exps), cc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        self.mul_monomial(&ExpVec::unit(), c)
    }

    /// Highest variable index that actually occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|e| e.iter().map(|(i, _)| i).max())
            .max()
    }

    pub fn degree_in(&self, var: usize) -> Option<(i32, i32)> {
        let mut res: Option<(i32, i32)> = None;
        for e in self.terms.keys() {
            let d = e.get(var);
            res = Some(match res {
                None => (d, d),
                Some((lo, hi)) => (lo.min(d), hi.max(d)),
            });
        }
        res
    }

    /// Per-variable minimum exponents over all terms (the monomial content
    /// of a Laurent polynomial). Zero polynomial gives the unit.
    pub fn min_exps(&self) -> ExpVec {
        let mut iter = self.terms.keys();
        let first = match iter.next() {
            None => return ExpVec::unit(),
            Some(e) => e.clone(),
        };
        iter.fold(first, |acc, e| acc.combine(e, |a, b| a.min(b)))
    }

    /// Substitute 1 for every variable (sum of coefficients).
    pub fn eval_ones(&self) -> GaussRat {
        self.terms
            .values()
            .fold(GaussRat::zero(), |acc, c| &acc + c)
    }

    /// Applies `x -> 1/x` to every variable and conjugates coefficients
    /// (the bar operation on coefficients).
    pub fn conj_invert(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.inverted(), c.conj()))
                .collect(),
        }
    }

    /// Leading term under the padded-lex exponent order.
    pub fn leading(&self) -> Option<(&ExpVec, &GaussRat)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    fn coeff_in(&self, var: usize, k: i32) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e.get(var) == k {
                out.insert_add(e.with(var, 0), c.clone());
            }
        }
        out
    }

    /// Exact multivariate division; `None` if `other` does not divide.
    /// Both inputs must have nonnegative exponents.
    pub fn divide_exact(&self, other: &Poly) -> Option<Poly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let (lt_e, lt_c) = {
            let (e, c) = other.leading().unwrap();
            (e.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (re, rc) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            let qe = re.div(&lt_e);
            if qe.iter().any(|(_, x)| x < 0) {
                return None;
            }
            let qc = &rc / &lt_c;
            let qterm = Poly::monomial(qe, qc);
            rem = rem.sub(&qterm.mul(other));
            quot = quot.add(&qterm);
        }
        Some(quot)
    }

    /// GCD of two polynomials with nonnegative exponents, normalized to be
    /// monic with zero minimum exponent in every variable. Laurent inputs
    /// are reduced by their monomial content first, so the result is a
    /// genuine polynomial determined up to that convention.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let strip = |p: &Poly| -> Poly {
            if p.is_zero() {
                return p.clone();
            }
            let m = p.min_exps();
            p.mul_monomial(&m.inverted(), &GaussRat::one())
        };
        let g = Self::gcd_inner(&strip(a), &strip(b));
        if g.is_zero() {
            return g;
        }
        let lc = g.leading().unwrap().1.clone();
        strip(&g).scale(&lc.inv())
    }

    fn gcd_inner(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        let va = a.max_var().unwrap();
        let vb = b.max_var().unwrap();
        let var = va.max(vb);
        // If only one input involves the top variable, the gcd cannot.
        let da = a.degree_in(var).unwrap().1;
        let db = b.degree_in(var).unwrap().1;
        if da == 0 || db == 0 {
            let ca = a.content_wrt(var);
            let cb = b.content_wrt(var);
            return Self::gcd_inner(&ca, &cb);
        }
        // Contents and primitive parts with respect to the main variable.
        let cont_a = a.content_wrt(var);
        let cont_b = b.content_wrt(var);
        let cont_gcd = Self::gcd_inner(&cont_a, &cont_b);
        let mut f = a.divide_exact(&cont_a).expect("content divides");
        let mut g = b.divide_exact(&cont_b).expect("content divides");
        if f.degree_in(var).unwrap().1 < g.degree_in(var).unwrap().1 {
            std::mem::swap(&mut f, &mut g);
        }
        // Primitive pseudo-remainder sequence.
        loop {
            let r = Self::pseudo_rem(&f, &g, var);
            if r.is_zero() {
                break;
            }
            let r = r.primitive_wrt(var);
            f = g;
            g = r;
            if g.degree_in(var).unwrap().1 == 0 {
                // Coprime in the main variable.
                return cont_gcd;
            }
        }
        cont_gcd.mul(&g.primitive_wrt(var))
    }

    fn content_wrt(&self, var: usize) -> Poly {
        let (lo, hi) = self.degree_in(var).expect("nonzero");
        debug_assert!(lo >= 0);
        let mut acc = Poly::zero();
        for k in lo..=hi {
            let c = self.coeff_in(var, k);
            if !c.is_zero() {
                acc = Self::gcd_inner(&acc, &c);
                if acc.is_constant() && !acc.is_zero() {
                    return Poly::one();
                }
            }
        }
        acc
    }

    fn primitive_wrt(&self, var: usize) -> Poly {
        let c = self.content_wrt(var);
        let p = self.divide_exact(&c).expect("content divides");
        // Normalize the sign/phase so the sequence stays tame.
        let lc = p.leading().unwrap().1.clone();
        p.scale(&lc.inv())
    }

    /// One full pseudo-division pass: returns a polynomial proportional to
    /// `lc(g)^k * f mod g` with respect to `var`.
    fn pseudo_rem(f: &Poly, g: &Poly, var: usize) -> Poly {
        let dg = g.degree_in(var).unwrap().1;
        let lc_g = g.coeff_in(var, dg);
        let mut r = f.clone();
        loop {
            if r.is_zero() {
                return r;
            }
            let dr = r.degree_in(var).unwrap().1;
            if dr < dg {
                return r;
            }
            let lc_r = r.coeff_in(var, dr);
            let shift = Poly::var_pow(var, dr - dg);
            // r := lc_g * r - lc_r * x^(dr-dg) * g
            r = lc_g.mul(&r).sub(&lc_r.mul(&shift).mul(g));
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            // pull a real negative sign out in front
            let (c, negative) = if c.is_real() && c.re() < &num::BigRational::from_integer(0.into())
            {
                (-c, true)
            } else {
                (c.clone(), false)
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if !c.is_one() || e.is_unit() {
                parts.push(format!("{c}"));
            }
            for (i, exp) in e.iter() {
                let name = var_name(i);
                if exp == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{name}^{exp}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Plain-text name of variable `i`: `q` for the deformation parameter,
/// `u1`, `u2`, ... for the auxiliary units.
pub fn var_name(i: usize) -> String {
    if i == VAR_Q {
        "q".to_string()
    } else {
        format!("u{i}")
    }
}
