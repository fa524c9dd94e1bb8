//! LaTeX renderers. Fragments are standalone math-mode displays; symbolic
//! units are shown as the exponent symbols they model (`q^{B}`, `q^{D}`).

use num::{One, Signed, Zero};

use crate::ncalg::{Alphabet, NCElement};
use crate::repspace::RepElement;
use crate::scalar::{GaussRat, Poly, QScalar, VAR_Q};

/// Exponent symbols for the auxiliary units, by 1-based unit index.
const UNIT_SYMBOLS: [&str; 2] = ["B", "D"];

fn gauss_latex(c: &GaussRat) -> String {
    fn rat(r: &num::BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("\\tfrac{{{}}}{{{}}}", r.numer(), r.denom())
        }
    }
    if c.is_zero() {
        return "0".into();
    }
    if c.im().is_zero() {
        return rat(c.re());
    }
    let im_abs = c.im().abs();
    let im = if im_abs.is_one() {
        "i".to_string()
    } else {
        format!("{}i", rat(&im_abs))
    };
    if c.re().is_zero() {
        if c.im().is_negative() {
            format!("-{im}")
        } else {
            im
        }
    } else if c.im().is_negative() {
        format!("({} - {im})", rat(c.re()))
    } else {
        format!("({} + {im})", rat(c.re()))
    }
}

fn monomial_latex(exps: &crate::scalar::ExpVec) -> Option<String> {
    // Collapse q and the units into a single q^{...} exponent string.
    let mut parts: Vec<String> = Vec::new();
    let qe = exps.get(VAR_Q);
    if qe != 0 {
        parts.push(qe.to_string());
    }
    for (i, e) in exps.iter() {
        if i == VAR_Q {
            continue;
        }
        let sym = UNIT_SYMBOLS.get(i - 1).copied().unwrap_or("U");
        let term = match e {
            1 => sym.to_string(),
            -1 => format!("-{sym}"),
            e => format!("{e}{sym}"),
        };
        if e > 0 && !parts.is_empty() {
            parts.push(format!("+{term}"));
        } else {
            parts.push(term);
        }
    }
    match parts.len() {
        0 => None,
        1 if parts[0] == "1" => Some("q".to_string()),
        _ => Some(format!("q^{{{}}}", parts.concat())),
    }
}

fn poly_latex(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (e, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let negative = c.is_real() && c.re().is_negative();
        let c_abs = if negative { -c } else { c.clone() };
        if first {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        first = false;
        let mono = monomial_latex(e);
        match mono {
            None => out.push_str(&gauss_latex(&c_abs)),
            Some(m) => {
                if c_abs.is_one() {
                    out.push_str(&m);
                } else {
                    out.push_str(&format!("{}\\,{}", gauss_latex(&c_abs), m));
                }
            }
        }
    }
    out
}

pub fn scalar_latex(s: &QScalar) -> String {
    if s.denominator().is_one() {
        poly_latex(s.numerator())
    } else {
        format!(
            "\\frac{{{}}}{{{}}}",
            poly_latex(s.numerator()),
            poly_latex(s.denominator())
        )
    }
}

fn coeff_prefix(c: &QScalar) -> String {
    if c.is_one() {
        String::new()
    } else {
        let rendered = scalar_latex(c);
        if c.numerator().term_count() > 1 && c.denominator().is_one() {
            format!("({rendered})\\,")
        } else {
            format!("{rendered}\\,")
        }
    }
}

fn powered(base: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(base.to_string()),
        e => Some(format!("{base}^{{{e}}}")),
    }
}

/// One term per generator set, momenta leftmost, coordinates hat-ordered,
/// then the z-powers.
pub fn rep_latex(e: &RepElement) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (key, c) in e.terms() {
        let mut factors: Vec<String> = Vec::new();
        for (base, exp) in [
            ("k_v", key.k.a as i64),
            ("k_-", key.k.b as i64),
            ("k_+", key.k.c as i64),
            ("k_{\\bar v}", key.k.d as i64),
        ] {
            if let Some(f) = powered(base, exp) {
                factors.push(f);
            }
        }
        for (base, exp) in [
            ("v", key.x[0] as i64),
            ("x_-", key.x[1] as i64),
            ("x_+", key.x[2] as i64),
            ("{\\bar v}", key.x[3] as i64),
        ] {
            if let Some(f) = powered(base, exp) {
                factors.push(f);
            }
        }
        for (base, exp) in [("z", key.z[0] as i64), ("{\\bar z}", key.z[1] as i64)] {
            if let Some(f) = powered(base, exp) {
                factors.push(f);
            }
        }
        let body = if factors.is_empty() {
            scalar_latex(c)
        } else {
            format!("{}{}", coeff_prefix(c), factors.join("\\,"))
        };
        parts.push(body);
    }
    parts.join(" + ")
}

pub fn nc_latex(e: &NCElement, alphabet: Alphabet) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let names = match alphabet {
        Alphabet::Coordinate => ["v", "x_-", "x_+", "{\\bar v}"],
        Alphabet::Momentum => ["k_v", "k_-", "k_+", "k_{\\bar v}"],
    };
    let mut parts = Vec::new();
    for (m, c) in e.terms() {
        let mut factors: Vec<String> = Vec::new();
        for (base, exp) in names.iter().zip([m.a, m.b, m.c, m.d]) {
            if let Some(f) = powered(base, exp as i64) {
                factors.push(f);
            }
        }
        let body = if factors.is_empty() {
            scalar_latex(c)
        } else {
            format!("{}{}", coeff_prefix(c), factors.join("\\,"))
        };
        parts.push(body);
    }
    parts.join(" + ")
}

/// Wraps a rendered expression in a display-math fragment.
pub fn fragment(body: &str) -> String {
    format!("\\[\n{body}\n\\]\n")
}
