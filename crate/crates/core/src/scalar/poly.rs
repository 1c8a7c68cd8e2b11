//! Polynomials in the two formal parameters `l` (λ) and `b` over ℚ.
//!
//! Terms are kept in graded-lexicographic order with `l` ranked before `b`,
//! so the leading term of a polynomial is its greatest exponent.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Exponent {
    pub lambda: u32,
    pub b: u32,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { lambda: 0, b: 0 };

    pub fn new(lambda: u32, b: u32) -> Self {
        Exponent { lambda, b }
    }

    pub fn total(&self) -> u32 {
        self.lambda + self.b
    }

    fn divides(&self, other: &Exponent) -> bool {
        self.lambda <= other.lambda && self.b <= other.b
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then(self.lambda.cmp(&other.lambda))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for Exponent {
    type Output = Exponent;
    fn add(self, o: Exponent) -> Exponent {
        Exponent::new(self.lambda + o.lambda, self.b + o.b)
    }
}

/// A polynomial in ℚ[l, b]. No zero coefficients are ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Exponent, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        ParamPoly::monomial(Exponent::ZERO, c)
    }

    pub fn monomial(e: Exponent, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        ParamPoly { terms }
    }

    pub fn lambda() -> Self {
        ParamPoly::monomial(Exponent::new(1, 0), Rational::one())
    }

    pub fn b() -> Self {
        ParamPoly::monomial(Exponent::new(0, 1), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(iter: I) -> Self {
        let mut p = ParamPoly::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(e).or_insert_with(Rational::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if this polynomial is constant (the zero polynomial gives 0).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Exponent::ZERO).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn degree_lambda(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.lambda).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(e, _)| e.total())
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    fn mul_term(&self, e: Exponent, c: &Rational) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(x, v)| (*x + e, v * c)).collect(),
        }
    }

    pub fn add(&self, o: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c);
        }
        out
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, o: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(*e1 + *e2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> ParamPoly {
        let mut out = ParamPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes numeric values for either parameter; an absent value leaves it formal.
    pub fn substitute(&self, lambda: Option<&Rational>, b: Option<&Rational>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exp = *e;
            if let Some(l) = lambda {
                coeff *= pow_rat(l, e.lambda);
                exp.lambda = 0;
            }
            if let Some(bv) = b {
                coeff *= pow_rat(bv, e.b);
                exp.b = 0;
            }
            out.add_term(exp, coeff);
        }
        out
    }

    /// Exact division; `None` when `d` does not divide `self` (or `d` is zero).
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (de, dc) = d.leading().map(|(e, c)| (*e, c.clone()))?;
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
            if !de.divides(&re) {
                return None;
            }
            let qe = Exponent::new(re.lambda - de.lambda, re.b - de.b);
            let qc = rc / &dc;
            rem = rem.sub(&d.mul_term(qe, &qc));
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Divides by the leading coefficient so the leading term becomes monic.
    pub fn monic(&self) -> ParamPoly {
        match self.leading() {
            None => ParamPoly::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Greatest common divisor in ℚ[l, b], normalised to be monic (zero if both are zero).
    pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return ParamPoly::one();
        }
        let da = LambdaPoly::from_poly(a);
        let db = LambdaPoly::from_poly(b);
        LambdaPoly::gcd(&da, &db).to_poly().monic()
    }
}

fn pow_rat(x: &Rational, n: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..n {
        out *= x;
    }
    out
}

// --- univariate helpers over ℚ[b], dense, index = degree ---------------------

type UPoly = Vec<Rational>;

fn u_trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn u_is_zero(p: &UPoly) -> bool {
    p.is_empty()
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(out)
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    u_trim(out)
}

fn u_divrem(a: &UPoly, d: &UPoly) -> (UPoly, UPoly) {
    let mut rem = a.clone();
    let dl = d.len() - 1;
    let lc = d[dl].clone();
    let mut quot = vec![Rational::zero(); a.len().saturating_sub(dl).max(1)];
    while rem.len() > dl && !rem.is_empty() {
        let shift = rem.len() - 1 - dl;
        let c = rem.last().unwrap() / &lc;
        for (i, x) in d.iter().enumerate() {
            rem[i + shift] -= x * &c;
        }
        quot[shift] = c;
        rem = u_trim(rem);
    }
    (u_trim(quot), rem)
}

fn u_monic(p: &UPoly) -> UPoly {
    match p.last() {
        None => Vec::new(),
        Some(lc) => {
            let lc = lc.clone();
            p.iter().map(|c| c / &lc).collect()
        }
    }
}

fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !u_is_zero(&y) {
        let (_, r) = u_divrem(&x, &y);
        x = y;
        y = u_monic(&r);
    }
    u_monic(&x)
}

fn u_div_exact(a: &UPoly, d: &UPoly) -> UPoly {
    let (q, r) = u_divrem(a, d);
    debug_assert!(r.is_empty(), "inexact univariate division");
    q
}

/// Polynomial in λ with coefficients in ℚ[b]; `coeffs[i]` multiplies λ^i.
#[derive(Clone, Debug)]
struct LambdaPoly {
    coeffs: Vec<UPoly>,
}

impl LambdaPoly {
    fn from_poly(p: &ParamPoly) -> Self {
        let deg = p.degree_lambda().unwrap_or(0) as usize;
        let mut coeffs: Vec<UPoly> = vec![Vec::new(); deg + 1];
        for (e, c) in p.terms() {
            let slot = &mut coeffs[e.lambda as usize];
            if slot.len() <= e.b as usize {
                slot.resize(e.b as usize + 1, Rational::zero());
            }
            slot[e.b as usize] = c.clone();
        }
        let coeffs = coeffs.into_iter().map(u_trim).collect();
        LambdaPoly { coeffs }.trimmed()
    }

    fn to_poly(&self) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (i, u) in self.coeffs.iter().enumerate() {
            for (j, c) in u.iter().enumerate() {
                out.add_term(Exponent::new(i as u32, j as u32), c.clone());
            }
        }
        out
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_empty()) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn content(&self) -> UPoly {
        self.coeffs
            .iter()
            .fold(Vec::new(), |acc, c| if acc.is_empty() { u_monic(c) } else { u_gcd(&acc, c) })
    }

    fn primitive(&self) -> LambdaPoly {
        let c = self.content();
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|x| u_div_exact(x, &c)).collect(),
        }
        .trimmed()
    }

    /// lc(d)^k · self reduced modulo d (a pseudo-remainder).
    fn pseudo_rem(&self, d: &LambdaPoly) -> LambdaPoly {
        let mut r = self.clone();
        let dd = d.degree();
        let lcd = d.coeffs[dd].clone();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let lcr = r.coeffs[r.degree()].clone();
            let mut next: Vec<UPoly> = r.coeffs.iter().map(|c| u_mul(c, &lcd)).collect();
            for (i, c) in d.coeffs.iter().enumerate() {
                next[i + shift] = u_sub(&next[i + shift], &u_mul(c, &lcr));
            }
            r = LambdaPoly { coeffs: next }.trimmed();
        }
        r
    }

    fn gcd(a: &LambdaPoly, b: &LambdaPoly) -> LambdaPoly {
        let content = u_gcd(&a.content(), &b.content());
        let mut x = a.primitive();
        let mut y = b.primitive();
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            if y.degree() == 0 {
                x = LambdaPoly { coeffs: vec![vec![Rational::one()]] };
                break;
            }
            let r = x.pseudo_rem(&y);
            x = y;
            y = if r.is_zero() { r } else { r.primitive() };
        }
        LambdaPoly {
            coeffs: x.coeffs.iter().map(|c| u_mul(c, &content)).collect(),
        }
        .trimmed()
    }
}

fn fmt_monomial(e: &Exponent) -> String {
    let mut parts = Vec::new();
    match e.lambda {
        0 => {}
        1 => parts.push("l".to_string()),
        n => parts.push(format!("l^{n}")),
    }
    match e.b {
        0 => {}
        1 => parts.push("b".to_string()),
        n => parts.push(format!("b^{n}")),
    }
    parts.join("*")
}

impl fmt::Display for ParamPoly {
    /// Leading term first, e.g. `2*l + 4*b - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(e);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> ParamPoly {
        ParamPoly::lambda()
    }
    fn b() -> ParamPoly {
        ParamPoly::b()
    }
    fn c(n: i64) -> ParamPoly {
        ParamPoly::constant(rat_int(n))
    }

    #[test]
    fn graded_lex_order_puts_lambda_first() {
        assert!(Exponent::new(1, 0) > Exponent::new(0, 1));
        assert!(Exponent::new(0, 2) > Exponent::new(1, 0));
        assert!(Exponent::new(2, 0) > Exponent::new(1, 1));
    }

    #[test]
    fn renders_leading_term_first() {
        let p = l().scale(&rat_int(2)).add(&b().scale(&rat_int(4))).sub(&c(1));
        assert_eq!(p.to_string(), "2*l + 4*b - 1");
        assert_eq!(l().mul(&b()).scale(&rat(-1, 2)).to_string(), "-1/2*l*b");
        assert_eq!(ParamPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = l().mul(&l()).sub(&b().mul(&b()));
        let d = l().sub(&b());
        assert_eq!(a.div_exact(&d), Some(l().add(&b())));
        assert_eq!(l().add(&c(1)).div_exact(&l()), None);
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let a = l().mul(&l()).sub(&b().mul(&b()));
        let d = l().sub(&b()).scale(&rat_int(3));
        assert_eq!(ParamPoly::gcd(&a, &d), l().sub(&b()));
    }

    #[test]
    fn gcd_with_b_content() {
        // (b+1)(l+b) and (b+1)(l-2)
        let bp1 = b().add(&c(1));
        let a = bp1.mul(&l().add(&b()));
        let d = bp1.mul(&l().sub(&c(2)));
        assert_eq!(ParamPoly::gcd(&a, &d), bp1);
        assert!(ParamPoly::gcd(&l().add(&b()), &l().sub(&b())).is_one());
    }

    #[test]
    fn substitution_is_partial() {
        let p = l().mul(&b()).add(&l());
        let s = p.substitute(Some(&rat(1, 2)), None);
        assert_eq!(s, b().scale(&rat(1, 2)).add(&ParamPoly::constant(rat(1, 2))));
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("7"), Some(rat_int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
