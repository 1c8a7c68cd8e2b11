//! Exact scalars: rational functions in the formal parameters λ and b.
//!
//! Every [`Scalar`] is kept in a canonical form (coprime numerator and
//! denominator, monic denominator), so equality of rational functions is
//! equality of representations and zero-testing is decidable.

mod poly;

use std::borrow::Cow;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub use poly::{parse_rational, rat, rat_int, Exponent, ParamPoly, Rational};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar(Repr);

/// Numbers whose reduced form fits in machine words always take the `Small`
/// arm, so the representation stays canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    /// Reduced fraction with positive denominator.
    Small(i64, i64),
    Poly(ParamPoly, ParamPoly),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

fn small(n: i128, d: i128) -> Option<Scalar> {
    debug_assert!(d != 0);
    let g = n.gcd(&d);
    let (mut n, mut d) = (n / g, d / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    Some(Scalar(Repr::Small(i64::try_from(n).ok()?, i64::try_from(d).ok()?)))
}

fn big_ratio(n: i64, d: i64) -> Rational {
    Rational::new_raw(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    /// Canonical representative of `raw_num / raw_den`.
    pub fn normalize(raw_num: ParamPoly, raw_den: ParamPoly) -> Result<Scalar> {
        if raw_den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if raw_num.is_zero() {
            return Ok(Scalar::zero());
        }
        if let Some(c) = raw_den.as_constant() {
            return Ok(Scalar::from_parts(raw_num.scale(&c.recip()), ParamPoly::one()));
        }
        let g = ParamPoly::gcd(&raw_num, &raw_den);
        let (num, den) = if g.is_one() {
            (raw_num, raw_den)
        } else {
            (
                raw_num.div_exact(&g).expect("gcd divides numerator"),
                raw_den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().recip();
        Ok(Scalar::from_parts(num.scale(&lc), den.scale(&lc)))
    }

    /// Wraps an already reduced pair, choosing the small arm when possible.
    fn from_parts(num: ParamPoly, den: ParamPoly) -> Scalar {
        if den.is_one() {
            if let Some(c) = num.as_constant() {
                return Scalar::from_rational(c);
            }
        }
        Scalar(Repr::Poly(num, den))
    }

    fn parts(&self) -> (Cow<'_, ParamPoly>, Cow<'_, ParamPoly>) {
        match &self.0 {
            Repr::Small(n, d) => (
                Cow::Owned(ParamPoly::constant(big_ratio(*n, *d))),
                Cow::Owned(ParamPoly::one()),
            ),
            Repr::Poly(n, d) => (Cow::Borrowed(n), Cow::Borrowed(d)),
        }
    }

    pub fn from_poly(p: ParamPoly) -> Scalar {
        Scalar::from_parts(p, ParamPoly::one())
    }

    pub fn zero() -> Scalar {
        Scalar(Repr::Small(0, 1))
    }

    pub fn one() -> Scalar {
        Scalar(Repr::Small(1, 1))
    }

    pub fn from_rational(r: Rational) -> Scalar {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Scalar(Repr::Small(n, d));
        }
        Scalar(Repr::Poly(ParamPoly::constant(r), ParamPoly::one()))
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar(Repr::Small(n, 1))
    }

    /// n/d for a nonzero d.
    pub fn frac(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        small(n as i128, d as i128).expect("reduced i64 fraction fits")
    }

    /// The formal parameter λ.
    pub fn lambda() -> Scalar {
        Scalar::from_poly(ParamPoly::lambda())
    }

    pub fn b() -> Scalar {
        Scalar::from_poly(ParamPoly::b())
    }

    pub fn numerator(&self) -> ParamPoly {
        self.parts().0.into_owned()
    }

    pub fn denominator(&self) -> ParamPoly {
        self.parts().1.into_owned()
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n == 0,
            Repr::Poly(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.0 == Repr::Small(1, 1)
    }

    /// The numeric value, if the scalar does not depend on λ or b.
    pub fn as_rational(&self) -> Option<Rational> {
        match &self.0 {
            Repr::Small(n, d) => Some(big_ratio(*n, *d)),
            Repr::Poly(n, d) if d.is_one() => n.as_constant(),
            Repr::Poly(..) => None,
        }
    }

    pub fn is_numeric(&self) -> bool {
        match &self.0 {
            Repr::Small(..) => true,
            Repr::Poly(n, d) => d.is_one() && n.is_constant(),
        }
    }

    /// Numeric integer value, if any.
    pub fn as_integer(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(n, 1) => Some(n),
            _ => None,
        }
    }

    pub fn try_div(&self, c: &Scalar) -> Result<Scalar> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let (Repr::Small(a, b), Repr::Small(x, y)) = (&self.0, &c.0) {
            if let Some(r) = small(*a as i128 * *y as i128, *b as i128 * *x as i128) {
                return Ok(r);
            }
        }
        let ((n1, d1), (n2, d2)) = (self.parts(), c.parts());
        Ok(Scalar::mul_reduced(&n1, &d1, &d2, &n2))
    }

    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one().try_div(self)
    }

    /// Specialises λ and/or b; the denominator must not vanish identically afterwards.
    pub fn substitute(&self, lambda: Option<&Rational>, b: Option<&Rational>) -> Result<Scalar> {
        let Repr::Poly(num, den) = &self.0 else {
            return Ok(self.clone());
        };
        let sub = den.substitute(lambda, b);
        if sub.is_zero() {
            return Err(Error::Pole(den.to_string()));
        }
        Scalar::normalize(num.substitute(lambda, b), sub)
    }

    fn combine(&self, o: &Scalar, sign: bool) -> Scalar {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &o.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            let num = if sign { a * d + c * b } else { a * d - c * b };
            if let Some(r) = small(num, b * d) {
                return r;
            }
        }
        let ((n1, d1), (n2, d2)) = (self.parts(), o.parts());
        let op = |x: &ParamPoly, y: &ParamPoly| if sign { x.add(y) } else { x.sub(y) };
        if d1 == d2 {
            if d1.is_one() {
                return Scalar::from_poly(op(&n1, &n2));
            }
            return Scalar::normalize(op(&n1, &n2), d1.into_owned()).expect("nonzero denominator");
        }
        // Henrici: only the common factor g of the denominators can cancel.
        let g = ParamPoly::gcd(&d1, &d2);
        let (e1, e2) = (exact(&d1, &g), exact(&d2, &g));
        let t = op(&n1.mul(&e2), &n2.mul(&e1));
        if t.is_zero() {
            return Scalar::zero();
        }
        let h = ParamPoly::gcd(&t, &g);
        Scalar::with_monic_den(exact(&t, &h), e1.mul(&exact(&d2, &h)))
    }

    /// n1/d1 · n2/d2 for coprime pairs, cancelling across the pairs only.
    fn mul_reduced(n1: &ParamPoly, d1: &ParamPoly, n2: &ParamPoly, d2: &ParamPoly) -> Scalar {
        if n1.is_zero() || n2.is_zero() {
            return Scalar::zero();
        }
        let g1 = ParamPoly::gcd(n1, d2);
        let g2 = ParamPoly::gcd(n2, d1);
        let num = exact(n1, &g1).mul(&exact(n2, &g2));
        let den = exact(d1, &g2).mul(&exact(d2, &g1));
        Scalar::with_monic_den(num, den)
    }

    /// Wraps a coprime pair after scaling the denominator's leading coefficient to 1.
    fn with_monic_den(num: ParamPoly, den: ParamPoly) -> Scalar {
        let lc = den.leading_coeff().recip();
        Scalar::from_parts(num.scale(&lc), den.scale(&lc))
    }

    fn product(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &o.0) {
            if let Some(r) = small(*a as i128 * *c as i128, *b as i128 * *d as i128) {
                return r;
            }
        }
        let ((n1, d1), (n2, d2)) = (self.parts(), o.parts());
        if d1.is_one() && d2.is_one() {
            return Scalar::from_poly(n1.mul(&n2));
        }
        Scalar::mul_reduced(&n1, &d1, &n2, &d2)
    }
}

fn exact(p: &ParamPoly, d: &ParamPoly) -> ParamPoly {
    if d.is_one() {
        return p.clone();
    }
    p.div_exact(d).expect("divisor of a gcd")
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| a.combine(b, true));
binop!(Sub, sub, |a, b| a.combine(b, false));
binop!(Mul, mul, |a, b| a.product(b));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small(n, d) => small(-(*n as i128), *d as i128).unwrap_or_else(|| {
                Scalar(Repr::Poly(ParamPoly::constant(-big_ratio(*n, *d)), ParamPoly::one()))
            }),
            Repr::Poly(n, d) => Scalar(Repr::Poly(n.neg(), d.clone())),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{}{}/{d}", if *n < 0 { "-" } else { "" }, n.unsigned_abs()),
            Repr::Poly(num, den) if den.is_one() => write!(f, "{num}"),
            Repr::Poly(num, den) => {
                let wrap = |p: &ParamPoly| {
                    if p.terms().count() > 1 {
                        format!("({p})")
                    } else {
                        p.to_string()
                    }
                };
                write!(f, "{}/{}", wrap(num), wrap(den))
            }
        }
    }
}

impl Scalar {
    /// Rendering suitable as a multiplicative coefficient: compound values are parenthesised.
    pub fn coeff_string(&self) -> String {
        let s = self.to_string();
        match &self.0 {
            Repr::Poly(num, den) if !den.is_one() || num.terms().count() > 1 => format!("({s})"),
            _ => s,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_across_operands() {
        let x = Scalar::lambda().try_div(&(Scalar::lambda() + Scalar::b())).unwrap();
        let y = Scalar::b().try_div(&(Scalar::lambda() + Scalar::b())).unwrap();
        assert!((&x + &y).is_one());
        let inv = (Scalar::lambda() + Scalar::b()).try_div(&Scalar::lambda()).unwrap();
        assert!((&x * &inv).is_one());
        assert_eq!(Scalar::zero().try_div(&x).unwrap(), Scalar::zero());
        assert_eq!((&x - &x).to_string(), "0");
    }

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
    fn self_cancellation() {
        let p = l().add(&c(1));
        assert_eq!(Scalar::normalize(p.clone(), p).unwrap(), Scalar::one());
    }

    #[test]
    fn content_removal() {
        let n = l().scale(&rat_int(2)).add(&b().scale(&rat_int(2)));
        let s = Scalar::normalize(n, c(2)).unwrap();
        assert_eq!(s, Scalar::from_poly(l().add(&b())));
    }

    #[test]
    fn difference_of_squares_reduces() {
        let n = l().mul(&l()).sub(&b().mul(&b()));
        let s = Scalar::normalize(n, l().sub(&b())).unwrap();
        assert_eq!(s, Scalar::from_poly(l().add(&b())));
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(Scalar::normalize(l(), ParamPoly::zero()), Err(Error::DivisionByZero));
        assert_eq!(Scalar::one().try_div(&Scalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn arithmetic_examples() {
        let s = Scalar::lambda() + Scalar::b();
        assert!((&s - &s).is_zero());
        assert_eq!(Scalar::frac(1, 12) * Scalar::from_int(6), Scalar::frac(1, 2));
        let lk = Scalar::lambda() + Scalar::from_int(3);
        assert_eq!(&lk * &lk.recip().unwrap(), Scalar::one());
    }

    #[test]
    fn substitution_examples() {
        // λ + k + b(n+1) with k = 2, n = 1
        let e = Scalar::lambda() + Scalar::from_int(2) + Scalar::b() * Scalar::from_int(2);
        assert_eq!(e.substitute(Some(&rat_int(0)), Some(&rat_int(0))).unwrap(), Scalar::from_int(2));
        let s = Scalar::lambda() + Scalar::b();
        assert_eq!(s.substitute(Some(&rat(1, 3)), Some(&rat(1, 4))).unwrap(), Scalar::frac(7, 12));
        let inv = Scalar::lambda().recip().unwrap();
        assert_eq!(inv.substitute(Some(&rat_int(0)), None), Err(Error::Pole("l".into())));
    }

    #[test]
    fn renders_fractions() {
        let n = Scalar::from_poly(l().scale(&rat_int(2)).add(&b().scale(&rat_int(4))).sub(&c(1)));
        let d = Scalar::from_poly(l().add(&c(1)));
        assert_eq!(n.try_div(&d).unwrap().to_string(), "(2*l + 4*b - 1)/(l + 1)");
        assert_eq!(Scalar::frac(-3, 4).to_string(), "-3/4");
        assert_eq!((Scalar::lambda() + Scalar::b()).coeff_string(), "(l + b)");
    }
}
