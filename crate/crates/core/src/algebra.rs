//! The Neveu–Schwarz superalgebra k̂, its centreless quotient k and the
//! contact subalgebra k⁺, together with the coefficient superalgebra
//! A = ℂ[t, t⁻¹] ⊗ Λ(ξ) and the two actions relating them.
//!
//! Sign convention: [x, y] = xy − (−1)^{|x||y|} yx for homogeneous x, y.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{rat, Rational, Scalar};

/// ℤ₂-grading.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Parity {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Parity {
        Parity::from_bit(self.bit() + 1)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() + o.bit())
    }
}

/// The Koszul sign (−1)^{|x||y|}.
pub fn koszul(x: Parity, y: Parity) -> i64 {
    if x.is_odd() && y.is_odd() {
        -1
    } else {
        1
    }
}

/// An element of ½ℤ, stored doubled.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    /// `numerator / 2`, e.g. `HalfInt::half(7)` is 7/2.
    pub fn half(numerator: i64) -> Self {
        HalfInt { doubled: numerator }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// The integer value, if integral.
    pub fn as_int(self) -> Option<i64> {
        self.is_integer().then_some(self.doubled / 2)
    }

    /// ⌊self⌋ for a strict half-integer n + ½ this is n.
    pub fn floor(self) -> i64 {
        self.doubled.div_euclid(2)
    }

    pub fn to_rational(self) -> Rational {
        rat(self.doubled, 2)
    }

    pub fn to_scalar(self) -> Scalar {
        Scalar::frac(self.doubled, 2)
    }

    pub fn add_int(self, n: i64) -> HalfInt {
        HalfInt { doubled: self.doubled + 2 * n }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled + o.doubled }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled - o.doubled }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// A basis element L_n, G_r or C of k̂.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    L(i64),
    G(HalfInt),
    C,
}

impl Generator {
    pub fn l(n: i64) -> Generator {
        Generator::L(n)
    }

    /// G_r for a strict half-integer `r`.
    pub fn g(r: HalfInt) -> Generator {
        assert!(!r.is_integer(), "G index must lie in ℤ + 1/2, got {r}");
        Generator::G(r)
    }

    /// G_{n + 1/2}.
    pub fn g_plus_half(n: i64) -> Generator {
        Generator::G(HalfInt::from_doubled(2 * n + 1))
    }

    pub fn parity(self) -> Parity {
        match self {
            Generator::G(_) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    /// The ½ℤ-degree (eigenvalue of ad L_0); C has degree 0.
    pub fn degree(self) -> HalfInt {
        match self {
            Generator::L(n) => HalfInt::from_int(n),
            Generator::G(r) => r,
            Generator::C => HalfInt::from_int(0),
        }
    }

    fn order_key(self) -> (u8, i64) {
        match self {
            Generator::C => (0, 0),
            Generator::L(n) => (1, 2 * n),
            Generator::G(r) => (1, r.doubled()),
        }
    }
}

/// PBW order: C first, then ascending index.
impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::L(n) => write!(f, "L({n})"),
            Generator::G(r) => write!(f, "G({r})"),
            Generator::C => write!(f, "C"),
        }
    }
}

/// Which of k̂, k, k⁺ an element lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraMode {
    KHat,
    K,
    KPlus,
}

impl AlgebraMode {
    pub fn admits(self, g: Generator) -> bool {
        match (self, g) {
            (AlgebraMode::KHat, _) => true,
            (_, Generator::C) => false,
            (AlgebraMode::K, _) => true,
            (AlgebraMode::KPlus, Generator::L(n)) => n >= -1,
            (AlgebraMode::KPlus, Generator::G(r)) => r.doubled() >= -1,
        }
    }

    pub fn check(self, g: Generator) -> Result<()> {
        match (self, g) {
            (m, Generator::C) if m != AlgebraMode::KHat => Err(Error::CentralNotAllowed(m.to_string())),
            (m, g) if !m.admits(g) => Err(Error::OutOfBounds(g.to_string(), m.to_string())),
            _ => Ok(()),
        }
    }

    pub fn has_center(self) -> bool {
        self == AlgebraMode::KHat
    }
}

impl fmt::Display for AlgebraMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraMode::KHat => "khat",
            AlgebraMode::K => "k",
            AlgebraMode::KPlus => "kplus",
        })
    }
}

impl std::str::FromStr for AlgebraMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "khat" => Ok(AlgebraMode::KHat),
            "k" => Ok(AlgebraMode::K),
            "kplus" => Ok(AlgebraMode::KPlus),
            other => Err(Error::Parse(format!("unknown algebra '{other}'"))),
        }
    }
}

/// Bracket of two basis generators as a list of (generator, coefficient) terms.
/// Central terms are included only when `central` is set.
pub fn bracket_generators(x: Generator, y: Generator, central: bool) -> Vec<(Generator, Rational)> {
    use Generator::*;
    let mut out = Vec::new();
    match (x, y) {
        (C, _) | (_, C) => {}
        (L(m), L(n)) => {
            if n != m {
                out.push((L(m + n), Rational::from_integer((n - m).into())));
            }
            if central && m + n == 0 && m * m * m != m {
                out.push((C, rat(m * m * m - m, 12)));
            }
        }
        (L(m), G(r)) => {
            // r - m/2
            let c = rat(r.doubled() - m, 2);
            if c != Rational::from_integer(0.into()) {
                out.push((G(r.add_int(m)), c));
            }
        }
        (G(_), L(_)) => {
            return bracket_generators(y, x, central)
                .into_iter()
                .map(|(g, c)| (g, -c))
                .collect();
        }
        (G(r), G(s)) => {
            let sum = (r + s).as_int().expect("sum of two half-odd integers");
            out.push((L(sum), Rational::from_integer((-2).into())));
            if central && sum == 0 {
                // (r² − 1/4)/3 = (d² − 1)/12 with d = 2r
                let d = r.doubled();
                if d * d != 1 {
                    out.push((C, rat(d * d - 1, 12)));
                }
            }
        }
    }
    out
}

/// A finite linear combination of generators in a fixed algebra mode.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieElement {
    terms: BTreeMap<Generator, Scalar>,
    mode: AlgebraMode,
}

impl LieElement {
    pub fn zero(mode: AlgebraMode) -> Self {
        LieElement { terms: BTreeMap::new(), mode }
    }

    pub fn basis(g: Generator, mode: AlgebraMode) -> Result<Self> {
        LieElement::from_terms(mode, [(g, Scalar::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Generator, Scalar)>>(mode: AlgebraMode, iter: I) -> Result<Self> {
        let mut out = LieElement::zero(mode);
        for (g, c) in iter {
            mode.check(g)?;
            out.add_term(g, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, g: Generator, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn mode(&self) -> AlgebraMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: Generator) -> Scalar {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    /// Parity of a homogeneous element; `None` for mixed elements. Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|g| g.parity());
        let first = ps.next().unwrap_or(Parity::Even);
        ps.all(|p| p == first).then_some(first)
    }

    pub fn add(&self, o: &LieElement) -> Result<LieElement> {
        same_mode(self.mode, o.mode)?;
        let mut out = self.clone();
        for (g, c) in &o.terms {
            out.add_term(*g, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &LieElement) -> Result<LieElement> {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        let mut out = LieElement::zero(self.mode);
        for (g, v) in &self.terms {
            out.add_term(*g, v * c);
        }
        out
    }

    /// Re-tags the element in another mode, checking every generator against its bounds.
    pub fn with_mode(&self, mode: AlgebraMode) -> Result<LieElement> {
        LieElement::from_terms(mode, self.terms.iter().map(|(g, c)| (*g, c.clone())))
    }
}

fn same_mode<T: PartialEq + fmt::Display>(a: T, b: T) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ModeMismatch(format!("{a} vs {b}")))
    }
}

impl fmt::Display for LieElement {
    /// L and G terms in ascending index, C last: `-4*L(0) + 1/2*C`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ordered = self
            .terms
            .iter()
            .filter(|(g, _)| **g != Generator::C)
            .chain(self.terms.iter().filter(|(g, _)| **g == Generator::C));
        write_linear(f, ordered.map(|(g, c)| (c, g.to_string())))
    }
}

/// Writes `c1*x1 + c2*x2 - ...`, omitting unit coefficients.
pub(crate) fn write_linear<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a Scalar, String)>,
{
    let mut any = false;
    for (c, label) in terms {
        let neg_unit = (-c).is_one();
        let body = if c.is_one() {
            label
        } else if neg_unit {
            format!("-{label}")
        } else {
            format!("{}*{label}", c.coeff_string())
        };
        if any {
            match body.strip_prefix('-') {
                Some(rest) => write!(f, " - {rest}")?,
                None => write!(f, " + {body}")?,
            }
        } else {
            write!(f, "{body}")?;
        }
        any = true;
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

/// Bilinear extension of the basis brackets. Central terms are kept only in khat mode.
pub fn bracket(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    same_mode(x.mode, y.mode)?;
    let mut out = LieElement::zero(x.mode);
    let central = x.mode.has_center();
    for (gx, cx) in &x.terms {
        for (gy, cy) in &y.terms {
            let cc = cx * cy;
            for (g, c) in bracket_generators(*gx, *gy, central) {
                out.add_term(g, &cc * &Scalar::from_rational(c));
            }
        }
    }
    Ok(out)
}

/// t^k ξ^eps.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct AMonomial {
    pub k: i64,
    pub eps: u8,
}

impl AMonomial {
    pub const ONE: AMonomial = AMonomial { k: 0, eps: 0 };

    pub fn new(k: i64, eps: u8) -> Self {
        assert!(eps <= 1, "ξ is nilpotent of order 2");
        AMonomial { k, eps }
    }

    pub fn t(k: i64) -> Self {
        AMonomial::new(k, 0)
    }

    pub fn t_xi(k: i64) -> Self {
        AMonomial::new(k, 1)
    }

    pub fn parity(self) -> Parity {
        Parity::from_bit(self.eps)
    }

    pub fn is_one(self) -> bool {
        self == AMonomial::ONE
    }

    /// Product in A; `None` when it vanishes (ξ² = 0). t is even, so no sign arises.
    pub fn mul(self, o: AMonomial) -> Option<AMonomial> {
        (self.eps + o.eps <= 1).then(|| AMonomial::new(self.k + o.k, self.eps + o.eps))
    }
}

impl fmt::Display for AMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.eps) {
            (0, 0) => write!(f, "1"),
            (0, 1) => write!(f, "xi"),
            (1, 0) => write!(f, "t"),
            (1, 1) => write!(f, "t*xi"),
            (k, 0) => write!(f, "t^{k}"),
            (k, _) => write!(f, "t^{k}*xi"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum AMode {
    /// ℂ[t, t⁻¹] ⊗ Λ(1)
    Full,
    /// ℂ[t] ⊗ Λ(1)
    Plus,
}

impl AMode {
    pub fn admits(self, m: AMonomial) -> bool {
        self == AMode::Full || m.k >= 0
    }
}

impl fmt::Display for AMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AMode::Full => "A",
            AMode::Plus => "A+",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AElement {
    terms: BTreeMap<AMonomial, Scalar>,
    mode: AMode,
}

impl AElement {
    pub fn zero(mode: AMode) -> Self {
        AElement { terms: BTreeMap::new(), mode }
    }

    pub fn monomial(m: AMonomial, mode: AMode) -> Result<Self> {
        AElement::from_terms(mode, [(m, Scalar::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (AMonomial, Scalar)>>(mode: AMode, iter: I) -> Result<Self> {
        let mut out = AElement::zero(mode);
        for (m, c) in iter {
            if !mode.admits(m) {
                return Err(Error::OutOfBounds(m.to_string(), mode.to_string()));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: AMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn mode(&self) -> AMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|m| m.parity());
        let first = ps.next().unwrap_or(Parity::Even);
        ps.all(|p| p == first).then_some(first)
    }
}

impl fmt::Display for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, self.terms.iter().map(|(m, c)| (c, m.to_string())))
    }
}

/// g∘(t^k ξ^eps) for the action of k on A by superderivations.
///
/// L_i∘(t^k ξ^ε) = (k + ε(i+1)/2) t^{i+k} ξ^ε, G_m∘t^k = k t^{m+k−1/2} ξ,
/// G_m∘(t^k ξ) = −t^{m+k+1/2}. Returns `None` for a vanishing result or for C.
pub fn generator_on_amonomial(g: Generator, a: AMonomial) -> Option<(Rational, AMonomial)> {
    let c = match g {
        Generator::C => return None,
        Generator::L(i) => {
            let c = rat(2 * a.k + a.eps as i64 * (i + 1), 2);
            (c, AMonomial::new(i + a.k, a.eps))
        }
        Generator::G(m) => {
            // m + 1/2 is an integer
            let shift = m.floor() + 1;
            if a.eps == 0 {
                (rat(a.k, 1), AMonomial::new(shift + a.k - 1, 1))
            } else {
                (rat(-1, 1), AMonomial::new(shift + a.k, 0))
            }
        }
    };
    (c.0 != rat(0, 1)).then_some(c)
}

/// The k-action on A, extended bilinearly.
pub fn k_action_on_a(x: &LieElement, a: &AElement) -> Result<AElement> {
    if x.mode == AlgebraMode::KHat && x.terms.contains_key(&Generator::C) {
        return Err(Error::CentralNotAllowed("the action on A".into()));
    }
    let mut out = AElement::zero(a.mode);
    for (g, cg) in &x.terms {
        for (m, cm) in &a.terms {
            if let Some((c, tgt)) = generator_on_amonomial(*g, *m) {
                if !a.mode.admits(tgt) {
                    return Err(Error::OutOfBounds(tgt.to_string(), a.mode.to_string()));
                }
                out.add_term(tgt, &(cg * cm) * &Scalar::from_rational(c));
            }
        }
    }
    Ok(out)
}

/// t^k ξ^eps · g for the A-module structure on k: t^iL_j = L_{i+j}, t^iG_m = G_{m+i},
/// ξL_j = ½G_{j+1/2}, ξG_m = 0.
pub fn amonomial_on_generator(a: AMonomial, g: Generator) -> Result<Option<(Rational, Generator)>> {
    Ok(match (a.eps, g) {
        (_, Generator::C) => return Err(Error::CentralNotAllowed("the A-module structure on k".into())),
        (0, Generator::L(j)) => Some((rat(1, 1), Generator::L(j + a.k))),
        (0, Generator::G(m)) => Some((rat(1, 1), Generator::G(m.add_int(a.k)))),
        (_, Generator::L(j)) => Some((rat(1, 2), Generator::G(HalfInt::from_doubled(2 * (j + a.k) + 1)))),
        (_, Generator::G(_)) => None,
    })
}

/// The A-action on k, re-checking the mode bounds of every produced generator.
pub fn a_action_on_k(a: &AElement, x: &LieElement) -> Result<LieElement> {
    let mut out = LieElement::zero(x.mode);
    for (m, cm) in &a.terms {
        for (g, cg) in &x.terms {
            if let Some((c, tgt)) = amonomial_on_generator(*m, *g)? {
                x.mode.check(tgt)?;
                out.add_term(tgt, &(cm * cg) * &Scalar::from_rational(c));
            }
        }
    }
    Ok(out)
}

/// v(ax) − (−1)^{|v||a|} a(vx) − (v∘a)x for homogeneous v, a, x; zero when the
/// adjoint k-action and the A-action make k a module over k ⋉ A.
pub fn compatibility_residual(v: &LieElement, a: &AElement, x: &LieElement) -> Result<LieElement> {
    same_mode(v.mode, x.mode)?;
    let pv = v.parity().ok_or(Error::NotHomogeneous)?;
    let pa = a.parity().ok_or(Error::NotHomogeneous)?;
    x.parity().ok_or(Error::NotHomogeneous)?;
    let v_ax = bracket(v, &a_action_on_k(a, x)?)?;
    let a_vx = a_action_on_k(a, &bracket(v, x)?)?;
    let va = k_action_on_a(v, a)?;
    let va_x = a_action_on_k(&va, x)?;
    v_ax.sub(&a_vx.scale(&Scalar::from_int(koszul(pv, pa))))?.sub(&va_x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: Generator, mode: AlgebraMode) -> LieElement {
        LieElement::basis(g, mode).unwrap()
    }

    fn l(n: i64) -> Generator {
        Generator::L(n)
    }

    fn g(num: i64) -> Generator {
        Generator::g(HalfInt::half(num))
    }

    #[test]
    fn bracket_examples() {
        let m = AlgebraMode::KHat;
        assert_eq!(bracket(&el(l(2), m), &el(l(3), m)).unwrap(), el(l(5), m));
        let r = bracket(&el(l(2), m), &el(l(-2), m)).unwrap();
        assert_eq!(r.to_string(), "-4*L(0) + 1/2*C");
        let r = bracket(&el(g(1), m), &el(g(-1), m)).unwrap();
        assert_eq!(r.to_string(), "-2*L(0)");
        assert!(bracket(&el(l(0), m), &el(l(0), m)).unwrap().is_zero());
    }

    #[test]
    fn central_terms_drop_outside_khat() {
        let r = bracket(&el(l(2), AlgebraMode::K), &el(l(-2), AlgebraMode::K)).unwrap();
        assert_eq!(r.to_string(), "-4*L(0)");
        assert!(matches!(
            bracket(&el(l(2), AlgebraMode::K), &el(l(-2), AlgebraMode::KHat)),
            Err(Error::ModeMismatch(_))
        ));
    }

    #[test]
    fn gg_cocycle() {
        // [G_{3/2}, G_{-3/2}] = -2 L_0 + (9/4 - 1/4)/3 C
        let r = bracket(&el(g(3), AlgebraMode::KHat), &el(g(-3), AlgebraMode::KHat)).unwrap();
        assert_eq!(r.coeff(Generator::C), Scalar::frac(2, 3));
    }

    #[test]
    fn kplus_bounds() {
        assert!(LieElement::basis(l(-2), AlgebraMode::KPlus).is_err());
        assert!(LieElement::basis(g(-3), AlgebraMode::KPlus).is_err());
        assert!(LieElement::basis(g(-1), AlgebraMode::KPlus).is_ok());
        assert!(LieElement::basis(Generator::C, AlgebraMode::K).is_err());
    }

    #[test]
    fn ad_l0_is_the_grading() {
        let m = AlgebraMode::KHat;
        for x in [l(-3), l(4), g(-5), g(7)] {
            let r = bracket(&el(l(0), m), &el(x, m)).unwrap();
            assert_eq!(r, el(x, m).scale(&x.degree().to_scalar()));
        }
    }

    #[test]
    fn action_on_a_examples() {
        let a = |m| AElement::monomial(m, AMode::Full).unwrap();
        let k = AlgebraMode::K;
        let r = k_action_on_a(&el(l(1), k), &a(AMonomial::t(2))).unwrap();
        assert_eq!(r.to_string(), "2*t^3");
        let r = k_action_on_a(&el(g(1), k), &a(AMonomial::t_xi(0))).unwrap();
        assert_eq!(r.to_string(), "-t");
        assert!(k_action_on_a(&el(l(0), k), &a(AMonomial::ONE)).unwrap().is_zero());
    }

    #[test]
    fn a_action_on_k_examples() {
        let k = AlgebraMode::K;
        let a = |m| AElement::monomial(m, AMode::Full).unwrap();
        assert_eq!(a_action_on_k(&a(AMonomial::t(2)), &el(l(3), k)).unwrap(), el(l(5), k));
        assert_eq!(a_action_on_k(&a(AMonomial::t_xi(0)), &el(l(3), k)).unwrap().to_string(), "1/2*G(7/2)");
        assert!(a_action_on_k(&a(AMonomial::t_xi(0)), &el(g(1), k)).unwrap().is_zero());
        let err = a_action_on_k(&a(AMonomial::t(-3)), &el(l(1), AlgebraMode::KPlus));
        assert_eq!(err, Err(Error::OutOfBounds("L(-2)".into(), "kplus".into())));
    }

    #[test]
    fn compatibility_examples() {
        let k = AlgebraMode::K;
        let a = |m| AElement::monomial(m, AMode::Full).unwrap();
        assert!(compatibility_residual(&el(l(2), k), &a(AMonomial::t(3)), &el(l(-1), k)).unwrap().is_zero());
        assert!(compatibility_residual(&el(g(1), k), &a(AMonomial::t_xi(0)), &el(g(-3), k)).unwrap().is_zero());
        assert!(compatibility_residual(&el(l(1), k), &a(AMonomial::ONE), &el(l(4), k)).unwrap().is_zero());
    }
}
