//! PBW normal forms in U(k̂) and in the smash algebras A·U(k), A⁺·U(k⁺).
//!
//! A normal-form term is an A-monomial followed by a PBW monomial whose
//! generators are sorted by ascending index (C first), with no repeated odd
//! generator. Words are rewritten into this form with
//!
//! * g·f = (−1)^{|g||f|} f·g + g∘f for a generator g and an A-monomial f,
//! * xy = (−1)^{|x||y|} yx + [x, y] for out-of-order generators,
//! * g·g = ½[g, g] for odd g,
//!
//! and A-monomials are multiplied in A.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::algebra::{
    bracket_generators, generator_on_amonomial, koszul, write_linear, AMode, AMonomial, AlgebraMode, Generator,
    LieElement, Parity,
};
use crate::error::{Error, Result};
use crate::scalar::{rat, Rational, Scalar};

/// Largest PBW degree the normalizer accepts by default.
pub const DEFAULT_DEGREE_GUARD: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Letter {
    A(AMonomial),
    X(Generator),
}

impl Letter {
    pub fn parity(self) -> Parity {
        match self {
            Letter::A(a) => a.parity(),
            Letter::X(g) => g.parity(),
        }
    }
}

pub type Word = Vec<Letter>;

/// Where a smash element lives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SmashMode {
    /// U(k̂), no A-part.
    PureU,
    /// A·U(k)
    AK,
    /// A⁺·U(k⁺)
    APlusKPlus,
}

impl SmashMode {
    pub fn algebra_mode(self) -> AlgebraMode {
        match self {
            SmashMode::PureU => AlgebraMode::KHat,
            SmashMode::AK => AlgebraMode::K,
            SmashMode::APlusKPlus => AlgebraMode::KPlus,
        }
    }

    pub fn a_mode(self) -> Option<AMode> {
        match self {
            SmashMode::PureU => None,
            SmashMode::AK => Some(AMode::Full),
            SmashMode::APlusKPlus => Some(AMode::Plus),
        }
    }

    fn central(self) -> bool {
        self == SmashMode::PureU
    }

    pub fn check_letter(self, l: Letter) -> Result<()> {
        match l {
            Letter::X(g) => self.algebra_mode().check(g),
            Letter::A(a) if a.is_one() => Ok(()),
            Letter::A(a) => match self.a_mode() {
                Some(m) if m.admits(a) => Ok(()),
                Some(m) => Err(Error::OutOfBounds(a.to_string(), m.to_string())),
                None => Err(Error::ModeMismatch(format!("{a} in U(khat)"))),
            },
        }
    }
}

impl fmt::Display for SmashMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SmashMode::PureU => "U(khat)",
            SmashMode::AK => "A.U(k)",
            SmashMode::APlusKPlus => "A+.U(k+)",
        })
    }
}

/// An ordered product of generators in PBW order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct PbwMonomial {
    factors: Vec<Generator>,
}

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial::default()
    }

    pub fn factors(&self) -> &[Generator] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn parity(&self) -> Parity {
        self.factors.iter().fold(Parity::Even, |p, g| p + g.parity())
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.factors.len() {
            let g = self.factors[i];
            let run = self.factors[i..].iter().take_while(|h| **h == g).count();
            if run > 1 {
                write!(f, "{g}^{run}")?;
            } else {
                write!(f, "{g}")?;
            }
            i += run;
        }
        Ok(())
    }
}

type TermKey = (AMonomial, PbwMonomial);

/// A normal-formed element of U(k̂), A·U(k) or A⁺·U(k⁺).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmashElement {
    terms: BTreeMap<TermKey, Scalar>,
    mode: SmashMode,
}

impl SmashElement {
    pub fn zero(mode: SmashMode) -> Self {
        SmashElement { terms: BTreeMap::new(), mode }
    }

    pub fn one(mode: SmashMode) -> Self {
        let mut out = SmashElement::zero(mode);
        out.add_term((AMonomial::ONE, PbwMonomial::one()), Scalar::one());
        out
    }

    pub fn generator(g: Generator, mode: SmashMode) -> Result<Self> {
        WordSum::letter(Letter::X(g)).normalize(mode)
    }

    pub fn amonomial(a: AMonomial, mode: SmashMode) -> Result<Self> {
        WordSum::letter(Letter::A(a)).normalize(mode)
    }

    /// A degree-one element viewed inside the enveloping algebra.
    pub fn from_lie(x: &LieElement, mode: SmashMode) -> Result<Self> {
        let mut out = SmashElement::zero(mode);
        for (g, c) in x.terms() {
            out = out.add(&SmashElement::generator(*g, mode)?.scale(c))?;
        }
        Ok(out)
    }

    fn add_term(&mut self, key: TermKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn mode(&self) -> SmashMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AMonomial, &PbwMonomial, &Scalar)> {
        self.terms.iter().map(|((a, p), c)| (a, p, c))
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|(a, p)| a.parity() + p.parity());
        let first = ps.next().unwrap_or(Parity::Even);
        ps.all(|p| p == first).then_some(first)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|(_, p)| p.degree()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &SmashElement) -> Result<SmashElement> {
        same_mode(self.mode, o.mode)?;
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &SmashElement) -> Result<SmashElement> {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> SmashElement {
        let mut out = SmashElement::zero(self.mode);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Re-tags the element in another mode after checking every letter.
    pub fn with_mode(&self, mode: SmashMode) -> Result<SmashElement> {
        let mut out = SmashElement::zero(mode);
        for ((a, p), c) in &self.terms {
            mode.check_letter(Letter::A(*a))?;
            for g in &p.factors {
                mode.check_letter(Letter::X(*g))?;
            }
            out.add_term((*a, p.clone()), c.clone());
        }
        Ok(out)
    }

    pub fn to_words(&self) -> WordSum {
        let mut out = WordSum::zero();
        for ((a, p), c) in &self.terms {
            let mut w = Word::with_capacity(p.degree() + 1);
            if !a.is_one() {
                w.push(Letter::A(*a));
            }
            w.extend(p.factors.iter().map(|g| Letter::X(*g)));
            out.add_word(w, c.clone());
        }
        out
    }
}

fn same_mode(a: SmashMode, b: SmashMode) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ModeMismatch(format!("{a} vs {b}")))
    }
}

impl fmt::Display for SmashElement {
    /// `t^2*xi (x) G(-1/2)L(3)`; a trivial A-part or PBW part is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = |a: &AMonomial, p: &PbwMonomial| match (a.is_one(), p.degree() == 0) {
            (true, _) => p.to_string(),
            (false, true) => a.to_string(),
            (false, false) => format!("{a} (x) {p}"),
        };
        write_linear(f, self.terms.iter().map(|((a, p), c)| (c, label(a, p))))
    }
}

/// An unnormalized linear combination of words. Module actions consume these
/// directly, which avoids normal-ordering operators that are only applied.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WordSum {
    terms: BTreeMap<Word, Scalar>,
}

impl WordSum {
    pub fn zero() -> Self {
        WordSum::default()
    }

    pub fn one() -> Self {
        WordSum::word(Word::new())
    }

    pub fn word(w: Word) -> Self {
        let mut out = WordSum::zero();
        out.add_word(w, Scalar::one());
        out
    }

    pub fn letter(l: Letter) -> Self {
        WordSum::word(vec![l])
    }

    pub fn generator(g: Generator) -> Self {
        WordSum::letter(Letter::X(g))
    }

    pub fn amonomial(a: AMonomial) -> Self {
        WordSum::letter(Letter::A(a))
    }

    pub fn from_lie(x: &LieElement) -> Self {
        let mut out = WordSum::zero();
        for (g, c) in x.terms() {
            out.add_word(vec![Letter::X(*g)], c.clone());
        }
        out
    }

    fn add_word(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let w: Word = w.into_iter().filter(|l| *l != Letter::A(AMonomial::ONE)).collect();
        let slot = self.terms.entry(w.clone()).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &WordSum) -> WordSum {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_word(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &WordSum) -> WordSum {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> WordSum {
        let mut out = WordSum::zero();
        for (w, v) in &self.terms {
            out.add_word(w.clone(), v * c);
        }
        out
    }

    /// Concatenation product.
    pub fn mul(&self, o: &WordSum) -> WordSum {
        let mut out = WordSum::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_word(w, c1 * c2);
            }
        }
        out
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|w| word_parity(w));
        let first = ps.next().unwrap_or(Parity::Even);
        ps.all(|p| p == first).then_some(first)
    }

    /// Super-commutator xy − (−1)^{|x||y|} yx.
    pub fn bracket(&self, o: &WordSum) -> Result<WordSum> {
        let px = self.parity().ok_or(Error::NotHomogeneous)?;
        let py = o.parity().ok_or(Error::NotHomogeneous)?;
        Ok(self.mul(o).sub(&o.mul(self).scale(&Scalar::from_int(koszul(px, py)))))
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|w| word_degree(w)).max().unwrap_or(0)
    }

    pub fn normalize(&self, mode: SmashMode) -> Result<SmashElement> {
        self.normalize_with_guard(mode, DEFAULT_DEGREE_GUARD)
    }

    pub fn normalize_with_guard(&self, mode: SmashMode, guard: usize) -> Result<SmashElement> {
        let mut out = SmashElement::zero(mode);
        for (w, c) in &self.terms {
            let deg = word_degree(w);
            if deg > guard {
                return Err(Error::DegreeGuard(deg, guard));
            }
            for l in w {
                mode.check_letter(*l)?;
            }
            for (key, r) in normal_form(w, mode.central()).iter() {
                out.add_term(key.clone(), c * &Scalar::from_rational(r.clone()));
            }
        }
        Ok(out)
    }
}

pub fn word_parity(w: &[Letter]) -> Parity {
    w.iter().fold(Parity::Even, |p, l| p + l.parity())
}

fn word_degree(w: &[Letter]) -> usize {
    w.iter().filter(|l| matches!(l, Letter::X(_))).count()
}

type NormalForm = Rc<Vec<(TermKey, Rational)>>;

thread_local! {
    static MEMO: RefCell<HashMap<(bool, Word), NormalForm>> = RefCell::new(HashMap::new());
}

/// Normal form of a single word, memoized per thread.
fn normal_form(w: &[Letter], central: bool) -> NormalForm {
    let key = (central, w.to_vec());
    if let Some(hit) = MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let result = match rewrite_once(w, central) {
        None => Rc::new(vec![(as_normal_key(w), rat(1, 1))]),
        Some(pieces) => {
            let mut acc: BTreeMap<TermKey, Rational> = BTreeMap::new();
            for (c, piece) in pieces {
                for (k, r) in normal_form(&piece, central).iter() {
                    let slot = acc.entry(k.clone()).or_insert_with(|| rat(0, 1));
                    *slot += &c * r;
                }
            }
            acc.retain(|_, r| *r != rat(0, 1));
            Rc::new(acc.into_iter().collect())
        }
    };
    MEMO.with(|m| m.borrow_mut().insert(key, result.clone()));
    result
}

fn as_normal_key(w: &[Letter]) -> TermKey {
    let mut a = AMonomial::ONE;
    let mut factors = Vec::with_capacity(w.len());
    for l in w {
        match l {
            Letter::A(m) => a = *m,
            Letter::X(g) => factors.push(*g),
        }
    }
    (a, PbwMonomial { factors })
}

fn splice(w: &[Letter], i: usize, mid: &[Letter]) -> Word {
    let mut out = Vec::with_capacity(w.len() + mid.len());
    out.extend_from_slice(&w[..i]);
    out.extend(mid.iter().copied().filter(|l| *l != Letter::A(AMonomial::ONE)));
    out.extend_from_slice(&w[i + 2..]);
    out
}

/// One rewriting step at the leftmost defect; `None` if `w` is already normal.
fn rewrite_once(w: &[Letter], central: bool) -> Option<Vec<(Rational, Word)>> {
    if let Some(i) = w.iter().position(|l| *l == Letter::A(AMonomial::ONE)) {
        let mut v = w.to_vec();
        v.remove(i);
        return Some(vec![(rat(1, 1), v)]);
    }
    for i in 0..w.len().saturating_sub(1) {
        match (w[i], w[i + 1]) {
            (Letter::A(f1), Letter::A(f2)) => {
                return Some(match f1.mul(f2) {
                    Some(p) => vec![(rat(1, 1), splice(w, i, &[Letter::A(p)]))],
                    None => vec![],
                });
            }
            (Letter::X(g), Letter::A(f)) => {
                let mut out = vec![(rat(koszul(g.parity(), f.parity()), 1), splice(w, i, &[Letter::A(f), Letter::X(g)]))];
                if let Some((c, h)) = generator_on_amonomial(g, f) {
                    out.push((c, splice(w, i, &[Letter::A(h)])));
                }
                return Some(out);
            }
            (Letter::X(x), Letter::X(y)) if x > y => {
                let mut out = vec![(rat(koszul(x.parity(), y.parity()), 1), splice(w, i, &[Letter::X(y), Letter::X(x)]))];
                for (z, c) in bracket_generators(x, y, central) {
                    out.push((c, splice(w, i, &[Letter::X(z)])));
                }
                return Some(out);
            }
            (Letter::X(x), Letter::X(y)) if x == y && x.parity().is_odd() => {
                return Some(
                    bracket_generators(x, x, central)
                        .into_iter()
                        .map(|(z, c)| (c / rat(2, 1), splice(w, i, &[Letter::X(z)])))
                        .collect(),
                );
            }
            _ => {}
        }
    }
    None
}

pub fn smash_product(x: &SmashElement, y: &SmashElement) -> Result<SmashElement> {
    same_mode(x.mode, y.mode)?;
    x.to_words().mul(&y.to_words()).normalize(x.mode)
}

pub fn smash_bracket(x: &SmashElement, y: &SmashElement) -> Result<SmashElement> {
    same_mode(x.mode, y.mode)?;
    x.to_words().bracket(&y.to_words())?.normalize(x.mode)
}

/// Binomial coefficient C(n, i) as a scalar; zero outside 0..=n.
pub fn binomial(n: i64, i: i64) -> Scalar {
    if i < 0 || n < 0 || i > n {
        return Scalar::zero();
    }
    let i = i.min(n - i);
    let mut acc = rat(1, 1);
    for j in 0..i {
        acc = acc * rat(n - j, j + 1);
    }
    Scalar::from_rational(acc)
}

pub fn sign(i: i64) -> Scalar {
    Scalar::from_int(if i.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Σᵢ (−1)ⁱ C(m, i) L_{k−i} L_{s+i}, unnormalized.
pub fn omega_words(k: i64, s: i64, m: u32) -> WordSum {
    let m = m as i64;
    let mut out = WordSum::zero();
    for i in 0..=m {
        let w = vec![Letter::X(Generator::L(k - i)), Letter::X(Generator::L(s + i))];
        out.add_word(w, &sign(i) * &binomial(m, i));
    }
    out
}

/// Ω^{(m)}_{k,s} in U(k̂) normal form.
pub fn omega(k: i64, s: i64, m: u32) -> Result<SmashElement> {
    omega_words(k, s, m).normalize(SmashMode::PureU)
}

fn t_xi(k: i64, eps: u8) -> WordSum {
    WordSum::amonomial(AMonomial::new(k, eps))
}

fn gen(g: Generator) -> WordSum {
    WordSum::generator(g)
}

/// L′ₙ for n ≥ −1 in A·U(k):
/// Σᵢ (−1)^{i+1} C(n+1,i) t^{n−i+1} L_{i−1} + ((n+1)/2) Σᵢ (−1)ⁱ C(n,i) t^{n−i} ξ G_{i−1/2}.
pub fn l_prime(n: i64) -> Result<SmashElement> {
    if n < -1 {
        return Err(Error::InvalidIndex(format!("L' requires n >= -1, got {n}")));
    }
    let mut out = WordSum::zero();
    for i in 0..=n + 1 {
        let term = t_xi(n - i + 1, 0).mul(&gen(Generator::L(i - 1)));
        out = out.add(&term.scale(&(&sign(i + 1) * &binomial(n + 1, i))));
    }
    let half = Scalar::frac(n + 1, 2);
    for i in 0..=n {
        let term = t_xi(n - i, 1).mul(&gen(Generator::g_plus_half(i - 1)));
        out = out.add(&term.scale(&(&half * &(&sign(i) * &binomial(n, i)))));
    }
    out.normalize(SmashMode::AK)
}

/// G′_{n−1/2} for n ≥ 0: Σᵢ (−1)ⁱ C(n,i) (t^{n−i} G_{i−1/2} − 2 t^{n−i} ξ L_{i−1}).
pub fn g_prime(n: i64) -> Result<SmashElement> {
    if n < 0 {
        return Err(Error::InvalidIndex(format!("G' requires n >= 0, got {n}")));
    }
    let mut out = WordSum::zero();
    for i in 0..=n {
        let g = t_xi(n - i, 0).mul(&gen(Generator::g_plus_half(i - 1)));
        let l = t_xi(n - i, 1).mul(&gen(Generator::L(i - 1))).scale(&Scalar::from_int(-2));
        out = out.add(&g.add(&l).scale(&(&sign(i) * &binomial(n, i))));
    }
    out.normalize(SmashMode::AK)
}

fn a_times(k: i64, eps: u8, x: &SmashElement) -> Result<SmashElement> {
    smash_product(&SmashElement::amonomial(AMonomial::new(k, eps), SmashMode::AK)?, x)
}

/// Residuals of the two reconstruction identities expressing Lₙ and G_{n−1/2}
/// through L′, G′ and A; both vanish.
pub fn verify_reconstruction(n: i64) -> Result<(SmashElement, SmashElement)> {
    verify_reconstruction_with(n, &l_prime(-1)?)
}

/// As [`verify_reconstruction`], with a caller-chosen value standing in for L′_{−1}.
pub fn verify_reconstruction_with(n: i64, l_prime_minus_one: &SmashElement) -> Result<(SmashElement, SmashElement)> {
    if n < 0 {
        return Err(Error::InvalidIndex(format!("reconstruction requires n >= 0, got {n}")));
    }
    let lp = |k: i64| if k == -1 { Ok(l_prime_minus_one.clone()) } else { l_prime(k) };
    let mode = SmashMode::AK;

    let mut first = SmashElement::zero(mode);
    for k in 0..=n {
        let inner = l_prime(k)?.sub(&a_times(0, 1, &g_prime(k)?)?.scale(&Scalar::frac(k + 1, 2)))?;
        let c = &sign(k) * &binomial(n + 1, k + 1);
        first = first.add(&a_times(n - k, 0, &inner)?.scale(&c))?;
    }
    first = first.add(&a_times(n + 1, 0, &SmashElement::generator(Generator::L(-1), mode)?)?)?;
    first = first.sub(&SmashElement::generator(Generator::L(n), mode)?)?;

    let mut second = SmashElement::zero(mode);
    for k in 0..=n {
        let inner = g_prime(k)?.sub(&a_times(0, 1, &lp(k - 1)?)?.scale(&Scalar::from_int(2)))?;
        let c = &sign(k) * &binomial(n, k);
        second = second.add(&a_times(n - k, 0, &inner)?.scale(&c))?;
    }
    second = second.sub(&SmashElement::generator(Generator::g_plus_half(n - 1), mode)?)?;
    Ok((first, second))
}

/// Labels of the spanning elements of the centralizer of A and G_{−1/2}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum TElementLabel {
    /// L′ₙ, n ≥ −1
    LPrime(i64),
    /// G′_{n−1/2}, n ≥ 0
    GPrime(i64),
}

impl TElementLabel {
    pub fn element(self) -> Result<SmashElement> {
        match self {
            TElementLabel::LPrime(n) => l_prime(n),
            TElementLabel::GPrime(n) => g_prime(n),
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            TElementLabel::LPrime(_) => Parity::Even,
            TElementLabel::GPrime(_) => Parity::Odd,
        }
    }
}

impl fmt::Display for TElementLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TElementLabel::LPrime(n) => write!(f, "L'({n})"),
            TElementLabel::GPrime(n) => write!(f, "G'({})", crate::algebra::HalfInt::from_doubled(2 * n - 1)),
        }
    }
}

/// The bracket of two primed elements predicted by the isomorphism with k≥0:
/// [L′_m, L′_n] = (n−m)L′_{m+n}, [L′_m, G′_r] = (r − m/2)G′_{m+r}, [G′_r, G′_s] = 2L′_{r+s}.
pub fn psi_expected(x: TElementLabel, y: TElementLabel) -> Result<SmashElement> {
    use TElementLabel::*;
    match (x, y) {
        (LPrime(m), LPrime(n)) => Ok(l_prime(m + n)?.scale(&Scalar::from_int(n - m))),
        // G′_{q−1/2}: coefficient q − 1/2 − m/2
        (LPrime(m), GPrime(q)) => Ok(g_prime(m + q)?.scale(&Scalar::frac(2 * q - 1 - m, 2))),
        (GPrime(_), LPrime(_)) => Ok(psi_expected(y, x)?.scale(&Scalar::from_int(-1))),
        (GPrime(p), GPrime(q)) => Ok(l_prime(p + q - 1)?.scale(&Scalar::from_int(2))),
    }
}

/// [x, y] minus its predicted value.
pub fn psi_residual(x: TElementLabel, y: TElementLabel) -> Result<SmashElement> {
    smash_bracket(&x.element()?, &y.element()?)?.sub(&psi_expected(x, y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::HalfInt;

    fn x(g: Generator) -> SmashElement {
        SmashElement::generator(g, SmashMode::AK).unwrap()
    }

    fn a(k: i64, eps: u8) -> SmashElement {
        SmashElement::amonomial(AMonomial::new(k, eps), SmashMode::AK).unwrap()
    }

    #[test]
    fn reorders_generators() {
        let p = smash_product(&x(Generator::L(1)), &x(Generator::L(-1))).unwrap();
        assert_eq!(p.to_string(), "L(-1)L(1) - 2*L(0)");
    }

    #[test]
    fn odd_square() {
        let g = Generator::g(HalfInt::half(1));
        assert_eq!(smash_product(&x(g), &x(g)).unwrap().to_string(), "-L(1)");
    }

    #[test]
    fn moves_a_left() {
        let p = smash_product(&x(Generator::L(-1)), &a(1, 0)).unwrap();
        assert_eq!(p.to_string(), "1 + t (x) L(-1)");
        let p = smash_product(&a(2, 1), &x(Generator::g_plus_half(-1))).unwrap();
        assert_eq!(smash_product(&p, &x(Generator::L(3))).unwrap().to_string(), "t^2*xi (x) G(-1/2)L(3)");
    }

    #[test]
    fn xi_anticommutes_with_g() {
        // G ξ = −ξ G + G∘ξ
        let p = smash_product(&x(Generator::g_plus_half(0)), &a(0, 1)).unwrap();
        assert_eq!(p.to_string(), "-xi (x) G(1/2) - t");
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(1, 0, 1).unwrap().to_string(), "-L(1)");
        assert_eq!(omega(2, -1, 0).unwrap().to_string(), "L(-1)L(2) - 3*L(1)");
        // L_2L_1 and L_1L_2 share a PBW monomial, so only two quadratic terms survive
        let w = omega(3, 0, 2).unwrap();
        assert_eq!(w.to_string(), "L(0)L(3) - L(1)L(2) - L(3)");
    }

    #[test]
    fn primed_elements() {
        assert_eq!(l_prime(-1).unwrap().to_string(), "-L(-1)");
        assert_eq!(l_prime(0).unwrap().to_string(), "L(0) + 1/2*xi (x) G(-1/2) - t (x) L(-1)");
        // leading term (−1)ⁿLₙ
        assert_eq!(
            l_prime(1).unwrap().to_string(),
            "-L(1) - xi (x) G(1/2) + 2*t (x) L(0) + t*xi (x) G(-1/2) - t^2 (x) L(-1)"
        );
        assert_ne!(
            l_prime(1).unwrap().to_string(),
            "L(1) + xi (x) G(1/2) - 2*t (x) L(0) - t*xi (x) G(-1/2) + t^2 (x) L(-1)"
        );
        assert_eq!(g_prime(0).unwrap().to_string(), "G(-1/2) - 2*xi (x) L(-1)");
        assert_eq!(
            g_prime(1).unwrap().to_string(),
            "-G(1/2) + 2*xi (x) L(0) + t (x) G(-1/2) - 2*t*xi (x) L(-1)"
        );
        assert!(l_prime(-2).is_err());
        assert!(g_prime(-1).is_err());
    }

    #[test]
    fn reconstruction_small() {
        for n in 0..=3 {
            let (r1, r2) = verify_reconstruction(n).unwrap();
            assert!(r1.is_zero(), "n={n}: {r1}");
            assert!(r2.is_zero(), "n={n}: {r2}");
        }
        let plus = SmashElement::generator(Generator::L(-1), SmashMode::AK).unwrap();
        let (_, r2) = verify_reconstruction_with(0, &plus).unwrap();
        assert_eq!(r2.to_string(), "-4*xi (x) L(-1)");
    }

    #[test]
    fn degree_guard() {
        let w = WordSum::word(vec![Letter::X(Generator::L(1)); 7]);
        assert_eq!(w.normalize(SmashMode::PureU), Err(Error::DegreeGuard(7, 6)));
    }

    #[test]
    fn mode_checks() {
        assert!(SmashElement::amonomial(AMonomial::t(1), SmashMode::PureU).is_err());
        assert!(SmashElement::amonomial(AMonomial::t(-1), SmashMode::APlusKPlus).is_err());
        assert!(SmashElement::generator(Generator::C, SmashMode::AK).is_err());
        assert!(SmashElement::generator(Generator::C, SmashMode::PureU).is_ok());
    }

    #[test]
    fn psi_table_small() {
        use TElementLabel::*;
        for (x, y) in [(LPrime(0), LPrime(1)), (LPrime(1), GPrime(1)), (GPrime(1), GPrime(2)), (GPrime(2), LPrime(2))] {
            let r = psi_residual(x, y).unwrap();
            assert!(r.is_zero(), "[{x}, {y}] residual {r}");
        }
    }

    #[test]
    fn primed_elements_commute_with_a_and_g() {
        let gm = x(Generator::g_plus_half(-1));
        for n in 0..=3 {
            assert!(smash_bracket(&gm, &l_prime(n).unwrap()).unwrap().is_zero());
            assert!(smash_bracket(&gm, &g_prime(n).unwrap()).unwrap().is_zero());
            for k in -2..=2 {
                for eps in 0..=1 {
                    assert!(smash_bracket(&l_prime(n).unwrap(), &a(k, eps)).unwrap().is_zero());
                    if n >= 1 {
                        assert!(smash_bracket(&g_prime(n).unwrap(), &a(k, eps)).unwrap().is_zero());
                    }
                }
            }
        }
    }
}
