//! The tensor-density modules Γ(λ, b) on A = ℂ[t^±] ⊗ Λ(ξ) and their variants.
//!
//! λ never appears as an exponent: the basis key (k, ε) stands for t^{λ+k} ξ^ε,
//! and λ enters only through action coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::algebra::{bracket, koszul, AMonomial, AlgebraMode, Generator, LieElement, Parity};
use crate::enveloping::{Letter, SmashElement, WordSum};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Family {
    /// Γ(λ, b), basis t^k ξ^ε for all k.
    Gamma,
    /// Γ⁺(0, b) = A⁺, keys k ≥ 0.
    GammaPlus,
    /// Γ⁻(0, b) = Γ(0, b)/Γ⁺(0, b), keys k ≤ −1.
    GammaMinus,
    /// Γ′(λ, b): the simple subquotient of Γ(λ, b).
    GammaPrime,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExclusionRole {
    /// The complement of the key is a submodule; the key is dropped.
    Sub,
    /// The key spans a submodule; it is factored out.
    Quotient,
}

impl fmt::Display for ExclusionRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExclusionRole::Sub => "sub",
            ExclusionRole::Quotient => "quotient",
        })
    }
}

/// Sign of the G_{n+1/2}·t^k coefficient. The printed pair of odd formulas
/// fails the [G, G] relation by a global sign; `Corrected` flips the first one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SignConvention {
    #[default]
    Corrected,
    Printed,
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignConvention::Corrected => "corrected",
            SignConvention::Printed => "paper-printed",
        })
    }
}

impl std::str::FromStr for SignConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(SignConvention::Corrected),
            "paper-printed" => Ok(SignConvention::Printed),
            other => Err(Error::Parse(format!("unknown sign convention '{other}'"))),
        }
    }
}

/// A word sum stored as sorted reversed words, so that words sharing a
/// right-hand suffix share its evaluation.
#[derive(Clone, Debug)]
pub struct PreparedOperator {
    reversed: Vec<(Vec<Letter>, Scalar)>,
}

type StepCache = HashMap<(Letter, BasisKey), Option<(Scalar, BasisKey)>>;

impl PreparedOperator {
    pub fn new(x: &WordSum) -> PreparedOperator {
        let mut reversed: Vec<(Vec<Letter>, Scalar)> =
            x.terms().map(|(w, c)| (w.iter().rev().copied().collect(), c.clone())).collect();
        reversed.sort_by(|a, b| a.0.cmp(&b.0));
        PreparedOperator { reversed }
    }

    pub fn apply(&self, module: &GammaModule, v: &ModuleVector) -> Result<ModuleVector> {
        let mut cache = StepCache::new();
        let mut out = ModuleVector::zero();
        for (key, c) in &v.terms {
            self.descend(module, &mut cache, 0, self.reversed.len(), 0, *key, c, &mut out)?;
        }
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        module: &GammaModule,
        cache: &mut StepCache,
        lo: usize,
        hi: usize,
        depth: usize,
        key: BasisKey,
        acc: &Scalar,
        out: &mut ModuleVector,
    ) -> Result<()> {
        let mut i = lo;
        // shorter words sort first, so the ones ending here lead the range
        while i < hi && self.reversed[i].0.len() == depth {
            out.add_term(key, acc * &self.reversed[i].1);
            i += 1;
        }
        while i < hi {
            let letter = self.reversed[i].0[depth];
            let mut j = i + 1;
            while j < hi && self.reversed[j].0[depth] == letter {
                j += 1;
            }
            let step = match cache.get(&(letter, key)) {
                Some(hit) => hit.clone(),
                None => {
                    let r = module.act_letter_on_key(letter, key)?;
                    cache.insert((letter, key), r.clone());
                    r
                }
            };
            if let Some((d, tgt)) = step {
                let next = if d.is_one() { acc.clone() } else { acc * &d };
                self.descend(module, cache, i, j, depth + 1, tgt, &next, out)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// The basis vector t^{λ+k} ξ^eps.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub struct BasisKey {
    pub k: i64,
    pub eps: u8,
}

impl BasisKey {
    pub fn new(k: i64, eps: u8) -> Self {
        assert!(eps <= 1);
        BasisKey { k, eps }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.eps)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Exclusion {
    pub key: BasisKey,
    pub role: ExclusionRole,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleParams {
    pub lambda: Scalar,
    pub b: Scalar,
    pub family: Family,
    pub excluded: Option<Exclusion>,
    pub sign_convention: SignConvention,
    pub algebra_mode: AlgebraMode,
}

impl ModuleParams {
    pub fn gamma(lambda: Scalar, b: Scalar, algebra_mode: AlgebraMode) -> Self {
        ModuleParams {
            lambda,
            b,
            family: Family::Gamma,
            excluded: None,
            sign_convention: SignConvention::Corrected,
            algebra_mode,
        }
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    pub fn with_convention(mut self, c: SignConvention) -> Self {
        self.sign_convention = c;
        self
    }

    pub fn with_exclusion(mut self, key: BasisKey, role: ExclusionRole) -> Self {
        self.excluded = Some(Exclusion { key, role });
        self
    }
}

/// Range of generator indices over which the linear-in-n coefficients are probed
/// when validating an exclusion; two points would already suffice.
const EXCLUSION_PROBE: std::ops::RangeInclusive<i64> = -3..=3;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaModule {
    params: ModuleParams,
    parity_flipped: bool,
}

/// Validates the parameter combination and returns a module handle.
pub fn make_module(params: ModuleParams) -> Result<GammaModule> {
    let zero_lambda = params.lambda.is_zero();
    match params.family {
        Family::GammaPlus | Family::GammaMinus => {
            if !zero_lambda {
                return Err(Error::InvalidModule(format!("{:?} requires lambda = 0", params.family)));
            }
            if params.algebra_mode != AlgebraMode::KPlus {
                return Err(Error::InvalidModule(format!("{:?} is a kplus module", params.family)));
            }
            if params.excluded.is_some() {
                return Err(Error::InvalidModule("exclusions apply to gamma' only".into()));
            }
        }
        Family::Gamma if params.excluded.is_some() => {
            return Err(Error::InvalidModule("exclusions apply to gamma' only".into()));
        }
        _ => {}
    }
    let m = GammaModule { params, parity_flipped: false };
    if let Some(ex) = m.params.excluded {
        m.validate_exclusion(ex)?;
    }
    Ok(m)
}

impl GammaModule {
    /// Γ(λ, b) with the corrected convention.
    pub fn gamma(lambda: Scalar, b: Scalar, mode: AlgebraMode) -> Result<Self> {
        make_module(ModuleParams::gamma(lambda, b, mode))
    }

    /// Γ′(λ, b): for λ ∈ ℤ and b ∈ {0, 1/2} the one-dimensional defect is removed,
    /// otherwise Γ′ = Γ.
    pub fn gamma_prime(lambda: Scalar, b: Scalar, mode: AlgebraMode, conv: SignConvention) -> Result<Self> {
        let excl = reducibility_exclusion(&lambda, &b);
        let mut p = ModuleParams::gamma(lambda, b, mode).with_family(Family::GammaPrime).with_convention(conv);
        p.excluded = excl;
        make_module(p)
    }

    pub fn params(&self) -> &ModuleParams {
        &self.params
    }

    pub fn family(&self) -> Family {
        self.params.family
    }

    pub fn algebra_mode(&self) -> AlgebraMode {
        self.params.algebra_mode
    }

    pub fn parity_flipped(&self) -> bool {
        self.parity_flipped
    }

    pub fn is_numeric(&self) -> bool {
        self.params.lambda.is_numeric() && self.params.b.is_numeric()
    }

    /// Π(M): same vectors and action, opposite grading.
    pub fn parity_change(&self) -> GammaModule {
        GammaModule { params: self.params.clone(), parity_flipped: !self.parity_flipped }
    }

    pub fn admits(&self, key: BasisKey) -> bool {
        let in_family = match self.params.family {
            Family::GammaPlus => key.k >= 0,
            Family::GammaMinus => key.k <= -1,
            _ => true,
        };
        in_family && self.params.excluded.map_or(true, |ex| ex.key != key)
    }

    pub fn key_parity(&self, key: BasisKey) -> Parity {
        let p = Parity::from_bit(key.eps);
        if self.parity_flipped {
            p.flip()
        } else {
            p
        }
    }

    /// L_0-eigenvalue λ + k + b + eps/2.
    pub fn weight(&self, key: BasisKey) -> Scalar {
        &(&self.params.lambda + &self.params.b) + &Scalar::frac(2 * key.k + key.eps as i64, 2)
    }

    /// Action coefficient of a generator on a basis key in the underlying Γ(λ, b),
    /// before any family truncation. `None` for C.
    pub fn raw_coefficient(&self, g: Generator, key: BasisKey) -> Option<(Scalar, BasisKey)> {
        let lam = &self.params.lambda;
        let b = &self.params.b;
        let k = Scalar::from_int(key.k);
        match (g, key.eps) {
            (Generator::C, _) => None,
            (Generator::L(n), 0) => {
                let c = &(lam + &k) + &(b * &Scalar::from_int(n + 1));
                Some((c, BasisKey::new(n + key.k, 0)))
            }
            (Generator::L(n), _) => {
                let c = &(lam + &k) + &(&(b + &Scalar::frac(1, 2)) * &Scalar::from_int(n + 1));
                Some((c, BasisKey::new(n + key.k, 1)))
            }
            (Generator::G(r), 0) => {
                let n = r.floor();
                let c = &(&k + lam) + &(b * &Scalar::from_int(2 * (n + 1)));
                let c = match self.params.sign_convention {
                    SignConvention::Corrected => c,
                    SignConvention::Printed => -c,
                };
                Some((c, BasisKey::new(n + key.k, 1)))
            }
            (Generator::G(r), _) => Some((Scalar::from_int(-1), BasisKey::new(r.floor() + key.k + 1, 0))),
        }
    }

    fn check_generator(&self, g: Generator) -> Result<()> {
        if g == Generator::C && self.params.algebra_mode == AlgebraMode::KHat {
            return Ok(());
        }
        self.params.algebra_mode.check(g)
    }

    /// g·e_key, with the family truncation applied.
    pub fn act_generator_on_key(&self, g: Generator, key: BasisKey) -> Result<Option<(Scalar, BasisKey)>> {
        self.check_generator(g)?;
        let Some((c, tgt)) = self.raw_coefficient(g, key) else {
            return Ok(None);
        };
        if c.is_zero() {
            return Ok(None);
        }
        if self.admits(tgt) {
            return Ok(Some((c, tgt)));
        }
        match (self.params.family, self.params.excluded) {
            // quotient projections drop the component
            (Family::GammaMinus, _) => Ok(None),
            (_, Some(ex)) if ex.key == tgt && ex.role == ExclusionRole::Quotient => Ok(None),
            _ => Err(Error::InvalidModule(format!(
                "{g} maps {key} to {tgt} outside the module with coefficient {c}"
            ))),
        }
    }

    pub fn act_generator(&self, g: Generator, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (key, c) in &v.terms {
            if let Some((d, tgt)) = self.act_generator_on_key(g, *key)? {
                out.add_term(tgt, c * &d);
            }
        }
        Ok(out)
    }

    /// Multiplication by t^k ξ^eps.
    pub fn act_amonomial(&self, a: AMonomial, v: &ModuleVector) -> Result<ModuleVector> {
        if a.is_one() {
            return Ok(v.clone());
        }
        let mut out = ModuleVector::zero();
        for (key, c) in &v.terms {
            if let Some(tgt) = self.amonomial_on_key(a, *key)? {
                out.add_term(tgt, c.clone());
            }
        }
        Ok(out)
    }

    fn amonomial_on_key(&self, a: AMonomial, key: BasisKey) -> Result<Option<BasisKey>> {
        if let Some(ex) = self.params.excluded {
            return Err(Error::InvalidModule(format!("A does not act on a module with {} key {}", ex.role, ex.key)));
        }
        let plus_only = matches!(self.params.family, Family::GammaPlus | Family::GammaMinus);
        if plus_only && a.k < 0 {
            return Err(Error::OutOfBounds(a.to_string(), "A+".into()));
        }
        if key.eps + a.eps > 1 {
            return Ok(None);
        }
        let tgt = BasisKey::new(key.k + a.k, key.eps + a.eps);
        if self.admits(tgt) {
            Ok(Some(tgt))
        } else if self.params.family == Family::GammaMinus {
            Ok(None)
        } else {
            Err(Error::InvalidModule(format!("{a} maps {key} outside the module")))
        }
    }

    /// Every letter sends a basis vector to a multiple of a single basis vector.
    pub fn act_letter_on_key(&self, l: Letter, key: BasisKey) -> Result<Option<(Scalar, BasisKey)>> {
        match l {
            Letter::A(a) if a.is_one() => Ok(Some((Scalar::one(), key))),
            Letter::A(a) => Ok(self.amonomial_on_key(a, key)?.map(|tgt| (Scalar::one(), tgt))),
            Letter::X(g) => self.act_generator_on_key(g, key),
        }
    }

    pub fn act_letter(&self, l: Letter, v: &ModuleVector) -> Result<ModuleVector> {
        match l {
            Letter::A(a) => self.act_amonomial(a, v),
            Letter::X(g) => self.act_generator(g, v),
        }
    }

    /// Applies a word right to left.
    pub fn act_word(&self, w: &[Letter], v: &ModuleVector) -> Result<ModuleVector> {
        let mut cur = v.clone();
        for l in w.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.act_letter(*l, &cur)?;
        }
        Ok(cur)
    }

    pub fn act_words(&self, x: &WordSum, v: &ModuleVector) -> Result<ModuleVector> {
        PreparedOperator::new(x).apply(self, v)
    }

    pub fn act_smash(&self, x: &SmashElement, v: &ModuleVector) -> Result<ModuleVector> {
        self.act_words(&x.to_words(), v)
    }

    pub fn act_lie(&self, x: &LieElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (g, c) in x.terms() {
            out = out.add(&self.act_generator(*g, v)?.scale(c));
        }
        Ok(out)
    }

    /// x(y·e) − (−1)^{|x||y|} y(x·e) − [x, y]·e; zero when the formulas define a representation.
    pub fn module_axiom_residual(&self, x: Generator, y: Generator, key: BasisKey) -> Result<ModuleVector> {
        let mode = self.params.algebra_mode;
        let e = ModuleVector::basis(key);
        let xy = self.act_generator(x, &self.act_generator(y, &e)?)?;
        let yx = self.act_generator(y, &self.act_generator(x, &e)?)?;
        let br = bracket(&LieElement::basis(x, mode)?, &LieElement::basis(y, mode)?)?;
        let sign = Scalar::from_int(koszul(x.parity(), y.parity()));
        Ok(xy.sub(&yx.scale(&sign)).sub(&self.act_lie(&br, &e)?))
    }

    /// Interior keys of the window admissible for this module, ascending.
    pub fn interior_keys(&self, w: &Window) -> Vec<BasisKey> {
        let (lo, hi) = w.interior();
        (lo..=hi)
            .flat_map(|k| [BasisKey::new(k, 0), BasisKey::new(k, 1)])
            .filter(|key| self.admits(*key))
            .collect()
    }

    /// Module specialised at numeric parameter values (either may be left formal).
    pub fn substitute(&self, lambda: Option<&Rational>, b: Option<&Rational>) -> Result<GammaModule> {
        let mut p = self.params.clone();
        p.lambda = p.lambda.substitute(lambda, b)?;
        p.b = p.b.substitute(lambda, b)?;
        let m = make_module(p)?;
        Ok(GammaModule { parity_flipped: self.parity_flipped, ..m })
    }

    fn validate_exclusion(&self, ex: Exclusion) -> Result<()> {
        let gens = EXCLUSION_PROBE.flat_map(|n| [Generator::L(n), Generator::g_plus_half(n)]);
        for g in gens {
            match ex.role {
                ExclusionRole::Quotient => {
                    if let Some((c, tgt)) = self.raw_coefficient(g, ex.key) {
                        if tgt != ex.key && !c.is_zero() {
                            return Err(Error::InvalidModule(format!(
                                "{} does not span a submodule: {g} has coefficient {c}",
                                ex.key
                            )));
                        }
                    }
                }
                ExclusionRole::Sub => {
                    for src in incoming_sources(g, ex.key) {
                        let (c, _) = self.raw_coefficient(g, src).expect("non-central generator");
                        if src != ex.key && !c.is_zero() {
                            return Err(Error::InvalidModule(format!(
                                "complement of {} is not a submodule: {g} maps {src} into it with coefficient {c}",
                                ex.key
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Descriptor string accepted by [`parse_descriptor`].
    pub fn descriptor(&self) -> String {
        let name = match self.params.family {
            Family::Gamma => "gamma",
            Family::GammaPlus => "gamma+",
            Family::GammaMinus => "gamma-",
            Family::GammaPrime => "gamma'",
        };
        let core = format!("{name}({},{})", render_param(&self.params.lambda), render_param(&self.params.b));
        if self.parity_flipped {
            format!("pi({core})")
        } else {
            core
        }
    }
}

/// Source keys from which `g` could land on `tgt`.
pub fn incoming_sources(g: Generator, tgt: BasisKey) -> Vec<BasisKey> {
    match g {
        Generator::C => vec![],
        Generator::L(n) => vec![BasisKey::new(tgt.k - n, tgt.eps)],
        Generator::G(r) => {
            let n = r.floor();
            if tgt.eps == 1 {
                vec![BasisKey::new(tgt.k - n, 0)]
            } else {
                vec![BasisKey::new(tgt.k - n - 1, 1)]
            }
        }
    }
}

/// For λ ∈ ℤ: at b = 0 the key (−λ, 0) spans a trivial submodule; at b = 1/2 nothing
/// maps into (−λ−1, 1).
pub fn reducibility_exclusion(lambda: &Scalar, b: &Scalar) -> Option<Exclusion> {
    let l = lambda.as_integer()?;
    let b = b.as_rational()?;
    if b == Rational::from_integer(0.into()) {
        Some(Exclusion { key: BasisKey::new(-l, 0), role: ExclusionRole::Quotient })
    } else if b == crate::scalar::rat(1, 2) {
        Some(Exclusion { key: BasisKey::new(-l - 1, 1), role: ExclusionRole::Sub })
    } else {
        None
    }
}

fn render_param(s: &Scalar) -> String {
    s.to_string().replace(' ', "")
}

/// A finite combination of basis keys.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ModuleVector {
    terms: BTreeMap<BasisKey, Scalar>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    pub fn basis(key: BasisKey) -> Self {
        let mut v = ModuleVector::zero();
        v.add_term(key, Scalar::one());
        v
    }

    fn add_term(&mut self, key: BasisKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: BasisKey) -> Scalar {
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &ModuleVector) -> ModuleVector {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn substitute(&self, lambda: Option<&Rational>, b: Option<&Rational>) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.substitute(lambda, b)?);
        }
        Ok(out)
    }
}

impl fmt::Display for ModuleVector {
    /// `c * t^k` and `c * t^k xi` terms joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(key, c)| {
                let xi = if key.eps == 1 { " xi" } else { "" };
                format!("{} * t^{}{xi}", c.coeff_string(), key.k)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Finite truncation [kmin, kmax] of the key lattice; keys within `margin` of
/// either end are boundary keys.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Window {
    pub kmin: i64,
    pub kmax: i64,
    pub margin: i64,
}

impl Window {
    pub fn new(kmin: i64, kmax: i64, margin: i64) -> Result<Self> {
        if margin < 0 || kmin + margin > kmax - margin {
            return Err(Error::InvalidWindow(format!("{kmin}..{kmax} with margin {margin}")));
        }
        Ok(Window { kmin, kmax, margin })
    }

    pub fn interior(&self) -> (i64, i64) {
        (self.kmin + self.margin, self.kmax - self.margin)
    }

    pub fn in_interior(&self, key: BasisKey) -> bool {
        let (lo, hi) = self.interior();
        (lo..=hi).contains(&key.k)
    }

    pub fn widened(&self, by: i64) -> Window {
        Window { kmin: self.kmin - by, kmax: self.kmax + by, margin: self.margin }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{} margin {}", self.kmin, self.kmax, self.margin)
    }
}

impl std::str::FromStr for Window {
    type Err = Error;
    /// `A..B`, margin 0.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once("..").ok_or_else(|| Error::Parse(format!("window '{s}' is not A..B")))?;
        let p = |x: &str| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad window bound '{x}'")));
        Window::new(p(a)?, p(b)?, 0)
    }
}

/// `p/q`, an integer, or the formal symbol (`l` for λ, `b` for b).
pub fn parse_param(s: &str, symbol: &str) -> Result<Scalar> {
    let s = s.trim();
    if s == symbol {
        return Ok(if symbol == "l" { Scalar::lambda() } else { Scalar::b() });
    }
    parse_rational(s)
        .map(Scalar::from_rational)
        .ok_or_else(|| Error::Parse(format!("malformed rational '{s}'")))
}

/// Parses `gamma(λ,b)`, `gamma+(0,b)`, `gamma-(0,b)`, `gamma'(λ,b)` and `pi(...)`.
pub fn parse_descriptor(s: &str, mode: AlgebraMode, conv: SignConvention) -> Result<GammaModule> {
    let s = s.trim();
    let bad = || Error::Parse(format!("unknown module descriptor '{s}'"));
    if let Some(inner) = s.strip_prefix("pi(").and_then(|r| r.strip_suffix(')')) {
        return Ok(parse_descriptor(inner, mode, conv)?.parity_change());
    }
    let open = s.find('(').ok_or_else(bad)?;
    let (name, rest) = s.split_at(open);
    let args = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (l, b) = args.split_once(',').ok_or_else(bad)?;
    let lambda = parse_param(l, "l")?;
    let b = parse_param(b, "b")?;
    let base = ModuleParams::gamma(lambda.clone(), b.clone(), mode).with_convention(conv);
    match name.trim() {
        "gamma" => make_module(base),
        "gamma+" => make_module(base.with_family(Family::GammaPlus)),
        "gamma-" => make_module(base.with_family(Family::GammaMinus)),
        "gamma'" => GammaModule::gamma_prime(lambda, b, mode, conv),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::HalfInt;
    use crate::scalar::rat;

    fn num(l: i64, b: (i64, i64)) -> GammaModule {
        GammaModule::gamma(Scalar::from_int(l), Scalar::frac(b.0, b.1), AlgebraMode::KHat).unwrap()
    }

    fn formal(conv: SignConvention) -> GammaModule {
        make_module(ModuleParams::gamma(Scalar::lambda(), Scalar::b(), AlgebraMode::KHat).with_convention(conv)).unwrap()
    }

    #[test]
    fn action_examples() {
        let m = num(0, (0, 1));
        let v = m.act_generator(Generator::L(1), &ModuleVector::basis(BasisKey::new(2, 0))).unwrap();
        assert_eq!(v, ModuleVector::basis(BasisKey::new(3, 0)).scale(&Scalar::from_int(2)));
        for conv in [SignConvention::Corrected, SignConvention::Printed] {
            let m = formal(conv);
            let v = m.act_generator(Generator::g_plus_half(0), &ModuleVector::basis(BasisKey::new(0, 1))).unwrap();
            assert_eq!(v.to_string(), "-1 * t^1");
        }
        let m = formal(SignConvention::Corrected);
        let v = m.act_generator(Generator::L(0), &ModuleVector::basis(BasisKey::new(3, 1))).unwrap();
        assert_eq!(v.to_string(), "(l + b + 7/2) * t^3 xi");
        let v = m.act_amonomial(AMonomial::t(2), &ModuleVector::basis(BasisKey::new(3, 1))).unwrap();
        assert_eq!(v, ModuleVector::basis(BasisKey::new(5, 1)));
    }

    #[test]
    fn axiom_residuals() {
        let half = Generator::g(HalfInt::half(1));
        let mhalf = Generator::g(HalfInt::half(-1));
        for conv in [SignConvention::Corrected, SignConvention::Printed] {
            let m = formal(conv);
            assert!(m.module_axiom_residual(Generator::L(1), Generator::L(-1), BasisKey::new(2, 0)).unwrap().is_zero());
        }
        let key = BasisKey::new(2, 0);
        assert!(formal(SignConvention::Corrected).module_axiom_residual(half, mhalf, key).unwrap().is_zero());
        let r = formal(SignConvention::Printed).module_axiom_residual(half, mhalf, key).unwrap();
        assert_eq!(r.to_string(), "(4*l + 4*b + 8) * t^2");
    }

    #[test]
    fn weights() {
        let m = formal(SignConvention::Corrected);
        assert_eq!(m.weight(BasisKey::new(0, 0)).to_string(), "l + b");
        assert_eq!(m.weight(BasisKey::new(0, 1)).to_string(), "l + b + 1/2");
    }

    #[test]
    fn family_validation() {
        let plus = ModuleParams::gamma(Scalar::zero(), Scalar::b(), AlgebraMode::KPlus).with_family(Family::GammaPlus);
        assert!(make_module(plus.clone()).is_ok());
        let mut wrong = plus.clone();
        wrong.algebra_mode = AlgebraMode::KHat;
        assert!(make_module(wrong).is_err());
        let mut wrong = plus;
        wrong.lambda = Scalar::frac(1, 3);
        assert!(make_module(wrong).is_err());

        let prime = |b: Scalar, key, role| {
            make_module(
                ModuleParams::gamma(Scalar::zero(), b, AlgebraMode::KHat)
                    .with_family(Family::GammaPrime)
                    .with_exclusion(key, role),
            )
        };
        assert!(prime(Scalar::zero(), BasisKey::new(0, 0), ExclusionRole::Sub).is_err());
        assert!(prime(Scalar::zero(), BasisKey::new(0, 0), ExclusionRole::Quotient).is_ok());
        assert!(prime(Scalar::frac(1, 2), BasisKey::new(-1, 1), ExclusionRole::Sub).is_ok());
        assert!(prime(Scalar::frac(1, 2), BasisKey::new(-1, 1), ExclusionRole::Quotient).is_err());
    }

    #[test]
    fn parity_change_is_an_involution() {
        let m = num(0, (0, 1));
        assert_eq!(m.parity_change().key_parity(BasisKey::new(0, 0)), Parity::Odd);
        assert_eq!(m.parity_change().parity_change(), m);
    }

    #[test]
    fn descriptors_round_trip() {
        for d in ["gamma(1/3,1/4)", "gamma+(0,b)", "gamma-(0,b)", "gamma'(0,1/2)", "pi(gamma'(0,0))", "gamma(l,b)"] {
            let mode = if d.contains('+') || d.contains('-') { AlgebraMode::KPlus } else { AlgebraMode::KHat };
            let m = parse_descriptor(d, mode, SignConvention::Corrected).unwrap();
            assert_eq!(m.descriptor(), d);
        }
        assert!(parse_descriptor("delta(1,2)", AlgebraMode::KHat, SignConvention::Corrected).is_err());
        assert!(parse_descriptor("gamma(1/0,2)", AlgebraMode::KHat, SignConvention::Corrected).is_err());
    }

    #[test]
    fn substitution_specialises() {
        let m = formal(SignConvention::Corrected).substitute(Some(&rat(1, 3)), Some(&rat(1, 4))).unwrap();
        assert_eq!(m.weight(BasisKey::new(0, 0)), Scalar::frac(7, 12));
    }

    #[test]
    fn windows() {
        assert!(Window::new(-10, 10, 3).is_ok());
        assert!(Window::new(0, 3, 2).is_err());
        assert_eq!("-8..8".parse::<Window>().unwrap(), Window::new(-8, 8, 0).unwrap());
    }
}
