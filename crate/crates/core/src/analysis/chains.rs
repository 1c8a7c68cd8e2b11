//! The three long computations deriving annihilators from Ω^{(m)}: a t–L sum,
//! a t–G sum and a G–L sum. They hold as operators on any module killed by the
//! Ω^{(m)}; the Ω–G one is moreover an identity in U(k̂).

use rayon::prelude::*;

use super::annihilator::first_nonzero;
use super::report::CheckReport;
use crate::algebra::{AMonomial, Generator, HalfInt};
use crate::enveloping::{binomial, omega_words, sign, Letter, SmashMode, WordSum};
use crate::error::Result;
use crate::gamma::{GammaModule, Window};
use crate::scalar::Scalar;

pub const L_CHAIN_ANCHOR: &str = "sum_{i,j}(-1)^{i+j}C(2,j)[t^{r+i-j},Omega^{(m)}_{k+1-i,s-1+j}] = sum_i (-1)^i C(m+2,i) t^{r+k+1-i} L_{s-1+i}";
pub const G_CHAIN_ANCHOR: &str = "[S_{s-1},G_{p+1}]-[S_s,G_p] = 3/2 sum_i (-1)^i C(m+3,i) t^{k-i} G_{p+s+i}";
pub const OMEGA_G_CHAIN_ANCHOR: &str = "sum of [Omega^{(m)},G] = 3/2 sum_i (-1)^i C(m+2,i) G_{k-i+j+1}L_{p+i-1}";

/// The coefficient 3/2 shared by the t–G and Ω–G chains.
pub fn three_halves() -> Scalar {
    Scalar::frac(3, 2)
}

fn t(k: i64) -> WordSum {
    WordSum::amonomial(AMonomial::t(k))
}

fn x(g: Generator) -> WordSum {
    WordSum::generator(g)
}

fn tl(a: i64, n: i64) -> WordSum {
    WordSum::word(vec![Letter::A(AMonomial::t(a)), Letter::X(Generator::L(n))])
}

fn c(n: i64, i: i64) -> Scalar {
    &sign(i) * &binomial(n, i)
}

/// Both sides of the t–L chain.
pub fn l_chain(r: i64, k: i64, s: i64, m: u32) -> Result<(WordSum, WordSum)> {
    let mut lhs = WordSum::zero();
    for i in 0..=1 {
        for j in 0..=2 {
            let br = t(r + i - j).bracket(&omega_words(k + 1 - i, s - 1 + j, m))?;
            lhs = lhs.add(&br.scale(&(&sign(i) * &c(2, j))));
        }
    }
    let n = m as i64 + 2;
    let mut rhs = WordSum::zero();
    for i in 0..=n {
        rhs = rhs.add(&tl(r + k + 1 - i, s - 1 + i).scale(&c(n, i)));
    }
    Ok((lhs, rhs))
}

/// Both sides of the t–G chain with a configurable right-hand coefficient.
pub fn g_chain(k: i64, s: i64, p: HalfInt, m: u32, coeff: &Scalar) -> Result<(WordSum, WordSum)> {
    let n = m as i64 + 3;
    let sum = |shift: i64| {
        let mut out = WordSum::zero();
        for i in 0..=n {
            out = out.add(&tl(k - i, s + shift + i).scale(&c(n, i)));
        }
        out
    };
    let lhs = sum(-1)
        .bracket(&x(Generator::G(p.add_int(1))))?
        .sub(&sum(0).bracket(&x(Generator::G(p)))?);
    let mut rhs = WordSum::zero();
    for i in 0..=n {
        let w = WordSum::word(vec![Letter::A(AMonomial::t(k - i)), Letter::X(Generator::G(p.add_int(s + i)))]);
        rhs = rhs.add(&w.scale(&c(n, i)));
    }
    Ok((lhs, rhs.scale(coeff)))
}

/// Both sides of the Ω–G chain with a configurable right-hand coefficient.
pub fn omega_g_chain(k: i64, p: i64, j: HalfInt, m: u32, coeff: &Scalar) -> Result<(WordSum, WordSum)> {
    let terms: [(i64, i64, i64, i64); 6] = [(0, -1, 1, 1), (0, 0, 0, -2), (0, 1, -1, 1), (1, -1, 0, -1), (1, 0, -1, 2), (1, 1, -2, -1)];
    let mut lhs = WordSum::zero();
    for (dk, dp, dj, f) in terms {
        let br = omega_words(k + dk, p + dp, m).bracket(&x(Generator::G(j.add_int(dj))))?;
        lhs = lhs.add(&br.scale(&Scalar::from_int(f)));
    }
    let n = m as i64 + 2;
    let mut rhs = WordSum::zero();
    for i in 0..=n {
        let w = WordSum::word(vec![Letter::X(Generator::G(j.add_int(k - i + 1))), Letter::X(Generator::L(p + i - 1))]);
        rhs = rhs.add(&w.scale(&c(n, i)));
    }
    Ok((lhs, rhs.scale(coeff)))
}

fn ints() -> std::ops::RangeInclusive<i64> {
    -2..=2
}

fn halves() -> Vec<HalfInt> {
    (-2..2).map(|n| HalfInt::from_doubled(2 * n + 1)).collect()
}

/// All swept instances of the three chains as labelled (lhs, rhs) pairs.
pub fn chain_instances(m: u32, coeff: &Scalar) -> Result<Vec<(&'static str, String, WordSum, WordSum)>> {
    let mut out = Vec::new();
    for r in ints() {
        for k in ints() {
            for s in ints() {
                let (l, rh) = l_chain(r, k, s, m)?;
                out.push(("chain.t-l", format!("(r,k,s)=({r},{k},{s})"), l, rh));
            }
        }
    }
    for k in ints() {
        for s in ints() {
            for p in halves() {
                let (l, rh) = g_chain(k, s, p, m, coeff)?;
                out.push(("chain.t-g", format!("(k,s,p)=({k},{s},{p})"), l, rh));
            }
        }
    }
    for k in ints() {
        for p in ints() {
            for j in halves() {
                let (l, rh) = omega_g_chain(k, p, j, m, coeff)?;
                out.push(("chain.omega-g", format!("(k,p,j)=({k},{p},{j})"), l, rh));
            }
        }
    }
    Ok(out)
}

fn anchor(name: &str) -> &'static str {
    match name {
        "chain.t-l" => L_CHAIN_ANCHOR,
        "chain.t-g" => G_CHAIN_ANCHOR,
        _ => OMEGA_G_CHAIN_ANCHOR,
    }
}

/// Module-level check: both sides of every instance kill every interior vector.
pub fn verify_chains_on_module(module: &GammaModule, window: &Window, m: u32, coeff: &Scalar) -> Result<Vec<CheckReport>> {
    let keys = module.interior_keys(window);
    let instances = chain_instances(m, coeff)?;
    let mut reports = Vec::new();
    for name in ["chain.t-l", "chain.t-g", "chain.omega-g"] {
        let ops: Vec<(String, WordSum)> = instances
            .iter()
            .filter(|(n, ..)| *n == name)
            .flat_map(|(_, label, l, r)| [(format!("lhs{label}"), l.clone()), (format!("rhs{label}"), r.clone())])
            .collect();
        let count = ops.len() / 2;
        reports.push(
            CheckReport::from_witness(format!("{name}.module"), anchor(name), first_nonzero(module, &keys, &ops)?)
                .with_param("module", module.descriptor())
                .with_param("m", m)
                .with_param("instances", count)
                .with_param("window", window),
        );
    }
    Ok(reports)
}

/// lhs − rhs of one instance in normal form; t–L and t–G live in A·U(k), Ω–G in U(k̂).
pub fn algebra_residual(name: &str, lhs: &WordSum, rhs: &WordSum) -> Result<crate::enveloping::SmashElement> {
    let mode = if name == "chain.omega-g" { SmashMode::PureU } else { SmashMode::AK };
    lhs.sub(rhs).normalize(mode)
}

/// Algebra-level reports. The Ω–G chain is an exact identity and is normative;
/// the other two are reported as information only.
pub fn verify_chains_in_algebra(m: u32, coeff: &Scalar, include_info: bool) -> Result<Vec<CheckReport>> {
    let instances = chain_instances(m, coeff)?;
    let wanted: Vec<_> = instances
        .into_iter()
        .filter(|(n, ..)| include_info || *n == "chain.omega-g")
        .collect();
    let residuals: Vec<(&'static str, Option<String>)> = wanted
        .par_iter()
        .map(|(n, label, l, r)| {
            let res = algebra_residual(n, l, r)?;
            Ok((*n, (!res.is_zero()).then(|| format!("{label}: {res}"))))
        })
        .collect::<Result<_>>()?;
    let mut reports = Vec::new();
    for name in ["chain.omega-g", "chain.t-g", "chain.t-l"] {
        let mine: Vec<&Option<String>> = residuals.iter().filter(|(n, _)| *n == name).map(|(_, w)| w).collect();
        if mine.is_empty() {
            continue;
        }
        let witness = mine.iter().find_map(|w| (*w).clone());
        let nonzero = mine.iter().filter(|w| w.is_some()).count();
        let report = if name == "chain.omega-g" {
            CheckReport::from_witness(format!("{name}.algebra"), anchor(name), witness)
        } else {
            let note = witness.map(|w| format!("{nonzero} of {} instances are nonzero in the algebra, e.g. {w}", mine.len()));
            CheckReport::info(format!("{name}.algebra"), anchor(name), note)
        };
        reports.push(report.with_param("m", m).with_param("instances", mine.len()));
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraMode;

    #[test]
    fn omega_g_identity_holds_exactly() {
        for (k, p, j) in [(0, 0, 1), (1, -1, -1), (2, 1, 3)] {
            let (l, r) = omega_g_chain(k, p, HalfInt::from_doubled(j), 2, &three_halves()).unwrap();
            assert!(algebra_residual("chain.omega-g", &l, &r).unwrap().is_zero());
        }
    }

    #[test]
    fn mutated_coefficient_is_detected() {
        let (l, r) = omega_g_chain(0, 0, HalfInt::from_doubled(1), 3, &Scalar::one()).unwrap();
        assert!(!algebra_residual("chain.omega-g", &l, &r).unwrap().is_zero());
    }

    #[test]
    fn chains_vanish_on_generic_module() {
        let m = GammaModule::gamma(Scalar::frac(1, 3), Scalar::frac(1, 4), AlgebraMode::KHat).unwrap();
        let reports = verify_chains_on_module(&m, &Window::new(-4, 4, 1).unwrap(), 3, &three_halves()).unwrap();
        assert!(reports.iter().all(|r| r.passed()), "{reports:?}");
    }
}
