//! Discovery of the smallest m for which the Ω-operators annihilate a module.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::report::CheckReport;
use crate::algebra::{AlgebraMode, Generator, HalfInt};
use crate::enveloping::{binomial, omega_words, sign, Letter, WordSum};
use crate::error::{Error, Result};
use crate::gamma::{BasisKey, GammaModule, ModuleVector, PreparedOperator, Window};

pub const OMEGA_ANCHOR: &str = "Omega^{(m)}_{k,s}=sum_i (-1)^i C(m,i) L_{k-i}L_{s+i}";
pub const GL_ANCHOR: &str = "sum_i (-1)^i C(m,i) G_{k-i}L_{p+i}";

/// Integer sweep for k, s (k⁺ needs non-negative indices before shifting).
pub fn sweep(mode: AlgebraMode) -> RangeInclusive<i64> {
    if mode == AlgebraMode::KPlus {
        0..=4
    } else {
        -2..=2
    }
}

/// Half-integer sweep for the G index.
pub fn half_sweep(mode: AlgebraMode) -> Vec<HalfInt> {
    if mode == AlgebraMode::KPlus {
        (0..=4).map(|n| HalfInt::from_doubled(2 * n + 1)).collect()
    } else {
        (-2..2).map(|n| HalfInt::from_doubled(2 * n + 1)).collect()
    }
}

/// Ω^{(m)}_{k,s}, or Ω^{(m)}_{k+m−1,s−1} in kplus mode.
pub fn omega_operator(mode: AlgebraMode, k: i64, s: i64, m: u32) -> WordSum {
    if mode == AlgebraMode::KPlus {
        omega_words(k + m as i64 - 1, s - 1, m)
    } else {
        omega_words(k, s, m)
    }
}

/// Σ(−1)ⁱC(m,i) G_{k−i} L_{p+i}, or Σ(−1)ⁱC(m,i) G_{m+k−i−1} L_{p+i−1} in kplus mode.
pub fn gl_operator(mode: AlgebraMode, k: HalfInt, p: i64, m: u32) -> WordSum {
    let m = m as i64;
    let (k, p) = if mode == AlgebraMode::KPlus { (k.add_int(m - 1), p - 1) } else { (k, p) };
    let mut out = WordSum::zero();
    for i in 0..=m {
        let w = WordSum::word(vec![Letter::X(Generator::G(k.add_int(-i))), Letter::X(Generator::L(p + i))]);
        out = out.add(&w.scale(&(&sign(i) * &binomial(m, i))));
    }
    out
}

/// First operator/key pair acting nonzero, rendered.
pub fn first_nonzero(
    module: &GammaModule,
    keys: &[BasisKey],
    ops: &[(String, WordSum)],
) -> Result<Option<String>> {
    let found: Vec<Option<String>> = ops
        .par_iter()
        .map(|(label, op)| {
            let prepared = PreparedOperator::new(op);
            for key in keys {
                let v = prepared.apply(module, &ModuleVector::basis(*key))?;
                if !v.is_zero() {
                    return Ok(Some(format!("{label} on {key} -> {v}")));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().next())
}

fn omega_ops(mode: AlgebraMode, m: u32) -> Vec<(String, WordSum)> {
    let mut out = Vec::new();
    for k in sweep(mode) {
        for s in sweep(mode) {
            out.push((format!("Omega^({m})_({k},{s})"), omega_operator(mode, k, s, m)));
        }
    }
    out
}

pub fn gl_ops(mode: AlgebraMode, m: u32) -> Vec<(String, WordSum)> {
    let mut out = Vec::new();
    for k in half_sweep(mode) {
        for p in sweep(mode) {
            out.push((format!("GL^({m})_({k},{p})"), gl_operator(mode, k, p, m)));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnnihilatorOutcome {
    pub m: u32,
    /// A nonzero action at order m − 1.
    pub minimality_witness: Option<String>,
    pub reports: Vec<CheckReport>,
}

/// Smallest m ≤ max_m with every swept Ω^{(m)} killing the window interior,
/// followed by the G–L sums at that m.
pub fn minimal_annihilator(module: &GammaModule, window: &Window, max_m: u32) -> Result<AnnihilatorOutcome> {
    let mode = module.algebra_mode();
    let keys = module.interior_keys(window);
    let mut previous: Option<String> = None;
    for m in 0..=max_m {
        let witness = first_nonzero(module, &keys, &omega_ops(mode, m))?;
        if witness.is_none() && m >= 1 {
            let desc = module.descriptor();
            let omega = CheckReport::pass("annihilator.omega", OMEGA_ANCHOR)
                .with_param("module", &desc)
                .with_param("m", m)
                .with_param("window", window);
            let minimal = CheckReport::from_witness(
                "annihilator.omega-minimality",
                OMEGA_ANCHOR,
                previous.is_none().then(|| format!("order {} already annihilates", m - 1)),
            )
            .with_param("module", &desc)
            .with_param("m", m);
            let minimal = match &previous {
                Some(w) => minimal.with_param("witness_below", w),
                None => minimal,
            };
            let gl = CheckReport::from_witness("annihilator.gl-sum", GL_ANCHOR, first_nonzero(module, &keys, &gl_ops(mode, m))?)
                .with_param("module", &desc)
                .with_param("m", m);
            return Ok(AnnihilatorOutcome { m, minimality_witness: previous, reports: vec![omega, minimal, gl] });
        }
        previous = witness;
    }
    Err(Error::AnnihilatorBound(max_m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn generic_order_is_three() {
        let m = GammaModule::gamma(Scalar::frac(1, 3), Scalar::frac(1, 4), AlgebraMode::KHat).unwrap();
        let out = minimal_annihilator(&m, &Window::new(-6, 6, 2).unwrap(), 6).unwrap();
        assert_eq!(out.m, 3);
        assert!(out.minimality_witness.is_some());
        assert!(out.reports.iter().all(|r| r.passed()));
    }

    #[test]
    fn bound_is_reported() {
        let m = GammaModule::gamma(Scalar::frac(1, 3), Scalar::frac(1, 4), AlgebraMode::KHat).unwrap();
        assert_eq!(minimal_annihilator(&m, &Window::new(-4, 4, 1).unwrap(), 2), Err(Error::AnnihilatorBound(2)));
    }

    #[test]
    fn kplus_uses_shifted_indices() {
        let m = GammaModule::gamma(Scalar::frac(1, 3), Scalar::b(), AlgebraMode::KPlus).unwrap();
        let out = minimal_annihilator(&m, &Window::new(-6, 6, 2).unwrap(), 6).unwrap();
        assert_eq!(out.m, 3);
    }
}
