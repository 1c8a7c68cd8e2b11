//! Simplicity verdicts over a fixed parameter grid, compared against the
//! expected loci, with certificate soundness and window stability.

use rayon::prelude::*;

use super::reach::{certificate_violation, simplicity_verdict, Verdict, VerdictKind};
use super::report::{sort_reports, CheckReport};
use crate::algebra::AlgebraMode;
use crate::error::Result;
use crate::gamma::{make_module, reducibility_exclusion, Family, GammaModule, ModuleParams, SignConvention, Window};
use crate::scalar::Scalar;

pub const KHAT_ANCHOR: &str = "Gamma(l,b) is simple if and only if l not in Z or b not in {0,1/2}";
pub const KPLUS_ANCHOR: &str = "Gamma(l,b), l not in Z, Gamma^+(0,b) and Gamma^-(0,b) are simple k^+ modules";
pub const SUBQUOTIENT_ANCHOR: &str = "Gamma'(l,b) for l in Z, b in {0,1/2}";

pub fn grid_lambdas() -> Vec<Scalar> {
    vec![Scalar::from_int(-1), Scalar::zero(), Scalar::frac(1, 3), Scalar::one(), Scalar::frac(7, 5)]
}

pub fn grid_bs() -> Vec<Scalar> {
    vec![Scalar::from_int(-1), Scalar::zero(), Scalar::frac(1, 4), Scalar::frac(1, 2), Scalar::one()]
}

#[derive(Clone, Debug)]
pub struct GridOptions {
    pub window: Window,
    pub gen_range: i64,
    /// Extra keys on each side for the stability re-run.
    pub widen_by: i64,
    pub convention: SignConvention,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            window: Window::new(-10, 10, 3).expect("valid window"),
            gen_range: 3,
            widen_by: 4,
            convention: SignConvention::Corrected,
        }
    }
}

/// One module of the grid with the verdict the classification predicts.
#[derive(Clone, Debug)]
pub struct GridCase {
    pub name: &'static str,
    pub anchor: &'static str,
    pub module: GammaModule,
    pub expected: VerdictKind,
}

fn is_int(s: &Scalar) -> bool {
    s.as_integer().is_some()
}

fn kind(reducible: bool) -> VerdictKind {
    if reducible {
        VerdictKind::Reducible
    } else {
        VerdictKind::Simple
    }
}

pub fn grid_cases(conv: SignConvention) -> Result<Vec<GridCase>> {
    let mut out = Vec::new();
    for l in grid_lambdas() {
        for b in grid_bs() {
            let half_or_zero = b.is_zero() || b == Scalar::frac(1, 2);
            let base = ModuleParams::gamma(l.clone(), b.clone(), AlgebraMode::KHat).with_convention(conv);
            out.push(GridCase {
                name: "grid.khat.gamma",
                anchor: KHAT_ANCHOR,
                module: make_module(base.clone())?,
                expected: kind(is_int(&l) && half_or_zero),
            });
            out.push(GridCase {
                name: "grid.kplus.gamma",
                anchor: KPLUS_ANCHOR,
                module: make_module(ModuleParams { algebra_mode: AlgebraMode::KPlus, ..base })?,
                expected: kind(is_int(&l)),
            });
            if reducibility_exclusion(&l, &b).is_some() {
                out.push(GridCase {
                    name: "grid.khat.gamma-prime",
                    anchor: SUBQUOTIENT_ANCHOR,
                    module: GammaModule::gamma_prime(l.clone(), b.clone(), AlgebraMode::KHat, conv)?,
                    expected: VerdictKind::Simple,
                });
            }
        }
    }
    for b in grid_bs() {
        for (name, fam) in [("grid.kplus.gamma-plus", Family::GammaPlus), ("grid.kplus.gamma-minus", Family::GammaMinus)] {
            let p = ModuleParams::gamma(Scalar::zero(), b.clone(), AlgebraMode::KPlus)
                .with_convention(conv)
                .with_family(fam);
            out.push(GridCase { name, anchor: KPLUS_ANCHOR, module: make_module(p)?, expected: VerdictKind::Simple });
        }
    }
    Ok(out)
}

/// Verdict, soundness and stability of one case, folded into a report.
pub fn check_case(case: &GridCase, opts: &GridOptions) -> Result<(CheckReport, Verdict)> {
    let m = &case.module;
    let v = simplicity_verdict(m, &opts.window, opts.gen_range)?;
    let wide = simplicity_verdict(m, &opts.window.widened(opts.widen_by), opts.gen_range)?;
    let soundness = match &v.certificate {
        Some(cert) => certificate_violation(m, cert, &opts.window, opts.gen_range)?,
        None => None,
    };
    let witness = if v.kind != case.expected {
        let detail = v.certificate_summary(m).or_else(|| v.note.clone()).unwrap_or_default();
        Some(format!("verdict {} where {} was expected; certificate {detail}", v.kind, case.expected))
    } else if let Some(s) = soundness {
        Some(format!("certificate is not out-closed: {s}"))
    } else if wide.kind != v.kind {
        Some(format!("verdict changes to {} on the widened window", wide.kind))
    } else {
        None
    };
    let mut r = CheckReport::from_witness(case.name, case.anchor, witness)
        .with_param("module", m.descriptor())
        .with_param("verdict", v.kind)
        .with_param("expected", case.expected)
        .with_param("window", opts.window)
        .with_param("gen_range", opts.gen_range);
    if let Some(c) = v.certificate_summary(m) {
        r = r.with_param("certificate", c);
    }
    Ok((r, v))
}

/// Every grid case as one report, ordered by name and then module.
pub fn verify_grid(opts: &GridOptions) -> Result<Vec<CheckReport>> {
    let cases = grid_cases(opts.convention)?;
    let mut out: Vec<CheckReport> =
        cases.par_iter().map(|c| check_case(c, opts).map(|(r, _)| r)).collect::<Result<_>>()?;
    sort_reports(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let cases = grid_cases(SignConvention::Corrected).unwrap();
        // 25 khat, 25 kplus, 6 subquotients (three integral l, two b), 10 boundary modules
        assert_eq!(cases.len(), 25 + 25 + 6 + 10);
        let reducible = cases.iter().filter(|c| c.name == "grid.khat.gamma" && c.expected == VerdictKind::Reducible);
        assert_eq!(reducible.count(), 6);
    }

    #[test]
    fn khat_row_matches() {
        let opts = GridOptions::default();
        for c in grid_cases(SignConvention::Corrected).unwrap().iter().filter(|c| c.name == "grid.khat.gamma") {
            let (r, _) = check_case(c, &opts).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn trivial_submodule_of_the_plus_module() {
        let opts = GridOptions::default();
        let case = grid_cases(SignConvention::Corrected)
            .unwrap()
            .into_iter()
            .find(|c| c.name == "grid.kplus.gamma-plus" && c.module.params().b.is_zero())
            .unwrap();
        let (_, v) = check_case(&case, &opts).unwrap();
        assert_eq!(v.kind, VerdictKind::Reducible);
        assert_eq!(v.certificate_summary(&case.module).unwrap(), "{(0,0)}");
    }
}
