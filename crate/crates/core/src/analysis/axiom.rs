//! Representation check for a Γ-module: x(y·e) − (−1)^{|x||y|} y(x·e) = [x,y]·e
//! for generator pairs on window vectors, grouped by the parities of the pair.

use rayon::prelude::*;

use super::report::CheckReport;
use crate::algebra::{Generator, HalfInt, Parity};
use crate::error::Result;
use crate::gamma::{BasisKey, GammaModule, ModuleVector, Window};

pub const AXIOM_ANCHOR: &str = "x(ye) - (-1)^{|x||y|} y(xe) = [x,y]e with the actions of L_n, G_{n+1/2} on t^{l+k} xi^eps";

#[derive(Clone, Debug)]
pub struct AxiomFailure {
    pub x: Generator,
    pub y: Generator,
    pub key: BasisKey,
    pub residual: ModuleVector,
}

/// Generators with |index| ≤ range the module's algebra admits, C included in khat mode.
pub fn axiom_generators(module: &GammaModule, range: i64) -> Vec<Generator> {
    let mode = module.algebra_mode();
    let mut out: Vec<Generator> = (-range..=range).map(Generator::L).collect();
    out.extend(
        (-2 * range..=2 * range)
            .filter(|d| d.rem_euclid(2) == 1)
            .map(|d| Generator::G(HalfInt::from_doubled(d))),
    );
    if mode.has_center() {
        out.push(Generator::C);
    }
    out.retain(|g| mode.admits(*g));
    out
}

pub fn axiom_failures(module: &GammaModule, range: i64, window: &Window) -> Result<Vec<AxiomFailure>> {
    let gens = axiom_generators(module, range);
    let keys = module.interior_keys(window);
    let pairs: Vec<(Generator, Generator)> = gens.iter().flat_map(|x| gens.iter().map(move |y| (*x, *y))).collect();
    let per_pair: Vec<Vec<AxiomFailure>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let mut out = Vec::new();
            for &key in &keys {
                let residual = module.module_axiom_residual(x, y, key)?;
                if !residual.is_zero() {
                    out.push(AxiomFailure { x, y, key, residual });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_pair.into_iter().flatten().collect())
}

fn class(x: Generator, y: Generator) -> &'static str {
    match (x.parity(), y.parity()) {
        (Parity::Even, Parity::Even) => "module-axiom.even-even",
        (Parity::Odd, Parity::Odd) => "module-axiom.odd-odd",
        _ => "module-axiom.even-odd",
    }
}

/// One report per parity class. A failing class cites (G_{1/2}, G_{−1/2}) when
/// that pair is among its failures, the lowest-degree odd pair otherwise.
pub fn verify_module_axiom(module: &GammaModule, range: i64, window: &Window) -> Result<Vec<CheckReport>> {
    let failures = axiom_failures(module, range, window)?;
    let gens = axiom_generators(module, range);
    let preferred = (Generator::g_plus_half(0), Generator::g_plus_half(-1));
    let mut out = Vec::new();
    for name in ["module-axiom.even-even", "module-axiom.even-odd", "module-axiom.odd-odd"] {
        let total = gens.iter().flat_map(|x| gens.iter().map(move |y| (*x, *y))).filter(|(x, y)| class(*x, *y) == name).count();
        let mine: Vec<&AxiomFailure> = failures.iter().filter(|f| class(f.x, f.y) == name).collect();
        let mut bad_pairs: Vec<(Generator, Generator)> = mine.iter().map(|f| (f.x, f.y)).collect();
        bad_pairs.dedup();
        let example = mine
            .iter()
            .find(|f| (f.x, f.y) == preferred)
            .or_else(|| mine.first())
            .map(|f| {
                format!(
                    "{} of {total} pairs fail, e.g. ({}, {}) on {}: residual {}",
                    bad_pairs.len(),
                    f.x,
                    f.y,
                    f.key,
                    f.residual
                )
            });
        out.push(
            CheckReport::from_witness(name, AXIOM_ANCHOR, example)
                .with_param("module", module.descriptor())
                .with_param("convention", module.params().sign_convention)
                .with_param("range", range)
                .with_param("window", window)
                .with_param("pairs", total),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraMode;
    use crate::gamma::{make_module, ModuleParams, SignConvention};
    use crate::scalar::Scalar;

    fn formal(c: SignConvention) -> GammaModule {
        make_module(ModuleParams::gamma(Scalar::lambda(), Scalar::b(), AlgebraMode::KHat).with_convention(c)).unwrap()
    }

    #[test]
    fn corrected_passes_and_printed_fails_only_odd_odd() {
        let w = Window::new(-3, 3, 0).unwrap();
        let ok = verify_module_axiom(&formal(SignConvention::Corrected), 2, &w).unwrap();
        assert!(ok.iter().all(CheckReport::passed), "{ok:?}");
        let bad = verify_module_axiom(&formal(SignConvention::Printed), 2, &w).unwrap();
        let failing: Vec<&str> = bad.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
        assert_eq!(failing, ["module-axiom.odd-odd"]);
        let witness = bad[2].witness.as_deref().unwrap();
        assert!(witness.contains("(G(1/2), G(-1/2)) on (-3,0): residual (4*l + 4*b - 12) * t^-3"), "{witness}");
    }
}
