//! The inventory of displayed identities: compatibility of the two actions,
//! reconstruction of Lₙ and G from the primed elements, the centralizer
//! property of those elements, their bracket table, and the Ω-chains.

use rayon::prelude::*;

use super::annihilator::minimal_annihilator;
use super::chains::{three_halves, verify_chains_in_algebra, verify_chains_on_module};
use super::report::{sort_reports, CheckReport};
use crate::algebra::{
    a_action_on_k, bracket, compatibility_residual, k_action_on_a, koszul, AElement, AMode, AMonomial, AlgebraMode,
    Generator, HalfInt, LieElement,
};
use crate::enveloping::{
    g_prime, l_prime, psi_residual, smash_bracket, verify_reconstruction_with, SmashElement, SmashMode, TElementLabel,
};
use crate::error::Result;
use crate::gamma::{GammaModule, Window};
use crate::scalar::Scalar;

pub const COMPAT_ANCHOR: &str = "v(ax)-(-1)^{|v||a|}a(vx)=[v,a]x";
pub const RECONSTRUCTION_ANCHOR: &str = "L_n, G_{n-1/2} in terms of L'_j, G'_{j-1/2} and A";
pub const CENTRALIZER_ANCHOR: &str = "[x,A]=[x,G_{-1/2}]=0";
pub const PSI_ANCHOR: &str = "psi(L'_n) -> (-1)^n L_n: [L'_m,L'_n]=(n-m)L'_{m+n}, [L'_m,G'_r]=(r-m/2)G'_{m+r}, [G'_r,G'_s]=2L'_{r+s}";

/// Largest |k| of the A-monomials probed against the primed elements.
pub const CENTRALIZER_A_RANGE: i64 = 6;
/// Largest primed index in the bracket table.
pub const PSI_RANGE: i64 = 5;

#[derive(Clone, Debug)]
pub struct CatalogueOptions {
    /// Window for the module-level chains on the formal Γ(l,b).
    pub window: Window,
    pub max_m: u32,
    /// Right-hand coefficient of the t–G and Ω–G chains; 3/2 unless mutated.
    pub chain_coefficient: Scalar,
    /// Stand-in for L′_{−1} in the second reconstruction identity.
    pub l_prime_minus_one: Option<SmashElement>,
    /// Also report the algebra-level t–L and t–G chains (informational).
    pub include_info: bool,
}

impl Default for CatalogueOptions {
    fn default() -> Self {
        CatalogueOptions {
            window: Window::new(-6, 6, 2).expect("valid window"),
            max_m: 6,
            chain_coefficient: three_halves(),
            l_prime_minus_one: None,
            include_info: true,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    L,
    G,
    T,
    Xi,
}

/// The eight displays as (v, a, x) shapes.
const DISPLAYS: [(Kind, Kind, Kind); 8] = [
    (Kind::L, Kind::T, Kind::L),
    (Kind::L, Kind::Xi, Kind::L),
    (Kind::L, Kind::T, Kind::G),
    (Kind::L, Kind::Xi, Kind::G),
    (Kind::G, Kind::T, Kind::L),
    (Kind::G, Kind::T, Kind::G),
    (Kind::G, Kind::Xi, Kind::L),
    (Kind::G, Kind::Xi, Kind::G),
];

fn display_name(d: (Kind, Kind, Kind)) -> String {
    let s = |k: Kind| match k {
        Kind::L => "L",
        Kind::G => "G",
        Kind::T => "t",
        Kind::Xi => "xi",
    };
    format!("compat.{}-{}-{}", s(d.0), s(d.1), s(d.2))
}

fn lie(g: Generator) -> Result<LieElement> {
    LieElement::basis(g, AlgebraMode::K)
}

fn gen(kind: Kind, idx: i64) -> Generator {
    match kind {
        Kind::L => Generator::L(idx),
        _ => Generator::g_plus_half(idx),
    }
}

/// The closed form of v(ax) − (−1)^{|v||a|}a(vx). Odd generators are G_{idx+1/2}.
fn closed_form(d: (Kind, Kind, Kind), v: i64, i: i64, x: i64) -> Result<LieElement> {
    let zero = || LieElement::zero(AlgebraMode::K);
    let half = |n: i64| HalfInt::from_doubled(2 * n + 1);
    Ok(match d {
        (Kind::L, Kind::T, Kind::L) => lie(Generator::L(v + x + i))?.scale(&Scalar::from_int(i)),
        (Kind::L, Kind::Xi, Kind::L) => lie(Generator::G(half(v + x)))?.scale(&Scalar::frac(v + 1, 4)),
        (Kind::L, Kind::T, Kind::G) => lie(Generator::G(half(v + x + i)))?.scale(&Scalar::from_int(i)),
        (Kind::L, Kind::Xi, Kind::G) => zero(),
        (Kind::G, Kind::T, Kind::L) => lie(Generator::G(half(v + x + i)))?.scale(&Scalar::frac(i, 2)),
        (Kind::G, Kind::T, Kind::G) => zero(),
        // G_{v+1/2}, ξ, L_x: −L_{v+x+1}
        (Kind::G, Kind::Xi, Kind::L) => lie(Generator::L(v + x + 1))?.scale(&Scalar::from_int(-1)),
        (Kind::G, Kind::Xi, Kind::G) => lie(Generator::G(half(v + x + 1)))?.scale(&Scalar::from_int(-1)),
        _ => unreachable!("not a display shape"),
    })
}

fn display_instance(d: (Kind, Kind, Kind), v: i64, i: i64, x: i64) -> Result<Option<String>> {
    let vg = lie(gen(d.0, v))?;
    let xg = lie(gen(d.2, x))?;
    let a = match d.1 {
        Kind::T => AMonomial::t(i),
        _ => AMonomial::t_xi(0),
    };
    let ae = AElement::monomial(a, AMode::Full)?;
    let sgn = Scalar::from_int(koszul(gen(d.0, v).parity(), a.parity()));
    let lhs = bracket(&vg, &a_action_on_k(&ae, &xg)?)?.sub(&a_action_on_k(&ae, &bracket(&vg, &xg)?)?.scale(&sgn))?;
    let expected = closed_form(d, v, i, x)?;
    let diff = lhs.sub(&expected)?;
    if !diff.is_zero() {
        return Ok(Some(format!("{} {a} {}: closed form off by {diff}", gen(d.0, v), gen(d.2, x))));
    }
    let through_action = a_action_on_k(&k_action_on_a(&vg, &ae)?, &xg)?;
    let res = compatibility_residual(&vg, &ae, &xg)?;
    if !res.is_zero() {
        return Ok(Some(format!("{} {a} {}: residual {res} against {through_action}", gen(d.0, v), gen(d.2, x))));
    }
    Ok(None)
}

/// The eight compatibility displays for indices in [−range, range]; the ξ
/// displays have no t-exponent to sweep.
pub fn verify_compatibility(range: i64) -> Result<Vec<CheckReport>> {
    DISPLAYS
        .par_iter()
        .map(|&d| {
            let exps: Vec<i64> = if d.1 == Kind::T { (-range..=range).collect() } else { vec![0] };
            let mut witness = None;
            let mut count = 0;
            'outer: for v in -range..=range {
                for x in -range..=range {
                    for &i in &exps {
                        count += 1;
                        if let Some(w) = display_instance(d, v, i, x)? {
                            witness = Some(w);
                            break 'outer;
                        }
                    }
                }
            }
            Ok(CheckReport::from_witness(display_name(d), COMPAT_ANCHOR, witness)
                .with_param("range", range)
                .with_param("instances", count))
        })
        .collect()
}

/// Both reconstruction identities for n = 0..=max_n.
pub fn verify_reconstructions(max_n: i64, l_prime_minus_one: Option<&SmashElement>) -> Result<Vec<CheckReport>> {
    let lp = match l_prime_minus_one {
        Some(x) => x.clone(),
        None => l_prime(-1)?,
    };
    let per_n: Vec<(SmashElement, SmashElement)> =
        (0..=max_n).into_par_iter().map(|n| verify_reconstruction_with(n, &lp)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (n, (first, second)) in per_n.into_iter().enumerate() {
        for (name, res) in [("reconstruction.l", first), ("reconstruction.g", second)] {
            out.push(
                CheckReport::from_witness(name, RECONSTRUCTION_ANCHOR, (!res.is_zero()).then(|| res.to_string()))
                    .with_param("n", n),
            );
        }
    }
    Ok(out)
}

fn probes(with_a: bool) -> Result<Vec<(String, SmashElement)>> {
    let mut out = vec![(
        Generator::g_plus_half(-1).to_string(),
        SmashElement::generator(Generator::g_plus_half(-1), SmashMode::AK)?,
    )];
    if with_a {
        for k in -CENTRALIZER_A_RANGE..=CENTRALIZER_A_RANGE {
            for a in [AMonomial::t(k), AMonomial::t_xi(k)] {
                out.push((a.to_string(), SmashElement::amonomial(a, SmashMode::AK)?));
            }
        }
    }
    Ok(out)
}

/// Brackets of L′ₙ and G′_{n−1/2}, n ≤ max_n, with G_{−1/2} and with A.
/// G′_{−1/2} is probed against G_{−1/2} only: its bracket with t^k is −k t^{k−1}ξ.
pub fn verify_centralizer(max_n: i64) -> Result<Vec<CheckReport>> {
    let labels: Vec<TElementLabel> = (0..=max_n)
        .flat_map(|n| [TElementLabel::LPrime(n), TElementLabel::GPrime(n)])
        .collect();
    let with_a = probes(true)?;
    let g_only = probes(false)?;
    labels
        .par_iter()
        .map(|&label| {
            let x = match label {
                TElementLabel::LPrime(n) => l_prime(n)?,
                TElementLabel::GPrime(n) => g_prime(n)?,
            };
            let against = if matches!(label, TElementLabel::GPrime(0)) { &g_only } else { &with_a };
            let mut witness = None;
            for (name, y) in against {
                let r = smash_bracket(&x, y)?;
                if !r.is_zero() {
                    witness = Some(format!("[{label}, {name}] = {r}"));
                    break;
                }
            }
            let name = match label {
                TElementLabel::LPrime(_) => "centralizer.l-prime",
                TElementLabel::GPrime(_) => "centralizer.g-prime",
            };
            Ok(CheckReport::from_witness(name, CENTRALIZER_ANCHOR, witness)
                .with_param("element", label)
                .with_param("probes", against.len()))
        })
        .collect()
}

/// The bracket table of the primed elements for indices ≤ range, one report per
/// bracket type.
pub fn verify_psi_table(range: i64) -> Result<Vec<CheckReport>> {
    use TElementLabel::*;
    // G′ labels n+1 stand for G′_{n+1/2}, n = 0..=range
    let ls: Vec<TElementLabel> = (0..=range).map(LPrime).collect();
    let gs: Vec<TElementLabel> = (1..=range + 1).map(GPrime).collect();
    let families: [(&str, &Vec<TElementLabel>, &Vec<TElementLabel>); 3] =
        [("psi.l-l", &ls, &ls), ("psi.l-g", &ls, &gs), ("psi.g-g", &gs, &gs)];
    let mut out = Vec::new();
    for (name, xs, ys) in families {
        let pairs: Vec<(TElementLabel, TElementLabel)> =
            xs.iter().flat_map(|x| ys.iter().map(move |y| (*x, *y))).collect();
        let residuals: Vec<Option<String>> = pairs
            .par_iter()
            .map(|&(x, y)| {
                let r = psi_residual(x, y)?;
                Ok((!r.is_zero()).then(|| format!("[{x}, {y}] off by {r}")))
            })
            .collect::<Result<_>>()?;
        out.push(
            CheckReport::from_witness(name, PSI_ANCHOR, residuals.into_iter().flatten().next())
                .with_param("range", range)
                .with_param("pairs", pairs.len()),
        );
    }
    Ok(out)
}

/// The full catalogue with default options.
pub fn verify_identity_catalogue(max_n: i64) -> Result<Vec<CheckReport>> {
    verify_identity_catalogue_with(max_n, &CatalogueOptions::default())
}

pub fn verify_identity_catalogue_with(max_n: i64, opts: &CatalogueOptions) -> Result<Vec<CheckReport>> {
    let mut out = verify_compatibility(max_n.min(4))?;
    out.extend(verify_reconstructions(max_n, opts.l_prime_minus_one.as_ref())?);
    out.extend(verify_centralizer(max_n)?);
    out.extend(verify_psi_table(max_n.min(PSI_RANGE))?);

    let formal = GammaModule::gamma(Scalar::lambda(), Scalar::b(), AlgebraMode::KHat)?;
    let ann = minimal_annihilator(&formal, &opts.window, opts.max_m)?;
    out.extend(ann.reports);
    out.extend(verify_chains_on_module(&formal, &opts.window, ann.m, &opts.chain_coefficient)?);
    out.extend(
        verify_chains_in_algebra(ann.m, &opts.chain_coefficient, opts.include_info)?
            .into_iter()
            .map(|r| r.with_param("coefficient", &opts.chain_coefficient)),
    );
    sort_reports(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::report::Status;

    #[test]
    fn closed_forms_agree_with_the_actions() {
        let reports = verify_compatibility(2).unwrap();
        assert_eq!(reports.len(), 8);
        assert!(reports.iter().all(|r| r.status == Status::Pass), "{reports:?}");
    }

    #[test]
    fn xi_display_example() {
        // (L_1, ξ, L_0) = 1/2 G_{3/2}
        let w = display_instance((Kind::L, Kind::Xi, Kind::L), 1, 0, 0).unwrap();
        assert!(w.is_none());
        let lhs = closed_form((Kind::L, Kind::Xi, Kind::L), 1, 0, 0).unwrap();
        assert_eq!(lhs.to_string(), "1/2*G(3/2)");
    }

    #[test]
    fn small_reconstruction_and_psi() {
        assert!(verify_reconstructions(2, None).unwrap().iter().all(CheckReport::passed));
        assert!(verify_psi_table(2).unwrap().iter().all(CheckReport::passed));
    }

    #[test]
    fn mutated_extension_breaks_n_zero() {
        let wrong = SmashElement::generator(Generator::L(-1), SmashMode::AK).unwrap();
        let reports = verify_reconstructions(0, Some(&wrong)).unwrap();
        let g = reports.iter().find(|r| r.name == "reconstruction.g").unwrap();
        assert_eq!(g.status, Status::Fail);
    }

    #[test]
    fn g_prime_zero_does_not_commute_with_t() {
        let r = smash_bracket(
            &g_prime(0).unwrap(),
            &SmashElement::amonomial(AMonomial::t(2), SmashMode::AK).unwrap(),
        )
        .unwrap();
        assert_eq!(r.to_string(), "-2*t*xi");
    }
}
