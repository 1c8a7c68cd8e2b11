//! Search for module isomorphisms between numeric Γ-modules on a window.
//!
//! Weight spaces are one-dimensional, so a weight-preserving map sends each key
//! to the unique key of equal weight and is fixed by one scalar per key. The
//! scalars solve a homogeneous linear system, one equation per
//! (generator, key) pair.

use std::collections::BTreeMap;

use serde::Serialize;

use super::linsolve::{nowhere_zero_kernel_vector, SparseRow};
use super::reach::generators;
use super::report::{sort_reports, CheckReport};
use crate::algebra::{Generator, HalfInt, Parity};
use crate::error::{Error, Result};
use crate::gamma::{BasisKey, GammaModule, Window};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Intertwiner {
    /// (source key, target key, scaling)
    pub table: Vec<(BasisKey, BasisKey, String)>,
    /// Target weight minus source weight of keys is zero; this is the key offset
    /// in units of 1/2, rendered as a half-integer.
    pub key_offset: String,
    pub parity: Parity,
}

fn doubled_index(key: BasisKey) -> i64 {
    2 * key.k + key.eps as i64
}

fn key_from_doubled(d: i64) -> BasisKey {
    BasisKey::new(d.div_euclid(2), d.rem_euclid(2) as u8)
}

/// Offset d (in halves) with weight₂(key + d) = weight₁(key), if the supports align.
fn weight_offset(m1: &GammaModule, m2: &GammaModule) -> Option<i64> {
    let k0 = BasisKey::new(0, 0);
    let diff = (&m1.weight(k0) - &m2.weight(k0)).as_rational()?;
    let doubled = diff * Rational::from_integer(2.into());
    doubled.is_integer().then(|| i64::try_from(doubled.to_integer()).ok()).flatten()
}

fn numeric(c: &Scalar) -> Rational {
    c.as_rational().expect("numeric module parameters")
}

struct Setup {
    offset: i64,
    keys: Vec<BasisKey>,
    index: BTreeMap<BasisKey, usize>,
}

fn setup(m1: &GammaModule, m2: &GammaModule, window: &Window) -> Result<Option<Setup>> {
    if !m1.is_numeric() || !m2.is_numeric() {
        return Err(Error::NumericParametersRequired);
    }
    let Some(offset) = weight_offset(m1, m2) else { return Ok(None) };
    let (lo, hi) = window.interior();
    let mut keys = Vec::new();
    for d in 2 * lo..=2 * hi + 1 {
        let key = key_from_doubled(d);
        let image = key_from_doubled(d + offset);
        if m1.admits(key) != m2.admits(image) {
            return Ok(None);
        }
        if m1.admits(key) {
            keys.push(key);
        }
    }
    if keys.is_empty() {
        return Ok(None);
    }
    let index = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    Ok(Some(Setup { offset, keys, index }))
}

fn image(s: &Setup, key: BasisKey) -> BasisKey {
    key_from_doubled(doubled_index(key) + s.offset)
}

/// Rows α·c_target − β·c_source = 0 expressing φ(x·e) = x·φ(e).
fn equations(m1: &GammaModule, m2: &GammaModule, s: &Setup, gens: &[Generator]) -> Result<Vec<SparseRow>> {
    let mut rows = Vec::new();
    for (i, key) in s.keys.iter().enumerate() {
        for g in gens {
            let lhs = m1.act_generator_on_key(*g, *key)?;
            let rhs = m2.act_generator_on_key(*g, image(s, *key))?;
            let mut row = SparseRow::new();
            // x·e = 0 forces x·φ(e) = 0 wherever its target lies
            if let Some((a, tgt)) = &lhs {
                match s.index.get(tgt) {
                    Some(j) => {
                        row.insert(*j, numeric(a));
                    }
                    None => continue,
                }
            }
            if let Some((b, _)) = &rhs {
                let e = row.entry(i).or_insert_with(|| Rational::from_integer(0.into()));
                *e -= numeric(b);
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

fn satisfies(rows: &[SparseRow], v: &[Rational]) -> bool {
    rows.iter().all(|r| r.iter().map(|(c, a)| a * &v[*c]).sum::<Rational>() == Rational::from_integer(0.into()))
}

/// An invertible weight-preserving map M1 → M2 commuting with all generators
/// of |index| ≤ gen_range on the interior, re-verified with gen_range + 1.
pub fn find_intertwiner(m1: &GammaModule, m2: &GammaModule, window: &Window, gen_range: i64) -> Result<Option<Intertwiner>> {
    if m1.algebra_mode() != m2.algebra_mode() {
        return Err(Error::ModeMismatch(format!("{} vs {}", m1.algebra_mode(), m2.algebra_mode())));
    }
    let Some(s) = setup(m1, m2, window)? else { return Ok(None) };
    let parities: Vec<Parity> = s.keys.iter().map(|k| m1.key_parity(*k) + m2.key_parity(image(&s, *k))).collect();
    if parities.iter().any(|p| *p != parities[0]) {
        return Ok(None);
    }
    let rows = equations(m1, m2, &s, &generators(m1.algebra_mode(), gen_range))?;
    let Some(v) = nowhere_zero_kernel_vector(&rows, s.keys.len()) else { return Ok(None) };
    let fresh = equations(m1, m2, &s, &generators(m1.algebra_mode(), gen_range + 1))?;
    if !satisfies(&fresh, &v) {
        return Ok(None);
    }
    let table = s.keys.iter().zip(&v).map(|(k, c)| (*k, image(&s, *k), c.to_string())).collect();
    Ok(Some(Intertwiner { table, key_offset: HalfInt::from_doubled(s.offset).to_string(), parity: parities[0] }))
}

pub const ISO_ANCHOR: &str = "Gamma(l1,b1) ~ Gamma(l2,b2) iff l1-l2 in Z and b1=b2, or b_1=1/2,b_2=0 with l1 not in Z; Gamma'(0,0) ~ Pi(Gamma'(0,1/2))";

/// A pair of modules with the expected outcome of the search.
#[derive(Clone, Debug)]
pub struct IsoCase {
    pub name: &'static str,
    pub source: GammaModule,
    pub target: GammaModule,
    pub expect_iso: bool,
}

/// The fixed isomorphism cases; the exceptional pair appears in both b-orders.
pub fn iso_cases() -> Result<Vec<IsoCase>> {
    use crate::algebra::AlgebraMode::KHat;
    use crate::gamma::SignConvention::Corrected;
    let g = |l: Scalar, b: Scalar| GammaModule::gamma(l, b, KHat);
    let q = Scalar::frac;
    Ok(vec![
        IsoCase { name: "iso.integer-shift", source: g(q(1, 3), q(1, 4))?, target: g(q(4, 3), q(1, 4))?, expect_iso: true },
        IsoCase { name: "iso.exceptional-b", source: g(q(1, 3), q(1, 2))?, target: g(q(4, 3), Scalar::zero())?, expect_iso: true },
        IsoCase {
            name: "iso.exceptional-b-reversed",
            source: g(q(1, 3), Scalar::zero())?,
            target: g(q(4, 3), q(1, 2))?,
            expect_iso: true,
        },
        IsoCase {
            name: "iso.parity-twisted-subquotient",
            source: GammaModule::gamma_prime(Scalar::zero(), Scalar::zero(), KHat, Corrected)?,
            target: GammaModule::gamma_prime(Scalar::zero(), q(1, 2), KHat, Corrected)?.parity_change(),
            expect_iso: true,
        },
        IsoCase { name: "iso.distinct-b", source: g(q(1, 3), Scalar::zero())?, target: g(q(1, 3), q(1, 4))?, expect_iso: false },
        IsoCase {
            name: "iso.non-integral-shift",
            source: g(q(1, 3), q(1, 4))?,
            target: g(q(1, 2), q(1, 4))?,
            expect_iso: false,
        },
    ])
}

/// Runs the search in both directions; a case passes when both agree with the expectation.
pub fn verify_isomorphisms(window: &Window, gen_range: i64) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for case in iso_cases()? {
        let fwd = find_intertwiner(&case.source, &case.target, window, gen_range)?;
        let back = find_intertwiner(&case.target, &case.source, window, gen_range)?;
        let witness = if fwd.is_some() != case.expect_iso {
            Some(format!("forward search {}", if fwd.is_some() { "found a map" } else { "found none" }))
        } else if back.is_some() != case.expect_iso {
            Some(format!("reverse search {}", if back.is_some() { "found a map" } else { "found none" }))
        } else {
            None
        };
        let mut r = CheckReport::from_witness(case.name, ISO_ANCHOR, witness)
            .with_param("source", case.source.descriptor())
            .with_param("target", case.target.descriptor())
            .with_param("expected", if case.expect_iso { "isomorphic" } else { "not isomorphic" })
            .with_param("window", window);
        if let Some(it) = &fwd {
            r = r.with_param("parity", it.parity).with_param("key_offset", &it.key_offset);
        }
        out.push(r);
    }
    sort_reports(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraMode;
    use crate::gamma::SignConvention;

    fn g(l: (i64, i64), b: (i64, i64)) -> GammaModule {
        GammaModule::gamma(Scalar::frac(l.0, l.1), Scalar::frac(b.0, b.1), AlgebraMode::KHat).unwrap()
    }

    fn w() -> Window {
        Window::new(-10, 10, 3).unwrap()
    }

    #[test]
    fn integer_shift() {
        let it = find_intertwiner(&g((1, 3), (1, 4)), &g((4, 3), (1, 4)), &w(), 3).unwrap().unwrap();
        assert_eq!(it.parity, Parity::Even);
        assert_eq!(it.key_offset, "-1");
        assert!(it.table.iter().all(|(a, b, _)| b.k == a.k - 1 && b.eps == a.eps));
    }

    #[test]
    fn exceptional_pair_is_odd() {
        let it = find_intertwiner(&g((1, 3), (1, 2)), &g((4, 3), (0, 1)), &w(), 3).unwrap().unwrap();
        assert_eq!(it.parity, Parity::Odd);
    }

    #[test]
    fn negatives() {
        assert!(find_intertwiner(&g((1, 3), (0, 1)), &g((1, 3), (1, 4)), &w(), 3).unwrap().is_none());
        assert!(find_intertwiner(&g((1, 3), (1, 4)), &g((1, 2), (1, 4)), &w(), 3).unwrap().is_none());
        // weights coincide but the actions differ
        assert!(find_intertwiner(&g((1, 3), (1, 4)), &g((1, 12), (1, 2)), &w(), 3).unwrap().is_none());
    }

    #[test]
    fn parity_twisted_subquotients() {
        let c = SignConvention::Corrected;
        let a = GammaModule::gamma_prime(Scalar::zero(), Scalar::zero(), AlgebraMode::KHat, c).unwrap();
        let b = GammaModule::gamma_prime(Scalar::zero(), Scalar::frac(1, 2), AlgebraMode::KHat, c).unwrap().parity_change();
        let it = find_intertwiner(&a, &b, &w(), 3).unwrap().unwrap();
        assert_eq!(it.parity, Parity::Even);
        assert!(find_intertwiner(&b, &a, &w(), 3).unwrap().is_some());
    }

    #[test]
    fn formal_parameters_rejected() {
        let f = GammaModule::gamma(Scalar::lambda(), Scalar::b(), AlgebraMode::KHat).unwrap();
        assert_eq!(find_intertwiner(&f, &f, &w(), 3), Err(Error::NumericParametersRequired));
    }
}
