//! Submodules generated by weight vectors. Every weight space of a Γ-module is
//! one-dimensional, so the submodule generated by a basis vector is spanned by
//! the keys reachable along nonzero action coefficients.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::algebra::{AlgebraMode, Generator};
use crate::error::{Error, Result};
use crate::gamma::{BasisKey, GammaModule, ModuleVector, Window};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeRecord {
    pub source: BasisKey,
    pub target: BasisKey,
    pub generator: Generator,
    pub coefficient: Scalar,
}

/// Generators with |index| ≤ gen_range, restricted to index ≥ −1 in kplus mode.
pub fn generators(mode: AlgebraMode, gen_range: i64) -> Vec<Generator> {
    let mut out: Vec<Generator> = (-gen_range..=gen_range).map(Generator::L).collect();
    out.extend((-gen_range..gen_range).map(Generator::g_plus_half));
    out.retain(|g| mode.admits(*g));
    out
}

/// Action edges among interior keys, including those whose coefficient vanishes.
pub fn edge_records(m: &GammaModule, window: &Window, gen_range: i64) -> Result<Vec<EdgeRecord>> {
    let gens = generators(m.algebra_mode(), gen_range);
    let mut out = Vec::new();
    for source in m.interior_keys(window) {
        for g in &gens {
            let Some((c, target)) = m.raw_coefficient(*g, source) else { continue };
            if window.in_interior(target) && m.admits(target) {
                out.push(EdgeRecord { source, target, generator: *g, coefficient: c });
            }
        }
    }
    Ok(out)
}

fn adjacency(edges: &[EdgeRecord]) -> BTreeMap<BasisKey, BTreeSet<BasisKey>> {
    let mut adj: BTreeMap<BasisKey, BTreeSet<BasisKey>> = BTreeMap::new();
    for e in edges.iter().filter(|e| !e.coefficient.is_zero()) {
        adj.entry(e.source).or_default().insert(e.target);
    }
    adj
}

fn closure_in(adj: &BTreeMap<BasisKey, BTreeSet<BasisKey>>, seed: BasisKey) -> BTreeSet<BasisKey> {
    let mut seen = BTreeSet::from([seed]);
    let mut queue = VecDeque::from([seed]);
    while let Some(k) = queue.pop_front() {
        for t in adj.get(&k).into_iter().flatten() {
            if seen.insert(*t) {
                queue.push_back(*t);
            }
        }
    }
    seen
}

/// Smallest out-closed set of interior keys containing `seed`.
pub fn reachability_closure(m: &GammaModule, seed: BasisKey, window: &Window, gen_range: i64) -> Result<BTreeSet<BasisKey>> {
    if !window.in_interior(seed) || !m.admits(seed) {
        return Err(Error::SeedOutsideInterior(seed.to_string()));
    }
    Ok(closure_in(&adjacency(&edge_records(m, window, gen_range)?), seed))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Simple,
    Reducible,
    Inconclusive,
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerdictKind::Simple => "simple",
            VerdictKind::Reducible => "reducible",
            VerdictKind::Inconclusive => "inconclusive",
        })
    }
}

/// Non-constant coefficients at one key: all `outgoing` vanishing makes the key
/// span a submodule, all `incoming` vanishing makes its complement one.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LocusEntry {
    pub key: BasisKey,
    pub outgoing: BTreeSet<String>,
    pub incoming: BTreeSet<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// A nonempty proper out-closed key set for reducible verdicts.
    pub certificate: Option<BTreeSet<BasisKey>>,
    pub locus: Vec<LocusEntry>,
    pub window: Window,
    pub note: Option<String>,
}

impl Verdict {
    /// Certificate rendered as a key list, or its complement when shorter.
    pub fn certificate_summary(&self, m: &GammaModule) -> Option<String> {
        let cert = self.certificate.as_ref()?;
        let interior = m.interior_keys(&self.window);
        let missing: Vec<String> = interior.iter().filter(|k| !cert.contains(k)).map(|k| k.to_string()).collect();
        let inside: Vec<String> = cert.iter().map(|k| k.to_string()).collect();
        Some(if missing.len() < inside.len() {
            format!("interior keys except {}", missing.join(" "))
        } else {
            format!("{{{}}}", inside.join(" "))
        })
    }
}

/// Simple iff the interior reachability digraph is strongly connected.
pub fn simplicity_verdict(m: &GammaModule, window: &Window, gen_range: i64) -> Result<Verdict> {
    let mut verdict = Verdict { kind: VerdictKind::Inconclusive, certificate: None, locus: vec![], window: *window, note: None };
    if window.kmax - window.kmin < 4 * gen_range {
        verdict.note = Some(format!("window narrower than 4*gen_range = {}", 4 * gen_range));
        return Ok(verdict);
    }
    let keys = m.interior_keys(window);
    if keys.is_empty() {
        verdict.note = Some("no interior keys".into());
        return Ok(verdict);
    }
    let edges = edge_records(m, window, gen_range)?;
    let adj = adjacency(&edges);
    let full: BTreeSet<BasisKey> = keys.iter().copied().collect();
    let smallest = keys
        .iter()
        .map(|k| closure_in(&adj, *k))
        .filter(|c| c.len() < full.len())
        .min_by_key(|c| c.len());
    match smallest {
        None => verdict.kind = VerdictKind::Simple,
        Some(c) => {
            verdict.kind = VerdictKind::Reducible;
            verdict.certificate = Some(c);
        }
    }
    if !m.is_numeric() {
        verdict.locus = locus_data(&edges, &keys);
    }
    Ok(verdict)
}

fn locus_data(edges: &[EdgeRecord], keys: &[BasisKey]) -> Vec<LocusEntry> {
    let mut map: BTreeMap<BasisKey, LocusEntry> = keys
        .iter()
        .map(|k| (*k, LocusEntry { key: *k, outgoing: BTreeSet::new(), incoming: BTreeSet::new() }))
        .collect();
    for e in edges {
        if e.source == e.target || e.coefficient.is_zero() || e.coefficient.is_numeric() {
            continue;
        }
        let c = e.coefficient.to_string();
        map.get_mut(&e.source).expect("interior source").outgoing.insert(c.clone());
        map.get_mut(&e.target).expect("interior target").incoming.insert(c);
    }
    map.into_values().filter(|l| !l.outgoing.is_empty() || !l.incoming.is_empty()).collect()
}

/// Direct check that no generator maps a certificate key to an interior key
/// outside the certificate; returns the first offending action.
pub fn certificate_violation(
    m: &GammaModule,
    cert: &BTreeSet<BasisKey>,
    window: &Window,
    gen_range: i64,
) -> Result<Option<String>> {
    for key in cert {
        for g in generators(m.algebra_mode(), gen_range) {
            let v = m.act_generator(g, &ModuleVector::basis(*key))?;
            for (tgt, c) in v.terms() {
                if window.in_interior(*tgt) && !cert.contains(tgt) {
                    return Ok(Some(format!("{g} maps {key} to {tgt} with coefficient {c}")));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma(l: Scalar, b: Scalar, mode: AlgebraMode) -> GammaModule {
        GammaModule::gamma(l, b, mode).unwrap()
    }

    fn w() -> Window {
        Window::new(-10, 10, 3).unwrap()
    }

    #[test]
    fn closures() {
        let m = gamma(Scalar::zero(), Scalar::zero(), AlgebraMode::KHat);
        let c = reachability_closure(&m, BasisKey::new(0, 0), &w(), 3).unwrap();
        assert_eq!(c, BTreeSet::from([BasisKey::new(0, 0)]));
        let c = reachability_closure(&m, BasisKey::new(1, 0), &w(), 3).unwrap();
        assert_eq!(c.len(), m.interior_keys(&w()).len());
        let m = gamma(Scalar::zero(), Scalar::frac(1, 2), AlgebraMode::KHat);
        let c = reachability_closure(&m, BasisKey::new(2, 0), &w(), 3).unwrap();
        assert!(!c.contains(&BasisKey::new(-1, 1)));
        assert_eq!(c.len() + 1, m.interior_keys(&w()).len());
        assert!(reachability_closure(&m, BasisKey::new(9, 0), &w(), 3).is_err());
    }

    #[test]
    fn verdicts() {
        let v = simplicity_verdict(&gamma(Scalar::frac(1, 3), Scalar::frac(1, 4), AlgebraMode::KHat), &w(), 3).unwrap();
        assert_eq!(v.kind, VerdictKind::Simple);
        let m = gamma(Scalar::zero(), Scalar::frac(1, 2), AlgebraMode::KHat);
        let v = simplicity_verdict(&m, &w(), 3).unwrap();
        assert_eq!(v.kind, VerdictKind::Reducible);
        assert_eq!(certificate_violation(&m, v.certificate.as_ref().unwrap(), &w(), 3).unwrap(), None);
        assert_eq!(v.certificate_summary(&m).unwrap(), "interior keys except (-1,1)");
        let v = simplicity_verdict(&gamma(Scalar::frac(1, 3), Scalar::b(), AlgebraMode::KPlus), &w(), 3).unwrap();
        assert_eq!(v.kind, VerdictKind::Simple);
        assert!(!v.locus.is_empty());
        let narrow = Window::new(-5, 5, 1).unwrap();
        let v = simplicity_verdict(&gamma(Scalar::one(), Scalar::one(), AlgebraMode::KHat), &narrow, 3).unwrap();
        assert_eq!(v.kind, VerdictKind::Inconclusive);
    }
}
