use rayon::prelude::*;

use super::report::CheckReport;
use crate::algebra::{bracket, koszul, AlgebraMode, Generator, LieElement, Parity};
use crate::error::Result;
use crate::scalar::Scalar;

pub const JACOBI_ANCHOR: &str = "[L_m,L_n]=(n-m)L_{m+n}+(m^3-m)/12 C; [L_m,G_r]=(r-m/2)G_{m+r}; [G_r,G_s]=-2L_{r+s}+(r^2-1/4)/3 C";

/// All basis generators of k̂ with |index| ≤ range, C included.
pub fn basis_in_range(range: i64) -> Vec<Generator> {
    let mut out = vec![Generator::C];
    out.extend((-range..=range).map(Generator::L));
    out.extend((-range..range).map(Generator::g_plus_half));
    out
}

/// [x,[y,z]] − [[x,y],z] − (−1)^{|x||y|}[y,[x,z]] in khat mode.
pub fn jacobi_residual(x: Generator, y: Generator, z: Generator) -> Result<LieElement> {
    let m = AlgebraMode::KHat;
    let (ex, ey, ez) = (LieElement::basis(x, m)?, LieElement::basis(y, m)?, LieElement::basis(z, m)?);
    let lhs = bracket(&ex, &bracket(&ey, &ez)?)?;
    let first = bracket(&bracket(&ex, &ey)?, &ez)?;
    let second = bracket(&ey, &bracket(&ex, &ez)?)?.scale(&Scalar::from_int(koszul(x.parity(), y.parity())));
    lhs.sub(&first)?.sub(&second)
}

fn family_name(ps: [Parity; 3]) -> String {
    let odd = ps.iter().filter(|p| p.is_odd()).count();
    format!("jacobi.{}", ["even-even-even", "one-odd", "two-odd", "odd-odd-odd"][odd])
}

/// Graded Jacobi on every basis triple with |index| ≤ range, one report per parity family.
pub fn verify_jacobi(range: i64) -> Result<Vec<CheckReport>> {
    let basis = basis_in_range(range);
    let mut triples = Vec::with_capacity(basis.len().pow(3));
    for &x in &basis {
        for &y in &basis {
            for &z in &basis {
                triples.push((x, y, z));
            }
        }
    }
    let results: Vec<(String, Option<String>)> = triples
        .par_iter()
        .map(|&(x, y, z)| {
            let fam = family_name([x.parity(), y.parity(), z.parity()]);
            let r = jacobi_residual(x, y, z)?;
            Ok((fam, (!r.is_zero()).then(|| format!("({x}, {y}, {z}) -> {r}"))))
        })
        .collect::<Result<_>>()?;
    let mut families: std::collections::BTreeMap<String, (usize, Option<String>)> = Default::default();
    for (fam, w) in results {
        let slot = families.entry(fam).or_default();
        slot.0 += 1;
        if slot.1.is_none() {
            slot.1 = w;
        }
    }
    Ok(families
        .into_iter()
        .map(|(fam, (n, w))| {
            CheckReport::from_witness(fam, JACOBI_ANCHOR, w)
                .with_param("range", range)
                .with_param("triples", n)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cocycle_triple() {
        assert!(jacobi_residual(Generator::L(2), Generator::L(-3), Generator::L(1)).unwrap().is_zero());
    }

    #[test]
    fn small_range_passes() {
        let reports = verify_jacobi(2).unwrap();
        assert_eq!(reports.len(), 4);
        assert!(reports.iter().all(|r| r.passed()));
    }
}
