//! The classification of simple cuspidal modules as a table whose rows name
//! the checks that certify them on finite windows.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Simple,
    Reducible,
    Isomorphism,
    OutOfScope,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Simple => "simple",
            RowStatus::Reducible => "reducible",
            RowStatus::Isomorphism => "isomorphism",
            RowStatus::OutOfScope => "out-of-scope",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassificationRow {
    /// "khat" or "kplus".
    pub algebra: &'static str,
    pub family: &'static str,
    pub condition: &'static str,
    pub status: RowStatus,
    /// Names of the checks certifying the row; empty for out-of-scope rows.
    pub certified_by: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

fn row(
    algebra: &'static str,
    family: &'static str,
    condition: &'static str,
    status: RowStatus,
    certified_by: &[&'static str],
) -> ClassificationRow {
    ClassificationRow { algebra, family, condition, status, certified_by: certified_by.to_vec(), note: None }
}

pub fn classification_table() -> Vec<ClassificationRow> {
    use RowStatus::*;
    let mut plus = row("kplus", "Gamma+(0,b)", "any b", Simple, &["grid.kplus.gamma-plus"]);
    plus.note = Some("at b=0 the constants span a trivial submodule, reported as reducible with certificate {(0,0)}");
    let mut minus = row("kplus", "Gamma-(0,b)", "any b", Simple, &["grid.kplus.gamma-minus"]);
    minus.note = Some("at b=1/2 no action reaches t^-1 xi, so its complement is a submodule and the verdict is reducible");
    let mut parity = row("khat", "Pi(M)", "M any simple row above", Simple, &["grid.khat.gamma", "grid.khat.gamma-prime"]);
    parity.note = Some("parity change keeps the action, hence every reachability verdict");
    vec![
        row("khat", "highest weight modules", "", OutOfScope, &[]),
        row("khat", "lowest weight modules", "", OutOfScope, &[]),
        row("khat", "Gamma(l,b)", "l not in Z, or b not in {0,1/2}", Simple, &["grid.khat.gamma"]),
        {
            let mut r = row("khat", "Gamma(l,b)", "l in Z and b in {0,1/2}", Reducible, &["grid.khat.gamma"]);
            r.note = Some("the simple subquotient is Gamma'(l,b)");
            r
        },
        row("khat", "Gamma'(l,b)", "l in Z and b in {0,1/2}", Simple, &["grid.khat.gamma-prime"]),
        row(
            "khat",
            "Gamma(l1,b1) ~ Gamma(l2,b2)",
            "l1-l2 in Z and b1=b2",
            Isomorphism,
            &["iso.integer-shift", "iso.distinct-b", "iso.non-integral-shift"],
        ),
        row(
            "khat",
            "Gamma(l1,1/2) ~ Gamma(l2,0)",
            "l1-l2 in Z, l1 not in Z",
            Isomorphism,
            &["iso.exceptional-b", "iso.exceptional-b-reversed"],
        ),
        row("khat", "Gamma'(0,0) ~ Pi(Gamma'(0,1/2))", "", Isomorphism, &["iso.parity-twisted-subquotient"]),
        parity,
        row("kplus", "Gamma(l,b)", "l not in Z", Simple, &["grid.kplus.gamma"]),
        plus,
        minus,
    ]
}

/// Fixed-width text rendering, one row per line.
pub fn render_table(rows: &[ClassificationRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let certs = if r.certified_by.is_empty() { "-".to_string() } else { r.certified_by.join(", ") };
        let cond = if r.condition.is_empty() { "-" } else { r.condition };
        out.push_str(&format!("{:<6} {:<32} {:<34} {:<13} {certs}\n", r.algebra, r.family, cond, r.status.to_string()));
        if let Some(n) = r.note {
            out.push_str(&format!("{:<6} note: {n}\n", ""));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_in_scope_row_is_certified() {
        let rows = classification_table();
        for r in &rows {
            assert_eq!(r.status == RowStatus::OutOfScope, r.certified_by.is_empty(), "{r:?}");
        }
        assert!(rows.iter().any(|r| r.family == "Gamma+(0,b)" && r.status == RowStatus::Simple));
    }

    #[test]
    fn renders_one_line_per_row_plus_notes() {
        let rows = classification_table();
        let notes = rows.iter().filter(|r| r.note.is_some()).count();
        assert_eq!(render_table(&rows).lines().count(), rows.len() + notes);
    }
}
