//! Per-identity verdicts and check reports.
//!
//! Every checker in this crate evaluates identities as exact equalities of
//! rational vectors and records one [`Verdict`] per instantiation (group
//! elements plus basis indices). Reports are deterministic: identities are
//! emitted in a fixed order and instantiations in lexicographic index order,
//! so repeated runs on the same input are byte-identical.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::exactlin::{format_rational, Mat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// Stable identity label, e.g. `"se1"` or `"coassoc"`.
    pub identity: String,
    /// Group-element and basis-index instantiation, e.g. `"p=1 h=0 g=2"`.
    pub instantiation: String,
    pub pass: bool,
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub verdicts: Vec<Verdict>,
    /// Set when the report was computed although its preconditions failed;
    /// verdicts are then informational rather than conclusive.
    pub conditional: bool,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport::default()
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.failures().next()
    }

    pub fn len(&self) -> usize {
        self.verdicts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verdicts.is_empty()
    }

    pub fn push_cmp(&mut self, identity: &str, instantiation: &str, lhs: Vec<Rational>, rhs: Vec<Rational>) {
        let pass = lhs == rhs;
        self.verdicts.push(Verdict {
            identity: identity.to_string(),
            instantiation: instantiation.to_string(),
            pass,
            lhs,
            rhs,
        });
    }

    /// Boolean verdict, encoded as observed-vs-expected so a failing verdict
    /// always stores differing sides.
    pub fn push_flag(&mut self, identity: &str, instantiation: &str, pass: bool) {
        use num_traits::{One, Zero};
        let got = if pass { Rational::one() } else { Rational::zero() };
        self.push_cmp(identity, instantiation, vec![got], vec![Rational::one()]);
    }

    /// Emits one verdict per column of `lhs`/`rhs`, decoding the column index
    /// as a multi-index over `dims` with variables named by `vars`. Columns
    /// are the identity evaluated on basis instantiations, so this turns a
    /// matrix identity into basis-level verdicts.
    pub fn emit_matrix_identity(
        &mut self,
        identity: &str,
        group_inst: &str,
        vars: &[&str],
        dims: &[usize],
        lhs: &Mat,
        rhs: &Mat,
    ) {
        assert_eq!(lhs.rows(), rhs.rows(), "emit({identity}): row mismatch");
        assert_eq!(lhs.cols(), rhs.cols(), "emit({identity}): col mismatch");
        let total: usize = dims.iter().product();
        assert_eq!(lhs.cols(), total, "emit({identity}): domain dims mismatch");
        assert_eq!(vars.len(), dims.len());
        let mut idx = vec![0usize; dims.len()];
        for col in 0..total {
            let mut rem = col;
            for k in (0..dims.len()).rev() {
                idx[k] = rem % dims[k];
                rem /= dims[k];
            }
            let mut inst = String::from(group_inst);
            for (k, v) in vars.iter().enumerate() {
                if !inst.is_empty() {
                    inst.push(' ');
                }
                inst.push_str(&format!("{}={}", v, idx[k]));
            }
            self.push_cmp(identity, &inst, lhs.column(col), rhs.column(col));
        }
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.conditional |= other.conditional;
        self.verdicts.extend(other.verdicts);
    }

    /// Aggregated pass flag per identity label, for verdict-set comparisons.
    pub fn label_passes(&self) -> BTreeMap<String, bool> {
        let mut map: BTreeMap<String, bool> = BTreeMap::new();
        for v in &self.verdicts {
            let entry = map.entry(v.identity.clone()).or_insert(true);
            *entry &= v.pass;
        }
        map
    }

    /// Human-readable rendering: a summary line per identity and full detail
    /// for each failure.
    pub fn render_text(&self, w: &mut impl Write) -> std::io::Result<()> {
        let mut order: Vec<&str> = Vec::new();
        let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for v in &self.verdicts {
            if !counts.contains_key(v.identity.as_str()) {
                order.push(&v.identity);
            }
            let c = counts.entry(&v.identity).or_insert((0, 0));
            c.1 += 1;
            if v.pass {
                c.0 += 1;
            }
        }
        if self.conditional {
            writeln!(w, "note: preconditions failed; verdicts below are conditional")?;
        }
        for label in order {
            let (ok, total) = counts[label];
            if ok == total {
                writeln!(w, "ok   {label} ({total} instances)")?;
            } else {
                writeln!(w, "FAIL {label} ({} of {total} instances fail)", total - ok)?;
            }
        }
        for v in self.failures() {
            writeln!(
                w,
                "  fail {} [{}] lhs=[{}] rhs=[{}]",
                v.identity,
                v.instantiation,
                fmt_vec(&v.lhs),
                fmt_vec(&v.rhs)
            )?;
        }
        let failed = self.verdicts.iter().filter(|v| !v.pass).count();
        if failed == 0 {
            writeln!(w, "PASSED ({} verdicts)", self.verdicts.len())?;
        } else {
            writeln!(w, "FAILED ({failed} of {} verdicts)", self.verdicts.len())?;
        }
        Ok(())
    }

    /// Machine rendering: one JSON record per verdict, line-delimited.
    pub fn render_machine(&self, w: &mut impl Write) -> std::io::Result<()> {
        #[derive(Serialize)]
        struct Row<'a> {
            identity: &'a str,
            instantiation: &'a str,
            pass: bool,
            lhs: Vec<String>,
            rhs: Vec<String>,
        }
        for v in &self.verdicts {
            let row = Row {
                identity: &v.identity,
                instantiation: &v.instantiation,
                pass: v.pass,
                lhs: v.lhs.iter().map(format_rational).collect(),
                rhs: v.rhs.iter().map(format_rational).collect(),
            };
            serde_json::to_writer(&mut *w, &row)?;
            writeln!(w)?;
        }
        Ok(())
    }
}

fn fmt_vec(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    #[test]
    fn matrix_identity_emits_column_verdicts() {
        let mut r = CheckReport::new();
        let lhs = Mat::from_int_rows(&[&[1, 0], &[0, 1]]);
        let rhs = Mat::from_int_rows(&[&[1, 0], &[0, 2]]);
        r.emit_matrix_identity("t", "p=0", &["h"], &[2], &lhs, &rhs);
        assert_eq!(r.len(), 2);
        assert!(r.verdicts[0].pass);
        assert!(!r.verdicts[1].pass);
        assert_eq!(r.verdicts[1].instantiation, "p=0 h=1");
        assert_eq!(r.first_failure().unwrap().rhs, vec![rat(0), rat(2)]);
        assert!(!r.passed());
    }

    #[test]
    fn label_aggregation() {
        let mut r = CheckReport::new();
        r.push_cmp("a", "i=0", vec![rat(1)], vec![rat(1)]);
        r.push_cmp("a", "i=1", vec![rat(1)], vec![rat(2)]);
        r.push_cmp("b", "", vec![], vec![]);
        let m = r.label_passes();
        assert!(!m["a"]);
        assert!(m["b"]);
    }

    #[test]
    fn machine_rendering_is_line_delimited_json() {
        let mut r = CheckReport::new();
        r.push_cmp("x", "h=0", vec![rat_half()], vec![rat_half()]);
        let mut buf = Vec::new();
        r.render_machine(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "{\"identity\":\"x\",\"instantiation\":\"h=0\",\"pass\":true,\"lhs\":[\"1/2\"],\"rhs\":[\"1/2\"]}\n"
        );
    }

    fn rat_half() -> Rational {
        crate::exactlin::rat_frac(1, 2)
    }
}
