//! Crossed structures: a family of algebra isomorphisms
//! `pi_p: H_q -> H_{pqp^{-1}}` compatible with the comultiplication, the
//! counit and composition, the mirror construction, and the three builders
//! that derive a crossed group-cograded structure from a group acting on an
//! ungraded weak Hopf quasigroup by automorphisms.

use thiserror::Error;

use crate::exactlin::{kron, on_leg, Mat};
use crate::graded::{check_def31, counital_maps, Gcwhq, GradedError};
use crate::group::FiniteGroup;
use crate::report::CheckReport;
use crate::whq::{check_base_whq, check_endomorphism, StructureError, WhqData};

#[derive(Debug, Error)]
pub enum CrossedError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("the base structure fails its axiom suite ({failed} failing verdicts)")]
    BaseInvalid { failed: usize, report: CheckReport },
    #[error("group action is invalid: {0}")]
    ActionInvalid(String),
    #[error("certification failed in {stage} ({failed} failing verdicts)")]
    CertificationFailed { stage: &'static str, failed: usize, report: CheckReport },
    #[error("mirror output fails certification; this falsifies the mirror construction on the instance")]
    MirrorInconsistent { report: CheckReport },
    #[error("operation requires a certified instance")]
    NotCertified,
}

/// The crossing family; `pi[p*n+q]` is `pi_p` restricted to `H_q`, a matrix
/// of shape `dims[pqp^{-1}] x dims[q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub pi: Vec<Mat>,
}

impl Crossing {
    pub fn new(h: &Gcwhq, pi: Vec<Mat>) -> Result<Self, CrossedError> {
        let n = h.n();
        if pi.len() != n * n {
            return Err(StructureError::Length {
                what: "pi family".into(),
                got: pi.len(),
                want: n * n,
            }
            .into());
        }
        for p in 0..n {
            for q in 0..n {
                let m = &pi[p * n + q];
                let want_rows = h.dim(h.group.conj(p, q));
                let want_cols = h.dim(q);
                if m.rows() != want_rows || m.cols() != want_cols {
                    return Err(StructureError::Shape {
                        what: format!("pi[{}|{}]", h.group.label(p), h.group.label(q)),
                        got_rows: m.rows(),
                        got_cols: m.cols(),
                        want_rows,
                        want_cols,
                    }
                    .into());
                }
            }
        }
        Ok(Crossing { pi })
    }

    /// Identity crossing; valid whenever conjugation-related components have
    /// equal dimensions (always for abelian gradings).
    pub fn identity(h: &Gcwhq) -> Result<Self, CrossedError> {
        let n = h.n();
        let mut pi = Vec::with_capacity(n * n);
        for _p in 0..n {
            for q in 0..n {
                pi.push(Mat::identity(h.dim(q)));
            }
        }
        Crossing::new(h, pi)
    }

    pub fn get<'a>(&'a self, h: &Gcwhq, p: usize, q: usize) -> &'a Mat {
        &self.pi[p * h.n() + q]
    }
}

/// A graded structure paired with a crossing. `certified` records that
/// [`check_def31`] and [`check_crossing`] both passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedGcwhq {
    pub gcwhq: Gcwhq,
    pub crossing: Crossing,
    pub certified: bool,
}

impl CrossedGcwhq {
    pub fn new_unverified(gcwhq: Gcwhq, crossing: Crossing) -> CrossedGcwhq {
        CrossedGcwhq { gcwhq, crossing, certified: false }
    }

    /// Runs the full axiom suite and marks the instance certified on success.
    pub fn certify(&mut self) -> (CheckReport, CheckReport) {
        let def = check_def31(&self.gcwhq);
        let cross = check_crossing(&self.gcwhq, &self.crossing);
        self.certified = def.passed() && cross.passed();
        (def, cross)
    }

    pub fn pi(&self, p: usize, q: usize) -> &Mat {
        self.crossing.get(&self.gcwhq, p, q)
    }
}

/// Verdicts for the crossing laws: each `pi_p|_{H_q}` an invertible unital
/// algebra map, `pi_e = id`, compatibility with the comultiplication and
/// counit, composition `pi_{pq} = pi_p pi_q`, and the interchange with the
/// counital maps.
pub fn check_crossing(h: &Gcwhq, pi: &Crossing) -> CheckReport {
    let mut rep = CheckReport::new();
    let n = h.n();
    let e = h.e();

    for p in 0..n {
        for q in 0..n {
            let m = pi.get(h, p, q);
            let pqp = h.group.conj(p, q);
            let g2 = h.ginst2("p", p, "q", q);
            rep.push_flag("pi_invertible", &g2, m.invert().is_ok());
            rep.push_cmp("pi_unital", &g2, m.apply(&h.unit[q]), h.unit[pqp].clone());
            rep.emit_matrix_identity(
                "pi_multiplicative",
                &g2,
                &["h", "g"],
                &[h.dim(q), h.dim(q)],
                &m.mul(&h.mul[q]),
                &h.mul[pqp].mul(&kron(m, m)),
            );
        }
    }

    for q in 0..n {
        rep.emit_matrix_identity(
            "pi_e_identity",
            &h.ginst1("q", q),
            &["h"],
            &[h.dim(q)],
            pi.get(h, e, q),
            &Mat::identity(h.dim(q)),
        );
    }

    // (pi_p (x) pi_p) Delta_{q,r} = Delta_{pqp^{-1}, prp^{-1}} pi_p
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let qr = h.group.mul(q, r);
                let lhs = kron(pi.get(h, p, q), pi.get(h, p, r)).mul(h.delta(q, r));
                let rhs = h
                    .delta(h.group.conj(p, q), h.group.conj(p, r))
                    .mul(pi.get(h, p, qr));
                let inst = format!(
                    "p={} q={} r={}",
                    h.group.label(p),
                    h.group.label(q),
                    h.group.label(r)
                );
                rep.emit_matrix_identity("pi_delta", &inst, &["h"], &[h.dim(qr)], &lhs, &rhs);
            }
        }
    }

    // eps pi_p = eps on H_e
    for p in 0..n {
        rep.emit_matrix_identity(
            "pi_counit",
            &h.ginst1("p", p),
            &["h"],
            &[h.dim(e)],
            &h.counit_row().mul(pi.get(h, p, e)),
            &h.counit_row(),
        );
    }

    // pi_{pq} = pi_p pi_q on every component
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let pq = h.group.mul(p, q);
                let qrq = h.group.conj(q, r);
                let lhs = pi.get(h, pq, r);
                let rhs = pi.get(h, p, qrq).mul(pi.get(h, q, r));
                let inst = format!(
                    "p={} q={} r={}",
                    h.group.label(p),
                    h.group.label(q),
                    h.group.label(r)
                );
                rep.emit_matrix_identity("pi_compose", &inst, &["h"], &[h.dim(r)], lhs, &rhs);
            }
        }
    }

    // pi_q eps^s_p = eps^s_{qpq^{-1}} pi_q and the eps^t analogue
    let maps = counital_maps(h);
    for q in 0..n {
        for p in 0..n {
            let qpq = h.group.conj(q, p);
            let g2 = h.ginst2("q", q, "p", p);
            rep.emit_matrix_identity(
                "pi_eps_s",
                &g2,
                &["h"],
                &[h.dim(e)],
                &pi.get(h, q, p).mul(&maps.eps_s[p]),
                &maps.eps_s[qpq].mul(pi.get(h, q, e)),
            );
            rep.emit_matrix_identity(
                "pi_eps_t",
                &g2,
                &["h"],
                &[h.dim(e)],
                &pi.get(h, q, p).mul(&maps.eps_t[p]),
                &maps.eps_t[qpq].mul(pi.get(h, q, e)),
            );
        }
    }

    rep
}

/// The mirror: components reindexed by inversion, comultiplication twisted by
/// the crossing, antipode `pi_p S_{p^{-1}}`, same counit and crossing. The
/// output is re-certified before being returned; failure would falsify the
/// construction on the instance and is reported as an error.
pub fn mirror(h: &CrossedGcwhq) -> Result<CrossedGcwhq, CrossedError> {
    if !h.certified {
        return Err(CrossedError::NotCertified);
    }
    let g = &h.gcwhq.group;
    let n = g.order();
    let inv = |p: usize| g.inv(p);

    let dims: Vec<usize> = (0..n).map(|p| h.gcwhq.dim(inv(p))).collect();
    let unit: Vec<_> = (0..n).map(|p| h.gcwhq.unit[inv(p)].clone()).collect();
    let mul: Vec<_> = (0..n).map(|p| h.gcwhq.mul[inv(p)].clone()).collect();
    let counit = h.gcwhq.counit.clone();

    // Delta~_{p,q} = (pi_q (x) id) Delta_{q^{-1}p^{-1}q, q^{-1}}
    let mut delta = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            let a = g.conj(inv(q), inv(p));
            let b = inv(q);
            let m = kron(h.pi(q, a), &Mat::identity(h.gcwhq.dim(b))).mul(h.gcwhq.delta(a, b));
            delta.push(m);
        }
    }

    // S~_p = pi_p S_{p^{-1}}
    let antipode: Vec<_> = (0..n)
        .map(|p| h.pi(p, p).mul(&h.gcwhq.antipode[inv(p)]))
        .collect();

    // pi~_p restricted to H~_q = H_{q^{-1}} is pi_p restricted to H_{q^{-1}}
    let mut pi = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            pi.push(h.pi(p, inv(q)).clone());
        }
    }

    let gcwhq = Gcwhq::new(g.clone(), dims, unit, mul, delta, counit, antipode)?;
    let crossing = Crossing::new(&gcwhq, pi)?;
    let mut out = CrossedGcwhq::new_unverified(gcwhq, crossing);
    let (def, cross) = out.certify();
    if !out.certified {
        let mut report = def;
        report.extend(cross);
        return Err(CrossedError::MirrorInconsistent { report });
    }
    Ok(out)
}

/// A group action on a base structure: one matrix per group element.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub mats: Vec<Mat>,
}

impl GroupAction {
    /// Validates that the matrices form a group homomorphism into the
    /// invertible endomorphisms of `base`.
    pub fn validate(&self, group: &FiniteGroup, base: &WhqData) -> Result<(), CrossedError> {
        let n = group.order();
        if self.mats.len() != n {
            return Err(CrossedError::ActionInvalid(format!(
                "action has {} matrices, group has order {n}",
                self.mats.len()
            )));
        }
        for (p, m) in self.mats.iter().enumerate() {
            let rep = check_endomorphism(base, m);
            if !rep.passed() {
                let which = rep.first_failure().map(|v| v.identity.clone()).unwrap_or_default();
                return Err(CrossedError::ActionInvalid(format!(
                    "matrix for {} is not a structure automorphism (fails {which})",
                    group.label(p)
                )));
            }
        }
        if self.mats[group.identity()] != Mat::identity(base.dim) {
            return Err(CrossedError::ActionInvalid("identity element must act as the identity".into()));
        }
        for p in 0..n {
            for q in 0..n {
                if self.mats[p].mul(&self.mats[q]) != self.mats[group.mul(p, q)] {
                    return Err(CrossedError::ActionInvalid(format!(
                        "action is not a homomorphism at ({}, {})",
                        group.label(p),
                        group.label(q)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Which of the three comultiplication twists a builder uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HgVariant {
    /// `Delta_{p,q} = comul`, `S_p = S`
    Plain,
    /// `Delta_{p,q} = (q (x) id) comul`, `S_p = p S`
    Tilde,
    /// `Delta_{p,q} = (id (x) p) comul`, `S_p = p S`
    Bar,
}

fn build_family(
    base: &WhqData,
    group: &FiniteGroup,
    action: &GroupAction,
    variant: HgVariant,
) -> Result<CrossedGcwhq, CrossedError> {
    let base_rep = check_base_whq(base);
    if !base_rep.passed() {
        let failed = base_rep.failures().count();
        return Err(CrossedError::BaseInvalid { failed, report: base_rep });
    }
    action.validate(group, base)?;

    let n = group.order();
    let d = base.dim;
    let dims = vec![d; n];
    let unit = vec![base.unit.clone(); n];
    let mul = vec![base.mul.clone(); n];
    let counit = base.counit.clone();

    let mut delta = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            let m = match variant {
                HgVariant::Plain => base.comul.clone(),
                HgVariant::Tilde => kron(&action.mats[q], &Mat::identity(d)).mul(&base.comul),
                HgVariant::Bar => kron(&Mat::identity(d), &action.mats[p]).mul(&base.comul),
            };
            delta.push(m);
        }
    }

    let antipode: Vec<Mat> = (0..n)
        .map(|p| match variant {
            HgVariant::Plain => base.antipode.clone(),
            HgVariant::Tilde | HgVariant::Bar => action.mats[p].mul(&base.antipode),
        })
        .collect();

    let mut pi = Vec::with_capacity(n * n);
    for p in 0..n {
        for _q in 0..n {
            pi.push(action.mats[p].clone());
        }
    }

    let gcwhq = Gcwhq::new(group.clone(), dims, unit, mul, delta, counit, antipode)?;
    let crossing = Crossing::new(&gcwhq, pi)?;
    let mut out = CrossedGcwhq::new_unverified(gcwhq, crossing);
    let (def, cross) = out.certify();
    if !out.certified {
        let (stage, report) = if def.passed() { ("crossing", cross) } else { ("def31", def) };
        let failed = report.failures().count();
        return Err(CrossedError::CertificationFailed { stage, failed, report });
    }
    Ok(out)
}

/// One copy of the base per group element, comultiplication and antipode
/// transported along the identification.
pub fn build_hg(base: &WhqData, group: &FiniteGroup, action: &GroupAction) -> Result<CrossedGcwhq, CrossedError> {
    build_family(base, group, action, HgVariant::Plain)
}

/// Same family of algebras with the comultiplication twisted on the first
/// leg by the action of `q` and the antipode by `p`.
pub fn build_tilde_hg(
    base: &WhqData,
    group: &FiniteGroup,
    action: &GroupAction,
) -> Result<CrossedGcwhq, CrossedError> {
    build_family(base, group, action, HgVariant::Tilde)
}

/// Same family with the comultiplication twisted on the second leg by the
/// action of `p`.
pub fn build_bar_hg(
    base: &WhqData,
    group: &FiniteGroup,
    action: &GroupAction,
) -> Result<CrossedGcwhq, CrossedError> {
    build_family(base, group, action, HgVariant::Bar)
}

/// Associativity/counit diagnostic distinguishing the weak-Hopf-group-
/// coalgebra regime (associative components) and the Hopf regime
/// (multiplicative counit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraDiagnostic {
    pub associative: bool,
    /// component and basis triple witnessing non-associativity
    pub assoc_witness: Option<(usize, usize, usize, usize)>,
    pub counit_multiplicative: bool,
    /// basis pair in `H_e` witnessing non-multiplicativity
    pub counit_witness: Option<(usize, usize)>,
}

/// Brute-force associativity over all basis triples of every component and
/// multiplicativity of the counit on `H_e`.
pub fn is_weak_hopf_group_coalgebra(h: &CrossedGcwhq) -> CoalgebraDiagnostic {
    let g = &h.gcwhq;
    let mut associative = true;
    let mut assoc_witness = None;
    'outer: for p in 0..g.n() {
        let d = g.dim(p);
        let left = g.mul[p].mul(&on_leg(1, &g.mul[p], d));
        let right = g.mul[p].mul(&on_leg(d, &g.mul[p], 1));
        if left != right {
            for col in 0..d * d * d {
                if left.column(col) != right.column(col) {
                    let i = col / (d * d);
                    let j = (col / d) % d;
                    let k = col % d;
                    associative = false;
                    assoc_witness = Some((p, i, j, k));
                    break 'outer;
                }
            }
        }
    }
    let e = g.e();
    let de = g.dim(e);
    let eps = g.counit_row();
    let em = eps.mul(&g.mul[e]);
    let pairwise = kron(&eps, &eps);
    let mut counit_multiplicative = true;
    let mut counit_witness = None;
    'outer2: for i in 0..de {
        for j in 0..de {
            if em.column(i * de + j) != pairwise.column(i * de + j) {
                counit_multiplicative = false;
                counit_witness = Some((i, j));
                break 'outer2;
            }
        }
    }
    CoalgebraDiagnostic { associative, assoc_witness, counit_multiplicative, counit_witness }
}
