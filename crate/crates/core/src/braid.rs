//! The braiding on Yetter-Drinfeld modules, its inverse, the Yang-Baxter map
//! of a single module, and the law suite certifying the braided crossed
//! category structure (naturality, both composition laws, conjugation
//! equivariance and functoriality) on concrete instances.
//!
//! Tensor carriers are images of truncation idempotents; maps between tensor
//! products built in different association orders are compared through their
//! embeddings into the common ambient space, with exact transition matrices.

use crate::crossed::CrossedGcwhq;
use crate::exactlin::{kron, on_leg, rat, Mat};
use crate::report::CheckReport;
use crate::yd::{conjugate_yd, tensor_yd, check_yd_module, TensorYd, YdError, YdModule};

/// A braiding `C_{V,W}: V (x) W -> {}^p W (x) V` between truncated carriers,
/// together with the full-space matrix and both tensor structures.
#[derive(Clone, Debug)]
pub struct BraidMap {
    /// restricted matrix between the canonical carriers
    pub matrix: Mat,
    /// the same map on the full product space `V (x) W -> W (x) V`
    pub full: Mat,
    pub src: TensorYd,
    pub tgt: TensorYd,
    /// well-definedness and (co)linearity verdicts
    pub report: CheckReport,
}

fn require_module(h: &CrossedGcwhq, v: &YdModule) -> Result<(), YdError> {
    let rep = check_yd_module(h, v)?;
    if !rep.passed() {
        let failed = rep.failures().count();
        return Err(YdError::NotModule { failed, report: Box::new(rep) });
    }
    Ok(())
}

/// Builds `C_{V,W}(v (x) w) = {}^p(w . S^{-1}(v_{(1,q^{-1})})) (x) v_{(0)}`.
/// Inputs must be module-validated (not merely weak quasimodules) and every
/// antipode component must be invertible.
pub fn braiding(h: &CrossedGcwhq, v: &YdModule, w: &YdModule) -> Result<BraidMap, YdError> {
    if !h.certified {
        return Err(YdError::AmbientNotCertified);
    }
    require_module(h, v)?;
    require_module(h, w)?;
    let g = &h.gcwhq;
    for r in 0..g.n() {
        if g.antipode[r].invert().is_err() {
            return Err(YdError::AntipodeNotInvertible { label: g.group.label(r).to_string() });
        }
    }
    let (p, q) = (v.grade, w.grade);
    let qi = g.group.inv(q);
    let s_q_inv = g.antipode[q].invert().expect("checked above");
    let conj_w = conjugate_yd(h, w, p);
    let src = tensor_yd(h, v, w)?;
    let tgt = tensor_yd(h, &conj_w, v)?;
    let (dv, dw, dq) = (v.dim, w.dim, g.dim(q));

    let full = on_leg(1, &w.action, dv)
        .permute_cols(&[dv, dq, dw], &[2, 1, 0])
        .mul(&on_leg(dv, &s_q_inv, dw))
        .mul(&on_leg(1, &v.coaction[qi], dw));

    let mut report = CheckReport::new();
    report.emit_matrix_identity(
        "braid_well_defined_src",
        "",
        &["v", "w"],
        &[dv, dw],
        &full.mul(&src.idempotent),
        &full,
    );
    report.emit_matrix_identity(
        "braid_well_defined_tgt",
        "",
        &["v", "w"],
        &[dv, dw],
        &tgt.idempotent.mul(&full),
        &full,
    );

    let matrix = tgt.carrier.retract.mul(&full).mul(&src.carrier.embed);

    let dpq = g.dim(g.group.mul(p, q));
    report.emit_matrix_identity(
        "braid_linear",
        "",
        &["t", "h"],
        &[src.module.dim, dpq],
        &matrix.mul(&src.module.action),
        &tgt.module.action.mul(&kron(&matrix, &Mat::identity(dpq))),
    );
    for r in 0..g.n() {
        report.emit_matrix_identity(
            "braid_colinear",
            &format!("r={}", g.group.label(r)),
            &["t"],
            &[src.module.dim],
            &tgt.module.coaction[r].mul(&matrix),
            &kron(&matrix, &Mat::identity(g.dim(r))).mul(&src.module.coaction[r]),
        );
    }

    Ok(BraidMap { matrix, full, src, tgt, report })
}

/// The inverse braiding `C^{-1}({}^p w (x) v) = v_{(0)} (x) w . v_{(1,q)}`,
/// with both composites against the braiding verified exactly.
pub struct BraidInverse {
    pub matrix: Mat,
    pub full: Mat,
    pub report: CheckReport,
}

pub fn braiding_inverse(h: &CrossedGcwhq, v: &YdModule, w: &YdModule) -> Result<BraidInverse, YdError> {
    let bm = braiding(h, v, w)?;
    let g = &h.gcwhq;
    let q = w.grade;
    let (dv, dw) = (v.dim, w.dim);

    let full = on_leg(dv, &w.action, 1)
        .permute_cols(&[dw, dv, g.dim(q)], &[1, 0, 2])
        .mul(&on_leg(dw, &v.coaction[q], 1));

    let matrix = bm.src.carrier.retract.mul(&full).mul(&bm.tgt.carrier.embed);

    let mut report = CheckReport::new();
    report.emit_matrix_identity(
        "braid_inverse_left",
        "",
        &["t"],
        &[bm.src.module.dim],
        &matrix.mul(&bm.matrix),
        &Mat::identity(bm.src.module.dim),
    );
    report.emit_matrix_identity(
        "braid_inverse_right",
        "",
        &["t"],
        &[bm.tgt.module.dim],
        &bm.matrix.mul(&matrix),
        &Mat::identity(bm.tgt.module.dim),
    );
    Ok(BraidInverse { matrix, full, report })
}

/// The Yang-Baxter candidate `c(v (x) w) = w_{(0)} (x) v . w_{(1,p)}` on the
/// full square of a single module. The two module-compatibility hypotheses
/// are verified first and reported separately from the braid relation.
pub fn qybe_map(h: &CrossedGcwhq, v: &YdModule) -> Result<(Mat, CheckReport), YdError> {
    if !h.certified {
        return Err(YdError::AmbientNotCertified);
    }
    let g = &h.gcwhq;
    let p = v.grade;
    let (dv, dp) = (v.dim, g.dim(p));
    let act = &v.action;
    let mut rep = CheckReport::new();

    // hypothesis: v_(0) (x) (w . h) . v_(1,p) = v_(0) (x) w . (h v_(1,p))
    let coact = on_leg(1, &v.coaction[p], dv * dp);
    let pre = [dv, dp, dv, dp];
    let perm = [0, 3, 1, 2];
    let lhs = on_leg(dv, act, 1)
        .mul(&on_leg(dv, act, dp))
        .permute_cols(&pre, &perm)
        .mul(&coact);
    let rhs = on_leg(dv, act, 1)
        .mul(&on_leg(dv * dv, &g.mul[p], 1))
        .permute_cols(&pre, &perm)
        .mul(&coact);
    rep.emit_matrix_identity("qybe_hyp_left", "", &["v", "w", "h"], &[dv, dv, dp], &lhs, &rhs);

    // hypothesis: v_(0) (x) (w . v_(1,p)) . h = v_(0) (x) w . (v_(1,p) h)
    let perm2 = [0, 2, 1, 3];
    let lhs = on_leg(dv, act, 1)
        .mul(&on_leg(dv, act, dp))
        .permute_cols(&pre, &perm2)
        .mul(&coact);
    let rhs = on_leg(dv, act, 1)
        .mul(&on_leg(dv * dv, &g.mul[p], 1))
        .permute_cols(&pre, &perm2)
        .mul(&coact);
    rep.emit_matrix_identity("qybe_hyp_right", "", &["v", "w", "h"], &[dv, dv, dp], &lhs, &rhs);

    // c(v (x) w) = w_(0) (x) v . w_(1,p)
    let c = on_leg(dv, act, 1)
        .permute_cols(&[dv, dv, dp], &[1, 0, 2])
        .mul(&on_leg(dv, &v.coaction[p], 1));

    let c12 = kron(&c, &Mat::identity(dv));
    let c23 = kron(&Mat::identity(dv), &c);
    let lhs = c12.mul(&c23).mul(&c12);
    let rhs = c23.mul(&c12).mul(&c23);
    rep.emit_matrix_identity("qybe_braid_relation", "", &["u", "v", "w"], &[dv, dv, dv], &lhs, &rhs);

    Ok((c, rep))
}

/// Exact change of coordinates between two injective embeddings with the same
/// column space: solves `to . m = from`.
fn transition(from: &Mat, to: &Mat) -> Result<Mat, YdError> {
    to.solve(from).map_err(|_| YdError::CarrierMismatch)
}

/// The braided crossed category law suite on three module-validated objects:
/// grading additivity, conjugation functoriality, equivariance of the
/// braiding under every conjugation, naturality squares for sampled
/// morphisms, and both composition laws on the truncated carriers.
pub fn check_braided_crossed_laws(
    h: &CrossedGcwhq,
    v: &YdModule,
    w: &YdModule,
    x: &YdModule,
) -> Result<CheckReport, YdError> {
    let g = &h.gcwhq;
    let n = g.n();
    let (p, q) = (v.grade, w.grade);
    let mut rep = CheckReport::new();

    // tensor grading lands at the product
    let tvw = tensor_yd(h, v, w)?;
    rep.push_flag("grading_additivity", "", tvw.module.grade == g.group.mul(p, q));

    // conjugation functoriality: {}^{kt}V = {}^k({}^t V) and
    // {}^k(V (x) W) = {}^k V (x) {}^k W
    for k in 0..n {
        for t in 0..n {
            let kt = g.group.mul(k, t);
            let nested = conjugate_yd(h, &conjugate_yd(h, v, t), k);
            let direct = conjugate_yd(h, v, kt);
            rep.push_flag("conj_compose", &g.ginst2("k", k, "t", t), nested == direct);
        }
    }
    for k in 0..n {
        let lhs = conjugate_yd(h, &tvw.module, k);
        let rhs = tensor_yd(h, &conjugate_yd(h, v, k), &conjugate_yd(h, w, k))?.module;
        rep.push_flag("conj_tensor", &g.ginst1("k", k), lhs == rhs);
    }

    // braiding commutes with every conjugation functor
    let bm_vw = braiding(h, v, w)?;
    for s in 0..n {
        let bs = braiding(h, &conjugate_yd(h, v, s), &conjugate_yd(h, w, s))?;
        rep.emit_matrix_identity(
            "phi_equivariance",
            &g.ginst1("s", s),
            &["t"],
            &[bm_vw.src.module.dim],
            &bs.matrix,
            &bm_vw.matrix,
        );
    }

    // naturality for sampled morphisms between (V, X)-shaped pairs
    let bm_vx = braiding(h, v, x)?;
    let samples: Vec<(&str, Mat, Mat)> = vec![
        ("id", Mat::identity(v.dim), Mat::identity(x.dim)),
        ("zero", Mat::zeros(v.dim, v.dim), Mat::zeros(x.dim, x.dim)),
        (
            "scaled",
            Mat::identity(v.dim).scale(&rat(2)),
            Mat::identity(x.dim).scale(&rat(3)),
        ),
    ];
    for (name, f, gm) in &samples {
        let fg = bm_vx
            .src
            .carrier
            .retract
            .mul(&kron(f, gm))
            .mul(&bm_vx.src.carrier.embed);
        let gf = bm_vx
            .tgt
            .carrier
            .retract
            .mul(&kron(gm, f))
            .mul(&bm_vx.tgt.carrier.embed);
        rep.emit_matrix_identity(
            "naturality",
            &format!("f={name}"),
            &["t"],
            &[bm_vx.src.module.dim],
            &gf.mul(&bm_vx.matrix),
            &bm_vx.matrix.mul(&fg),
        );
    }

    // structure-derived naturality: the braiding itself is a morphism
    // f = C_{V,W}: V (x) W -> {}^p W (x) V, g = id_X
    {
        let u_src = &bm_vw.src.module;
        let u_tgt = &bm_vw.tgt.module;
        let bm_a = braiding(h, u_src, x)?;
        let bm_b = braiding(h, u_tgt, x)?;
        let f_amb = bm_vw
            .tgt
            .carrier
            .embed
            .mul(&bm_vw.matrix)
            .mul(&bm_vw.src.carrier.retract);
        let fg = bm_b
            .src
            .carrier
            .retract
            .mul(&kron(&f_amb, &Mat::identity(x.dim)))
            .mul(&bm_a.src.carrier.embed);
        let gf = bm_b
            .tgt
            .carrier
            .retract
            .mul(&kron(&Mat::identity(x.dim), &f_amb))
            .mul(&bm_a.tgt.carrier.embed);
        rep.emit_matrix_identity(
            "naturality",
            "f=braiding",
            &["t"],
            &[bm_a.src.module.dim],
            &gf.mul(&bm_a.matrix),
            &bm_b.matrix.mul(&fg),
        );
    }

    // first composition law: C_{V(x)W, X} = (C_{V,{}^w X} (x) id_W)(id_V (x) C_{W,X})
    {
        let bm_l = braiding(h, &tvw.module, x)?;
        let bm1 = braiding(h, w, x)?;
        let wx = &bm1.src;
        let wxc_w = &bm1.tgt;
        let t_v_wx = tensor_yd(h, v, &wx.module)?;
        let t_v_wxcw = tensor_yd(h, v, &wxc_w.module)?;
        let m1 = t_v_wxcw
            .carrier
            .retract
            .mul(&kron(&Mat::identity(v.dim), &bm1.matrix))
            .mul(&t_v_wx.carrier.embed);

        let xc = conjugate_yd(h, x, q);
        let bm2 = braiding(h, v, &xc)?;
        let t_vxc_w = tensor_yd(h, &bm2.src.module, w)?;
        let t_vxcv_w = tensor_yd(h, &bm2.tgt.module, w)?;
        let m2 = t_vxcv_w
            .carrier
            .retract
            .mul(&kron(&bm2.matrix, &Mat::identity(w.dim)))
            .mul(&t_vxc_w.carrier.embed);

        let a_l_src = kron(&tvw.carrier.embed, &Mat::identity(x.dim)).mul(&bm_l.src.carrier.embed);
        let a_r_src = kron(&Mat::identity(v.dim), &wx.carrier.embed).mul(&t_v_wx.carrier.embed);
        let s = transition(&a_l_src, &a_r_src)?;

        let a_mid_from = kron(&Mat::identity(v.dim), &wxc_w.carrier.embed).mul(&t_v_wxcw.carrier.embed);
        let a_mid_to = kron(&bm2.src.carrier.embed, &Mat::identity(w.dim)).mul(&t_vxc_w.carrier.embed);
        let t_mid = transition(&a_mid_from, &a_mid_to)?;

        let a_l_tgt = kron(&Mat::identity(x.dim), &tvw.carrier.embed).mul(&bm_l.tgt.carrier.embed);
        let a_r_tgt = kron(&bm2.tgt.carrier.embed, &Mat::identity(w.dim)).mul(&t_vxcv_w.carrier.embed);

        let lhs = a_l_tgt.mul(&bm_l.matrix);
        let rhs = a_r_tgt.mul(&m2).mul(&t_mid).mul(&m1).mul(&s);
        rep.emit_matrix_identity("hexagon_first", "", &["t"], &[bm_l.src.module.dim], &lhs, &rhs);
    }

    // second composition law: C_{V, W(x)X} = (id_{{}^v W} (x) C_{V,X})(C_{V,W} (x) id_X)
    {
        let twx = tensor_yd(h, w, x)?;
        let bm_l = braiding(h, v, &twx.module)?;
        let t_tvw_x = tensor_yd(h, &bm_vw.src.module, x)?;
        let t_tpwv_x = tensor_yd(h, &bm_vw.tgt.module, x)?;
        let m1 = t_tpwv_x
            .carrier
            .retract
            .mul(&kron(&bm_vw.matrix, &Mat::identity(x.dim)))
            .mul(&t_tvw_x.carrier.embed);

        let pw = conjugate_yd(h, w, p);
        let t_pw_tvx = tensor_yd(h, &pw, &bm_vx.src.module)?;
        let t_pw_tpxv = tensor_yd(h, &pw, &bm_vx.tgt.module)?;
        let m2 = t_pw_tpxv
            .carrier
            .retract
            .mul(&kron(&Mat::identity(w.dim), &bm_vx.matrix))
            .mul(&t_pw_tvx.carrier.embed);

        let a_l_src = kron(&Mat::identity(v.dim), &twx.carrier.embed).mul(&bm_l.src.carrier.embed);
        let a_r_src = kron(&bm_vw.src.carrier.embed, &Mat::identity(x.dim)).mul(&t_tvw_x.carrier.embed);
        let s = transition(&a_l_src, &a_r_src)?;

        let a_mid_from = kron(&bm_vw.tgt.carrier.embed, &Mat::identity(x.dim)).mul(&t_tpwv_x.carrier.embed);
        let a_mid_to = kron(&Mat::identity(w.dim), &bm_vx.src.carrier.embed).mul(&t_pw_tvx.carrier.embed);
        let t_mid = transition(&a_mid_from, &a_mid_to)?;

        let a_l_tgt = kron(&twx.carrier.embed, &Mat::identity(v.dim)).mul(&bm_l.tgt.carrier.embed);
        let a_r_tgt = kron(&Mat::identity(w.dim), &bm_vx.tgt.carrier.embed).mul(&t_pw_tpxv.carrier.embed);

        let lhs = a_l_tgt.mul(&bm_l.matrix);
        let rhs = a_r_tgt.mul(&m2).mul(&t_mid).mul(&m1).mul(&s);
        rep.emit_matrix_identity("hexagon_second", "", &["t"], &[bm_l.src.module.dim], &lhs, &rhs);
    }

    Ok(rep)
}
