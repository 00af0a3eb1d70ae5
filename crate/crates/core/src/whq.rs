//! Ungraded weak Hopf quasigroups given by structure constants, the axiom
//! checker, and the concrete constructors (group algebras, disjoint-union
//! groupoid algebras) used as building blocks for the graded examples.
//!
//! A structure is a unital magma `(H, mul, unit)` together with a comonoid
//! `(H, comul, counit)` and an antipode map `S`. The checker evaluates the
//! multiplicativity of the comultiplication, the weak counit and unit axioms,
//! the seven antipode identities, and the derived consequence suite
//! (counital convolutions, anti(co)multiplicativity of `S`).

use thiserror::Error;

use crate::exactlin::{componentwise_product, factor_permute, kron, on_leg, vec_kron, Mat, Rational};
use crate::group::FiniteGroup;
use crate::report::CheckReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("dimension must be at least 1")]
    ZeroDim,
    #[error("{what} has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    Shape { what: String, got_rows: usize, got_cols: usize, want_rows: usize, want_cols: usize },
    #[error("{what} has length {got}, expected {want}")]
    Length { what: String, got: usize, want: usize },
}

fn expect_shape(what: &str, m: &Mat, rows: usize, cols: usize) -> Result<(), StructureError> {
    if m.rows() != rows || m.cols() != cols {
        return Err(StructureError::Shape {
            what: what.to_string(),
            got_rows: m.rows(),
            got_cols: m.cols(),
            want_rows: rows,
            want_cols: cols,
        });
    }
    Ok(())
}

fn expect_len(what: &str, v: &[Rational], want: usize) -> Result<(), StructureError> {
    if v.len() != want {
        return Err(StructureError::Length { what: what.to_string(), got: v.len(), want });
    }
    Ok(())
}

/// Weak Hopf quasigroup structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhqData {
    pub dim: usize,
    /// image of 1 under the unit map
    pub unit: Vec<Rational>,
    /// `mul: H (x) H -> H`, shape `dim x dim^2`
    pub mul: Mat,
    /// `comul: H -> H (x) H`, shape `dim^2 x dim`
    pub comul: Mat,
    /// counit as a linear functional, length `dim`
    pub counit: Vec<Rational>,
    /// antipode `S: H -> H`
    pub antipode: Mat,
}

impl WhqData {
    pub fn new(
        dim: usize,
        unit: Vec<Rational>,
        mul: Mat,
        comul: Mat,
        counit: Vec<Rational>,
        antipode: Mat,
    ) -> Result<Self, StructureError> {
        if dim == 0 {
            return Err(StructureError::ZeroDim);
        }
        expect_len("unit", &unit, dim)?;
        expect_shape("mul", &mul, dim, dim * dim)?;
        expect_shape("comul", &comul, dim * dim, dim)?;
        expect_len("counit", &counit, dim)?;
        expect_shape("antipode", &antipode, dim, dim)?;
        Ok(WhqData { dim, unit, mul, comul, counit, antipode })
    }

    pub fn unit_col(&self) -> Mat {
        Mat::col_vector(&self.unit)
    }

    pub fn counit_row(&self) -> Mat {
        Mat::row_vector(&self.counit)
    }

    /// `eps_t(h) = eps(1_1 h) 1_2`, from the expanded unit.
    pub fn eps_t(&self) -> Mat {
        let d = self.dim;
        let u = self.comul.apply(&self.unit);
        let ins = kron(&Mat::col_vector(&u), &Mat::identity(d));
        kron(&self.counit_row(), &Mat::identity(d))
            .mul(&on_leg(1, &self.mul, d))
            .permute_cols(&[d, d, d], &[0, 2, 1])
            .mul(&ins)
    }

    /// `eps_s(h) = 1_1 eps(h 1_2)`.
    pub fn eps_s(&self) -> Mat {
        let d = self.dim;
        let u = self.comul.apply(&self.unit);
        let ins = kron(&Mat::identity(d), &Mat::col_vector(&u));
        kron(&Mat::identity(d), &self.counit_row())
            .mul(&on_leg(d, &self.mul, 1))
            .permute_cols(&[d, d, d], &[1, 0, 2])
            .mul(&ins)
    }

    /// `eps_t~(h) = 1_1 eps(1_2 h)`.
    pub fn eps_t_tilde(&self) -> Mat {
        let d = self.dim;
        let u = self.comul.apply(&self.unit);
        let ins = kron(&Mat::col_vector(&u), &Mat::identity(d));
        kron(&Mat::identity(d), &self.counit_row())
            .mul(&on_leg(d, &self.mul, 1))
            .mul(&ins)
    }

    /// `eps_s~(h) = eps(h 1_1) 1_2`.
    pub fn eps_s_tilde(&self) -> Mat {
        let d = self.dim;
        let u = self.comul.apply(&self.unit);
        let ins = kron(&Mat::identity(d), &Mat::col_vector(&u));
        kron(&self.counit_row(), &Mat::identity(d))
            .mul(&on_leg(1, &self.mul, d))
            .mul(&ins)
    }
}

/// Runs the full axiom and consequence suite on a base structure.
pub fn check_base_whq(h: &WhqData) -> CheckReport {
    let mut rep = CheckReport::new();
    let d = h.dim;
    let i_d = Mat::identity(d);
    let mul = &h.mul;
    let comul = &h.comul;
    let s = &h.antipode;
    let eps = h.counit_row();
    let flip = factor_permute(&[d, d], &[1, 0]).unwrap();

    // magma unit and comonoid laws
    rep.emit_matrix_identity("unit_left", "", &["h"], &[d], &mul.mul(&kron(&h.unit_col(), &i_d)), &i_d);
    rep.emit_matrix_identity("unit_right", "", &["h"], &[d], &mul.mul(&kron(&i_d, &h.unit_col())), &i_d);
    rep.emit_matrix_identity(
        "coassoc",
        "",
        &["h"],
        &[d],
        &kron(comul, &i_d).mul(comul),
        &kron(&i_d, comul).mul(comul),
    );
    rep.emit_matrix_identity("counit_left", "", &["h"], &[d], &kron(&eps, &i_d).mul(comul), &i_d);
    rep.emit_matrix_identity("counit_right", "", &["h"], &[d], &kron(&i_d, &eps).mul(comul), &i_d);

    // comultiplication is multiplicative
    let pair_mul = kron(mul, mul).permute_cols(&[d, d, d, d], &[0, 2, 1, 3]);
    rep.emit_matrix_identity(
        "delta_mult",
        "",
        &["h", "g"],
        &[d, d],
        &comul.mul(mul),
        &pair_mul.mul(&kron(comul, comul)),
    );

    // weak counit axiom: eps((hg)l) = eps(h(gl)) = eps(h g_1) eps(g_2 l) = eps(h g_2) eps(g_1 l)
    let em = eps.mul(mul);
    let assoc_l = em.mul(&on_leg(1, mul, d));
    let assoc_r = em.mul(&on_leg(d, mul, 1));
    let expand_mid = on_leg(d, comul, d);
    let split12 = kron(&em, &em).mul(&expand_mid);
    let split21 = kron(&em, &em)
        .permute_cols(&[d, d, d, d], &[0, 2, 1, 3])
        .mul(&expand_mid);
    rep.emit_matrix_identity("counit_assoc_orders", "", &["h", "g", "l"], &[d, d, d], &assoc_l, &assoc_r);
    rep.emit_matrix_identity("counit_assoc_split12", "", &["h", "g", "l"], &[d, d, d], &assoc_l, &split12);
    rep.emit_matrix_identity("counit_assoc_split21", "", &["h", "g", "l"], &[d, d, d], &assoc_l, &split21);

    // weak coassociativity of the unit
    let delta2_unit = kron(comul, &i_d).mul(comul).apply(&h.unit);
    let du = comul.apply(&h.unit);
    let a = vec_kron(&du, &h.unit);
    let b = vec_kron(&h.unit, &du);
    let muls = [mul, mul, mul];
    let dims3 = [d, d, d];
    rep.push_cmp("unit_triple_1", "", delta2_unit.clone(), componentwise_product(&muls, &dims3, &a, &b));
    rep.push_cmp("unit_triple_2", "", delta2_unit, componentwise_product(&muls, &dims3, &b, &a));

    // antipode block; eps_t/eps_s denote the expanded-unit forms throughout
    let eps_t = h.eps_t();
    let eps_s = h.eps_s();
    let conv_id_s = mul.mul(&kron(&i_d, s)).mul(comul);
    let conv_s_id = mul.mul(&kron(s, &i_d)).mul(comul);
    rep.emit_matrix_identity("eps_t_conv", "", &["h"], &[d], &conv_id_s, &eps_t);
    rep.emit_matrix_identity("eps_s_conv", "", &["h"], &[d], &conv_s_id, &eps_s);
    rep.emit_matrix_identity("conv_t", "", &["h"], &[d], s, &mul.mul(&kron(s, &eps_t)).mul(comul));
    rep.emit_matrix_identity("conv_s", "", &["h"], &[d], s, &mul.mul(&kron(&eps_s, s)).mul(comul));

    // se1: S(h_1)(h_2 g) = eps_s(h) g
    let se1_l = mul
        .mul(&on_leg(d, mul, 1))
        .mul(&on_leg(1, s, d * d))
        .mul(&on_leg(1, comul, d));
    rep.emit_matrix_identity("se1", "", &["h", "g"], &[d, d], &se1_l, &mul.mul(&kron(&eps_s, &i_d)));

    // se2: h_1 (S(h_2) g) = eps_t(h) g
    let se2_l = mul
        .mul(&on_leg(d, mul, 1))
        .mul(&on_leg(d, s, d))
        .mul(&on_leg(1, comul, d));
    rep.emit_matrix_identity("se2", "", &["h", "g"], &[d, d], &se2_l, &mul.mul(&kron(&eps_t, &i_d)));

    // se3: (h g_1) S(g_2) = h eps_t(g)
    let se3_l = mul
        .mul(&on_leg(d, s, 1))
        .mul(&on_leg(1, mul, d))
        .mul(&on_leg(d, comul, 1));
    rep.emit_matrix_identity("se3", "", &["h", "g"], &[d, d], &se3_l, &mul.mul(&kron(&i_d, &eps_t)));

    // se4: (h S(g_1)) g_2 = h eps_s(g)
    let se4_l = mul
        .mul(&on_leg(1, mul, d))
        .mul(&on_leg(d, s, d))
        .mul(&on_leg(d, comul, 1));
    rep.emit_matrix_identity("se4", "", &["h", "g"], &[d, d], &se4_l, &mul.mul(&kron(&i_d, &eps_s)));

    // consequences
    rep.emit_matrix_identity("conv_eps_t_id", "", &["h"], &[d], &mul.mul(&kron(&eps_t, &i_d)).mul(comul), &i_d);
    rep.emit_matrix_identity("conv_id_eps_s", "", &["h"], &[d], &mul.mul(&kron(&i_d, &eps_s)).mul(comul), &i_d);
    rep.push_cmp("eps_t_unit", "", eps_t.apply(&h.unit), h.unit.clone());
    rep.push_cmp("eps_s_unit", "", eps_s.apply(&h.unit), h.unit.clone());
    rep.emit_matrix_identity("counit_eps_t", "", &["h"], &[d], &eps.mul(&eps_t), &eps);
    rep.emit_matrix_identity("counit_eps_s", "", &["h"], &[d], &eps.mul(&eps_s), &eps);
    rep.emit_matrix_identity(
        "antipode_antimult",
        "",
        &["h", "g"],
        &[d, d],
        &s.mul(mul),
        &mul.mul(&kron(s, s)).mul(&flip),
    );
    rep.emit_matrix_identity(
        "antipode_anticomult",
        "",
        &["h"],
        &[d],
        &comul.mul(s),
        &kron(s, s).mul(&flip).mul(comul),
    );
    rep.emit_matrix_identity("counit_antipode", "", &["h"], &[d], &eps.mul(s), &eps);
    rep.push_cmp("antipode_unit", "", s.apply(&h.unit), h.unit.clone());

    rep
}

/// Group algebra `k[G]`: basis the group elements, diagonal comultiplication,
/// antipode by inversion.
pub fn group_algebra(g: &FiniteGroup) -> WhqData {
    let n = g.order();
    let mut unit = vec![Rational::from_integer(0.into()); n];
    unit[g.identity()] = Rational::from_integer(1.into());
    let mut mul = Mat::zeros(n, n * n);
    for i in 0..n {
        for j in 0..n {
            *mul.at_mut(g.mul(i, j), i * n + j) = Rational::from_integer(1.into());
        }
    }
    let mut comul = Mat::zeros(n * n, n);
    for i in 0..n {
        *comul.at_mut(i * n + i, i) = Rational::from_integer(1.into());
    }
    let counit = vec![Rational::from_integer(1.into()); n];
    let mut antipode = Mat::zeros(n, n);
    for i in 0..n {
        *antipode.at_mut(g.inv(i), i) = Rational::from_integer(1.into());
    }
    WhqData::new(n, unit, mul, comul, counit, antipode).expect("group algebra shapes")
}

/// Disjoint-union groupoid algebra: one object per supplied group, arrows are
/// the group elements, and non-composable products are literally zero. For
/// two or more objects the counit is not multiplicative (the structure is
/// genuinely weak).
pub fn groupoid_algebra(object_groups: &[FiniteGroup]) -> Result<WhqData, StructureError> {
    if object_groups.is_empty() {
        return Err(StructureError::ZeroDim);
    }
    let sizes: Vec<usize> = object_groups.iter().map(|g| g.order()).collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0usize, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let dim: usize = sizes.iter().sum();
    let one = || Rational::from_integer(1.into());

    let mut unit = vec![Rational::from_integer(0.into()); dim];
    for (k, g) in object_groups.iter().enumerate() {
        unit[offsets[k] + g.identity()] = one();
    }
    let mut mul = Mat::zeros(dim, dim * dim);
    for (k, g) in object_groups.iter().enumerate() {
        for a in 0..g.order() {
            for b in 0..g.order() {
                let i = offsets[k] + a;
                let j = offsets[k] + b;
                *mul.at_mut(offsets[k] + g.mul(a, b), i * dim + j) = one();
            }
        }
    }
    let mut comul = Mat::zeros(dim * dim, dim);
    for i in 0..dim {
        *comul.at_mut(i * dim + i, i) = one();
    }
    let counit = vec![one(); dim];
    let mut antipode = Mat::zeros(dim, dim);
    for (k, g) in object_groups.iter().enumerate() {
        for a in 0..g.order() {
            *antipode.at_mut(offsets[k] + g.inv(a), offsets[k] + a) = one();
        }
    }
    WhqData::new(dim, unit, mul, comul, counit, antipode)
}

/// Verdicts for `f` being an invertible endomorphism of the structure
/// (compatibility with mul, comul, counit, unit and antipode).
pub fn check_endomorphism(h: &WhqData, f: &Mat) -> CheckReport {
    let mut rep = CheckReport::new();
    let d = h.dim;
    if f.rows() != d || f.cols() != d {
        rep.push_cmp("endo_shape", "", vec![], vec![Rational::from_integer(1.into())]);
        return rep;
    }
    rep.push_flag("endo_invertible", "", f.invert().is_ok());
    rep.push_cmp("endo_unit", "", f.apply(&h.unit), h.unit.clone());
    rep.emit_matrix_identity("endo_mul", "", &["h", "g"], &[d, d], &f.mul(&h.mul), &h.mul.mul(&kron(f, f)));
    rep.emit_matrix_identity("endo_comul", "", &["h"], &[d], &h.comul.mul(f), &kron(f, f).mul(&h.comul));
    rep.emit_matrix_identity("endo_counit", "", &["h"], &[d], &h.counit_row().mul(f), &h.counit_row());
    rep.emit_matrix_identity("endo_antipode", "", &["h"], &[d], &h.antipode.mul(f), &f.mul(&h.antipode));
    rep
}

/// Filters the candidates down to those passing [`check_endomorphism`].
pub fn automorphisms_brute(h: &WhqData, candidates: &[Mat]) -> Vec<Mat> {
    candidates
        .iter()
        .filter(|f| check_endomorphism(h, f).passed())
        .cloned()
        .collect()
}
