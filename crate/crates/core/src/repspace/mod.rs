//! Representations of finitely presented groups over Q(ζ_N), the modules
//! built from them, and the Burnside irreducibility test.

mod catalog;
mod parse;

use std::fmt;
use std::sync::Arc;

use crate::cyclofield::{CycElt, CycField};
use crate::error::{Error, Result};
use crate::fpgroup::{GroupRingElt, Letter, Presentation, Word};
use crate::laurentlin::{Mat, MatL};

pub use catalog::{alpha_s, lambda_phi, rho_st, sym_square, sym_square_matrix, trivial};
pub use parse::parse_representation;

/// How the basis of a module relates to the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Raw(String),
    /// Traceless matrices; basis of off-diagonal units then diagonal differences.
    Adjoint(String),
    /// `A ↦ λ^{cφ} α A β⁻¹` on a×b matrices, vectorized row-major.
    TensorDual {
        a: usize,
        b: usize,
        lambda: String,
        c: i64,
    },
    /// Restriction to an invariant subspace of the given dimension.
    Restricted {
        parent: String,
        dim: usize,
    },
    /// The module twisted by the scalar character `λ^{cφ}`.
    Twist {
        lambda: String,
        c: i64,
    },
    /// The contragredient `γ ↦ ρ(γ⁻¹)ᵀ`.
    Dual(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Raw(l) => write!(f, "raw({l})"),
            Provenance::Adjoint(l) => write!(f, "adjoint({l})"),
            Provenance::TensorDual { a, b, lambda, c } => {
                write!(f, "tensor-dual({a}x{b}, lambda = {lambda}, power {c})")
            }
            Provenance::Restricted { parent, dim } => write!(f, "restricted({parent}, dim {dim})"),
            Provenance::Twist { lambda, c } => write!(f, "twist(lambda = {lambda}, power {c})"),
            Provenance::Dual(l) => write!(f, "dual({l})"),
        }
    }
}

/// A linear action of a finitely presented group, given on generators.
///
/// The provided methods extend the action to words and group-ring elements.
pub trait Action {
    fn presentation(&self) -> &Arc<Presentation>;
    fn field(&self) -> &CycField;
    fn dim(&self) -> usize;
    fn image(&self, gen: usize) -> &Mat;
    fn inverse_image(&self, gen: usize) -> &Mat;
    fn label(&self) -> String;

    fn letter_image(&self, l: Letter) -> &Mat {
        if l.inv {
            self.inverse_image(l.gen)
        } else {
            self.image(l.gen)
        }
    }

    /// The matrix of a word.
    fn word_image(&self, w: &Word) -> Mat {
        let mut acc = Mat::identity(self.field(), self.dim());
        for &l in w.letters() {
            acc = &acc * self.letter_image(l);
        }
        acc
    }

    /// `λ^{c·φ(w)}` times the matrix of `w`.
    fn word_image_twisted(&self, w: &Word, lambda: &CycElt, c: i64) -> Result<Mat> {
        let phi = self.presentation().abelianization()?;
        Ok(self.word_image(w).scale(&lambda.pow(c * w.phi(&phi))?))
    }

    /// Linear extension of the action to Z[Γ].
    fn ring_image(&self, e: &GroupRingElt) -> Mat {
        let mut acc = Mat::zeros(self.field(), self.dim(), self.dim());
        for (w, n) in e.terms() {
            acc = &acc + &self.word_image(w).scale(&self.field().from_int(n));
        }
        acc
    }

    /// The image under `M ⊗ t^φ`, a matrix over the Laurent ring.
    fn ring_image_symbolic(&self, e: &GroupRingElt) -> Result<MatL> {
        let phi = self.presentation().abelianization()?;
        let mut acc = MatL::zeros(self.field(), self.dim(), self.dim());
        for (w, n) in e.terms() {
            let m = self.word_image(w).scale(&self.field().from_int(n));
            acc = acc.checked_add(&MatL::from_mat(&m, w.phi(&phi)))?;
        }
        Ok(acc)
    }

    /// `t^{φ(x_j)} M(x_j)`.
    fn gen_image_symbolic(&self, gen: usize) -> Result<MatL> {
        let phi = self.presentation().abelianization()?;
        Ok(MatL::from_mat(self.image(gen), phi[gen]))
    }
}

fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn check_relators(
    pres: &Presentation,
    field: &CycField,
    dim: usize,
    images: &[Mat],
    inverses: &[Mat],
) -> Result<()> {
    for (index, r) in pres.relators.iter().enumerate() {
        let mut acc = Mat::identity(field, dim);
        for l in r.letters() {
            acc = &acc
                * if l.inv {
                    &inverses[l.gen]
                } else {
                    &images[l.gen]
                };
        }
        if !acc.is_identity() {
            let residual = &acc - &Mat::identity(field, dim);
            return Err(Error::RelatorViolation {
                index,
                residual: residual.to_string(),
            });
        }
    }
    Ok(())
}

fn validate_images(pres: &Presentation, images: &[Mat]) -> Result<(CycField, usize)> {
    if images.len() != pres.num_gens() {
        return Err(Error::BadSize(format!(
            "{} images for {} generators",
            images.len(),
            pres.num_gens()
        )));
    }
    let Some(first) = images.first() else {
        return Err(Error::BadSize("presentation has no generators".into()));
    };
    let field = first.field().clone();
    let dim = first.rows();
    for m in images {
        if !m.is_square() {
            return Err(Error::NonSquare(m.rows(), m.cols()));
        }
        if m.rows() != dim {
            return Err(Error::BadSize(
                "generator images have different sizes".into(),
            ));
        }
        if m.field() != &field {
            return Err(Error::FieldMismatch(
                field.conductor(),
                m.field().conductor(),
            ));
        }
    }
    Ok((field, dim))
}

fn invert_all(images: &[Mat]) -> Result<Vec<Mat>> {
    images
        .iter()
        .enumerate()
        .map(|(j, m)| {
            m.inverse()
                .map_err(|_| Error::BadParams(format!("image of generator {j} is singular")))
        })
        .collect()
}

/// A validated homomorphism from a presented group to SL_n or GL_n.
#[derive(Clone, Debug)]
pub struct Representation {
    pres: Arc<Presentation>,
    field: CycField,
    dim: usize,
    images: Vec<Mat>,
    inverses: Vec<Mat>,
    label: String,
    special: bool,
}

impl Representation {
    /// Validates generator images: every relator must map to the identity and,
    /// when `special` is set, every image must have determinant 1.
    pub fn new(
        pres: Arc<Presentation>,
        images: Vec<Mat>,
        label: &str,
        special: bool,
    ) -> Result<Representation> {
        let (field, dim) = validate_images(&pres, &images)?;
        if special {
            for (j, m) in images.iter().enumerate() {
                if !m.det()?.is_one() {
                    return Err(Error::DeterminantNotOne(j));
                }
            }
        }
        let inverses = invert_all(&images)?;
        check_relators(&pres, &field, dim, &images, &inverses)?;
        Ok(Representation {
            pres,
            field,
            dim,
            images,
            inverses,
            label: label.to_string(),
            special,
        })
    }

    pub fn images(&self) -> &[Mat] {
        &self.images
    }

    pub fn is_special(&self) -> bool {
        self.special
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    /// The module given by this representation acting on column vectors.
    pub fn to_module(&self) -> RepModule {
        RepModule {
            pres: self.pres.clone(),
            field: self.field.clone(),
            dim: self.dim,
            images: self.images.clone(),
            inverses: self.inverses.clone(),
            provenance: Provenance::Raw(self.label.clone()),
        }
    }

    /// `γ ↦ P ρ(γ) P⁻¹`.
    pub fn conjugate_by(&self, p: &Mat) -> Result<Representation> {
        let pinv = p.inverse()?;
        let images = self.images.iter().map(|m| &(p * m) * &pinv).collect();
        Representation::new(
            self.pres.clone(),
            images,
            &format!("{}^P", self.label),
            self.special,
        )
    }

    /// The contragredient representation `γ ↦ ρ(γ⁻¹)ᵀ`.
    pub fn dual(&self) -> Representation {
        Representation {
            pres: self.pres.clone(),
            field: self.field.clone(),
            dim: self.dim,
            images: self.inverses.iter().map(Mat::transpose).collect(),
            inverses: self.images.iter().map(Mat::transpose).collect(),
            label: format!("{}*", self.label),
            special: self.special,
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if !same_presentation(&self.pres, &other.pres) {
            return Err(Error::BadParams(
                "representations of different presentations".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Representation::new(
            self.pres.clone(),
            images,
            &format!("{}+{}", self.label, other.label),
            self.special && other.special,
        )
    }
}

impl Action for Representation {
    fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }
    fn field(&self) -> &CycField {
        &self.field
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn image(&self, gen: usize) -> &Mat {
        &self.images[gen]
    }
    fn inverse_image(&self, gen: usize) -> &Mat {
        &self.inverses[gen]
    }
    fn label(&self) -> String {
        self.label.clone()
    }
}

/// A Γ-module: generator actions together with the meaning of its basis.
#[derive(Clone, Debug)]
pub struct RepModule {
    pres: Arc<Presentation>,
    field: CycField,
    dim: usize,
    images: Vec<Mat>,
    inverses: Vec<Mat>,
    provenance: Provenance,
}

impl RepModule {
    /// Validates that every relator acts trivially.
    pub fn new(
        pres: Arc<Presentation>,
        images: Vec<Mat>,
        provenance: Provenance,
    ) -> Result<RepModule> {
        let (field, dim) = validate_images(&pres, &images)?;
        let inverses = invert_all(&images)?;
        check_relators(&pres, &field, dim, &images, &inverses)?;
        Ok(RepModule {
            pres,
            field,
            dim,
            images,
            inverses,
            provenance,
        })
    }

    /// Builds a module whose generator matrices are known to satisfy the
    /// relators by construction.
    fn trusted(
        pres: Arc<Presentation>,
        field: CycField,
        images: Vec<Mat>,
        inverses: Vec<Mat>,
        provenance: Provenance,
    ) -> RepModule {
        let dim = images.first().map_or(0, Mat::rows);
        RepModule {
            pres,
            field,
            dim,
            images,
            inverses,
            provenance,
        }
    }

    /// The zero-dimensional module over `pres`.
    pub fn zero(pres: Arc<Presentation>, field: &CycField, provenance: Provenance) -> RepModule {
        let g = pres.num_gens();
        let e = Mat::zeros(field, 0, 0);
        RepModule::trusted(
            pres,
            field.clone(),
            vec![e.clone(); g],
            vec![e; g],
            provenance,
        )
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn images(&self) -> &[Mat] {
        &self.images
    }

    pub fn dual(&self) -> RepModule {
        RepModule::trusted(
            self.pres.clone(),
            self.field.clone(),
            self.inverses.iter().map(Mat::transpose).collect(),
            self.images.iter().map(Mat::transpose).collect(),
            Provenance::Dual(self.provenance.to_string()),
        )
    }

    /// The same module twisted by the character `λ^{cφ}`.
    pub fn twisted(&self, lambda: &CycElt, c: i64) -> Result<RepModule> {
        if lambda.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let phi = self.pres.abelianization()?;
        let mut images = Vec::new();
        let mut inverses = Vec::new();
        for j in 0..self.images.len() {
            let s = lambda.pow(c * phi[j])?;
            inverses.push(self.inverses[j].scale(&s.inv()?));
            images.push(self.images[j].scale(&s));
        }
        Ok(RepModule::trusted(
            self.pres.clone(),
            self.field.clone(),
            images,
            inverses,
            Provenance::Twist {
                lambda: lambda.to_string(),
                c,
            },
        ))
    }

    /// Restriction to an invariant subspace spanned by the columns `basis`.
    ///
    /// Fails with `NotInvariant` naming the first generator and basis vector
    /// whose image leaves the span.
    pub fn restrict(&self, basis: &[Vec<CycElt>]) -> Result<RepModule> {
        let k = basis.len();
        if basis.iter().any(|v| v.len() != self.dim) {
            return Err(Error::BadSize(
                "basis vectors must have the module dimension".into(),
            ));
        }
        if k == 0 {
            return Ok(RepModule::zero(
                self.pres.clone(),
                &self.field,
                Provenance::Restricted {
                    parent: self.provenance.to_string(),
                    dim: 0,
                },
            ));
        }
        let b = Mat::from_columns(&self.field, self.dim, basis);
        if b.rank() != k {
            return Err(Error::BadParams(
                "restriction basis is linearly dependent".into(),
            ));
        }
        let restrict_one = |m: &Mat, gen: usize| -> Result<Mat> {
            let mut cols = Vec::with_capacity(k);
            for (i, v) in basis.iter().enumerate() {
                let image = m.mul_vec(v);
                cols.push(
                    b.solve(&image)
                        .ok_or(Error::NotInvariant { gen, vector: i })?,
                );
            }
            Ok(Mat::from_columns(&self.field, k, &cols))
        };
        let mut images = Vec::new();
        let mut inverses = Vec::new();
        for j in 0..self.images.len() {
            images.push(restrict_one(&self.images[j], j)?);
            inverses.push(restrict_one(&self.inverses[j], j)?);
        }
        Ok(RepModule::trusted(
            self.pres.clone(),
            self.field.clone(),
            images,
            inverses,
            Provenance::Restricted {
                parent: self.provenance.to_string(),
                dim: k,
            },
        ))
    }
}

impl Action for RepModule {
    fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }
    fn field(&self) -> &CycField {
        &self.field
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn image(&self, gen: usize) -> &Mat {
        &self.images[gen]
    }
    fn inverse_image(&self, gen: usize) -> &Mat {
        &self.inverses[gen]
    }
    fn label(&self) -> String {
        self.provenance.to_string()
    }
}

fn check_compatible(a: &impl Action, b: &impl Action) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(
            a.field().conductor(),
            b.field().conductor(),
        ));
    }
    if !same_presentation(a.presentation(), b.presentation()) {
        return Err(Error::BadParams(
            "actions over different presentations".into(),
        ));
    }
    Ok(())
}

/// The module `M_{a×b}` with `γ·A = λ^{cφ(γ)} α(γ) A β(γ)⁻¹`.
///
/// Matrices are vectorized row-major, so the action matrix of `γ` is
/// `λ^{cφ(γ)} · α(γ) ⊗ (β(γ)⁻¹)ᵀ`.
pub fn build_tensor_dual(
    alpha: &impl Action,
    beta: &impl Action,
    lambda: &CycElt,
    c: i64,
) -> Result<RepModule> {
    check_compatible(alpha, beta)?;
    if lambda.field() != alpha.field() {
        return Err(Error::FieldMismatch(
            alpha.field().conductor(),
            lambda.field().conductor(),
        ));
    }
    if lambda.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let pres = alpha.presentation().clone();
    let g = pres.num_gens();
    let phi = if c == 0 {
        vec![0; g]
    } else {
        pres.abelianization()?
    };
    let mut images = Vec::with_capacity(g);
    let mut inverses = Vec::with_capacity(g);
    for j in 0..g {
        let s = lambda.pow(c * phi[j])?;
        images.push(
            alpha
                .image(j)
                .kron(&beta.inverse_image(j).transpose())
                .scale(&s),
        );
        inverses.push(
            alpha
                .inverse_image(j)
                .kron(&beta.image(j).transpose())
                .scale(&s.inv()?),
        );
    }
    Ok(RepModule::trusted(
        pres,
        alpha.field().clone(),
        images,
        inverses,
        Provenance::TensorDual {
            a: alpha.dim(),
            b: beta.dim(),
            lambda: lambda.to_string(),
            c,
        },
    ))
}

/// The fixed basis of sl_n: off-diagonal units `E_ij` in lexicographic order,
/// then `E_kk - E_{k+1,k+1}`.
pub fn sl_basis(field: &CycField, n: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Mat::zeros(field, n, n);
                m.set(i, j, field.one());
                out.push(m);
            }
        }
    }
    for k in 0..n.saturating_sub(1) {
        let mut m = Mat::zeros(field, n, n);
        m.set(k, k, field.one());
        m.set(k + 1, k + 1, -field.one());
        out.push(m);
    }
    out
}

/// Coordinates of a traceless matrix in [`sl_basis`].
pub fn sl_coords(x: &Mat) -> Vec<CycElt> {
    let n = x.rows();
    let f = x.field();
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(x.get(i, j).clone());
            }
        }
    }
    // X_kk = c_k - c_{k-1}, hence c_k is the k-th partial sum of the diagonal.
    let mut partial = f.zero();
    for k in 0..n.saturating_sub(1) {
        partial = &partial + x.get(k, k);
        out.push(partial.clone());
    }
    out
}

/// The adjoint module `sl_n` with `γ·X = ρ(γ) X ρ(γ)⁻¹`.
pub fn build_adjoint(rho: &impl Action) -> RepModule {
    let n = rho.dim();
    let f = rho.field().clone();
    let basis = sl_basis(&f, n);
    let act = |m: &Mat, minv: &Mat| -> Mat {
        let cols: Vec<Vec<CycElt>> = basis
            .iter()
            .map(|b| sl_coords(&(&(m * b) * minv)))
            .collect();
        Mat::from_columns(&f, basis.len(), &cols)
    };
    let g = rho.presentation().num_gens();
    if basis.is_empty() {
        return RepModule::zero(
            rho.presentation().clone(),
            &f,
            Provenance::Adjoint(rho.label()),
        );
    }
    let images = (0..g)
        .map(|j| act(rho.image(j), rho.inverse_image(j)))
        .collect();
    let inverses = (0..g)
        .map(|j| act(rho.inverse_image(j), rho.image(j)))
        .collect();
    RepModule::trusted(
        rho.presentation().clone(),
        f.clone(),
        images,
        inverses,
        Provenance::Adjoint(rho.label()),
    )
}

/// `ρ_λ = (λ^{bφ} ⊗ α) ⊕ (λ^{-aφ} ⊗ β)`.
pub fn build_rho_lambda(
    alpha: &impl Action,
    beta: &impl Action,
    lambda: &CycElt,
) -> Result<Representation> {
    check_compatible(alpha, beta)?;
    if lambda.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let (a, b) = (alpha.dim() as i64, beta.dim() as i64);
    let pres = alpha.presentation().clone();
    let phi = pres.abelianization()?;
    let images = (0..pres.num_gens())
        .map(|j| {
            let top = alpha.image(j).scale(&lambda.pow(b * phi[j])?);
            let bottom = beta.image(j).scale(&lambda.pow(-a * phi[j])?);
            Ok(top.block_diag(&bottom))
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(
        pres,
        images,
        &format!(
            "rho_lambda({}, {}, {})",
            alpha.label(),
            beta.label(),
            lambda
        ),
        true,
    )
}

/// Incrementally maintained row-echelon basis of a subspace of F^d.
pub(crate) struct EchelonSpan {
    rows: Vec<(usize, Vec<CycElt>)>,
}

impl EchelonSpan {
    pub(crate) fn new() -> Self {
        EchelonSpan { rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v`; returns true when it was independent of the current span.
    pub(crate) fn insert(&mut self, v: &[CycElt]) -> bool {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        let v: Vec<CycElt> = v.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x = &*x - &(&c * r);
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Dimension of the matrix algebra generated by the action.
///
/// Starts from the identity and multiplies span members by generator images
/// and their inverses until the span stops growing.
pub fn algebra_dimension(rho: &impl Action) -> usize {
    let n = rho.dim();
    if n == 0 {
        return 0;
    }
    let gens: Vec<&Mat> = (0..rho.presentation().num_gens())
        .flat_map(|j| [rho.image(j), rho.inverse_image(j)])
        .collect();
    let mut span = EchelonSpan::new();
    let id = Mat::identity(rho.field(), n);
    span.insert(id.entries());
    let mut frontier = vec![id];
    let mut rounds = 0;
    while !frontier.is_empty() && span.dim() < n * n && rounds <= n * n {
        let mut next = Vec::new();
        for m in &frontier {
            for g in &gens {
                let prod = m * *g;
                if span.insert(prod.entries()) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
        rounds += 1;
    }
    span.dim()
}

/// Burnside's criterion: irreducible iff the generated algebra is all of M_n.
pub fn irreducible(rho: &impl Action) -> bool {
    let n = rho.dim();
    n > 0 && algebra_dimension(rho) == n * n
}

/// Traces of all words of length at most 3 in the generators and their
/// inverses, followed by the traces of `m`, `m²`, `m⁻¹` for a declared meridian.
pub fn character_sample(rho: &impl Action) -> Vec<CycElt> {
    let g = rho.presentation().num_gens();
    let letters: Vec<Letter> = (0..g)
        .flat_map(|gen| [Letter { gen, inv: false }, Letter { gen, inv: true }])
        .collect();
    let mut words = vec![Word::identity()];
    let mut layer = vec![Word::identity()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                next.push(Word::from_letters(w.letters().iter().copied().chain([l])));
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    if let Some(m) = &rho.presentation().meridian {
        words.extend([m.clone(), m.pow(2), m.inv()]);
    }
    words
        .iter()
        .map(|w| rho.word_image(w).trace().expect("square"))
        .collect()
}

/// Bases, in adjoint coordinates of sl_{a+b}, of the five summands
/// `sl_a ⊕ sl_b ⊕ C ⊕ M⁺ ⊕ M⁻` preserved by `Ad ρ_λ`.
pub fn rho_lambda_summands(
    field: &CycField,
    a: usize,
    b: usize,
) -> Vec<(&'static str, Vec<Vec<CycElt>>)> {
    let n = a + b;
    let unit = |i: usize, j: usize| {
        let mut m = Mat::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    };
    let diff = |k: usize| &unit(k, k) - &unit(k + 1, k + 1);
    let coords = |ms: Vec<Mat>| ms.iter().map(sl_coords).collect::<Vec<_>>();
    let mut sl_a = Vec::new();
    let mut sl_b = Vec::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            match (i < a, j < a) {
                (true, true) => sl_a.push(unit(i, j)),
                (false, false) => sl_b.push(unit(i, j)),
                (true, false) => plus.push(unit(i, j)),
                (false, true) => minus.push(unit(i, j)),
            }
        }
    }
    sl_a.extend((0..a.saturating_sub(1)).map(diff));
    sl_b.extend((a..n - 1).map(diff));
    let mut center = Mat::zeros(field, n, n);
    for k in 0..n {
        center.set(
            k,
            k,
            field.from_int(if k < a { b as i64 } else { -(a as i64) }),
        );
    }
    vec![
        ("sl_a", coords(sl_a)),
        ("sl_b", coords(sl_b)),
        ("center", coords(vec![center])),
        ("M+", coords(plus)),
        ("M-", coords(minus)),
    ]
}

/// Checks that the span of `basis` is preserved by every generator.
pub fn check_invariant(module: &impl Action, basis: &[Vec<CycElt>]) -> Result<()> {
    if basis.is_empty() {
        return Ok(());
    }
    let b = Mat::from_columns(module.field(), module.dim(), basis);
    for gen in 0..module.presentation().num_gens() {
        for (i, v) in basis.iter().enumerate() {
            for m in [module.image(gen), module.inverse_image(gen)] {
                if !b.column_space_contains(&m.mul_vec(v)) {
                    return Err(Error::NotInvariant { gen, vector: i });
                }
            }
        }
    }
    Ok(())
}

/// `t^{φ(x_j)} M(x_j) - Id` for every generator.
pub(crate) fn twisted_generator_blocks(m: &impl Action) -> Result<Vec<MatL>> {
    let id = MatL::identity(m.field(), m.dim());
    (0..m.presentation().num_gens())
        .map(|j| m.gen_image_symbolic(j)?.checked_sub(&id))
        .collect()
}

#[cfg(test)]
mod tests;
