//! The explicit representation families used throughout the trefoil
//! computations, all instantiated in Q(ζ_N) with 12 | N.

use std::sync::Arc;

use crate::cyclofield::{CycElt, CycField};
use crate::error::{Error, Result};
use crate::fpgroup::{trefoil, Presentation};
use crate::laurentlin::Mat;
use crate::repspace::{Action, Representation};

fn require_twelve(field: &CycField) -> Result<()> {
    if !field.conductor().is_multiple_of(12) {
        return Err(Error::BadParams(format!(
            "this family needs 12 | N for i, a primitive sixth and a primitive cube root (N = {})",
            field.conductor()
        )));
    }
    Ok(())
}

/// ζ_N^{N/k}, a primitive k-th root of unity.
fn root(field: &CycField, k: u32) -> CycElt {
    field.zeta_pow((field.conductor() / k) as i64)
}

/// The SL₂ representations of the trefoil
/// `x ↦ [[i, 0], [s, -i]]`, `y ↦ [[η, η̄ - η], [0, η̄]]` with η = ζ₁₂².
pub fn alpha_s(s: &CycElt) -> Result<Representation> {
    let f = s.field();
    require_twelve(f)?;
    let i = root(f, 4);
    let eta = root(f, 6);
    let eta_bar = eta.inv()?;
    let x = Mat::from_rows(f, vec![vec![i.clone(), f.zero()], vec![s.clone(), -&i]])?;
    let y = Mat::from_rows(
        f,
        vec![vec![eta.clone(), &eta_bar - &eta], vec![f.zero(), eta_bar]],
    )?;
    Representation::new(
        Arc::new(trefoil()),
        vec![x, y],
        &format!("alpha_s(s = {s})"),
        true,
    )
}

/// The SL₃ representations of the trefoil
/// `x ↦ [[1,0,0],[s,-1,0],[t,0,-1]]`, `y ↦ [[1, ω-1, ω²-1],[0,ω,0],[0,0,ω²]]`
/// with ω = ζ₁₂⁴.
pub fn rho_st(s: &CycElt, t: &CycElt) -> Result<Representation> {
    let f = s.field();
    if t.field() != f {
        return Err(Error::FieldMismatch(f.conductor(), t.field().conductor()));
    }
    require_twelve(f)?;
    let w = root(f, 3);
    let w2 = &w * &w;
    let (one, zero) = (f.one(), f.zero());
    let x = Mat::from_rows(
        f,
        vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![s.clone(), -&one, zero.clone()],
            vec![t.clone(), zero.clone(), -&one],
        ],
    )?;
    let y = Mat::from_rows(
        f,
        vec![
            vec![one.clone(), &w - &one, &w2 - &one],
            vec![zero.clone(), w.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), w2],
        ],
    )?;
    Representation::new(
        Arc::new(trefoil()),
        vec![x, y],
        &format!("rho_st(s = {s}, t = {t})"),
        true,
    )
}

/// The trivial n-dimensional representation.
pub fn trivial(pres: &Arc<Presentation>, field: &CycField, n: usize) -> Representation {
    let images = vec![Mat::identity(field, n); pres.num_gens()];
    Representation::new(pres.clone(), images, &format!("trivial({n})"), true)
        .expect("identity satisfies relators")
}

/// The one-dimensional representation `γ ↦ λ^{φ(γ)}`.
pub fn lambda_phi(pres: &Arc<Presentation>, lambda: &CycElt) -> Result<Representation> {
    if lambda.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let phi = pres.abelianization()?;
    let f = lambda.field();
    let images = phi
        .iter()
        .map(|&k| Mat::from_rows(f, vec![vec![lambda.pow(k)?]]))
        .collect::<Result<Vec<_>>>()?;
    Representation::new(
        pres.clone(),
        images,
        &format!("lambda^phi(lambda = {lambda})"),
        false,
    )
}

/// `r₃(A)`: the action of `A` on `Sym²(C²)` in the basis `e₁², e₁e₂, e₂²`.
pub fn sym_square_matrix(a: &Mat) -> Mat {
    let f = a.field();
    let (p, q, r, s) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let two = f.from_int(2);
    Mat::from_rows(
        f,
        vec![
            vec![p * p, p * q, q * q],
            vec![&two * &(p * r), &(p * s) + &(q * r), &two * &(q * s)],
            vec![r * r, r * s, s * s],
        ],
    )
    .expect("3x3")
}

/// The symmetric square `r₃ ∘ ρ` of a two-dimensional representation.
pub fn sym_square(rho: &Representation) -> Result<Representation> {
    if rho.dim() != 2 {
        return Err(Error::BadParams(format!(
            "symmetric square needs a 2-dimensional input (got {})",
            rho.dim()
        )));
    }
    let images = rho.images().iter().map(sym_square_matrix).collect();
    Representation::new(
        rho.presentation().clone(),
        images,
        &format!("Sym2({})", rho.label()),
        rho.is_special(),
    )
}
