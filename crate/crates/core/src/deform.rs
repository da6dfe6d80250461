//! Deciding whether the reducible representation
//! `ρ_λ = (λ^{bφ} ⊗ α) ⊕ (λ^{-aφ} ⊗ β)` deforms to irreducible ones, and the
//! non-semisimple representations `[[Id, c], [0, Id]]·ρ_λ` built from cocycles.

use std::fmt;

use serde::Serialize;

use crate::alexander::AlexanderData;
use crate::cohomology::{build_complex, cocycle_basis, Cocycle, CohomDims};
use crate::cyclofield::CycElt;
use crate::error::{Error, Result};
use crate::laurentlin::{LaurentPoly, Mat, Multiplicity};
use crate::repspace::{
    algebra_dimension, build_adjoint, build_rho_lambda, build_tensor_dual, character_sample,
    irreducible, rho_lambda_summands, Action, Representation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    NoIrredDeformation,
    Deformable,
    Inconclusive,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::NoIrredDeformation => "NO_IRRED_DEFORMATION",
            Classification::Deformable => "DEFORMABLE",
            Classification::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisStatus {
    pub alpha_irreducible: bool,
    pub beta_irreducible: bool,
    pub alpha_regular: bool,
    pub beta_regular: bool,
}

impl HypothesisStatus {
    pub fn holds(&self) -> bool {
        self.alpha_irreducible && self.beta_irreducible && self.alpha_regular && self.beta_regular
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformReport {
    pub alpha: String,
    pub beta: String,
    pub lambda: String,
    pub n: usize,
    pub hypotheses: HypothesisStatus,
    pub delta0_plus: String,
    pub delta1_plus: Option<String>,
    pub delta1_minus: Option<String>,
    /// `Δ₀⁺(λⁿ)`.
    pub delta0_plus_at: String,
    pub delta0_plus_at_is_zero: bool,
    /// Multiplicity of `λⁿ` as a root of `Δ₁⁺`; `None` when unbounded or unavailable.
    pub delta1_plus_multiplicity: Option<u32>,
    pub delta1_minus_multiplicity: Option<u32>,
    /// Both multiplicities agree, as duality predicts.
    pub duality_cross_check: bool,
    /// `(h⁰, h¹)` of `M⁺_{λⁿ}` and `M⁻_{λ⁻ⁿ}`, computed for deformable points.
    pub cohomology_plus: Option<CohomDims>,
    pub cohomology_minus: Option<CohomDims>,
    pub classification: Classification,
    pub explanation: Vec<String>,
}

fn finite(m: Multiplicity) -> Option<u32> {
    match m {
        Multiplicity::Finite(k) => Some(k),
        Multiplicity::Infinite => None,
    }
}

/// `h¹(sl_a Ad ρ) = a − 1`; one-dimensional inputs pass trivially.
pub fn infinitesimally_regular(rho: &Representation) -> Result<bool> {
    let ad = build_adjoint(rho);
    if ad.dim() == 0 {
        return Ok(true);
    }
    Ok(build_complex(&ad)?.dims().h1 == rho.dim() - 1)
}

fn mult_at(p: &Option<LaurentPoly>, mu: &CycElt) -> Result<Option<u32>> {
    match p {
        Some(p) => Ok(finite(p.eval_and_multiplicity(mu)?.1)),
        None => Ok(None),
    }
}

pub fn classify_deformation(
    alpha: &Representation,
    beta: &Representation,
    lambda: &CycElt,
) -> Result<DeformReport> {
    if lambda.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let n = alpha.dim() + beta.dim();
    let mu = lambda.pow(n as i64)?;
    let mu_inv = mu.inv()?;
    let one = alpha.field().one();
    let hypotheses = HypothesisStatus {
        alpha_irreducible: irreducible(alpha),
        beta_irreducible: irreducible(beta),
        alpha_regular: infinitesimally_regular(alpha)?,
        beta_regular: infinitesimally_regular(beta)?,
    };
    let plus = AlexanderData::compute(&build_tensor_dual(alpha, beta, &one, 0)?)?;
    let minus = AlexanderData::compute(&build_tensor_dual(beta, alpha, &one, 0)?)?;
    let d0_at = plus.delta0.eval(&mu)?;
    let m_plus = mult_at(&plus.delta1, &mu)?;
    let m_minus = mult_at(&minus.delta1, &mu_inv)?;
    let mut explanation = Vec::new();
    if !hypotheses.holds() {
        explanation.push(format!(
            "hypotheses fail (alpha irreducible {}, beta irreducible {}, alpha regular {}, beta regular {})",
            hypotheses.alpha_irreducible, hypotheses.beta_irreducible, hypotheses.alpha_regular, hypotheses.beta_regular
        ));
    }
    let classification = if !hypotheses.holds() {
        Classification::Inconclusive
    } else {
        match m_plus {
            None => {
                explanation.push("Delta1+ is zero or unavailable at lambda^n".into());
                Classification::Inconclusive
            }
            Some(0) => {
                explanation.push("lambda^n is not a root of Delta1+".into());
                Classification::NoIrredDeformation
            }
            Some(1) if !d0_at.is_zero() => {
                explanation.push(
                    "lambda^n is a simple root of Delta1+ and Delta0+(lambda^n) is nonzero".into(),
                );
                Classification::Deformable
            }
            Some(k) => {
                explanation.push(if d0_at.is_zero() {
                    "Delta0+ vanishes at lambda^n".to_string()
                } else {
                    format!("lambda^n is a root of Delta1+ of multiplicity {k}")
                });
                Classification::Inconclusive
            }
        }
    };
    let (cohomology_plus, cohomology_minus) = if classification == Classification::Deformable {
        let cp = build_complex(&build_tensor_dual(alpha, beta, lambda, n as i64)?)?.dims();
        let cm = build_complex(&build_tensor_dual(beta, alpha, lambda, -(n as i64))?)?.dims();
        (Some(cp), Some(cm))
    } else {
        (None, None)
    };
    Ok(DeformReport {
        alpha: alpha.label(),
        beta: beta.label(),
        lambda: lambda.to_string(),
        n,
        hypotheses,
        delta0_plus: plus.delta0.to_string(),
        delta1_plus: plus.delta1.as_ref().map(ToString::to_string),
        delta1_minus: minus.delta1.as_ref().map(ToString::to_string),
        delta0_plus_at: d0_at.to_string(),
        delta0_plus_at_is_zero: d0_at.is_zero(),
        delta1_plus_multiplicity: m_plus,
        delta1_minus_multiplicity: m_minus,
        duality_cross_check: m_plus == m_minus,
        cohomology_plus,
        cohomology_minus,
        classification,
        explanation,
    })
}

/// The result of building `γ ↦ [[Id, c(γ)], [0, Id]]·ρ_λ(γ)` on generators.
#[derive(Clone, Debug)]
pub struct RhoCocycle {
    pub images: Vec<Mat>,
    /// The relators map to the identity.
    pub is_representation: bool,
    pub representation: Option<Representation>,
    pub same_character: bool,
    pub algebra_dim: usize,
    pub rho_lambda_algebra_dim: usize,
    /// Same character and an algebra of the same dimension as that of `ρ_λ`,
    /// so the candidate is semisimple and hence conjugate to `ρ_λ`.
    pub conjugate_to_rho_lambda: bool,
}

/// `c` holds, for each generator, a row-major `a×b` block.
pub fn build_rho_cocycle(rho_lambda: &Representation, a: usize, c: &Cocycle) -> Result<RhoCocycle> {
    let f = rho_lambda.field();
    let n = rho_lambda.dim();
    if a == 0 || a >= n {
        return Err(Error::BadSize(format!(
            "block size {a} invalid for dimension {n}"
        )));
    }
    let b = n - a;
    if c.values.len() != rho_lambda.images().len() || c.values.iter().any(|v| v.len() != a * b) {
        return Err(Error::BadSize(
            "cochain values must be a*b blocks, one per generator".into(),
        ));
    }
    let images: Vec<Mat> = c
        .values
        .iter()
        .zip(rho_lambda.images())
        .map(|(v, m)| {
            let mut u = Mat::identity(f, n);
            for i in 0..a {
                for j in 0..b {
                    u.set(i, a + j, v[i * b + j].clone());
                }
            }
            &u * m
        })
        .collect();
    let rho_dim = algebra_dimension(rho_lambda);
    let built = Representation::new(
        rho_lambda.presentation().clone(),
        images.clone(),
        &format!("{}^c", rho_lambda.label()),
        true,
    );
    let (representation, is_representation) = match built {
        Ok(r) => (Some(r), true),
        Err(Error::RelatorViolation { .. }) => (None, false),
        Err(e) => return Err(e),
    };
    let (same_character, algebra_dim) = match &representation {
        Some(r) => (
            character_sample(r) == character_sample(rho_lambda),
            algebra_dimension(r),
        ),
        None => (false, 0),
    };
    Ok(RhoCocycle {
        images,
        is_representation,
        representation,
        same_character,
        algebra_dim,
        rho_lambda_algebra_dim: rho_dim,
        conjugate_to_rho_lambda: is_representation && same_character && algebra_dim == rho_dim,
    })
}

/// `Q⁻¹ ρ_λ Q` with `Q = [[Id, v], [0, Id]]`, which equals the cocycle
/// representation of the coboundary `γ ↦ γ·v − v`.
pub fn conjugate_by_unipotent(
    rho_lambda: &Representation,
    a: usize,
    v: &[CycElt],
) -> Result<Representation> {
    let f = rho_lambda.field();
    let n = rho_lambda.dim();
    let b = n - a;
    let mut q = Mat::identity(f, n);
    for i in 0..a {
        for j in 0..b {
            q.set(i, a + j, v[i * b + j].clone());
        }
    }
    rho_lambda.conjugate_by(&q.inverse()?)
}

/// `normalize(Δ₁⁺·Δ₀⁺)`, whose roots are the `λⁿ` admitting a reducible,
/// non-semisimple representation with the character of `ρ_λ`.
pub fn nonsplit_locus(alpha: &Representation, beta: &Representation) -> Result<LaurentPoly> {
    let one = alpha.field().one();
    let plus = AlexanderData::compute(&build_tensor_dual(alpha, beta, &one, 0)?)?;
    let d1 = plus.delta1.ok_or(Error::NonPolynomialQuotient)?;
    Ok(d1.checked_mul(&plus.delta0)?.normalize())
}

/// `dim Z¹(sl_n Ad ρ_λ)` and `n² + n − 3 + Σ± (h¹(M±) − h⁰(M±))`.
pub fn tangent_dimension_identity(
    alpha: &Representation,
    beta: &Representation,
    lambda: &CycElt,
) -> Result<(i64, i64)> {
    let n = (alpha.dim() + beta.dim()) as i64;
    let rho = build_rho_lambda(alpha, beta, lambda)?;
    let lhs = build_complex(&build_adjoint(&rho))?.dims().z1 as i64;
    let p = build_complex(&build_tensor_dual(alpha, beta, lambda, n)?)?.dims();
    let m = build_complex(&build_tensor_dual(beta, alpha, lambda, -n)?)?.dims();
    let rhs = n * n + n - 3 + p.h1 as i64 - p.h0 as i64 + m.h1 as i64 - m.h0 as i64;
    Ok((lhs, rhs))
}

/// The representation `ρ⁺` and the cohomology of its adjoint module and of
/// the parabolic submodule `p⁺`.
#[derive(Clone, Debug)]
pub struct RhoPlus {
    pub rho_lambda: Representation,
    pub rho_plus: Representation,
    pub d_plus: Cocycle,
    pub adjoint: CohomDims,
    pub parabolic: CohomDims,
    pub parabolic_dim: usize,
}

/// Builds `ρ⁺ = [[Id, d₊], [0, Id]]·ρ_λ` from the first H¹ representative of
/// `M⁺_{λⁿ}` and computes `H*(sl_n Ad ρ⁺)` and `H*(p⁺)`.
pub fn rho_plus(alpha: &Representation, beta: &Representation, lambda: &CycElt) -> Result<RhoPlus> {
    let (a, b) = (alpha.dim(), beta.dim());
    let n = a + b;
    let mp = build_complex(&build_tensor_dual(alpha, beta, lambda, n as i64)?)?;
    let d_plus = cocycle_basis(&mp)
        .h1
        .into_iter()
        .next()
        .ok_or(Error::NoCocycle)?;
    let rho_lambda = build_rho_lambda(alpha, beta, lambda)?;
    let built = build_rho_cocycle(&rho_lambda, a, &d_plus)?;
    let rho_plus = built
        .representation
        .ok_or_else(|| Error::Internal("cocycle did not give a representation".into()))?;
    let ad = build_adjoint(&rho_plus);
    let adjoint = build_complex(&ad)?.dims();
    let parts = rho_lambda_summands(alpha.field(), a, b);
    let basis: Vec<Vec<CycElt>> = parts
        .iter()
        .filter(|(name, _)| *name != "M-")
        .flat_map(|(_, v)| v.iter().cloned())
        .collect();
    let p = ad.restrict(&basis)?;
    let parabolic = build_complex(&p)?.dims();
    Ok(RhoPlus {
        rho_lambda,
        rho_plus,
        d_plus,
        adjoint,
        parabolic,
        parabolic_dim: basis.len(),
    })
}
