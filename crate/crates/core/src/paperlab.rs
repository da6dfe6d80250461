//! Worked computations for the trefoil `⟨x, y | x² = y³⟩`: SL₂ and SL₃
//! character coordinates, their symmetries, a non-semisimple example where
//! degree-zero duality fails, and a battery that runs every check.

use std::sync::Arc;

use serde::Serialize;

use crate::alexander::{delta0, duality_check, AlexanderData};
use crate::cohomology::{build_complex, cocycle_basis, cup_product, Cocycle, ScalarPairing};
use crate::cyclofield::{CycElt, CycField};
use crate::deform::{
    build_rho_cocycle, classify_deformation, rho_plus, tangent_dimension_identity, Classification,
};
use crate::error::{Error, Result};
use crate::fpgroup::{trefoil, Word};
use crate::laurentlin::{LaurentPoly, Mat};
use crate::repspace::{
    alpha_s, build_rho_lambda, build_tensor_dual, character_sample, irreducible, lambda_phi,
    rho_st, sym_square, trivial, Action, Representation,
};

/// `ζ_N^{N/k}`.
fn root(f: &CycField, k: u32) -> CycElt {
    f.zeta_pow((f.conductor() / k) as i64)
}

fn meridian() -> Word {
    trefoil().meridian.expect("trefoil has a meridian")
}

/// Coordinates `(s, t)` of `ρ_{s,t}` with the traces of `m` and `m⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharCoords {
    pub s: CycElt,
    pub t: CycElt,
    pub trace_m: CycElt,
    pub trace_m_inv: CycElt,
}

/// `(2, 2) + [[ω² − 1, ω − 1], [ω − 1, ω² − 1]]·(s, t)`.
pub fn trace_formula(s: &CycElt, t: &CycElt) -> (CycElt, CycElt) {
    let f = s.field();
    let w = root(f, 3);
    let (one, two) = (f.one(), f.from_int(2));
    let a = &(&w * &w) - &one;
    let b = &w - &one;
    (
        &two + &(&(&a * s) + &(&b * t)),
        &two + &(&(&b * s) + &(&a * t)),
    )
}

/// Traces of `ρ_{s,t}(m^{±1})` from the matrices, cross-checked against
/// [`trace_formula`].
pub fn trace_coordinates(s: &CycElt, t: &CycElt) -> Result<CharCoords> {
    let rho = rho_st(s, t)?;
    let m = meridian();
    let trace_m = rho.word_image(&m).trace()?;
    let trace_m_inv = rho.word_image(&m.inv()).trace()?;
    if trace_formula(s, t) != (trace_m.clone(), trace_m_inv.clone()) {
        return Err(Error::Internal(format!(
            "trace formula disagrees with matrices at (s, t) = ({s}, {t})"
        )));
    }
    Ok(CharCoords {
        s: s.clone(),
        t: t.clone(),
        trace_m,
        trace_m_inv,
    })
}

/// Inverts [`trace_formula`]: the `(s, t)` with the given traces.
pub fn coordinates_from_traces(tm: &CycElt, tmi: &CycElt) -> Result<(CycElt, CycElt)> {
    let f = tm.field();
    let zero = f.zero();
    let (c1, c2) = trace_formula(&f.one(), &zero);
    let (d1, d2) = trace_formula(&zero, &f.one());
    let two = f.from_int(2);
    let m = Mat::from_rows(
        f,
        vec![vec![&c1 - &two, &d1 - &two], vec![&c2 - &two, &d2 - &two]],
    )?;
    let st = m.inverse()?.mul_vec(&[tm - &two, tmi - &two]);
    Ok((st[0].clone(), st[1].clone()))
}

/// The order-three symmetry `(s, t) ↦ (2 − s − t, s)` of the SL₃ coordinates.
pub fn order3_symmetry(s: &CycElt, t: &CycElt) -> (CycElt, CycElt) {
    (&(&s.field().from_int(2) - s) - t, s.clone())
}

/// `ρ_{s,t}` is reducible exactly on the lines `s = 0`, `t = 0`, `s + t = 2`.
pub fn sl3_reducible_locus(s: &CycElt, t: &CycElt) -> bool {
    s.is_zero() || t.is_zero() || (s + t) == s.field().from_int(2)
}

/// `α_s` is reducible exactly at `s ∈ {0, 2i}`.
pub fn sl2_reducible_locus(s: &CycElt) -> bool {
    let i = root(s.field(), 4);
    s.is_zero() || *s == &i + &i
}

/// `χ_s(m) = i(η̄ − η) + s(η − η̄)` for `m = xy⁻¹`.
pub fn chi_s_meridian(s: &CycElt) -> CycElt {
    let f = s.field();
    let i = root(f, 4);
    let eta = root(f, 6);
    let eta_bar = eta.inv().expect("root of unity");
    &(&i * &(&eta_bar - &eta)) + &(s * &(&eta - &eta_bar))
}

/// `σ̃(α)`: negate the image of `x`, i.e. `(−1)^φ ⊗ α`.
pub fn sigma_tilde(alpha: &Representation) -> Result<Representation> {
    let mut images = alpha.images().to_vec();
    images[0] = images[0].scale(&-alpha.field().one());
    Representation::new(
        alpha.presentation().clone(),
        images,
        &format!("sigma({})", alpha.label()),
        alpha.is_special(),
    )
}

/// `i_λ(α) = (λ^φ ⊗ α) ⊕ (λ^{−2φ} ⊗ 1)`.
pub fn embed_sl3(alpha: &Representation, lambda: &CycElt) -> Result<Representation> {
    build_rho_lambda(
        alpha,
        &trivial(alpha.presentation(), alpha.field(), 1),
        lambda,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionCheck {
    /// `i_λ ∘ σ` and `i_{−λ}` have the same character sample.
    pub embedding_identity: bool,
    /// `σ̃(α_s)` and `α_{2i−s}` have the same character sample.
    pub conjugate_parameter: bool,
    /// `tr α_s(m)` matches [`chi_s_meridian`].
    pub meridian_trace_linear: bool,
}

impl InvolutionCheck {
    pub fn pass(&self) -> bool {
        self.embedding_identity && self.conjugate_parameter && self.meridian_trace_linear
    }
}

pub fn sl2_involution_check(s: &CycElt, lambda: &CycElt) -> Result<InvolutionCheck> {
    let a = alpha_s(s)?;
    let sa = sigma_tilde(&a)?;
    let lhs = embed_sl3(&sa, lambda)?;
    let rhs = embed_sl3(&a, &-lambda)?;
    let i = root(s.field(), 4);
    let other = alpha_s(&(&(&i + &i) - s))?;
    Ok(InvolutionCheck {
        embedding_identity: character_sample(&lhs) == character_sample(&rhs),
        conjugate_parameter: character_sample(&sa) == character_sample(&other),
        meridian_trace_linear: a.word_image(&meridian()).trace()? == chi_s_meridian(s),
    })
}

/// The reducible, non-semisimple `ρ = [[1, d], [0, 1]]·diag(λ^φ, λ^{−φ})` and
/// its degree-zero polynomials.
#[derive(Clone, Debug)]
pub struct NonSemisimpleExample {
    pub lambda: CycElt,
    pub cocycle: Cocycle,
    pub rho: Representation,
    pub non_abelian: bool,
    pub delta0_rho: LaurentPoly,
    pub delta0_dual: LaurentPoly,
    /// `normalize(Δ₀^ρ(1/t))`.
    pub delta0_rho_inverted: LaurentPoly,
    /// `Δ₀^ρ(1/t)` and `Δ₀^{ρ*}(t)` are not associated.
    pub duality_fails: bool,
}

pub fn non_semisimple_example(lambda: &CycElt) -> Result<NonSemisimpleExample> {
    let f = lambda.field();
    let l2 = lambda * lambda;
    let root_of_classical = &(&(&l2 * &l2) - &l2) + &f.one();
    if !root_of_classical.is_zero() {
        return Err(Error::BadParams(format!(
            "lambda^2 = {l2} is not a root of t^2 - t + 1"
        )));
    }
    let pres = Arc::new(trefoil());
    let one = trivial(&pres, f, 1);
    let module = lambda_phi(&pres, &l2)?.to_module();
    let complex = build_complex(&module)?;
    let d = cocycle_basis(&complex)
        .h1
        .into_iter()
        .next()
        .ok_or(Error::NoCocycle)?;
    let rho_lambda = build_rho_lambda(&one, &one, lambda)?;
    let built = build_rho_cocycle(&rho_lambda, 1, &d)?;
    let rho = built
        .representation
        .ok_or_else(|| Error::Internal("cocycle did not give a representation".into()))?;
    let (x, y) = (rho.image(0), rho.image(1));
    let non_abelian = x * y != y * x;
    let delta0_rho = delta0(&rho.to_module())?;
    let delta0_dual = delta0(&rho.dual().to_module())?;
    let delta0_rho_inverted = delta0_rho.substitute_inverse().normalize();
    Ok(NonSemisimpleExample {
        lambda: lambda.clone(),
        cocycle: d,
        rho,
        non_abelian,
        duality_fails: !delta0_rho_inverted.is_associate(&delta0_dual),
        delta0_rho,
        delta0_dual,
        delta0_rho_inverted,
    })
}

/// One entry of the battery.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: String,
    pub evidence: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == "pass")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {} ({})\n",
                c.status.to_uppercase(),
                c.id,
                c.anchor
            ));
            for e in &c.evidence {
                out.push_str(&format!("    {e}\n"));
            }
        }
        let passed = self.checks.iter().filter(|c| c.status == "pass").count();
        out.push_str(&format!("{passed}/{} checks passed\n", self.checks.len()));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Check {
    ok: bool,
    evidence: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            ok: true,
            evidence: Vec::new(),
        }
    }

    fn expect(&mut self, cond: bool, msg: impl Into<String>) {
        let msg = msg.into();
        self.evidence
            .push(if cond { msg } else { format!("FAILED: {msg}") });
        self.ok &= cond;
    }
}

fn record(id: &str, anchor: &str, f: impl FnOnce(&mut Check) -> Result<()>) -> CheckRecord {
    let mut c = Check::new();
    if let Err(e) = f(&mut c) {
        c.expect(false, format!("{}: {e}", e.name()));
    }
    CheckRecord {
        id: id.into(),
        anchor: anchor.into(),
        status: if c.ok { "pass" } else { "fail" }.into(),
        evidence: c.evidence,
    }
}

fn poly(f: &CycField, s: &str) -> LaurentPoly {
    LaurentPoly::parse(f, s).expect("constant polynomial text")
}

/// Parameters `s` used for irreducible SL₂ inputs in the duality battery.
fn irreducible_parameters(f: &CycField) -> Vec<CycElt> {
    let i = root(f, 4);
    vec![
        f.one(),
        f.from_int(2),
        f.from_int(3),
        f.from_int(-1),
        i.clone(),
        &i + &f.one(),
        f.from_frac(1, 2),
        root(f, 6),
    ]
}

/// Pairs `(s, s')` for the duality battery.
pub fn duality_pairs(f: &CycField) -> Vec<(CycElt, CycElt)> {
    let ps = irreducible_parameters(f);
    [
        (0, 1),
        (0, 0),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 6),
        (6, 7),
        (7, 0),
        (1, 4),
    ]
    .iter()
    .map(|&(a, b)| (ps[a].clone(), ps[b].clone()))
    .collect()
}

/// Runs every trefoil check in a fixed order.
pub fn trefoil_suite(f: &CycField) -> Result<SuiteReport> {
    if !f.conductor().is_multiple_of(12) {
        return Err(Error::BadParams(format!(
            "the trefoil suite needs 12 | N (N = {})",
            f.conductor()
        )));
    }
    let pres = Arc::new(trefoil());
    let one = trivial(&pres, f, 1);
    let z = f.zeta();
    let a1 = alpha_s(&f.one())?;
    let mut checks = Vec::new();

    checks.push(record(
        "sl2-polynomials",
        "irreducible SL2 twisted polynomials",
        |c| {
            for s in [f.one(), f.from_int(3)] {
                let d = AlexanderData::compute(&alpha_s(&s)?.to_module())?;
                c.expect(
                    d.delta0 == poly(f, "1"),
                    format!("s = {s}: Delta0 = {}", d.delta0),
                );
                let d1 = d.delta1.map(|p| p.to_string()).unwrap_or_default();
                c.expect(d1 == "t^2 + 1", format!("s = {s}: Delta1 = {d1}"));
            }
            let d = AlexanderData::compute(&one.to_module())?;
            c.expect(
                d.delta0 == poly(f, "t - 1"),
                format!("untwisted Delta0 = {}", d.delta0),
            );
            c.expect(
                d.delta1 == Some(poly(f, "t^2 - t + 1")),
                "untwisted Delta1 = t^2 - t + 1",
            );
            Ok(())
        },
    ));

    checks.push(record(
        "irreducibility-loci",
        "SL2 and SL3 reducibility lines",
        |c| {
            let i = root(f, 4);
            for s in [f.zero(), &i + &i, f.one(), i.clone(), f.from_int(-2)] {
                let got = irreducible(&alpha_s(&s)?);
                c.expect(
                    got == !sl2_reducible_locus(&s),
                    format!("alpha_s, s = {s}: irreducible {got}"),
                );
            }
            let mut mismatches = 0;
            for s in -1..4 {
                for t in -1..4 {
                    let (s, t) = (f.from_int(s), f.from_int(t));
                    if irreducible(&rho_st(&s, &t)?) == sl3_reducible_locus(&s, &t) {
                        mismatches += 1;
                    }
                }
            }
            c.expect(
                mismatches == 0,
                format!("5x5 grid for rho_st: {mismatches} mismatches"),
            );
            c.expect(
                !irreducible(&rho_st(&f.one(), &f.one())?),
                "(s, t) = (1, 1) is reducible",
            );
            Ok(())
        },
    ));

    checks.push(record(
        "deformation-classification",
        "lambda^6 = -1 deforms, others do not",
        |c| {
            for k in [1, 3, 5, 7, 9, 11] {
                let lambda = f.zeta_pow(k * f.conductor() as i64 / 12);
                let r = classify_deformation(&a1, &one, &lambda)?;
                c.expect(
                    r.classification == Classification::Deformable,
                    format!("lambda = {lambda}: {}", r.classification),
                );
                c.expect(
                    r.duality_cross_check,
                    format!("lambda = {lambda}: root multiplicities agree"),
                );
            }
            for lambda in [f.one(), root(f, 6)] {
                let r = classify_deformation(&a1, &one, &lambda)?;
                c.expect(
                    r.classification == Classification::NoIrredDeformation,
                    format!("lambda = {lambda}: {}", r.classification),
                );
            }
            Ok(())
        },
    ));

    let n = 3;
    checks.push(record(
        "tensor-module-cohomology",
        "M+ and M- at a simple root",
        |c| {
            for (label, m) in [
                ("M+", build_tensor_dual(&a1, &one, &z, n)?),
                ("M-", build_tensor_dual(&one, &a1, &z, -n)?),
            ] {
                let d = build_complex(&m)?.dims();
                c.expect(
                    (d.h0, d.h1, d.h2) == (0, 1, 1),
                    format!("{label}: (h0, h1, h2) = ({}, {}, {})", d.h0, d.h1, d.h2),
                );
            }
            Ok(())
        },
    ));

    checks.push(record(
        "cup-product",
        "phi cup d is not a coboundary",
        |c| {
            let triv = build_complex(&one.to_module())?;
            let phi = Cocycle {
                values: vec![vec![f.from_int(3)], vec![f.from_int(2)]],
            };
            for (label, m) in [
                ("M+", build_tensor_dual(&a1, &one, &z, n)?),
                ("M-", build_tensor_dual(&one, &a1, &z, -n)?),
            ] {
                let cx = build_complex(&m)?;
                let d = cocycle_basis(&cx)
                    .h1
                    .into_iter()
                    .next()
                    .ok_or(Error::NoCocycle)?;
                let cup = cup_product(&triv, &phi, &cx, &d, &ScalarPairing { dim: m.dim() }, &cx)?;
                c.expect(
                    !cup.is_coboundary,
                    format!("{label}: phi cup d is a coboundary: {}", cup.is_coboundary),
                );
            }
            Ok(())
        },
    ));

    checks.push(record(
        "rho-plus-chain",
        "non-semisimple rho+ and its parabolic submodule",
        |c| {
            let r = rho_plus(&a1, &one, &z)?;
            c.expect(r.parabolic.h0 == 0, format!("h0(p+) = {}", r.parabolic.h0));
            c.expect(
                r.parabolic.h1 == 1,
                format!("h1(p+) = {} (n - 2 = 1)", r.parabolic.h1),
            );
            c.expect(
                r.adjoint.h1 == 2,
                format!("h1(sl3 Ad rho+) = {} (n - 1 = 2)", r.adjoint.h1),
            );
            Ok(())
        },
    ));

    checks.push(record(
        "sl3-coordinates",
        "SL3 meridian trace coordinates",
        |c| {
            let tt = f.from_frac(2, 3);
            let fixed = trace_coordinates(&tt, &tt)?;
            c.expect(
                fixed.trace_m.is_zero() && fixed.trace_m_inv.is_zero(),
                "(2/3, 2/3) has traces (0, 0)",
            );
            let origin = trace_coordinates(&f.zero(), &f.zero())?;
            c.expect(
                origin.trace_m == f.from_int(2) && origin.trace_m_inv == f.from_int(2),
                "(0, 0) has traces (2, 2)",
            );
            c.expect(
                order3_symmetry(&tt, &tt) == (tt.clone(), tt.clone()),
                "(2/3, 2/3) is fixed by the symmetry",
            );
            let w = root(f, 3);
            for (s, t) in [(f.one(), f.from_int(3)), (root(f, 4), f.from_frac(-1, 2))] {
                let p = trace_coordinates(&s, &t)?;
                let (s2, t2) = order3_symmetry(&s, &t);
                let q = trace_coordinates(&s2, &t2)?;
                let ok =
                    q.trace_m == &(&w * &w) * &p.trace_m && q.trace_m_inv == &w * &p.trace_m_inv;
                c.expect(
                    ok,
                    format!("({s}, {t}) -> ({s2}, {t2}) multiplies traces by (w^2, w)"),
                );
                let (s3, t3) = order3_symmetry(&s2, &t2);
                c.expect(
                    order3_symmetry(&s3, &t3) == (s.clone(), t.clone()),
                    "symmetry has order three",
                );
                c.expect(
                    coordinates_from_traces(&p.trace_m, &p.trace_m_inv)? == (s, t),
                    "g inverts the trace map",
                );
            }
            Ok(())
        },
    ));

    checks.push(record(
        "sym-square-diagonal",
        "symmetric squares land on s = t",
        |c| {
            for s in irreducible_parameters(f) {
                let r = sym_square(&alpha_s(&s)?)?;
                let m = meridian();
                let (tm, tmi) = (r.word_image(&m).trace()?, r.word_image(&m.inv()).trace()?);
                let (u, v) = coordinates_from_traces(&tm, &tmi)?;
                c.expect(
                    u == v,
                    format!("Sym2(alpha_s), s = {s}: coordinates ({u}, {v})"),
                );
            }
            Ok(())
        },
    ));

    checks.push(record(
        "sl2-involution",
        "negating x and the parameter 2i - s",
        |c| {
            for s in [f.one(), f.zero(), f.from_int(3)] {
                let r = sl2_involution_check(&s, &z)?;
                c.expect(r.pass(), format!("s = {s}: {r:?}"));
            }
            Ok(())
        },
    ));

    checks.push(record(
        "non-semisimple-duality-failure",
        "reducible non-semisimple SL2 example",
        |c| {
            let e = non_semisimple_example(&z)?;
            c.expect(e.non_abelian, "rho(x) rho(y) != rho(y) rho(x)");
            c.expect(
                e.duality_fails,
                format!(
                    "Delta0(1/t) = {} vs Delta0 of dual = {}",
                    e.delta0_rho_inverted, e.delta0_dual
                ),
            );
            let lambda_inv = z.inv()?;
            let expected = LaurentPoly::t(f).checked_sub(&LaurentPoly::constant(z.clone()))?;
            c.expect(
                e.delta0_rho == expected,
                format!(
                    "Delta0 = {} (quotient line carries lambda^-phi)",
                    e.delta0_rho
                ),
            );
            let literal = LaurentPoly::t(f).checked_sub(&LaurentPoly::constant(lambda_inv))?;
            c.evidence.push(format!(
                "note: Delta0 is associated to t - lambda^-1: {}",
                e.delta0_rho.is_associate(&literal)
            ));
            Ok(())
        },
    ));

    checks.push(record(
        "duality-battery",
        "Delta_i(t) of a x b* against b x a* at 1/t",
        |c| {
            for (s, s2) in duality_pairs(f) {
                let r = duality_check(&alpha_s(&s)?, &alpha_s(&s2)?)?;
                c.expect(
                    r.pass() && r.hypothesis_violation.is_none(),
                    format!("(alpha_{s}, alpha_{s2}): Delta1+ = {:?}", r.delta1_plus),
                );
            }
            Ok(())
        },
    ));

    checks.push(record(
        "tangent-dimension",
        "dim Z1 of sl3 Ad rho_lambda",
        |c| {
            for lambda in [z.clone(), f.from_int(2)] {
                let (lhs, rhs) = tangent_dimension_identity(&a1, &one, &lambda)?;
                c.expect(lhs == rhs, format!("lambda = {lambda}: {lhs} = {rhs}"));
            }
            Ok(())
        },
    ));

    Ok(SuiteReport { checks })
}
