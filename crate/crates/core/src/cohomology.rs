//! Cochain complexes of the presentation 2-complex with coefficients in a
//! module, their cohomology dimensions, explicit cocycles and cup products.
//!
//! Cochains on generators are stacked column vectors of length `g·d`
//! (generator-major); 2-cochains are stacked vectors of length `r·d`.

use serde::Serialize;

use crate::cyclofield::CycElt;
use crate::error::{Error, Result};
use crate::fpgroup::{fox_derivative, Word};
use crate::laurentlin::Mat;
use crate::repspace::{Action, EchelonSpan, RepModule};

/// `C⁰ → C¹ → C²` for a module over a presented group.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub module: RepModule,
    /// `(g·d)×d`, block `j` is `M(x_j) − I`.
    pub delta0: Mat,
    /// `(r·d)×(g·d)`, block `(i, j)` is `M(∂r_i/∂x_j)`.
    pub delta1: Mat,
    /// True when the presentation 2-complex is aspherical, so `h2` is group cohomology.
    pub aspherical: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomDims {
    pub h0: usize,
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
    pub h2: usize,
    /// When false, `h2` only bounds the group cohomology from above.
    pub aspherical: bool,
}

/// A crossed morphism given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub values: Vec<Vec<CycElt>>,
}

impl Cocycle {
    pub fn from_stacked(v: &[CycElt], d: usize) -> Cocycle {
        Cocycle {
            values: v.chunks(d.max(1)).map(<[CycElt]>::to_vec).collect(),
        }
    }

    pub fn stacked(&self) -> Vec<CycElt> {
        self.values.concat()
    }
}

/// A basis of Z¹ and the chosen representatives of H¹.
#[derive(Clone, Debug)]
pub struct CocycleBasis {
    pub z1: Vec<Cocycle>,
    pub h1: Vec<Cocycle>,
}

pub fn build_complex(module: &RepModule) -> Result<CochainComplex> {
    let pres = module.presentation().clone();
    let f = module.field().clone();
    let d = module.dim();
    let (g, r) = (pres.num_gens(), pres.num_rels());
    let id = Mat::identity(&f, d);
    let mut delta0 = Mat::zeros(&f, g * d, d);
    for j in 0..g {
        delta0.set_block(j * d, 0, &(module.image(j) - &id));
    }
    let mut delta1 = Mat::zeros(&f, r * d, g * d);
    for (i, rel) in pres.relators.iter().enumerate() {
        for j in 0..g {
            delta1.set_block(i * d, j * d, &module.ring_image(&fox_derivative(rel, j)));
        }
    }
    if !(&delta1 * &delta0).is_zero() {
        return Err(Error::Internal("delta1 * delta0 is not zero".into()));
    }
    Ok(CochainComplex {
        module: module.clone(),
        delta0,
        delta1,
        aspherical: pres.is_aspherical(),
    })
}

impl CochainComplex {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn dims(&self) -> CohomDims {
        cohomology_dims(self)
    }
}

pub fn cohomology_dims(c: &CochainComplex) -> CohomDims {
    let d = c.dim();
    let b1 = c.delta0.rank();
    let r1 = c.delta1.rank();
    let z1 = c.delta1.cols() - r1;
    CohomDims {
        h0: d - b1,
        z1,
        b1,
        h1: z1 - b1,
        h2: c.delta1.rows() - r1,
        aspherical: c.aspherical,
    }
}

/// Z¹ as the reduced-echelon kernel basis of `delta1`, and H¹ representatives
/// chosen greedily from it as a complement of the column space of `delta0`.
pub fn cocycle_basis(c: &CochainComplex) -> CocycleBasis {
    let d = c.dim();
    let z1: Vec<Cocycle> = c
        .delta1
        .kernel_basis()
        .iter()
        .map(|v| Cocycle::from_stacked(v, d))
        .collect();
    let mut span = EchelonSpan::new();
    for j in 0..c.delta0.cols() {
        span.insert(&c.delta0.column(j));
    }
    let h1 = z1
        .iter()
        .filter(|z| span.insert(&z.stacked()))
        .cloned()
        .collect();
    CocycleBasis { z1, h1 }
}

/// The coboundary `γ ↦ γ·v − v`.
pub fn coboundary(c: &CochainComplex, v: &[CycElt]) -> Cocycle {
    Cocycle::from_stacked(&c.delta0.mul_vec(v), c.dim())
}

pub fn is_cocycle(c: &CochainComplex, z: &Cocycle) -> bool {
    c.delta1.mul_vec(&z.stacked()).iter().all(CycElt::is_zero)
}

pub fn is_coboundary(c: &CochainComplex, z: &Cocycle) -> bool {
    c.delta0.column_space_contains(&z.stacked())
}

/// Extends a crossed morphism from generators to a word:
/// `d(uv) = d(u) + u·d(v)` and `d(x⁻¹) = −x⁻¹·d(x)`.
pub fn cocycle_extend(module: &impl Action, c: &Cocycle, w: &Word) -> Vec<CycElt> {
    let f = module.field();
    let mut acc = vec![f.zero(); module.dim()];
    let mut prefix = Mat::identity(f, module.dim());
    for &l in w.letters() {
        let step = if l.inv {
            module
                .inverse_image(l.gen)
                .mul_vec(&c.values[l.gen])
                .iter()
                .map(|x| -x)
                .collect()
        } else {
            c.values[l.gen].clone()
        };
        for (a, s) in acc.iter_mut().zip(prefix.mul_vec(&step)) {
            *a = &*a + &s;
        }
        prefix = &prefix * module.letter_image(l);
    }
    acc
}

/// A bilinear map `A × B → C` between module coordinate spaces.
pub trait Pairing {
    /// `(dim A, dim B, dim C)`.
    fn dims(&self) -> (usize, usize, usize);
    fn apply(&self, a: &[CycElt], b: &[CycElt]) -> Vec<CycElt>;
}

/// `C × B → B`, scalar times vector.
pub struct ScalarPairing {
    pub dim: usize,
}

impl Pairing for ScalarPairing {
    fn dims(&self) -> (usize, usize, usize) {
        (1, self.dim, self.dim)
    }
    fn apply(&self, a: &[CycElt], b: &[CycElt]) -> Vec<CycElt> {
        b.iter().map(|x| &a[0] * x).collect()
    }
}

/// `M_{a×b} × M_{b×a} → C`, `(A, B) ↦ tr(AB)` on row-major vectorizations.
pub struct TracePairing {
    pub a: usize,
    pub b: usize,
}

impl Pairing for TracePairing {
    fn dims(&self) -> (usize, usize, usize) {
        (self.a * self.b, self.a * self.b, 1)
    }
    fn apply(&self, x: &[CycElt], y: &[CycElt]) -> Vec<CycElt> {
        let f = x[0].field();
        let mut acc = f.zero();
        for i in 0..self.a {
            for k in 0..self.b {
                acc = &acc + &(&x[i * self.b + k] * &y[k * self.a + i]);
            }
        }
        vec![acc]
    }
}

/// Transfers a bar 2-cochain `f` to the presentation complex.
///
/// On a relator `y₁…y_k` with prefixes `p_i` the value is
/// `Σ_i f(p_{i−1}, y_i) − Σ_{y_i inverse} p_{i−1}·f(y_i, y_i⁻¹)`.
/// The correction term accounts for inverse letters, whose cellular boundary
/// involves `x` rather than `x⁻¹`; it vanishes when no inverse letters occur.
pub fn transfer_two_cochain(
    target: &impl Action,
    f: impl Fn(&Word, &Word) -> Vec<CycElt>,
) -> Vec<CycElt> {
    let pres = target.presentation();
    let fld = target.field();
    let d = target.dim();
    let mut out = Vec::with_capacity(pres.num_rels() * d);
    for r in &pres.relators {
        let mut acc = vec![fld.zero(); d];
        for (i, &l) in r.letters().iter().enumerate() {
            let p = r.prefix(i);
            let y = Word::from_letters([l]);
            for (a, v) in acc.iter_mut().zip(f(&p, &y)) {
                *a = &*a + &v;
            }
            if l.inv {
                let corr = target.word_image(&p).mul_vec(&f(&y, &y.inv()));
                for (a, v) in acc.iter_mut().zip(corr) {
                    *a = &*a - &v;
                }
            }
        }
        out.extend(acc);
    }
    out
}

#[derive(Clone, Debug)]
pub struct CupProduct {
    /// Values on the relator cells, stacked.
    pub cochain: Vec<CycElt>,
    pub is_coboundary: bool,
}

/// `c1 ⌣ c2 (γ₁, γ₂) = pairing(c1(γ₁), γ₁·c2(γ₂))`, transferred to the
/// presentation complex and tested against the image of the target `delta1`.
pub fn cup_product(
    a: &CochainComplex,
    c1: &Cocycle,
    b: &CochainComplex,
    c2: &Cocycle,
    pairing: &impl Pairing,
    target: &CochainComplex,
) -> Result<CupProduct> {
    let (da, db, dc) = pairing.dims();
    if (da, db, dc) != (a.dim(), b.dim(), target.dim()) {
        return Err(Error::PairingMismatch(format!(
            "pairing {da}x{db}->{dc} against modules {}x{}->{}",
            a.dim(),
            b.dim(),
            target.dim()
        )));
    }
    let pa = a.module.presentation();
    if pa != b.module.presentation() || pa != target.module.presentation() {
        return Err(Error::PairingMismatch(
            "modules over different presentations".into(),
        ));
    }
    let f = |g1: &Word, g2: &Word| {
        let left = cocycle_extend(&a.module, c1, g1);
        let right = b
            .module
            .word_image(g1)
            .mul_vec(&cocycle_extend(&b.module, c2, g2));
        pairing.apply(&left, &right)
    };
    let cochain = transfer_two_cochain(&target.module, f);
    let is_coboundary = target.delta1.column_space_contains(&cochain);
    Ok(CupProduct {
        cochain,
        is_coboundary,
    })
}

/// Restriction of a module to an invariant subspace.
pub fn restrict_module(m: &RepModule, basis: &[Vec<CycElt>]) -> Result<RepModule> {
    m.restrict(basis)
}

#[cfg(test)]
mod tests {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};
    use std::sync::Arc;

    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::cyclofield::CycField;
    use crate::fpgroup::{trefoil, Letter, Presentation};
    use crate::repspace::{alpha_s, build_adjoint, build_tensor_dual, trivial, Representation};

    fn f12() -> CycField {
        CycField::new(12).unwrap()
    }

    fn alpha(k: i64) -> Representation {
        alpha_s(&f12().from_int(k)).unwrap()
    }

    fn m_plus() -> RepModule {
        let f = f12();
        let a = alpha(1);
        build_tensor_dual(&a, &trivial(a.presentation(), &f, 1), &f.zeta(), 3).unwrap()
    }

    #[test]
    fn trivial_coefficients() {
        let pres = Arc::new(trefoil());
        let c = build_complex(&trivial(&pres, &f12(), 1).to_module()).unwrap();
        assert!(c.delta0.is_zero());
        assert_eq!(c.delta1, Mat::from_ints(&f12(), &[&[2, -3]]));
        let d = c.dims();
        assert_eq!((d.h0, d.h1, d.h2, d.aspherical), (1, 1, 0, true));
        let basis = cocycle_basis(&c);
        assert_eq!(basis.h1.len(), 1);
        let v = basis.h1[0].stacked();
        // Proportional to φ = (3, 2).
        assert_eq!(&v[0] * &f12().from_int(2), &v[1] * &f12().from_int(3));
    }

    #[test]
    fn adjoint_alpha_one_is_regular() {
        let c = build_complex(&build_adjoint(&alpha(1))).unwrap();
        let d = c.dims();
        assert_eq!((d.h0, d.h1), (0, 1));
        assert_eq!(d.b1, 3);
    }

    #[test]
    fn m_plus_cohomology_and_cup_product() {
        let f = f12();
        let mp = build_complex(&m_plus()).unwrap();
        let d = mp.dims();
        assert_eq!((d.h0, d.h1, d.h2), (0, 1, 1));
        let dplus = cocycle_basis(&mp).h1;
        assert_eq!(dplus.len(), 1);
        let pres = mp.module.presentation().clone();
        let triv = build_complex(&trivial(&pres, &f, 1).to_module()).unwrap();
        let phi = Cocycle {
            values: vec![vec![f.from_int(3)], vec![f.from_int(2)]],
        };
        assert!(is_cocycle(&triv, &phi));
        let cup = cup_product(&triv, &phi, &mp, &dplus[0], &ScalarPairing { dim: 2 }, &mp).unwrap();
        assert!(!cup.is_coboundary);
        // A coboundary in the first slot gives a coboundary.
        let cb = coboundary(&mp, &[f.one(), f.zeta()]);
        let cup = cup_product(&mp, &cb, &triv, &phi, &ScalarPairingRev { dim: 2 }, &mp).unwrap();
        assert!(cup.is_coboundary);
        let zero = Cocycle {
            values: vec![vec![f.zero()]; 2],
        };
        let zero2 = Cocycle {
            values: vec![vec![f.zero(); 2]; 2],
        };
        let cup = cup_product(&triv, &zero, &mp, &zero2, &ScalarPairing { dim: 2 }, &mp).unwrap();
        assert!(cup.is_coboundary && cup.cochain.iter().all(CycElt::is_zero));
        let bad = cup_product(&triv, &zero, &mp, &zero2, &ScalarPairing { dim: 3 }, &mp);
        assert!(matches!(bad, Err(Error::PairingMismatch(_))));
    }

    /// `B × C → B`, vector times scalar.
    struct ScalarPairingRev {
        dim: usize,
    }

    impl Pairing for ScalarPairingRev {
        fn dims(&self) -> (usize, usize, usize) {
            (self.dim, 1, self.dim)
        }
        fn apply(&self, a: &[CycElt], b: &[CycElt]) -> Vec<CycElt> {
            a.iter().map(|x| x * &b[0]).collect()
        }
    }

    #[test]
    fn extension_examples() {
        let mp = build_complex(&m_plus()).unwrap();
        let z = &cocycle_basis(&mp).h1[0];
        assert!(cocycle_extend(&mp.module, z, &Word::identity())
            .iter()
            .all(CycElt::is_zero));
        for r in &mp.module.presentation().relators {
            assert!(cocycle_extend(&mp.module, z, r).iter().all(CycElt::is_zero));
        }
        let v = &z.values[0];
        let xv = mp.module.image(0).mul_vec(v);
        let expected: Vec<CycElt> = v.iter().zip(&xv).map(|(a, b)| a + b).collect();
        assert_eq!(
            cocycle_extend(&mp.module, z, &Word::power_of_gen(0, 2)),
            expected
        );
    }

    #[test]
    fn restriction_examples() {
        let m = m_plus();
        let f = f12();
        let e = |i: usize| {
            (0..2)
                .map(|k| if k == i { f.one() } else { f.zero() })
                .collect::<Vec<_>>()
        };
        let full = restrict_module(&m, &[e(0), e(1)]).unwrap();
        assert_eq!(full.images(), m.images());
        assert!(matches!(
            restrict_module(&m, &[e(0)]),
            Err(Error::NotInvariant { .. })
        ));
    }

    fn seeded_vector(w: &Word, d: usize, f: &CycField) -> Vec<CycElt> {
        let mut h = DefaultHasher::new();
        w.hash(&mut h);
        let mut rng = ChaCha8Rng::seed_from_u64(h.finish());
        (0..d)
            .map(|_| {
                f.zeta_pow(rng.gen_range(0..12))
                    .scale(&f.from_int(rng.gen_range(-3..4)).coords()[0])
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn transfer_consistency(seed in 0u64..1000, which in 0usize..3) {
            let f = f12();
            let module = match which {
                0 => m_plus(),
                1 => build_adjoint(&alpha(2)),
                _ => alpha(1).to_module(),
            };
            let d = module.dim();
            let pres = module.presentation().clone();
            let relators = pres.relators.clone();
            let b = |w: &Word| {
                if w.is_empty() || relators.contains(w) {
                    vec![f.zero(); d]
                } else {
                    let mut v = seeded_vector(w, d, &f);
                    v[0] = &v[0] + &f.from_int(seed as i64);
                    v
                }
            };
            let delta_b = |g: &Word, h: &Word| {
                let gh = g.mul(h);
                let gb = module.word_image(g).mul_vec(&b(h));
                gb.iter().zip(b(&gh)).zip(b(g)).map(|((x, y), z)| &(x - &y) + &z).collect::<Vec<_>>()
            };
            let transferred = transfer_two_cochain(&module, delta_b);
            let c = build_complex(&module).unwrap();
            let gens: Vec<CycElt> = (0..pres.num_gens()).flat_map(|j| b(&Word::gen(j))).collect();
            prop_assert_eq!(transferred, c.delta1.mul_vec(&gens));
        }

        #[test]
        fn extension_is_a_crossed_morphism(
            u in prop::collection::vec((0usize..2, any::<bool>()), 0..6),
            v in prop::collection::vec((0usize..2, any::<bool>()), 0..6),
            k in 0usize..3,
        ) {
            let module = build_adjoint(&alpha(1));
            let c = build_complex(&module).unwrap();
            let z = &cocycle_basis(&c).z1[k];
            let word = |l: &[(usize, bool)]| Word::from_letters(l.iter().map(|&(gen, inv)| Letter { gen, inv }));
            let (u, v) = (word(&u), word(&v));
            let lhs = cocycle_extend(&module, z, &u.mul(&v));
            let du = cocycle_extend(&module, z, &u);
            let udv = module.word_image(&u).mul_vec(&cocycle_extend(&module, z, &v));
            let rhs: Vec<CycElt> = du.iter().zip(&udv).map(|(a, b)| a + b).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn non_aspherical_flag() {
        let w = Word::gen(0).mul(&Word::power_of_gen(1, -1)).pow(2);
        let p = Arc::new(Presentation::new("sq", &["x", "y"], vec![w]).unwrap());
        let c = build_complex(&trivial(&p, &f12(), 1).to_module()).unwrap();
        assert!(!c.aspherical);
    }
}
