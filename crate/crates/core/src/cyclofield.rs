//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^(φ(N)-1)` and are always
//! reduced modulo the cyclotomic polynomial Φ_N, so equality of elements is
//! equality of coordinate vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr::{parse_expr, ExprContext};

type Q = BigRational;

fn trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b` (both trimmed, ascending).
fn poly_divmod(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Q::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &c * y;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Returns Φ_N with ascending rational coefficients.
///
/// Computed as `x^N - 1` divided exactly by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigRational> {
    assert!(n >= 1, "conductor must be positive");
    let mut num = vec![Q::zero(); n as usize + 1];
    num[0] = -Q::one();
    num[n as usize] = Q::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = poly_divmod(&num, &cyclotomic_polynomial(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

#[derive(Debug)]
struct FieldData {
    n: u32,
    degree: usize,
    modulus: Vec<Q>,
    /// `reduction[k]` holds the coordinates of ζ^k for `k < 2·degree - 1`.
    reduction: Vec<Vec<Q>>,
}

/// The field Q(ζ_N). Cheap to clone; two handles with the same conductor are
/// the same field.
#[derive(Clone, Debug)]
pub struct CycField(Arc<FieldData>);

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.0.n == other.0.n
    }
}

impl Eq for CycField {}

impl CycField {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParams("conductor must be at least 1".into()));
        }
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.len() - 1;
        let mut reduction = Vec::with_capacity(2 * degree);
        for k in 0..(2 * degree).max(1) {
            let mut mono = vec![Q::zero(); k + 1];
            mono[k] = Q::one();
            let (_, mut r) = poly_divmod(&mono, &modulus);
            r.resize(degree, Q::zero());
            reduction.push(r);
        }
        Ok(CycField(Arc::new(FieldData {
            n,
            degree,
            modulus,
            reduction,
        })))
    }

    pub fn conductor(&self) -> u32 {
        self.0.n
    }

    /// Degree of the field over Q, i.e. Euler's φ(N).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.0.modulus
    }

    fn elt(&self, coords: Vec<Q>) -> CycElt {
        CycElt {
            field: self.clone(),
            coords,
        }
    }

    pub fn zero(&self) -> CycElt {
        self.elt(vec![Q::zero(); self.degree()])
    }

    pub fn one(&self) -> CycElt {
        self.from_rational(Q::one())
    }

    pub fn from_rational(&self, q: BigRational) -> CycElt {
        let mut c = vec![Q::zero(); self.degree()];
        c[0] = q;
        self.elt(c)
    }

    pub fn from_int(&self, k: i64) -> CycElt {
        self.from_rational(Q::from_integer(k.into()))
    }

    pub fn from_frac(&self, num: i64, den: i64) -> CycElt {
        self.from_rational(Q::new(num.into(), den.into()))
    }

    /// Builds an element from an arbitrary-length coefficient list in powers of ζ,
    /// reducing modulo Φ_N.
    pub fn from_poly(&self, coeffs: &[BigRational]) -> CycElt {
        let mut p = coeffs.to_vec();
        trim(&mut p);
        let (_, mut r) = poly_divmod(&p, self.modulus());
        r.resize(self.degree(), Q::zero());
        self.elt(r)
    }

    /// The canonical generator ζ = e^{2πi/N}.
    pub fn zeta(&self) -> CycElt {
        self.zeta_pow(1)
    }

    /// ζ^k for any integer k (taken modulo N).
    pub fn zeta_pow(&self, k: i64) -> CycElt {
        let n = self.0.n as i64;
        let k = k.rem_euclid(n) as usize;
        let mut mono = vec![Q::zero(); k + 1];
        mono[k] = Q::one();
        self.from_poly(&mono)
    }

    pub fn parse(&self, text: &str) -> Result<CycElt> {
        parse_expr(&FieldCtx(self), text, 0)
    }

    pub fn parse_at_line(&self, text: &str, line: usize) -> Result<CycElt> {
        parse_expr(&FieldCtx(self), text, line)
    }
}

/// An element of Q(ζ_N).
#[derive(Clone)]
pub struct CycElt {
    field: CycField,
    coords: Vec<Q>,
}

impl PartialEq for CycElt {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}

impl Eq for CycElt {}

impl std::hash::Hash for CycElt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.conductor().hash(state);
        self.coords.hash(state);
    }
}

impl CycElt {
    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn check(&self, other: &CycElt) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.conductor(),
                other.field.conductor(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CycElt) -> Result<CycElt> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(self.field.elt(coords))
    }

    pub fn checked_sub(&self, other: &CycElt) -> Result<CycElt> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(self.field.elt(coords))
    }

    pub fn checked_mul(&self, other: &CycElt) -> Result<CycElt> {
        self.check(other)?;
        let deg = self.field.degree();
        let table = &self.field.0.reduction;
        let mut prod = vec![Q::zero(); 2 * deg - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Q> = prod[..deg].to_vec();
        for (k, c) in prod.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&table[k]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        Ok(self.field.elt(out))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inv(&self) -> Result<CycElt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut a = self.coords.clone();
        trim(&mut a);
        // Invariant: r_i ≡ s_i · self (mod Φ_N).
        let (mut r0, mut r1) = (self.field.modulus().to_vec(), a);
        let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Φ_N is irreducible, so the last nonzero remainder is a constant.
        let c = r1[0].recip();
        let scaled: Vec<Q> = s1.iter().map(|x| x * &c).collect();
        Ok(self.field.from_poly(&scaled))
    }

    pub fn checked_div(&self, other: &CycElt) -> Result<CycElt> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<CycElt> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &BigRational) -> CycElt {
        self.field.elt(self.coords.iter().map(|c| c * q).collect())
    }

    /// Approximates the element as a complex number `(re, im)` by evaluating
    /// at e^{2πi/N}. Display only.
    pub fn embed_numeric(&self) -> (f64, f64) {
        let n = self.field.conductor() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coords.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// True when the printed form needs parentheses as a factor.
    pub(crate) fn needs_parens(&self) -> bool {
        self.coords.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

fn fmt_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..self.coords.len()).rev() {
            let c = &self.coords[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&a))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self, self.field.conductor())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycElt> for &CycElt {
            type Output = CycElt;
            fn $method(self, rhs: &CycElt) -> CycElt {
                self.$checked(rhs).expect("cyclotomic field mismatch")
            }
        }
        impl $tr<CycElt> for CycElt {
            type Output = CycElt;
            fn $method(self, rhs: CycElt) -> CycElt {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycElt> for CycElt {
            type Output = CycElt;
            fn $method(self, rhs: &CycElt) -> CycElt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycElt {
    type Output = CycElt;
    fn neg(self) -> CycElt {
        self.field.elt(self.coords.iter().map(|c| -c).collect())
    }
}

impl Neg for CycElt {
    type Output = CycElt;
    fn neg(self) -> CycElt {
        -&self
    }
}

struct FieldCtx<'a>(&'a CycField);

impl ExprContext for FieldCtx<'_> {
    type Value = CycElt;

    fn number(&self, n: BigInt) -> Result<CycElt> {
        Ok(self.0.from_rational(Q::from_integer(n)))
    }
    fn symbol(&self, name: &str) -> Result<CycElt> {
        match name {
            "z" => Ok(self.0.zeta()),
            other => Err(Error::parse(
                0,
                format!("unknown symbol '{other}' (only z allowed)"),
            )),
        }
    }
    fn add(&self, a: CycElt, b: CycElt) -> Result<CycElt> {
        a.checked_add(&b)
    }
    fn sub(&self, a: CycElt, b: CycElt) -> Result<CycElt> {
        a.checked_sub(&b)
    }
    fn mul(&self, a: CycElt, b: CycElt) -> Result<CycElt> {
        a.checked_mul(&b)
    }
    fn div(&self, a: CycElt, b: CycElt) -> Result<CycElt> {
        a.checked_div(&b)
    }
    fn neg(&self, a: CycElt) -> Result<CycElt> {
        Ok(-a)
    }
    fn pow(&self, a: CycElt, e: i64) -> Result<CycElt> {
        a.pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn f12() -> CycField {
        CycField::new(12).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials_small_cases() {
        assert_eq!(cyclotomic_polynomial(1), vec![q(-1), q(1)]);
        assert_eq!(cyclotomic_polynomial(2), vec![q(1), q(1)]);
        assert_eq!(cyclotomic_polynomial(4), vec![q(1), q(0), q(1)]);
        assert_eq!(
            cyclotomic_polynomial(12),
            vec![q(1), q(0), q(-1), q(0), q(1)]
        );
    }

    #[test]
    fn cyclotomic_polynomial_oracle() {
        // x^N - 1 is the product of Φ_d over all divisors d of N.
        for n in 1..=30u32 {
            let mut prod = vec![q(1)];
            for d in 1..=n {
                if n % d == 0 {
                    prod = poly_mul(&prod, &cyclotomic_polynomial(d));
                }
            }
            let mut expected = vec![q(0); n as usize + 1];
            expected[0] = q(-1);
            expected[n as usize] = q(1);
            assert_eq!(prod, expected, "N = {n}");
        }
    }

    #[test]
    fn zeta_cubed_is_i() {
        let f = f12();
        let i = f.zeta_pow(3);
        assert_eq!(&i * &i, f.from_int(-1));
    }

    #[test]
    fn inverse_of_zeta() {
        let f = f12();
        let z = f.zeta();
        let zinv = z.inv().unwrap();
        assert_eq!(zinv, f.zeta() - f.zeta_pow(3));
        assert!((&z * &zinv).is_one());
        assert_eq!(zinv, f.zeta_pow(11));
    }

    #[test]
    fn additive_identity_and_errors() {
        let f = f12();
        let a = f.parse("1/2*z^3 - z + 2").unwrap();
        assert_eq!(&a + &f.zero(), a);
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
        let g = CycField::new(5).unwrap();
        assert_eq!(a.checked_add(&g.one()), Err(Error::FieldMismatch(12, 5)));
        assert!(CycField::new(0).is_err());
    }

    #[test]
    fn primitivity() {
        for n in [1u32, 2, 3, 5, 7, 8, 12, 15] {
            let f = CycField::new(n).unwrap();
            let z = f.zeta();
            for k in 1..n as i64 {
                assert!(!z.pow(k).unwrap().is_one(), "N={n} k={k}");
            }
            assert!(z.pow(n as i64).unwrap().is_one());
        }
    }

    #[test]
    fn modulus_vanishes_at_zeta() {
        for n in [3u32, 4, 9, 12, 20] {
            let f = CycField::new(n).unwrap();
            let z = f.zeta();
            let mut acc = f.zero();
            for (k, c) in f.modulus().iter().enumerate() {
                acc = acc + z.pow(k as i64).unwrap().scale(c);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn embedding_values() {
        let f = f12();
        let (re, im) = f.zeta().embed_numeric();
        assert!((re - 0.8660254037844386).abs() < 1e-12 && (im - 0.5).abs() < 1e-12);
        assert_eq!(f.one().embed_numeric(), (1.0, 0.0));
        let (re, im) = f.zeta_pow(3).embed_numeric();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn display_round_trip() {
        let f = f12();
        for s in ["1/2*z^3 - z + 2", "-1", "z^3", "0", "-z^2 + 3/4*z"] {
            let e = f.parse(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(f.parse(&e.to_string()).unwrap(), e);
        }
        // z^4 reduces to z^2 - 1 in Q(ζ_12).
        assert_eq!(f.parse("z^4").unwrap().to_string(), "z^2 - 1");
    }

    fn arb_elt() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-9i64..10, 1i64..6), 4)
    }

    fn build(f: &CycField, v: &[(i64, i64)]) -> CycElt {
        let c: Vec<Q> = v.iter().map(|&(a, b)| Q::new(a.into(), b.into())).collect();
        f.from_poly(&c)
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_elt(), b in arb_elt(), c in arb_elt()) {
            let f = f12();
            let (a, b, c) = (build(&f, &a), build(&f, &b), build(&f, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn embedding_is_a_ring_homomorphism(a in arb_elt(), b in arb_elt()) {
            let f = f12();
            let (a, b) = (build(&f, &a), build(&f, &b));
            let (ar, ai) = a.embed_numeric();
            let (br, bi) = b.embed_numeric();
            let (pr, pi) = (&a * &b).embed_numeric();
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-9);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-9);
            let (sr, si) = (&a + &b).embed_numeric();
            prop_assert!((sr - ar - br).abs() < 1e-9 && (si - ai - bi).abs() < 1e-9);
        }
    }
}
