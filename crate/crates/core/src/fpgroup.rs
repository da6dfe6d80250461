//! Finitely presented groups, free-group words, the abelianization and Fox
//! free differential calculus.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclofield::CycField;
use crate::error::{Error, Result};
use crate::laurentlin::Mat;

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn gen(j: usize) -> Word {
        Word(vec![Letter { gen: j, inv: false }])
    }

    /// `x_j^e`.
    pub fn power_of_gen(j: usize, e: i64) -> Word {
        let l = Letter { gen: j, inv: e < 0 };
        Word(vec![l; e.unsigned_abs() as usize])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// The first `k` letters.
    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    /// Exponent sum of each of the `gens` generators.
    pub fn exponent_sums(&self, gens: usize) -> Vec<i64> {
        let mut v = vec![0; gens];
        for l in &self.0 {
            v[l.gen] += l.sign();
        }
        v
    }

    /// Value of the homomorphism to Z determined by `phi` on generators.
    pub fn phi(&self, phi: &[i64]) -> i64 {
        self.0.iter().map(|l| l.sign() * phi[l.gen]).sum()
    }

    /// The cyclic reduction of the word.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = &self.0[..];
        while s.len() >= 2 && s[0] == s[s.len() - 1].inverse() {
            s = &s[1..s.len() - 1];
        }
        Word(s.to_vec())
    }

    /// True when the word is conjugate to `u^k` for some word `u` and `k ≥ 2`.
    pub fn is_proper_power(&self) -> bool {
        let w = self.cyclically_reduced();
        let n = w.len();
        (2..=n).filter(|k| n.is_multiple_of(*k)).any(|k| {
            let m = n / k;
            (0..n).all(|i| w.0[i] == w.0[i % m])
        })
    }
}

/// A finite integer combination of reduced words, i.e. an element of Z[F].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupRingElt(BTreeMap<Word, i64>);

impl GroupRingElt {
    pub fn zero() -> Self {
        GroupRingElt(BTreeMap::new())
    }

    pub fn from_word(w: Word, c: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.0.entry(w).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.0.retain(|_, v| *v != 0);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.0.iter().map(|(w, c)| (w, *c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// The augmentation `Σ n_w`.
    pub fn augmentation(&self) -> i64 {
        self.0.values().sum()
    }
}

/// The Fox derivative `∂w/∂x_j` in Z[F].
pub fn fox_derivative(w: &Word, j: usize) -> GroupRingElt {
    let mut out = GroupRingElt::zero();
    for (i, l) in w.letters().iter().enumerate() {
        if l.gen != j {
            continue;
        }
        if l.inv {
            out.add_term(w.prefix(i + 1), -1);
        } else {
            out.add_term(w.prefix(i), 1);
        }
    }
    out
}

/// A finite presentation, optionally carrying a meridian and a declared φ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub gens: Vec<String>,
    pub relators: Vec<Word>,
    pub meridian: Option<Word>,
    pub declared_phi: Option<Vec<i64>>,
}

impl Presentation {
    pub fn new(name: &str, gens: &[&str], relators: Vec<Word>) -> Result<Presentation> {
        let p = Presentation {
            name: name.to_string(),
            gens: gens.iter().map(|s| s.to_string()).collect(),
            relators,
            meridian: None,
            declared_phi: None,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let g = self.gens.len();
        let bad = |w: &Word| w.letters().iter().any(|l| l.gen >= g);
        if self.relators.iter().any(bad) || self.meridian.as_ref().is_some_and(bad) {
            return Err(Error::BadParams(
                "word references an unknown generator".into(),
            ));
        }
        if let Some(phi) = &self.declared_phi {
            if phi.len() != g {
                return Err(Error::BadParams(format!(
                    "phi has {} entries for {g} generators",
                    phi.len()
                )));
            }
            if let Some(i) = self.relators.iter().position(|r| r.phi(phi) != 0) {
                return Err(Error::BadParams(format!(
                    "declared phi does not kill relator {i}"
                )));
            }
        }
        Ok(())
    }

    pub fn with_meridian(mut self, m: Word) -> Result<Self> {
        self.meridian = Some(m);
        self.validate()?;
        Ok(self)
    }

    pub fn with_phi(mut self, phi: Vec<i64>) -> Result<Self> {
        self.declared_phi = Some(phi);
        self.validate()?;
        Ok(self)
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn num_rels(&self) -> usize {
        self.relators.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    /// The abelianization morphism φ as its values on generators.
    ///
    /// φ is the primitive integer generator of the kernel of the exponent-sum
    /// matrix, with the first nonzero entry positive. A declared φ is checked
    /// against it (either sign is accepted). A declared meridian must have φ = 1.
    pub fn abelianization(&self) -> Result<Vec<i64>> {
        let g = self.num_gens();
        let q = CycField::new(1)?;
        let rows: Vec<Vec<_>> = self
            .relators
            .iter()
            .map(|r| {
                r.exponent_sums(g)
                    .into_iter()
                    .map(|e| q.from_int(e))
                    .collect()
            })
            .collect();
        let kernel = if rows.is_empty() {
            Mat::zeros(&q, 0, g).kernel_basis()
        } else {
            Mat::from_rows(&q, rows)?.kernel_basis()
        };
        if kernel.len() != 1 {
            return Err(Error::NotInfiniteCyclicAbelianization {
                rank: g - kernel.len(),
                gens: g,
            });
        }
        let v: Vec<_> = kernel[0].iter().map(|e| e.coords()[0].clone()).collect();
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if ints
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
        {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let mut phi = Vec::with_capacity(g);
        for x in &ints {
            let y = (x / &gcd) * &sign;
            phi.push(
                y.to_i64()
                    .ok_or_else(|| Error::BadParams("phi value overflows".into()))?,
            );
        }
        if let Some(decl) = &self.declared_phi {
            let neg: Vec<i64> = phi.iter().map(|x| -x).collect();
            if decl != &phi && decl != &neg {
                return Err(Error::BadParams(format!(
                    "declared phi {decl:?} is not a generator of Hom(G, Z) (expected {phi:?})"
                )));
            }
            phi = decl.clone();
        }
        if let Some(m) = &self.meridian {
            let v = m.phi(&phi);
            if v != 1 {
                return Err(Error::MeridianMismatch(v));
            }
        }
        Ok(phi)
    }

    /// Lyndon's criterion: a one-relator presentation whose relator is not a
    /// proper power has an aspherical presentation complex.
    pub fn is_aspherical(&self) -> bool {
        self.relators.len() <= 1
            && self
                .relators
                .iter()
                .all(|r| !r.cyclically_reduced().is_empty() && !r.is_proper_power())
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let ls = w.letters();
        let mut i = 0;
        while i < ls.len() {
            let mut j = i;
            while j < ls.len() && ls[j] == ls[i] {
                j += 1;
            }
            let e = (j - i) as i64 * ls[i].sign();
            let name = &self.gens[ls[i].gen];
            parts.push(if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            });
            i = j;
        }
        parts.join("*")
    }

    /// Parses a word such as `x^2*y^-3` or `x y x^-1`; `1` is the identity.
    pub fn parse_word(&self, text: &str, line: usize) -> Result<Word> {
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        let mut letters = Vec::new();
        let skip_ws = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };
        loop {
            while i < chars.len() && (chars[i].is_whitespace() || chars[i] == '*') {
                i += 1;
            }
            if i >= chars.len() {
                break;
            }
            if chars[i] == '1' {
                i += 1;
                continue;
            }
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if start == i {
                return Err(Error::parse(
                    line,
                    format!("unexpected '{}' in word", chars[i]),
                ));
            }
            let name: String = chars[start..i].iter().collect();
            let gen = self
                .gen_index(&name)
                .ok_or_else(|| Error::parse(line, format!("unknown generator '{name}'")))?;
            let mut exp = 1i64;
            let save = i;
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                skip_ws(&mut i);
                let mut neg = false;
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    neg = chars[i] == '-';
                    i += 1;
                }
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(Error::parse(line, "expected integer exponent"));
                }
                let s: String = chars[ds..i].iter().collect();
                exp = s
                    .parse()
                    .map_err(|_| Error::parse(line, "exponent too large"))?;
                if neg {
                    exp = -exp;
                }
            } else {
                i = save;
            }
            letters.extend(Word::power_of_gen(gen, exp).0);
        }
        Ok(Word::from_letters(letters))
    }

    /// Parses the line-oriented presentation format (`group`, `gens`, `rel`,
    /// `meridian`, `phi`; `#` starts a comment).
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut p = Presentation {
            name: String::new(),
            gens: Vec::new(),
            relators: Vec::new(),
            meridian: None,
            declared_phi: None,
        };
        let mut have_gens = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = content
                .split_once(char::is_whitespace)
                .unwrap_or((content, ""));
            let rest = rest.trim();
            match key {
                "group" => p.name = rest.to_string(),
                "gens" => {
                    if have_gens {
                        return Err(Error::parse(line, "duplicate gens line"));
                    }
                    p.gens = rest.split_whitespace().map(str::to_string).collect();
                    if p.gens.is_empty() {
                        return Err(Error::parse(line, "gens line lists no generators"));
                    }
                    let mut sorted = p.gens.clone();
                    sorted.sort();
                    sorted.dedup();
                    if sorted.len() != p.gens.len() {
                        return Err(Error::parse(line, "duplicate generator name"));
                    }
                    if p.gens
                        .iter()
                        .any(|g| !g.chars().all(|c| c.is_alphanumeric() || c == '_') || g == "1")
                    {
                        return Err(Error::parse(line, "invalid generator name"));
                    }
                    have_gens = true;
                }
                "rel" | "meridian" => {
                    if !have_gens {
                        return Err(Error::parse(line, "gens must precede words"));
                    }
                    let w = p.parse_word(rest, line)?;
                    if key == "rel" {
                        p.relators.push(w);
                    } else {
                        p.meridian = Some(w);
                    }
                }
                "phi" => {
                    let vals = rest
                        .split_whitespace()
                        .map(|s| {
                            s.parse::<i64>()
                                .map_err(|_| Error::parse(line, format!("bad integer '{s}'")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    p.declared_phi = Some(vals);
                }
                other => return Err(Error::parse(line, format!("unknown keyword '{other}'"))),
            }
        }
        if !have_gens {
            return Err(Error::parse(0, "missing gens line"));
        }
        p.validate().map_err(|e| Error::parse(0, e.to_string()))?;
        Ok(p)
    }

    /// Serializes to the same line format accepted by [`Presentation::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("group {}\ngens {}\n", self.name, self.gens.join(" "));
        for r in &self.relators {
            s += &format!("rel {}\n", self.word_to_string(r));
        }
        if let Some(m) = &self.meridian {
            s += &format!("meridian {}\n", self.word_to_string(m));
        }
        if let Some(phi) = &self.declared_phi {
            let v: Vec<String> = phi.iter().map(ToString::to_string).collect();
            s += &format!("phi {}\n", v.join(" "));
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| self.word_to_string(r))
            .collect();
        write!(f, "<{} | {}>", self.gens.join(", "), rels.join(", "))
    }
}

/// The torus knot group `⟨x, y | x^p y^-q⟩` with a meridian `x^u y^v`, where
/// `u·q + v·p = 1`.
pub fn torus_knot(p: i64, q: i64) -> Result<Presentation> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::BadParams(format!(
            "torus knot needs coprime p, q >= 2 (got {p}, {q})"
        )));
    }
    let ext = q.extended_gcd(&p);
    let (u, v) = (ext.x, ext.y);
    let x = Word::power_of_gen(0, p);
    let y = Word::power_of_gen(1, -q);
    let meridian = Word::power_of_gen(0, u).mul(&Word::power_of_gen(1, v));
    Presentation::new(&format!("T({p},{q})"), &["x", "y"], vec![x.mul(&y)])?.with_meridian(meridian)
}

/// The trefoil group `⟨x, y | x² = y³⟩` with meridian `x y⁻¹`.
pub fn trefoil() -> Presentation {
    let mut p = torus_knot(2, 3).expect("valid parameters");
    p.name = "trefoil".to_string();
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(p: &Presentation, s: &str) -> Word {
        p.parse_word(s, 0).unwrap()
    }

    #[test]
    fn word_arithmetic() {
        let p = trefoil();
        assert!(w(&p, "x").mul(&w(&p, "x^-1")).is_empty());
        assert_eq!(w(&p, "x^2*y^-3").inv(), w(&p, "y^3 x^-2"));
        assert_eq!(w(&p, "x*y^-1").mul(&w(&p, "y")), w(&p, "x"));
        assert_eq!(p.word_to_string(&w(&p, "y^3 x^-2")), "y^3*x^-2");
        assert_eq!(p.word_to_string(&Word::identity()), "1");
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(trefoil().abelianization().unwrap(), vec![3, 2]);
        let z = Presentation::new("Z", &["x"], vec![]).unwrap();
        assert_eq!(z.abelianization().unwrap(), vec![1]);
        assert_eq!(
            torus_knot(5, 2).unwrap().abelianization().unwrap(),
            vec![2, 5]
        );
        let free2 = Presentation::new("F2", &["a", "b"], vec![]).unwrap();
        assert_eq!(
            free2.abelianization(),
            Err(Error::NotInfiniteCyclicAbelianization { rank: 0, gens: 2 })
        );
    }

    #[test]
    fn meridians_and_declared_phi() {
        let t = trefoil();
        assert_eq!(t.meridian, Some(w(&t, "x y^-1")));
        for (p, q) in [(2, 3), (2, 5), (3, 4), (5, 2), (3, 7)] {
            let k = torus_knot(p, q).unwrap();
            let phi = k.abelianization().unwrap();
            assert_eq!(k.meridian.as_ref().unwrap().phi(&phi), 1);
        }
        let bad = trefoil().with_meridian(Word::gen(0)).unwrap();
        assert_eq!(bad.abelianization(), Err(Error::MeridianMismatch(3)));
        let decl = Presentation::new("t", &["x", "y"], trefoil().relators)
            .unwrap()
            .with_phi(vec![-3, -2])
            .unwrap();
        assert_eq!(decl.abelianization().unwrap(), vec![-3, -2]);
        assert!(Presentation::new("t", &["x", "y"], trefoil().relators)
            .unwrap()
            .with_phi(vec![1, 1])
            .is_err());
        assert!(torus_knot(2, 4).is_err());
    }

    #[test]
    fn fox_examples() {
        let p = trefoil();
        let r = &p.relators[0];
        let dx = fox_derivative(r, 0);
        let expected = GroupRingElt::from_word(Word::identity(), 1)
            .add(&GroupRingElt::from_word(w(&p, "x"), 1));
        assert_eq!(dx, expected);
        let dy = fox_derivative(r, 1);
        let mut exp = GroupRingElt::zero();
        for s in ["x^2 y^-1", "x^2 y^-2", "x^2 y^-3"] {
            exp.add_term(w(&p, s), -1);
        }
        assert_eq!(dy, exp);
        assert!(fox_derivative(&Word::identity(), 0).is_zero());
    }

    #[test]
    fn proper_powers() {
        let p = Presentation::new("F", &["x", "y"], vec![]).unwrap();
        assert!(!trefoil().relators[0].is_proper_power());
        assert!(w(&p, "x y x y").is_proper_power());
        assert!(w(&p, "y^-1 x y x y^2").is_proper_power());
        assert!(!w(&p, "x y x^-1 y^-1").is_proper_power());
        assert!(trefoil().is_aspherical());
    }

    #[test]
    fn parse_round_trip() {
        let text = "# trefoil\ngroup trefoil\ngens x y\nrel x^2*y^-3\nmeridian x y^-1\nphi 3 2\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.relators, trefoil().relators);
        assert_eq!(p.abelianization().unwrap(), vec![3, 2]);
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
        assert!(matches!(
            Presentation::parse("gens x\nrel y"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Presentation::parse("rel x"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Presentation::parse("gens x\nfoo"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Presentation::parse("gens x y\nrel x^2*y^-3\nphi 1 1").is_err());
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..14)
            .prop_map(|v| Word::from_letters(v.into_iter().map(|(gen, inv)| Letter { gen, inv })))
    }

    proptest! {
        #[test]
        fn fox_fundamental_identity(w in arb_word()) {
            let mut lhs = GroupRingElt::zero();
            for j in 0..3 {
                let xj = GroupRingElt::from_word(Word::gen(j), 1).sub(&GroupRingElt::from_word(Word::identity(), 1));
                lhs = lhs.add(&fox_derivative(&w, j).mul(&xj));
            }
            let rhs = GroupRingElt::from_word(w.clone(), 1).sub(&GroupRingElt::from_word(Word::identity(), 1));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn fox_of_w_times_inverse_vanishes(w in arb_word()) {
            let e = w.mul(&w.inv());
            for j in 0..3 {
                prop_assert!(fox_derivative(&e, j).is_zero());
            }
        }
    }
}
