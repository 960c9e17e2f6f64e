//! Characters of the pure symmetric automorphism group and the decision of
//! membership in its BNS invariant.
//!
//! Every defining relation is a commutator, so the abelianization is free on
//! the partial conjugations and any assignment of values to generators is a
//! well-defined character. Values are exact rationals throughout; a generator
//! is hyperbolic exactly when its value is nonzero.
//!
//! The decision: characters that are neither type I nor type II lie in `Σ`.
//! A type I character lies in the complement iff its hyperbolic generators
//! fit in a p-set, a type II character iff they fit in a δ-p-set. Complement
//! verdicts carry the family and the epimorphism onto a free product of two
//! free abelian groups through which the character factors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{AdmissibleFamily, FamilyKind, MaximalFamilies};
use crate::graph::Vertex;
use crate::pconj::{PartialConjugation, Presentation, PsaGroup, Relation};

/// Parses `"p/q"`, `"n"` or a JSON integer into an exact rational.
pub(crate) fn parse_rational(key: &str, value: &Value) -> Result<BigRational> {
    let bad = || Error::MalformedRational {
        key: key.to_owned(),
        value: value.to_string(),
    };
    match value {
        Value::String(s) => {
            let s = s.trim();
            if s.contains('/') {
                let (n, d) = s.split_once('/').ok_or_else(bad)?;
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            } else {
                Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
            }
        }
        Value::Number(n) => {
            let i = n
                .as_i64()
                .map(BigInt::from)
                .or_else(|| n.as_u64().map(BigInt::from))
                .ok_or_else(bad)?;
            Ok(BigRational::from_integer(i))
        }
        _ => Err(bad()),
    }
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A nonzero character, given by its value on every generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    values: Vec<BigRational>,
}

impl Character {
    /// Builds a character from `(generator, value)` pairs; missing generators
    /// read as zero.
    pub fn from_values(
        psa: &PsaGroup,
        values: impl IntoIterator<Item = (PartialConjugation, BigRational)>,
    ) -> Result<Self> {
        let mut out = vec![BigRational::zero(); psa.generator_count()];
        for (p, v) in values {
            out[psa.index_of(&p)?] = v;
        }
        Self::from_vec(out)
    }

    /// Values listed in canonical generator order.
    pub fn from_vec(values: Vec<BigRational>) -> Result<Self> {
        if values.iter().all(Zero::is_zero) {
            return Err(Error::ZeroCharacter);
        }
        Ok(Self { values })
    }

    pub fn from_integers(psa: &PsaGroup, values: &[(&str, i64)]) -> Result<Self> {
        let pairs = values
            .iter()
            .map(|&(id, v)| Ok((psa.parse_id(id)?, BigRational::from_integer(v.into()))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(psa, pairs)
    }

    /// Parses `{"<generator id>": "p/q" | integer, ...}`.
    pub fn parse(psa: &PsaGroup, text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Malformed {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Self::from_json(psa, &value)
    }

    pub fn from_json(psa: &PsaGroup, value: &Value) -> Result<Self> {
        let map = value.as_object().ok_or_else(|| Error::Malformed {
            location: "character".into(),
            message: "expected an object mapping generator ids to rationals".into(),
        })?;
        let pairs = map
            .iter()
            .map(|(k, v)| Ok((psa.parse_id(k)?, parse_rational(k, v)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(psa, pairs)
    }

    /// Every generator with its value as a `"p/q"` string, in canonical order.
    pub fn to_json(&self, psa: &PsaGroup) -> Value {
        let map: serde_json::Map<String, Value> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| (psa.id_of(i), Value::String(format_rational(v))))
            .collect();
        Value::Object(map)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, index: usize) -> &BigRational {
        &self.values[index]
    }

    pub fn value_of(&self, psa: &PsaGroup, p: &PartialConjugation) -> Result<&BigRational> {
        Ok(&self.values[psa.index_of(p)?])
    }

    /// `r·χ`; `r` must be nonzero.
    pub fn scaled(&self, r: &BigRational) -> Result<Self> {
        Self::from_vec(self.values.iter().map(|v| v * r).collect())
    }

    pub(crate) fn is_hyperbolic(&self, index: usize) -> bool {
        !self.values[index].is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeVerdict {
    TypeI,
    TypeII,
    Neither,
}

impl TypeVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeVerdict::TypeI => "I",
            TypeVerdict::TypeII => "II",
            TypeVerdict::Neither => "neither",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    InSigma,
    InComplement,
}

impl Membership {
    pub fn as_str(self) -> &'static str {
        match self {
            Membership::InSigma => "sigma",
            Membership::InComplement => "complement",
        }
    }
}

/// Why a character lies in `Σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SigmaReason {
    NeitherType,
    TypeINoPSet,
    TypeIINoDeltaPSet,
}

impl SigmaReason {
    pub fn as_str(self) -> &'static str {
        match self {
            SigmaReason::NeitherType => "neither-type",
            SigmaReason::TypeINoPSet => "type-i-no-pset",
            SigmaReason::TypeIINoDeltaPSet => "type-ii-no-delta-pset",
        }
    }
}

/// Image of a generator in `G1 * G2`, with `G1 = ⟨u_1..⟩`, `G2 = ⟨v_1..⟩`
/// free abelian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Image {
    Identity,
    Basis {
        factor: u8,
        index: usize,
        inverse: bool,
    },
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Image::Identity => f.write_str("1"),
            Image::Basis {
                factor,
                index,
                inverse,
            } => {
                let letter = if *factor == 1 { 'u' } else { 'v' };
                write!(f, "{letter}{}", index + 1)?;
                if *inverse {
                    f.write_str("^-1")?;
                }
                Ok(())
            }
        }
    }
}

/// A word's image: trivial, inside one factor (nonzero exponent vector), or
/// a genuine free-product element.
#[derive(Clone, Debug, PartialEq, Eq)]
enum WordImage {
    Trivial,
    Factor(u8, BTreeMap<usize, i64>),
    Mixed,
}

impl WordImage {
    fn of(image: Image) -> Self {
        match image {
            Image::Identity => WordImage::Trivial,
            Image::Basis {
                factor,
                index,
                inverse,
            } => WordImage::Factor(factor, BTreeMap::from([(index, if inverse { -1 } else { 1 })])),
        }
    }

    fn mul(self, other: Self) -> Self {
        match (self, other) {
            (WordImage::Trivial, x) | (x, WordImage::Trivial) => x,
            (WordImage::Factor(f, mut a), WordImage::Factor(g, b)) if f == g => {
                for (k, e) in b {
                    *a.entry(k).or_insert(0) += e;
                }
                a.retain(|_, e| *e != 0);
                if a.is_empty() {
                    WordImage::Trivial
                } else {
                    WordImage::Factor(f, a)
                }
            }
            _ => WordImage::Mixed,
        }
    }

    /// Sufficient condition for `[x, y] = 1` in `G1 * G2`.
    fn commute(&self, other: &Self) -> bool {
        match (self, other) {
            (WordImage::Trivial, _) | (_, WordImage::Trivial) => true,
            (WordImage::Factor(f, _), WordImage::Factor(g, _)) => f == g,
            _ => false,
        }
    }
}

/// The generator images of the epimorphism `PΣ(A) → G1 * G2`, in canonical
/// generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpimorphismSketch {
    pub images: Vec<Image>,
}

impl EpimorphismSketch {
    /// Side 1 maps to `G1`, side 2 to `G2`. In a δ-p-set the two generators of
    /// each letter map to `u_k` and `u_k^{-1}` respectively.
    pub fn for_family(psa: &PsaGroup, family: &AdmissibleFamily) -> Self {
        let mut images = vec![Image::Identity; psa.generator_count()];
        for (factor, side) in [(1u8, &family.side1), (2u8, &family.side2)] {
            match family.kind {
                FamilyKind::PSet => {
                    for (index, p) in side.iter().enumerate() {
                        images[psa.index_of(p).unwrap()] = Image::Basis {
                            factor,
                            index,
                            inverse: false,
                        };
                    }
                }
                FamilyKind::DeltaPSet => {
                    let mut letters: Vec<Vertex> = side.iter().map(|p| p.letter).collect();
                    letters.dedup();
                    for p in side {
                        let index = letters.iter().position(|&l| l == p.letter).unwrap();
                        let inverse = side.iter().any(|q| q.letter == p.letter && q < p);
                        images[psa.index_of(p).unwrap()] = Image::Basis {
                            factor,
                            index,
                            inverse,
                        };
                    }
                }
            }
        }
        Self { images }
    }

    fn word(&self, psa: &PsaGroup, ps: &[&PartialConjugation]) -> WordImage {
        ps.iter().fold(WordImage::Trivial, |acc, p| {
            acc.mul(WordImage::of(self.images[psa.index_of(p).unwrap()]))
        })
    }

    /// Whether every defining relation maps to a relation of `G1 * G2`, in
    /// the syntactic sense: the two sides of each commutator are trivial or
    /// land in a common factor.
    pub fn respects(&self, psa: &PsaGroup, presentation: &Presentation) -> bool {
        presentation.relations.iter().all(|r| match r {
            Relation::Commutator(p, q) => self.word(psa, &[p]).commute(&self.word(psa, &[q])),
            Relation::Delta {
                letter,
                first,
                second,
                partner,
            } => {
                let pk = PartialConjugation {
                    letter: *letter,
                    domain: first.clone(),
                };
                let pl = PartialConjugation {
                    letter: *letter,
                    domain: second.clone(),
                };
                let qb = PartialConjugation {
                    letter: *partner,
                    domain: second.clone(),
                };
                self.word(psa, &[&pk, &pl]).commute(&self.word(psa, &[&qb]))
            }
        })
    }

    /// Whether `χ = ψ ∘ φ` for some character `ψ` of `G1 * G2`.
    pub fn factors(&self, character: &Character) -> bool {
        let mut psi: BTreeMap<(u8, usize), BigRational> = BTreeMap::new();
        for (i, image) in self.images.iter().enumerate() {
            let v = character.value(i);
            match *image {
                Image::Identity => {
                    if !v.is_zero() {
                        return false;
                    }
                }
                Image::Basis {
                    factor,
                    index,
                    inverse,
                } => {
                    let want = if inverse { -v } else { v.clone() };
                    match psi.get(&(factor, index)) {
                        Some(existing) if *existing != want => return false,
                        _ => {
                            psi.insert((factor, index), want);
                        }
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self, psa: &PsaGroup) -> Value {
        Value::Array(
            self.images
                .iter()
                .enumerate()
                .map(|(i, im)| json!({"pc": psa.id_of(i), "image": im.to_string()}))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementWitness {
    pub family: AdmissibleFamily,
    pub epimorphism: EpimorphismSketch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaVerdict {
    pub character_type: TypeVerdict,
    pub membership: Membership,
    pub witness: Option<ComplementWitness>,
    pub reason: Option<SigmaReason>,
}

impl SigmaVerdict {
    /// `{"type":..,"membership":..,"witness":{..}|null,"reason":..|null}`.
    pub fn to_json(&self, psa: &PsaGroup) -> Value {
        json!({
            "type": self.character_type.as_str(),
            "membership": self.membership.as_str(),
            "witness": self.witness.as_ref().map(|w| json!({
                "family": w.family.to_json(psa),
                "epimorphism": w.epimorphism.to_json(psa),
            })),
            "reason": self.reason.map(SigmaReason::as_str),
        })
    }
}

/// The hyperbolic generators `H = {p | χ(p) ≠ 0}`.
pub fn hyperbolic_set(psa: &PsaGroup, character: &Character) -> Vec<PartialConjugation> {
    (0..psa.generator_count())
        .filter(|&i| character.is_hyperbolic(i))
        .map(|i| psa.generator(i).clone())
        .collect()
}

/// `χ(ι_a)`: the sum of `χ` over the generators with acting letter `a`.
pub fn inner_value(psa: &PsaGroup, character: &Character, a: Vertex) -> Result<BigRational> {
    if psa.graph().is_central(a) {
        return Err(Error::CentralVertex(psa.graph().name(a).to_owned()));
    }
    Ok(psa
        .letter_indices(a)
        .iter()
        .fold(BigRational::zero(), |acc, &i| acc + character.value(i)))
}

pub fn classify_type(psa: &PsaGroup, character: &Character) -> TypeVerdict {
    let mut type_one = true;
    let mut type_two = true;
    for a in psa.graph().vertices() {
        let idx = psa.letter_indices(a);
        let hyperbolic = idx.iter().filter(|&&i| character.is_hyperbolic(i)).count();
        if hyperbolic > 1 {
            type_one = false;
        }
        let inner: BigRational = idx.iter().map(|&i| character.value(i)).sum();
        if !(hyperbolic == 0 || hyperbolic == 2) || !inner.is_zero() {
            type_two = false;
        }
    }
    match (type_one, type_two) {
        (true, false) => TypeVerdict::TypeI,
        (false, true) => TypeVerdict::TypeII,
        (false, false) => TypeVerdict::Neither,
        (true, true) => unreachable!("a nonzero character cannot be both type I and type II"),
    }
}

/// Dimension of the character sphere: one less than the number of generators.
pub fn sphere_dimension(psa: &PsaGroup) -> Result<usize> {
    psa.generator_count().checked_sub(1).ok_or(Error::NoSphere)
}

/// Decides `Σ` membership for many characters of one group, sharing the
/// maximal family lists.
#[derive(Clone, Debug)]
pub struct SigmaDecider {
    families: MaximalFamilies,
}

impl SigmaDecider {
    pub fn new(psa: &PsaGroup) -> Self {
        Self {
            families: MaximalFamilies::new(psa),
        }
    }

    pub fn families(&self) -> &MaximalFamilies {
        &self.families
    }

    pub fn membership(&self, psa: &PsaGroup, character: &Character) -> SigmaVerdict {
        let character_type = classify_type(psa, character);
        let h = hyperbolic_set(psa, character);
        let (found, miss) = match character_type {
            TypeVerdict::Neither => (None, SigmaReason::NeitherType),
            TypeVerdict::TypeI => (
                self.families
                    .extends_to_pset(psa, &h)
                    .expect("type I has at most one hyperbolic generator per letter"),
                SigmaReason::TypeINoPSet,
            ),
            TypeVerdict::TypeII => (
                self.families
                    .extends_to_delta_pset(psa, &h)
                    .expect("type II has zero or two hyperbolic generators per letter"),
                SigmaReason::TypeIINoDeltaPSet,
            ),
        };
        match found {
            Some(family) => SigmaVerdict {
                character_type,
                membership: Membership::InComplement,
                witness: Some(ComplementWitness {
                    family: family.clone(),
                    epimorphism: EpimorphismSketch::for_family(psa, family),
                }),
                reason: None,
            },
            None => SigmaVerdict {
                character_type,
                membership: Membership::InSigma,
                witness: None,
                reason: Some(miss),
            },
        }
    }
}

pub fn sigma_membership(psa: &PsaGroup, character: &Character) -> SigmaVerdict {
    SigmaDecider::new(psa).membership(psa, character)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimplicialGraph;

    fn example() -> PsaGroup {
        PsaGroup::new(
            SimplicialGraph::from_edges(
                &["a", "b", "c", "d", "e"],
                &[("a", "b"), ("b", "c"), ("c", "d"), ("c", "e")],
            )
            .unwrap(),
        )
    }

    fn item_two(g: &PsaGroup) -> Character {
        Character::from_integers(
            g,
            &[
                ("b:{d}", 1),
                ("b:{e}", -1),
                ("d:{a,b}", 2),
                ("d:{e}", -2),
                ("e:{a,b}", 3),
                ("e:{d}", -3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = example();
        let chi = Character::parse(&g, r#"{"a:{c,d,e}": "1"}"#).unwrap();
        assert_eq!(chi.values().iter().filter(|v| v.is_zero()).count(), 7);
        let chi = Character::parse(&g, r#"{"b:{d}":"1","b:{e}":"-1"}"#).unwrap();
        assert_eq!(classify_type(&g, &chi), TypeVerdict::TypeII);
        assert_eq!(Character::parse(&g, "{}"), Err(Error::ZeroCharacter));
        assert!(matches!(
            Character::parse(&g, r#"{"a:{c}": "1"}"#),
            Err(Error::UnknownGenerator(_))
        ));
        assert!(matches!(
            Character::parse(&g, r#"{"a:{c,d,e}": "1/0"}"#),
            Err(Error::MalformedRational { .. })
        ));
        assert!(matches!(
            Character::parse(&g, r#"{"a:{c,d,e}": "x"}"#),
            Err(Error::MalformedRational { .. })
        ));
        let frac = Character::parse(&g, r#"{"a:{c,d,e}": "-3/6", "c:{a}": 2}"#).unwrap();
        assert_eq!(format_rational(frac.value(0)), "-1/2");
        assert_eq!(Character::from_json(&g, &frac.to_json(&g)).unwrap(), frac);
    }

    #[test]
    fn hyperbolic_and_inner_values() {
        let g = example();
        let gr = g.graph();
        let single = Character::from_integers(&g, &[("a:{c,d,e}", 1)]).unwrap();
        assert_eq!(hyperbolic_set(&g, &single), vec![g.parse_id("a:{c,d,e}").unwrap()]);
        assert_eq!(inner_value(&g, &single, gr.vertex("a").unwrap()).unwrap(), BigRational::from_integer(1.into()));

        let two = item_two(&g);
        let h: Vec<String> = hyperbolic_set(&g, &two).iter().map(|p| g.id(p)).collect();
        assert_eq!(h, ["b:{d}", "b:{e}", "d:{a,b}", "d:{e}", "e:{a,b}", "e:{d}"]);
        assert!(inner_value(&g, &two, gr.vertex("b").unwrap()).unwrap().is_zero());

        let ones = Character::from_vec(vec![BigRational::from_integer(1.into()); 8]).unwrap();
        assert_eq!(hyperbolic_set(&g, &ones).len(), 8);
        assert_eq!(inner_value(&g, &ones, gr.vertex("d").unwrap()).unwrap(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn type_classification() {
        let g = example();
        let single = Character::from_integers(&g, &[("a:{c,d,e}", 1)]).unwrap();
        assert_eq!(classify_type(&g, &single), TypeVerdict::TypeI);
        assert_eq!(classify_type(&g, &item_two(&g)), TypeVerdict::TypeII);
        let ones = Character::from_vec(vec![BigRational::from_integer(1.into()); 8]).unwrap();
        assert_eq!(classify_type(&g, &ones), TypeVerdict::Neither);
    }

    #[test]
    fn membership_examples() {
        let g = example();
        let pres = g.presentation();

        let single = Character::from_integers(&g, &[("a:{c,d,e}", 1)]).unwrap();
        let v = sigma_membership(&g, &single);
        assert_eq!(v.membership, Membership::InComplement);
        let w = v.witness.unwrap();
        assert!(w.family.contains(&g.parse_id("a:{c,d,e}").unwrap()));
        assert!(w.epimorphism.respects(&g, &pres));
        assert!(w.epimorphism.factors(&single));

        let two = item_two(&g);
        let v = sigma_membership(&g, &two);
        assert_eq!((v.character_type, v.membership), (TypeVerdict::TypeII, Membership::InComplement));
        let w = v.witness.unwrap();
        assert_eq!(w.family.len(), 6);
        assert!(w.epimorphism.respects(&g, &pres));
        assert!(w.epimorphism.factors(&two));
        let json = sigma_membership(&g, &two).to_json(&g);
        assert_eq!(json["type"], "II");
        assert_eq!(json["membership"], "complement");
        assert_eq!(json["witness"]["epimorphism"][2]["image"], "u1^-1");

        let apart = Character::from_integers(&g, &[("a:{c,d,e}", 1), ("d:{e}", 1)]).unwrap();
        let v = sigma_membership(&g, &apart);
        assert_eq!(v.membership, Membership::InSigma);
        assert_eq!(v.reason, Some(SigmaReason::TypeINoPSet));
    }

    #[test]
    fn sphere_dimensions() {
        assert_eq!(sphere_dimension(&example()).unwrap(), 7);
        let p3 = PsaGroup::new(SimplicialGraph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap());
        assert_eq!(sphere_dimension(&p3).unwrap(), 1);
        let k3 = PsaGroup::new(
            SimplicialGraph::from_edges(&["p", "q", "r"], &[("p", "q"), ("q", "r"), ("p", "r")]).unwrap(),
        );
        assert_eq!(sphere_dimension(&k3), Err(Error::NoSphere));
    }

    #[test]
    fn sketch_detects_bad_maps() {
        let g = example();
        // Two commuting generators sent to different factors.
        let mut images = vec![Image::Identity; 8];
        images[0] = Image::Basis { factor: 1, index: 0, inverse: false };
        images[1] = Image::Basis { factor: 2, index: 0, inverse: false };
        let sketch = EpimorphismSketch { images };
        assert!(!sketch.respects(&g, &g.presentation()));
    }
}
