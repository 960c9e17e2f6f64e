//! p-sets and δ-p-sets: recognition, the explicit maximal p-set construction,
//! and enumeration of the inclusion-maximal families.
//!
//! Both kinds are sets `Q` of partial conjugations with a nontrivial split
//! `{Q1, Q2}` such that every cross pair `(π_{a,K}, π_{b,L})` satisfies a
//! condition:
//!
//! * p-set: `a ∈ L` and `b ∈ K`, with at most one generator per letter;
//! * δ-p-set: `a ∈ L` or `b ∈ K` or `K = L`, with zero or two generators per
//!   letter.
//!
//! Maximal families are enumerated as maximal bicliques of a compatibility
//! graph: on generators for p-sets, and on [`DeltaNode`]s (same-letter pairs)
//! for δ-p-sets.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::biclique::{complement_component, maximal_biclique_unions};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use crate::pconj::{PartialConjugation, PsaGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    PSet,
    DeltaPSet,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::PSet => "pset",
            FamilyKind::DeltaPSet => "delta",
        }
    }
}

/// An underlying set together with one admissible split. Sides are sorted and
/// `side1` holds the canonical minimum of the family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleFamily {
    pub kind: FamilyKind,
    pub side1: Vec<PartialConjugation>,
    pub side2: Vec<PartialConjugation>,
}

impl AdmissibleFamily {
    /// Canonicalizes the sides; does not check admissibility.
    pub fn new(
        kind: FamilyKind,
        side1: impl IntoIterator<Item = PartialConjugation>,
        side2: impl IntoIterator<Item = PartialConjugation>,
    ) -> Self {
        let mut s1: Vec<_> = side1.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut s2: Vec<_> = side2.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if s2.first() < s1.first() && !s2.is_empty() {
            std::mem::swap(&mut s1, &mut s2);
        }
        Self {
            kind,
            side1: s1,
            side2: s2,
        }
    }

    /// The underlying set in canonical order.
    pub fn members(&self) -> Vec<PartialConjugation> {
        let mut all: Vec<_> = self.side1.iter().chain(&self.side2).cloned().collect();
        all.sort();
        all
    }

    pub fn len(&self) -> usize {
        self.side1.len() + self.side2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: &PartialConjugation) -> bool {
        self.side1.contains(p) || self.side2.contains(p)
    }

    pub(crate) fn bits(&self, psa: &PsaGroup) -> BitSet {
        self.side1
            .iter()
            .chain(&self.side2)
            .map(|p| psa.index_of(p).expect("family members are generators"))
            .collect()
    }

    /// `{"kind":..,"side1":[ids],"side2":[ids]}`.
    pub fn to_json(&self, psa: &PsaGroup) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "side1": self.side1.iter().map(|p| psa.id(p)).collect::<Vec<_>>(),
            "side2": self.side2.iter().map(|p| psa.id(p)).collect::<Vec<_>>(),
        })
    }

    /// Parses the JSON form and checks that it describes an admissible family
    /// of the stated kind.
    pub fn from_json(psa: &PsaGroup, value: &Value) -> Result<Self> {
        let malformed = |message: &str| Error::Malformed {
            location: "family".into(),
            message: message.into(),
        };
        let kind = match value.get("kind").and_then(Value::as_str) {
            Some("pset") => FamilyKind::PSet,
            Some("delta") => FamilyKind::DeltaPSet,
            _ => return Err(malformed("`kind` must be \"pset\" or \"delta\"")),
        };
        let side = |key: &str| -> Result<Vec<PartialConjugation>> {
            value
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| malformed(&format!("`{key}` must be an array of generator ids")))?
                .iter()
                .map(|v| {
                    v.as_str()
                        .ok_or_else(|| malformed("generator ids must be strings"))
                        .and_then(|s| psa.parse_id(s))
                })
                .collect()
        };
        let (s1, s2) = (side("side1")?, side("side2")?);
        let ok = match kind {
            FamilyKind::PSet => is_pset(psa, &s1, &s2)?,
            FamilyKind::DeltaPSet => is_delta_pset(psa, &s1, &s2)?,
        };
        if !ok {
            return Err(malformed("the sides do not form an admissible family"));
        }
        Ok(Self::new(kind, s1, s2))
    }
}

/// Two partial conjugations with a common acting letter and distinct
/// domains; the building block of δ-p-sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaNode {
    pub letter: Vertex,
    pub domains: (VertexSet, VertexSet),
}

impl DeltaNode {
    pub fn generators(&self) -> [PartialConjugation; 2] {
        [
            PartialConjugation {
                letter: self.letter,
                domain: self.domains.0.clone(),
            },
            PartialConjugation {
                letter: self.letter,
                domain: self.domains.1.clone(),
            },
        ]
    }
}

fn dedup_sides(
    psa: &PsaGroup,
    side1: &[PartialConjugation],
    side2: &[PartialConjugation],
) -> Result<(BTreeSet<PartialConjugation>, BTreeSet<PartialConjugation>)> {
    for p in side1.iter().chain(side2) {
        psa.index_of(p)?;
    }
    Ok((side1.iter().cloned().collect(), side2.iter().cloned().collect()))
}

fn letter_counts<'a>(members: impl Iterator<Item = &'a PartialConjugation>) -> BTreeMap<Vertex, usize> {
    let mut counts = BTreeMap::new();
    for p in members {
        *counts.entry(p.letter).or_insert(0) += 1;
    }
    counts
}

/// Cross condition for p-sets: `a ∈ L` and `b ∈ K`.
pub(crate) fn pset_compatible(p: &PartialConjugation, q: &PartialConjugation) -> bool {
    q.domain.contains(p.letter) && p.domain.contains(q.letter)
}

/// Cross condition for δ-p-sets: `a ∈ L` or `b ∈ K` or `K = L`.
pub(crate) fn delta_compatible(p: &PartialConjugation, q: &PartialConjugation) -> bool {
    q.domain.contains(p.letter) || p.domain.contains(q.letter) || p.domain == q.domain
}

/// Whether `{side1, side2}` is an admissible split of a p-set.
pub fn is_pset(psa: &PsaGroup, side1: &[PartialConjugation], side2: &[PartialConjugation]) -> Result<bool> {
    let (s1, s2) = dedup_sides(psa, side1, side2)?;
    if s1.is_empty() || s2.is_empty() || !s1.is_disjoint(&s2) {
        return Ok(false);
    }
    if letter_counts(s1.iter().chain(&s2)).values().any(|&c| c > 1) {
        return Ok(false);
    }
    Ok(s1.iter().all(|p| s2.iter().all(|q| pset_compatible(p, q))))
}

/// Whether `{side1, side2}` is an admissible δ-split of a δ-p-set.
pub fn is_delta_pset(
    psa: &PsaGroup,
    side1: &[PartialConjugation],
    side2: &[PartialConjugation],
) -> Result<bool> {
    let (s1, s2) = dedup_sides(psa, side1, side2)?;
    if s1.is_empty() || s2.is_empty() || !s1.is_disjoint(&s2) {
        return Ok(false);
    }
    if letter_counts(s1.iter().chain(&s2)).values().any(|&c| c != 2) {
        return Ok(false);
    }
    let letters1: BTreeSet<Vertex> = s1.iter().map(|p| p.letter).collect();
    if s2.iter().any(|q| letters1.contains(&q.letter)) {
        return Ok(false);
    }
    Ok(s1.iter().all(|p| s2.iter().all(|q| delta_compatible(p, q))))
}

/// Whether `{p1, p2, q1, q2}` (letters `a, a, b, b`, `a ≠ b`) has all four
/// cross pairs non-commuting, equivalently whether it is a δ-p-set.
pub fn quadruple_is_delta(
    psa: &PsaGroup,
    p1: &PartialConjugation,
    p2: &PartialConjugation,
    q1: &PartialConjugation,
    q2: &PartialConjugation,
) -> Result<bool> {
    for p in [p1, p2, q1, q2] {
        psa.index_of(p)?;
    }
    let pre = |msg: &str| Err(Error::QuadruplePrecondition(msg.into()));
    if p1.letter != p2.letter || q1.letter != q2.letter {
        return pre("each pair must share an acting letter");
    }
    if p1.letter == q1.letter {
        return pre("the two pairs must have different acting letters");
    }
    if p1 == p2 || q1 == q2 {
        return pre("the four generators must be distinct");
    }
    for p in [p1, p2] {
        for q in [q1, q2] {
            if psa.commutes(p, q)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The explicit maximal p-set construction seeded at `seed = π_{a,K}`:
/// `Q2 = {π_{b,L_b} : b ∈ K}` with `L_b ∋ a`, and
/// `Q1 = {π_{a',K_{a'}} : a' ∈ ⋂ L_b}` with `K_{a'} ∋ min K`.
pub fn construct_maximal_pset(psa: &PsaGroup, seed: &PartialConjugation) -> Result<AdmissibleFamily> {
    psa.index_of(seed)?;
    let g = psa.graph();
    let everything = g.all_vertices();
    let component_with = |letter: Vertex, target: Vertex| -> Result<PartialConjugation> {
        let domain = g
            .component_containing(&everything.difference(&g.star(letter)), target)
            .ok_or_else(|| {
                Error::Inconsistent(format!(
                    "`{}` lies in the star of `{}`",
                    g.name(target),
                    g.name(letter)
                ))
            })?;
        Ok(PartialConjugation { letter, domain })
    };

    let mut side2 = Vec::new();
    let mut common = everything.clone();
    for b in seed.domain.iter() {
        let q = component_with(b, seed.letter)?;
        common = common.intersection(&q.domain);
        side2.push(q);
    }
    let anchor = seed
        .domain
        .iter()
        .next()
        .ok_or_else(|| Error::Inconsistent("empty domain".into()))?;
    let side1 = common
        .iter()
        .map(|a| component_with(a, anchor))
        .collect::<Result<Vec<_>>>()?;
    if !side1.contains(seed) || !is_pset(psa, &side1, &side2)? {
        return Err(Error::Inconsistent(format!(
            "construction seeded at `{}` did not produce a p-set containing the seed",
            psa.id(seed)
        )));
    }
    Ok(AdmissibleFamily::new(FamilyKind::PSet, side1, side2))
}

fn family_from_bits(
    psa: &PsaGroup,
    kind: FamilyKind,
    side1: &BitSet,
    side2: &BitSet,
) -> AdmissibleFamily {
    AdmissibleFamily::new(
        kind,
        side1.iter().map(|i| psa.generator(i).clone()),
        side2.iter().map(|i| psa.generator(i).clone()),
    )
}

fn pset_compatibility(psa: &PsaGroup) -> Vec<BitSet> {
    let n = psa.generator_count();
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| pset_compatible(psa.generator(i), psa.generator(j)))
                .collect()
        })
        .collect()
}

/// Every inclusion-maximal p-set, sorted by underlying set. The stored split
/// puts the complement-component of the minimum generator on `side1`.
pub fn maximal_psets(psa: &PsaGroup) -> Vec<AdmissibleFamily> {
    let adj = pset_compatibility(psa);
    maximal_biclique_unions(&adj)
        .into_iter()
        .map(|q| {
            let side1 = complement_component(&adj, &q, q.first().expect("nonempty"));
            family_from_bits(psa, FamilyKind::PSet, &side1, &q.difference(&side1))
        })
        .collect()
}

/// All `DeltaNode`s of the group, sorted.
pub fn delta_nodes(psa: &PsaGroup) -> Vec<DeltaNode> {
    let mut nodes = Vec::new();
    for a in psa.graph().vertices() {
        let idx = psa.letter_indices(a);
        for (x, &i) in idx.iter().enumerate() {
            for &j in &idx[x + 1..] {
                nodes.push(DeltaNode {
                    letter: a,
                    domains: (psa.generator(i).domain.clone(), psa.generator(j).domain.clone()),
                });
            }
        }
    }
    nodes
}

/// Every inclusion-maximal δ-p-set, sorted by underlying set.
pub fn maximal_delta_psets(psa: &PsaGroup) -> Vec<AdmissibleFamily> {
    let nodes = delta_nodes(psa);
    let pairs: Vec<[usize; 2]> = nodes
        .iter()
        .map(|n| {
            let [p, q] = n.generators();
            [psa.index_of(&p).unwrap(), psa.index_of(&q).unwrap()]
        })
        .collect();
    let adj: Vec<BitSet> = (0..nodes.len())
        .map(|u| {
            (0..nodes.len())
                .filter(|&v| {
                    nodes[u].letter != nodes[v].letter
                        && pairs[u]
                            .iter()
                            .all(|&i| pairs[v].iter().all(|&j| !psa.commutes_idx(i, j)))
                })
                .collect()
        })
        .collect();
    let expand = |node_set: &BitSet| -> BitSet {
        node_set.iter().flat_map(|u| pairs[u]).collect()
    };
    let mut out: Vec<AdmissibleFamily> = maximal_biclique_unions(&adj)
        .into_iter()
        .map(|q| {
            let letters: BTreeSet<Vertex> = q.iter().map(|u| nodes[u].letter).collect();
            assert_eq!(
                letters.len(),
                q.len(),
                "a maximal δ-biclique repeats an acting letter"
            );
            let side1 = complement_component(&adj, &q, q.first().expect("nonempty"));
            let side2 = q.difference(&side1);
            family_from_bits(psa, FamilyKind::DeltaPSet, &expand(&side1), &expand(&side2))
        })
        .collect();
    out.sort_by_key(|f| f.bits(psa));
    out
}

/// Precomputed maximal families of one group, shared by membership queries.
#[derive(Clone, Debug)]
pub struct MaximalFamilies {
    pub psets: Vec<AdmissibleFamily>,
    pub delta_psets: Vec<AdmissibleFamily>,
    pset_bits: Vec<BitSet>,
    delta_bits: Vec<BitSet>,
}

impl MaximalFamilies {
    pub fn new(psa: &PsaGroup) -> Self {
        let psets = maximal_psets(psa);
        let delta_psets = maximal_delta_psets(psa);
        let pset_bits = psets.iter().map(|f| f.bits(psa)).collect();
        let delta_bits = delta_psets.iter().map(|f| f.bits(psa)).collect();
        Self {
            psets,
            delta_psets,
            pset_bits,
            delta_bits,
        }
    }

    fn hyperbolic_bits(psa: &PsaGroup, h: &[PartialConjugation]) -> Result<BitSet> {
        h.iter().map(|p| psa.index_of(p)).collect()
    }

    /// The canonically least maximal p-set containing `h`, if any.
    pub fn extends_to_pset(&self, psa: &PsaGroup, h: &[PartialConjugation]) -> Result<Option<&AdmissibleFamily>> {
        let bits = Self::hyperbolic_bits(psa, h)?;
        for (letter, count) in letter_counts(h.iter().collect::<BTreeSet<_>>().into_iter()) {
            if count > 1 {
                return Err(Error::LetterMultiplicity {
                    letter: psa.graph().name(letter).to_owned(),
                    count,
                    expected: "at most 1",
                });
            }
        }
        Ok(self
            .pset_bits
            .iter()
            .position(|q| bits.is_subset(q))
            .map(|i| &self.psets[i]))
    }

    /// The canonically least maximal δ-p-set containing `h`, if any.
    pub fn extends_to_delta_pset(
        &self,
        psa: &PsaGroup,
        h: &[PartialConjugation],
    ) -> Result<Option<&AdmissibleFamily>> {
        let bits = Self::hyperbolic_bits(psa, h)?;
        for (letter, count) in letter_counts(h.iter().collect::<BTreeSet<_>>().into_iter()) {
            if count != 2 {
                return Err(Error::LetterMultiplicity {
                    letter: psa.graph().name(letter).to_owned(),
                    count,
                    expected: "0 or 2",
                });
            }
        }
        Ok(self
            .delta_bits
            .iter()
            .position(|q| bits.is_subset(q))
            .map(|i| &self.delta_psets[i]))
    }
}

/// Some maximal p-set containing `h`, if one exists.
pub fn extends_to_pset(psa: &PsaGroup, h: &[PartialConjugation]) -> Result<Option<AdmissibleFamily>> {
    let fams = MaximalFamilies::new(psa);
    Ok(fams.extends_to_pset(psa, h)?.cloned())
}

/// Some maximal δ-p-set containing `h`, if one exists.
pub fn extends_to_delta_pset(psa: &PsaGroup, h: &[PartialConjugation]) -> Result<Option<AdmissibleFamily>> {
    let fams = MaximalFamilies::new(psa);
    Ok(fams.extends_to_delta_pset(psa, h)?.cloned())
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

    fn pcs(g: &PsaGroup, ids: &[&str]) -> Vec<PartialConjugation> {
        ids.iter().map(|id| g.parse_id(id).unwrap()).collect()
    }

    fn ids(g: &PsaGroup, ps: &[PartialConjugation]) -> Vec<String> {
        ps.iter().map(|p| g.id(p)).collect()
    }

    #[test]
    fn recognizes_example_psets() {
        let g = example();
        assert!(is_pset(&g, &pcs(&g, &["a:{c,d,e}"]), &pcs(&g, &["c:{a}", "d:{a,b}", "e:{a,b}"])).unwrap());
        assert!(is_pset(&g, &pcs(&g, &["a:{c,d,e}", "b:{d}"]), &pcs(&g, &["d:{a,b}"])).unwrap());
        assert!(!is_pset(&g, &pcs(&g, &["a:{c,d,e}"]), &pcs(&g, &["b:{d}"])).unwrap());
        assert!(!is_pset(&g, &pcs(&g, &["a:{c,d,e}"]), &[]).unwrap());
    }

    #[test]
    fn recognizes_delta_psets() {
        let g = example();
        assert!(is_delta_pset(
            &g,
            &pcs(&g, &["b:{d}", "b:{e}"]),
            &pcs(&g, &["d:{a,b}", "d:{e}", "e:{a,b}", "e:{d}"])
        )
        .unwrap());
        assert!(!is_delta_pset(&g, &pcs(&g, &["b:{d}"]), &pcs(&g, &["d:{a,b}"])).unwrap());

        let xyz = PsaGroup::new(SimplicialGraph::from_edges::<&str>(&["x", "y", "z"], &[]).unwrap());
        assert!(is_delta_pset(&xyz, &pcs(&xyz, &["x:{y}", "x:{z}"]), &pcs(&xyz, &["y:{x}", "y:{z}"])).unwrap());
    }

    #[test]
    fn quadruples() {
        let g = example();
        let q = |ids: [&str; 4]| {
            let p = pcs(&g, &ids);
            quadruple_is_delta(&g, &p[0], &p[1], &p[2], &p[3])
        };
        assert!(q(["b:{d}", "b:{e}", "d:{a,b}", "d:{e}"]).unwrap());
        assert!(q(["b:{d}", "b:{e}", "e:{a,b}", "e:{d}"]).unwrap());
        assert!(matches!(
            q(["b:{d}", "d:{e}", "e:{a,b}", "e:{d}"]),
            Err(Error::QuadruplePrecondition(_))
        ));

        let xyz = PsaGroup::new(SimplicialGraph::from_edges::<&str>(&["x", "y", "z"], &[]).unwrap());
        let p = pcs(&xyz, &["x:{y}", "x:{z}", "y:{x}", "y:{z}"]);
        let cases: Vec<u8> = [(0, 2), (0, 3), (1, 2), (1, 3)]
            .iter()
            .map(|&(i, j)| xyz.pair_case(&p[i], &p[j]).unwrap().number())
            .collect();
        assert_eq!(cases, [2, 3, 3, 6]);
        assert!(quadruple_is_delta(&xyz, &p[0], &p[1], &p[2], &p[3]).unwrap());
    }

    #[test]
    fn construction_examples() {
        let g = example();
        let f = construct_maximal_pset(&g, &g.parse_id("a:{c,d,e}").unwrap()).unwrap();
        assert_eq!(ids(&g, &f.side1), ["a:{c,d,e}"]);
        assert_eq!(ids(&g, &f.side2), ["c:{a}", "d:{a,b}", "e:{a,b}"]);

        let f = construct_maximal_pset(&g, &g.parse_id("d:{e}").unwrap()).unwrap();
        assert_eq!(ids(&g, &f.members()), ["d:{e}", "e:{d}"]);

        let p3 = PsaGroup::new(SimplicialGraph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap());
        let f = construct_maximal_pset(&p3, &p3.parse_id("a:{c}").unwrap()).unwrap();
        assert_eq!((ids(&p3, &f.side1), ids(&p3, &f.side2)), (vec!["a:{c}".into()], vec!["c:{a}".to_string()]));
    }

    #[test]
    fn example_maximal_families() {
        let g = example();
        let got: Vec<(Vec<String>, Vec<String>)> = maximal_psets(&g)
            .iter()
            .map(|f| (ids(&g, &f.side1), ids(&g, &f.side2)))
            .collect();
        let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(got.len(), 4);
        for want in [
            (s(&["a:{c,d,e}"]), s(&["c:{a}", "d:{a,b}", "e:{a,b}"])),
            (s(&["a:{c,d,e}", "b:{d}"]), s(&["d:{a,b}"])),
            (s(&["a:{c,d,e}", "b:{e}"]), s(&["e:{a,b}"])),
            (s(&["d:{e}"]), s(&["e:{d}"])),
        ] {
            assert!(got.contains(&want), "missing {want:?}");
        }

        let deltas = maximal_delta_psets(&g);
        assert_eq!(deltas.len(), 1);
        assert_eq!(ids(&g, &deltas[0].side1), ["b:{d}", "b:{e}"]);
        assert_eq!(ids(&g, &deltas[0].side2), ["d:{a,b}", "d:{e}", "e:{a,b}", "e:{d}"]);
    }

    #[test]
    fn small_graph_families() {
        let p3 = PsaGroup::new(SimplicialGraph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap());
        let ps = maximal_psets(&p3);
        assert_eq!(ps.len(), 1);
        assert_eq!(ids(&p3, &ps[0].members()), ["a:{c}", "c:{a}"]);
        assert!(maximal_delta_psets(&p3).is_empty());

        let k3 = PsaGroup::new(
            SimplicialGraph::from_edges(&["p", "q", "r"], &[("p", "q"), ("q", "r"), ("p", "r")]).unwrap(),
        );
        assert!(maximal_psets(&k3).is_empty());
        assert!(maximal_delta_psets(&k3).is_empty());
    }

    #[test]
    fn extension_queries() {
        let g = example();
        let found = extends_to_pset(&g, &pcs(&g, &["a:{c,d,e}"])).unwrap().unwrap();
        assert!(found.contains(&g.parse_id("a:{c,d,e}").unwrap()));
        assert!(extends_to_pset(&g, &pcs(&g, &["a:{c,d,e}", "d:{e}"])).unwrap().is_none());
        let q4 = extends_to_pset(&g, &pcs(&g, &["d:{e}", "e:{d}"])).unwrap().unwrap();
        assert_eq!(ids(&g, &q4.members()), ["d:{e}", "e:{d}"]);
        assert!(matches!(
            extends_to_pset(&g, &pcs(&g, &["b:{d}", "b:{e}"])),
            Err(Error::LetterMultiplicity { .. })
        ));

        let delta = extends_to_delta_pset(&g, &pcs(&g, &["b:{d}", "b:{e}"])).unwrap().unwrap();
        assert_eq!(delta.len(), 6);
        let all6 = pcs(&g, &["b:{d}", "b:{e}", "d:{a,b}", "d:{e}", "e:{a,b}", "e:{d}"]);
        assert_eq!(extends_to_delta_pset(&g, &all6).unwrap().unwrap(), delta);

        let p3 = PsaGroup::new(SimplicialGraph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap());
        assert!(matches!(
            extends_to_delta_pset(&p3, &pcs(&p3, &["a:{c}"])),
            Err(Error::LetterMultiplicity { count: 1, .. })
        ));
    }

    #[test]
    fn family_json_round_trip() {
        let g = example();
        for f in maximal_psets(&g).iter().chain(&maximal_delta_psets(&g)) {
            let back = AdmissibleFamily::from_json(&g, &f.to_json(&g)).unwrap();
            assert_eq!(&back, f);
        }
        let bogus = json!({"kind": "pset", "side1": ["a:{c,d,e}"], "side2": ["b:{d}"]});
        assert!(AdmissibleFamily::from_json(&g, &bogus).is_err());
    }
}
