//! The BNS invariant of the right-angled Artin group itself, missing
//! subspheres, the two inclusion–exclusion identities, and the decision of
//! whether the pure symmetric automorphism group is itself a RAAG.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::biclique::maximal_sets;
use crate::bitset::BitSet;
use crate::character::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::families::{is_delta_pset, AdmissibleFamily, FamilyKind, MaximalFamilies};
use crate::graph::{SilWitness, SimplicialGraph, Vertex, VertexSet};
use crate::pconj::{PartialConjugation, PsaGroup};

/// A nonzero character `ψ: A(Γ) → ℝ`, one value per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RaagCharacter {
    values: Vec<BigRational>,
}

impl RaagCharacter {
    pub fn from_vec(values: Vec<BigRational>) -> Result<Self> {
        if values.iter().all(Zero::is_zero) {
            return Err(Error::ZeroCharacter);
        }
        Ok(Self { values })
    }

    pub fn from_integers(graph: &SimplicialGraph, values: &[(&str, i64)]) -> Result<Self> {
        let mut out = vec![BigRational::zero(); graph.vertex_count()];
        for &(name, v) in values {
            out[graph.vertex(name)?.index()] = BigRational::from_integer(v.into());
        }
        Self::from_vec(out)
    }

    /// Parses `{"<vertex>": "p/q" | integer, ...}`; absent vertices read as zero.
    pub fn parse(graph: &SimplicialGraph, text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Malformed {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Self::from_json(graph, &value)
    }

    pub fn from_json(graph: &SimplicialGraph, value: &Value) -> Result<Self> {
        let map = value.as_object().ok_or_else(|| Error::Malformed {
            location: "character".into(),
            message: "expected an object mapping vertex names to rationals".into(),
        })?;
        let mut out = vec![BigRational::zero(); graph.vertex_count()];
        for (k, v) in map {
            out[graph.vertex(k)?.index()] = parse_rational(k, v)?;
        }
        Self::from_vec(out)
    }

    pub fn to_json(&self, graph: &SimplicialGraph) -> Value {
        Value::Object(
            graph
                .vertices()
                .map(|v| {
                    (
                        graph.name(v).to_owned(),
                        Value::String(format_rational(&self.values[v.index()])),
                    )
                })
                .collect(),
        )
    }

    pub fn value(&self, v: Vertex) -> &BigRational {
        &self.values[v.index()]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn scaled(&self, r: &BigRational) -> Result<Self> {
        Self::from_vec(self.values.iter().map(|v| v * r).collect())
    }

    /// The vertices with nonzero value.
    pub fn support(&self, graph: &SimplicialGraph) -> VertexSet {
        graph
            .vertices()
            .filter(|v| !self.values[v.index()].is_zero())
            .collect()
    }
}

/// `[ψ] ∈ Σ¹(A)` iff the support spans a connected, dominating subgraph.
pub fn raag_sigma_membership(graph: &SimplicialGraph, psi: &RaagCharacter) -> bool {
    let support = psi.support(graph);
    let (connected, dominating) = graph.spans_connected_dominating(&support);
    connected && dominating
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubsphereSupport {
    /// Coordinate subsphere of the RAAG character sphere.
    Raag(VertexSet),
    /// Characters supported on a maximal p-set.
    PSet(Vec<PartialConjugation>),
    /// Characters supported on a maximal δ-p-set whose two values per letter
    /// sum to zero. Each pair lists the two sign partners.
    Delta(Vec<(PartialConjugation, PartialConjugation)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subsphere {
    pub support: SubsphereSupport,
}

impl Subsphere {
    /// `|U| − 1` for coordinate subspheres, one less than the number of
    /// letters for δ-type ones; the empty support has dimension −1.
    pub fn dimension(&self) -> i64 {
        let free = match &self.support {
            SubsphereSupport::Raag(u) => u.len(),
            SubsphereSupport::PSet(q) => q.len(),
            SubsphereSupport::Delta(pairs) => pairs.len(),
        };
        free as i64 - 1
    }

    pub fn kind(&self) -> &'static str {
        match self.support {
            SubsphereSupport::Raag(_) => "raag",
            SubsphereSupport::PSet(_) => "pset",
            SubsphereSupport::Delta(_) => "delta",
        }
    }

    /// Graph-level subspheres serialize with vertex names; the others need
    /// the group for generator ids.
    pub fn to_json(&self, psa: &PsaGroup) -> Value {
        match &self.support {
            SubsphereSupport::Raag(u) => json!({
                "kind": self.kind(),
                "support": psa.graph().set_names(u),
                "dimension": self.dimension(),
            }),
            SubsphereSupport::PSet(q) => json!({
                "kind": self.kind(),
                "support": q.iter().map(|p| psa.id(p)).collect::<Vec<_>>(),
                "dimension": self.dimension(),
            }),
            SubsphereSupport::Delta(pairs) => json!({
                "kind": self.kind(),
                "support": pairs.iter().flat_map(|(p, q)| [psa.id(p), psa.id(q)]).collect::<Vec<_>>(),
                "pairing": pairs.iter().map(|(p, q)| [psa.id(p), psa.id(q)]).collect::<Vec<_>>(),
                "dimension": self.dimension(),
            }),
        }
    }
}

/// Minimal separators of `graph`, generated by the closure of Berry, Bordat
/// and Cogis: start from `N(C)` for components `C` of `Γ − N[v]`, then from
/// each separator `S` and `x ∈ S` add `N(C)` for the components of
/// `Γ − (S ∪ N(x))`.
fn minimal_separators(graph: &SimplicialGraph) -> BTreeSet<VertexSet> {
    let all = graph.all_vertices();
    let boundary = |c: &VertexSet| -> VertexSet {
        c.iter()
            .fold(VertexSet::empty(), |acc, v| acc.union(&graph.link(v)))
            .difference(c)
    };
    let mut seen = BTreeSet::new();
    let mut stack = Vec::new();
    for v in graph.vertices() {
        for c in graph.components(&all.difference(&graph.star(v))) {
            let s = boundary(&c);
            if seen.insert(s.clone()) {
                stack.push(s);
            }
        }
    }
    while let Some(s) = stack.pop() {
        for x in s.iter() {
            let removed = s.union(&graph.link(x));
            for c in graph.components(&all.difference(&removed)) {
                let t = boundary(&c);
                if seen.insert(t.clone()) {
                    stack.push(t);
                }
            }
        }
    }
    // The boundary of a component that is not full on two sides may still be
    // produced; callers only need every minimal separator to be present and
    // every produced set to separate.
    seen.retain(|s| graph.components(&all.difference(s)).len() >= 2);
    seen
}

/// Every inclusion-maximal `U ⊆ V` spanning a disconnected or non-dominating
/// subgraph, in canonical order.
///
/// Maximal non-dominating sets are among the `V \ Star(v)`; maximal
/// disconnected sets are complements of minimal separators.
pub fn maximal_missing_subspheres(graph: &SimplicialGraph) -> Vec<Subsphere> {
    let all = graph.all_vertices();
    let mut candidates: Vec<BitSet> = graph
        .vertices()
        .map(|v| all.difference(&graph.star(v)))
        .chain(minimal_separators(graph).iter().map(|s| all.difference(s)))
        .filter(|u| !u.is_empty())
        .map(|u| u.as_bits().clone())
        .collect();
    candidates.sort();
    candidates.dedup();
    maximal_sets(candidates)
        .into_iter()
        .map(|u| Subsphere {
            support: SubsphereSupport::Raag(VertexSet(u)),
        })
        .collect()
}

/// Result of checking one counting identity. `rhs` is absent when there is no
/// family to sum over and the identity holds vacuously.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingCheck {
    pub lhs: i64,
    pub rhs: Option<i64>,
    pub holds: bool,
}

impl CountingCheck {
    fn new(lhs: i64, sets: &[BitSet]) -> Self {
        match inclusion_exclusion(sets) {
            Some(rhs) => Self {
                lhs,
                rhs: Some(rhs),
                holds: lhs == rhs,
            },
            None => Self {
                lhs,
                rhs: None,
                holds: true,
            },
        }
    }

    pub fn is_vacuous(&self) -> bool {
        self.rhs.is_none()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds});
        if self.is_vacuous() {
            v["vacuous"] = Value::Bool(true);
        }
        v
    }
}

/// `1 + Σ_{∅≠I} (−1)^{|I|−1} (|⋂_{i∈I} S_i| − 1)`, or `None` for no sets.
///
/// Depth-first over index sets in increasing order. Once the running
/// intersection is empty every extension contributes `−(−1)^{|J|−1}`, and
/// those cancel unless no index is left to add.
pub(crate) fn inclusion_exclusion(sets: &[BitSet]) -> Option<i64> {
    fn walk(sets: &[BitSet], next: usize, inter: &BitSet, size: usize, acc: &mut i64) {
        for i in next..sets.len() {
            let meet = inter.intersection(&sets[i]);
            let sign = if size % 2 == 0 { 1 } else { -1 };
            if meet.is_empty() {
                if i + 1 == sets.len() {
                    *acc -= sign;
                }
                continue;
            }
            *acc += sign * (meet.len() as i64 - 1);
            walk(sets, i + 1, &meet, size + 1, acc);
        }
    }
    if sets.is_empty() {
        return None;
    }
    let mut acc = 1;
    let universe = sets.iter().fold(BitSet::new(), |a, s| a.union(s));
    walk(sets, 0, &universe, 0, &mut acc);
    Some(acc)
}

/// `|V| − |Z|` against the alternating sum over maximal missing subspheres.
pub fn counting_check_raag(graph: &SimplicialGraph) -> CountingCheck {
    let sets: Vec<BitSet> = maximal_missing_subspheres(graph)
        .into_iter()
        .map(|s| match s.support {
            SubsphereSupport::Raag(u) => u.0,
            _ => unreachable!(),
        })
        .collect();
    let lhs = (graph.vertex_count() - graph.center().len()) as i64;
    CountingCheck::new(lhs, &sets)
}

/// The number of generators against the alternating sum over maximal p-sets.
pub fn counting_check_psa(psa: &PsaGroup) -> CountingCheck {
    counting_check_psa_with(psa, &MaximalFamilies::new(psa))
}

pub fn counting_check_psa_with(psa: &PsaGroup, families: &MaximalFamilies) -> CountingCheck {
    let sets: Vec<BitSet> = families.psets.iter().map(|f| f.bits(psa)).collect();
    CountingCheck::new(psa.generator_count() as i64, &sets)
}

fn delta_pairs(family: &AdmissibleFamily) -> Vec<(PartialConjugation, PartialConjugation)> {
    let mut members = family.members();
    members.sort();
    members
        .chunks(2)
        .map(|c| {
            debug_assert_eq!(c[0].letter, c[1].letter);
            (c[0].clone(), c[1].clone())
        })
        .collect()
}

/// One subsphere per maximal p-set, then one per maximal δ-p-set.
pub fn psa_complement_subspheres(psa: &PsaGroup) -> Vec<Subsphere> {
    psa_complement_subspheres_with(&MaximalFamilies::new(psa))
}

pub fn psa_complement_subspheres_with(families: &MaximalFamilies) -> Vec<Subsphere> {
    families
        .psets
        .iter()
        .map(|f| Subsphere {
            support: SubsphereSupport::PSet(f.members()),
        })
        .chain(families.delta_psets.iter().map(|f| Subsphere {
            support: SubsphereSupport::Delta(delta_pairs(f)),
        }))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaagVerdict {
    pub is_raag: bool,
    pub sil: Option<SilWitness>,
    pub delta_family: Option<AdmissibleFamily>,
}

/// `{π_{a,K}, π_{a,M}, π_{b,L}, π_{b,M}}` for a SIL `(a, b, M)`, with `K ∋ b`
/// and `L ∋ a`.
pub fn sil_delta_family(psa: &PsaGroup, sil: &SilWitness) -> Result<AdmissibleFamily> {
    let g = psa.graph();
    let domain = |letter: Vertex, target: Vertex| {
        g.component_containing(&g.all_vertices().difference(&g.star(letter)), target)
            .ok_or_else(|| Error::Inconsistent("SIL vertices must be nonadjacent".into()))
    };
    let k = domain(sil.a, sil.b)?;
    let l = domain(sil.b, sil.a)?;
    let pc = |letter, domain| PartialConjugation { letter, domain };
    let side1 = vec![pc(sil.a, k), pc(sil.a, sil.component.clone())];
    let side2 = vec![pc(sil.b, l), pc(sil.b, sil.component.clone())];
    for p in side1.iter().chain(&side2) {
        if psa.index_of(p).is_err() {
            return Err(Error::Inconsistent(format!(
                "SIL component does not give the partial conjugation `{}`",
                psa.id(p)
            )));
        }
    }
    if !is_delta_pset(psa, &side1, &side2)? {
        return Err(Error::Inconsistent(
            "the quadruple built from a SIL is not a δ-p-set".into(),
        ));
    }
    Ok(AdmissibleFamily::new(FamilyKind::DeltaPSet, side1, side2))
}

/// Whether `PΣ(A(Γ))` is a RAAG: exactly when `Γ` has no SIL. Otherwise the
/// first SIL and its δ-p-set are reported.
pub fn theorem_b(psa: &PsaGroup) -> Result<RaagVerdict> {
    match psa.graph().find_sils().into_iter().next() {
        None => Ok(RaagVerdict {
            is_raag: true,
            sil: None,
            delta_family: None,
        }),
        Some(sil) => {
            let family = sil_delta_family(psa, &sil)?;
            Ok(RaagVerdict {
                is_raag: false,
                sil: Some(sil),
                delta_family: Some(family),
            })
        }
    }
}

pub fn sil_json(graph: &SimplicialGraph, sil: &SilWitness) -> Value {
    json!({
        "a": graph.name(sil.a),
        "b": graph.name(sil.b),
        "component": graph.set_names(&sil.component),
    })
}

/// The full report: verdict, SIL witness, δ-family and both identities.
pub fn theorem_b_report(psa: &PsaGroup) -> Result<Value> {
    let verdict = theorem_b(psa)?;
    let g = psa.graph();
    Ok(json!({
        "is_raag": verdict.is_raag,
        "sil": verdict.sil.as_ref().map(|s| sil_json(g, s)),
        "delta_family": verdict.delta_family.as_ref().map(|f| f.to_json(psa)),
        "counting": {
            "raag": counting_check_raag(g).to_json(),
            "psa": counting_check_psa(psa).to_json(),
        },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vs: &[&str], es: &[(&str, &str)]) -> SimplicialGraph {
        SimplicialGraph::from_edges(vs, es).unwrap()
    }

    fn example() -> SimplicialGraph {
        graph(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("c", "e")],
        )
    }

    fn p3() -> SimplicialGraph {
        graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
    }

    fn k3() -> SimplicialGraph {
        graph(&["p", "q", "r"], &[("p", "q"), ("q", "r"), ("p", "r")])
    }

    fn supports(g: &SimplicialGraph) -> Vec<String> {
        maximal_missing_subspheres(g)
            .iter()
            .map(|s| match &s.support {
                SubsphereSupport::Raag(u) => g.format_set(u),
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn raag_membership() {
        let g = p3();
        let psi = |v: &[(&str, i64)]| RaagCharacter::from_integers(&g, v).unwrap();
        assert!(raag_sigma_membership(&g, &psi(&[("b", 1)])));
        assert!(!raag_sigma_membership(&g, &psi(&[("a", 1)])));
        let k = k3();
        assert!(raag_sigma_membership(&k, &RaagCharacter::from_integers(&k, &[("r", -2)]).unwrap()));
        assert_eq!(RaagCharacter::from_integers(&g, &[]), Err(Error::ZeroCharacter));
    }

    #[test]
    fn missing_subspheres() {
        assert_eq!(supports(&p3()), ["{a,c}"]);
        assert!(supports(&k3()).is_empty());
        assert_eq!(supports(&graph(&["x", "y"], &[])), ["{x,y}"]);
    }

    #[test]
    fn counting_raag() {
        let c = counting_check_raag(&p3());
        assert_eq!((c.lhs, c.rhs, c.holds), (2, Some(2), true));
        let c = counting_check_raag(&k3());
        assert_eq!((c.lhs, c.rhs, c.holds), (0, None, true));
        assert_eq!(c.to_json()["vacuous"], true);
        let c = counting_check_raag(&graph(&["x", "y"], &[]));
        assert_eq!((c.lhs, c.rhs), (2, Some(2)));
    }

    #[test]
    fn counting_psa() {
        let g = PsaGroup::new(example());
        let c = counting_check_psa(&g);
        assert_eq!((c.lhs, c.rhs, c.holds), (8, Some(8), true));
        let c = counting_check_psa(&PsaGroup::new(p3()));
        assert_eq!((c.lhs, c.rhs), (2, Some(2)));
        assert!(counting_check_psa(&PsaGroup::new(k3())).is_vacuous());
    }

    #[test]
    fn inclusion_exclusion_matches_naive() {
        let sets: Vec<BitSet> = vec![
            [0, 1, 2, 3].into_iter().collect(),
            [0, 4, 5].into_iter().collect(),
            [6, 7].into_iter().collect(),
            [1, 6].into_iter().collect(),
            [0, 1].into_iter().collect(),
        ];
        let mut naive = 1i64;
        for mask in 1u32..(1 << sets.len()) {
            let chosen: Vec<&BitSet> = (0..sets.len()).filter(|i| mask >> i & 1 == 1).map(|i| &sets[i]).collect();
            let inter = chosen[1..].iter().fold(chosen[0].clone(), |a, s| a.intersection(s));
            let sign = if chosen.len() % 2 == 1 { 1 } else { -1 };
            naive += sign * (inter.len() as i64 - 1);
        }
        assert_eq!(inclusion_exclusion(&sets), Some(naive));
    }

    #[test]
    fn complement_subspheres() {
        let g = PsaGroup::new(example());
        let dims: Vec<(&str, i64)> = psa_complement_subspheres(&g)
            .iter()
            .map(|s| (s.kind(), s.dimension()))
            .collect();
        let mut pset_dims: Vec<i64> = dims.iter().filter(|d| d.0 == "pset").map(|d| d.1).collect();
        pset_dims.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(pset_dims, [3, 2, 2, 1]);
        assert_eq!(dims.iter().filter(|d| d.0 == "delta").map(|d| d.1).collect::<Vec<_>>(), [2]);

        let p = PsaGroup::new(p3());
        let subs = psa_complement_subspheres(&p);
        assert_eq!(subs.len(), 1);
        assert_eq!((subs[0].kind(), subs[0].dimension()), ("pset", 1));
        assert!(psa_complement_subspheres(&PsaGroup::new(k3())).is_empty());
    }

    #[test]
    fn theorem_b_examples() {
        let g = PsaGroup::new(example());
        let v = theorem_b(&g).unwrap();
        assert!(!v.is_raag);
        let sil = v.sil.unwrap();
        let gr = g.graph();
        assert_eq!((gr.name(sil.a), gr.name(sil.b), gr.format_set(&sil.component).as_str()), ("b", "d", "{e}"));
        let ids: Vec<String> = v.delta_family.unwrap().members().iter().map(|p| g.id(p)).collect();
        assert_eq!(ids, ["b:{d}", "b:{e}", "d:{a,b}", "d:{e}"]);

        assert!(theorem_b(&PsaGroup::new(p3())).unwrap().is_raag);
        assert!(theorem_b(&PsaGroup::new(k3())).unwrap().is_raag);
        let report = theorem_b_report(&PsaGroup::new(p3())).unwrap();
        assert_eq!(report["is_raag"], true);
        assert_eq!(report["counting"]["psa"]["rhs"], 2);
    }
}
