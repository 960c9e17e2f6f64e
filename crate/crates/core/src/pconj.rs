//! Partial conjugations, the six-way classification of generator pairs, and
//! the presentation of the pure symmetric automorphism group.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex, VertexSet};

/// The automorphism conjugating every vertex of `domain` by `letter` and
/// fixing the rest. `domain` is a component of `Γ \ Star(letter)`.
///
/// The derived order is `(letter, domain)`, the canonical generator order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialConjugation {
    pub letter: Vertex,
    pub domain: VertexSet,
}

/// Which of the six mutually exclusive situations a pair of partial
/// conjugations with distinct acting letters falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairCase {
    /// `d(a, b) ≤ 1`.
    Case1,
    /// `d(a, b) = 2`, `a ∈ L` and `b ∈ K`.
    Case2,
    /// `d(a, b) = 2`, `K ∩ L = ∅` and exactly one of `a ∈ L`, `b ∈ K`.
    Case3,
    /// `d(a, b) = 2` and `{a} ∪ K ⊆ L` or `{b} ∪ L ⊆ K`.
    Case4,
    /// `d(a, b) = 2` and `({a} ∪ K) ∩ ({b} ∪ L) = ∅`.
    Case5,
    /// `d(a, b) = 2` and `K = L`.
    Case6,
}

impl PairCase {
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn commutes(self) -> bool {
        matches!(self, PairCase::Case1 | PairCase::Case4 | PairCase::Case5)
    }

    const ALL: [PairCase; 6] = [
        PairCase::Case1,
        PairCase::Case2,
        PairCase::Case3,
        PairCase::Case4,
        PairCase::Case5,
        PairCase::Case6,
    ];
}

/// A defining relation of the pure symmetric automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `[p, q] = 1`, stored with `p < q`.
    Commutator(PartialConjugation, PartialConjugation),
    /// `[π_{a,K} π_{a,L}, π_{b,L}] = 1` with `K ≠ L` and `b ∈ K`.
    Delta {
        letter: Vertex,
        first: VertexSet,
        second: VertexSet,
        partner: Vertex,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<PartialConjugation>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    /// Every relation is a commutator, so the abelianization is free on the
    /// generators.
    pub fn abelianization_rank(&self) -> usize {
        self.generators.len()
    }
}

/// Every partial conjugation of `graph`, in canonical order.
pub fn partial_conjugations(graph: &SimplicialGraph) -> Vec<PartialConjugation> {
    graph
        .vertices()
        .flat_map(|letter| {
            graph
                .components_without_star(letter)
                .into_iter()
                .map(move |domain| PartialConjugation { letter, domain })
        })
        .collect()
}

/// A defining graph together with its partial conjugations, the generating
/// set of `PΣ(A(Γ))`.
#[derive(Clone)]
pub struct PsaGroup {
    graph: SimplicialGraph,
    generators: Vec<PartialConjugation>,
    lookup: HashMap<PartialConjugation, usize>,
    by_letter: Vec<Vec<usize>>,
}

impl PsaGroup {
    pub fn new(graph: SimplicialGraph) -> Self {
        let generators = partial_conjugations(&graph);
        let lookup = generators
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut by_letter = vec![Vec::new(); graph.vertex_count()];
        for (i, p) in generators.iter().enumerate() {
            by_letter[p.letter.index()].push(i);
        }
        Self {
            graph,
            generators,
            lookup,
            by_letter,
        }
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn generators(&self) -> &[PartialConjugation] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, index: usize) -> &PartialConjugation {
        &self.generators[index]
    }

    /// Position of `p` in the canonical generator list.
    pub fn index_of(&self, p: &PartialConjugation) -> Result<usize> {
        self.lookup
            .get(p)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(self.describe(p)))
    }

    /// Indices of the generators with acting letter `a`.
    pub fn letter_indices(&self, a: Vertex) -> &[usize] {
        &self.by_letter[a.index()]
    }

    /// Canonical identifier `a:{c,d,e}`.
    pub fn id(&self, p: &PartialConjugation) -> String {
        format!("{}:{}", self.graph.name(p.letter), self.graph.format_set(&p.domain))
    }

    pub fn id_of(&self, index: usize) -> String {
        self.id(&self.generators[index])
    }

    fn describe(&self, p: &PartialConjugation) -> String {
        let fits = p.letter.index() < self.graph.vertex_count()
            && p.domain.iter().all(|v| v.index() < self.graph.vertex_count());
        if fits {
            self.id(p)
        } else {
            format!("{p:?}")
        }
    }

    /// Parses an identifier of the form `a:{c,d,e}` and checks that it names
    /// a generator of this group.
    pub fn parse_id(&self, id: &str) -> Result<PartialConjugation> {
        let unknown = || Error::UnknownGenerator(id.to_owned());
        let (letter, rest) = id.split_once(':').ok_or_else(unknown)?;
        let inner = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(unknown)?;
        let letter = self.graph.vertex(letter.trim()).map_err(|_| unknown())?;
        let mut domain = VertexSet::empty();
        for name in inner.split(',').filter(|s| !s.trim().is_empty()) {
            domain = domain.with(self.graph.vertex(name.trim()).map_err(|_| unknown())?);
        }
        let p = PartialConjugation { letter, domain };
        if self.lookup.contains_key(&p) {
            Ok(p)
        } else {
            Err(unknown())
        }
    }

    pub fn index_of_id(&self, id: &str) -> Result<usize> {
        self.index_of(&self.parse_id(id)?)
    }

    /// Evaluates the six case predicates independently. Assumes distinct
    /// letters; used to check that exactly one of them holds.
    pub fn case_predicates(&self, p: &PartialConjugation, q: &PartialConjugation) -> [bool; 6] {
        let (a, k) = (p.letter, &p.domain);
        let (b, l) = (q.letter, &q.domain);
        let far = self.graph.dist2(a, b) == 2;
        let a_in_l = l.contains(a);
        let b_in_k = k.contains(b);
        [
            !far,
            far && a_in_l && b_in_k,
            far && k.is_disjoint(l) && (a_in_l != b_in_k),
            far && (k.with(a).is_subset(l) || l.with(b).is_subset(k)),
            far && k.with(a).is_disjoint(&l.with(b)),
            far && k == l,
        ]
    }

    /// First matching case, checked in order; callers guarantee distinct letters.
    pub(crate) fn classify(&self, p: &PartialConjugation, q: &PartialConjugation) -> PairCase {
        let preds = self.case_predicates(p, q);
        let hit = preds
            .iter()
            .position(|&b| b)
            .expect("the six cases are exhaustive");
        PairCase::ALL[hit]
    }

    fn check_pair(&self, p: &PartialConjugation, q: &PartialConjugation) -> Result<()> {
        self.index_of(p)?;
        self.index_of(q)?;
        if p == q {
            return Err(Error::IdenticalGenerators(self.id(p)));
        }
        if p.letter == q.letter {
            return Err(Error::SameLetterPair(self.id(p), self.id(q)));
        }
        Ok(())
    }

    pub fn pair_case(&self, p: &PartialConjugation, q: &PartialConjugation) -> Result<PairCase> {
        self.check_pair(p, q)?;
        Ok(self.classify(p, q))
    }

    /// Whether `[p, q] = 1`. Equal generators trivially commute; pairs with a
    /// shared acting letter are rejected.
    pub fn commutes(&self, p: &PartialConjugation, q: &PartialConjugation) -> Result<bool> {
        if p == q {
            self.index_of(p)?;
            return Ok(true);
        }
        Ok(self.pair_case(p, q)?.commutes())
    }

    /// Commutation for generator indices with distinct letters.
    pub(crate) fn commutes_idx(&self, i: usize, j: usize) -> bool {
        self.classify(&self.generators[i], &self.generators[j]).commutes()
    }

    /// The defining presentation. Pairs with a shared acting letter
    /// (`d(a, a) = 0`) contribute commutators as well.
    pub fn presentation(&self) -> Presentation {
        let mut relations = Vec::new();
        for (i, p) in self.generators.iter().enumerate() {
            for q in &self.generators[i + 1..] {
                if p.letter == q.letter || self.classify(p, q).commutes() {
                    relations.push(Relation::Commutator(p.clone(), q.clone()));
                }
            }
        }
        for a in self.graph.vertices() {
            let domains: Vec<&VertexSet> = self
                .letter_indices(a)
                .iter()
                .map(|&i| &self.generators[i].domain)
                .collect();
            for k in &domains {
                for l in &domains {
                    if k == l {
                        continue;
                    }
                    for b in k.iter() {
                        let partner = PartialConjugation {
                            letter: b,
                            domain: (*l).clone(),
                        };
                        if self.lookup.contains_key(&partner) {
                            relations.push(Relation::Delta {
                                letter: a,
                                first: (*k).clone(),
                                second: (*l).clone(),
                                partner: b,
                            });
                        }
                    }
                }
            }
        }
        relations.sort();
        relations.dedup();
        Presentation {
            generators: self.generators.clone(),
            relations,
        }
    }

    pub fn presentation_json(&self, presentation: &Presentation) -> Value {
        let relations: Vec<Value> = presentation
            .relations
            .iter()
            .map(|r| match r {
                Relation::Commutator(p, q) => json!({
                    "type": "comm",
                    "p": self.id(p),
                    "q": self.id(q),
                }),
                Relation::Delta {
                    letter,
                    first,
                    second,
                    partner,
                } => json!({
                    "type": "delta",
                    "letter": self.graph.name(*letter),
                    "K": self.graph.set_names(first),
                    "L": self.graph.set_names(second),
                    "b": self.graph.name(*partner),
                }),
            })
            .collect();
        json!({
            "generators": presentation.generators.iter().map(|p| self.id(p)).collect::<Vec<_>>(),
            "relations": relations,
        })
    }

    fn noncentral(&self, a: Vertex) -> Result<()> {
        if self.graph.is_central(a) {
            Err(Error::CentralVertex(self.graph.name(a).to_owned()))
        } else {
            Ok(())
        }
    }

    /// The generators whose product is the inner automorphism `ι_a`.
    pub fn inner_support(&self, a: Vertex) -> Result<Vec<PartialConjugation>> {
        self.noncentral(a)?;
        Ok(self
            .letter_indices(a)
            .iter()
            .map(|&i| self.generators[i].clone())
            .collect())
    }

    /// Whether `ι_a` commutes with `q = π_{b,L}`: exactly when `a ∉ L`.
    pub fn inner_commutes(&self, a: Vertex, q: &PartialConjugation) -> Result<bool> {
        self.noncentral(a)?;
        self.index_of(q)?;
        Ok(!q.domain.contains(a))
    }

    /// Whether `domain` is a connected component of `Γ \ Star(a)`.
    pub fn is_partial_conjugation(&self, a: Vertex, domain: &VertexSet) -> bool {
        self.lookup.contains_key(&PartialConjugation {
            letter: a,
            domain: domain.clone(),
        })
    }
}

impl fmt::Debug for PsaGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PsaGroup")
            .field("graph", &self.graph)
            .field(
                "generators",
                &self.generators.iter().map(|p| self.id(p)).collect::<Vec<_>>(),
            )
            .finish()
    }
}
