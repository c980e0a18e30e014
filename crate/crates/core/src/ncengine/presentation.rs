//! Finitely presented algebras over a semisimple base `R = k^r` (a path
//! algebra of a quiver modulo relations).
//!
//! Paths compose left to right: the word `g1 g2` means "first `g1`, then `g2`",
//! so it is composable when `target(g1) == source(g2)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Rational, RationalJson};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: u32,
}

/// A path in the quiver. Empty paths are the idempotents `e_source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub letters: Vec<usize>,
}

impl Path {
    pub fn idempotent(v: usize) -> Self {
        Path {
            source: v,
            letters: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    /// Nonzero coefficients, distinct paths, sorted by path.
    pub terms: Vec<(Rational, Path)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationKind {
    Homogeneous { degree: u32 },
    Filtered { top_degree: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub name: String,
    pub num_vertices: usize,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    /// Name of a designated central element and the generators summing to it
    /// (one loop per vertex).
    pub central: Option<(String, Vec<usize>)>,
}

impl AlgebraPresentation {
    pub fn new(name: impl Into<String>, num_vertices: usize) -> Self {
        AlgebraPresentation {
            name: name.into(),
            num_vertices,
            generators: Vec::new(),
            relations: Vec::new(),
            central: None,
        }
    }

    pub fn add_generator(&mut self, name: impl Into<String>, source: usize, target: usize, degree: u32) -> usize {
        assert!(source < self.num_vertices && target < self.num_vertices);
        assert!(degree > 0, "generators have positive degree");
        self.generators.push(Generator {
            name: name.into(),
            source,
            target,
            degree,
        });
        self.generators.len() - 1
    }

    /// Adds a loop of the given degree at every vertex. With a single vertex
    /// the loop is called `name`, otherwise `name@v` (1-based `v`).
    pub fn add_vertex_loops(&mut self, name: &str, degree: u32) -> Vec<usize> {
        (0..self.num_vertices)
            .map(|v| {
                let n = if self.num_vertices == 1 {
                    name.to_string()
                } else {
                    format!("{name}@{}", v + 1)
                };
                self.add_generator(n, v, v, degree)
            })
            .collect()
    }

    /// Relations `loop_{s(g)} g = g loop_{t(g)}` for every generator `g` that
    /// is not one of `loops` itself.
    pub fn add_centrality_relations(&mut self, loops: &[usize]) -> Result<()> {
        let by_vertex: BTreeMap<usize, usize> = loops.iter().map(|&l| (self.generators[l].source, l)).collect();
        for g in 0..self.generators.len() {
            if loops.contains(&g) {
                continue;
            }
            let (s, t) = (self.generators[g].source, self.generators[g].target);
            let (Some(&ls), Some(&lt)) = (by_vertex.get(&s), by_vertex.get(&t)) else {
                continue;
            };
            let lhs = Path { source: s, letters: vec![ls, g] };
            let rhs = Path { source: s, letters: vec![g, lt] };
            self.add_relation(vec![(Rational::one(), lhs), (-Rational::one(), rhs)])?;
        }
        Ok(())
    }

    pub fn set_central(&mut self, name: impl Into<String>, loops: Vec<usize>) {
        self.central = Some((name.into(), loops));
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Parses a space-separated word of generator names (empty string gives the
    /// idempotent at `vertex`, which is otherwise ignored).
    pub fn word(&self, spec: &str, vertex: usize) -> Result<Path> {
        let mut letters = Vec::new();
        for tok in spec.split_whitespace() {
            letters.push(
                self.generator_index(tok)
                    .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator `{tok}`")))?,
            );
        }
        let source = letters.first().map_or(vertex, |&g| self.generators[g].source);
        let p = Path { source, letters };
        self.check_path(&p)?;
        Ok(p)
    }

    pub fn path_target(&self, p: &Path) -> usize {
        p.letters.last().map_or(p.source, |&g| self.generators[g].target)
    }

    pub fn path_degree(&self, p: &Path) -> u32 {
        p.letters.iter().map(|&g| self.generators[g].degree).sum()
    }

    pub fn check_path(&self, p: &Path) -> Result<()> {
        if p.source >= self.num_vertices {
            return Err(Error::InvalidPresentation(format!("vertex {} out of range", p.source)));
        }
        let mut at = p.source;
        for &g in &p.letters {
            let gen = self
                .generators
                .get(g)
                .ok_or_else(|| Error::InvalidPresentation(format!("generator index {g} out of range")))?;
            if gen.source != at {
                return Err(Error::InvalidPresentation(format!(
                    "word is not composable at `{}`",
                    gen.name
                )));
            }
            at = gen.target;
        }
        Ok(())
    }

    /// Adds a relation after merging equal paths and checking that every path
    /// is composable with common endpoints.
    pub fn add_relation(&mut self, terms: Vec<(Rational, Path)>) -> Result<()> {
        let rel = self.make_relation(terms)?;
        if !rel.terms.is_empty() {
            self.relations.push(rel);
        }
        Ok(())
    }

    pub fn make_relation(&self, terms: Vec<(Rational, Path)>) -> Result<Relation> {
        let mut merged: BTreeMap<Path, Rational> = BTreeMap::new();
        let mut ends: Option<(usize, usize)> = None;
        for (c, p) in terms {
            self.check_path(&p)?;
            let e = (p.source, self.path_target(&p));
            match ends {
                None => ends = Some(e),
                Some(prev) if prev != e => {
                    return Err(Error::InvalidPresentation(format!(
                        "relation mixes paths {:?} and {:?} (source, target)",
                        prev, e
                    )))
                }
                _ => {}
            }
            *merged.entry(p).or_insert_with(Rational::zero) += c;
        }
        Ok(Relation {
            terms: merged.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)).collect(),
        })
    }

    pub fn relation_ends(&self, r: &Relation) -> (usize, usize) {
        let p = &r.terms[0].1;
        (p.source, self.path_target(p))
    }

    pub fn relation_kind(&self, r: &Relation) -> RelationKind {
        let degs: Vec<u32> = r.terms.iter().map(|(_, p)| self.path_degree(p)).collect();
        let top = degs.iter().copied().max().unwrap_or(0);
        if degs.iter().all(|&d| d == top) {
            RelationKind::Homogeneous { degree: top }
        } else {
            RelationKind::Filtered { top_degree: top }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations
            .iter()
            .all(|r| matches!(self.relation_kind(r), RelationKind::Homogeneous { .. }))
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_vertices == 0 {
            return Err(Error::InvalidPresentation("empty quiver".into()));
        }
        let mut names = std::collections::HashSet::new();
        for g in &self.generators {
            if !names.insert(&g.name) {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{}`", g.name)));
            }
            if g.degree == 0 || g.source >= self.num_vertices || g.target >= self.num_vertices {
                return Err(Error::InvalidPresentation(format!("bad generator `{}`", g.name)));
            }
        }
        for r in &self.relations {
            let again = self.make_relation(r.terms.clone())?;
            if again != *r {
                return Err(Error::InvalidPresentation("relation not in canonical form".into()));
            }
        }
        if let Some((_, loops)) = &self.central {
            for &l in loops {
                let g = self
                    .generators
                    .get(l)
                    .ok_or_else(|| Error::InvalidPresentation("central loop out of range".into()))?;
                if g.source != g.target {
                    return Err(Error::InvalidPresentation("central element must be a sum of loops".into()));
                }
            }
        }
        Ok(())
    }

    /// Deg-lex comparison: weighted degree, then lexicographic in generator
    /// index, then source vertex (only relevant for idempotents).
    pub fn cmp_paths(&self, a: &Path, b: &Path) -> Ordering {
        self.path_degree(a)
            .cmp(&self.path_degree(b))
            .then_with(|| a.letters.cmp(&b.letters))
            .then_with(|| a.source.cmp(&b.source))
    }

    pub fn path_string(&self, p: &Path) -> String {
        if p.letters.is_empty() {
            format!("e{}", p.source + 1)
        } else {
            p.letters
                .iter()
                .map(|&g| self.generators[g].name.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Homogenization by a central degree-1 loop `t` at every vertex. Each
    /// relation of top degree `D` becomes `sum_w c_w t^{D - deg w} w`. The `t`
    /// loops are placed first in the generator order, so they are the
    /// smallest letters; the original generator `g` becomes `g + num_vertices`.
    pub fn homogenize(&self) -> Result<AlgebraPresentation> {
        let r = self.num_vertices;
        let mut h = AlgebraPresentation::new(format!("{} (homogenized)", self.name), r);
        let ts = h.add_vertex_loops("t", 1);
        if r == 1 {
            h.generators[ts[0]].name = "t@1".into();
        }
        for g in &self.generators {
            h.add_generator(g.name.clone(), g.source, g.target, g.degree);
        }
        if h.generators.iter().filter(|g| g.name.starts_with("t@")).count() != r {
            return Err(Error::InvalidPresentation("generator names clash with `t@v`".into()));
        }
        for rel in &self.relations {
            let top = rel.terms.iter().map(|(_, p)| self.path_degree(p)).max().unwrap_or(0);
            let terms = rel
                .terms
                .iter()
                .map(|(c, p)| {
                    let pad = (top - self.path_degree(p)) as usize;
                    let mut letters = vec![ts[p.source]; pad];
                    letters.extend(p.letters.iter().map(|&g| g + r));
                    (c.clone(), Path { source: p.source, letters })
                })
                .collect();
            h.add_relation(terms)?;
        }
        h.add_centrality_relations(&ts)?;
        if let Some((name, loops)) = &self.central {
            h.central = Some((name.clone(), loops.iter().map(|&l| l + r).collect()));
        }
        Ok(h)
    }

    /// The presentation whose relations are the top-degree parts.
    pub fn leading_presentation(&self) -> Result<AlgebraPresentation> {
        let mut out = self.clone();
        out.name = format!("{} (leading)", self.name);
        out.relations.clear();
        for rel in &self.relations {
            let top = rel.terms.iter().map(|(_, p)| self.path_degree(p)).max().unwrap_or(0);
            let terms = rel
                .terms
                .iter()
                .filter(|(_, p)| self.path_degree(p) == top)
                .cloned()
                .collect();
            out.add_relation(terms)?;
        }
        Ok(out)
    }

    /// Reverses an arrow `a` with star partner `b` by substituting `a -> -a`
    /// everywhere, which is how a reorientation is implemented on the doubled
    /// quiver. Returns the presentation with every term containing `a` an odd
    /// number of times negated.
    pub fn negate_generator(&self, a: usize) -> Result<AlgebraPresentation> {
        let mut out = self.clone();
        out.relations.clear();
        for rel in &self.relations {
            let terms = rel
                .terms
                .iter()
                .map(|(c, p)| {
                    let k = p.letters.iter().filter(|&&g| g == a).count();
                    (if k % 2 == 1 { -c.clone() } else { c.clone() }, p.clone())
                })
                .collect();
            out.add_relation(terms)?;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// JSON schema

pub const PRESENTATION_SCHEMA: &str = "centext.presentation/1";

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: RationalJson,
    word: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct CentralJson {
    name: String,
    loops: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    schema: String,
    name: String,
    vertices: usize,
    generators: Vec<Generator>,
    relations: Vec<Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    central: Option<CentralJson>,
}

impl Serialize for AlgebraPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let name = |g: usize| self.generators[g].name.clone();
        let relations = self
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, p)| TermJson {
                        coeff: RationalJson::from(c),
                        word: p.letters.iter().map(|&g| name(g)).collect(),
                        vertex: p.letters.is_empty().then_some(p.source),
                    })
                    .collect()
            })
            .collect();
        PresentationJson {
            schema: PRESENTATION_SCHEMA.into(),
            name: self.name.clone(),
            vertices: self.num_vertices,
            generators: self.generators.clone(),
            relations,
            central: self.central.as_ref().map(|(n, loops)| CentralJson {
                name: n.clone(),
                loops: loops.iter().map(|&g| name(g)).collect(),
            }),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PresentationJson::deserialize(d)?;
        if j.schema != PRESENTATION_SCHEMA {
            return Err(D::Error::custom(format!("unsupported schema `{}`", j.schema)));
        }
        let mut p = AlgebraPresentation::new(j.name, j.vertices);
        p.generators = j.generators;
        let idx = |p: &AlgebraPresentation, n: &str| {
            p.generator_index(n)
                .ok_or_else(|| D::Error::custom(format!("unknown generator `{n}`")))
        };
        for rel in j.relations {
            let mut terms = Vec::new();
            for t in rel {
                let letters = t.word.iter().map(|n| idx(&p, n)).collect::<std::result::Result<Vec<_>, _>>()?;
                let source = match letters.first() {
                    Some(&g) => p.generators[g].source,
                    None => t.vertex.ok_or_else(|| D::Error::custom("empty word needs a vertex"))?,
                };
                terms.push((t.coeff.to_rational().map_err(D::Error::custom)?, Path { source, letters }));
            }
            p.add_relation(terms).map_err(D::Error::custom)?;
        }
        if let Some(c) = j.central {
            let loops = c.loops.iter().map(|n| idx(&p, n)).collect::<std::result::Result<Vec<_>, _>>()?;
            p.central = Some((c.name, loops));
        }
        p.validate().map_err(D::Error::custom)?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;

    pub(crate) fn a2_pi0() -> AlgebraPresentation {
        let mut p = AlgebraPresentation::new("A2 Pi0", 2);
        p.add_generator("a", 0, 1, 1);
        p.add_generator("a*", 1, 0, 1);
        let aa = p.word("a a*", 0).unwrap();
        let ba = p.word("a* a", 1).unwrap();
        p.add_relation(vec![(ri(1), aa)]).unwrap();
        p.add_relation(vec![(ri(1), ba)]).unwrap();
        p
    }

    #[test]
    fn composability_is_checked() {
        let p = a2_pi0();
        assert!(p.word("a a", 0).is_err());
        assert!(p.word("a a* a", 0).is_ok());
        let mut q = p.clone();
        let bad = q.add_relation(vec![(ri(1), p.word("a", 0).unwrap()), (ri(1), p.word("a*", 1).unwrap())]);
        assert!(matches!(bad, Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn duplicate_terms_merge_and_cancel() {
        let mut p = a2_pi0();
        let w = p.word("a a*", 0).unwrap();
        let n = p.relations.len();
        p.add_relation(vec![(ri(1), w.clone()), (ri(-1), w)]).unwrap();
        assert_eq!(p.relations.len(), n);
    }

    #[test]
    fn json_round_trip() {
        let mut p = a2_pi0();
        let e = Path::idempotent(0);
        let w = p.word("a a*", 0).unwrap();
        p.add_relation(vec![(ri(2), w), (crate::exact::rat(-1, 3), e)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: AlgebraPresentation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn homogenization_pads_with_t() {
        let mut p = AlgebraPresentation::new("toy", 1);
        p.add_generator("x", 0, 0, 2);
        let xx = p.word("x x", 0).unwrap();
        p.add_relation(vec![(ri(1), xx), (ri(-1), Path::idempotent(0))]).unwrap();
        assert!(!p.is_homogeneous());
        let h = p.homogenize().unwrap();
        assert!(h.is_homogeneous());
        assert_eq!(h.generators[0].name, "t@1");
        let rel = &h.relations[0];
        assert!(rel.terms.iter().any(|(_, w)| w.letters == vec![0, 0, 0, 0]));
    }

    #[test]
    fn deg_lex_order() {
        let mut p = AlgebraPresentation::new("toy", 1);
        p.add_generator("x", 0, 0, 1);
        p.add_generator("y", 0, 0, 1);
        p.add_generator("z", 0, 0, 2);
        let w = |s| p.word(s, 0).unwrap();
        assert_eq!(p.cmp_paths(&w("y x"), &w("x y")), Ordering::Greater);
        assert_eq!(p.cmp_paths(&w("z"), &w("y y")), Ordering::Greater);
        assert_eq!(p.cmp_paths(&w("y"), &w("x x")), Ordering::Less);
    }
}
