//! Finitely presented groups and the complement presentation of an arrangement.

mod quotient;
mod tietze;
mod word;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{IncidenceLattice, PointId};
use crate::linalg::{snf, Matrix};
use crate::scalar::ExactField;

pub use quotient::{point_quotient, quotient_by, PointQuotient};
pub use tietze::{simplify, tietze, Simplification, StepRecord, TietzeStep};
pub use word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relator {
    pub word: Word,
    /// Consequence of the other relators at the same point, kept for reference.
    pub redundant: bool,
}

/// Provenance of relators and generators that were not produced mechanically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AuditEntry {
    /// T1: relator asserted by the caller to hold in the group.
    AssertedConsequence { word: String },
    /// T2: relator asserted derivable from the others and dropped.
    AssertedRedundant { word: String },
    /// Relator added to pass to a quotient group.
    QuotientRelator { word: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    labels: Vec<String>,
    relators: Vec<Relator>,
    audit: Vec<AuditEntry>,
}

/// Abelianization as `ℤ^free_rank ⊕ ⨁ ℤ/tᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(serialize_with = "crate::scalar::big_serde::serialize_vec")]
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for t in &self.torsion {
            write!(f, " + Z/{t}")?;
        }
        Ok(())
    }
}

impl GroupPresentation {
    pub fn new(labels: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let p = GroupPresentation {
            labels,
            relators: relators.into_iter().map(|word| Relator { word, redundant: false }).collect(),
            audit: Vec::new(),
        };
        p.check_words()?;
        Ok(p)
    }

    /// Free group on `labels`.
    pub fn free(labels: Vec<String>) -> Self {
        GroupPresentation { labels, relators: Vec::new(), audit: Vec::new() }
    }

    fn check_words(&self) -> Result<()> {
        for r in &self.relators {
            self.check_word(&r.word)?;
        }
        Ok(())
    }

    pub(crate) fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.labels.len() => {
                Err(Error::GeneratorOutOfRange { index: g, n_generators: self.labels.len() })
            }
            _ => Ok(()),
        }
    }

    pub fn n_generators(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn relator_words(&self) -> impl Iterator<Item = &Word> {
        self.relators.iter().map(|r| &r.word)
    }

    pub fn audit(&self) -> &[AuditEntry] {
        &self.audit
    }

    /// Appends relators that define a quotient group (not a Tietze move).
    pub fn with_quotient_relators(mut self, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        for w in words {
            self.check_word(&w)?;
            self.audit.push(AuditEntry::QuotientRelator { word: w.render(&self.labels) });
            self.relators.push(Relator { word: w, redundant: false });
        }
        Ok(self)
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn abelianization_matrix(&self) -> Matrix<BigInt> {
        let n = self.n_generators();
        Matrix::from_rows_with_cols(
            n,
            self.relators.iter().map(|r| r.word.exponent_sums(n).into_iter().map(BigInt::from).collect()).collect(),
        )
    }

    pub fn abelian_invariants(&self) -> AbelianInvariants {
        let s = snf(&self.abelianization_matrix());
        let factors = s.invariant_factors();
        AbelianInvariants {
            free_rank: self.n_generators() - factors.len(),
            torsion: factors.into_iter().filter(|d| *d != BigInt::from(1)).collect(),
        }
    }

    /// `< g0 g1 ... | w1, w2, ... >`
    pub fn render(&self) -> String {
        let words: Vec<String> = self.relators.iter().map(|r| r.word.render(&self.labels)).collect();
        if words.is_empty() {
            format!("< {} | >", self.labels.join(" "))
        } else {
            format!("< {} | {} >", self.labels.join(" "), words.join(", "))
        }
    }

    /// Parses the text produced by [`Self::render`].
    pub fn parse(text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .ok_or_else(|| Error::Parse("presentation must be enclosed in < >".into()))?;
        let (gens, rels) = body.split_once('|').ok_or_else(|| Error::Parse("missing '|'".into()))?;
        let labels: Vec<String> = gens.split_whitespace().map(str::to_string).collect();
        let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();
        if index.len() != labels.len() {
            return Err(Error::Parse("repeated generator label".into()));
        }
        let mut words = Vec::new();
        for chunk in rels.split(',').map(str::trim).filter(|c| !c.is_empty()) {
            let mut letters = Vec::new();
            for token in chunk.split_whitespace() {
                if token == "1" {
                    continue;
                }
                let (name, exp) = match token.split_once('^') {
                    Some((n, e)) => {
                        (n, e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?)
                    }
                    None => (token, 1),
                };
                let g = *index.get(name).ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
                letters.push(Letter { generator: g, exponent: exp });
            }
            words.push(Word::new(letters));
        }
        Self::new(labels, words)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Conjugating words `x` attached to incident (point, line) pairs; missing
/// entries are the empty word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConjugatorTable {
    entries: BTreeMap<(PointId, usize), Word>,
}

impl ConjugatorTable {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, point: PointId, line: usize, word: Word) {
        self.entries.insert((point, line), word);
    }

    pub fn get(&self, point: PointId, line: usize) -> Word {
        self.entries.get(&(point, line)).cloned().unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.values().all(Word::is_identity)
    }

    fn check<T: ExactField>(&self, lat: &IncidenceLattice<T>) -> Result<()> {
        for (&(point, line), w) in &self.entries {
            let incident = lat.point(point).map(|p| p.contains_line(line)).unwrap_or(false);
            if !incident {
                return Err(Error::ConjugatorKey { point: point.0, line });
            }
            if let Some(g) = w.max_generator().filter(|&g| g >= lat.n_lines()) {
                return Err(Error::GeneratorOutOfRange { index: g, n_generators: lat.n_lines() });
            }
        }
        Ok(())
    }
}

/// The product `M_p` of the (conjugated) generators of the lines through `p`,
/// in line-index order.
pub fn point_word<T: ExactField>(lat: &IncidenceLattice<T>, p: PointId, conj: &ConjugatorTable) -> Result<Word> {
    let point = lat.point(p)?;
    Ok(point
        .lines()
        .iter()
        .fold(Word::identity(), |acc, &l| acc.mul(&Word::generator(l).conjugate_by(&conj.get(p, l)))))
}

/// Presentation of the complement: one generator per line and, at every point
/// of multiplicity m, the relators `[Γ_j^{x_j}, M_p]` for each of its lines.
/// The last relator at each point follows from the others and is flagged.
pub fn pi1_presentation<T: ExactField>(lat: &IncidenceLattice<T>, conj: &ConjugatorTable) -> Result<GroupPresentation> {
    if let Some((i, j)) = lat.missing_pair() {
        return Err(Error::ParallelLines(i, j));
    }
    conj.check(lat)?;
    let mut relators = Vec::new();
    for point in lat.points() {
        let m_word = point_word(lat, point.id(), conj)?;
        let last = point.lines().len() - 1;
        for (k, &l) in point.lines().iter().enumerate() {
            let g = Word::generator(l).conjugate_by(&conj.get(point.id(), l));
            relators.push(Relator { word: Word::commutator(&g, &m_word), redundant: k == last });
        }
    }
    Ok(GroupPresentation { labels: generator_labels(lat.n_lines()), relators, audit: Vec::new() })
}

pub(crate) fn generator_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("g{i}")).collect()
}

/// `Γ_0 Γ_1 ⋯ Γ_{n−1}`, central in the group of an arrangement without parallels.
pub fn central_element<T: ExactField>(lat: &IncidenceLattice<T>) -> Word {
    Word::product_of(0..lat.n_lines())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::default_labels;
    use crate::Rational;

    fn pencil3() -> IncidenceLattice<Rational> {
        IncidenceLattice::from_abstract(default_labels(3), &[vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn pencil_presentation() {
        let p = pi1_presentation(&pencil3(), &ConjugatorTable::trivial()).unwrap();
        let m = Word::product_of([0, 1, 2]);
        let expected: Vec<Word> = (0..3).map(|i| Word::commutator(&Word::generator(i), &m)).collect();
        assert_eq!(p.relator_words().cloned().collect::<Vec<_>>(), expected);
        assert_eq!(p.relators().iter().filter(|r| r.redundant).count(), 1);
        assert!(p.relators()[2].redundant);
        assert_eq!(p.abelian_invariants(), AbelianInvariants { free_rank: 3, torsion: vec![] });
    }

    #[test]
    fn generic_presentation_is_pairwise_commutation() {
        let lat = IncidenceLattice::<Rational>::from_abstract(default_labels(3), &[]).unwrap();
        let p = pi1_presentation(&lat, &ConjugatorTable::trivial()).unwrap();
        assert_eq!(p.relators().len(), 6);
        // [g_i, g_i g_j] is a cyclic conjugate of [g_i, g_j]
        let first = p.relators()[0].word.cyclically_reduce();
        assert_eq!(first, Word::commutator(&Word::generator(0), &Word::generator(1)));
    }

    #[test]
    fn single_line() {
        let lat = IncidenceLattice::<Rational>::from_abstract(default_labels(1), &[]).unwrap();
        let p = pi1_presentation(&lat, &ConjugatorTable::trivial()).unwrap();
        assert_eq!(p.render(), "< g0 | >");
        assert_eq!(p.abelian_invariants().free_rank, 1);
    }

    #[test]
    fn conjugator_key_mismatch() {
        let lat = IncidenceLattice::<Rational>::from_abstract(default_labels(4), &[vec![0, 1, 2]]).unwrap();
        let mut conj = ConjugatorTable::trivial();
        conj.insert(PointId(0), 3, Word::generator(1));
        assert!(matches!(pi1_presentation(&lat, &conj), Err(Error::ConjugatorKey { point: 0, line: 3 })));
    }

    #[test]
    fn nontrivial_conjugators_are_used() {
        let lat = pencil3();
        let mut conj = ConjugatorTable::trivial();
        conj.insert(PointId(0), 1, Word::generator(2));
        let p = pi1_presentation(&lat, &conj).unwrap();
        let m = point_word(&lat, PointId(0), &conj).unwrap();
        assert_eq!(m.render(&generator_labels(3)), "g0 g2^-1 g1 g2^2");
        let conjugated = Word::generator(1).conjugate_by(&Word::generator(2));
        assert_eq!(p.relators()[1].word, Word::commutator(&conjugated, &m));
    }

    #[test]
    fn central_elements() {
        assert_eq!(central_element(&pencil3()), Word::product_of([0, 1, 2]));
        let lat = IncidenceLattice::<Rational>::from_abstract(default_labels(6), &[]).unwrap();
        assert_eq!(central_element(&lat).render(&generator_labels(6)), "g0 g1 g2 g3 g4 g5");
    }

    #[test]
    fn render_parse_round_trip() {
        let p = pi1_presentation(&pencil3(), &ConjugatorTable::trivial()).unwrap();
        let text = p.render();
        assert_eq!(GroupPresentation::parse(&text).unwrap().render(), text);
        assert!(GroupPresentation::parse("< a b | a c >").is_err());
        assert!(GroupPresentation::parse("a b | a").is_err());
    }
}
