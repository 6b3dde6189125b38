//! Tietze moves and a small simplification engine built from them.

use serde::Serialize;

use super::{AbelianInvariants, AuditEntry, GroupPresentation, Relator, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TietzeStep {
    /// T1: add a relator the caller asserts holds in the group.
    AddRelator(Word),
    /// T2: drop a relator the caller asserts follows from the rest.
    RemoveRelator(usize),
    /// T3: add a generator `label` together with the relator `word · label⁻¹`.
    AddGenerator { word: Word, label: String },
    /// T4: eliminate a generator using a relator in which it occurs once.
    EliminateGenerator(usize),
}

/// Applies one Tietze move.
pub fn tietze(p: &GroupPresentation, step: TietzeStep) -> Result<GroupPresentation> {
    match step {
        TietzeStep::AddRelator(w) => {
            p.check_word(&w)?;
            let mut out = p.clone();
            out.audit.push(AuditEntry::AssertedConsequence { word: w.render(&p.labels) });
            out.relators.push(Relator { word: w, redundant: false });
            Ok(out)
        }
        TietzeStep::RemoveRelator(k) => {
            let mut out = remove_relator(p, k)?;
            out.audit.push(AuditEntry::AssertedRedundant { word: p.relators[k].word.render(&p.labels) });
            Ok(out)
        }
        TietzeStep::AddGenerator { word, label } => {
            p.check_word(&word)?;
            if p.labels.contains(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            let mut out = p.clone();
            let z = out.labels.len();
            out.labels.push(label);
            out.relators.push(Relator { word: word.mul(&Word::power(z, -1)), redundant: false });
            Ok(out)
        }
        TietzeStep::EliminateGenerator(z) => eliminate(p, z),
    }
}

fn remove_relator(p: &GroupPresentation, k: usize) -> Result<GroupPresentation> {
    if k >= p.relators.len() {
        return Err(Error::RelatorOutOfRange { index: k, n_relators: p.relators.len() });
    }
    let mut out = p.clone();
    out.relators.remove(k);
    Ok(out)
}

/// Position of the single letter `z^±1` in `w`, if `z` occurs exactly once.
fn single_occurrence(w: &Word, z: usize) -> Option<usize> {
    let mut hits = w.letters().iter().enumerate().filter(|(_, l)| l.generator == z);
    let (pos, letter) = hits.next()?;
    (hits.next().is_none() && letter.exponent.abs() == 1).then_some(pos)
}

fn eliminate(p: &GroupPresentation, z: usize) -> Result<GroupPresentation> {
    if z >= p.n_generators() {
        return Err(Error::GeneratorOutOfRange { index: z, n_generators: p.n_generators() });
    }
    let (k, pos) = p
        .relators
        .iter()
        .enumerate()
        .filter_map(|(k, r)| single_occurrence(&r.word, z).map(|pos| (k, pos)))
        .min_by_key(|&(k, _)| (p.relators[k].word.length(), k))
        .ok_or_else(|| Error::NotEliminable(p.labels[z].clone()))?;

    // r = u z^e v = 1  gives  z = (v u)^(-e)
    let letters = p.relators[k].word.letters();
    let u = Word::new(letters[..pos].iter().copied());
    let v = Word::new(letters[pos + 1..].iter().copied());
    let e = letters[pos].exponent;
    let value = v.mul(&u).pow(-e);

    let shift = |g: usize| Some(if g > z { g - 1 } else { g });
    let mut out = p.clone();
    out.labels.remove(z);
    out.relators = p
        .relators
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, r)| Relator { word: r.word.substitute(z, &value).map_generators(shift), redundant: r.redundant })
        .collect();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: String,
    pub before: AbelianInvariants,
    pub after: AbelianInvariants,
}

impl StepRecord {
    pub fn preserved(&self) -> bool {
        self.before == self.after
    }
}

#[derive(Clone, Debug)]
pub struct Simplification {
    pub presentation: GroupPresentation,
    pub steps: Vec<StepRecord>,
}

impl Simplification {
    /// Every applied move left the abelianization unchanged.
    pub fn all_preserved(&self) -> bool {
        self.steps.iter().all(StepRecord::preserved)
    }
}

enum Move {
    Drop(usize, &'static str),
    Eliminate(usize, usize),
}

fn next_move(p: &GroupPresentation) -> Option<Move> {
    if let Some(k) = p.relators.iter().position(|r| r.word.is_identity()) {
        return Some(Move::Drop(k, "trivial"));
    }
    for (k, r) in p.relators.iter().enumerate() {
        let inv = r.word.inverse().cyclically_reduce();
        if p.relators[..k].iter().any(|s| s.word == r.word || s.word == inv) {
            return Some(Move::Drop(k, "duplicate"));
        }
    }
    p.relators
        .iter()
        .enumerate()
        .flat_map(|(k, r)| {
            (0..p.n_generators()).filter(|&g| single_occurrence(&r.word, g).is_some()).map(move |g| (k, g))
        })
        .min_by_key(|&(k, g)| (p.relators[k].word.length(), std::cmp::Reverse(g), k))
        .map(|(k, g)| Move::Eliminate(k, g))
}

/// Cyclically reduces relators, then repeatedly drops trivial or duplicate
/// relators (T2) and eliminates generators that occur exactly once in some
/// relator (T4, preferring the shortest relator and the highest generator
/// index). Every move is recorded with the abelian invariants around it.
pub fn simplify(p: &GroupPresentation) -> Result<Simplification> {
    let mut current = p.clone();
    for r in current.relators.iter_mut() {
        r.word = r.word.cyclically_reduce();
    }
    let mut steps = Vec::new();
    while let Some(mv) = next_move(&current) {
        let before = current.abelian_invariants();
        let (next, description) = match mv {
            Move::Drop(k, why) => {
                let text = format!("T2 drop {why} relator {}", current.relators[k].word.render(&current.labels));
                (remove_relator(&current, k)?, text)
            }
            Move::Eliminate(k, g) => {
                let text = format!(
                    "T4 eliminate {} using {}",
                    current.labels[g],
                    current.relators[k].word.render(&current.labels)
                );
                (eliminate(&current, g)?, text)
            }
        };
        current = next;
        for r in current.relators.iter_mut() {
            r.word = r.word.cyclically_reduce();
        }
        steps.push(StepRecord { step: description, before, after: current.abelian_invariants() });
    }
    Ok(Simplification { presentation: current, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::default_labels;
    use crate::lattice::IncidenceLattice;
    use crate::presentation::{pi1_presentation, ConjugatorTable};
    use crate::Rational;

    fn pencil3() -> GroupPresentation {
        let lat = IncidenceLattice::<Rational>::from_abstract(default_labels(3), &[vec![0, 1, 2]]).unwrap();
        pi1_presentation(&lat, &ConjugatorTable::trivial()).unwrap()
    }

    #[test]
    fn t3_then_t4_round_trip() {
        let p = pencil3();
        let added = tietze(
            &p,
            TietzeStep::AddGenerator { word: Word::product_of([0, 1]), label: "z".into() },
        )
        .unwrap();
        assert_eq!(added.n_generators(), 4);
        let back = tietze(&added, TietzeStep::EliminateGenerator(3)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn t4_on_single_relator() {
        let p = GroupPresentation::parse("< a b | a b^-1 >").unwrap();
        let q = tietze(&p, TietzeStep::EliminateGenerator(1)).unwrap();
        assert_eq!(q.render(), "< a | >");
    }

    #[test]
    fn t4_substitutes_into_other_relators() {
        let p = GroupPresentation::parse("< a b c | c a^-1 b^-1, a c a^-1 c^-1 >").unwrap();
        let q = tietze(&p, TietzeStep::EliminateGenerator(2)).unwrap();
        // c = b a
        assert_eq!(q.render(), "< a b | a b a^-1 b^-1 >");
    }

    #[test]
    fn t4_precondition() {
        let p = GroupPresentation::parse("< a b | a b a b^-1 >").unwrap();
        assert!(matches!(tietze(&p, TietzeStep::EliminateGenerator(1)), Err(Error::NotEliminable(_))));
        assert!(matches!(tietze(&p, TietzeStep::EliminateGenerator(5)), Err(Error::GeneratorOutOfRange { .. })));
    }

    #[test]
    fn t1_restores_removed_relator() {
        let p = pencil3();
        let missing = p.relators()[2].word.clone();
        let dropped = tietze(&p, TietzeStep::RemoveRelator(2)).unwrap();
        assert_eq!(dropped.abelian_invariants().free_rank, 3);
        let restored = tietze(&dropped, TietzeStep::AddRelator(missing)).unwrap();
        assert_eq!(restored.abelian_invariants().free_rank, 3);
        assert_eq!(restored.audit().len(), 2);
        assert!(matches!(restored.audit()[1], AuditEntry::AssertedConsequence { .. }));
    }

    #[test]
    fn t2_and_t3_errors() {
        let p = pencil3();
        assert!(matches!(tietze(&p, TietzeStep::RemoveRelator(9)), Err(Error::RelatorOutOfRange { .. })));
        let dup = TietzeStep::AddGenerator { word: Word::identity(), label: "g0".into() };
        assert!(matches!(tietze(&p, dup), Err(Error::DuplicateLabel(_))));
        assert!(tietze(&p, TietzeStep::AddRelator(Word::generator(7))).is_err());
    }

    #[test]
    fn simplify_kills_trivial_and_eliminates() {
        let p = GroupPresentation::parse("< a b c | b, c a^-1, a b a^-1 b^-1 >").unwrap();
        let s = simplify(&p).unwrap();
        assert!(s.all_preserved());
        assert_eq!(s.presentation.render(), "< a | >");
    }
}
