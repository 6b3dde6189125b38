use super::{pi1_presentation, point_word, simplify, ConjugatorTable, GroupPresentation, Simplification, Word};
use crate::error::{Error, Result};
use crate::lattice::{IncidenceLattice, PointId};
use crate::scalar::ExactField;

/// Adds `words` as relators, passing to the quotient by their normal closure.
pub fn quotient_by(p: &GroupPresentation, words: impl IntoIterator<Item = Word>) -> Result<GroupPresentation> {
    p.clone().with_quotient_relators(words)
}

#[derive(Clone, Debug)]
pub struct PointQuotient {
    pub point: PointId,
    pub multiplicity: usize,
    /// The complement presentation with the killing relators appended.
    pub raw: GroupPresentation,
    pub simplification: Simplification,
}

impl PointQuotient {
    pub fn presentation(&self) -> &GroupPresentation {
        &self.simplification.presentation
    }

    /// Rank of the free group the quotient was reduced to.
    pub fn free_rank(&self) -> usize {
        self.presentation().n_generators()
    }
}

/// Quotient of the complement group by the generators of the lines missing
/// `q` and the product `M_q`; simplifies to a free group of rank `m − 1`.
pub fn point_quotient<T: ExactField>(lat: &IncidenceLattice<T>, q: PointId) -> Result<PointQuotient> {
    let point = lat.multiple_point(q)?;
    let m = point.multiplicity();
    let conj = ConjugatorTable::trivial();
    let p = pi1_presentation(lat, &conj)?;
    let killed = (0..lat.n_lines()).filter(|&l| !point.contains_line(l)).map(Word::generator);
    let m_word = point_word(lat, q, &conj)?;
    let raw = quotient_by(&p, killed.chain([m_word]))?;
    let simplification = simplify(&raw)?;
    let out = &simplification.presentation;
    if out.n_generators() != m - 1 || !out.relators().is_empty() {
        return Err(Error::CertificateFailed(format!(
            "point quotient at {q} reduced to {} instead of a free group of rank {}",
            out.render(),
            m - 1
        )));
    }
    Ok(PointQuotient { point: q, multiplicity: m, raw, simplification })
}
