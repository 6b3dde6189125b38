//! Direct-sum decision: a forest graph yields the predicted decomposition, a
//! cycle yields a rank-gap certificate.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::ProjectiveClosure;
use crate::graph::{build_graph, CycleWitness};
use crate::lattice::PointId;
use crate::lcs::g2g3;
use crate::presentation::{
    central_element, pi1_presentation, point_quotient, quotient_by, simplify, AbelianInvariants, ConjugatorTable,
    GroupPresentation, StepRecord, Word,
};
use crate::scalar::ExactField;

/// Predicted `π₁ ≅ F_{m₁−1} ⊕ ⋯ ⊕ F_{m_k−1} ⊕ ℤ^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    /// Multiple points with the rank `m − 1` of their free factor.
    pub summands: Vec<(PointId, usize)>,
    pub free_abelian_rank: usize,
    pub total_lines: usize,
}

impl DecompositionReport {
    /// Sum of summand ranks plus `l` recovers the number of lines.
    pub fn is_consistent(&self) -> bool {
        self.summands.iter().map(|s| s.1).sum::<usize>() + self.free_abelian_rank == self.total_lines
    }
}

#[derive(Clone, Debug)]
pub struct ObstructionCertificate {
    pub cycle: CycleWitness,
    /// Lines through some point of the cycle.
    pub participating_lines: Vec<usize>,
    /// `Σ (mᵢ − 1)` over the cycle points.
    pub b: usize,
    /// Presentation of `H`: the complement group with the non-participating
    /// lines and the central product killed, before simplification.
    pub raw_presentation: GroupPresentation,
    pub quotient_presentation: GroupPresentation,
    pub steps: Vec<StepRecord>,
    pub abelianization: AbelianInvariants,
    pub rank_h_ab: usize,
}

impl ObstructionCertificate {
    pub fn gap_holds(&self) -> bool {
        self.rank_h_ab < self.b
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    DirectSum(DecompositionReport),
    Obstructed(Box<ObstructionCertificate>),
}

#[derive(Clone, Debug)]
pub struct ClassificationOutcome {
    pub beta: usize,
    pub verdict: Verdict,
}

impl ClassificationOutcome {
    pub fn is_direct_sum(&self) -> bool {
        matches!(self.verdict, Verdict::DirectSum(_))
    }
}

fn require_affine<T: ExactField>(pc: &ProjectiveClosure<T>) -> Result<()> {
    match pc.base().missing_pair() {
        Some((i, j)) => Err(Error::ParallelLines(i, j)),
        None => Ok(()),
    }
}

fn decomposition<T: ExactField>(pc: &ProjectiveClosure<T>) -> DecompositionReport {
    let base = pc.base();
    let summands: Vec<(PointId, usize)> = base.multiple_points().map(|p| (p.id(), p.multiplicity() - 1)).collect();
    let used: usize = summands.iter().map(|s| s.1).sum();
    DecompositionReport { summands, free_abelian_rank: base.n_lines() - used, total_lines: base.n_lines() }
}

/// Classifies the closure of an affine arrangement without parallels.
pub fn classify<T: ExactField>(pc: &ProjectiveClosure<T>) -> Result<ClassificationOutcome> {
    require_affine(pc)?;
    let graph = build_graph(pc);
    let beta = graph.beta();
    let verdict = if beta == 0 {
        Verdict::DirectSum(decomposition(pc))
    } else {
        let cycle = graph.find_minimal_cycle().ok_or(Error::NoCycle)?;
        Verdict::Obstructed(Box::new(build_certificate(pc, &cycle)?))
    };
    Ok(ClassificationOutcome { beta, verdict })
}

/// Builds the rank-gap certificate for a minimal cycle of the graph.
pub fn build_certificate<T: ExactField>(pc: &ProjectiveClosure<T>, cycle: &CycleWitness) -> Result<ObstructionCertificate> {
    require_affine(pc)?;
    cycle.verify(pc.closed())?;
    let base = pc.base();
    if let Some(p) = cycle.points.iter().find(|p| p.0 >= base.points().len()) {
        return Err(Error::CycleMismatch(format!("{p} lies on the line at infinity")));
    }
    let mut participating = BTreeSet::new();
    let mut b = 0;
    for &p in &cycle.points {
        let point = base.multiple_point(p)?;
        participating.extend(point.lines().iter().copied());
        b += point.multiplicity() - 1;
    }
    if b != participating.len() {
        return Err(Error::CertificateFailed(format!(
            "cycle is not minimal: b = {b} but {} lines participate",
            participating.len()
        )));
    }

    let p = pi1_presentation(base, &ConjugatorTable::trivial())?;
    let killed = (0..base.n_lines()).filter(|l| !participating.contains(l)).map(Word::generator);
    let raw = quotient_by(&p, killed.chain([central_element(base)]))?;
    let simplified = simplify(&raw)?;
    if !simplified.all_preserved() {
        return Err(Error::CertificateFailed("a Tietze step changed the abelianization".into()));
    }
    let abelianization = simplified.presentation.abelian_invariants();
    if abelianization != raw.abelian_invariants() {
        return Err(Error::CertificateFailed("simplified quotient has a different abelianization".into()));
    }
    let rank_h_ab = abelianization.free_rank;
    if rank_h_ab + 1 > b {
        return Err(Error::CertificateFailed(format!("rank of H_ab is {rank_h_ab}, not below b = {b}")));
    }
    Ok(ObstructionCertificate {
        cycle: cycle.clone(),
        participating_lines: participating.into_iter().collect(),
        b,
        raw_presentation: raw,
        quotient_presentation: simplified.presentation,
        steps: simplified.steps,
        abelianization,
        rank_h_ab,
    })
}

/// Independent invariants compared against the predicted decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanConsistency {
    pub abelian_rank: usize,
    pub abelian_torsion_free: bool,
    pub predicted_abelian_rank: usize,
    pub g2g3_rank: usize,
    pub predicted_g2g3_rank: usize,
    /// Point and free rank of its quotient.
    pub point_quotients: Vec<(PointId, usize)>,
    pub holds: bool,
}

pub fn fan_consistency_report<T: ExactField>(pc: &ProjectiveClosure<T>) -> Result<FanConsistency> {
    require_affine(pc)?;
    let beta = build_graph(pc).beta();
    if beta != 0 {
        return Err(Error::NotForest(beta));
    }
    let base = pc.base();
    let report = decomposition(pc);
    let ab = pi1_presentation(base, &ConjugatorTable::trivial())?.abelian_invariants();
    let predicted_abelian_rank = report.summands.iter().map(|s| s.1).sum::<usize>() + report.free_abelian_rank;
    let g2g3_rank = g2g3(base)?.total_rank();
    let predicted_g2g3_rank = report.summands.iter().map(|&(_, r)| r * r.saturating_sub(1) / 2).sum();
    let point_quotients = report
        .summands
        .iter()
        .map(|&(p, _)| point_quotient(base, p).map(|q| (p, q.free_rank())))
        .collect::<Result<Vec<_>>>()?;
    let holds = ab.free_rank == predicted_abelian_rank
        && ab.torsion.is_empty()
        && g2g3_rank == predicted_g2g3_rank
        && report.summands.iter().zip(&point_quotients).all(|(s, q)| s.1 == q.1);
    Ok(FanConsistency {
        abelian_rank: ab.free_rank,
        abelian_torsion_free: ab.torsion.is_empty(),
        predicted_abelian_rank,
        g2g3_rank,
        predicted_g2g3_rank,
        point_quotients,
        holds,
    })
}

/// True when every lattice-computable invariant matches the decomposition
/// predicted for a forest.
pub fn fan_decomposition_consistency<T: ExactField>(pc: &ProjectiveClosure<T>) -> Result<bool> {
    Ok(fan_consistency_report(pc)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::default_labels;
    use crate::lattice::IncidenceLattice;
    use crate::Rational;

    fn closure(n: usize, points: &[Vec<usize>]) -> ProjectiveClosure<Rational> {
        ProjectiveClosure::of_complete(&IncidenceLattice::from_abstract(default_labels(n), points).unwrap()).unwrap()
    }

    fn triangle() -> ProjectiveClosure<Rational> {
        closure(6, &[vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5]])
    }

    #[test]
    fn pencil_is_direct_sum() {
        let out = classify(&closure(3, &[vec![0, 1, 2]])).unwrap();
        assert_eq!(out.beta, 0);
        match out.verdict {
            Verdict::DirectSum(r) => {
                assert_eq!(r.summands, vec![(PointId(0), 2)]);
                assert_eq!(r.free_abelian_rank, 1);
                assert!(r.is_consistent());
            }
            Verdict::Obstructed(_) => panic!("expected a direct sum"),
        }
    }

    #[test]
    fn generic_is_free_abelian() {
        let out = classify(&closure(3, &[])).unwrap();
        let Verdict::DirectSum(r) = out.verdict else { panic!() };
        assert!(r.summands.is_empty());
        assert_eq!(r.free_abelian_rank, 3);
    }

    #[test]
    fn triangle_is_obstructed() {
        let out = classify(&triangle()).unwrap();
        assert_eq!(out.beta, 1);
        let Verdict::Obstructed(c) = out.verdict else { panic!() };
        assert_eq!(c.b, 6);
        assert_eq!(c.participating_lines, (0..6).collect::<Vec<_>>());
        assert_eq!(c.rank_h_ab, 5);
        assert!(c.gap_holds());
        assert!(c.steps.iter().all(StepRecord::preserved));
    }

    #[test]
    fn two_triangles_each_cycle() {
        let pc = closure(12, &[
            vec![0, 1, 3],
            vec![0, 2, 4],
            vec![1, 2, 5],
            vec![6, 7, 9],
            vec![6, 8, 10],
            vec![7, 8, 11],
        ]);
        let out = classify(&pc).unwrap();
        assert_eq!(out.beta, 2);
        let second = CycleWitness { points: vec![PointId(3), PointId(4), PointId(5)], lines: vec![6, 8, 7] };
        let c = build_certificate(&pc, &second).unwrap();
        assert_eq!(c.b, 6);
        assert_eq!(c.rank_h_ab, 5);
    }

    #[test]
    fn certificate_rejects_bad_cycles() {
        let pc = triangle();
        let bogus = CycleWitness { points: vec![PointId(0), PointId(1)], lines: vec![0, 0] };
        assert!(matches!(build_certificate(&pc, &bogus), Err(Error::CycleMismatch(_))));
        let pencil = closure(3, &[vec![0, 1, 2]]);
        assert!(pencil.closed().multiple_points().count() == 1);
        assert!(build_graph(&pencil).find_minimal_cycle().is_none());
    }

    #[test]
    fn fan_consistency() {
        assert!(fan_decomposition_consistency(&closure(3, &[vec![0, 1, 2]])).unwrap());
        assert!(fan_decomposition_consistency(&closure(4, &[vec![0, 1, 2]])).unwrap());
        assert!(fan_decomposition_consistency(&closure(3, &[])).unwrap());
        assert!(fan_decomposition_consistency(&closure(7, &[vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]])).unwrap());
        assert!(matches!(fan_decomposition_consistency(&triangle()), Err(Error::NotForest(1))));
    }
}
