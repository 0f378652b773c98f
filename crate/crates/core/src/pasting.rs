//! Executable pasting-lemma checker.
//!
//! The lemma: if every piece of a cover is open in the reflected topological
//! space (or every piece is closed and the family is locally finite, which is
//! automatic on a finite carrier), and every restriction of a map to a piece
//! is continuous for the subspace structure, then the glued map is
//! continuous. The checker evaluates hypotheses, piecewise continuity and the
//! conclusion independently of one another, so a counterexample would be
//! detected rather than assumed away.

use crate::spaces::{subspace, PseudoSpace, SpaceMap};
use crate::{Error, Result};

/// A cover of a pseudospace by subsets, with per-piece openness flags
/// computed against the reflected topological space.
#[derive(Clone, Debug)]
pub struct Cover {
    space: PseudoSpace,
    pieces: Vec<Vec<usize>>,
    flags: Vec<PieceFlags>,
}

/// Openness data for one piece of a cover.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PieceFlags {
    pub open: bool,
    pub closed: bool,
    /// Local finiteness of the family is automatic on a finite carrier; the
    /// flag is recorded so the hypothesis structure stays explicit.
    pub locally_finite: bool,
}

/// Hypothesis classification of a cover. A cover of clopen pieces counts as
/// `AllOpen`; the per-piece flags keep the full picture.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoverClass {
    AllOpen,
    AllClosed,
    Mixed,
}

impl Cover {
    /// Builds a cover from pieces given as label sets. The family must be
    /// nonempty and its union must be the whole carrier.
    pub fn from_labels<'a, I, P>(space: PseudoSpace, pieces: I) -> Result<Cover>
    where
        I: IntoIterator<Item = P>,
        P: IntoIterator<Item = &'a str>,
    {
        let pieces = pieces
            .into_iter()
            .map(|piece| {
                piece
                    .into_iter()
                    .map(|l| space.carrier().resolve(l))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Cover::new(space, pieces)
    }

    /// Builds a cover from pieces given as point indices.
    pub fn new(space: PseudoSpace, mut pieces: Vec<Vec<usize>>) -> Result<Cover> {
        if pieces.is_empty() {
            return Err(Error::MalformedCover("empty family of pieces".into()));
        }
        let mut covered = vec![false; space.len()];
        for piece in &mut pieces {
            piece.sort_unstable();
            piece.dedup();
            for &i in piece.iter() {
                if i >= space.len() {
                    return Err(Error::UnknownLabel(format!("point index {i}")));
                }
                covered[i] = true;
            }
        }
        if let Some(missing) = covered.iter().position(|&c| !c) {
            return Err(Error::MalformedCover(format!(
                "union misses point `{}`",
                space.carrier().label(missing)
            )));
        }
        let flags = pieces
            .iter()
            .map(|p| PieceFlags {
                open: space.is_open(p),
                closed: space.is_closed(p),
                locally_finite: true,
            })
            .collect();
        Ok(Cover { space, pieces, flags })
    }

    pub fn space(&self) -> &PseudoSpace {
        &self.space
    }

    pub fn pieces(&self) -> &[Vec<usize>] {
        &self.pieces
    }

    pub fn piece_flags(&self) -> &[PieceFlags] {
        &self.flags
    }

    pub fn classify(&self) -> CoverClass {
        if self.flags.iter().all(|f| f.open) {
            CoverClass::AllOpen
        } else if self.flags.iter().all(|f| f.closed && f.locally_finite) {
            CoverClass::AllClosed
        } else {
            CoverClass::Mixed
        }
    }

    /// Are the lemma hypotheses met?
    pub fn hypotheses_met(&self) -> bool {
        self.classify() != CoverClass::Mixed
    }

    /// Glues piecewise assignments into one raw map. `piece_maps[k][j]` is
    /// the target index of the `j`-th point of piece `k` (in piece order).
    /// The maps must agree on overlaps; continuity is *not* asserted here.
    pub fn glue(&self, piece_maps: &[Vec<usize>], target: &PseudoSpace) -> Result<SpaceMap> {
        if piece_maps.len() != self.pieces.len() {
            return Err(Error::MalformedCover(format!(
                "{} piece maps for {} pieces",
                piece_maps.len(),
                self.pieces.len()
            )));
        }
        let mut glued: Vec<Option<usize>> = vec![None; self.space.len()];
        for (piece, assignment) in self.pieces.iter().zip(piece_maps) {
            if piece.len() != assignment.len() {
                return Err(Error::MalformedCover(
                    "piece map length differs from piece size".into(),
                ));
            }
            for (&point, &value) in piece.iter().zip(assignment) {
                if value >= target.len() {
                    return Err(Error::UnknownLabel(format!("target index {value}")));
                }
                match glued[point] {
                    Some(v) if v != value => {
                        return Err(Error::OverlapDisagreement(
                            self.space.carrier().label(point).to_string(),
                        ))
                    }
                    _ => glued[point] = Some(value),
                }
            }
        }
        let assignment = glued
            .into_iter()
            .map(|v| v.expect("cover invariant: union is the whole carrier"))
            .collect();
        SpaceMap::from_indices(self.space.clone(), target.clone(), assignment)
    }

    /// Restriction of a piecewise assignment to piece `k`, as a map on the
    /// subspace structure.
    fn restriction(&self, k: usize, piece_map: &[usize], target: &PseudoSpace) -> Result<SpaceMap> {
        let sub = subspace(&self.space, &self.pieces[k])?;
        SpaceMap::from_indices(sub, target.clone(), piece_map.to_vec())
    }

    /// Evaluates the lemma's three ingredients independently.
    pub fn check_pasting(
        &self,
        piece_maps: &[Vec<usize>],
        target: &PseudoSpace,
    ) -> Result<PastingVerdict> {
        let glued = self.glue(piece_maps, target)?;
        let mut pieces_continuous = true;
        for (k, pm) in piece_maps.iter().enumerate() {
            if !self.restriction(k, pm, target)?.is_continuous() {
                pieces_continuous = false;
            }
        }
        Ok(PastingVerdict {
            classification: self.classify(),
            hypotheses_met: self.hypotheses_met(),
            pieces_continuous,
            glue_continuous: glued.is_continuous(),
        })
    }
}

/// The three independently computed ingredients of the pasting lemma.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PastingVerdict {
    pub classification: CoverClass,
    pub hypotheses_met: bool,
    pub pieces_continuous: bool,
    pub glue_continuous: bool,
}

impl PastingVerdict {
    /// True exactly when this instance contradicts the lemma.
    pub fn violates_lemma(&self) -> bool {
        self.hypotheses_met && self.pieces_continuous && !self.glue_continuous
    }
}

impl std::fmt::Display for PastingVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "hypotheses: {:?} (met: {})  pieces continuous: {}  glue continuous: {}",
            self.classification, self.hypotheses_met, self.pieces_continuous, self.glue_continuous
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::Carrier;

    fn space(labels: &[&str], edges: &[(&str, &str)]) -> PseudoSpace {
        PseudoSpace::from_edge_labels(
            Carrier::new(labels.iter().copied()).unwrap(),
            edges.iter().copied(),
        )
        .unwrap()
    }

    fn cover(s: &PseudoSpace, pieces: &[&[&str]]) -> Cover {
        Cover::from_labels(s.clone(), pieces.iter().map(|p| p.iter().copied())).unwrap()
    }

    #[test]
    fn total_piece_is_clopen() {
        let s = space(&["a", "b"], &[("a", "b")]);
        let c = cover(&s, &[&["a", "b"]]);
        assert_eq!(
            c.piece_flags()[0],
            PieceFlags { open: true, closed: true, locally_finite: true }
        );
        assert_eq!(c.classify(), CoverClass::AllOpen);
    }

    #[test]
    fn sierpinski_singletons_are_mixed() {
        let s = space(&["a", "b"], &[("a", "b")]);
        let c = cover(&s, &[&["a"], &["b"]]);
        assert_eq!(
            c.piece_flags()[0],
            PieceFlags { open: true, closed: false, locally_finite: true }
        );
        assert_eq!(
            c.piece_flags()[1],
            PieceFlags { open: false, closed: true, locally_finite: true }
        );
        assert_eq!(c.classify(), CoverClass::Mixed);
    }

    #[test]
    fn chain_two_piece_cover_is_mixed() {
        let s = space(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let c = cover(&s, &[&["a", "b"], &["b", "c"]]);
        assert!(c.piece_flags()[0].open && !c.piece_flags()[0].closed);
        assert!(c.piece_flags()[1].closed && !c.piece_flags()[1].open);
        assert_eq!(c.classify(), CoverClass::Mixed);
    }

    #[test]
    fn union_must_cover() {
        let s = space(&["a", "b"], &[]);
        assert!(matches!(
            Cover::from_labels(s.clone(), [["a"]]),
            Err(Error::MalformedCover(_))
        ));
        assert!(matches!(Cover::new(s, vec![]), Err(Error::MalformedCover(_))));
    }

    #[test]
    fn glue_compatible_constants() {
        let s = space(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let y = space(&["y"], &[]);
        let c = cover(&s, &[&["a", "b"], &["b", "c"]]);
        let glued = c.glue(&[vec![0, 0], vec![0, 0]], &y).unwrap();
        assert_eq!(glued.assignment(), &[0, 0, 0]);
    }

    #[test]
    fn glue_reports_overlap_witness() {
        let s = space(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let y = PseudoSpace::discrete(Carrier::new(["0", "1"]).unwrap());
        let c = cover(&s, &[&["a", "b"], &["b", "c"]]);
        let err = c.glue(&[vec![0, 0], vec![1, 1]], &y).unwrap_err();
        assert_eq!(err, Error::OverlapDisagreement("b".into()));
    }

    /// The shipped counterexample: a Mixed cover with continuous pieces whose
    /// glue is discontinuous, showing the hypotheses are necessary.
    #[test]
    fn mixed_cover_counterexample() {
        let s = space(&["a", "b"], &[("a", "b")]);
        let y = PseudoSpace::discrete(Carrier::new(["0", "1"]).unwrap());
        let c = cover(&s, &[&["a"], &["b"]]);
        let verdict = c.check_pasting(&[vec![0], vec![1]], &y).unwrap();
        assert_eq!(verdict.classification, CoverClass::Mixed);
        assert!(!verdict.hypotheses_met);
        assert!(verdict.pieces_continuous);
        assert!(!verdict.glue_continuous);
        assert!(!verdict.violates_lemma());
    }

    #[test]
    fn closed_cover_glues_identity() {
        let s = space(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let c = cover(&s, &[&["a", "b", "c"], &["b", "c"]]);
        assert_eq!(c.classify(), CoverClass::AllClosed);
        let verdict = c.check_pasting(&[vec![0, 1, 2], vec![1, 2]], &s).unwrap();
        assert!(verdict.hypotheses_met && verdict.pieces_continuous && verdict.glue_continuous);
    }

    #[test]
    fn open_cover_with_continuous_pieces_glues_continuously() {
        // Disjoint open halves mapped independently.
        let s = space(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]);
        let y = space(&["u", "v"], &[("u", "v")]);
        let c = cover(&s, &[&["a", "b"], &["c", "d"]]);
        assert_eq!(c.classify(), CoverClass::AllOpen);
        let verdict = c.check_pasting(&[vec![0, 1], vec![1, 1]], &y).unwrap();
        assert!(verdict.glue_continuous);
        assert!(!verdict.violates_lemma());
    }
}
