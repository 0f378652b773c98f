//! Convergence groups: finite group tables married to convergence
//! structures, with the group-object predicates.
//!
//! Construction validates the group axioms exhaustively (all triples) and
//! derives the inversion table; the type promises a group, never continuity.
//! Continuity is what the predicates test: a pseudotopological group has
//! jointly continuous multiplication and continuous inversion, a
//! quasitopological group has a topological structure with continuous
//! inversion and continuous translations, and a topological group is both.

use crate::spaces::{product, PointedSpace, PseudoSpace, SpaceMap};
use crate::{Error, Result};

/// A finite group table on the points of a pseudospace.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConvergenceGroup {
    space: PseudoSpace,
    unit: usize,
    /// Row-major multiplication table: `mult[a * n + b] = a·b`.
    mult: Vec<usize>,
    inv: Vec<usize>,
}

impl ConvergenceGroup {
    /// Validates the table (closure, unit, associativity, inverses) and
    /// derives the inversion table.
    pub fn new(space: PseudoSpace, unit: usize, mult: Vec<usize>) -> Result<ConvergenceGroup> {
        let n = space.len();
        if n == 0 {
            return Err(Error::MalformedGroup("a group has at least the unit".into()));
        }
        if unit >= n {
            return Err(Error::MalformedGroup("unit is not a point".into()));
        }
        if mult.len() != n * n {
            return Err(Error::MalformedGroup(format!(
                "table has {} entries for {n} points",
                mult.len()
            )));
        }
        if mult.iter().any(|&v| v >= n) {
            return Err(Error::MalformedGroup("table entry out of range".into()));
        }
        let at = |a: usize, b: usize| mult[a * n + b];
        for a in 0..n {
            if at(unit, a) != a || at(a, unit) != a {
                return Err(Error::MalformedGroup(format!(
                    "`{}` is not a two-sided unit",
                    space.carrier().label(unit)
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::MalformedGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            space.carrier().label(a),
                            space.carrier().label(b),
                            space.carrier().label(c)
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            match (0..n).find(|&b| at(a, b) == unit && at(b, a) == unit) {
                Some(b) => *slot = b,
                None => {
                    return Err(Error::MalformedGroup(format!(
                        "`{}` has no inverse",
                        space.carrier().label(a)
                    )))
                }
            }
        }
        Ok(ConvergenceGroup { space, unit, mult, inv })
    }

    /// Builds the table from `(a, b, a·b)` label triples; every pair must be
    /// assigned.
    pub fn from_label_table<'a, I>(
        space: PseudoSpace,
        unit: &str,
        entries: I,
    ) -> Result<ConvergenceGroup>
    where
        I: IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    {
        let n = space.len();
        let unit = space.carrier().resolve(unit)?;
        let mut mult = vec![usize::MAX; n * n];
        for (a, b, v) in entries {
            let (a, b, v) = (
                space.carrier().resolve(a)?,
                space.carrier().resolve(b)?,
                space.carrier().resolve(v)?,
            );
            if mult[a * n + b] != usize::MAX && mult[a * n + b] != v {
                return Err(Error::MalformedGroup(format!(
                    "conflicting entries for {}.{}",
                    space.carrier().label(a),
                    space.carrier().label(b)
                )));
            }
            mult[a * n + b] = v;
        }
        if let Some(hole) = mult.iter().position(|&v| v == usize::MAX) {
            return Err(Error::MalformedGroup(format!(
                "missing table entry for {}.{}",
                space.carrier().label(hole / n),
                space.carrier().label(hole % n)
            )));
        }
        ConvergenceGroup::new(space, unit, mult)
    }

    pub fn space(&self) -> &PseudoSpace {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.space.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.space.len() + b]
    }

    pub fn mult_table(&self) -> &[usize] {
        &self.mult
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// The space pointed at the unit.
    pub fn pointed(&self) -> PointedSpace {
        PointedSpace {
            space: self.space.clone(),
            basepoint: self.unit,
        }
    }

    /// Multiplication as a map `G × G → G`.
    pub fn multiplication_map(&self) -> SpaceMap {
        SpaceMap::from_indices(
            product(&self.space, &self.space),
            self.space.clone(),
            self.mult.clone(),
        )
        .expect("table is a valid assignment")
    }

    /// Inversion as a self-map of `G`.
    pub fn inversion_map(&self) -> SpaceMap {
        SpaceMap::from_indices(self.space.clone(), self.space.clone(), self.inv.clone())
            .expect("inversion is a valid assignment")
    }

    /// Left translation `x ↦ g·x`.
    pub fn left_translation(&self, g: usize) -> SpaceMap {
        let n = self.space.len();
        SpaceMap::from_indices(
            self.space.clone(),
            self.space.clone(),
            (0..n).map(|x| self.mult(g, x)).collect(),
        )
        .expect("translation is a valid assignment")
    }

    /// Right translation `x ↦ x·g`.
    pub fn right_translation(&self, g: usize) -> SpaceMap {
        let n = self.space.len();
        SpaceMap::from_indices(
            self.space.clone(),
            self.space.clone(),
            (0..n).map(|x| self.mult(x, g)).collect(),
        )
        .expect("translation is a valid assignment")
    }

    /// Group object of the pseudospace category: multiplication (on the
    /// product structure) and inversion are continuous.
    pub fn is_pstop_group(&self) -> bool {
        self.multiplication_map().is_continuous() && self.inversion_map().is_continuous()
    }

    /// Quasitopological group: the structure is topological, inversion is
    /// continuous, and every left and right translation is continuous.
    /// Joint continuity of multiplication is not required.
    pub fn is_quasitop_group(&self) -> bool {
        self.space.is_topological()
            && self.inversion_map().is_continuous()
            && (0..self.space.len()).all(|g| {
                self.left_translation(g).is_continuous()
                    && self.right_translation(g).is_continuous()
            })
    }

    /// Topological group: a topological structure that is also a group
    /// object, i.e. jointly continuous multiplication and continuous
    /// inversion.
    pub fn is_top_group(&self) -> bool {
        self.space.is_topological() && self.is_pstop_group()
    }
}
