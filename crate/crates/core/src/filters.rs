//! Filter algebra on finite sets.
//!
//! On a finite carrier every filter is principal: it equals the set of all
//! supersets of a unique nonempty core, so a filter is stored by that core
//! alone. Equality is core equality, the ultrafilters are exactly the filters
//! with a one-element core, and the improper filter (empty core) is rejected
//! everywhere. The undefined pullback is a value (`None`), not an error, so
//! property suites can quantify over it.

use crate::carrier::{Carrier, SetMap};
use crate::{Error, Result};
use std::fmt;

/// A proper filter on a finite carrier, stored by its smallest member.
///
/// The member set is `{ S ⊆ carrier | S ⊇ core }`; it is never materialized.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteFilter {
    carrier: Carrier,
    core: Vec<usize>, // sorted, deduplicated, nonempty
}

impl FiniteFilter {
    /// The filter of all supersets of `core`, given by labels.
    pub fn from_core_labels<'a, I>(carrier: Carrier, core: I) -> Result<FiniteFilter>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let core = core
            .into_iter()
            .map(|l| carrier.resolve(l))
            .collect::<Result<Vec<usize>>>()?;
        FiniteFilter::from_core(carrier, core)
    }

    /// The filter of all supersets of `core`, given by point indices.
    pub fn from_core(carrier: Carrier, mut core: Vec<usize>) -> Result<FiniteFilter> {
        core.sort_unstable();
        core.dedup();
        if core.is_empty() {
            return Err(Error::EmptyCore);
        }
        if let Some(&bad) = core.iter().find(|&&i| i >= carrier.len()) {
            return Err(Error::UnknownLabel(format!("point index {bad}")));
        }
        Ok(FiniteFilter { carrier, core })
    }

    /// The principal ultrafilter at `x`.
    pub fn principal(carrier: Carrier, x: usize) -> Result<FiniteFilter> {
        FiniteFilter::from_core(carrier, vec![x])
    }

    /// The trivial filter `{carrier}` (whole-carrier core).
    pub fn trivial(carrier: Carrier) -> Result<FiniteFilter> {
        let core = (0..carrier.len()).collect();
        FiniteFilter::from_core(carrier, core)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn core(&self) -> &[usize] {
        &self.core
    }

    pub fn core_labels(&self) -> impl Iterator<Item = &str> {
        self.core.iter().map(|&i| self.carrier.label(i))
    }

    pub fn is_ultrafilter(&self) -> bool {
        self.core.len() == 1
    }

    /// Membership test: `S` belongs to the filter iff `S ⊇ core`.
    pub fn contains(&self, set: &[usize]) -> bool {
        self.core.iter().all(|i| set.contains(i))
    }

    /// `self ⊆ other` as sets of members, i.e. every member of `self` is a
    /// member of `other`; equivalently `other.core ⊆ self.core`.
    pub fn is_contained_in(&self, other: &FiniteFilter) -> bool {
        self.carrier == other.carrier && other.core.iter().all(|i| self.core.contains(i))
    }

    /// All member sets, each as a sorted index vector. Exponential in the
    /// carrier size; meant for small carriers and oracle code.
    pub fn member_sets(&self) -> Vec<Vec<usize>> {
        let rest: Vec<usize> = (0..self.carrier.len())
            .filter(|i| !self.core.contains(i))
            .collect();
        let mut out = Vec::with_capacity(1 << rest.len());
        for mask in 0u64..1 << rest.len() {
            let mut s = self.core.clone();
            for (b, &i) in rest.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    s.push(i);
                }
            }
            s.sort_unstable();
            out.push(s);
        }
        out
    }
}

impl fmt::Debug for FiniteFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "↑{{")?;
        for (k, l) in self.core_labels().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// Pushforward `f∗F = {S | f⁻¹(S) ∈ F}`; on cores this is `↑f(core)`.
pub fn pushforward(f: &SetMap, filter: &FiniteFilter) -> Result<FiniteFilter> {
    if filter.carrier() != f.dom() {
        return Err(Error::CarrierMismatch(
            "pushforward: filter carrier differs from map domain".into(),
        ));
    }
    let core = f.image(filter.core());
    let result = FiniteFilter::from_core(f.cod().clone(), core)?;
    // The defining member rule and the core computation must agree.
    debug_assert!(
        f.cod().len() > 12 || pushforward_member_rule_holds(f, filter, &result),
        "pushforward core disagrees with the member rule"
    );
    Ok(result)
}

fn pushforward_member_rule_holds(f: &SetMap, filter: &FiniteFilter, result: &FiniteFilter) -> bool {
    crate::enumerate_subsets(f.cod().len())
        .all(|s| result.contains(&s) == filter.contains(&f.preimage(&s)))
}

/// Pullback `f∗F`, defined iff every member has nonempty preimage;
/// since the core is the smallest member, that is `f⁻¹(core) ≠ ∅`.
/// Returns `None` for the undefined outcome.
pub fn pullback(f: &SetMap, filter: &FiniteFilter) -> Result<Option<FiniteFilter>> {
    if filter.carrier() != f.cod() {
        return Err(Error::CarrierMismatch(
            "pullback: filter carrier differs from map codomain".into(),
        ));
    }
    let core = f.preimage(filter.core());
    if core.is_empty() {
        return Ok(None);
    }
    Ok(Some(FiniteFilter::from_core(f.dom().clone(), core)?))
}

/// Product filter on the product carrier, with core `core(F) × core(G)`.
pub fn filter_product(left: &FiniteFilter, right: &FiniteFilter) -> FiniteFilter {
    let carrier = left.carrier().product(right.carrier());
    let w = right.carrier().len();
    let core = left
        .core()
        .iter()
        .flat_map(|&i| right.core().iter().map(move |&j| i * w + j))
        .collect();
    FiniteFilter::from_core(carrier, core).expect("product of nonempty cores is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn carrier(labels: &[&str]) -> Carrier {
        Carrier::new(labels.iter().copied()).unwrap()
    }

    fn up(c: &Carrier, core: &[&str]) -> FiniteFilter {
        FiniteFilter::from_core_labels(c.clone(), core.iter().copied()).unwrap()
    }

    #[test]
    fn construction_and_rejection() {
        let c = carrier(&["0", "1", "2"]);
        let dot0 = up(&c, &["0"]);
        assert!(dot0.is_ultrafilter());
        let triv = FiniteFilter::trivial(c.clone()).unwrap();
        assert_eq!(triv.core(), &[0, 1, 2]);
        assert!(!triv.is_ultrafilter());
        assert_eq!(
            FiniteFilter::from_core(carrier(&["0", "1"]), vec![]),
            Err(Error::EmptyCore)
        );
        assert!(FiniteFilter::from_core_labels(c, ["7"].into_iter()).is_err());
    }

    #[test]
    fn equality_is_core_equality() {
        let c = carrier(&["0", "1"]);
        assert_eq!(up(&c, &["0", "1"]), up(&c, &["1", "0"]));
        assert_ne!(up(&c, &["0"]), up(&c, &["1"]));
    }

    // Oracle for the pushforward example: enumerate S with f⁻¹(S) ⊇ {0,1}
    // over the two-point codomain; exactly the supersets of {a} qualify.
    #[test]
    fn pushforward_matches_member_enumeration() {
        let x = carrier(&["0", "1", "2"]);
        let y = carrier(&["a", "b"]);
        let f = SetMap::from_pairs(x.clone(), y.clone(), [("0", "a"), ("1", "a"), ("2", "b")])
            .unwrap();
        let filter = up(&x, &["0", "1"]);

        let mut oracle_members = Vec::new();
        for s in crate::enumerate_subsets(y.len()) {
            if filter.contains(&f.preimage(&s)) {
                oracle_members.push(s);
            }
        }
        oracle_members.sort();
        let pushed = pushforward(&f, &filter).unwrap();
        let mut got = pushed.member_sets();
        got.sort();
        assert_eq!(got, oracle_members);
        assert_eq!(pushed, up(&y, &["a"]));
    }

    #[test]
    fn pushforward_identity_and_constant() {
        let c = carrier(&["0", "1"]);
        let id = SetMap::identity(c.clone());
        assert_eq!(pushforward(&id, &up(&c, &["0"])).unwrap(), up(&c, &["0"]));

        let y = carrier(&["a", "b"]);
        let konst = SetMap::constant(c.clone(), y.clone(), 1);
        for f in [up(&c, &["0"]), up(&c, &["0", "1"])] {
            assert_eq!(pushforward(&konst, &f).unwrap(), up(&y, &["b"]));
        }
    }

    #[test]
    fn pullback_examples() {
        let x = carrier(&["0", "1", "2"]);
        let y = carrier(&["a", "b"]);
        let f = SetMap::from_pairs(x.clone(), y.clone(), [("0", "a"), ("1", "a"), ("2", "b")])
            .unwrap();
        assert_eq!(
            pullback(&f, &up(&y, &["a"])).unwrap(),
            Some(up(&x, &["0", "1"]))
        );
        assert_eq!(
            pullback(&f, &up(&y, &["a", "b"])).unwrap(),
            Some(up(&x, &["0", "1", "2"]))
        );

        let z = carrier(&["0"]);
        let g = SetMap::from_pairs(z, y.clone(), [("0", "a")]).unwrap();
        assert_eq!(pullback(&g, &up(&y, &["b"])).unwrap(), None);
    }

    #[test]
    fn product_cores() {
        let x = carrier(&["0", "1"]);
        let y = carrier(&["a", "b"]);
        let p = filter_product(&up(&x, &["0"]), &up(&y, &["a"]));
        assert!(p.is_ultrafilter());
        assert_eq!(p.core_labels().collect::<Vec<_>>(), vec!["(0,a)"]);

        let q = filter_product(&up(&x, &["0"]), &up(&y, &["a", "b"]));
        assert_eq!(
            q.core_labels().collect::<Vec<_>>(),
            vec!["(0,a)", "(0,b)"]
        );

        let t = filter_product(
            &FiniteFilter::trivial(x.clone()).unwrap(),
            &FiniteFilter::trivial(y.clone()).unwrap(),
        );
        assert_eq!(t, FiniteFilter::trivial(x.product(&y)).unwrap());
    }

    #[test]
    fn containment_is_reverse_core_inclusion() {
        let c = carrier(&["0", "1", "2"]);
        let big = up(&c, &["0", "1"]);
        let small = up(&c, &["0"]);
        // ↑{0,1} ⊆ ↑{0} as member sets.
        assert!(big.is_contained_in(&small));
        assert!(!small.is_contained_in(&big));
    }
}
