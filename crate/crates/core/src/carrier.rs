//! Finite ordered label sets and total functions between them.
//!
//! A [`Carrier`] is the underlying set of every structure in the crate; its
//! label order is the canonical tie-break for all enumerations and
//! serializations. Labels are shared behind an `Arc`, so cloning a carrier is
//! cheap and derived objects (maps, filters, spaces) stay lightweight.

use crate::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A finite ordered set of distinct point labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Carrier(Arc<Vec<String>>);

impl Carrier {
    /// Builds a carrier from labels, preserving order. Duplicates are rejected.
    pub fn new<I, S>(labels: I) -> Result<Carrier>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Carrier(Arc::new(labels)))
    }

    /// `n` points labelled `p0, p1, ..`.
    pub fn numbered(n: usize) -> Carrier {
        Carrier(Arc::new((0..n).map(|i| format!("p{i}")).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.iter().position(|l| l == label)
    }

    /// Index lookup that reports the offending label on failure.
    pub fn resolve(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Cartesian product carrier with tuple labels `(a,b)`, row-major:
    /// the pair `(i, j)` sits at index `i * other.len() + j`.
    pub fn product(&self, other: &Carrier) -> Carrier {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        for a in self.labels() {
            for b in other.labels() {
                labels.push(format!("({a},{b})"));
            }
        }
        Carrier(Arc::new(labels))
    }

    /// N-ary product carrier with flat tuple labels `(a,b,c)`; the empty
    /// product is the one-point carrier `()`.
    pub fn product_n(factors: &[&Carrier]) -> Carrier {
        let mut labels = vec![String::new()];
        for f in factors {
            let mut next = Vec::with_capacity(labels.len() * f.len());
            for prefix in &labels {
                for b in f.labels() {
                    if prefix.is_empty() {
                        next.push(b.to_string());
                    } else {
                        next.push(format!("{prefix},{b}"));
                    }
                }
            }
            labels = next;
        }
        Carrier(Arc::new(labels.into_iter().map(|l| format!("({l})")).collect()))
    }
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A total function between carriers, stored by target index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetMap {
    dom: Carrier,
    cod: Carrier,
    map: Vec<usize>,
}

impl SetMap {
    /// Builds a map from `(point, image)` label pairs; every domain point must
    /// be assigned exactly once (repeating an identical assignment is
    /// harmless, conflicting ones are rejected).
    pub fn from_pairs<'a, I>(dom: Carrier, cod: Carrier, pairs: I) -> Result<SetMap>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut map: Vec<Option<usize>> = vec![None; dom.len()];
        for (p, v) in pairs {
            let i = dom.resolve(p)?;
            let j = cod.resolve(v)?;
            match map[i] {
                Some(old) if old != j => {
                    return Err(Error::DuplicateLabel(format!("{p} assigned twice")))
                }
                _ => map[i] = Some(j),
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::UnknownLabel(format!("{} unassigned", dom.label(i)))))
            .collect::<Result<Vec<usize>>>()?;
        Ok(SetMap { dom, cod, map })
    }

    /// Builds a map from target indices, validating bounds.
    pub fn from_indices(dom: Carrier, cod: Carrier, map: Vec<usize>) -> Result<SetMap> {
        if map.len() != dom.len() {
            return Err(Error::CarrierMismatch(format!(
                "assignment has {} entries for {} points",
                map.len(),
                dom.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= cod.len()) {
            return Err(Error::UnknownLabel(format!("target index {bad}")));
        }
        Ok(SetMap { dom, cod, map })
    }

    pub fn identity(carrier: Carrier) -> SetMap {
        let map = (0..carrier.len()).collect();
        SetMap {
            dom: carrier.clone(),
            cod: carrier,
            map,
        }
    }

    pub fn constant(dom: Carrier, cod: Carrier, value: usize) -> SetMap {
        assert!(value < cod.len());
        let map = vec![value; dom.len()];
        SetMap { dom, cod, map }
    }

    pub fn dom(&self) -> &Carrier {
        &self.dom
    }

    pub fn cod(&self) -> &Carrier {
        &self.cod
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply_label(&self, label: &str) -> Result<&str> {
        Ok(self.cod.label(self.map[self.dom.resolve(label)?]))
    }

    pub fn assignment(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &SetMap) -> Result<SetMap> {
        if inner.cod != self.dom {
            return Err(Error::CarrierMismatch(
                "compose: inner codomain differs from outer domain".into(),
            ));
        }
        let map = inner.map.iter().map(|&i| self.map[i]).collect();
        Ok(SetMap {
            dom: inner.dom.clone(),
            cod: self.cod.clone(),
            map,
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &j in &self.map {
            hit[j] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Image of a set of domain indices, sorted and deduplicated.
    pub fn image(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&i| self.map[i]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Preimage of a set of codomain indices, in increasing order.
    pub fn preimage(&self, set: &[usize]) -> Vec<usize> {
        (0..self.dom.len())
            .filter(|&i| set.contains(&self.map[i]))
            .collect()
    }
}
