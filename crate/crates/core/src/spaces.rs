//! Finite pseudotopological spaces and their constructions.
//!
//! A pseudotopology on a finite carrier is exactly a reflexive relation
//! `conv`, where `conv[a][x]` reads "the principal ultrafilter at `a`
//! converges to `x`". Continuity of a map is relation homomorphism, the
//! topological spaces are the transitive structures (the finite Alexandrov
//! correspondence), and the topological reflector is reflexive-transitive
//! closure. Initial structures are computed pointwise as the greatest
//! relation making every map of the sink continuous; final structures are
//! the diagonal plus direct edge images.
//!
//! The epitopological tier collapses at finite scale: every finite epispace
//! is topological, so [`reflect_epi`] coincides with [`reflect_top`] and the
//! second-stage reflector is the identity. The API keeps all three names so
//! tiered diagrams can be instantiated literally; the collapse itself is a
//! verified property, not an assumption (see `docs/finite-model.md` and the
//! `exp-transitive` mining property).

use crate::bitmat::BitMatrix;
use crate::carrier::{Carrier, SetMap};
use crate::filters::FiniteFilter;
use crate::{Error, Result};

/// A finite pseudospace: an ordered carrier plus a reflexive convergence
/// relation.
#[derive(Clone, PartialEq, Eq)]
pub struct PseudoSpace {
    carrier: Carrier,
    conv: BitMatrix,
}

impl PseudoSpace {
    /// Builds a space from off-diagonal edges given by labels; the diagonal
    /// is implicit and duplicate edges are idempotent.
    pub fn from_edge_labels<'a, I>(carrier: Carrier, edges: I) -> Result<PseudoSpace>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut conv = BitMatrix::identity(carrier.len());
        for (a, x) in edges {
            conv.set(carrier.resolve(a)?, carrier.resolve(x)?, true);
        }
        Ok(PseudoSpace { carrier, conv })
    }

    /// Wraps a relation, closing it reflexively.
    pub fn from_relation(carrier: Carrier, mut conv: BitMatrix) -> PseudoSpace {
        assert_eq!(carrier.len(), conv.len(), "carrier and relation sizes differ");
        conv.close_reflexive();
        PseudoSpace { carrier, conv }
    }

    /// The discrete structure: only the diagonal.
    pub fn discrete(carrier: Carrier) -> PseudoSpace {
        let conv = BitMatrix::identity(carrier.len());
        PseudoSpace { carrier, conv }
    }

    /// The indiscrete structure: the full relation.
    pub fn indiscrete(carrier: Carrier) -> PseudoSpace {
        let conv = BitMatrix::full(carrier.len());
        PseudoSpace { carrier, conv }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn relation(&self) -> &BitMatrix {
        &self.conv
    }

    /// Does the principal ultrafilter at `a` converge to `x`?
    #[inline]
    pub fn conv(&self, a: usize, x: usize) -> bool {
        self.conv.get(a, x)
    }

    /// All convergence pairs, diagonal included.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.conv.pairs()
    }

    /// Off-diagonal convergence pairs.
    pub fn proper_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.conv.pairs().filter(|&(a, x)| a != x)
    }

    /// Filter convergence: `F → x` iff every ultrafilter refining `F`
    /// converges to `x`; on a finite carrier those are exactly the principal
    /// ultrafilters at the core points.
    pub fn converges(&self, filter: &FiniteFilter, x: usize) -> Result<bool> {
        if filter.carrier() != &self.carrier {
            return Err(Error::CarrierMismatch(
                "converges: filter carrier differs from space carrier".into(),
            ));
        }
        if x >= self.len() {
            return Err(Error::UnknownLabel(format!("point index {x}")));
        }
        Ok(filter.core().iter().all(|&a| self.conv(a, x)))
    }

    /// A finite space is topological iff its convergence relation is
    /// transitive.
    pub fn is_topological(&self) -> bool {
        self.conv.is_transitive()
    }

    /// Is `subset` open in the reflected topological space? Opens are
    /// exactly the convergence-predecessor-closed sets: whenever some
    /// ultrafilter converges to a point of the set, the set belongs to it.
    pub fn is_open(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &i in subset {
            member[i] = true;
        }
        self.edges().all(|(a, x)| !member[x] || member[a])
    }

    /// Is `subset` closed in the reflected topological space?
    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let complement: Vec<usize> = (0..self.len()).filter(|i| !subset.contains(i)).collect();
        self.is_open(&complement)
    }

    /// All open sets of the reflected topological space, in subset-mask
    /// order. Exponential in the carrier; small carriers only.
    pub fn open_sets(&self) -> Vec<Vec<usize>> {
        crate::enumerate_subsets(self.len())
            .filter(|s| self.is_open(s))
            .collect()
    }

    /// The smallest open set of the reflection containing `p`: all
    /// reflexive-transitive convergence predecessors of `p`.
    pub fn minimal_open(&self, p: usize) -> Vec<usize> {
        let closure = self.conv.reflexive_transitive_closure();
        closure.predecessors(p).collect()
    }
}

impl std::fmt::Debug for PseudoSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PseudoSpace({:?};", self.carrier)?;
        for (a, x) in self.proper_edges() {
            write!(f, " {}>{}", self.carrier.label(a), self.carrier.label(x))?;
        }
        write!(f, ")")
    }
}

/// A total map between pseudospaces. Continuity is a predicate, not an
/// invariant: raw maps are representable so glue candidates and quotient
/// checks can receive them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpaceMap {
    dom: PseudoSpace,
    cod: PseudoSpace,
    map: Vec<usize>,
}

impl SpaceMap {
    pub fn from_pairs<'a, I>(dom: PseudoSpace, cod: PseudoSpace, pairs: I) -> Result<SpaceMap>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let f = SetMap::from_pairs(dom.carrier().clone(), cod.carrier().clone(), pairs)?;
        Ok(SpaceMap {
            map: f.assignment().to_vec(),
            dom,
            cod,
        })
    }

    pub fn from_indices(dom: PseudoSpace, cod: PseudoSpace, map: Vec<usize>) -> Result<SpaceMap> {
        SetMap::from_indices(dom.carrier().clone(), cod.carrier().clone(), map.clone())?;
        Ok(SpaceMap { dom, cod, map })
    }

    /// Attaches space structures to a set map whose carriers must match.
    pub fn over(dom: PseudoSpace, cod: PseudoSpace, f: &SetMap) -> Result<SpaceMap> {
        if f.dom() != dom.carrier() || f.cod() != cod.carrier() {
            return Err(Error::CarrierMismatch(
                "map carriers differ from the given spaces".into(),
            ));
        }
        Ok(SpaceMap {
            map: f.assignment().to_vec(),
            dom,
            cod,
        })
    }

    pub fn identity(space: PseudoSpace) -> SpaceMap {
        let map = (0..space.len()).collect();
        SpaceMap {
            dom: space.clone(),
            cod: space,
            map,
        }
    }

    pub fn constant(dom: PseudoSpace, cod: PseudoSpace, value: usize) -> SpaceMap {
        assert!(value < cod.len());
        let map = vec![value; dom.len()];
        SpaceMap { dom, cod, map }
    }

    pub fn dom(&self) -> &PseudoSpace {
        &self.dom
    }

    pub fn cod(&self) -> &PseudoSpace {
        &self.cod
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.map
    }

    pub fn set_map(&self) -> SetMap {
        SetMap::from_indices(
            self.dom.carrier().clone(),
            self.cod.carrier().clone(),
            self.map.clone(),
        )
        .expect("space map carries a valid assignment")
    }

    /// Continuity at `x`: every convergence into `x` pushes to a convergence
    /// into the image of `x`.
    pub fn is_continuous_at(&self, x: usize) -> bool {
        self.dom
            .relation()
            .predecessors(x)
            .all(|a| self.cod.conv(self.map[a], self.map[x]))
    }

    /// A map is continuous iff it is a homomorphism of convergence relations.
    pub fn is_continuous(&self) -> bool {
        self.dom
            .edges()
            .all(|(a, x)| self.cod.conv(self.map[a], self.map[x]))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &j in &self.map {
            hit[j] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `self ∘ inner`; the intermediate spaces must agree structurally.
    pub fn compose(&self, inner: &SpaceMap) -> Result<SpaceMap> {
        if inner.cod != self.dom {
            return Err(Error::CarrierMismatch(
                "compose: inner codomain differs from outer domain".into(),
            ));
        }
        let map = inner.map.iter().map(|&i| self.map[i]).collect();
        Ok(SpaceMap {
            dom: inner.dom.clone(),
            cod: self.cod.clone(),
            map,
        })
    }

    /// A quotient map is a continuous surjection whose codomain carries
    /// exactly the final structure.
    pub fn is_quotient_map(&self) -> bool {
        if !self.is_surjective() || !self.is_continuous() {
            return false;
        }
        let fin = final_structure(
            self.cod.carrier().clone(),
            &[(&self.dom, &self.set_map())],
        );
        fin.relation() == self.cod.relation()
    }
}

/// A space with a chosen basepoint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointedSpace {
    pub space: PseudoSpace,
    pub basepoint: usize,
}

impl PointedSpace {
    pub fn new(space: PseudoSpace, basepoint: &str) -> Result<PointedSpace> {
        let basepoint = space.carrier().resolve(basepoint)?;
        Ok(PointedSpace { space, basepoint })
    }
}

/// The greatest structure on `carrier` making every map of the sink
/// continuous: `a → x` iff every listed map sends the pair to a convergence.
/// The empty family yields the indiscrete structure.
pub fn initial_structure(carrier: Carrier, maps: &[(&SetMap, &PseudoSpace)]) -> Result<PseudoSpace> {
    for (f, target) in maps {
        if f.dom() != &carrier || f.cod() != target.carrier() {
            return Err(Error::CarrierMismatch(
                "initial structure: map carriers do not line up".into(),
            ));
        }
    }
    let n = carrier.len();
    let mut conv = BitMatrix::new(n);
    for a in 0..n {
        for x in 0..n {
            let ok = maps
                .iter()
                .all(|(f, target)| target.conv(f.apply(a), f.apply(x)));
            if ok {
                conv.set(a, x, true);
            }
        }
    }
    conv.close_reflexive();
    Ok(PseudoSpace { carrier, conv })
}

/// The least structure on `carrier` making every map of the source
/// continuous: the diagonal plus all direct edge images. The empty family
/// yields the discrete structure.
pub fn final_structure(carrier: Carrier, maps: &[(&PseudoSpace, &SetMap)]) -> PseudoSpace {
    for (source, f) in maps {
        assert!(
            f.dom() == source.carrier() && f.cod() == &carrier,
            "final structure: map carriers do not line up"
        );
    }
    let mut conv = BitMatrix::identity(carrier.len());
    for (source, f) in maps {
        for (a, x) in source.edges() {
            conv.set(f.apply(a), f.apply(x), true);
        }
    }
    PseudoSpace { carrier, conv }
}

/// N-ary product: componentwise convergence on the flat tuple carrier (the
/// initial structure along the projections). The empty product is the
/// one-point space.
pub fn product_n(factors: &[&PseudoSpace]) -> PseudoSpace {
    let carriers: Vec<&Carrier> = factors.iter().map(|s| s.carrier()).collect();
    let carrier = Carrier::product_n(&carriers);
    let n = carrier.len();
    let mut conv = BitMatrix::new(n);
    let sizes: Vec<usize> = factors.iter().map(|s| s.len()).collect();
    let coords: Vec<Vec<usize>> = (0..n)
        .map(|mut idx| {
            let mut c = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                c[k] = idx % sizes[k];
                idx /= sizes[k];
            }
            c
        })
        .collect();
    for a in 0..n {
        let ca = &coords[a];
        for (x, cx) in coords.iter().enumerate() {
            if factors
                .iter()
                .enumerate()
                .all(|(k, s)| s.conv(ca[k], cx[k]))
            {
                conv.set(a, x, true);
            }
        }
    }
    conv.close_reflexive();
    PseudoSpace { carrier, conv }
}

/// Binary product; the pair `(i, j)` sits at index `i * right.len() + j`.
pub fn product(left: &PseudoSpace, right: &PseudoSpace) -> PseudoSpace {
    product_n(&[left, right])
}

/// Disjoint union with the blockwise structure (the final structure along
/// the injections). Labels are kept when globally unique, otherwise prefixed
/// with the summand index.
pub fn coproduct(summands: &[&PseudoSpace]) -> PseudoSpace {
    let mut all: Vec<String> = Vec::new();
    for s in summands {
        all.extend(s.carrier().labels().map(String::from));
    }
    let mut seen = std::collections::HashSet::new();
    let unique = all.iter().all(|l| seen.insert(l.clone()));
    let mut labels = Vec::with_capacity(all.len());
    for (k, s) in summands.iter().enumerate() {
        for l in s.carrier().labels() {
            labels.push(if unique { l.to_string() } else { format!("{k}_{l}") });
        }
    }
    let carrier = Carrier::new(labels).expect("coproduct labels are disambiguated");
    let mut conv = BitMatrix::identity(carrier.len());
    let mut offset = 0;
    for s in summands {
        for (a, x) in s.edges() {
            conv.set(offset + a, offset + x, true);
        }
        offset += s.len();
    }
    PseudoSpace { carrier, conv }
}

/// The subspace on `subset` (indices into the ambient carrier, in the order
/// given): convergence restricted to the subset.
pub fn subspace(space: &PseudoSpace, subset: &[usize]) -> Result<PseudoSpace> {
    let labels: Vec<String> = subset
        .iter()
        .map(|&i| {
            if i >= space.len() {
                Err(Error::UnknownLabel(format!("point index {i}")))
            } else {
                Ok(space.carrier().label(i).to_string())
            }
        })
        .collect::<Result<_>>()?;
    let carrier = Carrier::new(labels)?;
    let mut conv = BitMatrix::new(subset.len());
    for (ai, &a) in subset.iter().enumerate() {
        for (xi, &x) in subset.iter().enumerate() {
            if space.conv(a, x) {
                conv.set(ai, xi, true);
            }
        }
    }
    Ok(PseudoSpace { carrier, conv })
}

/// The quotient along a surjection: the final structure on the target.
pub fn quotient(space: &PseudoSpace, q: &SetMap) -> Result<PseudoSpace> {
    if q.dom() != space.carrier() {
        return Err(Error::CarrierMismatch(
            "quotient: map domain differs from space carrier".into(),
        ));
    }
    if !q.is_surjective() {
        let missing = (0..q.cod().len())
            .find(|j| !q.assignment().contains(j))
            .map(|j| q.cod().label(j).to_string())
            .unwrap_or_default();
        return Err(Error::NotSurjective(missing));
    }
    Ok(final_structure(q.cod().clone(), &[(space, q)]))
}

/// The topological reflector: reflexive-transitive closure of the
/// convergence relation. Idempotent and monotone; the identity into the
/// reflection is continuous, and any continuous map into a topological space
/// factors through it.
pub fn reflect_top(space: &PseudoSpace) -> PseudoSpace {
    PseudoSpace {
        carrier: space.carrier().clone(),
        conv: space.relation().reflexive_transitive_closure(),
    }
}

/// The epitopological reflector. Finite epispaces are exactly the finite
/// topological spaces, so at this scale the two reflectors coincide; the
/// name is kept so tiered constructions read literally.
pub fn reflect_epi(space: &PseudoSpace) -> PseudoSpace {
    reflect_top(space)
}

/// Lattice meet (intersection of structures) over a shared carrier; the
/// empty family yields the indiscrete structure (the top element).
pub fn lattice_meet(carrier: Carrier, structures: &[&PseudoSpace]) -> Result<PseudoSpace> {
    let mut conv = BitMatrix::full(carrier.len());
    for s in structures {
        if s.carrier() != &carrier {
            return Err(Error::CarrierMismatch("lattice meet over mixed carriers".into()));
        }
        conv = conv.intersection(s.relation());
    }
    conv.close_reflexive();
    Ok(PseudoSpace { carrier, conv })
}

/// Lattice join (union of structures) over a shared carrier; the empty
/// family yields the discrete structure (the bottom element).
pub fn lattice_join(carrier: Carrier, structures: &[&PseudoSpace]) -> Result<PseudoSpace> {
    let mut conv = BitMatrix::identity(carrier.len());
    for s in structures {
        if s.carrier() != &carrier {
            return Err(Error::CarrierMismatch("lattice join over mixed carriers".into()));
        }
        conv = conv.union(s.relation());
    }
    Ok(PseudoSpace { carrier, conv })
}

/// The final *topology* along `q`, computed independently of the reflector:
/// a target set is open iff its preimage is open, and the convergence
/// relation is read off the minimal open sets of that topology. This is the
/// oracle route used to cross-check `reflect_top` of a final structure.
pub fn final_topology(space: &PseudoSpace, q: &SetMap) -> Result<PseudoSpace> {
    if q.dom() != space.carrier() {
        return Err(Error::CarrierMismatch(
            "final topology: map domain differs from space carrier".into(),
        ));
    }
    let m = q.cod().len();
    let opens: Vec<Vec<usize>> = crate::enumerate_subsets(m)
        .filter(|s| space.is_open(&q.preimage(s)))
        .collect();
    let mut conv = BitMatrix::new(m);
    for y in 0..m {
        // Minimal open of y: intersection of all opens containing y.
        let mut min_open = vec![true; m];
        for s in &opens {
            if s.contains(&y) {
                for (b, slot) in min_open.iter_mut().enumerate() {
                    *slot &= s.contains(&b);
                }
            }
        }
        for (b, &keep) in min_open.iter().enumerate() {
            if keep {
                conv.set(b, y, true);
            }
        }
    }
    conv.close_reflexive();
    Ok(PseudoSpace {
        carrier: q.cod().clone(),
        conv,
    })
}

/// Isomorphism by permutation search, feasible for small carriers (≤ 9
/// points). Labels are ignored; only the structures are compared.
pub fn are_isomorphic(a: &PseudoSpace, b: &PseudoSpace) -> bool {
    if a.len() != b.len() {
        return false;
    }
    assert!(a.len() <= 9, "isomorphism search is limited to 9 points");
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    // Heap's algorithm over all permutations with an edge check per leaf.
    fn check(a: &PseudoSpace, b: &PseudoSpace, perm: &[usize]) -> bool {
        a.edges().all(|(p, q)| b.conv(perm[p], perm[q]))
            && b.edges().all(|(p, q)| {
                let ip = perm.iter().position(|&v| v == p).unwrap();
                let iq = perm.iter().position(|&v| v == q).unwrap();
                a.conv(ip, iq)
            })
    }
    fn permute(k: usize, perm: &mut Vec<usize>, a: &PseudoSpace, b: &PseudoSpace) -> bool {
        if k == 1 {
            return check(a, b, perm);
        }
        for i in 0..k {
            if permute(k - 1, perm, a, b) {
                return true;
            }
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
        false
    }
    if n == 0 {
        return true;
    }
    permute(n, &mut perm, a, b)
}
