//! Exponential objects, currying, homotopy, and H-group verification.
//!
//! The exponential of finite pseudospaces carries the continuous-convergence
//! structure; on finite carriers its edge rule is: `g → f` iff every
//! convergence `a → x` of the base maps to a convergence `g(a) → f(x)` of the
//! target. The rule is equivalent to the filter formulation evaluated with
//! principal filters, and [`exponential_edge_filter_oracle`] checks that
//! equivalence literally on demand.
//!
//! Homotopy of continuous maps is weak connectivity in the (pointed) map
//! space digraph; see `docs/finite-model.md` for why that is the right
//! finite-scale notion. Hom-set enumeration is the performance bottleneck of
//! the whole crate, so it backtracks over points in descending out-degree
//! order with edge-constraint pruning, and the homotopy deciders take cheap
//! exits (equal maps, a direct edge, an indiscrete or discrete target)
//! before they ever enumerate.

use crate::bitmat::BitMatrix;
use crate::carrier::Carrier;
use crate::filters::{filter_product, pushforward, FiniteFilter};
use crate::spaces::{product, product_n, PointedSpace, PseudoSpace, SpaceMap};
use crate::{Error, Result};

/// Enumeration guard for the homotopy deciders: they refuse to materialize a
/// map space with more continuous maps than this.
pub const HOMOTOPY_ENUMERATION_LIMIT: usize = 4096;

/// All continuous maps from `dom` to `cod`, as assignment vectors in
/// label-lexicographic (canonical) order.
pub fn continuous_maps(dom: &PseudoSpace, cod: &PseudoSpace) -> Vec<Vec<usize>> {
    continuous_maps_bounded(dom, cod, usize::MAX).expect("unbounded enumeration cannot overflow")
}

/// As [`continuous_maps`], but fails once more than `limit` maps are found.
pub fn continuous_maps_bounded(
    dom: &PseudoSpace,
    cod: &PseudoSpace,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    enumerate_homs(dom, cod, None, limit)
}

struct HomSearch<'a> {
    cod: &'a PseudoSpace,
    order: Vec<usize>,
    /// Per depth: convergence constraints against points assigned so far
    /// (including the self-loop), as `(point, forward, backward)`.
    constraints: Vec<Vec<(usize, bool, bool)>>,
    fixed: Option<(usize, usize)>,
    limit: usize,
    assignment: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl HomSearch<'_> {
    fn admissible(&self, depth: usize, value: usize) -> bool {
        self.constraints[depth].iter().all(|&(q, fwd, bwd)| {
            let qv = if q == self.order[depth] { value } else { self.assignment[q] };
            (!fwd || self.cod.conv(value, qv)) && (!bwd || self.cod.conv(qv, value))
        })
    }

    fn recurse(&mut self, depth: usize) -> Result<()> {
        if depth == self.order.len() {
            if self.out.len() == self.limit {
                return Err(Error::HomSetTooLarge { limit: self.limit });
            }
            self.out.push(self.assignment.clone());
            return Ok(());
        }
        let point = self.order[depth];
        let values = match self.fixed {
            Some((p, v)) if p == point => v..v + 1,
            _ => 0..self.cod.len(),
        };
        for value in values {
            if self.admissible(depth, value) {
                self.assignment[point] = value;
                self.recurse(depth + 1)?;
            }
        }
        Ok(())
    }
}

fn enumerate_homs(
    dom: &PseudoSpace,
    cod: &PseudoSpace,
    fixed: Option<(usize, usize)>,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    let n = dom.len();
    if n == 0 {
        return Ok(vec![vec![]]);
    }
    if cod.is_empty() {
        return Ok(Vec::new());
    }

    // Assign high-out-degree points first; their images constrain the most.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| (std::cmp::Reverse(dom.relation().out_degree(p)), p));
    if let Some((p, _)) = fixed {
        let pos = order.iter().position(|&q| q == p).expect("fixed point in carrier");
        order.remove(pos);
        order.insert(0, p);
    }

    let constraints = order
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            order[..=k]
                .iter()
                .filter_map(|&q| {
                    let fwd = dom.conv(p, q);
                    let bwd = q != p && dom.conv(q, p);
                    (fwd || bwd).then_some((q, fwd, bwd))
                })
                .collect()
        })
        .collect();

    let mut search = HomSearch {
        cod,
        order,
        constraints,
        fixed,
        limit,
        assignment: vec![0; n],
        out: Vec::new(),
    };
    search.recurse(0)?;
    let mut out = search.out;
    out.sort_unstable();
    Ok(out)
}

/// An exponential object: the space of continuous maps `base → target` with
/// the continuous-convergence structure. Structure points are labelled
/// `f0, f1, ..` in canonical map order, so exponentials are reproducible bit
/// for bit across runs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MapSpace {
    base: PseudoSpace,
    target: PseudoSpace,
    maps: Vec<Vec<usize>>,
    structure: PseudoSpace,
}

impl MapSpace {
    pub fn base(&self) -> &PseudoSpace {
        &self.base
    }

    pub fn target(&self) -> &PseudoSpace {
        &self.target
    }

    /// The underlying continuous maps, aligned with the structure points.
    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn structure(&self) -> &PseudoSpace {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Index of an assignment vector among the enumerated maps.
    pub fn find(&self, assignment: &[usize]) -> Option<usize> {
        self.maps.iter().position(|m| m == assignment)
    }

    /// The map at structure point `i`, as a [`SpaceMap`].
    pub fn map_at(&self, i: usize) -> SpaceMap {
        SpaceMap::from_indices(self.base.clone(), self.target.clone(), self.maps[i].clone())
            .expect("enumerated assignments are valid")
    }

    /// The evaluation map `Y^X × X → Y`. Its continuity is a theorem, and
    /// asserting it is one of the shipped property suites.
    pub fn evaluation(&self) -> SpaceMap {
        let dom = product(&self.structure, &self.base);
        let w = self.base.len();
        let assignment = (0..self.maps.len() * w)
            .map(|idx| self.maps[idx / w][idx % w])
            .collect();
        let ev = SpaceMap::from_indices(dom, self.target.clone(), assignment)
            .expect("evaluation assignment is valid");
        debug_assert!(ev.is_continuous(), "evaluation must be continuous");
        ev
    }
}

/// The exponential object `target^base`.
pub fn exponential(base: &PseudoSpace, target: &PseudoSpace) -> MapSpace {
    exponential_bounded(base, target, usize::MAX).expect("unbounded enumeration cannot overflow")
}

/// As [`exponential`], but respecting an enumeration limit.
pub fn exponential_bounded(
    base: &PseudoSpace,
    target: &PseudoSpace,
    limit: usize,
) -> Result<MapSpace> {
    let maps = continuous_maps_bounded(base, target, limit)?;
    let structure = map_space_structure(base, target, &maps);
    Ok(MapSpace {
        base: base.clone(),
        target: target.clone(),
        maps,
        structure,
    })
}

fn map_space_structure(
    base: &PseudoSpace,
    target: &PseudoSpace,
    maps: &[Vec<usize>],
) -> PseudoSpace {
    let carrier = Carrier::new((0..maps.len()).map(|i| format!("f{i}")))
        .expect("generated map labels are distinct");
    let mut conv = BitMatrix::new(maps.len());
    for (g, gm) in maps.iter().enumerate() {
        for (f, fm) in maps.iter().enumerate() {
            if exponential_edge(base, target, gm, fm) {
                conv.set(g, f, true);
            }
        }
    }
    conv.close_reflexive();
    PseudoSpace::from_relation(carrier, conv)
}

/// The exponential edge rule, applied to raw assignments.
fn exponential_edge(base: &PseudoSpace, target: &PseudoSpace, g: &[usize], f: &[usize]) -> bool {
    base.edges().all(|(a, x)| target.conv(g[a], f[x]))
}

/// The evaluation map for `target^base` (builds the exponential).
pub fn evaluation_map(base: &PseudoSpace, target: &PseudoSpace) -> SpaceMap {
    exponential(base, target).evaluation()
}

/// Transposes a continuous `h : Z × X → Y` to `ĥ : Z → Y^X` against an
/// already-computed exponential (`exp` must be `Y^X`). Discontinuous input
/// is rejected: the exponential law is a bijection between hom-sets, not
/// between raw maps.
pub fn curry_with(h: &SpaceMap, z: &PseudoSpace, exp: &MapSpace) -> Result<SpaceMap> {
    let expected_dom = product(z, exp.base());
    if h.dom() != &expected_dom {
        return Err(Error::CarrierMismatch(
            "curry: domain is not the product of the given factors".into(),
        ));
    }
    if h.cod() != exp.target() {
        return Err(Error::CarrierMismatch(
            "curry: codomain differs from the exponential target".into(),
        ));
    }
    if !h.is_continuous() {
        return Err(Error::NotContinuous("curry requires a continuous map".into()));
    }
    let w = exp.base().len();
    let assignment = (0..z.len())
        .map(|zi| {
            let slice: Vec<usize> = (0..w).map(|xi| h.apply(zi * w + xi)).collect();
            exp.find(&slice)
                .expect("a slice of a continuous map is continuous")
        })
        .collect();
    SpaceMap::from_indices(z.clone(), exp.structure().clone(), assignment)
}

/// Transposes a continuous `h : Z × X → Y` to `ĥ : Z → Y^X`.
pub fn curry(h: &SpaceMap, z: &PseudoSpace, x: &PseudoSpace) -> Result<SpaceMap> {
    let exp = exponential(x, h.cod());
    curry_with(h, z, &exp)
}

/// Inverse transpose: turns a continuous `k : Z → Y^X` back into
/// `Z × X → Y`.
pub fn uncurry(k: &SpaceMap, exp: &MapSpace) -> Result<SpaceMap> {
    if k.cod() != exp.structure() {
        return Err(Error::CarrierMismatch(
            "uncurry: codomain is not the given exponential".into(),
        ));
    }
    if !k.is_continuous() {
        return Err(Error::NotContinuous("uncurry requires a continuous map".into()));
    }
    let z = k.dom().clone();
    let dom = product(&z, exp.base());
    let w = exp.base().len();
    let assignment = (0..z.len() * w)
        .map(|idx| exp.maps()[k.apply(idx / w)][idx % w])
        .collect();
    SpaceMap::from_indices(dom, exp.target().clone(), assignment)
}

/// The subspace of the exponential on basepoint-preserving maps.
pub fn pointed_map_space(dom: &PointedSpace, cod: &PointedSpace) -> MapSpace {
    pointed_map_space_bounded(dom, cod, usize::MAX).expect("unbounded enumeration cannot overflow")
}

fn pointed_map_space_bounded(
    dom: &PointedSpace,
    cod: &PointedSpace,
    limit: usize,
) -> Result<MapSpace> {
    let maps = enumerate_homs(
        &dom.space,
        &cod.space,
        Some((dom.basepoint, cod.basepoint)),
        limit,
    )?;
    let structure = map_space_structure(&dom.space, &cod.space, &maps);
    Ok(MapSpace {
        base: dom.space.clone(),
        target: cod.space.clone(),
        maps,
        structure,
    })
}

fn check_homotopy_preconditions(f: &SpaceMap, g: &SpaceMap) -> Result<()> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::CarrierMismatch(
            "homotopy requires a common domain and codomain".into(),
        ));
    }
    if !f.is_continuous() || !g.is_continuous() {
        return Err(Error::NotContinuous("homotopy is between continuous maps".into()));
    }
    Ok(())
}

/// Free homotopy: `f ≃ g` iff they lie in the same weak component of the
/// exponential digraph.
pub fn are_homotopic(f: &SpaceMap, g: &SpaceMap) -> Result<bool> {
    check_homotopy_preconditions(f, g)?;
    homotopic_inner(f.dom(), f.cod(), f.assignment(), g.assignment(), None)
}

/// Pointed homotopy: as [`are_homotopic`], but inside the subspace of
/// basepoint-preserving maps.
pub fn are_pointed_homotopic(
    f: &SpaceMap,
    g: &SpaceMap,
    dom_basepoint: usize,
    cod_basepoint: usize,
) -> Result<bool> {
    check_homotopy_preconditions(f, g)?;
    for (name, m) in [("first", f), ("second", g)] {
        if m.apply(dom_basepoint) != cod_basepoint {
            return Err(Error::NotPointed(format!("{name} map moves the basepoint")));
        }
    }
    homotopic_inner(
        f.dom(),
        f.cod(),
        f.assignment(),
        g.assignment(),
        Some((dom_basepoint, cod_basepoint)),
    )
}

fn homotopic_inner(
    base: &PseudoSpace,
    target: &PseudoSpace,
    f: &[usize],
    g: &[usize],
    pointed: Option<(usize, usize)>,
) -> Result<bool> {
    if f == g {
        return Ok(true);
    }
    // An indiscrete target makes the edge rule vacuous: everything connects.
    // The subspace of pointed maps inherits the full relation, so the exit
    // is valid in the pointed case too.
    if target.relation() == &BitMatrix::full(target.len()) {
        return Ok(true);
    }
    if exponential_edge(base, target, f, g) || exponential_edge(base, target, g, f) {
        return Ok(true);
    }
    // A discrete target couples every edge to pointwise equality, so weak
    // components are singletons and f == g was already ruled out.
    if target.relation() == &BitMatrix::identity(target.len()) {
        return Ok(false);
    }
    let maps = enumerate_homs(base, target, pointed, HOMOTOPY_ENUMERATION_LIMIT)?;
    let structure = map_space_structure(base, target, &maps);
    let classes = structure.relation().weak_components();
    let fi = maps.iter().position(|m| m == f).expect("f is a continuous map");
    let gi = maps.iter().position(|m| m == g).expect("g is a continuous map");
    Ok(classes.iter().any(|c| c.contains(&fi) && c.contains(&gi)))
}

/// Per-clause verdicts of the H-group check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HGroupReport {
    /// `x ↦ x ∧ x₀` is pointed homotopic to the identity.
    pub unit_right: bool,
    /// `x ↦ x₀ ∧ x` is pointed homotopic to the identity.
    pub unit_left: bool,
    /// `x ↦ x ∧ σ(x)` is pointed homotopic to the constant at the basepoint.
    pub inverse_right: bool,
    /// `x ↦ σ(x) ∧ x` is pointed homotopic to the constant at the basepoint.
    pub inverse_left: bool,
    /// The two associator composites on X³ are pointed homotopic.
    pub associative: bool,
}

impl HGroupReport {
    pub fn holds(&self) -> bool {
        self.unit_right
            && self.unit_left
            && self.inverse_right
            && self.inverse_left
            && self.associative
    }
}

impl std::fmt::Display for HGroupReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        write!(
            f,
            "unit-right: {}  unit-left: {}  inverse-right: {}  inverse-left: {}  associative: {}",
            mark(self.unit_right),
            mark(self.unit_left),
            mark(self.inverse_right),
            mark(self.inverse_left),
            mark(self.associative)
        )
    }
}

/// Verifies the three H-group clauses for a pointed space with a candidate
/// multiplication `wedge : X × X → X` and inversion `sigma : X → X`; all
/// homotopies are taken pointed.
pub fn is_h_group(
    pointed: &PointedSpace,
    wedge: &SpaceMap,
    sigma: &SpaceMap,
) -> Result<HGroupReport> {
    let x = &pointed.space;
    let base = pointed.basepoint;
    let squared = product(x, x);
    if wedge.dom() != &squared || wedge.cod() != x {
        return Err(Error::CarrierMismatch(
            "wedge must be a map X × X → X over the pointed space".into(),
        ));
    }
    if sigma.dom() != x || sigma.cod() != x {
        return Err(Error::CarrierMismatch("sigma must be a self-map of X".into()));
    }
    if !wedge.is_continuous() || !sigma.is_continuous() {
        return Err(Error::NotContinuous("H-group data must be continuous".into()));
    }
    let n = x.len();
    let pair = |a: usize, b: usize| a * n + b;
    if wedge.apply(pair(base, base)) != base {
        return Err(Error::NotPointed("wedge moves the basepoint".into()));
    }
    if sigma.apply(base) != base {
        return Err(Error::NotPointed("sigma moves the basepoint".into()));
    }

    let self_map = |assignment: Vec<usize>| {
        SpaceMap::from_indices(x.clone(), x.clone(), assignment).expect("assignment over X")
    };
    let id = SpaceMap::identity(x.clone());
    let konst = SpaceMap::constant(x.clone(), x.clone(), base);
    let unit_right = self_map((0..n).map(|p| wedge.apply(pair(p, base))).collect());
    let unit_left = self_map((0..n).map(|p| wedge.apply(pair(base, p))).collect());
    let inverse_right = self_map((0..n).map(|p| wedge.apply(pair(p, sigma.apply(p)))).collect());
    let inverse_left = self_map((0..n).map(|p| wedge.apply(pair(sigma.apply(p), p))).collect());

    let cubed = product_n(&[x, x, x]);
    let assoc = |left: bool| {
        let assignment = (0..n * n * n)
            .map(|idx| {
                let (a, b, c) = (idx / (n * n), idx / n % n, idx % n);
                if left {
                    wedge.apply(pair(wedge.apply(pair(a, b)), c))
                } else {
                    wedge.apply(pair(a, wedge.apply(pair(b, c))))
                }
            })
            .collect();
        SpaceMap::from_indices(cubed.clone(), x.clone(), assignment).expect("assignment over X³")
    };
    let triple_base = (base * n + base) * n + base;

    Ok(HGroupReport {
        unit_right: are_pointed_homotopic(&unit_right, &id, base, base)?,
        unit_left: are_pointed_homotopic(&unit_left, &id, base, base)?,
        inverse_right: are_pointed_homotopic(&inverse_right, &konst, base, base)?,
        inverse_left: are_pointed_homotopic(&inverse_left, &konst, base, base)?,
        associative: are_pointed_homotopic(&assoc(true), &assoc(false), triple_base, base)?,
    })
}

/// Literal filter-level reading of the exponential edge rule: the principal
/// ultrafilter at `g` converges to `f` iff, whenever a filter converges to a
/// base point `x`, the pushforward of the product filter along evaluation
/// converges to `f(x)`. Exponential in the base size; sampling code keeps
/// instances tiny.
pub fn exponential_edge_filter_oracle(exp: &MapSpace, g: usize, f: usize) -> Result<bool> {
    let ev = exp.evaluation().set_map();
    let dot_g = FiniteFilter::principal(exp.structure().carrier().clone(), g)?;
    for x in 0..exp.base().len() {
        for core in crate::enumerate_subsets(exp.base().len()).filter(|s| !s.is_empty()) {
            let filter = FiniteFilter::from_core(exp.base().carrier().clone(), core)?;
            if !exp.base().converges(&filter, x)? {
                continue;
            }
            let pushed = pushforward(&ev, &filter_product(&dot_g, &filter))?;
            if !exp.target().converges(&pushed, exp.maps()[f][x])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that the canonical comparison `(Y × Z)^X → Y^X × Z^X` is an
/// isomorphism of pseudospaces (product preservation in the target).
pub fn check_exponential_product_target(
    x: &PseudoSpace,
    y: &PseudoSpace,
    z: &PseudoSpace,
) -> bool {
    let lhs = exponential(x, &product(y, z));
    let ey = exponential(x, y);
    let ez = exponential(x, z);
    let rhs = product(ey.structure(), ez.structure());
    if lhs.len() != ey.len() * ez.len() {
        return false;
    }
    // h ↦ (π₁ ∘ h, π₂ ∘ h), as an index into the product of structures.
    let zl = z.len();
    let comparison: Vec<usize> = lhs
        .maps()
        .iter()
        .map(|h| {
            let first: Vec<usize> = h.iter().map(|&v| v / zl).collect();
            let second: Vec<usize> = h.iter().map(|&v| v % zl).collect();
            match (ey.find(&first), ez.find(&second)) {
                (Some(i), Some(j)) => i * ez.len() + j,
                _ => usize::MAX,
            }
        })
        .collect();
    if comparison.contains(&usize::MAX) {
        return false;
    }
    let mut seen = vec![false; rhs.len()];
    for &v in &comparison {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    // Edges must correspond in both directions.
    let forward = lhs
        .structure()
        .edges()
        .all(|(g, f)| rhs.conv(comparison[g], comparison[f]));
    let mut inverse = vec![0usize; rhs.len()];
    for (i, &v) in comparison.iter().enumerate() {
        inverse[v] = i;
    }
    let backward = rhs
        .edges()
        .all(|(g, f)| lhs.structure().conv(inverse[g], inverse[f]));
    forward && backward
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sierpinski() -> PseudoSpace {
        PseudoSpace::from_edge_labels(Carrier::new(["0", "1"]).unwrap(), [("0", "1")]).unwrap()
    }

    fn discrete(labels: &[&str]) -> PseudoSpace {
        PseudoSpace::discrete(Carrier::new(labels.iter().copied()).unwrap())
    }

    /// Independent oracle: test every raw assignment for the homomorphism
    /// property, bypassing the backtracking enumerator entirely.
    fn brute_force_homs(dom: &PseudoSpace, cod: &PseudoSpace) -> Vec<Vec<usize>> {
        let n = dom.len();
        let k = cod.len();
        let mut out = Vec::new();
        for raw in 0..k.pow(n as u32) {
            let mut idx = raw;
            let mut m = vec![0; n];
            for slot in m.iter_mut() {
                *slot = idx % k;
                idx /= k;
            }
            if dom.edges().all(|(a, x)| cod.conv(m[a], m[x])) {
                out.push(m);
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn sierpinski_endomaps_are_the_three_monotone_ones() {
        let s = sierpinski();
        let maps = continuous_maps(&s, &s);
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(maps, brute_force_homs(&s, &s));
    }

    #[test]
    fn enumerator_matches_brute_force_on_mixed_structures() {
        let s = sierpinski();
        let chain3 = PseudoSpace::from_edge_labels(
            Carrier::new(["a", "b", "c"]).unwrap(),
            [("a", "b"), ("b", "c")],
        )
        .unwrap();
        let ind = PseudoSpace::indiscrete(Carrier::new(["u", "v"]).unwrap());
        for (dom, cod) in [(&s, &chain3), (&chain3, &s), (&ind, &chain3), (&chain3, &ind)] {
            assert_eq!(continuous_maps(dom, cod), brute_force_homs(dom, cod));
        }
    }

    #[test]
    fn hom_counts_for_degenerate_exponents() {
        let s = sierpinski();
        let point = discrete(&["*"]);
        assert_eq!(continuous_maps(&point, &s).len(), s.len());
        assert_eq!(continuous_maps(&s, &point).len(), 1);
        let empty = discrete(&[]);
        assert_eq!(continuous_maps(&empty, &s).len(), 1);
        assert_eq!(exponential(&empty, &s).structure().len(), 1);
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        let d3 = discrete(&["a", "b", "c"]);
        let ind3 = PseudoSpace::indiscrete(Carrier::new(["x", "y", "z"]).unwrap());
        assert_eq!(
            continuous_maps_bounded(&d3, &ind3, 10),
            Err(Error::HomSetTooLarge { limit: 10 })
        );
        assert_eq!(continuous_maps_bounded(&d3, &ind3, 27).unwrap().len(), 27);
    }

    #[test]
    fn sierpinski_exponential_is_the_three_chain() {
        let s = sierpinski();
        let exp = exponential(&s, &s);
        // Brute force every candidate edge with the quantifier spelled out.
        for (g, gm) in exp.maps().iter().enumerate() {
            for (f, fm) in exp.maps().iter().enumerate() {
                let expected = s.edges().all(|(a, x)| s.conv(gm[a], fm[x]));
                assert_eq!(exp.structure().conv(g, f), expected);
            }
        }
        // const0 -> id -> const1 with the composite edge: a topological chain.
        assert!(exp.structure().conv(0, 1) && exp.structure().conv(1, 2));
        assert!(exp.structure().conv(0, 2));
        assert!(!exp.structure().conv(1, 0));
        assert!(exp.structure().is_topological());
    }

    #[test]
    fn exponential_with_one_point_exponent_is_the_target() {
        let s = sierpinski();
        let point = discrete(&["*"]);
        let exp = exponential(&point, &s);
        assert!(crate::spaces::are_isomorphic(exp.structure(), &s));
    }

    #[test]
    fn evaluation_examples() {
        let s = sierpinski();
        let exp = exponential(&s, &s);
        let ev = exp.evaluation();
        let id_idx = exp.find(&[0, 1]).unwrap();
        let const1_idx = exp.find(&[1, 1]).unwrap();
        assert_eq!(ev.apply(id_idx * 2), 0);
        assert_eq!(ev.apply(id_idx * 2 + 1), 1);
        assert_eq!(ev.apply(const1_idx * 2), 1);
        assert!(ev.is_continuous());
    }

    /// The frozen regression count, fixed by independent double enumeration:
    /// both hom-sets of the exponential law have exactly 6 members for the
    /// Sierpiński triple.
    #[test]
    fn sierpinski_triple_hom_count_is_six() {
        let s = sierpinski();
        let ss = product(&s, &s);
        let lhs = brute_force_homs(&ss, &s);
        let exp = exponential(&s, &s);
        let rhs = brute_force_homs(&s, exp.structure());
        assert_eq!(lhs.len(), 6);
        assert_eq!(rhs.len(), 6);

        // Currying is a bijection between the two hom-sets.
        let mut images = Vec::new();
        for h in &lhs {
            let hm = SpaceMap::from_indices(ss.clone(), s.clone(), h.clone()).unwrap();
            let curried = curry_with(&hm, &s, &exp).unwrap();
            assert!(curried.is_continuous());
            let back = uncurry(&curried, &exp).unwrap();
            assert_eq!(back.assignment(), h.as_slice());
            images.push(curried.assignment().to_vec());
        }
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), lhs.len());
        assert_eq!(images, rhs);
    }

    #[test]
    fn curry_of_point_independent_map_is_constant() {
        let s = sierpinski();
        let z = discrete(&["z0", "z1"]);
        let zs = product(&z, &s);
        // h(z, x) = const1(x): a projection followed by a constant.
        let h = SpaceMap::constant(zs.clone(), s.clone(), 1);
        let exp = exponential(&s, &s);
        let curried = curry_with(&h, &z, &exp).unwrap();
        let const1_idx = exp.find(&[1, 1]).unwrap();
        assert_eq!(curried.assignment(), &[const1_idx, const1_idx]);
    }

    #[test]
    fn curry_rejects_discontinuous_maps() {
        let s = sierpinski();
        let d = discrete(&["u", "v"]);
        let sd = product(&s, &d);
        // (x, z) ↦ x into a discrete two-point space breaks the 0>1 edge.
        let raw: Vec<usize> = (0..4).map(|idx| idx / 2).collect();
        let h = SpaceMap::from_indices(sd, discrete(&["0", "1"]), raw).unwrap();
        assert!(matches!(curry(&h, &s, &d), Err(Error::NotContinuous(_))));
    }

    #[test]
    fn uncurry_of_curried_evaluation_is_evaluation() {
        let s = sierpinski();
        let exp = exponential(&s, &s);
        let ev = exp.evaluation();
        let curried = curry_with(&ev, exp.structure(), &exp).unwrap();
        // Transposing evaluation gives the identity on the exponential.
        assert_eq!(curried.assignment(), (0..exp.len()).collect::<Vec<_>>());
        let back = uncurry(&curried, &exp).unwrap();
        assert_eq!(back, ev);
    }

    #[test]
    fn pointed_map_space_examples() {
        let s = sierpinski();
        let pointed = PointedSpace::new(s.clone(), "0").unwrap();
        let msp = pointed_map_space(&pointed, &pointed);
        assert_eq!(msp.maps(), &[vec![0, 0], vec![0, 1]]);
        assert!(msp.structure().conv(0, 1));
        assert!(!msp.structure().conv(1, 0));

        let point = PointedSpace::new(discrete(&["*"]), "*").unwrap();
        assert_eq!(pointed_map_space(&pointed, &point).len(), 1);
        assert_eq!(pointed_map_space(&point, &pointed).len(), 1);
    }

    #[test]
    fn homotopy_examples() {
        let s = sierpinski();
        let id = SpaceMap::identity(s.clone());
        assert!(are_homotopic(&id, &id).unwrap());

        let const0 = SpaceMap::constant(s.clone(), s.clone(), 0);
        assert!(are_pointed_homotopic(&const0, &id, 0, 0).unwrap());

        // Distinct maps into a discrete codomain are never homotopic.
        let d = discrete(&["0", "1"]);
        let dots = discrete(&["a", "b"]);
        let f = SpaceMap::constant(dots.clone(), d.clone(), 0);
        let g = SpaceMap::constant(dots.clone(), d.clone(), 1);
        assert!(!are_homotopic(&f, &g).unwrap());
    }

    #[test]
    fn homotopy_connects_through_multi_point_edges() {
        // Indiscrete two-point base into Sierpiński: the two constants
        // differ at both points yet are joined by a single exponential edge.
        let ind = PseudoSpace::indiscrete(Carrier::new(["a", "b"]).unwrap());
        let s = sierpinski();
        let c0 = SpaceMap::constant(ind.clone(), s.clone(), 0);
        let c1 = SpaceMap::constant(ind.clone(), s.clone(), 1);
        assert!(are_homotopic(&c0, &c1).unwrap());
    }

    #[test]
    fn homotopy_separates_components_of_the_map_space() {
        // Base: two isolated points; target: Sierpiński with an extra
        // isolated point. Constant maps into the chain part and into the
        // isolated point live in different weak components.
        let base = discrete(&["a", "b"]);
        let target = PseudoSpace::from_edge_labels(
            Carrier::new(["0", "1", "w"]).unwrap(),
            [("0", "1")],
        )
        .unwrap();
        let c0 = SpaceMap::constant(base.clone(), target.clone(), 0);
        let cw = SpaceMap::constant(base.clone(), target.clone(), 2);
        assert!(!are_homotopic(&c0, &cw).unwrap());
        let c1 = SpaceMap::constant(base.clone(), target.clone(), 1);
        assert!(are_homotopic(&c0, &c1).unwrap());
    }

    #[test]
    fn h_group_one_point_space() {
        let point = discrete(&["e"]);
        let pointed = PointedSpace::new(point.clone(), "e").unwrap();
        let wedge = SpaceMap::constant(product(&point, &point), point.clone(), 0);
        let sigma = SpaceMap::identity(point);
        assert!(is_h_group(&pointed, &wedge, &sigma).unwrap().holds());
    }

    #[test]
    fn h_group_discrete_and_indiscrete_z2() {
        let carriers = [
            discrete(&["e", "g"]),
            PseudoSpace::indiscrete(Carrier::new(["e", "g"]).unwrap()),
        ];
        for space in carriers {
            let pointed = PointedSpace::new(space.clone(), "e").unwrap();
            let squared = product(&space, &space);
            // xor table over indices: (a,b) ↦ a + b mod 2.
            let wedge = SpaceMap::from_indices(squared, space.clone(), vec![0, 1, 1, 0]).unwrap();
            let sigma = SpaceMap::identity(space.clone());
            let report = is_h_group(&pointed, &wedge, &sigma).unwrap();
            assert!(report.holds(), "{report}");
        }
    }

    #[test]
    fn h_group_rejects_unpointed_data() {
        let s = sierpinski();
        let pointed = PointedSpace::new(s.clone(), "0").unwrap();
        let wedge = SpaceMap::constant(product(&s, &s), s.clone(), 1);
        let sigma = SpaceMap::identity(s);
        assert!(matches!(
            is_h_group(&pointed, &wedge, &sigma),
            Err(Error::NotPointed(_))
        ));
    }

    #[test]
    fn filter_oracle_agrees_on_the_sierpinski_exponential() {
        let s = sierpinski();
        let exp = exponential(&s, &s);
        for g in 0..exp.len() {
            for f in 0..exp.len() {
                assert_eq!(
                    exponential_edge_filter_oracle(&exp, g, f).unwrap(),
                    exp.structure().conv(g, f),
                    "edge rule and filter formulation differ at ({g}, {f})"
                );
            }
        }
    }

    #[test]
    fn product_target_preservation_smoke() {
        let s = sierpinski();
        let d = discrete(&["0", "1"]);
        let ind = PseudoSpace::indiscrete(Carrier::new(["u", "v"]).unwrap());
        assert!(check_exponential_product_target(&s, &d, &ind));
        assert!(check_exponential_product_target(&d, &s, &s));
    }
}
