//! The path-component quotient and its decision procedures.
//!
//! On a finite pseudospace the path components are the weak components of
//! the convergence digraph: every convergence edge is realized by an
//! explicit two-step path from the unit interval, and conversely the image
//! of a path is connected in the topological reflection, hence stays inside
//! one weak component (`docs/finite-model.md` has the argument). The code
//! treats that equivalence as definitional.
//!
//! One consequence is recorded openly: the quotient structure on components
//! is always discrete at this scale, since an inter-class edge would merge
//! the classes. The substance of the module is therefore the verified
//! machinery around the quotient — functoriality, product preservation, the
//! biquotient decision procedure and Kent's criterion, which are nontrivial
//! for arbitrary maps.

use crate::carrier::{Carrier, SetMap};
use crate::spaces::{
    final_topology, product, quotient, reflect_top, PseudoSpace, SpaceMap,
};
use crate::{Error, Result};

/// A space partitioned into its path components, with the projection and the
/// quotient structure.
#[derive(Clone, Debug)]
pub struct ComponentQuotient {
    source: PseudoSpace,
    classes: Vec<Vec<usize>>,
    projection: SpaceMap,
    quotient: PseudoSpace,
}

impl ComponentQuotient {
    pub fn source(&self) -> &PseudoSpace {
        &self.source
    }

    /// Weak components, each sorted, ordered by smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn projection(&self) -> &SpaceMap {
        &self.projection
    }

    pub fn quotient(&self) -> &PseudoSpace {
        &self.quotient
    }

    /// Index of the class containing `point`.
    pub fn class_of(&self, point: usize) -> usize {
        self.projection.apply(point)
    }
}

/// The path-component quotient: classes are weak components, the projection
/// sends a point to its class, and the quotient carries the final structure.
pub fn path_components(space: &PseudoSpace) -> ComponentQuotient {
    let classes = space.relation().weak_components();
    let labels: Vec<String> = classes
        .iter()
        .map(|c| format!("[{}]", space.carrier().label(c[0])))
        .collect();
    let carrier = Carrier::new(labels).expect("class representatives are distinct");
    let mut assignment = vec![0usize; space.len()];
    for (k, class) in classes.iter().enumerate() {
        for &p in class {
            assignment[p] = k;
        }
    }
    let q = SetMap::from_indices(space.carrier().clone(), carrier, assignment)
        .expect("projection assignment is valid");
    let quotient_space = quotient(space, &q).expect("the projection is surjective");
    // Classes are weak components, so no edge crosses classes and the final
    // structure collapses to the diagonal.
    debug_assert!(quotient_space.relation() == &crate::bitmat::BitMatrix::identity(classes.len()));
    let projection = SpaceMap::over(space.clone(), quotient_space.clone(), &q)
        .expect("projection carriers line up");
    debug_assert!(projection.is_quotient_map());
    ComponentQuotient {
        source: space.clone(),
        classes,
        projection,
        quotient: quotient_space,
    }
}

/// The induced map on path components of a continuous map, together with the
/// two component quotients. Functoriality (the commuting square with the
/// projections) holds by construction and is property-tested.
pub fn induced_component_map(f: &SpaceMap) -> Result<(ComponentQuotient, ComponentQuotient, SpaceMap)> {
    if !f.is_continuous() {
        return Err(Error::NotContinuous(
            "the component functor acts on continuous maps".into(),
        ));
    }
    let cq_dom = path_components(f.dom());
    let cq_cod = path_components(f.cod());
    let mut assignment = vec![usize::MAX; cq_dom.classes().len()];
    for p in 0..f.dom().len() {
        let (from, to) = (cq_dom.class_of(p), cq_cod.class_of(f.apply(p)));
        if assignment[from] == usize::MAX {
            assignment[from] = to;
        } else if assignment[from] != to {
            return Err(Error::Internal(
                "continuous map split a weak component".into(),
            ));
        }
    }
    let induced = SpaceMap::from_indices(
        cq_dom.quotient().clone(),
        cq_cod.quotient().clone(),
        assignment,
    )?;
    Ok((cq_dom, cq_cod, induced))
}

fn require_topological(space: &PseudoSpace, role: &str) -> Result<()> {
    if !space.is_topological() {
        return Err(Error::NotTopological(role.into()));
    }
    Ok(())
}

/// Decides biquotience of a continuous surjection between finite topological
/// spaces. The minimal open set of a point is the hardest open cover to
/// satisfy, so the criterion reduces to: for every target point `y`, the
/// minimal open of `y` is covered by the images of the minimal opens of the
/// fiber points. [`is_biquotient_by_cover_search`] is the brute-force
/// cross-check over every open cover.
pub fn is_biquotient(f: &SpaceMap) -> Result<bool> {
    require_topological(f.dom(), "biquotient domain")?;
    require_topological(f.cod(), "biquotient codomain")?;
    if !f.is_continuous() {
        return Err(Error::NotContinuous("biquotient maps are continuous".into()));
    }
    if !f.is_surjective() {
        return Err(Error::NotSurjective("biquotient maps are surjective".into()));
    }
    for y in 0..f.cod().len() {
        // Union of images of minimal opens over the fiber.
        let mut covered = vec![false; f.cod().len()];
        for x in 0..f.dom().len() {
            if f.apply(x) == y {
                for b in f.dom().relation().predecessors(x) {
                    covered[f.apply(b)] = true;
                }
            }
        }
        let all = f.cod().relation().predecessors(y).all(|b| covered[b]);
        if !all {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Brute-force biquotience: quantifies over every open cover of every fiber.
/// Doubly exponential in the carrier; a cross-check oracle for tiny spaces.
pub fn is_biquotient_by_cover_search(f: &SpaceMap) -> Result<bool> {
    require_topological(f.dom(), "biquotient domain")?;
    require_topological(f.cod(), "biquotient codomain")?;
    if !f.is_continuous() {
        return Err(Error::NotContinuous("biquotient maps are continuous".into()));
    }
    if !f.is_surjective() {
        return Err(Error::NotSurjective("biquotient maps are surjective".into()));
    }
    let opens = f.dom().open_sets();
    for y in 0..f.cod().len() {
        let fiber: Vec<usize> = (0..f.dom().len()).filter(|&x| f.apply(x) == y).collect();
        let min_open_y: Vec<usize> = f.cod().relation().predecessors(y).collect();
        for family_mask in 0u64..1 << opens.len() {
            let family: Vec<&Vec<usize>> = opens
                .iter()
                .enumerate()
                .filter(|(i, _)| family_mask >> i & 1 == 1)
                .map(|(_, o)| o)
                .collect();
            let covers_fiber = fiber.iter().all(|x| family.iter().any(|o| o.contains(x)));
            if !covers_fiber {
                continue;
            }
            // Finitely many image sets must cover a neighborhood of y; with a
            // finite family, taking all of them is the best choice, and any
            // neighborhood contains the minimal open.
            let mut covered = vec![false; f.cod().len()];
            for o in &family {
                for &p in o.iter() {
                    covered[f.apply(p)] = true;
                }
            }
            if !min_open_y.iter().all(|&b| covered[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Both sides of Kent's criterion, computed independently.
#[derive(Clone, Debug)]
pub struct KentVerdict {
    /// The final pseudotopology along the surjection.
    pub final_pseudotopology: PseudoSpace,
    /// The quotient topology, read off the open sets.
    pub quotient_topology: PseudoSpace,
    /// Do the two structures coincide?
    pub structures_coincide: bool,
    /// Is the surjection biquotient into the quotient topology?
    pub biquotient: bool,
}

impl KentVerdict {
    /// Kent's criterion asserts the two answers agree.
    pub fn criterion_agrees(&self) -> bool {
        self.structures_coincide == self.biquotient
    }
}

/// Evaluates Kent's criterion for a surjection from a topological space:
/// the quotient pseudotopology and the quotient topology coincide iff the
/// projection into the quotient topology is biquotient. Both sides are
/// computed from scratch so the equivalence is genuinely tested.
pub fn check_kent(space: &PseudoSpace, q: &SetMap) -> Result<KentVerdict> {
    require_topological(space, "Kent criterion domain")?;
    let final_pseudotopology = quotient(space, q)?;
    let quotient_topology = final_topology(space, q)?;
    let structures_coincide =
        final_pseudotopology.relation() == quotient_topology.relation();
    let projection = SpaceMap::over(space.clone(), quotient_topology.clone(), q)?;
    let biquotient = is_biquotient(&projection)?;
    Ok(KentVerdict {
        final_pseudotopology,
        quotient_topology,
        structures_coincide,
        biquotient,
    })
}

/// Does the canonical comparison identify the components of a product with
/// the product of the component quotients? Any `false` is a counterexample
/// to product preservation and fails the build.
pub fn check_pc_product(left: &PseudoSpace, right: &PseudoSpace) -> bool {
    let cq_prod = path_components(&product(left, right));
    let cq_left = path_components(left);
    let cq_right = path_components(right);
    let rhs = product(cq_left.quotient(), cq_right.quotient());
    if cq_prod.classes().len() != rhs.len() {
        return false;
    }
    let w = right.len();
    let kw = cq_right.classes().len();
    // Class of (a, b) must be determined by (class a, class b), bijectively.
    let mut comparison = vec![usize::MAX; cq_prod.classes().len()];
    for idx in 0..left.len() * right.len() {
        let (a, b) = (idx / w, idx % w);
        let from = cq_prod.class_of(idx);
        let to = cq_left.class_of(a) * kw + cq_right.class_of(b);
        if comparison[from] == usize::MAX {
            comparison[from] = to;
        } else if comparison[from] != to {
            return false;
        }
    }
    let mut seen = vec![false; rhs.len()];
    for &v in &comparison {
        if v == usize::MAX || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    // Structures must correspond under the bijection, both ways.
    let forward = cq_prod
        .quotient()
        .edges()
        .all(|(g, f)| rhs.conv(comparison[g], comparison[f]));
    let mut inverse = vec![0usize; rhs.len()];
    for (i, &v) in comparison.iter().enumerate() {
        inverse[v] = i;
    }
    let backward = rhs
        .edges()
        .all(|(g, f)| cq_prod.quotient().conv(inverse[g], inverse[f]));
    forward && backward
}

/// For a topological space, reflecting the pseudotopological component
/// quotient must give exactly the classical quotient topology on components,
/// the latter computed independently from open sets.
pub fn check_pc_lift(space: &PseudoSpace) -> Result<bool> {
    require_topological(space, "component lift")?;
    let cq = path_components(space);
    let reflected = reflect_top(cq.quotient());
    let classical = final_topology(space, &cq.projection().set_map())?;
    Ok(reflected == classical)
}

/// The multiplication induced on path components by a continuous
/// `m : X × X → X`, with its continuity verdict. Ill-definedness would
/// contradict functoriality and surfaces as an internal fault.
pub fn induced_multiplication(
    space: &PseudoSpace,
    m: &SpaceMap,
) -> Result<(SpaceMap, bool)> {
    let squared = product(space, space);
    if m.dom() != &squared || m.cod() != space {
        return Err(Error::CarrierMismatch(
            "multiplication must be a map X × X → X".into(),
        ));
    }
    if !m.is_continuous() {
        return Err(Error::NotContinuous("induced multiplication needs a continuous map".into()));
    }
    let cq = path_components(space);
    let k = cq.classes().len();
    let quotient_sq = product(cq.quotient(), cq.quotient());
    let n = space.len();
    let mut assignment = vec![usize::MAX; k * k];
    for idx in 0..n * n {
        let (a, b) = (idx / n, idx % n);
        let from = cq.class_of(a) * k + cq.class_of(b);
        let to = cq.class_of(m.apply(idx));
        if assignment[from] == usize::MAX {
            assignment[from] = to;
        } else if assignment[from] != to {
            return Err(Error::Internal(
                "induced multiplication is not well defined on classes".into(),
            ));
        }
    }
    let mu = SpaceMap::from_indices(quotient_sq, cq.quotient().clone(), assignment)?;
    let continuous = mu.is_continuous();
    Ok((mu, continuous))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(labels: &[&str], edges: &[(&str, &str)]) -> PseudoSpace {
        PseudoSpace::from_edge_labels(
            Carrier::new(labels.iter().copied()).unwrap(),
            edges.iter().copied(),
        )
        .unwrap()
    }

    fn disjoint_chains() -> PseudoSpace {
        space(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")])
    }

    #[test]
    fn component_examples() {
        let disc = PseudoSpace::discrete(Carrier::new(["a", "b", "c"]).unwrap());
        let cq = path_components(&disc);
        assert_eq!(cq.classes().len(), 3);
        assert!(cq.projection().is_quotient_map());

        let chain = space(&["a", "b"], &[("a", "b")]);
        assert_eq!(path_components(&chain).classes(), &[vec![0, 1]]);

        let two = path_components(&disjoint_chains());
        assert_eq!(two.classes(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(two.quotient(), &PseudoSpace::discrete(two.quotient().carrier().clone()));
        assert_eq!(two.quotient().carrier().label(0), "[a]");
    }

    #[test]
    fn functoriality_square_commutes() {
        let x = disjoint_chains();
        let y = space(&["u", "v"], &[("u", "v")]);
        let f = SpaceMap::from_pairs(
            x.clone(),
            y.clone(),
            [("a", "u"), ("b", "v"), ("c", "u"), ("d", "u")],
        )
        .unwrap();
        let (cq_x, cq_y, pc_f) = induced_component_map(&f).unwrap();
        let via_top = pc_f.compose(cq_x.projection()).unwrap();
        let via_bottom = cq_y.projection().compose(&f).unwrap();
        assert_eq!(via_top.assignment(), via_bottom.assignment());
        assert!(pc_f.is_continuous());
    }

    #[test]
    fn biquotient_examples() {
        let chain3 = space(&["1", "2", "3"], &[("1", "2"), ("2", "3"), ("1", "3")]);
        assert!(is_biquotient(&SpaceMap::identity(chain3.clone())).unwrap());

        // Component projections of finite topological spaces are biquotient.
        let x = disjoint_chains();
        let cq = path_components(&x);
        assert!(is_biquotient(cq.projection()).unwrap());

        // The disjoint-chains witness onto the transitive 3-chain fails:
        // fiber of 3 is {d}, image of its minimal open {c,d} is {2,3},
        // which misses the minimal open {1,2,3} of 3.
        let q = SpaceMap::from_pairs(
            x,
            chain3,
            [("a", "1"), ("b", "2"), ("c", "2"), ("d", "3")],
        )
        .unwrap();
        assert!(q.is_continuous() && q.is_surjective());
        assert!(!is_biquotient(&q).unwrap());
    }

    #[test]
    fn biquotient_cover_search_agrees_exhaustively() {
        // All reflexive relations on 3 points, filtered to topological, with
        // all surjections onto 1 or 2 labels: the minimal-open procedure and
        // the full cover search must agree everywhere.
        let offdiag = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
        let mut checked = 0usize;
        for mask in 0u32..64 {
            let mut conv = crate::bitmat::BitMatrix::identity(3);
            for (b, &(i, j)) in offdiag.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    conv.set(i, j, true);
                }
            }
            let dom = PseudoSpace::from_relation(Carrier::numbered(3), conv);
            if !dom.is_topological() {
                continue;
            }
            for k in 1..=2usize {
                let cod_carrier = Carrier::numbered(k);
                for raw in 0..k.pow(3) {
                    let assignment: Vec<usize> =
                        (0..3).map(|i| raw / k.pow(i as u32) % k).collect();
                    let q = SetMap::from_indices(
                        dom.carrier().clone(),
                        cod_carrier.clone(),
                        assignment,
                    )
                    .unwrap();
                    if !q.is_surjective() {
                        continue;
                    }
                    let cod = final_topology(&dom, &q).unwrap();
                    let f = SpaceMap::over(dom.clone(), cod, &q).unwrap();
                    assert_eq!(
                        is_biquotient(&f).unwrap(),
                        is_biquotient_by_cover_search(&f).unwrap(),
                        "{f:?}"
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn kent_examples() {
        let x = disjoint_chains();

        // Component projection: structures coincide and the map is biquotient.
        let cq = path_components(&x);
        let v = check_kent(&x, &cq.projection().set_map()).unwrap();
        assert!(v.structures_coincide && v.biquotient && v.criterion_agrees());

        // The witness: structures differ (no composite edge in the final
        // pseudotopology) and the projection is not biquotient.
        let target = Carrier::new(["1", "2", "3"]).unwrap();
        let q = SetMap::from_pairs(
            x.carrier().clone(),
            target,
            [("a", "1"), ("b", "2"), ("c", "2"), ("d", "3")],
        )
        .unwrap();
        let v = check_kent(&x, &q).unwrap();
        assert!(!v.structures_coincide && !v.biquotient && v.criterion_agrees());
        assert!(!v.final_pseudotopology.conv(0, 2));
        assert!(v.quotient_topology.conv(0, 2));

        let id = SetMap::identity(x.carrier().clone());
        let v = check_kent(&x, &id).unwrap();
        assert!(v.structures_coincide && v.biquotient);
    }

    #[test]
    fn pc_product_examples() {
        let point = PseudoSpace::discrete(Carrier::new(["*"]).unwrap());
        let chain = space(&["a", "b"], &[("a", "b")]);
        assert!(check_pc_product(&chain, &point));
        assert!(check_pc_product(&chain, &chain));
        assert!(check_pc_product(&disjoint_chains(), &disjoint_chains()));
    }

    #[test]
    fn pc_lift_examples() {
        let disc = PseudoSpace::discrete(Carrier::numbered(4));
        assert!(check_pc_lift(&disc).unwrap());
        let chain = space(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert!(check_pc_lift(&chain).unwrap());
        let nontop = space(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(matches!(check_pc_lift(&nontop), Err(Error::NotTopological(_))));
    }

    #[test]
    fn induced_multiplication_examples() {
        // Indiscrete Z/2: one component.
        let ind = PseudoSpace::indiscrete(Carrier::new(["e", "g"]).unwrap());
        let m = SpaceMap::from_indices(product(&ind, &ind), ind.clone(), vec![0, 1, 1, 0]).unwrap();
        let (mu, continuous) = induced_multiplication(&ind, &m).unwrap();
        assert_eq!(mu.dom().len(), 1);
        assert!(continuous);

        // Discrete Z/2: two components, the xor table on the discrete quotient.
        let disc = PseudoSpace::discrete(Carrier::new(["e", "g"]).unwrap());
        let m = SpaceMap::from_indices(product(&disc, &disc), disc.clone(), vec![0, 1, 1, 0]).unwrap();
        let (mu, continuous) = induced_multiplication(&disc, &m).unwrap();
        assert_eq!(mu.assignment(), &[0, 1, 1, 0]);
        assert!(continuous);
    }
}
