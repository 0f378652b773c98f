//! The property mining engine.
//!
//! Every invariant of the calculus registers here under a stable name. A
//! mining task runs one property over an instance stream — exhaustive up to
//! a point bound, or seeded-random with a count — and produces a report
//! whose rendering is byte-identical for identical tasks. Violating
//! instances are replayable: where the instance is expressible in the
//! document format, the violation carries a witness document, and
//! [`replay`] re-evaluates the property on such a document alone.
//!
//! Instance-shaped properties are therefore factored as checkers over
//! documents with fixed item names (`X`, `Y`, `Z`, `C`, `q`, `m0`, ..);
//! generation builds the document first and evaluation never looks at
//! anything else. Properties whose instances are not document-shaped
//! (the filter laws, table mutations, determinism itself) report textual
//! descriptions instead.

use crate::doc::{Document, Item};
use crate::enumerate::{
    enumerate_spaces, letter_carrier, surjections, SpaceFilter,
};
use crate::gen;
use crate::{HarnessError, Result};
use finconv_core::carrier::{Carrier, SetMap};
use finconv_core::components::{
    check_kent, check_pc_lift, check_pc_product, induced_component_map, induced_multiplication,
    is_biquotient, path_components,
};
use finconv_core::exponentials::{
    check_exponential_product_target, continuous_maps, curry_with, exponential,
    exponential_edge_filter_oracle, is_h_group, uncurry,
};
use finconv_core::filters::{pullback, pushforward, FiniteFilter};
use finconv_core::groups::ConvergenceGroup;
use finconv_core::pasting::{Cover, CoverClass};
use finconv_core::spaces::{
    final_structure, final_topology, initial_structure, lattice_join, lattice_meet, product,
    quotient, reflect_top, subspace, PseudoSpace, SpaceMap,
};
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use std::path::PathBuf;

/// Where instances come from.
#[derive(Clone, Debug)]
pub enum InstanceSource {
    Exhaustive { max_points: usize, up_to_iso: bool },
    Sampled { seed: u64, count: u64, max_points: usize },
}

impl InstanceSource {
    fn render(&self) -> String {
        match self {
            InstanceSource::Exhaustive { max_points, up_to_iso } => {
                format!("exhaustive max-points={max_points} up-to-iso={up_to_iso}")
            }
            InstanceSource::Sampled { seed, count, max_points } => {
                format!("sampled seed={seed} count={count} max-points={max_points}")
            }
        }
    }
}

/// A mining task.
#[derive(Clone, Debug)]
pub struct MiningTask {
    pub property: String,
    pub source: InstanceSource,
    pub out_dir: Option<PathBuf>,
}

/// One failed instance.
#[derive(Clone, Debug)]
pub struct Violation {
    pub index: u64,
    pub description: String,
    pub witness: Option<Document>,
}

/// The outcome of a mining run.
#[derive(Clone, Debug)]
pub struct MiningReport {
    pub property: String,
    pub source: InstanceSource,
    pub instances: u64,
    pub violations: Vec<Violation>,
}

impl MiningReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Deterministic text rendering; identical tasks give identical bytes.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("finconv mining report\n");
        out.push_str(&format!("property: {}\n", self.property));
        out.push_str(&format!("source: {}\n", self.source.render()));
        out.push_str(&format!("instances: {}\n", self.instances));
        out.push_str(&format!("violations: {}\n", self.violations.len()));
        for v in &self.violations {
            out.push_str(&format!("violation: index={} {}\n", v.index, v.description));
        }
        out.push_str(if self.ok() { "status: ok\n" } else { "status: violations-found\n" });
        out
    }
}

/// A registered property.
pub struct PropertyDef {
    pub name: &'static str,
    pub about: &'static str,
}

pub fn properties() -> Vec<PropertyDef> {
    macro_rules! defs {
        ($(($name:literal, $about:literal),)*) => {
            vec![$(PropertyDef { name: $name, about: $about }),*]
        };
    }
    defs![
        ("filter-functoriality", "pushforward along a composite equals composed pushforwards"),
        ("filter-ultra", "pushforward preserves ultrafilters"),
        ("filter-pullback", "defined pullbacks satisfy the containment lemma, with equality for ultrafilters"),
        ("construction-reflexive", "every constructed structure is reflexive"),
        ("initial-greatest", "initial structures are the greatest structures making the sink continuous"),
        ("final-least", "final structures are the least structures making the source continuous"),
        ("initial-topological", "initial structures over topological spaces are topological"),
        ("reflector-idempotent", "the topological reflector is idempotent and the unit is continuous"),
        ("reflector-monotone", "the topological reflector is monotone for structure inclusion"),
        ("reflector-universal", "maps into topological spaces factor continuously through the reflection"),
        ("reflector-final-sinks", "reflecting a quotient equals the final topology of the reflected sink"),
        ("exp-law", "currying is a bijection between the two hom-sets of the exponential law"),
        ("ev-continuous", "the evaluation map of every exponential is continuous"),
        ("exp-transitive", "exponentials of topological spaces are topological"),
        ("exp-product-target", "exponentials preserve binary products in the target"),
        ("exp-filter-oracle", "the exponential edge rule matches the literal filter formulation"),
        ("pasting", "hypothesis-satisfying covers with continuous pieces glue continuously"),
        ("pasting-refinement", "refining an all-open cover by minimal opens stays all-open"),
        ("pc-functorial", "the component functor square commutes"),
        ("pc-product", "path components of a product are the product of path components"),
        ("pc-topological", "for topological spaces the component quotient is topological, classical, and biquotient"),
        ("pc-discrete", "component quotient structures are discrete at finite scale"),
        ("pc-lift", "reflecting the component quotient gives the classical component topology"),
        ("kent", "quotient structures coincide exactly when the projection is biquotient"),
        ("induced-mult", "continuous multiplications descend continuously to path components"),
        ("group-remark", "quasitopological and pseudotopological group together equal topological group"),
        ("group-axioms", "group validation accepts catalog tables and rejects every single-cell mutation"),
        ("group-pc", "pseudotopological groups induce pseudotopological groups on components"),
        ("hgroup-pstop", "every pseudotopological group verifies the H-group clauses"),
        ("doc-roundtrip", "serialize then parse is the identity on documents"),
        ("mining-determinism", "identical mining tasks render byte-identical reports"),
    ]
}

pub fn property_names() -> Vec<&'static str> {
    properties().iter().map(|p| p.name).collect()
}

/// Runs a task and, when an output directory is given, writes each witness
/// document as a replayable fixture.
pub fn mine(task: &MiningTask) -> Result<MiningReport> {
    if !property_names().contains(&task.property.as_str()) {
        return Err(HarnessError::UnknownProperty(task.property.clone()));
    }
    let (instances, violations) = run_property(&task.property, &task.source)?;
    let report = MiningReport {
        property: task.property.clone(),
        source: task.source.clone(),
        instances,
        violations,
    };
    if let Some(dir) = &task.out_dir {
        std::fs::create_dir_all(dir)?;
        for v in &report.violations {
            if let Some(doc) = &v.witness {
                let path = dir.join(format!("witness-{}-{}.fcv", report.property, v.index));
                std::fs::write(path, doc.serialize())?;
            }
        }
    }
    Ok(report)
}

/// Re-evaluates a document-shaped property on a witness document alone.
/// `Ok(None)` means the property holds on the instance.
pub fn replay(property: &str, doc: &Document) -> Result<Option<String>> {
    let checker = doc_checker(property).ok_or_else(|| {
        HarnessError::Invalid(format!("property `{property}` has no document-shaped instances"))
    })?;
    checker(doc)
}

type DocCheck = fn(&Document) -> Result<Option<String>>;

fn doc_checker(property: &str) -> Option<DocCheck> {
    Some(match property {
        "initial-greatest" => check_initial_greatest,
        "final-least" => check_final_least,
        "initial-topological" => check_initial_topological,
        "reflector-idempotent" => check_reflector_idempotent,
        "reflector-monotone" => check_reflector_monotone,
        "reflector-universal" => check_reflector_universal,
        "reflector-final-sinks" => check_reflector_final_sinks,
        "exp-law" => check_exp_law,
        "ev-continuous" => check_ev_continuous,
        "exp-transitive" => check_exp_transitive,
        "exp-product-target" => check_exp_product_target,
        "exp-filter-oracle" => check_exp_filter_oracle,
        "pasting" => check_pasting_doc,
        "pasting-refinement" => check_pasting_refinement,
        "pc-functorial" => check_pc_functorial,
        "pc-product" => check_pc_product_doc,
        "pc-topological" => check_pc_topological,
        "pc-discrete" => check_pc_discrete,
        "pc-lift" => check_pc_lift_doc,
        "kent" => check_kent_doc,
        "induced-mult" => check_induced_mult,
        "group-remark" => check_group_remark,
        "group-pc" => check_group_pc,
        "hgroup-pstop" => check_hgroup_pstop,
        _ => return None,
    })
}

// ---------------------------------------------------------------------------
// Runner plumbing.

fn run_indexed<F>(count: u64, f: F) -> Result<(u64, Vec<Violation>)>
where
    F: Fn(u64) -> Result<Option<Violation>> + Sync + Send,
{
    let results: Vec<Result<Option<Violation>>> =
        (0..count).into_par_iter().map(&f).collect();
    let mut violations = Vec::new();
    for r in results {
        if let Some(v) = r? {
            violations.push(v);
        }
    }
    Ok((count, violations))
}

fn need_space<'d>(doc: &'d Document, name: &str) -> Result<&'d PseudoSpace> {
    doc.space(name).ok_or(HarnessError::MissingItem { kind: "space", name: name.into() })
}

fn need_map<'d>(doc: &'d Document, name: &str) -> Result<&'d SpaceMap> {
    doc.map(name).ok_or(HarnessError::MissingItem { kind: "map", name: name.into() })
}

fn need_group<'d>(doc: &'d Document, name: &str) -> Result<&'d ConvergenceGroup> {
    doc.group(name).ok_or(HarnessError::MissingItem { kind: "group", name: name.into() })
}

fn need_cover<'d>(doc: &'d Document, name: &str) -> Result<&'d Cover> {
    doc.cover(name).ok_or(HarnessError::MissingItem { kind: "cover", name: name.into() })
}

fn doc_of_spaces(entries: &[(&str, &PseudoSpace)]) -> Document {
    let mut doc = Document::new();
    for (name, space) in entries {
        doc.push(*name, Item::Space((*space).clone())).expect("names are distinct");
    }
    doc
}

fn push_map(doc: &mut Document, name: &str, dom_name: &str, cod_name: &str, map: SpaceMap) {
    doc.push(
        name,
        Item::Map { dom_name: dom_name.into(), cod_name: cod_name.into(), map },
    )
    .expect("names are distinct");
}

/// Sampled runner over document instances: `make` builds the instance
/// document for an index, the registered checker evaluates it.
fn sampled_docs<G>(
    property: &'static str,
    seed: u64,
    count: u64,
    make: G,
) -> Result<(u64, Vec<Violation>)>
where
    G: Fn(&mut ChaCha12Rng, u64) -> Result<Document> + Sync + Send,
{
    let check = doc_checker(property).expect("sampled_docs is only used for doc-shaped properties");
    run_indexed(count, move |i| {
        let mut rng = gen::instance_rng(seed, i);
        let doc = make(&mut rng, i)?;
        Ok(check(&doc)?.map(|description| Violation {
            index: i,
            description,
            witness: Some(doc),
        }))
    })
}

// ---------------------------------------------------------------------------
// Filter laws (not document-shaped: instances are carriers and raw maps).

fn filters_exhaustive(
    max_points: usize,
    mut visit: impl FnMut(&SetMap, &FiniteFilter) -> Option<String>,
) -> (u64, Vec<Violation>) {
    let mut instances = 0u64;
    let mut violations = Vec::new();
    for n in 1..=max_points.min(4) {
        let dom = letter_carrier(n);
        for k in 1..=3usize {
            let cod = Carrier::new((0..k).map(|i| format!("q{i}"))).expect("distinct");
            for assignment in crate::enumerate::all_assignments(n, k) {
                let f = SetMap::from_indices(dom.clone(), cod.clone(), assignment)
                    .expect("assignment is valid");
                for core in finconv_core::enumerate_subsets(n).filter(|s| !s.is_empty()) {
                    let filter = FiniteFilter::from_core(dom.clone(), core).expect("nonempty");
                    instances += 1;
                    if let Some(description) = visit(&f, &filter) {
                        violations.push(Violation {
                            index: instances - 1,
                            description,
                            witness: None,
                        });
                    }
                }
            }
        }
    }
    (instances, violations)
}

fn filter_functoriality(source: &InstanceSource) -> Result<(u64, Vec<Violation>)> {
    // Quantifies over composable pairs; built on top of the single-map sweep
    // by enumerating a second leg from the first map's codomain.
    let check = |g: &SetMap, f: &SetMap, filter: &FiniteFilter| -> Option<String> {
        let composite = f.compose(g).expect("composable");
        let lhs = pushforward(&composite, filter).expect("carriers line up");
        let rhs = pushforward(f, &pushforward(g, filter).expect("carriers line up"))
            .expect("carriers line up");
        (lhs != rhs).then(|| format!("(f∘g)∗F = {lhs:?} but f∗(g∗F) = {rhs:?}"))
    };
    match source {
        InstanceSource::Exhaustive { max_points, .. } => {
            let mut instances = 0u64;
            let mut violations = Vec::new();
            for n in 1..=(*max_points).min(4) {
                let dom = letter_carrier(n);
                for m in 1..=3usize {
                    let mid = Carrier::new((0..m).map(|i| format!("q{i}"))).expect("distinct");
                    for ga in crate::enumerate::all_assignments(n, m) {
                        let g = SetMap::from_indices(dom.clone(), mid.clone(), ga)
                            .expect("assignment is valid");
                        for k in 1..=3usize {
                            let cod =
                                Carrier::new((0..k).map(|i| format!("r{i}"))).expect("distinct");
                            for fa in crate::enumerate::all_assignments(m, k) {
                                let f = SetMap::from_indices(mid.clone(), cod.clone(), fa)
                                    .expect("assignment is valid");
                                for core in
                                    finconv_core::enumerate_subsets(n).filter(|s| !s.is_empty())
                                {
                                    let filter = FiniteFilter::from_core(dom.clone(), core)
                                        .expect("nonempty");
                                    instances += 1;
                                    if let Some(d) = check(&g, &f, &filter) {
                                        violations.push(Violation {
                                            index: instances - 1,
                                            description: d,
                                            witness: None,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Ok((instances, violations))
        }
        InstanceSource::Sampled { seed, count, max_points } => run_indexed(*count, |i| {
            let mut rng = gen::instance_rng(*seed, i);
            let n = rng.gen_range(1..=(*max_points).clamp(1, 4));
            let m = rng.gen_range(1..=3usize);
            let k = rng.gen_range(1..=3usize);
            let dom = letter_carrier(n);
            let mid = Carrier::new((0..m).map(|i| format!("q{i}"))).expect("distinct");
            let cod = Carrier::new((0..k).map(|i| format!("r{i}"))).expect("distinct");
            let g = SetMap::from_indices(
                dom.clone(),
                mid.clone(),
                (0..n).map(|_| rng.gen_range(0..m)).collect(),
            )
            .expect("assignment is valid");
            let f = SetMap::from_indices(
                mid,
                cod,
                (0..m).map(|_| rng.gen_range(0..k)).collect(),
            )
            .expect("assignment is valid");
            let core: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            let core = if core.is_empty() { vec![rng.gen_range(0..n)] } else { core };
            let filter = FiniteFilter::from_core(dom, core).expect("nonempty");
            Ok(check(&g, &f, &filter).map(|description| Violation {
                index: i,
                description,
                witness: None,
            }))
        }),
    }
}

/// A random map between small fresh carriers, with a random proper filter
/// on either its domain or its codomain.
fn random_map_and_filter(
    rng: &mut ChaCha12Rng,
    max_points: usize,
    filter_on_domain: bool,
) -> (SetMap, FiniteFilter) {
    let n = rng.gen_range(1..=max_points.clamp(1, 4));
    let k = rng.gen_range(1..=3usize);
    let dom = letter_carrier(n);
    let cod = Carrier::new((0..k).map(|i| format!("q{i}"))).expect("distinct");
    let f = SetMap::from_indices(
        dom.clone(),
        cod.clone(),
        (0..n).map(|_| rng.gen_range(0..k)).collect(),
    )
    .expect("assignment is valid");
    let (carrier, size) = if filter_on_domain { (dom, n) } else { (cod, k) };
    let core: Vec<usize> = (0..size).filter(|_| rng.gen_bool(0.5)).collect();
    let core = if core.is_empty() { vec![rng.gen_range(0..size)] } else { core };
    let filter = FiniteFilter::from_core(carrier, core).expect("nonempty");
    (f, filter)
}

fn check_ultra(f: &SetMap, filter: &FiniteFilter) -> Option<String> {
    let pushed = pushforward(f, filter).expect("carriers line up");
    (filter.is_ultrafilter() && !pushed.is_ultrafilter())
        .then(|| format!("pushforward of ultrafilter {filter:?} is {pushed:?}"))
}

/// The pullback lemma for one map and one filter on its codomain.
fn check_pullback(f: &SetMap, filter: &FiniteFilter) -> Option<String> {
    let pulled = pullback(f, filter).expect("carriers line up")?;
    let back = pushforward(f, &pulled).expect("carriers line up");
    if !filter.is_contained_in(&back) {
        return Some(format!("{filter:?} is not contained in f∗f∗F = {back:?}"));
    }
    if filter.is_ultrafilter() {
        if back != *filter {
            return Some(format!("ultrafilter {filter:?} but f∗f∗F = {back:?}"));
        }
        let image = f.image(&(0..f.dom().len()).collect::<Vec<_>>());
        if !filter.contains(&image) {
            return Some("f(X) does not belong to the ultrafilter".into());
        }
    }
    None
}

fn filter_ultra(source: &InstanceSource) -> Result<(u64, Vec<Violation>)> {
    match source {
        InstanceSource::Exhaustive { max_points, .. } => {
            Ok(filters_exhaustive(*max_points, check_ultra))
        }
        InstanceSource::Sampled { seed, count, max_points } => {
            let max_points = *max_points;
            let seed = *seed;
            run_indexed(*count, move |i| {
                let mut rng = gen::instance_rng(seed, i);
                let (f, filter) = random_map_and_filter(&mut rng, max_points, true);
                Ok(check_ultra(&f, &filter)
                    .map(|description| Violation { index: i, description, witness: None }))
            })
        }
    }
}

fn filter_pullback(source: &InstanceSource) -> Result<(u64, Vec<Violation>)> {
    match source {
        InstanceSource::Exhaustive { max_points, .. } => {
            // Filters live on the codomain here, so the sweep enumerates maps
            // and then filters on the target.
            let mut instances = 0u64;
            let mut violations = Vec::new();
            for n in 1..=(*max_points).min(4) {
                let dom = letter_carrier(n);
                for k in 1..=3usize {
                    let cod = Carrier::new((0..k).map(|i| format!("q{i}"))).expect("distinct");
                    for assignment in crate::enumerate::all_assignments(n, k) {
                        let f = SetMap::from_indices(dom.clone(), cod.clone(), assignment)
                            .expect("assignment is valid");
                        for core in finconv_core::enumerate_subsets(k).filter(|s| !s.is_empty()) {
                            let filter =
                                FiniteFilter::from_core(cod.clone(), core).expect("nonempty");
                            instances += 1;
                            if let Some(description) = check_pullback(&f, &filter) {
                                violations.push(Violation {
                                    index: instances - 1,
                                    description,
                                    witness: None,
                                });
                            }
                        }
                    }
                }
            }
            Ok((instances, violations))
        }
        InstanceSource::Sampled { seed, count, max_points } => {
            let max_points = *max_points;
            let seed = *seed;
            run_indexed(*count, move |i| {
                let mut rng = gen::instance_rng(seed, i);
                let (f, filter) = random_map_and_filter(&mut rng, max_points, false);
                Ok(check_pullback(&f, &filter)
                    .map(|description| Violation { index: i, description, witness: None }))
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Document-shaped checkers.

fn check_reflector_idempotent(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let r = reflect_top(x);
    if reflect_top(&r) != r {
        return Ok(Some("reflector is not idempotent".into()));
    }
    let unit = SpaceMap::from_indices(x.clone(), r, (0..x.len()).collect())
        .expect("identity assignment");
    if !unit.is_continuous() {
        return Ok(Some("identity into the reflection is not continuous".into()));
    }
    Ok(None)
}

fn check_reflector_monotone(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let y = need_space(doc, "Y")?;
    if !x.relation().is_subset(y.relation()) {
        return Err(HarnessError::Invalid("instance requires X ⊆ Y".into()));
    }
    let (rx, ry) = (reflect_top(x), reflect_top(y));
    Ok((!rx.relation().is_subset(ry.relation()))
        .then(|| "reflection does not preserve structure inclusion".into()))
}

fn check_reflector_universal(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let y = need_space(doc, "Y")?;
    let f = need_map(doc, "f")?;
    if !y.is_topological() || !f.is_continuous() {
        return Err(HarnessError::Invalid("instance requires topological Y and continuous f".into()));
    }
    let through = SpaceMap::over(reflect_top(x), y.clone(), &f.set_map())?;
    Ok((!through.is_continuous())
        .then(|| "map does not stay continuous on the reflection".into()))
}

fn check_reflector_final_sinks(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let q = need_map(doc, "q")?.set_map();
    let via_reflector = reflect_top(&quotient(x, &q)?);
    let via_opens = final_topology(x, &q)?;
    Ok((via_reflector.relation() != via_opens.relation())
        .then(|| "reflected quotient differs from the final topology".into()))
}

fn check_initial_topological(doc: &Document) -> Result<Option<String>> {
    let (carrier, sinks) = collect_sinks(doc)?;
    if sinks.iter().any(|(_, y)| !y.is_topological()) {
        return Err(HarnessError::Invalid("instance requires topological targets".into()));
    }
    let sink_refs: Vec<(&SetMap, &PseudoSpace)> =
        sinks.iter().map(|(f, y)| (f, *y)).collect();
    let initial = initial_structure(carrier, &sink_refs)?;
    Ok((!initial.is_topological())
        .then(|| "initial structure over topological spaces is not transitive".into()))
}

/// Sink instances: a carrier space `C` (structure ignored) plus maps
/// `f0: C -> Y0`, `f1: C -> Y1`, ...
fn collect_sinks(doc: &Document) -> Result<(Carrier, Vec<(SetMap, &PseudoSpace)>)> {
    let c = need_space(doc, "C")?;
    let mut sinks = Vec::new();
    for k in 0.. {
        match doc.map(&format!("f{k}")) {
            Some(m) => {
                let y = m.cod();
                sinks.push((m.set_map(), y));
            }
            None => break,
        }
    }
    if sinks.is_empty() {
        return Err(HarnessError::Invalid("sink instance needs at least f0".into()));
    }
    Ok((c.carrier().clone(), sinks))
}

fn check_initial_greatest(doc: &Document) -> Result<Option<String>> {
    let (carrier, sinks) = collect_sinks(doc)?;
    let sink_refs: Vec<(&SetMap, &PseudoSpace)> = sinks.iter().map(|(f, y)| (f, *y)).collect();
    let joint = initial_structure(carrier.clone(), &sink_refs)?;
    // Second route: the meet of the single-map initial structures.
    let singles: Vec<PseudoSpace> = sink_refs
        .iter()
        .map(|&(f, y)| initial_structure(carrier.clone(), &[(f, y)]))
        .collect::<finconv_core::Result<_>>()?;
    let single_refs: Vec<&PseudoSpace> = singles.iter().collect();
    let meet = lattice_meet(carrier.clone(), &single_refs)?;
    if meet != joint {
        return Ok(Some("joint initial structure differs from the meet of single ones".into()));
    }
    for (f, y) in &sink_refs {
        if !SpaceMap::over(joint.clone(), (*y).clone(), f)?.is_continuous() {
            return Ok(Some("a sink map is discontinuous from its initial structure".into()));
        }
    }
    // Maximality: adding any missing pair breaks some sink map.
    let n = joint.len();
    for a in 0..n {
        for x in 0..n {
            if joint.conv(a, x) {
                continue;
            }
            let witnessed = sink_refs.iter().any(|(f, y)| !y.conv(f.apply(a), f.apply(x)));
            if !witnessed {
                return Ok(Some(format!(
                    "pair ({a},{x}) could be added without breaking any sink map"
                )));
            }
        }
    }
    Ok(None)
}

/// Source instances: spaces `X0`, `X1`, .. with maps `f0: X0 -> C`, ..
fn check_final_least(doc: &Document) -> Result<Option<String>> {
    let c = need_space(doc, "C")?;
    let mut sources: Vec<(&PseudoSpace, SetMap)> = Vec::new();
    for k in 0.. {
        match doc.map(&format!("f{k}")) {
            Some(m) => sources.push((m.dom(), m.set_map())),
            None => break,
        }
    }
    if sources.is_empty() {
        return Err(HarnessError::Invalid("source instance needs at least f0".into()));
    }
    let source_refs: Vec<(&PseudoSpace, &SetMap)> =
        sources.iter().map(|(x, f)| (*x, f)).collect();
    let joint = final_structure(c.carrier().clone(), &source_refs);
    let singles: Vec<PseudoSpace> = source_refs
        .iter()
        .map(|&(x, f)| final_structure(c.carrier().clone(), &[(x, f)]))
        .collect();
    let single_refs: Vec<&PseudoSpace> = singles.iter().collect();
    let join = lattice_join(c.carrier().clone(), &single_refs)?;
    if join != joint {
        return Ok(Some("joint final structure differs from the join of single ones".into()));
    }
    for (x, f) in &source_refs {
        if !SpaceMap::over((*x).clone(), joint.clone(), f)?.is_continuous() {
            return Ok(Some("a source map is discontinuous into its final structure".into()));
        }
    }
    // Minimality: every proper edge is forced by some source edge.
    for (a, x) in joint.proper_edges() {
        let witnessed = source_refs
            .iter()
            .any(|(src, f)| src.edges().any(|(p, q)| f.apply(p) == a && f.apply(q) == x));
        if !witnessed {
            return Ok(Some(format!("edge ({a},{x}) of the final structure has no witness")));
        }
    }
    Ok(None)
}

fn check_exp_law(doc: &Document) -> Result<Option<String>> {
    let z = need_space(doc, "Z")?;
    let x = need_space(doc, "X")?;
    let y = need_space(doc, "Y")?;
    let zx = product(z, x);
    let lhs = continuous_maps(&zx, y);
    let exp = exponential(x, y);
    let rhs = continuous_maps(z, exp.structure());
    if lhs.len() != rhs.len() {
        return Ok(Some(format!(
            "hom-set sizes differ: |hom(Z×X,Y)| = {} vs |hom(Z,Y^X)| = {}",
            lhs.len(),
            rhs.len()
        )));
    }
    let mut images = Vec::with_capacity(lhs.len());
    for h in &lhs {
        let hm = SpaceMap::from_indices(zx.clone(), y.clone(), h.clone())
            .expect("enumerated assignment");
        let curried = curry_with(&hm, z, &exp)?;
        if !curried.is_continuous() {
            return Ok(Some("curried map is not continuous".into()));
        }
        if uncurry(&curried, &exp)?.assignment() != h.as_slice() {
            return Ok(Some("uncurry of curry is not the identity".into()));
        }
        images.push(curried.assignment().to_vec());
    }
    images.sort_unstable();
    images.dedup();
    if images.len() != lhs.len() {
        return Ok(Some("currying is not injective".into()));
    }
    if images != rhs {
        return Ok(Some("currying is not onto the continuous maps into the exponential".into()));
    }
    for k in &rhs {
        let km = SpaceMap::from_indices(z.clone(), exp.structure().clone(), k.clone())
            .expect("enumerated assignment");
        let h = uncurry(&km, &exp)?;
        if !h.is_continuous() {
            return Ok(Some("uncurried map is not continuous".into()));
        }
        if curry_with(&h, z, &exp)?.assignment() != k.as_slice() {
            return Ok(Some("curry of uncurry is not the identity".into()));
        }
    }
    Ok(None)
}

fn check_ev_continuous(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let y = need_space(doc, "Y")?;
    let ev = exponential(x, y).evaluation();
    Ok((!ev.is_continuous()).then(|| "evaluation map is discontinuous".into()))
}

fn check_exp_transitive(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let y = need_space(doc, "Y")?;
    if !x.is_topological() || !y.is_topological() {
        return Err(HarnessError::Invalid("instance requires topological spaces".into()));
    }
    let exp = exponential(x, y);
    Ok((!exp.structure().is_topological())
        .then(|| "exponential of topological spaces is not transitive".into()))
}

fn check_exp_product_target(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let y = need_space(doc, "Y")?;
    let z = need_space(doc, "Z")?;
    Ok((!check_exponential_product_target(x, y, z))
        .then(|| "(Y×Z)^X is not the product of Y^X and Z^X".into()))
}

fn check_exp_filter_oracle(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let y = need_space(doc, "Y")?;
    let exp = exponential(x, y);
    for g in 0..exp.len() {
        for f in 0..exp.len() {
            let by_rule = exp.structure().conv(g, f);
            let by_filters = exponential_edge_filter_oracle(&exp, g, f)?;
            if by_rule != by_filters {
                return Ok(Some(format!(
                    "edge rule and filter formulation disagree at ({g},{f})"
                )));
            }
        }
    }
    Ok(None)
}

fn check_pasting_doc(doc: &Document) -> Result<Option<String>> {
    let cover = need_cover(doc, "C")?;
    let target = need_space(doc, "Y")?;
    let mut piece_maps: Vec<Vec<usize>> = Vec::new();
    for (k, piece) in cover.pieces().iter().enumerate() {
        let m = need_map(doc, &format!("m{k}"))?;
        let assignment = piece
            .iter()
            .map(|&p| {
                let label = cover.space().carrier().label(p);
                let local = m.dom().carrier().resolve(label)?;
                Ok(m.apply(local))
            })
            .collect::<Result<Vec<usize>>>()?;
        piece_maps.push(assignment);
    }
    let verdict = cover.check_pasting(&piece_maps, target)?;
    Ok(verdict
        .violates_lemma()
        .then(|| format!("pasting lemma violated: {verdict}")))
}

fn check_pasting_refinement(doc: &Document) -> Result<Option<String>> {
    let cover = need_cover(doc, "C")?;
    if cover.classify() != CoverClass::AllOpen {
        return Err(HarnessError::Invalid("instance requires an all-open cover".into()));
    }
    let space = cover.space();
    let closure = space.relation().reflexive_transitive_closure();
    let mut refined: Vec<Vec<usize>> = Vec::new();
    for piece in cover.pieces() {
        for &p in piece {
            refined.push(closure.predecessors(p).collect());
        }
    }
    let refined_cover = Cover::new(space.clone(), refined)?;
    Ok((refined_cover.classify() != CoverClass::AllOpen)
        .then(|| "refinement by minimal opens is not all-open".into()))
}

fn check_pc_functorial(doc: &Document) -> Result<Option<String>> {
    let f = need_map(doc, "f")?;
    let (cq_dom, cq_cod, pc_f) = induced_component_map(f)?;
    if !pc_f.is_continuous() {
        return Ok(Some("induced component map is discontinuous".into()));
    }
    let via_top = pc_f.compose(cq_dom.projection())?;
    let via_bottom = cq_cod.projection().compose(f)?;
    Ok((via_top.assignment() != via_bottom.assignment())
        .then(|| "component functor square does not commute".into()))
}

fn check_pc_product_doc(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let y = need_space(doc, "Y")?;
    Ok((!check_pc_product(x, y))
        .then(|| "components of the product differ from the product of components".into()))
}

fn check_pc_topological(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    if !x.is_topological() {
        return Err(HarnessError::Invalid("instance requires a topological space".into()));
    }
    let cq = path_components(x);
    if !cq.quotient().is_topological() {
        return Ok(Some("component quotient of a topological space is not topological".into()));
    }
    let classical = final_topology(x, &cq.projection().set_map())?;
    if cq.quotient().relation() != classical.relation() {
        return Ok(Some("pseudotopological and classical component quotients differ".into()));
    }
    let projection = SpaceMap::over(x.clone(), classical, &cq.projection().set_map())?;
    Ok((!is_biquotient(&projection)?)
        .then(|| "component projection of a topological space is not biquotient".into()))
}

fn check_pc_discrete(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let cq = path_components(x);
    let discrete = finconv_core::bitmat::BitMatrix::identity(cq.classes().len());
    Ok((cq.quotient().relation() != &discrete)
        .then(|| "component quotient carries a non-discrete structure".into()))
}

fn check_pc_lift_doc(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    Ok((!check_pc_lift(x)?)
        .then(|| "reflected component quotient differs from the classical one".into()))
}

fn check_kent_doc(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let q = need_map(doc, "q")?;
    let verdict = check_kent(x, &q.set_map())?;
    Ok((!verdict.criterion_agrees()).then(|| {
        format!(
            "criterion disagrees: coincide={} biquotient={}",
            verdict.structures_coincide, verdict.biquotient
        )
    }))
}

fn check_induced_mult(doc: &Document) -> Result<Option<String>> {
    let x = need_space(doc, "X")?;
    let m = need_map(doc, "m")?;
    if m.dom() != &product(x, x) {
        return Err(HarnessError::Invalid("instance requires m : X×X -> X".into()));
    }
    let (_, continuous) = induced_multiplication(x, m)?;
    Ok((!continuous).then(|| "induced multiplication on components is discontinuous".into()))
}

fn check_group_remark(doc: &Document) -> Result<Option<String>> {
    let g = need_group(doc, "G")?;
    let lhs = g.is_quasitop_group() && g.is_pstop_group();
    let rhs = g.is_top_group();
    Ok((lhs != rhs).then(|| {
        format!("quasitop ∧ pstop = {lhs} but top = {rhs}")
    }))
}

fn check_group_pc(doc: &Document) -> Result<Option<String>> {
    let g = need_group(doc, "G")?;
    if !g.is_pstop_group() {
        return Ok(None);
    }
    let space = g.space();
    let (mu, continuous) = induced_multiplication(space, &g.multiplication_map())?;
    if !continuous {
        return Ok(Some("induced multiplication is discontinuous".into()));
    }
    let cq = path_components(space);
    let quotient_group = ConvergenceGroup::new(
        cq.quotient().clone(),
        cq.class_of(g.unit()),
        mu.assignment().to_vec(),
    );
    match quotient_group {
        Err(e) => Ok(Some(format!("component quotient is not a group: {e}"))),
        Ok(qg) => Ok((!qg.is_pstop_group())
            .then(|| "component quotient group is not a pseudotopological group".into())),
    }
}

fn check_hgroup_pstop(doc: &Document) -> Result<Option<String>> {
    let g = need_group(doc, "G")?;
    if !g.is_pstop_group() {
        return Ok(None);
    }
    let report = is_h_group(&g.pointed(), &g.multiplication_map(), &g.inversion_map())?;
    Ok((!report.holds()).then(|| format!("H-group clauses fail: {report}")))
}

// ---------------------------------------------------------------------------
// Instance generation per property.

fn gen_space_doc(rng: &mut ChaCha12Rng, max_points: usize) -> Document {
    doc_of_spaces(&[("X", &gen::random_space(rng, max_points))])
}

fn gen_monotone_doc(rng: &mut ChaCha12Rng, max_points: usize) -> Document {
    let x = gen::random_space(rng, max_points);
    // Y: X plus extra random edges.
    let mut conv = x.relation().clone();
    let n = x.len();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(0.2) {
                conv.set(a, b, true);
            }
        }
    }
    let y = PseudoSpace::from_relation(x.carrier().clone(), conv);
    doc_of_spaces(&[("X", &x), ("Y", &y)])
}

fn gen_universal_doc(rng: &mut ChaCha12Rng, max_points: usize) -> Document {
    let x = gen::random_space(rng, max_points.min(4));
    let y = gen::random_topological_space(rng, 3);
    let f = gen::random_continuous_map(rng, &x, &y).expect("constants exist");
    let mut doc = doc_of_spaces(&[("X", &x), ("Y", &y)]);
    push_map(&mut doc, "f", "X", "Y", f);
    doc
}

fn gen_quotient_doc(rng: &mut ChaCha12Rng, max_points: usize) -> Document {
    let x = gen::random_space(rng, max_points);
    let k = rng.gen_range(1..=x.len().min(3));
    let q = gen::random_surjection(rng, x.carrier(), k);
    // The target structure is irrelevant to the property; a discrete
    // placeholder keeps the document well formed.
    let target = PseudoSpace::discrete(q.cod().clone());
    let mut doc = doc_of_spaces(&[("X", &x), ("Q", &target)]);
    let map = SpaceMap::over(x.clone(), target.clone(), &q).expect("carriers line up");
    push_map(&mut doc, "q", "X", "Q", map);
    doc
}

fn gen_sink_doc(rng: &mut ChaCha12Rng, max_points: usize, topological: bool) -> Document {
    let n = rng.gen_range(1..=max_points.min(3));
    let carrier_space = PseudoSpace::discrete(letter_carrier(n));
    let count = rng.gen_range(1..=2usize);
    let mut doc = doc_of_spaces(&[("C", &carrier_space)]);
    for k in 0..count {
        let y = if topological {
            gen::random_topological_space(rng, 3)
        } else {
            gen::random_space(rng, 3)
        };
        let assignment: Vec<usize> = (0..n).map(|_| rng.gen_range(0..y.len())).collect();
        let name = format!("Y{k}");
        doc.push(&name, Item::Space(y.clone())).expect("distinct names");
        let map = SpaceMap::from_indices(carrier_space.clone(), y, assignment)
            .expect("assignment is valid");
        push_map(&mut doc, &format!("f{k}"), "C", &name, map);
    }
    doc
}

fn gen_source_doc(rng: &mut ChaCha12Rng, max_points: usize) -> Document {
    let n = rng.gen_range(1..=max_points.min(3));
    let carrier_space = PseudoSpace::discrete(letter_carrier(n));
    let count = rng.gen_range(1..=2usize);
    let mut doc = doc_of_spaces(&[("C", &carrier_space)]);
    for k in 0..count {
        let x = gen::random_space(rng, 3);
        let assignment: Vec<usize> = (0..x.len()).map(|_| rng.gen_range(0..n)).collect();
        let name = format!("X{k}");
        doc.push(&name, Item::Space(x.clone())).expect("distinct names");
        let map = SpaceMap::from_indices(x, carrier_space.clone(), assignment)
            .expect("assignment is valid");
        push_map(&mut doc, &format!("f{k}"), &name, "C", map);
    }
    doc
}

fn gen_pair_doc(rng: &mut ChaCha12Rng, max_points: usize, topological: bool) -> Document {
    let make = |rng: &mut ChaCha12Rng| {
        if topological {
            gen::random_topological_space(rng, max_points)
        } else {
            gen::random_space(rng, max_points)
        }
    };
    let x = make(rng);
    let y = make(rng);
    // Distinct carriers keep the document unambiguous.
    let y = PseudoSpace::from_relation(
        Carrier::new(y.carrier().labels().map(|l| format!("{l}'"))).expect("distinct"),
        y.relation().clone(),
    );
    doc_of_spaces(&[("X", &x), ("Y", &y)])
}

fn gen_triple_doc(rng: &mut ChaCha12Rng, max_points: usize) -> Document {
    let z = gen::random_space(rng, max_points);
    let x = gen::random_space(rng, max_points);
    let y = gen::random_space(rng, max_points);
    let relabel = |s: &PseudoSpace, suffix: &str| {
        PseudoSpace::from_relation(
            Carrier::new(s.carrier().labels().map(|l| format!("{l}{suffix}"))).expect("distinct"),
            s.relation().clone(),
        )
    };
    let x = relabel(&x, "1");
    let y = relabel(&y, "2");
    let mut doc = doc_of_spaces(&[("Z", &z)]);
    doc.push("X", Item::Space(x)).expect("distinct names");
    doc.push("Y", Item::Space(y)).expect("distinct names");
    doc
}

fn gen_pasting_doc(rng: &mut ChaCha12Rng, max_points: usize, index: u64) -> Document {
    let space = gen::random_space(rng, max_points.max(2));
    let open_regime = index.is_multiple_of(2);
    let cover = gen::random_hypothesis_cover(rng, &space, open_regime);
    let target = gen::random_space(rng, 4);
    let target = PseudoSpace::from_relation(
        Carrier::new(target.carrier().labels().map(|l| format!("y{l}"))).expect("distinct"),
        target.relation().clone(),
    );
    let piece_maps = gen::random_piecewise_maps(rng, &cover, &target);
    let mut doc = doc_of_spaces(&[("X", &space), ("Y", &target)]);
    doc.push(
        "C",
        Item::Cover { space_name: "X".into(), cover: cover.clone() },
    )
    .expect("distinct names");
    for (k, (piece, assignment)) in cover.pieces().iter().zip(&piece_maps).enumerate() {
        let sub = subspace(&space, piece).expect("piece indices are valid");
        let name = format!("P{k}");
        doc.push(&name, Item::Space(sub.clone())).expect("distinct names");
        let map = SpaceMap::from_indices(sub, target.clone(), assignment.clone())
            .expect("assignment is valid");
        push_map(&mut doc, &format!("m{k}"), &name, "Y", map);
    }
    doc
}

fn gen_functorial_doc(rng: &mut ChaCha12Rng, max_points: usize) -> Document {
    let doc = gen_pair_doc(rng, max_points, false);
    let x = doc.space("X").expect("present").clone();
    let y = doc.space("Y").expect("present").clone();
    let f = gen::random_continuous_map(rng, &x, &y).expect("constants exist");
    let mut doc = doc;
    push_map(&mut doc, "f", "X", "Y", f);
    doc
}

fn gen_induced_mult_doc(rng: &mut ChaCha12Rng, max_points: usize) -> Document {
    let x = gen::random_space(rng, max_points.min(4));
    let squared = product(&x, &x);
    let assignment =
        gen::random_hom(rng, &squared, &x, &[]).expect("constants exist");
    let m = SpaceMap::from_indices(squared.clone(), x.clone(), assignment)
        .expect("assignment is valid");
    let mut doc = doc_of_spaces(&[("X", &x), ("XX", &squared)]);
    push_map(&mut doc, "m", "XX", "X", m);
    doc
}

fn gen_group_doc(rng: &mut ChaCha12Rng, index: u64, compatible_only: bool) -> Document {
    let catalog = gen::group_catalog();
    let spec = &catalog[(index as usize) % catalog.len()];
    let structure = if compatible_only {
        let pool = gen::pstop_structure_pool(spec);
        pool.choose(rng).expect("pool contains at least the extremes").clone()
    } else if rng.gen_bool(0.5) {
        let pool = gen::pstop_structure_pool(spec);
        pool.choose(rng).expect("nonempty").clone()
    } else {
        gen::random_structure_on(rng, &spec.carrier())
    };
    let group = spec.on(structure.clone());
    let mut doc = doc_of_spaces(&[("S", &structure)]);
    doc.push("G", Item::Group { space_name: "S".into(), group })
        .expect("distinct names");
    doc
}

// ---------------------------------------------------------------------------
// Property dispatch.

fn run_property(name: &str, source: &InstanceSource) -> Result<(u64, Vec<Violation>)> {
    match name {
        "filter-functoriality" => filter_functoriality(source),
        "filter-ultra" => filter_ultra(source),
        "filter-pullback" => filter_pullback(source),
        "construction-reflexive" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            run_indexed(count, move |i| {
                let mut rng = gen::instance_rng(seed, i);
                let x = gen::random_space(&mut rng, max_points);
                let y = gen::random_space(&mut rng, max_points);
                let k = rng.gen_range(1..=x.len().min(3));
                let q = gen::random_surjection(&mut rng, x.carrier(), k);
                let all_reflexive = [
                    product(&x, &y),
                    finconv_core::spaces::coproduct(&[&x, &y]),
                    reflect_top(&x),
                    quotient(&x, &q)?,
                    subspace(&x, &(0..x.len().div_ceil(2)).collect::<Vec<_>>())?,
                ]
                .iter()
                .all(|s| s.relation().is_reflexive());
                Ok((!all_reflexive).then(|| Violation {
                    index: i,
                    description: "a construction produced a non-reflexive structure".into(),
                    witness: None,
                }))
            })
        }
        "initial-greatest" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("initial-greatest", seed, count, move |rng, _| {
                Ok(gen_sink_doc(rng, max_points, false))
            })
        }
        "final-least" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("final-least", seed, count, move |rng, _| {
                Ok(gen_source_doc(rng, max_points))
            })
        }
        "initial-topological" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("initial-topological", seed, count, move |rng, _| {
                Ok(gen_sink_doc(rng, max_points, true))
            })
        }
        "reflector-idempotent" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("reflector-idempotent", seed, count, move |rng, _| {
                Ok(gen_space_doc(rng, max_points))
            })
        }
        "reflector-monotone" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("reflector-monotone", seed, count, move |rng, _| {
                Ok(gen_monotone_doc(rng, max_points))
            })
        }
        "reflector-universal" => match source {
            InstanceSource::Exhaustive { max_points, up_to_iso } => {
                reflector_universal_exhaustive(*max_points, *up_to_iso)
            }
            InstanceSource::Sampled { seed, count, max_points } => {
                let max_points = *max_points;
                sampled_docs("reflector-universal", *seed, *count, move |rng, _| {
                    Ok(gen_universal_doc(rng, max_points))
                })
            }
        },
        "reflector-final-sinks" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("reflector-final-sinks", seed, count, move |rng, _| {
                Ok(gen_quotient_doc(rng, max_points))
            })
        }
        "exp-law" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            let max_points = max_points.min(3);
            sampled_docs("exp-law", seed, count, move |rng, _| {
                Ok(gen_triple_doc(rng, max_points))
            })
        }
        "ev-continuous" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            let max_points = max_points.min(4);
            sampled_docs("ev-continuous", seed, count, move |rng, _| {
                Ok(gen_pair_doc(rng, max_points, false))
            })
        }
        "exp-transitive" => match source {
            InstanceSource::Exhaustive { max_points, up_to_iso } => {
                exp_transitive_exhaustive(*max_points, *up_to_iso)
            }
            InstanceSource::Sampled { seed, count, max_points } => {
                let max_points = (*max_points).min(3);
                sampled_docs("exp-transitive", *seed, *count, move |rng, _| {
                    Ok(gen_pair_doc(rng, max_points, true))
                })
            }
        },
        "exp-product-target" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            let max_points = max_points.min(3);
            sampled_docs("exp-product-target", seed, count, move |rng, _| {
                Ok(gen_triple_doc(rng, max_points))
            })
        }
        "exp-filter-oracle" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            let max_points = max_points.min(3);
            sampled_docs("exp-filter-oracle", seed, count, move |rng, _| {
                Ok(gen_pair_doc(rng, max_points, false))
            })
        }
        "pasting" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("pasting", seed, count, move |rng, i| {
                Ok(gen_pasting_doc(rng, max_points, i))
            })
        }
        "pasting-refinement" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("pasting-refinement", seed, count, move |rng, _| {
                let space = gen::random_space(rng, max_points.max(2));
                let cover = gen::random_hypothesis_cover(rng, &space, true);
                let mut doc = doc_of_spaces(&[("X", &space)]);
                doc.push("C", Item::Cover { space_name: "X".into(), cover })
                    .expect("distinct names");
                Ok(doc)
            })
        }
        "pc-functorial" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("pc-functorial", seed, count, move |rng, _| {
                Ok(gen_functorial_doc(rng, max_points))
            })
        }
        "pc-product" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("pc-product", seed, count, move |rng, _| {
                Ok(gen_pair_doc(rng, max_points, false))
            })
        }
        "pc-topological" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("pc-topological", seed, count, move |rng, _| {
                Ok(doc_of_spaces(&[("X", &gen::random_topological_space(rng, max_points))]))
            })
        }
        "pc-discrete" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("pc-discrete", seed, count, move |rng, _| {
                Ok(gen_space_doc(rng, max_points))
            })
        }
        "pc-lift" => match source {
            InstanceSource::Exhaustive { max_points, up_to_iso } => {
                pc_lift_exhaustive(*max_points, *up_to_iso)
            }
            InstanceSource::Sampled { seed, count, max_points } => {
                let max_points = *max_points;
                sampled_docs("pc-lift", *seed, *count, move |rng, _| {
                    Ok(doc_of_spaces(&[("X", &gen::random_topological_space(rng, max_points))]))
                })
            }
        },
        "kent" => match source {
            InstanceSource::Exhaustive { max_points, up_to_iso } => {
                kent_exhaustive(*max_points, *up_to_iso)
            }
            InstanceSource::Sampled { seed, count, max_points } => {
                let max_points = *max_points;
                sampled_docs("kent", *seed, *count, move |rng, _| {
                    let x = gen::random_topological_space(rng, max_points.min(4));
                    let k = rng.gen_range(1..=x.len().min(3));
                    let q = gen::random_surjection(rng, x.carrier(), k);
                    let target = PseudoSpace::discrete(q.cod().clone());
                    let mut doc = doc_of_spaces(&[("X", &x), ("Q", &target)]);
                    let map = SpaceMap::over(x.clone(), target, &q).expect("carriers line up");
                    push_map(&mut doc, "q", "X", "Q", map);
                    Ok(doc)
                })
            }
        },
        "induced-mult" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            sampled_docs("induced-mult", seed, count, move |rng, _| {
                Ok(gen_induced_mult_doc(rng, max_points))
            })
        }
        "group-remark" => {
            let (seed, count, _) = require_sampled(name, source)?;
            sampled_docs("group-remark", seed, count, move |rng, i| {
                Ok(gen_group_doc(rng, i, false))
            })
        }
        "group-axioms" => {
            let (seed, count, _) = require_sampled(name, source)?;
            run_indexed(count, move |i| {
                let mut rng = gen::instance_rng(seed, i);
                let catalog = gen::group_catalog();
                let spec = &catalog[(i as usize) % catalog.len()];
                let space = PseudoSpace::discrete(spec.carrier());
                if ConvergenceGroup::new(space.clone(), 0, spec.table.clone()).is_err() {
                    return Ok(Some(Violation {
                        index: i,
                        description: format!("catalog table {} rejected", spec.name),
                        witness: None,
                    }));
                }
                if spec.order == 1 {
                    return Ok(None); // no mutation can change a 1×1 table
                }
                let mut mutated = spec.table.clone();
                let cell = rng.gen_range(0..mutated.len());
                let bump = rng.gen_range(1..spec.order);
                mutated[cell] = (mutated[cell] + bump) % spec.order;
                Ok(ConvergenceGroup::new(space, 0, mutated)
                    .is_ok()
                    .then(|| Violation {
                        index: i,
                        description: format!(
                            "mutated {} table at cell {cell} still accepted",
                            spec.name
                        ),
                        witness: None,
                    }))
            })
        }
        "group-pc" => {
            let (seed, count, _) = require_sampled(name, source)?;
            sampled_docs("group-pc", seed, count, move |rng, i| {
                Ok(gen_group_doc(rng, i, true))
            })
        }
        "hgroup-pstop" => {
            let (seed, count, _) = require_sampled(name, source)?;
            sampled_docs("hgroup-pstop", seed, count, move |rng, i| {
                Ok(gen_group_doc(rng, i, true))
            })
        }
        "doc-roundtrip" => {
            let (seed, count, max_points) = require_sampled(name, source)?;
            run_indexed(count, move |i| {
                let mut rng = gen::instance_rng(seed, i);
                let doc = gen_functorial_doc(&mut rng, max_points);
                let text = doc.serialize();
                let reparsed = Document::parse(&text).map_err(HarnessError::Parse)?;
                Ok((reparsed != doc || reparsed.serialize() != text).then(|| Violation {
                    index: i,
                    description: "serialize/parse round trip changed the document".into(),
                    witness: Some(doc),
                }))
            })
        }
        "mining-determinism" => {
            let (seed, _, max_points) = require_sampled(name, source)?;
            let inner = MiningTask {
                property: "pc-product".into(),
                source: InstanceSource::Sampled {
                    seed: seed ^ 0x9e37_79b9,
                    count: 40,
                    max_points,
                },
                out_dir: None,
            };
            let first = mine(&inner)?.render();
            let second = mine(&inner)?.render();
            let violations = if first == second {
                Vec::new()
            } else {
                vec![Violation {
                    index: 0,
                    description: "identical tasks rendered different reports".into(),
                    witness: None,
                }]
            };
            Ok((1, violations))
        }
        other => Err(HarnessError::UnknownProperty(other.to_string())),
    }
}

fn require_sampled(name: &str, source: &InstanceSource) -> Result<(u64, u64, usize)> {
    match source {
        InstanceSource::Sampled { seed, count, max_points } => Ok((*seed, *count, *max_points)),
        InstanceSource::Exhaustive { .. } => Err(HarnessError::Invalid(format!(
            "property `{name}` supports sampled sources only"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Exhaustive sweeps.

fn violation_from(index: u64, description: String) -> Violation {
    Violation { index, description, witness: None }
}

fn reflector_universal_exhaustive(max_points: usize, up_to_iso: bool) -> Result<(u64, Vec<Violation>)> {
    let mut instances = 0u64;
    let mut violations = Vec::new();
    for nx in 0..=max_points.min(3) {
        for x in enumerate_spaces(nx, SpaceFilter::All, up_to_iso)? {
            let rx = reflect_top(&x);
            for ny in 0..=3usize {
                for y in enumerate_spaces(ny, SpaceFilter::Topological, false)? {
                    for assignment in continuous_maps(&x, &y) {
                        instances += 1;
                        let through =
                            SpaceMap::from_indices(rx.clone(), y.clone(), assignment.clone())
                                .expect("assignment is valid");
                        if !through.is_continuous() {
                            violations.push(violation_from(
                                instances - 1,
                                format!("{x:?} -> {y:?} via {assignment:?} breaks on the reflection"),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok((instances, violations))
}

fn exp_transitive_exhaustive(max_points: usize, up_to_iso: bool) -> Result<(u64, Vec<Violation>)> {
    let n = max_points.min(3);
    let topologies: Vec<PseudoSpace> =
        enumerate_spaces(n, SpaceFilter::Topological, up_to_iso)?.collect();
    let pairs: Vec<(usize, usize)> = (0..topologies.len())
        .flat_map(|i| (0..topologies.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Option<Violation>> = pairs
        .par_iter()
        .enumerate()
        .map(|(idx, &(i, j))| {
            let exp = exponential(&topologies[i], &topologies[j]);
            (!exp.structure().is_topological()).then(|| {
                violation_from(
                    idx as u64,
                    format!("exponential of topologies #{i}, #{j} is not transitive"),
                )
            })
        })
        .collect();
    Ok((pairs.len() as u64, results.into_iter().flatten().collect()))
}

fn pc_lift_exhaustive(max_points: usize, up_to_iso: bool) -> Result<(u64, Vec<Violation>)> {
    let n = max_points.min(3);
    let mut instances = 0u64;
    let mut violations = Vec::new();
    for x in enumerate_spaces(n, SpaceFilter::Topological, up_to_iso)? {
        instances += 1;
        if !check_pc_lift(&x)? {
            violations.push(violation_from(instances - 1, format!("lift fails on {x:?}")));
        }
    }
    Ok((instances, violations))
}

fn kent_exhaustive(max_points: usize, up_to_iso: bool) -> Result<(u64, Vec<Violation>)> {
    let mut instances = 0u64;
    let mut violations = Vec::new();
    for n in 1..=max_points.min(4) {
        for x in enumerate_spaces(n, SpaceFilter::Topological, up_to_iso)? {
            for k in 1..=n.min(3) {
                let cod = Carrier::new((0..k).map(|i| format!("q{i}"))).expect("distinct");
                for assignment in surjections(n, k) {
                    instances += 1;
                    let q = SetMap::from_indices(x.carrier().clone(), cod.clone(), assignment)
                        .expect("assignment is valid");
                    let verdict = check_kent(&x, &q)?;
                    if !verdict.criterion_agrees() {
                        violations.push(violation_from(
                            instances - 1,
                            format!(
                                "criterion disagrees on {x:?}: coincide={} biquotient={}",
                                verdict.structures_coincide, verdict.biquotient
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok((instances, violations))
}
