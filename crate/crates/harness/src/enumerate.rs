//! Deterministic exhaustive instance streams.
//!
//! A labeled pseudospace on `n` points is a choice of the `n² - n`
//! off-diagonal convergence bits, so the stream of all of them is just a
//! mask counter decoded row-major. Filtering to transitive relations yields
//! the labeled finite topologies; reduction modulo point permutations keeps
//! the lexicographically least mask of each orbit.

use crate::{HarnessError, Result};
use finconv_core::bitmat::BitMatrix;
use finconv_core::carrier::Carrier;
use finconv_core::spaces::PseudoSpace;

/// Largest carrier for plain exhaustive enumeration.
pub const MAX_ENUM_POINTS: usize = 5;
/// Largest carrier for enumeration modulo isomorphism.
pub const MAX_ISO_POINTS: usize = 4;

const LETTERS: [&str; 5] = ["a", "b", "c", "d", "e"];

/// The canonical enumeration carrier: points `a, b, c, ..`.
pub fn letter_carrier(n: usize) -> Carrier {
    assert!(n <= LETTERS.len());
    Carrier::new(LETTERS[..n].iter().copied()).expect("letters are distinct")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpaceFilter {
    All,
    Topological,
}

/// Off-diagonal cells in row-major order; bit `b` of a mask controls cell
/// `offdiag(n)[b]`.
fn offdiag(n: usize) -> Vec<(usize, usize)> {
    let mut cells = Vec::with_capacity(n * n - n);
    for a in 0..n {
        for x in 0..n {
            if a != x {
                cells.push((a, x));
            }
        }
    }
    cells
}

/// Decodes an off-diagonal mask into a reflexive relation.
pub fn space_from_mask(n: usize, mask: u64) -> PseudoSpace {
    let cells = offdiag(n);
    debug_assert!(n * n - n <= 64 && (cells.len() == 64 || mask < 1 << cells.len()));
    let mut conv = BitMatrix::identity(n);
    for (b, &(a, x)) in cells.iter().enumerate() {
        if mask >> b & 1 == 1 {
            conv.set(a, x, true);
        }
    }
    PseudoSpace::from_relation(letter_carrier(n), conv)
}

fn mask_of_permuted(n: usize, mask: u64, perm: &[usize]) -> u64 {
    let cells = offdiag(n);
    let mut out = 0u64;
    for (b, &(a, x)) in cells.iter().enumerate() {
        if mask >> b & 1 == 1 {
            let cell = (perm[a], perm[x]);
            let nb = cells.iter().position(|&c| c == cell).expect("off-diagonal closed under permutation");
            out |= 1 << nb;
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for slot in 0..=k {
                let mut q = p.clone();
                q.insert(slot, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// All labeled pseudospaces on `n` points, in mask order; optionally only
/// the transitive (topological) ones, optionally one representative per
/// isomorphism class. Bounds: 5 points plain, 4 points up to isomorphism.
pub fn enumerate_spaces(
    n: usize,
    filter: SpaceFilter,
    up_to_iso: bool,
) -> Result<impl Iterator<Item = PseudoSpace>> {
    let bound = if up_to_iso { MAX_ISO_POINTS } else { MAX_ENUM_POINTS };
    if n > bound {
        return Err(HarnessError::BoundExceeded(format!(
            "enumeration limit is {bound} points ({n} requested)"
        )));
    }
    let bits = n * n - n;
    let perms = if up_to_iso { permutations(n) } else { Vec::new() };
    let iter = (0u64..1 << bits).filter_map(move |mask| {
        if up_to_iso {
            let minimal = perms.iter().all(|p| mask_of_permuted(n, mask, p) >= mask);
            if !minimal {
                return None;
            }
        }
        let space = space_from_mask(n, mask);
        match filter {
            SpaceFilter::All => Some(space),
            SpaceFilter::Topological => space.is_topological().then_some(space),
        }
    });
    Ok(iter)
}

/// Number of labeled topologies on `n` points, by the transitivity filter.
pub fn count_topologies(n: usize) -> Result<usize> {
    Ok(enumerate_spaces(n, SpaceFilter::Topological, false)?.count())
}

/// All assignment vectors `dom_size → 0..cod_size`, in lexicographic order
/// (last slot fastest).
pub fn all_assignments(dom_size: usize, cod_size: usize) -> Vec<Vec<usize>> {
    if cod_size == 0 {
        return if dom_size == 0 { vec![vec![]] } else { Vec::new() };
    }
    let total = cod_size.pow(dom_size as u32);
    let mut out = Vec::with_capacity(total);
    for raw in 0..total {
        let mut idx = raw;
        let mut v = vec![0usize; dom_size];
        for slot in v.iter_mut().rev() {
            *slot = idx % cod_size;
            idx /= cod_size;
        }
        out.push(v);
    }
    out
}

/// Surjective assignments only.
pub fn surjections(dom_size: usize, cod_size: usize) -> Vec<Vec<usize>> {
    all_assignments(dom_size, cod_size)
        .into_iter()
        .filter(|v| (0..cod_size).all(|j| v.contains(&j)))
        .collect()
}
