//! Square bit matrices as binary relations on `0..n`.
//!
//! Rows are packed into `u64` words so the relation algebra the rest of the
//! crate leans on (closure, inclusion, componentwise meets and joins) runs on
//! whole words. Row `a` holds the successor set of `a`: `get(a, x)` reads
//! "`a` relates to `x`".

/// A binary relation on `{0, .., n-1}` stored as packed bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    /// The empty relation on `n` points.
    pub fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words_per_row,
            bits: vec![0; words_per_row * n],
        }
    }

    /// The identity relation on `n` points.
    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// The full relation on `n` points.
    pub fn full(n: usize) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, a: usize, x: usize) -> bool {
        debug_assert!(a < self.n && x < self.n);
        let w = self.bits[a * self.words_per_row + x / 64];
        w >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, a: usize, x: usize, value: bool) {
        debug_assert!(a < self.n && x < self.n);
        let idx = a * self.words_per_row + x / 64;
        let mask = 1u64 << (x % 64);
        if value {
            self.bits[idx] |= mask;
        } else {
            self.bits[idx] &= !mask;
        }
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words_per_row..(a + 1) * self.words_per_row]
    }

    /// Or the row `src` into the row `dst`, returning true if `dst` changed.
    fn or_row_into(&mut self, src: usize, dst: usize) -> bool {
        let w = self.words_per_row;
        let (s, d) = (src * w, dst * w);
        let mut changed = false;
        for k in 0..w {
            let merged = self.bits[d + k] | self.bits[s + k];
            if merged != self.bits[d + k] {
                self.bits[d + k] = merged;
                changed = true;
            }
        }
        changed
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        // a->b and b->x forces a->x, i.e. row(b) ⊆ row(a) whenever a->b.
        for a in 0..self.n {
            for b in self.successors(a) {
                if b != a && !row_subset(self.row(b), self.row(a)) {
                    return false;
                }
            }
        }
        true
    }

    /// Reflexive closure, in place.
    pub fn close_reflexive(&mut self) {
        for i in 0..self.n {
            self.set(i, i, true);
        }
    }

    /// Transitive closure (Warshall on bit rows).
    pub fn transitive_closure(&self) -> BitMatrix {
        let mut m = self.clone();
        for k in 0..m.n {
            for i in 0..m.n {
                if m.get(i, k) {
                    m.or_row_into(k, i);
                }
            }
        }
        m
    }

    /// Reflexive-transitive closure.
    pub fn reflexive_transitive_closure(&self) -> BitMatrix {
        let mut m = self.transitive_closure();
        m.close_reflexive();
        m
    }

    /// Pointwise union; panics on size mismatch (callers check carriers).
    pub fn union(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (a, b) in m.bits.iter_mut().zip(&other.bits) {
            *a |= *b;
        }
        m
    }

    /// Pointwise intersection; panics on size mismatch.
    pub fn intersection(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (a, b) in m.bits.iter_mut().zip(&other.bits) {
            *a &= *b;
        }
        m
    }

    /// Is `self` contained in `other` as a set of pairs?
    pub fn is_subset(&self, other: &BitMatrix) -> bool {
        assert_eq!(self.n, other.n);
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    /// Successors of `a`, in increasing order.
    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(a);
        (0..self.n).filter(move |&x| row[x / 64] >> (x % 64) & 1 == 1)
    }

    /// Predecessors of `x`, in increasing order.
    pub fn predecessors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&a| self.get(a, x))
    }

    /// All related pairs `(a, x)`, diagonal included, in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.successors(a).map(move |x| (a, x)))
    }

    /// Number of related pairs.
    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Out-degree of `a`.
    pub fn out_degree(&self, a: usize) -> usize {
        self.row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Partition of `0..n` into weak components (direction ignored),
    /// each sorted, ordered by smallest member.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (a, x) in self.pairs() {
            let (ra, rx) = (find(&mut parent, a), find(&mut parent, x));
            if ra != rx {
                parent[ra.max(rx)] = ra.min(rx);
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of: Vec<Option<usize>> = vec![None; self.n];
        for i in 0..self.n {
            let r = find(&mut parent, i);
            match class_of[r] {
                Some(c) => classes[c].push(i),
                None => {
                    class_of[r] = Some(classes.len());
                    classes.push(vec![i]);
                }
            }
        }
        classes
    }
}

fn row_subset(sub: &[u64], sup: &[u64]) -> bool {
    sub.iter().zip(sup).all(|(a, b)| a & !b == 0)
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix({})", self.n)?;
        for a in 0..self.n {
            for x in 0..self.n {
                write!(f, "{}", if self.get(a, x) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> BitMatrix {
        let mut m = BitMatrix::new(n);
        for &(a, x) in edges {
            m.set(a, x, true);
        }
        m
    }

    #[test]
    fn closure_adds_exactly_the_composites() {
        let m = from_edges(3, &[(0, 1), (1, 2)]);
        let c = m.reflexive_transitive_closure();
        assert!(c.get(0, 2));
        assert!(c.is_reflexive() && c.is_transitive());
        assert_eq!(c.count(), 3 + 3);
    }

    #[test]
    fn transitivity_check_matches_closure_fixpoint() {
        // A relation is transitive iff its transitive closure adds nothing.
        for mask in 0u32..64 {
            let offdiag = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
            let mut m = BitMatrix::identity(3);
            for (b, &(i, j)) in offdiag.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    m.set(i, j, true);
                }
            }
            assert_eq!(m.is_transitive(), m.transitive_closure() == m, "{m:?}");
        }
    }

    #[test]
    fn weak_components_ignore_direction() {
        let m = from_edges(5, &[(0, 1), (3, 2)]);
        assert_eq!(m.weak_components(), vec![vec![0, 1], vec![2, 3], vec![4]]);
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let mut m = BitMatrix::new(130);
        m.set(0, 129, true);
        m.set(129, 64, true);
        assert!(m.get(0, 129) && m.get(129, 64) && !m.get(0, 64));
        let c = m.transitive_closure();
        assert!(c.get(0, 64));
        assert_eq!(m.successors(0).collect::<Vec<_>>(), vec![129]);
    }
}
