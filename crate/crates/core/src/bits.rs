//! Word-sized vertex sets for hypergraphs on at most 64 vertices.

pub(crate) const MAX_BITSET_VERTICES: usize = 64;

/// Mask with the low `n` bits set.
#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= MAX_BITSET_VERTICES);
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// True iff the edges cover every vertex in `full` and form a single component.
///
/// Grows the component of the lowest vertex until no edge straddles its
/// boundary.
#[inline]
pub(crate) fn spans_connected(full: u64, edges: &[u64]) -> bool {
    let mut covered = 0u64;
    for &e in edges {
        covered |= e;
    }
    // a lone vertex is connected without edges
    if full.count_ones() == 1 {
        return covered & !full == 0;
    }
    if covered != full {
        return false;
    }
    let mut comp = full & full.wrapping_neg();
    loop {
        let before = comp;
        for &e in edges {
            if e & comp != 0 {
                comp |= e;
            }
        }
        if comp == full {
            return true;
        }
        if comp == before {
            return false;
        }
    }
}

/// True iff the edge set is connected and spanning, and dropping any single
/// edge breaks that.
pub(crate) fn is_bridge_tree(full: u64, edges: &[u64]) -> bool {
    if !spans_connected(full, edges) {
        return false;
    }
    let mut rest = [0u64; MAX_BITSET_VERTICES];
    let m = edges.len();
    if m > MAX_BITSET_VERTICES {
        return is_bridge_tree_slow(full, edges);
    }
    for skip in 0..m {
        let mut len = 0;
        for (i, &e) in edges.iter().enumerate() {
            if i != skip {
                rest[len] = e;
                len += 1;
            }
        }
        if spans_connected(full, &rest[..len]) {
            return false;
        }
    }
    true
}

fn is_bridge_tree_slow(full: u64, edges: &[u64]) -> bool {
    (0..edges.len()).all(|skip| {
        let rest: Vec<u64> = edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &e)| e)
            .collect();
        !spans_connected(full, &rest)
    })
}

/// Iterator over set bit positions, lowest first.
pub(crate) struct Ones(pub u64);

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connectivity_on_words() {
        let full = full_mask(4);
        assert!(spans_connected(full, &[0b0011, 0b0110, 0b1100]));
        assert!(!spans_connected(full, &[0b0011, 0b1100]));
        assert!(!spans_connected(full, &[0b0111]));
        assert!(spans_connected(full_mask(1), &[]));
        assert!(!spans_connected(full_mask(2), &[]));
    }

    #[test]
    fn bridge_trees() {
        let full = full_mask(3);
        assert!(is_bridge_tree(full, &[0b011, 0b110]));
        assert!(!is_bridge_tree(full, &[0b011, 0b110, 0b101]));
        assert!(is_bridge_tree(full, &[0b111]));
        // {0,1} inside {0,1,2}: dropping the small edge keeps everything spanned
        assert!(!is_bridge_tree(full, &[0b011, 0b111]));
    }

    #[test]
    fn ones_lists_positions() {
        assert_eq!(Ones(0b1010_0001).collect::<Vec<_>>(), vec![0, 5, 7]);
        assert_eq!(full_mask(64), u64::MAX);
    }
}
