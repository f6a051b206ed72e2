//! Fixed-width bit rows backing adjacency and reachability matrices.

const WORD_BITS: usize = 64;

/// A row of bits indexed by vertex label. Rows are sized at construction
/// and all operations assume equal widths.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn new(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// OR another row into this one; returns true if any bit changed.
    pub fn union_inplace(&mut self, other: &BitRow) -> bool {
        let mut changed = false;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            let next = *a | *b;
            changed |= next != *a;
            *a = next;
        }
        changed
    }

    pub fn intersects(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    /// The low word, for callers that know the row fits in 64 bits.
    #[inline]
    pub fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_clear_across_words() {
        let mut row = BitRow::new(130);
        for &i in &[0, 63, 64, 127, 129] {
            assert!(!row.get(i));
            row.set(i);
            assert!(row.get(i));
        }
        assert_eq!(row.count_ones(), 5);
        row.clear(64);
        assert!(!row.get(64));
        assert_eq!(row.iter_ones().collect::<Vec<_>>(), vec![0, 63, 127, 129]);
    }

    #[test]
    fn union_reports_change() {
        let mut a = BitRow::new(70);
        let mut b = BitRow::new(70);
        b.set(69);
        assert!(a.union_inplace(&b));
        assert!(!a.union_inplace(&b));
        assert!(a.get(69));
        assert!(a.intersects(&b));
    }
}
