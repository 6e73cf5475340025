use std::cmp::Ordering;
use std::fmt;

/// A finite set of basis indices stored as a bit set.
///
/// Bit `b` stands for the basis vector with 0-based position `b`; on the
/// `∧E` side that is `e_{b+1}`, on the `∧V` side bits `0..n` are
/// `e_1..e_n` and bits `n..2n` are `f_1..f_n`. A monomial `e_K` is always the
/// wedge of its members in increasing order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(pub u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    /// Full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << n) - 1)
        }
    }

    /// Build from 1-based indices, e.g. `[1, 2]` is `e_1 ∧ e_2`.
    pub fn from_one_based(idx: &[usize]) -> Self {
        IndexSet(idx.iter().fold(0u64, |m, &i| {
            assert!((1..=64).contains(&i), "index {i} out of range");
            m | (1u64 << (i - 1))
        }))
    }

    pub fn from_zero_based(idx: impl IntoIterator<Item = usize>) -> Self {
        IndexSet(idx.into_iter().fold(0u64, |m, i| m | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, b: usize) -> bool {
        self.0 >> b & 1 == 1
    }

    pub fn insert(self, b: usize) -> Self {
        IndexSet(self.0 | (1u64 << b))
    }

    pub fn remove(self, b: usize) -> Self {
        IndexSet(self.0 & !(1u64 << b))
    }

    pub fn union(self, o: Self) -> Self {
        IndexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        IndexSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        IndexSet(self.0 & !o.0)
    }

    pub fn symmetric_difference(self, o: Self) -> Self {
        IndexSet(self.0 ^ o.0)
    }

    pub fn complement(self, n: usize) -> Self {
        IndexSet(!self.0 & IndexSet::full(n).0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    /// Number of members strictly below position `b`.
    pub fn count_below(self, b: usize) -> usize {
        (self.0 & ((1u64 << b) - 1)).count_ones() as usize
    }

    /// Members in increasing order (0-based).
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(b)
            }
        })
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|b| b + 1).collect()
    }

    /// All subsets of `{0..n}` with exactly `k` members, in increasing bit order.
    pub fn subsets_of_size(n: usize, k: usize) -> Vec<IndexSet> {
        subsets_of(IndexSet::full(n), k)
    }
}

/// All `k`-element subsets of `within`.
pub fn subsets_of(within: IndexSet, k: usize) -> Vec<IndexSet> {
    let members: Vec<usize> = within.iter().collect();
    let mut out = Vec::new();
    if k > members.len() {
        return out;
    }
    let m = members.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(IndexSet::from_zero_based(idx.iter().map(|&i| members[i])));
        let mut i = k;
        while i > 0 && idx[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every subset of `within` (submask enumeration).
pub fn all_subsets(within: IndexSet) -> impl Iterator<Item = IndexSet> {
    let full = within.0;
    let mut sub = Some(full);
    std::iter::from_fn(move || {
        let cur = sub?;
        sub = if cur == 0 {
            None
        } else {
            Some((cur - 1) & full)
        };
        Some(IndexSet(cur))
    })
}

impl Ord for IndexSet {
    /// Lexicographic order on the increasing member sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        let x = self.0 ^ other.0;
        if x == 0 {
            return Ordering::Equal;
        }
        let t = x.trailing_zeros();
        let (lacks, self_has) = if self.0 >> t & 1 == 1 {
            (other.0, true)
        } else {
            (self.0, false)
        };
        let lacks_rest = if t == 63 { 0 } else { lacks >> (t + 1) };
        // the set lacking t is a prefix of the other iff it has nothing above t
        let has_is_smaller = lacks_rest != 0;
        match (self_has, has_is_smaller) {
            (true, true) | (false, false) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", b + 1)?;
        }
        write!(f, "}}")
    }
}

/// Sign of moving symbol `b` to the front of the wedge monomial `m`
/// (`(-1)^{#members below b}`).
#[inline]
pub fn sign_below(m: u64, b: usize) -> i64 {
    if (m & ((1u64 << b) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign needed to merge two disjoint increasing sequences `a` then `b` into
/// increasing order.
pub fn merge_sign(a: u64, b: u64) -> i64 {
    debug_assert_eq!(a & b, 0);
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let t = rest.trailing_zeros();
        rest &= rest - 1;
        // members of a above t precede t in the concatenation
        let above = if t == 63 { 0 } else { a >> (t + 1) };
        inversions += above.count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
