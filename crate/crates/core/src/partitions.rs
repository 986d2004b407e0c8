//! Restricted set partitions.
//!
//! Both coefficient families are sums over partitions of `{1, …, m}` in
//! which some elements (the *large* ones) may not sit alone in a block.
//! The parametric family is the case where only element 1 is small; the
//! implicit family makes `1..=n` small.
//!
//! Enumeration walks restricted growth strings in lexicographic order and
//! prunes any prefix that can no longer be completed, so the cost is
//! proportional to the number of partitions produced.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A partition of `{1, …, ground_size}` into nonempty disjoint blocks.
///
/// Blocks are kept sorted by their minimum element and the elements of a
/// block are ascending, so two equal partitions compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    ground_size: usize,
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    /// Builds a partition from arbitrary blocks, checking that they are
    /// nonempty, disjoint and cover `1..=ground_size`.
    pub fn new(ground_size: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        if ground_size == 0 {
            return Err(Error::InvalidPartition("empty ground set".into()));
        }
        let mut seen = vec![false; ground_size];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &e in block.iter() {
                if e == 0 || e as usize > ground_size {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} outside 1..={ground_size}"
                    )));
                }
                if std::mem::replace(&mut seen[e as usize - 1], true) {
                    return Err(Error::InvalidPartition(format!("element {e} repeated")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("element {} not covered", missing + 1)));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { ground_size, blocks })
    }

    /// Decodes a restricted growth string (`rgs[i]` is the block of element
    /// `i + 1`, blocks numbered by first appearance).
    pub fn from_restricted_growth(rgs: &[u32]) -> Result<Self> {
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for (i, &b) in rgs.iter().enumerate() {
            let b = b as usize;
            if b > blocks.len() {
                return Err(Error::InvalidPartition(format!(
                    "not a restricted growth string at position {}",
                    i + 1
                )));
            }
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(i as u32 + 1);
        }
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("empty ground set".into()));
        }
        Ok(SetPartition {
            ground_size: rgs.len(),
            blocks,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, element: u32) -> Option<&[u32]> {
        self.blocks
            .iter()
            .find(|b| b.binary_search(&element).is_ok())
            .map(Vec::as_slice)
    }

    pub fn restricted_growth_string(&self) -> Vec<u32> {
        let mut rgs = vec![0; self.ground_size];
        for (i, block) in self.blocks.iter().enumerate() {
            for &e in block {
                rgs[e as usize - 1] = i as u32;
            }
        }
        rgs
    }

    /// True when no large element of `roles` forms a singleton block.
    pub fn respects(&self, roles: RoleSplit) -> bool {
        self.ground_size == roles.ground_size && self.blocks.iter().all(|b| b.len() > 1 || roles.is_small(b[0]))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// Splits `{1, …, ground_size}` into small elements `1..=small_count` and
/// large elements above it. Large elements may not be singletons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RoleSplit {
    small_count: usize,
    ground_size: usize,
}

impl RoleSplit {
    pub fn new(small_count: usize, ground_size: usize) -> Result<Self> {
        if small_count > ground_size {
            return Err(Error::InvalidPartition(format!(
                "small_count {small_count} exceeds ground size {ground_size}"
            )));
        }
        Ok(RoleSplit {
            small_count,
            ground_size,
        })
    }

    /// The parametric class: only element 1 may be a singleton.
    pub fn parametric(n: u32, k: u32) -> Self {
        RoleSplit {
            small_count: 1,
            ground_size: (n + k) as usize,
        }
    }

    /// The implicit class: `1..=n` are small, `n+1..=n+k-1` are large.
    pub fn implicit(n: u32, k: u32) -> Self {
        RoleSplit {
            small_count: n as usize,
            ground_size: (n + k - 1) as usize,
        }
    }

    pub fn small_count(&self) -> usize {
        self.small_count
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn is_small(&self, element: u32) -> bool {
        element as usize <= self.small_count
    }
}

/// Visits every partition of `roles.ground_size()` elements into exactly
/// `blocks` blocks that respects `roles`, in lexicographic order of the
/// restricted growth string.
pub fn for_each_restricted_partition<F>(roles: RoleSplit, blocks: usize, mut visit: F)
where
    F: FnMut(SetPartition),
{
    let ground = roles.ground_size;
    if ground == 0 || blocks == 0 || blocks > ground {
        return;
    }
    let mut walker = Walker {
        ground,
        small: roles.small_count,
        target: blocks,
        rgs: vec![0; ground],
        sizes: Vec::with_capacity(blocks),
        pending: 0,
    };
    // element 1 always opens block 0
    walker.sizes.push(1);
    if !walker.is_small(0) {
        walker.pending = 1;
    }
    if walker.feasible(1) {
        walker.descend(1, &mut visit);
    }
}

struct Walker {
    ground: usize,
    small: usize,
    target: usize,
    rgs: Vec<u32>,
    sizes: Vec<usize>,
    // blocks that currently hold a single large element
    pending: usize,
}

impl Walker {
    fn is_small(&self, index: usize) -> bool {
        index < self.small
    }

    /// Whether the first `placed` elements can still be completed.
    fn feasible(&self, placed: usize) -> bool {
        let remaining = self.ground - placed;
        let small_left = self.small.saturating_sub(placed);
        let new_blocks = self.target - self.sizes.len();
        let paired = new_blocks.saturating_sub(small_left);
        self.pending + new_blocks + paired <= remaining
    }

    fn descend<F: FnMut(SetPartition)>(&mut self, index: usize, visit: &mut F) {
        if index == self.ground {
            if self.sizes.len() == self.target && self.pending == 0 {
                let p = SetPartition::from_restricted_growth(&self.rgs)
                    .expect("walker only produces restricted growth strings");
                visit(p);
            }
            return;
        }
        let open = self.sizes.len();
        let top = if open < self.target { open } else { open - 1 };
        for b in 0..=top {
            let fixes_pending = b < open && self.sizes[b] == 1 && !self.is_small(self.rgs_first(b));
            let opens_pending = b == open && !self.is_small(index);
            if b == open {
                self.sizes.push(1);
            } else {
                self.sizes[b] += 1;
            }
            if fixes_pending {
                self.pending -= 1;
            }
            if opens_pending {
                self.pending += 1;
            }
            self.rgs[index] = b as u32;

            if self.feasible(index + 1) {
                self.descend(index + 1, visit);
            }

            if opens_pending {
                self.pending -= 1;
            }
            if fixes_pending {
                self.pending += 1;
            }
            if b == open {
                self.sizes.pop();
            } else {
                self.sizes[b] -= 1;
            }
        }
    }

    // index of the first element of block `b`
    fn rgs_first(&self, b: usize) -> usize {
        self.rgs
            .iter()
            .position(|&x| x as usize == b)
            .expect("open block has an element")
    }
}

pub fn enumerate_restricted_partitions(roles: RoleSplit, blocks: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    for_each_restricted_partition(roles, blocks, |p| out.push(p));
    out
}

/// Partitions of `{1, …, n+k}` into `k+1` blocks where only `{1}` may be a
/// singleton. Empty outside `0 <= k <= n-1`.
pub fn enumerate_parametric_partitions(n: u32, k: i64) -> Vec<SetPartition> {
    let mut out = Vec::new();
    for_each_parametric_partition(n, k, |p| out.push(p));
    out
}

pub fn for_each_parametric_partition<F: FnMut(SetPartition)>(n: u32, k: i64, visit: F) {
    if n == 0 || k < 0 || k > i64::from(n) - 1 {
        return;
    }
    let k = k as u32;
    for_each_restricted_partition(RoleSplit::parametric(n, k), k as usize + 1, visit);
}

/// Partitions of `{1, …, n+k-1}` into `k` blocks where no element above
/// `n` is a singleton. Empty outside `1 <= k <= 2n-1`.
pub fn enumerate_implicit_partitions(n: u32, k: i64) -> Vec<SetPartition> {
    let mut out = Vec::new();
    for_each_implicit_partition(n, k, |p| out.push(p));
    out
}

pub fn for_each_implicit_partition<F: FnMut(SetPartition)>(n: u32, k: i64, visit: F) {
    if n == 0 || k < 1 || k > 2 * i64::from(n) - 1 {
        return;
    }
    let k = k as u32;
    for_each_restricted_partition(RoleSplit::implicit(n, k), k as usize, visit);
}

/// Counts partitions of `ground` elements into `blocks` blocks in which
/// elements beyond the first `small` are never singletons.
///
/// Elements are added in order while tracking how many blocks are
/// currently a lone large element; those must absorb a later element.
pub fn count_restricted_partitions(ground: usize, small: usize, blocks: usize) -> BigUint {
    if ground == 0 {
        return if blocks == 0 { BigUint::one() } else { BigUint::zero() };
    }
    if blocks == 0 || blocks > ground {
        return BigUint::zero();
    }
    // table[j][p]: j blocks open, p of them lone large elements
    let width = blocks + 1;
    let mut table = vec![vec![BigUint::zero(); width]; width];
    table[0][0] = BigUint::one();
    for index in 0..ground {
        let large = index >= small;
        let mut next = vec![vec![BigUint::zero(); width]; width];
        for j in 0..=blocks {
            for p in 0..=j {
                let ways = &table[j][p];
                if ways.is_zero() {
                    continue;
                }
                if p > 0 {
                    next[j][p - 1] += ways * BigUint::from(p);
                }
                if j > p {
                    next[j][p] += ways * BigUint::from(j - p);
                }
                if j < blocks {
                    let q = if large { p + 1 } else { p };
                    next[j + 1][q] += ways;
                }
            }
        }
        table = next;
    }
    std::mem::take(&mut table[blocks][0])
}

pub fn count_parametric_partitions(n: u32, k: i64) -> BigUint {
    if n == 0 || k < 0 {
        return BigUint::zero();
    }
    count_restricted_partitions((i64::from(n) + k) as usize, 1, k as usize + 1)
}

pub fn count_implicit_partitions(n: u32, k: i64) -> BigUint {
    if n == 0 || k < 1 {
        return BigUint::zero();
    }
    count_restricted_partitions((i64::from(n) + k - 1) as usize, n as usize, k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(ps: &[SetPartition]) -> Vec<String> {
        ps.iter().map(ToString::to_string).collect()
    }

    /// Every partition of `ground` elements by brute force over all
    /// restricted growth strings.
    fn all_partitions(ground: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut rgs = vec![0u32; ground];
        loop {
            out.push(SetPartition::from_restricted_growth(&rgs).unwrap());
            // next restricted growth string
            let mut i = ground;
            loop {
                if i <= 1 {
                    return out;
                }
                i -= 1;
                let max_prefix = *rgs[..i].iter().max().unwrap();
                if rgs[i] <= max_prefix {
                    rgs[i] += 1;
                    for x in &mut rgs[i + 1..] {
                        *x = 0;
                    }
                    break;
                }
            }
        }
    }

    fn brute_force(roles: RoleSplit, blocks: usize) -> Vec<SetPartition> {
        all_partitions(roles.ground_size())
            .into_iter()
            .filter(|p| p.num_blocks() == blocks && p.respects(roles))
            .collect()
    }

    #[test]
    fn parametric_three_one() {
        let ps = enumerate_parametric_partitions(3, 1);
        assert_eq!(show(&ps), ["{1,2},{3,4}", "{1,3},{2,4}", "{1,4},{2,3}", "{1},{2,3,4}"]);
    }

    #[test]
    fn parametric_k_zero_is_one_block() {
        for n in 1..8 {
            let ps = enumerate_parametric_partitions(n, 0);
            assert_eq!(ps.len(), 1);
            assert_eq!(ps[0].blocks(), [(1..=n).collect::<Vec<_>>()]);
        }
    }

    #[test]
    fn parametric_four_three_is_singleton_plus_doubletons() {
        let ps = enumerate_parametric_partitions(4, 3);
        assert_eq!(ps.len(), 15);
        for p in &ps {
            assert_eq!(p.blocks()[0], [1]);
            assert!(p.blocks()[1..].iter().all(|b| b.len() == 2));
        }
    }

    #[test]
    fn implicit_examples() {
        assert_eq!(show(&enumerate_implicit_partitions(2, 3)), ["{1},{2},{3,4}"]);
        assert_eq!(show(&enumerate_implicit_partitions(4, 1)), ["{1,2,3,4}"]);
        let ps = enumerate_implicit_partitions(3, 5);
        assert_eq!(ps.len(), 3);
        for p in &ps {
            assert_eq!(&p.blocks()[..3], [vec![1], vec![2], vec![3]]);
            assert!(p.blocks()[3..].iter().all(|b| b.len() == 2 && b[0] > 3));
        }
    }

    #[test]
    fn out_of_range_is_empty() {
        assert!(enumerate_parametric_partitions(4, 4).is_empty());
        assert!(enumerate_parametric_partitions(4, -1).is_empty());
        assert!(enumerate_implicit_partitions(2, 4).is_empty());
        assert!(enumerate_implicit_partitions(3, 0).is_empty());
        assert_eq!(count_implicit_partitions(2, 4), BigUint::zero());
        assert_eq!(count_parametric_partitions(5, 7), BigUint::zero());
    }

    #[test]
    fn pruned_walk_matches_brute_force() {
        for ground in 1..=8 {
            for small in 0..=ground {
                for blocks in 1..=ground {
                    let roles = RoleSplit::new(small, ground).unwrap();
                    assert_eq!(
                        enumerate_restricted_partitions(roles, blocks),
                        brute_force(roles, blocks),
                        "ground={ground} small={small} blocks={blocks}"
                    );
                }
            }
        }
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_parametric_partitions(4, 2), BigUint::from(25u32));
        assert_eq!(count_implicit_partitions(3, 4), BigUint::from(10u32));
        for n in 1..10 {
            assert_eq!(count_parametric_partitions(n, 0), BigUint::one());
        }
        // frozen from the brute-force enumeration above
        let p63 = brute_force(RoleSplit::parametric(6, 3), 4).len();
        assert_eq!(p63, 1750);
        assert_eq!(count_parametric_partitions(6, 3), BigUint::from(1750u32));
        let i43 = brute_force(RoleSplit::implicit(4, 3), 3).len();
        assert_eq!(i43, 61);
        assert_eq!(count_implicit_partitions(4, 3), BigUint::from(61u32));
    }

    #[test]
    fn counts_match_enumeration() {
        for n in 1..=7u32 {
            for k in -1..=i64::from(n) + 1 {
                assert_eq!(
                    count_parametric_partitions(n, k),
                    BigUint::from(enumerate_parametric_partitions(n, k).len()),
                    "P n={n} k={k}"
                );
            }
        }
        for n in 1..=6u32 {
            for k in 0..=2 * i64::from(n) + 1 {
                assert_eq!(
                    count_implicit_partitions(n, k),
                    BigUint::from(enumerate_implicit_partitions(n, k).len()),
                    "I n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn unrestricted_counts_are_stirling_numbers() {
        // S(m, j) = j S(m-1, j) + S(m-1, j-1)
        let mut stirling = vec![vec![BigUint::zero(); 16]; 16];
        stirling[0][0] = BigUint::one();
        for m in 1..16 {
            for j in 1..=m {
                stirling[m][j] = &stirling[m - 1][j] * BigUint::from(j) + &stirling[m - 1][j - 1];
            }
        }
        for (m, row) in stirling.iter().enumerate().skip(1) {
            for (j, s) in row.iter().enumerate() {
                assert_eq!(count_restricted_partitions(m, m, j), *s);
            }
        }
    }

    #[test]
    fn emptiness_matches_range() {
        for n in 1..=6u32 {
            for k in -2..=2 * i64::from(n) + 2 {
                let p_empty = enumerate_parametric_partitions(n, k).is_empty();
                assert_eq!(p_empty, k < 0 || k > i64::from(n) - 1);
                let i_empty = enumerate_implicit_partitions(n, k).is_empty();
                assert_eq!(i_empty, k < 1 || k > 2 * i64::from(n) - 1);
            }
        }
    }

    #[test]
    fn output_is_in_rgs_order_and_valid() {
        let ps = enumerate_implicit_partitions(4, 4);
        let roles = RoleSplit::implicit(4, 4);
        let strings: Vec<_> = ps.iter().map(|p| p.restricted_growth_string()).collect();
        assert!(strings.windows(2).all(|w| w[0] < w[1]));
        for p in &ps {
            let rebuilt = SetPartition::new(p.ground_size(), p.blocks().to_vec()).unwrap();
            assert_eq!(&rebuilt, p);
            assert!(p.respects(roles));
        }
    }

    #[test]
    fn rejects_bad_blocks() {
        assert!(SetPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2, 3], vec![]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 2, 3]]).is_err());
        assert!(RoleSplit::new(4, 3).is_err());
        let p = SetPartition::new(4, vec![vec![4, 2], vec![3, 1]]).unwrap();
        assert_eq!(p.to_string(), "{1,3},{2,4}");
        assert_eq!(p.block_of(4), Some(&[2, 4][..]));
    }
}
