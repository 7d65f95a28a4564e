//! Nested dyadic partition of the sample space and the multi-scale count
//! transform of the data.
//!
//! The sample space `[omega_lo, omega_hi]` is recursively bisected down to a
//! maximum depth `K`, producing `2^(K+1) - 1` windows laid out as a complete
//! binary tree. Each replicate sample is then reduced to per-window counts:
//! window `A` with children `A_l`, `A_r` hosts a Binomial experiment with
//! sufficient statistic `(n(A_l), n(A_r))`. Interval membership is half-open
//! `[lo, hi)` except that the rightmost window at each level is closed on the
//! right, so every observation follows exactly one root-to-leaf path.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// How a parent interval is split into its two children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitRule {
    /// Split `(a, b)` at the arithmetic midpoint `(a + b) / 2`.
    Midpoint,
    /// Split at the quantile midpoint `F^-1((F(a) + F(b)) / 2)` of a base CDF.
    Quantile,
}

/// One window of the partition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub level: usize,
    pub index_in_level: usize,
    pub lo: f64,
    pub hi: f64,
}

/// The nested dyadic partition, materialized as a flat array in heap order:
/// window `t` has children `2t + 1` and `2t + 2`.
#[derive(Debug, Clone)]
pub struct WindowTree {
    omega_lo: f64,
    omega_hi: f64,
    max_depth: usize,
    split_rule: SplitRule,
    windows: Vec<Window>,
}

impl WindowTree {
    /// Build a partition with midpoint splits.
    pub fn build(omega_lo: f64, omega_hi: f64, max_depth: usize) -> Result<Self> {
        Self::build_with(omega_lo, omega_hi, max_depth, SplitRule::Midpoint, |_, _| {
            unreachable!()
        })
    }

    /// Build a partition with quantile-midpoint splits under `cdf`, the
    /// cumulative distribution function of a base measure on the sample
    /// space. The split point of `(a, b)` solves `F(c) = (F(a) + F(b)) / 2`
    /// by bisection.
    pub fn build_quantile(
        omega_lo: f64,
        omega_hi: f64,
        max_depth: usize,
        cdf: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        Self::build_with(omega_lo, omega_hi, max_depth, SplitRule::Quantile, |a, b| {
            let target = 0.5 * (cdf(a) + cdf(b));
            let (mut lo, mut hi) = (a, b);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if cdf(mid) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        })
    }

    fn build_with(
        omega_lo: f64,
        omega_hi: f64,
        max_depth: usize,
        split_rule: SplitRule,
        split: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        if !(omega_lo.is_finite() && omega_hi.is_finite()) || omega_lo >= omega_hi {
            return Err(Error::InvalidInterval {
                lo: omega_lo,
                hi: omega_hi,
            });
        }
        if max_depth > 26 {
            return Err(Error::DepthTooLarge {
                depth: max_depth,
                reason: "more than 2^27 windows".into(),
            });
        }
        let n_windows = (1usize << (max_depth + 1)) - 1;
        let mut windows = Vec::with_capacity(n_windows);
        windows.push(Window {
            level: 0,
            index_in_level: 0,
            lo: omega_lo,
            hi: omega_hi,
        });
        for t in 0..n_windows {
            let w = windows[t];
            if w.level == max_depth {
                continue;
            }
            let c = match split_rule {
                SplitRule::Midpoint => 0.5 * (w.lo + w.hi),
                SplitRule::Quantile => split(w.lo, w.hi),
            };
            if !(c > w.lo && c < w.hi) {
                return Err(Error::DepthTooLarge {
                    depth: max_depth,
                    reason: format!(
                        "interval [{}, {}] at level {} cannot be split: \
                         child width collapses below machine spacing",
                        w.lo, w.hi, w.level
                    ),
                });
            }
            debug_assert_eq!(windows.len(), 2 * t + 1);
            windows.push(Window {
                level: w.level + 1,
                index_in_level: 2 * w.index_in_level,
                lo: w.lo,
                hi: c,
            });
            windows.push(Window {
                level: w.level + 1,
                index_in_level: 2 * w.index_in_level + 1,
                lo: c,
                hi: w.hi,
            });
        }
        Ok(WindowTree {
            omega_lo,
            omega_hi,
            max_depth,
            split_rule,
            windows,
        })
    }

    pub fn omega(&self) -> (f64, f64) {
        (self.omega_lo, self.omega_hi)
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn split_rule(&self) -> SplitRule {
        self.split_rule
    }

    pub fn n_windows(&self) -> usize {
        self.windows.len()
    }

    pub fn window(&self, t: usize) -> &Window {
        &self.windows[t]
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        if t == 0 {
            None
        } else {
            Some((t - 1) / 2)
        }
    }

    /// Children `(left, right)` of window `t`, if it is not a leaf.
    pub fn children(&self, t: usize) -> Option<(usize, usize)> {
        let l = 2 * t + 1;
        if l + 1 < self.windows.len() {
            Some((l, l + 1))
        } else {
            None
        }
    }

    pub fn is_leaf(&self, t: usize) -> bool {
        self.children(t).is_none()
    }

    /// Indices of the windows at `level`, in left-to-right order.
    pub fn level_range(&self, level: usize) -> std::ops::Range<usize> {
        let start = (1usize << level) - 1;
        start..(start + (1usize << level))
    }

    /// Leaf index (position within the deepest level) of an observation.
    /// Membership is half-open on the right except at the rightmost window.
    fn leaf_path(&self, x: f64) -> usize {
        let mut t = 0;
        while let Some((l, r)) = self.children(t) {
            t = if x < self.windows[l].hi { l } else { r };
        }
        t
    }
}

/// One replicate sample: a label and its raw observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Replicate {
    pub label: String,
    pub values: Vec<f64>,
}

/// One group of replicate samples collected under a common condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Group {
    pub label: String,
    pub replicates: Vec<Replicate>,
}

/// The full data set: `k >= 2` groups, each with at least one replicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub groups: Vec<Group>,
}

impl Dataset {
    pub fn n_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn total_observations(&self) -> usize {
        self.groups
            .iter()
            .flat_map(|g| &g.replicates)
            .map(|r| r.values.len())
            .sum()
    }

    /// Check the group/replicate shape constraints.
    pub fn validate(&self) -> Result<()> {
        if self.groups.len() < 2 {
            return Err(Error::TooFewGroups(self.groups.len()));
        }
        for g in &self.groups {
            if g.replicates.is_empty() {
                return Err(Error::EmptyGroup(g.label.clone()));
            }
        }
        Ok(())
    }

    /// Smallest and largest observation, if any exist.
    pub fn value_range(&self) -> Option<(f64, f64)> {
        let mut range: Option<(f64, f64)> = None;
        for g in &self.groups {
            for r in &g.replicates {
                for &v in &r.values {
                    range = Some(match range {
                        None => (v, v),
                        Some((lo, hi)) => (lo.min(v), hi.max(v)),
                    });
                }
            }
        }
        range
    }
}

/// Per-window, per-replicate observation counts.
///
/// Counts are stored per window as a flat vector over replicate slots;
/// `group_offsets` maps group `i` to its slot range. The sufficient
/// statistic of window `t` is read off its children's counts, so leaves
/// carry only their own totals.
#[derive(Debug, Clone)]
pub struct CountTree {
    n_windows: usize,
    group_offsets: Vec<usize>,
    counts: Vec<Vec<u64>>,
}

impl CountTree {
    /// Bin every observation of `data` into `tree`.
    pub fn bin(tree: &WindowTree, data: &Dataset) -> Result<Self> {
        let (lo, hi) = tree.omega();
        let mut group_offsets = Vec::with_capacity(data.groups.len() + 1);
        group_offsets.push(0);
        for g in &data.groups {
            group_offsets.push(group_offsets.last().unwrap() + g.replicates.len());
        }
        let n_slots = *group_offsets.last().unwrap();
        let mut counts = vec![vec![0u64; n_slots]; tree.n_windows()];

        for (gi, g) in data.groups.iter().enumerate() {
            for (ri, rep) in g.replicates.iter().enumerate() {
                let slot = group_offsets[gi] + ri;
                for (xi, &x) in rep.values.iter().enumerate() {
                    if !(x >= lo && x <= hi) {
                        return Err(Error::ObservationOutOfRange {
                            group: g.label.clone(),
                            replicate: rep.label.clone(),
                            index: xi,
                            value: x,
                            lo,
                            hi,
                        });
                    }
                    let mut t = tree.leaf_path(x);
                    counts[t][slot] += 1;
                    while let Some(p) = tree.parent(t) {
                        counts[p][slot] += 1;
                        t = p;
                    }
                }
            }
        }
        Ok(CountTree {
            n_windows: tree.n_windows(),
            group_offsets,
            counts,
        })
    }

    pub fn n_windows(&self) -> usize {
        self.n_windows
    }

    pub fn n_groups(&self) -> usize {
        self.group_offsets.len() - 1
    }

    pub fn n_replicates(&self, group: usize) -> usize {
        self.group_offsets[group + 1] - self.group_offsets[group]
    }

    /// Total count of window `t` for replicate `j` of group `i`.
    pub fn count(&self, t: usize, group: usize, replicate: usize) -> u64 {
        self.counts[t][self.group_offsets[group] + replicate]
    }

    /// Window total pooled over every replicate of every group.
    pub fn window_total(&self, t: usize) -> u64 {
        self.counts[t].iter().sum()
    }

    /// Number of groups with at least one observation in window `t`.
    pub fn groups_with_data(&self, t: usize) -> usize {
        (0..self.n_groups())
            .filter(|&i| {
                (self.group_offsets[i]..self.group_offsets[i + 1])
                    .any(|s| self.counts[t][s] > 0)
            })
            .count()
    }

    /// Left/right child counts `(n(A_l), n(A_r))` for every replicate of
    /// `group` in window `t`; `None` when `t` is a leaf.
    pub fn child_pairs(
        &self,
        tree: &WindowTree,
        t: usize,
        group: usize,
    ) -> Option<Vec<(u64, u64)>> {
        let (l, r) = tree.children(t)?;
        Some(
            (self.group_offsets[group]..self.group_offsets[group + 1])
                .map(|s| (self.counts[l][s], self.counts[r][s]))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_group(values: &[f64]) -> Group {
        Group {
            label: "g".into(),
            replicates: vec![Replicate {
                label: "r".into(),
                values: values.to_vec(),
            }],
        }
    }

    #[test]
    fn depth_one_midpoint_windows() {
        let tree = WindowTree::build(0.0, 1.0, 1).unwrap();
        assert_eq!(tree.n_windows(), 3);
        assert_eq!((tree.window(0).lo, tree.window(0).hi), (0.0, 1.0));
        assert_eq!((tree.window(1).lo, tree.window(1).hi), (0.0, 0.5));
        assert_eq!((tree.window(2).lo, tree.window(2).hi), (0.5, 1.0));
    }

    #[test]
    fn depth_zero_is_a_single_root() {
        let tree = WindowTree::build(0.0, 1.0, 0).unwrap();
        assert_eq!(tree.n_windows(), 1);
        assert!(tree.is_leaf(0));
    }

    #[test]
    fn window_count_is_complete_binary_tree() {
        for k in 0..8 {
            let tree = WindowTree::build(-1.0, 3.0, k).unwrap();
            assert_eq!(tree.n_windows(), (1 << (k + 1)) - 1);
            for j in 0..=k {
                assert_eq!(tree.level_range(j).len(), 1 << j);
            }
        }
    }

    #[test]
    fn quantile_rule_with_square_cdf() {
        // Base CDF F(x) = x^2 on (0,1): the level-1 split solves c^2 = 1/2.
        let tree = WindowTree::build_quantile(0.0, 1.0, 2, |x| x * x).unwrap();
        assert!((tree.window(1).hi - 0.5f64.sqrt()).abs() < 1e-10);
        // Level-2 splits: F^-1(0.25) = 0.5 and F^-1(0.75) = sqrt(3)/2.
        assert!((tree.window(3).hi - 0.5).abs() < 1e-10);
        assert!((tree.window(5).hi - 0.75f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn quantile_uniform_base_matches_midpoint() {
        let q = WindowTree::build_quantile(2.0, 6.0, 4, |x| (x - 2.0) / 4.0).unwrap();
        let m = WindowTree::build(2.0, 6.0, 4).unwrap();
        for (a, b) in q.windows().iter().zip(m.windows()) {
            assert!((a.lo - b.lo).abs() < 1e-9 && (a.hi - b.hi).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_interval_is_rejected() {
        assert!(matches!(
            WindowTree::build(1.0, 1.0, 2),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(WindowTree::build(f64::NAN, 1.0, 2).is_err());
    }

    #[test]
    fn collapsing_split_is_rejected() {
        // An interval one ulp wide cannot be bisected.
        let lo = 1.0;
        let hi = f64::from_bits(1.0f64.to_bits() + 1);
        assert!(matches!(
            WindowTree::build(lo, hi, 3),
            Err(Error::DepthTooLarge { .. })
        ));
    }

    #[test]
    fn single_observation_follows_one_path() {
        let tree = WindowTree::build(0.0, 1.0, 2).unwrap();
        let data = Dataset {
            groups: vec![one_group(&[0.25]), one_group(&[])],
        };
        let counts = CountTree::bin(&tree, &data).unwrap();
        assert_eq!(counts.count(0, 0, 0), 1);
        assert_eq!(counts.count(1, 0, 0), 1); // [0, 0.5)
        assert_eq!(counts.count(4, 0, 0), 1); // [0.25, 0.5)
        assert_eq!(counts.count(3, 0, 0), 0); // [0, 0.25): half-open boundary
        assert_eq!(counts.count(2, 0, 0), 0);
        assert_eq!(counts.count(5, 0, 0), 0);
        assert_eq!(counts.count(6, 0, 0), 0);
    }

    #[test]
    fn empty_dataset_has_zero_counts() {
        let tree = WindowTree::build(0.0, 1.0, 3).unwrap();
        let data = Dataset {
            groups: vec![one_group(&[]), one_group(&[])],
        };
        let counts = CountTree::bin(&tree, &data).unwrap();
        for t in 0..tree.n_windows() {
            assert_eq!(counts.window_total(t), 0);
        }
    }

    #[test]
    fn equally_spaced_points_fill_leaves() {
        // Points 0.0625 * (2m + 1) are the midpoints of the 8 level-3 leaves.
        let tree = WindowTree::build(0.0, 1.0, 3).unwrap();
        let values: Vec<f64> = (0..8).map(|m| 0.0625 * (2.0 * m as f64 + 1.0)).collect();
        let data = Dataset {
            groups: vec![one_group(&values), one_group(&[])],
        };
        let counts = CountTree::bin(&tree, &data).unwrap();
        for t in tree.level_range(3) {
            assert_eq!(counts.count(t, 0, 0), 1);
        }
        for t in tree.level_range(2) {
            assert_eq!(counts.count(t, 0, 0), 2);
        }
    }

    #[test]
    fn observation_at_omega_hi_goes_to_rightmost_leaf() {
        let tree = WindowTree::build(0.0, 1.0, 3).unwrap();
        let data = Dataset {
            groups: vec![one_group(&[1.0]), one_group(&[])],
        };
        let counts = CountTree::bin(&tree, &data).unwrap();
        let rightmost = tree.level_range(3).end - 1;
        assert_eq!(counts.count(rightmost, 0, 0), 1);
    }

    #[test]
    fn out_of_range_observation_reports_its_index() {
        let tree = WindowTree::build(0.0, 1.0, 2).unwrap();
        let data = Dataset {
            groups: vec![one_group(&[0.5, 1.5]), one_group(&[])],
        };
        match CountTree::bin(&tree, &data) {
            Err(Error::ObservationOutOfRange { index, value, .. }) => {
                assert_eq!(index, 1);
                assert_eq!(value, 1.5);
            }
            other => panic!("expected out-of-range error, got {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_single_group() {
        let data = Dataset {
            groups: vec![one_group(&[0.5])],
        };
        assert!(matches!(data.validate(), Err(Error::TooFewGroups(1))));
    }
}
