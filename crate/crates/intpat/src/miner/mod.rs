//! Depth-first miners over the interval-pattern search space.
//!
//! Both miners walk the same tree of minimal changes: a step either drops
//! an interval's upper bound to the adjacent smaller range value (a right
//! change) or raises the lower bound to the adjacent larger one (a left
//! change). Change tokens are totally ordered — by attribute, right before
//! left — and a path only ever applies tokens in non-decreasing order, so
//! every pattern is reached along exactly one path.
//!
//! [`closed`] enumerates frequent closed patterns by jumping to the closure
//! at every node and keeping canonically generated closures only.
//! [`generators`] enumerates frequent generators by exploring the same
//! tokens in reverse order and consulting a store of already accepted
//! generators ([`store`]).
//!
//! The searches recurse one level per applied change, so the stack depth
//! is bounded by twice the summed range sizes; the peak is reported in
//! [`MineStats`].

pub mod closed;
pub mod generators;
pub mod store;

use crate::dataset::NumericalDataset;
use crate::patterns::Interval;
use crate::value::Value;

pub use closed::{mine_closed, mine_closed_parallel, ClosedPattern};
pub use generators::{mine_generators, GeneratorPattern};
pub use store::{GeneratorStore, HashStore, StoreKind, TrieStore};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MinerError {
    #[error("minimal support {minsup} out of range, expected 1..={max}")]
    MinsupOutOfRange { minsup: usize, max: usize },
    #[error("no minimal change applies to a degenerate interval")]
    DegenerateInterval,
    #[error("interval bound {0} does not occur in the attribute range")]
    BoundNotInRange(Value),
}

/// Which interval bound a minimal change moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChangeSide {
    /// Shrink the upper bound.
    Right,
    /// Raise the lower bound.
    Left,
}

/// One slot in the lectic order of changes: an attribute and a side.
/// `(j, Right) < (j, Left) < (j+1, Right) < ...`
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChangeToken {
    pub attr: usize,
    pub side: ChangeSide,
}

impl ChangeToken {
    pub(crate) fn from_index(index: usize) -> ChangeToken {
        ChangeToken {
            attr: index / 2,
            side: if index.is_multiple_of(2) {
                ChangeSide::Right
            } else {
                ChangeSide::Left
            },
        }
    }
}

/// Mining parameters: an absolute minimal support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinerConfig {
    pub minsup: usize,
}

impl MinerConfig {
    pub fn new(minsup: usize) -> MinerConfig {
        MinerConfig { minsup }
    }

    pub(crate) fn validate(&self, ds: &NumericalDataset) -> Result<(), MinerError> {
        if self.minsup < 1 || self.minsup > ds.object_count() {
            return Err(MinerError::MinsupOutOfRange {
                minsup: self.minsup,
                max: ds.object_count(),
            });
        }
        Ok(())
    }
}

/// Counters reported alongside a mining run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MineStats {
    /// Patterns emitted.
    pub emitted: u64,
    /// Candidates whose support fell below the threshold.
    pub pruned_infrequent: u64,
    /// Candidates rejected by the canonicity test or the generator store.
    pub rejected: u64,
    /// Deepest point of the candidate stack.
    pub peak_depth: usize,
}

fn position_in(range: &[Value], v: Value) -> Result<usize, MinerError> {
    range
        .binary_search(&v)
        .map_err(|_| MinerError::BoundNotInRange(v))
}

/// Right minimal change: `[a, b] -> [a, v]` with `v` the predecessor of
/// `b` in the range. Degenerate intervals admit no change — the caller
/// backtracks.
pub fn min_change_right(iv: &Interval, range: &[Value]) -> Result<Interval, MinerError> {
    if iv.is_degenerate() {
        return Err(MinerError::DegenerateInterval);
    }
    let hi_pos = position_in(range, iv.hi())?;
    position_in(range, iv.lo())?;
    Ok(Interval::new(iv.lo(), range[hi_pos - 1]).expect("predecessor keeps order"))
}

/// Left minimal change: `[a, b] -> [w, b]` with `w` the successor of `a`.
pub fn min_change_left(iv: &Interval, range: &[Value]) -> Result<Interval, MinerError> {
    if iv.is_degenerate() {
        return Err(MinerError::DegenerateInterval);
    }
    let lo_pos = position_in(range, iv.lo())?;
    position_in(range, iv.hi())?;
    Ok(Interval::new(range[lo_pos + 1], iv.hi()).expect("successor keeps order"))
}

/// One event of the single-attribute traversal trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkEvent {
    /// A node reached for the first time (the root included).
    Visit(Interval),
    /// Return along a tree edge after a subtree is exhausted.
    Backtrack { from: Interval, to: Interval },
}

/// Depth-first traversal of all intervals over one attribute range,
/// recording visits and backtracks. Every interval is visited exactly
/// once; right changes are explored before left changes.
pub fn single_attribute_walk(range: &[Value]) -> Vec<WalkEvent> {
    fn descend(node: Interval, allow_right: bool, range: &[Value], events: &mut Vec<WalkEvent>) {
        if node.is_degenerate() {
            return;
        }
        if allow_right {
            let child = min_change_right(&node, range).expect("non-degenerate");
            events.push(WalkEvent::Visit(child));
            descend(child, true, range, events);
            events.push(WalkEvent::Backtrack {
                from: child,
                to: node,
            });
        }
        let child = min_change_left(&node, range).expect("non-degenerate");
        events.push(WalkEvent::Visit(child));
        descend(child, false, range, events);
        events.push(WalkEvent::Backtrack {
            from: child,
            to: node,
        });
    }

    assert!(!range.is_empty(), "attribute range must be non-empty");
    let root = Interval::new(range[0], *range.last().unwrap()).unwrap();
    let mut events = vec![WalkEvent::Visit(root)];
    descend(root, true, range, &mut events);
    events
}
