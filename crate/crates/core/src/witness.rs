//! Extraction of well-connected and odd-connected subsets.
//!
//! Two routes are offered. Pruning finds the maximal well-connected subset
//! directly. The algebraic route looks for a GF(2) dependency among the top
//! boundaries of the given strings: the support `W` of such a dependency
//! covers every `(n−1)`-face an even number of times, so each member of `W`
//! has an odd number of neighbors in `W` along every axis.

use std::fmt;

use crate::chain::string_boundary_column;
use crate::error::{Error, Result};
use crate::gf2::DependencyFinder;
use crate::strings::{is_well_connected, neighbor_count, prune_to_core, Arities, LevelIndex, StringSet};

/// Which route produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Pruning,
    Kernel,
    None,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Pruning => "pruning",
            Method::Kernel => "kernel",
            Method::None => "none",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub witness: StringSet,
    pub method: Method,
    /// Set exactly when the witness passes [`verify_odd_connected`].
    pub odd_certified: bool,
}

/// Nonempty, and every member has an odd number of neighbors along every
/// axis.
pub fn verify_odd_connected(set: &StringSet) -> bool {
    !set.is_empty()
        && set
            .iter()
            .all(|x| (0..set.arities().n()).all(|i| neighbor_count(set, x, i) % 2 == 1))
}

fn check_input(arities: &Arities, t: &StringSet) -> Result<()> {
    if t.is_empty() {
        return Err(Error::Precondition("the string set must be nonempty".into()));
    }
    if t.arities() != arities {
        return Err(Error::Precondition(format!(
            "string set is over arities {:?}, expected {:?}",
            t.arities().dims(),
            arities.dims()
        )));
    }
    Ok(())
}

/// Support of the first dependency among the top boundaries of `t`'s
/// members (canonical order), or `None` if they are independent. Always
/// `Some` when `|t|` exceeds the tight bound.
pub fn find_odd_connected_subset(arities: &Arities, t: &StringSet) -> Result<Option<StringSet>> {
    check_input(arities, t)?;
    let lower = LevelIndex::new(arities, arities.n() - 1)?;
    let members: Vec<_> = t.iter().collect();
    let mut finder = DependencyFinder::new(lower.len(), members.len());
    for s in &members {
        let column = string_boundary_column(&lower, s);
        if let Some(support) = finder.insert(&column)? {
            let mut w = StringSet::new(arities.clone());
            for j in support {
                w.insert(members[j].clone())?;
            }
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Pruning first, then the kernel route.
///
/// A `Method::None` report means `t` has no nonempty well-connected subset
/// at all, since pruning alone decides that question.
pub fn find_well_connected_subset(arities: &Arities, t: &StringSet) -> Result<WitnessReport> {
    check_input(arities, t)?;
    let core = prune_to_core(t);
    if !core.is_empty() {
        let odd_certified = verify_odd_connected(&core);
        return Ok(WitnessReport {
            witness: core,
            method: Method::Pruning,
            odd_certified,
        });
    }
    if let Some(w) = find_odd_connected_subset(arities, t)? {
        // a nonempty kernel witness would contradict an empty core
        debug_assert!(is_well_connected(&w));
        let odd_certified = verify_odd_connected(&w);
        return Ok(WitnessReport {
            witness: w,
            method: Method::Kernel,
            odd_certified,
        });
    }
    Ok(WitnessReport {
        witness: StringSet::new(arities.clone()),
        method: Method::None,
        odd_certified: false,
    })
}
