// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{FaceId, Name};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Forward to the single lowest-numbered eligible face.
    Unicast,
    /// Forward to every eligible face.
    Multicast,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibEntry {
    pub faces: BTreeSet<FaceId>,
    pub strategy: Strategy,
}

/// Result of a longest-prefix match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibMatch<'a> {
    pub prefix: &'a Name,
    pub faces: &'a BTreeSet<FaceId>,
    pub strategy: Strategy,
}

impl FibMatch<'_> {
    /// Faces to forward on, never including `ingress`.
    pub fn next_hops(&self, ingress: FaceId) -> Vec<FaceId> {
        let mut eligible = self.faces.iter().copied().filter(|f| *f != ingress);
        match self.strategy {
            Strategy::Unicast => eligible.next().into_iter().collect(),
            Strategy::Multicast => eligible.collect(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ForwardingInformationBase {
    routes: BTreeMap<Name, FibEntry>,
}

impl ForwardingInformationBase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `face` under `prefix`. Re-registering a prefix keeps its faces and
    /// replaces the strategy.
    pub fn register(&mut self, prefix: Name, face: FaceId, strategy: Strategy) {
        let entry = self.routes.entry(prefix).or_insert_with(|| FibEntry {
            faces: BTreeSet::new(),
            strategy,
        });
        entry.faces.insert(face);
        entry.strategy = strategy;
    }

    pub fn lookup(&self, name: &Name) -> Option<FibMatch<'_>> {
        let comps = name.components();
        (1..=comps.len()).rev().find_map(|n| {
            // Every prefix of a valid name is itself a valid name.
            let prefix = Name::new(comps[..n].iter().cloned()).expect("prefix of valid name");
            self.routes.get_key_value(&prefix).map(|(k, e)| FibMatch {
                prefix: k,
                faces: &e.faces,
                strategy: e.strategy,
            })
        })
    }

    pub fn routes(&self) -> impl Iterator<Item = (&Name, &FibEntry)> {
        self.routes.iter()
    }

    pub fn len(&self) -> usize {
        self.routes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.routes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Name {
        s.parse().unwrap()
    }

    #[test]
    fn longest_prefix_wins() {
        let mut fib = ForwardingInformationBase::new();
        fib.register(n("/a"), FaceId(1), Strategy::Unicast);
        fib.register(n("/a/b"), FaceId(2), Strategy::Unicast);
        let m = fib.lookup(&n("/a/b/c")).unwrap();
        assert_eq!(m.prefix, &n("/a/b"));
        assert_eq!(m.next_hops(FaceId(99)), vec![FaceId(2)]);
    }

    #[test]
    fn no_route() {
        let mut fib = ForwardingInformationBase::new();
        fib.register(n("/a"), FaceId(1), Strategy::Unicast);
        assert!(fib.lookup(&n("/z")).is_none());
    }

    #[test]
    fn multicast_returns_all_faces() {
        let mut fib = ForwardingInformationBase::new();
        for f in 1..=3 {
            fib.register(n("/xrpl/validations"), FaceId(f), Strategy::Multicast);
        }
        let m = fib.lookup(&n("/xrpl/validations")).unwrap();
        assert_eq!(m.next_hops(FaceId::APP), vec![FaceId(1), FaceId(2), FaceId(3)]);
        assert_eq!(m.next_hops(FaceId(2)), vec![FaceId(1), FaceId(3)]);
    }

    #[test]
    fn unicast_picks_lowest_eligible_face() {
        let mut fib = ForwardingInformationBase::new();
        fib.register(n("/p"), FaceId(4), Strategy::Unicast);
        fib.register(n("/p"), FaceId(2), Strategy::Unicast);
        let m = fib.lookup(&n("/p/x")).unwrap();
        assert_eq!(m.next_hops(FaceId(9)), vec![FaceId(2)]);
        assert_eq!(m.next_hops(FaceId(2)), vec![FaceId(4)]);
    }
}
