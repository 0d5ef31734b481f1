// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::SimError;
use crate::ndn::FaceId;
use crate::NodeId;

pub const DEFAULT_LINK_LATENCY: Duration = Duration::from_millis(5);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinkId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyKind {
    /// Three validators, fully meshed, no NDN.
    Baseline3,
    /// NDN hub with six leaves; validators on three of them.
    Star7,
    /// Triangle of three validator corners joined through mid-edge routers.
    Triangle6,
    Custom,
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopologyKind::Baseline3 => "baseline3",
            TopologyKind::Star7 => "star7",
            TopologyKind::Triangle6 => "triangle6",
            TopologyKind::Custom => "custom",
        })
    }
}

impl FromStr for TopologyKind {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "baseline3" => Ok(TopologyKind::Baseline3),
            "star7" => Ok(TopologyKind::Star7),
            "triangle6" => Ok(TopologyKind::Triangle6),
            "custom" => Ok(TopologyKind::Custom),
            other => Err(SimError::UnsupportedTopology(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeSpec {
    pub label: String,
    pub ndn: bool,
    pub validator: bool,
}

impl NodeSpec {
    pub fn new(label: impl Into<String>, ndn: bool, validator: bool) -> Self {
        Self {
            label: label.into(),
            ndn,
            validator,
        }
    }
}

/// Bidirectional link. Direction 0 is `a → b`, direction 1 is `b → a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub id: LinkId,
    pub a: NodeId,
    pub b: NodeId,
    pub latency: Duration,
    bytes: [u64; 2],
    packets: [u64; 2],
}

impl Link {
    pub fn new(id: LinkId, a: NodeId, b: NodeId, latency: Duration) -> Self {
        Self {
            id,
            a,
            b,
            latency,
            bytes: [0; 2],
            packets: [0; 2],
        }
    }

    /// The far end as seen from `from`, if `from` is an endpoint.
    pub fn other(&self, from: NodeId) -> Option<NodeId> {
        if from == self.a {
            Some(self.b)
        } else if from == self.b {
            Some(self.a)
        } else {
            None
        }
    }

    fn direction(&self, from: NodeId) -> usize {
        usize::from(from != self.a)
    }

    pub(crate) fn count(&mut self, from: NodeId, bytes: u64) {
        let d = self.direction(from);
        self.bytes[d] += bytes;
        self.packets[d] += 1;
    }

    pub fn bytes_from(&self, from: NodeId) -> u64 {
        self.bytes[self.direction(from)]
    }

    pub fn packets_from(&self, from: NodeId) -> u64 {
        self.packets[self.direction(from)]
    }

    pub fn total_bytes(&self) -> u64 {
        self.bytes[0] + self.bytes[1]
    }

    pub fn total_packets(&self) -> u64 {
        self.packets[0] + self.packets[1]
    }
}

/// A face of a node: its local id, the link behind it and the neighbor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub link: LinkId,
    pub neighbor: NodeId,
}

#[derive(Clone, Debug)]
pub struct Topology {
    kind: TopologyKind,
    nodes: Vec<NodeSpec>,
    links: Vec<Link>,
    faces: Vec<Vec<Face>>,
}

impl Topology {
    /// Builds a topology from explicit nodes and `(a, b, latency)` edges given
    /// by label.
    pub fn custom(
        nodes: Vec<NodeSpec>,
        edges: &[(String, String, Duration)],
    ) -> Result<Self, SimError> {
        Self::assemble(TopologyKind::Custom, nodes, edges)
    }

    fn assemble(
        kind: TopologyKind,
        nodes: Vec<NodeSpec>,
        edges: &[(String, String, Duration)],
    ) -> Result<Self, SimError> {
        if nodes.is_empty() {
            return Err(SimError::BadTopology("no nodes".into()));
        }
        let mut index = BTreeMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if n.label.is_empty() || n.label.contains('/') {
                return Err(SimError::BadTopology(format!("invalid node label {:?}", n.label)));
            }
            if index.insert(n.label.clone(), NodeId(i as u32)).is_some() {
                return Err(SimError::BadTopology(format!("duplicate node label {:?}", n.label)));
            }
        }
        let mut links = Vec::with_capacity(edges.len());
        let mut seen = BTreeSet::new();
        for (a, b, latency) in edges {
            let lookup = |l: &String| {
                index
                    .get(l)
                    .copied()
                    .ok_or_else(|| SimError::BadTopology(format!("link endpoint {l:?} is not a node")))
            };
            let (na, nb) = (lookup(a)?, lookup(b)?);
            if na == nb {
                return Err(SimError::BadTopology(format!("self-loop on {a:?}")));
            }
            if !seen.insert((na.min(nb), na.max(nb))) {
                return Err(SimError::BadTopology(format!("duplicate link {a:?}-{b:?}")));
            }
            links.push(Link::new(LinkId(links.len() as u32), na, nb, *latency));
        }
        let mut faces = vec![Vec::new(); nodes.len()];
        for l in &links {
            for (me, other) in [(l.a, l.b), (l.b, l.a)] {
                let list: &mut Vec<Face> = &mut faces[me.0 as usize];
                list.push(Face {
                    id: FaceId(list.len() as u32 + 1),
                    link: l.id,
                    neighbor: other,
                });
            }
        }
        let topo = Self {
            kind,
            nodes,
            links,
            faces,
        };
        if !topo.is_connected() {
            return Err(SimError::BadTopology("graph is not connected".into()));
        }
        Ok(topo)
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn nodes(&self) -> &[NodeSpec] {
        &self.nodes
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn node(&self, id: NodeId) -> &NodeSpec {
        &self.nodes[id.0 as usize]
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.nodes[id.0 as usize].label
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.nodes
            .iter()
            .position(|n| n.label == label)
            .map(|i| NodeId(i as u32))
    }

    pub fn validators(&self) -> Vec<NodeId> {
        self.node_ids().filter(|n| self.node(*n).validator).collect()
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn link(&self, id: LinkId) -> &Link {
        &self.links[id.0 as usize]
    }

    pub(crate) fn link_mut(&mut self, id: LinkId) -> &mut Link {
        &mut self.links[id.0 as usize]
    }

    pub fn faces(&self, node: NodeId) -> &[Face] {
        &self.faces[node.0 as usize]
    }

    pub fn face(&self, node: NodeId, face: FaceId) -> Option<&Face> {
        self.faces[node.0 as usize].iter().find(|f| f.id == face)
    }

    pub fn face_for_link(&self, node: NodeId, link: LinkId) -> Option<FaceId> {
        self.faces[node.0 as usize]
            .iter()
            .find(|f| f.link == link)
            .map(|f| f.id)
    }

    pub fn link_between(&self, a: NodeId, b: NodeId) -> Option<LinkId> {
        self.faces[a.0 as usize]
            .iter()
            .find(|f| f.neighbor == b)
            .map(|f| f.link)
    }

    pub fn neighbors(&self, node: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.faces[node.0 as usize].iter().map(|f| f.neighbor)
    }

    /// Overrides the latency of the link between two labelled nodes.
    pub fn set_latency(&mut self, a: &str, b: &str, latency: Duration) -> Result<(), SimError> {
        let na = self
            .node_by_label(a)
            .ok_or_else(|| SimError::BadTopology(format!("unknown node {a:?}")))?;
        let nb = self
            .node_by_label(b)
            .ok_or_else(|| SimError::BadTopology(format!("unknown node {b:?}")))?;
        let id = self
            .link_between(na, nb)
            .ok_or_else(|| SimError::BadTopology(format!("no link {a:?}-{b:?}")))?;
        self.link_mut(id).latency = latency;
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![NodeId(0)];
        seen[0] = true;
        while let Some(n) = stack.pop() {
            for m in self.neighbors(n) {
                if !seen[m.0 as usize] {
                    seen[m.0 as usize] = true;
                    stack.push(m);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Latency-weighted distance (µs) from every node to `target`.
    pub fn distances_to(&self, target: NodeId) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.nodes.len()];
        let mut heap = BinaryHeap::new();
        dist[target.0 as usize] = 0;
        heap.push(Reverse((0u64, target)));
        while let Some(Reverse((d, n))) = heap.pop() {
            if d > dist[n.0 as usize] {
                continue;
            }
            for f in self.faces(n) {
                let nd = d + self.link(f.link).latency.as_micros() as u64;
                if nd < dist[f.neighbor.0 as usize] {
                    dist[f.neighbor.0 as usize] = nd;
                    heap.push(Reverse((nd, f.neighbor)));
                }
            }
        }
        dist
    }

    /// Faces of `node` that lie on some shortest path toward `target`.
    pub fn shortest_faces(&self, node: NodeId, target: NodeId, dist: &[u64]) -> Vec<FaceId> {
        if node == target {
            return Vec::new();
        }
        let here = dist[node.0 as usize];
        self.faces(node)
            .iter()
            .filter(|f| {
                let hop = self.link(f.link).latency.as_micros() as u64;
                dist[f.neighbor.0 as usize].saturating_add(hop) == here
            })
            .map(|f| f.id)
            .collect()
    }
}

fn edges(pairs: &[(&str, &str)], latency: Duration) -> Vec<(String, String, Duration)> {
    pairs
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string(), latency))
        .collect()
}

/// Builds one of the preset experimental topologies with uniform latency.
pub fn build_topology(kind: TopologyKind, link_latency: Duration) -> Result<Topology, SimError> {
    match kind {
        TopologyKind::Baseline3 => Topology::assemble(
            kind,
            ["A", "B", "C"].map(|l| NodeSpec::new(l, false, true)).to_vec(),
            &edges(&[("A", "B"), ("B", "C"), ("C", "A")], link_latency),
        ),
        TopologyKind::Star7 => {
            let nodes = vec![
                NodeSpec::new("hub", true, false),
                NodeSpec::new("A", true, true),
                NodeSpec::new("X", true, false),
                NodeSpec::new("B", true, true),
                NodeSpec::new("Y", true, false),
                NodeSpec::new("C", true, true),
                NodeSpec::new("Z", true, false),
            ];
            let leaves = ["A", "X", "B", "Y", "C", "Z"];
            let pairs: Vec<(&str, &str)> = leaves.iter().map(|l| ("hub", *l)).collect();
            Topology::assemble(kind, nodes, &edges(&pairs, link_latency))
        }
        TopologyKind::Triangle6 => {
            let nodes = vec![
                NodeSpec::new("A", true, true),
                NodeSpec::new("B", true, true),
                NodeSpec::new("C", true, true),
                NodeSpec::new("AB", true, false),
                NodeSpec::new("BC", true, false),
                NodeSpec::new("CA", true, false),
            ];
            Topology::assemble(
                kind,
                nodes,
                &edges(
                    &[("A", "AB"), ("AB", "B"), ("B", "BC"), ("BC", "C"), ("C", "CA"), ("CA", "A")],
                    link_latency,
                ),
            )
        }
        TopologyKind::Custom => Err(SimError::UnsupportedTopology(
            "custom topologies need explicit nodes and links".into(),
        )),
    }
}
