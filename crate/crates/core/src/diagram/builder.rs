//! Assemble a PD code from crossings wired together by slot.
//!
//! Each crossing has four slots numbered counterclockwise. Strands run
//! straight through, pairing slot `i` with `i + 2`; `under_pair` picks
//! which of the two through-strands is the lower one. Joints are two-slot
//! pass-through nodes (cups, caps, bends) that disappear in the output.

use crate::diagram::pd::PlanarDiagram;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub node: usize,
    pub slot: u8,
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    Crossing { under_pair: u8 },
    Joint,
}

#[derive(Clone, Debug)]
struct Node {
    kind: Kind,
    links: [Option<Slot>; 4],
}

#[derive(Clone, Debug, Default)]
pub struct DiagramBuilder {
    nodes: Vec<Node>,
}

/// Output of [`DiagramBuilder::finish`]: the diagram and, for every builder
/// node, the index of its crossing in the diagram (`None` for joints).
pub struct Built {
    pub diagram: PlanarDiagram,
    pub crossing_index: Vec<Option<usize>>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// `under_pair` is 0 when slots 0 and 2 carry the under-strand, 1 for
    /// slots 1 and 3.
    pub fn crossing(&mut self, under_pair: u8) -> usize {
        assert!(under_pair < 2);
        self.nodes.push(Node { kind: Kind::Crossing { under_pair }, links: [None; 4] });
        self.nodes.len() - 1
    }

    pub fn joint(&mut self) -> usize {
        self.nodes.push(Node { kind: Kind::Joint, links: [None; 4] });
        self.nodes.len() - 1
    }

    pub fn slot(node: usize, slot: u8) -> Slot {
        Slot { node, slot }
    }

    pub fn connect(&mut self, a: Slot, b: Slot) {
        for s in [a, b] {
            assert!(
                self.nodes[s.node].links[s.slot as usize].is_none(),
                "slot {}:{} already connected",
                s.node,
                s.slot
            );
        }
        self.nodes[a.node].links[a.slot as usize] = Some(b);
        self.nodes[b.node].links[b.slot as usize] = Some(a);
    }

    pub fn is_connected(&self, s: Slot) -> bool {
        self.nodes[s.node].links[s.slot as usize].is_some()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn slot_count(&self, node: usize) -> u8 {
        match self.nodes[node].kind {
            Kind::Crossing { .. } => 4,
            Kind::Joint => 2,
        }
    }

    fn link(&self, s: Slot) -> Result<Slot> {
        self.nodes[s.node].links[s.slot as usize]
            .ok_or_else(|| Error::Internal(format!("slot {}:{} left open", s.node, s.slot)))
    }

    /// Crossing slot reached by leaving crossing slot `s`, skipping joints.
    fn partner(&self, s: Slot) -> Result<Slot> {
        let mut cur = self.link(s)?;
        let mut hops = 0;
        while let Kind::Joint = self.nodes[cur.node].kind {
            cur = self.link(Slot { node: cur.node, slot: 1 - cur.slot })?;
            hops += 1;
            if hops > self.nodes.len() {
                return Err(Error::Internal("closed loop of joints".into()));
            }
        }
        Ok(cur)
    }

    pub fn finish(&self) -> Result<Built> {
        for (i, _) in self.nodes.iter().enumerate() {
            for s in 0..self.slot_count(i) {
                self.link(Slot { node: i, slot: s })?;
            }
        }
        let crossing_nodes: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| matches!(self.nodes[i].kind, Kind::Crossing { .. }))
            .collect();
        let mut crossing_index = vec![None; self.nodes.len()];
        for (k, &i) in crossing_nodes.iter().enumerate() {
            crossing_index[i] = Some(k);
        }
        if crossing_nodes.is_empty() {
            // joints only: one circle or several
            let mut seen = vec![false; self.nodes.len()];
            let mut components = 0;
            for start in 0..self.nodes.len() {
                if seen[start] {
                    continue;
                }
                components += 1;
                let mut cur = start;
                let mut from = 0u8;
                while !seen[cur] {
                    seen[cur] = true;
                    let next = self.link(Slot { node: cur, slot: 1 - from })?;
                    cur = next.node;
                    from = next.slot;
                }
            }
            if components > 1 {
                return Err(Error::MultiComponent(components));
            }
            return Ok(Built { diagram: PlanarDiagram::unknot(), crossing_index });
        }

        let n = crossing_nodes.len();
        let mut labels = vec![[0u32; 4]; self.nodes.len()];
        let mut under_in = vec![None; self.nodes.len()];
        let first = crossing_nodes[0];
        let Kind::Crossing { under_pair } = self.nodes[first].kind else { unreachable!() };
        let start = Slot { node: first, slot: under_pair };
        let mut cur = start;
        let mut label = 0u32;
        loop {
            let Kind::Crossing { under_pair } = self.nodes[cur.node].kind else { unreachable!() };
            if cur.slot % 2 == under_pair {
                under_in[cur.node] = Some(cur.slot);
            }
            let out = Slot { node: cur.node, slot: (cur.slot + 2) % 4 };
            let next = self.partner(out)?;
            label += 1;
            labels[out.node][out.slot as usize] = label;
            labels[next.node][next.slot as usize] = label;
            cur = next;
            if cur == start {
                break;
            }
            if label as usize > 2 * n {
                return Err(Error::Internal("traversal did not close".into()));
            }
        }
        let components = self.count_components(&crossing_nodes)?;
        if components > 1 {
            return Err(Error::MultiComponent(components));
        }
        let mut tuples = Vec::with_capacity(n);
        for &i in &crossing_nodes {
            let u = under_in[i].expect("every crossing traversed") as usize;
            let l = labels[i];
            tuples.push([l[u], l[(u + 1) % 4], l[(u + 2) % 4], l[(u + 3) % 4]]);
        }
        let diagram = PlanarDiagram::from_tuples(&tuples)?;
        Ok(Built { diagram, crossing_index })
    }

    fn count_components(&self, crossing_nodes: &[usize]) -> Result<usize> {
        let mut seen = vec![[false; 4]; self.nodes.len()];
        let mut components = 0;
        for &i in crossing_nodes {
            for s in 0..4u8 {
                if seen[i][s as usize] {
                    continue;
                }
                components += 1;
                let mut cur = Slot { node: i, slot: s };
                while !seen[cur.node][cur.slot as usize] {
                    seen[cur.node][cur.slot as usize] = true;
                    let out = (cur.slot + 2) % 4;
                    seen[cur.node][out as usize] = true;
                    cur = self.partner(Slot { node: cur.node, slot: out })?;
                }
            }
        }
        // loops made only of joints
        let mut joint_seen = vec![false; self.nodes.len()];
        for &i in crossing_nodes {
            for s in 0..4u8 {
                let mut cur = self.link(Slot { node: i, slot: s })?;
                while let Kind::Joint = self.nodes[cur.node].kind {
                    joint_seen[cur.node] = true;
                    cur = self.link(Slot { node: cur.node, slot: 1 - cur.slot })?;
                }
            }
        }
        for start in 0..self.nodes.len() {
            if !matches!(self.nodes[start].kind, Kind::Joint) || joint_seen[start] {
                continue;
            }
            components += 1;
            let mut cur = start;
            let mut from = 0u8;
            while !joint_seen[cur] {
                joint_seen[cur] = true;
                let next = self.link(Slot { node: cur, slot: 1 - from })?;
                cur = next.node;
                from = next.slot;
            }
        }
        Ok(components)
    }
}

/// Closure of a braid word on `strands` strands. Generator `i > 0` crosses
/// strands `i-1` and `i` (0-based positions) with the left strand passing
/// over, `-i` is its inverse.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PlanarDiagram> {
    let mut b = DiagramBuilder::new();
    let bottoms: Vec<usize> = (0..strands).map(|_| b.joint()).collect();
    // frontier[k]: the open upward-pointing slot at position k
    let mut frontier: Vec<Slot> = bottoms.iter().map(|&j| Slot { node: j, slot: 1 }).collect();
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= strands {
            return Err(Error::Syntax(format!("braid generator {g} on {strands} strands")));
        }
        // slots: 0 SW, 1 SE, 2 NE, 3 NW. SW->NE is pair (0,2), SE->NW is (1,3).
        // Positive: strand from lower left (SW->NE) goes over, so (1,3) is under.
        let under_pair = if g > 0 { 1 } else { 0 };
        let x = b.crossing(under_pair);
        b.connect(frontier[i - 1], Slot { node: x, slot: 0 });
        b.connect(frontier[i], Slot { node: x, slot: 1 });
        frontier[i - 1] = Slot { node: x, slot: 3 };
        frontier[i] = Slot { node: x, slot: 2 };
    }
    for (k, s) in frontier.into_iter().enumerate() {
        b.connect(s, Slot { node: bottoms[k], slot: 0 });
    }
    Ok(b.finish()?.diagram)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_braid_is_positive() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.writhe(), 3);
        let m = braid_closure(2, &[-1, -1, -1]).unwrap();
        assert_eq!(m.writhe(), -3);
    }

    #[test]
    fn closures_of_wrong_length_are_links() {
        assert!(matches!(braid_closure(2, &[1, 1]), Err(Error::MultiComponent(2))));
        assert!(matches!(braid_closure(3, &[1]), Err(Error::MultiComponent(2))));
    }

    #[test]
    fn trivial_braid_is_unknot() {
        assert!(braid_closure(1, &[]).unwrap().is_trivial());
        let d = braid_closure(2, &[1]).unwrap();
        assert_eq!(d.crossing_count(), 1);
    }
}
