//! Oriented knot diagrams as planar-diagram (PD) codes.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise,
//! starting from the incoming under-strand, so the under-strand runs
//! `a -> c`. The over-strand runs either `d -> b` (positive crossing) or
//! `b -> d` (negative crossing); which one is read off the orientation of
//! the knot, never supplied by the caller.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    edges: [u32; 4],
    sign: i8,
}

impl Crossing {
    pub fn edges(&self) -> [u32; 4] {
        self.edges
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }

    /// Tuple of the same geometric crossing with over and under exchanged.
    fn switched(&self) -> [u32; 4] {
        let [a, b, c, d] = self.edges;
        if self.sign > 0 {
            // over strand d -> b becomes the under strand
            [d, a, b, c]
        } else {
            [b, c, d, a]
        }
    }
}

/// One traversal step through a crossing: entered at port `port_in`,
/// left through `(port_in + 2) % 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub port_in: usize,
}

impl Passage {
    pub fn is_over(&self) -> bool {
        self.port_in % 2 == 1
    }

    pub fn port_out(&self) -> usize {
        (self.port_in + 2) % 4
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    edge_count: u32,
    name: Option<String>,
}

impl PlanarDiagram {
    pub fn unknot() -> Self {
        PlanarDiagram { crossings: Vec::new(), edge_count: 0, name: Some("unknot".into()) }
    }

    /// Validate a list of PD tuples and derive crossing signs.
    pub fn from_tuples(tuples: &[[u32; 4]]) -> Result<Self> {
        if tuples.is_empty() {
            return Ok(Self::unknot());
        }
        let n = tuples.len();
        let edge_count = 2 * n as u32;
        let mut occurrences: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (ci, t) in tuples.iter().enumerate() {
            for (p, &e) in t.iter().enumerate() {
                if e == 0 || e > edge_count {
                    return Err(Error::EdgeLabels(format!(
                        "label {e} outside 1..={edge_count}"
                    )));
                }
                occurrences.entry(e).or_default().push((ci, p));
            }
        }
        for e in 1..=edge_count {
            match occurrences.get(&e).map(|v| v.len()) {
                Some(2) => {}
                Some(k) => {
                    return Err(Error::EdgeLabels(format!("edge {e} appears {k} times")));
                }
                None => return Err(Error::EdgeLabels(format!("edge {e} missing"))),
            }
        }
        let other_end = |c: usize, p: usize| -> (usize, usize) {
            let e = tuples[c][p];
            let occ = &occurrences[&e];
            if occ[0] == (c, p) {
                occ[1]
            } else {
                occ[0]
            }
        };

        // Walk the strand starting along the first under-strand.
        let mut seen = vec![[false; 4]; n];
        let mut signs = vec![0i8; n];
        let mut cur = Passage { crossing: 0, port_in: 0 };
        let mut steps = 0;
        loop {
            let Passage { crossing: c, port_in: p } = cur;
            if seen[c][p] {
                break;
            }
            match p {
                0 => {}
                2 => {
                    return Err(Error::EdgeLabels(format!(
                        "crossing {} is traversed against its under-strand",
                        c + 1
                    )))
                }
                1 => signs[c] = -1,
                _ => signs[c] = 1,
            }
            seen[c][p] = true;
            seen[c][(p + 2) % 4] = true;
            steps += 1;
            let (c2, p2) = other_end(c, (p + 2) % 4);
            cur = Passage { crossing: c2, port_in: p2 };
        }
        if steps != 2 * n {
            let components = count_components(tuples, &other_end);
            return Err(Error::MultiComponent(components));
        }
        let crossings = tuples
            .iter()
            .zip(signs)
            .map(|(t, sign)| Crossing { edges: *t, sign })
            .collect();
        Ok(PlanarDiagram { crossings, edge_count, name: None })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut tuples = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.starts_with('#') {
                continue;
            }
            let mut rest = line;
            while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
                rest = &rest[start..];
                let body = rest
                    .strip_prefix("X(")
                    .ok_or_else(|| Error::Syntax(format!("expected `X(` at `{rest}`")))?;
                let close = body
                    .find(')')
                    .ok_or_else(|| Error::Syntax("unterminated `X(`".into()))?;
                let labels: Vec<u32> = body[..close]
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Syntax(format!("bad edge label `{}`", s.trim())))
                    })
                    .collect::<Result<_>>()?;
                if labels.len() != 4 {
                    return Err(Error::Syntax(format!(
                        "crossing needs 4 labels, got {}",
                        labels.len()
                    )));
                }
                tuples.push([labels[0], labels[1], labels[2], labels[3]]);
                rest = &body[close + 1..];
            }
        }
        Self::from_tuples(&tuples)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> u32 {
        self.edge_count
    }

    pub fn is_trivial(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn tuples(&self) -> Vec<[u32; 4]> {
        self.crossings.iter().map(|c| c.edges).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub fn positive_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign > 0).count()
    }

    pub fn negative_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign < 0).count()
    }

    /// The other end of the edge at `(crossing, port)`.
    pub fn other_end(&self, crossing: usize, port: usize) -> (usize, usize) {
        let e = self.crossings[crossing].edges[port];
        for (ci, c) in self.crossings.iter().enumerate() {
            for (p, &f) in c.edges.iter().enumerate() {
                if f == e && (ci, p) != (crossing, port) {
                    return (ci, p);
                }
            }
        }
        unreachable!("validated diagram has paired edges")
    }

    /// Table `label -> [(crossing, port); 2]`.
    pub fn edge_ends(&self) -> HashMap<u32, [(usize, usize); 2]> {
        let mut map: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for (p, &e) in c.edges.iter().enumerate() {
                map.entry(e).or_default().push((ci, p));
            }
        }
        map.into_iter().map(|(e, v)| (e, [v[0], v[1]])).collect()
    }

    /// Faces of the diagram as cycles of `(crossing, port)` corners, each
    /// corner being the port by which the boundary walk leaves a crossing.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.crossings.len();
        let ends = self.edge_ends();
        let across = |c: usize, p: usize| {
            let [a, b] = ends[&self.crossings[c].edges[p]];
            if a == (c, p) { b } else { a }
        };
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for c in 0..n {
            for p in 0..4 {
                if seen[c][p] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut cc, mut pp) = (c, p);
                while !seen[cc][pp] {
                    seen[cc][pp] = true;
                    face.push((cc, pp));
                    let (nc, np) = across(cc, pp);
                    (cc, pp) = (nc, (np + 1) % 4);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Whether the port orders describe an embedding in the sphere.
    pub fn is_planar(&self) -> bool {
        self.crossings.is_empty() || self.faces().len() == self.crossings.len() + 2
    }

    /// Passages in orientation order, starting by entering `start`.
    pub fn passages_from(&self, start: Passage) -> Vec<Passage> {
        let ends = self.edge_ends();
        let mut out = Vec::with_capacity(2 * self.crossings.len());
        let mut cur = start;
        loop {
            out.push(cur);
            let e = self.crossings[cur.crossing].edges[cur.port_out()];
            let [x, y] = ends[&e];
            let next = if x == (cur.crossing, cur.port_out()) { y } else { x };
            cur = Passage { crossing: next.0, port_in: next.1 };
            if cur == start {
                return out;
            }
        }
    }

    /// Passages starting along the under-strand of crossing 0.
    pub fn passages(&self) -> Vec<Passage> {
        if self.crossings.is_empty() {
            return Vec::new();
        }
        self.passages_from(Passage { crossing: 0, port_in: 0 })
    }

    /// Over/under passages of every crossing are entered through these ports.
    pub fn over_in_port(&self, crossing: usize) -> usize {
        if self.crossings[crossing].sign > 0 {
            3
        } else {
            1
        }
    }

    /// Relabel edges `1..=2n` along the orientation, starting from the edge
    /// leaving the first passage.
    pub fn relabeled(&self) -> Self {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let passages = self.passages();
        let mut relabel = HashMap::new();
        for (i, p) in passages.iter().enumerate() {
            let e = self.crossings[p.crossing].edges[p.port_out()];
            relabel.insert(e, i as u32 + 1);
        }
        let tuples: Vec<[u32; 4]> =
            self.crossings.iter().map(|c| c.edges.map(|e| relabel[&e])).collect();
        let mut d = Self::from_tuples(&tuples).expect("relabelling preserves validity");
        d.name = self.name.clone();
        d
    }

    pub fn mirror(&self) -> Self {
        let tuples: Vec<[u32; 4]> = self.crossings.iter().map(|c| c.switched()).collect();
        let mut d = Self::from_tuples(&tuples).expect("mirror preserves validity");
        d.name = self.name.as_ref().map(|n| format!("mirror({n})"));
        d
    }

    pub fn reverse(&self) -> Self {
        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                [cc, d, a, b]
            })
            .collect();
        let mut d = Self::from_tuples(&tuples).expect("reversal preserves validity");
        d.name = self.name.as_ref().map(|n| format!("reverse({n})"));
        d
    }

    /// `-K`: mirror image with reversed orientation.
    pub fn concordance_inverse(&self) -> Self {
        let mut d = self.mirror().reverse();
        d.name = self.name.as_ref().map(|n| format!("-{n}"));
        d
    }

    pub fn change_crossing(&self, index: usize) -> Result<Self> {
        if index >= self.crossings.len() {
            return Err(Error::CrossingIndex { index, count: self.crossings.len() });
        }
        let mut tuples = self.tuples();
        tuples[index] = self.crossings[index].switched();
        Self::from_tuples(&tuples)
    }

    pub fn connected_sum(&self, other: &Self) -> Self {
        if other.is_trivial() {
            return self.clone();
        }
        if self.is_trivial() {
            return other.clone();
        }
        let shift = self.edge_count;
        let mut tuples = self.tuples();
        let mut second: Vec<[u32; 4]> = other.tuples().iter().map(|t| t.map(|e| e + shift)).collect();
        // Cut the edge entering the first passage of each summand and cross-wire.
        let p1 = self.passages()[0];
        let p2 = other.passages()[0];
        let x = tuples[p1.crossing][p1.port_in];
        let y = second[p2.crossing][p2.port_in];
        tuples[p1.crossing][p1.port_in] = y;
        second[p2.crossing][p2.port_in] = x;
        tuples.extend(second);
        let mut d = Self::from_tuples(&tuples)
            .expect("connected sum of knots is a knot")
            .relabeled();
        d.name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}#{b}")),
            _ => None,
        };
        d
    }

    pub fn to_pd_string(&self) -> String {
        self.crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                format!("X({a},{b},{cc},{d})")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn count_components(
    tuples: &[[u32; 4]],
    other_end: &dyn Fn(usize, usize) -> (usize, usize),
) -> usize {
    let n = tuples.len();
    let mut seen = vec![[false; 4]; n];
    let mut components = 0;
    for c0 in 0..n {
        for p0 in 0..4 {
            if seen[c0][p0] {
                continue;
            }
            components += 1;
            let (mut c, mut p) = (c0, p0);
            while !seen[c][p] {
                seen[c][p] = true;
                seen[c][(p + 2) % 4] = true;
                let next = other_end(c, (p + 2) % 4);
                c = next.0;
                p = next.1;
            }
        }
    }
    components
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pd_string())
    }
}
