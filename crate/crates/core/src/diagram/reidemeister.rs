//! Reidemeister moves on planar diagrams and a seeded random walk through
//! them.
//!
//! Moves act on a port graph: crossing `c` owns ports `4c..4c+4` in
//! counterclockwise order, the under-strand on ports 0 and 2, and `link`
//! pairs every port with the port at the other end of its edge.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::builder::DiagramBuilder;
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
struct PortGraph {
    link: Vec<usize>,
}

fn through(port: usize) -> usize {
    port - port % 4 + (port % 4 + 2) % 4
}

fn is_over(port: usize) -> bool {
    port % 2 == 1
}

impl PortGraph {
    fn from_diagram(d: &PlanarDiagram) -> Self {
        let ends = d.edge_ends();
        let mut link = vec![0; 4 * d.crossing_count()];
        for [(c1, p1), (c2, p2)] in ends.into_values() {
            link[4 * c1 + p1] = 4 * c2 + p2;
            link[4 * c2 + p2] = 4 * c1 + p1;
        }
        PortGraph { link }
    }

    fn crossing_count(&self) -> usize {
        self.link.len() / 4
    }

    fn add_crossing(&mut self) -> usize {
        let n = self.crossing_count();
        self.link.extend(4 * n..4 * n + 4);
        n
    }

    fn connect(&mut self, a: usize, b: usize) {
        self.link[a] = b;
        self.link[b] = a;
    }

    fn to_diagram(&self) -> Result<PlanarDiagram> {
        let n = self.crossing_count();
        if n == 0 {
            return Ok(PlanarDiagram::unknot());
        }
        let mut b = DiagramBuilder::new();
        let nodes: Vec<usize> = (0..n).map(|_| b.crossing(0)).collect();
        let slot = |port: usize| DiagramBuilder::slot(nodes[port / 4], (port % 4) as u8);
        for x in 0..4 * n {
            let y = self.link[x];
            if x < y {
                b.connect(slot(x), slot(y));
            }
        }
        Ok(b.finish()?.diagram)
    }

    /// Delete crossings, letting both strands run straight through them.
    fn splice(&self, removed: &[bool]) -> Self {
        let n = self.crossing_count();
        let mut index = vec![usize::MAX; n];
        let mut kept = 0;
        for c in 0..n {
            if !removed[c] {
                index[c] = kept;
                kept += 1;
            }
        }
        let mut link = vec![0; 4 * kept];
        for x in (0..4 * n).filter(|x| !removed[x / 4]) {
            let mut y = self.link[x];
            while removed[y / 4] {
                y = self.link[through(y)];
            }
            link[4 * index[x / 4] + x % 4] = 4 * index[y / 4] + y % 4;
        }
        PortGraph { link }
    }

    /// Faces as cycles of ports, each port being where the boundary walk
    /// leaves a crossing.
    fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.link.len()];
        let mut faces = Vec::new();
        for start in 0..self.link.len() {
            let mut face = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                face.push(x);
                let y = self.link[x];
                x = y - y % 4 + (y % 4 + 1) % 4;
            }
            if !face.is_empty() {
                faces.push(face);
            }
        }
        faces
    }

    fn is_planar(&self) -> bool {
        let n = self.crossing_count();
        n == 0 || self.faces().len() == n + 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Kink on the edge leaving `port`; `loop_port` is the first of the two
    /// adjacent ports joined by the loop, `flip` picks the side.
    R1Add { port: usize, loop_port: usize, flip: bool },
    R1Remove { crossing: usize },
    /// Push the edge leaving `over` across the edge leaving `under`;
    /// `variant` (0..16) fixes the ports used on the two new crossings.
    R2Add { over: usize, under: usize, variant: u8 },
    R2Remove { first: usize, second: usize },
    /// Triangle given by the port leaving one of its corners.
    R3 { corner: usize },
}

fn invalid(m: &Move) -> Error {
    Error::Internal(format!("move {m:?} does not apply"))
}

fn r1_add(g: &PortGraph, port: usize, loop_port: usize, flip: bool) -> Option<PortGraph> {
    let mut out = g.clone();
    let c = out.add_crossing();
    let p = |k: usize| 4 * c + (loop_port + k) % 4;
    out.connect(p(0), p(1));
    if g.crossing_count() == 0 {
        out.connect(p(2), p(3));
    } else {
        let (x, y) = (port, g.link[port]);
        let (a, b) = if flip { (p(3), p(2)) } else { (p(2), p(3)) };
        out.connect(x, a);
        out.connect(y, b);
    }
    Some(out)
}

fn r1_remove(g: &PortGraph, crossing: usize) -> Option<PortGraph> {
    let kink = (0..4).any(|p| g.link[4 * crossing + p] == 4 * crossing + (p + 1) % 4);
    if !kink {
        return None;
    }
    let mut removed = vec![false; g.crossing_count()];
    removed[crossing] = true;
    Some(g.splice(&removed))
}

fn r2_add(g: &PortGraph, over: usize, under: usize, variant: u8) -> Option<PortGraph> {
    let (x1, y1, x2, y2) = (over, g.link[over], under, g.link[under]);
    if x2 == x1 || x2 == y1 {
        return None;
    }
    let mut out = g.clone();
    let u = out.add_crossing();
    let v = out.add_crossing();
    let bit = |i: u8| ((variant >> i) & 1) as usize;
    let (a, b) = (1 + 2 * bit(0), 1 + 2 * bit(1));
    let (first, second) = if bit(2) == 0 { (u, v) } else { (v, u) };
    let (e, h) = (2 * bit(3), 2 * ((bit(3) + 1) % 2));
    out.connect(x1, 4 * u + a);
    out.connect(4 * u + (a + 2) % 4, 4 * v + b);
    out.connect(4 * v + (b + 2) % 4, y1);
    out.connect(x2, 4 * first + e);
    out.connect(4 * first + (e + 2) % 4, 4 * second + h);
    out.connect(4 * second + (h + 2) % 4, y2);
    out.is_planar().then_some(out)
}

/// Two crossings joined by a bigon face whose edges stay on one level.
fn r2_pair(g: &PortGraph, first: usize, second: usize) -> bool {
    if first == second {
        return false;
    }
    g.faces().iter().any(|f| {
        f.len() == 2 && {
            let (x, y) = (f[0], g.link[f[0]]);
            let crossings = [x / 4, y / 4];
            (crossings == [first, second] || crossings == [second, first]) && is_over(x) == is_over(y)
        }
    })
}

fn r2_remove(g: &PortGraph, first: usize, second: usize) -> Option<PortGraph> {
    if !r2_pair(g, first, second) {
        return None;
    }
    let mut removed = vec![false; g.crossing_count()];
    removed[first] = true;
    removed[second] = true;
    Some(g.splice(&removed))
}

fn r3(g: &PortGraph, corner: usize) -> Option<PortGraph> {
    let face = g.faces().into_iter().find(|f| f.contains(&corner))?;
    if face.len() != 3 {
        return None;
    }
    let crossings: Vec<usize> = face.iter().map(|x| x / 4).collect();
    if crossings[0] == crossings[1] || crossings[1] == crossings[2] || crossings[0] == crossings[2] {
        return None;
    }
    // each triangle edge is one strand: (inner, outer) ports at both ends
    let strands: Vec<[(usize, usize); 2]> = face
        .iter()
        .map(|&x| {
            let y = g.link[x];
            [(x, through(x)), (y, through(y))]
        })
        .collect();
    let overs: Vec<usize> = strands.iter().map(|s| s.iter().filter(|(i, _)| is_over(*i)).count()).collect();
    if overs.iter().all(|&k| k == 1) {
        return None;
    }
    let outers: Vec<usize> = strands.iter().flat_map(|s| s.iter().map(|&(_, o)| g.link[o])).collect();
    if outers.iter().any(|x| crossings.contains(&(x / 4))) {
        return None;
    }
    let mut out = g.clone();
    for s in &strands {
        let [(ix, ox), (iy, oy)] = *s;
        let (ex, ey) = (g.link[ox], g.link[oy]);
        out.connect(ex, iy);
        out.connect(oy, ox);
        out.connect(ix, ey);
    }
    out.is_planar().then_some(out)
}

fn apply_to(g: &PortGraph, m: &Move) -> Option<PortGraph> {
    let n = g.crossing_count();
    let in_range = match *m {
        Move::R1Add { port, loop_port, .. } => (n == 0 || port < 4 * n) && loop_port < 4,
        Move::R1Remove { crossing } => crossing < n,
        Move::R2Add { over, under, variant } => over < 4 * n && under < 4 * n && variant < 16,
        Move::R2Remove { first, second } => first < n && second < n,
        Move::R3 { corner } => corner < 4 * n,
    };
    if !in_range {
        return None;
    }
    match *m {
        Move::R1Add { port, loop_port, flip } => r1_add(g, port, loop_port, flip),
        Move::R1Remove { crossing } => r1_remove(g, crossing),
        Move::R2Add { over, under, variant } => r2_add(g, over, under, variant),
        Move::R2Remove { first, second } => r2_remove(g, first, second),
        Move::R3 { corner } => r3(g, corner),
    }
}

/// Apply one move, failing if it does not fit the diagram.
pub fn apply_move(d: &PlanarDiagram, m: &Move) -> Result<PlanarDiagram> {
    let g = PortGraph::from_diagram(d);
    let out = apply_to(&g, m).ok_or_else(|| invalid(m))?;
    let mut diagram = out.to_diagram()?;
    if let Some(name) = d.name() {
        diagram = diagram.with_name(name);
    }
    Ok(diagram)
}

/// Moves that shrink or rearrange the diagram, plus one representative
/// of each kind of growing move.
fn candidate_moves(g: &PortGraph, rng: &mut ChaCha8Rng, may_grow: bool) -> Vec<Move> {
    let n = g.crossing_count();
    let mut moves = Vec::new();
    for c in 0..n {
        moves.push(Move::R1Remove { crossing: c });
        for c2 in c + 1..n {
            moves.push(Move::R2Remove { first: c, second: c2 });
        }
    }
    for x in 0..4 * n {
        moves.push(Move::R3 { corner: x });
    }
    if may_grow {
        let port = if n == 0 { 0 } else { rng.gen_range(0..4 * n) };
        moves.push(Move::R1Add { port, loop_port: rng.gen_range(0..4), flip: rng.gen() });
        let faces = g.faces();
        if let Some(face) = faces.choose(rng).filter(|f| f.len() >= 2) {
            let picked: Vec<usize> = face.choose_multiple(rng, 2).copied().collect();
            let (over, under) = if rng.gen() { (picked[0], picked[1]) } else { (picked[1], picked[0]) };
            let mut variants: Vec<u8> = (0..16).collect();
            variants.shuffle(rng);
            moves.extend(variants.into_iter().map(|variant| Move::R2Add { over, under, variant }));
        }
    }
    moves
}

/// Random walk of `steps` moves, never exceeding `max_crossings`.
pub fn random_walk(d: &PlanarDiagram, seed: u64, steps: usize, max_crossings: usize) -> Result<(PlanarDiagram, Vec<Move>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = PortGraph::from_diagram(d);
    let mut applied = Vec::new();
    for _ in 0..steps {
        let may_grow = g.crossing_count() + 2 <= max_crossings;
        let mut moves = candidate_moves(&g, &mut rng, may_grow);
        moves.shuffle(&mut rng);
        // growing moves are tried first half the time to keep walks moving
        if may_grow && rng.gen_bool(0.5) {
            moves.sort_by_key(|m| !matches!(m, Move::R1Add { .. } | Move::R2Add { .. }));
        }
        if let Some((m, next)) = moves.iter().find_map(|m| apply_to(&g, m).map(|next| (*m, next))) {
            g = next;
            applied.push(m);
        }
    }
    let mut out = g.to_diagram()?;
    if let Some(name) = d.name() {
        out = out.with_name(name);
    }
    Ok((out, applied))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{jones_polynomial, knot_by_name};

    fn same_knot(a: &PlanarDiagram, b: &PlanarDiagram) -> bool {
        a.is_planar() && b.is_planar() && jones_polynomial(a).unwrap() == jones_polynomial(b).unwrap()
    }

    #[test]
    fn port_graph_round_trip() {
        for name in ["T2,3", "fig8", "T2,5", "-T2,3"] {
            let d = knot_by_name(name).unwrap();
            let back = PortGraph::from_diagram(&d).to_diagram().unwrap();
            assert_eq!(back.crossing_count(), d.crossing_count());
            assert!(same_knot(&d, &back), "{name}");
        }
    }

    #[test]
    fn kinks_add_and_remove() {
        let d = knot_by_name("T2,3").unwrap();
        let mut writhes = std::collections::BTreeSet::new();
        for loop_port in 0..4 {
            for flip in [false, true] {
                let k = apply_move(&d, &Move::R1Add { port: 5, loop_port, flip }).unwrap();
                assert_eq!(k.crossing_count(), 4);
                assert!(same_knot(&d, &k));
                writhes.insert(k.writhe());
                let back = apply_move(&k, &Move::R1Remove { crossing: 3 }).unwrap();
                assert!(same_knot(&d, &back));
            }
        }
        assert_eq!(writhes.into_iter().collect::<Vec<_>>(), vec![2, 4]);
        let u = apply_move(&PlanarDiagram::unknot(), &Move::R1Add { port: 0, loop_port: 1, flip: false }).unwrap();
        assert_eq!(u.crossing_count(), 1);
        assert!(apply_move(&u, &Move::R1Remove { crossing: 0 }).unwrap().is_trivial());
        assert!(apply_move(&d, &Move::R1Remove { crossing: 0 }).is_err());
    }

    #[test]
    fn bigons_add_and_remove() {
        let d = knot_by_name("fig8").unwrap();
        let g = PortGraph::from_diagram(&d);
        let mut added = 0;
        for face in g.faces() {
            let (over, under) = (face[0], face[1]);
            for variant in 0..16 {
                if let Some(bigger) = r2_add(&g, over, under, variant) {
                    added += 1;
                    let k = bigger.to_diagram().unwrap();
                    assert!(same_knot(&d, &k), "{face:?} {variant}");
                    assert!(r2_pair(&bigger, 4, 5));
                    assert_eq!(r2_remove(&bigger, 4, 5).unwrap().crossing_count(), 4);
                }
            }
        }
        assert!(added > 0);
        let t = PortGraph::from_diagram(&knot_by_name("T2,3").unwrap());
        assert!((0..3).all(|a| (0..3).all(|b| r2_remove(&t, a, b).is_none())));
    }

    #[test]
    fn triangle_moves() {
        let d = knot_by_name("T2,3").unwrap();
        let (walked, moves) = random_walk(&d, 7, 40, 9).unwrap();
        assert!(same_knot(&d, &walked));
        assert!(!moves.is_empty());
        let mut r3_seen = 0;
        for seed in 0..30 {
            let (k, _) = random_walk(&d, seed, 12, 9).unwrap();
            let g = PortGraph::from_diagram(&k);
            for corner in 0..4 * g.crossing_count() {
                if let Some(h) = r3(&g, corner) {
                    r3_seen += 1;
                    assert_ne!(h, g);
                    let moved = h.to_diagram().unwrap();
                    assert_eq!(moved.crossing_count(), k.crossing_count());
                    assert!(same_knot(&k, &moved), "seed {seed} corner {corner}");
                }
            }
        }
        assert!(r3_seen > 0);
    }
}
