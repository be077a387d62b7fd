//! Optimized backend: build the Bar-Natan complex one crossing at a time,
//! delooping circles and cancelling isomorphisms as soon as they appear.
//!
//! Boundary points of the partial tangle are crossing ports, numbered
//! `4 * crossing + port`. Objects are crossingless matchings on the current
//! frontier with a q-shift and homological degree.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::rc::Rc;

use crate::arith::Field;
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::lee::cobordism::{accumulate, collect, compose, cycles, Expander, HPoly, Mor, Shape, Term};
use crate::lee::filtration::{FilteredComplex, SparseVec};

pub const SCAN_BUDGET: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Obj {
    m: Rc<Vec<u8>>,
    q: i32,
    h: i32,
}

struct Complex<F: Field> {
    objs: Vec<Obj>,
    alive: Vec<bool>,
    out: Vec<HashMap<usize, Mor<F>>>,
    inc: Vec<HashSet<usize>>,
}

impl<F: Field> Complex<F> {
    fn new() -> Self {
        Complex { objs: Vec::new(), alive: Vec::new(), out: Vec::new(), inc: Vec::new() }
    }

    fn push(&mut self, o: Obj) -> usize {
        self.objs.push(o);
        self.alive.push(true);
        self.out.push(HashMap::new());
        self.inc.push(HashSet::new());
        self.objs.len() - 1
    }

    fn add_to(&mut self, src: usize, tgt: usize, terms: HashMap<(u32, u32), F>) {
        let mut merged: HashMap<(u32, u32), F> = HashMap::new();
        if let Some(old) = self.out[src].remove(&tgt) {
            for t in old {
                accumulate(&mut merged, (t.dots, t.h), t.coef);
            }
        }
        for (k, c) in terms {
            accumulate(&mut merged, k, c);
        }
        let mor = collect(merged);
        if mor.is_empty() {
            self.inc[tgt].remove(&src);
        } else {
            self.out[src].insert(tgt, mor);
            self.inc[tgt].insert(src);
        }
    }

    fn live_count(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    /// `Some(c)` if the map `src -> tgt` is `c` times an identity.
    fn iso_coefficient(&self, src: usize, tgt: usize) -> Option<F> {
        let (a, b) = (&self.objs[src], &self.objs[tgt]);
        if a.q != b.q || a.m != b.m {
            return None;
        }
        let mor = self.out[src].get(&tgt)?;
        match mor.as_slice() {
            [Term { dots: 0, h: 0, coef }] => Some(coef.clone()),
            _ => None,
        }
    }

    fn eliminate_all(&mut self, expander: &mut Expander, unit: &F) {
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        for s in 0..self.objs.len() {
            if self.alive[s] {
                for &t in self.out[s].keys() {
                    queue.push_back((s, t));
                }
            }
        }
        while let Some((x1, y1)) = queue.pop_front() {
            if !self.alive[x1] || !self.alive[y1] {
                continue;
            }
            let Some(c) = self.iso_coefficient(x1, y1) else { continue };
            let cinv = c.inv().neg();
            let sources: Vec<(usize, Mor<F>)> = self.inc[y1]
                .iter()
                .filter(|&&x2| x2 != x1)
                .map(|&x2| (x2, self.out[x2][&y1].clone()))
                .collect();
            let targets: Vec<(usize, Mor<F>)> = self.out[x1]
                .iter()
                .filter(|(&y2, _)| y2 != y1)
                .map(|(&y2, m)| (y2, m.clone()))
                .collect();
            let mid = self.objs[y1].m.clone();
            for (x2, delta) in &sources {
                for (y2, gamma) in &targets {
                    let comp = compose(
                        delta,
                        &self.objs[*x2].m,
                        &mid,
                        gamma,
                        &self.objs[*y2].m,
                        expander,
                        unit,
                    );
                    let mut terms = HashMap::new();
                    for t in comp {
                        accumulate(&mut terms, (t.dots, t.h), t.coef.mul(&cinv));
                    }
                    self.add_to(*x2, *y2, terms);
                    queue.push_back((*x2, *y2));
                }
            }
            for v in [x1, y1] {
                self.alive[v] = false;
                let outs: Vec<usize> = self.out[v].keys().copied().collect();
                for t in outs {
                    self.inc[t].remove(&v);
                }
                self.out[v].clear();
                let ins: Vec<usize> = self.inc[v].drain().collect();
                for s in ins {
                    self.out[s].remove(&v);
                }
            }
        }
    }

    fn compacted(self) -> Self {
        let mut map = vec![usize::MAX; self.objs.len()];
        let mut next = Complex::new();
        for (i, o) in self.objs.iter().enumerate() {
            if self.alive[i] {
                map[i] = next.push(o.clone());
            }
        }
        for (i, outs) in self.out.into_iter().enumerate() {
            if !self.alive[i] {
                continue;
            }
            for (t, m) in outs {
                next.out[map[i]].insert(map[t], m);
                next.inc[map[t]].insert(map[i]);
            }
        }
        next
    }
}

/// Partner of every port along the diagram's edges.
fn port_partners(d: &PlanarDiagram) -> Vec<usize> {
    let mut partner = vec![0; 4 * d.crossing_count()];
    for (_, ends) in d.edge_ends() {
        let [(c1, p1), (c2, p2)] = ends;
        partner[4 * c1 + p1] = 4 * c2 + p2;
        partner[4 * c2 + p2] = 4 * c1 + p1;
    }
    partner
}

/// Crossing order that keeps the frontier small: always take the crossing
/// with the most ports already attached.
fn greedy_order(n: usize, partner: &[usize], start: usize) -> (Vec<usize>, f64) {
    let mut added = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut open: i64 = 0;
    let mut cost = 0.0;
    let mut next = Some(start);
    for _ in 0..n {
        let score = |c: usize| {
            (0..4)
                .filter(|&k| {
                    let q = partner[4 * c + k] / 4;
                    added[q] || q == c
                })
                .count()
        };
        let best = next.take().unwrap_or_else(|| {
            (0..n).filter(|&c| !added[c]).max_by_key(|&c| (score(c), std::cmp::Reverse(c))).unwrap()
        });
        open += 4 - 2 * score(best) as i64;
        added[best] = true;
        order.push(best);
        cost += 2f64.powi(open as i32);
    }
    (order, cost)
}

/// Greedy order that keeps the open boundary small, best over all starts.
pub fn scan_order(d: &PlanarDiagram) -> Vec<usize> {
    let n = d.crossing_count();
    let partner = port_partners(d);
    (0..n)
        .map(|s| greedy_order(n, &partner, s))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(o, _)| o)
        .unwrap_or_default()
}

fn smoothing_partner(sigma: usize, k: usize) -> usize {
    match (sigma, k) {
        (0, 0) => 1,
        (0, 1) => 0,
        (0, 2) => 3,
        (0, 3) => 2,
        (_, 0) => 3,
        (_, 3) => 0,
        (_, 1) => 2,
        _ => 1,
    }
}

fn smoothing_piece(sigma: usize, k: usize) -> usize {
    if sigma == 0 {
        k / 2
    } else if k == 0 || k == 3 {
        0
    } else {
        1
    }
}

/// Role of a boundary cycle in a glued cobordism.
#[derive(Clone, Copy, Debug)]
enum Role {
    SourceCircle(usize),
    TargetCircle(usize),
    Arc(usize),
}

/// Shape of a cobordism glued with one crossing, and what each of its
/// boundary cycles becomes after delooping.
struct Glued {
    shape: Shape,
    roles: Vec<Role>,
    n_source_circles: usize,
}

/// Geometry of one crossing being attached to the frontier.
struct Attach {
    /// number of old frontier points; nodes `f..f+4` are the crossing ports
    f: usize,
    elink: Vec<Option<usize>>,
    /// new frontier position of every node, if it stays on the boundary
    new_pos: Vec<Option<usize>>,
    new_frontier: Vec<usize>,
}

impl Attach {
    fn new(frontier: &[usize], crossing: usize, partner: &[usize]) -> Self {
        let f = frontier.len();
        let pos: HashMap<usize, usize> = frontier.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut elink = vec![None; f + 4];
        for k in 0..4 {
            let pp = partner[4 * crossing + k];
            if pp / 4 == crossing {
                elink[f + k] = Some(f + pp % 4);
            } else if let Some(&i) = pos.get(&pp) {
                elink[f + k] = Some(i);
                elink[i] = Some(f + k);
            }
        }
        let port_of = |u: usize| if u < f { frontier[u] } else { 4 * crossing + u - f };
        let mut stay: Vec<usize> = (0..f + 4).filter(|&u| elink[u].is_none()).collect();
        stay.sort_by_key(|&u| port_of(u));
        let mut new_pos = vec![None; f + 4];
        for (i, &u) in stay.iter().enumerate() {
            new_pos[u] = Some(i);
        }
        let new_frontier = stay.iter().map(|&u| port_of(u)).collect();
        Attach { f, elink, new_pos, new_frontier }
    }

    fn arc(&self, m: &[u8], sigma: usize, u: usize) -> usize {
        if u < self.f {
            m[u] as usize
        } else {
            self.f + smoothing_partner(sigma, u - self.f)
        }
    }

    /// Matching on the new frontier and the circles (by smallest node).
    fn glue_object(&self, m: &[u8], sigma: usize) -> (Vec<u8>, Vec<usize>) {
        let n = self.f + 4;
        let mut seen = vec![false; n];
        let mut matching = vec![0u8; self.new_frontier.len()];
        for u in 0..n {
            let Some(i) = self.new_pos[u] else { continue };
            if seen[u] {
                continue;
            }
            seen[u] = true;
            let mut v = self.arc(m, sigma, u);
            seen[v] = true;
            while let Some(w) = self.elink[v] {
                seen[w] = true;
                v = self.arc(m, sigma, w);
                seen[v] = true;
            }
            let j = self.new_pos[v].unwrap();
            matching[i] = j as u8;
            matching[j] = i as u8;
        }
        let mut circles = Vec::new();
        for u in 0..n {
            if seen[u] {
                continue;
            }
            circles.push(u);
            let mut w = u;
            loop {
                seen[w] = true;
                let v = self.arc(m, sigma, w);
                seen[v] = true;
                w = self.elink[v].unwrap();
                if w == u {
                    break;
                }
            }
        }
        (matching, circles)
    }

    /// Cobordism from `top` to `bottom` glued from pieces; `piece_of` gives
    /// the piece holding each node's arcs.
    fn glue_cobordism(
        &self,
        top: (&[u8], usize),
        bottom: (&[u8], usize),
        piece_of: &[usize],
        n_pieces: usize,
    ) -> Glued {
        let n = self.f + 4;
        let (src_m, src_circles) = self.glue_object(top.0, top.1);
        let (tgt_m, tgt_circles) = self.glue_object(bottom.0, bottom.1);
        let (arc_cyc, _) = cycles(&src_m, &tgt_m);
        let mut glues = Vec::new();
        for u in 0..n {
            if let Some(w) = self.elink[u] {
                if u < w {
                    glues.push((piece_of[u], piece_of[w]));
                }
            }
        }
        // walk boundary cycles; layer 0 is the source, 1 the target
        let mut seen = vec![[false; 2]; n];
        let mut boundary_piece = Vec::new();
        let mut roles = Vec::new();
        for layer0 in 0..2 {
            for u0 in 0..n {
                if seen[u0][layer0] {
                    continue;
                }
                let (mut u, mut layer) = (u0, layer0);
                let mut layers_seen = [false; 2];
                let mut min_node = usize::MAX;
                let mut frontier_point = None;
                loop {
                    layers_seen[layer] = true;
                    min_node = min_node.min(u);
                    let v = if layer == 0 { self.arc(top.0, top.1, u) } else { self.arc(bottom.0, bottom.1, u) };
                    seen[u][layer] = true;
                    seen[v][layer] = true;
                    min_node = min_node.min(v);
                    match self.elink[v] {
                        Some(w) => u = w,
                        None => {
                            frontier_point.get_or_insert(self.new_pos[v].unwrap());
                            u = v;
                            layer = 1 - layer;
                        }
                    }
                    if (u, layer) == (u0, layer0) {
                        break;
                    }
                }
                boundary_piece.push(piece_of[u0]);
                roles.push(match (frontier_point, layers_seen) {
                    (Some(p), _) => Role::Arc(arc_cyc[p] as usize),
                    (None, [true, false]) => {
                        Role::SourceCircle(src_circles.iter().position(|&c| c == min_node).unwrap())
                    }
                    _ => Role::TargetCircle(tgt_circles.iter().position(|&c| c == min_node).unwrap()),
                });
            }
        }
        let shape = Shape::new(n_pieces, &glues, &boundary_piece);
        Glued { shape, roles, n_source_circles: src_circles.len() }
    }
}

/// Send evaluated terms of a glued cobordism to delooped generators.
#[allow(clippy::too_many_arguments)]
fn distribute<F: Field>(
    glued: &Glued,
    evaluated: Vec<(u32, HPoly)>,
    coef: &F,
    h0: u32,
    src_base: usize,
    tgt_base: usize,
    unit: &F,
    sink: &mut HashMap<(usize, usize), HashMap<(u32, u32), F>>,
) {
    for (mask, poly) in evaluated {
        let mut arcs = 0u32;
        let mut tgt_label = 0usize;
        let mut forced = 0usize; // source circles that must carry X
        let mut free = Vec::new(); // source circles that may be 1 or X
        for (k, role) in glued.roles.iter().enumerate() {
            let bit = mask >> k & 1 == 1;
            match *role {
                Role::Arc(j) => {
                    if bit {
                        arcs |= 1 << j;
                    }
                }
                Role::TargetCircle(j) => {
                    if bit {
                        tgt_label |= 1 << j;
                    }
                }
                Role::SourceCircle(j) => {
                    if bit {
                        free.push(j);
                    } else {
                        forced |= 1 << j;
                    }
                }
            }
        }
        debug_assert!(forced >> glued.n_source_circles == 0);
        for choice in 0..1usize << free.len() {
            let mut label = forced;
            let mut extra_h = 0;
            for (i, &j) in free.iter().enumerate() {
                if choice >> i & 1 == 1 {
                    label |= 1 << j;
                    extra_h += 1;
                }
            }
            let entry = sink.entry((src_base + label, tgt_base + tgt_label)).or_default();
            for (i, &x) in poly.iter().enumerate() {
                if x != 0 {
                    accumulate(entry, (arcs, h0 + extra_h + i as u32), coef.mul(&unit.from_i64(x)));
                }
            }
        }
    }
}

pub struct ScanOutput<F: Field> {
    /// Khovanov homology dimensions `(h, q) -> dim`.
    pub khovanov: BTreeMap<(i64, i64), usize>,
    /// Lee complex in degrees -1, 0, 1 (h set to 1).
    pub lee: FilteredComplex<F>,
    pub peak_objects: usize,
}

pub fn scan<F: Field>(d: &PlanarDiagram, unit: &F, budget: usize) -> Result<ScanOutput<F>> {
    let n = d.crossing_count();
    if n > budget {
        return Err(Error::BudgetExceeded { crossings: n, budget });
    }
    if n == 0 {
        return Ok(ScanOutput {
            khovanov: [((0, -1), 1), ((0, 1), 1)].into_iter().collect(),
            lee: FilteredComplex {
                q_minus: vec![],
                q_zero: vec![1, -1],
                q_plus: vec![],
                d_minus: vec![],
                d_zero: vec![vec![], vec![]],
            },
            peak_objects: 2,
        });
    }
    let partner = port_partners(d);
    let mut expander = Expander::new();
    let mut cx: Complex<F> = Complex::new();
    cx.push(Obj { m: Rc::new(Vec::new()), q: 0, h: 0 });
    let mut frontier: Vec<usize> = Vec::new();
    let mut peak = 1;
    for c in scan_order(d) {
        let positive = d.crossings()[c].is_positive();
        let shifts: [(i32, i32); 2] = if positive { [(0, 1), (1, 2)] } else { [(-1, -2), (0, -1)] };
        let at = Attach::new(&frontier, c, &partner);
        let mut next: Complex<F> = Complex::new();
        let mut base = vec![[0usize; 2]; cx.objs.len()];
        let mut interned: HashMap<Vec<u8>, Rc<Vec<u8>>> = HashMap::new();
        for (i, o) in cx.objs.iter().enumerate() {
            for sigma in 0..2 {
                let (m, circles) = at.glue_object(&o.m, sigma);
                let m = interned.entry(m.clone()).or_insert_with(|| Rc::new(m)).clone();
                let k = circles.len();
                base[i][sigma] = next.objs.len();
                for label in 0..1usize << k {
                    next.push(Obj {
                        m: m.clone(),
                        q: o.q + shifts[sigma].1 + k as i32 - 2 * label.count_ones() as i32,
                        h: o.h + shifts[sigma].0,
                    });
                }
            }
        }
        let mut sink: HashMap<(usize, usize), HashMap<(u32, u32), F>> = HashMap::new();
        let mut shapes: HashMap<(Rc<Vec<u8>>, Rc<Vec<u8>>, usize), Rc<Glued>> = HashMap::new();
        let f = at.f;
        // d_O (x) id
        for (i, outs) in cx.out.iter().enumerate() {
            for (&j, mor) in outs {
                let (mi, mj) = (&cx.objs[i].m, &cx.objs[j].m);
                let (cyc, nc) = cycles(mi, mj);
                for sigma in 0..2 {
                    let glued = shapes
                        .entry((mi.clone(), mj.clone(), sigma))
                        .or_insert_with(|| {
                            let piece_of: Vec<usize> = (0..f + 4)
                                .map(|u| if u < f { cyc[u] as usize } else { nc + smoothing_piece(sigma, u - f) })
                                .collect();
                            Rc::new(at.glue_cobordism((mi, sigma), (mj, sigma), &piece_of, nc + 2))
                        })
                        .clone();
                    let mut dots = vec![0u32; glued.shape.comps.len()];
                    for t in mor {
                        dots.iter_mut().for_each(|x| *x = 0);
                        for k in 0..nc {
                            if t.dots >> k & 1 == 1 {
                                dots[glued.shape.piece_comp[k]] += 1;
                            }
                        }
                        let ev = expander.evaluate(&glued.shape, &dots);
                        distribute(&glued, ev, &t.coef, t.h, base[i][sigma], base[j][sigma], unit, &mut sink);
                    }
                }
            }
        }
        // id (x) saddle
        for (i, o) in cx.objs.iter().enumerate() {
            let (cyc, nc) = cycles(&o.m, &o.m);
            let piece_of: Vec<usize> = (0..f + 4).map(|u| if u < f { cyc[u] as usize } else { nc }).collect();
            let glued = at.glue_cobordism((&o.m, 0), (&o.m, 1), &piece_of, nc + 1);
            let ev = expander.evaluate(&glued.shape, &vec![0; glued.shape.comps.len()]);
            let sign = if o.h % 2 == 0 { unit.one() } else { unit.one().neg() };
            distribute(&glued, ev, &sign, 0, base[i][0], base[i][1], unit, &mut sink);
        }
        for ((s, t), terms) in sink {
            next.add_to(s, t, terms);
        }
        peak = peak.max(next.live_count());
        next.eliminate_all(&mut expander, unit);
        cx = next.compacted();
        frontier = at.new_frontier;
        log::trace!("crossing {c}: {} objects, frontier {}", cx.objs.len(), frontier.len());
    }
    finish(cx, unit, peak)
}

fn finish<F: Field>(cx: Complex<F>, unit: &F, peak: usize) -> Result<ScanOutput<F>> {
    let mut khovanov = BTreeMap::new();
    for o in &cx.objs {
        *khovanov.entry((o.h as i64, o.q as i64)).or_insert(0) += 1;
    }
    let index_in = |h: i32| -> (Vec<usize>, HashMap<usize, usize>) {
        let ids: Vec<usize> = (0..cx.objs.len()).filter(|&i| cx.objs[i].h == h).collect();
        let map = ids.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        (ids, map)
    };
    let (gm, _) = index_in(-1);
    let (g0, i0) = index_in(0);
    let (g1, i1) = index_in(1);
    let column = |src: usize, target: &HashMap<usize, usize>| -> Result<SparseVec<F>> {
        let mut col: BTreeMap<usize, F> = BTreeMap::new();
        for (&t, mor) in &cx.out[src] {
            let Some(&row) = target.get(&t) else { continue };
            for term in mor {
                if cx.objs[t].q - cx.objs[src].q != 2 * term.h as i32 || term.h == 0 {
                    return Err(Error::Internal("ungraded term in reduced complex".into()));
                }
                let e = col.entry(row).or_insert_with(|| unit.zero());
                *e = e.add(&term.coef);
            }
        }
        Ok(col.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    };
    let d_minus = gm.iter().map(|&i| column(i, &i0)).collect::<Result<Vec<_>>>()?;
    let d_zero = g0.iter().map(|&i| column(i, &i1)).collect::<Result<Vec<_>>>()?;
    let q = |ids: &[usize]| ids.iter().map(|&i| cx.objs[i].q as i64).collect();
    Ok(ScanOutput {
        khovanov,
        lee: FilteredComplex { q_minus: q(&gm), q_zero: q(&g0), q_plus: q(&g1), d_minus, d_zero },
        peak_objects: peak,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::diagram::library::knot_by_name;
    use crate::lee::cube::{Cube, CUBE_BUDGET};

    fn one() -> Rational {
        Rational::from_int(1)
    }

    #[test]
    fn trefoil_matches_cube() {
        let d = knot_by_name("T2,3").unwrap();
        let out = scan(&d, &one(), SCAN_BUDGET).unwrap();
        let cube = Cube::new(&d, false, CUBE_BUDGET).unwrap().homology(&one());
        assert_eq!(out.khovanov, cube);
        assert_eq!(out.lee.levels().unwrap().s(), 2);
    }

    #[test]
    fn small_knots_match_cube() {
        for name in ["fig8", "5_2", "-T2,3", "6_1", "T2,3#fig8", "braid(2;1,-1,1)"] {
            let d = knot_by_name(name).unwrap();
            let out = scan(&d, &one(), SCAN_BUDGET).unwrap();
            let kh = Cube::new(&d, false, CUBE_BUDGET).unwrap().homology(&one());
            assert_eq!(out.khovanov, kh, "{name}");
            let lee = Cube::new(&d, true, CUBE_BUDGET).unwrap().lee_complex(&one());
            assert_eq!(out.lee.levels().unwrap(), lee.levels().unwrap(), "{name}");
        }
    }

    #[test]
    fn kinks() {
        for code in ["X(1,2,2,1)", "X(2,1,1,2)", "X(1,1,2,2)"] {
            let d = PlanarDiagram::parse(code).unwrap();
            let out = scan(&d, &one(), SCAN_BUDGET).unwrap();
            assert_eq!(out.khovanov.values().sum::<usize>(), 2, "{code}");
            assert_eq!(out.lee.levels().unwrap().s(), 0);
        }
    }
}
