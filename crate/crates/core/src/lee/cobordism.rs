//! Dotted cobordisms between crossingless matchings, over `Q[h]` with the
//! relations of the Frobenius algebra `A = Q[h][X]/(X^2 - hX)`.
//!
//! A morphism between matchings `M` and `N` on the same boundary is a
//! combination of "disk" cobordisms: one disk for every cycle of `M u N`,
//! each with or without a dot. Bit `k` of [`Term::dots`] puts a dot on the
//! disk of cycle `k`, where cycles are numbered by their smallest point.

use std::collections::HashMap;

use crate::arith::Field;

/// Polynomial in `h`, coefficient of `h^i` at index `i`.
pub type HPoly = Vec<i64>;

fn pmul(a: &HPoly, b: &HPoly) -> HPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn padd(a: &HPoly, b: &HPoly) -> HPoly {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    trim(out)
}

fn trim(mut p: HPoly) -> HPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn times_h(p: &HPoly, k: usize) -> HPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; k];
    out.extend_from_slice(p);
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term<F> {
    pub dots: u32,
    pub h: u32,
    pub coef: F,
}

pub type Mor<F> = Vec<Term<F>>;

/// Collect `(dots, h) -> coefficient` into a morphism, dropping zeros.
pub fn collect<F: Field>(map: HashMap<(u32, u32), F>) -> Mor<F> {
    let mut terms: Mor<F> = map
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((dots, h), coef)| Term { dots, h, coef })
        .collect();
    terms.sort_by_key(|t| (t.dots, t.h));
    terms
}

pub fn accumulate<F: Field>(map: &mut HashMap<(u32, u32), F>, key: (u32, u32), c: F) {
    match map.get_mut(&key) {
        Some(v) => *v = v.add(&c),
        None => {
            map.insert(key, c);
        }
    }
}

/// Cycles of the union of two matchings on points `0..n`: cycle index of
/// every point and the number of cycles.
pub fn cycles(a: &[u8], b: &[u8]) -> (Vec<u8>, usize) {
    let n = a.len();
    let mut cyc = vec![u8::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if cyc[start] != u8::MAX {
            continue;
        }
        let mut p = start;
        loop {
            cyc[p] = count as u8;
            let q = a[p] as usize;
            cyc[q] = count as u8;
            p = b[q] as usize;
            if p == start {
                break;
            }
        }
        count += 1;
    }
    (cyc, count)
}

#[derive(Clone, Debug)]
pub struct Component {
    pub chi: i32,
    /// boundary cycles lying on this component
    pub boundary: Vec<usize>,
}

/// Topology of a surface glued from disks along intervals.
#[derive(Clone, Debug)]
pub struct Shape {
    pub piece_comp: Vec<usize>,
    pub comps: Vec<Component>,
}

impl Shape {
    /// `glues` are pairs of pieces joined along an interval;
    /// `boundary_piece[k]` is a piece containing boundary cycle `k`.
    pub fn new(n_pieces: usize, glues: &[(usize, usize)], boundary_piece: &[usize]) -> Self {
        let mut parent: Vec<usize> = (0..n_pieces).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in glues {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut comp_of_root = vec![usize::MAX; n_pieces];
        let mut piece_comp = vec![0; n_pieces];
        let mut comps: Vec<Component> = Vec::new();
        for p in 0..n_pieces {
            let r = find(&mut parent, p);
            if comp_of_root[r] == usize::MAX {
                comp_of_root[r] = comps.len();
                comps.push(Component { chi: 0, boundary: Vec::new() });
            }
            piece_comp[p] = comp_of_root[r];
            comps[piece_comp[p]].chi += 1;
        }
        for &(a, _) in glues {
            comps[piece_comp[a]].chi -= 1;
        }
        for (k, &p) in boundary_piece.iter().enumerate() {
            comps[piece_comp[p]].boundary.push(k);
        }
        Shape { piece_comp, comps }
    }
}

/// Evaluates connected surfaces as elements of `A^{(x)b}`.
#[derive(Default)]
pub struct Expander {
    cache: HashMap<(bool, u32, u32), Vec<(u32, HPoly)>>,
}

impl Expander {
    pub fn new() -> Self {
        Self::default()
    }

    /// Surface of genus `genus` carrying `dots` dots with `b` boundary
    /// circles, as `(mask over the b circles, coefficient)`.
    pub fn expand(&mut self, dots: u32, genus: u32, b: u32) -> Vec<(u32, HPoly)> {
        let base = self
            .cache
            .entry((dots > 0, genus, b))
            .or_insert_with(|| expand_uncached(dots > 0, genus, b))
            .clone();
        if dots > 1 {
            base.into_iter().map(|(m, p)| (m, times_h(&p, dots as usize - 1))).collect()
        } else {
            base
        }
    }

    /// Product over components; masks are over all boundary cycles.
    pub fn evaluate(&mut self, shape: &Shape, dots_per_comp: &[u32]) -> Vec<(u32, HPoly)> {
        let mut acc: Vec<(u32, HPoly)> = vec![(0, vec![1])];
        for (ci, comp) in shape.comps.iter().enumerate() {
            let b = comp.boundary.len() as i32;
            let twice_genus = 2 - b - comp.chi;
            assert!(
                twice_genus >= 0 && twice_genus % 2 == 0,
                "bad surface: chi {} with {b} boundary circles",
                comp.chi
            );
            let local = self.expand(dots_per_comp[ci], (twice_genus / 2) as u32, b as u32);
            let mut next = Vec::with_capacity(acc.len() * local.len());
            for (m, p) in &acc {
                for (lm, lp) in &local {
                    let mut mask = *m;
                    for (j, &k) in comp.boundary.iter().enumerate() {
                        if lm >> j & 1 == 1 {
                            mask |= 1 << k;
                        }
                    }
                    let prod = pmul(p, lp);
                    if !prod.is_empty() {
                        next.push((mask, prod));
                    }
                }
            }
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        acc
    }
}

fn expand_uncached(dotted: bool, genus: u32, b: u32) -> Vec<(u32, HPoly)> {
    // element p + qX of A
    let (mut p, mut q): (HPoly, HPoly) = if dotted { (vec![], vec![1]) } else { (vec![1], vec![]) };
    for _ in 0..genus {
        // (p + qX)(2X - h) = -hp + (2p + hq)X
        let np = times_h(&p, 1).iter().map(|c| -c).collect();
        let nq = padd(&p.iter().map(|c| 2 * c).collect(), &times_h(&q, 1));
        p = np;
        q = trim(nq);
    }
    if b == 0 {
        return if q.is_empty() { vec![] } else { vec![(0, q)] };
    }
    let mut terms: Vec<(u32, HPoly)> = Vec::new();
    if !p.is_empty() {
        terms.push((0, p));
    }
    if !q.is_empty() {
        terms.push((1, q));
    }
    for k in 1..b {
        let mut next: HashMap<u32, HPoly> = HashMap::new();
        let mut add = |m: u32, poly: HPoly| {
            let e = next.entry(m).or_default();
            *e = padd(e, &poly);
        };
        for (m, poly) in terms {
            if m & 1 == 0 {
                // 1 -> 1(x)X + X(x)1 - h 1(x)1, new factor at bit k
                add(m | 1 << k, poly.clone());
                add(m | 1, poly.clone());
                add(m, times_h(&poly, 1).iter().map(|c| -c).collect());
            } else {
                add(m | 1 << k, poly);
            }
        }
        terms = next.into_iter().filter(|(_, p)| !p.is_empty()).collect();
        terms.sort_by_key(|t| t.0);
    }
    terms
}

/// Vertical composite `g . f` of `f: a -> b` and `g: b -> c`.
pub fn compose<F: Field>(
    f: &Mor<F>,
    a: &[u8],
    b: &[u8],
    g: &Mor<F>,
    c: &[u8],
    expander: &mut Expander,
    unit: &F,
) -> Mor<F> {
    let (cf, nf) = cycles(a, b);
    let (cg, ng) = cycles(b, c);
    let (cac, nac) = cycles(a, c);
    let glues: Vec<(usize, usize)> = (0..b.len())
        .filter(|&i| i < b[i] as usize)
        .map(|i| (cf[i] as usize, nf + cg[i] as usize))
        .collect();
    let mut boundary_piece = vec![usize::MAX; nac];
    for i in 0..a.len() {
        let k = cac[i] as usize;
        if boundary_piece[k] == usize::MAX {
            boundary_piece[k] = cf[i] as usize;
        }
    }
    let shape = Shape::new(nf + ng, &glues, &boundary_piece);
    let mut out: HashMap<(u32, u32), F> = HashMap::new();
    let mut dots = vec![0u32; shape.comps.len()];
    for tf in f {
        for tg in g {
            dots.iter_mut().for_each(|d| *d = 0);
            for k in 0..nf {
                if tf.dots >> k & 1 == 1 {
                    dots[shape.piece_comp[k]] += 1;
                }
            }
            for k in 0..ng {
                if tg.dots >> k & 1 == 1 {
                    dots[shape.piece_comp[nf + k]] += 1;
                }
            }
            let c = tf.coef.mul(&tg.coef);
            for (mask, poly) in expander.evaluate(&shape, &dots) {
                for (i, &x) in poly.iter().enumerate() {
                    if x != 0 {
                        accumulate(&mut out, (mask, tf.h + tg.h + i as u32), c.mul(&unit.from_i64(x)));
                    }
                }
            }
        }
    }
    collect(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    #[test]
    fn closed_surfaces() {
        let mut e = Expander::new();
        // sphere 0, dotted sphere 1, two dots h, torus 2
        assert!(e.expand(0, 0, 0).is_empty());
        assert_eq!(e.expand(1, 0, 0), vec![(0, vec![1])]);
        assert_eq!(e.expand(2, 0, 0), vec![(0, vec![0, 1])]);
        assert_eq!(e.expand(0, 1, 0), vec![(0, vec![2])]);
    }

    #[test]
    fn tube_is_neck_cut() {
        let mut e = Expander::new();
        let mut t = e.expand(0, 0, 2);
        t.sort();
        assert_eq!(t, vec![(0, vec![0, -1]), (1, vec![1]), (2, vec![1])]);
        assert_eq!(e.expand(1, 0, 2), vec![(3, vec![1])]);
    }

    #[test]
    fn cycles_of_matchings() {
        // points 0..4: a = (01)(23), b = (03)(12) -> one cycle
        let (c, n) = cycles(&[1, 0, 3, 2], &[3, 2, 1, 0]);
        assert_eq!(n, 1);
        assert_eq!(c, vec![0, 0, 0, 0]);
        let (_, n) = cycles(&[1, 0, 3, 2], &[1, 0, 3, 2]);
        assert_eq!(n, 2);
    }

    #[test]
    fn identity_composes_to_itself() {
        let one = Rational::from_int(1);
        let m = [1u8, 0, 3, 2];
        let id = vec![Term { dots: 0, h: 0, coef: one.clone() }];
        let mut e = Expander::new();
        assert_eq!(compose(&id, &m, &m, &id, &m, &mut e, &one), id);
        // saddle followed by saddle back is a tube on one side: neck cutting
        let n = [3u8, 2, 1, 0];
        let s = vec![Term { dots: 0, h: 0, coef: one.clone() }];
        let ss = compose(&s, &m, &n, &s, &m, &mut e, &one);
        assert_eq!(ss.len(), 3);
    }
}
