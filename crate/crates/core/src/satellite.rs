//! Twisted Whitehead doubles `D+(K,t)` and `D-(K,t)`.
//!
//! The companion diagram is doubled with its blackboard framing: every
//! crossing becomes a 2x2 grid of crossings. One edge of the companion is
//! cut open and a box is spliced in there. The box holds `t - writhe(K)`
//! full twists of the band and then the clasp.

use crate::diagram::builder::{DiagramBuilder, Slot};
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClaspSign {
    Positive,
    Negative,
}

impl ClaspSign {
    pub fn value(&self) -> i8 {
        match self {
            ClaspSign::Positive => 1,
            ClaspSign::Negative => -1,
        }
    }

    pub fn opposite(&self) -> Self {
        match self {
            ClaspSign::Positive => ClaspSign::Negative,
            ClaspSign::Negative => ClaspSign::Positive,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "+" | "+1" | "positive" | "pos" => Some(ClaspSign::Positive),
            "-" | "-1" | "negative" | "neg" => Some(ClaspSign::Negative),
            _ => None,
        }
    }

    pub fn symbol(&self) -> char {
        match self {
            ClaspSign::Positive => '+',
            ClaspSign::Negative => '-',
        }
    }
}

#[derive(Clone, Debug)]
pub struct DoubleSpec {
    pub companion: PlanarDiagram,
    pub t: i64,
    pub clasp: ClaspSign,
}

impl DoubleSpec {
    pub fn new(companion: &PlanarDiagram, t: i64, clasp: ClaspSign) -> Self {
        DoubleSpec { companion: companion.clone(), t, clasp }
    }

    /// `4c + 2|t - w| + 2`
    pub fn crossing_count(&self) -> usize {
        let c = self.companion.crossing_count();
        4 * c + 2 * (self.t - self.companion.writhe()).unsigned_abs() as usize + 2
    }
}

/// A double together with the positions of its twist and clasp crossings.
#[derive(Clone, Debug)]
pub struct DoubleDiagram {
    pub diagram: PlanarDiagram,
    pub twist_crossings: Vec<usize>,
    pub clasp_crossings: [usize; 2],
}

// Slots of a crossing whose strands run south-north and west-east.
const S: u8 = 0;
const E: u8 = 1;
const N: u8 = 2;
const W: u8 = 3;
// Slots of a twist crossing, strands entering on the west side.
const SW: u8 = 0;
const SE: u8 = 1;
const NE: u8 = 2;
const NW: u8 = 3;

fn slot(node: usize, s: u8) -> Slot {
    DiagramBuilder::slot(node, s)
}

/// A piece of a two-strand ribbon: where its left and right strands enter
/// and leave, left and right taken along the direction of travel.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RibbonSegment {
    pub in_l: Slot,
    pub in_r: Slot,
    pub out_l: Slot,
    pub out_r: Slot,
}

/// Join consecutive segments; with `cyclic` the last one feeds the first.
pub(crate) fn chain(b: &mut DiagramBuilder, segs: &[RibbonSegment], cyclic: bool) {
    for pair in segs.windows(2) {
        b.connect(pair[0].out_l, pair[1].in_l);
        b.connect(pair[0].out_r, pair[1].in_r);
    }
    if cyclic {
        let (first, last) = (segs[0], segs[segs.len() - 1]);
        b.connect(last.out_l, first.in_l);
        b.connect(last.out_r, first.in_r);
    }
}

/// 2x2 block of crossings. `grid[ix][iy]`: ix 0 is the west column, iy 0
/// the south row. `under_pair` 0 puts the north-south strands under.
pub(crate) fn crossing_grid(b: &mut DiagramBuilder, under_pair: u8) -> [[usize; 2]; 2] {
    let mut g = [[0; 2]; 2];
    for col in g.iter_mut() {
        for cell in col.iter_mut() {
            *cell = b.crossing(under_pair);
        }
    }
    b.connect(slot(g[0][0], N), slot(g[0][1], S));
    b.connect(slot(g[1][0], N), slot(g[1][1], S));
    b.connect(slot(g[0][0], E), slot(g[1][0], W));
    b.connect(slot(g[0][1], E), slot(g[1][1], W));
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Heading {
    South,
    East,
    West,
}

/// The grid seen as a segment of the ribbon crossing it in direction `h`.
pub(crate) fn grid_passage(g: &[[usize; 2]; 2], h: Heading) -> RibbonSegment {
    let s = |ix: usize, iy: usize, k: u8| slot(g[ix][iy], k);
    match h {
        Heading::South => RibbonSegment { in_l: s(1, 1, N), in_r: s(0, 1, N), out_l: s(1, 0, S), out_r: s(0, 0, S) },
        Heading::East => RibbonSegment { in_l: s(0, 1, W), in_r: s(0, 0, W), out_l: s(1, 1, E), out_r: s(1, 0, E) },
        Heading::West => RibbonSegment { in_l: s(1, 0, E), in_r: s(1, 1, E), out_l: s(0, 0, W), out_r: s(0, 1, W) },
    }
}

/// The blackboard-framed ribbon following `k`, cut open along one edge.
/// `None` for a crossingless diagram.
pub(crate) fn knotted_ribbon(b: &mut DiagramBuilder, k: &PlanarDiagram) -> Option<RibbonSegment> {
    if k.is_trivial() {
        return None;
    }
    // the under-strand of each crossing runs south to north
    let grid: Vec<[[usize; 2]; 2]> = (0..k.crossing_count()).map(|_| crossing_grid(b, 0)).collect();
    // strand ends at a port, as seen facing away from the crossing
    let outer = |c: usize, port: usize, left: bool| -> Slot {
        let g = &grid[c];
        match (port, left) {
            (0, true) => slot(g[1][0], S),
            (0, false) => slot(g[0][0], S),
            (1, true) => slot(g[1][1], E),
            (1, false) => slot(g[1][0], E),
            (2, true) => slot(g[0][1], N),
            (2, false) => slot(g[1][1], N),
            (3, true) => slot(g[0][0], W),
            _ => slot(g[0][1], W),
        }
    };
    let passages = k.passages();
    let tail = (passages[0].crossing, passages[0].port_out());
    let head = (passages[1].crossing, passages[1].port_in);
    let cut = k.crossings()[tail.0].edges()[tail.1];
    let mut ends: Vec<_> = k.edge_ends().into_iter().filter(|(label, _)| *label != cut).collect();
    ends.sort_by_key(|(label, _)| *label);
    for (_, [(c1, p1), (c2, p2)]) in ends {
        b.connect(outer(c1, p1, true), outer(c2, p2, false));
        b.connect(outer(c1, p1, false), outer(c2, p2, true));
    }
    Some(RibbonSegment {
        in_l: outer(head.0, head.1, false),
        in_r: outer(head.0, head.1, true),
        out_l: outer(tail.0, tail.1, true),
        out_r: outer(tail.0, tail.1, false),
    })
}

/// `count` half twists of the ribbon, all crossings built with `under_pair`.
pub(crate) fn twisted_ribbon(b: &mut DiagramBuilder, count: usize, under_pair: u8) -> Option<(RibbonSegment, Vec<usize>)> {
    let twist: Vec<usize> = (0..count).map(|_| b.crossing(under_pair)).collect();
    for pair in twist.windows(2) {
        b.connect(slot(pair[0], NE), slot(pair[1], NW));
        b.connect(slot(pair[0], SE), slot(pair[1], SW));
    }
    let (&first, &last) = (twist.first()?, twist.last()?);
    Some((
        RibbonSegment { in_l: slot(first, NW), in_r: slot(first, SW), out_l: slot(last, NE), out_r: slot(last, SE) },
        twist,
    ))
}

fn build(spec: &DoubleSpec, twist_under: u8, clasp_swapped: bool) -> Result<DoubleDiagram> {
    let k = &spec.companion;
    let twists = 2 * (spec.t - k.writhe()).unsigned_abs() as usize;
    let mut b = DiagramBuilder::new();
    let mut segs: Vec<RibbonSegment> = knotted_ribbon(&mut b, k).into_iter().collect();
    let twist = twisted_ribbon(&mut b, twists, twist_under).map(|(seg, nodes)| {
        segs.push(seg);
        nodes
    });
    // the clasp: two hooked caps closing the ribbon
    let (c1_under, c2_under) = if clasp_swapped { (0, 1) } else { (1, 0) };
    let c1 = b.crossing(c1_under);
    let c2 = b.crossing(c2_under);
    b.connect(slot(c1, S), slot(c2, N));
    b.connect(slot(c1, W), slot(c2, W));
    segs.push(RibbonSegment { in_l: slot(c1, N), in_r: slot(c2, S), out_l: slot(c1, E), out_r: slot(c2, E) });
    chain(&mut b, &segs, true);

    let built = b.finish()?;
    let index = |node: usize| built.crossing_index[node].expect("crossing node");
    Ok(DoubleDiagram {
        twist_crossings: twist.unwrap_or_default().iter().map(|&n| index(n)).collect(),
        clasp_crossings: [index(c1), index(c2)],
        diagram: built.diagram,
    })
}

/// Build the double and pin its twist and clasp handedness by the signs of
/// the resulting crossings: a positive full twist is two negative crossings
/// and a positive clasp is two positive ones.
pub fn build_double(spec: &DoubleSpec) -> Result<DoubleDiagram> {
    let full_twists = spec.t - spec.companion.writhe();
    let twist_target: i8 = if full_twists > 0 { -1 } else { 1 };
    let signs = |d: &DoubleDiagram, idx: &[usize]| -> Vec<i8> {
        idx.iter().map(|&i| d.diagram.crossings()[i].sign()).collect()
    };
    let first = build(spec, 0, false)?;
    let twist_ok = signs(&first, &first.twist_crossings).first().map_or(true, |&s| s == twist_target);
    let clasp_ok = signs(&first, &first.clasp_crossings)[0] == spec.clasp.value();
    let out = if twist_ok && clasp_ok { first } else { build(spec, if twist_ok { 0 } else { 1 }, !clasp_ok)? };
    let ts = signs(&out, &out.twist_crossings);
    let cs = signs(&out, &out.clasp_crossings);
    if ts.iter().any(|&s| s != twist_target) || cs.iter().any(|&s| s != spec.clasp.value()) {
        return Err(Error::Internal(format!("double has twist signs {ts:?} and clasp signs {cs:?}")));
    }
    Ok(out)
}

pub fn twisted_double(spec: &DoubleSpec) -> Result<PlanarDiagram> {
    let d = build_double(spec)?.diagram;
    let name = format!(
        "D{}({},{})",
        spec.clasp.symbol(),
        spec.companion.name().unwrap_or("K"),
        spec.t
    );
    Ok(d.with_name(name))
}

/// `(D-(-K,-t), -D+(K,t))`; the two knots are equal.
pub fn double_relation_witness(k: &PlanarDiagram, t: i64) -> Result<(PlanarDiagram, PlanarDiagram)> {
    let left = twisted_double(&DoubleSpec::new(&k.concordance_inverse(), -t, ClaspSign::Negative))?;
    let right = twisted_double(&DoubleSpec::new(k, t, ClaspSign::Positive))?.concordance_inverse();
    Ok((left, right))
}

/// Relation between the doubles at `t` and `t + 1` when the twist counts
/// have the same sign: one diagram becomes the other after changing one
/// twist crossing and cancelling the resulting pair by a Reidemeister II
/// move.
#[derive(Clone, Debug)]
pub struct TwistStep {
    /// the double with more twist crossings
    pub larger: PlanarDiagram,
    /// `larger` with one twist crossing changed
    pub changed: PlanarDiagram,
    /// the double with fewer twist crossings
    pub smaller: PlanarDiagram,
    /// sign of the changed crossing before the change
    pub changed_from: i8,
}

pub fn twist_step_witness(k: &PlanarDiagram, t: i64, clasp: ClaspSign) -> Result<Option<TwistStep>> {
    let w = k.writhe();
    let (a, b) = (t - w, t + 1 - w);
    if a * b < 0 || (a == 0 && b == 0) {
        return Ok(None);
    }
    let (big_t, small_t) = if a.abs() > b.abs() { (t, t + 1) } else { (t + 1, t) };
    let larger = build_double(&DoubleSpec::new(k, big_t, clasp))?;
    let smaller = twisted_double(&DoubleSpec::new(k, small_t, clasp))?;
    let i = larger.twist_crossings[0];
    let changed_from = larger.diagram.crossings()[i].sign();
    Ok(Some(TwistStep {
        changed: larger.diagram.change_crossing(i)?,
        larger: larger.diagram,
        smaller,
        changed_from,
    }))
}
