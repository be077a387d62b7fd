//! Boundary of a band presentation as a planar diagram.
//!
//! Feet sit on the top edge of the disk at `x = 1 .. 4g`. Band `2k` rises
//! at `4k+1`, runs along a high level and comes down at `4k+3`; band `2k+1`
//! rises at `4k+2`, runs lower and comes down at `4k+4`, passing over the
//! descending leg of band `2k`. Extra clasps between the two make the lower
//! band zigzag across that leg. Knots and framing twists sit on the free legs.

use crate::diagram::builder::DiagramBuilder;
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::satellite::{chain, crossing_grid, grid_passage, knotted_ribbon, twisted_ribbon, Heading, RibbonSegment};
use crate::seifert::BandPresentation;

struct Rendered {
    diagram: PlanarDiagram,
    /// per band, the crossing indices of its framing twists
    twists: Vec<Vec<usize>>,
}

fn render(bp: &BandPresentation, twist_under: &[u8]) -> Result<Rendered> {
    let g = bp.genus();
    let mut b = DiagramBuilder::new();
    // two joints per foot, for the strands left and right of the foot
    let feet: Vec<[usize; 2]> = (0..4 * g).map(|_| [b.joint(), b.joint()]).collect();
    let foot = |x: usize, side: usize| DiagramBuilder::slot(feet[x][side], 0);
    let disk = |x: usize, side: usize| DiagramBuilder::slot(feet[x][side], 1);
    let mut twist_nodes: Vec<Vec<usize>> = vec![Vec::new(); 2 * g];

    let mut free_leg = |b: &mut DiagramBuilder, i: usize, segs: &mut Vec<RibbonSegment>| {
        let band = &bp.bands()[i];
        segs.extend(knotted_ribbon(b, &band.knot));
        let count = 2 * (band.framing - band.knot.writhe()).unsigned_abs() as usize;
        if let Some((seg, nodes)) = twisted_ribbon(b, count, twist_under[i]) {
            segs.push(seg);
            twist_nodes[i] = nodes;
        }
    };
    let start = |x: usize| RibbonSegment { in_l: foot(x, 0), in_r: foot(x, 1), out_l: foot(x, 0), out_r: foot(x, 1) };
    let end = |x: usize| RibbonSegment { in_l: foot(x, 1), in_r: foot(x, 0), out_l: foot(x, 1), out_r: foot(x, 0) };

    for k in 0..g {
        let (hi, lo) = (2 * k, 2 * k + 1);
        for j in 0..2 * g {
            if j != hi && j != lo && (bp.clasp_count(hi, j) != 0 || bp.clasp_count(lo, j) != 0) {
                return Err(Error::BandFormat(format!(
                    "cannot render clasps between bands of different pairs ({} and {})",
                    hi + 1,
                    j + 1
                )));
            }
        }
        let extra = bp.clasp_count(hi, lo);
        // the first pass goes over the leg; positive clasps then alternate
        // under, over and negative ones over, under
        let passes: Vec<[[usize; 2]; 2]> = (0..1 + 2 * extra.unsigned_abs() as usize)
            .map(|p| {
                let under = if extra < 0 && p > 0 { (p + 1) % 2 } else { p % 2 };
                crossing_grid(&mut b, under as u8)
            })
            .collect();

        let mut high: Vec<RibbonSegment> = vec![start(4 * k)];
        free_leg(&mut b, hi, &mut high);
        let leg_order: Vec<usize> =
            if extra > 0 { (0..passes.len()).rev().collect() } else { (0..passes.len()).collect() };
        high.extend(leg_order.iter().map(|&p| grid_passage(&passes[p], Heading::South)));
        high.push(end(4 * k + 2));
        chain(&mut b, &high, false);

        let mut low: Vec<RibbonSegment> = vec![start(4 * k + 1)];
        low.extend(passes.iter().enumerate().map(|(p, grid)| {
            grid_passage(grid, if p % 2 == 0 { Heading::East } else { Heading::West })
        }));
        free_leg(&mut b, lo, &mut low);
        low.push(end(4 * k + 3));
        chain(&mut b, &low, false);
    }
    if g == 0 {
        return Ok(Rendered { diagram: PlanarDiagram::unknot(), twists: vec![] });
    }
    for x in 0..4 * g {
        let next = (x + 1) % (4 * g);
        b.connect(disk(x, 1), disk(next, 0));
    }

    let built = b.finish()?;
    let twists = twist_nodes
        .iter()
        .map(|nodes| nodes.iter().map(|&n| built.crossing_index[n].expect("crossing node")).collect())
        .collect();
    Ok(Rendered { diagram: built.diagram, twists })
}

/// Crossings in the rendered boundary.
pub fn boundary_crossing_count(bp: &BandPresentation) -> usize {
    let bands: usize = bp
        .bands()
        .iter()
        .map(|band| 4 * band.knot.crossing_count() + 2 * (band.framing - band.knot.writhe()).unsigned_abs() as usize)
        .sum();
    let pairs: usize = (0..bp.genus()).map(|k| 4 * (1 + 2 * bp.clasp_count(2 * k, 2 * k + 1).unsigned_abs() as usize)).sum();
    bands + pairs
}

/// The boundary knot, refusing to draw more than `budget` crossings.
pub fn boundary_diagram(bp: &BandPresentation, budget: usize) -> Result<PlanarDiagram> {
    let crossings = boundary_crossing_count(bp);
    if crossings > budget {
        return Err(Error::BudgetExceeded { crossings, budget });
    }
    let n = bp.bands().len();
    let target = |i: usize| -> i8 {
        let band = &bp.bands()[i];
        if band.framing - band.knot.writhe() > 0 { -1 } else { 1 }
    };
    let wrong = |r: &Rendered| -> Vec<bool> {
        (0..n).map(|i| r.twists[i].iter().any(|&c| r.diagram.crossings()[c].sign() != target(i))).collect()
    };
    let first = render(bp, &vec![0; n])?;
    let flips = wrong(&first);
    let out = if flips.iter().any(|&f| f) {
        let second = render(bp, &flips.iter().map(|&f| f as u8).collect::<Vec<_>>())?;
        if wrong(&second).iter().any(|&f| f) {
            return Err(Error::Internal("framing twists have mixed signs".into()));
        }
        second
    } else {
        first
    };
    Ok(out.diagram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{alexander_polynomial, jones_polynomial, knot_by_name};
    use crate::satellite::{twisted_double, ClaspSign, DoubleSpec};
    use crate::seifert::{Band, SeifertMatrix};

    fn render_of(bp: &BandPresentation) -> PlanarDiagram {
        let d = boundary_diagram(bp, 40).unwrap();
        assert!(d.is_planar());
        d
    }

    #[test]
    fn disk_is_unknot() {
        assert!(render_of(&BandPresentation::disk()).is_trivial());
    }

    #[test]
    fn genus_one_matrices() {
        let tref = render_of(&BandPresentation::realize(&SeifertMatrix::trefoil()).unwrap());
        assert_eq!(jones_polynomial(&tref).unwrap(), jones_polynomial(&knot_by_name("T2,3").unwrap()).unwrap());
        let fig8 = render_of(&BandPresentation::realize(&SeifertMatrix::figure_eight()).unwrap());
        assert_eq!(jones_polynomial(&fig8).unwrap(), jones_polynomial(&knot_by_name("fig8").unwrap()).unwrap());
    }

    #[test]
    fn doubles_as_band_presentations() {
        for (name, t) in [("U", 2), ("T2,3", 1), ("fig8", -1)] {
            let k = knot_by_name(name).unwrap();
            for (clasp, framing) in [(ClaspSign::Positive, -1), (ClaspSign::Negative, 1)] {
                let bp = BandPresentation::new(vec![Band { framing: t, knot: k.clone() }, Band::unknotted(framing)]).unwrap();
                let d = twisted_double(&DoubleSpec::new(&k, t, clasp)).unwrap();
                assert_eq!(jones_polynomial(&render_of(&bp)).unwrap(), jones_polynomial(&d).unwrap(), "{name} {t} {clasp:?}");
            }
        }
    }

    #[test]
    fn alexander_matches_matrix() {
        let mats = [
            vec![vec![0, 2], vec![1, 0]],
            vec![vec![0, 0], vec![-1, 0]],
            vec![vec![1, 3], vec![2, -1]],
            vec![vec![-1, -1], vec![-2, 2]],
            vec![vec![2, -2], vec![-3, 1]],
            vec![vec![-1, 1, 0, 0], vec![0, -1, 0, 0], vec![0, 0, 1, 1], vec![0, 0, 0, 2]],
        ];
        for m in mats {
            let a = SeifertMatrix::new(m).unwrap();
            let bp = BandPresentation::realize(&a).unwrap();
            let d = render_of(&bp);
            assert_eq!(d.crossing_count(), boundary_crossing_count(&bp));
            assert_eq!(alexander_polynomial(&d), a.alexander(), "{a}");
        }
    }

    #[test]
    fn clasp_chirality() {
        let jones = |m: Vec<Vec<i64>>| {
            let bp = BandPresentation::realize(&SeifertMatrix::new(m).unwrap()).unwrap();
            jones_polynomial(&render_of(&bp)).unwrap()
        };
        let pos = jones_polynomial(&knot_by_name("T2,3").unwrap()).unwrap();
        let neg = jones_polynomial(&knot_by_name("-T2,3").unwrap()).unwrap();
        assert_eq!(jones(vec![vec![-1, 0], vec![-1, -1]]), pos);
        assert_eq!(jones(vec![vec![1, 0], vec![-1, 1]]), neg);
    }

    #[test]
    fn budget_and_unsupported_clasps() {
        let bp = BandPresentation::realize(&SeifertMatrix::figure_eight()).unwrap();
        assert!(matches!(boundary_diagram(&bp, 3), Err(Error::BudgetExceeded { .. })));
        let a = SeifertMatrix::new(vec![vec![0, 1, 1, 0], vec![0, 0, 0, 0], vec![1, 0, 0, 1], vec![0, 0, 0, 0]]).unwrap();
        let bp = BandPresentation::realize(&a).unwrap();
        assert!(matches!(boundary_diagram(&bp, 40), Err(Error::BandFormat(_))));
    }
}
