//! Alexander polynomial from the Wirtinger presentation of a diagram.

use crate::diagram::pd::PlanarDiagram;
use crate::diagram::poly::{determinant, LaurentPolynomial};

/// Arc index of every edge label; arcs end at under-passages.
pub fn edge_arcs(d: &PlanarDiagram) -> Vec<usize> {
    let mut arcs = vec![0usize; d.edge_count() as usize + 1];
    let mut arc = 0;
    for (i, p) in d.passages().iter().enumerate() {
        if i > 0 && !p.is_over() {
            arc += 1;
        }
        arcs[d.crossings()[p.crossing].edges()[p.port_out()] as usize] = arc;
    }
    arcs
}

/// Symmetric Alexander polynomial with value 1 at t = 1.
pub fn alexander_polynomial(d: &PlanarDiagram) -> LaurentPolynomial {
    let n = d.crossing_count();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    let arcs = edge_arcs(d);
    let t = |c: i64, e: i64| LaurentPolynomial::monomial(c, e);
    let mut m = vec![vec![LaurentPolynomial::zero(); n]; n];
    for (row, c) in d.crossings().iter().enumerate() {
        let [a, b, cc, _] = c.edges();
        let (inc, out, over) = (arcs[a as usize], arcs[cc as usize], arcs[b as usize]);
        let entries = if c.is_positive() {
            [(over, t(1, 0)), (over, t(-1, 1)), (inc, t(1, 1)), (out, t(-1, 0))]
        } else {
            [(over, t(1, 1)), (over, t(-1, 0)), (inc, t(1, 0)), (out, t(-1, 1))]
        };
        for (col, v) in entries {
            m[row][col] = &m[row][col] + &v;
        }
    }
    let minor: Vec<Vec<LaurentPolynomial>> =
        m[..n - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    determinant(&minor).normalize_symmetric()
}
